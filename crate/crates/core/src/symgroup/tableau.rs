use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;

use super::partition::Partition;

/// A Young (standard, entries `1..=n`) or Weyl (semistandard, symbol ids) tableau.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Tableau {
    pub shape: Partition,
    pub rows: Vec<Vec<usize>>,
}

impl Tableau {
    pub fn is_standard(&self) -> bool {
        let n = self.shape.n();
        let mut seen = vec![false; n + 1];
        for &e in self.rows.iter().flatten() {
            if e == 0 || e > n || seen[e] {
                return false;
            }
            seen[e] = true;
        }
        self.rows_strict() && self.cols_strict()
    }

    pub fn is_semistandard(&self) -> bool {
        self.rows.iter().all(|r| r.windows(2).all(|w| w[0] <= w[1])) && self.cols_strict()
    }

    fn rows_strict(&self) -> bool {
        self.rows.iter().all(|r| r.windows(2).all(|w| w[0] < w[1]))
    }

    fn cols_strict(&self) -> bool {
        self.rows.windows(2).all(|w| w[1].iter().zip(&w[0]).all(|(lo, hi)| lo > hi))
    }

    /// Zero-based `(row, col)` of entry `e`.
    pub fn position(&self, e: usize) -> Option<(usize, usize)> {
        self.rows
            .iter()
            .enumerate()
            .find_map(|(r, row)| row.iter().position(|&x| x == e).map(|c| (r, c)))
    }

    /// Content `col - row` of the box holding `e`.
    pub fn content_of(&self, e: usize) -> i64 {
        let (r, c) = self.position(e).expect("entry present");
        c as i64 - r as i64
    }

    /// Swaps entries `k` and `k+1`; `None` if the result is not standard.
    pub fn swap_adjacent(&self, k: usize) -> Option<Tableau> {
        let mut t = self.clone();
        for x in t.rows.iter_mut().flatten() {
            if *x == k {
                *x = k + 1;
            } else if *x == k + 1 {
                *x = k;
            }
        }
        t.is_standard().then_some(t)
    }

    /// Sub-tableau of entries `<= m` (for standard) or symbols `< m` (for Weyl).
    pub fn restrict(&self, keep: impl Fn(usize) -> bool) -> Tableau {
        let rows: Vec<Vec<usize>> = self
            .rows
            .iter()
            .map(|r| r.iter().copied().filter(|&x| keep(x)).collect::<Vec<_>>())
            .filter(|r| !r.is_empty())
            .collect();
        let shape = Partition::new(rows.iter().map(|r| r.len()).collect()).expect("sub-shape");
        Tableau { shape, rows }
    }

    /// Renders with a custom label per entry, e.g. `(12|3|4)`.
    pub fn render(&self, label: impl Fn(usize) -> String) -> String {
        let rows: Vec<String> = self.rows.iter().map(|r| r.iter().map(|&x| label(x)).collect()).collect();
        format!("({})", rows.join("|"))
    }
}

impl fmt::Display for Tableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let wide = self.rows.iter().flatten().any(|&x| x > 9);
        let rows: Vec<String> = self
            .rows
            .iter()
            .map(|r| {
                let v: Vec<String> = r.iter().map(|x| x.to_string()).collect();
                v.join(if wide { "," } else { "" })
            })
            .collect();
        write!(f, "({})", rows.join("|"))
    }
}

impl fmt::Debug for Tableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

fn removable_rows(parts: &[usize]) -> Vec<usize> {
    (0..parts.len())
        .filter(|&r| r + 1 == parts.len() || parts[r + 1] < parts[r])
        .collect()
}

/// Standard tableaux in last-letter order: the largest entry is placed in
/// removable corners from the bottom row upwards, recursively.
pub fn standard_tableaux(shape: &Partition) -> Vec<Tableau> {
    fn rec(parts: &[usize]) -> Vec<Vec<Vec<usize>>> {
        let n: usize = parts.iter().sum();
        if n == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for &r in removable_rows(parts).iter().rev() {
            let mut sub = parts.to_vec();
            sub[r] -= 1;
            while sub.last() == Some(&0) {
                sub.pop();
            }
            for mut rows in rec(&sub) {
                if rows.len() <= r {
                    rows.push(Vec::new());
                }
                rows[r].push(n);
                out.push(rows);
            }
        }
        out
    }
    rec(shape.parts())
        .into_iter()
        .map(|rows| Tableau { shape: shape.clone(), rows })
        .collect()
}

/// Semistandard tableaux of `shape` whose symbol `s` appears `content[s]` times.
/// Symbols are `0..content.len()`.
pub fn semistandard_tableaux(shape: &Partition, content: &[usize]) -> Vec<Tableau> {
    if content.iter().sum::<usize>() != shape.n() {
        return Vec::new();
    }
    let target = shape.parts().to_vec();
    let mut out = Vec::new();
    let rows: Vec<Vec<usize>> = vec![Vec::new(); target.len()];
    fill(&target, content, 0, rows, &mut out);
    out.into_iter().map(|rows| Tableau { shape: shape.clone(), rows }).collect()
}

// Adds symbol `s` as a horizontal strip, then recurses.
fn fill(target: &[usize], content: &[usize], s: usize, rows: Vec<Vec<usize>>, out: &mut Vec<Vec<Vec<usize>>>) {
    if s == content.len() {
        if rows.iter().map(|r| r.len()).eq(target.iter().copied()) {
            out.push(rows);
        }
        return;
    }
    let cur: Vec<usize> = rows.iter().map(|r| r.len()).collect();
    let mut adds = vec![0usize; target.len()];
    strips(target, &cur, content[s], 0, &mut adds, &mut |adds| {
        let mut next = rows.clone();
        for (r, &a) in adds.iter().enumerate() {
            next[r].extend(std::iter::repeat_n(s, a));
        }
        fill(target, content, s + 1, next, out);
    });
}

fn strips(
    target: &[usize],
    cur: &[usize],
    remaining: usize,
    r: usize,
    adds: &mut Vec<usize>,
    emit: &mut dyn FnMut(&[usize]),
) {
    if r == target.len() {
        if remaining == 0 {
            emit(adds);
        }
        return;
    }
    // horizontal strip: new row length may not exceed the old length of the row above
    let cap_above = if r == 0 { usize::MAX } else { cur[r - 1] };
    let max_len = target[r].min(cap_above);
    let max_add = max_len.saturating_sub(cur[r]).min(remaining);
    for a in (0..=max_add).rev() {
        adds[r] = a;
        strips(target, cur, remaining - a, r + 1, adds, emit);
    }
    adds[r] = 0;
}

/// Kostka numbers `K[mu][content]` for every `mu` of the same size, zeros omitted.
pub fn kostka_row(content_shape: &Partition) -> BTreeMap<Partition, usize> {
    let n = content_shape.n();
    Partition::all(n)
        .into_iter()
        .filter_map(|mu| {
            let k = semistandard_tableaux(&mu, content_shape.parts()).len();
            (k > 0).then_some((mu, k))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Partition {
        Partition::parse(s).unwrap()
    }

    #[test]
    fn last_letter_order_listings() {
        let show = |s: &str| standard_tableaux(&p(s)).iter().map(|t| t.to_string()).collect::<Vec<_>>();
        assert_eq!(show("21^2"), ["(12|3|4)", "(13|2|4)", "(14|2|3)"]);
        assert_eq!(show("31"), ["(123|4)", "(124|3)", "(134|2)"]);
        assert_eq!(show("2^2"), ["(12|34)", "(13|24)"]);
        assert_eq!(show("1^4"), ["(1|2|3|4)"]);
    }

    #[test]
    fn weyl_tableaux_for_abbc() {
        // content a b^2 c
        let ts = semistandard_tableaux(&p("31"), &[1, 2, 1]);
        let shown: Vec<String> = ts.iter().map(|t| t.render(|s| ["a", "b", "c"][s].into())).collect();
        assert_eq!(ts.len(), 2);
        assert!(shown.contains(&"(abb|c)".to_string()));
        assert!(shown.contains(&"(abc|b)".to_string()));
        assert!(ts.iter().all(|t| t.is_semistandard()));
    }

    #[test]
    fn column_strictness_kills_repeats() {
        assert!(semistandard_tableaux(&p("1^4"), &[2, 1, 1]).is_empty());
        assert_eq!(semistandard_tableaux(&p("2^2"), &[1, 1, 1, 1]).len(), 2);
    }
}

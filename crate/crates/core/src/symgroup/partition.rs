use serde::{Deserialize, Serialize};
use std::fmt;

use crate::error::{Error, Result};

/// Integer partition with parts sorted non-increasing.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::Invalid(format!("partition parts must be positive: {parts:?}")));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Invalid(format!("partition parts must be non-increasing: {parts:?}")));
        }
        Ok(Self { parts })
    }

    /// Sorts arbitrary positive parts into a partition.
    pub fn from_unsorted(mut parts: Vec<usize>) -> Result<Self> {
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Self::new(parts)
    }

    pub fn row(n: usize) -> Self {
        Self { parts: if n == 0 { vec![] } else { vec![n] } }
    }

    pub fn column(n: usize) -> Self {
        Self { parts: vec![1; n] }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn n(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn conjugate(&self) -> Self {
        let cols = self.parts.first().copied().unwrap_or(0);
        let parts = (0..cols)
            .map(|c| self.parts.iter().filter(|&&p| p > c).count())
            .collect();
        Self { parts }
    }

    /// Boxes `(row, col)` in reading order.
    pub fn boxes(&self) -> Vec<(usize, usize)> {
        self.parts
            .iter()
            .enumerate()
            .flat_map(|(r, &len)| (0..len).map(move |c| (r, c)))
            .collect()
    }

    pub fn hook_lengths(&self) -> Vec<Vec<usize>> {
        let conj = self.conjugate();
        self.parts
            .iter()
            .enumerate()
            .map(|(r, &len)| (0..len).map(|c| (len - c - 1) + (conj.parts[c] - r - 1) + 1).collect())
            .collect()
    }

    /// Dimension of the S_n irrep by the hook-length formula.
    pub fn dimension(&self) -> u64 {
        // multiply and divide incrementally to stay exact
        let mut hooks: Vec<u64> = self.hook_lengths().into_iter().flatten().map(|h| h as u64).collect();
        hooks.sort_unstable();
        let mut num: u128 = 1;
        for k in 1..=self.n() as u128 {
            num *= k;
        }
        let den: u128 = hooks.iter().map(|&h| h as u128).product();
        (num / den) as u64
    }

    /// Size of the conjugacy class with this cycle type.
    pub fn class_size(&self) -> u64 {
        let n = self.n() as u128;
        let mut z: u128 = 1;
        let mut i = 0;
        while i < self.parts.len() {
            let p = self.parts[i];
            let m = self.parts[i..].iter().take_while(|&&q| q == p).count();
            z *= (p as u128).pow(m as u32) * factorial(m as u64) as u128;
            i += m;
        }
        let mut f: u128 = 1;
        for k in 1..=n {
            f *= k;
        }
        (f / z) as u64
    }

    /// Content `col - row` of each box in reading order.
    pub fn contents(&self) -> Vec<i64> {
        self.boxes().iter().map(|&(r, c)| c as i64 - r as i64).collect()
    }

    /// Dominance order: `self` dominates `other`.
    pub fn dominates(&self, other: &Self) -> bool {
        let mut a = 0;
        let mut b = 0;
        for i in 0..self.len().max(other.len()) {
            a += self.parts.get(i).copied().unwrap_or(0);
            b += other.parts.get(i).copied().unwrap_or(0);
            if a < b {
                return false;
            }
        }
        true
    }

    /// All partitions of `n`, starting with `[n]` and ending with `[1^n]`.
    pub fn all(n: usize) -> Vec<Self> {
        fn rec(rem: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
            if rem == 0 {
                out.push(Partition { parts: cur.clone() });
                return;
            }
            for p in (1..=rem.min(max)).rev() {
                cur.push(p);
                rec(rem - p, p, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(n, n, &mut Vec::new(), &mut out);
        out
    }

    /// Parses `3,1`, `31`, `21^2`, `[2^2]` or `1 1 1`.
    pub fn parse(s: &str) -> Result<Self> {
        let t = s.trim().trim_start_matches('[').trim_end_matches(']').trim();
        let bad = || Error::Invalid(format!("cannot parse partition '{s}'"));
        if t.is_empty() {
            return Err(bad());
        }
        let mut parts = Vec::new();
        if t.contains(',') || t.contains(' ') {
            for tok in t.split(|c: char| c == ',' || c.is_whitespace()).filter(|x| !x.is_empty()) {
                let (base, exp) = match tok.split_once('^') {
                    Some((b, e)) => (b, e.parse::<usize>().map_err(|_| bad())?),
                    None => (tok, 1),
                };
                let v: usize = base.parse().map_err(|_| bad())?;
                if parts.len() + exp > 64 {
                    return Err(Error::Invalid(format!("partition too large: '{s}'")));
                }
                parts.extend(std::iter::repeat_n(v, exp));
            }
        } else {
            let chars: Vec<char> = t.chars().collect();
            let mut i = 0;
            while i < chars.len() {
                let v = chars[i].to_digit(10).ok_or_else(bad)? as usize;
                i += 1;
                let mut exp = 1;
                if i < chars.len() && chars[i] == '^' {
                    i += 1;
                    let start = i;
                    while i < chars.len() && chars[i].is_ascii_digit() {
                        i += 1;
                    }
                    exp = chars[start..i].iter().collect::<String>().parse().map_err(|_| bad())?;
                }
                if parts.len() + exp > 64 {
                    return Err(Error::Invalid(format!("partition too large: '{s}'")));
                }
                parts.extend(std::iter::repeat_n(v, exp));
            }
        }
        if parts.is_empty() {
            return Err(bad());
        }
        if parts.len() > 64 || parts.iter().sum::<usize>() > 64 {
            return Err(Error::Invalid(format!("partition too large: '{s}'")));
        }
        Self::new(parts)
    }
}

pub(crate) fn factorial(n: u64) -> u64 {
    (1..=n).product()
}

impl TryFrom<Vec<usize>> for Partition {
    type Error = Error;
    fn try_from(v: Vec<usize>) -> Result<Self> {
        Self::new(v)
    }
}

impl From<Partition> for Vec<usize> {
    fn from(p: Partition) -> Self {
        p.parts
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let wide = self.parts.iter().any(|&p| p > 9);
        let mut groups = Vec::new();
        let mut i = 0;
        while i < self.parts.len() {
            let p = self.parts[i];
            let m = self.parts[i..].iter().take_while(|&&q| q == p).count();
            groups.push(if m > 1 { format!("{p}^{m}") } else { p.to_string() });
            i += m;
        }
        // an exponent followed by another group would be ambiguous without a separator
        let inner_exp = groups[..groups.len().saturating_sub(1)].iter().any(|g| g.contains('^'));
        // a lone multi-digit part keeps a trailing comma so it does not read as digits
        let tail = if wide && groups.len() == 1 { "," } else { "" };
        write!(f, "[{}{tail}]", groups.join(if wide || inner_exp { "," } else { "" }))
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_and_parse_roundtrip() {
        for n in 1..=7 {
            for p in Partition::all(n) {
                let s = p.to_string();
                assert_eq!(Partition::parse(&s).unwrap(), p, "{s}");
            }
        }
        assert_eq!(Partition::parse("3,1").unwrap().parts(), &[3, 1]);
        assert_eq!(Partition::parse("21^2").unwrap().parts(), &[2, 1, 1]);
        assert!(Partition::parse("13").is_err());
        assert!(Partition::parse("").is_err());
    }

    #[test]
    fn order_matches_listing() {
        let names: Vec<String> = Partition::all(4).iter().map(|p| p.to_string()).collect();
        assert_eq!(names, ["[4]", "[31]", "[2^2]", "[21^2]", "[1^4]"]);
    }

    #[test]
    fn dimensions_and_classes() {
        let dims: Vec<u64> = Partition::all(4).iter().map(|p| p.dimension()).collect();
        assert_eq!(dims, [1, 3, 2, 3, 1]);
        let sizes: Vec<u64> = Partition::all(4).iter().map(|p| p.class_size()).collect();
        assert_eq!(sizes, [6, 8, 3, 6, 1]);
    }
}

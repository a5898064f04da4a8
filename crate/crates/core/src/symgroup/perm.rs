use serde::{Deserialize, Serialize};
use std::fmt;

use crate::error::{Error, Result};

/// A permutation of `1..=n` in one-line notation.
///
/// Internally images are stored zero-based. The product `a.then(b)` is the
/// permutation `i -> b(a(i))`, which is the convention under which
/// `(p . n)_i = n_{p(i)}` is a left action on label sequences.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Self { images: (0..n).collect() }
    }

    /// Builds from one-line images in `1..=n`.
    pub fn from_one_line(images: &[usize]) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in images {
            if i == 0 || i > n || seen[i - 1] {
                return Err(Error::Invalid(format!("not a permutation: {images:?}")));
            }
            seen[i - 1] = true;
        }
        Ok(Self { images: images.iter().map(|i| i - 1).collect() })
    }

    pub fn from_zero_based(images: Vec<usize>) -> Result<Self> {
        let one: Vec<usize> = images.iter().map(|i| i + 1).collect();
        Self::from_one_line(&one)
    }

    /// Transposition of the one-based points `i` and `j`.
    pub fn transposition(n: usize, i: usize, j: usize) -> Self {
        let mut p = Self::identity(n);
        p.images.swap(i - 1, j - 1);
        p
    }

    /// Adjacent transposition `(k, k+1)` for one-based `k`.
    pub fn adjacent(n: usize, k: usize) -> Self {
        Self::transposition(n, k, k + 1)
    }

    /// Builds from disjoint cycles given with one-based points.
    pub fn from_cycles(n: usize, cycles: &[&[usize]]) -> Result<Self> {
        let mut images: Vec<usize> = (0..n).collect();
        let mut touched = vec![false; n];
        for c in cycles {
            for (a, &x) in c.iter().enumerate() {
                let y = c[(a + 1) % c.len()];
                if x == 0 || x > n || y == 0 || y > n || touched[x - 1] {
                    return Err(Error::Invalid(format!("bad cycle {c:?}")));
                }
                touched[x - 1] = true;
                images[x - 1] = y - 1;
            }
        }
        Self::from_zero_based(images)
    }

    pub fn n(&self) -> usize {
        self.images.len()
    }

    /// Zero-based images.
    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// One-based one-line notation.
    pub fn one_line(&self) -> Vec<usize> {
        self.images.iter().map(|i| i + 1).collect()
    }

    /// Zero-based image of zero-based `i`.
    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    /// The product `self . other`: apply `self` first, then `other`.
    pub fn then(&self, other: &Self) -> Self {
        assert_eq!(self.n(), other.n());
        Self { images: self.images.iter().map(|&i| other.images[i]).collect() }
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.n()];
        for (i, &j) in self.images.iter().enumerate() {
            inv[j] = i;
        }
        Self { images: inv }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i == j)
    }

    /// Cycle lengths sorted non-increasing, including fixed points.
    pub fn cycle_type(&self) -> Vec<usize> {
        let n = self.n();
        let mut seen = vec![false; n];
        let mut lens = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            let mut len = 0;
            let mut i = s;
            while !seen[i] {
                seen[i] = true;
                i = self.images[i];
                len += 1;
            }
            lens.push(len);
        }
        lens.sort_unstable_by(|a, b| b.cmp(a));
        lens
    }

    pub fn sign(&self) -> i32 {
        let even = self.cycle_type().iter().filter(|&&l| l % 2 == 0).count();
        if even % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// Zero-based `k` values with `self = s_{k1} . s_{k2} . ...` where `s_k`
    /// swaps points `k` and `k+1` (zero-based).
    pub fn adjacent_word(&self) -> Vec<usize> {
        let mut p = self.images.clone();
        let mut word = Vec::new();
        loop {
            let mut swapped = false;
            for k in 0..p.len().saturating_sub(1) {
                if p[k] > p[k + 1] {
                    p.swap(k, k + 1);
                    word.push(k);
                    swapped = true;
                }
            }
            if !swapped {
                break;
            }
        }
        word
    }

    /// Applies the permutation to a sequence: `(p . n)_i = n_{p(i)}`.
    pub fn act_on<T: Clone>(&self, seq: &[T]) -> Vec<T> {
        self.images.iter().map(|&j| seq[j].clone()).collect()
    }

    /// All permutations of `n` points in lexicographic one-line order.
    pub fn all(n: usize) -> Vec<Self> {
        let mut out = Vec::new();
        let mut cur: Vec<usize> = (0..n).collect();
        loop {
            out.push(Self { images: cur.clone() });
            // next lexicographic permutation
            let Some(i) = (1..n).rev().find(|&i| cur[i - 1] < cur[i]) else {
                break;
            };
            let j = (i..n).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
            cur.swap(i - 1, j);
            cur[i..].reverse();
        }
        out
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sep = if self.n() > 9 { "," } else { "" };
        let s: Vec<String> = self.one_line().iter().map(|i| i.to_string()).collect();
        write!(f, "{{{}}}", s.join(sep))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn word_reconstructs() {
        for p in Permutation::all(4) {
            let mut q = Permutation::identity(4);
            for k in p.adjacent_word() {
                q = q.then(&Permutation::adjacent(4, k + 1));
            }
            assert_eq!(p, q);
        }
    }

    #[test]
    fn sign_is_multiplicative() {
        let all = Permutation::all(4);
        for a in &all {
            for b in &all {
                assert_eq!(a.then(b).sign(), a.sign() * b.sign());
            }
        }
    }

    #[test]
    fn sequence_action_is_left_action() {
        let seq = vec!['a', 'b', 'c', 'd'];
        let all = Permutation::all(4);
        for a in &all {
            for b in &all {
                assert_eq!(a.act_on(&b.act_on(&seq)), a.then(b).act_on(&seq));
            }
        }
    }

    #[test]
    fn counts_and_display() {
        assert_eq!(Permutation::all(5).len(), 120);
        let p = Permutation::from_one_line(&[3, 4, 1, 2]).unwrap();
        assert_eq!(p.to_string(), "{3412}");
        assert!(Permutation::from_one_line(&[1, 1]).is_err());
        let c = Permutation::from_cycles(4, &[&[1, 4], &[2, 3]]).unwrap();
        assert_eq!(c.one_line(), vec![4, 3, 2, 1]);
    }
}

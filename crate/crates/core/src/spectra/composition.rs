use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;

use super::trap::SingleParticleSpectrum;
use crate::error::{Error, Result};
use crate::symgroup::{factorial, Partition};

/// Multiset of occupied one-particle states.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Composition {
    occ: BTreeMap<usize, usize>,
}

impl Composition {
    pub fn from_states(states: &[usize]) -> Result<Self> {
        if states.is_empty() {
            return Err(Error::Invalid("composition needs at least one particle".into()));
        }
        let mut occ = BTreeMap::new();
        for &s in states {
            *occ.entry(s).or_insert(0) += 1;
        }
        Ok(Self { occ })
    }

    pub fn n(&self) -> usize {
        self.occ.values().sum()
    }

    /// Distinct occupied states, ascending.
    pub fn labels(&self) -> Vec<usize> {
        self.occ.keys().copied().collect()
    }

    /// Multiplicities in the order of `labels`.
    pub fn multiplicities(&self) -> Vec<usize> {
        self.occ.values().copied().collect()
    }

    pub fn multiplicity(&self, state: usize) -> usize {
        self.occ.get(&state).copied().unwrap_or(0)
    }

    pub fn shape(&self) -> Partition {
        Partition::from_unsorted(self.multiplicities()).expect("positive multiplicities")
    }

    /// Sorted representative sequence.
    pub fn sorted(&self) -> Vec<usize> {
        self.occ.iter().flat_map(|(&s, &m)| std::iter::repeat_n(s, m)).collect()
    }

    /// Every distinct ordering of the states, lexicographic.
    pub fn sequences(&self) -> Vec<Vec<usize>> {
        let mut cur = self.sorted();
        let mut out = vec![cur.clone()];
        let n = cur.len();
        loop {
            let Some(i) = (1..n).rev().find(|&i| cur[i - 1] < cur[i]) else {
                break;
            };
            let j = (i..n).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
            cur.swap(i - 1, j);
            cur[i..].reverse();
            out.push(cur.clone());
        }
        out
    }

    pub fn degeneracy(&self) -> u64 {
        let n = self.n() as u64;
        let mut d: u128 = (1..=n as u128).product();
        for &m in self.occ.values() {
            d /= factorial(m as u64) as u128;
        }
        d as u64
    }

    pub fn energy(&self, s: &SingleParticleSpectrum) -> f64 {
        self.occ.iter().map(|(&k, &m)| m as f64 * s.energy(k)).sum()
    }

    /// Total excitation `sum n_i`, the harmonic shell index.
    pub fn excitation(&self) -> usize {
        self.occ.iter().map(|(&k, &m)| k * m).sum()
    }

    pub fn parity(&self, s: &SingleParticleSpectrum) -> Option<i8> {
        let mut p = 1i8;
        for (&k, &m) in &self.occ {
            if m % 2 == 1 {
                p *= s.parity(k)?;
            }
        }
        Some(p)
    }

    pub fn max_state(&self) -> usize {
        *self.occ.keys().next_back().unwrap()
    }

    /// Parses `0,0,1,2`, `0 0 1 2` or `0^2,1,2`.
    pub fn parse(s: &str) -> Result<Self> {
        let t = s.trim().trim_start_matches(['(', '<', '[']).trim_end_matches([')', '>', ']']);
        let bad = || Error::Invalid(format!("cannot parse composition '{s}'"));
        let mut states = Vec::new();
        for tok in t.split(|c: char| c == ',' || c.is_whitespace()).filter(|x| !x.is_empty()) {
            let (base, exp) = match tok.split_once('^') {
                Some((b, e)) => (b, e.parse::<usize>().map_err(|_| bad())?),
                None => (tok, 1),
            };
            let v: usize = base.parse().map_err(|_| bad())?;
            if exp == 0 || states.len() + exp > 64 || v > 1_000_000 {
                return Err(bad());
            }
            states.extend(std::iter::repeat_n(v, exp));
        }
        Self::from_states(&states)
    }
}

impl TryFrom<Vec<usize>> for Composition {
    type Error = Error;
    fn try_from(v: Vec<usize>) -> Result<Self> {
        Self::from_states(&v)
    }
}

impl From<Composition> for Vec<usize> {
    fn from(c: Composition) -> Self {
        c.sorted()
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .occ
            .iter()
            .map(|(s, &m)| if m > 1 { format!("{s}^{m}") } else { s.to_string() })
            .collect();
        write!(f, "({})", parts.join(","))
    }
}

impl fmt::Debug for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

pub fn composition_degeneracy(c: &Composition) -> u64 {
    c.degeneracy()
}

/// Adds `0, 1, ..., N-1` to the sorted sequence, giving a fermionic composition.
pub fn bose_fermi_partner(c: &Composition) -> Composition {
    let seq: Vec<usize> = c.sorted().iter().enumerate().map(|(i, s)| s + i).collect();
    Composition::from_states(&seq).expect("non-empty")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degeneracies() {
        assert_eq!(Composition::from_states(&[0, 1, 1, 2, 4]).unwrap().degeneracy(), 60);
        assert_eq!(Composition::from_states(&[0, 0, 1, 1, 2]).unwrap().degeneracy(), 30);
        assert_eq!(Composition::from_states(&[3; 5]).unwrap().degeneracy(), 1);
    }

    #[test]
    fn sequences_count_matches_degeneracy() {
        let c = Composition::from_states(&[0, 1, 1, 2, 4]).unwrap();
        assert_eq!(c.sequences().len() as u64, c.degeneracy());
    }

    #[test]
    fn partner_example() {
        let c = Composition::from_states(&[0, 1, 1, 2, 4]).unwrap();
        assert_eq!(bose_fermi_partner(&c).sorted(), vec![0, 2, 3, 5, 8]);
    }

    #[test]
    fn parse_forms() {
        let a = Composition::parse("0,0,1,2").unwrap();
        assert_eq!(Composition::parse("0^2 1 2").unwrap(), a);
        assert_eq!(Composition::parse(&a.to_string()).unwrap(), a);
        assert!(Composition::parse("").is_err());
        assert!(Composition::parse("a").is_err());
    }
}

use serde::{Deserialize, Serialize};
use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashSet};

use crate::error::{Error, Result};
use crate::spectra::{Composition, SingleParticleSpectrum};
use crate::symgroup::{factorial, Permutation};

/// Sector `q_{s_1} < q_{s_2} < ... < q_{s_N}` labelled by the permutation `s`.
pub type Sector = Permutation;

/// All sectors in lexicographic one-line order.
pub fn sectors(n: usize) -> Vec<Sector> {
    Permutation::all(n)
}

/// Particle permutation acting on a sector: `s . p^-1`.
pub fn particle_action(p: &Permutation, s: &Sector) -> Sector {
    s.then(&p.inverse())
}

/// Ordering permutation acting on the slots of a sector: `o . s`.
pub fn ordering_action(o: &Permutation, s: &Sector) -> Sector {
    o.then(s)
}

/// The slot reversal `(1 N)(2 N-1)...`.
pub fn ordering_reversal(n: usize) -> Permutation {
    Permutation::from_zero_based((0..n).rev().collect()).expect("reversal")
}

/// An `N!`-fold degenerate unitary-limit level spanned by snippet states.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SnippetLevel {
    pub composition: Composition,
    pub energy: f64,
    pub degeneracy: u64,
    pub parity: Option<i8>,
}

impl SnippetLevel {
    pub fn new(s: &SingleParticleSpectrum, composition: Composition) -> Result<Self> {
        if composition.multiplicities().iter().any(|&m| m > 1) {
            return Err(Error::Invalid(format!("{composition} is not fermionic")));
        }
        Ok(Self {
            energy: composition.energy(s),
            degeneracy: factorial(composition.n() as u64),
            parity: composition.parity(s),
            composition,
        })
    }

    pub fn n(&self) -> usize {
        self.composition.n()
    }
}

/// The `count` lowest fermionic compositions, each an `N!`-fold unitary level.
pub fn unitary_spectrum(s: &SingleParticleSpectrum, n: usize, count: usize) -> Result<Vec<SnippetLevel>> {
    if n == 0 || count == 0 {
        return Err(Error::Invalid("need N >= 1 and count >= 1".into()));
    }
    let limit = s.len().unwrap_or(usize::MAX);
    if n > limit {
        return Err(Error::Invalid(format!("only {limit} one-particle states for {n} fermions")));
    }
    let energy = |v: &Vec<usize>| v.iter().map(|&k| s.energy(k)).sum::<f64>();
    let start: Vec<usize> = (0..n).collect();
    let mut heap = BinaryHeap::new();
    let mut seen = HashSet::new();
    heap.push(Reverse((Key(energy(&start)), start.clone())));
    seen.insert(start);
    let mut out = Vec::new();
    while let Some(Reverse((Key(_), seq))) = heap.pop() {
        out.push(SnippetLevel::new(s, Composition::from_states(&seq)?)?);
        if out.len() == count {
            break;
        }
        // raising any state that keeps the sequence strictly increasing
        for i in 0..n {
            let next = seq[i] + 1;
            let ok = if i + 1 < n { next < seq[i + 1] } else { next < limit };
            if ok {
                let mut t = seq.clone();
                t[i] = next;
                if seen.insert(t.clone()) {
                    heap.push(Reverse((Key(energy(&t)), t)));
                }
            }
        }
    }
    Ok(out)
}

#[derive(Clone, Copy, PartialEq, Debug)]
struct Key(f64);
impl Eq for Key {}
impl PartialOrd for Key {
    fn partial_cmp(&self, o: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(o))
    }
}
impl Ord for Key {
    fn cmp(&self, o: &Self) -> std::cmp::Ordering {
        self.0.total_cmp(&o.0)
    }
}

/// Parity on a snippet state: the composition parity and the reversed sector.
pub fn snippet_parity(level: &SnippetLevel, s: &Sector) -> Result<(i8, Sector)> {
    let sign = level.parity.ok_or(Error::NoParity)?;
    Ok((sign, ordering_action(&ordering_reversal(s.n()), s)))
}

use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;

use super::composition::Composition;
use super::trap::{SingleParticleSpectrum, TrapKind};
use crate::error::{Error, Result};
use crate::symgroup::{kostka_row, Partition};

/// Default relative tolerance for treating two energies as coincident.
pub const ENERGY_TOL: f64 = 1e-9;

/// S_N irrep label with optional total parity and harmonic center-of-mass quantum number.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct IrrepLabel {
    pub shape: Partition,
    pub parity: Option<i8>,
    pub com: Option<usize>,
}

impl IrrepLabel {
    pub fn plain(shape: Partition) -> Self {
        Self { shape, parity: None, com: None }
    }

    pub fn with_parity(shape: Partition, parity: Option<i8>) -> Self {
        Self { shape, parity, com: None }
    }

    pub fn parity_symbol(&self) -> &'static str {
        match self.parity {
            Some(1) => "+",
            Some(-1) => "-",
            _ => "",
        }
    }
}

impl fmt::Display for IrrepLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.shape, self.parity_symbol())?;
        if let Some(n) = self.com {
            write!(f, "(n={n})")?;
        }
        Ok(())
    }
}

impl fmt::Debug for IrrepLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct LevelFlags {
    /// Exactly one composition: the degeneracy is explained by the minimal group.
    pub minimal: bool,
    /// Several compositions coincide because of the harmonic spectrum.
    pub emergent_harmonic: bool,
    /// Several compositions coincide in a non-harmonic trap.
    pub accidental: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EnergyLevel {
    pub energy: f64,
    pub compositions: Vec<Composition>,
    pub degeneracy: u64,
    pub irreps: Vec<(IrrepLabel, usize)>,
    pub flags: LevelFlags,
    /// Total parity when every composition agrees.
    pub parity: Option<i8>,
    /// Harmonic shell index `X`.
    pub excitation: Option<usize>,
}

/// Which compositions a calculation keeps.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum Truncation {
    /// Total energy `E <= e_max`.
    Energy(f64),
    /// Total excitation `sum n_i <= x_max`.
    Excitation(usize),
}

/// All compositions of `n` particles inside the truncation, sorted by energy then label.
pub fn compositions(s: &SingleParticleSpectrum, n: usize, trunc: Truncation) -> Result<Vec<Composition>> {
    if n == 0 {
        return Err(Error::Invalid("particle number must be at least 1".into()));
    }
    let ground = n as f64 * s.energy(0);
    if let Truncation::Energy(e) = trunc {
        if !e.is_finite() || e < ground * (1.0 - ENERGY_TOL) - ENERGY_TOL {
            return Err(Error::Invalid(format!("e_max {e} is below the ground level {ground}")));
        }
    }
    let limit = s.len().unwrap_or(usize::MAX);
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(n);
    gen(s, n, trunc, limit, 0, 0.0, &mut cur, &mut out);
    let mut out: Vec<(f64, Composition)> = out.into_iter().map(|c: Composition| (c.energy(s), c)).collect();
    out.sort_by(|a, b| a.0.total_cmp(&b.0).then_with(|| a.1.cmp(&b.1)));
    Ok(out.into_iter().map(|(_, c)| c).collect())
}

#[allow(clippy::too_many_arguments)]
fn gen(
    s: &SingleParticleSpectrum,
    n: usize,
    trunc: Truncation,
    limit: usize,
    start: usize,
    acc: f64,
    cur: &mut Vec<usize>,
    out: &mut Vec<Composition>,
) {
    if cur.len() == n {
        out.push(Composition::from_states(cur).expect("non-empty"));
        return;
    }
    let rem = (n - cur.len()) as f64;
    let mut k = start;
    while k < limit {
        let fits = match trunc {
            Truncation::Energy(e) => acc + rem * s.energy(k) <= e + ENERGY_TOL * e.abs().max(1.0),
            Truncation::Excitation(x) => {
                let used: usize = cur.iter().sum();
                used + (n - cur.len()) * k <= x
            }
        };
        if !fits {
            break;
        }
        cur.push(k);
        gen(s, n, trunc, limit, k, acc + s.energy(k), cur, out);
        cur.pop();
        k += 1;
    }
}

/// Non-interacting levels: compositions grouped by coincident energy.
pub fn enumerate_levels(s: &SingleParticleSpectrum, n: usize, trunc: Truncation) -> Result<Vec<EnergyLevel>> {
    enumerate_levels_with_tol(s, n, trunc, ENERGY_TOL)
}

pub fn enumerate_levels_with_tol(
    s: &SingleParticleSpectrum,
    n: usize,
    trunc: Truncation,
    tol: f64,
) -> Result<Vec<EnergyLevel>> {
    let comps = compositions(s, n, trunc)?;
    let mut groups: Vec<Vec<Composition>> = Vec::new();
    let mut anchor = f64::NAN;
    for c in comps {
        let e = c.energy(s);
        if !groups.is_empty() && (e - anchor).abs() <= tol * anchor.abs().max(1.0) {
            groups.last_mut().unwrap().push(c);
        } else {
            anchor = e;
            groups.push(vec![c]);
        }
    }
    let mut kostka_cache: BTreeMap<Partition, BTreeMap<Partition, usize>> = BTreeMap::new();
    let harmonic = s.kind() == TrapKind::Harmonic;
    Ok(groups
        .into_iter()
        .map(|comps| {
            let energy = comps[0].energy(s);
            let degeneracy = comps.iter().map(|c| c.degeneracy()).sum();
            let mut content: BTreeMap<IrrepLabel, usize> = BTreeMap::new();
            for c in &comps {
                let shape = c.shape();
                let row = kostka_cache.entry(shape.clone()).or_insert_with(|| kostka_row(&shape));
                for (mu, k) in row.iter() {
                    *content.entry(IrrepLabel::with_parity(mu.clone(), c.parity(s))).or_insert(0) += k;
                }
            }
            let parities: Vec<Option<i8>> = comps.iter().map(|c| c.parity(s)).collect();
            let parity = if parities.windows(2).all(|w| w[0] == w[1]) { parities[0] } else { None };
            let multi = comps.len() > 1;
            EnergyLevel {
                energy,
                degeneracy,
                irreps: sort_irreps(content),
                flags: LevelFlags { minimal: !multi, emergent_harmonic: multi && harmonic, accidental: multi && !harmonic },
                parity,
                excitation: harmonic.then(|| comps[0].excitation()),
                compositions: comps,
            }
        })
        .collect())
}

/// Orders irreps as `[N]` first, positive parity before negative.
pub fn sort_irreps(content: BTreeMap<IrrepLabel, usize>) -> Vec<(IrrepLabel, usize)> {
    let mut v: Vec<_> = content.into_iter().collect();
    v.sort_by(|a, b| {
        b.0.shape
            .cmp(&a.0.shape)
            .then_with(|| b.0.parity.cmp(&a.0.parity))
            .then_with(|| a.0.com.cmp(&b.0.com))
    });
    v
}

/// `(X+N-1)! / (X! (N-1)!)`, the U(N) shell dimension.
pub fn harmonic_shell_degeneracy(n: usize, x: usize) -> u128 {
    let mut r: u128 = 1;
    for i in 1..n as u128 {
        r = r * (x as u128 + i) / i;
    }
    r
}

/// Dimension of the O(N) irrep `lambda` for `N >= 3`.
pub fn orthogonal_irrep_dimension(n: usize, lambda: usize) -> Result<u128> {
    if n < 3 {
        return Err(Error::Invalid("orthogonal_irrep_dimension needs N >= 3".into()));
    }
    // (N+2l-2) (N+l-3)! / (l! (N-2)!) = (N+2l-2)/(N-2) * C(N+l-3, l)
    let mut binom: u128 = 1;
    for i in 1..=lambda as u128 {
        binom = binom * (n as u128 - 3 + i) / i;
    }
    Ok((n as u128 + 2 * lambda as u128 - 2) * binom / (n as u128 - 2))
}

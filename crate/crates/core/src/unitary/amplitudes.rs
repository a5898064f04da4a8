use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::sector::SnippetLevel;
use super::tunneling::TunnelingAmplitudes;
use crate::error::{Error, Result};
use crate::interactions::quad::legendre_on;
use crate::spectra::{SingleParticleSpectrum, TrapKind};
use crate::symgroup::{factorial, Permutation};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct AmplitudeOptions {
    /// Gauss-Legendre order per panel of the outer integral over the coincidence point.
    pub order: usize,
    /// Gauss-Legendre order of the partial overlap integrals.
    pub inner_order: usize,
    /// Relative error estimate above which the result is rejected.
    pub tolerance: f64,
}

impl Default for AmplitudeOptions {
    fn default() -> Self {
        Self { order: 60, inner_order: 60, tolerance: 0.01 }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AmplitudeReport {
    pub amplitudes: TunnelingAmplitudes,
    /// Unsymmetrized values.
    pub raw: Vec<f64>,
    /// Relative error estimates from a coarser outer rule.
    pub error_estimates: Vec<f64>,
}

pub fn tunneling_amplitudes_from_trap(s: &SingleParticleSpectrum, level: &SnippetLevel) -> Result<TunnelingAmplitudes> {
    Ok(tunneling_amplitudes_with(s, level, AmplitudeOptions::default())?.amplitudes)
}

/// `a_k = N! int_{ordered} delta(q_k - q_{k+1}) |dPhi/dq_k|^2` for the Slater
/// determinant `Phi` of the level, in units of `1/g`.
///
/// On the hyperplane `q_k = q_{k+1} = y` the derivative is a determinant with
/// columns `phi(q_1..q_{k-1}), phi'(y), phi(y), phi(q_{k+2}..q_N)`. Its square is
/// integrated exactly over the free coordinates through partial overlap
/// matrices on `(a, y)` and `(y, b)`; the remaining integral over `y` uses
/// Gauss-Legendre.
pub fn tunneling_amplitudes_with(
    s: &SingleParticleSpectrum,
    level: &SnippetLevel,
    opts: AmplitudeOptions,
) -> Result<AmplitudeReport> {
    if !s.has_wavefunctions() {
        return Err(Error::NoWavefunctions);
    }
    let n = level.n();
    if !(2..=5).contains(&n) {
        return Err(Error::Invalid(format!("amplitude integrals support N = 2..5, got {n}")));
    }
    let states = level.composition.labels();
    let nmax = *states.last().unwrap();
    let (lo, hi) = match s.kind() {
        TrapKind::Harmonic => {
            let q = (2.0 * nmax as f64 + 1.0).sqrt() + 8.0;
            (-q, q)
        }
        _ => s.domain(),
    };
    let perms = Permutation::all(n);
    let ctx = Ctx { s, states: &states, nmax, lo, hi, perms: &perms, inner: opts.inner_order };
    let fine = ctx.amplitudes(opts.order)?;
    let coarse = ctx.amplitudes((opts.order * 2 / 3).max(8))?;
    let mut estimates = Vec::new();
    for (k, (f, c)) in fine.iter().zip(&coarse).enumerate() {
        let est = (f - c).abs() / f.abs().max(f64::MIN_POSITIVE);
        if est > opts.tolerance {
            return Err(Error::Quadrature { key: format!("a_{}", k + 1), estimate: est });
        }
        estimates.push(est);
    }
    let symmetric = s.is_symmetric() && s.kind() != TrapKind::Table;
    let mut a = fine.clone();
    if symmetric {
        let m = a.len();
        for k in 0..m {
            let rel = (fine[k] - fine[m - 1 - k]).abs() / fine[k].abs().max(f64::MIN_POSITIVE);
            if rel > opts.tolerance {
                return Err(Error::Quadrature { key: format!("a_{} vs a_{}", k + 1, m - k), estimate: rel });
            }
            a[k] = 0.5 * (fine[k] + fine[m - 1 - k]);
        }
    }
    Ok(AmplitudeReport { amplitudes: TunnelingAmplitudes::new(a, symmetric)?, raw: fine, error_estimates: estimates })
}

struct Ctx<'a> {
    s: &'a SingleParticleSpectrum,
    states: &'a [usize],
    nmax: usize,
    lo: f64,
    hi: f64,
    perms: &'a [Permutation],
    inner: usize,
}

impl Ctx<'_> {
    fn amplitudes(&self, order: usize) -> Result<Vec<f64>> {
        let n = self.states.len();
        let panels = ((self.hi - self.lo) / 4.0).ceil().max(1.0) as usize;
        let h = (self.hi - self.lo) / panels as f64;
        let nodes: Vec<(f64, f64)> = (0..panels)
            .flat_map(|p| legendre_on(order, self.lo + p as f64 * h, self.lo + (p + 1) as f64 * h))
            .collect();
        let per_node: Vec<Vec<f64>> = nodes
            .par_iter()
            .map(|&(y, w)| self.at(y).map(|v| v.into_iter().map(|x| x * w).collect()))
            .collect::<Result<_>>()?;
        let mut out = vec![0.0; n - 1];
        for row in per_node {
            for (o, x) in out.iter_mut().zip(row) {
                *o += x;
            }
        }
        Ok(out)
    }

    // Integrand of every a_k at coincidence point y.
    fn at(&self, y: f64) -> Result<Vec<f64>> {
        let n = self.states.len();
        let left = self.overlaps(self.lo, y)?;
        let right = self.overlaps(y, self.hi)?;
        let phi_all = self.s.wavefunctions(self.nmax, y)?;
        let dphi_all = self.s.derivatives(self.nmax, y)?;
        let phi: Vec<f64> = self.states.iter().map(|&k| phi_all[k]).collect();
        let dphi: Vec<f64> = self.states.iter().map(|&k| dphi_all[k]).collect();
        let mut out = Vec::with_capacity(n - 1);
        for k in 0..n - 1 {
            // columns 0..k left of y, k and k+1 at y, the rest right of y
            let mut sum = 0.0;
            for sp in self.perms {
                for tp in self.perms {
                    let mut term = (sp.sign() * tp.sign()) as f64;
                    for col in 0..n {
                        let (i, j) = (sp.apply(col), tp.apply(col));
                        term *= if col < k {
                            left[i][j]
                        } else if col == k {
                            dphi[i] * dphi[j]
                        } else if col == k + 1 {
                            phi[i] * phi[j]
                        } else {
                            right[i][j]
                        };
                        if term == 0.0 {
                            break;
                        }
                    }
                    sum += term;
                }
            }
            let norm = (factorial(k as u64) * factorial((n - k - 2) as u64)) as f64;
            out.push(sum / norm);
        }
        Ok(out)
    }

    fn overlaps(&self, a: f64, b: f64) -> Result<Vec<Vec<f64>>> {
        let n = self.states.len();
        let mut m = vec![vec![0.0; n]; n];
        if b <= a {
            return Ok(m);
        }
        // panels keep the rule accurate on long harmonic intervals
        let panels = ((b - a) / 2.0).ceil().max(1.0) as usize;
        let h = (b - a) / panels as f64;
        for p in 0..panels {
            for (q, w) in legendre_on(self.inner.min(24 + 2 * self.nmax), a + p as f64 * h, a + (p + 1) as f64 * h) {
                let f = self.s.wavefunctions(self.nmax, q)?;
                for i in 0..n {
                    for j in 0..n {
                        m[i][j] += w * f[self.states[i]] * f[self.states[j]];
                    }
                }
            }
        }
        Ok(m)
    }
}

use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TrapKind {
    Harmonic,
    SquareWell,
    Table,
}

/// One-particle trap spectrum.
///
/// Units: harmonic uses hbar = m = omega = 1, so `e_n = n + 1/2`. The square well
/// has width `L = pi` centered at the origin with `pi^2 hbar^2 / 2mL^2 = 1`, so
/// `e_n = (n+1)^2`. Table traps carry user energies and optional parities.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SingleParticleSpectrum {
    kind: TrapKind,
    table: Vec<f64>,
    table_parity: Option<Vec<i8>>,
}

impl SingleParticleSpectrum {
    pub fn harmonic() -> Self {
        Self { kind: TrapKind::Harmonic, table: Vec::new(), table_parity: None }
    }

    pub fn square_well() -> Self {
        Self { kind: TrapKind::SquareWell, table: Vec::new(), table_parity: None }
    }

    /// Table trap; energies must be strictly increasing and parities, if given, `+1`/`-1`.
    pub fn table(energies: Vec<f64>, parities: Option<Vec<i8>>) -> Result<Self> {
        if energies.is_empty() {
            return Err(Error::Invalid("table trap has no states".into()));
        }
        if energies.iter().any(|e| !e.is_finite()) {
            return Err(Error::Invalid("table energies must be finite".into()));
        }
        if let Some(w) = energies.windows(2).find(|w| w[1] <= w[0]) {
            return Err(Error::Invalid(format!(
                "table energies must be strictly increasing ({} then {})",
                w[0], w[1]
            )));
        }
        if let Some(p) = &parities {
            if p.len() != energies.len() || p.iter().any(|&x| x != 1 && x != -1) {
                return Err(Error::Invalid("parities must be +1 or -1 for every state".into()));
            }
        }
        Ok(Self { kind: TrapKind::Table, table: energies, table_parity: parities })
    }

    pub fn kind(&self) -> TrapKind {
        self.kind
    }

    /// Number of states, or `None` for an unbounded spectrum.
    pub fn len(&self) -> Option<usize> {
        match self.kind {
            TrapKind::Table => Some(self.table.len()),
            _ => None,
        }
    }

    pub fn energy(&self, n: usize) -> f64 {
        match self.kind {
            TrapKind::Harmonic => n as f64 + 0.5,
            TrapKind::SquareWell => ((n + 1) * (n + 1)) as f64,
            TrapKind::Table => self.table[n],
        }
    }

    pub fn is_symmetric(&self) -> bool {
        self.kind != TrapKind::Table || self.table_parity.is_some()
    }

    pub fn parity(&self, n: usize) -> Option<i8> {
        match self.kind {
            TrapKind::Table => self.table_parity.as_ref().map(|p| p[n]),
            _ => Some(if n % 2 == 0 { 1 } else { -1 }),
        }
    }

    pub fn has_wavefunctions(&self) -> bool {
        self.kind != TrapKind::Table
    }

    pub fn units(&self) -> &'static str {
        match self.kind {
            TrapKind::Harmonic => "hbar*omega",
            TrapKind::SquareWell => "pi^2*hbar^2/(2*m*L^2)",
            TrapKind::Table => "table",
        }
    }

    /// Integration domain of the wavefunctions; infinite for the harmonic trap.
    pub fn domain(&self) -> (f64, f64) {
        match self.kind {
            TrapKind::SquareWell => (-PI / 2.0, PI / 2.0),
            _ => (f64::NEG_INFINITY, f64::INFINITY),
        }
    }

    /// `phi_0(q) .. phi_nmax(q)`.
    pub fn wavefunctions(&self, nmax: usize, q: f64) -> Result<Vec<f64>> {
        match self.kind {
            TrapKind::Harmonic => Ok(hermite_functions(nmax, q)),
            TrapKind::SquareWell => {
                let c = (2.0 / PI).sqrt();
                Ok((0..=nmax).map(|n| c * ((n + 1) as f64 * (q + PI / 2.0)).sin()).collect())
            }
            TrapKind::Table => Err(Error::NoWavefunctions),
        }
    }

    /// Derivatives `phi_n'(q)` for `n = 0..=nmax`.
    pub fn derivatives(&self, nmax: usize, q: f64) -> Result<Vec<f64>> {
        match self.kind {
            TrapKind::Harmonic => {
                let h = hermite_functions(nmax + 1, q);
                Ok((0..=nmax)
                    .map(|n| {
                        let lower = if n > 0 { (n as f64 / 2.0).sqrt() * h[n - 1] } else { 0.0 };
                        lower - ((n + 1) as f64 / 2.0).sqrt() * h[n + 1]
                    })
                    .collect())
            }
            TrapKind::SquareWell => {
                let c = (2.0 / PI).sqrt();
                Ok((0..=nmax)
                    .map(|n| {
                        let k = (n + 1) as f64;
                        c * k * (k * (q + PI / 2.0)).cos()
                    })
                    .collect())
            }
            TrapKind::Table => Err(Error::NoWavefunctions),
        }
    }

    pub fn wavefunction(&self, n: usize, q: f64) -> Result<f64> {
        Ok(self.wavefunctions(n, q)?[n])
    }
}

/// Normalized Hermite functions by the stable three-term recurrence.
pub fn hermite_functions(nmax: usize, q: f64) -> Vec<f64> {
    let mut out = Vec::with_capacity(nmax + 1);
    let p0 = PI.powf(-0.25) * (-q * q / 2.0).exp();
    out.push(p0);
    if nmax >= 1 {
        out.push(2f64.sqrt() * q * p0);
    }
    for n in 1..nmax {
        let nf = n as f64;
        let next = (2.0 / (nf + 1.0)).sqrt() * q * out[n] - (nf / (nf + 1.0)).sqrt() * out[n - 1];
        out.push(next);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parity_of_wavefunctions() {
        for s in [SingleParticleSpectrum::harmonic(), SingleParticleSpectrum::square_well()] {
            for &q in &[0.1, 0.7, 1.3] {
                let a = s.wavefunctions(8, q).unwrap();
                let b = s.wavefunctions(8, -q).unwrap();
                for n in 0..=8 {
                    let p = s.parity(n).unwrap() as f64;
                    assert!((b[n] - p * a[n]).abs() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn derivative_matches_finite_difference() {
        for s in [SingleParticleSpectrum::harmonic(), SingleParticleSpectrum::square_well()] {
            let h = 1e-6;
            let d = s.derivatives(6, 0.4).unwrap();
            let f1 = s.wavefunctions(6, 0.4 + h).unwrap();
            let f0 = s.wavefunctions(6, 0.4 - h).unwrap();
            for n in 0..=6 {
                assert!((d[n] - (f1[n] - f0[n]) / (2.0 * h)).abs() < 1e-6);
            }
        }
    }

    #[test]
    fn table_validation() {
        assert!(SingleParticleSpectrum::table(vec![1.0, 1.0], None).is_err());
        assert!(SingleParticleSpectrum::table(vec![1.0, 2.0], Some(vec![1])).is_err());
        let t = SingleParticleSpectrum::table(vec![0.0, 1.5], Some(vec![1, -1])).unwrap();
        assert!(t.is_symmetric());
        assert_eq!(t.parity(1), Some(-1));
        assert!(t.wavefunction(0, 0.0).is_err());
    }
}

//! Spin-space decomposition and boson/fermion occupancy rules.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::symgroup::{semistandard_tableaux, Partition};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Statistics {
    Boson,
    Fermion,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpinComponent {
    pub shape: Partition,
    pub multiplicity: u64,
    /// Total spin carried by every copy, only for `J = 2`.
    pub total_spin: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpinDecomposition {
    pub n: usize,
    pub j: usize,
    pub components: Vec<SpinComponent>,
}

impl SpinDecomposition {
    pub fn multiplicity(&self, shape: &Partition) -> u64 {
        self.components.iter().find(|c| &c.shape == shape).map_or(0, |c| c.multiplicity)
    }
}

/// Number of semistandard tableaux of `shape` with entries from `j` symbols.
pub fn spin_multiplicity(shape: &Partition, j: usize) -> u64 {
    if shape.len() > j {
        return 0;
    }
    let n = shape.n();
    let mut total = 0u64;
    // sum over weak compositions of n into j parts
    let mut content = vec![0usize; j];
    fn rec(shape: &Partition, content: &mut Vec<usize>, idx: usize, rem: usize, total: &mut u64) {
        if idx + 1 == content.len() {
            content[idx] = rem;
            *total += semistandard_tableaux(shape, content).len() as u64;
            return;
        }
        for a in 0..=rem {
            content[idx] = a;
            rec(shape, content, idx + 1, rem - a, total);
        }
    }
    rec(shape, &mut content, 0, n, &mut total);
    total
}

pub fn decompose_spin_space(n: usize, j: usize) -> Result<SpinDecomposition> {
    if n == 0 || j == 0 {
        return Err(Error::Invalid("need N >= 1 and J >= 1".into()));
    }
    let components = Partition::all(n)
        .into_iter()
        .filter(|p| p.len() <= j)
        .map(|shape| {
            let multiplicity = spin_multiplicity(&shape, j);
            let total_spin = (j == 2).then(|| {
                let p = shape.parts();
                (p[0] - p.get(1).copied().unwrap_or(0)) as f64 / 2.0
            });
            SpinComponent { shape, multiplicity, total_spin }
        })
        .collect();
    Ok(SpinDecomposition { n, j, components })
}

/// Symmetrized spin-spatial states per copy of the spatial irrep: the spin
/// multiplicity of `[mu]` for bosons and of `[mu]^T` for fermions.
pub fn physical_state_count(spatial: &Partition, stats: Statistics, j: usize) -> u64 {
    let spin_shape = match stats {
        Statistics::Boson => spatial.clone(),
        Statistics::Fermion => spatial.conjugate(),
    };
    spin_multiplicity(&spin_shape, j)
}

/// Spin states in the matching spin sector: copies times the irrep dimension.
pub fn spin_sector_states(spatial: &Partition, stats: Statistics, j: usize) -> u64 {
    physical_state_count(spatial, stats, j) * spatial.dimension()
}

/// The spatial irrep whose symmetrized states have spin irrep `spin_shape`.
pub fn spatial_irrep_for_spin(spin_shape: &Partition, stats: Statistics) -> Partition {
    match stats {
        Statistics::Boson => spin_shape.clone(),
        Statistics::Fermion => spin_shape.conjugate(),
    }
}

/// Spin irrep `[N/2 + s, N/2 - s]` for spin-1/2 particles, from `2s`.
pub fn spin_half_shape(n: usize, two_s: usize) -> Result<Partition> {
    if two_s > n || (n - two_s) % 2 != 0 {
        return Err(Error::Invalid(format!("total spin {}/2 impossible for {n} spin-1/2 particles", two_s)));
    }
    let a = (n + two_s) / 2;
    let b = (n - two_s) / 2;
    Partition::new(if b > 0 { vec![a, b] } else { vec![a] })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn four_spin_halves() {
        let d = decompose_spin_space(4, 2).unwrap();
        let m: Vec<(String, u64, Option<f64>)> =
            d.components.iter().map(|c| (c.shape.to_string(), c.multiplicity, c.total_spin)).collect();
        assert_eq!(
            m,
            vec![("[4]".into(), 5, Some(2.0)), ("[31]".into(), 3, Some(1.0)), ("[2^2]".into(), 1, Some(0.0))]
        );
    }

    #[test]
    fn counts() {
        let p = |s: &str| Partition::parse(s).unwrap();
        assert_eq!(physical_state_count(&p("21^2"), Statistics::Fermion, 2), 3);
        assert_eq!(spin_sector_states(&p("21^2"), Statistics::Fermion, 2), 9);
        assert_eq!(spin_sector_states(&p("2^2"), Statistics::Fermion, 2), 2);
        assert_eq!(physical_state_count(&p("1^4"), Statistics::Fermion, 2), 5);
        assert_eq!(physical_state_count(&p("4"), Statistics::Boson, 1), 1);
        assert_eq!(physical_state_count(&p("31"), Statistics::Boson, 1), 0);
        assert_eq!(spin_half_shape(4, 0).unwrap(), p("2^2"));
    }
}

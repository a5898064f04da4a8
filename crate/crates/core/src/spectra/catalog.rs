use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;

use super::levels::{harmonic_shell_degeneracy, orthogonal_irrep_dimension};
use crate::error::{Error, Result};
use crate::symgroup::{factorial, Partition};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CatalogTrap {
    Asymmetric,
    Symmetric,
    Harmonic,
}

/// Irrep dimensions of a symmetry group: a finite multiset or an infinite family.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum IrrepDims {
    /// dimension -> number of inequivalent irreps
    Finite(BTreeMap<u64, usize>),
    /// Continuous family; `first` lists the dimensions for label 0, 1, 2, ...
    Family { formula: String, first: Vec<u64> },
}

impl IrrepDims {
    fn from_dims(dims: impl IntoIterator<Item = u64>) -> Self {
        let mut m = BTreeMap::new();
        for d in dims {
            *m.entry(d).or_insert(0) += 1;
        }
        IrrepDims::Finite(m)
    }

    fn scaled(&self, k: usize) -> Self {
        match self {
            IrrepDims::Finite(m) => IrrepDims::Finite(m.iter().map(|(&d, &c)| (d, c * k)).collect()),
            other => other.clone(),
        }
    }

    /// Sum of squared dimensions (the group order for finite groups).
    pub fn order(&self) -> Option<u64> {
        match self {
            IrrepDims::Finite(m) => Some(m.iter().map(|(&d, &c)| d * d * c as u64).sum()),
            IrrepDims::Family { .. } => None,
        }
    }
}

impl fmt::Display for IrrepDims {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IrrepDims::Finite(m) => {
                let parts: Vec<String> =
                    m.iter().map(|(d, &c)| if c > 1 { format!("{d}^{c}") } else { d.to_string() }).collect();
                write!(f, "{}", parts.join(","))
            }
            IrrepDims::Family { formula, .. } => write!(f, "{formula}"),
        }
    }
}

/// Irrep dimensions of the non-interacting (`c0`, `k0`) and interacting (`c`, `k`)
/// configuration-space and kinematic symmetry groups.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Catalog {
    pub n: usize,
    pub trap: CatalogTrap,
    pub c0: IrrepDims,
    pub k0: IrrepDims,
    pub c: IrrepDims,
    pub k: IrrepDims,
}

fn binom(n: usize, k: usize) -> u64 {
    factorial(n as u64) / (factorial(k as u64) * factorial((n - k) as u64))
}

fn sn_dims(n: usize) -> Vec<u64> {
    if n == 0 {
        return vec![1];
    }
    Partition::all(n).iter().map(|p| p.dimension()).collect()
}

/// Irreps of the hyperoctahedral group: pairs of partitions of `k` and `n-k`.
fn hyperoctahedral_dims(n: usize) -> Vec<u64> {
    let mut out = Vec::new();
    for k in 0..=n {
        for a in sn_dims(k) {
            for b in sn_dims(n - k) {
                out.push(binom(n, k) * a * b);
            }
        }
    }
    out
}

/// One irrep per composition class. In a symmetric trap, the class also records
/// how many states of each multiplicity have each parity.
fn kinematic_zero_dims(n: usize, parity: bool) -> Vec<u64> {
    let mut out = Vec::new();
    for shape in Partition::all(n) {
        let d = factorial(n as u64) / shape.parts().iter().map(|&m| factorial(m as u64)).product::<u64>();
        let classes = if parity {
            // r states share multiplicity m; their parities form a multiset of size r: r+1 choices
            let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
            for &m in shape.parts() {
                *counts.entry(m).or_insert(0) += 1;
            }
            counts.values().map(|&r| r + 1).product()
        } else {
            1
        };
        out.extend(std::iter::repeat_n(d, classes));
    }
    out
}

pub fn minimal_group_catalog(n: usize, trap: CatalogTrap) -> Result<Catalog> {
    if !(2..=4).contains(&n) {
        return Err(Error::Invalid(format!("catalog covers N = 2..4, got {n}")));
    }
    let sn = IrrepDims::from_dims(sn_dims(n));
    let (c0, k0, c) = match trap {
        CatalogTrap::Asymmetric => (sn.clone(), IrrepDims::from_dims(kinematic_zero_dims(n, false)), sn.clone()),
        CatalogTrap::Symmetric => (
            IrrepDims::from_dims(hyperoctahedral_dims(n)),
            IrrepDims::from_dims(kinematic_zero_dims(n, true)),
            sn.scaled(2),
        ),
        CatalogTrap::Harmonic => {
            let c0 = if n == 2 {
                IrrepDims::Family { formula: "1,2".into(), first: vec![1, 2] }
            } else {
                let formula = if n == 3 { "2λ+1".to_string() } else { "(λ+1)^2".to_string() };
                let first = (0..6).map(|l| orthogonal_irrep_dimension(n, l).unwrap() as u64).collect();
                IrrepDims::Family { formula, first }
            };
            let formula = match n {
                2 => "(X+1)".to_string(),
                _ => format!("(X+{})!/({} X!)", n - 1, factorial((n - 1) as u64)),
            };
            let first = (0..6).map(|x| harmonic_shell_degeneracy(n, x) as u64).collect();
            // for two particles the relative parity coincides with the exchange
            let c = sn.scaled(if n == 2 { 2 } else { 4 });
            (c0, IrrepDims::Family { formula, first }, c)
        }
    };
    Ok(Catalog { n, trap, c0, k0, k: c.clone(), c })
}

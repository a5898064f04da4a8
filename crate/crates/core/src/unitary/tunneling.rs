use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

use super::sector::{ordering_action, ordering_reversal, particle_action, sectors, SnippetLevel};
use crate::error::{Error, Result};
use crate::interactions::SplitLevel;
use crate::linalg::{clusters, eigh};
use crate::spectra::{sort_irreps, IrrepLabel};
use crate::symgroup::{class_operator_spectrum, standard_tableaux, Permutation, Representation};

/// Adjacent-sector tunneling amplitudes `a_1 .. a_{N-1}`, in units of `1/g`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TunnelingAmplitudes {
    pub a: Vec<f64>,
    /// Reflection-symmetric trap: `a_k = a_{N-k}`.
    pub symmetric: bool,
}

impl TunnelingAmplitudes {
    pub fn new(a: Vec<f64>, symmetric: bool) -> Result<Self> {
        if a.iter().any(|x| !x.is_finite() || *x < 0.0) {
            return Err(Error::Invalid("tunneling amplitudes must be finite and non-negative".into()));
        }
        let amps = Self { a, symmetric };
        if symmetric && !amps.is_reflection_symmetric(1e-9) {
            return Err(Error::Invalid("symmetric trap needs a_k = a_(N-k)".into()));
        }
        Ok(amps)
    }

    /// Four particles in a symmetric trap: `(t, u, t)`.
    pub fn four(t: f64, u: f64) -> Result<Self> {
        Self::new(vec![t, u, t], true)
    }

    pub fn n(&self) -> usize {
        self.a.len() + 1
    }

    pub fn is_reflection_symmetric(&self, rel: f64) -> bool {
        let m = self.a.len();
        let scale = self.a.iter().fold(0.0f64, |s, x| s.max(*x)).max(f64::MIN_POSITIVE);
        (0..m).all(|k| (self.a[k] - self.a[m - 1 - k]).abs() <= rel * scale)
    }
}

/// Permutation matrix of a sector map in the lexicographic sector basis.
pub fn sector_matrix(n: usize, f: impl Fn(&Permutation) -> Permutation) -> DMatrix<f64> {
    let all = sectors(n);
    let index: BTreeMap<&Permutation, usize> = all.iter().enumerate().map(|(i, s)| (s, i)).collect();
    let mut m = DMatrix::zeros(all.len(), all.len());
    for (i, s) in all.iter().enumerate() {
        m[(index[&f(s)], i)] = 1.0;
    }
    m
}

pub fn particle_matrix(p: &Permutation) -> DMatrix<f64> {
    sector_matrix(p.n(), |s| particle_action(p, s))
}

pub fn ordering_matrix(o: &Permutation) -> DMatrix<f64> {
    sector_matrix(o.n(), |s| ordering_action(o, s))
}

/// `T = -sum_k a_k P(o_k) - (sum_k a_k) I` over the `N!` sectors.
pub fn tunneling_matrix(n: usize, amps: &TunnelingAmplitudes) -> Result<DMatrix<f64>> {
    if amps.n() != n {
        return Err(Error::Invalid(format!("{} amplitudes given for N={n}", amps.a.len())));
    }
    let dim = sectors(n).len();
    let total: f64 = amps.a.iter().sum();
    let mut t = DMatrix::identity(dim, dim) * (-total);
    for (k, &a) in amps.a.iter().enumerate() {
        t -= ordering_matrix(&Permutation::adjacent(n, k + 1)) * a;
    }
    Ok(t)
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct NearUnitarySplitting {
    /// One entry per irrep copy; `multiplicity` is the irrep dimension.
    pub levels: Vec<SplitLevel>,
    /// Eigenvalue clusters that hold more than one irrep.
    pub coincidences: Vec<String>,
}

impl NearUnitarySplitting {
    pub fn total_states(&self) -> u64 {
        self.levels.iter().map(|l| l.multiplicity).sum()
    }

    /// Number of states per irrep label.
    pub fn states_per_irrep(&self) -> Vec<(IrrepLabel, usize)> {
        let mut m = BTreeMap::new();
        for l in &self.levels {
            *m.entry(l.label.clone()).or_insert(0) += l.multiplicity as usize;
        }
        sort_irreps(m)
    }
}

/// Tolerance for grouping eigenvalues of the tunneling operator, relative to the largest amplitude.
pub const TUNNEL_CLUSTER_TOL: f64 = 1e-9;

/// First-order (in `1/g`) splitting of a unitary level, classified by particle
/// irrep and, for reflection-symmetric amplitudes with a parity, by total parity.
pub fn near_unitary_splitting(level: &SnippetLevel, amps: &TunnelingAmplitudes) -> Result<NearUnitarySplitting> {
    let n = level.n();
    let t = tunneling_matrix(n, amps)?;
    let scale = amps.a.iter().fold(1.0f64, |m, x| m.max(*x));
    let (vals, vecs) = eigh(&t);
    let parity = level.parity.filter(|_| amps.is_reflection_symmetric(1e-9));
    let pi_matrix = parity.map(|p| ordering_matrix(&ordering_reversal(n)) * p as f64);
    let generators: Vec<DMatrix<f64>> = (1..n).map(|k| particle_matrix(&Permutation::adjacent(n, k))).collect();
    let mut levels = Vec::new();
    let mut coincidences = Vec::new();
    for r in clusters(&vals, TUNNEL_CLUSTER_TOL * scale) {
        let shift = vals[r.clone()].iter().sum::<f64>() / r.len() as f64;
        let shift = if shift.abs() < TUNNEL_CLUSTER_TOL * scale { 0.0 } else { shift };
        let q = vecs.columns(r.start, r.len()).into_owned();
        let mut parts: Vec<(Option<i8>, DMatrix<f64>)> = Vec::new();
        match &pi_matrix {
            Some(pm) => {
                let (pv, pvec) = eigh(&(q.transpose() * pm * &q));
                for pr in clusters(&pv, 1e-6) {
                    let sign = pv[pr.start];
                    if (sign.abs() - 1.0).abs() > 1e-6 {
                        return Err(Error::Numeric(format!("parity eigenvalue {sign} is not +-1")));
                    }
                    parts.push((Some(sign.round() as i8), &q * pvec.columns(pr.start, pr.len())));
                }
            }
            None => parts.push((None, q)),
        }
        let mut labels_here = Vec::new();
        for (p, basis) in parts {
            let m = basis.ncols();
            let gens = generators.iter().map(|g| basis.transpose() * g * &basis).collect();
            let rep = Representation::new(n, m, gens)?;
            for block in class_operator_spectrum(&rep)? {
                if standard_tableaux(&block.tableau.shape)[0] != block.tableau {
                    continue;
                }
                let label = IrrepLabel::with_parity(block.tableau.shape.clone(), p);
                for c in 0..block.vectors.ncols() {
                    let v = &basis * block.vectors.column(c);
                    levels.push(SplitLevel {
                        label: label.clone(),
                        shift,
                        multiplicity: block.tableau.shape.dimension(),
                        eigenvector: v.iter().copied().collect(),
                    });
                }
                labels_here.push(label);
            }
        }
        labels_here.dedup();
        if labels_here.len() > 1 {
            let names: Vec<String> = labels_here.iter().map(|l| l.to_string()).collect();
            coincidences.push(format!("shift {shift:.12} shared by {}", names.join(", ")));
        }
    }
    let order: BTreeMap<IrrepLabel, usize> = sort_irreps(levels.iter().map(|l| (l.label.clone(), 0)).collect())
        .into_iter()
        .enumerate()
        .map(|(i, (l, _))| (l, i))
        .collect();
    levels.sort_by(|a, b| order[&a.label].cmp(&order[&b.label]).then(a.shift.total_cmp(&b.shift)));
    Ok(NearUnitarySplitting { levels, coincidences })
}

use nalgebra::{DMatrix, DVector};
use std::collections::{BTreeMap, VecDeque};

use crate::error::{Error, Result};
use crate::linalg::{clusters, eigh, fix_phase};
use crate::spectra::Composition;
use crate::symgroup::{
    class_operator_spectrum, semistandard_tableaux, standard_tableaux, Partition, Representation, Tableau, CLUSTER_TOL,
};

/// All copies of one irrep inside a composition space.
#[derive(Clone, Debug)]
pub struct IrrepCopies {
    pub shape: Partition,
    /// Weyl tableaux labelling the copies; entries are symbol indices into the
    /// composition's ascending state labels.
    pub weyl: Vec<Tableau>,
    /// Young tableaux in last-letter order.
    pub young: Vec<Tableau>,
    /// `vectors[y]` holds one column `|W Y>` per Weyl tableau, in the sequence basis.
    pub vectors: Vec<DMatrix<f64>>,
}

impl IrrepCopies {
    pub fn k(&self) -> usize {
        self.weyl.len()
    }

    pub fn vector(&self, w: usize, y: usize) -> DVector<f64> {
        self.vectors[y].column(w).into_owned()
    }
}

/// Double-tableau basis `|W Y>` of a composition space.
///
/// Within the first Young tableau the copies are separated by a Gelfand-Tsetlin
/// chain over the occupied states (class sums restricted to particles in the
/// first `k` states). The remaining Young tableaux are generated from the first
/// one by Young's orthogonal form, so every copy, in every composition, carries
/// identical representation matrices.
#[derive(Clone, Debug)]
pub struct DoubleTableauBasis {
    pub composition: Composition,
    pub sequences: Vec<Vec<usize>>,
    pub irreps: Vec<IrrepCopies>,
}

impl DoubleTableauBasis {
    pub fn new(c: &Composition) -> Result<Self> {
        let n = c.n();
        let labels = c.labels();
        let symbol: BTreeMap<usize, usize> = labels.iter().enumerate().map(|(i, &l)| (l, i)).collect();
        let content = c.multiplicities();
        let sequences = c.sequences();
        let sym_seqs: Vec<Vec<usize>> =
            sequences.iter().map(|s| s.iter().map(|x| symbol[x]).collect()).collect();
        let rep = Representation::on_sequences(n, &sym_seqs);
        let blocks = class_operator_spectrum(&rep)?;
        let chain_ops = symbol_chain_operators(&sym_seqs, labels.len());

        let mut irreps = Vec::new();
        for shape in Partition::all(n) {
            let weyl = semistandard_tableaux(&shape, &content);
            if weyl.is_empty() {
                continue;
            }
            let young = standard_tableaux(&shape);
            let y0 = blocks
                .iter()
                .find(|b| b.tableau == young[0])
                .ok_or_else(|| Error::Numeric(format!("no {shape} vectors in {c}")))?;
            if y0.vectors.ncols() != weyl.len() {
                return Err(Error::Numeric(format!(
                    "{shape} appears {} times in {c}, expected {}",
                    y0.vectors.ncols(),
                    weyl.len()
                )));
            }
            let first = separate_copies(&y0.vectors, &chain_ops, &weyl, labels.len())?;
            let vectors = transfer(&rep, &young, first);
            irreps.push(IrrepCopies { shape, weyl, young, vectors });
        }
        Ok(Self { composition: c.clone(), sequences, irreps })
    }

    pub fn irrep(&self, shape: &Partition) -> Option<&IrrepCopies> {
        self.irreps.iter().find(|i| &i.shape == shape)
    }

    pub fn dim(&self) -> usize {
        self.sequences.len()
    }
}

/// `(O2_k, O3_k)` for `k = 1..symbols`: sums of transpositions and of 3-cycles
/// over particles whose symbol is below `k`.
fn symbol_chain_operators(seqs: &[Vec<usize>], symbols: usize) -> Vec<(DMatrix<f64>, DMatrix<f64>)> {
    let index: BTreeMap<&Vec<usize>, usize> = seqs.iter().enumerate().map(|(i, s)| (s, i)).collect();
    let dim = seqs.len();
    (1..=symbols)
        .map(|k| {
            let mut o2 = DMatrix::zeros(dim, dim);
            let mut o3 = DMatrix::zeros(dim, dim);
            for (col, s) in seqs.iter().enumerate() {
                let inside: Vec<usize> = (0..s.len()).filter(|&i| s[i] < k).collect();
                for a in 0..inside.len() {
                    for b in (a + 1)..inside.len() {
                        let mut t = s.clone();
                        t.swap(inside[a], inside[b]);
                        o2[(index[&t], col)] += 1.0;
                        for c in (b + 1)..inside.len() {
                            let (i, j, l) = (inside[a], inside[b], inside[c]);
                            let mut u = s.clone();
                            u[i] = s[j];
                            u[j] = s[l];
                            u[l] = s[i];
                            o3[(index[&u], col)] += 1.0;
                            let mut v = s.clone();
                            v[i] = s[l];
                            v[j] = s[i];
                            v[l] = s[j];
                            o3[(index[&v], col)] += 1.0;
                        }
                    }
                }
            }
            (o2, o3)
        })
        .collect()
}

/// Central characters of the transposition and 3-cycle class sums on `shape`.
fn central_pair(shape: &Partition) -> (f64, f64) {
    let c = shape.contents();
    let m = shape.n() as i64;
    let s1: i64 = c.iter().sum();
    let s2: i64 = c.iter().map(|x| x * x).sum();
    (s1 as f64, (s2 - m * (m - 1) / 2) as f64)
}

fn weyl_signature(w: &Tableau, symbols: usize) -> Vec<f64> {
    (1..=symbols)
        .flat_map(|k| {
            let sub = w.restrict(|x| x < k);
            let (a, b) = central_pair(&sub.shape);
            [a, b]
        })
        .collect()
}

// Diagonalizes the symbol chain inside the first-Young-tableau space and
// orders the resulting vectors like `weyl`.
fn separate_copies(
    q: &DMatrix<f64>,
    ops: &[(DMatrix<f64>, DMatrix<f64>)],
    weyl: &[Tableau],
    symbols: usize,
) -> Result<DMatrix<f64>> {
    let k = q.ncols();
    let mut parts: Vec<(DMatrix<f64>, Vec<f64>)> = vec![(q.clone(), Vec::new())];
    for (level, (o2, o3)) in ops.iter().enumerate() {
        for op in [o2, o3] {
            let mut next = Vec::new();
            for (basis, sig) in parts {
                let m = basis.transpose() * op * &basis;
                let (ev, vecs) = eigh(&m);
                for r in clusters(&ev, CLUSTER_TOL) {
                    let mean = ev[r.clone()].iter().sum::<f64>() / r.len() as f64;
                    if (mean - mean.round()).abs() > 1e-6 {
                        return Err(Error::Cluster { level: level + 1, detail: format!("symbol-chain eigenvalue {mean}") });
                    }
                    let mut s = sig.clone();
                    s.push(mean.round());
                    next.push((&basis * vecs.columns(r.start, r.len()), s));
                }
            }
            parts = next;
        }
    }
    let mut out = DMatrix::zeros(q.nrows(), k);
    let mut used = vec![false; weyl.len()];
    for (basis, sig) in parts {
        if basis.ncols() != 1 {
            return Err(Error::Cluster { level: symbols, detail: "Weyl tableaux share a chain signature".into() });
        }
        let pos = weyl
            .iter()
            .position(|w| weyl_signature(w, symbols) == sig)
            .ok_or_else(|| Error::Cluster { level: symbols, detail: format!("no Weyl tableau with signature {sig:?}") })?;
        if used[pos] {
            return Err(Error::Cluster { level: symbols, detail: "Weyl tableaux share a chain signature".into() });
        }
        used[pos] = true;
        let mut v = basis.column(0).into_owned();
        fix_phase(&mut v);
        out.set_column(pos, &v);
    }
    Ok(out)
}

// |s_k Y> = (U(s_k)|Y> - |Y>/r) / sqrt(1 - 1/r^2), breadth first from the first tableau.
fn transfer(rep: &Representation, young: &[Tableau], first: DMatrix<f64>) -> Vec<DMatrix<f64>> {
    let mut vecs: Vec<Option<DMatrix<f64>>> = vec![None; young.len()];
    vecs[0] = Some(first);
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        for k in 1..rep.n {
            let Some(t) = young[i].swap_adjacent(k) else { continue };
            let j = young.iter().position(|u| *u == t).unwrap();
            if vecs[j].is_some() {
                continue;
            }
            let r = (young[i].content_of(k + 1) - young[i].content_of(k)) as f64;
            let v = vecs[i].as_ref().unwrap();
            let moved = &rep.generators[k - 1] * v;
            vecs[j] = Some((moved - v / r) / (1.0 - 1.0 / (r * r)).sqrt());
            queue.push_back(j);
        }
    }
    vecs.into_iter().map(|v| v.expect("Young graph is connected")).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symgroup::IrrepMatrices;

    #[test]
    fn basis_is_orthonormal_and_complete() {
        let c = Composition::from_states(&[0, 0, 1, 2]).unwrap();
        let b = DoubleTableauBasis::new(&c).unwrap();
        let cols: Vec<DVector<f64>> = b
            .irreps
            .iter()
            .flat_map(|ir| (0..ir.young.len()).flat_map(move |y| (0..ir.k()).map(move |w| ir.vector(w, y))))
            .collect();
        assert_eq!(cols.len(), 12);
        let m = DMatrix::from_columns(&cols);
        assert!((m.transpose() * &m - DMatrix::identity(12, 12)).amax() < 1e-12);
    }

    #[test]
    fn copies_carry_young_matrices() {
        let c = Composition::from_states(&[0, 1, 2, 3]).unwrap();
        let b = DoubleTableauBasis::new(&c).unwrap();
        let sym: Vec<Vec<usize>> = b.sequences.clone();
        let rep = Representation::on_sequences(4, &sym);
        for ir in &b.irreps {
            let d = IrrepMatrices::new(&ir.shape);
            for w in 0..ir.k() {
                let basis = DMatrix::from_columns(&(0..ir.young.len()).map(|y| ir.vector(w, y)).collect::<Vec<_>>());
                for (k, g) in rep.generators.iter().enumerate() {
                    let m = basis.transpose() * g * &basis;
                    assert!((m - &d.generators[k]).amax() < 1e-12, "{} W{w}", ir.shape);
                }
            }
        }
    }
}

use nalgebra::DMatrix;
use std::collections::BTreeMap;

use super::irrep::IrrepMatrices;
use super::partition::Partition;
use super::perm::Permutation;
use super::tableau::{standard_tableaux, Tableau};
use crate::error::{Error, Result};
use crate::linalg::{clusters, eigh, fix_phase};

/// Tolerance for grouping class-operator eigenvalues.
pub const CLUSTER_TOL: f64 = 1e-9;

/// A real orthogonal representation of S_n given by its adjacent-transposition matrices.
#[derive(Clone, Debug)]
pub struct Representation {
    pub n: usize,
    pub dim: usize,
    /// `generators[k]` represents `(k+1, k+2)`.
    pub generators: Vec<DMatrix<f64>>,
}

impl Representation {
    pub fn new(n: usize, dim: usize, generators: Vec<DMatrix<f64>>) -> Result<Self> {
        if generators.len() + 1 != n.max(1) || generators.iter().any(|g| g.shape() != (dim, dim)) {
            return Err(Error::Invalid("generator count or size mismatch".into()));
        }
        Ok(Self { n, dim, generators })
    }

    /// Permutation representation on a finite set with a left action `act(p, i)`.
    pub fn from_action(n: usize, dim: usize, act: impl Fn(&Permutation, usize) -> usize) -> Self {
        let generators = (1..n)
            .map(|k| {
                let s = Permutation::adjacent(n, k);
                let mut m = DMatrix::zeros(dim, dim);
                for i in 0..dim {
                    m[(act(&s, i), i)] = 1.0;
                }
                m
            })
            .collect();
        Self { n, dim, generators }
    }

    pub fn regular(n: usize) -> Self {
        let all = Permutation::all(n);
        let index: BTreeMap<&Permutation, usize> = all.iter().enumerate().map(|(i, p)| (p, i)).collect();
        Self::from_action(n, all.len(), |s, i| index[&s.then(&all[i])])
    }

    pub fn trivial(n: usize) -> Self {
        Self::from_action(n, 1, |_, _| 0)
    }

    /// The n-dimensional defining representation.
    pub fn defining(n: usize) -> Self {
        Self::from_action(n, n, |s, i| s.inverse().apply(i))
    }

    pub fn irrep(shape: &Partition) -> Self {
        let ir = IrrepMatrices::new(shape);
        Self { n: shape.n(), dim: ir.dim, generators: ir.generators }
    }

    /// Permutation module on the given label sequences, which must be closed
    /// under reordering. Action `(p . s)_i = s_{p(i)}`.
    pub fn on_sequences(n: usize, seqs: &[Vec<usize>]) -> Self {
        let index: BTreeMap<&Vec<usize>, usize> = seqs.iter().enumerate().map(|(i, s)| (s, i)).collect();
        Self::from_action(n, seqs.len(), |p, i| index[&p.act_on(&seqs[i])])
    }

    /// Matrix of `(i j)` for one-based `i < j`, by conjugating generators.
    pub fn transposition(&self, i: usize, j: usize) -> DMatrix<f64> {
        let mut t = self.generators[i - 1].clone();
        for m in (i + 1)..j {
            let g = &self.generators[m - 1];
            t = g * t * g;
        }
        t
    }

    /// Sum of transpositions among the first `k` points.
    pub fn class_sum(&self, k: usize) -> DMatrix<f64> {
        let mut c = DMatrix::zeros(self.dim, self.dim);
        for j in 2..=k {
            let mut t = self.generators[j - 2].clone();
            c += &t;
            for i in (1..j - 1).rev() {
                let g = &self.generators[i - 1];
                t = g * t * g;
                c += &t;
            }
        }
        c
    }
}

/// The multiplicity space of one Young tableau inside a representation.
#[derive(Clone, Debug)]
pub struct TableauBlock {
    pub tableau: Tableau,
    /// Eigenvalues of the transposition class sums over the first `k` points, `k = 2..=n`.
    pub eigenvalues: Vec<f64>,
    /// Orthonormal columns spanning the block.
    pub vectors: DMatrix<f64>,
}

/// Diagonalizes the transposition class sums along `S_n > S_{n-1} > ... > S_2`
/// and labels each joint eigenspace by the Young tableau fixed by its eigenvalues.
pub fn class_operator_spectrum(rep: &Representation) -> Result<Vec<TableauBlock>> {
    let n = rep.n;
    let sums: Vec<DMatrix<f64>> = (2..=n).map(|k| rep.class_sum(k)).collect();
    // (basis, eigenvalues from level n downwards)
    let mut parts: Vec<(DMatrix<f64>, Vec<f64>)> = vec![(DMatrix::identity(rep.dim, rep.dim), Vec::new())];
    for k in (2..=n).rev() {
        let c = &sums[k - 2];
        let mut next = Vec::new();
        for (q, vals) in parts {
            let m = q.transpose() * c * &q;
            let (ev, vecs) = eigh(&m);
            for range in clusters(&ev, CLUSTER_TOL) {
                let mean = ev[range.clone()].iter().sum::<f64>() / range.len() as f64;
                let spread = ev[range.end - 1] - ev[range.start];
                if (mean - mean.round()).abs() > 1e-6 || spread > 1e-6 {
                    return Err(Error::Cluster {
                        level: k,
                        detail: format!("eigenvalue {mean} is not an isolated integer"),
                    });
                }
                let sub = &q * vecs.columns(range.start, range.len());
                let mut v = vals.clone();
                v.push(mean.round());
                next.push((sub, v));
            }
        }
        parts = next;
    }
    let mut blocks = Vec::with_capacity(parts.len());
    for (mut q, mut vals) in parts {
        vals.reverse();
        let tableau = tableau_from_sums(n, &vals)?;
        for mut col in q.column_iter_mut() {
            let mut v = col.clone_owned();
            fix_phase(&mut v);
            col.copy_from(&v);
        }
        blocks.push(TableauBlock { tableau, eigenvalues: vals, vectors: q });
    }
    blocks.sort_by_cached_key(|b| {
        let idx = standard_tableaux(&b.tableau.shape).iter().position(|t| *t == b.tableau);
        (std::cmp::Reverse(b.tableau.shape.clone()), idx)
    });
    Ok(blocks)
}

/// Rebuilds a standard tableau from the class-sum eigenvalues `c_2..c_n`.
pub fn tableau_from_sums(n: usize, sums: &[f64]) -> Result<Tableau> {
    let mut rows: Vec<Vec<usize>> = Vec::new();
    let mut prev = 0i64;
    for k in 1..=n {
        let total = if k == 1 { 0 } else { sums[k - 2].round() as i64 };
        let content = total - prev;
        prev = total;
        // addable cells: end of each row (if shorter than the row above) and a new row
        let mut placed = false;
        for r in 0..=rows.len() {
            let len = rows.get(r).map_or(0, |x| x.len());
            let above_ok = r == 0 || rows[r - 1].len() > len;
            if above_ok && len as i64 - r as i64 == content {
                if r == rows.len() {
                    rows.push(Vec::new());
                }
                rows[r].push(k);
                placed = true;
                break;
            }
        }
        if !placed {
            return Err(Error::Cluster {
                level: k,
                detail: format!("no addable box with content {content}"),
            });
        }
    }
    let shape = Partition::new(rows.iter().map(|r| r.len()).collect())?;
    Ok(Tableau { shape, rows })
}

/// Irrep multiplicities of a representation, read off the class-sum spectrum.
pub fn irrep_content(rep: &Representation) -> Result<BTreeMap<Partition, usize>> {
    let mut out = BTreeMap::new();
    for b in class_operator_spectrum(rep)? {
        let first = standard_tableaux(&b.tableau.shape)[0] == b.tableau;
        if first {
            *out.entry(b.tableau.shape.clone()).or_insert(0) += b.vectors.ncols();
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn regular_s3() {
        let blocks = class_operator_spectrum(&Representation::regular(3)).unwrap();
        let total: usize = blocks.iter().map(|b| b.vectors.ncols()).sum();
        assert_eq!(total, 6);
        let content = irrep_content(&Representation::regular(3)).unwrap();
        assert_eq!(content[&Partition::row(3)], 1);
        assert_eq!(content[&Partition::parse("21").unwrap()], 2);
        assert_eq!(content[&Partition::column(3)], 1);
    }

    #[test]
    fn trivial_top_eigenvalue() {
        let blocks = class_operator_spectrum(&Representation::trivial(4)).unwrap();
        assert_eq!(blocks.len(), 1);
        assert_eq!(*blocks[0].eigenvalues.last().unwrap(), 6.0);
    }

    #[test]
    fn defining_rep() {
        let content = irrep_content(&Representation::defining(4)).unwrap();
        let expect: BTreeMap<_, _> = [(Partition::row(4), 1), (Partition::parse("31").unwrap(), 1)].into();
        assert_eq!(content, expect);
    }

    #[test]
    fn irrep_recovers_its_tableaux() {
        let shape = Partition::parse("32").unwrap();
        let blocks = class_operator_spectrum(&Representation::irrep(&shape)).unwrap();
        let tabs: Vec<_> = blocks.iter().map(|b| b.tableau.clone()).collect();
        assert_eq!(tabs, standard_tableaux(&shape));
        // Young's orthogonal form is already the Gelfand-Tsetlin basis
        for (i, b) in blocks.iter().enumerate() {
            assert!((b.vectors[(i, 0)] - 1.0).abs() < 1e-10);
        }
    }
}

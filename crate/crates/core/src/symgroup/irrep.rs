use nalgebra::DMatrix;

use super::partition::Partition;
use super::perm::Permutation;
use super::tableau::{standard_tableaux, Tableau};

/// Young's orthogonal (Yamanouchi) form of an S_n irrep.
#[derive(Clone, Debug)]
pub struct IrrepMatrices {
    pub shape: Partition,
    pub dim: usize,
    pub tableaux: Vec<Tableau>,
    /// `generators[k]` represents the adjacent transposition `(k+1, k+2)`.
    pub generators: Vec<DMatrix<f64>>,
}

impl IrrepMatrices {
    pub fn new(shape: &Partition) -> Self {
        let tableaux = standard_tableaux(shape);
        let dim = tableaux.len();
        let n = shape.n();
        let generators = (1..n)
            .map(|k| {
                let mut m = DMatrix::zeros(dim, dim);
                for (i, t) in tableaux.iter().enumerate() {
                    let r = (t.content_of(k + 1) - t.content_of(k)) as f64;
                    m[(i, i)] = 1.0 / r;
                    if let Some(s) = t.swap_adjacent(k) {
                        let j = tableaux.iter().position(|u| *u == s).expect("tableau listed");
                        m[(j, i)] = (1.0 - 1.0 / (r * r)).sqrt();
                    }
                }
                m
            })
            .collect();
        Self { shape: shape.clone(), dim, tableaux, generators }
    }

    /// `D(p)`, multiplying generator matrices along an adjacent-transposition word.
    pub fn matrix(&self, p: &Permutation) -> DMatrix<f64> {
        assert_eq!(p.n(), self.shape.n());
        let mut d = DMatrix::identity(self.dim, self.dim);
        for k in p.adjacent_word() {
            d *= &self.generators[k];
        }
        d
    }
}

pub fn irrep_dimension(shape: &Partition) -> u64 {
    shape.dimension()
}

pub fn irrep_matrix(shape: &Partition, p: &Permutation) -> DMatrix<f64> {
    IrrepMatrices::new(shape).matrix(p)
}

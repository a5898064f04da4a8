use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use super::basis::DoubleTableauBasis;
use super::reduced::interaction_block;
use super::table::TwoBodyTable;
use crate::error::{Error, Result};
use crate::linalg::eigvalsh;
use crate::spectra::{compositions, Composition, Truncation};
use crate::spinstats::{spatial_irrep_for_spin, Statistics};
use crate::symgroup::Partition;

/// Which symmetry tower to diagonalize.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub enum SectorSpec {
    /// A spatial S_N irrep directly.
    Spatial(Partition),
    /// Particles with `j` internal states in the spin irrep `spin` (`None` when `j = 1`).
    Spin { statistics: Statistics, j: usize, spin: Option<Partition> },
}

impl SectorSpec {
    pub fn spatial_irrep(&self, n: usize) -> Result<Partition> {
        match self {
            SectorSpec::Spatial(p) => {
                if p.n() != n {
                    return Err(Error::Invalid(format!("irrep {p} does not partition {n}")));
                }
                Ok(p.clone())
            }
            SectorSpec::Spin { statistics, j, spin } => {
                let spin_shape = match spin {
                    Some(s) => s.clone(),
                    None if *j == 1 => Partition::row(n),
                    None => return Err(Error::Invalid("choose a spin irrep when j > 1".into())),
                };
                if spin_shape.n() != n || spin_shape.len() > *j {
                    return Err(Error::Invalid(format!("spin irrep {spin_shape} impossible for N={n}, J={j}")));
                }
                Ok(spatial_irrep_for_spin(&spin_shape, *statistics))
            }
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ExactBlock {
    pub parity: Option<i8>,
    pub dimension: usize,
    pub eigenvalues: Vec<f64>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ExactResult {
    pub irrep: Partition,
    /// Dimension of the reduced problem (copies of the irrep inside the truncation).
    pub dimension: usize,
    /// Particle-basis dimension of the same truncation.
    pub naive_dimension: u64,
    /// Parity sub-blocks for symmetric traps, otherwise one block.
    pub blocks: Vec<ExactBlock>,
    /// All eigenvalues, ascending.
    pub eigenvalues: Vec<f64>,
}

/// Diagonalizes `H = H_0 + g V` inside one irrep tower at the first Young tableau.
/// Couplings to compositions outside the truncation are dropped.
pub fn exact_diagonalize(
    table: &TwoBodyTable,
    n: usize,
    trunc: Truncation,
    sector: &SectorSpec,
    g: f64,
) -> Result<ExactResult> {
    let table = table.with_strength(g);
    let spectrum = table.spectrum().clone();
    let irrep = sector.spatial_irrep(n)?;
    let comps = compositions(&spectrum, n, trunc)?;
    let naive_dimension = comps.iter().map(|c| c.degeneracy()).sum();
    // the irrep occurs in a composition space iff its shape dominates the composition shape
    let members: Vec<Composition> = comps.into_iter().filter(|c| irrep.dominates(&c.shape())).collect();
    let bases: Vec<DoubleTableauBasis> = members.iter().map(DoubleTableauBasis::new).collect::<Result<_>>()?;
    let copies: Vec<(usize, DMatrix<f64>)> = bases
        .iter()
        .enumerate()
        .filter_map(|(i, b)| b.irrep(&irrep).map(|ir| (i, ir.vectors[0].clone())))
        .collect();
    let dimension: usize = copies.iter().map(|c| c.1.ncols()).sum();
    if dimension == 0 {
        return Err(Error::EmptySector(format!("{irrep} has no states in this truncation")));
    }
    let parity_of = |i: usize| members[i].parity(&spectrum);
    let mut parities: Vec<Option<i8>> = copies.iter().map(|c| parity_of(c.0)).collect();
    parities.sort();
    parities.dedup();
    parities.reverse();
    let mut blocks = Vec::new();
    for p in parities {
        let sel: Vec<&(usize, DMatrix<f64>)> = copies.iter().filter(|c| parity_of(c.0) == p).collect();
        let dim: usize = sel.iter().map(|c| c.1.ncols()).sum();
        let mut h = DMatrix::zeros(dim, dim);
        let mut r0 = 0;
        for (a, (i, qi)) in sel.iter().map(|c| (c.0, &c.1)).enumerate() {
            let mut c0 = 0;
            for (b, (j, qj)) in sel.iter().map(|c| (c.0, &c.1)).enumerate() {
                if b >= a {
                    let v = interaction_block(&table, &bases[i].sequences, &members[j], &bases[j].sequences)?;
                    let mut sub = qi.transpose() * v * qj;
                    if a == b {
                        sub += DMatrix::identity(qi.ncols(), qi.ncols()) * members[i].energy(&spectrum);
                    }
                    h.view_mut((r0, c0), (qi.ncols(), qj.ncols())).copy_from(&sub);
                    h.view_mut((c0, r0), (qj.ncols(), qi.ncols())).copy_from(&sub.transpose());
                }
                c0 += qj.ncols();
            }
            r0 += qi.ncols();
        }
        let asym = (&h - h.transpose()).amax();
        if asym > 1e-12 * h.amax().max(1.0) {
            return Err(Error::Numeric(format!("Hamiltonian block is not symmetric ({asym:e})")));
        }
        blocks.push(ExactBlock { parity: p, dimension: dim, eigenvalues: eigvalsh(&h) });
    }
    let mut eigenvalues: Vec<f64> = blocks.iter().flat_map(|b| b.eigenvalues.iter().copied()).collect();
    eigenvalues.sort_by(f64::total_cmp);
    Ok(ExactResult { irrep, dimension, naive_dimension, blocks, eigenvalues })
}

//! Permutations, partitions, tableaux and representations of the symmetric group.

mod classop;
mod irrep;
mod partition;
mod perm;
mod tableau;

pub use classop::{class_operator_spectrum, irrep_content, tableau_from_sums, Representation, TableauBlock, CLUSTER_TOL};
pub use irrep::{irrep_dimension, irrep_matrix, IrrepMatrices};
pub use partition::Partition;
pub(crate) use partition::factorial;
pub use perm::Permutation;
pub use tableau::{kostka_row, semistandard_tableaux, standard_tableaux, Tableau};

/// Conjugacy classes of S_n as (cycle type, class size), `[n]` first.
pub fn conjugacy_classes(n: usize) -> Vec<(Partition, u64)> {
    Partition::all(n).into_iter().map(|p| {
        let s = p.class_size();
        (p, s)
    }).collect()
}

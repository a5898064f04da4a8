//! Two-body matrix elements, symmetry-reduced blocks, first-order splitting and
//! exact diagonalization inside a single irrep tower.

mod basis;
mod exact;
pub mod quad;
mod reduced;
mod table;

pub use basis::{DoubleTableauBasis, IrrepCopies};
pub use exact::{exact_diagonalize, ExactBlock, ExactResult, SectorSpec};
pub use reduced::{
    embed, first_order_splitting, first_order_splitting_level, interaction_block, reduced_blocks, reduced_blocks_in,
    symbolic_reduced_blocks, ReducedBlock, SplitLevel, SplittingResult, Symbolic, SymbolicBlock, Y_INDEPENDENCE_TOL,
};
pub use table::{two_body_element, ElementKey, InteractionKind, Kernel, QuadratureOptions, TwoBodyTable};

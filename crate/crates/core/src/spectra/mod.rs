//! One-particle trap models and the non-interacting N-particle spectrum.

mod catalog;
mod composition;
mod levels;
mod trap;

pub use catalog::{minimal_group_catalog, Catalog, CatalogTrap, IrrepDims};
pub use composition::{bose_fermi_partner, composition_degeneracy, Composition};
pub use levels::{
    compositions, enumerate_levels, enumerate_levels_with_tol, harmonic_shell_degeneracy, orthogonal_irrep_dimension,
    sort_irreps, EnergyLevel, IrrepLabel, LevelFlags, Truncation, ENERGY_TOL,
};
pub use trap::{hermite_functions, SingleParticleSpectrum, TrapKind};

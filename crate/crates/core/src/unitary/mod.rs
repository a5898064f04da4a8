//! Unitary-limit spectrum in the snippet basis and its near-unitary splitting.

mod amplitudes;
mod sector;
mod tunneling;

pub use amplitudes::{tunneling_amplitudes_from_trap, tunneling_amplitudes_with, AmplitudeOptions, AmplitudeReport};
pub use sector::{
    ordering_action, ordering_reversal, particle_action, sectors, snippet_parity, unitary_spectrum, Sector, SnippetLevel,
};
pub use tunneling::{
    near_unitary_splitting, ordering_matrix, particle_matrix, sector_matrix, tunneling_matrix, NearUnitarySplitting,
    TunnelingAmplitudes, TUNNEL_CLUSTER_TOL,
};

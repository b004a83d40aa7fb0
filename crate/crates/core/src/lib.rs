//! Generalized concurrence of pure bipartite and tripartite states.
//!
//! Concurrence is computed as a normalized sum of squared 2x2 minors of the
//! state's coefficient matricizations. A minor vanishes exactly when the two
//! rows it is drawn from are parallel, so the same machinery gives a
//! separability certificate per one-vs-rest cut and, when the certificate
//! holds, an explicit product factorization.
//!
//! The [`oracle`] module recomputes the same quantities through partial
//! traces and singular values, sharing no code with the minor enumeration.

pub mod concurrence;
pub mod error;
pub mod io;
pub mod oracle;
pub mod sample;
pub mod schwarz;
pub mod state;
pub mod sum;

pub use num_complex::Complex64;

pub use concurrence::{
    bipartite_concurrence, concurrence, factorize_cut, full_separability, is_separable_cut,
    tripartite_concurrence, ConcurrenceReport, Evaluation, FullSeparability,
    SeparabilityCertificate, DEFAULT_NORMALIZATION, DEFAULT_TOLERANCE,
};
pub use error::{Error, Result};
pub use io::{emit_state, parse_state, StateFile};
pub use oracle::{numeric_rank, oracle_concurrence, purity, reduced_density, DensityMatrix};
pub use sample::{haar_unitary, sample_state, SampleKind, SamplerSpec};
pub use schwarz::{
    enumerate_minors, gap_equals_minor_sum, matricize, minor_sum_sq, schwarz_gap, Matricization,
    MinorTerm,
};
pub use state::{Cut, PureState};

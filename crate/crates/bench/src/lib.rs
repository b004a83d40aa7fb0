//! Fixed inputs shared by the criterion benches.

use schwarz_core::{sample_state, PureState, SampleKind, SamplerSpec};

pub fn haar(dims: &[usize], seed: u64) -> PureState {
    sample_state(&SamplerSpec {
        dims: dims.to_vec(),
        kind: SampleKind::Haar,
        seed,
    })
    .expect("valid sampler spec")
}

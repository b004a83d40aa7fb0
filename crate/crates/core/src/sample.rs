//! Seeded random states and unitaries.
//!
//! The generator is `ChaCha20Rng::seed_from_u64(seed)`. Haar states draw one
//! standard normal for the real part and one for the imaginary part of each
//! amplitude, in row-major order, then normalize. Product states draw one
//! Haar vector per subsystem in ascending subsystem order from the same
//! stream and tensor them together. The golden files under
//! `tests/data/` pin this scheme.

use std::fmt;
use std::str::FromStr;

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::state::PureState;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SampleKind {
    Haar,
    Product,
    Basis,
}

impl FromStr for SampleKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "haar" => Ok(SampleKind::Haar),
            "product" => Ok(SampleKind::Product),
            "basis" => Ok(SampleKind::Basis),
            other => Err(Error::Spec(format!(
                "unknown kind {other:?}, expected haar, product or basis"
            ))),
        }
    }
}

impl fmt::Display for SampleKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SampleKind::Haar => "haar",
            SampleKind::Product => "product",
            SampleKind::Basis => "basis",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SamplerSpec {
    pub dims: Vec<usize>,
    pub kind: SampleKind,
    pub seed: u64,
}

fn gaussian(rng: &mut impl Rng) -> Complex64 {
    Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

fn haar_vector(dims: Vec<usize>, rng: &mut impl Rng) -> Result<PureState> {
    let len = dims.iter().product();
    let amps = (0..len).map(|_| gaussian(rng)).collect();
    PureState::new(dims, amps)?.normalize()
}

pub fn sample_state(spec: &SamplerSpec) -> Result<PureState> {
    if spec.dims.is_empty() || spec.dims.contains(&0) {
        return Err(Error::Spec(format!(
            "dims {:?} must be a nonempty list of positive integers",
            spec.dims
        )));
    }
    let mut rng = ChaCha20Rng::seed_from_u64(spec.seed);
    match spec.kind {
        SampleKind::Haar => haar_vector(spec.dims.clone(), &mut rng),
        SampleKind::Product => {
            let mut state = haar_vector(vec![spec.dims[0]], &mut rng)?;
            for &d in &spec.dims[1..] {
                state = state.tensor(&haar_vector(vec![d], &mut rng)?);
            }
            state.normalize()
        }
        SampleKind::Basis => PureState::basis(spec.dims.clone(), &vec![1; spec.dims.len()]),
    }
}

/// Haar-random `n x n` unitary: QR of a complex Ginibre matrix with the
/// phases of `R`'s diagonal moved into `Q`.
pub fn haar_unitary(n: usize, rng: &mut impl Rng) -> DMatrix<Complex64> {
    let ginibre = DMatrix::from_fn(n, n, |_, _| gaussian(rng));
    let (mut q, r) = ginibre.qr().unpack();
    for k in 0..n {
        let d = r[(k, k)];
        let phase = if d.norm() > 0.0 {
            d / d.norm()
        } else {
            Complex64::new(1.0, 0.0)
        };
        for i in 0..n {
            q[(i, k)] *= phase;
        }
    }
    q
}

//! Reference computations through partial traces and singular values.
//!
//! Nothing here touches the minor enumeration in [`crate::schwarz`]; these
//! routines exist to cross-check it.

use nalgebra::{DMatrix, SymmetricEigen, SVD};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::schwarz::Matricization;
use crate::state::{Cut, PureState};

/// Eigenvalue floor for the positive-semidefinite check.
pub const PSD_FLOOR: f64 = -1e-10;

#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    entries: DMatrix<Complex64>,
}

impl DensityMatrix {
    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    pub fn entries(&self) -> &DMatrix<Complex64> {
        &self.entries
    }

    pub fn trace(&self) -> Complex64 {
        self.entries.trace()
    }

    /// Largest elementwise deviation from Hermiticity.
    pub fn hermiticity_error(&self) -> f64 {
        let n = self.dim();
        let mut worst = 0.0f64;
        for a in 0..n {
            for b in 0..n {
                worst = worst.max((self.entries[(a, b)] - self.entries[(b, a)].conj()).norm());
            }
        }
        worst
    }

    pub fn min_eigenvalue(&self) -> f64 {
        SymmetricEigen::new(self.entries.clone())
            .eigenvalues
            .iter()
            .copied()
            .fold(f64::INFINITY, f64::min)
    }

    /// Hermitian within 1e-12, unit trace within 1e-12, PSD above the floor.
    pub fn is_valid(&self) -> bool {
        let tr = self.trace();
        self.hermiticity_error() <= 1e-12
            && (tr.re - 1.0).abs() <= 1e-12
            && tr.im.abs() <= 1e-12
            && self.min_eigenvalue() >= PSD_FLOOR
    }
}

/// Partial trace over every subsystem except `keep`, on the normalized state:
/// `ρ[a,b] = Σ_r α(a,r)·conj(α(b,r))`.
pub fn reduced_density(state: &PureState, keep: Cut) -> Result<DensityMatrix> {
    let keep = keep.check(state.arity())?;
    let state = state.normalize()?;
    let dims = state.dims();
    let j = keep.subsystem() - 1;
    let d = dims[j];
    let stride: usize = dims[j + 1..].iter().product();
    let others = state.len() / d;

    // amplitudes regrouped as d rows of length `others`
    let mut grouped = vec![Vec::with_capacity(others); d];
    for (k, amp) in state.amps().iter().enumerate() {
        grouped[(k / stride) % d].push(*amp);
    }

    let mut rho = DMatrix::<Complex64>::zeros(d, d);
    for a in 0..d {
        for b in 0..d {
            rho[(a, b)] = grouped[a]
                .iter()
                .zip(&grouped[b])
                .map(|(x, y)| x * y.conj())
                .sum();
        }
    }
    Ok(DensityMatrix { entries: rho })
}

/// `Tr ρ² = Σ_{a,b} |ρ[a,b]|²` for Hermitian `ρ`.
pub fn purity(rho: &DensityMatrix) -> f64 {
    rho.entries.iter().map(|z| z.norm_sqr()).sum()
}

/// `sqrt(Σ_j 2(1 − Tr ρ_j²))` over one cut for bipartite states and all
/// three cuts for tripartite ones.
pub fn oracle_concurrence(state: &PureState) -> Result<f64> {
    let cuts = match state.arity() {
        2 => 1,
        3 => 3,
        n => {
            return Err(Error::Arity {
                expected: "2 or 3".into(),
                actual: n,
            })
        }
    };
    let mut total = 0.0;
    for cut in Cut::all(state.arity()).take(cuts) {
        total += 2.0 * (1.0 - purity(&reduced_density(state, cut)?));
    }
    Ok(total.max(0.0).sqrt())
}

/// Number of singular values above `tolerance` times the largest one.
pub fn numeric_rank(mat: &Matricization, tolerance: f64) -> usize {
    let m = DMatrix::from_row_slice(mat.rows(), mat.cols(), mat.entries());
    let sv = SVD::new(m, false, false).singular_values;
    let largest = sv.iter().copied().fold(0.0, f64::max);
    if largest == 0.0 {
        return 0;
    }
    sv.iter().filter(|&&s| s > tolerance * largest).count()
}

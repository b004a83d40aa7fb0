//! Pure-state amplitude tensors.
//!
//! Amplitudes are stored flat in row-major order over the multi-index
//! `(i_1, ..., i_m)`, the last subsystem varying fastest. The public indexing
//! contract is 1-based: `i_j` runs over `1..=N_j` and cuts are numbered
//! `1..=m`.

use std::fmt;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::sum::NeumaierSum;

/// A one-subsystem-versus-rest bipartition, identified by the 1-based index
/// of the isolated subsystem.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cut(usize);

impl Cut {
    pub fn new(subsystem: usize) -> Result<Self> {
        if subsystem == 0 {
            return Err(Error::Index("cut index is 1-based, got 0".into()));
        }
        Ok(Cut(subsystem))
    }

    /// 1-based subsystem index.
    pub fn subsystem(self) -> usize {
        self.0
    }

    pub(crate) fn position(self) -> usize {
        self.0 - 1
    }

    /// Checks `1 <= j <= arity`.
    pub fn check(self, arity: usize) -> Result<Self> {
        if self.0 > arity {
            return Err(Error::Index(format!(
                "cut {} out of range for a {arity}-partite state",
                self.0
            )));
        }
        Ok(self)
    }

    /// All cuts `1..=arity` in ascending order.
    pub fn all(arity: usize) -> impl Iterator<Item = Cut> {
        (1..=arity).map(Cut)
    }
}

impl fmt::Display for Cut {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Dense pure state over `C^{N_1} ⊗ ... ⊗ C^{N_m}`.
///
/// Construction does not normalize; operations that need a unit vector
/// normalize internally.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    dims: Vec<usize>,
    amps: Vec<Complex64>,
    label: Option<String>,
}

impl PureState {
    pub fn new(dims: Vec<usize>, amps: Vec<Complex64>) -> Result<Self> {
        if dims.is_empty() {
            return Err(Error::Shape("dimension list is empty".into()));
        }
        if let Some(j) = dims.iter().position(|&d| d == 0) {
            return Err(Error::Shape(format!("dims[{j}] must be positive")));
        }
        let total = dims
            .iter()
            .try_fold(1usize, |acc, &d| acc.checked_mul(d))
            .ok_or_else(|| Error::Shape("dimension product overflows".into()))?;
        if amps.len() != total {
            return Err(Error::Shape(format!(
                "dims {dims:?} need {total} amplitudes, got {}",
                amps.len()
            )));
        }
        if amps.iter().all(|a| a.re == 0.0 && a.im == 0.0) {
            return Err(Error::Degenerate);
        }
        Ok(PureState {
            dims,
            amps,
            label: None,
        })
    }

    /// Computational basis state `|i_1, ..., i_m>` with 1-based indices.
    pub fn basis(dims: Vec<usize>, index: &[usize]) -> Result<Self> {
        let total: usize = dims.iter().product();
        let mut amps = vec![Complex64::new(0.0, 0.0); total];
        let pos = linear_index(&dims, index)?;
        amps[pos] = Complex64::new(1.0, 0.0);
        PureState::new(dims, amps)
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn amps(&self) -> &[Complex64] {
        &self.amps
    }

    /// Number of subsystems `m`.
    pub fn arity(&self) -> usize {
        self.dims.len()
    }

    pub fn len(&self) -> usize {
        self.amps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.amps.is_empty()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).collect::<NeumaierSum>().sum()
    }

    /// Largest amplitude modulus.
    pub fn max_modulus(&self) -> f64 {
        self.amps.iter().map(|a| a.norm()).fold(0.0, f64::max)
    }

    /// Rescales by a single positive real so that the squared norm is one.
    pub fn normalize(&self) -> Result<Self> {
        let n2 = self.norm_sqr();
        if n2 == 0.0 || !n2.is_finite() {
            return Err(Error::Degenerate);
        }
        let inv = 1.0 / n2.sqrt();
        Ok(PureState {
            dims: self.dims.clone(),
            amps: self.amps.iter().map(|a| a * inv).collect(),
            label: self.label.clone(),
        })
    }

    /// Amplitude at a 1-based multi-index.
    pub fn amplitude(&self, index: &[usize]) -> Result<Complex64> {
        Ok(self.amps[linear_index(&self.dims, index)?])
    }

    /// Multiplies every amplitude by `factor`.
    pub fn scaled(&self, factor: Complex64) -> Result<Self> {
        let mut out = PureState::new(
            self.dims.clone(),
            self.amps.iter().map(|a| a * factor).collect(),
        )?;
        out.label = self.label.clone();
        Ok(out)
    }

    /// Tensor product `self ⊗ other`, subsystems of `self` first.
    pub fn tensor(&self, other: &PureState) -> PureState {
        let mut dims = self.dims.clone();
        dims.extend_from_slice(&other.dims);
        let amps = self
            .amps
            .iter()
            .flat_map(|a| other.amps.iter().map(move |b| a * b))
            .collect();
        PureState {
            dims,
            amps,
            label: None,
        }
    }

    /// Inner product `<self|other>`, conjugate-linear in `self`.
    pub fn inner(&self, other: &PureState) -> Result<Complex64> {
        if self.dims != other.dims {
            return Err(Error::Shape(format!(
                "inner product of states with dims {:?} and {:?}",
                self.dims, other.dims
            )));
        }
        let mut re = NeumaierSum::default();
        let mut im = NeumaierSum::default();
        for (a, b) in self.amps.iter().zip(&other.amps) {
            let p = a.conj() * b;
            re += p.re;
            im += p.im;
        }
        Ok(Complex64::new(re.sum(), im.sum()))
    }

    /// `|<a|b>|^2 / (<a|a><b|b>)`, insensitive to normalization and global phase.
    pub fn fidelity(&self, other: &PureState) -> Result<f64> {
        let overlap = self.inner(other)?.norm_sqr();
        Ok(overlap / (self.norm_sqr() * other.norm_sqr()))
    }

    /// Applies `unitary` (any square matrix of size `N_j`) to subsystem `cut`.
    pub fn apply_local(&self, cut: Cut, unitary: &DMatrix<Complex64>) -> Result<Self> {
        let j = cut.check(self.arity())?.position();
        let d = self.dims[j];
        if unitary.nrows() != d || unitary.ncols() != d {
            return Err(Error::Shape(format!(
                "local operator is {}x{}, subsystem {} has dimension {d}",
                unitary.nrows(),
                unitary.ncols(),
                cut
            )));
        }
        let (outer, inner) = split_sizes(&self.dims, j);
        let mut amps = vec![Complex64::new(0.0, 0.0); self.amps.len()];
        for o in 0..outer {
            for r in 0..inner {
                for a in 0..d {
                    let mut acc = Complex64::new(0.0, 0.0);
                    for b in 0..d {
                        acc += unitary[(a, b)] * self.amps[(o * d + b) * inner + r];
                    }
                    amps[(o * d + a) * inner + r] = acc;
                }
            }
        }
        PureState::new(self.dims.clone(), amps)
    }

    /// Exchanges subsystems `a` and `b` (1-based).
    pub fn swap_subsystems(&self, a: Cut, b: Cut) -> Result<Self> {
        let m = self.arity();
        let (pa, pb) = (a.check(m)?.position(), b.check(m)?.position());
        let mut new_dims = self.dims.clone();
        new_dims.swap(pa, pb);
        let mut amps = vec![Complex64::new(0.0, 0.0); self.amps.len()];
        let mut idx = vec![0usize; m];
        for amp in &self.amps {
            let mut swapped = idx.clone();
            swapped.swap(pa, pb);
            amps[zero_based_linear(&new_dims, &swapped)] = *amp;
            increment(&mut idx, &self.dims);
        }
        PureState::new(new_dims, amps)
    }

    /// Rebuilds a state from a factor on subsystem `cut` and a factor on the
    /// remaining subsystems (ascending order), inverting the one-vs-rest split.
    pub fn from_cut_product(factor: &PureState, rest: &PureState, cut: Cut) -> Result<Self> {
        if factor.arity() != 1 {
            return Err(Error::Arity {
                expected: "1".into(),
                actual: factor.arity(),
            });
        }
        let j = cut.check(rest.arity() + 1)?.position();
        let d = factor.dims[0];
        let mut dims = rest.dims.clone();
        dims.insert(j, d);
        let (outer, inner) = split_sizes(&dims, j);
        let mut amps = vec![Complex64::new(0.0, 0.0); outer * d * inner];
        for o in 0..outer {
            for (a, u) in factor.amps.iter().enumerate() {
                for r in 0..inner {
                    amps[(o * d + a) * inner + r] = u * rest.amps[o * inner + r];
                }
            }
        }
        PureState::new(dims, amps)
    }
}

/// Product of dimensions before and after position `j`.
pub(crate) fn split_sizes(dims: &[usize], j: usize) -> (usize, usize) {
    (dims[..j].iter().product(), dims[j + 1..].iter().product())
}

fn linear_index(dims: &[usize], index: &[usize]) -> Result<usize> {
    if index.len() != dims.len() {
        return Err(Error::Index(format!(
            "multi-index has {} entries, state has {} subsystems",
            index.len(),
            dims.len()
        )));
    }
    let mut pos = 0;
    for (j, (&i, &d)) in index.iter().zip(dims).enumerate() {
        if i == 0 || i > d {
            return Err(Error::Index(format!(
                "i_{} = {i} outside 1..={d}",
                j + 1
            )));
        }
        pos = pos * d + (i - 1);
    }
    Ok(pos)
}

fn zero_based_linear(dims: &[usize], index: &[usize]) -> usize {
    index.iter().zip(dims).fold(0, |pos, (&i, &d)| pos * d + i)
}

/// Row-major odometer step over a 0-based multi-index.
pub(crate) fn increment(index: &mut [usize], dims: &[usize]) {
    for k in (0..index.len()).rev() {
        index[k] += 1;
        if index[k] < dims[k] {
            return;
        }
        index[k] = 0;
    }
}

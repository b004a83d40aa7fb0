//! Concurrence from minor sums, per-cut separability certificates and
//! product factorization.
//!
//! With the default normalization of 4 the squared concurrence of each cut
//! equals `2(1 − Tr ρ_j²)`, so a Bell pair has concurrence exactly one.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::schwarz::{matricize, max_abs_minor, minor_sum_sq};
use crate::state::{Cut, PureState};
use crate::sum::NeumaierSum;

pub const DEFAULT_NORMALIZATION: f64 = 4.0;
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

/// How per-cut minor sums are scheduled. Both produce identical bits: each
/// cut is summed serially and the cuts are combined in ascending order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Evaluation {
    Serial,
    #[default]
    Parallel,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConcurrenceReport {
    pub value: f64,
    /// `Σ|T|²` of the normalized state for each cut entering the sum.
    pub per_cut_sums: Vec<(Cut, f64)>,
    pub normalization: f64,
}

fn check_normalization(normalization: f64) -> Result<()> {
    if normalization > 0.0 && normalization.is_finite() {
        Ok(())
    } else {
        Err(Error::Value(format!(
            "normalization must be positive and finite, got {normalization}"
        )))
    }
}

fn report(
    state: &PureState,
    cuts: Vec<Cut>,
    normalization: f64,
    evaluation: Evaluation,
) -> Result<ConcurrenceReport> {
    check_normalization(normalization)?;
    let state = state.normalize()?;
    let per_cut = |cut: Cut| matricize(&state, cut).map(|m| (cut, minor_sum_sq(&m)));
    let per_cut_sums = match evaluation {
        Evaluation::Serial => cuts.into_iter().map(per_cut).collect::<Result<Vec<_>>>()?,
        Evaluation::Parallel => cuts.into_par_iter().map(per_cut).collect::<Result<Vec<_>>>()?,
    };
    let total: NeumaierSum = per_cut_sums.iter().map(|&(_, s)| s).collect();
    Ok(ConcurrenceReport {
        value: (normalization * total.sum()).sqrt(),
        per_cut_sums,
        normalization,
    })
}

fn expect_arity(state: &PureState, arity: usize) -> Result<()> {
    if state.arity() != arity {
        return Err(Error::Arity {
            expected: arity.to_string(),
            actual: state.arity(),
        });
    }
    Ok(())
}

/// Concurrence of a pure bipartite state: a single sum over the minors of
/// the `N_1 x N_2` coefficient matrix.
pub fn bipartite_concurrence(state: &PureState, normalization: f64) -> Result<ConcurrenceReport> {
    expect_arity(state, 2)?;
    report(state, vec![Cut::new(1)?], normalization, Evaluation::Serial)
}

/// Concurrence of a pure tripartite state, summing the minors of all three
/// one-vs-rest matricizations.
pub fn tripartite_concurrence(
    state: &PureState,
    normalization: f64,
    evaluation: Evaluation,
) -> Result<ConcurrenceReport> {
    expect_arity(state, 3)?;
    report(state, Cut::all(3).collect(), normalization, evaluation)
}

/// Dispatches on arity; only bi- and tripartite states have a concurrence value.
pub fn concurrence(
    state: &PureState,
    normalization: f64,
    evaluation: Evaluation,
) -> Result<ConcurrenceReport> {
    match state.arity() {
        2 => bipartite_concurrence(state, normalization),
        3 => tripartite_concurrence(state, normalization, evaluation),
        n => Err(Error::Arity {
            expected: "2 or 3".into(),
            actual: n,
        }),
    }
}

/// Outcome of the Schwarz-equality test on one cut.
///
/// `separable` holds when every 2x2 minor of the cut's matricization is at
/// most `tolerance · scale` in modulus, with `scale` the squared largest
/// amplitude modulus.
#[derive(Debug, Clone, PartialEq)]
pub struct SeparabilityCertificate {
    pub cut: Cut,
    pub max_abs_minor: f64,
    pub tolerance: f64,
    pub scale: f64,
    pub separable: bool,
    /// Normalized factors (subsystem `cut`, remaining subsystems), present
    /// exactly when `separable`.
    pub factors: Option<(PureState, PureState)>,
}

impl SeparabilityCertificate {
    pub fn threshold(&self) -> f64 {
        self.tolerance * self.scale
    }
}

pub fn is_separable_cut(
    state: &PureState,
    cut: Cut,
    tolerance: f64,
) -> Result<SeparabilityCertificate> {
    if state.arity() < 2 {
        return Err(Error::Arity {
            expected: "at least 2".into(),
            actual: state.arity(),
        });
    }
    if !(tolerance > 0.0 && tolerance.is_finite()) {
        return Err(Error::Value(format!(
            "tolerance must be positive and finite, got {tolerance}"
        )));
    }
    let mat = matricize(state, cut)?;
    let max = max_abs_minor(&mat);
    let scale = state.max_modulus().powi(2);
    let separable = max <= tolerance * scale;
    let factors = if separable {
        Some(split_rank_one(state, cut)?)
    } else {
        None
    };
    Ok(SeparabilityCertificate {
        cut,
        max_abs_minor: max,
        tolerance,
        scale,
        separable,
        factors,
    })
}

/// Splits a state that is a product across `cut`. Fails with
/// [`Error::NotSeparable`] when the certificate does not hold at `tolerance`.
pub fn factorize_cut(
    state: &PureState,
    cut: Cut,
    tolerance: f64,
) -> Result<(PureState, PureState)> {
    let cert = is_separable_cut(state, cut, tolerance)?;
    match cert.factors {
        Some(f) => Ok(f),
        None => Err(Error::NotSeparable {
            cut: cut.subsystem(),
            max_abs_minor: cert.max_abs_minor,
            threshold: cert.threshold(),
        }),
    }
}

// Rows of a rank-one matricization are all multiples of the pivot row, so
// the pivot column gives the subsystem factor and the pivot row (divided by
// the pivot) the remainder. The largest-modulus entry is used as pivot.
fn split_rank_one(state: &PureState, cut: Cut) -> Result<(PureState, PureState)> {
    let mat = matricize(state, cut)?;
    let mut pivot = (0, 0.0);
    for (k, a) in mat.entries().iter().enumerate() {
        let m = a.norm();
        if m > pivot.1 {
            pivot = (k, m);
        }
    }
    let (r, c) = (pivot.0 / mat.cols() + 1, pivot.0 % mat.cols() + 1);
    let p = mat.entry(r, c);
    let factor = PureState::new(vec![mat.rows()], mat.column(c))?.normalize()?;
    let rest = PureState::new(
        mat.col_dims().to_vec(),
        mat.row(r).iter().map(|a| a / p).collect(),
    )?
    .normalize()?;
    Ok((factor, rest))
}

#[derive(Debug, Clone, PartialEq)]
pub struct FullSeparability {
    pub fully_separable: bool,
    /// Extracted single-subsystem factors keyed by 1-based input subsystem,
    /// ascending.
    pub factors: Vec<(usize, PureState)>,
    /// Input subsystems that could not be split off, with their joint state.
    pub remainder: Option<(Vec<usize>, PureState)>,
    /// Failing certificates from the last pass over the remainder, each
    /// paired with the input subsystem its cut isolates.
    pub failed: Vec<(usize, SeparabilityCertificate)>,
}

/// Peels off separable subsystems one at a time, retesting cuts from the
/// first after every extraction.
pub fn full_separability(state: &PureState, tolerance: f64) -> Result<FullSeparability> {
    let mut rest = state.normalize()?;
    let mut labels: Vec<usize> = (1..=state.arity()).collect();
    let mut factors = Vec::new();

    loop {
        if rest.arity() == 1 {
            factors.push((labels[0], rest));
            factors.sort_by_key(|&(j, _)| j);
            return Ok(FullSeparability {
                fully_separable: true,
                factors,
                remainder: None,
                failed: Vec::new(),
            });
        }

        let mut failed = Vec::new();
        let mut split = None;
        for cut in Cut::all(rest.arity()) {
            let cert = is_separable_cut(&rest, cut, tolerance)?;
            if let Some(f) = cert.factors {
                split = Some((cut, f));
                break;
            }
            failed.push((labels[cut.subsystem() - 1], cert));
        }

        match split {
            Some((cut, (factor, remainder))) => {
                factors.push((labels.remove(cut.subsystem() - 1), factor));
                rest = remainder;
            }
            None => {
                factors.sort_by_key(|&(j, _)| j);
                return Ok(FullSeparability {
                    fully_separable: false,
                    factors,
                    remainder: Some((labels, rest)),
                    failed,
                });
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;
    use std::f64::consts::FRAC_1_SQRT_2;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn real(v: &[f64]) -> Vec<Complex64> {
        v.iter().map(|&x| c(x, 0.0)).collect()
    }

    fn cut(j: usize) -> Cut {
        Cut::new(j).unwrap()
    }

    fn bell() -> PureState {
        PureState::new(vec![2, 2], real(&[FRAC_1_SQRT_2, 0.0, 0.0, FRAC_1_SQRT_2])).unwrap()
    }

    fn ket(dims: &[usize], idx: &[usize]) -> PureState {
        PureState::basis(dims.to_vec(), idx).unwrap()
    }

    fn ghz() -> PureState {
        let mut a = real(&[0.0; 8]);
        a[0] = c(FRAC_1_SQRT_2, 0.0);
        a[7] = c(FRAC_1_SQRT_2, 0.0);
        PureState::new(vec![2, 2, 2], a).unwrap()
    }

    fn w() -> PureState {
        let t = 1.0 / 3f64.sqrt();
        let mut a = real(&[0.0; 8]);
        // |2,1,1>, |1,2,1>, |1,1,2>
        a[4] = c(t, 0.0);
        a[2] = c(t, 0.0);
        a[1] = c(t, 0.0);
        PureState::new(vec![2, 2, 2], a).unwrap()
    }

    // Golden values come from 2(1 - Tr ρ²) per cut with the purities worked
    // by hand: Bell 1/2, qutrit pair 1/3, GHZ 1/2 on every cut, W 5/9.
    #[test]
    fn bipartite_examples() {
        let r = bipartite_concurrence(&bell(), DEFAULT_NORMALIZATION).unwrap();
        assert!((r.value - 1.0).abs() < 1e-12);
        assert_eq!(r.per_cut_sums.len(), 1);
        assert_eq!(r.normalization, 4.0);

        let r = bipartite_concurrence(&ket(&[2, 2], &[1, 1]), 4.0).unwrap();
        assert_eq!(r.value, 0.0);

        let t = 1.0 / 3f64.sqrt();
        let mut a = real(&[0.0; 9]);
        a[0] = c(t, 0.0);
        a[4] = c(t, 0.0);
        a[8] = c(t, 0.0);
        let q = PureState::new(vec![3, 3], a).unwrap();
        let r = bipartite_concurrence(&q, 4.0).unwrap();
        assert!((r.value - (4.0f64 / 3.0).sqrt()).abs() < 1e-12);

        assert!(matches!(
            bipartite_concurrence(&ghz(), 4.0),
            Err(Error::Arity { actual: 3, .. })
        ));
    }

    #[test]
    fn bipartite_normalizes_internally() {
        let raw = PureState::new(vec![2, 2], real(&[3.0, 0.0, 0.0, 3.0])).unwrap();
        let r = bipartite_concurrence(&raw, 4.0).unwrap();
        assert!((r.value - 1.0).abs() < 1e-12);
    }

    #[test]
    fn tripartite_examples() {
        let r = tripartite_concurrence(&ghz(), 4.0, Evaluation::Serial).unwrap();
        assert!((r.value - 3f64.sqrt()).abs() < 1e-12);
        assert_eq!(r.per_cut_sums.len(), 3);
        for &(_, s) in &r.per_cut_sums {
            assert!((s - 0.25).abs() < 1e-15);
        }

        let r = tripartite_concurrence(&w(), 4.0, Evaluation::Serial).unwrap();
        assert!((r.value - (8.0f64 / 3.0).sqrt()).abs() < 1e-12);

        let r = tripartite_concurrence(&ket(&[2, 2, 2], &[1, 1, 1]), 4.0, Evaluation::Serial)
            .unwrap();
        assert_eq!(r.value, 0.0);

        let one_bell = ket(&[2], &[1]).tensor(&bell());
        let r = tripartite_concurrence(&one_bell, 4.0, Evaluation::Serial).unwrap();
        assert!((r.value - 2f64.sqrt()).abs() < 1e-12);
        assert_eq!(r.per_cut_sums[0].1, 0.0);

        assert!(tripartite_concurrence(&bell(), 4.0, Evaluation::Serial).is_err());
    }

    #[test]
    fn parallel_matches_serial_bits() {
        let r1 = tripartite_concurrence(&w(), 4.0, Evaluation::Serial).unwrap();
        let r2 = tripartite_concurrence(&w(), 4.0, Evaluation::Parallel).unwrap();
        assert_eq!(r1.value.to_bits(), r2.value.to_bits());
    }

    #[test]
    fn normalization_is_configurable() {
        let r = bipartite_concurrence(&bell(), 2.0).unwrap();
        assert!((r.value - FRAC_1_SQRT_2).abs() < 1e-12);
        assert!(bipartite_concurrence(&bell(), 0.0).is_err());
        assert!(bipartite_concurrence(&bell(), f64::NAN).is_err());
    }

    #[test]
    fn concurrence_dispatch_rejects_other_arities() {
        let s = ket(&[2, 2, 2, 2], &[1, 1, 1, 1]);
        assert!(matches!(
            concurrence(&s, 4.0, Evaluation::Serial),
            Err(Error::Arity { actual: 4, .. })
        ));
        assert!(concurrence(&ket(&[3], &[2]), 4.0, Evaluation::Serial).is_err());
    }

    #[test]
    fn separability_examples() {
        let cert = is_separable_cut(&bell(), cut(1), DEFAULT_TOLERANCE).unwrap();
        assert!(!cert.separable);
        assert!(cert.factors.is_none());
        assert!((cert.max_abs_minor - 0.5).abs() < 1e-15);

        let one_bell = ket(&[2], &[1]).tensor(&bell());
        let cert = is_separable_cut(&one_bell, cut(1), DEFAULT_TOLERANCE).unwrap();
        assert!(cert.separable);
        let (u, v) = cert.factors.unwrap();
        assert!((u.fidelity(&ket(&[2], &[1])).unwrap() - 1.0).abs() < 1e-12);
        assert!((v.fidelity(&bell()).unwrap() - 1.0).abs() < 1e-12);

        let plus = PureState::new(vec![2], real(&[FRAC_1_SQRT_2, FRAC_1_SQRT_2])).unwrap();
        let s = plus.tensor(&ket(&[2], &[1]));
        assert!(is_separable_cut(&s, cut(1), DEFAULT_TOLERANCE).unwrap().separable);

        assert!(is_separable_cut(&ket(&[2], &[1]), cut(1), 1e-9).is_err());
        assert!(is_separable_cut(&bell(), cut(3), 1e-9).is_err());
        assert!(is_separable_cut(&bell(), cut(1), -1.0).is_err());
    }

    #[test]
    fn tolerance_is_relative_to_amplitude_scale() {
        let big = bell().scaled(c(1e6, 0.0)).unwrap();
        let cert = is_separable_cut(&big, cut(1), DEFAULT_TOLERANCE).unwrap();
        assert!(!cert.separable);
        let tiny = PureState::new(vec![2, 2], real(&[1e-8, 1e-8, 1e-8, 1e-8])).unwrap();
        assert!(is_separable_cut(&tiny, cut(2), DEFAULT_TOLERANCE).unwrap().separable);
    }

    #[test]
    fn factorize_examples() {
        let plus = PureState::new(vec![2], real(&[FRAC_1_SQRT_2, FRAC_1_SQRT_2])).unwrap();
        let s = plus.tensor(&ket(&[2], &[1]));
        let (u, v) = factorize_cut(&s, cut(1), DEFAULT_TOLERANCE).unwrap();
        assert!((u.fidelity(&plus).unwrap() - 1.0).abs() < 1e-12);
        assert!((v.fidelity(&ket(&[2], &[1])).unwrap() - 1.0).abs() < 1e-12);
        assert!((u.norm_sqr() - 1.0).abs() < 1e-12);

        let err = factorize_cut(&bell(), cut(1), DEFAULT_TOLERANCE).unwrap_err();
        assert!(matches!(err, Error::NotSeparable { cut: 1, .. }));
    }

    #[test]
    fn factorize_middle_cut_reconstructs() {
        let u = PureState::new(vec![3], vec![c(0.0, 1.0), c(0.5, 0.0), c(-0.2, 0.3)]).unwrap();
        let s = PureState::from_cut_product(&u, &bell(), cut(2)).unwrap();
        let (f, rest) = factorize_cut(&s, cut(2), DEFAULT_TOLERANCE).unwrap();
        assert_eq!(f.dims(), &[3]);
        assert_eq!(rest.dims(), &[2, 2]);
        let back = PureState::from_cut_product(&f, &rest, cut(2)).unwrap();
        assert!(back.fidelity(&s).unwrap() >= 1.0 - 1e-10);
    }

    // Pivot at the largest entry handles a zero α_{1,1}.
    #[test]
    fn factorize_with_zero_leading_amplitude() {
        let s = ket(&[2], &[2]).tensor(&ket(&[3], &[3]));
        let (u, v) = factorize_cut(&s, cut(1), DEFAULT_TOLERANCE).unwrap();
        assert!((u.fidelity(&ket(&[2], &[2])).unwrap() - 1.0).abs() < 1e-15);
        assert!((v.fidelity(&ket(&[3], &[3])).unwrap() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn unit_dimension_cut_is_trivially_separable() {
        let s = ket(&[1], &[1]).tensor(&bell());
        let cert = is_separable_cut(&s, cut(1), DEFAULT_TOLERANCE).unwrap();
        assert!(cert.separable);
        assert_eq!(cert.max_abs_minor, 0.0);
        let (u, v) = cert.factors.unwrap();
        assert_eq!(u.dims(), &[1]);
        assert!((v.fidelity(&bell()).unwrap() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn full_separability_examples() {
        let s = ket(&[2, 2, 2], &[1, 2, 1]);
        let res = full_separability(&s, DEFAULT_TOLERANCE).unwrap();
        assert!(res.fully_separable);
        assert_eq!(res.factors.len(), 3);
        assert_eq!(
            res.factors.iter().map(|(j, _)| *j).collect::<Vec<_>>(),
            [1, 2, 3]
        );
        assert!((res.factors[1].1.fidelity(&ket(&[2], &[2])).unwrap() - 1.0).abs() < 1e-15);

        let res = full_separability(&ghz(), DEFAULT_TOLERANCE).unwrap();
        assert!(!res.fully_separable);
        assert!(res.factors.is_empty());
        assert_eq!(res.failed.len(), 3);
        for (_, cert) in &res.failed {
            assert!((cert.max_abs_minor - 0.5).abs() < 1e-15);
        }

        let s = bell().tensor(&ket(&[2], &[1]));
        let res = full_separability(&s, DEFAULT_TOLERANCE).unwrap();
        assert!(!res.fully_separable);
        assert_eq!(res.factors.len(), 1);
        assert_eq!(res.factors[0].0, 3);
        let (labels, rest) = res.remainder.unwrap();
        assert_eq!(labels, [1, 2]);
        assert!((rest.fidelity(&bell()).unwrap() - 1.0).abs() < 1e-15);
        assert_eq!(res.failed.len(), 2);
    }

    #[test]
    fn full_separability_single_subsystem() {
        let res = full_separability(&ket(&[4], &[3]), DEFAULT_TOLERANCE).unwrap();
        assert!(res.fully_separable);
        assert_eq!(res.factors.len(), 1);
    }
}

//! q-number and Q-number arithmetic.
//!
//! The symmetric bracket is
//!
//! ```text
//! [x]_q = (q^x - q^{-x}) / (q - q^{-1}) = sinh(x ln q) / sinh(ln q)
//! ```
//!
//! and the one-sided (Arik–Coon) bracket is
//!
//! ```text
//! [x]_Q = (Q^x - 1) / (Q - 1)
//! ```
//!
//! Both reduce to `x` as the deformation parameter goes to 1. The naive
//! difference quotients lose every significant digit there, so `[x]_q` is
//! evaluated through `sinh` with a series branch for `|ln q| < 1e-6`, and
//! `[x]_Q` through `expm1`. Exponents are guarded at `|x ln q| <= 700` so the
//! failure mode is a deterministic error instead of an infinity.

use crate::{Error, Result};

/// Largest exponent magnitude accepted before reporting overflow.
pub const EXP_GUARD: f64 = 700.0;

/// Below this value of `|ln q|` the bracket switches to its series branch.
const SERIES_THRESHOLD: f64 = 1e-6;

/// A validated deformation parameter: a positive, finite real.
///
/// `q = 1` is allowed; every evaluation path is continuous through it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QParam {
    q: f64,
    ln_q: f64,
}

impl QParam {
    pub fn new(q: f64) -> Result<Self> {
        if !q.is_finite() || q <= 0.0 {
            return Err(Error::Domain(format!(
                "deformation parameter must be a positive finite real, got {q}"
            )));
        }
        Ok(Self { q, ln_q: q.ln() })
    }

    pub fn value(&self) -> f64 {
        self.q
    }

    pub fn ln(&self) -> f64 {
        self.ln_q
    }

    /// `q^x`, guarded against exponent overflow.
    pub fn pow(&self, x: f64) -> Result<f64> {
        let t = x * self.ln_q;
        if !t.is_finite() || t.abs() > EXP_GUARD {
            return Err(Error::Overflow(format!(
                "exponent |x ln q| = {} exceeds the guard {EXP_GUARD}",
                t.abs()
            )));
        }
        Ok(t.exp())
    }
}

impl std::fmt::Display for QParam {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.q)
    }
}

/// Symmetric q-bracket `[x]_q = (q^x - q^{-x}) / (q - q^{-1})`.
///
/// Odd in `x` and invariant under `q -> 1/q`. Near `q = 1` the series branch
/// `x (1 + (x^2 - 1) (ln q)^2 / 6)` takes over.
pub fn q_bracket(x: f64, q: QParam) -> Result<f64> {
    if !x.is_finite() {
        return Err(Error::Domain(format!(
            "bracket argument must be finite, got {x}"
        )));
    }
    let u = q.ln();
    let t = x * u;
    if t.abs() > EXP_GUARD {
        return Err(Error::Overflow(format!(
            "exponent |x ln q| = {} exceeds the guard {EXP_GUARD}",
            t.abs()
        )));
    }
    if u.abs() < SERIES_THRESHOLD {
        Ok(x * (1.0 + (x * x - 1.0) * u * u / 6.0))
    } else {
        Ok(t.sinh() / u.sinh())
    }
}

/// One-sided bracket `[x]_Q = (Q^x - 1) / (Q - 1)`, with `[x]_1 = x`.
pub fn big_q_bracket(x: f64, big_q: f64) -> Result<f64> {
    if !big_q.is_finite() || big_q <= 0.0 {
        return Err(Error::Domain(format!(
            "Q must be a positive finite real, got {big_q}"
        )));
    }
    if !x.is_finite() {
        return Err(Error::Domain(format!(
            "bracket argument must be finite, got {x}"
        )));
    }
    let v = big_q.ln();
    if (x * v).abs() > EXP_GUARD {
        return Err(Error::Overflow(format!(
            "exponent |x ln Q| = {} exceeds the guard {EXP_GUARD}",
            (x * v).abs()
        )));
    }
    if v == 0.0 {
        return Ok(x);
    }
    // expm1 keeps full precision down to the limit branch.
    Ok(f64::exp_m1(x * v) / f64::exp_m1(v))
}

/// The bridge combination `q^x [x]_q / q`, equal to `[x]_{q^2}` in Q-form.
///
/// Evaluated as a separate floating-point path from [`big_q_bracket`] so the
/// two can cross-check each other.
pub fn bracket_bridge(x: f64, q: QParam) -> Result<f64> {
    let u = q.ln();
    // The combined magnitude is ~ q^{2x}; guard before either factor blows up.
    if ((2.0 * x.abs() + 1.0) * u.abs()) > EXP_GUARD {
        return Err(Error::Overflow(format!(
            "bridge exponent 2|x ln q| = {} exceeds the guard {EXP_GUARD}",
            2.0 * (x * u).abs()
        )));
    }
    let b = q_bracket(x, q)?;
    Ok(((x - 1.0) * u).exp() * b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn qp(q: f64) -> QParam {
        QParam::new(q).unwrap()
    }

    #[test]
    fn bracket_of_one_is_exactly_one() {
        // numerator equals denominator
        assert_eq!(q_bracket(1.0, qp(0.7)).unwrap(), 1.0);
        assert_eq!(q_bracket(1.0, qp(3.4)).unwrap(), 1.0);
    }

    #[test]
    fn bracket_direct_evaluation() {
        // (4 - 1/4) / (2 - 1/2)
        assert_relative_eq!(q_bracket(2.0, qp(2.0)).unwrap(), 2.5, epsilon = 1e-14);
        // [2]_q = q + 1/q
        assert_relative_eq!(
            q_bracket(2.0, qp(1.2)).unwrap(),
            1.2 + 1.0 / 1.2,
            epsilon = 1e-14
        );
    }

    #[test]
    fn bracket_series_branch_near_one() {
        let v = q_bracket(3.7, qp(1.0 + 1e-12)).unwrap();
        assert!((v - 3.7).abs() < 1e-9);
        // exactly at q = 1 the bracket is the identity
        assert_eq!(q_bracket(5.25, qp(1.0)).unwrap(), 5.25);
    }

    #[test]
    fn bracket_rejects_bad_inputs() {
        assert!(QParam::new(0.0).is_err());
        assert!(QParam::new(-2.0).is_err());
        assert!(QParam::new(f64::NAN).is_err());
        assert!(q_bracket(f64::INFINITY, qp(1.1)).is_err());
        // |x ln q| = 1e4 * ln 2 > 700
        assert!(matches!(q_bracket(1e4, qp(2.0)), Err(Error::Overflow(_))));
    }

    #[test]
    fn big_q_examples() {
        assert_eq!(big_q_bracket(0.0, 5.0).unwrap(), 0.0);
        assert_relative_eq!(big_q_bracket(3.0, 2.0).unwrap(), 7.0, epsilon = 1e-14);
        assert_eq!(big_q_bracket(2.0, 1.0).unwrap(), 2.0);
        assert!(big_q_bracket(1.0, -1.0).is_err());
    }

    #[test]
    fn bridge_examples() {
        assert_relative_eq!(bracket_bridge(1.0, qp(1.3)).unwrap(), 1.0, epsilon = 1e-14);
        // Q_bracket(2, 1.44) = (1.44^2 - 1) / 0.44
        assert_relative_eq!(bracket_bridge(2.0, qp(1.2)).unwrap(), 2.44, epsilon = 1e-12);
        assert_eq!(bracket_bridge(0.0, qp(2.0)).unwrap(), 0.0);
    }

    #[test]
    fn bridge_matches_big_q_form() {
        for &q in &[0.3, 0.8, 1.0, 1.0 + 1e-9, 1.2, 4.7] {
            for &x in &[-7.5, -1.0, 0.0, 0.3, 2.0, 11.0] {
                let lhs = bracket_bridge(x, qp(q)).unwrap();
                let rhs = big_q_bracket(x, q * q).unwrap();
                assert_relative_eq!(lhs, rhs, epsilon = 1e-12, max_relative = 1e-12);
            }
        }
    }

    proptest::proptest! {
        #[test]
        fn oddness(x in -20.0..20.0f64, q in 0.2..5.0f64) {
            let p = qp(q);
            let plus = q_bracket(x, p).unwrap();
            let minus = q_bracket(-x, p).unwrap();
            proptest::prop_assert!((plus + minus).abs() <= 1e-13 * (1.0 + plus.abs()));
        }

        #[test]
        fn inversion_symmetry(x in -20.0..20.0f64, q in 0.2..5.0f64) {
            let a = q_bracket(x, qp(q)).unwrap();
            let b = q_bracket(x, qp(1.0 / q)).unwrap();
            proptest::prop_assert!((a - b).abs() <= 1e-12 * (1.0 + a.abs().max(b.abs())));
        }

        // The identities mix terms of very different magnitude, so the error
        // is relative to the largest intermediate, not to the (possibly
        // cancelled) result.
        #[test]
        fn addition_identity(x in -10.0..10.0f64, y in -10.0..10.0f64, q in 0.2..5.0f64) {
            let p = qp(q);
            let lhs = q_bracket(x + y, p).unwrap();
            let t1 = p.pow(y).unwrap() * q_bracket(x, p).unwrap();
            let t2 = p.pow(-x).unwrap() * q_bracket(y, p).unwrap();
            let scale = 1.0 + lhs.abs().max(t1.abs()).max(t2.abs());
            proptest::prop_assert!((lhs - (t1 + t2)).abs() <= 1e-11 * scale);
        }

        #[test]
        fn q_telescope(x in -10.0..10.0f64, y in -10.0..10.0f64, big_q in 0.04..25.0f64) {
            let t0 = big_q_bracket(x + y, big_q).unwrap();
            let t1 = big_q.powf(y) * big_q_bracket(x, big_q).unwrap();
            let rhs = big_q_bracket(y, big_q).unwrap();
            let scale = 1.0 + t0.abs().max(t1.abs()).max(rhs.abs());
            proptest::prop_assert!((t0 - t1 - rhs).abs() <= 1e-11 * scale);
        }

        // |[x]_q - x| <= 10 |x^3| (q-1)^2 + 1e-12. The leading deviation is
        // x (x^2 - 1) (ln q)^2 / 6, so the cubic bound only dominates for
        // |x| >= 1/sqrt(61) ~ 0.128; below that the bound itself is smaller
        // than the true deviation and the inequality is unsatisfiable.
        #[test]
        fn classical_limit(mag in 0.13..20.0f64, neg in proptest::bool::ANY, dq in -1e-3..1e-3f64) {
            let x = if neg { -mag } else { mag };
            let q = 1.0 + dq;
            let v = q_bracket(x, qp(q)).unwrap();
            let bound = 10.0 * (x * x * x).abs() * dq * dq + 1e-12;
            proptest::prop_assert!((v - x).abs() <= bound);
        }
    }
}

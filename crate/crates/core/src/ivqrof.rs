//! Interval-valued q-rung orthopair fuzzy numbers.
//!
//! An [`IvqRofn`] carries a membership interval `t = [t⁻, t⁺]` and a
//! non-membership interval `f = [f⁻, f⁺]`, both inside `[0, 1]`. Whether a
//! value is admissible depends on the rung: it is valid at `q` when
//! `(t⁺)^q + (f⁺)^q ≤ 1`. The rung is passed to every operation instead of
//! being stored, so the same values can be evaluated at several rungs.
//!
//! The algebra (`oplus`, `otimes`, `scalar_mul`, `power`) uses exponent `q`
//! uniformly, which makes `otimes` the complement-dual of `oplus`.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numeric::clamp_unit;

/// Largest rounding excess over `t+^q + f+^q = 1` that computed results
/// are settled back from.
pub const SETTLE_TOLERANCE: f64 = 1e-12;

/// The rung parameter `q ≥ 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "u32", into = "u32")]
pub struct Rung(u32);

impl Rung {
    pub const ONE: Rung = Rung(1);

    pub fn new(q: u32) -> Result<Self> {
        if q == 0 {
            Err(Error::InvalidRung(q))
        } else {
            Ok(Rung(q))
        }
    }

    pub fn get(self) -> u32 {
        self.0
    }

    pub(crate) fn pow(self, x: f64) -> f64 {
        x.powi(self.0 as i32)
    }

    pub(crate) fn root(self, x: f64) -> f64 {
        match self.0 {
            1 => x,
            2 => x.sqrt(),
            3 => x.cbrt(),
            q => x.powf(1.0 / q as f64),
        }
    }
}

impl TryFrom<u32> for Rung {
    type Error = Error;

    fn try_from(q: u32) -> Result<Self> {
        Rung::new(q)
    }
}

impl From<Rung> for u32 {
    fn from(q: Rung) -> u32 {
        q.0
    }
}

impl fmt::Display for Rung {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

fn check_grade(value: f64) -> Result<f64> {
    if !value.is_finite() {
        return Err(Error::NonFinite { value });
    }
    if !(0.0..=1.0).contains(&value) {
        return Err(Error::OutOfRange { value });
    }
    Ok(value)
}

/// A closed subinterval `[lo, hi]` of `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UnitInterval {
    lo: f64,
    hi: f64,
}

impl UnitInterval {
    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        let lo = check_grade(lo)?;
        let hi = check_grade(hi)?;
        if lo > hi {
            return Err(Error::InvertedInterval { lo, hi });
        }
        Ok(UnitInterval { lo, hi })
    }

    pub fn point(x: f64) -> Result<Self> {
        Self::new(x, x)
    }

    /// Builds an interval from computed bounds that are mathematically
    /// ordered and inside `[0, 1]`, absorbing rounding noise.
    pub(crate) fn from_computed(lo: f64, hi: f64) -> Self {
        let lo = clamp_unit(lo);
        let hi = clamp_unit(hi);
        UnitInterval { lo: lo.min(hi), hi }
    }

    pub fn lo(&self) -> f64 {
        self.lo
    }

    pub fn hi(&self) -> f64 {
        self.hi
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }

    fn map(self, g: impl Fn(f64) -> f64) -> Self {
        Self::from_computed(g(self.lo), g(self.hi))
    }
}

impl fmt::Display for UnitInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = f.precision().unwrap_or(4);
        write!(f, "[{:.*},{:.*}]", p, self.lo, p, self.hi)
    }
}

/// An interval-valued q-rung orthopair fuzzy number `⟨t, f⟩`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IvqRofn {
    t: UnitInterval,
    f: UnitInterval,
}

impl IvqRofn {
    /// `⟨[t_lo, t_hi], [f_lo, f_hi]⟩`; rejects grades outside `[0, 1]`,
    /// non-finite values and inverted intervals.
    pub fn new(t_lo: f64, t_hi: f64, f_lo: f64, f_hi: f64) -> Result<Self> {
        Ok(IvqRofn {
            t: UnitInterval::new(t_lo, t_hi)?,
            f: UnitInterval::new(f_lo, f_hi)?,
        })
    }

    pub fn from_intervals(t: UnitInterval, f: UnitInterval) -> Self {
        IvqRofn { t, f }
    }

    pub(crate) fn from_computed(t_lo: f64, t_hi: f64, f_lo: f64, f_hi: f64) -> Self {
        IvqRofn {
            t: UnitInterval::from_computed(t_lo, t_hi),
            f: UnitInterval::from_computed(f_lo, f_hi),
        }
    }

    /// `⟨[1,1],[0,0]⟩`, the identity of `otimes`.
    pub fn top() -> Self {
        Self::from_computed(1.0, 1.0, 0.0, 0.0)
    }

    /// `⟨[0,0],[1,1]⟩`, the identity of `oplus`.
    pub fn bottom() -> Self {
        Self::from_computed(0.0, 0.0, 1.0, 1.0)
    }

    pub fn t(&self) -> UnitInterval {
        self.t
    }

    pub fn f(&self) -> UnitInterval {
        self.f
    }

    /// `[t_lo, t_hi, f_lo, f_hi]`.
    pub fn to_array(&self) -> [f64; 4] {
        [self.t.lo, self.t.hi, self.f.lo, self.f.hi]
    }

    pub fn from_array(v: [f64; 4]) -> Result<Self> {
        Self::new(v[0], v[1], v[2], v[3])
    }

    /// `(t⁺)^q + (f⁺)^q ≤ 1`, compared exactly.
    pub fn is_valid(&self, q: Rung) -> bool {
        q.pow(self.t.hi) + q.pow(self.f.hi) <= 1.0
    }

    /// Rounding can leave a computed result a few ulps past the boundary
    /// `t+^q + f+^q = 1`. Within [`SETTLE_TOLERANCE`] the upper `f` end is
    /// pulled back onto it; larger excesses are left for validation to report.
    pub(crate) fn settle(mut self, q: Rung) -> Self {
        let excess = q.pow(self.t.hi) + q.pow(self.f.hi) - 1.0;
        if excess <= 0.0 || excess > SETTLE_TOLERANCE {
            return self;
        }
        let mut f = self.f.hi.min(q.root((1.0 - q.pow(self.t.hi)).max(0.0)));
        while f > 0.0 && q.pow(self.t.hi) + q.pow(f) > 1.0 {
            f = f.next_down();
        }
        self.f.hi = f.max(0.0);
        self.f.lo = self.f.lo.min(self.f.hi);
        self
    }

    pub(crate) fn ensure_valid(&self, q: Rung) -> Result<()> {
        if self.is_valid(q) {
            Ok(())
        } else {
            Err(Error::InvalidAtQ {
                value: self.to_string(),
                q: q.get(),
            })
        }
    }

    /// Swaps membership and non-membership.
    pub fn complement(&self) -> Self {
        IvqRofn {
            t: self.f,
            f: self.t,
        }
    }

    pub fn oplus(&self, other: &Self, q: Rung) -> Result<Self> {
        self.ensure_valid(q)?;
        other.ensure_valid(q)?;
        Ok(self.oplus_unchecked(other, q))
    }

    pub(crate) fn oplus_unchecked(&self, other: &Self, q: Rung) -> Self {
        let s = |a: f64, b: f64| {
            let (a, b) = (q.pow(a), q.pow(b));
            q.root(a + b - a * b)
        };
        Self::from_computed(
            s(self.t.lo, other.t.lo),
            s(self.t.hi, other.t.hi),
            self.f.lo * other.f.lo,
            self.f.hi * other.f.hi,
        )
        .settle(q)
    }

    pub fn otimes(&self, other: &Self, q: Rung) -> Result<Self> {
        self.ensure_valid(q)?;
        other.ensure_valid(q)?;
        Ok(self.otimes_unchecked(other, q))
    }

    pub(crate) fn otimes_unchecked(&self, other: &Self, q: Rung) -> Self {
        let s = |a: f64, b: f64| {
            let (a, b) = (q.pow(a), q.pow(b));
            q.root(a + b - a * b)
        };
        Self::from_computed(
            self.t.lo * other.t.lo,
            self.t.hi * other.t.hi,
            s(self.f.lo, other.f.lo),
            s(self.f.hi, other.f.hi),
        )
        .settle(q)
    }

    /// `λ·a`.
    pub fn scalar_mul(&self, lambda: f64, q: Rung) -> Result<Self> {
        self.ensure_valid(q)?;
        check_scalar(lambda)?;
        Ok(self.scalar_mul_unchecked(lambda, q))
    }

    pub(crate) fn scalar_mul_unchecked(&self, lambda: f64, q: Rung) -> Self {
        if lambda == 0.0 {
            return Self::bottom();
        }
        let grow = |x: f64| q.root(scaled_probabilistic(q.pow(x), lambda));
        let shrink = |x: f64| x.powf(lambda);
        IvqRofn {
            t: self.t.map(grow),
            f: self.f.map(shrink),
        }
        .settle(q)
    }

    /// `a^λ`.
    pub fn power(&self, lambda: f64, q: Rung) -> Result<Self> {
        self.ensure_valid(q)?;
        check_scalar(lambda)?;
        Ok(self.power_unchecked(lambda, q))
    }

    pub(crate) fn power_unchecked(&self, lambda: f64, q: Rung) -> Self {
        self.complement()
            .scalar_mul_unchecked(lambda, q)
            .complement()
            .settle(q)
    }

    /// `½[(t⁻)^q + (t⁺)^q − (f⁻)^q − (f⁺)^q]`.
    pub fn score(&self, q: Rung) -> f64 {
        0.5 * (q.pow(self.t.lo) + q.pow(self.t.hi) - q.pow(self.f.lo) - q.pow(self.f.hi))
    }

    /// `½[(t⁻)^q + (t⁺)^q + (f⁻)^q + (f⁺)^q]`.
    pub fn accuracy(&self, q: Rung) -> f64 {
        0.5 * (q.pow(self.t.lo) + q.pow(self.t.hi) + q.pow(self.f.lo) + q.pow(self.f.hi))
    }

    /// Score first, accuracy on a score tie. Both compared exactly.
    pub fn compare(&self, other: &Self, q: Rung) -> Ordering {
        let cmp = |x: f64, y: f64| x.partial_cmp(&y).unwrap_or(Ordering::Equal);
        cmp(self.score(q), other.score(q)).then_with(|| cmp(self.accuracy(q), other.accuracy(q)))
    }

    /// Hesitancy interval `[(1 − (t⁺)^q − (f⁺)^q)^{1/q}, (1 − (t⁻)^q − (f⁻)^q)^{1/q}]`.
    pub fn hesitancy(&self, q: Rung) -> Result<UnitInterval> {
        self.ensure_valid(q)?;
        let lo = 1.0 - (q.pow(self.t.hi) + q.pow(self.f.hi));
        let hi = 1.0 - (q.pow(self.t.lo) + q.pow(self.f.lo));
        Ok(UnitInterval::from_computed(q.root(lo), q.root(hi)))
    }
}

fn check_scalar(lambda: f64) -> Result<()> {
    if !lambda.is_finite() {
        return Err(Error::NonFinite { value: lambda });
    }
    if lambda < 0.0 {
        return Err(Error::NegativeScalar(lambda));
    }
    Ok(())
}

/// `1 − (1 − x)^λ`.
fn scaled_probabilistic(x: f64, lambda: f64) -> f64 {
    if x >= 1.0 {
        return 1.0;
    }
    -(lambda * (-x).ln_1p()).exp_m1()
}

impl fmt::Display for IvqRofn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = f.precision().unwrap_or(4);
        write!(f, "<{:.*},{:.*}>", p, self.t, p, self.f)
    }
}

/// Smallest `q` in `1..=q_max` at which every item is valid.
pub fn min_valid_q(items: &[IvqRofn], q_max: u32) -> Result<Rung> {
    if items.is_empty() {
        return Err(Error::EmptyInput);
    }
    (1..=q_max)
        .map(Rung)
        .find(|&q| items.iter().all(|a| a.is_valid(q)))
        .ok_or(Error::NoValidQ { q_max })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: u32) -> Rung {
        Rung::new(n).unwrap()
    }

    fn v(t_lo: f64, t_hi: f64, f_lo: f64, f_hi: f64) -> IvqRofn {
        IvqRofn::new(t_lo, t_hi, f_lo, f_hi).unwrap()
    }

    fn assert_close(a: &IvqRofn, expected: [f64; 4], tol: f64) {
        for (got, want) in a.to_array().iter().zip(expected) {
            assert!((got - want).abs() <= tol, "{a:.10} vs {expected:?}");
        }
    }

    #[test]
    fn construction() {
        let a = v(0.7, 0.9, 0.3, 0.5);
        assert_eq!(a.to_array(), [0.7, 0.9, 0.3, 0.5]);
        assert_eq!(v(0.0, 0.0, 1.0, 1.0), IvqRofn::bottom());
        assert!(matches!(
            IvqRofn::new(0.5, 0.4, 0.0, 0.0),
            Err(Error::InvertedInterval { .. })
        ));
        assert!(matches!(
            IvqRofn::new(0.5, 1.2, 0.0, 0.0),
            Err(Error::OutOfRange { .. })
        ));
        assert!(matches!(
            IvqRofn::new(f64::NAN, 0.5, 0.0, 0.0),
            Err(Error::NonFinite { .. })
        ));
        assert!(Rung::new(0).is_err());
    }

    #[test]
    fn validity_depends_on_rung() {
        let a = v(0.7, 0.9, 0.3, 0.5);
        assert!(!a.is_valid(q(2)));
        assert!(a.is_valid(q(3)));
        for n in 1..8 {
            assert!(IvqRofn::bottom().is_valid(q(n)));
        }
    }

    #[test]
    fn min_valid_q_scan() {
        let a = v(0.0, 0.9, 0.0, 0.9);
        assert_eq!(min_valid_q(&[a], 10).unwrap().get(), 7);
        assert_eq!(min_valid_q(&[v(0.2, 0.4, 0.1, 0.6)], 10).unwrap().get(), 1);
        assert_eq!(min_valid_q(&[a], 6), Err(Error::NoValidQ { q_max: 6 }));
        assert_eq!(min_valid_q(&[], 6), Err(Error::EmptyInput));
        assert_eq!(
            min_valid_q(&[v(1.0, 1.0, 1.0, 1.0)], 50),
            Err(Error::NoValidQ { q_max: 50 })
        );
    }

    #[test]
    fn oplus_values() {
        let a = v(0.6, 0.8, 0.4, 0.5);
        let b = v(0.3, 0.5, 0.5, 0.7);
        // mpmath, 30 digits
        let sum = a.oplus(&b, q(3)).unwrap();
        assert_close(&sum, [0.618992467, 0.8305865115, 0.2, 0.35], 1e-9);
        assert_eq!(a.oplus(&IvqRofn::bottom(), q(3)).unwrap(), a);
        assert_eq!(sum, b.oplus(&a, q(3)).unwrap());
    }

    #[test]
    fn otimes_values() {
        let a = v(0.6, 0.8, 0.4, 0.5);
        let b = v(0.3, 0.5, 0.5, 0.7);
        let prod = a.otimes(&b, q(3)).unwrap();
        assert_close(&prod, [0.18, 0.4, 0.5656652826, 0.7519210014], 1e-9);
        assert_close(
            &a.otimes(&IvqRofn::top(), q(3)).unwrap(),
            a.to_array(),
            1e-15,
        );
    }

    #[test]
    fn invalid_operands_are_rejected() {
        let a = v(0.7, 0.9, 0.3, 0.5);
        assert!(matches!(
            a.oplus(&a, q(2)),
            Err(Error::InvalidAtQ { q: 2, .. })
        ));
        assert!(a.otimes(&a, q(2)).is_err());
        assert!(a.scalar_mul(0.5, q(2)).is_err());
        assert!(a.hesitancy(q(2)).is_err());
    }

    #[test]
    fn scalar_mul_values() {
        let a = v(0.8, 0.9, 0.1, 0.2);
        assert_close(&a.scalar_mul(1.0, q(3)).unwrap(), a.to_array(), 1e-15);
        assert_eq!(a.scalar_mul(0.0, q(3)).unwrap(), IvqRofn::bottom());
        assert_close(
            &a.scalar_mul(0.5, q(3)).unwrap(),
            [0.6704949429, 0.7826598851, 0.316227766, 0.4472135955],
            1e-9,
        );
        assert_eq!(a.scalar_mul(-1.0, q(3)), Err(Error::NegativeScalar(-1.0)));
    }

    #[test]
    fn settle_pulls_rounding_excess_onto_boundary() {
        let f = 0.7f64.next_up().next_up();
        let a = IvqRofn::from_computed(0.0, 0.3, 0.0, f);
        assert!(!a.is_valid(Rung::ONE));
        let s = a.settle(Rung::ONE);
        assert!(s.is_valid(Rung::ONE));
        assert!((s.f().hi() - 0.7).abs() < 1e-15);
        // a real violation is left alone
        let b = IvqRofn::from_computed(0.0, 0.7, 0.0, 0.7);
        assert_eq!(b.settle(Rung::ONE), b);
    }

    #[test]
    fn power_values() {
        let a = v(0.8, 0.9, 0.1, 0.2);
        assert_close(&a.power(1.0, q(3)).unwrap(), a.to_array(), 1e-15);
        assert_eq!(a.power(0.0, q(3)).unwrap(), IvqRofn::top());
        assert_close(
            &a.power(0.5, q(3)).unwrap(),
            [0.894427191, 0.9486832981, 0.07937666953, 0.1588462863],
            1e-9,
        );
    }

    #[test]
    fn boundary_grades_do_not_produce_nan() {
        let a = v(0.0, 1.0, 0.0, 0.0);
        for lambda in [0.0, 0.3, 1.0, 2.5] {
            let m = a.scalar_mul(lambda, q(2)).unwrap();
            let p = a.power(lambda, q(2)).unwrap();
            assert!(m
                .to_array()
                .iter()
                .chain(p.to_array().iter())
                .all(|x| x.is_finite()));
        }
    }

    #[test]
    fn complement_swaps() {
        let a = v(0.3, 0.4, 0.3, 0.5);
        assert_eq!(a.complement().to_array(), [0.3, 0.5, 0.3, 0.4]);
        assert_eq!(a.complement().complement(), a);
        assert_eq!(IvqRofn::bottom().complement(), IvqRofn::top());
    }

    #[test]
    fn score_and_accuracy() {
        assert_eq!(IvqRofn::top().score(q(3)), 1.0);
        assert_eq!(IvqRofn::top().accuracy(q(3)), 1.0);
        assert_eq!(v(0.0, 0.0, 0.0, 0.0).accuracy(q(2)), 0.0);
        assert!((v(0.5, 0.5, 0.5, 0.5).accuracy(q(2)) - 0.5).abs() < 1e-15);
        let r2 = v(0.69, 0.77, 0.29, 0.39);
        assert!((r2.score(q(3)) - 0.350667).abs() < 1e-12);
        assert!((r2.score(q(3)) + r2.complement().score(q(3))).abs() < 1e-15);
    }

    #[test]
    fn comparison_law() {
        let a = v(0.5, 0.5, 0.5, 0.5);
        let b = v(0.6, 0.6, 0.6, 0.6);
        assert_eq!(a.compare(&b, q(2)), Ordering::Less);
        assert_eq!(b.compare(&a, q(2)), Ordering::Greater);
        assert_eq!(a.compare(&a, q(2)), Ordering::Equal);
        assert_eq!(
            IvqRofn::top().compare(&IvqRofn::bottom(), q(1)),
            Ordering::Greater
        );
    }

    #[test]
    fn hesitancy_values() {
        assert_eq!(
            IvqRofn::top().hesitancy(q(3)).unwrap(),
            UnitInterval::point(0.0).unwrap()
        );
        let h = v(0.0, 0.0, 0.0, 0.0).hesitancy(q(3)).unwrap();
        assert_eq!((h.lo(), h.hi()), (1.0, 1.0));
        let h = v(0.7, 0.9, 0.3, 0.5).hesitancy(q(3)).unwrap();
        assert!((h.lo() - 0.5265637428).abs() < 1e-9);
        assert!((h.hi() - 0.8572618882).abs() < 1e-9);
    }

    #[test]
    fn rendering() {
        let a = v(0.7, 0.9, 0.3, 0.5);
        assert_eq!(a.to_string(), "<[0.7000,0.9000],[0.3000,0.5000]>");
        assert_eq!(format!("{a:.2}"), "<[0.70,0.90],[0.30,0.50]>");
    }
}

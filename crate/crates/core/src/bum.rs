//! Basic unit-interval monotonic (BUM) functions and the order weights they
//! induce from cumulative singleton measures.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::measure::{normalized_weights, Permutation};

/// Number of grid intervals used when validating a BUM function.
pub const VALIDATION_GRID: usize = 1000;

/// A function `Q: [0,1] → [0,1]` with `Q(0) = 0`, `Q(1) = 1`, non-decreasing.
#[derive(Debug, Clone, PartialEq, Default)]
pub enum Bum {
    #[default]
    Identity,
    /// `Q(x) = x^r`, `r > 0`.
    Power(f64),
    /// Linear interpolation between `(x, y)` knots. Knots must start at
    /// `(0, 0)`, end at `(1, 1)` and have strictly increasing `x`.
    PiecewiseLinear(Vec<(f64, f64)>),
    /// `Q(x) = 0` below the threshold and `1` from it on.
    Step(f64),
}

impl Bum {
    pub fn eval(&self, x: f64) -> f64 {
        match self {
            Bum::Identity => x,
            Bum::Power(r) => x.powf(*r),
            Bum::PiecewiseLinear(knots) => {
                if x <= knots[0].0 {
                    return knots[0].1;
                }
                for pair in knots.windows(2) {
                    let ((x0, y0), (x1, y1)) = (pair[0], pair[1]);
                    if x == x1 {
                        return y1;
                    }
                    if x < x1 {
                        return y0 + (y1 - y0) * (x - x0) / (x1 - x0);
                    }
                }
                knots[knots.len() - 1].1
            }
            Bum::Step(at) => {
                if x >= *at {
                    1.0
                } else {
                    0.0
                }
            }
        }
    }

    /// Checks the parameters, then samples the function on a uniform grid of
    /// [`VALIDATION_GRID`] intervals for the boundary and monotonicity
    /// conditions.
    pub fn validate(&self) -> Result<()> {
        match self {
            Bum::Identity => {}
            Bum::Power(r) => {
                if !(r.is_finite() && *r > 0.0) {
                    return Err(Error::InvalidBum(format!("exponent {r} must be positive")));
                }
            }
            Bum::PiecewiseLinear(knots) => {
                if knots.len() < 2 {
                    return Err(Error::InvalidBum("need at least two knots".into()));
                }
                if knots.iter().any(|(x, y)| !x.is_finite() || !y.is_finite()) {
                    return Err(Error::InvalidBum("non-finite knot".into()));
                }
                if knots[0].0 != 0.0 || knots[knots.len() - 1].0 != 1.0 {
                    return Err(Error::InvalidBum("knots must span [0, 1]".into()));
                }
                if knots.windows(2).any(|w| w[1].0 <= w[0].0) {
                    return Err(Error::InvalidBum("knot x values must increase".into()));
                }
            }
            Bum::Step(at) => {
                if !(*at > 0.0 && *at <= 1.0) {
                    return Err(Error::InvalidBum(format!(
                        "step position {at} not in (0, 1]"
                    )));
                }
            }
        }
        if self.eval(0.0) != 0.0 {
            return Err(Error::InvalidBum(format!("Q(0) = {}", self.eval(0.0))));
        }
        if self.eval(1.0) != 1.0 {
            return Err(Error::InvalidBum(format!("Q(1) = {}", self.eval(1.0))));
        }
        let mut previous = 0.0;
        for k in 0..=VALIDATION_GRID {
            let x = k as f64 / VALIDATION_GRID as f64;
            let y = self.eval(x);
            if !(0.0..=1.0).contains(&y) {
                return Err(Error::InvalidBum(format!("Q({x}) = {y} outside [0, 1]")));
            }
            if y < previous {
                return Err(Error::InvalidBum(format!("decreasing near x = {x}")));
            }
            previous = y;
        }
        Ok(())
    }
}

impl fmt::Display for Bum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Bum::Identity => write!(f, "identity"),
            Bum::Power(r) => write!(f, "power:{r}"),
            Bum::Step(at) => write!(f, "step:{at}"),
            Bum::PiecewiseLinear(knots) => {
                let parts: Vec<String> = knots.iter().map(|(x, y)| format!("{x}/{y}")).collect();
                write!(f, "piecewise:{}", parts.join(","))
            }
        }
    }
}

/// Parses `identity`, `power:R`, `step:X` or `piecewise:X/Y,X/Y,...`, then
/// validates the result.
impl FromStr for Bum {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidBum(format!("cannot parse `{s}`"));
        let number = |t: &str| t.trim().parse::<f64>().map_err(|_| bad());
        let (kind, arg) = match s.split_once(':') {
            Some((k, a)) => (k.trim(), Some(a)),
            None => (s.trim(), None),
        };
        let bum = match (kind, arg) {
            ("identity", None) => Bum::Identity,
            ("power", Some(a)) => Bum::Power(number(a)?),
            ("step", Some(a)) => Bum::Step(number(a)?),
            ("piecewise", Some(a)) => Bum::PiecewiseLinear(
                a.split(',')
                    .map(|knot| {
                        let (x, y) = knot.split_once('/').ok_or_else(bad)?;
                        Ok((number(x)?, number(y)?))
                    })
                    .collect::<Result<_>>()?,
            ),
            _ => return Err(bad()),
        };
        bum.validate()?;
        Ok(bum)
    }
}

/// `w_k = Q(Σ_{j≤k} μ({σ(j)})) − Q(Σ_{j<k} μ({σ(j)}))`.
///
/// The final cumulative sum is pinned to 1 so that rounding in the partial
/// sums cannot leave mass outside `Q(1)`.
pub fn bum_order_weights(
    bum: &Bum,
    singleton_weights: &[f64],
    sigma: &Permutation,
) -> Result<Vec<f64>> {
    bum.validate()?;
    if singleton_weights.len() != sigma.len() {
        return Err(Error::SizeMismatch {
            expected: singleton_weights.len(),
            actual: sigma.len(),
        });
    }
    let weights = normalized_weights(singleton_weights)?;
    let n = weights.len();
    let mut cumulative = 0.0;
    let mut previous = 0.0;
    let mut out = Vec::with_capacity(n);
    for (k, &i) in sigma.as_slice().iter().enumerate() {
        cumulative += weights[i];
        let x = if k + 1 == n { 1.0 } else { cumulative.min(1.0) };
        let current = bum.eval(x);
        out.push(current - previous);
        previous = current;
    }
    Ok(out)
}

//! Weighted-program semantics: satisfied parts, total and penalty weights,
//! soft stable models, and the limit distribution as the hard weight grows.
//!
//! Weights are never evaluated numerically. A weight is `e^(q + k*alpha)`
//! with `q` rational and `k` an integer, or zero. In the limit
//! `alpha -> infinity` only soft stable models whose `k` is maximal keep
//! positive probability, and among those the probability of `X` is
//! `e^(q_X) / sum_Y e^(q_Y)`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Div, Mul};

use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::classical::{holds, is_stable_model};
use crate::error::{Error, Result};
use crate::formula::program::{parse_rational, rational_to_string};
use crate::formula::{Formula, Interpretation, Weight, WeightedProgram};

/// A symbolic weight `e^(soft + hard*alpha)`, or zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "WeightRepr", try_from = "WeightRepr")]
pub enum WeightExpr {
    Zero,
    Exp { soft: BigRational, hard: i64 },
}

impl WeightExpr {
    pub fn one() -> WeightExpr {
        WeightExpr::exp(BigRational::zero(), 0)
    }

    pub fn exp(soft: BigRational, hard: i64) -> WeightExpr {
        WeightExpr::Exp { soft, hard }
    }

    pub fn of_int(soft: i64, hard: i64) -> WeightExpr {
        WeightExpr::exp(BigRational::from_integer(soft.into()), hard)
    }

    /// `e^w` for a single rule weight.
    pub fn of_weight(w: &Weight) -> WeightExpr {
        match w {
            Weight::Soft(q) => WeightExpr::exp(q.clone(), 0),
            Weight::Alpha => WeightExpr::exp(BigRational::zero(), 1),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, WeightExpr::Zero)
    }

    /// The soft exponent, `None` for zero.
    pub fn soft(&self) -> Option<&BigRational> {
        match self {
            WeightExpr::Zero => None,
            WeightExpr::Exp { soft, .. } => Some(soft),
        }
    }

    /// The coefficient of alpha, `None` for zero.
    pub fn hard(&self) -> Option<i64> {
        match self {
            WeightExpr::Zero => None,
            WeightExpr::Exp { hard, .. } => Some(*hard),
        }
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn recip(&self) -> WeightExpr {
        match self {
            WeightExpr::Zero => panic!("zero weight has no inverse"),
            WeightExpr::Exp { soft, hard } => WeightExpr::exp(-soft.clone(), -hard),
        }
    }
}

impl Mul for &WeightExpr {
    type Output = WeightExpr;

    fn mul(self, rhs: &WeightExpr) -> WeightExpr {
        match (self, rhs) {
            (WeightExpr::Exp { soft: s1, hard: h1 }, WeightExpr::Exp { soft: s2, hard: h2 }) => {
                WeightExpr::exp(s1 + s2, h1 + h2)
            }
            _ => WeightExpr::Zero,
        }
    }
}

impl Mul for WeightExpr {
    type Output = WeightExpr;

    fn mul(self, rhs: WeightExpr) -> WeightExpr {
        &self * &rhs
    }
}

impl Div for &WeightExpr {
    type Output = WeightExpr;

    fn div(self, rhs: &WeightExpr) -> WeightExpr {
        self * &rhs.recip()
    }
}

impl Div for WeightExpr {
    type Output = WeightExpr;

    fn div(self, rhs: WeightExpr) -> WeightExpr {
        &self / &rhs
    }
}

impl fmt::Display for WeightExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (soft, hard) = match self {
            WeightExpr::Zero => return f.write_str("0"),
            WeightExpr::Exp { soft, hard } => (soft, *hard),
        };
        let alpha = match hard {
            0 => String::new(),
            1 => "alpha".into(),
            -1 => "-alpha".into(),
            k => format!("{k}*alpha"),
        };
        let q = rational_to_string(soft);
        if hard == 0 {
            if soft.is_integer() {
                write!(f, "e^{q}")
            } else {
                write!(f, "e^({q})")
            }
        } else if soft.is_zero() {
            write!(f, "e^({alpha})")
        } else if hard < 0 {
            write!(f, "e^({q} - {})", alpha.trim_start_matches('-'))
        } else {
            write!(f, "e^({q} + {alpha})")
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
enum WeightRepr {
    Zero,
    Exp { soft: String, hard: i64 },
}

impl From<WeightExpr> for WeightRepr {
    fn from(w: WeightExpr) -> WeightRepr {
        match w {
            WeightExpr::Zero => WeightRepr::Zero,
            WeightExpr::Exp { soft, hard } => WeightRepr::Exp {
                soft: rational_to_string(&soft),
                hard,
            },
        }
    }
}

impl TryFrom<WeightRepr> for WeightExpr {
    type Error = String;

    fn try_from(r: WeightRepr) -> std::result::Result<WeightExpr, String> {
        match r {
            WeightRepr::Zero => Ok(WeightExpr::Zero),
            WeightRepr::Exp { soft, hard } => parse_rational(&soft)
                .map(|q| WeightExpr::exp(q, hard))
                .ok_or_else(|| format!("bad rational `{soft}`")),
        }
    }
}

/// The rules of `p` satisfied by `x`, keeping their indices and weights.
pub fn satisfied_part(p: &WeightedProgram, x: Interpretation) -> WeightedProgram {
    let sig = p.signature();
    let rules = p
        .rules()
        .iter()
        .filter(|r| holds(sig, x, &r.formula))
        .cloned()
        .collect();
    WeightedProgram::from_parts(rules, sig.clone())
}

/// The rules of `p` not satisfied by `x`.
pub fn unsatisfied_part(p: &WeightedProgram, x: Interpretation) -> WeightedProgram {
    let sig = p.signature();
    let rules = p
        .rules()
        .iter()
        .filter(|r| !holds(sig, x, &r.formula))
        .cloned()
        .collect();
    WeightedProgram::from_parts(rules, sig.clone())
}

/// `e` raised to the sum of the weights of `p`.
pub fn total_weight(p: &WeightedProgram) -> WeightExpr {
    p.rules()
        .iter()
        .fold(WeightExpr::one(), |acc, r| acc * WeightExpr::of_weight(&r.weight))
}

/// Whether `x` is a stable model of the formulas it satisfies.
pub fn is_soft_stable_model(p: &WeightedProgram, x: Interpretation) -> bool {
    let sig = p.signature();
    let gamma: Vec<Formula> = p
        .formulas()
        .filter(|f| holds(sig, x, f))
        .cloned()
        .collect();
    is_stable_model(&gamma, sig, x)
}

/// All soft stable models of `p`, in bitset order.
pub fn soft_stable_models(p: &WeightedProgram) -> Vec<Interpretation> {
    p.signature()
        .interpretations()
        .filter(|&x| is_soft_stable_model(p, x))
        .collect()
}

/// `TW(p_x)` when `x` is a soft stable model, zero otherwise.
pub fn weight(p: &WeightedProgram, x: Interpretation) -> WeightExpr {
    if is_soft_stable_model(p, x) {
        total_weight(&satisfied_part(p, x))
    } else {
        WeightExpr::Zero
    }
}

/// `1 / TW(p \ p_x)` when `x` is a soft stable model, zero otherwise.
pub fn penalty_weight(p: &WeightedProgram, x: Interpretation) -> WeightExpr {
    if is_soft_stable_model(p, x) {
        total_weight(&unsatisfied_part(p, x)).recip()
    } else {
        WeightExpr::Zero
    }
}

/// The limit distribution of `p`, from [`weight`].
pub fn distribution(p: &WeightedProgram) -> Result<SoftDistribution> {
    SoftDistribution::from_weights(p, weight)
}

/// The limit distribution of `p`, from [`penalty_weight`].
pub fn penalty_distribution(p: &WeightedProgram) -> Result<SoftDistribution> {
    SoftDistribution::from_weights(p, penalty_weight)
}

/// Probability distribution over soft stable models in the limit of infinite
/// hard weight.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SoftDistribution {
    support: BTreeMap<Interpretation, WeightExpr>,
    max_hard: i64,
}

impl SoftDistribution {
    /// Builds the distribution from any per-interpretation weight function
    /// that returns zero exactly off the soft stable models.
    pub fn from_weights(
        p: &WeightedProgram,
        weigh: impl Fn(&WeightedProgram, Interpretation) -> WeightExpr,
    ) -> Result<SoftDistribution> {
        let support: BTreeMap<Interpretation, WeightExpr> = p
            .signature()
            .interpretations()
            .map(|x| (x, weigh(p, x)))
            .filter(|(_, w)| !w.is_zero())
            .collect();
        let max_hard = support
            .values()
            .filter_map(WeightExpr::hard)
            .max()
            .ok_or(Error::EmptyModelSet)?;
        Ok(SoftDistribution { support, max_hard })
    }

    /// Soft stable models and their (unnormalized) weights.
    pub fn support(&self) -> &BTreeMap<Interpretation, WeightExpr> {
        &self.support
    }

    pub fn max_hard(&self) -> i64 {
        self.max_hard
    }

    /// Members with positive probability and their soft exponents.
    pub fn positive(&self) -> impl Iterator<Item = (Interpretation, &BigRational)> + '_ {
        self.support.iter().filter_map(move |(x, w)| match w {
            WeightExpr::Exp { soft, hard } if *hard == self.max_hard => Some((*x, soft)),
            _ => None,
        })
    }

    /// Exact probability of `x`.
    pub fn probability(&self, x: Interpretation) -> Probability {
        let partition: Vec<BigRational> = self.positive().map(|(_, q)| q.clone()).collect();
        let numerator = self
            .positive()
            .find(|(y, _)| *y == x)
            .map(|(_, q)| q.clone());
        Probability {
            numerator,
            partition,
        }
    }

    /// `exp(q1) + exp(q2) + ...` over the positive members.
    pub fn partition_string(&self) -> String {
        self.positive()
            .map(|(_, q)| format!("exp({})", rational_to_string(q)))
            .collect::<Vec<_>>()
            .join(" + ")
    }

    /// The greatest interpretation (in bitset order) whose probability
    /// differs between the two distributions, or `None` if they agree.
    ///
    /// Probabilities are compared through exponent differences against the
    /// least positive member, which is exact: exponentials of distinct
    /// rationals are linearly independent over the rationals.
    pub fn first_difference(&self, other: &SoftDistribution) -> Option<Interpretation> {
        let mine: BTreeMap<Interpretation, &BigRational> = self.positive().collect();
        let theirs: BTreeMap<Interpretation, &BigRational> = other.positive().collect();
        if let Some(x) = mine
            .keys()
            .filter(|x| !theirs.contains_key(x))
            .chain(theirs.keys().filter(|x| !mine.contains_key(x)))
            .max()
        {
            return Some(*x);
        }
        let (r, qr) = mine.iter().next()?;
        let q2r = theirs[r];
        mine.iter()
            .rev()
            .find(|(x, q)| **q - *qr != theirs[*x] - q2r)
            .map(|(x, _)| *x)
    }

    pub fn same_as(&self, other: &SoftDistribution) -> bool {
        self.first_difference(other).is_none()
    }
}

/// `e^numerator / sum(e^partition)`; zero when `numerator` is `None`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Probability {
    pub numerator: Option<BigRational>,
    pub partition: Vec<BigRational>,
}

impl Probability {
    pub fn is_zero(&self) -> bool {
        self.numerator.is_none()
    }

    pub fn to_f64(&self) -> f64 {
        let Some(q) = &self.numerator else {
            return 0.0;
        };
        // 1 / sum_Y e^(q_Y - q_X), which stays finite for large exponents.
        let denom: f64 = self
            .partition
            .iter()
            .map(|y| (y - q).to_f64().unwrap_or(f64::INFINITY).exp())
            .sum();
        1.0 / denom
    }
}

impl fmt::Display for Probability {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.numerator {
            None => f.write_str("0"),
            Some(q) => write!(f, "exp({})/Z", rational_to_string(q)),
        }
    }
}

/// Decimal rendering with six significant digits.
pub fn six_digits(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let magnitude = x.abs().log10().floor() as i32;
    let decimals = (5 - magnitude).max(0) as usize;
    let s = format!("{x:.decimals$}");
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

/// Sum of soft weights and count of hard rules among `rules`.
pub(crate) fn penalty_components(p: &WeightedProgram) -> (BigRational, i64) {
    p.rules().iter().fold(
        (BigRational::zero(), 0),
        |(s, h), r| match &r.weight {
            Weight::Soft(q) => (s + q, h),
            Weight::Alpha => (s, h + 1),
        },
    )
}

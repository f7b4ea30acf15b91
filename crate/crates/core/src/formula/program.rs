use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use super::{Formula, Signature};
use crate::error::Result;

/// Rule weight: an exact rational for soft rules or the infinite weight `alpha`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Weight {
    Soft(BigRational),
    Alpha,
}

impl Weight {
    pub fn int(n: i64) -> Weight {
        Weight::Soft(BigRational::from_integer(n.into()))
    }

    pub fn ratio(numer: i64, denom: i64) -> Weight {
        Weight::Soft(BigRational::new(numer.into(), denom.into()))
    }

    pub fn is_hard(&self) -> bool {
        matches!(self, Weight::Alpha)
    }

    /// The weight as a machine integer, if it is a soft integral weight.
    pub fn as_integer(&self) -> Option<i64> {
        match self {
            Weight::Soft(q) if q.is_integer() => q.to_integer().to_i64(),
            _ => None,
        }
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Weight::Alpha => f.write_str("alpha"),
            Weight::Soft(q) => write_rational(f, q),
        }
    }
}

pub(crate) fn write_rational(f: &mut impl fmt::Write, q: &BigRational) -> fmt::Result {
    if q.denom().is_one() {
        write!(f, "{}", q.numer())
    } else {
        write!(f, "{}/{}", q.numer(), q.denom())
    }
}

pub(crate) fn rational_to_string(q: &BigRational) -> String {
    let mut s = String::new();
    write_rational(&mut s, q).expect("string write");
    s
}

pub(crate) fn parse_rational(text: &str) -> Option<BigRational> {
    let (neg, body) = match text.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, text),
    };
    let digits = |s: &str| !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit());
    let value = if let Some((n, d)) = body.split_once('/') {
        if !digits(n) || !digits(d) {
            return None;
        }
        let d: BigInt = d.parse().ok()?;
        if d.is_zero() {
            return None;
        }
        BigRational::new(n.parse().ok()?, d)
    } else if let Some((i, frac)) = body.split_once('.') {
        if !digits(i) || !digits(frac) {
            return None;
        }
        let scale = BigInt::from(10).pow(frac.len() as u32);
        let numer: BigInt = format!("{i}{frac}").parse().ok()?;
        BigRational::new(numer, scale)
    } else {
        if !digits(body) {
            return None;
        }
        BigRational::from_integer(body.parse().ok()?)
    };
    Some(if neg { -value } else { value })
}

/// A weighted formula together with its 1-based position in the program.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rule {
    pub index: usize,
    pub weight: Weight,
    pub formula: Formula,
}

/// A finite list of weighted formulas over a signature.
///
/// Rules are numbered from 1 in order. Sub-programs produced by
/// [`crate::lpmln::satisfied_part`] keep the numbers of the rules they select.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedProgram {
    rules: Vec<Rule>,
    signature: Signature,
}

impl WeightedProgram {
    pub fn new<I>(rules: I) -> Result<WeightedProgram>
    where
        I: IntoIterator<Item = (Weight, Formula)>,
    {
        WeightedProgram::with_declared(Signature::new(), rules)
    }

    /// Program whose signature starts with `declared`, then atoms in order of occurrence.
    pub fn with_declared<I>(declared: Signature, rules: I) -> Result<WeightedProgram>
    where
        I: IntoIterator<Item = (Weight, Formula)>,
    {
        let rules: Vec<Rule> = rules
            .into_iter()
            .enumerate()
            .map(|(i, (weight, formula))| Rule {
                index: i + 1,
                weight,
                formula,
            })
            .collect();
        let mut signature = declared;
        for r in &rules {
            let mut res = Ok(());
            r.formula.for_each_atom(&mut |a| {
                if res.is_ok() {
                    res = signature.insert(a.clone()).map(|_| ());
                }
            });
            res?;
        }
        Ok(WeightedProgram { rules, signature })
    }

    pub(crate) fn from_parts(rules: Vec<Rule>, signature: Signature) -> WeightedProgram {
        WeightedProgram { rules, signature }
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn signature(&self) -> &Signature {
        &self.signature
    }

    pub fn len(&self) -> usize {
        self.rules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rules.is_empty()
    }

    /// The formulas with weights dropped.
    pub fn formulas(&self) -> impl Iterator<Item = &Formula> + '_ {
        self.rules.iter().map(|r| &r.formula)
    }

    /// Same rules over `sig` followed by this program's own atoms.
    pub fn over_signature(&self, sig: &Signature) -> Result<WeightedProgram> {
        Ok(WeightedProgram {
            rules: self.rules.clone(),
            signature: sig.union(&self.signature)?,
        })
    }

    /// The program `self ∪ other`, with `other`'s rules renumbered after ours.
    pub fn union(&self, other: &WeightedProgram) -> Result<WeightedProgram> {
        let signature = self.signature.union(&other.signature)?;
        let offset = self.rules.len();
        let rules = self
            .rules
            .iter()
            .cloned()
            .chain(other.rules.iter().cloned().map(|mut r| {
                r.index += offset;
                r
            }))
            .collect();
        Ok(WeightedProgram { rules, signature })
    }
}

impl fmt::Display for WeightedProgram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.signature.is_empty() {
            let names: Vec<&str> = self.signature.atoms().iter().map(|a| &**a).collect();
            writeln!(f, "#signature {}.", names.join(", "))?;
        }
        for r in &self.rules {
            writeln!(f, "{} : {}.", r.weight, r.formula)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_literals() {
        assert_eq!(parse_rational("-3"), Some(BigRational::from_integer((-3).into())));
        assert_eq!(parse_rational("2.5"), Some(BigRational::new(5.into(), 2.into())));
        assert_eq!(parse_rational("7/2"), Some(BigRational::new(7.into(), 2.into())));
        assert_eq!(parse_rational("-14/4"), Some(BigRational::new((-7).into(), 2.into())));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("2."), None);
        assert_eq!(parse_rational("1e5"), None);
    }

    #[test]
    fn weight_display_and_integers() {
        assert_eq!(Weight::ratio(14, 4).to_string(), "7/2");
        assert_eq!(Weight::int(-3).to_string(), "-3");
        assert_eq!(Weight::Alpha.to_string(), "alpha");
        assert_eq!(Weight::int(4).as_integer(), Some(4));
        assert_eq!(Weight::ratio(1, 2).as_integer(), None);
        assert_eq!(Weight::Alpha.as_integer(), None);
    }

    #[test]
    fn union_renumbers_and_merges_signatures() {
        let f = WeightedProgram::new([(Weight::int(1), Formula::atom("a"))]).unwrap();
        let h = WeightedProgram::new([
            (Weight::int(2), Formula::atom("b")),
            (Weight::Alpha, Formula::atom("a")),
        ])
        .unwrap();
        let u = f.union(&h).unwrap();
        let idx: Vec<usize> = u.rules().iter().map(|r| r.index).collect();
        assert_eq!(idx, vec![1, 2, 3]);
        assert_eq!(u.signature().len(), 2);
    }
}

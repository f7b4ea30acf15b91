//! Classical satisfaction, the reduct, and standard stable models.
//!
//! All enumeration here is exhaustive over bitset interpretations, which is
//! the intended scale (a couple of dozen atoms at most).

use crate::error::Result;
use crate::formula::{Formula, Interpretation, Signature};

/// Classical truth of `f` in `x`.
pub fn satisfies(sig: &Signature, x: Interpretation, f: &Formula) -> Result<bool> {
    sig.check_covers(f)?;
    Ok(holds(sig, x, f))
}

/// [`satisfies`] without the signature check.
pub(crate) fn holds(sig: &Signature, x: Interpretation, f: &Formula) -> bool {
    f.eval(&sig.valuation(x))
}

/// The reduct `f^x`: every maximal subformula false in `x` becomes `bot`.
///
/// Panics if `f` mentions atoms outside `sig`.
pub fn reduct(f: &Formula, sig: &Signature, x: Interpretation) -> Formula {
    if !holds(sig, x, f) {
        return Formula::Bottom;
    }
    match f {
        Formula::Atom(_) => f.clone(),
        Formula::Bottom => unreachable!("bot is never satisfied"),
        Formula::And(l, r) => Formula::and(reduct(l, sig, x), reduct(r, sig, x)),
        Formula::Or(l, r) => Formula::or(reduct(l, sig, x), reduct(r, sig, x)),
        Formula::Implies(l, r) => Formula::implies(reduct(l, sig, x), reduct(r, sig, x)),
    }
}

/// Conjunction of the reducts of a set of formulas (`top` for the empty set).
pub fn reduct_all<'a, I>(formulas: I, sig: &Signature, x: Interpretation) -> Formula
where
    I: IntoIterator<Item = &'a Formula>,
{
    Formula::conjunction(formulas.into_iter().map(|f| reduct(f, sig, x)))
}

/// Whether `x` is a minimal model of the reducts of `gamma` relative to `x`.
pub fn is_stable_model(gamma: &[Formula], sig: &Signature, x: Interpretation) -> bool {
    if !gamma.iter().all(|f| holds(sig, x, f)) {
        return false;
    }
    let reducts: Vec<Formula> = gamma.iter().map(|f| reduct(f, sig, x)).collect();
    !x.proper_subsets()
        .any(|y| reducts.iter().all(|r| holds(sig, y, r)))
}

/// All stable models of `gamma` over `sig`, in bitset order.
pub fn stable_models(gamma: &[Formula], sig: &Signature) -> Vec<Interpretation> {
    sig.interpretations()
        .filter(|&x| is_stable_model(gamma, sig, x))
        .collect()
}

/// The choice formula `f | not f`.
pub fn choice(f: &Formula) -> Formula {
    Formula::or(f.clone(), Formula::not(f.clone()))
}

/// Elementwise [`choice`].
pub fn choice_all<'a, I>(formulas: I) -> Vec<Formula>
where
    I: IntoIterator<Item = &'a Formula>,
{
    formulas.into_iter().map(choice).collect()
}

/// Outcome of a classical equivalence test.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Equivalence {
    Equivalent,
    /// An interpretation giving the two formulas different truth values.
    Countermodel(Interpretation),
}

impl Equivalence {
    pub fn is_equivalent(self) -> bool {
        self == Equivalence::Equivalent
    }
}

/// Truth-table equivalence of `f` and `g`.
///
/// Only atoms occurring in `f` or `g` are enumerated; atoms of `sig` that
/// occur in neither cannot change either truth value. The countermodel
/// returned is the least one in bitset order.
pub fn classically_equivalent(f: &Formula, g: &Formula, sig: &Signature) -> Equivalence {
    let mut positions: Vec<usize> = f
        .atoms()
        .into_iter()
        .chain(g.atoms())
        .map(|a| sig.index_of(a).unwrap_or_else(|| panic!("atom `{a}` outside signature")))
        .collect();
    positions.sort_unstable();
    positions.dedup();
    let relevant = positions
        .iter()
        .fold(Interpretation::EMPTY, |acc, &i| acc.with(i));
    match relevant
        .subsets()
        .find(|&x| holds(sig, x, f) != holds(sig, x, g))
    {
        Some(x) => Equivalence::Countermodel(x),
        None => Equivalence::Equivalent,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parse_formula;

    fn sig(names: &[&str]) -> Signature {
        Signature::from_atoms(names.iter().copied()).unwrap()
    }

    fn p(s: &str) -> Formula {
        parse_formula(s).unwrap()
    }

    fn gamma(texts: &[&str]) -> Vec<Formula> {
        texts.iter().map(|t| p(t)).collect()
    }

    #[test]
    fn classical_satisfaction() {
        let s = sig(&["a", "b"]);
        assert!(satisfies(&s, s.interpretation(&["a"]).unwrap(), &p("a | b")).unwrap());
        assert!(satisfies(&s, Interpretation::EMPTY, &p("not a")).unwrap());
        let s = sig(&["f", "g", "k"]);
        let x = s.interpretation(&["f", "g"]).unwrap();
        assert!(!satisfies(&s, x, &p("(f -> g) -> k")).unwrap());
        assert!(satisfies(&s, x, &p("z")).is_err());
    }

    #[test]
    fn reduct_examples() {
        let s = sig(&["a", "b"]);
        let a = s.interpretation(&["a"]).unwrap();
        let r = reduct(&p("not not a -> a"), &s, a);
        assert!(classically_equivalent(&r, &p("a"), &s).is_equivalent());
        assert_eq!(reduct(&p("a | b"), &s, Interpretation::EMPTY), Formula::Bottom);
    }

    #[test]
    fn reduct_of_satisfied_f2lp_rule() {
        // Only the second rule is satisfied by {f, g}; its reduct behaves like f.
        let s = sig(&["f", "g", "k"]);
        let x = s.interpretation(&["f", "g"]).unwrap();
        let first = p("(g | not f) -> k");
        let second = p("k | f | not g");
        assert!(!holds(&s, x, &first));
        let r = reduct(&second, &s, x);
        assert!(classically_equivalent(&r, &p("f"), &s).is_equivalent());
    }

    #[test]
    fn stable_model_checks() {
        let s = sig(&["a", "b"]);
        let ab = s.full();
        assert!(is_stable_model(&gamma(&["a | b", "b -> a", "a -> b"]), &s, ab));
        let g = gamma(&["a | b"]);
        assert!(is_stable_model(&g, &s, s.interpretation(&["a"]).unwrap()));
        assert!(!is_stable_model(&g, &s, ab));
        assert!(is_stable_model(&[], &s, Interpretation::EMPTY));
    }

    #[test]
    fn stable_model_enumeration() {
        let s = sig(&["a", "b"]);
        let a = s.interpretation(&["a"]).unwrap();
        let b = s.interpretation(&["b"]).unwrap();
        assert_eq!(stable_models(&gamma(&["a | b"]), &s), vec![a, b]);
        assert_eq!(stable_models(&gamma(&["a <- not b", "b <- not a"]), &s), vec![a, b]);
        assert_eq!(stable_models(&[], &sig(&["a"])), vec![Interpretation::EMPTY]);
    }

    #[test]
    fn choice_formulas() {
        assert_eq!(choice(&p("a")), p("a | not a"));
        assert_eq!(
            choice(&p("not a | b")),
            p("(not a | b) | not (not a | b)")
        );
        assert_eq!(choice_all(&gamma(&["a", "b"])), gamma(&["a | not a", "b | not b"]));
    }

    #[test]
    fn truth_table_equivalence() {
        let s = sig(&["a", "b"]);
        assert!(
            classically_equivalent(&p("(a | b) & (b -> a) & (a -> b)"), &p("a & b"), &s)
                .is_equivalent()
        );
        let s = sig(&["f", "g", "k"]);
        assert_eq!(
            classically_equivalent(&Formula::top(), &p("f"), &s),
            Equivalence::Countermodel(Interpretation::EMPTY)
        );
        assert!(classically_equivalent(&p("a"), &p("a"), &sig(&["a"])).is_equivalent());
    }

    #[test]
    fn countermodel_ignores_unused_atoms() {
        let s = sig(&["a", "b", "c"]);
        // b is the only relevant atom; the least countermodel is {b}.
        match classically_equivalent(&p("b"), &p("bot"), &s) {
            Equivalence::Countermodel(x) => assert_eq!(s.format(x), "{b}"),
            other => panic!("{other:?}"),
        }
    }
}

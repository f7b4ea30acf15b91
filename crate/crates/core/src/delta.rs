//! Primed-copy translation of formulas and the classical characterizations
//! of soft HT models and soft stable models built on it.
//!
//! For an HT pair `<Y, X>` the classical interpretation `Y' ∪ X` makes the
//! primed copy `p'` true iff `p ∈ Y`, and the plain atom `p` true iff
//! `p ∈ X`. Under that reading the translation of a formula holds exactly
//! when the pair satisfies the formula at the `Here` world.

use std::collections::HashMap;
use std::sync::Arc;

use crate::classical::{choice, holds};
use crate::error::{Error, Result};
use crate::formula::{Formula, Interpretation, Signature, WeightedProgram};

const PRIME: char = '\'';

/// A signature together with fresh primed copies of its atoms.
///
/// Internally the copy of `p` is named `p'`; the text format never produces
/// a `'`, so the copies cannot clash with program atoms. For ASP output the
/// copies are spelled by doubling the name (`a` becomes `aa`), see
/// [`PrimedSignature::ascii_names`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimedSignature {
    base: Signature,
}

impl PrimedSignature {
    pub fn new(base: &Signature) -> Result<PrimedSignature> {
        if let Some(a) = base.atoms().iter().find(|a| a.ends_with(PRIME)) {
            return Err(Error::NameCollision(a.to_string()));
        }
        Ok(PrimedSignature { base: base.clone() })
    }

    pub fn base(&self) -> &Signature {
        &self.base
    }

    pub fn primed(&self, atom: &str) -> Arc<str> {
        format!("{atom}{PRIME}").into()
    }

    /// Truth of `f` (over base and primed atoms) in `Y' ∪ X`.
    pub fn holds(&self, f: &Formula, here: Interpretation, there: Interpretation) -> bool {
        let base = &self.base;
        f.eval(&|name: &str| match name.strip_suffix(PRIME) {
            Some(b) => here.contains(index(base, b)),
            None => there.contains(index(base, name)),
        })
    }

    /// Renaming of every atom and its copy into ASP-safe names, with `p'`
    /// spelled `pp`.
    ///
    /// Fails if a doubled name equals a base atom or one of `reserved`.
    pub fn ascii_names(&self, reserved: &[&str]) -> Result<HashMap<Arc<str>, Arc<str>>> {
        let mut map = HashMap::new();
        for a in self.base.atoms() {
            if reserved.contains(&&**a) {
                return Err(Error::NameCollision(a.to_string()));
            }
            let doubled = format!("{a}{a}");
            if self.base.contains(&doubled) || reserved.contains(&doubled.as_str()) {
                return Err(Error::NameCollision(doubled));
            }
            map.insert(a.clone(), a.clone());
            map.insert(self.primed(a), doubled.into());
        }
        Ok(map)
    }
}

fn index(sig: &Signature, atom: &str) -> usize {
    sig.index_of(atom)
        .unwrap_or_else(|| panic!("atom `{atom}` outside signature"))
}

/// The primed-copy translation:
///
/// - an atom `p` becomes `p'`, and `bot` stays `bot`;
/// - a negation `not F` (and `top`) is left unchanged;
/// - conjunction and disjunction are translated componentwise;
/// - `F -> G` becomes `(Δ(F) -> Δ(G)) & (F -> G)`.
pub fn delta(f: &Formula, ps: &PrimedSignature) -> Formula {
    if f.is_top() || f.as_negation().is_some() {
        return f.clone();
    }
    match f {
        Formula::Atom(a) => Formula::Atom(ps.primed(a)),
        Formula::Bottom => Formula::Bottom,
        Formula::And(l, r) => Formula::and(delta(l, ps), delta(r, ps)),
        Formula::Or(l, r) => Formula::or(delta(l, ps), delta(r, ps)),
        Formula::Implies(l, r) => Formula::and(
            Formula::implies(delta(l, ps), delta(r, ps)),
            Formula::implies((**l).clone(), (**r).clone()),
        ),
    }
}

/// `Δ(F | not F)` for every rule formula of `p`.
pub fn delta_of_choice_program(p: &WeightedProgram, ps: &PrimedSignature) -> Vec<Formula> {
    p.formulas().map(|f| delta(&choice(f), ps)).collect()
}

/// Which entailment [`delta_condition_check`] tests.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DeltaMode {
    /// For every `X`, the translations of the satisfied parts agree on all `Y' ∪ X`.
    PerInterpretation,
    /// The translations of the choice programs agree on every `Y' ∪ X` with `Y ⊆ X`.
    Choice,
}

/// Result of an entailment check, with the failing pair split back into `(X, Y)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DeltaCheck {
    Holds,
    Countermodel {
        there: Interpretation,
        here: Interpretation,
    },
}

impl DeltaCheck {
    pub fn holds(self) -> bool {
        self == DeltaCheck::Holds
    }
}

/// Checks that `{p' -> p}` entails `Δ(F) <-> Δ(G)` in the chosen mode, over
/// the union of both signatures.
///
/// In [`DeltaMode::PerInterpretation`] the unprimed atoms are fixed to the
/// `X` that selects the satisfied parts: evaluating `Δ(F_X)` at some other
/// `Z` would compare HT models of `F_X` at a different there-world, which
/// is not what structural equivalence is about (e.g. `0 : a` against
/// `0 : a | not a` agree for every `X` but not as full HT theories).
pub fn delta_condition_check(
    pf: &WeightedProgram,
    pg: &WeightedProgram,
    mode: DeltaMode,
) -> Result<DeltaCheck> {
    let sig = pf.signature().union(pg.signature())?;
    let ps = PrimedSignature::new(&sig)?;
    // Greatest X first, then greatest Y, so every structural method reports
    // the same pair.
    let pairs = sig
        .interpretations()
        .rev()
        .flat_map(|x| x.subsets().rev().map(move |y| (x, y)));
    let found = match mode {
        DeltaMode::PerInterpretation => {
            let translate = |p: &WeightedProgram| -> Vec<(Formula, Formula)> {
                p.formulas().map(|f| (f.clone(), delta(f, &ps))).collect()
            };
            let (tf, tg) = (translate(pf), translate(pg));
            let side = |t: &[(Formula, Formula)], x: Interpretation, y: Interpretation| {
                t.iter()
                    .filter(|(f, _)| holds(&sig, x, f))
                    .all(|(_, d)| ps.holds(d, y, x))
            };
            pairs
                .into_iter()
                .find(|&(x, y)| side(&tf, x, y) != side(&tg, x, y))
        }
        DeltaMode::Choice => {
            let df = Formula::conjunction(delta_of_choice_program(pf, &ps));
            let dg = Formula::conjunction(delta_of_choice_program(pg, &ps));
            pairs
                .into_iter()
                .find(|&(x, y)| ps.holds(&df, y, x) != ps.holds(&dg, y, x))
        }
    };
    Ok(match found {
        Some((there, here)) => DeltaCheck::Countermodel { there, here },
        None => DeltaCheck::Holds,
    })
}

/// `X` is a soft stable model iff no strict subset `Y` makes `Y' ∪ X`
/// satisfy the translation of the choice program.
pub fn delta_stable_check(p: &WeightedProgram, x: Interpretation) -> bool {
    let ps = PrimedSignature::new(p.signature()).expect("program atoms carry no prime");
    let d = Formula::conjunction(delta_of_choice_program(p, &ps));
    !x.proper_subsets().any(|y| ps.holds(&d, y, x))
}

/// `X` satisfies `not exists u ((u < p) & Δ_u(choice program))`, with the
/// second-order variables `u` ranging over every assignment to the
/// signature.
///
/// `u < p` is read literally as `(u ≤ p) & not (p ≤ u)`, and `Δ_u` is
/// evaluated straight from its recursive definition rather than by building
/// the translated formula, so this shares no code path with
/// [`delta_stable_check`].
pub fn second_order_stable_check(p: &WeightedProgram, x: Interpretation) -> bool {
    let sig = p.signature();
    let n = sig.len();
    let le = |a: Interpretation, b: Interpretation| (0..n).all(|i| !a.contains(i) || b.contains(i));
    let choices: Vec<Formula> = p.formulas().map(choice).collect();
    !sig.interpretations().any(|u| {
        le(u, x) && !le(x, u) && choices.iter().all(|f| delta_u_holds(sig, f, u, x))
    })
}

fn delta_u_holds(sig: &Signature, f: &Formula, u: Interpretation, x: Interpretation) -> bool {
    if f.is_top() || f.as_negation().is_some() {
        return holds(sig, x, f);
    }
    match f {
        Formula::Atom(a) => u.contains(index(sig, a)),
        Formula::Bottom => false,
        Formula::And(l, r) => delta_u_holds(sig, l, u, x) && delta_u_holds(sig, r, u, x),
        Formula::Or(l, r) => delta_u_holds(sig, l, u, x) || delta_u_holds(sig, r, u, x),
        Formula::Implies(l, r) => {
            (!delta_u_holds(sig, l, u, x) || delta_u_holds(sig, r, u, x)) && holds(sig, x, f)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::{parse_formula, parse_program, render, Dialect};
    use crate::lpmln::is_soft_stable_model;

    fn prog(text: &str) -> WeightedProgram {
        parse_program(text).unwrap()
    }

    fn ps_for(names: &[&str]) -> PrimedSignature {
        PrimedSignature::new(&Signature::from_atoms(names.iter().copied()).unwrap()).unwrap()
    }

    fn ascii(f: &Formula, ps: &PrimedSignature) -> String {
        let names = ps.ascii_names(&[]).unwrap();
        render(&f.map_atoms(&|a| names[a].clone()), Dialect::F2lp)
    }

    #[test]
    fn translation_examples() {
        let ps = ps_for(&["a", "b"]);
        assert_eq!(delta(&parse_formula("a").unwrap(), &ps), Formula::atom("a'"));
        let d = delta(&parse_formula("not not a -> a").unwrap(), &ps);
        assert_eq!(ascii(&d, &ps), "(not not a -> aa) & (not not a -> a)");
        let d = delta(&parse_formula("not a | b").unwrap(), &ps);
        assert_eq!(ascii(&d, &ps), "not a | bb");
    }

    #[test]
    fn doubled_names_must_be_fresh() {
        let ps = ps_for(&["a", "aa"]);
        assert_eq!(ps.ascii_names(&[]), Err(Error::NameCollision("aa".into())));
        let ps = ps_for(&["b"]);
        assert_eq!(ps.ascii_names(&["bb"]), Err(Error::NameCollision("bb".into())));
        let bad = Signature::from_atoms(["a'"]).unwrap();
        assert!(PrimedSignature::new(&bad).is_err());
    }

    const F: &str = "0 : not a.\n2 : b <- a.\n3 : a <- not not a.";
    const G: &str = "2 : not a | b.\n1 : a | not a.";
    const F_PRIME: &str = "0 : not a.\n2 : b <- a.\n3 : a <- a.";

    #[test]
    fn condition_checks() {
        for mode in [DeltaMode::PerInterpretation, DeltaMode::Choice] {
            assert!(delta_condition_check(&prog(F), &prog(G), mode).unwrap().holds());
            assert!(delta_condition_check(&prog(F), &prog(F), mode).unwrap().holds());
            let g = prog(G);
            let sig = g.signature();
            assert_eq!(
                delta_condition_check(&prog(F_PRIME), &g, mode).unwrap(),
                DeltaCheck::Countermodel {
                    there: sig.interpretation(&["a", "b"]).unwrap(),
                    here: sig.interpretation(&["b"]).unwrap(),
                }
            );
        }
    }

    #[test]
    fn per_interpretation_mode_matches_choice_rule_identity() {
        let zero = prog("0 : a.");
        let ch = prog("5 : a | not a.");
        for mode in [DeltaMode::PerInterpretation, DeltaMode::Choice] {
            assert!(delta_condition_check(&zero, &ch, mode).unwrap().holds());
        }
    }

    #[test]
    fn stable_checks() {
        let f = prog(F);
        let ab = f.signature().full();
        assert!(delta_stable_check(&f, ab));
        assert!(!delta_stable_check(&prog(F_PRIME), ab));
        assert!(delta_stable_check(&prog(F_PRIME), Interpretation::EMPTY));

        for text in [F, G, F_PRIME] {
            let p = prog(text);
            for x in p.signature().interpretations() {
                let expected = is_soft_stable_model(&p, x);
                assert_eq!(delta_stable_check(&p, x), expected, "{text} at {x:?}");
                assert_eq!(second_order_stable_check(&p, x), expected, "{text} at {x:?}");
            }
        }
    }

    #[test]
    fn second_order_edge_cases() {
        let sig = Signature::from_atoms(["a"]).unwrap();
        let empty = WeightedProgram::with_declared(sig, []).unwrap();
        assert!(second_order_stable_check(&empty, Interpretation::EMPTY));
        assert!(!second_order_stable_check(&empty, Interpretation(1)));

        let ch = prog("0 : a | not a.");
        assert!(second_order_stable_check(&ch, Interpretation::EMPTY));
        assert!(second_order_stable_check(&ch, Interpretation(1)));
    }
}

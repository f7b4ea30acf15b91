#![allow(dead_code)]

use lpmln_core::formula::{parse_program, Formula, Rule, Weight, WeightedProgram};
use lpmln_core::gen::{random_formula, random_program, random_weight, ProgramShape};
use rand::seq::SliceRandom;
use rand::Rng;

pub const F: &str = "0 : not a.\n2 : b <- a.\n3 : a <- not not a.";
pub const G: &str = "2 : not a | b.\n1 : a | not a.";
pub const F_PRIME: &str = "0 : not a.\n2 : b <- a.\n3 : a <- a.";
pub const G_PRIME: &str = "3 : not a | b.\n1 : a | not a.";
pub const EX1_F: &str = "2 : a | b.\n1 : <- a & b.";
pub const EX1_G: &str = "1 : a <- not b.\n1 : b <- not a.\n1 : <- a & b.";
pub const EX1_H: &str = "1 : a <- b.\n1 : b <- a.";

pub fn prog(text: &str) -> WeightedProgram {
    parse_program(text).unwrap_or_else(|e| panic!("{text}: {e}"))
}

/// Up to three atoms, up to four rules, weights in -3..=3 or alpha.
pub fn shape() -> ProgramShape {
    ProgramShape::small(3, 4)
}

pub fn random_small<R: Rng>(rng: &mut R) -> WeightedProgram {
    let atoms = rng.gen_range(1..=3);
    random_program(rng, &ProgramShape::small(atoms, 4))
}

fn rebuild(p: &WeightedProgram, rules: Vec<(Weight, Formula)>) -> WeightedProgram {
    WeightedProgram::with_declared(p.signature().clone(), rules).unwrap()
}

fn pairs_of(p: &WeightedProgram) -> Vec<(Weight, Formula)> {
    p.rules()
        .iter()
        .map(|Rule { weight, formula, .. }| (weight.clone(), formula.clone()))
        .collect()
}

/// A program strongly equivalent to `p` by construction: rules are
/// shuffled, weight-0 rules become weighted choice rules, and rules that are
/// always satisfied or never satisfied (in every HT sense) are added.
pub fn strongly_equivalent_variant<R: Rng>(rng: &mut R, p: &WeightedProgram) -> WeightedProgram {
    let atoms = p.signature().atoms().to_vec();
    let mut rules = pairs_of(p);
    for r in rules.iter_mut() {
        if r.0 == Weight::int(0) && rng.gen_bool(0.5) {
            let f = r.1.clone();
            *r = (random_weight(rng, &shape()), Formula::or(f.clone(), Formula::not(f)));
        }
    }
    if !atoms.is_empty() && rng.gen_bool(0.5) {
        let a = Formula::Atom(atoms[rng.gen_range(0..atoms.len())].clone());
        let w = random_weight(rng, &shape());
        let filler = if rng.gen_bool(0.5) {
            Formula::implies(a.clone(), a)
        } else {
            Formula::and(a.clone(), Formula::not(a))
        };
        rules.push((w, filler));
    }
    if rng.gen_bool(0.3) {
        rules.push((random_weight(rng, &shape()), Formula::top()));
    }
    rules.shuffle(rng);
    rebuild(p, rules)
}

/// A pair that is strongly equivalent about half of the time.
pub fn random_pair<R: Rng>(rng: &mut R) -> (WeightedProgram, WeightedProgram) {
    let pf = random_small(rng);
    let pg = match rng.gen_range(0..4) {
        0 => random_small(rng),
        1 => {
            // Same formulas, fresh weights: structurally equivalent.
            let rules = pairs_of(&pf)
                .into_iter()
                .map(|(_, f)| (random_weight(rng, &shape()), f))
                .collect();
            rebuild(&pf, rules)
        }
        _ => strongly_equivalent_variant(rng, &pf),
    };
    (pf, pg)
}

/// A random formula over the atoms of `p` (or `a` if it has none).
pub fn random_formula_for<R: Rng>(rng: &mut R, p: &WeightedProgram) -> Formula {
    let atoms = if p.signature().is_empty() {
        vec!["a".into()]
    } else {
        p.signature().atoms().to_vec()
    };
    random_formula(rng, &atoms, 3)
}

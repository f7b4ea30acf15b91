//! Seeded random formulas and programs for falsification and property tests.

use std::sync::Arc;

use rand::Rng;

use crate::formula::{Formula, Signature, Weight, WeightedProgram};

/// Size limits for generated programs.
#[derive(Clone, Debug)]
pub struct ProgramShape {
    pub atoms: Vec<Arc<str>>,
    pub min_rules: usize,
    pub max_rules: usize,
    pub max_depth: u32,
    /// Soft weights are drawn uniformly from this inclusive integer range.
    pub soft_range: (i64, i64),
    /// Probability that a rule is hard.
    pub hard_probability: f64,
}

impl ProgramShape {
    /// Up to `atoms` atoms named `a`, `b`, ...; 0 to `max_rules` rules with
    /// weights in `-3..=3` or `alpha`.
    pub fn small(atoms: usize, max_rules: usize) -> ProgramShape {
        ProgramShape {
            atoms: (0..atoms)
                .map(|i| Arc::from(((b'a' + i as u8) as char).to_string()))
                .collect(),
            min_rules: 0,
            max_rules,
            max_depth: 3,
            soft_range: (-3, 3),
            hard_probability: 1.0 / 8.0,
        }
    }

    pub fn signature(&self) -> Signature {
        Signature::from_atoms(self.atoms.iter().cloned()).expect("small signature")
    }
}

/// A random formula over `atoms` with nesting depth at most `depth`; with no
/// atoms the leaves are `bot` and `top`.
pub fn random_formula<R: Rng + ?Sized>(rng: &mut R, atoms: &[Arc<str>], depth: u32) -> Formula {
    let leaf = depth == 0 || rng.gen_bool(0.3);
    if leaf {
        return match rng.gen_range(0..10) {
            0 => Formula::Bottom,
            1 => Formula::top(),
            n if atoms.is_empty() => [Formula::Bottom, Formula::top()][n % 2].clone(),
            _ => Formula::Atom(atoms[rng.gen_range(0..atoms.len())].clone()),
        };
    }
    let sub = |rng: &mut R| random_formula(rng, atoms, depth - 1);
    match rng.gen_range(0..4) {
        0 => Formula::not(sub(rng)),
        1 => Formula::and(sub(rng), sub(rng)),
        2 => Formula::or(sub(rng), sub(rng)),
        _ => Formula::implies(sub(rng), sub(rng)),
    }
}

pub fn random_weight<R: Rng + ?Sized>(rng: &mut R, shape: &ProgramShape) -> Weight {
    if rng.gen_bool(shape.hard_probability) {
        Weight::Alpha
    } else {
        Weight::int(rng.gen_range(shape.soft_range.0..=shape.soft_range.1))
    }
}

/// A random program whose signature is exactly `shape.atoms`.
pub fn random_program<R: Rng + ?Sized>(rng: &mut R, shape: &ProgramShape) -> WeightedProgram {
    let n = rng.gen_range(shape.min_rules..=shape.max_rules);
    let rules: Vec<(Weight, Formula)> = (0..n)
        .map(|_| {
            let w = random_weight(rng, shape);
            (w, random_formula(rng, &shape.atoms, shape.max_depth))
        })
        .collect();
    WeightedProgram::with_declared(shape.signature(), rules).expect("small signature")
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn generated_programs_respect_shape() {
        let shape = ProgramShape::small(3, 4);
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let p = random_program(&mut rng, &shape);
            assert!(p.len() <= 4);
            assert_eq!(p.signature().len(), 3);
            for r in p.rules() {
                if let Some(w) = r.weight.as_integer() {
                    assert!((-3..=3).contains(&w));
                }
            }
        }
    }

    #[test]
    fn same_seed_same_program() {
        let shape = ProgramShape::small(2, 3);
        let a = random_program(&mut ChaCha8Rng::seed_from_u64(11), &shape);
        let b = random_program(&mut ChaCha8Rng::seed_from_u64(11), &shape);
        assert_eq!(a, b);
    }
}

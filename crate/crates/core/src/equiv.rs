//! Weak, structural and strong equivalence of weighted programs.
//!
//! Both programs are first lifted to the union of their signatures. Every
//! search runs from the greatest interpretation down (bitset order), and
//! inside one `X` from the greatest `Y ⊆ X` down, so all structural methods
//! report the same witness pair.

use std::fmt;

use num_rational::BigRational;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::classical::{choice, classically_equivalent, holds, reduct_all};
use crate::delta::{delta_condition_check, DeltaCheck, DeltaMode};
use crate::error::{Error, Result};
use crate::formula::{Formula, Interpretation, Signature, WeightedProgram};
use crate::gen::{random_program, ProgramShape};
use crate::ht::{is_soft_ht_model, HtInterpretation};
use crate::lpmln::{
    distribution, penalty_components, satisfied_part, total_weight, unsatisfied_part, WeightExpr,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum VerdictKind {
    Weak,
    Structural,
    Strong,
}

impl fmt::Display for VerdictKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            VerdictKind::Weak => "weakly",
            VerdictKind::Structural => "structurally",
            VerdictKind::Strong => "strongly",
        })
    }
}

/// The constant relating two programs' weights at every interpretation.
///
/// `total` relates the satisfied parts, `TW(F_X) = total * TW(G_X)`;
/// `penalty` relates the unsatisfied parts,
/// `TW(F \ F_X) = penalty * TW(G \ G_X)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CExpression {
    pub total: WeightExpr,
    pub penalty: WeightExpr,
}

impl CExpression {
    /// `(c1, c2)` with `penalty = e^(c1 + c2*alpha)`.
    pub fn penalty_pair(&self) -> (BigRational, i64) {
        match &self.penalty {
            WeightExpr::Exp { soft, hard } => (soft.clone(), *hard),
            WeightExpr::Zero => unreachable!("ratios of total weights are never zero"),
        }
    }
}

/// Why two programs are not equivalent.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Witness {
    /// `TW(F_X) != c * TW(G_X)` for the candidate `c`.
    WeightMismatch {
        x: Interpretation,
        tw_f: WeightExpr,
        tw_g: WeightExpr,
    },
    /// The reducts of the satisfied parts at `x` differ on `y ⊆ x`.
    ReductInequivalence { x: Interpretation, y: Interpretation },
    /// The probability of `x` differs.
    DistributionMismatch { x: Interpretation },
}

impl Witness {
    pub fn x(&self) -> Interpretation {
        match self {
            Witness::WeightMismatch { x, .. }
            | Witness::ReductInequivalence { x, .. }
            | Witness::DistributionMismatch { x } => *x,
        }
    }

    pub fn describe(&self, sig: &Signature) -> String {
        match self {
            Witness::WeightMismatch { x, tw_f, tw_g } => format!(
                "weights break the w-expression at X = {}: TW(F_X) = {tw_f}, TW(G_X) = {tw_g}",
                sig.format(*x)
            ),
            Witness::ReductInequivalence { x, y } => format!(
                "reducts differ at X = {} (countermodel Y = {})",
                sig.format(*x),
                sig.format(*y)
            ),
            Witness::DistributionMismatch { x } => {
                format!("probabilities differ at X = {}", sig.format(*x))
            }
        }
    }
}

/// Outcome of an equivalence check.
///
/// A failed check always carries a witness, and a successful strong check
/// always carries its constant.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub kind: VerdictKind,
    pub result: bool,
    pub c_expression: Option<CExpression>,
    pub witness: Option<Witness>,
}

impl Verdict {
    fn holds(kind: VerdictKind, c_expression: Option<CExpression>) -> Verdict {
        Verdict {
            kind,
            result: true,
            c_expression,
            witness: None,
        }
    }

    fn fails(kind: VerdictKind, c_expression: Option<CExpression>, witness: Witness) -> Verdict {
        Verdict {
            kind,
            result: false,
            c_expression,
            witness: Some(witness),
        }
    }

    /// One-line human summary.
    pub fn describe(&self, sig: &Signature) -> String {
        let mut out = if self.result {
            format!("{} equivalent", self.kind)
        } else {
            format!("not {} equivalent", self.kind)
        };
        if self.result {
            if let Some(c) = &self.c_expression {
                let (c1, c2) = c.penalty_pair();
                out += &format!(
                    ", c = {} (penalty form c1 = {c1}, c2 = {c2})",
                    c.total
                );
            }
        }
        if let Some(w) = &self.witness {
            out += ": ";
            out += &w.describe(sig);
        }
        out
    }
}

/// Ways of deciding structural equivalence; all of them must agree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum StructuralMethod {
    /// Reducts of the satisfied parts are classically equivalent for every `X`.
    Reduct,
    /// Reducts of the choice programs are classically equivalent for every `X`.
    ChoiceReduct,
    /// Same soft HT models.
    SoftHt,
    /// Translated satisfied parts agree, with unprimed atoms fixed to `X`.
    DeltaPerX,
    /// Translated choice programs agree.
    DeltaChoice,
}

impl StructuralMethod {
    pub const ALL: [StructuralMethod; 5] = [
        StructuralMethod::Reduct,
        StructuralMethod::ChoiceReduct,
        StructuralMethod::SoftHt,
        StructuralMethod::DeltaPerX,
        StructuralMethod::DeltaChoice,
    ];
}

/// Both programs over the union of their signatures.
fn lift(pf: &WeightedProgram, pg: &WeightedProgram) -> Result<(Signature, WeightedProgram, WeightedProgram)> {
    let sig = pf.signature().union(pg.signature())?;
    Ok((sig.clone(), pf.over_signature(&sig)?, pg.over_signature(&sig)?))
}

/// Same distribution over the union signature.
pub fn check_weak(pf: &WeightedProgram, pg: &WeightedProgram) -> Result<Verdict> {
    let (_, pf, pg) = lift(pf, pg)?;
    let (df, dg) = (distribution(&pf)?, distribution(&pg)?);
    Ok(match df.first_difference(&dg) {
        None => Verdict::holds(VerdictKind::Weak, None),
        Some(x) => Verdict::fails(VerdictKind::Weak, None, Witness::DistributionMismatch { x }),
    })
}

/// The candidate constant read off at `X = ∅`.
pub fn find_w_expression(pf: &WeightedProgram, pg: &WeightedProgram) -> CExpression {
    let x = Interpretation::EMPTY;
    let total = total_weight(&satisfied_part(pf, x)) / total_weight(&satisfied_part(pg, x));
    let (sf, hf) = penalty_components(&unsatisfied_part(pf, x));
    let (sg, hg) = penalty_components(&unsatisfied_part(pg, x));
    CExpression {
        total,
        penalty: WeightExpr::exp(sf - sg, hf - hg),
    }
}

/// Greatest `Y ⊆ x` on which `f` and `g` differ.
fn greatest_difference(sig: &Signature, x: Interpretation, f: &Formula, g: &Formula) -> Option<Interpretation> {
    x.subsets().rev().find(|&y| holds(sig, y, f) != holds(sig, y, g))
}

/// Countermodel to the equivalence of `fx^x` and `gx^x`.
fn reduct_difference<'a>(
    sig: &Signature,
    x: Interpretation,
    fx: impl IntoIterator<Item = &'a Formula>,
    gx: impl IntoIterator<Item = &'a Formula>,
) -> Option<Interpretation> {
    let (rf, rg) = (reduct_all(fx, sig, x), reduct_all(gx, sig, x));
    if classically_equivalent(&rf, &rg, sig).is_equivalent() {
        return None;
    }
    // Every atom left in a reduct belongs to `x`, so a countermodel inside `x` exists.
    Some(greatest_difference(sig, x, &rf, &rg).expect("countermodel within x"))
}

fn satisfied_reduct_difference(
    sig: &Signature,
    x: Interpretation,
    pf: &WeightedProgram,
    pg: &WeightedProgram,
) -> Option<Interpretation> {
    let (fx, gx) = (satisfied_part(pf, x), satisfied_part(pg, x));
    reduct_difference(sig, x, fx.formulas(), gx.formulas())
}

/// Structural equivalence by a single method.
pub fn check_structural(
    pf: &WeightedProgram,
    pg: &WeightedProgram,
    method: StructuralMethod,
) -> Result<Verdict> {
    let (sig, pf, pg) = lift(pf, pg)?;
    let found: Option<(Interpretation, Interpretation)> = match method {
        StructuralMethod::Reduct => sig.interpretations().rev().find_map(|x| {
            satisfied_reduct_difference(&sig, x, &pf, &pg).map(|y| (x, y))
        }),
        StructuralMethod::ChoiceReduct => {
            let cf: Vec<Formula> = pf.formulas().map(choice).collect();
            let cg: Vec<Formula> = pg.formulas().map(choice).collect();
            sig.interpretations()
                .rev()
                .find_map(|x| reduct_difference(&sig, x, &cf, &cg).map(|y| (x, y)))
        }
        StructuralMethod::SoftHt => sig.interpretations().rev().find_map(|x| {
            x.subsets().rev().find_map(|y| {
                let i = HtInterpretation::new(y, x).expect("y is a subset of x");
                (is_soft_ht_model(i, &pf) != is_soft_ht_model(i, &pg)).then_some((x, y))
            })
        }),
        StructuralMethod::DeltaPerX | StructuralMethod::DeltaChoice => {
            let mode = if method == StructuralMethod::DeltaPerX {
                DeltaMode::PerInterpretation
            } else {
                DeltaMode::Choice
            };
            match delta_condition_check(&pf, &pg, mode)? {
                DeltaCheck::Holds => None,
                DeltaCheck::Countermodel { there, here } => Some((there, here)),
            }
        }
    };
    Ok(match found {
        None => Verdict::holds(VerdictKind::Structural, None),
        Some((x, y)) => Verdict::fails(
            VerdictKind::Structural,
            None,
            Witness::ReductInequivalence { x, y },
        ),
    })
}

/// Runs every method and fails with [`Error::Internal`] unless they return
/// identical verdicts.
pub fn check_structural_all(pf: &WeightedProgram, pg: &WeightedProgram) -> Result<Verdict> {
    let first = check_structural(pf, pg, StructuralMethod::ALL[0])?;
    for method in &StructuralMethod::ALL[1..] {
        let other = check_structural(pf, pg, *method)?;
        if other != first {
            return Err(Error::Internal(format!(
                "structural methods disagree: {:?} gave {first:?}, {method:?} gave {other:?}",
                StructuralMethod::ALL[0]
            )));
        }
    }
    Ok(first)
}

/// Strong equivalence: one constant relates the weights at every `X`, and
/// the reducts of the satisfied parts agree at every `X`.
///
/// The weight condition is checked in both the satisfied-part and the
/// unsatisfied-part form; a disagreement between the two is reported as
/// [`Error::Internal`].
pub fn check_strong(pf: &WeightedProgram, pg: &WeightedProgram) -> Result<Verdict> {
    let (sig, pf, pg) = lift(pf, pg)?;
    let c = find_w_expression(&pf, &pg);
    for x in sig.interpretations().rev() {
        let (fx, gx) = (satisfied_part(&pf, x), satisfied_part(&pg, x));
        let (tw_f, tw_g) = (total_weight(&fx), total_weight(&gx));
        let total_ok = tw_f == &c.total * &tw_g;
        let penalty_ok = total_weight(&unsatisfied_part(&pf, x))
            == &c.penalty * &total_weight(&unsatisfied_part(&pg, x));
        if total_ok != penalty_ok {
            return Err(Error::Internal(format!(
                "weight conditions disagree at X = {}",
                sig.format(x)
            )));
        }
        if !total_ok {
            let w = Witness::WeightMismatch { x, tw_f, tw_g };
            return Ok(Verdict::fails(VerdictKind::Strong, Some(c), w));
        }
        if let Some(y) = reduct_difference(&sig, x, fx.formulas(), gx.formulas()) {
            let w = Witness::ReductInequivalence { x, y };
            return Ok(Verdict::fails(VerdictKind::Strong, Some(c), w));
        }
    }
    Ok(Verdict::holds(VerdictKind::Strong, Some(c)))
}

/// The interpretation where `pf ∪ h` and `pg ∪ h` disagree, if any.
pub fn context_mismatch(
    pf: &WeightedProgram,
    pg: &WeightedProgram,
    h: &WeightedProgram,
) -> Result<Option<Interpretation>> {
    let (fh, gh) = (pf.union(h)?, pg.union(h)?);
    let (_, fh, gh) = lift(&fh, &gh)?;
    Ok(distribution(&fh)?.first_difference(&distribution(&gh)?))
}

/// Samples `trials` random context programs over the union signature and
/// returns the first one that separates the two programs.
///
/// Contexts have one to three rules with weights in `-3..=3` or `alpha`.
/// This is an independent oracle for [`check_strong`], not a decision
/// procedure: `None` proves nothing.
pub fn randomized_context_falsifier(
    pf: &WeightedProgram,
    pg: &WeightedProgram,
    trials: usize,
    seed: u64,
) -> Result<Option<(WeightedProgram, Interpretation)>> {
    let sig = pf.signature().union(pg.signature())?;
    let mut shape = ProgramShape::small(0, 3);
    shape.atoms = sig.atoms().to_vec();
    shape.min_rules = 1;
    shape.max_depth = 2;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..trials {
        let h = random_program(&mut rng, &shape);
        if let Some(x) = context_mismatch(pf, pg, &h)? {
            return Ok(Some((h, x)));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parse_program;
    use crate::lpmln::WeightExpr;

    fn prog(text: &str) -> WeightedProgram {
        parse_program(text).unwrap()
    }

    const F: &str = "0 : not a.\n2 : b <- a.\n3 : a <- not not a.";
    const G: &str = "2 : not a | b.\n1 : a | not a.";
    const F_PRIME: &str = "0 : not a.\n2 : b <- a.\n3 : a <- a.";
    const G_PRIME: &str = "3 : not a | b.\n1 : a | not a.";
    const EX1_F: &str = "2 : a | b.\n1 : <- a & b.";
    const EX1_G: &str = "1 : a <- not b.\n1 : b <- not a.\n1 : <- a & b.";
    const EX1_H: &str = "1 : a <- b.\n1 : b <- a.";

    fn set(p: &WeightedProgram, names: &[&str]) -> Interpretation {
        p.signature().interpretation(names).unwrap()
    }

    #[test]
    fn strong_example_pair() {
        let v = check_strong(&prog(F), &prog(G)).unwrap();
        assert!(v.result);
        let c = v.c_expression.unwrap();
        assert_eq!(c.total, WeightExpr::of_int(2, 0));
        assert_eq!(c.penalty_pair(), (BigRational::from_integer(0.into()), 0));
    }

    #[test]
    fn strong_failures() {
        let g = prog(G);
        let v = check_strong(&prog(F_PRIME), &g).unwrap();
        assert_eq!(
            v.witness,
            Some(Witness::ReductInequivalence {
                x: set(&g, &["a", "b"]),
                y: set(&g, &["b"])
            })
        );
        let v = check_strong(&prog(F), &prog(G_PRIME)).unwrap();
        match v.witness {
            Some(Witness::WeightMismatch { x, tw_f, tw_g }) => {
                assert_eq!(x, set(&g, &["a"]));
                assert_eq!(tw_f, WeightExpr::of_int(3, 0));
                assert_eq!(tw_g, WeightExpr::of_int(1, 0));
            }
            other => panic!("{other:?}"),
        }
        assert_eq!(v.c_expression.unwrap().total, WeightExpr::of_int(1, 0));
    }

    #[test]
    fn w_expression_of_identical_programs() {
        let c = find_w_expression(&prog(F), &prog(F));
        assert_eq!(c.total, WeightExpr::one());
        assert_eq!(c.penalty, WeightExpr::one());
    }

    #[test]
    fn weak_checks() {
        assert!(check_weak(&prog(EX1_F), &prog(EX1_G)).unwrap().result);
        let v = check_weak(&prog("1 : a."), &prog("2 : a.")).unwrap();
        assert!(!v.result);
        assert!(matches!(v.witness, Some(Witness::DistributionMismatch { .. })));
    }

    #[test]
    fn structural_checks() {
        let v = check_structural_all(&prog("2 : not a | b."), &prog("2 : not not a -> b.")).unwrap();
        assert!(v.result);
        let (f, g) = (prog(EX1_F), prog(EX1_G));
        let v = check_structural_all(&f, &g).unwrap();
        assert_eq!(v.witness.unwrap().x(), set(&f, &["a", "b"]));
        let f = prog("1 : (f -> g) -> k.");
        let g = prog("1 : (g | not f) -> k.\n1 : k | f | not g.");
        let v = check_structural_all(&f, &g).unwrap();
        assert_eq!(v.witness.unwrap().x(), set(&f, &["f", "g"]));
    }

    #[test]
    fn example_context_separates() {
        let (f, g, h) = (prog(EX1_F), prog(EX1_G), prog(EX1_H));
        assert_eq!(context_mismatch(&f, &g, &h).unwrap(), Some(set(&f, &["a", "b"])));
        assert_eq!(
            context_mismatch(&prog(F_PRIME), &prog(G), &h).unwrap(),
            Some(set(&prog(G), &["a", "b"]))
        );
        assert!(randomized_context_falsifier(&f, &g, 3000, 1).unwrap().is_some());
        assert!(randomized_context_falsifier(&prog(F), &prog(G), 100, 1).unwrap().is_none());
    }

    #[test]
    fn verdict_json_round_trip() {
        let v = check_strong(&prog(F), &prog(G_PRIME)).unwrap();
        let text = serde_json::to_string(&v).unwrap();
        assert_eq!(serde_json::from_str::<Verdict>(&text).unwrap(), v);
        let s = prog(G).signature().clone();
        assert_eq!(
            check_strong(&prog(F), &prog(G)).unwrap().describe(&s),
            "strongly equivalent, c = e^2 (penalty form c1 = 0, c2 = 0)"
        );
    }
}

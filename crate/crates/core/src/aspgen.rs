//! Text encodings of the equivalence conditions for an external ASP solver,
//! and a small interpreter for the Δ-based documents so their intended
//! status can be checked without one.
//!
//! Four kinds of document are produced:
//!
//! - `P` charges each violated rule to an `*_unsat_*` atom and sums the
//!   charges per program with aggregates;
//! - `Pstar_soft` and `Pstar_hard` are `P` plus one constraint each, and
//!   have no stable model iff the soft (resp. hard) part of the weight
//!   condition holds at every interpretation;
//! - `P1ss` and `P2ss` encode the two directions of the structural
//!   condition with primed copies, and have no stable model iff that
//!   direction holds.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::classical::{choice, stable_models};
use crate::delta::{delta_of_choice_program, PrimedSignature};
use crate::error::{Error, Result};
use crate::formula::{parse_formula_in, render, Dialect, Formula, Signature, Weight, WeightedProgram};
use crate::lpmln::{penalty_components, unsatisfied_part};

/// Names the generated documents use for themselves, plus solver keywords.
pub const RESERVED: [&str; 11] = [
    "f_unsat_s", "f_unsat_h", "g_unsat_s", "g_unsat_h", "f_pw_s", "g_pw_s", "f_pw_h", "g_pw_h",
    "not", "true", "false",
];

/// Which solver front end a document targets.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AspDialect {
    /// Needs f2lp to turn formulas into rules.
    F2lp,
    /// Plain rules that clingo accepts directly.
    ClingoRuleForm,
}

/// An emitted program: `%` header comments followed by one rule per line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AspDocument {
    pub header: Vec<String>,
    /// Every line ends with `.`.
    pub lines: Vec<String>,
    pub dialect: AspDialect,
}

impl fmt::Display for AspDocument {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for h in &self.header {
            if h.is_empty() {
                writeln!(f, "%")?;
            } else {
                writeln!(f, "% {h}")?;
            }
        }
        for l in &self.lines {
            writeln!(f, "{l}")?;
        }
        Ok(())
    }
}

const WHITESPACE_NOTE: &str =
    "Whitespace is not significant: two documents are the same if they agree after removing every \
     space except a single one between two identifier characters.";

/// The comparison form of one line: whitespace survives only as a single
/// space between two identifier characters.
pub fn canonical_line(line: &str) -> String {
    let word = |c: char| c.is_ascii_alphanumeric() || c == '_';
    let mut out = String::new();
    let mut pending_space = false;
    for c in line.chars() {
        if c.is_whitespace() {
            pending_space = true;
            continue;
        }
        if pending_space && word(c) && out.chars().last().is_some_and(word) {
            out.push(' ');
        }
        pending_space = false;
        out.push(c);
    }
    out
}

/// [`canonical_line`] applied to every line, dropping blank lines.
pub fn canonical_text(text: &str) -> Vec<String> {
    text.lines()
        .map(canonical_line)
        .filter(|l| !l.is_empty())
        .collect()
}

fn check_names(sig: &Signature) -> Result<()> {
    for a in sig.atoms() {
        let mut chars = a.chars();
        let valid = chars.next().is_some_and(|c| c.is_ascii_lowercase())
            && chars.all(|c| c.is_ascii_alphanumeric() || c == '_');
        if !valid {
            return Err(Error::InvalidAspName(a.to_string()));
        }
        if RESERVED.contains(&&**a) {
            return Err(Error::NameCollision(a.to_string()));
        }
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Lit<'a> {
    Pos(&'a str),
    Neg(&'a str),
    NegNeg(&'a str),
}

impl Lit<'_> {
    fn text(self) -> String {
        match self {
            Lit::Pos(a) => a.to_string(),
            Lit::Neg(a) => format!("not {a}"),
            Lit::NegNeg(a) => format!("not not {a}"),
        }
    }

    /// `not l` as a body literal; only defined for head literals.
    fn negated(self) -> String {
        match self {
            Lit::Pos(a) => format!("not {a}"),
            Lit::Neg(a) => format!("not not {a}"),
            Lit::NegNeg(_) => unreachable!("not a head literal"),
        }
    }
}

fn as_atom(f: &Formula) -> Option<&str> {
    match f {
        Formula::Atom(a) => Some(a),
        _ => None,
    }
}

fn body_lit(f: &Formula) -> Option<Lit<'_>> {
    if let Some(a) = as_atom(f) {
        return Some(Lit::Pos(a));
    }
    let g = f.as_negation()?;
    if let Some(a) = as_atom(g) {
        return Some(Lit::Neg(a));
    }
    as_atom(g.as_negation()?).map(Lit::NegNeg)
}

fn head_lit(f: &Formula) -> Option<Lit<'_>> {
    body_lit(f).filter(|l| !matches!(l, Lit::NegNeg(_)))
}

/// Conjunction of body literals; `top` is the empty conjunction.
fn body_lits<'a>(f: &'a Formula, out: &mut Vec<Lit<'a>>) -> Option<()> {
    if f.is_top() {
        return Some(());
    }
    if let Some(l) = body_lit(f) {
        out.push(l);
        return Some(());
    }
    match f {
        Formula::And(l, r) => {
            body_lits(l, out)?;
            body_lits(r, out)
        }
        _ => None,
    }
}

/// Disjunction of head literals; `bot` is the empty disjunction.
fn head_lits<'a>(f: &'a Formula, out: &mut Vec<Lit<'a>>) -> Option<()> {
    if *f == Formula::Bottom {
        return Some(());
    }
    if let Some(l) = head_lit(f) {
        out.push(l);
        return Some(());
    }
    match f {
        Formula::Or(l, r) => {
            head_lits(l, out)?;
            head_lits(r, out)
        }
        _ => None,
    }
}

/// `(head, body)` when `f` is a clingo rule `head :- body`.
///
/// A negated atom is read as the head literal `not a`; any other
/// implication into `bot` is a constraint.
fn rule_shape(f: &Formula) -> Option<(Vec<Lit<'_>>, Vec<Lit<'_>>)> {
    let (mut head, mut body) = (Vec::new(), Vec::new());
    match f {
        Formula::Implies(b, h) if head_lit(f).is_none() => {
            body_lits(b, &mut body)?;
            head_lits(h, &mut head)?;
        }
        _ => head_lits(f, &mut head)?,
    }
    Some((head, body))
}

fn rule_line(head: &str, body: &[String]) -> String {
    match (head.is_empty(), body.is_empty()) {
        (_, true) => format!("{head}."),
        (true, false) => format!(":- {}.", body.join(", ")),
        (false, false) => format!("{head}:- {}.", body.join(", ")),
    }
}

fn wrapped(f: &Formula) -> String {
    let text = render(f, Dialect::F2lp);
    if as_atom(f).is_some() {
        text
    } else {
        format!("({text})")
    }
}

/// The two lines charging one rule; returns whether rule form was used.
fn charge_rule(out: &mut Vec<String>, prefix: char, i: usize, weight: &Weight, f: &Formula) -> Result<bool> {
    let unsat = match weight {
        Weight::Alpha => format!("{prefix}_unsat_h({i})"),
        Weight::Soft(_) => {
            let w = weight.as_integer().ok_or_else(|| Error::NonIntegerWeight {
                index: i,
                weight: weight.to_string(),
            })?;
            format!("{prefix}_unsat_s({w},{i})")
        }
    };
    let guard = format!("not {unsat}");
    Ok(match rule_shape(f) {
        Some((head, body)) => {
            let head_text = head.iter().map(|l| l.text()).collect::<Vec<_>>().join(" | ");
            let body_text: Vec<String> = body.iter().map(|l| l.text()).collect();
            let mut rule_body = body_text.clone();
            rule_body.push(guard);
            out.push(rule_line(&head_text, &rule_body));
            let mut unsat_body = body_text;
            unsat_body.extend(head.iter().map(|l| l.negated()));
            out.push(rule_line(&unsat, &unsat_body));
            true
        }
        None => {
            out.push(rule_line(&wrapped(f), &[guard]));
            out.push(rule_line(&unsat, &[format!("not {}", wrapped(f))]));
            false
        }
    })
}

fn choice_line(atoms: impl IntoIterator<Item = impl AsRef<str>>) -> Option<String> {
    let names: Vec<String> = atoms.into_iter().map(|a| a.as_ref().to_string()).collect();
    (!names.is_empty()).then(|| format!("{{{}}}.", names.join("; ")))
}

/// The weight-accounting lines shared by `P` and both `P*` documents.
fn weight_lines(pf: &WeightedProgram, pg: &WeightedProgram) -> Result<(Signature, Vec<String>, bool)> {
    let sig = pf.signature().union(pg.signature())?;
    check_names(&sig)?;
    let mut lines: Vec<String> = choice_line(sig.atoms()).into_iter().collect();
    let mut rule_form = true;
    for (prefix, p) in [('f', pf), ('g', pg)] {
        for r in p.rules() {
            rule_form &= charge_rule(&mut lines, prefix, r.index, &r.weight, &r.formula)?;
        }
    }
    let (nf, ng) = (pf.len(), pg.len());
    lines.push(format!("f_pw_s(S) :- S = #sum{{X, Y: f_unsat_s(X, Y), Y=1..{nf}}}."));
    lines.push(format!("g_pw_s(S) :- S = #sum{{X, Y: g_unsat_s(X, Y), Y=1..{ng}}}."));
    lines.push(format!("f_pw_h(S) :- S = #count{{W: f_unsat_h(W), W=1..{nf}}}."));
    lines.push(format!("g_pw_h(S) :- S = #count{{W: g_unsat_h(W), W=1..{ng}}}."));
    Ok((sig, lines, rule_form))
}

fn weight_header() -> Vec<String> {
    vec![
        WHITESPACE_NOTE.to_string(),
        "The choice rule on the first line makes every interpretation of the atoms an answer \
         set candidate."
            .to_string(),
        "Hard rules are charged to the unary f_unsat_h(i) and g_unsat_h(i) throughout, so the \
         #count aggregates see one argument."
            .to_string(),
    ]
}

/// The program `P`: one answer set per interpretation, carrying the soft
/// and hard penalty totals of both programs. With `fix_empty` every atom
/// is forced false, leaving the single answer set that yields `(c1, c2)`.
pub fn emit_weight_program(
    pf: &WeightedProgram,
    pg: &WeightedProgram,
    fix_empty: bool,
) -> Result<AspDocument> {
    let (sig, mut lines, rule_form) = weight_lines(pf, pg)?;
    if fix_empty {
        lines.extend(sig.atoms().iter().map(|a| format!("not {a}.")));
    }
    Ok(AspDocument {
        header: weight_header(),
        lines,
        dialect: if rule_form {
            AspDialect::ClingoRuleForm
        } else {
            AspDialect::F2lp
        },
    })
}

fn offset(var: &str, c: &str) -> String {
    match c.strip_prefix('-') {
        Some(abs) => format!("{var} - {abs}"),
        None => format!("{var} + {c}"),
    }
}

/// The two `P*` documents `(soft, hard)`.
///
/// Each keeps only the answer sets where its equation fails, so it has no
/// stable model iff that equation holds at every interpretation.
pub fn emit_weight_check(
    pf: &WeightedProgram,
    pg: &WeightedProgram,
    c1: i64,
    c2: i64,
) -> Result<(AspDocument, AspDocument)> {
    let (_, lines, rule_form) = weight_lines(pf, pg)?;
    let dialect = if rule_form {
        AspDialect::ClingoRuleForm
    } else {
        AspDialect::F2lp
    };
    let split_note = "The soft and hard equations are checked by two separate documents. A single \
                      document with both constraints would also have no answer set when every \
                      interpretation satisfies at least one of the two equations, which is \
                      weaker than both equations holding everywhere.";
    let doc = |kind: &str, c: i64| {
        let mut header = weight_header();
        header.push(split_note.to_string());
        header.push(format!("This document checks the {kind} equation with c = {c}."));
        let mut all = lines.clone();
        let (f, g) = match kind {
            "soft" => ("f_pw_s", "g_pw_s"),
            _ => ("f_pw_h", "g_pw_h"),
        };
        all.push(format!(":- {f}(X), {g}(Y), X = {}.", offset("Y", &c.to_string())));
        AspDocument {
            header,
            lines: all,
            dialect,
        }
    };
    Ok((doc("soft", c1), doc("hard", c2)))
}

/// Whether the `(soft, hard)` documents from [`emit_weight_check`] are
/// meant to have no stable model, computed directly from the programs.
pub fn weight_check_expected_unsat(
    pf: &WeightedProgram,
    pg: &WeightedProgram,
    c1: i64,
    c2: i64,
) -> Result<(bool, bool)> {
    let sig = pf.signature().union(pg.signature())?;
    let (pf, pg) = (pf.over_signature(&sig)?, pg.over_signature(&sig)?);
    let (mut soft, mut hard) = (true, true);
    for x in sig.interpretations() {
        let (sf, hf) = penalty_components(&unsatisfied_part(&pf, x));
        let (sg, hg) = penalty_components(&unsatisfied_part(&pg, x));
        soft &= sf - sg == num_rational::BigRational::from_integer(c1.into());
        hard &= hf - hg == c2;
    }
    Ok((soft, hard))
}

/// The penalty-form constant at the empty interpretation as integers, as
/// the solver would read it off the answer set of `P` with `fix_empty`.
pub fn integer_penalty_constants(pf: &WeightedProgram, pg: &WeightedProgram) -> Result<(i64, i64)> {
    for p in [pf, pg] {
        if let Some(r) = p.rules().iter().find(|r| !r.weight.is_hard() && r.weight.as_integer().is_none()) {
            return Err(Error::NonIntegerWeight {
                index: r.index,
                weight: r.weight.to_string(),
            });
        }
    }
    let x = crate::formula::Interpretation::EMPTY;
    let (sf, hf) = penalty_components(&unsatisfied_part(pf, x));
    let (sg, hg) = penalty_components(&unsatisfied_part(pg, x));
    let c1 = (sf - sg).to_integer();
    let c1 = i64::try_from(&c1).map_err(|_| Error::Internal(format!("constant {c1} out of range")))?;
    Ok((c1, hf - hg))
}

/// The structural documents `(P1ss, P2ss)`.
///
/// `P1ss` has a stable model iff some pair `<Y, X>` is a soft HT model of
/// `pf` but not of `pg`; `P2ss` is the mirror image. Primed atoms are
/// spelled by doubling the name.
pub fn emit_delta_programs(
    pf: &WeightedProgram,
    pg: &WeightedProgram,
) -> Result<(AspDocument, AspDocument)> {
    let sig = pf.signature().union(pg.signature())?;
    check_names(&sig)?;
    let ps = PrimedSignature::new(&sig)?;
    let names = ps.ascii_names(&RESERVED)?;
    let ascii = |f: &Formula| render(&f.map_atoms(&|a: &Arc<str>| names[a].clone()), Dialect::F2lp);
    let (df, dg) = (delta_of_choice_program(pf, &ps), delta_of_choice_program(pg, &ps));
    let atoms: Vec<Arc<str>> = sig
        .atoms()
        .iter()
        .flat_map(|a| [a.clone(), names[&ps.primed(a)].clone()])
        .collect();
    let doc = |pos: &[Formula], neg: &[Formula]| {
        let mut lines: Vec<String> = choice_line(&atoms).into_iter().collect();
        for a in sig.atoms() {
            lines.push(format!("{} -> {a}.", names[&ps.primed(a)]));
        }
        lines.extend(pos.iter().map(|f| format!("{}.", ascii(f))));
        lines.push(format!(
            "{}.",
            ascii(&Formula::not(Formula::conjunction(neg.iter().cloned())))
        ));
        AspDocument {
            header: vec![
                WHITESPACE_NOTE.to_string(),
                "Atoms ending in a doubled name stand for the here-world copy of that atom."
                    .to_string(),
            ],
            lines,
            dialect: AspDialect::F2lp,
        }
    };
    Ok((doc(&df, &dg), doc(&dg, &df)))
}

/// Decides whether a document made of one choice rule over all of its
/// atoms followed by f2lp formulas has a stable model.
///
/// The choice rule `{a; b}.` is read as `a | not a` and `b | not b`, and
/// stable models are enumerated directly. Lines starting with `%` are
/// skipped.
pub fn choice_document_has_stable_model(text: &str) -> Result<bool> {
    let mut lines = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('%'));
    let bad = |l: &str, message: &str| Error::Syntax {
        line: 0,
        column: 0,
        message: format!("{message}: `{l}`"),
    };
    let mut sig = Signature::new();
    let mut gamma = Vec::new();
    let mut rest: Vec<&str> = Vec::new();
    match lines.next() {
        Some(first) if first.starts_with('{') => {
            let inner = first
                .strip_prefix('{')
                .and_then(|s| s.strip_suffix("}."))
                .ok_or_else(|| bad(first, "malformed choice rule"))?;
            for a in inner.split(';').map(str::trim) {
                sig.insert(a)?;
                gamma.push(choice(&Formula::atom(a)));
            }
        }
        Some(first) => rest.push(first),
        None => {}
    }
    rest.extend(lines);
    for l in rest {
        let body = l.strip_suffix('.').ok_or_else(|| bad(l, "missing final `.`"))?;
        let f = parse_formula_in(body, Dialect::F2lp)?;
        sig.check_covers(&f)?;
        gamma.push(f);
    }
    Ok(!stable_models(&gamma, &sig).is_empty())
}

/// Renaming used by [`emit_delta_programs`], exposed for diagnostics.
pub fn primed_ascii_names(sig: &Signature) -> Result<HashMap<Arc<str>, Arc<str>>> {
    PrimedSignature::new(sig)?.ascii_names(&RESERVED)
}

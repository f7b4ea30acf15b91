//! Propositional formulas, weighted programs, and their text formats.
//!
//! Formulas are kept in a core of four connectives plus atoms and `bot`:
//! `top` is stored as `bot -> bot` and `not F` as `F -> bot`. The printers
//! turn those shapes back into `top` and `not`, so the round trip through
//! text is structural.

mod parse;
pub(crate) mod program;
mod render;
mod signature;

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

pub use parse::{parse_formula, parse_formula_in, parse_program};
pub use program::{Rule, Weight, WeightedProgram};
pub use render::{render, Dialect};
pub use signature::{Interpretation, Signature, Subsets, MAX_ATOMS};

/// A propositional formula over named atoms.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Formula {
    Atom(Arc<str>),
    Bottom,
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
}

impl Formula {
    pub fn atom(name: impl Into<Arc<str>>) -> Formula {
        Formula::Atom(name.into())
    }

    /// `bot -> bot`.
    pub fn top() -> Formula {
        Formula::implies(Formula::Bottom, Formula::Bottom)
    }

    /// `f -> bot`.
    pub fn not(f: Formula) -> Formula {
        Formula::implies(f, Formula::Bottom)
    }

    pub fn and(lhs: Formula, rhs: Formula) -> Formula {
        Formula::And(Box::new(lhs), Box::new(rhs))
    }

    pub fn or(lhs: Formula, rhs: Formula) -> Formula {
        Formula::Or(Box::new(lhs), Box::new(rhs))
    }

    pub fn implies(lhs: Formula, rhs: Formula) -> Formula {
        Formula::Implies(Box::new(lhs), Box::new(rhs))
    }

    /// Left-nested conjunction; the empty conjunction is `top`.
    pub fn conjunction<I: IntoIterator<Item = Formula>>(items: I) -> Formula {
        items
            .into_iter()
            .reduce(Formula::and)
            .unwrap_or_else(Formula::top)
    }

    /// Left-nested disjunction; the empty disjunction is `bot`.
    pub fn disjunction<I: IntoIterator<Item = Formula>>(items: I) -> Formula {
        items
            .into_iter()
            .reduce(Formula::or)
            .unwrap_or(Formula::Bottom)
    }

    pub fn is_top(&self) -> bool {
        matches!(self, Formula::Implies(l, r) if **l == Formula::Bottom && **r == Formula::Bottom)
    }

    /// Returns `F` when `self` is `F -> bot` (but not `top`).
    pub fn as_negation(&self) -> Option<&Formula> {
        match self {
            Formula::Implies(l, r) if **r == Formula::Bottom && !self.is_top() => Some(l),
            _ => None,
        }
    }

    /// The atoms occurring in the formula.
    pub fn atoms(&self) -> BTreeSet<&str> {
        let mut out = BTreeSet::new();
        self.for_each_atom(&mut |a| {
            out.insert(&**a);
        });
        out
    }

    /// Visits atom occurrences left to right.
    pub fn for_each_atom<'a>(&'a self, visit: &mut impl FnMut(&'a Arc<str>)) {
        match self {
            Formula::Atom(a) => visit(a),
            Formula::Bottom => {}
            Formula::And(l, r) | Formula::Or(l, r) | Formula::Implies(l, r) => {
                l.for_each_atom(visit);
                r.for_each_atom(visit);
            }
        }
    }

    /// Renames every atom through `rename`.
    pub fn map_atoms(&self, rename: &impl Fn(&Arc<str>) -> Arc<str>) -> Formula {
        match self {
            Formula::Atom(a) => Formula::Atom(rename(a)),
            Formula::Bottom => Formula::Bottom,
            Formula::And(l, r) => Formula::and(l.map_atoms(rename), r.map_atoms(rename)),
            Formula::Or(l, r) => Formula::or(l.map_atoms(rename), r.map_atoms(rename)),
            Formula::Implies(l, r) => {
                Formula::implies(l.map_atoms(rename), r.map_atoms(rename))
            }
        }
    }

    /// Classical truth under a valuation of atom names.
    pub fn eval(&self, val: &impl Fn(&str) -> bool) -> bool {
        match self {
            Formula::Atom(a) => val(a),
            Formula::Bottom => false,
            Formula::And(l, r) => l.eval(val) && r.eval(val),
            Formula::Or(l, r) => l.eval(val) || r.eval(val),
            Formula::Implies(l, r) => !l.eval(val) || r.eval(val),
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render(self, Dialect::Internal))
    }
}

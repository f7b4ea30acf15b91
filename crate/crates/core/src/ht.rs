//! Logic of here-and-there over pairs `<Y, X>` with `Y ⊆ X`.
//!
//! Satisfaction follows the two-world clauses directly (no translation to
//! classical logic), so it can be cross-checked against the reduct and the
//! primed-atom translation.

use std::fmt;

use crate::formula::{Formula, Interpretation, Signature, WeightedProgram};
use crate::lpmln::satisfied_part;

/// The two worlds, ordered `Here < There`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum World {
    Here,
    There,
}

/// A pair `<here, there>` with `here ⊆ there`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HtInterpretation {
    here: Interpretation,
    there: Interpretation,
}

impl HtInterpretation {
    /// `None` unless `here ⊆ there`.
    pub fn new(here: Interpretation, there: Interpretation) -> Option<HtInterpretation> {
        here.is_subset_of(there)
            .then_some(HtInterpretation { here, there })
    }

    pub fn total(x: Interpretation) -> HtInterpretation {
        HtInterpretation { here: x, there: x }
    }

    pub fn here(self) -> Interpretation {
        self.here
    }

    pub fn there(self) -> Interpretation {
        self.there
    }

    pub fn is_total(self) -> bool {
        self.here == self.there
    }

    /// Every pair over `sig`: `there` ascending, then `here` ascending.
    pub fn all(sig: &Signature) -> impl Iterator<Item = HtInterpretation> {
        sig.interpretations()
            .flat_map(|x| x.subsets().map(move |y| HtInterpretation { here: y, there: x }))
    }

    pub fn display<'a>(&self, sig: &'a Signature) -> impl fmt::Display + 'a {
        let (y, x) = (self.here, self.there);
        DisplayPair { sig, y, x }
    }
}

struct DisplayPair<'a> {
    sig: &'a Signature,
    y: Interpretation,
    x: Interpretation,
}

impl fmt::Display for DisplayPair<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{}, {}>", self.sig.format(self.y), self.sig.format(self.x))
    }
}

/// Whether `<Y, X, w>` satisfies `f`.
///
/// Panics if `f` mentions atoms outside `sig`.
pub fn ht_satisfies_at(sig: &Signature, i: HtInterpretation, w: World, f: &Formula) -> bool {
    match f {
        Formula::Atom(a) => {
            let idx = sig
                .index_of(a)
                .unwrap_or_else(|| panic!("atom `{a}` outside signature"));
            match w {
                World::Here => i.here.contains(idx),
                World::There => i.there.contains(idx),
            }
        }
        Formula::Bottom => false,
        Formula::And(l, r) => ht_satisfies_at(sig, i, w, l) && ht_satisfies_at(sig, i, w, r),
        Formula::Or(l, r) => ht_satisfies_at(sig, i, w, l) || ht_satisfies_at(sig, i, w, r),
        Formula::Implies(l, r) => [World::Here, World::There]
            .into_iter()
            .filter(|v| *v >= w)
            .all(|v| !ht_satisfies_at(sig, i, v, l) || ht_satisfies_at(sig, i, v, r)),
    }
}

/// HT satisfaction at the `Here` world.
pub fn ht_satisfies(sig: &Signature, i: HtInterpretation, f: &Formula) -> bool {
    ht_satisfies_at(sig, i, World::Here, f)
}

/// Whether `i` HT-satisfies every rule of `p` that `i.there()` satisfies classically.
pub fn is_soft_ht_model(i: HtInterpretation, p: &WeightedProgram) -> bool {
    let sig = p.signature();
    satisfied_part(p, i.there)
        .formulas()
        .all(|f| ht_satisfies(sig, i, f))
}

/// All soft HT models of `p` over its signature, in [`HtInterpretation::all`] order.
pub fn soft_ht_models(p: &WeightedProgram) -> Vec<HtInterpretation> {
    HtInterpretation::all(p.signature())
        .filter(|&i| is_soft_ht_model(i, p))
        .collect()
}

/// Whether `<X, X>` is an equilibrium model of `f`.
pub fn is_equilibrium(sig: &Signature, x: Interpretation, f: &Formula) -> bool {
    ht_satisfies(sig, HtInterpretation::total(x), f)
        && !x
            .proper_subsets()
            .any(|y| ht_satisfies(sig, HtInterpretation { here: y, there: x }, f))
}

/// Whether `<X, X>` is a soft equilibrium model of `p`.
pub fn is_soft_equilibrium(x: Interpretation, p: &WeightedProgram) -> bool {
    !x.proper_subsets()
        .any(|y| is_soft_ht_model(HtInterpretation { here: y, there: x }, p))
}

/// All soft equilibrium models of `p`, in bitset order.
pub fn soft_equilibrium_models(p: &WeightedProgram) -> Vec<Interpretation> {
    p.signature()
        .interpretations()
        .filter(|&x| is_soft_equilibrium(x, p))
        .collect()
}

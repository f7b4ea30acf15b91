use std::collections::HashMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Interpretations are bitsets, so a signature holds at most this many atoms.
pub const MAX_ATOMS: usize = 64;

/// An ordered set of atom names. The position of an atom is its bit in an
/// [`Interpretation`].
#[derive(Clone, Debug, Default)]
pub struct Signature {
    atoms: Vec<Arc<str>>,
    index: HashMap<Arc<str>, usize>,
}

impl PartialEq for Signature {
    fn eq(&self, other: &Self) -> bool {
        self.atoms == other.atoms
    }
}

impl Eq for Signature {}

impl Signature {
    pub fn new() -> Signature {
        Signature::default()
    }

    pub fn from_atoms<I, S>(atoms: I) -> Result<Signature>
    where
        I: IntoIterator<Item = S>,
        S: Into<Arc<str>>,
    {
        let mut sig = Signature::new();
        for a in atoms {
            sig.insert(a)?;
        }
        Ok(sig)
    }

    /// Adds an atom if absent and returns its position.
    pub fn insert(&mut self, atom: impl Into<Arc<str>>) -> Result<usize> {
        let atom = atom.into();
        if let Some(&i) = self.index.get(&atom) {
            return Ok(i);
        }
        if self.atoms.len() == MAX_ATOMS {
            return Err(Error::TooManyAtoms {
                count: MAX_ATOMS + 1,
                limit: MAX_ATOMS,
            });
        }
        let i = self.atoms.len();
        self.atoms.push(atom.clone());
        self.index.insert(atom, i);
        Ok(i)
    }

    /// Atoms of `self` followed by the atoms of `other` not already present.
    pub fn union(&self, other: &Signature) -> Result<Signature> {
        let mut sig = self.clone();
        for a in &other.atoms {
            sig.insert(a.clone())?;
        }
        Ok(sig)
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn atoms(&self) -> &[Arc<str>] {
        &self.atoms
    }

    pub fn index_of(&self, atom: &str) -> Option<usize> {
        self.index.get(atom).copied()
    }

    pub fn contains(&self, atom: &str) -> bool {
        self.index.contains_key(atom)
    }

    /// The interpretation making every atom true.
    pub fn full(&self) -> Interpretation {
        match self.atoms.len() {
            MAX_ATOMS => Interpretation(u64::MAX),
            n => Interpretation((1u64 << n) - 1),
        }
    }

    /// All interpretations over the signature, in increasing bitset order.
    pub fn interpretations(&self) -> Subsets {
        self.full().subsets()
    }

    /// Builds an interpretation from atom names.
    pub fn interpretation<S: AsRef<str>>(&self, atoms: &[S]) -> Result<Interpretation> {
        let mut bits = 0u64;
        for a in atoms {
            let i = self
                .index_of(a.as_ref())
                .ok_or_else(|| Error::AtomOutsideSignature(a.as_ref().to_string()))?;
            bits |= 1 << i;
        }
        Ok(Interpretation(bits))
    }

    /// Names of the atoms true in `x`, in signature order.
    pub fn names(&self, x: Interpretation) -> Vec<&str> {
        self.atoms
            .iter()
            .enumerate()
            .filter(|(i, _)| x.contains(*i))
            .map(|(_, a)| &**a)
            .collect()
    }

    /// `{a, b}` style rendering of an interpretation.
    pub fn format(&self, x: Interpretation) -> String {
        format!("{{{}}}", self.names(x).join(", "))
    }

    /// Fails with the first atom of `formula` missing from the signature.
    pub fn check_covers(&self, formula: &super::Formula) -> Result<()> {
        match formula.atoms().into_iter().find(|a| !self.contains(a)) {
            Some(a) => Err(Error::AtomOutsideSignature(a.to_string())),
            None => Ok(()),
        }
    }

    /// Valuation closure reading atom truth from `x`.
    ///
    /// Panics on atoms outside the signature; callers establish coverage first.
    pub(crate) fn valuation(&self, x: Interpretation) -> impl Fn(&str) -> bool + '_ {
        move |a| match self.index.get(a) {
            Some(&i) => x.contains(i),
            None => panic!("atom `{a}` outside signature"),
        }
    }
}

/// A set of atoms, stored as a bitset over a [`Signature`].
#[derive(
    Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize,
)]
#[serde(transparent)]
pub struct Interpretation(pub u64);

impl Interpretation {
    pub const EMPTY: Interpretation = Interpretation(0);

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    pub fn with(self, i: usize) -> Interpretation {
        Interpretation(self.0 | 1 << i)
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset_of(self, other: Interpretation) -> bool {
        self.0 & !other.0 == 0
    }

    /// All subsets (including `self`), in increasing bitset order.
    pub fn subsets(self) -> Subsets {
        Subsets {
            mask: self.0,
            lo: 0,
            hi: self.0,
            done: false,
        }
    }

    /// Subsets strictly smaller than `self`, in increasing bitset order.
    pub fn proper_subsets(self) -> impl Iterator<Item = Interpretation> {
        self.subsets().filter(move |y| *y != self)
    }
}

/// Iterator over the subsets of a bitmask in increasing numeric order;
/// `.rev()` yields decreasing order.
#[derive(Clone, Debug)]
pub struct Subsets {
    mask: u64,
    lo: u64,
    hi: u64,
    done: bool,
}

impl Iterator for Subsets {
    type Item = Interpretation;

    fn next(&mut self) -> Option<Interpretation> {
        if self.done {
            return None;
        }
        let cur = self.lo;
        if cur == self.hi {
            self.done = true;
        } else {
            // Set every bit outside the mask, increment, and keep the mask bits.
            self.lo = (cur | !self.mask).wrapping_add(1) & self.mask;
        }
        Some(Interpretation(cur))
    }
}

impl DoubleEndedIterator for Subsets {
    fn next_back(&mut self) -> Option<Interpretation> {
        if self.done {
            return None;
        }
        let cur = self.hi;
        if cur == self.lo {
            self.done = true;
        } else {
            self.hi = cur.wrapping_sub(1) & self.mask;
        }
        Some(Interpretation(cur))
    }
}

//! Interpretations, satisfaction, the total completion `J'` of an
//! interpretation, and least models of programs read as definite clauses
//! over literals.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::syntax::{Alphabet, Atom, Literal, ObjectiveLiteral, Program, Rule};

/// Default cap on the number of atoms whose interpretations are enumerated.
pub const DEFAULT_ENUMERATION_LIMIT: usize = 12;

/// A set of literals where both objective and default literals are plain
/// propositional symbols.
pub type LiteralSet = BTreeSet<Literal>;

/// A consistent set of objective literals.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Interpretation(BTreeSet<ObjectiveLiteral>);

impl Interpretation {
    pub fn new(literals: impl IntoIterator<Item = ObjectiveLiteral>) -> Result<Self> {
        let set: BTreeSet<ObjectiveLiteral> = literals.into_iter().collect();
        for l in &set {
            if !l.strongly_negated && set.contains(&l.strong_complement()) {
                return Err(Error::InconsistentInterpretation(l.atom.name().to_string()));
            }
        }
        Ok(Interpretation(set))
    }

    pub fn empty() -> Self {
        Interpretation::default()
    }

    /// Parses `{a, -b}`; the braces are optional.
    pub fn parse(text: &str) -> Result<Self> {
        let trimmed = text.trim();
        let inner = trimmed
            .strip_prefix('{')
            .and_then(|s| s.strip_suffix('}'))
            .unwrap_or(trimmed);
        let mut literals = Vec::new();
        for item in inner.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (negated, name) = match item.strip_prefix('-') {
                Some(rest) => (true, rest.trim_start()),
                None => (false, item),
            };
            literals.push(ObjectiveLiteral { atom: Atom::new(name)?, strongly_negated: negated });
        }
        Interpretation::new(literals)
    }

    pub fn contains(&self, literal: &ObjectiveLiteral) -> bool {
        self.0.contains(literal)
    }

    pub fn iter(&self) -> impl Iterator<Item = &ObjectiveLiteral> {
        self.0.iter()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn alphabet(&self) -> Alphabet {
        Alphabet::new(self.0.iter().map(|l| l.atom.clone()))
    }

    pub fn satisfies<T: Satisfy + ?Sized>(&self, x: &T) -> bool {
        x.satisfied_by(self)
    }
}

impl fmt::Display for Interpretation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{l}")?;
        }
        f.write_str("}")
    }
}

/// Anything whose truth can be checked in an interpretation.
pub trait Satisfy {
    fn satisfied_by(&self, interpretation: &Interpretation) -> bool;
}

impl Satisfy for ObjectiveLiteral {
    fn satisfied_by(&self, j: &Interpretation) -> bool {
        j.contains(self)
    }
}

impl Satisfy for Literal {
    fn satisfied_by(&self, j: &Interpretation) -> bool {
        j.contains(&self.objective) != self.default_negated
    }
}

impl Satisfy for BTreeSet<Literal> {
    fn satisfied_by(&self, j: &Interpretation) -> bool {
        self.iter().all(|l| l.satisfied_by(j))
    }
}

impl Satisfy for Rule {
    fn satisfied_by(&self, j: &Interpretation) -> bool {
        !self.body.satisfied_by(j) || self.head.satisfied_by(j)
    }
}

impl Satisfy for Program {
    fn satisfied_by(&self, j: &Interpretation) -> bool {
        self.rules.iter().all(|r| r.satisfied_by(j))
    }
}

impl Satisfy for [&Rule] {
    fn satisfied_by(&self, j: &Interpretation) -> bool {
        self.iter().all(|r| r.satisfied_by(j))
    }
}

/// The objective literals a semantics ranges over.
///
/// Extended universes hold `p` and `-p` for every atom. Atom-only universes
/// are what the original update semantics for programs without strong
/// negation use; there `J'` mentions atoms only.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Universe {
    atoms: Alphabet,
    extended: bool,
}

impl Universe {
    pub fn extended(atoms: Alphabet) -> Self {
        Universe { atoms, extended: true }
    }

    pub fn atoms_only(atoms: Alphabet) -> Self {
        Universe { atoms, extended: false }
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.atoms
    }

    pub fn is_extended(&self) -> bool {
        self.extended
    }

    pub fn objective_literals(&self) -> impl Iterator<Item = ObjectiveLiteral> + '_ {
        let extended = self.extended;
        self.atoms.iter().flat_map(move |a| {
            let pos = ObjectiveLiteral::positive(a.clone());
            let neg = extended.then(|| ObjectiveLiteral::negative(a.clone()));
            std::iter::once(pos).chain(neg)
        })
    }

    pub fn literal_count(&self) -> usize {
        self.atoms.len() * if self.extended { 2 } else { 1 }
    }

    /// Number of interpretations over this universe: `3^n` or `2^n`.
    pub fn candidate_count(&self) -> u128 {
        let base: u128 = if self.extended { 3 } else { 2 };
        base.pow(self.atoms.len() as u32)
    }
}

/// `J' = J ∪ not (L \ J)` over the universe.
pub fn twiall(j: &Interpretation, universe: &Universe) -> LiteralSet {
    universe
        .objective_literals()
        .map(|l| {
            if j.contains(&l) {
                Literal::objective(l)
            } else {
                Literal::default_negation(l)
            }
        })
        .chain(j.iter().cloned().map(Literal::objective))
        .collect()
}

/// Heads of the rules whose bodies are contained in `s`.
pub fn tp_step<'a>(rules: impl IntoIterator<Item = &'a Rule>, s: &LiteralSet) -> LiteralSet {
    rules
        .into_iter()
        .filter(|r| r.body.is_subset(s))
        .map(|r| r.head.clone())
        .collect()
}

/// The chain `T^0(∅) ⊆ T^1(∅) ⊆ ...` up to and including the first repeat.
pub fn consequence_stages<'a, I>(rules: I) -> Vec<LiteralSet>
where
    I: IntoIterator<Item = &'a Rule> + Clone,
{
    let bound = rules.clone().into_iter().map(|r| &r.head).collect::<BTreeSet<_>>().len() + 1;
    let mut stages = vec![LiteralSet::new()];
    loop {
        let next = tp_step(rules.clone(), stages.last().unwrap());
        if &next == stages.last().unwrap() {
            break;
        }
        stages.push(next);
        assert!(stages.len() <= bound + 1, "immediate consequence chain exceeded {bound} steps");
    }
    stages
}

/// Least model of the rules with every literal read as a propositional atom.
pub fn least_model<'a, I>(rules: I) -> LiteralSet
where
    I: IntoIterator<Item = &'a Rule> + Clone,
{
    consequence_stages(rules).pop().unwrap_or_default()
}

/// All interpretations over the universe, each atom cycling through
/// absent, positive and (in extended universes) strongly negated; the first
/// atom is the most significant position.
pub fn enumerate_interpretations(universe: &Universe, limit: usize) -> Result<Interpretations> {
    if universe.alphabet().len() > limit {
        return Err(Error::EnumerationLimit { atoms: universe.alphabet().len(), limit });
    }
    let atoms: Vec<Atom> = universe.alphabet().iter().cloned().collect();
    Ok(Interpretations {
        digits: vec![0; atoms.len()],
        atoms,
        radix: if universe.is_extended() { 3 } else { 2 },
        done: false,
    })
}

pub struct Interpretations {
    atoms: Vec<Atom>,
    digits: Vec<u8>,
    radix: u8,
    done: bool,
}

impl Iterator for Interpretations {
    type Item = Interpretation;

    fn next(&mut self) -> Option<Interpretation> {
        if self.done {
            return None;
        }
        let current = Interpretation(
            self.atoms
                .iter()
                .zip(&self.digits)
                .filter_map(|(a, d)| match d {
                    1 => Some(ObjectiveLiteral::positive(a.clone())),
                    2 => Some(ObjectiveLiteral::negative(a.clone())),
                    _ => None,
                })
                .collect(),
        );
        self.done = true;
        for d in self.digits.iter_mut().rev() {
            *d += 1;
            if *d < self.radix {
                self.done = false;
                break;
            }
            *d = 0;
        }
        Some(current)
    }
}

//! Early recovery: a consistent update by facts that solves every conflict in
//! a set of facts must leave at least one model; the generalised form asks
//! the same of acyclic DLPs whose conflicts are all solved later on.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::single::LevelMapping;
use crate::syntax::{Atom, Dlp, ObjectiveLiteral, Program, Rule};
use crate::updates::{models, EvalOptions, SemanticsId};

use super::{evaluation_guard, PropertyCase, PropertyReport, Witness};

fn require_facts(program: &Program) -> Result<()> {
    match program.iter().find(|r| !r.is_fact()) {
        Some(rule) => Err(Error::NotAFact(rule.to_string())),
        None => Ok(()),
    }
}

fn conflicting_pairs(program: &Program) -> impl Iterator<Item = (&Rule, &Rule)> {
    program.iter().enumerate().flat_map(move |(i, pi)| {
        program.iter().skip(i + 1).filter(move |sigma| pi.head.conflicts_with(&sigma.head)).map(move |sigma| (pi, sigma))
    })
}

/// `ρ` resolves the conflict between `π` and `σ` if its head conflicts with
/// either of theirs.
fn resolves(rho: &Rule, pi: &Rule, sigma: &Rule) -> bool {
    rho.head.conflicts_with(&pi.head) || rho.head.conflicts_with(&sigma.head)
}

/// A set of facts is consistent when it has a model, i.e. no two of its
/// heads conflict.
pub fn is_consistent_facts(program: &Program) -> bool {
    program.is_facts() && conflicting_pairs(program).next().is_none()
}

/// Every pair of conflicting facts in `p` is resolved by some fact of `u`.
pub fn solves_all_conflicts(p: &Program, u: &Program) -> Result<bool> {
    require_facts(p)?;
    require_facts(u)?;
    Ok(conflicting_pairs(p).all(|(pi, sigma)| u.iter().any(|rho| resolves(rho, pi, sigma))))
}

pub fn check_early_recovery(
    semantics: SemanticsId,
    facts: &Program,
    update: &Program,
    opts: &EvalOptions,
) -> Result<PropertyReport> {
    let property = PropertyCase::EarlyRecovery;
    let dlp = Dlp::new(vec![facts.clone(), update.clone()])?;
    let inputs = vec![dlp.clone()];
    let not_applicable = |why: &str| Ok(PropertyReport::not_applicable(property, semantics, inputs.clone(), why));
    if !facts.is_facts() {
        return not_applicable("the original program is not a set of facts");
    }
    if !update.is_facts() {
        return not_applicable("the update is not a set of facts");
    }
    if !is_consistent_facts(update) {
        return not_applicable("the update is inconsistent");
    }
    if !solves_all_conflicts(facts, update)? {
        return not_applicable("the update leaves a conflict unsolved");
    }
    let found = match evaluation_guard(models(&dlp, semantics, opts), property, semantics, &inputs)? {
        Ok(found) => found,
        Err(report) => return Ok(report),
    };
    let witness = found.is_empty().then_some(Witness::NoModels);
    Ok(PropertyReport::from_check(property, semantics, inputs, witness))
}

/// Longest-path layering of the atom dependency graph: an atom without
/// non-fact rules sits at level 0, any other atom one above the highest body
/// atom of its rules. `p` and `-p` share a node, and default negation adds
/// edges like any other body literal. Returns `None` on a cycle.
pub fn is_acyclic(program: &Program) -> Option<LevelMapping> {
    let mut edges: BTreeMap<Atom, Vec<Atom>> = BTreeMap::new();
    for atom in program.alphabet().iter() {
        edges.entry(atom.clone()).or_default();
    }
    for rule in program.iter().filter(|r| !r.is_fact()) {
        let below = edges.entry(rule.head.atom().clone()).or_default();
        below.extend(rule.body.iter().map(|l| l.atom().clone()));
    }

    #[derive(Clone, Copy, PartialEq)]
    enum Mark {
        Active,
        Done(u32),
    }

    fn visit(atom: &Atom, edges: &BTreeMap<Atom, Vec<Atom>>, marks: &mut BTreeMap<Atom, Mark>) -> Option<u32> {
        match marks.get(atom) {
            Some(Mark::Done(level)) => return Some(*level),
            Some(Mark::Active) => return None,
            None => {}
        }
        marks.insert(atom.clone(), Mark::Active);
        let mut level = 0;
        for below in &edges[atom] {
            level = level.max(visit(below, edges, marks)? + 1);
        }
        marks.insert(atom.clone(), Mark::Done(level));
        Some(level)
    }

    let mut marks = BTreeMap::new();
    let mut mapping = LevelMapping::new();
    for atom in edges.keys() {
        let level = visit(atom, &edges, &mut marks)?;
        mapping.set(ObjectiveLiteral::positive(atom.clone()), level);
        mapping.set(ObjectiveLiteral::negative(atom.clone()), level);
    }
    Some(mapping)
}

/// Checks a mapping against the definition of acyclicity literally:
/// `ℓ(p) = ℓ(-p)` for every atom, and the head of every rule sits strictly
/// above each of its body literals.
pub fn verify_acyclic(program: &Program, mapping: &LevelMapping) -> bool {
    let strong_symmetric = program.alphabet().iter().all(|a| {
        mapping.objective_level(&ObjectiveLiteral::positive(a.clone()))
            == mapping.objective_level(&ObjectiveLiteral::negative(a.clone()))
    });
    strong_symmetric
        && program
            .iter()
            .all(|r| r.body.iter().all(|b| mapping.level(&r.head) > mapping.level(b)))
}

/// Every conflict inside a component is resolved by a fact of some later
/// component.
pub fn all_conflicts_solved(dlp: &Dlp) -> bool {
    let components = dlp.components();
    components.iter().enumerate().all(|(i, program)| {
        conflicting_pairs(program).all(|(pi, sigma)| {
            components[i + 1..]
                .iter()
                .flat_map(|later| later.iter())
                .any(|rho| rho.is_fact() && resolves(rho, pi, sigma))
        })
    })
}

pub fn check_generalised_early_recovery(
    semantics: SemanticsId,
    dlp: &Dlp,
    opts: &EvalOptions,
) -> Result<PropertyReport> {
    let property = PropertyCase::GeneralisedEarlyRecovery;
    let inputs = vec![dlp.clone()];
    if is_acyclic(&dlp.flatten()).is_none() {
        return Ok(PropertyReport::not_applicable(property, semantics, inputs, "the rules are cyclic"));
    }
    if !all_conflicts_solved(dlp) {
        return Ok(PropertyReport::not_applicable(property, semantics, inputs, "a conflict is left unsolved"));
    }
    let found = match evaluation_guard(models(dlp, semantics, opts), property, semantics, &inputs)? {
        Ok(found) => found,
        Err(report) => return Ok(report),
    };
    let witness = found.is_empty().then_some(Witness::NoModels);
    Ok(PropertyReport::from_check(property, semantics, inputs, witness))
}

//! Stable and well-supported models of a single extended program.
//!
//! Stable models are characterised by the fixpoint `J' = least(P ∪ def(J))`
//! rather than by reducts. Well-supported models are decided by building a
//! level mapping from the iteration indices of that same fixpoint and then
//! checking the mapping against the definition.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::Result;
use crate::interp::{
    consequence_stages, enumerate_interpretations, least_model, twiall, Interpretation, Universe,
};
use crate::syntax::{Literal, ObjectiveLiteral, Program, Rule};
use crate::updates::{EvalOptions, ModelSet, SemanticsId};

/// Natural-number levels for objective literals; `level(not l) = level(l)`.
///
/// Literals without an explicit entry sit at level 0.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LevelMapping(BTreeMap<ObjectiveLiteral, u32>);

impl LevelMapping {
    pub fn new() -> Self {
        LevelMapping::default()
    }

    pub fn uniform(universe: &Universe, level: u32) -> Self {
        LevelMapping(universe.objective_literals().map(|l| (l, level)).collect())
    }

    pub fn set(&mut self, literal: ObjectiveLiteral, level: u32) {
        self.0.insert(literal, level);
    }

    pub fn with(mut self, literal: ObjectiveLiteral, level: u32) -> Self {
        self.set(literal, level);
        self
    }

    pub fn objective_level(&self, literal: &ObjectiveLiteral) -> u32 {
        self.0.get(literal).copied().unwrap_or(0)
    }

    pub fn level(&self, literal: &Literal) -> u32 {
        self.objective_level(&literal.objective)
    }

    /// Maximum level in the set; 0 for the empty set.
    pub fn up<'a>(&self, literals: impl IntoIterator<Item = &'a Literal>) -> u32 {
        literals.into_iter().map(|l| self.level(l)).max().unwrap_or(0)
    }

    /// Minimum level in the set; `None` for the empty set.
    pub fn down<'a>(&self, literals: impl IntoIterator<Item = &'a Literal>) -> Option<u32> {
        literals.into_iter().map(|l| self.level(l)).min()
    }

    /// `level(head) > up(body)`.
    pub fn supports(&self, rule: &Rule) -> bool {
        self.level(&rule.head) > self.up(&rule.body)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&ObjectiveLiteral, u32)> {
        self.0.iter().map(|(l, v)| (l, *v))
    }
}

impl fmt::Display for LevelMapping {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (l, v)) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{l}={v}")?;
        }
        Ok(())
    }
}

/// `def(J) = { not l. | l ∉ J }` over the universe.
pub fn def_assumptions(j: &Interpretation, universe: &Universe) -> Program {
    universe
        .objective_literals()
        .filter(|l| !j.contains(l))
        .map(|l| Rule::fact(Literal::default_negation(l)))
        .collect()
}

pub fn is_stable_model(program: &Program, j: &Interpretation, universe: &Universe) -> bool {
    let defaults = def_assumptions(j, universe);
    least_model(program.iter().chain(defaults.iter())) == twiall(j, universe)
}

pub fn stable_models(program: &Program, opts: &EvalOptions) -> Result<ModelSet> {
    let universe = opts.universe(program.alphabet(), true);
    let models: Vec<Interpretation> = enumerate_interpretations(&universe, opts.limit)?
        .filter(|j| is_stable_model(program, j, &universe))
        .collect();
    Ok(ModelSet::new(SemanticsId::Sm, models))
}

/// Builds `ℓ(l) = min { k | l ∈ T_Q^k(∅) }` for `Q = P ∪ def(J)` (0 outside
/// `J`) and returns it when `J` is well-supported under it.
pub fn find_level_mapping(
    program: &Program,
    j: &Interpretation,
    universe: &Universe,
) -> Option<LevelMapping> {
    if !j.satisfies(program) {
        return None;
    }
    let defaults = def_assumptions(j, universe);
    let stages = consequence_stages(program.iter().chain(defaults.iter()));
    let mut mapping = LevelMapping::new();
    for l in universe.objective_literals() {
        let first = if j.contains(&l) {
            let as_literal = Literal::objective(l.clone());
            stages.iter().position(|s| s.contains(&as_literal))? as u32
        } else {
            0
        };
        mapping.set(l, first);
    }
    verify_well_supported(program, j, &mapping).then_some(mapping)
}

/// `J ⊨ P` and every `l ∈ J` heads a rule with a true body of strictly
/// lower level.
pub fn verify_well_supported(program: &Program, j: &Interpretation, mapping: &LevelMapping) -> bool {
    j.satisfies(program)
        && j.iter().all(|l| {
            program.iter().any(|r| {
                r.head.is_objective()
                    && &r.head.objective == l
                    && j.satisfies(&r.body)
                    && mapping.supports(r)
            })
        })
}

pub fn well_supported_models(program: &Program, opts: &EvalOptions) -> Result<ModelSet> {
    let universe = opts.universe(program.alphabet(), true);
    let models: Vec<Interpretation> = enumerate_interpretations(&universe, opts.limit)?
        .filter(|j| find_level_mapping(program, j, &universe).is_some())
        .collect();
    Ok(ModelSet::new(SemanticsId::WsSingle, models))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{parse_program, Alphabet, Atom};

    fn interp(text: &str) -> Interpretation {
        Interpretation::parse(text).unwrap()
    }

    fn obj(name: &str) -> ObjectiveLiteral {
        ObjectiveLiteral::positive(Atom::new(name).unwrap())
    }

    fn universe(p: &Program) -> Universe {
        Universe::extended(p.alphabet())
    }

    const IRRELEVANT_P: &str =
        "day :- not night.\nnight :- not day.\nstars :- night, not cloudy.\nnot stars.";

    #[test]
    fn default_assumptions() {
        let u = |s: &str| Universe::extended(Alphabet::parse_list(s).unwrap());
        assert_eq!(def_assumptions(&interp("{}"), &u("p")).to_string(), "not p.\nnot -p.");
        assert_eq!(def_assumptions(&interp("{p}"), &u("p")).to_string(), "not -p.");
        assert_eq!(
            def_assumptions(&interp("{-p}"), &u("p,q")).to_string(),
            "not p.\nnot q.\nnot -q."
        );
    }

    #[test]
    fn stable_model_membership() {
        let p = parse_program(IRRELEVANT_P).unwrap();
        assert!(is_stable_model(&p, &interp("{day}"), &universe(&p)));
        assert!(!is_stable_model(&p, &interp("{night, stars}"), &universe(&p)));
        let conflict = parse_program("p.\n-p.").unwrap();
        assert!(stable_models(&conflict, &EvalOptions::default()).unwrap().is_empty());
    }

    #[test]
    fn stable_model_sets() {
        let opts = EvalOptions::default();
        assert_eq!(stable_models(&Program::default(), &opts).unwrap().render(), ["{}"]);
        let p = parse_program("p :- not q.").unwrap();
        assert_eq!(stable_models(&p, &opts).unwrap().render(), ["{p}"]);
        let p = parse_program(IRRELEVANT_P).unwrap();
        assert_eq!(stable_models(&p, &opts).unwrap().render(), ["{day}"]);
    }

    #[test]
    fn level_mapping_from_iteration_indices() {
        let p = parse_program("p.\nq :- p.").unwrap();
        let m = find_level_mapping(&p, &interp("{p, q}"), &universe(&p)).unwrap();
        assert_eq!((m.objective_level(&obj("p")), m.objective_level(&obj("q"))), (1, 2));

        let p = parse_program("p :- p.").unwrap();
        assert!(find_level_mapping(&p, &interp("{p}"), &universe(&p)).is_none());

        let p = parse_program("p.").unwrap();
        let m = find_level_mapping(&p, &interp("{p}"), &universe(&p)).unwrap();
        assert_eq!(m.objective_level(&obj("p")), 1);
    }

    #[test]
    fn well_supported_verification() {
        let p = parse_program("p.").unwrap();
        assert!(verify_well_supported(&p, &interp("{p}"), &LevelMapping::new().with(obj("p"), 1)));
        let p = parse_program("p :- p.").unwrap();
        for level in 0..4 {
            assert!(!verify_well_supported(&p, &interp("{p}"), &LevelMapping::new().with(obj("p"), level)));
        }
        let p = parse_program("p :- not q.").unwrap();
        let m = LevelMapping::new().with(obj("p"), 1).with(obj("q"), 0);
        assert!(verify_well_supported(&p, &interp("{p}"), &m));
    }

    #[test]
    fn well_supported_model_sets() {
        let opts = EvalOptions::default();
        let p = parse_program("p :- p.").unwrap();
        assert_eq!(well_supported_models(&p, &opts).unwrap().render(), ["{}"]);
        let p = parse_program(IRRELEVANT_P).unwrap();
        assert_eq!(well_supported_models(&p, &opts).unwrap().models(), stable_models(&p, &opts).unwrap().models());
    }

    #[test]
    fn level_accessors() {
        let m = LevelMapping::new().with(obj("p"), 3).with(obj("q"), 1);
        let body: Vec<Literal> = ["not p", "q"].iter().map(|s| crate::syntax::Rule::parse(&format!("{s}.")).unwrap().head).collect();
        assert_eq!(m.up(&body), 3);
        assert_eq!(m.down(&body), Some(1));
        assert_eq!(m.up(&[]), 0);
        assert_eq!(m.down(&[]), None);
    }
}

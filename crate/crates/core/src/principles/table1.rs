//! The eleven desirable properties of rule update semantics. Each property
//! is evaluated on a concrete instance; equations between model sets are
//! compared over the union of the alphabets involved so that both sides
//! range over the same interpretations.

use std::fmt;

use crate::error::{Error, Result};
use crate::interp::Interpretation;
use crate::single::stable_models;
use crate::syntax::{Alphabet, Dlp, Program};
use crate::updates::{models, EvalOptions, ModelSet, SemanticsId};

use super::recovery::is_consistent_facts;
use super::{evaluation_guard, PropertyCase, PropertyReport, Witness};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Table1Case {
    Generalisation,
    Primacy,
    FactUpdate,
    Support,
    Idempotence,
    Absorption,
    Augmentation,
    NonInterference,
    EmptyUpdate,
    Tautologies,
    CausalRejection,
}

impl Table1Case {
    pub const ALL: [Table1Case; 11] = [
        Table1Case::Generalisation,
        Table1Case::Primacy,
        Table1Case::FactUpdate,
        Table1Case::Support,
        Table1Case::Idempotence,
        Table1Case::Absorption,
        Table1Case::Augmentation,
        Table1Case::NonInterference,
        Table1Case::EmptyUpdate,
        Table1Case::Tautologies,
        Table1Case::CausalRejection,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Table1Case::Generalisation => "generalisation",
            Table1Case::Primacy => "primacy",
            Table1Case::FactUpdate => "fact-update",
            Table1Case::Support => "support",
            Table1Case::Idempotence => "idempotence",
            Table1Case::Absorption => "absorption",
            Table1Case::Augmentation => "augmentation",
            Table1Case::NonInterference => "non-interference",
            Table1Case::EmptyUpdate => "empty-update",
            Table1Case::Tautologies => "tautologies",
            Table1Case::CausalRejection => "causal-rejection",
        }
    }

    /// One-line statement of the property.
    pub fn statement(self) -> &'static str {
        match self {
            Table1Case::Generalisation => "mod(<P>) = SM(P)",
            Table1Case::Primacy => "every model of <P_0..P_n-1> satisfies P_n-1",
            Table1Case::FactUpdate => "a sequence of consistent fact sets has the single inertial model",
            Table1Case::Support => "every true literal heads a rule with a true body",
            Table1Case::Idempotence => "mod(<P, P>) = mod(<P>)",
            Table1Case::Absorption => "mod(<P, U, U>) = mod(<P, U>)",
            Table1Case::Augmentation => "if U ⊆ V then mod(<P, U, V>) = mod(<P, V>)",
            Table1Case::NonInterference => "if U, V have disjoint alphabets then mod(<P, U, V>) = mod(<P, V, U>)",
            Table1Case::EmptyUpdate => "removing an empty component does not change the models",
            Table1Case::Tautologies => "adding tautologies to components does not change the models",
            Table1Case::CausalRejection => "a violated rule is overridden by a later conflicting rule with a true body",
        }
    }
}

impl fmt::Display for Table1Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// The inputs each property quantifies over.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Table1Instance {
    Generalisation { program: Program },
    Primacy { dlp: Dlp },
    FactUpdate { dlp: Dlp },
    Support { dlp: Dlp },
    Idempotence { program: Program },
    Absorption { program: Program, update: Program },
    Augmentation { program: Program, update: Program, superset: Program },
    NonInterference { program: Program, first: Program, second: Program },
    EmptyUpdate { dlp: Dlp, index: usize },
    Tautologies { dlp: Dlp, tautologies: Vec<Program> },
    CausalRejection { dlp: Dlp },
}

fn shape(message: impl Into<String>) -> Error {
    Error::Shape(message.into())
}

fn seq(components: &[&Program]) -> Dlp {
    Dlp::new(components.iter().map(|p| (*p).clone()).collect()).expect("non-empty sequence")
}

impl Table1Instance {
    pub fn case(&self) -> Table1Case {
        match self {
            Table1Instance::Generalisation { .. } => Table1Case::Generalisation,
            Table1Instance::Primacy { .. } => Table1Case::Primacy,
            Table1Instance::FactUpdate { .. } => Table1Case::FactUpdate,
            Table1Instance::Support { .. } => Table1Case::Support,
            Table1Instance::Idempotence { .. } => Table1Case::Idempotence,
            Table1Instance::Absorption { .. } => Table1Case::Absorption,
            Table1Instance::Augmentation { .. } => Table1Case::Augmentation,
            Table1Instance::NonInterference { .. } => Table1Case::NonInterference,
            Table1Instance::EmptyUpdate { .. } => Table1Case::EmptyUpdate,
            Table1Instance::Tautologies { .. } => Table1Case::Tautologies,
            Table1Instance::CausalRejection { .. } => Table1Case::CausalRejection,
        }
    }

    /// Interprets the components of a DLP as the programs of the property:
    /// `<P>` for single-program rows (with the rules of all components taken
    /// together as `P`), `<P, U>` for absorption, `<P, U, V>`
    /// for augmentation and non-interference, the first empty component for
    /// immunity to empty updates, and the tautologies already present in
    /// each component for immunity to tautologies.
    pub fn from_dlp(case: Table1Case, dlp: &Dlp) -> Table1Instance {
        let c = dlp.components();
        let get = |i: usize| c.get(i).cloned().unwrap_or_default();
        match case {
            Table1Case::Generalisation => Table1Instance::Generalisation { program: dlp.flatten() },
            Table1Case::Primacy => Table1Instance::Primacy { dlp: dlp.clone() },
            Table1Case::FactUpdate => Table1Instance::FactUpdate { dlp: dlp.clone() },
            Table1Case::Support => Table1Instance::Support { dlp: dlp.clone() },
            Table1Case::Idempotence => Table1Instance::Idempotence { program: dlp.flatten() },
            Table1Case::Absorption => Table1Instance::Absorption { program: get(0), update: get(1) },
            Table1Case::Augmentation => {
                Table1Instance::Augmentation { program: get(0), update: get(1), superset: get(2) }
            }
            Table1Case::NonInterference => {
                Table1Instance::NonInterference { program: get(0), first: get(1), second: get(2) }
            }
            Table1Case::EmptyUpdate => Table1Instance::EmptyUpdate {
                dlp: dlp.clone(),
                index: c.iter().position(Program::is_empty).unwrap_or(c.len()),
            },
            Table1Case::Tautologies => {
                let plain: Vec<Program> =
                    c.iter().map(|p| p.iter().filter(|r| !r.is_tautology()).cloned().collect()).collect();
                let tautologies =
                    c.iter().map(|p| p.iter().filter(|r| r.is_tautology()).cloned().collect()).collect();
                Table1Instance::Tautologies { dlp: Dlp::new(plain).expect("same length"), tautologies }
            }
            Table1Case::CausalRejection => Table1Instance::CausalRejection { dlp: dlp.clone() },
        }
    }

    /// Checks the row-specific side conditions.
    pub fn validate(&self) -> Result<()> {
        match self {
            Table1Instance::FactUpdate { dlp } => {
                if dlp.components().iter().all(is_consistent_facts) {
                    Ok(())
                } else {
                    Err(shape("every component must be a consistent set of facts"))
                }
            }
            Table1Instance::Augmentation { update, superset, .. } => {
                if update.iter().all(|r| superset.rules.contains(r)) {
                    Ok(())
                } else {
                    Err(shape("U must be a subset of V"))
                }
            }
            Table1Instance::NonInterference { first, second, .. } => {
                if first.alphabet().is_disjoint(&second.alphabet()) {
                    Ok(())
                } else {
                    Err(shape("U and V must be over disjoint alphabets"))
                }
            }
            Table1Instance::EmptyUpdate { dlp, index } => match dlp.components().get(*index) {
                _ if dlp.len() < 2 => Err(shape("need at least two components")),
                Some(p) if p.is_empty() => Ok(()),
                Some(_) => Err(shape(format!("component {index} is not empty"))),
                None => Err(shape("no empty component")),
            },
            Table1Instance::Tautologies { dlp, tautologies } => {
                if tautologies.len() != dlp.len() {
                    Err(shape("need one set of tautologies per component"))
                } else if let Some(r) = tautologies.iter().flat_map(|q| q.iter()).find(|r| !r.is_tautology()) {
                    Err(shape(format!("`{r}` is not a tautology")))
                } else {
                    Ok(())
                }
            }
            _ => Ok(()),
        }
    }

    /// The DLPs the property talks about, in the order they are compared.
    pub fn inputs(&self) -> Vec<Dlp> {
        match self {
            Table1Instance::Generalisation { program } => vec![Dlp::singleton(program.clone())],
            Table1Instance::Primacy { dlp }
            | Table1Instance::FactUpdate { dlp }
            | Table1Instance::Support { dlp }
            | Table1Instance::CausalRejection { dlp } => vec![dlp.clone()],
            Table1Instance::Idempotence { program } => {
                vec![seq(&[program, program]), seq(&[program])]
            }
            Table1Instance::Absorption { program, update } => {
                vec![seq(&[program, update, update]), seq(&[program, update])]
            }
            Table1Instance::Augmentation { program, update, superset } => {
                vec![seq(&[program, update, superset]), seq(&[program, superset])]
            }
            Table1Instance::NonInterference { program, first, second } => {
                vec![seq(&[program, first, second]), seq(&[program, second, first])]
            }
            Table1Instance::EmptyUpdate { dlp, index } => {
                let rest: Vec<Program> = dlp
                    .components()
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| i != index)
                    .map(|(_, p)| p.clone())
                    .collect();
                match Dlp::new(rest) {
                    Ok(rest) => vec![dlp.clone(), rest],
                    Err(_) => vec![dlp.clone()],
                }
            }
            Table1Instance::Tautologies { dlp, tautologies } => {
                let with: Vec<Program> = dlp
                    .components()
                    .iter()
                    .zip(tautologies.iter().chain(std::iter::repeat(&Program::default())))
                    .map(|(p, q)| Program::new(p.iter().chain(q.iter()).cloned()))
                    .collect();
                vec![Dlp::new(with).expect("non-empty"), dlp.clone()]
            }
        }
    }
}

/// `{ l | (l.) ∈ P_i for some i, and no later component contains the fact
/// `not l.` or the fact with the strong complement of l }`.
pub fn fact_update_model(dlp: &Dlp) -> Result<Interpretation> {
    let components = dlp.components();
    let inertial = components.iter().enumerate().flat_map(|(i, p)| {
        p.iter()
            .filter(|r| r.is_fact() && r.head.is_objective())
            .filter(move |r| {
                let overriding = [r.head.default_complement(), r.head.strong_complement()];
                !components[i + 1..]
                    .iter()
                    .flat_map(|later| later.iter())
                    .any(|rho| rho.is_fact() && overriding.contains(&rho.head))
            })
            .map(|r| r.head.objective.clone())
    });
    Interpretation::new(inertial)
}

macro_rules! evaluate {
    ($result:expr, $property:expr, $semantics:expr, $inputs:expr) => {
        match evaluation_guard($result, $property, $semantics, $inputs)? {
            Ok(value) => value,
            Err(report) => return Ok(report),
        }
    };
}

fn first_model_violating(
    found: &ModelSet,
    violation: impl Fn(&Interpretation) -> Option<String>,
) -> Option<Witness> {
    found
        .models()
        .iter()
        .find_map(|j| violation(j).map(|reason| Witness::Model { model: j.clone(), reason }))
}

/// Evaluates one property on one instance under `semantics`.
///
/// Shape violations (for example overlapping alphabets for
/// non-interference) are errors; inputs the semantics does not accept
/// produce a not-applicable report.
pub fn check_table1(
    instance: &Table1Instance,
    semantics: SemanticsId,
    opts: &EvalOptions,
) -> Result<PropertyReport> {
    instance.validate()?;
    let property = PropertyCase::Table1(instance.case());
    let inputs = instance.inputs();
    let alphabet = inputs.iter().fold(Alphabet::default(), |acc, d| acc.union(&d.alphabet()));
    let opts = opts.clone().with_extra_atoms(&alphabet);
    let eval = |dlp: &Dlp| models(dlp, semantics, &opts);

    let witness = match instance {
        Table1Instance::Generalisation { program } => {
            let left = evaluate!(eval(&inputs[0]), property, semantics, &inputs);
            let right = stable_models(program, &opts)?;
            (!left.same_models(&right)).then(|| Witness::model_sets(left, right))
        }
        Table1Instance::Idempotence { .. }
        | Table1Instance::Absorption { .. }
        | Table1Instance::Augmentation { .. }
        | Table1Instance::NonInterference { .. }
        | Table1Instance::EmptyUpdate { .. }
        | Table1Instance::Tautologies { .. } => {
            let left = evaluate!(eval(&inputs[0]), property, semantics, &inputs);
            let right = evaluate!(eval(&inputs[1]), property, semantics, &inputs);
            (!left.same_models(&right)).then(|| Witness::model_sets(left, right))
        }
        Table1Instance::Primacy { dlp } => {
            let found = evaluate!(eval(dlp), property, semantics, &inputs);
            let last = dlp.components().last().expect("non-empty");
            first_model_violating(&found, |j| {
                last.iter().find(|r| !j.satisfies(*r)).map(|r| format!("violates `{r}` of the last component"))
            })
        }
        Table1Instance::FactUpdate { dlp } => {
            let expected = fact_update_model(dlp)?;
            let found = evaluate!(eval(dlp), property, semantics, &inputs);
            (found.models() != std::slice::from_ref(&expected))
                .then_some(Witness::Expected { expected, actual: found })
        }
        Table1Instance::Support { dlp } => {
            let found = evaluate!(eval(dlp), property, semantics, &inputs);
            first_model_violating(&found, |j| {
                j.iter()
                    .find(|l| {
                        !dlp.all().any(|(_, r)| {
                            r.head.is_objective() && &r.head.objective == *l && j.satisfies(&r.body)
                        })
                    })
                    .map(|l| format!("`{l}` has no rule with a true body"))
            })
        }
        Table1Instance::CausalRejection { dlp } => {
            let found = evaluate!(eval(dlp), property, semantics, &inputs);
            first_model_violating(&found, |j| {
                dlp.all()
                    .find(|(at, pi)| {
                        !j.satisfies(*pi)
                            && !dlp.all().any(|(by, sigma)| {
                                by.component > at.component
                                    && pi.head.conflicts_with(&sigma.head)
                                    && j.satisfies(&sigma.body)
                            })
                    })
                    .map(|(at, pi)| format!("`{pi}` ({at}) is violated without a later overriding rule"))
            })
        }
    };
    Ok(PropertyReport::from_check(property, semantics, inputs, witness))
}

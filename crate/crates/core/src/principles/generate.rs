//! Seeded random instances. Every generator is a pure function of its seed;
//! generators for properties with hypotheses repair or redraw until the
//! hypotheses hold.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::syntax::{Atom, Dlp, Literal, ObjectiveLiteral, Program, Rule};

use super::recovery::{all_conflicts_solved, is_acyclic, is_consistent_facts, solves_all_conflicts};
use super::table1::{Table1Case, Table1Instance};
use super::{CaseInstance, PropertyCase};

/// Upper bounds for generated DLPs.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GeneratorParams {
    pub max_components: usize,
    pub max_atoms: usize,
    /// Bound on the total number of rules over all components.
    pub max_rules: usize,
    pub max_body: usize,
}

impl Default for GeneratorParams {
    fn default() -> Self {
        GeneratorParams { max_components: 3, max_atoms: 4, max_rules: 7, max_body: 2 }
    }
}

impl GeneratorParams {
    pub fn new(max_components: usize, max_atoms: usize, max_rules: usize, max_body: usize) -> Self {
        GeneratorParams { max_components, max_atoms, max_rules, max_body }
    }

    fn validated(self) -> Self {
        assert!(self.max_components >= 1 && self.max_atoms >= 1, "generator bounds must be positive");
        self
    }
}

const NAMES: [&str; 8] = ["p", "q", "r", "s", "t", "u", "v", "w"];

fn atom_name(i: usize) -> Atom {
    let name = NAMES.get(i).map(|s| s.to_string()).unwrap_or_else(|| format!("x{i}"));
    Atom::new(&name).expect("generated atom names are valid")
}

/// Draws literals and rules over a fixed pool of atoms.
struct Draw {
    rng: ChaCha8Rng,
    strong_negation: bool,
}

impl Draw {
    fn new(seed: u64, strong_negation: bool) -> Self {
        Draw { rng: ChaCha8Rng::seed_from_u64(seed), strong_negation }
    }

    fn atoms(&mut self, max: usize) -> Vec<Atom> {
        let n = self.rng.gen_range(1..=max);
        (0..n).map(atom_name).collect()
    }

    fn objective(&mut self, atoms: &[Atom]) -> ObjectiveLiteral {
        let atom = atoms.choose(&mut self.rng).expect("non-empty atom pool").clone();
        if self.strong_negation && self.rng.gen_bool(0.5) {
            ObjectiveLiteral::negative(atom)
        } else {
            ObjectiveLiteral::positive(atom)
        }
    }

    fn literal(&mut self, atoms: &[Atom]) -> Literal {
        let objective = self.objective(atoms);
        if self.rng.gen_bool(0.5) {
            Literal::default_negation(objective)
        } else {
            Literal::objective(objective)
        }
    }

    fn rule(&mut self, atoms: &[Atom], max_body: usize) -> Rule {
        let head = self.literal(atoms);
        let size = self.rng.gen_range(0..=max_body);
        let body: Vec<Literal> = (0..size).map(|_| self.literal(atoms)).collect();
        Rule::new(head, body)
    }

    fn fact(&mut self, atoms: &[Atom]) -> Rule {
        Rule::fact(self.literal(atoms))
    }

    /// A rule whose head occurs in its body.
    fn tautology(&mut self, atoms: &[Atom], max_body: usize) -> Rule {
        let head = self.literal(atoms);
        let extra = self.rng.gen_range(0..=max_body.saturating_sub(1));
        let mut body: Vec<Literal> = (0..extra).map(|_| self.literal(atoms)).collect();
        body.push(head.clone());
        Rule::new(head, body)
    }

    fn program(&mut self, atoms: &[Atom], rules: usize, max_body: usize) -> Program {
        (0..rules).map(|_| self.rule(atoms, max_body)).collect()
    }

    /// Splits `total` rules over `components` programs.
    fn split(&mut self, total: usize, components: usize) -> Vec<usize> {
        let mut sizes = vec![0; components];
        for _ in 0..total {
            let i = self.rng.gen_range(0..components);
            sizes[i] += 1;
        }
        sizes
    }

    fn dlp(&mut self, atoms: &[Atom], params: &GeneratorParams) -> Dlp {
        let components = self.rng.gen_range(1..=params.max_components);
        let total = self.rng.gen_range(0..=params.max_rules);
        let sizes = self.split(total, components);
        let programs = sizes.into_iter().map(|n| self.program(atoms, n, params.max_body)).collect();
        Dlp::new(programs).expect("at least one component")
    }

    /// Facts added one at a time, skipping any that would conflict.
    fn consistent_facts(&mut self, atoms: &[Atom], count: usize) -> Program {
        let mut facts = Program::default();
        for _ in 0..count {
            let fact = self.fact(atoms);
            if !facts.iter().any(|r| r.head.conflicts_with(&fact.head)) {
                facts.rules.push(fact);
            }
        }
        facts
    }

    /// Heads that resolve the conflict between two heads, within the
    /// allowed vocabulary.
    fn resolving_heads(&self, a: &Literal, b: &Literal) -> Vec<Literal> {
        a.conflicts()
            .into_iter()
            .chain(b.conflicts())
            .filter(|l| self.strong_negation || !l.objective.strongly_negated)
            .collect()
    }
}

/// A random DLP within `params`; strong negation appears only when
/// `strong_negation` is set.
pub fn generate_random_dlp(seed: u64, params: &GeneratorParams, strong_negation: bool) -> Dlp {
    let params = params.validated();
    let mut draw = Draw::new(seed, strong_negation);
    let atoms = draw.atoms(params.max_atoms);
    draw.dlp(&atoms, &params)
}

fn case_seed(case: PropertyCase, seed: u64) -> u64 {
    let index = PropertyCase::ALL.iter().position(|c| *c == case).unwrap_or(0) as u64;
    seed.wrapping_mul(0x9E37_79B9_7F4A_7C15) ^ (index << 56)
}

/// A random instance of `case` that satisfies the property's side
/// conditions (and, for the recovery principles, its hypotheses).
pub fn generate_case(case: PropertyCase, seed: u64, params: &GeneratorParams, strong_negation: bool) -> CaseInstance {
    let params = params.validated();
    let mut draw = Draw::new(case_seed(case, seed), strong_negation);
    match case {
        PropertyCase::Table1(row) => CaseInstance::Table1(table1_instance(row, &mut draw, &params)),
        PropertyCase::EarlyRecovery => loop {
            if let Some(instance) = early_recovery_instance(&mut draw, &params) {
                break instance;
            }
        },
        PropertyCase::GeneralisedEarlyRecovery => loop {
            if let Some(dlp) = acyclic_solved_dlp(&mut draw, &params) {
                break CaseInstance::GeneralisedEarlyRecovery { dlp };
            }
        },
    }
}

fn table1_instance(row: Table1Case, draw: &mut Draw, params: &GeneratorParams) -> Table1Instance {
    let atoms = draw.atoms(params.max_atoms);
    let rules = draw.rng.gen_range(0..=params.max_rules);
    let body = params.max_body;
    match row {
        Table1Case::Generalisation => Table1Instance::Generalisation { program: draw.program(&atoms, rules, body) },
        Table1Case::Primacy => Table1Instance::Primacy { dlp: draw.dlp(&atoms, params) },
        Table1Case::Support => Table1Instance::Support { dlp: draw.dlp(&atoms, params) },
        Table1Case::CausalRejection => Table1Instance::CausalRejection { dlp: draw.dlp(&atoms, params) },
        Table1Case::FactUpdate => {
            let components = draw.rng.gen_range(1..=params.max_components);
            let sizes = draw.split(rules, components);
            let programs = sizes.into_iter().map(|n| draw.consistent_facts(&atoms, n)).collect();
            Table1Instance::FactUpdate { dlp: Dlp::new(programs).expect("non-empty") }
        }
        Table1Case::Idempotence => Table1Instance::Idempotence { program: draw.program(&atoms, rules, body) },
        Table1Case::Absorption => {
            let sizes = draw.split(rules, 2);
            Table1Instance::Absorption {
                program: draw.program(&atoms, sizes[0], body),
                update: draw.program(&atoms, sizes[1], body),
            }
        }
        Table1Case::Augmentation => {
            let sizes = draw.split(rules, 3);
            let program = draw.program(&atoms, sizes[0], body);
            let update = draw.program(&atoms, sizes[1], body);
            let mut superset = update.clone();
            superset.rules.extend(draw.program(&atoms, sizes[2], body).rules);
            superset.rules.shuffle(&mut draw.rng);
            Table1Instance::Augmentation { program, update, superset }
        }
        Table1Case::NonInterference => {
            let sizes = draw.split(rules, 3);
            let program = draw.program(&atoms, sizes[0], body);
            let mut pool = atoms.clone();
            pool.shuffle(&mut draw.rng);
            let cut = draw.rng.gen_range(0..=pool.len());
            let (left, right) = pool.split_at(cut);
            let mut side = |pool: &[Atom], n: usize| {
                if pool.is_empty() {
                    Program::default()
                } else {
                    draw.program(pool, n, body)
                }
            };
            let first = side(left, sizes[1]);
            let second = side(right, sizes[2]);
            Table1Instance::NonInterference { program, first, second }
        }
        Table1Case::EmptyUpdate => {
            let reduced = GeneratorParams { max_components: params.max_components.saturating_sub(1).max(1), ..*params };
            let mut components = draw.dlp(&atoms, &reduced).into_components();
            let index = draw.rng.gen_range(0..=components.len());
            components.insert(index, Program::default());
            Table1Instance::EmptyUpdate { dlp: Dlp::new(components).expect("non-empty"), index }
        }
        Table1Case::Tautologies => {
            let dlp = draw.dlp(&atoms, params);
            let tautologies = (0..dlp.len())
                .map(|_| {
                    let n = draw.rng.gen_range(0..=2);
                    (0..n).map(|_| draw.tautology(&atoms, body.max(1))).collect()
                })
                .collect();
            Table1Instance::Tautologies { dlp, tautologies }
        }
    }
}

/// Facts `P` and a consistent update `U` that solves every conflict of `P`:
/// unsolved conflicts get a resolving fact added to `U` when that keeps `U`
/// consistent; otherwise the draw is abandoned.
fn early_recovery_instance(draw: &mut Draw, params: &GeneratorParams) -> Option<CaseInstance> {
    let atoms = draw.atoms(params.max_atoms);
    let total = draw.rng.gen_range(0..=params.max_rules);
    let sizes = draw.split(total, 2);
    let facts: Program = (0..sizes[0]).map(|_| draw.fact(&atoms)).collect();
    let mut update = draw.consistent_facts(&atoms, sizes[1]);
    let pairs: Vec<(Literal, Literal)> = facts
        .iter()
        .enumerate()
        .flat_map(|(i, a)| facts.iter().skip(i + 1).map(move |b| (a, b)))
        .filter(|(a, b)| a.head.conflicts_with(&b.head))
        .map(|(a, b)| (a.head.clone(), b.head.clone()))
        .collect();
    for (a, b) in pairs {
        let solved = update.iter().any(|r| r.head.conflicts_with(&a) || r.head.conflicts_with(&b));
        if solved {
            continue;
        }
        let mut options = draw.resolving_heads(&a, &b);
        options.shuffle(&mut draw.rng);
        let choice = options.into_iter().find(|h| !update.iter().any(|r| r.head.conflicts_with(h)))?;
        update.rules.push(Rule::fact(choice));
    }
    debug_assert!(is_consistent_facts(&update) && solves_all_conflicts(&facts, &update).unwrap_or(false));
    Some(CaseInstance::EarlyRecovery { facts, update })
}

/// An acyclic DLP whose conflicts are all solved: atoms get a random rank
/// and body atoms must rank strictly below the head atom; conflicts are then
/// repaired by adding resolving facts to later components (opening a new
/// last component if needed).
fn acyclic_solved_dlp(draw: &mut Draw, params: &GeneratorParams) -> Option<Dlp> {
    let mut atoms = draw.atoms(params.max_atoms);
    atoms.shuffle(&mut draw.rng);
    let components = draw.rng.gen_range(1..=params.max_components);
    let total = draw.rng.gen_range(0..=params.max_rules);
    let sizes = draw.split(total, components);
    let mut programs: Vec<Program> = sizes
        .into_iter()
        .map(|n| {
            (0..n)
                .map(|_| {
                    let rank = draw.rng.gen_range(0..atoms.len());
                    let head = draw.literal(&atoms[rank..=rank]);
                    let size = if rank == 0 { 0 } else { draw.rng.gen_range(0..=params.max_body) };
                    let body: Vec<Literal> = (0..size).map(|_| draw.literal(&atoms[..rank])).collect();
                    Rule::new(head, body)
                })
                .collect()
        })
        .collect();

    for _ in 0..16 {
        let dlp = Dlp::new(programs.clone()).expect("non-empty");
        if all_conflicts_solved(&dlp) {
            debug_assert!(is_acyclic(&dlp.flatten()).is_some());
            return Some(dlp);
        }
        let (i, a, b) = first_unsolved_conflict(&programs)?;
        if i + 1 == programs.len() {
            programs.push(Program::default());
        }
        let j = draw.rng.gen_range(i + 1..programs.len());
        let options = draw.resolving_heads(&a, &b);
        let head = options.choose(&mut draw.rng)?.clone();
        programs[j].rules.push(Rule::fact(head));
    }
    None
}

fn first_unsolved_conflict(programs: &[Program]) -> Option<(usize, Literal, Literal)> {
    programs.iter().enumerate().find_map(|(i, p)| {
        p.iter().enumerate().find_map(|(k, a)| {
            p.iter().skip(k + 1).find_map(|b| {
                let unsolved = a.head.conflicts_with(&b.head)
                    && !programs[i + 1..].iter().flat_map(|later| later.iter()).any(|rho| {
                        rho.is_fact() && (rho.head.conflicts_with(&a.head) || rho.head.conflicts_with(&b.head))
                    });
                unsolved.then(|| (i, a.head.clone(), b.head.clone()))
            })
        })
    })
}

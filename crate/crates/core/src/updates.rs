//! Semantics for dynamic logic programs (DLPs).
//!
//! * RD and WS: the refined dynamic stable models and the well-supported
//!   models of a DLP without strong negation. Both reject a rule when a rule
//!   with the complementary default literal in its head has a true body; RD
//!   also lets rules of the same component reject each other.
//! * ERD and EWS: the extended versions, which handle strong negation
//!   natively. A rule `π` is rejected by a strictly later rule whose head is
//!   in `con(H(π))`; ERD prevents cyclic rejection with a guarded
//!   consequence operator, EWS with a stronger level condition.
//! * The transformational semantics apply `expone` or `exptwo` and then run
//!   RD or WS with `p` and `-p` read as unrelated atoms.
//!
//! Every evaluator is brute force: enumerate interpretations over the
//! finite universe and test each candidate.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::interp::{
    consequence_stages, enumerate_interpretations, least_model, twiall, Interpretation,
    LiteralSet, Universe, DEFAULT_ENUMERATION_LIMIT,
};
use crate::single::{self, LevelMapping};
use crate::syntax::{Alphabet, Dlp, Literal, ObjectiveLiteral, Program, Rule, RuleRef};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SemanticsId {
    /// Stable models of a single program.
    Sm,
    /// Well-supported models of a single program.
    WsSingle,
    Rd,
    Ws,
    Erd,
    Ews,
    RdExpone,
    RdExptwo,
    WsExpone,
    WsExptwo,
}

impl SemanticsId {
    pub const ALL: [SemanticsId; 10] = [
        SemanticsId::Sm,
        SemanticsId::WsSingle,
        SemanticsId::Rd,
        SemanticsId::Ws,
        SemanticsId::Erd,
        SemanticsId::Ews,
        SemanticsId::RdExpone,
        SemanticsId::RdExptwo,
        SemanticsId::WsExpone,
        SemanticsId::WsExptwo,
    ];

    /// Name used on the command line and in JSON output.
    pub fn name(self) -> &'static str {
        match self {
            SemanticsId::Sm => "sm",
            SemanticsId::WsSingle => "ws",
            SemanticsId::Rd => "rd",
            SemanticsId::Ws => "ws-dlp",
            SemanticsId::Erd => "erd",
            SemanticsId::Ews => "ews",
            SemanticsId::RdExpone => "rd+expone",
            SemanticsId::RdExptwo => "rd+exptwo",
            SemanticsId::WsExpone => "ws+expone",
            SemanticsId::WsExptwo => "ws+exptwo",
        }
    }

    pub fn single_program_only(self) -> bool {
        matches!(self, SemanticsId::Sm | SemanticsId::WsSingle)
    }

    pub fn accepts_strong_negation(self) -> bool {
        !matches!(self, SemanticsId::Rd | SemanticsId::Ws)
    }

    pub fn transformation(self) -> Option<Transformation> {
        match self {
            SemanticsId::RdExpone | SemanticsId::WsExpone => Some(Transformation::Expone),
            SemanticsId::RdExptwo | SemanticsId::WsExptwo => Some(Transformation::Exptwo),
            _ => None,
        }
    }
}

impl fmt::Display for SemanticsId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SemanticsId::Sm => "SM",
            SemanticsId::WsSingle => "WS-single",
            SemanticsId::Rd => "RD",
            SemanticsId::Ws => "WS",
            SemanticsId::Erd => "ERD",
            SemanticsId::Ews => "EWS",
            SemanticsId::RdExpone => "RD∘expone",
            SemanticsId::RdExptwo => "RD∘exptwo",
            SemanticsId::WsExpone => "WS∘expone",
            SemanticsId::WsExptwo => "WS∘exptwo",
        })
    }
}

impl FromStr for SemanticsId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        SemanticsId::ALL
            .into_iter()
            .find(|id| id.name() == s)
            .ok_or_else(|| {
                let names: Vec<&str> = SemanticsId::ALL.iter().map(|id| id.name()).collect();
                format!("unknown semantics `{s}` (expected one of {})", names.join(", "))
            })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Transformation {
    Expone,
    Exptwo,
}

impl Transformation {
    pub fn apply(self, dlp: &Dlp, alphabet: &Alphabet) -> Dlp {
        match self {
            Transformation::Expone => expone_over(dlp, alphabet),
            Transformation::Exptwo => exptwo(dlp),
        }
    }
}

impl FromStr for Transformation {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "expone" => Ok(Transformation::Expone),
            "exptwo" => Ok(Transformation::Exptwo),
            _ => Err(format!("unknown transformation `{s}` (expected expone or exptwo)")),
        }
    }
}

/// Extra atoms to include in the universe and the enumeration cap.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EvalOptions {
    pub extra_atoms: Alphabet,
    pub limit: usize,
}

impl Default for EvalOptions {
    fn default() -> Self {
        EvalOptions { extra_atoms: Alphabet::default(), limit: DEFAULT_ENUMERATION_LIMIT }
    }
}

impl EvalOptions {
    pub fn with_limit(limit: usize) -> Self {
        EvalOptions { limit, ..EvalOptions::default() }
    }

    pub fn with_extra_atoms(mut self, atoms: &Alphabet) -> Self {
        self.extra_atoms = self.extra_atoms.union(atoms);
        self
    }

    pub fn universe(&self, alphabet: Alphabet, extended: bool) -> Universe {
        let atoms = alphabet.union(&self.extra_atoms);
        if extended {
            Universe::extended(atoms)
        } else {
            Universe::atoms_only(atoms)
        }
    }
}

/// The models a semantics assigns, kept sorted by rendered form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModelSet {
    semantics: SemanticsId,
    models: Vec<Interpretation>,
}

impl ModelSet {
    pub fn new(semantics: SemanticsId, models: impl IntoIterator<Item = Interpretation>) -> Self {
        let mut models: Vec<Interpretation> = models.into_iter().collect();
        models.sort_by_cached_key(|m| m.to_string());
        models.dedup();
        ModelSet { semantics, models }
    }

    pub fn semantics(&self) -> SemanticsId {
        self.semantics
    }

    pub fn models(&self) -> &[Interpretation] {
        &self.models
    }

    pub fn len(&self) -> usize {
        self.models.len()
    }

    pub fn is_empty(&self) -> bool {
        self.models.is_empty()
    }

    pub fn contains(&self, j: &Interpretation) -> bool {
        self.models.contains(j)
    }

    pub fn render(&self) -> Vec<String> {
        self.models.iter().map(|m| m.to_string()).collect()
    }

    /// Equality of the model sets, ignoring which semantics produced them.
    pub fn same_models(&self, other: &ModelSet) -> bool {
        self.models == other.models
    }
}

impl fmt::Display for ModelSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.render().join(", "))
    }
}

/// A multiset of rule occurrences, identified by position.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RejectionSet(BTreeSet<RuleRef>);

impl RejectionSet {
    pub fn contains(&self, at: RuleRef) -> bool {
        self.0.contains(&at)
    }

    pub fn iter(&self) -> impl Iterator<Item = RuleRef> + '_ {
        self.0.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn rules<'a>(&'a self, dlp: &'a Dlp) -> impl Iterator<Item = &'a Rule> + 'a {
        self.0.iter().map(|at| dlp.rule(*at))
    }
}

impl FromIterator<RuleRef> for RejectionSet {
    fn from_iter<T: IntoIterator<Item = RuleRef>>(iter: T) -> Self {
        RejectionSet(iter.into_iter().collect())
    }
}

fn union_rules(program: &Program, extra: impl IntoIterator<Item = Rule>) -> Program {
    let mut rules = program.rules.clone();
    let mut seen: BTreeSet<Rule> = program.rules.iter().cloned().collect();
    for rule in extra {
        if seen.insert(rule.clone()) {
            rules.push(rule);
        }
    }
    Program::new(rules)
}

/// Adds `not -p :- p.` and `not p :- -p.` for every atom of the DLP to every
/// component.
pub fn expone(dlp: &Dlp) -> Dlp {
    expone_over(dlp, &dlp.alphabet())
}

/// [`expone`] with the coherence rules taken over `alphabet ∪ alphabet(dlp)`.
pub fn expone_over(dlp: &Dlp, alphabet: &Alphabet) -> Dlp {
    let atoms = dlp.alphabet().union(alphabet);
    let coherence: Vec<Rule> = atoms
        .objective_literals()
        .map(|l| {
            Rule::new(
                Literal::default_negation(l.strong_complement()),
                [Literal::objective(l)],
            )
        })
        .collect();
    let components = dlp
        .components()
        .iter()
        .map(|p| union_rules(p, coherence.iter().cloned()))
        .collect();
    Dlp::new(components).expect("transformation preserves length")
}

/// Adds `not -H :- B.` for every rule `H :- B.` with an objective head, in
/// the rule's own component.
pub fn exptwo(dlp: &Dlp) -> Dlp {
    let components = dlp
        .components()
        .iter()
        .map(|p| {
            let extra: Vec<Rule> = p
                .iter()
                .filter(|r| r.head.is_objective())
                .map(|r| Rule {
                    head: Literal::default_negation(r.head.objective.strong_complement()),
                    body: r.body.clone(),
                })
                .collect();
            union_rules(p, extra)
        })
        .collect();
    Dlp::new(components).expect("transformation preserves length")
}

fn require_generalised(dlp: &Dlp, semantics: SemanticsId) -> Result<()> {
    if dlp.is_generalised() {
        Ok(())
    } else {
        Err(Error::StrongNegation { semantics })
    }
}

fn unrejected<'a>(dlp: &'a Dlp, rejected: &'a RejectionSet) -> impl Iterator<Item = &'a Rule> + 'a {
    dlp.all().filter(|(at, _)| !rejected.contains(*at)).map(|(_, r)| r)
}

// ---------------------------------------------------------------------------
// RD

/// Rules overridden by a rule of the same or a later component whose head is
/// the default complement and whose body is true in `J`. `p` and `-p` are
/// distinct symbols here.
pub(crate) fn rd_rejected(dlp: &Dlp, j: &Interpretation) -> RejectionSet {
    dlp.all()
        .filter(|(at, pi)| {
            let complement = pi.head.default_complement();
            dlp.all().any(|(by, sigma)| {
                by.component >= at.component && sigma.head == complement && j.satisfies(&sigma.body)
            })
        })
        .map(|(at, _)| at)
        .collect()
}

/// `{ not l. | no rule of all(P) with head l has a true body }`.
pub(crate) fn constrained_defaults(dlp: &Dlp, j: &Interpretation, universe: &Universe) -> Program {
    universe
        .objective_literals()
        .filter(|l| {
            !dlp.all()
                .any(|(_, r)| r.head.is_objective() && &r.head.objective == l && j.satisfies(&r.body))
        })
        .map(|l| Rule::fact(Literal::default_negation(l)))
        .collect()
}

pub fn rej_rd(dlp: &Dlp, j: &Interpretation) -> Result<RejectionSet> {
    require_generalised(dlp, SemanticsId::Rd)?;
    Ok(rd_rejected(dlp, j))
}

/// Default assumptions over the atoms of the DLP (plus `extra` atoms).
pub fn def_constrained(dlp: &Dlp, j: &Interpretation, extra: &Alphabet) -> Result<Program> {
    require_generalised(dlp, SemanticsId::Rd)?;
    let universe = Universe::atoms_only(dlp.alphabet().union(extra).union(&j.alphabet()));
    Ok(constrained_defaults(dlp, j, &universe))
}

/// The program whose least model is compared against `J'` under RD.
fn rd_program(dlp: &Dlp, j: &Interpretation, universe: &Universe) -> (RejectionSet, Vec<Rule>) {
    let rejected = rd_rejected(dlp, j);
    let defaults = constrained_defaults(dlp, j, universe);
    let rules = unrejected(dlp, &rejected).cloned().chain(defaults.rules).collect();
    (rejected, rules)
}

pub(crate) fn rd_is_model(dlp: &Dlp, j: &Interpretation, universe: &Universe) -> bool {
    let (_, rules) = rd_program(dlp, j, universe);
    least_model(&rules) == twiall(j, universe)
}

pub fn rd_models(dlp: &Dlp, opts: &EvalOptions) -> Result<ModelSet> {
    require_generalised(dlp, SemanticsId::Rd)?;
    let universe = opts.universe(dlp.alphabet(), false);
    collect_models(SemanticsId::Rd, &universe, opts, |j| rd_is_model(dlp, j, &universe))
}

// ---------------------------------------------------------------------------
// WS

/// Like [`rd_rejected`] but only strictly later rules reject, and only when
/// `level(H(σ)) > up(B(σ))`.
pub(crate) fn ws_rejected(dlp: &Dlp, j: &Interpretation, mapping: &LevelMapping) -> RejectionSet {
    dlp.all()
        .filter(|(at, pi)| {
            let complement = pi.head.default_complement();
            dlp.all().any(|(by, sigma)| {
                by.component > at.component
                    && sigma.head == complement
                    && j.satisfies(&sigma.body)
                    && mapping.supports(sigma)
            })
        })
        .map(|(at, _)| at)
        .collect()
}

pub fn rej_ws(dlp: &Dlp, j: &Interpretation, mapping: &LevelMapping) -> Result<RejectionSet> {
    require_generalised(dlp, SemanticsId::Ws)?;
    Ok(ws_rejected(dlp, j, mapping))
}

/// Both WS conditions for a given mapping.
pub(crate) fn ws_conditions(dlp: &Dlp, j: &Interpretation, mapping: &LevelMapping) -> bool {
    let rejected = ws_rejected(dlp, j, mapping);
    let kept: Vec<&Rule> = unrejected(dlp, &rejected).collect();
    j.satisfies(kept.as_slice())
        && j.iter().all(|l| {
            kept.iter().any(|r| {
                r.head.is_objective()
                    && &r.head.objective == l
                    && j.satisfies(&r.body)
                    && mapping.supports(r)
            })
        })
}

/// Level of an objective literal: the first stage containing it or its
/// default negation, or one above the last stage if it never appears.
fn first_stage_levels(stages: &[LiteralSet], universe: &Universe) -> LevelMapping {
    let mut mapping = LevelMapping::new();
    for l in universe.objective_literals() {
        let pos = Literal::objective(l.clone());
        let neg = Literal::default_negation(l.clone());
        let level = stages
            .iter()
            .position(|s| s.contains(&pos) || s.contains(&neg))
            .unwrap_or(stages.len());
        mapping.set(l, level as u32);
    }
    mapping
}

/// Candidate WS witness built from the stages of the RD fixpoint.
pub fn ws_level_mapping(dlp: &Dlp, j: &Interpretation, universe: &Universe) -> LevelMapping {
    let (_, rules) = rd_program(dlp, j, universe);
    first_stage_levels(&consequence_stages(&rules), universe)
}

pub(crate) fn ws_is_model(dlp: &Dlp, j: &Interpretation, universe: &Universe) -> bool {
    ws_conditions(dlp, j, &ws_level_mapping(dlp, j, universe))
}

pub fn ws_models(dlp: &Dlp, opts: &EvalOptions) -> Result<ModelSet> {
    require_generalised(dlp, SemanticsId::Ws)?;
    let universe = opts.universe(dlp.alphabet(), false);
    collect_models(SemanticsId::Ws, &universe, opts, |j| ws_is_model(dlp, j, &universe))
}

// ---------------------------------------------------------------------------
// Extended RD

/// `rej'(P, S)`: rules overridden by a strictly later rule with a head in
/// `con(H(π))` and a body contained in `S`.
pub fn rej_rds(dlp: &Dlp, s: &LiteralSet) -> RejectionSet {
    dlp.all()
        .filter(|(at, pi)| {
            dlp.all().any(|(by, sigma)| {
                by.component > at.component
                    && pi.head.conflicts_with(&sigma.head)
                    && sigma.body.is_subset(s)
            })
        })
        .map(|(at, _)| at)
        .collect()
}

/// `rem(P, S) = all(P) \ rej'(P, S)`, in DLP order.
pub fn rem(dlp: &Dlp, s: &LiteralSet) -> Vec<RuleRef> {
    let rejected = rej_rds(dlp, s);
    dlp.all().map(|(at, _)| at).filter(|at| !rejected.contains(*at)).collect()
}

/// The fixed parts of the extended RD consequence operator for one candidate.
struct ErdOperator<'a> {
    dlp: &'a Dlp,
    completion: LiteralSet,
    candidates: Vec<Rule>,
}

impl<'a> ErdOperator<'a> {
    fn new(dlp: &'a Dlp, j: &Interpretation, universe: &Universe) -> Self {
        let completion = twiall(j, universe);
        let mut candidates: Vec<Rule> =
            rem(dlp, &completion).into_iter().map(|at| dlp.rule(at).clone()).collect();
        candidates.extend(single::def_assumptions(j, universe).rules);
        ErdOperator { dlp, completion, candidates }
    }

    fn apply(&self, s: &LiteralSet) -> LiteralSet {
        let surviving: Vec<&Rule> = rem(self.dlp, s).into_iter().map(|at| self.dlp.rule(at)).collect();
        self.candidates
            .iter()
            .filter(|pi| pi.body.is_subset(s))
            .filter(|pi| {
                !surviving.iter().any(|sigma| {
                    pi.head.conflicts_with(&sigma.head) && sigma.body.is_subset(&self.completion)
                })
            })
            .map(|pi| pi.head.clone())
            .collect()
    }
}

/// One application of the extended RD consequence operator for candidate
/// `J` to the literal set `S`.
pub fn t_rds(dlp: &Dlp, j: &Interpretation, s: &LiteralSet, universe: &Universe) -> LiteralSet {
    ErdOperator::new(dlp, j, universe).apply(s)
}

/// `T^0(∅), T^1(∅), ...` up to the first state already seen.
pub fn erd_stages(dlp: &Dlp, j: &Interpretation, universe: &Universe) -> Vec<LiteralSet> {
    let op = ErdOperator::new(dlp, j, universe);
    let cap = 2 * universe.literal_count() + 1;
    let mut stages = vec![LiteralSet::new()];
    loop {
        let next = op.apply(stages.last().unwrap());
        if stages.contains(&next) {
            return stages;
        }
        stages.push(next);
        assert!(stages.len() <= cap + 1, "extended RD iteration did not settle within {cap} steps");
    }
}

pub(crate) fn erd_is_model(dlp: &Dlp, j: &Interpretation, universe: &Universe) -> bool {
    let accumulated: LiteralSet = erd_stages(dlp, j, universe).into_iter().flatten().collect();
    accumulated == twiall(j, universe)
}

pub fn extended_rd_models(dlp: &Dlp, opts: &EvalOptions) -> Result<ModelSet> {
    let universe = opts.universe(dlp.alphabet(), true);
    collect_models(SemanticsId::Erd, &universe, opts, |j| erd_is_model(dlp, j, &universe))
}

// ---------------------------------------------------------------------------
// Extended WS

/// `rej_WS'(P, J)` under `mapping`: a strictly later rule `σ` with a head in
/// `con(H(π))`, a true body, and `down(con(H(π))) > up(B(σ))`.
pub fn rej_wss(dlp: &Dlp, j: &Interpretation, mapping: &LevelMapping) -> RejectionSet {
    dlp.all()
        .filter(|(at, pi)| {
            let conflict_level = mapping.down(&pi.head.conflicts()).unwrap_or(0);
            dlp.all().any(|(by, sigma)| {
                by.component > at.component
                    && pi.head.conflicts_with(&sigma.head)
                    && j.satisfies(&sigma.body)
                    && conflict_level > mapping.up(&sigma.body)
            })
        })
        .map(|(at, _)| at)
        .collect()
}

/// Both extended WS conditions for a given mapping.
pub fn ews_conditions(dlp: &Dlp, j: &Interpretation, mapping: &LevelMapping, universe: &Universe) -> bool {
    let rejected = rej_wss(dlp, j, mapping);
    let kept: Vec<&Rule> = unrejected(dlp, &rejected).collect();
    if !j.satisfies(kept.as_slice()) {
        return false;
    }
    let supporters: Vec<&Rule> =
        rem(dlp, &twiall(j, universe)).into_iter().map(|at| dlp.rule(at)).collect();
    j.iter().all(|l| {
        supporters.iter().any(|r| {
            r.head.is_objective()
                && &r.head.objective == l
                && j.satisfies(&r.body)
                && mapping.supports(r)
        })
    })
}

/// Least level mapping satisfying both extended WS conditions, if any.
///
/// Every requirement has the shape "`ℓ(x) > ℓ↑(B)` for one `B` out of a set
/// of options", where `x` is a true literal and `B` the body of a supporting
/// rule from `rem(P, J')`, or `x` is a member of `con(H(π))` for a violated
/// rule `π` and `B` the body of a later rule that may reject it. Since
/// `ℓ↓(con(H(π))) > ℓ↑(B(σ))` holds for some `σ` iff every member of the
/// conflict set is above the body of its own choice of `σ` (the choice with
/// the lowest body works for all), the requirements are per literal. Only
/// lower bounds occur, so placing each literal at the first round in which
/// every requirement has an option below it finds a mapping whenever one
/// exists.
pub fn ews_level_mapping(dlp: &Dlp, j: &Interpretation, universe: &Universe) -> Option<LevelMapping> {
    type Options = Vec<Vec<ObjectiveLiteral>>;
    let objectives = |body: &BTreeSet<Literal>| body.iter().map(|b| b.objective.clone()).collect();
    let mut requirements: BTreeMap<ObjectiveLiteral, Vec<Options>> =
        universe.objective_literals().map(|l| (l, Vec::new())).collect();

    for (at, pi) in dlp.all() {
        if j.satisfies(pi) {
            continue;
        }
        let rejecters: Options = dlp
            .all()
            .filter(|(by, sigma)| {
                by.component > at.component && pi.head.conflicts_with(&sigma.head) && j.satisfies(&sigma.body)
            })
            .map(|(_, sigma)| objectives(&sigma.body))
            .collect();
        if rejecters.is_empty() {
            return None;
        }
        for x in pi.head.conflicts() {
            requirements.entry(x.objective).or_default().push(rejecters.clone());
        }
    }

    let supporters: Vec<&Rule> = rem(dlp, &twiall(j, universe)).into_iter().map(|at| dlp.rule(at)).collect();
    for l in j.iter() {
        let options: Options = supporters
            .iter()
            .filter(|r| r.head.is_objective() && &r.head.objective == l && j.satisfies(&r.body))
            .map(|r| objectives(&r.body))
            .collect();
        if options.is_empty() {
            return None;
        }
        requirements.entry(l.clone()).or_default().push(options);
    }

    let mut levels: BTreeMap<ObjectiveLiteral, u32> = BTreeMap::new();
    for round in 0u32.. {
        let placeable: Vec<ObjectiveLiteral> = requirements
            .iter()
            .filter(|(x, _)| !levels.contains_key(*x))
            .filter(|(_, reqs)| {
                reqs.iter().all(|options| {
                    options.iter().any(|body| {
                        (round > 0 || !body.is_empty())
                            && body.iter().all(|b| levels.get(b).is_some_and(|&lb| lb < round))
                    })
                })
            })
            .map(|(x, _)| x.clone())
            .collect();
        if placeable.is_empty() && round > 0 {
            break;
        }
        levels.extend(placeable.into_iter().map(|x| (x, round)));
    }
    if levels.len() < requirements.len() {
        return None;
    }
    let mut mapping = LevelMapping::new();
    for (l, level) in levels {
        mapping.set(l, level);
    }
    Some(mapping)
}

pub(crate) fn ews_is_model(dlp: &Dlp, j: &Interpretation, universe: &Universe) -> bool {
    ews_level_mapping(dlp, j, universe).is_some_and(|m| ews_conditions(dlp, j, &m, universe))
}

pub fn extended_ws_models(dlp: &Dlp, opts: &EvalOptions) -> Result<ModelSet> {
    let universe = opts.universe(dlp.alphabet(), true);
    collect_models(SemanticsId::Ews, &universe, opts, |j| ews_is_model(dlp, j, &universe))
}

// ---------------------------------------------------------------------------
// dispatch

fn collect_models(
    semantics: SemanticsId,
    universe: &Universe,
    opts: &EvalOptions,
    accept: impl Fn(&Interpretation) -> bool,
) -> Result<ModelSet> {
    let models = enumerate_interpretations(universe, opts.limit)?.filter(|j| accept(j));
    Ok(ModelSet::new(semantics, models))
}

/// The DLP a semantics actually evaluates (after any transformation) and the
/// universe it ranges over.
pub fn prepare(dlp: &Dlp, semantics: SemanticsId, opts: &EvalOptions) -> Result<(Dlp, Universe)> {
    if semantics.single_program_only() && dlp.len() != 1 {
        return Err(Error::NotSingleProgram { semantics, components: dlp.len() });
    }
    if !semantics.accepts_strong_negation() {
        require_generalised(dlp, semantics)?;
    }
    let extended = !matches!(semantics, SemanticsId::Rd | SemanticsId::Ws);
    let universe = opts.universe(dlp.alphabet(), extended);
    let evaluated = match semantics.transformation() {
        Some(t) => t.apply(dlp, universe.alphabet()),
        None => dlp.clone(),
    };
    Ok((evaluated, universe))
}

/// Membership test for an already prepared DLP.
fn accepts(semantics: SemanticsId, dlp: &Dlp, j: &Interpretation, universe: &Universe) -> bool {
    match semantics {
        SemanticsId::Sm => single::is_stable_model(&dlp.components()[0], j, universe),
        SemanticsId::WsSingle => single::find_level_mapping(&dlp.components()[0], j, universe).is_some(),
        SemanticsId::Rd | SemanticsId::RdExpone | SemanticsId::RdExptwo => rd_is_model(dlp, j, universe),
        SemanticsId::Ws | SemanticsId::WsExpone | SemanticsId::WsExptwo => ws_is_model(dlp, j, universe),
        SemanticsId::Erd => erd_is_model(dlp, j, universe),
        SemanticsId::Ews => ews_is_model(dlp, j, universe),
    }
}

pub fn models(dlp: &Dlp, semantics: SemanticsId, opts: &EvalOptions) -> Result<ModelSet> {
    let (evaluated, universe) = prepare(dlp, semantics, opts)?;
    collect_models(semantics, &universe, opts, |j| accepts(semantics, &evaluated, j, &universe))
}

/// Explanation of a single membership test.
#[derive(Clone, Debug)]
pub struct Verdict {
    pub is_model: bool,
    /// The DLP after any transformation.
    pub evaluated: Dlp,
    pub rejected: Option<RejectionSet>,
    pub defaults: Option<Program>,
    pub level_mapping: Option<LevelMapping>,
    /// Stages of the fixpoint iteration used by the semantics.
    pub trace: Vec<LiteralSet>,
}

pub fn check(dlp: &Dlp, semantics: SemanticsId, j: &Interpretation, opts: &EvalOptions) -> Result<Verdict> {
    let opts = opts.clone().with_extra_atoms(&j.alphabet());
    let (evaluated, universe) = prepare(dlp, semantics, &opts)?;
    let is_model = accepts(semantics, &evaluated, j, &universe);
    let mut verdict = Verdict {
        is_model,
        evaluated: evaluated.clone(),
        rejected: None,
        defaults: None,
        level_mapping: None,
        trace: Vec::new(),
    };
    match semantics {
        SemanticsId::Sm | SemanticsId::WsSingle => {
            let program = &evaluated.components()[0];
            let defaults = single::def_assumptions(j, &universe);
            verdict.trace = consequence_stages(program.iter().chain(defaults.iter()));
            verdict.defaults = Some(defaults);
            if semantics == SemanticsId::WsSingle {
                verdict.level_mapping = single::find_level_mapping(program, j, &universe);
            }
        }
        SemanticsId::Rd | SemanticsId::RdExpone | SemanticsId::RdExptwo => {
            let (rejected, rules) = rd_program(&evaluated, j, &universe);
            verdict.trace = consequence_stages(&rules);
            verdict.defaults = Some(constrained_defaults(&evaluated, j, &universe));
            verdict.rejected = Some(rejected);
        }
        SemanticsId::Ws | SemanticsId::WsExpone | SemanticsId::WsExptwo => {
            let mapping = ws_level_mapping(&evaluated, j, &universe);
            verdict.rejected = Some(ws_rejected(&evaluated, j, &mapping));
            verdict.level_mapping = Some(mapping);
        }
        SemanticsId::Erd => {
            verdict.rejected = Some(rej_rds(&evaluated, &twiall(j, &universe)));
            verdict.trace = erd_stages(&evaluated, j, &universe);
        }
        SemanticsId::Ews => {
            verdict.trace = erd_stages(&evaluated, j, &universe);
            if let Some(mapping) = ews_level_mapping(&evaluated, j, &universe) {
                verdict.rejected = Some(rej_wss(&evaluated, j, &mapping));
                verdict.level_mapping = Some(mapping);
            }
        }
    }
    Ok(verdict)
}

//! Propositional rules with strong (`-p`) and default (`not p`) negation,
//! programs, and dynamic logic programs (sequences of programs).
//!
//! The text format is line-insensitive except for the component separator:
//!
//! ```text
//! % railway crossing
//! cross :- -train.
//! wait :- train.
//! listen :- not train, not -train.
//! #update.
//! train.
//! ```

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Line that separates the components of a dynamic logic program.
pub const UPDATE_SEPARATOR: &str = "#update.";

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Atom(Arc<str>);

impl Atom {
    /// Validates `[a-z][A-Za-z0-9_]*`.
    pub fn new(name: &str) -> Result<Self> {
        let mut chars = name.chars();
        let valid = matches!(chars.next(), Some(c) if c.is_ascii_lowercase())
            && chars.all(|c| c.is_ascii_alphanumeric() || c == '_');
        if valid {
            Ok(Atom(Arc::from(name)))
        } else {
            Err(Error::InvalidAtom(name.to_string()))
        }
    }

    pub fn name(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// An atom or its strong negation.
///
/// Ordering is by atom name, positive before strongly negated, which is the
/// canonical order used when rendering interpretations.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ObjectiveLiteral {
    pub atom: Atom,
    pub strongly_negated: bool,
}

impl ObjectiveLiteral {
    pub fn positive(atom: Atom) -> Self {
        ObjectiveLiteral { atom, strongly_negated: false }
    }

    pub fn negative(atom: Atom) -> Self {
        ObjectiveLiteral { atom, strongly_negated: true }
    }

    /// `p <-> -p`.
    pub fn strong_complement(&self) -> Self {
        ObjectiveLiteral {
            atom: self.atom.clone(),
            strongly_negated: !self.strongly_negated,
        }
    }
}

impl fmt::Display for ObjectiveLiteral {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.strongly_negated {
            f.write_str("-")?;
        }
        write!(f, "{}", self.atom)
    }
}

/// An objective literal, possibly under default negation.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Literal {
    pub objective: ObjectiveLiteral,
    pub default_negated: bool,
}

impl Literal {
    pub fn objective(objective: ObjectiveLiteral) -> Self {
        Literal { objective, default_negated: false }
    }

    pub fn default_negation(objective: ObjectiveLiteral) -> Self {
        Literal { objective, default_negated: true }
    }

    pub fn is_objective(&self) -> bool {
        !self.default_negated
    }

    /// `L <-> not L`; `not not l` is absorbed into `l`.
    pub fn default_complement(&self) -> Self {
        Literal {
            objective: self.objective.clone(),
            default_negated: !self.default_negated,
        }
    }

    /// Strong complement of the embedded objective literal, keeping the
    /// default negation as is.
    pub fn strong_complement(&self) -> Self {
        Literal {
            objective: self.objective.strong_complement(),
            default_negated: self.default_negated,
        }
    }

    /// The literals in direct conflict with this one:
    /// `con(l) = {not l, -l}` and `con(not l) = {l}`.
    pub fn conflicts(&self) -> Vec<Literal> {
        if self.default_negated {
            vec![Literal::objective(self.objective.clone())]
        } else {
            vec![
                Literal::default_negation(self.objective.clone()),
                Literal::objective(self.objective.strong_complement()),
            ]
        }
    }

    /// Membership test for [`Literal::conflicts`] without allocating.
    pub fn conflicts_with(&self, other: &Literal) -> bool {
        if self.default_negated {
            !other.default_negated && other.objective == self.objective
        } else if other.default_negated {
            other.objective == self.objective
        } else {
            other.objective.atom == self.objective.atom
                && other.objective.strongly_negated != self.objective.strongly_negated
        }
    }

    pub fn atom(&self) -> &Atom {
        &self.objective.atom
    }
}

impl From<ObjectiveLiteral> for Literal {
    fn from(objective: ObjectiveLiteral) -> Self {
        Literal::objective(objective)
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.default_negated {
            f.write_str("not ")?;
        }
        write!(f, "{}", self.objective)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rule {
    pub head: Literal,
    pub body: BTreeSet<Literal>,
}

impl Rule {
    pub fn new(head: Literal, body: impl IntoIterator<Item = Literal>) -> Self {
        Rule { head, body: body.into_iter().collect() }
    }

    pub fn fact(head: Literal) -> Self {
        Rule { head, body: BTreeSet::new() }
    }

    pub fn is_fact(&self) -> bool {
        self.body.is_empty()
    }

    pub fn is_tautology(&self) -> bool {
        self.body.contains(&self.head)
    }

    pub fn literals(&self) -> impl Iterator<Item = &Literal> {
        std::iter::once(&self.head).chain(self.body.iter())
    }

    pub fn has_strong_negation(&self) -> bool {
        self.literals().any(|l| l.objective.strongly_negated)
    }

    /// Parses a single rule such as `p :- q, not -r.`
    pub fn parse(text: &str) -> Result<Self> {
        let program = parse_program(text)?;
        match <[Rule; 1]>::try_from(program.rules) {
            Ok([rule]) => Ok(rule),
            Err(rules) => Err(Error::Parse {
                line: 1,
                column: 1,
                component: None,
                message: format!("expected exactly one rule, found {}", rules.len()),
            }),
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.head)?;
        for (i, literal) in self.body.iter().enumerate() {
            f.write_str(if i == 0 { " :- " } else { ", " })?;
            write!(f, "{literal}")?;
        }
        f.write_str(".")
    }
}

/// An ordered list of rules; duplicates are kept.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Program {
    pub rules: Vec<Rule>,
}

impl Program {
    pub fn new(rules: impl IntoIterator<Item = Rule>) -> Self {
        Program { rules: rules.into_iter().collect() }
    }

    pub fn len(&self) -> usize {
        self.rules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rules.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Rule> {
        self.rules.iter()
    }

    /// No strong negation anywhere.
    pub fn is_generalised(&self) -> bool {
        !self.rules.iter().any(Rule::has_strong_negation)
    }

    /// Generalised, with atoms in every head.
    pub fn is_normal(&self) -> bool {
        self.is_generalised() && self.rules.iter().all(|r| r.head.is_objective())
    }

    pub fn is_facts(&self) -> bool {
        self.rules.iter().all(Rule::is_fact)
    }

    pub fn alphabet(&self) -> Alphabet {
        let mut alphabet = Alphabet::default();
        for rule in &self.rules {
            alphabet.extend(rule.literals().map(|l| l.atom().clone()));
        }
        alphabet
    }
}

impl<'a> IntoIterator for &'a Program {
    type Item = &'a Rule;
    type IntoIter = std::slice::Iter<'a, Rule>;

    fn into_iter(self) -> Self::IntoIter {
        self.rules.iter()
    }
}

impl FromIterator<Rule> for Program {
    fn from_iter<T: IntoIterator<Item = Rule>>(iter: T) -> Self {
        Program::new(iter)
    }
}

impl fmt::Display for Program {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, rule) in self.rules.iter().enumerate() {
            if i > 0 {
                f.write_str("\n")?;
            }
            write!(f, "{rule}")?;
        }
        Ok(())
    }
}

/// Position of a rule occurrence inside a [`Dlp`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RuleRef {
    pub component: usize,
    pub index: usize,
}

impl fmt::Display for RuleRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.component, self.index)
    }
}

/// A dynamic logic program: a nonempty sequence of programs, each one an
/// update of those before it.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Dlp {
    components: Vec<Program>,
}

impl Dlp {
    pub fn new(components: Vec<Program>) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::EmptyDlp);
        }
        Ok(Dlp { components })
    }

    pub fn singleton(program: Program) -> Self {
        Dlp { components: vec![program] }
    }

    pub fn components(&self) -> &[Program] {
        &self.components
    }

    pub fn into_components(self) -> Vec<Program> {
        self.components
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    /// Always false; kept for API symmetry with `len`.
    pub fn is_empty(&self) -> bool {
        false
    }

    /// Every rule occurrence, tagged with its position (the multiset `all(P)`).
    pub fn all(&self) -> impl Iterator<Item = (RuleRef, &Rule)> + '_ {
        self.components.iter().enumerate().flat_map(|(component, program)| {
            program
                .rules
                .iter()
                .enumerate()
                .map(move |(index, rule)| (RuleRef { component, index }, rule))
        })
    }

    pub fn rule_count(&self) -> usize {
        self.components.iter().map(Program::len).sum()
    }

    pub fn rule(&self, at: RuleRef) -> &Rule {
        &self.components[at.component].rules[at.index]
    }

    /// All rules flattened into one program, in order.
    pub fn flatten(&self) -> Program {
        self.all().map(|(_, r)| r.clone()).collect()
    }

    pub fn is_generalised(&self) -> bool {
        self.components.iter().all(Program::is_generalised)
    }

    pub fn alphabet(&self) -> Alphabet {
        let mut alphabet = Alphabet::default();
        for program in &self.components {
            alphabet.extend(program.alphabet().0);
        }
        alphabet
    }
}

impl From<Program> for Dlp {
    fn from(program: Program) -> Self {
        Dlp::singleton(program)
    }
}

impl fmt::Display for Dlp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, program) in self.components.iter().enumerate() {
            if i > 0 {
                write!(f, "\n{UPDATE_SEPARATOR}\n")?;
            }
            write!(f, "{program}")?;
        }
        Ok(())
    }
}

/// A finite set of atoms. The objective literals over it are exactly
/// `p` and `-p` for each member `p`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Alphabet(pub BTreeSet<Atom>);

impl Alphabet {
    pub fn new(atoms: impl IntoIterator<Item = Atom>) -> Self {
        Alphabet(atoms.into_iter().collect())
    }

    /// Parses a comma separated atom list such as `a,b,c`.
    pub fn parse_list(text: &str) -> Result<Self> {
        text.split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(Atom::new)
            .collect::<Result<BTreeSet<_>>>()
            .map(Alphabet)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, atom: &Atom) -> bool {
        self.0.contains(atom)
    }

    pub fn iter(&self) -> impl Iterator<Item = &Atom> {
        self.0.iter()
    }

    pub fn union(&self, other: &Alphabet) -> Alphabet {
        Alphabet(self.0.union(&other.0).cloned().collect())
    }

    pub fn is_disjoint(&self, other: &Alphabet) -> bool {
        self.0.is_disjoint(&other.0)
    }

    pub fn objective_literals(&self) -> impl Iterator<Item = ObjectiveLiteral> + '_ {
        self.0.iter().flat_map(|a| {
            [ObjectiveLiteral::positive(a.clone()), ObjectiveLiteral::negative(a.clone())]
        })
    }
}

impl Extend<Atom> for Alphabet {
    fn extend<T: IntoIterator<Item = Atom>>(&mut self, iter: T) {
        self.0.extend(iter)
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<&str> = self.0.iter().map(Atom::name).collect();
        write!(f, "{{{}}}", names.join(", "))
    }
}

pub fn default_complement(literal: &Literal) -> Literal {
    literal.default_complement()
}

pub fn strong_complement(literal: &ObjectiveLiteral) -> ObjectiveLiteral {
    literal.strong_complement()
}

pub fn con(literal: &Literal) -> Vec<Literal> {
    literal.conflicts()
}

pub fn parse_program(text: &str) -> Result<Program> {
    Parser::new(text, 1).program()
}

/// Splits on `#update.` lines; `n` separators give `n + 1` components.
pub fn parse_dlp(text: &str) -> Result<Dlp> {
    let mut components = Vec::new();
    let mut chunk = String::new();
    let mut chunk_start = 1;
    for (lineno, line) in text.lines().enumerate() {
        if line.trim() == UPDATE_SEPARATOR {
            components.push(parse_component(&chunk, chunk_start, components.len())?);
            chunk.clear();
            chunk_start = lineno + 2;
        } else {
            chunk.push_str(line);
            chunk.push('\n');
        }
    }
    components.push(parse_component(&chunk, chunk_start, components.len())?);
    Dlp::new(components)
}

fn parse_component(text: &str, first_line: usize, component: usize) -> Result<Program> {
    Parser::new(text, first_line).program().map_err(|e| match e {
        Error::Parse { line, column, message, .. } => Error::Parse {
            line,
            column,
            component: Some(component),
            message,
        },
        other => other,
    })
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    line: usize,
    line_start: usize,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str, first_line: usize) -> Self {
        Parser { src: text.as_bytes(), pos: 0, line: first_line, line_start: 0 }
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            line: self.line,
            column: self.pos - self.line_start + 1,
            component: None,
            message: message.into(),
        })
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    /// Skips whitespace and comments; reports whether anything was skipped.
    fn skip_trivia(&mut self) -> bool {
        let start = self.pos;
        while let Some(c) = self.peek() {
            match c {
                b'\n' => {
                    self.pos += 1;
                    self.line += 1;
                    self.line_start = self.pos;
                }
                b'%' => {
                    while !matches!(self.peek(), None | Some(b'\n')) {
                        self.pos += 1;
                    }
                }
                c if c.is_ascii_whitespace() => self.pos += 1,
                _ => break,
            }
        }
        self.pos > start
    }

    fn eat(&mut self, token: &str) -> bool {
        if self.src[self.pos..].starts_with(token.as_bytes()) {
            self.pos += token.len();
            true
        } else {
            false
        }
    }

    fn program(&mut self) -> Result<Program> {
        let mut rules = Vec::new();
        loop {
            self.skip_trivia();
            if self.peek().is_none() {
                return Ok(Program::new(rules));
            }
            rules.push(self.rule()?);
        }
    }

    fn rule(&mut self) -> Result<Rule> {
        if self.src[self.pos..].starts_with(b":-") {
            return self.error("rules with empty heads are not supported");
        }
        if self.peek() == Some(b'#') {
            return self.error(format!("unexpected directive; only `{UPDATE_SEPARATOR}` on its own line is allowed"));
        }
        let head = self.literal()?;
        self.skip_trivia();
        let mut body = BTreeSet::new();
        if self.eat(":-") {
            loop {
                self.skip_trivia();
                body.insert(self.literal()?);
                self.skip_trivia();
                if !self.eat(",") {
                    break;
                }
            }
        }
        self.skip_trivia();
        if !self.eat(".") {
            return self.error("expected `.` at end of rule");
        }
        Ok(Rule { head, body })
    }

    fn identifier(&mut self) -> Option<&'a str> {
        let start = self.pos;
        if !matches!(self.peek(), Some(c) if c.is_ascii_lowercase()) {
            return None;
        }
        while matches!(self.peek(), Some(c) if c.is_ascii_alphanumeric() || c == b'_') {
            self.pos += 1;
        }
        std::str::from_utf8(&self.src[start..self.pos]).ok()
    }

    fn literal(&mut self) -> Result<Literal> {
        let save = (self.pos, self.line, self.line_start);
        let mut default_negated = false;
        if self.identifier() == Some("not") && self.skip_trivia() && self.starts_literal() {
            default_negated = true;
            let inner = (self.pos, self.line, self.line_start);
            if self.identifier() == Some("not") && self.skip_trivia() && self.starts_literal() {
                (self.pos, self.line, self.line_start) = inner;
                return self.error("double default negation `not not` must be written as the plain literal");
            }
            (self.pos, self.line, self.line_start) = inner;
        } else {
            (self.pos, self.line, self.line_start) = save;
        }
        let strongly_negated = self.eat("-");
        if strongly_negated && self.peek() == Some(b'-') {
            return self.error("double strong negation `--` must be written as the plain atom");
        }
        let Some(name) = self.identifier() else {
            return self.error("expected an atom (`[a-z][A-Za-z0-9_]*`)");
        };
        let atom = Atom::new(name)?;
        Ok(Literal {
            objective: ObjectiveLiteral { atom, strongly_negated },
            default_negated,
        })
    }

    fn starts_literal(&self) -> bool {
        matches!(self.peek(), Some(c) if c == b'-' || c.is_ascii_lowercase())
    }
}

//! Independent brute-force decision procedure for membership in the WS and
//! extended WS semantics.
//!
//! The semantics ask for *some* level mapping under which two conditions
//! hold. Every requirement on the mapping is an inequality between levels of
//! objective literals, so instead of guessing levels the oracle guesses the
//! discrete choices (which rule supports each true literal, which later rule
//! rejects each violated rule, and which body literal keeps a supporting
//! rule from being rejected) and turns each choice into a constraint graph.
//! A graph of `x > y` and `x ≥ y` edges over the naturals is satisfiable iff
//! no cycle passes through a strict edge.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::interp::Interpretation;
use crate::syntax::{Dlp, Literal, ObjectiveLiteral, Rule, RuleRef};

/// Largest DLP (in rules) the oracle accepts.
pub const ORACLE_RULE_LIMIT: usize = 8;

/// A node is an objective literal or the constant level 0 (`None`).
type Node = Option<ObjectiveLiteral>;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Relation {
    Greater,
    AtLeast,
}

type Edge = (Node, Node, Relation);

/// One alternative of a choice: the edges it contributes.
type Alternative = Vec<Edge>;

fn node(l: &Literal) -> Node {
    Some(l.objective.clone())
}

/// `level(head) > level(b)` for each body literal, with `level(head) > 0`
/// for facts (the maximum over an empty body is 0).
fn above_body(head: &[Node], body: &std::collections::BTreeSet<Literal>) -> Alternative {
    let lows: Vec<Node> = if body.is_empty() { vec![None] } else { body.iter().map(node).collect() };
    head.iter()
        .flat_map(|h| lows.iter().map(move |b| (h.clone(), b.clone(), Relation::Greater)))
        .collect()
}

/// True iff J is a WS model (`extended = false`) or an extended WS model
/// (`extended = true`) of `dlp`.
pub fn ws_oracle(dlp: &Dlp, j: &Interpretation, extended: bool) -> Result<bool> {
    if dlp.rule_count() > ORACLE_RULE_LIMIT {
        return Err(Error::OracleLimit { rules: dlp.rule_count(), limit: ORACLE_RULE_LIMIT });
    }
    let rules: Vec<(RuleRef, &Rule)> = dlp.all().collect();

    // Which later rules may override `pi`, and how the heads relate.
    let overrides = |at: RuleRef, pi: &Rule, sigma_at: RuleRef, sigma: &Rule| {
        sigma_at.component > at.component
            && if extended {
                pi.head.conflicts_with(&sigma.head)
            } else {
                sigma.head == pi.head.default_complement()
            }
    };

    let mut choices: Vec<Vec<Alternative>> = Vec::new();

    // Condition 1: a rule J violates must be rejected, by some later rule
    // with a true body that sits low enough.
    for &(at, pi) in &rules {
        if j.satisfies(pi) {
            continue;
        }
        let conflict_levels: Vec<Node> = if extended {
            pi.head.conflicts().iter().map(node).collect()
        } else {
            vec![node(&pi.head.default_complement())]
        };
        let alternatives: Vec<Alternative> = rules
            .iter()
            .filter(|(by, sigma)| overrides(at, pi, *by, sigma) && j.satisfies(&sigma.body))
            .map(|(_, sigma)| above_body(&conflict_levels, &sigma.body))
            .collect();
        choices.push(alternatives);
    }

    // Condition 2: each true literal has a supporting rule with a true body
    // and a lower body. For the extended semantics the supporter comes from
    // the rules not overridden by any later rule with a true body; for WS it
    // must survive rejection under the chosen levels, i.e. every potential
    // rejecter has some body literal at or above the supported literal.
    for l in j.iter() {
        let head = vec![Some(l.clone())];
        let mut alternatives = Vec::new();
        for &(at, pi) in &rules {
            if !(pi.head.is_objective() && &pi.head.objective == l && j.satisfies(&pi.body)) {
                continue;
            }
            let rejecters: Vec<&Rule> = rules
                .iter()
                .filter(|(by, sigma)| overrides(at, pi, *by, sigma) && j.satisfies(&sigma.body))
                .map(|(_, sigma)| *sigma)
                .collect();
            let support = above_body(&head, &pi.body);
            if extended {
                if rejecters.is_empty() {
                    alternatives.push(support);
                }
                continue;
            }
            // one body literal per rejecter must reach the level of `l`
            let mut partial = vec![support];
            for sigma in rejecters {
                let lifts: Vec<Node> =
                    if sigma.body.is_empty() { vec![None] } else { sigma.body.iter().map(node).collect() };
                partial = partial
                    .into_iter()
                    .flat_map(|edges| {
                        lifts.iter().map(move |b| {
                            let mut edges = edges.clone();
                            edges.push((b.clone(), Some(l.clone()), Relation::AtLeast));
                            edges
                        })
                    })
                    .collect();
            }
            alternatives.extend(partial);
        }
        choices.push(alternatives);
    }

    let mut picked = Vec::new();
    Ok(search(&choices, &mut picked))
}

fn search(choices: &[Vec<Alternative>], picked: &mut Vec<Edge>) -> bool {
    let Some((first, rest)) = choices.split_first() else {
        return satisfiable(picked);
    };
    for alternative in first {
        let mark = picked.len();
        picked.extend(alternative.iter().cloned());
        if satisfiable(picked) && search(rest, picked) {
            return true;
        }
        picked.truncate(mark);
    }
    false
}

/// No cycle through a strict edge, with every node at or above 0.
fn satisfiable(edges: &[Edge]) -> bool {
    let mut index: BTreeMap<Node, usize> = BTreeMap::new();
    index.insert(None, 0);
    for (a, b, _) in edges {
        for n in [a, b] {
            let next = index.len();
            index.entry(n.clone()).or_insert(next);
        }
    }
    let n = index.len();
    let mut reach = vec![vec![false; n]; n];
    for (i, row) in reach.iter_mut().enumerate() {
        row[0] = true; // x ≥ 0
        row[i] = true;
    }
    for (a, b, _) in edges {
        reach[index[a]][index[b]] = true;
    }
    for k in 0..n {
        let via = reach[k].clone();
        for row in reach.iter_mut() {
            if row[k] {
                for (t, &r) in via.iter().enumerate() {
                    row[t] |= r;
                }
            }
        }
    }
    edges
        .iter()
        .filter(|(_, _, r)| *r == Relation::Greater)
        .all(|(a, b, _)| !reach[index[b]][index[a]])
}

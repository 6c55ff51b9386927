//! Batch runs of properties over given DLPs or seeded random instances.

use std::fmt;

use crate::error::{Error, Result};
use crate::syntax::{parse_dlp, parse_program, Dlp};
use crate::updates::{EvalOptions, SemanticsId};

use super::generate::{generate_case, GeneratorParams};
use super::table1::{Table1Case, Table1Instance};
use super::{check_case, CaseInstance, Outcome, PropertyCase, PropertyReport};

/// Where the instances of a suite come from.
#[derive(Clone, Debug)]
pub enum SuiteInput {
    /// The worked examples followed by `count` generated instances.
    Random { count: usize, seed: u64, params: GeneratorParams },
    /// User-supplied DLPs, each read as an instance of every property.
    Given(Vec<Dlp>),
}

/// Tally for one property.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CaseSummary {
    pub case: PropertyCase,
    /// Instances on which the property was applicable.
    pub checked: usize,
    pub passed: usize,
    pub failed: usize,
    pub not_applicable: usize,
    /// Failures of this property under this semantics are documented
    /// shortcomings rather than bugs.
    pub expected_failure: bool,
    /// The smallest failing instance (by rule count) seen in the run.
    pub counterexample: Option<PropertyReport>,
}

impl CaseSummary {
    pub fn is_ok(&self) -> bool {
        self.failed == 0 || self.expected_failure
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteReport {
    pub semantics: SemanticsId,
    pub cases: Vec<CaseSummary>,
}

impl SuiteReport {
    /// No failures other than documented ones.
    pub fn is_ok(&self) -> bool {
        self.cases.iter().all(CaseSummary::is_ok)
    }

    pub fn unexpected_failures(&self) -> usize {
        self.cases.iter().filter(|c| !c.expected_failure).map(|c| c.failed).sum()
    }

    pub fn case(&self, case: PropertyCase) -> Option<&CaseSummary> {
        self.cases.iter().find(|c| c.case == case)
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "semantics {}", self.semantics)?;
        for c in &self.cases {
            let status = match (c.failed, c.expected_failure) {
                (0, _) => "pass",
                (_, true) => "expected",
                (_, false) => "FAIL",
            };
            writeln!(
                f,
                "{:<28} {:<8} {:>4} checked {:>4} passed {:>4} failed {:>4} n/a",
                c.case.name(),
                status,
                c.checked,
                c.passed,
                c.failed,
                c.not_applicable
            )?;
            if let Some(report) = &c.counterexample {
                for (i, dlp) in report.inputs.iter().enumerate() {
                    let text = dlp.to_string().replace('\n', " ");
                    writeln!(f, "    input {i}: {}", if text.is_empty() { "(empty)".into() } else { text })?;
                }
                if let Some(w) = &report.witness {
                    writeln!(f, "    witness: {w}")?;
                }
            }
        }
        Ok(())
    }
}

fn dlp(text: &str) -> Dlp {
    parse_dlp(text).expect("built-in example parses")
}

/// Worked examples that open every random run.
pub fn worked_examples(case: PropertyCase) -> Vec<CaseInstance> {
    const IRRELEVANT: &str =
        "day :- not night.\nnight :- not day.\nstars :- night, not cloudy.\nnot stars.";
    const RAILWAY: &str = "cross :- -train.\nwait :- train.\nlisten :- not train, not -train.\n#update.\ntrain.\n#update.\nnot train.";
    const STRATIFIED: &str = "p :- q, not r.\nnot p :- s.\nq.\ns :- q.\n#update.\n-p.\nr :- q.\n-r :- q, s.\n#update.\nnot r.";
    let table1 = |instance: Table1Instance| vec![CaseInstance::Table1(instance)];
    match case {
        PropertyCase::Table1(row) => match row {
            Table1Case::FactUpdate => table1(Table1Instance::FactUpdate { dlp: dlp("p.\n#update.\n-p.") }),
            Table1Case::EmptyUpdate => {
                table1(Table1Instance::EmptyUpdate { dlp: dlp("p.\n-p.\n#update.\n"), index: 1 })
            }
            Table1Case::Tautologies => table1(Table1Instance::Tautologies {
                dlp: dlp(&format!("{IRRELEVANT}\n#update.\n")),
                tautologies: vec![Default::default(), parse_program("stars :- stars.").expect("parses")],
            }),
            Table1Case::Generalisation | Table1Case::Idempotence => {
                table1(Table1Instance::from_dlp(row, &dlp(IRRELEVANT)))
            }
            _ => table1(Table1Instance::from_dlp(row, &dlp(RAILWAY))),
        },
        PropertyCase::EarlyRecovery => vec![CaseInstance::from_dlp(case, &dlp("p.\n-p.\n#update.\nnot p."))],
        PropertyCase::GeneralisedEarlyRecovery => vec![
            CaseInstance::from_dlp(case, &dlp(STRATIFIED)),
            CaseInstance::from_dlp(case, &dlp("p.\n-p.\n#update.\nnot p.")),
        ],
    }
}

fn size(report: &PropertyReport) -> usize {
    report.inputs.iter().map(Dlp::rule_count).sum()
}

/// Runs each of `cases` under `semantics` and tallies the outcomes.
pub fn run_suite(
    semantics: SemanticsId,
    cases: &[PropertyCase],
    input: &SuiteInput,
    opts: &EvalOptions,
) -> Result<SuiteReport> {
    let mut summaries = Vec::new();
    for &case in cases {
        let instances: Vec<CaseInstance> = match input {
            SuiteInput::Random { count, seed, params } => {
                let strong = semantics.accepts_strong_negation();
                worked_examples(case)
                    .into_iter()
                    .chain((0..*count as u64).map(|i| generate_case(case, seed.wrapping_add(i), params, strong)))
                    .collect()
            }
            SuiteInput::Given(dlps) => dlps.iter().map(|d| CaseInstance::from_dlp(case, d)).collect(),
        };
        let mut summary = CaseSummary {
            case,
            checked: 0,
            passed: 0,
            failed: 0,
            not_applicable: 0,
            expected_failure: case.is_expected_failure(semantics),
            counterexample: None,
        };
        for instance in &instances {
            let report = match check_case(instance, semantics, opts) {
                Ok(report) => report,
                Err(Error::Shape(_)) => {
                    summary.not_applicable += 1;
                    continue;
                }
                Err(e) => return Err(e),
            };
            match report.outcome {
                Outcome::Holds => {
                    summary.checked += 1;
                    summary.passed += 1;
                }
                Outcome::Violated => {
                    summary.checked += 1;
                    summary.failed += 1;
                    let smaller = summary.counterexample.as_ref().is_none_or(|c| size(&report) < size(c));
                    if smaller {
                        summary.counterexample = Some(report);
                    }
                }
                Outcome::NotApplicable(_) => summary.not_applicable += 1,
            }
        }
        summaries.push(summary);
    }
    Ok(SuiteReport { semantics, cases: summaries })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn random(count: usize) -> SuiteInput {
        SuiteInput::Random { count, seed: 7, params: GeneratorParams::default() }
    }

    #[test]
    fn extended_semantics_pass_everything() {
        for sem in [SemanticsId::Erd, SemanticsId::Ews] {
            let report = run_suite(sem, &PropertyCase::ALL, &random(10), &EvalOptions::default()).unwrap();
            assert!(report.is_ok(), "{report}");
            assert_eq!(report.unexpected_failures(), 0);
            assert!(report.cases.iter().all(|c| c.checked > 0), "{report}");
        }
    }

    #[test]
    fn documented_failures_show_up() {
        let empty = PropertyCase::Table1(Table1Case::EmptyUpdate);
        let report = run_suite(SemanticsId::RdExpone, &[empty], &random(0), &EvalOptions::default()).unwrap();
        let summary = report.case(empty).unwrap();
        assert_eq!(summary.failed, 1);
        assert!(summary.expected_failure && report.is_ok());

        let report =
            run_suite(SemanticsId::WsExptwo, &[PropertyCase::EarlyRecovery], &random(0), &EvalOptions::default())
                .unwrap();
        assert_eq!(report.case(PropertyCase::EarlyRecovery).unwrap().failed, 1);
        assert!(report.is_ok());
    }

    #[test]
    fn given_inputs_with_unfitting_shapes_are_not_applicable() {
        let input = SuiteInput::Given(vec![dlp("p :- q.\n#update.\nq.")]);
        let report = run_suite(SemanticsId::Erd, &PropertyCase::ALL, &input, &EvalOptions::default()).unwrap();
        let fact = report.case(PropertyCase::Table1(Table1Case::FactUpdate)).unwrap();
        assert_eq!((fact.checked, fact.not_applicable), (0, 1));
        assert!(report.is_ok());
    }
}

//! Semantics for updates of answer-set programs that allow both strong
//! negation (`-p`) and default negation (`not p`) in rule heads.
//!
//! The crate evaluates, by brute-force enumeration over a finite alphabet:
//!
//! * stable and well-supported models of single programs ([`single`]);
//! * the RD and WS semantics for sequences of programs without strong
//!   negation, their transformational extensions through `expone` and
//!   `exptwo`, and the extended RD/WS semantics with native strong
//!   negation ([`updates`]);
//! * executable checks of update principles and properties, plus seeded
//!   random instance generators for them ([`principles`]).

pub mod error;
pub mod interp;
pub mod principles;
pub mod single;
pub mod syntax;
pub mod updates;

pub use error::{Error, Result};
pub use interp::{Interpretation, LiteralSet, Universe};
pub use single::LevelMapping;
pub use syntax::{parse_dlp, parse_program, Alphabet, Atom, Dlp, Literal, ObjectiveLiteral, Program, Rule, RuleRef};
pub use updates::{models, EvalOptions, ModelSet, RejectionSet, SemanticsId};

//! Python programs: parsing, canonical printing, tree paths and name scopes.

pub mod builtins;
pub mod ingest;
pub mod printer;
pub mod scope;
pub mod tree;
pub mod visit;

use serde::{Deserialize, Serialize};

pub use tree::{parse, SyntaxError, SyntaxTree};
pub use visit::{NodePath, Step};

/// Which benchmark a program came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Origin {
    #[serde(rename = "livecodebench")]
    LiveCodeBench,
    #[serde(rename = "cruxeval")]
    CruxEval,
    /// Hand-written or otherwise local programs.
    Local,
}

/// One input/output example for a program.
///
/// `input_expr` is the text between the call parentheses, so
/// `f(1, [2, 3])` stores `1, [2, 3]`. `expected_output` is a Python literal.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TestCase {
    pub input_expr: String,
    pub expected_output: String,
}

/// A benchmark program with its entry point and tests.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Program {
    pub id: String,
    pub source: String,
    pub entry_point: String,
    pub tests: Vec<TestCase>,
    pub origin: Origin,
}

impl Program {
    pub fn parse(&self) -> Result<SyntaxTree, SyntaxError> {
        SyntaxTree::parse(&self.source)
    }

    /// The test shown in prompts.
    pub fn designated_test(&self) -> Option<&TestCase> {
        self.tests.first()
    }
}

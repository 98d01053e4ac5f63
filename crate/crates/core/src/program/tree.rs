use std::convert::Infallible;
use std::fmt;
use std::sync::Arc;

use rustpython_ast::fold::{Fold, Foldable};
use rustpython_parser::ast::{self, Stmt};
use rustpython_parser::text_size::TextRange;
use rustpython_parser::Parse;

use super::printer;

/// Parse failure with a 1-based line/column position.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("syntax error at line {line}, column {column}: {message}")]
pub struct SyntaxError {
    pub offset: usize,
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl SyntaxError {
    fn from_parse(source: &str, err: rustpython_parser::ParseError) -> Self {
        let offset = usize::from(err.offset).min(source.len());
        let (line, column) = line_col(source, offset);
        SyntaxError {
            offset,
            line,
            column,
            message: err.error.to_string(),
        }
    }
}

fn line_col(source: &str, offset: usize) -> (usize, usize) {
    let mut line = 1;
    let mut col = 1;
    for (i, ch) in source.char_indices() {
        if i >= offset {
            break;
        }
        if ch == '\n' {
            line += 1;
            col = 1;
        } else {
            col += 1;
        }
    }
    (line, col)
}

/// A parsed Python module together with the text its node ranges index into.
///
/// Trees are immutable; rewrites go through [`SyntaxTree::from_body`], which
/// prints the new statements canonically and parses them again so that every
/// node carries a range into [`SyntaxTree::source`].
#[derive(Debug, Clone)]
pub struct SyntaxTree {
    source: Arc<str>,
    body: ast::Suite,
}

/// Range-free copy of a module body; equality on it is structural equality.
pub type Shape = Vec<Stmt<()>>;

impl SyntaxTree {
    pub fn parse(source: &str) -> Result<Self, SyntaxError> {
        let body = ast::Suite::parse(source, "<program>")
            .map_err(|e| SyntaxError::from_parse(source, e))?;
        Ok(SyntaxTree {
            source: Arc::from(source),
            body,
        })
    }

    /// Builds a tree from rewritten statements by printing and re-parsing them.
    pub fn from_body(body: &[Stmt]) -> Result<Self, SyntaxError> {
        let text = printer::emit_suite(body);
        Self::parse(&text)
    }

    pub fn body(&self) -> &[Stmt] {
        &self.body
    }

    /// Owned copy of the statements, for rewriting.
    pub fn to_body(&self) -> ast::Suite {
        self.body.clone()
    }

    /// The text the node ranges refer to.
    pub fn source(&self) -> &str {
        &self.source
    }

    pub fn slice(&self, range: TextRange) -> &str {
        &self.source[usize::from(range.start())..usize::from(range.end())]
    }

    pub fn is_empty(&self) -> bool {
        self.body.is_empty()
    }

    pub fn emit(&self) -> String {
        printer::emit_suite(&self.body)
    }

    pub fn shape(&self) -> Shape {
        erase_ranges(self.body.clone())
    }

    pub fn structurally_eq(&self, other: &SyntaxTree) -> bool {
        self.shape() == other.shape()
    }

    /// Names of functions defined at module top level.
    pub fn top_level_functions(&self) -> impl Iterator<Item = &str> {
        self.body.iter().filter_map(|s| match s {
            Stmt::FunctionDef(f) => Some(f.name.as_str()),
            Stmt::AsyncFunctionDef(f) => Some(f.name.as_str()),
            _ => None,
        })
    }
}

impl fmt::Display for SyntaxTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.emit())
    }
}

pub fn parse(source: &str) -> Result<SyntaxTree, SyntaxError> {
    SyntaxTree::parse(source)
}

pub fn emit(tree: &SyntaxTree) -> String {
    tree.emit()
}

struct RangeEraser;

impl Fold<TextRange> for RangeEraser {
    type TargetU = ();
    type Error = Infallible;
    type UserContext = ();

    fn will_map_user(&mut self, _user: &TextRange) -> Self::UserContext {}

    fn map_user(
        &mut self,
        _user: TextRange,
        _context: Self::UserContext,
    ) -> Result<Self::TargetU, Self::Error> {
        Ok(())
    }
}

pub(crate) fn erase_ranges<X: Foldable<TextRange, ()>>(node: X) -> X::Mapped {
    match node.fold(&mut RangeEraser) {
        Ok(mapped) => mapped,
        Err(never) => match never {},
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_module_has_no_statements() {
        let tree = parse("").unwrap();
        assert!(tree.is_empty());
        assert_eq!(tree.emit(), "");
    }

    #[test]
    fn malformed_def_is_rejected_with_position() {
        let err = parse("def f(: pass").unwrap_err();
        assert_eq!(err.line, 1);
        assert!(err.column > 1);
    }

    #[test]
    fn shape_ignores_formatting() {
        let a = parse("x = (1 +\n  2)\n").unwrap();
        let b = parse("x = 1 + 2").unwrap();
        assert!(a.structurally_eq(&b));
        let c = parse("x = 1 - 2").unwrap();
        assert!(!a.structurally_eq(&c));
    }
}

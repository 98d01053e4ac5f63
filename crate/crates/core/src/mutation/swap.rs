//! Negate an `if` condition and exchange its branches.

use rustpython_parser::ast::{self, Expr, Stmt, UnaryOp};
use rustpython_parser::text_size::TextRange;

use super::{MutationError, Site};
use crate::program::visit::{splice_stmt, stmt_at, stmt_paths};
use crate::program::{NodePath, SyntaxTree};

fn applicable(s: &Stmt) -> Result<&ast::StmtIf, &'static str> {
    let Stmt::If(i) = s else {
        return Err("not an if statement");
    };
    match i.orelse.as_slice() {
        [] => Err("no else branch"),
        [Stmt::If(_)] => Err("else branch is an elif"),
        _ => Ok(i),
    }
}

pub fn find_sites(tree: &SyntaxTree) -> Vec<Site> {
    stmt_paths(tree.body())
        .into_iter()
        .filter(|(_, s)| applicable(s).is_ok())
        .map(|(p, _)| Site::at(p))
        .collect()
}

pub fn apply(tree: &SyntaxTree, path: &NodePath) -> Result<SyntaxTree, MutationError> {
    let s = stmt_at(tree.body(), path).ok_or_else(|| MutationError::na(path, "no statement"))?;
    let i = applicable(&s).map_err(|r| MutationError::na(path, r))?;
    let negated = Expr::UnaryOp(ast::ExprUnaryOp {
        range: TextRange::default(),
        op: UnaryOp::Not,
        operand: i.test.clone(),
    });
    let swapped = Stmt::If(ast::StmtIf {
        range: i.range,
        test: Box::new(negated),
        body: i.orelse.clone(),
        orelse: i.body.clone(),
    });
    let mut body = tree.to_body();
    splice_stmt(&mut body, path, vec![swapped]);
    Ok(SyntaxTree::from_body(&body)?)
}

//! Mirror a binary comparison: `a < b` becomes `b > a`.

use rustpython_parser::ast::{self, CmpOp, Expr};

use super::purity::{bound_names, is_pure, is_simple};
use super::{MutationError, Site};
use crate::program::visit::{expr_at, expr_paths, replace_expr};
use crate::program::{NodePath, SyntaxTree};

pub fn mirrored(op: CmpOp) -> Option<CmpOp> {
    Some(match op {
        CmpOp::Eq => CmpOp::Eq,
        CmpOp::NotEq => CmpOp::NotEq,
        CmpOp::Lt => CmpOp::Gt,
        CmpOp::LtE => CmpOp::GtE,
        CmpOp::Gt => CmpOp::Lt,
        CmpOp::GtE => CmpOp::LtE,
        _ => return None,
    })
}

/// Why `e` cannot be mirrored, or `None` if it can.
///
/// Swapping operands also swaps their evaluation order, so when one side may
/// have side effects the other must be a plain name/constant/arithmetic.
fn blocker(e: &Expr, shadowed: &std::collections::HashSet<String>) -> Option<&'static str> {
    let Expr::Compare(c) = e else {
        return Some("not a comparison");
    };
    if c.ops.len() != 1 || c.comparators.len() != 1 {
        return Some("chained comparison");
    }
    if mirrored(c.ops[0]).is_none() {
        return Some("operator has no mirror");
    }
    let (l, r) = (&*c.left, &c.comparators[0]);
    let (lp, rp) = (is_pure(l, shadowed), is_pure(r, shadowed));
    if (!lp && !is_simple(r)) || (!rp && !is_simple(l)) {
        return Some("operand evaluation order is observable");
    }
    None
}

pub fn find_sites(tree: &SyntaxTree) -> Vec<super::Site> {
    let shadowed = bound_names(tree.body());
    expr_paths(tree.body())
        .into_iter()
        .filter(|(_, e)| blocker(e, &shadowed).is_none())
        .map(|(p, _)| Site::at(p))
        .collect()
}

pub fn apply(tree: &SyntaxTree, path: &NodePath) -> Result<SyntaxTree, MutationError> {
    let e = expr_at(tree.body(), path).ok_or_else(|| MutationError::na(path, "no expression"))?;
    let shadowed = bound_names(tree.body());
    if let Some(reason) = blocker(&e, &shadowed) {
        return Err(MutationError::na(path, reason));
    }
    let Expr::Compare(c) = e else {
        unreachable!("blocker accepted a non-comparison")
    };
    let op = mirrored(c.ops[0]).expect("checked by blocker");
    let swapped = Expr::Compare(ast::ExprCompare {
        range: c.range,
        left: Box::new(c.comparators[0].clone()),
        ops: vec![op],
        comparators: vec![*c.left],
    });
    let mut body = tree.to_body();
    replace_expr(&mut body, path, swapped);
    Ok(SyntaxTree::from_body(&body)?)
}

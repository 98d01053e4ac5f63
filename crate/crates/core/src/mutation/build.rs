//! Constructors for synthetic nodes. Ranges are left empty; trees are
//! re-parsed after rewriting.

use rustpython_parser::ast::{
    self, bigint::BigInt, CmpOp, Constant, Expr, ExprContext, Identifier, Operator, Stmt,
};
use rustpython_parser::text_size::TextRange;

pub fn name(id: &str, ctx: ExprContext) -> Expr {
    Expr::Name(ast::ExprName {
        range: TextRange::default(),
        id: Identifier::new(id),
        ctx,
    })
}

pub fn load(id: &str) -> Expr {
    name(id, ExprContext::Load)
}

pub fn int(v: i64) -> Expr {
    Expr::Constant(ast::ExprConstant {
        range: TextRange::default(),
        value: Constant::Int(BigInt::from(v)),
        kind: None,
    })
}

pub fn call(func: &str, args: Vec<Expr>) -> Expr {
    Expr::Call(ast::ExprCall {
        range: TextRange::default(),
        func: Box::new(load(func)),
        args,
        keywords: Vec::new(),
    })
}

pub fn compare(left: Expr, op: CmpOp, right: Expr) -> Expr {
    Expr::Compare(ast::ExprCompare {
        range: TextRange::default(),
        left: Box::new(left),
        ops: vec![op],
        comparators: vec![right],
    })
}

pub fn binop(left: Expr, op: Operator, right: Expr) -> Expr {
    Expr::BinOp(ast::ExprBinOp {
        range: TextRange::default(),
        left: Box::new(left),
        op,
        right: Box::new(right),
    })
}

pub fn subscript(value: Expr, index: Expr) -> Expr {
    Expr::Subscript(ast::ExprSubscript {
        range: TextRange::default(),
        value: Box::new(value),
        slice: Box::new(index),
        ctx: ExprContext::Load,
    })
}

pub fn assign(target: Expr, value: Expr) -> Stmt {
    Stmt::Assign(ast::StmtAssign {
        range: TextRange::default(),
        targets: vec![target],
        value: Box::new(value),
        type_comment: None,
    })
}

pub fn increment(var: &str) -> Stmt {
    Stmt::AugAssign(ast::StmtAugAssign {
        range: TextRange::default(),
        target: Box::new(name(var, ExprContext::Store)),
        op: Operator::Add,
        value: Box::new(int(1)),
    })
}

pub fn while_loop(test: Expr, body: Vec<Stmt>) -> Stmt {
    Stmt::While(ast::StmtWhile {
        range: TextRange::default(),
        test: Box::new(test),
        body,
        orelse: Vec::new(),
    })
}

pub fn if_stmt(test: Expr, body: Vec<Stmt>) -> Stmt {
    Stmt::If(ast::StmtIf {
        range: TextRange::default(),
        test: Box::new(test),
        body,
        orelse: Vec::new(),
    })
}

//! Conservative side-effect analysis for expressions.

use std::collections::HashSet;

use rustpython_parser::ast::{Expr, Stmt};

use crate::program::builtins::is_pure_builtin;
use crate::program::scope::{analyze, BindingKind};

/// Names the program binds anywhere; builtins with these names are not trusted.
pub fn bound_names(body: &[Stmt]) -> HashSet<String> {
    analyze(body)
        .symbols
        .into_iter()
        .filter(|s| !matches!(s.kind, BindingKind::Builtin | BindingKind::GlobalRead))
        .map(|s| s.name)
        .collect()
}

/// True if evaluating `e` cannot change program state. Calls are allowed only
/// to unshadowed pure builtins with pure arguments.
pub fn is_pure(e: &Expr, shadowed: &HashSet<String>) -> bool {
    let p = |x: &Expr| is_pure(x, shadowed);
    match e {
        Expr::Name(_) | Expr::Constant(_) | Expr::Lambda(_) => true,
        Expr::Call(c) => {
            let callee_ok = match &*c.func {
                Expr::Name(n) => is_pure_builtin(n.id.as_str()) && !shadowed.contains(n.id.as_str()),
                _ => false,
            };
            callee_ok && c.args.iter().all(p) && c.keywords.iter().all(|k| p(&k.value))
        }
        Expr::NamedExpr(_) | Expr::Await(_) | Expr::Yield(_) | Expr::YieldFrom(_) => false,
        Expr::BoolOp(b) => b.values.iter().all(p),
        Expr::BinOp(b) => p(&b.left) && p(&b.right),
        Expr::UnaryOp(u) => p(&u.operand),
        Expr::IfExp(i) => p(&i.test) && p(&i.body) && p(&i.orelse),
        Expr::Dict(d) => d.keys.iter().flatten().all(p) && d.values.iter().all(p),
        Expr::Set(s) => s.elts.iter().all(p),
        Expr::List(l) => l.elts.iter().all(p),
        Expr::Tuple(t) => t.elts.iter().all(p),
        Expr::ListComp(c) => p(&c.elt) && comp_pure(&c.generators, shadowed),
        Expr::SetComp(c) => p(&c.elt) && comp_pure(&c.generators, shadowed),
        Expr::GeneratorExp(c) => p(&c.elt) && comp_pure(&c.generators, shadowed),
        Expr::DictComp(c) => p(&c.key) && p(&c.value) && comp_pure(&c.generators, shadowed),
        Expr::Compare(c) => p(&c.left) && c.comparators.iter().all(p),
        Expr::FormattedValue(f) => p(&f.value) && f.format_spec.as_deref().map_or(true, p),
        Expr::JoinedStr(j) => j.values.iter().all(p),
        Expr::Attribute(a) => p(&a.value),
        Expr::Subscript(s) => p(&s.value) && p(&s.slice),
        Expr::Starred(s) => p(&s.value),
        Expr::Slice(s) => [&s.lower, &s.upper, &s.step]
            .into_iter()
            .flatten()
            .all(|x| p(x)),
    }
}

fn comp_pure(gens: &[rustpython_parser::ast::Comprehension], shadowed: &HashSet<String>) -> bool {
    gens.iter().all(|g| {
        is_pure(&g.iter, shadowed) && g.ifs.iter().all(|c| is_pure(c, shadowed)) && !g.is_async
    })
}

/// Names, constants, and arithmetic over them.
pub fn is_simple(e: &Expr) -> bool {
    match e {
        Expr::Name(_) | Expr::Constant(_) => true,
        Expr::UnaryOp(u) => is_simple(&u.operand),
        Expr::BinOp(b) => is_simple(&b.left) && is_simple(&b.right),
        _ => false,
    }
}

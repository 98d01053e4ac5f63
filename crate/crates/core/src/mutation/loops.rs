//! Loop rewrites: `for` to index-driven `while`, and partial unrolling of
//! counting `while` loops.

use std::collections::HashSet;

use rustpython_parser::ast::{self, CmpOp, Constant, Expr, ExprContext, Operator, Stmt};

use super::build;
use super::fresh::{readable_name, INDEX_NAMES, SEQ_NAMES};
use super::purity::bound_names;
use super::{MutationError, Site};
use crate::program::scope::analyze;
use crate::program::visit::{splice_stmt, stmt_at, stmt_paths, walk_mut, Flow, VisitMut};
use crate::program::{NodePath, SyntaxTree};

/// True if a `break` (or `continue`) belonging to the loop whose body is `body` occurs.
fn has_loop_jump(body: &[Stmt], want_break: bool, want_continue: bool) -> bool {
    body.iter().any(|s| match s {
        Stmt::Break(_) => want_break,
        Stmt::Continue(_) => want_continue,
        Stmt::For(f) => has_loop_jump(&f.orelse, want_break, want_continue),
        Stmt::AsyncFor(f) => has_loop_jump(&f.orelse, want_break, want_continue),
        Stmt::While(w) => has_loop_jump(&w.orelse, want_break, want_continue),
        Stmt::FunctionDef(_) | Stmt::AsyncFunctionDef(_) | Stmt::ClassDef(_) => false,
        Stmt::If(i) => {
            has_loop_jump(&i.body, want_break, want_continue)
                || has_loop_jump(&i.orelse, want_break, want_continue)
        }
        Stmt::With(w) => has_loop_jump(&w.body, want_break, want_continue),
        Stmt::AsyncWith(w) => has_loop_jump(&w.body, want_break, want_continue),
        Stmt::Try(t) => {
            has_loop_jump(&t.body, want_break, want_continue)
                || t.handlers.iter().any(|h| {
                    let ast::ExceptHandler::ExceptHandler(h) = h;
                    has_loop_jump(&h.body, want_break, want_continue)
                })
                || has_loop_jump(&t.orelse, want_break, want_continue)
                || has_loop_jump(&t.finalbody, want_break, want_continue)
        }
        Stmt::TryStar(t) => {
            has_loop_jump(&t.body, want_break, want_continue)
                || t.handlers.iter().any(|h| {
                    let ast::ExceptHandler::ExceptHandler(h) = h;
                    has_loop_jump(&h.body, want_break, want_continue)
                })
                || has_loop_jump(&t.orelse, want_break, want_continue)
                || has_loop_jump(&t.finalbody, want_break, want_continue)
        }
        Stmt::Match(m) => m
            .cases
            .iter()
            .any(|c| has_loop_jump(&c.body, want_break, want_continue)),
        _ => false,
    })
}

/// True if a `return` outside nested function and class bodies occurs.
fn has_return(body: &[Stmt]) -> bool {
    body.iter().any(|s| match s {
        Stmt::Return(_) => true,
        Stmt::FunctionDef(_) | Stmt::AsyncFunctionDef(_) | Stmt::ClassDef(_) => false,
        Stmt::For(f) => has_return(&f.body) || has_return(&f.orelse),
        Stmt::AsyncFor(f) => has_return(&f.body) || has_return(&f.orelse),
        Stmt::While(w) => has_return(&w.body) || has_return(&w.orelse),
        Stmt::If(i) => has_return(&i.body) || has_return(&i.orelse),
        Stmt::With(w) => has_return(&w.body),
        Stmt::AsyncWith(w) => has_return(&w.body),
        Stmt::Try(t) => {
            has_return(&t.body)
                || t.handlers.iter().any(|h| {
                    let ast::ExceptHandler::ExceptHandler(h) = h;
                    has_return(&h.body)
                })
                || has_return(&t.orelse)
                || has_return(&t.finalbody)
        }
        Stmt::TryStar(t) => {
            has_return(&t.body)
                || t.handlers.iter().any(|h| {
                    let ast::ExceptHandler::ExceptHandler(h) = h;
                    has_return(&h.body)
                })
                || has_return(&t.orelse)
                || has_return(&t.finalbody)
        }
        Stmt::Match(m) => m.cases.iter().any(|c| has_return(&c.body)),
        _ => false,
    })
}

/// Every name bound anywhere inside `body`, nested scopes included.
pub fn bound_in(body: &[Stmt]) -> HashSet<String> {
    analyze(body)
        .symbols
        .into_iter()
        .filter(|s| !s.binding_occurrences.is_empty())
        .map(|s| s.name)
        .collect()
}

fn simple_target(e: &Expr) -> bool {
    match e {
        Expr::Name(_) => true,
        Expr::Tuple(t) => t.elts.iter().all(simple_target),
        Expr::List(l) => l.elts.iter().all(simple_target),
        Expr::Starred(s) => simple_target(&s.value),
        _ => false,
    }
}

fn for_blocker(s: &Stmt, shadowed: &HashSet<String>) -> Option<&'static str> {
    let f = match s {
        Stmt::For(f) => f,
        Stmt::AsyncFor(_) => return Some("async for"),
        _ => return Some("not a for loop"),
    };
    if !f.orelse.is_empty() {
        return Some("for-else");
    }
    if has_loop_jump(&f.body, false, true) {
        return Some("continue would skip the index increment");
    }
    if !simple_target(&f.target) {
        return Some("loop target is not a plain name pattern");
    }
    if shadowed.contains("len") || shadowed.contains("list") {
        return Some("len or list is shadowed");
    }
    None
}

pub fn find_for_sites(tree: &SyntaxTree) -> Vec<Site> {
    let shadowed = bound_names(tree.body());
    stmt_paths(tree.body())
        .into_iter()
        .filter(|(_, s)| for_blocker(s, &shadowed).is_none())
        .map(|(p, _)| Site::at(p))
        .collect()
}

/// Rewrites the `for` at `path`; also returns the path of the new `while`.
fn for_to_while_inner(
    tree: &SyntaxTree,
    path: &NodePath,
) -> Result<(SyntaxTree, NodePath), MutationError> {
    let s = stmt_at(tree.body(), path).ok_or_else(|| MutationError::na(path, "no statement"))?;
    let shadowed = bound_names(tree.body());
    if let Some(reason) = for_blocker(&s, &shadowed) {
        return Err(MutationError::na(path, reason));
    }
    let Stmt::For(f) = s else { unreachable!() };
    let mut taken = analyze(tree.body()).identifiers;
    let idx = readable_name(INDEX_NAMES, &taken);
    taken.insert(idx.clone());

    let mut replacement = Vec::new();
    let seq = match &*f.iter {
        Expr::Name(n) if !bound_in(&f.body).contains(n.id.as_str()) => n.id.as_str().to_string(),
        other => {
            let seq = readable_name(SEQ_NAMES, &taken);
            replacement.push(build::assign(
                build::name(&seq, ExprContext::Store),
                build::call("list", vec![other.clone()]),
            ));
            seq
        }
    };
    replacement.push(build::assign(build::name(&idx, ExprContext::Store), build::int(0)));
    let mut body = vec![build::assign(
        (*f.target).clone(),
        build::subscript(build::load(&seq), build::load(&idx)),
    )];
    body.extend(f.body.iter().cloned());
    body.push(build::increment(&idx));
    let test = build::compare(
        build::load(&idx),
        CmpOp::Lt,
        build::call("len", vec![build::load(&seq)]),
    );
    let while_index = path.last_index().unwrap_or(0) + replacement.len();
    replacement.push(build::while_loop(test, body));

    let mut new_body = tree.to_body();
    if !splice_stmt(&mut new_body, path, replacement) {
        return Err(MutationError::na(path, "cannot splice"));
    }
    Ok((SyntaxTree::from_body(&new_body)?, path.with_index(while_index)))
}

pub fn for_to_while(tree: &SyntaxTree, path: &NodePath) -> Result<SyntaxTree, MutationError> {
    for_to_while_inner(tree, path).map(|(t, _)| t)
}

fn rhs_ok(e: &Expr, shadowed: &HashSet<String>) -> bool {
    match e {
        Expr::Name(_) => true,
        Expr::Constant(c) => matches!(c.value, Constant::Int(_)),
        Expr::Call(c) => {
            matches!(&*c.func, Expr::Name(n) if n.id.as_str() == "len")
                && !shadowed.contains("len")
                && c.keywords.is_empty()
                && matches!(c.args.as_slice(), [Expr::Name(_)])
        }
        Expr::BinOp(b) => {
            matches!(
                b.op,
                Operator::Add | Operator::Sub | Operator::Mult | Operator::FloorDiv
            ) && rhs_ok(&b.left, shadowed)
                && rhs_ok(&b.right, shadowed)
        }
        Expr::UnaryOp(u) => u.op == ast::UnaryOp::USub && rhs_ok(&u.operand, shadowed),
        _ => false,
    }
}

/// Names read by the bound, and the arguments of its `len(...)` calls.
fn rhs_names(e: &Expr, names: &mut HashSet<String>, sized: &mut HashSet<String>) {
    match e {
        Expr::Name(n) => {
            names.insert(n.id.as_str().to_string());
        }
        Expr::Call(c) => {
            for a in &c.args {
                if let Expr::Name(n) = a {
                    sized.insert(n.id.as_str().to_string());
                    names.insert(n.id.as_str().to_string());
                }
            }
        }
        Expr::BinOp(b) => {
            rhs_names(&b.left, names, sized);
            rhs_names(&b.right, names, sized);
        }
        Expr::UnaryOp(u) => rhs_names(&u.operand, names, sized),
        _ => {}
    }
}

/// True if `name` appears in `body` anywhere other than `name[...]` reads
/// and `len(name)`, i.e. anywhere it could be resized.
fn escapes(body: &[Stmt], name: &str) -> bool {
    struct V<'a> {
        name: &'a str,
        allowed: HashSet<NodePath>,
        escaped: bool,
    }
    impl VisitMut for V<'_> {
        fn expr(&mut self, path: &NodePath, e: &mut Expr) -> Flow {
            match e {
                Expr::Subscript(s) if s.ctx == ExprContext::Load => {
                    if matches!(&*s.value, Expr::Name(n) if n.id.as_str() == self.name) {
                        self.allowed.insert(path.child("value", None));
                    }
                }
                Expr::Call(c) => {
                    let is_len = matches!(&*c.func, Expr::Name(n) if n.id.as_str() == "len");
                    if is_len && c.args.len() == 1 && c.keywords.is_empty() {
                        self.allowed.insert(path.child("args", Some(0)));
                    }
                }
                Expr::Name(n) if n.id.as_str() == self.name && !self.allowed.contains(path) => {
                    self.escaped = true;
                    return Flow::Stop;
                }
                _ => {}
            }
            Flow::Continue
        }
    }
    let mut v = V {
        name,
        allowed: HashSet::new(),
        escaped: false,
    };
    let mut copy = body.to_vec();
    walk_mut(&mut copy, &mut v);
    v.escaped
}

fn is_increment_of(s: &Stmt, var: &str) -> bool {
    match s {
        Stmt::AugAssign(a) => {
            a.op == Operator::Add
                && matches!(&*a.target, Expr::Name(n) if n.id.as_str() == var)
                && matches!(&*a.value, Expr::Constant(c) if c.value == Constant::Int(1.into()))
        }
        _ => false,
    }
}

fn unroll_blocker(s: &Stmt, shadowed: &HashSet<String>) -> Option<&'static str> {
    let Stmt::While(w) = s else {
        return Some("not a while loop");
    };
    if !w.orelse.is_empty() {
        return Some("while-else");
    }
    let Expr::Compare(c) = &*w.test else {
        return Some("condition is not a comparison");
    };
    let (Some(CmpOp::Lt), [rhs], Expr::Name(lhs)) = (c.ops.first(), c.comparators.as_slice(), &*c.left) else {
        return Some("condition is not `name < bound`");
    };
    if c.ops.len() != 1 || !rhs_ok(rhs, shadowed) {
        return Some("bound may have side effects");
    }
    if has_loop_jump(&w.body, true, true) {
        return Some("break or continue in body");
    }
    if has_return(&w.body) {
        return Some("return in body");
    }
    let var = lhs.id.as_str();
    let increments: Vec<usize> = w
        .body
        .iter()
        .enumerate()
        .filter(|(_, s)| is_increment_of(s, var))
        .map(|(i, _)| i)
        .collect();
    let [inc] = increments.as_slice() else {
        return Some("counter is not incremented exactly once");
    };
    let rest: Vec<Stmt> = w
        .body
        .iter()
        .enumerate()
        .filter(|(i, _)| i != inc)
        .map(|(_, s)| s.clone())
        .collect();
    let bound = bound_in(&w.body);
    if bound_in(&rest).contains(var) {
        return Some("counter is assigned elsewhere in the body");
    }
    let mut names = HashSet::new();
    let mut sized = HashSet::new();
    rhs_names(rhs, &mut names, &mut sized);
    if names.iter().any(|n| n != var && bound.contains(n)) || names.contains(var) {
        return Some("bound changes inside the loop");
    }
    if sized.iter().any(|n| escapes(&w.body, n)) {
        return Some("sized collection may be resized in the body");
    }
    None
}

/// Sites for partial unrolling. Direct `while` sites when there are any;
/// otherwise `for` loops whose `while` form can be unrolled.
pub fn find_unroll_sites(tree: &SyntaxTree) -> Vec<Site> {
    let shadowed = bound_names(tree.body());
    let all = stmt_paths(tree.body());
    let direct: Vec<Site> = all
        .iter()
        .filter(|(_, s)| unroll_blocker(s, &shadowed).is_none())
        .map(|(p, _)| Site::at(p.clone()))
        .collect();
    if !direct.is_empty() {
        return direct;
    }
    all.iter()
        .filter(|(_, s)| matches!(s, Stmt::For(_)) && for_blocker(s, &shadowed).is_none())
        .filter(|(p, _)| {
            for_to_while_inner(tree, p).is_ok_and(|(t, wp)| {
                let shadowed = bound_names(t.body());
                stmt_at(t.body(), &wp).is_some_and(|w| unroll_blocker(&w, &shadowed).is_none())
            })
        })
        .map(|(p, _)| Site::at(p.clone()))
        .collect()
}

/// Peels `k` iterations off the loop at `path`. A `for` loop is first
/// rewritten to its `while` form.
pub fn unroll(tree: &SyntaxTree, path: &NodePath, k: u32) -> Result<SyntaxTree, MutationError> {
    if k == 0 {
        return Err(MutationError::na(path, "unroll factor must be positive"));
    }
    let (tree, path) = match stmt_at(tree.body(), path) {
        Some(Stmt::For(_)) => for_to_while_inner(tree, path)?,
        Some(_) => (tree.clone(), path.clone()),
        None => return Err(MutationError::na(path, "no statement")),
    };
    let s = stmt_at(tree.body(), &path).expect("path checked above");
    let shadowed = bound_names(tree.body());
    if let Some(reason) = unroll_blocker(&s, &shadowed) {
        return Err(MutationError::na(&path, reason));
    }
    let Stmt::While(w) = s else { unreachable!() };
    let Expr::Compare(c) = *w.test else { unreachable!() };
    let lhs = *c.left;
    let rhs = c.comparators[0].clone();
    let mut replacement = vec![build::while_loop(
        build::compare(
            lhs.clone(),
            CmpOp::Lt,
            build::binop(rhs.clone(), Operator::Sub, build::int(k as i64)),
        ),
        w.body.clone(),
    )];
    for _ in 0..k {
        replacement.push(build::if_stmt(
            build::compare(rhs.clone(), CmpOp::Gt, lhs.clone()),
            w.body.clone(),
        ));
    }
    let mut body = tree.to_body();
    splice_stmt(&mut body, &path, replacement);
    Ok(SyntaxTree::from_body(&body)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::program::parse;

    const SUM_EVEN: &str = "def f(nums):\n    sum = 0\n    for n in nums:\n        if n % 2 == 0:\n            sum += n\n        else:\n            sum += 0\n    return sum\n";

    #[test]
    fn for_to_while_on_bare_name() {
        let t = parse(SUM_EVEN).unwrap();
        let sites = find_for_sites(&t);
        assert_eq!(sites.len(), 1);
        let out = for_to_while(&t, &sites[0].path).unwrap();
        assert_eq!(
            out.emit(),
            "def f(nums):\n    sum = 0\n    i = 0\n    while i < len(nums):\n        n = nums[i]\n        if n % 2 == 0:\n            sum += n\n        else:\n            sum += 0\n        i += 1\n    return sum\n"
        );
    }

    #[test]
    fn for_to_while_materializes_other_iterables() {
        let t = parse("def f(s):\n    out = []\n    for i, c in enumerate(s):\n        out.append(i)\n    return out\n").unwrap();
        let out = for_to_while(&t, &"body[0].body[1]".parse().unwrap()).unwrap();
        assert_eq!(
            out.emit(),
            "def f(s):\n    out = []\n    seq = list(enumerate(s))\n    j = 0\n    while j < len(seq):\n        i, c = seq[j]\n        out.append(i)\n        j += 1\n    return out\n"
        );
    }

    #[test]
    fn for_to_while_refuses_continue_and_else() {
        let t = parse("for x in y:\n    if x:\n        continue\n").unwrap();
        assert!(find_for_sites(&t).is_empty());
        let t = parse("for x in y:\n    for z in x:\n        continue\n").unwrap();
        let sites = find_for_sites(&t);
        assert_eq!(sites.len(), 1);
        assert_eq!(sites[0].path.to_string(), "body[0]");
        let t = parse("for x in y:\n    pass\nelse:\n    pass\n").unwrap();
        assert!(find_for_sites(&t).is_empty());
    }

    #[test]
    fn composite_unroll_of_sum_even() {
        let t = parse(SUM_EVEN).unwrap();
        let sites = find_unroll_sites(&t);
        assert_eq!(sites.len(), 1);
        let out = unroll(&t, &sites[0].path, 1).unwrap();
        assert_eq!(
            out.emit(),
            "def f(nums):\n    sum = 0\n    i = 0\n    while i < len(nums) - 1:\n        n = nums[i]\n        if n % 2 == 0:\n            sum += n\n        else:\n            sum += 0\n        i += 1\n    if len(nums) > i:\n        n = nums[i]\n        if n % 2 == 0:\n            sum += n\n        else:\n            sum += 0\n        i += 1\n    return sum\n"
        );
    }

    #[test]
    fn direct_while_unroll_by_two() {
        let t = parse("i = 0\nwhile i < n:\n    s += i\n    i += 1\n").unwrap();
        let sites = find_unroll_sites(&t);
        assert_eq!(sites.len(), 1);
        let out = unroll(&t, &sites[0].path, 2).unwrap();
        assert_eq!(
            out.emit(),
            "i = 0\nwhile i < n - 2:\n    s += i\n    i += 1\nif n > i:\n    s += i\n    i += 1\nif n > i:\n    s += i\n    i += 1\n"
        );
    }

    #[test]
    fn unroll_guards() {
        for src in [
            "while i < n:\n    i += 1\n    i += 1\n",
            "while i < n:\n    n -= 1\n    i += 1\n",
            "while i < len(a):\n    a.pop()\n    i += 1\n",
            "while i < n:\n    if i:\n        break\n    i += 1\n",
            "while i < f():\n    i += 1\n",
            "while i <= n:\n    i += 1\n",
            "while i < n:\n    if a[i]:\n        return i\n    i += 1\n",
        ] {
            let t = parse(src).unwrap();
            let shadowed = bound_names(t.body());
            assert!(unroll_blocker(&t.body()[0], &shadowed).is_some(), "{src}");
        }
        let ok = parse("while i < len(a) - 1:\n    t = a[i] + len(a)\n    i += 1\n").unwrap();
        assert!(unroll_blocker(&ok.body()[0], &HashSet::new()).is_none());
    }
}

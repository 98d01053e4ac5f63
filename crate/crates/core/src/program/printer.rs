//! Canonical source printer.
//!
//! Output uses four-space indentation, one statement per line, no blank lines
//! and no comments. Parentheses are inserted only where precedence requires
//! them, with two fixed exceptions: `not` applied to an operator expression is
//! always written `not (...)`, and assignment expressions are always
//! parenthesized.

use rustpython_literal::escape::{AsciiEscape, Quote, UnicodeEscape};
use rustpython_parser::ast::{
    self, Arguments, BoolOp, CmpOp, Comprehension, Constant, ConversionFlag, ExceptHandler, Expr,
    Operator, Pattern, Stmt, UnaryOp,
};

const TUPLE: u8 = 0;
const YIELD: u8 = 1;
const TEST: u8 = 2;
const OR: u8 = 3;
const AND: u8 = 4;
const NOT: u8 = 5;
const CMP: u8 = 6;
const BOR: u8 = 7;
const BXOR: u8 = 8;
const BAND: u8 = 9;
const SHIFT: u8 = 10;
const ARITH: u8 = 11;
const TERM: u8 = 12;
const FACTOR: u8 = 13;
const POWER: u8 = 14;
const AWAIT: u8 = 15;
const ATOM: u8 = 16;

/// Prints a statement list as module source, one trailing newline per line.
pub fn emit_suite(body: &[Stmt]) -> String {
    let mut p = Printer::default();
    for s in body {
        p.stmt(s);
    }
    p.out
}

/// Prints a single statement (and its nested block).
pub fn emit_stmt(stmt: &Stmt) -> String {
    let mut p = Printer::default();
    p.stmt(stmt);
    p.out
}

/// Prints an expression so that it can stand alone; tuples get parentheses.
pub fn emit_expr(expr: &Expr) -> String {
    let mut p = Printer::default();
    p.expr(expr, TEST);
    p.out
}

/// Prints a comma-separated argument list, as it would appear inside a call.
pub fn emit_call_args(args: &[Expr], keywords: &[ast::Keyword]) -> String {
    let mut p = Printer::default();
    p.call_args(args, keywords);
    p.out
}

/// Python `repr` of a float.
pub fn float_repr(value: f64) -> String {
    if value.is_infinite() {
        return if value > 0.0 { "1e309".into() } else { "-1e309".into() };
    }
    if value.is_nan() {
        return "float('nan')".into();
    }
    rustpython_literal::float::to_string(value)
}

fn forced_quote(value: &str, quote: Quote) -> String {
    let mut out = String::new();
    let _ = UnicodeEscape::with_forced_quote(value, quote)
        .str_repr()
        .write(&mut out);
    out
}

/// Complex parts print like floats but without a trailing `.0`.
fn complex_part(value: f64) -> String {
    let s = float_repr(value);
    match s.strip_suffix(".0") {
        Some(t) => t.to_string(),
        None => s,
    }
}

/// Python `repr` of a str.
pub fn str_repr(value: &str) -> String {
    UnicodeEscape::new_repr(value).str_repr().to_string().unwrap_or_default()
}

#[derive(Default)]
struct Printer {
    out: String,
    indent: usize,
    /// Quote characters claimed by enclosing f-strings.
    banned: Vec<char>,
    /// Inside an f-string replacement field, where backslashes are not allowed.
    no_backslash: bool,
    failed: bool,
}

impl Printer {
    fn w(&mut self, s: &str) {
        self.out.push_str(s);
    }

    fn nested(&self) -> Printer {
        Printer {
            out: String::new(),
            indent: 0,
            banned: self.banned.clone(),
            no_backslash: self.no_backslash,
            failed: false,
        }
    }

    fn begin(&mut self) {
        for _ in 0..self.indent {
            self.out.push_str("    ");
        }
    }

    fn end(&mut self) {
        self.out.push('\n');
    }

    fn block(&mut self, body: &[Stmt]) {
        self.indent += 1;
        if body.is_empty() {
            self.begin();
            self.w("pass");
            self.end();
        }
        for s in body {
            self.stmt(s);
        }
        self.indent -= 1;
    }

    fn decorators(&mut self, list: &[Expr]) {
        for d in list {
            self.begin();
            self.w("@");
            self.expr(d, TEST);
            self.end();
        }
    }

    fn type_params(&mut self, params: &[ast::TypeParam]) {
        if params.is_empty() {
            return;
        }
        self.w("[");
        for (i, tp) in params.iter().enumerate() {
            if i > 0 {
                self.w(", ");
            }
            match tp {
                ast::TypeParam::TypeVar(t) => {
                    self.w(t.name.as_str());
                    if let Some(b) = &t.bound {
                        self.w(": ");
                        self.expr(b, TEST);
                    }
                }
                ast::TypeParam::ParamSpec(t) => {
                    self.w("**");
                    self.w(t.name.as_str());
                }
                ast::TypeParam::TypeVarTuple(t) => {
                    self.w("*");
                    self.w(t.name.as_str());
                }
            }
        }
        self.w("]");
    }

    fn exprs(&mut self, list: &[Expr], level: u8) {
        for (i, e) in list.iter().enumerate() {
            if i > 0 {
                self.w(", ");
            }
            self.expr(e, level);
        }
    }

    fn stmt(&mut self, stmt: &Stmt) {
        match stmt {
            Stmt::FunctionDef(f) => {
                self.decorators(&f.decorator_list);
                self.begin();
                self.w("def ");
                self.function_head(&f.name, &f.type_params, &f.args, f.returns.as_deref());
                self.end();
                self.block(&f.body);
            }
            Stmt::AsyncFunctionDef(f) => {
                self.decorators(&f.decorator_list);
                self.begin();
                self.w("async def ");
                self.function_head(&f.name, &f.type_params, &f.args, f.returns.as_deref());
                self.end();
                self.block(&f.body);
            }
            Stmt::ClassDef(c) => {
                self.decorators(&c.decorator_list);
                self.begin();
                self.w("class ");
                self.w(c.name.as_str());
                self.type_params(&c.type_params);
                if !c.bases.is_empty() || !c.keywords.is_empty() {
                    self.w("(");
                    self.call_args(&c.bases, &c.keywords);
                    self.w(")");
                }
                self.w(":");
                self.end();
                self.block(&c.body);
            }
            Stmt::Return(r) => {
                self.begin();
                self.w("return");
                if let Some(v) = &r.value {
                    self.w(" ");
                    self.expr(v, TUPLE);
                }
                self.end();
            }
            Stmt::Delete(d) => {
                self.begin();
                self.w("del ");
                self.exprs(&d.targets, TEST);
                self.end();
            }
            Stmt::Assign(a) => {
                self.begin();
                for t in &a.targets {
                    self.expr(t, TUPLE);
                    self.w(" = ");
                }
                self.expr(&a.value, TUPLE);
                self.end();
            }
            Stmt::TypeAlias(t) => {
                self.begin();
                self.w("type ");
                self.expr(&t.name, ATOM);
                self.type_params(&t.type_params);
                self.w(" = ");
                self.expr(&t.value, TEST);
                self.end();
            }
            Stmt::AugAssign(a) => {
                self.begin();
                self.expr(&a.target, TEST);
                self.w(" ");
                self.w(operator_str(a.op));
                self.w("= ");
                self.expr(&a.value, TUPLE);
                self.end();
            }
            Stmt::AnnAssign(a) => {
                self.begin();
                match (&*a.target, a.simple) {
                    (Expr::Name(n), true) => self.w(n.id.as_str()),
                    (Expr::Name(n), false) => {
                        self.w("(");
                        self.w(n.id.as_str());
                        self.w(")");
                    }
                    (t, _) => self.expr(t, ATOM),
                }
                self.w(": ");
                self.expr(&a.annotation, TEST);
                if let Some(v) = &a.value {
                    self.w(" = ");
                    self.expr(v, TUPLE);
                }
                self.end();
            }
            Stmt::For(f) => {
                self.begin();
                self.w("for ");
                self.expr(&f.target, TUPLE);
                self.w(" in ");
                self.expr(&f.iter, TUPLE);
                self.w(":");
                self.end();
                self.block(&f.body);
                self.orelse(&f.orelse);
            }
            Stmt::AsyncFor(f) => {
                self.begin();
                self.w("async for ");
                self.expr(&f.target, TUPLE);
                self.w(" in ");
                self.expr(&f.iter, TUPLE);
                self.w(":");
                self.end();
                self.block(&f.body);
                self.orelse(&f.orelse);
            }
            Stmt::While(wh) => {
                self.begin();
                self.w("while ");
                self.expr(&wh.test, TEST);
                self.w(":");
                self.end();
                self.block(&wh.body);
                self.orelse(&wh.orelse);
            }
            Stmt::If(i) => {
                self.begin();
                self.w("if ");
                self.if_chain(i);
            }
            Stmt::With(wi) => {
                self.begin();
                self.w("with ");
                self.with_items(&wi.items);
                self.end();
                self.block(&wi.body);
            }
            Stmt::AsyncWith(wi) => {
                self.begin();
                self.w("async with ");
                self.with_items(&wi.items);
                self.end();
                self.block(&wi.body);
            }
            Stmt::Match(m) => {
                self.begin();
                self.w("match ");
                self.expr(&m.subject, TUPLE);
                self.w(":");
                self.end();
                self.indent += 1;
                for case in &m.cases {
                    self.begin();
                    self.w("case ");
                    self.pattern(&case.pattern, true);
                    if let Some(g) = &case.guard {
                        self.w(" if ");
                        self.expr(g, TEST);
                    }
                    self.w(":");
                    self.end();
                    self.block(&case.body);
                }
                self.indent -= 1;
            }
            Stmt::Raise(r) => {
                self.begin();
                self.w("raise");
                if let Some(e) = &r.exc {
                    self.w(" ");
                    self.expr(e, TEST);
                }
                if let Some(c) = &r.cause {
                    self.w(" from ");
                    self.expr(c, TEST);
                }
                self.end();
            }
            Stmt::Try(t) => self.try_stmt(&t.body, &t.handlers, &t.orelse, &t.finalbody, false),
            Stmt::TryStar(t) => self.try_stmt(&t.body, &t.handlers, &t.orelse, &t.finalbody, true),
            Stmt::Assert(a) => {
                self.begin();
                self.w("assert ");
                self.expr(&a.test, TEST);
                if let Some(m) = &a.msg {
                    self.w(", ");
                    self.expr(m, TEST);
                }
                self.end();
            }
            Stmt::Import(i) => {
                self.begin();
                self.w("import ");
                self.aliases(&i.names);
                self.end();
            }
            Stmt::ImportFrom(i) => {
                self.begin();
                self.w("from ");
                let level = i.level.map(|l| l.to_u32()).unwrap_or(0);
                for _ in 0..level {
                    self.w(".");
                }
                if let Some(m) = &i.module {
                    self.w(m.as_str());
                }
                self.w(" import ");
                self.aliases(&i.names);
                self.end();
            }
            Stmt::Global(g) => {
                self.begin();
                self.w("global ");
                self.w(&join_ids(&g.names));
                self.end();
            }
            Stmt::Nonlocal(g) => {
                self.begin();
                self.w("nonlocal ");
                self.w(&join_ids(&g.names));
                self.end();
            }
            Stmt::Expr(e) => {
                self.begin();
                self.expr(&e.value, TUPLE);
                self.end();
            }
            Stmt::Pass(_) => {
                self.begin();
                self.w("pass");
                self.end();
            }
            Stmt::Break(_) => {
                self.begin();
                self.w("break");
                self.end();
            }
            Stmt::Continue(_) => {
                self.begin();
                self.w("continue");
                self.end();
            }
        }
    }

    fn function_head(
        &mut self,
        name: &ast::Identifier,
        type_params: &[ast::TypeParam],
        args: &Arguments,
        returns: Option<&Expr>,
    ) {
        self.w(name.as_str());
        self.type_params(type_params);
        self.w("(");
        self.arguments(args, true);
        self.w(")");
        if let Some(r) = returns {
            self.w(" -> ");
            self.expr(r, TEST);
        }
        self.w(":");
    }

    fn if_chain(&mut self, i: &ast::StmtIf) {
        self.expr(&i.test, TEST);
        self.w(":");
        self.end();
        self.block(&i.body);
        match i.orelse.as_slice() {
            [] => {}
            [Stmt::If(inner)] => {
                self.begin();
                self.w("elif ");
                self.if_chain(inner);
            }
            rest => {
                self.begin();
                self.w("else:");
                self.end();
                self.block(rest);
            }
        }
    }

    fn orelse(&mut self, orelse: &[Stmt]) {
        if !orelse.is_empty() {
            self.begin();
            self.w("else:");
            self.end();
            self.block(orelse);
        }
    }

    fn with_items(&mut self, items: &[ast::WithItem]) {
        for (i, item) in items.iter().enumerate() {
            if i > 0 {
                self.w(", ");
            }
            self.expr(&item.context_expr, TEST);
            if let Some(v) = &item.optional_vars {
                self.w(" as ");
                self.expr(v, TEST);
            }
        }
        self.w(":");
    }

    fn try_stmt(
        &mut self,
        body: &[Stmt],
        handlers: &[ExceptHandler],
        orelse: &[Stmt],
        finalbody: &[Stmt],
        star: bool,
    ) {
        self.begin();
        self.w("try:");
        self.end();
        self.block(body);
        for h in handlers {
            let ExceptHandler::ExceptHandler(h) = h;
            self.begin();
            self.w(if star { "except*" } else { "except" });
            if let Some(t) = &h.type_ {
                self.w(" ");
                self.expr(t, TEST);
            }
            if let Some(n) = &h.name {
                self.w(" as ");
                self.w(n.as_str());
            }
            self.w(":");
            self.end();
            self.block(&h.body);
        }
        self.orelse(orelse);
        if !finalbody.is_empty() {
            self.begin();
            self.w("finally:");
            self.end();
            self.block(finalbody);
        }
    }

    fn aliases(&mut self, names: &[ast::Alias]) {
        for (i, a) in names.iter().enumerate() {
            if i > 0 {
                self.w(", ");
            }
            self.w(a.name.as_str());
            if let Some(asname) = &a.asname {
                self.w(" as ");
                self.w(asname.as_str());
            }
        }
    }

    fn arguments(&mut self, args: &Arguments, annotations: bool) {
        let mut first = true;
        let mut sep = |p: &mut Printer| {
            if !std::mem::take(&mut first) {
                p.w(", ");
            }
        };
        for a in &args.posonlyargs {
            sep(self);
            self.arg_with_default(a, annotations);
        }
        if !args.posonlyargs.is_empty() {
            sep(self);
            self.w("/");
        }
        for a in &args.args {
            sep(self);
            self.arg_with_default(a, annotations);
        }
        if let Some(v) = &args.vararg {
            sep(self);
            self.w("*");
            self.arg(v, annotations);
        } else if !args.kwonlyargs.is_empty() {
            sep(self);
            self.w("*");
        }
        for a in &args.kwonlyargs {
            sep(self);
            self.arg_with_default(a, annotations);
        }
        if let Some(k) = &args.kwarg {
            sep(self);
            self.w("**");
            self.arg(k, annotations);
        }
    }

    fn arg(&mut self, arg: &ast::Arg, annotations: bool) {
        self.w(arg.arg.as_str());
        if annotations {
            if let Some(a) = &arg.annotation {
                self.w(": ");
                self.expr(a, TEST);
            }
        }
    }

    fn arg_with_default(&mut self, a: &ast::ArgWithDefault, annotations: bool) {
        self.arg(&a.def, annotations);
        if let Some(d) = &a.default {
            if annotations && a.def.annotation.is_some() {
                self.w(" = ");
            } else {
                self.w("=");
            }
            self.expr(d, TEST);
        }
    }

    fn call_args(&mut self, args: &[Expr], keywords: &[ast::Keyword]) {
        let mut first = true;
        for a in args {
            if !std::mem::take(&mut first) {
                self.w(", ");
            }
            self.expr(a, TEST);
        }
        for k in keywords {
            if !std::mem::take(&mut first) {
                self.w(", ");
            }
            match &k.arg {
                Some(name) => {
                    self.w(name.as_str());
                    self.w("=");
                }
                None => self.w("**"),
            }
            self.expr(&k.value, TEST);
        }
    }

    fn open(&mut self, cond: bool) {
        if cond {
            self.w("(");
        }
    }

    fn close(&mut self, cond: bool) {
        if cond {
            self.w(")");
        }
    }

    fn expr(&mut self, expr: &Expr, level: u8) {
        match expr {
            Expr::BoolOp(b) => {
                let (op, prec) = match b.op {
                    BoolOp::And => (" and ", AND),
                    BoolOp::Or => (" or ", OR),
                };
                self.open(level > prec);
                for (i, v) in b.values.iter().enumerate() {
                    if i > 0 {
                        self.w(op);
                    }
                    self.expr(v, prec + 1);
                }
                self.close(level > prec);
            }
            Expr::NamedExpr(n) => {
                self.w("(");
                self.expr(&n.target, ATOM);
                self.w(" := ");
                self.expr(&n.value, TEST);
                self.w(")");
            }
            Expr::BinOp(b) => {
                let prec = operator_prec(b.op);
                let (lp, rp) = if b.op == Operator::Pow {
                    (prec + 1, FACTOR)
                } else {
                    (prec, prec + 1)
                };
                self.open(level > prec);
                self.expr(&b.left, lp);
                self.w(" ");
                self.w(operator_str(b.op));
                self.w(" ");
                self.expr(&b.right, rp);
                self.close(level > prec);
            }
            Expr::UnaryOp(u) => {
                if u.op == UnaryOp::Not {
                    self.open(level > NOT);
                    self.w("not ");
                    if needs_group_under_not(&u.operand) {
                        self.w("(");
                        self.expr(&u.operand, TUPLE);
                        self.w(")");
                    } else {
                        self.expr(&u.operand, NOT);
                    }
                    self.close(level > NOT);
                } else {
                    self.open(level > FACTOR);
                    self.w(match u.op {
                        UnaryOp::Invert => "~",
                        UnaryOp::UAdd => "+",
                        UnaryOp::USub => "-",
                        UnaryOp::Not => unreachable!(),
                    });
                    self.expr(&u.operand, FACTOR);
                    self.close(level > FACTOR);
                }
            }
            Expr::Lambda(l) => {
                self.open(level > TEST);
                self.w("lambda");
                let mut params = self.nested();
                params.arguments(&l.args, false);
                self.failed |= params.failed;
                if !params.out.is_empty() {
                    self.w(" ");
                    self.w(&params.out);
                }
                self.w(": ");
                self.expr(&l.body, TEST);
                self.close(level > TEST);
            }
            Expr::IfExp(i) => {
                self.open(level > TEST);
                self.expr(&i.body, TEST + 1);
                self.w(" if ");
                self.expr(&i.test, TEST + 1);
                self.w(" else ");
                self.expr(&i.orelse, TEST);
                self.close(level > TEST);
            }
            Expr::Dict(d) => {
                self.w("{");
                for (i, (k, v)) in d.keys.iter().zip(&d.values).enumerate() {
                    if i > 0 {
                        self.w(", ");
                    }
                    match k {
                        Some(k) => {
                            self.expr(k, TEST);
                            self.w(": ");
                            self.expr(v, TEST);
                        }
                        None => {
                            self.w("**");
                            self.expr(v, BOR);
                        }
                    }
                }
                self.w("}");
            }
            Expr::Set(s) => {
                if s.elts.is_empty() {
                    self.w("{*()}");
                } else {
                    self.w("{");
                    self.exprs(&s.elts, TEST);
                    self.w("}");
                }
            }
            Expr::ListComp(c) => {
                self.w("[");
                self.expr(&c.elt, TEST);
                self.generators(&c.generators);
                self.w("]");
            }
            Expr::SetComp(c) => {
                self.w("{");
                self.expr(&c.elt, TEST);
                self.generators(&c.generators);
                self.w("}");
            }
            Expr::DictComp(c) => {
                self.w("{");
                self.expr(&c.key, TEST);
                self.w(": ");
                self.expr(&c.value, TEST);
                self.generators(&c.generators);
                self.w("}");
            }
            Expr::GeneratorExp(c) => {
                self.w("(");
                self.expr(&c.elt, TEST);
                self.generators(&c.generators);
                self.w(")");
            }
            Expr::Await(a) => {
                self.open(level > AWAIT);
                self.w("await ");
                self.expr(&a.value, ATOM);
                self.close(level > AWAIT);
            }
            Expr::Yield(y) => {
                self.open(level > YIELD);
                self.w("yield");
                if let Some(v) = &y.value {
                    self.w(" ");
                    self.expr(v, TUPLE);
                }
                self.close(level > YIELD);
            }
            Expr::YieldFrom(y) => {
                self.open(level > YIELD);
                self.w("yield from ");
                self.expr(&y.value, TEST);
                self.close(level > YIELD);
            }
            Expr::Compare(c) => {
                self.open(level > CMP);
                self.expr(&c.left, CMP + 1);
                for (op, right) in c.ops.iter().zip(&c.comparators) {
                    self.w(" ");
                    self.w(cmp_str(*op));
                    self.w(" ");
                    self.expr(right, CMP + 1);
                }
                self.close(level > CMP);
            }
            Expr::Call(c) => {
                self.expr(&c.func, ATOM);
                self.w("(");
                match (c.args.as_slice(), c.keywords.is_empty()) {
                    ([Expr::GeneratorExp(g)], true) => {
                        self.expr(&g.elt, TEST);
                        self.generators(&g.generators);
                    }
                    _ => self.call_args(&c.args, &c.keywords),
                }
                self.w(")");
            }
            Expr::FormattedValue(f) => {
                // Only meaningful inside a JoinedStr; print it as one.
                self.joined_str(std::slice::from_ref(expr));
                let _ = f;
            }
            Expr::JoinedStr(j) => self.joined_str(&j.values),
            Expr::Constant(c) => self.constant(&c.value, c.kind.as_deref()),
            Expr::Attribute(a) => {
                let int_base = matches!(
                    &*a.value,
                    Expr::Constant(ast::ExprConstant {
                        value: Constant::Int(_),
                        ..
                    })
                );
                if int_base {
                    self.w("(");
                    self.expr(&a.value, TUPLE);
                    self.w(")");
                } else {
                    self.expr(&a.value, ATOM);
                }
                self.w(".");
                self.w(a.attr.as_str());
            }
            Expr::Subscript(s) => {
                self.expr(&s.value, ATOM);
                self.w("[");
                match &*s.slice {
                    Expr::Tuple(t) if !t.elts.is_empty() => {
                        self.exprs(&t.elts, TEST);
                        if t.elts.len() == 1 {
                            self.w(",");
                        }
                    }
                    other => self.expr(other, TUPLE),
                }
                self.w("]");
            }
            Expr::Starred(s) => {
                self.w("*");
                self.expr(&s.value, BOR);
            }
            Expr::Name(n) => self.w(n.id.as_str()),
            Expr::List(l) => {
                self.w("[");
                self.exprs(&l.elts, TEST);
                self.w("]");
            }
            Expr::Tuple(t) => {
                let bare = level <= TUPLE && t.elts.len() > 1;
                self.open(!bare);
                self.exprs(&t.elts, TEST);
                if t.elts.len() == 1 {
                    self.w(",");
                }
                self.close(!bare);
            }
            Expr::Slice(s) => {
                if let Some(l) = &s.lower {
                    self.expr(l, TEST);
                }
                self.w(":");
                if let Some(u) = &s.upper {
                    self.expr(u, TEST);
                }
                if let Some(st) = &s.step {
                    self.w(":");
                    self.expr(st, TEST);
                }
            }
        }
    }

    fn generators(&mut self, gens: &[Comprehension]) {
        for g in gens {
            self.w(if g.is_async { " async for " } else { " for " });
            self.expr(&g.target, TUPLE);
            self.w(" in ");
            self.expr(&g.iter, TEST + 1);
            for cond in &g.ifs {
                self.w(" if ");
                self.expr(cond, TEST + 1);
            }
        }
    }

    fn constant(&mut self, c: &Constant, kind: Option<&str>) {
        match c {
            Constant::None => self.w("None"),
            Constant::Bool(true) => self.w("True"),
            Constant::Bool(false) => self.w("False"),
            Constant::Ellipsis => self.w("..."),
            Constant::Int(i) => self.w(&i.to_string()),
            Constant::Float(f) => self.w(&float_repr(*f)),
            Constant::Complex { real, imag } => {
                if *real == 0.0 && real.is_sign_positive() {
                    self.w(&complex_part(*imag));
                    self.w("j");
                } else {
                    self.w("(");
                    self.w(&complex_part(*real));
                    self.w(if imag.is_sign_negative() { " - " } else { " + " });
                    self.w(&complex_part(imag.abs()));
                    self.w("j)");
                }
            }
            Constant::Str(s) => {
                if kind == Some("u") {
                    self.w("u");
                }
                self.string_literal(s);
            }
            Constant::Bytes(b) => {
                let text = AsciiEscape::new_repr(b)
                    .bytes_repr()
                    .to_string()
                    .unwrap_or_default();
                if self.no_backslash && text.contains('\\') {
                    self.failed = true;
                }
                self.w(&text);
            }
            Constant::Tuple(items) => {
                self.w("(");
                for (i, item) in items.iter().enumerate() {
                    if i > 0 {
                        self.w(", ");
                    }
                    self.constant(item, None);
                }
                if items.len() == 1 {
                    self.w(",");
                }
                self.w(")");
            }
        }
    }

    fn string_literal(&mut self, s: &str) {
        if self.banned.is_empty() {
            self.w(&str_repr(s));
            return;
        }
        for q in [Quote::Single, Quote::Double] {
            if self.banned.contains(&q.to_char()) {
                continue;
            }
            let text = forced_quote(s, q);
            if self.no_backslash && text.contains('\\') {
                continue;
            }
            self.w(&text);
            return;
        }
        self.failed = true;
        self.w(&str_repr(s));
    }

    fn joined_str(&mut self, values: &[Expr]) {
        for q in [Quote::Single, Quote::Double] {
            if self.banned.contains(&q.to_char()) {
                continue;
            }
            if let Some(body) = self.fstring_body(values, q) {
                self.w("f");
                self.out.push(q.to_char());
                self.w(&body);
                self.out.push(q.to_char());
                return;
            }
        }
        self.failed = true;
        self.w("f''");
    }

    fn fstring_body(&self, values: &[Expr], q: Quote) -> Option<String> {
        let mut body = String::new();
        for v in values {
            match v {
                Expr::Constant(ast::ExprConstant {
                    value: Constant::Str(s),
                    ..
                }) => {
                    let text = forced_quote(s, q);
                    let inner = &text[1..text.len() - 1];
                    if self.no_backslash && inner.contains('\\') {
                        return None;
                    }
                    body.push_str(&inner.replace('{', "{{").replace('}', "}}"));
                }
                Expr::FormattedValue(f) => {
                    let mut sub = self.nested();
                    sub.banned.push(q.to_char());
                    sub.no_backslash = true;
                    sub.expr(&f.value, TEST + 1);
                    if sub.failed || sub.out.contains('\\') {
                        return None;
                    }
                    body.push('{');
                    if sub.out.starts_with('{') {
                        body.push(' ');
                    }
                    body.push_str(&sub.out);
                    match f.conversion {
                        ConversionFlag::None => {}
                        ConversionFlag::Str => body.push_str("!s"),
                        ConversionFlag::Ascii => body.push_str("!a"),
                        ConversionFlag::Repr => body.push_str("!r"),
                    }
                    if let Some(spec) = &f.format_spec {
                        body.push(':');
                        let parts = match &**spec {
                            Expr::JoinedStr(j) => j.values.as_slice(),
                            other => std::slice::from_ref(other),
                        };
                        body.push_str(&self.fstring_body(parts, q)?);
                    }
                    body.push('}');
                }
                other => {
                    let mut sub = self.nested();
                    sub.banned.push(q.to_char());
                    sub.no_backslash = true;
                    sub.expr(other, TEST + 1);
                    if sub.failed {
                        return None;
                    }
                    body.push('{');
                    body.push_str(&sub.out);
                    body.push('}');
                }
            }
        }
        Some(body)
    }

    fn pattern(&mut self, pattern: &Pattern, top: bool) {
        match pattern {
            Pattern::MatchValue(v) => self.expr(&v.value, BOR),
            Pattern::MatchSingleton(s) => self.constant(&s.value, None),
            Pattern::MatchSequence(s) => {
                self.w("[");
                for (i, p) in s.patterns.iter().enumerate() {
                    if i > 0 {
                        self.w(", ");
                    }
                    self.pattern(p, false);
                }
                self.w("]");
            }
            Pattern::MatchMapping(m) => {
                self.w("{");
                let mut first = true;
                for (k, p) in m.keys.iter().zip(&m.patterns) {
                    if !std::mem::take(&mut first) {
                        self.w(", ");
                    }
                    self.expr(k, BOR);
                    self.w(": ");
                    self.pattern(p, false);
                }
                if let Some(rest) = &m.rest {
                    if !first {
                        self.w(", ");
                    }
                    self.w("**");
                    self.w(rest.as_str());
                }
                self.w("}");
            }
            Pattern::MatchClass(c) => {
                self.expr(&c.cls, ATOM);
                self.w("(");
                let mut first = true;
                for p in &c.patterns {
                    if !std::mem::take(&mut first) {
                        self.w(", ");
                    }
                    self.pattern(p, false);
                }
                for (name, p) in c.kwd_attrs.iter().zip(&c.kwd_patterns) {
                    if !std::mem::take(&mut first) {
                        self.w(", ");
                    }
                    self.w(name.as_str());
                    self.w("=");
                    self.pattern(p, false);
                }
                self.w(")");
            }
            Pattern::MatchStar(s) => {
                self.w("*");
                self.w(s.name.as_ref().map(|n| n.as_str()).unwrap_or("_"));
            }
            Pattern::MatchAs(a) => match (&a.pattern, &a.name) {
                (None, name) => self.w(name.as_ref().map(|n| n.as_str()).unwrap_or("_")),
                (Some(p), name) => {
                    self.open(!top);
                    self.pattern(p, false);
                    self.w(" as ");
                    self.w(name.as_ref().map(|n| n.as_str()).unwrap_or("_"));
                    self.close(!top);
                }
            },
            Pattern::MatchOr(o) => {
                self.open(!top);
                for (i, p) in o.patterns.iter().enumerate() {
                    if i > 0 {
                        self.w(" | ");
                    }
                    self.pattern(p, false);
                }
                self.close(!top);
            }
        }
    }
}

fn needs_group_under_not(e: &Expr) -> bool {
    matches!(
        e,
        Expr::BoolOp(_)
            | Expr::BinOp(_)
            | Expr::UnaryOp(_)
            | Expr::Compare(_)
            | Expr::IfExp(_)
            | Expr::Lambda(_)
            | Expr::Yield(_)
            | Expr::YieldFrom(_)
            | Expr::Await(_)
    )
}

fn join_ids(ids: &[ast::Identifier]) -> String {
    ids.iter().map(|i| i.as_str()).collect::<Vec<_>>().join(", ")
}

pub(crate) fn operator_str(op: Operator) -> &'static str {
    match op {
        Operator::Add => "+",
        Operator::Sub => "-",
        Operator::Mult => "*",
        Operator::MatMult => "@",
        Operator::Div => "/",
        Operator::Mod => "%",
        Operator::Pow => "**",
        Operator::LShift => "<<",
        Operator::RShift => ">>",
        Operator::BitOr => "|",
        Operator::BitXor => "^",
        Operator::BitAnd => "&",
        Operator::FloorDiv => "//",
    }
}

fn operator_prec(op: Operator) -> u8 {
    match op {
        Operator::Add | Operator::Sub => ARITH,
        Operator::Mult | Operator::MatMult | Operator::Div | Operator::Mod | Operator::FloorDiv => {
            TERM
        }
        Operator::Pow => POWER,
        Operator::LShift | Operator::RShift => SHIFT,
        Operator::BitOr => BOR,
        Operator::BitXor => BXOR,
        Operator::BitAnd => BAND,
    }
}

pub(crate) fn cmp_str(op: CmpOp) -> &'static str {
    match op {
        CmpOp::Eq => "==",
        CmpOp::NotEq => "!=",
        CmpOp::Lt => "<",
        CmpOp::LtE => "<=",
        CmpOp::Gt => ">",
        CmpOp::GtE => ">=",
        CmpOp::Is => "is",
        CmpOp::IsNot => "is not",
        CmpOp::In => "in",
        CmpOp::NotIn => "not in",
    }
}

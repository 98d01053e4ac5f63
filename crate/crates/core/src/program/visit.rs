//! Node paths and a mutable pre-order walker that tracks them.
//!
//! A path names a node by the chain of fields leading to it from the module
//! body, e.g. `body[0].body[1].test`. Statement lists appear as a step without
//! an index (`body[0].orelse`); their elements carry the index.

use std::fmt;
use std::str::FromStr;

use rustpython_parser::ast::{self, Arguments, Comprehension, Expr, Pattern, Stmt};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

const FIELDS: &[&str] = &[
    "annotation",
    "args",
    "bases",
    "body",
    "cases",
    "cause",
    "cls",
    "comparators",
    "context_expr",
    "decorator_list",
    "default",
    "elt",
    "elts",
    "exc",
    "finalbody",
    "format_spec",
    "func",
    "generators",
    "guard",
    "handlers",
    "ifs",
    "items",
    "iter",
    "key",
    "keys",
    "keywords",
    "kwarg",
    "kwd_patterns",
    "kwonlyargs",
    "left",
    "lower",
    "msg",
    "name",
    "names",
    "operand",
    "optional_vars",
    "orelse",
    "pattern",
    "patterns",
    "posonlyargs",
    "returns",
    "right",
    "slice",
    "step",
    "subject",
    "target",
    "targets",
    "test",
    "type_",
    "upper",
    "value",
    "values",
    "vararg",
];

/// One field access, optionally indexed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Step {
    pub field: &'static str,
    pub index: Option<usize>,
}

/// Location of a node inside a module body.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NodePath(Vec<Step>);

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid node path `{0}`")]
pub struct PathParseError(String);

impl NodePath {
    pub fn root() -> Self {
        NodePath(Vec::new())
    }

    pub fn steps(&self) -> &[Step] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn child(&self, field: &'static str, index: Option<usize>) -> NodePath {
        let mut p = self.clone();
        p.0.push(Step { field, index });
        p
    }

    /// Index of a statement within its list, if the path names a list element.
    pub fn last_index(&self) -> Option<usize> {
        self.0.last().and_then(|s| s.index)
    }

    /// Path of the list holding this element.
    pub fn container(&self) -> NodePath {
        let mut p = self.clone();
        if let Some(last) = p.0.last_mut() {
            last.index = None;
        }
        p
    }

    /// Same container, different element index.
    pub fn with_index(&self, index: usize) -> NodePath {
        let mut p = self.clone();
        if let Some(last) = p.0.last_mut() {
            last.index = Some(index);
        }
        p
    }

    pub fn starts_with(&self, prefix: &NodePath) -> bool {
        self.0.starts_with(&prefix.0)
    }

    /// Drops the last step.
    pub fn parent(&self) -> Option<NodePath> {
        if self.0.is_empty() {
            None
        } else {
            Some(NodePath(self.0[..self.0.len() - 1].to_vec()))
        }
    }
}

impl fmt::Display for NodePath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, s) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(".")?;
            }
            f.write_str(s.field)?;
            if let Some(idx) = s.index {
                write!(f, "[{idx}]")?;
            }
        }
        Ok(())
    }
}

impl FromStr for NodePath {
    type Err = PathParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s.is_empty() {
            return Ok(NodePath::root());
        }
        let bad = || PathParseError(s.to_string());
        let mut steps = Vec::new();
        for part in s.split('.') {
            let (name, index) = match part.find('[') {
                Some(open) => {
                    let idx = part[open + 1..]
                        .strip_suffix(']')
                        .and_then(|n| n.parse::<usize>().ok())
                        .ok_or_else(bad)?;
                    (&part[..open], Some(idx))
                }
                None => (part, None),
            };
            let field = FIELDS
                .iter()
                .find(|f| **f == name)
                .copied()
                .ok_or_else(bad)?;
            steps.push(Step { field, index });
        }
        Ok(NodePath(steps))
    }
}

impl Serialize for NodePath {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for NodePath {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// What the walker does after a callback.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Flow {
    Continue,
    SkipChildren,
    Stop,
}

/// Callbacks for [`walk_mut`]. Every method defaults to `Continue`.
#[allow(unused_variables)]
pub trait VisitMut {
    fn suite(&mut self, path: &NodePath, body: &mut Vec<Stmt>) -> Flow {
        Flow::Continue
    }
    fn stmt(&mut self, path: &NodePath, stmt: &mut Stmt) -> Flow {
        Flow::Continue
    }
    fn expr(&mut self, path: &NodePath, expr: &mut Expr) -> Flow {
        Flow::Continue
    }
    fn pattern(&mut self, path: &NodePath, pattern: &mut Pattern) -> Flow {
        Flow::Continue
    }
    fn arg(&mut self, path: &NodePath, arg: &mut ast::Arg) -> Flow {
        Flow::Continue
    }
    fn keyword(&mut self, path: &NodePath, keyword: &mut ast::Keyword) -> Flow {
        Flow::Continue
    }
    fn alias(&mut self, path: &NodePath, alias: &mut ast::Alias) -> Flow {
        Flow::Continue
    }
    fn handler(&mut self, path: &NodePath, handler: &mut ast::ExceptHandlerExceptHandler) -> Flow {
        Flow::Continue
    }
}

/// Pre-order walk over a module body. The module body itself has path `body`.
pub fn walk_mut<V: VisitMut + ?Sized>(body: &mut Vec<Stmt>, visitor: &mut V) {
    let mut w = Walker {
        v: visitor,
        path: NodePath::root(),
        stopped: false,
    };
    w.suite("body", body);
}

struct Walker<'v, V: ?Sized> {
    v: &'v mut V,
    path: NodePath,
    stopped: bool,
}

impl<V: VisitMut + ?Sized> Walker<'_, V> {
    fn push(&mut self, field: &'static str, index: Option<usize>) {
        self.path.0.push(Step { field, index });
    }

    fn pop(&mut self) {
        self.path.0.pop();
    }

    fn flow(&mut self, f: Flow) -> bool {
        match f {
            Flow::Continue => true,
            Flow::SkipChildren => false,
            Flow::Stop => {
                self.stopped = true;
                false
            }
        }
    }

    fn suite(&mut self, field: &'static str, body: &mut Vec<Stmt>) {
        if self.stopped {
            return;
        }
        self.push(field, None);
        let f = self.v.suite(&self.path, body);
        if self.flow(f) {
            for i in 0..body.len() {
                if let Some(last) = self.path.0.last_mut() {
                    last.index = Some(i);
                }
                self.stmt(&mut body[i]);
                if self.stopped {
                    break;
                }
            }
        }
        self.pop();
    }

    fn opt_expr(&mut self, field: &'static str, e: &mut Option<Box<Expr>>) {
        if let Some(e) = e {
            self.expr_at(field, None, e);
        }
    }

    fn expr_at(&mut self, field: &'static str, index: Option<usize>, e: &mut Expr) {
        if self.stopped {
            return;
        }
        self.push(field, index);
        self.expr(e);
        self.pop();
    }

    fn exprs(&mut self, field: &'static str, list: &mut [Expr]) {
        for (i, e) in list.iter_mut().enumerate() {
            self.expr_at(field, Some(i), e);
        }
    }

    fn stmt(&mut self, stmt: &mut Stmt) {
        let f = self.v.stmt(&self.path, stmt);
        if !self.flow(f) {
            return;
        }
        match stmt {
            Stmt::FunctionDef(s) => {
                self.exprs("decorator_list", &mut s.decorator_list);
                self.arguments(&mut s.args);
                self.opt_expr("returns", &mut s.returns);
                self.suite("body", &mut s.body);
            }
            Stmt::AsyncFunctionDef(s) => {
                self.exprs("decorator_list", &mut s.decorator_list);
                self.arguments(&mut s.args);
                self.opt_expr("returns", &mut s.returns);
                self.suite("body", &mut s.body);
            }
            Stmt::ClassDef(s) => {
                self.exprs("decorator_list", &mut s.decorator_list);
                self.exprs("bases", &mut s.bases);
                self.keywords(&mut s.keywords);
                self.suite("body", &mut s.body);
            }
            Stmt::Return(s) => self.opt_expr("value", &mut s.value),
            Stmt::Delete(s) => self.exprs("targets", &mut s.targets),
            Stmt::Assign(s) => {
                self.exprs("targets", &mut s.targets);
                self.expr_at("value", None, &mut s.value);
            }
            Stmt::TypeAlias(s) => {
                self.expr_at("name", None, &mut s.name);
                self.expr_at("value", None, &mut s.value);
            }
            Stmt::AugAssign(s) => {
                self.expr_at("target", None, &mut s.target);
                self.expr_at("value", None, &mut s.value);
            }
            Stmt::AnnAssign(s) => {
                self.expr_at("target", None, &mut s.target);
                self.expr_at("annotation", None, &mut s.annotation);
                self.opt_expr("value", &mut s.value);
            }
            Stmt::For(s) => {
                self.expr_at("target", None, &mut s.target);
                self.expr_at("iter", None, &mut s.iter);
                self.suite("body", &mut s.body);
                self.suite("orelse", &mut s.orelse);
            }
            Stmt::AsyncFor(s) => {
                self.expr_at("target", None, &mut s.target);
                self.expr_at("iter", None, &mut s.iter);
                self.suite("body", &mut s.body);
                self.suite("orelse", &mut s.orelse);
            }
            Stmt::While(s) => {
                self.expr_at("test", None, &mut s.test);
                self.suite("body", &mut s.body);
                self.suite("orelse", &mut s.orelse);
            }
            Stmt::If(s) => {
                self.expr_at("test", None, &mut s.test);
                self.suite("body", &mut s.body);
                self.suite("orelse", &mut s.orelse);
            }
            Stmt::With(s) => {
                self.with_items(&mut s.items);
                self.suite("body", &mut s.body);
            }
            Stmt::AsyncWith(s) => {
                self.with_items(&mut s.items);
                self.suite("body", &mut s.body);
            }
            Stmt::Match(s) => {
                self.expr_at("subject", None, &mut s.subject);
                for (i, case) in s.cases.iter_mut().enumerate() {
                    if self.stopped {
                        return;
                    }
                    self.push("cases", Some(i));
                    self.pattern_at("pattern", None, &mut case.pattern);
                    self.opt_expr("guard", &mut case.guard);
                    self.suite("body", &mut case.body);
                    self.pop();
                }
            }
            Stmt::Raise(s) => {
                self.opt_expr("exc", &mut s.exc);
                self.opt_expr("cause", &mut s.cause);
            }
            Stmt::Try(s) => {
                self.suite("body", &mut s.body);
                self.handlers(&mut s.handlers);
                self.suite("orelse", &mut s.orelse);
                self.suite("finalbody", &mut s.finalbody);
            }
            Stmt::TryStar(s) => {
                self.suite("body", &mut s.body);
                self.handlers(&mut s.handlers);
                self.suite("orelse", &mut s.orelse);
                self.suite("finalbody", &mut s.finalbody);
            }
            Stmt::Assert(s) => {
                self.expr_at("test", None, &mut s.test);
                self.opt_expr("msg", &mut s.msg);
            }
            Stmt::Import(s) => self.aliases(&mut s.names),
            Stmt::ImportFrom(s) => self.aliases(&mut s.names),
            Stmt::Expr(s) => self.expr_at("value", None, &mut s.value),
            Stmt::Global(_)
            | Stmt::Nonlocal(_)
            | Stmt::Pass(_)
            | Stmt::Break(_)
            | Stmt::Continue(_) => {}
        }
    }

    fn with_items(&mut self, items: &mut [ast::WithItem]) {
        for (i, item) in items.iter_mut().enumerate() {
            if self.stopped {
                return;
            }
            self.push("items", Some(i));
            self.expr_at("context_expr", None, &mut item.context_expr);
            self.opt_expr("optional_vars", &mut item.optional_vars);
            self.pop();
        }
    }

    fn handlers(&mut self, handlers: &mut [ast::ExceptHandler]) {
        for (i, h) in handlers.iter_mut().enumerate() {
            if self.stopped {
                return;
            }
            let ast::ExceptHandler::ExceptHandler(h) = h;
            self.push("handlers", Some(i));
            let f = self.v.handler(&self.path, h);
            if self.flow(f) {
                self.opt_expr("type_", &mut h.type_);
                self.suite("body", &mut h.body);
            }
            self.pop();
        }
    }

    fn aliases(&mut self, names: &mut [ast::Alias]) {
        for (i, a) in names.iter_mut().enumerate() {
            if self.stopped {
                return;
            }
            self.push("names", Some(i));
            let f = self.v.alias(&self.path, a);
            self.flow(f);
            self.pop();
        }
    }

    fn keywords(&mut self, keywords: &mut [ast::Keyword]) {
        for (i, k) in keywords.iter_mut().enumerate() {
            if self.stopped {
                return;
            }
            self.push("keywords", Some(i));
            let f = self.v.keyword(&self.path, k);
            if self.flow(f) {
                self.expr_at("value", None, &mut k.value);
            }
            self.pop();
        }
    }

    fn arguments(&mut self, args: &mut Arguments) {
        if self.stopped {
            return;
        }
        self.push("args", None);
        for (field, list) in [
            ("posonlyargs", &mut args.posonlyargs),
            ("args", &mut args.args),
            ("kwonlyargs", &mut args.kwonlyargs),
        ] {
            for (i, a) in list.iter_mut().enumerate() {
                self.push(field, Some(i));
                self.arg(&mut a.def);
                self.opt_expr("default", &mut a.default);
                self.pop();
            }
        }
        if let Some(v) = &mut args.vararg {
            self.push("vararg", None);
            self.arg(v);
            self.pop();
        }
        if let Some(k) = &mut args.kwarg {
            self.push("kwarg", None);
            self.arg(k);
            self.pop();
        }
        self.pop();
    }

    fn arg(&mut self, arg: &mut ast::Arg) {
        if self.stopped {
            return;
        }
        let f = self.v.arg(&self.path, arg);
        if self.flow(f) {
            self.opt_expr("annotation", &mut arg.annotation);
        }
    }

    fn generators(&mut self, gens: &mut [Comprehension]) {
        for (i, g) in gens.iter_mut().enumerate() {
            if self.stopped {
                return;
            }
            self.push("generators", Some(i));
            self.expr_at("target", None, &mut g.target);
            self.expr_at("iter", None, &mut g.iter);
            self.exprs("ifs", &mut g.ifs);
            self.pop();
        }
    }

    fn expr(&mut self, expr: &mut Expr) {
        let f = self.v.expr(&self.path, expr);
        if !self.flow(f) {
            return;
        }
        match expr {
            Expr::BoolOp(e) => self.exprs("values", &mut e.values),
            Expr::NamedExpr(e) => {
                self.expr_at("target", None, &mut e.target);
                self.expr_at("value", None, &mut e.value);
            }
            Expr::BinOp(e) => {
                self.expr_at("left", None, &mut e.left);
                self.expr_at("right", None, &mut e.right);
            }
            Expr::UnaryOp(e) => self.expr_at("operand", None, &mut e.operand),
            Expr::Lambda(e) => {
                self.arguments(&mut e.args);
                self.expr_at("body", None, &mut e.body);
            }
            Expr::IfExp(e) => {
                self.expr_at("test", None, &mut e.test);
                self.expr_at("body", None, &mut e.body);
                self.expr_at("orelse", None, &mut e.orelse);
            }
            Expr::Dict(e) => {
                for (i, k) in e.keys.iter_mut().enumerate() {
                    if let Some(k) = k {
                        self.expr_at("keys", Some(i), k);
                    }
                }
                self.exprs("values", &mut e.values);
            }
            Expr::Set(e) => self.exprs("elts", &mut e.elts),
            Expr::ListComp(e) => {
                self.expr_at("elt", None, &mut e.elt);
                self.generators(&mut e.generators);
            }
            Expr::SetComp(e) => {
                self.expr_at("elt", None, &mut e.elt);
                self.generators(&mut e.generators);
            }
            Expr::GeneratorExp(e) => {
                self.expr_at("elt", None, &mut e.elt);
                self.generators(&mut e.generators);
            }
            Expr::DictComp(e) => {
                self.expr_at("key", None, &mut e.key);
                self.expr_at("value", None, &mut e.value);
                self.generators(&mut e.generators);
            }
            Expr::Await(e) => self.expr_at("value", None, &mut e.value),
            Expr::Yield(e) => self.opt_expr("value", &mut e.value),
            Expr::YieldFrom(e) => self.expr_at("value", None, &mut e.value),
            Expr::Compare(e) => {
                self.expr_at("left", None, &mut e.left);
                self.exprs("comparators", &mut e.comparators);
            }
            Expr::Call(e) => {
                self.expr_at("func", None, &mut e.func);
                self.exprs("args", &mut e.args);
                self.keywords(&mut e.keywords);
            }
            Expr::FormattedValue(e) => {
                self.expr_at("value", None, &mut e.value);
                self.opt_expr("format_spec", &mut e.format_spec);
            }
            Expr::JoinedStr(e) => self.exprs("values", &mut e.values),
            Expr::Attribute(e) => self.expr_at("value", None, &mut e.value),
            Expr::Subscript(e) => {
                self.expr_at("value", None, &mut e.value);
                self.expr_at("slice", None, &mut e.slice);
            }
            Expr::Starred(e) => self.expr_at("value", None, &mut e.value),
            Expr::List(e) => self.exprs("elts", &mut e.elts),
            Expr::Tuple(e) => self.exprs("elts", &mut e.elts),
            Expr::Slice(e) => {
                self.opt_expr("lower", &mut e.lower);
                self.opt_expr("upper", &mut e.upper);
                self.opt_expr("step", &mut e.step);
            }
            Expr::Constant(_) | Expr::Name(_) => {}
        }
    }

    fn pattern_at(&mut self, field: &'static str, index: Option<usize>, p: &mut Pattern) {
        if self.stopped {
            return;
        }
        self.push(field, index);
        let f = self.v.pattern(&self.path, p);
        if self.flow(f) {
            match p {
                Pattern::MatchValue(m) => self.expr_at("value", None, &mut m.value),
                Pattern::MatchSingleton(_) | Pattern::MatchStar(_) => {}
                Pattern::MatchSequence(m) => {
                    for (i, q) in m.patterns.iter_mut().enumerate() {
                        self.pattern_at("patterns", Some(i), q);
                    }
                }
                Pattern::MatchMapping(m) => {
                    self.exprs("keys", &mut m.keys);
                    for (i, q) in m.patterns.iter_mut().enumerate() {
                        self.pattern_at("patterns", Some(i), q);
                    }
                }
                Pattern::MatchClass(m) => {
                    self.expr_at("cls", None, &mut m.cls);
                    for (i, q) in m.patterns.iter_mut().enumerate() {
                        self.pattern_at("patterns", Some(i), q);
                    }
                    for (i, q) in m.kwd_patterns.iter_mut().enumerate() {
                        self.pattern_at("kwd_patterns", Some(i), q);
                    }
                }
                Pattern::MatchAs(m) => {
                    if let Some(q) = &mut m.pattern {
                        self.pattern_at("pattern", None, q);
                    }
                }
                Pattern::MatchOr(m) => {
                    for (i, q) in m.patterns.iter_mut().enumerate() {
                        self.pattern_at("patterns", Some(i), q);
                    }
                }
            }
        }
        self.pop();
    }
}

/// Copy of the statement at `path`.
pub fn stmt_at(body: &[Stmt], path: &NodePath) -> Option<Stmt> {
    struct Find<'p> {
        target: &'p NodePath,
        found: Option<Stmt>,
    }
    impl VisitMut for Find<'_> {
        fn stmt(&mut self, path: &NodePath, stmt: &mut Stmt) -> Flow {
            if path == self.target {
                self.found = Some(stmt.clone());
                Flow::Stop
            } else if self.target.starts_with(path) {
                Flow::Continue
            } else {
                Flow::SkipChildren
            }
        }
    }
    let mut body = body.to_vec();
    let mut f = Find {
        target: path,
        found: None,
    };
    walk_mut(&mut body, &mut f);
    f.found
}

/// Copy of the expression at `path`.
pub fn expr_at(body: &[Stmt], path: &NodePath) -> Option<Expr> {
    struct Find<'p> {
        target: &'p NodePath,
        found: Option<Expr>,
    }
    impl VisitMut for Find<'_> {
        fn stmt(&mut self, path: &NodePath, _: &mut Stmt) -> Flow {
            if self.target.starts_with(path) {
                Flow::Continue
            } else {
                Flow::SkipChildren
            }
        }
        fn expr(&mut self, path: &NodePath, expr: &mut Expr) -> Flow {
            if path == self.target {
                self.found = Some(expr.clone());
                Flow::Stop
            } else if self.target.starts_with(path) {
                Flow::Continue
            } else {
                Flow::SkipChildren
            }
        }
    }
    let mut body = body.to_vec();
    let mut f = Find {
        target: path,
        found: None,
    };
    walk_mut(&mut body, &mut f);
    f.found
}

/// Replaces the statement at `path` with `replacement` (any number of
/// statements). Returns false if the path does not name a statement.
pub fn splice_stmt(body: &mut Vec<Stmt>, path: &NodePath, replacement: Vec<Stmt>) -> bool {
    struct Splice<'p> {
        container: NodePath,
        index: usize,
        target: &'p NodePath,
        replacement: Option<Vec<Stmt>>,
    }
    impl VisitMut for Splice<'_> {
        fn suite(&mut self, path: &NodePath, body: &mut Vec<Stmt>) -> Flow {
            if *path == self.container {
                if self.index < body.len() {
                    let r = self.replacement.take().unwrap_or_default();
                    body.splice(self.index..=self.index, r);
                }
                Flow::Stop
            } else {
                Flow::Continue
            }
        }
        fn stmt(&mut self, path: &NodePath, _: &mut Stmt) -> Flow {
            if self.target.starts_with(path) {
                Flow::Continue
            } else {
                Flow::SkipChildren
            }
        }
    }
    let Some(index) = path.last_index() else {
        return false;
    };
    let mut s = Splice {
        container: path.container(),
        index,
        target: path,
        replacement: Some(replacement),
    };
    walk_mut(body, &mut s);
    s.replacement.is_none()
}

/// Replaces the expression at `path`. Returns false if nothing was replaced.
pub fn replace_expr(body: &mut Vec<Stmt>, path: &NodePath, replacement: Expr) -> bool {
    struct Replace<'p> {
        target: &'p NodePath,
        replacement: Option<Expr>,
    }
    impl VisitMut for Replace<'_> {
        fn stmt(&mut self, path: &NodePath, _: &mut Stmt) -> Flow {
            if self.target.starts_with(path) {
                Flow::Continue
            } else {
                Flow::SkipChildren
            }
        }
        fn expr(&mut self, path: &NodePath, expr: &mut Expr) -> Flow {
            if path == self.target {
                if let Some(r) = self.replacement.take() {
                    *expr = r;
                }
                Flow::Stop
            } else if self.target.starts_with(path) {
                Flow::Continue
            } else {
                Flow::SkipChildren
            }
        }
    }
    let mut r = Replace {
        target: path,
        replacement: Some(replacement),
    };
    walk_mut(body, &mut r);
    r.replacement.is_none()
}

/// Collects every statement path in pre-order.
pub fn stmt_paths(body: &[Stmt]) -> Vec<(NodePath, Stmt)> {
    struct Collect(Vec<(NodePath, Stmt)>);
    impl VisitMut for Collect {
        fn stmt(&mut self, path: &NodePath, stmt: &mut Stmt) -> Flow {
            self.0.push((path.clone(), stmt.clone()));
            Flow::Continue
        }
    }
    let mut body = body.to_vec();
    let mut c = Collect(Vec::new());
    walk_mut(&mut body, &mut c);
    c.0
}

/// Collects every expression path in pre-order.
pub fn expr_paths(body: &[Stmt]) -> Vec<(NodePath, Expr)> {
    struct Collect(Vec<(NodePath, Expr)>);
    impl VisitMut for Collect {
        fn expr(&mut self, path: &NodePath, expr: &mut Expr) -> Flow {
            self.0.push((path.clone(), expr.clone()));
            Flow::Continue
        }
    }
    let mut body = body.to_vec();
    let mut c = Collect(Vec::new());
    walk_mut(&mut body, &mut c);
    c.0
}

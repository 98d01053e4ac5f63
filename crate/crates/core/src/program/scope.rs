//! Lexical scope analysis.
//!
//! Every place a name is written in the source is an *occurrence*, keyed by
//! the range of the node that carries it plus a kind (a function name is
//! carried by its `def` statement, an argument name by its `arg` node, and so
//! on). Occurrences are grouped into *symbols*: all occurrences of one name
//! that resolve to the same binding.

use std::collections::{BTreeMap, HashMap, HashSet};

use rustpython_parser::ast::{
    self, Arguments, Comprehension, ExceptHandler, Expr, ExprContext, Identifier, Pattern, Ranged,
    Stmt,
};
use rustpython_parser::text_size::TextRange;

use super::builtins::{is_builtin, DYNAMIC_BUILTINS};
use super::visit::{walk_mut, Flow, NodePath, VisitMut};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum OccurrenceKind {
    Name,
    DefName,
    Arg,
    Handler,
    Alias,
    MatchCapture,
    MatchRest,
}

/// Identity of one name occurrence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OccKey {
    pub start: u32,
    pub end: u32,
    pub kind: OccurrenceKind,
}

impl OccKey {
    fn new(range: TextRange, kind: OccurrenceKind) -> Self {
        OccKey {
            start: range.start().into(),
            end: range.end().into(),
            kind,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ScopeKind {
    Module,
    Function,
    Lambda,
    Class,
    Comprehension,
}

/// How a symbol is bound in its scope.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BindingKind {
    Local,
    Parameter,
    FunctionName,
    ClassName,
    Import,
    /// Referenced at module level but never bound in the program.
    GlobalRead,
    Builtin,
}

impl BindingKind {
    /// When a name is bound several ways in one scope, the strongest wins.
    fn strength(self) -> u8 {
        match self {
            BindingKind::Local => 0,
            BindingKind::FunctionName => 1,
            BindingKind::Parameter => 2,
            BindingKind::ClassName => 3,
            BindingKind::Import => 4,
            BindingKind::GlobalRead | BindingKind::Builtin => 5,
        }
    }
}

pub type ScopeId = usize;

#[derive(Debug, Clone)]
pub struct Scope {
    pub kind: ScopeKind,
    pub parent: Option<ScopeId>,
    /// Name of the defining function or class; empty for module and anonymous scopes.
    pub name: String,
    bound: HashMap<String, BindingKind>,
    global_decl: HashSet<String>,
    nonlocal_decl: HashSet<String>,
}

/// All occurrences of one name resolving to one binding.
#[derive(Debug, Clone)]
pub struct Symbol {
    pub name: String,
    pub scope: ScopeId,
    pub kind: BindingKind,
    /// Occurrences in source order.
    pub occurrences: Vec<OccKey>,
    /// Occurrences that bind (store) the name.
    pub binding_occurrences: Vec<OccKey>,
}

/// Result of [`analyze`].
#[derive(Debug, Clone)]
pub struct ScopeTable {
    pub scopes: Vec<Scope>,
    pub symbols: Vec<Symbol>,
    /// Reasons the program can look names up dynamically; empty if none.
    pub dynamic_features: Vec<String>,
    /// Names used as `name=` in calls or class headers.
    pub keyword_names: HashSet<String>,
    /// Whether any call passes `**mapping`.
    pub has_kwargs_expansion: bool,
    /// Every identifier spelled anywhere in the program, attributes included.
    pub identifiers: HashSet<String>,
}

impl ScopeTable {
    pub fn is_dynamic(&self) -> bool {
        !self.dynamic_features.is_empty()
    }

    pub fn symbol_of(&self, key: &OccKey) -> Option<&Symbol> {
        self.symbols.iter().find(|s| s.occurrences.contains(key))
    }

    /// Names bound (in any way) in the given scope.
    pub fn bound_names(&self, scope: ScopeId) -> impl Iterator<Item = (&str, BindingKind)> {
        self.scopes[scope].bound.iter().map(|(k, v)| (k.as_str(), *v))
    }
}

struct RawOcc {
    key: OccKey,
    name: String,
    scope: ScopeId,
    binds: bool,
}

struct Analyzer {
    scopes: Vec<Scope>,
    occs: Vec<RawOcc>,
    dynamic: Vec<String>,
    keyword_names: HashSet<String>,
    kwargs_expansion: bool,
    identifiers: HashSet<String>,
}

/// Builds the scope table for a module body.
pub fn analyze(body: &[Stmt]) -> ScopeTable {
    let mut a = Analyzer {
        scopes: Vec::new(),
        occs: Vec::new(),
        dynamic: Vec::new(),
        keyword_names: HashSet::new(),
        kwargs_expansion: false,
        identifiers: HashSet::new(),
    };
    let module = a.new_scope(ScopeKind::Module, None, "");
    a.stmts(body, module);
    a.finish()
}

impl Analyzer {
    fn new_scope(&mut self, kind: ScopeKind, parent: Option<ScopeId>, name: &str) -> ScopeId {
        self.scopes.push(Scope {
            kind,
            parent,
            name: name.to_string(),
            bound: HashMap::new(),
            global_decl: HashSet::new(),
            nonlocal_decl: HashSet::new(),
        });
        self.scopes.len() - 1
    }

    fn note(&mut self, name: &str) {
        if !self.identifiers.contains(name) {
            self.identifiers.insert(name.to_string());
        }
    }

    fn bind(&mut self, scope: ScopeId, name: &str, kind: BindingKind, key: OccKey) {
        self.note(name);
        let slot = self.scopes[scope]
            .bound
            .entry(name.to_string())
            .or_insert(kind);
        if kind.strength() > slot.strength() {
            *slot = kind;
        }
        self.occs.push(RawOcc {
            key,
            name: name.to_string(),
            scope,
            binds: true,
        });
    }

    fn reference(&mut self, scope: ScopeId, name: &str, key: OccKey) {
        self.note(name);
        if DYNAMIC_BUILTINS.contains(&name) {
            self.dynamic.push(format!("uses {name}"));
        }
        self.occs.push(RawOcc {
            key,
            name: name.to_string(),
            scope,
            binds: false,
        });
    }

    fn stmts(&mut self, body: &[Stmt], scope: ScopeId) {
        for s in body {
            self.stmt(s, scope);
        }
    }

    fn function(
        &mut self,
        stmt: &Stmt,
        name: &Identifier,
        args: &Arguments,
        body: &[Stmt],
        decorators: &[Expr],
        returns: Option<&Expr>,
        scope: ScopeId,
    ) {
        for d in decorators {
            self.expr(d, scope);
        }
        self.argument_defaults(args, scope, true);
        if let Some(r) = returns {
            self.expr(r, scope);
        }
        self.bind(
            scope,
            name.as_str(),
            BindingKind::FunctionName,
            OccKey::new(stmt.range(), OccurrenceKind::DefName),
        );
        let inner = self.new_scope(ScopeKind::Function, Some(scope), name.as_str());
        self.parameters(args, inner);
        self.stmts(body, inner);
    }

    fn argument_defaults(&mut self, args: &Arguments, scope: ScopeId, annotations: bool) {
        for a in args
            .posonlyargs
            .iter()
            .chain(&args.args)
            .chain(&args.kwonlyargs)
        {
            if let Some(d) = &a.default {
                self.expr(d, scope);
            }
            if annotations {
                if let Some(ann) = &a.def.annotation {
                    self.expr(ann, scope);
                }
            }
        }
        if annotations {
            for a in args.vararg.iter().chain(&args.kwarg) {
                if let Some(ann) = &a.annotation {
                    self.expr(ann, scope);
                }
            }
        }
    }

    fn parameters(&mut self, args: &Arguments, scope: ScopeId) {
        let all = args
            .posonlyargs
            .iter()
            .chain(&args.args)
            .chain(&args.kwonlyargs)
            .map(|a| &a.def)
            .chain(args.vararg.as_deref())
            .chain(args.kwarg.as_deref());
        for a in all {
            self.bind(
                scope,
                a.arg.as_str(),
                BindingKind::Parameter,
                OccKey::new(a.range, OccurrenceKind::Arg),
            );
        }
    }

    fn stmt(&mut self, stmt: &Stmt, scope: ScopeId) {
        match stmt {
            Stmt::FunctionDef(f) => self.function(
                stmt,
                &f.name,
                &f.args,
                &f.body,
                &f.decorator_list,
                f.returns.as_deref(),
                scope,
            ),
            Stmt::AsyncFunctionDef(f) => self.function(
                stmt,
                &f.name,
                &f.args,
                &f.body,
                &f.decorator_list,
                f.returns.as_deref(),
                scope,
            ),
            Stmt::ClassDef(c) => {
                for d in &c.decorator_list {
                    self.expr(d, scope);
                }
                for b in &c.bases {
                    self.expr(b, scope);
                }
                self.keywords(&c.keywords, scope);
                self.bind(
                    scope,
                    c.name.as_str(),
                    BindingKind::ClassName,
                    OccKey::new(stmt.range(), OccurrenceKind::DefName),
                );
                let inner = self.new_scope(ScopeKind::Class, Some(scope), c.name.as_str());
                self.stmts(&c.body, inner);
            }
            Stmt::Return(r) => {
                if let Some(v) = &r.value {
                    self.expr(v, scope);
                }
            }
            Stmt::Delete(d) => {
                for t in &d.targets {
                    self.expr(t, scope);
                }
            }
            Stmt::Assign(a) => {
                self.expr(&a.value, scope);
                for t in &a.targets {
                    self.expr(t, scope);
                }
            }
            Stmt::TypeAlias(t) => {
                self.expr(&t.value, scope);
                self.expr(&t.name, scope);
            }
            Stmt::AugAssign(a) => {
                self.expr(&a.value, scope);
                self.expr(&a.target, scope);
            }
            Stmt::AnnAssign(a) => {
                self.expr(&a.annotation, scope);
                if let Some(v) = &a.value {
                    self.expr(v, scope);
                }
                self.expr(&a.target, scope);
            }
            Stmt::For(f) => {
                self.expr(&f.iter, scope);
                self.expr(&f.target, scope);
                self.stmts(&f.body, scope);
                self.stmts(&f.orelse, scope);
            }
            Stmt::AsyncFor(f) => {
                self.expr(&f.iter, scope);
                self.expr(&f.target, scope);
                self.stmts(&f.body, scope);
                self.stmts(&f.orelse, scope);
            }
            Stmt::While(w) => {
                self.expr(&w.test, scope);
                self.stmts(&w.body, scope);
                self.stmts(&w.orelse, scope);
            }
            Stmt::If(i) => {
                self.expr(&i.test, scope);
                self.stmts(&i.body, scope);
                self.stmts(&i.orelse, scope);
            }
            Stmt::With(w) => {
                for item in &w.items {
                    self.expr(&item.context_expr, scope);
                    if let Some(v) = &item.optional_vars {
                        self.expr(v, scope);
                    }
                }
                self.stmts(&w.body, scope);
            }
            Stmt::AsyncWith(w) => {
                for item in &w.items {
                    self.expr(&item.context_expr, scope);
                    if let Some(v) = &item.optional_vars {
                        self.expr(v, scope);
                    }
                }
                self.stmts(&w.body, scope);
            }
            Stmt::Match(m) => {
                self.expr(&m.subject, scope);
                for case in &m.cases {
                    self.pattern(&case.pattern, scope);
                    if let Some(g) = &case.guard {
                        self.expr(g, scope);
                    }
                    self.stmts(&case.body, scope);
                }
            }
            Stmt::Raise(r) => {
                if let Some(e) = &r.exc {
                    self.expr(e, scope);
                }
                if let Some(c) = &r.cause {
                    self.expr(c, scope);
                }
            }
            Stmt::Try(t) => {
                self.stmts(&t.body, scope);
                self.handlers(&t.handlers, scope);
                self.stmts(&t.orelse, scope);
                self.stmts(&t.finalbody, scope);
            }
            Stmt::TryStar(t) => {
                self.stmts(&t.body, scope);
                self.handlers(&t.handlers, scope);
                self.stmts(&t.orelse, scope);
                self.stmts(&t.finalbody, scope);
            }
            Stmt::Assert(a) => {
                self.expr(&a.test, scope);
                if let Some(m) = &a.msg {
                    self.expr(m, scope);
                }
            }
            Stmt::Import(i) => {
                for alias in &i.names {
                    for part in alias.name.as_str().split('.') {
                        self.note(part);
                    }
                    let bound = match &alias.asname {
                        Some(a) => a.as_str().to_string(),
                        None => alias.name.as_str().split('.').next().unwrap_or("").to_string(),
                    };
                    self.bind(
                        scope,
                        &bound,
                        BindingKind::Import,
                        OccKey::new(alias.range, OccurrenceKind::Alias),
                    );
                }
            }
            Stmt::ImportFrom(i) => {
                if let Some(m) = &i.module {
                    for part in m.as_str().split('.') {
                        self.note(part);
                    }
                }
                for alias in &i.names {
                    if alias.name.as_str() == "*" {
                        self.dynamic.push("star import".into());
                        continue;
                    }
                    self.note(alias.name.as_str());
                    let bound = alias.asname.as_ref().unwrap_or(&alias.name);
                    self.bind(
                        scope,
                        bound.as_str(),
                        BindingKind::Import,
                        OccKey::new(alias.range, OccurrenceKind::Alias),
                    );
                }
            }
            Stmt::Global(g) => {
                self.dynamic.push("global declaration".into());
                for n in &g.names {
                    self.note(n.as_str());
                    self.scopes[scope].global_decl.insert(n.as_str().to_string());
                }
            }
            Stmt::Nonlocal(g) => {
                self.dynamic.push("nonlocal declaration".into());
                for n in &g.names {
                    self.note(n.as_str());
                    self.scopes[scope].nonlocal_decl.insert(n.as_str().to_string());
                }
            }
            Stmt::Expr(e) => self.expr(&e.value, scope),
            Stmt::Pass(_) | Stmt::Break(_) | Stmt::Continue(_) => {}
        }
    }

    fn handlers(&mut self, handlers: &[ExceptHandler], scope: ScopeId) {
        for h in handlers {
            let ExceptHandler::ExceptHandler(h) = h;
            if let Some(t) = &h.type_ {
                self.expr(t, scope);
            }
            if let Some(n) = &h.name {
                self.bind(
                    scope,
                    n.as_str(),
                    BindingKind::Local,
                    OccKey::new(h.range, OccurrenceKind::Handler),
                );
            }
            self.stmts(&h.body, scope);
        }
    }

    fn keywords(&mut self, keywords: &[ast::Keyword], scope: ScopeId) {
        for k in keywords {
            match &k.arg {
                Some(name) => {
                    self.note(name.as_str());
                    self.keyword_names.insert(name.as_str().to_string());
                }
                None => self.kwargs_expansion = true,
            }
            self.expr(&k.value, scope);
        }
    }

    fn pattern(&mut self, p: &Pattern, scope: ScopeId) {
        match p {
            Pattern::MatchValue(v) => self.expr(&v.value, scope),
            Pattern::MatchSingleton(_) => {}
            Pattern::MatchSequence(s) => {
                for q in &s.patterns {
                    self.pattern(q, scope);
                }
            }
            Pattern::MatchMapping(m) => {
                for k in &m.keys {
                    self.expr(k, scope);
                }
                for q in &m.patterns {
                    self.pattern(q, scope);
                }
                if let Some(rest) = &m.rest {
                    self.bind(
                        scope,
                        rest.as_str(),
                        BindingKind::Local,
                        OccKey::new(m.range, OccurrenceKind::MatchRest),
                    );
                }
            }
            Pattern::MatchClass(c) => {
                self.expr(&c.cls, scope);
                for q in &c.patterns {
                    self.pattern(q, scope);
                }
                for a in &c.kwd_attrs {
                    self.note(a.as_str());
                }
                for q in &c.kwd_patterns {
                    self.pattern(q, scope);
                }
            }
            Pattern::MatchStar(s) => {
                if let Some(n) = &s.name {
                    self.bind(
                        scope,
                        n.as_str(),
                        BindingKind::Local,
                        OccKey::new(s.range, OccurrenceKind::MatchCapture),
                    );
                }
            }
            Pattern::MatchAs(a) => {
                if let Some(q) = &a.pattern {
                    self.pattern(q, scope);
                }
                if let Some(n) = &a.name {
                    self.bind(
                        scope,
                        n.as_str(),
                        BindingKind::Local,
                        OccKey::new(a.range, OccurrenceKind::MatchCapture),
                    );
                }
            }
            Pattern::MatchOr(o) => {
                for q in &o.patterns {
                    self.pattern(q, scope);
                }
            }
        }
    }

    /// Nearest enclosing scope that is not a comprehension.
    fn walrus_scope(&self, mut scope: ScopeId) -> ScopeId {
        while self.scopes[scope].kind == ScopeKind::Comprehension {
            match self.scopes[scope].parent {
                Some(p) => scope = p,
                None => break,
            }
        }
        scope
    }

    fn comprehension(&mut self, gens: &[Comprehension], elts: &[&Expr], scope: ScopeId) {
        let Some(first) = gens.first() else {
            return;
        };
        self.expr(&first.iter, scope);
        let inner = self.new_scope(ScopeKind::Comprehension, Some(scope), "");
        for (i, g) in gens.iter().enumerate() {
            if i > 0 {
                self.expr(&g.iter, inner);
            }
            self.expr(&g.target, inner);
            for cond in &g.ifs {
                self.expr(cond, inner);
            }
        }
        for e in elts {
            self.expr(e, inner);
        }
    }

    fn expr(&mut self, expr: &Expr, scope: ScopeId) {
        match expr {
            Expr::Name(n) => {
                let key = OccKey::new(n.range, OccurrenceKind::Name);
                match n.ctx {
                    ExprContext::Load => self.reference(scope, n.id.as_str(), key),
                    ExprContext::Store | ExprContext::Del => {
                        self.bind(scope, n.id.as_str(), BindingKind::Local, key)
                    }
                }
            }
            Expr::NamedExpr(n) => {
                self.expr(&n.value, scope);
                let target_scope = self.walrus_scope(scope);
                if let Expr::Name(t) = &*n.target {
                    self.bind(
                        target_scope,
                        t.id.as_str(),
                        BindingKind::Local,
                        OccKey::new(t.range, OccurrenceKind::Name),
                    );
                } else {
                    self.expr(&n.target, scope);
                }
            }
            Expr::Lambda(l) => {
                self.argument_defaults(&l.args, scope, false);
                let inner = self.new_scope(ScopeKind::Lambda, Some(scope), "");
                self.parameters(&l.args, inner);
                self.expr(&l.body, inner);
            }
            Expr::ListComp(c) => self.comprehension(&c.generators, &[&c.elt], scope),
            Expr::SetComp(c) => self.comprehension(&c.generators, &[&c.elt], scope),
            Expr::GeneratorExp(c) => self.comprehension(&c.generators, &[&c.elt], scope),
            Expr::DictComp(c) => self.comprehension(&c.generators, &[&c.key, &c.value], scope),
            Expr::Call(c) => {
                self.expr(&c.func, scope);
                for a in &c.args {
                    self.expr(a, scope);
                }
                self.keywords(&c.keywords, scope);
            }
            Expr::Attribute(a) => {
                self.note(a.attr.as_str());
                self.expr(&a.value, scope);
            }
            Expr::BoolOp(b) => {
                for v in &b.values {
                    self.expr(v, scope);
                }
            }
            Expr::BinOp(b) => {
                self.expr(&b.left, scope);
                self.expr(&b.right, scope);
            }
            Expr::UnaryOp(u) => self.expr(&u.operand, scope),
            Expr::IfExp(i) => {
                self.expr(&i.test, scope);
                self.expr(&i.body, scope);
                self.expr(&i.orelse, scope);
            }
            Expr::Dict(d) => {
                for k in d.keys.iter().flatten() {
                    self.expr(k, scope);
                }
                for v in &d.values {
                    self.expr(v, scope);
                }
            }
            Expr::Set(s) => {
                for e in &s.elts {
                    self.expr(e, scope);
                }
            }
            Expr::Await(a) => self.expr(&a.value, scope),
            Expr::Yield(y) => {
                if let Some(v) = &y.value {
                    self.expr(v, scope);
                }
            }
            Expr::YieldFrom(y) => self.expr(&y.value, scope),
            Expr::Compare(c) => {
                self.expr(&c.left, scope);
                for e in &c.comparators {
                    self.expr(e, scope);
                }
            }
            Expr::FormattedValue(f) => {
                self.expr(&f.value, scope);
                if let Some(s) = &f.format_spec {
                    self.expr(s, scope);
                }
            }
            Expr::JoinedStr(j) => {
                for v in &j.values {
                    self.expr(v, scope);
                }
            }
            Expr::Constant(_) => {}
            Expr::Subscript(s) => {
                self.expr(&s.value, scope);
                self.expr(&s.slice, scope);
            }
            Expr::Starred(s) => self.expr(&s.value, scope),
            Expr::List(l) => {
                for e in &l.elts {
                    self.expr(e, scope);
                }
            }
            Expr::Tuple(t) => {
                for e in &t.elts {
                    self.expr(e, scope);
                }
            }
            Expr::Slice(s) => {
                for e in [&s.lower, &s.upper, &s.step].into_iter().flatten() {
                    self.expr(e, scope);
                }
            }
        }
    }

    fn module_lookup(&self, name: &str) -> (ScopeId, BindingKind) {
        match self.scopes[0].bound.get(name) {
            Some(k) => (0, *k),
            None if is_builtin(name) => (0, BindingKind::Builtin),
            None => (0, BindingKind::GlobalRead),
        }
    }

    fn resolve(&self, scope: ScopeId, name: &str) -> (ScopeId, BindingKind) {
        let s = &self.scopes[scope];
        if s.global_decl.contains(name) {
            return self.module_lookup(name);
        }
        if !s.nonlocal_decl.contains(name) {
            if let Some(k) = s.bound.get(name) {
                return (scope, *k);
            }
        }
        let mut cur = s.parent;
        while let Some(p) = cur {
            let ps = &self.scopes[p];
            match ps.kind {
                ScopeKind::Module => break,
                ScopeKind::Class => {}
                _ => {
                    if ps.global_decl.contains(name) {
                        return self.module_lookup(name);
                    }
                    if !ps.nonlocal_decl.contains(name) {
                        if let Some(k) = ps.bound.get(name) {
                            return (p, *k);
                        }
                    }
                }
            }
            cur = ps.parent;
        }
        self.module_lookup(name)
    }

    fn finish(self) -> ScopeTable {
        let mut index: BTreeMap<(ScopeId, String), usize> = BTreeMap::new();
        let mut symbols: Vec<Symbol> = Vec::new();
        let mut occs: Vec<&RawOcc> = self.occs.iter().collect();
        occs.sort_by_key(|o| o.key);
        for o in occs {
            let (scope, kind) = self.resolve(o.scope, &o.name);
            let slot = *index.entry((scope, o.name.clone())).or_insert_with(|| {
                symbols.push(Symbol {
                    name: o.name.clone(),
                    scope,
                    kind,
                    occurrences: Vec::new(),
                    binding_occurrences: Vec::new(),
                });
                symbols.len() - 1
            });
            symbols[slot].occurrences.push(o.key);
            if o.binds {
                symbols[slot].binding_occurrences.push(o.key);
            }
        }
        let mut dynamic = self.dynamic;
        dynamic.sort();
        dynamic.dedup();
        ScopeTable {
            scopes: self.scopes,
            symbols,
            dynamic_features: dynamic,
            keyword_names: self.keyword_names,
            has_kwargs_expansion: self.kwargs_expansion,
            identifiers: self.identifiers,
        }
    }
}

/// Calls `f` for every identifier that can be an occurrence, with its key and
/// path. Import aliases without `as` are skipped since their bound name is
/// only part of the identifier.
pub fn for_each_occurrence_mut<F>(body: &mut Vec<Stmt>, f: F)
where
    F: FnMut(&NodePath, OccKey, &mut Identifier),
{
    struct V<F>(F);
    impl<F: FnMut(&NodePath, OccKey, &mut Identifier)> VisitMut for V<F> {
        fn stmt(&mut self, path: &NodePath, stmt: &mut Stmt) -> Flow {
            let range = stmt.range();
            match stmt {
                Stmt::FunctionDef(s) => {
                    (self.0)(path, OccKey::new(range, OccurrenceKind::DefName), &mut s.name)
                }
                Stmt::AsyncFunctionDef(s) => {
                    (self.0)(path, OccKey::new(range, OccurrenceKind::DefName), &mut s.name)
                }
                Stmt::ClassDef(s) => {
                    (self.0)(path, OccKey::new(range, OccurrenceKind::DefName), &mut s.name)
                }
                _ => {}
            }
            Flow::Continue
        }
        fn expr(&mut self, path: &NodePath, expr: &mut Expr) -> Flow {
            if let Expr::Name(n) = expr {
                (self.0)(path, OccKey::new(n.range, OccurrenceKind::Name), &mut n.id);
            }
            Flow::Continue
        }
        fn arg(&mut self, path: &NodePath, arg: &mut ast::Arg) -> Flow {
            (self.0)(path, OccKey::new(arg.range, OccurrenceKind::Arg), &mut arg.arg);
            Flow::Continue
        }
        fn handler(&mut self, path: &NodePath, h: &mut ast::ExceptHandlerExceptHandler) -> Flow {
            let key = OccKey::new(h.range, OccurrenceKind::Handler);
            if let Some(n) = &mut h.name {
                (self.0)(path, key, n);
            }
            Flow::Continue
        }
        fn alias(&mut self, path: &NodePath, a: &mut ast::Alias) -> Flow {
            let key = OccKey::new(a.range, OccurrenceKind::Alias);
            match &mut a.asname {
                Some(n) => (self.0)(path, key, n),
                None if !a.name.as_str().contains('.') => (self.0)(path, key, &mut a.name),
                None => {}
            }
            Flow::Continue
        }
        fn pattern(&mut self, path: &NodePath, p: &mut Pattern) -> Flow {
            match p {
                Pattern::MatchAs(m) => {
                    let key = OccKey::new(m.range, OccurrenceKind::MatchCapture);
                    if let Some(n) = &mut m.name {
                        (self.0)(path, key, n);
                    }
                }
                Pattern::MatchStar(m) => {
                    let key = OccKey::new(m.range, OccurrenceKind::MatchCapture);
                    if let Some(n) = &mut m.name {
                        (self.0)(path, key, n);
                    }
                }
                Pattern::MatchMapping(m) => {
                    let key = OccKey::new(m.range, OccurrenceKind::MatchRest);
                    if let Some(n) = &mut m.rest {
                        (self.0)(path, key, n);
                    }
                }
                _ => {}
            }
            Flow::Continue
        }
    }
    walk_mut(body, &mut V(f));
}

/// Path of every occurrence.
pub fn occurrence_paths(body: &[Stmt]) -> HashMap<OccKey, NodePath> {
    let mut out = HashMap::new();
    let mut copy = body.to_vec();
    for_each_occurrence_mut(&mut copy, |path, key, _| {
        out.insert(key, path.clone());
    });
    out
}

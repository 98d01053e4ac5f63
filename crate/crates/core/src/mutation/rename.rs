//! Consistently rename one variable, parameter or function.

use std::collections::HashSet;

use super::{MutationContext, MutationError, Site};
use crate::program::builtins::{is_builtin, is_keyword};
use crate::program::scope::{
    analyze, for_each_occurrence_mut, occurrence_paths, BindingKind, OccurrenceKind, ScopeKind,
    ScopeTable, Symbol,
};
use crate::program::{NodePath, SyntaxTree};

fn is_dunder(name: &str) -> bool {
    name.len() > 4 && name.starts_with("__") && name.ends_with("__")
}

/// Why `sym` must keep its name, or `None` if it may be renamed.
fn blocker(sym: &Symbol, table: &ScopeTable, ctx: &MutationContext) -> Option<&'static str> {
    if table.is_dynamic() {
        return Some("program looks names up dynamically");
    }
    match sym.kind {
        BindingKind::Local | BindingKind::Parameter | BindingKind::FunctionName => {}
        _ => return Some("binding kind is not renameable"),
    }
    if table.scopes[sym.scope].kind == ScopeKind::Class {
        return Some("class attribute");
    }
    if sym.scope == 0 && sym.name == ctx.entry_point {
        return Some("entry point");
    }
    if is_dunder(&sym.name) {
        return Some("dunder name");
    }
    if sym.occurrences.iter().any(|o| o.kind == OccurrenceKind::Alias) {
        return Some("import alias");
    }
    if sym.kind == BindingKind::Parameter {
        if table.has_kwargs_expansion {
            return Some("program passes **kwargs");
        }
        if table.keyword_names.contains(&sym.name) || ctx.test_keywords.contains(&sym.name) {
            return Some("parameter is passed by keyword");
        }
    }
    None
}

/// Occurrence whose path identifies the symbol: the first binding, else the first use.
fn anchor(sym: &Symbol) -> crate::program::scope::OccKey {
    sym.binding_occurrences
        .first()
        .copied()
        .unwrap_or(sym.occurrences[0])
}

pub fn find_sites(tree: &SyntaxTree, ctx: &MutationContext) -> Vec<Site> {
    let table = analyze(tree.body());
    let paths = occurrence_paths(tree.body());
    let mut sites: Vec<(u32, Site)> = table
        .symbols
        .iter()
        .filter(|s| blocker(s, &table, ctx).is_none())
        .filter_map(|s| {
            let a = anchor(s);
            let path = paths.get(&a)?.clone();
            Some((
                a.start,
                Site {
                    path,
                    rename: Some((s.name.clone(), String::new())),
                },
            ))
        })
        .collect();
    sites.sort_by_key(|(start, _)| *start);
    sites.into_iter().map(|(_, s)| s).collect()
}

/// Names a fresh identifier must avoid.
pub fn taken_names(tree: &SyntaxTree) -> HashSet<String> {
    analyze(tree.body()).identifiers
}

pub fn apply(
    tree: &SyntaxTree,
    path: &NodePath,
    old: &str,
    new: &str,
    ctx: &MutationContext,
) -> Result<SyntaxTree, MutationError> {
    let table = analyze(tree.body());
    if new.is_empty()
        || !new.chars().next().is_some_and(|c| c.is_alphabetic() || c == '_')
        || !new.chars().all(|c| c.is_alphanumeric() || c == '_')
        || is_keyword(new)
        || is_builtin(new)
        || table.identifiers.contains(new)
    {
        return Err(MutationError::na(path, format!("`{new}` is not a fresh name")));
    }
    let paths = occurrence_paths(tree.body());
    let sym = table
        .symbols
        .iter()
        .find(|s| {
            s.name == old
                && s.occurrences
                    .iter()
                    .any(|o| paths.get(o).is_some_and(|p| p == path))
        })
        .ok_or_else(|| MutationError::na(path, format!("no symbol `{old}` here")))?;
    if let Some(reason) = blocker(sym, &table, ctx) {
        return Err(MutationError::na(path, reason));
    }
    let keys: HashSet<_> = sym.occurrences.iter().copied().collect();
    let mut body = tree.to_body();
    for_each_occurrence_mut(&mut body, |_, key, ident| {
        if keys.contains(&key) {
            *ident = rustpython_parser::ast::Identifier::new(new);
        }
    });
    Ok(SyntaxTree::from_body(&body)?)
}

//! Checks that a variant differs from its parent only at the mutation site.

use rustpython_parser::ast::Identifier;

use super::{Mutation, MutationClass};
use crate::program::scope::{analyze, for_each_occurrence_mut, ScopeTable};
use crate::program::visit::{expr_at, replace_expr, splice_stmt, stmt_at};
use crate::program::{NodePath, SyntaxTree};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ConfineError {
    #[error("site {0} not found")]
    MissingSite(String),
    #[error("rewritten region has {found} statements, expected {expected}")]
    RegionSize { found: usize, expected: String },
    #[error("variant differs from parent outside the mutation site")]
    Outside,
    #[error("variant differs from parent beyond one consistent rename")]
    Rename,
}

fn suite_len(body: &[rustpython_parser::ast::Stmt], path: &NodePath) -> usize {
    let container = path.container();
    (0..)
        .take_while(|&i| stmt_at(body, &container.with_index(i)).is_some())
        .count()
}

fn check_rename(
    parent: &SyntaxTree,
    variant: &SyntaxTree,
    old: &str,
    new: &str,
) -> Result<(), ConfineError> {
    if analyze(parent.body()).identifiers.contains(new) {
        return Err(ConfineError::Rename);
    }
    let mut restored = variant.to_body();
    for_each_occurrence_mut(&mut restored, |_, _, ident| {
        if ident.as_str() == new {
            *ident = Identifier::new(old);
        }
    });
    let restored = SyntaxTree::from_body(&restored).map_err(|_| ConfineError::Rename)?;
    if !restored.structurally_eq(parent) {
        return Err(ConfineError::Rename);
    }
    // Every occurrence of exactly one symbol must have moved to the new name.
    let (pa, va) = (analyze(parent.body()), analyze(variant.body()));
    let sizes = |t: &ScopeTable, n: &str| -> Vec<usize> {
        t.symbols
            .iter()
            .filter(|s| s.name == n)
            .map(|s| s.occurrences.len())
            .collect()
    };
    let (old_before, old_after, new_after) = (sizes(&pa, old), sizes(&va, old), sizes(&va, new));
    match new_after.as_slice() {
        [n] if old_before.len() == old_after.len() + 1 && old_before.contains(n) => Ok(()),
        _ => Err(ConfineError::Rename),
    }
}

/// Verifies that `variant` equals `parent` with only the region at the
/// mutation site replaced, and that the region has the size the class
/// implies.
pub fn check(parent: &SyntaxTree, variant: &SyntaxTree, m: &Mutation) -> Result<(), ConfineError> {
    let path = &m.site.path;
    let missing = || ConfineError::MissingSite(path.to_string());
    if m.class == MutationClass::RenameVariable {
        let (old, new) = m.site.rename.as_ref().ok_or_else(missing)?;
        return check_rename(parent, variant, old, new);
    }
    let mut spliced = parent.to_body();
    if m.class == MutationClass::MirrorComparison {
        let e = expr_at(variant.body(), path).ok_or_else(missing)?;
        if !replace_expr(&mut spliced, path, e) {
            return Err(missing());
        }
    } else {
        let original = stmt_at(parent.body(), path).ok_or_else(missing)?;
        let region = suite_len(variant.body(), path) + 1 - suite_len(parent.body(), path);
        let k = m.k.unwrap_or(1) as usize;
        let composite = matches!(original, rustpython_parser::ast::Stmt::For(_));
        let allowed: Vec<usize> = match m.class {
            MutationClass::SwapIfElse => vec![1],
            MutationClass::ForToWhile => vec![2, 3],
            MutationClass::UnrollLoop if composite => vec![k + 2, k + 3],
            MutationClass::UnrollLoop => vec![k + 1],
            _ => unreachable!(),
        };
        if !allowed.contains(&region) {
            return Err(ConfineError::RegionSize {
                found: region,
                expected: format!("{allowed:?}"),
            });
        }
        let start = path.last_index().ok_or_else(missing)?;
        let container = path.container();
        let replacement = (start..start + region)
            .map(|i| stmt_at(variant.body(), &container.with_index(i)).ok_or_else(missing))
            .collect::<Result<Vec<_>, _>>()?;
        if !splice_stmt(&mut spliced, path, replacement) {
            return Err(missing());
        }
    }
    let spliced = SyntaxTree::from_body(&spliced).map_err(|_| ConfineError::Outside)?;
    if spliced.structurally_eq(variant) {
        Ok(())
    } else {
        Err(ConfineError::Outside)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mutation::{apply, find_sites, MutationContext, Site};
    use crate::program::parse;

    const SRC: &str = "def f(nums):\n    sum = 0\n    for n in nums:\n        if n % 2 == 0:\n            sum += n\n        else:\n            sum += 0\n    return sum\n";

    #[test]
    fn every_generated_site_is_confined() {
        let t = parse(SRC).unwrap();
        let ctx = MutationContext {
            entry_point: "f".into(),
            ..Default::default()
        };
        for class in MutationClass::ALL {
            for mut site in find_sites(&t, class, &ctx) {
                if let Some((_, new)) = &mut site.rename {
                    *new = "zQx81Lmn".into();
                }
                for k in [Some(1), Some(2)] {
                    let m = Mutation { class, site: site.clone(), k };
                    let v = apply(&t, &m, &ctx).unwrap();
                    check(&t, &v, &m).unwrap_or_else(|e| panic!("{class} {site}: {e}"));
                }
            }
        }
    }

    #[test]
    fn detects_edits_elsewhere() {
        let t = parse(SRC).unwrap();
        let m = Mutation {
            class: MutationClass::SwapIfElse,
            site: Site::at("body[0].body[1].body[0]".parse().unwrap()),
            k: None,
        };
        let good = apply(&t, &m, &MutationContext::default()).unwrap();
        let bad = parse(&good.emit().replace("sum = 0", "sum = 1")).unwrap();
        assert_eq!(check(&t, &bad, &m), Err(ConfineError::Outside));
        let rename = Mutation {
            class: MutationClass::RenameVariable,
            site: Site {
                path: "body[0].body[0].targets[0]".parse().unwrap(),
                rename: Some(("sum".into(), "total".into())),
            },
            k: None,
        };
        let half = parse(&SRC.replacen("sum", "total", 2)).unwrap();
        assert_eq!(check(&t, &half, &rename), Err(ConfineError::Rename));
    }
}

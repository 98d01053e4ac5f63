//! Semantics-preserving program mutations.
//!
//! Five classes are supported. Each has a site finder that lists every place
//! the mutation applies and an `apply` step that rewrites one site. Sites are
//! found on a parsed tree and must be applied to that same tree.

mod build;
pub mod confine;
pub mod fresh;
pub mod generate;
pub mod loops;
pub mod mirror;
pub mod purity;
pub mod rename;
pub mod swap;

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::program::ingest::test_keyword_names;
use crate::program::{NodePath, Program, SyntaxError, SyntaxTree};

pub use generate::{generate_variants, Variant, Verification};

/// The mutation classes, in report column order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MutationClass {
    ForToWhile,
    MirrorComparison,
    RenameVariable,
    SwapIfElse,
    UnrollLoop,
}

impl MutationClass {
    pub const ALL: [MutationClass; 5] = [
        MutationClass::ForToWhile,
        MutationClass::MirrorComparison,
        MutationClass::RenameVariable,
        MutationClass::SwapIfElse,
        MutationClass::UnrollLoop,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            MutationClass::ForToWhile => "for_to_while",
            MutationClass::MirrorComparison => "mirror_comparison",
            MutationClass::RenameVariable => "rename_variable",
            MutationClass::SwapIfElse => "swap_if_else",
            MutationClass::UnrollLoop => "unroll_loop",
        }
    }

    /// Short column heading.
    pub fn label(self) -> &'static str {
        match self {
            MutationClass::ForToWhile => "For2While",
            MutationClass::MirrorComparison => "Mirror",
            MutationClass::RenameVariable => "Rename",
            MutationClass::SwapIfElse => "Swap",
            MutationClass::UnrollLoop => "Unroll",
        }
    }
}

impl fmt::Display for MutationClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for MutationClass {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        MutationClass::ALL
            .into_iter()
            .find(|c| c.as_str() == s)
            .ok_or_else(|| format!("unknown mutation class `{s}`"))
    }
}

/// Where a mutation applies. For renames, also the old and new names
/// (the new name is empty until the site is instantiated).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Site {
    pub path: NodePath,
    pub rename: Option<(String, String)>,
}

impl Site {
    pub fn at(path: NodePath) -> Self {
        Site { path, rename: None }
    }
}

impl fmt::Display for Site {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.path)?;
        if let Some((old, new)) = &self.rename {
            write!(f, "#{old}->{new}")?;
        }
        Ok(())
    }
}

impl FromStr for Site {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (path, rename) = match s.split_once('#') {
            Some((p, r)) => {
                let (old, new) = r
                    .split_once("->")
                    .ok_or_else(|| format!("bad rename in site `{s}`"))?;
                (p, Some((old.to_string(), new.to_string())))
            }
            None => (s, None),
        };
        let path = path.parse().map_err(|e| format!("{e}"))?;
        Ok(Site { path, rename })
    }
}

impl Serialize for Site {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Site {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        String::deserialize(d)?
            .parse()
            .map_err(serde::de::Error::custom)
    }
}

/// A fully specified mutation: class, site, and unroll factor where relevant.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Mutation {
    pub class: MutationClass,
    pub site: Site,
    pub k: Option<u32>,
}

/// Program facts the site finders need beyond the tree.
#[derive(Debug, Clone, Default)]
pub struct MutationContext {
    pub entry_point: String,
    /// Keyword names used by test inputs; parameters with these names keep them.
    pub test_keywords: HashSet<String>,
}

impl MutationContext {
    pub fn for_program(p: &Program) -> Self {
        MutationContext {
            entry_point: p.entry_point.clone(),
            test_keywords: test_keyword_names(p),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MutationError {
    #[error("mutation does not apply at {site}: {reason}")]
    NotApplicable { site: String, reason: String },
    #[error("rewritten program does not parse: {0}")]
    Syntax(#[from] SyntaxError),
}

impl MutationError {
    pub(crate) fn na(site: &NodePath, reason: impl Into<String>) -> Self {
        MutationError::NotApplicable {
            site: site.to_string(),
            reason: reason.into(),
        }
    }
}

/// Every site where `class` applies, in source order.
pub fn find_sites(tree: &SyntaxTree, class: MutationClass, ctx: &MutationContext) -> Vec<Site> {
    match class {
        MutationClass::RenameVariable => rename::find_sites(tree, ctx),
        MutationClass::MirrorComparison => mirror::find_sites(tree),
        MutationClass::SwapIfElse => swap::find_sites(tree),
        MutationClass::ForToWhile => loops::find_for_sites(tree),
        MutationClass::UnrollLoop => loops::find_unroll_sites(tree),
    }
}

/// Applies one mutation, returning the rewritten tree.
pub fn apply(
    tree: &SyntaxTree,
    mutation: &Mutation,
    ctx: &MutationContext,
) -> Result<SyntaxTree, MutationError> {
    let site = &mutation.site;
    match mutation.class {
        MutationClass::RenameVariable => {
            let (old, new) = site
                .rename
                .as_ref()
                .ok_or_else(|| MutationError::na(&site.path, "rename site without names"))?;
            rename::apply(tree, &site.path, old, new, ctx)
        }
        MutationClass::MirrorComparison => mirror::apply(tree, &site.path),
        MutationClass::SwapIfElse => swap::apply(tree, &site.path),
        MutationClass::ForToWhile => loops::for_to_while(tree, &site.path),
        MutationClass::UnrollLoop => {
            let k = mutation.k.unwrap_or(1);
            loops::unroll(tree, &site.path, k)
        }
    }
}

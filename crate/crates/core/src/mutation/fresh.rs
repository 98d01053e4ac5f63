//! Fresh identifiers.

use std::collections::HashSet;

use rand::Rng;

use crate::program::builtins::{is_builtin, is_keyword};

const LETTERS: &[u8] = b"abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ";
const ALNUM: &[u8] = b"abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789";

/// Length of generated rename targets.
pub const FRESH_LEN: usize = 8;

fn usable(name: &str, taken: &HashSet<String>) -> bool {
    !taken.contains(name) && !is_builtin(name) && !is_keyword(name)
}

/// A random mixed-case alphanumeric name that starts with a letter and
/// collides with nothing in `taken`.
pub fn random_name<R: Rng + ?Sized>(rng: &mut R, taken: &HashSet<String>) -> String {
    loop {
        let mut s = String::with_capacity(FRESH_LEN);
        s.push(LETTERS[rng.gen_range(0..LETTERS.len())] as char);
        for _ in 1..FRESH_LEN {
            s.push(ALNUM[rng.gen_range(0..ALNUM.len())] as char);
        }
        if usable(&s, taken) {
            return s;
        }
    }
}

/// A readable name from `preferred`, falling back to numbered variants of the first.
pub fn readable_name(preferred: &[&str], taken: &HashSet<String>) -> String {
    if let Some(n) = preferred.iter().find(|n| usable(n, taken)) {
        return n.to_string();
    }
    let base = preferred.first().copied().unwrap_or("v");
    (1..)
        .map(|i| format!("{base}{i}"))
        .find(|n| usable(n, taken))
        .expect("unbounded search")
}

pub const INDEX_NAMES: &[&str] = &["i", "j", "k", "idx", "ii", "jj", "kk", "pos"];
pub const SEQ_NAMES: &[&str] = &["seq", "items", "elems", "values_list"];

//! Pulls the predicted value out of a model response.

const OPEN: &str = "[ANSWER]";
const CLOSE: &str = "[/ANSWER]";

#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
pub enum Malformed {
    #[error("no [ANSWER]...[/ANSWER] block")]
    NoTags,
    #[error("answer block has no assertion")]
    NoAssertion,
    #[error("assertion has no top-level `==`")]
    NoEquality,
}

/// Byte offset of the first `==` outside brackets and string literals, and
/// the offset where the expression after it ends (a newline at depth zero).
fn split_equality(s: &str) -> Option<(usize, usize)> {
    let b = s.as_bytes();
    let mut depth = 0i32;
    let mut i = 0;
    let mut eq = None;
    while i < b.len() {
        match b[i] {
            q @ (b'\'' | b'"') => {
                let triple = b[i..].starts_with(&[q, q, q]);
                let width = if triple { 3 } else { 1 };
                i += width;
                while i < b.len() {
                    if b[i] == b'\\' {
                        i += 2;
                        continue;
                    }
                    if triple && b[i..].starts_with(&[q, q, q]) {
                        i += 3;
                        break;
                    }
                    if !triple && (b[i] == q || b[i] == b'\n') {
                        i += 1;
                        break;
                    }
                    i += 1;
                }
                continue;
            }
            b'(' | b'[' | b'{' => depth += 1,
            b')' | b']' | b'}' => depth -= 1,
            b'\n' if depth <= 0 && eq.is_some() => return eq.map(|e| (e, i)),
            b'=' if depth == 0 && eq.is_none() && b.get(i + 1) == Some(&b'=') => {
                let prev = if i > 0 { b[i - 1] } else { b' ' };
                if !matches!(prev, b'!' | b'<' | b'>' | b'=') && b.get(i + 2) != Some(&b'=') {
                    eq = Some(i);
                    i += 2;
                    continue;
                }
            }
            _ => {}
        }
        i += 1;
    }
    eq.map(|e| (e, b.len()))
}

/// The right-hand side of the assertion in the last `[ANSWER]` block.
pub fn extract_answer(response: &str) -> Result<String, Malformed> {
    let close = response.rfind(CLOSE).ok_or(Malformed::NoTags)?;
    let open = response[..close].rfind(OPEN).ok_or(Malformed::NoTags)?;
    let block = &response[open + OPEN.len()..close];
    // The block may repeat the whole program; the assertion is the last one.
    let start = block
        .match_indices("assert")
        .map(|(i, _)| i)
        .filter(|&i| {
            let line_start = block[..i].rfind('\n').map_or(0, |n| n + 1);
            let before = block[line_start..i].trim();
            (before.is_empty() || before.chars().all(|c| c == '`'))
                && !block[i + 6..].starts_with(|c: char| c.is_alphanumeric() || c == '_')
        })
        .last()
        .ok_or(Malformed::NoAssertion)?;
    let stmt: String = block[start + 6..]
        .lines()
        .filter(|l| !l.trim_start().starts_with("```"))
        .collect::<Vec<_>>()
        .join("\n");
    let (eq, end) = split_equality(&stmt).ok_or(Malformed::NoEquality)?;
    let rhs = stmt[eq + 2..end].trim().trim_end_matches(';').trim_end_matches('`').trim();
    if rhs.is_empty() {
        return Err(Malformed::NoEquality);
    }
    Ok(rhs.to_string())
}

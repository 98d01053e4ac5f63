//! Shape-preserving random inputs and differential execution.
//!
//! New inputs are drawn by perturbing the literals of a program's own test
//! inputs: integers stay integers, strings reuse their alphabet, lists keep
//! their element shapes, tuples keep their arity.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rustpython_parser::ast::{self, bigint::BigInt, Constant, Expr, UnaryOp};
use rustpython_parser::text_size::TextRange;
use serde::{Deserialize, Serialize};

use super::{CallOutcome, Sandbox, VerifierError};
use crate::program::ingest::parse_call;
use crate::program::printer::emit_call_args;
use crate::program::Program;

/// Inputs per differential check.
pub const DIFFERENTIAL_INPUTS: usize = 50;

const MAX_INT: i64 = 1000;
const MAX_LEN: usize = 12;

fn constant(value: Constant) -> Expr {
    Expr::Constant(ast::ExprConstant {
        range: TextRange::default(),
        value,
        kind: None,
    })
}

fn int_expr(v: i64) -> Expr {
    let magnitude = constant(Constant::Int(BigInt::from(v.unsigned_abs())));
    if v < 0 {
        Expr::UnaryOp(ast::ExprUnaryOp {
            range: TextRange::default(),
            op: UnaryOp::USub,
            operand: Box::new(magnitude),
        })
    } else {
        magnitude
    }
}

/// Integer value of a literal like `5` or `-5`.
fn int_value(e: &Expr) -> Option<i64> {
    match e {
        Expr::Constant(c) => match &c.value {
            Constant::Int(i) => i64::try_from(i).ok().or(Some(MAX_INT)),
            _ => None,
        },
        Expr::UnaryOp(u) if u.op == UnaryOp::USub => int_value(&u.operand).map(|v| -v),
        _ => None,
    }
}

fn fuzz_int<R: Rng>(v: i64, rng: &mut R) -> i64 {
    let bound = v.unsigned_abs().clamp(10, MAX_INT as u64) as i64;
    if v < 0 {
        rng.gen_range(-bound..=0)
    } else {
        rng.gen_range(0..=bound)
    }
}

fn fuzz_len<R: Rng>(len: usize, rng: &mut R) -> usize {
    rng.gen_range(0..=(len + 2).min(MAX_LEN).max(len.min(MAX_LEN)))
}

fn fuzz_str<R: Rng>(s: &str, rng: &mut R) -> String {
    let mut alphabet: Vec<char> = s.chars().collect();
    alphabet.sort_unstable();
    alphabet.dedup();
    if alphabet.is_empty() {
        alphabet = ('a'..='e').collect();
    }
    let len = rng.gen_range(s.chars().count().saturating_sub(2)..=s.chars().count() + 2);
    (0..len.min(4 * MAX_LEN))
        .map(|_| *alphabet.choose(rng).expect("non-empty alphabet"))
        .collect()
}

fn fuzz_elements<R: Rng>(templates: &[Expr], len: usize, rng: &mut R) -> Vec<Expr> {
    // Rows of a rectangular grid share one fresh width.
    let widths: Vec<usize> = templates
        .iter()
        .filter_map(|e| match e {
            Expr::List(l) => Some(l.elts.len()),
            _ => None,
        })
        .collect();
    let rectangular = widths.len() == templates.len() && widths.windows(2).all(|w| w[0] == w[1]);
    let width = rectangular.then(|| fuzz_len(widths[0], rng));
    (0..len)
        .map(|_| {
            let t = templates.choose(rng).expect("non-empty templates");
            match (t, width) {
                (Expr::List(l), Some(w)) if !l.elts.is_empty() => list(fuzz_elements(&l.elts, w, rng)),
                _ => fuzz_expr(t, rng),
            }
        })
        .collect()
}

fn list(elts: Vec<Expr>) -> Expr {
    Expr::List(ast::ExprList {
        range: TextRange::default(),
        elts,
        ctx: ast::ExprContext::Load,
    })
}

/// A random expression with the same shape as `e`.
pub fn fuzz_expr<R: Rng>(e: &Expr, rng: &mut R) -> Expr {
    if let Some(v) = int_value(e) {
        return int_expr(fuzz_int(v, rng));
    }
    match e {
        Expr::Constant(c) => match &c.value {
            Constant::Bool(_) => constant(Constant::Bool(rng.gen())),
            Constant::Float(f) => {
                let bound = f.abs().clamp(1.0, MAX_INT as f64);
                let v = (rng.gen_range(-bound..=bound) * 100.0).round() / 100.0;
                constant(Constant::Float(if *f >= 0.0 { v.abs() } else { v }))
            }
            Constant::Str(s) => constant(Constant::Str(fuzz_str(s, rng))),
            _ => e.clone(),
        },
        Expr::List(l) if !l.elts.is_empty() => {
            let n = fuzz_len(l.elts.len(), rng);
            list(fuzz_elements(&l.elts, n, rng))
        }
        Expr::Set(s) if !s.elts.is_empty() => {
            let n = fuzz_len(s.elts.len(), rng).max(1);
            Expr::Set(ast::ExprSet {
                range: TextRange::default(),
                elts: fuzz_elements(&s.elts, n, rng),
            })
        }
        Expr::Tuple(t) => Expr::Tuple(ast::ExprTuple {
            range: TextRange::default(),
            elts: t.elts.iter().map(|x| fuzz_expr(x, rng)).collect(),
            ctx: ast::ExprContext::Load,
        }),
        Expr::Dict(d) if !d.values.is_empty() && d.keys.iter().all(Option::is_some) => {
            let n = fuzz_len(d.values.len(), rng);
            let pairs: Vec<(Expr, Expr)> = (0..n)
                .map(|_| {
                    let i = rng.gen_range(0..d.values.len());
                    let k = d.keys[i].as_ref().expect("checked above");
                    (fuzz_expr(k, rng), fuzz_expr(&d.values[i], rng))
                })
                .collect();
            Expr::Dict(ast::ExprDict {
                range: TextRange::default(),
                keys: pairs.iter().map(|(k, _)| Some(k.clone())).collect(),
                values: pairs.into_iter().map(|(_, v)| v).collect(),
            })
        }
        _ => e.clone(),
    }
}

/// `n` seeded argument lists shaped like the program's test inputs.
pub fn fuzz_inputs(program: &Program, n: usize, seed: u64) -> Vec<String> {
    let templates: Vec<ast::ExprCall> = program
        .tests
        .iter()
        .filter_map(|t| parse_call(&program.entry_point, &t.input_expr))
        .collect();
    if templates.is_empty() {
        return Vec::new();
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|i| {
            let call = &templates[i % templates.len()];
            let args: Vec<Expr> = call.args.iter().map(|a| fuzz_expr(a, &mut rng)).collect();
            let keywords: Vec<ast::Keyword> = call
                .keywords
                .iter()
                .map(|k| ast::Keyword {
                    value: fuzz_expr(&k.value, &mut rng),
                    ..k.clone()
                })
                .collect();
            emit_call_args(&args, &keywords)
        })
        .collect()
}

/// One input on which parent and variant behaved differently.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Disagreement {
    pub input: String,
    pub parent: CallOutcome,
    pub variant: CallOutcome,
}

/// Result of a differential run.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DifferentialReport {
    pub inputs: usize,
    pub disagreements: Vec<Disagreement>,
}

impl DifferentialReport {
    pub fn agrees(&self) -> bool {
        self.disagreements.is_empty()
    }
}

/// Runs parent and variant on the same inputs. Two runs agree when they
/// return values with equal `repr`, raise the same exception type, or both
/// time out.
pub fn differential(
    sandbox: &Sandbox,
    parent: &Program,
    variant_source: &str,
    inputs: &[String],
) -> Result<DifferentialReport, VerifierError> {
    let a = sandbox.evaluate_calls(&parent.source, &parent.entry_point, inputs)?;
    let b = sandbox.evaluate_calls(variant_source, &parent.entry_point, inputs)?;
    let disagreements = inputs
        .iter()
        .zip(a.into_iter().zip(b))
        .filter(|(_, (x, y))| x != y)
        .map(|(input, (parent, variant))| Disagreement {
            input: input.clone(),
            parent,
            variant,
        })
        .collect();
    Ok(DifferentialReport {
        inputs: inputs.len(),
        disagreements,
    })
}

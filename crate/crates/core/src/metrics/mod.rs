//! Robustness metrics over session outcomes.
//!
//! Rates are percentages of distinct original programs. Under a mutation
//! class a program counts as correct when any of its variants in that class
//! was predicted correctly. Sessions that ended in an endpoint failure are
//! left out of every denominator and counted separately.

pub mod annotate;
pub mod report;

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize, Serializer};

use crate::harness::{Session, Termination};
use crate::mutation::MutationClass;

pub use annotate::{annotation_breakdown, AnnotationRecord, Breakdown, Label};
pub use report::{build_report, MetricsReport};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MetricsError {
    #[error("no programs to rate for model `{0}`")]
    EmptyDenominator(String),
}

/// An exact percentage `100 * num / den`.
#[derive(Debug, Clone, Copy)]
pub struct Percent {
    num: i128,
    den: i128,
}

impl Percent {
    pub fn new(num: usize, den: usize) -> Option<Self> {
        (den > 0).then_some(Percent {
            num: num as i128,
            den: den as i128,
        })
    }

    /// `self - other` in percentage points.
    pub fn minus(self, other: Percent) -> Percent {
        Percent {
            num: self.num * other.den - other.num * self.den,
            den: self.den * other.den,
        }
    }

    pub fn value(self) -> f64 {
        100.0 * self.num as f64 / self.den as f64
    }

    /// Value in tenths of a percent, rounded half away from zero.
    pub fn tenths(self) -> i128 {
        let scaled = 1000 * self.num.abs();
        let t = (2 * scaled + self.den) / (2 * self.den);
        if self.num < 0 {
            -t
        } else {
            t
        }
    }

    /// One decimal place, e.g. `76.6`.
    pub fn rounded(self) -> f64 {
        self.tenths() as f64 / 10.0
    }

    /// Signed delta text, e.g. `+14.0` or `-44.3`.
    pub fn signed(self) -> String {
        let t = self.tenths();
        let sign = if t < 0 { '-' } else { '+' };
        format!("{sign}{}.{}", t.abs() / 10, t.abs() % 10)
    }
}

impl PartialEq for Percent {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Percent {}

impl PartialOrd for Percent {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Percent {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.num * other.den).cmp(&(other.num * self.den))
    }
}

impl fmt::Display for Percent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let t = self.tenths();
        let sign = if t < 0 { "-" } else { "" };
        write!(f, "{sign}{}.{}", t.abs() / 10, t.abs() % 10)
    }
}

impl Serialize for Percent {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_f64(self.rounded())
    }
}

/// A table cell such as `76.6 (+14.0)`.
pub fn format_cell(rate: Percent, original: Percent) -> String {
    format!("{rate} ({})", rate.minus(original).signed())
}

/// The fields of a session that metrics depend on.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OutcomeRecord {
    pub model: String,
    pub subject: String,
    pub parent_id: String,
    pub class: Option<MutationClass>,
    pub correct: bool,
    pub termination: Termination,
    pub iterations_used: u32,
}

impl From<&Session> for OutcomeRecord {
    fn from(s: &Session) -> Self {
        OutcomeRecord {
            model: s.model.clone(),
            subject: s.subject.clone(),
            parent_id: s.parent_id.clone(),
            class: s.class,
            correct: s.outcome.correct,
            termination: s.outcome.termination,
            iterations_used: s.outcome.iterations_used,
        }
    }
}

/// Outcomes of one model.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ModelOutcomes {
    /// Original program id to whether it was predicted correctly.
    pub original: BTreeMap<String, bool>,
    /// Per (program, class), the verdicts of its variants.
    pub variants: BTreeMap<(String, MutationClass), Vec<bool>>,
    /// Sessions dropped because the endpoint failed.
    pub excluded: Vec<String>,
    /// Original sessions that ran out of time.
    pub time_capped: usize,
    /// Iterations used by each correct original session.
    pub correct_iterations: BTreeMap<String, u32>,
}

impl ModelOutcomes {
    /// Denominator: originals with a usable session.
    pub fn programs(&self) -> usize {
        self.original.len()
    }

    fn correct_under(&self, class: MutationClass) -> BTreeSet<&str> {
        self.variants
            .iter()
            .filter(|((p, c), v)| *c == class && self.original.contains_key(p) && v.iter().any(|b| *b))
            .map(|((p, _), _)| p.as_str())
            .collect()
    }

    fn recovered_under(&self, class: MutationClass) -> BTreeSet<&str> {
        self.correct_under(class)
            .into_iter()
            .filter(|p| self.original.get(*p) == Some(&false))
            .collect()
    }
}

/// Outcomes of every model, keyed by model name.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct OutcomeMatrix {
    pub models: BTreeMap<String, ModelOutcomes>,
}

impl OutcomeMatrix {
    /// Builds the matrix. When `equivalent` is given, variant outcomes for
    /// subjects outside it are ignored.
    pub fn from_records<'a>(
        records: impl IntoIterator<Item = &'a OutcomeRecord>,
        equivalent: Option<&HashSet<String>>,
    ) -> Self {
        let mut m = OutcomeMatrix::default();
        for r in records {
            let entry = m.models.entry(r.model.clone()).or_default();
            if r.termination == Termination::EndpointError {
                entry.excluded.push(r.subject.clone());
                continue;
            }
            match r.class {
                None => {
                    entry.original.insert(r.parent_id.clone(), r.correct);
                    if r.termination == Termination::TimeCap {
                        entry.time_capped += 1;
                    }
                    if r.correct {
                        entry.correct_iterations.insert(r.parent_id.clone(), r.iterations_used);
                    }
                }
                Some(class) => {
                    if equivalent.is_some_and(|eq| !eq.contains(&r.subject)) {
                        continue;
                    }
                    entry
                        .variants
                        .entry((r.parent_id.clone(), class))
                        .or_default()
                        .push(r.correct);
                }
            }
        }
        m
    }
}

fn model<'a>(m: &'a OutcomeMatrix, name: &str) -> Result<&'a ModelOutcomes, MetricsError> {
    m.models
        .get(name)
        .filter(|o| o.programs() > 0)
        .ok_or_else(|| MetricsError::EmptyDenominator(name.to_string()))
}

/// Share of programs predicted correctly on the original (`class = None`)
/// or on any variant of `class`.
pub fn correctness_rate(
    m: &OutcomeMatrix,
    model_name: &str,
    class: Option<MutationClass>,
) -> Result<Percent, MetricsError> {
    let o = model(m, model_name)?;
    let correct = match class {
        None => o.original.values().filter(|c| **c).count(),
        Some(c) => o.correct_under(c).len(),
    };
    Ok(Percent::new(correct, o.programs()).expect("non-empty"))
}

/// Share of programs missed on the original but predicted correctly on some
/// variant of `class`.
pub fn recovery_rate(
    m: &OutcomeMatrix,
    model_name: &str,
    class: MutationClass,
) -> Result<Percent, MetricsError> {
    let o = model(m, model_name)?;
    Ok(Percent::new(o.recovered_under(class).len(), o.programs()).expect("non-empty"))
}

/// Share of programs recovered by at least one class.
pub fn all_mutations_recovery(m: &OutcomeMatrix, model_name: &str) -> Result<Percent, MetricsError> {
    let o = model(m, model_name)?;
    let union: BTreeSet<&str> = MutationClass::ALL
        .into_iter()
        .flat_map(|c| o.recovered_under(c))
        .collect();
    Ok(Percent::new(union.len(), o.programs()).expect("non-empty"))
}

//! Report assembly and plain-text tables.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;

use super::annotate::{annotation_breakdown, AnnotationRecord, Breakdown};
use super::{
    all_mutations_recovery, correctness_rate, format_cell, recovery_rate, OutcomeMatrix, Percent,
};
use crate::mutation::MutationClass;

/// Rates of one model under one mutation class.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassRates {
    pub class: MutationClass,
    pub rate: Percent,
    /// Percentage points relative to the original rate, from unrounded values.
    pub delta: Percent,
    pub cell: String,
    pub recovery: Percent,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ModelReport {
    pub model: String,
    pub multi_turn: bool,
    /// Original programs in the denominator.
    pub programs: usize,
    pub excluded_sessions: usize,
    /// Original sessions that ran out of time; also counted as failed.
    pub time_capped: usize,
    pub failed: Percent,
    pub correct: Percent,
    pub classes: Vec<ClassRates>,
    pub all_mutations_recovery: Percent,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub annotations: Option<Breakdown>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MetricsReport {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub manifest: Option<String>,
    pub models: Vec<ModelReport>,
    pub notes: Vec<String>,
}

/// Builds the report. `multi_turn` maps model names to their profile; models
/// missing from it are treated as multi-turn.
pub fn build_report(
    matrix: &OutcomeMatrix,
    multi_turn: &BTreeMap<String, bool>,
    annotations: Option<&[AnnotationRecord]>,
    manifest: Option<String>,
) -> MetricsReport {
    let mut models = Vec::new();
    let mut notes = Vec::new();
    for (name, o) in &matrix.models {
        if !o.excluded.is_empty() {
            notes.push(format!("{name}: {} session(s) excluded after endpoint errors", o.excluded.len()));
        }
        let correct = match correctness_rate(matrix, name, None) {
            Ok(c) => c,
            Err(e) => {
                notes.push(e.to_string());
                continue;
            }
        };
        let failed = Percent::new(o.programs() - o.original.values().filter(|c| **c).count(), o.programs())
            .expect("non-empty");
        let classes = MutationClass::ALL
            .into_iter()
            .map(|class| {
                let rate = correctness_rate(matrix, name, Some(class)).expect("non-empty");
                ClassRates {
                    class,
                    rate,
                    delta: rate.minus(correct),
                    cell: format_cell(rate, correct),
                    recovery: recovery_rate(matrix, name, class).expect("non-empty"),
                }
            })
            .collect();
        let mt = multi_turn.get(name).copied().unwrap_or(true);
        let annotations = annotations.map(|a| annotation_breakdown(name, o, mt, a));
        if let Some(b) = &annotations {
            if !b.unlabeled.is_empty() {
                notes.push(format!("{name}: {} correct session(s) without labels", b.unlabeled.len()));
            }
            if !b.ignored.is_empty() {
                notes.push(format!("{name}: labels on {} incorrect program(s) ignored", b.ignored.len()));
            }
        }
        models.push(ModelReport {
            model: name.clone(),
            multi_turn: mt,
            programs: o.programs(),
            excluded_sessions: o.excluded.len(),
            time_capped: o.time_capped,
            failed,
            correct,
            classes,
            all_mutations_recovery: all_mutations_recovery(matrix, name).expect("non-empty"),
            annotations,
        });
    }
    MetricsReport {
        manifest,
        models,
        notes,
    }
}

fn table(out: &mut String, title: &str, rows: &[Vec<String>]) {
    let cols = rows.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> = (0..cols)
        .map(|c| rows.iter().filter_map(|r| r.get(c)).map(|s| s.chars().count()).max().unwrap_or(0))
        .collect();
    let _ = writeln!(out, "{title}");
    for (i, r) in rows.iter().enumerate() {
        let line: Vec<String> = r
            .iter()
            .enumerate()
            .map(|(c, s)| if c == 0 { format!("{s:<w$}", w = widths[c]) } else { format!("{s:>w$}", w = widths[c]) })
            .collect();
        let _ = writeln!(out, "{}", line.join("  ").trim_end());
        if i == 0 {
            let total = widths.iter().sum::<usize>() + 2 * widths.len().saturating_sub(1);
            let _ = writeln!(out, "{}", "-".repeat(total));
        }
    }
    out.push('\n');
}

fn opt(p: Option<Percent>) -> String {
    p.map_or_else(|| "--".to_string(), |p| p.to_string())
}

impl MetricsReport {
    /// Aligned plain-text tables.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let labels: Vec<String> = MutationClass::ALL.iter().map(|c| c.label().to_string()).collect();

        for m in &self.models {
            let _ = writeln!(
                out,
                "{}: {} programs, {} time-capped, {} sessions excluded",
                m.model, m.programs, m.time_capped, m.excluded_sessions
            );
        }
        if !self.models.is_empty() {
            out.push('\n');
        }

        if self.models.iter().any(|m| m.annotations.is_some()) {
            let mut rows = vec![vec!["".to_string()]];
            rows[0].extend(self.models.iter().map(|m| m.model.clone()));
            let row = |name: &str, f: &dyn Fn(&ModelReport) -> String| {
                let mut r = vec![name.to_string()];
                r.extend(self.models.iter().map(f));
                r
            };
            let ann = |f: fn(&Breakdown) -> Option<Percent>| {
                move |m: &ModelReport| m.annotations.as_ref().map_or("--".to_string(), |b| opt(f(b)))
            };
            rows.push(row("%Failed Predictions", &|m| m.failed.to_string()));
            rows.push(row("%Correct Predictions", &|m| m.correct.to_string()));
            rows.push(row("%Correct guesses, flawed reasoning", &ann(|b| b.flawed_guess)));
            rows.push(row("%Sound reasoning (>1 iteration)", &ann(|b| b.sound_multi_iter)));
            rows.push(row("%Sound reasoning (=1 iteration)", &ann(|b| b.sound_1iter)));
            table(&mut out, "Reasoning breakdown on original programs", &rows);
        }

        let mut header = vec!["Model".to_string(), "Original".to_string()];
        header.extend(labels.iter().cloned());
        let mut rates = vec![header.clone()];
        for m in &self.models {
            let mut r = vec![m.model.clone(), format!("{}%", m.correct)];
            r.extend(m.classes.iter().map(|c| c.cell.clone()));
            rates.push(r);
        }
        table(&mut out, "Correct predictions per mutation (%)", &rates);

        header.push("All Mutations".to_string());
        let mut rec = vec![header];
        for m in &self.models {
            let mut r = vec![m.model.clone(), format!("{}%", m.correct)];
            r.extend(m.classes.iter().map(|c| format!("{}%", c.recovery)));
            r.push(format!("{}%", m.all_mutations_recovery));
            rec.push(r);
        }
        table(&mut out, "Correct only after mutation (%)", &rec);

        for n in &self.notes {
            let _ = writeln!(out, "note: {n}");
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::Termination;
    use crate::metrics::OutcomeRecord;

    fn rec(parent: &str, class: Option<MutationClass>, correct: bool) -> OutcomeRecord {
        OutcomeRecord {
            model: "m".into(),
            subject: format!("{parent}{}", class.map_or(String::new(), |c| format!("::{c}::0"))),
            parent_id: parent.into(),
            class,
            correct,
            termination: if correct {
                Termination::Correct
            } else {
                Termination::IterationCap
            },
            iterations_used: 1,
        }
    }

    #[test]
    fn two_of_ten_recovered() {
        let mut rs = Vec::new();
        for i in 0..10 {
            let p = format!("p{i}");
            rs.push(rec(&p, None, i >= 5));
            rs.push(rec(&p, Some(MutationClass::RenameVariable), i < 2 || i >= 5));
            rs.push(rec(&p, Some(MutationClass::SwapIfElse), i == 1 || i == 2));
        }
        let m = OutcomeMatrix::from_records(&rs, None);
        let r = build_report(&m, &BTreeMap::new(), None, Some("abc".into()));
        let mr = &r.models[0];
        let rename = mr.classes.iter().find(|c| c.class == MutationClass::RenameVariable).unwrap();
        assert_eq!(rename.recovery.to_string(), "20.0");
        assert_eq!(rename.cell, "70.0 (+20.0)");
        assert_eq!(mr.all_mutations_recovery.to_string(), "30.0");
        assert_eq!(mr.failed.to_string(), "50.0");

        let text = r.to_text();
        assert!(text.contains("All Mutations"));
        assert!(text.contains("70.0 (+20.0)"));
        assert!(!text.contains("Reasoning breakdown"));
        let json = serde_json::to_value(&r).unwrap();
        assert_eq!(json["models"][0]["classes"][2]["recovery"], 20.0);
        assert_eq!(json["manifest"], "abc");
    }

    #[test]
    fn empty_model_becomes_a_note() {
        let mut r = rec("p", None, true);
        r.termination = Termination::EndpointError;
        let m = OutcomeMatrix::from_records(&[r], None);
        let rep = build_report(&m, &BTreeMap::new(), None, None);
        assert!(rep.models.is_empty());
        assert!(rep.notes.iter().any(|n| n.contains("no programs")));
    }
}

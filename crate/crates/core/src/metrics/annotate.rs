//! Reasoning labels for correct original predictions.

use std::collections::{BTreeMap, BTreeSet};
use std::io::Read;

use serde::{Deserialize, Serialize};

use super::{ModelOutcomes, Percent};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Label {
    /// Sound reasoning, correct on the first query.
    #[serde(rename = "sound_1iter")]
    Sound1Iter,
    /// Sound reasoning, correct only after feedback.
    SoundMultiIter,
    /// Correct value reached through flawed reasoning.
    FlawedGuess,
}

/// One row of the annotations CSV.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnnotationRecord {
    pub model: String,
    pub program_id: String,
    pub label: Label,
    pub annotator: String,
}

pub fn read_annotations(r: impl Read) -> Result<Vec<AnnotationRecord>, csv::Error> {
    csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_reader(r)
        .deserialize()
        .collect()
}

/// Majority label; ties go to [`Label::FlawedGuess`], then to the label
/// implying more iterations.
pub fn majority(labels: &[Label]) -> Option<Label> {
    let mut counts: BTreeMap<Label, usize> = BTreeMap::new();
    for l in labels {
        *counts.entry(*l).or_default() += 1;
    }
    // BTreeMap order puts FlawedGuess last, so max_by_key keeps it on ties.
    counts.into_iter().max_by_key(|(_, n)| *n).map(|(l, _)| l)
}

/// Label shares over one model's correct original predictions.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Breakdown {
    pub flawed_guess: Option<Percent>,
    /// `None` for single-turn models, shown as `--`.
    pub sound_multi_iter: Option<Percent>,
    pub sound_1iter: Option<Percent>,
    pub labeled: usize,
    /// Correct original sessions without any label.
    pub unlabeled: Vec<String>,
    /// Labels on programs that were not predicted correctly.
    pub ignored: Vec<String>,
}

pub fn annotation_breakdown(
    model: &str,
    outcomes: &ModelOutcomes,
    multi_turn: bool,
    annotations: &[AnnotationRecord],
) -> Breakdown {
    let mut by_program: BTreeMap<&str, Vec<Label>> = BTreeMap::new();
    let mut ignored = BTreeSet::new();
    for a in annotations.iter().filter(|a| a.model == model) {
        if outcomes.original.get(&a.program_id) == Some(&true) {
            by_program.entry(&a.program_id).or_default().push(a.label);
        } else {
            ignored.insert(a.program_id.clone());
        }
    }
    let unlabeled = outcomes
        .original
        .iter()
        .filter(|(p, c)| **c && !by_program.contains_key(p.as_str()))
        .map(|(p, _)| p.clone())
        .collect();
    let winners: Vec<Label> = by_program.values().filter_map(|ls| majority(ls)).collect();
    let share = |l: Label| Percent::new(winners.iter().filter(|w| **w == l).count(), winners.len());
    Breakdown {
        flawed_guess: share(Label::FlawedGuess),
        sound_multi_iter: if multi_turn {
            share(Label::SoundMultiIter)
        } else {
            None
        },
        sound_1iter: share(Label::Sound1Iter),
        labeled: winners.len(),
        unlabeled,
        ignored: ignored.into_iter().collect(),
    }
}

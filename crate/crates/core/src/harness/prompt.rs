//! Prompt templates for the output-prediction task.

const INSTRUCTIONS: &str = "Simulate the Execution: You are given a Python function and an assertion containing a function input. Complete the assertion containing the execution output corresponding to the given input in [ANSWER] and [/ANSWER] tags. For example, the answer to '''assert sumEvenNumbers([1,2,3,4])==???''' would be
[ANSWER]
assert sumEvenNumbers([1,2,3,4]) == 6
[/ANSWER]
Please complete the assertion and explain your reasoning for your prediction, using no more than 1000 tokens.
";

/// Sent after an incorrect or unreadable answer. Carries no program text.
pub const FEEDBACK_PROMPT: &str = "Your previous output prediction was INCORRECT!
Try again. Complete the initial program assertion containing the execution output corresponding to the given input in [ANSWER] and [/ANSWER] tags. For example, the answer to '''assert sumEvenNumbers([1,2,3,4])==???''' would be
[ANSWER]
assert sumEvenNumbers([1,2,3,4]) == 6
[/ANSWER]
Please complete the assertion and explain your reasoning for your new prediction, using no more than 1000 tokens.
";

/// First prompt of a session: instructions, then the fenced program and
/// the incomplete assertion.
pub fn initial_prompt(source: &str, entry: &str, input: &str) -> String {
    let source = source.trim_end_matches('\n');
    let sep = if source.is_empty() { "" } else { "\n" };
    format!("{INSTRUCTIONS}```python\n{source}{sep}assert {entry}({input}) == ???\n```\n")
}

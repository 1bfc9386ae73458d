//! Reference subgroups used by the test suites and the CLI demos.
//!
//! Each action has basepoint 0 and fixes every word of the matching
//! generator list. Folding the list gives the same action up to the
//! canonical BFS relabeling.

use crate::subgroup::CosetAction;

/// Index 3: stabilizer of a point under `a ↦ (1 2)`, `b ↦ (2 3)`.
pub const INDEX3_GENERATORS: [&str; 4] = ["aa", "bb", "Aba", "Bab"];

/// Index 5.
pub const INDEX5_GENERATORS: [&str; 6] = ["aa", "bb", "ABaba", "BAbba", "Baab", "Abab"];

/// Index 7.
pub const INDEX7_GENERATORS: [&str; 8] =
    ["aaa", "bbbbb", "aba", "baB", "Bab", "AbA", "bbabb", "BBaBB"];

/// Index 2: all words of even length.
pub const EVEN_GENERATORS: [&str; 3] = ["aa", "bb", "ab"];

/// σ_a = (0 1), σ_b = (0 2).
pub fn index3_action() -> CosetAction {
    CosetAction::new(vec![1, 0, 2], vec![2, 1, 0], 0).unwrap()
}

/// σ_a = (0 1)(2 3), σ_b = (0 2)(1 4 3).
pub fn index5_action() -> CosetAction {
    CosetAction::new(vec![1, 0, 3, 2, 4], vec![2, 4, 0, 1, 3], 0).unwrap()
}

/// σ_a = (0 1 2)(5 6), σ_b = (0 3 5 6 4)(1 2).
pub fn index7_action() -> CosetAction {
    CosetAction::new(vec![1, 2, 0, 3, 4, 6, 5], vec![3, 2, 1, 5, 0, 6, 4], 0).unwrap()
}

/// σ_a = σ_b = (0 1).
pub fn even_action() -> CosetAction {
    CosetAction::new(vec![1, 0], vec![1, 0], 0).unwrap()
}

/// The whole group, one coset.
pub fn whole_group_action() -> CosetAction {
    CosetAction::new(vec![0], vec![0], 0).unwrap()
}

pub fn all() -> Vec<(&'static str, CosetAction)> {
    vec![
        ("index3", index3_action()),
        ("index5", index5_action()),
        ("index7", index7_action()),
        ("even", even_action()),
    ]
}

//! The starter knot table shipped in `corpus/starter.knots`.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::diagram::BraidWord;

pub const SEED: u64 = 0x6b6e_6f74;
pub const RANDOM_COUNT: usize = 200;
pub const MAX_LETTERS: usize = 14;
pub const MAX_STRANDS: usize = 4;

/// Named entries from standard tables. PD codes use the KnotTheory labelling.
pub const NAMED: &[(&str, &str, &str)] = &[
    ("unknot", "braid", "1:"),
    ("trefoil", "braid", "2: 1 1 1"),
    ("trefoil-left", "braid", "2: -1 -1 -1"),
    ("trefoil-pd", "pd", "X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]"),
    ("T(2,5)", "braid", "2: 1 1 1 1 1"),
    ("T(2,5)-left", "braid", "2: -1 -1 -1 -1 -1"),
    ("T(2,7)", "braid", "2: 1 1 1 1 1 1 1"),
    ("T(3,4)", "braid", "3: 1 2 1 2 1 2 1 2"),
    ("figure-eight", "braid", "3: 1 -2 1 -2"),
    ("figure-eight-pd", "pd", "X[4,2,5,1] X[8,6,1,5] X[6,3,7,4] X[2,7,3,8]"),
    ("5_2-pd", "pd", "X[1,4,2,5] X[3,8,4,9] X[5,10,6,1] X[9,6,10,7] X[7,2,8,3]"),
    ("5_2-positive", "pd", "X[1,5,2,4] X[3,9,4,8] X[5,1,6,10] X[9,7,10,6] X[7,3,8,2]"),
    ("6_1", "seifert", "2: 1 1 0 -2"),
    ("6_1-pd", "pd", "X[1,4,2,5] X[7,10,8,11] X[3,9,4,8] X[9,3,10,2] X[5,12,6,1] X[11,6,12,7]"),
    ("10_139", "braid", "3: 1 1 1 1 2 1 1 1 2 2"),
];

/// Distinct positive braid words closing to knots, drawn from a fixed seed.
pub fn random_positive_braids(seed: u64, count: usize) -> Vec<BraidWord> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut seen = BTreeSet::new();
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let strands = rng.gen_range(2..=MAX_STRANDS);
        let len = rng.gen_range(strands - 1..=MAX_LETTERS);
        let letters: Vec<i64> = (0..len).map(|_| rng.gen_range(1..strands as i64)).collect();
        if let Ok(word) = BraidWord::new(strands, letters) {
            if seen.insert(word.to_string()) {
                out.push(word);
            }
        }
    }
    out
}

/// Full text of the starter table.
pub fn starter_table() -> String {
    let mut out = String::from("# name ; kind ; payload\n");
    for (name, kind, payload) in NAMED {
        let _ = writeln!(out, "{name} ; {kind} ; {payload}");
    }
    let _ = writeln!(
        out,
        "# {RANDOM_COUNT} random positive braids, seed {SEED:#x}, at most {MAX_STRANDS} strands and {MAX_LETTERS} letters"
    );
    for (i, b) in random_positive_braids(SEED, RANDOM_COUNT).iter().enumerate() {
        let _ = writeln!(out, "random-{:03} ; braid ; {b}", i + 1);
    }
    out
}

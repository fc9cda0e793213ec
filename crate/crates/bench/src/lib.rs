//! Inputs shared by the benchmarks in `benches/`.

use invquant::ccr::{CommutatorTable, Letter, Word};
use invquant::scalar::{cx, rat};

/// Diagonal table with alternating signs, as for a Minkowski-signature vector field.
pub fn signed_table(slots: usize) -> CommutatorTable {
    let values: Vec<_> = (0..slots)
        .map(|i| cx(rat(if i % 4 == 0 { -1 } else { 1 }), rat(0)))
        .collect();
    CommutatorTable::diagonal(&values).expect("diagonal tables are Hermitian")
}

/// Antinormal word a(0) .. a(n-1) a*(n-1) .. a*(0) over `slots` modes.
pub fn antinormal_word(n: usize, slots: usize) -> Word {
    let mut letters: Vec<Letter> = (0..n).map(|i| Letter::annihilate(i % slots)).collect();
    letters.extend((0..n).rev().map(|i| Letter::create(i % slots)));
    Word::new(letters)
}

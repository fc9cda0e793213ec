//! Random generators and independent oracles shared by the integration tests.
#![allow(dead_code)]

use invquant::ccr::{CommutatorTable, Letter, Phrase, Word};
use invquant::fock::Ket;
use invquant::linalg::ExactMatrix;
use invquant::scalar::{cx_int, cx_one, cx_zero, is_zero, ratio, ComplexScalar, Rational};
use proptest::prelude::*;
use rand::Rng;

pub fn small_cx(rng: &mut impl Rng) -> ComplexScalar {
    cx_int(rng.gen_range(-3..=3), rng.gen_range(-3..=3))
}

pub fn small_rational(rng: &mut impl Rng) -> Rational {
    ratio(rng.gen_range(-9..=9), rng.gen_range(1..=5))
}

pub fn random_letter(rng: &mut impl Rng, slots: usize) -> Letter {
    let s = rng.gen_range(0..slots);
    if rng.gen_bool(0.5) {
        Letter::create(s)
    } else {
        Letter::annihilate(s)
    }
}

pub fn random_word(rng: &mut impl Rng, slots: usize, max_len: usize) -> Word {
    let n = rng.gen_range(0..=max_len);
    Word::new((0..n).map(|_| random_letter(rng, slots)).collect())
}

pub fn random_phrase(rng: &mut impl Rng, slots: usize, max_words: usize, max_len: usize) -> Phrase {
    let mut p = Phrase::zero(slots);
    for _ in 0..rng.gen_range(1..=max_words) {
        let w = random_word(rng, slots, max_len);
        p = p.add(&Phrase::term(slots, w, small_cx(rng)).unwrap()).unwrap();
    }
    p
}

/// Hermitian table with small Gaussian-integer entries.
pub fn random_table(rng: &mut impl Rng, slots: usize) -> CommutatorTable {
    let mut m = ExactMatrix::zeros(slots, slots);
    for i in 0..slots {
        m[(i, i)] = cx_int(rng.gen_range(-2..=2), 0);
        for j in i + 1..slots {
            let z = if rng.gen_bool(0.5) { small_cx(rng) } else { cx_zero() };
            m[(j, i)] = z.conj();
            m[(i, j)] = z;
        }
    }
    CommutatorTable::new(m).unwrap()
}

/// Combination of created words with grades up to `max_grade`.
pub fn random_ket(rng: &mut impl Rng, slots: usize, max_grade: usize) -> Ket {
    let mut k = Ket::zero(slots);
    for _ in 0..rng.gen_range(1..=3) {
        let n = rng.gen_range(0..=max_grade);
        let created: Vec<usize> = (0..n).map(|_| rng.gen_range(0..slots)).collect();
        k = k
            .add(&Ket::created(slots, &created).unwrap().scale(&small_cx(rng)))
            .unwrap();
    }
    k
}

/// Letters sorted into the canonical normal word.
fn sorted(letters: Vec<Letter>) -> Word {
    let mut creates: Vec<Letter> = letters.iter().copied().filter(|l| l.is_create()).collect();
    let mut anns: Vec<Letter> = letters.iter().copied().filter(|l| l.is_annihilate()).collect();
    creates.sort_by_key(|l| l.slot);
    anns.sort_by_key(|l| l.slot);
    creates.extend(anns);
    Word::new(creates)
}

/// Wick expansion: sum over all partial matchings that pair an annihilator
/// with a later creator, weighted by the table entries, of the sorted
/// unmatched letters.
pub fn wick_normal(w: &Word, table: &CommutatorTable) -> Phrase {
    fn go(
        letters: &[Letter],
        pos: usize,
        used: &mut Vec<bool>,
        weight: ComplexScalar,
        table: &CommutatorTable,
        out: &mut Phrase,
        slots: usize,
    ) {
        if is_zero(&weight) {
            return;
        }
        if pos == letters.len() {
            let rest: Vec<Letter> = letters
                .iter()
                .zip(used.iter())
                .filter(|(_, u)| !**u)
                .map(|(l, _)| *l)
                .collect();
            *out = out.add(&Phrase::term(slots, sorted(rest), weight).unwrap()).unwrap();
            return;
        }
        if used[pos] {
            return go(letters, pos + 1, used, weight, table, out, slots);
        }
        // leave unmatched
        go(letters, pos + 1, used, weight.clone(), table, out, slots);
        if letters[pos].is_annihilate() {
            for q in pos + 1..letters.len() {
                if !used[q] && letters[q].is_create() {
                    let c = table.get(letters[pos].slot, letters[q].slot).clone();
                    used[pos] = true;
                    used[q] = true;
                    go(letters, pos + 1, used, &weight * c, table, out, slots);
                    used[pos] = false;
                    used[q] = false;
                }
            }
        }
    }
    let slots = table.slots();
    let mut out = Phrase::zero(slots);
    let mut used = vec![false; w.len()];
    go(w.letters(), 0, &mut used, cx_one(), table, &mut out, slots);
    out
}

pub fn wick_normal_phrase(p: &Phrase, table: &CommutatorTable) -> Phrase {
    let mut out = Phrase::zero(p.slots());
    for (w, c) in p.terms() {
        out = out.add_scaled(&wick_normal(w, table), c).unwrap();
    }
    out
}

/// Vacuum expectation as a sum over perfect matchings.
pub fn wick_vev(w: &Word, table: &CommutatorTable) -> ComplexScalar {
    fn go(letters: &[Letter], used: &mut Vec<bool>, table: &CommutatorTable) -> ComplexScalar {
        let Some(p) = used.iter().position(|u| !u) else {
            return cx_one();
        };
        if letters[p].is_create() {
            return cx_zero();
        }
        used[p] = true;
        let mut total = cx_zero();
        for q in p + 1..letters.len() {
            if !used[q] && letters[q].is_create() {
                let c = table.get(letters[p].slot, letters[q].slot).clone();
                if is_zero(&c) {
                    continue;
                }
                used[q] = true;
                total += c * go(letters, used, table);
                used[q] = false;
            }
        }
        used[p] = false;
        total
    }
    let mut used = vec![false; w.len()];
    go(w.letters(), &mut used, table)
}

pub fn letter_strategy(slots: usize) -> impl Strategy<Value = Letter> {
    (any::<bool>(), 0..slots).prop_map(|(c, s)| if c { Letter::create(s) } else { Letter::annihilate(s) })
}

pub fn word_strategy(slots: usize, max_len: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(letter_strategy(slots), 0..=max_len).prop_map(Word::new)
}

pub fn cx_strategy() -> impl Strategy<Value = ComplexScalar> {
    (-3i64..=3, -3i64..=3).prop_map(|(a, b)| cx_int(a, b))
}

pub fn phrase_strategy(slots: usize, max_words: usize, max_len: usize) -> impl Strategy<Value = Phrase> {
    prop::collection::vec((word_strategy(slots, max_len), cx_strategy()), 1..=max_words).prop_map(
        move |terms| {
            let mut p = Phrase::zero(slots);
            for (w, c) in terms {
                p = p.add(&Phrase::term(slots, w, c).unwrap()).unwrap();
            }
            p
        },
    )
}

//! Free algebra of creation/annihilation letters modulo canonical commutation
//! relations.
//!
//! A [`Phrase`] is a finite linear combination of [`Word`]s with exact complex
//! coefficients. Multiplication concatenates words; [`normal_order`] rewrites a
//! phrase into its canonical representative in the quotient algebra using
//! `[Annihilate(i), Create(j)] = C[i][j]` from a [`CommutatorTable`]. Letters of
//! the same kind commute.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::ExactMatrix;
use crate::scalar::{cx_one, cx_zero, is_zero, ComplexScalar};

/// `Create` sorts before `Annihilate`; the canonical normal word relies on it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Kind {
    Create,
    Annihilate,
}

impl Kind {
    pub fn flip(self) -> Kind {
        match self {
            Kind::Create => Kind::Annihilate,
            Kind::Annihilate => Kind::Create,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Letter {
    pub kind: Kind,
    pub slot: usize,
}

impl Letter {
    pub fn create(slot: usize) -> Letter {
        Letter {
            kind: Kind::Create,
            slot,
        }
    }

    pub fn annihilate(slot: usize) -> Letter {
        Letter {
            kind: Kind::Annihilate,
            slot,
        }
    }

    pub fn conj(self) -> Letter {
        Letter {
            kind: self.kind.flip(),
            slot: self.slot,
        }
    }

    pub fn grade(self) -> i64 {
        match self.kind {
            Kind::Create => 1,
            Kind::Annihilate => -1,
        }
    }

    pub fn is_create(self) -> bool {
        self.kind == Kind::Create
    }

    pub fn is_annihilate(self) -> bool {
        self.kind == Kind::Annihilate
    }
}

impl fmt::Debug for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            Kind::Create => write!(f, "c{}", self.slot),
            Kind::Annihilate => write!(f, "a{}", self.slot),
        }
    }
}

/// Ordered product of letters. The empty word is the unit `()^`.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn empty() -> Word {
        Word(Vec::new())
    }

    pub fn new(letters: Vec<Letter>) -> Word {
        Word(letters)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn grade(&self) -> i64 {
        self.0.iter().map(|l| l.grade()).sum()
    }

    /// All creations precede all annihilations.
    pub fn is_normal(&self) -> bool {
        self.0.windows(2).all(|w| !(w[0].is_annihilate() && w[1].is_create()))
    }

    pub fn has_annihilator(&self) -> bool {
        self.0.iter().any(|l| l.is_annihilate())
    }

    /// Reversed word with every letter conjugated.
    pub fn conjugate(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l.conj()).collect())
    }

    fn max_slot(&self) -> Option<usize> {
        self.0.iter().map(|l| l.slot).max()
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "()");
        }
        let parts: Vec<String> = self.0.iter().map(|l| format!("{l:?}")).collect();
        write!(f, "{}", parts.join(" "))
    }
}

impl From<Vec<Letter>> for Word {
    fn from(v: Vec<Letter>) -> Word {
        Word(v)
    }
}

/// Finite linear combination of words over a fixed number of slots.
#[derive(Clone, PartialEq)]
pub struct Phrase {
    slots: usize,
    terms: BTreeMap<Word, ComplexScalar>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MulAddMode {
    Multiply,
    AddScaled,
}

impl Phrase {
    pub fn zero(slots: usize) -> Phrase {
        Phrase {
            slots,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(slots: usize) -> Phrase {
        Self::scalar(slots, cx_one())
    }

    pub fn scalar(slots: usize, c: ComplexScalar) -> Phrase {
        let mut p = Self::zero(slots);
        p.add_term(Word::empty(), c);
        p
    }

    pub fn letter(slots: usize, letter: Letter) -> Result<Phrase> {
        Self::term(slots, Word(vec![letter]), cx_one())
    }

    pub fn word(slots: usize, word: Word) -> Result<Phrase> {
        Self::term(slots, word, cx_one())
    }

    pub fn term(slots: usize, word: Word, coeff: ComplexScalar) -> Result<Phrase> {
        check_word(slots, &word)?;
        let mut p = Self::zero(slots);
        p.add_term(word, coeff);
        Ok(p)
    }

    pub fn from_terms(
        slots: usize,
        terms: impl IntoIterator<Item = (Word, ComplexScalar)>,
    ) -> Result<Phrase> {
        let mut p = Self::zero(slots);
        for (w, c) in terms {
            check_word(slots, &w)?;
            p.add_term(w, c);
        }
        Ok(p)
    }

    pub fn slots(&self) -> usize {
        self.slots
    }

    pub fn terms(&self) -> &BTreeMap<Word, ComplexScalar> {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }

    pub fn coeff(&self, w: &Word) -> ComplexScalar {
        self.terms.get(w).cloned().unwrap_or_else(cx_zero)
    }

    /// Adds `c·w`, dropping the entry if it cancels. The caller guarantees
    /// that `w` fits the slot space.
    pub(crate) fn add_term(&mut self, w: Word, c: ComplexScalar) {
        if is_zero(&c) {
            return;
        }
        match self.terms.entry(w) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get() + c;
                if is_zero(&s) {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    fn check_same_space(&self, other: &Phrase) -> Result<()> {
        if self.slots != other.slots {
            return Err(Error::Config(format!(
                "phrases live on different slot spaces ({} vs {})",
                self.slots, other.slots
            )));
        }
        Ok(())
    }

    pub fn mul(&self, other: &Phrase) -> Result<Phrase> {
        self.check_same_space(other)?;
        let mut out = Phrase::zero(self.slots);
        for (w1, c1) in &self.terms {
            for (w2, c2) in &other.terms {
                out.add_term(w1.concat(w2), c1 * c2);
            }
        }
        Ok(out)
    }

    /// `self + λ·other`.
    pub fn add_scaled(&self, other: &Phrase, lambda: &ComplexScalar) -> Result<Phrase> {
        self.check_same_space(other)?;
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c * lambda);
        }
        Ok(out)
    }

    pub fn add(&self, other: &Phrase) -> Result<Phrase> {
        self.add_scaled(other, &cx_one())
    }

    pub fn scale(&self, lambda: &ComplexScalar) -> Phrase {
        let mut out = Phrase::zero(self.slots);
        for (w, c) in &self.terms {
            out.add_term(w.clone(), c * lambda);
        }
        out
    }

    /// Antilinear anti-involution: conjugate coefficients, reverse words, and
    /// swap creation with annihilation letter by letter.
    pub fn conjugate(&self) -> Phrase {
        let mut out = Phrase::zero(self.slots);
        for (w, c) in &self.terms {
            out.add_term(w.conjugate(), c.conj());
        }
        out
    }

    /// Terms split by word grade.
    pub fn by_grade(&self) -> BTreeMap<i64, Phrase> {
        let mut parts: BTreeMap<i64, Phrase> = BTreeMap::new();
        for (w, c) in &self.terms {
            parts
                .entry(w.grade())
                .or_insert_with(|| Phrase::zero(self.slots))
                .add_term(w.clone(), c.clone());
        }
        parts
    }
}

fn check_word(slots: usize, w: &Word) -> Result<()> {
    match w.max_slot() {
        Some(s) if s >= slots => Err(Error::Config(format!(
            "letter slot {s} outside slot space of size {slots}"
        ))),
        _ => Ok(()),
    }
}

impl fmt::Debug for Phrase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(w, c)| {
                let coeff = if c.im.is_zero() {
                    c.re.to_string()
                } else {
                    format!("({}+{}i)", c.re, c.im)
                };
                format!("{coeff}·{w:?}")
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// `p·q` or `p + λq`, both canonical.
pub fn mul_add(
    p: &Phrase,
    q: &Phrase,
    lambda: &ComplexScalar,
    mode: MulAddMode,
) -> Result<Phrase> {
    match mode {
        MulAddMode::Multiply => p.mul(q),
        MulAddMode::AddScaled => p.add_scaled(q, lambda),
    }
}

pub fn conjugate(p: &Phrase) -> Phrase {
    p.conjugate()
}

pub fn grade(w: &Word) -> i64 {
    w.grade()
}

/// The mixed block `C[i][j] = [Annihilate(i), Create(j)]` of the commutation
/// relations. Same-kind letters commute.
#[derive(Clone, Debug, PartialEq)]
pub struct CommutatorTable {
    entries: ExactMatrix,
}

impl CommutatorTable {
    pub fn new(entries: ExactMatrix) -> Result<CommutatorTable> {
        if entries.rows() != entries.cols() {
            return Err(Error::Data("commutator table must be square".into()));
        }
        if !entries.is_hermitian() {
            return Err(Error::Data("commutator table must be Hermitian".into()));
        }
        Ok(CommutatorTable { entries })
    }

    pub fn diagonal(values: &[ComplexScalar]) -> Result<CommutatorTable> {
        let n = values.len();
        let mut m = ExactMatrix::zeros(n, n);
        for (i, v) in values.iter().enumerate() {
            m[(i, i)] = v.clone();
        }
        Self::new(m)
    }

    pub fn slots(&self) -> usize {
        self.entries.rows()
    }

    pub fn get(&self, annihilate: usize, create: usize) -> &ComplexScalar {
        &self.entries[(annihilate, create)]
    }

    pub fn matrix(&self) -> &ExactMatrix {
        &self.entries
    }

    fn check_covers(&self, slots: usize) -> Result<()> {
        if self.slots() != slots {
            return Err(Error::Config(format!(
                "commutator table has {} slots, phrase has {slots}",
                self.slots()
            )));
        }
        Ok(())
    }
}

/// Which out-of-order adjacent pair the rewriting step swaps first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Strategy {
    #[default]
    LeftMost,
    RightMost,
}

/// Memoizing rewriting engine bound to one commutator table.
///
/// Caches are keyed by word; reuse one `Normalizer` across many calls on the
/// same table (e.g. when assembling a Gram matrix).
pub struct Normalizer<'t> {
    table: &'t CommutatorTable,
    strategy: Strategy,
    normal: HashMap<Word, Vec<(Word, ComplexScalar)>>,
    vev: HashMap<Word, ComplexScalar>,
}

impl<'t> Normalizer<'t> {
    pub fn new(table: &'t CommutatorTable) -> Self {
        Self::with_strategy(table, Strategy::LeftMost)
    }

    pub fn with_strategy(table: &'t CommutatorTable, strategy: Strategy) -> Self {
        Normalizer {
            table,
            strategy,
            normal: HashMap::new(),
            vev: HashMap::new(),
        }
    }

    pub fn table(&self) -> &CommutatorTable {
        self.table
    }

    pub fn normal_order(&mut self, p: &Phrase) -> Result<Phrase> {
        self.table.check_covers(p.slots())?;
        let mut out = Phrase::zero(p.slots());
        for (w, c) in p.terms() {
            for (nw, nc) in self.normal_word(w) {
                out.add_term(nw, c * nc);
            }
        }
        Ok(out)
    }

    fn swap_position(&self, w: &Word) -> Option<usize> {
        let out_of_order =
            |i: &usize| w.0[*i].is_annihilate() && w.0[*i + 1].is_create();
        let n = w.len().saturating_sub(1);
        match self.strategy {
            Strategy::LeftMost => (0..n).find(out_of_order),
            Strategy::RightMost => (0..n).rev().find(out_of_order),
        }
    }

    /// Normal form of a single word as a list of (canonical word, coefficient).
    pub fn normal_word(&mut self, w: &Word) -> Vec<(Word, ComplexScalar)> {
        if let Some(hit) = self.normal.get(w) {
            return hit.clone();
        }
        let result = match self.swap_position(w) {
            None => {
                let mut sorted = w.0.clone();
                sorted.sort();
                vec![(Word(sorted), cx_one())]
            }
            Some(i) => {
                let (ann, cre) = (w.0[i], w.0[i + 1]);
                let mut swapped = w.0.clone();
                swapped.swap(i, i + 1);
                let mut acc: BTreeMap<Word, ComplexScalar> = BTreeMap::new();
                for (nw, nc) in self.normal_word(&Word(swapped)) {
                    accumulate(&mut acc, nw, nc);
                }
                let c = self.table.get(ann.slot, cre.slot).clone();
                if !is_zero(&c) {
                    let mut shorter = w.0.clone();
                    shorter.drain(i..i + 2);
                    for (nw, nc) in self.normal_word(&Word(shorter)) {
                        accumulate(&mut acc, nw, nc * &c);
                    }
                }
                acc.into_iter().collect()
            }
        };
        self.normal.insert(w.clone(), result.clone());
        result
    }

    /// Vacuum expectation `⟨0| w |0⟩`: the coefficient of `()^` in the normal
    /// form, computed by the same rewriting with vacuum-killing shortcuts.
    pub fn vacuum_expectation(&mut self, w: &Word) -> ComplexScalar {
        if w.is_empty() {
            return cx_one();
        }
        if let Some(hit) = self.vev.get(w) {
            return hit.clone();
        }
        let value = if w.0[0].is_create()
            || w.0[w.len() - 1].is_annihilate()
            || w.grade() != 0
            || !self.fully_contractible(w)
        {
            cx_zero()
        } else {
            let i = self
                .swap_position(w)
                .expect("a word starting with an annihilator and ending with a creator is not normal");
            let (ann, cre) = (w.0[i], w.0[i + 1]);
            let mut swapped = w.0.clone();
            swapped.swap(i, i + 1);
            let mut v = self.vacuum_expectation(&Word(swapped));
            let c = self.table.get(ann.slot, cre.slot).clone();
            if !is_zero(&c) {
                let mut shorter = w.0.clone();
                shorter.drain(i..i + 2);
                v += c * self.vacuum_expectation(&Word(shorter));
            }
            v
        };
        self.vev.insert(w.clone(), value.clone());
        value
    }

    /// Necessary condition for a nonzero vacuum expectation: every letter has a
    /// partner on the correct side with a nonzero table entry.
    fn fully_contractible(&self, w: &Word) -> bool {
        let l = &w.0;
        (0..l.len()).all(|p| {
            let x = l[p];
            if x.is_annihilate() {
                l[p + 1..]
                    .iter()
                    .any(|y| y.is_create() && !is_zero(self.table.get(x.slot, y.slot)))
            } else {
                l[..p]
                    .iter()
                    .any(|y| y.is_annihilate() && !is_zero(self.table.get(y.slot, x.slot)))
            }
        })
    }
}

fn accumulate(acc: &mut BTreeMap<Word, ComplexScalar>, w: Word, c: ComplexScalar) {
    if is_zero(&c) {
        return;
    }
    let entry = acc.entry(w);
    match entry {
        std::collections::btree_map::Entry::Vacant(e) => {
            e.insert(c);
        }
        std::collections::btree_map::Entry::Occupied(mut e) => {
            let s = e.get() + c;
            if is_zero(&s) {
                e.remove();
            } else {
                *e.get_mut() = s;
            }
        }
    }
}

/// Canonical representative of `p` in the quotient algebra: every creation
/// before every annihilation, each block sorted by slot.
pub fn normal_order(p: &Phrase, table: &CommutatorTable) -> Result<Phrase> {
    Normalizer::new(table).normal_order(p)
}

pub fn normal_order_with(
    p: &Phrase,
    table: &CommutatorTable,
    strategy: Strategy,
) -> Result<Phrase> {
    Normalizer::with_strategy(table, strategy).normal_order(p)
}

/// Involutive substitution of letters used by time reversal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LetterMap {
    slots: usize,
    images: Vec<Letter>,
}

fn letter_index(l: Letter) -> usize {
    2 * l.slot + usize::from(l.is_annihilate())
}

impl LetterMap {
    /// `images[2*slot]` is the image of `Create(slot)`, `images[2*slot+1]`
    /// the image of `Annihilate(slot)`.
    pub fn from_images(slots: usize, images: Vec<Letter>) -> Result<LetterMap> {
        if images.len() != 2 * slots {
            return Err(Error::Config(format!(
                "letter map needs {} images, got {}",
                2 * slots,
                images.len()
            )));
        }
        if let Some(bad) = images.iter().find(|l| l.slot >= slots) {
            return Err(Error::Config(format!("letter map image {bad:?} out of range")));
        }
        for (idx, img) in images.iter().enumerate() {
            if letter_index(images[letter_index(*img)]) != idx {
                return Err(Error::Config(format!(
                    "letter map is not an involution at {img:?}"
                )));
            }
        }
        Ok(LetterMap { slots, images })
    }

    /// `Create(s) ↔ Annihilate(perm[s])`; `perm` must be an involution.
    pub fn kind_swap(slots: usize, perm: &[usize]) -> Result<LetterMap> {
        if perm.len() != slots {
            return Err(Error::Config("slot permutation has wrong length".into()));
        }
        let mut images = Vec::with_capacity(2 * slots);
        for &target in perm.iter() {
            images.push(Letter::annihilate(target));
            images.push(Letter::create(target));
        }
        Self::from_images(slots, images)
    }

    pub fn slots(&self) -> usize {
        self.slots
    }

    pub fn apply(&self, l: Letter) -> Letter {
        self.images[letter_index(l)]
    }
}

/// Coefficient-linear anti-automorphism: map every letter, then reverse the
/// word. `(pq)_T = q_T p_T`.
pub fn time_reverse(p: &Phrase, map: &LetterMap) -> Result<Phrase> {
    if map.slots() != p.slots() {
        return Err(Error::Config(format!(
            "letter map covers {} slots, phrase has {}",
            map.slots(),
            p.slots()
        )));
    }
    let mut out = Phrase::zero(p.slots());
    for (w, c) in p.terms() {
        let mapped: Vec<Letter> = w.0.iter().rev().map(|&l| map.apply(l)).collect();
        out.add_term(Word(mapped), c.clone());
    }
    Ok(out)
}

//! Invariant quantizations and their Fock spaces.
//!
//! A quantization splits the amplitude letters into creators and destroyers.
//! Kets are pure-creation phrases applied to the vacuum; bras are their
//! conjugates. The scalar product is the vacuum expectation of the
//! normal-ordered product and may be indefinite.

use std::collections::BTreeMap;

use crate::ccr::{time_reverse, CommutatorTable, Letter, LetterMap, Normalizer, Phrase, Word};
use crate::classical::ModeSet;
use crate::error::{Error, Result};
use crate::linalg::{hermitian_inertia, ExactMatrix, Inertia};
use crate::scalar::{cx_i, cx_zero, ComplexScalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum System {
    Oscillator,
    Scalar,
    Em4,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Variant {
    /// Positive-frequency amplitudes `â` destroy the vacuum.
    PositiveFrequencyDestroys,
    /// Negative-frequency amplitudes `â*` destroy the vacuum.
    NegativeFrequencyDestroys,
}

impl Variant {
    pub fn from_index(i: u8) -> Result<Variant> {
        match i {
            1 => Ok(Variant::PositiveFrequencyDestroys),
            2 => Ok(Variant::NegativeFrequencyDestroys),
            _ => Err(Error::Config(format!("variant must be 1 or 2, got {i}"))),
        }
    }

    pub fn index(self) -> u8 {
        match self {
            Variant::PositiveFrequencyDestroys => 1,
            Variant::NegativeFrequencyDestroys => 2,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct QuantizationChoice {
    pub system: System,
    pub variant: Variant,
    pub modes: ModeSet,
}

/// A built quantization: commutator table, time-reversal letter map and a
/// human-readable label per slot.
#[derive(Clone, Debug)]
pub struct Quantization {
    pub table: CommutatorTable,
    pub letter_map: LetterMap,
    /// `labels[s]` names the operator that `Annihilate(s)` stands for.
    pub labels: Vec<String>,
    pub variant: Variant,
}

/// Commutator table from the classical brackets `bracket[i][j] = {a_i, a_j*}`
/// through `[â, b̂] = i {a, b}^`.
pub fn table_from_bracket(bracket: &ExactMatrix, variant: Variant) -> Result<CommutatorTable> {
    let n = bracket.rows();
    if bracket.cols() != n {
        return Err(Error::Data("bracket matrix must be square".into()));
    }
    let mut c = ExactMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            c[(i, j)] = match variant {
                // [â_i, â_j*] = i{a_i, a_j*}
                Variant::PositiveFrequencyDestroys => cx_i() * &bracket[(i, j)],
                // [â_i*, â_j] = i{a_i*, a_j} = -i{a_j, a_i*}
                Variant::NegativeFrequencyDestroys => -(cx_i() * &bracket[(j, i)]),
            };
        }
    }
    CommutatorTable::new(c).map_err(|e| match e {
        Error::Data(msg) => Error::Data(format!("bracket is not Hermitian-consistent: {msg}")),
        other => other,
    })
}

/// Pairs every mode with the mode of opposite spatial momentum when the mode
/// set contains it with the same weight.
fn reversal_permutation(modes: &ModeSet) -> Vec<usize> {
    let ms = modes.modes();
    let partner: Vec<usize> = (0..ms.len())
        .map(|i| {
            (0..ms.len())
                .find(|&j| {
                    ms[j].k[0] == ms[i].k[0]
                        && (1..4).all(|mu| ms[j].k[mu] == -&ms[i].k[mu])
                        && ms[j].weight == ms[i].weight
                })
                .unwrap_or(i)
        })
        .collect();
    (0..modes.slots())
        .map(|s| {
            let (m, c) = modes.split_slot(s);
            modes.slot(partner[m], c)
        })
        .collect()
}

pub fn build_quantization(choice: &QuantizationChoice) -> Result<Quantization> {
    let modes = &choice.modes;
    if modes.is_empty() {
        return Err(Error::Precondition("mode set is empty".into()));
    }
    match choice.system {
        System::Oscillator if modes.is_em() || modes.len() != 1 => {
            return Err(Error::Config("the oscillator needs a single scalar mode".into()))
        }
        System::Scalar if modes.is_em() => {
            return Err(Error::Config("scalar quantization needs a scalar mode set".into()))
        }
        System::Em4 if !modes.is_em() => {
            return Err(Error::Config("EM4 quantization needs an electromagnetic mode set".into()))
        }
        _ => {}
    }
    let n = modes.slots();
    let mut bracket = ExactMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            bracket[(i, j)] = modes.unit_bracket(i, j);
        }
    }
    let table = table_from_bracket(&bracket, choice.variant)?;
    let perm = reversal_permutation(modes);
    for i in 0..n {
        for j in 0..n {
            if table.get(perm[j], perm[i]) != table.get(i, j) {
                return Err(Error::Data("time reversal does not preserve the relations".into()));
            }
        }
    }
    let letter_map = LetterMap::kind_swap(n, &perm)?;
    let star = match choice.variant {
        Variant::PositiveFrequencyDestroys => "",
        Variant::NegativeFrequencyDestroys => "*",
    };
    let labels = (0..n)
        .map(|s| {
            let (m, c) = modes.split_slot(s);
            if modes.is_em() {
                format!("a_{c}{star}(k{m})")
            } else {
                format!("a{star}(k{m})")
            }
        })
        .collect();
    Ok(Quantization {
        table,
        letter_map,
        labels,
        variant: choice.variant,
    })
}

/// Fock vector: a combination of pure-creation words applied to `|0⟩`.
#[derive(Clone, Debug, PartialEq)]
pub struct Ket {
    phrase: Phrase,
}

/// Conjugate of a ket: pure-annihilation words to the left of `⟨0|`.
#[derive(Clone, Debug, PartialEq)]
pub struct Bra {
    phrase: Phrase,
}

/// Sorts the letters of every word; valid only when all letters share a kind.
fn sort_words(p: &Phrase) -> Phrase {
    let mut out = Phrase::zero(p.slots());
    for (w, c) in p.terms() {
        let mut letters = w.letters().to_vec();
        letters.sort();
        out.add_term(Word::new(letters), c.clone());
    }
    out
}

impl Ket {
    pub fn vacuum(slots: usize) -> Ket {
        Ket {
            phrase: Phrase::one(slots),
        }
    }

    pub fn zero(slots: usize) -> Ket {
        Ket {
            phrase: Phrase::zero(slots),
        }
    }

    /// `Π Create(s)|0⟩` for the given slots.
    pub fn created(slots: usize, created: &[usize]) -> Result<Ket> {
        let word = Word::new(created.iter().map(|&s| Letter::create(s)).collect());
        Ket::from_phrase(&Phrase::word(slots, word)?)
    }

    /// Accepts phrases made only of creation letters.
    pub fn from_phrase(p: &Phrase) -> Result<Ket> {
        if p.terms().keys().any(Word::has_annihilator) {
            return Err(Error::Config("a ket may contain creation letters only".into()));
        }
        Ok(Ket {
            phrase: sort_words(p),
        })
    }

    pub fn phrase(&self) -> &Phrase {
        &self.phrase
    }

    pub fn slots(&self) -> usize {
        self.phrase.slots()
    }

    pub fn is_zero(&self) -> bool {
        self.phrase.is_zero()
    }

    pub fn add(&self, other: &Ket) -> Result<Ket> {
        Ok(Ket {
            phrase: self.phrase.add(&other.phrase)?,
        })
    }

    pub fn scale(&self, lambda: &ComplexScalar) -> Ket {
        Ket {
            phrase: self.phrase.scale(lambda),
        }
    }

    pub fn bra(&self) -> Bra {
        Bra {
            phrase: self.phrase.conjugate(),
        }
    }

    /// `(y)_T` read as a bra: the time reversal of a creation phrase is a
    /// pure annihilation phrase.
    pub fn time_reversed_bra(&self, map: &LetterMap) -> Result<Bra> {
        let p = sort_words(&time_reverse(&self.phrase, map)?);
        if p.terms().keys().any(|w| w.letters().iter().any(|l| l.is_create())) {
            return Err(Error::Config("letter map does not exchange creators and destroyers".into()));
        }
        Ok(Bra { phrase: p })
    }
}

impl Bra {
    pub fn phrase(&self) -> &Phrase {
        &self.phrase
    }

    pub fn ket(&self) -> Ket {
        Ket {
            phrase: self.phrase.conjugate(),
        }
    }

    /// `(x*)_T` read as a ket.
    pub fn time_reversed_ket(&self, map: &LetterMap) -> Result<Ket> {
        Ket::from_phrase(&time_reverse(&self.phrase, map)?)
    }
}

/// Normal-orders `op` and keeps the words free of annihilators.
pub fn apply_to_vacuum(op: &Phrase, table: &CommutatorTable) -> Result<Ket> {
    let normal = Normalizer::new(table).normal_order(op)?;
    let mut out = Phrase::zero(op.slots());
    for (w, c) in normal.terms() {
        if !w.has_annihilator() {
            out.add_term(w.clone(), c.clone());
        }
    }
    Ok(Ket { phrase: out })
}

/// `⟨x|y⟩` with a caller-supplied engine so caches are shared.
pub fn inner_with(norm: &mut Normalizer<'_>, x: &Bra, y: &Ket) -> Result<ComplexScalar> {
    let slots = norm.table().slots();
    if x.phrase.slots() != slots || y.phrase.slots() != slots {
        return Err(Error::Config("bra, ket and table must share one slot space".into()));
    }
    let mut total = cx_zero();
    for (u, cu) in x.phrase.terms() {
        for (v, cv) in y.phrase.terms() {
            if u.len() != v.len() {
                continue;
            }
            let value = norm.vacuum_expectation(&u.concat(v));
            total += cu * cv * value;
        }
    }
    Ok(total)
}

pub fn inner(x: &Bra, y: &Ket, table: &CommutatorTable) -> Result<ComplexScalar> {
    inner_with(&mut Normalizer::new(table), x, y)
}

#[derive(Clone, Debug, PartialEq)]
pub struct GramMatrix {
    pub basis: Vec<Ket>,
    pub entries: ExactMatrix,
}

/// Exact Gram matrix `⟨b_i|b_j⟩` and its inertia.
pub fn gram_inertia(basis: &[Ket], table: &CommutatorTable) -> Result<(GramMatrix, Inertia)> {
    let mut norm = Normalizer::new(table);
    let n = basis.len();
    let mut entries = ExactMatrix::zeros(n, n);
    for i in 0..n {
        let bra = basis[i].bra();
        for j in i..n {
            let v = inner_with(&mut norm, &bra, &basis[j])?;
            entries[(j, i)] = v.conj();
            entries[(i, j)] = v;
        }
    }
    let inertia = hermitian_inertia(&entries);
    Ok((
        GramMatrix {
            basis: basis.to_vec(),
            entries,
        },
        inertia,
    ))
}

/// Parts of `k` by grade; zero parts are absent.
pub fn grade_decompose(k: &Ket) -> BTreeMap<i64, Ket> {
    k.phrase
        .by_grade()
        .into_iter()
        .map(|(g, phrase)| (g, Ket { phrase }))
        .collect()
}

/// Multisets of `n` slots out of `slots`, ascending, in lexicographic order.
pub fn multisets(slots: usize, n: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, slots: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for s in start..slots {
            cur.push(s);
            go(s, slots, left - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if slots == 0 && n > 0 {
        return out;
    }
    go(0, slots, n, &mut Vec::new(), &mut out);
    out
}

/// Canonical basis of the grade-`n` level: one created word per multiset.
pub fn level_basis(slots: usize, n: usize) -> Vec<Ket> {
    multisets(slots, n)
        .iter()
        .map(|m| Ket::created(slots, m).expect("slots in range"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{cx_int, cx_one, factorial, rat};

    fn oscillator(variant: Variant) -> Quantization {
        build_quantization(&QuantizationChoice {
            system: System::Oscillator,
            variant,
            modes: ModeSet::oscillator(rat(1)).unwrap(),
        })
        .unwrap()
    }

    fn em(variant: Variant) -> Quantization {
        build_quantization(&QuantizationChoice {
            system: System::Em4,
            variant,
            modes: ModeSet::em_oscillator([rat(1), rat(0), rat(0), rat(1)]).unwrap(),
        })
        .unwrap()
    }

    #[test]
    fn oscillator_tables() {
        let q1 = oscillator(Variant::PositiveFrequencyDestroys);
        assert_eq!(q1.table.get(0, 0), &cx_one());
        let q2 = oscillator(Variant::NegativeFrequencyDestroys);
        assert_eq!(q2.table.get(0, 0), &cx_int(-1, 0));
        let one = Ket::created(1, &[0]).unwrap();
        assert_eq!(inner(&one.bra(), &one, &q2.table).unwrap(), cx_int(-1, 0));
    }

    #[test]
    fn em_table_is_minus_metric() {
        let q = em(Variant::PositiveFrequencyDestroys);
        let expected = [-1, 1, 1, 1];
        for i in 0..4 {
            for j in 0..4 {
                let v = if i == j { expected[i] } else { 0 };
                assert_eq!(q.table.get(i, j), &cx_int(v, 0));
            }
        }
    }

    #[test]
    fn wrong_system_or_empty_modes() {
        let empty = crate::classical::ModeSet::new(crate::classical::FieldKind::Em, vec![]).unwrap();
        let r = build_quantization(&QuantizationChoice {
            system: System::Em4,
            variant: Variant::PositiveFrequencyDestroys,
            modes: empty,
        });
        assert!(matches!(r, Err(Error::Precondition(_))));
        let r = build_quantization(&QuantizationChoice {
            system: System::Em4,
            variant: Variant::PositiveFrequencyDestroys,
            modes: ModeSet::oscillator(rat(1)).unwrap(),
        });
        assert!(matches!(r, Err(Error::Config(_))));
    }

    #[test]
    fn non_hermitian_bracket_is_rejected() {
        // {a_0, a_1*} = 1 but {a_1, a_0*} = 0 is not anti-Hermitian.
        let mut b = ExactMatrix::zeros(2, 2);
        b[(0, 0)] = cx_int(0, -1);
        b[(1, 1)] = cx_int(0, -1);
        b[(0, 1)] = cx_int(1, 0);
        assert!(matches!(
            table_from_bracket(&b, Variant::PositiveFrequencyDestroys),
            Err(Error::Data(_))
        ));
    }

    #[test]
    fn vacuum_application() {
        let q = oscillator(Variant::PositiveFrequencyDestroys);
        let a = Phrase::letter(1, Letter::annihilate(0)).unwrap();
        assert!(apply_to_vacuum(&a, &q.table).unwrap().is_zero());
        let c = Phrase::letter(1, Letter::create(0)).unwrap();
        assert_eq!(apply_to_vacuum(&c, &q.table).unwrap(), Ket::created(1, &[0]).unwrap());
        let ac = a.mul(&c).unwrap();
        assert_eq!(apply_to_vacuum(&ac, &q.table).unwrap(), Ket::vacuum(1));
    }

    #[test]
    fn inner_examples() {
        let q = oscillator(Variant::PositiveFrequencyDestroys);
        let vac = Ket::vacuum(1);
        assert_eq!(inner(&vac.bra(), &vac, &q.table).unwrap(), cx_one());
        let three = Ket::created(1, &[0, 0, 0]).unwrap();
        assert_eq!(inner(&three.bra(), &three, &q.table).unwrap(), cx_int(6, 0));
        let e = em(Variant::PositiveFrequencyDestroys);
        let a0 = Ket::created(4, &[0]).unwrap();
        assert_eq!(inner(&a0.bra(), &a0, &e.table).unwrap(), cx_int(-1, 0));
    }

    #[test]
    fn oscillator_grams() {
        let q1 = oscillator(Variant::PositiveFrequencyDestroys);
        let q2 = oscillator(Variant::NegativeFrequencyDestroys);
        let basis: Vec<Ket> = (0..6).map(|n| level_basis(1, n).remove(0)).collect();
        let (g1, i1) = gram_inertia(&basis, &q1.table).unwrap();
        let (g2, i2) = gram_inertia(&basis, &q2.table).unwrap();
        for n in 0..6 {
            let f = factorial(n);
            assert_eq!(g1.entries[(n, n)], crate::scalar::cx_real(f.clone()));
            let signed = if n % 2 == 0 { f } else { -f };
            assert_eq!(g2.entries[(n, n)], crate::scalar::cx_real(signed));
        }
        assert_eq!(i1, Inertia::new(6, 0, 0));
        assert_eq!(i2, Inertia::new(3, 3, 0));
        let (g, i) = gram_inertia(&level_basis(1, 3), &q2.table).unwrap();
        assert_eq!(g.entries[(0, 0)], cx_int(-6, 0));
        assert_eq!(i, Inertia::new(0, 1, 0));
    }

    #[test]
    fn em_level_one_gram() {
        for variant in [Variant::PositiveFrequencyDestroys, Variant::NegativeFrequencyDestroys] {
            let q = em(variant);
            let (g, i) = gram_inertia(&level_basis(4, 1), &q.table).unwrap();
            assert!(i.negative >= 1);
            if variant == Variant::PositiveFrequencyDestroys {
                assert_eq!(i, Inertia::new(3, 1, 0));
                assert_eq!(g.entries[(0, 0)], cx_int(-1, 0));
                assert_eq!(g.entries[(3, 3)], cx_int(1, 0));
            }
        }
    }

    #[test]
    fn grade_decomposition() {
        let q = oscillator(Variant::PositiveFrequencyDestroys);
        let k = Ket::vacuum(1).add(&Ket::created(1, &[0]).unwrap()).unwrap();
        let parts = grade_decompose(&k);
        assert_eq!(parts.len(), 2);
        assert_eq!(parts[&0], Ket::vacuum(1));
        assert_eq!(parts[&1], Ket::created(1, &[0]).unwrap());
        assert_eq!(inner(&parts[&0].bra(), &parts[&1], &q.table).unwrap(), cx_zero());
        let number = Phrase::word(1, Word::new(vec![Letter::create(0), Letter::annihilate(0)])).unwrap();
        assert!(grade_decompose(&apply_to_vacuum(&number, &q.table).unwrap()).is_empty());
    }

    #[test]
    fn multiset_counts() {
        assert_eq!(multisets(4, 2).len(), 10);
        assert_eq!(multisets(4, 0), vec![Vec::<usize>::new()]);
        assert_eq!(multisets(1, 3), vec![vec![0, 0, 0]]);
    }

    #[test]
    fn time_reversal_of_scalar_product() {
        let q = build_quantization(&QuantizationChoice {
            system: System::Scalar,
            variant: Variant::PositiveFrequencyDestroys,
            modes: ModeSet::cubic_stencil(crate::classical::FieldKind::Scalar { mass: rat(0) }).unwrap(),
        })
        .unwrap();
        let x = Ket::created(6, &[0, 2]).unwrap().add(&Ket::created(6, &[1, 3]).unwrap()).unwrap();
        let y = Ket::created(6, &[1, 3]).unwrap().scale(&cx_int(2, 1));
        let lhs = inner(&x.bra(), &y, &q.table).unwrap();
        let rhs = inner(
            &y.time_reversed_bra(&q.letter_map).unwrap(),
            &x.bra().time_reversed_ket(&q.letter_map).unwrap(),
            &q.table,
        )
        .unwrap();
        assert_eq!(lhs, rhs);
        assert_eq!(lhs, cx_int(2, 1));
    }
}

//! Physical photon states of one field oscillator.
//!
//! An `n`-photon state with momentum `k` is `T_{μ…ρ} a_μ* … a_ρ* |0⟩`
//! (Minkowski contraction) for a symmetric tensor `T`. The constraint
//! `k_μ a_μ |ψ⟩ = 0` selects tensors with `k·T = 0`; on those the scalar
//! product is positive semidefinite with null directions `k ⊙ S`.

use std::collections::BTreeMap;

use num_traits::{Signed, Zero};

use crate::ccr::{Letter, Normalizer, Phrase, Word};
use crate::classical::ModeSet;
use crate::error::{Error, Result};
use crate::fock::{build_quantization, gram_inertia, multisets, GramMatrix, Ket, QuantizationChoice, System, Variant};
use crate::linalg::{ExactMatrix, Inertia};
use crate::metric;
use crate::ccr::CommutatorTable;
use crate::scalar::{cx_real, cx_zero, factorial, is_zero, norm_sqr, rat, ComplexScalar, Rational};

/// Non-zero, future-pointing light-like momentum with exact components.
#[derive(Clone, Debug, PartialEq)]
pub struct LightlikeMomentum {
    k: [Rational; 4],
}

impl LightlikeMomentum {
    pub fn new(k: [Rational; 4]) -> Result<Self> {
        if k.iter().all(Zero::is_zero) {
            return Err(Error::Domain("k must be non-zero".into()));
        }
        if !metric::dot(&k, &k).is_zero() {
            return Err(Error::Domain("k is not light-like".into()));
        }
        if !k[0].is_positive() {
            return Err(Error::Domain("k_0 must be positive".into()));
        }
        Ok(LightlikeMomentum { k })
    }

    pub fn components(&self) -> &[Rational; 4] {
        &self.k
    }

    pub fn as_tensor(&self) -> SymmetricTensor {
        SymmetricTensor::vector(self.k.iter().cloned().map(cx_real).collect::<Vec<_>>().try_into().expect("four"))
    }
}

/// Fully symmetric rank-`n` tensor over four indices, stored by sorted index
/// multiset. Absent entries are zero.
#[derive(Clone, Debug, PartialEq)]
pub struct SymmetricTensor {
    rank: usize,
    entries: BTreeMap<Vec<usize>, ComplexScalar>,
}

/// Number of index tuples that sort to `m`: `n! / Π count!`.
pub fn multiplicity(m: &[usize]) -> Rational {
    let mut counts = [0usize; 4];
    for &i in m {
        counts[i] += 1;
    }
    counts
        .iter()
        .fold(factorial(m.len()), |acc, &c| acc / factorial(c))
}

/// `Π g_{μμ}` over the indices of `m`.
fn metric_sign(m: &[usize]) -> i64 {
    m.iter().map(|&mu| metric::sign(mu)).product()
}

impl SymmetricTensor {
    pub fn zero(rank: usize) -> Self {
        SymmetricTensor {
            rank,
            entries: BTreeMap::new(),
        }
    }

    pub fn scalar(c: ComplexScalar) -> Self {
        let mut t = Self::zero(0);
        t.set(&[], c);
        t
    }

    pub fn vector(v: [ComplexScalar; 4]) -> Self {
        let mut t = Self::zero(1);
        for (mu, c) in v.into_iter().enumerate() {
            t.set(&[mu], c);
        }
        t
    }

    /// Coordinates in the multiset basis of [`multisets`]`(4, rank)`.
    pub fn from_coordinates(rank: usize, coords: &[ComplexScalar]) -> Result<Self> {
        let basis = multisets(4, rank);
        if coords.len() != basis.len() {
            return Err(Error::Config(format!(
                "rank {rank} needs {} coordinates, got {}",
                basis.len(),
                coords.len()
            )));
        }
        let mut t = Self::zero(rank);
        for (m, c) in basis.iter().zip(coords) {
            t.set(m, c.clone());
        }
        Ok(t)
    }

    pub fn coordinates(&self) -> Vec<ComplexScalar> {
        multisets(4, self.rank).iter().map(|m| self.get(m)).collect()
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn get(&self, indices: &[usize]) -> ComplexScalar {
        let mut m = indices.to_vec();
        m.sort_unstable();
        self.entries.get(&m).cloned().unwrap_or_else(cx_zero)
    }

    pub fn set(&mut self, indices: &[usize], c: ComplexScalar) {
        assert_eq!(indices.len(), self.rank, "index count must equal the rank");
        let mut m = indices.to_vec();
        m.sort_unstable();
        if is_zero(&c) {
            self.entries.remove(&m);
        } else {
            self.entries.insert(m, c);
        }
    }

    pub fn entries(&self) -> &BTreeMap<Vec<usize>, ComplexScalar> {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    /// `(k·T)_{ν…ρ} = g_{μμ} k_μ T_{μν…ρ}`.
    pub fn contract(&self, k: &[Rational; 4]) -> SymmetricTensor {
        let mut out = SymmetricTensor::zero(self.rank.saturating_sub(1));
        if self.rank == 0 {
            return out;
        }
        for r in multisets(4, self.rank - 1) {
            let mut acc = cx_zero();
            for mu in 0..4 {
                if k[mu].is_zero() {
                    continue;
                }
                let mut idx = r.clone();
                idx.push(mu);
                acc += self.get(&idx) * cx_real(metric::signed(mu, k[mu].clone()));
            }
            out.set(&r, acc);
        }
        out
    }

    /// Symmetrized tensor product `a ⊙ b`, averaged over index positions.
    pub fn sym_product(&self, other: &SymmetricTensor) -> SymmetricTensor {
        let (p, q) = (self.rank, other.rank);
        let n = p + q;
        let mut out = SymmetricTensor::zero(n);
        let splits = position_subsets(n, p);
        let norm = cx_real(Rational::from_integer(splits.len().into()));
        for m in multisets(4, n) {
            let mut acc = cx_zero();
            for s in &splits {
                let left: Vec<usize> = s.iter().map(|&i| m[i]).collect();
                let right: Vec<usize> = (0..n).filter(|i| !s.contains(i)).map(|i| m[i]).collect();
                acc += self.get(&left) * other.get(&right);
            }
            out.set(&m, acc / &norm);
        }
        out
    }

    /// Full Minkowski contraction `T*·U` over all indices.
    pub fn minkowski_dot(&self, other: &SymmetricTensor) -> ComplexScalar {
        assert_eq!(self.rank, other.rank, "ranks must agree");
        let mut acc = cx_zero();
        for (m, t) in &self.entries {
            let u = other.get(m);
            if is_zero(&u) {
                continue;
            }
            let w = multiplicity(m) * rat(metric_sign(m));
            acc += t.conj() * u * cx_real(w);
        }
        acc
    }

    /// `T_{μ…ρ} a_μ* … a_ρ* |0⟩` with Minkowski contraction over every index.
    pub fn ket(&self) -> Ket {
        let mut p = Phrase::zero(4);
        for (m, t) in &self.entries {
            let w = Word::new(m.iter().map(|&mu| Letter::create(mu)).collect());
            let c = t * cx_real(multiplicity(m) * rat(metric_sign(m)));
            p = p.add(&Phrase::term(4, w, c).expect("slots in range")).expect("same space");
        }
        Ket::from_phrase(&p).expect("creation letters only")
    }
}

fn position_subsets(n: usize, p: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, left - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, p, &mut Vec::new(), &mut out);
    out
}

/// Table of the positive-frequency quantization of the field oscillator `k`.
pub fn oscillator_table(k: &LightlikeMomentum) -> CommutatorTable {
    let modes = ModeSet::em_oscillator(k.components().clone()).expect("validated momentum");
    build_quantization(&QuantizationChoice {
        system: System::Em4,
        variant: Variant::PositiveFrequencyDestroys,
        modes,
    })
    .expect("the electromagnetic oscillator always quantizes")
    .table
}

/// `k_μ a_μ |state⟩` (Minkowski contraction), lowering the grade by one.
pub fn constraint_apply(state: &Ket, k: &LightlikeMomentum, table: &CommutatorTable) -> Result<Ket> {
    if state.slots() != 4 || table.slots() != 4 {
        return Err(Error::Config("the constraint acts on a single four-component oscillator".into()));
    }
    let mut op = Phrase::zero(4);
    for mu in 0..4 {
        let c = metric::signed(mu, k.components()[mu].clone());
        if !c.is_zero() {
            op = op.add(&Phrase::term(4, Word::new(vec![Letter::annihilate(mu)]), cx_real(c))?)?;
        }
    }
    let applied = op.mul(state.phrase())?;
    let normal = Normalizer::new(table).normal_order(&applied)?;
    let mut out = Phrase::zero(4);
    for (w, c) in normal.terms() {
        if !w.has_annihilator() {
            out = out.add(&Phrase::term(4, w.clone(), c.clone())?)?;
        }
    }
    Ket::from_phrase(&out)
}

/// Matrix of `T ↦ k·T` from rank `n` to rank `n − 1` in multiset
/// coordinates.
fn contraction_matrix(n: usize, k: &[Rational; 4]) -> ExactMatrix {
    let cols = multisets(4, n);
    let rows = multisets(4, n - 1);
    let mut m = ExactMatrix::zeros(rows.len(), cols.len());
    for (r, row) in rows.iter().enumerate() {
        for mu in 0..4 {
            if k[mu].is_zero() {
                continue;
            }
            let mut idx = row.clone();
            idx.push(mu);
            idx.sort_unstable();
            let c = cols.binary_search(&idx).expect("multisets are sorted");
            m[(r, c)] = &m[(r, c)] + cx_real(metric::signed(mu, k[mu].clone()));
        }
    }
    m
}

/// Basis of symmetric rank-`n` tensors with `k·T = 0`; `C(n+2, 2)` elements.
pub fn constrained_basis(n: usize, k: &LightlikeMomentum) -> Vec<SymmetricTensor> {
    if n == 0 {
        return vec![SymmetricTensor::scalar(cx_real(rat(1)))];
    }
    contraction_matrix(n, k.components())
        .kernel()
        .iter()
        .map(|v| SymmetricTensor::from_coordinates(n, v).expect("kernel vector length"))
        .collect()
}

/// `⟨n|n⟩ = (−1)^n n! T*·T`.
pub fn norm_formula(t: &SymmetricTensor) -> Rational {
    let n = t.rank();
    let sign = if n.is_multiple_of(2) { rat(1) } else { rat(-1) };
    let dot: Rational = t
        .entries()
        .iter()
        .fold(Rational::zero(), |acc, (m, c)| {
            acc + multiplicity(m) * rat(metric_sign(m)) * norm_sqr(c)
        });
    sign * factorial(n) * dot
}

/// `{k ⊙ S : S ∈ constrained_basis(n − 1)}`; empty for `n = 0`.
pub fn gauge_basis(n: usize, k: &LightlikeMomentum) -> Vec<SymmetricTensor> {
    if n == 0 {
        return Vec::new();
    }
    let kt = k.as_tensor();
    constrained_basis(n - 1, k)
        .iter()
        .map(|s| kt.sym_product(s))
        .collect()
}

#[derive(Clone, Debug)]
pub struct PositivityReport {
    pub n_pos: usize,
    pub n_zero: usize,
    pub n_neg: usize,
    pub inertia: Inertia,
    pub gram: GramMatrix,
}

/// Inertia of the scalar product restricted to the constrained level `n`,
/// computed with the rewriting engine.
pub fn positivity_report(n: usize, k: &LightlikeMomentum) -> Result<PositivityReport> {
    let table = oscillator_table(k);
    let basis: Vec<Ket> = constrained_basis(n, k).iter().map(SymmetricTensor::ket).collect();
    let (gram, inertia) = gram_inertia(&basis, &table)?;
    Ok(PositivityReport {
        n_pos: inertia.positive,
        n_zero: inertia.zero,
        n_neg: inertia.negative,
        inertia,
        gram,
    })
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

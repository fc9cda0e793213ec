//! Mode-truncated classical field theory.
//!
//! A [`ModeSet`] replaces the invariant measure on the positive mass shell by
//! finitely many momenta with positive quadrature weights. A [`FieldState`]
//! stores the positive-frequency amplitudes `a(k)` (one component for the
//! scalar field, four for the electromagnetic potential); negative-frequency
//! amplitudes are their complex conjugates.
//!
//! Conventions: `{a(k), a*(k)} = -i` per unit-normalized scalar mode and
//! `{a_μ(k), a_ν*(k)} = +i g_μν` for the potential. With weight `w` the raw
//! amplitude bracket is divided by `w`, which keeps it consistent with the
//! symplectic form `Σ w · i (a*ᶜ aᵈ - a*ᵈ aᶜ)`.

use nalgebra::{Matrix4, Vector4};
use num_complex::Complex;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::ExactMatrix;
use crate::metric;
use crate::scalar::{
    cx_i, cx_int, cx_real, cx_zero, exact_sqrt, format_rational, is_zero, norm_sqr,
    parse_rational, rat, ratio, rational_to_f64, ComplexScalar, Rational,
};

pub mod io;

#[derive(Clone, Debug, PartialEq)]
pub enum FieldKind {
    Scalar { mass: Rational },
    Em,
}

impl FieldKind {
    /// Number of amplitude components per mode.
    pub fn components(&self) -> usize {
        match self {
            FieldKind::Scalar { .. } => 1,
            FieldKind::Em => 4,
        }
    }

    pub fn mass(&self) -> Rational {
        match self {
            FieldKind::Scalar { mass } => mass.clone(),
            FieldKind::Em => Rational::zero(),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Mode {
    pub k: [Rational; 4],
    pub weight: Rational,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ModeSet {
    kind: FieldKind,
    modes: Vec<Mode>,
}

impl ModeSet {
    pub fn new(kind: FieldKind, modes: Vec<Mode>) -> Result<ModeSet> {
        let mass = kind.mass();
        if mass.is_negative() {
            return Err(Error::Domain("mass must be non-negative".into()));
        }
        let m2 = &mass * &mass;
        for (i, m) in modes.iter().enumerate() {
            if !m.k[0].is_positive() {
                return Err(Error::Domain(format!("mode {i}: k_0 must be positive")));
            }
            if metric::dot(&m.k, &m.k) != m2 {
                return Err(Error::Domain(format!("mode {i}: k is not on the mass shell")));
            }
            if !m.weight.is_positive() {
                return Err(Error::Domain(format!("mode {i}: weight must be positive")));
            }
        }
        Ok(ModeSet { kind, modes })
    }

    /// The harmonic oscillator of frequency `m`: one mode at rest.
    pub fn oscillator(mass: Rational) -> Result<ModeSet> {
        if !mass.is_positive() {
            return Err(Error::Domain("oscillator frequency must be positive".into()));
        }
        let k = [mass.clone(), rat(0), rat(0), rat(0)];
        Self::new(
            FieldKind::Scalar { mass },
            vec![Mode {
                k,
                weight: Rational::one(),
            }],
        )
    }

    /// Electromagnetic field oscillator: a single light-like momentum.
    pub fn em_oscillator(k: [Rational; 4]) -> Result<ModeSet> {
        Self::new(
            FieldKind::Em,
            vec![Mode {
                k,
                weight: Rational::one(),
            }],
        )
    }

    /// Six light-like momenta `(1, ±e_i)` with unit weights.
    pub fn cubic_stencil(kind: FieldKind) -> Result<ModeSet> {
        let mut modes = Vec::new();
        for axis in 1..4 {
            for s in [1, -1] {
                let mut k = [rat(1), rat(0), rat(0), rat(0)];
                k[axis] = rat(s);
                modes.push(Mode {
                    k,
                    weight: Rational::one(),
                });
            }
        }
        Self::new(kind, modes)
    }

    pub fn kind(&self) -> &FieldKind {
        &self.kind
    }

    pub fn modes(&self) -> &[Mode] {
        &self.modes
    }

    pub fn len(&self) -> usize {
        self.modes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.modes.is_empty()
    }

    pub fn components(&self) -> usize {
        self.kind.components()
    }

    pub fn is_em(&self) -> bool {
        matches!(self.kind, FieldKind::Em)
    }

    /// Total number of amplitude slots (`modes × components`).
    pub fn slots(&self) -> usize {
        self.modes.len() * self.components()
    }

    pub fn slot(&self, mode: usize, component: usize) -> usize {
        mode * self.components() + component
    }

    pub fn split_slot(&self, slot: usize) -> (usize, usize) {
        (slot / self.components(), slot % self.components())
    }

    /// Per-mode bracket tensor `B(±k)`; for these fields it is constant.
    pub fn bracket_tensor(&self) -> BracketTensor {
        let n = self.components();
        let mut plus = ExactMatrix::zeros(n, n);
        match self.kind {
            FieldKind::Scalar { .. } => plus[(0, 0)] = cx_int(-1, 0),
            FieldKind::Em => {
                for mu in 0..4 {
                    plus[(mu, mu)] = cx_int(metric::sign(mu), 0);
                }
            }
        }
        let minus = plus.transpose();
        BracketTensor { plus, minus }
    }

    /// `{a_i, a_j*}` for unit-normalized amplitudes: `i·B_ij` within a mode,
    /// zero across modes.
    pub fn unit_bracket(&self, i: usize, j: usize) -> ComplexScalar {
        let (mi, ci) = self.split_slot(i);
        let (mj, cj) = self.split_slot(j);
        if mi != mj {
            return cx_zero();
        }
        cx_i() * self.bracket_tensor().plus[(ci, cj)].clone()
    }

    fn check_state(&self, s: &FieldState) -> Result<()> {
        if s.amplitudes.len() != self.modes.len()
            || s.amplitudes.iter().any(|a| a.len() != self.components())
        {
            return Err(Error::Config(format!(
                "state shape does not match mode set ({} modes x {} components)",
                self.modes.len(),
                self.components()
            )));
        }
        Ok(())
    }
}

/// `B_ij(+k)` and `B_ij(-k)` of one mode.
#[derive(Clone, Debug, PartialEq)]
pub struct BracketTensor {
    pub plus: ExactMatrix,
    pub minus: ExactMatrix,
}

impl BracketTensor {
    /// `B_ij(k) = B_ji(-k)` and `B*_ij(k) = B_ji(k)`.
    pub fn satisfies_reality(&self) -> bool {
        self.plus == self.minus.transpose() && self.plus.adjoint() == self.plus
    }
}

/// Positive-frequency amplitudes per mode.
#[derive(Clone, Debug, PartialEq)]
pub struct FieldState {
    pub amplitudes: Vec<Vec<ComplexScalar>>,
}

impl FieldState {
    pub fn zero(modes: &ModeSet) -> FieldState {
        FieldState {
            amplitudes: vec![vec![cx_zero(); modes.components()]; modes.len()],
        }
    }

    pub fn add(&self, other: &FieldState) -> FieldState {
        FieldState {
            amplitudes: self
                .amplitudes
                .iter()
                .zip(&other.amplitudes)
                .map(|(x, y)| x.iter().zip(y).map(|(a, b)| a + b).collect())
                .collect(),
        }
    }

    pub fn scale(&self, lambda: &ComplexScalar) -> FieldState {
        FieldState {
            amplitudes: self
                .amplitudes
                .iter()
                .map(|x| x.iter().map(|a| a * lambda).collect())
                .collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.amplitudes.iter().flatten().all(is_zero)
    }
}

/// Fourier components `J̃_μ(k)` of a current on the mode set.
#[derive(Clone, Debug, PartialEq)]
pub struct CurrentModes {
    pub currents: Vec<[ComplexScalar; 4]>,
}

/// `ω(c, d)`, exact and real.
pub fn symplectic_eval(modes: &ModeSet, c: &FieldState, d: &FieldState) -> Result<Rational> {
    modes.check_state(c)?;
    modes.check_state(d)?;
    let mut total = cx_zero();
    for (idx, mode) in modes.modes().iter().enumerate() {
        let (ac, ad) = (&c.amplitudes[idx], &d.amplitudes[idx]);
        let mut per_mode = cx_zero();
        for comp in 0..modes.components() {
            let term = ac[comp].conj() * &ad[comp] - ad[comp].conj() * &ac[comp];
            per_mode = match modes.kind() {
                FieldKind::Scalar { .. } => per_mode + term,
                // -g_{νν}: temporal component enters with a minus sign.
                FieldKind::Em => {
                    if metric::sign(comp) > 0 {
                        per_mode - term
                    } else {
                        per_mode + term
                    }
                }
            };
        }
        total += cx_i() * per_mode * cx_real(mode.weight.clone());
    }
    debug_assert!(total.im.is_zero());
    Ok(total.re)
}

/// Linear function of the amplitudes: `Σ plus[s]·a_s + minus[s]·a_s*` plus a
/// constant.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearObservable {
    pub constant: ComplexScalar,
    pub plus: Vec<ComplexScalar>,
    pub minus: Vec<ComplexScalar>,
}

/// One monomial of an observable: a coefficient times a product of amplitude
/// factors.
#[derive(Clone, Debug, PartialEq)]
pub struct Monomial {
    pub coeff: ComplexScalar,
    /// `(slot, conjugated)` per factor.
    pub factors: Vec<(usize, bool)>,
}

impl LinearObservable {
    pub fn zero(slots: usize) -> Self {
        LinearObservable {
            constant: cx_zero(),
            plus: vec![cx_zero(); slots],
            minus: vec![cx_zero(); slots],
        }
    }

    /// `a_slot`.
    pub fn amplitude(slots: usize, slot: usize) -> Self {
        let mut o = Self::zero(slots);
        o.plus[slot] = cx_real(Rational::one());
        o
    }

    /// `a_slot*`.
    pub fn conj_amplitude(slots: usize, slot: usize) -> Self {
        let mut o = Self::zero(slots);
        o.minus[slot] = cx_real(Rational::one());
        o
    }

    /// Collects monomials of degree ≤ 1; anything of higher degree is not a
    /// linear observable.
    pub fn from_monomials(slots: usize, terms: &[Monomial]) -> Result<Self> {
        let mut o = Self::zero(slots);
        for t in terms {
            match t.factors.as_slice() {
                [] => o.constant = &o.constant + &t.coeff,
                [(slot, conj)] => {
                    if *slot >= slots {
                        return Err(Error::Config(format!("slot {slot} out of range")));
                    }
                    let target = if *conj { &mut o.minus } else { &mut o.plus };
                    target[*slot] = &target[*slot] + &t.coeff;
                }
                _ => {
                    return Err(Error::Unsupported(
                        "Poisson brackets are defined here for linear observables only".into(),
                    ))
                }
            }
        }
        Ok(o)
    }

    pub fn add(&self, other: &Self) -> Self {
        LinearObservable {
            constant: &self.constant + &other.constant,
            plus: self.plus.iter().zip(&other.plus).map(|(a, b)| a + b).collect(),
            minus: self.minus.iter().zip(&other.minus).map(|(a, b)| a + b).collect(),
        }
    }

    /// Value on a state.
    pub fn eval(&self, modes: &ModeSet, c: &FieldState) -> Result<ComplexScalar> {
        modes.check_state(c)?;
        let mut v = self.constant.clone();
        for s in 0..modes.slots() {
            let (m, comp) = modes.split_slot(s);
            let a = &c.amplitudes[m][comp];
            v = v + &self.plus[s] * a + &self.minus[s] * a.conj();
        }
        Ok(v)
    }
}

/// `{f, g}` of linear observables.
pub fn poisson_bracket(
    modes: &ModeSet,
    f: &LinearObservable,
    g: &LinearObservable,
) -> Result<ComplexScalar> {
    let n = modes.slots();
    for o in [f, g] {
        if o.plus.len() != n || o.minus.len() != n {
            return Err(Error::Config("observable does not match mode set".into()));
        }
    }
    let comps = modes.components();
    let tensor = modes.bracket_tensor();
    let mut total = cx_zero();
    for (m, mode) in modes.modes().iter().enumerate() {
        let inv_w = cx_real(Rational::one() / &mode.weight);
        for i in 0..comps {
            for j in 0..comps {
                let b = &tensor.plus[(i, j)];
                if is_zero(b) {
                    continue;
                }
                let (si, sj) = (modes.slot(m, i), modes.slot(m, j));
                // {a_i, a_j*} = iB_ij/w, {a_j*, a_i} = -iB_ij/w
                let pair = &f.plus[si] * &g.minus[sj] - &f.minus[sj] * &g.plus[si];
                total += pair * cx_i() * b * &inv_w;
            }
        }
    }
    Ok(total)
}

/// Positive- and negative-frequency parts; the constant goes to neither.
pub fn frequency_split(f: &LinearObservable) -> (LinearObservable, LinearObservable) {
    let n = f.plus.len();
    let zeros = vec![cx_zero(); n];
    (
        LinearObservable {
            constant: cx_zero(),
            plus: f.plus.clone(),
            minus: zeros.clone(),
        },
        LinearObservable {
            constant: cx_zero(),
            plus: zeros,
            minus: f.minus.clone(),
        },
    )
}

/// Velocity of the flow generated by the space-time shift `δε`:
/// `δa(k) = i (δε·k) a(k)`.
pub fn shift_flow(modes: &ModeSet, c: &FieldState, shift: &[Rational; 4]) -> Result<FieldState> {
    modes.check_state(c)?;
    Ok(FieldState {
        amplitudes: modes
            .modes()
            .iter()
            .zip(&c.amplitudes)
            .map(|(mode, a)| {
                let f = cx_i() * cx_real(metric::dot(shift, &mode.k));
                a.iter().map(|x| x * &f).collect()
            })
            .collect(),
    })
}

/// Forward time evolution velocity `δa = -i k_0 a`.
pub fn time_shift_flow(modes: &ModeSet, c: &FieldState) -> Result<FieldState> {
    shift_flow(modes, c, &[rat(-1), rat(0), rat(0), rat(0)])
}

/// Hamiltonian of a linear flow: `G = ½ ω(c, δc)`.
pub fn generator(modes: &ModeSet, c: &FieldState, flow: &FieldState) -> Result<Rational> {
    Ok(symplectic_eval(modes, c, flow)? * ratio(1, 2))
}

/// Scalar: `P_ν = Σ w k_ν |a|²`; potential: `P_ν = -Σ w k_ν a_ρ* a_ρ` with
/// the Minkowski contraction over `ρ`.
pub fn energy_momentum(modes: &ModeSet, c: &FieldState) -> Result<[Rational; 4]> {
    modes.check_state(c)?;
    let mut p: [Rational; 4] = Default::default();
    for (mode, a) in modes.modes().iter().zip(&c.amplitudes) {
        let density = match modes.kind() {
            FieldKind::Scalar { .. } => norm_sqr(&a[0]),
            FieldKind::Em => -(0..4).fold(Rational::zero(), |acc, rho| {
                acc + metric::signed(rho, norm_sqr(&a[rho]))
            }),
        };
        let scaled = density * &mode.weight;
        for nu in 0..4 {
            p[nu] = &p[nu] + &mode.k[nu] * &scaled;
        }
    }
    Ok(p)
}

/// Amplitudes of the field radiated by a switched current, `a_μ = i J̃_μ`, and
/// whether the current is conserved (`k·J̃ = 0` on every mode).
pub fn radiated_field(modes: &ModeSet, j: &CurrentModes) -> Result<(FieldState, bool)> {
    if !modes.is_em() {
        return Err(Error::Config("radiated fields need an electromagnetic mode set".into()));
    }
    if j.currents.len() != modes.len() {
        return Err(Error::Config("current does not match mode set".into()));
    }
    let mut conserved = true;
    let mut amplitudes = Vec::with_capacity(modes.len());
    for (mode, cur) in modes.modes().iter().zip(&j.currents) {
        if !is_zero(&metric::dot_cx(&mode.k, cur)) {
            conserved = false;
        }
        amplitudes.push(cur.iter().map(|x| cx_i() * x).collect());
    }
    Ok((FieldState { amplitudes }, conserved))
}

/// `n₋ = (k_0, -k⃗)/k_0²`: light-like with `k·n₋ = 2`.
pub fn light_cone_partner(k: &[Rational; 4]) -> [Rational; 4] {
    let k02 = &k[0] * &k[0];
    [
        &k[0] / &k02,
        -&k[1] / &k02,
        -&k[2] / &k02,
        -&k[3] / &k02,
    ]
}

/// Transverse representative of the gauge class of a Lorentz-condition
/// state: removes the component along `k` in the basis `{k, n₋, e1, e2}`.
pub fn gauge_project(modes: &ModeSet, c: &FieldState) -> Result<FieldState> {
    if !modes.is_em() {
        return Err(Error::Config("gauge projection needs an electromagnetic mode set".into()));
    }
    modes.check_state(c)?;
    let mut out = Vec::with_capacity(modes.len());
    for (i, (mode, a)) in modes.modes().iter().zip(&c.amplitudes).enumerate() {
        if !is_zero(&metric::dot_cx(&mode.k, a)) {
            return Err(Error::Precondition(format!(
                "mode {i} violates the Lorentz condition k·a = 0"
            )));
        }
        let partner = light_cone_partner(&mode.k);
        let along_k = metric::dot_cx(&partner, a) * cx_real(ratio(1, 2));
        out.push(
            (0..4)
                .map(|mu| &a[mu] - &along_k * &mode.k[mu])
                .collect(),
        );
    }
    Ok(FieldState { amplitudes: out })
}

/// Checks that a 4×4 complex matrix is Hermitian positive-definite within
/// `1e-12`.
fn check_positive_definite(m: &Matrix4<Complex<f64>>, name: &str) -> Result<()> {
    let herm_err = (m - m.adjoint()).iter().map(|z| z.norm()).fold(0.0, f64::max);
    if herm_err > 1e-12 {
        return Err(Error::Domain(format!("{name} is not Hermitian")));
    }
    let eig = m.symmetric_eigen();
    let min = eig.eigenvalues.iter().copied().fold(f64::INFINITY, f64::min);
    if min.is_nan() || min <= 1e-12 {
        return Err(Error::Domain(format!("{name} is not positive-definite")));
    }
    Ok(())
}

pub fn to_f64(z: &ComplexScalar) -> Complex<f64> {
    Complex::new(rational_to_f64(&z.re), rational_to_f64(&z.im))
}

/// `Σ w M_νρ a_ν*ᶜ a_ρᵈ` for a positive-definite Hermitian `M`.
pub fn hilbert_inner(
    modes: &ModeSet,
    c: &FieldState,
    d: &FieldState,
    m: &Matrix4<Complex<f64>>,
) -> Result<Complex<f64>> {
    if !modes.is_em() {
        return Err(Error::Config("Hilbert-type products need an electromagnetic mode set".into()));
    }
    modes.check_state(c)?;
    modes.check_state(d)?;
    check_positive_definite(m, "M")?;
    let mut total = Complex::new(0.0, 0.0);
    for (idx, mode) in modes.modes().iter().enumerate() {
        let ac = Vector4::from_iterator(c.amplitudes[idx].iter().map(to_f64));
        let ad = Vector4::from_iterator(d.amplitudes[idx].iter().map(to_f64));
        let v = ac.adjoint() * m * ad;
        total += v[(0, 0)] * rational_to_f64(&mode.weight);
    }
    Ok(total)
}

/// Extreme generalized eigenvalues of `(M1, M2)` and the resulting
/// equivalence constant.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Equivalence {
    pub epsilon: f64,
    pub lambda_min: f64,
    pub lambda_max: f64,
}

/// Largest `ε` with `ε(z,z)₂ ≤ (z,z)₁` and `ε(z,z)₁ ≤ (z,z)₂` for all `z`.
pub fn inner_equivalence(
    m1: &Matrix4<Complex<f64>>,
    m2: &Matrix4<Complex<f64>>,
) -> Result<Equivalence> {
    check_positive_definite(m1, "M1")?;
    check_positive_definite(m2, "M2")?;
    let chol = m2
        .cholesky()
        .ok_or_else(|| Error::Domain("M2 is not positive-definite".into()))?;
    let l_inv = chol
        .l()
        .try_inverse()
        .ok_or_else(|| Error::Domain("M2 is singular".into()))?;
    let a = l_inv * m1 * l_inv.adjoint();
    // Symmetrize away rounding before the Hermitian eigensolver.
    let a = (a + a.adjoint()) * Complex::new(0.5, 0.0);
    let eig = a.symmetric_eigen();
    let lambda_min = eig.eigenvalues.iter().copied().fold(f64::INFINITY, f64::min);
    let lambda_max = eig.eigenvalues.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    Ok(Equivalence {
        epsilon: lambda_min.min(1.0 / lambda_max),
        lambda_min,
        lambda_max,
    })
}

/// `L = ½ a φ̇² + b φ φ̇ - ½ c φ²`.
#[derive(Clone, Debug, PartialEq)]
pub struct QuadraticLagrangian1D {
    a: Rational,
    b: Rational,
    c: Rational,
}

impl QuadraticLagrangian1D {
    pub fn new(a: Rational, b: Rational, c: Rational) -> Result<Self> {
        if a.is_zero() {
            return Err(Error::Domain("the kinetic coefficient a must be nonzero".into()));
        }
        Ok(QuadraticLagrangian1D { a, b, c })
    }

    pub fn a(&self) -> &Rational {
        &self.a
    }

    pub fn b(&self) -> &Rational {
        &self.b
    }

    pub fn c(&self) -> &Rational {
        &self.c
    }

    /// Adds the total derivative `d/dt(½ λ φ²)`, i.e. `b → b + λ`.
    pub fn with_divergence(&self, lambda: &Rational) -> Self {
        QuadraticLagrangian1D {
            a: self.a.clone(),
            b: &self.b + lambda,
            c: self.c.clone(),
        }
    }

    pub fn canonical_momentum(&self, phi: &Rational, phi_dot: &Rational) -> Rational {
        &self.a * phi_dot + &self.b * phi
    }
}

/// `(φ, φ̇)` at a fixed time.
pub type PhasePoint = (Rational, Rational);

/// `ω(c, d) = δp ∧ δφ` evaluated on two phase points.
pub fn lagrangian_1d_symplectic(l: &QuadraticLagrangian1D, c: &PhasePoint, d: &PhasePoint) -> Rational {
    let pc = l.canonical_momentum(&c.0, &c.1);
    let pd = l.canonical_momentum(&d.0, &d.1);
    pc * &d.0 - pd * &c.0
}

/// Energies of a static charge distribution: `(E_full, E_charges, E_field)`
/// with `E_full = ½Σqφ`, `E_charges = Σqφ`, `E_field = -½Σqφ`.
pub fn electrostatic_split(
    charges: &[Rational],
    potentials: &[Rational],
) -> Result<(Rational, Rational, Rational)> {
    if charges.len() != potentials.len() {
        return Err(Error::Config(format!(
            "{} charges but {} potentials",
            charges.len(),
            potentials.len()
        )));
    }
    let work: Rational = charges
        .iter()
        .zip(potentials)
        .fold(Rational::zero(), |acc, (q, p)| acc + q * p);
    let half = &work * ratio(1, 2);
    Ok((half.clone(), work, -half))
}

/// Oscillator state with `φ(0) = phi`, `φ̇(0) = phi_dot`:
/// `a = (mφ + iφ̇)/√(2m)`. Requires `2m` to be a rational square.
pub fn oscillator_state(
    modes: &ModeSet,
    phi: &Rational,
    phi_dot: &Rational,
) -> Result<FieldState> {
    let m = match modes.kind() {
        FieldKind::Scalar { mass } if modes.len() == 1 => mass.clone(),
        _ => return Err(Error::Config("expected a single-mode scalar oscillator".into())),
    };
    let root = exact_sqrt(&(&m * rat(2))).ok_or_else(|| {
        Error::Domain(format!(
            "2m = {} is not a rational square",
            format_rational(&(&m * rat(2)))
        ))
    })?;
    let a = ComplexScalar::new(&m * phi / &root, phi_dot / &root);
    Ok(FieldState {
        amplitudes: vec![vec![a]],
    })
}

/// Helper for building exact 4-vectors from strings in tests and tools.
pub fn parse_four(parts: &[&str]) -> Result<[Rational; 4]> {
    if parts.len() != 4 {
        return Err(Error::Parse(format!("expected 4 components, got {}", parts.len())));
    }
    Ok([
        parse_rational(parts[0])?,
        parse_rational(parts[1])?,
        parse_rational(parts[2])?,
        parse_rational(parts[3])?,
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::cx;

    fn scalar_one_mode() -> ModeSet {
        ModeSet::new(
            FieldKind::Scalar { mass: rat(0) },
            vec![Mode {
                k: [rat(1), rat(0), rat(0), rat(1)],
                weight: rat(1),
            }],
        )
        .unwrap()
    }

    fn em_one_mode() -> ModeSet {
        ModeSet::em_oscillator([rat(1), rat(0), rat(0), rat(1)]).unwrap()
    }

    fn em_state(a: [(i64, i64); 4]) -> FieldState {
        FieldState {
            amplitudes: vec![a.iter().map(|&(r, i)| cx_int(r, i)).collect()],
        }
    }

    #[test]
    fn mode_set_validation() {
        assert!(ModeSet::em_oscillator([rat(1), rat(1), rat(0), rat(0)]).is_ok());
        assert!(ModeSet::em_oscillator([rat(1), rat(1), rat(1), rat(0)]).is_err());
        assert!(ModeSet::em_oscillator([rat(-1), rat(1), rat(0), rat(0)]).is_err());
        assert!(ModeSet::oscillator(rat(0)).is_err());
        let zero_weight = ModeSet::new(
            FieldKind::Em,
            vec![Mode {
                k: [rat(1), rat(0), rat(0), rat(1)],
                weight: rat(0),
            }],
        );
        assert!(zero_weight.is_err());
    }

    #[test]
    fn scalar_symplectic_value() {
        let m = scalar_one_mode();
        let c = FieldState { amplitudes: vec![vec![cx_int(1, 0)]] };
        let d = FieldState { amplitudes: vec![vec![cx_int(0, 1)]] };
        assert_eq!(symplectic_eval(&m, &c, &d).unwrap(), rat(-2));
        assert_eq!(symplectic_eval(&m, &c, &c).unwrap(), rat(0));
        assert_eq!(symplectic_eval(&m, &d, &c).unwrap(), rat(2));
    }

    #[test]
    fn em_transverse_component_matches_scalar() {
        let m = em_one_mode();
        let c = em_state([(0, 0), (1, 0), (0, 0), (0, 0)]);
        let d = em_state([(0, 0), (0, 1), (0, 0), (0, 0)]);
        assert_eq!(symplectic_eval(&m, &c, &d).unwrap(), rat(-2));
        let c0 = em_state([(1, 0), (0, 0), (0, 0), (0, 0)]);
        let d0 = em_state([(0, 1), (0, 0), (0, 0), (0, 0)]);
        assert_eq!(symplectic_eval(&m, &c0, &d0).unwrap(), rat(2));
    }

    #[test]
    fn shape_mismatch_is_an_error() {
        let m = em_one_mode();
        let bad = FieldState { amplitudes: vec![vec![cx_int(1, 0)]] };
        assert!(matches!(symplectic_eval(&m, &bad, &bad), Err(Error::Config(_))));
    }

    #[test]
    fn scalar_brackets() {
        let m = scalar_one_mode();
        let a = LinearObservable::amplitude(1, 0);
        let astar = LinearObservable::conj_amplitude(1, 0);
        assert_eq!(poisson_bracket(&m, &a, &astar).unwrap(), cx_int(0, -1));
        assert_eq!(poisson_bracket(&m, &astar, &a).unwrap(), cx_int(0, 1));
        assert_eq!(poisson_bracket(&m, &a, &a).unwrap(), cx_zero());
    }

    #[test]
    fn em_brackets_follow_metric() {
        let m = em_one_mode();
        let a0 = LinearObservable::amplitude(4, 0);
        let a0s = LinearObservable::conj_amplitude(4, 0);
        let a1 = LinearObservable::amplitude(4, 1);
        let a1s = LinearObservable::conj_amplitude(4, 1);
        assert_eq!(poisson_bracket(&m, &a0, &a0s).unwrap(), cx_int(0, 1));
        assert_eq!(poisson_bracket(&m, &a1, &a1s).unwrap(), cx_int(0, -1));
        assert_eq!(poisson_bracket(&m, &a0, &a1s).unwrap(), cx_zero());
    }

    #[test]
    fn nonlinear_observable_unsupported() {
        let t = Monomial {
            coeff: cx_int(1, 0),
            factors: vec![(0, false), (0, true)],
        };
        assert!(matches!(
            LinearObservable::from_monomials(1, &[t]),
            Err(Error::Unsupported(_))
        ));
    }

    #[test]
    fn frequency_split_examples() {
        let m = scalar_one_mode();
        let f = LinearObservable::amplitude(1, 0).add(&LinearObservable::conj_amplitude(1, 0));
        let (plus, minus) = frequency_split(&f);
        assert_eq!(plus, LinearObservable::amplitude(1, 0));
        assert_eq!(minus, LinearObservable::conj_amplitude(1, 0));
        assert_eq!(plus.add(&minus), f);
        assert_eq!(poisson_bracket(&m, &plus, &plus).unwrap(), cx_zero());
        assert_eq!(poisson_bracket(&m, &plus, &minus).unwrap(), cx_int(0, -1));
    }

    #[test]
    fn oscillator_generator_is_energy() {
        let m = ModeSet::oscillator(rat(2)).unwrap();
        let c = oscillator_state(&m, &rat(1), &rat(0)).unwrap();
        assert_eq!(c.amplitudes[0][0], cx_int(1, 0));
        let flow = time_shift_flow(&m, &c).unwrap();
        assert_eq!(generator(&m, &c, &flow).unwrap(), rat(2));
        assert_eq!(generator(&m, &c, &FieldState::zero(&m)).unwrap(), rat(0));
        assert_eq!(energy_momentum(&m, &c).unwrap()[0], rat(2));
    }

    #[test]
    fn em_energy_examples() {
        let m = em_one_mode();
        let p = energy_momentum(&m, &em_state([(0, 0), (1, 0), (0, 0), (0, 0)])).unwrap();
        assert_eq!(p, [rat(1), rat(0), rat(0), rat(1)]);
        let p = energy_momentum(&m, &em_state([(1, 0), (0, 0), (0, 0), (0, 0)])).unwrap();
        assert_eq!(p[0], rat(-1));
        let p = energy_momentum(&m, &FieldState::zero(&m)).unwrap();
        assert!(p.iter().all(Zero::is_zero));
    }

    #[test]
    fn radiation_examples() {
        let m = em_one_mode();
        let j = CurrentModes {
            currents: vec![[cx_int(1, 0), cx_zero(), cx_zero(), cx_int(1, 0)]],
        };
        let (a, ok) = radiated_field(&m, &j).unwrap();
        assert!(ok);
        assert_eq!(a, em_state([(0, 1), (0, 0), (0, 0), (0, 1)]));
        let zero = CurrentModes {
            currents: vec![[cx_zero(), cx_zero(), cx_zero(), cx_zero()]],
        };
        let (a, ok) = radiated_field(&m, &zero).unwrap();
        assert!(ok && a.is_zero());
        let bad = CurrentModes {
            currents: vec![[cx_int(1, 0), cx_zero(), cx_zero(), cx_zero()]],
        };
        assert!(!radiated_field(&m, &bad).unwrap().1);
    }

    #[test]
    fn gauge_projection_examples() {
        let m = em_one_mode();
        // i·k·λ with λ = 3
        let pure = em_state([(0, 3), (0, 0), (0, 0), (0, 3)]);
        assert!(gauge_project(&m, &pure).unwrap().is_zero());
        let e1 = em_state([(0, 0), (1, 0), (0, 0), (0, 0)]);
        assert_eq!(gauge_project(&m, &e1).unwrap(), e1);
        let shifted = em_state([(2, 0), (1, 0), (0, 0), (2, 0)]);
        assert_eq!(gauge_project(&m, &shifted).unwrap(), e1);
        let violating = em_state([(1, 0), (0, 0), (0, 0), (0, 0)]);
        assert!(matches!(gauge_project(&m, &violating), Err(Error::Precondition(_))));
    }

    #[test]
    fn hilbert_inner_examples() {
        let m = em_one_mode();
        let c = em_state([(0, 0), (1, 0), (0, 0), (0, 0)]);
        let id = Matrix4::<Complex<f64>>::identity();
        assert_eq!(hilbert_inner(&m, &c, &c, &id).unwrap(), Complex::new(1.0, 0.0));
        let two = id * Complex::new(2.0, 0.0);
        assert_eq!(hilbert_inner(&m, &c, &c, &two).unwrap(), Complex::new(2.0, 0.0));
        let mut indefinite = id;
        indefinite[(0, 0)] = Complex::new(-1.0, 0.0);
        assert!(matches!(hilbert_inner(&m, &c, &c, &indefinite), Err(Error::Domain(_))));
    }

    #[test]
    fn equivalence_of_scaled_identity() {
        let id = Matrix4::<Complex<f64>>::identity();
        let two = id * Complex::new(2.0, 0.0);
        let e = inner_equivalence(&id, &two).unwrap();
        assert!((e.epsilon - 0.5).abs() < 1e-12);
        let e = inner_equivalence(&id, &id).unwrap();
        assert!((e.epsilon - 1.0).abs() < 1e-12);
        assert!(inner_equivalence(&id, &Matrix4::zeros()).is_err());
    }

    #[test]
    fn lagrangian_examples() {
        let l = QuadraticLagrangian1D::new(rat(1), rat(0), rat(4)).unwrap();
        let c = (rat(1), rat(0));
        let d = (rat(0), rat(1));
        assert_eq!(lagrangian_1d_symplectic(&l, &c, &d), rat(-1));
        let shifted = l.with_divergence(&rat(5));
        assert_eq!(lagrangian_1d_symplectic(&shifted, &c, &d), rat(-1));
        let doubled = QuadraticLagrangian1D::new(rat(2), rat(0), rat(4)).unwrap();
        assert_eq!(lagrangian_1d_symplectic(&doubled, &c, &d), rat(-2));
        assert!(QuadraticLagrangian1D::new(rat(0), rat(1), rat(1)).is_err());
    }

    #[test]
    fn electrostatic_examples() {
        assert_eq!(
            electrostatic_split(&[rat(2)], &[rat(3)]).unwrap(),
            (rat(3), rat(6), rat(-3))
        );
        assert_eq!(electrostatic_split(&[], &[]).unwrap(), (rat(0), rat(0), rat(0)));
        assert!(electrostatic_split(&[rat(1)], &[]).is_err());
        let (full, charges, field) =
            electrostatic_split(&[ratio(1, 3), rat(-2)], &[ratio(5, 7), ratio(1, 2)]).unwrap();
        assert_eq!(charges + field, full);
    }

    #[test]
    fn bracket_tensors_are_real() {
        assert!(scalar_one_mode().bracket_tensor().satisfies_reality());
        assert!(em_one_mode().bracket_tensor().satisfies_reality());
        let _ = cx(rat(0), rat(0));
    }
}

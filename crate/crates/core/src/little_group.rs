//! The little group of a light-like vector and its isomorphism with E(2).
//!
//! For light-like `k` with `k_0 > 0` pick the standard frame
//! `S = R(ẑ → k̂) · B_z(ln k_0)`, so that `S(1,0,0,1) = k`. Then
//! `e1 = S(0,1,0,0)`, `e2 = S(0,0,1,0)` and `n₋ = S(1,0,0,-1)` satisfy
//! `k·n₋ = 2`, `e_i·e_j = -δ_ij`, and all other products vanish.
//!
//! An E(2) motion `p ↦ R(φ)p + (α, β)` acts on the paraboloid section
//! `x(u, v) = a k + n₋ + u e1 + v e2`, `x² = 1`. Four points with
//! non-concyclic plane coordinates span Minkowski space, and mapping them to
//! the moved points fixes a unique Lorentz matrix in the little group.

use nalgebra::{DMatrix, Matrix2, Matrix4, Vector4};
use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::linalg::ExactMatrix;
use crate::metric;
use crate::scalar::{cx_real, ratio, Rational};

pub type C64 = Complex<f64>;
pub type CVector4 = Vector4<C64>;

/// Construction tolerance.
pub const TOL: f64 = 1e-9;
/// Round-trip and rank tolerance.
pub const ROUND_TRIP_TOL: f64 = 1e-8;

const PLANE_POINTS: [(f64, f64); 4] = [(0.0, 0.0), (1.0, 0.0), (0.0, 1.0), (-1.0, -1.0)];

fn metric_matrix() -> Matrix4<f64> {
    Matrix4::from_diagonal(&Vector4::new(1.0, -1.0, -1.0, -1.0))
}

fn mdot(a: &Vector4<f64>, b: &Vector4<f64>) -> f64 {
    metric::dot_f64(&[a[0], a[1], a[2], a[3]], &[b[0], b[1], b[2], b[3]])
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct E2Element {
    pub phi: f64,
    pub alpha: f64,
    pub beta: f64,
}

/// Angle reduced to `(-π, π]`.
pub fn wrap_angle(phi: f64) -> f64 {
    let mut x = phi % (2.0 * PI);
    if x <= -PI {
        x += 2.0 * PI;
    } else if x > PI {
        x -= 2.0 * PI;
    }
    x
}

impl E2Element {
    pub fn new(phi: f64, alpha: f64, beta: f64) -> Self {
        E2Element { phi, alpha, beta }
    }

    pub fn identity() -> Self {
        Self::new(0.0, 0.0, 0.0)
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &E2Element) -> E2Element {
        let (s, c) = self.phi.sin_cos();
        E2Element {
            phi: self.phi + other.phi,
            alpha: c * other.alpha - s * other.beta + self.alpha,
            beta: s * other.alpha + c * other.beta + self.beta,
        }
    }

    pub fn apply(&self, p: (f64, f64)) -> (f64, f64) {
        let (s, c) = self.phi.sin_cos();
        (c * p.0 - s * p.1 + self.alpha, s * p.0 + c * p.1 + self.beta)
    }

    /// Largest parameter difference, angles compared modulo `2π`.
    pub fn distance(&self, other: &E2Element) -> f64 {
        wrap_angle(self.phi - other.phi)
            .abs()
            .max((self.alpha - other.alpha).abs())
            .max((self.beta - other.beta).abs())
    }

    /// `φ ∈ [-π, π]`, `α, β ∈ [-2, 2]`.
    pub fn random(rng: &mut impl Rng) -> Self {
        E2Element {
            phi: rng.gen_range(-PI..=PI),
            alpha: rng.gen_range(-2.0..=2.0),
            beta: rng.gen_range(-2.0..=2.0),
        }
    }
}

/// Seeded generator used by every randomized witness.
pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Residuals of the defining properties of a connected Lorentz matrix.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct LorentzResiduals {
    pub metric: f64,
    pub det: f64,
    pub lambda00: f64,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LorentzMatrix(pub Matrix4<f64>);

impl LorentzMatrix {
    pub fn identity() -> Self {
        LorentzMatrix(Matrix4::identity())
    }

    pub fn residuals(&self) -> LorentzResiduals {
        let g = metric_matrix();
        let m = self.0.transpose() * g * self.0 - g;
        LorentzResiduals {
            metric: m.amax(),
            det: (self.0.determinant() - 1.0).abs(),
            lambda00: self.0[(0, 0)],
        }
    }

    /// Checks `ΛᵀgΛ = g`, `det Λ = 1` and `Λ_00 ≥ 1` within [`TOL`].
    pub fn validate(&self) -> Result<()> {
        let r = self.residuals();
        if r.metric > TOL || r.det > TOL || r.lambda00 < 1.0 - TOL {
            return Err(Error::Domain(format!(
                "not a proper orthochronous Lorentz matrix (metric {:.3e}, det {:.3e}, Λ00 {})",
                r.metric, r.det, r.lambda00
            )));
        }
        Ok(())
    }

    pub fn mul(&self, other: &LorentzMatrix) -> LorentzMatrix {
        LorentzMatrix(self.0 * other.0)
    }
}

/// Light-like momentum with its standard frame.
#[derive(Clone, Debug)]
pub struct LightFrame {
    pub k: Vector4<f64>,
    pub e1: Vector4<f64>,
    pub e2: Vector4<f64>,
    pub n_minus: Vector4<f64>,
}

fn rotation_z_to(dir: &nalgebra::Vector3<f64>) -> nalgebra::Matrix3<f64> {
    let z = nalgebra::Vector3::z();
    let axis = z.cross(dir);
    let c = z.dot(dir);
    if axis.norm() < 1e-15 {
        return if c > 0.0 {
            nalgebra::Matrix3::identity()
        } else {
            nalgebra::Matrix3::from_diagonal(&nalgebra::Vector3::new(1.0, -1.0, -1.0))
        };
    }
    let angle = axis.norm().atan2(c);
    nalgebra::Rotation3::from_axis_angle(&nalgebra::Unit::new_normalize(axis), angle).into_inner()
}

impl LightFrame {
    pub fn new(k: [f64; 4]) -> Result<LightFrame> {
        if !k.iter().all(|x| x.is_finite()) || k[0] <= 0.0 {
            return Err(Error::Domain("k must be finite with k_0 > 0".into()));
        }
        if metric::dot_f64(&k, &k).abs() > TOL * k[0] * k[0] {
            return Err(Error::Domain("k is not light-like".into()));
        }
        let spatial = nalgebra::Vector3::new(k[1], k[2], k[3]) / k[0];
        let r = rotation_z_to(&spatial.normalize());
        let mut rot = Matrix4::identity();
        rot.fixed_view_mut::<3, 3>(1, 1).copy_from(&r);
        let eta = k[0].ln();
        let (ch, sh) = (eta.cosh(), eta.sinh());
        let mut boost = Matrix4::identity();
        boost[(0, 0)] = ch;
        boost[(3, 3)] = ch;
        boost[(0, 3)] = sh;
        boost[(3, 0)] = sh;
        let s = rot * boost;
        Ok(LightFrame {
            k: Vector4::new(k[0], k[1], k[2], k[3]),
            e1: s * Vector4::new(0.0, 1.0, 0.0, 0.0),
            e2: s * Vector4::new(0.0, 0.0, 1.0, 0.0),
            n_minus: s * Vector4::new(1.0, 0.0, 0.0, -1.0),
        })
    }

    pub fn default_k() -> LightFrame {
        LightFrame::new([1.0, 0.0, 0.0, 1.0]).expect("light-like")
    }

    /// `x(u, v)` on the paraboloid `x² = 1`.
    pub fn plane_point(&self, u: f64, v: f64) -> Vector4<f64> {
        let a = (1.0 + u * u + v * v) / 4.0;
        self.k * a + self.n_minus + self.e1 * u + self.e2 * v
    }

    /// Columns `(k, e1, e2, n₋)`.
    pub fn adapted_basis(&self) -> Matrix4<f64> {
        Matrix4::from_columns(&[self.k, self.e1, self.e2, self.n_minus])
    }

    /// Spiral vectors `e^(±1) = (e1 ± i e2)/√2`.
    pub fn spiral(&self, sign: f64) -> CVector4 {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        self.e1.map(|x| C64::new(x * s, 0.0)) + self.e2.map(|x| C64::new(0.0, sign * x * s))
    }
}

/// The little-group element induced by an E(2) motion.
pub fn e2_to_little(g: &E2Element, frame: &LightFrame) -> LorentzMatrix {
    let n = Matrix4::from_columns(&PLANE_POINTS.map(|(u, v)| frame.plane_point(u, v)));
    let moved = Matrix4::from_columns(&PLANE_POINTS.map(|p| {
        let (u, v) = g.apply(p);
        frame.plane_point(u, v)
    }));
    let inv = n.try_inverse().expect("plane points are not concyclic");
    LorentzMatrix(moved * inv)
}

/// Euclidean motion of the factor plane induced by `Λ ∈ L_k`.
pub fn little_to_e2(lambda: &LorentzMatrix, frame: &LightFrame) -> Result<E2Element> {
    let fixed = (lambda.0 * frame.k - frame.k).amax();
    if fixed > TOL * frame.k.amax().max(1.0) {
        return Err(Error::Domain(format!("Λ does not fix k (residual {fixed:.3e})")));
    }
    let image_n = lambda.0 * frame.n_minus;
    let alpha = -mdot(&frame.e1, &image_n);
    let beta = -mdot(&frame.e2, &image_n);
    let image_e1 = lambda.0 * frame.e1;
    let phi = (-mdot(&frame.e2, &image_e1)).atan2(-mdot(&frame.e1, &image_e1));
    Ok(E2Element { phi, alpha, beta })
}

/// Action on `M^⊥/M^∥` in the spiral basis `(e^(+1), e^(-1))`.
pub fn spiral_basis_matrix(lambda: &LorentzMatrix, frame: &LightFrame) -> Result<Matrix2<C64>> {
    little_to_e2(lambda, frame)?;
    let es = [frame.e1, frame.e2];
    let mut r = Matrix2::<f64>::zeros();
    for j in 0..2 {
        let img = lambda.0 * es[j];
        for i in 0..2 {
            r[(i, j)] = -mdot(&es[i], &img);
        }
    }
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let u = Matrix2::new(C64::new(s, 0.0), C64::new(s, 0.0), C64::new(0.0, s), C64::new(0.0, -s));
    let rc = r.map(|x| C64::new(x, 0.0));
    Ok(u.adjoint() * rc * u)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum SubspaceTag {
    Mpar,
    Mperp,
    Mplus1,
    Mminus1,
    Custom,
}

#[derive(Clone, Debug)]
pub struct SubspaceSpec {
    pub tag: SubspaceTag,
    pub basis: Vec<CVector4>,
}

fn real(v: &Vector4<f64>) -> CVector4 {
    v.map(|x| C64::new(x, 0.0))
}

/// Orthonormal basis of the span (Hermitian Gram–Schmidt); drops vectors
/// dependent within `tol`.
fn orthonormalize(vectors: &[CVector4], tol: f64) -> Vec<CVector4> {
    let mut out: Vec<CVector4> = Vec::new();
    for v in vectors {
        let scale = v.norm();
        if scale == 0.0 {
            continue;
        }
        let mut w = v / C64::new(scale, 0.0);
        for _ in 0..2 {
            for q in &out {
                let c = q.dotc(&w);
                w -= q * c;
            }
        }
        let n = w.norm();
        if n > tol {
            out.push(w / C64::new(n, 0.0));
        }
    }
    out
}

/// Distance of `v / |v|` from the span of the orthonormal `q`.
fn residual_from_span(q: &[CVector4], v: &CVector4) -> f64 {
    let scale = v.norm();
    if scale == 0.0 {
        return 0.0;
    }
    let mut w = v / C64::new(scale, 0.0);
    for b in q {
        let c = b.dotc(&w);
        w -= b * c;
    }
    w.norm()
}

impl SubspaceSpec {
    pub fn standard(tag: SubspaceTag, frame: &LightFrame) -> Result<SubspaceSpec> {
        let basis = match tag {
            SubspaceTag::Mpar => vec![real(&frame.k)],
            SubspaceTag::Mperp => vec![real(&frame.k), real(&frame.e1), real(&frame.e2)],
            SubspaceTag::Mplus1 => vec![real(&frame.k), frame.spiral(1.0)],
            SubspaceTag::Mminus1 => vec![real(&frame.k), frame.spiral(-1.0)],
            SubspaceTag::Custom => {
                return Err(Error::Config("custom subspaces need an explicit basis".into()))
            }
        };
        Ok(SubspaceSpec { tag, basis })
    }

    pub fn custom(basis: Vec<CVector4>) -> Result<SubspaceSpec> {
        if orthonormalize(&basis, ROUND_TRIP_TOL).len() != basis.len() {
            return Err(Error::Config("subspace basis is linearly dependent".into()));
        }
        Ok(SubspaceSpec {
            tag: SubspaceTag::Custom,
            basis,
        })
    }

    /// The whole complexified space.
    pub fn whole() -> SubspaceSpec {
        SubspaceSpec {
            tag: SubspaceTag::Custom,
            basis: (0..4)
                .map(|i| {
                    let mut v = CVector4::zeros();
                    v[i] = C64::new(1.0, 0.0);
                    v
                })
                .collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Largest residual of `self`'s basis vectors outside `other`.
    pub fn inclusion_residual(&self, other: &SubspaceSpec) -> f64 {
        let q = orthonormalize(&other.basis, ROUND_TRIP_TOL);
        self.basis
            .iter()
            .map(|b| residual_from_span(&q, b))
            .fold(0.0, f64::max)
    }
}

/// Whether `Λ·span(S) ⊆ span(S)`, with the largest normalized residual.
pub fn subspace_invariance_check(lambda: &LorentzMatrix, s: &SubspaceSpec) -> (bool, f64) {
    let q = orthonormalize(&s.basis, ROUND_TRIP_TOL);
    let lc = lambda.0.map(|x| C64::new(x, 0.0));
    let residual = q
        .iter()
        .map(|b| residual_from_span(&q, &(lc * b)))
        .fold(0.0, f64::max);
    (residual <= TOL, residual)
}

/// Numerical rank of `{Λ_i v}` over `samples` seeded random elements.
pub fn orbit_span(v: &CVector4, frame: &LightFrame, samples: usize, seed: u64) -> Result<usize> {
    if samples < 20 {
        return Err(Error::Precondition("orbit_span needs at least 20 samples".into()));
    }
    let mut rng = seeded_rng(seed);
    let mut m = DMatrix::<C64>::zeros(4, samples);
    for i in 0..samples {
        let lambda = e2_to_little(&E2Element::random(&mut rng), frame);
        let img = lambda.0.map(|x| C64::new(x, 0.0)) * v;
        m.set_column(i, &img);
    }
    let sv = m.singular_values();
    let max = sv.iter().copied().fold(0.0, f64::max);
    if max == 0.0 {
        return Ok(0);
    }
    Ok(sv.iter().filter(|&&s| s > ROUND_TRIP_TOL * max).count())
}

/// Largest entry that must vanish in the adapted basis `(k, e1, e2, n₋)`:
/// `Λk = k` and `Λ M^⊥ ⊆ M^⊥`.
pub fn block_triangular_residual(lambda: &LorentzMatrix, frame: &LightFrame) -> f64 {
    let b = frame.adapted_basis();
    let a = b.try_inverse().expect("adapted basis is a basis") * lambda.0 * b;
    let mut r = (a[(0, 0)] - 1.0).abs();
    for i in 1..4 {
        r = r.max(a[(i, 0)].abs());
    }
    for j in 1..3 {
        r = r.max(a[(3, j)].abs());
    }
    r
}

/// Exact version of [`e2_to_little`] for `k = (κ, 0, 0, κ)` and a rational
/// rotation (`cos² + sin² = 1`).
pub fn e2_to_little_exact(
    cos: &Rational,
    sin: &Rational,
    alpha: &Rational,
    beta: &Rational,
    kappa: &Rational,
) -> Result<ExactMatrix> {
    use num_traits::{One, Signed};
    if cos * cos + sin * sin != Rational::one() {
        return Err(Error::Domain("cos² + sin² must equal 1".into()));
    }
    if !kappa.is_positive() {
        return Err(Error::Domain("κ must be positive".into()));
    }
    let point = |u: &Rational, v: &Rational| -> Vec<crate::scalar::ComplexScalar> {
        let a = (Rational::one() + u * u + v * v) * ratio(1, 4);
        // a k + n₋ + u e1 + v e2 with n₋ = (1, 0, 0, -1)/κ
        let inv = Rational::one() / kappa;
        vec![
            cx_real(&a * kappa + &inv),
            cx_real(u.clone()),
            cx_real(v.clone()),
            cx_real(&a * kappa - &inv),
        ]
    };
    let pts: Vec<(Rational, Rational)> = PLANE_POINTS
        .iter()
        .map(|&(u, v)| (Rational::from_float(u).unwrap(), Rational::from_float(v).unwrap()))
        .collect();
    let n = ExactMatrix::from_columns(&pts.iter().map(|(u, v)| point(u, v)).collect::<Vec<_>>());
    let moved = ExactMatrix::from_columns(
        &pts.iter()
            .map(|(u, v)| {
                let u2 = cos * u - sin * v + alpha;
                let v2 = sin * u + cos * v + beta;
                point(&u2, &v2)
            })
            .collect::<Vec<_>>(),
    );
    let inv = n
        .inverse()
        .ok_or_else(|| Error::Data("plane points are concyclic".into()))?;
    Ok(moved.mul(&inv))
}

/// The six numerical witnesses for a batch of random elements.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize)]
pub struct VerifySummary {
    pub samples: usize,
    pub round_trip: f64,
    pub reverse_round_trip: f64,
    pub metric: f64,
    pub fixes_k: f64,
    pub homomorphism: f64,
    pub block_triangular: f64,
}

impl VerifySummary {
    pub fn passes(&self) -> bool {
        self.round_trip <= ROUND_TRIP_TOL
            && self.reverse_round_trip <= ROUND_TRIP_TOL
            && self.metric <= TOL
            && self.fixes_k <= TOL
            && self.homomorphism <= ROUND_TRIP_TOL
            && self.block_triangular <= TOL
    }
}

/// Round trips, metric and `k` residuals, homomorphism and block structure
/// over `samples` seeded random elements.
pub fn verify(frame: &LightFrame, samples: usize, seed: u64) -> Result<VerifySummary> {
    let mut rng = seeded_rng(seed);
    let mut s = VerifySummary {
        samples,
        ..Default::default()
    };
    for _ in 0..samples {
        let g1 = E2Element::random(&mut rng);
        let g2 = E2Element::random(&mut rng);
        let l1 = e2_to_little(&g1, frame);
        let l2 = e2_to_little(&g2, frame);
        let back = little_to_e2(&l1, frame)?;
        s.round_trip = s.round_trip.max(back.distance(&g1));
        let again = e2_to_little(&back, frame);
        s.reverse_round_trip = s.reverse_round_trip.max((again.0 - l1.0).amax());
        s.metric = s.metric.max(l1.residuals().metric);
        s.fixes_k = s.fixes_k.max((l1.0 * frame.k - frame.k).amax());
        let product = little_to_e2(&l1.mul(&l2), frame)?;
        s.homomorphism = s.homomorphism.max(product.distance(&g1.compose(&g2)));
        s.block_triangular = s.block_triangular.max(block_triangular_residual(&l1, frame));
    }
    Ok(s)
}

use std::fs;

use anyhow::{anyhow, bail, Context, Result};
use invquant::classical::io::{parse_matrix4, state_to_json, ModeDocument};
use invquant::classical::{
    energy_momentum, frequency_split, generator, hilbert_inner, inner_equivalence,
    lagrangian_1d_symplectic, poisson_bracket, radiated_field, shift_flow, time_shift_flow,
    FieldKind, FieldState, ModeSet, QuadraticLagrangian1D,
};
use invquant::fock::{build_quantization, gram_inertia, level_basis, QuantizationChoice, System, Variant};
use invquant::gupta_bleuler::{binomial, constrained_basis, gauge_basis, positivity_report, LightlikeMomentum};
use invquant::little_group::{
    e2_to_little, e2_to_little_exact, little_to_e2, orbit_span, seeded_rng, spiral_basis_matrix,
    subspace_invariance_check, verify as verify_batch, E2Element, LightFrame, LorentzMatrix,
    SubspaceSpec, SubspaceTag, C64, ROUND_TRIP_TOL, TOL,
};
use invquant::metric;
use invquant::scalar::{cx, factorial, format_rational, parse_rational, rat, ratio, rational_to_f64, Rational};
use nalgebra::Vector4;
use rand::Rng;
use serde_json::{json, Value};

use crate::report::{complex, float, inertia, matrix, rational, Outcome, Report};
use crate::{ClassicalArgs, ClassicalOp, ElementArgs, EquivArgs, GbArgs, LagrangianArgs, ModesArg, QuantizeArgs, SystemArg, VerifyArgs};

/// Largest level dimension for which a Gram matrix is assembled.
const MAX_LEVEL_DIM: usize = 1000;
/// Largest level dimension whose Gram entries are printed.
const MAX_PRINTED_DIM: usize = 64;

fn parse_list(s: &str, len: usize) -> Result<Vec<Rational>> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != len {
        bail!("expected {len} comma-separated values, got {s:?}");
    }
    parts.iter().map(|p| parse_rational(p).map_err(Into::into)).collect()
}

fn parse_four(s: &str) -> Result<[Rational; 4]> {
    let v = parse_list(s, 4)?;
    Ok([v[0].clone(), v[1].clone(), v[2].clone(), v[3].clone()])
}

fn parse_f64(s: &str) -> Result<f64> {
    let x: f64 = match s.trim().parse() {
        Ok(x) => x,
        Err(_) => rational_to_f64(&parse_rational(s)?),
    };
    if !x.is_finite() {
        bail!("not a finite number: {s:?}");
    }
    Ok(x)
}

pub fn quantize(a: &QuantizeArgs) -> Result<Outcome> {
    let mass = parse_rational(&a.mass)?;
    let variant = Variant::from_index(a.variant)?;
    let (system, modes) = match (a.system, a.modes) {
        (SystemArg::Oscillator, ModesArg::Oscillator) => (System::Oscillator, ModeSet::oscillator(mass.clone())?),
        (SystemArg::Oscillator, ModesArg::Demo) => bail!("the oscillator has a single mode; use --modes oscillator"),
        (SystemArg::Scalar, ModesArg::Oscillator) => (System::Scalar, ModeSet::oscillator(mass.clone())?),
        (SystemArg::Scalar, ModesArg::Demo) => {
            if mass != rat(0) {
                bail!("the demo mode set is light-like; use --mass 0");
            }
            (System::Scalar, ModeSet::cubic_stencil(FieldKind::Scalar { mass: rat(0) })?)
        }
        (SystemArg::Em, ModesArg::Oscillator) => {
            (System::Em4, ModeSet::em_oscillator([rat(1), rat(0), rat(0), rat(1)])?)
        }
        (SystemArg::Em, ModesArg::Demo) => (System::Em4, ModeSet::cubic_stencil(FieldKind::Em)?),
    };
    let slots = modes.slots();
    for n in 0..=a.levels {
        let dim = binomial(slots + n - 1, n);
        if dim > MAX_LEVEL_DIM {
            bail!("level {n} has dimension {dim}, above the limit {MAX_LEVEL_DIM}");
        }
    }
    let q = build_quantization(&QuantizationChoice { system, variant, modes })?;
    let mut levels = Vec::new();
    let mut hermitian = true;
    let mut indefinite = false;
    let mut norms = Vec::new();
    let mut norms_match = true;
    for n in 0..=a.levels {
        let basis = level_basis(slots, n);
        let (gram, inert) = gram_inertia(&basis, &q.table)?;
        hermitian &= gram.entries.is_hermitian();
        indefinite |= inert.negative > 0 && inert.positive > 0;
        let mut level = json!({
            "n": n,
            "dim": basis.len(),
            "inertia": inertia(&inert),
            "positive_definite": inert.positive == basis.len(),
            "negative_directions": inert.negative > 0,
        });
        if basis.len() <= MAX_PRINTED_DIM {
            level["gram"] = matrix(&gram.entries);
        }
        if system == System::Oscillator {
            let value = gram.entries[(0, 0)].clone();
            let sign = if variant == Variant::NegativeFrequencyDestroys && n % 2 == 1 { -1 } else { 1 };
            norms_match &= value == cx(factorial(n) * rat(sign), rat(0));
            norms.push(rational(&value.re));
        }
        levels.push(level);
    }
    let mut checks = json!({ "gram_hermitian": hermitian });
    let mut results = json!({
        "slots": slots,
        "labels": q.labels,
        "table": matrix(q.table.matrix()),
        "levels": levels,
        "indefinite": indefinite,
    });
    if system == System::Oscillator {
        results["norms"] = Value::Array(norms);
        checks["norms_match_signed_factorials"] = json!(norms_match);
    }
    results["checks"] = checks;
    let inputs = json!({
        "system": match a.system { SystemArg::Oscillator => "oscillator", SystemArg::Scalar => "scalar", SystemArg::Em => "em" },
        "variant": a.variant,
        "levels": a.levels,
        "modes": match a.modes { ModesArg::Oscillator => "oscillator", ModesArg::Demo => "demo" },
        "mass": format_rational(&mass),
    });
    Ok(Outcome {
        report: Report::new("quantize", inputs, results, None),
        verified: hermitian && norms_match,
    })
}

fn tensor_json(t: &invquant::gupta_bleuler::SymmetricTensor) -> Value {
    Value::Array(t.coordinates().iter().map(complex).collect())
}

pub fn gb(a: &GbArgs) -> Result<Outcome> {
    let k = LightlikeMomentum::new(parse_four(&a.k)?)?;
    let basis = constrained_basis(a.n, &k);
    let gauge = gauge_basis(a.n, &k);
    let r = positivity_report(a.n, &k)?;
    let expected_dim = binomial(a.n + 2, 2);
    let ok = r.n_neg == 0
        && basis.len() == expected_dim
        && r.n_pos == a.n + 1
        && r.n_zero == expected_dim - (a.n + 1)
        && gauge.len() == r.n_zero;
    let mut results = json!({
        "dim": basis.len(),
        "gauge": gauge.len(),
        "inertia": [r.n_pos, r.n_zero, r.n_neg],
        "inertia_order": ["positive", "zero", "negative"],
        "constrained_basis": basis.iter().map(tensor_json).collect::<Vec<_>>(),
        "gauge_basis": gauge.iter().map(tensor_json).collect::<Vec<_>>(),
        "positive_semidefinite": r.n_neg == 0,
    });
    if basis.len() <= MAX_PRINTED_DIM {
        results["gram"] = matrix(&r.gram.entries);
    }
    let inputs = json!({ "n": a.n, "k": k.components().iter().map(format_rational).collect::<Vec<_>>() });
    Ok(Outcome {
        report: Report::new("gb", inputs, results, None),
        verified: ok,
    })
}

fn frame_from(k: &str) -> Result<LightFrame> {
    let v = parse_list(k, 4)?;
    Ok(LightFrame::new([
        rational_to_f64(&v[0]),
        rational_to_f64(&v[1]),
        rational_to_f64(&v[2]),
        rational_to_f64(&v[3]),
    ])?)
}

fn float_matrix(m: &nalgebra::Matrix4<f64>, tol: f64) -> Value {
    Value::Array((0..4).map(|i| Value::Array((0..4).map(|j| float(m[(i, j)], tol)).collect())).collect())
}

pub fn element(a: &ElementArgs) -> Result<Outcome> {
    if a.exact {
        return exact_element(a);
    }
    let frame = frame_from(&a.k)?;
    let g = E2Element::new(parse_f64(&a.phi)?, parse_f64(&a.alpha)?, parse_f64(&a.beta)?);
    let lambda = e2_to_little(&g, &frame);
    let res = lambda.residuals();
    let back = little_to_e2(&lambda, &frame)?;
    let spiral = spiral_basis_matrix(&lambda, &frame)?;
    let fixes_k = (lambda.0 * frame.k - frame.k).amax();
    let round_trip = back.distance(&g);
    let ok = lambda.validate().is_ok() && fixes_k <= TOL && round_trip <= ROUND_TRIP_TOL;
    let c = |z: C64| json!({ "re": float(z.re, TOL), "im": float(z.im, TOL) });
    let results = json!({
        "matrix": float_matrix(&lambda.0, TOL),
        "metric_residual": float(res.metric, TOL),
        "det_residual": float(res.det, TOL),
        "k_residual": float(fixes_k, TOL),
        "round_trip": {
            "phi": float(back.phi, ROUND_TRIP_TOL),
            "alpha": float(back.alpha, ROUND_TRIP_TOL),
            "beta": float(back.beta, ROUND_TRIP_TOL),
            "error": float(round_trip, ROUND_TRIP_TOL),
        },
        "spiral": [[c(spiral[(0, 0)]), c(spiral[(0, 1)])], [c(spiral[(1, 0)]), c(spiral[(1, 1)])]],
    });
    let inputs = json!({ "phi": g.phi, "alpha": g.alpha, "beta": g.beta, "k": a.k, "exact": false });
    Ok(Outcome {
        report: Report::new("little-group element", inputs, results, None),
        verified: ok,
    })
}

fn exact_element(a: &ElementArgs) -> Result<Outcome> {
    let k = parse_four(&a.k)?;
    if k[1] != rat(0) || k[2] != rat(0) || k[0] != k[3] {
        bail!("exact mode needs k = (κ,0,0,κ)");
    }
    let cos = parse_rational(a.cos.as_deref().ok_or_else(|| anyhow!("--exact needs --cos"))?)?;
    let sin = parse_rational(a.sin.as_deref().ok_or_else(|| anyhow!("--exact needs --sin"))?)?;
    let alpha = parse_rational(&a.alpha)?;
    let beta = parse_rational(&a.beta)?;
    let m = e2_to_little_exact(&cos, &sin, &alpha, &beta, &k[0])?;
    let g = invquant::linalg::ExactMatrix::from_rows(
        &(0..4)
            .map(|i| (0..4).map(|j| cx(rat(metric::g(i, j)), rat(0))).collect())
            .collect::<Vec<_>>(),
    );
    let kv: Vec<_> = k.iter().map(|x| cx(x.clone(), rat(0))).collect();
    let preserves_metric = m.transpose().mul(&g).mul(&m) == g;
    let fixes_k = m.mul_vec(&kv) == kv;
    let results = json!({
        "matrix": matrix(&m),
        "preserves_metric": preserves_metric,
        "fixes_k": fixes_k,
    });
    let inputs = json!({
        "cos": format_rational(&cos), "sin": format_rational(&sin),
        "alpha": format_rational(&alpha), "beta": format_rational(&beta),
        "k": k.iter().map(format_rational).collect::<Vec<_>>(), "exact": true,
    });
    Ok(Outcome {
        report: Report::new("little-group element", inputs, results, None),
        verified: preserves_metric && fixes_k,
    })
}

pub fn verify(a: &VerifyArgs) -> Result<Outcome> {
    if a.samples < 20 {
        bail!("--samples must be at least 20");
    }
    let frame = frame_from(&a.k)?;
    let s = verify_batch(&frame, a.samples, a.seed)?;
    let mut rng = seeded_rng(a.seed ^ 0x5eed);
    let tags = [SubspaceTag::Mpar, SubspaceTag::Mplus1, SubspaceTag::Mminus1, SubspaceTag::Mperp];
    let specs: Vec<SubspaceSpec> = tags
        .iter()
        .map(|&t| SubspaceSpec::standard(t, &frame))
        .collect::<invquant::Result<_>>()?;
    let mut residuals = [0.0f64; 4];
    for _ in 0..a.samples {
        let l: LorentzMatrix = e2_to_little(&E2Element::random(&mut rng), &frame);
        for (r, spec) in residuals.iter_mut().zip(&specs) {
            *r = r.max(subspace_invariance_check(&l, spec).1);
        }
    }
    let real = |v: Vector4<f64>| v.map(|x| C64::new(x, 0.0));
    let generic = real(frame.n_minus + frame.e1 * 0.3 - frame.e2 * 0.2);
    let dims = [
        orbit_span(&generic, &frame, a.samples, a.seed)?,
        orbit_span(&real(frame.e1 + frame.k * 0.5), &frame, a.samples, a.seed)?,
        orbit_span(&real(frame.k), &frame, a.samples, a.seed)?,
    ];
    let invariant = residuals.iter().all(|&r| r <= TOL);
    let ok = s.passes() && invariant && dims == [4, 3, 1];
    let results = json!({
        "samples": s.samples,
        "round_trip": float(s.round_trip, ROUND_TRIP_TOL),
        "reverse_round_trip": float(s.reverse_round_trip, ROUND_TRIP_TOL),
        "metric_residual": float(s.metric, TOL),
        "k_residual": float(s.fixes_k, TOL),
        "homomorphism": float(s.homomorphism, ROUND_TRIP_TOL),
        "block_triangular": float(s.block_triangular, TOL),
        "invariant_subspaces": {
            "Mpar": float(residuals[0], TOL),
            "Mplus1": float(residuals[1], TOL),
            "Mminus1": float(residuals[2], TOL),
            "Mperp": float(residuals[3], TOL),
        },
        "orbit_dims": { "generic": dims[0], "transverse": dims[1], "k": dims[2] },
        "passed": ok,
    });
    let inputs = json!({ "samples": a.samples, "k": a.k });
    Ok(Outcome {
        report: Report::new("little-group verify", inputs, results, Some(a.seed)),
        verified: ok,
    })
}

fn four(v: &[Rational; 4]) -> Value {
    Value::Array(v.iter().map(rational).collect())
}

pub fn classical(a: &ClassicalArgs) -> Result<Outcome> {
    let text = fs::read_to_string(&a.input).with_context(|| format!("reading {}", a.input.display()))?;
    let doc = ModeDocument::from_json(&text)?;
    let modes = doc.mode_set()?;
    let inputs = serde_json::to_value(&doc)?;
    let (name, results, ok) = match a.op {
        ClassicalOp::Energy => {
            let c = doc.state(&modes)?;
            let p = energy_momentum(&modes, &c)?;
            ("classical energy", json!({ "P": four(&p) }), true)
        }
        ClassicalOp::Radiate => {
            let j = doc.current(&modes)?;
            let (field, lorentz_ok) = radiated_field(&modes, &j)?;
            let conditions: Vec<Value> = modes
                .modes()
                .iter()
                .zip(&field.amplitudes)
                .map(|(m, amp)| complex(&metric::dot_cx(&m.k, amp)))
                .collect();
            (
                "classical radiate",
                json!({ "a": state_to_json(&field), "k_dot_a": conditions, "lorentz_ok": lorentz_ok }),
                lorentz_ok,
            )
        }
        ClassicalOp::Bracket => {
            let f = doc.observable("f", &modes)?;
            let g = doc.observable("g", &modes)?;
            let fg = poisson_bracket(&modes, &f, &g)?;
            let gf = poisson_bracket(&modes, &g, &f)?;
            let (fp, fm) = frequency_split(&f);
            let (gp, gm) = frequency_split(&g);
            let antisymmetric = fg == -gf.clone();
            (
                "classical bracket",
                json!({
                    "fg": complex(&fg),
                    "gf": complex(&gf),
                    "plus_plus": complex(&poisson_bracket(&modes, &fp, &gp)?),
                    "minus_minus": complex(&poisson_bracket(&modes, &fm, &gm)?),
                    "antisymmetric": antisymmetric,
                }),
                antisymmetric,
            )
        }
        ClassicalOp::Generator => {
            let c = doc.state(&modes)?;
            let p = energy_momentum(&modes, &c)?;
            match doc.shift()? {
                None => {
                    let g = generator(&modes, &c, &time_shift_flow(&modes, &c)?)?;
                    let ok = g == p[0];
                    ("classical generator", json!({ "G": rational(&g), "P0": rational(&p[0]), "matches": ok }), ok)
                }
                Some(shift) => {
                    let g = generator(&modes, &c, &shift_flow(&modes, &c, &shift)?)?;
                    // a shift by ε generates -ε·P
                    let expected = -metric::dot(&shift, &p);
                    let ok = g == expected;
                    (
                        "classical generator",
                        json!({ "G": rational(&g), "minus_shift_dot_P": rational(&expected), "matches": ok }),
                        ok,
                    )
                }
            }
        }
    };
    Ok(Outcome {
        report: Report::new(name, inputs, results, None),
        verified: ok,
    })
}

pub fn lagrangian(a: &LagrangianArgs) -> Result<Outcome> {
    let l = QuadraticLagrangian1D::new(parse_rational(&a.a)?, parse_rational(&a.b)?, parse_rational(&a.c)?)?;
    let lambda = parse_rational(&a.lambda)?;
    let c = parse_list(&a.first, 2)?;
    let d = parse_list(&a.second, 2)?;
    let (c, d) = ((c[0].clone(), c[1].clone()), (d[0].clone(), d[1].clone()));
    let shifted = l.with_divergence(&lambda);
    let w = lagrangian_1d_symplectic(&l, &c, &d);
    let w2 = lagrangian_1d_symplectic(&shifted, &c, &d);
    let results = json!({
        "omega": rational(&w),
        "omega_shifted": rational(&w2),
        "invariant": w == w2,
    });
    let inputs = json!({
        "a": rational(l.a()), "b": rational(l.b()), "c": rational(l.c()),
        "lambda": rational(&lambda),
        "first": [rational(&c.0), rational(&c.1)],
        "second": [rational(&d.0), rational(&d.1)],
    });
    Ok(Outcome {
        report: Report::new("lagrangian1d", inputs, results, None),
        verified: w == w2,
    })
}

pub fn equiv(a: &EquivArgs) -> Result<Outcome> {
    let read = |p: &std::path::Path| -> Result<_> {
        let text = fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?;
        Ok(parse_matrix4(&text)?)
    };
    let (m1, m2) = (read(&a.m1)?, read(&a.m2)?);
    let eq = inner_equivalence(&m1, &m2)?;
    let modes = ModeSet::cubic_stencil(FieldKind::Em)?;
    let mut rng = seeded_rng(a.seed);
    let slack = 1e-10;
    let mut worst = f64::NEG_INFINITY;
    for _ in 0..a.samples {
        let mut r = || ratio(rng.gen_range(-99..=99), rng.gen_range(1..=10));
        let z = FieldState {
            amplitudes: (0..modes.len()).map(|_| (0..4).map(|_| cx(r(), r())).collect()).collect(),
        };
        let n1 = hilbert_inner(&modes, &z, &z, &m1)?.re;
        let n2 = hilbert_inner(&modes, &z, &z, &m2)?.re;
        worst = worst.max(eq.epsilon * n2 - n1).max(eq.epsilon * n1 - n2);
    }
    let ok = worst <= slack;
    let results = json!({
        "epsilon": float(eq.epsilon, slack),
        "lambda_min": float(eq.lambda_min, slack),
        "lambda_max": float(eq.lambda_max, slack),
        "samples": a.samples,
        "worst_violation": float(if a.samples == 0 { 0.0 } else { worst }, slack),
        "sandwich_holds": ok,
    });
    let inputs = json!({ "m1": a.m1.display().to_string(), "m2": a.m2.display().to_string(), "samples": a.samples });
    Ok(Outcome {
        report: Report::new("equiv", inputs, results, Some(a.seed)),
        verified: ok || a.samples == 0,
    })
}

mod common;

use common::*;
use invquant::ccr::{normal_order, normal_order_with, time_reverse, LetterMap, Normalizer, Strategy as Rewrite};
use invquant::classical::{
    energy_momentum, gauge_project, generator, radiated_field, symplectic_eval, time_shift_flow,
    CurrentModes, FieldKind, FieldState, ModeSet,
};
use invquant::fock::{build_quantization, grade_decompose, inner, Ket, QuantizationChoice, System, Variant};
use invquant::gupta_bleuler::{
    constrained_basis, constraint_apply, norm_formula, oscillator_table, positivity_report,
    LightlikeMomentum, SymmetricTensor,
};
use invquant::little_group::{e2_to_little, little_to_e2, E2Element, LightFrame};
use invquant::metric;
use invquant::scalar::{cx_int, cx_real, cx_zero, is_zero, rat, ComplexScalar};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn table_for(seed: u64, slots: usize) -> invquant::CommutatorTable {
    random_table(&mut ChaCha8Rng::seed_from_u64(seed), slots)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rewriting_is_confluent(seed in any::<u64>(), p in phrase_strategy(3, 5, 6)) {
        let t = table_for(seed, 3);
        prop_assert_eq!(
            normal_order_with(&p, &t, Rewrite::LeftMost).unwrap(),
            normal_order_with(&p, &t, Rewrite::RightMost).unwrap()
        );
    }

    #[test]
    fn normal_order_is_idempotent(seed in any::<u64>(), p in phrase_strategy(3, 5, 6)) {
        let t = table_for(seed, 3);
        let once = normal_order(&p, &t).unwrap();
        prop_assert_eq!(normal_order(&once, &t).unwrap(), once);
    }

    #[test]
    fn normal_order_is_a_homomorphism(seed in any::<u64>(), p in phrase_strategy(2, 3, 3), q in phrase_strategy(2, 3, 3)) {
        let t = table_for(seed, 2);
        let lhs = normal_order(&p.mul(&q).unwrap(), &t).unwrap();
        let np = normal_order(&p, &t).unwrap();
        let nq = normal_order(&q, &t).unwrap();
        prop_assert_eq!(lhs, normal_order(&np.mul(&nq).unwrap(), &t).unwrap());
    }

    #[test]
    fn conjugation_commutes_with_normal_order(seed in any::<u64>(), p in phrase_strategy(3, 4, 6)) {
        let t = table_for(seed, 3);
        // Conjugating a normal form only reverses same-kind blocks, so one more
        // pass merely re-sorts it.
        let lhs = normal_order(&normal_order(&p, &t).unwrap().conjugate(), &t).unwrap();
        prop_assert_eq!(lhs, normal_order(&p.conjugate(), &t).unwrap());
    }

    #[test]
    fn grades_add_and_survive_rewriting(seed in any::<u64>(), u in word_strategy(3, 5), v in word_strategy(3, 5)) {
        prop_assert_eq!(u.concat(&v).grade(), u.grade() + v.grade());
        let t = table_for(seed, 3);
        for (w, _) in Normalizer::new(&t).normal_word(&u) {
            prop_assert_eq!(w.grade(), u.grade());
        }
    }

    #[test]
    fn time_reversal_reverses_products(p in phrase_strategy(4, 3, 4), q in phrase_strategy(4, 3, 4), perm in 0usize..3) {
        let perms = [[0, 1, 2, 3], [1, 0, 3, 2], [2, 1, 0, 3]];
        let map = LetterMap::kind_swap(4, &perms[perm]).unwrap();
        let lhs = time_reverse(&p.mul(&q).unwrap(), &map).unwrap();
        let rhs = time_reverse(&q, &map).unwrap().mul(&time_reverse(&p, &map).unwrap()).unwrap();
        prop_assert_eq!(&lhs, &rhs);
        prop_assert_eq!(time_reverse(&time_reverse(&p, &map).unwrap(), &map).unwrap(), p);
    }

    #[test]
    fn vev_matches_wick_oracle(seed in any::<u64>(), u in prop::collection::vec(0usize..3, 0..=4), v in prop::collection::vec(0usize..3, 0..=4)) {
        let t = table_for(seed, 3);
        let bra = invquant::Word::new(u.iter().map(|&s| invquant::Letter::annihilate(s)).collect());
        let ket = invquant::Word::new(v.iter().map(|&s| invquant::Letter::create(s)).collect());
        let w = bra.concat(&ket);
        prop_assert_eq!(Normalizer::new(&t).vacuum_expectation(&w), wick_vev(&w, &t));
    }
}

fn em_quantization(variant: Variant) -> invquant::fock::Quantization {
    build_quantization(&QuantizationChoice {
        system: System::Em4,
        variant,
        modes: ModeSet::em_oscillator([rat(1), rat(0), rat(0), rat(1)]).unwrap(),
    })
    .unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn scalar_product_is_hermitian(seed in any::<u64>(), variant in 1u8..=2) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let q = em_quantization(Variant::from_index(variant).unwrap());
        let x = random_ket(&mut rng, 4, 3);
        let y = random_ket(&mut rng, 4, 3);
        prop_assert_eq!(
            inner(&x.bra(), &y, &q.table).unwrap(),
            inner(&y.bra(), &x, &q.table).unwrap().conj()
        );
    }

    #[test]
    fn different_grades_are_orthogonal(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let q = em_quantization(Variant::PositiveFrequencyDestroys);
        let ket = random_ket(&mut rng, 4, 3);
        let parts = grade_decompose(&ket);
        let mut total = Ket::zero(4);
        for (g, x) in &parts {
            total = total.add(x).unwrap();
            for (h, y) in &parts {
                if g != h {
                    prop_assert!(is_zero(&inner(&x.bra(), y, &q.table).unwrap()));
                }
            }
        }
        prop_assert_eq!(total, ket);
    }

    #[test]
    fn norm_formula_agrees_with_engine(seed in any::<u64>(), n in 1usize..=4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let k = LightlikeMomentum::new([rat(2), rat(0), rat(0), rat(2)]).unwrap();
        let table = oscillator_table(&k);
        let mut t = SymmetricTensor::zero(n);
        for b in constrained_basis(n, &k) {
            let c = small_cx(&mut rng);
            let coords: Vec<ComplexScalar> = t.coordinates().iter().zip(b.coordinates()).map(|(x, y)| x + y * &c).collect();
            t = SymmetricTensor::from_coordinates(n, &coords).unwrap();
        }
        let ket = t.ket();
        prop_assert_eq!(inner(&ket.bra(), &ket, &table).unwrap(), cx_real(norm_formula(&t)));
    }

    #[test]
    fn constraint_holds_iff_contraction_vanishes(seed in any::<u64>(), n in 1usize..=3, constrained in any::<bool>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let k = LightlikeMomentum::new([rat(1), rat(0), rat(0), rat(1)]).unwrap();
        let table = oscillator_table(&k);
        let t = if constrained {
            let mut coords = vec![cx_zero(); invquant::fock::multisets(4, n).len()];
            for b in constrained_basis(n, &k) {
                let c = small_cx(&mut rng);
                for (x, y) in coords.iter_mut().zip(b.coordinates()) {
                    *x = &*x + y * &c;
                }
            }
            SymmetricTensor::from_coordinates(n, &coords).unwrap()
        } else {
            let coords: Vec<ComplexScalar> = (0..invquant::fock::multisets(4, n).len()).map(|_| small_cx(&mut rng)).collect();
            SymmetricTensor::from_coordinates(n, &coords).unwrap()
        };
        let physical = constraint_apply(&t.ket(), &k, &table).unwrap().is_zero();
        prop_assert_eq!(physical, t.contract(k.components()).is_zero());
    }
}

#[test]
fn positivity_is_independent_of_the_boost() {
    let k1 = LightlikeMomentum::new([rat(1), rat(0), rat(0), rat(1)]).unwrap();
    let k2 = LightlikeMomentum::new([rat(2), rat(0), rat(0), rat(2)]).unwrap();
    for n in 0..=4 {
        let a = positivity_report(n, &k1).unwrap();
        let b = positivity_report(n, &k2).unwrap();
        assert_eq!(a.inertia, b.inertia);
        assert_eq!(a.n_neg, 0);
    }
}

fn random_state(rng: &mut ChaCha8Rng, modes: &ModeSet) -> FieldState {
    FieldState {
        amplitudes: (0..modes.len())
            .map(|_| {
                (0..modes.components())
                    .map(|_| invquant::scalar::cx(small_rational(rng), small_rational(rng)))
                    .collect()
            })
            .collect(),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn symplectic_form_is_antisymmetric_and_bilinear(seed in any::<u64>(), em in any::<bool>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let kind = if em { FieldKind::Em } else { FieldKind::Scalar { mass: rat(0) } };
        let modes = ModeSet::cubic_stencil(kind).unwrap();
        let (c, d, e) = (random_state(&mut rng, &modes), random_state(&mut rng, &modes), random_state(&mut rng, &modes));
        let lambda = small_rational(&mut rng);
        let w = |x: &FieldState, y: &FieldState| symplectic_eval(&modes, x, y).unwrap();
        prop_assert_eq!(w(&c, &d), -w(&d, &c));
        let combo = c.add(&e.scale(&cx_real(lambda.clone())));
        prop_assert_eq!(w(&combo, &d), w(&c, &d) + lambda * w(&e, &d));
    }

    #[test]
    fn generator_of_time_shift_is_energy(seed in any::<u64>(), em in any::<bool>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let kind = if em { FieldKind::Em } else { FieldKind::Scalar { mass: rat(0) } };
        let modes = ModeSet::cubic_stencil(kind).unwrap();
        let c = random_state(&mut rng, &modes);
        let flow = time_shift_flow(&modes, &c).unwrap();
        prop_assert_eq!(generator(&modes, &c, &flow).unwrap(), energy_momentum(&modes, &c).unwrap()[0].clone());
    }

    #[test]
    fn conserved_currents_radiate_lorentz_fields(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let modes = ModeSet::cubic_stencil(FieldKind::Em).unwrap();
        let currents = modes.modes().iter().map(|m| {
            let mut j: [ComplexScalar; 4] = std::array::from_fn(|_| small_cx(&mut rng));
            // choose J_0 so that k·J = 0
            let spatial = (1..4).fold(cx_zero(), |acc, mu| acc + &j[mu] * &m.k[mu]);
            j[0] = spatial / cx_real(m.k[0].clone());
            j
        }).collect();
        let (a, ok) = radiated_field(&modes, &CurrentModes { currents }).unwrap();
        prop_assert!(ok);
        for (m, amp) in modes.modes().iter().zip(&a.amplitudes) {
            prop_assert!(is_zero(&metric::dot_cx(&m.k, amp)));
        }
    }

    #[test]
    fn energy_signs_follow_polarization(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let modes = ModeSet::cubic_stencil(FieldKind::Em).unwrap();
        let mut spatial = random_state(&mut rng, &modes);
        let mut temporal = random_state(&mut rng, &modes);
        for a in &mut spatial.amplitudes { a[0] = cx_zero(); }
        for a in &mut temporal.amplitudes { for x in &mut a[1..] { *x = cx_zero(); } }
        let p_s = energy_momentum(&modes, &spatial).unwrap()[0].clone();
        let p_t = energy_momentum(&modes, &temporal).unwrap()[0].clone();
        prop_assert!(p_s >= rat(0));
        prop_assert!(p_t <= rat(0));
        prop_assert_eq!(p_t == rat(0), temporal.is_zero());
        prop_assert_eq!(p_s == rat(0), spatial.is_zero());
    }

    #[test]
    fn gauge_projection_is_idempotent_and_invariant(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let modes = ModeSet::cubic_stencil(FieldKind::Em).unwrap();
        let mut c = random_state(&mut rng, &modes);
        let mut shifted = c.clone();
        for (i, m) in modes.modes().iter().enumerate() {
            let spatial = (1..4).fold(cx_zero(), |acc, mu| acc + &c.amplitudes[i][mu] * &m.k[mu]);
            c.amplitudes[i][0] = spatial / cx_real(m.k[0].clone());
            let lambda = small_cx(&mut rng);
            for mu in 0..4 {
                shifted.amplitudes[i][mu] = &c.amplitudes[i][mu] + cx_int(0, 1) * &lambda * &m.k[mu];
            }
        }
        let p = gauge_project(&modes, &c).unwrap();
        prop_assert_eq!(gauge_project(&modes, &p).unwrap(), p.clone());
        prop_assert_eq!(gauge_project(&modes, &shifted).unwrap(), p);
    }

    #[test]
    fn little_group_round_trip(phi in -3.1f64..3.1, alpha in -2.0f64..2.0, beta in -2.0f64..2.0, kx in -1.0f64..1.0, ky in -1.0f64..1.0) {
        let norm = (kx * kx + ky * ky + 1.0).sqrt();
        let frame = LightFrame::new([2.0 * norm, 2.0 * kx, 2.0 * ky, 2.0]).unwrap();
        let g = E2Element::new(phi, alpha, beta);
        let l = e2_to_little(&g, &frame);
        prop_assert!(l.validate().is_ok());
        prop_assert!(little_to_e2(&l, &frame).unwrap().distance(&g) < 1e-8);
    }
}

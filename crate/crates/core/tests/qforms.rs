mod common;

use proptest::prelude::*;
use proptest::test_runner::{Config, RngSeed};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use mext_core::abelian::{FinAbGroup, GroupElt, GroupHom};
use mext_core::extensions::abelian_groups_of_order;
use mext_core::qforms::{is_isometry, isometry_search, quad_group, MetricGroup, QuadForm, QZ};

fn config(cases: u32) -> Config {
    Config {
        cases,
        rng_seed: RngSeed::Fixed(0x9f0a),
        failure_persistence: None,
        ..Config::default()
    }
}

fn random_form(seed: u64, max: u64) -> QuadForm {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pool: Vec<FinAbGroup> = (1..=max).flat_map(abelian_groups_of_order).collect();
    let a = &pool[rng.gen_range(0..pool.len())];
    let qg = quad_group(a);
    qg.form_at(&qg.group().from_index(rng.gen_range(0..qg.group().order() as usize)))
}

fn random_metric(seed: u64) -> MetricGroup {
    (0..).find_map(|k| MetricGroup::new(random_form(seed.wrapping_add(k), 32)).ok()).unwrap()
}

fn random_automorphism(a: &FinAbGroup, rng: &mut ChaCha8Rng) -> GroupHom {
    loop {
        let images: Vec<GroupElt> = a
            .moduli()
            .iter()
            .map(|&n| {
                let c: Vec<i64> = a.moduli().iter().map(|&m| rng.gen_range(0..m) * (m / num_integer::gcd(n, m))).collect();
                a.reduce(&c)
            })
            .collect();
        let f = GroupHom::from_images(a.clone(), a.clone(), &images).unwrap();
        if f.is_injective() {
            return f;
        }
    }
}

proptest! {
    #![proptest_config(config(128))]

    #[test]
    fn gauss_law_under_condensation(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (m, h) = common::random_metric_with_isotropic(&mut rng);
        prop_assert_eq!(m.gauss_sum().unwrap().abs_sq, m.order());
        let cond = m.condense(&h).unwrap();
        prop_assert_eq!(cond.metric.order() * h.order() * h.order(), m.order());
        let s = m.gauss_sum().unwrap().value / h.order() as f64;
        prop_assert!((cond.metric.gauss_sum().unwrap().value - s).norm() < 1e-6);
        prop_assert_eq!(cond.metric.central_charge().unwrap(), m.central_charge().unwrap());
    }

    #[test]
    fn quadratic_form_axioms(seed in any::<u64>()) {
        let q = random_form(seed, 32);
        let a = q.group().clone();
        for x in a.elements() {
            prop_assert_eq!(q.q(&a.neg(&x)), q.q(&x));
            prop_assert_eq!(q.q(&a.scale(&x, 3)), q.q(&x).scale(9));
            for y in a.elements() {
                let polar = q.q(&a.add(&x, &y)) - q.q(&x) - q.q(&y);
                prop_assert_eq!(polar, q.b(&x, &y));
                prop_assert_eq!(q.b(&x, &y), q.b(&y, &x));
            }
        }
    }

    #[test]
    fn quad_group_coordinates(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let pool: Vec<FinAbGroup> = (1..=32).flat_map(abelian_groups_of_order).collect();
        let a = &pool[rng.gen_range(0..pool.len())];
        let qg = quad_group(a);
        let n = qg.group().order() as usize;
        let c1 = qg.group().from_index(rng.gen_range(0..n));
        let c2 = qg.group().from_index(rng.gen_range(0..n));
        prop_assert_eq!(qg.coords_of(&qg.form_at(&c1)).unwrap(), c1.clone());
        let sum = qg.form_at(&qg.group().add(&c1, &c2));
        prop_assert_eq!(sum, qg.form_at(&c1).add(&qg.form_at(&c2)).unwrap());
    }

    #[test]
    fn isometry_found_for_pullbacks(seed in any::<u64>()) {
        let m = random_metric(seed);
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x55);
        let f = random_automorphism(m.group(), &mut rng);
        let pulled = m.form().pullback(&f).unwrap();
        prop_assert!(is_isometry(&f, &pulled, m.form()));
        let found = isometry_search(&pulled, m.form(), &[]).unwrap().expect("f itself is an isometry");
        prop_assert!(is_isometry(&found, &pulled, m.form()));
        prop_assert_eq!(MetricGroup::new(pulled).unwrap().central_charge().unwrap(), m.central_charge().unwrap());
    }

    #[test]
    fn charge_is_additive(s1 in any::<u64>(), s2 in any::<u64>()) {
        let (m1, m2) = (random_metric(s1), random_metric(s2));
        let (k1, k2) = (m1.central_charge().unwrap(), m2.central_charge().unwrap());
        prop_assert_eq!(m1.direct_sum(&m2).central_charge().unwrap(), (k1 + k2) % 8);
        prop_assert_eq!(m1.reverse().central_charge().unwrap(), (8 - k1) % 8);
    }

    #[test]
    fn qz_arithmetic(a in -50i64..50, b in 1i64..40, c in -50i64..50, d in 1i64..40) {
        let (x, y) = (QZ::new(a, b), QZ::new(c, d));
        prop_assert_eq!(x + y, y + x);
        prop_assert_eq!(x + y - y, x);
        prop_assert_eq!(x.to_string().parse::<QZ>().unwrap(), x);
        prop_assert_eq!(x.scale(b), QZ::ZERO);
        // exact against the rational a/b + c/d reduced mod 1
        let (num, den) = (a * d + c * b, b * d);
        prop_assert_eq!(x + y, QZ::new(num.rem_euclid(den), den));
    }
}

#[test]
fn gauss_sweep_seeded() {
    common::gauss_sweep(11, 100).unwrap();
}

#[test]
fn non_isometric_forms_are_separated() {
    let z4 = FinAbGroup::new(vec![4]).unwrap();
    let q = |k| QuadForm::diagonal(&z4, vec![QZ::new(k, 8)]).unwrap();
    for (i, j, iso) in [(1, 1, true), (1, 3, false), (1, 5, false), (1, 9, true), (3, 7, false)] {
        assert_eq!(isometry_search(&q(i), &q(j), &[]).unwrap().is_some(), iso, "{i}/8 vs {j}/8");
    }
}

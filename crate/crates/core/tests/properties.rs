use proptest::prelude::*;

use zariski_core::fixtures;
use zariski_core::toric::{count_h0, oracle_volume};
use zariski_core::verify::{boundary_subsets, divisor_grid};
use zariski_core::{
    augmented_contains_curve, decompose, volume, NSClass, Rational, SurfaceModel, ToricDivisor,
    ToricSurface,
};

fn surface(i: usize) -> ToricSurface {
    fixtures::all().swap_remove(i)
}

fn rational() -> impl Strategy<Value = Rational> {
    (-12i64..=12, 1i64..=6).prop_map(|(p, q)| Rational::new(p, q))
}

fn nonneg() -> impl Strategy<Value = Rational> {
    (0i64..=12, 1i64..=6).prop_map(|(p, q)| Rational::new(p, q))
}

fn class(rank: usize) -> impl Strategy<Value = NSClass> {
    proptest::collection::vec(rational(), rank).prop_map(NSClass::new)
}

/// Nonnegative combination of the generators.
fn effective(m: &SurfaceModel, coeffs: &[Rational]) -> NSClass {
    m.curves()
        .iter()
        .zip(coeffs)
        .fold(NSClass::zero(m.rank()), |acc, (c, a)| acc.add_scaled(a, &c.cls))
}

fn nef(m: &SurfaceModel, coeffs: &[Rational]) -> NSClass {
    m.nef_cone_rays()
        .iter()
        .zip(coeffs)
        .fold(NSClass::zero(m.rank()), |acc, (r, a)| acc.add_scaled(a, r))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn pairing_is_symmetric_and_bilinear(
        i in 0usize..4,
        a in class(2), b in class(2), c in class(2), s in rational(),
    ) {
        let m = surface(i).model;
        let r = m.rank();
        let [a, b, c] = [a, b, c].map(|x| NSClass::new(x.coords()[..r].to_vec()));
        prop_assert_eq!(m.pair(&a, &b).unwrap(), m.pair(&b, &a).unwrap());
        let lhs = m.pair(&a.add_scaled(&s, &b), &c).unwrap();
        let rhs = m.pair(&a, &c).unwrap() + &s * m.pair(&b, &c).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn decomposition_axioms(i in 0usize..4, coeffs in proptest::collection::vec(nonneg(), 4), lambda in (1i64..=9, 1i64..=4)) {
        let m = surface(i).model;
        let d = effective(&m, &coeffs);
        let z = decompose(&m, &d).unwrap();
        prop_assert_eq!(&z.positive + &z.negative_class(), d.clone());
        prop_assert!(m.is_nef(&z.positive).unwrap());
        for t in &z.negative {
            prop_assert!(t.coefficient.is_positive());
            prop_assert!(m.pair(&z.positive, &t.curve.cls).unwrap().is_zero());
        }
        let again = decompose(&m, &z.positive).unwrap();
        prop_assert_eq!(&again.positive, &z.positive);
        prop_assert!(again.negative.is_empty());
        let l = Rational::new(lambda.0, lambda.1);
        let zl = decompose(&m, &d.scale(&l)).unwrap();
        prop_assert_eq!(zl.positive, z.positive.scale(&l));
    }

    /// Every nef class below D lies below P_σ(D).
    #[test]
    fn positive_part_is_maximal(
        i in 0usize..4,
        q in proptest::collection::vec(nonneg(), 4),
        f in proptest::collection::vec(nonneg(), 4),
    ) {
        let m = surface(i).model;
        let qn = nef(&m, &q);
        let d = &qn + &effective(&m, &f);
        let z = decompose(&m, &d).unwrap();
        prop_assert!(m.is_pseudo_effective(&(&z.positive - &qn)).unwrap().is_some());
    }

    #[test]
    fn h0_invariant_under_linear_equivalence(
        i in 0usize..4,
        coeffs in proptest::collection::vec(-3i64..=5, 4),
        u in (-3i64..=3, -3i64..=3),
    ) {
        let s = surface(i);
        let n = s.fan.len();
        let t = ToricDivisor(coeffs[..n].to_vec());
        let shifted = ToricDivisor(
            s.fan.rays().iter().zip(t.coeffs()).map(|(v, d)| d + u.0 * v[0] + u.1 * v[1]).collect(),
        );
        prop_assert_eq!(count_h0(&s.fan, &t), count_h0(&s.fan, &shifted));
        prop_assert_eq!(oracle_volume(&s.fan, &t), oracle_volume(&s.fan, &shifted));
    }

    #[test]
    fn h0_monotone_under_effective_addition(
        i in 0usize..4,
        coeffs in proptest::collection::vec(-3i64..=5, 4),
        extra in proptest::collection::vec(0i64..=3, 4),
    ) {
        let s = surface(i);
        let n = s.fan.len();
        let t = ToricDivisor(coeffs[..n].to_vec());
        let e = ToricDivisor(extra[..n].to_vec());
        prop_assert!(count_h0(&s.fan, &t.combine(1, &e, 1)) >= count_h0(&s.fan, &t));
    }

    #[test]
    fn engine_volume_matches_polygon(i in 0usize..4, coeffs in proptest::collection::vec(-6i64..=9, 4)) {
        let s = surface(i);
        let t = ToricDivisor(coeffs[..s.fan.len()].to_vec());
        let d = s.class_of(&t).unwrap();
        prop_assert_eq!(volume(&s.model, &d).unwrap(), oracle_volume(&s.fan, &t));
    }
}

/// Converse of the augmented-locus criterion, on the finite grid m, r ≤ 10:
/// a component outside B₊(D) gains sections for some (m, r).
#[test]
fn augmented_locus_converse_on_grid() {
    for s in fixtures::all() {
        let n = s.fan.len();
        for t in divisor_grid(n, 0, 2) {
            let d = s.class_of(&t).unwrap();
            if !volume(&s.model, &d).unwrap().is_positive() {
                continue;
            }
            for sub in boundary_subsets(n, 1) {
                let c = s.curve_for_ray(sub[0]);
                if augmented_contains_curve(&s.model, &d, c).unwrap() {
                    continue;
                }
                let e = ToricDivisor::reduced(n, &sub);
                let grows = (1..=10).any(|m| {
                    let base = count_h0(&s.fan, &t.scale(m));
                    (1..=10).any(|r| count_h0(&s.fan, &t.scale(m).combine(1, &e, r)) > base)
                });
                assert!(grows, "D = {:?}, E = {}", t.coeffs(), c.name);
            }
        }
    }
}

/// Converse of the negative-part criterion: when E ≰ N_σ(D), some m ≤ 12 has
/// h⁰(mD − mE) < h⁰(mD).
#[test]
fn negative_part_converse_on_grid() {
    for s in fixtures::all() {
        let n = s.fan.len();
        for t in divisor_grid(n, 0, 2) {
            let d = s.class_of(&t).unwrap();
            let z = decompose(&s.model, &d).unwrap();
            if !volume(&s.model, &d).unwrap().is_positive() {
                continue;
            }
            for sub in boundary_subsets(n, 1) {
                let c = s.curve_for_ray(sub[0]);
                if z.coefficient(&c.name) >= Rational::one() {
                    continue;
                }
                let e = ToricDivisor::reduced(n, &sub);
                let drops = (1..=12).any(|m| {
                    count_h0(&s.fan, &t.scale(m).combine(1, &e, -m)) < count_h0(&s.fan, &t.scale(m))
                });
                assert!(drops, "D = {:?}, E = {}", t.coeffs(), c.name);
            }
        }
    }
}

use std::f64::consts::PI;

use proptest::prelude::*;
use yamabe_core::aggregate::{builtin_registry, sigma_spin_lower, SigmaVariant};
use yamabe_core::codim3::{self, Codim3, FD_STEP, ROOT_EXCLUSION};
use yamabe_core::constants::{sphere_volume, yamabe_sphere};
use yamabe_core::model_space::{
    codim_condition, ls_invertible, q_star_mm2, sinh_c, LsExponent, ModelSpaceParams,
};
use yamabe_core::relations::{
    BoundFact, CPoint, CScope, Direction, Family, NodeKey, RelationGraph,
};

#[test]
fn sinh_c_taylor_bound_near_zero() {
    for i in 0..=100 {
        let eps = 1e-3 * f64::from(i) / 100.0;
        for j in 0..=100 {
            let r = 10.0 * f64::from(j) / 100.0;
            let bound = r.powi(3) * eps * eps / 6.0 * (1.0 + eps * r);
            assert!(
                (sinh_c(eps, r) - r).abs() <= bound + 1e-15 * r,
                "eps = {eps}, r = {r}"
            );
        }
    }
}

#[test]
fn codim_condition_forms_agree_exhaustively() {
    // codim_condition asserts agreement of its two forms internally.
    let mut held = 0usize;
    for m in 2..=61u32 {
        for k in 0..m {
            for i in 0..=1000 {
                let p = ModelSpaceParams::new(m, k, f64::from(i) / 1000.0).unwrap();
                held += usize::from(codim_condition(&p));
            }
        }
    }
    assert!(held > 0);
}

#[test]
fn yamabe_sphere_increases_with_dimension() {
    for m in 3..40 {
        assert!(
            yamabe_sphere(m + 1).unwrap() > yamabe_sphere(m).unwrap(),
            "m = {m}"
        );
    }
}

#[test]
fn volume_recursion() {
    for m in 3..=40 {
        let lhs = sphere_volume(m).unwrap();
        let rhs = 2.0 * PI * sphere_volume(m - 2).unwrap() / f64::from(m - 1);
        assert!((lhs - rhs).abs() <= 1e-14 * lhs, "m = {m}");
    }
}

#[test]
fn q_star_mm2_infimum_is_zero() {
    for m in 3..=40 {
        assert_eq!(q_star_mm2(m, 0.0).unwrap(), 0.0);
        let mut prev = 0.0;
        for i in 1..=1000 {
            let v = q_star_mm2(m, f64::from(i) / 1000.0).unwrap();
            assert!(v > prev, "m = {m}");
            prev = v;
        }
    }
}

#[test]
fn f_sign_matches_finite_difference_derivative() {
    for m in 6..=40 {
        let model = Codim3::new(m).unwrap();
        let f = model.f_poly();
        let root = model.root().unwrap();
        for i in 1..2000 {
            let s = f64::from(i) / 2000.0;
            if (s - root).abs() < ROOT_EXCLUSION || s + FD_STEP > 1.0 {
                continue;
            }
            let fd = (model.l(s + FD_STEP) - model.l(s - FD_STEP)) / (2.0 * FD_STEP);
            assert_eq!(f.evaluate(s) > 0.0, fd > 0.0, "m = {m}, s = {s}");
        }
    }
}

#[test]
fn ordering_chain_and_table_monotonicity() {
    let mut prev = 0.0;
    for m in 6..=40 {
        let model = Codim3::new(m).unwrap();
        let inf = model.infimum().unwrap().value;
        let closed = model.closed_form_bound().unwrap();
        assert!(0.0 < closed && closed <= inf, "m = {m}");
        assert!(inf <= model.qhat0().min(model.q1()), "m = {m}");
        assert!(inf <= yamabe_sphere(m).unwrap(), "m = {m}");
        if m >= codim3::TABLE3_FIRST_M {
            assert!(inf > prev, "m = {m}");
        }
        prev = inf;
    }
}

#[test]
fn sigma_minimum_never_undercuts_known_terms() {
    let registry = builtin_registry().unwrap();
    for m in 5..=15 {
        for variant in [
            SigmaVariant::SimplyConnected,
            SigmaVariant::FundamentalGroup,
        ] {
            let expr = sigma_spin_lower(m, variant, &registry).unwrap();
            assert!(!expr.terms.is_empty());
            let known = expr.known_minimum();
            if let Some(v) = expr.evaluate() {
                assert_eq!(Some(v), known, "m = {m}: {expr}");
            }
            if let Some(k) = known {
                for t in &expr.terms {
                    if let Some(x) = t.value.as_f64() {
                        assert!(k <= x, "m = {m}: {expr}");
                    }
                }
            }
        }
    }
}

proptest! {
    #[test]
    fn ls_invertible_is_monotone(
        m in 2u32..40,
        k_frac in 0.0f64..1.0,
        c in 0.0f64..=1.0,
        c_frac in 0.0f64..=1.0,
        s in 1.0f64..50.0,
        t in 0.0f64..=1.0,
    ) {
        let k = ((f64::from(m) * k_frac) as u32).min(m - 1);
        let p = ModelSpaceParams::new(m, k, c).unwrap();
        if ls_invertible(&p, LsExponent::Finite(s)).unwrap() {
            let smaller_c = ModelSpaceParams::new(m, k, c * c_frac).unwrap();
            prop_assert!(ls_invertible(&smaller_c, LsExponent::Finite(s)).unwrap());
            // Move 1/s toward 1/2, shrinking |1/s − 1/2|.
            let inv = 1.0 / s;
            let closer = 1.0 / (inv + t * (0.5 - inv));
            prop_assert!(ls_invertible(&p, LsExponent::Finite(closer)).unwrap());
        }
    }

    #[test]
    fn infinite_upper_bound_absorbs_finite_lower_bounds(m in 3u32..10, lower in 0.0f64..1e6) {
        let mut g = RelationGraph::with_templates(Vec::new(), vec![CPoint::ZERO], m, m).unwrap();
        let k = m - 1;
        g.assert_fact(BoundFact::new(Family::LambdaTilde, m, k, CScope::None, Direction::Equal, f64::INFINITY, "a")).unwrap();
        g.assert_fact(BoundFact::new(Family::LambdaTilde, m, k, CScope::None, Direction::Lower, lower, "b")).unwrap();
        prop_assert!(g.check_consistency().consistent);
        let iv = g.interval(&NodeKey::lambda(Family::LambdaTilde, m, k)).unwrap();
        prop_assert_eq!(iv.lo, f64::INFINITY);
    }

    #[test]
    fn general_bound_matches_l_on_codimension_three(m in 6u32..40, c in 0.0f64..=1.0) {
        let model = Codim3::new(m).unwrap();
        let p = ModelSpaceParams::new(m, m - 3, c).unwrap();
        let g = codim3::general_lower_bound(&p, model.qhat0()).unwrap();
        let l = model.l(c * c);
        prop_assert!((g - l).abs() <= 1e-12 * l);
    }
}

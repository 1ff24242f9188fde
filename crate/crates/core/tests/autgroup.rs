use std::collections::BTreeMap;

use wsuper::autgroup::*;
use wsuper::exactnum::{Field, RatFunc, Rational, ScalarMode};
use wsuper::superalgebra::{AlgebraConfig, BasisIndex, Element, Family, HalfInt, Window};
use wsuper::Error;

fn q(s: &str) -> Rational {
    s.parse().unwrap()
}

fn cfg(s: HalfInt, l: &str) -> AlgebraConfig<Rational> {
    AlgebraConfig::new(s, ScalarMode::Specialized(q(l))).unwrap()
}

fn sigma(c: &AlgebraConfig<Rational>, eps: i64, alpha: &str, mu: &str, beta: &str, gamma: &str, x: &str) -> AutMap<Rational> {
    let p = SigmaParams::new(c.s, eps, q(alpha), q(mu), q(beta), q(gamma), q(x)).unwrap();
    make_sigma(c, p, Window(6)).unwrap()
}

#[test]
fn sigma_at_lambda_zero_is_a_homomorphism() {
    let c = cfg(HalfInt::ZERO, "0");
    let f = sigma(&c, -1, "2", "1", "3", "5", "1");
    assert!(verify_homomorphism(&c, &f, Window(6)).unwrap().is_empty());
    let c = cfg(HalfInt::HALF, "0");
    let f = sigma(&c, -1, "4", "1", "3", "5", "2");
    assert!(verify_homomorphism(&c, &f, Window(6)).unwrap().is_empty());
}

#[test]
fn sigma_with_mu_eps_one_survives_nonzero_lambda() {
    let c = cfg(HalfInt::ZERO, "1");
    let f = sigma(&c, 1, "3", "1", "0", "2", "1");
    assert!(verify_homomorphism(&c, &f, Window(6)).unwrap().is_empty());
}

#[test]
fn beta_is_free_when_lambda_is_nonzero() {
    for s in [HalfInt::ZERO, HalfInt::HALF] {
        let c = cfg(s, "1");
        let x = if s.is_integer() { "1" } else { "2" };
        let f = sigma(&c, 1, "4", "1", "-1/2", "3", x);
        assert!(verify_homomorphism(&c, &f, Window(6)).unwrap().is_empty());
    }
}

#[test]
fn symbolic_lambda_sigma() {
    let c = AlgebraConfig::<RatFunc>::new(HalfInt::HALF, ScalarMode::Symbolic).unwrap();
    let r = |s: &str| -> RatFunc { s.parse().unwrap() };
    let p = SigmaParams::new(c.s, 1, r("9"), r("1"), r("l"), r("1/(l+1)"), r("-3")).unwrap();
    let f = make_sigma(&c, p, Window(4)).unwrap();
    assert!(verify_homomorphism(&c, &f, Window(4)).unwrap().is_empty());
}

#[test]
fn epsilon_minus_one_fails_for_nonzero_lambda() {
    let c = cfg(HalfInt::ZERO, "1");
    let f = sigma(&c, -1, "2", "1", "0", "0", "1");
    let v = verify_homomorphism(&c, &f, Window(6)).unwrap();
    assert!(!v.is_empty());
    assert!(v.iter().any(|v| v.x.family == Family::L && v.y.family == Family::G));
    let checks = check_sigma_constraints(&c, &SigmaParams::new(c.s, -1, q("2"), q("1"), q("0"), q("0"), q("1")).unwrap(), Window(6)).unwrap();
    let eps_check = checks.iter().find(|c| c.name.starts_with("l (2(1 - mu eps)")).unwrap();
    assert!(!eps_check.passed);
}

#[test]
fn printed_g_coefficient_is_not_a_homomorphism() {
    let c = cfg(HalfInt::ZERO, "0");
    let p = SigmaParams::new(c.s, 1, q("2"), q("1"), q("3"), q("0"), q("1")).unwrap();
    let good = make_sigma(&c, p.clone(), Window(4)).unwrap();
    let mut images = good.tabulate().unwrap();
    for (b, img) in images.iter_mut() {
        if b.family == Family::G {
            let k = b.index.as_int().unwrap();
            let mut e = img.family_part(Family::G);
            e.add_term(b.with_family(Family::H), p.printed_g_h_coefficient(c.s, k));
            *img = e;
        }
    }
    let printed = AutMap::explicit(&c, Window(4), images).unwrap();
    let v = verify_homomorphism(&c, &printed, Window(4)).unwrap();
    assert!(v.iter().any(|v| v.x.family == Family::L && v.y.family == Family::G));
    assert!(verify_homomorphism(&c, &good, Window(4)).unwrap().is_empty());
}

#[test]
fn constraint_reports() {
    let c0 = cfg(HalfInt::ZERO, "0");
    let p = SigmaParams::new(c0.s, -1, q("1/3"), q("4"), q("3"), q("-1/2"), q("-8")).unwrap();
    assert!(check_sigma_constraints(&c0, &p, Window(5)).unwrap().iter().all(|c| c.passed));

    let c1 = cfg(HalfInt::ZERO, "1");
    let p = SigmaParams::new(c1.s, 1, q("1"), q("4"), q("0"), q("0"), q("8")).unwrap();
    let checks = check_sigma_constraints(&c1, &p, Window(5)).unwrap();
    assert!(!checks.iter().find(|c| c.name == "l (1/mu - 1) = 0").unwrap().passed);

    let p = SigmaParams::new(c1.s, 1, q("3"), q("1"), q("2"), q("7"), q("-1")).unwrap();
    assert!(check_sigma_constraints(&c1, &p, Window(5)).unwrap().iter().all(|c| c.passed));

    let bad_x = SigmaParams::new_unchecked(1, q("1"), q("1"), q("0"), q("0"), q("2"));
    let checks = check_sigma_constraints(&c0, &bad_x, Window(2)).unwrap();
    assert!(!checks.iter().find(|c| c.name == "d_H(s)^2 = alpha^(2s) mu^3").unwrap().passed);
}

#[test]
fn perturbed_x_breaks_g_g() {
    let c = cfg(HalfInt::ZERO, "0");
    let p = SigmaParams::new_unchecked(1, q("2"), q("1"), q("0"), q("0"), q("2"));
    let f = make_sigma_unchecked(&c, p, Window(4));
    let v = verify_homomorphism(&c, &f, Window(4)).unwrap();
    assert!(v.iter().any(|v| v.x.family == Family::G && v.y.family == Family::G));
}

#[test]
fn inner_group_is_abelian() {
    let c = cfg(HalfInt::HALF, "1");
    let e = make_inner_exp(&c, q("2"), 1, Window(5));
    let f = make_inner_exp(&c, q("-1/3"), -2, Window(5));
    let ef = compose(&e, &f).unwrap();
    let fe = compose(&f, &e).unwrap();
    assert!(ef.agrees_with(&fe).unwrap());
    assert_eq!(ef.provenance, fe.provenance);
}

#[test]
fn decomposition() {
    let c = cfg(HalfInt::ZERO, "0");
    let e = make_inner_exp(&c, q("5/2"), -3, Window(4));
    assert_eq!(decompose_into_inner_group(&c, &e).unwrap().factors, vec![(q("5/2"), -3)]);
    let e0 = make_inner_exp(&c, q("7"), 0, Window(4));
    assert_eq!(decompose_into_inner_group(&c, &e0).unwrap().factors, vec![(q("7"), 0)]);

    let s = sigma(&c, 1, "2", "1", "0", "0", "1");
    match decompose_into_inner_group(&c, &s) {
        Err(Error::NotInJ { source_index, .. }) => assert_eq!(source_index, "L[-6]"),
        other => panic!("unexpected {other:?}"),
    }
}

#[test]
fn conjugation_lands_in_inner_group() {
    // sigma (id + a ad I_k) sigma^-1 = id + a alpha^k mu ad I_{eps k}
    for (s, eps, alpha, mu, x) in [
        (HalfInt::ZERO, -1, "2", "4", "8"),
        (HalfInt::ZERO, 1, "1/3", "1", "-1"),
        (HalfInt::HALF, -1, "4", "1", "2"),
    ] {
        let c = cfg(s, "0");
        let sg = sigma(&c, eps, alpha, mu, "3", "-1/2", x);
        let k = 2;
        let e = make_inner_exp(&c, q("3"), k, Window(6));
        let conj = compose(&sg, &compose(&e, &invert(&sg).unwrap()).unwrap()).unwrap();
        let d = decompose_into_inner_group(&c, &conj).unwrap();
        let want = q("3").mul(&q(alpha).pow(k).unwrap()).mul(&q(mu));
        assert_eq!(d.factors, vec![(want, eps * k)]);
    }
}

#[test]
fn composite_of_sigmas_is_a_homomorphism() {
    let c = cfg(HalfInt::ZERO, "0");
    let a = sigma(&c, -1, "2", "4", "3", "0", "-8");
    let b = sigma(&c, 1, "1/3", "1", "-1/2", "3", "1");
    let ab = compose(&a, &b).unwrap();
    assert!(verify_homomorphism(&c, &ab, Window(6)).unwrap().is_empty());
    let back = compose(&ab, &invert(&ab).unwrap()).unwrap();
    assert!(back.agrees_with(&AutMap::identity(&c, Window(6))).unwrap());
}

#[test]
fn violations_serialize_as_strings() {
    let c = cfg(HalfInt::ZERO, "1");
    let f = sigma(&c, -1, "1", "1", "0", "0", "1");
    let v = verify_homomorphism(&c, &f, Window(2)).unwrap();
    let json = serde_json::to_value(&v[0]).unwrap();
    let keys: Vec<&String> = json.as_object().unwrap().keys().collect();
    assert_eq!(keys, ["lhs", "rhs", "x", "y"]);
    assert!(json["x"].as_str().unwrap().starts_with('L'));
}

#[test]
fn parity_breaking_map_is_flagged() {
    let c = cfg(HalfInt::ZERO, "0");
    let mut images = BTreeMap::new();
    for b in Window(1).basis(c.s) {
        images.insert(b, Element::basis(b));
    }
    images.insert(BasisIndex::l(0), Element::from_terms([(BasisIndex::l(0), q("1")), (BasisIndex::g(0), q("1"))]));
    let f = AutMap::explicit(&c, Window(1), images).unwrap();
    let v = verify_homomorphism(&c, &f, Window(1)).unwrap();
    assert!(v.iter().any(|v| v.x == BasisIndex::l(0) && v.y == BasisIndex::l(0)));
}

use proptest::prelude::*;

use wsuper::exactla::{nullspace, rank, rref, Matrix};
use wsuper::exactnum::{Field, RatFunc, Rational, ScalarMode};
use wsuper::superalgebra::{AlgebraConfig, BasisIndex, Element, Family, HalfInt, Window};

fn small_rational() -> impl Strategy<Value = Rational> {
    (-4i64..=4, 1i64..=3).prop_map(|(n, d)| Rational::new(n, d).unwrap())
}

fn matrix() -> impl Strategy<Value = Matrix<Rational>> {
    (1usize..6, 1usize..7).prop_flat_map(|(r, c)| {
        prop::collection::vec(prop::collection::vec(small_rational(), c), r)
            .prop_map(|rows| Matrix::from_dense(&rows).unwrap())
    })
}

fn basis_index(s: HalfInt) -> impl Strategy<Value = BasisIndex> {
    (0usize..4, -3i64..=3).prop_map(move |(f, n)| {
        let fam = Family::ALL[f];
        match fam {
            Family::L | Family::I => BasisIndex::new(fam, HalfInt::from_int(n)),
            _ => BasisIndex::new(fam, HalfInt::from_int(n) + s),
        }
    })
}

fn element(s: HalfInt) -> impl Strategy<Value = Element<RatFunc>> {
    prop::collection::vec((basis_index(s), -3i64..=3), 0..4).prop_map(|terms| {
        Element::from_terms(terms.into_iter().map(|(b, c)| (b, RatFunc::from_int(c))))
    })
}

fn half() -> impl Strategy<Value = HalfInt> {
    prop_oneof![Just(HalfInt::ZERO), Just(HalfInt::HALF)]
}

proptest! {
    #[test]
    fn rank_plus_nullity_is_cols(m in matrix()) {
        prop_assert_eq!(rank(&m) + nullspace(&m).dim(), m.cols());
    }

    #[test]
    fn nullspace_vectors_are_annihilated(m in matrix()) {
        for v in nullspace(&m).vectors() {
            prop_assert!(m.mul_vec(v).unwrap().iter().all(Field::is_zero));
        }
    }

    #[test]
    fn rref_is_idempotent(m in matrix()) {
        let (r, p) = rref(&m);
        let (r2, p2) = rref(&r);
        prop_assert_eq!(&r, &r2);
        prop_assert_eq!(p, p2);
        prop_assert_eq!(rref(&m).0, r);
    }

    #[test]
    fn bracket_is_super_skew(s in half(), x in basis_index(HalfInt::ZERO), y in basis_index(HalfInt::ZERO)) {
        let cfg = AlgebraConfig::<RatFunc>::new(s, ScalarMode::Symbolic).unwrap();
        let fix = |b: BasisIndex| if b.is_valid_for(s) { b } else { b.shifted(s) };
        let (x, y) = (fix(x), fix(y));
        let xy = cfg.bracket_basis(x, y).unwrap();
        let yx = cfg.bracket_basis(y, x).unwrap();
        let sign = RatFunc::from_int(-x.parity().sign(y.parity()));
        prop_assert_eq!(xy, yx.scale(&sign));
    }

    #[test]
    fn bracket_is_bilinear(s in half(), a in element(HalfInt::ZERO), b in element(HalfInt::ZERO), c in element(HalfInt::ZERO)) {
        let cfg = AlgebraConfig::<RatFunc>::new(s, ScalarMode::Symbolic).unwrap();
        let fix = |e: Element<RatFunc>| Element::from_terms(e.iter().map(|(b, c)| (if b.is_valid_for(s) { *b } else { b.shifted(s) }, c.clone())));
        let (a, b, c) = (fix(a), fix(b), fix(c));
        let two = RatFunc::from_int(2);
        let lhs = cfg.bracket(&a.add(&b.scale(&two)), &c).unwrap();
        let rhs = cfg.bracket(&a, &c).unwrap().add(&cfg.bracket(&b, &c).unwrap().scale(&two));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn element_text_round_trips(s in half(), e in element(HalfInt::ZERO)) {
        let fix = |e: Element<RatFunc>| Element::from_terms(e.iter().map(|(b, c)| (if b.is_valid_for(s) { *b } else { b.shifted(s) }, c.clone())));
        let e = fix(e);
        let back = Element::parse(&e.to_string(), s, &RatFunc::var()).unwrap();
        prop_assert_eq!(back, e);
    }

    #[test]
    fn specialization_commutes_with_arithmetic(a in -5i64..=5, b in -5i64..=5, at in small_rational()) {
        let l = RatFunc::var();
        let p = l.mul(&l).add(&RatFunc::from_int(a));
        let q = l.sub(&RatFunc::from_int(b));
        if let (Ok(pq), Ok(qv)) = (p.div(&q), q.specialize(&at)) {
            if !qv.is_zero() {
                let direct = p.specialize(&at).unwrap().div(&qv).unwrap();
                prop_assert_eq!(pq.specialize(&at).unwrap(), direct);
            }
        }
    }
}

#[test]
fn jacobi_with_specialized_lambda() {
    for l in ["1", "-2", "2/3"] {
        for s in [HalfInt::ZERO, HalfInt::HALF] {
            let cfg = AlgebraConfig::<Rational>::new(s, l.parse().unwrap()).unwrap();
            assert!(wsuper::superalgebra::check_super_jacobi(&cfg, Window(2)).is_empty());
        }
    }
}

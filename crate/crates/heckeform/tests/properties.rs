//! Property tests for the algebraic laws the exact engine relies on.

use heckeform::matrix::{self, RingMatrix};
use heckeform::poly::{LaurentPoly, Rational, RingHom, Symbol};
use proptest::prelude::*;

fn coeff() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| Rational::new(n.into(), d.into()))
}

/// Random Laurent polynomial in z, E, C with small support.
fn poly() -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec((coeff(), -3i64..=3, 0i64..=2, 0i64..=2), 0..4).prop_map(|terms| {
        let mut p = LaurentPoly::zero();
        for (c, ze, ee, ce) in terms {
            let t =
                LaurentPoly::term(c, [(Symbol::Z, ze), (Symbol::E, ee), (Symbol::C, ce)]).unwrap();
            p = &p + &t;
        }
        p
    })
}

/// Random polynomial (no negative z powers), usable as any symbol's image.
fn poly_nonneg() -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec((coeff(), 0i64..=2, 0i64..=2), 0..3).prop_map(|terms| {
        let mut p = LaurentPoly::zero();
        for (c, ze, ee) in terms {
            let t = LaurentPoly::term(c, [(Symbol::Z, ze), (Symbol::E, ee)]).unwrap();
            p = &p + &t;
        }
        p
    })
}

fn small_matrix() -> impl Strategy<Value = RingMatrix> {
    (1usize..=3).prop_flat_map(|n| {
        prop::collection::vec(-4i64..=4, n * n).prop_map(move |vals| {
            RingMatrix::from_fn(n, n, |i, j| LaurentPoly::from_int(vals[i * n + j]))
        })
    })
}

proptest! {
    #[test]
    fn addition_associative(a in poly(), b in poly(), c in poly()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
    }

    #[test]
    fn multiplication_commutative(a in poly(), b in poly()) {
        prop_assert_eq!(&a * &b, &b * &a);
    }

    #[test]
    fn multiplication_distributes(a in poly(), b in poly(), c in poly()) {
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
    }

    #[test]
    // Polynomial inputs only: a non-monomial z-image cannot be raised to a
    // negative power inside the ring.
    fn substitution_is_homomorphic(a in poly_nonneg(), b in poly_nonneg(), ze in poly_nonneg(), ee in poly_nonneg()) {
        let h = RingHom::new().with(Symbol::Z, ze).with(Symbol::E, ee);
        let lhs_mul = (&a * &b).substitute(&h).unwrap();
        let rhs_mul = &a.substitute(&h).unwrap() * &b.substitute(&h).unwrap();
        prop_assert_eq!(lhs_mul, rhs_mul);
        let lhs_add = (&a + &b).substitute(&h).unwrap();
        let rhs_add = &a.substitute(&h).unwrap() + &b.substitute(&h).unwrap();
        prop_assert_eq!(lhs_add, rhs_add);
    }

    #[test]
    fn z_inversion_is_involution(p in poly()) {
        let h = RingHom::new().with(Symbol::Z, -&LaurentPoly::z_pow(-1));
        let twice = p.substitute(&h).unwrap().substitute(&h).unwrap();
        prop_assert_eq!(twice, p);
    }

    #[test]
    fn char_poly_invariant_under_transpose(m in small_matrix()) {
        prop_assert_eq!(
            matrix::char_poly(&m).unwrap(),
            matrix::char_poly(&m.transpose()).unwrap()
        );
    }
}

#[test]
fn pascal_two_parameter_law() {
    let u = LaurentPoly::symbol(Symbol::U);
    let v = LaurentPoly::symbol(Symbol::V);
    for r in 0..=8 {
        let lhs = &matrix::pascal(r, &u) * &matrix::pascal(r, &v);
        let rhs = matrix::pascal(r, &(&u + &v));
        assert_eq!(lhs, rhs, "r = {r}");
    }
}

#[test]
fn creation_nilpotency_index() {
    for r in 0..=10usize {
        let a = matrix::creation(r, &LaurentPoly::zero());
        assert!(a.pow((r + 1) as u32).is_zero(), "A_{r}^{} != 0", r + 1);
        if r > 0 {
            assert!(!a.pow(r as u32).is_zero(), "A_{r}^{r} == 0 too early");
        }
    }
}

#[test]
fn exp_of_scaled_creation_is_pascal() {
    let z = LaurentPoly::symbol(Symbol::Z);
    for r in 0..=8usize {
        let za = matrix::creation(r, &LaurentPoly::zero()).scale(&z);
        let exp = matrix::nilpotent_exp(&za, (r + 1) as u32).unwrap();
        assert_eq!(exp, matrix::pascal(r, &z), "r = {r}");
    }
}

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use crate::algebra::{
    monomials_of_degree, parse_poly, univariate_gcd, LinearSubstitution, Matrix, MultiPoly, PrimeField, Ring,
    Vars, Q,
};
use crate::comitants::{hessian_form, jacobian, polar, transvectant, Form};
use crate::geometry::{
    harmonic_partner, is_harmonic, richelot_forward, richelot_inverse, same_pair_set, PointPair, ProjectivePoint,
};
use crate::invariants::{
    binary_quartic_i2, binary_quartic_i3, invariance_holds, ternary_cubic_s, ternary_cubic_t,
};
use crate::moduli_maps::assoc::{associated_form, congruence_holds};
use crate::moduli_maps::fiber::fiber_table;
use crate::moduli_maps::RationalMapP1;

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn rational() -> impl Strategy<Value = BigRational> {
    (-30i64..=30, 1i64..=12).prop_map(|(n, d)| q(n, d))
}

fn names(n: usize) -> &'static [&'static str] {
    if n == 2 {
        &["x", "y"]
    } else {
        &["x", "y", "z"]
    }
}

/// A sparse polynomial in `n` variables of total degree at most `max_deg`.
fn poly(n: usize, max_deg: u16) -> impl Strategy<Value = MultiPoly> {
    prop::collection::vec((prop::collection::vec(0..=max_deg, n), rational()), 0..6).prop_map(move |terms| {
        MultiPoly::from_terms(Q, Vars::new(names(n)).unwrap(), terms.into_iter().filter(|(e, _)| {
            e.iter().map(|&x| x as u32).sum::<u32>() <= max_deg as u32
        }))
    })
}

/// A homogeneous form of degree `d` in `n` variables with small integer
/// coefficients, not identically zero.
fn form(n: usize, d: u32) -> impl Strategy<Value = Form> {
    let monos = monomials_of_degree(n, d);
    prop::collection::vec(-5i64..=5, monos.len())
        .prop_filter("nonzero", |c| c.iter().any(|&x| x != 0))
        .prop_map(move |coeffs| {
            let v = Vars::new(names(n)).unwrap();
            let p = MultiPoly::from_terms(Q, v, monos.clone().into_iter().zip(coeffs.into_iter().map(|c| q(c, 1))));
            Form::new(p, (0..n).collect(), d).unwrap()
        })
}

fn substitution(n: usize) -> impl Strategy<Value = LinearSubstitution> {
    prop::collection::vec(-3i64..=3, n * n).prop_filter_map("singular", move |e| {
        let rows = e.chunks(n).map(|r| r.iter().map(|&x| q(x, 1)).collect()).collect();
        LinearSubstitution::new(Matrix::from_rows(Q, rows).ok()?).ok()
    })
}

fn moved(f: &Form, g: &LinearSubstitution) -> Form {
    Form::new(g.apply(f.poly()).unwrap(), f.idx().to_vec(), f.degree()).unwrap()
}

fn pair() -> impl Strategy<Value = PointPair> {
    (-6i64..=6, -6i64..=6, -6i64..=6).prop_filter_map("zero or double", |(a, b, c)| {
        let p = PointPair::new(q(a, 1), q(b, 1), q(c, 1)).ok()?;
        (!p.is_double()).then_some(p)
    })
}

fn p1_map(max_deg: u32) -> impl Strategy<Value = RationalMapP1> {
    (1..=max_deg).prop_flat_map(|d| {
        let k = d as usize + 1;
        (prop::collection::vec(-4i64..=4, k), prop::collection::vec(-4i64..=4, k)).prop_filter_map(
            "degenerate",
            move |(a, b)| {
                let v = Vars::new(&["t0", "t1"]).unwrap();
                let build = |c: &[i64]| {
                    MultiPoly::from_terms(
                        Q,
                        v.clone(),
                        c.iter().enumerate().map(|(i, &x)| (vec![(d as usize - i) as u16, i as u16], q(x, 1))),
                    )
                };
                RationalMapP1::new(build(&a), build(&b)).ok()
            },
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rational_ring_axioms(a in rational(), b in rational(), c in rational()) {
        prop_assert_eq!(Q.mul(&Q.mul(&a, &b), &c), Q.mul(&a, &Q.mul(&b, &c)));
        prop_assert_eq!(Q.add(&Q.add(&a, &b), &c), Q.add(&a, &Q.add(&b, &c)));
        prop_assert_eq!(Q.mul(&a, &Q.add(&b, &c)), Q.add(&Q.mul(&a, &b), &Q.mul(&a, &c)));
        prop_assert_eq!(Q.mul(&a, &b), Q.mul(&b, &a));
        if let Some(inv) = Q.inv(&a) {
            prop_assert_eq!(Q.mul(&a, &inv), Q.one());
        }
    }

    #[test]
    fn prime_field_axioms(p in prop::sample::select(vec![2u64, 101, 10007]), a in any::<i64>(), b in any::<i64>(), c in any::<i64>()) {
        let f = PrimeField::new(p).unwrap();
        let (a, b, c) = (f.from_int(a), f.from_int(b), f.from_int(c));
        prop_assert_eq!(f.mul(&f.mul(&a, &b), &c), f.mul(&a, &f.mul(&b, &c)));
        prop_assert_eq!(f.mul(&a, &f.add(&b, &c)), f.add(&f.mul(&a, &b), &f.mul(&a, &c)));
        prop_assert_eq!(f.add(&a, &f.neg(&a)), f.zero());
        if let Some(inv) = f.inv(&a) {
            prop_assert_eq!(f.mul(&a, &inv), f.one());
        }
    }

    #[test]
    fn print_parse_roundtrip(p in poly(3, 4)) {
        let back = parse_poly(&p.to_string(), p.vars()).unwrap();
        prop_assert_eq!(back, p);
    }

    #[test]
    fn substitution_composes(p in poly(3, 3), g in substitution(3), h in substitution(3)) {
        let lhs = h.apply(&g.apply(&p).unwrap()).unwrap();
        let rhs = g.then(&h).unwrap().apply(&p).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn scalar_substitution_scales_by_power(f in form(3, 3), lam in rational()) {
        prop_assume!(lam != Q.zero());
        let m = Matrix::identity(Q, 3).scale(&lam);
        let g = LinearSubstitution::new(m).unwrap();
        prop_assert_eq!(g.apply(f.poly()).unwrap(), f.poly().scale(&Q.pow(&lam, 3)));
    }

    #[test]
    fn euler_identity(f in form(3, 4)) {
        let v = f.vars().clone();
        let mut acc = MultiPoly::zero(Q, v.clone());
        for i in 0..3 {
            acc = &acc + &(&MultiPoly::var(Q, v.clone(), i) * &f.poly().partial_derivative(i));
        }
        prop_assert_eq!(acc, f.poly().scale_int(4));
    }

    #[test]
    fn nullspace_is_exact(rows in 1usize..5, cols in 1usize..6, entries in prop::collection::vec(-4i64..=4, 30)) {
        let m = Matrix::from_rows(Q, (0..rows).map(|i| (0..cols).map(|j| q(entries[i * cols + j], 1)).collect()).collect()).unwrap();
        let kernel = m.nullspace();
        prop_assert_eq!(kernel.len(), cols - m.rank());
        for v in &kernel {
            prop_assert!(m.mul_vec(v).unwrap().iter().all(|x| *x == Q.zero()));
        }
        let modular = m.nullspace_modular();
        prop_assert_eq!(modular.len(), kernel.len());
        for v in &modular {
            prop_assert!(m.mul_vec(v).unwrap().iter().all(|x| *x == Q.zero()));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn hessian_covariance_binary(f in form(2, 4), g in substitution(2)) {
        let lhs = hessian_form(&moved(&f, &g)).unwrap();
        let rhs = g.apply(hessian_form(&f).unwrap().poly()).unwrap();
        prop_assert_eq!(lhs.poly(), &rhs.scale(&Q.pow(g.det(), 2)));
    }

    #[test]
    fn hessian_covariance_ternary(f in form(3, 3), g in substitution(3)) {
        let lhs = hessian_form(&moved(&f, &g)).unwrap();
        let rhs = g.apply(hessian_form(&f).unwrap().poly()).unwrap();
        prop_assert_eq!(lhs.poly(), &rhs.scale(&Q.pow(g.det(), 2)));
    }

    #[test]
    fn transvectant_covariance(f in form(2, 4), h in form(2, 3), g in substitution(2), k in 0u32..=3) {
        let lhs = transvectant(&moved(&f, &g), &moved(&h, &g), k).unwrap();
        let rhs = g.apply(transvectant(&f, &h, k).unwrap().poly()).unwrap();
        prop_assert_eq!(lhs.poly(), &rhs.scale(&Q.pow(g.det(), k)));
    }

    #[test]
    fn transvectant_bilinear(f1 in form(2, 4), f2 in form(2, 4), h in form(2, 3), c in rational(), k in 0u32..=3) {
        let sum = Form::new(f1.poly() + &f2.poly().scale(&c), vec![0, 1], 4).unwrap();
        let lhs = transvectant(&sum, &h, k).unwrap();
        let rhs = transvectant(&f1, &h, k).unwrap().poly() + &transvectant(&f2, &h, k).unwrap().poly().scale(&c);
        prop_assert_eq!(lhs.poly(), &rhs);
    }

    #[test]
    fn jacobian_alternates(f in form(2, 3), h in form(2, 4)) {
        let a = jacobian(&[f.poly().clone(), h.poly().clone()], &[0, 1]).unwrap();
        let b = jacobian(&[h.poly().clone(), f.poly().clone()], &[0, 1]).unwrap();
        prop_assert_eq!(a, -b);
    }

    #[test]
    fn polar_at_the_point_itself(f in form(3, 4)) {
        let pol = polar(&f, ["p", "q", "r"]).unwrap();
        let v = pol.vars().clone();
        let images: Vec<MultiPoly> = (0..6).map(|i| MultiPoly::var(Q, v.clone(), i % 3)).collect();
        let contracted = pol.compose(&images).unwrap();
        prop_assert_eq!(contracted, f.poly().reembed(&v).unwrap().scale_int(4));
    }

    #[test]
    fn named_invariants_have_fixed_weight(c in form(3, 3), b in form(2, 4), g3 in substitution(3), g2 in substitution(2)) {
        for inv in [ternary_cubic_s().unwrap(), ternary_cubic_t().unwrap()] {
            prop_assert!(invariance_holds(inv, &c, &g3).unwrap());
        }
        for inv in [binary_quartic_i2().unwrap(), binary_quartic_i3().unwrap()] {
            prop_assert!(invariance_holds(inv, &b, &g2).unwrap());
        }
    }

    #[test]
    fn maps_are_reduced_and_degrees_bounded(f in p1_map(3), g in p1_map(3)) {
        for m in [&f, &g] {
            let d = univariate_gcd(m.num(), m.den()).unwrap();
            prop_assert!(d.is_constant());
        }
        let c = RationalMapP1::compose(&f, &g).unwrap();
        prop_assert!(c.degree() <= f.degree() * g.degree());
        prop_assert_eq!(RationalMapP1::composed_degree_bound(&f, &g), f.degree() * g.degree());
    }

    #[test]
    fn fiber_counts_are_conserved(f in p1_map(4), p in prop::sample::select(vec![7u64, 31, 101])) {
        if let Ok(m) = f.reduce_mod(p) {
            let t = fiber_table(&m);
            prop_assert_eq!(t.counted() + t.indeterminate, t.total);
            prop_assert_eq!(t.total, p + 1);
        }
    }

    #[test]
    fn harmonic_is_symmetric(a in pair(), b in pair()) {
        prop_assert_eq!(is_harmonic(&a, &b), is_harmonic(&b, &a));
    }

    #[test]
    fn harmonic_partner_is_involution(p in pair(), x in -8i64..=8, y in -8i64..=8) {
        let Ok(pt) = ProjectivePoint::from_ints(&[x, y]) else { return Ok(()) };
        let Ok(partner) = harmonic_partner(&p, &pt) else { return Ok(()) };
        let Ok(back) = harmonic_partner(&p, &partner) else { return Ok(()) };
        prop_assert!(back.same_as(&pt));
    }

    #[test]
    fn richelot_inverse_undoes_forward(a in pair(), b in pair(), c in pair()) {
        let input = [a, b, c];
        if let Ok(out) = richelot_forward(&input) {
            prop_assert!(same_pair_set(&richelot_inverse(&out).unwrap(), &input));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn associated_form_degree_and_congruence(f in form(2, 4), l in prop::collection::vec(-6i64..=6, 2)) {
        prop_assume!(l.iter().any(|&x| x != 0));
        if let Ok(r) = associated_form(&f) {
            prop_assert_eq!(r.degree(), 4);
            let ell: Vec<BigRational> = l.iter().map(|&x| q(x, 1)).collect();
            prop_assert!(congruence_holds(&f, &r, &ell).unwrap());
        }
    }

    #[test]
    fn associated_form_of_cubics(f in form(3, 3), l in prop::collection::vec(-6i64..=6, 3)) {
        prop_assume!(l.iter().any(|&x| x != 0));
        if let Ok(r) = associated_form(&f) {
            prop_assert_eq!(r.degree(), 3);
            let ell: Vec<BigRational> = l.iter().map(|&x| q(x, 1)).collect();
            prop_assert!(congruence_holds(&f, &r, &ell).unwrap());
        }
    }
}

//! The covariant `C35(B) = J(B, (B,B)_4)` of binary quintics on the Hammond
//! slice, next to the closed formula it is compared with.
//!
//! A Hammond quintic `(a, b, e, f)` is the binary quintic
//! `a*t0^5 + 5*b*t0^4*t1 + 5*e*t0*t1^4 + f*t1^5`, whose `t0^3*t1^2` and
//! `t0^2*t1^3` coefficients vanish. Images are indexed by the power of `t0`:
//! `c[i]` is the coefficient of `t0^i * t1^(5-i)`.

use std::sync::OnceLock;

use num_rational::BigRational;
use num_traits::Zero;

use super::fiber::ModMap;
use crate::algebra::{parse_poly, MultiPoly, Ring, Vars, Q};
use crate::comitants::{jacobian, transvectant, Form};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HammondQuintic {
    pub a: BigRational,
    pub b: BigRational,
    pub e: BigRational,
    pub f: BigRational,
}

impl HammondQuintic {
    pub fn new(a: BigRational, b: BigRational, e: BigRational, f: BigRational) -> Result<Self> {
        if a.is_zero() && b.is_zero() && e.is_zero() && f.is_zero() {
            return Err(Error::Degenerate("all Hammond coefficients vanish".into()));
        }
        Ok(HammondQuintic { a, b, e, f })
    }

    pub fn from_ints(a: i64, b: i64, e: i64, f: i64) -> Result<Self> {
        Self::new(Q.from_int(a), Q.from_int(b), Q.from_int(e), Q.from_int(f))
    }

    fn values(&self) -> [BigRational; 4] {
        [self.a.clone(), self.b.clone(), self.e.clone(), self.f.clone()]
    }
}

/// Coefficients `c[i]` of `t0^i * t1^(5-i)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuinticImage {
    pub c: [BigRational; 6],
}

impl QuinticImage {
    pub fn is_zero(&self) -> bool {
        self.c.iter().all(Zero::is_zero)
    }

    /// The quintic `sum c[i] t0^i t1^(5-i)` over `t0, t1`.
    pub fn to_poly(&self) -> MultiPoly {
        MultiPoly::from_terms(
            Q,
            super::p1_vars(),
            (0..6).map(|i| (vec![i as u16, 5 - i as u16], self.c[i].clone())),
        )
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum C35Path {
    /// The closed formula `(af-5be)a t0^5 + (5af-9be)b t0^4t1 + 8b^2f t0^3t1^2
    /// - 8ae^2 t0^2t1^3 + (5af-9be)e t0t1^4 - (af-5be)f t1^5`.
    Printed,
    /// `J(B, (B,B)_4)` computed from the transvectant and Jacobian.
    Jacobian,
}

/// `a, b, e, f`.
pub fn hammond_vars() -> Vars {
    static V: OnceLock<Vars> = OnceLock::new();
    V.get_or_init(|| Vars::new(&["a", "b", "e", "f"]).expect("distinct")).clone()
}

/// The generic Hammond quintic over `a, b, e, f, t0, t1`.
pub fn hammond_form() -> Form {
    let v = hammond_vars().extended(&["t0", "t1"]).expect("distinct");
    let p = parse_poly("a*t0^5 + 5*b*t0^4*t1 + 5*e*t0*t1^4 + f*t1^5", &v).expect("valid");
    Form::new(p, vec![4, 5], 5).expect("quintic")
}

/// `J(f, (f,f)_4)` for any binary quintic; a covariant of degree 3 and order 5.
pub fn c35_covariant(f: &Form) -> Result<Form> {
    if f.nvars() != 2 || f.degree() != 5 {
        return Err(Error::SpaceMismatch("C35 needs a binary quintic".into()));
    }
    let i = transvectant(f, f, 4)?;
    let j = jacobian(&[f.poly().clone(), i.poly().clone()], f.idx())?;
    Form::new(j, f.idx().to_vec(), 5)
}

/// Symbolic image coefficients as polynomials in `a, b, e, f`.
pub fn c35_symbolic(path: C35Path) -> Result<&'static [MultiPoly; 6]> {
    static PRINTED: OnceLock<Result<[MultiPoly; 6]>> = OnceLock::new();
    static JACOBIAN: OnceLock<Result<[MultiPoly; 6]>> = OnceLock::new();
    let cell = match path {
        C35Path::Printed => &PRINTED,
        C35Path::Jacobian => &JACOBIAN,
    };
    cell.get_or_init(|| match path {
        C35Path::Printed => {
            let v = hammond_vars();
            let texts = [
                "-a*f^2 + 5*b*e*f",
                "5*a*e*f - 9*b*e^2",
                "-8*a*e^2",
                "8*b^2*f",
                "5*a*b*f - 9*b^2*e",
                "a^2*f - 5*a*b*e",
            ];
            let mut out: Vec<MultiPoly> = Vec::with_capacity(6);
            for t in texts {
                out.push(parse_poly(t, &v)?);
            }
            Ok(out.try_into().expect("six coefficients"))
        }
        C35Path::Jacobian => {
            let c = c35_covariant(&hammond_form())?;
            let coeffs = c.poly().coefficients_in(c.idx());
            let v = hammond_vars();
            let mut out: Vec<MultiPoly> = Vec::with_capacity(6);
            for i in 0..6u16 {
                let k = coeffs
                    .get(&vec![i, 5 - i])
                    .cloned()
                    .unwrap_or_else(|| MultiPoly::zero(Q, c.vars().clone()));
                out.push(k.reembed(&v)?);
            }
            Ok(out.try_into().expect("six coefficients"))
        }
    })
    .as_ref()
    .map_err(Clone::clone)
}

/// `C35(B)` along the chosen path.
pub fn hammond_c35(b: &HammondQuintic, path: C35Path) -> Result<QuinticImage> {
    let sym = c35_symbolic(path)?;
    let pt = b.values();
    let c: Vec<BigRational> = sym.iter().map(|p| p.evaluate(&pt)).collect();
    Ok(QuinticImage { c: c.try_into().expect("six") })
}

/// Outcome of comparing the two paths coefficient by coefficient.
#[derive(Clone, Debug)]
pub struct PathComparison {
    /// For each `i`, the scalar `lambda_i` with `printed[i] = lambda_i * jacobian[i]`,
    /// or `None` if the two coefficients are not proportional.
    pub ratios: Vec<Option<BigRational>>,
    /// The single global scalar when every ratio exists and they agree.
    pub scalar: Option<BigRational>,
}

impl PathComparison {
    pub fn agree(&self) -> bool {
        self.scalar.is_some()
    }

    pub fn describe(&self) -> String {
        let parts: Vec<String> = self
            .ratios
            .iter()
            .enumerate()
            .rev()
            .map(|(i, r)| match r {
                Some(r) => format!("t0^{}t1^{}: {}", i, 5 - i, Q.format(r)),
                None => format!("t0^{}t1^{}: not proportional", i, 5 - i),
            })
            .collect();
        parts.join(", ")
    }
}

/// Symbolic comparison of the closed formula with the Jacobian path.
pub fn compare_paths() -> Result<PathComparison> {
    let printed = c35_symbolic(C35Path::Printed)?;
    let jac = c35_symbolic(C35Path::Jacobian)?;
    let ratios: Vec<Option<BigRational>> = printed
        .iter()
        .zip(jac.iter())
        .map(|(p, j)| {
            if p.is_zero() && j.is_zero() {
                None
            } else {
                p.proportional_to(j)
            }
        })
        .collect();
    let scalar = match ratios.first() {
        Some(Some(r0)) if ratios.iter().all(|r| r.as_ref() == Some(r0)) => Some(r0.clone()),
        _ => None,
    };
    Ok(PathComparison { ratios, scalar })
}

/// The linear relations `a*c0 + f*c5 = 0` and `e*c4 - b*c1 = 0`, with the
/// sign of the second one as dictated by the closed formula.
pub fn hammond_relations(b: &HammondQuintic, img: &QuinticImage) -> bool {
    hammond_relations_for(C35Path::Printed, b, img)
}

/// The relations with the sign appropriate for `path`: the Jacobian path
/// satisfies `e*c4 + b*c1 = 0` instead.
pub fn hammond_relations_for(path: C35Path, b: &HammondQuintic, img: &QuinticImage) -> bool {
    let c = &img.c;
    let first = &b.a * &c[0] + &b.f * &c[5];
    let second = match path {
        C35Path::Printed => &b.e * &c[4] - &b.b * &c[1],
        C35Path::Jacobian => &b.e * &c[4] + &b.b * &c[1],
    };
    first.is_zero() && second.is_zero()
}

/// Whether the relations hold as polynomial identities in `a, b, e, f`.
pub fn relations_identically(path: C35Path) -> Result<(bool, bool)> {
    let c = c35_symbolic(path)?;
    let v = hammond_vars();
    let var = |n: &str| MultiPoly::var_named(Q, v.clone(), n).expect("declared");
    let first = &(&var("a") * &c[0]) + &(&var("f") * &c[5]);
    let ec4 = &var("e") * &c[4];
    let bc1 = &var("b") * &c[1];
    let second = match path {
        C35Path::Printed => &ec4 - &bc1,
        C35Path::Jacobian => &ec4 + &bc1,
    };
    Ok((first.is_zero(), second.is_zero()))
}

/// The map `P^3 -> P^5`, `(a:b:e:f) -> (c5:...:c0)`, reduced modulo `p`.
pub fn hammond_mod_map(p: u64, path: C35Path) -> Result<ModMap> {
    let c = c35_symbolic(path)?;
    let comps: Vec<MultiPoly> = c.iter().rev().cloned().collect();
    ModMap::new(p, 4, &comps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;

    #[test]
    fn printed_formula_examples() {
        let img = hammond_c35(&HammondQuintic::from_ints(1, 0, 0, 1).unwrap(), C35Path::Printed).unwrap();
        let v = super::super::p1_vars();
        assert_eq!(img.to_poly(), parse_poly("t0^5 - t1^5", &v).unwrap());
        let img = hammond_c35(&HammondQuintic::from_ints(1, 1, 0, 0).unwrap(), C35Path::Printed).unwrap();
        assert!(img.is_zero());
    }

    #[test]
    fn relations_on_instances() {
        let b = HammondQuintic::from_ints(1, 0, 0, 1).unwrap();
        let img = hammond_c35(&b, C35Path::Printed).unwrap();
        assert!(hammond_relations(&b, &img));
        let b = HammondQuintic::new(rat(2, 3), rat(-1, 1), rat(5, 7), rat(3, 1)).unwrap();
        let img = hammond_c35(&b, C35Path::Jacobian).unwrap();
        assert!(hammond_relations_for(C35Path::Jacobian, &b, &img));
        assert!(!hammond_relations_for(C35Path::Printed, &b, &img));
    }

    #[test]
    fn relations_hold_identically() {
        assert_eq!(relations_identically(C35Path::Printed).unwrap(), (true, true));
        assert_eq!(relations_identically(C35Path::Jacobian).unwrap(), (true, true));
    }

    #[test]
    fn jacobian_path_coefficients() {
        let c = c35_symbolic(C35Path::Jacobian).unwrap();
        let v = hammond_vars();
        let expect = [
            "-10*a*f^2 + 50*b*e*f",
            "-50*a*e*f + 90*b*e^2",
            "-400*a*e^2",
            "400*b^2*f",
            "50*a*b*f - 90*b^2*e",
            "10*a^2*f - 50*a*b*e",
        ];
        for (i, t) in expect.iter().enumerate() {
            assert!(c[i].proportional_to(&parse_poly(t, &v).unwrap()).is_some(), "c[{i}] = {}", c[i]);
        }
    }

    #[test]
    fn degenerate_input() {
        assert!(HammondQuintic::from_ints(0, 0, 0, 0).is_err());
    }

    #[test]
    fn jacobian_path_is_covariant_of_weight_5() {
        use crate::algebra::random::{invertible_matrix, random_form, seeded};
        use crate::invariants::det_power;
        let mut rng = seeded(21);
        let v = Vars::new(&["x", "y"]).unwrap();
        for _ in 0..3 {
            let f = Form::new(random_form(&mut rng, &v, &[0, 1], 5, 4), vec![0, 1], 5).unwrap();
            let g = invertible_matrix(&mut rng, 2, 3);
            let fg = Form::new(g.apply(f.poly()).unwrap(), vec![0, 1], 5).unwrap();
            let lhs = c35_covariant(&fg).unwrap();
            let rhs = g.apply(c35_covariant(&f).unwrap().poly()).unwrap();
            let ratio = lhs.poly().proportional_to(&rhs).unwrap();
            assert_eq!(det_power(&ratio, g.det(), 12), Some(5));
        }
    }

    #[test]
    fn hammond_map_is_generically_injective_mod_101() {
        let m = hammond_mod_map(101, C35Path::Jacobian).unwrap();
        let r = super::super::fiber::sample_fibers(&m, 100, 7);
        assert!(r.fraction_with_fiber(1) >= 0.95, "{}", r.fraction_with_fiber(1));
    }
}

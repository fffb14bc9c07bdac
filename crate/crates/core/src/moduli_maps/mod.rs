//! Rational self-maps of the projective line: pencil self-maps induced by the
//! Hessian, the invariant covers, descent along covers, the Hammond quintic
//! map, finite-field fiber counts and associated forms.

pub mod assoc;
pub mod fiber;
pub mod hammond;

use std::fmt;
use std::sync::OnceLock;

use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::algebra::univariate::cancel_common_factor;
use crate::algebra::{monomials_of_degree, parse_poly, Matrix, MultiPoly, Ring, Vars, Q};
use crate::comitants::{hessian_form, Form};
use crate::invariants::{
    binary_quartic_i2, binary_quartic_i3, evaluate_invariant, hesse_pencil, quartic_pencil,
    ternary_cubic_s, ternary_cubic_t,
};
use crate::{Error, Result};

/// The variable list `t0, t1` shared by every map of the line.
pub fn p1_vars() -> Vars {
    static VARS: OnceLock<Vars> = OnceLock::new();
    VARS.get_or_init(|| Vars::new(&["t0", "t1"]).expect("distinct names")).clone()
}

/// `[num : den]` with `num`, `den` binary forms of equal degree in `t0, t1`.
///
/// Values are always reduced: the two forms are coprime and scaled to
/// coprime integer coefficients with the leading coefficient of `num`
/// (or of `den` when `num` vanishes) positive.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalMapP1 {
    num: MultiPoly,
    den: MultiPoly,
}

impl RationalMapP1 {
    pub fn new(num: MultiPoly, den: MultiPoly) -> Result<Self> {
        let v = p1_vars();
        let num = num.reembed(&v)?;
        let den = den.reembed(&v)?;
        if num.is_zero() && den.is_zero() {
            return Err(Error::Degenerate("both components vanish".into()));
        }
        let idx = [0, 1];
        let dn = num.homogeneous_degree_in(&idx);
        let dd = den.homogeneous_degree_in(&idx);
        match (num.is_zero(), den.is_zero(), dn, dd) {
            (true, _, _, Some(_)) | (_, true, Some(_), _) => {}
            (false, false, Some(a), Some(b)) if a == b => {}
            _ => {
                return Err(Error::NotHomogeneous(format!(
                    "[{num} : {den}] is not a pair of forms of equal degree"
                )))
            }
        }
        Ok(Self::reduce(num, den))
    }

    pub fn parse(num: &str, den: &str) -> Result<Self> {
        let v = p1_vars();
        Self::new(parse_poly(num, &v)?, parse_poly(den, &v)?)
    }

    pub fn identity() -> Self {
        Self::parse("t0", "t1").expect("valid")
    }

    fn reduce(num: MultiPoly, den: MultiPoly) -> Self {
        let one = MultiPoly::one(Q, num.vars().clone());
        let (num, den) = if num.is_zero() {
            (num, one)
        } else if den.is_zero() {
            (one, den)
        } else {
            let (n, d, _) = cancel_common_factor(&num, &den).expect("nonzero forms");
            (n, d)
        };
        // joint primitive scaling
        let lead_sign = if num.is_zero() { &den } else { &num }
            .leading_term()
            .map(|(_, c)| c.is_negative())
            .unwrap_or(false);
        let content = joint_content(&num, &den);
        let mut s = content.recip();
        if lead_sign {
            s = -s;
        }
        RationalMapP1 { num: num.scale(&s), den: den.scale(&s) }
    }

    pub fn num(&self) -> &MultiPoly {
        &self.num
    }

    pub fn den(&self) -> &MultiPoly {
        &self.den
    }

    /// Algebraic degree of the reduced fraction.
    pub fn degree(&self) -> u32 {
        let idx = [0, 1];
        self.num
            .homogeneous_degree_in(&idx)
            .or_else(|| self.den.homogeneous_degree_in(&idx))
            .unwrap_or(0)
    }

    /// `outer o inner`.
    pub fn compose(outer: &Self, inner: &Self) -> Result<Self> {
        let images = [inner.num.clone(), inner.den.clone()];
        let num = outer.num.compose(&images)?;
        let den = outer.den.compose(&images)?;
        if num.is_zero() && den.is_zero() {
            return Err(Error::Degenerate("composition vanishes identically".into()));
        }
        Self::new(num, den)
    }

    /// Degree of the unreduced composite, before cancelling common factors.
    pub fn composed_degree_bound(outer: &Self, inner: &Self) -> u32 {
        outer.degree() * inner.degree()
    }

    /// Image of a point; `None` at a base point of the (reduced) map, which
    /// cannot occur, or for the zero input.
    pub fn eval(&self, pt: &[BigRational; 2]) -> Option<[BigRational; 2]> {
        let a = self.num.evaluate(pt);
        let b = self.den.evaluate(pt);
        if a.is_zero() && b.is_zero() {
            None
        } else {
            Some([a, b])
        }
    }

    /// Reduction modulo a prime for finite-field evaluation.
    pub fn reduce_mod(&self, p: u64) -> Result<fiber::ModMap> {
        fiber::ModMap::new(p, 2, &[self.num.clone(), self.den.clone()])
    }
}

fn joint_content(a: &MultiPoly, b: &MultiPoly) -> BigRational {
    use num_bigint::BigInt;
    use num_integer::Integer;
    use num_traits::One;
    let coeffs: Vec<&BigRational> = a.terms().chain(b.terms()).map(|(_, c)| c).collect();
    let den = coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let num = coeffs.iter().fold(BigInt::zero(), |acc, c| {
        acc.gcd(&(c.numer() * (&den / c.denom())))
    });
    if num.is_zero() {
        BigRational::one()
    } else {
        BigRational::new(num, den)
    }
}

impl fmt::Display for RationalMapP1 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{} : {}]", self.num, self.den)
    }
}

/// Reads pencil coordinates off a member `t0' * base + coeff * t1' * mono`:
/// returns `(t0', t1')` after checking that nothing else occurs.
fn pencil_coordinates(
    member: &Form,
    base: &[Vec<u16>],
    special: &[u16],
    special_coeff: i64,
) -> Result<(MultiPoly, MultiPoly)> {
    let coeffs = member.poly().coefficients_in(member.idx());
    let zero = MultiPoly::zero(Q, member.vars().clone());
    let t0 = coeffs.get(&base[0]).cloned().unwrap_or_else(|| zero.clone());
    for b in base {
        if coeffs.get(b).cloned().unwrap_or_else(|| zero.clone()) != t0 {
            return Err(Error::Inconsistent("hessian left the pencil".into()));
        }
    }
    let t1 = coeffs
        .get(special)
        .cloned()
        .unwrap_or_else(|| zero.clone())
        .scale(&Q.inv(&Q.from_int(special_coeff)).expect("nonzero"));
    if coeffs.keys().any(|k| !base.contains(k) && k.as_slice() != special) {
        return Err(Error::Inconsistent("hessian left the pencil".into()));
    }
    Ok((t0, t1))
}

/// Self-map of the Hesse pencil `t0*(X^3+Y^3+Z^3) + 6*t1*XYZ` induced by the
/// Hessian: `[6*t0*t1^2 : -(t0^3 + 2*t1^3)]`.
pub fn hesse_self_map() -> Result<RationalMapP1> {
    let h = hessian_form(&hesse_pencil())?;
    let (a, b) = pencil_coordinates(&h, &[vec![3, 0, 0], vec![0, 3, 0], vec![0, 0, 3]], &[1, 1, 1], 6)?;
    RationalMapP1::new(a, b)
}

/// Self-map of the pencil `t0*(X^4+Y^4) + 6*t1*X^2*Y^2` induced by the
/// Hessian: `[6*t0*t1 : t0^2 - 3*t1^2]`.
pub fn quartic_self_map() -> Result<RationalMapP1> {
    let h = hessian_form(&quartic_pencil())?;
    let (a, b) = pencil_coordinates(&h, &[vec![4, 0], vec![0, 4]], &[2, 2], 6)?;
    RationalMapP1::new(a, b)
}

/// `[S^3 : T^2]` on the Hesse pencil, the degree-12 cover of the moduli line.
pub fn hesse_cover() -> Result<RationalMapP1> {
    let f = hesse_pencil();
    let s = evaluate_invariant(ternary_cubic_s()?, &f)?;
    let t = evaluate_invariant(ternary_cubic_t()?, &f)?;
    RationalMapP1::new(s.pow(3), t.pow(2))
}

/// `[I2^3 : I3^2]` on the quartic pencil, the degree-6 cover.
pub fn quartic_cover() -> Result<RationalMapP1> {
    let f = quartic_pencil();
    let i2 = evaluate_invariant(binary_quartic_i2()?, &f)?;
    let i3 = evaluate_invariant(binary_quartic_i3()?, &f)?;
    RationalMapP1::new(i2.pow(3), i3.pow(2))
}

/// Finds `R = [P : Q]` of degree `d` with `R o cover = composite` by solving
/// `P(cover) * composite.den - Q(cover) * composite.num = 0` for the
/// coefficients of `P` and `Q`. The solution space must be one-dimensional,
/// and the result is checked to reproduce `composite` exactly.
pub fn descend_map(cover: &RationalMapP1, composite: &RationalMapP1, d: u32) -> Result<RationalMapP1> {
    let basis = monomials_of_degree(2, d);
    let images = [cover.num.clone(), cover.den.clone()];
    // each unknown contributes one polynomial to the identity
    let mut columns: Vec<MultiPoly> = Vec::with_capacity(2 * basis.len());
    for m in &basis {
        let mono = MultiPoly::monomial(Q, p1_vars(), m.clone(), Q.one());
        columns.push(mono.compose(&images)?.checked_mul(&composite.den)?);
    }
    for m in &basis {
        let mono = MultiPoly::monomial(Q, p1_vars(), m.clone(), Q.one());
        columns.push(-mono.compose(&images)?.checked_mul(&composite.num)?);
    }
    let mut keys: Vec<Vec<u16>> = columns
        .iter()
        .flat_map(|c| c.terms().map(|(m, _)| m.0.clone()))
        .collect();
    keys.sort();
    keys.dedup();
    let mut mat = Matrix::zeros(Q, keys.len(), columns.len());
    for (j, c) in columns.iter().enumerate() {
        for (i, k) in keys.iter().enumerate() {
            mat.set(i, j, c.coeff(k));
        }
    }
    let kernel = mat.nullspace_modular();
    match kernel.len() {
        0 => return Err(Error::NoSolution(format!("no degree-{d} map descends"))),
        1 => {}
        k => return Err(Error::NotUnique(format!("{k}-dimensional family of degree-{d} solutions"))),
    }
    let v = &kernel[0];
    let build = |coeffs: &[BigRational]| {
        MultiPoly::from_terms(Q, p1_vars(), basis.iter().cloned().zip(coeffs.iter().cloned()))
    };
    let n = basis.len();
    let r = RationalMapP1::new(build(&v[..n]), build(&v[n..]))?;
    if RationalMapP1::compose(&r, cover)? != *composite {
        return Err(Error::Inconsistent("descended map does not reproduce the composite".into()));
    }
    Ok(r)
}

/// Homogenizes a pair of polynomials in one parameter into a map of the line,
/// with the parameter read as `t1 / t0`.
pub fn homogenize_pair(a: &MultiPoly, b: &MultiPoly, param: usize) -> Result<RationalMapP1> {
    let d = a.degree_of(param).max(b.degree_of(param));
    let hom = |p: &MultiPoly| -> Result<MultiPoly> {
        let mut out = MultiPoly::zero(Q, p1_vars());
        for (m, c) in p.terms() {
            if m.degree() != m.0[param] as u32 {
                return Err(Error::OutOfRange("more than one parameter".into()));
            }
            let e = m.0[param];
            out = &out + &MultiPoly::monomial(Q, p1_vars(), vec![d as u16 - e, e], c.clone());
        }
        Ok(out)
    };
    RationalMapP1::new(hom(a)?, hom(b)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;

    #[test]
    fn degree_examples() {
        assert_eq!(RationalMapP1::parse("t0^3", "t1^3").unwrap().degree(), 3);
        let m = RationalMapP1::parse("t0^2*t1", "t0*t1^2").unwrap();
        assert_eq!(m.degree(), 1);
        assert_eq!(m, RationalMapP1::identity());
        assert!(RationalMapP1::parse("0", "0").is_err());
        assert!(RationalMapP1::parse("t0^2", "t1").is_err());
    }

    #[test]
    fn composition() {
        let sq = RationalMapP1::parse("t0^2", "t1^2").unwrap();
        assert_eq!(RationalMapP1::compose(&sq, &sq).unwrap().degree(), 4);
        assert_eq!(RationalMapP1::compose(&RationalMapP1::identity(), &sq).unwrap(), sq);
    }

    #[test]
    fn pencil_self_maps() {
        let h = hesse_self_map().unwrap();
        assert_eq!(h, RationalMapP1::parse("6*t0*t1^2", "-t0^3 - 2*t1^3").unwrap());
        assert_eq!(h.degree(), 3);
        let img = h.eval(&[rat(1, 1), rat(0, 1)]).unwrap();
        assert!(img[0].is_zero() && !img[1].is_zero());
        let q = quartic_self_map().unwrap();
        assert_eq!(q, RationalMapP1::parse("6*t0*t1", "t0^2 - 3*t1^2").unwrap());
        assert_eq!(q.degree(), 2);
    }

    #[test]
    fn covers() {
        let c = hesse_cover().unwrap();
        assert_eq!(c.degree(), 12);
        let img = c.eval(&[rat(0, 1), rat(1, 1)]).unwrap();
        assert_eq!(&img[0] / &img[1], rat(-1, 64));
        let q = quartic_cover().unwrap();
        assert_eq!(q.degree(), 6);
        assert_eq!(
            q,
            RationalMapP1::new(
                parse_poly("t0^2 + 3*t1^2", &p1_vars()).unwrap().pow(3),
                parse_poly("t0^2*t1 - t1^3", &p1_vars()).unwrap().pow(2)
            )
            .unwrap()
        );
    }

    #[test]
    fn descent() {
        let f = hesse_cover().unwrap();
        assert_eq!(descend_map(&f, &f, 1).unwrap(), RationalMapP1::identity());
        let q = quartic_cover().unwrap();
        let comp = RationalMapP1::compose(&q, &quartic_self_map().unwrap()).unwrap();
        assert_eq!(comp.degree(), 12);
        let r = descend_map(&q, &comp, 2).unwrap();
        assert_eq!(r.degree(), 2);
        assert!(matches!(descend_map(&q, &comp, 1), Err(Error::NoSolution(_))));
    }

    #[test]
    fn hesse_descent_and_degree_36() {
        let c = hesse_cover().unwrap();
        let comp = RationalMapP1::compose(&c, &hesse_self_map().unwrap()).unwrap();
        assert_eq!(comp.degree(), 36);
        assert_eq!(RationalMapP1::composed_degree_bound(&c, &hesse_self_map().unwrap()), 36);
        let r = descend_map(&c, &comp, 3).unwrap();
        assert_eq!(r.degree(), 3);
        assert_eq!(RationalMapP1::compose(&r, &c).unwrap(), comp);
    }

    #[test]
    fn homogenize_reads_parameter_as_ratio() {
        let v = Vars::new(&["al"]).unwrap();
        let a = parse_poly("6*al", &v).unwrap();
        let b = parse_poly("-2", &v).unwrap();
        assert_eq!(homogenize_pair(&a, &b, 0).unwrap(), RationalMapP1::parse("3*t1", "-t0").unwrap());
    }
}

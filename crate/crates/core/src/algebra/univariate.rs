//! Gcd of polynomials in one variable and of binary forms.

use super::poly::MultiPoly;
use super::ring::{Rationals, Ring};
use super::AlgebraError;

/// Dense coefficients, index = exponent.
fn to_dense<R: Ring>(p: &MultiPoly<R>, var: usize) -> Vec<R::Elem> {
    let deg = p.degree_of(var) as usize;
    let mut c = vec![p.ring().zero(); deg + 1];
    for (m, a) in p.terms() {
        c[m.0[var] as usize] = a.clone();
    }
    c
}

fn trim<R: Ring>(ring: &R, c: &mut Vec<R::Elem>) {
    while c.last().is_some_and(|x| ring.is_zero(x)) {
        c.pop();
    }
}

fn dense_rem<R: Ring>(ring: &R, a: &[R::Elem], b: &[R::Elem]) -> Vec<R::Elem> {
    let mut r = a.to_vec();
    let lead_inv = ring.inv(b.last().expect("nonzero divisor")).expect("field");
    trim(ring, &mut r);
    while r.len() >= b.len() {
        let shift = r.len() - b.len();
        let q = ring.mul(r.last().unwrap(), &lead_inv);
        for (i, bi) in b.iter().enumerate() {
            r[shift + i] = ring.sub(&r[shift + i], &ring.mul(&q, bi));
        }
        r.pop();
        trim(ring, &mut r);
    }
    r
}

fn dense_gcd<R: Ring>(ring: &R, a: Vec<R::Elem>, b: Vec<R::Elem>) -> Vec<R::Elem> {
    let (mut a, mut b) = (a, b);
    trim(ring, &mut a);
    trim(ring, &mut b);
    while !b.is_empty() {
        let r = dense_rem(ring, &a, &b);
        a = b;
        b = r;
    }
    if let Some(lead) = a.last().cloned() {
        let inv = ring.inv(&lead).expect("field");
        for x in a.iter_mut() {
            *x = ring.mul(x, &inv);
        }
    }
    a
}

/// Monic gcd of two polynomials that involve at most one variable in common,
/// or of two binary forms.
///
/// Binary forms (both homogeneous in exactly the two variables that occur)
/// are dehomogenized by setting the second variable to one, the Euclidean
/// algorithm runs on the first, and the shared powers of both variables are
/// restored. The
/// result is normalized so that its leading coefficient in graded-lex order
/// is one.
pub fn univariate_gcd<R: Ring>(
    p: &MultiPoly<R>,
    q: &MultiPoly<R>,
) -> Result<MultiPoly<R>, AlgebraError> {
    if p.ring() != q.ring() {
        return Err(AlgebraError::RingMismatch(p.ring().name(), q.ring().name()));
    }
    if p.vars() != q.vars() {
        return Err(AlgebraError::VariableMismatch(
            p.vars().names().join(","),
            q.vars().names().join(","),
        ));
    }
    if p.is_zero() && q.is_zero() {
        return Err(AlgebraError::ZeroGcd);
    }
    if p.is_zero() {
        return Ok(q.monic());
    }
    if q.is_zero() {
        return Ok(p.monic());
    }
    let mut support = p.support_vars();
    for v in q.support_vars() {
        if !support.contains(&v) {
            support.push(v);
        }
    }
    support.sort_unstable();
    let ring = p.ring().clone();
    let vars = p.vars().clone();
    match support.len() {
        0 => Ok(MultiPoly::one(ring, vars)),
        1 => {
            let v = support[0];
            let g = dense_gcd(&ring, to_dense(p, v), to_dense(q, v));
            Ok(from_dense(&ring, &vars, v, &g))
        }
        2 => {
            let pair = [support[0], support[1]];
            if p.homogeneous_degree_in(&pair).is_none() || q.homogeneous_degree_in(&pair).is_none() {
                return Err(AlgebraError::NotUnivariate(format!("{p} and {q} are not binary forms")));
            }
            let (x, y) = (pair[0], pair[1]);
            let vy = |f: &MultiPoly<R>| f.terms().map(|(m, _)| m.0[y]).min().unwrap_or(0);
            let vx = |f: &MultiPoly<R>| f.terms().map(|(m, _)| m.0[x]).min().unwrap_or(0);
            let shared_x = vx(p).min(vx(q));
            let shared_y = vy(p).min(vy(q));
            // dehomogenize at y = 1 after stripping the power of x; the
            // stripped powers of x and y are restored as shared_x, shared_y
            let dehom = |f: &MultiPoly<R>| -> Vec<R::Elem> {
                let low = vx(f);
                let deg = f.degree_of(x) as usize;
                let mut c = vec![ring.zero(); deg + 1 - low as usize];
                for (m, a) in f.terms() {
                    c[(m.0[x] - low) as usize] = a.clone();
                }
                c
            };
            let mut g = dense_gcd(&ring, dehom(p), dehom(q));
            let gdeg = g.len() as u32 - 1;
            let mut out = MultiPoly::zero(ring.clone(), vars.clone());
            for (i, c) in g.drain(..).enumerate() {
                let mut e = vec![0u16; vars.len()];
                e[x] = i as u16 + shared_x;
                e[y] = (gdeg - i as u32) as u16 + shared_y;
                out = &out + &MultiPoly::monomial(ring.clone(), vars.clone(), e, c);
            }
            Ok(out.monic())
        }
        _ => Err(AlgebraError::NotUnivariate(format!(
            "{} variables occur",
            support.len()
        ))),
    }
}

fn from_dense<R: Ring>(
    ring: &R,
    vars: &super::poly::Vars,
    v: usize,
    c: &[R::Elem],
) -> MultiPoly<R> {
    let terms = c.iter().enumerate().map(|(i, a)| {
        let mut e = vec![0u16; vars.len()];
        e[v] = i as u16;
        (e, a.clone())
    });
    MultiPoly::from_terms(ring.clone(), vars.clone(), terms)
}

/// Divides both forms by their gcd; returns the reduced pair and the gcd.
pub fn cancel_common_factor<R: Ring>(
    p: &MultiPoly<R>,
    q: &MultiPoly<R>,
) -> Result<(MultiPoly<R>, MultiPoly<R>, MultiPoly<R>), AlgebraError> {
    let g = univariate_gcd(p, q)?;
    let p2 = p.div_exact(&g)?.expect("gcd divides");
    let q2 = q.div_exact(&g)?.expect("gcd divides");
    Ok((p2, q2, g))
}

/// Primitive integer normalization for rational binary forms.
pub fn primitive_gcd(
    p: &MultiPoly<Rationals>,
    q: &MultiPoly<Rationals>,
) -> Result<MultiPoly<Rationals>, AlgebraError> {
    Ok(univariate_gcd(p, q)?.primitive_part().0)
}

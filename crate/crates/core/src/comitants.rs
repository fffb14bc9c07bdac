//! Hessian, Jacobian, transvectants, polars and restriction to lines.
//!
//! Forms are ordinary polynomials together with the positions of their form
//! variables; every other variable is a parameter (pencil coordinates,
//! generic coefficients, dual coordinates) and rides along untouched.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use crate::algebra::matrix::poly_det;
use crate::algebra::{MultiPoly, Rationals, Ring, Vars};
use crate::{Error, Result};

/// Names of the dual coordinates of a line `alpha*x + beta*y + gamma*z = 0`.
pub const DUAL_VARS: [&str; 3] = ["alpha", "beta", "gamma"];

/// A homogeneous form in the variables at `idx`; other variables are parameters.
#[derive(Clone, Debug, PartialEq)]
pub struct Form<R: Ring = Rationals> {
    poly: MultiPoly<R>,
    idx: Vec<usize>,
    degree: u32,
}

impl<R: Ring> Form<R> {
    /// Checks homogeneity; the zero polynomial takes the declared `degree`.
    pub fn new(poly: MultiPoly<R>, idx: Vec<usize>, degree: u32) -> Result<Self> {
        if let Some(&bad) = idx.iter().find(|&&i| i >= poly.nvars()) {
            return Err(Error::OutOfRange(format!("variable index {bad}")));
        }
        if !poly.is_zero() && poly.homogeneous_degree_in(&idx) != Some(degree) {
            return Err(Error::NotHomogeneous(format!(
                "{poly} is not homogeneous of degree {degree}"
            )));
        }
        Ok(Form { poly, idx, degree })
    }

    /// Infers the degree; rejects the zero polynomial.
    pub fn infer(poly: MultiPoly<R>, idx: Vec<usize>) -> Result<Self> {
        let d = poly
            .homogeneous_degree_in(&idx)
            .ok_or_else(|| Error::NotHomogeneous(format!("{poly}")))?;
        Form::new(poly, idx, d)
    }

    /// Form in the named variables of `poly`.
    pub fn named(poly: MultiPoly<R>, names: &[&str]) -> Result<Self> {
        let idx = names
            .iter()
            .map(|n| {
                poly.vars()
                    .index_of(n)
                    .ok_or_else(|| Error::Algebra(crate::AlgebraError::UnknownVariable(n.to_string())))
            })
            .collect::<Result<Vec<_>>>()?;
        Form::infer(poly, idx)
    }

    pub fn poly(&self) -> &MultiPoly<R> {
        &self.poly
    }

    pub fn into_poly(self) -> MultiPoly<R> {
        self.poly
    }

    pub fn idx(&self) -> &[usize] {
        &self.idx
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn nvars(&self) -> usize {
        self.idx.len()
    }

    pub fn vars(&self) -> &Vars {
        self.poly.vars()
    }
}

pub type BinaryForm<R = Rationals> = Form<R>;
pub type TernaryForm<R = Rationals> = Form<R>;

fn check_homogeneous<R: Ring>(f: &MultiPoly<R>, idx: &[usize]) -> Result<u32> {
    if f.is_zero() {
        return Err(Error::NotHomogeneous("zero form has no degree".into()));
    }
    f.homogeneous_degree_in(idx)
        .ok_or_else(|| Error::NotHomogeneous(format!("{f}")))
}

/// Determinant of the matrix of second partials in the variables `idx`.
pub fn hessian<R: Ring>(f: &MultiPoly<R>, idx: &[usize]) -> Result<MultiPoly<R>> {
    let d = check_homogeneous(f, idx)?;
    if d < 2 {
        return Err(Error::OutOfRange(format!("hessian needs degree >= 2, got {d}")));
    }
    let first: Vec<MultiPoly<R>> = idx.iter().map(|&i| f.partial_derivative(i)).collect();
    let m: Vec<Vec<MultiPoly<R>>> = first
        .iter()
        .map(|fi| idx.iter().map(|&j| fi.partial_derivative(j)).collect())
        .collect();
    Ok(poly_det(&m)?)
}

pub fn hessian_form<R: Ring>(f: &Form<R>) -> Result<Form<R>> {
    let h = hessian(&f.poly, &f.idx)?;
    let n = f.idx.len() as u32;
    Form::new(h, f.idx.clone(), n * (f.degree - 2))
}

/// Determinant of the matrix of first partials of `forms` in the variables `idx`.
pub fn jacobian<R: Ring>(forms: &[MultiPoly<R>], idx: &[usize]) -> Result<MultiPoly<R>> {
    if forms.len() != idx.len() {
        return Err(Error::OutOfRange(format!(
            "jacobian needs {} forms, got {}",
            idx.len(),
            forms.len()
        )));
    }
    for f in forms {
        if !f.is_zero() {
            check_homogeneous(f, idx)?;
        }
    }
    let m: Vec<Vec<MultiPoly<R>>> = forms
        .iter()
        .map(|f| idx.iter().map(|&j| f.partial_derivative(j)).collect())
        .collect();
    Ok(poly_det(&m)?)
}

fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

fn binomial(n: u32, k: u32) -> BigInt {
    factorial(n) / (factorial(k) * factorial(n - k))
}

/// The `k`-th transvectant of two binary forms in the same variables:
/// `(m-k)!(n-k)!/(m!n!) * sum_i (-1)^i C(k,i) d^k f/dx^(k-i)dy^i * d^k g/dx^i dy^(k-i)`.
pub fn transvectant<R: Ring>(f: &Form<R>, g: &Form<R>, k: u32) -> Result<Form<R>> {
    if f.idx.len() != 2 || f.idx != g.idx {
        return Err(Error::SpaceMismatch("transvectant needs binary forms in the same variables".into()));
    }
    let (m, n) = (f.degree, g.degree);
    if k > m.min(n) {
        return Err(Error::OutOfRange(format!("transvectant order {k} exceeds min({m}, {n})")));
    }
    let ring = f.poly.ring().clone();
    let (x, y) = (f.idx[0], f.idx[1]);
    let mut acc = MultiPoly::zero(ring.clone(), f.poly.vars().clone());
    for i in 0..=k {
        let df = f.poly.derivative_multi(&[x, y], &[k - i, i]);
        let dg = g.poly.derivative_multi(&[x, y], &[i, k - i]);
        if df.is_zero() || dg.is_zero() {
            continue;
        }
        let mut c = BigRational::from_integer(binomial(k, i));
        if i % 2 == 1 {
            c = -c;
        }
        let term = df.checked_mul(&dg)?.scale(&ring.from_rational(&c)?);
        acc = acc.checked_add(&term)?;
    }
    let norm = BigRational::new(
        factorial(m - k) * factorial(n - k),
        factorial(m) * factorial(n),
    );
    let out = acc.scale(&ring.from_rational(&norm)?);
    Form::new(out, f.idx.clone(), m + n - 2 * k)
}

/// First polar `sum_i p_i * df/dx_i`, over the variables of `f` extended by
/// the three point variables.
pub fn polar<R: Ring>(f: &Form<R>, point_vars: [&str; 3]) -> Result<MultiPoly<R>> {
    if f.degree < 1 {
        return Err(Error::OutOfRange("polar of a constant".into()));
    }
    for name in point_vars {
        if f.vars().contains(name) {
            return Err(Error::NameCollision(name.to_string()));
        }
    }
    let vars = f.vars().extended(&point_vars)?;
    let base = f.poly.reembed(&vars)?;
    let n0 = f.vars().len();
    let mut acc = MultiPoly::zero(f.poly.ring().clone(), vars.clone());
    for (k, &i) in f.idx.iter().enumerate() {
        let p = MultiPoly::var(f.poly.ring().clone(), vars.clone(), n0 + k);
        acc = acc.checked_add(&base.partial_derivative(i).checked_mul(&p)?)?;
    }
    Ok(acc)
}

/// Restriction of a ternary form to the line `alpha*x + beta*y + gamma*z = 0`
/// in one of three charts. Chart 2 parametrizes the line by
/// `(gamma*x, gamma*y, -alpha*x - beta*y)`, chart 0 by
/// `(-beta*y - gamma*z, alpha*y, alpha*z)`, chart 1 by
/// `(beta*x, -alpha*x - gamma*z, beta*z)`. The result is a binary form in
/// the two surviving form variables with coefficients in the dual variables,
/// which are appended to the variable list.
pub fn restrict_to_line<R: Ring>(f: &Form<R>, chart: usize) -> Result<Form<R>> {
    if f.idx.len() != 3 {
        return Err(Error::SpaceMismatch("line restriction needs a ternary form".into()));
    }
    if chart > 2 {
        return Err(Error::OutOfRange(format!("chart {chart}")));
    }
    for name in DUAL_VARS {
        if f.vars().contains(name) {
            return Err(Error::NameCollision(name.to_string()));
        }
    }
    let vars = f.vars().extended(&DUAL_VARS)?;
    let ring = f.poly.ring().clone();
    let n0 = f.vars().len();
    let v = |i: usize| MultiPoly::var(ring.clone(), vars.clone(), i);
    let dual: Vec<MultiPoly<R>> = (0..3).map(|k| v(n0 + k)).collect();
    let coord: Vec<MultiPoly<R>> = f.idx.iter().map(|&i| v(i)).collect();
    // the two surviving coordinates, in order
    let keep: Vec<usize> = (0..3).filter(|&k| k != chart).collect();
    let (a, b) = (keep[0], keep[1]);
    let mut images: Vec<MultiPoly<R>> = (0..vars.len()).map(v).collect();
    images[f.idx[a]] = dual[chart].checked_mul(&coord[a])?;
    images[f.idx[b]] = dual[chart].checked_mul(&coord[b])?;
    images[f.idx[chart]] = -(dual[a].checked_mul(&coord[a])?.checked_add(&dual[b].checked_mul(&coord[b])?)?);
    let lifted = f.poly.reembed(&vars)?;
    let g = lifted.compose(&images)?;
    Form::new(g, vec![f.idx[a], f.idx[b]], f.degree)
}

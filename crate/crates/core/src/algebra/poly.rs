//! Sparse multivariate polynomials over a [`Ring`].
//!
//! Terms live in a `BTreeMap` keyed by exponent vectors in graded
//! lexicographic order, so iteration, printing and equality are all
//! deterministic. No stored coefficient is ever zero.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::ring::{PrimeField, Rationals, Ring, Q};
use super::AlgebraError;

/// Exponent vector, one entry per declared variable.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<u16>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn degree_in(&self, idx: &[usize]) -> u32 {
        idx.iter().map(|&i| self.0[i] as u32).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self / other` when `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(Monomial)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Ordered, shared list of variable names.
#[derive(Clone, Debug)]
pub struct Vars(Arc<Vec<String>>);

impl Vars {
    pub fn new<S: AsRef<str>>(names: &[S]) -> Result<Self, AlgebraError> {
        let names: Vec<String> = names.iter().map(|s| s.as_ref().to_string()).collect();
        for (i, n) in names.iter().enumerate() {
            if names[..i].contains(n) {
                return Err(AlgebraError::DuplicateVariable(n.clone()));
            }
        }
        Ok(Vars(Arc::new(names)))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.0
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.0.iter().position(|n| n == name)
    }

    pub fn contains(&self, name: &str) -> bool {
        self.index_of(name).is_some()
    }

    /// A new variable list with `extra` appended.
    pub fn extended<S: AsRef<str>>(&self, extra: &[S]) -> Result<Vars, AlgebraError> {
        let mut all: Vec<String> = self.0.to_vec();
        all.extend(extra.iter().map(|s| s.as_ref().to_string()));
        Vars::new(&all)
    }
}

impl PartialEq for Vars {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}

impl Eq for Vars {}

/// A polynomial with coefficients in `R` over a declared variable list.
#[derive(Clone, Debug)]
pub struct MultiPoly<R: Ring = Rationals> {
    ring: R,
    vars: Vars,
    terms: BTreeMap<Monomial, R::Elem>,
}

impl<R: Ring> PartialEq for MultiPoly<R> {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.vars == other.vars && self.terms == other.terms
    }
}

impl<R: Ring> Eq for MultiPoly<R> {}

impl<R: Ring> MultiPoly<R> {
    pub fn zero(ring: R, vars: Vars) -> Self {
        MultiPoly { ring, vars, terms: BTreeMap::new() }
    }

    pub fn constant(ring: R, vars: Vars, c: R::Elem) -> Self {
        let mut p = Self::zero(ring, vars);
        let one = Monomial::one(p.vars.len());
        p.add_term(one, c);
        p
    }

    pub fn one(ring: R, vars: Vars) -> Self {
        let c = ring.one();
        Self::constant(ring, vars, c)
    }

    /// The variable at position `i`.
    pub fn var(ring: R, vars: Vars, i: usize) -> Self {
        let mut e = vec![0; vars.len()];
        e[i] = 1;
        let c = ring.one();
        let mut p = Self::zero(ring, vars);
        p.add_term(Monomial(e), c);
        p
    }

    pub fn var_named(ring: R, vars: Vars, name: &str) -> Result<Self, AlgebraError> {
        let i = vars
            .index_of(name)
            .ok_or_else(|| AlgebraError::UnknownVariable(name.to_string()))?;
        Ok(Self::var(ring, vars, i))
    }

    pub fn monomial(ring: R, vars: Vars, exps: Vec<u16>, c: R::Elem) -> Self {
        assert_eq!(exps.len(), vars.len(), "exponent vector length");
        let mut p = Self::zero(ring, vars);
        p.add_term(Monomial(exps), c);
        p
    }

    /// Builds a polynomial from raw terms, summing repeated monomials.
    pub fn from_terms(
        ring: R,
        vars: Vars,
        terms: impl IntoIterator<Item = (Vec<u16>, R::Elem)>,
    ) -> Self {
        let mut p = Self::zero(ring, vars);
        for (e, c) in terms {
            assert_eq!(e.len(), p.vars.len(), "exponent vector length");
            p.add_term(Monomial(e), c);
        }
        p
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &R::Elem)> {
        self.terms.iter()
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &R::Elem)> {
        self.terms.iter().next_back()
    }

    pub fn coeff(&self, exps: &[u16]) -> R::Elem {
        self.terms
            .get(&Monomial(exps.to_vec()))
            .cloned()
            .unwrap_or_else(|| self.ring.zero())
    }

    pub fn constant_value(&self) -> Option<R::Elem> {
        if self.terms.is_empty() {
            return Some(self.ring.zero());
        }
        if self.terms.len() == 1 {
            let (m, c) = self.terms.iter().next().unwrap();
            if m.degree() == 0 {
                return Some(c.clone());
            }
        }
        None
    }

    pub fn is_constant(&self) -> bool {
        self.constant_value().is_some()
    }

    fn add_term(&mut self, m: Monomial, c: R::Elem) {
        if self.ring.is_zero(&c) {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                let s = self.ring.add(existing, &c);
                if self.ring.is_zero(&s) {
                    self.terms.remove(&m);
                } else {
                    *existing = s;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// Maximum exponent of variable `i`.
    pub fn degree_of(&self, i: usize) -> u32 {
        self.terms.keys().map(|m| m.0[i] as u32).max().unwrap_or(0)
    }

    /// Degree in the variable group `idx` if every term has the same partial
    /// degree there; `None` if not homogeneous. The zero polynomial reports
    /// `Some(0)`-free `None` only through [`MultiPoly::is_zero`] checks by callers.
    pub fn homogeneous_degree_in(&self, idx: &[usize]) -> Option<u32> {
        let mut it = self.terms.keys().map(|m| m.degree_in(idx));
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    pub fn is_homogeneous_in(&self, idx: &[usize]) -> bool {
        self.is_zero() || self.homogeneous_degree_in(idx).is_some()
    }

    /// Indices of variables that actually occur.
    pub fn support_vars(&self) -> Vec<usize> {
        (0..self.nvars())
            .filter(|&i| self.terms.keys().any(|m| m.0[i] > 0))
            .collect()
    }

    fn check_compatible(&self, other: &Self) -> Result<(), AlgebraError> {
        if self.ring != other.ring {
            return Err(AlgebraError::RingMismatch(self.ring.name(), other.ring.name()));
        }
        if self.vars != other.vars {
            return Err(AlgebraError::VariableMismatch(
                self.vars.names().join(","),
                other.vars.names().join(","),
            ));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), self.ring.neg(c));
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check_compatible(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(self.ring.clone(), self.vars.clone()));
        }
        let mut acc: HashMap<Monomial, R::Elem> =
            HashMap::with_capacity(self.terms.len() * other.terms.len());
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                let m = m1.mul(m2);
                let c = self.ring.mul(c1, c2);
                match acc.get_mut(&m) {
                    Some(e) => *e = self.ring.add(e, &c),
                    None => {
                        acc.insert(m, c);
                    }
                }
            }
        }
        let ring = &self.ring;
        let terms = acc.into_iter().filter(|(_, c)| !ring.is_zero(c)).collect();
        Ok(MultiPoly { ring: self.ring.clone(), vars: self.vars.clone(), terms })
    }

    pub fn scale(&self, c: &R::Elem) -> Self {
        if self.ring.is_zero(c) {
            return Self::zero(self.ring.clone(), self.vars.clone());
        }
        let terms = self
            .terms
            .iter()
            .map(|(m, a)| (m.clone(), self.ring.mul(a, c)))
            .filter(|(_, a)| !self.ring.is_zero(a))
            .collect();
        MultiPoly { ring: self.ring.clone(), vars: self.vars.clone(), terms }
    }

    pub fn scale_int(&self, n: i64) -> Self {
        self.scale(&self.ring.from_int(n))
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.ring.clone(), self.vars.clone());
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Multiplies by a monomial given as an exponent vector.
    pub fn mul_monomial(&self, exps: &[u16]) -> Self {
        let m = Monomial(exps.to_vec());
        let terms = self.terms.iter().map(|(k, c)| (k.mul(&m), c.clone())).collect();
        MultiPoly { ring: self.ring.clone(), vars: self.vars.clone(), terms }
    }

    /// Formal partial derivative with respect to variable `i`.
    pub fn partial_derivative(&self, i: usize) -> Self {
        let mut out = Self::zero(self.ring.clone(), self.vars.clone());
        for (m, c) in &self.terms {
            let e = m.0[i];
            if e == 0 {
                continue;
            }
            let mut m2 = m.0.clone();
            m2[i] -= 1;
            out.add_term(Monomial(m2), self.ring.mul(c, &self.ring.from_int(e as i64)));
        }
        out
    }

    /// Mixed partial derivative: `counts[j]` derivatives in variable `idx[j]`.
    pub fn derivative_multi(&self, idx: &[usize], counts: &[u32]) -> Self {
        let mut p = self.clone();
        for (&i, &k) in idx.iter().zip(counts) {
            for _ in 0..k {
                p = p.partial_derivative(i);
                if p.is_zero() {
                    return p;
                }
            }
        }
        p
    }

    /// Evaluates at a point given as one element per variable.
    pub fn evaluate(&self, values: &[R::Elem]) -> R::Elem {
        assert_eq!(values.len(), self.nvars(), "evaluation point dimension");
        let r = &self.ring;
        let mut acc = r.zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (v, &e) in values.iter().zip(&m.0) {
                if e > 0 {
                    t = r.mul(&t, &r.pow(v, e as u32));
                }
            }
            acc = r.add(&acc, &t);
        }
        acc
    }

    /// Replaces variable `i` by `images[i]`; all images share one target
    /// variable list and ring.
    pub fn compose(&self, images: &[MultiPoly<R>]) -> Result<MultiPoly<R>, AlgebraError> {
        if images.len() != self.nvars() {
            return Err(AlgebraError::DimensionMismatch {
                expected: self.nvars(),
                found: images.len(),
            });
        }
        let (ring, vars) = match images.first() {
            Some(p) => (p.ring.clone(), p.vars.clone()),
            None => {
                return Ok(MultiPoly {
                    ring: self.ring.clone(),
                    vars: self.vars.clone(),
                    terms: self.terms.clone(),
                })
            }
        };
        for im in images {
            if im.ring != self.ring || im.ring != ring {
                return Err(AlgebraError::RingMismatch(self.ring.name(), im.ring.name()));
            }
            if im.vars != vars {
                return Err(AlgebraError::VariableMismatch(
                    vars.names().join(","),
                    im.vars.names().join(","),
                ));
            }
        }
        // cache powers of each image
        let mut powers: Vec<Vec<MultiPoly<R>>> = images
            .iter()
            .map(|im| vec![MultiPoly::one(ring.clone(), vars.clone()), im.clone()])
            .collect();
        for i in 0..self.nvars() {
            let needed = self.degree_of(i) as usize;
            while powers[i].len() <= needed {
                let next = &powers[i][powers[i].len() - 1] * &images[i];
                powers[i].push(next);
            }
        }
        let mut acc: HashMap<Monomial, R::Elem> = HashMap::new();
        for (m, c) in &self.terms {
            let mut t = MultiPoly::constant(ring.clone(), vars.clone(), c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    t = &t * &powers[i][e as usize];
                }
            }
            for (tm, tc) in t.terms {
                match acc.get_mut(&tm) {
                    Some(x) => *x = ring.add(x, &tc),
                    None => {
                        acc.insert(tm, tc);
                    }
                }
            }
        }
        let terms = acc.into_iter().filter(|(_, c)| !ring.is_zero(c)).collect();
        Ok(MultiPoly { ring, vars, terms })
    }

    /// Re-expresses the polynomial over another variable list, matching by
    /// name. Fails if a variable that occurs is missing from `target`.
    pub fn reembed(&self, target: &Vars) -> Result<MultiPoly<R>, AlgebraError> {
        let mut map = Vec::with_capacity(self.nvars());
        for (i, name) in self.vars.names().iter().enumerate() {
            let j = target.index_of(name);
            if j.is_none() && self.degree_of(i) > 0 {
                return Err(AlgebraError::UnknownVariable(name.clone()));
            }
            map.push(j);
        }
        let mut out = MultiPoly::zero(self.ring.clone(), target.clone());
        for (m, c) in &self.terms {
            let mut e = vec![0u16; target.len()];
            for (i, &x) in m.0.iter().enumerate() {
                if let Some(j) = map[i] {
                    e[j] += x;
                }
            }
            out.add_term(Monomial(e), c.clone());
        }
        Ok(out)
    }

    /// Splits into coefficients with respect to the variables `idx`: each
    /// entry maps an exponent vector over `idx` to the polynomial in the
    /// remaining variables (kept in this polynomial's variable list).
    pub fn coefficients_in(&self, idx: &[usize]) -> BTreeMap<Vec<u16>, MultiPoly<R>> {
        let mut out: BTreeMap<Vec<u16>, MultiPoly<R>> = BTreeMap::new();
        for (m, c) in &self.terms {
            let key: Vec<u16> = idx.iter().map(|&i| m.0[i]).collect();
            let mut rest = m.0.clone();
            for &i in idx {
                rest[i] = 0;
            }
            out.entry(key)
                .or_insert_with(|| MultiPoly::zero(self.ring.clone(), self.vars.clone()))
                .add_term(Monomial(rest), c.clone());
        }
        out
    }

    /// The coefficient of the monomial `exps` in the variables `idx`, as a
    /// polynomial in the remaining variables.
    pub fn coefficient_in(&self, idx: &[usize], exps: &[u16]) -> MultiPoly<R> {
        let mut out = MultiPoly::zero(self.ring.clone(), self.vars.clone());
        for (m, c) in &self.terms {
            if idx.iter().zip(exps).all(|(&i, &e)| m.0[i] == e) {
                let mut rest = m.0.clone();
                for &i in idx {
                    rest[i] = 0;
                }
                out.add_term(Monomial(rest), c.clone());
            }
        }
        out
    }

    /// Exact division by `d`; `None` if `d` does not divide `self`.
    pub fn div_exact(&self, d: &MultiPoly<R>) -> Result<Option<MultiPoly<R>>, AlgebraError> {
        self.check_compatible(d)?;
        let (lm, lc) = match d.leading_term() {
            Some((m, c)) => (m.clone(), c.clone()),
            None => return Err(AlgebraError::DivisionByZero),
        };
        let lc_inv = match self.ring.inv(&lc) {
            Some(x) => x,
            None => return Ok(None),
        };
        let mut rem = self.clone();
        let mut quot = MultiPoly::zero(self.ring.clone(), self.vars.clone());
        while let Some((m, c)) = rem.leading_term() {
            let q_m = match m.div(&lm) {
                Some(q) => q,
                None => return Ok(None),
            };
            let q_c = self.ring.mul(c, &lc_inv);
            let step = d.mul_monomial(&q_m.0).scale(&q_c);
            quot.add_term(q_m, q_c);
            rem = rem.checked_sub(&step)?;
        }
        Ok(Some(quot))
    }

    /// Image under a ring homomorphism given on coefficients.
    pub fn map_coeffs<S: Ring>(
        &self,
        ring: S,
        f: impl Fn(&R::Elem) -> Result<S::Elem, AlgebraError>,
    ) -> Result<MultiPoly<S>, AlgebraError> {
        let mut out = MultiPoly::zero(ring, self.vars.clone());
        for (m, c) in &self.terms {
            let v = f(c)?;
            out.add_term(m.clone(), v);
        }
        Ok(out)
    }

    /// Keeps only the terms satisfying `keep`.
    pub fn filter_terms(&self, keep: impl Fn(&Monomial) -> bool) -> MultiPoly<R> {
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| keep(m))
            .map(|(m, c)| (m.clone(), c.clone()))
            .collect();
        MultiPoly { ring: self.ring.clone(), vars: self.vars.clone(), terms }
    }

    /// Whether `self = c * other` for some nonzero scalar `c`.
    pub fn proportional_to(&self, other: &Self) -> Option<R::Elem> {
        if self.ring != other.ring || self.vars != other.vars {
            return None;
        }
        if self.is_zero() || other.is_zero() {
            return None;
        }
        if self.terms.len() != other.terms.len() {
            return None;
        }
        let (m0, c0) = other.leading_term()?;
        let s0 = self.terms.get(m0)?;
        let ratio = self.ring.div(s0, c0)?;
        for (m, c) in &other.terms {
            let s = self.terms.get(m)?;
            if *s != self.ring.mul(c, &ratio) {
                return None;
            }
        }
        Some(ratio)
    }

    /// Divides by the leading coefficient.
    pub fn monic(&self) -> MultiPoly<R> {
        match self.leading_term() {
            Some((_, c)) => {
                let inv = self.ring.inv(c).expect("leading coefficient invertible");
                self.scale(&inv)
            }
            None => self.clone(),
        }
    }
}

impl MultiPoly<Rationals> {
    pub fn from_int(vars: Vars, n: i64) -> Self {
        Self::constant(Q, vars, Q.from_int(n))
    }

    /// Scales to coprime integer coefficients with a positive leading term.
    /// Returns the primitive polynomial and the factor `f` with `self = f * primitive`.
    pub fn primitive_part(&self) -> (MultiPoly<Rationals>, BigRational) {
        if self.is_zero() {
            return (self.clone(), BigRational::one());
        }
        let den = self.terms.values().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let mut num = BigInt::zero();
        for c in self.terms.values() {
            let v = (c * BigRational::from_integer(den.clone())).to_integer();
            num = num.gcd(&v);
        }
        let mut factor = BigRational::new(num, den);
        if self.leading_term().map(|(_, c)| c.is_negative()).unwrap_or(false) {
            factor = -factor;
        }
        (self.scale(&factor.recip()), factor)
    }

    /// Reduction modulo a prime; fails if some denominator vanishes.
    pub fn reduce_mod(&self, field: PrimeField) -> Result<MultiPoly<PrimeField>, AlgebraError> {
        self.map_coeffs(field, |c| field.from_rational(c))
    }
}

impl<R: Ring> fmt::Display for MultiPoly<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let r = &self.ring;
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = r.is_negative(c);
            let abs = if neg { r.neg(c) } else { c.clone() };
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mut factors: Vec<String> = Vec::new();
            let is_unit = r.is_one(&abs);
            if !is_unit || m.degree() == 0 {
                factors.push(r.format(&abs));
            }
            for (i, &e) in m.0.iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(self.vars.names()[i].clone()),
                    _ => factors.push(format!("{}^{}", self.vars.names()[i], e)),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl<'a, R: Ring> $tr<&'a MultiPoly<R>> for &'a MultiPoly<R> {
            type Output = MultiPoly<R>;
            /// Panics on mismatched rings or variable lists; use the
            /// `checked_*` methods to handle that case.
            fn $method(self, rhs: &'a MultiPoly<R>) -> MultiPoly<R> {
                self.$checked(rhs).unwrap_or_else(|e| panic!("{}", e))
            }
        }
        impl<R: Ring> $tr<MultiPoly<R>> for MultiPoly<R> {
            type Output = MultiPoly<R>;
            fn $method(self, rhs: MultiPoly<R>) -> MultiPoly<R> {
                self.$checked(&rhs).unwrap_or_else(|e| panic!("{}", e))
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);

impl<R: Ring> Neg for &MultiPoly<R> {
    type Output = MultiPoly<R>;
    fn neg(self) -> MultiPoly<R> {
        let terms = self.terms.iter().map(|(m, c)| (m.clone(), self.ring.neg(c))).collect();
        MultiPoly { ring: self.ring.clone(), vars: self.vars.clone(), terms }
    }
}

impl<R: Ring> Neg for MultiPoly<R> {
    type Output = MultiPoly<R>;
    fn neg(self) -> MultiPoly<R> {
        -&self
    }
}

/// Multinomial coefficient `(sum e)! / prod(e_i!)`.
pub fn multinomial(exps: &[u16]) -> BigInt {
    let mut acc = BigInt::one();
    let mut n = 0u32;
    for &e in exps {
        for k in 1..=e as u32 {
            n += 1;
            acc = acc * BigInt::from(n) / BigInt::from(k);
        }
    }
    acc
}

/// All exponent vectors of total degree `d` in `n` variables, in descending
/// lexicographic order (x^d first).
pub fn monomials_of_degree(n: usize, d: u32) -> Vec<Vec<u16>> {
    fn rec(n: usize, d: u32, prefix: &mut Vec<u16>, out: &mut Vec<Vec<u16>>) {
        if n == 1 {
            prefix.push(d as u16);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for e in (0..=d).rev() {
            prefix.push(e as u16);
            rec(n - 1, d - e, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        if d == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    rec(n, d, &mut Vec::new(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_poly;

    fn p(s: &str, vars: &[&str]) -> MultiPoly {
        parse_poly(s, &Vars::new(vars).unwrap()).unwrap()
    }

    #[test]
    fn difference_of_squares() {
        let v = ["x", "y"];
        assert_eq!(&p("x + y", &v) * &p("x - y", &v), p("x^2 - y^2", &v));
    }

    #[test]
    fn additive_identity() {
        let v = ["x", "y"];
        let a = p("3*x^2*y - 1/2*y + 7", &v);
        let z = MultiPoly::zero(Q, a.vars().clone());
        assert_eq!(&a + &z, a);
    }

    #[test]
    fn hand_expansion_two_terms() {
        let v = ["t0", "t1"];
        let prod = &p("t0^3 + 2*t1^3", &v) * &p("t0*t1^2", &v);
        assert_eq!(prod.num_terms(), 2);
        assert_eq!(prod, p("t0^4*t1^2 + 2*t0*t1^5", &v));
    }

    #[test]
    fn mismatched_variables_rejected() {
        let a = p("x", &["x", "y"]);
        let b = p("x", &["x", "z"]);
        assert!(matches!(a.checked_add(&b), Err(AlgebraError::VariableMismatch(..))));
    }

    #[test]
    fn mismatched_rings_rejected() {
        let a = p("x + 1", &["x"]);
        let f101 = PrimeField::new(101).unwrap();
        let f103 = PrimeField::new(103).unwrap();
        let a101 = a.reduce_mod(f101).unwrap();
        let a103 = a.reduce_mod(f103).unwrap();
        assert!(matches!(a101.checked_mul(&a103), Err(AlgebraError::RingMismatch(..))));
    }

    #[test]
    fn derivatives() {
        let v = ["x", "y", "al"];
        assert_eq!(p("x^4", &v).partial_derivative(0), p("4*x^3", &v));
        assert!(p("5", &v).partial_derivative(0).is_zero());
        assert_eq!(p("6*al*x^2*y^2", &v).partial_derivative(0), p("12*al*x*y^2", &v));
    }

    #[test]
    fn display_is_graded_lex_descending() {
        let v = ["t0", "t1"];
        let a = p("-t1^4 + 3/2*t0^3*t1", &v);
        assert_eq!(a.to_string(), "3/2*t0^3*t1 - t1^4");
        assert_eq!(p("-x + 1", &["x"]).to_string(), "-x + 1");
    }

    #[test]
    fn exact_division() {
        let v = ["x", "y"];
        let a = p("x^3 - y^3", &v);
        let d = p("x - y", &v);
        assert_eq!(a.div_exact(&d).unwrap(), Some(p("x^2 + x*y + y^2", &v)));
        assert_eq!(p("x^2 + 1", &v).div_exact(&d).unwrap(), None);
    }

    #[test]
    fn compose_and_reembed() {
        let v = ["x", "y"];
        let a = p("x^2 + y", &v);
        let w = Vars::new(&["s", "t", "x", "y"]).unwrap();
        let s = MultiPoly::var_named(Q, w.clone(), "s").unwrap();
        let t = MultiPoly::var_named(Q, w.clone(), "t").unwrap();
        let c = a.compose(&[&s + &t, t.clone()]).unwrap();
        assert_eq!(c, parse_poly("s^2 + 2*s*t + t^2 + t", &w).unwrap());
        let e = a.reembed(&w).unwrap();
        assert_eq!(e, parse_poly("x^2 + y", &w).unwrap());
        assert!(c.reembed(&Vars::new(&["s"]).unwrap()).is_err());
    }

    #[test]
    fn primitive_part_normalizes_sign_and_content() {
        let v = ["x", "y"];
        let (pp, f) = p("-3/2*x^2 + 9/4*y^2", &v).primitive_part();
        assert_eq!(pp, p("2*x^2 - 3*y^2", &v));
        assert_eq!(f, crate::algebra::rat(-3, 4));
    }

    #[test]
    fn monomial_enumeration() {
        assert_eq!(monomials_of_degree(3, 3).len(), 10);
        assert_eq!(monomials_of_degree(2, 4)[0], vec![4, 0]);
        assert_eq!(multinomial(&[2, 1, 1]), BigInt::from(12));
    }
}

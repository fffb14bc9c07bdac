//! Invariants of binary and ternary forms: generic forms, a kernel-based
//! invariant finder, evaluation, and the calibrated classical invariants.

mod calibrated;

pub use calibrated::{
    binary_quartic_i2, binary_quartic_i3, canonical_quartic, evaluate_named, hesse_pencil,
    quartic_pencil, quintic_invariants,
    ternary_cubic_s, ternary_cubic_t, ternary_quartic_i3, QuinticInvariants,
};

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::algebra::{
    monomials_of_degree, multinomial, LinearSubstitution, Matrix, MultiPoly, Ring, Vars, Q,
};
use crate::comitants::Form;
use crate::{Error, Result};

/// Largest candidate space `find_invariants` will set up.
pub const MAX_CANDIDATES: usize = 10_000;

/// How the generic form weights its coefficient variables.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize)]
pub enum Basis {
    /// `sum C(d; m) c_m x^m`, the classical convention for binary forms.
    Binomial,
    /// `sum c_m x^m`.
    Monomial,
}

/// The universal form of degree `d` in `n` variables.
#[derive(Clone, Debug)]
pub struct GenericForm {
    pub n: usize,
    pub d: u32,
    pub basis: Basis,
    /// Exponent vectors of the form monomials, aligned with the coefficient variables.
    pub monomials: Vec<Vec<u16>>,
    /// Coefficient variables only.
    pub coeff_vars: Vars,
    /// The form over the coefficient variables followed by the form variables.
    pub form: Form,
}

pub fn form_var_names(n: usize) -> &'static [&'static str] {
    match n {
        2 => &["x", "y"],
        _ => &["x", "y", "z"],
    }
}

fn coeff_name(n: usize, m: &[u16]) -> String {
    if n == 2 {
        format!("a{}", m[1])
    } else {
        format!("c{}{}{}", m[0], m[1], m[2])
    }
}

fn basis_weight(basis: Basis, m: &[u16]) -> BigInt {
    match basis {
        Basis::Binomial => multinomial(m),
        Basis::Monomial => BigInt::one(),
    }
}

/// Binary forms use the binomial basis `a_0 x^d + C(d,1) a_1 x^(d-1) y + ...`;
/// ternary forms use the plain monomial basis with coefficients `c_ijk`.
pub fn generic_form(n: usize, d: u32) -> Result<GenericForm> {
    let basis = match n {
        2 => Basis::Binomial,
        3 => Basis::Monomial,
        _ => return Err(Error::OutOfRange(format!("generic forms in {n} variables"))),
    };
    if d < 1 {
        return Err(Error::OutOfRange("degree must be positive".into()));
    }
    let monomials = monomials_of_degree(n, d);
    let names: Vec<String> = monomials.iter().map(|m| coeff_name(n, m)).collect();
    let coeff_vars = Vars::new(&names)?;
    let all = coeff_vars.extended(form_var_names(n))?;
    let nc = names.len();
    let terms = monomials.iter().enumerate().map(|(k, m)| {
        let mut e = vec![0u16; nc + n];
        e[k] = 1;
        e[nc..].copy_from_slice(m);
        (e, BigRational::from_integer(basis_weight(basis, m)))
    });
    let poly = MultiPoly::from_terms(Q, all, terms);
    let form = Form::new(poly, (nc..nc + n).collect(), d)?;
    Ok(GenericForm { n, d, basis, monomials, coeff_vars, form })
}

/// An invariant of `V(n, d)` as a polynomial in the generic coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct InvariantDescriptor {
    pub n: usize,
    pub d: u32,
    pub degree: u32,
    pub name: String,
    pub basis: Basis,
    /// Polynomial over the coefficient variables of `generic_form(n, d)`.
    pub formula: MultiPoly,
}

impl InvariantDescriptor {
    /// Weight `w` in `I(f o g) = det(g)^w I(f)`, namely `degree * d / n`.
    pub fn weight(&self) -> u32 {
        self.degree * self.d / self.n as u32
    }

    pub fn rescaled(&self, c: &BigRational, name: &str) -> Self {
        InvariantDescriptor {
            formula: self.formula.scale(c),
            name: name.to_string(),
            ..self.clone()
        }
    }
}

/// Coefficients of `f` in the generic basis, as polynomials in the parameters of `f`.
pub fn coefficients_in_basis<R: Ring>(
    gf: &GenericForm,
    f: &Form<R>,
) -> Result<Vec<MultiPoly<R>>> {
    if f.nvars() != gf.n || f.degree() != gf.d {
        return Err(Error::SpaceMismatch(format!(
            "form of degree {} in {} variables, expected V({},{})",
            f.degree(),
            f.nvars(),
            gf.n,
            gf.d
        )));
    }
    let ring = f.poly().ring();
    let coeffs = f.poly().coefficients_in(f.idx());
    gf.monomials
        .iter()
        .map(|m| {
            let c = coeffs
                .get(m)
                .cloned()
                .unwrap_or_else(|| MultiPoly::zero(ring.clone(), f.vars().clone()));
            let w = ring.from_rational(&BigRational::from_integer(basis_weight(gf.basis, m)))?;
            let winv = ring.inv(&w).ok_or_else(|| {
                Error::Degenerate(format!("basis weight not invertible in {}", ring.name()))
            })?;
            Ok(c.scale(&winv))
        })
        .collect()
}

/// Substitutes the coefficients of `f` into the descriptor's formula. The
/// result lives over `f`'s variable list and involves only its parameters.
pub fn evaluate_invariant<R: Ring>(inv: &InvariantDescriptor, f: &Form<R>) -> Result<MultiPoly<R>> {
    let gf = generic_form(inv.n, inv.d)?;
    let coeffs = coefficients_in_basis(&gf, f)?;
    let ring = f.poly().ring().clone();
    let formula = inv.formula.map_coeffs(ring.clone(), |c| ring.from_rational(c))?;
    Ok(formula.compose(&coeffs)?)
}

/// Basis of the degree-`r` invariants of `V(n, d)`.
///
/// Candidates are the coefficient monomials of torus weight zero; the
/// invariants among them form the joint kernel of the derivations induced by
/// the elementary substitutions `x_i -> x_i + eps * x_j`, `i != j`. The kernel
/// is computed modulo a large prime and certified over the rationals.
pub fn find_invariants(n: usize, d: u32, r: u32) -> Result<Vec<InvariantDescriptor>> {
    let gf = generic_form(n, d)?;
    let nc = gf.monomials.len();
    let total = r * d;
    if total % n as u32 != 0 {
        return Ok(Vec::new());
    }
    let target = (total / n as u32) as u16;
    let candidates = zero_weight_monomials(&gf.monomials, r, target, MAX_CANDIDATES)?;
    if candidates.is_empty() {
        return Ok(Vec::new());
    }
    let col_of: HashMap<&[u16], usize> =
        gf.monomials.iter().enumerate().map(|(k, m)| (m.as_slice(), k)).collect();

    // rows indexed by (derivation, output monomial)
    let mut rows: BTreeMap<(usize, Vec<u16>), Vec<(usize, BigRational)>> = BTreeMap::new();
    let mut deriv = 0;
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            // x_j d/dx_i sends c_{m'} x^{m'} to m'_i c_{m'} x^{m' - e_i + e_j}, so
            // delta c_m = w(m') m'_i / w(m) * c_{m'} with m' = m + e_i - e_j.
            let mut delta: Vec<Option<(usize, BigRational)>> = vec![None; nc];
            for (k, m) in gf.monomials.iter().enumerate() {
                if m[j] == 0 {
                    continue;
                }
                let mut mp = m.clone();
                mp[i] += 1;
                mp[j] -= 1;
                let src = col_of[mp.as_slice()];
                let c = BigRational::new(
                    basis_weight(gf.basis, &mp) * BigInt::from(mp[i]),
                    basis_weight(gf.basis, m),
                );
                delta[k] = Some((src, c));
            }
            for (col, u) in candidates.iter().enumerate() {
                for (k, &e) in u.iter().enumerate() {
                    if e == 0 {
                        continue;
                    }
                    let Some((src, c)) = &delta[k] else { continue };
                    // d/dc_k of u times delta c_k
                    let mut out = u.clone();
                    out[k] -= 1;
                    out[*src] += 1;
                    let coef = c * BigRational::from_integer(BigInt::from(e));
                    rows.entry((deriv, out)).or_default().push((col, coef));
                }
            }
            deriv += 1;
        }
    }
    let ncols = candidates.len();
    let mut m = Matrix::zeros(Q, rows.len(), ncols);
    for (ri, entries) in rows.values().enumerate() {
        for (col, c) in entries {
            let v = m.get(ri, *col) + c;
            m.set(ri, *col, v);
        }
    }
    let kernel = m.nullspace_modular();
    let mut out = Vec::with_capacity(kernel.len());
    for (k, v) in kernel.iter().enumerate() {
        let terms = candidates
            .iter()
            .zip(v)
            .filter(|(_, c)| !c.is_zero())
            .map(|(u, c)| (u.clone(), c.clone()));
        let formula = MultiPoly::from_terms(Q, gf.coeff_vars.clone(), terms).primitive_part().0;
        out.push(InvariantDescriptor {
            n,
            d,
            degree: r,
            name: format!("inv_{n}_{d}_{r}_{k}"),
            basis: gf.basis,
            formula,
        });
    }
    Ok(out)
}

/// Exponent vectors over the coefficient variables of total degree `r` whose
/// combined form-monomial weight is `target` in every coordinate.
fn zero_weight_monomials(
    monomials: &[Vec<u16>],
    r: u32,
    target: u16,
    limit: usize,
) -> Result<Vec<Vec<u16>>> {
    let n = monomials[0].len();
    let nc = monomials.len();
    let mut out = Vec::new();
    let mut current = vec![0u16; nc];
    let mut weight = vec![0u16; n];
    #[allow(clippy::too_many_arguments)]
    fn rec(
        k: usize,
        left: u32,
        monomials: &[Vec<u16>],
        target: u16,
        current: &mut Vec<u16>,
        weight: &mut Vec<u16>,
        out: &mut Vec<Vec<u16>>,
        limit: usize,
    ) -> bool {
        if left == 0 {
            if weight.iter().all(|&w| w == target) {
                out.push(current.clone());
                if out.len() > limit {
                    return false;
                }
            }
            return true;
        }
        if k == monomials.len() {
            return true;
        }
        let m = &monomials[k];
        for e in (0..=left).rev() {
            if m.iter().zip(weight.iter()).any(|(&mi, &w)| w as u32 + mi as u32 * e > target as u32) {
                continue;
            }
            current[k] = e as u16;
            for (w, &mi) in weight.iter_mut().zip(m) {
                *w += mi * e as u16;
            }
            let ok = rec(k + 1, left - e, monomials, target, current, weight, out, limit);
            for (w, &mi) in weight.iter_mut().zip(m) {
                *w -= mi * e as u16;
            }
            current[k] = 0;
            if !ok {
                return false;
            }
        }
        true
    }
    if !rec(0, r, monomials, target, &mut current, &mut weight, &mut out, limit) {
        return Err(Error::SizeBound(format!("more than {limit} candidate monomials")));
    }
    Ok(out)
}

/// Whether `I(f o g) = det(g)^w I(f)` holds exactly for the descriptor's weight.
pub fn invariance_holds(inv: &InvariantDescriptor, f: &Form, g: &LinearSubstitution) -> Result<bool> {
    let moved = Form::new(g.apply_to(f.poly(), f.idx())?, f.idx().to_vec(), f.degree())?;
    let lhs = evaluate_invariant(inv, &moved)?;
    let det_w = Q.pow(g.det(), inv.weight());
    let rhs = evaluate_invariant(inv, f)?.scale(&det_w);
    Ok(lhs == rhs)
}

/// Smallest `w <= max_w` with `ratio = det^w`, if any.
pub fn det_power(ratio: &BigRational, det: &BigRational, max_w: u32) -> Option<u32> {
    let mut p = BigRational::one();
    for w in 0..=max_w {
        if &p == ratio {
            return Some(w);
        }
        p *= det;
    }
    None
}

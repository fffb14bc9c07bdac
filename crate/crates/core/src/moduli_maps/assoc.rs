//! Associated forms of binary quartics and ternary cubics.
//!
//! For `f` of degree `d` in `n` variables the graded piece `J(f)_N`,
//! `N = n(d-2)`, of the Jacobian ideal has codimension one and `He(f)` spans
//! a complement. Writing `l^N = as(f)(l) He(f) mod J(f)` for a linear form
//! `l = sum u_i x_i` defines a degree-`N` form `as(f)` in the dual variables.

use num_rational::BigRational;
use num_traits::Zero;

use super::{homogenize_pair, quartic_cover, descend_map, RationalMapP1};
use crate::algebra::{monomials_of_degree, multinomial, poly_det, Matrix, MultiPoly, Ring, Vars, Q};
use crate::comitants::{hessian_form, Form};
use crate::invariants::canonical_quartic;
use crate::{Error, Result};

#[derive(Clone, Debug)]
pub struct AssociatedFormResult {
    pub n: usize,
    pub d: u32,
    /// Degree-`N` form in the dual variables (plus any parameters of `f`),
    /// with coprime integer coefficients.
    pub form: Form,
    /// `form = scale * as(f)`; a polynomial in the parameters of `f`.
    pub scale: MultiPoly,
}

impl AssociatedFormResult {
    pub fn degree(&self) -> u32 {
        self.form.degree()
    }
}

pub fn dual_var_names(n: usize) -> &'static [&'static str] {
    match n {
        2 => &["u", "v"],
        _ => &["u", "v", "w"],
    }
}

/// Columns of the square system: `He(f)` first, then `x_k * d f / d x_i`.
fn system_columns(f: &Form) -> Result<Vec<MultiPoly>> {
    let he = hessian_form(f)?;
    let mut cols = vec![he.into_poly()];
    for &i in f.idx() {
        let fi = f.poly().partial_derivative(i);
        for &k in f.idx() {
            let xk = MultiPoly::var(Q, f.vars().clone(), k);
            cols.push(xk.checked_mul(&fi)?);
        }
    }
    Ok(cols)
}

fn check_space(f: &Form) -> Result<u32> {
    match (f.nvars(), f.degree()) {
        (2, 4) => Ok(4),
        (3, 3) => Ok(3),
        (n, d) => Err(Error::SpaceMismatch(format!(
            "associated forms are implemented for (2,4) and (3,3), got ({n},{d})"
        ))),
    }
}

/// `as(f)` by Cramer's rule on the system `A c = l^N`, where the columns of
/// `A` are `He(f)` and the generators of `J(f)_N` in the monomial basis.
/// Coefficients of `f` may involve parameters (variables outside `f.idx()`).
pub fn associated_form(f: &Form) -> Result<AssociatedFormResult> {
    let big_n = check_space(f)?;
    let n = f.nvars();
    let cols = system_columns(f)?;
    let basis = monomials_of_degree(n, big_n);
    let zero = MultiPoly::zero(Q, f.vars().clone());
    let extracted: Vec<_> = cols.iter().map(|c| c.coefficients_in(f.idx())).collect();
    let a: Vec<Vec<MultiPoly>> = basis
        .iter()
        .map(|m| extracted.iter().map(|c| c.get(m).cloned().unwrap_or_else(|| zero.clone())).collect())
        .collect();
    let det = poly_det(&a)?;
    if det.is_zero() {
        return Err(Error::Degenerate("J(f)_N does not have codimension 1 with He(f) as complement".into()));
    }

    let params: Vec<&str> = f
        .vars()
        .names()
        .iter()
        .enumerate()
        .filter(|(i, _)| !f.idx().contains(i))
        .map(|(_, s)| s.as_str())
        .collect();
    let duals = dual_var_names(n);
    if let Some(c) = duals.iter().find(|d| params.contains(d)) {
        return Err(Error::NameCollision(format!("parameter named {c}")));
    }
    let out_vars = Vars::new(&[params.clone(), duals.to_vec()].concat())?;
    let dual_idx: Vec<usize> = (params.len()..params.len() + n).collect();

    let mut numer = MultiPoly::zero(Q, out_vars.clone());
    for (r, m) in basis.iter().enumerate() {
        let minor: Vec<Vec<MultiPoly>> = a
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != r)
            .map(|(_, row)| row[1..].to_vec())
            .collect();
        let mut cof = poly_det(&minor)?;
        if r % 2 == 1 {
            cof = -cof;
        }
        if cof.is_zero() {
            continue;
        }
        let mut exps = vec![0u16; out_vars.len()];
        for (k, &e) in m.iter().enumerate() {
            exps[dual_idx[k]] = e;
        }
        let mono = MultiPoly::monomial(Q, out_vars.clone(), exps, BigRational::from_integer(multinomial(m)));
        numer = &numer + &cof.reembed(&out_vars)?.checked_mul(&mono)?;
    }
    let (form, content) = numer.primitive_part();
    let scale = det.scale(&Q.inv(&content).expect("nonzero content"));
    let scale = scale.reembed(&Vars::new(&params)?)?;
    Ok(AssociatedFormResult { n, d: f.degree(), form: Form::new(form, dual_idx, big_n)?, scale })
}

/// Checks `l^N - as(f)(l) He(f) in J(f)_N` by solving for the `J(f)`
/// coefficients directly. `f` must have numeric coefficients.
pub fn congruence_holds(f: &Form, res: &AssociatedFormResult, ell: &[BigRational]) -> Result<bool> {
    let big_n = check_space(f)?;
    if f.idx().len() != f.nvars() || f.vars().len() != f.nvars() {
        return Err(Error::SpaceMismatch("congruence check needs a form without parameters".into()));
    }
    if ell.len() != f.nvars() {
        return Err(Error::SpaceMismatch("linear form has the wrong length".into()));
    }
    let scale = res
        .scale
        .constant_value()
        .ok_or_else(|| Error::SpaceMismatch("parametric scale".into()))?;
    let as_val = Q.div(&res.form.poly().evaluate(ell), &scale).expect("nonzero scale");
    let vars = f.vars().clone();
    let lin = (0..f.nvars()).fold(MultiPoly::zero(Q, vars.clone()), |acc, i| {
        &acc + &MultiPoly::var(Q, vars.clone(), f.idx()[i]).scale(&ell[i])
    });
    let cols = system_columns(f)?;
    let target = &lin.pow(big_n) - &cols[0].scale(&as_val);
    let basis = monomials_of_degree(f.nvars(), big_n);
    let gens = &cols[1..];
    let rows: Vec<Vec<BigRational>> = basis
        .iter()
        .map(|m| gens.iter().map(|g| g.coeff(&reindex(m, f.idx(), vars.len()))).collect())
        .collect();
    let b: Vec<BigRational> = basis.iter().map(|m| target.coeff(&reindex(m, f.idx(), vars.len()))).collect();
    Ok(Matrix::from_rows(Q, rows)?.solve(&b)?.is_some())
}

fn reindex(m: &[u16], idx: &[usize], nvars: usize) -> Vec<u16> {
    let mut e = vec![0u16; nvars];
    for (k, &i) in idx.iter().enumerate() {
        e[i] = m[k];
    }
    e
}

/// The map `al -> al'` induced by `as` on the canonical quartics
/// `X^4 + 6 al X^2 Y^2 + Y^4`, as a map of the line with `al = t1/t0`.
/// Fails unless `as(F(al))` is again of canonical shape.
pub fn associated_selfmap_map() -> Result<RationalMapP1> {
    let f = canonical_quartic();
    let res = associated_form(&f)?;
    let coeffs = res.form.poly().coefficients_in(res.form.idx());
    let get = |e: [u16; 2]| coeffs.get(&e.to_vec()).cloned();
    let u4 = get([4, 0]).ok_or_else(|| Error::Inconsistent("as(F) lacks u^4".into()))?;
    if get([0, 4]).as_ref() != Some(&u4) || get([3, 1]).is_some() || get([1, 3]).is_some() {
        return Err(Error::Inconsistent(format!("as(F) = {} is not of canonical shape", res.form.poly())));
    }
    let mid = get([2, 2]).unwrap_or_else(|| MultiPoly::zero(Q, res.form.vars().clone()));
    // al' = mid / (6 u4); pencil coordinates [t0' : t1'] = [6 u4 : mid]
    let params = Vars::new(&["al"])?;
    homogenize_pair(&u4.scale_int(6).reembed(&params)?, &mid.reembed(&params)?, 0)
}

/// Degree of the self-map of the moduli line of binary quartics induced by
/// `as`: `deg(quartic_cover o h') / deg(quartic_cover)`, after checking that
/// the composite descends.
pub fn associated_selfmap_degree() -> Result<u32> {
    let h = associated_selfmap_map()?;
    let cover = quartic_cover()?;
    let comp = RationalMapP1::compose(&cover, &h)?;
    let cd = cover.degree();
    if comp.degree() % cd != 0 {
        return Err(Error::Inconsistent("composite degree not a multiple of the cover degree".into()));
    }
    let d = comp.degree() / cd;
    descend_map(&cover, &comp, d)?;
    Ok(d)
}

/// Value of `as(f)` at `l`, exact.
pub fn evaluate_associated(res: &AssociatedFormResult, ell: &[BigRational]) -> Option<BigRational> {
    let s = res.scale.constant_value()?;
    if s.is_zero() {
        return None;
    }
    Some(res.form.poly().evaluate(ell) / s)
}

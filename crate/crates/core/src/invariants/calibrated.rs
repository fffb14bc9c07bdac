//! The named invariants: Aronhold S and T of ternary cubics, I2 and I3 of
//! binary quartics, the degree 4, 8, 12 invariants of binary quintics and the
//! degree-3 invariant of ternary quartics. Each is computed once and cached.

use std::sync::OnceLock;

use num_rational::BigRational;

use super::{evaluate_invariant, find_invariants, generic_form, invariance_holds, Basis};
use super::InvariantDescriptor;
use crate::algebra::random::{seeded, small_int, unimodular_matrix};
use crate::algebra::{parse_poly, Matrix, MultiPoly, Ring, Vars, Q};
use crate::comitants::{transvectant, Form};
use crate::{Error, Result};

/// `t0*(X^3 + Y^3 + Z^3) + 6*t1*X*Y*Z` over `t0, t1, X, Y, Z`.
pub fn hesse_pencil() -> Form {
    let v = Vars::new(&["t0", "t1", "X", "Y", "Z"]).expect("distinct names");
    let p = parse_poly("t0*X^3 + t0*Y^3 + t0*Z^3 + 6*t1*X*Y*Z", &v).expect("valid fixture");
    Form::new(p, vec![2, 3, 4], 3).expect("homogeneous cubic")
}

/// `t0*(X^4 + Y^4) + 6*t1*X^2*Y^2` over `t0, t1, X, Y`.
pub fn quartic_pencil() -> Form {
    let v = Vars::new(&["t0", "t1", "X", "Y"]).expect("distinct names");
    let p = parse_poly("t0*X^4 + t0*Y^4 + 6*t1*X^2*Y^2", &v).expect("valid fixture");
    Form::new(p, vec![2, 3], 4).expect("homogeneous quartic")
}

/// `X^4 + 6*al*X^2*Y^2 + Y^4` over `al, X, Y`.
pub fn canonical_quartic() -> Form {
    let v = Vars::new(&["al", "X", "Y"]).expect("distinct names");
    let p = parse_poly("X^4 + 6*al*X^2*Y^2 + Y^4", &v).expect("valid fixture");
    Form::new(p, vec![1, 2], 4).expect("homogeneous quartic")
}

/// Scales the unique invariant of the given degree so that it takes the
/// value `target` on `sample`.
fn calibrate(n: usize, d: u32, r: u32, name: &str, sample: &Form, target: &str) -> Result<InvariantDescriptor> {
    let found = find_invariants(n, d, r)?;
    if found.len() != 1 {
        return Err(Error::Inconsistent(format!(
            "expected one invariant of degree {r} on V({n},{d}), found {}",
            found.len()
        )));
    }
    let value = evaluate_invariant(&found[0], sample)?;
    let want = parse_poly(target, sample.vars())?;
    let ratio = value.proportional_to(&want).ok_or_else(|| {
        Error::Inconsistent(format!("{name}: value {value} is not proportional to {want}"))
    })?;
    Ok(found[0].rescaled(&Q.inv(&ratio).expect("nonzero ratio"), name))
}

type Cached = OnceLock<Result<InvariantDescriptor>>;

fn cached(cell: &'static Cached, init: impl FnOnce() -> Result<InvariantDescriptor>) -> Result<&'static InvariantDescriptor> {
    cell.get_or_init(init).as_ref().map_err(Clone::clone)
}

/// Aronhold S, normalized to `t0^3*t1 - t1^4` on the Hesse pencil.
pub fn ternary_cubic_s() -> Result<&'static InvariantDescriptor> {
    static CELL: Cached = OnceLock::new();
    cached(&CELL, || calibrate(3, 3, 4, "S", &hesse_pencil(), "t0^3*t1 - t1^4"))
}

/// Aronhold T, normalized to `t0^6 - 20*t0^3*t1^3 - 8*t1^6` on the Hesse pencil.
pub fn ternary_cubic_t() -> Result<&'static InvariantDescriptor> {
    static CELL: Cached = OnceLock::new();
    cached(&CELL, || {
        calibrate(3, 3, 6, "T", &hesse_pencil(), "t0^6 - 20*t0^3*t1^3 - 8*t1^6")
    })
}

/// I2 of binary quartics, normalized to `1 + 3*al^2` on the canonical quartic.
pub fn binary_quartic_i2() -> Result<&'static InvariantDescriptor> {
    static CELL: Cached = OnceLock::new();
    cached(&CELL, || calibrate(2, 4, 2, "I2", &canonical_quartic(), "1 + 3*al^2"))
}

/// I3 of binary quartics, normalized to `al - al^3` on the canonical quartic.
pub fn binary_quartic_i3() -> Result<&'static InvariantDescriptor> {
    static CELL: Cached = OnceLock::new();
    cached(&CELL, || calibrate(2, 4, 3, "I3", &canonical_quartic(), "al - al^3"))
}

/// The degree-3 invariant of ternary quartics, primitive integer normalization.
pub fn ternary_quartic_i3() -> Result<&'static InvariantDescriptor> {
    static CELL: Cached = OnceLock::new();
    cached(&CELL, || {
        let mut found = find_invariants(3, 4, 3)?;
        if found.len() != 1 {
            return Err(Error::Inconsistent(format!(
                "expected one cubic invariant of ternary quartics, found {}",
                found.len()
            )));
        }
        let mut inv = found.remove(0);
        inv.name = "I3".into();
        Ok(inv)
    })
}

#[derive(Clone, Debug)]
pub struct QuinticInvariants {
    pub i4: InvariantDescriptor,
    pub i8: InvariantDescriptor,
    pub i12: InvariantDescriptor,
}

/// Basic invariants of binary quintics from the transvectant chain
/// `i = (f,f)_4`, `j = (f,i)_2`, `tau = (j,j)_2`:
/// `I4 = (i,i)_2`, `I8 = (i,tau)_2`, `I12 = (tau,tau)_2`.
///
/// Validated on construction: nonzero, invariant under three random
/// unimodular substitutions, and algebraically independent (Jacobian rank 3
/// at a random point).
pub fn quintic_invariants() -> Result<&'static QuinticInvariants> {
    static CELL: OnceLock<Result<QuinticInvariants>> = OnceLock::new();
    CELL.get_or_init(build_quintic_invariants).as_ref().map_err(Clone::clone)
}

fn build_quintic_invariants() -> Result<QuinticInvariants> {
    let gf = generic_form(2, 5)?;
    let f = &gf.form;
    let i = transvectant(f, f, 4)?;
    let j = transvectant(f, &i, 2)?;
    let tau = transvectant(&j, &j, 2)?;
    let to_desc = |form: Form, degree: u32, name: &str| -> Result<InvariantDescriptor> {
        let formula = form.poly().reembed(&gf.coeff_vars)?.primitive_part().0;
        if formula.is_zero() {
            return Err(Error::Inconsistent(format!("{name} vanishes identically")));
        }
        Ok(InvariantDescriptor { n: 2, d: 5, degree, name: name.into(), basis: Basis::Binomial, formula })
    };
    let inv = QuinticInvariants {
        i4: to_desc(transvectant(&i, &i, 2)?, 4, "I4")?,
        i8: to_desc(transvectant(&i, &tau, 2)?, 8, "I8")?,
        i12: to_desc(transvectant(&tau, &tau, 2)?, 12, "I12")?,
    };
    let mut rng = seeded(0x5157);
    let vars = Vars::new(&["x", "y"])?;
    for _ in 0..3 {
        let f = Form::new(
            crate::algebra::random::random_form(&mut rng, &vars, &[0, 1], 5, 5),
            vec![0, 1],
            5,
        )?;
        let g = unimodular_matrix(&mut rng, 2, 3);
        for d in [&inv.i4, &inv.i8, &inv.i12] {
            if !invariance_holds(d, &f, &g)? {
                return Err(Error::Inconsistent(format!("{} is not invariant", d.name)));
            }
        }
    }
    let point: Vec<BigRational> = (0..6).map(|_| small_int(&mut rng, 7)).collect();
    let rows = [&inv.i4, &inv.i8, &inv.i12]
        .iter()
        .map(|d| (0..6).map(|k| d.formula.partial_derivative(k).evaluate(&point)).collect())
        .collect();
    if Matrix::from_rows(Q, rows)?.rank() != 3 {
        return Err(Error::Inconsistent("quintic invariants are dependent".into()));
    }
    Ok(inv)
}

/// The invariant evaluated on a form, for callers holding a plain polynomial
/// in the named form variables.
pub fn evaluate_named(inv: &InvariantDescriptor, poly: &MultiPoly, form_vars: &[&str]) -> Result<MultiPoly> {
    let f = Form::named(poly.clone(), form_vars)?;
    evaluate_invariant(inv, &f)
}

//! Comitants of ternary quartics: the Clebsch covariant `C44` and the Salmon
//! contravariant `Omega24`.

use std::sync::OnceLock;

use crate::algebra::{MultiPoly, Vars, Q};
use crate::comitants::{polar, restrict_to_line, Form, DUAL_VARS};
use crate::invariants::{binary_quartic_i2, evaluate_invariant, generic_form, ternary_cubic_s, ternary_quartic_i3};
use crate::{Error, Result};

/// Power of the chart variable dividing `I2` of the restricted quartic.
pub const SALMON_CHART_POWER: u16 = 4;

const POINT_VARS: [&str; 3] = ["_p0", "_p1", "_p2"];

/// A form in the dual variables `alpha, beta, gamma` (after any parameters).
pub type DualTernaryForm = Form;

fn check_ternary_quartic(f: &Form) -> Result<()> {
    if f.nvars() != 3 || f.degree() != 4 {
        return Err(Error::SpaceMismatch(format!(
            "ternary quartic expected, got degree {} in {} variables",
            f.degree(),
            f.nvars()
        )));
    }
    Ok(())
}

/// `S` of the polar cubic `sum p_i dF/dx_i`, read as a quartic in the point
/// `p`, written back in the variables of `F`.
pub fn clebsch_covariant(f: &Form) -> Result<Form> {
    check_ternary_quartic(f)?;
    let pol = polar(f, POINT_VARS)?;
    let cubic = Form::new(pol, f.idx().to_vec(), 3)?;
    let s = evaluate_invariant(ternary_cubic_s()?, &cubic)?;
    // point variables back to the form variables
    let ext = cubic.vars();
    let n0 = f.vars().len();
    let images: Vec<MultiPoly> = (0..ext.len())
        .map(|i| {
            if i < n0 {
                MultiPoly::var(Q, f.vars().clone(), i)
            } else {
                MultiPoly::var(Q, f.vars().clone(), f.idx()[i - n0])
            }
        })
        .collect();
    Form::new(s.compose(&images)?, f.idx().to_vec(), 4)
}

/// `c * C44(F) + c' * I3(F) * F`, a covariant of degree 4 and order 4 for
/// every `(c, c')`.
pub fn clebsch_pencil(f: &Form, c: &num_rational::BigRational, c2: &num_rational::BigRational) -> Result<Form> {
    let cl = clebsch_covariant(f)?;
    let i3 = evaluate_invariant(ternary_quartic_i3()?, f)?;
    let p = &cl.poly().scale(c) + &(&i3 * f.poly()).scale(c2);
    Form::new(p, f.idx().to_vec(), 4)
}

/// `I2` of the restriction in `chart`, divided by the chart variable to the
/// fourth power. Lives over the parameters of `f` followed by the dual
/// variables.
fn salmon_chart(f: &Form, chart: usize) -> Result<MultiPoly> {
    let r = restrict_to_line(f, chart)?;
    let i2 = evaluate_invariant(binary_quartic_i2()?, &r)?;
    let vars = r.vars();
    let mut exps = vec![0u16; vars.len()];
    exps[vars.len() - 3 + chart] = SALMON_CHART_POWER;
    let d = MultiPoly::monomial(Q, vars.clone(), exps, num_rational::BigRational::from_integer(1.into()));
    let q = i2
        .div_exact(&d)?
        .ok_or_else(|| Error::Inconsistent(format!("{} does not divide I2 in chart {chart}", d)))?;
    Ok(q.reembed(&output_vars(f)?)?)
}

fn output_vars(f: &Form) -> Result<Vars> {
    let params: Vec<&str> = f
        .vars()
        .names()
        .iter()
        .enumerate()
        .filter(|(i, _)| !f.idx().contains(i))
        .map(|(_, s)| s.as_str())
        .collect();
    Ok(Vars::new(&[params, DUAL_VARS.to_vec()].concat())?)
}

/// All three chart computations.
pub fn salmon_charts(f: &Form) -> Result<[MultiPoly; 3]> {
    check_ternary_quartic(f)?;
    Ok([salmon_chart(f, 0)?, salmon_chart(f, 1)?, salmon_chart(f, 2)?])
}

/// `Omega24(F)`: a quartic in `alpha, beta, gamma` of degree 2 in the
/// coefficients of `F`. The three charts are required to agree.
pub fn salmon_contravariant(f: &Form) -> Result<DualTernaryForm> {
    let [c0, c1, c2] = salmon_charts(f)?;
    if c0 != c2 || c1 != c2 {
        return Err(Error::Inconsistent("chart computations of Omega disagree".into()));
    }
    let n = c2.nvars();
    Form::new(c2, vec![n - 3, n - 2, n - 1], 4)
}

/// `Omega24` of the generic quartic, with the power of the chart variable
/// confirmed: `I2` in chart 2 is divisible by exactly `gamma^4`.
pub fn salmon_generic() -> Result<&'static DualTernaryForm> {
    static CELL: OnceLock<Result<DualTernaryForm>> = OnceLock::new();
    CELL.get_or_init(|| {
        let gf = generic_form(3, 4)?;
        let f = &gf.form;
        let r = restrict_to_line(f, 2)?;
        let i2 = evaluate_invariant(binary_quartic_i2()?, &r)?;
        let g = r.vars().len() - 1;
        let min_power = i2.terms().map(|(m, _)| m.0[g]).min().unwrap_or(0);
        if min_power != SALMON_CHART_POWER {
            return Err(Error::Inconsistent(format!(
                "I2 of the generic restriction is divisible by gamma^{min_power}"
            )));
        }
        salmon_contravariant(f)
    })
    .as_ref()
    .map_err(Clone::clone)
}

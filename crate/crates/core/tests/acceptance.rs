//! One PASS/FAIL line per acceptance criterion. Every comparison is exact
//! except the fiber statistic of 5c, whose threshold is printed with it.

use std::process::ExitCode;
use std::time::Instant;

use num_rational::BigRational;
use num_traits::Zero;

use selfmap_core::algebra::random::{invertible_matrix, nonzero_vector, random_form, seeded, small_int, Rng};
use selfmap_core::algebra::{parse_poly, rat, LinearSubstitution, Matrix, MultiPoly, Ring, Vars, Q};
use selfmap_core::comitants::{hessian_form, transvectant, Form};
use selfmap_core::geometry::richelot::chord_triangle;
use selfmap_core::geometry::sixpoints::{conic_through_symbolic, same_symbolic_point};
use selfmap_core::geometry::{
    coble_identity_check, printed_q_table, q_table_symbolic, richelot_forward, richelot_inverse, same_pair_set,
    tangency_holds, PointPair,
};
use selfmap_core::invariants::{
    binary_quartic_i2, binary_quartic_i3, canonical_quartic, evaluate_invariant, evaluate_named, generic_form,
    hesse_pencil, invariance_holds, quintic_invariants, ternary_cubic_s, ternary_cubic_t,
};
use selfmap_core::moduli_maps::assoc::{associated_form, associated_selfmap_degree, congruence_holds};
use selfmap_core::moduli_maps::fiber::sample_fibers;
use selfmap_core::moduli_maps::hammond::{
    c35_covariant, compare_paths, hammond_mod_map, relations_identically, C35Path,
};
use selfmap_core::moduli_maps::{descend_map, hesse_cover, hesse_self_map, quartic_cover, quartic_self_map, RationalMapP1};
use selfmap_core::quartic_comitants::{clebsch_covariant, salmon_charts, salmon_contravariant, salmon_generic};
use selfmap_core::verify::{registry, run_verifications, Status, VerifyConfig};

type Check = fn() -> selfmap_core::Result<(bool, String)>;

const TRIALS: usize = 20;
const FIBER_PRIME: u64 = 101;
const FIBER_SAMPLES: usize = 100;
const FIBER_SEED: u64 = 101;
const FIBER_FRACTION: f64 = 0.95;

fn main() -> ExitCode {
    let criteria: [(&str, &str, Check); 15] = [
        ("1", "Hessian of the Hesse pencil, exact", c1),
        ("2", "calibrated S, T on the Hesse pencil, exact", c2),
        ("3", "Hesse self-map degree 3, cover 12, composite 36, descent round trip", c3),
        ("4", "I2, I3 on the canonical quartic; degrees 2 and 6; descent; Hessian discrepancy logged", c4),
        ("5a", "C35 closed formula equals the Jacobian path up to one scalar, symbolic", c5a),
        ("5b", "a c0 + f c5 = 0 and e c4 - b c1 = 0 identically", c5b),
        ("5c", "Hammond map over F_101: fiber 1 at >= 95% of 100 seeded samples", c5c),
        ("6", "bracket identity and the eight printed minors, exact", c6),
        ("7", "q-table reproduced symbolically; q1..q6 on a conic identically", c7),
        ("8", "equivariance of Hessian, transvectants, C35, C44, Omega: 20 random substitutions each, exact", c8),
        ("9", "I4, I8, I12 invariant, independent, vanish on x^5", c9),
        ("10", "associated-form self-map degree 1; Fermat associated forms; congruence for 5 random l", c10),
        ("11", "Richelot inverse o forward = id on 20 random inputs; tangency of outputs", c11),
        ("12", "Omega cross-chart agreement on the generic quartic; values on x^4 and x^4 + y^4 + z^4", c12),
        ("13", "out-of-scope degree claims reported as such; report covers every criterion", c13),
    ];
    let mut failed = 0;
    for (id, desc, check) in criteria {
        let start = Instant::now();
        let (ok, detail) = check().unwrap_or_else(|e| (false, format!("error: {e}")));
        let ms = start.elapsed().as_millis();
        println!("{} criterion {id}: {desc} ({ms} ms)", if ok { "PASS" } else { "FAIL" });
        for line in detail.lines() {
            println!("      {line}");
        }
        failed += !ok as usize;
    }
    println!("acceptance: {} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

fn c1() -> selfmap_core::Result<(bool, String)> {
    let f = hesse_pencil();
    let he = hessian_form(&f)?;
    let bracket = parse_poly("t0*t1^2*X^3 + t0*t1^2*Y^3 + t0*t1^2*Z^3 - t0^3*X*Y*Z - 2*t1^3*X*Y*Z", f.vars())?;
    let exact = *he.poly() == bracket.scale_int(-216);
    let projective = he.poly().proportional_to(&bracket).is_some();
    Ok((exact && projective, format!("He = {}", he.poly())))
}

fn c2() -> selfmap_core::Result<(bool, String)> {
    let f = hesse_pencil();
    let s = evaluate_invariant(ternary_cubic_s()?, &f)?;
    let t = evaluate_invariant(ternary_cubic_t()?, &f)?;
    let ok = s == parse_poly("t0^3*t1 - t1^4", s.vars())? && t == parse_poly("t0^6 - 20*t0^3*t1^3 - 8*t1^6", t.vars())?;
    Ok((ok, format!("S = {s}; T = {t}")))
}

fn c3() -> selfmap_core::Result<(bool, String)> {
    let h = hesse_self_map()?;
    let c = hesse_cover()?;
    let comp = RationalMapP1::compose(&c, &h)?;
    let r = descend_map(&c, &comp, 3)?;
    let round_trip = RationalMapP1::compose(&r, &c)? == comp;
    let ok = h.degree() == 3 && c.degree() == 12 && comp.degree() == 36 && r.degree() == 3 && round_trip;
    Ok((ok, format!(
        "deg h = {}, deg cover = {}, deg composite = {}, quotient {} of degree {}, round trip {round_trip}",
        h.degree(), c.degree(), comp.degree(), r, r.degree()
    )))
}

fn c4() -> selfmap_core::Result<(bool, String)> {
    let f = canonical_quartic();
    let i2 = evaluate_invariant(binary_quartic_i2()?, &f)?;
    let i3 = evaluate_invariant(binary_quartic_i3()?, &f)?;
    let values = i2 == parse_poly("1 + 3*al^2", i2.vars())? && i3 == parse_poly("al - al^3", i3.vars())?;
    let h = quartic_self_map()?;
    let c = quartic_cover()?;
    let comp = RationalMapP1::compose(&c, &h)?;
    let r = descend_map(&c, &comp, 2)?;
    let he = hessian_form(&f)?;
    let computed = parse_poly("al*X^4 + X^2*Y^2 - 3*al^2*X^2*Y^2 + al*Y^4", f.vars())?;
    let hessian_ok = he.poly().proportional_to(&computed).is_some();
    let cfg = VerifyConfig { only: Some(vec!["quartic-hessian-coefficient".into()]), ..Default::default() };
    let logged = run_verifications(&cfg)?.claims[0].status == Status::DiscrepancyNoted;
    let ok = values && h.degree() == 2 && c.degree() == 6 && r.degree() == 2 && hessian_ok && logged;
    Ok((ok, format!(
        "I2 = {i2}; I3 = {i3}; deg h = {}; deg cover = {}; quotient degree {}; He middle coefficient 1 - 3 al^2: {hessian_ok}; logged as discrepancy-noted: {logged}",
        h.degree(), c.degree(), r.degree()
    )))
}

fn c5a() -> selfmap_core::Result<(bool, String)> {
    let cmp = compare_paths()?;
    Ok((cmp.agree(), format!("ratios closed formula / Jacobian path: {}", cmp.describe())))
}

fn c5b() -> selfmap_core::Result<(bool, String)> {
    let (first, second) = relations_identically(C35Path::Printed)?;
    Ok((first && second, format!("a*c0 + f*c5 = 0: {first}; e*c4 - b*c1 = 0: {second}")))
}

fn c5c() -> selfmap_core::Result<(bool, String)> {
    let m = hammond_mod_map(FIBER_PRIME, C35Path::Jacobian)?;
    let r = sample_fibers(&m, FIBER_SAMPLES, FIBER_SEED);
    let frac = r.fraction_with_fiber(1);
    Ok((
        r.samples.len() >= FIBER_SAMPLES && frac >= FIBER_FRACTION,
        format!(
            "p = {FIBER_PRIME}, seed {FIBER_SEED}: {} samples, fraction with fiber 1 = {frac:.3} (threshold {FIBER_FRACTION}); largest fiber over the whole space {}",
            r.samples.len(),
            r.max_fiber
        ),
    ))
}

fn c6() -> selfmap_core::Result<(bool, String)> {
    let c = coble_identity_check()?;
    let minors: Vec<String> = c.minors.iter().map(|(n, v, ok)| format!("{n} = {v} [{ok}]")).collect();
    Ok((c.all_hold(), format!("identity {}\n{}", c.identity, minors.join("\n"))))
}

fn c7() -> selfmap_core::Result<(bool, String)> {
    let ours = q_table_symbolic();
    let table = ours.iter().zip(printed_q_table().iter()).all(|(a, b)| same_symbolic_point(a, b));
    let conic = conic_through_symbolic(&ours)?;
    Ok((table && conic, format!("table matches: {table}; on a conic identically: {conic}")))
}

fn moved(f: &Form, g: &LinearSubstitution) -> selfmap_core::Result<Form> {
    Form::new(g.apply(f.poly())?, f.idx().to_vec(), f.degree())
}

fn random(rng: &mut Rng, n: usize, d: u32) -> selfmap_core::Result<Form> {
    let names: &[&str] = if n == 2 { &["x", "y"] } else { &["x", "y", "z"] };
    let v = Vars::new(names)?;
    let idx: Vec<usize> = (0..n).collect();
    Form::new(random_form(rng, &v, &idx, d, 3), idx, d)
}

fn law(lhs: &MultiPoly, rhs: &MultiPoly, det: &BigRational, w: u32) -> bool {
    !lhs.is_zero() && *lhs == rhs.scale(&Q.pow(det, w))
}

fn c8() -> selfmap_core::Result<(bool, String)> {
    let mut rng = seeded(8);
    let mut counts = [0usize; 5];
    for t in 0..TRIALS {
        let f = random(&mut rng, 3, 3)?;
        let g = invertible_matrix(&mut rng, 3, 2);
        counts[0] += law(hessian_form(&moved(&f, &g)?)?.poly(), &g.apply(hessian_form(&f)?.poly())?, g.det(), 2) as usize;

        let k = (t % 3 + 1) as u32;
        let (f, h) = (random(&mut rng, 2, 4)?, random(&mut rng, 2, 3)?);
        let g = invertible_matrix(&mut rng, 2, 3);
        let lhs = transvectant(&moved(&f, &g)?, &moved(&h, &g)?, k)?;
        counts[1] += law(lhs.poly(), &g.apply(transvectant(&f, &h, k)?.poly())?, g.det(), k) as usize;

        let f = random(&mut rng, 2, 5)?;
        let g = invertible_matrix(&mut rng, 2, 3);
        counts[2] += law(c35_covariant(&moved(&f, &g)?)?.poly(), &g.apply(c35_covariant(&f)?.poly())?, g.det(), 5) as usize;

        let f = random(&mut rng, 3, 4)?;
        let g = invertible_matrix(&mut rng, 3, 2);
        counts[3] += law(clebsch_covariant(&moved(&f, &g)?)?.poly(), &g.apply(clebsch_covariant(&f)?.poly())?, g.det(), 4) as usize;
        let lhs = salmon_contravariant(&moved(&f, &g)?)?;
        let rhs = g.inverse_transpose()?.apply(salmon_contravariant(&f)?.poly())?;
        counts[4] += law(lhs.poly(), &rhs, g.det(), 4) as usize;
    }
    let names = ["Hessian (w=2)", "transvectant (w=k)", "C35 (w=5)", "C44 (w=4)", "Omega (w=4, inverse transpose)"];
    let detail: Vec<String> = names.iter().zip(counts).map(|(n, c)| format!("{n}: {c}/{TRIALS}")).collect();
    Ok((counts.iter().all(|&c| c == TRIALS), detail.join("; ")))
}

fn c9() -> selfmap_core::Result<(bool, String)> {
    let qi = quintic_invariants()?;
    let descs = [&qi.i4, &qi.i8, &qi.i12];
    let mut rng = seeded(9);
    let mut held = 0;
    for _ in 0..TRIALS {
        let f = random(&mut rng, 2, 5)?;
        let g = invertible_matrix(&mut rng, 2, 2);
        let mut ok = true;
        for d in descs {
            ok &= invariance_holds(d, &f, &g)?;
        }
        held += ok as usize;
    }
    let gf = generic_form(2, 5)?;
    let point: Vec<BigRational> = (0..gf.coeff_vars.len()).map(|_| small_int(&mut rng, 7)).collect();
    let rows = descs
        .iter()
        .map(|d| (0..point.len()).map(|k| d.formula.partial_derivative(k).evaluate(&point)).collect())
        .collect();
    let rank = Matrix::from_rows(Q, rows)?.rank();
    let x5 = parse_poly("x^5", &Vars::new(&["x", "y"])?)?;
    let mut vanish = true;
    for d in descs {
        vanish &= evaluate_named(d, &x5, &["x", "y"])?.is_zero();
    }
    Ok((
        held == TRIALS && rank == 3 && vanish,
        format!("invariance {held}/{TRIALS}; Jacobian rank {rank}; vanish on x^5: {vanish}"),
    ))
}

fn c10() -> selfmap_core::Result<(bool, String)> {
    let d = associated_selfmap_degree()?;
    let mut rng = seeded(10);
    let mut ok = d == 1;
    let mut detail = vec![format!("self-map degree {d}")];
    for (text, names, want) in [
        ("x^4 + y^4", vec!["x", "y"], "u^2*v^2"),
        ("X^3 + Y^3 + Z^3", vec!["X", "Y", "Z"], "u*v*w"),
    ] {
        let f = Form::named(parse_poly(text, &Vars::new(&names)?)?, &names)?;
        let r = associated_form(&f)?;
        let shape = r.form.poly().proportional_to(&parse_poly(want, r.form.vars())?).is_some();
        let mut congruent = 0;
        for _ in 0..5 {
            congruent += congruence_holds(&f, &r, &nonzero_vector(&mut rng, names.len(), 9))? as usize;
        }
        ok &= shape && congruent == 5;
        detail.push(format!("as({text}) = {}; congruence {congruent}/5", r.form.poly()));
    }
    Ok((ok, detail.join("; ")))
}

fn random_pair(rng: &mut Rng) -> PointPair {
    loop {
        if let Ok(p) = PointPair::new(small_int(rng, 6), small_int(rng, 6), small_int(rng, 6)) {
            if !p.is_double() {
                return p;
            }
        }
    }
}

fn c11() -> selfmap_core::Result<(bool, String)> {
    let mut rng = seeded(11);
    let (mut reversed, mut tangent, mut done) = (0, 0, 0);
    while done < TRIALS {
        let pairs = [random_pair(&mut rng), random_pair(&mut rng), random_pair(&mut rng)];
        let Ok(out) = richelot_forward(&pairs) else { continue };
        done += 1;
        reversed += same_pair_set(&richelot_inverse(&out)?, &pairs) as usize;
        let a = chord_triangle(&pairs)?;
        let mut ok = true;
        for i in 0..3 {
            ok &= tangency_holds(&a[i], &out[i])?;
        }
        tangent += ok as usize;
    }
    Ok((
        reversed == TRIALS && tangent == TRIALS,
        format!("inverse o forward = id: {reversed}/{TRIALS}; tangency pairs: {tangent}/{TRIALS}"),
    ))
}

fn c12() -> selfmap_core::Result<(bool, String)> {
    let generic = generic_form(3, 4)?;
    let [a, b, c] = salmon_charts(&generic.form)?;
    let charts = a == b && b == c && !a.is_zero();
    let cached = salmon_generic()?.poly() == &c;
    let xyz = Vars::new(&["x", "y", "z"])?;
    let at = |text: &str| -> selfmap_core::Result<BigRational> {
        let f = Form::named(parse_poly(text, &xyz)?, &["x", "y", "z"])?;
        Ok(salmon_contravariant(&f)?.poly().evaluate(&[rat(0, 1), rat(0, 1), rat(1, 1)]))
    };
    let x4 = at("x^4")?;
    let fermat = at("x^4 + y^4 + z^4")?;
    let i2 = evaluate_named(binary_quartic_i2()?, &parse_poly("x^4 + y^4", &Vars::new(&["x", "y"])?)?, &["x", "y"])?;
    let values = x4.is_zero() && i2.constant_value() == Some(fermat.clone()) && !fermat.is_zero();
    Ok((
        charts && cached && values,
        format!(
            "three charts agree: {charts} ({} terms); Omega(x^4)(0,0,1) = {x4}; Omega(Fermat)(0,0,1) = {fermat} = I2(x^4 + y^4)",
            a.num_terms()
        ),
    ))
}

fn c13() -> selfmap_core::Result<(bool, String)> {
    let out_of_scope = ["genus2-selfmap-degree-16", "sigma-degree-divisible-by-8", "scorza-degree-36", "salmon-selfmap-degree-15"];
    let cfg = VerifyConfig { only: Some(out_of_scope.iter().map(|s| s.to_string()).collect()), ..Default::default() };
    let rep = run_verifications(&cfg)?;
    let reported = rep.claims.len() == 4 && rep.claims.iter().all(|c| c.status == Status::OutOfScope);
    // one registered claim per criterion
    let covering: [&[&str]; 12] = [
        &["hesse-hessian"],
        &["hesse-s-t"],
        &["hesse-selfmap-degree", "hesse-cover-degree", "hesse-descent"],
        &["quartic-i2-i3", "quartic-selfmap-degree", "quartic-cover-degree", "quartic-descent", "quartic-hessian-coefficient"],
        &["hammond-c35-paths", "hammond-relations", "hammond-fibers"],
        &["coble-identity"],
        &["q-table", "q-conic"],
        &["covariance-hessian", "covariance-transvectant", "covariance-c35", "covariance-c44", "contravariance-omega"],
        &["quintic-invariants"],
        &["assoc-selfmap-degree", "assoc-fermat"],
        &["richelot-reversible", "richelot-tangency"],
        &["salmon-charts", "salmon-values"],
    ];
    let ids: Vec<&str> = registry().iter().map(|c| c.id).collect();
    let missing: Vec<&str> =
        covering.iter().flat_map(|c| c.iter()).copied().filter(|id| !ids.contains(id)).collect();
    Ok((
        reported && missing.is_empty(),
        format!("out-of-scope entries: {reported}; registry ids missing for criteria 1-12: {missing:?}"),
    ))
}

//! The six q-points attached to a conic and the coordinate triangle, the
//! bracket identity they satisfy, and conics through given points.

use std::sync::OnceLock;

use num_rational::BigRational;
use num_traits::Zero;

use super::{harmonic_partner, Conic, PointPair, ProjectivePoint};
use crate::algebra::{parse_poly, poly_det, Matrix, MultiPoly, Vars, Q};
use crate::{Error, Result};

/// `a, b, c, d, e, f`.
pub fn conic_vars() -> Vars {
    static V: OnceLock<Vars> = OnceLock::new();
    V.get_or_init(|| Vars::new(&["a", "b", "c", "d", "e", "f"]).expect("distinct")).clone()
}

pub type SymbolicPoint = [MultiPoly; 3];

/// Partner of `[p0 : p1]` with respect to `alpha s^2 + 2 beta s t + gamma t^2`,
/// over polynomial coefficients.
fn partner_poly(q: [&MultiPoly; 3], p: [i64; 2]) -> [MultiPoly; 2] {
    let [al, be, ga] = q;
    [
        &be.scale_int(p[0]) + &ga.scale_int(p[1]),
        -(&al.scale_int(p[0]) + &be.scale_int(p[1])),
    ]
}

/// Coordinate-line data: the line `x_k = 0`, its two surviving coordinates,
/// and for each of its two q-points the vertex used, as a point of the line.
const LINES: [(usize, [usize; 2], [[i64; 2]; 2]); 3] = [
    (0, [1, 2], [[1, 0], [0, 1]]),
    (1, [0, 2], [[0, 1], [1, 0]]),
    (2, [0, 1], [[1, 0], [0, 1]]),
];

/// Restriction of the conic with coefficients `coeffs` to `x_k = 0`, as
/// `(alpha, beta, gamma)` on the two remaining coordinates.
fn restriction<T: Clone>(coeffs: &[T; 6], k: usize) -> [T; 3] {
    let [a, b, c, d, e, f] = coeffs.clone();
    match k {
        0 => [b, f, c],
        1 => [a, e, c],
        _ => [a, d, b],
    }
}

fn lift<T: Clone>(zero: &T, coords: [usize; 2], v: [T; 2]) -> [T; 3] {
    let mut out = [zero.clone(), zero.clone(), zero.clone()];
    let [v0, v1] = v;
    out[coords[0]] = v0;
    out[coords[1]] = v1;
    out
}

/// The q-points of the generic conic, computed by harmonic conjugation on
/// the coordinate lines.
pub fn q_table_symbolic() -> Vec<SymbolicPoint> {
    let v = conic_vars();
    let coeffs: [MultiPoly; 6] = std::array::from_fn(|i| MultiPoly::var(Q, v.clone(), i));
    let zero = MultiPoly::zero(Q, v);
    let mut out = Vec::with_capacity(6);
    for (k, coords, pts) in LINES {
        let r = restriction(&coeffs, k);
        for p in pts {
            out.push(lift(&zero, coords, partner_poly([&r[0], &r[1], &r[2]], p)));
        }
    }
    out
}

/// `q1 = [0,f,-b], q2 = [0,-c,f], q3 = [-c,0,e], q4 = [e,0,-a], q5 = [d,-a,0], q6 = [-b,d,0]`.
pub fn printed_q_table() -> Vec<SymbolicPoint> {
    let v = conic_vars();
    let rows = [
        ["0", "f", "-b"],
        ["0", "-c", "f"],
        ["-c", "0", "e"],
        ["e", "0", "-a"],
        ["d", "-a", "0"],
        ["-b", "d", "0"],
    ];
    rows.iter()
        .map(|r| r.map(|t| parse_poly(t, &v).expect("valid")))
        .collect()
}

/// Projective equality of symbolic points.
pub fn same_symbolic_point(p: &SymbolicPoint, q: &SymbolicPoint) -> bool {
    (0..3).all(|i| (i + 1..3).all(|j| &p[i] * &q[j] == &p[j] * &q[i]))
        && p.iter().any(|c| !c.is_zero())
        && q.iter().any(|c| !c.is_zero())
}

/// The six q-points of a numeric conic, with the coordinate lines as the
/// triangle. Fails if a vertex lies on the conic or two q-points coincide.
pub fn q_construction(c: &Conic) -> Result<[ProjectivePoint; 6]> {
    let coeffs = c.coeffs();
    let zero = BigRational::zero();
    let mut out = Vec::with_capacity(6);
    for (k, coords, pts) in LINES {
        let [al, be, ga] = restriction(&coeffs, k);
        let pair = PointPair::new(al, be, ga)
            .map_err(|_| Error::Degenerate(format!("conic contains the line x{} = 0", k + 1)))?;
        for p in pts {
            let q = harmonic_partner(&pair, &ProjectivePoint::from_ints(&p)?)?;
            let [q0, q1] = [q.coords()[0].clone(), q.coords()[1].clone()];
            out.push(ProjectivePoint::new(lift(&zero, coords, [q0, q1]).to_vec())?);
        }
    }
    for i in 0..6 {
        for j in i + 1..6 {
            if out[i] == out[j] {
                return Err(Error::Degenerate(format!("q{} = q{}", i + 1, j + 1)));
            }
        }
    }
    Ok(out.try_into().expect("six points"))
}

/// The 3x3 minor `(ijk)` of the matrix whose columns are `points`; indices
/// start at 1.
pub fn bracket(i: usize, j: usize, k: usize, points: &[SymbolicPoint]) -> Result<MultiPoly> {
    for &n in &[i, j, k] {
        if n == 0 || n > points.len() {
            return Err(Error::OutOfRange(format!("column {n}")));
        }
    }
    let rows: Vec<Vec<MultiPoly>> = (0..3)
        .map(|r| [i, j, k].iter().map(|&c| points[c - 1][r].clone()).collect())
        .collect();
    Ok(poly_det(&rows)?)
}

#[derive(Clone, Debug)]
pub struct CobleCheck {
    /// `(123)(145)(246)(356) = (124)(135)(236)(456)` identically.
    pub identity: bool,
    /// Each bracket against its closed factorization.
    pub minors: Vec<(String, MultiPoly, bool)>,
    /// Whether the variant with an extra factor `(123)` on the right also holds.
    pub extra_factor_variant: bool,
}

impl CobleCheck {
    pub fn all_hold(&self) -> bool {
        self.identity && self.minors.iter().all(|m| m.2)
    }
}

/// The bracket identity for the printed q-table, and the eight brackets.
pub fn coble_identity_check() -> Result<CobleCheck> {
    let pts = printed_q_table();
    let v = conic_vars();
    let b = |i, j, k| bracket(i, j, k, &pts);
    let lhs = &(&b(1, 2, 3)? * &b(1, 4, 5)?) * &(&b(2, 4, 6)? * &b(3, 5, 6)?);
    let rhs = &(&b(1, 2, 4)? * &b(1, 3, 5)?) * &(&b(2, 3, 6)? * &b(4, 5, 6)?);
    let expected = [
        ((1, 2, 3), "-c*f^2 + b*c^2"),
        ((1, 4, 5), "a*b*e - a*d*f"),
        ((2, 4, 6), "d*e*f - a*b*c"),
        ((3, 5, 6), "d^2*e - a*b*e"),
        ((1, 2, 4), "e*f^2 - b*c*e"),
        ((1, 3, 5), "d*e*f - a*b*c"),
        ((2, 3, 6), "b*c*e - c*d*f"),
        ((4, 5, 6), "-a*d^2 + a^2*b"),
    ];
    let mut minors = Vec::with_capacity(8);
    for ((i, j, k), text) in expected {
        let got = b(i, j, k)?;
        let ok = got == parse_poly(text, &v)?;
        minors.push((format!("({i}{j}{k})"), got, ok));
    }
    let extra = &lhs - &(&rhs * &b(1, 2, 3)?);
    Ok(CobleCheck { identity: lhs == rhs, minors, extra_factor_variant: extra.is_zero() })
}

fn veronese<T: Clone>(p: &[T], mul: impl Fn(&T, &T) -> T) -> Vec<T> {
    vec![
        mul(&p[0], &p[0]),
        mul(&p[1], &p[1]),
        mul(&p[2], &p[2]),
        mul(&p[0], &p[1]),
        mul(&p[0], &p[2]),
        mul(&p[1], &p[2]),
    ]
}

fn veronese_matrix(points: &[ProjectivePoint]) -> Result<Matrix> {
    let rows = points
        .iter()
        .map(|p| {
            if p.dim() != 3 {
                return Err(Error::SpaceMismatch("plane points expected".into()));
            }
            Ok(veronese(p.coords(), |a, b| a * b))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Matrix::from_rows(Q, rows)?)
}

/// Whether six plane points lie on one conic.
pub fn conic_through(points: &[ProjectivePoint]) -> Result<bool> {
    if points.len() != 6 {
        return Err(Error::SpaceMismatch(format!("six points expected, got {}", points.len())));
    }
    Ok(veronese_matrix(points)?.det()?.is_zero())
}

/// The same test over polynomial coordinates, as an identity.
pub fn conic_through_symbolic(points: &[SymbolicPoint]) -> Result<bool> {
    if points.len() != 6 {
        return Err(Error::SpaceMismatch(format!("six points expected, got {}", points.len())));
    }
    let rows: Vec<Vec<MultiPoly>> = points.iter().map(|p| veronese(p, |a, b| a * b)).collect();
    Ok(poly_det(&rows)?.is_zero())
}

/// The conic through five points imposing independent conditions.
pub fn conic_fit(points: &[ProjectivePoint]) -> Result<Conic> {
    if points.len() != 5 {
        return Err(Error::SpaceMismatch(format!("five points expected, got {}", points.len())));
    }
    let kernel = veronese_matrix(points)?.nullspace();
    if kernel.len() != 1 {
        return Err(Error::NotUnique(format!("{}-dimensional family of conics", kernel.len())));
    }
    let v = &kernel[0];
    let half = BigRational::new(1.into(), 2.into());
    Conic::new([
        v[0].clone(),
        v[1].clone(),
        v[2].clone(),
        &v[3] * &half,
        &v[4] * &half,
        &v[5] * &half,
    ])
}

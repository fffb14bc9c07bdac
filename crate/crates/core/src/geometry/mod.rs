//! Plane constructions around a conic: harmonic conjugacy of point pairs,
//! the six q-points and their bracket identity, conics through points, and
//! the Richelot construction.

pub mod richelot;
pub mod sixpoints;

use std::fmt;
use std::sync::OnceLock;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::algebra::{parse_poly, Matrix, MultiPoly, Ring, Vars, Q};
use crate::{Error, Result};

pub use richelot::{
    richelot_forward, richelot_inverse, same_pair_set, sigma_map, tangency_holds, SigmaResult,
};
pub use sixpoints::{
    bracket, coble_identity_check, conic_fit, conic_through, printed_q_table, q_construction,
    q_table_symbolic, CobleCheck,
};

/// Parameters `s, t` on a line or on the standard conic.
pub fn pair_vars() -> Vars {
    static V: OnceLock<Vars> = OnceLock::new();
    V.get_or_init(|| Vars::new(&["s", "t"]).expect("distinct")).clone()
}

/// The binary quadratic `alpha*s^2 + 2*beta*s*t + gamma*t^2`, read as the
/// pair of its roots `[s : t]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointPair {
    pub alpha: BigRational,
    pub beta: BigRational,
    pub gamma: BigRational,
}

impl PointPair {
    pub fn new(alpha: BigRational, beta: BigRational, gamma: BigRational) -> Result<Self> {
        if alpha.is_zero() && beta.is_zero() && gamma.is_zero() {
            return Err(Error::Degenerate("zero quadratic".into()));
        }
        Ok(PointPair { alpha, beta, gamma })
    }

    pub fn from_ints(alpha: i64, two_beta: i64, gamma: i64) -> Result<Self> {
        Self::new(Q.from_int(alpha), BigRational::new(two_beta.into(), 2.into()), Q.from_int(gamma))
    }

    /// Reads a quadratic in two variables; the first one plays the role of `s`.
    pub fn from_poly(p: &MultiPoly) -> Result<Self> {
        if p.nvars() != 2 || p.homogeneous_degree_in(&[0, 1]) != Some(2) {
            return Err(Error::NotHomogeneous(format!("{p} is not a binary quadratic")));
        }
        let half = BigRational::new(1.into(), 2.into());
        Self::new(p.coeff(&[2, 0]), p.coeff(&[1, 1]) * half, p.coeff(&[0, 2]))
    }

    /// Parses a quadratic in `s, t` (or `t0, t1`).
    pub fn parse(text: &str) -> Result<Self> {
        match parse_poly(text, &pair_vars()) {
            Ok(p) => Self::from_poly(&p),
            Err(e) => match parse_poly(text, &Vars::new(&["t0", "t1"])?) {
                Ok(p) => Self::from_poly(&p),
                Err(_) => Err(e.into()),
            },
        }
    }

    pub fn to_poly(&self) -> MultiPoly {
        MultiPoly::from_terms(
            Q,
            pair_vars(),
            [
                (vec![2, 0], self.alpha.clone()),
                (vec![1, 1], &self.beta * BigRational::from_integer(2.into())),
                (vec![0, 2], self.gamma.clone()),
            ],
        )
    }

    /// `beta^2 - alpha*gamma`; zero for a double point.
    pub fn discriminant(&self) -> BigRational {
        &self.beta * &self.beta - &self.alpha * &self.gamma
    }

    pub fn is_double(&self) -> bool {
        self.discriminant().is_zero()
    }

    pub fn value_at(&self, pt: &ProjectivePoint) -> BigRational {
        let (s, t) = (&pt.0[0], &pt.0[1]);
        &self.alpha * s * s + BigRational::from_integer(2.into()) * &self.beta * s * t + &self.gamma * t * t
    }

    /// Equality up to a nonzero scalar.
    pub fn same_as(&self, other: &PointPair) -> bool {
        ProjectivePoint(self.coeffs().to_vec()).same_as(&ProjectivePoint(other.coeffs().to_vec()))
    }

    pub fn coeffs(&self) -> [BigRational; 3] {
        [self.alpha.clone(), self.beta.clone(), self.gamma.clone()]
    }

    /// Primitive integer representative with positive leading coefficient.
    pub fn normalized(&self) -> PointPair {
        let (p, _) = self.to_poly().primitive_part();
        PointPair::from_poly(&p).expect("nonzero quadratic")
    }

    /// The pair with roots `p` and `q`.
    pub fn through(p: &ProjectivePoint, q: &ProjectivePoint) -> Result<Self> {
        if p.dim() != 2 || q.dim() != 2 {
            return Err(Error::SpaceMismatch("points on a line have two coordinates".into()));
        }
        let (s1, t1) = (&p.0[0], &p.0[1]);
        let (s2, t2) = (&q.0[0], &q.0[1]);
        let half = BigRational::new((-1).into(), 2.into());
        Self::new(t1 * t2, (t1 * s2 + s1 * t2) * half, s1 * s2)
    }
}

impl fmt::Display for PointPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_poly())
    }
}

/// `alpha*gamma' - 2*beta*beta' + alpha'*gamma`.
pub fn pairing(b1: &PointPair, b2: &PointPair) -> BigRational {
    &b1.alpha * &b2.gamma - BigRational::from_integer(2.into()) * &b1.beta * &b2.beta + &b2.alpha * &b1.gamma
}

pub fn is_harmonic(b1: &PointPair, b2: &PointPair) -> bool {
    pairing(b1, b2).is_zero()
}

/// The point `q` with `{pt, q}` harmonic to `pair`.
pub fn harmonic_partner(pair: &PointPair, pt: &ProjectivePoint) -> Result<ProjectivePoint> {
    if pt.dim() != 2 {
        return Err(Error::SpaceMismatch("point on a line expected".into()));
    }
    if pair.value_at(pt).is_zero() {
        return Err(Error::Degenerate(format!("{pt} is a root of {pair}")));
    }
    let (p0, p1) = (&pt.0[0], &pt.0[1]);
    ProjectivePoint::new(vec![
        &pair.beta * p0 + &pair.gamma * p1,
        -(&pair.alpha * p0 + &pair.beta * p1),
    ])
}

/// Homogeneous coordinates, compared up to scalar.
#[derive(Clone, Debug)]
pub struct ProjectivePoint(Vec<BigRational>);

impl ProjectivePoint {
    pub fn new(coords: Vec<BigRational>) -> Result<Self> {
        if coords.iter().all(Zero::is_zero) {
            return Err(Error::Degenerate("all coordinates vanish".into()));
        }
        Ok(ProjectivePoint(coords))
    }

    pub fn from_ints(coords: &[i64]) -> Result<Self> {
        Self::new(coords.iter().map(|&c| Q.from_int(c)).collect())
    }

    pub fn coords(&self) -> &[BigRational] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn same_as(&self, other: &ProjectivePoint) -> bool {
        if self.dim() != other.dim() {
            return false;
        }
        (0..self.dim()).all(|i| {
            (i + 1..self.dim()).all(|j| &self.0[i] * &other.0[j] == &self.0[j] * &other.0[i])
        })
    }

    /// Scaled so that the first nonzero coordinate is one.
    pub fn normalized(&self) -> ProjectivePoint {
        let first = self.0.iter().find(|c| !c.is_zero()).expect("nonzero point").clone();
        ProjectivePoint(self.0.iter().map(|c| c / &first).collect())
    }
}

impl PartialEq for ProjectivePoint {
    fn eq(&self, other: &Self) -> bool {
        self.same_as(other)
    }
}

impl fmt::Display for ProjectivePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|c| Q.format(c)).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

/// `a*x^2 + b*y^2 + c*z^2 + 2d*xy + 2e*xz + 2f*yz`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Conic {
    pub a: BigRational,
    pub b: BigRational,
    pub c: BigRational,
    pub d: BigRational,
    pub e: BigRational,
    pub f: BigRational,
}

impl Conic {
    pub fn new(coeffs: [BigRational; 6]) -> Result<Self> {
        if coeffs.iter().all(Zero::is_zero) {
            return Err(Error::Degenerate("zero conic".into()));
        }
        let [a, b, c, d, e, f] = coeffs;
        Ok(Conic { a, b, c, d, e, f })
    }

    pub fn from_ints(v: [i64; 6]) -> Result<Self> {
        Self::new(v.map(|x| Q.from_int(x)))
    }

    /// `xz - y^2`, parametrized by `[s^2, st, t^2]`.
    pub fn standard() -> Self {
        let half = BigRational::new(1.into(), 2.into());
        Conic {
            a: BigRational::zero(),
            b: -BigRational::one(),
            c: BigRational::zero(),
            d: BigRational::zero(),
            e: half,
            f: BigRational::zero(),
        }
    }

    pub fn coeffs(&self) -> [BigRational; 6] {
        [self.a.clone(), self.b.clone(), self.c.clone(), self.d.clone(), self.e.clone(), self.f.clone()]
    }

    pub fn matrix(&self) -> Matrix {
        Matrix::from_rows(
            Q,
            vec![
                vec![self.a.clone(), self.d.clone(), self.e.clone()],
                vec![self.d.clone(), self.b.clone(), self.f.clone()],
                vec![self.e.clone(), self.f.clone(), self.c.clone()],
            ],
        )
        .expect("3x3")
    }

    pub fn from_matrix(m: &Matrix) -> Result<Self> {
        if m.rows() != 3 || m.cols() != 3 || *m != m.transpose() {
            return Err(Error::SpaceMismatch("symmetric 3x3 matrix expected".into()));
        }
        Self::new([
            m.get(0, 0).clone(),
            m.get(1, 1).clone(),
            m.get(2, 2).clone(),
            m.get(0, 1).clone(),
            m.get(0, 2).clone(),
            m.get(1, 2).clone(),
        ])
    }

    pub fn is_nonsingular(&self) -> bool {
        !self.matrix().det().expect("square").is_zero()
    }

    /// Symmetric bilinear form `p^T M q`.
    pub fn bilinear(&self, p: &ProjectivePoint, q: &ProjectivePoint) -> BigRational {
        let mp = self.matrix().mul_vec(p.coords()).expect("3 coordinates");
        mp.iter().zip(q.coords()).map(|(a, b)| a * b).sum()
    }

    pub fn contains(&self, p: &ProjectivePoint) -> bool {
        self.bilinear(p, p).is_zero()
    }

    /// Equality up to a nonzero scalar.
    pub fn same_as(&self, other: &Conic) -> bool {
        ProjectivePoint(self.coeffs().to_vec()).same_as(&ProjectivePoint(other.coeffs().to_vec()))
    }

    pub fn to_poly(&self, vars: &Vars) -> MultiPoly {
        let two = BigRational::from_integer(2.into());
        MultiPoly::from_terms(
            Q,
            vars.clone(),
            [
                (vec![2, 0, 0], self.a.clone()),
                (vec![0, 2, 0], self.b.clone()),
                (vec![0, 0, 2], self.c.clone()),
                (vec![1, 1, 0], &self.d * &two),
                (vec![1, 0, 1], &self.e * &two),
                (vec![0, 1, 1], &self.f * &two),
            ],
        )
    }

    /// Parses `a,b,c,d,e,f`.
    pub fn parse_coeffs(text: &str) -> Result<Self> {
        let v = crate::algebra::parse::parse_rational_list(text)?;
        let arr: [BigRational; 6] = v
            .try_into()
            .map_err(|v: Vec<BigRational>| Error::SpaceMismatch(format!("six coefficients expected, got {}", v.len())))?;
        Self::new(arr)
    }
}

impl fmt::Display for Conic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs().iter().map(|c| Q.format(c)).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// Cross product; the line through two points or the meet of two lines.
pub fn cross(u: &[BigRational], v: &[BigRational]) -> [BigRational; 3] {
    [
        &u[1] * &v[2] - &u[2] * &v[1],
        &u[2] * &v[0] - &u[0] * &v[2],
        &u[0] * &v[1] - &u[1] * &v[0],
    ]
}

pub fn dot(u: &[BigRational], v: &[BigRational]) -> BigRational {
    u.iter().zip(v).map(|(a, b)| a * b).sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pp(text: &str) -> PointPair {
        PointPair::parse(text).unwrap()
    }

    #[test]
    fn harmonic_examples() {
        assert!(is_harmonic(&pp("s^2 - t^2"), &pp("s^2 + t^2")));
        assert!(is_harmonic(&pp("s*t"), &pp("s^2 - t^2")));
        let b1 = pp("s*t");
        let b2 = pp("s*t - t^2");
        assert_eq!(pairing(&b1, &b2), BigRational::new((-1).into(), 2.into()));
        assert!(!is_harmonic(&b1, &b2));
    }

    #[test]
    fn partner_examples() {
        let pair = pp("s^2 - t^2");
        let zero = ProjectivePoint::from_ints(&[0, 1]).unwrap();
        let inf = ProjectivePoint::from_ints(&[1, 0]).unwrap();
        assert_eq!(harmonic_partner(&pair, &zero).unwrap(), inf);
        assert_eq!(harmonic_partner(&pair, &inf).unwrap(), zero);
        // b y^2 + 2 f y z + c z^2 with (b, f, c) = (2, 6, 3), point [0,1,0] on x = 0
        let pair = PointPair::from_ints(2, 12, 3).unwrap();
        let q = harmonic_partner(&pair, &inf).unwrap();
        assert_eq!(q, ProjectivePoint::from_ints(&[6, -2]).unwrap());
        assert!(matches!(
            harmonic_partner(&pp("s^2"), &zero),
            Err(Error::Degenerate(_))
        ));
    }

    #[test]
    fn pair_through_roots() {
        let p = ProjectivePoint::from_ints(&[1, 1]).unwrap();
        let q = ProjectivePoint::from_ints(&[1, -1]).unwrap();
        assert!(PointPair::through(&p, &q).unwrap().same_as(&pp("s^2 - t^2")));
    }

    #[test]
    fn standard_conic_contains_parametrization() {
        let c = Conic::standard();
        for (s, t) in [(1, 0), (0, 1), (2, 3), (-1, 5)] {
            assert!(c.contains(&ProjectivePoint::from_ints(&[s * s, s * t, t * t]).unwrap()));
        }
        assert!(c.is_nonsingular());
    }
}

//! Dense matrices over a field, polynomial determinants and linear changes of
//! variables.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::poly::MultiPoly;
use super::ring::{rational_reconstruct, PrimeField, Rationals, Ring, LIFT_PRIME, Q};
use super::AlgebraError;

#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<R: Ring = Rationals> {
    ring: R,
    rows: usize,
    cols: usize,
    data: Vec<R::Elem>,
}

impl<R: Ring> Matrix<R> {
    pub fn zeros(ring: R, rows: usize, cols: usize) -> Self {
        let data = vec![ring.zero(); rows * cols];
        Matrix { ring, rows, cols, data }
    }

    pub fn identity(ring: R, n: usize) -> Self {
        let mut m = Self::zeros(ring, n, n);
        for i in 0..n {
            m.data[i * n + i] = m.ring.one();
        }
        m
    }

    pub fn from_rows(ring: R, rows: Vec<Vec<R::Elem>>) -> Result<Self, AlgebraError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            if row.len() != c {
                return Err(AlgebraError::DimensionMismatch { expected: c, found: row.len() });
            }
            data.extend(row);
        }
        Ok(Matrix { ring, rows: r, cols: c, data })
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &R::Elem {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: R::Elem) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[R::Elem] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<R::Elem>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.ring.clone(), self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn scale(&self, c: &R::Elem) -> Self {
        let data = self.data.iter().map(|x| self.ring.mul(x, c)).collect();
        Matrix { ring: self.ring.clone(), rows: self.rows, cols: self.cols, data }
    }

    pub fn mul(&self, other: &Self) -> Result<Self, AlgebraError> {
        if self.ring != other.ring {
            return Err(AlgebraError::RingMismatch(self.ring.name(), other.ring.name()));
        }
        if self.cols != other.rows {
            return Err(AlgebraError::DimensionMismatch { expected: self.cols, found: other.rows });
        }
        let r = &self.ring;
        let mut out = Self::zeros(r.clone(), self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = r.zero();
                for k in 0..self.cols {
                    acc = r.add(&acc, &r.mul(self.get(i, k), other.get(k, j)));
                }
                out.set(i, j, acc);
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[R::Elem]) -> Result<Vec<R::Elem>, AlgebraError> {
        if v.len() != self.cols {
            return Err(AlgebraError::DimensionMismatch { expected: self.cols, found: v.len() });
        }
        let r = &self.ring;
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(r.zero(), |acc, (a, b)| r.add(&acc, &r.mul(a, b)))
            })
            .collect())
    }

    /// Reduced row echelon form and the pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let r = &self.ring;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&i| !r.is_zero(m.get(i, col))) else {
                continue;
            };
            if p != row {
                for j in 0..m.cols {
                    m.data.swap(p * m.cols + j, row * m.cols + j);
                }
            }
            let inv = r.inv(m.get(row, col)).expect("nonzero pivot in a field");
            for j in col..m.cols {
                let v = r.mul(m.get(row, j), &inv);
                m.set(row, j, v);
            }
            for i in 0..m.rows {
                if i == row || r.is_zero(m.get(i, col)) {
                    continue;
                }
                let factor = m.get(i, col).clone();
                for j in col..m.cols {
                    let v = r.sub(m.get(i, j), &r.mul(&factor, m.get(row, j)));
                    m.set(i, j, v);
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right kernel read off the reduced echelon form: one vector
    /// per free column, with a 1 in that column.
    pub fn nullspace(&self) -> Vec<Vec<R::Elem>> {
        let (m, pivots) = self.rref();
        kernel_from_rref(&m, &pivots)
    }

    /// A solution of `self * x = b`, if one exists.
    pub fn solve(&self, b: &[R::Elem]) -> Result<Option<Vec<R::Elem>>, AlgebraError> {
        if b.len() != self.rows {
            return Err(AlgebraError::DimensionMismatch { expected: self.rows, found: b.len() });
        }
        let r = &self.ring;
        let mut aug = Self::zeros(r.clone(), self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, self.cols, b[i].clone());
        }
        let (m, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![r.zero(); self.cols];
        for (i, &p) in pivots.iter().enumerate() {
            x[p] = m.get(i, self.cols).clone();
        }
        Ok(Some(x))
    }

    pub fn det(&self) -> Result<R::Elem, AlgebraError> {
        if self.rows != self.cols {
            return Err(AlgebraError::DimensionMismatch { expected: self.rows, found: self.cols });
        }
        let r = &self.ring;
        let n = self.rows;
        let mut m = self.clone();
        let mut det = r.one();
        for col in 0..n {
            let Some(p) = (col..n).find(|&i| !r.is_zero(m.get(i, col))) else {
                return Ok(r.zero());
            };
            if p != col {
                for j in 0..n {
                    m.data.swap(p * n + j, col * n + j);
                }
                det = r.neg(&det);
            }
            let pivot = m.get(col, col).clone();
            det = r.mul(&det, &pivot);
            let inv = r.inv(&pivot).expect("nonzero pivot in a field");
            for i in col + 1..n {
                if r.is_zero(m.get(i, col)) {
                    continue;
                }
                let factor = r.mul(m.get(i, col), &inv);
                for j in col..n {
                    let v = r.sub(m.get(i, j), &r.mul(&factor, m.get(col, j)));
                    m.set(i, j, v);
                }
            }
        }
        Ok(det)
    }

    pub fn inverse(&self) -> Result<Self, AlgebraError> {
        let n = self.rows;
        if n != self.cols {
            return Err(AlgebraError::DimensionMismatch { expected: n, found: self.cols });
        }
        let r = &self.ring;
        let mut aug = Self::zeros(r.clone(), n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, r.one());
        }
        let (m, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(AlgebraError::Singular);
        }
        let mut inv = Self::zeros(r.clone(), n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, m.get(i, n + j).clone());
            }
        }
        Ok(inv)
    }

    /// Adjugate of a square matrix via cofactors; defined also when singular.
    pub fn adjugate(&self) -> Result<Self, AlgebraError> {
        let n = self.rows;
        if n != self.cols {
            return Err(AlgebraError::DimensionMismatch { expected: n, found: self.cols });
        }
        let r = &self.ring;
        let mut adj = Self::zeros(r.clone(), n, n);
        if n == 1 {
            adj.set(0, 0, r.one());
            return Ok(adj);
        }
        for i in 0..n {
            for j in 0..n {
                let minor_rows: Vec<Vec<R::Elem>> = (0..n)
                    .filter(|&a| a != i)
                    .map(|a| (0..n).filter(|&b| b != j).map(|b| self.get(a, b).clone()).collect())
                    .collect();
                let d = Matrix::from_rows(r.clone(), minor_rows)?.det()?;
                let d = if (i + j) % 2 == 1 { r.neg(&d) } else { d };
                adj.set(j, i, d);
            }
        }
        Ok(adj)
    }
}

fn kernel_from_rref<R: Ring>(m: &Matrix<R>, pivots: &[usize]) -> Vec<Vec<R::Elem>> {
    let r = &m.ring;
    let mut basis = Vec::new();
    let mut is_pivot = vec![None; m.cols];
    for (i, &p) in pivots.iter().enumerate() {
        is_pivot[p] = Some(i);
    }
    for free in 0..m.cols {
        if is_pivot[free].is_some() {
            continue;
        }
        let mut v = vec![r.zero(); m.cols];
        v[free] = r.one();
        for (i, &p) in pivots.iter().enumerate() {
            v[p] = r.neg(m.get(i, free));
        }
        basis.push(v);
    }
    basis
}

impl Matrix<Rationals> {
    pub fn from_int_rows(rows: &[&[i64]]) -> Self {
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|&x| Q.from_int(x)).collect())
            .collect();
        Matrix::from_rows(Q, rows).expect("rectangular")
    }

    /// Kernel basis computed modulo a large prime, lifted by rational
    /// reconstruction and certified exactly; falls back to exact elimination
    /// when the lift cannot be certified. Returns the same basis as
    /// [`Matrix::nullspace`].
    pub fn nullspace_modular(&self) -> Vec<Vec<BigRational>> {
        match self.try_modular_kernel() {
            Some(basis) => basis,
            None => self.nullspace(),
        }
    }

    fn try_modular_kernel(&self) -> Option<Vec<Vec<BigRational>>> {
        let field = PrimeField::new(LIFT_PRIME).expect("prime");
        let mut rows = Vec::with_capacity(self.rows);
        for i in 0..self.rows {
            let row = self.row(i);
            let den = super::ring::denominator_lcm(row.iter());
            let scaled: Vec<u64> = row
                .iter()
                .map(|q| {
                    let n: BigInt = q.numer() * (&den / q.denom());
                    field.reduce_int(&n)
                })
                .collect();
            rows.push(scaled);
        }
        let mp = Matrix::from_rows(field, rows).ok()?;
        let (red, pivots) = mp.rref();
        let kernel = kernel_from_rref(&red, &pivots);
        let mut lifted = Vec::with_capacity(kernel.len());
        for v in kernel {
            let w: Option<Vec<BigRational>> =
                v.iter().map(|&a| rational_reconstruct(a, LIFT_PRIME)).collect();
            lifted.push(w?);
        }
        // k independent exact kernel vectors with k = cols - rank_p >= dim ker
        // certify the whole kernel.
        for v in &lifted {
            let image = self.mul_vec(v).ok()?;
            if image.iter().any(|x| !x.is_zero()) {
                return None;
            }
        }
        Some(lifted)
    }
}

/// Determinant of a square matrix of polynomials, by cofactor expansion
/// memoized over column subsets (`n * 2^n` products).
pub fn poly_det<R: Ring>(m: &[Vec<MultiPoly<R>>]) -> Result<MultiPoly<R>, AlgebraError> {
    let n = m.len();
    if n == 0 {
        return Err(AlgebraError::DimensionMismatch { expected: 1, found: 0 });
    }
    for row in m {
        if row.len() != n {
            return Err(AlgebraError::DimensionMismatch { expected: n, found: row.len() });
        }
    }
    let proto = &m[0][0];
    // minors[S] = det of rows n-|S|..n restricted to the columns in S
    let mut minors: HashMap<u32, MultiPoly<R>> = HashMap::new();
    minors.insert(0, MultiPoly::one(proto.ring().clone(), proto.vars().clone()));
    for size in 1..=n {
        let row = n - size;
        let mut next: HashMap<u32, MultiPoly<R>> = HashMap::new();
        for (&set, sub) in &minors {
            if sub.is_zero() {
                continue;
            }
            for col in 0..n {
                if set & (1 << col) != 0 || m[row][col].is_zero() {
                    continue;
                }
                let new_set = set | (1 << col);
                // sign from the position of col among the chosen columns
                let below = (set & ((1u32 << col) - 1)).count_ones();
                let term = m[row][col].checked_mul(sub)?;
                let term = if below % 2 == 1 { -term } else { term };
                let entry = next
                    .entry(new_set)
                    .or_insert_with(|| MultiPoly::zero(proto.ring().clone(), proto.vars().clone()));
                *entry = entry.checked_add(&term)?;
            }
        }
        minors = next;
    }
    Ok(minors
        .remove(&((1u32 << n) - 1))
        .unwrap_or_else(|| MultiPoly::zero(proto.ring().clone(), proto.vars().clone())))
}

/// An invertible linear change of variables `x_i -> sum_j m[i][j] x_j`.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearSubstitution<R: Ring = Rationals> {
    matrix: Matrix<R>,
    det: R::Elem,
}

impl<R: Ring> LinearSubstitution<R> {
    pub fn new(matrix: Matrix<R>) -> Result<Self, AlgebraError> {
        let det = matrix.det()?;
        if matrix.ring().is_zero(&det) {
            return Err(AlgebraError::Singular);
        }
        Ok(LinearSubstitution { matrix, det })
    }

    pub fn identity(ring: R, n: usize) -> Self {
        LinearSubstitution::new(Matrix::identity(ring, n)).expect("identity is invertible")
    }

    pub fn matrix(&self) -> &Matrix<R> {
        &self.matrix
    }

    pub fn det(&self) -> &R::Elem {
        &self.det
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    /// Matrix product: applying `self` then `other` equals applying `self.then(other)`.
    pub fn then(&self, other: &Self) -> Result<Self, AlgebraError> {
        LinearSubstitution::new(self.matrix.mul(&other.matrix)?)
    }

    pub fn inverse(&self) -> Result<Self, AlgebraError> {
        LinearSubstitution::new(self.matrix.inverse()?)
    }

    /// Inverse transpose, the induced action on dual coordinates.
    pub fn inverse_transpose(&self) -> Result<Self, AlgebraError> {
        LinearSubstitution::new(self.matrix.inverse()?.transpose())
    }

    /// `p(M x)` with `x` all variables of `p`.
    pub fn apply(&self, p: &MultiPoly<R>) -> Result<MultiPoly<R>, AlgebraError> {
        let idx: Vec<usize> = (0..p.nvars()).collect();
        self.apply_to(p, &idx)
    }

    /// Substitutes only the variables at positions `idx`, leaving the rest
    /// (parameters) untouched.
    pub fn apply_to(&self, p: &MultiPoly<R>, idx: &[usize]) -> Result<MultiPoly<R>, AlgebraError> {
        if idx.len() != self.dim() {
            return Err(AlgebraError::DimensionMismatch { expected: self.dim(), found: idx.len() });
        }
        if self.matrix.ring() != p.ring() {
            return Err(AlgebraError::RingMismatch(self.matrix.ring().name(), p.ring().name()));
        }
        let ring = p.ring().clone();
        let vars = p.vars().clone();
        let mut images: Vec<MultiPoly<R>> =
            (0..p.nvars()).map(|i| MultiPoly::var(ring.clone(), vars.clone(), i)).collect();
        for (a, &i) in idx.iter().enumerate() {
            let mut img = MultiPoly::zero(ring.clone(), vars.clone());
            for (b, &j) in idx.iter().enumerate() {
                let c = self.matrix.get(a, b);
                if !ring.is_zero(c) {
                    img = &img + &MultiPoly::var(ring.clone(), vars.clone(), j).scale(c);
                }
            }
            images[i] = img;
        }
        p.compose(&images)
    }
}

/// Solves for an element of the span: returns coefficients `c` with
/// `sum c_i * vectors[i] = target` when possible.
pub fn express_in_span<R: Ring>(
    ring: &R,
    vectors: &[Vec<R::Elem>],
    target: &[R::Elem],
) -> Result<Option<Vec<R::Elem>>, AlgebraError> {
    let n = target.len();
    let mut rows = vec![Vec::with_capacity(vectors.len()); n];
    for v in vectors {
        if v.len() != n {
            return Err(AlgebraError::DimensionMismatch { expected: n, found: v.len() });
        }
        for (i, x) in v.iter().enumerate() {
            rows[i].push(x.clone());
        }
    }
    if vectors.is_empty() {
        return Ok(target.iter().all(|x| ring.is_zero(x)).then(Vec::new));
    }
    Matrix::from_rows(ring.clone(), rows)?.solve(target)
}

/// Scales a rational vector to coprime integers with the first nonzero entry positive.
pub fn primitive_vector(v: &[BigRational]) -> Vec<BigRational> {
    use num_integer::Integer;
    use num_traits::Signed;
    let den = super::ring::denominator_lcm(v.iter());
    let ints: Vec<BigInt> = v.iter().map(|q| q.numer() * (&den / q.denom())).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return v.to_vec();
    }
    let sign = if ints.iter().find(|x| !x.is_zero()).map_or(false, |x| x.is_negative()) {
        -BigInt::one()
    } else {
        BigInt::one()
    };
    ints.into_iter()
        .map(|x| BigRational::from_integer(x * &sign / &g))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{parse_poly, rat, Vars};

    #[test]
    fn kernel_of_identity_is_empty() {
        assert!(Matrix::identity(Q, 3).nullspace().is_empty());
    }

    #[test]
    fn kernel_of_zero_matrix() {
        assert_eq!(Matrix::zeros(Q, 2, 2).nullspace().len(), 2);
    }

    #[test]
    fn rank_one_kernel() {
        let m = Matrix::from_int_rows(&[&[1, 1], &[2, 2]]);
        let k = m.nullspace();
        assert_eq!(k, vec![vec![rat(-1, 1), rat(1, 1)]]);
        assert_eq!(m.nullspace_modular(), k);
    }

    #[test]
    fn modular_kernel_matches_exact() {
        let m = Matrix::from_rows(
            Q,
            vec![
                vec![rat(1, 2), rat(3, 7), rat(-5, 3), rat(2, 1)],
                vec![rat(1, 1), rat(6, 7), rat(-10, 3), rat(4, 1)],
                vec![rat(0, 1), rat(1, 11), rat(1, 13), rat(-1, 17)],
            ],
        )
        .unwrap();
        assert_eq!(m.nullspace_modular(), m.nullspace());
    }

    #[test]
    fn determinant_inverse_adjugate() {
        let m = Matrix::from_int_rows(&[&[2, 1, 0], &[1, 3, 1], &[0, 1, 4]]);
        assert_eq!(m.det().unwrap(), rat(18, 1));
        let prod = m.mul(&m.inverse().unwrap()).unwrap();
        assert_eq!(prod, Matrix::identity(Q, 3));
        let adj = m.adjugate().unwrap();
        assert_eq!(m.mul(&adj).unwrap(), Matrix::identity(Q, 3).scale(&rat(18, 1)));
        let singular = Matrix::from_int_rows(&[&[1, 2], &[2, 4]]);
        assert_eq!(singular.inverse(), Err(AlgebraError::Singular));
    }

    #[test]
    fn solve_consistent_and_inconsistent() {
        let m = Matrix::from_int_rows(&[&[1, 1], &[1, -1]]);
        assert_eq!(m.solve(&[rat(3, 1), rat(1, 1)]).unwrap(), Some(vec![rat(2, 1), rat(1, 1)]));
        let s = Matrix::from_int_rows(&[&[1, 1], &[2, 2]]);
        assert_eq!(s.solve(&[rat(1, 1), rat(3, 1)]).unwrap(), None);
    }

    #[test]
    fn polynomial_determinant() {
        let v = Vars::new(&["x", "y"]).unwrap();
        let p = |s: &str| parse_poly(s, &v).unwrap();
        let m = vec![vec![p("x"), p("y")], vec![p("y"), p("x")]];
        assert_eq!(poly_det(&m).unwrap(), p("x^2 - y^2"));
        let m3 = vec![
            vec![p("x"), p("0"), p("0")],
            vec![p("0"), p("y"), p("0")],
            vec![p("0"), p("0"), p("x + y")],
        ];
        assert_eq!(poly_det(&m3).unwrap(), p("x^2*y + x*y^2"));
        let perm = vec![
            vec![p("0"), p("1"), p("0")],
            vec![p("1"), p("0"), p("0")],
            vec![p("0"), p("0"), p("1")],
        ];
        assert_eq!(poly_det(&perm).unwrap(), p("-1"));
    }

    #[test]
    fn substitution_basics() {
        let v = Vars::new(&["x", "y", "z"]).unwrap();
        let p = |s: &str| parse_poly(s, &v).unwrap();
        let swap = LinearSubstitution::new(Matrix::from_int_rows(&[
            &[0, 1, 0],
            &[1, 0, 0],
            &[0, 0, 1],
        ]))
        .unwrap();
        assert_eq!(swap.apply(&p("x^2")).unwrap(), p("y^2"));
        let cyc = LinearSubstitution::new(Matrix::from_int_rows(&[
            &[0, 1, 0],
            &[0, 0, 1],
            &[1, 0, 0],
        ]))
        .unwrap();
        let fermat = p("x^3 + y^3 + z^3");
        assert_eq!(cyc.apply(&fermat).unwrap(), fermat);
        assert!(LinearSubstitution::new(Matrix::zeros(Q, 3, 3)).is_err());
        let bad = LinearSubstitution::identity(Q, 2);
        assert!(bad.apply(&fermat).is_err());
    }

    #[test]
    fn primitive_vectors() {
        assert_eq!(
            primitive_vector(&[rat(0, 1), rat(-2, 3), rat(4, 9)]),
            vec![rat(0, 1), rat(3, 1), rat(-2, 1)]
        );
    }
}

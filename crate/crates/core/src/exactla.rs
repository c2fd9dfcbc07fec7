//! Dense exact linear algebra.
//!
//! Matrices are row-major grids of [`Scalar`] tagged with one [`FieldSpec`].
//! A linear map `F^n -> F^m` is an `m x n` matrix acting on column vectors.
//! Pivoting is always leftmost column, topmost nonzero row, so every reduced
//! row echelon form (and therefore every [`Subspace`]) is reproducible.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
    field: FieldSpec,
}

impl Matrix {
    pub fn zeros(field: FieldSpec, rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
            field,
        }
    }

    pub fn identity(field: FieldSpec, n: usize) -> Self {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    /// Builds a matrix from rows; every row must have `cols` entries in `field`.
    pub fn from_rows(field: FieldSpec, cols: usize, rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for row in rows {
            if row.len() != cols {
                return Err(Error::DimensionMismatch(format!(
                    "row of length {} in a {cols}-column matrix",
                    row.len()
                )));
            }
            for x in row {
                if x.field() != field {
                    return Err(Error::FieldMismatch(format!("{} vs {field}", x.field())));
                }
                data.push(x);
            }
        }
        Ok(Matrix {
            rows: n,
            cols,
            data,
            field,
        })
    }

    pub fn from_i64(field: FieldSpec, rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let mut m = Matrix::zeros(field, rows.len(), cols);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), cols, "ragged integer matrix");
            for (j, &x) in row.iter().enumerate() {
                m.set(i, j, field.from_i64(x));
            }
        }
        m
    }

    /// The matrix whose columns are the given vectors.
    pub fn from_columns(field: FieldSpec, rows: usize, columns: &[Vec<Scalar>]) -> Result<Self> {
        Ok(Matrix::from_rows(field, rows, columns.to_vec())?.transpose())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, x: Scalar) {
        debug_assert_eq!(x.field(), self.field);
        self.data[r * self.cols + c] = x;
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vectors(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn column(&self, c: usize) -> Vec<Scalar> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    fn check_field(&self, other: &Matrix) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch(format!("{} vs {}", self.field, other.field)));
        }
        Ok(())
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        self.check_field(other)?;
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Matrix::zeros(self.field, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let idx = i * out.cols + j;
                        out.data[idx] = &out.data[idx] + &(a * b);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Result<Vec<Scalar>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} matrix applied to a vector of length {}",
                self.rows,
                self.cols,
                v.len()
            )));
        }
        if self.cols == 0 {
            return Ok(vec![self.field.zero(); self.rows]);
        }
        Ok((0..self.rows).map(|i| dot(self.row(i), v)).collect())
    }

    fn zip_with(&self, other: &Matrix, f: impl Fn(&Scalar, &Scalar) -> Scalar) -> Result<Matrix> {
        self.check_field(other)?;
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| f(a, b)).collect(),
            field: self.field,
        })
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Matrix) -> Result<Matrix> {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn scale(&self, s: &Scalar) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * s).collect(),
            field: self.field,
        }
    }

    pub fn trace(&self) -> Scalar {
        (0..self.rows.min(self.cols)).fold(self.field.zero(), |acc, i| &acc + self.get(i, i))
    }

    /// Rows stacked on top of `other`.
    pub fn vstack(&self, other: &Matrix) -> Result<Matrix> {
        self.check_field(other)?;
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch("vstack column count".into()));
        }
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Ok(Matrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
            field: self.field,
        })
    }

    /// Columns of `self` followed by columns of `other`.
    pub fn hstack(&self, other: &Matrix) -> Result<Matrix> {
        Ok(self.transpose().vstack(&other.transpose())?.transpose())
    }

    pub fn select_rows(&self, rows: &[usize]) -> Matrix {
        let mut data = Vec::with_capacity(rows.len() * self.cols);
        for &r in rows {
            data.extend_from_slice(self.row(r));
        }
        Matrix {
            rows: rows.len(),
            cols: self.cols,
            data,
            field: self.field,
        }
    }

    pub fn rank(&self) -> usize {
        rref(self).rank
    }

    /// Entries as rationals; `None` over a prime field.
    pub fn to_rational_rows(&self) -> Option<Vec<Vec<BigRational>>> {
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .map(|x| x.as_rational().cloned())
                    .collect::<Option<Vec<_>>>()
            })
            .collect()
    }

    pub fn from_rational_rows(rows: &[Vec<BigRational>], cols: usize) -> Matrix {
        let data: Vec<Scalar> = rows
            .iter()
            .flat_map(|r| r.iter().map(|q| Scalar::Rational(q.clone())))
            .collect();
        assert_eq!(data.len(), rows.len() * cols);
        Matrix {
            rows: rows.len(),
            cols,
            data,
            field: FieldSpec::Rationals,
        }
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let cells: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

pub fn dot(a: &[Scalar], b: &[Scalar]) -> Scalar {
    debug_assert_eq!(a.len(), b.len());
    let mut acc: Option<Scalar> = None;
    for (x, y) in a.iter().zip(b) {
        if x.is_zero() || y.is_zero() {
            continue;
        }
        let p = x * y;
        acc = Some(match acc {
            Some(s) => &s + &p,
            None => p,
        });
    }
    acc.unwrap_or_else(|| match a.first() {
        Some(x) => x.field().zero(),
        None => Scalar::Rational(BigRational::zero()),
    })
}

/// Reduced row echelon form together with its rank and pivot columns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Echelon {
    pub rref: Matrix,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

pub fn rref(m: &Matrix) -> Echelon {
    let mut a = m.clone();
    let (rows, cols) = (a.rows, a.cols);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a.get(i, c).is_zero()) else {
            continue;
        };
        if p != r {
            for j in 0..cols {
                a.data.swap(p * cols + j, r * cols + j);
            }
        }
        let inv = a.get(r, c).inv().expect("pivot is nonzero");
        for j in c..cols {
            let x = a.get(r, j) * &inv;
            a.set(r, j, x);
        }
        for i in 0..rows {
            if i == r || a.get(i, c).is_zero() {
                continue;
            }
            let factor = a.get(i, c).clone();
            for j in c..cols {
                let pj = a.get(r, j);
                if pj.is_zero() {
                    continue;
                }
                let x = a.get(i, j) - &(&factor * pj);
                a.set(i, j, x);
            }
        }
        pivots.push(c);
        r += 1;
    }
    Echelon {
        rref: a,
        rank: pivots.len(),
        pivots,
    }
}

/// A linear subspace of `F^n`, stored as the nonzero rows of an RREF matrix.
/// Equality is entrywise equality of those rows.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient_dim: usize,
    basis: Matrix,
}

impl Subspace {
    pub fn zero(field: FieldSpec, ambient_dim: usize) -> Self {
        Subspace {
            ambient_dim,
            basis: Matrix::zeros(field, 0, ambient_dim),
        }
    }

    pub fn full(field: FieldSpec, ambient_dim: usize) -> Self {
        Subspace {
            ambient_dim,
            basis: Matrix::identity(field, ambient_dim),
        }
    }

    /// Span of the rows of `rows`.
    pub fn from_rows(rows: &Matrix) -> Self {
        let e = rref(rows);
        let keep: Vec<usize> = (0..e.rank).collect();
        Subspace {
            ambient_dim: rows.cols(),
            basis: e.rref.select_rows(&keep),
        }
    }

    pub fn span(field: FieldSpec, ambient_dim: usize, vectors: &[Vec<Scalar>]) -> Result<Self> {
        Ok(Subspace::from_rows(&Matrix::from_rows(field, ambient_dim, vectors.to_vec())?))
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn field(&self) -> FieldSpec {
        self.basis.field()
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn vectors(&self) -> Vec<Vec<Scalar>> {
        self.basis.row_vectors()
    }

    fn check_compatible(&self, other: &Subspace) -> Result<()> {
        if self.field() != other.field() {
            return Err(Error::FieldMismatch(format!("{} vs {}", self.field(), other.field())));
        }
        if self.ambient_dim != other.ambient_dim {
            return Err(Error::AmbientMismatch {
                left: self.ambient_dim,
                right: other.ambient_dim,
            });
        }
        Ok(())
    }

    /// Residual of `v` after eliminating against the basis rows.
    fn residual(&self, v: &[Scalar]) -> Vec<Scalar> {
        let mut r = v.to_vec();
        for i in 0..self.dim() {
            let row = self.basis.row(i);
            let p = row.iter().position(|x| !x.is_zero()).expect("basis rows are nonzero");
            if r[p].is_zero() {
                continue;
            }
            let f = r[p].clone();
            for (x, b) in r.iter_mut().zip(row) {
                if !b.is_zero() {
                    *x = &*x - &(&f * b);
                }
            }
        }
        r
    }

    pub fn contains(&self, v: &[Scalar]) -> Result<bool> {
        if v.len() != self.ambient_dim {
            return Err(Error::AmbientMismatch {
                left: self.ambient_dim,
                right: v.len(),
            });
        }
        if let Some(x) = v.iter().find(|x| x.field() != self.field()) {
            return Err(Error::FieldMismatch(format!("{} vs {}", x.field(), self.field())));
        }
        Ok(self.residual(v).iter().all(Scalar::is_zero))
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> Result<bool> {
        self.check_compatible(other)?;
        for v in self.vectors() {
            if !other.contains(&v)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_compatible(other)?;
        Ok(Subspace::from_rows(&self.basis.vstack(&other.basis)?))
    }

    /// Zassenhaus: reduce `[[A, A], [B, 0]]`; rows with a zero left half carry
    /// a basis of the intersection in their right half.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.check_compatible(other)?;
        let n = self.ambient_dim;
        let field = self.field();
        let top = self.basis.hstack(&self.basis)?;
        let bottom = other.basis.hstack(&Matrix::zeros(field, other.dim(), n))?;
        let e = rref(&top.vstack(&bottom)?);
        let rows: Vec<Vec<Scalar>> = (0..e.rank)
            .filter(|&i| e.rref.row(i)[..n].iter().all(Scalar::is_zero))
            .map(|i| e.rref.row(i)[n..].to_vec())
            .collect();
        Subspace::span(field, n, &rows)
    }
}

pub fn kernel_basis(m: &Matrix) -> Subspace {
    let e = rref(m);
    let field = m.field();
    let n = m.cols();
    let mut is_pivot = vec![false; n];
    for &p in &e.pivots {
        is_pivot[p] = true;
    }
    let vectors: Vec<Vec<Scalar>> = (0..n)
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut v = vec![field.zero(); n];
            v[free] = field.one();
            for (i, &p) in e.pivots.iter().enumerate() {
                v[p] = -e.rref.get(i, free);
            }
            v
        })
        .collect();
    Subspace::span(field, n, &vectors).expect("kernel vectors are well formed")
}

/// The column space of `m`, as a subspace of `F^rows`.
pub fn image_basis(m: &Matrix) -> Subspace {
    Subspace::from_rows(&m.transpose())
}

pub fn intersect(a: &Subspace, b: &Subspace) -> Result<Subspace> {
    a.intersect(b)
}

pub fn member(s: &Subspace, v: &[Scalar]) -> Result<bool> {
    s.contains(v)
}

/// Some solution of `m x = b`, or `None` when the system is inconsistent.
pub fn solve(m: &Matrix, b: &[Scalar]) -> Result<Option<Vec<Scalar>>> {
    if b.len() != m.rows() {
        return Err(Error::DimensionMismatch("right-hand side length".into()));
    }
    let field = m.field();
    let rhs = Matrix::from_columns(field, m.rows(), &[b.to_vec()])?;
    let e = rref(&m.hstack(&rhs)?);
    let n = m.cols();
    if e.pivots.last() == Some(&n) {
        return Ok(None);
    }
    let mut x = vec![field.zero(); n];
    for (i, &p) in e.pivots.iter().enumerate() {
        x[p] = e.rref.get(i, n).clone();
    }
    Ok(Some(x))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PsdCertificate {
    /// Pivots of the LDLᵀ factorization in elimination order, one per index;
    /// trailing zeros belong to the vanishing residual block.
    Psd { pivots: Vec<BigRational> },
    /// `witnessᵀ M witness = value < 0`.
    NotPsd {
        witness: Vec<BigRational>,
        value: BigRational,
    },
}

impl PsdCertificate {
    pub fn is_psd(&self) -> bool {
        matches!(self, PsdCertificate::Psd { .. })
    }
}

pub fn quadratic_form(m: &[Vec<BigRational>], v: &[BigRational]) -> BigRational {
    let mut acc = BigRational::zero();
    for (i, row) in m.iter().enumerate() {
        if v[i].is_zero() {
            continue;
        }
        for (j, a) in row.iter().enumerate() {
            if !a.is_zero() && !v[j].is_zero() {
                acc += &v[i] * a * &v[j];
            }
        }
    }
    acc
}

fn rational_square(m: &Matrix) -> Result<Vec<Vec<BigRational>>> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    m.to_rational_rows()
        .ok_or_else(|| Error::FieldMismatch(format!("{} is not ordered", m.field())))
}

/// LDLᵀ with greedy diagonal pivoting over Q.
///
/// Each step pivots on the largest remaining diagonal entry. A negative pivot,
/// or a zero pivot whose residual row is nonzero, yields an explicit witness
/// vector that is mapped back through the eliminated steps.
pub fn psd_certificate(m: &Matrix) -> Result<PsdCertificate> {
    let mut a = rational_square(m)?;
    if !m.is_symmetric() {
        return Err(Error::NotSymmetric);
    }
    let n = a.len();
    let mut remaining: Vec<usize> = (0..n).collect();
    // (pivot index, multipliers L[j][p] for the indices remaining after it)
    let mut steps: Vec<(usize, Vec<(usize, BigRational)>)> = Vec::new();
    let mut pivots = Vec::with_capacity(n);

    let lift = |steps: &[(usize, Vec<(usize, BigRational)>)], mut v: Vec<BigRational>| {
        for (p, mults) in steps.iter().rev() {
            let s: BigRational = mults.iter().map(|(j, l)| l * &v[*j]).sum();
            v[*p] = -s;
        }
        v
    };

    while !remaining.is_empty() {
        let &p = remaining
            .iter()
            .max_by(|&&i, &&j| a[i][i].cmp(&a[j][j]).then(j.cmp(&i)))
            .expect("nonempty");
        let d = a[p][p].clone();
        if d.is_negative() {
            let mut v = vec![BigRational::zero(); n];
            v[p] = BigRational::one();
            let v = lift(&steps, v);
            let value = quadratic_form(&rational_square(m)?, &v);
            return Ok(PsdCertificate::NotPsd { witness: v, value });
        }
        if d.is_zero() {
            if let Some(&j) = remaining.iter().find(|&&j| !a[p][j].is_zero()) {
                let mut v = vec![BigRational::zero(); n];
                v[p] = BigRational::one();
                v[j] = -a[p][j].clone();
                let v = lift(&steps, v);
                let value = quadratic_form(&rational_square(m)?, &v);
                return Ok(PsdCertificate::NotPsd { witness: v, value });
            }
            // Largest diagonal is zero and its row vanishes; continue with
            // the rest, which are all zero on the diagonal as well.
            pivots.push(d);
            remaining.retain(|&i| i != p);
            continue;
        }
        remaining.retain(|&i| i != p);
        let mults: Vec<(usize, BigRational)> = remaining
            .iter()
            .map(|&j| (j, &a[p][j] / &d))
            .collect();
        for &(i, ref li) in &mults {
            if li.is_zero() {
                continue;
            }
            for &(j, _) in &mults {
                let delta = li * &a[p][j];
                a[i][j] -= delta;
            }
        }
        pivots.push(d);
        steps.push((p, mults));
    }
    Ok(PsdCertificate::Psd { pivots })
}

/// Characteristic polynomial `det(λI - M)` by the Faddeev–LeVerrier
/// recurrence, coefficients in ascending degree (the last is 1).
pub fn char_poly(m: &Matrix) -> Result<Vec<BigRational>> {
    let a = rational_square(m)?;
    let n = a.len();
    let mut coeffs = vec![BigRational::zero(); n + 1];
    coeffs[n] = BigRational::one();
    // M_k = A M_{k-1} + c_{n-k+1} I, c_{n-k} = -tr(A M_k) / k
    let mut mk = vec![vec![BigRational::zero(); n]; n];
    for k in 1..=n {
        let prev_c = coeffs[n - k + 1].clone();
        let mut next = mat_mul_q(&a, &mk);
        for (i, row) in next.iter_mut().enumerate() {
            row[i] += &prev_c;
        }
        mk = next;
        let am = mat_mul_q(&a, &mk);
        let tr: BigRational = (0..n).map(|i| am[i][i].clone()).sum();
        coeffs[n - k] = -tr / BigRational::from_integer(BigInt::from(k));
    }
    Ok(coeffs)
}

fn mat_mul_q(a: &[Vec<BigRational>], b: &[Vec<BigRational>]) -> Vec<Vec<BigRational>> {
    let n = a.len();
    let m = b.first().map_or(0, Vec::len);
    let mut out = vec![vec![BigRational::zero(); m]; n];
    for i in 0..n {
        for (k, bk) in b.iter().enumerate() {
            if a[i][k].is_zero() {
                continue;
            }
            for j in 0..m {
                if !bk[j].is_zero() {
                    out[i][j] += &a[i][k] * &bk[j];
                }
            }
        }
    }
    out
}

/// Evaluates an ascending-coefficient polynomial at a square matrix.
pub fn poly_eval_matrix(coeffs: &[BigRational], m: &Matrix) -> Result<Matrix> {
    let a = rational_square(m)?;
    let n = a.len();
    let mut acc = vec![vec![BigRational::zero(); n]; n];
    for c in coeffs.iter().rev() {
        acc = mat_mul_q(&acc, &a);
        for (i, row) in acc.iter_mut().enumerate() {
            row[i] += c;
        }
    }
    Ok(Matrix::from_rational_rows(&acc, n))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Spectrum {
    /// Distinct eigenvalues in ascending order with algebraic multiplicities.
    Full(Vec<(BigRational, usize)>),
    /// The characteristic polynomial does not split over Q.
    Partial { rank: usize, psd: bool },
}

impl Spectrum {
    /// Smallest nonzero and largest eigenvalue, when the spectrum is known.
    pub fn extremes(&self) -> Option<(Option<BigRational>, Option<BigRational>)> {
        match self {
            Spectrum::Full(eigs) => {
                let min_pos = eigs.iter().map(|(l, _)| l).find(|l| !l.is_zero()).cloned();
                let max = eigs.last().map(|(l, _)| l.clone());
                Some((min_pos, max))
            }
            Spectrum::Partial { .. } => None,
        }
    }
}

fn poly_eval(coeffs: &[BigInt], x: &BigInt) -> BigInt {
    coeffs
        .iter()
        .rev()
        .fold(BigInt::zero(), |acc, c| acc * x + c)
}

/// Divides by `(λ - root)`; the remainder must be zero.
fn deflate(coeffs: &[BigInt], root: &BigInt) -> Vec<BigInt> {
    let n = coeffs.len() - 1;
    let mut out = vec![BigInt::zero(); n];
    let mut carry = BigInt::zero();
    for i in (0..n).rev() {
        carry = &coeffs[i + 1] + carry * root;
        out[i] = carry.clone();
    }
    out
}

// Candidate scan cap for the integer-root search.
const MAX_ROOT_SCAN: u64 = 2_000_000;

/// Eigenvalues of a symmetric rational matrix when its characteristic
/// polynomial splits over Q.
///
/// The matrix is scaled by the common denominator `d` so that the
/// characteristic polynomial is monic with integer coefficients; its rational
/// roots are then integers dividing the lowest nonzero coefficient, bounded
/// by the absolute row-sum norm.
pub fn rational_spectrum(m: &Matrix) -> Result<Spectrum> {
    let a = rational_square(m)?;
    if !m.is_symmetric() {
        return Err(Error::NotSymmetric);
    }
    let n = a.len();
    let d = a
        .iter()
        .flatten()
        .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    let scaled: Vec<Vec<BigRational>> = a
        .iter()
        .map(|r| r.iter().map(|q| q * BigRational::from_integer(d.clone())).collect())
        .collect();
    let poly: Vec<BigInt> = char_poly(&Matrix::from_rational_rows(&scaled, n))?
        .into_iter()
        .map(|c| {
            debug_assert!(c.is_integer());
            c.to_integer()
        })
        .collect();

    let partial = || -> Result<Spectrum> {
        Ok(Spectrum::Partial {
            rank: m.rank(),
            psd: psd_certificate(m)?.is_psd(),
        })
    };

    let mut rest = poly;
    let mut found: Vec<(BigInt, usize)> = Vec::new();
    let zeros = rest.iter().take_while(|c| c.is_zero()).count();
    if zeros > 0 {
        found.push((BigInt::zero(), zeros));
        rest.drain(..zeros);
    }
    if rest.len() > 1 {
        let bound: BigInt = scaled
            .iter()
            .map(|r| r.iter().map(|q| q.to_integer().abs()).sum::<BigInt>())
            .max()
            .unwrap_or_else(BigInt::zero);
        let Some(bound) = bound.to_u64().filter(|&b| b <= MAX_ROOT_SCAN) else {
            return partial();
        };
        for t in 1..=bound {
            for cand in [-BigInt::from(t), BigInt::from(t)] {
                if rest.len() == 1 {
                    break;
                }
                let mut mult = 0;
                while rest.len() > 1
                    && (&rest[0] % &cand).is_zero()
                    && poly_eval(&rest, &cand).is_zero()
                {
                    rest = deflate(&rest, &cand);
                    mult += 1;
                }
                if mult > 0 {
                    found.push((cand, mult));
                }
            }
            if rest.len() == 1 {
                break;
            }
        }
    }
    if rest.len() > 1 {
        return partial();
    }
    let mut eigs: Vec<(BigRational, usize)> = found
        .into_iter()
        .map(|(r, k)| (BigRational::new(r, d.clone()), k))
        .collect();
    eigs.sort();
    Ok(Spectrum::Full(eigs))
}

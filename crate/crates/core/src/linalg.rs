//! Exact dense linear algebra, a sparse homogeneous-system builder, and the
//! search for an invertible element in a linear space of square matrices.

use std::collections::BTreeMap;
use std::marker::PhantomData;
use std::ops::{Index, IndexMut};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use rand::Rng;

use crate::error::{Error, Result};
use crate::scalar::{Field, Scalar};

/// Dense row-major matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix<E> {
    rows: usize,
    cols: usize,
    data: Vec<E>,
}

impl<E: Scalar> Matrix<E> {
    pub fn zeros<F: Field<Elem = E>>(field: &F, rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity<F: Field<Elem = E>>(field: &F, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m[(i, i)] = field.one();
        }
        m
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<E>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Shape(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn from_rows(cols: usize, rows: Vec<Vec<E>>) -> Result<Self> {
        let n = rows.len();
        if let Some(r) = rows.iter().find(|r| r.len() != cols) {
            return Err(Error::Shape(format!(
                "row of length {} in a {cols}-column matrix",
                r.len()
            )));
        }
        Ok(Matrix {
            rows: n,
            cols,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// The matrix whose columns are the given vectors.
    pub fn from_columns<F: Field<Elem = E>>(field: &F, rows: usize, columns: &[Vec<E>]) -> Self {
        let mut m = Self::zeros(field, rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            for (i, x) in c.iter().enumerate() {
                m[(i, j)] = x.clone();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[E] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<E> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn entries(&self) -> &[E] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self[(i, j)].clone());
            }
        }
        Matrix {
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }

    pub fn mul<F: Field<Elem = E>>(&self, field: &F, rhs: &Matrix<E>) -> Result<Matrix<E>> {
        if self.cols != rhs.rows {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Matrix::zeros(field, self.rows, rhs.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = &self[(i, l)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs[(l, j)];
                    if !b.is_zero() {
                        out[(i, j)] = out[(i, j)].clone() + a.clone() * b.clone();
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec<F: Field<Elem = E>>(&self, field: &F, v: &[E]) -> Result<Vec<E>> {
        if v.len() != self.cols {
            return Err(Error::Shape(format!(
                "vector of length {} against {} columns",
                v.len(),
                self.cols
            )));
        }
        Ok((0..self.rows).map(|i| dot(field, self.row(i), v)).collect())
    }

    pub fn add(&self, rhs: &Matrix<E>) -> Result<Matrix<E>> {
        self.zip_with(rhs, |a, b| a + b)
    }

    pub fn sub(&self, rhs: &Matrix<E>) -> Result<Matrix<E>> {
        self.zip_with(rhs, |a, b| a - b)
    }

    fn zip_with(&self, rhs: &Matrix<E>, op: impl Fn(E, E) -> E) -> Result<Matrix<E>> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(Error::Shape(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let data = self
            .data
            .iter()
            .zip(&rhs.data)
            .map(|(a, b)| op(a.clone(), b.clone()))
            .collect();
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn scale(&self, c: &E) -> Matrix<E> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x.clone() * c.clone()).collect(),
        }
    }

    /// Submatrix on the given rows and columns, in the given order.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Matrix<E> {
        let mut data = Vec::with_capacity(rows.len() * cols.len());
        for &i in rows {
            for &j in cols {
                data.push(self[(i, j)].clone());
            }
        }
        Matrix {
            rows: rows.len(),
            cols: cols.len(),
            data,
        }
    }

    /// Nonzero entries of column `j` as `(row, value)`.
    pub fn column_support(&self, j: usize) -> Vec<(usize, E)> {
        (0..self.rows)
            .filter(|&i| !self[(i, j)].is_zero())
            .map(|i| (i, self[(i, j)].clone()))
            .collect()
    }

    /// Nonzero entries of row `i` as `(column, value)`.
    pub fn row_support(&self, i: usize) -> Vec<(usize, E)> {
        self.row(i)
            .iter()
            .enumerate()
            .filter(|(_, x)| !x.is_zero())
            .map(|(j, x)| (j, x.clone()))
            .collect()
    }
}

impl<E> Index<(usize, usize)> for Matrix<E> {
    type Output = E;
    fn index(&self, (i, j): (usize, usize)) -> &E {
        &self.data[i * self.cols + j]
    }
}

impl<E> IndexMut<(usize, usize)> for Matrix<E> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut E {
        &mut self.data[i * self.cols + j]
    }
}

pub fn dot<F: Field>(field: &F, a: &[F::Elem], b: &[F::Elem]) -> F::Elem {
    a.iter()
        .zip(b)
        .filter(|(x, y)| !x.is_zero() && !y.is_zero())
        .fold(field.zero(), |acc, (x, y)| acc + x.clone() * y.clone())
}

/// Reduced row echelon form and its pivot columns.
pub fn rref<F: Field>(field: &F, m: &Matrix<F::Elem>) -> (Matrix<F::Elem>, Vec<usize>) {
    let mut a = m.clone();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..a.cols {
        if r == a.rows {
            break;
        }
        let Some(p) = (r..a.rows).find(|&i| !a[(i, c)].is_zero()) else {
            continue;
        };
        if p != r {
            for j in 0..a.cols {
                a.data.swap(p * a.cols + j, r * a.cols + j);
            }
        }
        let inv = a[(r, c)].inverse().expect("nonzero pivot");
        for j in c..a.cols {
            a[(r, j)] = a[(r, j)].clone() * inv.clone();
        }
        for i in 0..a.rows {
            if i == r || a[(i, c)].is_zero() {
                continue;
            }
            let factor = a[(i, c)].clone();
            for j in c..a.cols {
                if !a[(r, j)].is_zero() {
                    a[(i, j)] = a[(i, j)].clone() - factor.clone() * a[(r, j)].clone();
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    let _ = field;
    (a, pivots)
}

pub fn rank<F: Field>(field: &F, m: &Matrix<F::Elem>) -> usize {
    rref(field, m).1.len()
}

/// Basis of the right null space `{x : m x = 0}`.
pub fn kernel_basis<F: Field>(field: &F, m: &Matrix<F::Elem>) -> Vec<Vec<F::Elem>> {
    let (r, pivots) = rref(field, m);
    let mut is_pivot = vec![false; m.cols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    (0..m.cols)
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut v = vec![field.zero(); m.cols];
            v[free] = field.one();
            for (row, &p) in pivots.iter().enumerate() {
                v[p] = -r[(row, free)].clone();
            }
            v
        })
        .collect()
}

/// Some `x` with `m x = b`, or `None` when the system is inconsistent.
pub fn solve<F: Field>(field: &F, m: &Matrix<F::Elem>, b: &[F::Elem]) -> Result<Option<Vec<F::Elem>>> {
    if b.len() != m.rows {
        return Err(Error::Shape(format!(
            "right-hand side of length {} for {} rows",
            b.len(),
            m.rows
        )));
    }
    let mut aug = Matrix::zeros(field, m.rows, m.cols + 1);
    for i in 0..m.rows {
        for j in 0..m.cols {
            aug[(i, j)] = m[(i, j)].clone();
        }
        aug[(i, m.cols)] = b[i].clone();
    }
    let (r, pivots) = rref(field, &aug);
    if pivots.last() == Some(&m.cols) {
        return Ok(None);
    }
    let mut x = vec![field.zero(); m.cols];
    for (row, &p) in pivots.iter().enumerate() {
        x[p] = r[(row, m.cols)].clone();
    }
    Ok(Some(x))
}

pub fn determinant<F: Field>(field: &F, m: &Matrix<F::Elem>) -> Result<F::Elem> {
    if !m.is_square() {
        return Err(Error::Shape(format!("determinant of a {}x{} matrix", m.rows, m.cols)));
    }
    let n = m.rows;
    let mut a = m.clone();
    let mut det = field.one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !a[(i, c)].is_zero()) else {
            return Ok(field.zero());
        };
        if p != c {
            for j in 0..n {
                a.data.swap(p * n + j, c * n + j);
            }
            det = -det;
        }
        let pivot = a[(c, c)].clone();
        det = det * pivot.clone();
        let inv = pivot.inverse().expect("nonzero pivot");
        for i in c + 1..n {
            if a[(i, c)].is_zero() {
                continue;
            }
            let factor = a[(i, c)].clone() * inv.clone();
            for j in c..n {
                if !a[(c, j)].is_zero() {
                    a[(i, j)] = a[(i, j)].clone() - factor.clone() * a[(c, j)].clone();
                }
            }
        }
    }
    Ok(det)
}

pub fn inverse<F: Field>(field: &F, m: &Matrix<F::Elem>) -> Option<Matrix<F::Elem>> {
    if !m.is_square() {
        return None;
    }
    let n = m.rows;
    let mut aug = Matrix::zeros(field, n, 2 * n);
    for i in 0..n {
        for j in 0..n {
            aug[(i, j)] = m[(i, j)].clone();
        }
        aug[(i, n + i)] = field.one();
    }
    let (r, pivots) = rref(field, &aug);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return None;
    }
    let cols: Vec<usize> = (n..2 * n).collect();
    let rows: Vec<usize> = (0..n).collect();
    Some(r.select(&rows, &cols))
}

/// Basis of the span of the given vectors (a maximal independent subset,
/// in order).
pub fn independent_subset<F: Field>(field: &F, vectors: &[Vec<F::Elem>]) -> Vec<usize> {
    let Some(len) = vectors.first().map(Vec::len) else {
        return Vec::new();
    };
    let m = Matrix::from_columns(field, len, vectors);
    rref(field, &m).1
}

/// Incrementally built homogeneous linear system with sparse rows, kept in
/// reduced row echelon form.
#[derive(Clone, Debug)]
pub struct LinearSystem<F: Field> {
    field: F,
    vars: usize,
    // pivot column -> row with a 1 there and no other pivot column
    pivots: BTreeMap<usize, BTreeMap<usize, F::Elem>>,
}

impl<F: Field> LinearSystem<F> {
    pub fn new(field: &F, vars: usize) -> Self {
        LinearSystem {
            field: field.clone(),
            vars,
            pivots: BTreeMap::new(),
        }
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Adds the equation `sum coeff * x_var = 0`. Repeated variables are
    /// summed.
    pub fn add_equation<I>(&mut self, terms: I)
    where
        I: IntoIterator<Item = (usize, F::Elem)>,
    {
        let mut row: BTreeMap<usize, F::Elem> = BTreeMap::new();
        for (v, c) in terms {
            assert!(v < self.vars, "variable {v} out of range");
            if c.is_zero() {
                continue;
            }
            let e = row.entry(v).or_insert_with(|| self.field.zero());
            *e = e.clone() + c;
        }
        row.retain(|_, c| !c.is_zero());
        let hits: Vec<(usize, F::Elem)> = row
            .iter()
            .filter(|(v, _)| self.pivots.contains_key(v))
            .map(|(v, c)| (*v, c.clone()))
            .collect();
        for (p, c) in hits {
            for (v, x) in &self.pivots[&p] {
                let e = row.entry(*v).or_insert_with(|| self.field.zero());
                *e = e.clone() - c.clone() * x.clone();
            }
        }
        row.retain(|_, c| !c.is_zero());
        let Some((&lead, lead_c)) = row.iter().next() else {
            return;
        };
        let inv = lead_c.inverse().expect("nonzero");
        for c in row.values_mut() {
            *c = c.clone() * inv.clone();
        }
        for other in self.pivots.values_mut() {
            let Some(w) = other.get(&lead).cloned() else {
                continue;
            };
            for (v, x) in &row {
                let e = other.entry(*v).or_insert_with(|| self.field.zero());
                *e = e.clone() - w.clone() * x.clone();
            }
            other.retain(|_, c| !c.is_zero());
        }
        self.pivots.insert(lead, row);
    }

    /// Variables without a pivot, in increasing order. The `k`-th vector of
    /// [`LinearSystem::kernel_basis`] is 1 at the `k`-th free variable and 0
    /// at the others, so kernel coordinates can be read off these positions.
    pub fn free_variables(&self) -> Vec<usize> {
        (0..self.vars).filter(|v| !self.pivots.contains_key(v)).collect()
    }

    pub fn kernel_basis(&self) -> Vec<Vec<F::Elem>> {
        (0..self.vars)
            .filter(|v| !self.pivots.contains_key(v))
            .map(|free| {
                let mut x = vec![self.field.zero(); self.vars];
                x[free] = self.field.one();
                for (&p, row) in &self.pivots {
                    if let Some(c) = row.get(&free) {
                        x[p] = -c.clone();
                    }
                }
                x
            })
            .collect()
    }
}

/// Incrementally grown subspace, stored as reduced echelon rows.
#[derive(Clone, Debug)]
pub struct Span<F: Field> {
    marker: PhantomData<F>,
    len: usize,
    rows: Vec<(usize, Vec<F::Elem>)>,
}

impl<F: Field> Span<F> {
    pub fn new(_field: &F, len: usize) -> Self {
        Span {
            marker: PhantomData,
            len,
            rows: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, v: &[F::Elem]) -> Vec<F::Elem> {
        let mut v = v.to_vec();
        for (p, row) in &self.rows {
            if v[*p].is_zero() {
                continue;
            }
            let c = v[*p].clone();
            for (x, r) in v.iter_mut().zip(row) {
                if !r.is_zero() {
                    *x = x.clone() - c.clone() * r.clone();
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[F::Elem]) -> bool {
        self.reduce(v).iter().all(Scalar::is_zero)
    }

    /// Adds `v`; returns `false` if it was already in the span.
    pub fn insert(&mut self, v: &[F::Elem]) -> bool {
        assert_eq!(v.len(), self.len, "vector length");
        let mut r = self.reduce(v);
        let Some(p) = r.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = r[p].inverse().expect("nonzero");
        for x in r.iter_mut() {
            *x = x.clone() * inv.clone();
        }
        for (_, row) in self.rows.iter_mut() {
            if row[p].is_zero() {
                continue;
            }
            let c = row[p].clone();
            for (x, y) in row.iter_mut().zip(&r) {
                if !y.is_zero() {
                    *x = x.clone() - c.clone() * y.clone();
                }
            }
        }
        self.rows.push((p, r));
        true
    }
}

/// Limits for [`generic_invertible`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    pub trials: u32,
    /// Sampling bound over Q; `None` means `4 d`.
    pub sample_bound: Option<u64>,
    /// Largest number of determinant evaluations spent on exhaustive grids.
    pub exhaustive_limit: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            trials: 64,
            sample_bound: None,
            exhaustive_limit: 1_000_000,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum InvertibilityOutcome<E> {
    WitnessFound {
        coefficients: Vec<E>,
        matrix: Matrix<E>,
    },
    CertifiedAbsent {
        reason: String,
    },
    /// Every sampled combination was singular. `error_bound` bounds the
    /// probability that an invertible element exists anyway.
    ProbabilisticAbsent {
        error_bound: BigRational,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenericInvertibility<E> {
    pub outcome: InvertibilityOutcome<E>,
    pub trials_used: u32,
}

impl<E> GenericInvertibility<E> {
    fn new(outcome: InvertibilityOutcome<E>, trials_used: u32) -> Self {
        GenericInvertibility { outcome, trials_used }
    }

    pub fn witness(&self) -> Option<(&[E], &Matrix<E>)> {
        match &self.outcome {
            InvertibilityOutcome::WitnessFound { coefficients, matrix } => Some((coefficients, matrix)),
            _ => None,
        }
    }
}

pub fn linear_combination<F: Field>(field: &F, basis: &[Matrix<F::Elem>], coefficients: &[F::Elem]) -> Matrix<F::Elem> {
    let (r, c) = (basis[0].rows, basis[0].cols);
    let mut out = Matrix::zeros(field, r, c);
    for (m, a) in basis.iter().zip(coefficients) {
        if a.is_zero() {
            continue;
        }
        for (o, x) in out.data.iter_mut().zip(&m.data) {
            if !x.is_zero() {
                *o = o.clone() + a.clone() * x.clone();
            }
        }
    }
    out
}

/// Decides whether the span of `basis` (square matrices of one size)
/// contains an invertible matrix.
///
/// Absence is certified structurally (no perfect matching in the union
/// support, or a diagonal block whose determinant vanishes identically) or
/// by exhaustive evaluation on an interpolation grid of `d + 1` points per
/// coordinate; over fields with at most `d` elements the grid is the whole
/// field. When neither fits in `exhaustive_limit`, random combinations are
/// tried and a failure carries the Schwartz-Zippel bound `(d / |S|)^trials`.
pub fn generic_invertible<F: Field, R: Rng + ?Sized>(
    field: &F,
    basis: &[Matrix<F::Elem>],
    budget: &Budget,
    rng: &mut R,
) -> Result<GenericInvertibility<F::Elem>> {
    use InvertibilityOutcome::*;
    let Some(first) = basis.first() else {
        return Err(Error::Shape("empty basis".into()));
    };
    let d = first.rows;
    if let Some(m) = basis.iter().find(|m| m.rows != d || m.cols != d) {
        return Err(Error::Shape(format!(
            "mixed shapes: {}x{} among {d}x{d}",
            m.rows, m.cols
        )));
    }
    let m = basis.len();
    if d == 0 {
        let coefficients = vec![field.zero(); m];
        return Ok(GenericInvertibility::new(
            WitnessFound {
                coefficients,
                matrix: first.clone(),
            },
            0,
        ));
    }
    for (i, b) in basis.iter().enumerate() {
        if !determinant(field, b)?.is_zero() {
            let mut coefficients = vec![field.zero(); m];
            coefficients[i] = field.one();
            return Ok(GenericInvertibility::new(
                WitnessFound {
                    coefficients,
                    matrix: b.clone(),
                },
                0,
            ));
        }
    }

    let blocks = support_blocks(basis, d);
    if let Some(b) = blocks.iter().find(|b| b.rows.len() != b.cols.len()) {
        return Ok(GenericInvertibility::new(
            CertifiedAbsent {
                reason: format!(
                    "structurally singular: a block of {} rows meets only {} columns",
                    b.rows.len(),
                    b.cols.len()
                ),
            },
            0,
        ));
    }
    if max_matching(basis, d) < d {
        return Ok(GenericInvertibility::new(
            CertifiedAbsent {
                reason: "structurally singular: no perfect matching in the support".into(),
            },
            0,
        ));
    }

    let grid = ordered_grid_values(field, d as u64 + 1);
    if grid_size(grid.len(), m) <= budget.exhaustive_limit {
        let found = grid_search(field, basis, &grid)?;
        return Ok(GenericInvertibility::new(
            match found {
                Some((coefficients, matrix)) => WitnessFound { coefficients, matrix },
                None => CertifiedAbsent {
                    reason: "determinant vanishes on the whole interpolation grid".into(),
                },
            },
            0,
        ));
    }

    if blocks.len() > 1 {
        for (bi, b) in blocks.iter().enumerate() {
            let members: Vec<usize> = (0..m)
                .filter(|&i| {
                    b.rows
                        .iter()
                        .any(|&r| b.cols.iter().any(|&c| !basis[i][(r, c)].is_zero()))
                })
                .collect();
            let sub: Vec<Matrix<F::Elem>> = members.iter().map(|&i| basis[i].select(&b.rows, &b.cols)).collect();
            let g = ordered_grid_values(field, b.rows.len() as u64 + 1);
            if sub.is_empty() || grid_size(g.len(), sub.len()) > budget.exhaustive_limit {
                continue;
            }
            if grid_search(field, &sub, &g)?.is_none() {
                return Ok(GenericInvertibility::new(
                    CertifiedAbsent {
                        reason: format!("diagonal block {bi} of size {} is singular throughout", b.rows.len()),
                    },
                    0,
                ));
            }
        }
    }

    let bound = budget.sample_bound.unwrap_or(4 * d as u64).max(1);
    for t in 0..budget.trials {
        let coefficients: Vec<F::Elem> = (0..m).map(|_| field.sample(rng, bound)).collect();
        let matrix = linear_combination(field, basis, &coefficients);
        if !determinant(field, &matrix)?.is_zero() {
            return Ok(GenericInvertibility::new(WitnessFound { coefficients, matrix }, t + 1));
        }
    }
    let set = field.sample_set_size(bound);
    let ratio = if d as u64 >= set {
        BigRational::one()
    } else {
        BigRational::new(BigInt::from(d), BigInt::from(set))
    };
    let error_bound = num_traits::pow(ratio, budget.trials as usize);
    Ok(GenericInvertibility::new(
        ProbabilisticAbsent { error_bound },
        budget.trials,
    ))
}

fn grid_size(points: usize, vars: usize) -> u64 {
    let mut total: u64 = 1;
    for _ in 0..vars {
        total = match total.checked_mul(points as u64) {
            Some(t) => t,
            None => return u64::MAX,
        };
    }
    total
}

// Nonzero values first so the all-ones combination is tried early.
fn ordered_grid_values<F: Field>(field: &F, count: u64) -> Vec<F::Elem> {
    let mut v = field.distinct_elements(count);
    v.sort_by_key(|x| x.is_zero());
    v
}

/// Coefficients and the invertible combination they produce.
pub type Witness<E> = (Vec<E>, Matrix<E>);

fn grid_search<F: Field>(field: &F, basis: &[Matrix<F::Elem>], values: &[F::Elem]) -> Result<Option<Witness<F::Elem>>> {
    let m = basis.len();
    let mut idx = vec![0usize; m];
    loop {
        let coefficients: Vec<F::Elem> = idx.iter().map(|&i| values[i].clone()).collect();
        let matrix = linear_combination(field, basis, &coefficients);
        if !determinant(field, &matrix)?.is_zero() {
            return Ok(Some((coefficients, matrix)));
        }
        let mut k = m;
        loop {
            if k == 0 {
                return Ok(None);
            }
            k -= 1;
            idx[k] += 1;
            if idx[k] < values.len() {
                break;
            }
            idx[k] = 0;
        }
    }
}

struct Block {
    rows: Vec<usize>,
    cols: Vec<usize>,
}

// Connected components of the bipartite row/column graph of the union
// support. Rows and columns touched by no entry form singleton blocks.
fn support_blocks<E: Scalar>(basis: &[Matrix<E>], d: usize) -> Vec<Block> {
    let mut parent: Vec<usize> = (0..2 * d).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for b in basis {
        for i in 0..d {
            for j in 0..d {
                if !b[(i, j)].is_zero() {
                    let (a, c) = (find(&mut parent, i), find(&mut parent, d + j));
                    if a != c {
                        parent[a] = c;
                    }
                }
            }
        }
    }
    let mut groups: BTreeMap<usize, Block> = BTreeMap::new();
    for x in 0..2 * d {
        let r = find(&mut parent, x);
        let g = groups.entry(r).or_insert(Block {
            rows: Vec::new(),
            cols: Vec::new(),
        });
        if x < d {
            g.rows.push(x);
        } else {
            g.cols.push(x - d);
        }
    }
    groups.into_values().collect()
}

fn max_matching<E: Scalar>(basis: &[Matrix<E>], d: usize) -> usize {
    let adj: Vec<Vec<usize>> = (0..d)
        .map(|i| (0..d).filter(|&j| basis.iter().any(|b| !b[(i, j)].is_zero())).collect())
        .collect();
    let mut match_col: Vec<Option<usize>> = vec![None; d];
    fn augment(i: usize, adj: &[Vec<usize>], seen: &mut [bool], match_col: &mut [Option<usize>]) -> bool {
        for &j in &adj[i] {
            if seen[j] {
                continue;
            }
            seen[j] = true;
            if match_col[j].is_none_or(|k| augment(k, adj, seen, match_col)) {
                match_col[j] = Some(i);
                return true;
            }
        }
        false
    }
    (0..d)
        .filter(|&i| augment(i, &adj, &mut vec![false; d], &mut match_col))
        .count()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{PrimeField, Rationals};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn q(rows: &[&[i64]]) -> Matrix<BigRational> {
        let cols = rows.first().map_or(0, |r| r.len());
        Matrix::from_rows(
            cols,
            rows.iter()
                .map(|r| r.iter().map(|&x| Rationals.from_i64(x)).collect())
                .collect(),
        )
        .unwrap()
    }

    fn unit(d: usize, i: usize, j: usize) -> Matrix<BigRational> {
        let mut m = Matrix::zeros(&Rationals, d, d);
        m[(i, j)] = Rationals.one();
        m
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank(&Rationals, &Matrix::identity(&Rationals, 3)), 3);
        assert_eq!(rank(&Rationals, &q(&[&[1, 1], &[1, 1]])), 1);
        let f2 = PrimeField::new(2).unwrap();
        let m = Matrix::from_rows(
            2,
            vec![
                vec![f2.from_i64(2), f2.from_i64(4)],
                vec![f2.from_i64(1), f2.from_i64(2)],
            ],
        )
        .unwrap();
        assert_eq!(rank(&f2, &m), 1);
    }

    #[test]
    fn kernel_examples() {
        assert!(kernel_basis(&Rationals, &Matrix::identity(&Rationals, 3)).is_empty());
        let k = kernel_basis(&Rationals, &q(&[&[1, 1], &[1, 1]]));
        assert_eq!(k.len(), 1);
        assert_eq!(k[0][0], -k[0][1].clone());
        assert!(!Scalar::is_zero(&k[0][0]));
        assert_eq!(kernel_basis(&Rationals, &Matrix::zeros(&Rationals, 2, 3)).len(), 3);
    }

    #[test]
    fn solve_examples() {
        let b = vec![Rationals.from_i64(3), Rationals.from_i64(-1)];
        assert_eq!(
            solve(&Rationals, &Matrix::identity(&Rationals, 2), &b).unwrap(),
            Some(b)
        );
        let inconsistent = q(&[&[1, 0], &[1, 0]]);
        let b = vec![Rationals.zero(), Rationals.one()];
        assert_eq!(solve(&Rationals, &inconsistent, &b).unwrap(), None);
        let x = solve(&Rationals, &q(&[&[2]]), &[Rationals.one()]).unwrap().unwrap();
        assert_eq!(x[0].to_string(), "1/2");
        assert!(solve(&Rationals, &q(&[&[2]]), &[]).is_err());
    }

    #[test]
    fn determinant_and_inverse() {
        let m = q(&[&[2, 1], &[7, 4]]);
        assert_eq!(determinant(&Rationals, &m).unwrap(), Rationals.one());
        let inv = inverse(&Rationals, &m).unwrap();
        assert_eq!(m.mul(&Rationals, &inv).unwrap(), Matrix::identity(&Rationals, 2));
        assert!(inverse(&Rationals, &q(&[&[1, 2], &[2, 4]])).is_none());
    }

    #[test]
    fn sparse_system_matches_dense_kernel() {
        let m = q(&[&[1, 2, 0, 1], &[0, 0, 1, 1], &[1, 2, 1, 2]]);
        let mut sys = LinearSystem::new(&Rationals, 4);
        for i in 0..3 {
            sys.add_equation(m.row_support(i));
        }
        assert_eq!(sys.rank(), rank(&Rationals, &m));
        for v in sys.kernel_basis() {
            assert!(m.mul_vec(&Rationals, &v).unwrap().iter().all(Scalar::is_zero));
        }
    }

    #[test]
    fn invertible_in_diagonal_span() {
        let basis = [unit(2, 0, 0), unit(2, 1, 1)];
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let r = generic_invertible(&Rationals, &basis, &Budget::default(), &mut rng).unwrap();
        let (c, w) = r.witness().expect("witness");
        assert_eq!(c, &[Rationals.one(), Rationals.one()]);
        assert_eq!(rank(&Rationals, w), 2);
    }

    #[test]
    fn no_invertible_in_first_row_span() {
        // det(a E11 + b E12) = 0 identically.
        let basis = [unit(2, 0, 0), unit(2, 0, 1)];
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let r = generic_invertible(&Rationals, &basis, &Budget::default(), &mut rng).unwrap();
        assert!(matches!(r.outcome, InvertibilityOutcome::CertifiedAbsent { .. }));
    }

    #[test]
    fn identity_alone() {
        let basis = [Matrix::identity(&Rationals, 3)];
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let r = generic_invertible(&Rationals, &basis, &Budget::default(), &mut rng).unwrap();
        assert_eq!(r.witness().unwrap().0, &[Rationals.one()]);
    }

    #[test]
    fn grid_certifies_non_structural_singularity() {
        // [[a, b], [a, b]] has full support matching but is always singular.
        let mut m1 = Matrix::zeros(&Rationals, 2, 2);
        m1[(0, 0)] = Rationals.one();
        m1[(1, 0)] = Rationals.one();
        let mut m2 = Matrix::zeros(&Rationals, 2, 2);
        m2[(0, 1)] = Rationals.one();
        m2[(1, 1)] = Rationals.one();
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let r = generic_invertible(&Rationals, &[m1.clone(), m2.clone()], &Budget::default(), &mut rng).unwrap();
        assert!(matches!(r.outcome, InvertibilityOutcome::CertifiedAbsent { .. }));
        // With no room for a grid the answer is probabilistic and bounded.
        let tight = Budget {
            exhaustive_limit: 1,
            ..Budget::default()
        };
        let r = generic_invertible(&Rationals, &[m1, m2], &tight, &mut rng).unwrap();
        match r.outcome {
            InvertibilityOutcome::ProbabilisticAbsent { error_bound } => {
                // (2 / 17)^64
                let expected = num_traits::pow(BigRational::new(2.into(), 17.into()), 64);
                assert_eq!(error_bound, expected);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn small_field_enumeration() {
        // GF(2) has fewer than d + 1 elements, so the grid is the whole field.
        let f2 = PrimeField::new(2).unwrap();
        let e = |i: usize, j: usize| {
            let mut m = Matrix::zeros(&f2, 2, 2);
            m[(i, j)] = f2.one();
            m
        };
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let r = generic_invertible(&f2, &[e(0, 0), e(1, 1)], &Budget::default(), &mut rng).unwrap();
        assert!(r.witness().is_some());
    }

    #[test]
    fn zero_dimensional_and_errors() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let empty = Matrix::zeros(&Rationals, 0, 0);
        let r = generic_invertible(&Rationals, &[empty], &Budget::default(), &mut rng).unwrap();
        assert!(r.witness().is_some());
        assert!(generic_invertible::<Rationals, _>(&Rationals, &[], &Budget::default(), &mut rng).is_err());
        let mixed = [unit(2, 0, 0), unit(3, 0, 0)];
        assert!(generic_invertible(&Rationals, &mixed, &Budget::default(), &mut rng).is_err());
    }
}

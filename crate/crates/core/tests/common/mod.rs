//! Reference checks written without the library's linear algebra or
//! certificate code, used as oracles by the integration tests.

#![allow(dead_code)]

use grfrob::{Field, GradedAlgebra, Scalar};

/// Rank by plain Gaussian elimination.
pub fn rank<F: Field>(field: &F, mut rows: Vec<Vec<F::Elem>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].inverse().unwrap();
        let pivot: Vec<F::Elem> = rows[r].iter().map(|x| x.clone() * inv.clone()).collect();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, y) in row.iter_mut().zip(&pivot) {
                    *x = x.clone() - f.clone() * y.clone();
                }
            }
        }
        rows[r] = pivot;
        r += 1;
        let _ = field;
    }
    r
}

fn product<F: Field>(a: &GradedAlgebra<F>, i: usize, j: usize) -> Vec<F::Elem> {
    let mut v = vec![a.field().zero(); a.dim()];
    for (k, c) in a.product(i, j) {
        v[*k] = c.clone();
    }
    v
}

fn pair<F: Field>(field: &F, b: &[Vec<F::Elem>], x: &[F::Elem], y: usize, left: bool) -> F::Elem {
    // B(x, b_y) if left, else B(b_y, x)
    let mut s = field.zero();
    for (k, c) in x.iter().enumerate() {
        let v = if left { &b[k][y] } else { &b[y][k] };
        s = s + c.clone() * v.clone();
    }
    s
}

/// `B` is associative, vanishes on `A_τ x A_μ` unless `τμ = σ`, and is
/// non-degenerate.
pub fn form_is_valid<F: Field>(a: &GradedAlgebra<F>, sigma: usize, b: &[Vec<F::Elem>]) -> bool {
    let d = a.dim();
    let field = a.field();
    let g = a.group();
    for i in 0..d {
        for j in 0..d {
            if !b[i][j].is_zero() && g.mul(a.deg(i), a.deg(j)) != sigma {
                return false;
            }
            let ij = product(a, i, j);
            for k in 0..d {
                let jk = product(a, j, k);
                if pair(field, b, &ij, k, true) != pair(field, b, &jk, i, false) {
                    return false;
                }
            }
        }
    }
    rank(field, b.to_vec()) == d
}

/// Gram matrix of `λ(xy)`.
pub fn gram<F: Field>(a: &GradedAlgebra<F>, lambda: &[F::Elem]) -> Vec<Vec<F::Elem>> {
    let field = a.field();
    (0..a.dim())
        .map(|i| {
            (0..a.dim())
                .map(|j| {
                    product(a, i, j)
                        .iter()
                        .zip(lambda)
                        .fold(field.zero(), |s, (x, l)| s + x.clone() * l.clone())
                })
                .collect()
        })
        .collect()
}

/// `λ` is supported in degree `e`, symmetric on products and gives a
/// non-degenerate form.
pub fn functional_is_valid<F: Field>(a: &GradedAlgebra<F>, lambda: &[F::Elem]) -> bool {
    let e = a.group().neutral();
    if lambda.iter().enumerate().any(|(k, x)| !x.is_zero() && a.deg(k) != e) {
        return false;
    }
    let b = gram(a, lambda);
    let symmetric = b
        .iter()
        .enumerate()
        .all(|(i, row)| row.iter().enumerate().all(|(j, x)| *x == b[j][i]));
    if !symmetric {
        return false;
    }
    rank(a.field(), b) == a.dim()
}

fn enumerate<F: Field>(
    a: &GradedAlgebra<F>,
    support: &[usize],
    limit: u64,
    mut accept: impl FnMut(&[F::Elem]) -> bool,
) -> Option<bool> {
    let field = a.field();
    let q = field.size()?;
    let total = q.checked_pow(support.len() as u32)?;
    if total > limit {
        return None;
    }
    for code in 0..total {
        let mut lambda = vec![field.zero(); a.dim()];
        let mut c = code;
        for &k in support {
            lambda[k] = field.element_at(c % q);
            c /= q;
        }
        if accept(&lambda) {
            return Some(true);
        }
    }
    Some(false)
}

/// Over a finite field: some `λ` on `A_σ` makes `λ(xy)` non-degenerate.
/// Every associative `σ`-form has this shape, so this decides the property.
pub fn graded_frobenius_by_enumeration<F: Field>(a: &GradedAlgebra<F>, sigma: usize, limit: u64) -> Option<bool> {
    let support = a.component(sigma);
    enumerate(a, &support, limit, |l| rank(a.field(), gram(a, l)) == a.dim())
}

/// Over a finite field: some `λ` on `A_e` is a valid symmetric functional.
pub fn graded_symmetric_by_enumeration<F: Field>(a: &GradedAlgebra<F>, limit: u64) -> Option<bool> {
    let support = a.component(a.group().neutral());
    enumerate(a, &support, limit, |l| functional_is_valid(a, l))
}

/// Over Q: searches `λ` on `A_σ` with entries in `-2..=2`. `Some(true)`
/// proves the property; `None` means nothing was found.
pub fn small_form_search<F: Field>(a: &GradedAlgebra<F>, sigma: usize, limit: u64) -> Option<bool> {
    let field = a.field();
    let support = a.component(sigma);
    let values: Vec<F::Elem> = (-2..=2).map(|i| field.from_i64(i)).collect();
    let total = 5u64.checked_pow(support.len() as u32)?;
    for code in 0..total.min(limit) {
        let mut lambda = vec![field.zero(); a.dim()];
        let mut c = code;
        for &k in &support {
            lambda[k] = values[(c % 5) as usize].clone();
            c /= 5;
        }
        if rank(field, gram(a, &lambda)) == a.dim() {
            return Some(true);
        }
    }
    None
}

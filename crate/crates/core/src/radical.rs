//! Jacobson radical via the trace form, and a partial locality test.

use crate::algebra::GradedAlgebra;
use crate::error::{Error, Result};
use crate::linalg::{self, Matrix, Span};
use crate::scalar::Field;

/// Radical of the form `(x, y) -> tr(L_x L_y)`, which is the Jacobson
/// radical in characteristic 0 or `p > dim`. The grading is ignored.
pub fn jacobson_radical<F: Field>(b: &GradedAlgebra<F>) -> Result<Vec<Vec<F::Elem>>> {
    let d = b.dim();
    let field = b.field();
    let p = field.characteristic();
    if p != 0 && p <= d as u64 {
        return Err(Error::Unsupported(format!(
            "trace-form radical needs characteristic 0 or above {d}, got {p}"
        )));
    }
    // tr(L_x L_y) = tr(L_{xy}); precompute tr(L_{b_k})
    let traces: Vec<F::Elem> = (0..d)
        .map(|k| {
            let l = b.left_mult_matrix(&b.basis_vector(k));
            (0..d).fold(field.zero(), |s, i| s + l[(i, i)].clone())
        })
        .collect();
    let mut gram = Matrix::zeros(field, d, d);
    for i in 0..d {
        for j in 0..d {
            let mut s = field.zero();
            for (k, c) in b.product(i, j) {
                s = s + c.clone() * traces[*k].clone();
            }
            gram[(i, j)] = s;
        }
    }
    Ok(linalg::kernel_basis(field, &gram))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Locality<E> {
    Yes,
    /// A nonzero non-invertible element outside the radical.
    No(Vec<E>),
    Unsupported(String),
}

/// Decides whether `B / J(B)` is a division algebra.
///
/// Settled when the quotient has dimension 1, or over a finite field when
/// the quotient has at most `enumeration_limit` elements. Over Q a
/// non-invertible element among small combinations of a complement of the
/// radical still proves "no"; otherwise the answer is unsupported.
pub fn is_local<F: Field>(b: &GradedAlgebra<F>, enumeration_limit: u64) -> Result<Locality<F::Elem>> {
    let d = b.dim();
    let field = b.field();
    if d == 0 {
        return Ok(Locality::Unsupported("the zero algebra".into()));
    }
    let radical = jacobson_radical(b)?;
    let mut span = Span::new(field, d);
    for v in &radical {
        span.insert(v);
    }
    let complement: Vec<Vec<F::Elem>> = (0..d).map(|i| b.basis_vector(i)).filter(|v| span.insert(v)).collect();
    let q = complement.len();
    if q == 1 {
        return Ok(Locality::Yes);
    }
    // a lifts to an invertible element iff its image in B/J is invertible
    let combine = |coeffs: &[F::Elem]| -> Vec<F::Elem> {
        let mut x = vec![field.zero(); d];
        for (c, v) in coeffs.iter().zip(&complement) {
            for (xi, vi) in x.iter_mut().zip(v) {
                *xi = xi.clone() + c.clone() * vi.clone();
            }
        }
        x
    };
    let (values, exhaustive): (Vec<F::Elem>, bool) = match field.size() {
        Some(s) if s.checked_pow(q as u32).is_some_and(|n| n <= enumeration_limit) => {
            ((0..s).map(|i| field.element_at(i)).collect(), true)
        }
        _ => ((0..3).map(|i| field.element_at(i)).collect(), false),
    };
    let base = values.len() as u64;
    let total = base.pow(q as u32);
    for code in 1..total {
        let mut c = code;
        let coeffs: Vec<F::Elem> = (0..q)
            .map(|_| {
                let v = values[(c % base) as usize].clone();
                c /= base;
                v
            })
            .collect();
        let x = combine(&coeffs);
        if !b.is_invertible(&x) {
            return Ok(Locality::No(x));
        }
    }
    if exhaustive {
        Ok(Locality::Yes)
    } else {
        Ok(Locality::Unsupported(format!(
            "semisimple quotient of dimension {q} over an infinite or large field"
        )))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::FiniteGroup;
    use crate::scalar::{PrimeField, Rationals, Scalar};
    use std::sync::Arc;

    fn truncated<F: Field>(field: F, n: usize) -> GradedAlgebra<F> {
        let mut entries = Vec::new();
        for i in 0..n {
            for j in 0..n - i {
                entries.push((i, j, i + j, field.one()));
            }
        }
        let mut unit = vec![field.zero(); n];
        unit[0] = field.one();
        GradedAlgebra::new(field, Arc::new(FiniteGroup::trivial()), vec![0; n], entries, unit).unwrap()
    }

    fn split<F: Field>(field: F) -> GradedAlgebra<F> {
        let entries = vec![(0, 0, 0, field.one()), (1, 1, 1, field.one())];
        let unit = vec![field.one(), field.one()];
        GradedAlgebra::new(field, Arc::new(FiniteGroup::trivial()), vec![0, 0], entries, unit).unwrap()
    }

    #[test]
    fn radical_of_dual_numbers_is_x() {
        let r = jacobson_radical(&truncated(Rationals, 2)).unwrap();
        assert_eq!(r.len(), 1);
        assert!(Scalar::is_zero(&r[0][0]));
        assert!(jacobson_radical(&truncated(Rationals, 1)).unwrap().is_empty());
    }

    #[test]
    fn small_characteristic_is_unsupported() {
        let f2 = PrimeField::new(2).unwrap();
        assert!(matches!(
            jacobson_radical(&truncated(f2, 2)),
            Err(Error::Unsupported(_))
        ));
    }

    #[test]
    fn locality() {
        assert_eq!(is_local(&truncated(Rationals, 3), 1_000_000).unwrap(), Locality::Yes);
        assert!(matches!(
            is_local(&split(Rationals), 1_000_000).unwrap(),
            Locality::No(_)
        ));
        let f5 = PrimeField::new(5).unwrap();
        assert!(matches!(is_local(&split(f5), 1_000_000).unwrap(), Locality::No(_)));
    }
}

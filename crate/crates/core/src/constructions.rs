//! Builders for graded algebras with known properties, and a random
//! generator composing them.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::GradedAlgebra;
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, GroupElement};
use crate::linalg::{self, Matrix};
use crate::scalar::{Field, Scalar};

type Entry<E> = (usize, usize, usize, E);

fn unit_at<F: Field>(field: &F, dim: usize, at: &[usize]) -> Vec<F::Elem> {
    let mut u = vec![field.zero(); dim];
    for &i in at {
        u[i] = field.one();
    }
    u
}

/// The ground field as a one-dimensional algebra over `group`.
pub fn ground_field<F: Field>(field: &F, group: Arc<FiniteGroup>) -> GradedAlgebra<F> {
    let e = group.neutral();
    GradedAlgebra::new(
        field.clone(),
        group,
        vec![e],
        vec![(0, 0, 0, field.one())],
        vec![field.one()],
    )
    .expect("the ground field is an algebra")
}

/// `k[x]/(f)` for monic `f = x^n + c_{n-1} x^{n-1} + ... + c_0`, given by
/// `[c_0, ..., c_{n-1}]`, trivially graded. Basis `1, x, ..., x^{n-1}`.
pub fn polynomial_quotient<F: Field>(field: &F, coefficients: &[F::Elem]) -> Result<GradedAlgebra<F>> {
    let n = coefficients.len();
    if n == 0 {
        return Err(Error::Invalid("polynomial of degree 0".into()));
    }
    // powers[m] = coordinates of x^m for m < 2n - 1
    let mut powers: Vec<Vec<F::Elem>> = (0..n).map(|i| unit_at(field, n, &[i])).collect();
    for _ in n..2 * n - 1 {
        let prev = powers.last().expect("nonempty");
        // x * (sum a_i x^i) with x^n = -sum c_i x^i
        let top = prev[n - 1].clone();
        let mut next = vec![field.zero(); n];
        next[1..n].clone_from_slice(&prev[..n - 1]);
        for (x, c) in next.iter_mut().zip(coefficients) {
            *x = x.clone() - top.clone() * c.clone();
        }
        powers.push(next);
    }
    let mut entries = Vec::new();
    for i in 0..n {
        for j in 0..n {
            for (k, c) in powers[i + j].iter().enumerate() {
                if !c.is_zero() {
                    entries.push((i, j, k, c.clone()));
                }
            }
        }
    }
    GradedAlgebra::new(
        field.clone(),
        Arc::new(FiniteGroup::trivial()),
        vec![0; n],
        entries,
        unit_at(field, n, &[0]),
    )
}

/// `k[x]/(x^n)` with `x` homogeneous of degree `g`.
pub fn truncated_polynomial<F: Field>(
    field: &F,
    group: Arc<FiniteGroup>,
    n: usize,
    g: GroupElement,
) -> Result<GradedAlgebra<F>> {
    if n == 0 {
        return Err(Error::Invalid("k[x]/(x^0) is the zero ring".into()));
    }
    let mut deg = vec![group.neutral()];
    for i in 1..n {
        deg.push(group.mul(deg[i - 1], g));
    }
    let mut entries = Vec::new();
    for i in 0..n {
        for j in 0..n - i {
            entries.push((i, j, i + j, field.one()));
        }
    }
    GradedAlgebra::new(field.clone(), group, deg, entries, unit_at(field, n, &[0]))
}

/// `R × S`, trivially graded, with the basis of `R` first.
pub fn direct_product<F: Field>(r: &GradedAlgebra<F>, s: &GradedAlgebra<F>) -> Result<GradedAlgebra<F>> {
    let n = r.dim();
    let mut entries: Vec<Entry<F::Elem>> = r
        .structure_constants()
        .map(|(i, j, k, c)| (i, j, k, c.clone()))
        .collect();
    entries.extend(
        s.structure_constants()
            .map(|(i, j, k, c)| (n + i, n + j, n + k, c.clone())),
    );
    let mut unit = r.unit().to_vec();
    unit.extend_from_slice(s.unit());
    GradedAlgebra::new(
        r.field().clone(),
        Arc::new(FiniteGroup::trivial()),
        vec![0; n + s.dim()],
        entries,
        unit,
    )
}

/// Products `r_i δ_j` and `δ_j r_i` in `R ⊕ R*` where `R*` carries
/// `(r f)(x) = f(x r)` and `(f r)(x) = f(r x)`; indices are relative to
/// the `R*` block.
type Entries<E> = Vec<Entry<E>>;

fn dual_bimodule_entries<F: Field>(r: &GradedAlgebra<F>) -> (Entries<F::Elem>, Entries<F::Elem>) {
    let (mut left, mut right) = (Vec::new(), Vec::new());
    // c_{li}^j contributes r_i δ_j ∋ δ_l; c_{il}^j contributes δ_j r_i ∋ δ_l
    for (a, b, j, c) in r.structure_constants() {
        left.push((b, j, a, c.clone()));
        right.push((j, a, b, c.clone()));
    }
    (left, right)
}

/// The trivial extension `R ⊕ R*` with `(r, f)(r', f') = (r r', r f' + f r')`,
/// `R` in degree `e` and `R*` in degree `g`.
pub fn trivial_extension_in<F: Field>(
    r: &GradedAlgebra<F>,
    group: Arc<FiniteGroup>,
    g: GroupElement,
) -> Result<GradedAlgebra<F>> {
    let n = r.dim();
    let e = group.neutral();
    let mut entries: Vec<Entry<F::Elem>> = r
        .structure_constants()
        .map(|(i, j, k, c)| (i, j, k, c.clone()))
        .collect();
    let (left, right) = dual_bimodule_entries(r);
    // r_i δ_j = sum_l c_{li}^j δ_l
    entries.extend(left.into_iter().map(|(i, j, l, c)| (i, n + j, n + l, c)));
    // δ_j r_i = sum_l c_{il}^j δ_l
    entries.extend(right.into_iter().map(|(j, i, l, c)| (n + j, i, n + l, c)));
    let mut deg = vec![e; n];
    deg.extend(std::iter::repeat_n(g, n));
    let mut unit = r.unit().to_vec();
    unit.extend(std::iter::repeat_n(r.field().zero(), n));
    GradedAlgebra::new(r.field().clone(), group, deg, entries, unit)
}

/// Trivial extension graded by `Z2`, the dual part in degree 1.
pub fn trivial_extension<F: Field>(r: &GradedAlgebra<F>) -> Result<GradedAlgebra<F>> {
    trivial_extension_in(r, Arc::new(FiniteGroup::cyclic(2)?), 1)
}

/// `(R1 × R2) ⊕ R1* ⊕ R2*` with `R1*` in degree `u` and `R2*` in degree `v`.
pub fn trivial_extension_split_in<F: Field>(
    r1: &GradedAlgebra<F>,
    r2: &GradedAlgebra<F>,
    group: Arc<FiniteGroup>,
    u: GroupElement,
    v: GroupElement,
) -> Result<GradedAlgebra<F>> {
    let e = group.neutral();
    if u == e || v == e || u == v {
        return Err(Error::Invalid(
            "the two dual parts need distinct non-neutral degrees".into(),
        ));
    }
    let r = direct_product(r1, r2)?;
    let t = trivial_extension_in(&r, Arc::new(FiniteGroup::trivial()), 0)?;
    let n = r.dim();
    let mut deg = vec![e; n];
    deg.extend(std::iter::repeat_n(u, r1.dim()));
    deg.extend(std::iter::repeat_n(v, r2.dim()));
    t.regrade(group, deg)
}

/// Split trivial extension graded by `Z3`.
pub fn trivial_extension_split<F: Field>(r1: &GradedAlgebra<F>, r2: &GradedAlgebra<F>) -> Result<GradedAlgebra<F>> {
    trivial_extension_split_in(r1, r2, Arc::new(FiniteGroup::cyclic(3)?), 1, 2)
}

/// Basis `I, X, Y, Z` in degrees `0, 1, 2, 3` of `Z4`, with `XY = uZ`,
/// `YX = vZ` and all other products of `X, Y, Z` zero.
pub fn nakayama_nesbitt<F: Field>(field: &F, u: F::Elem, v: F::Elem) -> Result<GradedAlgebra<F>> {
    if u.is_zero() || v.is_zero() {
        return Err(Error::Invalid("u and v must be nonzero".into()));
    }
    let one = field.one();
    let mut entries: Vec<Entry<F::Elem>> = (0..4).map(|i| (0, i, i, one.clone())).collect();
    entries.extend((1..4).map(|i| (i, 0, i, one.clone())));
    entries.push((1, 2, 3, u));
    entries.push((2, 1, 3, v));
    GradedAlgebra::new(
        field.clone(),
        Arc::new(FiniteGroup::cyclic(4)?),
        vec![0, 1, 2, 3],
        entries,
        unit_at(field, 4, &[0]),
    )
}

/// `M_n(k)` with matrix units `e_ij` at index `i n + j` of degree
/// `g_i^-1 g_j`, where `n` is the length of `degrees`.
pub fn matrix_good_grading<F: Field>(
    field: &F,
    group: Arc<FiniteGroup>,
    degrees: &[GroupElement],
) -> Result<GradedAlgebra<F>> {
    let n = degrees.len();
    if n == 0 {
        return Err(Error::Invalid("matrix size must be positive".into()));
    }
    let deg = (0..n * n)
        .map(|x| group.mul(group.inv(degrees[x / n]), degrees[x % n]))
        .collect();
    let mut entries = Vec::new();
    for i in 0..n {
        for j in 0..n {
            for l in 0..n {
                entries.push((i * n + j, j * n + l, i * n + l, field.one()));
            }
        }
    }
    let diag: Vec<usize> = (0..n).map(|i| i * n + i).collect();
    GradedAlgebra::new(field.clone(), group, deg, entries, unit_at(field, n * n, &diag))
}

/// `M_n(k)` graded by `Zn × Zn` through `X^a Y^b` (index `a n + b`, the
/// same as its degree), where `XY = ωYX` for a primitive `n`-th root of
/// unity `ω`. Each component is one-dimensional.
pub fn matrix_fine_grading<F: Field>(field: &F, n: usize) -> Result<GradedAlgebra<F>> {
    if n == 0 {
        return Err(Error::Invalid("matrix size must be positive".into()));
    }
    let omega = field
        .root_of_unity(n as u64)
        .ok_or_else(|| Error::Invalid(format!("{} has no primitive {n}-th root of unity", field.decl())))?;
    let inv = omega.inverse().expect("roots of unity are nonzero");
    let mut powers = vec![field.one()];
    for i in 1..n {
        powers.push(powers[i - 1].clone() * inv.clone());
    }
    let zn = FiniteGroup::cyclic(n)?;
    let group = FiniteGroup::product(&zn, &zn);
    let mut entries = Vec::new();
    // X^a Y^b X^c Y^d = ω^{-bc} X^{a+c} Y^{b+d}
    for (a, b, c, d) in quadruples(n) {
        let k = ((a + c) % n) * n + (b + d) % n;
        entries.push((a * n + b, c * n + d, k, powers[(b * c) % n].clone()));
    }
    GradedAlgebra::new(
        field.clone(),
        Arc::new(group),
        (0..n * n).collect(),
        entries,
        unit_at(field, n * n, &[0]),
    )
}

fn quadruples(n: usize) -> impl Iterator<Item = (usize, usize, usize, usize)> {
    (0..n * n * n * n).map(move |x| (x / (n * n * n), (x / (n * n)) % n, (x / n) % n, x % n))
}

/// The group algebra `kG` with `deg g = g`.
pub fn group_algebra<F: Field>(field: &F, group: Arc<FiniteGroup>) -> Result<GradedAlgebra<F>> {
    let n = group.order();
    let mut entries = Vec::new();
    for a in group.elements() {
        for b in group.elements() {
            entries.push((a, b, group.mul(a, b), field.one()));
        }
    }
    let e = group.neutral();
    GradedAlgebra::new(field.clone(), group, (0..n).collect(), entries, unit_at(field, n, &[e]))
}

/// `R * G` with basis `r_i # g` at index `g dim R + i` of degree `g` and
/// `(r # g)(s # h) = r α_g(s) # gh`. `action[g]` is the matrix of `α_g` on
/// the basis of `R` (columns are images).
pub fn skew_group_algebra<F: Field>(
    r: &GradedAlgebra<F>,
    group: Arc<FiniteGroup>,
    action: &[Matrix<F::Elem>],
) -> Result<GradedAlgebra<F>> {
    let field = r.field();
    let n = r.dim();
    if action.len() != group.order() {
        return Err(Error::Invalid(format!(
            "{} action matrices for a group of order {}",
            action.len(),
            group.order()
        )));
    }
    let mut problems = Vec::new();
    for (g, m) in action.iter().enumerate() {
        if m.rows() != n || m.cols() != n {
            return Err(Error::Shape(format!("action of {g} must be {n}x{n}")));
        }
        if linalg::inverse(field, m).is_none() {
            problems.push(format!("action of {g} is not invertible"));
        }
        if m.mul_vec(field, r.unit())? != r.unit() {
            problems.push(format!("action of {g} does not fix the unit"));
        }
        for i in 0..n {
            for j in 0..n {
                let lhs = m.mul_vec(field, &r.mul(&r.basis_vector(i), &r.basis_vector(j)))?;
                let rhs = r.mul(&m.column(i), &m.column(j));
                if lhs != rhs {
                    problems.push(format!("action of {g} is not multiplicative on ({i}, {j})"));
                }
            }
        }
        for (h, mh) in action.iter().enumerate() {
            if m.mul(field, mh)? != action[group.mul(g, h)] {
                problems.push(format!("actions of {g} and {h} do not compose"));
            }
        }
    }
    if action[group.neutral()] != Matrix::identity(field, n) {
        problems.push("the neutral element does not act trivially".into());
    }
    if !problems.is_empty() {
        return Err(Error::Invalid(format!("invalid group action: {}", problems.join("; "))));
    }
    let mut entries = Vec::new();
    for g in group.elements() {
        for h in group.elements() {
            let gh = group.mul(g, h);
            for i in 0..n {
                for j in 0..n {
                    let s = r.mul(&r.basis_vector(i), &action[g].column(j));
                    for (k, c) in s.into_iter().enumerate() {
                        if !c.is_zero() {
                            entries.push((g * n + i, h * n + j, gh * n + k, c));
                        }
                    }
                }
            }
        }
    }
    let e = group.neutral();
    let deg = (0..group.order() * n).map(|x| x / n).collect();
    let mut unit = vec![field.zero(); group.order() * n];
    for (i, c) in r.unit().iter().enumerate() {
        unit[e * n + i] = c.clone();
    }
    GradedAlgebra::new(field.clone(), group, deg, entries, unit)
}

/// `M_n(A)`: `A ⊗ M_n(k)` with `M_n(k)` in degree `e`; `a e_ij` sits at
/// index `a_index n^2 + i n + j`.
pub fn matrix_over<F: Field>(a: &GradedAlgebra<F>, n: usize) -> Result<GradedAlgebra<F>> {
    let m = matrix_good_grading(a.field(), a.group().clone(), &vec![a.group().neutral(); n])?;
    a.tensor_product(&m)
}

/// Size limits for [`random_graded_algebra`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RandomLimits {
    pub max_dim: usize,
    pub max_group_order: usize,
}

impl Default for RandomLimits {
    fn default() -> Self {
        RandomLimits {
            max_dim: 8,
            max_group_order: 6,
        }
    }
}

fn nonzero<F: Field, R: Rng>(field: &F, rng: &mut R) -> F::Elem {
    loop {
        let x = field.sample(rng, 3);
        if !x.is_zero() {
            return x;
        }
    }
}

fn random_quotient<F: Field, R: Rng>(field: &F, rng: &mut R, max_dim: usize) -> Result<(String, GradedAlgebra<F>)> {
    let n = rng.gen_range(1..=max_dim.max(1));
    let coeffs: Vec<F::Elem> = (0..n)
        .map(|_| {
            if rng.gen_bool(0.5) {
                field.zero()
            } else {
                field.sample(rng, 2)
            }
        })
        .collect();
    let text: Vec<String> = coeffs.iter().map(ToString::to_string).collect();
    Ok((
        format!("k[x]/(f) with f coefficients [{}]", text.join(", ")),
        polynomial_quotient(field, &coeffs)?,
    ))
}

fn random_group<R: Rng>(rng: &mut R, max_order: usize) -> Result<FiniteGroup> {
    let mut options: Vec<FiniteGroup> = (1..=max_order.min(6)).map(FiniteGroup::cyclic).collect::<Result<_>>()?;
    if max_order >= 4 {
        let z2 = FiniteGroup::cyclic(2)?;
        options.push(FiniteGroup::product(&z2, &z2));
    }
    if max_order >= 6 {
        options.push(FiniteGroup::symmetric3());
    }
    Ok(options.choose(rng).expect("nonempty").clone())
}

/// A reproducible random algebra built by composing the builders above, so
/// associativity holds by construction. Returns a description with it.
pub fn random_graded_algebra<F: Field>(
    field: &F,
    seed: u64,
    limits: RandomLimits,
) -> Result<(String, GradedAlgebra<F>)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..64 {
        let (desc, a) = random_recipe(field, &mut rng, limits)?;
        if a.dim() <= limits.max_dim && a.group().order() <= limits.max_group_order {
            return Ok((desc, a));
        }
    }
    Ok((
        "ground field".into(),
        ground_field(field, Arc::new(FiniteGroup::trivial())),
    ))
}

fn random_recipe<F: Field, R: Rng>(field: &F, rng: &mut R, limits: RandomLimits) -> Result<(String, GradedAlgebra<F>)> {
    let max_g = limits.max_group_order;
    let half = (limits.max_dim / 2).max(1);
    Ok(match rng.gen_range(0..12) {
        0 => {
            let g = random_group(rng, max_g)?;
            (
                format!("group algebra of {}", g.spec()),
                group_algebra(field, Arc::new(g))?,
            )
        }
        1 => {
            let (d, r) = random_quotient(field, rng, half.min(4))?;
            (format!("trivial extension of {d}"), trivial_extension(&r)?)
        }
        2 => {
            let (u, v) = (nonzero(field, rng), nonzero(field, rng));
            (format!("nakayama-nesbitt u={u} v={v}"), nakayama_nesbitt(field, u, v)?)
        }
        3 => {
            let g = random_group(rng, max_g)?;
            let degs: Vec<GroupElement> = (0..2).map(|_| rng.gen_range(0..g.order())).collect();
            (
                format!("good grading of M_2 by {} with degrees {degs:?}", g.spec()),
                matrix_good_grading(field, Arc::new(g), &degs)?,
            )
        }
        4 => {
            let (d, r) = random_quotient(field, rng, half.min(4))?;
            let z2 = Arc::new(FiniteGroup::cyclic(2)?);
            let id = Matrix::identity(field, r.dim());
            (
                format!("skew group algebra of {d} with trivial Z2 action"),
                skew_group_algebra(&r, z2, &[id.clone(), id])?,
            )
        }
        5 => {
            // k x k with the swap, or k[x]/(x^2 - c) with x -> -x
            let z2 = Arc::new(FiniteGroup::cyclic(2)?);
            let id = Matrix::identity(field, 2);
            if rng.gen_bool(0.5) {
                let kk = direct_product(&ground_field(field, z2.clone()), &ground_field(field, z2.clone()))?;
                let swap = Matrix::from_rows(
                    2,
                    vec![vec![field.zero(), field.one()], vec![field.one(), field.zero()]],
                )?;
                (
                    "skew group algebra of k x k with the swap".into(),
                    skew_group_algebra(&kk, z2, &[id, swap])?,
                )
            } else {
                let c = field.sample(rng, 3);
                let r = polynomial_quotient(field, &[-c.clone(), field.zero()])?;
                let neg = Matrix::from_rows(
                    2,
                    vec![vec![field.one(), field.zero()], vec![field.zero(), -field.one()]],
                )?;
                (
                    format!("skew group algebra of k[x]/(x^2 - {c}) with x -> -x"),
                    skew_group_algebra(&r, z2, &[id, neg])?,
                )
            }
        }
        6 => {
            let m = rng.gen_range(1..=max_g.min(4));
            let n = rng.gen_range(1..=(limits.max_dim / m).clamp(1, 4));
            let g = Arc::new(FiniteGroup::cyclic(m)?);
            let x = rng.gen_range(0..m);
            let t = truncated_polynomial(field, g.clone(), n, x)?;
            let ga = group_algebra(field, g)?;
            (
                format!("k[x]/(x^{n}) with deg x = {x} tensor kZ{m}"),
                t.tensor_product(&ga)?,
            )
        }
        7 => {
            let (d, a) = random_recipe(field, rng, limits)?;
            let g = a.group().clone();
            let gen = rng.gen_range(0..g.order());
            let h = g.subgroup_closure(&[gen])?;
            (format!("restriction of ({d}) to {h:?}"), a.restrict_to_subgroup(&h)?.0)
        }
        8 => {
            let (d, a) = random_recipe(field, rng, limits)?;
            let g = a.group().clone();
            let normals: Vec<Vec<GroupElement>> = g
                .elements()
                .filter_map(|x| g.subgroup_closure(&[x]).ok())
                .filter(|h| g.is_normal(h))
                .collect();
            let n = normals.choose(rng).expect("the trivial subgroup is normal").clone();
            (format!("coarsening of ({d}) by {n:?}"), a.coarsen_grading(&n)?)
        }
        9 => {
            let (d1, r1) = random_quotient(field, rng, 2)?;
            let (d2, r2) = random_quotient(field, rng, 2)?;
            (
                format!("split trivial extension of {d1} and {d2}"),
                trivial_extension_split(&r1, &r2)?,
            )
        }
        10 => match matrix_fine_grading(field, 2) {
            Ok(a) => ("fine grading of M_2".into(), a),
            Err(_) => (
                "ground field".into(),
                ground_field(field, Arc::new(FiniteGroup::trivial())),
            ),
        },
        _ => {
            let base = match rng.gen_range(0..3) {
                0 => ("k".to_string(), ground_field(field, Arc::new(FiniteGroup::cyclic(2)?))),
                1 => (
                    "k[x]/(x^2)".to_string(),
                    truncated_polynomial(field, Arc::new(FiniteGroup::cyclic(2)?), 2, 1)?,
                ),
                _ => (
                    "kZ2".to_string(),
                    group_algebra(field, Arc::new(FiniteGroup::cyclic(2)?))?,
                ),
            };
            (format!("M_2 over {}", base.0), matrix_over(&base.1, 2)?)
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{PrimeField, Rationals};

    #[test]
    fn builders_validate_and_have_expected_dims() {
        let q = Rationals;
        let r = polynomial_quotient(&q, &[q.zero(), q.zero()]).unwrap();
        assert_eq!(r.dim(), 2);
        let t = trivial_extension(&r).unwrap();
        assert_eq!(t.component_dims(), vec![2, 2]);
        let k = ground_field(&q, Arc::new(FiniteGroup::trivial()));
        let s = trivial_extension_split(&k, &k).unwrap();
        assert_eq!(s.component_dims(), vec![2, 1, 1]);
        let nn = nakayama_nesbitt(&q, q.one(), q.from_i64(2)).unwrap();
        assert_eq!(nn.component_dims(), vec![1, 1, 1, 1]);
        assert!(nakayama_nesbitt(&q, q.zero(), q.one()).is_err());
        let z3 = Arc::new(FiniteGroup::cyclic(3).unwrap());
        let m3 = matrix_good_grading(&q, z3, &[0, 1, 2]).unwrap();
        assert_eq!(m3.component_dims(), vec![3, 3, 3]);
        assert_eq!(matrix_over(&nn, 2).unwrap().dim(), 16);
    }

    #[test]
    fn trivial_extension_of_k_squares_to_zero() {
        let q = Rationals;
        let k = ground_field(&q, Arc::new(FiniteGroup::trivial()));
        let t = trivial_extension(&k).unwrap();
        assert!(t.product(1, 1).is_empty());
        assert_eq!(t.product(0, 1), &[(1, q.one())]);
    }

    #[test]
    fn polynomial_reduction() {
        let q = Rationals;
        // x^2 = 1 + x  (f = x^2 - x - 1)
        let r = polynomial_quotient(&q, &[q.from_i64(-1), q.from_i64(-1)]).unwrap();
        assert_eq!(r.product(1, 1), &[(0, q.one()), (1, q.one())]);
    }

    #[test]
    fn fine_grading_needs_roots_of_unity() {
        let f5 = PrimeField::new(5).unwrap();
        let a = matrix_fine_grading(&f5, 2).unwrap();
        assert_eq!(a.component_dims(), vec![1, 1, 1, 1]);
        assert!(matrix_fine_grading(&Rationals, 2).is_ok());
        assert!(matrix_fine_grading(&Rationals, 3).is_err());
        assert_eq!(matrix_fine_grading(&f5, 4).unwrap().dim(), 16);
    }

    #[test]
    fn skew_group_algebra_checks_the_action() {
        let q = Rationals;
        let z2 = Arc::new(FiniteGroup::cyclic(2).unwrap());
        let r = polynomial_quotient(&q, &[q.zero(), q.zero()]).unwrap();
        let bad = Matrix::from_rows(2, vec![vec![q.one(), q.one()], vec![q.zero(), q.one()]]).unwrap();
        let id = Matrix::identity(&q, 2);
        assert!(skew_group_algebra(&r, z2.clone(), &[id.clone(), bad]).is_err());
        let k = ground_field(&q, Arc::new(FiniteGroup::trivial()));
        let kz2 = skew_group_algebra(&k, z2.clone(), &[Matrix::identity(&q, 1), Matrix::identity(&q, 1)]).unwrap();
        assert_eq!(kz2.structure_constants().count(), 4);
        assert_eq!(kz2.degrees(), group_algebra(&q, z2).unwrap().degrees());
    }

    #[test]
    fn random_algebras_are_valid_and_reproducible() {
        let q = Rationals;
        let f7 = PrimeField::new(7).unwrap();
        for seed in 0..60 {
            let (d, a) = random_graded_algebra(&q, seed, RandomLimits::default()).unwrap();
            assert!(a.validate().is_empty(), "{d}");
            assert!(a.dim() <= 8 && a.group().order() <= 6, "{d}");
            assert_eq!(random_graded_algebra(&q, seed, RandomLimits::default()).unwrap().1, a);
            let (d, b) = random_graded_algebra(&f7, seed, RandomLimits::default()).unwrap();
            assert!(b.validate().is_empty(), "{d}");
        }
    }
}

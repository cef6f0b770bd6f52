//! Group-graded algebras given by structure constants on a homogeneous
//! basis.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::group::{FiniteGroup, GroupElement};
use crate::linalg::{self, LinearSystem, Matrix, Span};
use crate::scalar::{Field, Scalar};

/// A failed algebra axiom.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AlgebraViolation {
    Shape(String),
    /// `b_i b_j` has a component on `b_k` of the wrong degree.
    Grading {
        i: usize,
        j: usize,
        k: usize,
    },
    Associativity {
        i: usize,
        j: usize,
        k: usize,
    },
    /// The unit fails to fix `b_i` from the given side.
    Unit {
        i: usize,
        left: bool,
    },
    /// The unit has a component on a basis vector outside degree e.
    UnitDegree {
        k: usize,
    },
}

impl fmt::Display for AlgebraViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlgebraViolation::Shape(s) => write!(f, "{s}"),
            AlgebraViolation::Grading { i, j, k } => {
                write!(
                    f,
                    "grading violated: b{i} b{j} has a component on b{k} of the wrong degree"
                )
            }
            AlgebraViolation::Associativity { i, j, k } => {
                write!(f, "associativity violated at triple ({i}, {j}, {k})")
            }
            AlgebraViolation::Unit { i, left } => {
                let side = if *left { "1 b" } else { "b" };
                let tail = if *left { "" } else { " 1" };
                write!(f, "unit violated: {side}{i}{tail} != b{i}")
            }
            AlgebraViolation::UnitDegree { k } => {
                write!(f, "unit has a component on b{k}, which is not of degree e")
            }
        }
    }
}

/// A finite-dimensional `G`-graded algebra. Basis vector `i` is
/// homogeneous of degree `deg[i]`.
#[derive(Clone, Debug, PartialEq)]
pub struct GradedAlgebra<F: Field> {
    field: F,
    group: Arc<FiniteGroup>,
    deg: Vec<GroupElement>,
    // products[i * d + j] = sparse coordinates of b_i b_j
    products: Vec<Vec<(usize, F::Elem)>>,
    unit: Vec<F::Elem>,
}

/// Outcome of [`GradedAlgebra::graded_division`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GradedDivision<E> {
    Yes,
    /// A nonzero homogeneous element without inverse.
    No {
        degree: GroupElement,
        witness: Vec<E>,
    },
    Unsupported(String),
}

impl<F: Field> GradedAlgebra<F> {
    /// Builds and validates an algebra from `(i, j, k, c)` entries meaning
    /// `b_i b_j` has coefficient `c` on `b_k`. Repeated entries are summed.
    pub fn new(
        field: F,
        group: Arc<FiniteGroup>,
        deg: Vec<GroupElement>,
        entries: impl IntoIterator<Item = (usize, usize, usize, F::Elem)>,
        unit: Vec<F::Elem>,
    ) -> Result<Self> {
        let a = Self::unchecked(field, group, deg, entries, unit)?;
        let violations = a.validate();
        if violations.is_empty() {
            Ok(a)
        } else {
            Err(Error::Algebra(violations.iter().map(ToString::to_string).collect()))
        }
    }

    /// Like [`GradedAlgebra::new`] but only checks index ranges.
    pub fn unchecked(
        field: F,
        group: Arc<FiniteGroup>,
        deg: Vec<GroupElement>,
        entries: impl IntoIterator<Item = (usize, usize, usize, F::Elem)>,
        unit: Vec<F::Elem>,
    ) -> Result<Self> {
        let d = deg.len();
        if unit.len() != d {
            return Err(Error::Shape(format!("unit has {} coordinates, dim is {d}", unit.len())));
        }
        if let Some(g) = deg.iter().find(|&&g| g >= group.order()) {
            return Err(Error::Shape(format!("degree {g} is not an element of the group")));
        }
        let mut products: Vec<Vec<(usize, F::Elem)>> = vec![Vec::new(); d * d];
        for (i, j, k, c) in entries {
            if i >= d || j >= d || k >= d {
                return Err(Error::Shape(format!(
                    "structure constant ({i}, {j}, {k}) out of range for dim {d}"
                )));
            }
            let slot = &mut products[i * d + j];
            match slot.iter_mut().find(|(kk, _)| *kk == k) {
                Some((_, x)) => *x = x.clone() + c,
                None => slot.push((k, c)),
            }
        }
        for slot in products.iter_mut() {
            slot.retain(|(_, c)| !c.is_zero());
            slot.sort_by_key(|(k, _)| *k);
        }
        Ok(GradedAlgebra {
            field,
            group,
            deg,
            products,
            unit,
        })
    }

    /// Every violated invariant; empty iff the algebra is valid.
    pub fn validate(&self) -> Vec<AlgebraViolation> {
        let d = self.dim();
        let g = &self.group;
        let mut out = Vec::new();
        for i in 0..d {
            for j in 0..d {
                for (k, _) in self.product(i, j) {
                    if self.deg[*k] != g.mul(self.deg[i], self.deg[j]) {
                        out.push(AlgebraViolation::Grading { i, j, k: *k });
                    }
                }
            }
        }
        for (k, c) in self.unit.iter().enumerate() {
            if !c.is_zero() && self.deg[k] != g.neutral() {
                out.push(AlgebraViolation::UnitDegree { k });
            }
        }
        for i in 0..d {
            let b = self.basis_vector(i);
            if self.mul(&self.unit, &b) != b {
                out.push(AlgebraViolation::Unit { i, left: true });
            }
            if self.mul(&b, &self.unit) != b {
                out.push(AlgebraViolation::Unit { i, left: false });
            }
        }
        for i in 0..d {
            for j in 0..d {
                let ij = self.sparse_to_dense(self.product(i, j));
                for k in 0..d {
                    let left = self.mul_by_basis_right(&ij, k);
                    let jk = self.sparse_to_dense(self.product(j, k));
                    let right = self.mul_by_basis_left(i, &jk);
                    if left != right {
                        out.push(AlgebraViolation::Associativity { i, j, k });
                    }
                }
            }
        }
        out
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn dim(&self) -> usize {
        self.deg.len()
    }

    pub fn degrees(&self) -> &[GroupElement] {
        &self.deg
    }

    pub fn deg(&self, i: usize) -> GroupElement {
        self.deg[i]
    }

    pub fn unit(&self) -> &[F::Elem] {
        &self.unit
    }

    /// Sparse coordinates of `b_i b_j`.
    pub fn product(&self, i: usize, j: usize) -> &[(usize, F::Elem)] {
        &self.products[i * self.dim() + j]
    }

    /// All nonzero structure constants as `(i, j, k, c)`.
    pub fn structure_constants(&self) -> impl Iterator<Item = (usize, usize, usize, &F::Elem)> + '_ {
        let d = self.dim();
        self.products
            .iter()
            .enumerate()
            .flat_map(move |(ij, v)| v.iter().map(move |(k, c)| (ij / d, ij % d, *k, c)))
    }

    pub fn basis_vector(&self, i: usize) -> Vec<F::Elem> {
        let mut v = vec![self.field.zero(); self.dim()];
        v[i] = self.field.one();
        v
    }

    fn sparse_to_dense(&self, s: &[(usize, F::Elem)]) -> Vec<F::Elem> {
        let mut v = vec![self.field.zero(); self.dim()];
        for (k, c) in s {
            v[*k] = c.clone();
        }
        v
    }

    fn mul_by_basis_right(&self, x: &[F::Elem], j: usize) -> Vec<F::Elem> {
        let mut out = vec![self.field.zero(); self.dim()];
        for (i, a) in x.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (k, c) in self.product(i, j) {
                out[*k] = out[*k].clone() + a.clone() * c.clone();
            }
        }
        out
    }

    fn mul_by_basis_left(&self, i: usize, y: &[F::Elem]) -> Vec<F::Elem> {
        let mut out = vec![self.field.zero(); self.dim()];
        for (j, b) in y.iter().enumerate() {
            if b.is_zero() {
                continue;
            }
            for (k, c) in self.product(i, j) {
                out[*k] = out[*k].clone() + b.clone() * c.clone();
            }
        }
        out
    }

    /// Product of two coordinate vectors.
    pub fn mul(&self, x: &[F::Elem], y: &[F::Elem]) -> Vec<F::Elem> {
        let mut out = vec![self.field.zero(); self.dim()];
        for (i, a) in x.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in y.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                for (k, c) in self.product(i, j) {
                    out[*k] = out[*k].clone() + a.clone() * b.clone() * c.clone();
                }
            }
        }
        out
    }

    /// Matrix of `y -> x y`.
    pub fn left_mult_matrix(&self, x: &[F::Elem]) -> Matrix<F::Elem> {
        let d = self.dim();
        let cols: Vec<Vec<F::Elem>> = (0..d).map(|j| self.mul_by_basis_right(x, j)).collect();
        Matrix::from_columns(&self.field, d, &cols)
    }

    /// Matrix of `y -> y x`.
    pub fn right_mult_matrix(&self, x: &[F::Elem]) -> Matrix<F::Elem> {
        let d = self.dim();
        let cols: Vec<Vec<F::Elem>> = (0..d).map(|j| self.mul_by_basis_left(j, x)).collect();
        Matrix::from_columns(&self.field, d, &cols)
    }

    /// Basis indices of the homogeneous component of degree `g`.
    pub fn component(&self, g: GroupElement) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.deg[i] == g).collect()
    }

    pub fn component_dims(&self) -> Vec<usize> {
        let mut dims = vec![0; self.group.order()];
        for &g in &self.deg {
            dims[g] += 1;
        }
        dims
    }

    pub fn support(&self) -> Vec<GroupElement> {
        let dims = self.component_dims();
        self.group.elements().filter(|&g| dims[g] > 0).collect()
    }

    pub fn is_commutative(&self) -> bool {
        let d = self.dim();
        (0..d).all(|i| (0..d).all(|j| self.product(i, j) == self.product(j, i)))
    }

    /// `true` when `x` has a two-sided inverse.
    pub fn is_invertible(&self, x: &[F::Elem]) -> bool {
        let one = self.unit.clone();
        let right = linalg::solve(&self.field, &self.left_mult_matrix(x), &one);
        let left = linalg::solve(&self.field, &self.right_mult_matrix(x), &one);
        matches!((right, left), (Ok(Some(_)), Ok(Some(_))))
    }

    /// A set of basis indices generating the algebra; commuting with their
    /// actions is equivalent to commuting with the whole algebra.
    pub fn generating_set(&self) -> Vec<usize> {
        let d = self.dim();
        let mut gens: Vec<usize> = Vec::new();
        let mut span = Span::new(&self.field, d);
        let mut words: Vec<Vec<F::Elem>> = Vec::new();
        if d == 0 {
            return gens;
        }
        if span.insert(&self.unit) {
            words.push(self.unit.clone());
        }
        for i in 0..d {
            if span.contains(&self.basis_vector(i)) {
                continue;
            }
            gens.push(i);
            // close the span of words under right multiplication by generators
            let mut frontier = words.clone();
            while let Some(w) = frontier.pop() {
                for &g in &gens {
                    let p = self.mul_by_basis_right(&w, g);
                    if span.insert(&p) {
                        words.push(p.clone());
                        frontier.push(p);
                    }
                }
            }
            if span.dim() == d {
                break;
            }
        }
        gens
    }

    /// Same algebra regraded by `group` with the given degrees.
    pub fn regrade(&self, group: Arc<FiniteGroup>, deg: Vec<GroupElement>) -> Result<Self> {
        if deg.len() != self.dim() {
            return Err(Error::Shape("degree vector length differs from dim".into()));
        }
        let a = GradedAlgebra {
            field: self.field.clone(),
            group,
            deg,
            products: self.products.clone(),
            unit: self.unit.clone(),
        };
        let bad: Vec<String> = a
            .validate()
            .into_iter()
            .filter(|v| {
                matches!(
                    v,
                    AlgebraViolation::Grading { .. } | AlgebraViolation::UnitDegree { .. }
                )
            })
            .map(|v| v.to_string())
            .collect();
        if bad.is_empty() {
            Ok(a)
        } else {
            Err(Error::Algebra(bad))
        }
    }

    /// The underlying ungraded algebra (graded by the trivial group).
    pub fn forget_grading(&self) -> Self {
        GradedAlgebra {
            field: self.field.clone(),
            group: Arc::new(FiniteGroup::trivial()),
            deg: vec![0; self.dim()],
            products: self.products.clone(),
            unit: self.unit.clone(),
        }
    }

    /// The homogeneous subalgebra `A_H` for a subgroup `H`, graded by `H`.
    /// Also returns the indices (in `A`) of the retained basis vectors.
    pub fn restrict_to_subgroup(&self, subgroup: &[GroupElement]) -> Result<(Self, Vec<usize>)> {
        let (h, elems) = self.group.restrict(subgroup)?;
        let keep: Vec<usize> = (0..self.dim()).filter(|&i| elems.contains(&self.deg[i])).collect();
        let mut new_index = vec![usize::MAX; self.dim()];
        for (n, &i) in keep.iter().enumerate() {
            new_index[i] = n;
        }
        let pos = |g: usize| elems.binary_search(&g).expect("in subgroup");
        let deg = keep.iter().map(|&i| pos(self.deg[i])).collect();
        let mut entries = Vec::new();
        for &i in &keep {
            for &j in &keep {
                for (k, c) in self.product(i, j) {
                    entries.push((new_index[i], new_index[j], new_index[*k], c.clone()));
                }
            }
        }
        let unit = keep.iter().map(|&i| self.unit[i].clone()).collect();
        let a = Self::unchecked(self.field.clone(), Arc::new(h), deg, entries, unit)?;
        Ok((a, keep))
    }

    /// `A_e` as a trivially graded algebra, with the indices of its basis in
    /// `A`.
    pub fn identity_component(&self) -> (Self, Vec<usize>) {
        let (ae, keep) = self
            .restrict_to_subgroup(&[self.group.neutral()])
            .expect("trivial subgroup");
        (ae, keep)
    }

    /// The `G/N`-grading obtained by mapping degrees to cosets.
    pub fn coarsen_grading(&self, normal: &[GroupElement]) -> Result<Self> {
        let (q, coset) = self.group.quotient(normal)?;
        let deg = self.deg.iter().map(|&g| coset[g]).collect();
        Ok(GradedAlgebra {
            field: self.field.clone(),
            group: Arc::new(q),
            deg,
            products: self.products.clone(),
            unit: self.unit.clone(),
        })
    }

    /// `A ⊗ B` with basis `a_i ⊗ b_j` at index `i * dim B + j` of degree
    /// `deg a_i deg b_j`. Supports must commute elementwise.
    pub fn tensor_product(&self, other: &Self) -> Result<Self> {
        if self.field != other.field {
            return Err(Error::Invalid("tensor factors over different fields".into()));
        }
        if *self.group != *other.group {
            return Err(Error::Invalid("tensor factors graded by different groups".into()));
        }
        let g = &self.group;
        for s in self.support() {
            for t in other.support() {
                if !g.commute(s, t) {
                    return Err(Error::Invalid(format!("supports do not commute: {s} and {t}")));
                }
            }
        }
        let (m, n) = (self.dim(), other.dim());
        let deg = (0..m * n).map(|x| g.mul(self.deg[x / n], other.deg[x % n])).collect();
        let mut entries = Vec::new();
        for (i1, j1, k1, c1) in self.structure_constants() {
            for (i2, j2, k2, c2) in other.structure_constants() {
                entries.push((i1 * n + i2, j1 * n + j2, k1 * n + k2, c1.clone() * c2.clone()));
            }
        }
        let unit = (0..m * n)
            .map(|x| self.unit[x / n].clone() * other.unit[x % n].clone())
            .collect();
        Self::unchecked(self.field.clone(), self.group.clone(), deg, entries, unit)
    }

    /// Basis of `{x : x s = s x for all s in S}`.
    pub fn centralizer(&self, subset: &[Vec<F::Elem>]) -> Vec<Vec<F::Elem>> {
        let d = self.dim();
        let mut sys = LinearSystem::new(&self.field, d);
        for s in subset {
            // x s - s x = (R_s - L_s) x
            let m = self
                .right_mult_matrix(s)
                .sub(&self.left_mult_matrix(s))
                .expect("square");
            for r in 0..d {
                sys.add_equation(m.row_support(r));
            }
        }
        sys.kernel_basis()
    }

    pub fn center(&self) -> Vec<Vec<F::Elem>> {
        let basis: Vec<Vec<F::Elem>> = (0..self.dim()).map(|i| self.basis_vector(i)).collect();
        self.centralizer(&basis)
    }

    /// Decides whether every nonzero homogeneous element is invertible.
    ///
    /// Homogeneous basis vectors are always tested. Beyond that, components
    /// of dimension at most one settle the question; over a finite field,
    /// components with at most `enumeration_limit` elements are enumerated.
    pub fn graded_division(&self, enumeration_limit: u64) -> GradedDivision<F::Elem> {
        for i in 0..self.dim() {
            let b = self.basis_vector(i);
            if !self.is_invertible(&b) {
                return GradedDivision::No {
                    degree: self.deg[i],
                    witness: b,
                };
            }
        }
        let big: Vec<GroupElement> = self.group.elements().filter(|&g| self.component(g).len() > 1).collect();
        if big.is_empty() {
            return GradedDivision::Yes;
        }
        let Some(q) = self.field.size() else {
            return GradedDivision::Unsupported(
                "a homogeneous component has dimension > 1 over an infinite field".into(),
            );
        };
        let mut total: u64 = 0;
        for &g in &big {
            let n = self.component(g).len() as u32;
            total = total.saturating_add(q.checked_pow(n).unwrap_or(u64::MAX));
        }
        if total > enumeration_limit {
            return GradedDivision::Unsupported(format!(
                "enumeration of {total} homogeneous elements exceeds {enumeration_limit}"
            ));
        }
        for &g in &big {
            let idx = self.component(g);
            let count = q.pow(idx.len() as u32);
            for code in 1..count {
                let mut x = vec![self.field.zero(); self.dim()];
                let mut c = code;
                for &i in &idx {
                    x[i] = self.field.element_at(c % q);
                    c /= q;
                }
                if !self.is_invertible(&x) {
                    return GradedDivision::No { degree: g, witness: x };
                }
            }
        }
        GradedDivision::Yes
    }

    /// `true` when `1 ∈ A_g A_{g^-1}` for every `g`.
    pub fn strongly_graded_failure(&self) -> Option<GroupElement> {
        let g = &self.group;
        g.elements().find(|&x| {
            let xs = self.component(x);
            let ys = self.component(g.inv(x));
            let products: Vec<Vec<F::Elem>> = xs
                .iter()
                .flat_map(|&i| ys.iter().map(move |&j| (i, j)))
                .map(|(i, j)| self.sparse_to_dense(self.product(i, j)))
                .collect();
            if products.is_empty() {
                return true;
            }
            let m = Matrix::from_columns(&self.field, self.dim(), &products);
            !matches!(linalg::solve(&self.field, &m, &self.unit), Ok(Some(_)))
        })
    }
}

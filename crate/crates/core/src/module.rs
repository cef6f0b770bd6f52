//! Graded modules over a [`GradedAlgebra`], stored as one action matrix per
//! algebra basis vector.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_rational::BigRational;
use rand::Rng;

use crate::algebra::GradedAlgebra;
use crate::error::{Error, Result};
use crate::group::GroupElement;
use crate::linalg::{self, generic_invertible, Budget, InvertibilityOutcome, LinearSystem, Matrix};
use crate::scalar::{Field, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub fn opposite(self) -> Side {
        match self {
            Side::Left => Side::Right,
            Side::Right => Side::Left,
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Left => "left",
            Side::Right => "right",
        })
    }
}

impl FromStr for Side {
    type Err = Error;

    fn from_str(s: &str) -> Result<Side> {
        match s {
            "left" => Ok(Side::Left),
            "right" => Ok(Side::Right),
            _ => Err(Error::Parse(format!("expected 'left' or 'right', got '{s}'"))),
        }
    }
}

/// A graded module. For a left module `action[i]` is the matrix of
/// `x -> b_i x`; for a right module it is the matrix of `x -> x b_i`.
#[derive(Clone, Debug, PartialEq)]
pub struct GradedModule<F: Field> {
    side: Side,
    algebra: Arc<GradedAlgebra<F>>,
    deg: Vec<GroupElement>,
    action: Vec<Matrix<F::Elem>>,
}

impl<F: Field> GradedModule<F> {
    pub fn new(
        side: Side,
        algebra: Arc<GradedAlgebra<F>>,
        deg: Vec<GroupElement>,
        action: Vec<Matrix<F::Elem>>,
    ) -> Result<Self> {
        let m = Self::unchecked(side, algebra, deg, action)?;
        let violations = m.validate();
        if violations.is_empty() {
            Ok(m)
        } else {
            Err(Error::Module(violations))
        }
    }

    /// Checks shapes only.
    pub fn unchecked(
        side: Side,
        algebra: Arc<GradedAlgebra<F>>,
        deg: Vec<GroupElement>,
        action: Vec<Matrix<F::Elem>>,
    ) -> Result<Self> {
        let m = deg.len();
        if action.len() != algebra.dim() {
            return Err(Error::Shape(format!(
                "{} action matrices for an algebra of dim {}",
                action.len(),
                algebra.dim()
            )));
        }
        if action.iter().any(|a| a.rows() != m || a.cols() != m) {
            return Err(Error::Shape(format!("action matrices must be {m}x{m}")));
        }
        if let Some(g) = deg.iter().find(|&&g| g >= algebra.group().order()) {
            return Err(Error::Shape(format!("degree {g} is not an element of the group")));
        }
        Ok(GradedModule {
            side,
            algebra,
            deg,
            action,
        })
    }

    /// Every violated module axiom; empty iff valid.
    pub fn validate(&self) -> Vec<String> {
        let a = &*self.algebra;
        let field = a.field();
        let g = a.group();
        let mut out = Vec::new();
        let id = Matrix::identity(field, self.dim());
        let one = linalg::linear_combination(field, &self.action, a.unit());
        if self.dim() > 0 && a.dim() > 0 && one != id {
            out.push("unit does not act as the identity".to_string());
        }
        for (i, act) in self.action.iter().enumerate() {
            for k in 0..self.dim() {
                for (j, _) in act.row_support(k) {
                    let want = match self.side {
                        Side::Left => g.mul(a.deg(i), self.deg[j]),
                        Side::Right => g.mul(self.deg[j], a.deg(i)),
                    };
                    if self.deg[k] != want {
                        out.push(format!("grading violated: b{i} acting on x{j} hits x{k}"));
                    }
                }
            }
        }
        for i in 0..a.dim() {
            for j in 0..a.dim() {
                let composed = match self.side {
                    Side::Left => self.action[i].mul(field, &self.action[j]),
                    Side::Right => self.action[j].mul(field, &self.action[i]),
                }
                .expect("square");
                let coeffs = dense(field, a.dim(), a.product(i, j));
                if composed != linalg::linear_combination(field, &self.action, &coeffs) {
                    out.push(format!("associativity violated for algebra pair ({i}, {j})"));
                }
            }
        }
        out
    }

    /// `A` acting on itself by multiplication on the given side.
    pub fn regular(algebra: &Arc<GradedAlgebra<F>>, side: Side) -> Self {
        let a = &**algebra;
        let action = (0..a.dim())
            .map(|i| {
                let b = a.basis_vector(i);
                match side {
                    Side::Left => a.left_mult_matrix(&b),
                    Side::Right => a.right_mult_matrix(&b),
                }
            })
            .collect();
        GradedModule {
            side,
            algebra: algebra.clone(),
            deg: a.degrees().to_vec(),
            action,
        }
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn algebra(&self) -> &Arc<GradedAlgebra<F>> {
        &self.algebra
    }

    pub fn dim(&self) -> usize {
        self.deg.len()
    }

    pub fn degrees(&self) -> &[GroupElement] {
        &self.deg
    }

    pub fn action(&self, i: usize) -> &Matrix<F::Elem> {
        &self.action[i]
    }

    pub fn actions(&self) -> &[Matrix<F::Elem>] {
        &self.action
    }

    pub fn component(&self, g: GroupElement) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.deg[i] == g).collect()
    }

    pub fn component_dims(&self) -> Vec<usize> {
        let mut dims = vec![0; self.algebra.group().order()];
        for &g in &self.deg {
            dims[g] += 1;
        }
        dims
    }

    /// The dual module on the opposite side: `(f a)(x) = f(a x)` for a left
    /// module, `(a f)(x) = f(x a)` for a right one. The dual basis vector of
    /// `x_j` has degree `deg(x_j)^-1`.
    pub fn dual(&self) -> Self {
        let g = self.algebra.group();
        GradedModule {
            side: self.side.opposite(),
            algebra: self.algebra.clone(),
            deg: self.deg.iter().map(|&d| g.inv(d)).collect(),
            action: self.action.iter().map(Matrix::transpose).collect(),
        }
    }

    /// `M(σ)` with `M(σ)_g = M_{gσ}`: each degree `d` becomes `d σ^-1`.
    pub fn suspend_left(&self, sigma: GroupElement) -> Result<Self> {
        if self.side != Side::Left {
            return Err(Error::Invalid("suspend_left needs a left module".into()));
        }
        let g = self.algebra.group();
        let s = g.inv(sigma);
        Ok(self.with_degrees(self.deg.iter().map(|&d| g.mul(d, s)).collect()))
    }

    /// `(σ)M` with `((σ)M)_g = M_{σg}`: each degree `d` becomes `σ^-1 d`.
    pub fn suspend_right(&self, sigma: GroupElement) -> Result<Self> {
        if self.side != Side::Right {
            return Err(Error::Invalid("suspend_right needs a right module".into()));
        }
        let g = self.algebra.group();
        let s = g.inv(sigma);
        Ok(self.with_degrees(self.deg.iter().map(|&d| g.mul(s, d)).collect()))
    }

    fn with_degrees(&self, deg: Vec<GroupElement>) -> Self {
        GradedModule {
            side: self.side,
            algebra: self.algebra.clone(),
            deg,
            action: self.action.clone(),
        }
    }

    /// The component `M_g` of a left module as a module over the identity
    /// component `ae`, whose basis vector `a` is `b_{embedding[a]}` in `A`.
    pub fn component_module(&self, g: GroupElement, ae: &Arc<GradedAlgebra<F>>, embedding: &[usize]) -> Result<Self> {
        if self.side != Side::Left {
            return Err(Error::Invalid("component modules are built from left modules".into()));
        }
        let comp = self.component(g);
        let action = embedding.iter().map(|&i| self.action[i].select(&comp, &comp)).collect();
        Self::unchecked(Side::Left, ae.clone(), vec![ae.group().neutral(); comp.len()], action)
    }
}

fn dense<F: Field>(field: &F, len: usize, sparse: &[(usize, F::Elem)]) -> Vec<F::Elem> {
    let mut v = vec![field.zero(); len];
    for (k, c) in sparse {
        v[*k] = c.clone();
    }
    v
}

fn check_compatible<F: Field>(m: &GradedModule<F>, n: &GradedModule<F>) -> Result<()> {
    if m.side != n.side {
        return Err(Error::Invalid(format!("a {} and a {} module", m.side, n.side)));
    }
    if !Arc::ptr_eq(&m.algebra, &n.algebra) && *m.algebra != *n.algebra {
        return Err(Error::Invalid("modules over different algebras".into()));
    }
    Ok(())
}

/// `true` when `phi` (of shape `dim N x dim M`) commutes with every basis
/// action.
pub fn is_module_morphism<F: Field>(m: &GradedModule<F>, n: &GradedModule<F>, phi: &Matrix<F::Elem>) -> bool {
    if check_compatible(m, n).is_err() || phi.rows() != n.dim() || phi.cols() != m.dim() {
        return false;
    }
    let field = m.algebra.field();
    m.action
        .iter()
        .zip(&n.action)
        .all(|(am, an)| phi.mul(field, am).expect("shape") == an.mul(field, phi).expect("shape"))
}

/// `true` when `phi` maps each `M_g` into `N_g`.
pub fn is_degree_preserving<F: Field>(m: &GradedModule<F>, n: &GradedModule<F>, phi: &Matrix<F::Elem>) -> bool {
    phi.rows() == n.dim()
        && phi.cols() == m.dim()
        && (0..n.dim()).all(|r| phi.row_support(r).iter().all(|(c, _)| n.deg[r] == m.deg[*c]))
}

/// Basis of the degree-preserving module morphisms `M -> N`, as matrices
/// of shape `dim N x dim M`.
pub fn graded_hom_basis<F: Field>(m: &GradedModule<F>, n: &GradedModule<F>) -> Result<Vec<Matrix<F::Elem>>> {
    check_compatible(m, n)?;
    let field = m.algebra.field();
    let (dm, dn) = (m.dim(), n.dim());
    // variable index for each entry (r, c) with matching degrees
    let mut var = vec![usize::MAX; dn * dm];
    let mut positions = Vec::new();
    for r in 0..dn {
        for c in 0..dm {
            if n.deg[r] == m.deg[c] {
                var[r * dm + c] = positions.len();
                positions.push((r, c));
            }
        }
    }
    let mut sys = LinearSystem::new(field, positions.len());
    for i in m.algebra.generating_set() {
        let (am, an) = (&m.action[i], &n.action[i]);
        // (phi am - an phi)[r][c] = 0
        for r in 0..dn {
            for c in 0..dm {
                let mut terms = Vec::new();
                for t in 0..dm {
                    let x = &am[(t, c)];
                    if !x.is_zero() && var[r * dm + t] != usize::MAX {
                        terms.push((var[r * dm + t], x.clone()));
                    }
                }
                for t in 0..dn {
                    let x = &an[(r, t)];
                    if !x.is_zero() && var[t * dm + c] != usize::MAX {
                        terms.push((var[t * dm + c], -x.clone()));
                    }
                }
                if !terms.is_empty() {
                    sys.add_equation(terms);
                }
            }
        }
    }
    Ok(sys
        .kernel_basis()
        .into_iter()
        .map(|v| {
            let mut phi = Matrix::zeros(field, dn, dm);
            for (x, &(r, c)) in v.into_iter().zip(&positions) {
                phi[(r, c)] = x;
            }
            phi
        })
        .collect())
}

/// Certified reasons two graded modules are not isomorphic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IsoObstruction {
    ComponentDims {
        degree: GroupElement,
        source: usize,
        target: usize,
    },
    /// `dim Hom(M, N)` differs from `dim Hom(M, M)`.
    HomDims {
        hom: usize,
        endo: usize,
    },
    NoInvertibleMorphism(String),
}

impl fmt::Display for IsoObstruction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IsoObstruction::ComponentDims { degree, source, target } => write!(
                f,
                "component dimensions differ in degree {degree}: {source} vs {target}"
            ),
            IsoObstruction::HomDims { hom, endo } => {
                write!(f, "dim Hom(M, N) = {hom} but dim End(M) = {endo}")
            }
            IsoObstruction::NoInvertibleMorphism(reason) => {
                write!(f, "no invertible graded morphism: {reason}")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IsoOutcome<E> {
    /// A bijective degree-preserving morphism `M -> N`.
    Isomorphic(Matrix<E>),
    NotIsomorphic(IsoObstruction),
    /// No invertible morphism was found by sampling.
    ProbablyNot {
        error_bound: BigRational,
    },
}

/// Decides whether `M` and `N` are isomorphic as graded modules.
pub fn graded_iso<F: Field, R: Rng + ?Sized>(
    m: &GradedModule<F>,
    n: &GradedModule<F>,
    budget: &Budget,
    rng: &mut R,
) -> Result<IsoOutcome<F::Elem>> {
    check_compatible(m, n)?;
    let field = m.algebra.field();
    let (cm, cn) = (m.component_dims(), n.component_dims());
    if let Some(g) = (0..cm.len()).find(|&g| cm[g] != cn[g]) {
        return Ok(IsoOutcome::NotIsomorphic(IsoObstruction::ComponentDims {
            degree: g,
            source: cm[g],
            target: cn[g],
        }));
    }
    if m.dim() == 0 {
        return Ok(IsoOutcome::Isomorphic(Matrix::zeros(field, 0, 0)));
    }
    let hom = graded_hom_basis(m, n)?;
    let endo = graded_hom_basis(m, m)?.len();
    if hom.len() != endo {
        return Ok(IsoOutcome::NotIsomorphic(IsoObstruction::HomDims {
            hom: hom.len(),
            endo,
        }));
    }
    let found = generic_invertible(field, &hom, budget, rng)?;
    Ok(match found.outcome {
        InvertibilityOutcome::WitnessFound { matrix, .. } => {
            if !is_module_morphism(m, n, &matrix) || !is_degree_preserving(m, n, &matrix) {
                return Err(Error::Inconsistency("isomorphism witness fails re-verification".into()));
            }
            IsoOutcome::Isomorphic(matrix)
        }
        InvertibilityOutcome::CertifiedAbsent { reason } => {
            IsoOutcome::NotIsomorphic(IsoObstruction::NoInvertibleMorphism(reason))
        }
        InvertibilityOutcome::ProbabilisticAbsent { error_bound } => IsoOutcome::ProbablyNot { error_bound },
    })
}

/// The coinduced module `Hom_{A_e}(A, N)` for a left module `N` over the
/// identity component, with `A` acting by `(a f)(x) = f(x a)`.
#[derive(Clone, Debug)]
pub struct Coinduced<F: Field> {
    pub module: GradedModule<F>,
    /// Basis maps as vectors of length `dim A * dim N`; entry `i * dim N + t`
    /// is coordinate `t` of `f(b_i)`. A map supported on `A_h` has degree
    /// `h^-1`.
    pub maps: Vec<Vec<F::Elem>>,
    free: Vec<usize>,
}

impl<F: Field> Coinduced<F> {
    /// Coordinates of an `A_e`-linear map (in the layout of `maps`).
    pub fn coordinates(&self, f: &[F::Elem]) -> Vec<F::Elem> {
        self.free.iter().map(|&v| f[v].clone()).collect()
    }
}

pub fn coinduce<F: Field>(a: &Arc<GradedAlgebra<F>>, n: &GradedModule<F>) -> Result<Coinduced<F>> {
    let (ae, embedding) = a.identity_component();
    if n.side != Side::Left || *n.algebra != ae {
        return Err(Error::Invalid(
            "coinduction needs a left module over the identity component".into(),
        ));
    }
    let field = a.field();
    let (d, nd) = (a.dim(), n.dim());
    let mut sys = LinearSystem::new(field, d * nd);
    // f(e b_i) = e f(b_i) for generators e of A_e
    for e in ae.generating_set() {
        let be = embedding[e];
        for i in 0..d {
            for t in 0..nd {
                let mut terms: Vec<(usize, F::Elem)> =
                    a.product(be, i).iter().map(|(k, c)| (k * nd + t, c.clone())).collect();
                for s in 0..nd {
                    let x = &n.action[e][(t, s)];
                    if !x.is_zero() {
                        terms.push((i * nd + s, -x.clone()));
                    }
                }
                sys.add_equation(terms);
            }
        }
    }
    let free = sys.free_variables();
    let maps = sys.kernel_basis();
    let g = a.group();
    let deg = maps
        .iter()
        .map(|f| {
            let first = f.iter().position(|x| !x.is_zero()).expect("nonzero kernel vector");
            g.inv(a.deg(first / nd.max(1)))
        })
        .collect();
    let mut action = Vec::with_capacity(d);
    for i in 0..d {
        let cols: Vec<Vec<F::Elem>> = maps
            .iter()
            .map(|f| {
                // (b_i f)(b_l) = f(b_l b_i)
                let mut h = vec![field.zero(); d * nd];
                for l in 0..d {
                    for (k, c) in a.product(l, i) {
                        for t in 0..nd {
                            let x = &f[k * nd + t];
                            if !x.is_zero() {
                                h[l * nd + t] = h[l * nd + t].clone() + c.clone() * x.clone();
                            }
                        }
                    }
                }
                free.iter().map(|&v| h[v].clone()).collect()
            })
            .collect();
        action.push(Matrix::from_columns(field, maps.len(), &cols));
    }
    let module = GradedModule::unchecked(Side::Left, a.clone(), deg, action)?;
    Ok(Coinduced { module, maps, free })
}

/// The map `ν: M -> Coind(M_σ)(σ^-1)` given on homogeneous `x` of degree
/// `λ` by `ν(x)(a) = a_{σλ^-1} x`.
#[derive(Clone, Debug)]
pub struct NuMap<F: Field> {
    pub target: GradedModule<F>,
    /// Shape `dim target x dim M`.
    pub matrix: Matrix<F::Elem>,
}

pub fn nu_map<F: Field>(m: &GradedModule<F>, sigma: GroupElement) -> Result<NuMap<F>> {
    if m.side != Side::Left {
        return Err(Error::Invalid("nu_map needs a left module".into()));
    }
    let a = &m.algebra;
    let g = a.group();
    let field = a.field();
    let (ae, embedding) = a.identity_component();
    let n = m.component_module(sigma, &Arc::new(ae), &embedding)?;
    let comp = m.component(sigma);
    let coind = coinduce(a, &n)?;
    let target = coind.module.suspend_left(g.inv(sigma))?;
    let (d, nd) = (a.dim(), comp.len());
    let cols: Vec<Vec<F::Elem>> = (0..m.dim())
        .map(|j| {
            let want = g.mul(sigma, g.inv(m.deg[j]));
            let mut f = vec![field.zero(); d * nd];
            for i in (0..d).filter(|&i| a.deg(i) == want) {
                for (t, &row) in comp.iter().enumerate() {
                    f[i * nd + t] = m.action[i][(row, j)].clone();
                }
            }
            coind.coordinates(&f)
        })
        .collect();
    let matrix = Matrix::from_columns(field, target.dim(), &cols);
    Ok(NuMap { target, matrix })
}

/// The largest graded submodule with zero component in degree `σ`,
/// computed as the kernel of [`nu_map`]; each basis vector is homogeneous.
pub fn torsion_radical<F: Field>(m: &GradedModule<F>, sigma: GroupElement) -> Result<Vec<Vec<F::Elem>>> {
    let nu = nu_map(m, sigma)?;
    let field = m.algebra.field();
    let rows: Vec<usize> = (0..nu.matrix.rows()).collect();
    let mut out = Vec::new();
    for lambda in m.algebra.group().elements() {
        let cols = m.component(lambda);
        if cols.is_empty() {
            continue;
        }
        for v in linalg::kernel_basis(field, &nu.matrix.select(&rows, &cols)) {
            let mut x = vec![field.zero(); m.dim()];
            for (c, val) in cols.iter().zip(v) {
                x[*c] = val;
            }
            out.push(x);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::FiniteGroup;
    use crate::scalar::Rationals;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn group_algebra(n: usize) -> Arc<GradedAlgebra<Rationals>> {
        let q = Rationals;
        let g = FiniteGroup::cyclic(n).unwrap();
        let mut entries = Vec::new();
        for a in 0..n {
            for b in 0..n {
                entries.push((a, b, g.mul(a, b), q.one()));
            }
        }
        let mut unit = vec![q.zero(); n];
        unit[0] = q.one();
        Arc::new(GradedAlgebra::new(q, Arc::new(g), (0..n).collect(), entries, unit).unwrap())
    }

    #[test]
    fn regular_and_dual_modules_validate() {
        let a = group_algebra(3);
        for side in [Side::Left, Side::Right] {
            let m = GradedModule::regular(&a, side);
            assert!(m.validate().is_empty());
            let d = m.dual();
            assert_eq!(d.side(), side.opposite());
            assert!(d.validate().is_empty(), "{:?}", d.validate());
        }
    }

    #[test]
    fn dual_of_kz2_has_one_functional_per_degree() {
        let a = group_algebra(2);
        let d = GradedModule::regular(&a, Side::Left).dual();
        assert_eq!(d.component_dims(), vec![1, 1]);
        assert_eq!(d.degrees(), &[0, 1]);
    }

    #[test]
    fn suspension_shifts_component_dims() {
        let a = group_algebra(4);
        let m = GradedModule::regular(&a, Side::Left);
        assert_eq!(m.suspend_left(0).unwrap(), m);
        let s = m.suspend_left(1).unwrap();
        assert_eq!(s.degrees(), &[3, 0, 1, 2]);
        assert!(m.suspend_right(1).is_err());
    }

    #[test]
    fn hom_of_regular_kz2_is_one_dimensional() {
        let a = group_algebra(2);
        let m = GradedModule::regular(&a, Side::Left);
        let hom = graded_hom_basis(&m, &m).unwrap();
        assert_eq!(hom.len(), 1);
        assert!(is_module_morphism(&m, &m, &hom[0]));
    }

    #[test]
    fn iso_with_suspension_of_group_algebra() {
        let a = group_algebra(3);
        let m = GradedModule::regular(&a, Side::Left);
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let s = m.suspend_left(2).unwrap();
        assert!(matches!(
            graded_iso(&s, &m, &Budget::default(), &mut rng).unwrap(),
            IsoOutcome::Isomorphic(_)
        ));
    }

    #[test]
    fn component_dims_mismatch_is_certified() {
        let q = Rationals;
        let a = group_algebra(1);
        let one = Matrix::identity(&q, 1);
        let two = Matrix::identity(&q, 2);
        let m = GradedModule::new(Side::Left, a.clone(), vec![0], vec![one]).unwrap();
        let n = GradedModule::new(Side::Left, a, vec![0, 0], vec![two]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        assert!(matches!(
            graded_iso(&m, &n, &Budget::default(), &mut rng).unwrap(),
            IsoOutcome::NotIsomorphic(IsoObstruction::ComponentDims {
                degree: 0,
                source: 1,
                target: 2
            })
        ));
    }

    #[test]
    fn coinduction_of_kz2() {
        let a = group_algebra(2);
        let (ae, emb) = a.identity_component();
        let reg = GradedModule::regular(&a, Side::Left);
        let n = reg.component_module(0, &Arc::new(ae), &emb).unwrap();
        let c = coinduce(&a, &n).unwrap();
        assert_eq!(c.module.component_dims(), vec![1, 1]);
        assert!(c.module.validate().is_empty(), "{:?}", c.module.validate());
    }

    #[test]
    fn nu_is_a_graded_morphism_and_injective_for_group_algebras() {
        let a = group_algebra(3);
        let m = GradedModule::regular(&a, Side::Left);
        for s in 0..3 {
            let nu = nu_map(&m, s).unwrap();
            assert!(nu.target.validate().is_empty());
            assert!(is_module_morphism(&m, &nu.target, &nu.matrix));
            assert!(is_degree_preserving(&m, &nu.target, &nu.matrix));
            assert!(torsion_radical(&m, s).unwrap().is_empty());
        }
    }
}

//! Decision procedures for graded Frobenius and graded symmetric algebras,
//! with certificates that [`verify_certificate`] re-checks deterministically.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use rand::Rng;

use crate::algebra::GradedAlgebra;
use crate::error::{Error, Result};
use crate::group::GroupElement;
use crate::linalg::{self, generic_invertible, Budget, InvertibilityOutcome, LinearSystem, Matrix, Witness};
use crate::module::{
    graded_iso, is_degree_preserving, is_module_morphism, GradedModule, IsoObstruction, IsoOutcome, Side,
};
use crate::scalar::{Field, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Outcome {
    Yes,
    No,
    Inconclusive,
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Outcome::Yes => "yes",
            Outcome::No => "no",
            Outcome::Inconclusive => "inconclusive",
        })
    }
}

/// Which criterion produced a verdict.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Method {
    /// `A(σ) ≅ A*` as graded left modules.
    Iso,
    /// A non-degenerate associative form orthogonal off degree `σ`.
    Form,
    /// Left `σ`-faithfulness plus `A_σ ≅ A_e*` over `A_e`.
    Component,
    /// All three, cross-checked.
    All,
    /// `(σ)A ≅ A*` as graded right modules.
    RightIso,
    /// A functional vanishing on commutators and off degree `e`.
    Functional,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Iso => "iso",
            Method::Form => "form",
            Method::Component => "component",
            Method::All => "all",
            Method::RightIso => "right_iso",
            Method::Functional => "functional",
        })
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Method> {
        match s {
            "iso" => Ok(Method::Iso),
            "form" => Ok(Method::Form),
            "component" => Ok(Method::Component),
            "all" => Ok(Method::All),
            _ => Err(Error::Parse(format!(
                "unknown method '{s}' (iso, form, component, all)"
            ))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CertificateKind {
    /// `θ: A(σ) -> A*`, column `i` holding the coordinates of `θ(b_i)`.
    IsoMatrix,
    /// Gram matrix `B[i][j] = B(b_i, b_j)`.
    BilinearForm,
    /// A `1 x d` row `λ`.
    TraceFunctional,
}

impl fmt::Display for CertificateKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CertificateKind::IsoMatrix => "iso_matrix",
            CertificateKind::BilinearForm => "bilinear_form",
            CertificateKind::TraceFunctional => "trace_functional",
        })
    }
}

impl FromStr for CertificateKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "iso_matrix" => Ok(CertificateKind::IsoMatrix),
            "bilinear_form" => Ok(CertificateKind::BilinearForm),
            "trace_functional" => Ok(CertificateKind::TraceFunctional),
            _ => Err(Error::Parse(format!("unknown certificate kind '{s}'"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate<E> {
    pub kind: CertificateKind,
    pub sigma: GroupElement,
    pub payload: Matrix<E>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Refutation<E> {
    ComponentDims {
        degree: GroupElement,
        source: usize,
        target: usize,
    },
    /// A nonzero homogeneous element killed by the relevant component.
    Faithfulness {
        side: Side,
        degree: GroupElement,
        witness: Vec<E>,
    },
    CertifiedAbsent {
        reason: String,
    },
    /// Random search found nothing; `error_bound` bounds the chance that a
    /// witness exists.
    Probabilistic {
        error_bound: BigRational,
    },
}

impl<E> Refutation<E> {
    pub fn is_certified(&self) -> bool {
        !matches!(self, Refutation::Probabilistic { .. })
    }

    pub fn error_bound(&self) -> Option<&BigRational> {
        match self {
            Refutation::Probabilistic { error_bound } => Some(error_bound),
            _ => None,
        }
    }
}

impl<E: fmt::Display> fmt::Display for Refutation<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Refutation::ComponentDims { degree, source, target } => write!(
                f,
                "component dimensions differ in degree {degree}: {source} vs {target}"
            ),
            Refutation::Faithfulness { side, degree, witness } => {
                let w: Vec<String> = witness.iter().map(ToString::to_string).collect();
                write!(
                    f,
                    "not {side} faithful: homogeneous element of degree {degree} [{}] is annihilated",
                    w.join(" ")
                )
            }
            Refutation::CertifiedAbsent { reason } => f.write_str(reason),
            Refutation::Probabilistic { error_bound } => {
                write!(f, "no witness found by random search (error bound {error_bound})")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict<E> {
    pub sigma: GroupElement,
    pub outcome: Outcome,
    pub method: Method,
    pub certificate: Option<Certificate<E>>,
    pub refutation: Option<Refutation<E>>,
}

impl<E> Verdict<E> {
    fn yes(sigma: GroupElement, method: Method, certificate: Certificate<E>) -> Self {
        Verdict {
            sigma,
            outcome: Outcome::Yes,
            method,
            certificate: Some(certificate),
            refutation: None,
        }
    }

    fn no(sigma: GroupElement, method: Method, refutation: Refutation<E>) -> Self {
        let outcome = match refutation.error_bound() {
            Some(b) if *b > confident_error_bound() => Outcome::Inconclusive,
            _ => Outcome::No,
        };
        Verdict {
            sigma,
            outcome,
            method,
            certificate: None,
            refutation: Some(refutation),
        }
    }

    /// `true` for yes verdicts and certified refutations.
    pub fn is_certified(&self) -> bool {
        self.outcome == Outcome::Yes || self.refutation.as_ref().is_some_and(Refutation::is_certified)
    }

    pub fn error_bound(&self) -> Option<&BigRational> {
        self.refutation.as_ref().and_then(Refutation::error_bound)
    }
}

/// Random search failures with an error bound above `2^-64` are reported as
/// inconclusive rather than no.
pub fn confident_error_bound() -> BigRational {
    BigRational::new(BigInt::one(), BigInt::one() << 64)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Faithfulness<E> {
    Yes,
    No { degree: GroupElement, witness: Vec<E> },
}

/// No nonzero `a ∈ A_g` has `A_{σg^-1} a = 0`.
pub fn left_sigma_faithful<F: Field>(a: &GradedAlgebra<F>, sigma: GroupElement) -> Faithfulness<F::Elem> {
    sigma_faithful(a, sigma, Side::Left)
}

/// No nonzero `a ∈ A_g` has `a A_{g^-1σ} = 0`.
pub fn right_sigma_faithful<F: Field>(a: &GradedAlgebra<F>, sigma: GroupElement) -> Faithfulness<F::Elem> {
    sigma_faithful(a, sigma, Side::Right)
}

fn sigma_faithful<F: Field>(a: &GradedAlgebra<F>, sigma: GroupElement, side: Side) -> Faithfulness<F::Elem> {
    let g = a.group();
    let field = a.field();
    for h in a.support() {
        let idx = a.component(h);
        let others = match side {
            Side::Left => a.component(g.mul(sigma, g.inv(h))),
            Side::Right => a.component(g.mul(g.inv(h), sigma)),
        };
        // columns: a in A_h; rows: coordinates of x a (or a x) for each x
        let cols: Vec<Vec<F::Elem>> = idx
            .iter()
            .map(|&i| {
                let b = a.basis_vector(i);
                others
                    .iter()
                    .flat_map(|&x| {
                        let bx = a.basis_vector(x);
                        match side {
                            Side::Left => a.mul(&bx, &b),
                            Side::Right => a.mul(&b, &bx),
                        }
                    })
                    .collect()
            })
            .collect();
        let kernel = if others.is_empty() {
            vec![{
                let mut v = vec![field.zero(); idx.len()];
                v[0] = field.one();
                v
            }]
        } else {
            linalg::kernel_basis(field, &Matrix::from_columns(field, others.len() * a.dim(), &cols))
        };
        if let Some(v) = kernel.into_iter().next() {
            let mut witness = vec![field.zero(); a.dim()];
            for (&i, c) in idx.iter().zip(v) {
                witness[i] = c;
            }
            return Faithfulness::No { degree: h, witness };
        }
    }
    Faithfulness::Yes
}

fn iso_refutation<E>(obstruction: IsoObstruction) -> Refutation<E> {
    match obstruction {
        IsoObstruction::ComponentDims { degree, source, target } => {
            Refutation::ComponentDims { degree, source, target }
        }
        other => Refutation::CertifiedAbsent {
            reason: other.to_string(),
        },
    }
}

fn iso_method<F: Field, R: Rng + ?Sized>(
    a: &Arc<GradedAlgebra<F>>,
    sigma: GroupElement,
    budget: &Budget,
    rng: &mut R,
) -> Result<Verdict<F::Elem>> {
    let m = GradedModule::regular(a, Side::Left).suspend_left(sigma)?;
    let n = GradedModule::regular(a, Side::Right).dual();
    Ok(match graded_iso(&m, &n, budget, rng)? {
        IsoOutcome::Isomorphic(theta) => Verdict::yes(
            sigma,
            Method::Iso,
            Certificate {
                kind: CertificateKind::IsoMatrix,
                sigma,
                payload: theta,
            },
        ),
        IsoOutcome::NotIsomorphic(o) => Verdict::no(sigma, Method::Iso, iso_refutation(o)),
        IsoOutcome::ProbablyNot { error_bound } => {
            Verdict::no(sigma, Method::Iso, Refutation::Probabilistic { error_bound })
        }
    })
}

/// Right-module form of the criterion: `(σ)A ≅ A*` in graded right modules.
/// A witness `θ` gives the form `B(x, y) = θ(x)(y)`.
pub fn right_iso_criterion<F: Field, R: Rng + ?Sized>(
    a: &Arc<GradedAlgebra<F>>,
    sigma: GroupElement,
    budget: &Budget,
    rng: &mut R,
) -> Result<Verdict<F::Elem>> {
    let m = GradedModule::regular(a, Side::Right).suspend_right(sigma)?;
    let n = GradedModule::regular(a, Side::Left).dual();
    Ok(match graded_iso(&m, &n, budget, rng)? {
        IsoOutcome::Isomorphic(theta) => Verdict::yes(
            sigma,
            Method::RightIso,
            Certificate {
                kind: CertificateKind::BilinearForm,
                sigma,
                payload: theta.transpose(),
            },
        ),
        IsoOutcome::NotIsomorphic(o) => Verdict::no(sigma, Method::RightIso, iso_refutation(o)),
        IsoOutcome::ProbablyNot { error_bound } => {
            Verdict::no(sigma, Method::RightIso, Refutation::Probabilistic { error_bound })
        }
    })
}

/// Basis of the bilinear forms with `B(xy, z) = B(x, yz)` and
/// `B(A_τ, A_μ) = 0` whenever `τμ ≠ σ`, as Gram matrices.
pub fn associative_forms<F: Field>(a: &GradedAlgebra<F>, sigma: GroupElement) -> Vec<Matrix<F::Elem>> {
    let d = a.dim();
    let g = a.group();
    let field = a.field();
    let mut var = vec![usize::MAX; d * d];
    let mut positions = Vec::new();
    for i in 0..d {
        for j in 0..d {
            if g.mul(a.deg(i), a.deg(j)) == sigma {
                var[i * d + j] = positions.len();
                positions.push((i, j));
            }
        }
    }
    let mut sys = LinearSystem::new(field, positions.len());
    // associativity against a generating set implies it for all of A
    for s in a.generating_set() {
        for x in 0..d {
            for y in 0..d {
                let mut terms = Vec::new();
                for (k, c) in a.product(x, s) {
                    if var[k * d + y] != usize::MAX {
                        terms.push((var[k * d + y], c.clone()));
                    }
                }
                for (k, c) in a.product(s, y) {
                    if var[x * d + k] != usize::MAX {
                        terms.push((var[x * d + k], -c.clone()));
                    }
                }
                if !terms.is_empty() {
                    sys.add_equation(terms);
                }
            }
        }
    }
    sys.kernel_basis()
        .into_iter()
        .map(|v| {
            let mut b = Matrix::zeros(field, d, d);
            for (x, &(i, j)) in v.into_iter().zip(&positions) {
                b[(i, j)] = x;
            }
            b
        })
        .collect()
}

/// An invertible member of a span, or why there is none.
type Search<E> = std::result::Result<Witness<E>, Refutation<E>>;

fn invertible_member<F: Field, R: Rng + ?Sized>(
    field: &F,
    basis: &[Matrix<F::Elem>],
    budget: &Budget,
    rng: &mut R,
    empty_reason: &str,
) -> Result<Search<F::Elem>> {
    if basis.is_empty() {
        return Ok(Err(Refutation::CertifiedAbsent {
            reason: empty_reason.to_string(),
        }));
    }
    Ok(match generic_invertible(field, basis, budget, rng)?.outcome {
        InvertibilityOutcome::WitnessFound { coefficients, matrix } => Ok((coefficients, matrix)),
        InvertibilityOutcome::CertifiedAbsent { reason } => Err(Refutation::CertifiedAbsent {
            reason: format!("every member is degenerate: {reason}"),
        }),
        InvertibilityOutcome::ProbabilisticAbsent { error_bound } => Err(Refutation::Probabilistic { error_bound }),
    })
}

fn form_method<F: Field, R: Rng + ?Sized>(
    a: &GradedAlgebra<F>,
    sigma: GroupElement,
    budget: &Budget,
    rng: &mut R,
) -> Result<Verdict<F::Elem>> {
    if a.dim() == 0 {
        let payload = Matrix::zeros(a.field(), 0, 0);
        return Ok(Verdict::yes(
            sigma,
            Method::Form,
            Certificate {
                kind: CertificateKind::BilinearForm,
                sigma,
                payload,
            },
        ));
    }
    let forms = associative_forms(a, sigma);
    let reason = format!("no nonzero associative form is orthogonal off degree {sigma}");
    Ok(match invertible_member(a.field(), &forms, budget, rng, &reason)? {
        Ok((_, b)) => Verdict::yes(
            sigma,
            Method::Form,
            Certificate {
                kind: CertificateKind::BilinearForm,
                sigma,
                payload: b,
            },
        ),
        Err(r) => Verdict::no(sigma, Method::Form, r),
    })
}

fn component_method<F: Field, R: Rng + ?Sized>(
    a: &Arc<GradedAlgebra<F>>,
    sigma: GroupElement,
    budget: &Budget,
    rng: &mut R,
) -> Result<Verdict<F::Elem>> {
    if let Faithfulness::No { degree, witness } = left_sigma_faithful(a, sigma) {
        return Ok(Verdict::no(
            sigma,
            Method::Component,
            Refutation::Faithfulness {
                side: Side::Left,
                degree,
                witness,
            },
        ));
    }
    let field = a.field();
    let (ae, embedding) = a.identity_component();
    let ae = Arc::new(ae);
    let comp = a.component(sigma);
    let m = GradedModule::regular(a, Side::Left).component_module(sigma, &ae, &embedding)?;
    let n = GradedModule::regular(&ae, Side::Right).dual();
    let theta = match graded_iso(&m, &n, budget, rng)? {
        IsoOutcome::Isomorphic(theta) => theta,
        IsoOutcome::NotIsomorphic(o) => {
            let reason = format!("A_σ is not isomorphic to the dual of A_e: {o}");
            return Ok(Verdict::no(
                sigma,
                Method::Component,
                Refutation::CertifiedAbsent { reason },
            ));
        }
        IsoOutcome::ProbablyNot { error_bound } => {
            return Ok(Verdict::no(
                sigma,
                Method::Component,
                Refutation::Probabilistic { error_bound },
            ))
        }
    };
    // μ(s) = θ(s)(1) on A_σ, and B(x, y) = μ(xy)
    let mut mu = vec![field.zero(); a.dim()];
    for (k, &i) in comp.iter().enumerate() {
        mu[i] = linalg::dot(field, &theta.column(k), ae.unit());
    }
    let cert = Certificate {
        kind: CertificateKind::BilinearForm,
        sigma,
        payload: form_from_functional(a, &mu),
    };
    if let Verification::Reject(reason) = verify_certificate(a, &cert)? {
        return Err(Error::Inconsistency(format!(
            "form built from an A_σ ≅ A_e* witness is invalid: {reason}"
        )));
    }
    Ok(Verdict::yes(sigma, Method::Component, cert))
}

/// Gram matrix of `B(x, y) = λ(xy)`.
pub fn form_from_functional<F: Field>(a: &GradedAlgebra<F>, lambda: &[F::Elem]) -> Matrix<F::Elem> {
    let d = a.dim();
    let field = a.field();
    let mut b = Matrix::zeros(field, d, d);
    for i in 0..d {
        for j in 0..d {
            let mut s = field.zero();
            for (k, c) in a.product(i, j) {
                s = s + c.clone() * lambda[*k].clone();
            }
            b[(i, j)] = s;
        }
    }
    b
}

/// Decides whether `A` is `σ`-graded Frobenius.
///
/// With [`Method::All`] the three criteria run in turn; certified answers
/// that disagree yield [`Error::Inconsistency`]. A certified answer from any
/// criterion outranks a probabilistic one.
pub fn is_sigma_graded_frobenius<F: Field, R: Rng + ?Sized>(
    a: &Arc<GradedAlgebra<F>>,
    sigma: GroupElement,
    method: Method,
    budget: &Budget,
    rng: &mut R,
) -> Result<Verdict<F::Elem>> {
    if sigma >= a.group().order() {
        return Err(Error::Invalid(format!("{sigma} is not a group element")));
    }
    match method {
        Method::Iso => iso_method(a, sigma, budget, rng),
        Method::Form => form_method(a, sigma, budget, rng),
        Method::Component => component_method(a, sigma, budget, rng),
        Method::RightIso => right_iso_criterion(a, sigma, budget, rng),
        Method::Functional => Err(Error::Invalid(
            "the functional criterion decides graded symmetry".into(),
        )),
        Method::All => {
            let verdicts = [
                iso_method(a, sigma, budget, rng)?,
                form_method(a, sigma, budget, rng)?,
                component_method(a, sigma, budget, rng)?,
            ];
            combine(sigma, verdicts.to_vec())
        }
    }
}

fn combine<E: Clone + fmt::Display>(sigma: GroupElement, verdicts: Vec<Verdict<E>>) -> Result<Verdict<E>> {
    let yes: Vec<&Verdict<E>> = verdicts.iter().filter(|v| v.outcome == Outcome::Yes).collect();
    let certified_no = verdicts.iter().find(|v| v.outcome != Outcome::Yes && v.is_certified());
    if let (Some(y), Some(n)) = (yes.first(), certified_no) {
        return Err(Error::Inconsistency(format!(
            "at sigma {sigma}: {} says yes but {} says no ({})",
            y.method,
            n.method,
            n.refutation.as_ref().map(ToString::to_string).unwrap_or_default()
        )));
    }
    let mut chosen = if let Some(v) = yes.iter().find(|v| v.method == Method::Form).or(yes.first()) {
        (*v).clone()
    } else if let Some(n) = certified_no {
        n.clone()
    } else {
        verdicts
            .iter()
            .min_by(|x, y| x.error_bound().cmp(&y.error_bound()))
            .expect("three verdicts")
            .clone()
    };
    chosen.method = Method::All;
    Ok(chosen)
}

/// Verdict for every group element. When every verdict and every inertia
/// test is certified, the yes-set is checked to be empty or a left coset of
/// the inertia group.
pub fn scan_sigma<F: Field, R: Rng + ?Sized>(
    a: &Arc<GradedAlgebra<F>>,
    method: Method,
    budget: &Budget,
    rng: &mut R,
) -> Result<Vec<Verdict<F::Elem>>> {
    let verdicts: Vec<Verdict<F::Elem>> = a
        .group()
        .elements()
        .map(|s| is_sigma_graded_frobenius(a, s, method, budget, rng))
        .collect::<Result<_>>()?;
    let yes: Vec<GroupElement> = verdicts
        .iter()
        .filter(|v| v.outcome == Outcome::Yes)
        .map(|v| v.sigma)
        .collect();
    if yes.is_empty() || !verdicts.iter().all(Verdict::is_certified) {
        return Ok(verdicts);
    }
    let inertia = inertia_group(a, budget, rng)?;
    if inertia.undecided.is_empty() && !a.group().is_left_coset(&yes, &inertia.members) {
        return Err(Error::Inconsistency(format!(
            "graded Frobenius degrees {yes:?} are not a coset of the inertia group {:?}",
            inertia.members
        )));
    }
    Ok(verdicts)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Inertia<E> {
    /// Degrees `g` with `A(g) ≅ A`, each with an isomorphism.
    pub members: Vec<GroupElement>,
    pub witnesses: Vec<Matrix<E>>,
    /// Degrees where only random search ruled out an isomorphism.
    pub undecided: Vec<GroupElement>,
}

pub fn inertia_group<F: Field, R: Rng + ?Sized>(
    a: &Arc<GradedAlgebra<F>>,
    budget: &Budget,
    rng: &mut R,
) -> Result<Inertia<F::Elem>> {
    let reg = GradedModule::regular(a, Side::Left);
    let mut out = Inertia {
        members: Vec::new(),
        witnesses: Vec::new(),
        undecided: Vec::new(),
    };
    for g in a.group().elements() {
        match graded_iso(&reg.suspend_left(g)?, &reg, budget, rng)? {
            IsoOutcome::Isomorphic(m) => {
                out.members.push(g);
                out.witnesses.push(m);
            }
            IsoOutcome::NotIsomorphic(_) => {}
            IsoOutcome::ProbablyNot { .. } => out.undecided.push(g),
        }
    }
    if out.undecided.is_empty() && !a.group().is_subgroup(&out.members) {
        return Err(Error::Inconsistency(format!(
            "inertia set {:?} is not a subgroup",
            out.members
        )));
    }
    Ok(out)
}

/// Functionals vanishing on every commutator and on every `A_g`, `g ≠ e`.
pub fn symmetric_functionals<F: Field>(a: &GradedAlgebra<F>) -> Vec<Vec<F::Elem>> {
    let d = a.dim();
    let field = a.field();
    let e_part = a.component(a.group().neutral());
    let mut slot = vec![usize::MAX; d];
    for (n, &k) in e_part.iter().enumerate() {
        slot[k] = n;
    }
    let mut sys = LinearSystem::new(field, e_part.len());
    for i in 0..d {
        for j in i + 1..d {
            let mut terms: Vec<(usize, F::Elem)> = Vec::new();
            for (k, c) in a.product(i, j) {
                if slot[*k] != usize::MAX {
                    terms.push((slot[*k], c.clone()));
                }
            }
            for (k, c) in a.product(j, i) {
                if slot[*k] != usize::MAX {
                    terms.push((slot[*k], -c.clone()));
                }
            }
            if !terms.is_empty() {
                sys.add_equation(terms);
            }
        }
    }
    sys.kernel_basis()
        .into_iter()
        .map(|v| {
            let mut lambda = vec![field.zero(); d];
            for (x, &k) in v.into_iter().zip(&e_part) {
                lambda[k] = x;
            }
            lambda
        })
        .collect()
}

/// Decides graded symmetry by searching for a functional `λ` supported in
/// degree `e` with `λ(xy) = λ(yx)` and non-degenerate `λ(xy)`.
pub fn is_graded_symmetric<F: Field, R: Rng + ?Sized>(
    a: &GradedAlgebra<F>,
    budget: &Budget,
    rng: &mut R,
) -> Result<Verdict<F::Elem>> {
    let e = a.group().neutral();
    let field = a.field();
    if a.dim() == 0 {
        let payload = Matrix::zeros(field, 1, 0);
        return Ok(Verdict::yes(
            e,
            Method::Functional,
            Certificate {
                kind: CertificateKind::TraceFunctional,
                sigma: e,
                payload,
            },
        ));
    }
    let lambdas = symmetric_functionals(a);
    let grams: Vec<Matrix<F::Elem>> = lambdas.iter().map(|l| form_from_functional(a, l)).collect();
    let reason = "no nonzero functional vanishes on commutators and off degree e";
    Ok(match invertible_member(field, &grams, budget, rng, reason)? {
        Ok((coeffs, _)) => {
            let mut lambda = vec![field.zero(); a.dim()];
            for (l, c) in lambdas.iter().zip(&coeffs) {
                for (x, y) in lambda.iter_mut().zip(l) {
                    *x = x.clone() + c.clone() * y.clone();
                }
            }
            let payload = Matrix::from_rows(a.dim(), vec![lambda]).expect("shape");
            Verdict::yes(
                e,
                Method::Functional,
                Certificate {
                    kind: CertificateKind::TraceFunctional,
                    sigma: e,
                    payload,
                },
            )
        }
        Err(r) => Verdict::no(e, Method::Functional, r),
    })
}

/// Frobenius as an ungraded algebra.
pub fn is_frobenius<F: Field, R: Rng + ?Sized>(
    a: &GradedAlgebra<F>,
    budget: &Budget,
    rng: &mut R,
) -> Result<Verdict<F::Elem>> {
    is_sigma_graded_frobenius(&Arc::new(a.forget_grading()), 0, Method::All, budget, rng)
}

/// Symmetric as an ungraded algebra.
pub fn is_symmetric<F: Field, R: Rng + ?Sized>(
    a: &GradedAlgebra<F>,
    budget: &Budget,
    rng: &mut R,
) -> Result<Verdict<F::Elem>> {
    is_graded_symmetric(&a.forget_grading(), budget, rng)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verification {
    Accept,
    Reject(String),
}

/// Deterministic re-check of a certificate against `A`.
pub fn verify_certificate<F: Field>(a: &GradedAlgebra<F>, cert: &Certificate<F::Elem>) -> Result<Verification> {
    let d = a.dim();
    let g = a.group();
    let field = a.field();
    if cert.sigma >= g.order() {
        return Err(Error::Invalid(format!(
            "certificate degree {} is not a group element",
            cert.sigma
        )));
    }
    let p = &cert.payload;
    let reject = |s: String| Ok(Verification::Reject(s));
    match cert.kind {
        CertificateKind::BilinearForm => {
            if p.rows() != d || p.cols() != d {
                return Err(Error::Shape(format!(
                    "form must be {d}x{d}, got {}x{}",
                    p.rows(),
                    p.cols()
                )));
            }
            if let Some((i, j, k)) = form_associativity_failure(a, p) {
                return reject(format!("associativity violated at triple ({i},{j},{k})"));
            }
            for i in 0..d {
                for (j, _) in p.row_support(i) {
                    if g.mul(a.deg(i), a.deg(j)) != cert.sigma {
                        return reject(format!("graded orthogonality violated at entry ({i},{j})"));
                    }
                }
            }
            let r = linalg::rank(field, p);
            if r < d {
                return reject(format!("form is degenerate (rank {r} < {d})"));
            }
        }
        CertificateKind::TraceFunctional => {
            if p.rows() != 1 || p.cols() != d {
                return Err(Error::Shape(format!(
                    "functional must be 1x{d}, got {}x{}",
                    p.rows(),
                    p.cols()
                )));
            }
            let lambda = p.row(0);
            for (k, x) in lambda.iter().enumerate() {
                if !x.is_zero() && a.deg(k) != g.neutral() {
                    return reject(format!("functional is nonzero on b{k}, which is not of degree e"));
                }
            }
            for i in 0..d {
                for j in i + 1..d {
                    let mut s = field.zero();
                    for (k, c) in a.product(i, j) {
                        s = s + c.clone() * lambda[*k].clone();
                    }
                    for (k, c) in a.product(j, i) {
                        s = s - c.clone() * lambda[*k].clone();
                    }
                    if !s.is_zero() {
                        return reject(format!("functional does not vanish on the commutator ({i},{j})"));
                    }
                }
            }
            let r = linalg::rank(field, &form_from_functional(a, lambda));
            if r < d {
                return reject(format!("induced form is degenerate (rank {r} < {d})"));
            }
        }
        CertificateKind::IsoMatrix => {
            if p.rows() != d || p.cols() != d {
                return Err(Error::Shape(format!(
                    "iso matrix must be {d}x{d}, got {}x{}",
                    p.rows(),
                    p.cols()
                )));
            }
            let a = Arc::new(a.clone());
            let m = GradedModule::regular(&a, Side::Left).suspend_left(cert.sigma)?;
            let n = GradedModule::regular(&a, Side::Right).dual();
            if !is_degree_preserving(&m, &n, p) {
                return reject("matrix does not preserve degrees".into());
            }
            if let Some(i) =
                (0..d).find(|&i| p.mul(field, m.action(i)).expect("shape") != n.action(i).mul(field, p).expect("shape"))
            {
                return reject(format!("matrix does not commute with the action of b{i}"));
            }
            debug_assert!(is_module_morphism(&m, &n, p));
            let r = linalg::rank(field, p);
            if r < d {
                return reject(format!("matrix is singular (rank {r} < {d})"));
            }
        }
    }
    Ok(Verification::Accept)
}

fn form_associativity_failure<F: Field>(a: &GradedAlgebra<F>, b: &Matrix<F::Elem>) -> Option<(usize, usize, usize)> {
    let d = a.dim();
    let field = a.field();
    for i in 0..d {
        for j in 0..d {
            for k in 0..d {
                let mut s = field.zero();
                for (l, c) in a.product(i, j) {
                    s = s + c.clone() * b[(*l, k)].clone();
                }
                for (l, c) in a.product(j, k) {
                    s = s - c.clone() * b[(i, *l)].clone();
                }
                if !s.is_zero() {
                    return Some((i, j, k));
                }
            }
        }
    }
    None
}

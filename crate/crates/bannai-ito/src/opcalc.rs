//! Compositional linear operators on the module `XPoly (x) Cl(n)`,
//! bracket combinators, and extensional equality testing on a graded
//! basis with witness reporting.
//!
//! An operator is a lazy composition tree over primitive actions;
//! `apply` evaluates it exactly with no truncation.  Equality of two
//! operators up to degree D is certified by applying both sides to
//! every basis element `x^alpha e_T` with `|alpha| <= D`; the first
//! failing element in the fixed basis order is returned as a witness,
//! so concurrent evaluation is deterministic.

use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use rayon::prelude::*;

use crate::clifford::{CliffordElement, CliffordPoly};
use crate::dunkl::DunklKind;
use crate::exactring::{Monomial, ParamPoly, Rational, XPoly};
use crate::hyperoct::{GroupAlgebraElement, SignedPerm};

#[derive(Clone, Debug)]
enum Node {
    Identity,
    Zero,
    MulPoly(XPoly),
    MulElement(CliffordElement),
    Perm(SignedPerm),
    GroupAlgebra(GroupAlgebraElement),
    Partial(usize),
    Dunkl(DunklKind, usize, MonomialCache),
    Scale(ParamPoly, Operator),
    ScaleRat(Rational, Operator),
    Sum(Vec<Operator>),
    /// Composition in writing order: the last entry acts first.
    Compose(Vec<Operator>),
}

/// Per-node memo of Dunkl images of monomials.  Operator trees are
/// shared through `Arc`, so one cache serves every basis element an
/// identity is evaluated on; a deep copy starts empty.
#[derive(Default)]
struct MonomialCache(RwLock<HashMap<Monomial, Arc<XPoly>>>);

impl MonomialCache {
    fn get_or_compute<F: FnOnce() -> XPoly>(&self, key: &Monomial, compute: F) -> Arc<XPoly> {
        if let Some(hit) = self.0.read().unwrap().get(key) {
            return Arc::clone(hit);
        }
        let value = Arc::new(compute());
        let mut map = self.0.write().unwrap();
        Arc::clone(map.entry(key.clone()).or_insert(value))
    }
}

impl Clone for MonomialCache {
    fn clone(&self) -> Self {
        MonomialCache::default()
    }
}

impl std::fmt::Debug for MonomialCache {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "MonomialCache({} entries)", self.0.read().unwrap().len())
    }
}

/// A linear operator on [`CliffordPoly`], cheaply clonable.
#[derive(Clone, Debug)]
pub struct Operator {
    node: Arc<Node>,
}

impl Operator {
    fn new(node: Node) -> Self {
        Operator {
            node: Arc::new(node),
        }
    }

    pub fn identity() -> Self {
        Self::new(Node::Identity)
    }

    pub fn zero() -> Self {
        Self::new(Node::Zero)
    }

    /// Multiplication by a polynomial.
    pub fn mul_poly(p: XPoly) -> Self {
        Self::new(Node::MulPoly(p))
    }

    /// Left multiplication by a Clifford element.
    pub fn mul_element(e: CliffordElement) -> Self {
        Self::new(Node::MulElement(e))
    }

    /// Substitution action of a signed permutation.
    pub fn perm(g: SignedPerm) -> Self {
        Self::new(Node::Perm(g))
    }

    /// Action of a group-algebra element.
    pub fn group_algebra(u: GroupAlgebraElement) -> Self {
        Self::new(Node::GroupAlgebra(u))
    }

    /// d/dx_i.
    pub fn partial(i: usize) -> Self {
        Self::new(Node::Partial(i))
    }

    /// The Dunkl operator D_i of the given family.
    pub fn dunkl(kind: DunklKind, i: usize) -> Self {
        Self::new(Node::Dunkl(kind, i, MonomialCache::default()))
    }

    pub fn scale(c: ParamPoly, op: Operator) -> Self {
        Self::new(Node::Scale(c, op))
    }

    pub fn scale_rat(c: Rational, op: Operator) -> Self {
        Self::new(Node::ScaleRat(c, op))
    }

    pub fn sum(ops: Vec<Operator>) -> Self {
        Self::new(Node::Sum(ops))
    }

    /// Product in writing order: `compose([f, g])` applies g first.
    pub fn compose(ops: Vec<Operator>) -> Self {
        Self::new(Node::Compose(ops))
    }

    /// `[x, y] = xy - yx`.
    pub fn commutator(x: &Operator, y: &Operator) -> Self {
        let neg = Self::negate(Self::compose(vec![y.clone(), x.clone()]));
        Self::sum(vec![Self::compose(vec![x.clone(), y.clone()]), neg])
    }

    /// `{x, y} = xy + yx`.
    pub fn anticommutator(x: &Operator, y: &Operator) -> Self {
        Self::sum(vec![
            Self::compose(vec![x.clone(), y.clone()]),
            Self::compose(vec![y.clone(), x.clone()]),
        ])
    }

    pub fn negate(op: Operator) -> Self {
        Self::scale_rat(Rational::from_integer((-1).into()), op)
    }

    pub fn squared(&self) -> Self {
        Self::compose(vec![self.clone(), self.clone()])
    }

    /// Exact image of a module element.
    pub fn apply(&self, f: &CliffordPoly) -> CliffordPoly {
        match &*self.node {
            Node::Identity => f.clone(),
            Node::Zero => CliffordPoly::zero(f.n(), f.nparams()),
            Node::MulPoly(p) => f.map_components(|q| p * q),
            Node::MulElement(e) => f.mul_element_left(e),
            Node::Perm(g) => f.act(g),
            Node::GroupAlgebra(u) => {
                let mut out = CliffordPoly::zero(f.n(), f.nparams());
                for (g, c) in u.terms() {
                    out = &out + &f.act(g).scale_param(c);
                }
                out
            }
            Node::Partial(i) => f.map_components(|q| q.partial(*i)),
            Node::Dunkl(kind, i, cache) => f.map_components(|q| {
                let mut out = XPoly::zero(q.nvars(), q.nparams());
                for (m, c) in q.terms() {
                    let image = cache.get_or_compute(m, || {
                        kind.apply(
                            *i,
                            &XPoly::monomial(q.nvars(), m.clone(), ParamPoly::one(q.nparams())),
                        )
                    });
                    out = &out + &image.scale_param(c);
                }
                out
            }),
            Node::Scale(c, op) => op.apply(f).scale_param(c),
            Node::ScaleRat(c, op) => op.apply(f).scale(c),
            Node::Sum(ops) => {
                let mut out = CliffordPoly::zero(f.n(), f.nparams());
                for op in ops {
                    out = &out + &op.apply(f);
                }
                out
            }
            Node::Compose(ops) => {
                let mut acc = f.clone();
                for op in ops.iter().rev() {
                    acc = op.apply(&acc);
                }
                acc
            }
        }
    }

    /// Apply to a scalar polynomial, panicking if the image leaves the
    /// scalar component.
    pub fn apply_scalar(&self, f: &XPoly) -> XPoly {
        let image = self.apply(&CliffordPoly::scalar(f.clone()));
        let mut out = XPoly::zero(f.nvars(), f.nparams());
        for (mask, p) in image.components() {
            assert_eq!(*mask, 0, "image has a non-scalar Clifford component");
            out = &out + p;
        }
        out
    }

    /// Rebuild the tree with parameters partially evaluated.
    pub fn substitute_params(&self, assignment: &[Option<Rational>]) -> Operator {
        let node = match &*self.node {
            Node::Identity => Node::Identity,
            Node::Zero => Node::Zero,
            Node::MulPoly(p) => Node::MulPoly(p.substitute_params(assignment)),
            Node::MulElement(e) => Node::MulElement(e.substitute_params(assignment)),
            Node::Perm(g) => Node::Perm(g.clone()),
            Node::GroupAlgebra(u) => Node::GroupAlgebra(u.substitute_params(assignment)),
            Node::Partial(i) => Node::Partial(*i),
            Node::Dunkl(kind, i, _) => Node::Dunkl(
                kind.substitute_params(assignment),
                *i,
                MonomialCache::default(),
            ),
            Node::Scale(c, op) => {
                Node::Scale(c.substitute(assignment), op.substitute_params(assignment))
            }
            Node::ScaleRat(c, op) => Node::ScaleRat(c.clone(), op.substitute_params(assignment)),
            Node::Sum(ops) => Node::Sum(
                ops.iter()
                    .map(|o| o.substitute_params(assignment))
                    .collect(),
            ),
            Node::Compose(ops) => Node::Compose(
                ops.iter()
                    .map(|o| o.substitute_params(assignment))
                    .collect(),
            ),
        };
        Operator::new(node)
    }
}

/// The truncated module operators are certified on.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct ModuleShape {
    pub nvars: usize,
    pub nparams: usize,
    /// When false only the scalar blade is enumerated.
    pub clifford: bool,
}

impl ModuleShape {
    pub fn scalar(nvars: usize, nparams: usize) -> Self {
        ModuleShape {
            nvars,
            nparams,
            clifford: false,
        }
    }

    pub fn with_clifford(nvars: usize, nparams: usize) -> Self {
        ModuleShape {
            nvars,
            nparams,
            clifford: true,
        }
    }

    /// Basis elements of degree <= d, ordered by total degree, then
    /// lexicographically by exponents, then scalar blade before higher
    /// blades (by grade, then mask).
    pub fn basis(&self, degree: usize) -> Vec<BasisElement> {
        let mut blades: Vec<u8> = if self.clifford {
            (0u8..(1 << self.nvars)).collect()
        } else {
            vec![0]
        };
        blades.sort_by_key(|m| (m.count_ones(), *m));
        let mut out = Vec::new();
        for d in 0..=degree {
            for exps in monomials_of_degree(self.nvars, d) {
                for &blade in &blades {
                    out.push(BasisElement {
                        exponents: exps.clone(),
                        blade,
                    });
                }
            }
        }
        out
    }
}

fn monomials_of_degree(nvars: usize, d: usize) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut current = vec![0u16; nvars];
    fill(&mut out, &mut current, 0, d);
    out.sort();
    return out;

    fn fill(out: &mut Vec<Monomial>, current: &mut Vec<u16>, i: usize, remaining: usize) {
        if i + 1 == current.len() {
            current[i] = remaining as u16;
            out.push(Monomial::from_exponents(current));
            return;
        }
        for e in 0..=remaining {
            current[i] = e as u16;
            fill(out, current, i + 1, remaining - e);
        }
        current[i] = 0;
    }
}

/// One element `x^alpha e_T` of the graded module basis.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BasisElement {
    pub exponents: Monomial,
    pub blade: u8,
}

impl BasisElement {
    pub fn to_poly(&self, shape: &ModuleShape) -> CliffordPoly {
        CliffordPoly::term(
            shape.nvars,
            self.blade,
            XPoly::monomial(
                shape.nvars,
                self.exponents.clone(),
                ParamPoly::one(shape.nparams),
            ),
        )
    }

    pub fn degree(&self) -> u32 {
        self.exponents.degree()
    }
}

/// Outcome of an extensional comparison up to a degree bound.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum CertOutcome {
    Equal,
    Counterexample {
        basis: BasisElement,
        lhs_image: CliffordPoly,
        rhs_image: CliffordPoly,
    },
}

/// Equality certificate: either both operators agree on every basis
/// element of degree <= `degree_bound`, or the first failing element in
/// basis order together with both images.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct EqualityCertificate {
    pub degree_bound: usize,
    pub shape: ModuleShape,
    pub outcome: CertOutcome,
}

impl EqualityCertificate {
    pub fn is_equal(&self) -> bool {
        matches!(self.outcome, CertOutcome::Equal)
    }

    /// Re-evaluate a counterexample; true when the witness still
    /// separates the two operators.
    pub fn witness_recheck(&self, lhs: &Operator, rhs: &Operator) -> bool {
        match &self.outcome {
            CertOutcome::Equal => false,
            CertOutcome::Counterexample {
                basis,
                lhs_image,
                rhs_image,
            } => {
                let f = basis.to_poly(&self.shape);
                let l = lhs.apply(&f);
                let r = rhs.apply(&f);
                l != r && l == *lhs_image && r == *rhs_image
            }
        }
    }
}

/// Certify `lhs = rhs` on the degree-truncated module.
///
/// Both sides are linear, so agreement on the basis certifies equality
/// on the whole degree <= D subspace.  Evaluation fans out across basis
/// elements; the reported witness is the minimal failing element in
/// basis order regardless of thread schedule.
pub fn operators_equal(
    lhs: &Operator,
    rhs: &Operator,
    degree: usize,
    shape: &ModuleShape,
) -> EqualityCertificate {
    let basis = shape.basis(degree);
    let failure = basis
        .par_iter()
        .enumerate()
        .filter_map(|(idx, b)| {
            let f = b.to_poly(shape);
            let l = lhs.apply(&f);
            let r = rhs.apply(&f);
            if l == r {
                None
            } else {
                Some((idx, b.clone(), l, r))
            }
        })
        .min_by_key(|(idx, ..)| *idx);
    let outcome = match failure {
        None => CertOutcome::Equal,
        Some((_, basis, lhs_image, rhs_image)) => CertOutcome::Counterexample {
            basis,
            lhs_image,
            rhs_image,
        },
    };
    EqualityCertificate {
        degree_bound: degree,
        shape: *shape,
        outcome,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clifford::{w_ij, z_i};
    use crate::dunkl::{d_op, x_op};
    use crate::exactring::rat;
    use std::ops::Neg;

    fn shape() -> ModuleShape {
        ModuleShape::scalar(3, 2)
    }

    fn x(i: usize) -> XPoly {
        XPoly::var(3, 2, i)
    }

    #[test]
    fn basis_count_matches_desk_scale() {
        // 84 scalar monomials at D = 6; 672 with the Clifford factor
        assert_eq!(shape().basis(6).len(), 84);
        assert_eq!(ModuleShape::with_clifford(3, 2).basis(6).len(), 672);
    }

    #[test]
    fn basis_order_is_graded_then_lex_then_blade() {
        let b = ModuleShape::with_clifford(3, 2).basis(1);
        assert_eq!(b[0].exponents, Monomial::constant(3));
        assert_eq!(b[0].blade, 0);
        assert_eq!(b[1].blade, 1);
        // first degree-1 monomial is x3 under ascending lex on exponents
        assert_eq!(b[8].exponents, Monomial::from_exponents(&[0, 0, 1]));
    }

    #[test]
    fn identity_fixes_module_elements() {
        let f = CliffordPoly::term(3, 0b010, x(0));
        assert_eq!(Operator::identity().apply(&f), f);
    }

    #[test]
    fn self_commutator_vanishes() {
        let kind = DunklKind::b_symbolic();
        let d1 = d_op(&kind, 0);
        let c = Operator::commutator(&d1, &d1);
        assert!(operators_equal(&c, &Operator::zero(), 4, &shape()).is_equal());
    }

    #[test]
    fn reflection_dunkl_anticommute() {
        let kind = DunklKind::b_symbolic();
        let r1 = Operator::perm(SignedPerm::reflection(3, 0));
        let a = Operator::anticommutator(&r1, &d_op(&kind, 0));
        assert!(operators_equal(&a, &Operator::zero(), 5, &shape()).is_equal());
        // and [R_1, D_2] = 0
        let c = Operator::commutator(&r1, &d_op(&kind, 1));
        assert!(operators_equal(&c, &Operator::zero(), 5, &shape()).is_equal());
    }

    #[test]
    fn composed_involution_is_identity() {
        let r1 = Operator::perm(SignedPerm::reflection(3, 0));
        let rr = Operator::compose(vec![r1.clone(), r1]);
        assert!(operators_equal(&rr, &Operator::identity(), 4, &shape()).is_equal());
    }

    #[test]
    fn multiplication_after_dunkl_annihilates_constants() {
        let kind = DunklKind::b_symbolic();
        let op = Operator::compose(vec![x_op(3, 2, 0), d_op(&kind, 0)]);
        assert!(op.apply_scalar(&XPoly::one(3, 2)).is_zero());
    }

    #[test]
    fn distinct_operators_yield_minimal_witness() {
        let kind = DunklKind::b_symbolic();
        let cert = operators_equal(&d_op(&kind, 0), &d_op(&kind, 1), 3, &shape());
        match &cert.outcome {
            CertOutcome::Counterexample { basis, .. } => {
                // first separating monomial in basis order is x3... no:
                // D_1 and D_2 agree on 1, x3; first failure is x2
                assert_eq!(basis.exponents, Monomial::from_exponents(&[0, 1, 0]));
                assert!(cert.witness_recheck(&d_op(&kind, 0), &d_op(&kind, 1)));
            }
            CertOutcome::Equal => panic!("operators must differ"),
        }
    }

    #[test]
    fn witness_matches_serial_scan() {
        let kind = DunklKind::b_symbolic();
        let lhs = d_op(&kind, 0);
        let rhs = d_op(&kind, 2);
        let cert = operators_equal(&lhs, &rhs, 3, &shape());
        let sh = shape();
        let serial = sh.basis(3).into_iter().find(|b| {
            let f = b.to_poly(&sh);
            lhs.apply(&f) != rhs.apply(&f)
        });
        match (&cert.outcome, serial) {
            (CertOutcome::Counterexample { basis, .. }, Some(expect)) => {
                assert_eq!(*basis, expect);
            }
            other => panic!("expected counterexample, got {other:?}"),
        }
    }

    #[test]
    fn linearity_of_apply() {
        let kind = DunklKind::b_symbolic();
        let op = Operator::compose(vec![x_op(3, 2, 1), d_op(&kind, 0)]);
        let f = CliffordPoly::scalar(&(&x(0) * &x(0)) + &x(1));
        let g = CliffordPoly::scalar(&x(2) * &x(0));
        let sum = op.apply(&(&f + &g));
        assert_eq!(sum, &op.apply(&f) + &op.apply(&g));
        let c = ParamPoly::param(2, 0);
        assert_eq!(op.apply(&f.scale_param(&c)), op.apply(&f).scale_param(&c));
    }

    #[test]
    fn substitution_commutes_with_apply() {
        let kind = DunklKind::b_symbolic();
        let op = Operator::commutator(&d_op(&kind, 0), &x_op(3, 2, 0));
        let assignment = [Some(rat(0, 1)), Some(rat(1, 2))];
        let f = CliffordPoly::scalar(&x(0) * &x(1));
        assert_eq!(
            op.substitute_params(&assignment).apply(&f),
            op.apply(&f).substitute_params(&assignment)
        );
    }

    #[test]
    fn z_and_w_examples() {
        let one = CliffordPoly::scalar(XPoly::one(3, 2));
        let e1 = CliffordPoly::term(3, 0b001, XPoly::one(3, 2));
        let z1 = z_i(3, 2, 0);
        assert_eq!(z1.apply(&one), e1);
        // Z_1 x_1 = -x_1 e_1
        let x1e1 = CliffordPoly::term(3, 0b001, x(0));
        assert_eq!(z1.apply(&CliffordPoly::scalar(x(0))), (&x1e1).neg());

        let w12 = w_ij(3, 2, 0, 1);
        assert_eq!(w12.apply(&one), e1);
        // W_12 x_1 = -x_2 e_2
        let x2e2 = CliffordPoly::term(3, 0b010, x(1));
        assert_eq!(w12.apply(&CliffordPoly::scalar(x(0))), (&x2e2).neg());
    }
}

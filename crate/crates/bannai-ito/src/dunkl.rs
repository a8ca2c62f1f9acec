//! Dunkl operators of type B_n and Z_2^n, the commutator fields
//! S_ij = [D_i, x_j], the angular momenta M_ij = x_i D_j - x_j D_i,
//! and the Euler operator.
//!
//! Operators are implemented as exact action procedures, not as
//! normal-ordered symbol expressions: identities are certified
//! extensionally on the graded module.  Every divided difference is an
//! exact division — the numerators (1 - R_i)f, (1 - pi_ij)f and
//! (1 - R_iR_j pi_ij)f are always divisible by their linear factors, so
//! a division failure aborts instead of truncating.

use crate::exactring::{rat, LinearDivisor, ParamPoly, Rational, XPoly};
use crate::hyperoct::{
    ga_reflection, ga_transposition, reflection_product, GroupAlgebraElement, SignedPerm,
};
use crate::opcalc::Operator;

/// Which Dunkl family an operator belongs to, with its coefficients.
///
/// Coefficients are parameter polynomials so that specializations such
/// as `a = 0` stay inside the type.  The uniform specialization
/// `mu_1 = ... = mu_n = b` of the Z_2^n family coincides with the B_n
/// family at `a = 0`.
#[derive(Clone, PartialEq, Debug)]
pub enum DunklKind {
    /// Type B_n with reflection coefficient `b` and transposition
    /// coefficient `a`.
    BWeyl { a: ParamPoly, b: ParamPoly },
    /// Type Z_2^n with one coefficient per variable.
    Z2 { mu: Vec<ParamPoly> },
}

impl DunklKind {
    /// B_n operators over the two-parameter ring Q[a, b].
    pub fn b_symbolic() -> Self {
        DunklKind::BWeyl {
            a: ParamPoly::param(2, 0),
            b: ParamPoly::param(2, 1),
        }
    }

    /// Z_2^n operators over Q[mu_1..mu_n].
    pub fn z2_symbolic(n: usize) -> Self {
        DunklKind::Z2 {
            mu: (0..n).map(|i| ParamPoly::param(n, i)).collect(),
        }
    }

    pub fn nparams(&self) -> usize {
        match self {
            DunklKind::BWeyl { a, .. } => a.nparams(),
            DunklKind::Z2 { mu } => mu[0].nparams(),
        }
    }

    pub fn substitute_params(&self, assignment: &[Option<Rational>]) -> Self {
        match self {
            DunklKind::BWeyl { a, b } => DunklKind::BWeyl {
                a: a.substitute(assignment),
                b: b.substitute(assignment),
            },
            DunklKind::Z2 { mu } => DunklKind::Z2 {
                mu: mu.iter().map(|m| m.substitute(assignment)).collect(),
            },
        }
    }

    /// Exact action of D_i on a polynomial.  Lowers total degree by one
    /// on homogeneous input (or yields zero).
    pub fn apply(&self, i: usize, f: &XPoly) -> XPoly {
        let n = f.nvars();
        assert!(i < n);
        let mut out = f.partial(i);
        match self {
            DunklKind::BWeyl { a, b } => {
                if !b.is_zero() {
                    out = &out + &reflection_term(f, i).scale_param(b);
                }
                if !a.is_zero() {
                    let mut sum = XPoly::zero(n, f.nparams());
                    for j in 0..n {
                        if j == i {
                            continue;
                        }
                        sum = &sum + &transposition_terms(f, i, j);
                    }
                    out = &out + &sum.scale_param(a);
                }
            }
            DunklKind::Z2 { mu } => {
                if !mu[i].is_zero() {
                    out = &out + &reflection_term(f, i).scale_param(&mu[i]);
                }
            }
        }
        out
    }
}

/// `(1 - R_i) f / x_i`.
fn reflection_term(f: &XPoly, i: usize) -> XPoly {
    let ri = SignedPerm::reflection(f.nvars(), i);
    (f - &ri.act(f))
        .divide_exact(LinearDivisor::Var(i))
        .expect("(1 - R_i)f is divisible by x_i")
}

/// `(1 - pi_ij) f / (x_i - x_j) + (1 - R_iR_j pi_ij) f / (x_i + x_j)`.
fn transposition_terms(f: &XPoly, i: usize, j: usize) -> XPoly {
    let n = f.nvars();
    let pi = SignedPerm::transposition(n, i, j);
    let diff = (f - &pi.act(f))
        .divide_exact(LinearDivisor::Diff(i, j))
        .expect("(1 - pi_ij)f is divisible by x_i - x_j");
    let rr_pi = reflection_product(n, &[i, j]).compose(&pi);
    let sum = (f - &rr_pi.act(f))
        .divide_exact(LinearDivisor::Sum(i, j))
        .expect("(1 - R_iR_j pi_ij)f is divisible by x_i + x_j");
    &diff + &sum
}

/// Closed form of `S_ij = [D_i, x_j]` in the group algebra.
///
/// For the B family (any i, j):
///
/// * `S_ii = 1 + a sum_{k != i} (1 + R_iR_k) pi_ik + 2b R_i`
/// * `S_ij = -a (1 - R_iR_j) pi_ij` for i != j,
///
/// and for the Z_2^n family `S_ij = delta_ij (1 + 2 mu_i R_i)`.
pub fn s_ij(kind: &DunklKind, n: usize, i: usize, j: usize) -> GroupAlgebraElement {
    assert!(i < n && j < n);
    let np = kind.nparams();
    match kind {
        DunklKind::BWeyl { a, b } => {
            if i == j {
                let mut out = GroupAlgebraElement::identity(n, np);
                for k in 0..n {
                    if k == i {
                        continue;
                    }
                    let pi = ga_transposition(n, np, i, k);
                    let rr_pi = GroupAlgebraElement::from_perm(
                        reflection_product(n, &[i, k]).compose(&SignedPerm::transposition(n, i, k)),
                        np,
                    );
                    out = &out + &(&pi + &rr_pi).scale_param(a);
                }
                &out + &ga_reflection(n, np, i).scale_param(&b.scale(&rat(2, 1)))
            } else {
                let pi = ga_transposition(n, np, i, j);
                let rr_pi = GroupAlgebraElement::from_perm(
                    reflection_product(n, &[i, j]).compose(&SignedPerm::transposition(n, i, j)),
                    np,
                );
                (&pi - &rr_pi).scale_param(a).scale(&rat(-1, 1))
            }
        }
        DunklKind::Z2 { mu } => {
            if i == j {
                let one = GroupAlgebraElement::identity(n, np);
                &one + &ga_reflection(n, np, i).scale_param(&mu[i].scale(&rat(2, 1)))
            } else {
                GroupAlgebraElement::zero(n, np)
            }
        }
    }
}

/// Multiplication by x_i as an operator.
pub fn x_op(n: usize, nparams: usize, i: usize) -> Operator {
    Operator::mul_poly(XPoly::var(n, nparams, i))
}

/// The Dunkl operator D_i as an operator node.
pub fn d_op(kind: &DunklKind, i: usize) -> Operator {
    Operator::dunkl(kind.clone(), i)
}

/// Dunkl angular momentum `M_ij = x_i D_j - x_j D_i`; `M_ij = -M_ji`
/// and `M_ii = 0`.
pub fn m_ij(kind: &DunklKind, n: usize, i: usize, j: usize) -> Operator {
    assert!(i != j, "angular momentum needs two distinct indices");
    let np = kind.nparams();
    Operator::sum(vec![
        Operator::compose(vec![x_op(n, np, i), d_op(kind, j)]),
        Operator::scale_rat(
            rat(-1, 1),
            Operator::compose(vec![x_op(n, np, j), d_op(kind, i)]),
        ),
    ])
}

/// The Euler operator `A_0 = (1/2) sum_i {x_i, D_i}`.
pub fn euler(kind: &DunklKind, n: usize) -> Operator {
    let np = kind.nparams();
    let terms = (0..n)
        .map(|i| Operator::anticommutator(&x_op(n, np, i), &d_op(kind, i)))
        .collect();
    Operator::scale_rat(rat(1, 2), Operator::sum(terms))
}

/// The explicit degree-counting form `sum_i x_i d/dx_i + 3(2a + b + 1/2)`
/// of the Euler operator for the B_3 family.
pub fn euler_explicit_b3(kind: &DunklKind) -> Operator {
    let DunklKind::BWeyl { a, b } = kind else {
        panic!("explicit Euler form is specific to the B family");
    };
    let n = 3;
    let np = kind.nparams();
    let mut terms: Vec<Operator> = (0..n)
        .map(|i| Operator::compose(vec![x_op(n, np, i), Operator::partial(i)]))
        .collect();
    let half = ParamPoly::constant(np, rat(1, 2));
    let shift = &(&a.scale(&rat(2, 1)) + b) + &half;
    terms.push(Operator::scale(
        shift.scale(&rat(3, 1)),
        Operator::identity(),
    ));
    Operator::sum(terms)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactring::Monomial;
    use crate::opcalc::{operators_equal, ModuleShape};
    use proptest::prelude::*;

    fn x(i: usize) -> XPoly {
        XPoly::var(3, 2, i)
    }

    fn shape() -> ModuleShape {
        ModuleShape::scalar(3, 2)
    }

    #[test]
    fn dunkl_annihilates_constants() {
        let kind = DunklKind::b_symbolic();
        assert!(kind.apply(0, &XPoly::one(3, 2)).is_zero());
    }

    #[test]
    fn dunkl_on_x1_matches_s11_on_constants() {
        // D_1 x_1 = (1 + 4a + 2b) * 1
        let kind = DunklKind::b_symbolic();
        let got = kind.apply(0, &x(0));
        let a = ParamPoly::param(2, 0);
        let b = ParamPoly::param(2, 1);
        let expected = &(&ParamPoly::one(2) + &a.scale(&rat(4, 1))) + &b.scale(&rat(2, 1));
        assert_eq!(got, XPoly::from_coeff(3, expected));
    }

    #[test]
    fn dunkl_lowers_degree_by_one() {
        let kind = DunklKind::b_symbolic();
        let f = &(&x(0) * &x(0)) * &x(1); // homogeneous, degree 3
        let g = kind.apply(1, &f);
        assert_eq!(g.degree(), Some(2));
    }

    #[test]
    fn commuting_set_low_degree() {
        let kind = DunklKind::b_symbolic();
        for (i, j) in [(0, 1), (0, 2), (1, 2)] {
            let c = Operator::commutator(&d_op(&kind, i), &d_op(&kind, j));
            let cert = operators_equal(&c, &Operator::zero(), 4, &shape());
            assert!(cert.is_equal(), "[D{},D{}] != 0: {:?}", i + 1, j + 1, cert);
        }
    }

    #[test]
    fn commutator_with_coordinates_matches_closed_form() {
        let kind = DunklKind::b_symbolic();
        for i in 0..3 {
            for j in 0..3 {
                let lhs = Operator::commutator(&d_op(&kind, i), &x_op(3, 2, j));
                let rhs = Operator::group_algebra(s_ij(&kind, 3, i, j));
                let cert = operators_equal(&lhs, &rhs, 4, &shape());
                assert!(cert.is_equal(), "S_{}{} mismatch", i + 1, j + 1);
            }
        }
    }

    #[test]
    fn s12_acts_as_minus_2a_swap() {
        let kind = DunklKind::b_symbolic();
        let s12 = s_ij(&kind, 3, 0, 1);
        let a = ParamPoly::param(2, 0);
        assert_eq!(s12.act(&x(0)), x(1).scale_param(&a.scale(&rat(-2, 1))));
        // S_11 acts on constants as 1 + 4a + 2b
        let s11 = s_ij(&kind, 3, 0, 0);
        let b = ParamPoly::param(2, 1);
        let c = &(&ParamPoly::one(2) + &a.scale(&rat(4, 1))) + &b.scale(&rat(2, 1));
        assert_eq!(s11.act(&XPoly::one(3, 2)), XPoly::from_coeff(3, c));
    }

    #[test]
    fn s_is_symmetric_as_operators() {
        let kind = DunklKind::b_symbolic();
        for (i, j) in [(0, 1), (0, 2), (1, 2)] {
            assert_eq!(s_ij(&kind, 3, i, j), s_ij(&kind, 3, j, i));
        }
    }

    #[test]
    fn angular_momentum_basics() {
        let kind = DunklKind::b_symbolic();
        let m12 = m_ij(&kind, 3, 0, 1);
        assert!(m12.apply_scalar(&XPoly::one(3, 2)).is_zero());
        // M_12 x_1 = -(1 + 4a + 2b) x_2
        let a = ParamPoly::param(2, 0);
        let b = ParamPoly::param(2, 1);
        let c = &(&ParamPoly::one(2) + &a.scale(&rat(4, 1))) + &b.scale(&rat(2, 1));
        assert_eq!(
            m12.apply_scalar(&x(0)),
            x(1).scale_param(&c).scale(&rat(-1, 1))
        );
        // antisymmetry
        let m21 = m_ij(&kind, 3, 1, 0);
        let cert = operators_equal(&m12, &Operator::scale_rat(rat(-1, 1), m21), 3, &shape());
        assert!(cert.is_equal());
    }

    #[test]
    fn angular_momentum_commutators_close_on_s_fields() {
        // [M_ij, M_kl] = M_il S_jk + M_jk S_il - M_ik S_lj - M_jl S_ik,
        // in both operator orderings, with M_ii = 0
        let kind = DunklKind::b_symbolic();
        let m = |i: usize, j: usize| {
            if i == j {
                Operator::zero()
            } else {
                m_ij(&kind, 3, i, j)
            }
        };
        let s = |i: usize, j: usize| Operator::group_algebra(s_ij(&kind, 3, i, j));
        for (i, j, k, l) in [(0, 1, 1, 2), (0, 1, 0, 2), (1, 2, 0, 2)] {
            let lhs = Operator::commutator(&m(i, j), &m(k, l));
            let pair = |x: Operator, y: Operator, m_first: bool| {
                if m_first {
                    Operator::compose(vec![x, y])
                } else {
                    Operator::compose(vec![y, x])
                }
            };
            for m_first in [true, false] {
                let rhs = Operator::sum(vec![
                    pair(m(i, l), s(j, k), m_first),
                    pair(m(j, k), s(i, l), m_first),
                    Operator::negate(pair(m(i, k), s(l, j), m_first)),
                    Operator::negate(pair(m(j, l), s(i, k), m_first)),
                ]);
                let cert = operators_equal(&lhs, &rhs, 6, &shape());
                assert!(
                    cert.is_equal(),
                    "[M{}{}, M{}{}] closure failed (m_first = {m_first})",
                    i + 1,
                    j + 1,
                    k + 1,
                    l + 1
                );
            }
        }
    }

    #[test]
    fn euler_matches_explicit_form_and_counts_degree() {
        let kind = DunklKind::b_symbolic();
        let a0 = euler(&kind, 3);
        let explicit = euler_explicit_b3(&kind);
        assert!(operators_equal(&a0, &explicit, 4, &shape()).is_equal());

        // on 1: 3(2a + b + 1/2); on x1 x2: (2 + 3(2a + b + 1/2))
        let a = ParamPoly::param(2, 0);
        let b = ParamPoly::param(2, 1);
        let shift =
            (&(&a.scale(&rat(2, 1)) + &b) + &ParamPoly::constant(2, rat(1, 2))).scale(&rat(3, 1));
        assert_eq!(
            a0.apply_scalar(&XPoly::one(3, 2)),
            XPoly::from_coeff(3, shift.clone())
        );
        let x1x2 = &x(0) * &x(1);
        assert_eq!(
            a0.apply_scalar(&x1x2),
            x1x2.scale_param(&(&shift + &ParamPoly::int(2, 2)))
        );
    }

    #[test]
    fn z2_family_commutes_with_other_coordinates() {
        let kind = DunklKind::z2_symbolic(3);
        let sh = ModuleShape::scalar(3, 3);
        for (i, j) in [(0, 1), (1, 2), (2, 0)] {
            let c = Operator::commutator(&d_op(&kind, i), &x_op(3, 3, j));
            assert!(operators_equal(&c, &Operator::zero(), 4, &sh).is_equal());
        }
        // and [D_i, x_i] = 1 + 2 mu_i R_i
        for i in 0..3 {
            let lhs = Operator::commutator(&d_op(&kind, i), &x_op(3, 3, i));
            let rhs = Operator::group_algebra(s_ij(&kind, 3, i, i));
            assert!(operators_equal(&lhs, &rhs, 4, &sh).is_equal());
        }
    }

    #[test]
    fn b_family_at_a_zero_matches_uniform_z2() {
        let b_at_zero = DunklKind::b_symbolic()
            .substitute_params(&[Some(Rational::from_integer(0.into())), None]);
        // compare against Z2 with every mu set to the same symbol b
        let mu = ParamPoly::param(2, 1);
        let z2 = DunklKind::Z2 {
            mu: vec![mu.clone(), mu.clone(), mu],
        };
        for i in 0..3 {
            let cert = operators_equal(&d_op(&b_at_zero, i), &d_op(&z2, i), 5, &shape());
            assert!(cert.is_equal(), "specialization mismatch at D_{}", i + 1);
        }
    }

    prop_compose! {
        fn arb_xpoly()(terms in proptest::collection::vec(
            (proptest::array::uniform3(0u16..4), -3i64..=3), 1..6)) -> XPoly {
            let mut p = XPoly::zero(3, 2);
            for (exps, c) in terms {
                p.insert_term(Monomial::from_exponents(&exps), ParamPoly::int(2, c));
            }
            p
        }
    }

    proptest! {
        // The three Dunkl numerators are always exactly divisible.
        #[test]
        fn dunkl_numerators_divide(f in arb_xpoly()) {
            for i in 0..3 {
                let ri = SignedPerm::reflection(3, i);
                let num = &f - &ri.act(&f);
                prop_assert!(num.divide_exact(LinearDivisor::Var(i)).is_ok());
                for j in 0..3 {
                    if i == j { continue; }
                    let pi = SignedPerm::transposition(3, i, j);
                    prop_assert!((&f - &pi.act(&f))
                        .divide_exact(LinearDivisor::Diff(i, j)).is_ok());
                    let rr = reflection_product(3, &[i, j]).compose(&pi);
                    prop_assert!((&f - &rr.act(&f))
                        .divide_exact(LinearDivisor::Sum(i, j)).is_ok());
                }
            }
        }

        #[test]
        fn dunkl_is_linear(f in arb_xpoly(), g in arb_xpoly()) {
            let kind = DunklKind::b_symbolic();
            prop_assert_eq!(
                kind.apply(0, &(&f + &g)),
                &kind.apply(0, &f) + &kind.apply(0, &g)
            );
        }
    }
}

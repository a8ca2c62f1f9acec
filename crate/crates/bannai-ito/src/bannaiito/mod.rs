//! osp(1,2) realizations bound to Dunkl operators, the centralizer
//! elements attached to subsets of the supplementary involutions, their
//! closed forms, and the named verification suites.
//!
//! Three realizations are supported, all with n = 3:
//!
//! * `b3-scalar` — the B_3 family acting on scalar polynomials, with
//!   `A_- = D_1 R_2 R_3 + D_2 R_3 + D_3` and `A_+` its coordinate
//!   analogue;
//! * `z2-scalar` — the Z_2^3 family in the same triangular dressing,
//!   which reproduces the coproduct picture (the one-index centralizers
//!   become the constants mu_i);
//! * `b3-clifford` — the Dirac-type dressing `A_- = sum_i D_i e_i`,
//!   `A_+ = sum_i x_i e_i` acting on `polynomials (x) Cl(3)`.
//!
//! In every case the grade involution is `P = R_1 R_2 R_3` and the
//! supplementary involutions are the reflections `P_i = R_i`.

pub mod closed;
pub mod suites;

use crate::clifford::CliffordElement;
use crate::dunkl::{d_op, euler, DunklKind};
use crate::exactring::{rat, ParamPoly, Rational};
use crate::hyperoct::{reflection_product, SignedPerm};
use crate::opcalc::{operators_equal, EqualityCertificate, ModuleShape, Operator};

/// Which concrete model of osp(1,2) is bound.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum RealizationKind {
    B3Scalar,
    Z2Scalar,
    B3Clifford,
}

impl RealizationKind {
    pub const ALL: [RealizationKind; 3] = [
        RealizationKind::B3Scalar,
        RealizationKind::Z2Scalar,
        RealizationKind::B3Clifford,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            RealizationKind::B3Scalar => "b3-scalar",
            RealizationKind::Z2Scalar => "z2-scalar",
            RealizationKind::B3Clifford => "b3-clifford",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Self::ALL.iter().copied().find(|k| k.name() == s)
    }

    /// Names of the symbolic parameters, in declaration order.
    pub fn param_names(&self) -> Vec<&'static str> {
        match self {
            RealizationKind::B3Scalar | RealizationKind::B3Clifford => vec!["a", "b"],
            RealizationKind::Z2Scalar => vec!["mu1", "mu2", "mu3"],
        }
    }

    pub fn uses_clifford(&self) -> bool {
        matches!(self, RealizationKind::B3Clifford)
    }
}

/// A bound realization: the osp(1,2) generators, the grade involution
/// and its three supplementary factors, plus the Dunkl family that
/// produced them.
#[derive(Clone, Debug)]
pub struct Realization {
    pub kind: RealizationKind,
    pub n: usize,
    pub nparams: usize,
    pub dunkl: DunklKind,
    pub a_plus: Operator,
    pub a_minus: Operator,
    pub a_zero: Operator,
    /// Grade involution P = R_1 R_2 R_3.
    pub p: Operator,
    /// Supplementary involutions P_i = R_i.
    pub p_i: Vec<Operator>,
}

impl Realization {
    pub fn new(kind: RealizationKind) -> Self {
        let n = 3;
        let dunkl = match kind {
            RealizationKind::B3Scalar | RealizationKind::B3Clifford => DunklKind::b_symbolic(),
            RealizationKind::Z2Scalar => DunklKind::z2_symbolic(n),
        };
        Self::bind(kind, dunkl)
    }

    fn bind(kind: RealizationKind, dunkl: DunklKind) -> Self {
        let n = 3;
        let np = dunkl.nparams();
        let (a_minus, a_plus) = match kind {
            RealizationKind::B3Scalar | RealizationKind::Z2Scalar => {
                // A_- = D_1 R_2 R_3 + D_2 R_3 + D_3 and likewise for x_i
                let tail = |i: usize| {
                    let rest: Vec<usize> = (i + 1..n).collect();
                    Operator::perm(reflection_product(n, &rest))
                };
                let minus = Operator::sum(
                    (0..n)
                        .map(|i| Operator::compose(vec![d_op(&dunkl, i), tail(i)]))
                        .collect(),
                );
                let plus = Operator::sum(
                    (0..n)
                        .map(|i| {
                            Operator::compose(vec![
                                Operator::mul_poly(crate::exactring::XPoly::var(n, np, i)),
                                tail(i),
                            ])
                        })
                        .collect(),
                );
                (minus, plus)
            }
            RealizationKind::B3Clifford => {
                // A_- = sum_i D_i e_i, A_+ = sum_i x_i e_i
                let unit = |i: usize| Operator::mul_element(CliffordElement::unit(n, np, i));
                let minus = Operator::sum(
                    (0..n)
                        .map(|i| Operator::compose(vec![unit(i), d_op(&dunkl, i)]))
                        .collect(),
                );
                let plus = Operator::sum(
                    (0..n)
                        .map(|i| {
                            Operator::compose(vec![
                                unit(i),
                                Operator::mul_poly(crate::exactring::XPoly::var(n, np, i)),
                            ])
                        })
                        .collect(),
                );
                (minus, plus)
            }
        };
        let a_zero = euler(&dunkl, n);
        let p = Operator::perm(reflection_product(n, &[0, 1, 2]));
        let p_i = (0..n)
            .map(|i| Operator::perm(SignedPerm::reflection(n, i)))
            .collect();
        Realization {
            kind,
            n,
            nparams: np,
            dunkl,
            a_plus,
            a_minus,
            a_zero,
            p,
            p_i,
        }
    }

    /// Construct and certify the osp(1,2) and involution hypotheses at
    /// the given degree; the first failing relation is returned.
    pub fn verified(kind: RealizationKind, degree: usize) -> Result<Self, RealizationError> {
        let r = Self::new(kind);
        for (label, lhs, rhs) in r.defining_relations() {
            let cert = operators_equal(&lhs, &rhs, degree, &r.shape());
            if !cert.is_equal() {
                return Err(RealizationError {
                    relation: label,
                    certificate: Box::new(cert),
                });
            }
        }
        Ok(r)
    }

    fn defining_relations(&self) -> Vec<(&'static str, Operator, Operator)> {
        let two_a0 = Operator::scale_rat(rat(2, 1), self.a_zero.clone());
        let mut rels = vec![
            (
                "odd-anticommutator",
                Operator::anticommutator(&self.a_minus, &self.a_plus),
                two_a0,
            ),
            (
                "weight-raising",
                Operator::commutator(&self.a_zero, &self.a_plus),
                self.a_plus.clone(),
            ),
            (
                "weight-lowering",
                Operator::commutator(&self.a_zero, &self.a_minus),
                Operator::negate(self.a_minus.clone()),
            ),
            (
                "grade-squares-to-one",
                Operator::compose(vec![self.p.clone(), self.p.clone()]),
                Operator::identity(),
            ),
            (
                "grade-commutes-even",
                Operator::commutator(&self.p, &self.a_zero),
                Operator::zero(),
            ),
            (
                "grade-anticommutes-raising",
                Operator::anticommutator(&self.p, &self.a_plus),
                Operator::zero(),
            ),
            (
                "grade-anticommutes-lowering",
                Operator::anticommutator(&self.p, &self.a_minus),
                Operator::zero(),
            ),
        ];
        for i in 0..self.n {
            rels.push((
                "involution-commutes-even",
                Operator::commutator(&self.p_i[i], &self.a_zero),
                Operator::zero(),
            ));
            for j in 0..self.n {
                if i == j {
                    continue;
                }
                rels.push((
                    "involution-decomposition",
                    Operator::commutator(
                        &self.p_i[i],
                        &Operator::commutator(&self.p_i[j], &self.a_plus),
                    ),
                    Operator::zero(),
                ));
            }
        }
        rels
    }

    pub fn shape(&self) -> ModuleShape {
        if self.kind.uses_clifford() {
            ModuleShape::with_clifford(self.n, self.nparams)
        } else {
            ModuleShape::scalar(self.n, self.nparams)
        }
    }

    /// Partially evaluate the symbolic parameters everywhere.
    pub fn substitute_params(&self, assignment: &[Option<Rational>]) -> Self {
        Realization {
            kind: self.kind,
            n: self.n,
            nparams: self.nparams,
            dunkl: self.dunkl.substitute_params(assignment),
            a_plus: self.a_plus.substitute_params(assignment),
            a_minus: self.a_minus.substitute_params(assignment),
            a_zero: self.a_zero.substitute_params(assignment),
            p: self.p.substitute_params(assignment),
            p_i: self
                .p_i
                .iter()
                .map(|op| op.substitute_params(assignment))
                .collect(),
        }
    }

    /// `P_S = prod_{i in S} P_i` collapsed to a single permutation.
    pub fn p_subset(&self, s: &[usize]) -> Operator {
        assert!(!s.is_empty(), "the empty subset has no centralizer element");
        assert!(s.iter().all(|&i| i < self.n));
        Operator::perm(reflection_product(self.n, s))
    }

    /// `C_S = {A_-, [A_+, P_S]}/4 - P_S/2`.
    pub fn centralizer_element(&self, s: &[usize]) -> Operator {
        let ps = self.p_subset(s);
        Operator::sum(vec![
            Operator::scale_rat(
                rat(1, 4),
                Operator::anticommutator(&self.a_minus, &Operator::commutator(&self.a_plus, &ps)),
            ),
            Operator::scale_rat(rat(-1, 2), ps),
        ])
    }

    /// The equivalent grouping `C_S = {[P_S, A_-], A_+}/4 - P_S/2`.
    pub fn centralizer_element_alt(&self, s: &[usize]) -> Operator {
        let ps = self.p_subset(s);
        Operator::sum(vec![
            Operator::scale_rat(
                rat(1, 4),
                Operator::anticommutator(&Operator::commutator(&ps, &self.a_minus), &self.a_plus),
            ),
            Operator::scale_rat(rat(-1, 2), ps),
        ])
    }

    /// The fully expanded four-term form
    /// `C_S = (A_-A_+P_S - A_-P_SA_+ + A_+P_SA_- - P_SA_+A_-)/4 - P_S/2`.
    pub fn centralizer_element_expanded(&self, s: &[usize]) -> Operator {
        let ps = self.p_subset(s);
        let am = &self.a_minus;
        let ap = &self.a_plus;
        let quarter = Operator::sum(vec![
            Operator::compose(vec![am.clone(), ap.clone(), ps.clone()]),
            Operator::negate(Operator::compose(vec![am.clone(), ps.clone(), ap.clone()])),
            Operator::compose(vec![ap.clone(), ps.clone(), am.clone()]),
            Operator::negate(Operator::compose(vec![ps.clone(), ap.clone(), am.clone()])),
        ]);
        Operator::sum(vec![
            Operator::scale_rat(rat(1, 4), quarter),
            Operator::scale_rat(rat(-1, 2), ps),
        ])
    }

    /// `Gamma = ([A_-, A_+] - 1) P / 2`, the Casimir of the realization.
    pub fn gamma(&self) -> Operator {
        let bracket = Operator::sum(vec![
            Operator::commutator(&self.a_minus, &self.a_plus),
            Operator::negate(Operator::identity()),
        ]);
        Operator::scale_rat(rat(1, 2), Operator::compose(vec![bracket, self.p.clone()]))
    }

    /// Coefficient polynomials of the bound family: `(a, b)` for the
    /// B_3 realizations.
    pub fn ab(&self) -> (ParamPoly, ParamPoly) {
        match &self.dunkl {
            DunklKind::BWeyl { a, b } => (a.clone(), b.clone()),
            DunklKind::Z2 { .. } => panic!("Z_2^3 realization has no (a, b) coefficients"),
        }
    }

    /// Coefficients mu_i of the Z_2^3 family.
    pub fn mu(&self, i: usize) -> ParamPoly {
        match &self.dunkl {
            DunklKind::Z2 { mu } => mu[i].clone(),
            DunklKind::BWeyl { .. } => panic!("B_3 realization has no mu coefficients"),
        }
    }
}

/// A defining relation of a realization failed to certify.
#[derive(Debug, thiserror::Error)]
#[error("realization relation `{relation}` failed extensional check")]
pub struct RealizationError {
    pub relation: &'static str,
    pub certificate: Box<EqualityCertificate>,
}

/// The seven nonempty subsets of {1, 2, 3} (zero-based), smallest first.
pub const SUBSETS: [&[usize]; 7] = [&[0], &[1], &[2], &[0, 1], &[0, 2], &[1, 2], &[0, 1, 2]];

pub(crate) fn subset_label(s: &[usize]) -> String {
    s.iter().map(|i| (i + 1).to_string()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactring::XPoly;
    use crate::opcalc::CertOutcome;

    #[test]
    fn all_realizations_certify_their_relations() {
        for kind in RealizationKind::ALL {
            let r = Realization::verified(kind, 3);
            assert!(r.is_ok(), "{:?}: {:?}", kind, r.err().map(|e| e.relation));
        }
    }

    #[test]
    fn gamma_is_the_full_subset_element() {
        let r = Realization::new(RealizationKind::B3Scalar);
        let cert = operators_equal(
            &r.gamma(),
            &r.centralizer_element(&[0, 1, 2]),
            4,
            &r.shape(),
        );
        assert!(cert.is_equal());
    }

    #[test]
    fn z2_one_index_elements_are_constants() {
        let r = Realization::new(RealizationKind::Z2Scalar);
        for i in 0..3 {
            let c = r.centralizer_element(&[i]);
            let rhs = Operator::scale(r.mu(i), Operator::identity());
            assert!(operators_equal(&c, &rhs, 4, &r.shape()).is_equal());
        }
    }

    #[test]
    fn a_plus_lifts_constants_to_coordinates() {
        let r = Realization::new(RealizationKind::B3Scalar);
        let one = XPoly::one(3, 2);
        let got = r.a_plus.apply_scalar(&one);
        let want = &(&XPoly::var(3, 2, 0) + &XPoly::var(3, 2, 1)) + &XPoly::var(3, 2, 2);
        assert_eq!(got, want);
    }

    #[test]
    fn gamma_is_central_among_cs_but_not_in_the_group() {
        // [Gamma, C_S] = 0 is covered by the centralize suite; here the
        // complementary fact: [Gamma, P_i] does not vanish, and the
        // counterexample survives its own recheck.
        for kind in RealizationKind::ALL {
            let r = Realization::new(kind);
            let gamma = r.gamma();
            for i in 0..3 {
                let c = Operator::commutator(&gamma, &r.p_i[i]);
                let cert = operators_equal(&c, &Operator::zero(), 2, &r.shape());
                match &cert.outcome {
                    CertOutcome::Counterexample { .. } => {
                        assert!(cert.witness_recheck(&c, &Operator::zero()));
                    }
                    CertOutcome::Equal => panic!("[Gamma, P_{}] vanished under {:?}", i + 1, kind),
                }
            }
        }
    }

    #[test]
    fn empty_subset_is_rejected() {
        let r = Realization::new(RealizationKind::B3Scalar);
        let attempt = std::panic::catch_unwind(std::panic::AssertUnwindSafe(|| r.p_subset(&[])));
        assert!(attempt.is_err());
    }

    #[test]
    fn broken_binding_reports_a_witness() {
        // dropping the reflection tail from A_- breaks the hypotheses
        let r = Realization::new(RealizationKind::B3Scalar);
        let mut broken = r.clone();
        broken.a_minus = Operator::sum((0..3).map(|i| d_op(&broken.dunkl, i)).collect());
        let bad = broken
            .defining_relations()
            .into_iter()
            .find_map(|(label, lhs, rhs)| {
                let cert = operators_equal(&lhs, &rhs, 3, &broken.shape());
                (!cert.is_equal()).then_some((label, cert))
            });
        let (_, cert) = bad.expect("a relation must fail");
        assert!(matches!(cert.outcome, CertOutcome::Counterexample { .. }));
    }
}

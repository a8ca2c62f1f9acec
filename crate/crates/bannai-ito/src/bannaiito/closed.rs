//! Closed-form expressions for the centralizer elements in terms of the
//! commutator fields S_ij, the angular momenta M_ij, group elements,
//! the Q_ij involutions and, in the Clifford realization, basis blades.
//!
//! Every builder constructs the literal right-hand side; the suites
//! certify each against the generic construction, so these functions
//! are an independent route into the same operators.

use crate::clifford::{w_ij, CliffordElement};
use crate::dunkl::{m_ij, s_ij};
use crate::exactring::{rat, ParamPoly};
use crate::hyperoct::{ga_transposition, q_ij, reflection_product, GroupAlgebraElement};
use crate::opcalc::Operator;

use super::Realization;

/// The three involutions Q_12, Q_13, Q_23.  Suites take the table as a
/// parameter so a corrupted table can drive the negative control.
#[derive(Clone, Debug)]
pub struct QTable {
    pub q12: GroupAlgebraElement,
    pub q13: GroupAlgebraElement,
    pub q23: GroupAlgebraElement,
}

impl QTable {
    pub fn standard(nparams: usize) -> Self {
        QTable {
            q12: q_ij(0, 1, nparams),
            q13: q_ij(0, 2, nparams),
            q23: q_ij(1, 2, nparams),
        }
    }

    /// Negative control: Q_13 with its R_3 summand dropped.  Feeding
    /// this table to the hyperoctahedral suite must produce failures
    /// with witnesses; it guards against vacuously-passing equality
    /// machinery.
    pub fn with_dropped_r3(nparams: usize) -> Self {
        let mut q = Self::standard(nparams);
        let r3_half =
            GroupAlgebraElement::from_perm(crate::hyperoct::SignedPerm::reflection(3, 2), nparams)
                .scale(&rat(1, 2));
        let pi13 = GroupAlgebraElement::from_perm(
            crate::hyperoct::SignedPerm::transposition(3, 0, 2),
            nparams,
        );
        q.q13 = &q.q13 - &(&r3_half * &pi13);
        q
    }

    /// Lookup by unordered index pair (zero-based).
    pub fn get(&self, i: usize, j: usize) -> &GroupAlgebraElement {
        match (i.min(j), i.max(j)) {
            (0, 1) => &self.q12,
            (0, 2) => &self.q13,
            (1, 2) => &self.q23,
            _ => panic!("Q indices must be a pair from 1..=3"),
        }
    }

    /// Q = Q_12 + Q_13 + Q_23.
    pub fn sum(&self) -> GroupAlgebraElement {
        &(&self.q12 + &self.q13) + &self.q23
    }
}

fn ga_refl(r: &Realization, indices: &[usize]) -> GroupAlgebraElement {
    GroupAlgebraElement::from_perm(reflection_product(r.n, indices), r.nparams)
}

fn s(r: &Realization, i: usize, j: usize) -> GroupAlgebraElement {
    s_ij(&r.dunkl, r.n, i, j)
}

fn m(r: &Realization, i: usize, j: usize) -> Operator {
    m_ij(&r.dunkl, r.n, i, j)
}

fn half() -> crate::exactring::Rational {
    rat(1, 2)
}

/// One-index elements written through the S-fields (zero-based `i`):
///
/// * C_1 = (S_11 R_1 + S_12 R_1R_2 + S_13 R_1R_2R_3 - R_1)/2
/// * C_2 = (-S_12 + S_22 R_2 - S_23 - R_2)/2
/// * C_3 = (-S_13 R_2 - S_23 + S_33 R_3 - R_3)/2
pub fn c_i_ga(r: &Realization, i: usize) -> GroupAlgebraElement {
    let e = match i {
        0 => {
            let t1 = &s(r, 0, 0) * &ga_refl(r, &[0]);
            let t2 = &s(r, 0, 1) * &ga_refl(r, &[0, 1]);
            let t3 = &s(r, 0, 2) * &ga_refl(r, &[0, 1, 2]);
            &(&(&t1 + &t2) + &t3) - &ga_refl(r, &[0])
        }
        1 => {
            let t2 = &s(r, 1, 1) * &ga_refl(r, &[1]);
            &(&(&-&s(r, 0, 1) + &t2) - &s(r, 1, 2)) - &ga_refl(r, &[1])
        }
        2 => {
            let t1 = &s(r, 0, 2) * &ga_refl(r, &[1]);
            let t3 = &s(r, 2, 2) * &ga_refl(r, &[2]);
            &(&(&-&t1 - &s(r, 1, 2)) + &t3) - &ga_refl(r, &[2])
        }
        _ => panic!("one-index element needs i in 1..=3"),
    };
    e.scale(&half())
}

/// `C_i = a (Q_ij + Q_ik) + b` with (i, j, k) all distinct.
pub fn c_i_q_form(r: &Realization, q: &QTable, i: usize) -> GroupAlgebraElement {
    let (a, b) = r.ab();
    let mut others = (0..3).filter(|&t| t != i);
    let j = others.next().unwrap();
    let k = others.next().unwrap();
    let head = (q.get(i, j) + q.get(i, k)).scale_param(&a);
    &head + &GroupAlgebraElement::identity(r.n, r.nparams).scale_param(&b)
}

/// Two-index elements through M and S, pairs in either order:
///
/// * C_12 = M_12 R_1 + (S_11 + S_22 - 1) R_1R_2 / 2 - (S_13 + S_23 R_1)/2
/// * C_23 = M_23 R_2 + (S_22 + S_33 - 1) R_2R_3 / 2 - (S_12 R_3 + S_13)/2
/// * C_13 = M_13 R_1R_2 + (S_11 + S_33 - 1) R_1R_3 / 2 - (S_12 R_3 + S_23 R_1)/2
pub fn c_ij_ms_form(r: &Realization, i: usize, j: usize) -> Operator {
    let one = GroupAlgebraElement::identity(r.n, r.nparams);
    let (m_part, ga_part) = match (i.min(j), i.max(j)) {
        (0, 1) => {
            let diag = &(&(&s(r, 0, 0) + &s(r, 1, 1)) - &one) * &ga_refl(r, &[0, 1]);
            let tail = &s(r, 0, 2) + &(&s(r, 1, 2) * &ga_refl(r, &[0]));
            (
                Operator::compose(vec![
                    m(r, 0, 1),
                    Operator::perm(reflection_product(r.n, &[0])),
                ]),
                &diag.scale(&half()) - &tail.scale(&half()),
            )
        }
        (1, 2) => {
            let diag = &(&(&s(r, 1, 1) + &s(r, 2, 2)) - &one) * &ga_refl(r, &[1, 2]);
            let tail = &(&s(r, 0, 1) * &ga_refl(r, &[2])) + &s(r, 0, 2);
            (
                Operator::compose(vec![
                    m(r, 1, 2),
                    Operator::perm(reflection_product(r.n, &[1])),
                ]),
                &diag.scale(&half()) - &tail.scale(&half()),
            )
        }
        (0, 2) => {
            let diag = &(&(&s(r, 0, 0) + &s(r, 2, 2)) - &one) * &ga_refl(r, &[0, 2]);
            let tail = &(&s(r, 0, 1) * &ga_refl(r, &[2])) + &(&s(r, 1, 2) * &ga_refl(r, &[0]));
            (
                Operator::compose(vec![
                    m(r, 0, 2),
                    Operator::perm(reflection_product(r.n, &[0, 1])),
                ]),
                &diag.scale(&half()) - &tail.scale(&half()),
            )
        }
        _ => panic!("two-index element needs distinct indices in 1..=3"),
    };
    Operator::sum(vec![m_part, Operator::group_algebra(ga_part)])
}

/// The compressed restatement
/// `C_ij = M_ij F_ij + C_i R_j + C_j R_i + R_iR_j/2`
/// with the per-pair reflection factor F_12 = R_1, F_23 = R_2,
/// F_13 = R_1R_2, and the one-index elements in their Q form.
pub fn c_ij_compressed(r: &Realization, q: &QTable, i: usize, j: usize) -> Operator {
    let (i, j) = (i.min(j), i.max(j));
    let factor: &[usize] = match (i, j) {
        (0, 1) => &[0],
        (1, 2) => &[1],
        (0, 2) => &[0, 1],
        _ => panic!("two-index element needs distinct indices in 1..=3"),
    };
    let ci_rj = &c_i_q_form(r, q, i) * &ga_refl(r, &[j]);
    let cj_ri = &c_i_q_form(r, q, j) * &ga_refl(r, &[i]);
    let ga_part = &(&ci_rj + &cj_ri) + &ga_refl(r, &[i, j]).scale(&half());
    Operator::sum(vec![
        Operator::compose(vec![
            m(r, i, j),
            Operator::perm(reflection_product(r.n, factor)),
        ]),
        Operator::group_algebra(ga_part),
    ])
}

/// `Gamma = M_12 R_1R_3 + M_13 R_1 + M_23 R_1R_2 + (S_11+S_22+S_33-1) R / 2`.
pub fn gamma_ms_form(r: &Realization) -> Operator {
    let one = GroupAlgebraElement::identity(r.n, r.nparams);
    let diag = &(&(&(&s(r, 0, 0) + &s(r, 1, 1)) + &s(r, 2, 2)) - &one) * &ga_refl(r, &[0, 1, 2]);
    Operator::sum(vec![
        Operator::compose(vec![
            m(r, 0, 1),
            Operator::perm(reflection_product(r.n, &[0, 2])),
        ]),
        Operator::compose(vec![
            m(r, 0, 2),
            Operator::perm(reflection_product(r.n, &[0])),
        ]),
        Operator::compose(vec![
            m(r, 1, 2),
            Operator::perm(reflection_product(r.n, &[0, 1])),
        ]),
        Operator::group_algebra(diag.scale(&half())),
    ])
}

/// `Gamma = C_12 R_3 + C_13 R_2 + C_23 R_1 - J R` where
/// `J = a sum (1 + R_iR_j) pi_ij + b (R_1 + R_2 + R_3) + 1/2` collects
/// the Jucys-Murphy elements.
pub fn gamma_jm_form(r: &Realization) -> Operator {
    let (a, b) = r.ab();
    let np = r.nparams;
    let one = GroupAlgebraElement::identity(r.n, np);
    let mut jm = GroupAlgebraElement::zero(r.n, np);
    for (i, j) in [(0, 1), (0, 2), (1, 2)] {
        let term = &(&one + &ga_refl(r, &[i, j])) * &ga_transposition(r.n, np, i, j);
        jm = &jm + &term;
    }
    let refl_sum = &(&ga_refl(r, &[0]) + &ga_refl(r, &[1])) + &ga_refl(r, &[2]);
    let bracket = &(&jm.scale_param(&a) + &refl_sum.scale_param(&b)) + &one.scale(&half());
    let tail = &bracket * &ga_refl(r, &[0, 1, 2]);
    Operator::sum(vec![
        Operator::compose(vec![
            c_ij_ms_form(r, 0, 1),
            Operator::perm(reflection_product(r.n, &[2])),
        ]),
        Operator::compose(vec![
            c_ij_ms_form(r, 0, 2),
            Operator::perm(reflection_product(r.n, &[1])),
        ]),
        Operator::compose(vec![
            c_ij_ms_form(r, 1, 2),
            Operator::perm(reflection_product(r.n, &[0])),
        ]),
        Operator::negate(Operator::group_algebra(tail)),
    ])
}

/// Ordered product `e_i e_j` reduced to its signed blade.
fn pair_blade(r: &Realization, i: usize, j: usize) -> Operator {
    Operator::mul_element(CliffordElement::units_product(r.n, r.nparams, &[i, j]))
}

fn ga_op(u: GroupAlgebraElement) -> Operator {
    Operator::group_algebra(u)
}

/// Dirac-side one-index element
/// `C_i = (S_ii - S_ij e_ie_j - S_ik e_ie_k - 1) R_i / 2`.
pub fn c_i_dirac(r: &Realization, i: usize) -> Operator {
    let mut others = (0..3).filter(|&t| t != i);
    let j = others.next().unwrap();
    let k = others.next().unwrap();
    let inner = Operator::sum(vec![
        ga_op(s(r, i, i)),
        Operator::negate(Operator::compose(vec![
            pair_blade(r, i, j),
            ga_op(s(r, i, j)),
        ])),
        Operator::negate(Operator::compose(vec![
            pair_blade(r, i, k),
            ga_op(s(r, i, k)),
        ])),
        Operator::negate(Operator::identity()),
    ]);
    Operator::scale_rat(
        half(),
        Operator::compose(vec![inner, Operator::perm(reflection_product(r.n, &[i]))]),
    )
}

/// Dirac-side two-index element
/// `C_ij = -M_ij e_ie_j R_iR_j + (S_ii + S_jj - S_ik e_ie_k - S_jk e_je_k - 1) R_iR_j / 2`.
pub fn c_ij_dirac(r: &Realization, i: usize, j: usize) -> Operator {
    assert!(i != j);
    let k = (0..3).find(|&t| t != i && t != j).unwrap();
    let rr = Operator::perm(reflection_product(r.n, &[i, j]));
    let inner = Operator::sum(vec![
        ga_op(&s(r, i, i) + &s(r, j, j)),
        Operator::negate(Operator::compose(vec![
            pair_blade(r, i, k),
            ga_op(s(r, i, k)),
        ])),
        Operator::negate(Operator::compose(vec![
            pair_blade(r, j, k),
            ga_op(s(r, j, k)),
        ])),
        Operator::negate(Operator::identity()),
    ]);
    Operator::sum(vec![
        Operator::negate(Operator::compose(vec![
            m(r, i, j),
            pair_blade(r, i, j),
            rr.clone(),
        ])),
        Operator::scale_rat(half(), Operator::compose(vec![inner, rr])),
    ])
}

/// Dirac-side Casimir
/// `Gamma = (-M_12 e_1e_2 - M_13 e_1e_3 - M_23 e_2e_3 + (S_11+S_22+S_33-1)/2) R`.
pub fn gamma_dirac(r: &Realization) -> Operator {
    let one = GroupAlgebraElement::identity(r.n, r.nparams);
    let diag = &(&(&s(r, 0, 0) + &s(r, 1, 1)) + &s(r, 2, 2)) - &one;
    let head = Operator::sum(vec![
        Operator::negate(Operator::compose(vec![m(r, 0, 1), pair_blade(r, 0, 1)])),
        Operator::negate(Operator::compose(vec![m(r, 0, 2), pair_blade(r, 0, 2)])),
        Operator::negate(Operator::compose(vec![m(r, 1, 2), pair_blade(r, 1, 2)])),
        Operator::scale_rat(half(), ga_op(diag)),
    ]);
    Operator::compose(vec![
        head,
        Operator::perm(reflection_product(r.n, &[0, 1, 2])),
    ])
}

/// `C_i = a (W_ij + W_ik) e_i R_i + b`.
pub fn c_i_w_form(r: &Realization, i: usize) -> Operator {
    let (a, b) = r.ab();
    let mut others = (0..3).filter(|&t| t != i);
    let j = others.next().unwrap();
    let k = others.next().unwrap();
    let w_sum = Operator::sum(vec![w_ij(r.n, r.nparams, i, j), w_ij(r.n, r.nparams, i, k)]);
    Operator::sum(vec![
        Operator::scale(
            a,
            Operator::compose(vec![
                w_sum,
                Operator::mul_element(CliffordElement::unit(r.n, r.nparams, i)),
                Operator::perm(reflection_product(r.n, &[i])),
            ]),
        ),
        Operator::scale(b, Operator::identity()),
    ])
}

/// The defining symmetry candidates
/// `O_S = (A_- x_S e_S - e_S x_S A_- - e_S)/2` with
/// `x_S = sum_{s in S} x_s e_s` and `e_S` the ascending blade of S.
pub fn o_defining(r: &Realization, subset: &[usize]) -> Operator {
    assert!(!subset.is_empty());
    let np = r.nparams;
    let x_s = Operator::sum(
        subset
            .iter()
            .map(|&i| {
                Operator::compose(vec![
                    Operator::mul_element(CliffordElement::unit(r.n, np, i)),
                    Operator::mul_poly(crate::exactring::XPoly::var(r.n, np, i)),
                ])
            })
            .collect(),
    );
    let mask = subset.iter().fold(0u8, |m, &i| m | 1 << i);
    let e_s = Operator::mul_element(CliffordElement::blade(r.n, np, mask));
    let am = r.a_minus.clone();
    Operator::scale_rat(
        half(),
        Operator::sum(vec![
            Operator::compose(vec![am.clone(), x_s.clone(), e_s.clone()]),
            Operator::negate(Operator::compose(vec![e_s.clone(), x_s, am])),
            Operator::negate(e_s),
        ]),
    )
}

/// Closed form of the two-index symmetry,
/// `O_ij = M_ij + (S_ii + S_jj) e_ie_j / 2 - S_ik e_je_k / 2
///        + S_jk e_ie_k / 2 - e_ie_j / 2`,
/// with the commutator fields read as S_ij = [D_i, x_j].
pub fn o_ij_closed(r: &Realization, i: usize, j: usize) -> Operator {
    assert!(i != j);
    let k = (0..3).find(|&t| t != i && t != j).unwrap();
    Operator::sum(vec![
        m(r, i, j),
        Operator::scale_rat(
            half(),
            Operator::compose(vec![pair_blade(r, i, j), ga_op(&s(r, i, i) + &s(r, j, j))]),
        ),
        Operator::scale_rat(
            rat(-1, 2),
            Operator::compose(vec![pair_blade(r, j, k), ga_op(s(r, i, k))]),
        ),
        Operator::scale_rat(
            half(),
            Operator::compose(vec![pair_blade(r, i, k), ga_op(s(r, j, k))]),
        ),
        Operator::scale_rat(rat(-1, 2), pair_blade(r, i, j)),
    ])
}

/// A parameter scalar as an operator.
pub fn const_op(c: ParamPoly) -> Operator {
    Operator::scale(c, Operator::identity())
}

//! The hyperoctahedral group B_n of signed permutations, its substitution
//! action on polynomials, and its group algebra over Q[params].
//!
//! A composite written left to right acts with the rightmost factor
//! first, so `R_1 R_2 pi_12` applied to a polynomial permutes first and
//! reflects afterwards.  The distinguished elements Q_ij and the
//! Jucys-Murphy elements of B_3 live here.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::Zero;
use smallvec::SmallVec;

use crate::exactring::{rat, Monomial, ParamPoly, Rational, XPoly};

/// A signed permutation: `x_j -> sign_j * x_{perm(j)}`, signs stored as
/// a bitmask over source indices.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct SignedPerm {
    perm: SmallVec<[u8; 4]>,
    signs: u8,
}

impl SignedPerm {
    pub fn identity(n: usize) -> Self {
        assert!(n <= 8, "supported rank is n <= 8");
        SignedPerm {
            perm: (0..n as u8).collect(),
            signs: 0,
        }
    }

    /// The reflection R_i in the hyperplane x_i = 0.
    pub fn reflection(n: usize, i: usize) -> Self {
        assert!(i < n);
        let mut g = Self::identity(n);
        g.signs = 1 << i;
        g
    }

    /// The transposition pi_ij exchanging x_i and x_j.
    pub fn transposition(n: usize, i: usize, j: usize) -> Self {
        assert!(i < n && j < n && i != j);
        let mut g = Self::identity(n);
        g.perm.swap(i, j);
        g
    }

    pub fn n(&self) -> usize {
        self.perm.len()
    }

    pub fn is_identity(&self) -> bool {
        self.signs == 0 && self.perm.iter().enumerate().all(|(i, &p)| p as usize == i)
    }

    /// Where source index `j` goes.
    pub fn image(&self, j: usize) -> usize {
        self.perm[j] as usize
    }

    /// Sign applied to source index `j`.
    pub fn sign(&self, j: usize) -> i8 {
        if self.signs >> j & 1 == 1 {
            -1
        } else {
            1
        }
    }

    /// `self . rhs`: the right factor acts first.
    pub fn compose(&self, rhs: &SignedPerm) -> SignedPerm {
        assert_eq!(self.n(), rhs.n());
        let n = self.n();
        let mut perm = SmallVec::with_capacity(n);
        let mut signs = 0u8;
        for j in 0..n {
            let mid = rhs.perm[j] as usize;
            perm.push(self.perm[mid]);
            let neg = (rhs.signs >> j & 1) ^ (self.signs >> mid & 1);
            signs |= neg << j;
        }
        SignedPerm { perm, signs }
    }

    pub fn inverse(&self) -> SignedPerm {
        let n = self.n();
        let mut perm = SmallVec::from_elem(0u8, n);
        let mut signs = 0u8;
        for j in 0..n {
            let img = self.perm[j] as usize;
            perm[img] = j as u8;
            signs |= ((self.signs >> j) & 1) << img;
        }
        SignedPerm { perm, signs }
    }

    /// Image of a monomial together with the induced sign.
    pub fn act_monomial(&self, m: &Monomial) -> (Monomial, i8) {
        assert_eq!(m.len(), self.n());
        let mut exps = SmallVec::<[u16; 4]>::from_elem(0, m.len());
        let mut sign = 1i8;
        for (j, &e) in m.exponents().iter().enumerate() {
            exps[self.perm[j] as usize] += e;
            if e % 2 == 1 && self.signs >> j & 1 == 1 {
                sign = -sign;
            }
        }
        (Monomial::from_exponents(&exps), sign)
    }

    /// Substitution action on a polynomial.  Degree-preserving, and a
    /// homomorphism: `act(gh, f) = act(g, act(h, f))`.
    pub fn act(&self, f: &XPoly) -> XPoly {
        assert_eq!(self.n(), f.nvars());
        let mut out = XPoly::zero(f.nvars(), f.nparams());
        for (m, c) in f.terms() {
            let (image, sign) = self.act_monomial(m);
            let coeff = if sign < 0 { -c } else { c.clone() };
            out.insert_term(image, coeff);
        }
        out
    }
}

/// Breadth-first closure of B_n from its generators.  Used to certify
/// the group order (48 for n = 3).
pub fn enumerate_group(n: usize) -> BTreeSet<SignedPerm> {
    let mut gens = Vec::new();
    for i in 0..n {
        gens.push(SignedPerm::reflection(n, i));
        for j in i + 1..n {
            gens.push(SignedPerm::transposition(n, i, j));
        }
    }
    let mut seen = BTreeSet::new();
    let mut queue = VecDeque::new();
    seen.insert(SignedPerm::identity(n));
    queue.push_back(SignedPerm::identity(n));
    while let Some(g) = queue.pop_front() {
        for gen in &gens {
            let h = gen.compose(&g);
            if seen.insert(h.clone()) {
                queue.push_back(h);
            }
        }
    }
    seen
}

/// Formal Q[params]-linear combination of signed permutations.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GroupAlgebraElement {
    n: usize,
    nparams: usize,
    terms: BTreeMap<SignedPerm, ParamPoly>,
}

impl GroupAlgebraElement {
    pub fn zero(n: usize, nparams: usize) -> Self {
        GroupAlgebraElement {
            n,
            nparams,
            terms: BTreeMap::new(),
        }
    }

    pub fn identity(n: usize, nparams: usize) -> Self {
        Self::from_perm(SignedPerm::identity(n), nparams)
    }

    pub fn from_perm(g: SignedPerm, nparams: usize) -> Self {
        let n = g.n();
        let mut e = Self::zero(n, nparams);
        e.terms.insert(g, ParamPoly::one(nparams));
        e
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn nparams(&self) -> usize {
        self.nparams
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&SignedPerm, &ParamPoly)> {
        self.terms.iter()
    }

    /// Coefficient of a group element, zero when absent.
    pub fn coeff(&self, g: &SignedPerm) -> ParamPoly {
        self.terms
            .get(g)
            .cloned()
            .unwrap_or_else(|| ParamPoly::zero(self.nparams))
    }

    pub fn insert(&mut self, g: SignedPerm, c: ParamPoly) {
        assert_eq!(g.n(), self.n);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(g) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let v = e.get() + &c;
                if v.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = v;
                }
            }
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.n, self.nparams);
        }
        GroupAlgebraElement {
            n: self.n,
            nparams: self.nparams,
            terms: self
                .terms
                .iter()
                .map(|(g, v)| (g.clone(), v.scale(c)))
                .collect(),
        }
    }

    pub fn scale_param(&self, c: &ParamPoly) -> Self {
        assert_eq!(self.nparams, c.nparams());
        let mut out = Self::zero(self.n, self.nparams);
        for (g, v) in &self.terms {
            out.insert(g.clone(), v * c);
        }
        out
    }

    pub fn substitute_params(&self, assignment: &[Option<Rational>]) -> Self {
        let mut out = Self::zero(self.n, self.nparams);
        for (g, v) in &self.terms {
            out.insert(g.clone(), v.substitute(assignment));
        }
        out
    }

    /// Linear extension of the substitution action.
    pub fn act(&self, f: &XPoly) -> XPoly {
        let mut out = XPoly::zero(f.nvars(), f.nparams());
        for (g, c) in &self.terms {
            out = &out + &g.act(f).scale_param(c);
        }
        out
    }

    pub fn commutator(&self, rhs: &Self) -> Self {
        &(self * rhs) - &(rhs * self)
    }

    pub fn anticommutator(&self, rhs: &Self) -> Self {
        &(self * rhs) + &(rhs * self)
    }
}

impl Add for &GroupAlgebraElement {
    type Output = GroupAlgebraElement;
    fn add(self, rhs: &GroupAlgebraElement) -> GroupAlgebraElement {
        assert_eq!(self.n, rhs.n);
        assert_eq!(self.nparams, rhs.nparams, "parameter arity mismatch");
        let mut out = self.clone();
        for (g, c) in &rhs.terms {
            out.insert(g.clone(), c.clone());
        }
        out
    }
}

impl Sub for &GroupAlgebraElement {
    type Output = GroupAlgebraElement;
    fn sub(self, rhs: &GroupAlgebraElement) -> GroupAlgebraElement {
        assert_eq!(self.n, rhs.n);
        assert_eq!(self.nparams, rhs.nparams, "parameter arity mismatch");
        let mut out = self.clone();
        for (g, c) in &rhs.terms {
            out.insert(g.clone(), -c);
        }
        out
    }
}

impl Neg for &GroupAlgebraElement {
    type Output = GroupAlgebraElement;
    fn neg(self) -> GroupAlgebraElement {
        GroupAlgebraElement {
            n: self.n,
            nparams: self.nparams,
            terms: self.terms.iter().map(|(g, c)| (g.clone(), -c)).collect(),
        }
    }
}

impl Mul for &GroupAlgebraElement {
    type Output = GroupAlgebraElement;
    fn mul(self, rhs: &GroupAlgebraElement) -> GroupAlgebraElement {
        assert_eq!(self.n, rhs.n);
        assert_eq!(self.nparams, rhs.nparams, "parameter arity mismatch");
        let mut out = GroupAlgebraElement::zero(self.n, self.nparams);
        for (g, cg) in &self.terms {
            for (h, ch) in &rhs.terms {
                out.insert(g.compose(h), cg * ch);
            }
        }
        out
    }
}

/// `R_i` as a group-algebra element.
pub fn ga_reflection(n: usize, nparams: usize, i: usize) -> GroupAlgebraElement {
    GroupAlgebraElement::from_perm(SignedPerm::reflection(n, i), nparams)
}

/// `pi_ij` as a group-algebra element.
pub fn ga_transposition(n: usize, nparams: usize, i: usize, j: usize) -> GroupAlgebraElement {
    GroupAlgebraElement::from_perm(SignedPerm::transposition(n, i, j), nparams)
}

/// Product of reflections `R_{i_1} ... R_{i_k}` as one permutation.
pub fn reflection_product(n: usize, indices: &[usize]) -> SignedPerm {
    let mut g = SignedPerm::identity(n);
    for &i in indices {
        g = g.compose(&SignedPerm::reflection(n, i));
    }
    g
}

/// The involutions Q_ij of the B_3 group algebra (zero-based indices):
///
/// * Q_12 = (1 + R_1 + R_2 - R_1R_2) pi_12 / 2
/// * Q_13 = (R_1 + R_2 + R_3 - R_1R_2R_3) pi_13 / 2
/// * Q_23 = (1 + R_2 + R_3 - R_2R_3) pi_23 / 2
///
/// Symmetric in (i, j).
pub fn q_ij(i: usize, j: usize, nparams: usize) -> GroupAlgebraElement {
    assert!(i < 3 && j < 3 && i != j, "Q indices must lie in 1..=3");
    let (i, j) = (i.min(j), i.max(j));
    let n = 3;
    let one = GroupAlgebraElement::identity(n, nparams);
    let r = |k: usize| ga_reflection(n, nparams, k);
    let head = match (i, j) {
        (0, 1) => {
            let r1r2 = GroupAlgebraElement::from_perm(reflection_product(n, &[0, 1]), nparams);
            &(&(&one + &r(0)) + &r(1)) - &r1r2
        }
        (0, 2) => {
            let r123 = GroupAlgebraElement::from_perm(reflection_product(n, &[0, 1, 2]), nparams);
            &(&(&r(0) + &r(1)) + &r(2)) - &r123
        }
        (1, 2) => {
            let r2r3 = GroupAlgebraElement::from_perm(reflection_product(n, &[1, 2]), nparams);
            &(&(&one + &r(1)) + &r(2)) - &r2r3
        }
        _ => unreachable!(),
    };
    (&head * &ga_transposition(n, nparams, i, j)).scale(&rat(1, 2))
}

/// The five Jucys-Murphy elements of B_3: R_1, R_2, R_3,
/// m_2 = (1 + R_1R_2) pi_12 and m_3 = (1 + R_1R_3) pi_13 + (1 + R_2R_3) pi_23.
pub fn jucys_murphy(nparams: usize) -> Vec<GroupAlgebraElement> {
    let n = 3;
    let one = GroupAlgebraElement::identity(n, nparams);
    let pair = |i: usize, j: usize| {
        let rr = GroupAlgebraElement::from_perm(reflection_product(n, &[i, j]), nparams);
        &(&one + &rr) * &ga_transposition(n, nparams, i, j)
    };
    let m2 = pair(0, 1);
    let m3 = &pair(0, 2) + &pair(1, 2);
    vec![
        ga_reflection(n, nparams, 0),
        ga_reflection(n, nparams, 1),
        ga_reflection(n, nparams, 2),
        m2,
        m3,
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn x(i: usize) -> XPoly {
        XPoly::var(3, 2, i)
    }

    #[test]
    fn reflections_and_transpositions_act_by_substitution() {
        let r1 = SignedPerm::reflection(3, 0);
        // R_1 fixes x1^2 x2 and negates x1 x2
        let even = &(&x(0) * &x(0)) * &x(1);
        assert_eq!(r1.act(&even), even);
        let odd = &x(0) * &x(1);
        assert_eq!(r1.act(&odd), (&odd).neg());

        let pi12 = SignedPerm::transposition(3, 0, 1);
        let x1cubed = &(&x(0) * &x(0)) * &x(0);
        let x2cubed = &(&x(1) * &x(1)) * &x(1);
        assert_eq!(pi12.act(&x1cubed), x2cubed);
    }

    #[test]
    fn composite_r1_r2_pi12_sends_x1_to_minus_x2() {
        let g = reflection_product(3, &[0, 1]).compose(&SignedPerm::transposition(3, 0, 1));
        assert_eq!(g.act(&x(0)), (&x(1)).neg());
    }

    #[test]
    fn braid_relation_ri_piij() {
        // R_i pi_ij = pi_ij R_j as group elements
        let r1 = SignedPerm::reflection(3, 0);
        let r2 = SignedPerm::reflection(3, 1);
        let pi = SignedPerm::transposition(3, 0, 1);
        assert_eq!(r1.compose(&pi), pi.compose(&r2));
    }

    #[test]
    fn b3_has_48_elements() {
        assert_eq!(enumerate_group(3).len(), 48);
    }

    #[test]
    fn generators_are_involutions() {
        for g in [
            SignedPerm::reflection(3, 1),
            SignedPerm::transposition(3, 0, 2),
        ] {
            assert!(g.compose(&g).is_identity());
        }
    }

    #[test]
    fn q_elements_are_involutions() {
        let id = GroupAlgebraElement::identity(3, 2);
        for (i, j) in [(0, 1), (0, 2), (1, 2)] {
            let q = q_ij(i, j, 2);
            assert_eq!(&q * &q, id);
            assert_eq!(q, q_ij(j, i, 2));
        }
    }

    #[test]
    fn q_product_chains() {
        let q12 = q_ij(0, 1, 2);
        let q13 = q_ij(0, 2, 2);
        let q23 = q_ij(1, 2, 2);
        let lhs = &q12 * &q13;
        assert_eq!(lhs, &q23 * &q12);
        assert_eq!(lhs, &q13 * &q23);
        let lhs2 = &q12 * &q23;
        assert_eq!(lhs2, &q23 * &q13);
        assert_eq!(lhs2, &q13 * &q12);
    }

    #[test]
    fn q_intertwines_reflections() {
        // Q_12 R_2 = R_1 Q_12
        let q12 = q_ij(0, 1, 2);
        let r1 = ga_reflection(3, 2, 0);
        let r2 = ga_reflection(3, 2, 1);
        assert_eq!(&q12 * &r2, &r1 * &q12);
    }

    #[test]
    fn q_squared_identity() {
        // Q^2 = 3 + 3 {Q_12, Q_13} with Q = Q_12 + Q_13 + Q_23,
        // and all three anticommutators coincide
        let q12 = q_ij(0, 1, 2);
        let q13 = q_ij(0, 2, 2);
        let q23 = q_ij(1, 2, 2);
        let anti = q12.anticommutator(&q13);
        assert_eq!(anti, q13.anticommutator(&q23));
        assert_eq!(anti, q12.anticommutator(&q23));
        let q = &(&q12 + &q13) + &q23;
        let rhs = &GroupAlgebraElement::identity(3, 2).scale(&rat(3, 1)) + &anti.scale(&rat(3, 1));
        assert_eq!(&q * &q, rhs);
    }

    #[test]
    fn jucys_murphy_elements_commute_pairwise() {
        let jm = jucys_murphy(2);
        assert_eq!(jm.len(), 5);
        for u in &jm {
            for v in &jm {
                assert!(u.commutator(v).is_zero());
            }
        }
        // [R_1 R_2, m_2] = 0 in particular
        let r1r2 = GroupAlgebraElement::from_perm(reflection_product(3, &[0, 1]), 2);
        assert!(r1r2.commutator(&jm[3]).is_zero());
    }

    #[test]
    fn m2_annihilates_x1_plus_x2() {
        let jm = jucys_murphy(2);
        let f = &x(0) + &x(1);
        assert!(jm[3].act(&f).is_zero());
    }

    #[test]
    fn group_algebra_unit_laws() {
        let q12 = q_ij(0, 1, 2);
        let id = GroupAlgebraElement::identity(3, 2);
        assert_eq!(&q12 * &id, q12);
        assert_eq!(&id * &q12, q12);
    }

    fn arb_perm() -> impl Strategy<Value = SignedPerm> {
        (0usize..6, 0u8..8).prop_map(|(p, signs)| {
            let perms: [[u8; 3]; 6] = [
                [0, 1, 2],
                [0, 2, 1],
                [1, 0, 2],
                [1, 2, 0],
                [2, 0, 1],
                [2, 1, 0],
            ];
            SignedPerm {
                perm: SmallVec::from_slice(&perms[p]),
                signs,
            }
        })
    }

    prop_compose! {
        fn arb_xpoly()(terms in proptest::collection::vec(
            (proptest::array::uniform3(0u16..3), -3i64..=3), 0..5)) -> XPoly {
            let mut p = XPoly::zero(3, 2);
            for (exps, c) in terms {
                p.insert_term(Monomial::from_exponents(&exps), ParamPoly::int(2, c));
            }
            p
        }
    }

    proptest! {
        #[test]
        fn action_is_a_homomorphism(g in arb_perm(), h in arb_perm(), f in arb_xpoly()) {
            prop_assert_eq!(g.compose(&h).act(&f), g.act(&h.act(&f)));
        }

        #[test]
        fn action_respects_products(g in arb_perm(), f in arb_xpoly(), h in arb_xpoly()) {
            prop_assert_eq!(g.act(&(&f * &h)), &g.act(&f) * &g.act(&h));
        }

        #[test]
        fn algebra_product_matches_composed_action(f in arb_xpoly()) {
            // acting with u*v equals acting with v then u
            let u = q_ij(0, 1, 2);
            let v = q_ij(1, 2, 2);
            prop_assert_eq!((&u * &v).act(&f), u.act(&v.act(&f)));
        }

        #[test]
        fn inverse_composes_to_identity(g in arb_perm()) {
            prop_assert!(g.compose(&g.inverse()).is_identity());
            prop_assert!(g.inverse().compose(&g).is_identity());
        }
    }
}

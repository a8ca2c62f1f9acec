//! The real Clifford algebra Cl(n) with euclidean signature
//! (`e_i^2 = 1`, `e_i e_j = -e_j e_i` for i != j) and the module
//! `CliffordPoly = XPoly (x) Cl(n)` every operator acts on.
//!
//! Basis blades are subsets of {1..n} encoded as bitmasks with the
//! generators written in ascending order; products are reduced to that
//! normal form by counting transpositions.  Clifford generators commute
//! with the coefficient polynomials and with all group actions.

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::Zero;

use crate::exactring::{ParamPoly, Rational, XPoly};
use crate::hyperoct::SignedPerm;
use crate::opcalc::Operator;

/// Sign of the normal-form reduction of `e_A * e_B`.
///
/// Each generator of `B` is moved left past the generators of `A` that
/// exceed it; squares contribute +1.
pub fn product_sign(a: u8, b: u8) -> i8 {
    let mut sign = 1i8;
    for i in 0..8 {
        if b >> i & 1 == 1 {
            let higher = a >> (i + 1);
            if (higher.count_ones() & 1) == 1 {
                sign = -sign;
            }
        }
    }
    sign
}

/// Element of Cl(n) with Q[params] coefficients, keyed by basis blade.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CliffordElement {
    n: usize,
    nparams: usize,
    terms: BTreeMap<u8, ParamPoly>,
}

impl CliffordElement {
    pub fn zero(n: usize, nparams: usize) -> Self {
        assert!(n <= 8);
        CliffordElement {
            n,
            nparams,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(n: usize, nparams: usize) -> Self {
        Self::blade(n, nparams, 0)
    }

    /// The generator e_i (zero-based).
    pub fn unit(n: usize, nparams: usize, i: usize) -> Self {
        assert!(i < n);
        Self::blade(n, nparams, 1 << i)
    }

    /// The basis blade `e_S` for the subset encoded by `mask`.
    pub fn blade(n: usize, nparams: usize, mask: u8) -> Self {
        assert!(u32::from(mask) >> n == 0, "blade outside Cl({n})");
        let mut e = Self::zero(n, nparams);
        e.terms.insert(mask, ParamPoly::one(nparams));
        e
    }

    /// Ordered product `e_{i_1} e_{i_2} ... e_{i_k}` reduced to normal
    /// form; repeated indices square to one.
    pub fn units_product(n: usize, nparams: usize, indices: &[usize]) -> Self {
        let mut acc = Self::one(n, nparams);
        for &i in indices {
            acc = &acc * &Self::unit(n, nparams, i);
        }
        acc
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

    pub fn terms(&self) -> impl Iterator<Item = (&u8, &ParamPoly)> {
        self.terms.iter()
    }

    pub fn insert(&mut self, mask: u8, c: ParamPoly) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(mask) {
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
        CliffordElement {
            n: self.n,
            nparams: self.nparams,
            terms: self.terms.iter().map(|(m, v)| (*m, v.scale(c))).collect(),
        }
    }

    pub fn scale_param(&self, c: &ParamPoly) -> Self {
        let mut out = Self::zero(self.n, self.nparams);
        for (m, v) in &self.terms {
            out.insert(*m, v * c);
        }
        out
    }

    pub fn substitute_params(&self, assignment: &[Option<Rational>]) -> Self {
        let mut out = Self::zero(self.n, self.nparams);
        for (m, v) in &self.terms {
            out.insert(*m, v.substitute(assignment));
        }
        out
    }
}

impl Add for &CliffordElement {
    type Output = CliffordElement;
    fn add(self, rhs: &CliffordElement) -> CliffordElement {
        assert_eq!(self.n, rhs.n);
        assert_eq!(self.nparams, rhs.nparams, "parameter arity mismatch");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.insert(*m, c.clone());
        }
        out
    }
}

impl Sub for &CliffordElement {
    type Output = CliffordElement;
    fn sub(self, rhs: &CliffordElement) -> CliffordElement {
        assert_eq!(self.n, rhs.n);
        assert_eq!(self.nparams, rhs.nparams, "parameter arity mismatch");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.insert(*m, -c);
        }
        out
    }
}

impl Neg for &CliffordElement {
    type Output = CliffordElement;
    fn neg(self) -> CliffordElement {
        CliffordElement {
            n: self.n,
            nparams: self.nparams,
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }
}

impl Mul for &CliffordElement {
    type Output = CliffordElement;
    fn mul(self, rhs: &CliffordElement) -> CliffordElement {
        assert_eq!(self.n, rhs.n);
        assert_eq!(self.nparams, rhs.nparams, "parameter arity mismatch");
        let mut out = CliffordElement::zero(self.n, self.nparams);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                let sign = product_sign(*ma, *mb);
                let c = ca * cb;
                out.insert(ma ^ mb, if sign < 0 { -&c } else { c });
            }
        }
        out
    }
}

/// Element of `XPoly (x) Cl(n)`: one polynomial component per blade.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CliffordPoly {
    n: usize,
    nparams: usize,
    components: BTreeMap<u8, XPoly>,
}

impl CliffordPoly {
    pub fn zero(n: usize, nparams: usize) -> Self {
        CliffordPoly {
            n,
            nparams,
            components: BTreeMap::new(),
        }
    }

    /// Embed an ordinary polynomial as the scalar component.
    pub fn scalar(p: XPoly) -> Self {
        let mut out = Self::zero(p.nvars(), p.nparams());
        if !p.is_zero() {
            out.components.insert(0, p);
        }
        out
    }

    pub fn term(n: usize, mask: u8, p: XPoly) -> Self {
        let mut out = Self::zero(n, p.nparams());
        out.set_component(mask, p);
        out
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn nparams(&self) -> usize {
        self.nparams
    }

    pub fn is_zero(&self) -> bool {
        self.components.is_empty()
    }

    pub fn components(&self) -> impl Iterator<Item = (&u8, &XPoly)> {
        self.components.iter()
    }

    pub fn component(&self, mask: u8) -> Option<&XPoly> {
        self.components.get(&mask)
    }

    pub fn set_component(&mut self, mask: u8, p: XPoly) {
        if p.is_zero() {
            self.components.remove(&mask);
        } else {
            self.components.insert(mask, p);
        }
    }

    pub fn add_component(&mut self, mask: u8, p: &XPoly) {
        if p.is_zero() {
            return;
        }
        match self.components.entry(mask) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(p.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let v = e.get() + p;
                if v.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = v;
                }
            }
        }
    }

    /// Apply a polynomial map componentwise.
    pub fn map_components<F: Fn(&XPoly) -> XPoly>(&self, f: F) -> Self {
        let mut out = Self::zero(self.n, self.nparams);
        for (mask, p) in &self.components {
            out.set_component(*mask, f(p));
        }
        out
    }

    /// Group elements act on the polynomial part only; blades are fixed.
    pub fn act(&self, g: &SignedPerm) -> Self {
        self.map_components(|p| g.act(p))
    }

    /// Left multiplication by a Clifford element.
    pub fn mul_element_left(&self, e: &CliffordElement) -> Self {
        assert_eq!(self.n, e.n());
        assert_eq!(self.nparams, e.nparams(), "parameter arity mismatch");
        let mut out = Self::zero(self.n, self.nparams);
        for (emask, coeff) in e.terms() {
            for (cmask, p) in &self.components {
                let sign = product_sign(*emask, *cmask);
                let mut q = p.scale_param(coeff);
                if sign < 0 {
                    q = (&q).neg();
                }
                out.add_component(emask ^ cmask, &q);
            }
        }
        out
    }

    pub fn scale_param(&self, c: &ParamPoly) -> Self {
        self.map_components(|p| p.scale_param(c))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        self.map_components(|p| p.scale(c))
    }

    pub fn substitute_params(&self, assignment: &[Option<Rational>]) -> Self {
        self.map_components(|p| p.substitute_params(assignment))
    }
}

impl Add for &CliffordPoly {
    type Output = CliffordPoly;
    fn add(self, rhs: &CliffordPoly) -> CliffordPoly {
        assert_eq!(self.n, rhs.n);
        assert_eq!(self.nparams, rhs.nparams, "parameter arity mismatch");
        let mut out = self.clone();
        for (mask, p) in &rhs.components {
            out.add_component(*mask, p);
        }
        out
    }
}

impl Sub for &CliffordPoly {
    type Output = CliffordPoly;
    fn sub(self, rhs: &CliffordPoly) -> CliffordPoly {
        assert_eq!(self.n, rhs.n);
        assert_eq!(self.nparams, rhs.nparams, "parameter arity mismatch");
        let mut out = self.clone();
        for (mask, p) in &rhs.components {
            out.add_component(*mask, &p.neg());
        }
        out
    }
}

impl Neg for &CliffordPoly {
    type Output = CliffordPoly;
    fn neg(self) -> CliffordPoly {
        self.map_components(|p| p.neg())
    }
}

impl Mul for &CliffordPoly {
    type Output = CliffordPoly;
    fn mul(self, rhs: &CliffordPoly) -> CliffordPoly {
        assert_eq!(self.n, rhs.n);
        assert_eq!(self.nparams, rhs.nparams, "parameter arity mismatch");
        let mut out = CliffordPoly::zero(self.n, self.nparams);
        for (ma, pa) in &self.components {
            for (mb, pb) in &rhs.components {
                let sign = product_sign(*ma, *mb);
                let mut q = pa * pb;
                if sign < 0 {
                    q = (&q).neg();
                }
                out.add_component(ma ^ mb, &q);
            }
        }
        out
    }
}

/// The symmetry `Z_i = e_i R_i`: reflect, then multiply by e_i.
pub fn z_i(n: usize, nparams: usize, i: usize) -> Operator {
    Operator::compose(vec![
        Operator::mul_element(CliffordElement::unit(n, nparams, i)),
        Operator::perm(SignedPerm::reflection(n, i)),
    ])
}

/// `W_ij = ((e_i - e_j) pi_ij + (e_i + e_j) R_i R_j pi_ij) / 2`.
pub fn w_ij(n: usize, nparams: usize, i: usize, j: usize) -> Operator {
    assert!(i != j);
    let ei = CliffordElement::unit(n, nparams, i);
    let ej = CliffordElement::unit(n, nparams, j);
    let pi = SignedPerm::transposition(n, i, j);
    let rr_pi = SignedPerm::reflection(n, i)
        .compose(&SignedPerm::reflection(n, j))
        .compose(&pi);
    Operator::scale_rat(
        crate::exactring::rat(1, 2),
        Operator::sum(vec![
            Operator::compose(vec![Operator::mul_element(&ei - &ej), Operator::perm(pi)]),
            Operator::compose(vec![
                Operator::mul_element(&ei + &ej),
                Operator::perm(rr_pi),
            ]),
        ]),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactring::rat;
    use proptest::prelude::*;

    fn e(i: usize) -> CliffordElement {
        CliffordElement::unit(3, 2, i)
    }

    #[test]
    fn generators_anticommute_and_square_to_one() {
        let e12 = &e(0) * &e(1);
        assert_eq!(&e(1) * &e(0), (&e12).neg());
        assert_eq!(&e(0) * &e(0), CliffordElement::one(3, 2));
    }

    #[test]
    fn blade_product_contracts() {
        // (e1 e2)(e2 e3) = e1 e3
        let lhs = &(&e(0) * &e(1)) * &(&e(1) * &e(2));
        assert_eq!(lhs, &e(0) * &e(2));
    }

    #[test]
    fn two_blades_square_to_minus_one() {
        let e12 = &e(0) * &e(1);
        assert_eq!(&e12 * &e12, CliffordElement::one(3, 2).scale(&rat(-1, 1)));
    }

    #[test]
    fn ordered_units_product_tracks_signs() {
        // e2 e1 = -e1e2; e2 e3 e1 = +e1e2e3
        let descending = CliffordElement::units_product(3, 2, &[1, 0]);
        assert_eq!(descending, (&(&e(0) * &e(1))).neg());
        let cyclic = CliffordElement::units_product(3, 2, &[1, 2, 0]);
        assert_eq!(cyclic, CliffordElement::blade(3, 2, 0b111));
    }

    #[test]
    fn cl3_basis_is_eight_blades() {
        // products of blades stay in the basis up to sign
        let mut blades = std::collections::BTreeSet::new();
        for a in 0u8..8 {
            for b in 0u8..8 {
                let p = &CliffordElement::blade(3, 2, a) * &CliffordElement::blade(3, 2, b);
                let ts: Vec<_> = p.terms().collect();
                assert_eq!(ts.len(), 1);
                blades.insert(*ts[0].0);
            }
        }
        assert_eq!(blades.len(), 8);
    }

    #[test]
    fn scalar_embedding_is_ring_compatible() {
        let p = XPoly::var(3, 2, 0);
        let q = XPoly::var(3, 2, 1);
        let lhs = CliffordPoly::scalar(&p + &q);
        let rhs = &CliffordPoly::scalar(p) + &CliffordPoly::scalar(q);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn left_multiplication_by_blades() {
        let f = CliffordPoly::term(3, 0b011, XPoly::var(3, 2, 0));
        let g = f.mul_element_left(&e(1));
        // e2 * (x1 e1e2) = x1 e2e1e2 = -x1 e1
        let minus_x1 = XPoly::var(3, 2, 0).scale(&rat(-1, 1));
        assert_eq!(g, CliffordPoly::term(3, 0b001, minus_x1));
    }

    fn arb_element() -> impl Strategy<Value = CliffordElement> {
        proptest::collection::vec((0u8..8, -3i64..=3), 0..5).prop_map(|terms| {
            let mut e = CliffordElement::zero(3, 2);
            for (mask, c) in terms {
                e.insert(mask, ParamPoly::int(2, c));
            }
            e
        })
    }

    proptest! {
        #[test]
        fn multiplication_is_associative(
            u in arb_element(), v in arb_element(), w in arb_element()
        ) {
            prop_assert_eq!(&(&u * &v) * &w, &u * &(&v * &w));
        }

        #[test]
        fn left_module_structure(u in arb_element(), v in arb_element()) {
            let f = CliffordPoly::term(3, 0b101, XPoly::var(3, 2, 2));
            prop_assert_eq!(
                f.mul_element_left(&v).mul_element_left(&u),
                f.mul_element_left(&(&u * &v))
            );
        }
    }
}

//! Exact arithmetic foundation: rationals, polynomials in the symbolic
//! parameters, polynomials in x_1..x_n over those, and the exact
//! divisions by x_i, x_i - x_j and x_i + x_j that divided-difference
//! operators require.
//!
//! Coefficients live in the polynomial ring Q[params], never in a
//! fraction field: every identity handled by this crate is polynomial
//! in the parameters, so parameter division is never needed.  Exponent
//! vectors are dense and ordered graded-lexicographically.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use smallvec::SmallVec;

/// Exact rational scalar.
pub type Rational = num_rational::BigRational;

/// `n/d` as a [`Rational`].
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Dense exponent vector, ordered by total degree then lexicographically.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(SmallVec<[u16; 4]>);

impl Monomial {
    pub fn constant(len: usize) -> Self {
        Monomial(SmallVec::from_elem(0, len))
    }

    /// The monomial with a single exponent 1 in slot `i`.
    pub fn unit(len: usize, i: usize) -> Self {
        let mut m = Self::constant(len);
        m.0[i] = 1;
        m
    }

    pub fn from_exponents(exps: &[u16]) -> Self {
        Monomial(SmallVec::from_slice(exps))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn exponents(&self) -> &[u16] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| u32::from(e)).sum()
    }

    pub fn is_constant(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    fn product(&self, other: &Self) -> Self {
        debug_assert_eq!(self.len(), other.len());
        Monomial(
            self.0
                .iter()
                .zip(other.0.iter())
                .map(|(&a, &b)| a + b)
                .collect(),
        )
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// The three linear divisors that arise in Dunkl operators.
///
/// Indices are zero-based; `Diff(i, j)` divides by `x_i - x_j` and
/// `Sum(i, j)` by `x_i + x_j`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum LinearDivisor {
    Var(usize),
    Diff(usize, usize),
    Sum(usize, usize),
}

impl fmt::Display for LinearDivisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LinearDivisor::Var(i) => write!(f, "x{}", i + 1),
            LinearDivisor::Diff(i, j) => write!(f, "x{} - x{}", i + 1, j + 1),
            LinearDivisor::Sum(i, j) => write!(f, "x{} + x{}", i + 1, j + 1),
        }
    }
}

/// Division had a nonzero remainder.  This always signals a
/// misconstructed operator upstream; results are never truncated.
#[derive(Clone, PartialEq, Eq, Debug, thiserror::Error)]
#[error("exact division by {divisor} left a nonzero remainder")]
pub struct ExactnessError {
    pub divisor: LinearDivisor,
}

/// Polynomial in the symbolic parameters with rational coefficients.
///
/// Zero-coefficient terms are never stored, so equal polynomials have
/// identical term maps.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ParamPoly {
    nparams: usize,
    terms: BTreeMap<Monomial, Rational>,
}

impl ParamPoly {
    pub fn zero(nparams: usize) -> Self {
        ParamPoly {
            nparams,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nparams: usize, c: Rational) -> Self {
        let mut p = Self::zero(nparams);
        if !c.is_zero() {
            p.terms.insert(Monomial::constant(nparams), c);
        }
        p
    }

    pub fn one(nparams: usize) -> Self {
        Self::constant(nparams, Rational::one())
    }

    pub fn int(nparams: usize, n: i64) -> Self {
        Self::constant(nparams, rat(n, 1))
    }

    /// A single term `c * m`; arity is taken from the monomial length.
    pub fn monomial(m: Monomial, c: Rational) -> Self {
        let mut p = Self::zero(m.len());
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    /// The k-th declared parameter as a polynomial.
    pub fn param(nparams: usize, k: usize) -> Self {
        assert!(k < nparams, "parameter index {k} out of range 0..{nparams}");
        let mut p = Self::zero(nparams);
        p.terms.insert(Monomial::unit(nparams, k), Rational::one());
        p
    }

    pub fn nparams(&self) -> usize {
        self.nparams
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    /// The rational value of a constant polynomial, if it is one.
    pub fn as_constant(&self) -> Option<Rational> {
        if self.terms.is_empty() {
            return Some(Rational::zero());
        }
        if self.terms.len() == 1 {
            let (m, c) = self.terms.iter().next().unwrap();
            if m.is_constant() {
                return Some(c.clone());
            }
        }
        None
    }

    fn insert(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let v = e.get() + c;
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
            return Self::zero(self.nparams);
        }
        ParamPoly {
            nparams: self.nparams,
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    /// Partial evaluation: `assignment[k] = Some(v)` sends parameter k
    /// to v, `None` leaves it symbolic.
    pub fn substitute(&self, assignment: &[Option<Rational>]) -> Self {
        assert_eq!(
            assignment.len(),
            self.nparams,
            "assignment arity mismatch: {} vs {}",
            assignment.len(),
            self.nparams
        );
        let mut out = Self::zero(self.nparams);
        for (m, c) in &self.terms {
            let mut coeff = c.clone();
            let mut exps = SmallVec::<[u16; 4]>::from_slice(m.exponents());
            for (k, slot) in assignment.iter().enumerate() {
                if let Some(v) = slot {
                    for _ in 0..exps[k] {
                        coeff = &coeff * v;
                    }
                    exps[k] = 0;
                }
            }
            out.insert(Monomial(exps), coeff);
        }
        out
    }
}

impl Add for &ParamPoly {
    type Output = ParamPoly;
    fn add(self, rhs: &ParamPoly) -> ParamPoly {
        assert_eq!(self.nparams, rhs.nparams, "parameter arity mismatch");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.insert(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &ParamPoly {
    type Output = ParamPoly;
    fn sub(self, rhs: &ParamPoly) -> ParamPoly {
        assert_eq!(self.nparams, rhs.nparams, "parameter arity mismatch");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.insert(m.clone(), -c.clone());
        }
        out
    }
}

impl Neg for &ParamPoly {
    type Output = ParamPoly;
    fn neg(self) -> ParamPoly {
        ParamPoly {
            nparams: self.nparams,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), -c.clone()))
                .collect(),
        }
    }
}

impl Mul for &ParamPoly {
    type Output = ParamPoly;
    fn mul(self, rhs: &ParamPoly) -> ParamPoly {
        assert_eq!(self.nparams, rhs.nparams, "parameter arity mismatch");
        let mut out = ParamPoly::zero(self.nparams);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.insert(ma.product(mb), ca * cb);
            }
        }
        out
    }
}

/// Multivariate polynomial in x_1..x_n with [`ParamPoly`] coefficients.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct XPoly {
    nvars: usize,
    nparams: usize,
    terms: BTreeMap<Monomial, ParamPoly>,
}

impl XPoly {
    pub fn zero(nvars: usize, nparams: usize) -> Self {
        XPoly {
            nvars,
            nparams,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize, nparams: usize) -> Self {
        Self::from_coeff(nvars, ParamPoly::one(nparams))
    }

    /// A constant polynomial with the given coefficient.
    pub fn from_coeff(nvars: usize, coeff: ParamPoly) -> Self {
        let mut p = Self::zero(nvars, coeff.nparams());
        if !coeff.is_zero() {
            p.terms.insert(Monomial::constant(nvars), coeff);
        }
        p
    }

    /// The variable x_i (zero-based index).
    pub fn var(nvars: usize, nparams: usize, i: usize) -> Self {
        assert!(i < nvars, "variable index {i} out of range 0..{nvars}");
        let mut p = Self::zero(nvars, nparams);
        p.terms
            .insert(Monomial::unit(nvars, i), ParamPoly::one(nparams));
        p
    }

    pub fn monomial(nvars: usize, m: Monomial, coeff: ParamPoly) -> Self {
        assert_eq!(m.len(), nvars);
        let mut p = Self::zero(nvars, coeff.nparams());
        if !coeff.is_zero() {
            p.terms.insert(m, coeff);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn nparams(&self) -> usize {
        self.nparams
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &ParamPoly)> {
        self.terms.iter()
    }

    pub fn insert_term(&mut self, m: Monomial, coeff: ParamPoly) {
        debug_assert_eq!(m.len(), self.nvars);
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let v = e.get() + &coeff;
                if v.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = v;
                }
            }
        }
    }

    fn assert_compatible(&self, rhs: &Self) {
        assert_eq!(self.nvars, rhs.nvars, "variable count mismatch");
        assert_eq!(self.nparams, rhs.nparams, "parameter arity mismatch");
    }

    pub fn scale_param(&self, c: &ParamPoly) -> Self {
        assert_eq!(self.nparams, c.nparams(), "parameter arity mismatch");
        if c.is_zero() {
            return Self::zero(self.nvars, self.nparams);
        }
        let mut out = Self::zero(self.nvars, self.nparams);
        for (m, v) in &self.terms {
            out.insert_term(m.clone(), v * c);
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars, self.nparams);
        }
        XPoly {
            nvars: self.nvars,
            nparams: self.nparams,
            terms: self
                .terms
                .iter()
                .map(|(m, v)| (m.clone(), v.scale(c)))
                .collect(),
        }
    }

    /// d/dx_i.
    pub fn partial(&self, i: usize) -> Self {
        assert!(i < self.nvars);
        let mut out = Self::zero(self.nvars, self.nparams);
        for (m, c) in &self.terms {
            let e = m.exponents()[i];
            if e == 0 {
                continue;
            }
            let mut exps = SmallVec::<[u16; 4]>::from_slice(m.exponents());
            exps[i] -= 1;
            out.insert_term(Monomial(exps), c.scale(&rat(i64::from(e), 1)));
        }
        out
    }

    /// Exact division; `Err` when the divisor does not divide exactly.
    pub fn divide_exact(&self, d: LinearDivisor) -> Result<XPoly, ExactnessError> {
        match d {
            LinearDivisor::Var(i) => {
                assert!(i < self.nvars);
                let mut out = Self::zero(self.nvars, self.nparams);
                for (m, c) in &self.terms {
                    if m.exponents()[i] == 0 {
                        return Err(ExactnessError { divisor: d });
                    }
                    let mut exps = SmallVec::<[u16; 4]>::from_slice(m.exponents());
                    exps[i] -= 1;
                    out.insert_term(Monomial(exps), c.clone());
                }
                Ok(out)
            }
            LinearDivisor::Diff(i, j) => self.divide_binomial(d, i, j, 1),
            LinearDivisor::Sum(i, j) => self.divide_binomial(d, i, j, -1),
        }
    }

    /// Synthetic division by `x_i - t*x_j` with `t = ±1`.
    fn divide_binomial(
        &self,
        d: LinearDivisor,
        i: usize,
        j: usize,
        t: i64,
    ) -> Result<XPoly, ExactnessError> {
        assert!(i < self.nvars && j < self.nvars && i != j);
        if self.is_zero() {
            return Ok(self.clone());
        }
        // Slice into coefficients of x_i^k, each a polynomial in the
        // remaining variables (x_i exponent zeroed).
        let mut slices: BTreeMap<u16, XPoly> = BTreeMap::new();
        for (m, c) in &self.terms {
            let k = m.exponents()[i];
            let mut exps = SmallVec::<[u16; 4]>::from_slice(m.exponents());
            exps[i] = 0;
            slices
                .entry(k)
                .or_insert_with(|| Self::zero(self.nvars, self.nparams))
                .insert_term(Monomial(exps), c.clone());
        }
        let top = *slices.keys().next_back().unwrap();
        let xj = Self::var(self.nvars, self.nparams, j).scale(&rat(t, 1));
        let mut quotient = Self::zero(self.nvars, self.nparams);
        let mut carry = Self::zero(self.nvars, self.nparams);
        for k in (1..=top).rev() {
            let ck = slices
                .get(&k)
                .cloned()
                .unwrap_or_else(|| Self::zero(self.nvars, self.nparams));
            carry = &ck + &(&xj * &carry);
            // carry is the coefficient of x_i^{k-1} in the quotient
            for (m, c) in &carry.terms {
                let mut exps = SmallVec::<[u16; 4]>::from_slice(m.exponents());
                debug_assert_eq!(exps[i], 0);
                exps[i] = k - 1;
                quotient.insert_term(Monomial(exps), c.clone());
            }
        }
        let c0 = slices
            .get(&0)
            .cloned()
            .unwrap_or_else(|| Self::zero(self.nvars, self.nparams));
        let remainder = &c0 + &(&xj * &carry);
        if remainder.is_zero() {
            Ok(quotient)
        } else {
            Err(ExactnessError { divisor: d })
        }
    }

    /// Parameter substitution applied to every coefficient.
    pub fn substitute_params(&self, assignment: &[Option<Rational>]) -> Self {
        let mut out = Self::zero(self.nvars, self.nparams);
        for (m, c) in &self.terms {
            out.insert_term(m.clone(), c.substitute(assignment));
        }
        out
    }
}

impl Add for &XPoly {
    type Output = XPoly;
    fn add(self, rhs: &XPoly) -> XPoly {
        self.assert_compatible(rhs);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.insert_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &XPoly {
    type Output = XPoly;
    fn sub(self, rhs: &XPoly) -> XPoly {
        self.assert_compatible(rhs);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.insert_term(m.clone(), -c);
        }
        out
    }
}

impl Neg for &XPoly {
    type Output = XPoly;
    fn neg(self) -> XPoly {
        XPoly {
            nvars: self.nvars,
            nparams: self.nparams,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Mul for &XPoly {
    type Output = XPoly;
    fn mul(self, rhs: &XPoly) -> XPoly {
        self.assert_compatible(rhs);
        let mut out = XPoly::zero(self.nvars, self.nparams);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.insert_term(ma.product(mb), ca * cb);
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn a() -> ParamPoly {
        ParamPoly::param(2, 0)
    }

    fn b() -> ParamPoly {
        ParamPoly::param(2, 1)
    }

    fn x(i: usize) -> XPoly {
        XPoly::var(3, 2, i)
    }

    #[test]
    fn difference_of_squares() {
        let lhs = &(&x(0) + &x(1)) * &(&x(0) - &x(1));
        let rhs = &(&x(0) * &x(0)) - &(&x(1) * &x(1));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn multiplication_by_zero_annihilates() {
        let p = &(&x(0) * &x(1)) + &x(2);
        let z = XPoly::zero(3, 2);
        assert!((&p * &z).is_zero());
    }

    #[test]
    fn parameter_coefficients_commute() {
        let lhs = &x(0).scale_param(&a()) * &x(0).scale_param(&b());
        let rhs = (&x(0) * &x(0)).scale_param(&(&a() * &b()));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn divide_difference_of_squares() {
        let p = &(&x(0) * &x(0)) - &(&x(1) * &x(1));
        let q = p.divide_exact(LinearDivisor::Diff(0, 1)).unwrap();
        assert_eq!(q, &x(0) + &x(1));
    }

    #[test]
    fn divide_odd_part_by_var() {
        // (1 - R_1) x1^3 = 2 x1^3, divided by x1
        let x13 = &(&x(0) * &x(0)) * &x(0);
        let p = x13.scale(&rat(2, 1));
        let q = p.divide_exact(LinearDivisor::Var(0)).unwrap();
        assert_eq!(q, (&x(0) * &x(0)).scale(&rat(2, 1)));
    }

    #[test]
    fn indivisible_input_is_an_error() {
        let err = x(0).divide_exact(LinearDivisor::Sum(0, 1)).unwrap_err();
        assert_eq!(err.divisor, LinearDivisor::Sum(0, 1));
    }

    #[test]
    fn substitute_params_partial_and_full() {
        // a*x1 + b*x2 at a = 0
        let p = &x(0).scale_param(&a()) + &x(1).scale_param(&b());
        let got = p.substitute_params(&[Some(Rational::zero()), None]);
        assert_eq!(got, x(1).scale_param(&b()));

        // (a^2 + b) at a = 1/2, b = 3/4
        let c = &(&a() * &a()) + &b();
        let v = c.substitute(&[Some(rat(1, 2)), Some(rat(3, 4))]);
        assert_eq!(v, ParamPoly::one(2));

        // empty assignment is the identity
        let q = x(0).substitute_params(&[None, None]);
        assert_eq!(q, x(0));
    }

    #[test]
    fn degree_is_additive() {
        let p = &(&x(0) * &x(1)) + &x(2);
        let q = &x(0) + &XPoly::one(3, 2);
        assert_eq!(
            (&p * &q).degree(),
            Some(p.degree().unwrap() + q.degree().unwrap())
        );
    }

    #[test]
    #[should_panic(expected = "variable count mismatch")]
    fn mixed_variable_counts_panic() {
        let p = XPoly::var(2, 2, 0);
        let q = XPoly::var(3, 2, 0);
        let _ = &p + &q;
    }

    #[test]
    #[should_panic(expected = "parameter arity mismatch")]
    fn mixed_parameter_lists_panic() {
        let p = XPoly::var(3, 2, 0);
        let q = XPoly::var(3, 3, 0);
        let _ = &p * &q;
    }

    #[test]
    fn graded_lex_order() {
        let c = Monomial::constant(3);
        let x1 = Monomial::unit(3, 0);
        let x3 = Monomial::unit(3, 2);
        let x1x1 = Monomial::from_exponents(&[2, 0, 0]);
        assert!(c < x3 && x3 < x1 && x1 < x1x1);
    }

    prop_compose! {
        fn arb_param()(c in -4i64..=4, k in 0usize..2, deg in 0u16..2) -> ParamPoly {
            let mut m = Monomial::constant(2);
            m.0[k] = deg;
            let mut p = ParamPoly::zero(2);
            p.insert(m, rat(c, 1));
            p
        }
    }

    prop_compose! {
        fn arb_xpoly()(terms in proptest::collection::vec(
            (proptest::array::uniform3(0u16..3), arb_param()), 0..6)) -> XPoly {
            let mut p = XPoly::zero(3, 2);
            for (exps, c) in terms {
                p.insert_term(Monomial::from_exponents(&exps), c);
            }
            p
        }
    }

    proptest! {
        #[test]
        fn ring_axioms(p in arb_xpoly(), q in arb_xpoly(), r in arb_xpoly()) {
            prop_assert_eq!(&(&p + &q) + &r, &p + &(&q + &r));
            prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
            prop_assert_eq!(&p * &(&q + &r), &(&p * &q) + &(&p * &r));
            prop_assert_eq!(&p * &q, &q * &p);
        }

        #[test]
        fn division_inverts_multiplication(q in arb_xpoly()) {
            for d in [LinearDivisor::Var(0), LinearDivisor::Diff(0, 1), LinearDivisor::Sum(1, 2)] {
                let divisor = match d {
                    LinearDivisor::Var(i) => XPoly::var(3, 2, i),
                    LinearDivisor::Diff(i, j) => &XPoly::var(3, 2, i) - &XPoly::var(3, 2, j),
                    LinearDivisor::Sum(i, j) => &XPoly::var(3, 2, i) + &XPoly::var(3, 2, j),
                };
                let p = &divisor * &q;
                prop_assert_eq!(p.divide_exact(d).unwrap(), q.clone());
            }
        }
    }
}

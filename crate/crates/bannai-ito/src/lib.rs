//! Exact operator calculus on a graded polynomial module.
//!
//! The crate builds the hyperoctahedral and Clifford realizations of the
//! Lie superalgebra osp(1,2) out of Dunkl operators, constructs the
//! elements that centralize each realization, and certifies operator
//! identities by exact action on every module basis element up to a
//! degree bound.  All arithmetic is over Q extended by symbolic
//! parameters; there is no floating point anywhere.
//!
//! Layering, bottom to top:
//!
//! * [`exactring`] — rationals, parameter polynomials, x-polynomials and
//!   the exact linear divisions the Dunkl operators need;
//! * [`hyperoct`] — signed permutations, their action, and the group
//!   algebra of B_n;
//! * [`clifford`] — Cl(n) with euclidean signature and the module
//!   `polynomials ⊗ Cl(n)`;
//! * [`dunkl`] — the B_n and Z_2^n Dunkl operators and their commutator
//!   fields;
//! * [`opcalc`] — compositional operators, brackets, and extensional
//!   equality certificates;
//! * [`bannaiito`] — the osp(1,2) realizations, centralizer elements,
//!   closed forms, and the named verification suites.

pub mod bannaiito;
pub mod clifford;
pub mod dunkl;
pub mod exactring;
pub mod hyperoct;
pub mod opcalc;

pub use exactring::{ExactnessError, LinearDivisor, Monomial, ParamPoly, Rational, XPoly};
pub use hyperoct::{GroupAlgebraElement, SignedPerm};
pub use opcalc::{BasisElement, EqualityCertificate, ModuleShape, Operator};

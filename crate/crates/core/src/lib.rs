//! Exact enumeration and verification engine for a family of signed
//! combinatorial identities relating Catalan numbers, tangent and secant
//! (zigzag) numbers, and their q-analogues.
//!
//! Everything here is exact: integers are arbitrary precision
//! ([`num_bigint::BigInt`]) and polynomial identities are checked
//! coefficient-by-coefficient on [`LaurentPoly`]. No floating point, no
//! probabilistic shortcuts — an identity "verifies" only if both sides are
//! literally equal.
//!
//! The crate is organized around three kinds of objects and the involutions
//! that act on them:
//!
//! * [`words`] — words with distinct positive letters, their inversion and
//!   descent statistics, and generators for unimodal and alternating words;
//! * [`compositions`] — ordered set compositions of `{1..m}` into blocks of
//!   odd size;
//! * [`trees`] — complete binary trees whose node labels are unimodal words
//!   forming an odd set composition, together with the sign-reversing
//!   involution [`kappa`] on them;
//! * [`pairs`] — pairs of complementary words on `{1..m}` with three
//!   involutions ([`pairs::f_involution`], [`pairs::g_involution`],
//!   [`pairs::h_involution`]) that cancel signed terms in alternating-sum
//!   identities;
//! * [`numbers`] and [`qlaurent`] — the integer and q-polynomial sequences
//!   the signed enumerations collapse to;
//! * [`harness`] — identity verification and involution audits with
//!   machine-readable reports.

pub mod compositions;
pub mod harness;
pub mod kappa;
pub mod numbers;
pub mod pairs;
pub mod qlaurent;
pub mod trees;
pub mod words;

pub use compositions::SetComposition;
pub use harness::{AuditMode, AuditReport, Family, IdentityId, IdentityReport, ReportFormat};
pub use kappa::{Indicator, KappaCase};
pub use pairs::PermutationPair;
pub use qlaurent::LaurentPoly;
pub use trees::LabeledTree;
pub use words::{AlternatingMode, Word};

//! Identity verification and involution audits with machine-readable
//! reports.
//!
//! [`verify`] checks one instance of one of the ten supported
//! identities ([`IdentityId`]) by computing both sides exactly and
//! comparing; [`audit`] drives one of the four involutions
//! ([`Family`]) across a whole population — exhaustively or on seeded
//! random samples — and records every property violation it finds.
//! Both return plain data ([`IdentityReport`], [`AuditReport`]) that
//! [`render_identity_reports`] and [`render_audit_reports`] serialize
//! to JSON, CSV, or human-readable text ([`ReportFormat`]),
//! byte-identically across runs.

mod audit;
mod identities;
mod report;

pub use audit::{audit, AuditMode, AuditReport, Family, Violation};
pub use identities::{verify, IdentityId, IdentityReport, Method, VerifyError};
pub use report::{render_audit_reports, render_identity_reports, ReportFormat};

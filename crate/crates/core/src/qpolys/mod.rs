//! Polynomial families in z over Q(u), their number sequences, and
//! exhaustive identity checks.

mod families;
pub mod verify;
mod zpoly;

pub use families::{
    a_polys, bernoulli_numbers, bernoulli_polys, conversion_coeffs_a, euler_cap_numbers, euler_polys,
    euler_small_numbers, family, family_in_base, m_polys, seed_cache, tangent_secant_numbers, FamilyKind,
    FamilyTable, Method,
};
pub use zpoly::{delta_q, delta_q_pow, pochhammer_poly, ZPoly};
pub use verify::{positivity_scan, verify_identity, Finding, IdentityReport, IdentityTag, Mismatch, PositivityReport};

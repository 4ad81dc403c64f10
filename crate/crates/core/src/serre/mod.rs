//! Tameness certificates.
//!
//! A certificate is a derivation tree whose leaves are shifted partition
//! modules `Q[P](s)` with `P` tame, and whose inner nodes take subobjects,
//! quotients and extensions along explicit maps. [`verify`] checks every
//! step; [`transform`] turns a certificate for `M` over the split ring into
//! one for `F₀(M)` or `F₁(M)` over the base ring, and [`harness`] samples
//! random certificates to test the closure properties of both functors.

mod certificate;
mod sample;
mod transform;

pub use certificate::{shift_certificate, type_level, verify, zero_certificate, CertNode, Certificate};
pub use sample::{
    campaign, campaign_entry, harness, in_pool, sample_rng, CampaignEntry, DegreeOutcome, HarnessConfig,
    HarnessReport, Property, PropertyReport, Sampler, Shape, MAX_ENTRY_WEIGHT, MAX_LEVEL,
};
pub use transform::{transform, transform_verified, TraceStep, Transformed};

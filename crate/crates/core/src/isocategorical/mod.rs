//! Isocategorical groups: twisted groups `G_b`, rigidity certificates, the affine
//! pseudosymplectic group and its nontriviality certificate, and character tables.

pub mod aps;
pub mod chartable;
pub mod nonzero;
pub mod rigidity;
pub mod twisted;

pub use aps::{build_aps, Aps};
pub use chartable::{character_table, fusion_compare, CharacterTable};
pub use nonzero::{verify_nonzero, NonzeroCertificate, NonzeroVerdict};
pub use rigidity::{isocategorical_variants, rigidity_certificate, RigidityReport, Verdict};
pub use twisted::{build_gb, TwistedGroup};

//! Group cohomology in degrees 1 and 2: cochains, coboundaries, splittings, the τ map.

pub mod coboundary;
pub mod cochain;
pub mod split;
pub mod tau;

pub use coboundary::{coboundary_solve, verify_certificate, Certificate, Triviality, SOLVER_CAP};
pub use cochain::{d1, d2, is_cocycle2, parse_dump, push_coeffs, restrict, Coeff, Cochain1, Cochain2, Domain, Module};
pub use split::{cocycle_of_form, gauge, skew_of_cocycle, split_symmetric};
pub use tau::{character_to_element, tau_map, tau_map_with, TauContext, TauResult};

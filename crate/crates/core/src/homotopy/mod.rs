//! Explicit witnesses and deformations inside a curve space.

mod argument;
mod profile;
mod steer;

pub use argument::{
    contract_disjoint, osculating_circle_h, reparam_by_argument, ArgumentCurve, FamilyReport, HomotopyFamily,
};
pub use profile::{
    area, canonical_profile, condition_residual, contract_contained, envelopes, find_lambda_mu, kappa_band, median5,
    psi, solve_g, solve_h, MercatorProfile, BAND_PADDING, BLOW_UP,
};
pub use steer::{arc_chain, arc_curvatures, arc_matrix, circle_length, loop_concat, steer, steer_candidates, SteerOptions};

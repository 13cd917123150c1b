//! Degenerations of the distinguished orbit under one-parameter subgroups,
//! stabilizer dimensions and the Hilbert–Mumford torus criterion.

pub mod hm;
pub mod lie;
pub mod limit;
pub mod report;
pub mod weights;

pub use hm::{hilbert_mumford_torus, Stability};
pub use lie::{infinitesimal_stabilizer, Algebra, LieElement, Mode, Stabilizer, Twist};
pub use limit::{extra_stabilizer, limit_stabilizer_matrix, ExtraCase, ExtraStabilizer, LimitStabilizerMatrix};
pub use report::{codim_report, p1_probe_conjecture, CodimReport, ProbeReport, DEFAULT_RESOURCE_LIMIT};
pub use weights::{
    lambda_sigma, lambda_tilde, limit_point, mu_sigma, toral_dimension, weight_of, z_closed_form, EpsWeight, Kind,
    OneParamSubgroup,
};

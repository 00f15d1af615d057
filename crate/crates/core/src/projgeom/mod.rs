//! Points of projective varieties over non-closed fields.

pub mod brute;
pub mod curves;
pub mod jacobian;
pub mod orbit;
pub mod solve;

pub use brute::{bruteforce_proj_points, gf_extension};
pub use curves::{
    genus_smooth_plane_curve, infinity_not_all_singular, plane_curve_singularities, smooth_plane_curve,
    surface_infinity, GenusData, InfinitySingularity, Smoothness,
};
pub use jacobian::{
    affine_curve_infinity, binary_form_orbits, jacobian_rank_at, regular_at_infinity, space_curve_infinity,
    InfinityProfile, InfinityProfileJson, Regularity, HOMOGENIZING_VAR,
};
pub use orbit::{OrbitJson, ProjPointOrbit};
pub use solve::{solve_proj_system, solve_with_centre, ProjSolution};

//! Construction, classification and counting of rational curves of
//! prescribed degree through prescribed point configurations on projective
//! spaces, quadric hypersurfaces and del Pezzo surfaces, in exact rational
//! arithmetic.
//!
//! The layers, bottom up:
//!
//! - [`rat`], [`poly`], [`matrix`]: exact scalars, univariate polynomials
//!   and dense linear algebra (rank, kernel, determinant, Pfaffian) — the
//!   oracle everything else is checked against;
//! - [`quadric`]: quadratic spaces, membership tests and reproducible
//!   rational point sampling;
//! - [`interp`]: curve interpolation through marked points, on projective
//!   space via Lagrange bases and on quadrics via the kernel of the
//!   rescaled skew-symmetric matrix and its Pfaffian minors;
//! - [`moduli`]: closed-form expected dimensions, covering-degree bounds,
//!   del Pezzo lattice arithmetic and bisecant counts;
//! - [`probe`]: seeded randomized probes of the generic fibre structure,
//!   parallel over trials when the `parallel` feature (default) is on.

pub mod error;
pub mod interp;
pub mod matrix;
pub mod moduli;
pub mod poly;
pub mod probe;
pub mod quadric;
pub mod rat;

pub use error::{Error, Result};
pub use interp::{
    alternating_config, build_rescaled_skew, cauchy_pfaffian, interpolate_pn, kernel_via_pfaffians,
    lagrange_basis, pn_fibre, solve_quadric_fibre, verify_on_quadric, CurveMap, FibreDescription,
    FibreKind, MarkedConfig, PnFibre, RescaledSkew,
};
pub use matrix::{MatQ, SkewMatQ};
pub use moduli::{
    bisecant_count, covering_bounds, dp5_quintic_table, dp5_roots, dp_m_d, expected_dim, BoundPair,
    ConePosition, DPClass, PlaneReduction, SpaceKind,
};
pub use poly::UniPoly;
pub use probe::{probe_general_fibre, probe_rank_on_curve, probe_v5_fibre, ProbeReport};
pub use quadric::{curve_point, ProjPoint, QuadSpace, SampleParams};
pub use rat::Rat;

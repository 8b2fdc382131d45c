//! Numerical study of circle diffeomorphisms with Hoelder-continuous
//! derivatives through their quasiconformal extensions: quasisymmetric
//! quotients and gauges on the circle, the Beurling-Ahlfors extension and its
//! dilatation, Beltrami fields on the disk with hyperbolically weighted
//! norms, a desk-scale Beltrami equation solver with Schwarzian evaluators on
//! the exterior disk, and certified distortion inequalities, all tied into
//! deterministic verification suites.

pub mod beltrami;
pub mod certify;
pub mod circle_maps;
pub mod error;
pub mod families;
pub mod grid;
pub mod halfplane_ext;
pub mod harness;
pub mod quad;
pub mod schwarzian;
pub mod solver;

pub use beltrami::{BeltramiField, ExactQcMap, NormReport, RadialMap, RadialProfile};
pub use certify::{choose_lambda, recurrence, CertBound, RecurrenceTrace};
pub use circle_maps::{
    compose, holder_constants, identity_lift, invert, make_trig_diffeo, qs_constants,
    qsq, rotation_lift, trig_family, LiftFunction,
};
pub use error::{Error, Result};
pub use families::{FamilySpec, FieldSpec, MapSpec};
pub use grid::ScanGrid;
pub use halfplane_ext::BaExtension;
pub use harness::{run_suite, SuiteConfig, SuiteReport};
pub use schwarzian::{aw_section, decay_scan, pre_schwarzian, schwarzian, HoloMap};
pub use solver::{bers_projection, solve, SolvedMap, SolverParams};

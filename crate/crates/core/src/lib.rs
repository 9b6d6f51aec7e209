//! Tubular hypersurfaces in Lorentz-Minkowski 4-space and the linearized
//! operators L₁ (Cheng-Yau) and L₂ of their Gauss maps.
//!
//! The crate evaluates the seven tube families (one around a timelike curve,
//! six around spacelike curves), computes L₁N and L₂N both through the generic
//! operator formula and through closed forms, and checks the Gauss-map classes
//! (harmonic, first/second kind pointwise 1-type, generalized 1-type)
//! numerically.

#![allow(clippy::needless_range_loop, clippy::neg_cmp_op_on_partial_ord)]

pub mod classify;
pub mod cli;
pub mod config;
pub mod curvature;
pub mod error;
pub mod frenet;
pub mod grid;
pub mod mesh;
pub mod minkowski;
pub mod optim;
pub mod report;
pub mod spline;
pub mod tube;

pub use error::{Error, Result};
pub use frenet::{Curvature, CurvatureFunctions, CurveCase, FramedCurve, FrenetFrame};
pub use minkowski::{CausalCharacter, Vec4};
pub use tube::{Family, TubeSpec};

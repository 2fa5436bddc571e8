//! Electromagnetic Green tensors, Born corrections and atom-surface observables
//! for dielectric boxes deposited on a planar substrate.
//!
//! Units are natural throughout: c = ħ = ε₀ = 1, so frequencies are inverse lengths.

pub mod born;
pub mod error;
pub mod geometry;
pub mod green;
pub mod kinematics;
pub mod material;
pub mod observables;
pub mod oracle;
pub mod quadrature;
pub mod special;
pub mod tensor;

pub use error::{LithoError, Result};
pub use geometry::{DepositionBox, DepositionGeometry, GratingSpec, Interval};
pub use green::{GreenPart, GreenTensor, HalfSpace};
pub use kinematics::{Axis, Frequency, WaveContext};
pub use material::{MaterialModel, Oscillator};
pub use observables::{AtomModel, Polarization};
pub use quadrature::{IntegralResult, QuadratureConfig, Truncation};
pub use tensor::{Mat3, Vec3, C64};

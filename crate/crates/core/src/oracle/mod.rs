//! Brute-force checks that share no code with the plane-wave Born path: a midpoint
//! sum of W·W over the volume, and finite-difference application of the TE/TM
//! differential operators to the scalar plane-wave factors.

mod catalogue;
mod operator;
mod riemann;

use serde::{Deserialize, Serialize};

use crate::error::{LithoError, Result};

pub use catalogue::{catalogue_structure_check, convergence_order, StructureReport, ZERO_ENTRIES};
pub use operator::{kernel_operator_check, random_operator_check, OperatorSample};
pub use riemann::born_correction_riemann;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct OracleConfig {
    pub cells_per_axis: usize,
    /// Base finite-difference step, in units of the inverse largest wave number.
    pub fd_step: f64,
    pub seed: u64,
}

impl Default for OracleConfig {
    fn default() -> Self {
        Self { cells_per_axis: 10, fd_step: 0.1, seed: 20_140_101 }
    }
}

impl OracleConfig {
    pub fn validate(&self) -> Result<()> {
        if self.cells_per_axis < 2 {
            return Err(LithoError::InvalidParameter("cells_per_axis must be at least 2".into()));
        }
        if !(self.fd_step > 0.0 && self.fd_step.is_finite()) {
            return Err(LithoError::InvalidParameter("fd_step must be positive".into()));
        }
        Ok(())
    }
}

use lithoqed_core::observables::{cp_force, cp_potential, decay_rate_deposition, decay_rate_halfspace};
use lithoqed_core::{DepositionGeometry, HalfSpace, LithoError, Vec3};
use rayon::prelude::*;
use serde::Serialize;

use crate::config::{build_geometry, build_substrate, Config, Normalization, Quantity};

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ResultRecord {
    pub x: f64,
    pub y: f64,
    pub z: f64,
    pub value: f64,
    pub normalized: f64,
    pub err: f64,
    pub converged: bool,
}

#[derive(Debug)]
pub enum ScanError {
    /// A grid point at or below the substrate or inside the deposition.
    BadPoint(Vec3, LithoError),
    Compute(Vec3, LithoError),
    Setup(LithoError),
}

impl std::fmt::Display for ScanError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ScanError::BadPoint(p, e) => write!(f, "grid point ({}, {}, {}) is not admissible: {e}", p[0], p[1], p[2]),
            ScanError::Compute(p, e) => write!(f, "evaluation failed at ({}, {}, {}): {e}", p[0], p[1], p[2]),
            ScanError::Setup(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for ScanError {}

struct Scene {
    env: HalfSpace,
    geometry: DepositionGeometry,
}

/// Checks every point before any work starts.
pub fn check_points(config: &Config) -> Result<Vec<Vec3>, ScanError> {
    let geometry = build_geometry(config).map_err(ScanError::Setup)?;
    let points = config.scan.points();
    for p in &points {
        if !(p[2] > 0.0) {
            return Err(ScanError::BadPoint(*p, LithoError::BelowInterface(*p)));
        }
        geometry.check_outside(p).map_err(|e| ScanError::BadPoint(*p, e))?;
    }
    Ok(points)
}

pub fn run(config: &Config, threads: Option<usize>) -> Result<Vec<ResultRecord>, ScanError> {
    let points = check_points(config)?;
    let scene = Scene {
        env: build_substrate(config).map_err(ScanError::Setup)?,
        geometry: build_geometry(config).map_err(ScanError::Setup)?,
    };
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = threads {
        builder = builder.num_threads(n);
    }
    let pool = builder.build().map_err(|e| ScanError::Setup(LithoError::InvalidParameter(e.to_string())))?;
    pool.install(|| points.par_iter().map(|p| evaluate(config, &scene, p).map_err(|e| ScanError::Compute(*p, e))).collect())
}

fn evaluate(config: &Config, scene: &Scene, p: &Vec3) -> lithoqed_core::Result<ResultRecord> {
    let atom = &config.atom;
    let settings = &config.quadrature.born;
    let cfg = config.quadrature.numerics();
    let norm = config.scan.normalization();
    let (value, normalized, err, converged) = match config.scan.quantity {
        Quantity::DecayRate => {
            let r = if scene.geometry.is_empty() {
                decay_rate_halfspace(atom, &scene.env, p, settings, &cfg)?
            } else {
                decay_rate_deposition(atom, &scene.env, &scene.geometry, p, settings, &cfg)?
            };
            let n = match norm {
                Normalization::FreeSpace => r.gamma_total / r.gamma_0,
                Normalization::BareHalfspace => r.relative_to_halfspace(),
                _ => r.gamma_total,
            };
            (r.gamma_total, n, r.error, r.converged)
        }
        Quantity::CpPotential => {
            let r = cp_potential(atom, &scene.env, &scene.geometry, p, settings, &cfg)?;
            let n = match norm {
                Normalization::U0 => r.u_total / r.u0_reference,
                Normalization::BareHalfspace => r.u_total / r.u_halfspace,
                _ => r.u_total,
            };
            (r.u_total, n, r.error, r.converged)
        }
        Quantity::CpForce => {
            let dir = config.scan.direction.expect("validated direction");
            let r = cp_force(atom, &scene.env, &scene.geometry, p, &dir, settings, &cfg)?;
            let n = match norm {
                Normalization::F0 => r.force / r.f0_reference,
                _ => r.force,
            };
            (r.force, n, r.error, r.converged)
        }
    };
    Ok(ResultRecord { x: p[0], y: p[1], z: p[2], value, normalized, err, converged })
}

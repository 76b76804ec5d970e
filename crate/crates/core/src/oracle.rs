//! Independent coordinate-space check of the algebraic spectrum.
//!
//! `H_1 = -(1/2) d^2/dx^2 + V_1(x)` is discretized with the 3-point Laplacian
//! on a uniform grid with Dirichlet boundaries and diagonalized with the
//! Sturm bisection solver from [`crate::tridiag`]. Nothing in this path
//! touches the ladder algebra, so agreement of the eigenvalues with
//! `hbar_omega * e_n` is a genuine cross-check of the catalog normalizations.
//!
//! Resolution is refined automatically: the point count is doubled (exactly
//! halving the spacing) until consecutive eigenvalue sets agree to
//! [`RICHARDSON_RTOL`] relative to the spectral scale. A grid whose
//! resolution cannot be driven to convergence within [`MAX_DOUBLINGS`]
//! doublings is reported as too coarse.

use crate::numfmt::sig17;
use crate::potential::{PotentialKind, PotentialModel};
use crate::tridiag;
use crate::{Error, Result};

/// Relative (to the spectral scale) agreement required between consecutive
/// refinements. The second-order scheme leaves roughly a third of this as
/// the residual error of the accepted grid.
pub const RICHARDSON_RTOL: f64 = 1e-6;

/// Maximum number of resolution doublings before giving up.
pub const MAX_DOUBLINGS: usize = 8;

/// Default number of interior grid points.
pub const DEFAULT_POINTS: usize = 4000;

/// Uniform Dirichlet grid: interior points `x_i = x_min + (i+1) h` with
/// `h = (x_max - x_min) / (points + 1)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub x_min: f64,
    pub x_max: f64,
    pub points: usize,
    /// Radial problem: `x_min = 0` is excluded by the Dirichlet boundary.
    pub radial: bool,
}

impl GridSpec {
    pub fn new(x_min: f64, x_max: f64, points: usize, radial: bool) -> Result<Self> {
        if !(x_min.is_finite() && x_max.is_finite() && x_min < x_max) {
            return Err(Error::InvalidConfig(format!(
                "grid requires x_min < x_max, got [{x_min}, {x_max}]"
            )));
        }
        if points < 200 {
            return Err(Error::InvalidConfig(format!(
                "grid requires at least 200 points, got {points}"
            )));
        }
        Ok(Self {
            x_min,
            x_max,
            points,
            radial,
        })
    }

    /// Per-kind default domain, sized to hold the exponential tails of the
    /// lowest four bound states.
    pub fn default_for(model: &PotentialModel) -> Self {
        let p = model.raw_params();
        match model.kind() {
            PotentialKind::HarmonicOscillator => Self {
                x_min: -12.0,
                x_max: 12.0,
                points: DEFAULT_POINTS,
                radial: false,
            },
            PotentialKind::Morse => {
                let lambda = p["lambda"];
                Self {
                    x_min: -3.0 / lambda,
                    x_max: 14.0 / lambda,
                    points: DEFAULT_POINTS,
                    radial: false,
                }
            }
            PotentialKind::Scarf => {
                let lambda = p["lambda"];
                Self {
                    x_min: -14.0 / lambda,
                    x_max: 14.0 / lambda,
                    points: DEFAULT_POINTS,
                    radial: false,
                }
            }
            PotentialKind::Coulomb => {
                let l = p["L"];
                let z = p["Z"];
                Self {
                    x_min: 0.0,
                    x_max: 60.0 * (l + 3.0) * (l + 3.0) / z,
                    points: DEFAULT_POINTS,
                    radial: true,
                }
            }
        }
    }

    pub fn spacing(&self) -> f64 {
        (self.x_max - self.x_min) / (self.points as f64 + 1.0)
    }

    fn with_points(&self, points: usize) -> Self {
        Self { points, ..*self }
    }
}

/// One compared level.
#[derive(Debug, Clone, Copy)]
pub struct OracleRow {
    pub n: usize,
    pub e_algebraic: f64,
    pub e_numeric: f64,
    pub rel_diff: f64,
}

/// Comparison of the finite-difference spectrum against `hbar_omega * e_n`.
#[derive(Debug, Clone)]
pub struct OracleResult {
    pub rows: Vec<OracleRow>,
    /// Grid actually used (points reflect the automatic refinement).
    pub grid: GridSpec,
}

fn check_levels(model: &PotentialModel, n_levels: usize) -> Result<()> {
    if n_levels > model.bound_state_count() + 1 {
        return Err(Error::OutOfRange(format!(
            "{n_levels} levels requested but only {} bound states available",
            model.bound_state_count() + 1
        )));
    }
    Ok(())
}

/// Spectral scale used for relative differences: `hbar_omega * e_top` with
/// `e_top` at the highest index inside the bound window.
fn spectral_scale(model: &PotentialModel, n_levels: usize) -> Result<f64> {
    let top = n_levels.min(model.bound_state_count()).max(1);
    Ok(model.hbar_omega() * model.energy_ladder(top)?[top])
}

/// Eigenvalues of the discretized `H_1` on the given grid, no refinement.
pub fn solve_on_grid(model: &PotentialModel, grid: &GridSpec, n_levels: usize) -> Result<Vec<f64>> {
    check_levels(model, n_levels)?;
    if n_levels == 0 {
        return Ok(Vec::new());
    }
    let n = grid.points;
    let h = grid.spacing();
    let inv_h2 = 1.0 / (h * h);
    let mut diag = Vec::with_capacity(n);
    for i in 0..n {
        let x = grid.x_min + (i as f64 + 1.0) * h;
        diag.push(inv_h2 + model.partner_potential_v1(x)?);
    }
    let off = vec![-0.5 * inv_h2; n - 1];
    Ok(tridiag::lowest_eigenvalues(&diag, &off, n_levels))
}

/// Lowest `n_levels` eigenvalues of `H_1`, refined until the Richardson
/// criterion holds. Returns the eigenvalues together with the final grid.
pub fn solve_spectrum(
    model: &PotentialModel,
    grid: &GridSpec,
    n_levels: usize,
) -> Result<(Vec<f64>, GridSpec)> {
    check_levels(model, n_levels)?;
    if n_levels == 0 {
        return Ok((Vec::new(), *grid));
    }
    let scale = spectral_scale(model, n_levels)?;
    let mut current = *grid;
    let mut prev = solve_on_grid(model, &current, n_levels)?;
    for _ in 0..MAX_DOUBLINGS {
        // 2p + 1 points halve the spacing exactly
        let finer = current.with_points(2 * current.points + 1);
        let next = solve_on_grid(model, &finer, n_levels)?;
        let drift = prev
            .iter()
            .zip(next.iter())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        if drift <= RICHARDSON_RTOL * scale {
            return Ok((next, finer));
        }
        prev = next;
        current = finer;
    }
    Err(Error::GridTooCoarse(format!(
        "eigenvalues still drifting after {MAX_DOUBLINGS} doublings of [{}, {}] x {}",
        grid.x_min, grid.x_max, grid.points
    )))
}

/// Pair the finite-difference eigenvalues with the algebraic ladder.
pub fn compare(model: &PotentialModel, grid: &GridSpec, n_levels: usize) -> Result<OracleResult> {
    let (numeric, final_grid) = solve_spectrum(model, grid, n_levels)?;
    if n_levels == 0 {
        return Ok(OracleResult {
            rows: Vec::new(),
            grid: final_grid,
        });
    }
    let scale = spectral_scale(model, n_levels)?;
    let top = (n_levels - 1).min(model.bound_state_count());
    let energies = model.energy_ladder(top)?;
    let hw = model.hbar_omega();
    let rows = numeric
        .iter()
        .enumerate()
        .map(|(n, &e_num)| {
            let e_alg = hw * energies[n.min(top)];
            OracleRow {
                n,
                e_algebraic: e_alg,
                e_numeric: e_num,
                rel_diff: (e_num - e_alg).abs() / e_alg.abs().max(scale),
            }
        })
        .collect();
    Ok(OracleResult {
        rows,
        grid: final_grid,
    })
}

impl OracleResult {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,E_algebraic,E_numeric,rel_diff\n");
        for r in &self.rows {
            out.push_str(&format!(
                "{},{},{},{}\n",
                r.n,
                sig17(r.e_algebraic),
                sig17(r.e_numeric),
                sig17(r.rel_diff)
            ));
        }
        out
    }

    pub fn to_json(&self) -> String {
        let mut out = String::from("[\n");
        for (i, r) in self.rows.iter().enumerate() {
            out.push_str(&format!(
                "  {{\"n\":{},\"E_algebraic\":{},\"E_numeric\":{},\"rel_diff\":{}}}",
                r.n,
                sig17(r.e_algebraic),
                sig17(r.e_numeric),
                sig17(r.rel_diff)
            ));
            if i + 1 < self.rows.len() {
                out.push(',');
            }
            out.push('\n');
        }
        out.push_str("]\n");
        out
    }
}

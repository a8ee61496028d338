//! Minimization over the Bloch sphere of measurement axes.
//!
//! A coarse `(theta, phi)` grid locates the basin, then a Nelder-Mead simplex
//! refines from the best grid point. The grid is evaluated in parallel but
//! reduced in grid order, so the reported minimum is deterministic.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::scalar::{tol, Real};
use crate::state::MeasurementBasis;

#[derive(Debug, Clone, PartialEq)]
pub struct OptimizerConfig {
    /// Polar grid step in degrees.
    pub theta_step_deg: f64,
    /// Azimuthal grid step in degrees.
    pub phi_step_deg: f64,
    /// Simplex spread (max - min objective over vertices) at which refinement
    /// stops; `None` uses the precision default.
    pub refine_spread: Option<f64>,
    pub max_iterations: usize,
    pub parallel: bool,
}

impl Default for OptimizerConfig {
    fn default() -> Self {
        Self {
            theta_step_deg: 2.0,
            phi_step_deg: 4.0,
            refine_spread: None,
            max_iterations: 2000,
            parallel: true,
        }
    }
}

impl OptimizerConfig {
    /// Grid with polar step `deg` and azimuthal step `2 * deg`.
    pub fn with_grid_deg(mut self, deg: f64) -> Self {
        self.theta_step_deg = deg;
        self.phi_step_deg = 2.0 * deg;
        self
    }

    pub fn validate(&self) -> Result<()> {
        let ok = |x: f64| x.is_finite() && x > 0.0 && x <= 180.0;
        if !ok(self.theta_step_deg) || !ok(self.phi_step_deg) {
            return Err(Error::Domain(format!(
                "grid steps must lie in (0, 180] degrees, got {} / {}",
                self.theta_step_deg, self.phi_step_deg
            )));
        }
        if let Some(s) = self.refine_spread {
            if !(s.is_finite() && s > 0.0) {
                return Err(Error::Domain(format!("refine tolerance must be positive, got {s}")));
            }
        }
        Ok(())
    }
}

/// Diagnostics from one minimization.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OptimizerTrace<T: Real> {
    pub grid_points: usize,
    pub grid_best: T,
    pub iterations: usize,
    pub final_spread: T,
    /// Whether the simplex improved on the grid point by more than the tie tolerance.
    pub refined: bool,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SphereMinimum<T: Real> {
    pub value: T,
    pub basis: MeasurementBasis<T>,
    pub trace: OptimizerTrace<T>,
}

/// Grid points in `(theta, phi)` order; each pole appears once.
pub fn grid_points<T: Real>(cfg: &OptimizerConfig) -> Vec<(T, T)> {
    let n_theta = (180.0 / cfg.theta_step_deg).round().max(1.0) as usize;
    let n_phi = (360.0 / cfg.phi_step_deg).round().max(1.0) as usize;
    let mut pts = Vec::with_capacity((n_theta + 1) * n_phi);
    for i in 0..=n_theta {
        let theta = T::PI() * T::lit(i as f64 / n_theta as f64);
        if i == 0 || i == n_theta {
            pts.push((theta, T::zero()));
            continue;
        }
        for j in 0..n_phi {
            let phi = T::PI() * T::lit(2.0 * j as f64 / n_phi as f64);
            pts.push((theta, phi));
        }
    }
    pts
}

fn sanitize<T: Real>(v: T) -> T {
    if v.is_nan() {
        T::infinity()
    } else {
        v
    }
}

/// Minimize `f(theta, phi)` over the sphere.
pub fn minimize_on_sphere<T, F>(f: F, cfg: &OptimizerConfig) -> Result<SphereMinimum<T>>
where
    T: Real,
    F: Fn(T, T) -> T + Sync,
{
    cfg.validate()?;
    let tie = tol::<T>(|t| t.tie);
    let spread_target = cfg
        .refine_spread
        .map(T::lit)
        .unwrap_or_else(|| tol::<T>(|t| t.refine_spread));

    let pts = grid_points::<T>(cfg);
    let values: Vec<T> = if cfg.parallel {
        pts.par_iter().map(|&(t, p)| sanitize(f(t, p))).collect()
    } else {
        pts.iter().map(|&(t, p)| sanitize(f(t, p))).collect()
    };
    let best_value = values.iter().copied().fold(T::infinity(), T::min);
    if !best_value.is_finite() {
        return Err(Error::Consistency("objective is not finite anywhere on the grid".into()));
    }
    // First point in (theta, phi) order within the tie band.
    let best_idx = values
        .iter()
        .position(|&v| v <= best_value + tie)
        .expect("minimum exists");
    let (theta0, phi0) = pts[best_idx];
    let grid_best = values[best_idx];

    let step_theta = T::lit(cfg.theta_step_deg.to_radians() / 2.0);
    let step_phi = T::lit(cfg.phi_step_deg.to_radians() / 2.0);
    let nm = nelder_mead(
        |x: [T; 2]| sanitize(f(x[0], x[1])),
        [theta0, phi0],
        [step_theta, step_phi],
        spread_target,
        cfg.max_iterations,
    );

    let refined = nm.value < grid_best - tie;
    let (value, basis) = if refined {
        (nm.value, MeasurementBasis::new(nm.point[0], nm.point[1]))
    } else {
        (grid_best, MeasurementBasis::new(theta0, phi0))
    };
    Ok(SphereMinimum {
        value,
        basis,
        trace: OptimizerTrace {
            grid_points: pts.len(),
            grid_best,
            iterations: nm.iterations,
            final_spread: nm.spread,
            refined,
        },
    })
}

#[derive(Debug, Clone, Copy)]
pub(crate) struct NelderMeadResult<T: Real> {
    pub point: [T; 2],
    pub value: T,
    pub iterations: usize,
    pub spread: T,
}

/// Two-dimensional Nelder-Mead with the standard coefficients
/// (reflection 1, expansion 2, contraction 1/2, shrink 1/2).
pub(crate) fn nelder_mead<T: Real>(
    f: impl Fn([T; 2]) -> T,
    start: [T; 2],
    steps: [T; 2],
    spread_target: T,
    max_iterations: usize,
) -> NelderMeadResult<T> {
    let half = T::lit(0.5);
    let two = T::lit(2.0);
    let mut simplex = [
        start,
        [start[0] + steps[0], start[1]],
        [start[0], start[1] + steps[1]],
    ];
    let mut values = simplex.map(&f);

    let combine = |a: [T; 2], b: [T; 2], t: T| [a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1])];

    let mut iterations = 0;
    loop {
        // Sort ascending by value; stable so earlier vertices win ties.
        let mut idx = [0usize, 1, 2];
        idx.sort_by(|&a, &b| values[a].partial_cmp(&values[b]).unwrap());
        simplex = idx.map(|i| simplex[i]);
        values = idx.map(|i| values[i]);

        let spread = values[2] - values[0];
        if spread < spread_target || iterations >= max_iterations {
            return NelderMeadResult {
                point: simplex[0],
                value: values[0],
                iterations,
                spread,
            };
        }
        iterations += 1;

        let centroid = combine(simplex[0], simplex[1], half);
        let worst = simplex[2];
        let reflected = combine(centroid, worst, -T::one());
        let f_r = f(reflected);

        if f_r < values[0] {
            let expanded = combine(centroid, worst, -two);
            let f_e = f(expanded);
            if f_e < f_r {
                simplex[2] = expanded;
                values[2] = f_e;
            } else {
                simplex[2] = reflected;
                values[2] = f_r;
            }
            continue;
        }
        if f_r < values[1] {
            simplex[2] = reflected;
            values[2] = f_r;
            continue;
        }
        let (contracted, f_c) = if f_r < values[2] {
            let p = combine(centroid, reflected, half);
            (p, f(p))
        } else {
            let p = combine(centroid, worst, half);
            (p, f(p))
        };
        if f_c < values[2].min(f_r) {
            simplex[2] = contracted;
            values[2] = f_c;
            continue;
        }
        for k in 1..3 {
            simplex[k] = combine(simplex[0], simplex[k], half);
            values[k] = f(simplex[k]);
        }
    }
}

use nalgebra::{DMatrix, DVector};
use thiserror::Error;

/// Tunable knobs of the BFGS minimizer.
#[derive(Debug, Clone)]
pub struct OptimOptions {
    pub max_iterations: usize,
    /// Terminate when the gradient infinity norm drops below this.
    pub gradient_tolerance: f64,
    /// Terminate when an accepted step changes the cost by less than
    /// `cost_tolerance · (1 + |cost|)`.
    pub cost_tolerance: f64,
    /// Relative finite-difference step: per coordinate the probe offset
    /// is `fd_step · max(1, |xᵢ|)`.
    pub fd_step: f64,
    /// Armijo backtracking factor in (0, 1).
    pub backtrack_factor: f64,
    /// Armijo sufficient-decrease constant.
    pub sufficient_decrease: f64,
}

impl Default for OptimOptions {
    fn default() -> Self {
        Self {
            max_iterations: 200,
            gradient_tolerance: 1e-8,
            cost_tolerance: 1e-10,
            fd_step: 1e-6,
            backtrack_factor: 0.5,
            sufficient_decrease: 1e-4,
        }
    }
}

/// Why the minimizer stopped.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Termination {
    GradientSmall,
    CostStalled,
    MaxIterations,
    /// Backtracking found no decrease; typical on flat or
    /// discretization-noise-dominated costs. Not an error: the best
    /// point seen so far is returned.
    LineSearchFailed,
}

#[derive(Debug, Clone)]
pub struct OptimResult {
    pub x: DVector<f64>,
    pub cost: f64,
    pub iterations: usize,
    pub termination: Termination,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum OptimError {
    #[error("cost function returned a non-finite value")]
    NonFiniteCost,
}

/// Central finite-difference gradient, `(f(x+hᵢ) − f(x−hᵢ)) / 2hᵢ` with
/// `hᵢ = step · max(1, |xᵢ|)`.
pub fn numeric_gradient<F>(f: &F, x: &DVector<f64>, step: f64) -> Result<DVector<f64>, OptimError>
where
    F: Fn(&[f64]) -> f64,
{
    let n = x.len();
    let mut probe = x.clone();
    let mut g = DVector::zeros(n);
    for i in 0..n {
        let h = step * x[i].abs().max(1.0);
        probe[i] = x[i] + h;
        let fp = f(probe.as_slice());
        probe[i] = x[i] - h;
        let fm = f(probe.as_slice());
        probe[i] = x[i];
        if !fp.is_finite() || !fm.is_finite() {
            return Err(OptimError::NonFiniteCost);
        }
        g[i] = (fp - fm) / (2.0 * h);
    }
    Ok(g)
}

/// Minimize `f` from `x0` with BFGS.
///
/// The inverse Hessian approximation starts at the identity and is
/// updated only when the curvature condition `sᵀy > 0` holds. Accepted
/// steps always satisfy the Armijo sufficient-decrease condition, so the
/// cost sequence is non-increasing and the result never exceeds `f(x0)`.
pub fn minimize<F>(f: F, x0: &[f64], opts: &OptimOptions) -> Result<OptimResult, OptimError>
where
    F: Fn(&[f64]) -> f64,
{
    let n = x0.len();
    let mut x = DVector::from_column_slice(x0);
    let mut fx = f(x.as_slice());
    if !fx.is_finite() {
        return Err(OptimError::NonFiniteCost);
    }

    let mut h = DMatrix::<f64>::identity(n, n);
    let mut g = numeric_gradient(&f, &x, opts.fd_step)?;

    for iter in 1..=opts.max_iterations {
        // Search direction, reset to steepest descent if the
        // approximation has lost descent.
        let mut d = -(&h * &g);
        let mut slope = g.dot(&d);
        if slope > 0.0 {
            h = DMatrix::identity(n, n);
            d = -g.clone();
            slope = g.dot(&d);
        }

        // Armijo backtracking.
        let mut alpha = 1.0;
        let mut accepted = None;
        for _ in 0..45 {
            let x_new = &x + &d * alpha;
            let f_new = f(x_new.as_slice());
            if f_new.is_finite() && f_new <= fx + opts.sufficient_decrease * alpha * slope {
                accepted = Some((x_new, f_new));
                break;
            }
            alpha *= opts.backtrack_factor;
        }
        let Some((x_new, f_new)) = accepted else {
            return Ok(OptimResult {
                x,
                cost: fx,
                iterations: iter,
                termination: Termination::LineSearchFailed,
            });
        };

        if (fx - f_new).abs() <= opts.cost_tolerance * (1.0 + fx.abs()) {
            return Ok(OptimResult {
                x: x_new,
                cost: f_new,
                iterations: iter,
                termination: Termination::CostStalled,
            });
        }

        let g_new = numeric_gradient(&f, &x_new, opts.fd_step)?;
        if g_new.amax() <= opts.gradient_tolerance {
            return Ok(OptimResult {
                x: x_new,
                cost: f_new,
                iterations: iter,
                termination: Termination::GradientSmall,
            });
        }

        // BFGS inverse-Hessian update, skipped when curvature is not positive.
        let s = &x_new - &x;
        let y = &g_new - &g;
        let sy = s.dot(&y);
        if sy > 1e-12 * s.norm() * y.norm() {
            let rho = 1.0 / sy;
            let id = DMatrix::<f64>::identity(n, n);
            let left = &id - &s * y.transpose() * rho;
            let right = &id - &y * s.transpose() * rho;
            h = &left * h * &right + &s * s.transpose() * rho;
            // Symmetrize to keep round-off from accumulating.
            h = (&h + &h.transpose()) * 0.5;
        }

        x = x_new;
        fx = f_new;
        g = g_new;
    }

    Ok(OptimResult {
        x,
        cost: fx,
        iterations: opts.max_iterations,
        termination: Termination::MaxIterations,
    })
}

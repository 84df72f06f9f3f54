//! Quasi-Newton minimization and the local SE(3) parameterization used
//! by pose refinement.
//!
//! The minimizer is plain BFGS with an identity-initialized inverse
//! Hessian, central finite-difference gradients and an Armijo
//! backtracking line search. Several of the costs it drives (IoU, GIoU,
//! QBbox) are only piecewise smooth; the line search simply gives up on
//! them when no decrease can be found, which is reported as a
//! termination reason rather than an error.

mod bfgs;
mod pose_params;

pub use bfgs::{minimize, numeric_gradient, OptimError, OptimOptions, OptimResult, Termination};
pub use pose_params::{apply_pose_params, PoseParams};

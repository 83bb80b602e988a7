//! Numerical toolkit for pluricomplex Green and Lempert functions on model
//! domains.
//!
//! The library evaluates the closed-form Green function for axis poles in the
//! bidisc and polydisc, computes the Lempert function by searching over
//! analytic-disc node configurations with a Pick-matrix feasibility oracle,
//! estimates Lelong numbers from radial scans, and runs finite-difference
//! Monge-Ampere maximality checks on grids. A verification harness packages
//! the headline experiments, including the strict gap between the Lempert and
//! Green functions for distinct weights on the bidisc.

pub mod ball;
pub mod complex;
pub mod ext;
pub mod green;
pub mod lelong;
pub mod lempert;
pub mod monge_ampere;
pub mod pick;
pub mod verify;

pub use ball::{chart_hessian_det, radial_extremal, slice_laplacian, AnnulusHarmonic};
pub use complex::{blaschke_eval, disc_green, in_domain, mobius, Domain, C64};
pub use ext::Ereal;
pub use green::{
    coman_e, coman_s_membership, green_bidisc_equal, green_bidisc_maxform,
    green_bidisc_weighted, green_polydisc_axis, AxisGreen, ComanBallParams, PoleConfig,
};
pub use lelong::{lelong_estimate, log_bound_check, psi, LelongEstimate, RadialScan};
pub use lempert::{
    disc_objective, explicit_disc, lempert_bidisc_axis, lempert_subset_min, schwarz_lower_bound,
    DiscSpec, LempertResult, SolverConfig,
};
pub use monge_ampere::{complex_hessian, ma_det, maximality_scan, Field2, GridRegion, ScanReport};
pub use pick::{pick_feasible, PickCertificate, PickProblem};
pub use verify::{
    convexity_check, counterexample_experiment, decomposition_check, dirichlet_checklist,
    CheckStatus, ChecklistGrids, SampleGrid, VerificationReport,
};

/// Library error type.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("outside domain: {0}")]
    OutsideDomain(String),
    #[error("invalid geometry: {0}")]
    InvalidGeometry(String),
    #[error("duplicate interpolation nodes at indices {0} and {1}")]
    DuplicateNodes(usize, usize),
    #[error("degenerate slice: the sampled slice is identically -inf")]
    DegenerateSlice,
    #[error("singular stencil: {0}")]
    SingularStencil(String),
    #[error("empty region: {0}")]
    EmptyRegion(String),
    #[error("no feasible disc found: {0}")]
    Infeasible(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

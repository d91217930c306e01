//! Shared numeric settings: tolerances, caps and the pinned reproduction
//! parameters used by both the `paper-check` command and the acceptance suite.

/// Default cap on the number of points of any group or dual model.
pub const DEFAULT_MAX_POINTS: usize = 1 << 22;

/// Environment variable overriding [`DEFAULT_MAX_POINTS`].
pub const MAX_POINTS_ENV: &str = "LCA_PEGO_MAX_POINTS";

/// Largest group that may be materialized as a dense operator matrix.
pub const MATERIALIZE_CAP: usize = 4096;

/// Schema tag written into every JSON report.
pub const SCHEMA: &str = "lca-pego/1";

/// Point cap in effect: the environment override when it parses, the default otherwise.
pub fn max_points() -> usize {
    std::env::var(MAX_POINTS_ENV)
        .ok()
        .and_then(|s| s.trim().parse::<usize>().ok())
        .filter(|&n| n > 0)
        .unwrap_or(DEFAULT_MAX_POINTS)
}

/// Every tolerance used by the library and its tests.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// Exact-path identities (DFT round trips, convolution theorem).
    pub exact: f64,
    /// Quantities evaluated on a discretized dual grid.
    pub grid: f64,
    /// Relative residual below which power iteration is declared converged.
    pub power_residual: f64,
    /// Relative agreement of the dense and Fourier norm routes.
    pub norm_relative: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        TOLERANCES
    }
}

pub const TOLERANCES: Tolerances = Tolerances {
    exact: 1e-10,
    grid: 1e-6,
    power_residual: 1e-6,
    norm_relative: 1e-9,
};

/// Pinned parameters of the reproduction suite.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PinnedRun {
    pub half_width: usize,
    pub dual_grid: usize,
    pub iterations: usize,
    pub seed: u64,
}

pub const PINNED: PinnedRun = PinnedRun {
    half_width: 512,
    dual_grid: 4096,
    iterations: 500,
    seed: 42,
};

/// Covering-number radii used when no schedule is supplied.
pub const DEFAULT_EPS_SCHEDULE: [f64; 3] = [1.0, 0.5, 0.25];

/// Gaussian-bump family and the loose thresholds the sup-bound replay runs at.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundReplay {
    pub count: usize,
    pub eps_cont: f64,
    pub window: usize,
}

pub const BOUND_REPLAY: BoundReplay = BoundReplay {
    count: 8,
    eps_cont: 0.1,
    window: 64,
};

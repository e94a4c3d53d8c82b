//! Experiment drivers. Each returns an [`ExperimentReport`] with metrics,
//! inequality verdicts, tables and plot series.

/// Runs a generic driver at hardware or software precision depending on `ctx`.
macro_rules! dispatch {
    ($ctx:expr, $f:ident ( $($arg:expr),* )) => {
        if $ctx.is_hardware() {
            $f::<f64>($($arg),*)
        } else {
            $f::<$crate::numerics::BigFloat>($($arg),*)
        }
    };
}

mod bounds;
mod decay;
mod fit;
mod functions;
mod hilbert;
mod kernel_probe;
mod report;
mod table1;

pub use bounds::run_product_bound;
pub use decay::{run_discretized_decay, run_gramian_decay, J_RELATIVE_TOLERANCE};
pub use fit::{classify_decay, fit_linear_model, fit_log_linear, fit_power_law, DecayType, LogLinearFit};
pub use functions::{run_singular_functions, MAX_DEVIATION, SIMILARITY_THRESHOLD};
pub use hilbert::{run_beckermann, run_hilbert_asymptotics, run_norm_difference, EXACT_LIMIT, NORM_TOLERANCE};
pub use kernel_probe::{run_kernel_probe, DEFAULT_EPSILONS, DEFAULT_RESOLUTION};
pub use report::{Check, ExperimentReport, Metric, Series, Table, Value, Verdict};
pub use table1::{run_table1, TABLE1_I, TABLE1_N};

use moment_spectra::experiments::{
    run_beckermann, run_discretized_decay, run_gramian_decay, run_hilbert_asymptotics, run_kernel_probe,
    run_norm_difference, run_product_bound, run_singular_functions, run_table1, ExperimentReport, DEFAULT_EPSILONS,
};
use moment_spectra::Result;

use crate::config::{Command, RunConfig, NORM_DIFF_MIN_N};

/// First `n` of the asymptotics table.
pub const ASYMPTOTICS_N_MIN: usize = 5;

/// `1000, 2000, 4000, …` up to `n`, with `n` itself appended.
pub fn norm_diff_sizes(n: usize) -> Vec<usize> {
    let mut sizes: Vec<usize> = std::iter::successors(Some(NORM_DIFF_MIN_N), |m| Some(m * 2))
        .take_while(|m| *m <= n)
        .collect();
    if sizes.last() != Some(&n) {
        sizes.push(n);
    }
    sizes
}

pub fn run_experiment(cfg: &RunConfig) -> Result<ExperimentReport> {
    match cfg.command {
        Command::Table1 => Ok(run_table1()),
        Command::SingularFunctions => run_singular_functions(cfg.n, cfg.i_max),
        Command::GramianDecay => run_gramian_decay(cfg.n, cfg.i_max, cfg.digits),
        Command::DiscretizedDecay => run_discretized_decay(cfg.n, cfg.scheme, cfg.digits),
        Command::NormDiff => run_norm_difference(cfg.base, &norm_diff_sizes(cfg.n)),
        Command::Beckermann => run_beckermann(cfg.n, cfg.i_max, cfg.digits),
        Command::HilbertAsymptotics => run_hilbert_asymptotics(ASYMPTOTICS_N_MIN.min(cfg.n), cfg.n, cfg.digits),
        Command::KernelProbe => run_kernel_probe(cfg.n, &DEFAULT_EPSILONS),
        Command::ProductBound => run_product_bound(cfg.n, cfg.digits),
        Command::All => unreachable!("`all` is expanded by the caller"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sizes() {
        assert_eq!(norm_diff_sizes(4000), vec![1000, 2000, 4000]);
        assert_eq!(norm_diff_sizes(12_000), vec![1000, 2000, 4000, 8000, 12_000]);
        assert_eq!(norm_diff_sizes(1000), vec![1000]);
        assert_eq!(norm_diff_sizes(3000), vec![1000, 2000, 3000]);
    }
}

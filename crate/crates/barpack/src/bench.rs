//! Seeded benchmark sweeps: generate instances, run every solver, compare
//! against the applicable oracle, and emit one CSV row per trial.
//!
//! Trials are independent and run in parallel; rows are emitted in trial
//! order regardless of completion order, so identical configurations produce
//! byte-identical CSV.

use crate::app::app_pack;
use crate::exact::{exact_opt, linearly_ordered_opt};
use crate::galo::galo_pack;
use crate::gen::{gen_all_big, gen_first_big, gen_pairable};
use crate::instance::Instance;
use crate::matching::{build_graph, matching_pack, max_matching};
use crate::verify::{check_bound, check_feasible, packing_length, Bound};
use rayon::prelude::*;
use thiserror::Error;

pub const CSV_HEADER: &str = "family,n,seed,L_galo,L_matching,L_app,OPT,opt_kind,bound_ok";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    AllBig,
    FirstBig,
    Pairable,
}

impl Family {
    pub fn as_str(self) -> &'static str {
        match self {
            Family::AllBig => "all-big",
            Family::FirstBig => "first-big",
            Family::Pairable => "pairable",
        }
    }

    /// Instance for one trial. For the pairable family `n` is rounded down
    /// to an even chart count (at least 2).
    pub fn generate(self, n: usize, seed: u64, granularity: u64) -> Instance {
        match self {
            Family::AllBig => gen_all_big(n, seed, granularity),
            Family::FirstBig => gen_first_big(n, seed, granularity),
            Family::Pairable => gen_pairable((n / 2).max(1), seed, granularity),
        }
    }
}

/// Which oracle bounds the trial. `Auto` picks the exact search for all-big
/// style families and the linear-order oracle for first-bar-big instances
/// (where it equals the global optimum).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OracleChoice {
    Auto,
    Exact,
    Linear,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OracleKind {
    Exact,
    Linear,
    None,
}

impl OracleKind {
    pub fn as_str(self) -> &'static str {
        match self {
            OracleKind::Exact => "exact",
            OracleKind::Linear => "linear",
            OracleKind::None => "none",
        }
    }
}

#[derive(Debug, Clone)]
pub struct BenchConfig {
    pub family: Family,
    pub n_min: usize,
    pub n_max: usize,
    pub trials: usize,
    pub seed: u64,
    pub granularity: u64,
    pub oracle: OracleChoice,
    pub oracle_limit: usize,
    /// Fail instead of emitting an oracle-less row when `n` exceeds the limit.
    pub require_opt: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BenchRow {
    pub family: Family,
    pub n: usize,
    pub seed: u64,
    pub galo_length: usize,
    pub matching_length: usize,
    pub app_length: usize,
    pub opt: Option<usize>,
    pub opt_kind: OracleKind,
    pub bound_ok: bool,
}

impl BenchRow {
    pub fn csv(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{}",
            self.family.as_str(),
            self.n,
            self.seed,
            self.galo_length,
            self.matching_length,
            self.app_length,
            self.opt.map_or_else(String::new, |o| o.to_string()),
            self.opt_kind.as_str(),
            self.bound_ok
        )
    }
}

#[derive(Debug, Error)]
pub enum BenchError {
    #[error("bad bench config: {0}")]
    BadConfig(String),
    #[error("trial n={n} needs an oracle but the limit is {limit}")]
    OracleRequired { n: usize, limit: usize },
    #[error("solver failed on a generated instance: {0}")]
    Solver(String),
}

pub fn run(config: &BenchConfig) -> Result<Vec<BenchRow>, BenchError> {
    if config.n_min < 1 || config.n_min > config.n_max {
        return Err(BenchError::BadConfig(format!(
            "size range [{}, {}] is empty or starts below 1",
            config.n_min, config.n_max
        )));
    }
    if config.granularity < 2 {
        return Err(BenchError::BadConfig("granularity must be at least 2".into()));
    }
    let span = config.n_max - config.n_min + 1;
    (0..config.trials)
        .into_par_iter()
        .map(|trial| {
            let n = config.n_min + trial % span;
            let seed = config.seed.wrapping_add(trial as u64);
            run_trial(config, n, seed)
        })
        .collect()
}

fn run_trial(config: &BenchConfig, n: usize, seed: u64) -> Result<BenchRow, BenchError> {
    let instance = config.family.generate(n, seed, config.granularity);
    let n = instance.len();

    let galo = galo_pack(&instance);
    let matched = matching_pack(&instance, &max_matching(&build_graph(&instance)));
    let app = app_pack(&instance).map_err(|e| BenchError::Solver(e.to_string()))?;
    for packing in [&galo, &matched, &app.packing] {
        check_feasible(&instance, packing).map_err(|e| BenchError::Solver(e.to_string()))?;
    }
    let galo_length =
        packing_length(&instance, &galo).map_err(|e| BenchError::Solver(e.to_string()))?;
    let matching_length =
        packing_length(&instance, &matched).map_err(|e| BenchError::Solver(e.to_string()))?;
    let app_length =
        packing_length(&instance, &app.packing).map_err(|e| BenchError::Solver(e.to_string()))?;

    let wanted = match config.oracle {
        OracleChoice::Exact => OracleKind::Exact,
        OracleChoice::Linear => OracleKind::Linear,
        OracleChoice::Auto => match config.family {
            Family::AllBig | Family::Pairable => OracleKind::Exact,
            Family::FirstBig => OracleKind::Linear,
        },
    };
    let (opt, opt_kind) = if n > config.oracle_limit {
        if config.require_opt {
            return Err(BenchError::OracleRequired {
                n,
                limit: config.oracle_limit,
            });
        }
        (None, OracleKind::None)
    } else {
        match wanted {
            OracleKind::Exact => {
                let exact = exact_opt(&instance, config.oracle_limit)
                    .map_err(|e| BenchError::Solver(e.to_string()))?;
                (Some(exact.opt_length), OracleKind::Exact)
            }
            OracleKind::Linear => {
                let linear = linearly_ordered_opt(&instance, config.oracle_limit)
                    .map_err(|e| BenchError::Solver(e.to_string()))?;
                (Some(linear.opt_length), OracleKind::Linear)
            }
            OracleKind::None => unreachable!(),
        }
    };

    // The certified inequality depends on the oracle: the exact optimum
    // bounds the best-of-two length, the linear-order optimum bounds the
    // greedy length.
    let bound_ok = match (opt, opt_kind) {
        (Some(opt), OracleKind::Exact) => {
            check_bound(app_length as u64, opt as u64, Bound::FourThirds)
        }
        (Some(opt), OracleKind::Linear) => {
            check_bound(galo_length as u64, opt as u64, Bound::OptPlusOne)
        }
        _ => true,
    };

    Ok(BenchRow {
        family: config.family,
        n,
        seed,
        galo_length,
        matching_length,
        app_length,
        opt,
        opt_kind,
        bound_ok,
    })
}

pub fn to_csv(rows: &[BenchRow]) -> String {
    let mut out = String::from(CSV_HEADER);
    for row in rows {
        out.push('\n');
        out.push_str(&row.csv());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn config(family: Family, trials: usize) -> BenchConfig {
        BenchConfig {
            family,
            n_min: 2,
            n_max: 6,
            trials,
            seed: 11,
            granularity: 60,
            oracle: OracleChoice::Auto,
            oracle_limit: 10,
            require_opt: true,
        }
    }

    #[test]
    fn rows_are_deterministic_and_in_trial_order() {
        let cfg = config(Family::AllBig, 10);
        let rows = run(&cfg).unwrap();
        assert_eq!(rows, run(&cfg).unwrap());
        let sizes: Vec<usize> = rows.iter().map(|r| r.n).collect();
        assert_eq!(sizes, vec![2, 3, 4, 5, 6, 2, 3, 4, 5, 6]);
    }

    #[test]
    fn all_big_trials_satisfy_the_four_thirds_bound() {
        let rows = run(&config(Family::AllBig, 25)).unwrap();
        assert!(rows.iter().all(|r| r.bound_ok && r.opt_kind == OracleKind::Exact));
    }

    #[test]
    fn first_big_trials_satisfy_the_plus_one_bound() {
        let rows = run(&config(Family::FirstBig, 25)).unwrap();
        assert!(rows.iter().all(|r| r.bound_ok && r.opt_kind == OracleKind::Linear));
    }

    #[test]
    fn zero_trials_yield_header_only_csv() {
        let rows = run(&config(Family::AllBig, 0)).unwrap();
        assert!(rows.is_empty());
        assert_eq!(to_csv(&rows), CSV_HEADER);
    }

    #[test]
    fn require_opt_fails_above_the_limit() {
        let mut cfg = config(Family::AllBig, 3);
        cfg.oracle_limit = 3;
        assert!(matches!(
            run(&cfg),
            Err(BenchError::OracleRequired { .. })
        ));
        cfg.require_opt = false;
        let rows = run(&cfg).unwrap();
        assert!(rows.iter().any(|r| r.opt_kind == OracleKind::None && r.bound_ok));
    }
}

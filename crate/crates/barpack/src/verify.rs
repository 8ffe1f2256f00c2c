//! Independent checker: bin feasibility, packing length, chain structure,
//! bound certification, and the pair-splitting transformation.
//!
//! Everything here is a pure function over exact rationals. The verifier is
//! deliberately separate from the solvers so their outputs can be certified
//! without sharing any packing logic.

use crate::instance::Instance;
use crate::packing::Packing;
use crate::rational::{half, Rational};
use num_traits::{One, Zero};
use std::collections::BTreeMap;
use thiserror::Error;

/// A bin over capacity, with its exact load.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinViolation {
    pub bin: usize,
    pub load: Rational,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum VerifyError {
    #[error("packing assigns {got} charts but the instance has {expected}")]
    WrongArity { expected: usize, got: usize },
    #[error("chart {chart} starts at bin {bin}, outside [1, {max}]")]
    StartOutOfRange { chart: usize, bin: usize, max: usize },
    #[error("{} bin(s) over capacity: {}", violations.len(), describe(violations))]
    Infeasible { violations: Vec<BinViolation> },
    #[error("charts {first} and {second} share start bin {bin}; packing is not linearly ordered")]
    NotLinearlyOrdered {
        first: usize,
        second: usize,
        bin: usize,
    },
    #[error("charts {i} and {j} do not form a pair (start bins {start_i} and {start_j})")]
    NotAPair {
        i: usize,
        j: usize,
        start_i: usize,
        start_j: usize,
    },
    #[error("pair ({i}, {j}) admits no big-bar orientation: need one left bar > 1/2 and the other right bar > 1/2")]
    NoBigOrientation { i: usize, j: usize },
}

fn describe(violations: &[BinViolation]) -> String {
    violations
        .iter()
        .map(|v| format!("bin {} = {}", v.bin, v.load))
        .collect::<Vec<_>>()
        .join(", ")
}

/// Exact per-bin loads of a feasible packing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinLoadReport {
    /// Load of every occupied bin, keyed by bin index. Bins holding only
    /// zero-height bars appear with load 0: a bar falls there regardless.
    pub loads: BTreeMap<usize, Rational>,
}

impl BinLoadReport {
    /// Number of bins in which at least one bar falls.
    pub fn used_bins(&self) -> usize {
        self.loads.len()
    }
}

fn validate(instance: &Instance, packing: &Packing) -> Result<(), VerifyError> {
    let n = instance.len();
    if packing.len() != n {
        return Err(VerifyError::WrongArity {
            expected: n,
            got: packing.len(),
        });
    }
    let max = 2 * n - 1;
    for (chart, &bin) in packing.starts().iter().enumerate() {
        if bin < 1 || bin > max {
            return Err(VerifyError::StartOutOfRange { chart, bin, max });
        }
    }
    Ok(())
}

/// Checks that every bin load is at most 1 (exact comparison) and returns
/// the per-bin load report; an infeasible packing yields every violating
/// bin with its load.
pub fn check_feasible(instance: &Instance, packing: &Packing) -> Result<BinLoadReport, VerifyError> {
    validate(instance, packing)?;
    let mut loads: BTreeMap<usize, Rational> = BTreeMap::new();
    for (chart, &bin) in packing.starts().iter().enumerate() {
        let item = instance.chart(chart);
        *loads.entry(bin).or_insert_with(Rational::zero) += item.a();
        *loads.entry(bin + 1).or_insert_with(Rational::zero) += item.b();
    }
    let violations: Vec<BinViolation> = loads
        .iter()
        .filter(|(_, load)| *load > &Rational::one())
        .map(|(&bin, load)| BinViolation {
            bin,
            load: load.clone(),
        })
        .collect();
    if violations.is_empty() {
        Ok(BinLoadReport { loads })
    } else {
        Err(VerifyError::Infeasible { violations })
    }
}

/// Number of occupied bins. Gap bins between chains are not counted, so
/// sparse externally-produced packings report the same length as their
/// left-shifted equivalents.
pub fn packing_length(instance: &Instance, packing: &Packing) -> Result<usize, VerifyError> {
    validate(instance, packing)?;
    let mut occupied: Vec<usize> = Vec::with_capacity(2 * packing.len());
    for &bin in packing.starts() {
        occupied.push(bin);
        occupied.push(bin + 1);
    }
    occupied.sort_unstable();
    occupied.dedup();
    Ok(occupied.len())
}

/// Chains of a linearly ordered packing: maximal runs of charts occupying
/// consecutive start bins. For such packings the length identity
/// `L = n + chain_count` holds exactly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainDecomposition {
    /// Chart indices of each chain, in left-to-right bin order.
    pub chains: Vec<Vec<usize>>,
}

impl ChainDecomposition {
    pub fn chain_count(&self) -> usize {
        self.chains.len()
    }
}

pub fn chain_decomposition(
    instance: &Instance,
    packing: &Packing,
) -> Result<ChainDecomposition, VerifyError> {
    validate(instance, packing)?;
    let mut order: Vec<(usize, usize)> = packing
        .starts()
        .iter()
        .enumerate()
        .map(|(chart, &bin)| (bin, chart))
        .collect();
    order.sort_unstable();
    for pair in order.windows(2) {
        if pair[0].0 == pair[1].0 {
            return Err(VerifyError::NotLinearlyOrdered {
                first: pair[0].1,
                second: pair[1].1,
                bin: pair[0].0,
            });
        }
    }
    let mut chains: Vec<Vec<usize>> = Vec::new();
    let mut prev_bin = None;
    for (bin, chart) in order {
        match prev_bin {
            Some(p) if p + 1 == bin => chains.last_mut().unwrap().push(chart),
            _ => chains.push(vec![chart]),
        }
        prev_bin = Some(bin);
    }
    debug_assert_eq!(
        packing_length(instance, packing)?,
        instance.len() + chains.len()
    );
    Ok(ChainDecomposition { chains })
}

/// Splits a pair sharing a start bin: a new bin is inserted after the pair's
/// start bin, holding the small right bar of one chart and the small left bar
/// of the other. Every bin from the insertion point rightward shifts by one,
/// the result stays feasible, and the length grows by exactly 1.
pub fn split_pair(
    instance: &Instance,
    packing: &Packing,
    i: usize,
    j: usize,
) -> Result<Packing, VerifyError> {
    validate(instance, packing)?;
    if i == j || packing.start(i) != packing.start(j) {
        return Err(VerifyError::NotAPair {
            i,
            j,
            start_i: packing.start(i),
            start_j: packing.start(j),
        });
    }
    let threshold = half();
    // Orient so `lead` keeps the start bin via its big left bar and `moved`
    // lands in the inserted bin, its big right bar going one bin further.
    let (lead, moved) = if instance.chart(i).a() > &threshold && instance.chart(j).b() > &threshold
    {
        (i, j)
    } else if instance.chart(j).a() > &threshold && instance.chart(i).b() > &threshold {
        (j, i)
    } else {
        return Err(VerifyError::NoBigOrientation { i, j });
    };
    let split_bin = packing.start(lead);
    let starts = packing
        .starts()
        .iter()
        .enumerate()
        .map(|(chart, &bin)| {
            if chart == moved {
                split_bin + 1
            } else if bin > split_bin {
                bin + 1
            } else {
                bin
            }
        })
        .collect();
    Ok(Packing::new(starts))
}

/// The two certified guarantees, as exact integer inequalities.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Bound {
    /// `L <= OPT + 1`
    OptPlusOne,
    /// `L <= 4/3 * OPT + 2/3`, checked as `3L <= 4*OPT + 2`.
    FourThirds,
}

pub fn check_bound(length: u64, opt: u64, bound: Bound) -> bool {
    match bound {
        Bound::OptPlusOne => length <= opt + 1,
        Bound::FourThirds => 3 * length <= 4 * opt + 2,
    }
}

//! Exact oracles at desk scale.
//!
//! `exact_opt` finds the global minimum packing length of a big instance by
//! building bins left to right. Feasibility of a bin depends only on the
//! charts started in the previous bin (their right bars are the carry-over),
//! so the search state `(unplaced set, previous starters)` is Markovian and
//! memoizes cleanly. `linearly_ordered_opt` minimizes the number of chains
//! over all linearly ordered packings with a subset DP over
//! `(covered set, last chart of the open chain)`.

use crate::instance::Instance;
use crate::packing::Packing;
use crate::rational::Rational;
use num_traits::{One, Zero};
use std::collections::HashMap;
use thiserror::Error;

pub const DEFAULT_EXACT_LIMIT: usize = 10;
pub const DEFAULT_LINEAR_LIMIT: usize = 12;

/// Hard cap for the subset DP; beyond this the table no longer fits in
/// reasonable memory regardless of patience.
const LINEAR_HARD_CAP: usize = 22;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExactError {
    #[error("instance has {n} charts, above the search limit {limit}")]
    TooLarge { n: usize, limit: usize },
    #[error("chart {index} has no big bar; the exact search covers big instances only")]
    NotBig { index: usize },
}

/// Optimal packing, its length, and the pair structure of the witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactResult {
    pub opt_length: usize,
    pub witness: Packing,
    /// Chart pairs in the witness that share a start bin.
    pub pair_count: usize,
    /// Charts not in any pair: `n - 2 * pair_count`.
    pub single_count: usize,
}

/// Global optimum for a big instance with at most `limit` charts.
pub fn exact_opt(instance: &Instance, limit: usize) -> Result<ExactResult, ExactError> {
    let n = instance.len();
    if n > limit || n > 62 {
        return Err(ExactError::TooLarge { n, limit });
    }
    if let Some(&index) = instance.non_big_charts().first() {
        return Err(ExactError::NotBig { index });
    }

    let mut search = BinSearch {
        lefts: instance.charts().iter().map(|c| c.a().clone()).collect(),
        rights: instance.charts().iter().map(|c| c.b().clone()).collect(),
        memo: HashMap::new(),
    };
    let full = (1u64 << n) - 1;
    let opt_length = search.solve(full, 0) as usize;

    // Replay the memoized choices to recover a witness packing.
    let mut starts = vec![0usize; n];
    let mut pair_count = 0usize;
    let (mut unplaced, mut previous) = (full, 0u64);
    let mut bin = 1usize;
    while unplaced != 0 {
        let chosen = search.memo[&(unplaced, previous)].1;
        let placed = chosen.count_ones();
        for chart in 0..n {
            if chosen & (1 << chart) != 0 {
                starts[chart] = bin;
            }
        }
        debug_assert!(placed <= 2, "a bin of big charts holds at most one pair");
        if placed == 2 {
            pair_count += 1;
        }
        unplaced &= !chosen;
        previous = chosen;
        bin += 1;
    }
    let witness = Packing::new(starts);
    debug_assert_eq!(
        crate::verify::packing_length(instance, &witness).unwrap(),
        opt_length
    );
    Ok(ExactResult {
        opt_length,
        witness,
        pair_count,
        single_count: n - 2 * pair_count,
    })
}

struct BinSearch {
    lefts: Vec<Rational>,
    rights: Vec<Rational>,
    memo: HashMap<(u64, u64), (u32, u64)>,
}

impl BinSearch {
    /// Minimum number of further occupied bins given the set of unplaced
    /// charts and the charts started in the previous bin.
    fn solve(&mut self, unplaced: u64, previous: u64) -> u32 {
        if unplaced == 0 {
            // Only the right bars of the last starters remain.
            return u32::from(previous != 0);
        }
        if let Some(&(cost, _)) = self.memo.get(&(unplaced, previous)) {
            return cost;
        }
        let carried = mask_sum(&self.rights, previous);
        let mut best = (u32::MAX, 0u64);

        // Closing the current bin without a new chart is only meaningful
        // while it still holds carried bars; an empty bin never helps.
        if previous != 0 {
            let cost = 1 + self.solve(unplaced, 0);
            if cost < best.0 {
                best = (cost, 0);
            }
        }
        let mut candidates = Vec::new();
        enumerate_starters(
            &self.lefts,
            &self.rights,
            unplaced,
            0,
            0,
            &carried,
            &Rational::zero(),
            &mut candidates,
        );
        for set in candidates {
            let cost = 1 + self.solve(unplaced & !set, set);
            if cost < best.0 {
                best = (cost, set);
            }
        }
        self.memo.insert((unplaced, previous), best);
        best.0
    }
}

fn mask_sum(values: &[Rational], mask: u64) -> Rational {
    let mut sum = Rational::zero();
    for (i, value) in values.iter().enumerate() {
        if mask & (1 << i) != 0 {
            sum += value;
        }
    }
    sum
}

/// All nonempty starter sets whose left bars fit on the carried load and
/// whose right bars fit the next bin. Both sums only grow, so branches
/// prune as soon as either capacity is exceeded.
#[allow(clippy::too_many_arguments)]
fn enumerate_starters(
    lefts: &[Rational],
    rights: &[Rational],
    unplaced: u64,
    from: usize,
    set: u64,
    left_sum: &Rational,
    right_sum: &Rational,
    out: &mut Vec<u64>,
) {
    if set != 0 {
        out.push(set);
    }
    let capacity = Rational::one();
    for chart in from..lefts.len() {
        if unplaced & (1 << chart) == 0 {
            continue;
        }
        let left = left_sum + &lefts[chart];
        if left > capacity {
            continue;
        }
        let right = right_sum + &rights[chart];
        if right > capacity {
            continue;
        }
        enumerate_starters(
            lefts,
            rights,
            unplaced,
            chart + 1,
            set | (1 << chart),
            &left,
            &right,
            out,
        );
    }
}

/// Optimal linearly ordered packing: chains and length `n + chain_count`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearOrderResult {
    pub opt_length: usize,
    pub chains: Vec<Vec<usize>>,
    pub witness: Packing,
}

const NO_CHART: u8 = u8::MAX;

/// Minimum chain count over all linearly ordered packings. A chart may
/// follow another in a chain when the predecessor's right bar and the
/// successor's left bar fit one bin together; the DP grows chart sets one
/// element at a time, either extending the open chain or starting a new one.
pub fn linearly_ordered_opt(
    instance: &Instance,
    limit: usize,
) -> Result<LinearOrderResult, ExactError> {
    let n = instance.len();
    if n > limit || n > LINEAR_HARD_CAP {
        return Err(ExactError::TooLarge {
            n,
            limit: limit.min(LINEAR_HARD_CAP),
        });
    }

    let capacity = Rational::one();
    let mut can_follow = vec![vec![false; n]; n];
    for x in 0..n {
        for y in 0..n {
            can_follow[x][y] =
                x != y && instance.chart(x).b() + instance.chart(y).a() <= capacity;
        }
    }

    let size = 1usize << n;
    let mut chain_count = vec![vec![u8::MAX; n]; size];
    // Chart placed immediately before `last`, and whether that step extended
    // the open chain (as opposed to starting a new one).
    let mut previous = vec![vec![NO_CHART; n]; size];
    let mut extended = vec![vec![false; n]; size];
    for first in 0..n {
        chain_count[1 << first][first] = 1;
    }
    for mask in 1..size {
        for last in 0..n {
            if mask & (1 << last) == 0 || chain_count[mask][last] == u8::MAX {
                continue;
            }
            let count = chain_count[mask][last];
            for next in 0..n {
                if mask & (1 << next) != 0 {
                    continue;
                }
                let grown = mask | (1 << next);
                let joins = can_follow[last][next];
                let candidate = if joins { count } else { count + 1 };
                if candidate < chain_count[grown][next] {
                    chain_count[grown][next] = candidate;
                    previous[grown][next] = last as u8;
                    extended[grown][next] = joins;
                }
            }
        }
    }

    let full = size - 1;
    let best_last = (0..n)
        .min_by_key(|&last| chain_count[full][last])
        .expect("nonempty instance");

    // Walk the parent pointers backwards, cutting chains where a step
    // started fresh; then restore left-to-right order.
    let mut chains_reversed: Vec<Vec<usize>> = Vec::new();
    let mut chain = vec![best_last];
    let mut mask = full;
    let mut last = best_last;
    loop {
        let prev = previous[mask][last];
        let joined = extended[mask][last];
        mask ^= 1 << last;
        if prev == NO_CHART {
            chains_reversed.push(chain);
            break;
        }
        if joined {
            chain.push(prev as usize);
        } else {
            chains_reversed.push(std::mem::take(&mut chain));
            chain = vec![prev as usize];
        }
        last = prev as usize;
    }
    let chains: Vec<Vec<usize>> = chains_reversed
        .into_iter()
        .rev()
        .map(|mut c| {
            c.reverse();
            c
        })
        .collect();

    debug_assert_eq!(
        chains.iter().map(Vec::len).sum::<usize>(),
        n,
        "chains partition the charts"
    );
    let lambda = chains.len();
    debug_assert_eq!(lambda, chain_count[full][best_last] as usize);

    // Lay the chains out consecutively, one spare bin after each for the
    // trailing right bar.
    let mut starts = vec![0usize; n];
    let mut bin = 1usize;
    for chain in &chains {
        for &chart in chain {
            starts[chart] = bin;
            bin += 1;
        }
        bin += 1;
    }
    let witness = Packing::new(starts);
    debug_assert!(crate::verify::check_feasible(instance, &witness).is_ok());

    Ok(LinearOrderResult {
        opt_length: n + lambda,
        chains,
        witness,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::BarChart;
    use crate::rational::ratio;
    use crate::verify::{check_feasible, packing_length};

    fn tenths(charts: &[(i64, i64)]) -> Instance {
        Instance::new(
            charts
                .iter()
                .map(|&(a, b)| BarChart::new(ratio(a, 10), ratio(b, 10)).unwrap())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn single_chart_needs_two_bins() {
        let inst = tenths(&[(7, 3)]);
        let result = exact_opt(&inst, DEFAULT_EXACT_LIMIT).unwrap();
        assert_eq!(result.opt_length, 2);
        assert_eq!(result.pair_count, 0);
        assert_eq!(result.single_count, 1);
    }

    #[test]
    fn perfect_pair_fills_two_bins() {
        let inst = tenths(&[(6, 4), (4, 6)]);
        let result = exact_opt(&inst, DEFAULT_EXACT_LIMIT).unwrap();
        assert_eq!(result.opt_length, 2);
        assert_eq!(result.pair_count, 1);
        assert_eq!(result.single_count, 0);
        check_feasible(&inst, &result.witness).unwrap();
    }

    #[test]
    fn reduction_gadget_packs_into_three_bins() {
        // Charts (1, 1/6), (2/3, 1/12), (1/6, 11/12).
        let inst = Instance::new(vec![
            BarChart::new(ratio(1, 1), ratio(1, 6)).unwrap(),
            BarChart::new(ratio(2, 3), ratio(1, 12)).unwrap(),
            BarChart::new(ratio(1, 6), ratio(11, 12)).unwrap(),
        ])
        .unwrap();
        let result = exact_opt(&inst, DEFAULT_EXACT_LIMIT).unwrap();
        assert_eq!(result.opt_length, 3);
        assert_eq!(
            packing_length(&inst, &result.witness).unwrap(),
            result.opt_length
        );
    }

    #[test]
    fn rejects_non_big_and_oversized() {
        let general = tenths(&[(4, 4)]);
        assert!(matches!(
            exact_opt(&general, DEFAULT_EXACT_LIMIT),
            Err(ExactError::NotBig { index: 0 })
        ));
        let inst = tenths(&[(7, 3), (7, 3)]);
        assert!(matches!(
            exact_opt(&inst, 1),
            Err(ExactError::TooLarge { n: 2, limit: 1 })
        ));
    }

    #[test]
    fn fully_chainable_charts_form_one_chain() {
        let inst = tenths(&[(7, 1), (8, 2), (6, 3)]);
        let result = linearly_ordered_opt(&inst, DEFAULT_LINEAR_LIMIT).unwrap();
        assert_eq!(result.chains.len(), 1);
        assert_eq!(result.opt_length, 4);
        check_feasible(&inst, &result.witness).unwrap();
    }

    #[test]
    fn unchainable_charts_need_a_chain_each() {
        let inst = tenths(&[(9, 9), (9, 9), (9, 9)]);
        let result = linearly_ordered_opt(&inst, DEFAULT_LINEAR_LIMIT).unwrap();
        assert_eq!(result.chains.len(), 3);
        assert_eq!(result.opt_length, 6);
    }

    #[test]
    fn finds_the_non_obvious_chain_order() {
        // (0.9,0.2), (0.7,0.5), (0.6,0.1): ordering chart 2 first chains all
        // three, since 0.1+0.9 and 0.2+0.7 both fit.
        let inst = tenths(&[(9, 2), (7, 5), (6, 1)]);
        let result = linearly_ordered_opt(&inst, DEFAULT_LINEAR_LIMIT).unwrap();
        assert_eq!(result.chains.len(), 1);
        assert_eq!(result.opt_length, 4);
        assert_eq!(result.chains, vec![vec![2, 0, 1]]);
    }

    #[test]
    fn first_bar_big_instances_agree_across_oracles() {
        let inst = tenths(&[(9, 2), (7, 5), (6, 1), (8, 3)]);
        let global = exact_opt(&inst, DEFAULT_EXACT_LIMIT).unwrap();
        let linear = linearly_ordered_opt(&inst, DEFAULT_LINEAR_LIMIT).unwrap();
        assert_eq!(global.opt_length, linear.opt_length);
    }
}

//! Best-of-two solver for big instances: run the greedy linear packer and
//! the matching packer, keep the shorter packing. For all-big instances the
//! winner's length is at most `4/3 * OPT + 2/3`.

use crate::galo::galo_pack;
use crate::instance::Instance;
use crate::matching::{build_graph, matching_pack, max_matching};
use crate::packing::Packing;
use crate::verify::packing_length;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AppError {
    #[error("instance is not all-big: charts {0:?} have no bar above 1/2")]
    NotAllBig(Vec<usize>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Winner {
    Galo,
    Matching,
}

impl Winner {
    pub fn as_str(self) -> &'static str {
        match self {
            Winner::Galo => "galo",
            Winner::Matching => "matching",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AppResult {
    pub packing: Packing,
    pub winner: Winner,
    pub galo_length: usize,
    pub matching_length: usize,
    /// Pair count of the matching branch.
    pub matching_cardinality: usize,
}

/// Runs both branches unconditionally and returns the shorter packing,
/// preferring the greedy branch on ties. The guarantee collapses without
/// the all-big precondition, so non-big instances are refused with the
/// offending chart indices.
pub fn app_pack(instance: &Instance) -> Result<AppResult, AppError> {
    if !instance.class().is_big() {
        return Err(AppError::NotAllBig(instance.non_big_charts()));
    }
    let galo = galo_pack(instance);
    let galo_length = packing_length(instance, &galo).expect("solver packing is valid");

    let matching = max_matching(&build_graph(instance));
    let matched = matching_pack(instance, &matching);
    let matching_length = packing_length(instance, &matched).expect("solver packing is valid");

    let (winner, packing) = if matching_length < galo_length {
        (Winner::Matching, matched)
    } else {
        (Winner::Galo, galo)
    };
    Ok(AppResult {
        packing,
        winner,
        galo_length,
        matching_length,
        matching_cardinality: matching.cardinality(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::BarChart;
    use crate::rational::ratio;
    use crate::verify::check_feasible;

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
    fn rejects_non_big_instances_with_diagnostic() {
        let inst = tenths(&[(6, 1), (4, 4), (3, 3)]);
        assert_eq!(app_pack(&inst), Err(AppError::NotAllBig(vec![1, 2])));
    }

    #[test]
    fn first_bar_big_instances_fall_to_the_greedy_branch() {
        // All left bars big: the compatibility graph is empty.
        let inst = tenths(&[(6, 1), (7, 2), (9, 3)]);
        let result = app_pack(&inst).unwrap();
        assert_eq!(result.winner, Winner::Galo);
        assert_eq!(result.matching_cardinality, 0);
        assert_eq!(result.matching_length, 6);
        check_feasible(&inst, &result.packing).unwrap();
    }

    #[test]
    fn planted_pairs_fall_to_the_matching_branch() {
        let inst = tenths(&[(6, 4), (4, 6), (6, 4), (4, 6)]);
        let result = app_pack(&inst).unwrap();
        assert_eq!(result.winner, Winner::Matching);
        assert_eq!(result.matching_length, 4);
        assert!(result.galo_length >= 5, "a linear packing spans n+1 bins");
    }

    #[test]
    fn single_chart_ties_to_galo() {
        let inst = tenths(&[(7, 3)]);
        let result = app_pack(&inst).unwrap();
        assert_eq!(result.winner, Winner::Galo);
        assert_eq!(result.galo_length, 2);
        assert_eq!(result.matching_length, 2);
    }
}

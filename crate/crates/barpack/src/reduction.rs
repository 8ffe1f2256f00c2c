//! Numerical 3-dimensional matching instances, their conversion into big
//! two-bar chart instances, and the certificate tying the two together.
//!
//! The conversion maps an NDM instance with `r` triples and target `b` to
//! `3r` charts in three groups, chosen so the NDM instance has a perfect
//! triple partition exactly when the charts pack into `3r` bins. Checking
//! that equivalence on small instances is the job of [`certify_reduction`].

use crate::instance::{BarChart, Instance, InstanceClass};
use crate::rational::Rational;
use num_bigint::BigInt;
use std::collections::HashSet;
use thiserror::Error;

pub const DEFAULT_NDM_LIMIT: usize = 6;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum NdmError {
    #[error("element lists must be nonempty and of equal length")]
    BadShape,
    #[error("target b must be positive")]
    ZeroTarget,
    #[error("all elements must be positive")]
    ZeroElement,
    #[error("elements sum to {got}, but normalization requires r*b = {expected}")]
    NotNormalized { got: u64, expected: u64 },
    #[error("r = {r} exceeds the decision limit {limit}")]
    TooLarge { r: usize, limit: usize },
}

/// Three equal-length lists of positive integers and a target sum, with the
/// normalization `sum of all elements == r * b` enforced at load time; fixing
/// unnormalized inputs silently would mask generator bugs, so they are
/// rejected instead.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NdmInstance {
    x: Vec<u64>,
    y: Vec<u64>,
    z: Vec<u64>,
    b: u64,
}

impl NdmInstance {
    pub fn new(x: Vec<u64>, y: Vec<u64>, z: Vec<u64>, b: u64) -> Result<Self, NdmError> {
        if x.is_empty() || x.len() != y.len() || x.len() != z.len() {
            return Err(NdmError::BadShape);
        }
        if b == 0 {
            return Err(NdmError::ZeroTarget);
        }
        if x.iter().chain(&y).chain(&z).any(|&e| e == 0) {
            return Err(NdmError::ZeroElement);
        }
        let got: u64 = x.iter().chain(&y).chain(&z).sum();
        let expected = x.len() as u64 * b;
        if got != expected {
            return Err(NdmError::NotNormalized { got, expected });
        }
        Ok(NdmInstance { x, y, z, b })
    }

    pub fn r(&self) -> usize {
        self.x.len()
    }

    pub fn x(&self) -> &[u64] {
        &self.x
    }

    pub fn y(&self) -> &[u64] {
        &self.y
    }

    pub fn z(&self) -> &[u64] {
        &self.z
    }

    pub fn target(&self) -> u64 {
        self.b
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ReduceError {
    #[error("{list}[{index}] = {value} yields a bar height outside [0, 1]")]
    HeightOutOfRange {
        list: &'static str,
        index: usize,
        value: u64,
    },
}

/// Builds the 3r-chart instance: charts `0..r` have a full-height left bar
/// and right bar `x_i / 2b`; charts `r..2r` have left bar `(b + y_i) / 2b`
/// and a thin right bar `1 / 4b`; charts `2r..3r` have left bar `z_i / 2b`
/// and right bar `1 - 1/4b`. The output is always all-big.
pub fn reduce(ndm: &NdmInstance) -> Result<Instance, ReduceError> {
    let quarter = Rational::new(BigInt::from(1), BigInt::from(4 * ndm.b));
    let over_2b = |v: u64| Rational::new(BigInt::from(v), BigInt::from(2 * ndm.b));

    let r = ndm.r();
    let mut charts = Vec::with_capacity(3 * r);
    for (index, &x) in ndm.x.iter().enumerate() {
        let chart = BarChart::new(Rational::from_integer(BigInt::from(1)), over_2b(x)).map_err(
            |_| ReduceError::HeightOutOfRange {
                list: "x",
                index,
                value: x,
            },
        )?;
        charts.push(chart);
    }
    for (index, &y) in ndm.y.iter().enumerate() {
        let chart = BarChart::new(over_2b(ndm.b + y), quarter.clone()).map_err(|_| {
            ReduceError::HeightOutOfRange {
                list: "y",
                index,
                value: y,
            }
        })?;
        charts.push(chart);
    }
    for (index, &z) in ndm.z.iter().enumerate() {
        let chart = BarChart::new(
            over_2b(z),
            Rational::from_integer(BigInt::from(1)) - quarter.clone(),
        )
        .map_err(|_| ReduceError::HeightOutOfRange {
            list: "z",
            index,
            value: z,
        })?;
        charts.push(chart);
    }
    let instance = Instance::new(charts).expect("3r charts, r >= 1");
    debug_assert_eq!(instance.class(), InstanceClass::AllBig);
    Ok(instance)
}

/// A satisfying triple partition: `(i, j, k)` means `x[i] + y[j] + z[k] == b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NdmWitness {
    pub triples: Vec<(usize, usize, usize)>,
}

/// Exhaustive decision: matches every x-element with a (y, z) pair, memoizing
/// dead (used-y, used-z) states. Returns a witness partition on yes.
pub fn ndm_decide(ndm: &NdmInstance, limit: usize) -> Result<Option<NdmWitness>, NdmError> {
    let r = ndm.r();
    if r > limit || r > 32 {
        return Err(NdmError::TooLarge { r, limit });
    }
    let mut failed: HashSet<(u32, u32)> = HashSet::new();
    let mut triples = Vec::with_capacity(r);
    if assign(ndm, 0, 0, 0, &mut failed, &mut triples) {
        Ok(Some(NdmWitness { triples }))
    } else {
        Ok(None)
    }
}

fn assign(
    ndm: &NdmInstance,
    i: usize,
    used_y: u32,
    used_z: u32,
    failed: &mut HashSet<(u32, u32)>,
    triples: &mut Vec<(usize, usize, usize)>,
) -> bool {
    if i == ndm.r() {
        return true;
    }
    if failed.contains(&(used_y, used_z)) {
        return false;
    }
    for j in 0..ndm.r() {
        if used_y & (1 << j) != 0 {
            continue;
        }
        let partial = ndm.x[i] + ndm.y[j];
        if partial >= ndm.b {
            continue;
        }
        for k in 0..ndm.r() {
            if used_z & (1 << k) != 0 || partial + ndm.z[k] != ndm.b {
                continue;
            }
            triples.push((i, j, k));
            if assign(ndm, i + 1, used_y | (1 << j), used_z | (1 << k), failed, triples) {
                return true;
            }
            triples.pop();
        }
    }
    failed.insert((used_y, used_z));
    false
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CertifyError {
    #[error(transparent)]
    Ndm(#[from] NdmError),
    #[error(transparent)]
    Reduce(#[from] ReduceError),
    #[error(transparent)]
    Exact(#[from] crate::exact::ExactError),
}

/// Outcome of checking one instance: the decision answer, the exact optimum
/// of the converted instance, and whether they agree as the construction
/// promises (yes iff the charts fit in 3r bins).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CertifyReport {
    pub r: usize,
    pub target: u64,
    pub ndm_yes: bool,
    pub witness: Option<NdmWitness>,
    pub opt_length: usize,
    pub bin_budget: usize,
    pub equivalent: bool,
}

pub fn certify_reduction(
    ndm: &NdmInstance,
    ndm_limit: usize,
    exact_limit: usize,
) -> Result<CertifyReport, CertifyError> {
    let witness = ndm_decide(ndm, ndm_limit)?;
    let instance = reduce(ndm)?;
    let exact = crate::exact::exact_opt(&instance, exact_limit)?;
    let bin_budget = 3 * ndm.r();
    let ndm_yes = witness.is_some();
    let fits = exact.opt_length <= bin_budget;
    Ok(CertifyReport {
        r: ndm.r(),
        target: ndm.target(),
        ndm_yes,
        witness,
        opt_length: exact.opt_length,
        bin_budget,
        equivalent: ndm_yes == fits,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    fn ndm(x: &[u64], y: &[u64], z: &[u64], b: u64) -> NdmInstance {
        NdmInstance::new(x.to_vec(), y.to_vec(), z.to_vec(), b).unwrap()
    }

    #[test]
    fn loader_enforces_normalization() {
        assert!(matches!(
            NdmInstance::new(vec![1], vec![1], vec![2], 3),
            Err(NdmError::NotNormalized {
                got: 4,
                expected: 3
            })
        ));
        assert!(matches!(
            NdmInstance::new(vec![1], vec![1], vec![], 3),
            Err(NdmError::BadShape)
        ));
        assert!(NdmInstance::new(vec![1], vec![1], vec![1], 3).is_ok());
    }

    #[test]
    fn unit_triple_reduces_to_the_known_gadget() {
        let instance = reduce(&ndm(&[1], &[1], &[1], 3)).unwrap();
        assert_eq!(instance.len(), 3);
        let red = instance.chart(0);
        assert_eq!((red.a(), red.b()), (&ratio(1, 1), &ratio(1, 6)));
        let yellow = instance.chart(1);
        assert_eq!((yellow.a(), yellow.b()), (&ratio(2, 3), &ratio(1, 12)));
        let green = instance.chart(2);
        assert_eq!((green.a(), green.b()), (&ratio(1, 6), &ratio(11, 12)));
        assert_eq!(instance.class(), InstanceClass::AllBig);
    }

    #[test]
    fn two_triple_heights_follow_the_formulas() {
        // x={1,2}, y={2,1}, z={3,3}, b=6; sums 12 = 2*6.
        let instance = reduce(&ndm(&[1, 2], &[2, 1], &[3, 3], 6)).unwrap();
        assert_eq!(instance.len(), 6);
        assert_eq!(instance.chart(0).b(), &ratio(1, 12));
        assert_eq!(instance.chart(3).a(), &ratio(7, 12));
        assert_eq!(instance.chart(3).b(), &ratio(1, 24));
        assert_eq!(instance.chart(4).a(), &ratio(1, 4));
        assert_eq!(instance.chart(4).b(), &ratio(23, 24));
        assert_eq!(instance.class(), InstanceClass::AllBig);
    }

    #[test]
    fn leftover_bars_sum_to_r() {
        let ndm = ndm(&[1, 2], &[2, 1], &[3, 3], 6);
        let instance = reduce(&ndm).unwrap();
        let r = ndm.r();
        let mut total = ratio(0, 1);
        for i in 0..r {
            total += instance.chart(i).b(); // red right bars
            total += instance.chart(r + i).a(); // yellow left bars
            total += instance.chart(2 * r + i).a(); // green left bars
        }
        assert_eq!(total, ratio(r as i64, 1));
    }

    #[test]
    fn oversized_elements_are_rejected_at_reduce_time() {
        // y = 7 > b = 6 would place a left bar above 1.
        let ndm = ndm(&[1, 1], &[1, 7], &[1, 1], 6);
        assert_eq!(
            reduce(&ndm),
            Err(ReduceError::HeightOutOfRange {
                list: "y",
                index: 1,
                value: 7
            })
        );
    }

    #[test]
    fn decides_small_yes_and_no_instances() {
        let yes = ndm(&[1], &[1], &[1], 3);
        let witness = ndm_decide(&yes, DEFAULT_NDM_LIMIT).unwrap().unwrap();
        assert_eq!(witness.triples, vec![(0, 0, 0)]);

        let yes2 = ndm(&[1, 2], &[2, 1], &[3, 3], 6);
        let witness = ndm_decide(&yes2, DEFAULT_NDM_LIMIT).unwrap().unwrap();
        assert_eq!(witness.triples.len(), 2);
        for (i, j, k) in witness.triples {
            assert_eq!(yes2.x()[i] + yes2.y()[j] + yes2.z()[k], 6);
        }

        let no = ndm(&[1, 3], &[1, 3], &[1, 3], 6);
        assert!(ndm_decide(&no, DEFAULT_NDM_LIMIT).unwrap().is_none());
    }

    #[test]
    fn certifies_yes_and_no_equivalence() {
        let yes = ndm(&[1], &[1], &[1], 3);
        let report = certify_reduction(&yes, DEFAULT_NDM_LIMIT, 10).unwrap();
        assert!(report.ndm_yes);
        assert_eq!(report.opt_length, 3);
        assert_eq!(report.bin_budget, 3);
        assert!(report.equivalent);

        let no = ndm(&[1, 3], &[1, 3], &[1, 3], 6);
        let report = certify_reduction(&no, DEFAULT_NDM_LIMIT, 10).unwrap();
        assert!(!report.ndm_yes);
        assert!(report.opt_length > report.bin_budget);
        assert!(report.equivalent);
    }
}

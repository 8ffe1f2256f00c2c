//! Core domain types: two-bar charts, instances, and instance classes.
//!
//! A two-bar chart is an item with two ordered bars of heights `a` (left)
//! and `b` (right). Packing a chart at bin `k` drops its left bar into bin
//! `k` and its right bar into bin `k+1`. All types here are immutable after
//! construction and safe to share across concurrent solver invocations.

use crate::rational::{half, Rational};
use num_traits::{One, Zero};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum InstanceError {
    #[error("chart {index}: {kind} bar height {value} is outside [0, 1]")]
    HeightOutOfRange {
        index: usize,
        kind: &'static str,
        value: String,
    },
    #[error("instance has no charts")]
    Empty,
}

/// One item: left bar of height `a`, right bar of height `b`, both in [0, 1].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BarChart {
    a: Rational,
    b: Rational,
}

impl BarChart {
    pub fn new(a: Rational, b: Rational) -> Result<Self, InstanceError> {
        for (kind, value) in [("left", &a), ("right", &b)] {
            if value < &Rational::zero() || value > &Rational::one() {
                return Err(InstanceError::HeightOutOfRange {
                    index: 0,
                    kind,
                    value: value.to_string(),
                });
            }
        }
        Ok(BarChart { a, b })
    }

    /// Left (first) bar height.
    pub fn a(&self) -> &Rational {
        &self.a
    }

    /// Right (second) bar height.
    pub fn b(&self) -> &Rational {
        &self.b
    }

    /// A bar is big when strictly higher than 1/2; a chart is big when at
    /// least one of its bars is.
    pub fn is_big(&self) -> bool {
        let threshold = half();
        self.a > threshold || self.b > threshold
    }

    pub fn first_bar_big(&self) -> bool {
        self.a > half()
    }
}

/// Instance class, computed from the heights at load time and never trusted
/// from input. `FirstBarBig` is the most specific tag: such instances are
/// also all-big, but every feasible packing of them is linearly ordered.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InstanceClass {
    General,
    AllBig,
    FirstBarBig,
}

impl InstanceClass {
    pub fn as_str(self) -> &'static str {
        match self {
            InstanceClass::General => "general",
            InstanceClass::AllBig => "all-big",
            InstanceClass::FirstBarBig => "first-bar-big",
        }
    }

    /// True when every chart has a big bar (all-big or first-bar-big).
    pub fn is_big(self) -> bool {
        !matches!(self, InstanceClass::General)
    }
}

pub fn classify(charts: &[BarChart]) -> InstanceClass {
    if charts.iter().all(BarChart::first_bar_big) {
        InstanceClass::FirstBarBig
    } else if charts.iter().all(BarChart::is_big) {
        InstanceClass::AllBig
    } else {
        InstanceClass::General
    }
}

/// An ordered, nonempty list of charts. Charts are identified by their
/// 0-based position in this list; every solver output refers to that index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    charts: Vec<BarChart>,
    class: InstanceClass,
}

impl Instance {
    pub fn new(charts: Vec<BarChart>) -> Result<Self, InstanceError> {
        if charts.is_empty() {
            return Err(InstanceError::Empty);
        }
        let class = classify(&charts);
        Ok(Instance { charts, class })
    }

    pub fn charts(&self) -> &[BarChart] {
        &self.charts
    }

    pub fn chart(&self, index: usize) -> &BarChart {
        &self.charts[index]
    }

    pub fn len(&self) -> usize {
        self.charts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.charts.is_empty()
    }

    pub fn class(&self) -> InstanceClass {
        self.class
    }

    /// Indices of charts with no big bar (empty iff the instance is big).
    pub fn non_big_charts(&self) -> Vec<usize> {
        self.charts
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_big())
            .map(|(i, _)| i)
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    fn chart(a: (i64, i64), b: (i64, i64)) -> BarChart {
        BarChart::new(ratio(a.0, a.1), ratio(b.0, b.1)).unwrap()
    }

    #[test]
    fn rejects_out_of_range_heights() {
        assert!(BarChart::new(ratio(-1, 10), ratio(1, 2)).is_err());
        assert!(BarChart::new(ratio(1, 2), ratio(11, 10)).is_err());
        assert!(BarChart::new(ratio(0, 1), ratio(1, 1)).is_ok());
    }

    #[test]
    fn classifies_per_most_specific_tag() {
        // All first bars big.
        let first = Instance::new(vec![chart((3, 5), (1, 10)), chart((9, 10), (1, 5))]).unwrap();
        assert_eq!(first.class(), InstanceClass::FirstBarBig);

        // Big, but one chart only via its second bar.
        let all = Instance::new(vec![chart((3, 5), (1, 10)), chart((1, 10), (3, 5))]).unwrap();
        assert_eq!(all.class(), InstanceClass::AllBig);

        // 1/2 is not big.
        let general = Instance::new(vec![chart((1, 2), (1, 2))]).unwrap();
        assert_eq!(general.class(), InstanceClass::General);
        assert_eq!(general.non_big_charts(), vec![0]);
    }

    #[test]
    fn empty_instance_is_rejected() {
        assert!(matches!(Instance::new(vec![]), Err(InstanceError::Empty)));
    }
}

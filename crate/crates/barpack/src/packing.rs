//! Packing: the start bin assigned to each chart.

/// Start bins, one per chart, 1-based: chart `i`'s left bar falls into bin
/// `starts[i]` and its right bar into `starts[i] + 1`. The container itself
/// is dumb; range and feasibility checks live in [`crate::verify`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Packing {
    starts: Vec<usize>,
}

impl Packing {
    pub fn new(starts: Vec<usize>) -> Self {
        Packing { starts }
    }

    pub fn starts(&self) -> &[usize] {
        &self.starts
    }

    pub fn start(&self, chart: usize) -> usize {
        self.starts[chart]
    }

    pub fn len(&self) -> usize {
        self.starts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.starts.is_empty()
    }

    /// True when no two charts share a start bin, i.e. every bin holds at
    /// most two bars.
    pub fn is_linearly_ordered(&self) -> bool {
        let mut seen = self.starts.clone();
        seen.sort_unstable();
        seen.windows(2).all(|w| w[0] != w[1])
    }
}

impl FromIterator<usize> for Packing {
    fn from_iter<T: IntoIterator<Item = usize>>(iter: T) -> Self {
        Packing::new(iter.into_iter().collect())
    }
}

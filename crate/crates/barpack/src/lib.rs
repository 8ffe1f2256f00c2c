//! Packing two-bar charts into unit-capacity bins.
//!
//! A two-bar chart is an item with two ordered bars; packing it at bin `k`
//! puts its left bar in bin `k` and its right bar in bin `k+1`, and a
//! packing is feasible when no bin's bar heights sum above 1. This crate
//! covers the restriction to *big* charts (at least one bar above 1/2) and
//! provides:
//!
//! - [`galo`]: the greedy solver with preliminary lexicographic ordering,
//!   within one bin of optimal whenever every left bar is big;
//! - [`matching`]: pair-compatibility graph plus maximum-cardinality
//!   matching, packing matched charts two per bin pair;
//! - [`app`]: best of the two above, certified within `4/3 * OPT + 2/3`
//!   for all-big instances;
//! - [`exact`]: exhaustive oracles (global and linearly ordered) usable at
//!   small n to certify the bounds;
//! - [`verify`]: an independent feasibility checker, length/chain reporter,
//!   bound checker, and the pair-splitting transformation;
//! - [`reduction`]: numerical 3-dimensional matching instances, their
//!   conversion into big-chart instances, and equivalence certification;
//! - [`gen`]: seeded, lattice-height instance generators;
//! - [`bench`]: parallel benchmark sweeps with CSV output.
//!
//! All heights are exact rationals ([`rational::Rational`]); every capacity
//! comparison in the crate is exact, so certificates are never at the mercy
//! of float rounding.

pub mod app;
pub mod bench;
pub mod exact;
pub mod galo;
pub mod gen;
pub mod instance;
pub mod io;
pub mod matching;
pub mod packing;
pub mod rational;
pub mod reduction;
pub mod verify;

pub use instance::{BarChart, Instance, InstanceClass};
pub use packing::Packing;
pub use rational::Rational;

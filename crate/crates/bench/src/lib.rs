//! Inputs shared by the benchmarks.

use planar_hopf::error::DEFAULT_CAP;
use planar_hopf::forest::enumerate_forests_capped;
use planar_hopf::{DecorationSet, Forest};

/// Every undecorated forest of weight `n`, in ascending order.
pub fn forests(n: usize) -> Vec<Forest> {
    enumerate_forests_capped(n, &DecorationSet::undecorated(), DEFAULT_CAP).expect("benchmark weights are small")
}

/// The largest forest of weight `n`: a single chain.
pub fn chain(n: usize) -> Forest {
    forests(n).pop().expect("weight at least one")
}

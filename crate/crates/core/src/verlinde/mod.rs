//! Multiplicities of the indecomposable summands of Verlinde bundles on an
//! elliptic curve, in closed form and as character sums over the finite
//! Theta group.

mod decompose;
mod multiplicity;
mod orbit;
mod symbol;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::arith::{gcd3, modulo};
use crate::cyclo::CycloNum;
use crate::error::{Error, Result};

pub use decompose::{
    decompose, splits_into_line_bundles, tensor_power_shape, theorem2_decompose,
    DecompositionReport, MultiplicityTable, Summand, SummandDescriptor, TensorPowerShape,
    Theorem2Twist,
};
pub use multiplicity::{
    mult_charsum_oracle, mult_theorem1, mult_theorem3, mult_theorem3_charsum_oracle,
    restrict_to_torsion, MkTraceTable, Theorem3TraceTable,
};
pub use orbit::{order_orbit_automorphism, OrbitAutomorphism, OrbitReport};
pub use symbol::{brace_symbol, n_lambda, torsion_sum_brute, torsion_sum_closed};

/// Character `(x, y) ↦ ζ_h^{ax+by}` of `X_h = (Z/h)²`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Character {
    h: usize,
    a: usize,
    b: usize,
}

impl Character {
    pub fn new(h: usize, a: i64, b: i64) -> Result<Self> {
        if h == 0 {
            return Err(Error::InvalidInput("torsion order h must be positive".into()));
        }
        Ok(Character {
            h,
            a: modulo(a, h),
            b: modulo(b, h),
        })
    }

    pub fn trivial(h: usize) -> Self {
        assert!(h > 0);
        Character { h, a: 0, b: 0 }
    }

    pub fn h(&self) -> usize {
        self.h
    }

    pub fn a(&self) -> usize {
        self.a
    }

    pub fn b(&self) -> usize {
        self.b
    }

    /// `h / gcd(h, a, b)`.
    pub fn order(&self) -> usize {
        self.h / gcd3(self.h, self.a, self.b)
    }

    /// Exponent `ax + by mod h` of the value at `(x, y)`.
    pub fn exponent(&self, x: usize, y: usize) -> usize {
        (self.a * (x % self.h) + self.b * (y % self.h)) % self.h
    }

    pub fn value(&self, x: usize, y: usize) -> CycloNum {
        CycloNum::one(self.h).mul_root(self.exponent(x, y) as i64)
    }
}

/// All `h²` characters, sorted by order and then by `(a, b)`.
pub fn enumerate_characters(h: usize) -> Vec<Character> {
    let mut out: Vec<Character> = (0..h)
        .flat_map(|a| (0..h).map(move |b| Character { h, a, b }))
        .collect();
    out.sort_by_key(|c| (c.order(), c.a, c.b));
    out
}

/// Number of characters of each order.
pub fn order_counts(h: usize) -> BTreeMap<usize, usize> {
    let mut counts = BTreeMap::new();
    for c in enumerate_characters(h) {
        *counts.entry(c.order()).or_insert(0) += 1;
    }
    counts
}

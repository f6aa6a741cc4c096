//! Exact homological algebra over the integers.

mod complex;
mod homology;
pub mod matrix;
pub mod snf;

use std::collections::BTreeMap;

pub use complex::{cone, fiber_lift, homotopy_fiber, ChainComplex, ChainMap, Homotopy};
pub use homology::HomologyGroup;
pub use matrix::Matrix;
pub use snf::{invariant_factors, smith_normal_form, SmithForm};

/// Per-degree comparison of two homology tables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomologyComparison {
    pub degrees: BTreeMap<i64, (HomologyGroup, HomologyGroup)>,
}

impl HomologyComparison {
    pub fn isomorphic(&self) -> bool {
        self.degrees.values().all(|(a, b)| a == b)
    }

    pub fn mismatches(&self) -> Vec<i64> {
        self.degrees.iter().filter(|(_, (a, b))| a != b).map(|(&n, _)| n).collect()
    }
}

/// Compares isomorphism types (Betti numbers and torsion) of `H_n(c)` and
/// `H_n(d)` for `n` in `lo ..= hi`.
pub fn homology_iso_check(c: &ChainComplex, d: &ChainComplex, lo: i64, hi: i64) -> HomologyComparison {
    let hc = c.homology_range(lo, hi);
    let hd = d.homology_range(lo, hi);
    let degrees = hc.into_iter().zip(hd).map(|((n, a), (_, b))| (n, (a, b))).collect();
    HomologyComparison { degrees }
}

/// Outcome of [`quasi_iso_check`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuasiIsoReport {
    pub lo: i64,
    pub hi: i64,
    /// `H_n(cone f)` for `n` in `lo ..= hi + 1`.
    pub cone_homology: BTreeMap<i64, HomologyGroup>,
}

impl QuasiIsoReport {
    /// `H_n(f)` is an isomorphism for every `n` in `lo ..= hi`.
    pub fn is_quasi_iso(&self) -> bool {
        self.cone_homology.values().all(HomologyGroup::is_zero)
    }
}

/// Decides whether `f` induces isomorphisms `H_n(A) → H_n(B)` for all `n` in
/// `lo ..= hi`, via the long exact sequence of the mapping cone: the cone
/// must be acyclic in degrees `lo ..= hi + 1`. With `range = None` the whole
/// support is checked, which is an exact quasi-isomorphism test.
pub fn quasi_iso_check(f: &ChainMap, range: Option<(i64, i64)>) -> QuasiIsoReport {
    let k = cone(f);
    let (lo, hi) = match range {
        Some(r) => r,
        None => {
            let s = [f.source().support(), f.target().support()];
            let lo = s.iter().flatten().map(|x| x.0).min().unwrap_or(0);
            let hi = s.iter().flatten().map(|x| x.1).max().unwrap_or(-1);
            (lo, hi)
        }
    };
    QuasiIsoReport { lo, hi, cone_homology: k.homology_range(lo, hi + 1) }
}

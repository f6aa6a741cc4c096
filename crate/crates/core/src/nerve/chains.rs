//! Chain complexes of nerves.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use super::{nerve, nerve_dimension, Dimension, Limits, Nerve, Simplex};
use crate::chaincx::{ChainComplex, ChainMap, Matrix};
use crate::error::{Error, Result};
use crate::fincat::{FinCategory, FinFunctor};

/// Checks `dim N C ≤ cap` and enumerates the nerve.
fn full_nerve(c: &Arc<FinCategory>, cap: usize, limits: Limits) -> Result<Nerve> {
    match nerve_dimension(c) {
        Dimension::Infinite { cycle } => {
            Err(Error::InfiniteDimension { cycle: super::cycle_string(c, &cycle) })
        }
        Dimension::Finite(d) if d > cap => {
            Err(Error::Capacity { what: "nerve dimension".into(), needed: d, limit: cap })
        }
        _ => nerve(c, cap, limits),
    }
}

impl Nerve {
    /// Normalized chains: degree `k` is free on the nondegenerate
    /// `k`-simplices, `∂ = Σ (−1)^j d_j` with degenerate faces dropped. The
    /// reduced complex has an extra `Z` in degree `−1` and the augmentation.
    /// Simplices above the cap are absent, so the top degree is a truncation
    /// when the nerve is larger than the cap.
    pub fn chain_complex(&self, reduced: bool) -> ChainComplex {
        let c = self.base();
        let top = self.top();
        if top.is_none() && !reduced {
            return ChainComplex::zero();
        }
        let top = top.map_or(0, |t| t + 1);
        let mut ranks = Vec::new();
        let mut ds = Vec::new();
        let mut labels = Vec::new();
        if reduced {
            ranks.push(1);
            ds.push(Matrix::zeros(0, 1));
            labels.push(vec!["[]".to_string()]);
        }
        for k in 0..top {
            let cols = self.simplices(k);
            ranks.push(cols.len());
            labels.push(cols.iter().map(|s| s.label(c)).collect());
            if k == 0 {
                let rows = usize::from(reduced);
                let mut d = Matrix::zeros(rows, cols.len());
                if reduced {
                    for j in 0..cols.len() {
                        d.set(0, j, 1);
                    }
                }
                ds.push(d);
                continue;
            }
            let mut d = Matrix::zeros(self.simplices(k - 1).len(), cols.len());
            for (col, s) in cols.iter().enumerate() {
                for j in 0..=k {
                    if let Some(face) = s.face(c, j) {
                        let row = self.position(&face).expect("faces of nondegenerate simplices are listed");
                        d.add_at(row, col, if j % 2 == 0 { 1 } else { -1 });
                    }
                }
            }
            ds.push(d);
        }
        let lo = if reduced { -1 } else { 0 };
        let cx = ChainComplex::new(lo, ranks, ds).expect("nerve boundary squares to zero");
        cx.with_labels(labels).expect("labels match ranks")
    }
}

/// Normalized (optionally reduced) chain complex of `N C`; requires
/// `dim N C ≤ cap`.
pub fn nerve_chain_complex(c: &Arc<FinCategory>, cap: usize, reduced: bool, limits: Limits) -> Result<ChainComplex> {
    Ok(full_nerve(c, cap, limits)?.chain_complex(reduced))
}

/// Unnormalized chains of `N C` through degree `top`: every composable
/// string of `k` morphisms, identities included, is a generator. The
/// homology agrees with the normalized complex below `top`.
pub fn unnormalized_chain_complex(c: &FinCategory, top: usize, reduced: bool, limits: Limits) -> Result<ChainComplex> {
    let mut levels: Vec<Vec<Simplex>> = vec![c.objects().map(Simplex::vertex).collect()];
    let mut total = levels[0].len();
    for _ in 0..top {
        let mut next = Vec::new();
        for s in levels.last().unwrap() {
            for &m in c.out_of(s.target(c)) {
                let mut arrows = s.arrows.clone();
                arrows.push(m);
                next.push(Simplex { start: s.start, arrows });
            }
        }
        total += next.len();
        if total > limits.max_simplices {
            return Err(Error::Capacity {
                what: "unnormalized nerve simplices".into(),
                needed: total,
                limit: limits.max_simplices,
            });
        }
        levels.push(next);
    }
    let index: Vec<HashMap<&Simplex, usize>> =
        levels.iter().map(|v| v.iter().enumerate().map(|(k, s)| (s, k)).collect()).collect();
    let mut ranks = Vec::new();
    let mut ds = Vec::new();
    if reduced {
        ranks.push(1);
        ds.push(Matrix::zeros(0, 1));
    }
    for (k, cols) in levels.iter().enumerate() {
        ranks.push(cols.len());
        if k == 0 {
            let mut d = Matrix::zeros(usize::from(reduced), cols.len());
            if reduced {
                for j in 0..cols.len() {
                    d.set(0, j, 1);
                }
            }
            ds.push(d);
            continue;
        }
        let mut d = Matrix::zeros(levels[k - 1].len(), cols.len());
        for (col, s) in cols.iter().enumerate() {
            for j in 0..=k {
                let face = raw_face(c, s, j);
                d.add_at(index[k - 1][&face], col, if j % 2 == 0 { 1 } else { -1 });
            }
        }
        ds.push(d);
    }
    ChainComplex::new(if reduced { -1 } else { 0 }, ranks, ds)
}

/// Face `d_j` keeping identities.
fn raw_face(c: &FinCategory, s: &Simplex, j: usize) -> Simplex {
    let k = s.dim();
    if j == 0 {
        return Simplex { start: c.tgt(s.arrows[0]), arrows: s.arrows[1..].to_vec() };
    }
    if j == k {
        return Simplex { start: s.start, arrows: s.arrows[..k - 1].to_vec() };
    }
    let mut arrows = s.arrows[..j - 1].to_vec();
    arrows.push(c.compose(s.arrows[j], s.arrows[j - 1]).expect("composable"));
    arrows.extend_from_slice(&s.arrows[j + 1..]);
    Simplex { start: s.start, arrows }
}

/// `N F` on normalized chains: a simplex goes to its image string, or to
/// zero when the image contains an identity. Both nerves must have
/// dimension at most `cap`.
pub fn induced_nerve_chain_map(f: &FinFunctor, cap: usize, reduced: bool, limits: Limits) -> Result<ChainMap> {
    let (src, tgt) = (f.source(), f.target());
    let ns = full_nerve(src, cap, limits)?;
    let nt = full_nerve(tgt, cap, limits)?;
    let a = Arc::new(ns.chain_complex(reduced));
    let b = Arc::new(nt.chain_complex(reduced));
    let mut comps = BTreeMap::new();
    if reduced {
        comps.insert(-1, Matrix::identity(1));
    }
    for k in 0..=cap {
        let cols = ns.simplices(k);
        if cols.is_empty() {
            break;
        }
        let mut m = Matrix::zeros(nt.simplices(k).len(), cols.len());
        for (col, s) in cols.iter().enumerate() {
            let arrows: Vec<_> = s.arrows.iter().map(|&x| f.mor(x)).collect();
            if arrows.iter().any(|&x| tgt.is_identity(x)) {
                continue;
            }
            let image = Simplex { start: f.obj(s.start), arrows };
            m.set(nt.position(&image).expect("image string is a simplex"), col, 1);
        }
        comps.insert(k as i64, m);
    }
    ChainMap::new(a, b, comps)
}

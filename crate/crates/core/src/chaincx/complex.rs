//! Bounded, finitely generated free chain complexes over `Z` and chain maps.
//!
//! Degrees are homological: `∂ₙ` maps degree `n` to `n - 1`. A boundary
//! matrix has one row per generator of the target degree and one column per
//! generator of the source degree.

use std::collections::BTreeMap;
use std::sync::Arc;

use rayon::prelude::*;

use super::homology::HomologyGroup;
use super::matrix::Matrix;
use super::snf::{invariant_factors, rank};
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct ChainComplex {
    lo: i64,
    ranks: Vec<usize>,
    /// `boundaries[k]` is `∂` out of degree `lo + k`.
    boundaries: Vec<Matrix>,
    labels: Option<Vec<Vec<String>>>,
}

/// Structural equality; generator labels are ignored.
impl PartialEq for ChainComplex {
    fn eq(&self, other: &Self) -> bool {
        self.lo == other.lo && self.ranks == other.ranks && self.boundaries == other.boundaries
    }
}

impl Eq for ChainComplex {}

impl ChainComplex {
    pub fn zero() -> Self {
        ChainComplex { lo: 0, ranks: Vec::new(), boundaries: Vec::new(), labels: None }
    }

    /// Builds a complex with generators in degrees `lo ..` from the given
    /// ranks and boundary matrices (`boundaries[k]` leaves degree `lo + k`).
    /// Checks shapes and `∂∂ = 0`.
    pub fn new(lo: i64, ranks: Vec<usize>, boundaries: Vec<Matrix>) -> Result<Self> {
        let c = Self::from_parts(lo, ranks, boundaries)?;
        c.check_d_squared()?;
        Ok(c)
    }

    /// Like [`ChainComplex::new`] but only checks shapes. Callers that build
    /// large complexes assert `∂∂ = 0` themselves.
    pub(crate) fn from_parts(lo: i64, ranks: Vec<usize>, boundaries: Vec<Matrix>) -> Result<Self> {
        if ranks.len() != boundaries.len() {
            return Err(Error::Chain(format!(
                "{} ranks but {} boundary matrices",
                ranks.len(),
                boundaries.len()
            )));
        }
        for (k, d) in boundaries.iter().enumerate() {
            let below = if k == 0 { 0 } else { ranks[k - 1] };
            if d.rows() != below || d.cols() != ranks[k] {
                return Err(Error::Chain(format!(
                    "boundary out of degree {} is {}x{}, expected {}x{}",
                    lo + k as i64,
                    d.rows(),
                    d.cols(),
                    below,
                    ranks[k]
                )));
            }
        }
        let mut c = ChainComplex { lo, ranks, boundaries, labels: None };
        c.trim();
        Ok(c)
    }

    /// Single copy of `Z` in degree `n`.
    pub fn sphere(n: i64) -> Self {
        ChainComplex { lo: n, ranks: vec![1], boundaries: vec![Matrix::zeros(0, 1)], labels: None }
    }

    /// `Z --k--> Z` from degree `n` to degree `n - 1`.
    pub fn disk(n: i64, k: i64) -> Self {
        let d = Matrix::from_rows(&[vec![k]], 1);
        ChainComplex::from_parts(n - 1, vec![1, 1], vec![Matrix::zeros(0, 1), d]).expect("shapes")
    }

    fn trim(&mut self) {
        while self.ranks.last() == Some(&0) {
            self.ranks.pop();
            self.boundaries.pop();
            if let Some(l) = self.labels.as_mut() {
                l.pop();
            }
        }
        let lead = self.ranks.iter().take_while(|&&r| r == 0).count();
        if lead > 0 {
            self.ranks.drain(..lead);
            self.boundaries.drain(..lead);
            if let Some(l) = self.labels.as_mut() {
                l.drain(..lead);
            }
            self.lo += lead as i64;
            if let Some(d) = self.boundaries.first_mut() {
                *d = Matrix::zeros(0, d.cols());
            }
        }
        if self.ranks.is_empty() {
            self.lo = 0;
        }
    }

    pub fn with_labels(mut self, labels: Vec<Vec<String>>) -> Result<Self> {
        if labels.len() != self.ranks.len()
            || labels.iter().zip(&self.ranks).any(|(l, &r)| l.len() != r)
        {
            return Err(Error::Chain("label table does not match ranks".into()));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn labels(&self, n: i64) -> Option<&[String]> {
        let k = self.index(n)?;
        self.labels.as_ref().map(|l| l[k].as_slice())
    }

    fn index(&self, n: i64) -> Option<usize> {
        let k = n - self.lo;
        (k >= 0 && (k as usize) < self.ranks.len()).then_some(k as usize)
    }

    pub fn is_zero(&self) -> bool {
        self.ranks.is_empty()
    }

    /// Lowest degree with a generator (0 for the zero complex).
    pub fn lo(&self) -> i64 {
        self.lo
    }

    /// Highest degree with a generator (`lo - 1` for the zero complex).
    pub fn hi(&self) -> i64 {
        self.lo + self.ranks.len() as i64 - 1
    }

    /// Degrees carrying generators, as `(lo, hi)`, or `None` when zero.
    pub fn support(&self) -> Option<(i64, i64)> {
        (!self.is_zero()).then(|| (self.lo, self.hi()))
    }

    pub fn rank(&self, n: i64) -> usize {
        self.index(n).map_or(0, |k| self.ranks[k])
    }

    /// `∂ₙ`, a `rank(n-1) × rank(n)` matrix (possibly empty).
    pub fn boundary(&self, n: i64) -> Matrix {
        match self.index(n) {
            Some(k) => self.boundaries[k].clone(),
            None => Matrix::zeros(self.rank(n - 1), self.rank(n)),
        }
    }

    pub fn boundary_ref(&self, n: i64) -> Option<&Matrix> {
        self.index(n).map(|k| &self.boundaries[k])
    }

    pub fn check_d_squared(&self) -> Result<()> {
        for n in self.lo + 1..=self.hi() {
            let dd = self.boundary(n - 1).mul(&self.boundary(n));
            if !dd.is_zero() {
                return Err(Error::Chain(format!("boundary squares to nonzero out of degree {n}")));
            }
        }
        Ok(())
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.ranks
            .iter()
            .enumerate()
            .map(|(k, &r)| if (self.lo + k as i64) % 2 == 0 { r as i64 } else { -(r as i64) })
            .sum()
    }

    /// `H_n`.
    pub fn homology(&self, n: i64) -> HomologyGroup {
        let out = rank(&self.boundary(n));
        let inc = invariant_factors(&self.boundary(n + 1));
        HomologyGroup::from_ranks(self.rank(n), out, &inc)
    }

    /// `H_n` for every `n` in `lo ..= hi`, computing each boundary's
    /// invariants once.
    pub fn homology_range(&self, lo: i64, hi: i64) -> BTreeMap<i64, HomologyGroup> {
        if hi < lo {
            return BTreeMap::new();
        }
        let invariants: Vec<_> = (lo..=hi + 1)
            .into_par_iter()
            .map(|n| invariant_factors(&self.boundary(n)))
            .collect();
        (lo..=hi)
            .map(|n| {
                let k = (n - lo) as usize;
                (n, HomologyGroup::from_ranks(self.rank(n), invariants[k].len(), &invariants[k + 1]))
            })
            .collect()
    }

    /// Homology over the support (empty map for the zero complex).
    pub fn homology_all(&self) -> BTreeMap<i64, HomologyGroup> {
        match self.support() {
            Some((lo, hi)) => self.homology_range(lo, hi),
            None => BTreeMap::new(),
        }
    }

    pub fn is_acyclic(&self) -> bool {
        self.homology_all().values().all(HomologyGroup::is_zero)
    }

    /// Homological connectivity: the largest `n` with `H_k = 0` for all
    /// `k ≤ n`, or `None` when the complex is acyclic.
    pub fn connectivity(&self) -> Option<i64> {
        self.homology_all()
            .into_iter()
            .find(|(_, h)| !h.is_zero())
            .map(|(n, _)| n - 1)
    }

    pub fn direct_sum(&self, other: &ChainComplex) -> ChainComplex {
        let (lo, hi) = span(&[self, other]);
        let mut ranks = Vec::new();
        let mut ds = Vec::new();
        for n in lo..=hi {
            ranks.push(self.rank(n) + other.rank(n));
            let mut d = Matrix::zeros(self.rank(n - 1) + other.rank(n - 1), self.rank(n) + other.rank(n));
            d.put_block(0, 0, &self.boundary(n));
            d.put_block(self.rank(n - 1), self.rank(n), &other.boundary(n));
            ds.push(d);
        }
        ChainComplex::from_parts(lo, ranks, ds).expect("direct sum shapes")
    }
}

fn same(a: &Arc<ChainComplex>, b: &Arc<ChainComplex>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

/// Smallest degree window covering all given complexes.
fn span(cs: &[&ChainComplex]) -> (i64, i64) {
    let sup: Vec<(i64, i64)> = cs.iter().filter_map(|c| c.support()).collect();
    if sup.is_empty() {
        return (0, -1);
    }
    (sup.iter().map(|s| s.0).min().unwrap(), sup.iter().map(|s| s.1).max().unwrap())
}

/// A degree-preserving map between complexes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainMap {
    source: Arc<ChainComplex>,
    target: Arc<ChainComplex>,
    /// Only degrees where both sides are nonzero are stored.
    components: BTreeMap<i64, Matrix>,
}

impl ChainMap {
    /// Builds a chain map, checking shapes and `∂f = f∂`. Missing degrees
    /// are zero.
    pub fn new(
        source: Arc<ChainComplex>,
        target: Arc<ChainComplex>,
        components: BTreeMap<i64, Matrix>,
    ) -> Result<Self> {
        let f = Self::from_parts(source, target, components)?;
        f.check_commutes()?;
        Ok(f)
    }

    pub(crate) fn from_parts(
        source: Arc<ChainComplex>,
        target: Arc<ChainComplex>,
        components: BTreeMap<i64, Matrix>,
    ) -> Result<Self> {
        let mut kept = BTreeMap::new();
        for (n, m) in components {
            if m.rows() != target.rank(n) || m.cols() != source.rank(n) {
                if m.is_zero() {
                    continue;
                }
                return Err(Error::Chain(format!(
                    "map component in degree {n} is {}x{}, expected {}x{}",
                    m.rows(),
                    m.cols(),
                    target.rank(n),
                    source.rank(n)
                )));
            }
            if m.rows() > 0 && m.cols() > 0 {
                kept.insert(n, m);
            }
        }
        Ok(ChainMap { source, target, components: kept })
    }

    pub fn zero(source: Arc<ChainComplex>, target: Arc<ChainComplex>) -> Self {
        ChainMap { source, target, components: BTreeMap::new() }
    }

    pub fn identity(c: Arc<ChainComplex>) -> Self {
        let components = c
            .support()
            .map(|(lo, hi)| (lo..=hi).map(|n| (n, Matrix::identity(c.rank(n)))).collect())
            .unwrap_or_default();
        ChainMap { source: c.clone(), target: c, components }
    }

    pub fn source(&self) -> &Arc<ChainComplex> {
        &self.source
    }

    pub fn target(&self) -> &Arc<ChainComplex> {
        &self.target
    }

    pub fn component(&self, n: i64) -> Matrix {
        self.components
            .get(&n)
            .cloned()
            .unwrap_or_else(|| Matrix::zeros(self.target.rank(n), self.source.rank(n)))
    }

    pub fn components(&self) -> &BTreeMap<i64, Matrix> {
        &self.components
    }

    pub fn is_zero(&self) -> bool {
        self.components.values().all(Matrix::is_zero)
    }

    fn degree_window(&self) -> (i64, i64) {
        span(&[&self.source, &self.target])
    }

    /// Equal matrices in every degree, with absent components read as zero.
    /// Endpoints are not compared.
    pub fn same_matrices(&self, other: &ChainMap) -> bool {
        let (lo, hi) = span(&[&self.source, &self.target, &other.source, &other.target]);
        (lo..=hi).all(|n| self.component(n) == other.component(n))
    }

    /// Degrees where `∂f ≠ f∂`.
    pub fn commutation_failures(&self) -> Vec<i64> {
        let (lo, hi) = self.degree_window();
        (lo..=hi + 1)
            .filter(|&n| {
                let lhs = self.target.boundary(n).mul(&self.component(n));
                let rhs = self.component(n - 1).mul(&self.source.boundary(n));
                lhs != rhs
            })
            .collect()
    }

    pub fn check_commutes(&self) -> Result<()> {
        match self.commutation_failures().first() {
            None => Ok(()),
            Some(n) => Err(Error::Chain(format!("map does not commute with ∂ out of degree {n}"))),
        }
    }

    /// `self ∘ first`.
    pub fn compose(&self, first: &ChainMap) -> Result<ChainMap> {
        if !same(&first.target, &self.source) {
            return Err(Error::Chain("composing maps with mismatched middle complex".into()));
        }
        let comps = first
            .components
            .iter()
            .filter_map(|(&n, m)| self.components.get(&n).map(|g| (n, g.mul(m))))
            .collect();
        ChainMap::from_parts(first.source.clone(), self.target.clone(), comps)
    }

    pub fn add(&self, other: &ChainMap) -> Result<ChainMap> {
        self.combine(other, |a, b| a.add(b))
    }

    pub fn sub(&self, other: &ChainMap) -> Result<ChainMap> {
        self.combine(other, |a, b| a.sub(b))
    }

    fn combine(&self, other: &ChainMap, f: impl Fn(&Matrix, &Matrix) -> Matrix) -> Result<ChainMap> {
        if !same(&self.source, &other.source) || !same(&self.target, &other.target) {
            return Err(Error::Chain("adding maps with different endpoints".into()));
        }
        let (lo, hi) = self.degree_window();
        let comps = (lo..=hi).map(|n| (n, f(&self.component(n), &other.component(n)))).collect();
        ChainMap::from_parts(self.source.clone(), self.target.clone(), comps)
    }
}

/// A degree `+1` map `h: A_n → B_{n+1}`, as used for chain homotopies.
#[derive(Clone, Debug)]
pub struct Homotopy {
    pub source: Arc<ChainComplex>,
    pub target: Arc<ChainComplex>,
    /// `components[n]: A_n → B_{n+1}`.
    pub components: BTreeMap<i64, Matrix>,
}

impl Homotopy {
    pub fn component(&self, n: i64) -> Matrix {
        self.components
            .get(&n)
            .cloned()
            .unwrap_or_else(|| Matrix::zeros(self.target.rank(n + 1), self.source.rank(n)))
    }

    /// `∂h + h∂` as a chain map `A → B`.
    pub fn boundary(&self) -> ChainMap {
        let (lo, hi) = span(&[&self.source, &self.target]);
        let comps = (lo..=hi)
            .map(|n| {
                let a = self.target.boundary(n + 1).mul(&self.component(n));
                let b = self.component(n - 1).mul(&self.source.boundary(n));
                (n, a.add(&b))
            })
            .collect();
        ChainMap::from_parts(self.source.clone(), self.target.clone(), comps).expect("homotopy shapes")
    }
}

/// Mapping cone: `cone(f)ₙ = Aₙ₋₁ ⊕ Bₙ`, `∂(a, b) = (−∂a, ∂b + f(a))`.
pub fn cone(f: &ChainMap) -> ChainComplex {
    let (a, b) = (&f.source, &f.target);
    let lo = [a.support().map(|s| s.0 + 1), b.support().map(|s| s.0)].into_iter().flatten().min();
    let hi = [a.support().map(|s| s.1 + 1), b.support().map(|s| s.1)].into_iter().flatten().max();
    let (Some(lo), Some(hi)) = (lo, hi) else { return ChainComplex::zero() };
    let mut ranks = Vec::new();
    let mut ds = Vec::new();
    for n in lo..=hi {
        ranks.push(a.rank(n - 1) + b.rank(n));
        let mut d = Matrix::zeros(a.rank(n - 2) + b.rank(n - 1), a.rank(n - 1) + b.rank(n));
        d.put_block(0, 0, &a.boundary(n - 1).neg());
        d.put_block(a.rank(n - 2), 0, &f.component(n - 1));
        d.put_block(a.rank(n - 2), a.rank(n - 1), &b.boundary(n));
        ds.push(d);
    }
    let c = ChainComplex::from_parts(lo, ranks, ds).expect("cone shapes");
    debug_assert!(c.check_d_squared().is_ok());
    c
}

/// Homotopy fiber: `fib(f)ₙ = Aₙ ⊕ Bₙ₊₁`, `∂(a, b) = (∂a, −∂b − f(a))`,
/// with its projection to `A`.
pub fn homotopy_fiber(f: &ChainMap) -> (Arc<ChainComplex>, ChainMap) {
    let (a, b) = (&f.source, &f.target);
    let lo = [a.support().map(|s| s.0), b.support().map(|s| s.0 - 1)].into_iter().flatten().min();
    let hi = [a.support().map(|s| s.1), b.support().map(|s| s.1 - 1)].into_iter().flatten().max();
    let (Some(lo), Some(hi)) = (lo, hi) else {
        let z = Arc::new(ChainComplex::zero());
        return (z.clone(), ChainMap::zero(z, a.clone()));
    };
    let mut ranks = Vec::new();
    let mut ds = Vec::new();
    for n in lo..=hi {
        ranks.push(a.rank(n) + b.rank(n + 1));
        let mut d = Matrix::zeros(a.rank(n - 1) + b.rank(n), a.rank(n) + b.rank(n + 1));
        d.put_block(0, 0, &a.boundary(n));
        d.put_block(a.rank(n - 1), 0, &f.component(n).neg());
        d.put_block(a.rank(n - 1), a.rank(n), &b.boundary(n + 1).neg());
        ds.push(d);
    }
    let fib = Arc::new(ChainComplex::from_parts(lo, ranks, ds).expect("fiber shapes"));
    debug_assert!(fib.check_d_squared().is_ok());
    let comps = (lo..=hi)
        .map(|n| {
            let mut m = Matrix::zeros(a.rank(n), fib.rank(n));
            m.put_block(0, 0, &Matrix::identity(a.rank(n)));
            (n, m)
        })
        .collect();
    let proj = ChainMap::from_parts(fib.clone(), a.clone(), comps).expect("projection shapes");
    (fib, proj)
}

/// Lifts `g: T → A` to `T → fib(f)` using a null-homotopy `h: T → B[+1]`
/// with `f∘g = −(∂h + h∂)`. The result is checked to be a chain map.
pub fn fiber_lift(f: &ChainMap, fiber: &Arc<ChainComplex>, g: &ChainMap, h: &Homotopy) -> Result<ChainMap> {
    let t = g.source();
    let (a, b) = (&f.source, &f.target);
    let (lo, hi) = span(&[t, fiber]);
    let comps = (lo..=hi)
        .map(|n| {
            let mut m = Matrix::zeros(fiber.rank(n), t.rank(n));
            if a.rank(n) > 0 {
                m.put_block(0, 0, &g.component(n));
            }
            if b.rank(n + 1) > 0 {
                m.put_block(a.rank(n), 0, &h.component(n));
            }
            (n, m)
        })
        .collect();
    ChainMap::new(t.clone(), fiber.clone(), comps)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn arc(c: ChainComplex) -> Arc<ChainComplex> {
        Arc::new(c)
    }

    fn times(c: &Arc<ChainComplex>, k: i64) -> ChainMap {
        let (lo, hi) = c.support().unwrap();
        let comps = (lo..=hi).map(|n| (n, Matrix::identity(c.rank(n)).scale(k))).collect();
        ChainMap::new(c.clone(), c.clone(), comps).unwrap()
    }

    #[test]
    fn zero_boundary_two_degrees() {
        let c = ChainComplex::new(0, vec![1, 1], vec![Matrix::zeros(0, 1), Matrix::zeros(1, 1)]).unwrap();
        assert_eq!(c.homology(0), HomologyGroup::free(1));
        assert_eq!(c.homology(1), HomologyGroup::free(1));
        assert_eq!(c.homology(2), HomologyGroup::zero());
    }

    #[test]
    fn multiplication_by_two() {
        let c = ChainComplex::disk(1, 2);
        let h0 = c.homology(0);
        assert_eq!(h0.betti, 0);
        assert_eq!(h0.torsion, vec![2.into()]);
        assert!(c.homology(1).is_zero());
        assert_eq!(c.connectivity(), Some(-1));
        assert_eq!(ChainComplex::disk(3, 1).connectivity(), None);
    }

    #[test]
    fn bad_boundary_rejected() {
        // ∂∂ ≠ 0: Z -1-> Z -1-> Z
        let r = ChainComplex::new(
            0,
            vec![1, 1, 1],
            vec![Matrix::zeros(0, 1), Matrix::identity(1), Matrix::identity(1)],
        );
        assert!(r.is_err());
        let r = ChainComplex::new(0, vec![1, 2], vec![Matrix::zeros(0, 1), Matrix::zeros(1, 1)]);
        assert!(r.is_err());
    }

    #[test]
    fn trimming_normalizes() {
        let c = ChainComplex::new(
            -2,
            vec![0, 1, 0],
            vec![Matrix::zeros(0, 0), Matrix::zeros(0, 1), Matrix::zeros(1, 0)],
        )
        .unwrap();
        assert_eq!(c, ChainComplex::sphere(-1));
    }

    #[test]
    fn cone_of_identity_is_acyclic() {
        let c = arc(ChainComplex::sphere(0).direct_sum(&ChainComplex::disk(3, 2)));
        let id = ChainMap::identity(c.clone());
        let k = cone(&id);
        k.check_d_squared().unwrap();
        assert!(k.is_acyclic());
    }

    #[test]
    fn cone_of_zero_source_is_target() {
        let b = arc(ChainComplex::disk(2, 3));
        let f = ChainMap::zero(arc(ChainComplex::zero()), b.clone());
        assert_eq!(cone(&f), *b);
    }

    #[test]
    fn cone_of_doubling() {
        let s = arc(ChainComplex::sphere(0));
        let k = cone(&times(&s, 2));
        assert_eq!(k.homology(0).torsion, vec![2.into()]);
        assert!(k.homology(1).is_zero());
    }

    #[test]
    fn fiber_cases() {
        let a = arc(ChainComplex::disk(2, 2).direct_sum(&ChainComplex::sphere(1)));
        let (fib, proj) = homotopy_fiber(&ChainMap::zero(a.clone(), arc(ChainComplex::zero())));
        assert_eq!(*fib, *a);
        proj.check_commutes().unwrap();

        let b = arc(ChainComplex::disk(2, 2).direct_sum(&ChainComplex::sphere(3)));
        let (fib, _) = homotopy_fiber(&ChainMap::zero(arc(ChainComplex::zero()), b.clone()));
        for n in -1..=4 {
            assert_eq!(fib.homology(n), b.homology(n + 1), "loop shift in degree {n}");
        }

        let (fib, _) = homotopy_fiber(&ChainMap::identity(b));
        assert!(fib.is_acyclic());
    }
}

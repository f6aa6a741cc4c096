//! Total complexes of normalized cosimplicial replacements and the maps
//! between them.
//!
//! A generator of `Tot_n` is a pair `(σ, b)` with `σ` a nondegenerate
//! `s`-simplex of the shape's nerve and `b` a basis element of
//! `(X_{target σ})_{n+s}`. The differential is `D = δ + (−1)^s ∂_X` with
//! `(δx)_τ = Σ_j (−1)^j x_{d_j τ}`, where the last face is transported
//! along `X` of the last arrow of `τ` and degenerate faces contribute zero.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use super::{Diagram, NaturalTransformation};
use crate::chaincx::{ChainComplex, ChainMap, Homotopy, Matrix};
use crate::error::{Error, Result};
use crate::fincat::FinFunctor;
use crate::nerve::{nerve, nerve_dimension, Limits, Nerve, Simplex};

/// `Tot` of a diagram with an index of its generators.
#[derive(Clone, Debug)]
pub struct TotalComplex {
    diagram: Diagram,
    nerve: Nerve,
    complex: Arc<ChainComplex>,
    /// `(n, s, σ) ↦` offset of the block `(X_{target σ})_{n+s}` in degree `n`.
    blocks: HashMap<(i64, usize, usize), usize>,
}

impl TotalComplex {
    pub fn diagram(&self) -> &Diagram {
        &self.diagram
    }

    pub fn nerve(&self) -> &Nerve {
        &self.nerve
    }

    pub fn complex(&self) -> &Arc<ChainComplex> {
        &self.complex
    }

    /// Offset of the block of `σ ∈ ND_s` in degree `n`, if it is nonzero.
    pub fn offset(&self, n: i64, s: usize, sigma: usize) -> Option<usize> {
        self.blocks.get(&(n, s, sigma)).copied()
    }

    /// Generators of degree `n` in order: `(σ, index of the basis element)`.
    pub fn generators(&self, n: i64) -> Vec<(Simplex, usize)> {
        let mut out = Vec::new();
        for s in 0..=self.nerve.top().unwrap_or(0) {
            for (k, sigma) in self.nerve.simplices(s).iter().enumerate() {
                if self.offset(n, s, k).is_some() {
                    let r = self.block_rank(n, s, sigma);
                    out.extend((0..r).map(|b| (sigma.clone(), b)));
                }
            }
        }
        out
    }

    fn block_rank(&self, n: i64, s: usize, sigma: &Simplex) -> usize {
        self.diagram.vertex(sigma.target(self.nerve.base())).rank(n + s as i64)
    }
}

/// Builds `Tot(X)`. The shape must have a finite-dimensional nerve.
pub fn total_complex(d: &Diagram, limits: Limits) -> Result<TotalComplex> {
    let shape = d.shape();
    let dim = nerve_dimension(shape).require_finite(shape)?.unwrap_or(0);
    let nv = nerve(shape, dim, limits)?;
    let Some((xlo, xhi)) = d.degree_span() else {
        return Ok(TotalComplex {
            diagram: d.clone(),
            nerve: nv,
            complex: Arc::new(ChainComplex::zero()),
            blocks: HashMap::new(),
        });
    };
    let (lo, hi) = (xlo - dim as i64, xhi);
    let target = |s: &Simplex| d.vertex(s.target(shape));
    let mut blocks = HashMap::new();
    let mut ranks: BTreeMap<i64, usize> = BTreeMap::new();
    let mut total = 0usize;
    for n in lo - 1..=hi {
        let mut off = 0;
        for s in 0..=dim {
            for (k, sigma) in nv.simplices(s).iter().enumerate() {
                let r = target(sigma).rank(n + s as i64);
                if r > 0 {
                    blocks.insert((n, s, k), off);
                    off += r;
                }
            }
        }
        ranks.insert(n, off);
        total += off;
    }
    if total > limits.max_simplices {
        return Err(Error::Capacity { what: "total complex generators".into(), needed: total, limit: limits.max_simplices });
    }
    let rank = |n: i64| ranks.get(&n).copied().unwrap_or(0);
    let mut ds = Vec::new();
    for n in lo..=hi {
        let mut m = Matrix::zeros(rank(n - 1), rank(n));
        // internal differential, signed by the column
        for s in 0..=dim {
            let sign = if s % 2 == 0 { 1 } else { -1 };
            for (k, sigma) in nv.simplices(s).iter().enumerate() {
                if let (Some(&c0), Some(&r0)) = (blocks.get(&(n, s, k)), blocks.get(&(n - 1, s, k))) {
                    let b = target(sigma).boundary(n + s as i64);
                    add_block(&mut m, r0, c0, &b, sign);
                }
            }
        }
        // cosimplicial differential: row simplex τ of dimension t, column
        // simplex d_j τ of dimension t − 1
        for t in 1..=dim {
            for (k, tau) in nv.simplices(t).iter().enumerate() {
                let Some(&r0) = blocks.get(&(n - 1, t, k)) else { continue };
                for j in 0..=t {
                    let Some(face) = tau.face(shape, j) else { continue };
                    let pos = nv.position(&face).expect("face is listed");
                    let Some(&c0) = blocks.get(&(n, t - 1, pos)) else { continue };
                    let sign = if j % 2 == 0 { 1 } else { -1 };
                    let deg = n + t as i64 - 1;
                    if j < t {
                        let r = target(tau).rank(deg);
                        add_block(&mut m, r0, c0, &Matrix::identity(r), sign);
                    } else {
                        let last = *tau.arrows.last().unwrap();
                        add_block(&mut m, r0, c0, &d.edge(last).component(deg), sign);
                    }
                }
            }
        }
        ds.push(m);
    }
    let ranks_vec = (lo..=hi).map(rank).collect();
    let complex = ChainComplex::from_parts(lo, ranks_vec, ds)?;
    complex.check_d_squared()?;
    blocks.retain(|&(n, _, _), _| n >= lo);
    Ok(TotalComplex { diagram: d.clone(), nerve: nv, complex: Arc::new(complex), blocks })
}

fn add_block(m: &mut Matrix, r0: usize, c0: usize, b: &Matrix, sign: i64) {
    for i in 0..b.rows() {
        for (j, &v) in b.row(i).iter().enumerate() {
            if v != 0 {
                m.add_at(r0 + i, c0 + j, sign * v);
            }
        }
    }
}

/// Degree window covering both complexes.
fn window(a: &ChainComplex, b: &ChainComplex) -> Option<(i64, i64)> {
    let s: Vec<(i64, i64)> = [a.support(), b.support()].into_iter().flatten().collect();
    Some((s.iter().map(|x| x.0).min()?, s.iter().map(|x| x.1).max()?))
}

/// `G*: Tot_J(X) → Tot_I(G*X)`: `(G*x)_σ = x_{Gσ}`, zero when `Gσ` contains
/// an identity. `target` must be the total complex of the restricted
/// diagram. The result is checked to be a chain map.
pub fn restriction_between(g: &FinFunctor, source: &TotalComplex, target: &TotalComplex) -> Result<ChainMap> {
    if g.target().as_ref() != source.diagram.shape().as_ref() || g.source().as_ref() != target.diagram.shape().as_ref()
    {
        return Err(Error::Structure("restriction between total complexes of other shapes".into()));
    }
    let (a, b) = (&source.complex, &target.complex);
    let j_cat = g.target();
    let mut comps = BTreeMap::new();
    if let Some((lo, hi)) = window(a, b) {
        for n in lo..=hi {
            let mut m = Matrix::zeros(b.rank(n), a.rank(n));
            for s in 0..=target.nerve.top().unwrap_or(0) {
                for (k, sigma) in target.nerve.simplices(s).iter().enumerate() {
                    let Some(r0) = target.offset(n, s, k) else { continue };
                    let arrows: Vec<_> = sigma.arrows.iter().map(|&x| g.mor(x)).collect();
                    if arrows.iter().any(|&x| j_cat.is_identity(x)) {
                        continue;
                    }
                    let image = Simplex { start: g.obj(sigma.start), arrows };
                    let pos = source.nerve.position(&image).expect("image simplex is listed");
                    let c0 = source.offset(n, s, pos).expect("same vertex complex");
                    let r = target.block_rank(n, s, sigma);
                    add_block(&mut m, r0, c0, &Matrix::identity(r), 1);
                }
            }
            comps.insert(n, m);
        }
    }
    ChainMap::new(a.clone(), b.clone(), comps)
}

/// Total complexes of `X` and `G*X` with the restriction map between them.
#[derive(Clone, Debug)]
pub struct Restriction {
    pub source: TotalComplex,
    pub target: TotalComplex,
    pub map: ChainMap,
}

pub fn restriction_map(g: &FinFunctor, d: &Diagram, limits: Limits) -> Result<Restriction> {
    let source = total_complex(d, limits)?;
    let target = total_complex(&d.restrict(g)?, limits)?;
    let map = restriction_between(g, &source, &target)?;
    Ok(Restriction { source, target, map })
}

/// `Y(θ): Tot_I(G*X) → Tot_I(G'*X)`, acting by `X(θ_{target σ})` on the
/// block of `σ`. `source` and `target` must be built on the same nerve.
pub fn transformation_map(
    theta: &NaturalTransformation,
    x: &Diagram,
    source: &TotalComplex,
    target: &TotalComplex,
) -> Result<ChainMap> {
    let i_cat = theta.source.source();
    let (a, b) = (&source.complex, &target.complex);
    let mut comps = BTreeMap::new();
    if let Some((lo, hi)) = window(a, b) {
        for n in lo..=hi {
            let mut m = Matrix::zeros(b.rank(n), a.rank(n));
            for s in 0..=source.nerve.top().unwrap_or(0) {
                for (k, sigma) in source.nerve.simplices(s).iter().enumerate() {
                    let (Some(c0), Some(r0)) = (source.offset(n, s, k), target.offset(n, s, k)) else { continue };
                    let t = theta.components[sigma.target(i_cat)];
                    add_block(&mut m, r0, c0, &x.edge(t).component(n + s as i64), 1);
                }
            }
            comps.insert(n, m);
        }
    }
    ChainMap::new(a.clone(), b.clone(), comps)
}

/// The prism operator of `θ: G ⇒ G'` for `G, G': I → J`, a degree-one map
/// `Tot_J(X) → Tot_I(G'*X)` with `(Hx)_σ = Σ_j (−1)^j x_{P_j σ}`, where
/// `P_j σ = (G f₁, …, G f_j, θ_{i_j}, G' f_{j+1}, …, G' f_s)` and strings
/// containing an identity contribute zero. It satisfies
/// `DH + HD = G'* − Y(θ)∘G*`.
pub fn prism_homotopy(theta: &NaturalTransformation, source: &TotalComplex, target: &TotalComplex) -> Result<Homotopy> {
    let (g0, g1) = (&theta.source, &theta.target);
    let j_cat = g0.target();
    if j_cat.as_ref() != source.diagram.shape().as_ref() || g0.source().as_ref() != target.diagram.shape().as_ref() {
        return Err(Error::Structure("prism between total complexes of other shapes".into()));
    }
    let (a, b) = (&source.complex, &target.complex);
    let i_cat = g0.source();
    let mut comps = BTreeMap::new();
    if let Some((lo, hi)) = window(a, b) {
        for n in lo - 1..=hi {
            let mut m = Matrix::zeros(b.rank(n + 1), a.rank(n));
            for s in 0..=target.nerve.top().unwrap_or(0) {
                for (k, sigma) in target.nerve.simplices(s).iter().enumerate() {
                    let Some(r0) = target.offset(n + 1, s, k) else { continue };
                    let verts = sigma.vertices(i_cat);
                    for j in 0..=s {
                        let mut arrows = Vec::with_capacity(s + 1);
                        arrows.extend(sigma.arrows[..j].iter().map(|&x| g0.mor(x)));
                        arrows.push(theta.components[verts[j]]);
                        arrows.extend(sigma.arrows[j..].iter().map(|&x| g1.mor(x)));
                        if arrows.iter().any(|&x| j_cat.is_identity(x)) {
                            continue;
                        }
                        let p = Simplex { start: g0.obj(sigma.start), arrows };
                        let pos = source.nerve.position(&p).expect("prism simplex is listed");
                        let c0 = source.offset(n, s + 1, pos).expect("same vertex complex");
                        let r = target.block_rank(n + 1, s, sigma);
                        let sign = if j % 2 == 0 { 1 } else { -1 };
                        add_block(&mut m, r0, c0, &Matrix::identity(r), sign);
                    }
                }
            }
            comps.insert(n, m);
        }
    }
    Ok(Homotopy { source: a.clone(), target: b.clone(), components: comps })
}

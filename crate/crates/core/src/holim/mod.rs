//! Chain-level homotopy limits of diagrams of chain complexes.
//!
//! The homotopy limit of `X: I → Ch` is modeled by the total complex of the
//! normalized cosimplicial replacement, `Tot_n = Π_σ (X_{target σ})_{n+s}`
//! over nondegenerate `s`-simplices `σ` of `N I`. Connectivity means
//! homological connectivity: `H_k = 0` for `k ≤ n`.

mod total;
mod verify;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

pub use total::{
    prism_homotopy, restriction_between, restriction_map, total_complex, transformation_map, Restriction,
    TotalComplex,
};
pub use verify::{verify_theorem_a, verify_theorem_b, TheoremAReport, TheoremBReport};


use crate::chaincx::{ChainComplex, ChainMap};
use crate::error::{Error, Result};
use crate::fincat::{FinCategory, FinFunctor, MorId, ObjId};
use crate::groth::{CofiberData, HocArrow};
use crate::nerve::degree_table;

/// Homological connectivity, or a bound on it: an integer or `+∞`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Conn {
    Finite(i64),
    Infinite,
}

impl Conn {
    pub fn finite(self) -> Option<i64> {
        match self {
            Conn::Finite(n) => Some(n),
            Conn::Infinite => None,
        }
    }

    /// Connectivity of a complex computed from its homology.
    pub fn of(c: &ChainComplex) -> Conn {
        c.connectivity().map_or(Conn::Infinite, Conn::Finite)
    }

    /// Whether `H_k(c) = 0` for all `k ≤ self`.
    pub fn holds_for(self, c: &ChainComplex) -> bool {
        self <= Conn::of(c)
    }

    pub fn minus(self, d: usize) -> Conn {
        match self {
            Conn::Finite(n) => Conn::Finite(n - d as i64),
            Conn::Infinite => Conn::Infinite,
        }
    }
}

impl fmt::Display for Conn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Conn::Finite(n) => write!(f, "{n}"),
            Conn::Infinite => write!(f, "inf"),
        }
    }
}

impl std::str::FromStr for Conn {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.trim() {
            "inf" | "+inf" | "∞" | "+∞" => Ok(Conn::Infinite),
            t => t.parse().map(Conn::Finite).map_err(|_| format!("not a connectivity: {t:?}")),
        }
    }
}

/// `min_i (conn(i) − deg(i))` with `deg(i) = dim N(C/ᵢ)`; `+∞` on the
/// empty category. Errors if some degree is infinite.
pub fn theorem_a_bound(c: &Arc<FinCategory>, conn: &[Conn]) -> Result<Conn> {
    if conn.len() != c.num_objects() {
        return Err(Error::Structure(format!(
            "{} connectivity values for {} objects",
            conn.len(),
            c.num_objects()
        )));
    }
    let deg = degree_table(c)?.finite(c)?;
    Ok(c.objects().map(|i| conn[i].minus(deg[i])).min().unwrap_or(Conn::Infinite))
}

/// A functor from a finite category to chain complexes.
#[derive(Clone, Debug)]
pub struct Diagram {
    shape: Arc<FinCategory>,
    vertices: Vec<Arc<ChainComplex>>,
    edges: Vec<ChainMap>,
    conn: Option<Vec<Conn>>,
}

impl Diagram {
    /// Validates that every edge runs between the right vertices, that
    /// identities go to identities and that composition is preserved. Conn
    /// annotations are verified against the homology of the vertices.
    pub fn new(
        shape: Arc<FinCategory>,
        vertices: Vec<Arc<ChainComplex>>,
        edges: Vec<ChainMap>,
        conn: Option<Vec<Conn>>,
    ) -> Result<Self> {
        if vertices.len() != shape.num_objects() || edges.len() != shape.num_morphisms() {
            return Err(Error::Structure("diagram sizes do not match the shape".into()));
        }
        for m in shape.morphism_ids() {
            let e = &edges[m];
            if e.source().as_ref() != vertices[shape.src(m)].as_ref()
                || e.target().as_ref() != vertices[shape.tgt(m)].as_ref()
            {
                return Err(Error::Structure(format!("edge {} has the wrong ends", shape.name(m))));
            }
        }
        let mut problems = Vec::new();
        for x in shape.objects() {
            let id = &edges[shape.identity(x)];
            if !id.same_matrices(&ChainMap::identity(vertices[x].clone())) {
                problems.push(format!("edge {} is not the identity", shape.name(shape.identity(x))));
            }
        }
        for f in shape.non_identities() {
            for &g in shape.out_of(shape.tgt(f)) {
                if shape.is_identity(g) {
                    continue;
                }
                let gf = shape.compose(g, f).expect("composable");
                if !edges[g].compose(&edges[f])?.same_matrices(&edges[gf]) {
                    problems.push(format!("X({}∘{}) ≠ X({})∘X({})", shape.name(g), shape.name(f), shape.name(g), shape.name(f)));
                }
            }
        }
        if !problems.is_empty() {
            return Err(Error::Functoriality(problems));
        }
        if let Some(c) = &conn {
            if c.len() != shape.num_objects() {
                return Err(Error::Structure("conn annotation size does not match the shape".into()));
            }
            for x in shape.objects() {
                if !c[x].holds_for(&vertices[x]) {
                    return Err(Error::Annotation(format!(
                        "conn({}) = {} but the vertex has connectivity {}",
                        shape.label(x),
                        c[x],
                        Conn::of(&vertices[x])
                    )));
                }
            }
        }
        Ok(Diagram { shape, vertices, edges, conn })
    }

    /// Builds a diagram from maps on some morphisms. Identities are filled
    /// in; a missing morphism gets the composite of known factors when one
    /// exists and the zero map otherwise. The result is validated.
    pub fn from_partial(
        shape: Arc<FinCategory>,
        vertices: Vec<Arc<ChainComplex>>,
        given: BTreeMap<MorId, ChainMap>,
        conn: Option<Vec<Conn>>,
    ) -> Result<Self> {
        let n = shape.num_morphisms();
        if vertices.len() != shape.num_objects() {
            return Err(Error::Structure("diagram sizes do not match the shape".into()));
        }
        let mut edges: Vec<Option<ChainMap>> = vec![None; n];
        for (m, e) in given {
            if m >= n {
                return Err(Error::Structure(format!("edge for missing morphism {m}")));
            }
            edges[m] = Some(e);
        }
        for x in shape.objects() {
            edges[shape.identity(x)].get_or_insert_with(|| ChainMap::identity(vertices[x].clone()));
        }
        loop {
            let mut progress = false;
            for m in shape.non_identities() {
                if edges[m].is_some() {
                    continue;
                }
                let factor = shape.non_identities().find_map(|f| {
                    shape.out_of(shape.tgt(f)).iter().copied().find_map(|g| {
                        let known = !shape.is_identity(g) && shape.compose(g, f) == Some(m);
                        match (known, &edges[g], &edges[f]) {
                            (true, Some(eg), Some(ef)) => Some(eg.compose(ef)),
                            _ => None,
                        }
                    })
                });
                if let Some(e) = factor {
                    edges[m] = Some(e?);
                    progress = true;
                }
            }
            if !progress {
                break;
            }
        }
        let edges = shape
            .morphism_ids()
            .map(|m| {
                edges[m]
                    .take()
                    .unwrap_or_else(|| ChainMap::zero(vertices[shape.src(m)].clone(), vertices[shape.tgt(m)].clone()))
            })
            .collect();
        Diagram::new(shape, vertices, edges, conn)
    }

    pub fn shape(&self) -> &Arc<FinCategory> {
        &self.shape
    }

    pub fn vertex(&self, x: ObjId) -> &Arc<ChainComplex> {
        &self.vertices[x]
    }

    pub fn vertices(&self) -> &[Arc<ChainComplex>] {
        &self.vertices
    }

    pub fn edge(&self, m: MorId) -> &ChainMap {
        &self.edges[m]
    }

    pub fn edges(&self) -> &[ChainMap] {
        &self.edges
    }

    /// The declared annotations, if any.
    pub fn conn_annotations(&self) -> Option<&[Conn]> {
        self.conn.as_deref()
    }

    /// Declared annotations, or connectivity computed from homology.
    pub fn conn(&self) -> Vec<Conn> {
        match &self.conn {
            Some(c) => c.clone(),
            None => self.vertices.iter().map(|v| Conn::of(v)).collect(),
        }
    }

    pub fn with_conn(self, conn: Vec<Conn>) -> Result<Self> {
        Diagram::new(self.shape, self.vertices, self.edges, Some(conn))
    }

    /// `F*X = X∘F`.
    pub fn restrict(&self, f: &FinFunctor) -> Result<Diagram> {
        if f.target().as_ref() != self.shape.as_ref() {
            return Err(Error::Structure("restricting along a functor into another shape".into()));
        }
        let src = f.source();
        let vertices = src.objects().map(|x| self.vertices[f.obj(x)].clone()).collect();
        let edges = src.morphism_ids().map(|m| self.edges[f.mor(m)].clone()).collect();
        Ok(Diagram { shape: src.clone(), vertices, edges, conn: None })
    }

    /// Support of all vertices together.
    pub fn degree_span(&self) -> Option<(i64, i64)> {
        let s: Vec<(i64, i64)> = self.vertices.iter().filter_map(|v| v.support()).collect();
        Some((s.iter().map(|x| x.0).min()?, s.iter().map(|x| x.1).max()?))
    }
}

/// A natural transformation `θ: G ⇒ G'` between functors `I → J`, given by
/// its components `θ_i: G(i) → G'(i)`.
#[derive(Clone, Debug)]
pub struct NaturalTransformation {
    pub source: FinFunctor,
    pub target: FinFunctor,
    pub components: Vec<MorId>,
}

impl NaturalTransformation {
    /// Checks typing and naturality `G'(f)∘θ_a = θ_b∘G(f)`.
    pub fn new(source: FinFunctor, target: FinFunctor, components: Vec<MorId>) -> Result<Self> {
        let (i_cat, j_cat) = (source.source(), source.target());
        if target.source().as_ref() != i_cat.as_ref()
            || target.target().as_ref() != j_cat.as_ref()
            || components.len() != i_cat.num_objects()
        {
            return Err(Error::Structure("natural transformation between mismatched functors".into()));
        }
        for i in i_cat.objects() {
            let t = components[i];
            if t >= j_cat.num_morphisms() || j_cat.src(t) != source.obj(i) || j_cat.tgt(t) != target.obj(i) {
                return Err(Error::Structure(format!("component at {} has the wrong ends", i_cat.label(i))));
            }
        }
        let bad: Vec<String> = i_cat
            .morphism_ids()
            .filter(|&f| {
                let (a, b) = (i_cat.src(f), i_cat.tgt(f));
                j_cat.compose(target.mor(f), components[a]) != j_cat.compose(components[b], source.mor(f))
            })
            .map(|f| format!("naturality fails at {}", i_cat.name(f)))
            .collect();
        if !bad.is_empty() {
            return Err(Error::Functoriality(bad));
        }
        Ok(NaturalTransformation { source, target, components })
    }
}

/// The extension `X̄` of `X` over `hoc F`: `X_j` at `j`, `X_{F(i)}` at `i`,
/// the zero complex at `∗`; `j → i` given by `f: j → F(i)` acts by `X(f)`
/// and `∗ → i` by the zero map.
pub fn extend_over_hoc(h: &CofiberData, d: &Diagram) -> Result<Diagram> {
    let f = &h.functor;
    if f.target().as_ref() != d.shape().as_ref() {
        return Err(Error::Structure("diagram is not indexed by the target of F".into()));
    }
    let c = &h.cofiber;
    let zero = Arc::new(ChainComplex::zero());
    let mut vertices = vec![zero.clone(); c.num_objects()];
    for j in f.target().objects() {
        vertices[h.iota.obj(j)] = d.vertex(j).clone();
    }
    for i in f.source().objects() {
        vertices[h.kappa.obj(i)] = d.vertex(f.obj(i)).clone();
    }
    let edges = c
        .morphism_ids()
        .map(|m| {
            let (s, t) = (vertices[c.src(m)].clone(), vertices[c.tgt(m)].clone());
            match h.arrows[m] {
                HocArrow::Star => ChainMap::identity(zero.clone()),
                HocArrow::StarToI => ChainMap::zero(s, t),
                HocArrow::InI(x) => d.edge(f.mor(x)).clone(),
                HocArrow::InJ(g) | HocArrow::JToI(g) => d.edge(g).clone(),
            }
        })
        .collect();
    Diagram::new(c.clone(), vertices, edges, None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::{discrete, powerset_poset, pullback};

    #[test]
    fn pullback_bound() {
        let c = Arc::new(pullback());
        // objects a, b, c
        let conn = [Conn::Finite(2), Conn::Finite(5), Conn::Finite(3)];
        assert_eq!(theorem_a_bound(&c, &conn).unwrap(), Conn::Finite(2));
        let conn = [Conn::Finite(7), Conn::Finite(5), Conn::Finite(9)];
        assert_eq!(theorem_a_bound(&c, &conn).unwrap(), Conn::Finite(4));
    }

    #[test]
    fn powerset_bound_and_empty_shape() {
        let p = Arc::new(powerset_poset(2, true).unwrap());
        assert_eq!(theorem_a_bound(&p, &[Conn::Finite(5); 7]).unwrap(), Conn::Finite(3));
        assert_eq!(theorem_a_bound(&Arc::new(discrete(0)), &[]).unwrap(), Conn::Infinite);
    }

    #[test]
    fn conn_parsing_and_order() {
        assert_eq!("inf".parse::<Conn>().unwrap(), Conn::Infinite);
        assert_eq!("-3".parse::<Conn>().unwrap(), Conn::Finite(-3));
        assert!(Conn::Finite(100) < Conn::Infinite);
        assert_eq!(Conn::of(&ChainComplex::sphere(2)), Conn::Finite(1));
        assert_eq!(Conn::of(&ChainComplex::zero()), Conn::Infinite);
    }
}

//! Grothendieck constructions of diagrams of finite categories and the
//! cofiber category `hoc F`.
//!
//! Arrows are oriented contravariantly in the shape: a morphism
//! `(k, x) → (l, y)` is a pair `(γ: l → k, f: x → Φ(γ)(y))`, and
//! `(γ₂, g) ∘ (γ₁, f) = (γ₁∘γ₂, Φ(γ₁)(g)∘f)`.

mod checks;

use std::collections::HashMap;
use std::sync::Arc;

pub use checks::{hoc_overcategory_checks, induced_over_functor, thomason_cofiber_check};

use crate::error::{Error, Result};
use crate::fincat::{opposite, point, poset, FinCategory, FinFunctor, MorId, Morphism, ObjId};

/// A functor `Φ: K → Cat` with finite values.
#[derive(Clone, Debug)]
pub struct CatDiagram {
    shape: Arc<FinCategory>,
    fibers: Vec<Arc<FinCategory>>,
    action: Vec<FinFunctor>,
}

fn same_functor(a: &FinFunctor, b: &FinFunctor) -> bool {
    a.object_map() == b.object_map() && a.morphism_map() == b.morphism_map()
}

impl CatDiagram {
    /// Validates typing, `Φ(id) = id` and `Φ(γ∘δ) = Φ(γ)∘Φ(δ)`.
    pub fn new(shape: Arc<FinCategory>, fibers: Vec<Arc<FinCategory>>, action: Vec<FinFunctor>) -> Result<Self> {
        if fibers.len() != shape.num_objects() || action.len() != shape.num_morphisms() {
            return Err(Error::Structure("diagram sizes do not match the shape".into()));
        }
        let mut problems = Vec::new();
        for g in shape.morphism_ids() {
            let a = &action[g];
            if a.source().as_ref() != fibers[shape.src(g)].as_ref() || a.target().as_ref() != fibers[shape.tgt(g)].as_ref() {
                return Err(Error::Structure(format!("action of {} has the wrong ends", shape.name(g))));
            }
            if shape.is_identity(g) && !same_functor(a, &FinFunctor::identity(fibers[shape.src(g)].clone())) {
                problems.push(format!("action of {} is not the identity", shape.name(g)));
            }
        }
        for f in shape.morphism_ids() {
            for &g in shape.out_of(shape.tgt(f)) {
                let gf = shape.compose(g, f).expect("composable");
                if !same_functor(&action[g].compose(&action[f])?, &action[gf]) {
                    problems.push(format!("action does not respect {}∘{}", shape.name(g), shape.name(f)));
                }
            }
        }
        if !problems.is_empty() {
            return Err(Error::Functoriality(problems));
        }
        Ok(CatDiagram { shape, fibers, action })
    }

    pub fn shape(&self) -> &Arc<FinCategory> {
        &self.shape
    }

    pub fn fiber(&self, k: ObjId) -> &Arc<FinCategory> {
        &self.fibers[k]
    }

    pub fn action(&self, g: MorId) -> &FinFunctor {
        &self.action[g]
    }
}

/// Objects of `K≀Φ` as `(k, x)`, in the order used by [`grothendieck`].
pub fn grothendieck_objects(d: &CatDiagram) -> Vec<(ObjId, ObjId)> {
    d.shape.objects().flat_map(|k| d.fibers[k].objects().map(move |x| (k, x))).collect()
}

/// The Grothendieck construction `K≀Φ` with its projection to `K^op`.
///
/// Objects are labelled `k:x`; a morphism `(γ, f)` into `(l, y)` is named
/// `[γ|f|y]`, identities `id(k:x)`.
pub fn grothendieck(d: &CatDiagram) -> Result<(FinCategory, FinFunctor)> {
    let built = build(d)?;
    let total = Arc::new(built.category);
    let op = Arc::new(opposite(&d.shape));
    let object_map = built.objects.iter().map(|&(k, _)| k).collect();
    let morphism_map = built.parts.iter().map(|&(g, _, _)| g).collect();
    let proj = FinFunctor::new(total.clone(), op, object_map, morphism_map)?;
    Ok((total.as_ref().clone(), proj))
}

struct Built {
    category: FinCategory,
    objects: Vec<(ObjId, ObjId)>,
    /// `(γ, f, target)` per morphism.
    parts: Vec<(MorId, MorId, ObjId)>,
}

fn build(d: &CatDiagram) -> Result<Built> {
    let (k_cat, fibers, action) = (&d.shape, &d.fibers, &d.action);
    let objs = grothendieck_objects(d);
    let pos: HashMap<(ObjId, ObjId), ObjId> = objs.iter().enumerate().map(|(n, &o)| (o, n)).collect();
    let labels: Vec<String> =
        objs.iter().map(|&(k, x)| format!("{}:{}", k_cat.label(k), fibers[k].label(x))).collect();
    let mut morphisms = Vec::new();
    // (γ, f, target object) for each morphism
    let mut parts: Vec<(MorId, MorId, ObjId)> = Vec::new();
    let mut index: HashMap<(MorId, MorId, ObjId), MorId> = HashMap::new();
    for (a, &(k, x)) in objs.iter().enumerate() {
        for &gamma in k_cat.incoming(k) {
            let l = k_cat.src(gamma);
            let phi = &action[gamma];
            for y in fibers[l].objects() {
                let b = pos[&(l, y)];
                for f in fibers[k].hom(x, phi.obj(y)) {
                    let is_identity = k_cat.is_identity(gamma) && fibers[k].is_identity(f);
                    let name = if is_identity {
                        format!("id({})", labels[a])
                    } else {
                        format!("[{}|{}|{}]", k_cat.name(gamma), fibers[k].name(f), fibers[l].label(y))
                    };
                    index.insert((gamma, f, b), morphisms.len());
                    morphisms.push(Morphism { name, src: a, tgt: b, is_identity });
                    parts.push((gamma, f, b));
                }
            }
        }
    }
    let total = FinCategory::assemble(labels, morphisms, |second, first| {
        let (g1, f, _) = parts[first];
        let (g2, g, c) = parts[second];
        let gamma = k_cat.compose(g1, g2).expect("shape composable");
        let k = k_cat.tgt(g1);
        let h = fibers[k].compose(action[g1].mor(g), f).expect("fiber composable");
        index[&(gamma, h, c)]
    })?;
    Ok(Built { category: total, objects: objs, parts })
}

/// What a morphism of `hoc F` is made of.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HocArrow {
    /// The identity of `∗`.
    Star,
    /// `κ(h)` for a morphism `h` of `I`.
    InI(MorId),
    /// `ι(g)` for a morphism `g` of `J`.
    InJ(MorId),
    /// `j → i` given by `f: j → F(i)` in `J`.
    JToI(MorId),
    /// The unique `∗ → i`.
    StarToI,
}

/// `hoc F` together with `ι: J → hoc F`, `κ: I → hoc F` and the cone
/// point `∗`.
#[derive(Clone, Debug)]
pub struct CofiberData {
    pub cofiber: Arc<FinCategory>,
    pub iota: FinFunctor,
    pub kappa: FinFunctor,
    pub star: ObjId,
    pub functor: FinFunctor,
    /// Decomposition of every morphism of `cofiber`.
    pub arrows: Vec<HocArrow>,
}

impl CofiberData {
    /// The canonical `ι(F(i)) → κ(i)` given by the identity of `F(i)`.
    pub fn unit_arrow(&self, i: ObjId) -> MorId {
        let (j, x) = (self.iota.obj(self.functor.obj(i)), self.kappa.obj(i));
        let id = self.functor.target().identity(self.functor.obj(i));
        self.cofiber
            .hom(j, x)
            .find(|&m| self.arrows[m] == HocArrow::JToI(id))
            .expect("canonical arrow exists")
    }

    /// The unique `∗ → κ(i)`.
    pub fn star_arrow(&self, i: ObjId) -> MorId {
        self.cofiber.hom(self.star, self.kappa.obj(i)).next().expect("one arrow from the cone point")
    }
}

/// Shape object labels of the span `∗ ← I → J`.
pub const SPAN_LABELS: [&str; 3] = ["*", "I", "J"];

/// The span `∗ ← I → J` indexing `hoc F`.
pub fn span_shape() -> FinCategory {
    poset(SPAN_LABELS.iter().map(|s| s.to_string()).collect(), |x, y| x == y || (x == 1 && y != 1))
        .expect("span shape")
}

/// The cofiber category of `F: I → J`: the Grothendieck construction of
/// `∗ ← I → J` over the span. Objects are labelled `*:*`, `I:x`, `J:y`;
/// a morphism alone in its hom-set is renamed `src->tgt`.
pub fn hoc(f: &FinFunctor) -> Result<CofiberData> {
    let (i_cat, j_cat) = (f.source().clone(), f.target().clone());
    let shape = Arc::new(span_shape());
    let star_cat = Arc::new(point());
    let fibers = vec![star_cat.clone(), i_cat.clone(), j_cat.clone()];
    let action = shape
        .morphism_ids()
        .map(|g| match (shape.src(g), shape.tgt(g)) {
            (s, t) if s == t => FinFunctor::identity(fibers[s].clone()),
            (1, 0) => FinFunctor::constant(i_cat.clone(), star_cat.clone(), 0),
            (1, 2) => f.clone(),
            _ => unreachable!("span shape has no other arrows"),
        })
        .collect();
    let d = CatDiagram::new(shape.clone(), fibers, action)?;
    let built = build(&d)?;
    let total = Arc::new(built.category.with_thin_names());
    let pos: HashMap<(ObjId, ObjId), ObjId> = built.objects.iter().enumerate().map(|(n, &o)| (o, n)).collect();
    let lookup: HashMap<(MorId, MorId, ObjId), MorId> =
        built.parts.iter().enumerate().map(|(m, &p)| (p, m)).collect();
    let inclusion = |k: ObjId, c: &Arc<FinCategory>| -> Result<FinFunctor> {
        let id_k = shape.identity(k);
        let object_map: Vec<ObjId> = c.objects().map(|x| pos[&(k, x)]).collect();
        let morphism_map = c.morphism_ids().map(|m| lookup[&(id_k, m, object_map[c.tgt(m)])]).collect();
        FinFunctor::new(c.clone(), total.clone(), object_map, morphism_map)
    };
    let iota = inclusion(2, &j_cat)?;
    let kappa = inclusion(1, &i_cat)?;
    let arrows = built
        .parts
        .iter()
        .map(|&(gamma, m, _)| match (shape.src(gamma), shape.tgt(gamma)) {
            (0, 0) => HocArrow::Star,
            (1, 1) => HocArrow::InI(m),
            (2, 2) => HocArrow::InJ(m),
            (1, 2) => HocArrow::JToI(m),
            (1, 0) => HocArrow::StarToI,
            _ => unreachable!("span shape has no other arrows"),
        })
        .collect();
    Ok(CofiberData { cofiber: total.clone(), iota, kappa, star: pos[&(0, 0)], functor: f.clone(), arrows })
}

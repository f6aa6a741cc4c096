//! Functors between finite categories.

use std::sync::Arc;

use super::{FinCategory, MorId, ObjId};
use crate::error::{Error, Result};

/// A functor given by its object and morphism maps.
#[derive(Clone, Debug)]
pub struct FinFunctor {
    source: Arc<FinCategory>,
    target: Arc<FinCategory>,
    object_map: Vec<ObjId>,
    morphism_map: Vec<MorId>,
}

/// Result of [`validate_functor`]: failures are phrased with names.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FunctorReport {
    /// Morphisms whose image has the wrong source or target.
    pub typing: Vec<String>,
    /// Objects whose identity is not sent to an identity.
    pub identities: Vec<String>,
    /// Composable pairs `(g, f)` with `F(g∘f) ≠ F(g)∘F(f)`.
    pub composition: Vec<(String, String)>,
}

impl FunctorReport {
    pub fn is_valid(&self) -> bool {
        self.typing.is_empty() && self.identities.is_empty() && self.composition.is_empty()
    }

    pub fn messages(&self) -> Vec<String> {
        let mut out: Vec<String> = self.typing.iter().map(|m| format!("image of {m} has wrong ends")).collect();
        out.extend(self.identities.iter().map(|x| format!("identity of {x} not preserved")));
        out.extend(self.composition.iter().map(|(g, f)| format!("composition not preserved for ({g}, {f})")));
        out
    }
}

/// Checks functoriality of raw object and morphism maps. Maps of the wrong
/// length or with out-of-range entries are structural errors.
pub fn validate_functor(
    source: &FinCategory,
    target: &FinCategory,
    object_map: &[ObjId],
    morphism_map: &[MorId],
) -> Result<FunctorReport> {
    if object_map.len() != source.num_objects() || morphism_map.len() != source.num_morphisms() {
        return Err(Error::Structure(format!(
            "functor maps have sizes {}/{}, expected {}/{}",
            object_map.len(),
            morphism_map.len(),
            source.num_objects(),
            source.num_morphisms()
        )));
    }
    if let Some(&x) = object_map.iter().find(|&&x| x >= target.num_objects()) {
        return Err(Error::Structure(format!("object image {x} out of range")));
    }
    if let Some(&m) = morphism_map.iter().find(|&&m| m >= target.num_morphisms()) {
        return Err(Error::Structure(format!("morphism image {m} out of range")));
    }
    let mut r = FunctorReport::default();
    for m in source.morphism_ids() {
        let fm = morphism_map[m];
        if target.src(fm) != object_map[source.src(m)] || target.tgt(fm) != object_map[source.tgt(m)] {
            r.typing.push(source.name(m).to_string());
        }
    }
    for x in source.objects() {
        if morphism_map[source.identity(x)] != target.identity(object_map[x]) {
            r.identities.push(source.label(x).to_string());
        }
    }
    if !r.typing.is_empty() {
        return Ok(r);
    }
    for f in source.morphism_ids() {
        for &g in source.out_of(source.tgt(f)) {
            let gf = source.compose(g, f).expect("composable");
            if target.compose(morphism_map[g], morphism_map[f]) != Some(morphism_map[gf]) {
                r.composition.push((source.name(g).to_string(), source.name(f).to_string()));
            }
        }
    }
    Ok(r)
}

impl FinFunctor {
    pub fn new(
        source: Arc<FinCategory>,
        target: Arc<FinCategory>,
        object_map: Vec<ObjId>,
        morphism_map: Vec<MorId>,
    ) -> Result<Self> {
        let r = validate_functor(&source, &target, &object_map, &morphism_map)?;
        if !r.is_valid() {
            return Err(Error::Functoriality(r.messages()));
        }
        Ok(FinFunctor { source, target, object_map, morphism_map })
    }

    /// A functor into a thin category is determined by its object map.
    pub fn from_object_map(source: Arc<FinCategory>, target: Arc<FinCategory>, object_map: Vec<ObjId>) -> Result<Self> {
        if !target.is_thin() {
            return Err(Error::Structure("object map determines a functor only into a thin category".into()));
        }
        if object_map.len() != source.num_objects() {
            return Err(Error::Structure("object map has the wrong length".into()));
        }
        if let Some(&x) = object_map.iter().find(|&&x| x >= target.num_objects()) {
            return Err(Error::Structure(format!("object image {x} out of range")));
        }
        let mut morphism_map = Vec::with_capacity(source.num_morphisms());
        for m in source.morphism_ids() {
            let (a, b) = (object_map[source.src(m)], object_map[source.tgt(m)]);
            match target.arrow_between(a, b) {
                Some(t) => morphism_map.push(t),
                None => {
                    return Err(Error::Functoriality(vec![format!(
                        "no morphism {} -> {} for the image of {}",
                        target.label(a),
                        target.label(b),
                        source.name(m)
                    )]))
                }
            }
        }
        Self::new(source, target, object_map, morphism_map)
    }

    pub fn identity(c: Arc<FinCategory>) -> Self {
        let object_map = c.objects().collect();
        let morphism_map = c.morphism_ids().collect();
        FinFunctor { source: c.clone(), target: c, object_map, morphism_map }
    }

    /// The constant functor at `x`.
    pub fn constant(source: Arc<FinCategory>, target: Arc<FinCategory>, x: ObjId) -> Self {
        let id = target.identity(x);
        FinFunctor {
            object_map: vec![x; source.num_objects()],
            morphism_map: vec![id; source.num_morphisms()],
            source,
            target,
        }
    }

    /// `self ∘ first`.
    pub fn compose(&self, first: &FinFunctor) -> Result<FinFunctor> {
        if first.target.as_ref() != self.source.as_ref() {
            return Err(Error::Structure("functors are not composable".into()));
        }
        Ok(FinFunctor {
            source: first.source.clone(),
            target: self.target.clone(),
            object_map: first.object_map.iter().map(|&x| self.object_map[x]).collect(),
            morphism_map: first.morphism_map.iter().map(|&m| self.morphism_map[m]).collect(),
        })
    }

    #[inline]
    pub fn obj(&self, x: ObjId) -> ObjId {
        self.object_map[x]
    }

    #[inline]
    pub fn mor(&self, m: MorId) -> MorId {
        self.morphism_map[m]
    }

    pub fn source(&self) -> &Arc<FinCategory> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FinCategory> {
        &self.target
    }

    pub fn object_map(&self) -> &[ObjId] {
        &self.object_map
    }

    pub fn morphism_map(&self) -> &[MorId] {
        &self.morphism_map
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::{arrow, powerset_poset, pullback};

    #[test]
    fn inclusion_of_punctured_powersets() {
        let p1 = Arc::new(powerset_poset(1, true).unwrap());
        let p2 = Arc::new(powerset_poset(2, true).unwrap());
        let map = ["+", "12", "+12"].iter().map(|l| p2.find_object(l).unwrap()).collect();
        let f = FinFunctor::from_object_map(p1, p2.clone(), map).unwrap();
        assert_eq!(p2.label(f.obj(1)), "12");
    }

    #[test]
    fn breaking_pair_is_reported() {
        // Send a→b←c to the arrow 0→1 with a, b ↦ 1 but the morphism a→b
        // going to the identity of 0: typing fails for that one morphism.
        let src = Arc::new(pullback());
        let tgt = Arc::new(arrow());
        let mut mm: Vec<MorId> = vec![1, 1, 1, 1, 1];
        mm[3] = 0;
        let r = validate_functor(&src, &tgt, &[1, 1, 1], &mm).unwrap();
        assert_eq!(r.typing, vec![src.name(3).to_string()]);
        assert!(FinFunctor::new(src, tgt, vec![1, 1, 1], mm).is_err());
    }

    #[test]
    fn composition_failure_is_reported() {
        // Z/2 -> {1, e} with s ↦ e: types and identities are fine, but
        // s∘s = 1 goes to 1 while e∘e = e.
        use crate::fincat::{CategoryTables, Morphism};
        let m = |n: &str| Morphism { name: n.into(), src: 0, tgt: 0, is_identity: false };
        // Z/2 = {1, s}, s∘s = 1.
        let z2 = Arc::new(
            FinCategory::from_tables(CategoryTables {
                objects: vec!["x".into()],
                morphisms: vec![m("id(x)"), m("s")],
                identities: vec![0],
                compose: vec![(0, 0, 0), (1, 0, 1), (0, 1, 1), (1, 1, 0)],
            })
            .unwrap(),
        );
        // {1, e}, e∘e = e.
        let idem = Arc::new(
            FinCategory::from_tables(CategoryTables {
                objects: vec!["x".into()],
                morphisms: vec![m("id(x)"), m("e")],
                identities: vec![0],
                compose: vec![(0, 0, 0), (1, 0, 1), (0, 1, 1), (1, 1, 1)],
            })
            .unwrap(),
        );
        let r = validate_functor(&z2, &idem, &[0], &[0, 1]).unwrap();
        assert_eq!(r.composition, vec![("s".to_string(), "s".to_string())]);
    }
}

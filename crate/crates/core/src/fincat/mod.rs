//! Finite categories stored as explicit object, morphism and composition
//! tables, plus functors between them.
//!
//! Objects and morphisms are addressed by dense indices; labels and names are
//! only used in documents and reports. Every [`FinCategory`] value satisfies
//! the category axioms: constructors validate exhaustively.

mod constructions;
mod functor;
mod iso;

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;

pub use constructions::{
    arrow, comma_category, discrete, opposite, over_category, point, poset, powerset_poset, pullback, pushout,
};
pub use functor::{validate_functor, FinFunctor, FunctorReport};
pub use iso::{find_isomorphism, CategoryIso, MAX_ISO_OBJECTS};

use crate::error::{Error, Result};

pub type ObjId = usize;
pub type MorId = usize;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Morphism {
    pub name: String,
    pub src: ObjId,
    pub tgt: ObjId,
    pub is_identity: bool,
}

/// Raw category data, possibly violating the axioms.
///
/// `compose` lists triples `(g, f, g∘f)`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CategoryTables {
    pub objects: Vec<String>,
    pub morphisms: Vec<Morphism>,
    pub identities: Vec<MorId>,
    pub compose: Vec<(MorId, MorId, MorId)>,
}

/// One failed axiom, phrased with morphism names.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    /// The identity of an object is not a loop at that object.
    IdentityTyping { object: String, morphism: String },
    /// Composite entry for a pair that is not composable.
    NotComposable { g: String, f: String },
    /// Composite has the wrong source or target.
    CompositeTyping { g: String, f: String, composite: String },
    MissingComposite { g: String, f: String },
    DuplicateComposite { g: String, f: String },
    IdentityNotNeutral { identity: String, morphism: String },
    Associativity { h: String, g: String, f: String },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::IdentityTyping { object, morphism } => {
                write!(f, "identity {morphism} of {object} is not an endomorphism of {object}")
            }
            Violation::NotComposable { g, f: ff } => write!(f, "composite {g}∘{ff} given for non-composable pair"),
            Violation::CompositeTyping { g, f: ff, composite } => {
                write!(f, "typing: {g}∘{ff} = {composite} has wrong source or target")
            }
            Violation::MissingComposite { g, f: ff } => write!(f, "missing composite {g}∘{ff}"),
            Violation::DuplicateComposite { g, f: ff } => write!(f, "conflicting composites for {g}∘{ff}"),
            Violation::IdentityNotNeutral { identity, morphism } => {
                write!(f, "identity {identity} is not neutral for {morphism}")
            }
            Violation::Associativity { h, g, f: ff } => write!(f, "associativity fails for ({h}, {g}, {ff})"),
        }
    }
}

/// Result of [`validate_category`].
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks the category axioms on raw tables. Index errors are structural
/// errors and are returned as `Err`; axiom failures are collected in the
/// report.
pub fn validate_category(t: &CategoryTables) -> Result<ValidationReport> {
    let no = t.objects.len();
    let nm = t.morphisms.len();
    for (k, m) in t.morphisms.iter().enumerate() {
        if m.src >= no || m.tgt >= no {
            return Err(Error::Structure(format!("morphism {k} ({}) refers to a missing object", m.name)));
        }
    }
    if t.identities.len() != no {
        return Err(Error::Structure(format!("{} objects but {} identities", no, t.identities.len())));
    }
    if let Some(&bad) = t.identities.iter().find(|&&m| m >= nm) {
        return Err(Error::Structure(format!("identity index {bad} out of range")));
    }
    if let Some(&(g, f, h)) = t.compose.iter().find(|(g, f, h)| *g >= nm || *f >= nm || *h >= nm) {
        return Err(Error::Structure(format!("composition entry ({g}, {f}, {h}) out of range")));
    }

    let name = |m: MorId| t.morphisms[m].name.clone();
    let mut v = Vec::new();
    for (x, &id) in t.identities.iter().enumerate() {
        let m = &t.morphisms[id];
        if m.src != x || m.tgt != x {
            v.push(Violation::IdentityTyping { object: t.objects[x].clone(), morphism: m.name.clone() });
        }
    }
    let mut table: HashMap<(MorId, MorId), MorId> = HashMap::new();
    for &(g, f, h) in &t.compose {
        let (mg, mf, mh) = (&t.morphisms[g], &t.morphisms[f], &t.morphisms[h]);
        if mf.tgt != mg.src {
            v.push(Violation::NotComposable { g: name(g), f: name(f) });
            continue;
        }
        if mh.src != mf.src || mh.tgt != mg.tgt {
            v.push(Violation::CompositeTyping { g: name(g), f: name(f), composite: name(h) });
        }
        if let Some(prev) = table.insert((g, f), h) {
            if prev != h {
                v.push(Violation::DuplicateComposite { g: name(g), f: name(f) });
            }
        }
    }
    let mut out: Vec<Vec<MorId>> = vec![Vec::new(); no];
    for (k, m) in t.morphisms.iter().enumerate() {
        out[m.src].push(k);
    }
    for f in 0..nm {
        for &g in &out[t.morphisms[f].tgt] {
            if !table.contains_key(&(g, f)) {
                v.push(Violation::MissingComposite { g: name(g), f: name(f) });
            }
        }
    }
    if !v.is_empty() {
        // Neutrality and associativity are meaningless on a partial table.
        return Ok(ValidationReport { violations: v });
    }
    for f in 0..nm {
        let (s, d) = (t.morphisms[f].src, t.morphisms[f].tgt);
        if table[&(f, t.identities[s])] != f {
            v.push(Violation::IdentityNotNeutral { identity: name(t.identities[s]), morphism: name(f) });
        }
        if table[&(t.identities[d], f)] != f {
            v.push(Violation::IdentityNotNeutral { identity: name(t.identities[d]), morphism: name(f) });
        }
    }
    for f in 0..nm {
        for &g in &out[t.morphisms[f].tgt] {
            let gf = table[&(g, f)];
            for &h in &out[t.morphisms[g].tgt] {
                let hg = table[&(h, g)];
                if table[&(hg, f)] != table[&(h, gf)] {
                    v.push(Violation::Associativity { h: name(h), g: name(g), f: name(f) });
                }
            }
        }
    }
    Ok(ValidationReport { violations: v })
}

/// A finite category satisfying the axioms.
#[derive(Clone, Debug)]
pub struct FinCategory {
    objects: Vec<String>,
    morphisms: Vec<Morphism>,
    identities: Vec<MorId>,
    out: Vec<Vec<MorId>>,
    into: Vec<Vec<MorId>>,
    /// Position of each morphism in `out[src]`.
    out_pos: Vec<usize>,
    /// `compose[f][out_pos[g]] = g∘f` for every `g` out of `tgt f`.
    compose: Vec<Vec<MorId>>,
}

impl PartialEq for FinCategory {
    fn eq(&self, other: &Self) -> bool {
        self.objects == other.objects
            && self.morphisms == other.morphisms
            && self.identities == other.identities
            && self.compose == other.compose
    }
}

impl Eq for FinCategory {}

impl FinCategory {
    /// Validates the tables and builds the category.
    pub fn from_tables(t: CategoryTables) -> Result<Self> {
        let report = validate_category(&t)?;
        if !report.is_valid() {
            return Err(Error::Axioms(report.violations.iter().map(ToString::to_string).collect()));
        }
        let mut names = HashSet::new();
        for m in &t.morphisms {
            if !names.insert(m.name.as_str()) {
                return Err(Error::Structure(format!("duplicate morphism name {}", m.name)));
            }
        }
        let mut labels = HashSet::new();
        for o in &t.objects {
            if !labels.insert(o.as_str()) {
                return Err(Error::Structure(format!("duplicate object label {o}")));
            }
        }
        Ok(Self::index_tables(t))
    }

    fn index_tables(t: CategoryTables) -> Self {
        let no = t.objects.len();
        let mut out = vec![Vec::new(); no];
        let mut into = vec![Vec::new(); no];
        let mut out_pos = vec![0; t.morphisms.len()];
        for (k, m) in t.morphisms.iter().enumerate() {
            out_pos[k] = out[m.src].len();
            out[m.src].push(k);
            into[m.tgt].push(k);
        }
        let mut compose: Vec<Vec<MorId>> =
            t.morphisms.iter().map(|m| vec![usize::MAX; out[m.tgt].len()]).collect();
        for &(g, f, h) in &t.compose {
            compose[f][out_pos[g]] = h;
        }
        let mut morphisms = t.morphisms;
        for m in morphisms.iter_mut() {
            m.is_identity = false;
        }
        for &id in &t.identities {
            morphisms[id].is_identity = true;
        }
        FinCategory { objects: t.objects, morphisms, identities: t.identities, out, into, out_pos, compose }
    }

    /// Builds a category from objects, morphisms and a composition rule.
    /// Exactly the morphisms flagged `is_identity` are identities (one per
    /// object). The result is validated.
    pub(crate) fn assemble(
        objects: Vec<String>,
        morphisms: Vec<Morphism>,
        compose: impl Fn(MorId, MorId) -> MorId,
    ) -> Result<Self> {
        let mut identities = vec![usize::MAX; objects.len()];
        for (k, m) in morphisms.iter().enumerate() {
            if m.is_identity {
                if m.src >= objects.len() || identities[m.src] != usize::MAX {
                    return Err(Error::Structure(format!("bad identity {}", m.name)));
                }
                identities[m.src] = k;
            }
        }
        if identities.contains(&usize::MAX) {
            return Err(Error::Structure("object without identity".into()));
        }
        let mut out: Vec<Vec<MorId>> = vec![Vec::new(); objects.len()];
        for (k, m) in morphisms.iter().enumerate() {
            out[m.src].push(k);
        }
        let mut triples = Vec::new();
        for f in 0..morphisms.len() {
            for &g in &out[morphisms[f].tgt] {
                triples.push((g, f, compose(g, f)));
            }
        }
        FinCategory::from_tables(CategoryTables { objects, morphisms, identities, compose: triples })
    }

    /// Renames every non-identity morphism with a singleton hom-set to
    /// `src->tgt`; other names are kept.
    pub(crate) fn with_thin_names(mut self) -> Self {
        let renames: Vec<(MorId, String)> = (0..self.morphisms.len())
            .filter(|&m| !self.morphisms[m].is_identity)
            .filter(|&m| self.hom(self.src(m), self.tgt(m)).count() == 1)
            .map(|m| (m, format!("{}->{}", self.objects[self.src(m)], self.objects[self.tgt(m)])))
            .collect();
        for (m, n) in renames {
            self.morphisms[m].name = n;
        }
        self
    }

    pub fn tables(&self) -> CategoryTables {
        let mut compose = Vec::new();
        for f in 0..self.morphisms.len() {
            for (k, &g) in self.out[self.tgt(f)].iter().enumerate() {
                compose.push((g, f, self.compose[f][k]));
            }
        }
        CategoryTables {
            objects: self.objects.clone(),
            morphisms: self.morphisms.clone(),
            identities: self.identities.clone(),
            compose,
        }
    }

    pub fn num_objects(&self) -> usize {
        self.objects.len()
    }

    pub fn num_morphisms(&self) -> usize {
        self.morphisms.len()
    }

    pub fn objects(&self) -> std::ops::Range<ObjId> {
        0..self.objects.len()
    }

    pub fn morphism_ids(&self) -> std::ops::Range<MorId> {
        0..self.morphisms.len()
    }

    pub fn label(&self, x: ObjId) -> &str {
        &self.objects[x]
    }

    pub fn labels(&self) -> &[String] {
        &self.objects
    }

    pub fn morphism(&self, m: MorId) -> &Morphism {
        &self.morphisms[m]
    }

    pub fn name(&self, m: MorId) -> &str {
        &self.morphisms[m].name
    }

    #[inline]
    pub fn src(&self, m: MorId) -> ObjId {
        self.morphisms[m].src
    }

    #[inline]
    pub fn tgt(&self, m: MorId) -> ObjId {
        self.morphisms[m].tgt
    }

    #[inline]
    pub fn is_identity(&self, m: MorId) -> bool {
        self.morphisms[m].is_identity
    }

    pub fn identity(&self, x: ObjId) -> MorId {
        self.identities[x]
    }

    /// `g∘f`, or `None` if `tgt f ≠ src g`.
    #[inline]
    pub fn compose(&self, g: MorId, f: MorId) -> Option<MorId> {
        (self.tgt(f) == self.src(g)).then(|| self.compose[f][self.out_pos[g]])
    }

    /// Morphisms out of `x`, identity included.
    pub fn out_of(&self, x: ObjId) -> &[MorId] {
        &self.out[x]
    }

    /// Morphisms into `x`, identity included.
    pub fn incoming(&self, x: ObjId) -> &[MorId] {
        &self.into[x]
    }

    pub fn hom(&self, x: ObjId, y: ObjId) -> impl Iterator<Item = MorId> + '_ {
        self.out[x].iter().copied().filter(move |&m| self.tgt(m) == y)
    }

    pub fn non_identities(&self) -> impl Iterator<Item = MorId> + '_ {
        self.morphism_ids().filter(|&m| !self.is_identity(m))
    }

    /// At most one morphism between any two objects.
    pub fn is_thin(&self) -> bool {
        let mut seen = HashMap::new();
        self.morphisms.iter().all(|m| seen.insert((m.src, m.tgt), ()).is_none())
    }

    /// Thin with no non-identity isomorphisms.
    pub fn is_poset(&self) -> bool {
        self.is_thin() && self.non_identities().all(|m| self.hom(self.tgt(m), self.src(m)).next().is_none())
    }

    pub fn find_object(&self, label: &str) -> Option<ObjId> {
        self.objects.iter().position(|o| o == label)
    }

    pub fn find_morphism(&self, name: &str) -> Option<MorId> {
        self.morphisms.iter().position(|m| m.name == name)
    }

    /// The unique morphism `x → y` of a thin category, if any.
    pub fn arrow_between(&self, x: ObjId, y: ObjId) -> Option<MorId> {
        let mut it = self.hom(x, y);
        let m = it.next()?;
        it.next().is_none().then_some(m)
    }

    /// Covering relations of a thin category as `(x, y)` label pairs,
    /// sorted: non-identity `x → y` not factoring through a third object
    /// by non-identities.
    pub fn hasse_relations(&self) -> Vec<(String, String)> {
        let mut out: Vec<(String, String)> = self
            .non_identities()
            .filter(|&m| {
                let (x, y) = (self.src(m), self.tgt(m));
                !self.objects().any(|z| {
                    z != x
                        && z != y
                        && self.hom(x, z).any(|a| !self.is_identity(a))
                        && self.hom(z, y).any(|b| !self.is_identity(b))
                })
            })
            .map(|m| (self.objects[self.src(m)].clone(), self.objects[self.tgt(m)].clone()))
            .collect();
        out.sort();
        out
    }

    /// Hom-set sizes keyed by label pairs.
    pub fn hom_sizes(&self) -> BTreeMap<(String, String), usize> {
        let mut out = BTreeMap::new();
        for m in &self.morphisms {
            *out.entry((self.objects[m.src].clone(), self.objects[m.tgt].clone())).or_insert(0) += 1;
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mor(name: &str, src: ObjId, tgt: ObjId) -> Morphism {
        Morphism { name: name.into(), src, tgt, is_identity: false }
    }

    fn one_object() -> CategoryTables {
        CategoryTables {
            objects: vec!["x".into()],
            morphisms: vec![mor("id(x)", 0, 0)],
            identities: vec![0],
            compose: vec![(0, 0, 0)],
        }
    }

    #[test]
    fn identity_only_category_is_valid() {
        assert!(validate_category(&one_object()).unwrap().is_valid());
        assert_eq!(FinCategory::from_tables(one_object()).unwrap().num_morphisms(), 1);
    }

    #[test]
    fn pullback_shape_is_valid() {
        let c = pullback();
        assert!(validate_category(&c.tables()).unwrap().is_valid());
        assert_eq!(c.num_objects(), 3);
        assert_eq!(c.non_identities().count(), 2);
    }

    #[test]
    fn composite_source_mismatch_is_a_typing_violation() {
        // objects a, b, c; f: a -> b, g: b -> c, h: b -> c; claim g∘f = h.
        let t = CategoryTables {
            objects: vec!["a".into(), "b".into(), "c".into()],
            morphisms: vec![
                mor("id(a)", 0, 0),
                mor("id(b)", 1, 1),
                mor("id(c)", 2, 2),
                mor("f", 0, 1),
                mor("g", 1, 2),
                mor("h", 1, 2),
            ],
            identities: vec![0, 1, 2],
            compose: vec![
                (0, 0, 0),
                (1, 1, 1),
                (2, 2, 2),
                (3, 0, 3),
                (1, 3, 3),
                (4, 1, 4),
                (5, 1, 5),
                (2, 4, 4),
                (2, 5, 5),
                (4, 3, 5),
            ],
        };
        let r = validate_category(&t).unwrap();
        assert_eq!(
            r.violations,
            vec![
                Violation::CompositeTyping { g: "g".into(), f: "f".into(), composite: "h".into() },
                Violation::MissingComposite { g: "h".into(), f: "f".into() },
            ]
        );
    }

    #[test]
    fn missing_and_non_neutral_reported() {
        let mut t = one_object();
        t.compose.clear();
        let r = validate_category(&t).unwrap();
        assert_eq!(r.violations, vec![Violation::MissingComposite { g: "id(x)".into(), f: "id(x)".into() }]);

        // x with identity and e, where id∘e is recorded as id
        let t = CategoryTables {
            objects: vec!["x".into()],
            morphisms: vec![mor("id(x)", 0, 0), mor("e", 0, 0)],
            identities: vec![0],
            compose: vec![(0, 0, 0), (1, 0, 1), (0, 1, 0), (1, 1, 1)],
        };
        let r = validate_category(&t).unwrap();
        assert!(r
            .violations
            .contains(&Violation::IdentityNotNeutral { identity: "id(x)".into(), morphism: "e".into() }));
    }

    #[test]
    fn associativity_failure_reported() {
        // Monoid {1, a, b} with a table that is not associative:
        // aa = b, ab = 1, ba = a, bb = b.
        let t = CategoryTables {
            objects: vec!["x".into()],
            morphisms: vec![mor("id(x)", 0, 0), mor("a", 0, 0), mor("b", 0, 0)],
            identities: vec![0],
            compose: vec![
                (0, 0, 0),
                (0, 1, 1),
                (0, 2, 2),
                (1, 0, 1),
                (2, 0, 2),
                (1, 1, 2),
                (1, 2, 0),
                (2, 1, 1),
                (2, 2, 2),
            ],
        };
        let r = validate_category(&t).unwrap();
        assert!(r.violations.iter().any(|v| matches!(v, Violation::Associativity { .. })));
    }

    #[test]
    fn out_of_range_is_structural() {
        let mut t = one_object();
        t.compose.push((0, 7, 0));
        assert!(matches!(validate_category(&t), Err(Error::Structure(_))));
        let mut t = one_object();
        t.morphisms[0].tgt = 3;
        assert!(matches!(validate_category(&t), Err(Error::Structure(_))));
    }

    #[test]
    fn tables_round_trip() {
        let c = powerset_poset(2, true).unwrap();
        assert_eq!(FinCategory::from_tables(c.tables()).unwrap(), c);
    }
}

//! Standard shapes and categorical constructions.

use std::collections::HashMap;
use std::sync::Arc;

use super::{FinCategory, FinFunctor, MorId, Morphism, ObjId};
use crate::error::{Error, Result};

fn identity_morphism(label: &str, x: ObjId) -> Morphism {
    Morphism { name: format!("id({label})"), src: x, tgt: x, is_identity: true }
}

/// The poset on `labels` with `leq` as order relation (assumed reflexive).
/// Identities come first, so `identity(x) == x`; the remaining morphisms
/// are named `x->y` and ordered by source, then target.
pub fn poset(labels: Vec<String>, leq: impl Fn(ObjId, ObjId) -> bool) -> Result<FinCategory> {
    let n = labels.len();
    let mut morphisms: Vec<Morphism> = labels.iter().enumerate().map(|(x, l)| identity_morphism(l, x)).collect();
    let mut index: HashMap<(ObjId, ObjId), MorId> = (0..n).map(|x| ((x, x), x)).collect();
    for x in 0..n {
        for y in 0..n {
            if x != y && leq(x, y) {
                if leq(y, x) {
                    return Err(Error::Structure(format!(
                        "relation is not antisymmetric on {} and {}",
                        labels[x], labels[y]
                    )));
                }
                index.insert((x, y), morphisms.len());
                morphisms.push(Morphism {
                    name: format!("{}->{}", labels[x], labels[y]),
                    src: x,
                    tgt: y,
                    is_identity: false,
                });
            }
        }
    }
    let ends: Vec<(ObjId, ObjId)> = morphisms.iter().map(|m| (m.src, m.tgt)).collect();
    let table = |g: MorId, f: MorId| index.get(&(ends[f].0, ends[g].1)).copied().unwrap_or(usize::MAX);
    if ends.iter().enumerate().any(|(f, &(_, y))| {
        ends.iter().enumerate().any(|(g, &(gy, _))| gy == y && table(g, f) == usize::MAX)
    }) {
        return Err(Error::Structure("relation is not transitive".into()));
    }
    FinCategory::assemble(labels, morphisms, table)
}

/// Label of a subset of `{+, 1, …, n}` given as a bitmask with `+` at bit 0:
/// `+12`, `1`, `∅`.
fn subset_label(mask: u32, n: u32) -> String {
    if mask == 0 {
        return "∅".into();
    }
    let mut parts = Vec::new();
    if mask & 1 != 0 {
        parts.push("+".to_string());
    }
    for k in 1..=n {
        if mask & (1 << k) != 0 {
            parts.push(k.to_string());
        }
    }
    parts.join(if n >= 10 { "," } else { "" })
}

/// Largest `n` accepted by [`powerset_poset`].
pub const MAX_POWERSET_N: usize = 9;

/// Subsets of the pointed set `{+, 1, …, n}` ordered by inclusion; only the
/// non-empty ones when `punctured`. Objects are sorted by size, then by
/// bitmask.
pub fn powerset_poset(n: usize, punctured: bool) -> Result<FinCategory> {
    if n > MAX_POWERSET_N {
        return Err(Error::Capacity {
            what: format!("powerset poset on {} points", n + 1),
            needed: n + 1,
            limit: MAX_POWERSET_N + 1,
        });
    }
    let n = n as u32;
    let mut masks: Vec<u32> = (if punctured { 1 } else { 0 }..(1u32 << (n + 1))).collect();
    masks.sort_by_key(|m| (m.count_ones(), *m));
    let labels = masks.iter().map(|&m| subset_label(m, n)).collect();
    poset(labels, |x, y| masks[x] & !masks[y] == 0)
}

fn labeled_poset(labels: &[&str], pairs: &[(usize, usize)]) -> FinCategory {
    poset(labels.iter().map(|s| s.to_string()).collect(), |x, y| x == y || pairs.contains(&(x, y)))
        .expect("built-in shape")
}

/// `a → b ← c`
pub fn pullback() -> FinCategory {
    labeled_poset(&["a", "b", "c"], &[(0, 1), (2, 1)])
}

/// `a ← b → c`
pub fn pushout() -> FinCategory {
    labeled_poset(&["a", "b", "c"], &[(1, 0), (1, 2)])
}

/// `a → b`
pub fn arrow() -> FinCategory {
    labeled_poset(&["a", "b"], &[(0, 1)])
}

/// `k` objects, identities only; labels `0 … k-1`.
pub fn discrete(k: usize) -> FinCategory {
    poset((0..k).map(|i| i.to_string()).collect(), |x, y| x == y).expect("discrete")
}

/// One object `*`.
pub fn point() -> FinCategory {
    labeled_poset(&["*"], &[])
}

/// The over category `C/ᵢ` and its forgetful functor to `C`.
///
/// Objects are the morphisms `f: j → i`, labelled by the name of `f`. A
/// morphism `f → f'` is an `h: j → j'` with `f'∘h = f`; it is named
/// `h@f'`.
pub fn over_category(c: &Arc<FinCategory>, i: ObjId) -> Result<(FinCategory, FinFunctor)> {
    if i >= c.num_objects() {
        return Err(Error::Structure(format!("object {i} out of range")));
    }
    let over_objs: Vec<MorId> = c.incoming(i).to_vec();
    let labels: Vec<String> = over_objs.iter().map(|&f| c.name(f).to_string()).collect();
    let mut morphisms = Vec::new();
    let mut under = Vec::new();
    let mut targets = Vec::new();
    let mut index: HashMap<(MorId, usize), MorId> = HashMap::new();
    for (k, &f) in over_objs.iter().enumerate() {
        for &h in c.out_of(c.src(f)) {
            for (k2, &f2) in over_objs.iter().enumerate() {
                if c.src(f2) == c.tgt(h) && c.compose(f2, h) == Some(f) {
                    let is_identity = c.is_identity(h);
                    let name = if is_identity {
                        format!("id({})", labels[k])
                    } else {
                        format!("{}@{}", c.name(h), labels[k2])
                    };
                    index.insert((h, k2), morphisms.len());
                    morphisms.push(Morphism { name, src: k, tgt: k2, is_identity });
                    under.push(h);
                    targets.push(k2);
                }
            }
        }
    }
    let over = FinCategory::assemble(labels, morphisms, |g, f| {
        let h = c.compose(under[g], under[f]).expect("composable in base");
        index[&(h, targets[g])]
    })?;
    let object_map = over_objs.iter().map(|&f| c.src(f)).collect();
    let forget = FinFunctor::new(Arc::new(over), c.clone(), object_map, under)?;
    Ok((forget.source().as_ref().clone(), forget))
}

/// The comma category `F/ⱼ`: objects `(a, u: F(a) → j)`, morphisms
/// `h: a → a'` with `u'∘F(h) = u`.
pub fn comma_category(f: &FinFunctor, j: ObjId) -> Result<FinCategory> {
    let (src, tgt) = (f.source(), f.target());
    if j >= tgt.num_objects() {
        return Err(Error::Structure(format!("object {j} out of range")));
    }
    let mut objs: Vec<(ObjId, MorId)> = Vec::new();
    for a in src.objects() {
        for u in tgt.hom(f.obj(a), j) {
            objs.push((a, u));
        }
    }
    let pos: HashMap<(ObjId, MorId), usize> = objs.iter().enumerate().map(|(k, &o)| (o, k)).collect();
    let labels: Vec<String> =
        objs.iter().map(|&(a, u)| format!("({},{})", src.label(a), tgt.name(u))).collect();
    let mut morphisms = Vec::new();
    let mut under = Vec::new();
    let mut targets = Vec::new();
    let mut index: HashMap<(MorId, usize), MorId> = HashMap::new();
    for (k, &(a, u)) in objs.iter().enumerate() {
        for &h in src.out_of(a) {
            let a2 = src.tgt(h);
            for u2 in tgt.hom(f.obj(a2), j) {
                if tgt.compose(u2, f.mor(h)) == Some(u) {
                    let k2 = pos[&(a2, u2)];
                    let is_identity = src.is_identity(h);
                    let name = if is_identity {
                        format!("id({})", labels[k])
                    } else {
                        format!("{}@{}", src.name(h), labels[k2])
                    };
                    index.insert((h, k2), morphisms.len());
                    morphisms.push(Morphism { name, src: k, tgt: k2, is_identity });
                    under.push(h);
                    targets.push(k2);
                }
            }
        }
    }
    FinCategory::assemble(labels, morphisms, |g, f2| {
        let h = src.compose(under[g], under[f2]).expect("composable in source");
        index[&(h, targets[g])]
    })
}

/// `C^op`: same objects and names, arrows and composition reversed.
pub fn opposite(c: &FinCategory) -> FinCategory {
    let morphisms = c
        .morphism_ids()
        .map(|m| {
            let mm = c.morphism(m);
            Morphism { name: mm.name.clone(), src: mm.tgt, tgt: mm.src, is_identity: mm.is_identity }
        })
        .collect();
    FinCategory::assemble(c.labels().to_vec(), morphisms, |g, f| c.compose(f, g).expect("composable"))
        .expect("opposite of a category is a category")
}

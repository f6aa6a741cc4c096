//! Isomorphism search between small finite categories.

use super::{FinCategory, MorId, ObjId};
use crate::error::{Error, Result};

/// Largest object count accepted by [`find_isomorphism`].
pub const MAX_ISO_OBJECTS: usize = 10;

/// An isomorphism given by bijections on objects and morphisms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CategoryIso {
    pub object_map: Vec<ObjId>,
    pub morphism_map: Vec<MorId>,
}

/// Hom-set sizes out of and into `x`, plus endomorphism count.
fn signature(c: &FinCategory, x: ObjId) -> (usize, usize, usize) {
    (c.out_of(x).len(), c.incoming(x).len(), c.hom(x, x).count())
}

struct Search<'a> {
    a: &'a FinCategory,
    b: &'a FinCategory,
    obj: Vec<Option<ObjId>>,
    obj_used: Vec<bool>,
    mor: Vec<Option<MorId>>,
    mor_used: Vec<bool>,
}

impl Search<'_> {
    fn hom_compatible(&self, x: ObjId) -> bool {
        let fx = self.obj[x].unwrap();
        self.a.objects().all(|y| match self.obj[y] {
            Some(fy) => {
                self.a.hom(x, y).count() == self.b.hom(fx, fy).count()
                    && self.a.hom(y, x).count() == self.b.hom(fy, fx).count()
            }
            None => true,
        })
    }

    fn objects(&mut self, x: ObjId) -> bool {
        if x == self.a.num_objects() {
            return self.morphisms(0);
        }
        for y in self.b.objects() {
            if self.obj_used[y] || signature(self.a, x) != signature(self.b, y) {
                continue;
            }
            self.obj[x] = Some(y);
            self.obj_used[y] = true;
            if self.hom_compatible(x) && self.objects(x + 1) {
                return true;
            }
            self.obj[x] = None;
            self.obj_used[y] = false;
        }
        false
    }

    /// Composition is preserved on every fully assigned triple involving `m`.
    fn consistent(&self, m: MorId) -> bool {
        let a = self.a;
        a.morphism_ids().all(|f| {
            a.out_of(a.tgt(f)).iter().all(|&g| {
                let gf = a.compose(g, f).unwrap();
                if f != m && g != m && gf != m {
                    return true;
                }
                match (self.mor[g], self.mor[f], self.mor[gf]) {
                    (Some(bg), Some(bf), Some(bgf)) => self.b.compose(bg, bf) == Some(bgf),
                    _ => true,
                }
            })
        })
    }

    fn morphisms(&mut self, m: MorId) -> bool {
        if m == self.a.num_morphisms() {
            return true;
        }
        let (x, y) = (self.obj[self.a.src(m)].unwrap(), self.obj[self.a.tgt(m)].unwrap());
        let candidates: Vec<MorId> = if self.a.is_identity(m) {
            vec![self.b.identity(x)]
        } else {
            self.b.hom(x, y).filter(|&t| !self.b.is_identity(t)).collect()
        };
        for t in candidates {
            if self.mor_used[t] {
                continue;
            }
            self.mor[m] = Some(t);
            self.mor_used[t] = true;
            if self.consistent(m) && self.morphisms(m + 1) {
                return true;
            }
            self.mor[m] = None;
            self.mor_used[t] = false;
        }
        false
    }
}

/// Searches for an isomorphism `a → b`. Categories with more than
/// [`MAX_ISO_OBJECTS`] objects are rejected with a capacity error.
pub fn find_isomorphism(a: &FinCategory, b: &FinCategory) -> Result<Option<CategoryIso>> {
    let n = a.num_objects().max(b.num_objects());
    if n > MAX_ISO_OBJECTS {
        return Err(Error::Capacity { what: "isomorphism search".into(), needed: n, limit: MAX_ISO_OBJECTS });
    }
    if a.num_objects() != b.num_objects() || a.num_morphisms() != b.num_morphisms() {
        return Ok(None);
    }
    let mut s = Search {
        a,
        b,
        obj: vec![None; a.num_objects()],
        obj_used: vec![false; b.num_objects()],
        mor: vec![None; a.num_morphisms()],
        mor_used: vec![false; b.num_morphisms()],
    };
    if !s.objects(0) {
        return Ok(None);
    }
    Ok(Some(CategoryIso {
        object_map: s.obj.into_iter().map(Option::unwrap).collect(),
        morphism_map: s.mor.into_iter().map(Option::unwrap).collect(),
    }))
}

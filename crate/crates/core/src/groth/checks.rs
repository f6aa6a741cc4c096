//! Homology-level checks of the cofiber category against mapping cones.

use std::sync::Arc;

use super::hoc;
use crate::chaincx::{cone, homology_iso_check};
use crate::error::{Error, Result};
use crate::fincat::{find_isomorphism, over_category, FinFunctor, ObjId};
use crate::nerve::{induced_nerve_chain_map, nerve_chain_complex, nerve_dimension, Limits};
use crate::report::{homology_line, Report};

/// The functor `I/ᵢ → J/_{F(i)}` induced by `F`.
pub fn induced_over_functor(f: &FinFunctor, i: ObjId) -> Result<FinFunctor> {
    let (i_cat, j_cat) = (f.source(), f.target());
    let (over_i, forget_i) = over_category(i_cat, i)?;
    let (over_j, forget_j) = over_category(j_cat, f.obj(i))?;
    let j_in = j_cat.incoming(f.obj(i));
    let object_map: Vec<ObjId> = i_cat
        .incoming(i)
        .iter()
        .map(|&h| j_in.iter().position(|&g| g == f.mor(h)).expect("F(h) maps into F(i)"))
        .collect();
    let morphism_map = over_i
        .morphism_ids()
        .map(|m| {
            let (a, b) = (object_map[over_i.src(m)], object_map[over_i.tgt(m)]);
            let u = f.mor(forget_i.mor(m));
            over_j
                .hom(a, b)
                .find(|&t| forget_j.mor(t) == u)
                .ok_or_else(|| Error::Structure("over-category morphism has no image".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    FinFunctor::new(Arc::new(over_i), Arc::new(over_j), object_map, morphism_map)
}

fn finite_dim(c: &crate::fincat::FinCategory) -> Result<usize> {
    Ok(nerve_dimension(c).require_finite(c)?.unwrap_or(0))
}

/// Compares `H̃_*(N hoc F)` with `H̃_*(cone N F)` in degrees `−1 ..= top`,
/// one check per degree.
pub fn thomason_cofiber_check(f: &FinFunctor, top: i64, limits: Limits) -> Result<Report> {
    let h = hoc(f)?;
    let cap = finite_dim(&h.cofiber)?.max(finite_dim(f.source())?).max(finite_dim(f.target())?);
    let lhs = nerve_chain_complex(&h.cofiber, cap, true, limits)?;
    let rhs = cone(&induced_nerve_chain_map(f, cap, true, limits)?);
    let cmp = homology_iso_check(&lhs, &rhs, -1, top);
    let mut r = Report::new("cofiber category versus mapping cone of the nerve map");
    for (k, (a, b)) in &cmp.degrees {
        r.check(format!("reduced H_{k}"), a == b, format!("N(hoc F): {a}, cone(NF): {b}"));
    }
    Ok(r)
}

/// Checks `(hoc F)/ⱼ ≅ J/ⱼ` for every `j`, that `(hoc F)/∗` is a point, and
/// that `H̃(N (hoc F)/ᵢ) ≅ H̃(cone(N I/ᵢ → N J/_{F(i)}))` in degrees
/// `−1 ..= top` for every `i`.
pub fn hoc_overcategory_checks(f: &FinFunctor, top: i64, limits: Limits) -> Result<Report> {
    let h = hoc(f)?;
    let (i_cat, j_cat) = (f.source(), f.target());
    let mut r = Report::new("over categories of the cofiber category");
    for j in j_cat.objects() {
        let (lhs, _) = over_category(&h.cofiber, h.iota.obj(j))?;
        let (rhs, _) = over_category(j_cat, j)?;
        let iso = find_isomorphism(&lhs, &rhs)?;
        r.check(
            format!("(hoc F)/{} = J/{}", h.cofiber.label(h.iota.obj(j)), j_cat.label(j)),
            iso.is_some(),
            format!("{} objects", lhs.num_objects()),
        );
    }
    let (over_star, _) = over_category(&h.cofiber, h.star)?;
    r.check(
        "(hoc F)/* is a point",
        over_star.num_objects() == 1 && over_star.num_morphisms() == 1,
        format!("{} objects, {} morphisms", over_star.num_objects(), over_star.num_morphisms()),
    );
    for i in i_cat.objects() {
        let x = h.kappa.obj(i);
        let (over, _) = over_category(&h.cofiber, x)?;
        let over = Arc::new(over);
        let g = induced_over_functor(f, i)?;
        let cap = finite_dim(&over)?.max(finite_dim(g.source())?).max(finite_dim(g.target())?);
        let lhs = nerve_chain_complex(&over, cap, true, limits)?;
        let rhs = cone(&induced_nerve_chain_map(&g, cap, true, limits)?);
        let cmp = homology_iso_check(&lhs, &rhs, -1, top);
        let left: std::collections::BTreeMap<_, _> = cmp.degrees.iter().map(|(&k, (a, _))| (k, a.clone())).collect();
        r.check(
            format!("(hoc F)/{} vs cone at {}", h.cofiber.label(x), i_cat.label(i)),
            cmp.isomorphic(),
            if cmp.isomorphic() {
                homology_line(&left)
            } else {
                format!("mismatch in degrees {:?}", cmp.mismatches())
            },
        );
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::{discrete, point, powerset_poset};
    use crate::samples::example_inclusion;

    #[test]
    fn example_passes() {
        let f = example_inclusion();
        assert!(thomason_cofiber_check(&f, 3, Limits::default()).unwrap().passed());
        let r = hoc_overcategory_checks(&f, 3, Limits::default()).unwrap();
        assert!(r.passed(), "{r}");
    }

    #[test]
    fn two_points_to_one() {
        let f = FinFunctor::constant(Arc::new(discrete(2)), Arc::new(point()), 0);
        let r = thomason_cofiber_check(&f, 3, Limits::default()).unwrap();
        assert!(r.passed(), "{r}");
        assert!(r.checks[2].detail.starts_with("N(hoc F): Z,"));
    }

    #[test]
    fn identity_functor() {
        let p = Arc::new(powerset_poset(2, true).unwrap());
        let f = FinFunctor::identity(p);
        assert!(thomason_cofiber_check(&f, 3, Limits::default()).unwrap().passed());
        assert!(hoc_overcategory_checks(&f, 3, Limits::default()).unwrap().passed());
    }
}

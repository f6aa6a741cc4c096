//! JSON documents for categories, functors and diagrams.
//!
//! A category is either a builtin name (`"pullback"`, `"pushout"`,
//! `"arrow"`, `"point"`, `"p0(n)"`, `"p(n)"`, `"discrete(k)"`), a poset
//! shorthand `{"poset": {"relation_pairs": [["a","b"], …], "objects": […]}}`
//! closed under transitivity, or a full document
//! `{"objects": […], "morphisms": [{"name","src","tgt"}, …], "compose": [[g, f, g∘f], …]}`
//! with implicit identities `id(x)`. Only composites of non-identity pairs
//! are listed.

mod text;

use std::collections::{BTreeMap, HashMap};
use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::chaincx::{ChainComplex, ChainMap};
use crate::error::{Error, Result};
use crate::fincat::{
    arrow, discrete, point, poset, powerset_poset, pullback, pushout, CategoryTables, FinCategory, FinFunctor,
    Morphism,
};
use crate::holim::{Conn, Diagram};

pub use text::{read_complex, read_map, write_complex, write_map};

#[derive(Serialize, Deserialize)]
struct MorphismDoc {
    name: String,
    src: String,
    tgt: String,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CategoryDoc {
    objects: Vec<String>,
    #[serde(default)]
    morphisms: Vec<MorphismDoc>,
    #[serde(default)]
    compose: Vec<(String, String, String)>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PosetDoc {
    #[serde(default)]
    relation_pairs: Vec<(String, String)>,
    objects: Option<Vec<String>>,
}

fn field<T: serde::de::DeserializeOwned>(v: &Value, context: &str) -> Result<T> {
    T::deserialize(v).map_err(|e| Error::parse(context, e.to_string()))
}

/// Attaches `context` to malformed-input errors; axiom, functoriality and
/// capacity failures keep their kind.
fn within(context: &str) -> impl Fn(Error) -> Error + '_ {
    move |e| match e {
        Error::Structure(m) | Error::Chain(m) => Error::parse(context, m),
        Error::Parse { context: inner, message } if !inner.starts_with(context) => {
            Error::parse(format!("{context}: {inner}"), message)
        }
        e => e,
    }
}

/// Parses JSON text, citing line and column on syntax errors.
pub fn parse_json(text: &str, context: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| Error::parse(context, e.to_string()))
}

/// Reads a file, naming it in errors.
pub fn read_file(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::parse(path.display().to_string(), e.to_string()))
}

fn small_arg(name: &str, prefix: &str) -> Option<Result<usize>> {
    let inner = name.strip_prefix(prefix)?.strip_suffix(')')?;
    Some(inner.trim().parse().map_err(|_| Error::parse("shape", format!("bad argument in {name:?}"))))
}

/// The builtin shape library.
pub fn builtin_shape(name: &str) -> Result<FinCategory> {
    let name = name.trim();
    match name {
        "pullback" => return Ok(pullback()),
        "pushout" => return Ok(pushout()),
        "arrow" => return Ok(arrow()),
        "point" => return Ok(point()),
        _ => {}
    }
    if let Some(n) = small_arg(name, "p0(") {
        return powerset_poset(n?, true);
    }
    if let Some(n) = small_arg(name, "p(") {
        return powerset_poset(n?, false);
    }
    if let Some(k) = small_arg(name, "discrete(") {
        return Ok(discrete(k?));
    }
    Err(Error::parse(
        "shape",
        format!("unknown builtin {name:?}; expected pullback, pushout, arrow, point, p0(n), p(n) or discrete(k)"),
    ))
}

fn poset_from_doc(doc: PosetDoc, context: &str) -> Result<FinCategory> {
    let mut labels = doc.objects.unwrap_or_default();
    for (a, b) in &doc.relation_pairs {
        for x in [a, b] {
            if !labels.contains(x) {
                labels.push(x.clone());
            }
        }
    }
    let index: HashMap<&str, usize> = labels.iter().enumerate().map(|(k, l)| (l.as_str(), k)).collect();
    if index.len() != labels.len() {
        return Err(Error::parse(context, "duplicate object label"));
    }
    let n = labels.len();
    let mut rel = vec![vec![false; n]; n];
    for (x, row) in rel.iter_mut().enumerate() {
        row[x] = true;
    }
    for (a, b) in &doc.relation_pairs {
        rel[index[a.as_str()]][index[b.as_str()]] = true;
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if rel[i][k] && rel[k][j] {
                    rel[i][j] = true;
                }
            }
        }
    }
    poset(labels, |x, y| rel[x][y]).map_err(within(context))
}

fn category_from_doc(doc: CategoryDoc, context: &str) -> Result<FinCategory> {
    let obj: HashMap<&str, usize> = doc.objects.iter().enumerate().map(|(k, l)| (l.as_str(), k)).collect();
    if obj.len() != doc.objects.len() {
        return Err(Error::parse(context, "duplicate object label"));
    }
    let mut morphisms: Vec<Morphism> = doc
        .objects
        .iter()
        .enumerate()
        .map(|(x, l)| Morphism { name: format!("id({l})"), src: x, tgt: x, is_identity: true })
        .collect();
    for (k, m) in doc.morphisms.iter().enumerate() {
        let look = |l: &str, end: &str| {
            obj.get(l).copied().ok_or_else(|| {
                Error::parse(context, format!("morphisms[{k}].{end}: unknown object {l:?}"))
            })
        };
        morphisms.push(Morphism { name: m.name.clone(), src: look(&m.src, "src")?, tgt: look(&m.tgt, "tgt")?, is_identity: false });
    }
    let mor: HashMap<&str, usize> = morphisms.iter().enumerate().map(|(k, m)| (m.name.as_str(), k)).collect();
    if mor.len() != morphisms.len() {
        return Err(Error::parse(context, "duplicate morphism name (identities are named id(x))"));
    }
    let no = doc.objects.len();
    let mut compose = Vec::new();
    for (g, m) in morphisms.iter().enumerate() {
        for (f, n) in morphisms.iter().enumerate() {
            if n.tgt == m.src && (g < no || f < no) {
                compose.push((g, f, if g < no { f } else { g }));
            }
        }
    }
    for (k, (g, f, h)) in doc.compose.iter().enumerate() {
        let look = |name: &str| {
            mor.get(name)
                .copied()
                .ok_or_else(|| Error::parse(context, format!("compose[{k}]: unknown morphism {name:?}")))
        };
        let (g, f, h) = (look(g)?, look(f)?, look(h)?);
        if g < no || f < no {
            let expect = if g < no { f } else { g };
            if h != expect {
                return Err(Error::parse(context, format!("compose[{k}]: identity composite must be the other factor")));
            }
            continue;
        }
        compose.push((g, f, h));
    }
    let tables = CategoryTables { objects: doc.objects, morphisms, identities: (0..no).collect(), compose };
    FinCategory::from_tables(tables).map_err(within(context))
}

/// Parses any of the three category encodings.
pub fn category_from_json(v: &Value, context: &str) -> Result<FinCategory> {
    category_from_json_at(v, None, context)
}

/// Like [`category_from_json`], but a string naming an existing file
/// (relative to `base`) is read as a category document.
pub fn category_from_json_at(v: &Value, base: Option<&Path>, context: &str) -> Result<FinCategory> {
    if let Value::String(s) = v {
        let path = resolve(base, s);
        if path.is_file() {
            return read_category(&path);
        }
    }
    match v {
        Value::String(s) => builtin_shape(s).map_err(within(context)),
        Value::Object(o) if o.contains_key("poset") => {
            if o.len() != 1 {
                return Err(Error::parse(context, "poset shorthand takes no other fields"));
            }
            poset_from_doc(field(&o["poset"], &format!("{context}.poset"))?, context)
        }
        Value::Object(_) => category_from_doc(field(v, context)?, context),
        _ => Err(Error::parse(context, "expected a builtin name or a category object")),
    }
}

/// The full category document, identities omitted.
pub fn category_to_json(c: &FinCategory) -> Value {
    let morphisms: Vec<MorphismDoc> = c
        .non_identities()
        .map(|m| MorphismDoc {
            name: c.name(m).to_string(),
            src: c.label(c.src(m)).to_string(),
            tgt: c.label(c.tgt(m)).to_string(),
        })
        .collect();
    let mut compose = Vec::new();
    for f in c.non_identities() {
        for &g in c.out_of(c.tgt(f)) {
            if !c.is_identity(g) {
                let h = c.compose(g, f).expect("composable");
                compose.push((c.name(g).to_string(), c.name(f).to_string(), c.name(h).to_string()));
            }
        }
    }
    serde_json::to_value(CategoryDoc { objects: c.labels().to_vec(), morphisms, compose }).expect("serializable")
}

pub fn to_pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

/// `{"source", "target", "objects": {label: label}, "morphisms": {name: name}}`.
/// `morphisms` may be omitted when the target is thin; identities are
/// implicit.
/// Category strings resolve as in [`category_from_json_at`].
pub fn functor_from_json(v: &Value, base: Option<&Path>, context: &str) -> Result<FinFunctor> {
    let o = v.as_object().ok_or_else(|| Error::parse(context, "expected a functor object"))?;
    for k in o.keys() {
        if !["source", "target", "objects", "morphisms"].contains(&k.as_str()) {
            return Err(Error::parse(context, format!("unknown field {k:?}")));
        }
    }
    let get = |k: &str| o.get(k).ok_or_else(|| Error::parse(context, format!("missing field `{k}`")));
    let source = Arc::new(category_from_json_at(get("source")?, base, &format!("{context}.source"))?);
    let target = Arc::new(category_from_json_at(get("target")?, base, &format!("{context}.target"))?);
    let objects: BTreeMap<String, String> = field(get("objects")?, &format!("{context}.objects"))?;
    let mut object_map = Vec::new();
    for x in source.objects() {
        let l = source.label(x);
        let y = objects
            .get(l)
            .ok_or_else(|| Error::parse(context, format!("objects: no image for {l:?}")))?;
        object_map.push(
            target.find_object(y).ok_or_else(|| Error::parse(context, format!("objects.{l}: unknown target {y:?}")))?,
        );
    }
    if objects.len() != source.num_objects() {
        return Err(Error::parse(context, "objects: entries for unknown source objects"));
    }
    let Some(mv) = o.get("morphisms") else {
        return FinFunctor::from_object_map(source, target, object_map).map_err(within(context));
    };
    let morphisms: BTreeMap<String, String> = field(mv, &format!("{context}.morphisms"))?;
    let mut morphism_map = Vec::new();
    for m in source.morphism_ids() {
        if source.is_identity(m) {
            morphism_map.push(target.identity(object_map[source.src(m)]));
            continue;
        }
        let name = source.name(m);
        let img = morphisms
            .get(name)
            .ok_or_else(|| Error::parse(context, format!("morphisms: no image for {name:?}")))?;
        morphism_map.push(
            target
                .find_morphism(img)
                .ok_or_else(|| Error::parse(context, format!("morphisms.{name}: unknown target {img:?}")))?,
        );
    }
    FinFunctor::new(source, target, object_map, morphism_map).map_err(within(context))
}

pub fn functor_to_json(f: &FinFunctor) -> Value {
    let (s, t) = (f.source(), f.target());
    let objects: BTreeMap<&str, &str> = s.objects().map(|x| (s.label(x), t.label(f.obj(x)))).collect();
    let morphisms: BTreeMap<&str, &str> = s.non_identities().map(|m| (s.name(m), t.name(f.mor(m)))).collect();
    json!({
        "source": category_to_json(s),
        "target": category_to_json(t),
        "objects": objects,
        "morphisms": morphisms,
    })
}

/// Resolves a relative path against the document directory.
fn resolve(base: Option<&Path>, p: &str) -> PathBuf {
    match base {
        Some(b) if Path::new(p).is_relative() => b.join(p),
        _ => PathBuf::from(p),
    }
}

fn complex_from_json(v: &Value, base: Option<&Path>, context: &str) -> Result<ChainComplex> {
    match v {
        Value::String(p) => {
            let path = resolve(base, p);
            read_complex(&read_file(&path)?, &path.display().to_string())
        }
        Value::Object(o) if o.len() == 1 => {
            let (k, x) = o.iter().next().expect("one entry");
            match k.as_str() {
                "sphere" => Ok(ChainComplex::sphere(field(x, context)?)),
                "disk" => {
                    let (n, t): (i64, i64) = field(x, context)?;
                    Ok(ChainComplex::disk(n, t))
                }
                "zero" => Ok(ChainComplex::zero()),
                "text" => read_complex(&field::<String>(x, context)?, context),
                "sum" => {
                    let parts: Vec<Value> = field(x, context)?;
                    parts.iter().enumerate().try_fold(ChainComplex::zero(), |acc, (i, p)| {
                        Ok(acc.direct_sum(&complex_from_json(p, base, &format!("{context}.sum[{i}]"))?))
                    })
                }
                _ => Err(Error::parse(context, format!("unknown complex form {k:?}"))),
            }
        }
        _ => Err(Error::parse(
            context,
            "expected a path or one of {\"sphere\": n}, {\"disk\": [n, k]}, {\"zero\": true}, {\"text\": …}, {\"sum\": […]}",
        )),
    }
}

fn map_from_json(
    v: &Value,
    base: Option<&Path>,
    context: &str,
    source: &Arc<ChainComplex>,
    target: &Arc<ChainComplex>,
) -> Result<ChainMap> {
    match v {
        Value::String(p) => {
            let path = resolve(base, p);
            read_map(&read_file(&path)?, &path.display().to_string(), source.clone(), target.clone())
        }
        Value::Object(o) if o.len() == 1 => {
            let (k, x) = o.iter().next().expect("one entry");
            match k.as_str() {
                "text" => read_map(&field::<String>(x, context)?, context, source.clone(), target.clone()),
                "zero" => Ok(ChainMap::zero(source.clone(), target.clone())),
                "scalar" => {
                    if source != target {
                        return Err(Error::parse(context, "scalar maps need equal source and target"));
                    }
                    let a: i64 = field(x, context)?;
                    let comps = ChainMap::identity(source.clone())
                        .components()
                        .iter()
                        .map(|(&n, m)| (n, m.scale(a)))
                        .collect();
                    ChainMap::new(source.clone(), target.clone(), comps).map_err(|e| Error::parse(context, e.to_string()))
                }
                _ => Err(Error::parse(context, format!("unknown map form {k:?}"))),
            }
        }
        _ => Err(Error::parse(context, "expected a path or one of {\"text\": …}, {\"zero\": true}, {\"scalar\": a}")),
    }
}

/// A diagram document:
///
/// ```json
/// {"shape": "pullback",
///  "complexes": {"b": {"sphere": 3}},
///  "maps": {"a->b": "ab.map"},
///  "conn": {"b": 2}}
/// ```
///
/// Objects without a complex get the zero complex. Morphisms without a
/// map get the composite of listed factors when one exists and zero
/// otherwise. Conn annotations are optional and verified; missing ones are
/// computed. Relative paths resolve against `base`.
pub fn diagram_from_json(v: &Value, base: Option<&Path>, context: &str) -> Result<Diagram> {
    let o = v.as_object().ok_or_else(|| Error::parse(context, "expected a diagram object"))?;
    for k in o.keys() {
        if !["shape", "complexes", "maps", "conn"].contains(&k.as_str()) {
            return Err(Error::parse(context, format!("unknown field {k:?}")));
        }
    }
    let shape = Arc::new(category_from_json_at(
        o.get("shape").ok_or_else(|| Error::parse(context, "missing field `shape`"))?,
        base,
        &format!("{context}.shape"),
    )?);
    let empty = Value::Object(Default::default());
    let cx: BTreeMap<String, Value> = field(o.get("complexes").unwrap_or(&empty), &format!("{context}.complexes"))?;
    for l in cx.keys() {
        if shape.find_object(l).is_none() {
            return Err(Error::parse(context, format!("complexes: unknown object {l:?}")));
        }
    }
    let vertices: Vec<Arc<ChainComplex>> = shape
        .objects()
        .map(|x| {
            let l = shape.label(x);
            match cx.get(l) {
                Some(v) => complex_from_json(v, base, &format!("{context}.complexes.{l}")).map(Arc::new),
                None => Ok(Arc::new(ChainComplex::zero())),
            }
        })
        .collect::<Result<_>>()?;
    let maps: BTreeMap<String, Value> = field(o.get("maps").unwrap_or(&empty), &format!("{context}.maps"))?;
    let mut given = BTreeMap::new();
    for (name, mv) in &maps {
        let m = shape
            .find_morphism(name)
            .ok_or_else(|| Error::parse(context, format!("maps: unknown morphism {name:?}")))?;
        let f = map_from_json(
            mv,
            base,
            &format!("{context}.maps.{name}"),
            &vertices[shape.src(m)],
            &vertices[shape.tgt(m)],
        )?;
        given.insert(m, f);
    }
    let conn = match o.get("conn") {
        None => None,
        Some(cv) => {
            let raw: BTreeMap<String, Value> = field(cv, &format!("{context}.conn"))?;
            let mut conn: Vec<Conn> = vertices.iter().map(|v| Conn::of(v)).collect();
            for (l, c) in raw {
                let x = shape
                    .find_object(&l)
                    .ok_or_else(|| Error::parse(context, format!("conn: unknown object {l:?}")))?;
                conn[x] = match c {
                    Value::Number(n) => Conn::Finite(
                        n.as_i64().ok_or_else(|| Error::parse(context, format!("conn.{l}: not an integer")))?,
                    ),
                    Value::String(s) => s.parse().map_err(|e: String| Error::parse(context, format!("conn.{l}: {e}")))?,
                    _ => return Err(Error::parse(context, format!("conn.{l}: expected an integer or \"inf\""))),
                };
            }
            Some(conn)
        }
    };
    Diagram::from_partial(shape, vertices, given, conn).map_err(within(context))
}

/// A self-contained diagram document with every complex and non-identity
/// map inline.
pub fn diagram_to_json(d: &Diagram) -> Value {
    let s = d.shape();
    let complexes: BTreeMap<&str, Value> =
        s.objects().map(|x| (s.label(x), json!({ "text": write_complex(d.vertex(x)) }))).collect();
    let maps: BTreeMap<&str, Value> =
        s.non_identities().map(|m| (s.name(m), json!({ "text": write_map(d.edge(m)) }))).collect();
    let mut doc = json!({ "shape": category_to_json(s), "complexes": complexes, "maps": maps });
    if let Some(c) = d.conn_annotations() {
        let conn: BTreeMap<&str, Value> = s
            .objects()
            .map(|x| {
                let v = match c[x] {
                    Conn::Finite(n) => json!(n),
                    Conn::Infinite => json!("inf"),
                };
                (s.label(x), v)
            })
            .collect();
        doc["conn"] = json!(conn);
    }
    doc
}

/// Reads a category document or builtin name from a file.
pub fn read_category(path: &Path) -> Result<FinCategory> {
    let ctx = path.display().to_string();
    category_from_json_at(&parse_json(&read_file(path)?, &ctx)?, path.parent(), &ctx)
}

pub fn read_functor(path: &Path) -> Result<FinFunctor> {
    let ctx = path.display().to_string();
    functor_from_json(&parse_json(&read_file(path)?, &ctx)?, path.parent(), &ctx)
}

pub fn read_diagram(path: &Path) -> Result<Diagram> {
    let ctx = path.display().to_string();
    diagram_from_json(&parse_json(&read_file(path)?, &ctx)?, path.parent(), &ctx)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groth::hoc;
    use crate::samples::example_inclusion;

    fn round_trip(c: &FinCategory) -> FinCategory {
        let text = to_pretty(&category_to_json(c));
        category_from_json(&parse_json(&text, "rt").unwrap(), "rt").unwrap()
    }

    #[test]
    fn builtins() {
        assert_eq!(builtin_shape("p0(2)").unwrap().num_objects(), 7);
        assert_eq!(builtin_shape("p(2)").unwrap().num_objects(), 8);
        assert_eq!(builtin_shape("discrete(3)").unwrap().num_morphisms(), 3);
        assert!(builtin_shape("p0(x)").is_err());
        assert!(builtin_shape("cube").is_err());
    }

    #[test]
    fn canonical_categories_round_trip_exactly() {
        for name in ["pullback", "p0(2)", "p(1)", "discrete(2)", "point"] {
            let c = builtin_shape(name).unwrap();
            assert_eq!(round_trip(&c), c, "{name}");
        }
    }

    #[test]
    fn hoc_round_trips_up_to_reindexing() {
        let h = hoc(&example_inclusion()).unwrap();
        let c = h.cofiber.as_ref();
        let back = round_trip(c);
        let doc = category_to_json(c);
        assert_eq!(category_to_json(&back), doc);
        assert_eq!(back.num_objects(), 11);
        // same category after matching objects by label and arrows by name
        let mor = |x: &FinCategory, y: &FinCategory, m| y.find_morphism(x.name(m)).unwrap();
        for g in c.morphism_ids() {
            let g2 = mor(c, &back, g);
            assert_eq!(back.label(back.src(g2)), c.label(c.src(g)));
            assert_eq!(back.label(back.tgt(g2)), c.label(c.tgt(g)));
            for &f in c.incoming(c.src(g)) {
                let h = c.compose(g, f).unwrap();
                assert_eq!(back.compose(g2, mor(c, &back, f)), Some(mor(c, &back, h)));
            }
        }
    }

    #[test]
    fn poset_shorthand() {
        let v = parse_json(r#"{"poset": {"relation_pairs": [["a","b"],["b","c"]]}}"#, "p").unwrap();
        let c = category_from_json(&v, "p").unwrap();
        assert_eq!(c.num_morphisms(), 6);
        let v = parse_json(r#"{"poset": {"relation_pairs": [["a","b"],["b","a"]]}}"#, "p").unwrap();
        assert!(category_from_json(&v, "p").is_err());
        let v = parse_json(r#"{"poset": {"relation_pairs": [], "objects": ["0","1"]}}"#, "p").unwrap();
        assert_eq!(category_from_json(&v, "p").unwrap(), discrete(2));
    }

    #[test]
    fn full_document_with_non_thin_homs() {
        // two parallel arrows and an idempotent
        let text = r#"{
            "objects": ["x", "y"],
            "morphisms": [
                {"name": "f", "src": "x", "tgt": "y"},
                {"name": "g", "src": "x", "tgt": "y"},
                {"name": "e", "src": "y", "tgt": "y"}
            ],
            "compose": [["e","f","f"], ["e","g","f"], ["e","e","e"]]
        }"#;
        let c = category_from_json(&parse_json(text, "doc").unwrap(), "doc").unwrap();
        assert_eq!(c.num_morphisms(), 5);
        assert!(!c.is_thin());
        assert_eq!(round_trip(&c), c);
    }

    #[test]
    fn parse_errors_name_fields() {
        let e = category_from_json(&json!({"objects": ["x"], "morphisms": [{"name": "f", "src": "x"}]}), "c").unwrap_err();
        assert!(e.to_string().contains("tgt"), "{e}");
        let e = category_from_json(&json!({"objects": ["x"], "morphisms": [{"name": "f", "src": "x", "tgt": "z"}]}), "c")
            .unwrap_err();
        assert!(e.to_string().contains("morphisms[0].tgt"), "{e}");
        let e = parse_json("{\n\"objects\": [\n}", "bad.json").unwrap_err();
        assert!(e.to_string().contains("line 3"), "{e}");
        // missing composite is an axiom failure
        let e = category_from_json(
            &json!({"objects": ["x","y","z"], "morphisms": [
                {"name":"f","src":"x","tgt":"y"}, {"name":"g","src":"y","tgt":"z"}]}),
            "c",
        )
        .unwrap_err();
        assert!(e.to_string().contains("missing"), "{e}");
    }

    #[test]
    fn functor_round_trip() {
        let f = example_inclusion();
        let v = functor_to_json(&f);
        let back = functor_from_json(&v, None, "f").unwrap();
        assert_eq!(functor_to_json(&back), v);
        let short = json!({"source": "p0(1)", "target": "p0(2)", "objects": {"+": "+", "1": "12", "+1": "+12"}});
        let g = functor_from_json(&short, None, "f").unwrap();
        assert_eq!(g.object_map(), f.object_map());
        let bad = json!({"source": "p0(1)", "target": "p0(2)", "objects": {"+": "12", "1": "1", "+1": "1"}});
        assert!(functor_from_json(&bad, None, "f").is_err());
    }

    #[test]
    fn diagram_round_trip() {
        let v = json!({
            "shape": "pullback",
            "complexes": {"a": {"disk": [1, 2]}, "b": {"sum": [{"sphere": 0}, {"disk": [1, 2]}]}, "c": {"sphere": 3}},
            "maps": {"a->b": {"text": "map\ncomponent 0 2 1\n0\n1\ncomponent 1 1 1\n1\nend\n"}},
            "conn": {"c": 2}
        });
        let d = diagram_from_json(&v, None, "d").unwrap();
        assert_eq!(d.conn()[2], Conn::Finite(2));
        let out = diagram_to_json(&d);
        let back = diagram_from_json(&out, None, "rt").unwrap();
        assert_eq!(diagram_to_json(&back), out);
        assert!(d.shape().morphism_ids().all(|m| d.edge(m).same_matrices(back.edge(m))));
        // a false annotation is rejected
        let mut w = v.clone();
        w["conn"] = json!({"c": 3});
        assert!(diagram_from_json(&w, None, "d").is_err());
    }
}

//! Named instances and seeded random generators for test suites.

use std::sync::Arc;

use crate::fincat::{powerset_poset, FinFunctor};

/// The inclusion `P₀(1₊) → P₀(2₊)` sending `+ ↦ +`, `1 ↦ 12`, `+1 ↦ +12`.
pub fn example_inclusion() -> FinFunctor {
    let p1 = Arc::new(powerset_poset(1, true).expect("small powerset"));
    let p2 = Arc::new(powerset_poset(2, true).expect("small powerset"));
    let map = ["+", "12", "+12"].iter().map(|l| p2.find_object(l).expect("label")).collect();
    FinFunctor::from_object_map(p1, p2, map).expect("order preserving")
}

use std::collections::BTreeMap;

use num_integer::Integer;
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::chaincx::{ChainComplex, ChainMap, Matrix};
use crate::fincat::{arrow, poset, pullback, FinCategory, ObjId};
use crate::holim::Diagram;

pub use rand::SeedableRng;

/// The generator used by every randomized suite.
pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A random poset on `n` objects labelled `p0 …`: each pair `i < j` is
/// related with probability `density`, then the relation is closed
/// transitively.
pub fn random_poset(rng: &mut ChaCha8Rng, n: usize, density: f64) -> FinCategory {
    let mut rel = vec![vec![false; n]; n];
    for i in 0..n {
        rel[i][i] = true;
        for j in i + 1..n {
            rel[i][j] = rng.gen_bool(density);
        }
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
    poset((0..n).map(|i| format!("p{i}")).collect(), |x, y| rel[x][y]).expect("closed relation is a partial order")
}

/// Whether `map` is order preserving between posets.
fn monotone(i: &FinCategory, j: &FinCategory, map: &[ObjId]) -> bool {
    i.non_identities().all(|m| j.arrow_between(map[i.src(m)], map[i.tgt(m)]).is_some())
}

/// A random functor between random posets with at most `max_objects`
/// objects each. Half of the time `I` is a full subposet of `J` and `F`
/// its inclusion; otherwise `F` is a random order-preserving map, with the
/// constant map as fallback.
pub fn random_poset_functor(rng: &mut ChaCha8Rng, max_objects: usize) -> FinFunctor {
    let nj = rng.gen_range(1..=max_objects);
    let j = Arc::new(random_poset(rng, nj, 0.5));
    if rng.gen_bool(0.5) {
        let mut objs: Vec<ObjId> = (0..nj).collect();
        objs.shuffle(rng);
        let k = rng.gen_range(1..=nj);
        let mut keep = objs[..k].to_vec();
        keep.sort_unstable();
        let labels = keep.iter().map(|&x| j.label(x).to_string()).collect();
        let i = poset(labels, |a, b| j.arrow_between(keep[a], keep[b]).is_some()).expect("subposet");
        return FinFunctor::from_object_map(Arc::new(i), j, keep).expect("inclusion");
    }
    let ni = rng.gen_range(1..=max_objects);
    let i = Arc::new(random_poset(rng, ni, 0.5));
    random_monotone_functor(rng, i, j)
}

/// A random order-preserving map between posets found by rejection
/// sampling; the constant map when none turns up.
pub fn random_monotone_functor(rng: &mut ChaCha8Rng, i: Arc<FinCategory>, j: Arc<FinCategory>) -> FinFunctor {
    let (ni, nj) = (i.num_objects(), j.num_objects());
    for _ in 0..200 {
        let map: Vec<ObjId> = (0..ni).map(|_| rng.gen_range(0..nj)).collect();
        if monotone(&i, &j, &map) {
            return FinFunctor::from_object_map(i, j, map).expect("monotone map");
        }
    }
    let x = rng.gen_range(0..nj);
    FinFunctor::constant(i, j, x)
}

/// One of the shapes used by the connectivity suite: the pullback, `P₀(2₊)`,
/// the arrow, or a random poset with at most five objects.
pub fn random_shape(rng: &mut ChaCha8Rng) -> FinCategory {
    match rng.gen_range(0..4) {
        0 => pullback(),
        1 => powerset_poset(2, true).expect("small powerset"),
        2 => arrow(),
        _ => {
            let n = rng.gen_range(1..=5);
            random_poset(rng, n, 0.5)
        }
    }
}

/// Elementary summands of generated complexes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Piece {
    /// `Z` in degree `n`.
    Sphere(i64),
    /// `Z --k--> Z` from degree `n` to `n − 1`.
    Disk(i64, i64),
}

impl Piece {
    fn complex(self) -> ChainComplex {
        match self {
            Piece::Sphere(n) => ChainComplex::sphere(n),
            Piece::Disk(n, k) => ChainComplex::disk(n, k),
        }
    }

    /// `(degree, index within the piece)` of each generator, bottom first.
    fn generators(self) -> Vec<i64> {
        match self {
            Piece::Sphere(n) => vec![n],
            Piece::Disk(n, _) => vec![n - 1, n],
        }
    }
}

/// Size parameters for random complexes.
#[derive(Clone, Copy, Debug)]
pub struct ComplexParams {
    /// Lowest degree that may carry a generator.
    pub lo: i64,
    /// Highest degree that may carry a generator.
    pub hi: i64,
    pub max_pieces: usize,
    /// Largest `|k|` in `Z --k--> Z` pieces.
    pub max_twist: i64,
    /// Up to this many extra acyclic pieces `Z --±1--> Z` in degrees
    /// `0 ..= lo`, below the homology.
    pub max_contractible: usize,
}

impl Default for ComplexParams {
    fn default() -> Self {
        ComplexParams { lo: 0, hi: 3, max_pieces: 2, max_twist: 3, max_contractible: 0 }
    }
}

impl ComplexParams {
    /// Homology in degrees `lo ..= lo + 2` inside `0 ..= 6` for a random
    /// `lo`, plus acyclic summands below `lo`.
    pub fn random_window(rng: &mut ChaCha8Rng) -> Self {
        let lo = rng.gen_range(0..=4);
        ComplexParams { lo, hi: (lo + 2).min(6), max_pieces: 1, max_twist: 3, max_contractible: 1 }
    }
}

fn random_pieces(rng: &mut ChaCha8Rng, p: ComplexParams) -> Vec<Piece> {
    let count = rng.gen_range(0..=p.max_pieces);
    let mut pieces: Vec<Piece> = (0..count)
        .map(|_| {
            if p.hi > p.lo && rng.gen_bool(0.5) {
                let n = rng.gen_range(p.lo + 1..=p.hi);
                let k = rng.gen_range(1..=p.max_twist) * if rng.gen_bool(0.5) { 1 } else { -1 };
                Piece::Disk(n, k)
            } else {
                Piece::Sphere(rng.gen_range(p.lo..=p.hi))
            }
        })
        .collect();
    for _ in 0..rng.gen_range(0..=p.max_contractible) {
        let n = rng.gen_range(1..=p.lo.max(1));
        pieces.push(Piece::Disk(n, if rng.gen_bool(0.5) { 1 } else { -1 }));
    }
    pieces
}

/// Generator positions of a sum of pieces: `(piece, local index) ↦
/// (degree, index within that degree)`.
fn layout(pieces: &[Piece]) -> Vec<Vec<(i64, usize)>> {
    let mut count: BTreeMap<i64, usize> = BTreeMap::new();
    pieces
        .iter()
        .map(|p| {
            p.generators()
                .into_iter()
                .map(|d| {
                    let c = count.entry(d).or_insert(0);
                    *c += 1;
                    (d, *c - 1)
                })
                .collect()
        })
        .collect()
}

fn sum_complex(pieces: &[Piece]) -> ChainComplex {
    pieces.iter().fold(ChainComplex::zero(), |acc, p| acc.direct_sum(&p.complex()))
}

/// A random chain map between sums of pieces: structured blocks between
/// pairs of pieces plus a random null-homotopic part `∂h + h∂`.
fn random_map(
    rng: &mut ChaCha8Rng,
    src: &[Piece],
    tgt: &[Piece],
    a: &Arc<ChainComplex>,
    b: &Arc<ChainComplex>,
) -> ChainMap {
    let (la, lb) = (layout(src), layout(tgt));
    let mut comps: BTreeMap<i64, Matrix> = BTreeMap::new();
    let mut put = |d: i64, row: usize, col: usize, v: i64| {
        comps.entry(d).or_insert_with(|| Matrix::zeros(b.rank(d), a.rank(d))).add_at(row, col, v);
    };
    for (p, gp) in src.iter().zip(&la) {
        for (q, gq) in tgt.iter().zip(&lb) {
            if !rng.gen_bool(0.6) {
                continue;
            }
            match (*p, *q) {
                (Piece::Sphere(n), Piece::Sphere(m)) if n == m => {
                    put(n, gq[0].1, gp[0].1, rng.gen_range(-2..=2));
                }
                // sphere onto the bottom of a disk
                (Piece::Sphere(n), Piece::Disk(m, _)) if m == n + 1 => {
                    put(n, gq[0].1, gp[0].1, rng.gen_range(-2..=2));
                }
                // top of a disk onto a sphere
                (Piece::Disk(n, _), Piece::Sphere(m)) if n == m => {
                    put(n, gq[0].1, gp[1].1, rng.gen_range(-2..=2));
                }
                (Piece::Disk(n, k), Piece::Disk(m, k2)) if n == m => {
                    let g = k.gcd(&k2);
                    let r = rng.gen_range(-1..=1);
                    put(n, gq[1].1, gp[1].1, r * k / g);
                    put(n - 1, gq[0].1, gp[0].1, r * k2 / g);
                }
                _ => {}
            }
        }
    }
    let structured = ChainMap::new(a.clone(), b.clone(), comps).expect("block maps commute with the boundary");
    // null-homotopic part
    let mut h = BTreeMap::new();
    if let (Some((alo, ahi)), Some(_)) = (a.support(), b.support()) {
        for n in alo..=ahi {
            let (rows, cols) = (b.rank(n + 1), a.rank(n));
            if rows == 0 || cols == 0 {
                continue;
            }
            let mut m = Matrix::zeros(rows, cols);
            for i in 0..rows {
                for j in 0..cols {
                    if rng.gen_bool(0.25) {
                        m.set(i, j, rng.gen_range(-1..=1));
                    }
                }
            }
            h.insert(n, m);
        }
    }
    let null = crate::chaincx::Homotopy { source: a.clone(), target: b.clone(), components: h }.boundary();
    structured.add(&null).expect("same endpoints")
}

/// A random order-preserving level function `P → {0 … levels}`.
fn random_levels(rng: &mut ChaCha8Rng, p: &FinCategory, levels: usize) -> Vec<usize> {
    let n = p.num_objects();
    let mut order: Vec<ObjId> = (0..n).collect();
    // objects sorted so that every predecessor comes first
    order.sort_by_key(|&x| p.incoming(x).len());
    let mut level = vec![0usize; n];
    let mut done = vec![false; n];
    while let Some(&x) = order.iter().find(|&&x| !done[x] && p.incoming(x).iter().all(|&m| p.src(m) == x || done[p.src(m)])) {
        let base = p.incoming(x).iter().filter(|&&m| p.src(m) != x).map(|&m| level[p.src(m)]).max().unwrap_or(0);
        level[x] = (base + usize::from(rng.gen_bool(0.5))).min(levels);
        done[x] = true;
    }
    level
}

/// Level function, complexes `C₀ … C_L` and maps `Cₖ → Cₖ₊₁`.
type Strand = (Vec<usize>, Vec<Arc<ChainComplex>>, Vec<ChainMap>);

/// A random diagram of complexes over a poset: a sum of `strands`
/// diagrams, each pulled back along a random level function from a chain
/// `C₀ → C₁ → …` of random complexes and maps.
pub fn random_diagram(rng: &mut ChaCha8Rng, shape: &Arc<FinCategory>, strands: usize, params: ComplexParams) -> Diagram {
    let levels = 2usize;
    let mut parts: Vec<Strand> = Vec::new();
    for _ in 0..strands.max(1) {
        let lv = random_levels(rng, shape, levels);
        let pieces: Vec<Vec<Piece>> = (0..=levels).map(|_| random_pieces(rng, params)).collect();
        let cxs: Vec<Arc<ChainComplex>> = pieces.iter().map(|p| Arc::new(sum_complex(p))).collect();
        let maps = (0..levels).map(|k| random_map(rng, &pieces[k], &pieces[k + 1], &cxs[k], &cxs[k + 1])).collect();
        parts.push((lv, cxs, maps));
    }
    let n = shape.num_objects();
    let vertex = |x: ObjId| -> ChainComplex {
        parts.iter().fold(ChainComplex::zero(), |acc, (lv, cxs, _)| acc.direct_sum(&cxs[lv[x]]))
    };
    let vertices: Vec<Arc<ChainComplex>> = (0..n).map(|x| Arc::new(vertex(x))).collect();
    let mut given = BTreeMap::new();
    for m in shape.non_identities() {
        let (x, y) = (shape.src(m), shape.tgt(m));
        let blocks: Vec<ChainMap> = parts
            .iter()
            .map(|(lv, cxs, maps)| {
                let mut f = ChainMap::identity(cxs[lv[x]].clone());
                for k in lv[x]..lv[y] {
                    f = maps[k].compose(&f).expect("chain of maps");
                }
                f
            })
            .collect();
        given.insert(m, block_diagonal(&blocks, &vertices[x], &vertices[y]));
    }
    Diagram::from_partial(shape.clone(), vertices, given, None).expect("pulled-back chains are functorial")
}

/// `⊕ fₖ` between the direct sums of the sources and targets, in order.
fn block_diagonal(blocks: &[ChainMap], a: &Arc<ChainComplex>, b: &Arc<ChainComplex>) -> ChainMap {
    let mut comps = BTreeMap::new();
    if let Some((lo, hi)) = a.support() {
        for n in lo..=hi {
            let mut m = Matrix::zeros(b.rank(n), a.rank(n));
            let (mut r, mut c) = (0, 0);
            for f in blocks {
                m.put_block(r, c, &f.component(n));
                r += f.target().rank(n);
                c += f.source().rank(n);
            }
            comps.insert(n, m);
        }
    }
    ChainMap::new(a.clone(), b.clone(), comps).expect("block diagonal of chain maps")
}

/// A random integer matrix with entries in `[-bound, bound]`.
pub fn random_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize, bound: i64) -> Matrix {
    let mut m = Matrix::zeros(rows, cols);
    for i in 0..rows {
        for j in 0..cols {
            m.set(i, j, rng.gen_range(-bound..=bound));
        }
    }
    m
}

//! Nerves of finite categories: nondegenerate simplices, dimension, the
//! degree function on objects and normalized chain complexes.

mod chains;

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

pub use chains::{induced_nerve_chain_map, nerve_chain_complex, unnormalized_chain_complex};

use crate::error::{Error, Result};
use crate::fincat::{over_category, FinCategory, MorId, ObjId};

/// Resource limits for enumerations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Total number of simplices a nerve (or generators a total complex)
    /// may have.
    pub max_simplices: usize,
}

impl Limits {
    pub const DEFAULT_MAX_SIMPLICES: usize = 200_000;
    pub const ENV_VAR: &'static str = "HOLIM_MAX_SIMPLICES";

    /// Default limits, overridden by `HOLIM_MAX_SIMPLICES` when set to a
    /// valid number.
    pub fn from_env() -> Self {
        let max_simplices = std::env::var(Self::ENV_VAR)
            .ok()
            .and_then(|v| v.trim().parse().ok())
            .unwrap_or(Self::DEFAULT_MAX_SIMPLICES);
        Limits { max_simplices }
    }
}

impl Default for Limits {
    fn default() -> Self {
        Limits { max_simplices: Self::DEFAULT_MAX_SIMPLICES }
    }
}

/// A nondegenerate simplex: a string `start → … ` of composable
/// non-identity morphisms, first arrow first. A 0-simplex is an object.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Simplex {
    pub start: ObjId,
    pub arrows: Vec<MorId>,
}

impl Simplex {
    pub fn vertex(x: ObjId) -> Self {
        Simplex { start: x, arrows: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.arrows.len()
    }

    /// Last vertex.
    pub fn target(&self, c: &FinCategory) -> ObjId {
        self.arrows.last().map_or(self.start, |&m| c.tgt(m))
    }

    /// Vertices `i₀, …, i_k`.
    pub fn vertices(&self, c: &FinCategory) -> Vec<ObjId> {
        std::iter::once(self.start).chain(self.arrows.iter().map(|&m| c.tgt(m))).collect()
    }

    pub fn label(&self, c: &FinCategory) -> String {
        if self.arrows.is_empty() {
            c.label(self.start).to_string()
        } else {
            let names: Vec<&str> = self.arrows.iter().map(|&m| c.name(m)).collect();
            format!("[{}]", names.join("|"))
        }
    }

    /// Face `d_j` as a possibly degenerate string: `None` when an inner face
    /// composes two arrows to an identity.
    pub fn face(&self, c: &FinCategory, j: usize) -> Option<Simplex> {
        let k = self.dim();
        assert!(k >= 1 && j <= k, "face {j} of a {k}-simplex");
        if j == 0 {
            return Some(Simplex { start: c.tgt(self.arrows[0]), arrows: self.arrows[1..].to_vec() });
        }
        if j == k {
            return Some(Simplex { start: self.start, arrows: self.arrows[..k - 1].to_vec() });
        }
        let g = c.compose(self.arrows[j], self.arrows[j - 1]).expect("composable string");
        if c.is_identity(g) {
            return None;
        }
        let mut arrows = Vec::with_capacity(k - 1);
        arrows.extend_from_slice(&self.arrows[..j - 1]);
        arrows.push(g);
        arrows.extend_from_slice(&self.arrows[j + 1..]);
        Some(Simplex { start: self.start, arrows })
    }
}

/// Nondegenerate simplices of `N C` up to dimension `cap`.
#[derive(Clone, Debug)]
pub struct Nerve {
    base: Arc<FinCategory>,
    simplices: Vec<Vec<Simplex>>,
    index: Vec<HashMap<Simplex, usize>>,
    cap: usize,
}

impl Nerve {
    pub fn base(&self) -> &Arc<FinCategory> {
        &self.base
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    /// `k`-simplices (empty above the cap or the dimension).
    pub fn simplices(&self, k: usize) -> &[Simplex] {
        self.simplices.get(k).map_or(&[], Vec::as_slice)
    }

    pub fn counts(&self) -> Vec<usize> {
        let mut c: Vec<usize> = self.simplices.iter().map(Vec::len).collect();
        while c.last() == Some(&0) {
            c.pop();
        }
        c
    }

    pub fn total(&self) -> usize {
        self.simplices.iter().map(Vec::len).sum()
    }

    /// Position of `s` among the simplices of its dimension.
    pub fn position(&self, s: &Simplex) -> Option<usize> {
        self.index.get(s.dim())?.get(s).copied()
    }

    /// Highest dimension with simplices, within the cap.
    pub fn top(&self) -> Option<usize> {
        self.simplices.iter().rposition(|v| !v.is_empty())
    }
}

/// Enumerates the nondegenerate simplices of `N C` through dimension `cap`.
pub fn nerve(c: &Arc<FinCategory>, cap: usize, limits: Limits) -> Result<Nerve> {
    let mut simplices: Vec<Vec<Simplex>> = vec![c.objects().map(Simplex::vertex).collect()];
    let mut total = simplices[0].len();
    let check = |total: usize| {
        if total > limits.max_simplices {
            Err(Error::Capacity { what: "nerve simplices".into(), needed: total, limit: limits.max_simplices })
        } else {
            Ok(())
        }
    };
    check(total)?;
    for _ in 0..cap {
        let prev = simplices.last().unwrap();
        let mut next = Vec::new();
        for s in prev {
            for &m in c.out_of(s.target(c)) {
                if !c.is_identity(m) {
                    let mut arrows = s.arrows.clone();
                    arrows.push(m);
                    next.push(Simplex { start: s.start, arrows });
                }
            }
            check(total + next.len())?;
        }
        if next.is_empty() {
            break;
        }
        total += next.len();
        simplices.push(next);
    }
    let index = simplices
        .iter()
        .map(|v| v.iter().enumerate().map(|(k, s)| (s.clone(), k)).collect())
        .collect();
    Ok(Nerve { base: c.clone(), simplices, index, cap })
}

/// Dimension of a nerve.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Dimension {
    /// The empty category.
    Empty,
    Finite(usize),
    /// Non-identity morphisms form a cycle, listed in order.
    Infinite { cycle: Vec<MorId> },
}

impl Dimension {
    pub fn finite(&self) -> Option<usize> {
        match self {
            Dimension::Finite(d) => Some(*d),
            _ => None,
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, Dimension::Infinite { .. })
    }

    /// Error naming the cycle, for callers that need finiteness.
    pub fn require_finite(&self, c: &FinCategory) -> Result<Option<usize>> {
        match self {
            Dimension::Empty => Ok(None),
            Dimension::Finite(d) => Ok(Some(*d)),
            Dimension::Infinite { cycle } => Err(Error::InfiniteDimension { cycle: cycle_string(c, cycle) }),
        }
    }
}

impl fmt::Display for Dimension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Dimension::Empty => write!(f, "-1"),
            Dimension::Finite(d) => write!(f, "{d}"),
            Dimension::Infinite { .. } => write!(f, "inf"),
        }
    }
}

pub(crate) fn cycle_string(c: &FinCategory, cycle: &[MorId]) -> String {
    cycle.iter().map(|&m| c.name(m)).collect::<Vec<_>>().join(", ")
}

/// Length of the longest string of composable non-identity morphisms.
pub fn nerve_dimension(c: &FinCategory) -> Dimension {
    if c.num_objects() == 0 {
        return Dimension::Empty;
    }
    if let Some(cycle) = find_cycle(c) {
        return Dimension::Infinite { cycle };
    }
    // Longest path in a DAG by memoized depth-first search.
    let n = c.num_objects();
    let mut longest: Vec<Option<usize>> = vec![None; n];
    fn visit(c: &FinCategory, x: ObjId, longest: &mut Vec<Option<usize>>) -> usize {
        if let Some(l) = longest[x] {
            return l;
        }
        let mut best = 0;
        for &m in c.out_of(x) {
            if !c.is_identity(m) {
                best = best.max(1 + visit(c, c.tgt(m), longest));
            }
        }
        longest[x] = Some(best);
        best
    }
    Dimension::Finite((0..n).map(|x| visit(c, x, &mut longest)).max().unwrap())
}

/// A cycle of non-identity morphisms, if any.
fn find_cycle(c: &FinCategory) -> Option<Vec<MorId>> {
    #[derive(Clone, Copy, PartialEq)]
    enum State {
        New,
        Open,
        Done,
    }
    let n = c.num_objects();
    let mut state = vec![State::New; n];
    // Iterative DFS; `stack` holds (object, next out-index), `path` the
    // morphisms used to reach the open objects.
    for root in 0..n {
        if state[root] != State::New {
            continue;
        }
        let mut stack = vec![(root, 0usize)];
        let mut path: Vec<MorId> = Vec::new();
        state[root] = State::Open;
        while let Some(&(x, k)) = stack.last() {
            let out = c.out_of(x);
            if k == out.len() {
                state[x] = State::Done;
                stack.pop();
                path.pop();
                continue;
            }
            let m = out[k];
            stack.last_mut().unwrap().1 += 1;
            if c.is_identity(m) {
                continue;
            }
            let y = c.tgt(m);
            match state[y] {
                State::Open => {
                    let pos = stack.iter().position(|&(z, _)| z == y).unwrap();
                    let mut cycle = path[pos..].to_vec();
                    cycle.push(m);
                    return Some(cycle);
                }
                State::New => {
                    state[y] = State::Open;
                    stack.push((y, 0));
                    path.push(m);
                }
                State::Done => {}
            }
        }
    }
    None
}

/// `deg(i) = dim N(C/ᵢ)` for every object.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeTable {
    pub degrees: Vec<Dimension>,
}

impl DegreeTable {
    pub fn get(&self, i: ObjId) -> &Dimension {
        &self.degrees[i]
    }

    /// All degrees as numbers, or the first infinite one as an error.
    pub fn finite(&self, c: &FinCategory) -> Result<Vec<usize>> {
        self.degrees
            .iter()
            .map(|d| d.require_finite(c).map(|x| x.expect("over categories are non-empty")))
            .collect()
    }
}

pub fn degree_table(c: &Arc<FinCategory>) -> Result<DegreeTable> {
    let degrees = c
        .objects()
        .map(|i| {
            let (over, _) = over_category(c, i)?;
            Ok(match nerve_dimension(&over) {
                Dimension::Infinite { .. } => {
                    // Report the cycle in C rather than in C/i.
                    Dimension::Infinite { cycle: find_cycle(c).expect("cycle in over category lifts") }
                }
                d => d,
            })
        })
        .collect::<Result<_>>()?;
    Ok(DegreeTable { degrees })
}

/// Outcome of [`is_directed_reedy`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReedyCheck {
    pub holds: bool,
    /// A non-identity morphism with `deg(src) ≥ deg(tgt)`.
    pub witness: Option<MorId>,
}

/// Whether every non-identity morphism strictly raises the degree. Errors
/// when some degree is infinite.
pub fn is_directed_reedy(c: &Arc<FinCategory>) -> Result<ReedyCheck> {
    let deg = degree_table(c)?.finite(c)?;
    let witness = c.non_identities().find(|&m| deg[c.src(m)] >= deg[c.tgt(m)]);
    Ok(ReedyCheck { holds: witness.is_none(), witness })
}

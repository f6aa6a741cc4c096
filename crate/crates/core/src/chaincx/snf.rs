//! Smith normal form over the integers.
//!
//! Two entry points:
//!
//! - [`smith_normal_form`] returns the full decomposition `U·A·V = D` with
//!   unimodular `U`, `V`. It is dense and meant for small matrices.
//! - [`invariant_factors`] returns only the nonzero diagonal of `D`. It first
//!   strips unit pivots from a sparse copy of the matrix (boundary matrices
//!   are mostly `±1`), then finishes the remaining block densely. This is
//!   what homology uses.
//!
//! Both run on checked `i64` first and redo the whole computation with
//! `BigInt` if any intermediate value overflows.

use std::collections::BTreeSet;
use std::fmt::Debug;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::matrix::{big_determinant, big_mul, is_unit, Matrix};

#[derive(Debug, Clone, Copy)]
struct Overflow;

/// Scalar ring used by the elimination routines.
trait Scalar: Clone + PartialEq + Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(x: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn is_unit(&self) -> bool;
    fn is_negative(&self) -> bool;
    fn abs_lt(&self, other: &Self) -> bool;
    fn neg(&self) -> Result<Self, Overflow>;
    /// Floor quotient.
    fn quot(&self, d: &Self) -> Result<Self, Overflow>;
    /// `self - q * b`
    fn sub_mul(&self, q: &Self, b: &Self) -> Result<Self, Overflow>;
    fn divides(&self, other: &Self) -> bool;
    fn gcd(&self, other: &Self) -> Self;
    fn lcm(&self, other: &Self) -> Result<Self, Overflow>;
    fn to_big(&self) -> BigInt;
}

impl Scalar for i64 {
    fn zero() -> Self {
        0
    }
    fn one() -> Self {
        1
    }
    fn from_i64(x: i64) -> Self {
        x
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn is_unit(&self) -> bool {
        *self == 1 || *self == -1
    }
    fn is_negative(&self) -> bool {
        *self < 0
    }
    fn abs_lt(&self, other: &Self) -> bool {
        self.unsigned_abs() < other.unsigned_abs()
    }
    fn neg(&self) -> Result<Self, Overflow> {
        self.checked_neg().ok_or(Overflow)
    }
    fn quot(&self, d: &Self) -> Result<Self, Overflow> {
        if *self == i64::MIN || *d == i64::MIN {
            return Err(Overflow);
        }
        Ok(Integer::div_floor(self, d))
    }
    fn sub_mul(&self, q: &Self, b: &Self) -> Result<Self, Overflow> {
        q.checked_mul(*b).and_then(|p| self.checked_sub(p)).ok_or(Overflow)
    }
    fn divides(&self, other: &Self) -> bool {
        if *self == 0 {
            *other == 0
        } else {
            other.checked_rem(*self).is_none_or(|r| r == 0)
        }
    }
    fn gcd(&self, other: &Self) -> Self {
        Integer::gcd(self, other)
    }
    fn lcm(&self, other: &Self) -> Result<Self, Overflow> {
        if *self == 0 || *other == 0 {
            return Ok(0);
        }
        let g = Integer::gcd(self, other);
        (self / g).checked_mul(*other).map(|x| x.abs()).ok_or(Overflow)
    }
    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl Scalar for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        num_traits::One::one()
    }
    fn from_i64(x: i64) -> Self {
        BigInt::from(x)
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_unit(&self) -> bool {
        num_traits::One::is_one(&Signed::abs(self))
    }
    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
    fn abs_lt(&self, other: &Self) -> bool {
        self.magnitude() < other.magnitude()
    }
    fn neg(&self) -> Result<Self, Overflow> {
        Ok(-self)
    }
    fn quot(&self, d: &Self) -> Result<Self, Overflow> {
        Ok(Integer::div_floor(self, d))
    }
    fn sub_mul(&self, q: &Self, b: &Self) -> Result<Self, Overflow> {
        Ok(self - q * b)
    }
    fn divides(&self, other: &Self) -> bool {
        if Zero::is_zero(self) {
            Zero::is_zero(other)
        } else {
            Zero::is_zero(&(other % self))
        }
    }
    fn gcd(&self, other: &Self) -> Self {
        Integer::gcd(self, other)
    }
    fn lcm(&self, other: &Self) -> Result<Self, Overflow> {
        Ok(Integer::lcm(self, other))
    }
    fn to_big(&self) -> BigInt {
        self.clone()
    }
}

/// Full Smith decomposition `U·A·V = D`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithForm {
    pub rows: usize,
    pub cols: usize,
    /// `rows × rows`, unimodular.
    pub u: Vec<Vec<BigInt>>,
    /// `cols × cols`, unimodular.
    pub v: Vec<Vec<BigInt>>,
    /// Diagonal of `D` (length `min(rows, cols)`), nonnegative, each entry
    /// dividing the next; zeros come last.
    pub diagonal: Vec<BigInt>,
}

impl SmithForm {
    pub fn rank(&self) -> usize {
        self.diagonal.iter().filter(|d| !Zero::is_zero(*d)).count()
    }

    /// Checks every postcondition against the input: `U·A·V = D` exactly,
    /// `det U = ±1`, `det V = ±1`, nonnegative diagonal with each entry
    /// dividing the next.
    pub fn verify(&self, a: &Matrix) -> Result<(), String> {
        if (self.rows, self.cols) != (a.rows(), a.cols()) {
            return Err("shape mismatch".into());
        }
        let a_big = to_rows::<BigInt>(a);
        let uav = big_mul(&big_mul(&self.u, &a_big, a.rows(), a.cols()), &self.v, a.cols(), a.cols());
        if uav != self.d_matrix() {
            return Err("U·A·V differs from D".into());
        }
        if !is_unit(&big_determinant(&self.u)) {
            return Err("U is not unimodular".into());
        }
        if !is_unit(&big_determinant(&self.v)) {
            return Err("V is not unimodular".into());
        }
        if self.diagonal.iter().any(Signed::is_negative) {
            return Err("negative diagonal entry".into());
        }
        for w in self.diagonal.windows(2) {
            if !Scalar::divides(&w[0], &w[1]) {
                return Err(format!("{} does not divide {}", w[0], w[1]));
            }
        }
        Ok(())
    }

    /// `D` as a dense big-integer matrix.
    pub fn d_matrix(&self) -> Vec<Vec<BigInt>> {
        let mut d = vec![vec![<BigInt as Zero>::zero(); self.cols]; self.rows];
        for (k, x) in self.diagonal.iter().enumerate() {
            d[k][k] = x.clone();
        }
        d
    }
}

/// Computes `U`, `D`, `V` with `U·A·V = D`.
pub fn smith_normal_form(a: &Matrix) -> SmithForm {
    match dense_smith::<i64>(to_rows::<i64>(a), a.rows(), a.cols(), true) {
        Ok(f) => f,
        Err(Overflow) => dense_smith::<BigInt>(to_rows::<BigInt>(a), a.rows(), a.cols(), true)
            .expect("big-integer elimination cannot overflow"),
    }
}

/// Nonzero invariant factors of `a` in divisibility order (units first).
/// Their count is the rank of `a`.
pub fn invariant_factors(a: &Matrix) -> Vec<BigInt> {
    match sparse_invariants::<i64>(a) {
        Ok(f) => f,
        Err(Overflow) => sparse_invariants::<BigInt>(a).expect("big-integer elimination cannot overflow"),
    }
}

/// Rank of `a` over the integers (equivalently over the rationals).
pub fn rank(a: &Matrix) -> usize {
    invariant_factors(a).len()
}

fn to_rows<T: Scalar>(a: &Matrix) -> Vec<Vec<T>> {
    (0..a.rows())
        .map(|i| a.row(i).iter().map(|&x| T::from_i64(x)).collect())
        .collect()
}

fn identity<T: Scalar>(n: usize) -> Vec<Vec<T>> {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { T::one() } else { T::zero() }).collect())
        .collect()
}

fn swap_cols<T>(m: &mut [Vec<T>], a: usize, b: usize) {
    if a != b {
        for row in m.iter_mut() {
            row.swap(a, b);
        }
    }
}

/// `row[dst] -= q * row[src]`
fn row_sub<T: Scalar>(m: &mut [Vec<T>], dst: usize, src: usize, q: &T) -> Result<(), Overflow> {
    let (s, d) = if src < dst {
        let (lo, hi) = m.split_at_mut(dst);
        (&lo[src], &mut hi[0])
    } else {
        let (lo, hi) = m.split_at_mut(src);
        (&hi[0], &mut lo[dst])
    };
    for (x, y) in d.iter_mut().zip(s.iter()) {
        if !y.is_zero() {
            *x = x.sub_mul(q, y)?;
        }
    }
    Ok(())
}

/// `col[dst] -= q * col[src]`
fn col_sub<T: Scalar>(m: &mut [Vec<T>], dst: usize, src: usize, q: &T) -> Result<(), Overflow> {
    for row in m.iter_mut() {
        if !row[src].is_zero() {
            row[dst] = row[dst].sub_mul(q, &row[src])?;
        }
    }
    Ok(())
}

fn negate_row<T: Scalar>(m: &mut [Vec<T>], r: usize) -> Result<(), Overflow> {
    for x in m[r].iter_mut() {
        *x = x.neg()?;
    }
    Ok(())
}

/// Position of the nonzero entry of least absolute value in `a[t.., t..]`.
fn min_pivot<T: Scalar>(a: &[Vec<T>], t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for (i, row) in a.iter().enumerate().skip(t) {
        for (j, x) in row.iter().enumerate().skip(t) {
            if x.is_zero() {
                continue;
            }
            if x.is_unit() {
                return Some((i, j));
            }
            if best.is_none_or(|(bi, bj)| x.abs_lt(&a[bi][bj])) {
                best = Some((i, j));
            }
        }
    }
    best
}

fn dense_smith<T: Scalar>(
    mut a: Vec<Vec<T>>,
    m: usize,
    n: usize,
    track: bool,
) -> Result<SmithForm, Overflow> {
    let mut u: Vec<Vec<T>> = if track { identity(m) } else { Vec::new() };
    let mut v: Vec<Vec<T>> = if track { identity(n) } else { Vec::new() };
    let k = m.min(n);
    let mut t = 0;
    while t < k {
        let Some((pi, pj)) = min_pivot(&a, t) else { break };
        a.swap(t, pi);
        swap_cols(&mut a, t, pj);
        if track {
            u.swap(t, pi);
            swap_cols(&mut v, t, pj);
        }
        loop {
            let mut dirty = false;
            for i in t + 1..m {
                if !a[i][t].is_zero() {
                    let q = a[i][t].quot(&a[t][t])?;
                    row_sub(&mut a, i, t, &q)?;
                    if track {
                        row_sub(&mut u, i, t, &q)?;
                    }
                    dirty |= !a[i][t].is_zero();
                }
            }
            for j in t + 1..n {
                if !a[t][j].is_zero() {
                    let q = a[t][j].quot(&a[t][t])?;
                    col_sub(&mut a, j, t, &q)?;
                    if track {
                        col_sub(&mut v, j, t, &q)?;
                    }
                    dirty |= !a[t][j].is_zero();
                }
            }
            if dirty {
                // A remainder smaller than the pivot is left in row or column t.
                let mut best = (t, t);
                for i in t + 1..m {
                    if !a[i][t].is_zero() && a[i][t].abs_lt(&a[best.0][best.1]) {
                        best = (i, t);
                    }
                }
                for j in t + 1..n {
                    if !a[t][j].is_zero() && a[t][j].abs_lt(&a[best.0][best.1]) {
                        best = (t, j);
                    }
                }
                let (bi, bj) = best;
                a.swap(t, bi);
                swap_cols(&mut a, t, bj);
                if track {
                    u.swap(t, bi);
                    swap_cols(&mut v, t, bj);
                }
                continue;
            }
            let bad = (t + 1..m).find_map(|i| {
                (t + 1..n).find(|&j| !a[t][t].divides(&a[i][j])).map(|_| i)
            });
            match bad {
                Some(i) => {
                    // row t += row i
                    let minus_one = T::one().neg()?;
                    row_sub(&mut a, t, i, &minus_one)?;
                    if track {
                        row_sub(&mut u, t, i, &minus_one)?;
                    }
                }
                None => break,
            }
        }
        if a[t][t].is_negative() {
            negate_row(&mut a, t)?;
            if track {
                negate_row(&mut u, t)?;
            }
        }
        t += 1;
    }
    let big = |m: Vec<Vec<T>>| -> Vec<Vec<BigInt>> {
        m.into_iter().map(|r| r.into_iter().map(|x| x.to_big()).collect()).collect()
    };
    let diagonal = (0..k).map(|i| a[i][i].to_big()).collect();
    Ok(SmithForm { rows: m, cols: n, u: big(u), v: big(v), diagonal })
}

/// Normalizes a list of nonzero diagonal entries into divisibility order.
fn normalize_diagonal<T: Scalar>(mut d: Vec<T>) -> Result<Vec<T>, Overflow> {
    for x in d.iter_mut() {
        if x.is_negative() {
            *x = x.neg()?;
        }
    }
    let n = d.len();
    for i in 0..n {
        for j in i + 1..n {
            if !d[i].divides(&d[j]) {
                let g = d[i].gcd(&d[j]);
                let l = d[i].lcm(&d[j])?;
                d[i] = g;
                d[j] = l;
            }
        }
    }
    Ok(d)
}

/// Sparse row store used by unit-pivot stripping.
struct SparseRows<T> {
    rows: Vec<Vec<(usize, T)>>,
    col_rows: Vec<BTreeSet<usize>>,
}

impl<T: Scalar> SparseRows<T> {
    fn new(a: &Matrix) -> Self {
        let mut rows = Vec::with_capacity(a.rows());
        let mut col_rows = vec![BTreeSet::new(); a.cols()];
        for i in 0..a.rows() {
            let mut r = Vec::new();
            for (j, &x) in a.row(i).iter().enumerate() {
                if x != 0 {
                    r.push((j, T::from_i64(x)));
                    col_rows[j].insert(i);
                }
            }
            rows.push(r);
        }
        SparseRows { rows, col_rows }
    }

    fn entry(&self, i: usize, j: usize) -> Option<&T> {
        self.rows[i]
            .binary_search_by_key(&j, |(c, _)| *c)
            .ok()
            .map(|k| &self.rows[i][k].1)
    }

    /// `row[dst] -= q * row[src]`, keeping the column index in sync.
    fn row_sub(&mut self, dst: usize, src: usize, q: &T) -> Result<(), Overflow> {
        let a = std::mem::take(&mut self.rows[dst]);
        let b = &self.rows[src];
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut x, mut y) = (0, 0);
        while x < a.len() || y < b.len() {
            let ca = a.get(x).map(|e| e.0).unwrap_or(usize::MAX);
            let cb = b.get(y).map(|e| e.0).unwrap_or(usize::MAX);
            if ca < cb {
                out.push(a[x].clone());
                x += 1;
            } else if cb < ca {
                let v = T::zero().sub_mul(q, &b[y].1)?;
                self.col_rows[cb].insert(dst);
                out.push((cb, v));
                y += 1;
            } else {
                let v = a[x].1.sub_mul(q, &b[y].1)?;
                if v.is_zero() {
                    self.col_rows[ca].remove(&dst);
                } else {
                    out.push((ca, v));
                }
                x += 1;
                y += 1;
            }
        }
        self.rows[dst] = out;
        Ok(())
    }

    fn remove_row(&mut self, i: usize) {
        for (c, _) in std::mem::take(&mut self.rows[i]) {
            self.col_rows[c].remove(&i);
        }
    }
}

fn sparse_invariants<T: Scalar>(a: &Matrix) -> Result<Vec<BigInt>, Overflow> {
    let mut s = SparseRows::<T>::new(a);
    let mut units = 0usize;
    loop {
        let mut progress = false;
        for j in 0..a.cols() {
            // Among rows with a unit in column j, pick the shortest one.
            let pivot = s.col_rows[j]
                .iter()
                .copied()
                .filter(|&i| s.entry(i, j).is_some_and(|x| x.is_unit()))
                .min_by_key(|&i| s.rows[i].len());
            let Some(p) = pivot else { continue };
            let unit = s.entry(p, j).cloned().expect("pivot entry");
            let others: Vec<usize> = s.col_rows[j].iter().copied().filter(|&i| i != p).collect();
            for i in others {
                let c = s.entry(i, j).cloned().expect("column index in sync");
                // unit is its own inverse, so c·unit clears the entry
                let q = T::zero().sub_mul(&c, &unit)?.neg()?;
                s.row_sub(i, p, &q)?;
            }
            // Column j now has a single entry; column operations clear row p
            // without touching any other row.
            s.remove_row(p);
            units += 1;
            progress = true;
        }
        if !progress {
            break;
        }
    }
    let live_rows: Vec<usize> = (0..a.rows()).filter(|&i| !s.rows[i].is_empty()).collect();
    let mut live_cols: Vec<usize> = s.rows.iter().flat_map(|r| r.iter().map(|e| e.0)).collect();
    live_cols.sort_unstable();
    live_cols.dedup();
    let mut rest: Vec<BigInt> = Vec::new();
    if !live_rows.is_empty() {
        let mut dense = vec![vec![T::zero(); live_cols.len()]; live_rows.len()];
        for (r, &i) in live_rows.iter().enumerate() {
            for (c, x) in &s.rows[i] {
                let k = live_cols.binary_search(c).expect("live column");
                dense[r][k] = x.clone();
            }
        }
        let f = dense_smith::<T>(dense, live_rows.len(), live_cols.len(), false)?;
        rest = f.diagonal.into_iter().filter(|d| !Zero::is_zero(d)).collect();
    }
    let rest: Vec<BigInt> = normalize_diagonal(rest).map_err(|_| Overflow)?;
    let mut out = vec![<BigInt as num_traits::One>::one(); units];
    out.extend(rest);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big_rows(a: &Matrix) -> Vec<Vec<BigInt>> {
        to_rows::<BigInt>(a)
    }

    fn check(a: &Matrix) -> SmithForm {
        let f = smith_normal_form(a);
        let uav = big_mul(&big_mul(&f.u, &big_rows(a), a.rows(), a.cols()), &f.v, a.cols(), a.cols());
        assert_eq!(uav, f.d_matrix(), "U·A·V != D for {a:?}");
        assert!(is_unit(&big_determinant(&f.u)));
        assert!(is_unit(&big_determinant(&f.v)));
        for w in f.diagonal.windows(2) {
            assert!(Scalar::divides(&w[0], &w[1]), "divisibility chain broken: {:?}", f.diagonal);
        }
        assert!(f.diagonal.iter().all(|d| !Signed::is_negative(d)));
        f.verify(a).unwrap();
        f
    }

    fn diag(f: &SmithForm) -> Vec<i64> {
        f.diagonal.iter().map(|d| i64::try_from(d).unwrap()).collect()
    }

    #[test]
    fn zero_and_identity() {
        assert_eq!(diag(&check(&Matrix::zeros(3, 2))), vec![0, 0]);
        assert_eq!(diag(&check(&Matrix::identity(3))), vec![1, 1, 1]);
        assert_eq!(diag(&check(&Matrix::zeros(0, 4))), Vec::<i64>::new());
    }

    #[test]
    fn two_by_two_minor_gcd_example() {
        // gcd of entries is 2, gcd of 2x2 minors is |2*8-4*6| = 8, so 2 and 8/2.
        let a = Matrix::from_rows(&[vec![2, 4], vec![6, 8]], 2);
        assert_eq!(diag(&check(&a)), vec![2, 4]);
        assert_eq!(invariant_factors(&a), vec![BigInt::from(2), BigInt::from(4)]);
    }

    #[test]
    fn coprime_diagonal_is_normalized() {
        let a = Matrix::from_rows(&[vec![2, 0], vec![0, 3]], 2);
        assert_eq!(diag(&check(&a)), vec![1, 6]);
        assert_eq!(invariant_factors(&a), vec![BigInt::from(1), BigInt::from(6)]);
    }

    #[test]
    fn sparse_path_agrees_on_boundary_like_matrix() {
        // boundary of a triangle's edges and a torsion block
        let a = Matrix::from_rows(
            &[
                vec![-1, -1, 0, 0],
                vec![1, 0, -1, 0],
                vec![0, 1, 1, 0],
                vec![0, 0, 0, 3],
            ],
            4,
        );
        let dense: Vec<BigInt> = check(&a).diagonal.into_iter().filter(|d| !Zero::is_zero(d)).collect();
        assert_eq!(invariant_factors(&a), dense);
        assert_eq!(rank(&a), 3);
    }

    #[test]
    fn overflow_falls_back_to_big_integers() {
        let big = i64::MAX / 2;
        let a = Matrix::from_rows(&[vec![big, big - 1], vec![big - 2, big - 7]], 2);
        let f = check(&a);
        let det = a.determinant();
        assert_eq!(&f.diagonal[0] * &f.diagonal[1], det.abs());
        let inv = invariant_factors(&a);
        assert_eq!(inv.iter().product::<BigInt>(), det.abs());
    }
}

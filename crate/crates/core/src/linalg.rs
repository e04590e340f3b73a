//! Exact linear algebra over `Q(q)`.
//!
//! Matrices are stored densely with [`RatFunc`] entries. Elimination clears
//! denominators row by row and then works in `Z[q, q^-1]`: `det` uses Bareiss
//! elimination, `rank` and span membership use one-step fraction-free
//! elimination followed by division of each updated row by its content. Every
//! division performed during elimination is checked to be exact.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Debug;
use std::hash::Hash;

use serde::Serialize;
use thiserror::Error;

use crate::scalar::{LaurentPoly, RatFunc};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("vector has support on a label missing from the basis: {0}")]
    MissingBasisLabel(String),
    #[error("target is not in the span of the family")]
    NotInSpan,
    #[error("matrix must be square, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
}

/// Anything with a finite support of labelled coefficients.
pub trait SparseVector {
    type Label: Clone + Eq + Hash + Debug;
    fn sparse_entries(&self) -> Vec<(Self::Label, RatFunc)>;
}

impl<L: Clone + Eq + Hash + Debug> SparseVector for Vec<(L, RatFunc)> {
    type Label = L;
    fn sparse_entries(&self) -> Vec<(L, RatFunc)> {
        self.clone()
    }
}

/// An ordered list of distinct labels with position lookup.
#[derive(Clone, Debug)]
pub struct BasisIndex<L> {
    labels: Vec<L>,
    positions: HashMap<L, usize>,
}

impl<L: Clone + Eq + Hash + Debug> BasisIndex<L> {
    pub fn new(labels: Vec<L>) -> Self {
        let mut positions = HashMap::with_capacity(labels.len());
        let mut uniq = Vec::with_capacity(labels.len());
        for l in labels {
            if !positions.contains_key(&l) {
                positions.insert(l.clone(), uniq.len());
                uniq.push(l);
            }
        }
        BasisIndex {
            labels: uniq,
            positions,
        }
    }

    /// The union of the supports of `vectors`, sorted by `order`.
    pub fn from_support<V, F>(vectors: &[V], order: F) -> Self
    where
        V: SparseVector<Label = L>,
        F: FnMut(&L, &L) -> std::cmp::Ordering,
    {
        let mut seen = std::collections::HashSet::new();
        let mut labels = Vec::new();
        for v in vectors {
            for (l, _) in v.sparse_entries() {
                if seen.insert(l.clone()) {
                    labels.push(l);
                }
            }
        }
        labels.sort_by(order);
        Self::new(labels)
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[L] {
        &self.labels
    }

    pub fn position(&self, l: &L) -> Option<usize> {
        self.positions.get(l).copied()
    }

    fn positions_of<V: SparseVector<Label = L>>(&self, v: &V) -> Result<Vec<(usize, RatFunc)>, LinalgError> {
        let mut out = Vec::new();
        for (l, c) in v.sparse_entries() {
            let p = self
                .position(&l)
                .ok_or_else(|| LinalgError::MissingBasisLabel(format!("{l:?}")))?;
            if !c.is_zero() {
                out.push((p, c));
            }
        }
        Ok(out)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<RatFunc>,
}

impl ExactMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ExactMatrix {
            rows,
            cols,
            entries: vec![RatFunc::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, RatFunc::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<RatFunc>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        ExactMatrix {
            rows: r,
            cols: c,
            entries: rows.into_iter().flatten().collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &RatFunc {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: RatFunc) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[RatFunc] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &ExactMatrix) -> ExactMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let v = out.get(i, j) + &(a * b);
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    fn sparse_rows(&self) -> Vec<Vec<(usize, RatFunc)>> {
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(j, c)| (j, c.clone()))
                    .collect()
            })
            .collect()
    }
}

impl Serialize for ExactMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr<'a> {
            rows: usize,
            cols: usize,
            entries: Vec<&'a [RatFunc]>,
        }
        Repr {
            rows: self.rows,
            cols: self.cols,
            entries: (0..self.rows).map(|i| self.row(i)).collect(),
        }
        .serialize(s)
    }
}

/// Row `v`, column `b` holds the coefficient of basis label `b` in vector `v`.
pub fn expansion_matrix<V: SparseVector>(
    vectors: &[V],
    basis: &BasisIndex<V::Label>,
) -> Result<ExactMatrix, LinalgError> {
    let mut m = ExactMatrix::zeros(vectors.len(), basis.len());
    for (i, v) in vectors.iter().enumerate() {
        for (j, c) in basis.positions_of(v)? {
            let sum = m.get(i, j) + &c;
            m.set(i, j, sum);
        }
    }
    Ok(m)
}

/// Outcome of a rank computation.
#[derive(Clone, Debug, Serialize)]
pub struct Elimination {
    pub rank: usize,
    /// Pivot entry of each pivot row at the moment it was chosen (row content removed).
    pub pivots: Vec<RatFunc>,
    pub pivot_columns: Vec<usize>,
    /// Input row index of each pivot row.
    pub pivot_rows: Vec<usize>,
}

type PolyRow = Vec<(usize, LaurentPoly)>;

/// Multiplies a rational row by the lcm of its denominators (and a power of `q`)
/// so every entry lies in `Z[q]`; the result is divided by its content.
fn clear_row(row: &[(usize, RatFunc)]) -> PolyRow {
    let mut lcm = LaurentPoly::one();
    for (_, c) in row {
        let d = c.denom();
        if d.is_one() {
            continue;
        }
        let g = lcm.gcd(d);
        lcm = &lcm * &d.div_exact(&g).expect("gcd divides");
    }
    let mut out: PolyRow = row
        .iter()
        .map(|(j, c)| {
            let scaled = c.numer() * &lcm.div_exact(c.denom()).expect("lcm multiple");
            (*j, scaled)
        })
        .collect();
    remove_content(&mut out);
    out
}

/// Divides the row by the gcd of its entries and normalizes the lowest `q`-power to zero.
fn remove_content(row: &mut PolyRow) {
    if row.is_empty() {
        return;
    }
    let min_shift = row.iter().map(|(_, p)| p.shift()).min().unwrap();
    let mut order: Vec<usize> = (0..row.len()).collect();
    order.sort_by(|&a, &b| row[a].1.size_cmp(&row[b].1));
    let mut g = row[order[0]].1.gcd(&LaurentPoly::zero());
    for &k in &order[1..] {
        if g.is_one() {
            break;
        }
        g = g.gcd(&row[k].1);
    }
    if g.is_one() && min_shift == 0 {
        return;
    }
    let divisor = g.mul_q_pow(min_shift);
    for (_, p) in row.iter_mut() {
        *p = p.div_exact(&divisor).expect("content divides every entry");
    }
}

/// `(a/g) * r - (b/g) * p` where `a`, `b` are the entries of `p`, `r` in the pivot column.
fn combine(r: &PolyRow, p: &PolyRow, col: usize) -> PolyRow {
    let a = &p[0].1;
    let b = &r[0].1;
    debug_assert_eq!(p[0].0, col);
    debug_assert_eq!(r[0].0, col);
    let g = a.gcd(b);
    let a = a.div_exact(&g).expect("gcd divides pivot");
    let b = b.div_exact(&g).expect("gcd divides entry");
    let mut out: PolyRow = Vec::with_capacity(r.len() + p.len());
    let (mut i, mut j) = (1, 1);
    while i < r.len() || j < p.len() {
        let ci = r.get(i).map_or(usize::MAX, |e| e.0);
        let cj = p.get(j).map_or(usize::MAX, |e| e.0);
        if ci < cj {
            out.push((ci, &a * &r[i].1));
            i += 1;
        } else if cj < ci {
            out.push((cj, -(&b * &p[j].1)));
            j += 1;
        } else {
            let v = &(&a * &r[i].1) - &(&b * &p[j].1);
            if !v.is_zero() {
                out.push((ci, v));
            }
            i += 1;
            j += 1;
        }
    }
    remove_content(&mut out);
    out
}

fn row_size(r: &PolyRow) -> (usize, usize, usize) {
    (r[0].1.width(), r[0].1.term_count(), r.len())
}

/// Forward elimination on sparse polynomial rows, processing columns in index order.
/// Returns the pivot rows (echelon form) with their input indices.
fn eliminate(rows: Vec<PolyRow>, pivot_limit: usize) -> Vec<(usize, PolyRow)> {
    let mut buckets: BTreeMap<usize, Vec<(usize, PolyRow)>> = BTreeMap::new();
    for (i, r) in rows.into_iter().enumerate() {
        if let Some(&(c, _)) = r.first() {
            if c < pivot_limit {
                buckets.entry(c).or_default().push((i, r));
            }
        }
    }
    let mut pivots = Vec::new();
    while let Some((col, mut group)) = buckets.pop_first() {
        let best = (0..group.len())
            .min_by(|&x, &y| row_size(&group[x].1).cmp(&row_size(&group[y].1)))
            .unwrap();
        let (pidx, prow) = group.swap_remove(best);
        for (idx, r) in group {
            let reduced = combine(&r, &prow, col);
            if let Some(&(c, _)) = reduced.first() {
                if c < pivot_limit {
                    buckets.entry(c).or_default().push((idx, reduced));
                }
            }
        }
        pivots.push((pidx, prow));
    }
    pivots
}

/// Exact rank with pivot data, eliminating columns in their index order.
pub fn rank_with_pivots(m: &ExactMatrix) -> Elimination {
    let rows: Vec<PolyRow> = m.sparse_rows().iter().map(|r| clear_row(r)).collect();
    let pivots = eliminate(rows, usize::MAX);
    Elimination {
        rank: pivots.len(),
        pivots: pivots.iter().map(|(_, r)| RatFunc::from_laurent(r[0].1.clone())).collect(),
        pivot_columns: pivots.iter().map(|(_, r)| r[0].0).collect(),
        pivot_rows: pivots.iter().map(|(i, _)| *i).collect(),
    }
}

pub fn rank(m: &ExactMatrix) -> usize {
    rank_with_pivots(m).rank
}

/// Rank of a family of sparse vectors, columns ordered by `basis`.
pub fn rank_of<V: SparseVector>(vectors: &[V], basis: &BasisIndex<V::Label>) -> Result<Elimination, LinalgError> {
    let rows: Result<Vec<PolyRow>, LinalgError> = vectors
        .iter()
        .map(|v| basis.positions_of(v).map(|mut r| {
            r.sort_by_key(|e| e.0);
            clear_row(&r)
        }))
        .collect();
    let pivots = eliminate(rows?, usize::MAX);
    Ok(Elimination {
        rank: pivots.len(),
        pivots: pivots.iter().map(|(_, r)| RatFunc::from_laurent(r[0].1.clone())).collect(),
        pivot_columns: pivots.iter().map(|(_, r)| r[0].0).collect(),
        pivot_rows: pivots.iter().map(|(i, _)| *i).collect(),
    })
}

/// Determinant by Bareiss elimination.
pub fn det(m: &ExactMatrix) -> Result<RatFunc, LinalgError> {
    if m.rows != m.cols {
        return Err(LinalgError::NotSquare {
            rows: m.rows,
            cols: m.cols,
        });
    }
    let n = m.rows;
    if n == 0 {
        return Ok(RatFunc::one());
    }
    // clear denominators row by row: det(M) = det(M') / prod(scale_i)
    let mut scale = RatFunc::one();
    let mut a: Vec<Vec<LaurentPoly>> = Vec::with_capacity(n);
    for i in 0..n {
        let mut lcm = LaurentPoly::one();
        for c in m.row(i) {
            let d = c.denom();
            if !d.is_one() {
                let g = lcm.gcd(d);
                lcm = &lcm * &d.div_exact(&g).expect("gcd divides");
            }
        }
        scale = scale * RatFunc::from_laurent(lcm.clone());
        a.push(
            m.row(i)
                .iter()
                .map(|c| c.numer() * &lcm.div_exact(c.denom()).expect("lcm multiple"))
                .collect(),
        );
    }
    let mut prev = LaurentPoly::one();
    let mut negate = false;
    for k in 0..n {
        let pivot = (k..n)
            .filter(|&i| !a[i][k].is_zero())
            .min_by(|&x, &y| a[x][k].size_cmp(&a[y][k]));
        let Some(p) = pivot else {
            return Ok(RatFunc::zero());
        };
        if p != k {
            a.swap(p, k);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &(&a[k][k] * &a[i][j]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = v
                    .div_exact(&prev)
                    .expect("Bareiss step must divide exactly");
            }
            a[i][k] = LaurentPoly::zero();
        }
        prev = a[k][k].clone();
    }
    let mut d = RatFunc::from_laurent(a[n - 1][n - 1].clone());
    if negate {
        d = -d;
    }
    Ok(d / scale)
}

/// Coordinates of `target` in terms of `family`, or [`LinalgError::NotInSpan`].
pub fn in_span<V: SparseVector>(
    target: &V,
    family: &[V],
    basis: &BasisIndex<V::Label>,
) -> Result<Vec<RatFunc>, LinalgError> {
    let n = basis.len();
    let k = family.len();
    // augmented rows [v | e_i | s]; invariant: x = sum_j y_j v_j + s * target
    let mut rows = Vec::with_capacity(k);
    for (i, v) in family.iter().enumerate() {
        let mut r = basis.positions_of(v)?;
        r.sort_by_key(|e| e.0);
        r.push((n + i, RatFunc::one()));
        rows.push(clear_row(&r));
    }
    let pivots = eliminate(rows, n);
    let mut by_col: HashMap<usize, PolyRow> = HashMap::new();
    for (_, r) in pivots {
        by_col.insert(r[0].0, r);
    }
    let mut t = basis.positions_of(target)?;
    t.sort_by_key(|e| e.0);
    t.push((n + k, RatFunc::one()));
    let mut t = clear_row(&t);
    while let Some(&(col, _)) = t.first() {
        if col >= n {
            break;
        }
        let Some(p) = by_col.get(&col) else {
            return Err(LinalgError::NotInSpan);
        };
        t = combine(&t, p, col);
    }
    let s = t
        .iter()
        .find(|e| e.0 == n + k)
        .map(|e| RatFunc::from_laurent(e.1.clone()))
        .expect("target multiplier stays nonzero");
    let mut coords = vec![RatFunc::zero(); k];
    for (col, v) in &t {
        if *col >= n && *col < n + k {
            coords[col - n] = -(RatFunc::from_laurent(v.clone()) / s.clone());
        }
    }
    Ok(coords)
}

/// Solves `M x = b` for square invertible `M`; `None` when the system is inconsistent.
pub fn solve(m: &ExactMatrix, b: &[RatFunc]) -> Option<Vec<RatFunc>> {
    assert_eq!(m.rows, b.len());
    // columns of M are the family, b is the target
    let cols: Vec<Vec<(usize, RatFunc)>> = (0..m.cols)
        .map(|j| {
            (0..m.rows)
                .filter(|&i| !m.get(i, j).is_zero())
                .map(|i| (i, m.get(i, j).clone()))
                .collect()
        })
        .collect();
    let target: Vec<(usize, RatFunc)> = b
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| (i, c.clone()))
        .collect();
    let basis = BasisIndex::new((0..m.rows).collect());
    in_span(&target, &cols, &basis).ok()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn r(s: &str) -> RatFunc {
        s.parse().unwrap()
    }

    fn mat(rows: &[&[&str]]) -> ExactMatrix {
        ExactMatrix::from_rows(rows.iter().map(|row| row.iter().map(|s| r(s)).collect()).collect())
    }

    fn random_ratfunc(rng: &mut ChaCha8Rng) -> RatFunc {
        let num = LaurentPoly::from_i64_coeffs(rng.gen_range(-2..=2), &[rng.gen_range(-3..=3), rng.gen_range(-3..=3)]);
        let den = LaurentPoly::from_i64_coeffs(0, &[rng.gen_range(1..=3), rng.gen_range(0..=2)]);
        RatFunc::ratio(num, den)
    }

    #[test]
    fn expansion_examples() {
        let basis = BasisIndex::new(vec!["A", "B", "C"]);
        let vs: Vec<Vec<(&str, RatFunc)>> = ["A", "B", "C"].iter().map(|l| vec![(*l, RatFunc::one())]).collect();
        assert_eq!(expansion_matrix(&vs, &basis).unwrap(), ExactMatrix::identity(3));
        let basis = BasisIndex::new(vec!["AB", "BA"]);
        let vs = vec![
            vec![("AB", RatFunc::one()), ("BA", RatFunc::one())],
            vec![("AB", RatFunc::one()), ("BA", RatFunc::from_i64(-1))],
        ];
        assert_eq!(expansion_matrix(&vs, &basis).unwrap(), mat(&[&["1", "1"], &["1", "-1"]]));
        let bad = vec![vec![("CC", RatFunc::one())]];
        assert!(matches!(expansion_matrix(&bad, &basis), Err(LinalgError::MissingBasisLabel(_))));
    }

    #[test]
    fn det_and_rank_examples() {
        assert!(det(&mat(&[&["q", "1"], &["1", "q^-1"]])).unwrap().is_zero());
        assert_eq!(rank(&ExactMatrix::identity(3)), 3);
        assert_eq!(det(&mat(&[&["q^2", "0"], &["5", "q^-2"]])).unwrap(), RatFunc::one());
        assert_eq!(rank(&mat(&[&["q", "1"], &["1", "q^-1"]])), 1);
        assert!(matches!(det(&mat(&[&["1", "2"]])), Err(LinalgError::NotSquare { .. })));
    }

    #[test]
    fn span_examples() {
        let basis = BasisIndex::new(vec!["A", "B", "AB"]);
        let fam = vec![vec![("A", RatFunc::one())], vec![("B", RatFunc::one())]];
        let c = in_span(&vec![("A", RatFunc::one())], &fam, &basis).unwrap();
        assert_eq!(c, vec![RatFunc::one(), RatFunc::zero()]);
        assert_eq!(in_span(&vec![("AB", RatFunc::one())], &fam, &basis), Err(LinalgError::NotInSpan));
    }

    #[test]
    fn det_multiplicative() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let mut gen = || ExactMatrix::from_rows((0..3).map(|_| (0..3).map(|_| random_ratfunc(&mut rng)).collect()).collect());
            let a = gen();
            let b = gen();
            assert_eq!(det(&a.mul(&b)).unwrap(), det(&a).unwrap() * det(&b).unwrap());
        }
    }

    #[test]
    fn rank_equals_transpose_rank_and_family_in_own_span() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..30 {
            let rows = rng.gen_range(1..5);
            let cols = rng.gen_range(1..5);
            let mut m = ExactMatrix::from_rows((0..rows).map(|_| (0..cols).map(|_| {
                if rng.gen_bool(0.4) { RatFunc::zero() } else { random_ratfunc(&mut rng) }
            }).collect()).collect());
            if rows > 1 {
                // plant a dependent row
                let combo: Vec<RatFunc> = (0..cols).map(|j| m.get(0, j) * &r("q+2") ).collect();
                for (j, v) in combo.into_iter().enumerate() {
                    m.set(rows - 1, j, v);
                }
            }
            assert_eq!(rank(&m), rank(&m.transpose()));
            let basis = BasisIndex::new((0..cols).collect::<Vec<_>>());
            let fam: Vec<Vec<(usize, RatFunc)>> = m.sparse_rows();
            for (i, v) in fam.iter().enumerate() {
                let c = in_span(v, &fam, &basis).unwrap();
                // reconstruct
                let mut acc = vec![RatFunc::zero(); cols];
                for (k, ck) in c.iter().enumerate() {
                    for (j, x) in &fam[k] {
                        acc[*j] = &acc[*j] + &(ck * x);
                    }
                }
                let expect: Vec<RatFunc> = (0..cols).map(|j| m.get(i, j).clone()).collect();
                assert_eq!(acc, expect);
            }
        }
    }

    #[test]
    fn solve_square() {
        let m = mat(&[&["q", "1"], &["1", "q"]]);
        let x = solve(&m, &[r("1"), r("0")]).unwrap();
        assert_eq!(x[0], r("q/(q^2-1)"));
        assert_eq!(x[1], r("-1/(q^2-1)"));
    }
}

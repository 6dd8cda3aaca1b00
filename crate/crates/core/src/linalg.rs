//! Exact sparse linear algebra over ℚ.
//!
//! Rows are cleared of denominators and eliminated with integer
//! combinations (`a·r − b·p`, then divided by the row content), so no
//! fractions appear during the forward pass. Back-substitution to reduced
//! echelon form happens once, in rationals.
//!
//! Pivot columns are always taken left to right. The reduced row echelon
//! form is therefore canonical, and so are the kernel basis and the
//! particular solutions derived from it: they depend on the matrix only,
//! never on the order rows were fed in.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::rational::Q;

/// A sparse vector: index → nonzero rational.
pub type SparseVec = BTreeMap<usize, Q>;

/// Exact sparse matrix with no stored zeros.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SparseMatrix {
    n_rows: usize,
    n_cols: usize,
    entries: BTreeMap<(usize, usize), Q>,
}

impl SparseMatrix {
    pub fn zeros(n_rows: usize, n_cols: usize) -> Self {
        SparseMatrix {
            n_rows,
            n_cols,
            entries: BTreeMap::new(),
        }
    }

    pub fn from_dense(rows: &[Vec<i64>]) -> Self {
        let n_cols = rows.first().map_or(0, Vec::len);
        let mut m = Self::zeros(rows.len(), n_cols);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), n_cols, "ragged dense matrix");
            for (j, &x) in row.iter().enumerate() {
                m.add(i, j, &Q::from_integer(BigInt::from(x)));
            }
        }
        m
    }

    pub fn n_rows(&self) -> usize {
        self.n_rows
    }

    pub fn n_cols(&self) -> usize {
        self.n_cols
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, row: usize, col: usize) -> Q {
        self.entries.get(&(row, col)).cloned().unwrap_or_else(Q::zero)
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &Q)> {
        self.entries.iter().map(|(&(r, c), x)| (r, c, x))
    }

    /// Adds `x` to entry `(row, col)`, dropping the entry if it cancels.
    pub fn add(&mut self, row: usize, col: usize, x: &Q) {
        assert!(row < self.n_rows && col < self.n_cols, "entry ({row}, {col}) out of range");
        if x.is_zero() {
            return;
        }
        let e = self.entries.entry((row, col)).or_insert_with(Q::zero);
        *e += x;
        if e.is_zero() {
            self.entries.remove(&(row, col));
        }
    }

    pub fn rows(&self) -> Vec<SparseVec> {
        let mut rows = vec![SparseVec::new(); self.n_rows];
        for (&(r, c), x) in &self.entries {
            rows[r].insert(c, x.clone());
        }
        rows
    }

    pub fn columns(&self) -> Vec<SparseVec> {
        let mut cols = vec![SparseVec::new(); self.n_cols];
        for (&(r, c), x) in &self.entries {
            cols[c].insert(r, x.clone());
        }
        cols
    }

    pub fn mul_vec(&self, v: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (&(r, c), x) in &self.entries {
            if let Some(y) = v.get(&c) {
                let e = out.entry(r).or_insert_with(Q::zero);
                *e += x * y;
            }
        }
        out.retain(|_, x| !x.is_zero());
        out
    }

    /// Same matrix with columns reordered: column `j` of the result is column
    /// `perm[j]` of `self`.
    pub fn permute_columns(&self, perm: &[usize]) -> SparseMatrix {
        assert_eq!(perm.len(), self.n_cols);
        let mut inverse = vec![0; perm.len()];
        for (j, &p) in perm.iter().enumerate() {
            inverse[p] = j;
        }
        let mut m = Self::zeros(self.n_rows, self.n_cols);
        for (&(r, c), x) in &self.entries {
            m.entries.insert((r, inverse[c]), x.clone());
        }
        m
    }

    /// Same matrix with rows reordered: row `i` of the result is row
    /// `perm[i]` of `self`.
    pub fn permute_rows(&self, perm: &[usize]) -> SparseMatrix {
        assert_eq!(perm.len(), self.n_rows);
        let mut inverse = vec![0; perm.len()];
        for (i, &p) in perm.iter().enumerate() {
            inverse[p] = i;
        }
        let mut m = Self::zeros(self.n_rows, self.n_cols);
        for (&(r, c), x) in &self.entries {
            m.entries.insert((inverse[r], c), x.clone());
        }
        m
    }

    pub fn rank(&self) -> usize {
        let mut e = Echelon::new();
        for row in sparse_first(self.rows()) {
            e.insert(IntRow::from_rational(&row));
        }
        e.len()
    }
}

/// Rows sorted sparsest first; the order only affects fill-in, not results.
fn sparse_first(rows: Vec<SparseVec>) -> Vec<SparseVec> {
    let mut rows: Vec<SparseVec> = rows.into_iter().filter(|r| !r.is_empty()).collect();
    rows.sort_by_key(BTreeMap::len);
    rows
}

/// Primitive integer row: sorted, nonzero, content 1, positive leading entry.
#[derive(Debug, Clone, PartialEq, Eq)]
struct IntRow(Vec<(usize, BigInt)>);

impl IntRow {
    fn from_rational(v: &SparseVec) -> Self {
        let den = v.values().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        let entries = v.iter().map(|(&c, x)| (c, x.numer() * (&den / x.denom()))).collect();
        let mut row = IntRow(entries);
        row.normalize();
        row
    }

    fn lead(&self) -> Option<(usize, &BigInt)> {
        self.0.first().map(|(c, x)| (*c, x))
    }

    fn get(&self, col: usize) -> Option<&BigInt> {
        self.0.binary_search_by_key(&col, |(c, _)| *c).ok().map(|i| &self.0[i].1)
    }

    fn normalize(&mut self) {
        let mut g = BigInt::zero();
        for (_, x) in &self.0 {
            g = g.gcd(x);
            if g.is_one() {
                break;
            }
        }
        if g.is_zero() {
            return;
        }
        if self.0[0].1.is_negative() {
            g = -g;
        }
        if !g.is_one() {
            for (_, x) in &mut self.0 {
                *x = &*x / &g;
            }
        }
    }

    /// `a·self − b·other`, normalized.
    fn combine(&self, a: &BigInt, other: &IntRow, b: &BigInt) -> IntRow {
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() || j < other.0.len() {
            let ci = self.0.get(i).map(|e| e.0);
            let cj = other.0.get(j).map(|e| e.0);
            match (ci, cj) {
                (Some(x), Some(y)) if x == y => {
                    let v = a * &self.0[i].1 - b * &other.0[j].1;
                    if !v.is_zero() {
                        out.push((x, v));
                    }
                    i += 1;
                    j += 1;
                }
                (Some(x), Some(y)) if x < y => {
                    out.push((x, a * &self.0[i].1));
                    i += 1;
                }
                (Some(x), None) => {
                    out.push((x, a * &self.0[i].1));
                    i += 1;
                }
                (_, Some(y)) => {
                    out.push((y, -(b * &other.0[j].1)));
                    j += 1;
                }
                (None, None) => unreachable!(),
            }
        }
        let mut row = IntRow(out);
        if !row.0.is_empty() {
            row.normalize();
        }
        row
    }

    /// Eliminates `col` from `self` using `pivot` (whose leading column is `col`).
    fn eliminate(&self, col: usize, pivot: &IntRow) -> IntRow {
        let x = self.get(col).expect("column present");
        let p = pivot.lead().expect("nonzero pivot").1;
        let g = x.gcd(p);
        self.combine(&(p / &g), pivot, &(x / &g))
    }

    fn to_rational(&self) -> SparseVec {
        let lead = match self.lead() {
            Some((_, x)) => x.clone(),
            None => return SparseVec::new(),
        };
        self.0.iter().map(|(c, x)| (*c, Q::new(x.clone(), lead.clone()))).collect()
    }
}

/// Row echelon structure keyed by leading column.
#[derive(Debug, Clone, Default)]
struct Echelon {
    rows: Vec<IntRow>,
    by_lead: BTreeMap<usize, usize>,
}

impl Echelon {
    fn new() -> Self {
        Self::default()
    }

    fn len(&self) -> usize {
        self.rows.len()
    }

    /// Eliminates every pivot column from `row`, left to right.
    fn reduce(&self, mut row: IntRow) -> IntRow {
        let mut from = 0usize;
        loop {
            let hit = row
                .0
                .iter()
                .map(|(c, _)| *c)
                .filter(|&c| c >= from)
                .find(|c| self.by_lead.contains_key(c));
            match hit {
                None => return row,
                Some(c) => {
                    row = row.eliminate(c, &self.rows[self.by_lead[&c]]);
                    from = c + 1;
                }
            }
        }
    }

    /// Inserts a row after reduction; returns whether the rank grew.
    fn insert(&mut self, row: IntRow) -> bool {
        let row = self.reduce(row);
        match row.lead() {
            None => false,
            Some((c, _)) => {
                self.by_lead.insert(c, self.rows.len());
                self.rows.push(row);
                true
            }
        }
    }

    /// Reduced row echelon form: pivot column → rational row with leading 1
    /// and zeros in all other pivot columns.
    fn rref(&self) -> BTreeMap<usize, SparseVec> {
        let mut reduced: BTreeMap<usize, IntRow> = BTreeMap::new();
        for (&lead, &idx) in self.by_lead.iter().rev() {
            let mut row = self.rows[idx].clone();
            // only pivots to the right can appear; they are already reduced
            loop {
                let hit = row.0.iter().skip(1).map(|(c, _)| *c).find(|c| reduced.contains_key(c));
                match hit {
                    None => break,
                    Some(c) => row = row.eliminate(c, &reduced[&c]),
                }
            }
            reduced.insert(lead, row);
        }
        reduced.into_iter().map(|(c, r)| (c, r.to_rational())).collect()
    }
}

fn rref_of(m: &SparseMatrix) -> BTreeMap<usize, SparseVec> {
    let mut e = Echelon::new();
    for row in sparse_first(m.rows()) {
        e.insert(IntRow::from_rational(&row));
    }
    e.rref()
}

/// A basis of `ker M` in reduced echelon form: one vector per free column
/// (ascending), with a 1 there and 0 at every other free column.
pub fn kernel_basis(m: &SparseMatrix) -> Vec<SparseVec> {
    let rref = rref_of(m);
    let mut basis: BTreeMap<usize, SparseVec> = (0..m.n_cols())
        .filter(|c| !rref.contains_key(c))
        .map(|c| (c, SparseVec::from([(c, Q::one())])))
        .collect();
    for (&lead, row) in &rref {
        for (&c, x) in row.iter() {
            if c != lead {
                if let Some(v) = basis.get_mut(&c) {
                    v.insert(lead, -x.clone());
                }
            }
        }
    }
    basis.into_values().collect()
}

/// The canonical solution of `M x = b` (free variables zero), or `None` when
/// `b ∉ im M`.
pub fn solve_particular(m: &SparseMatrix, b: &SparseVec) -> Option<SparseVec> {
    let n = m.n_cols();
    if let Some((&r, _)) = b.iter().next_back() {
        assert!(r < m.n_rows(), "right-hand side longer than the matrix");
    }
    let mut rows = m.rows();
    for (&r, x) in b {
        rows[r].insert(n, x.clone());
    }
    let mut e = Echelon::new();
    for row in sparse_first(rows) {
        e.insert(IntRow::from_rational(&row));
    }
    if e.by_lead.contains_key(&n) {
        return None;
    }
    let rref = e.rref();
    let mut x = SparseVec::new();
    for (&lead, row) in &rref {
        if let Some(v) = row.get(&n) {
            x.insert(lead, v.clone());
        }
    }
    Some(x)
}

/// Cohomology at the middle of `A → B → C` given `d_in: A → B` and
/// `d_out: B → C`: the dimension `dim ker d_out − rank d_in` and one
/// representative cocycle per class (kernel vectors reduced modulo the
/// image, first-come in kernel-basis order).
pub fn cohomology(d_in: &SparseMatrix, d_out: &SparseMatrix) -> (usize, Vec<SparseVec>) {
    assert_eq!(d_in.n_rows(), d_out.n_cols(), "composable maps required");
    let mut e = Echelon::new();
    for col in sparse_first(d_in.columns()) {
        e.insert(IntRow::from_rational(&col));
    }
    let mut reps = Vec::new();
    for z in kernel_basis(d_out) {
        let r = e.reduce(IntRow::from_rational(&z));
        if r.lead().is_some() {
            reps.push(r.to_rational());
            e.insert(r);
        }
    }
    (reps.len(), reps)
}

/// The canonical remainder of `v` modulo the span of `vectors`: it vanishes
/// in every pivot column of the span and differs from `v` by a span element.
pub fn reduce_modulo(vectors: &[SparseVec], v: &SparseVec) -> SparseVec {
    let mut e = Echelon::new();
    for row in sparse_first(vectors.to_vec()) {
        e.insert(IntRow::from_rational(&row));
    }
    let mut out = v.clone();
    for (lead, row) in e.rref() {
        if let Some(c) = out.get(&lead).cloned() {
            for (col, x) in row {
                let e = out.entry(col).or_insert_with(Q::zero);
                *e -= &c * x;
                if e.is_zero() {
                    out.remove(&col);
                }
            }
        }
    }
    out
}

/// Whether `v` lies in the column span of `m`.
pub fn in_column_span(m: &SparseMatrix, v: &SparseVec) -> bool {
    solve_particular(m, v).is_some()
}

/// Dimension of the span of `vectors`.
pub fn rank_of_columns(vectors: &[SparseVec]) -> usize {
    let mut e = Echelon::new();
    let mut sorted: Vec<&SparseVec> = vectors.iter().filter(|v| !v.is_empty()).collect();
    sorted.sort_by_key(|v| v.len());
    for v in sorted {
        e.insert(IntRow::from_rational(v));
    }
    e.len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{q, q_frac};

    fn vec_of(pairs: &[(usize, Q)]) -> SparseVec {
        pairs.iter().cloned().collect()
    }

    #[test]
    fn identity_has_trivial_kernel() {
        let m = SparseMatrix::from_dense(&[vec![1, 0], vec![0, 1]]);
        assert!(kernel_basis(&m).is_empty());
        assert_eq!(m.rank(), 2);
    }

    #[test]
    fn row_of_ones() {
        let m = SparseMatrix::from_dense(&[vec![1, 1]]);
        assert_eq!(kernel_basis(&m), vec![vec_of(&[(0, q(-1)), (1, q(1))])]);
        assert_eq!(
            solve_particular(&m, &vec_of(&[(0, q(5))])),
            Some(vec_of(&[(0, q(5))]))
        );
    }

    #[test]
    fn scalar_solve() {
        let m = SparseMatrix::from_dense(&[vec![2]]);
        assert_eq!(solve_particular(&m, &vec_of(&[(0, q(3))])), Some(vec_of(&[(0, q_frac(3, 2))])));
    }

    #[test]
    fn inconsistent_system() {
        let m = SparseMatrix::from_dense(&[vec![1, 1], vec![2, 2]]);
        assert_eq!(solve_particular(&m, &vec_of(&[(0, q(1)), (1, q(3))])), None);
        assert!(solve_particular(&m, &vec_of(&[(0, q(1)), (1, q(2))])).is_some());
    }

    #[test]
    fn zero_matrix_and_empty_shapes() {
        let m = SparseMatrix::zeros(1, 3);
        assert_eq!(kernel_basis(&m).len(), 3);
        let e = SparseMatrix::zeros(0, 0);
        assert!(kernel_basis(&e).is_empty());
        assert_eq!(solve_particular(&e, &SparseVec::new()), Some(SparseVec::new()));
        let (dim, reps) = cohomology(&SparseMatrix::zeros(2, 0), &SparseMatrix::zeros(0, 2));
        assert_eq!(dim, 2);
        assert_eq!(reps.len(), 2);
    }

    #[test]
    fn rref_is_independent_of_row_order() {
        let m = SparseMatrix::from_dense(&[vec![0, 2, 4, 1], vec![1, 1, 1, 1], vec![1, 3, 5, 2]]);
        let k1 = kernel_basis(&m);
        let k2 = kernel_basis(&m.permute_rows(&[2, 0, 1]));
        assert_eq!(k1, k2);
        for v in &k1 {
            assert!(m.mul_vec(v).is_empty());
        }
    }

    #[test]
    fn cohomology_of_a_short_complex() {
        // A = Q → B = Q² → C = Q, d_in = (1,1)^T, d_out = (1,-1)
        let d_in = SparseMatrix::from_dense(&[vec![1], vec![1]]);
        let d_out = SparseMatrix::from_dense(&[vec![1, -1]]);
        assert_eq!(cohomology(&d_in, &d_out).0, 0);
        let d_out0 = SparseMatrix::zeros(1, 2);
        let (dim, reps) = cohomology(&d_in, &d_out0);
        assert_eq!(dim, 1);
        assert_eq!(reps.len(), 1);
    }
}

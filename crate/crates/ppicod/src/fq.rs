//! Exact linear algebra over prime fields GF(q).
//!
//! Dense row-major matrices, reduced row echelon form, rank, column removal,
//! and an exhaustive enumerator that visits every RREF matrix — one canonical
//! representative per row space — grouped into replayable blocks so the sweep
//! can be parallelized and resumed at any index. GF(2) elimination runs on
//! bit-packed words; every other field goes through the generic modular path.
//! The two paths must agree exactly (RREF is unique), and a test holds them
//! to that.

use std::collections::BTreeSet;
use std::fmt;
use std::ops::RangeInclusive;

use crate::error::Error;

/// A prime field GF(q). Elements are canonical residues in `0..q` stored as
/// `u64`; products go through `u128` so no modulus can overflow.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct PrimeField {
    q: u64,
}

impl PrimeField {
    /// Builds GF(q), rejecting composite or trivial orders by trial division.
    pub fn new(q: u64) -> Result<Self, Error> {
        if !is_prime(q) {
            return Err(Error::NotPrime(q));
        }
        Ok(Self { q })
    }

    pub fn order(&self) -> u64 {
        self.q
    }

    pub fn check(&self, value: u64) -> Result<u64, Error> {
        if value < self.q {
            Ok(value)
        } else {
            Err(Error::ElementOutOfRange { value, q: self.q })
        }
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = (a as u128 + b as u128) % self.q as u128;
        s as u64
    }

    pub fn sub(&self, a: u64, b: u64) -> u64 {
        self.add(a, self.neg(b))
    }

    pub fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.q - a
        }
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.q as u128) as u64
    }

    pub fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        base %= self.q;
        let mut acc = 1 % self.q;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative inverse via Fermat: a^(q-2). Zero has none.
    pub fn inv(&self, a: u64) -> Result<u64, Error> {
        if a % self.q == 0 {
            return Err(Error::ZeroInverse { q: self.q });
        }
        Ok(self.pow(a, self.q - 2))
    }
}

fn is_prime(q: u64) -> bool {
    if q < 2 {
        return false;
    }
    if q % 2 == 0 {
        return q == 2;
    }
    let mut d = 3u64;
    while d * d <= q {
        if q % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Dense matrix over a prime field, row-major. The derived ordering (field,
/// then shape, then entries) gives matrices a total order, which keeps any
/// tie-breaking among witness matrices deterministic.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Matrix {
    field: PrimeField,
    rows: usize,
    cols: usize,
    data: Vec<u64>,
}

impl Matrix {
    pub fn new(field: PrimeField, rows: usize, cols: usize, data: Vec<u64>) -> Result<Self, Error> {
        if data.len() != rows * cols {
            return Err(Error::Shape(format!(
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows * cols,
                data.len()
            )));
        }
        for &value in &data {
            field.check(value)?;
        }
        Ok(Self { field, rows, cols, data })
    }

    pub fn zeros(field: PrimeField, rows: usize, cols: usize) -> Self {
        Self { field, rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(field: PrimeField, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(field: PrimeField, rows: &[Vec<u64>]) -> Result<Self, Error> {
        let height = rows.len();
        let width = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(height * width);
        for row in rows {
            if row.len() != width {
                return Err(Error::Shape("ragged rows".into()));
            }
            data.extend_from_slice(row);
        }
        Self::new(field, height, width, data)
    }

    /// Rectangular Vandermonde on the nodes 0, 1, ..., cols-1, so it needs
    /// q >= cols for the nodes to be distinct. Any `rows` of it form a
    /// generator whose every `rows`-subset of columns is invertible — the
    /// classical systematic-MDS workhorse.
    pub fn vandermonde(field: PrimeField, rows: usize, cols: usize) -> Result<Self, Error> {
        if (cols as u64) > field.order() {
            return Err(Error::MdsFieldTooSmall { q: field.order(), m: cols });
        }
        let mut m = Self::zeros(field, rows, cols);
        for c in 0..cols {
            let node = c as u64;
            for r in 0..rows {
                m.set(r, c, field.pow(node, r as u64));
            }
        }
        Ok(m)
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> u64 {
        debug_assert!(r < self.rows && c < self.cols);
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: u64) {
        debug_assert!(r < self.rows && c < self.cols);
        debug_assert!(value < self.field.q);
        self.data[r * self.cols + c] = value;
    }

    pub fn row(&self, r: usize) -> &[u64] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn entries(&self) -> &[u64] {
        &self.data
    }

    pub fn is_zero_row(&self, r: usize) -> bool {
        self.row(r).iter().all(|&x| x == 0)
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c));
            }
        }
        t
    }

    pub fn mat_mul(&self, rhs: &Matrix) -> Result<Matrix, Error> {
        if self.field != rhs.field {
            return Err(Error::Shape("field mismatch in product".into()));
        }
        if self.cols != rhs.rows {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let f = self.field;
        let mut out = Matrix::zeros(f, self.rows, rhs.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a == 0 {
                    continue;
                }
                for c in 0..rhs.cols {
                    let add = f.mul(a, rhs.get(k, c));
                    let cur = out.get(r, c);
                    out.set(r, c, f.add(cur, add));
                }
            }
        }
        Ok(out)
    }

    /// Same matrix with `extra` all-zero rows appended. Zero rows never
    /// change the row space, so rank and decodability are invariant.
    pub fn padded(&self, extra: usize) -> Matrix {
        let mut data = self.data.clone();
        data.extend(std::iter::repeat(0).take(extra * self.cols));
        Matrix { field: self.field, rows: self.rows + extra, cols: self.cols, data }
    }

    /// Drops every all-zero row, keeping the order of the rest.
    pub fn nonzero_rows(&self) -> Matrix {
        let mut data = Vec::new();
        let mut rows = 0;
        for r in 0..self.rows {
            if !self.is_zero_row(r) {
                data.extend_from_slice(self.row(r));
                rows += 1;
            }
        }
        Matrix { field: self.field, rows, cols: self.cols, data }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    fn scale_row(&mut self, r: usize, factor: u64) {
        let f = self.field;
        for c in 0..self.cols {
            let v = self.get(r, c);
            self.set(r, c, f.mul(v, factor));
        }
    }

    /// row[target] -= factor * row[source]
    fn sub_scaled_row(&mut self, target: usize, source: usize, factor: u64) {
        let f = self.field;
        for c in 0..self.cols {
            let sub = f.mul(factor, self.get(source, c));
            let v = self.get(target, c);
            self.set(target, c, f.sub(v, sub));
        }
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(u64::to_string).collect();
            writeln!(f, "[{}]", row.join(" "))?;
        }
        Ok(())
    }
}

/// Reduced row echelon form of a matrix, with its rank and pivot columns.
/// The RREF of a matrix is unique, so this is a canonical form of the row
/// space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RrefResult {
    pub rref: Matrix,
    pub rank: usize,
    pub pivot_cols: Vec<usize>,
}

impl RrefResult {
    /// Columns j for which some row of the RREF is the standard unit vector
    /// e_j. In a decoding context these are exactly the single messages
    /// exposed by the row space.
    pub fn unit_row_columns(&self) -> BTreeSet<usize> {
        let mut out = BTreeSet::new();
        let m = &self.rref;
        'rows: for r in 0..m.rows {
            let mut unit_col = None;
            for c in 0..m.cols {
                match (m.get(r, c), unit_col) {
                    (0, _) => {}
                    (1, None) => unit_col = Some(c),
                    _ => continue 'rows,
                }
            }
            if let Some(c) = unit_col {
                out.insert(c);
            }
        }
        out
    }
}

/// Reduced row echelon form. Dispatches to the bit-packed GF(2) kernel when
/// the field is binary; the result is identical either way.
pub fn rref(m: &Matrix) -> RrefResult {
    if m.field.order() == 2 {
        gf2::rref_bits(m)
    } else {
        rref_generic(m)
    }
}

pub(crate) fn rref_generic(m: &Matrix) -> RrefResult {
    let f = m.field;
    let mut a = m.clone();
    let mut pivot_cols = Vec::new();
    let mut r = 0;
    for c in 0..a.cols {
        if r == a.rows {
            break;
        }
        let Some(p) = (r..a.rows).find(|&i| a.get(i, c) != 0) else {
            continue;
        };
        a.swap_rows(r, p);
        let inv = f.inv(a.get(r, c)).expect("pivot is nonzero");
        a.scale_row(r, inv);
        for i in 0..a.rows {
            if i != r && a.get(i, c) != 0 {
                let factor = a.get(i, c);
                a.sub_scaled_row(i, r, factor);
            }
        }
        pivot_cols.push(c);
        r += 1;
    }
    RrefResult { rref: a, rank: r, pivot_cols }
}

mod gf2 {
    use super::{Matrix, RrefResult};

    /// GF(2) elimination on 64-entry words. Rows are XORed whole words at a
    /// time, which is where exhaustive binary sweeps spend their life.
    pub(super) fn rref_bits(m: &Matrix) -> RrefResult {
        let words = m.cols.div_ceil(64).max(1);
        let mut rows: Vec<Vec<u64>> = (0..m.rows)
            .map(|r| {
                let mut packed = vec![0u64; words];
                for (c, &v) in m.row(r).iter().enumerate() {
                    packed[c / 64] |= v << (c % 64);
                }
                packed
            })
            .collect();

        let mut pivot_cols = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let word = c / 64;
            let bit = 1u64 << (c % 64);
            let Some(p) = (r..m.rows).find(|&i| rows[i][word] & bit != 0) else {
                continue;
            };
            rows.swap(r, p);
            for i in 0..m.rows {
                if i != r && rows[i][word] & bit != 0 {
                    let (head, tail) = rows.split_at_mut(r.max(i));
                    let (a, b) = if i < r {
                        (&mut head[i], &tail[0])
                    } else {
                        (&mut tail[0], &head[r])
                    };
                    for w in 0..words {
                        a[w] ^= b[w];
                    }
                }
            }
            pivot_cols.push(c);
            r += 1;
        }

        let mut out = Matrix::zeros(m.field, m.rows, m.cols);
        for (i, packed) in rows.iter().enumerate() {
            for c in 0..m.cols {
                if packed[c / 64] >> (c % 64) & 1 == 1 {
                    out.set(i, c, 1);
                }
            }
        }
        RrefResult { rref: out, rank: r, pivot_cols }
    }
}

/// Copies the matrix without the given columns (0-based). Also returns the
/// map from new column positions back to the original ones, so anything
/// computed on the punctured matrix can be translated back.
pub fn remove_columns(m: &Matrix, cols: &BTreeSet<usize>) -> Result<(Matrix, Vec<usize>), Error> {
    if let Some(&col) = cols.iter().find(|&&c| c >= m.cols) {
        return Err(Error::ColumnOutOfRange { col, cols: m.cols });
    }
    let keep: Vec<usize> = (0..m.cols).filter(|c| !cols.contains(c)).collect();
    let mut out = Matrix::zeros(m.field, m.rows, keep.len());
    for r in 0..m.rows {
        for (new_c, &old_c) in keep.iter().enumerate() {
            out.set(r, new_c, m.get(r, old_c));
        }
    }
    Ok((out, keep))
}

/// Gaussian binomial coefficient: the number of k-dimensional subspaces of
/// GF(q)^m. Computed by the Pascal-style recurrence
/// `[m k] = [m-1 k-1] + q^k [m-1 k]` in saturating u128, so a value that
/// would overflow comes back as `u128::MAX` rather than wrapping.
pub fn gaussian_binomial(q: u64, m: usize, k: usize) -> u128 {
    if k > m {
        return 0;
    }
    let mut g = vec![0u128; k + 1];
    g[0] = 1;
    for _ in 1..=m {
        for j in (1..=k).rev() {
            let qj = (q as u128).saturating_pow(j as u32);
            g[j] = g[j - 1].saturating_add(qj.saturating_mul(g[j]));
        }
    }
    g[k]
}

/// Number of m x m RREF matrices with rank in `ranks` — what a full
/// enumeration will visit. Saturating, for the same reason as above.
pub fn count_rref(q: u64, m: usize, ranks: RangeInclusive<usize>) -> u128 {
    let hi = (*ranks.end()).min(m);
    let mut total = 0u128;
    for k in (*ranks.start())..=hi {
        total = total.saturating_add(gaussian_binomial(q, m, k));
    }
    total
}

/// One (rank, pivot columns) block of the RREF enumeration. A block is a
/// pure function of its index: `matrix_at(i)` spells the i-th member by
/// writing i in base q across the free cells (first free cell = least
/// significant digit), so blocks can be split across threads or replayed
/// from any position without shared state.
#[derive(Clone, Debug)]
pub struct RrefBlock {
    field: PrimeField,
    m: usize,
    pivots: Vec<usize>,
    free: Vec<(usize, usize)>,
}

impl RrefBlock {
    fn new(field: PrimeField, m: usize, pivots: Vec<usize>) -> Self {
        let pivot_set: BTreeSet<usize> = pivots.iter().copied().collect();
        let mut free = Vec::new();
        for (i, &p) in pivots.iter().enumerate() {
            for c in p + 1..m {
                if !pivot_set.contains(&c) {
                    free.push((i, c));
                }
            }
        }
        Self { field, m, pivots, free }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn count(&self) -> u128 {
        (self.field.order() as u128)
            .checked_pow(self.free.len() as u32)
            .unwrap_or(u128::MAX)
    }

    pub fn matrix_at(&self, mut index: u128) -> Matrix {
        debug_assert!(index < self.count());
        let q = self.field.order() as u128;
        let mut mat = Matrix::zeros(self.field, self.m, self.m);
        for (i, &p) in self.pivots.iter().enumerate() {
            mat.set(i, p, 1);
        }
        for &(r, c) in &self.free {
            mat.set(r, c, (index % q) as u64);
            index /= q;
        }
        mat
    }

    pub fn iter(&self) -> impl Iterator<Item = Matrix> + '_ {
        (0..self.count()).map(|i| self.matrix_at(i))
    }
}

/// All enumeration blocks for m x m matrices with rank in `ranks`, ordered
/// by rank and then by pivot set in lexicographic order.
pub fn rref_blocks(field: PrimeField, m: usize, ranks: RangeInclusive<usize>) -> Vec<RrefBlock> {
    let hi = (*ranks.end()).min(m);
    let mut blocks = Vec::new();
    for k in (*ranks.start())..=hi {
        for pivots in combinations(m, k) {
            blocks.push(RrefBlock::new(field, m, pivots));
        }
    }
    blocks
}

/// Every m x m RREF matrix with rank in `ranks`, exactly once, in block
/// order. Each emitted matrix is its own RREF, so the stream hits each
/// row space exactly once.
pub fn enumerate_rref(
    field: PrimeField,
    m: usize,
    ranks: RangeInclusive<usize>,
) -> impl Iterator<Item = Matrix> {
    rref_blocks(field, m, ranks)
        .into_iter()
        .flat_map(|block| (0..block.count()).map(move |i| block.matrix_at(i)))
}

/// k-subsets of {0, ..., m-1} in lexicographic order.
fn combinations(m: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > m {
        return out;
    }
    let mut cur: Vec<usize> = (0..k).collect();
    loop {
        out.push(cur.clone());
        // advance to the next combination
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] != i + m - k {
                break;
            }
        }
        cur[i] += 1;
        for j in i + 1..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{RngExt, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn gf(q: u64) -> PrimeField {
        PrimeField::new(q).unwrap()
    }

    fn random_matrix(field: PrimeField, rows: usize, cols: usize, rng: &mut ChaCha8Rng) -> Matrix {
        let data: Vec<u64> = (0..rows * cols).map(|_| rng.random_range(0..field.order())).collect();
        Matrix::new(field, rows, cols, data).unwrap()
    }

    /// Random invertible square matrix, by rejection.
    fn random_invertible(field: PrimeField, n: usize, rng: &mut ChaCha8Rng) -> Matrix {
        loop {
            let t = random_matrix(field, n, n, rng);
            if rref(&t).rank == n {
                return t;
            }
        }
    }

    #[test]
    fn primality_gate() {
        for q in [2, 3, 5, 7, 11, 101] {
            assert!(PrimeField::new(q).is_ok(), "q = {q}");
        }
        for q in [0, 1, 4, 6, 9, 100] {
            assert!(matches!(PrimeField::new(q), Err(Error::NotPrime(_))), "q = {q}");
        }
    }

    #[test]
    fn field_arithmetic() {
        let f = gf(5);
        assert_eq!(f.add(3, 4), 2);
        assert_eq!(f.sub(1, 3), 3);
        assert_eq!(f.neg(0), 0);
        assert_eq!(f.mul(3, 4), 2);
        assert_eq!(f.pow(2, 4), 1);
    }

    #[test]
    fn inverses() {
        assert_eq!(gf(2).inv(1).unwrap(), 1);
        assert_eq!(gf(5).inv(2).unwrap(), 3);
        assert_eq!(gf(7).inv(4).unwrap(), 2);
        assert!(matches!(gf(5).inv(0), Err(Error::ZeroInverse { q: 5 })));
        // every nonzero element times its inverse is 1
        for q in [2u64, 3, 7, 13] {
            let f = gf(q);
            for a in 1..q {
                assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
            }
        }
    }

    #[test]
    fn matrix_construction_checks_shape_and_range() {
        let f = gf(3);
        assert!(Matrix::new(f, 2, 2, vec![0, 1, 2]).is_err());
        assert!(Matrix::new(f, 2, 2, vec![0, 1, 2, 3]).is_err());
        assert!(Matrix::new(f, 2, 2, vec![0, 1, 2, 2]).is_ok());
        assert!(Matrix::from_rows(f, &[vec![1, 2], vec![0]]).is_err());
    }

    #[test]
    fn rref_of_identity_is_identity() {
        for q in [2u64, 3, 5] {
            let id = Matrix::identity(gf(q), 3);
            let r = rref(&id);
            assert_eq!(r.rref, id);
            assert_eq!(r.rank, 3);
            assert_eq!(r.pivot_cols, vec![0, 1, 2]);
        }
    }

    #[test]
    fn rref_collapses_duplicate_rows() {
        let m = Matrix::from_rows(gf(2), &[vec![1, 1], vec![1, 1]]).unwrap();
        let r = rref(&m);
        assert_eq!(r.rank, 1);
        assert_eq!(r.rref, Matrix::from_rows(gf(2), &[vec![1, 1], vec![0, 0]]).unwrap());
    }

    #[test]
    fn rref_normalizes_pivots() {
        // [[0,2],[1,1]] over GF(3): swap, scale by 2^{-1}=2, eliminate.
        let m = Matrix::from_rows(gf(3), &[vec![0, 2], vec![1, 1]]).unwrap();
        let r = rref(&m);
        assert_eq!(r.rref, Matrix::identity(gf(3), 2));
        assert_eq!(r.rank, 2);
    }

    #[test]
    fn rref_is_idempotent() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for q in [2u64, 3, 5] {
            let f = gf(q);
            for _ in 0..50 {
                let rows = rng.random_range(1..=6);
                let cols = rng.random_range(1..=8);
                let m = random_matrix(f, rows, cols, &mut rng);
                let once = rref(&m);
                let twice = rref(&once.rref);
                assert_eq!(once, twice);
            }
        }
    }

    #[test]
    fn rank_equals_rank_of_transpose() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        for q in [2u64, 3, 5] {
            let f = gf(q);
            for _ in 0..50 {
                let rows = rng.random_range(1..=7);
                let cols = rng.random_range(1..=7);
                let m = random_matrix(f, rows, cols, &mut rng);
                assert_eq!(rref(&m).rank, rref(&m.transpose()).rank);
            }
        }
    }

    #[test]
    fn bitpacked_gf2_matches_generic_elimination() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        let f = gf(2);
        for _ in 0..60 {
            let rows = rng.random_range(1..=9);
            // cross the 64-bit word boundary as well
            let cols = rng.random_range(1..=80);
            let m = random_matrix(f, rows, cols, &mut rng);
            let fast = rref(&m);
            let slow = rref_generic(&m);
            assert_eq!(fast, slow);
        }
    }

    #[test]
    fn zero_row_padding_changes_nothing() {
        let mut rng = ChaCha8Rng::seed_from_u64(14);
        for q in [2u64, 5] {
            let f = gf(q);
            for _ in 0..20 {
                let m = random_matrix(f, 3, 5, &mut rng);
                let padded = m.padded(3);
                assert_eq!(rref(&m).rank, rref(&padded).rank);
                assert_eq!(
                    rref(&m).unit_row_columns(),
                    rref(&padded).unit_row_columns()
                );
            }
        }
    }

    #[test]
    fn row_space_invariants_under_invertible_transform() {
        let mut rng = ChaCha8Rng::seed_from_u64(15);
        for q in [2u64, 3] {
            let f = gf(q);
            for _ in 0..25 {
                let m = random_matrix(f, 4, 6, &mut rng);
                let t = random_invertible(f, 4, &mut rng);
                let tm = t.mat_mul(&m).unwrap();
                assert_eq!(rref(&m), rref(&tm), "same row space, same RREF");
            }
        }
    }

    #[test]
    fn unit_row_detection() {
        let f = gf(2);
        let m = Matrix::from_rows(f, &[vec![1, 0, 0], vec![0, 1, 1]]).unwrap();
        assert_eq!(rref(&m).unit_row_columns(), BTreeSet::from([0]));
        assert_eq!(
            rref(&Matrix::identity(f, 3)).unit_row_columns(),
            BTreeSet::from([0, 1, 2])
        );
        assert!(rref(&Matrix::zeros(f, 2, 3)).unit_row_columns().is_empty());
        // scaled unit rows count too: over GF(5), [0,3,0] spans e_2
        let m = Matrix::from_rows(gf(5), &[vec![0, 3, 0]]).unwrap();
        assert_eq!(rref(&m).unit_row_columns(), BTreeSet::from([1]));
    }

    #[test]
    fn column_removal() {
        let f = gf(3);
        let m = Matrix::from_rows(f, &[vec![0, 1, 2, 0, 1], vec![2, 2, 0, 1, 0]]).unwrap();
        let (cut, keep) = remove_columns(&m, &BTreeSet::from([1, 3])).unwrap();
        assert_eq!(keep, vec![0, 2, 4]);
        assert_eq!(cut, Matrix::from_rows(f, &[vec![0, 2, 1], vec![2, 0, 0]]).unwrap());

        let (same, keep) = remove_columns(&m, &BTreeSet::new()).unwrap();
        assert_eq!(same, m);
        assert_eq!(keep, vec![0, 1, 2, 3, 4]);

        let (empty, keep) = remove_columns(&m, &BTreeSet::from([0, 1, 2, 3, 4])).unwrap();
        assert_eq!(empty.cols(), 0);
        assert!(keep.is_empty());

        assert!(matches!(
            remove_columns(&m, &BTreeSet::from([5])),
            Err(Error::ColumnOutOfRange { col: 5, cols: 5 })
        ));
    }

    #[test]
    fn vandermonde_submatrices_are_invertible() {
        let f = gf(7);
        let v = Matrix::vandermonde(f, 3, 5).unwrap();
        assert_eq!(v.row(0), &[1, 1, 1, 1, 1]);
        // every 3-subset of columns has full rank
        for cols in combinations(5, 3) {
            let drop: BTreeSet<usize> = (0..5).filter(|c| !cols.contains(c)).collect();
            let (sub, _) = remove_columns(&v, &drop).unwrap();
            assert_eq!(rref(&sub).rank, 3, "columns {cols:?}");
        }
        assert!(matches!(
            Matrix::vandermonde(gf(3), 2, 5),
            Err(Error::MdsFieldTooSmall { q: 3, m: 5 })
        ));
    }

    #[test]
    fn gaussian_binomials_small() {
        assert_eq!(gaussian_binomial(2, 1, 0), 1);
        assert_eq!(gaussian_binomial(2, 2, 1), 3);
        assert_eq!(gaussian_binomial(2, 4, 2), 35);
        assert_eq!(gaussian_binomial(3, 3, 1), 13);
        assert_eq!(gaussian_binomial(3, 4, 2), 130);
        assert_eq!(gaussian_binomial(2, 8, 4), 200787);
        assert_eq!(gaussian_binomial(2, 3, 5), 0);
    }

    #[test]
    fn subspace_totals() {
        // Galois numbers: total subspaces of GF(q)^m, all dimensions.
        assert_eq!(count_rref(2, 2, 0..=2), 5);
        assert_eq!(count_rref(3, 2, 0..=2), 6);
        assert_eq!(count_rref(2, 3, 0..=3), 16);
        assert_eq!(count_rref(2, 8, 0..=8), 417_199);
        assert_eq!(count_rref(2, 8, 1..=8), 417_198);
    }

    #[test]
    fn enumeration_order_m2_q2() {
        let f = gf(2);
        let got: Vec<Matrix> = enumerate_rref(f, 2, 1..=2).collect();
        let want = [
            Matrix::from_rows(f, &[vec![1, 0], vec![0, 0]]).unwrap(),
            Matrix::from_rows(f, &[vec![1, 1], vec![0, 0]]).unwrap(),
            Matrix::from_rows(f, &[vec![0, 1], vec![0, 0]]).unwrap(),
            Matrix::identity(f, 2),
        ];
        assert_eq!(got, want);
    }

    #[test]
    fn enumeration_is_canonical_and_complete() {
        for (q, m) in [(2u64, 3usize), (2, 4), (3, 3)] {
            let f = gf(q);
            let mut seen = BTreeSet::new();
            let mut last_rank = 0;
            for mat in enumerate_rref(f, m, 0..=m) {
                let r = rref(&mat);
                assert_eq!(r.rref, mat, "each emitted matrix is its own RREF");
                assert!(r.rank >= last_rank, "ranks are emitted in ascending order");
                last_rank = r.rank;
                assert!(seen.insert(mat), "no duplicates");
            }
            assert_eq!(seen.len() as u128, count_rref(q, m, 0..=m));
        }
    }

    #[test]
    fn per_rank_enumeration_matches_gaussian_binomial() {
        for q in [2u64, 3] {
            for m in 0..=5usize {
                for k in 0..=m {
                    let f = gf(q);
                    let count = enumerate_rref(f, m, k..=k).count();
                    assert_eq!(count as u128, gaussian_binomial(q, m, k), "q={q} m={m} k={k}");
                }
            }
        }
    }

    #[test]
    fn block_replay_matches_stream() {
        let f = gf(3);
        let blocks = rref_blocks(f, 3, 0..=3);
        let stream: Vec<Matrix> = enumerate_rref(f, 3, 0..=3).collect();
        let replayed: Vec<Matrix> = blocks
            .iter()
            .flat_map(|b| b.iter().collect::<Vec<_>>())
            .collect();
        assert_eq!(stream, replayed);
        // spot-check random access
        assert_eq!(blocks[1].matrix_at(0), stream[blocks[0].count() as usize]);
    }

    #[test]
    fn combinations_are_lexicographic() {
        assert_eq!(
            combinations(4, 2),
            vec![
                vec![0, 1],
                vec![0, 2],
                vec![0, 3],
                vec![1, 2],
                vec![1, 3],
                vec![2, 3]
            ]
        );
        assert_eq!(combinations(3, 0), vec![Vec::<usize>::new()]);
        assert_eq!(combinations(2, 3), Vec::<Vec<usize>>::new());
    }
}

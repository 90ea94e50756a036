//! Exact sublattice algebra in `Z^N`.
//!
//! Every lattice is stored through its canonical Hermite normal form basis
//! (row style, positive pivots, entries above each pivot reduced into
//! `[0, pivot)`), so lattice equality is plain structural equality and the
//! serialized form is stable. Saturation goes through a Smith normal form
//! with a tracked inverse right transform; the annihilator through an
//! identity-augmented kernel computation.
//!
//! All arithmetic is checked. Vectors and bases are `i64` at the public
//! boundary; the normal forms run internally in `i128` because exact row
//! reduction can pass through intermediates far larger than either the
//! input or the canonical result. Anything that would still wrap reports
//! [`LatticeError::Overflow`] instead of returning a wrong lattice.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("integer overflow in exact lattice arithmetic")]
    Overflow,
    #[error("ambient rank mismatch: {left} vs {right}")]
    AmbientMismatch { left: usize, right: usize },
    #[error("vector length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },
    #[error("row of length {found} in ambient rank {ambient}")]
    RowLength { found: usize, ambient: usize },
    #[error("map of shape {rows}x{cols} inconsistent with target rank {target_rank} and source rank {source_rank}")]
    MapShape {
        rows: usize,
        cols: usize,
        target_rank: usize,
        source_rank: usize,
    },
}

pub type LatticeResult<T> = Result<T, LatticeError>;

#[inline]
fn checked_add(a: i64, b: i64) -> LatticeResult<i64> {
    a.checked_add(b).ok_or(LatticeError::Overflow)
}

#[inline]
fn checked_sub(a: i64, b: i64) -> LatticeResult<i64> {
    a.checked_sub(b).ok_or(LatticeError::Overflow)
}

#[inline]
fn checked_mul(a: i64, b: i64) -> LatticeResult<i64> {
    a.checked_mul(b).ok_or(LatticeError::Overflow)
}

fn row_neg_128(mat: &mut [Vec<i128>], i: usize) -> LatticeResult<()> {
    for c in 0..mat[i].len() {
        mat[i][c] = mat[i][c].checked_neg().ok_or(LatticeError::Overflow)?;
    }
    Ok(())
}

/// The standard pairing `<chi, gamma> = chi . gamma` between character and
/// cocharacter coordinates over the shared dual bases.
pub fn pair(chi: &[i64], gamma: &[i64]) -> LatticeResult<i64> {
    if chi.len() != gamma.len() {
        return Err(LatticeError::LengthMismatch {
            left: chi.len(),
            right: gamma.len(),
        });
    }
    let mut acc = 0i64;
    for (&x, &y) in chi.iter().zip(gamma.iter()) {
        acc = checked_add(acc, checked_mul(x, y)?)?;
    }
    Ok(acc)
}

/// A sublattice of `Z^N` held in canonical Hermite normal form.
///
/// Canonicality means two values represent the same lattice exactly when
/// they are equal as structs, so `==` is lattice equality (given matching
/// ambient ranks).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntegerLattice {
    ambient_rank: usize,
    basis: Vec<Vec<i64>>,
}

/// Canonicalize the row span of `rows` inside `Z^ambient_rank`.
///
/// Zero rows are discarded; an empty input yields the zero lattice.
pub fn hnf_canonical(ambient_rank: usize, rows: &[Vec<i64>]) -> LatticeResult<IntegerLattice> {
    for row in rows {
        if row.len() != ambient_rank {
            return Err(LatticeError::RowLength {
                found: row.len(),
                ambient: ambient_rank,
            });
        }
    }
    let mut mat: Vec<Vec<i128>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| x as i128).collect())
        .collect();
    let rank = hnf_in_place(&mut mat, ambient_rank)?;
    let basis: Vec<Vec<i64>> = mat[..rank]
        .iter()
        .map(|r| r.iter().map(|&x| narrow(x)).collect())
        .collect::<LatticeResult<_>>()?;
    Ok(IntegerLattice {
        ambient_rank,
        basis,
    })
}

/// Row-style HNF reduction in place. Returns the rank; rows `rank..` end up
/// zero. Internal arithmetic is checked `i128`: intermediate entries can
/// legitimately outgrow the canonical result.
fn hnf_in_place(mat: &mut [Vec<i128>], ambient: usize) -> LatticeResult<usize> {
    let mut pivot_row = 0;
    for col in 0..ambient {
        if pivot_row == mat.len() {
            break;
        }
        // Euclidean elimination below the pivot position.
        loop {
            let mut best: Option<usize> = None;
            for r in pivot_row..mat.len() {
                if mat[r][col] != 0
                    && best.is_none_or(|b| mat[r][col].unsigned_abs() < mat[b][col].unsigned_abs())
                {
                    best = Some(r);
                }
            }
            let Some(best) = best else { break };
            mat.swap(pivot_row, best);
            let p = mat[pivot_row][col];
            let mut clear = true;
            for r in pivot_row + 1..mat.len() {
                if mat[r][col] != 0 {
                    let q = mat[r][col].div_euclid(p);
                    row_sub_mul_128(mat, r, pivot_row, q)?;
                    if mat[r][col] != 0 {
                        clear = false;
                    }
                }
            }
            if clear {
                break;
            }
        }
        if mat[pivot_row][col] != 0 {
            if mat[pivot_row][col] < 0 {
                row_neg_128(mat, pivot_row)?;
            }
            let p = mat[pivot_row][col];
            for r in 0..pivot_row {
                let q = mat[r][col].div_euclid(p);
                row_sub_mul_128(mat, r, pivot_row, q)?;
            }
            pivot_row += 1;
        }
    }
    debug_assert!(mat[pivot_row..].iter().all(|r| r.iter().all(|&x| x == 0)));
    Ok(pivot_row)
}

impl IntegerLattice {
    /// The zero lattice in `Z^ambient_rank`.
    pub fn zero(ambient_rank: usize) -> Self {
        IntegerLattice {
            ambient_rank,
            basis: Vec::new(),
        }
    }

    /// The full lattice `Z^ambient_rank`.
    pub fn full(ambient_rank: usize) -> Self {
        let basis = (0..ambient_rank)
            .map(|i| {
                let mut row = vec![0i64; ambient_rank];
                row[i] = 1;
                row
            })
            .collect();
        IntegerLattice {
            ambient_rank,
            basis,
        }
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient_rank
    }

    /// Number of basis rows, i.e. the dimension of the corresponding subtorus.
    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    /// The canonical HNF basis rows.
    pub fn basis(&self) -> &[Vec<i64>] {
        &self.basis
    }

    /// Exact membership test by back-substitution on the triangular basis.
    pub fn contains(&self, v: &[i64]) -> LatticeResult<bool> {
        if v.len() != self.ambient_rank {
            return Err(LatticeError::AmbientMismatch {
                left: v.len(),
                right: self.ambient_rank,
            });
        }
        let mut rem = v.to_vec();
        for row in &self.basis {
            let pc = row
                .iter()
                .position(|&x| x != 0)
                .expect("canonical basis has no zero rows");
            let p = row[pc];
            if rem[pc] % p != 0 {
                return Ok(false);
            }
            let a = rem[pc] / p;
            if a != 0 {
                for c in 0..rem.len() {
                    rem[c] = checked_sub(rem[c], checked_mul(a, row[c])?)?;
                }
            }
        }
        Ok(rem.iter().all(|&x| x == 0))
    }

    /// The saturation `L.Q ∩ Z^N`: smallest lattice containing `self` with
    /// torsion-free quotient. Computed from the right transform of the Smith
    /// normal form of the basis.
    pub fn saturate(&self) -> LatticeResult<IntegerLattice> {
        if self.basis.is_empty() {
            return Ok(self.clone());
        }
        let snf = smith(&self.basis, self.ambient_rank)?;
        debug_assert_eq!(snf.rank, self.basis.len());
        let rows: Vec<Vec<i64>> = snf.right_inv[..snf.rank]
            .iter()
            .map(|r| r.iter().map(|&x| narrow(x)).collect())
            .collect::<LatticeResult<_>>()?;
        hnf_canonical(self.ambient_rank, &rows)
    }

    /// The saturated lattice of all vectors pairing to zero with `self`.
    ///
    /// Computed as the integer kernel of the basis matrix via row reduction
    /// of the identity-augmented transpose; this shares no code with the
    /// Smith-normal-form route used by [`IntegerLattice::saturate`].
    pub fn annihilator(&self) -> LatticeResult<IntegerLattice> {
        if self.basis.is_empty() {
            return Ok(IntegerLattice::full(self.ambient_rank));
        }
        let n = self.ambient_rank;
        let r = self.basis.len();
        let mut rows: Vec<Vec<i128>> = (0..n)
            .map(|i| {
                let mut row = Vec::with_capacity(r + n);
                for b in &self.basis {
                    row.push(b[i] as i128);
                }
                row.resize(r + n, 0);
                row[r + i] = 1;
                row
            })
            .collect();
        let rank = hnf_in_place(&mut rows, r + n)?;
        let kernel_rows: Vec<Vec<i64>> = rows[..rank]
            .iter()
            .filter(|row| row[..r].iter().all(|&x| x == 0))
            .map(|row| row[r..].iter().map(|&x| narrow(x)).collect())
            .collect::<LatticeResult<_>>()?;
        hnf_canonical(n, &kernel_rows)
    }

    /// Nonzero elementary divisors of `Z^N / self`, in divisibility order.
    pub fn elementary_divisors(&self) -> LatticeResult<Vec<i64>> {
        if self.basis.is_empty() {
            return Ok(Vec::new());
        }
        smith(&self.basis, self.ambient_rank)?
            .diag
            .into_iter()
            .map(narrow)
            .collect()
    }
}

/// Lattice equality: canonical-basis identity. Mismatched ambient ranks are
/// an error rather than `false`.
pub fn lattice_equal(l1: &IntegerLattice, l2: &IntegerLattice) -> LatticeResult<bool> {
    if l1.ambient_rank != l2.ambient_rank {
        return Err(LatticeError::AmbientMismatch {
            left: l1.ambient_rank,
            right: l2.ambient_rank,
        });
    }
    Ok(l1.basis == l2.basis)
}

/// Membership of a vector in a lattice (free-function form of
/// [`IntegerLattice::contains`]).
pub fn lattice_contains(l: &IntegerLattice, v: &[i64]) -> LatticeResult<bool> {
    l.contains(v)
}

struct Smith {
    /// Positive diagonal entries `d_1 | d_2 | ...`, one per rank.
    diag: Vec<i128>,
    rank: usize,
    /// Inverse of the right transform `V` with `(row ops) . A . V` diagonal.
    right_inv: Vec<Vec<i128>>,
}

#[inline]
fn add128(a: i128, b: i128) -> LatticeResult<i128> {
    a.checked_add(b).ok_or(LatticeError::Overflow)
}

#[inline]
fn sub128(a: i128, b: i128) -> LatticeResult<i128> {
    a.checked_sub(b).ok_or(LatticeError::Overflow)
}

#[inline]
fn mul128(a: i128, b: i128) -> LatticeResult<i128> {
    a.checked_mul(b).ok_or(LatticeError::Overflow)
}

#[inline]
fn neg128(a: i128) -> LatticeResult<i128> {
    a.checked_neg().ok_or(LatticeError::Overflow)
}

fn row_sub_mul_128(mat: &mut [Vec<i128>], i: usize, j: usize, q: i128) -> LatticeResult<()> {
    if q == 0 {
        return Ok(());
    }
    debug_assert_ne!(i, j);
    for c in 0..mat[i].len() {
        let delta = mul128(q, mat[j][c])?;
        mat[i][c] = sub128(mat[i][c], delta)?;
    }
    Ok(())
}

fn narrow(v: i128) -> LatticeResult<i64> {
    i64::try_from(v).map_err(|_| LatticeError::Overflow)
}

/// Smith normal form of `rows` (an `m x n` integer matrix), tracking only the
/// inverse right transform: row operations do not change the row span and
/// are discarded. Internal arithmetic is checked `i128` for headroom against
/// transform growth.
fn smith(rows: &[Vec<i64>], n_cols: usize) -> LatticeResult<Smith> {
    let m = rows.len();
    let n = n_cols;
    let mut a: Vec<Vec<i128>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| x as i128).collect())
        .collect();
    let mut right_inv: Vec<Vec<i128>> = identity_matrix_128(n);

    // col_dst -= q * col_src on `a`; the inverse op on `right_inv`.
    macro_rules! col_sub_mul {
        ($dst:expr, $src:expr, $q:expr) => {{
            let (dst, src, q) = ($dst, $src, $q);
            if q != 0 {
                for r in 0..m {
                    let delta = mul128(q, a[r][src])?;
                    a[r][dst] = sub128(a[r][dst], delta)?;
                }
                // (E^-1 has +q): row_src += q * row_dst on the inverse.
                for c in 0..n {
                    let delta = mul128(q, right_inv[dst][c])?;
                    right_inv[src][c] = add128(right_inv[src][c], delta)?;
                }
            }
        }};
    }
    macro_rules! col_swap {
        ($i:expr, $j:expr) => {{
            let (i, j) = ($i, $j);
            if i != j {
                for r in 0..m {
                    a[r].swap(i, j);
                }
                right_inv.swap(i, j);
            }
        }};
    }
    macro_rules! col_neg {
        ($i:expr) => {{
            let i = $i;
            for r in 0..m {
                a[r][i] = neg128(a[r][i])?;
            }
            for c in 0..n {
                right_inv[i][c] = neg128(right_inv[i][c])?;
            }
        }};
    }

    let mut t;
    let mut restart_at = 0usize;
    'outer: loop {
        t = restart_at;
        while t < m && t < n {
            let mut best: Option<(usize, usize)> = None;
            for i in t..m {
                for j in t..n {
                    if a[i][j] != 0
                        && best.is_none_or(|(bi, bj)| {
                            a[i][j].unsigned_abs() < a[bi][bj].unsigned_abs()
                        })
                    {
                        best = Some((i, j));
                    }
                }
            }
            let Some((bi, bj)) = best else { break };
            a.swap(t, bi);
            col_swap!(t, bj);
            loop {
                // Clear column t with row ops.
                let mut col_clear = true;
                for i in t + 1..m {
                    if a[i][t] != 0 {
                        let q = a[i][t].div_euclid(a[t][t]);
                        row_sub_mul_128(&mut a, i, t, q)?;
                        if a[i][t] != 0 {
                            a.swap(i, t);
                            col_clear = false;
                        }
                    }
                }
                if !col_clear {
                    continue;
                }
                // Clear row t with col ops.
                let mut row_clear = true;
                for j in t + 1..n {
                    if a[t][j] != 0 {
                        let q = a[t][j].div_euclid(a[t][t]);
                        col_sub_mul!(j, t, q);
                        if a[t][j] != 0 {
                            col_swap!(t, j);
                            row_clear = false;
                        }
                    }
                }
                if !row_clear {
                    continue;
                }
                if (t + 1..m).any(|i| a[i][t] != 0) {
                    continue;
                }
                break;
            }
            t += 1;
        }
        // Normalize signs.
        let rank = t;
        for i in 0..rank {
            if a[i][i] < 0 {
                col_neg!(i);
            }
        }
        // Enforce the divisibility chain; a violation folds the offending
        // diagonal entry back in and re-runs from that position.
        for i in 0..rank.saturating_sub(1) {
            if a[i + 1][i + 1] % a[i][i] != 0 {
                for c in 0..n {
                    a[i][c] = add128(a[i][c], a[i + 1][c])?;
                }
                restart_at = i;
                continue 'outer;
            }
        }
        break;
    }

    let rank = t;
    let diag = (0..rank).map(|i| a[i][i]).collect();
    Ok(Smith {
        diag,
        rank,
        right_inv,
    })
}

fn identity_matrix(n: usize) -> Vec<Vec<i64>> {
    (0..n)
        .map(|i| {
            let mut row = vec![0i64; n];
            row[i] = 1;
            row
        })
        .collect()
}

fn identity_matrix_128(n: usize) -> Vec<Vec<i128>> {
    (0..n)
        .map(|i| {
            let mut row = vec![0i128; n];
            row[i] = 1;
            row
        })
        .collect()
}

/// An integer matrix representing a homomorphism of cocharacter lattices,
/// stored with one column per source basis vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeMap {
    source_rank: usize,
    target_rank: usize,
    /// `target_rank` rows by `source_rank` columns.
    matrix: Vec<Vec<i64>>,
}

impl LatticeMap {
    pub fn new(source_rank: usize, target_rank: usize, matrix: Vec<Vec<i64>>) -> LatticeResult<Self> {
        if matrix.len() != target_rank || matrix.iter().any(|r| r.len() != source_rank) {
            return Err(LatticeError::MapShape {
                rows: matrix.len(),
                cols: matrix.first().map_or(0, |r| r.len()),
                target_rank,
                source_rank,
            });
        }
        Ok(LatticeMap {
            source_rank,
            target_rank,
            matrix,
        })
    }

    pub fn identity(n: usize) -> Self {
        LatticeMap {
            source_rank: n,
            target_rank: n,
            matrix: identity_matrix(n),
        }
    }

    pub fn source_rank(&self) -> usize {
        self.source_rank
    }

    pub fn target_rank(&self) -> usize {
        self.target_rank
    }

    pub fn matrix(&self) -> &[Vec<i64>] {
        &self.matrix
    }

    /// Image of the `j`-th source basis vector.
    pub fn column(&self, j: usize) -> Vec<i64> {
        self.matrix.iter().map(|row| row[j]).collect()
    }

    pub fn apply(&self, v: &[i64]) -> LatticeResult<Vec<i64>> {
        if v.len() != self.source_rank {
            return Err(LatticeError::LengthMismatch {
                left: v.len(),
                right: self.source_rank,
            });
        }
        let mut out = vec![0i64; self.target_rank];
        for (i, row) in self.matrix.iter().enumerate() {
            let mut acc = 0i64;
            for (a, b) in row.iter().zip(v.iter()) {
                acc = checked_add(acc, checked_mul(*a, *b)?)?;
            }
            out[i] = acc;
        }
        Ok(out)
    }

    /// `self ∘ inner` as matrices.
    pub fn compose(&self, inner: &LatticeMap) -> LatticeResult<LatticeMap> {
        if self.source_rank != inner.target_rank {
            return Err(LatticeError::LengthMismatch {
                left: self.source_rank,
                right: inner.target_rank,
            });
        }
        let mut matrix = vec![vec![0i64; inner.source_rank]; self.target_rank];
        for i in 0..self.target_rank {
            for j in 0..inner.source_rank {
                let mut acc = 0i64;
                for k in 0..self.source_rank {
                    acc = checked_add(acc, checked_mul(self.matrix[i][k], inner.matrix[k][j])?)?;
                }
                matrix[i][j] = acc;
            }
        }
        Ok(LatticeMap {
            source_rank: inner.source_rank,
            target_rank: self.target_rank,
            matrix,
        })
    }

    /// The lattice spanned by the image of the full source lattice, i.e. the
    /// canonicalized column span.
    pub fn column_span(&self) -> LatticeResult<IntegerLattice> {
        let rows: Vec<Vec<i64>> = (0..self.source_rank).map(|j| self.column(j)).collect();
        hnf_canonical(self.target_rank, &rows)
    }

    pub fn transpose(&self) -> LatticeMap {
        let matrix = (0..self.source_rank)
            .map(|j| self.matrix.iter().map(|row| row[j]).collect())
            .collect();
        LatticeMap {
            source_rank: self.target_rank,
            target_rank: self.source_rank,
            matrix,
        }
    }
}

//! Matrices over the quaternions: Hadamard verification, equivalence moves,
//! circulant-core structure, and the complex/real adjoint constructions.
//!
//! Because quaternion multiplication is not commutative, factor order matters
//! everywhere: row inner products are `Σ_j h_ij · conj(h_kj)`, column inner
//! products are `Σ_i conj(h_ij) · h_il`, diagonal moves act on the named side,
//! and dephasing multiplies rows on the left before columns on the right.

use std::ops::{Index, IndexMut};

pub use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::quat::{group_conj, Quaternion};
use crate::Error;

/// Unit-norm tolerance for diagonal-move entries.
pub const DIAG_UNIT_TOL: f64 = 1e-9;

/// A dense square matrix with quaternion entries, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct QMatrix {
    order: usize,
    entries: Vec<Quaternion>,
}

impl QMatrix {
    /// Zero matrix of the given order.
    pub fn zeros(order: usize) -> QMatrix {
        QMatrix {
            order,
            entries: vec![Quaternion::ZERO; order * order],
        }
    }

    /// Identity matrix.
    pub fn identity(order: usize) -> QMatrix {
        let mut m = QMatrix::zeros(order);
        for i in 0..order {
            m[(i, i)] = Quaternion::ONE;
        }
        m
    }

    /// Builds an order-n matrix from `f(row, col)`.
    pub fn from_fn(order: usize, mut f: impl FnMut(usize, usize) -> Quaternion) -> QMatrix {
        let mut m = QMatrix::zeros(order);
        for i in 0..order {
            for j in 0..order {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    /// Builds a matrix from rows; fails unless the rows form a square.
    pub fn from_rows(rows: Vec<Vec<Quaternion>>) -> Result<QMatrix, Error> {
        let order = rows.len();
        for row in &rows {
            if row.len() != order {
                return Err(Error::Dimension {
                    expected: order,
                    found: row.len(),
                });
            }
        }
        Ok(QMatrix {
            order,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn entries(&self) -> &[Quaternion] {
        &self.entries
    }

    /// Conjugate transpose `H*`.
    pub fn adjoint(&self) -> QMatrix {
        QMatrix::from_fn(self.order, |i, j| self[(j, i)].conj())
    }

    /// Matrix product; fails on mismatched orders.
    pub fn mul(&self, rhs: &QMatrix) -> Result<QMatrix, Error> {
        if self.order != rhs.order {
            return Err(Error::Dimension {
                expected: self.order,
                found: rhs.order,
            });
        }
        Ok(QMatrix::from_fn(self.order, |i, j| {
            let mut s = Quaternion::ZERO;
            for k in 0..self.order {
                s = s + self[(i, k)] * rhs[(k, j)];
            }
            s
        }))
    }

    /// Entrywise scaling.
    pub fn scale(&self, s: f64) -> QMatrix {
        QMatrix {
            order: self.order,
            entries: self.entries.iter().map(|q| q.scale(s)).collect(),
        }
    }

    /// Largest entrywise distance to another matrix of the same order.
    pub fn max_dist(&self, other: &QMatrix) -> f64 {
        assert_eq!(self.order, other.order);
        self.entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a.dist(*b))
            .fold(0.0, f64::max)
    }

    /// Whether all entries match within `tol`.
    pub fn approx_eq(&self, other: &QMatrix, tol: f64) -> bool {
        self.order == other.order && self.max_dist(other) <= tol
    }
}

impl Index<(usize, usize)> for QMatrix {
    type Output = Quaternion;
    fn index(&self, (i, j): (usize, usize)) -> &Quaternion {
        &self.entries[i * self.order + j]
    }
}

impl IndexMut<(usize, usize)> for QMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Quaternion {
        &mut self.entries[i * self.order + j]
    }
}

// ── Hadamard verification ──────────────────────────────────────────────────

/// Deviations of a candidate from the Hadamard conditions.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    /// Largest `| |h_ij| − 1 |` over all entries.
    pub entry_norm_dev: f64,
    /// Largest off-diagonal `|(H* H)_jl|`, column inner products `Σ_i conj(h_ij) h_il`.
    pub gram_col_dev: f64,
    /// Largest off-diagonal `|(H H*)_ik|`, row inner products `Σ_j h_ij conj(h_kj)`.
    pub gram_row_dev: f64,
    /// Whether all three deviations are within `tolerance`.
    pub pass: bool,
    pub tolerance: f64,
}

impl VerificationReport {
    /// Largest of the three deviations.
    pub fn max_dev(&self) -> f64 {
        self.entry_norm_dev.max(self.gram_row_dev).max(self.gram_col_dev)
    }
}

/// Checks `H H* = n I` together with unit-norm entries.
///
/// Unit entries force the Gram diagonals to equal `n`, so the report tracks
/// the entry norms and the off-diagonal row/column inner products.
pub fn hadamard_check(h: &QMatrix, tolerance: f64) -> VerificationReport {
    let n = h.order();
    let mut entry_norm_dev: f64 = 0.0;
    for q in h.entries() {
        entry_norm_dev = entry_norm_dev.max((q.norm() - 1.0).abs());
    }
    let mut gram_row_dev: f64 = 0.0;
    let mut gram_col_dev: f64 = 0.0;
    for a in 0..n {
        for b in 0..n {
            if a == b {
                continue;
            }
            let mut row = Quaternion::ZERO;
            let mut col = Quaternion::ZERO;
            for t in 0..n {
                row = row + h[(a, t)] * h[(b, t)].conj();
                col = col + h[(t, a)].conj() * h[(t, b)];
            }
            gram_row_dev = gram_row_dev.max(row.norm());
            gram_col_dev = gram_col_dev.max(col.norm());
        }
    }
    let pass = entry_norm_dev <= tolerance && gram_row_dev <= tolerance && gram_col_dev <= tolerance;
    VerificationReport {
        entry_norm_dev,
        gram_col_dev,
        gram_row_dev,
        pass,
        tolerance,
    }
}

// ── Equivalence moves ──────────────────────────────────────────────────────

/// A Hadamard-preserving transformation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum EquivalenceMove {
    /// `new[i][j] = old[perm[i]][j]`.
    RowPermutation(Vec<usize>),
    /// `new[i][j] = old[i][perm[j]]`.
    ColPermutation(Vec<usize>),
    /// `new[i][j] = d[i] · old[i][j]` with unit `d[i]`.
    LeftDiagonal(Vec<Quaternion>),
    /// `new[i][j] = old[i][j] · d[j]` with unit `d[j]`.
    RightDiagonal(Vec<Quaternion>),
    /// Entrywise `u · old[i][j] · u⁻¹` (u normalized first).
    GlobalConjugation(Quaternion),
}

impl EquivalenceMove {
    /// The move undoing this one.
    pub fn inverse(&self) -> Result<EquivalenceMove, Error> {
        use EquivalenceMove::*;
        Ok(match self {
            RowPermutation(p) => RowPermutation(invert_permutation(p)?),
            ColPermutation(p) => ColPermutation(invert_permutation(p)?),
            LeftDiagonal(d) => {
                LeftDiagonal(d.iter().map(|q| q.inv()).collect::<Result<_, _>>()?)
            }
            RightDiagonal(d) => {
                RightDiagonal(d.iter().map(|q| q.inv()).collect::<Result<_, _>>()?)
            }
            GlobalConjugation(u) => GlobalConjugation(u.conj()),
        })
    }
}

fn check_permutation(p: &[usize]) -> Result<(), Error> {
    let mut seen = vec![false; p.len()];
    for &i in p {
        if i >= p.len() || seen[i] {
            return Err(Error::InvalidPermutation { len: p.len() });
        }
        seen[i] = true;
    }
    Ok(())
}

fn invert_permutation(p: &[usize]) -> Result<Vec<usize>, Error> {
    check_permutation(p)?;
    let mut inv = vec![0; p.len()];
    for (i, &pi) in p.iter().enumerate() {
        inv[pi] = i;
    }
    Ok(inv)
}

fn check_unit_diagonal(d: &[Quaternion]) -> Result<(), Error> {
    for (index, q) in d.iter().enumerate() {
        let norm = q.norm();
        if (norm - 1.0).abs() > DIAG_UNIT_TOL {
            return Err(Error::NonUnitDiagonal { index, norm });
        }
    }
    Ok(())
}

/// Applies an equivalence move, validating its shape first.
pub fn apply_move(h: &QMatrix, mv: &EquivalenceMove) -> Result<QMatrix, Error> {
    let n = h.order();
    let expect_len = |len: usize| -> Result<(), Error> {
        if len != n {
            Err(Error::Dimension {
                expected: n,
                found: len,
            })
        } else {
            Ok(())
        }
    };
    match mv {
        EquivalenceMove::RowPermutation(p) => {
            expect_len(p.len())?;
            check_permutation(p)?;
            Ok(QMatrix::from_fn(n, |i, j| h[(p[i], j)]))
        }
        EquivalenceMove::ColPermutation(p) => {
            expect_len(p.len())?;
            check_permutation(p)?;
            Ok(QMatrix::from_fn(n, |i, j| h[(i, p[j])]))
        }
        EquivalenceMove::LeftDiagonal(d) => {
            expect_len(d.len())?;
            check_unit_diagonal(d)?;
            Ok(QMatrix::from_fn(n, |i, j| d[i] * h[(i, j)]))
        }
        EquivalenceMove::RightDiagonal(d) => {
            expect_len(d.len())?;
            check_unit_diagonal(d)?;
            Ok(QMatrix::from_fn(n, |i, j| h[(i, j)] * d[j]))
        }
        EquivalenceMove::GlobalConjugation(u) => {
            let un = u.normalized()?;
            Ok(QMatrix::from_fn(n, |i, j| {
                group_conj(un, h[(i, j)]).expect("u was normalized above")
            }))
        }
    }
}

/// Normalizes the first row and column to 1.
///
/// Multiplies each row `i` on the left by `inv(h_i1)`, then each column `j`
/// on the right by the inverse of the updated `h_1j`; returns the dephased
/// matrix together with the two diagonal moves that were applied (so applying
/// both moves to the input reproduces the output, and applying their inverses
/// to the output recovers the input). Fails if the first column or first row
/// contains a zero entry.
pub fn dephase(h: &QMatrix) -> Result<(QMatrix, EquivalenceMove, EquivalenceMove), Error> {
    let n = h.order();
    let mut left = Vec::with_capacity(n);
    for i in 0..n {
        left.push(h[(i, 0)].inv().map_err(|_| Error::ZeroEntry { row: i, col: 0 })?);
    }
    let left = EquivalenceMove::LeftDiagonal(left);
    let step = apply_move(h, &left)?;
    let mut right = Vec::with_capacity(n);
    for j in 0..n {
        right.push(step[(0, j)].inv().map_err(|_| Error::ZeroEntry { row: 0, col: j })?);
    }
    let right = EquivalenceMove::RightDiagonal(right);
    let out = apply_move(&step, &right)?;
    Ok((out, left, right))
}

// ── Circulant cores ────────────────────────────────────────────────────────

/// Builds the order-`m+1` matrix with all-ones border and circulant core:
/// core row `i` is the right cyclic shift of row `i − 1`, starting from
/// `core_row`.
pub fn circulant_from_row(core_row: &[Quaternion]) -> QMatrix {
    let m = core_row.len();
    QMatrix::from_fn(m + 1, |i, j| {
        if i == 0 || j == 0 {
            Quaternion::ONE
        } else {
            core_row[(j + m - i) % m]
        }
    })
}

/// Whether a dephased matrix has a circulant core: all-ones border and each
/// core row the right cyclic shift of the one above, within `tol`.
pub fn is_circulant_core(h: &QMatrix, tol: f64) -> bool {
    let n = h.order();
    if n < 2 {
        return true;
    }
    for t in 0..n {
        if !h[(0, t)].approx_eq(Quaternion::ONE, tol) || !h[(t, 0)].approx_eq(Quaternion::ONE, tol)
        {
            return false;
        }
    }
    let m = n - 1;
    for i in 1..m {
        for j in 0..m {
            if !h[(1 + i, 1 + j)].approx_eq(h[(i, 1 + (j + m - 1) % m)], tol) {
                return false;
            }
        }
    }
    true
}

/// Whether all entry pairs commute within `tol` (equivalently, all imaginary
/// parts are pairwise parallel), so the matrix is conjugal to a complex one.
pub fn commuting_core_test(h: &QMatrix, tol: f64) -> bool {
    let e = h.entries();
    for (i, p) in e.iter().enumerate() {
        for q in &e[i + 1..] {
            if (*p * *q - *q * *p).norm() > tol {
                return false;
            }
        }
    }
    true
}

// ── Complex and real matrices ──────────────────────────────────────────────

/// Dense square complex matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    order: usize,
    entries: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn zeros(order: usize) -> ComplexMatrix {
        ComplexMatrix {
            order,
            entries: vec![Complex64::ZERO; order * order],
        }
    }

    pub fn identity(order: usize) -> ComplexMatrix {
        let mut m = ComplexMatrix::zeros(order);
        for i in 0..order {
            m[(i, i)] = Complex64::ONE;
        }
        m
    }

    pub fn from_fn(order: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> ComplexMatrix {
        let mut m = ComplexMatrix::zeros(order);
        for i in 0..order {
            for j in 0..order {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Complex64>>) -> Result<ComplexMatrix, Error> {
        let order = rows.len();
        for row in &rows {
            if row.len() != order {
                return Err(Error::Dimension {
                    expected: order,
                    found: row.len(),
                });
            }
        }
        Ok(ComplexMatrix {
            order,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> ComplexMatrix {
        ComplexMatrix::from_fn(self.order, |i, j| self[(j, i)].conj())
    }

    pub fn mul(&self, rhs: &ComplexMatrix) -> Result<ComplexMatrix, Error> {
        if self.order != rhs.order {
            return Err(Error::Dimension {
                expected: self.order,
                found: rhs.order,
            });
        }
        Ok(ComplexMatrix::from_fn(self.order, |i, j| {
            (0..self.order).map(|k| self[(i, k)] * rhs[(k, j)]).sum()
        }))
    }

    pub fn scale(&self, s: f64) -> ComplexMatrix {
        ComplexMatrix {
            order: self.order,
            entries: self.entries.iter().map(|c| c * s).collect(),
        }
    }

    pub fn max_dist(&self, other: &ComplexMatrix) -> f64 {
        assert_eq!(self.order, other.order);
        self.entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Largest deviation from the complex Hadamard conditions
    /// (unit entries, orthogonal rows).
    pub fn hadamard_dev(&self) -> f64 {
        let n = self.order;
        let mut dev: f64 = 0.0;
        for c in &self.entries {
            dev = dev.max((c.norm() - 1.0).abs());
        }
        for a in 0..n {
            for b in 0..n {
                if a != b {
                    let s: Complex64 = (0..n).map(|t| self[(a, t)] * self[(b, t)].conj()).sum();
                    dev = dev.max(s.norm());
                }
            }
        }
        dev
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.entries[i * self.order + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.entries[i * self.order + j]
    }
}

/// Dense square real matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct RealMatrix {
    order: usize,
    entries: Vec<f64>,
}

impl RealMatrix {
    pub fn zeros(order: usize) -> RealMatrix {
        RealMatrix {
            order,
            entries: vec![0.0; order * order],
        }
    }

    pub fn from_fn(order: usize, mut f: impl FnMut(usize, usize) -> f64) -> RealMatrix {
        let mut m = RealMatrix::zeros(order);
        for i in 0..order {
            for j in 0..order {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<f64>>) -> Result<RealMatrix, Error> {
        let order = rows.len();
        for row in &rows {
            if row.len() != order {
                return Err(Error::Dimension {
                    expected: order,
                    found: row.len(),
                });
            }
        }
        Ok(RealMatrix {
            order,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn max_dist(&self, other: &RealMatrix) -> f64 {
        assert_eq!(self.order, other.order);
        self.entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }

    /// Largest deviation from the real Hadamard conditions
    /// (±1 entries, orthogonal rows).
    pub fn hadamard_dev(&self) -> f64 {
        let n = self.order;
        let mut dev: f64 = 0.0;
        for v in &self.entries {
            dev = dev.max((v.abs() - 1.0).abs());
        }
        for a in 0..n {
            for b in 0..n {
                if a != b {
                    let s: f64 = (0..n).map(|t| self[(a, t)] * self[(b, t)]).sum();
                    dev = dev.max(s.abs());
                }
            }
        }
        dev
    }
}

impl Index<(usize, usize)> for RealMatrix {
    type Output = f64;
    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        &self.entries[i * self.order + j]
    }
}

impl IndexMut<(usize, usize)> for RealMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut f64 {
        &mut self.entries[i * self.order + j]
    }
}

// ── Adjoints and lifts ─────────────────────────────────────────────────────

// Block layout of the real adjoint: block (r, c) holds `sign · A_comp` for
// the `(comp, sign)` entry below, where A = A₀ + A₁ı + A₂ȷ + A₃κ.
const PSI_PATTERN: [[(usize, f64); 4]; 4] = [
    [(0, 1.0), (1, 1.0), (2, -1.0), (3, 1.0)],
    [(1, 1.0), (0, -1.0), (3, -1.0), (2, -1.0)],
    [(2, 1.0), (3, -1.0), (0, 1.0), (1, 1.0)],
    [(3, 1.0), (2, 1.0), (1, 1.0), (0, -1.0)],
];

fn quat_component(q: Quaternion, comp: usize) -> f64 {
    match comp {
        0 => q.w,
        1 => q.x,
        2 => q.y,
        _ => q.z,
    }
}

/// Complex adjoint: writing `A = A₀ + A₁ ȷ` with complex blocks `A₀, A₁`,
/// returns the `2n × 2n` matrix `[[A₀, A₁], [−conj(A₁), conj(A₀)]]`.
pub fn complex_adjoint(a: &QMatrix) -> ComplexMatrix {
    let n = a.order();
    ComplexMatrix::from_fn(2 * n, |i, j| {
        let q = a[(i % n, j % n)];
        let a0 = Complex64::new(q.w, q.x);
        let a1 = Complex64::new(q.y, q.z);
        match (i / n, j / n) {
            (0, 0) => a0,
            (0, 1) => a1,
            (1, 0) => -a1.conj(),
            _ => a0.conj(),
        }
    })
}

/// Real adjoint: writing `A = A₀ + A₁ı + A₂ȷ + A₃κ` with real blocks,
/// returns the `4n × 4n` block matrix
/// `[[A₀, A₁, −A₂, A₃], [A₁, −A₀, −A₃, −A₂], [A₂, −A₃, A₀, A₁], [A₃, A₂, A₁, −A₀]]`.
pub fn real_adjoint(a: &QMatrix) -> RealMatrix {
    let n = a.order();
    RealMatrix::from_fn(4 * n, |i, j| {
        let (comp, sign) = PSI_PATTERN[i / n][j / n];
        sign * quat_component(a[(i % n, j % n)], comp)
    })
}

/// Largest deviation of `m` from the complex-adjoint block pattern.
fn complex_compliance_dev(m: &ComplexMatrix) -> Result<f64, Error> {
    if m.order() % 2 != 0 {
        return Err(Error::IncompatibleOrder {
            order: m.order(),
            required: 2,
        });
    }
    let n = m.order() / 2;
    let mut dev: f64 = 0.0;
    for i in 0..n {
        for j in 0..n {
            dev = dev.max((m[(n + i, j)] + m[(i, n + j)].conj()).norm());
            dev = dev.max((m[(n + i, n + j)] - m[(i, j)].conj()).norm());
        }
    }
    Ok(dev)
}

/// Largest deviation of `m` from the real-adjoint block pattern.
fn real_compliance_dev(m: &RealMatrix) -> Result<f64, Error> {
    if m.order() % 4 != 0 {
        return Err(Error::IncompatibleOrder {
            order: m.order(),
            required: 4,
        });
    }
    let n = m.order() / 4;
    // Read off A₀..A₃ from the first block row, then compare every block.
    let comp_block = |comp: usize, i: usize, j: usize| -> f64 {
        let (c, sign) = PSI_PATTERN[0][comp];
        debug_assert_eq!(c, comp);
        sign * m[(i, comp * n + j)]
    };
    let mut dev: f64 = 0.0;
    for (r, row) in PSI_PATTERN.iter().enumerate() {
        for (c, &(comp, sign)) in row.iter().enumerate() {
            for i in 0..n {
                for j in 0..n {
                    dev = dev.max((m[(r * n + i, c * n + j)] - sign * comp_block(comp, i, j)).abs());
                }
            }
        }
    }
    Ok(dev)
}

/// Whether an even-order complex matrix matches the complex-adjoint block
/// pattern within `tol`; fails on odd order.
pub fn compliance_check_complex(m: &ComplexMatrix, tol: f64) -> Result<bool, Error> {
    Ok(complex_compliance_dev(m)? <= tol)
}

/// Whether an order-divisible-by-4 real matrix matches the real-adjoint
/// block pattern within `tol`; fails otherwise.
pub fn compliance_check_real(m: &RealMatrix, tol: f64) -> Result<bool, Error> {
    Ok(real_compliance_dev(m)? <= tol)
}

/// Lifts a compliant complex Hadamard matrix of order `2n` to a quaternionic
/// Hadamard matrix of order `n`.
///
/// Reads `A₀` (top-left) and `A₁` (top-right) and returns `(1/√2)(A₀ + A₁ȷ)`.
pub fn lift_from_complex(m: &ComplexMatrix, tol: f64) -> Result<QMatrix, Error> {
    let dev = m.hadamard_dev();
    if dev > tol {
        return Err(Error::NotHadamard { max_dev: dev });
    }
    let cdev = complex_compliance_dev(m)?;
    if cdev > tol {
        return Err(Error::NotCompliant { max_dev: cdev });
    }
    let n = m.order() / 2;
    let a = QMatrix::from_fn(n, |i, j| {
        let a0 = m[(i, j)];
        let a1 = m[(i, n + j)];
        Quaternion::new(a0.re, a0.im, a1.re, a1.im)
    });
    Ok(a.scale(1.0 / 2f64.sqrt()))
}

/// Lifts a compliant real Hadamard matrix of order `4n` to a quaternionic
/// Hadamard matrix of order `n`.
///
/// Reads `A₀..A₃` from the first block row (undoing the `−A₂` sign) and
/// returns `(1/2)(A₀ + A₁ı + A₂ȷ + A₃κ)`.
pub fn lift_from_real(m: &RealMatrix, tol: f64) -> Result<QMatrix, Error> {
    let dev = m.hadamard_dev();
    if dev > tol {
        return Err(Error::NotHadamard { max_dev: dev });
    }
    let cdev = real_compliance_dev(m)?;
    if cdev > tol {
        return Err(Error::NotCompliant { max_dev: cdev });
    }
    let n = m.order() / 4;
    let a = QMatrix::from_fn(n, |i, j| {
        Quaternion::new(
            m[(i, j)],
            m[(i, n + j)],
            -m[(i, 2 * n + j)],
            m[(i, 3 * n + j)],
        )
    });
    Ok(a.scale(0.5))
}

// ── Tests ──────────────────────────────────────────────────────────────────

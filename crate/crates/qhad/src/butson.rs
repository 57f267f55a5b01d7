//! Root-of-unity structure of quaternionic matrices.
//!
//! A matrix is *Butson-type* for modulus `r` when every entry is an `r`-th
//! root of unity. Quaternionic roots of unity need not share an axis; when
//! they do, [`q_axis`] recovers the common axis and
//! [`q_type_conjugate_to_complex`] produces the group conjugation that moves
//! the whole matrix into the complex plane.
//!
//! [`bh45_emptiness`] runs the exhaustive row-sum search showing that no
//! order-5 row over fourth roots of unity on a single axis can sum to zero,
//! so no Butson-type matrix with a common axis exists at `(5, 4)`.

use serde::Serialize;

use crate::qmat::QMatrix;
use crate::quat::{cross3, dot3, norm3, normalize_to_complex, Quaternion};
use crate::Error;

/// Largest root order probed by [`butson_profile`].
pub const DEFAULT_R_MAX: u32 = 24;

/// Whether `q^r = 1` within `tol`. Fails for `r = 0`.
pub fn is_root_of_unity(q: Quaternion, r: u32, tol: f64) -> Result<bool, Error> {
    if r == 0 {
        return Err(Error::NonPositive { name: "r" });
    }
    let mut p = q;
    for _ in 1..r {
        p = p * q;
    }
    Ok(p.approx_eq(Quaternion::ONE, tol))
}

fn entry_order(q: Quaternion, r_max: u32, tol: f64) -> Option<u32> {
    let mut p = Quaternion::ONE;
    for r in 1..=r_max {
        p = p * q;
        if p.approx_eq(Quaternion::ONE, tol) {
            return Some(r);
        }
    }
    None
}

/// Root-of-unity structure of a matrix.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ButsonProfile {
    /// Smallest `r ≤ r_max` with every entry an `r`-th root of unity, if any.
    pub minimal_r: Option<u32>,
    /// Smallest order of each entry individually (`None` where no order
    /// `≤ r_max` exists).
    pub per_entry_order: Vec<Vec<Option<u32>>>,
    /// Common imaginary axis of all non-real entries, if one exists.
    pub q_axis: Option<Quaternion>,
}

/// Computes per-entry root orders, their least common multiple, and the
/// shared axis (if any).
pub fn butson_profile(h: &QMatrix, r_max: u32, tol: f64) -> ButsonProfile {
    let n = h.order();
    let per_entry_order: Vec<Vec<Option<u32>>> = (0..n)
        .map(|i| (0..n).map(|j| entry_order(h[(i, j)], r_max, tol)).collect())
        .collect();
    let mut minimal_r = Some(1u32);
    for row in &per_entry_order {
        for &ord in row {
            minimal_r = match (minimal_r, ord) {
                (Some(m), Some(o)) => {
                    let l = lcm(m, o);
                    (l <= r_max).then_some(l)
                }
                _ => None,
            };
        }
    }
    ButsonProfile {
        minimal_r,
        per_entry_order,
        q_axis: q_axis(h, tol),
    }
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: u32, b: u32) -> u32 {
    a / gcd(a, b) * b
}

/// Angular slack allowed when deciding that imaginary parts share an axis.
const AXIS_ALIGN_TOL: f64 = 1e-6;

/// Common unit imaginary axis of all non-real entries, up to overall sign.
///
/// Returns `None` when the matrix is entirely real or when some imaginary
/// parts point along genuinely different lines. The reported axis is
/// sign-aligned with the first non-real entry encountered.
pub fn q_axis(h: &QMatrix, tol: f64) -> Option<Quaternion> {
    common_axis(h.entries(), tol)
}

/// [`q_axis`] over a plain slice of entries.
pub fn common_axis(entries: &[Quaternion], tol: f64) -> Option<Quaternion> {
    let mut reference: Option<[f64; 3]> = None;
    let mut accum = [0.0f64; 3];
    let mut count = 0usize;
    for q in entries {
        let v = q.im_vec();
        let nv = norm3(v);
        if nv <= tol {
            continue;
        }
        let unit = [v[0] / nv, v[1] / nv, v[2] / nv];
        let aligned = match reference {
            None => {
                reference = Some(unit);
                unit
            }
            Some(r) => {
                // Angle between the lines (sign-insensitive).
                let sin_dev = norm3(cross3(r, unit)).clamp(-1.0, 1.0).asin();
                if sin_dev > AXIS_ALIGN_TOL || !sin_dev.is_finite() {
                    return None;
                }
                if dot3(r, unit) < 0.0 {
                    [-unit[0], -unit[1], -unit[2]]
                } else {
                    unit
                }
            }
        };
        for (a, u) in accum.iter_mut().zip(aligned) {
            *a += u;
        }
        count += 1;
    }
    if count == 0 {
        return None;
    }
    let n = norm3(accum);
    Some(Quaternion::pure(accum[0] / n, accum[1] / n, accum[2] / n))
}

/// Conjugator `u` with `u h_ij u⁻¹` complex for all entries, when the matrix
/// is of *q-type* (all imaginary parts on one axis).
///
/// Returns `Some(1)` for a matrix that is already complex, `Some(u)` when a
/// shared axis exists, and `None` otherwise.
pub fn q_type_conjugate_to_complex(h: &QMatrix, tol: f64) -> Option<Quaternion> {
    if h.entries().iter().all(|q| q.is_complex(tol)) {
        return Some(Quaternion::ONE);
    }
    q_axis(h, tol).map(normalize_to_complex)
}

// ── Row-sum enumeration over single-axis roots of unity ────────────────────

/// Result of enumerating length-`len` rows over the `r`-th roots of unity on
/// one axis, looking for rows that sum to zero (the first orthogonality
/// condition a dephased Hadamard row must satisfy).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RowSumEnumeration {
    pub modulus: u32,
    pub len: usize,
    /// Number of exponent tuples examined (`r^(len−1)`; the leading entry is
    /// fixed to 1 by dephasing).
    pub candidates: u64,
    /// Exponent tuples (including the leading 0) whose row sums to zero.
    pub zero_sum_rows: Vec<Vec<u32>>,
}

/// Enumerates all dephased rows of length `len` over `r`-th roots of unity
/// `exp_axis(ı, 2πk/r)` and records those summing to zero within `tol`.
pub fn enumerate_root_rows(modulus: u32, len: usize, tol: f64) -> Result<RowSumEnumeration, Error> {
    if modulus == 0 {
        return Err(Error::NonPositive { name: "modulus" });
    }
    if len == 0 {
        return Err(Error::NonPositive { name: "len" });
    }
    let roots: Vec<Quaternion> = (0..modulus)
        .map(|k| {
            let t = std::f64::consts::TAU * k as f64 / modulus as f64;
            Quaternion::complex(t.cos(), t.sin())
        })
        .collect();
    let free = len - 1;
    let total = (modulus as u64).pow(free as u32);
    let mut zero_sum_rows = Vec::new();
    let mut exponents = vec![0u32; len];
    for idx in 0..total {
        let mut rem = idx;
        for e in exponents[1..].iter_mut() {
            *e = (rem % modulus as u64) as u32;
            rem /= modulus as u64;
        }
        let sum = exponents
            .iter()
            .fold(Quaternion::ZERO, |acc, &e| acc + roots[e as usize]);
        if sum.norm() <= tol {
            zero_sum_rows.push(exponents.clone());
        }
    }
    Ok(RowSumEnumeration {
        modulus,
        len,
        candidates: total,
        zero_sum_rows,
    })
}

/// Outcome of the `(5, 4)` single-axis emptiness search.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Bh45Report {
    /// Exponent tuples examined (4⁴ = 256).
    pub candidates: u64,
    /// Rows that summed to zero (always 0).
    pub valid_rows: u64,
    /// Why the search must come up empty.
    pub explanation: String,
}

/// Exhaustively checks that no length-5 row over fourth roots of unity on a
/// single axis sums to zero, so no dephased order-5 Hadamard matrix over
/// such roots exists.
pub fn bh45_emptiness() -> Bh45Report {
    let enumeration =
        enumerate_root_rows(4, 5, 1e-9).expect("modulus and length are positive");
    Bh45Report {
        candidates: enumeration.candidates,
        valid_rows: enumeration.zero_sum_rows.len() as u64,
        explanation: "Fourth roots of unity on one axis are ±1 and ±q. A zero row sum needs \
                      the real parts (each ±1 or 0) and the axis parts (each 0 or ±1) to cancel \
                      separately, which forces an even count of entries in each class; five \
                      entries cannot split into two even classes."
            .to_string(),
    }
}

// ── Tests ──────────────────────────────────────────────────────────────────

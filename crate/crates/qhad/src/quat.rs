//! Quaternion arithmetic and the rotation lemmas used throughout the crate.
//!
//! Quaternions are written `w + xı + yȷ + zκ` with the Hamilton convention
//! `ı² = ȷ² = κ² = −1` and `ıȷ = κ`. Group conjugation `q ↦ u q u⁻¹` fixes
//! the real part and rotates the imaginary part; the `normalize_*` functions
//! construct explicit conjugators that bring one or two quaternions into
//! standard position inside the complex plane `span{1, ı}`.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::Error;

/// Tolerance for the unit-pure-axis precondition of [`exp_axis`].
pub const AXIS_TOL: f64 = 1e-12;

/// Relative cutoff below which two imaginary parts count as collinear.
const COLLINEAR_TOL: f64 = 1e-12;

/// A quaternion `w + xı + yȷ + zκ` over `f64`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Quaternion {
    pub w: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Quaternion {
    pub const ZERO: Quaternion = Quaternion::new(0.0, 0.0, 0.0, 0.0);
    pub const ONE: Quaternion = Quaternion::new(1.0, 0.0, 0.0, 0.0);
    pub const I: Quaternion = Quaternion::new(0.0, 1.0, 0.0, 0.0);
    pub const J: Quaternion = Quaternion::new(0.0, 0.0, 1.0, 0.0);
    pub const K: Quaternion = Quaternion::new(0.0, 0.0, 0.0, 1.0);

    pub const fn new(w: f64, x: f64, y: f64, z: f64) -> Quaternion {
        Quaternion { w, x, y, z }
    }

    /// Embeds a real number.
    pub const fn real(w: f64) -> Quaternion {
        Quaternion::new(w, 0.0, 0.0, 0.0)
    }

    /// A pure quaternion `xı + yȷ + zκ`.
    pub const fn pure(x: f64, y: f64, z: f64) -> Quaternion {
        Quaternion::new(0.0, x, y, z)
    }

    /// A complex number `w + xı` inside the quaternions.
    pub const fn complex(w: f64, x: f64) -> Quaternion {
        Quaternion::new(w, x, 0.0, 0.0)
    }

    /// Real part.
    pub fn re(self) -> f64 {
        self.w
    }

    /// Imaginary part as a pure quaternion.
    pub fn im(self) -> Quaternion {
        Quaternion::pure(self.x, self.y, self.z)
    }

    /// Imaginary part as a 3-vector `[x, y, z]`.
    pub fn im_vec(self) -> [f64; 3] {
        [self.x, self.y, self.z]
    }

    /// Conjugate `w − xı − yȷ − zκ`.
    pub fn conj(self) -> Quaternion {
        Quaternion::new(self.w, -self.x, -self.y, -self.z)
    }

    /// Squared norm `w² + x² + y² + z²`.
    pub fn norm_sq(self) -> f64 {
        self.w * self.w + self.x * self.x + self.y * self.y + self.z * self.z
    }

    /// Euclidean norm.
    pub fn norm(self) -> f64 {
        self.norm_sq().sqrt()
    }

    /// Multiplicative inverse `conj(q) / |q|²`.
    ///
    /// Fails on the zero quaternion.
    pub fn inv(self) -> Result<Quaternion, Error> {
        let n = self.norm_sq();
        if n == 0.0 {
            return Err(Error::NotInvertible);
        }
        Ok(self.conj() / n)
    }

    /// `self / |self|`; fails on the zero quaternion.
    pub fn normalized(self) -> Result<Quaternion, Error> {
        let n = self.norm();
        if n == 0.0 {
            return Err(Error::NotInvertible);
        }
        Ok(self / n)
    }

    /// Distance `|self − other|`.
    pub fn dist(self, other: Quaternion) -> f64 {
        (self - other).norm()
    }

    /// Componentwise comparison within `tol`.
    pub fn approx_eq(self, other: Quaternion, tol: f64) -> bool {
        self.dist(other) <= tol
    }

    /// Whether the imaginary part vanishes within `tol`.
    pub fn is_real(self, tol: f64) -> bool {
        self.x.abs() <= tol && self.y.abs() <= tol && self.z.abs() <= tol
    }

    /// Whether the `ȷ` and `κ` components vanish within `tol`.
    pub fn is_complex(self, tol: f64) -> bool {
        self.y.abs() <= tol && self.z.abs() <= tol
    }

    pub fn scale(self, s: f64) -> Quaternion {
        Quaternion::new(self.w * s, self.x * s, self.y * s, self.z * s)
    }
}

// ── Operators ──────────────────────────────────────────────────────────────

impl Add for Quaternion {
    type Output = Quaternion;
    fn add(self, r: Quaternion) -> Quaternion {
        Quaternion::new(self.w + r.w, self.x + r.x, self.y + r.y, self.z + r.z)
    }
}

impl Sub for Quaternion {
    type Output = Quaternion;
    fn sub(self, r: Quaternion) -> Quaternion {
        Quaternion::new(self.w - r.w, self.x - r.x, self.y - r.y, self.z - r.z)
    }
}

impl Neg for Quaternion {
    type Output = Quaternion;
    fn neg(self) -> Quaternion {
        Quaternion::new(-self.w, -self.x, -self.y, -self.z)
    }
}

impl Mul for Quaternion {
    type Output = Quaternion;
    /// Hamilton product (`ıȷ = κ`).
    fn mul(self, r: Quaternion) -> Quaternion {
        Quaternion::new(
            self.w * r.w - self.x * r.x - self.y * r.y - self.z * r.z,
            self.w * r.x + self.x * r.w + self.y * r.z - self.z * r.y,
            self.w * r.y - self.x * r.z + self.y * r.w + self.z * r.x,
            self.w * r.z + self.x * r.y - self.y * r.x + self.z * r.w,
        )
    }
}

impl Mul<f64> for Quaternion {
    type Output = Quaternion;
    fn mul(self, s: f64) -> Quaternion {
        self.scale(s)
    }
}

impl Mul<Quaternion> for f64 {
    type Output = Quaternion;
    fn mul(self, q: Quaternion) -> Quaternion {
        q.scale(self)
    }
}

impl Div<f64> for Quaternion {
    type Output = Quaternion;
    fn div(self, s: f64) -> Quaternion {
        self.scale(1.0 / s)
    }
}

impl fmt::Display for Quaternion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.w)?;
        for (c, name) in [(self.x, "i"), (self.y, "j"), (self.z, "k")] {
            if c < 0.0 {
                write!(f, " - {}{name}", -c)?;
            } else {
                write!(f, " + {c}{name}")?;
            }
        }
        Ok(())
    }
}

// Serialized as the 4-array `[w, x, y, z]`.
impl Serialize for Quaternion {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        [self.w, self.x, self.y, self.z].serialize(s)
    }
}

impl<'de> Deserialize<'de> for Quaternion {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Quaternion, D::Error> {
        let [w, x, y, z] = <[f64; 4]>::deserialize(d)?;
        for c in [w, x, y, z] {
            if !c.is_finite() {
                return Err(D::Error::custom("non-finite quaternion component"));
            }
        }
        Ok(Quaternion::new(w, x, y, z))
    }
}

// ── 3-vector helpers ───────────────────────────────────────────────────────

const EX: [f64; 3] = [1.0, 0.0, 0.0];
const EZ: [f64; 3] = [0.0, 0.0, 1.0];

pub(crate) fn dot3(a: [f64; 3], b: [f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

pub(crate) fn cross3(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

pub(crate) fn norm3(a: [f64; 3]) -> f64 {
    dot3(a, a).sqrt()
}

fn scale3(a: [f64; 3], s: f64) -> [f64; 3] {
    [a[0] * s, a[1] * s, a[2] * s]
}

/// Unit quaternion rotating by `angle` about the unit axis `[x, y, z]`
/// (right-hand rule, applied as `u q u⁻¹`).
fn rotor(axis: [f64; 3], angle: f64) -> Quaternion {
    let (s, c) = (angle / 2.0).sin_cos();
    Quaternion::new(c, s * axis[0], s * axis[1], s * axis[2])
}

/// Image of the 3-vector `v` under conjugation by the unit quaternion `u`.
fn rotate3(u: Quaternion, v: [f64; 3]) -> [f64; 3] {
    (u * Quaternion::pure(v[0], v[1], v[2]) * u.conj()).im_vec()
}

// ── Group conjugation and standard position ────────────────────────────────

/// Group conjugation `u q u⁻¹` (with `u` normalized first).
///
/// Fixes `Re(q)` and `|q|`, and rotates `Im(q)`. Fails when `u = 0`.
pub fn group_conj(u: Quaternion, q: Quaternion) -> Result<Quaternion, Error> {
    let un = u.normalized()?;
    Ok(un * q * un.conj())
}

/// Whether `q` and `r` lie in the same conjugation orbit: equal real parts
/// and equal imaginary norms, both within `tol`.
pub fn conjugal(q: Quaternion, r: Quaternion, tol: f64) -> bool {
    (q.re() - r.re()).abs() <= tol && (norm3(q.im_vec()) - norm3(r.im_vec())).abs() <= tol
}

/// A unit `u` with `u q u⁻¹ = Re(q) + |Im(q)| ı`.
///
/// Already-complex input with nonnegative `ı` part (and real input) returns
/// `u = 1`; input with `Im(q)` opposite to `ı` rotates by π about `ȷ`.
pub fn normalize_to_complex(q: Quaternion) -> Quaternion {
    let v = q.im_vec();
    let n = norm3(v);
    if n == 0.0 {
        return Quaternion::ONE;
    }
    let c = scale3(v, 1.0 / n);
    let cx = cross3(c, EX);
    let s = norm3(cx);
    if s == 0.0 {
        return if c[0] > 0.0 {
            Quaternion::ONE
        } else {
            Quaternion::J
        };
    }
    rotor(scale3(cx, 1.0 / s), s.atan2(c[0]))
}

/// A unit `u` aligning a pair at once: `u q u⁻¹` is complex with nonnegative
/// `ı` part, and `u r u⁻¹` has no `κ` component.
///
/// Built from two rotations: the first carries the plane spanned by `Im(q)`
/// and `Im(r)` onto the `ı`–`ȷ` plane about their intersection line (taking
/// the intersection direction with nonnegative `ı` component), the second
/// spins about `κ` to land `Im(q)` on the positive `ı` axis. Degenerate
/// cases: both imaginary parts zero gives `u = 1`; `Im(q) = 0` aligns `Im(r)`
/// alone; collinear imaginary parts reduce to [`normalize_to_complex`].
pub fn normalize_pair(q: Quaternion, r: Quaternion) -> Quaternion {
    let v = q.im_vec();
    let w = r.im_vec();
    let nv = norm3(v);
    let nw = norm3(w);
    if nv == 0.0 && nw == 0.0 {
        return Quaternion::ONE;
    }
    if nv == 0.0 {
        return normalize_to_complex(r);
    }
    let n = cross3(v, w);
    let nn = norm3(n);
    if nn <= COLLINEAR_TOL * nv * nw {
        return normalize_to_complex(q);
    }
    let nz = scale3(n, 1.0 / nn);
    let a = cross3(nz, EZ);
    let s = norm3(a);
    let u1 = if s == 0.0 {
        Quaternion::ONE
    } else {
        let mut axis = scale3(a, 1.0 / s);
        let mut angle = s.atan2(nz[2]);
        if axis[0] < 0.0 {
            axis = scale3(axis, -1.0);
            angle = -angle;
        }
        rotor(axis, angle)
    };
    let v1 = rotate3(u1, v);
    let u2 = rotor(EZ, -v1[1].atan2(v1[0]));
    u2 * u1
}

/// `cos θ + q sin θ` for a unit pure axis `q` — the exponential of `qθ`.
///
/// Fails unless `|q| = 1` and `Re(q) = 0` within [`AXIS_TOL`].
pub fn exp_axis(q: Quaternion, theta: f64) -> Result<Quaternion, Error> {
    if (q.norm() - 1.0).abs() > AXIS_TOL || q.re().abs() > AXIS_TOL {
        return Err(Error::NotUnitPure {
            norm: q.norm(),
            re: q.re(),
        });
    }
    let (s, c) = theta.sin_cos();
    Ok(Quaternion::real(c) + q.im().scale(s))
}

/// Unit pure quaternion with spherical coordinates `(θ, φ)`:
/// `cos θ sin φ ı + sin θ sin φ ȷ + cos φ κ`.
pub fn sphere_axis(theta: f64, phi: f64) -> Quaternion {
    Quaternion::pure(
        theta.cos() * phi.sin(),
        theta.sin() * phi.sin(),
        phi.cos(),
    )
}

// ── Tests ──────────────────────────────────────────────────────────────────

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const EPS: f64 = 1e-12;

    fn q(w: f64, x: f64, y: f64, z: f64) -> Quaternion {
        Quaternion::new(w, x, y, z)
    }

    #[test]
    fn hamilton_multiplication_table() {
        use Quaternion as Q;
        assert_eq!(Q::I * Q::I, -Q::ONE);
        assert_eq!(Q::J * Q::J, -Q::ONE);
        assert_eq!(Q::K * Q::K, -Q::ONE);
        assert_eq!(Q::I * Q::J, Q::K);
        assert_eq!(Q::J * Q::K, Q::I);
        assert_eq!(Q::K * Q::I, Q::J);
        assert_eq!(Q::J * Q::I, -Q::K);
        assert_eq!(Q::I * Q::J * Q::K, -Q::ONE);
    }

    #[test]
    fn product_is_order_sensitive() {
        let p = q(2.0, 1.0, 0.0, 0.0);
        let r = q(3.0, 0.0, -1.0, 0.0);
        assert!((p * r).approx_eq(q(6.0, 3.0, -2.0, -1.0), EPS));
        assert!((r * p).approx_eq(q(6.0, 3.0, -2.0, 1.0), EPS));
    }

    #[test]
    fn inverse_examples() {
        assert!(Quaternion::ONE.inv().unwrap().approx_eq(Quaternion::ONE, EPS));
        assert!(Quaternion::I.inv().unwrap().approx_eq(-Quaternion::I, EPS));
        let p = q(2.0, 1.0, 0.0, 0.0);
        assert!(p.inv().unwrap().approx_eq(q(0.4, -0.2, 0.0, 0.0), EPS));
        assert!((p * p.inv().unwrap()).approx_eq(Quaternion::ONE, EPS));
        assert_eq!(Quaternion::ZERO.inv(), Err(Error::NotInvertible));
    }

    #[test]
    fn group_conj_fixes_reals_and_rotates() {
        let u = q(1.0, 0.0, 1.0, 0.0); // normalized internally
        assert!(group_conj(u, q(-0.5, 0.0, 0.0, 0.0))
            .unwrap()
            .approx_eq(q(-0.5, 0.0, 0.0, 0.0), EPS));
        // ((1+ȷ)/√2) ı ((1−ȷ)/√2) = −κ
        assert!(group_conj(u, Quaternion::I)
            .unwrap()
            .approx_eq(-Quaternion::K, EPS));
        assert_eq!(group_conj(Quaternion::ZERO, Quaternion::I), Err(Error::NotInvertible));
    }

    #[test]
    fn conjugal_examples() {
        assert!(conjugal(Quaternion::I, Quaternion::K, EPS));
        assert!(!conjugal(Quaternion::I, -Quaternion::ONE, EPS));
    }

    #[test]
    fn normalize_to_complex_examples() {
        // Already complex with nonnegative ı part.
        assert_eq!(normalize_to_complex(q(2.0, 3.0, 0.0, 0.0)), Quaternion::ONE);
        // Real input.
        assert_eq!(normalize_to_complex(Quaternion::real(5.0)), Quaternion::ONE);
        // κ rotates onto ı by a quarter turn about ȷ.
        let u = normalize_to_complex(Quaternion::K);
        assert!(group_conj(u, Quaternion::K).unwrap().approx_eq(Quaternion::I, EPS));
        // Negative ı axis flips by a half turn about ȷ.
        let v = normalize_to_complex(q(0.0, -5.0, 0.0, 0.0));
        assert_eq!(v, Quaternion::J);
        assert!(group_conj(v, q(0.0, -5.0, 0.0, 0.0))
            .unwrap()
            .approx_eq(q(0.0, 5.0, 0.0, 0.0), EPS));
    }

    #[test]
    fn normalize_pair_example() {
        let u = normalize_pair(Quaternion::K, Quaternion::J);
        let qq = group_conj(u, Quaternion::K).unwrap();
        let rr = group_conj(u, Quaternion::J).unwrap();
        assert!(qq.approx_eq(Quaternion::I, EPS));
        assert!(rr.z.abs() <= EPS);
    }

    #[test]
    fn normalize_pair_degenerate_cases() {
        // Both real.
        assert_eq!(normalize_pair(Quaternion::real(1.0), Quaternion::real(-2.0)), Quaternion::ONE);
        // First real: second still lands in the ı–ȷ plane.
        let u = normalize_pair(Quaternion::real(1.0), Quaternion::K);
        assert!(group_conj(u, Quaternion::K).unwrap().z.abs() <= EPS);
        // Collinear imaginary parts: one rotation handles both.
        let p = q(0.3, 1.0, 2.0, -1.0);
        let r = q(-0.7, -2.0, -4.0, 2.0);
        let u = normalize_pair(p, r);
        let pp = group_conj(u, p).unwrap();
        let rr = group_conj(u, r).unwrap();
        assert!(pp.is_complex(EPS) && pp.x >= -EPS);
        assert!(rr.z.abs() <= EPS);
    }

    #[test]
    fn exp_axis_examples() {
        assert!(exp_axis(Quaternion::I, 0.0).unwrap().approx_eq(Quaternion::ONE, EPS));
        let half = std::f64::consts::FRAC_PI_2;
        assert!(exp_axis(Quaternion::I, half).unwrap().approx_eq(Quaternion::I, EPS));
        assert!(exp_axis(q(0.0, 2.0, 0.0, 0.0), 1.0).is_err());
        assert!(exp_axis(q(0.5, 1.0, 0.0, 0.0), 1.0).is_err());
    }

    #[test]
    fn exp_axis_de_moivre() {
        let axis = sphere_axis(0.7, 1.1);
        let w = exp_axis(axis, 0.3).unwrap();
        let mut p = Quaternion::ONE;
        for _ in 0..5 {
            p = p * w;
        }
        assert!(p.approx_eq(exp_axis(axis, 1.5).unwrap(), 1e-13));
    }

    #[test]
    fn exponentials_on_distinct_axes_do_not_combine() {
        // exp(ıα) exp(ȷβ) is not the exponential of ıα + ȷβ.
        let a = exp_axis(Quaternion::I, 0.9).unwrap();
        let b = exp_axis(Quaternion::J, 0.4).unwrap();
        let v = Quaternion::pure(0.9, 0.4, 0.0);
        let nv = v.norm();
        let combined = Quaternion::real(nv.cos()) + v.scale(nv.sin() / nv);
        assert!((a * b).dist(combined) > 1e-3);
    }

    #[test]
    fn sphere_axis_examples() {
        let half = std::f64::consts::FRAC_PI_2;
        assert!(sphere_axis(0.0, half).approx_eq(Quaternion::I, EPS));
        assert!(sphere_axis(half, half).approx_eq(Quaternion::J, EPS));
        assert!(sphere_axis(0.0, 0.0).approx_eq(Quaternion::K, EPS));
    }

    // ── Property tests ─────────────────────────────────────────────────────

    fn arb_quat() -> impl Strategy<Value = Quaternion> {
        let c = -3.0..3.0f64;
        (c.clone(), c.clone(), c.clone(), c).prop_map(|(w, x, y, z)| q(w, x, y, z))
    }

    fn arb_nonzero_quat() -> impl Strategy<Value = Quaternion> {
        arb_quat().prop_filter("nonzero", |p| p.norm() > 1e-3)
    }

    proptest! {
        #[test]
        fn norm_is_multiplicative(p in arb_quat(), r in arb_quat()) {
            prop_assert!(((p * r).norm() - p.norm() * r.norm()).abs() <= 1e-10);
        }

        #[test]
        fn conj_reverses_products(p in arb_quat(), r in arb_quat()) {
            prop_assert!((p * r).conj().approx_eq(r.conj() * p.conj(), 1e-10));
        }

        #[test]
        fn square_identity(p in arb_quat()) {
            // q² = Re(q)² − |Im(q)|² + 2 Re(q) Im(q)
            let im = p.im();
            let expect = Quaternion::real(p.re() * p.re() - im.norm_sq()) + im.scale(2.0 * p.re());
            prop_assert!((p * p).approx_eq(expect, 1e-10));
        }

        #[test]
        fn group_conj_preserves_re_and_norm(u in arb_nonzero_quat(), p in arb_quat()) {
            let c = group_conj(u, p).unwrap();
            prop_assert!((c.re() - p.re()).abs() <= 1e-10);
            prop_assert!((c.norm() - p.norm()).abs() <= 1e-10);
            prop_assert!(conjugal(c, p, 1e-10));
        }

        #[test]
        fn normalize_to_complex_postcondition(p in arb_quat()) {
            let u = normalize_to_complex(p);
            prop_assert!((u.norm() - 1.0).abs() <= 1e-12);
            let c = group_conj(u, p).unwrap();
            prop_assert!(c.is_complex(1e-12));
            prop_assert!(c.x >= -1e-12);
            prop_assert!((c.re() - p.re()).abs() <= 1e-12);
        }

        #[test]
        fn normalize_pair_postcondition(p in arb_quat(), r in arb_quat()) {
            let u = normalize_pair(p, r);
            prop_assert!((u.norm() - 1.0).abs() <= 1e-12);
            let pp = group_conj(u, p).unwrap();
            let rr = group_conj(u, r).unwrap();
            prop_assert!(pp.is_complex(1e-10));
            prop_assert!(pp.x >= -1e-10);
            prop_assert!(rr.z.abs() <= 1e-10);
        }
    }
}

//! Parametric families of quaternionic Hadamard matrices.
//!
//! Each generator returns a matrix that passes [`hadamard_check`] at machine
//! precision throughout its parameter domain:
//!
//! - [`fourier_quat`]: order-`n` Fourier-type matrix on an arbitrary axis,
//! - [`order3`]: all order-3 circulant-core matrices (a 2-sphere),
//! - [`order4_generic`]: a 3-parameter order-4 construction,
//! - [`order5_sphere`]: order-5 circulant cores with two complex entries,
//! - [`order5_oneparam`]: order-5 circulant cores with one complex entry,
//! - [`order5_noncirculant`]: order-5 matrices over fourth roots of unity
//!   whose core is symmetric rather than circulant.
//!
//! [`hadamard_check`]: crate::qmat::hadamard_check

use std::f64::consts::TAU;
use std::fmt;
use std::str::FromStr;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::qmat::{circulant_from_row, QMatrix};
use crate::quat::{exp_axis, sphere_axis, Quaternion};
use crate::Error;

/// Admissible range of the one-parameter family: `(−1−√5)/4 ≤ a₀ ≤ (−1+√5)/4`.
pub fn oneparam_a0_range() -> (f64, f64) {
    let s5 = 5f64.sqrt();
    ((-1.0 - s5) / 4.0, (-1.0 + s5) / 4.0)
}

/// A sign branch (`+` or `-`).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn factor(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }

    pub fn of(v: f64) -> Sign {
        if v < 0.0 {
            Sign::Minus
        } else {
            Sign::Plus
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

impl FromStr for Sign {
    type Err = String;
    fn from_str(s: &str) -> Result<Sign, String> {
        match s {
            "+" | "plus" => Ok(Sign::Plus),
            "-" | "minus" => Ok(Sign::Minus),
            other => Err(format!("expected '+' or '-', got '{other}'")),
        }
    }
}

impl Serialize for Sign {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Sign {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Sign, D::Error> {
        String::deserialize(d)?.parse().map_err(D::Error::custom)
    }
}

/// Which root of the defining quadratic the one-parameter family uses for
/// the `ı` component of its first core entry.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum RootChoice {
    /// The root with the larger resulting `ȷ` component (nonzero throughout
    /// the interior of the parameter range).
    #[default]
    Principal,
    /// The other root; at `a₀ = −1/4` its `ȷ` component vanishes and the
    /// matrix reduces to a two-complex-entry core.
    Degenerate,
}

impl fmt::Display for RootChoice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RootChoice::Principal => "principal",
            RootChoice::Degenerate => "degenerate",
        })
    }
}

impl FromStr for RootChoice {
    type Err = String;
    fn from_str(s: &str) -> Result<RootChoice, String> {
        match s {
            "principal" => Ok(RootChoice::Principal),
            "degenerate" => Ok(RootChoice::Degenerate),
            other => Err(format!("expected 'principal' or 'degenerate', got '{other}'")),
        }
    }
}

// ── Generators ─────────────────────────────────────────────────────────────

/// Fourier-type matrix of order `n` on the axis with spherical coordinates
/// `(θ, φ)`: entry `(j, k)` is `exp_axis(q, 2π j k / n)`.
///
/// Every such matrix is the entrywise conjugate `u Fₙ u⁻¹` of the complex
/// Fourier matrix. Fails for `n = 0`.
pub fn fourier_quat(n: usize, theta: f64, phi: f64) -> Result<QMatrix, Error> {
    if n == 0 {
        return Err(Error::NonPositive { name: "n" });
    }
    let q = sphere_axis(theta, phi);
    Ok(QMatrix::from_fn(n, |j, k| {
        exp_axis(q, ((j * k) % n) as f64 * TAU / n as f64)
            .expect("sphere_axis returns a unit pure quaternion")
    }))
}

/// Order-3 circulant-core matrix: core row `(a, conj(a))` with
/// `a = −1/2 + (√3/2)(cos θ sin φ ı + sin θ sin φ ȷ + cos φ κ)`.
pub fn order3(theta: f64, phi: f64) -> QMatrix {
    let a = Quaternion::real(-0.5) + sphere_axis(theta, phi).scale(3f64.sqrt() / 2.0);
    circulant_from_row(&[a, a.conj()])
}

/// Order-4 matrix from the three-parameter construction.
///
/// With `a = cos θ sin φ + sin θ sin φ ı + cos φ ȷ`, `x = cos γ ı + sin γ ȷ`,
/// and `â` the complex part of `a`, the rows are
/// `(1, 1, 1, 1)`, `(1, a, b, −1−a−b)`, `(1, c, d, −1−c−d)`,
/// `(1, −1−a−c, −1−b−d, 1+a+b+c+d)` where
/// `b = ((1+â)/|1+â| ı)²`, `c = (x (1+a)/|1+a|)²`, `d = (x (1+â)/|1+â| ı)²`.
///
/// Fails where the construction degenerates (`a = −1`).
pub fn order4_generic(theta: f64, phi: f64, gamma: f64) -> Result<QMatrix, Error> {
    let one = Quaternion::ONE;
    let a = Quaternion::new(theta.cos() * phi.sin(), theta.sin() * phi.sin(), phi.cos(), 0.0);
    let a_hat = Quaternion::complex(a.w, a.x);
    let x = Quaternion::pure(gamma.cos(), gamma.sin(), 0.0);
    let na = (one + a).norm();
    if na <= 1e-12 {
        return Err(Error::DegenerateFamilyPoint("a = -1 in the order-4 construction"));
    }
    let u = (one + a_hat) / (one + a_hat).norm();
    let v = (one + a) / na;
    let sq = |q: Quaternion| q * q;
    let b = sq(u * Quaternion::I);
    let c = sq(x * v);
    let d = sq(x * u * Quaternion::I);
    QMatrix::from_rows(vec![
        vec![one, one, one, one],
        vec![one, a, b, -(one + a + b)],
        vec![one, c, d, -(one + c + d)],
        vec![one, -(one + a + c), -(one + b + d), one + a + b + c + d],
    ])
}

/// Core row `(a, conj(a), c, conj(c))` of [`order5_sphere`].
pub fn order5_sphere_core(t: f64, sign_a: Sign) -> [Quaternion; 4] {
    let s = sign_a.factor();
    let a = Quaternion::complex(-0.25, s * (15f64 / 16.0).sqrt());
    let r = (5f64 / 6.0).sqrt();
    let c = Quaternion::new(-0.25, -s * (5f64 / 48.0).sqrt(), r * t.cos(), r * t.sin());
    [a, a.conj(), c, c.conj()]
}

/// Order-5 circulant-core matrix with two complex entries: core row
/// `(a, conj(a), c, conj(c))` with `a = −1/4 ± √(15/16) ı` (sign `sign_a`)
/// and `c = −1/4 ∓ √(5/48) ı + √(5/6)(cos t ȷ + sin t κ)`.
///
/// Varying `t` moves through a single conjugation orbit: it spins `Im(c)`
/// about the `ı` axis while fixing `a`.
pub fn order5_sphere(t: f64, sign_a: Sign) -> QMatrix {
    circulant_from_row(&order5_sphere_core(t, sign_a))
}

/// Core row `(a, b, c, d)` of the one-parameter order-5 family; see
/// [`order5_oneparam`].
pub fn order5_oneparam_core(
    a0: f64,
    sign_d: Sign,
    root: RootChoice,
) -> Result<[Quaternion; 4], Error> {
    let (min, max) = oneparam_a0_range();
    if !(a0 >= min - 1e-12 && a0 <= max + 1e-12) {
        return Err(Error::ParamOutOfRange {
            name: "a0",
            value: a0,
            min,
            max,
        });
    }
    let b0 = -0.5 - a0;
    let b1 = ((1.0 - 2.0 * a0) * (3.0 + 2.0 * a0)).sqrt() / 2.0;
    let d1 = -(1.0 + 4.0 * a0 * a0) / (4.0 * b1);
    if (d1 - b1).abs() <= 1e-12 {
        return Err(Error::DegenerateFamilyPoint("b1 = d1 in the order-5 core"));
    }
    // |d| = 1 with d₀ = b₀ leaves d₂² = b₁² − d₁²; roundoff at the endpoints
    // of the range may drive the radicand a hair negative.
    let d2_sq = b1 * b1 - d1 * d1;
    if d2_sq < -1e-9 {
        return Err(Error::DegenerateFamilyPoint("negative radicand for d2"));
    }
    let d2 = sign_d.factor() * d2_sq.max(0.0).sqrt();
    let k = d2 / (d1 - b1);
    // |a| = 1 after substituting a₂ = k(a₁ + b₁):
    // (1 + k²) a₁² + 2k²b₁ a₁ + (a₀² + k²b₁² − 1) = 0.
    let qa = 1.0 + k * k;
    let qb = 2.0 * k * k * b1;
    let qc = a0 * a0 + k * k * b1 * b1 - 1.0;
    let disc = qb * qb - 4.0 * qa * qc;
    if disc < -1e-9 {
        return Err(Error::DegenerateFamilyPoint("negative discriminant for a1"));
    }
    let sqrt_disc = disc.max(0.0).sqrt();
    let r_plus = (-qb + sqrt_disc) / (2.0 * qa);
    let r_minus = (-qb - sqrt_disc) / (2.0 * qa);
    let a2_of = |a1: f64| k * (a1 + b1);
    let (principal, degenerate) = if a2_of(r_plus).abs() >= a2_of(r_minus).abs() {
        (r_plus, r_minus)
    } else {
        (r_minus, r_plus)
    };
    let a1 = match root {
        RootChoice::Principal => principal,
        RootChoice::Degenerate => degenerate,
    };
    let a = Quaternion::new(a0, a1, a2_of(a1), 0.0);
    let b = Quaternion::complex(b0, b1);
    let d = Quaternion::new(b0, d1, d2, 0.0);
    let c = -(Quaternion::ONE + a + b + d);
    Ok([a, b, c, d])
}

/// Order-5 circulant-core matrix with one complex entry.
///
/// The core row is `(a, b, c, d)` with `b = −1/2 − a₀ + b₁ı` complex,
/// `a = a₀ + a₁ı + a₂ȷ`, `d = −1/2 − a₀ + d₁ı + d₂ȷ`, `c = −1 − a − b − d`,
/// where `b₁ = √((1−2a₀)(3+2a₀))/2`, `d₁ = −(1+4a₀²)/(4b₁)`,
/// `d₂ = ±√(b₁² − d₁²)` (sign `sign_d`), `a₂ = (a₁+b₁)d₂/(d₁−b₁)`, and `a₁`
/// solves the unit-norm quadratic for `a` (branch `root`). At the endpoints
/// of the `a₀` range the `ȷ` components vanish and the matrix is complex;
/// at `a₀ = −1/4` it reproduces [`order5_sphere`] up to a core rotation.
pub fn order5_oneparam(a0: f64, sign_d: Sign, root: RootChoice) -> Result<QMatrix, Error> {
    Ok(circulant_from_row(&order5_oneparam_core(a0, sign_d, root)?))
}

/// Order-5 matrix over fourth roots of unity with symmetric (non-circulant)
/// core pattern.
///
/// Core entries: `a = ı`, `c = −1`, `b = −(1/2)ı + (√3/2)(cos t ȷ + sin t κ)`,
/// `d = −(1/2)ı − (√3/2)(cos t ȷ + sin t κ)`, arranged as
/// `(a,b,c,d) / (b,a,d,c) / (c,d,a,b) / (d,c,b,a)`.
pub fn order5_noncirculant(t: f64) -> QMatrix {
    let one = Quaternion::ONE;
    let r = 3f64.sqrt() / 2.0;
    let a = Quaternion::I;
    let b = Quaternion::pure(-0.5, r * t.cos(), r * t.sin());
    let c = -one;
    let d = Quaternion::pure(-0.5, -r * t.cos(), -r * t.sin());
    QMatrix::from_rows(vec![
        vec![one, one, one, one, one],
        vec![one, a, b, c, d],
        vec![one, b, a, d, c],
        vec![one, c, d, a, b],
        vec![one, d, c, b, a],
    ])
    .expect("rows are square by construction")
}

// ── Closed-form diagnostic for the one-parameter family ────────────────────

/// Comparison of the quadratic-based `(a₁, a₂)` pairs against the direct
/// closed-form expressions for them.
///
/// The closed forms drift off the unit sphere for parts of the parameter
/// range (they are inconsistent with the defining equations, e.g. at
/// `a₀ = −1/4`), so they are kept only as a diagnostic; generation always
/// uses the quadratic.
#[derive(Debug, Clone, PartialEq)]
pub struct ClosedFormDiagnostic {
    /// `(a₁, a₂)` from the quadratic: `[principal, degenerate]`.
    pub quadratic: [(f64, f64); 2],
    /// `(a₁, a₂)` from the closed forms, one per matched sign choice.
    pub closed_form: [(f64, f64); 2],
    /// Worst `| |a| − 1 |` over the closed-form pairs.
    pub closed_form_unit_defect: f64,
}

/// Evaluates both the quadratic roots and the closed-form `(a₁, a₂)`
/// expressions at `a0`, reporting how far the closed forms leave the unit
/// sphere. Fails outside the admissible `a₀` range.
pub fn oneparam_closed_form_diagnostic(
    a0: f64,
    sign_d: Sign,
) -> Result<ClosedFormDiagnostic, Error> {
    let core_p = order5_oneparam_core(a0, sign_d, RootChoice::Principal)?;
    let core_d = order5_oneparam_core(a0, sign_d, RootChoice::Degenerate)?;
    let quadratic = [(core_p[0].x, core_p[0].y), (core_d[0].x, core_d[0].y)];

    let mut closed_form = [(0.0, 0.0); 2];
    let mut closed_form_unit_defect: f64 = 0.0;
    for (slot, s) in [1.0f64, -1.0].into_iter().enumerate() {
        let a1 = ((1.0 - 2.0 * a0).sqrt() * (-1.0 + 2.0 * a0 + 4.0 * a0 * a0)
            + s * (2.0 * (3.0 + 2.0 * a0) * (1.0 - 3.0 * a0 + 2.0 * a0 * a0)).sqrt())
            / (2.0 * (a0 - 1.0) * (3.0 + 2.0 * a0).sqrt());
        let a2 = (-s * (1.0 - a0) * (2.0 - 4.0 * a0).sqrt()
            + ((3.0 + 2.0 * a0) * (1.0 - 3.0 * a0 + 2.0 * a0 * a0)).sqrt())
            / (2.0 * (1.0 - a0) * (1.0 - 2.0 * a0).sqrt());
        closed_form[slot] = (a1, a2);
        let norm = (a0 * a0 + a1 * a1 + a2 * a2).sqrt();
        closed_form_unit_defect = closed_form_unit_defect.max((norm - 1.0).abs());
    }
    Ok(ClosedFormDiagnostic {
        quadratic,
        closed_form,
        closed_form_unit_defect,
    })
}

// ── Family points ──────────────────────────────────────────────────────────

/// A named family together with a parameter assignment; the unit the CLI
/// generates and scans over.
#[derive(Debug, Clone, PartialEq)]
pub enum FamilyPoint {
    Fourier { n: usize, theta: f64, phi: f64 },
    Order3 { theta: f64, phi: f64 },
    Order4Generic { theta: f64, phi: f64, gamma: f64 },
    Order5Sphere { t: f64, sign_a: Sign },
    Order5OneParam { a0: f64, sign_d: Sign, root: RootChoice },
    Order5NonCirculant { t: f64 },
}

impl FamilyPoint {
    /// The family identifier used by the CLI.
    pub fn family_name(&self) -> &'static str {
        match self {
            FamilyPoint::Fourier { .. } => "fourier",
            FamilyPoint::Order3 { .. } => "order3",
            FamilyPoint::Order4Generic { .. } => "order4-generic",
            FamilyPoint::Order5Sphere { .. } => "order5-sphere",
            FamilyPoint::Order5OneParam { .. } => "order5-oneparam",
            FamilyPoint::Order5NonCirculant { .. } => "order5-noncirc",
        }
    }

    /// Real-valued parameters in declaration order.
    pub fn params(&self) -> Vec<(&'static str, f64)> {
        match *self {
            FamilyPoint::Fourier { n, theta, phi } => {
                vec![("n", n as f64), ("theta", theta), ("phi", phi)]
            }
            FamilyPoint::Order3 { theta, phi } => vec![("theta", theta), ("phi", phi)],
            FamilyPoint::Order4Generic { theta, phi, gamma } => {
                vec![("theta", theta), ("phi", phi), ("gamma", gamma)]
            }
            FamilyPoint::Order5Sphere { t, .. } => vec![("t", t)],
            FamilyPoint::Order5OneParam { a0, .. } => vec![("a0", a0)],
            FamilyPoint::Order5NonCirculant { t } => vec![("t", t)],
        }
    }

    pub fn generate(&self) -> Result<QMatrix, Error> {
        match *self {
            FamilyPoint::Fourier { n, theta, phi } => fourier_quat(n, theta, phi),
            FamilyPoint::Order3 { theta, phi } => Ok(order3(theta, phi)),
            FamilyPoint::Order4Generic { theta, phi, gamma } => {
                order4_generic(theta, phi, gamma)
            }
            FamilyPoint::Order5Sphere { t, sign_a } => Ok(order5_sphere(t, sign_a)),
            FamilyPoint::Order5OneParam { a0, sign_d, root } => {
                order5_oneparam(a0, sign_d, root)
            }
            FamilyPoint::Order5NonCirculant { t } => Ok(order5_noncirculant(t)),
        }
    }
}

// ── Tests ──────────────────────────────────────────────────────────────────

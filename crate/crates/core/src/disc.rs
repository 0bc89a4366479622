//! Automorphisms of the unit disc, the Poincaré distance and metric, and
//! two-point Schwarz–Pick interpolation.
//!
//! Every disc automorphism is stored in the canonical form
//! `z ↦ e^{iθ}(z − a)/(1 − āz)` with `θ ∈ [0, 2π)` and `|a| < 1`. Composition
//! and inversion go through the 2×2 matrix representation and are brought
//! back to canonical form, so two transforms that agree as maps compare equal
//! up to rounding.

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::datum::{Domain, HolomorphicMap};
use crate::error::{Error, Result};

/// Points with modulus in `[1 − BOUNDARY_GUARD, 1]` are rejected.
pub const BOUNDARY_GUARD: f64 = 1e-12;

/// Absolute tolerance used for equality preconditions unless overridden.
pub const DEFAULT_TOL: f64 = 1e-9;

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };
const ONE: Complex64 = Complex64 { re: 1.0, im: 0.0 };
const ZERO: Complex64 = Complex64 { re: 0.0, im: 0.0 };

pub(crate) fn is_finite(z: Complex64) -> bool {
    z.re.is_finite() && z.im.is_finite()
}

/// Rejects non-finite values and points inside the boundary guard band.
pub fn check_disc(z: Complex64) -> Result<()> {
    if !is_finite(z) {
        return Err(Error::DomainViolation(format!("non-finite value {z}")));
    }
    if z.norm() >= 1.0 - BOUNDARY_GUARD {
        return Err(Error::DomainViolation(format!(
            "|{z}| = {} is not inside the unit disc",
            z.norm()
        )));
    }
    Ok(())
}

/// `|(z1 − z2)/(1 − z̄2 z1)|`, the pseudo-hyperbolic distance.
pub fn pseudo_hyperbolic(z1: Complex64, z2: Complex64) -> f64 {
    ((z1 - z2) / (ONE - z2.conj() * z1)).norm()
}

/// Poincaré distance `tanh⁻¹ |(z1 − z2)/(1 − z̄2 z1)|`.
pub fn poincare_distance(z1: Complex64, z2: Complex64) -> Result<f64> {
    check_disc(z1)?;
    check_disc(z2)?;
    Ok(pseudo_hyperbolic(z1, z2).atanh())
}

/// Poincaré metric `|v| / (1 − |z|²)`.
pub fn poincare_metric(z: Complex64, v: Complex64) -> Result<f64> {
    check_disc(z)?;
    if !is_finite(v) {
        return Err(Error::DomainViolation(format!("non-finite tangent {v}")));
    }
    Ok(v.norm() / (1.0 - z.norm_sqr()))
}

/// Deterministic sunflower grid of `n` points filling the disc of radius
/// `radius`. Used wherever a fixed interior sample of the disc is needed.
pub fn disc_grid(n: usize, radius: f64) -> Vec<Complex64> {
    let golden_angle = PI * (3.0 - 5f64.sqrt());
    (0..n)
        .map(|j| {
            let r = radius * ((j as f64 + 0.5) / n as f64).sqrt();
            Complex64::from_polar(r, j as f64 * golden_angle)
        })
        .collect()
}

fn normalize_angle(theta: f64) -> f64 {
    let t = theta.rem_euclid(TAU);
    // rem_euclid can return TAU itself for tiny negative inputs
    if t >= TAU {
        0.0
    } else {
        t
    }
}

/// Circular distance between two angles.
pub fn angle_distance(a: f64, b: f64) -> f64 {
    let d = (a - b).rem_euclid(TAU);
    d.min(TAU - d)
}

/// Disc automorphism `z ↦ e^{iθ}(z − a)/(1 − āz)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Moebius {
    theta: f64,
    #[serde(with = "crate::json::complex")]
    a: Complex64,
}

impl Moebius {
    pub const IDENTITY: Moebius = Moebius {
        theta: 0.0,
        a: ZERO,
    };

    pub fn new(theta: f64, a: Complex64) -> Result<Self> {
        if !theta.is_finite() || !is_finite(a) {
            return Err(Error::InvalidParameter(
                "non-finite Möbius parameter".into(),
            ));
        }
        if a.norm() >= 1.0 {
            return Err(Error::InvalidParameter(format!(
                "Möbius zero {a} must lie in the open disc"
            )));
        }
        Ok(Self {
            theta: normalize_angle(theta),
            a,
        })
    }

    /// Rotation `z ↦ e^{iθ} z`.
    pub fn rotation(theta: f64) -> Self {
        Self {
            theta: normalize_angle(theta),
            a: ZERO,
        }
    }

    /// The Blaschke factor `z ↦ (z − a)/(1 − āz)` sending `a` to 0.
    pub fn blaschke(a: Complex64) -> Result<Self> {
        Self::new(0.0, a)
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn a(&self) -> Complex64 {
        self.a
    }

    pub fn is_identity(&self, tol: f64) -> bool {
        self.approx_eq(&Self::IDENTITY, tol)
    }

    /// Matrix `[[A, B], [C, D]]` of the map `(Az + B)/(Cz + D)`.
    fn matrix(&self) -> [Complex64; 4] {
        let u = Complex64::from_polar(1.0, self.theta);
        [u, -u * self.a, -self.a.conj(), ONE]
    }

    /// Canonicalizes a matrix that represents a disc automorphism.
    fn from_matrix([a, b, _c, d]: [Complex64; 4]) -> Self {
        let zero = -b / a;
        let rot = a / d;
        Self {
            theta: normalize_angle(rot.arg()),
            a: zero,
        }
    }

    pub fn apply(&self, z: Complex64) -> Result<Complex64> {
        check_disc(z)?;
        Ok(self.eval_unchecked(z))
    }

    /// Evaluates without the domain guard; the formula is valid on the closed disc.
    pub fn eval_unchecked(&self, z: Complex64) -> Complex64 {
        Complex64::from_polar(1.0, self.theta) * (z - self.a) / (ONE - self.a.conj() * z)
    }

    /// `m′(z) = e^{iθ}(1 − |a|²)/(1 − āz)²`.
    pub fn derivative(&self, z: Complex64) -> Complex64 {
        let den = ONE - self.a.conj() * z;
        Complex64::from_polar(1.0, self.theta) * (1.0 - self.a.norm_sqr()) / (den * den)
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &Moebius) -> Moebius {
        let [a1, b1, c1, d1] = self.matrix();
        let [a2, b2, c2, d2] = inner.matrix();
        Self::from_matrix([
            a1 * a2 + b1 * c2,
            a1 * b2 + b1 * d2,
            c1 * a2 + d1 * c2,
            c1 * b2 + d1 * d2,
        ])
    }

    pub fn invert(&self) -> Moebius {
        let [a, b, c, d] = self.matrix();
        Self::from_matrix([d, -b, -c, a])
    }

    /// Parameter-space comparison; `θ` is compared on the circle.
    pub fn approx_eq(&self, other: &Moebius, tol: f64) -> bool {
        angle_distance(self.theta, other.theta) <= tol && (self.a - other.a).norm() <= tol
    }

    /// The unique automorphism with `m(z1) = z2` and `m(w1) = w2`.
    pub fn from_two_points(
        z1: Complex64,
        z2: Complex64,
        w1: Complex64,
        w2: Complex64,
    ) -> Result<Self> {
        Self::from_two_points_tol(z1, z2, w1, w2, DEFAULT_TOL)
    }

    pub fn from_two_points_tol(
        z1: Complex64,
        z2: Complex64,
        w1: Complex64,
        w2: Complex64,
        tol: f64,
    ) -> Result<Self> {
        for z in [z1, z2, w1, w2] {
            check_disc(z)?;
        }
        if z1 == w1 {
            return Err(Error::DegenerateInput("source points coincide"));
        }
        let source_distance = pseudo_hyperbolic(z1, w1).atanh();
        let target_distance = pseudo_hyperbolic(z2, w2).atanh();
        if (source_distance - target_distance).abs() > tol {
            return Err(Error::DistanceMismatch {
                source_distance,
                target_distance,
            });
        }
        // send z1 and z2 to the origin, then match the images of w1 and w2 by a rotation
        let to_origin = Moebius { theta: 0.0, a: z1 };
        let from_origin = Moebius { theta: 0.0, a: z2 }.invert();
        let u = to_origin.eval_unchecked(w1);
        let t = Moebius { theta: 0.0, a: z2 }.eval_unchecked(w2);
        let rot = Moebius::rotation(t.arg() - u.arg());
        Ok(from_origin.compose(&rot).compose(&to_origin))
    }

    pub fn classify_fixed_points(&self) -> FixedPointClass {
        classify(self)
    }

    /// Parabolic automorphism whose only fixed point in the closed disc is `tau`.
    ///
    /// Conjugates the half-plane translation `w ↦ w + strength` by the Cayley
    /// transform `z ↦ i(1 + z)/(1 − z)` (which sends 1 to ∞) and rotates the
    /// fixed point from 1 to `tau`.
    pub fn parabolic(tau: Complex64, strength: f64) -> Result<Self> {
        if !is_finite(tau) || (tau.norm() - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidParameter(format!(
                "parabolic fixed point {tau} must be unimodular"
            )));
        }
        if strength == 0.0 || !strength.is_finite() {
            return Err(Error::InvalidParameter(
                "parabolic strength must be finite and nonzero".into(),
            ));
        }
        let tau = tau / tau.norm();
        let s = Complex64::new(strength, 0.0);
        // C⁻¹ ∘ T ∘ C = [[2i − s, s], [−s, 2i + s]], conjugated by z ↦ τz
        Ok(Self::from_matrix([
            2.0 * I - s,
            tau * s,
            -s * tau.conj(),
            2.0 * I + s,
        ]))
    }
}

impl HolomorphicMap for Moebius {
    fn source(&self) -> Domain {
        Domain::Disc
    }

    fn target(&self) -> Domain {
        Domain::Disc
    }

    fn eval(&self, z: &[Complex64]) -> Result<Vec<Complex64>> {
        Ok(vec![self.apply(z[0])?])
    }

    fn deriv(&self, z: &[Complex64], v: &[Complex64]) -> Result<Vec<Complex64>> {
        check_disc(z[0])?;
        Ok(vec![self.derivative(z[0]) * v[0]])
    }

    fn describe(&self) -> String {
        format!("moebius(theta={}, a={})", self.theta, self.a)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FixedPointKind {
    Identity,
    Elliptic,
    Parabolic,
    Hyperbolic,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FixedPointClass {
    pub kind: FixedPointKind,
    /// Fixed points in the closed disc; for elliptic maps only the interior one.
    pub fixed_points: Vec<Complex64>,
}

/// Relative tolerance on the trace invariant separating the three classes.
const TRACE_TOL: f64 = 1e-9;

fn classify(m: &Moebius) -> FixedPointClass {
    let [a, b, c, d] = m.matrix();
    if m.a.norm() == 0.0 && m.theta == 0.0 {
        return FixedPointClass {
            kind: FixedPointKind::Identity,
            fixed_points: Vec::new(),
        };
    }
    // tr²/det = 4cos²(θ/2)/(1 − |a|²); equals 4 exactly for parabolic maps
    let kappa = 4.0 * (m.theta / 2.0).cos().powi(2) / (1.0 - m.a.norm_sqr());
    // fixed points solve C z² + (D − A) z − B = 0
    let (qa, qb, qc) = (c, d - a, -b);
    if m.a.norm() == 0.0 {
        return FixedPointClass {
            kind: FixedPointKind::Elliptic,
            fixed_points: vec![ZERO],
        };
    }
    if (kappa - 4.0).abs() <= TRACE_TOL * 4.0 {
        return FixedPointClass {
            kind: FixedPointKind::Parabolic,
            fixed_points: vec![-qb / (2.0 * qa)],
        };
    }
    let disc = (qb * qb - 4.0 * qa * qc).sqrt();
    // pick the sign that avoids cancellation, then use Vieta for the other root
    let q = if (qb.conj() * disc).re >= 0.0 {
        -0.5 * (qb + disc)
    } else {
        -0.5 * (qb - disc)
    };
    let r1 = q / qa;
    let r2 = qc / q;
    if kappa < 4.0 {
        let interior = if r1.norm() <= r2.norm() { r1 } else { r2 };
        FixedPointClass {
            kind: FixedPointKind::Elliptic,
            fixed_points: vec![interior],
        }
    } else {
        let mut pts = vec![r1 / r1.norm(), r2 / r2.norm()];
        pts.sort_by(|x, y| normalize_angle(x.arg()).total_cmp(&normalize_angle(y.arg())));
        FixedPointClass {
            kind: FixedPointKind::Hyperbolic,
            fixed_points: pts,
        }
    }
}

/// Degree-≤1 self-map of the disc `z ↦ outer(scale · inner(z))` with
/// `|scale| ≤ 1`. A zero scale gives a constant map; a unimodular scale an
/// automorphism.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiscContraction {
    pub inner: Moebius,
    pub scale: Complex64,
    pub outer: Moebius,
}

impl DiscContraction {
    pub fn constant(w: Complex64) -> Self {
        Self {
            inner: Moebius::IDENTITY,
            scale: ZERO,
            outer: Moebius { theta: 0.0, a: w }.invert(),
        }
    }

    pub fn value(&self, z: Complex64) -> Complex64 {
        self.outer
            .eval_unchecked(self.scale * self.inner.eval_unchecked(z))
    }

    pub fn derivative(&self, z: Complex64) -> Complex64 {
        let u = self.scale * self.inner.eval_unchecked(z);
        self.outer.derivative(u) * self.scale * self.inner.derivative(z)
    }
}

impl HolomorphicMap for DiscContraction {
    fn source(&self) -> Domain {
        Domain::Disc
    }

    fn target(&self) -> Domain {
        Domain::Disc
    }

    fn eval(&self, z: &[Complex64]) -> Result<Vec<Complex64>> {
        check_disc(z[0])?;
        Ok(vec![self.value(z[0])])
    }

    fn deriv(&self, z: &[Complex64], v: &[Complex64]) -> Result<Vec<Complex64>> {
        check_disc(z[0])?;
        Ok(vec![self.derivative(z[0]) * v[0]])
    }

    fn describe(&self) -> String {
        format!(
            "contraction(scale={}, inner={}, outer={})",
            self.scale,
            self.inner.describe(),
            self.outer.describe()
        )
    }
}

/// Holomorphic `f: 𝔻 → 𝔻` with `f(z1) = w1` and `f(z2) = w2`.
///
/// The witness is `M_{w1}⁻¹ ∘ (c·) ∘ M_{z1}` where `M_p` is the Blaschke
/// factor vanishing at `p` and `c = M_{w1}(w2)/M_{z1}(z2)`.
pub fn schwarz_pick_interpolate(
    z1: Complex64,
    z2: Complex64,
    w1: Complex64,
    w2: Complex64,
) -> Result<DiscContraction> {
    schwarz_pick_interpolate_tol(z1, z2, w1, w2, DEFAULT_TOL)
}

pub fn schwarz_pick_interpolate_tol(
    z1: Complex64,
    z2: Complex64,
    w1: Complex64,
    w2: Complex64,
    tol: f64,
) -> Result<DiscContraction> {
    for z in [z1, z2, w1, w2] {
        check_disc(z)?;
    }
    if z1 == z2 {
        return Err(Error::DegenerateInput("interpolation nodes coincide"));
    }
    if w1 == w2 {
        return Ok(DiscContraction::constant(w1));
    }
    let inner = Moebius { theta: 0.0, a: z1 };
    let u = inner.eval_unchecked(z2);
    let t = Moebius { theta: 0.0, a: w1 }.eval_unchecked(w2);
    let source_distance = u.norm().atanh();
    let target_distance = t.norm().atanh();
    if target_distance > source_distance + tol {
        return Err(Error::Infeasible {
            source_distance,
            target_distance,
        });
    }
    let mut scale = t / u;
    if scale.norm() > 1.0 {
        scale /= scale.norm();
    }
    Ok(DiscContraction {
        inner,
        scale,
        outer: Moebius { theta: 0.0, a: w1 }.invert(),
    })
}

/// Holomorphic `f: 𝔻 → 𝔻` with `f(z) = w` and `f′(z)·v = u`, the
/// infinitesimal two-point problem.
pub fn schwarz_pick_interpolate_infinitesimal(
    z: Complex64,
    v: Complex64,
    w: Complex64,
    u: Complex64,
    tol: f64,
) -> Result<DiscContraction> {
    check_disc(z)?;
    check_disc(w)?;
    if v == ZERO {
        return Err(Error::DegenerateInput("zero tangent vector"));
    }
    let source_distance = v.norm() / (1.0 - z.norm_sqr());
    let target_distance = u.norm() / (1.0 - w.norm_sqr());
    if target_distance > source_distance + tol {
        return Err(Error::Infeasible {
            source_distance,
            target_distance,
        });
    }
    // f′(z) = (1 − |w|²) c / (1 − |z|²)
    let mut scale = (u / v) * (1.0 - z.norm_sqr()) / (1.0 - w.norm_sqr());
    if scale.norm() > 1.0 {
        scale /= scale.norm();
    }
    Ok(DiscContraction {
        inner: Moebius { theta: 0.0, a: z },
        scale,
        outer: Moebius { theta: 0.0, a: w }.invert(),
    })
}

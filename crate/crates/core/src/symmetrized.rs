//! The symmetrized bidisc `G = {(z + w, zw) : z, w ∈ 𝔻}`.
//!
//! The Carathéodory value of a datum in `G` is the supremum over `ω ∈ 𝕋` of
//! `|Φ_ω(δ)|` with `Φ_ω(s, p) = (2ωp − s)/(2 − ωs)`; since `G` is a Lempert
//! domain this is also the Kobayashi value. The supremum is computed by a
//! uniform sweep of the circle followed by golden-section refinement of each
//! grid-local maximum.

use std::f64::consts::TAU;
use std::sync::Arc;

use num_complex::Complex64;
use serde::Serialize;

use crate::datum::{
    compose, pushforward, Datum, DiscPair, Domain, GeodesicDisc, HolomorphicMap, Identity, Map,
    Point,
};
use crate::disc::{
    angle_distance, check_disc, pseudo_hyperbolic, FixedPointKind, Moebius, BOUNDARY_GUARD,
};
use crate::error::{Error, Result};
use crate::optimize::golden_section_max;
use crate::verifier::verify_left_inverse;

/// `|s − s̄p| < 1 − |p|²`.
pub fn in_g(s: Complex64, p: Complex64) -> bool {
    (s - s.conj() * p).norm() < 1.0 - p.norm_sqr()
}

/// Membership with the boundary guard band applied.
pub(crate) fn in_g_strict(s: Complex64, p: Complex64) -> bool {
    (s - s.conj() * p).norm() < 1.0 - p.norm_sqr() - BOUNDARY_GUARD
}

/// `(z + w, zw)`.
pub fn symmetrize(z: Complex64, w: Complex64) -> Result<Point> {
    check_disc(z)?;
    check_disc(w)?;
    Point::sym_bidisc(z + w, z * w)
}

/// The symmetrization map `π: 𝔻² → G`.
#[derive(Debug, Clone, Copy)]
pub struct Symmetrization;

impl HolomorphicMap for Symmetrization {
    fn source(&self) -> Domain {
        Domain::Bidisc
    }
    fn target(&self) -> Domain {
        Domain::SymBidisc
    }
    fn eval(&self, z: &[Complex64]) -> Result<Vec<Complex64>> {
        Ok(vec![z[0] + z[1], z[0] * z[1]])
    }
    fn deriv(&self, z: &[Complex64], v: &[Complex64]) -> Result<Vec<Complex64>> {
        Ok(vec![v[0] + v[1], v[0] * z[1] + z[0] * v[1]])
    }
    fn describe(&self) -> String {
        "π".into()
    }
}

/// `Φ_ω(s, p) = (2ωp − s)/(2 − ωs)` for unimodular `ω`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhiOmega {
    omega: Complex64,
}

/// Denominators smaller than this are reported as poles.
const POLE_TOL: f64 = 1e-12;

impl PhiOmega {
    pub fn new(omega: Complex64) -> Result<Self> {
        if !(omega.norm() - 1.0).abs().le(&1e-12) {
            return Err(Error::InvalidParameter(format!(
                "|ω| = {} ≠ 1",
                omega.norm()
            )));
        }
        Ok(Self { omega })
    }

    pub fn from_angle(theta: f64) -> Self {
        Self {
            omega: Complex64::from_polar(1.0, theta),
        }
    }

    pub fn omega(&self) -> Complex64 {
        self.omega
    }

    fn denominator(&self, s: Complex64) -> Result<Complex64> {
        let den = 2.0 - self.omega * s;
        if den.norm() < POLE_TOL {
            return Err(Error::PoleEncountered(den.norm()));
        }
        Ok(den)
    }

    pub fn value(&self, s: Complex64, p: Complex64) -> Result<Complex64> {
        let den = self.denominator(s)?;
        Ok((2.0 * self.omega * p - s) / den)
    }

    /// Partial derivatives `(∂Φ/∂s, ∂Φ/∂p)`.
    pub fn gradient(&self, s: Complex64, p: Complex64) -> Result<(Complex64, Complex64)> {
        let den = self.denominator(s)?;
        let w = self.omega;
        Ok(((2.0 * w * w * p - 2.0) / (den * den), 2.0 * w / den))
    }
}

impl HolomorphicMap for PhiOmega {
    fn source(&self) -> Domain {
        Domain::SymBidisc
    }
    fn target(&self) -> Domain {
        Domain::Disc
    }
    fn eval(&self, z: &[Complex64]) -> Result<Vec<Complex64>> {
        Ok(vec![self.value(z[0], z[1])?])
    }
    fn deriv(&self, z: &[Complex64], v: &[Complex64]) -> Result<Vec<Complex64>> {
        let (ds, dp) = self.gradient(z[0], z[1])?;
        Ok(vec![ds * v[0] + dp * v[1]])
    }
    fn describe(&self) -> String {
        format!("Φ[ω={}]", self.omega)
    }
}

/// `θ ↦ |Φ_{e^{iθ}}(δ)|` for a fixed datum, evaluated without allocation.
#[derive(Debug, Clone, Copy)]
pub enum CircleProfile {
    /// `|2Aω² + 4v_p ω − 2v_s| / 4(1 − |p|² − Re ω(s − s̄p))`, `A = p v_s − s v_p`.
    Infinitesimal {
        a: Complex64,
        vp: Complex64,
        vs: Complex64,
        p_norm_sqr: f64,
        twist: Complex64,
    },
    Discrete {
        s1: Complex64,
        p1: Complex64,
        s2: Complex64,
        p2: Complex64,
    },
}

impl CircleProfile {
    pub fn new(delta: &Datum) -> Result<Self> {
        if delta.domain() != Domain::SymBidisc {
            return Err(Error::DomainMismatch {
                expected: Domain::SymBidisc,
                found: delta.domain(),
            });
        }
        Ok(match delta {
            Datum::Discrete { p1, p2 } => CircleProfile::Discrete {
                s1: p1.coord(0),
                p1: p1.coord(1),
                s2: p2.coord(0),
                p2: p2.coord(1),
            },
            Datum::Infinitesimal { p, v } => {
                let (s, pp) = (p.coord(0), p.coord(1));
                CircleProfile::Infinitesimal {
                    a: pp * v[0] - s * v[1],
                    vp: v[1],
                    vs: v[0],
                    p_norm_sqr: pp.norm_sqr(),
                    twist: s - s.conj() * pp,
                }
            }
        })
    }

    pub fn value(&self, theta: f64) -> f64 {
        let w = Complex64::from_polar(1.0, theta);
        match *self {
            CircleProfile::Infinitesimal {
                a,
                vp,
                vs,
                p_norm_sqr,
                twist,
            } => {
                let num = 2.0 * a * w * w + 4.0 * vp * w - 2.0 * vs;
                let den = 4.0 * (1.0 - p_norm_sqr - (w * twist).re);
                num.norm() / den
            }
            CircleProfile::Discrete { s1, p1, s2, p2 } => {
                let phi = |s: Complex64, p: Complex64| (2.0 * w * p - s) / (2.0 - w * s);
                pseudo_hyperbolic(phi(s1, p1), phi(s2, p2)).atanh()
            }
        }
    }
}

pub const DEFAULT_GRID: usize = 4096;
pub const MIN_GRID: usize = 64;
/// Local maxima within this of the global value are reported as argmaxes.
pub const ATTAIN_TOL: f64 = 1e-9;
/// Argmax angles closer than this are merged.
pub const ARGMAX_DEDUP: f64 = 1e-6;
/// Relative spread below which the profile is reported flat.
pub const FLAT_TOL: f64 = 1e-12;
/// Golden-section stopping width in θ.
pub const REFINE_XTOL: f64 = 1e-12;
/// Relative depths of the two level sets used to locate a peak's center.
const PLATEAU_LEVELS: [f64; 2] = [1e-8, 1e-10];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CarGOptions {
    pub grid_size: usize,
    pub refine: bool,
    pub keep_profile: bool,
}

impl Default for CarGOptions {
    fn default() -> Self {
        Self {
            grid_size: DEFAULT_GRID,
            refine: true,
            keep_profile: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CircleOptimum {
    pub value: f64,
    /// Angles in `[0, 2π)`; empty when the profile is flat.
    pub argmax_angles: Vec<f64>,
    /// The profile is constant, so every `Φ_ω` is extremal.
    pub flat: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub profile: Option<Vec<(f64, f64)>>,
}

/// Carathéodory (equivalently Kobayashi) value of a nondegenerate datum in `G`.
pub fn car_g(delta: &Datum, opts: CarGOptions) -> Result<CircleOptimum> {
    if opts.grid_size < MIN_GRID {
        return Err(Error::InvalidParameter(format!(
            "grid size {} is below {MIN_GRID}",
            opts.grid_size
        )));
    }
    let profile = CircleProfile::new(delta)?;
    delta.require_nondegenerate()?;
    Ok(optimize_profile(|t| profile.value(t), opts))
}

/// Grid sweep plus optional refinement of an arbitrary smooth periodic profile.
pub(crate) fn optimize_profile(f: impl Fn(f64) -> f64, opts: CarGOptions) -> CircleOptimum {
    let n = opts.grid_size;
    let step = TAU / n as f64;
    // index order fixes the reduction order, so results are deterministic
    let grid: Vec<f64> = (0..n).map(|j| f(j as f64 * step)).collect();
    let vmax = grid.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let vmin = grid.iter().copied().fold(f64::INFINITY, f64::min);
    let profile = opts.keep_profile.then(|| {
        grid.iter()
            .enumerate()
            .map(|(j, &v)| (j as f64 * step, v))
            .collect()
    });

    if vmax - vmin <= FLAT_TOL * vmax.max(1.0) {
        return CircleOptimum {
            value: vmax,
            argmax_angles: Vec::new(),
            flat: true,
            profile,
        };
    }

    let local_max: Vec<usize> = (0..n)
        .filter(|&j| grid[j] >= grid[(j + n - 1) % n] && grid[j] >= grid[(j + 1) % n])
        .collect();

    let peaks: Vec<(f64, f64)> = if opts.refine {
        local_max
            .iter()
            .map(|&j| {
                let t = j as f64 * step;
                let (tg, vg) = golden_section_max(&f, t - step, t + step, REFINE_XTOL);
                if vg >= grid[j] {
                    (tg, vg)
                } else {
                    (t, grid[j])
                }
            })
            .collect()
    } else {
        local_max
            .iter()
            .map(|&j| (j as f64 * step, grid[j]))
            .collect()
    };

    let value = peaks.iter().map(|p| p.1).fold(vmax, f64::max);
    let mut angles: Vec<f64> = peaks
        .iter()
        .filter(|p| value - p.1 <= ATTAIN_TOL)
        .map(|&(t, v)| {
            let t = if opts.refine {
                plateau_center(&f, t, v, step).unwrap_or(t)
            } else {
                t
            };
            t.rem_euclid(TAU)
        })
        .collect();
    angles.sort_by(f64::total_cmp);
    let mut argmax_angles: Vec<f64> = Vec::with_capacity(angles.len());
    for t in angles {
        if argmax_angles
            .iter()
            .all(|&u| angle_distance(u, t) > ARGMAX_DEDUP)
        {
            argmax_angles.push(t);
        }
    }
    CircleOptimum {
        value,
        argmax_angles,
        flat: false,
        profile,
    }
}

/// Center of a peak estimated from the midpoints of two level sets just below
/// it, extrapolated to zero depth.
///
/// The midpoint of `{f ≥ (1 − η) f_max}` is offset from the true maximizer by
/// a term proportional to the squared half-width of the level set, so two
/// depths suffice to cancel it. Unlike locating the maximum by comparing
/// values, this stays accurate when the peak is flat to high order.
fn plateau_center(f: &impl Fn(f64) -> f64, peak: f64, peak_value: f64, step: f64) -> Option<f64> {
    let mut mids = [0.0; 2];
    let mut half_sq = [0.0; 2];
    for (i, eta) in PLATEAU_LEVELS.iter().enumerate() {
        let level = peak_value * (1.0 - eta);
        let right = level_crossing(f, peak, step, level)?;
        let left = level_crossing(f, peak, -step, level)?;
        mids[i] = 0.5 * (left + right);
        half_sq[i] = (0.5 * (right - left)).powi(2);
    }
    let denom = half_sq[0] - half_sq[1];
    let center = if denom > 0.0 {
        mids[1] - (mids[0] - mids[1]) * half_sq[1] / denom
    } else {
        mids[1]
    };
    ((center - peak).abs() <= step).then_some(center)
}

/// First point where `f` drops below `level` walking from `start` by `step`,
/// refined by bisection. Gives up after half a turn.
fn level_crossing(f: &impl Fn(f64) -> f64, start: f64, step: f64, level: f64) -> Option<f64> {
    let max_steps = (std::f64::consts::PI / step.abs()).ceil() as usize;
    let mut inside = start;
    for k in 1..=max_steps {
        let t = start + k as f64 * step;
        if f(t) < level {
            let mut outside = t;
            for _ in 0..100 {
                let mid = 0.5 * (inside + outside);
                if mid == inside || mid == outside {
                    break;
                }
                if f(mid) < level {
                    outside = mid;
                } else {
                    inside = mid;
                }
            }
            return Some(0.5 * (inside + outside));
        }
        inside = t;
    }
    None
}

/// `h(z) = (z + m(z), z·m(z))` and `h′(z)`.
fn lift_through_graph(m: &Moebius, z: Complex64) -> ([Complex64; 2], [Complex64; 2]) {
    let mz = m.eval_unchecked(z);
    let dm = m.derivative(z);
    ([z + mz, z * mz], [1.0 + dm, mz + z * dm])
}

/// Infinitesimal datum `(h(z0), h′(z0))` whose only extremal in the `Φ_ω`
/// family is `Φ_τ`.
///
/// `m` is the parabolic automorphism fixing `τ̄`: `Φ_ω ∘ h` collapses to a
/// disc automorphism exactly when `ω` times the fixed point equals 1.
pub fn royal_datum(tau: Complex64, z0: Complex64, strength: f64) -> Result<Datum> {
    check_disc(z0)?;
    let m = Moebius::parabolic(tau.conj(), strength)?;
    let (point, tangent) = lift_through_graph(&m, z0);
    Datum::infinitesimal(
        Point::new(Domain::SymBidisc, point.to_vec())?,
        tangent.to_vec(),
    )
}

/// The analytic disc `ζ ↦ (ζ + m(ζ), ζ·m(ζ))` in `G`.
pub fn symmetrized_disc(m: Moebius) -> Map {
    let graph: Map = Arc::new(DiscPair {
        first: Arc::new(Identity(Domain::Disc)),
        second: Arc::new(m),
    });
    compose(Arc::new(Symmetrization), graph).expect("π accepts points of the bidisc")
}

/// Certification tolerance for left inverses of symmetrized discs.
pub const GEODESIC_TOL: f64 = 1e-9;

#[derive(Debug, Clone)]
pub struct SymmetrizedGeodesic {
    pub geodesic: GeodesicDisc,
    /// Angle of the `ω*` with `Φ_{ω*} ∘ k` an automorphism.
    pub omega_angle: f64,
    pub residual: f64,
}

/// Complex geodesic `k(ζ) = (ζ + m(ζ), ζ·m(ζ))` with left inverse `μ ∘ Φ_{ω*}`.
///
/// `Φ_ω ∘ k` collapses to a Möbius map when `ω` is the conjugate of a
/// boundary fixed point `z₀` of `m`, since numerator and denominator then
/// share the root `z₀`. Those angles are tried first; otherwise the argmax of
/// the Carathéodory profile of a datum of `k` is used. Either way the result
/// is accepted only if `C ∘ k = id` holds on the grid.
pub fn symmetrized_geodesic(m: Moebius) -> Result<SymmetrizedGeodesic> {
    let k = symmetrized_disc(m);
    let fit = |theta: f64| verify_left_inverse(&PhiOmega::from_angle(theta), k.as_ref());
    let best = |angles: Vec<f64>| {
        angles
            .into_iter()
            .map(|t| (t, fit(t)))
            .min_by(|a, b| a.1.residual.total_cmp(&b.1.residual))
    };

    let class = m.classify_fixed_points();
    let closed_form: Vec<f64> = match class.kind {
        FixedPointKind::Identity => vec![0.0],
        FixedPointKind::Elliptic => Vec::new(),
        FixedPointKind::Parabolic | FixedPointKind::Hyperbolic => {
            class.fixed_points.iter().map(|z| -z.arg()).collect()
        }
    };
    let mut chosen = best(closed_form).filter(|(_, r)| r.is_automorphism);
    if chosen.is_none() {
        let zero = Complex64::new(0.0, 0.0);
        let mut probe = pushforward(
            k.as_ref(),
            &Datum::disc_infinitesimal(zero, Complex64::new(1.0, 0.0))?,
        )?;
        if !probe.is_nondegenerate() {
            probe = pushforward(
                k.as_ref(),
                &Datum::disc_discrete(zero, Complex64::new(0.5, 0.0))?,
            )?;
        }
        let opt = car_g(&probe, CarGOptions::default())?;
        let angles = if opt.flat {
            vec![0.0]
        } else {
            opt.argmax_angles
        };
        chosen = best(angles);
    }
    let (theta, report) = chosen.expect("at least one candidate angle");
    let Some(fitted) = report.moebius.filter(|_| report.is_automorphism) else {
        return Err(Error::LeftInverseNotFound {
            residual: report.residual,
        });
    };
    let phi: Map = Arc::new(PhiOmega::from_angle(theta));
    let left_inverse = compose(Arc::new(fitted.invert()), phi)?;
    let geodesic = GeodesicDisc::certified(k, left_inverse, GEODESIC_TOL)?;
    let residual = geodesic.residual();
    Ok(SymmetrizedGeodesic {
        geodesic,
        omega_angle: theta.rem_euclid(TAU),
        residual,
    })
}

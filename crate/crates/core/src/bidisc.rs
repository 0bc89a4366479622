//! Extremal problems on the bidisc.
//!
//! The Carathéodory value of a datum in 𝔻² is the larger of the two
//! coordinate-projected datum norms, and the coordinate functions attaining it
//! are extremal. Kobayashi extremal discs are built from a Möbius map in the
//! dominant coordinate and a Schwarz–Pick interpolant in the other, which
//! realizes `car = kob` constructively.

use std::sync::Arc;

use num_complex::Complex64;
use serde::Serialize;

use crate::datum::{
    compose, datum_norm_disc, pushforward, Coordinate, Datum, DiscPair, Domain, GeodesicDisc,
    HolomorphicMap, Identity, Map,
};
use crate::disc::{
    self, schwarz_pick_interpolate, schwarz_pick_interpolate_infinitesimal, Moebius, DEFAULT_TOL,
};
use crate::error::{Error, Result};

/// Coordinates whose norms differ by at most this much are both reported extremal.
pub const EXTREMAL_TIE_TOL: f64 = 1e-12;

fn require_bidisc(delta: &Datum) -> Result<()> {
    if delta.domain() != Domain::Bidisc {
        return Err(Error::DomainMismatch {
            expected: Domain::Bidisc,
            found: delta.domain(),
        });
    }
    Ok(())
}

/// Norms of the datums `F¹(δ)` and `F²(δ)` in the disc.
pub fn coordinate_norms(delta: &Datum) -> Result<[f64; 2]> {
    require_bidisc(delta)?;
    let norm = |j| datum_norm_disc(&pushforward(&Coordinate { index: j }, delta)?);
    Ok([norm(0)?, norm(1)?])
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CarBidisc {
    pub value: f64,
    /// One-based indices of the extremal coordinate functions.
    pub extremal: Vec<usize>,
}

pub fn car_bidisc(delta: &Datum) -> Result<CarBidisc> {
    require_bidisc(delta)?;
    delta.require_nondegenerate()?;
    let norms = coordinate_norms(delta)?;
    let value = norms[0].max(norms[1]);
    let extremal = (0..2)
        .filter(|&j| value - norms[j] <= EXTREMAL_TIE_TOL)
        .map(|j| j + 1)
        .collect();
    Ok(CarBidisc { value, extremal })
}

/// An analytic disc `g: 𝔻 → 𝔻²` with a datum `ζ` in 𝔻 such that `g(ζ) = δ`.
#[derive(Clone)]
pub struct KobayashiDisc {
    pub disc: Map,
    /// `(0, α)` with `α > 0` real, discrete or infinitesimal as `δ` is.
    pub preimage: Datum,
}

impl KobayashiDisc {
    /// `|ζ|`, the certified Kobayashi value.
    pub fn value(&self) -> Result<f64> {
        datum_norm_disc(&self.preimage)
    }
}

/// Kobayashi extremal disc for a nondegenerate datum, normalized so that the
/// preimage datum is based at 0 with a positive real second entry.
pub fn kob_disc_bidisc(delta: &Datum) -> Result<KobayashiDisc> {
    require_bidisc(delta)?;
    delta.require_nondegenerate()?;
    let norms = coordinate_norms(delta)?;
    let (dom, other) = if norms[0] >= norms[1] { (0, 1) } else { (1, 0) };

    let (m1, f, preimage): (Moebius, Map, Datum) = match delta {
        Datum::Discrete { p1, p2 } => {
            let (z, w) = (p1.coord(dom), p2.coord(dom));
            let to_origin = Moebius::blaschke(z)?;
            let u = to_origin.apply(w)?;
            let m1 = to_origin.invert().compose(&Moebius::rotation(u.arg()));
            let f = schwarz_pick_interpolate(z, w, p1.coord(other), p2.coord(other))?;
            let zero = Complex64::new(0.0, 0.0);
            (
                m1,
                Arc::new(f),
                Datum::disc_discrete(zero, Complex64::new(u.norm(), 0.0))?,
            )
        }
        Datum::Infinitesimal { p, v } => {
            let (z, dz) = (p.coord(dom), v[dom]);
            let m1 = Moebius::blaschke(z)?
                .invert()
                .compose(&Moebius::rotation(dz.arg()));
            let f = schwarz_pick_interpolate_infinitesimal(
                z,
                dz,
                p.coord(other),
                v[other],
                DEFAULT_TOL,
            )?;
            let beta = disc::poincare_metric(z, dz)?;
            (
                m1,
                Arc::new(f),
                Datum::disc_infinitesimal(Complex64::new(0.0, 0.0), Complex64::new(beta, 0.0))?,
            )
        }
    };
    let m1: Map = Arc::new(m1);
    let second = compose(f, m1.clone())?;
    let disc: Map = if dom == 0 {
        Arc::new(DiscPair { first: m1, second })
    } else {
        Arc::new(DiscPair {
            first: second,
            second: m1,
        })
    };
    Ok(KobayashiDisc { disc, preimage })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Dominance {
    First,
    Second,
    Tie,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BalancedInfo {
    pub balanced: bool,
    /// The automorphism with `m(z¹) = z²`, `m(w¹) = w²`; present iff balanced.
    pub moebius: Option<Moebius>,
    pub dominant: Dominance,
    /// `|(z¹, w¹)| − |(z², w²)|`.
    pub gap: f64,
}

pub fn balanced_info(delta: &Datum) -> Result<BalancedInfo> {
    balanced_info_tol(delta, DEFAULT_TOL)
}

pub fn balanced_info_tol(delta: &Datum, tol: f64) -> Result<BalancedInfo> {
    require_bidisc(delta)?;
    delta.require_nondegenerate()?;
    let Datum::Discrete { p1, p2 } = delta else {
        return Err(Error::DatumKind {
            expected: "discrete",
        });
    };
    let norms = coordinate_norms(delta)?;
    let gap = norms[0] - norms[1];
    if gap.abs() <= tol {
        let m =
            Moebius::from_two_points_tol(p1.coord(0), p1.coord(1), p2.coord(0), p2.coord(1), tol)?;
        Ok(BalancedInfo {
            balanced: true,
            moebius: Some(m),
            dominant: Dominance::Tie,
            gap,
        })
    } else {
        Ok(BalancedInfo {
            balanced: false,
            moebius: None,
            dominant: if gap > 0.0 {
                Dominance::First
            } else {
                Dominance::Second
            },
            gap,
        })
    }
}

/// The geodesic `{(ζ, m(ζ))}` contacted by a balanced datum, with the first
/// coordinate projection as left inverse.
pub fn balanced_geodesic(delta: &Datum) -> Result<GeodesicDisc> {
    balanced_geodesic_tol(delta, DEFAULT_TOL)
}

/// [`balanced_geodesic`] with an explicit balance tolerance.
pub fn balanced_geodesic_tol(delta: &Datum, tol: f64) -> Result<GeodesicDisc> {
    let info = balanced_info_tol(delta, tol)?;
    let Some(m) = info.moebius else {
        return Err(Error::NotBalanced { gap: info.gap });
    };
    let k: Map = Arc::new(DiscPair {
        first: Arc::new(Identity(Domain::Disc)),
        second: Arc::new(m),
    });
    GeodesicDisc::certified(k, Arc::new(Coordinate { index: 0 }), DEFAULT_TOL)
}

/// `F̃(z) = F(z, f(z))`.
pub struct Reduced {
    big: Map,
    f: Map,
}

pub fn reduce_to_disc(big: Map, f: Map) -> Result<Map> {
    if big.source() != Domain::Bidisc || big.target() != Domain::Disc {
        return Err(Error::InvalidParameter("F must map 𝔻² → 𝔻".into()));
    }
    if f.source() != Domain::Disc || f.target() != Domain::Disc {
        return Err(Error::InvalidParameter("f must map 𝔻 → 𝔻".into()));
    }
    Ok(Arc::new(Reduced { big, f }))
}

impl HolomorphicMap for Reduced {
    fn source(&self) -> Domain {
        Domain::Disc
    }
    fn target(&self) -> Domain {
        Domain::Disc
    }
    fn eval(&self, z: &[Complex64]) -> Result<Vec<Complex64>> {
        self.big.eval(&[z[0], self.f.eval(z)?[0]])
    }
    fn deriv(&self, z: &[Complex64], v: &[Complex64]) -> Result<Vec<Complex64>> {
        let fz = self.f.eval(z)?[0];
        let dfz = self.f.deriv(z, v)?[0];
        self.big.deriv(&[z[0], fz], &[v[0], dfz])
    }
    fn describe(&self) -> String {
        format!("{}(z, {}(z))", self.big.describe(), self.f.describe())
    }
}

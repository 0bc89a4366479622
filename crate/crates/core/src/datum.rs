//! Datums, holomorphic maps between the supported domains, pushforward and
//! contact with complex geodesics.

use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::disc::{self, check_disc, disc_grid, is_finite};
use crate::error::{Error, Result};
use crate::symmetrized::in_g_strict;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Domain {
    Disc,
    Bidisc,
    /// The symmetrized bidisc `G`.
    #[serde(alias = "G", alias = "g")]
    SymBidisc,
}

impl Domain {
    pub fn dim(self) -> usize {
        match self {
            Domain::Disc => 1,
            Domain::Bidisc | Domain::SymBidisc => 2,
        }
    }

    /// Membership with the boundary guard band applied.
    pub fn check(self, coords: &[Complex64]) -> Result<()> {
        if coords.len() != self.dim() {
            return Err(Error::DomainViolation(format!(
                "{self:?} expects {} coordinates, got {}",
                self.dim(),
                coords.len()
            )));
        }
        match self {
            Domain::Disc | Domain::Bidisc => coords.iter().try_for_each(|&z| check_disc(z)),
            Domain::SymBidisc => {
                if coords.iter().all(|&z| is_finite(z)) && in_g_strict(coords[0], coords[1]) {
                    Ok(())
                } else {
                    Err(Error::DomainViolation(format!(
                        "({}, {}) is not in G",
                        coords[0], coords[1]
                    )))
                }
            }
        }
    }

    pub fn contains(self, coords: &[Complex64]) -> bool {
        self.check(coords).is_ok()
    }
}

impl fmt::Display for Domain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Domain::Disc => "disc",
            Domain::Bidisc => "bidisc",
            Domain::SymBidisc => "symbidisc",
        })
    }
}

/// A point of one of the supported domains; membership is checked on construction.
#[derive(Debug, Clone, PartialEq)]
pub struct Point {
    domain: Domain,
    coords: Vec<Complex64>,
}

impl Point {
    pub fn new(domain: Domain, coords: Vec<Complex64>) -> Result<Self> {
        domain.check(&coords)?;
        Ok(Self { domain, coords })
    }

    pub fn disc(z: Complex64) -> Result<Self> {
        Self::new(Domain::Disc, vec![z])
    }

    pub fn bidisc(z: Complex64, w: Complex64) -> Result<Self> {
        Self::new(Domain::Bidisc, vec![z, w])
    }

    pub fn sym_bidisc(s: Complex64, p: Complex64) -> Result<Self> {
        Self::new(Domain::SymBidisc, vec![s, p])
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn coords(&self) -> &[Complex64] {
        &self.coords
    }

    pub fn coord(&self, j: usize) -> Complex64 {
        self.coords[j]
    }
}

/// An ordered pair of points, or a point with a tangent vector.
#[derive(Debug, Clone, PartialEq)]
pub enum Datum {
    Discrete { p1: Point, p2: Point },
    Infinitesimal { p: Point, v: Vec<Complex64> },
}

impl Datum {
    pub fn discrete(p1: Point, p2: Point) -> Result<Self> {
        if p1.domain != p2.domain {
            return Err(Error::DomainMismatch {
                expected: p1.domain,
                found: p2.domain,
            });
        }
        Ok(Datum::Discrete { p1, p2 })
    }

    pub fn infinitesimal(p: Point, v: Vec<Complex64>) -> Result<Self> {
        if v.len() != p.domain.dim() {
            return Err(Error::DomainViolation(format!(
                "tangent vector has {} components, expected {}",
                v.len(),
                p.domain.dim()
            )));
        }
        if !v.iter().all(|&z| is_finite(z)) {
            return Err(Error::DomainViolation("non-finite tangent vector".into()));
        }
        Ok(Datum::Infinitesimal { p, v })
    }

    /// Discrete datum `(z1, z2)` in the disc.
    pub fn disc_discrete(z1: Complex64, z2: Complex64) -> Result<Self> {
        Self::discrete(Point::disc(z1)?, Point::disc(z2)?)
    }

    /// Infinitesimal datum `(z, v)` in the disc.
    pub fn disc_infinitesimal(z: Complex64, v: Complex64) -> Result<Self> {
        Self::infinitesimal(Point::disc(z)?, vec![v])
    }

    pub fn domain(&self) -> Domain {
        match self {
            Datum::Discrete { p1, .. } => p1.domain,
            Datum::Infinitesimal { p, .. } => p.domain,
        }
    }

    pub fn is_discrete(&self) -> bool {
        matches!(self, Datum::Discrete { .. })
    }

    pub fn is_nondegenerate(&self) -> bool {
        match self {
            Datum::Discrete { p1, p2 } => p1.coords != p2.coords,
            Datum::Infinitesimal { v, .. } => v.iter().any(|z| z.norm_sqr() > 0.0),
        }
    }

    pub fn require_nondegenerate(&self) -> Result<()> {
        if self.is_nondegenerate() {
            Ok(())
        } else {
            Err(Error::DegenerateDatum)
        }
    }

    /// Largest coordinate difference between two datums of the same kind;
    /// `None` when kinds or domains differ.
    pub fn max_abs_diff(&self, other: &Datum) -> Option<f64> {
        let diff = |a: &[Complex64], b: &[Complex64]| {
            a.iter()
                .zip(b)
                .map(|(x, y)| (x - y).norm())
                .fold(0.0, f64::max)
        };
        if self.domain() != other.domain() {
            return None;
        }
        match (self, other) {
            (Datum::Discrete { p1, p2 }, Datum::Discrete { p1: q1, p2: q2 }) => {
                Some(diff(&p1.coords, &q1.coords).max(diff(&p2.coords, &q2.coords)))
            }
            (Datum::Infinitesimal { p, v }, Datum::Infinitesimal { p: q, v: w }) => {
                Some(diff(&p.coords, &q.coords).max(diff(v, w)))
            }
            _ => None,
        }
    }
}

/// `|δ|` for a datum in the disc: Poincaré distance or Poincaré metric.
pub fn datum_norm_disc(delta: &Datum) -> Result<f64> {
    if delta.domain() != Domain::Disc {
        return Err(Error::DomainMismatch {
            expected: Domain::Disc,
            found: delta.domain(),
        });
    }
    match delta {
        Datum::Discrete { p1, p2 } => disc::poincare_distance(p1.coord(0), p2.coord(0)),
        Datum::Infinitesimal { p, v } => disc::poincare_metric(p.coord(0), v[0]),
    }
}

/// A holomorphic map between two of the supported domains, with its
/// directional derivative. Implementations carry no mutable state.
pub trait HolomorphicMap: Send + Sync {
    fn source(&self) -> Domain;
    fn target(&self) -> Domain;
    fn eval(&self, z: &[Complex64]) -> Result<Vec<Complex64>>;
    /// `D_v F(z)`; complex-linear in `v`.
    fn deriv(&self, z: &[Complex64], v: &[Complex64]) -> Result<Vec<Complex64>>;
    fn describe(&self) -> String;
}

pub type Map = Arc<dyn HolomorphicMap>;

impl fmt::Debug for dyn HolomorphicMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.describe())
    }
}

/// Evaluates a map into the disc at a point given by coordinates.
pub fn eval_scalar(map: &dyn HolomorphicMap, z: &[Complex64]) -> Result<Complex64> {
    Ok(map.eval(z)?[0])
}

#[derive(Debug, Clone, Copy)]
pub struct Identity(pub Domain);

impl HolomorphicMap for Identity {
    fn source(&self) -> Domain {
        self.0
    }
    fn target(&self) -> Domain {
        self.0
    }
    fn eval(&self, z: &[Complex64]) -> Result<Vec<Complex64>> {
        Ok(z.to_vec())
    }
    fn deriv(&self, _z: &[Complex64], v: &[Complex64]) -> Result<Vec<Complex64>> {
        Ok(v.to_vec())
    }
    fn describe(&self) -> String {
        format!("id_{}", self.0)
    }
}

/// Coordinate function `F^j(λ) = λ^j` on the bidisc (`index` is zero-based).
#[derive(Debug, Clone, Copy)]
pub struct Coordinate {
    pub index: usize,
}

impl HolomorphicMap for Coordinate {
    fn source(&self) -> Domain {
        Domain::Bidisc
    }
    fn target(&self) -> Domain {
        Domain::Disc
    }
    fn eval(&self, z: &[Complex64]) -> Result<Vec<Complex64>> {
        Ok(vec![z[self.index]])
    }
    fn deriv(&self, _z: &[Complex64], v: &[Complex64]) -> Result<Vec<Complex64>> {
        Ok(vec![v[self.index]])
    }
    fn describe(&self) -> String {
        format!("F{}", self.index + 1)
    }
}

/// `outer ∘ inner`.
pub struct Composed {
    outer: Map,
    inner: Map,
}

pub fn compose(outer: Map, inner: Map) -> Result<Map> {
    if inner.target() != outer.source() {
        return Err(Error::DomainMismatch {
            expected: outer.source(),
            found: inner.target(),
        });
    }
    Ok(Arc::new(Composed { outer, inner }))
}

impl HolomorphicMap for Composed {
    fn source(&self) -> Domain {
        self.inner.source()
    }
    fn target(&self) -> Domain {
        self.outer.target()
    }
    fn eval(&self, z: &[Complex64]) -> Result<Vec<Complex64>> {
        self.outer.eval(&self.inner.eval(z)?)
    }
    fn deriv(&self, z: &[Complex64], v: &[Complex64]) -> Result<Vec<Complex64>> {
        let w = self.inner.eval(z)?;
        let dv = self.inner.deriv(z, v)?;
        self.outer.deriv(&w, &dv)
    }
    fn describe(&self) -> String {
        format!("{} ∘ {}", self.outer.describe(), self.inner.describe())
    }
}

/// `ζ ↦ (first(ζ), second(ζ))`, an analytic disc in the bidisc.
pub struct DiscPair {
    pub first: Map,
    pub second: Map,
}

impl HolomorphicMap for DiscPair {
    fn source(&self) -> Domain {
        Domain::Disc
    }
    fn target(&self) -> Domain {
        Domain::Bidisc
    }
    fn eval(&self, z: &[Complex64]) -> Result<Vec<Complex64>> {
        Ok(vec![self.first.eval(z)?[0], self.second.eval(z)?[0]])
    }
    fn deriv(&self, z: &[Complex64], v: &[Complex64]) -> Result<Vec<Complex64>> {
        Ok(vec![
            self.first.deriv(z, v)?[0],
            self.second.deriv(z, v)?[0],
        ])
    }
    fn describe(&self) -> String {
        format!("({}, {})", self.first.describe(), self.second.describe())
    }
}

/// `(λ¹, λ²) ↦ (first(λ¹), second(λ²))` on the bidisc.
pub struct Product {
    pub first: Map,
    pub second: Map,
}

impl HolomorphicMap for Product {
    fn source(&self) -> Domain {
        Domain::Bidisc
    }
    fn target(&self) -> Domain {
        Domain::Bidisc
    }
    fn eval(&self, z: &[Complex64]) -> Result<Vec<Complex64>> {
        Ok(vec![
            self.first.eval(&z[..1])?[0],
            self.second.eval(&z[1..])?[0],
        ])
    }
    fn deriv(&self, z: &[Complex64], v: &[Complex64]) -> Result<Vec<Complex64>> {
        Ok(vec![
            self.first.deriv(&z[..1], &v[..1])?[0],
            self.second.deriv(&z[1..], &v[1..])?[0],
        ])
    }
    fn describe(&self) -> String {
        format!("{} × {}", self.first.describe(), self.second.describe())
    }
}

type EvalFn = dyn Fn(&[Complex64]) -> Result<Vec<Complex64>> + Send + Sync;
type DerivFn = dyn Fn(&[Complex64], &[Complex64]) -> Result<Vec<Complex64>> + Send + Sync;

/// Closure-backed map, for one-off maps in tests and harnesses.
pub struct FnMap {
    source: Domain,
    target: Domain,
    name: String,
    eval: Box<EvalFn>,
    deriv: Box<DerivFn>,
}

impl FnMap {
    pub fn new(
        source: Domain,
        target: Domain,
        name: impl Into<String>,
        eval: impl Fn(&[Complex64]) -> Result<Vec<Complex64>> + Send + Sync + 'static,
        deriv: impl Fn(&[Complex64], &[Complex64]) -> Result<Vec<Complex64>> + Send + Sync + 'static,
    ) -> Self {
        Self {
            source,
            target,
            name: name.into(),
            eval: Box::new(eval),
            deriv: Box::new(deriv),
        }
    }
}

impl HolomorphicMap for FnMap {
    fn source(&self) -> Domain {
        self.source
    }
    fn target(&self) -> Domain {
        self.target
    }
    fn eval(&self, z: &[Complex64]) -> Result<Vec<Complex64>> {
        (self.eval)(z)
    }
    fn deriv(&self, z: &[Complex64], v: &[Complex64]) -> Result<Vec<Complex64>> {
        (self.deriv)(z, v)
    }
    fn describe(&self) -> String {
        self.name.clone()
    }
}

/// `F(δ)`: images of both points, or image point and `D_v F`.
pub fn pushforward(map: &dyn HolomorphicMap, delta: &Datum) -> Result<Datum> {
    if delta.domain() != map.source() {
        return Err(Error::DomainMismatch {
            expected: map.source(),
            found: delta.domain(),
        });
    }
    let target = map.target();
    match delta {
        Datum::Discrete { p1, p2 } => Datum::discrete(
            Point::new(target, map.eval(&p1.coords)?)?,
            Point::new(target, map.eval(&p2.coords)?)?,
        ),
        Datum::Infinitesimal { p, v } => Datum::infinitesimal(
            Point::new(target, map.eval(&p.coords)?)?,
            map.deriv(&p.coords, v)?,
        ),
    }
}

/// Step used by [`numeric_derivative`].
pub const DIFF_STEP: f64 = 1e-6;

/// Central difference `(F(p + hv) − F(p − hv)) / 2h` with `h = 1e-6`.
pub fn numeric_derivative(
    map: &dyn HolomorphicMap,
    p: &Point,
    v: &[Complex64],
) -> Result<Vec<Complex64>> {
    numeric_derivative_step(map, p, v, DIFF_STEP)
}

pub fn numeric_derivative_step(
    map: &dyn HolomorphicMap,
    p: &Point,
    v: &[Complex64],
    h: f64,
) -> Result<Vec<Complex64>> {
    if p.domain != map.source() {
        return Err(Error::DomainMismatch {
            expected: map.source(),
            found: p.domain,
        });
    }
    if v.len() != p.coords.len() {
        return Err(Error::DomainViolation("tangent dimension mismatch".into()));
    }
    let shifted = |sign: f64| -> Vec<Complex64> {
        p.coords
            .iter()
            .zip(v)
            .map(|(z, dz)| z + sign * h * dz)
            .collect()
    };
    let (plus, minus) = (shifted(1.0), shifted(-1.0));
    map.source().check(&plus)?;
    map.source().check(&minus)?;
    let (fp, fm) = (map.eval(&plus)?, map.eval(&minus)?);
    Ok(fp
        .iter()
        .zip(&fm)
        .map(|(a, b)| (a - b) / (2.0 * h))
        .collect())
}

/// Tolerance for datum equality in [`contacts`].
pub const CONTACT_TOL: f64 = 1e-8;

/// Number of disc grid points used to certify `C ∘ k = id`.
pub const GEODESIC_GRID: usize = 256;

/// Radius of the certification grid.
pub const GEODESIC_GRID_RADIUS: f64 = 0.95;

/// An analytic disc `k: 𝔻 → Ω` together with a left inverse `C: Ω → 𝔻`.
#[derive(Clone)]
pub struct GeodesicDisc {
    k: Map,
    left_inverse: Map,
}

impl fmt::Debug for GeodesicDisc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GeodesicDisc")
            .field("k", &self.k.describe())
            .field("left_inverse", &self.left_inverse.describe())
            .finish()
    }
}

impl GeodesicDisc {
    /// Pairs `k` with `left_inverse` and certifies `C ∘ k = id` on the grid to `tol`.
    pub fn certified(k: Map, left_inverse: Map, tol: f64) -> Result<Self> {
        if k.source() != Domain::Disc || left_inverse.target() != Domain::Disc {
            return Err(Error::InvalidParameter(
                "geodesic disc must map 𝔻 → Ω → 𝔻".into(),
            ));
        }
        if k.target() != left_inverse.source() {
            return Err(Error::DomainMismatch {
                expected: k.target(),
                found: left_inverse.source(),
            });
        }
        let g = Self { k, left_inverse };
        let residual = g.residual();
        if residual.is_finite() && residual < tol {
            Ok(g)
        } else {
            Err(Error::LeftInverseNotFound { residual })
        }
    }

    pub fn k(&self) -> &Map {
        &self.k
    }

    pub fn left_inverse(&self) -> &Map {
        &self.left_inverse
    }

    pub fn target(&self) -> Domain {
        self.k.target()
    }

    /// `sup |C(k(ζ)) − ζ|` over the certification grid; infinite if any evaluation fails.
    pub fn residual(&self) -> f64 {
        disc_grid(GEODESIC_GRID, GEODESIC_GRID_RADIUS)
            .into_iter()
            .map(|z| {
                self.k
                    .eval(&[z])
                    .and_then(|w| self.left_inverse.eval(&w))
                    .map_or(f64::INFINITY, |c| (c[0] - z).norm())
            })
            .fold(0.0, f64::max)
    }
}

/// Whether `δ` is realized by the geodesic, i.e. `δ = k(ζ)` for some datum
/// `ζ` in the disc. The candidate is `ζ = C(δ)`. Degenerate datums and datums
/// in another domain never contact.
pub fn contacts(delta: &Datum, g: &GeodesicDisc) -> bool {
    if delta.domain() != g.target() || !delta.is_nondegenerate() {
        return false;
    }
    let Ok(zeta) = pushforward(g.left_inverse.as_ref(), delta) else {
        return false;
    };
    let Ok(back) = pushforward(g.k.as_ref(), &zeta) else {
        return false;
    };
    back.max_abs_diff(delta).is_some_and(|d| d <= CONTACT_TOL)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::disc::Moebius;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn diagonal() -> GeodesicDisc {
        let k: Map = Arc::new(DiscPair {
            first: Arc::new(Identity(Domain::Disc)),
            second: Arc::new(Identity(Domain::Disc)),
        });
        GeodesicDisc::certified(k, Arc::new(Coordinate { index: 0 }), 1e-12).unwrap()
    }

    #[test]
    fn norm_examples() {
        let d = Datum::disc_discrete(c(0.0, 0.0), c(0.5, 0.0)).unwrap();
        assert!((datum_norm_disc(&d).unwrap() - 0.5493061443340549).abs() < 1e-15);
        let d = Datum::disc_infinitesimal(c(0.0, 0.0), c(1.0, 0.0)).unwrap();
        assert_eq!(datum_norm_disc(&d).unwrap(), 1.0);
        let d = Datum::disc_discrete(c(0.2, 0.1), c(0.2, 0.1)).unwrap();
        assert!(!d.is_nondegenerate());
        assert_eq!(datum_norm_disc(&d).unwrap(), 0.0);
    }

    #[test]
    fn norm_requires_disc() {
        let p = Point::bidisc(c(0.0, 0.0), c(0.1, 0.0)).unwrap();
        let d = Datum::infinitesimal(p, vec![c(1.0, 0.0), c(0.0, 0.0)]).unwrap();
        assert!(matches!(
            datum_norm_disc(&d),
            Err(Error::DomainMismatch { .. })
        ));
    }

    #[test]
    fn point_membership() {
        assert!(Point::disc(c(0.99, 0.0)).is_ok());
        assert!(Point::disc(c(1.0, 0.0)).is_err());
        assert!(Point::bidisc(c(0.5, 0.0), c(0.0, -1.2)).is_err());
        assert!(Point::sym_bidisc(c(2.0, 0.0), c(1.0, 0.0)).is_err());
        assert!(Point::new(Domain::Bidisc, vec![c(0.0, 0.0)]).is_err());
    }

    #[test]
    fn pushforward_identity_and_projection() {
        let p1 = Point::bidisc(c(0.0, 0.0), c(0.0, 0.0)).unwrap();
        let p2 = Point::bidisc(c(0.5, 0.0), c(0.3, 0.0)).unwrap();
        let d = Datum::discrete(p1, p2).unwrap();
        assert_eq!(pushforward(&Identity(Domain::Bidisc), &d).unwrap(), d);
        let img = pushforward(&Coordinate { index: 0 }, &d).unwrap();
        assert_eq!(img, Datum::disc_discrete(c(0.0, 0.0), c(0.5, 0.0)).unwrap());
    }

    #[test]
    fn pushforward_domain_mismatch() {
        let d = Datum::disc_discrete(c(0.0, 0.0), c(0.5, 0.0)).unwrap();
        assert!(matches!(
            pushforward(&Coordinate { index: 0 }, &d),
            Err(Error::DomainMismatch { .. })
        ));
    }

    #[test]
    fn pushforward_detects_escape() {
        let bad = FnMap::new(
            Domain::Disc,
            Domain::Disc,
            "2z",
            |z| Ok(vec![2.0 * z[0]]),
            |_, v| Ok(vec![2.0 * v[0]]),
        );
        let d = Datum::disc_discrete(c(0.0, 0.0), c(0.7, 0.0)).unwrap();
        assert!(matches!(
            pushforward(&bad, &d),
            Err(Error::DomainViolation(_))
        ));
    }

    #[test]
    fn numeric_derivative_linear_and_zero() {
        let lin = FnMap::new(
            Domain::Bidisc,
            Domain::Disc,
            "(z + 2w)/4",
            |z| Ok(vec![(z[0] + 2.0 * z[1]) / 4.0]),
            |_, v| Ok(vec![(v[0] + 2.0 * v[1]) / 4.0]),
        );
        let p = Point::bidisc(c(0.1, 0.2), c(-0.3, 0.1)).unwrap();
        let v = [c(1.0, 0.5), c(-0.2, 0.3)];
        let nd = numeric_derivative(&lin, &p, &v).unwrap();
        let ad = lin.deriv(p.coords(), &v).unwrap();
        assert!((nd[0] - ad[0]).norm() < 1e-10);
        let zero = numeric_derivative(&lin, &p, &[c(0.0, 0.0); 2]).unwrap();
        assert_eq!(zero[0], c(0.0, 0.0));
    }

    #[test]
    fn numeric_derivative_leaving_domain() {
        let p = Point::disc(c(1.0 - 1e-7, 0.0)).unwrap();
        assert!(matches!(
            numeric_derivative(&Identity(Domain::Disc), &p, &[c(1.0, 0.0)]),
            Err(Error::DomainViolation(_))
        ));
    }

    #[test]
    fn moebius_pushforward_functorial() {
        let m1 = Moebius::new(0.3, c(0.2, -0.4)).unwrap();
        let m2 = Moebius::new(4.0, c(-0.5, 0.1)).unwrap();
        let d = Datum::disc_infinitesimal(c(0.3, 0.3), c(0.7, -0.2)).unwrap();
        let two_step = pushforward(&m1, &pushforward(&m2, &d).unwrap()).unwrap();
        let one_step = pushforward(&m1.compose(&m2), &d).unwrap();
        assert!(two_step.max_abs_diff(&one_step).unwrap() < 1e-12);
    }

    #[test]
    fn contact_examples() {
        let g = diagonal();
        let zeta = Datum::disc_discrete(c(0.1, 0.2), c(-0.4, 0.3)).unwrap();
        let on = pushforward(g.k().as_ref(), &zeta).unwrap();
        assert!(contacts(&on, &g));

        let p1 = Point::bidisc(c(0.0, 0.0), c(0.0, 0.0)).unwrap();
        let p2 = Point::bidisc(c(0.5, 0.0), c(0.3, 0.0)).unwrap();
        assert!(!contacts(&Datum::discrete(p1, p2).unwrap(), &g));

        let p = Point::bidisc(c(0.0, 0.0), c(0.0, 0.0)).unwrap();
        let tangent = Datum::infinitesimal(p, vec![c(0.4, 0.1), c(0.4, 0.1)]).unwrap();
        assert!(contacts(&tangent, &g));

        let p = Point::bidisc(c(0.2, 0.0), c(0.2, 0.0)).unwrap();
        assert!(!contacts(&Datum::discrete(p.clone(), p).unwrap(), &g));
    }

    #[test]
    fn uncertifiable_left_inverse() {
        let k: Map = Arc::new(DiscPair {
            first: Arc::new(FnMap::new(
                Domain::Disc,
                Domain::Disc,
                "ζ²",
                |z| Ok(vec![z[0] * z[0]]),
                |z, v| Ok(vec![2.0 * z[0] * v[0]]),
            )),
            second: Arc::new(Identity(Domain::Disc)),
        });
        let res = GeodesicDisc::certified(k, Arc::new(Coordinate { index: 0 }), 1e-9);
        assert!(matches!(res, Err(Error::LeftInverseNotFound { .. })));
    }
}

//! Sampled certification of universal sets for the Carathéodory problem,
//! minimality witnesses on `G`, equivalence of finite families, left-inverse
//! checks for analytic discs and the balanced-datum path finder.

use std::f64::consts::TAU;
use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::bidisc::{car_bidisc, coordinate_norms};
use crate::datum::{
    datum_norm_disc, pushforward, Coordinate, Datum, Domain, HolomorphicMap, Identity, Map, Point,
};
use crate::disc::{angle_distance, disc_grid, pseudo_hyperbolic, Moebius, DEFAULT_TOL};
use crate::error::{Error, Result};
use crate::optimize::golden_section_max;
use crate::symmetrized::{car_g, royal_datum, symmetrize, CarGOptions, PhiOmega, ARGMAX_DEDUP};

/// Sample size used to check that family members map into the disc.
pub const MEMBERSHIP_SAMPLES: usize = 1000;

/// Default modulus bound for sampled points.
pub const DEFAULT_RADIUS: f64 = 0.95;

type Generator = dyn Fn(f64) -> Map + Send + Sync;

#[derive(Clone)]
pub enum Members {
    Finite(Vec<Map>),
    /// `θ ↦ member` for `θ` in `[start, start + len]`.
    Circle {
        generator: Arc<Generator>,
        start: f64,
        len: f64,
    },
}

/// A candidate universal set: a family of holomorphic maps from a domain into 𝔻.
#[derive(Clone)]
pub struct ExtremalFamily {
    domain: Domain,
    members: Members,
    name: String,
}

impl fmt::Debug for ExtremalFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ExtremalFamily")
            .field("domain", &self.domain)
            .field("name", &self.name)
            .finish()
    }
}

impl ExtremalFamily {
    pub fn finite(domain: Domain, members: Vec<Map>) -> Result<Self> {
        for m in &members {
            if m.source() != domain || m.target() != Domain::Disc {
                return Err(Error::InvalidParameter(format!(
                    "{} does not map {domain} into the disc",
                    m.describe()
                )));
            }
        }
        let name = format!(
            "{{{}}}",
            members
                .iter()
                .map(|m| m.describe())
                .collect::<Vec<_>>()
                .join(", ")
        );
        let family = Self {
            domain,
            members: Members::Finite(members),
            name,
        };
        family.check_members_in_disc()?;
        Ok(family)
    }

    /// Family parametrized by an arc of the circle; `len = 2π` is the full circle.
    pub fn circle(
        domain: Domain,
        name: impl Into<String>,
        generator: impl Fn(f64) -> Map + Send + Sync + 'static,
        start: f64,
        len: f64,
    ) -> Result<Self> {
        if !(len > 0.0 && len <= TAU) {
            return Err(Error::InvalidParameter(format!(
                "arc length {len} not in (0, 2π]"
            )));
        }
        let family = Self {
            domain,
            members: Members::Circle {
                generator: Arc::new(generator),
                start,
                len,
            },
            name: name.into(),
        };
        family.check_members_in_disc()?;
        Ok(family)
    }

    /// `{F¹, F²}` on the bidisc.
    pub fn coordinates() -> Self {
        Self::finite(
            Domain::Bidisc,
            vec![
                Arc::new(Coordinate { index: 0 }),
                Arc::new(Coordinate { index: 1 }),
            ],
        )
        .expect("coordinate functions map into the disc")
    }

    /// `{id}` on the disc.
    pub fn disc_identity() -> Self {
        Self::finite(Domain::Disc, vec![Arc::new(Identity(Domain::Disc))])
            .expect("identity maps into the disc")
    }

    /// `{Φ_ω : arg ω ∈ [start, start + len]}` on `G`.
    pub fn phi_arc(start: f64, len: f64) -> Result<Self> {
        Self::circle(
            Domain::SymBidisc,
            format!("Φ[arg ω ∈ {start}+{len}]"),
            |t| Arc::new(PhiOmega::from_angle(t)),
            start,
            len,
        )
    }

    /// `{Φ_ω : ω ∈ 𝕋}` on `G`.
    pub fn phi_circle() -> Self {
        Self::phi_arc(0.0, TAU).expect("Φ_ω maps G into the disc")
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn members(&self) -> &Members {
        &self.members
    }

    fn check_members_in_disc(&self) -> Result<()> {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
        for _ in 0..MEMBERSHIP_SAMPLES {
            let p = sample_point(self.domain, &mut rng, DEFAULT_RADIUS);
            let maps: Vec<Map> = match &self.members {
                Members::Finite(ms) => ms.clone(),
                Members::Circle {
                    generator,
                    start,
                    len,
                } => vec![generator(start + len * rng.gen::<f64>())],
            };
            for m in maps {
                let w = m.eval(&p)?;
                let r = w[0].norm();
                if r.is_nan() || r >= 1.0 {
                    return Err(Error::FamilyEscapesDisc(format!(
                        "{} sends {:?} to {}",
                        m.describe(),
                        p,
                        w[0]
                    )));
                }
            }
        }
        Ok(())
    }

    /// `max_{F ∈ family} |F(δ)|`; circle families are swept on `grid` angles
    /// and refined by golden section.
    pub fn best(&self, delta: &Datum, grid: usize) -> Result<f64> {
        let norm = |m: &dyn HolomorphicMap| datum_norm_disc(&pushforward(m, delta)?);
        match &self.members {
            Members::Finite(ms) => ms
                .iter()
                .map(|m| norm(m.as_ref()))
                .try_fold(f64::NEG_INFINITY, |acc, v| Ok(acc.max(v?))),
            Members::Circle {
                generator,
                start,
                len,
            } => {
                let f = |t: f64| norm(generator(t).as_ref()).unwrap_or(f64::NEG_INFINITY);
                Ok(arc_maximum(f, *start, *len, grid))
            }
        }
    }
}

fn arc_maximum(f: impl Fn(f64) -> f64, start: f64, len: f64, grid: usize) -> f64 {
    let full = len >= TAU;
    let n = ((grid as f64 * len / TAU).ceil() as usize).max(16);
    let step = if full {
        len / n as f64
    } else {
        len / (n - 1) as f64
    };
    let count = n;
    let values: Vec<f64> = (0..count).map(|j| f(start + j as f64 * step)).collect();
    let mut best = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    for j in 0..count {
        let (prev, next) = if full {
            ((j + count - 1) % count, (j + 1) % count)
        } else if j == 0 || j == count - 1 {
            continue;
        } else {
            (j - 1, j + 1)
        };
        if values[j] >= values[prev] && values[j] >= values[next] {
            let t = start + j as f64 * step;
            let (_, v) = golden_section_max(&f, t - step, t + step, 1e-12);
            best = best.max(v);
        }
    }
    best
}

/// Deterministic fixed points of a domain, used for equivalence probing and
/// grid residuals.
pub fn domain_grid(domain: Domain, n: usize) -> Vec<Vec<Complex64>> {
    let g = disc_grid(n, 0.9);
    let partner = |j: usize| g[(j * 97 + 31) % n];
    (0..n)
        .map(|j| match domain {
            Domain::Disc => vec![g[j]],
            Domain::Bidisc => vec![g[j], partner(j)],
            Domain::SymBidisc => vec![g[j] + partner(j), g[j] * partner(j)],
        })
        .collect()
}

/// The three probe points used to fit Möbius maps, built from `0, 1/2, i/2`.
pub fn probe_points(domain: Domain) -> [Vec<Complex64>; 3] {
    let seeds = [
        Complex64::new(0.0, 0.0),
        Complex64::new(0.5, 0.0),
        Complex64::new(0.0, 0.5),
    ];
    let mate = [
        Complex64::new(0.0, 0.0),
        Complex64::new(0.0, 1.0 / 3.0),
        Complex64::new(-1.0 / 3.0, 0.0),
    ];
    std::array::from_fn(|j| match domain {
        Domain::Disc => vec![seeds[j]],
        Domain::Bidisc => vec![seeds[j], mate[j]],
        Domain::SymBidisc => vec![seeds[j] + mate[j], seeds[j] * mate[j]],
    })
}

fn sample_disc(rng: &mut ChaCha8Rng, radius: f64) -> Complex64 {
    let r = radius * rng.gen::<f64>().sqrt();
    Complex64::from_polar(r, TAU * rng.gen::<f64>())
}

fn sample_point(domain: Domain, rng: &mut ChaCha8Rng, radius: f64) -> Vec<Complex64> {
    match domain {
        Domain::Disc => vec![sample_disc(rng, radius)],
        Domain::Bidisc => vec![sample_disc(rng, radius), sample_disc(rng, radius)],
        Domain::SymBidisc => {
            let (z, w) = (sample_disc(rng, radius), sample_disc(rng, radius));
            vec![z + w, z * w]
        }
    }
}

/// Seeded source of nondegenerate interior datums.
#[derive(Debug, Clone)]
pub struct NdDatumSampler {
    domain: Domain,
    seed: u64,
    infinitesimal_fraction: f64,
    radius: f64,
    rng: ChaCha8Rng,
}

impl NdDatumSampler {
    pub fn new(domain: Domain, seed: u64) -> Self {
        Self::with_options(domain, seed, 0.5, DEFAULT_RADIUS)
    }

    /// `radius` bounds the moduli of sampled disc coordinates (of the factors
    /// `z, w` for points `(z + w, zw)` of `G`).
    pub fn with_options(
        domain: Domain,
        seed: u64,
        infinitesimal_fraction: f64,
        radius: f64,
    ) -> Self {
        Self {
            domain,
            seed,
            infinitesimal_fraction: infinitesimal_fraction.clamp(0.0, 1.0),
            radius: radius.clamp(0.0, 0.999),
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn next_datum(&mut self) -> Datum {
        loop {
            let infinitesimal = self.rng.gen::<f64>() < self.infinitesimal_fraction;
            let p = sample_point(self.domain, &mut self.rng, self.radius);
            let p = Point::new(self.domain, p).expect("sampled points are interior");
            let datum = if infinitesimal {
                let v = (0..self.domain.dim())
                    .map(|_| {
                        Complex64::new(self.rng.gen_range(-1.0..1.0), self.rng.gen_range(-1.0..1.0))
                    })
                    .collect();
                Datum::infinitesimal(p, v)
            } else {
                let q = sample_point(self.domain, &mut self.rng, self.radius);
                let q = Point::new(self.domain, q).expect("sampled points are interior");
                Datum::discrete(p, q)
            };
            if let Ok(d) = datum {
                if d.is_nondegenerate() {
                    return d;
                }
            }
        }
    }
}

impl Iterator for NdDatumSampler {
    type Item = Datum;

    fn next(&mut self) -> Option<Datum> {
        Some(self.next_datum())
    }
}

/// The reference Carathéodory value for a domain: the datum norm on 𝔻, the
/// max-coordinate formula on 𝔻², and an unrefined circle sweep on `G`.
pub fn builtin_oracle(domain: Domain, grid_size: usize) -> impl Fn(&Datum) -> Result<f64> {
    move |delta: &Datum| {
        if delta.domain() != domain {
            return Err(Error::DomainMismatch {
                expected: domain,
                found: delta.domain(),
            });
        }
        match domain {
            Domain::Disc => datum_norm_disc(delta),
            Domain::Bidisc => Ok(car_bidisc(delta)?.value),
            Domain::SymBidisc => Ok(car_g(
                delta,
                CarGOptions {
                    grid_size,
                    refine: false,
                    keep_profile: false,
                },
            )?
            .value),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Tolerances {
    pub gap: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct UniversalityReport {
    pub passed: bool,
    pub n_samples: usize,
    /// Largest `oracle(δ) − max_F |F(δ)|` over the samples.
    pub max_gap: f64,
    pub worst_datum: Datum,
    pub seed: u64,
    pub tolerances: Tolerances,
}

/// Compares the family's best value with `oracle` on `n` sampled datums.
pub fn check_universality(
    family: &ExtremalFamily,
    sampler: &mut NdDatumSampler,
    n: usize,
    oracle: &dyn Fn(&Datum) -> Result<f64>,
    grid_size: usize,
    tol: f64,
) -> Result<UniversalityReport> {
    if family.domain() != sampler.domain() {
        return Err(Error::DomainMismatch {
            expected: family.domain(),
            found: sampler.domain(),
        });
    }
    if n == 0 {
        return Err(Error::InvalidParameter("need at least one sample".into()));
    }
    let mut max_gap = f64::NEG_INFINITY;
    let mut worst = None;
    for _ in 0..n {
        let delta = sampler.next_datum();
        let gap = oracle(&delta)? - family.best(&delta, grid_size)?;
        if gap > max_gap {
            max_gap = gap;
            worst = Some(delta);
        }
    }
    Ok(UniversalityReport {
        passed: max_gap <= tol,
        n_samples: n,
        max_gap,
        worst_datum: worst.expect("n > 0"),
        seed: sampler.seed(),
        tolerances: Tolerances { gap: tol },
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MinimalityRow {
    pub tau_angle: f64,
    pub argmax_angles: Vec<f64>,
    /// The argmax set is `{arg τ}` within [`ARGMAX_DEDUP`].
    pub singleton: bool,
}

/// For each `arg τ`, the argmax set of the Carathéodory profile at the royal datum.
pub fn minimality_probe_g(
    angles: &[f64],
    z0: Complex64,
    strength: f64,
    opts: CarGOptions,
) -> Result<Vec<MinimalityRow>> {
    angles
        .iter()
        .map(|&theta| {
            let delta = royal_datum(Complex64::from_polar(1.0, theta), z0, strength)?;
            let opt = car_g(&delta, opts)?;
            let singleton = !opt.flat
                && opt.argmax_angles.len() == 1
                && angle_distance(opt.argmax_angles[0], theta) <= ARGMAX_DEDUP;
            Ok(MinimalityRow {
                tau_angle: theta.rem_euclid(TAU),
                argmax_angles: opt.argmax_angles,
                singleton,
            })
        })
        .collect()
}

/// `|f(t0)|` bound reached by [`find_balanced_on_path`].
pub const BALANCE_TOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq)]
pub struct BalancedPoint {
    pub t0: f64,
    pub datum: Datum,
}

fn interpolate(start: &Datum, end: &Datum, t: f64) -> Result<Datum> {
    let (Datum::Discrete { p1: a1, p2: a2 }, Datum::Discrete { p1: b1, p2: b2 }) = (start, end)
    else {
        return Err(Error::DatumKind {
            expected: "discrete",
        });
    };
    let lerp = |a: &Point, b: &Point| -> Result<Point> {
        let coords = a
            .coords()
            .iter()
            .zip(b.coords())
            .map(|(x, y)| (1.0 - t) * x + t * y)
            .collect();
        Point::new(Domain::Bidisc, coords)
    };
    let d = lerp(a1, b1)
        .and_then(|p| Datum::discrete(p, lerp(a2, b2)?))
        .map_err(|_| Error::PathDegenerates { t })?;
    if !d.is_nondegenerate() {
        return Err(Error::PathDegenerates { t });
    }
    Ok(d)
}

/// Bisection along the straight path between two datums with opposite
/// dominant coordinates for a datum whose coordinate norms agree.
pub fn find_balanced_on_path(start: &Datum, end: &Datum, steps: usize) -> Result<BalancedPoint> {
    for d in [start, end] {
        if d.domain() != Domain::Bidisc {
            return Err(Error::DomainMismatch {
                expected: Domain::Bidisc,
                found: d.domain(),
            });
        }
        if !d.is_discrete() {
            return Err(Error::DatumKind {
                expected: "discrete",
            });
        }
        d.require_nondegenerate()?;
    }
    let f = |t: f64| -> Result<(f64, Datum)> {
        let d = interpolate(start, end, t)?;
        let n = coordinate_norms(&d)?;
        Ok((n[0] - n[1], d))
    };
    let steps = steps.max(1);
    for j in 0..=steps {
        f(j as f64 / steps as f64)?;
    }
    let (f0, d0) = f(0.0)?;
    let (f1, d1) = f(1.0)?;
    if f0 == 0.0 {
        return Ok(BalancedPoint { t0: 0.0, datum: d0 });
    }
    if f1 == 0.0 {
        return Ok(BalancedPoint { t0: 1.0, datum: d1 });
    }
    if f0.signum() == f1.signum() {
        return Err(Error::SameSignEndpoints { f0, f1 });
    }
    let (mut lo, mut hi) = (0.0_f64, 1.0_f64);
    let mut best = (0.5, f(0.5)?);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        let (fm, dm) = f(mid)?;
        if fm.abs() < best.1 .0.abs() || mid == best.0 {
            best = (mid, (fm, dm));
        }
        if fm == 0.0 || fm.abs() < BALANCE_TOL * 1e-2 || mid <= lo || mid >= hi {
            break;
        }
        if fm.signum() == f0.signum() {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(BalancedPoint {
        t0: best.0,
        datum: best.1 .1,
    })
}

/// Number of grid points used to confirm a Möbius relation between maps.
pub const EQUIVALENCE_GRID: usize = 256;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MatchedPair {
    pub a_index: usize,
    pub b_index: usize,
    /// `ψ_b = moebius ∘ φ_a`.
    pub moebius: Moebius,
    pub residual: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Matching {
    pub pairs: Vec<MatchedPair>,
}

/// Finds a bijection between two finite families with each pair related by
/// post-composition with a disc automorphism, or `None` if there is none.
pub fn check_equivalence(a: &ExtremalFamily, b: &ExtremalFamily) -> Result<Option<Matching>> {
    let (Members::Finite(fa), Members::Finite(fb)) = (&a.members, &b.members) else {
        return Err(Error::InvalidParameter(
            "equivalence needs finite families".into(),
        ));
    };
    if a.domain != b.domain {
        return Err(Error::DomainMismatch {
            expected: a.domain,
            found: b.domain,
        });
    }
    if fa.len() != fb.len() {
        return Ok(None);
    }
    let probes = probe_points(a.domain);
    let grid = domain_grid(a.domain, EQUIVALENCE_GRID);
    let images =
        |m: &Map| -> Result<Vec<Complex64>> { probes.iter().map(|p| Ok(m.eval(p)?[0])).collect() };

    let mut compat: Vec<Vec<Option<(Moebius, f64)>>> = Vec::with_capacity(fa.len());
    for (i, phi) in fa.iter().enumerate() {
        let pa = images(phi)?;
        let degenerate =
            (0..3).any(|j| (j + 1..3).any(|k| pseudo_hyperbolic(pa[j], pa[k]) < DEFAULT_TOL));
        if degenerate {
            return Err(Error::AmbiguousMatch { index: i });
        }
        let row = fb
            .iter()
            .map(|psi| -> Result<Option<(Moebius, f64)>> {
                let pb = images(psi)?;
                let Ok(m) = Moebius::from_two_points(pa[0], pb[0], pa[1], pb[1]) else {
                    return Ok(None);
                };
                if (m.eval_unchecked(pa[2]) - pb[2]).norm() > DEFAULT_TOL {
                    return Ok(None);
                }
                let mut residual: f64 = 0.0;
                for x in &grid {
                    let r = (m.eval_unchecked(phi.eval(x)?[0]) - psi.eval(x)?[0]).norm();
                    residual = residual.max(r);
                }
                Ok((residual <= DEFAULT_TOL).then_some((m, residual)))
            })
            .collect::<Result<Vec<_>>>()?;
        compat.push(row);
    }

    // Kuhn's augmenting paths on the compatibility graph
    let mut owner: Vec<Option<usize>> = vec![None; fb.len()];
    fn augment(
        i: usize,
        compat: &[Vec<Option<(Moebius, f64)>>],
        owner: &mut [Option<usize>],
        seen: &mut [bool],
    ) -> bool {
        for k in 0..owner.len() {
            if compat[i][k].is_some() && !seen[k] {
                seen[k] = true;
                if owner[k].is_none_or(|j| augment(j, compat, owner, seen)) {
                    owner[k] = Some(i);
                    return true;
                }
            }
        }
        false
    }
    for i in 0..fa.len() {
        let mut seen = vec![false; fb.len()];
        if !augment(i, &compat, &mut owner, &mut seen) {
            return Ok(None);
        }
    }
    let mut pairs: Vec<MatchedPair> = owner
        .iter()
        .enumerate()
        .map(|(k, i)| {
            let i = i.expect("perfect matching");
            let (moebius, residual) = compat[i][k].expect("matched pairs are compatible");
            MatchedPair {
                a_index: i,
                b_index: k,
                moebius,
                residual,
            }
        })
        .collect();
    pairs.sort_by_key(|p| p.a_index);
    Ok(Some(Matching { pairs }))
}

/// Residual below which `C ∘ k` is accepted as a disc automorphism.
pub const AUTOMORPHISM_TOL: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LeftInverseReport {
    pub is_automorphism: bool,
    /// `sup |C(k(ζ)) − m(ζ)|` over the grid; infinite if no fit was possible.
    pub residual: f64,
    pub moebius: Option<Moebius>,
}

/// Fits an automorphism `m` to `C ∘ k` from the probes `0, 1/2, i/2` and
/// measures how far `C ∘ k` is from `m` on a 256-point grid.
pub fn verify_left_inverse(c: &dyn HolomorphicMap, k: &dyn HolomorphicMap) -> LeftInverseReport {
    let fail = LeftInverseReport {
        is_automorphism: false,
        residual: f64::INFINITY,
        moebius: None,
    };
    let ck = |z: Complex64| -> Result<Complex64> { Ok(c.eval(&k.eval(&[z])?)?[0]) };
    let probes = [
        Complex64::new(0.0, 0.0),
        Complex64::new(0.5, 0.0),
        Complex64::new(0.0, 0.5),
    ];
    let Ok(w0) = ck(probes[0]) else { return fail };
    let Ok(w1) = ck(probes[1]) else { return fail };
    let Ok(to_origin) = Moebius::blaschke(w0) else {
        return fail;
    };
    let u = to_origin.eval_unchecked(w1);
    if u.norm().is_nan() || u.norm() == 0.0 {
        return fail;
    }
    // m = M_{w0}⁻¹ ∘ rotation, with m(1/2) = w1
    let m = to_origin.invert().compose(&Moebius::rotation(u.arg()));
    let mut residual: f64 = 0.0;
    for z in probes.into_iter().chain(disc_grid(EQUIVALENCE_GRID, 0.95)) {
        match ck(z) {
            Ok(w) => residual = residual.max((w - m.eval_unchecked(z)).norm()),
            Err(_) => {
                return LeftInverseReport {
                    moebius: Some(m),
                    ..fail
                }
            }
        }
    }
    LeftInverseReport {
        is_automorphism: residual < AUTOMORPHISM_TOL,
        residual,
        moebius: Some(m),
    }
}

/// Convenience for building sampled points in `G` from factor pairs.
pub fn symmetrized_point(z: Complex64, w: Complex64) -> Result<Point> {
    symmetrize(z, w)
}

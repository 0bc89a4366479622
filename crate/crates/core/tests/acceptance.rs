//! Acceptance suite: one line per criterion, non-zero exit if any fails.
//!
//! Run with `cargo test -p lempert --test acceptance`.

use std::f64::consts::{PI, TAU};
use std::process::ExitCode;
use std::sync::Arc;
use std::time::{Duration, Instant};

use lempert::bidisc::{
    balanced_geodesic, balanced_info, car_bidisc, coordinate_norms, kob_disc_bidisc,
};
use lempert::datum::{
    compose, datum_norm_disc, numeric_derivative, pushforward, Coordinate, FnMap, HolomorphicMap,
};
use lempert::disc::Moebius;
use lempert::symmetrized::{
    car_g, in_g, symmetrize, symmetrized_disc, symmetrized_geodesic, CarGOptions, PhiOmega,
    Symmetrization,
};
use lempert::verifier::{
    builtin_oracle, check_equivalence, check_universality, find_balanced_on_path,
    minimality_probe_g, verify_left_inverse, ExtremalFamily, NdDatumSampler,
};
use lempert::{Datum, Domain, Error, Map, Point};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const GAP_TOL: f64 = 1e-9;
const KOB_TOL: f64 = 1e-9;
const CONTRACTION_TOL: f64 = 1e-9;
const GRID_DOUBLING_TOL: f64 = 1e-9;
const ARGMAX_TOL: f64 = 1e-6;
const ROYAL_TOL: f64 = 1e-12;
const BALANCE_T_TOL: f64 = 1e-10;
const BALANCE_TOL: f64 = 1e-9;
const GEODESIC_TOL: f64 = 1e-9;
const NEGATION_TOL: f64 = 1e-12;
const EQUIVALENCE_TOL: f64 = 1e-9;
const DERIVATIVE_TOL: f64 = 1e-6;

struct Outcome {
    passed: bool,
    detail: String,
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn disc_point(rng: &mut ChaCha8Rng, radius: f64) -> Complex64 {
    Complex64::from_polar(radius * rng.gen::<f64>().sqrt(), TAU * rng.gen::<f64>())
}

fn random_moebius(rng: &mut ChaCha8Rng) -> Moebius {
    Moebius::new(TAU * rng.gen::<f64>(), disc_point(rng, 0.8)).unwrap()
}

fn scalar_map(
    name: &str,
    f: fn(Complex64, Complex64) -> Complex64,
    df: fn(Complex64, Complex64, Complex64, Complex64) -> Complex64,
) -> Map {
    Arc::new(FnMap::new(
        Domain::Bidisc,
        Domain::Disc,
        name,
        move |z| Ok(vec![f(z[0], z[1])]),
        move |z, v| Ok(vec![df(z[0], z[1], v[0], v[1])]),
    ))
}

/// Holomorphic self-maps of the bidisc into the disc, pairwise inequivalent
/// under post-composition with disc automorphisms.
fn base_maps() -> Vec<Map> {
    vec![
        Arc::new(Coordinate { index: 0 }),
        Arc::new(Coordinate { index: 1 }),
        scalar_map("(z+w)/2", |z, w| (z + w) / 2.0, |_, _, v, u| (v + u) / 2.0),
        scalar_map("zw", |z, w| z * w, |z, w, v, u| v * w + z * u),
    ]
}

fn outsider() -> Map {
    scalar_map(
        "(z²+w)/2",
        |z, w| (z * z + w) / 2.0,
        |z, _, v, u| (2.0 * z * v + u) / 2.0,
    )
}

fn ac1() -> Outcome {
    let family = ExtremalFamily::coordinates();
    let mut sampler = NdDatumSampler::new(Domain::Bidisc, 1);
    let oracle = builtin_oracle(Domain::Bidisc, 4096);
    let report = check_universality(&family, &mut sampler, 1000, &oracle, 4096, GAP_TOL).unwrap();

    let mut rng = ChaCha8Rng::seed_from_u64(101);
    let bases = base_maps();
    let pool: Vec<Map> = (0..100)
        .map(|j| compose(Arc::new(random_moebius(&mut rng)), bases[j % 4].clone()).unwrap())
        .collect();
    let mut excess = f64::NEG_INFINITY;
    for delta in NdDatumSampler::new(Domain::Bidisc, 1).take(1000) {
        let best = family.best(&delta, 4096).unwrap();
        for f in &pool {
            let v = datum_norm_disc(&pushforward(f.as_ref(), &delta).unwrap()).unwrap();
            excess = excess.max(v - best);
        }
    }
    Outcome {
        passed: report.passed && report.max_gap <= GAP_TOL && excess <= GAP_TOL,
        detail: format!(
            "max_gap={:.3e} competitor_excess={:.3e} over {} datums x 100 maps",
            report.max_gap, excess, report.n_samples
        ),
    }
}

fn ac2() -> Outcome {
    let mut sampler = NdDatumSampler::with_options(Domain::Bidisc, 2, 0.0, 0.95);
    let (mut value_err, mut hit_err) = (0.0_f64, 0.0_f64);
    for _ in 0..1000 {
        let delta = sampler.next_datum();
        let car = car_bidisc(&delta).unwrap().value;
        let kob = kob_disc_bidisc(&delta).unwrap();
        value_err = value_err.max((kob.value().unwrap() - car).abs());
        let (Datum::Discrete { p1, p2 }, Datum::Discrete { p1: a1, p2: a2 }) =
            (&delta, &kob.preimage)
        else {
            unreachable!("discrete datums only");
        };
        for (target, alpha) in [(p1, a1), (p2, a2)] {
            let hit = kob.disc.eval(alpha.coords()).unwrap();
            for (h, t) in hit.iter().zip(target.coords()) {
                hit_err = hit_err.max((h - t).norm());
            }
        }
    }
    Outcome {
        passed: value_err <= KOB_TOL && hit_err <= KOB_TOL,
        detail: format!(
            "|kob - car| <= {value_err:.3e}, endpoint miss <= {hit_err:.3e} over 1000 datums"
        ),
    }
}

fn ac3() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let omegas: Vec<PhiOmega> = (0..256)
        .map(|_| PhiOmega::from_angle(TAU * rng.gen::<f64>()))
        .collect();
    let fine = CarGOptions {
        grid_size: 8192,
        ..CarGOptions::default()
    };
    let (mut excess, mut drift, mut lempert_excess) =
        (f64::NEG_INFINITY, 0.0_f64, f64::NEG_INFINITY);
    let mut n = 0;
    for big in NdDatumSampler::new(Domain::Bidisc, 3) {
        if n == 500 {
            break;
        }
        let Ok(delta) = pushforward(&Symmetrization, &big) else {
            continue;
        };
        if !delta.is_nondegenerate() {
            continue;
        }
        n += 1;
        let car = car_g(&delta, CarGOptions::default()).unwrap().value;
        for phi in &omegas {
            let v = datum_norm_disc(&pushforward(phi, &delta).unwrap()).unwrap();
            excess = excess.max(v - car);
        }
        drift = drift.max((car_g(&delta, fine).unwrap().value - car).abs());
        lempert_excess = lempert_excess.max(car - car_bidisc(&big).unwrap().value);
    }
    Outcome {
        passed: excess <= CONTRACTION_TOL && drift <= GRID_DOUBLING_TOL && lempert_excess <= CONTRACTION_TOL,
        detail: format!(
            "max |Φ_ω(δ)| - car_G = {excess:.3e}, grid 4096->8192 drift = {drift:.3e}, car_G - car_bidisc <= {lempert_excess:.3e} over {n} datums"
        ),
    }
}

fn ac4() -> Outcome {
    let angles: Vec<f64> = (0..64).map(|j| TAU * j as f64 / 64.0).collect();
    let (mut worst, mut singletons, mut total) = (0.0_f64, 0, 0);
    for z0 in [c(0.0, 0.0), c(0.5, 0.0)] {
        for row in minimality_probe_g(&angles, z0, 1.0, CarGOptions::default()).unwrap() {
            total += 1;
            if row.argmax_angles.len() == 1 {
                let err = lempert::disc::angle_distance(row.argmax_angles[0], row.tau_angle);
                worst = worst.max(err);
                if err <= ARGMAX_TOL {
                    singletons += 1;
                }
            } else {
                worst = f64::INFINITY;
            }
        }
    }
    Outcome {
        passed: singletons == total,
        detail: format!(
            "{singletons}/{total} singleton argmax sets, max |argmax - arg τ| = {worst:.3e} rad"
        ),
    }
}

fn ac5() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut worst = 0.0_f64;
    for _ in 0..1000 {
        let phi = PhiOmega::from_angle(TAU * rng.gen::<f64>());
        let zeta = disc_point(&mut rng, 0.95);
        let v = phi.value(2.0 * zeta, zeta * zeta).unwrap();
        worst = worst.max((v + zeta).norm());
    }
    Outcome {
        passed: worst < ROYAL_TOL,
        detail: format!("max |Φ_ω(2ζ, ζ²) + ζ| = {worst:.3e} over 1000 pairs"),
    }
}

fn ac6() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let inside = (0..10_000)
        .filter(|_| {
            let (z, w) = (disc_point(&mut rng, 1.0), disc_point(&mut rng, 1.0));
            in_g(z + w, z * w)
        })
        .count();
    let outside = (0..1000)
        .filter(|_| {
            let z = Complex64::from_polar(1.05, TAU * rng.gen::<f64>());
            let w = disc_point(&mut rng, 1.0);
            !in_g(z + w, z * w)
        })
        .count();
    let corner = in_g(c(2.0, 0.0), c(1.0, 0.0));
    Outcome {
        passed: inside == 10_000 && outside == 1000 && !corner,
        detail: format!("{inside}/10000 symmetrized pairs inside, {outside}/1000 outside pairs rejected, in_G(2,1) = {corner}"),
    }
}

fn bidisc_datum(p1: [Complex64; 2], p2: [Complex64; 2]) -> Datum {
    Datum::discrete(
        Point::bidisc(p1[0], p1[1]).unwrap(),
        Point::bidisc(p2[0], p2[1]).unwrap(),
    )
    .unwrap()
}

fn balanced_datums() -> (Outcome, Vec<Datum>) {
    let zero = c(0.0, 0.0);
    let demo = find_balanced_on_path(
        &bidisc_datum([zero, zero], [c(0.5, 0.0), zero]),
        &bidisc_datum([zero, zero], [zero, c(0.5, 0.0)]),
        16,
    )
    .unwrap();
    let expected = bidisc_datum([zero, zero], [c(0.25, 0.0), c(0.25, 0.0)]);
    let demo_ok = (demo.t0 - 0.5).abs() <= BALANCE_T_TOL
        && demo.datum.max_abs_diff(&expected).unwrap() <= 1e-12;

    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut found = Vec::new();
    let mut failures = 0;
    while found.len() < 100 {
        let mut random = || {
            let d = bidisc_datum(
                [disc_point(&mut rng, 0.9), disc_point(&mut rng, 0.9)],
                [disc_point(&mut rng, 0.9), disc_point(&mut rng, 0.9)],
            );
            let n = coordinate_norms(&d).unwrap();
            (d, n[0] - n[1])
        };
        let (a, fa) = random();
        let (b, fb) = random();
        if fa.signum() == fb.signum() {
            continue;
        }
        match find_balanced_on_path(&a, &b, 32) {
            Ok(bp)
                if balanced_info(&bp.datum)
                    .map(|i| i.balanced && i.gap.abs() <= BALANCE_TOL)
                    .unwrap_or(false) =>
            {
                found.push(bp.datum)
            }
            _ => {
                failures += 1;
                found.push(a);
            }
        }
    }
    (
        Outcome {
            passed: demo_ok && failures == 0,
            detail: format!(
                "demo t0 = {:.12}, {}/100 random paths balanced",
                demo.t0,
                100 - failures
            ),
        },
        found,
    )
}

fn ac8(balanced: &[Datum]) -> Outcome {
    let mut worst_balanced = 0.0_f64;
    let mut balanced_ok = true;
    for d in balanced {
        match balanced_geodesic(d) {
            Ok(g) => worst_balanced = worst_balanced.max(g.residual()),
            Err(_) => balanced_ok = false,
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let (mut certified, mut worst_sym) = (0, 0.0_f64);
    for _ in 0..100 {
        if let Ok(g) = symmetrized_geodesic(random_moebius(&mut rng)) {
            certified += 1;
            worst_sym = worst_sym.max(g.geodesic.residual());
        }
    }
    let parabolic = symmetrized_geodesic(Moebius::parabolic(c(1.0, 0.0), 1.0).unwrap());
    let report = verify_left_inverse(
        &PhiOmega::from_angle(0.0),
        symmetrized_disc(Moebius::IDENTITY).as_ref(),
    );
    let negation = report
        .moebius
        .is_some_and(|m| m.approx_eq(&Moebius::rotation(PI), NEGATION_TOL));
    let center = matches!(
        symmetrized_geodesic(Moebius::rotation(PI)),
        Err(Error::LeftInverseNotFound { .. })
    );
    Outcome {
        passed: balanced_ok
            && worst_balanced < GEODESIC_TOL
            && worst_sym < GEODESIC_TOL
            && parabolic.is_ok_and(|g| g.residual < GEODESIC_TOL)
            && negation
            && report.residual < NEGATION_TOL
            && center,
        detail: format!(
            "balanced residual <= {worst_balanced:.3e} ({} discs), symmetrized residual <= {worst_sym:.3e} ({certified}/100 certified), royal fit residual {:.3e}, rotation-by-π rejected = {center}",
            balanced.len(),
            report.residual
        ),
    }
}

fn ac9() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let bases = base_maps();
    let (mut recovered, mut rejected, mut worst) = (0, 0, 0.0_f64);
    for _ in 0..50 {
        let size = rng.gen_range(1..=4);
        let mut order: Vec<usize> = (0..4).collect();
        for j in (1..4).rev() {
            order.swap(j, rng.gen_range(0..=j));
        }
        let members: Vec<Map> = order[..size]
            .iter()
            .map(|&j| compose(Arc::new(random_moebius(&mut rng)), bases[j].clone()).unwrap())
            .collect();
        let planted: Vec<Moebius> = (0..size).map(|_| random_moebius(&mut rng)).collect();
        let perm: Vec<usize> = {
            let mut p: Vec<usize> = (0..size).collect();
            for j in (1..size).rev() {
                p.swap(j, rng.gen_range(0..=j));
            }
            p
        };
        // b[perm[i]] = planted[i] ∘ a[i]
        let mut image: Vec<Option<Map>> = vec![None; size];
        for i in 0..size {
            image[perm[i]] = Some(compose(Arc::new(planted[i]), members[i].clone()).unwrap());
        }
        let image: Vec<Map> = image.into_iter().map(Option::unwrap).collect();
        let a = ExtremalFamily::finite(Domain::Bidisc, members.clone()).unwrap();
        let b = ExtremalFamily::finite(Domain::Bidisc, image.clone()).unwrap();
        if let Some(matching) = check_equivalence(&a, &b).unwrap() {
            let ok = matching.pairs.iter().all(|p| {
                worst = worst.max(p.residual);
                p.b_index == perm[p.a_index]
                    && p.moebius.approx_eq(&planted[p.a_index], EQUIVALENCE_TOL)
                    && p.residual < EQUIVALENCE_TOL
            });
            if ok {
                recovered += 1;
            }
        }

        let mut spoiled = image;
        let victim = rng.gen_range(0..size);
        spoiled[victim] = compose(Arc::new(random_moebius(&mut rng)), outsider()).unwrap();
        let b = ExtremalFamily::finite(Domain::Bidisc, spoiled).unwrap();
        if check_equivalence(&a, &b).unwrap().is_none() {
            rejected += 1;
        }
    }
    Outcome {
        passed: recovered == 50 && rejected == 50,
        detail: format!("{recovered}/50 planted pairs recovered (grid residual <= {worst:.3e}), {rejected}/50 non-equivalent pairs rejected"),
    }
}

fn ac10() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let mut worst = 0.0_f64;
    let mut check = |map: &dyn HolomorphicMap, p: Point, v: Vec<Complex64>| {
        let exact = map.deriv(p.coords(), &v).unwrap();
        let numeric = numeric_derivative(map, &p, &v).unwrap();
        for (x, y) in exact.iter().zip(&numeric) {
            worst = worst.max((x - y).norm());
        }
    };
    for j in 0..1000 {
        let v1 = c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        let v2 = c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        let (z, w) = (disc_point(&mut rng, 0.9), disc_point(&mut rng, 0.9));
        match j % 3 {
            0 => {
                let phi = PhiOmega::from_angle(TAU * rng.gen::<f64>());
                check(&phi, symmetrize(z, w).unwrap(), vec![v1, v2]);
            }
            1 => check(&random_moebius(&mut rng), Point::disc(z).unwrap(), vec![v1]),
            _ => check(&Symmetrization, Point::bidisc(z, w).unwrap(), vec![v1, v2]),
        }
    }
    Outcome {
        passed: worst <= DERIVATIVE_TOL,
        detail: format!("max |analytic - central difference| = {worst:.3e} over 1000 evaluations"),
    }
}

fn timed(f: impl FnOnce() -> Outcome) -> (Outcome, Duration) {
    let start = Instant::now();
    let out = f();
    (out, start.elapsed())
}

fn main() -> ExitCode {
    let mut balanced = Vec::new();
    type Criterion<'a> = (
        &'static str,
        &'static str,
        f64,
        Box<dyn FnOnce() -> Outcome + 'a>,
    );
    let criteria: Vec<Criterion> = vec![
        (
            "AC1",
            "universality of {F1, F2} on the bidisc",
            5.0,
            Box::new(ac1),
        ),
        (
            "AC2",
            "car = kob on the bidisc via explicit discs",
            10.0,
            Box::new(ac2),
        ),
        (
            "AC3",
            "Φ_ω contraction and car_G grid stability",
            30.0,
            Box::new(ac3),
        ),
        (
            "AC4",
            "minimality witnesses at royal datums",
            30.0,
            Box::new(ac4),
        ),
        ("AC5", "royal identity", 1.0, Box::new(ac5)),
        ("AC6", "membership in G", 1.0, Box::new(ac6)),
        (
            "AC7",
            "balanced-datum path finder",
            2.0,
            Box::new(|| {
                let (out, found) = balanced_datums();
                balanced = found;
                out
            }),
        ),
    ];
    let mut all = true;
    let mut report = |id: &str, name: &str, budget: f64, out: Outcome, elapsed: Duration| {
        let secs = elapsed.as_secs_f64();
        let passed = out.passed && secs < budget;
        all &= passed;
        println!(
            "[{}] {id} {name}: {} ({secs:.2} s, budget {budget} s)",
            if passed { "PASS" } else { "FAIL" },
            out.detail
        );
    };
    for (id, name, budget, f) in criteria {
        let (out, elapsed) = timed(f);
        report(id, name, budget, out, elapsed);
    }
    let (out, elapsed) = timed(|| ac8(&balanced));
    report("AC8", "geodesic certification", 5.0, out, elapsed);
    let (out, elapsed) = timed(ac9);
    report("AC9", "equivalence checker", 5.0, out, elapsed);
    let (out, elapsed) = timed(ac10);
    report("AC10", "derivative oracle", 2.0, out, elapsed);

    if all {
        println!("acceptance: all criteria passed");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: FAILED");
        ExitCode::FAILURE
    }
}

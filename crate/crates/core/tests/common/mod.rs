#![allow(dead_code)]

use std::f64::consts::TAU;

use lempert::datum::{Datum, Point};
use lempert::disc::Moebius;
use num_complex::Complex64;
use proptest::prelude::*;

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Points of the disc of the given radius, uniform in area.
pub fn disc_point(radius: f64) -> impl Strategy<Value = Complex64> {
    (0.0..1.0f64, 0.0..TAU).prop_map(move |(u, t)| Complex64::from_polar(radius * u.sqrt(), t))
}

pub fn moebius() -> impl Strategy<Value = Moebius> {
    (0.0..TAU, disc_point(0.8)).prop_map(|(t, a)| Moebius::new(t, a).unwrap())
}

pub fn tangent() -> impl Strategy<Value = Complex64> {
    (-1.0..1.0f64, -1.0..1.0f64)
        .prop_filter("nonzero", |(x, y)| x.hypot(*y) > 1e-3)
        .prop_map(|(x, y)| c(x, y))
}

pub fn bidisc_datum(radius: f64) -> impl Strategy<Value = Datum> {
    (
        disc_point(radius),
        disc_point(radius),
        disc_point(radius),
        disc_point(radius),
    )
        .prop_filter("distinct points", |(a, b, x, y)| {
            (a - x).norm() + (b - y).norm() > 1e-6
        })
        .prop_map(|(a, b, x, y)| {
            Datum::discrete(Point::bidisc(a, b).unwrap(), Point::bidisc(x, y).unwrap()).unwrap()
        })
}

//! JSON encoding: complex numbers as `[re, im]`, datums as
//! `{"kind":"discrete","domain":"bidisc","p1":[[re,im],...],"p2":[...]}` or
//! `{"kind":"infinitesimal","domain":...,"p":[...],"v":[...]}`.

use num_complex::Complex64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::Value;

use crate::datum::{Datum, Domain, Point};
use crate::error::{Error, Result};

/// `#[serde(with = "crate::json::complex")]` for a single `Complex64`.
pub mod complex {
    use super::*;

    pub fn serialize<S: Serializer>(z: &Complex64, s: S) -> std::result::Result<S::Ok, S::Error> {
        [z.re, z.im].serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> std::result::Result<Complex64, D::Error> {
        let [re, im] = <[f64; 2]>::deserialize(d)?;
        Ok(Complex64::new(re, im))
    }
}

/// `#[serde(with = "crate::json::complex_vec")]` for `Vec<Complex64>`.
pub mod complex_vec {
    use super::*;

    pub fn serialize<S: Serializer>(
        zs: &[Complex64],
        s: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        to_pairs(zs).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> std::result::Result<Vec<Complex64>, D::Error> {
        Ok(from_pairs(Vec::<[f64; 2]>::deserialize(d)?))
    }
}

pub fn to_pairs(zs: &[Complex64]) -> Vec<[f64; 2]> {
    zs.iter().map(|z| [z.re, z.im]).collect()
}

fn from_pairs(pairs: Vec<[f64; 2]>) -> Vec<Complex64> {
    pairs
        .into_iter()
        .map(|[re, im]| Complex64::new(re, im))
        .collect()
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
enum DatumWire {
    Discrete {
        domain: Domain,
        p1: Vec<[f64; 2]>,
        p2: Vec<[f64; 2]>,
    },
    Infinitesimal {
        domain: Domain,
        p: Vec<[f64; 2]>,
        v: Vec<[f64; 2]>,
    },
}

impl From<&Datum> for DatumWire {
    fn from(d: &Datum) -> Self {
        match d {
            Datum::Discrete { p1, p2 } => DatumWire::Discrete {
                domain: p1.domain(),
                p1: to_pairs(p1.coords()),
                p2: to_pairs(p2.coords()),
            },
            Datum::Infinitesimal { p, v } => DatumWire::Infinitesimal {
                domain: p.domain(),
                p: to_pairs(p.coords()),
                v: to_pairs(v),
            },
        }
    }
}

impl TryFrom<DatumWire> for Datum {
    type Error = Error;

    fn try_from(w: DatumWire) -> Result<Self> {
        match w {
            DatumWire::Discrete { domain, p1, p2 } => Datum::discrete(
                Point::new(domain, from_pairs(p1))?,
                Point::new(domain, from_pairs(p2))?,
            ),
            DatumWire::Infinitesimal { domain, p, v } => {
                Datum::infinitesimal(Point::new(domain, from_pairs(p))?, from_pairs(v))
            }
        }
    }
}

impl Serialize for Datum {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        DatumWire::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for Datum {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let wire = DatumWire::deserialize(d)?;
        Datum::try_from(wire).map_err(serde::de::Error::custom)
    }
}

/// Parses a datum, keeping domain errors distinct from syntax errors.
pub fn parse_datum(text: &str) -> Result<Datum> {
    let wire: DatumWire = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    Datum::try_from(wire)
}

/// Rounds `x` to 12 significant digits.
pub fn round_sig12(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{x:.11e}").parse().unwrap_or(x)
}

/// Rounds every floating-point number in a JSON tree to 12 significant digits.
pub fn round_value(v: &mut Value) {
    match v {
        Value::Number(n) if n.is_f64() => {
            if let Some(x) = n.as_f64() {
                if let Some(r) = serde_json::Number::from_f64(round_sig12(x)) {
                    *n = r;
                }
            }
        }
        Value::Array(items) => items.iter_mut().for_each(round_value),
        Value::Object(map) => map.values_mut().for_each(round_value),
        _ => {}
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn datum_encoding_layout() {
        let d = Datum::discrete(
            Point::bidisc(Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0)).unwrap(),
            Point::bidisc(Complex64::new(0.5, 0.0), Complex64::new(0.3, -0.1)).unwrap(),
        )
        .unwrap();
        let text = serde_json::to_string(&d).unwrap();
        assert_eq!(
            text,
            r#"{"kind":"discrete","domain":"bidisc","p1":[[0.0,0.0],[0.0,0.0]],"p2":[[0.5,0.0],[0.3,-0.1]]}"#
        );
        assert_eq!(parse_datum(&text).unwrap(), d);
    }

    #[test]
    fn infinitesimal_and_aliases() {
        let d = parse_datum(
            r#"{"kind":"infinitesimal","domain":"G","p":[[0,0],[0,0]],"v":[[1,0],[0,0]]}"#,
        )
        .unwrap();
        assert_eq!(d.domain(), Domain::SymBidisc);
        assert!(d.is_nondegenerate());
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(parse_datum("{"), Err(Error::Parse(_))));
        assert!(matches!(
            parse_datum(r#"{"kind":"discrete","domain":"disc","p1":[[1.5,0]],"p2":[[0,0]]}"#),
            Err(Error::DomainViolation(_))
        ));
        assert!(matches!(
            parse_datum(r#"{"kind":"sideways","domain":"disc"}"#),
            Err(Error::Parse(_))
        ));
    }

    #[test]
    fn sig12_rounding() {
        assert_eq!(round_sig12(0.5493061443340549), 0.549306144334);
        assert_eq!(round_sig12(-1.0e-20), -1.0e-20);
        assert_eq!(round_sig12(0.0), 0.0);
    }
}

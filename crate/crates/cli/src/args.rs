//! Value parsers for complex numbers, complex lists and angles.

use std::f64::consts::PI;
use std::str::FromStr;

use biortho_core::{c64, Complex};

/// A complex flag value written "re,im" (or just "re").
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ComplexArg(pub Complex);

fn parse_f64(s: &str) -> Result<f64, String> {
    let s = s.trim();
    let v: f64 = s.parse().map_err(|_| format!("invalid number {s:?}"))?;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(format!("non-finite number {s:?}"))
    }
}

impl FromStr for ComplexArg {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let mut parts = s.split(',');
        let re = parse_f64(parts.next().unwrap_or(""))?;
        let im = match parts.next() {
            Some(p) => parse_f64(p)?,
            None => 0.0,
        };
        if parts.next().is_some() {
            return Err(format!("expected \"re,im\", got {s:?}"));
        }
        Ok(Self(c64(re, im)))
    }
}

/// Semicolon-separated complex values: "-2,0;0.2,1.5".
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexList(pub Vec<Complex>);

impl FromStr for ComplexList {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let items = s
            .split(';')
            .filter(|p| !p.trim().is_empty())
            .map(|p| p.parse::<ComplexArg>().map(|c| c.0))
            .collect::<Result<Vec<_>, _>>()?;
        if items.is_empty() {
            return Err("empty list".into());
        }
        Ok(Self(items))
    }
}

/// An angle: a number, or a rational multiple of pi such as "pi/4", "-3pi/4".
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AngleArg(pub f64);

impl FromStr for AngleArg {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let t = s.trim();
        let Some(pos) = t.find("pi") else {
            return parse_f64(t).map(Self);
        };
        let (head, tail) = (&t[..pos], &t[pos + 2..]);
        let coeff = match head.trim_end_matches('*') {
            "" | "+" => 1.0,
            "-" => -1.0,
            h => parse_f64(h)?,
        };
        let div = match tail.strip_prefix('/') {
            Some(d) => parse_f64(d)?,
            None if tail.is_empty() => 1.0,
            None => return Err(format!("invalid angle {s:?}")),
        };
        Ok(Self(coeff * PI / div))
    }
}

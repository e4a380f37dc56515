//! Embedding values and their sorts.
//!
//! All numeric data is kept as exact rationals so that rewriting is
//! deterministic and golden values such as `(B + C) / 2` compare exactly.

use std::fmt;
use std::str::FromStr;

use num::{BigInt, BigRational, One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn rational(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Sorts of the embedding signature.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sort {
    Node,
    Scalar,
    Point,
    Vector,
    Color,
    Multi(Box<Sort>),
}

impl Sort {
    /// Parses a data sort name as used in embedding declarations.
    pub fn parse_data(name: &str) -> Result<Sort> {
        match name {
            "scalar" => Ok(Sort::Scalar),
            "point" => Ok(Sort::Point),
            "vector" => Ok(Sort::Vector),
            "color" => Ok(Sort::Color),
            other => Err(Error::Sort(format!("unknown sort `{other}`"))),
        }
    }
}

impl fmt::Display for Sort {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sort::Node => f.write_str("node"),
            Sort::Scalar => f.write_str("scalar"),
            Sort::Point => f.write_str("point"),
            Sort::Vector => f.write_str("vector"),
            Sort::Color => f.write_str("color"),
            Sort::Multi(s) => write!(f, "multi({s})"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
}

impl BinOp {
    pub fn symbol(self) -> char {
        match self {
            BinOp::Add => '+',
            BinOp::Sub => '-',
            BinOp::Mul => '*',
            BinOp::Div => '/',
        }
    }
}

/// Result sort of `lhs op rhs`, or `None` when the profile does not exist.
pub fn binary_sort(op: BinOp, lhs: &Sort, rhs: &Sort) -> Option<Sort> {
    use Sort::*;
    match (op, lhs, rhs) {
        (BinOp::Add, Scalar, Scalar) => Some(Scalar),
        // Sums of points are allowed so that `(a + b) / 2` style barycenters
        // can be written directly.
        (BinOp::Add, Point, Point) | (BinOp::Add, Point, Vector) | (BinOp::Add, Vector, Point) => {
            Some(Point)
        }
        (BinOp::Add, Vector, Vector) => Some(Vector),
        (BinOp::Add, Color, Color) => Some(Color),
        (BinOp::Sub, Scalar, Scalar) => Some(Scalar),
        (BinOp::Sub, Point, Point) => Some(Vector),
        (BinOp::Sub, Point, Vector) => Some(Point),
        (BinOp::Sub, Vector, Vector) => Some(Vector),
        (BinOp::Sub, Color, Color) => Some(Color),
        (BinOp::Mul, Scalar, s) | (BinOp::Mul, s, Scalar)
            if matches!(s, Scalar | Point | Vector | Color) =>
        {
            Some(s.clone())
        }
        (BinOp::Div, s, Scalar) if matches!(s, Scalar | Point | Vector | Color) => Some(s.clone()),
        _ => None,
    }
}

/// Result sort of `mean` applied to an argument of sort `arg`.
pub fn mean_sort(arg: &Sort) -> Option<Sort> {
    match arg {
        Sort::Multi(inner) if matches!(**inner, Sort::Scalar | Sort::Point | Sort::Vector | Sort::Color) => {
            Some((**inner).clone())
        }
        _ => None,
    }
}

/// A datum carried by a node label.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Value {
    Scalar(Rational),
    Point(Rational, Rational),
    Vector(Rational, Rational),
    /// RGB channels on the 0..=255 scale.
    Color(Rational, Rational, Rational),
    /// A multiset, kept sorted so that equality ignores order.
    Multi(Vec<Value>),
}

impl Value {
    pub fn point(x: i64, y: i64) -> Value {
        Value::Point(rational(x), rational(y))
    }

    pub fn vector(x: i64, y: i64) -> Value {
        Value::Vector(rational(x), rational(y))
    }

    pub fn rgb(r: u8, g: u8, b: u8) -> Value {
        Value::Color(rational(r.into()), rational(g.into()), rational(b.into()))
    }

    pub fn multiset(mut values: Vec<Value>) -> Value {
        values.sort();
        Value::Multi(values)
    }

    pub fn sort(&self) -> Sort {
        match self {
            Value::Scalar(_) => Sort::Scalar,
            Value::Point(..) => Sort::Point,
            Value::Vector(..) => Sort::Vector,
            Value::Color(..) => Sort::Color,
            Value::Multi(items) => Sort::Multi(Box::new(items.first().map_or(Sort::Scalar, Value::sort))),
        }
    }

    fn components(&self) -> Vec<&Rational> {
        match self {
            Value::Scalar(s) => vec![s],
            Value::Point(x, y) | Value::Vector(x, y) => vec![x, y],
            Value::Color(r, g, b) => vec![r, g, b],
            Value::Multi(_) => vec![],
        }
    }

    fn rebuild(&self, c: Vec<Rational>) -> Value {
        let mut it = c.into_iter();
        let mut next = || it.next().expect("component count");
        match self {
            Value::Scalar(_) => Value::Scalar(next()),
            Value::Point(..) => Value::Point(next(), next()),
            Value::Vector(..) => Value::Vector(next(), next()),
            Value::Color(..) => Value::Color(next(), next(), next()),
            Value::Multi(_) => unreachable!("multisets have no components"),
        }
    }

    fn zip_with(&self, other: &Value, shape: &Value, f: impl Fn(&Rational, &Rational) -> Rational) -> Value {
        let c = self
            .components()
            .into_iter()
            .zip(other.components())
            .map(|(a, b)| f(a, b))
            .collect();
        shape.rebuild(c)
    }

    fn scale(&self, k: &Rational) -> Value {
        self.rebuild(self.components().into_iter().map(|c| c * k).collect())
    }

    /// Applies a data operation of the embedding algebra.
    pub fn binary(op: BinOp, lhs: &Value, rhs: &Value) -> Result<Value> {
        let (ls, rs) = (lhs.sort(), rhs.sort());
        let out = binary_sort(op, &ls, &rs)
            .ok_or_else(|| Error::Sort(format!("no operation {ls} {} {rs}", op.symbol())))?;
        Ok(match op {
            BinOp::Add => {
                let shape = if out == Sort::Point { Value::point(0, 0) } else { lhs.clone() };
                lhs.zip_with(rhs, &shape, |a, b| a + b)
            }
            BinOp::Sub => {
                let shape = match out {
                    Sort::Vector => Value::vector(0, 0),
                    _ => lhs.clone(),
                };
                lhs.zip_with(rhs, &shape, |a, b| a - b)
            }
            BinOp::Mul => match (lhs, rhs) {
                (Value::Scalar(k), v) if ls == Sort::Scalar => v.scale(k),
                (v, Value::Scalar(k)) => v.scale(k),
                _ => unreachable!("checked by binary_sort"),
            },
            BinOp::Div => {
                let Value::Scalar(k) = rhs else { unreachable!("checked by binary_sort") };
                if k.is_zero() {
                    return Err(Error::Eval("division by zero".into()));
                }
                lhs.scale(&k.recip())
            }
        })
    }

    /// Center of gravity of a multiset; the empty multiset has no mean.
    pub fn mean(&self) -> Result<Value> {
        let Value::Multi(items) = self else {
            return Err(Error::Sort(format!("mean expects a multiset, got {}", self.sort())));
        };
        let first = items
            .first()
            .ok_or_else(|| Error::Eval("mean of an empty multiset".into()))?;
        if mean_sort(&self.sort()).is_none() {
            return Err(Error::Sort(format!("mean is undefined on {}", self.sort())));
        }
        let mut acc: Vec<Rational> = first.components().into_iter().cloned().collect();
        for item in &items[1..] {
            if item.sort() != first.sort() {
                return Err(Error::Sort("mixed sorts in multiset".into()));
            }
            for (a, c) in acc.iter_mut().zip(item.components()) {
                *a += c;
            }
        }
        let n = rational(items.len() as i64);
        Ok(first.rebuild(acc.into_iter().map(|a| a / &n).collect()))
    }

    /// Channel values rounded to bytes, used by the SVG export.
    pub fn to_rgb8(&self) -> Option<[u8; 3]> {
        let Value::Color(r, g, b) = self else { return None };
        let byte = |c: &Rational| c.round().to_integer().to_i64().unwrap_or(0).clamp(0, 255) as u8;
        Some([byte(r), byte(g), byte(b)])
    }

    pub fn to_f64_pair(&self) -> Option<(f64, f64)> {
        match self {
            Value::Point(x, y) | Value::Vector(x, y) => Some((to_f64(x), to_f64(y))),
            _ => None,
        }
    }
}

pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Writes `r` as an integer, an exact decimal, or `n/d`.
pub fn format_rational(r: &Rational) -> String {
    if r.is_integer() {
        return r.to_integer().to_string();
    }
    let denom = r.denom().clone();
    let (mut twos, mut fives, mut rest) = (0u32, 0u32, denom.clone());
    let two = BigInt::from(2);
    let five = BigInt::from(5);
    while (&rest % &two).is_zero() {
        rest /= &two;
        twos += 1;
    }
    while (&rest % &five).is_zero() {
        rest /= &five;
        fives += 1;
    }
    if !rest.is_one() {
        return format!("{}/{}", r.numer(), r.denom());
    }
    let digits = twos.max(fives) as usize;
    let scaled = (r.abs() * Rational::from_integer(num::pow(BigInt::from(10), digits))).to_integer();
    let mut text = scaled.to_string();
    if text.len() <= digits {
        text = format!("{}{}", "0".repeat(digits + 1 - text.len()), text);
    }
    let split = text.len() - digits;
    let sign = if r.is_negative() { "-" } else { "" };
    format!("{sign}{}.{}", &text[..split], &text[split..])
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Scalar(s) => f.write_str(&format_rational(s)),
            Value::Point(x, y) => write!(f, "({}, {})", format_rational(x), format_rational(y)),
            Value::Vector(x, y) => write!(f, "<{}, {}>", format_rational(x), format_rational(y)),
            Value::Color(r, g, b) => {
                let byte = |c: &Rational| {
                    c.is_integer()
                        .then(|| c.to_integer().to_i64())
                        .flatten()
                        .filter(|v| (0..=255).contains(v))
                };
                match (byte(r), byte(g), byte(b)) {
                    (Some(r), Some(g), Some(b)) => write!(f, "#{r:02X}{g:02X}{b:02X}"),
                    _ => write!(
                        f,
                        "rgb({}, {}, {})",
                        format_rational(r),
                        format_rational(g),
                        format_rational(b)
                    ),
                }
            }
            Value::Multi(items) => {
                f.write_str("{")?;
                for (k, item) in items.iter().enumerate() {
                    if k > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{item}")?;
                }
                f.write_str("}")
            }
        }
    }
}

impl FromStr for Value {
    type Err = Error;

    fn from_str(s: &str) -> Result<Value> {
        crate::scheme::parse_value(s)
    }
}

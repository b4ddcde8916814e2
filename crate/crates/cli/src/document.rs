//! JSON documents: operators, spectral data and results.

use blochjac::exactmath::Matrix;
use blochjac::inverse::SpectralData;
use blochjac::operator::PeriodicOperator;
use blochjac::{CFloat, RatMatrix, Rational};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::CliError;

pub const SCHEMA: &str = "blochjac/1";

/// Parse an exact number: `-12`, `3.25`, `1.5e-3`, or a fraction `7/3`.
pub fn parse_rational(s: &str) -> Result<Rational, CliError> {
    let bad = || CliError::invalid(format!("not an exact number: {s:?}"));
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        return Ok(Rational::new(n, d));
    }
    let (mantissa, exp) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i32>().map_err(|_| bad())?),
        None => (s, 0),
    };
    let (neg, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int, frac) = digits.split_once('.').unwrap_or((digits, ""));
    if int.is_empty() && frac.is_empty() || !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let all: BigInt = format!("{int}{frac}0").parse::<BigInt>().map_err(|_| bad())? / BigInt::from(10);
    let scale = exp - frac.len() as i32;
    let ten = BigInt::from(10);
    let mut r = if scale >= 0 {
        Rational::from_integer(all * num_traits::pow(ten, scale as usize))
    } else {
        Rational::new(all, num_traits::pow(ten, (-scale) as usize))
    };
    if neg {
        r = -r;
    }
    Ok(r)
}

/// Exact decimal when the denominator is `2^a 5^b`, otherwise `n/d`.
pub fn format_rational(r: &Rational) -> String {
    if r.is_integer() {
        return r.numer().to_string();
    }
    let mut d = r.denom().clone();
    let (two, five) = (BigInt::from(2), BigInt::from(5));
    let (mut a, mut b) = (0usize, 0usize);
    while (&d % &two).is_zero() {
        d /= &two;
        a += 1;
    }
    while (&d % &five).is_zero() {
        d /= &five;
        b += 1;
    }
    if !d.is_one() {
        return format!("{}/{}", r.numer(), r.denom());
    }
    let places = a.max(b);
    let scaled = r * Rational::from_integer(num_traits::pow(BigInt::from(10), places));
    let digits = scaled.to_integer().abs().to_string();
    let digits = format!("{digits:0>width$}", width = places + 1);
    let (int, frac) = digits.split_at(digits.len() - places);
    format!("{}{int}.{frac}", if r.is_negative() { "-" } else { "" })
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct OperatorDocument {
    pub schema: String,
    #[serde(default = "operator_kind")]
    pub kind: String,
    pub p: usize,
    pub m: usize,
    pub a: Vec<Vec<Vec<String>>>,
    pub b: Vec<Vec<Vec<String>>>,
}

fn operator_kind() -> String {
    "operator".into()
}

fn matrix_strings(mat: &RatMatrix) -> Vec<Vec<String>> {
    (0..mat.rows())
        .map(|i| (0..mat.cols()).map(|j| format_rational(mat.get(i, j))).collect())
        .collect()
}

impl OperatorDocument {
    pub fn from_operator(op: &PeriodicOperator<Rational>) -> Self {
        OperatorDocument {
            schema: SCHEMA.into(),
            kind: operator_kind(),
            p: op.period(),
            m: op.block_size(),
            a: op.a_blocks().iter().map(matrix_strings).collect(),
            b: op.b_blocks().iter().map(matrix_strings).collect(),
        }
    }

    pub fn to_operator(&self) -> Result<PeriodicOperator<Rational>, CliError> {
        if self.schema != SCHEMA {
            return Err(CliError::invalid(format!("unsupported schema {:?}", self.schema)));
        }
        let blocks = |name: &str, list: &[Vec<Vec<String>>]| -> Result<Vec<RatMatrix>, CliError> {
            if list.len() != self.p {
                return Err(CliError::invalid(format!("{name} has {} blocks, p = {}", list.len(), self.p)));
            }
            list.iter()
                .enumerate()
                .map(|(n, rows)| {
                    if rows.len() != self.m || rows.iter().any(|r| r.len() != self.m) {
                        return Err(CliError::invalid(format!("{name}_{} is not {0}x{0}", n + 1).replace("{0}", &self.m.to_string())));
                    }
                    let entries = rows
                        .iter()
                        .map(|r| r.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>, _>>())
                        .collect::<Result<Vec<_>, _>>()?;
                    Ok(Matrix::from_rows(entries))
                })
                .collect()
        };
        if self.p == 0 || self.m == 0 {
            return Err(CliError::invalid("p and m must be positive"));
        }
        let a = blocks("a", &self.a)?;
        let b = blocks("b", &self.b)?;
        Ok(PeriodicOperator::new(a, b)?)
    }
}

#[derive(Serialize, Deserialize, Debug, Clone, Copy, PartialEq)]
pub struct ComplexValue {
    pub re: f64,
    pub im: f64,
}

impl From<CFloat> for ComplexValue {
    fn from(c: CFloat) -> Self {
        ComplexValue { re: c.re, im: c.im }
    }
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct SpectralDataDocument {
    pub schema: String,
    #[serde(default = "spectral_kind")]
    pub kind: String,
    pub p: usize,
    pub m: usize,
    pub kappas: Vec<f64>,
    pub lambda_sets: Vec<Vec<ComplexValue>>,
}

fn spectral_kind() -> String {
    "spectral-data".into()
}

impl SpectralDataDocument {
    pub fn from_data(sd: &SpectralData) -> Self {
        SpectralDataDocument {
            schema: SCHEMA.into(),
            kind: spectral_kind(),
            p: sd.p,
            m: sd.m,
            kappas: sd.kappas.clone(),
            lambda_sets: sd.lambda_sets.iter().map(|s| s.iter().map(|&c| c.into()).collect()).collect(),
        }
    }

    pub fn to_data(&self) -> Result<SpectralData, CliError> {
        if self.schema != SCHEMA {
            return Err(CliError::invalid(format!("unsupported schema {:?}", self.schema)));
        }
        Ok(SpectralData {
            p: self.p,
            m: self.m,
            kappas: self.kappas.clone(),
            lambda_sets: self
                .lambda_sets
                .iter()
                .map(|s| s.iter().map(|c| CFloat::new(c.re, c.im)).collect())
                .collect(),
        })
    }
}

/// Output of every analysis command.
#[derive(Serialize, Debug)]
pub struct ResultDocument {
    pub schema: &'static str,
    pub kind: &'static str,
    pub command: Value,
    pub input_digest: String,
    pub tool_version: &'static str,
    pub payload: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<Value>,
}

/// Parse JSON, unwrapping the `payload` of a result document so that
/// outputs can be piped into the next command.
pub fn parse_input<T: for<'de> Deserialize<'de>>(text: &str, what: &str) -> Result<T, CliError> {
    let value: Value = serde_json::from_str(text).map_err(|e| CliError::invalid(format!("malformed JSON: {e}")))?;
    let inner = match value.get("kind").and_then(Value::as_str) {
        Some("result") => value.get("payload").cloned().unwrap_or(Value::Null),
        _ => value,
    };
    serde_json::from_value(inner).map_err(|e| CliError::invalid(format!("not a {what} document: {e}")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use blochjac::scalar::rat;

    #[test]
    fn decimal_parsing() {
        assert_eq!(parse_rational("0.5").unwrap(), rat(1, 2));
        assert_eq!(parse_rational("-12").unwrap(), rat(-12, 1));
        assert_eq!(parse_rational("-.25").unwrap(), rat(-1, 4));
        assert_eq!(parse_rational("1.5e-3").unwrap(), rat(3, 2000));
        assert_eq!(parse_rational("2E2").unwrap(), rat(200, 1));
        assert_eq!(parse_rational("7/3").unwrap(), rat(7, 3));
        assert_eq!(parse_rational("-4/6").unwrap(), rat(-2, 3));
        for bad in ["", "abc", "1/0", "1.2.3", "--1", "e5", "0x10"] {
            assert!(parse_rational(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn formatting_round_trips() {
        for (r, s) in [(rat(1, 2), "0.5"), (rat(-3, 40), "-0.075"), (rat(7, 3), "7/3"), (rat(-5, 1), "-5"), (rat(1, 1024), "0.0009765625")] {
            assert_eq!(format_rational(&r), s);
            assert_eq!(parse_rational(s).unwrap(), r);
        }
    }
}

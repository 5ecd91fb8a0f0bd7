//! Closed-form lower bounds on the maximum leaf count, in exact rationals.

use std::fmt::Write as _;

use num_rational::Ratio;
use num_traits::{Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::metrics::Girth;

pub type Rational = Ratio<i64>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BoundError {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
}

fn invalid<T>(msg: impl Into<String>) -> Result<T, BoundError> {
    Err(BoundError::InvalidParams(msg.into()))
}

fn r(n: i64) -> Rational {
    Rational::from_integer(n)
}

fn check_gk(g: usize, k: usize) -> Result<(), BoundError> {
    if g < 3 {
        return invalid(format!("girth parameter g={g} must be at least 3"));
    }
    if k < 1 {
        return invalid("chain parameter k must be at least 1");
    }
    Ok(())
}

/// `(s - 2)/4 + 2`, where `s` counts vertices of degree other than 2.
pub fn bound_theorem1(s: usize) -> Rational {
    Rational::new(s as i64 - 2, 4) + r(2)
}

/// `v/4 + 2`, valid for minimum degree at least 3.
pub fn bound_kw(v: usize) -> Rational {
    Rational::new(v as i64, 4) + r(2)
}

/// `⌈g/2⌉ - 1`.
pub fn half_parameter(g: usize) -> usize {
    g.div_ceil(2) - 1
}

/// Leaf-density coefficient for girth at least `g` and chains of at most `k`
/// degree-2 vertices.
pub fn alpha(g: usize, k: usize) -> Result<Rational, BoundError> {
    check_gk(g, k)?;
    if k + 2 < g {
        let n = half_parameter(g) as i64;
        Ok(Rational::new(n, n * (k as i64 + 3) + 1))
    } else {
        beta(g, k)
    }
}

/// `alpha(g, k) * (v - k - 2) + 2`.
pub fn bound_theorem2(v: usize, g: usize, k: usize) -> Result<Rational, BoundError> {
    if v < 2 {
        return invalid(format!("vertex count {v} below 2"));
    }
    Ok(alpha(g, k)? * r(v as i64 - k as i64 - 2) + r(2))
}

/// Girth parameter used for a measured girth. Forests use 3: the bound for
/// girth 3 holds for every tree, while larger parameters fail on spiders.
pub fn girth_parameter(girth: Girth) -> usize {
    girth.finite().unwrap_or(3)
}

/// `(h - 2)/((h - 1)(k + 2))`.
pub fn beta(h: usize, k: usize) -> Result<Rational, BoundError> {
    if h < 3 || k < 1 {
        return invalid(format!("beta needs h >= 3 and k >= 1, got h={h}, k={k}"));
    }
    let (h, k) = (h as i64, k as i64);
    Ok(Rational::new(h - 2, (h - 1) * (k + 2)))
}

/// `(m - 1)/(h + (k + 1)m - k - 2)` for `⌈h/2⌉ <= m < h`.
pub fn gamma(h: usize, m: usize, k: usize) -> Result<Rational, BoundError> {
    if h < 3 || k < 1 || m < h.div_ceil(2) || m >= h {
        return invalid(format!("gamma needs h >= 3, ceil(h/2) <= m < h, k >= 1; got h={h}, m={m}, k={k}"));
    }
    let (h, m, k) = (h as i64, m as i64, k as i64);
    Ok(Rational::new(m - 1, h + (k + 1) * m - k - 2))
}

/// `gamma(h, ⌈h/2⌉, k)`.
pub fn beta_prime(h: usize, k: usize) -> Result<Rational, BoundError> {
    if h < 3 || k < 1 {
        return invalid(format!("beta_prime needs h >= 3 and k >= 1, got h={h}, k={k}"));
    }
    gamma(h, h.div_ceil(2), k)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundKind {
    Theorem1,
    Theorem2,
    KleitmanWest,
}

impl BoundKind {
    pub fn name(self) -> &'static str {
        match self {
            BoundKind::Theorem1 => "theorem1",
            BoundKind::Theorem2 => "theorem2",
            BoundKind::KleitmanWest => "kw",
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct BoundParams {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub v: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub s: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub g: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundReport {
    pub kind: BoundKind,
    pub params: BoundParams,
    pub value: Rational,
    pub achieved: Option<usize>,
}

#[derive(Serialize)]
struct ReportRecord<'a> {
    kind: &'static str,
    params: &'a BoundParams,
    numerator: i64,
    denominator: i64,
    decimal: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    achieved: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    satisfied: Option<bool>,
}

impl BoundReport {
    pub fn theorem1(s: usize) -> Self {
        BoundReport {
            kind: BoundKind::Theorem1,
            params: BoundParams {
                s: Some(s),
                ..Default::default()
            },
            value: bound_theorem1(s),
            achieved: None,
        }
    }

    pub fn kleitman_west(v: usize) -> Self {
        BoundReport {
            kind: BoundKind::KleitmanWest,
            params: BoundParams {
                v: Some(v),
                ..Default::default()
            },
            value: bound_kw(v),
            achieved: None,
        }
    }

    pub fn theorem2(v: usize, g: usize, k: usize) -> Result<Self, BoundError> {
        let a = alpha(g, k)?;
        Ok(BoundReport {
            kind: BoundKind::Theorem2,
            params: BoundParams {
                v: Some(v),
                g: Some(g),
                k: Some(k),
                n: Some(half_parameter(g)),
                alpha: Some(a.to_string()),
                ..Default::default()
            },
            value: bound_theorem2(v, g, k)?,
            achieved: None,
        })
    }

    pub fn with_achieved(mut self, leaves: usize) -> Self {
        self.achieved = Some(leaves);
        self
    }

    pub fn satisfied(&self) -> Option<bool> {
        self.achieved.map(|a| r(a as i64) >= self.value)
    }

    /// Whether the achieved leaf count equals the bound exactly.
    pub fn tight(&self) -> Option<bool> {
        self.achieved.map(|a| r(a as i64) == self.value)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&ReportRecord {
            kind: self.kind.name(),
            params: &self.params,
            numerator: *self.value.numer(),
            denominator: *self.value.denom(),
            decimal: decimal(&self.value, 6),
            achieved: self.achieved,
            satisfied: self.satisfied(),
        })
        .expect("report serializes")
    }
}

/// Decimal rendering by long division, truncated to `places` digits.
pub fn decimal(x: &Rational, places: usize) -> String {
    let mut out = String::new();
    if x.is_negative() {
        out.push('-');
    }
    let x = x.abs();
    let (n, d) = (*x.numer(), *x.denom());
    write!(out, "{}", n / d).unwrap();
    let mut rem = n % d;
    if rem.is_zero() || places == 0 {
        return out;
    }
    out.push('.');
    for _ in 0..places {
        rem *= 10;
        write!(out, "{}", rem / d).unwrap();
        rem %= d;
        if rem == 0 {
            break;
        }
    }
    out
}

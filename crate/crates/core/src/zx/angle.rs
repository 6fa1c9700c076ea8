//! Angle expressions: rational linear combinations of variables plus a
//! constant, all as coefficients of π, constants taken mod 2.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_rational::Rational64;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Normal form: variables sorted by name (a `BTreeMap`), no zero
/// coefficients, constant in `[0, 2)`. Structural equality is equality of
/// angles.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AngleExpr {
    constant: Rational64,
    coeffs: BTreeMap<String, Rational64>,
}

/// Variable bindings produced by [`match_angle`].
pub type AngleSubstitution = BTreeMap<String, AngleExpr>;

fn mod2(c: Rational64) -> Rational64 {
    let two = Rational64::from_integer(2);
    let r = c - two * (c / two).floor();
    if r.is_negative() {
        r + two
    } else {
        r
    }
}

impl AngleExpr {
    pub fn zero() -> Self {
        AngleExpr::default()
    }

    /// `c·π`, reduced mod 2.
    pub fn constant(c: Rational64) -> Self {
        AngleExpr {
            constant: mod2(c),
            coeffs: BTreeMap::new(),
        }
    }

    pub fn frac(n: i64, d: i64) -> Self {
        Self::constant(Rational64::new(n, d))
    }

    pub fn var(name: &str) -> Self {
        Self::from_raw(Rational64::zero(), [(name.to_string(), Rational64::one())])
    }

    /// Normalises an arbitrary constant and coefficient list; repeated
    /// variables are summed.
    pub fn from_raw(constant: Rational64, terms: impl IntoIterator<Item = (String, Rational64)>) -> Self {
        let mut coeffs: BTreeMap<String, Rational64> = BTreeMap::new();
        for (v, c) in terms {
            *coeffs.entry(v).or_insert_with(Rational64::zero) += c;
        }
        coeffs.retain(|_, c| !c.is_zero());
        AngleExpr {
            constant: mod2(constant),
            coeffs,
        }
    }

    pub fn constant_part(&self) -> Rational64 {
        self.constant
    }

    pub fn coefficients(&self) -> &BTreeMap<String, Rational64> {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.constant.is_zero() && self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add(&self, other: &AngleExpr) -> AngleExpr {
        Self::from_raw(
            self.constant + other.constant,
            self.coeffs.iter().chain(&other.coeffs).map(|(v, c)| (v.clone(), *c)),
        )
    }

    pub fn scale(&self, k: Rational64) -> AngleExpr {
        Self::from_raw(
            self.constant * k,
            self.coeffs.iter().map(|(v, c)| (v.clone(), *c * k)),
        )
    }

    pub fn neg(&self) -> AngleExpr {
        self.scale(-Rational64::one())
    }

    pub fn sub(&self, other: &AngleExpr) -> AngleExpr {
        self.add(&other.neg())
    }

    /// Replaces bound variables and renormalises.
    pub fn substitute(&self, theta: &AngleSubstitution) -> AngleExpr {
        let mut out = AngleExpr::constant(self.constant);
        for (v, c) in &self.coeffs {
            let term = match theta.get(v) {
                Some(e) => e.scale(*c),
                None => Self::from_raw(Rational64::zero(), [(v.clone(), *c)]),
            };
            out = out.add(&term);
        }
        out
    }

    pub fn rename(&self, map: &BTreeMap<String, String>) -> AngleExpr {
        Self::from_raw(
            self.constant,
            self.coeffs
                .iter()
                .map(|(v, c)| (map.get(v).cloned().unwrap_or_else(|| v.clone()), *c)),
        )
    }

    /// `var ↦ var + copies…` when `keep`, else `var ↦ copies…`.
    pub fn expand(&self, var: &str, keep: bool, copies: &[String]) -> AngleExpr {
        let Some(c) = self.coeffs.get(var).copied() else {
            return self.clone();
        };
        let mut terms: Vec<(String, Rational64)> = self
            .coeffs
            .iter()
            .filter(|(v, _)| *v != var)
            .map(|(v, c)| (v.clone(), *c))
            .collect();
        if keep {
            terms.push((var.to_string(), c));
        }
        terms.extend(copies.iter().map(|x| (x.clone(), c)));
        Self::from_raw(self.constant, terms)
    }

    /// Value in radians once every variable is bound to a constant.
    pub fn radians(&self) -> Option<f64> {
        if !self.coeffs.is_empty() {
            return None;
        }
        Some(*self.constant.numer() as f64 / *self.constant.denom() as f64 * std::f64::consts::PI)
    }
}

/// Extends `partial` so that `pattern` instantiates to `concrete`.
///
/// With unbound variables left, the lexicographically first one takes the
/// whole residue and the rest are bound to 0.
pub fn match_angle(
    pattern: &AngleExpr,
    concrete: &AngleExpr,
    partial: &AngleSubstitution,
) -> Option<AngleSubstitution> {
    let p = pattern.substitute(partial);
    let unbound: Vec<String> = p
        .coeffs
        .keys()
        .filter(|v| pattern.coeffs.contains_key(*v) && !partial.contains_key(*v))
        .cloned()
        .collect();
    let Some(first) = unbound.first() else {
        return (&p == concrete).then(|| partial.clone());
    };
    let mut theta = partial.clone();
    for v in &unbound[1..] {
        theta.insert(v.clone(), AngleExpr::zero());
    }
    let c = p.coeffs[first];
    let rest = AngleExpr::from_raw(
        p.constant,
        p.coeffs
            .iter()
            .filter(|(v, _)| *v != first && !unbound.contains(v))
            .map(|(v, c)| (v.clone(), *c)),
    );
    theta.insert(first.clone(), concrete.sub(&rest).scale(c.recip()));
    (&pattern.substitute(&theta) == concrete).then_some(theta)
}

impl fmt::Display for AngleExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        let mut term = |f: &mut fmt::Formatter<'_>, c: Rational64, var: Option<&str>| -> fmt::Result {
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            match var {
                Some(v) if a.is_one() => write!(f, "{v}"),
                Some(v) => write!(f, "{a}*{v}"),
                None => write!(f, "{a}"),
            }
        };
        for (v, c) in &self.coeffs {
            term(f, *c, Some(v))?;
        }
        if !self.constant.is_zero() || self.coeffs.is_empty() {
            term(f, self.constant, None)?;
        }
        Ok(())
    }
}

fn is_ident_start(c: char) -> bool {
    c.is_alphabetic() || c == '_'
}

fn is_ident_char(c: char) -> bool {
    c.is_alphanumeric() || matches!(c, '_' | '#' | '\'')
}

/// Serialised as its display string.
impl serde::Serialize for AngleExpr {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> serde::Deserialize<'de> for AngleExpr {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

impl FromStr for AngleExpr {
    type Err = Error;

    /// Accepts sums of terms `[k[/d]][*]name` or `k[/d]`, e.g.
    /// `a + 2*b - 1/2`. Constants are coefficients of π.
    fn from_str(s: &str) -> Result<Self> {
        let err = |m: &str| Error::AngleParse(format!("{s:?}: {m}"));
        let chars: Vec<char> = s.chars().collect();
        let mut i = 0;
        let skip = |i: &mut usize| {
            while *i < chars.len() && chars[*i].is_whitespace() {
                *i += 1;
            }
        };
        let number = |i: &mut usize| -> Option<i64> {
            let start = *i;
            while *i < chars.len() && chars[*i].is_ascii_digit() {
                *i += 1;
            }
            (start != *i).then(|| chars[start..*i].iter().collect::<String>().parse().ok())?
        };
        let mut constant = Rational64::zero();
        let mut terms = Vec::new();
        let mut expect_term = true;
        let mut sign = Rational64::one();
        skip(&mut i);
        if i == chars.len() {
            return Err(err("empty expression"));
        }
        while i < chars.len() {
            skip(&mut i);
            if i == chars.len() {
                break;
            }
            let c = chars[i];
            if expect_term {
                if c == '-' || c == '+' {
                    if c == '-' {
                        sign = -sign;
                    }
                    i += 1;
                    continue;
                }
                let mut coeff = None;
                if c.is_ascii_digit() {
                    let n = number(&mut i).ok_or_else(|| err("bad number"))?;
                    skip(&mut i);
                    let d = if i < chars.len() && chars[i] == '/' {
                        i += 1;
                        skip(&mut i);
                        number(&mut i).ok_or_else(|| err("bad denominator"))?
                    } else {
                        1
                    };
                    if d == 0 {
                        return Err(err("zero denominator"));
                    }
                    coeff = Some(Rational64::new(n, d));
                    skip(&mut i);
                    if i < chars.len() && chars[i] == '*' {
                        i += 1;
                        skip(&mut i);
                        if i == chars.len() || !is_ident_start(chars[i]) {
                            return Err(err("expected a variable after '*'"));
                        }
                    }
                }
                if i < chars.len() && is_ident_start(chars[i]) {
                    let start = i;
                    while i < chars.len() && is_ident_char(chars[i]) {
                        i += 1;
                    }
                    let name: String = chars[start..i].iter().collect();
                    if name == "pi" {
                        constant += sign * coeff.unwrap_or_else(Rational64::one);
                    } else {
                        terms.push((name, sign * coeff.unwrap_or_else(Rational64::one)));
                    }
                } else if let Some(k) = coeff {
                    constant += sign * k;
                } else {
                    return Err(err(&format!("unexpected {c:?}")));
                }
                expect_term = false;
                sign = Rational64::one();
            } else {
                match c {
                    '+' => {}
                    '-' => sign = -Rational64::one(),
                    _ => return Err(err(&format!("expected + or -, found {c:?}"))),
                }
                i += 1;
                expect_term = true;
            }
        }
        if expect_term {
            return Err(err("dangling operator"));
        }
        Ok(AngleExpr::from_raw(constant, terms))
    }
}

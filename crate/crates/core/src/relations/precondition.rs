//! Decidable side conditions on (m, k, c) attached to relation edges.
//!
//! Text syntax, used by the edge-list export:
//!
//! ```text
//! always | k<=m-N | k==m-N | k<=N | m>=N | m<=N | c<1 | c==1
//! spin_gap            (m−k−1)² > c²k(k+1)
//! scalar_gap          (m−k−1)(m−k−2) > c²k(k+1)
//! below_sphere(F)     current upper bound of family F at the same node < Q*(Sᵐ)
//! all(P, ...) | any(P, ...) | forall_c(P)
//! ```

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::Family;
use crate::error::Error;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Precondition {
    Always,
    /// k ≤ m − n
    KAtMostMMinus(u32),
    /// k = m − n
    KEqualsMMinus(u32),
    /// k ≤ n
    KAtMost(u32),
    MAtLeast(u32),
    MAtMost(u32),
    CBelowOne,
    CEqualsOne,
    SpinGap,
    ScalarGap,
    BelowSphere(Family),
    All(Vec<Precondition>),
    Any(Vec<Precondition>),
    /// Holds for every c ∈ [0, 1]; the inner condition must not depend on node state.
    ForAllC(Box<Precondition>),
}

/// Where c is evaluated.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CPosition {
    At(f64),
    /// Every c in [0, 1); valid because each c-dependent atom holds on an
    /// initial segment of [0, 1).
    BelowOne,
    /// Λ-level node: there is no c.
    Absent,
}

/// Three-valued result: `Unknown` when a state-dependent atom is not certified.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Truth {
    True,
    False,
    Unknown,
}

impl Truth {
    fn from_bool(b: bool) -> Self {
        if b {
            Truth::True
        } else {
            Truth::False
        }
    }

    fn and(self, other: Truth) -> Truth {
        match (self, other) {
            (Truth::False, _) | (_, Truth::False) => Truth::False,
            (Truth::True, Truth::True) => Truth::True,
            _ => Truth::Unknown,
        }
    }

    fn or(self, other: Truth) -> Truth {
        match (self, other) {
            (Truth::True, _) | (_, Truth::True) => Truth::True,
            (Truth::False, Truth::False) => Truth::False,
            _ => Truth::Unknown,
        }
    }
}

/// Strict inequality a > c²b, evaluated at a position in c.
fn gap(a: f64, b: f64, c: CPosition) -> Truth {
    match c {
        CPosition::At(c) => Truth::from_bool(a > c * c * b),
        CPosition::BelowOne => Truth::from_bool(a > 0.0 && a >= b),
        CPosition::Absent => Truth::False,
    }
}

impl Precondition {
    /// Evaluates the condition; `below_sphere` answers the state-dependent atom.
    pub fn eval(
        &self,
        m: u32,
        k: u32,
        c: CPosition,
        below_sphere: &dyn Fn(Family) -> bool,
    ) -> Truth {
        let (mf, kf) = (f64::from(m), f64::from(k));
        let n = mf - kf - 1.0;
        let hyperbolic = kf * (kf + 1.0);
        match self {
            Precondition::Always => Truth::True,
            Precondition::KAtMostMMinus(d) => Truth::from_bool(k + d <= m),
            Precondition::KEqualsMMinus(d) => Truth::from_bool(k + d == m),
            Precondition::KAtMost(n) => Truth::from_bool(k <= *n),
            Precondition::MAtLeast(n) => Truth::from_bool(m >= *n),
            Precondition::MAtMost(n) => Truth::from_bool(m <= *n),
            Precondition::CBelowOne => match c {
                CPosition::At(c) => Truth::from_bool(c < 1.0),
                CPosition::BelowOne => Truth::True,
                CPosition::Absent => Truth::False,
            },
            Precondition::CEqualsOne => match c {
                CPosition::At(c) => Truth::from_bool(c == 1.0),
                CPosition::BelowOne | CPosition::Absent => Truth::False,
            },
            Precondition::SpinGap => gap(n * n, hyperbolic, c),
            Precondition::ScalarGap => gap(n * (n - 1.0), hyperbolic, c),
            Precondition::BelowSphere(family) => match c {
                CPosition::At(_) => {
                    if below_sphere(*family) {
                        Truth::True
                    } else {
                        Truth::Unknown
                    }
                }
                _ => Truth::Unknown,
            },
            Precondition::All(items) => items
                .iter()
                .fold(Truth::True, |acc, p| acc.and(p.eval(m, k, c, below_sphere))),
            Precondition::Any(items) => items
                .iter()
                .fold(Truth::False, |acc, p| acc.or(p.eval(m, k, c, below_sphere))),
            Precondition::ForAllC(inner) => {
                let never = |_: Family| false;
                let below = inner.eval(m, k, CPosition::BelowOne, &never);
                let at_one = inner.eval(m, k, CPosition::At(1.0), &never);
                below.and(at_one)
            }
        }
    }

    /// Evaluation for conditions without state-dependent atoms.
    pub fn holds(&self, m: u32, k: u32, c: CPosition) -> bool {
        self.eval(m, k, c, &|_| false) == Truth::True
    }
}

impl fmt::Display for Precondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn list(f: &mut fmt::Formatter<'_>, name: &str, items: &[Precondition]) -> fmt::Result {
            write!(f, "{name}(")?;
            for (i, p) in items.iter().enumerate() {
                if i > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{p}")?;
            }
            write!(f, ")")
        }
        match self {
            Precondition::Always => write!(f, "always"),
            Precondition::KAtMostMMinus(d) => write!(f, "k<=m-{d}"),
            Precondition::KEqualsMMinus(d) => write!(f, "k==m-{d}"),
            Precondition::KAtMost(n) => write!(f, "k<={n}"),
            Precondition::MAtLeast(n) => write!(f, "m>={n}"),
            Precondition::MAtMost(n) => write!(f, "m<={n}"),
            Precondition::CBelowOne => write!(f, "c<1"),
            Precondition::CEqualsOne => write!(f, "c==1"),
            Precondition::SpinGap => write!(f, "spin_gap"),
            Precondition::ScalarGap => write!(f, "scalar_gap"),
            Precondition::BelowSphere(family) => write!(f, "below_sphere({family})"),
            Precondition::All(items) => list(f, "all", items),
            Precondition::Any(items) => list(f, "any", items),
            Precondition::ForAllC(inner) => write!(f, "forall_c({inner})"),
        }
    }
}

/// Serialized as its text form.
impl Serialize for Precondition {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Precondition {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.src[self.pos..].starts_with(' ') {
            self.pos += 1;
        }
    }

    fn err(&self, what: &str) -> Error {
        Error::Parse {
            line: 0,
            reason: format!(
                "{what} at offset {} in precondition {:?}",
                self.pos, self.src
            ),
        }
    }

    fn eat(&mut self, token: &str) -> bool {
        self.skip_ws();
        if self.src[self.pos..].starts_with(token) {
            self.pos += token.len();
            true
        } else {
            false
        }
    }

    fn number(&mut self) -> Result<u32, Error> {
        let rest = &self.src[self.pos..];
        let len = rest.chars().take_while(char::is_ascii_digit).count();
        let n = rest[..len]
            .parse()
            .map_err(|_| self.err("expected number"))?;
        self.pos += len;
        Ok(n)
    }

    fn ident(&mut self) -> &'a str {
        self.skip_ws();
        let rest = &self.src[self.pos..];
        let len = rest
            .chars()
            .take_while(|ch| ch.is_ascii_alphanumeric() || *ch == '_' || *ch == '*' || *ch == '~')
            .count();
        self.pos += len;
        &rest[..len]
    }

    fn args(&mut self) -> Result<Vec<Precondition>, Error> {
        if !self.eat("(") {
            return Err(self.err("expected '('"));
        }
        let mut items = vec![self.expr()?];
        while self.eat(",") {
            items.push(self.expr()?);
        }
        if !self.eat(")") {
            return Err(self.err("expected ')'"));
        }
        Ok(items)
    }

    fn expr(&mut self) -> Result<Precondition, Error> {
        self.skip_ws();
        for (prefix, ctor) in [
            (
                "k<=m-",
                Precondition::KAtMostMMinus as fn(u32) -> Precondition,
            ),
            ("k==m-", Precondition::KEqualsMMinus),
            ("k<=", Precondition::KAtMost),
            ("m>=", Precondition::MAtLeast),
            ("m<=", Precondition::MAtMost),
        ] {
            if self.eat(prefix) {
                return Ok(ctor(self.number()?));
            }
        }
        if self.eat("c<1") {
            return Ok(Precondition::CBelowOne);
        }
        if self.eat("c==1") {
            return Ok(Precondition::CEqualsOne);
        }
        match self.ident() {
            "always" => Ok(Precondition::Always),
            "spin_gap" => Ok(Precondition::SpinGap),
            "scalar_gap" => Ok(Precondition::ScalarGap),
            "all" => Ok(Precondition::All(self.args()?)),
            "any" => Ok(Precondition::Any(self.args()?)),
            "forall_c" => {
                let mut items = self.args()?;
                if items.len() != 1 {
                    return Err(self.err("forall_c takes one argument"));
                }
                Ok(Precondition::ForAllC(Box::new(items.remove(0))))
            }
            "below_sphere" => {
                if !self.eat("(") {
                    return Err(self.err("expected '('"));
                }
                let family: Family = self.ident().parse()?;
                if !self.eat(")") {
                    return Err(self.err("expected ')'"));
                }
                Ok(Precondition::BelowSphere(family))
            }
            _ => Err(self.err("unknown condition")),
        }
    }
}

impl FromStr for Precondition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut p = Parser { src: s, pos: 0 };
        let expr = p.expr()?;
        p.skip_ws();
        if p.pos != s.len() {
            return Err(p.err("trailing input"));
        }
        Ok(expr)
    }
}

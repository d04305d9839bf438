//! Registry of explicit bounds and the aggregated constant Λ^spin_m.
//!
//! Published constants that cannot be recomputed here are stored as data
//! with a citation. Entries marked `computed` are regenerated from
//! [`crate::codim3`] and [`crate::constants`] and must match bit for bit.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::codim3;
use crate::constants::yamabe_sphere;
use crate::error::{Error, Result};
use crate::relations::{Direction, Family};
use crate::rounding::{RoundingRule, Tenths};
use crate::serde_ext;

/// First and last m of the published table of Λ^spin_m lower bounds.
pub const TABLE1_FIRST_M: u32 = 5;
pub const TABLE1_LAST_M: u32 = 13;
/// Q*(Sᵐ) for m = 5..13, as printed (nearest 0.1).
pub const TABLE1_SPHERE: [f64; 9] = [80.0, 96.3, 113.5, 130.7, 147.9, 165.0, 182.2, 199.3, 216.4];
/// Lower bounds for Λ^spin_m, m = 5..13.
pub const TABLE1_LAMBDA_SPIN: [f64; 9] = [45.1, 50.0, 65.2, 78.7, 91.8, 104.9, 118.1, 131.5, 145.0];
/// Lower bounds for Q*(ℍP² × ℝ^{m−8}), m = 8..13.
pub const TABLE1_HP2: [f64; 6] = [121.4, 138.5, 97.3, 135.9, 158.7, 178.0];
pub const Q_STAR_HP2: f64 = 121.4967;
pub const REGISTRY_M_MIN: u32 = 3;
pub const REGISTRY_M_MAX: u32 = 15;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum InvariantId {
    Lambda,
    LambdaSpin,
    LambdaSpinStar,
    LambdaStar,
    LambdaTilde,
    LambdaTildeSpin,
    /// min over k = 2..m−3 of Λ^spin_{m,k}.
    LambdaSpinM,
    /// Q*(Sᵐ).
    QStarSphere,
    /// Q*(ℍP² × ℝ^{m−8}).
    QStarHp2xR,
}

impl InvariantId {
    pub const ALL: [InvariantId; 9] = [
        InvariantId::Lambda,
        InvariantId::LambdaSpin,
        InvariantId::LambdaSpinStar,
        InvariantId::LambdaStar,
        InvariantId::LambdaTilde,
        InvariantId::LambdaTildeSpin,
        InvariantId::LambdaSpinM,
        InvariantId::QStarSphere,
        InvariantId::QStarHp2xR,
    ];

    /// The relation-graph family for per-(m, k) invariants.
    pub fn family(self) -> Option<Family> {
        match self {
            InvariantId::Lambda => Some(Family::Lambda),
            InvariantId::LambdaSpin => Some(Family::LambdaSpin),
            InvariantId::LambdaSpinStar => Some(Family::LambdaSpinStar),
            InvariantId::LambdaStar => Some(Family::LambdaStar),
            InvariantId::LambdaTilde => Some(Family::LambdaTilde),
            InvariantId::LambdaTildeSpin => Some(Family::LambdaTildeSpin),
            _ => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            InvariantId::Lambda => "Lambda",
            InvariantId::LambdaSpin => "LambdaSpin",
            InvariantId::LambdaSpinStar => "LambdaSpinStar",
            InvariantId::LambdaStar => "LambdaStar",
            InvariantId::LambdaTilde => "LambdaTilde",
            InvariantId::LambdaTildeSpin => "LambdaTildeSpin",
            InvariantId::LambdaSpinM => "LambdaSpinM",
            InvariantId::QStarSphere => "QStarSphere",
            InvariantId::QStarHp2xR => "QStarHP2xR",
        }
    }

    /// Human-readable symbol with parameters filled in.
    pub fn symbol(self, m: u32, k: Option<u32>) -> String {
        let mk = |base: &str| match k {
            Some(k) => format!("{base}_{{{m},{k}}}"),
            None => format!("{base}_{m}"),
        };
        match self {
            InvariantId::LambdaSpinM => format!("Λ^spin_{m}"),
            InvariantId::QStarSphere => format!("Q*(S^{m})"),
            InvariantId::QStarHp2xR if m == 8 => "Q*(HP^2)".to_string(),
            InvariantId::QStarHp2xR => format!("Q*(HP^2 x R^{})", m.saturating_sub(8)),
            other => mk(other.family().map_or("?", Family::symbol)),
        }
    }
}

impl fmt::Display for InvariantId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for InvariantId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        InvariantId::ALL
            .into_iter()
            .find(|i| i.name() == s)
            .ok_or_else(|| Error::Parse {
                line: 0,
                reason: format!("unknown invariant {s:?}"),
            })
    }
}

/// A real bound, +∞, or no known value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BoundValue {
    Finite(f64),
    Infinite,
    Unknown,
}

impl BoundValue {
    pub fn as_f64(self) -> Option<f64> {
        match self {
            BoundValue::Finite(x) => Some(x),
            BoundValue::Infinite => Some(f64::INFINITY),
            BoundValue::Unknown => None,
        }
    }

    pub fn is_known(self) -> bool {
        !matches!(self, BoundValue::Unknown)
    }
}

impl fmt::Display for BoundValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BoundValue::Finite(x) => f.write_str(&serde_ext::to_text(*x)),
            BoundValue::Infinite => f.write_str("inf"),
            BoundValue::Unknown => f.write_str("unknown"),
        }
    }
}

impl FromStr for BoundValue {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "unknown" => Ok(BoundValue::Unknown),
            "inf" => Ok(BoundValue::Infinite),
            _ => serde_ext::from_text(s)
                .filter(|x| x.is_finite())
                .map(BoundValue::Finite)
                .ok_or_else(|| Error::Parse {
                    line: 0,
                    reason: format!("invalid bound value {s:?}"),
                }),
        }
    }
}

impl Serialize for BoundValue {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            BoundValue::Finite(x) => s.serialize_f64(*x),
            other => s.serialize_str(&other.to_string()),
        }
    }
}

impl<'de> Deserialize<'de> for BoundValue {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Number(f64),
            Text(String),
        }
        match Repr::deserialize(d)? {
            Repr::Number(x) => Ok(BoundValue::Finite(x)),
            Repr::Text(t) => t.parse().map_err(serde::de::Error::custom),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    Computed,
    PaperLiteral,
    ExternalCitation,
}

impl Provenance {
    pub fn as_str(self) -> &'static str {
        match self {
            Provenance::Computed => "computed",
            Provenance::PaperLiteral => "paper-literal",
            Provenance::ExternalCitation => "external-citation",
        }
    }
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Provenance {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "computed" => Ok(Provenance::Computed),
            "paper-literal" => Ok(Provenance::PaperLiteral),
            "external-citation" => Ok(Provenance::ExternalCitation),
            _ => Err(Error::Parse {
                line: 0,
                reason: format!("unknown provenance {s:?}"),
            }),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundRegistryEntry {
    pub invariant: InvariantId,
    pub m: u32,
    pub k: Option<u32>,
    pub direction: Direction,
    pub value: BoundValue,
    pub provenance: Provenance,
    pub citation: String,
}

impl BoundRegistryEntry {
    fn new(
        invariant: InvariantId,
        m: u32,
        k: Option<u32>,
        direction: Direction,
        value: BoundValue,
        provenance: Provenance,
        citation: &str,
    ) -> Self {
        BoundRegistryEntry {
            invariant,
            m,
            k,
            direction,
            value,
            provenance,
            citation: citation.to_string(),
        }
    }

    pub fn to_line(&self) -> String {
        let k = self.k.map_or_else(|| "-".to_string(), |k| k.to_string());
        format!(
            "{}|{}|{}|{}|{}|{}|{}",
            self.invariant, self.m, k, self.direction, self.value, self.provenance, self.citation
        )
    }

    pub fn from_line(line: &str) -> Result<Self> {
        let fields: Vec<&str> = line.splitn(7, '|').collect();
        let [inv, m, k, dir, value, prov, citation] = fields.as_slice() else {
            return Err(Error::Parse {
                line: 0,
                reason: format!("expected 7 '|'-separated fields, got {}", fields.len()),
            });
        };
        let int = |t: &str| {
            t.parse::<u32>().map_err(|_| Error::Parse {
                line: 0,
                reason: format!("bad integer {t:?}"),
            })
        };
        Ok(BoundRegistryEntry {
            invariant: inv.parse()?,
            m: int(m)?,
            k: if *k == "-" { None } else { Some(int(k)?) },
            direction: dir.parse()?,
            value: value.parse()?,
            provenance: prov.parse()?,
            citation: citation.to_string(),
        })
    }
}

/// Immutable list of bound entries in insertion order.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct Registry {
    entries: Vec<BoundRegistryEntry>,
}

impl Registry {
    pub fn new(entries: Vec<BoundRegistryEntry>) -> Self {
        Registry { entries }
    }

    pub fn entries(&self) -> &[BoundRegistryEntry] {
        &self.entries
    }

    pub fn lookup(
        &self,
        invariant: InvariantId,
        m: u32,
        k: Option<u32>,
    ) -> Vec<&BoundRegistryEntry> {
        self.entries
            .iter()
            .filter(|e| e.invariant == invariant && e.m == m && e.k == k)
            .collect()
    }

    /// Largest known lower bound (lower or equal entries).
    pub fn best_lower(
        &self,
        invariant: InvariantId,
        m: u32,
        k: Option<u32>,
    ) -> Option<&BoundRegistryEntry> {
        self.lookup(invariant, m, k)
            .into_iter()
            .filter(|e| matches!(e.direction, Direction::Lower | Direction::Equal))
            .filter(|e| e.value.is_known())
            .max_by(|a, b| {
                let (x, y) = (
                    a.value.as_f64().unwrap_or(0.0),
                    b.value.as_f64().unwrap_or(0.0),
                );
                x.total_cmp(&y)
            })
    }

    pub fn to_lines(&self) -> String {
        let mut out = String::from("# invariant|m|k|direction|value|provenance|citation\n");
        for e in &self.entries {
            out.push_str(&e.to_line());
            out.push('\n');
        }
        out
    }

    /// Parses the line format; blank lines and '#' comments are skipped.
    pub fn from_lines(text: &str) -> Result<Self> {
        let mut entries = Vec::new();
        for (i, line) in text.lines().enumerate() {
            if line.trim().is_empty() || line.starts_with('#') {
                continue;
            }
            let entry = BoundRegistryEntry::from_line(line).map_err(|e| match e {
                Error::Parse { reason, .. } => Error::Parse {
                    line: i + 1,
                    reason,
                },
                other => other,
            })?;
            entries.push(entry);
        }
        Ok(Registry { entries })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.entries).expect("registry is serializable")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let entries = serde_json::from_str(text).map_err(|e| Error::Parse {
            line: e.line(),
            reason: e.to_string(),
        })?;
        Ok(Registry { entries })
    }
}

/// Recomputes the value of a `computed` entry; `None` for other provenances.
pub fn rederive(entry: &BoundRegistryEntry) -> Option<Result<BoundValue>> {
    if entry.provenance != Provenance::Computed {
        return None;
    }
    let m = entry.m;
    let value = match (entry.invariant, entry.k) {
        (InvariantId::QStarSphere, None) => yamabe_sphere(m).map(BoundValue::Finite),
        (InvariantId::LambdaStar, Some(k)) if k + 1 == m => {
            yamabe_sphere(m).map(BoundValue::Finite)
        }
        (InvariantId::LambdaStar, Some(k)) if k + 2 == m => Ok(BoundValue::Finite(0.0)),
        (InvariantId::LambdaStar, Some(0)) if m == 3 => yamabe_sphere(3).map(BoundValue::Finite),
        (InvariantId::LambdaStar, Some(k)) if k + 3 == m => {
            codim3::infimum_l(m).map(|inf| BoundValue::Finite(inf.value))
        }
        _ => Err(Error::invalid(
            "rederive",
            format!(
                "no computation for {} at m = {m}, k = {:?}",
                entry.invariant, entry.k
            ),
        )),
    };
    Some(value)
}

/// All published constants plus the computed entries for m in
/// [`REGISTRY_M_MIN`]..=[`REGISTRY_M_MAX`].
pub fn builtin_registry() -> Result<Registry> {
    use BoundValue::Finite;
    use Direction::*;
    use InvariantId::*;
    use Provenance::*;
    let mut e = Vec::new();
    for (i, m) in (TABLE1_FIRST_M..=TABLE1_LAST_M).enumerate() {
        e.push(BoundRegistryEntry::new(
            QStarSphere,
            m,
            None,
            Equal,
            Finite(TABLE1_SPHERE[i]),
            PaperLiteral,
            "table of explicit lower bounds for Lambda^spin_m, row Q*(S^m), rounded to 0.1",
        ));
        e.push(BoundRegistryEntry::new(
            LambdaSpinM,
            m,
            None,
            Lower,
            Finite(TABLE1_LAMBDA_SPIN[i]),
            PaperLiteral,
            "table of explicit lower bounds for Lambda^spin_m, row Lambda^spin_m",
        ));
    }
    for (i, m) in (8..=TABLE1_LAST_M).enumerate() {
        e.push(BoundRegistryEntry::new(
            QStarHp2xR,
            m,
            None,
            Lower,
            Finite(TABLE1_HP2[i]),
            PaperLiteral,
            "table of explicit lower bounds for Lambda^spin_m, row Q*(HP^2 x R^(m-8))",
        ));
    }
    e.push(BoundRegistryEntry::new(
        QStarHp2xR,
        8,
        None,
        Equal,
        Finite(Q_STAR_HP2),
        PaperLiteral,
        "caption of the table of lower bounds for Lambda^spin_m: Q*(HP^2) = 121.4967",
    ));
    e.push(BoundRegistryEntry::new(
        LambdaStar,
        3,
        Some(0),
        Equal,
        Finite(yamabe_sphere(3)?),
        Computed,
        "Lambda*_{3,0} = Q*(S^3)",
    ));
    e.push(BoundRegistryEntry::new(
        LambdaStar,
        4,
        Some(1),
        Lower,
        Finite(38.9),
        PaperLiteral,
        "Lambda*_{4,1} > 38.9, quoted from the companion computation of explicit bounds",
    ));
    e.push(BoundRegistryEntry::new(
        LambdaStar,
        5,
        Some(2),
        Lower,
        Finite(45.1),
        PaperLiteral,
        "Lambda*_{5,2} > 45.1, quoted from the companion computation of explicit bounds",
    ));
    for (i, m) in (6..=TABLE1_LAST_M).enumerate() {
        let bound = TABLE1_LAMBDA_SPIN[i + 1];
        for k in 2..=m - 4 {
            e.push(BoundRegistryEntry::new(
                LambdaSpin,
                m,
                Some(k),
                Lower,
                Finite(bound),
                ExternalCitation,
                "k <= m-4 term of the minimum defining Lambda^spin_m; externally computed bounds via the table of Lambda^spin_m",
            ));
        }
    }
    for m in REGISTRY_M_MIN..=REGISTRY_M_MAX {
        e.push(BoundRegistryEntry::new(
            QStarSphere,
            m,
            None,
            Equal,
            Finite(yamabe_sphere(m)?),
            Computed,
            "Q*(S^m) = m(m-1) vol(S^m)^(2/m)",
        ));
        e.push(BoundRegistryEntry::new(
            LambdaStar,
            m,
            Some(m - 1),
            Equal,
            Finite(yamabe_sphere(m)?),
            Computed,
            "k = m-1: Lambda*_{m,m-1} = Q*(S^m)",
        ));
        e.push(BoundRegistryEntry::new(
            LambdaStar,
            m,
            Some(m - 2),
            Equal,
            Finite(0.0),
            Computed,
            "k = m-2: Lambda*_{m,m-2} = 0",
        ));
        if m >= codim3::MIN_DIMENSION {
            e.push(BoundRegistryEntry::new(
                LambdaStar,
                m,
                Some(m - 3),
                Lower,
                Finite(codim3::infimum_l(m)?.value),
                Computed,
                "k = m-3: infimum over c of the codimension-3 bound L_m(c^2)",
            ));
        }
    }
    Ok(Registry::new(e))
}

/// Best bound found for one Λ^spin_{m,k}.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpinTerm {
    pub k: u32,
    pub bound: Option<Tenths>,
    pub source: Option<InvariantId>,
    pub provenance: Option<Provenance>,
    pub citation: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LambdaSpinM {
    pub m: u32,
    /// `None` when some k lacks a bound.
    pub value: Option<Tenths>,
    pub terms: Vec<SpinTerm>,
}

/// Computed values are rounded down; literals are already tenths.
fn tenths_of(entry: &BoundRegistryEntry) -> Option<Tenths> {
    let x = entry.value.as_f64().filter(|x| x.is_finite())?;
    Some(match entry.provenance {
        Provenance::Computed => RoundingRule::Floor.apply(x),
        _ => RoundingRule::Nearest.apply(x),
    })
}

/// min over k = 2..m−3 of the best lower bound for Λ^spin_{m,k}.
///
/// For k ≤ m − 2 a bound on Λ* also bounds Λ^spin = Λ̃^spin, so Λ* entries
/// are admissible alongside the spin ones.
pub fn lambda_spin_m(m: u32, registry: &Registry) -> Result<LambdaSpinM> {
    if m < 5 {
        return Err(Error::invalid(
            "lambda_spin_m",
            format!("need m >= 5, got {m}"),
        ));
    }
    let candidates = [
        InvariantId::LambdaSpin,
        InvariantId::LambdaTildeSpin,
        InvariantId::LambdaSpinStar,
        InvariantId::LambdaStar,
    ];
    let mut terms = Vec::new();
    for k in 2..=m - 3 {
        let best = candidates
            .iter()
            .filter_map(|&inv| registry.best_lower(inv, m, Some(k)))
            .filter_map(|e| tenths_of(e).map(|t| (t, e)))
            .max_by_key(|(t, _)| *t);
        terms.push(match best {
            Some((t, e)) => SpinTerm {
                k,
                bound: Some(t),
                source: Some(e.invariant),
                provenance: Some(e.provenance),
                citation: Some(e.citation.clone()),
            },
            None => SpinTerm {
                k,
                bound: None,
                source: None,
                provenance: None,
                citation: None,
            },
        });
    }
    let value = terms
        .iter()
        .map(|t| t.bound)
        .collect::<Option<Vec<_>>>()
        .and_then(|v| v.into_iter().min());
    Ok(LambdaSpinM { m, value, terms })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SigmaVariant {
    SimplyConnected,
    FundamentalGroup,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SigmaTerm {
    pub invariant: InvariantId,
    pub m: u32,
    pub k: Option<u32>,
    pub value: BoundValue,
}

impl SigmaTerm {
    pub fn symbol(&self) -> String {
        self.invariant.symbol(self.m, self.k)
    }
}

/// min over the listed terms; evaluable iff every term is known.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SigmaBoundExpression {
    pub m: u32,
    pub variant: SigmaVariant,
    pub terms: Vec<SigmaTerm>,
}

impl SigmaBoundExpression {
    pub fn evaluate(&self) -> Option<f64> {
        self.terms
            .iter()
            .map(|t| t.value.as_f64())
            .collect::<Option<Vec<_>>>()
            .map(|v| v.into_iter().fold(f64::INFINITY, f64::min))
    }

    /// Minimum over the known terms only.
    pub fn known_minimum(&self) -> Option<f64> {
        self.terms
            .iter()
            .filter_map(|t| t.value.as_f64())
            .reduce(f64::min)
    }
}

impl fmt::Display for SigmaBoundExpression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "min{{")?;
        for (i, t) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}={}", t.symbol(), t.value)?;
        }
        write!(f, "}}")?;
        if let Some(v) = self.evaluate() {
            write!(f, " = {}", serde_ext::to_text(v))?;
        }
        Ok(())
    }
}

/// Case analysis for the lower bound of the spin Yamabe-type invariant of
/// a simply connected (or fixed fundamental group) spin manifold.
pub fn sigma_spin_lower(
    m: u32,
    variant: SigmaVariant,
    registry: &Registry,
) -> Result<SigmaBoundExpression> {
    if m < 5 {
        return Err(Error::invalid(
            "sigma_spin_lower",
            format!("need m >= 5, got {m}"),
        ));
    }
    let lambda_m = match lambda_spin_m(m, registry)?.value {
        Some(t) => BoundValue::Finite(t.as_f64()),
        None => BoundValue::Unknown,
    };
    let direct = |inv: InvariantId, k: Option<u32>| {
        registry
            .lookup(inv, m, k)
            .into_iter()
            .filter(|e| e.direction == Direction::Lower)
            .map(|e| e.value)
            .find(|v| v.is_known())
            .unwrap_or(BoundValue::Unknown)
    };
    let term = |invariant, k, value| SigmaTerm {
        invariant,
        m,
        k,
        value,
    };
    let mut terms = Vec::new();
    if m == 9 || m == 10 {
        terms.push(term(
            InvariantId::LambdaSpin,
            Some(1),
            direct(InvariantId::LambdaSpin, Some(1)),
        ));
    }
    terms.push(term(InvariantId::LambdaSpinM, None, lambda_m));
    if variant == SigmaVariant::FundamentalGroup {
        terms.push(term(
            InvariantId::LambdaSpin,
            Some(m - 2),
            direct(InvariantId::LambdaSpin, Some(m - 2)),
        ));
    }
    if m >= 8 {
        terms.push(term(
            InvariantId::QStarHp2xR,
            None,
            direct(InvariantId::QStarHp2xR, None),
        ));
    }
    Ok(SigmaBoundExpression { m, variant, terms })
}

/// Whether Λ_{m,k} and Λ̃_{m,k} denote the same number (the second-order
/// term does not enter).
pub fn lambda_aliases_tilde(m: u32, k: u32) -> bool {
    k + 4 <= m || (k + 3 == m && k <= 6)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Conjecture {
    pub statement: String,
    pub m: u32,
    /// Always false: conjectures are never used as facts.
    pub established: bool,
}

pub fn conjectures(m: u32) -> Vec<Conjecture> {
    let mut out = vec![Conjecture {
        statement: format!("Λ^spin_{{{m},{}}} < Λ^spin_{m}", m.saturating_sub(2)),
        m,
        established: false,
    }];
    if m >= 11 {
        out.push(Conjecture {
            statement: format!("Λ^spin_{m} <= Q*(HP^2 x R^{})", m - 8),
            m,
            established: false,
        });
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn registry() -> Registry {
        builtin_registry().unwrap()
    }

    #[test]
    fn literals_present() {
        let r = registry();
        let e = r.lookup(InvariantId::LambdaStar, 5, Some(2));
        assert!(e.iter().any(|e| e.direction == Direction::Lower
            && e.value == BoundValue::Finite(45.1)
            && e.provenance == Provenance::PaperLiteral));
        let hp = r.lookup(InvariantId::QStarHp2xR, 8, None);
        assert!(hp
            .iter()
            .any(|e| e.direction == Direction::Equal && e.value == BoundValue::Finite(121.4967)));
        for m in REGISTRY_M_MIN..=REGISTRY_M_MAX {
            let z = r.lookup(InvariantId::LambdaStar, m, Some(m - 2));
            assert!(z.iter().any(
                |e| e.value == BoundValue::Finite(0.0) && e.provenance == Provenance::Computed
            ));
        }
    }

    #[test]
    fn computed_entries_rederive_exactly() {
        for e in registry().entries() {
            if let Some(v) = rederive(e) {
                assert_eq!(v.unwrap(), e.value, "{}", e.to_line());
            }
        }
    }

    #[test]
    fn lambda_spin_values() {
        let r = registry();
        assert_eq!(lambda_spin_m(5, &r).unwrap().value, Some(Tenths(451)));
        assert_eq!(lambda_spin_m(6, &r).unwrap().value, Some(Tenths(500)));
        assert_eq!(lambda_spin_m(7, &r).unwrap().value, Some(Tenths(652)));
        assert_eq!(lambda_spin_m(13, &r).unwrap().value, Some(Tenths(1450)));
        assert_eq!(lambda_spin_m(14, &r).unwrap().value, None);
        assert!(lambda_spin_m(4, &r).is_err());
    }

    #[test]
    fn codim3_term_is_the_minimum_at_m7() {
        let r = registry();
        let s = lambda_spin_m(7, &r).unwrap();
        let last = s.terms.last().unwrap();
        assert_eq!(last.k, 4);
        assert_eq!(last.source, Some(InvariantId::LambdaStar));
        assert_eq!(last.provenance, Some(Provenance::Computed));
    }

    #[test]
    fn sigma_cases() {
        let r = registry();
        let s6 = sigma_spin_lower(6, SigmaVariant::SimplyConnected, &r).unwrap();
        assert_eq!(s6.terms.len(), 1);
        assert_eq!(s6.evaluate(), Some(50.0));
        let s8 = sigma_spin_lower(8, SigmaVariant::SimplyConnected, &r).unwrap();
        assert_eq!(s8.evaluate(), Some(78.7));
        let s9 = sigma_spin_lower(9, SigmaVariant::SimplyConnected, &r).unwrap();
        assert_eq!(s9.terms.len(), 3);
        assert_eq!(s9.evaluate(), None);
        let text = s9.to_string();
        assert!(
            text.contains("=unknown") && text.contains("91.8") && text.contains("138.5"),
            "{text}"
        );
        let f7 = sigma_spin_lower(7, SigmaVariant::FundamentalGroup, &r).unwrap();
        assert_eq!(f7.terms.len(), 2);
        assert_eq!(f7.evaluate(), None);
    }

    #[test]
    fn alias_rule() {
        assert!(lambda_aliases_tilde(9, 6));
        assert!(!lambda_aliases_tilde(10, 7));
        assert!(lambda_aliases_tilde(10, 6));
        assert!(!lambda_aliases_tilde(8, 6));
    }

    #[test]
    fn line_and_json_round_trip() {
        let r = registry();
        let text = r.to_lines();
        let back = Registry::from_lines(&text).unwrap();
        assert_eq!(back, r);
        assert_eq!(back.to_lines(), text);
        let json = r.to_json();
        let back = Registry::from_json(&json).unwrap();
        assert_eq!(back, r);
        assert_eq!(back.to_json(), json);
    }

    #[test]
    fn bound_value_text() {
        for v in [
            BoundValue::Finite(45.1),
            BoundValue::Infinite,
            BoundValue::Unknown,
        ] {
            assert_eq!(v.to_string().parse::<BoundValue>().unwrap(), v);
            let json = serde_json::to_string(&v).unwrap();
            assert_eq!(serde_json::from_str::<BoundValue>(&json).unwrap(), v);
        }
        assert_eq!(
            serde_json::to_string(&BoundValue::Unknown).unwrap(),
            "\"unknown\""
        );
    }
}

//! Inequality graph between the Q-invariants of the model spaces 𝕄_c^{m,k}
//! and the Λ-invariants obtained from them as infima over c ∈ [0, 1].
//!
//! Edges are stored as templates over (m, k[, c]) with a decidable
//! precondition and instantiated for every parameter tuple in range.
//! Each node carries an interval; [`RelationGraph::propagate`] tightens
//! intervals to a fixpoint and stops at the first empty interval.

mod export;
mod precondition;

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::aggregate::{BoundValue, Registry};
use crate::codim3;
use crate::constants::yamabe_sphere;
use crate::error::{Error, Result};

pub use export::{edges_from_lines, edges_to_lines, GraphExport, NodeExport, OriginExport};
pub use precondition::{CPosition, Precondition, Truth};

/// Relative size below which interval updates are ignored.
pub const UPDATE_TOLERANCE: f64 = 1e-12;
/// Safety cap on propagation passes; the fixpoint is normally reached in < 20.
pub const MAX_PASSES: usize = 10_000;
pub const DEFAULT_M_MIN: u32 = 2;
pub const DEFAULT_M_MAX: u32 = 15;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Family {
    Lambda,
    LambdaSpin,
    LambdaSpinStar,
    LambdaStar,
    LambdaTilde,
    LambdaTildeSpin,
    QStar,
    QStarSpin,
    QTilde,
    QTildeSpin,
}

impl Family {
    pub const ALL: [Family; 10] = [
        Family::Lambda,
        Family::LambdaSpin,
        Family::LambdaSpinStar,
        Family::LambdaStar,
        Family::LambdaTilde,
        Family::LambdaTildeSpin,
        Family::QStar,
        Family::QStarSpin,
        Family::QTilde,
        Family::QTildeSpin,
    ];

    /// Q-level families live on a single model space and carry c.
    pub fn is_q_level(self) -> bool {
        matches!(
            self,
            Family::QStar | Family::QStarSpin | Family::QTilde | Family::QTildeSpin
        )
    }

    pub fn is_spin(self) -> bool {
        matches!(
            self,
            Family::LambdaSpin
                | Family::LambdaSpinStar
                | Family::LambdaTildeSpin
                | Family::QStarSpin
                | Family::QTildeSpin
        )
    }

    /// The Λ-invariant defined as the infimum over c of this Q-invariant.
    pub fn lambda_of(self) -> Option<Family> {
        match self {
            Family::QStar => Some(Family::LambdaStar),
            Family::QStarSpin => Some(Family::LambdaSpinStar),
            Family::QTilde => Some(Family::LambdaTilde),
            Family::QTildeSpin => Some(Family::LambdaTildeSpin),
            _ => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Family::Lambda => "Lambda",
            Family::LambdaSpin => "LambdaSpin",
            Family::LambdaSpinStar => "LambdaSpinStar",
            Family::LambdaStar => "LambdaStar",
            Family::LambdaTilde => "LambdaTilde",
            Family::LambdaTildeSpin => "LambdaTildeSpin",
            Family::QStar => "QStar",
            Family::QStarSpin => "QStarSpin",
            Family::QTilde => "QTilde",
            Family::QTildeSpin => "QTildeSpin",
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Family::Lambda => "Λ",
            Family::LambdaSpin => "Λ^spin",
            Family::LambdaSpinStar => "Λ^spin,*",
            Family::LambdaStar => "Λ*",
            Family::LambdaTilde => "Λ̃",
            Family::LambdaTildeSpin => "Λ̃^spin",
            Family::QStar => "Q*",
            Family::QStarSpin => "Q*spin",
            Family::QTilde => "Q̃",
            Family::QTildeSpin => "Q̃spin",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::Parse {
                line: 0,
                reason: format!("unknown invariant family {s:?}"),
            })
    }
}

/// A sampled value of c, stored in thousandths so keys order and compare exactly.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CPoint(u16);

impl CPoint {
    pub const ZERO: CPoint = CPoint(0);
    pub const ONE: CPoint = CPoint(1000);

    pub fn from_thousandths(t: u16) -> Result<Self> {
        if t > 1000 {
            return Err(Error::invalid("CPoint", format!("{t}/1000 exceeds 1")));
        }
        Ok(CPoint(t))
    }

    /// Accepts only values that are exact multiples of 0.001 in [0, 1].
    pub fn from_f64(c: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&c) {
            return Err(Error::invalid("CPoint", format!("c = {c} outside [0, 1]")));
        }
        let t = (c * 1000.0).round();
        if (t / 1000.0 - c).abs() > 1e-12 {
            return Err(Error::invalid(
                "CPoint",
                format!("c = {c} is not a multiple of 0.001"),
            ));
        }
        Ok(CPoint(t as u16))
    }

    pub fn thousandths(self) -> u16 {
        self.0
    }

    pub fn value(self) -> f64 {
        f64::from(self.0) / 1000.0
    }
}

impl fmt::Display for CPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value())
    }
}

impl Serialize for CPoint {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_f64(self.value())
    }
}

impl<'de> Deserialize<'de> for CPoint {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let c = f64::deserialize(d)?;
        CPoint::from_f64(c).map_err(serde::de::Error::custom)
    }
}

pub fn default_grid() -> Vec<CPoint> {
    [0, 250, 500, 750, 1000].into_iter().map(CPoint).collect()
}

/// Ordered lexicographically by family, m, k, c.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct NodeKey {
    pub family: Family,
    pub m: u32,
    pub k: u32,
    pub c: Option<CPoint>,
}

impl NodeKey {
    pub fn lambda(family: Family, m: u32, k: u32) -> Self {
        NodeKey {
            family,
            m,
            k,
            c: None,
        }
    }

    pub fn q(family: Family, m: u32, k: u32, c: CPoint) -> Self {
        NodeKey {
            family,
            m,
            k,
            c: Some(c),
        }
    }

    fn position(&self) -> CPosition {
        match self.c {
            Some(c) => CPosition::At(c.value()),
            None => CPosition::Absent,
        }
    }
}

impl fmt::Display for NodeKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.c {
            Some(c) => write!(f, "{}({},{},{})", self.family, self.m, self.k, c),
            None => write!(f, "{}({},{})", self.family, self.m, self.k),
        }
    }
}

impl FromStr for NodeKey {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = |reason: String| Error::Parse { line: 0, reason };
        let s = s.trim();
        let open = s
            .find('(')
            .ok_or_else(|| bad(format!("expected Family(m,k[,c]) in {s:?}")))?;
        if !s.ends_with(')') {
            return Err(bad(format!("missing ')' in {s:?}")));
        }
        let family: Family = s[..open].trim().parse()?;
        let args: Vec<&str> = s[open + 1..s.len() - 1].split(',').map(str::trim).collect();
        let int = |t: &str| {
            t.parse::<u32>()
                .map_err(|_| bad(format!("bad integer {t:?} in {s:?}")))
        };
        match (family.is_q_level(), args.as_slice()) {
            (false, [m, k]) => Ok(NodeKey::lambda(family, int(m)?, int(k)?)),
            (true, [m, k, c]) => {
                let c: f64 = c
                    .parse()
                    .map_err(|_| bad(format!("bad c {c:?} in {s:?}")))?;
                Ok(NodeKey::q(family, int(m)?, int(k)?, CPoint::from_f64(c)?))
            }
            _ => Err(bad(format!(
                "{family} takes {} arguments in {s:?}",
                if family.is_q_level() { 3 } else { 2 }
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    Lower,
    Upper,
    Equal,
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Direction::Lower => "lower",
            Direction::Upper => "upper",
            Direction::Equal => "equal",
        })
    }
}

impl FromStr for Direction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "lower" => Ok(Direction::Lower),
            "upper" => Ok(Direction::Upper),
            "equal" => Ok(Direction::Equal),
            _ => Err(Error::Parse {
                line: 0,
                reason: format!("unknown direction {s:?}"),
            }),
        }
    }
}

/// Where an interval endpoint came from. Indices refer to the graph's
/// fact list and instance list.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Origin {
    Default,
    Fact(usize),
    Edge(usize),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    pub lo: f64,
    pub lo_strict: bool,
    pub hi: f64,
    pub hi_strict: bool,
    pub lo_origin: Origin,
    pub hi_origin: Origin,
}

impl Default for Interval {
    /// All invariants are non-negative; +∞ is allowed.
    fn default() -> Self {
        Interval {
            lo: 0.0,
            lo_strict: false,
            hi: f64::INFINITY,
            hi_strict: false,
            lo_origin: Origin::Default,
            hi_origin: Origin::Default,
        }
    }
}

fn tol(x: f64) -> f64 {
    if x.is_finite() {
        UPDATE_TOLERANCE * x.abs().max(1.0)
    } else {
        0.0
    }
}

fn close(a: f64, b: f64) -> bool {
    a == b || (a.is_finite() && b.is_finite() && (a - b).abs() <= tol(a.max(b)))
}

impl Interval {
    /// Raises the lower endpoint; returns whether anything changed.
    fn raise_lo(&mut self, value: f64, strict: bool, origin: Origin) -> bool {
        let strict = strict && value.is_finite();
        if value > self.lo + tol(self.lo)
            || (value.is_infinite() && self.lo.is_finite() && value > 0.0)
        {
            self.lo = value;
            self.lo_strict = strict;
            self.lo_origin = origin;
            true
        } else if strict && !self.lo_strict && close(value, self.lo) {
            self.lo_strict = true;
            self.lo_origin = origin;
            true
        } else {
            false
        }
    }

    fn lower_hi(&mut self, value: f64, strict: bool, origin: Origin) -> bool {
        let strict = strict && value.is_finite();
        if value < self.hi - tol(self.hi) || (self.hi.is_infinite() && value.is_finite()) {
            self.hi = value;
            self.hi_strict = strict;
            self.hi_origin = origin;
            true
        } else if strict && !self.hi_strict && close(value, self.hi) {
            self.hi_strict = true;
            self.hi_origin = origin;
            true
        } else {
            false
        }
    }

    pub fn is_empty(&self) -> bool {
        if self.lo > self.hi + tol(self.hi) {
            return true;
        }
        close(self.lo, self.hi) && self.lo.is_finite() && (self.lo_strict || self.hi_strict)
    }

    /// Whether the interval certifies value < x.
    pub fn certainly_below(&self, x: f64) -> bool {
        self.hi < x - tol(x) || (self.hi_strict && close(self.hi, x))
    }

    pub fn contains(&self, x: f64) -> bool {
        let above = x > self.lo - tol(self.lo) || (x == self.lo);
        let below = x < self.hi + tol(self.hi) || (x == self.hi);
        above && below
    }

    /// Same endpoints and strictness, ignoring provenance.
    pub fn same_bounds(&self, other: &Interval) -> bool {
        self.lo == other.lo
            && self.hi == other.hi
            && self.lo_strict == other.lo_strict
            && self.hi_strict == other.hi_strict
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let open = if self.lo_strict { '(' } else { '[' };
        let close = if self.hi_strict || self.hi.is_infinite() {
            ')'
        } else {
            ']'
        };
        let show = |x: f64| {
            if x.is_infinite() {
                "+inf".to_string()
            } else {
                format!("{x}")
            }
        };
        write!(f, "{open}{}, {}{close}", show(self.lo), show(self.hi))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EdgeKind {
    Leq,
    Geq,
    Equal,
}

impl EdgeKind {
    pub fn as_str(self) -> &'static str {
        match self {
            EdgeKind::Leq => "leq",
            EdgeKind::Geq => "geq",
            EdgeKind::Equal => "equal",
        }
    }
}

impl FromStr for EdgeKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "leq" => Ok(EdgeKind::Leq),
            "geq" => Ok(EdgeKind::Geq),
            "equal" => Ok(EdgeKind::Equal),
            _ => Err(Error::Parse {
                line: 0,
                reason: format!("unknown edge kind {s:?}"),
            }),
        }
    }
}

/// `from kind to` at matching parameters. When one side is Λ-level and the
/// other Q-level, the edge is instantiated once per sampled c.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RelationEdge {
    pub from: Family,
    pub kind: EdgeKind,
    pub to: Family,
    pub precondition: Precondition,
    pub citation: String,
}

impl RelationEdge {
    fn new(
        from: Family,
        kind: EdgeKind,
        to: Family,
        precondition: Precondition,
        citation: &str,
    ) -> Self {
        RelationEdge {
            from,
            kind,
            to,
            precondition,
            citation: citation.to_string(),
        }
    }
}

/// Which c values a fact covers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CScope {
    /// Λ-level node, no c.
    None,
    At(CPoint),
    /// Every sampled c.
    All,
    /// Every sampled c > 0.
    Positive,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundFact {
    pub family: Family,
    pub m: u32,
    pub k: u32,
    pub c: CScope,
    pub direction: Direction,
    #[serde(with = "crate::serde_ext::extended_f64")]
    pub value: f64,
    pub strict: bool,
    pub citation: String,
}

impl BoundFact {
    pub fn new(
        family: Family,
        m: u32,
        k: u32,
        c: CScope,
        direction: Direction,
        value: f64,
        citation: &str,
    ) -> Self {
        BoundFact {
            family,
            m,
            k,
            c,
            direction,
            value,
            strict: false,
            citation: citation.to_string(),
        }
    }

    pub fn strict(mut self) -> Self {
        self.strict = true;
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Comparison {
    Lt,
    Le,
    Eq,
    Ge,
    Gt,
}

impl Comparison {
    pub fn symbol(self) -> &'static str {
        match self {
            Comparison::Lt => "<",
            Comparison::Le => "<=",
            Comparison::Eq => "=",
            Comparison::Ge => ">=",
            Comparison::Gt => ">",
        }
    }
}

/// A relation between two concrete nodes, typically injected by a user.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NodeRelation {
    pub left: NodeKey,
    pub comparison: Comparison,
    pub right: NodeKey,
    pub citation: String,
}

/// Parsed form of an injection string such as `LambdaSpin(7,4) < 65.2`
/// or `QTildeSpin(7,4,0.5) < QStar(7,4,0.5)`.
#[derive(Debug, Clone, PartialEq)]
pub enum Injection {
    Fact(BoundFact),
    Relation(NodeRelation),
}

impl Injection {
    pub fn parse(text: &str, citation: &str) -> Result<Self> {
        let bad = |reason: String| Error::Parse { line: 0, reason };
        let ops = [
            ("<=", Comparison::Le),
            (">=", Comparison::Ge),
            ("==", Comparison::Eq),
            ("<", Comparison::Lt),
            (">", Comparison::Gt),
            ("=", Comparison::Eq),
        ];
        let (pos, token, cmp) = ops
            .iter()
            .filter_map(|(tok, cmp)| text.find(tok).map(|p| (p, *tok, *cmp)))
            .min_by_key(|(p, tok, _)| (*p, std::cmp::Reverse(tok.len())))
            .ok_or_else(|| bad(format!("no comparison operator in {text:?}")))?;
        let left: NodeKey = text[..pos].parse()?;
        let rhs = text[pos + token.len()..].trim();
        if let Some(value) = crate::serde_ext::from_text(rhs) {
            let (direction, strict) = match cmp {
                Comparison::Lt => (Direction::Upper, true),
                Comparison::Le => (Direction::Upper, false),
                Comparison::Eq => (Direction::Equal, false),
                Comparison::Ge => (Direction::Lower, false),
                Comparison::Gt => (Direction::Lower, true),
            };
            let c = match left.c {
                Some(c) => CScope::At(c),
                None => CScope::None,
            };
            let mut fact =
                BoundFact::new(left.family, left.m, left.k, c, direction, value, citation);
            fact.strict = strict;
            return Ok(Injection::Fact(fact));
        }
        let right: NodeKey = rhs.parse().map_err(|_| {
            bad(format!(
                "right-hand side {rhs:?} is neither a number nor a node"
            ))
        })?;
        Ok(Injection::Relation(NodeRelation {
            left,
            comparison: cmp,
            right,
            citation: citation.to_string(),
        }))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Source {
    Template(usize),
    Relation(usize),
}

/// A concrete edge `from ≤ to` (strict or not) between two nodes.
#[derive(Debug, Clone, Copy)]
struct Instance {
    from: NodeKey,
    to: NodeKey,
    strict: bool,
    source: Source,
}

/// Empty interval or strict cycle found during assertion or propagation.
#[derive(Debug, Clone, PartialEq)]
pub struct Contradiction {
    pub node: NodeKey,
    pub lo: f64,
    pub lo_strict: bool,
    pub hi: f64,
    pub hi_strict: bool,
    /// Provenance chain, lower side first, each line ending in a citation.
    pub trace: Vec<String>,
}

impl fmt::Display for Contradiction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |x: f64| crate::serde_ext::to_text(x);
        writeln!(
            f,
            "contradiction at {}: lower {}{} exceeds upper {}{}",
            self.node,
            if self.lo_strict { ">" } else { ">=" },
            show(self.lo),
            if self.hi_strict { "<" } else { "<=" },
            show(self.hi)
        )?;
        for line in &self.trace {
            writeln!(f, "  {line}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConsistencyReport {
    pub consistent: bool,
    pub contradiction: Option<Contradiction>,
    /// Tightest interval per node, in key order.
    pub nodes: Vec<(NodeKey, Interval)>,
    /// Edge instances whose precondition could not be decided.
    pub conditionally_inapplicable: usize,
    pub passes: usize,
}

impl ConsistencyReport {
    pub fn interval(&self, key: &NodeKey) -> Option<&Interval> {
        self.nodes
            .binary_search_by(|(k, _)| k.cmp(key))
            .ok()
            .map(|i| &self.nodes[i].1)
    }
}

/// Q*(Sᵐ), with the value 8π of the round 2-sphere.
pub fn sphere_value(m: u32) -> Result<f64> {
    if m == 2 {
        Ok(8.0 * std::f64::consts::PI)
    } else {
        yamabe_sphere(m)
    }
}

#[derive(Debug, Clone)]
pub struct RelationGraph {
    grid: Vec<CPoint>,
    m_min: u32,
    m_max: u32,
    templates: Vec<RelationEdge>,
    facts: Vec<BoundFact>,
    relations: Vec<NodeRelation>,
    nodes: BTreeMap<NodeKey, Interval>,
    instances: Vec<Instance>,
    built: BTreeSet<(u32, u32)>,
    propagated: bool,
    contradiction: Option<Contradiction>,
}

impl RelationGraph {
    /// Graph with the given edge templates and nodes for m_min ≤ m ≤ m_max,
    /// 0 ≤ k ≤ m − 1, and no facts.
    pub fn with_templates(
        templates: Vec<RelationEdge>,
        grid: Vec<CPoint>,
        m_min: u32,
        m_max: u32,
    ) -> Result<Self> {
        if m_min < 2 || m_min > m_max {
            return Err(Error::invalid(
                "RelationGraph",
                format!("need 2 ≤ m_min ≤ m_max, got {m_min}..={m_max}"),
            ));
        }
        if grid.is_empty() || grid.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::invalid(
                "RelationGraph",
                "grid must be non-empty and increasing",
            ));
        }
        let mut g = RelationGraph {
            grid,
            m_min,
            m_max,
            templates,
            facts: Vec::new(),
            relations: Vec::new(),
            nodes: BTreeMap::new(),
            instances: Vec::new(),
            built: BTreeSet::new(),
            propagated: false,
            contradiction: None,
        };
        for m in m_min..=m_max {
            for k in 0..m {
                g.ensure(m, k);
            }
        }
        Ok(g)
    }

    pub fn grid(&self) -> &[CPoint] {
        &self.grid
    }

    pub fn m_range(&self) -> (u32, u32) {
        (self.m_min, self.m_max)
    }

    pub fn templates(&self) -> &[RelationEdge] {
        &self.templates
    }

    pub fn facts(&self) -> &[BoundFact] {
        &self.facts
    }

    pub fn relations(&self) -> &[NodeRelation] {
        &self.relations
    }

    pub fn is_propagated(&self) -> bool {
        self.propagated
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn instance_count(&self) -> usize {
        self.instances.len()
    }

    pub fn interval(&self, key: &NodeKey) -> Option<&Interval> {
        self.nodes.get(key)
    }

    pub fn nodes(&self) -> impl Iterator<Item = (&NodeKey, &Interval)> {
        self.nodes.iter()
    }

    pub fn contradiction(&self) -> Option<&Contradiction> {
        self.contradiction.as_ref()
    }

    /// Scalar families are not defined in dimension 2.
    fn family_exists(family: Family, m: u32) -> bool {
        m >= 3 || family.is_spin()
    }

    fn keys_for(&self, family: Family, m: u32, k: u32) -> Vec<NodeKey> {
        if !Self::family_exists(family, m) {
            return Vec::new();
        }
        if family.is_q_level() {
            self.grid
                .iter()
                .map(|&c| NodeKey::q(family, m, k, c))
                .collect()
        } else {
            vec![NodeKey::lambda(family, m, k)]
        }
    }

    /// Creates the nodes and template instances for (m, k) if absent.
    fn ensure(&mut self, m: u32, k: u32) {
        if !self.built.insert((m, k)) {
            return;
        }
        for family in Family::ALL {
            for key in self.keys_for(family, m, k) {
                self.nodes.entry(key).or_default();
            }
        }
        for (idx, t) in self.templates.iter().enumerate() {
            if !Self::family_exists(t.from, m) || !Self::family_exists(t.to, m) {
                continue;
            }
            let pairs: Vec<(NodeKey, NodeKey)> = match (t.from.is_q_level(), t.to.is_q_level()) {
                (false, false) => {
                    vec![(NodeKey::lambda(t.from, m, k), NodeKey::lambda(t.to, m, k))]
                }
                (true, true) => self
                    .grid
                    .iter()
                    .map(|&c| (NodeKey::q(t.from, m, k, c), NodeKey::q(t.to, m, k, c)))
                    .collect(),
                (false, true) => self
                    .grid
                    .iter()
                    .map(|&c| (NodeKey::lambda(t.from, m, k), NodeKey::q(t.to, m, k, c)))
                    .collect(),
                (true, false) => self
                    .grid
                    .iter()
                    .map(|&c| (NodeKey::q(t.from, m, k, c), NodeKey::lambda(t.to, m, k)))
                    .collect(),
            };
            for (a, b) in pairs {
                let source = Source::Template(idx);
                let mut push = |from, to| {
                    self.instances.push(Instance {
                        from,
                        to,
                        strict: false,
                        source,
                    })
                };
                match t.kind {
                    EdgeKind::Leq => push(a, b),
                    EdgeKind::Geq => push(b, a),
                    EdgeKind::Equal => {
                        push(a, b);
                        push(b, a);
                    }
                }
            }
        }
    }

    fn validate(&self, family: Family, m: u32, k: u32) -> Result<()> {
        if m < 2 || k >= m {
            return Err(Error::invalid(
                "node",
                format!("need m ≥ 2 and 0 ≤ k ≤ m − 1, got m = {m}, k = {k}"),
            ));
        }
        if !Self::family_exists(family, m) {
            return Err(Error::invalid(
                "node",
                format!("{family} is not defined for m = {m}"),
            ));
        }
        Ok(())
    }

    fn fact_keys(&self, fact: &BoundFact) -> Result<Vec<NodeKey>> {
        self.validate(fact.family, fact.m, fact.k)?;
        let (f, m, k) = (fact.family, fact.m, fact.k);
        let keys = match (f.is_q_level(), fact.c) {
            (false, CScope::None) => vec![NodeKey::lambda(f, m, k)],
            (true, CScope::At(c)) => {
                if !self.grid.contains(&c) {
                    return Err(Error::invalid(
                        "fact",
                        format!("c = {c} is not on the sampling grid"),
                    ));
                }
                vec![NodeKey::q(f, m, k, c)]
            }
            (true, CScope::All) => self.keys_for(f, m, k),
            (true, CScope::Positive) => self
                .keys_for(f, m, k)
                .into_iter()
                .filter(|key| key.c.is_some_and(|c| c.0 > 0))
                .collect(),
            _ => {
                return Err(Error::invalid(
                    "fact",
                    format!("scope {:?} does not match family {f}", fact.c),
                ))
            }
        };
        Ok(keys)
    }

    /// Intersects the covered node intervals with the fact. A fact that would
    /// empty an interval is not applied; the contradiction is recorded and returned.
    pub fn assert_fact(&mut self, fact: BoundFact) -> std::result::Result<(), Contradiction> {
        let keys = match self.fact_keys(&fact) {
            Ok(keys) => keys,
            Err(e) => {
                let node = NodeKey {
                    family: fact.family,
                    m: fact.m,
                    k: fact.k,
                    c: None,
                };
                return Err(Contradiction {
                    node,
                    lo: f64::NAN,
                    lo_strict: false,
                    hi: f64::NAN,
                    hi_strict: false,
                    trace: vec![format!("rejected fact: {e}")],
                });
            }
        };
        self.ensure(fact.m, fact.k);
        let idx = self.facts.len();
        self.facts.push(fact.clone());
        let origin = Origin::Fact(idx);
        for key in keys {
            let current = self.nodes[&key];
            let mut next = current;
            if matches!(fact.direction, Direction::Lower | Direction::Equal) {
                next.raise_lo(fact.value, fact.strict, origin);
            }
            if matches!(fact.direction, Direction::Upper | Direction::Equal) {
                next.lower_hi(fact.value, fact.strict, origin);
            }
            if next.is_empty() {
                let c = self.contradiction_at(key, &next);
                self.contradiction.get_or_insert_with(|| c.clone());
                return Err(c);
            }
            self.nodes.insert(key, next);
        }
        self.propagated = false;
        Ok(())
    }

    /// Adds a concrete relation between two nodes, creating them if needed.
    pub fn add_relation(&mut self, relation: NodeRelation) -> Result<()> {
        for key in [relation.left, relation.right] {
            self.validate(key.family, key.m, key.k)?;
            if let Some(c) = key.c {
                if !self.grid.contains(&c) {
                    return Err(Error::invalid(
                        "relation",
                        format!("c = {c} is not on the sampling grid"),
                    ));
                }
            }
            if key.family.is_q_level() != key.c.is_some() {
                return Err(Error::invalid(
                    "relation",
                    format!("{key} has the wrong arity"),
                ));
            }
        }
        self.ensure(relation.left.m, relation.left.k);
        self.ensure(relation.right.m, relation.right.k);
        let idx = self.relations.len();
        let source = Source::Relation(idx);
        let (l, r) = (relation.left, relation.right);
        let mut push = |from, to, strict| {
            self.instances.push(Instance {
                from,
                to,
                strict,
                source,
            })
        };
        match relation.comparison {
            Comparison::Lt => push(l, r, true),
            Comparison::Le => push(l, r, false),
            Comparison::Gt => push(r, l, true),
            Comparison::Ge => push(r, l, false),
            Comparison::Eq => {
                push(l, r, false);
                push(r, l, false);
            }
        }
        self.relations.push(relation);
        self.propagated = false;
        Ok(())
    }

    pub fn inject(
        &mut self,
        injection: Injection,
    ) -> Result<std::result::Result<(), Contradiction>> {
        match injection {
            Injection::Fact(f) => {
                self.validate(f.family, f.m, f.k)?;
                Ok(self.assert_fact(f))
            }
            Injection::Relation(r) => {
                self.add_relation(r)?;
                Ok(Ok(()))
            }
        }
    }

    fn applicability(&self, inst: &Instance) -> Truth {
        match inst.source {
            Source::Relation(_) => Truth::True,
            Source::Template(idx) => {
                let key = if inst.from.c.is_some() {
                    inst.from
                } else {
                    inst.to
                };
                let (m, k, c) = (key.m, key.k, key.c);
                let threshold = sphere_value(m).unwrap_or(f64::INFINITY);
                let below = |family: Family| {
                    self.nodes
                        .get(&NodeKey { family, m, k, c })
                        .is_some_and(|iv| iv.certainly_below(threshold))
                };
                self.templates[idx]
                    .precondition
                    .eval(m, k, key.position(), &below)
            }
        }
    }

    /// Interval propagation to a fixpoint. Stops at the first empty interval
    /// or strict cycle and records it.
    pub fn propagate(&mut self) -> std::result::Result<usize, Contradiction> {
        if let Some(c) = &self.contradiction {
            return Err(c.clone());
        }
        let mut passes = 0;
        loop {
            passes += 1;
            let mut changed = false;
            for i in 0..self.instances.len() {
                let inst = self.instances[i];
                if self.applicability(&inst) != Truth::True {
                    continue;
                }
                let a = self.nodes[&inst.from];
                let b = self.nodes[&inst.to];
                let origin = Origin::Edge(i);
                let mut nb = b;
                let mut na = a;
                // from ≤ to: lo(to) ≥ lo(from), hi(from) ≤ hi(to).
                let cb = nb.raise_lo(a.lo, a.lo_strict || inst.strict, origin);
                let ca = na.lower_hi(b.hi, b.hi_strict || inst.strict, origin);
                if cb {
                    self.nodes.insert(inst.to, nb);
                    if nb.is_empty() {
                        return Err(self.record(inst.to, &nb));
                    }
                }
                if ca {
                    self.nodes.insert(inst.from, na);
                    if na.is_empty() {
                        return Err(self.record(inst.from, &na));
                    }
                }
                changed |= ca || cb;
            }
            if !changed {
                break;
            }
            if passes >= MAX_PASSES {
                break;
            }
        }
        if let Some(c) = self.strict_cycle() {
            self.contradiction = Some(c.clone());
            return Err(c);
        }
        self.propagated = true;
        Ok(passes)
    }

    fn record(&mut self, key: NodeKey, iv: &Interval) -> Contradiction {
        let c = self.contradiction_at(key, iv);
        self.contradiction = Some(c.clone());
        c
    }

    /// A strict instance a < b together with a non-strict path b ≤ … ≤ a.
    fn strict_cycle(&self) -> Option<Contradiction> {
        let mut adjacency: BTreeMap<NodeKey, Vec<usize>> = BTreeMap::new();
        for (i, inst) in self.instances.iter().enumerate() {
            if self.applicability(inst) == Truth::True {
                adjacency.entry(inst.from).or_default().push(i);
            }
        }
        for (i, inst) in self.instances.iter().enumerate() {
            if !inst.strict || self.applicability(inst) != Truth::True {
                continue;
            }
            let mut parent: BTreeMap<NodeKey, usize> = BTreeMap::new();
            let mut queue = VecDeque::from([inst.to]);
            let mut seen = BTreeSet::from([inst.to]);
            while let Some(node) = queue.pop_front() {
                if node == inst.from {
                    let mut trace = vec![format!(
                        "{} < {} ({})",
                        inst.from,
                        inst.to,
                        self.instance_citation(i)
                    )];
                    let mut path = Vec::new();
                    let mut cur = node;
                    while cur != inst.to {
                        let e = parent[&cur];
                        path.push(e);
                        cur = self.instances[e].from;
                    }
                    for e in path.into_iter().rev() {
                        let step = &self.instances[e];
                        let rel = if step.strict { "<" } else { "<=" };
                        trace.push(format!(
                            "{} {rel} {} ({})",
                            step.from,
                            step.to,
                            self.instance_citation(e)
                        ));
                    }
                    let iv = self.nodes[&inst.from];
                    return Some(Contradiction {
                        node: inst.from,
                        lo: iv.lo,
                        lo_strict: true,
                        hi: iv.lo,
                        hi_strict: true,
                        trace,
                    });
                }
                for &e in adjacency.get(&node).map(Vec::as_slice).unwrap_or(&[]) {
                    let next = self.instances[e].to;
                    if seen.insert(next) {
                        parent.insert(next, e);
                        queue.push_back(next);
                    }
                }
            }
        }
        None
    }

    fn instance_citation(&self, i: usize) -> String {
        match self.instances[i].source {
            Source::Template(t) => {
                let t = &self.templates[t];
                format!("{} {} {}: {}", t.from, t.kind.as_str(), t.to, t.citation)
            }
            Source::Relation(r) => {
                let r = &self.relations[r];
                format!(
                    "{} {} {}: {}",
                    r.left,
                    r.comparison.symbol(),
                    r.right,
                    r.citation
                )
            }
        }
    }

    fn fact_line(&self, idx: usize) -> String {
        let f = &self.facts[idx];
        let rel = match (f.direction, f.strict) {
            (Direction::Lower, false) => ">=",
            (Direction::Lower, true) => ">",
            (Direction::Upper, false) => "<=",
            (Direction::Upper, true) => "<",
            (Direction::Equal, _) => "=",
        };
        format!(
            "fact {rel} {}: {}",
            crate::serde_ext::to_text(f.value),
            f.citation
        )
    }

    /// Follows the provenance of one endpoint back to a fact.
    fn trace_side(&self, start: NodeKey, origin: Origin, lower: bool, out: &mut Vec<String>) {
        let side = if lower { "lower" } else { "upper" };
        let mut key = start;
        let mut origin = origin;
        let mut seen = BTreeSet::new();
        loop {
            match origin {
                Origin::Default => {
                    out.push(format!("{side} {key}: default"));
                    return;
                }
                Origin::Fact(f) => {
                    out.push(format!("{side} {key}: {}", self.fact_line(f)));
                    return;
                }
                Origin::Edge(e) => {
                    if !seen.insert((key, e)) {
                        out.push(format!("{side} {key}: cycle"));
                        return;
                    }
                    out.push(format!("{side} {key}: via {}", self.instance_citation(e)));
                    let inst = self.instances[e];
                    key = if lower { inst.from } else { inst.to };
                    let iv = self.nodes[&key];
                    origin = if lower { iv.lo_origin } else { iv.hi_origin };
                }
            }
        }
    }

    fn contradiction_at(&self, key: NodeKey, iv: &Interval) -> Contradiction {
        let mut trace = Vec::new();
        self.trace_side(key, iv.lo_origin, true, &mut trace);
        self.trace_side(key, iv.hi_origin, false, &mut trace);
        Contradiction {
            node: key,
            lo: iv.lo,
            lo_strict: iv.lo_strict,
            hi: iv.hi,
            hi_strict: iv.hi_strict,
            trace,
        }
    }

    /// Propagates and summarizes the result.
    pub fn check_consistency(&mut self) -> ConsistencyReport {
        let outcome = self.propagate();
        let conditionally_inapplicable = self
            .instances
            .iter()
            .filter(|i| self.applicability(i) == Truth::Unknown)
            .count();
        let (passes, contradiction) = match outcome {
            Ok(p) => (p, None),
            Err(c) => (0, Some(c)),
        };
        ConsistencyReport {
            consistent: contradiction.is_none(),
            contradiction,
            nodes: self.nodes.iter().map(|(k, v)| (*k, *v)).collect(),
            conditionally_inapplicable,
            passes,
        }
    }

    pub fn origin_text(&self, origin: Origin) -> OriginExport {
        match origin {
            Origin::Default => OriginExport::Default,
            Origin::Fact(i) => OriginExport::Fact {
                citation: self.facts[i].citation.clone(),
            },
            Origin::Edge(i) => {
                let inst = &self.instances[i];
                let citation = match inst.source {
                    Source::Template(t) => self.templates[t].citation.clone(),
                    Source::Relation(r) => self.relations[r].citation.clone(),
                };
                OriginExport::Edge {
                    citation,
                    from: inst.from,
                    to: inst.to,
                }
            }
        }
    }
}

/// The edge templates of the Q- and Λ-level comparison diagram.
pub fn paper_edges() -> Vec<RelationEdge> {
    use EdgeKind::*;
    use Family::*;
    use Precondition as P;
    let spin_footnote = P::All(vec![
        P::SpinGap,
        P::Any(vec![P::BelowSphere(QTildeSpin), P::BelowSphere(QStarSpin)]),
    ]);
    let scalar_footnote = P::Any(vec![
        P::All(vec![P::ScalarGap, P::CBelowOne]),
        P::All(vec![P::KAtMostMMinus(3), P::CEqualsOne]),
    ]);
    let q_edges = vec![
        RelationEdge::new(QStar, Leq, QTilde, P::Always, "cut-off comparison of Q* with Q~"),
        RelationEdge::new(
            QStarSpin,
            Leq,
            QTildeSpin,
            P::KAtMostMMinus(2),
            "cut-off comparison of Q*spin with Q~spin",
        ),
        RelationEdge::new(
            QTildeSpin,
            Geq,
            QStar,
            P::KAtMostMMinus(2),
            "Hijazi inequality on model spaces",
        ),
        RelationEdge::new(
            QTildeSpin,
            Leq,
            QStarSpin,
            spin_footnote,
            "attained spinorial infimum on hyperbolic times sphere; needs the spectral gap and a value below the sphere",
        ),
        RelationEdge::new(
            QTilde,
            Leq,
            QStar,
            scalar_footnote,
            "attained Yamabe infimum on hyperbolic times sphere",
        ),
    ];
    let mut edges = Vec::new();
    for e in &q_edges {
        edges.push(e.clone());
    }
    for e in &q_edges {
        edges.push(RelationEdge {
            from: e.from.lambda_of().expect("Q-level"),
            kind: e.kind,
            to: e.to.lambda_of().expect("Q-level"),
            precondition: P::ForAllC(Box::new(e.precondition.clone())),
            citation: format!("infimum over c of: {}", e.citation),
        });
    }
    edges.extend([
        RelationEdge::new(
            LambdaTildeSpin,
            Leq,
            LambdaSpinStar,
            P::KAtMostMMinus(2),
            "limits of products of spheres approximate every model space",
        ),
        RelationEdge::new(
            LambdaTilde,
            Leq,
            LambdaStar,
            P::Any(vec![
                P::KAtMostMMinus(4),
                P::All(vec![P::KEqualsMMinus(3), P::KAtMost(3)]),
            ]),
            "limits of products of spheres approximate every model space",
        ),
        RelationEdge::new(
            LambdaSpin,
            Equal,
            LambdaTildeSpin,
            P::KAtMostMMinus(2),
            "spinorial surgery constant chosen as Lambda~spin",
        ),
        RelationEdge::new(
            Lambda,
            Leq,
            LambdaTilde,
            P::Always,
            "surgery constant is a minimum involving Lambda~",
        ),
        RelationEdge::new(
            Lambda,
            Equal,
            LambdaTilde,
            P::Any(vec![
                P::KAtMostMMinus(4),
                P::All(vec![P::KEqualsMMinus(3), P::KAtMost(6)]),
            ]),
            "second-order term does not contribute in these codimensions",
        ),
    ]);
    for q in [QStar, QStarSpin, QTilde, QTildeSpin] {
        edges.push(RelationEdge::new(
            q.lambda_of().expect("Q-level"),
            Leq,
            q,
            P::Always,
            "Lambda-invariant is the infimum over c",
        ));
    }
    edges
}

/// Special values known in closed form, for m_min ≤ m ≤ m_max.
pub fn paper_facts(grid: &[CPoint], m_min: u32, m_max: u32) -> Result<Vec<BoundFact>> {
    use Direction::*;
    use Family::*;
    let inf = f64::INFINITY;
    let mut facts = Vec::new();
    for m in m_min..=m_max {
        let s = sphere_value(m)?;
        if m == 2 {
            let root3 = 3f64.sqrt() * s;
            let at0 = CScope::At(CPoint::ZERO);
            let c1 = CScope::At(CPoint::ONE);
            facts.extend([
                BoundFact::new(
                    QStarSpin,
                    2,
                    0,
                    CScope::All,
                    Upper,
                    s,
                    "sphere maximizes Q*spin",
                ),
                BoundFact::new(
                    QStarSpin,
                    2,
                    1,
                    CScope::All,
                    Upper,
                    s,
                    "sphere maximizes Q*spin",
                ),
                BoundFact::new(
                    QStarSpin,
                    2,
                    0,
                    c1,
                    Equal,
                    s,
                    "c = 1 model space is conformal to a subset of the sphere",
                ),
                BoundFact::new(
                    QStarSpin,
                    2,
                    1,
                    c1,
                    Equal,
                    s,
                    "c = 1 model space is conformal to a subset of the sphere",
                ),
                BoundFact::new(
                    QTildeSpin,
                    2,
                    0,
                    c1,
                    Equal,
                    s,
                    "c = 1: Q~spin equals Q*(S^m) for k <= m-2",
                ),
                BoundFact::new(
                    QTildeSpin,
                    2,
                    1,
                    c1,
                    Equal,
                    inf,
                    "c = 1, k = m-1: no L2 solutions on hyperbolic space",
                ),
                BoundFact::new(QTildeSpin, 2, 1, at0, Lower, s, "Q~spin(R^2) >= Q*(S^2)"),
                BoundFact::new(
                    QTildeSpin,
                    2,
                    1,
                    at0,
                    Upper,
                    root3,
                    "Q~spin(R^2) <= sqrt(3) Q*(S^2), test spinor from a Killing spinor with zeros",
                ),
                BoundFact::new(
                    LambdaTildeSpin,
                    2,
                    1,
                    CScope::None,
                    Lower,
                    s,
                    "Lambda~spin(2,1) = Q~spin(R^2) >= Q*(S^2)",
                ),
                BoundFact::new(
                    LambdaTildeSpin,
                    2,
                    1,
                    CScope::None,
                    Upper,
                    root3,
                    "Lambda~spin(2,1) = Q~spin(R^2) <= sqrt(3) Q*(S^2)",
                ),
                BoundFact::new(
                    LambdaSpin,
                    2,
                    1,
                    CScope::None,
                    Equal,
                    s,
                    "Lambda^spin(2,1) = Q*(S^2)",
                ),
            ]);
            continue;
        }
        for k in 0..m {
            let c1 = CScope::At(CPoint::ONE);
            let sphere_max = "sphere maximizes Q* and Q*spin";
            let conformal = "c = 1 model space is conformal to the sphere minus a subsphere";
            facts.push(BoundFact::new(
                QStar,
                m,
                k,
                CScope::All,
                Upper,
                s,
                sphere_max,
            ));
            facts.push(BoundFact::new(
                QStarSpin,
                m,
                k,
                CScope::All,
                Upper,
                s,
                sphere_max,
            ));
            facts.push(BoundFact::new(QStar, m, k, c1, Equal, s, conformal));
            facts.push(BoundFact::new(QStarSpin, m, k, c1, Equal, s, conformal));
            if k + 2 <= m {
                facts.push(BoundFact::new(
                    QTildeSpin,
                    m,
                    k,
                    c1,
                    Equal,
                    s,
                    "c = 1: Q~spin equals Q*(S^m) for k <= m-2",
                ));
            } else {
                facts.push(BoundFact::new(
                    QTildeSpin,
                    m,
                    k,
                    c1,
                    Equal,
                    inf,
                    "c = 1, k = m-1: no L2 solutions on hyperbolic space",
                ));
            }
            if k + 3 <= m {
                facts.push(BoundFact::new(
                    QTilde,
                    m,
                    k,
                    c1,
                    Equal,
                    s,
                    "c = 1: Q~ equals Q*(S^m) for k <= m-3",
                ));
            } else {
                facts.push(BoundFact::new(
                    QTilde,
                    m,
                    k,
                    c1,
                    Equal,
                    inf,
                    "c = 1: Q~ is infinite for k >= m-2",
                ));
            }
            if k + 1 == m {
                let km1 = "k = m-1: model space is two copies of hyperbolic or Euclidean space";
                facts.push(BoundFact::new(QStar, m, k, CScope::All, Equal, s, km1));
                facts.push(BoundFact::new(QStarSpin, m, k, CScope::All, Equal, s, km1));
                facts.push(BoundFact::new(
                    QTildeSpin,
                    m,
                    k,
                    CScope::Positive,
                    Equal,
                    inf,
                    "k = m-1, c > 0: no L2 solutions on hyperbolic space",
                ));
                facts.push(BoundFact::new(
                    QTilde,
                    m,
                    k,
                    CScope::Positive,
                    Equal,
                    inf,
                    "k = m-1, c > 0: no L2 solutions on hyperbolic space",
                ));
                let at0 = CScope::At(CPoint::ZERO);
                if grid.contains(&CPoint::ZERO) {
                    facts.push(BoundFact::new(
                        QTildeSpin,
                        m,
                        k,
                        at0,
                        Equal,
                        s,
                        "Q~spin(R^m) = Q*(S^m)",
                    ));
                    let q_tilde_rm = if m <= 4 { inf } else { s };
                    facts.push(BoundFact::new(
                        QTilde,
                        m,
                        k,
                        at0,
                        Equal,
                        q_tilde_rm,
                        "Q~(R^m): infinite for m = 3, 4, else Q*(S^m)",
                    ));
                }
                let lam = CScope::None;
                let cor = "k = m-1 values of the Lambda-invariants";
                facts.push(BoundFact::new(LambdaStar, m, k, lam, Equal, s, cor));
                facts.push(BoundFact::new(LambdaSpinStar, m, k, lam, Equal, s, cor));
                facts.push(BoundFact::new(LambdaTildeSpin, m, k, lam, Equal, s, cor));
                facts.push(BoundFact::new(LambdaSpin, m, k, lam, Equal, s, cor));
                facts.push(BoundFact::new(Lambda, m, k, lam, Equal, s, cor));
                let tilde = if m <= 4 { inf } else { s };
                facts.push(BoundFact::new(LambdaTilde, m, k, lam, Equal, tilde, cor));
            }
            if k + 2 == m {
                for &c in grid {
                    let v = s * c.value().powf(2.0 / f64::from(m));
                    facts.push(BoundFact::new(
                        QStar,
                        m,
                        k,
                        CScope::At(c),
                        Equal,
                        v,
                        "k = m-2: Q* = c^(2/m) Q*(S^m)",
                    ));
                }
                facts.push(BoundFact::new(
                    LambdaStar,
                    m,
                    k,
                    CScope::None,
                    Equal,
                    0.0,
                    "k = m-2: Lambda* = 0",
                ));
            }
            if k + 3 == m && m >= codim3::MIN_DIMENSION {
                let model = codim3::Codim3::new(m)?;
                for &c in grid {
                    let v = model.l(c.value() * c.value());
                    facts.push(BoundFact::new(
                        QStar,
                        m,
                        k,
                        CScope::At(c),
                        Lower,
                        v,
                        "codimension-3 lower bound L_m(c^2)",
                    ));
                }
            }
        }
    }
    Ok(facts)
}

/// Registry entries about a single Λ-node, converted to facts.
pub fn registry_facts(registry: &Registry, m_min: u32, m_max: u32) -> Vec<BoundFact> {
    let mut facts = Vec::new();
    for entry in registry.entries() {
        let (Some(family), Some(k)) = (entry.invariant.family(), entry.k) else {
            continue;
        };
        if entry.m < m_min || entry.m > m_max {
            continue;
        }
        let BoundValue::Finite(v) = entry.value else {
            if let BoundValue::Infinite = entry.value {
                facts.push(BoundFact::new(
                    family,
                    entry.m,
                    k,
                    CScope::None,
                    entry.direction,
                    f64::INFINITY,
                    &entry.citation,
                ));
            }
            continue;
        };
        facts.push(BoundFact::new(
            family,
            entry.m,
            k,
            CScope::None,
            entry.direction,
            v,
            &entry.citation,
        ));
    }
    facts
}

/// The standard edge templates and special-value facts for the given m range.
pub fn build_graph(m_min: u32, m_max: u32) -> Result<RelationGraph> {
    let grid = default_grid();
    let mut g = RelationGraph::with_templates(paper_edges(), grid.clone(), m_min, m_max)?;
    for fact in paper_facts(&grid, m_min, m_max)? {
        if let Err(c) = g.assert_fact(fact) {
            return Err(Error::invalid("build_graph", c.to_string()));
        }
    }
    Ok(g)
}

pub fn build_paper_graph() -> Result<RelationGraph> {
    build_graph(DEFAULT_M_MIN, DEFAULT_M_MAX)
}

/// The standard graph seeded with every registry entry that names a single node.
pub fn seeded_graph(registry: &Registry, m_min: u32, m_max: u32) -> Result<RelationGraph> {
    let mut g = build_graph(m_min, m_max)?;
    for fact in registry_facts(registry, m_min, m_max) {
        if let Err(c) = g.assert_fact(fact) {
            return Err(Error::invalid("seeded_graph", c.to_string()));
        }
    }
    Ok(g)
}

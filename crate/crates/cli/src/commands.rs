use yamabe_core::aggregate::{
    builtin_registry, lambda_spin_m, BoundRegistryEntry, BoundValue, InvariantId, Provenance,
    Registry, Q_STAR_HP2, REGISTRY_M_MAX, TABLE1_FIRST_M,
};
use yamabe_core::codim3::{self, Codim3, MinimizationMethod, TABLE3_NOTE_M9};
use yamabe_core::constants::{spin_renormalize, yamabe_sphere, yamabe_sphere_nearest};
use yamabe_core::model_space::{
    codim_condition, q_star_mm2, scalar_curvature, spherical_cap_lambda, spherical_cap_volume,
    CapParams, ModelSpaceParams,
};
use yamabe_core::relations::{seeded_graph, Direction, Injection, RelationGraph};
use yamabe_core::rounding::RoundingRule;
use yamabe_core::Error;

use crate::args::{Command, Format, GraphRange, RegistryCommand, RelationsCommand};
use crate::emit::{Cell, Report};

const SPHERE_SOURCE: &str = "computed: Q*(S^m) = m(m-1) vol(S^m)^(2/m)";
const INF_L_SOURCE: &str =
    "computed: infimum over s in [0,1] of L_m(s), critical point checked against a 1e-5 grid";
const INJECTION_CITATION: &str = "injected on the command line";

#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Internal(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidArgument { .. } | Error::Parse { .. } => Failure::Usage(e.to_string()),
            other => Failure::Internal(other.to_string()),
        }
    }
}

pub enum Output {
    Report(Report),
    Raw(String),
}

pub struct Outcome {
    pub output: Output,
    /// Non-zero status to exit with after the output is written.
    pub status: u8,
    pub diagnostic: Option<String>,
}

impl From<Report> for Outcome {
    fn from(r: Report) -> Self {
        Outcome {
            output: Output::Report(r),
            status: 0,
            diagnostic: None,
        }
    }
}

type Result<T> = std::result::Result<T, Failure>;

pub fn run(command: &Command, format: Format) -> Result<Outcome> {
    match command {
        Command::Table1(r) => table1(r.from, r.to).map(Into::into),
        Command::Table3(r) => table3(r.from, r.to).map(Into::into),
        Command::Bound { m, k, c } => bound(*m, *k, *c).map(Into::into),
        Command::Scan { m, k, samples } => scan(*m, *k, *samples).map(Into::into),
        Command::Cap { m, r } => cap(*m, *r).map(Into::into),
        Command::Relations(RelationsCommand::Check { range, inject }) => {
            relations_check(range, inject)
        }
        Command::Relations(RelationsCommand::Export { range }) => relations_export(range, format),
        Command::Registry(RegistryCommand::Dump) => registry_dump(format),
    }
}

fn sphere_cell(m: u32) -> Result<Cell> {
    Ok(Cell::guarded(
        yamabe_sphere(m)?,
        RoundingRule::Nearest,
        yamabe_sphere_nearest(m)?,
        SPHERE_SOURCE,
    ))
}

fn source(e: &BoundRegistryEntry) -> String {
    format!("{}: {}", e.provenance, e.citation)
}

fn entry_cell(e: &BoundRegistryEntry) -> Cell {
    match e.value {
        BoundValue::Finite(x) if e.provenance == Provenance::Computed => {
            let rule = if e.direction == Direction::Lower {
                RoundingRule::Floor
            } else {
                RoundingRule::Nearest
            };
            Cell::rounded(x, rule, source(e))
        }
        BoundValue::Finite(x) => Cell::Literal {
            tenths: RoundingRule::Nearest.apply(x),
            provenance: source(e),
        },
        BoundValue::Infinite => Cell::raw(f64::INFINITY, source(e)),
        BoundValue::Unknown => Cell::Unknown,
    }
}

fn table1(from: u32, to: u32) -> Result<Report> {
    if !(TABLE1_FIRST_M <= from && from <= to && to <= REGISTRY_M_MAX) {
        return Err(Failure::Usage(format!(
            "table1 needs {TABLE1_FIRST_M} <= --from <= --to <= {REGISTRY_M_MAX}, got {from}..{to}"
        )));
    }
    let registry = builtin_registry()?;
    let mut report = Report::new(
        "table1",
        &["m", "q_star_sphere", "lambda_spin_m", "q_star_hp2xr"],
    );
    for m in from..=to {
        let spin = lambda_spin_m(m, &registry)?;
        let spin_cell = match spin.value {
            None => Cell::Unknown,
            Some(v) => {
                let term = spin
                    .terms
                    .iter()
                    .find(|t| t.bound == Some(v))
                    .expect("minimum is attained by a term");
                let entry = term
                    .source
                    .and_then(|inv| registry.best_lower(inv, m, Some(term.k)));
                match entry {
                    Some(e) if e.provenance == Provenance::Computed => {
                        let raw = e.value.as_f64().expect("computed entries are finite");
                        Cell::guarded(raw, RoundingRule::Floor, v, source(e))
                    }
                    Some(e) => Cell::Literal {
                        tenths: v,
                        provenance: source(e),
                    },
                    None => Cell::Literal {
                        tenths: v,
                        provenance: "paper-literal".into(),
                    },
                }
            }
        };
        let hp2 = registry
            .lookup(InvariantId::QStarHp2xR, m, None)
            .into_iter()
            .find(|e| e.direction == Direction::Lower)
            .map_or(Cell::Empty, entry_cell);
        report.push(vec![Cell::Int(m.into()), sphere_cell(m)?, spin_cell, hp2]);

        let computed = yamabe_sphere_nearest(m)?;
        for e in registry.lookup(InvariantId::QStarSphere, m, None) {
            if e.provenance != Provenance::Computed
                && e.value.as_f64().map(|x| RoundingRule::Nearest.apply(x)) != Some(computed)
            {
                report.note(format!(
                    "registry literal Q*(S^{m}) = {} disagrees with the computed value {:.4}, emitted as {computed}",
                    e.value,
                    yamabe_sphere(m)?
                ));
            }
        }
    }
    if (from..=to).contains(&8) {
        report.note(format!("Q*(HP^2) = {Q_STAR_HP2}"));
    }
    Ok(report)
}

fn method_name(method: MinimizationMethod) -> String {
    serde_json::to_value(method)
        .ok()
        .and_then(|v| v.as_str().map(str::to_owned))
        .unwrap_or_default()
}

fn table3(from: u32, to: u32) -> Result<Report> {
    let rows = codim3::table3(from, to)?;
    let mut report = Report::new(
        "table3",
        &["m", "q_star_sphere", "inf_l", "s_root", "c_star", "method"],
    );
    for row in rows {
        let r = codim3::report(row.m)?;
        report.push(vec![
            Cell::Int(row.m.into()),
            Cell::guarded(
                row.q_star,
                RoundingRule::Nearest,
                row.q_star_nearest,
                SPHERE_SOURCE,
            ),
            Cell::guarded(row.l_inf, RoundingRule::Floor, row.l_floor, INF_L_SOURCE),
            Cell::Number(r.s_root),
            Cell::Number(r.c_star),
            Cell::text(method_name(row.method)),
        ]);
        report.notes.extend(r.diagnostics);
    }
    if (from..=to).contains(&9) {
        report.note(TABLE3_NOTE_M9);
    }
    Ok(report)
}

const BOUND_COLUMNS: [&str; 3] = ["quantity", "direction", "value"];

fn row(quantity: impl Into<String>, direction: &str, value: Cell) -> Vec<Cell> {
    vec![Cell::text(quantity), Cell::text(direction), value]
}

fn bound(m: u32, k: u32, c: Option<f64>) -> Result<Report> {
    let params = ModelSpaceParams::new(m, k, c.unwrap_or(0.0))?;
    let registry = builtin_registry()?;
    let mut report = Report::new("bound", &BOUND_COLUMNS);
    report.push(row(format!("Q*(S^{m})"), "equal", sphere_cell(m)?));
    for e in registry
        .entries()
        .iter()
        .filter(|e| e.m == m && e.k == Some(k))
    {
        report.push(row(
            e.invariant.symbol(m, e.k),
            &e.direction.to_string(),
            entry_cell(e),
        ));
    }
    let codim3 = k + 3 == m && m >= codim3::MIN_DIMENSION;
    if codim3 {
        let r = codim3::report(m)?;
        report.push(row("root of f in (0,1)", "equal", Cell::Number(r.s_root)));
        report.push(row("minimizing c", "equal", Cell::Number(r.c_star)));
        report.push(row(
            "minimization method",
            "-",
            Cell::text(method_name(r.method)),
        ));
        let closed = "computed: closed-form lower bound for the infimum of L_m";
        report.push(row(
            "closed-form bound",
            "lower",
            Cell::rounded(r.closed_form, RoundingRule::Floor, closed),
        ));
        report.notes.extend(r.diagnostics);
    }
    let Some(c) = c else {
        return Ok(report);
    };
    let space = format!("M_{c}^{{{m},{k}}}");
    let curvature = "computed: -c^2 k(k+1) + (m-k-1)(m-k-2)";
    report.push(row(
        format!("scal({space})"),
        "equal",
        Cell::raw(scalar_curvature(&params), curvature),
    ));
    report.push(row(
        "(m-2)(m-k-1) > ck",
        "-",
        Cell::Bool(codim_condition(&params)),
    ));
    if codim3 {
        let model = Codim3::new(m)?;
        let value = model.l(c * c);
        let bound = "computed: L_m(c^2), lower bound for Q* of the codimension-3 model space";
        report.push(row(
            format!("Q*({space})"),
            "lower",
            Cell::rounded(value, RoundingRule::Floor, bound),
        ));
    } else if k + 2 == m {
        let source = "computed: Q*(M_c^{m,m-2}) = c^(2/m) Q*(S^m)";
        report.push(row(
            format!("Q*({space})"),
            "equal",
            Cell::rounded(q_star_mm2(m, c)?, RoundingRule::Nearest, source),
        ));
    } else if c == 1.0 {
        let source = "computed: M_1^{m,k} is conformal to S^m minus a great S^k, so Q* = Q*(S^m)";
        report.push(row(
            format!("Q*({space})"),
            "equal",
            Cell::rounded(yamabe_sphere(m)?, RoundingRule::Nearest, source),
        ));
    }
    Ok(report)
}

type BoundFn = Box<dyn Fn(f64) -> yamabe_core::Result<f64>>;

fn scan(m: u32, k: u32, samples: u32) -> Result<Report> {
    if samples < 2 {
        return Err(Failure::Usage(format!(
            "--samples must be at least 2, got {samples}"
        )));
    }
    ModelSpaceParams::new(m, k, 0.0)?;
    let (source, bound): (&str, BoundFn) = if k + 3 == m && m >= codim3::MIN_DIMENSION {
        let model = Codim3::new(m)?;
        (
            "computed: L_m(c^2), lower bound for Q*(M_c^{m,m-3})",
            Box::new(move |c| Ok(model.l(c * c))),
        )
    } else if k + 2 == m && m >= 3 {
        (
            "computed: Q*(M_c^{m,m-2}) = c^(2/m) Q*(S^m)",
            Box::new(move |c| q_star_mm2(m, c)),
        )
    } else {
        return Err(Failure::Usage(format!(
            "scan needs k = m-2 (m >= 3) or k = m-3 (m >= 6), got m = {m}, k = {k}"
        )));
    };
    let mut report = Report::new("scan", &["c", "bound", "codim_condition"]);
    for i in 0..samples {
        let c = f64::from(i) / f64::from(samples - 1);
        let params = ModelSpaceParams::new(m, k, c)?;
        report.push(vec![
            Cell::Number(c),
            Cell::raw(bound(c)?, source),
            Cell::Bool(codim_condition(&params)),
        ]);
    }
    Ok(report)
}

fn cap(m: u32, r: f64) -> Result<Report> {
    let params = CapParams::new(m, r)?;
    let lambda = spherical_cap_lambda(&params)?;
    let mut report = Report::new("cap", &BOUND_COLUMNS);
    let volume = "computed: vol(S^(m-1)) * integral of sin^(m-1) over [0, r], adaptive Simpson";
    report.push(row(
        "vol(B_r)",
        "equal",
        Cell::raw(spherical_cap_volume(&params)?, volume),
    ));
    report.push(row(
        "lambda_r",
        "equal",
        Cell::raw(lambda, "computed: (m/2) vol(B_r)^(1/m)"),
    ));
    let renorm = "computed: 4(m-1)/m lambda_r^2";
    report.push(row(
        "4(m-1)/m lambda_r^2",
        "equal",
        Cell::rounded(spin_renormalize(m, lambda)?, RoundingRule::Nearest, renorm),
    ));
    report.push(row(format!("Q*(S^{m})"), "equal", sphere_cell(m)?));
    Ok(report)
}

fn graph(range: &GraphRange, registry: &Registry) -> Result<RelationGraph> {
    Ok(seeded_graph(registry, range.m_min, range.m_max)?)
}

fn relations_check(range: &GraphRange, inject: &[String]) -> Result<Outcome> {
    let registry = builtin_registry()?;
    let mut g = graph(range, &registry)?;
    for text in inject {
        let injection = Injection::parse(text, INJECTION_CITATION)?;
        // A contradiction raised here is reported again by the consistency check.
        let _ = g.inject(injection)?;
    }
    let consistency = g.check_consistency();
    let mut report = Report::new("relations check", &["quantity", "value"]);
    let count = |n: usize| Cell::Int(n as i64);
    report.push(vec![
        Cell::text("consistent"),
        Cell::Bool(consistency.consistent),
    ]);
    report.push(vec![Cell::text("nodes"), count(consistency.nodes.len())]);
    report.push(vec![
        Cell::text("propagation passes"),
        count(consistency.passes),
    ]);
    report.push(vec![
        Cell::text("conditionally inapplicable edge instances"),
        count(consistency.conditionally_inapplicable),
    ]);
    report.push(vec![Cell::text("injected facts"), count(inject.len())]);
    let mut outcome = Outcome::from(Report::default());
    if let Some(c) = &consistency.contradiction {
        report.push(vec![
            Cell::text("contradiction at"),
            Cell::text(c.node.to_string()),
        ]);
        let (open, close) = (
            if c.lo_strict { "(" } else { "[" },
            if c.hi_strict { ")" } else { "]" },
        );
        report.push(vec![
            Cell::text("empty interval"),
            Cell::text(format!("{open}{:?}, {:?}{close}", c.lo, c.hi)),
        ]);
        report.notes.extend(c.trace.iter().cloned());
        outcome.status = if inject.is_empty() { 2 } else { 3 };
        outcome.diagnostic = Some(format!("contradiction: {c}"));
    }
    outcome.output = Output::Report(report);
    Ok(outcome)
}

fn relations_export(range: &GraphRange, format: Format) -> Result<Outcome> {
    let registry = builtin_registry()?;
    let mut g = graph(range, &registry)?;
    g.propagate()
        .map_err(|c| Failure::Internal(format!("contradiction: {c}")))?;
    let text = match format {
        Format::Json => g.to_json(),
        Format::Text | Format::Csv => g.edge_list(),
    };
    Ok(Outcome {
        output: Output::Raw(text),
        status: 0,
        diagnostic: None,
    })
}

fn registry_dump(format: Format) -> Result<Outcome> {
    let registry = builtin_registry()?;
    let text = match format {
        Format::Text => registry.to_lines(),
        Format::Json => registry.to_json(),
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            let header = [
                "invariant",
                "m",
                "k",
                "direction",
                "value",
                "provenance",
                "citation",
            ];
            w.write_record(header).expect("in-memory write");
            for e in registry.entries() {
                let k = e.k.map_or_else(|| "-".to_string(), |k| k.to_string());
                w.write_record([
                    e.invariant.to_string(),
                    e.m.to_string(),
                    k,
                    e.direction.to_string(),
                    e.value.to_string(),
                    e.provenance.to_string(),
                    e.citation.clone(),
                ])
                .expect("in-memory write");
            }
            String::from_utf8(w.into_inner().expect("in-memory flush")).expect("UTF-8 input")
        }
    };
    Ok(Outcome {
        output: Output::Raw(text),
        status: 0,
        diagnostic: None,
    })
}

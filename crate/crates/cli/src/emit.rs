//! Tabular reports and their text, CSV and JSON renderings.

use serde_json::{json, Map, Value};
use yamabe_core::rounding::{RoundingRule, Tenths};

use crate::args::{Format, Rounding};

#[derive(Debug, Clone)]
pub enum Cell {
    Int(i64),
    /// A plain parameter value, shown exactly and never rounded.
    Number(f64),
    Text(String),
    Bool(bool),
    Empty,
    Unknown,
    /// A literal that is already a multiple of 0.1; never re-rounded.
    Literal {
        tenths: Tenths,
        provenance: String,
    },
    /// A computed value. `rule` is the rounding used in table emissions, and
    /// `guarded` the boundary-checked result of that rule when available.
    Real {
        raw: f64,
        rule: Option<RoundingRule>,
        guarded: Option<Tenths>,
        provenance: String,
    },
}

impl Cell {
    pub fn raw(raw: f64, provenance: impl Into<String>) -> Self {
        Cell::Real {
            raw,
            rule: None,
            guarded: None,
            provenance: provenance.into(),
        }
    }

    pub fn rounded(raw: f64, rule: RoundingRule, provenance: impl Into<String>) -> Self {
        Cell::Real {
            raw,
            rule: Some(rule),
            guarded: None,
            provenance: provenance.into(),
        }
    }

    pub fn guarded(
        raw: f64,
        rule: RoundingRule,
        tenths: Tenths,
        provenance: impl Into<String>,
    ) -> Self {
        Cell::Real {
            raw,
            rule: Some(rule),
            guarded: Some(tenths),
            provenance: provenance.into(),
        }
    }

    pub fn text(s: impl Into<String>) -> Self {
        Cell::Text(s.into())
    }

    fn provenance(&self) -> Option<&str> {
        match self {
            Cell::Literal { provenance, .. } | Cell::Real { provenance, .. } => Some(provenance),
            _ => None,
        }
    }

    /// The rounded value under `mode`, or `None` when the raw value is shown.
    fn tenths(&self, mode: Rounding) -> Option<Tenths> {
        match self {
            Cell::Literal { tenths, .. } => Some(*tenths),
            Cell::Real {
                raw,
                rule: Some(rule),
                guarded,
                ..
            } if raw.is_finite() => match mode {
                Rounding::Paper => Some(guarded.unwrap_or_else(|| rule.apply(*raw))),
                Rounding::Nearest => Some(RoundingRule::Nearest.apply(*raw)),
                Rounding::Floor => Some(RoundingRule::Floor.apply(*raw)),
                Rounding::None => None,
            },
            _ => None,
        }
    }

    fn render(&self, mode: Rounding) -> String {
        if let Some(t) = self.tenths(mode) {
            return t.to_string();
        }
        match self {
            Cell::Int(i) => i.to_string(),
            Cell::Number(x) => real_text(*x),
            Cell::Text(s) => s.clone(),
            Cell::Bool(b) => b.to_string(),
            Cell::Empty => String::new(),
            Cell::Unknown => "unknown".into(),
            Cell::Real { raw, .. } => real_text(*raw),
            Cell::Literal { .. } => unreachable!("literals always carry tenths"),
        }
    }

    fn to_json(&self, mode: Rounding) -> Value {
        let number = |x: f64| {
            if x.is_finite() {
                json!(x)
            } else {
                json!(real_text(x))
            }
        };
        match self {
            Cell::Int(i) => json!(i),
            Cell::Number(x) => number(*x),
            Cell::Text(s) => json!(s),
            Cell::Bool(b) => json!(b),
            Cell::Empty => Value::Null,
            Cell::Unknown => json!("unknown"),
            Cell::Literal { tenths, provenance } => json!({
                "value": tenths.as_f64(),
                "rounding": "literal",
                "provenance": provenance,
            }),
            Cell::Real {
                raw,
                rule,
                provenance,
                ..
            } => {
                let (value, rounding) = match self.tenths(mode) {
                    Some(t) => (json!(t.as_f64()), rule_name(mode, *rule)),
                    None => (number(*raw), "none"),
                };
                json!({ "value": value, "rounding": rounding, "provenance": provenance })
            }
        }
    }
}

fn rule_name(mode: Rounding, rule: Option<RoundingRule>) -> &'static str {
    match (mode, rule) {
        (Rounding::Nearest, _) | (Rounding::Paper, Some(RoundingRule::Nearest)) => "nearest",
        (Rounding::Floor, _) | (Rounding::Paper, Some(RoundingRule::Floor)) => "floor",
        _ => "none",
    }
}

/// Shortest round-trip decimal; infinities as `inf` / `-inf`.
fn real_text(x: f64) -> String {
    if x.is_infinite() {
        if x > 0.0 {
            "inf".into()
        } else {
            "-inf".into()
        }
    } else {
        format!("{x:?}")
    }
}

#[derive(Debug, Clone, Default)]
pub struct Report {
    pub command: String,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
    pub notes: Vec<String>,
}

impl Report {
    pub fn new(command: impl Into<String>, columns: &[&'static str]) -> Self {
        Report {
            command: command.into(),
            columns: columns.to_vec(),
            ..Default::default()
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn note(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
    }

    /// Notes followed by each distinct provenance, in order of appearance.
    fn comments(&self) -> Vec<String> {
        let mut out = self.notes.clone();
        let mut seen = Vec::new();
        for p in self.rows.iter().flatten().filter_map(Cell::provenance) {
            if !seen.contains(&p) {
                seen.push(p);
            }
        }
        out.extend(seen.into_iter().map(|p| format!("source: {p}")));
        out
    }

    pub fn render(&self, format: Format, mode: Rounding) -> String {
        match format {
            Format::Text => self.render_text(mode),
            Format::Csv => self.render_csv(mode),
            Format::Json => self.render_json(mode),
        }
    }

    fn render_text(&self, mode: Rounding) -> String {
        let cells: Vec<Vec<String>> = self
            .rows
            .iter()
            .map(|r| r.iter().map(|c| c.render(mode)).collect())
            .collect();
        let mut widths: Vec<usize> = self.columns.iter().map(|c| c.chars().count()).collect();
        for row in &cells {
            for (w, c) in widths.iter_mut().zip(row) {
                *w = (*w).max(c.chars().count());
            }
        }
        let line = |items: Vec<&str>| {
            let padded: Vec<String> = items
                .iter()
                .zip(&widths)
                .map(|(s, w)| format!("{s}{}", " ".repeat(w - s.chars().count())))
                .collect();
            padded.join("  ").trim_end().to_string() + "\n"
        };
        let mut out = line(self.columns.clone());
        for row in &cells {
            out += &line(row.iter().map(String::as_str).collect());
        }
        for note in &self.notes {
            out += &format!("note: {note}\n");
        }
        out
    }

    fn render_csv(&self, mode: Rounding) -> String {
        let mut out = String::new();
        for c in self.comments() {
            out += &format!("# {c}\n");
        }
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.columns).expect("in-memory write");
        for row in &self.rows {
            w.write_record(row.iter().map(|c| c.render(mode)))
                .expect("in-memory write");
        }
        let bytes = w.into_inner().expect("in-memory flush");
        out + &String::from_utf8(bytes).expect("UTF-8 input")
    }

    fn render_json(&self, mode: Rounding) -> String {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|row| {
                let obj: Map<String, Value> = self
                    .columns
                    .iter()
                    .zip(row)
                    .map(|(k, c)| (k.to_string(), c.to_json(mode)))
                    .collect();
                Value::Object(obj)
            })
            .collect();
        let doc = json!({ "command": self.command, "notes": self.notes, "rows": rows });
        serde_json::to_string_pretty(&doc).expect("JSON values are finite or strings") + "\n"
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn raw_values_round_to_the_emitted_digits() {
        let cell = Cell::rounded(78.75029234628843, RoundingRule::Floor, "x");
        assert_eq!(cell.render(Rounding::Paper), "78.7");
        assert_eq!(cell.render(Rounding::Nearest), "78.8");
        assert_eq!(cell.render(Rounding::None), "78.75029234628843");
    }

    #[test]
    fn csv_quotes_and_comments() {
        let mut r = Report::new("t", &["a", "b"]);
        r.push(vec![Cell::text("x, y"), Cell::raw(f64::INFINITY, "limit")]);
        r.note("n");
        let csv = r.render(Format::Csv, Rounding::Paper);
        assert_eq!(csv, "# n\n# source: limit\na,b\n\"x, y\",inf\n");
    }
}

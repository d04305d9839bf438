//! JSON and line-oriented exports of a relation graph.
//!
//! Edge list lines have the form `from|kind|to|precondition|citation`.

use serde::{Deserialize, Serialize};

use super::{BoundFact, CPoint, NodeKey, NodeRelation, RelationEdge, RelationGraph};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum OriginExport {
    Default,
    Fact {
        citation: String,
    },
    Edge {
        citation: String,
        from: NodeKey,
        to: NodeKey,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NodeExport {
    pub key: NodeKey,
    #[serde(with = "crate::serde_ext::extended_f64")]
    pub lo: f64,
    pub lo_strict: bool,
    #[serde(with = "crate::serde_ext::extended_f64")]
    pub hi: f64,
    pub hi_strict: bool,
    pub lo_origin: OriginExport,
    pub hi_origin: OriginExport,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GraphExport {
    pub grid: Vec<CPoint>,
    pub m_min: u32,
    pub m_max: u32,
    pub propagated: bool,
    pub edges: Vec<RelationEdge>,
    pub facts: Vec<BoundFact>,
    pub relations: Vec<NodeRelation>,
    pub nodes: Vec<NodeExport>,
}

fn parse_err(line: usize, reason: impl Into<String>) -> Error {
    Error::Parse {
        line,
        reason: reason.into(),
    }
}

impl RelationGraph {
    pub fn to_export(&self) -> GraphExport {
        let nodes = self
            .nodes
            .iter()
            .map(|(key, iv)| NodeExport {
                key: *key,
                lo: iv.lo,
                lo_strict: iv.lo_strict,
                hi: iv.hi,
                hi_strict: iv.hi_strict,
                lo_origin: self.origin_text(iv.lo_origin),
                hi_origin: self.origin_text(iv.hi_origin),
            })
            .collect();
        GraphExport {
            grid: self.grid.clone(),
            m_min: self.m_min,
            m_max: self.m_max,
            propagated: self.propagated,
            edges: self.templates.clone(),
            facts: self.facts.clone(),
            relations: self.relations.clone(),
            nodes,
        }
    }

    /// Rebuilds a graph by replaying templates, facts and relations, then
    /// checks that the replay reproduces every exported interval.
    pub fn from_export(export: &GraphExport) -> Result<RelationGraph> {
        let mut g = RelationGraph::with_templates(
            export.edges.clone(),
            export.grid.clone(),
            export.m_min,
            export.m_max,
        )?;
        for fact in &export.facts {
            g.fact_keys(fact)?;
            // A recorded contradiction is part of the state being replayed.
            let _ = g.assert_fact(fact.clone());
        }
        for relation in &export.relations {
            g.add_relation(relation.clone())?;
        }
        if export.propagated {
            g.propagate()
                .map_err(|c| Error::invalid("from_export", format!("replay failed: {c}")))?;
        }
        let replayed = g.to_export();
        if replayed.nodes.len() != export.nodes.len() {
            return Err(Error::invalid(
                "from_export",
                format!(
                    "{} nodes exported, {} rebuilt",
                    export.nodes.len(),
                    replayed.nodes.len()
                ),
            ));
        }
        for (a, b) in export.nodes.iter().zip(&replayed.nodes) {
            if a != b {
                return Err(Error::invalid(
                    "from_export",
                    format!("node {} does not match its replay", a.key),
                ));
            }
        }
        Ok(g)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_export()).expect("graph export is serializable")
    }

    pub fn from_json(text: &str) -> Result<RelationGraph> {
        let export: GraphExport =
            serde_json::from_str(text).map_err(|e| parse_err(e.line(), e.to_string()))?;
        RelationGraph::from_export(&export)
    }

    pub fn edge_list(&self) -> String {
        edges_to_lines(&self.templates)
    }
}

pub fn edges_to_lines(edges: &[RelationEdge]) -> String {
    let mut out = String::new();
    for e in edges {
        out.push_str(&format!(
            "{}|{}|{}|{}|{}\n",
            e.from,
            e.kind.as_str(),
            e.to,
            e.precondition,
            e.citation
        ));
    }
    out
}

/// Parses an edge list; blank lines and lines starting with '#' are skipped.
pub fn edges_from_lines(text: &str) -> Result<Vec<RelationEdge>> {
    let mut edges = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let n = i + 1;
        if line.trim().is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.splitn(5, '|').collect();
        let [from, kind, to, pre, citation] = fields.as_slice() else {
            return Err(parse_err(
                n,
                format!("expected 5 '|'-separated fields, got {}", fields.len()),
            ));
        };
        let with_line = |e: Error| match e {
            Error::Parse { reason, .. } => parse_err(n, reason),
            other => parse_err(n, other.to_string()),
        };
        edges.push(RelationEdge {
            from: from.parse().map_err(with_line)?,
            kind: kind.parse().map_err(with_line)?,
            to: to.parse().map_err(with_line)?,
            precondition: pre.parse().map_err(with_line)?,
            citation: citation.to_string(),
        });
    }
    Ok(edges)
}

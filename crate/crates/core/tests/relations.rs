use yamabe_core::aggregate::builtin_registry;
use yamabe_core::constants::yamabe_sphere;
use yamabe_core::relations::{
    build_graph, build_paper_graph, edges_from_lines, edges_to_lines, paper_edges, seeded_graph,
    BoundFact, CPoint, CPosition, CScope, Direction, EdgeKind, Family, Injection, NodeKey,
    Precondition, RelationGraph, Truth,
};

fn full_graph() -> RelationGraph {
    seeded_graph(&builtin_registry().unwrap(), 2, 15).unwrap()
}

#[test]
fn paper_graph_contains_the_basic_edges() {
    let g = build_paper_graph().unwrap();
    let has = |from, kind, to, pre: &str| {
        g.templates().iter().any(|e| {
            e.from == from && e.kind == kind && e.to == to && e.precondition.to_string() == pre
        })
    };
    assert!(has(Family::QStar, EdgeKind::Leq, Family::QTilde, "always"));
    assert!(has(
        Family::QTildeSpin,
        EdgeKind::Geq,
        Family::QStar,
        "k<=m-2"
    ));
    let c1 = CPoint::ONE;
    for m in 3..=15 {
        let iv = g
            .interval(&NodeKey::q(Family::QTilde, m, m - 2, c1))
            .unwrap();
        assert_eq!((iv.lo, iv.hi), (f64::INFINITY, f64::INFINITY), "m = {m}");
    }
}

#[test]
fn seeded_graph_is_consistent() {
    let mut g = full_graph();
    let report = g.check_consistency();
    assert!(report.consistent, "{}", report.contradiction.unwrap());
    assert!(report.conditionally_inapplicable > 0);
    for (key, iv) in &report.nodes {
        assert!(iv.lo <= iv.hi, "{key}: {iv}");
    }
}

#[test]
fn codim3_bound_reaches_the_spin_invariant() {
    let mut g = full_graph();
    g.propagate().unwrap();
    let iv = g
        .interval(&NodeKey::lambda(Family::LambdaTildeSpin, 7, 4))
        .unwrap();
    assert!(iv.lo > 65.2 && iv.lo < 65.3, "{iv}");
    let iv = g
        .interval(&NodeKey::lambda(Family::LambdaSpin, 7, 4))
        .unwrap();
    assert!(iv.lo > 65.2, "{iv}");
}

#[test]
fn two_edge_hand_propagation() {
    // Λ*_{7,4} ≥ 65.2 alone, on bare edges: Λ̃^spin ≥ Λ* (lifted Hijazi edge).
    let mut g = RelationGraph::with_templates(paper_edges(), vec![CPoint::ZERO, CPoint::ONE], 7, 7)
        .unwrap();
    g.assert_fact(BoundFact::new(
        Family::LambdaStar,
        7,
        4,
        CScope::None,
        Direction::Lower,
        65.2,
        "seed",
    ))
    .unwrap();
    g.propagate().unwrap();
    let lo = |f| g.interval(&NodeKey::lambda(f, 7, 4)).unwrap().lo;
    assert_eq!(lo(Family::LambdaTildeSpin), 65.2);
    assert_eq!(lo(Family::LambdaSpin), 65.2);
    // The Q-level nodes are bounded below through Λ ≤ Q(c).
    assert_eq!(
        g.interval(&NodeKey::q(Family::QStar, 7, 4, CPoint::ZERO))
            .unwrap()
            .lo,
        65.2
    );
}

#[test]
fn injected_upper_bound_contradicts_codim3_bound() {
    let mut g = full_graph();
    let inj = Injection::parse("LambdaSpin(7,4) < 65.2", "injected").unwrap();
    let first = g.inject(inj).unwrap();
    let report = g.check_consistency();
    assert!(first.is_err() || !report.consistent);
    let c = report.contradiction.expect("contradiction");
    let text = c.to_string();
    assert!(text.contains("injected"), "{text}");
    assert!(text.contains("codimension-3"), "{text}");
}

#[test]
fn injected_hijazi_violation_is_flagged() {
    for (m, k, c) in [(7, 4, "0.5"), (5, 0, "0"), (10, 8, "1")] {
        let mut g = full_graph();
        let text = format!("QTildeSpin({m},{k},{c}) < QStar({m},{k},{c})");
        g.inject(Injection::parse(&text, "injected").unwrap())
            .unwrap()
            .unwrap();
        let report = g.check_consistency();
        assert!(!report.consistent, "{text}");
    }
}

#[test]
fn hijazi_injection_outside_precondition_is_not_flagged_by_the_edge() {
    // Edges only, no facts: at k = m − 1 there is no Q̃spin ≥ Q* edge to close a cycle.
    let mut g =
        RelationGraph::with_templates(paper_edges(), yamabe_core::relations::default_grid(), 7, 7)
            .unwrap();
    let text = "QTildeSpin(7,6,0.5) < QStar(7,6,0.5)";
    g.inject(Injection::parse(text, "injected").unwrap())
        .unwrap()
        .unwrap();
    assert!(g.check_consistency().consistent);
}

#[test]
fn k_equals_m_minus_one_in_dimension_three() {
    let mut g = build_graph(3, 3).unwrap();
    let report = g.check_consistency();
    assert!(report.consistent);
    let tilde = report
        .interval(&NodeKey::lambda(Family::LambdaTilde, 3, 2))
        .unwrap();
    assert_eq!((tilde.lo, tilde.hi), (f64::INFINITY, f64::INFINITY));
    let lambda = report
        .interval(&NodeKey::lambda(Family::Lambda, 3, 2))
        .unwrap();
    let s3 = yamabe_sphere(3).unwrap();
    assert_eq!((lambda.lo, lambda.hi), (s3, s3));
}

#[test]
fn sphere_value_facts_at_c_one() {
    let mut g = full_graph();
    g.propagate().unwrap();
    for m in 3..=15 {
        let s = yamabe_sphere(m).unwrap();
        for k in 0..m {
            let iv = g
                .interval(&NodeKey::q(Family::QStar, m, k, CPoint::ONE))
                .unwrap();
            assert!(
                iv.contains(s) && (iv.hi - iv.lo).abs() <= 1e-12 * s,
                "m = {m}, k = {k}: {iv}"
            );
        }
    }
}

#[test]
fn propagation_is_idempotent_and_monotone() {
    let mut g = full_graph();
    let before: Vec<_> = g.nodes().map(|(k, v)| (*k, *v)).collect();
    g.propagate().unwrap();
    let once: Vec<_> = g.nodes().map(|(k, v)| (*k, *v)).collect();
    for ((k, a), (_, b)) in before.iter().zip(&once) {
        assert!(b.lo >= a.lo && b.hi <= a.hi, "{k} widened: {a} -> {b}");
    }
    assert_eq!(g.propagate().unwrap(), 1);
    let twice: Vec<_> = g.nodes().map(|(k, v)| (*k, *v)).collect();
    assert_eq!(once, twice);
}

/// Hand-transcribed applicability of each edge template, independent of the
/// precondition evaluator. `None` marks the value-dependent footnote edges.
fn expected(
    from: Family,
    to: Family,
    lifted: bool,
    always_lambda: bool,
    m: u32,
    k: u32,
    c: Option<f64>,
) -> Option<bool> {
    use Family::*;
    let (mi, ki) = (m as i64, k as i64);
    let a_spin = ((mi - ki - 1) * (mi - ki - 1)) as f64;
    let a_scal = ((mi - ki - 1) * (mi - ki - 2)) as f64;
    let b = (ki * (ki + 1)) as f64;
    let le_m2 = k + 2 <= m;
    match (from, to, lifted, c) {
        (QStar, QTilde, false, Some(_)) => Some(true),
        (QStarSpin, QTildeSpin, false, Some(_)) => Some(le_m2),
        (QTildeSpin, QStar, false, Some(_)) => Some(le_m2),
        (QTildeSpin, QStarSpin, false, Some(c)) => (a_spin <= c * c * b).then_some(false),
        (QTilde, QStar, false, Some(c)) => {
            Some((c < 1.0 && a_scal > c * c * b) || (c == 1.0 && k + 3 <= m))
        }
        (LambdaStar, LambdaTilde, true, None) => Some(true),
        (LambdaSpinStar, LambdaTildeSpin, true, None) => Some(le_m2),
        (LambdaTildeSpin, LambdaStar, true, None) => Some(le_m2),
        // Needs the gap for every c <= 1 and a value condition.
        (LambdaTildeSpin, LambdaSpinStar, true, None) => (a_spin <= b).then_some(false),
        (LambdaTilde, LambdaStar, true, None) => Some(a_scal > 0.0 && a_scal >= b && k + 3 <= m),
        (LambdaTildeSpin, LambdaSpinStar, false, None) => Some(le_m2),
        (LambdaTilde, LambdaStar, false, None) => Some(k + 4 <= m || (k + 3 == m && k <= 3)),
        (LambdaSpin, LambdaTildeSpin, false, None) => Some(le_m2),
        (Lambda, LambdaTilde, false, None) if always_lambda => Some(true),
        (Lambda, LambdaTilde, false, None) => Some(k + 4 <= m || (k + 3 == m && k <= 6)),
        other => panic!("no truth-table row for {other:?}"),
    }
}

#[test]
fn edge_preconditions_match_truth_table() {
    let grid = [0.0, 0.25, 0.5, 0.75, 1.0];
    for edge in paper_edges() {
        let q = edge.from.is_q_level() && edge.to.is_q_level();
        let lam = !edge.from.is_q_level() && !edge.to.is_q_level();
        if !(q || lam) {
            assert_eq!(edge.precondition, Precondition::Always);
            continue;
        }
        let lifted = edge.citation.starts_with("infimum over c of");
        let always_lambda = edge.kind == EdgeKind::Leq;
        for m in 3..=15 {
            for k in 0..m {
                let points: Vec<Option<f64>> = if q {
                    grid.iter().map(|&c| Some(c)).collect()
                } else {
                    vec![None]
                };
                for c in points {
                    let pos = c.map_or(CPosition::Absent, CPosition::At);
                    let got = edge.precondition.eval(m, k, pos, &|_| false);
                    let want = expected(edge.from, edge.to, lifted, always_lambda, m, k, c);
                    let label = format!(
                        "{} {} {} at m={m} k={k} c={c:?}",
                        edge.from,
                        edge.kind.as_str(),
                        edge.to
                    );
                    match want {
                        Some(true) => assert_eq!(got, Truth::True, "{label}"),
                        Some(false) => assert_eq!(got, Truth::False, "{label}"),
                        None => assert_eq!(got, Truth::Unknown, "{label}"),
                    }
                }
            }
        }
    }
}

#[test]
fn edge_list_round_trip() {
    let g = build_paper_graph().unwrap();
    let text = g.edge_list();
    let edges = edges_from_lines(&text).unwrap();
    assert_eq!(edges, g.templates());
    assert_eq!(edges_to_lines(&edges), text);
    assert!(edges_from_lines("QStar|leq|QTilde|always").is_err());
    assert!(edges_from_lines("QStar|less|QTilde|always|x").is_err());
}

#[test]
fn json_round_trip_is_byte_identical() {
    let mut g = build_graph(5, 8).unwrap();
    g.propagate().unwrap();
    let json = g.to_json();
    let back = RelationGraph::from_json(&json).unwrap();
    assert_eq!(back.to_json(), json);
}

#[test]
fn tampered_json_is_rejected() {
    let g = build_graph(3, 4).unwrap();
    let json = g.to_json();
    let tampered = json.replacen("\"hi_strict\": false", "\"hi_strict\": true", 1);
    assert!(RelationGraph::from_json(&tampered).is_err());
}

#[test]
fn dimension_two_spin_facts() {
    let mut g = build_graph(2, 2).unwrap();
    assert!(g.check_consistency().consistent);
    let eight_pi = 8.0 * std::f64::consts::PI;
    let iv = g
        .interval(&NodeKey::lambda(Family::LambdaTildeSpin, 2, 1))
        .unwrap();
    assert_eq!(iv.lo, eight_pi);
    assert!((iv.hi - 3f64.sqrt() * eight_pi).abs() < 1e-12);
    assert!(g
        .interval(&NodeKey::lambda(Family::LambdaStar, 2, 1))
        .is_none());
}

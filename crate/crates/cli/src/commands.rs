//! One function per subcommand. Each builds its JSON record and renders the
//! text form from the same values.

use std::collections::BTreeMap;
use std::fmt::Write;
use std::path::Path;

use morse_res::classes::SplitCertificate;
use morse_res::ideal::check_permutation;
use morse_res::pruning::verify_matching;
use morse_res::taylor::bits;
use morse_res::{
    auto_plan, betti_numbers, betti_numbers_with, critical_cells, morse_differential, prune_partial,
    pruned_betti, search_minimal_order, split_prune, verify_complex, AutoPlan, BettiMethod,
    BettiTable, Cell, ComplexCheck, Error, GradedComplex, Limits, Matching, MonomialIdeal,
    OrderSearch, Result, SearchBudget, SplitOptions, SplitPlan, VertexOrder,
};
use serde_json::{json, Value};

use crate::{Method, Report};

pub enum PlanSource {
    File(SplitPlan),
    Auto(AutoPlan),
}

fn cell_str(c: Cell) -> String {
    let v: Vec<String> = bits(c).map(|b| (b + 1).to_string()).collect();
    format!("{{{}}}", v.join(","))
}

fn cell_json(c: Cell) -> Value {
    json!(bits(c).map(|b| b + 1).collect::<Vec<_>>())
}

fn totals_line(t: &BettiTable) -> String {
    t.totals().iter().map(u64::to_string).collect::<Vec<_>>().join(" ")
}

fn order_str(order: &[usize]) -> String {
    order.iter().map(|k| (k + 1).to_string()).collect::<Vec<_>>().join(",")
}

fn base(command: &str, ideal: &MonomialIdeal, characteristic: u64) -> serde_json::Map<String, Value> {
    let mut m = serde_json::Map::new();
    m.insert("command".into(), json!(command));
    m.insert("ideal".into(), ideal.to_json());
    m.insert("characteristic".into(), json!(characteristic));
    m
}

fn header(ideal: &MonomialIdeal, characteristic: u64) -> String {
    format!(
        "ideal: ({ideal})\nvariables: {}  generators: {}  characteristic: {characteristic}\n",
        ideal.n(),
        ideal.q()
    )
}

/// A 1-based order like "3,1,2" as a 0-based permutation.
pub fn parse_order(s: &str, q: usize) -> Result<Vec<usize>> {
    let order = s
        .split(',')
        .map(|t| {
            let t = t.trim();
            match t.parse::<usize>() {
                Ok(k) if k >= 1 => Ok(k - 1),
                _ => Err(Error::Parse(format!("bad order entry {t:?} (1-based indices expected)"))),
            }
        })
        .collect::<Result<Vec<_>>>()?;
    check_permutation(&order, q)?;
    Ok(order)
}

pub fn betti(ideal: &MonomialIdeal, p: u64, method: Method, limits: &Limits) -> Result<Report> {
    let m = match method {
        Method::Koszul => BettiMethod::Koszul,
        Method::Taylor => BettiMethod::TaylorStrand,
    };
    let table = betti_numbers_with(ideal, p, m, limits)?;
    let name = match method {
        Method::Koszul => "koszul",
        Method::Taylor => "taylor",
    };
    let mut j = base("betti", ideal, p);
    j.insert("method".into(), json!(name));
    j.insert("betti".into(), table.to_json());
    let mut text = header(ideal, p);
    let _ = writeln!(text, "method: {name}");
    let _ = writeln!(text, "betti numbers of R/I:");
    text.push_str(&table.render_diagram());
    Ok(Report {
        json: Value::Object(j),
        text,
        verdict: None,
        always_check: false,
    })
}

struct Pruned {
    complex: GradedComplex,
    order: Vec<usize>,
    matching: Matching,
    pruned: BettiTable,
    oracle: BettiTable,
}

fn run_prune(ideal: &MonomialIdeal, p: u64, order: Option<&str>, limits: &Limits) -> Result<Pruned> {
    ideal.require_proper("prune")?;
    let order = match order {
        Some(s) => parse_order(s, ideal.q())?,
        None => (0..ideal.q()).collect(),
    };
    let complex = GradedComplex::taylor(ideal, limits)?;
    let matching = prune_partial(&complex, &order, |_, _| true, None);
    let pruned = pruned_betti(&complex, &matching, p);
    let oracle = betti_numbers(ideal, p, limits)?;
    Ok(Pruned {
        complex,
        order,
        matching,
        pruned,
        oracle,
    })
}

pub fn prune(
    ideal: &MonomialIdeal,
    p: u64,
    order: Option<&str>,
    dump_graph: Option<&Path>,
    limits: &Limits,
) -> Result<Report> {
    let r = run_prune(ideal, p, order, limits)?;
    if let Some(path) = dump_graph {
        let dump = json!({"hasse": r.complex.hasse_json(), "matching": r.matching.to_json()});
        let body = serde_json::to_string_pretty(&dump).expect("plain data");
        std::fs::write(path, body + "\n")
            .map_err(|e| Error::Invalid(format!("{}: {e}", path.display())))?;
    }
    let morse = morse_differential(&r.complex, &r.matching)?;
    let obstructions = morse.minimality_obstructions(p);
    let minimal = obstructions.is_empty();
    let critical: Vec<usize> = morse.strata().iter().map(Vec::len).collect();

    let mut j = base("prune", ideal, p);
    j.insert("order".into(), json!(r.order.iter().map(|k| k + 1).collect::<Vec<_>>()));
    j.insert("cells".into(), json!(r.complex.cell_count()));
    j.insert("matched_pairs".into(), json!(r.matching.len()));
    j.insert("matching".into(), r.matching.to_json());
    j.insert("critical".into(), json!(critical));
    j.insert("pruned".into(), r.pruned.to_json());
    j.insert("oracle".into(), r.oracle.to_json());
    let obs_json: Vec<Value> = obstructions
        .iter()
        .map(|(i, col, row, c)| {
            json!({"index": i, "column": cell_json(*col), "row": cell_json(*row), "coefficient": c.to_string()})
        })
        .collect();
    j.insert("obstructions".into(), json!(obs_json));
    j.insert("matches_oracle".into(), json!(r.pruned.same_counts(&r.oracle)));
    j.insert("minimal".into(), json!(minimal));

    let mut text = header(ideal, p);
    let _ = writeln!(text, "order: {}", order_str(&r.order));
    let _ = writeln!(text, "taylor cells: {}", r.complex.cell_count());
    let _ = writeln!(text, "matched pairs: {}", r.matching.len());
    let _ = writeln!(
        text,
        "critical cells: {}",
        critical.iter().map(usize::to_string).collect::<Vec<_>>().join(" ")
    );
    text.push_str("pruned resolution:\n");
    text.push_str(&r.pruned.render_diagram());
    text.push_str("betti numbers:\n");
    text.push_str(&r.oracle.render_diagram());
    for (i, col, row, c) in &obstructions {
        let _ = writeln!(
            text,
            "obstruction: d{i} {} -> {} coefficient {c}",
            cell_str(*col),
            cell_str(*row)
        );
    }
    let _ = writeln!(text, "matches oracle: {}", r.pruned.same_counts(&r.oracle));
    let _ = writeln!(text, "minimal: {minimal}");
    Ok(Report {
        json: Value::Object(j),
        text,
        verdict: Some(minimal),
        always_check: false,
    })
}

pub fn power(ideal: &MonomialIdeal, p: u64, r: u64, order: &VertexOrder, limits: &Limits) -> Result<Report> {
    let res = morse_res::prune_power(ideal, r, *order, p, limits)?;
    let oracle = betti_numbers(&ideal.power(r)?, p, limits)?;
    let minimal = res.pruned.same_counts(&oracle);
    let mut j = base("power", ideal, p);
    j.insert("vertex_order".into(), json!(order.to_string()));
    if let Value::Object(m) = res.to_json() {
        j.extend(m);
    }
    j.insert("oracle".into(), oracle.to_json());
    j.insert("minimal".into(), json!(minimal));

    let mut text = header(ideal, p);
    let _ = writeln!(text, "power: {r}  vertex order: {order}");
    let _ = writeln!(
        text,
        "vertices: {}  facets: {}  cells: {}",
        res.lrq.vertices.len(),
        res.lrq.facets.len(),
        res.complex.cell_count()
    );
    let _ = writeln!(text, "matched pairs: {}", res.matching.len());
    if res.nonminimal_labels {
        text.push_str("note: some vertex labels are not minimal generators of the power\n");
    }
    text.push_str("complex before pruning:\n");
    text.push_str(&res.unpruned.render_diagram());
    text.push_str("pruned resolution:\n");
    text.push_str(&res.pruned.render_diagram());
    text.push_str("betti numbers:\n");
    text.push_str(&oracle.render_diagram());
    let _ = writeln!(text, "minimal: {minimal}");
    Ok(Report {
        json: Value::Object(j),
        text,
        verdict: Some(minimal),
        always_check: false,
    })
}

pub fn split(
    ideal: &MonomialIdeal,
    p: u64,
    source: PlanSource,
    realize: bool,
    limits: &Limits,
) -> Result<Report> {
    let (plan, strategy) = match source {
        PlanSource::File(plan) => (plan, None),
        PlanSource::Auto(s) => (auto_plan(ideal, s)?, Some(s)),
    };
    let out = split_prune(
        ideal,
        &plan,
        SplitOptions {
            characteristic: p,
            realize,
        },
        limits,
    )?;
    let mut j = base("split", ideal, p);
    j.insert("strategy".into(), json!(strategy.map(|s| s.to_string())));
    j.insert("plan".into(), plan.to_json());
    if let Value::Object(m) = out.to_json() {
        j.extend(m);
    }

    let mut text = header(ideal, p);
    match strategy {
        Some(s) => {
            let _ = writeln!(text, "plan source: auto {s}");
        }
        None => text.push_str("plan source: file\n"),
    }
    let _ = writeln!(text, "plan: {}", plan.to_json());
    let _ = writeln!(text, "plan depth: {}  leaves: {}", plan.depth(), out.tree.leaves());
    text.push_str("pruned resolution:\n");
    text.push_str(&out.pruned.render_diagram());
    text.push_str("betti numbers:\n");
    text.push_str(&out.oracle.render_diagram());
    if let Some(t) = &out.taylor {
        let _ = writeln!(
            text,
            "taylor matching: {} pairs, {}",
            t.matching.len(),
            match &t.report.failure {
                None => "verified".to_string(),
                Some(f) => format!("rejected: {f}"),
            }
        );
        let _ = writeln!(text, "taylor matching critical cells: {}", totals_line(&t.pruned));
    }
    let _ = writeln!(text, "minimal: {}", out.minimal);
    Ok(Report {
        json: Value::Object(j),
        text,
        verdict: Some(out.minimal),
        always_check: false,
    })
}

fn certificate_lines(c: &SplitCertificate, depth: usize, out: &mut String) {
    let pad = "  ".repeat(depth);
    match c {
        SplitCertificate::Leaf { ideal } => {
            let _ = writeln!(out, "{pad}({ideal})");
        }
        SplitCertificate::Node { ideal, var, j, k } => {
            let _ = writeln!(out, "{pad}({ideal}) = x{} J + K", var + 1);
            certificate_lines(j, depth + 1, out);
            certificate_lines(k, depth + 1, out);
        }
    }
}

pub fn classify(ideal: &MonomialIdeal, p: u64, limits: &Limits) -> Result<Report> {
    let c = morse_res::classify(ideal, p, limits)?;
    let mut j = base("classify", ideal, p);
    if let Value::Object(m) = c.to_json() {
        j.extend(m);
    }
    let mut text = header(ideal, p);
    let _ = writeln!(text, "squarefree: {}", c.squarefree);
    let _ = writeln!(text, "stable: {}", c.stable);
    let _ = writeln!(text, "strongly stable: {}", c.strongly_stable);
    let _ = writeln!(text, "lexsegment: {}", c.lexsegment);
    match &c.linear_quotients {
        Some(o) => {
            let _ = writeln!(text, "linear quotients: true (order {})", order_str(o));
        }
        None => text.push_str("linear quotients: false\n"),
    }
    let _ = writeln!(text, "vertex splittable: {}", c.vertex_splittable.is_some());
    if let Some(cert) = &c.vertex_splittable {
        certificate_lines(cert, 1, &mut text);
    }
    let cw = &c.componentwise_linear;
    let _ = write!(text, "componentwise linear: {}", cw.linear);
    if let Some(d) = cw.failing_degree {
        let _ = write!(text, " (degree {d} component has a nonlinear resolution)");
    }
    text.push('\n');
    Ok(Report {
        json: Value::Object(j),
        text,
        verdict: None,
        always_check: false,
    })
}

pub fn minimal_order(ideal: &MonomialIdeal, p: u64, budget: &SearchBudget, limits: &Limits) -> Result<Report> {
    let res = search_minimal_order(ideal, p, budget, &[], limits)?;
    let mut j = base("minimal-order", ideal, p);
    j.insert("budget".into(), json!(budget.max_orders));
    j.insert("seed".into(), json!(budget.seed));
    j.insert("exhaustive_up_to".into(), json!(budget.exhaustive_up_to));
    let mut text = header(ideal, p);
    let (status, tried) = match &res {
        OrderSearch::Found { order, tried } => {
            j.insert("order".into(), json!(order.iter().map(|k| k + 1).collect::<Vec<_>>()));
            let _ = writeln!(text, "order: {}", order_str(order));
            ("found", *tried)
        }
        OrderSearch::NoOrder { tried } => {
            j.insert("order".into(), Value::Null);
            text.push_str("order: none (every order tried)\n");
            ("none", *tried)
        }
        OrderSearch::Unknown { tried } => {
            j.insert("order".into(), Value::Null);
            text.push_str("order: unknown (budget exhausted)\n");
            ("unknown", *tried)
        }
    };
    j.insert("status".into(), json!(status));
    j.insert("tried".into(), json!(tried));
    let _ = writeln!(text, "orders tried: {tried}");
    let _ = writeln!(text, "found: {}", res.order().is_some());
    Ok(Report {
        json: Value::Object(j),
        text,
        verdict: Some(res.order().is_some()),
        always_check: false,
    })
}

/// `Σ (−1)^{|σ|}` per multidegree id over the given cells.
fn euler(complex: &GradedComplex, cells: impl Iterator<Item = Cell>) -> BTreeMap<u32, i64> {
    let mut m = BTreeMap::new();
    for c in cells {
        let s = if c.count_ones() % 2 == 0 { 1 } else { -1 };
        *m.entry(complex.degree_id(c)).or_insert(0) += s;
    }
    m.retain(|_, v| *v != 0);
    m
}

pub fn verify(ideal: &MonomialIdeal, p: u64, order: Option<&str>, limits: &Limits) -> Result<Report> {
    let r = run_prune(ideal, p, order, limits)?;
    let mut checks: Vec<(&str, bool, String)> = Vec::new();

    let report = verify_matching(&r.complex, &r.matching);
    let detail = match &report.failure {
        None => format!("{} pairs", report.pairs),
        Some(f) => f.to_string(),
    };
    checks.push(("matching", report.passed(), detail));

    let ambient = euler(&r.complex, r.complex.cells());
    let crit = critical_cells(&r.complex, &r.matching);
    let critical = euler(&r.complex, crit.iter().flatten().map(|g| g.cell));
    checks.push(("euler characteristic", ambient == critical, String::new()));

    let dominated = r.pruned.dominates(&r.oracle);
    checks.push(("pruned counts >= betti numbers", dominated, String::new()));

    if report.passed() {
        let morse = morse_differential(&r.complex, &r.matching)?;
        let (ok, detail) = match verify_complex(&morse) {
            ComplexCheck::Pass => (true, String::new()),
            ComplexCheck::BadLabel { index, row, col } => {
                (false, format!("d{index} entry ({row}, {col}) has a non-dividing label"))
            }
            ComplexCheck::NotAComplex { index, row, col, value } => (
                false,
                format!("d{index}·d{} has entry {value} at ({row}, {col})", index + 1),
            ),
        };
        checks.push(("d^2 = 0", ok, detail));
        let strand = morse.strand_betti(p);
        checks.push(("homology equals betti numbers", strand.same_counts(&r.oracle), String::new()));
    } else {
        checks.push(("d^2 = 0", false, "skipped: matching rejected".into()));
        checks.push(("homology equals betti numbers", false, "skipped: matching rejected".into()));
    }

    let all = checks.iter().all(|c| c.1);
    let mut j = base("verify", ideal, p);
    j.insert("order".into(), json!(r.order.iter().map(|k| k + 1).collect::<Vec<_>>()));
    j.insert(
        "checks".into(),
        json!(checks
            .iter()
            .map(|(n, ok, d)| json!({"name": n, "passed": ok, "detail": d}))
            .collect::<Vec<_>>()),
    );
    j.insert("passed".into(), json!(all));
    let mut text = header(ideal, p);
    let _ = writeln!(text, "order: {}", order_str(&r.order));
    for (name, ok, detail) in &checks {
        let _ = write!(text, "{}: {name}", if *ok { "PASS" } else { "FAIL" });
        if !detail.is_empty() {
            let _ = write!(text, " ({detail})");
        }
        text.push('\n');
    }
    let _ = writeln!(text, "passed: {all}");
    Ok(Report {
        json: Value::Object(j),
        text,
        verdict: Some(all),
        always_check: true,
    })
}

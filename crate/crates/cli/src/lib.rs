//! Commands behind the `kromatic` binary. Each returns a [`Report`] holding
//! the JSON document, a plain-text rendering and a pass flag.

use std::collections::BTreeMap;
use std::path::Path;

use kromatic::basis::{convert_classical, expand_in};
use kromatic::gasharov::{check_involution, enumerate_p_tableaux, verify_theorem};
use kromatic::graph::{tree_code, trees, WeightedGraph, MAX_TREE_ORDER};
use kromatic::kromatic::{
    chromatic_sym, expansion_json, groth_coefficient, kromatic, kromatic_expansion, CoverProfile,
    Engine, KExpansion,
};
use kromatic::poset::Poset;
use kromatic::series::{format_coeff, terms_json};
use kromatic::{BasisId, Coeff, Partition, TruncatedSeries};
use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde_json::{json, Value};
use thiserror::Error;

pub const TABLE1_GOLDEN: &str = include_str!("../golden/table1.json");
pub const MAX_TREES: usize = 9;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] kromatic::Error),
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
    #[error("{0}")]
    Usage(String),
}

pub type Result<T> = std::result::Result<T, CliError>;

#[derive(Clone, Debug)]
pub struct Report {
    pub json: Value,
    pub text: String,
    pub ok: bool,
}

impl Report {
    fn pass(json: Value, text: String) -> Self {
        Report {
            json,
            text,
            ok: true,
        }
    }

    pub fn render(&self, pretty: bool) -> String {
        if pretty {
            self.text.clone()
        } else {
            serde_json::to_string(&self.json).expect("report serializes")
        }
    }
}

/// Inline text, or the contents of a file when written `@path`.
pub fn read_spec(spec: &str) -> Result<String> {
    match spec.strip_prefix('@') {
        Some(path) => std::fs::read_to_string(path).map_err(|e| CliError::Io {
            path: path.to_string(),
            message: e.to_string(),
        }),
        None => Ok(spec.to_string()),
    }
}

pub fn parse_graph(spec: &str) -> Result<WeightedGraph> {
    Ok(WeightedGraph::from_spec(&read_spec(spec)?)?)
}

pub fn parse_poset(spec: &str) -> Result<Poset> {
    Ok(Poset::from_spec(&read_spec(spec)?)?)
}

pub fn default_degree(g: &WeightedGraph) -> usize {
    g.total_weight() + 3
}

fn coeff_text(c: &Coeff) -> String {
    format_coeff(c)
}

fn table(rows: impl IntoIterator<Item = (String, String)>) -> String {
    let rows: Vec<_> = rows.into_iter().collect();
    let width = rows
        .iter()
        .map(|(a, _)| a.chars().count())
        .max()
        .unwrap_or(0);
    rows.into_iter()
        .map(|(a, b)| format!("  {a:<width$}  {b}\n"))
        .collect()
}

fn coeff_table(terms: &BTreeMap<Partition, Coeff>) -> String {
    if terms.is_empty() {
        return "  0\n".into();
    }
    table(terms.iter().map(|(l, c)| (l.to_string(), coeff_text(c))))
}

fn km_table(e: &KExpansion) -> String {
    if e.is_empty() {
        return "  0\n".into();
    }
    table(e.iter().map(|(l, c)| (l.to_string(), c.to_string())))
}

/// Coefficients of `X̄_G` in `basis` through degree `degree`.
pub fn expand(g: &WeightedGraph, basis: BasisId, degree: usize, engine: Engine) -> Result<Report> {
    let mut json = json!({ "graph": g.to_json() });
    let text;
    if basis == BasisId::KMonomial && engine != Engine::Direct {
        let e = kromatic_expansion(g, engine)?;
        json["expansion"] = expansion_json(&e);
        text = format!("X̄ in km ({} engine, exact)\n{}", engine, km_table(&e));
    } else {
        let x = kromatic(g, engine, degree)?;
        let terms = series_in(&x, basis, degree)?;
        json["expansion"] = json!({
            "basis": basis.as_str(),
            "degreeCap": degree,
            "exact": false,
            "terms": terms_json(&terms),
        });
        text = format!(
            "X̄ in {} through degree {} ({} engine)\n{}",
            basis,
            degree,
            engine,
            coeff_table(&terms)
        );
    }
    json["engine"] = json!(engine.as_str());
    Ok(Report::pass(json, text))
}

fn series_in(
    x: &TruncatedSeries,
    basis: BasisId,
    degree: usize,
) -> Result<BTreeMap<Partition, Coeff>> {
    Ok(match basis {
        BasisId::Monomial => x.truncate(degree).into_terms(),
        b if b.is_classical() => convert_classical(&x.truncate(degree), b)?,
        BasisId::Grothendieck => {
            let mut out = BTreeMap::new();
            for l in Partition::up_to(degree) {
                let c = groth_coefficient(x, &l)?;
                if !c.is_zero() {
                    out.insert(l, c);
                }
            }
            out
        }
        b => expand_in(x, b, degree)?,
    })
}

struct GoldenRow {
    graph: String,
    km: KExpansion,
    kp_degree: usize,
    kp: BTreeMap<Partition, Coeff>,
}

fn parse_golden(text: &str) -> Result<Vec<GoldenRow>> {
    let bad = |m: &str| CliError::Usage(format!("malformed golden file: {m}"));
    let value: Value = serde_json::from_str(text).map_err(|e| bad(&e.to_string()))?;
    let rows = value["rows"]
        .as_array()
        .ok_or_else(|| bad("missing rows"))?;
    let mut out = Vec::new();
    for row in rows {
        let graph = row["graph"]
            .as_str()
            .ok_or_else(|| bad("row without graph"))?;
        let km = kromatic::kromatic::expansion_from_json(&row["km"])?;
        let kp = TruncatedSeries::from_json(&row["kp"])?;
        out.push(GoldenRow {
            graph: graph.to_string(),
            km,
            kp_degree: kp.cap(),
            kp: kp.into_terms(),
        });
    }
    Ok(out)
}

fn diff_maps<K: Ord + Clone + ToString, V: PartialEq + Clone + ToString + Default>(
    want: &BTreeMap<K, V>,
    got: &BTreeMap<K, V>,
) -> Vec<(K, String, String)> {
    let mut keys: Vec<&K> = want.keys().chain(got.keys()).collect();
    keys.sort();
    keys.dedup();
    keys.into_iter()
        .filter_map(|k| {
            let w = want.get(k).cloned().unwrap_or_default();
            let g = got.get(k).cloned().unwrap_or_default();
            (w != g).then(|| (k.clone(), w.to_string(), g.to_string()))
        })
        .collect()
}

/// Recomputes the five reference rows and diffs them against `golden`.
pub fn table1(golden: &str, engines: &[Engine]) -> Result<Report> {
    let rows = parse_golden(golden)?;
    if engines.is_empty() {
        return Err(CliError::Usage("table1 needs at least one engine".into()));
    }
    let results: Vec<Result<(Value, Vec<Value>)>> = rows
        .par_iter()
        .map(|row| {
            let g = parse_graph(&row.graph)?;
            let mut mismatches = Vec::new();
            let mut kp_engine = Engine::Delcon;
            for &engine in engines {
                let got = match engine {
                    Engine::Direct => {
                        let x = kromatic(&g, engine, g.n() + 3)?;
                        expand_in(&x, BasisId::KMonomial, g.n() + 3)?
                            .into_iter()
                            .map(|(l, c)| (l, c.to_integer()))
                            .collect()
                    }
                    e => kromatic_expansion(&g, e)?,
                };
                let want: KExpansion = if engine == Engine::Direct {
                    row.km
                        .iter()
                        .filter(|(l, _)| l.size() <= g.n() + 3)
                        .map(|(l, c)| (l.clone(), c.clone()))
                        .collect()
                } else {
                    row.km.clone()
                };
                for (l, w, c) in diff_maps(&want, &got) {
                    mismatches.push(json!({
                        "graph": row.graph, "basis": "km", "engine": engine.as_str(),
                        "partition": l, "expected": w, "got": c,
                    }));
                }
                kp_engine = engine;
            }
            let x = kromatic(&g, kp_engine, row.kp_degree)?;
            let kp = expand_in(&x, BasisId::KPower, row.kp_degree)?;
            for (l, w, c) in diff_maps(&row.kp, &kp) {
                mismatches.push(json!({
                    "graph": row.graph, "basis": "kp", "engine": kp_engine.as_str(),
                    "partition": l, "expected": w, "got": c,
                }));
            }
            let summary = json!({
                "graph": row.graph,
                "kmTerms": row.km.len(),
                "kpDegree": row.kp_degree,
                "ok": mismatches.is_empty(),
            });
            Ok((summary, mismatches))
        })
        .collect();
    let mut summaries = Vec::new();
    let mut mismatches = Vec::new();
    for r in results {
        let (s, m) = r?;
        summaries.push(s);
        mismatches.extend(m);
    }
    let ok = mismatches.is_empty();
    let mut text = String::new();
    for s in &summaries {
        text += &format!(
            "{} {} ({} km terms, kp through degree {})\n",
            if s["ok"] == true { "pass" } else { "FAIL" },
            s["graph"].as_str().unwrap_or_default(),
            s["kmTerms"],
            s["kpDegree"]
        );
    }
    for m in &mismatches {
        text += &format!(
            "  {} {} {} {}: expected {}, got {}\n",
            m["graph"].as_str().unwrap_or_default(),
            m["basis"].as_str().unwrap_or_default(),
            m["engine"].as_str().unwrap_or_default(),
            m["partition"],
            m["expected"].as_str().unwrap_or_default(),
            m["got"].as_str().unwrap_or_default()
        );
    }
    let engines: Vec<&str> = engines.iter().map(|e| e.as_str()).collect();
    Ok(Report {
        json: json!({ "engines": engines, "rows": summaries, "mismatches": mismatches, "pass": ok }),
        text,
        ok,
    })
}

pub fn table1_file(path: Option<&Path>, engines: &[Engine]) -> Result<Report> {
    match path {
        Some(p) => {
            let text = std::fs::read_to_string(p).map_err(|e| CliError::Io {
                path: p.display().to_string(),
                message: e.to_string(),
            })?;
            table1(&text, engines)
        }
        None => table1(TABLE1_GOLDEN, engines),
    }
}

fn min_part(l: &Partition) -> usize {
    l.parts().last().copied().unwrap_or(0)
}

/// Chromatic equality, Kromatic equality through `degree`, and what tells
/// the two apart.
pub fn compare(g: &WeightedGraph, h: &WeightedGraph, degree: usize) -> Result<Report> {
    let chromatic_equal = g.total_weight() == h.total_weight()
        && chromatic_sym(g, g.total_weight()) == chromatic_sym(h, h.total_weight());
    let (eg, eh) = rayon::join(
        || kromatic_expansion(g, Engine::Covers),
        || kromatic_expansion(h, Engine::Covers),
    );
    let (eg, eh) = (eg?, eh?);
    let xg = kromatic::kromatic::realize(&eg, degree);
    let xh = kromatic::kromatic::realize(&eh, degree);
    let kromatic_equal = xg == xh;
    let witness = diff_maps(xg.terms(), xh.terms())
        .into_iter()
        .next()
        .map(|(l, a, b)| json!({ "partition": l, "left": a, "right": b }));
    let only = |a: &KExpansion, b: &KExpansion| -> Vec<Partition> {
        a.keys().filter(|l| !b.contains_key(*l)).cloned().collect()
    };
    let only_left = only(&eg, &eh);
    let only_right = only(&eh, &eg);
    let widest = |e: &KExpansion| e.keys().map(min_part).max().unwrap_or(0);
    let json = json!({
        "degreeCap": degree,
        "chromaticEqual": chromatic_equal,
        "kromaticEqualUpToD": kromatic_equal,
        "witness": witness,
        "kmSupportOnlyLeft": only_left,
        "kmSupportOnlyRight": only_right,
        "largestSmallestPart": { "left": widest(&eg), "right": widest(&eh) },
    });
    let mut text = format!(
        "chromatic equal: {chromatic_equal}\nKromatic equal through degree {degree}: {kromatic_equal}\n"
    );
    if let Some(w) = &json["witness"].as_object() {
        text += &format!(
            "first difference at m{}: {} vs {}\n",
            Partition::from_parts(
                serde_json::from_value(w["partition"].clone()).unwrap_or_default()
            ),
            w["left"].as_str().unwrap_or_default(),
            w["right"].as_str().unwrap_or_default()
        );
    }
    let show = |ls: &[Partition]| {
        ls.iter()
            .map(|l| l.to_string())
            .collect::<Vec<_>>()
            .join(" ")
    };
    text += &format!("km support only on the left:  {}\n", show(&only_left));
    text += &format!("km support only on the right: {}\n", show(&only_right));
    text += &format!(
        "largest smallest part in km support: {} vs {}\n",
        widest(&eg),
        widest(&eh)
    );
    Ok(Report::pass(json, text))
}

/// Looks for trees with equal `m̄̃`-expansions, comparing cover profiles.
pub fn trees_report(max_n: usize) -> Result<Report> {
    if max_n > MAX_TREES || max_n > MAX_TREE_ORDER {
        return Err(CliError::Usage(format!(
            "trees supports maxN <= {MAX_TREES}, got {max_n}"
        )));
    }
    let mut all = Vec::new();
    let mut counts = Vec::new();
    for n in 1..=max_n {
        let ts = trees(n)?;
        counts.push(json!({ "n": n, "trees": ts.len() }));
        all.extend(ts);
    }
    let profiles: Vec<(CoverProfile, String)> = all
        .par_iter()
        .map(|t| {
            Ok((
                CoverProfile::new(&WeightedGraph::unit(t.clone()))?,
                tree_code(t),
            ))
        })
        .collect::<Result<_>>()?;
    let mut groups: BTreeMap<&CoverProfile, Vec<&str>> = BTreeMap::new();
    for (p, code) in &profiles {
        groups.entry(p).or_default().push(code);
    }
    let collisions: Vec<&Vec<&str>> = groups.values().filter(|g| g.len() > 1).collect();
    let ok = collisions.is_empty();
    let mut text = String::new();
    for c in &counts {
        text += &format!("order {}: {}\n", c["n"], c["trees"]);
    }
    text += &format!("{} trees, {} collisions\n", all.len(), collisions.len());
    for c in &collisions {
        text += &format!("  {}\n", c.join(" = "));
    }
    Ok(Report {
        json: json!({
            "maxN": max_n,
            "counts": counts,
            "classes": all.len(),
            "collisions": collisions,
        }),
        text,
        ok,
    })
}

/// Filtered expansion with its most negative coefficient.
pub fn positivity(g: &WeightedGraph, family: BasisId, degree: usize) -> Result<Report> {
    let x = kromatic(g, Engine::Covers, degree)?;
    let terms = series_in(&x, family, degree)?;
    let most_negative = terms
        .iter()
        .filter(|(_, c)| c.is_negative())
        .min_by(|a, b| a.1.cmp(b.1));
    let mut layers = Vec::new();
    let mut text = format!("X̄ in {family} through degree {degree}\n");
    for d in 0..=degree {
        let layer: BTreeMap<Partition, Coeff> = terms
            .iter()
            .filter(|(l, _)| l.size() == d)
            .map(|(l, c)| (l.clone(), c.clone()))
            .collect();
        if layer.is_empty() {
            continue;
        }
        text += &format!("degree {d}\n{}", coeff_table(&layer));
        layers.push(json!({ "degree": d, "terms": terms_json(&layer) }));
    }
    let nonnegative = most_negative.is_none();
    match most_negative {
        Some((l, c)) => text += &format!("most negative: {} at {}\n", coeff_text(c), l),
        None => text += "all coefficients are nonnegative\n",
    }
    Ok(Report::pass(
        json!({
            "graph": g.to_json(),
            "family": family.as_str(),
            "degreeCap": degree,
            "layers": layers,
            "mostNegative": most_negative.map(|(l, c)| json!({ "partition": l, "coeff": coeff_text(c) })),
            "nonnegative": nonnegative,
        }),
        text,
    ))
}

pub fn tableaux(p: &Poset, shape: &Partition) -> Result<Report> {
    let ts = enumerate_p_tableaux(p, shape)?;
    let mut text = format!("{} P-tableaux of shape {}\n", ts.len(), shape);
    for t in &ts {
        for row in &t.rows {
            text += &format!(
                "  {}\n",
                row.iter()
                    .map(|c| c.to_string())
                    .collect::<Vec<_>>()
                    .join(" ")
            );
        }
        text += "\n";
    }
    Ok(Report::pass(
        json!({
            "poset": p.to_json(),
            "shape": shape,
            "count": ts.len(),
            "tableaux": ts.iter().map(|t| t.to_json()).collect::<Vec<_>>(),
        }),
        text,
    ))
}

/// Theorem check plus the exhaustive involution check for one shape.
pub fn involution(p: &Poset, shape: &Partition) -> Result<Report> {
    let theorem = verify_theorem(p, shape)?;
    let inv = check_involution(p, shape)?;
    let ok = theorem.all_equal && inv.ok;
    let mut json = theorem.to_json();
    json["involution"] = serde_json::to_value(&inv).expect("report serializes");
    let text = format!(
        "poset {:?}, shape {}\n(3+1)-free: {}\nsigned array sum: {}\ntableaux: {}\n[s̄_λ] coefficient: {}\nall equal: {}\narrays: {} ({} flawed, {} flawless)\ninvolution ok: {}\n",
        p,
        shape,
        theorem.free_31,
        theorem.signed_sum,
        theorem.tableau_count,
        coeff_text(&theorem.groth_coeff),
        theorem.all_equal,
        inv.arrays,
        inv.flawed,
        inv.flawless,
        inv.ok,
    );
    Ok(Report { json, text, ok })
}

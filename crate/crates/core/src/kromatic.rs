//! The Kromatic symmetric function `X̄_(G,ω)` by three engines, and the
//! chromatic symmetric function `X_(G,ω)`.

use std::collections::{BTreeMap, HashMap};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::combinat::binomial;
use crate::error::{Error, Result};
use crate::graph::{delcon_children, graph_key, stable_sets, GraphKey, VertexSet, WeightedGraph};
use crate::ktheory::{dual_groth_h, k_monomial};
use crate::partition::Partition;
use crate::series::{Coeff, TruncatedSeries};

/// An `m̄̃`-expansion: `X̄ = Σ c_λ m̄̃_λ` with nonnegative integer `c_λ`.
pub type KExpansion = BTreeMap<Partition, BigInt>;

/// Inclusion–exclusion over uncovered vertices is `2^n`; beyond this the
/// covers engine refuses.
pub const MAX_COVERS_VERTICES: usize = 24;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Engine {
    Direct,
    Covers,
    Delcon,
}

impl Engine {
    pub const ALL: [Engine; 3] = [Engine::Direct, Engine::Covers, Engine::Delcon];

    pub fn as_str(self) -> &'static str {
        match self {
            Engine::Direct => "direct",
            Engine::Covers => "covers",
            Engine::Delcon => "delcon",
        }
    }
}

impl std::fmt::Display for Engine {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Engine {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "direct" => Ok(Engine::Direct),
            "covers" | "auto" => Ok(Engine::Covers),
            "delcon" => Ok(Engine::Delcon),
            _ => Err(Error::Parse(format!("unknown engine '{s}'"))),
        }
    }
}

/// Stable sets grouped by weight.
fn stable_sets_by_weight(g: &WeightedGraph) -> BTreeMap<usize, Vec<VertexSet>> {
    let mut out: BTreeMap<usize, Vec<VertexSet>> = BTreeMap::new();
    for s in stable_sets(g.graph()) {
        out.entry(g.weight_of(s)).or_default().push(s);
    }
    out
}

/// Counts sequences `(S_1, ..)` of stable sets with `ω(S_i) = μ_i` whose
/// union is `V`; with `disjoint` the sets must also be pairwise disjoint.
fn count_color_classes(
    g: &WeightedGraph,
    by_weight: &BTreeMap<usize, Vec<VertexSet>>,
    mu: &Partition,
    disjoint: bool,
) -> BigInt {
    let full = g.graph().vertices();
    let mut dp: HashMap<VertexSet, BigInt> = HashMap::from([(0, BigInt::one())]);
    for &part in mu.parts() {
        let Some(sets) = by_weight.get(&part) else {
            return BigInt::zero();
        };
        let mut next: HashMap<VertexSet, BigInt> = HashMap::new();
        for (&mask, count) in &dp {
            for &s in sets {
                if disjoint && s & mask != 0 {
                    continue;
                }
                *next.entry(mask | s).or_default() += count;
            }
        }
        dp = next;
    }
    dp.remove(&full).unwrap_or_default()
}

/// `X_(G,ω)`: proper colorings, one color per vertex, color `i` carrying
/// the total weight of its class.
pub fn chromatic_sym(g: &WeightedGraph, cap: usize) -> TruncatedSeries {
    let w = g.total_weight();
    if cap < w {
        return TruncatedSeries::zero(cap, false);
    }
    let by_weight = stable_sets_by_weight(g);
    let terms = Partition::all(w).into_iter().filter_map(|mu| {
        let c = count_color_classes(g, &by_weight, &mu, true);
        (!c.is_zero()).then(|| (mu, Coeff::from_integer(c)))
    });
    TruncatedSeries::from_terms(cap, true, terms.collect::<Vec<_>>())
}

/// `X̄_(G,ω)` through degree `cap`, straight from the definition: the
/// coefficient of `m_μ` counts proper set colorings with colors `1..ℓ(μ)`
/// where color `i` has exponent exactly `μ_i`, i.e. sequences of stable
/// color classes of weights `μ_i` covering every vertex.
pub fn kromatic_direct(g: &WeightedGraph, cap: usize) -> TruncatedSeries {
    let w = g.total_weight();
    if cap < w {
        return TruncatedSeries::zero(cap, false);
    }
    let by_weight = stable_sets_by_weight(g);
    let mut terms = Vec::new();
    for d in w..=cap {
        for mu in Partition::all(d) {
            let c = count_color_classes(g, &by_weight, &mu, false);
            if !c.is_zero() {
                terms.push((mu, Coeff::from_integer(c)));
            }
        }
    }
    TruncatedSeries::from_terms(cap, g.n() == 0, terms)
}

/// Compressed form of the stable-set-cover count.
///
/// Writing `c_a(U)` for the number of stable sets of weight `a` avoiding
/// `U`, inclusion–exclusion gives
/// `Σ_C Π_a y_a^{r_a(λ(C))} = Σ_U (-1)^{|U|} Π_a (1 + y_a)^{c_a(U)}`.
/// The profile stores the signed multiplicity of each vector `(a, c_a)`
/// with cancellations applied. Products of powers of `1 + y_a` with
/// distinct exponent vectors are linearly independent, so two graphs have
/// the same `m̄̃`-expansion exactly when their profiles agree.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CoverProfile {
    terms: BTreeMap<Vec<(usize, usize)>, i64>,
}

impl CoverProfile {
    pub fn new(g: &WeightedGraph) -> Result<Self> {
        let n = g.n();
        if n > MAX_COVERS_VERTICES {
            return Err(Error::SizeLimit(format!(
                "covers engine supports n <= {MAX_COVERS_VERTICES}, got {n}"
            )));
        }
        let sets: Vec<(VertexSet, usize)> = stable_sets(g.graph())
            .into_iter()
            .map(|s| (s, g.weight_of(s)))
            .collect();
        let mut terms: BTreeMap<Vec<(usize, usize)>, i64> = BTreeMap::new();
        for u in 0u64..1 << n {
            let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
            for &(s, w) in &sets {
                if s & u == 0 {
                    *counts.entry(w).or_default() += 1;
                }
            }
            let sign = if u.count_ones() % 2 == 0 { 1 } else { -1 };
            *terms.entry(counts.into_iter().collect()).or_default() += sign;
        }
        terms.retain(|_, c| *c != 0);
        Ok(CoverProfile { terms })
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Expands every `Π (1 + y_a)^{c_a}` into the `m̄̃`-expansion.
    pub fn expansion(&self) -> KExpansion {
        let mut acc: HashMap<Vec<usize>, BigInt> = HashMap::new();
        for (vector, &sign) in &self.terms {
            let rows: Vec<Vec<BigInt>> = vector
                .iter()
                .map(|&(_, c)| (0..=c).map(|k| binomial(c, k)).collect())
                .collect();
            let mut ks = vec![0usize; vector.len()];
            expand_rec(&rows, 0, BigInt::from(sign), &mut ks, &mut |ks, c| {
                let key: Vec<usize> = vector
                    .iter()
                    .zip(ks)
                    .flat_map(|(&(a, _), &k)| std::iter::repeat_n(a, k))
                    .collect();
                *acc.entry(key).or_default() += c;
            });
        }
        acc.into_iter()
            .filter(|(parts, c)| !c.is_zero() && !parts.is_empty())
            .map(|(parts, c)| (Partition::from_parts(parts), c))
            .collect()
    }
}

fn expand_rec(
    rows: &[Vec<BigInt>],
    i: usize,
    prefix: BigInt,
    ks: &mut Vec<usize>,
    emit: &mut dyn FnMut(&[usize], BigInt),
) {
    if i == rows.len() {
        emit(ks, prefix);
        return;
    }
    for (k, b) in rows[i].iter().enumerate() {
        ks[i] = k;
        expand_rec(rows, i + 1, &prefix * b, ks, emit);
    }
}

/// `X̄ = Σ_{C ∈ SSC(G)} m̄̃_{λ(C)}`, counting covers by inclusion–exclusion.
pub fn kromatic_covers(g: &WeightedGraph) -> Result<KExpansion> {
    Ok(CoverProfile::new(g)?.expansion())
}

/// Picks a nonedge of the graph.
pub type NonedgeChooser<'a> = &'a mut dyn FnMut(&WeightedGraph) -> (usize, usize);

/// Options for [`kromatic_delcon_with`].
pub struct DelconOptions<'a> {
    pub memo: bool,
    /// Picks the nonedge to split on; defaults to the smallest one.
    pub choose: Option<NonedgeChooser<'a>>,
}

impl Default for DelconOptions<'_> {
    fn default() -> Self {
        DelconOptions {
            memo: true,
            choose: None,
        }
    }
}

/// Deletion–contraction down to weighted complete graphs, each of which
/// contributes `m̄̃` of its sorted weights.
pub fn kromatic_delcon(g: &WeightedGraph) -> Result<KExpansion> {
    kromatic_delcon_with(g, &mut DelconOptions::default())
}

pub fn kromatic_delcon_with(g: &WeightedGraph, opts: &mut DelconOptions) -> Result<KExpansion> {
    let mut memo = HashMap::new();
    delcon_rec(g, opts, &mut memo)
}

fn delcon_rec(
    g: &WeightedGraph,
    opts: &mut DelconOptions,
    memo: &mut HashMap<GraphKey, KExpansion>,
) -> Result<KExpansion> {
    if g.graph().is_complete() {
        let lambda = Partition::from_parts(g.weights().iter().map(|&w| w as usize).collect());
        return Ok(if lambda.is_empty() {
            KExpansion::new()
        } else {
            KExpansion::from([(lambda, BigInt::one())])
        });
    }
    let key = opts.memo.then(|| graph_key(g));
    if let Some(hit) = key.as_ref().and_then(|k| memo.get(k)) {
        return Ok(hit.clone());
    }
    let (v, w) = match opts.choose.as_mut() {
        Some(choose) => choose(g),
        None => g.graph().nonedges()[0],
    };
    let children = delcon_children(g, v, w)?;
    let mut out = KExpansion::new();
    for child in children.all() {
        for (lambda, c) in delcon_rec(child, opts, memo)? {
            *out.entry(lambda).or_default() += c;
        }
    }
    if let Some(k) = key {
        memo.insert(k, out.clone());
    }
    Ok(out)
}

/// `Σ c_λ m̄̃_λ` in m-form through degree `cap`.
pub fn realize(expansion: &KExpansion, cap: usize) -> TruncatedSeries {
    let mut terms: BTreeMap<Partition, Coeff> = BTreeMap::new();
    for (lambda, c) in expansion.iter().filter(|(l, _)| l.size() <= cap) {
        let c = Coeff::from_integer(c.clone());
        for (mu, d) in k_monomial(lambda, cap).into_terms() {
            *terms.entry(mu).or_insert_with(Coeff::zero) += &c * d;
        }
    }
    TruncatedSeries::from_terms(cap, expansion.is_empty(), terms)
}

/// `X̄_(G,ω)` through degree `cap` by the chosen engine.
pub fn kromatic(g: &WeightedGraph, engine: Engine, cap: usize) -> Result<TruncatedSeries> {
    match engine {
        Engine::Direct => Ok(kromatic_direct(g, cap)),
        Engine::Covers => Ok(realize(&kromatic_covers(g)?, cap)),
        Engine::Delcon => Ok(realize(&kromatic_delcon(g)?, cap)),
    }
}

/// The exact `m̄̃`-expansion by the covers or del-con engine.
pub fn kromatic_expansion(g: &WeightedGraph, engine: Engine) -> Result<KExpansion> {
    match engine {
        Engine::Delcon => kromatic_delcon(g),
        _ => kromatic_covers(g),
    }
}

/// `[s̄_λ] f = ⟨s̲_λ, f⟩`.
pub fn groth_coefficient(f: &TruncatedSeries, lambda: &Partition) -> Result<Coeff> {
    if !f.is_exact() && f.cap() < lambda.size() {
        return Err(Error::InsufficientCap {
            need: lambda.size(),
            have: f.cap(),
        });
    }
    Ok(dual_groth_h(lambda)
        .iter()
        .map(|(mu, c)| c * f.coeff(mu))
        .sum())
}

#[derive(Serialize)]
struct ExpansionJson<'a> {
    basis: &'static str,
    terms: Vec<ExpansionTerm<'a>>,
}

#[derive(Serialize)]
struct ExpansionTerm<'a> {
    partition: &'a Partition,
    coeff: String,
}

pub fn expansion_json(expansion: &KExpansion) -> serde_json::Value {
    let raw = ExpansionJson {
        basis: "km",
        terms: expansion
            .iter()
            .map(|(partition, c)| ExpansionTerm {
                partition,
                coeff: c.to_string(),
            })
            .collect(),
    };
    serde_json::to_value(raw).expect("expansion serializes")
}

/// Reads the `terms` of [`expansion_json`] output back.
pub fn expansion_from_json(value: &serde_json::Value) -> Result<KExpansion> {
    let terms = value
        .get("terms")
        .and_then(|t| t.as_array())
        .ok_or_else(|| Error::Parse("expansion needs a 'terms' array".into()))?;
    let mut out = KExpansion::new();
    for t in terms {
        let lambda: Partition = serde_json::from_value(t["partition"].clone())
            .map_err(|e| Error::Parse(e.to_string()))?;
        let c: BigInt = t["coeff"]
            .as_str()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| Error::Parse(format!("bad coefficient in {t}")))?;
        if c.is_negative() {
            return Err(Error::Parse(format!("negative coefficient in {t}")));
        }
        out.insert(lambda, c);
    }
    Ok(out)
}

/// `c·m̄̃(λ) + ...`, in partition order.
pub fn format_expansion(expansion: &KExpansion) -> String {
    if expansion.is_empty() {
        return "0".into();
    }
    expansion
        .iter()
        .map(|(l, c)| {
            if c.is_one() {
                format!("m̄̃{l}")
            } else {
                format!("{c}·m̄̃{l}")
            }
        })
        .collect::<Vec<_>>()
        .join(" + ")
}

//! Simple graphs on at most 64 vertices, vertex weights, stable sets,
//! covers, the five deletion–contraction children, clan graphs, named
//! fixtures and small-graph isomorphism.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::partition::Partition;

/// Largest supported vertex count (adjacency rows are `u64` masks).
pub const MAX_VERTICES: usize = 64;

/// Vertex subsets are bitmasks: bit `v` set means vertex `v` is present.
pub type VertexSet = u64;

/// Vertices of a set in increasing order.
pub fn elements(set: VertexSet) -> Vec<usize> {
    let mut out = Vec::with_capacity(set.count_ones() as usize);
    let mut s = set;
    while s != 0 {
        out.push(s.trailing_zeros() as usize);
        s &= s - 1;
    }
    out
}

/// Order on vertex sets: by size, then lexicographically on sorted members.
pub fn compare_sets(a: VertexSet, b: VertexSet) -> std::cmp::Ordering {
    a.count_ones()
        .cmp(&b.count_ones())
        .then_with(|| elements(a).cmp(&elements(b)))
}

fn full(n: usize) -> VertexSet {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<u64>,
}

impl Graph {
    /// The edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Result<Self> {
        if n > MAX_VERTICES {
            return Err(Error::TooManyVertices {
                n,
                max: MAX_VERTICES,
            });
        }
        Ok(Graph { n, adj: vec![0; n] })
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::empty(n)?;
        for &(u, v) in edges {
            g.insert_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn complete(n: usize) -> Result<Self> {
        let mut g = Graph::empty(n)?;
        for v in 0..n {
            g.adj[v] = full(n) & !(1u64 << v);
        }
        Ok(g)
    }

    pub fn path(n: usize) -> Result<Self> {
        let edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
        Graph::from_edges(n, &edges)
    }

    pub fn cycle(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::Parse(format!(
                "cycle needs at least 3 vertices, got {n}"
            )));
        }
        let mut edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
        edges.push((n - 1, 0));
        Graph::from_edges(n, &edges)
    }

    /// `K_{1,n-1}` with center 0.
    pub fn star(n: usize) -> Result<Self> {
        let edges: Vec<_> = (1..n).map(|v| (0, v)).collect();
        Graph::from_edges(n, &edges)
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v >= self.n {
            Err(Error::VertexOutOfRange {
                vertex: v,
                n: self.n,
            })
        } else {
            Ok(())
        }
    }

    /// Adds `uv`; inserting an existing edge is a no-op.
    pub fn insert_edge(&mut self, u: usize, v: usize) -> Result<()> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(Error::SameVertex(u));
        }
        self.adj[u] |= 1 << v;
        self.adj[v] |= 1 << u;
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn vertices(&self) -> VertexSet {
        full(self.n)
    }

    pub fn neighbors(&self, v: usize) -> VertexSet {
        self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.adj[u] >> v & 1 == 1
    }

    /// Edges `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.n {
            for v in elements(self.adj[u] >> (u + 1)) {
                out.push((u, u + 1 + v));
            }
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.adj
            .iter()
            .map(|a| a.count_ones() as usize)
            .sum::<usize>()
            / 2
    }

    /// Non-adjacent pairs `(u, v)` with `u < v`, sorted.
    pub fn nonedges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.n {
            for v in u + 1..self.n {
                if !self.has_edge(u, v) {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn is_complete(&self) -> bool {
        self.edge_count() == self.n * self.n.saturating_sub(1) / 2
    }

    pub fn is_stable(&self, set: VertexSet) -> bool {
        elements(set).into_iter().all(|v| self.adj[v] & set == 0)
    }

    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut d: Vec<usize> = (0..self.n).map(|v| self.degree(v)).collect();
        d.sort_unstable_by(|a, b| b.cmp(a));
        d
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let mut seen = 1u64;
        let mut frontier = 1u64;
        while frontier != 0 {
            let mut next = 0;
            for v in elements(frontier) {
                next |= self.adj[v];
            }
            frontier = next & !seen;
            seen |= next;
        }
        seen == self.vertices()
    }

    pub fn is_tree(&self) -> bool {
        self.n >= 1 && self.edge_count() == self.n - 1 && self.is_connected()
    }

    /// Applies a relabeling: vertex `v` becomes `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Graph {
        let mut adj = vec![0u64; self.n];
        for (u, v) in self.edges() {
            adj[perm[u]] |= 1 << perm[v];
            adj[perm[v]] |= 1 << perm[u];
        }
        Graph { n: self.n, adj }
    }
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges())
    }
}

/// All nonempty stable sets, ordered by size and then lexicographically.
pub fn stable_sets(g: &Graph) -> Vec<VertexSet> {
    let mut out = Vec::new();
    fn grow(g: &Graph, start: usize, set: VertexSet, out: &mut Vec<VertexSet>) {
        for v in start..g.n {
            if g.adj[v] & set == 0 {
                let next = set | 1 << v;
                out.push(next);
                grow(g, v + 1, next, out);
            }
        }
    }
    grow(g, 0, 0, &mut out);
    out.sort_by(|a, b| compare_sets(*a, *b));
    out
}

/// Number of nonempty stable sets minus the number of vertices.
pub fn total_stability(g: &Graph) -> usize {
    stable_sets(g).len() - g.n
}

/// For each vertex, the largest stable set containing it; returns the
/// minimum over vertices (0 for the empty graph).
pub fn min_max_stable(g: &Graph) -> usize {
    let sets = stable_sets(g);
    (0..g.n)
        .map(|v| {
            sets.iter()
                .filter(|s| *s >> v & 1 == 1)
                .map(|s| s.count_ones() as usize)
                .max()
                .unwrap_or(0)
        })
        .min()
        .unwrap_or(0)
}

/// A family of distinct stable sets covering every vertex.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct StableSetCover {
    sets: Vec<VertexSet>,
}

impl StableSetCover {
    pub fn sets(&self) -> &[VertexSet] {
        &self.sets
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    /// `λ(C)`: the weights of the members, sorted into a partition.
    pub fn partition(&self, g: &WeightedGraph) -> Partition {
        Partition::from_parts(self.sets.iter().map(|&s| g.weight_of(s)).collect())
    }
}

/// Every stable set cover exactly once, members in stable-set order and
/// covers in lexicographic order of their member lists.
///
/// The count grows very quickly; this is meant for small graphs.
pub fn stable_set_covers(g: &Graph) -> Vec<StableSetCover> {
    let sets = stable_sets(g);
    let mut suffix = vec![0u64; sets.len() + 1];
    for i in (0..sets.len()).rev() {
        suffix[i] = suffix[i + 1] | sets[i];
    }
    let target = g.vertices();
    let mut out = Vec::new();
    let mut chosen = Vec::new();
    fn walk(
        i: usize,
        covered: VertexSet,
        target: VertexSet,
        sets: &[VertexSet],
        suffix: &[VertexSet],
        chosen: &mut Vec<VertexSet>,
        out: &mut Vec<StableSetCover>,
    ) {
        if covered | suffix[i] != target {
            return;
        }
        if i == sets.len() {
            if !chosen.is_empty() {
                out.push(StableSetCover {
                    sets: chosen.clone(),
                });
            }
            return;
        }
        chosen.push(sets[i]);
        walk(i + 1, covered | sets[i], target, sets, suffix, chosen, out);
        chosen.pop();
        walk(i + 1, covered, target, sets, suffix, chosen, out);
    }
    if g.n > 0 {
        walk(0, 0, target, &sets, &suffix, &mut chosen, &mut out);
    }
    out.sort_by(|a, b| {
        a.sets
            .iter()
            .zip(&b.sets)
            .map(|(x, y)| compare_sets(*x, *y))
            .find(|o| o.is_ne())
            .unwrap_or_else(|| a.sets.len().cmp(&b.sets.len()))
    });
    out
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct WeightedGraph {
    graph: Graph,
    weights: Vec<u32>,
}

impl WeightedGraph {
    pub fn new(graph: Graph, weights: Vec<u32>) -> Result<Self> {
        if weights.len() != graph.n || weights.contains(&0) {
            return Err(Error::InvalidWeights);
        }
        Ok(WeightedGraph { graph, weights })
    }

    pub fn unit(graph: Graph) -> Self {
        let weights = vec![1; graph.n];
        WeightedGraph { graph, weights }
    }

    /// The complete graph whose weights are the parts of `lambda`.
    pub fn complete_weighted(lambda: &Partition) -> Result<Self> {
        let g = Graph::complete(lambda.len())?;
        WeightedGraph::new(g, lambda.parts().iter().map(|&p| p as u32).collect())
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn n(&self) -> usize {
        self.graph.n
    }

    pub fn total_weight(&self) -> usize {
        self.weights.iter().map(|&w| w as usize).sum()
    }

    pub fn weight_of(&self, set: VertexSet) -> usize {
        elements(set)
            .into_iter()
            .map(|v| self.weights[v] as usize)
            .sum()
    }

    pub fn is_unit(&self) -> bool {
        self.weights.iter().all(|&w| w == 1)
    }

    /// Parses either graph JSON (`{"n":..,"edges":..,"weights":..}`) or a
    /// fixture name accepted by [`named_graph`].
    pub fn from_spec(spec: &str) -> Result<Self> {
        let trimmed = spec.trim();
        if trimmed.starts_with('{') {
            let value: serde_json::Value =
                serde_json::from_str(trimmed).map_err(|e| Error::Parse(e.to_string()))?;
            WeightedGraph::from_json(&value)
        } else {
            named_graph(trimmed)
        }
    }

    pub fn from_json(value: &serde_json::Value) -> Result<Self> {
        let raw: GraphJson =
            serde_json::from_value(value.clone()).map_err(|e| Error::Parse(e.to_string()))?;
        let edges: Vec<(usize, usize)> = raw.edges.iter().map(|e| (e[0], e[1])).collect();
        let g = Graph::from_edges(raw.n, &edges)?;
        match raw.weights {
            Some(w) => WeightedGraph::new(g, w),
            None => Ok(WeightedGraph::unit(g)),
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        let raw = GraphJson {
            n: self.graph.n,
            edges: self
                .graph
                .edges()
                .into_iter()
                .map(|(u, v)| [u, v])
                .collect(),
            weights: Some(self.weights.clone()),
        };
        serde_json::to_value(raw).expect("graph serializes")
    }
}

impl std::fmt::Debug for WeightedGraph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "WeightedGraph(n={}, edges={:?}, weights={:?})",
            self.graph.n,
            self.graph.edges(),
            self.weights
        )
    }
}

#[derive(Serialize, Deserialize)]
struct GraphJson {
    n: usize,
    edges: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    weights: Option<Vec<u32>>,
}

/// The five graphs of the deletion–contraction identity for a nonedge
/// `vw`.
#[derive(Clone, Debug)]
pub struct DelconChildren {
    /// `G/e`: `v` and `w` replaced by `z` (the last vertex).
    pub contraction: WeightedGraph,
    /// Old vertex index to new index in `G/e`; `v` and `w` map to `z`.
    pub contraction_map: Vec<usize>,
    /// `G ∪ e`.
    pub union: WeightedGraph,
    /// `G¹`: `v` absorbs the weight of `w` and becomes adjacent to `N(w)`.
    pub first: WeightedGraph,
    /// `G²`: `w` absorbs the weight of `v` and becomes adjacent to `N(v)`.
    pub second: WeightedGraph,
    /// `G*`: a new vertex `z*` (index `n`) adjacent to `v`, `w`, `N(v)` and
    /// `N(w)`, carrying `ω(v)+ω(w)`.
    pub star: WeightedGraph,
}

impl DelconChildren {
    pub fn all(&self) -> [&WeightedGraph; 5] {
        [
            &self.contraction,
            &self.union,
            &self.first,
            &self.second,
            &self.star,
        ]
    }
}

pub fn delcon_children(g: &WeightedGraph, v: usize, w: usize) -> Result<DelconChildren> {
    let n = g.n();
    g.graph.check_vertex(v)?;
    g.graph.check_vertex(w)?;
    if v == w {
        return Err(Error::SameVertex(v));
    }
    if g.graph.has_edge(v, w) {
        return Err(Error::EdgePresent(v.min(w), v.max(w)));
    }
    let nv = g.graph.adj[v];
    let nw = g.graph.adj[w];
    let merged = g.weights[v] + g.weights[w];

    let mut map = vec![0; n];
    let mut next = 0;
    for (x, slot) in map.iter_mut().enumerate() {
        if x != v && x != w {
            *slot = next;
            next += 1;
        }
    }
    let z = next;
    map[v] = z;
    map[w] = z;
    let mut contraction = Graph::empty(n - 1)?;
    for (a, b) in g.graph.edges() {
        if map[a] != map[b] {
            contraction.insert_edge(map[a], map[b])?;
        }
    }
    let mut cw = vec![0; n - 1];
    for x in 0..n {
        if x != v && x != w {
            cw[map[x]] = g.weights[x];
        }
    }
    cw[z] = merged;

    let mut union = g.graph.clone();
    union.insert_edge(v, w)?;

    let mut first = union.clone();
    for x in elements(nw) {
        first.insert_edge(v, x)?;
    }
    let mut fw = g.weights.clone();
    fw[v] = merged;

    let mut second = union.clone();
    for x in elements(nv) {
        second.insert_edge(w, x)?;
    }
    let mut sw = g.weights.clone();
    sw[w] = merged;

    if n + 1 > MAX_VERTICES {
        return Err(Error::TooManyVertices {
            n: n + 1,
            max: MAX_VERTICES,
        });
    }
    let mut star = Graph {
        n: n + 1,
        adj: union.adj.clone(),
    };
    star.adj.push(0);
    star.insert_edge(v, n)?;
    star.insert_edge(w, n)?;
    for x in elements(nv | nw) {
        star.insert_edge(x, n)?;
    }
    let mut stw = g.weights.clone();
    stw.push(merged);

    Ok(DelconChildren {
        contraction: WeightedGraph::new(contraction, cw)?,
        contraction_map: map,
        union: WeightedGraph::new(union, g.weights.clone())?,
        first: WeightedGraph::new(first, fw)?,
        second: WeightedGraph::new(second, sw)?,
        star: WeightedGraph::new(star, stw)?,
    })
}

/// Blows vertex `v` up into a clique on `alpha[v]` vertices `(v, 0..)`,
/// numbered `v`-major; clones of adjacent vertices are adjacent.
pub fn clan_graph(g: &Graph, alpha: &[u32]) -> Result<Graph> {
    if alpha.len() != g.n || alpha.contains(&0) {
        return Err(Error::InvalidWeights);
    }
    let mut start = Vec::with_capacity(g.n);
    let mut total = 0usize;
    for &a in alpha {
        start.push(total);
        total += a as usize;
    }
    let mut out = Graph::empty(total)?;
    for v in 0..g.n {
        for i in 0..alpha[v] as usize {
            for j in i + 1..alpha[v] as usize {
                out.insert_edge(start[v] + i, start[v] + j)?;
            }
        }
    }
    for (u, v) in g.edges() {
        for i in 0..alpha[u] as usize {
            for j in 0..alpha[v] as usize {
                out.insert_edge(start[u] + i, start[v] + j)?;
            }
        }
    }
    Ok(out)
}

/// No induced `K_{1,3}`.
pub fn is_claw_free(g: &Graph) -> bool {
    for c in 0..g.n {
        let nb = elements(g.adj[c]);
        for (i, &a) in nb.iter().enumerate() {
            for (j, &b) in nb.iter().enumerate().skip(i + 1) {
                if g.has_edge(a, b) {
                    continue;
                }
                for &d in &nb[j + 1..] {
                    if !g.has_edge(a, d) && !g.has_edge(b, d) {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// Fixture edge lists (1-indexed as drawn).
const EX1G: &[(usize, usize)] = &[(3, 1), (3, 4), (1, 4), (3, 5), (3, 2), (5, 2)];
const EX1H: &[(usize, usize)] = &[(4, 2), (4, 3), (2, 1), (2, 3), (1, 4), (3, 5)];
const EX2G: &[(usize, usize)] = &[(1, 4), (1, 6), (2, 6), (3, 5), (3, 6), (4, 6)];
const EX2H: &[(usize, usize)] = &[(1, 3), (1, 4), (1, 6), (2, 6), (3, 5), (3, 6)];
const EX3G: &[(usize, usize)] = &[
    (1, 2),
    (2, 3),
    (3, 4),
    (4, 5),
    (4, 8),
    (5, 8),
    (6, 2),
    (6, 3),
    (7, 1),
    (7, 3),
    (7, 4),
    (7, 5),
    (7, 6),
];
const EX3H: &[(usize, usize)] = &[
    (1, 2),
    (2, 3),
    (3, 4),
    (4, 5),
    (4, 8),
    (5, 8),
    (6, 1),
    (6, 2),
    (6, 3),
    (6, 4),
    (7, 3),
    (7, 5),
    (7, 6),
];

fn one_indexed(n: usize, edges: &[(usize, usize)]) -> Result<Graph> {
    let e: Vec<_> = edges.iter().map(|&(u, v)| (u - 1, v - 1)).collect();
    Graph::from_edges(n, &e)
}

/// Names accepted by [`named_graph`], for help text.
pub const GRAPH_NAMES: &[&str] = &[
    "path:n",
    "cycle:n",
    "complete:n",
    "star:n",
    "empty:n",
    "claw",
    "table1:k",
    "ex1G",
    "ex1H",
    "ex2G",
    "ex2H",
    "ex3G",
    "ex3H",
];

/// Fixture graphs with unit weights: `path:n`, `cycle:n`, `complete:n`,
/// `star:n`, `empty:n`, `claw`, `table1:k` (k = 1..5) and the example pairs
/// `ex1G` .. `ex3H`. A `name:` prefix is accepted and ignored.
pub fn named_graph(spec: &str) -> Result<WeightedGraph> {
    let spec = spec.strip_prefix("name:").unwrap_or(spec);
    let unknown = || Error::UnknownGraph(spec.to_string());
    let g = match spec {
        "claw" => Graph::star(4)?,
        "ex1G" => one_indexed(5, EX1G)?,
        "ex1H" => one_indexed(5, EX1H)?,
        "ex2G" => one_indexed(6, EX2G)?,
        "ex2H" => one_indexed(6, EX2H)?,
        "ex3G" => one_indexed(8, EX3G)?,
        "ex3H" => one_indexed(8, EX3H)?,
        _ => {
            let (kind, arg) = spec.split_once(':').ok_or_else(unknown)?;
            let k: usize = arg.trim().parse().map_err(|_| unknown())?;
            match kind {
                "path" => Graph::path(k)?,
                "cycle" => Graph::cycle(k)?,
                "complete" => Graph::complete(k)?,
                "star" => Graph::star(k)?,
                "empty" => Graph::empty(k)?,
                "table1" => match k {
                    1 => Graph::star(3)?,
                    2 => Graph::complete(3)?,
                    3 => Graph::cycle(4)?,
                    4 => Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)])?,
                    5 => Graph::star(4)?,
                    _ => return Err(unknown()),
                },
                _ => return Err(unknown()),
            }
        }
    };
    Ok(WeightedGraph::unit(g))
}

/// Isomorphism-invariant key of a weighted graph.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GraphKey {
    labeled: bool,
    weights: Vec<u32>,
    adj: Vec<u64>,
}

/// Canonical search is used up to this many vertices; larger graphs get
/// their labeled form as key.
pub const CANONICAL_LIMIT: usize = 8;

/// A key equal for isomorphic weighted graphs when `n <=`
/// [`CANONICAL_LIMIT`]; otherwise the labeled graph itself.
pub fn graph_key(g: &WeightedGraph) -> GraphKey {
    if g.n() <= CANONICAL_LIMIT {
        canonical_form(g)
    } else {
        GraphKey {
            labeled: true,
            weights: g.weights.clone(),
            adj: g.graph.adj.clone(),
        }
    }
}

/// Canonical form by colour refinement and individualisation; exact for
/// every size but exponential in the worst case.
pub fn canonical_form(g: &WeightedGraph) -> GraphKey {
    let initial = rank(
        &g.weights
            .iter()
            .map(|&w| vec![w as usize])
            .collect::<Vec<_>>(),
    );
    let colors = refine(&g.graph, initial);
    let mut best: Option<GraphKey> = None;
    search(g, colors, &mut best);
    best.expect("search visits at least one leaf")
}

fn rank(signatures: &[Vec<usize>]) -> Vec<usize> {
    let distinct: BTreeSet<&Vec<usize>> = signatures.iter().collect();
    let index: HashMap<&Vec<usize>, usize> = distinct
        .into_iter()
        .enumerate()
        .map(|(i, s)| (s, i))
        .collect();
    signatures.iter().map(|s| index[s]).collect()
}

fn refine(g: &Graph, mut colors: Vec<usize>) -> Vec<usize> {
    loop {
        let classes = colors.iter().collect::<BTreeSet<_>>().len();
        let sigs: Vec<Vec<usize>> = (0..g.n)
            .map(|v| {
                let mut s: Vec<usize> = elements(g.adj[v]).iter().map(|&u| colors[u]).collect();
                s.sort_unstable();
                s.insert(0, colors[v]);
                s
            })
            .collect();
        let next = rank(&sigs);
        if next.iter().collect::<BTreeSet<_>>().len() == classes {
            return next;
        }
        colors = next;
    }
}

fn search(g: &WeightedGraph, colors: Vec<usize>, best: &mut Option<GraphKey>) {
    let n = g.n();
    let mut cells: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (v, &c) in colors.iter().enumerate() {
        cells.entry(c).or_default().push(v);
    }
    let target = cells.values().find(|c| c.len() > 1).cloned();
    match target {
        None => {
            let perm = colors;
            let relabeled = g.graph.relabel(&perm);
            let mut weights = vec![0; n];
            for v in 0..n {
                weights[perm[v]] = g.weights[v];
            }
            let key = GraphKey {
                labeled: false,
                weights,
                adj: relabeled.adj,
            };
            if best.as_ref().is_none_or(|b| key < *b) {
                *best = Some(key);
            }
        }
        Some(cell) => {
            for &v in &cell {
                let sigs: Vec<Vec<usize>> = (0..n)
                    .map(|u| vec![colors[u], usize::from(colors[u] == colors[v] && u != v)])
                    .collect();
                search(g, refine(&g.graph, rank(&sigs)), best);
            }
        }
    }
}

pub fn is_isomorphic(a: &WeightedGraph, b: &WeightedGraph) -> bool {
    a.n() == b.n()
        && a.graph.edge_count() == b.graph.edge_count()
        && canonical_form(a) == canonical_form(b)
}

/// Every graph on exactly `n` vertices up to isomorphism, ordered by edge
/// count and then by canonical key.
pub fn graphs_on(n: usize) -> Result<Vec<Graph>> {
    if n > 6 {
        return Err(Error::SizeLimit(format!(
            "graph enumeration supports n <= 6, got {n}"
        )));
    }
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    let mut seen: BTreeMap<(usize, GraphKey), Graph> = BTreeMap::new();
    for mask in 0u64..1 << pairs.len() {
        let edges: Vec<_> = elements(mask).into_iter().map(|i| pairs[i]).collect();
        let g = Graph::from_edges(n, &edges)?;
        let key = canonical_form(&WeightedGraph::unit(g.clone()));
        seen.entry((edges.len(), key)).or_insert(g);
    }
    Ok(seen.into_values().collect())
}

/// Canonical string of a tree: rooted encoding at its center, taking the
/// smaller encoding when there are two centers.
pub fn tree_code(g: &Graph) -> String {
    fn encode(g: &Graph, v: usize, parent: usize) -> String {
        let mut kids: Vec<String> = elements(g.adj[v])
            .into_iter()
            .filter(|&u| u != parent)
            .map(|u| encode(g, u, v))
            .collect();
        kids.sort();
        format!("({})", kids.concat())
    }
    centers(g)
        .into_iter()
        .map(|c| encode(g, c, usize::MAX))
        .min()
        .unwrap_or_default()
}

fn centers(g: &Graph) -> Vec<usize> {
    let mut remaining = g.vertices();
    let mut deg: Vec<usize> = (0..g.n).map(|v| g.degree(v)).collect();
    while remaining.count_ones() > 2 {
        let leaves: Vec<usize> = elements(remaining)
            .into_iter()
            .filter(|&v| deg[v] <= 1)
            .collect();
        for &l in &leaves {
            remaining &= !(1u64 << l);
        }
        for &l in &leaves {
            for u in elements(g.adj[l] & remaining) {
                deg[u] -= 1;
            }
        }
    }
    elements(remaining)
}

/// Largest tree order supported by [`trees`].
pub const MAX_TREE_ORDER: usize = 10;

/// One tree per isomorphism class on exactly `n` vertices.
pub fn trees(n: usize) -> Result<Vec<Graph>> {
    if n > MAX_TREE_ORDER {
        return Err(Error::SizeLimit(format!(
            "tree enumeration supports n <= {MAX_TREE_ORDER}, got {n}"
        )));
    }
    if n == 0 {
        return Ok(Vec::new());
    }
    let mut level: BTreeMap<String, Graph> = BTreeMap::new();
    let one = Graph::empty(1)?;
    level.insert(tree_code(&one), one);
    for size in 2..=n {
        let mut next = BTreeMap::new();
        for t in level.values() {
            for v in 0..t.n {
                let mut adj = t.adj.clone();
                adj.push(0);
                let mut grown = Graph { n: size, adj };
                grown.insert_edge(v, size - 1)?;
                next.entry(tree_code(&grown)).or_insert(grown);
            }
        }
        level = next;
    }
    Ok(level.into_values().collect())
}

/// Trees on `1..=n` vertices, one per class, grouped by order.
pub fn trees_up_to(n: usize) -> Result<Vec<Graph>> {
    let mut out = Vec::new();
    for k in 1..=n {
        out.extend(trees(k)?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p3() -> Graph {
        Graph::star(3).unwrap()
    }

    #[test]
    fn stable_sets_examples() {
        let k3 = Graph::complete(3).unwrap();
        assert_eq!(stable_sets(&k3), vec![1, 2, 4]);
        assert_eq!(stable_sets(&p3()), vec![1, 2, 4, 6]);
        assert_eq!(stable_sets(&Graph::star(4).unwrap()).len(), 8);
        assert!(stable_sets(&Graph::empty(0).unwrap()).is_empty());
    }

    #[test]
    fn stable_sets_match_brute_force() {
        let g = named_graph("ex2H").unwrap();
        let brute: Vec<u64> = (1u64..1 << 6).filter(|&s| g.graph().is_stable(s)).collect();
        let mut got = stable_sets(g.graph());
        got.sort_unstable();
        assert_eq!(got, brute);
    }

    #[test]
    fn covers_examples() {
        let k3 = WeightedGraph::unit(Graph::complete(3).unwrap());
        let c = stable_set_covers(k3.graph());
        assert_eq!(c.len(), 1);
        assert_eq!(c[0].sets(), &[1, 2, 4]);

        let p = WeightedGraph::unit(p3());
        let mut types: BTreeMap<Partition, usize> = BTreeMap::new();
        for cover in stable_set_covers(p.graph()) {
            *types.entry(cover.partition(&p)).or_default() += 1;
        }
        let expected: BTreeMap<Partition, usize> = [
            (crate::part![1, 1, 1], 1),
            (crate::part![2, 1], 1),
            (crate::part![2, 1, 1], 2),
            (crate::part![2, 1, 1, 1], 1),
        ]
        .into_iter()
        .collect();
        assert_eq!(types, expected);
        assert_eq!(stable_set_covers(&Graph::star(4).unwrap()).len(), 109);
    }

    #[test]
    fn covers_are_valid_and_distinct() {
        let g = named_graph("ex1H").unwrap();
        let covers = stable_set_covers(g.graph());
        let distinct: BTreeSet<Vec<u64>> = covers.iter().map(|c| c.sets().to_vec()).collect();
        assert_eq!(distinct.len(), covers.len());
        for c in &covers {
            assert_eq!(c.sets().iter().fold(0, |a, s| a | s), g.graph().vertices());
            assert!(c.sets().iter().all(|&s| g.graph().is_stable(s)));
            assert!(c
                .sets()
                .windows(2)
                .all(|w| compare_sets(w[0], w[1]).is_lt()));
        }
    }

    #[test]
    fn total_stability_examples() {
        assert_eq!(total_stability(&Graph::complete(4).unwrap()), 0);
        assert_eq!(total_stability(&p3()), 1);
        assert_eq!(total_stability(&Graph::star(4).unwrap()), 4);
    }

    #[test]
    fn delcon_children_of_p3() {
        let g = WeightedGraph::unit(p3());
        let ch = delcon_children(&g, 1, 2).unwrap();
        assert_eq!(ch.union.graph(), &Graph::complete(3).unwrap());
        assert_eq!(ch.union.weights(), &[1, 1, 1]);
        assert_eq!(ch.contraction.graph(), &Graph::complete(2).unwrap());
        assert_eq!(ch.contraction.weights(), &[1, 2]);
        assert_eq!(ch.contraction_map, vec![0, 1, 1]);
        assert_eq!(ch.first.graph(), &Graph::complete(3).unwrap());
        assert_eq!(ch.first.weights(), &[1, 2, 1]);
        assert_eq!(ch.second.weights(), &[1, 1, 2]);
        assert_eq!(ch.star.graph(), &Graph::complete(4).unwrap());
        assert_eq!(ch.star.weights(), &[1, 1, 1, 2]);
        for c in ch.all() {
            assert!(total_stability(c.graph()) < 1);
        }
        assert_eq!(
            delcon_children(&g, 0, 1).unwrap_err(),
            Error::EdgePresent(0, 1)
        );
        assert_eq!(delcon_children(&g, 2, 2).unwrap_err(), Error::SameVertex(2));
    }

    #[test]
    fn clan_graph_examples() {
        let k1 = Graph::empty(1).unwrap();
        assert_eq!(clan_graph(&k1, &[3]).unwrap(), Graph::complete(3).unwrap());
        let c = clan_graph(&p3(), &[2, 1, 1]).unwrap();
        assert_eq!(c.n(), 4);
        assert_eq!(c.edge_count(), 5);
        let c4 = Graph::cycle(4).unwrap();
        assert_eq!(clan_graph(&c4, &[1; 4]).unwrap(), c4);
    }

    #[test]
    fn claw_freeness() {
        assert!(!is_claw_free(&Graph::star(4).unwrap()));
        for n in 1..=8 {
            assert!(is_claw_free(&Graph::path(n).unwrap()));
        }
        assert!(is_claw_free(named_graph("ex1G").unwrap().graph()));
        assert!(is_claw_free(named_graph("ex1H").unwrap().graph()));
        assert!(!is_claw_free(&Graph::star(5).unwrap()));
    }

    #[test]
    fn named_fixtures() {
        assert_eq!(
            named_graph("complete:3").unwrap().graph(),
            &Graph::complete(3).unwrap()
        );
        let ex1g = named_graph("ex1G").unwrap();
        assert_eq!(ex1g.n(), 5);
        assert_eq!(ex1g.graph().edge_count(), 6);
        assert_eq!(ex1g.graph().degree_sequence(), vec![4, 2, 2, 2, 2]);
        let ex1h = named_graph("ex1H").unwrap();
        assert_eq!(ex1h.graph().edge_count(), 6);
        assert_eq!(ex1h.graph().degree_sequence(), vec![3, 3, 3, 2, 1]);
        assert_eq!(
            named_graph("table1:1").unwrap().graph().edges(),
            vec![(0, 1), (0, 2)]
        );
        assert_eq!(named_graph("name:claw").unwrap().graph().degree(0), 3);
        assert!(matches!(
            named_graph("table1:6"),
            Err(Error::UnknownGraph(_))
        ));
        assert!(matches!(
            named_graph("wheel:5"),
            Err(Error::UnknownGraph(_))
        ));
    }

    #[test]
    fn example_witness_features() {
        assert_eq!(min_max_stable(named_graph("ex1G").unwrap().graph()), 1);
        assert_eq!(min_max_stable(named_graph("ex2G").unwrap().graph()), 2);
        assert_eq!(min_max_stable(named_graph("ex2H").unwrap().graph()), 3);
        assert_eq!(min_max_stable(named_graph("ex3H").unwrap().graph()), 2);
        assert_eq!(min_max_stable(named_graph("ex3G").unwrap().graph()), 3);
    }

    #[test]
    fn json_round_trip() {
        let g =
            WeightedGraph::from_spec(r#"{"n":3,"edges":[[0,1],[1,2]],"weights":[1,2,1]}"#).unwrap();
        assert_eq!(g.weights(), &[1, 2, 1]);
        assert_eq!(WeightedGraph::from_json(&g.to_json()).unwrap(), g);
        let unit = WeightedGraph::from_spec(r#"{"n":2,"edges":[]}"#).unwrap();
        assert!(unit.is_unit());
        assert_eq!(
            WeightedGraph::from_spec(r#"{"n":2,"edges":[[0,0]]}"#).unwrap_err(),
            Error::SameVertex(0)
        );
        assert_eq!(
            WeightedGraph::from_spec(r#"{"n":2,"edges":[],"weights":[1,0]}"#).unwrap_err(),
            Error::InvalidWeights
        );
    }

    #[test]
    fn isomorphism() {
        let p4 = WeightedGraph::unit(Graph::path(4).unwrap());
        let s4 = WeightedGraph::unit(Graph::star(4).unwrap());
        assert!(!is_isomorphic(&p4, &s4));
        let relabeled = WeightedGraph::unit(p4.graph().relabel(&[2, 0, 3, 1]));
        assert!(is_isomorphic(&p4, &relabeled));
        let w1 = WeightedGraph::new(Graph::path(3).unwrap(), vec![2, 1, 1]).unwrap();
        let w2 = WeightedGraph::new(Graph::path(3).unwrap(), vec![1, 1, 2]).unwrap();
        let w3 = WeightedGraph::new(Graph::path(3).unwrap(), vec![1, 2, 1]).unwrap();
        assert!(is_isomorphic(&w1, &w2));
        assert!(!is_isomorphic(&w1, &w3));
    }

    #[test]
    fn graph_class_counts() {
        let counts: Vec<usize> = (1..=5).map(|n| graphs_on(n).unwrap().len()).collect();
        assert_eq!(counts, vec![1, 2, 4, 11, 34]);
    }

    #[test]
    fn tree_counts() {
        let counts: Vec<usize> = (1..=10).map(|n| trees(n).unwrap().len()).collect();
        assert_eq!(counts, vec![1, 1, 1, 2, 3, 6, 11, 23, 47, 106]);
        assert_eq!(trees_up_to(4).unwrap().len(), 5);
        assert!(trees(11).is_err());
        for t in trees(7).unwrap() {
            assert!(t.is_tree());
        }
    }
}

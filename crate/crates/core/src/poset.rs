//! Finite posets stored as strict-order bitmasks.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{elements, Graph, MAX_VERTICES};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poset {
    n: usize,
    /// `above[a]` has bit `b` set iff `a < b`.
    above: Vec<u64>,
}

impl Poset {
    /// Transitive closure of the strict relations `a < b` in `pairs`.
    pub fn from_relations(n: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        if n > MAX_VERTICES {
            return Err(Error::TooManyVertices {
                n,
                max: MAX_VERTICES,
            });
        }
        let mut above = vec![0u64; n];
        for &(a, b) in pairs {
            for x in [a, b] {
                if x >= n {
                    return Err(Error::VertexOutOfRange { vertex: x, n });
                }
            }
            if a == b {
                return Err(Error::PosetCycle(a));
            }
            above[a] |= 1 << b;
        }
        loop {
            let mut changed = false;
            for a in 0..n {
                let mut reach = above[a];
                for b in elements(above[a]) {
                    reach |= above[b];
                }
                if reach != above[a] {
                    above[a] = reach;
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        if let Some(a) = (0..n).find(|&a| above[a] >> a & 1 == 1) {
            return Err(Error::PosetCycle(a));
        }
        Ok(Poset { n, above })
    }

    pub fn chain(n: usize) -> Self {
        let pairs: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Poset::from_relations(n, &pairs).expect("a chain is a poset")
    }

    pub fn antichain(n: usize) -> Self {
        Poset::from_relations(n, &[]).expect("an antichain is a poset")
    }

    /// Disjoint union: elements of `q` follow those of `self`, and no
    /// element of one is comparable to an element of the other.
    pub fn sum(&self, q: &Poset) -> Self {
        let mut above = self.above.clone();
        above.extend(q.above.iter().map(|&m| m << self.n));
        Poset {
            n: self.n + q.n,
            above,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn less(&self, a: usize, b: usize) -> bool {
        self.above[a] >> b & 1 == 1
    }

    pub fn comparable(&self, a: usize, b: usize) -> bool {
        self.less(a, b) || self.less(b, a)
    }

    /// Elements strictly greater than `a`.
    pub fn above(&self, a: usize) -> u64 {
        self.above[a]
    }

    /// All strict relations `(a, b)` with `a < b`, sorted.
    pub fn relations(&self) -> Vec<(usize, usize)> {
        (0..self.n)
            .flat_map(|a| elements(self.above[a]).into_iter().map(move |b| (a, b)))
            .collect()
    }

    pub fn is_chain(&self, set: u64) -> bool {
        let xs = elements(set);
        xs.iter()
            .enumerate()
            .all(|(i, &a)| xs[i + 1..].iter().all(|&b| self.comparable(a, b)))
    }

    pub fn incomparability_graph(&self) -> Graph {
        let mut g = Graph::empty(self.n).expect("poset size already checked");
        for a in 0..self.n {
            for b in a + 1..self.n {
                if !self.comparable(a, b) {
                    g.insert_edge(a, b).expect("distinct in-range vertices");
                }
            }
        }
        g
    }

    /// No four elements forming a 3-chain plus an element incomparable to
    /// all three.
    pub fn is_31_free(&self) -> bool {
        for a in 0..self.n {
            for b in elements(self.above[a]) {
                for c in elements(self.above[b]) {
                    let chain = (1u64 << a) | (1 << b) | (1 << c);
                    let lonely = (0..self.n).any(|d| {
                        chain >> d & 1 == 0
                            && !self.comparable(a, d)
                            && !self.comparable(b, d)
                            && !self.comparable(c, d)
                    });
                    if lonely {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Parses `{"n": .., "less": [[a, b], ..]}` or one of the names
    /// `chain:n`, `antichain:n`, `a+b` (sum of chains, e.g. `2+1`).
    pub fn from_spec(spec: &str) -> Result<Self> {
        let s = spec.trim();
        if s.starts_with('{') {
            let value: serde_json::Value =
                serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
            return Poset::from_json(&value);
        }
        let s = s.strip_prefix("name:").unwrap_or(s);
        let unknown = || Error::UnknownPoset(s.to_string());
        if let Some((kind, arg)) = s.split_once(':') {
            let k: usize = arg.trim().parse().map_err(|_| unknown())?;
            return match kind {
                "chain" => Ok(Poset::chain(k)),
                "antichain" => Ok(Poset::antichain(k)),
                _ => Err(unknown()),
            };
        }
        let mut out = Poset::antichain(0);
        for piece in s.split('+') {
            let k: usize = piece.trim().parse().map_err(|_| unknown())?;
            if k == 0 {
                return Err(unknown());
            }
            out = out.sum(&Poset::chain(k));
        }
        if out.n > MAX_VERTICES {
            return Err(Error::TooManyVertices {
                n: out.n,
                max: MAX_VERTICES,
            });
        }
        Ok(out)
    }

    pub fn from_json(value: &serde_json::Value) -> Result<Self> {
        let raw: PosetJson =
            serde_json::from_value(value.clone()).map_err(|e| Error::Parse(e.to_string()))?;
        let pairs: Vec<_> = raw.less.iter().map(|p| (p[0], p[1])).collect();
        Poset::from_relations(raw.n, &pairs)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let raw = PosetJson {
            n: self.n,
            less: self.relations().into_iter().map(|(a, b)| [a, b]).collect(),
        };
        serde_json::to_value(raw).expect("poset serializes")
    }

    fn relabel(&self, perm: &[usize]) -> Vec<u64> {
        let mut above = vec![0u64; self.n];
        for (a, b) in self.relations() {
            above[perm[a]] |= 1 << perm[b];
        }
        above
    }
}

impl std::fmt::Debug for Poset {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Poset(n={}, less={:?})", self.n, self.relations())
    }
}

#[derive(Serialize, Deserialize)]
struct PosetJson {
    n: usize,
    less: Vec<[usize; 2]>,
}

/// Every poset on `n` elements up to isomorphism (`n <= 5`).
///
/// Each class has a natural labeling (`a < b` only if `a < b` as
/// integers), so it suffices to run over transitively closed relations on
/// the pairs `a < b` and keep the lexicographically smallest relabeling.
pub fn posets_on(n: usize) -> Result<Vec<Poset>> {
    if n > 5 {
        return Err(Error::SizeLimit(format!(
            "poset enumeration supports n <= 5, got {n}"
        )));
    }
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
        .collect();
    let perms = all_permutations(n);
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for mask in 0u64..1 << pairs.len() {
        let rel: Vec<_> = elements(mask).into_iter().map(|i| pairs[i]).collect();
        let p = Poset::from_relations(n, &rel)?;
        if p.relations().len() != rel.len() {
            continue;
        }
        let key = perms
            .iter()
            .map(|perm| p.relabel(perm))
            .min()
            .unwrap_or_default();
        if seen.insert(key) {
            out.push(p);
        }
    }
    Ok(out)
}

fn all_permutations(n: usize) -> Vec<Vec<usize>> {
    let mut perm: Vec<usize> = (0..n).collect();
    let mut out = vec![perm.clone()];
    while crate::combinat::next_permutation(&mut perm) {
        out.push(perm.clone());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn construction() {
        let c = Poset::from_relations(3, &[(0, 1), (1, 2)]).unwrap();
        assert!(c.less(0, 2));
        assert_eq!(c, Poset::chain(3));
        assert_eq!(
            Poset::from_relations(2, &[(0, 1), (1, 0)]).unwrap_err(),
            Error::PosetCycle(0)
        );
        let p21 = Poset::from_relations(3, &[(0, 1)]).unwrap();
        assert_eq!(p21, Poset::chain(2).sum(&Poset::chain(1)));
        assert_eq!(Poset::chain(1).sum(&Poset::chain(1)), Poset::antichain(2));
    }

    #[test]
    fn incomparability() {
        assert_eq!(Poset::chain(3).incomparability_graph().edge_count(), 0);
        assert_eq!(
            Poset::antichain(3).incomparability_graph(),
            Graph::complete(3).unwrap()
        );
        let g = Poset::from_spec("2+1").unwrap().incomparability_graph();
        assert_eq!(g.edges(), vec![(0, 2), (1, 2)]);
    }

    #[test]
    fn three_plus_one() {
        assert!(Poset::chain(4).is_31_free());
        assert!(!Poset::from_spec("3+1").unwrap().is_31_free());
        assert!(Poset::from_spec("2+2").unwrap().is_31_free());
    }

    #[test]
    fn class_counts() {
        let counts: Vec<usize> = (0..=5).map(|n| posets_on(n).unwrap().len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 5, 16, 63]);
    }

    #[test]
    fn specs_and_json() {
        let p = Poset::from_spec(r#"{"n":3,"less":[[0,1],[1,2]]}"#).unwrap();
        assert_eq!(p, Poset::chain(3));
        assert_eq!(Poset::from_json(&p.to_json()).unwrap(), p);
        assert_eq!(
            Poset::from_spec("antichain:2").unwrap(),
            Poset::antichain(2)
        );
        assert!(matches!(
            Poset::from_spec("lattice:3"),
            Err(Error::UnknownPoset(_))
        ));
    }
}

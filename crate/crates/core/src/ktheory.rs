//! K-theoretic families: set-valued tableaux, symmetric Grothendieck
//! functions and their duals, K-monomials, the two K-elementary families
//! and single-vertex power sums.
//!
//! Sign convention for `s̄_λ`: a tableau `T` contributes
//! `(−1)^{|T|−|λ|} x^T`, so the lowest-degree part of `s̄_λ` is `s_λ`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::basis::{self, BasisId};
use crate::combinat::{factorial, multichoose, signed_permutations, surjections};
use crate::partition::Partition;
use crate::series::{Coeff, TruncatedSeries};

/// A semistandard set-valued tableau. Each cell holds a bitmask of its
/// entries (bit `i` set means entry `i`, entries start at 1).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SetValuedTableau {
    shape: Partition,
    rows: Vec<Vec<u64>>,
}

fn lowest(mask: u64) -> usize {
    mask.trailing_zeros() as usize
}

fn highest(mask: u64) -> usize {
    63 - mask.leading_zeros() as usize
}

impl SetValuedTableau {
    pub fn shape(&self) -> &Partition {
        &self.shape
    }

    /// The entry sets, row by row.
    pub fn entries(&self) -> Vec<Vec<Vec<usize>>> {
        self.rows
            .iter()
            .map(|row| {
                row.iter()
                    .map(|&m| (1..64).filter(|i| m >> i & 1 == 1).collect())
                    .collect()
            })
            .collect()
    }

    pub fn total_size(&self) -> usize {
        self.rows
            .iter()
            .flatten()
            .map(|m| m.count_ones() as usize)
            .sum()
    }

    /// `content[i]` is the number of cells containing `i + 1`.
    pub fn content(&self) -> Vec<usize> {
        let mut out = Vec::new();
        for &m in self.rows.iter().flatten() {
            for i in 1..64 {
                if m >> i & 1 == 1 {
                    if out.len() < i {
                        out.resize(i, 0);
                    }
                    out[i - 1] += 1;
                }
            }
        }
        out
    }

    pub fn is_semistandard(&self) -> bool {
        for (r, row) in self.rows.iter().enumerate() {
            for (c, &m) in row.iter().enumerate() {
                if m & 1 == 1 || m == 0 {
                    return false;
                }
                if c + 1 < row.len() && highest(m) > lowest(row[c + 1]) {
                    return false;
                }
                if let Some(&below) = self.rows.get(r + 1).and_then(|b| b.get(c)) {
                    if highest(m) >= lowest(below) {
                        return false;
                    }
                }
            }
        }
        true
    }
}

/// Cell-by-cell filler shared by listing and content-restricted counting.
struct SvtFiller {
    cells: Vec<(usize, usize)>,
    max_entry: usize,
    rows: Vec<Vec<u64>>,
}

impl SvtFiller {
    fn new(shape: &Partition, max_entry: usize) -> Self {
        assert!(max_entry < 64, "entries are limited to 63");
        let cells = shape
            .parts()
            .iter()
            .enumerate()
            .flat_map(|(r, &len)| (0..len).map(move |c| (r, c)))
            .collect();
        let rows = shape.parts().iter().map(|&len| vec![0; len]).collect();
        SvtFiller {
            cells,
            max_entry,
            rows,
        }
    }

    /// Smallest entry allowed in cell `(r, c)` given what is already placed.
    fn floor(&self, r: usize, c: usize) -> usize {
        let mut lo = 1;
        if c > 0 {
            lo = lo.max(highest(self.rows[r][c - 1]));
        }
        if r > 0 {
            lo = lo.max(highest(self.rows[r - 1][c]) + 1);
        }
        lo
    }

    /// Visits every filling of the remaining cells whose cell sets are drawn
    /// from `allowed` entries and whose total size stays within `budget`.
    fn walk(
        &mut self,
        idx: usize,
        budget: usize,
        remaining: &mut Option<Vec<usize>>,
        visit: &mut dyn FnMut(&[Vec<u64>]),
    ) {
        if idx == self.cells.len() {
            if remaining
                .as_ref()
                .is_none_or(|rem| rem.iter().all(|&x| x == 0))
            {
                visit(&self.rows);
            }
            return;
        }
        let cells_left = self.cells.len() - idx;
        if budget < cells_left {
            return;
        }
        let (r, c) = self.cells[idx];
        let lo = self.floor(r, c);
        if lo > self.max_entry {
            return;
        }
        let span = self.max_entry - lo + 1;
        let max_take = budget - (cells_left - 1);
        for bits in 1u64..(1u64 << span) {
            let take = bits.count_ones() as usize;
            if take > max_take {
                continue;
            }
            let mask = bits << lo;
            if let Some(rem) = remaining.as_mut() {
                let fits = (lo..lo + span)
                    .filter(|i| mask >> i & 1 == 1)
                    .all(|i| rem[i - 1] > 0);
                if !fits {
                    continue;
                }
                for i in (lo..lo + span).filter(|i| mask >> i & 1 == 1) {
                    rem[i - 1] -= 1;
                }
            }
            self.rows[r][c] = mask;
            self.walk(idx + 1, budget - take, remaining, visit);
            self.rows[r][c] = 0;
            if let Some(rem) = remaining.as_mut() {
                for i in (lo..lo + span).filter(|i| mask >> i & 1 == 1) {
                    rem[i - 1] += 1;
                }
            }
        }
    }
}

/// All semistandard set-valued tableaux of shape `lambda` with entries in
/// `1..=max_entry` and at most `max_size` entries in total.
pub fn enumerate_svt(
    lambda: &Partition,
    max_entry: usize,
    max_size: usize,
) -> Vec<SetValuedTableau> {
    let mut filler = SvtFiller::new(lambda, max_entry);
    let mut out = Vec::new();
    let mut none = None;
    filler.walk(0, max_size, &mut none, &mut |rows| {
        out.push(SetValuedTableau {
            shape: lambda.clone(),
            rows: rows.to_vec(),
        })
    });
    out
}

/// Number of set-valued tableaux of shape `lambda` with content exactly
/// `content` (entry `i + 1` used `content[i]` times).
pub fn count_svt_with_content(lambda: &Partition, content: &[usize]) -> u64 {
    let total: usize = content.iter().sum();
    let mut filler = SvtFiller::new(lambda, content.len());
    let mut count = 0u64;
    let mut remaining = Some(content.to_vec());
    filler.walk(0, total, &mut remaining, &mut |_| count += 1);
    count
}

/// `s̄_λ` truncated at `cap`.
pub fn groth_s(lambda: &Partition, cap: usize) -> TruncatedSeries {
    let base = lambda.size();
    if cap < base {
        return TruncatedSeries::zero(cap, false);
    }
    let mut terms = Vec::new();
    for d in base..=cap {
        let sign = if (d - base).is_multiple_of(2) { 1 } else { -1 };
        for mu in Partition::all(d) {
            let n = count_svt_with_content(lambda, mu.parts());
            if n > 0 {
                terms.push((mu, Coeff::from_integer(BigInt::from(n) * sign)));
            }
        }
    }
    // s̄_∅ = 1 has no terms above degree 0
    TruncatedSeries::from_terms(cap, lambda.is_empty(), terms)
}

/// `s̲_λ` via the K-theoretic Jacobi–Trudi expansion
/// `Σ_π sgn(π) Π_i Σ_l multichoose(i−1, l) h_{λ_i − i + π(i) − l}`.
///
/// The sum runs over permutations of `ℓ(λ)` letters: padding to a larger
/// symmetric group only adds rows `i > ℓ(λ)` whose block of the matrix is
/// unitriangular, so the determinant is unchanged.
pub fn dual_groth_s(lambda: &Partition) -> TruncatedSeries {
    let cap = lambda.size();
    let mut total = TruncatedSeries::zero(cap, true);
    for (mu, c) in dual_groth_h(lambda) {
        let h = basis::generator(BasisId::Homogeneous, &mu, cap).expect("h is classical");
        total = total.add_scaled(&h, &c);
    }
    total
}

/// `s̲_λ` in the `h` basis.
pub fn dual_groth_h(lambda: &Partition) -> BTreeMap<Partition, Coeff> {
    let k = lambda.len();
    let mut total: BTreeMap<Partition, Coeff> = BTreeMap::new();
    for (perm, sign) in signed_permutations(k) {
        let mut term: BTreeMap<Vec<usize>, BigInt> =
            BTreeMap::from([(Vec::new(), BigInt::from(sign))]);
        for i in 1..=k {
            let m = lambda.part(i - 1) as i64 - i as i64 + (perm[i - 1] + 1) as i64;
            if m < 0 {
                term.clear();
                break;
            }
            let m = m as usize;
            let mut next = BTreeMap::new();
            for l in 0..=m {
                let c = multichoose(i - 1, l);
                if c.is_zero() {
                    continue;
                }
                for (parts, t) in &term {
                    let mut parts = parts.clone();
                    parts.push(m - l);
                    *next.entry(parts).or_insert_with(BigInt::zero) += t * &c;
                }
            }
            term = next;
        }
        for (parts, c) in term {
            *total.entry(Partition::from_parts(parts)).or_default() += Coeff::from_integer(c);
        }
    }
    total.retain(|_, c| !c.is_zero());
    total
}

/// `m̄̃_λ`, the Kromatic function of the weighted complete graph `K_λ`.
///
/// Each color is used by exactly one vertex, contributing that vertex's
/// weight as its exponent, so the colors of exponent `j` are distributed
/// surjectively over the `r_j(λ)` vertices of weight `j`.
pub fn k_monomial(lambda: &Partition, cap: usize) -> TruncatedSeries {
    if cap < lambda.size() {
        return TruncatedSeries::zero(cap, false);
    }
    let groups = lambda.multiplicities();
    let mut terms = Vec::new();
    let mut counts = vec![0usize; groups.len()];
    k_monomial_rec(&groups, 0, cap, &mut counts, &mut terms);
    TruncatedSeries::from_terms(cap, lambda.is_empty(), terms)
}

fn k_monomial_rec(
    groups: &[(usize, usize)],
    i: usize,
    budget: usize,
    counts: &mut Vec<usize>,
    out: &mut Vec<(Partition, Coeff)>,
) {
    if i == groups.len() {
        let mut parts = Vec::new();
        let mut c = BigInt::one();
        for (&(value, vertices), &colors) in groups.iter().zip(counts.iter()) {
            parts.extend(std::iter::repeat_n(value, colors));
            c *= surjections(colors, vertices);
        }
        out.push((Partition::from_parts(parts), Coeff::from_integer(c)));
        return;
    }
    let (value, vertices) = groups[i];
    let mut colors = vertices;
    while colors * value <= budget {
        counts[i] = colors;
        k_monomial_rec(groups, i + 1, budget - colors * value, counts, out);
        colors += 1;
    }
}

fn product_over_parts(
    lambda: &Partition,
    cap: usize,
    one_part: impl Fn(usize) -> TruncatedSeries,
) -> TruncatedSeries {
    lambda
        .parts()
        .iter()
        .fold(TruncatedSeries::one(cap), |acc, &n| {
            acc.multiply(&one_part(n))
        })
        .truncate(cap)
}

/// Tableau K-elementary `ē_λ = Π_i s̄_{(1^{λ_i})}`.
pub fn k_elem_tableau(lambda: &Partition, cap: usize) -> TruncatedSeries {
    if cap < lambda.size() {
        return TruncatedSeries::zero(cap, false);
    }
    product_over_parts(lambda, cap, |n| groth_s(&Partition::column(n), cap))
}

/// Graph K-elementary `ē′_λ = Π_i X̄_{K_{λ_i}} / λ_i!`.
pub fn k_elem_graph(lambda: &Partition, cap: usize) -> TruncatedSeries {
    if cap < lambda.size() {
        return TruncatedSeries::zero(cap, false);
    }
    product_over_parts(lambda, cap, |n| {
        k_monomial(&Partition::column(n), cap).scale(&Coeff::new(BigInt::one(), factorial(n)))
    })
}

/// `p̄_n`, the Kromatic function of one vertex of weight `n`.
pub fn k_power(n: usize, cap: usize) -> TruncatedSeries {
    assert!(n > 0, "p̄_n needs a positive weight");
    let terms = (1..=cap / n).map(|k| (Partition::rectangle(n, k), Coeff::one()));
    TruncatedSeries::from_terms(cap, false, terms)
}

/// `p̄_λ = Π_i p̄_{λ_i}`.
pub fn k_power_product(lambda: &Partition, cap: usize) -> TruncatedSeries {
    if cap < lambda.size() {
        return TruncatedSeries::zero(cap, false);
    }
    product_over_parts(lambda, cap, |n| k_power(n, cap))
}

/// `[m_μ]` coefficients of `s̄_λ` read off a brute-force tableau listing.
/// Kept separate from [`groth_s`] so tests can compare the two routes.
pub fn groth_s_by_listing(lambda: &Partition, cap: usize) -> BTreeMap<Partition, Coeff> {
    let mut out: BTreeMap<Partition, Coeff> = BTreeMap::new();
    for t in enumerate_svt(lambda, cap, cap) {
        let content = t.content();
        if content.windows(2).any(|w| w[0] < w[1]) {
            continue;
        }
        let mu = Partition::from_parts(content);
        let sign = if (t.total_size() - lambda.size()).is_multiple_of(2) {
            1
        } else {
            -1
        };
        *out.entry(mu).or_insert_with(Coeff::zero) += Coeff::from_integer(BigInt::from(sign));
    }
    out.retain(|_, c| !c.is_zero());
    out
}

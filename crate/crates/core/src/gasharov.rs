//! Grothendieck P-tableaux, P-arrays and the sign-reversing involution
//! that cancels every array which is not a tableau.
//!
//! Rows and columns are 0-indexed here. Row `i` of a tableau may hold the
//! integers `1..=i`; row `i` of an array with permutation `π` has length
//! `λ_{π(i)} - π(i) + i` and may hold the integers `1..=π(i)`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde::Serialize;

use crate::combinat::{permutation_sign, signed_permutations};
use crate::error::{Error, Result};
use crate::graph::WeightedGraph;
use crate::kromatic::{groth_coefficient, kromatic_covers, realize};
use crate::partition::Partition;
use crate::poset::Poset;
use crate::series::{format_coeff, Coeff};

/// Largest poset and shape the enumerations accept.
pub const MAX_POSET: usize = 6;
pub const MAX_SHAPE: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Cell {
    Elem(usize),
    Int(usize),
}

impl std::fmt::Display for Cell {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Cell::Elem(p) => write!(f, "p{p}"),
            Cell::Int(k) => write!(f, "{k}"),
        }
    }
}

fn rows_json(rows: &[Vec<Cell>]) -> Vec<Vec<String>> {
    rows.iter()
        .map(|r| r.iter().map(|c| c.to_string()).collect())
        .collect()
}

fn check_size(p: &Poset, lambda: &Partition) -> Result<()> {
    if p.n() == 0 {
        return Err(Error::SizeLimit("the poset must be nonempty".into()));
    }
    if p.n() > MAX_POSET || lambda.size() > MAX_SHAPE {
        return Err(Error::SizeLimit(format!(
            "P-tableaux and P-arrays support |P| <= {MAX_POSET} and |λ| <= {MAX_SHAPE}"
        )));
    }
    Ok(())
}

fn covers_all(p: &Poset, rows: &[Vec<Cell>]) -> bool {
    let mut seen = 0u64;
    for c in rows.iter().flatten() {
        if let Cell::Elem(x) = c {
            seen |= 1 << x;
        }
    }
    seen.count_ones() as usize == p.n()
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GrothPTableau {
    pub shape: Partition,
    pub rows: Vec<Vec<Cell>>,
}

impl GrothPTableau {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({ "shape": self.shape, "rows": rows_json(&self.rows) })
    }
}

/// Every Grothendieck P-tableau of shape `lambda`.
pub fn enumerate_p_tableaux(p: &Poset, lambda: &Partition) -> Result<Vec<GrothPTableau>> {
    check_size(p, lambda)?;
    let cells: Vec<(usize, usize)> = lambda
        .parts()
        .iter()
        .enumerate()
        .flat_map(|(r, &len)| (0..len).map(move |c| (r, c)))
        .collect();
    let mut rows: Vec<Vec<Cell>> = lambda
        .parts()
        .iter()
        .map(|&l| Vec::with_capacity(l))
        .collect();
    let mut out = Vec::new();
    fill_tableau(p, lambda, &cells, 0, &mut rows, &mut out);
    Ok(out)
}

fn fill_tableau(
    p: &Poset,
    lambda: &Partition,
    cells: &[(usize, usize)],
    i: usize,
    rows: &mut Vec<Vec<Cell>>,
    out: &mut Vec<GrothPTableau>,
) {
    if i == cells.len() {
        if covers_all(p, rows) {
            out.push(GrothPTableau {
                shape: lambda.clone(),
                rows: rows.clone(),
            });
        }
        return;
    }
    let (r, c) = cells[i];
    let left = (c > 0).then(|| rows[r][c - 1]);
    let up = (r > 0).then(|| rows[r - 1][c]);
    let mut options = Vec::new();
    for x in 0..p.n() {
        let row_ok = match left {
            None => true,
            Some(Cell::Elem(y)) => p.less(y, x),
            Some(Cell::Int(_)) => false,
        };
        let col_ok = match up {
            None => true,
            Some(Cell::Elem(y)) => !p.less(x, y),
            Some(Cell::Int(_)) => false,
        };
        if row_ok && col_ok {
            options.push(Cell::Elem(x));
        }
    }
    for k in 1..=r {
        let row_ok = match left {
            None | Some(Cell::Elem(_)) => true,
            Some(Cell::Int(j)) => j <= k,
        };
        let col_ok = match up {
            None => true,
            Some(Cell::Elem(_)) => true,
            Some(Cell::Int(j)) => j < k,
        };
        if row_ok && col_ok {
            options.push(Cell::Int(k));
        }
    }
    for cell in options {
        rows[r].push(cell);
        fill_tableau(p, lambda, cells, i + 1, rows, out);
        rows[r].pop();
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GrothPArray {
    /// `perm[i]` is the 0-indexed image of row `i`.
    pub perm: Vec<usize>,
    pub rows: Vec<Vec<Cell>>,
}

impl GrothPArray {
    pub fn sign(&self) -> i32 {
        permutation_sign(&self.perm)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "perm": self.perm.iter().map(|x| x + 1).collect::<Vec<_>>(),
            "sign": self.sign(),
            "rows": rows_json(&self.rows),
        })
    }

    /// Checks every defining condition of an array of type `lambda`.
    pub fn is_valid(&self, p: &Poset, lambda: &Partition) -> bool {
        let k = lambda.len();
        if self.perm.len() != k || self.rows.len() != k {
            return false;
        }
        let mut sorted = self.perm.clone();
        sorted.sort_unstable();
        if sorted != (0..k).collect::<Vec<_>>() {
            return false;
        }
        for (i, row) in self.rows.iter().enumerate() {
            if row_length(lambda, &self.perm, i) != Some(row.len()) {
                return false;
            }
            let bound = self.perm[i];
            for (j, &cell) in row.iter().enumerate() {
                let prev = (j > 0).then(|| row[j - 1]);
                let ok = match (cell, prev) {
                    (Cell::Elem(x), None) => x < p.n(),
                    (Cell::Elem(x), Some(Cell::Elem(y))) => x < p.n() && p.less(y, x),
                    (Cell::Elem(_), Some(Cell::Int(_))) => false,
                    (Cell::Int(a), None | Some(Cell::Elem(_))) => (1..=bound).contains(&a),
                    (Cell::Int(a), Some(Cell::Int(b))) => (1..=bound).contains(&a) && b <= a,
                };
                if !ok {
                    return false;
                }
            }
        }
        covers_all(p, &self.rows)
    }
}

/// `λ_{π(i)} - π(i) + i`, or `None` when negative.
fn row_length(lambda: &Partition, perm: &[usize], i: usize) -> Option<usize> {
    (lambda.part(perm[i]) + i).checked_sub(perm[i])
}

/// Strict chains of `p` of every length, by length.
fn chains(p: &Poset, max_len: usize) -> Vec<Vec<Vec<usize>>> {
    let mut out = vec![vec![Vec::new()]; 1];
    for len in 1..=max_len {
        let mut next = Vec::new();
        for chain in &out[len - 1] {
            for x in 0..p.n() {
                if chain.last().is_none_or(|&y| p.less(y, x)) {
                    let mut c = chain.clone();
                    c.push(x);
                    next.push(c);
                }
            }
        }
        out.push(next);
    }
    out
}

/// Weakly increasing sequences of length `len` over `1..=bound`.
fn weak_runs(len: usize, bound: usize) -> Vec<Vec<usize>> {
    fn rec(len: usize, lo: usize, bound: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        for a in lo..=bound {
            cur.push(a);
            rec(len, a, bound, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(len, 1, bound, &mut Vec::new(), &mut out);
    out
}

/// Every Grothendieck P-array of type `lambda`, with permutations of
/// `ℓ(λ)` rows in lexicographic order. Permutations giving a row of
/// negative length contribute nothing and are skipped.
pub fn enumerate_p_arrays(p: &Poset, lambda: &Partition) -> Result<Vec<GrothPArray>> {
    check_size(p, lambda)?;
    let k = lambda.len();
    let longest = lambda.part(0) + k;
    let chains = chains(p, longest.min(p.n()));
    let mut out = Vec::new();
    for (perm, _) in signed_permutations(k) {
        let lengths: Option<Vec<usize>> = (0..k).map(|i| row_length(lambda, &perm, i)).collect();
        let Some(lengths) = lengths else {
            continue;
        };
        let choices: Vec<Vec<Vec<Cell>>> = lengths
            .iter()
            .enumerate()
            .map(|(i, &len)| row_choices(&chains, len, perm[i]))
            .collect();
        let mut rows = Vec::with_capacity(k);
        product(&choices, 0, &mut rows, &mut |rows| {
            if covers_all(p, rows) {
                out.push(GrothPArray {
                    perm: perm.clone(),
                    rows: rows.to_vec(),
                });
            }
        });
    }
    Ok(out)
}

fn row_choices(chains: &[Vec<Vec<usize>>], len: usize, bound: usize) -> Vec<Vec<Cell>> {
    let mut out = Vec::new();
    for (c, level) in chains.iter().enumerate().take(len + 1) {
        let runs = weak_runs(len - c, bound);
        for chain in level {
            for run in &runs {
                let mut row: Vec<Cell> = chain.iter().map(|&x| Cell::Elem(x)).collect();
                row.extend(run.iter().map(|&a| Cell::Int(a)));
                out.push(row);
            }
        }
    }
    out
}

fn product(
    choices: &[Vec<Vec<Cell>>],
    i: usize,
    rows: &mut Vec<Vec<Cell>>,
    emit: &mut dyn FnMut(&[Vec<Cell>]),
) {
    if i == choices.len() {
        emit(rows);
        return;
    }
    for row in &choices[i] {
        rows.push(row.clone());
        product(choices, i + 1, rows, emit);
        rows.pop();
    }
}

/// Is `(r, c)` (with `r >= 1`) a flaw: the cell and the one above it
/// break the tableau conditions.
fn is_flaw(p: &Poset, a: &GrothPArray, r: usize, c: usize) -> bool {
    let above = a.rows[r - 1].get(c).copied();
    match a.rows[r].get(c) {
        None => false,
        Some(&Cell::Elem(x)) => match above {
            Some(Cell::Elem(y)) => p.less(x, y),
            _ => true,
        },
        Some(&Cell::Int(k)) => match above {
            None => true,
            Some(Cell::Int(j)) => k <= j,
            Some(Cell::Elem(_)) => false,
        },
    }
}

/// The flaw used by the involution: leftmost flawed column, bottom-most
/// flawed row within it.
pub fn find_flaw(p: &Poset, a: &GrothPArray) -> Option<(usize, usize)> {
    let width = a.rows.iter().map(Vec::len).max().unwrap_or(0);
    (0..width).find_map(|c| {
        (1..a.rows.len())
            .rev()
            .find(|&r| is_flaw(p, a, r, c))
            .map(|r| (r, c))
    })
}

/// Applies the transposition `(r-1 r)` to the permutation and swaps row
/// `r-1` from column `c` on with row `r` from column `c+1` on.
pub fn psi(p: &Poset, a: &GrothPArray) -> Result<GrothPArray> {
    let (r, c) = find_flaw(p, a).ok_or(Error::NoFlaw)?;
    let mut perm = a.perm.clone();
    perm.swap(r - 1, r);
    let upper = &a.rows[r - 1];
    let lower = &a.rows[r];
    let mut rows = a.rows.clone();
    rows[r - 1] = upper[..c.min(upper.len())]
        .iter()
        .chain(&lower[c + 1..])
        .copied()
        .collect();
    rows[r] = lower[..=c]
        .iter()
        .chain(upper.get(c..).unwrap_or(&[]))
        .copied()
        .collect();
    Ok(GrothPArray { perm, rows })
}

/// The tableau read off a flawless array.
pub fn as_tableau(p: &Poset, a: &GrothPArray, lambda: &Partition) -> Option<GrothPTableau> {
    (find_flaw(p, a).is_none()).then(|| GrothPTableau {
        shape: lambda.clone(),
        rows: a.rows.clone(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TheoremReport {
    pub poset: Poset,
    pub shape: Partition,
    pub free_31: bool,
    pub signed_sum: BigInt,
    pub tableau_count: usize,
    pub groth_coeff: Coeff,
    pub all_equal: bool,
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct TheoremJson<'a> {
    poset: serde_json::Value,
    shape: &'a Partition,
    free31: bool,
    signed_sum: serde_json::Number,
    tableau_count: usize,
    groth_coeff: String,
    all_equal: bool,
}

impl TheoremReport {
    pub fn to_json(&self) -> serde_json::Value {
        let signed: i64 = self
            .signed_sum
            .clone()
            .try_into()
            .expect("signed sum fits in i64");
        serde_json::to_value(TheoremJson {
            poset: self.poset.to_json(),
            shape: &self.shape,
            free31: self.free_31,
            signed_sum: signed.into(),
            tableau_count: self.tableau_count,
            groth_coeff: format_coeff(&self.groth_coeff),
            all_equal: self.all_equal,
        })
        .expect("report serializes")
    }
}

/// Computes the signed array sum, the tableau count and `[s̄_λ] X̄_{I(P)}`
/// (covers engine plus inner product) independently.
pub fn verify_theorem(p: &Poset, lambda: &Partition) -> Result<TheoremReport> {
    let arrays = enumerate_p_arrays(p, lambda)?;
    let signed_sum: BigInt = arrays.iter().map(|a| BigInt::from(a.sign())).sum();
    let tableau_count = enumerate_p_tableaux(p, lambda)?.len();
    let g = WeightedGraph::unit(p.incomparability_graph());
    let x = realize(&kromatic_covers(&g)?, lambda.size());
    let groth_coeff = groth_coefficient(&x, lambda)?;
    let all_equal = Coeff::from_integer(signed_sum.clone()) == groth_coeff
        && Coeff::from_integer(BigInt::from(tableau_count)) == groth_coeff;
    Ok(TheoremReport {
        poset: p.clone(),
        shape: lambda.clone(),
        free_31: p.is_31_free(),
        signed_sum,
        tableau_count,
        groth_coeff,
        all_equal,
    })
}

/// Exhaustive check of the involution on all arrays of one type.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct InvolutionReport {
    pub arrays: usize,
    pub flawed: usize,
    pub flawless: usize,
    /// Flawless arrays that are genuine tableaux (identity permutation).
    pub flawless_are_tableaux: bool,
    pub stays_valid: usize,
    pub involutive: usize,
    pub sign_reversing: usize,
    pub flaw_preserving: usize,
    pub ok: bool,
}

pub fn check_involution(p: &Poset, lambda: &Partition) -> Result<InvolutionReport> {
    let arrays = enumerate_p_arrays(p, lambda)?;
    let tableaux: BTreeMap<Vec<Vec<Cell>>, ()> = enumerate_p_tableaux(p, lambda)?
        .into_iter()
        .map(|t| (t.rows, ()))
        .collect();
    let mut report = InvolutionReport {
        arrays: arrays.len(),
        flawless_are_tableaux: true,
        ..Default::default()
    };
    let identity: Vec<usize> = (0..lambda.len()).collect();
    for a in &arrays {
        let Some(flaw) = find_flaw(p, a) else {
            report.flawless += 1;
            if a.perm != identity || !tableaux.contains_key(&a.rows) {
                report.flawless_are_tableaux = false;
            }
            continue;
        };
        report.flawed += 1;
        let b = psi(p, a)?;
        if b.is_valid(p, lambda) {
            report.stays_valid += 1;
        }
        if b.sign() == -a.sign() {
            report.sign_reversing += 1;
        }
        if find_flaw(p, &b) == Some(flaw) {
            report.flaw_preserving += 1;
        }
        if psi(p, &b).ok().as_ref() == Some(a) {
            report.involutive += 1;
        }
    }
    report.ok = report.flawless_are_tableaux
        && report.flawless == tableaux.len()
        && [
            report.stays_valid,
            report.involutive,
            report.sign_reversing,
            report.flaw_preserving,
        ]
        .iter()
        .all(|&x| x == report.flawed);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::part;
    use crate::series::coeff;

    fn p21() -> Poset {
        Poset::from_spec("2+1").unwrap()
    }

    #[test]
    fn tableau_examples() {
        let one = Poset::chain(1);
        assert!(enumerate_p_tableaux(&one, &part![2]).unwrap().is_empty());
        let col = enumerate_p_tableaux(&one, &part![1, 1]).unwrap();
        assert_eq!(col.len(), 2);
        assert_eq!(col[0].rows, vec![vec![Cell::Elem(0)], vec![Cell::Elem(0)]]);
        assert_eq!(col[1].rows, vec![vec![Cell::Elem(0)], vec![Cell::Int(1)]]);
        assert_eq!(
            enumerate_p_tableaux(&p21(), &part![1, 1, 1]).unwrap().len(),
            4
        );
    }

    #[test]
    fn array_examples() {
        let one = Poset::chain(1);
        let a = enumerate_p_arrays(&one, &part![1]).unwrap();
        assert_eq!(a.len(), 1);
        assert_eq!(a[0].rows, vec![vec![Cell::Elem(0)]]);
        let signed = |p: &Poset, l: &Partition| -> i32 {
            enumerate_p_arrays(p, l)
                .unwrap()
                .iter()
                .map(|a| a.sign())
                .sum()
        };
        assert_eq!(signed(&one, &part![1, 1]), 2);
        let report = verify_theorem(&p21(), &part![2, 1]).unwrap();
        assert_eq!(
            Coeff::from_integer(report.signed_sum.clone()),
            report.groth_coeff
        );
        for a in enumerate_p_arrays(&p21(), &part![2, 1, 1]).unwrap() {
            assert!(a.is_valid(&p21(), &part![2, 1, 1]));
        }
    }

    #[test]
    fn flaws() {
        let p = p21();
        for l in [part![2, 1], part![1, 1, 1], part![3]] {
            let tableaux = enumerate_p_tableaux(&p, &l).unwrap();
            for a in enumerate_p_arrays(&p, &l).unwrap() {
                let is_tableau = a.perm.iter().enumerate().all(|(i, &x)| i == x)
                    && tableaux.iter().any(|t| t.rows == a.rows);
                assert_eq!(find_flaw(&p, &a).is_none(), is_tableau, "{a:?}");
            }
        }
        let swapped = GrothPArray {
            perm: vec![1, 0],
            rows: vec![vec![Cell::Elem(0)], vec![Cell::Elem(1), Cell::Elem(2)]],
        };
        assert!(find_flaw(&Poset::antichain(3), &swapped).is_some());
        let t = GrothPArray {
            perm: vec![0, 1],
            rows: vec![vec![Cell::Elem(0)], vec![Cell::Elem(0)]],
        };
        assert_eq!(psi(&Poset::chain(1), &t).unwrap_err(), Error::NoFlaw);
    }

    #[test]
    fn involution_on_two_plus_one() {
        for l in [part![3], part![2, 1], part![1, 1, 1]] {
            let r = check_involution(&p21(), &l).unwrap();
            assert!(r.ok, "{l}: {r:?}");
        }
    }

    #[test]
    fn theorem_examples() {
        let r = verify_theorem(&Poset::chain(3), &part![1, 1, 1]).unwrap();
        assert!(r.all_equal);
        assert_eq!(r.groth_coeff, coeff(1));
        let r = verify_theorem(&Poset::antichain(2), &part![1, 1]).unwrap();
        assert!(r.all_equal);
        for d in 0..=5 {
            for l in Partition::all(d).into_iter().filter(|l| !l.is_empty()) {
                let r = verify_theorem(&p21(), &l).unwrap();
                assert!(r.all_equal, "{l}: {r:?}");
            }
        }
    }

    #[test]
    fn report_json() {
        let r = verify_theorem(&p21(), &part![1, 1, 1]).unwrap();
        let j = r.to_json();
        assert_eq!(j["signedSum"], 4);
        assert_eq!(j["tableauCount"], 4);
        assert_eq!(j["grothCoeff"], "4");
        assert_eq!(j["allEqual"], true);
    }
}

//! Classical bases, conversion between them, the Hall inner product and
//! layered expansion in filtered (inhomogeneous) families.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::ktheory;
use crate::linalg;
use crate::partition::Partition;
use crate::series::{Coeff, TruncatedSeries};

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BasisId {
    Monomial,
    AugmentedMonomial,
    Elementary,
    Homogeneous,
    PowerSum,
    Schur,
    Grothendieck,
    DualGrothendieck,
    KMonomial,
    KElementaryTableau,
    KElementaryGraph,
    KPower,
}

impl BasisId {
    pub const ALL: [BasisId; 12] = [
        BasisId::Monomial,
        BasisId::AugmentedMonomial,
        BasisId::Elementary,
        BasisId::Homogeneous,
        BasisId::PowerSum,
        BasisId::Schur,
        BasisId::Grothendieck,
        BasisId::DualGrothendieck,
        BasisId::KMonomial,
        BasisId::KElementaryTableau,
        BasisId::KElementaryGraph,
        BasisId::KPower,
    ];

    pub const CLASSICAL: [BasisId; 6] = [
        BasisId::Monomial,
        BasisId::AugmentedMonomial,
        BasisId::Elementary,
        BasisId::Homogeneous,
        BasisId::PowerSum,
        BasisId::Schur,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            BasisId::Monomial => "m",
            BasisId::AugmentedMonomial => "maug",
            BasisId::Elementary => "e",
            BasisId::Homogeneous => "h",
            BasisId::PowerSum => "p",
            BasisId::Schur => "s",
            BasisId::Grothendieck => "gs",
            BasisId::DualGrothendieck => "gsd",
            BasisId::KMonomial => "km",
            BasisId::KElementaryTableau => "ket",
            BasisId::KElementaryGraph => "keg",
            BasisId::KPower => "kp",
        }
    }

    pub fn is_classical(self) -> bool {
        BasisId::CLASSICAL.contains(&self)
    }
}

impl fmt::Display for BasisId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for BasisId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        BasisId::ALL
            .into_iter()
            .find(|b| b.as_str() == s)
            .ok_or_else(|| Error::UnknownBasis(s.to_string()))
    }
}

/// The `m`-expansion of a classical basis element, truncated at `cap`.
///
/// Classical elements are homogeneous, so the result is exact whenever
/// `|λ| ≤ cap` and empty otherwise.
pub fn generator(basis: BasisId, lambda: &Partition, cap: usize) -> Result<TruncatedSeries> {
    if !basis.is_classical() {
        return Err(Error::UnsupportedBasis(basis));
    }
    if lambda.size() > cap {
        return Ok(TruncatedSeries::zero(cap, false));
    }
    Ok(homogeneous_element(basis, lambda).truncate(cap))
}

/// Any basis element by id. Classical and K-theoretic families alike.
pub fn generator_any(basis: BasisId, lambda: &Partition, cap: usize) -> Result<TruncatedSeries> {
    match basis {
        b if b.is_classical() => generator(b, lambda, cap),
        BasisId::Grothendieck => Ok(ktheory::groth_s(lambda, cap)),
        BasisId::DualGrothendieck => Ok(ktheory::dual_groth_s(lambda)),
        BasisId::KMonomial => Ok(ktheory::k_monomial(lambda, cap)),
        BasisId::KElementaryTableau => Ok(ktheory::k_elem_tableau(lambda, cap)),
        BasisId::KElementaryGraph => Ok(ktheory::k_elem_graph(lambda, cap)),
        BasisId::KPower => Ok(ktheory::k_power_product(lambda, cap)),
        _ => unreachable!("every basis id is covered"),
    }
}

type Cache<K, V> = OnceLock<Mutex<HashMap<K, V>>>;

fn cached<K, V>(cache: &'static Cache<K, V>, key: K, make: impl FnOnce() -> V) -> V
where
    K: std::hash::Hash + Eq,
    V: Clone,
{
    let map = cache.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(v) = map.lock().expect("cache lock").get(&key) {
        return v.clone();
    }
    let v = make();
    map.lock().expect("cache lock").insert(key, v.clone());
    v
}

/// Exact `m`-expansion of a classical element, capped at its own degree.
fn homogeneous_element(basis: BasisId, lambda: &Partition) -> Arc<TruncatedSeries> {
    static CACHE: Cache<(BasisId, Partition), Arc<TruncatedSeries>> = OnceLock::new();
    cached(&CACHE, (basis, lambda.clone()), || {
        let d = lambda.size();
        let series = match basis {
            BasisId::Monomial => TruncatedSeries::monomial(lambda.clone(), d),
            BasisId::AugmentedMonomial => TruncatedSeries::monomial(lambda.clone(), d)
                .scale(&Coeff::from_integer(lambda.augmentation_factor())),
            BasisId::Schur => schur(lambda),
            BasisId::Elementary | BasisId::Homogeneous | BasisId::PowerSum => lambda
                .parts()
                .iter()
                .map(|&n| one_row(basis, n))
                .fold(TruncatedSeries::one(0), |acc, f| acc.multiply(&f)),
            _ => unreachable!("classical bases only"),
        };
        Arc::new(series.truncate(d))
    })
}

fn one_row(basis: BasisId, n: usize) -> TruncatedSeries {
    match basis {
        BasisId::Elementary => TruncatedSeries::monomial(Partition::column(n), n),
        BasisId::PowerSum => TruncatedSeries::monomial(Partition::rectangle(n, 1), n),
        BasisId::Homogeneous => TruncatedSeries::from_terms(
            n,
            true,
            Partition::all(n).into_iter().map(|mu| (mu, Coeff::one())),
        ),
        _ => unreachable!("one-row generators are e, h, p"),
    }
}

fn schur(lambda: &Partition) -> TruncatedSeries {
    let d = lambda.size();
    let mut memo = HashMap::new();
    let terms = Partition::all(d).into_iter().map(|mu| {
        let k = kostka(lambda, mu.parts(), &mut memo);
        (mu, Coeff::from_integer(k))
    });
    TruncatedSeries::from_terms(d, true, terms)
}

/// Number of semistandard tableaux of shape `lambda` and content `content`.
///
/// The cells holding the largest entry form a horizontal strip along the
/// outer rim, so we peel one strip per entry.
pub fn kostka(
    lambda: &Partition,
    content: &[usize],
    memo: &mut HashMap<(Partition, Vec<usize>), BigInt>,
) -> BigInt {
    let Some((&last, rest)) = content.split_last() else {
        return if lambda.is_empty() {
            BigInt::one()
        } else {
            BigInt::zero()
        };
    };
    if lambda.size() != content.iter().sum::<usize>() {
        return BigInt::zero();
    }
    let key = (lambda.clone(), content.to_vec());
    if let Some(v) = memo.get(&key) {
        return v.clone();
    }
    let mut total = BigInt::zero();
    let mut inner = vec![0usize; lambda.len()];
    strips(lambda, 0, last, &mut inner, &mut |nu| {
        total += kostka(nu, rest, memo);
    });
    memo.insert(key, total.clone());
    total
}

/// Calls `f` for every `ν ⊆ λ` with `λ/ν` a horizontal strip of `size`.
fn strips(
    lambda: &Partition,
    row: usize,
    size: usize,
    inner: &mut Vec<usize>,
    f: &mut dyn FnMut(&Partition),
) {
    if row == lambda.len() {
        if size == 0 {
            f(&Partition::from_parts(inner.clone()));
        }
        return;
    }
    let hi = lambda.part(row);
    let lo = lambda.part(row + 1);
    for keep in (lo..=hi).rev() {
        let removed = hi - keep;
        if removed > size {
            break;
        }
        inner[row] = keep;
        strips(lambda, row + 1, size - removed, inner, f);
    }
}

/// Rows `μ ⊢ d`, columns `λ ⊢ d`: the `m_μ` coefficient of `b_λ`.
fn basis_matrix(basis: BasisId, d: usize) -> Arc<Vec<Vec<Coeff>>> {
    static CACHE: Cache<(BasisId, usize), Arc<Vec<Vec<Coeff>>>> = OnceLock::new();
    cached(&CACHE, (basis, d), || {
        let parts = Partition::all(d);
        let columns: Vec<Arc<TruncatedSeries>> = parts
            .iter()
            .map(|l| homogeneous_element(basis, l))
            .collect();
        let rows = parts
            .iter()
            .map(|mu| columns.iter().map(|c| c.coeff(mu)).collect())
            .collect();
        Arc::new(rows)
    })
}

/// Expands `f` in a classical basis, degree by degree up to its cap.
pub fn convert_classical(
    f: &TruncatedSeries,
    target: BasisId,
) -> Result<BTreeMap<Partition, Coeff>> {
    if !target.is_classical() {
        return Err(Error::UnsupportedBasis(target));
    }
    let mut out = BTreeMap::new();
    let top = f.max_degree().unwrap_or(0).min(f.cap());
    for d in 0..=top {
        let part = f.degree_part(d);
        if part.is_zero() {
            continue;
        }
        let parts = Partition::all(d);
        let rhs: Vec<Coeff> = parts.iter().map(|mu| part.coeff(mu)).collect();
        let x = linalg::solve(&basis_matrix(target, d), &rhs)
            .ok_or(Error::SingularSystem { degree: d })?;
        out.extend(parts.into_iter().zip(x).filter(|(_, c)| !c.is_zero()));
    }
    Ok(out)
}

/// `⟨f, g⟩` with `⟨h_λ, m_μ⟩ = δ_{λμ}`.
///
/// One operand must be exact, and the other must be known at least up to
/// the top degree of the exact one; otherwise the pairing would silently
/// miss terms.
pub fn hall_inner(f: &TruncatedSeries, g: &TruncatedSeries) -> Result<Coeff> {
    let (exact, other) = match (f.is_exact(), g.is_exact()) {
        (true, _) => (f, g),
        (false, true) => (g, f),
        (false, false) => return Err(Error::NoExactOperand),
    };
    let need = exact.max_degree().unwrap_or(0);
    if !other.is_exact() && other.cap() < need {
        return Err(Error::InsufficientCap {
            need,
            have: other.cap(),
        });
    }
    let h = convert_classical(&exact.truncate(need), BasisId::Homogeneous)?;
    Ok(h.iter().map(|(l, c)| c * other.coeff(l)).sum())
}

/// Expands `f` in a filtered family `b̄_λ` whose lowest-degree parts are a
/// homogeneous basis, solving one degree layer at a time up to `cap`.
pub fn expand_filtered(
    f: &TruncatedSeries,
    family: &dyn Fn(&Partition, usize) -> Result<TruncatedSeries>,
    cap: usize,
) -> Result<BTreeMap<Partition, Coeff>> {
    if !f.is_exact() && f.cap() < cap {
        return Err(Error::InsufficientCap {
            need: cap,
            have: f.cap(),
        });
    }
    let mut rem = f.truncate(cap);
    let mut out = BTreeMap::new();
    for d in 0..=cap {
        if rem.min_degree().is_some_and(|lo| lo < d) {
            return Err(Error::NonTriangular { degree: d });
        }
        let layer = rem.degree_part(d);
        if layer.is_zero() {
            continue;
        }
        let parts = Partition::all(d);
        let members = parts
            .iter()
            .map(|l| family(l, cap))
            .collect::<Result<Vec<_>>>()?;
        if members
            .iter()
            .any(|m| m.min_degree().is_some_and(|lo| lo < d))
        {
            return Err(Error::NonTriangular { degree: d });
        }
        let matrix: Vec<Vec<Coeff>> = parts
            .iter()
            .map(|mu| members.iter().map(|m| m.coeff(mu)).collect())
            .collect();
        let rhs: Vec<Coeff> = parts.iter().map(|mu| layer.coeff(mu)).collect();
        let x = linalg::solve(&matrix, &rhs).ok_or(Error::NonTriangular { degree: d })?;
        for ((lambda, c), member) in parts.into_iter().zip(x).zip(&members) {
            if c.is_zero() {
                continue;
            }
            rem = rem.add_scaled(member, &-c.clone());
            out.insert(lambda, c);
        }
    }
    Ok(out)
}

/// [`expand_filtered`] over one of the built-in families.
pub fn expand_in(
    f: &TruncatedSeries,
    basis: BasisId,
    cap: usize,
) -> Result<BTreeMap<Partition, Coeff>> {
    if basis == BasisId::DualGrothendieck {
        return Err(Error::UnsupportedBasis(basis));
    }
    expand_filtered(f, &|l, d| generator_any(basis, l, d), cap)
}

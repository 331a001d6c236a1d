//! Degree-truncated symmetric series stored in the monomial basis.
//!
//! A [`TruncatedSeries`] with cap `D` knows every `m_λ` coefficient with
//! `|λ| ≤ D`. When `exact` is set the series is additionally known to have
//! no terms above `D`, which makes it a genuine (bounded-degree) symmetric
//! function rather than a truncation of an infinite series.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::partition::Partition;

pub type Coeff = BigRational;

pub fn coeff(n: i64) -> Coeff {
    Coeff::from_integer(BigInt::from(n))
}

/// `num/den` in lowest terms, or just `num` for integers.
pub fn format_coeff(c: &Coeff) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

pub fn parse_coeff(s: &str) -> Result<Coeff> {
    let bad = || Error::Parse(format!("bad coefficient `{s}`"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Coeff::new(n, d))
        }
        None => Ok(Coeff::from_integer(s.trim().parse().map_err(|_| bad())?)),
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    cap: usize,
    exact: bool,
    terms: BTreeMap<Partition, Coeff>,
}

impl TruncatedSeries {
    pub fn zero(cap: usize, exact: bool) -> Self {
        TruncatedSeries {
            cap,
            exact,
            terms: BTreeMap::new(),
        }
    }

    /// The constant series 1, exact.
    pub fn one(cap: usize) -> Self {
        TruncatedSeries::monomial(Partition::empty(), cap)
    }

    /// `m_λ` as an exact series; empty and inexact if `|λ| > cap`.
    pub fn monomial(lambda: Partition, cap: usize) -> Self {
        let exact = lambda.size() <= cap;
        TruncatedSeries::from_terms(cap, exact, [(lambda, Coeff::one())])
    }

    /// Builds a series, dropping zeros and anything above `cap`.
    ///
    /// Dropping a nonzero term above the cap clears `exact`.
    pub fn from_terms(
        cap: usize,
        exact: bool,
        terms: impl IntoIterator<Item = (Partition, Coeff)>,
    ) -> Self {
        let mut out = TruncatedSeries::zero(cap, exact);
        for (lambda, c) in terms {
            if lambda.size() > cap {
                if !c.is_zero() {
                    out.exact = false;
                }
                continue;
            }
            out.add_term(lambda, c);
        }
        out
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn is_exact(&self) -> bool {
        self.exact
    }

    pub fn terms(&self) -> &BTreeMap<Partition, Coeff> {
        &self.terms
    }

    pub fn into_terms(self) -> BTreeMap<Partition, Coeff> {
        self.terms
    }

    pub fn coeff(&self, lambda: &Partition) -> Coeff {
        self.terms.get(lambda).cloned().unwrap_or_else(Coeff::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn min_degree(&self) -> Option<usize> {
        self.terms.keys().next().map(Partition::size)
    }

    pub fn max_degree(&self) -> Option<usize> {
        self.terms.keys().next_back().map(Partition::size)
    }

    /// Adds `c` to the coefficient of `m_λ`. Terms above the cap are ignored.
    pub fn add_term(&mut self, lambda: Partition, c: Coeff) {
        if lambda.size() > self.cap || c.is_zero() {
            return;
        }
        match self.terms.entry(lambda) {
            Entry::Vacant(slot) => {
                slot.insert(c);
            }
            Entry::Occupied(mut slot) => {
                *slot.get_mut() += c;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    /// The homogeneous degree-`d` part, as an exact series.
    pub fn degree_part(&self, d: usize) -> TruncatedSeries {
        let terms = self
            .terms
            .iter()
            .filter(|(l, _)| l.size() == d)
            .map(|(l, c)| (l.clone(), c.clone()));
        TruncatedSeries::from_terms(self.cap.max(d), true, terms)
    }

    /// Lowers the cap to `d`. An exact series may also be re-capped upward.
    pub fn truncate(&self, d: usize) -> TruncatedSeries {
        let cap = if self.exact { d } else { self.cap.min(d) };
        let fits = self.max_degree().is_none_or(|m| m <= d);
        let terms = self
            .terms
            .iter()
            .filter(|(l, _)| l.size() <= cap)
            .map(|(l, c)| (l.clone(), c.clone()));
        let mut out = TruncatedSeries::from_terms(cap, self.exact && fits, terms);
        out.exact = self.exact && fits;
        out
    }

    pub fn scale(&self, c: &Coeff) -> TruncatedSeries {
        if c.is_zero() {
            return TruncatedSeries::zero(self.cap, self.exact);
        }
        TruncatedSeries {
            cap: self.cap,
            exact: self.exact,
            terms: self.terms.iter().map(|(l, v)| (l.clone(), v * c)).collect(),
        }
    }

    pub fn add(&self, other: &TruncatedSeries) -> TruncatedSeries {
        self.add_scaled(other, &Coeff::one())
    }

    pub fn sub(&self, other: &TruncatedSeries) -> TruncatedSeries {
        self.add_scaled(other, &-Coeff::one())
    }

    /// `self + c·other`, with the cap rule shared by all binary operations.
    pub fn add_scaled(&self, other: &TruncatedSeries, c: &Coeff) -> TruncatedSeries {
        let (cap, exact) = sum_cap(self, other);
        let mut out = TruncatedSeries::zero(cap, exact);
        for (l, v) in &self.terms {
            out.add_term(l.clone(), v.clone());
        }
        for (l, v) in &other.terms {
            out.add_term(l.clone(), v * c);
        }
        out
    }

    /// Product in the ring of symmetric functions.
    ///
    /// The coefficient of `m_ν` in `f·g` is the coefficient of the monomial
    /// `x^ν`, i.e. the sum of `f[a]·g[ν−a]` over exponent vectors `a ≤ ν`;
    /// by symmetry each factor is read off at the sorted exponent vector.
    pub fn multiply(&self, other: &TruncatedSeries) -> TruncatedSeries {
        let (cap, exact) = product_cap(self, other);
        let mut out = TruncatedSeries::zero(cap, exact);
        let (Some(lo_f), Some(lo_g)) = (self.min_degree(), other.min_degree()) else {
            return out;
        };
        let hi_f = self.max_degree().unwrap_or(0);
        let hi_g = other.max_degree().unwrap_or(0);
        let lo = lo_f + lo_g;
        let hi = cap.min(hi_f + hi_g);
        for d in lo..=hi {
            for nu in Partition::all(d) {
                let c = monomial_product_coeff(&nu, self, other);
                out.add_term(nu, c);
            }
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(SeriesJson::from(self)).expect("series serializes")
    }

    pub fn from_json(value: &serde_json::Value) -> Result<Self> {
        let raw: SeriesJson =
            serde_json::from_value(value.clone()).map_err(|e| Error::Parse(e.to_string()))?;
        let mut terms = Vec::with_capacity(raw.terms.len());
        for t in raw.terms {
            terms.push((t.partition, parse_coeff(&t.coeff)?));
        }
        Ok(TruncatedSeries::from_terms(
            raw.degree_cap,
            raw.exact,
            terms,
        ))
    }

    /// True when every coefficient is nonnegative.
    pub fn is_nonnegative(&self) -> bool {
        self.terms.values().all(|c| !c.is_negative())
    }
}

fn sum_cap(a: &TruncatedSeries, b: &TruncatedSeries) -> (usize, bool) {
    match (a.exact, b.exact) {
        (true, true) => (a.cap.max(b.cap), true),
        (true, false) => (b.cap, false),
        (false, true) => (a.cap, false),
        (false, false) => (a.cap.min(b.cap), false),
    }
}

fn product_cap(a: &TruncatedSeries, b: &TruncatedSeries) -> (usize, bool) {
    match (a.exact, b.exact) {
        (true, true) => (a.cap + b.cap, true),
        (true, false) => (b.cap, false),
        (false, true) => (a.cap, false),
        (false, false) => (a.cap.min(b.cap), false),
    }
}

fn monomial_product_coeff(nu: &Partition, f: &TruncatedSeries, g: &TruncatedSeries) -> Coeff {
    let target = nu.parts();
    let mut total = Coeff::zero();
    let mut a = vec![0usize; target.len()];
    loop {
        let left = Partition::from_parts(a.clone());
        if let Some(cf) = f.terms.get(&left) {
            let rest: Vec<usize> = target.iter().zip(&a).map(|(t, x)| t - x).collect();
            if let Some(cg) = g.terms.get(&Partition::from_parts(rest)) {
                total += cf * cg;
            }
        }
        // odometer over 0..=target[i]
        let mut i = 0;
        loop {
            if i == a.len() {
                return total;
            }
            if a[i] < target[i] {
                a[i] += 1;
                break;
            }
            a[i] = 0;
            i += 1;
        }
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            write!(f, "0")?;
        }
        for (i, (l, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{}·m{}", format_coeff(c), l)?;
        }
        if !self.exact {
            write!(f, " + O(deg>{})", self.cap)?;
        }
        Ok(())
    }
}

impl fmt::Debug for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
struct SeriesJson {
    degree_cap: usize,
    exact: bool,
    terms: Vec<TermJson>,
}

#[derive(Serialize, Deserialize)]
pub struct TermJson {
    pub partition: Partition,
    pub coeff: String,
}

impl From<&TruncatedSeries> for SeriesJson {
    fn from(s: &TruncatedSeries) -> Self {
        SeriesJson {
            degree_cap: s.cap,
            exact: s.exact,
            terms: terms_json(&s.terms),
        }
    }
}

/// Serializes a coefficient map in canonical term order.
pub fn terms_json(terms: &BTreeMap<Partition, Coeff>) -> Vec<TermJson> {
    terms
        .iter()
        .map(|(l, c)| TermJson {
            partition: l.clone(),
            coeff: format_coeff(c),
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::part;

    fn m(lambda: Partition, cap: usize) -> TruncatedSeries {
        TruncatedSeries::monomial(lambda, cap)
    }

    #[test]
    fn square_of_m1() {
        let inexact = TruncatedSeries::from_terms(2, false, [(part![1], coeff(1))]);
        let sq = inexact.multiply(&inexact);
        let expected =
            TruncatedSeries::from_terms(2, false, [(part![2], coeff(1)), (part![1, 1], coeff(2))]);
        assert_eq!(sq, expected);
    }

    #[test]
    fn zero_annihilates() {
        let f = TruncatedSeries::from_terms(4, false, [(part![2, 1], coeff(5))]);
        let z = TruncatedSeries::zero(4, false);
        assert!(f.multiply(&z).is_zero());
    }

    #[test]
    fn monomial_products_against_polynomial_oracle() {
        // m_(1) * m_(1,1) = m_(2,1) + 3 m_(1,1,1), checked by expanding in
        // three variables by hand.
        let prod = m(part![1], 1).multiply(&m(part![1, 1], 2));
        assert_eq!(prod.coeff(&part![2, 1]), coeff(1));
        assert_eq!(prod.coeff(&part![1, 1, 1]), coeff(3));
        assert_eq!(prod.len(), 2);
        assert!(prod.is_exact());
    }

    #[test]
    fn cap_rules() {
        let exact = m(part![1], 1);
        let loose = TruncatedSeries::from_terms(5, false, [(part![2], coeff(1))]);
        let sum = exact.add(&loose);
        assert_eq!((sum.cap(), sum.is_exact()), (5, false));
        let prod = exact.multiply(&loose);
        assert_eq!((prod.cap(), prod.is_exact()), (5, false));
        let tight = TruncatedSeries::from_terms(3, false, [(part![1], coeff(1))]);
        assert_eq!(loose.add(&tight).cap(), 3);
        assert_eq!(loose.multiply(&tight).cap(), 3);
    }

    #[test]
    fn cancellation_removes_terms() {
        let a = TruncatedSeries::from_terms(3, true, [(part![2, 1], coeff(2))]);
        let diff = a.sub(&a);
        assert!(diff.is_zero());
    }

    #[test]
    fn json_round_trip_and_format() {
        let s = TruncatedSeries::from_terms(
            3,
            false,
            [
                (
                    part![1, 1, 1],
                    Coeff::new(BigInt::from(-3), BigInt::from(2)),
                ),
                (part![1], coeff(1)),
            ],
        );
        let v = s.to_json();
        assert_eq!(
            v.to_string(),
            r#"{"degreeCap":3,"exact":false,"terms":[{"partition":[1],"coeff":"1"},{"partition":[1,1,1],"coeff":"-3/2"}]}"#
        );
        assert_eq!(TruncatedSeries::from_json(&v).unwrap(), s);
    }

    #[test]
    fn truncation() {
        let s =
            TruncatedSeries::from_terms(4, true, [(part![1], coeff(1)), (part![2, 2], coeff(1))]);
        let t = s.truncate(3);
        assert_eq!((t.cap(), t.is_exact(), t.len()), (3, false, 1));
        let up = s.truncate(6);
        assert_eq!((up.cap(), up.is_exact(), up.len()), (6, true, 2));
    }
}

//! Truncated series `top · Σ c_{μ,δ} [δ] ∏ A^{-μ}` over `K_ℤ`.
//!
//! A term is keyed by the multiset `μ` of `A^{-1}` factors below the top and
//! an extra weight offset `δ`. Its height is `|μ|`, which equals the root
//! height of the weight drop whenever `δ = 0`. `depth` is the largest height
//! at which the stored coefficients are exact.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::monomial::{a_unchecked, omega2, KMonomial, Lattice};
use crate::error::{Error, Result};
use crate::quiver::VertexId;

/// Refuse products whose projected number of term pairs exceeds this.
pub const DEFAULT_BUDGET: usize = 10_000_000;

/// Below this many term pairs a product is always computed sequentially.
#[cfg(feature = "parallel")]
const PAR_THRESHOLD: usize = 20_000;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TermKey {
    pub mu: BTreeMap<VertexId, i64>,
    pub delta2: Vec<i64>,
}

impl TermKey {
    pub fn zero(n: usize) -> Self {
        TermKey { mu: BTreeMap::new(), delta2: vec![0; n] }
    }

    pub fn height(&self) -> usize {
        self.mu.values().sum::<i64>() as usize
    }

    fn combine(&self, other: &TermKey) -> TermKey {
        let mut mu = self.mu.clone();
        for (&v, &e) in &other.mu {
            *mu.entry(v).or_insert(0) += e;
        }
        let delta2 = self.delta2.iter().zip(&other.delta2).map(|(a, b)| a + b).collect();
        TermKey { mu, delta2 }
    }
}

#[derive(Debug, Clone)]
pub struct KSeries {
    lat: Arc<Lattice>,
    pub top: KMonomial,
    terms: BTreeMap<TermKey, BigInt>,
    pub depth: usize,
}

/// Writes `num = den · [δ] · ∏ A_v^{-μ_v}` with signed `μ`, if possible.
pub fn ratio_decompose(lat: &Lattice, num: &KMonomial, den: &KMonomial) -> Option<(BTreeMap<VertexId, i64>, Vec<i64>)> {
    let mut rho = num.div(den).psi;
    let mut mu: BTreeMap<VertexId, i64> = BTreeMap::new();
    let floor = rho.keys().map(|v| v.r).min().unwrap_or(0);
    while let Some(top_r) = rho.keys().map(|v| v.r).max() {
        // Every A^{-1}_{i,s} has its lowest Ψ at s−2 uncancelled, so s ≥ floor + 2.
        if top_r - 2 < floor + 2 {
            return None;
        }
        let row: Vec<(VertexId, i64)> = rho.iter().filter(|(v, _)| v.r == top_r).map(|(&v, &e)| (v, e)).collect();
        for (v, e) in row {
            let s = VertexId::new(v.i, top_r - 2);
            if !lat.in_v(s.i, s.r) {
                return None;
            }
            *mu.entry(s).or_insert(0) += e;
            let a_inv = a_unchecked(lat, s.i, s.r).inv();
            for (&u, &x) in &a_inv.psi {
                let y = rho.entry(u).or_insert(0);
                *y -= e * x;
                if *y == 0 {
                    rho.remove(&u);
                }
            }
        }
    }
    mu.retain(|_, e| *e != 0);
    let mut delta2: Vec<i64> = num.lam2.iter().zip(&den.lam2).map(|(a, b)| a - b).collect();
    for (v, e) in &mu {
        for (d, a) in delta2.iter_mut().zip(lat.alpha2(v.i)) {
            *d += e * a;
        }
    }
    Some((mu, delta2))
}

/// The monomial `∏ A_v^{-μ_v}`.
pub fn a_inverse_product(lat: &Lattice, mu: &BTreeMap<VertexId, i64>) -> KMonomial {
    mu.iter()
        .fold(KMonomial::one(lat.n), |acc, (v, &e)| acc.mul(&a_unchecked(lat, v.i, v.r).pow(-e)))
}

impl KSeries {
    pub fn monomial(lat: &Arc<Lattice>, top: KMonomial, depth: usize) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(TermKey::zero(lat.n), BigInt::one());
        KSeries { lat: lat.clone(), top, terms, depth }
    }

    pub fn one(lat: &Arc<Lattice>, depth: usize) -> Self {
        Self::monomial(lat, KMonomial::one(lat.n), depth)
    }

    pub fn zero(lat: &Arc<Lattice>, top: KMonomial, depth: usize) -> Self {
        KSeries { lat: lat.clone(), top, terms: BTreeMap::new(), depth }
    }

    pub fn lattice(&self) -> &Arc<Lattice> {
        &self.lat
    }

    pub fn terms(&self) -> impl Iterator<Item = (&TermKey, &BigInt)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, key: &TermKey) -> BigInt {
        self.terms.get(key).cloned().unwrap_or_default()
    }

    /// Coefficient of the monomial `top · ∏A^{-μ}`.
    pub fn coeff_mu(&self, mu: &[(usize, i64, i64)]) -> BigInt {
        let mut key = TermKey::zero(self.lat.n);
        for &(i, r, e) in mu {
            *key.mu.entry(VertexId::new(i, r)).or_insert(0) += e;
        }
        self.coefficient(&key)
    }

    pub fn add_term(&mut self, key: TermKey, c: BigInt) {
        if c.is_zero() || key.height() > self.depth {
            return;
        }
        let e = self.terms.entry(key.clone()).or_default();
        *e += c;
        if e.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn truncate(&self, d: usize) -> KSeries {
        let depth = self.depth.min(d);
        KSeries {
            lat: self.lat.clone(),
            top: self.top.clone(),
            terms: self.terms.iter().filter(|(k, _)| k.height() <= depth).map(|(k, c)| (k.clone(), c.clone())).collect(),
            depth,
        }
    }

    pub fn neg(&self) -> KSeries {
        let mut s = self.clone();
        s.terms.values_mut().for_each(|c| *c = -c.clone());
        s
    }

    pub fn scale_monomial(&self, m: &KMonomial) -> KSeries {
        let mut s = self.clone();
        s.top = s.top.mul(m);
        s
    }

    pub fn scale_int(&self, k: &BigInt) -> KSeries {
        let mut s = self.clone();
        if k.is_zero() {
            s.terms.clear();
        } else {
            s.terms.values_mut().for_each(|c| *c *= k);
        }
        s
    }

    /// Spectral translation `q^r ↦ q^{r+2k}` of every factor.
    pub fn shift(&self, k: i64) -> KSeries {
        let mv = |mu: &BTreeMap<VertexId, i64>| mu.iter().map(|(v, &e)| (VertexId::new(v.i, v.r + 2 * k), e)).collect();
        KSeries {
            lat: self.lat.clone(),
            top: self.top.shift(k),
            terms: self
                .terms
                .iter()
                .map(|(key, c)| (TermKey { mu: mv(&key.mu), delta2: key.delta2.clone() }, c.clone()))
                .collect(),
            depth: self.depth,
        }
    }

    /// Multiplies by `[−Ω(top.psi)]`.
    pub fn renormalize(&self) -> KSeries {
        let mut psi_part = self.top.clone();
        psi_part.lam2.iter_mut().for_each(|x| *x = 0);
        let mut s = self.clone();
        s.top.add_lam2(&omega2(&psi_part), -1);
        s
    }

    /// Re-expresses the series below `new_top`, which must dominate the
    /// current top by a nonnegative product of `A`'s.
    pub fn rebase(&self, new_top: &KMonomial) -> Result<KSeries> {
        let (mu, delta2) = ratio_decompose(&self.lat, &self.top, new_top)
            .ok_or_else(|| Error::Series(format!("{} is not below {}", self.top, new_top)))?;
        if mu.values().any(|&e| e < 0) {
            return Err(Error::Series(format!("{} is not below {}", self.top, new_top)));
        }
        let off = TermKey { mu, delta2 };
        let depth = self.depth + off.height();
        let mut out = KSeries::zero(&self.lat, new_top.clone(), depth);
        for (k, c) in &self.terms {
            out.terms.insert(k.combine(&off), c.clone());
        }
        Ok(out)
    }

    /// The smallest monomial dominating both tops.
    fn join_top(&self, other: &KSeries) -> Result<KMonomial> {
        let (nu, _) = ratio_decompose(&self.lat, &other.top, &self.top)
            .ok_or_else(|| Error::Series(format!("incomparable tops {} and {}", self.top, other.top)))?;
        let lift: BTreeMap<VertexId, i64> = nu.into_iter().filter(|(_, e)| *e < 0).collect();
        Ok(self.top.mul(&a_inverse_product(&self.lat, &lift)))
    }

    pub fn add(&self, other: &KSeries) -> Result<KSeries> {
        self.combine(other, false)
    }

    pub fn sub(&self, other: &KSeries) -> Result<KSeries> {
        self.combine(other, true)
    }

    fn combine(&self, other: &KSeries, negate: bool) -> Result<KSeries> {
        let (a, b) = if self.top == other.top {
            (self.clone(), other.clone())
        } else {
            let t = self.join_top(other)?;
            (self.rebase(&t)?, other.rebase(&t)?)
        };
        let mut out = a.truncate(b.depth);
        for (k, c) in b.terms {
            if k.height() <= out.depth {
                let c = if negate { -c } else { c };
                let e = out.terms.entry(k.clone()).or_default();
                *e += c;
                if e.is_zero() {
                    out.terms.remove(&k);
                }
            }
        }
        Ok(out)
    }

    pub fn mul(&self, other: &KSeries) -> Result<KSeries> {
        self.mul_budget(other, DEFAULT_BUDGET)
    }

    pub fn mul_budget(&self, other: &KSeries, budget: usize) -> Result<KSeries> {
        let depth = self.depth.min(other.depth);
        let pairs = self.terms.len().saturating_mul(other.terms.len());
        if pairs > budget {
            return Err(Error::Budget(budget));
        }
        let left: Vec<(&TermKey, &BigInt, usize)> =
            self.terms.iter().map(|(k, c)| (k, c, k.height())).filter(|x| x.2 <= depth).collect();
        let right: Vec<(&TermKey, &BigInt, usize)> =
            other.terms.iter().map(|(k, c)| (k, c, k.height())).filter(|x| x.2 <= depth).collect();
        let partial = |chunk: &[(&TermKey, &BigInt, usize)]| {
            let mut acc: BTreeMap<TermKey, BigInt> = BTreeMap::new();
            for (ka, ca, ha) in chunk {
                for (kb, cb, hb) in &right {
                    if ha + hb <= depth {
                        *acc.entry(ka.combine(kb)).or_default() += *ca * *cb;
                    }
                }
            }
            acc
        };
        let terms = multiply_terms(&left, pairs, partial);
        let mut out = KSeries::zero(&self.lat, self.top.mul(&other.top), depth);
        out.terms = terms.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        Ok(out)
    }

    pub fn pow(&self, k: usize) -> Result<KSeries> {
        let mut acc = KSeries::one(&self.lat, self.depth);
        for _ in 0..k {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// Inverse of a series whose height-zero part is `±top`.
    pub fn invert(&self) -> Result<KSeries> {
        let n = self.lat.n;
        let c0 = self.coefficient(&TermKey::zero(n));
        if !(c0.abs().is_one()) || self.terms.keys().any(|k| k.height() == 0 && *k != TermKey::zero(n)) {
            return Err(Error::Series("leading part is not a unit".into()));
        }
        // self = c0·top·(1 + S) with S of height ≥ 1
        let mut s = KSeries::zero(&self.lat, KMonomial::one(n), self.depth);
        for (k, c) in &self.terms {
            if k.height() > 0 {
                s.terms.insert(k.clone(), c * &c0);
            }
        }
        let minus_s = s.neg();
        let mut acc = KSeries::one(&self.lat, self.depth);
        let mut power = KSeries::one(&self.lat, self.depth);
        for _ in 0..self.depth {
            power = power.mul(&minus_s)?;
            if power.is_zero() {
                break;
            }
            acc = acc.add(&power)?;
        }
        Ok(acc.scale_int(&c0).scale_monomial(&self.top.inv()))
    }

    /// `None` if `self` and `other` agree on every height up to `d`,
    /// otherwise a description of the first differing monomial.
    pub fn first_difference(&self, other: &KSeries, d: usize) -> Result<Option<String>> {
        let diff = self.sub(other)?;
        let bound = d.min(diff.depth);
        Ok(diff.terms.iter().find(|(k, _)| k.height() <= bound).map(|(k, c)| {
            format!("coefficient {} at {}", c, diff.monomial_of(k))
        }))
    }

    pub fn eq_to(&self, other: &KSeries, d: usize) -> Result<bool> {
        Ok(self.first_difference(other, d)?.is_none())
    }

    pub fn monomial_of(&self, k: &TermKey) -> KMonomial {
        let mut m = self.top.mul(&a_inverse_product(&self.lat, &k.mu));
        m.add_lam2(&k.delta2, 1);
        m
    }

    /// All terms as explicit monomials.
    pub fn expand(&self) -> Vec<(KMonomial, BigInt)> {
        self.terms.iter().map(|(k, c)| (self.monomial_of(k), c.clone())).collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        let terms: Vec<serde_json::Value> = self
            .expand()
            .into_iter()
            .map(|(m, c)| {
                let mut j = m.to_json();
                j["coef"] = serde_json::Value::String(c.to_string());
                j
            })
            .collect();
        serde_json::json!({ "top": self.top.to_json(), "terms": terms, "depth": self.depth })
    }

    pub fn from_json(lat: &Arc<Lattice>, v: &serde_json::Value) -> Result<KSeries> {
        let bad = || Error::Json("malformed series".into());
        let top = KMonomial::from_json(v.get("top").ok_or_else(bad)?)?;
        let depth = v.get("depth").and_then(|d| d.as_u64()).ok_or_else(bad)? as usize;
        let mut out = KSeries::zero(lat, top, depth);
        for t in v.get("terms").and_then(|t| t.as_array()).ok_or_else(bad)? {
            let m = KMonomial::from_json(t)?;
            let coef: BigInt = match t.get("coef").ok_or_else(bad)? {
                serde_json::Value::String(s) => s.parse().map_err(|_| bad())?,
                serde_json::Value::Number(x) => BigInt::from(x.as_i64().ok_or_else(bad)?),
                _ => return Err(bad()),
            };
            let (mu, delta2) = ratio_decompose(lat, &m, &out.top).ok_or_else(bad)?;
            if mu.values().any(|&e| e < 0) {
                return Err(Error::Json(format!("term {m} lies above the top")));
            }
            out.add_term(TermKey { mu, delta2 }, coef);
        }
        Ok(out)
    }
}

#[cfg(feature = "parallel")]
fn multiply_terms<'a, F>(left: &'a [(&'a TermKey, &'a BigInt, usize)], pairs: usize, partial: F) -> BTreeMap<TermKey, BigInt>
where
    F: Fn(&[(&'a TermKey, &'a BigInt, usize)]) -> BTreeMap<TermKey, BigInt> + Sync,
{
    use rayon::prelude::*;
    if pairs < PAR_THRESHOLD || left.len() < 2 {
        return partial(left);
    }
    let chunk = left.len().div_ceil(rayon::current_num_threads() * 4).max(1);
    left.par_chunks(chunk).map(&partial).reduce(BTreeMap::new, |mut a, b| {
        for (k, c) in b {
            *a.entry(k).or_default() += c;
        }
        a
    })
}

#[cfg(not(feature = "parallel"))]
fn multiply_terms<'a, F>(left: &'a [(&'a TermKey, &'a BigInt, usize)], _pairs: usize, partial: F) -> BTreeMap<TermKey, BigInt>
where
    F: Fn(&[(&'a TermKey, &'a BigInt, usize)]) -> BTreeMap<TermKey, BigInt>,
{
    partial(left)
}

/// `Σ⁺_{i,q^r} = 1 + A^{-1}_{i,r} + A^{-1}_{i,r}A^{-1}_{i,r−2} + ⋯`.
pub fn sigma_plus(lat: &Arc<Lattice>, i: usize, r: i64, d: usize) -> Result<KSeries> {
    lat.check(i, r)?;
    let mut s = KSeries::one(lat, d);
    let mut key = TermKey::zero(lat.n);
    for k in 0..d as i64 {
        key.mu.insert(VertexId::new(i, r - 2 * k), 1);
        s.terms.insert(key.clone(), BigInt::one());
    }
    Ok(s)
}

impl PartialEq for KSeries {
    fn eq(&self, other: &Self) -> bool {
        self.top == other.top && self.terms == other.terms && self.depth == other.depth
    }
}

impl fmt::Display for KSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}·(", self.top)?;
        for (n, (k, c)) in self.terms.iter().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c}")?;
            for (v, e) in &k.mu {
                write!(f, "·A⁻¹{v}")?;
                if *e != 1 {
                    write!(f, "^{e}")?;
                }
            }
            if k.delta2.iter().any(|&x| x != 0) {
                write!(f, "·[{:?}/2]", k.delta2)?;
            }
        }
        write!(f, " + O({}))", self.depth + 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qseries::monomial::monomial_a;
    use crate::rootsys::RootSystem;

    fn lat(name: &str) -> Arc<Lattice> {
        Lattice::new(&RootSystem::parse(name).unwrap())
    }

    fn one_plus(l: &Arc<Lattice>, i: usize, r: i64, sign: i64, d: usize) -> KSeries {
        let mut s = KSeries::one(l, d);
        let mut k = TermKey::zero(l.n);
        k.mu.insert(VertexId::new(i, r), 1);
        s.add_term(k, BigInt::from(sign));
        s
    }

    #[test]
    fn difference_of_squares() {
        let l = lat("A1");
        let p = one_plus(&l, 1, 0, 1, 3).mul(&one_plus(&l, 1, 0, -1, 3)).unwrap();
        let mut expect = KSeries::one(&l, 3);
        expect.add_term(TermKey { mu: BTreeMap::from([(VertexId::new(1, 0), 2)]), delta2: vec![0] }, BigInt::from(-1));
        assert_eq!(p, expect);
    }

    #[test]
    fn sigma_plus_and_inverse() {
        let l = lat("A2");
        assert_eq!(sigma_plus(&l, 1, 0, 0).unwrap(), KSeries::one(&l, 0));
        let s = sigma_plus(&l, 1, 0, 2).unwrap();
        assert_eq!(s.num_terms(), 3);
        assert_eq!(s.coeff_mu(&[(1, 0, 1), (1, -2, 1)]), BigInt::one());
        let inv = sigma_plus(&l, 2, 1, 5).unwrap().invert().unwrap();
        let prod = inv.mul(&sigma_plus(&l, 2, 1, 5).unwrap()).unwrap();
        assert_eq!(prod, KSeries::one(&l, 5));
    }

    #[test]
    fn tops_are_decomposed_against_each_other() {
        let l = lat("A3");
        let a = monomial_a(&l, 2, 1).unwrap().mul(&monomial_a(&l, 1, 0).unwrap());
        let top = KMonomial::psi(3, 2, 3);
        let low = top.div(&a);
        let (mu, delta2) = ratio_decompose(&l, &low, &top).unwrap();
        assert_eq!(mu, BTreeMap::from([(VertexId::new(1, 0), 1), (VertexId::new(2, 1), 1)]));
        assert!(delta2.iter().all(|&x| x == 0));
        assert!(ratio_decompose(&l, &KMonomial::psi(3, 1, 0), &top).is_none());
    }

    #[test]
    fn sums_with_different_tops_rebase() {
        let l = lat("A1");
        let x = KSeries::monomial(&l, KMonomial::one(1), 2);
        let y = KSeries::monomial(&l, a_unchecked(&l, 1, 0).inv(), 2);
        let s = x.add(&y).unwrap();
        assert_eq!(s.top, KMonomial::one(1));
        assert_eq!(s.depth, 2);
        assert_eq!(s.num_terms(), 2);
        let t = y.add(&x).unwrap();
        assert_eq!(t.top, KMonomial::one(1));
        assert_eq!(t.depth, 2);
    }

    #[test]
    fn json_round_trip() {
        let l = lat("A2");
        let s = sigma_plus(&l, 1, 0, 3).unwrap().scale_monomial(&KMonomial::psi(2, 2, 1)).renormalize();
        assert_eq!(KSeries::from_json(&l, &s.to_json()).unwrap(), s);
    }
}

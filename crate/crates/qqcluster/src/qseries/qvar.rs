//! Renormalized Q-variables `Q̲_{w(ϖ_i),q^r}` computed by bootstrapping the
//! QQ-relation, with a shared get-or-compute cache.
//!
//! For `λ = w s_i(ϖ_i)` with `w(α_i) > 0` the unknown `X = Q̲_λ` solves
//! `X(r)·B(r−2) − X(r−2)·B(r) = R(r)` where `B = Q̲_{w(ϖ_i)}` and
//! `R(r) = ∏_{j∼i} Q̲_{w(ϖ_j),r−1}`. The top of `X` is forced by the tops of
//! `B` and `R`; below it, the coefficient of `X` at height `k` equals the
//! residual at height `k` because `X(r−2)·B(r)` starts strictly lower.

use std::collections::{BTreeMap, HashMap};
use std::hash::Hash;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;

use super::monomial::{omega2, renormalize_monomial, KMonomial, Lattice};
use super::series::{KSeries, TermKey, DEFAULT_BUDGET};
use crate::cert::Certificate;
use crate::error::{Error, Result};
use crate::gvector::{braid_form, theta_word, GVec};
use crate::quiver::{CoxeterQuiver, VertexId, WindowedQuiver};
use crate::rootsys::{is_reduced, RootSystem};

type Slot = Arc<OnceLock<Result<Arc<KSeries>>>>;

fn slot<K: Hash + Eq + Clone>(map: &Mutex<HashMap<K, Slot>>, key: &K) -> Slot {
    map.lock().expect("cache poisoned").entry(key.clone()).or_default().clone()
}

/// One QQ-relation instance: `w·s_i` reduced, `(i,r)` in V.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct QqInstance {
    pub w: Vec<usize>,
    pub i: usize,
    pub r: i64,
}

/// Every `(w,i,r)` with `w` a prefix of one of `words`, `w·s_i` reduced and
/// `r ∈ [r_lo, r_hi]` of the right parity. Sorted and deduplicated.
pub fn qq_instances(rs: &RootSystem, words: &[Vec<usize>], r_lo: i64, r_hi: i64) -> Result<Vec<QqInstance>> {
    let lat = Lattice::new(rs);
    let mut out = std::collections::BTreeSet::new();
    for word in words {
        for len in 0..=word.len() {
            let w = &word[..len];
            for i in 1..=rs.n {
                let mut ws = w.to_vec();
                ws.push(i);
                if !is_reduced(rs, &ws)? {
                    continue;
                }
                for r in r_lo..=r_hi {
                    if lat.check(i, r).is_ok() {
                        out.insert(QqInstance { w: w.to_vec(), i, r });
                    }
                }
            }
        }
    }
    Ok(out.into_iter().collect())
}

/// `Ψ_{w(ϖ_i),q^r}`: exponents read off `θ_{i_1}⋯θ_{i_k}(e_{(i,r)})`.
pub fn hw_monomial(rs: &RootSystem, word: &[usize], i: usize, r: i64) -> Result<KMonomial> {
    rs.check_node(i)?;
    for &j in word {
        rs.check_node(j)?;
    }
    if !is_reduced(rs, word)? {
        return Err(Error::NotReduced(word.to_vec()));
    }
    let g = theta_word(rs, word, &GVec::unit(VertexId::new(i, r)));
    let mut m = KMonomial::one(rs.n);
    for (v, c) in g.iter() {
        m.add_psi(v, c);
    }
    Ok(m)
}

/// Translates a renormalized series by `k` steps of `q^2`, keeping it
/// renormalized: `Q̲(r+2k) = [Ω(T(r)) − Ω(T(r+2k))] · Q̲(r)[k]`.
pub fn shift_renormalized(s: &KSeries, k: i64) -> KSeries {
    let mut psi_part = s.top.clone();
    psi_part.lam2.iter_mut().for_each(|x| *x = 0);
    let before = omega2(&psi_part);
    let after = omega2(&psi_part.shift(k));
    let mut out = s.shift(k);
    out.top.add_lam2(&before, 1);
    out.top.add_lam2(&after, -1);
    out
}

/// Walks a word letter by letter, recording `v(α_next)` for each prefix `v`.
/// Every record must be a positive root for the all-`Σ⁺` evaluation path.
#[derive(Debug, Clone)]
pub struct PathComponentState {
    rs: RootSystem,
    lat: Arc<Lattice>,
    pub prefix: Vec<usize>,
    pub records: Vec<(usize, Vec<i64>)>,
}

impl PathComponentState {
    pub fn new(rs: &RootSystem) -> Self {
        PathComponentState { rs: rs.clone(), lat: Lattice::new(rs), prefix: Vec::new(), records: Vec::new() }
    }

    pub fn push(&mut self, i: usize) -> Result<()> {
        self.rs.check_node(i)?;
        let img = self.lat.apply_word(&self.prefix, &self.lat.alpha2(i));
        let coords = self
            .rs
            .weight_to_root_coords(&crate::rootsys::Weight { coords2: img })
            .ok_or_else(|| Error::Series("image of a simple root is not in the root lattice".into()))?;
        if coords.iter().any(|&c| c < 0) {
            let mut w = self.prefix.clone();
            w.push(i);
            return Err(Error::NotReduced(w));
        }
        self.records.push((i, coords));
        self.prefix.push(i);
        Ok(())
    }

    pub fn walk(rs: &RootSystem, word: &[usize]) -> Result<Self> {
        let mut st = Self::new(rs);
        for &i in word {
            st.push(i)?;
        }
        Ok(st)
    }
}

/// One `F`-image: the vertex label `Q̲_{weight, q^r}` and the word it came from.
#[derive(Debug, Clone)]
pub struct FLabel {
    pub word: Vec<usize>,
    pub node: usize,
    pub lam2: Vec<i64>,
    pub r: i64,
    pub series: KSeries,
}

pub struct QEngine {
    rs: RootSystem,
    lat: Arc<Lattice>,
    depth: usize,
    budget: usize,
    by_weight: Mutex<HashMap<Vec<i64>, Slot>>,
    by_path: Mutex<HashMap<(Vec<usize>, usize), Slot>>,
}

impl QEngine {
    pub fn new(rs: &RootSystem, depth: usize) -> Self {
        Self::with_budget(rs, depth, DEFAULT_BUDGET)
    }

    pub fn with_budget(rs: &RootSystem, depth: usize, budget: usize) -> Self {
        QEngine {
            rs: rs.clone(),
            lat: Lattice::new(rs),
            depth,
            budget,
            by_weight: Mutex::new(HashMap::new()),
            by_path: Mutex::new(HashMap::new()),
        }
    }

    pub fn root_system(&self) -> &RootSystem {
        &self.rs
    }

    pub fn lattice(&self) -> &Arc<Lattice> {
        &self.lat
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    fn base(&self, i: usize) -> i64 {
        self.rs.class(i)
    }

    fn at(&self, base: &KSeries, i: usize, r: i64) -> Result<KSeries> {
        self.lat.check(i, r)?;
        Ok(shift_renormalized(base, (r - self.base(i)) / 2))
    }

    /// Node `i` and the descent word `w'` with `w'(ϖ_i) = λ`, choosing the
    /// smallest negative coordinate at each step.
    pub fn descent(&self, lam2: &[i64]) -> Result<(usize, Vec<usize>)> {
        let mut cur = lam2.to_vec();
        let mut word = Vec::new();
        while let Some(j) = cur.iter().position(|&x| x < 0) {
            cur = self.lat.reflect(j + 1, &cur);
            word.push(j + 1);
            if word.len() > self.rs.num_positive_roots() {
                return Err(Error::Precondition("weight is not in a finite Weyl orbit".into()));
            }
        }
        let nz: Vec<usize> = (0..cur.len()).filter(|&k| cur[k] != 0).collect();
        match nz.as_slice() {
            [k] if cur[*k] == 2 => Ok((k + 1, word)),
            _ => Err(Error::Precondition(format!("{lam2:?}/2 is not in the orbit of a fundamental weight"))),
        }
    }

    /// `Q̲_{λ,q^r}` via the canonical descent word of `λ`.
    pub fn q_bar(&self, lam2: &[i64], r: i64) -> Result<KSeries> {
        let (i, _) = self.descent(lam2)?;
        let base = self.q_bar_base(lam2)?;
        self.at(&base, i, r)
    }

    fn q_bar_base(&self, lam2: &[i64]) -> Result<Arc<KSeries>> {
        let s = slot(&self.by_weight, &lam2.to_vec());
        s.get_or_init(|| {
            let (i, word) = self.descent(lam2)?;
            if word.is_empty() {
                return Ok(Arc::new(self.prefundamental(i)));
            }
            let w = &word[..word.len() - 1];
            let b_lam = self.lat.apply_word(w, &self.lat.fundamental2(i));
            let b = self.q_bar_base(&b_lam)?;
            let mut rs_factors = Vec::new();
            for &j in self.lat.neighbors(i) {
                let lam = self.lat.apply_word(w, &self.lat.fundamental2(j));
                rs_factors.push((j, self.q_bar_base(&lam)?));
            }
            self.solve(&word, i, &b, &rs_factors).map(Arc::new)
        })
        .clone()
    }

    /// `Q̲_{w(ϖ_i),q^r}` following the given reduced word letter by letter.
    pub fn q_bar_word(&self, word: &[usize], i: usize, r: i64) -> Result<KSeries> {
        PathComponentState::walk(&self.rs, word)?;
        self.rs.check_node(i)?;
        let base = self.q_bar_path(word, i)?;
        self.at(&base, i, r)
    }

    /// The unrenormalized `Q_{w(ϖ_i),q^r} = [Ω(top)]·Q̲` along the given word.
    pub fn q_variable(&self, word: &[usize], i: usize, r: i64, d: usize) -> Result<KSeries> {
        let s = self.q_bar_word(word, i, r)?.truncate(d);
        let mut psi_part = s.top.clone();
        psi_part.lam2.iter_mut().for_each(|x| *x = 0);
        let mut out = s;
        out.top.add_lam2(&omega2(&psi_part), 1);
        Ok(out)
    }

    fn q_bar_path(&self, word: &[usize], i: usize) -> Result<Arc<KSeries>> {
        let mut word = word;
        while let Some((&last, rest)) = word.split_last() {
            if last == i {
                break;
            }
            word = rest;
        }
        let s = slot(&self.by_path, &(word.to_vec(), i));
        s.get_or_init(|| {
            let Some((_, w)) = word.split_last() else {
                return Ok(Arc::new(self.prefundamental(i)));
            };
            let b = self.q_bar_path(w, i)?;
            let mut rs_factors = Vec::new();
            for &j in self.lat.neighbors(i) {
                rs_factors.push((j, self.q_bar_path(w, j)?));
            }
            self.solve(word, i, &b, &rs_factors).map(Arc::new)
        })
        .clone()
    }

    fn prefundamental(&self, i: usize) -> KSeries {
        let top = renormalize_monomial(&KMonomial::psi(self.rs.n, i, self.base(i)));
        KSeries::monomial(&self.lat, top, self.depth)
    }

    /// Solves for `X = Q̲_{w'(ϖ_i)}` at the base height of node `i`, where
    /// `w'` ends in `s_i`, given `B` and the neighbor factors at their own
    /// base heights.
    fn solve(&self, word: &[usize], i: usize, b: &KSeries, nbrs: &[(usize, Arc<KSeries>)]) -> Result<KSeries> {
        let r0 = self.base(i);
        let b0 = self.at(b, i, r0)?;
        let bm = self.at(b, i, r0 - 2)?;
        let mut rhs = KSeries::one(&self.lat, self.depth);
        for (j, q) in nbrs {
            rhs = rhs.mul_budget(&self.at(q, *j, r0 - 1)?, self.budget)?;
        }
        let top = rhs.top.div(&bm.top);
        let hw = hw_monomial(&self.rs, word, i, r0)?;
        if top.psi != hw.psi || top != renormalize_monomial(&hw) {
            return Err(Error::Series(format!("top {top} does not match the highest monomial {hw} for {word:?}")));
        }
        let mut x = KSeries::monomial(&self.lat, top, self.depth);
        for k in 0..=self.depth + 1 {
            let d = k.min(self.depth);
            let xk = x.truncate(d);
            let first = xk.mul_budget(&bm.truncate(d), self.budget)?;
            let second = shift_renormalized(&xk, -1).mul_budget(&b0.truncate(d), self.budget)?.rebase(&rhs.top)?;
            let res = rhs.truncate(d).sub(&first)?.add(&second)?.truncate(d);
            for (key, c) in res.terms() {
                let h = key.height();
                if h < k && h <= self.depth {
                    return Err(Error::Series(format!(
                        "QQ bootstrap for {word:?} inconsistent at height {h}: {c} at {}",
                        res.monomial_of(key)
                    )));
                }
            }
            if k > self.depth {
                break;
            }
            let updates: Vec<(TermKey, BigInt)> = res.terms().map(|(key, c)| (key.clone(), c.clone())).collect();
            for (key, c) in updates {
                if key.delta2.iter().any(|&z| z != 0) {
                    return Err(Error::Series(format!("weight-shifted residual in bootstrap for {word:?}")));
                }
                x.add_term(key, c);
            }
        }
        Ok(x)
    }

    /// QQ-relation at `(i,r)` for `w` with `w(α_i) > 0`.
    pub fn qq_check(&self, w: &[usize], i: usize, r: i64, d: usize) -> Result<Certificate> {
        let mut ws = w.to_vec();
        ws.push(i);
        if !is_reduced(&self.rs, &ws)? {
            return Err(Error::Precondition(format!("{ws:?} is not reduced")));
        }
        self.lat.check(i, r)?;
        let lat = &self.lat;
        let hi = lat.apply_word(&ws, &lat.fundamental2(i));
        let lo = lat.apply_word(w, &lat.fundamental2(i));
        let lhs = self
            .q_bar(&hi, r)?
            .mul_budget(&self.q_bar(&lo, r - 2)?, self.budget)?
            .sub(&self.q_bar(&hi, r - 2)?.mul_budget(&self.q_bar(&lo, r)?, self.budget)?)?;
        let mut rhs = KSeries::one(lat, self.depth);
        for &j in lat.neighbors(i) {
            rhs = rhs.mul_budget(&self.q_bar(&lat.apply_word(w, &lat.fundamental2(j)), r - 1)?, self.budget)?;
        }
        let named: Vec<String> = lat.neighbors(i).iter().map(|j| format!("Q̲(wϖ_{j},{})", r - 1)).collect();
        let rhs_text = if named.is_empty() { "1".to_string() } else { named.join("·") };
        let params = serde_json::json!({ "w": w, "i": i, "r": r, "depth": d, "rhs": rhs_text });
        Ok(Certificate::new("qq", params, compare(&lhs, &rhs, d)?))
    }

    /// [`QEngine::qq_check`] over `instances`, results in input order.
    pub fn qq_batch(&self, instances: &[QqInstance], d: usize) -> Vec<Result<Certificate>> {
        let run = |x: &QqInstance| self.qq_check(&x.w, x.i, x.r, d);
        #[cfg(feature = "parallel")]
        {
            use rayon::prelude::*;
            instances.par_iter().map(run).collect()
        }
        #[cfg(not(feature = "parallel"))]
        {
            instances.iter().map(run).collect()
        }
    }

    /// `Q̲_{ws_iϖ_i,r}Q̲_{ws_jϖ_j,r+1} = Q̲_{wϖ_i,r}Q̲_{ws_is_jϖ_j,r+1} + Q̲_{ws_js_iϖ_i,r}Q̲_{wϖ_j,r+1}`.
    pub fn qqstar_check(&self, w: &[usize], i: usize, j: usize, r: i64, d: usize) -> Result<Certificate> {
        if self.rs.c(i, j) != -1 {
            return Err(Error::Precondition(format!("nodes {i} and {j} are not adjacent")));
        }
        let mut long = w.to_vec();
        long.extend([i, j, i]);
        if !is_reduced(&self.rs, &long)? {
            return Err(Error::Precondition(format!("length of {long:?} is not ℓ(w)+3")));
        }
        self.lat.check(i, r)?;
        let lat = &self.lat;
        let wt = |extra: &[usize], k: usize| {
            let mut word = w.to_vec();
            word.extend_from_slice(extra);
            lat.apply_word(&word, &lat.fundamental2(k))
        };
        let q = |lam: Vec<i64>, s: i64| self.q_bar(&lam, s);
        let lhs = q(wt(&[i], i), r)?.mul_budget(&q(wt(&[j], j), r + 1)?, self.budget)?;
        let t1 = q(wt(&[], i), r)?.mul_budget(&q(wt(&[i, j], j), r + 1)?, self.budget)?;
        let t2 = q(wt(&[j, i], i), r)?.mul_budget(&q(wt(&[], j), r + 1)?, self.budget)?;
        let params = serde_json::json!({ "w": w, "i": i, "j": j, "r": r, "depth": d });
        Ok(Certificate::new("qqstar", params, compare(&lhs, &t1.add(&t2)?, d)?))
    }

    /// Labels of the Coxeter seed under `F`: a vertex whose stabilized
    /// g-vector is `θ_{i_1}⋯θ_{i_t}(e_{(i_t, top red)})[s]` gets
    /// `Q̲_{s_{i_1}⋯s_{i_t}(ϖ_{i_t}), q^{m+2s}}` with `m` the top red height.
    pub fn f_values(&self, cq: &CoxeterQuiver, g: &BTreeMap<VertexId, GVec>) -> Result<BTreeMap<VertexId, FLabel>> {
        let word: Vec<usize> = cq.data.sorting_word().iter().map(|x| x.0).collect();
        let mut out = BTreeMap::new();
        for (&v, gv) in g {
            let (t, s) = braid_form(&self.rs, &cq.data, v, gv)
                .ok_or_else(|| Error::Series(format!("g-vector at {v} is not of braid form")))?;
            let node = if t == 0 { v.i } else { word[t - 1] };
            let prefix = word[..t].to_vec();
            let r = -cq.data.lv(node) + 2 * s;
            let lam2 = self.lat.apply_word(&prefix, &self.lat.fundamental2(node));
            let series = self.q_bar(&lam2, r)?;
            out.insert(v, FLabel { word: prefix, node, lam2, r, series });
        }
        Ok(out)
    }

    /// Labels of a seed quiver `Γ_{i,r}` read off its columns: a vertex
    /// `(i,ρ)` with `k` green vertices of column `i` at or above it gets
    /// `Q̲_{v(ϖ_i), q^{ρ+2k}}`, where `v` is the prefix of `word` ending at the
    /// `k`-th occurrence of `i`.
    pub fn labels_from_word(&self, quiver: &WindowedQuiver, word: &[usize]) -> Result<BTreeMap<VertexId, FLabel>> {
        let greens = quiver.greens();
        let mut out = BTreeMap::new();
        for v in quiver.vertices() {
            let k = greens.iter().filter(|u| u.i == v.i && u.r >= v.r).count();
            let end = if k == 0 {
                0
            } else {
                word.iter()
                    .enumerate()
                    .filter(|(_, &j)| j == v.i)
                    .nth(k - 1)
                    .map(|(t, _)| t + 1)
                    .ok_or_else(|| Error::Precondition(format!("column {} has more greens than letters", v.i)))?
            };
            let prefix = word[..end].to_vec();
            let r = v.r + 2 * k as i64;
            let lam2 = self.lat.apply_word(&prefix, &self.lat.fundamental2(v.i));
            let series = self.q_bar(&lam2, r)?;
            out.insert(v, FLabel { word: prefix, node: v.i, lam2, r, series });
        }
        Ok(out)
    }
}

pub(crate) fn compare(lhs: &KSeries, rhs: &KSeries, d: usize) -> Result<Option<String>> {
    if lhs.depth.min(rhs.depth) < d {
        return Err(Error::Precondition(format!("series known only to depth {}", lhs.depth.min(rhs.depth))));
    }
    if lhs.top != rhs.top {
        return Ok(Some(format!("tops differ: {} vs {}", lhs.top, rhs.top)));
    }
    lhs.first_difference(rhs, d)
}

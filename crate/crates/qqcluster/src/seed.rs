//! Seeds carrying g-vectors and c-vectors relative to a mutable reference
//! seed, plus optional series values.
//!
//! Conventions: `G` has one column per cluster variable of `S`, indexed by the
//! vertices of the reference quiver. `C` is tracked so that `GᵀC = I` holds on
//! every window; a reference mutation `G ↦ E·G` (with `E` an involution)
//! therefore acts as `C ↦ EᵀC`, which changes only row `l`.

use std::collections::{BTreeMap, BTreeSet};

use serde_json::json;

use crate::cert::Certificate;
use crate::error::{Error, Result};
use crate::gvector::{knit, GVec};
use crate::linalg::{q, solve, Solution};
use crate::qseries::KSeries;
use crate::quiver::{mutate_quiver, CoxeterQuiver, VertexId, WindowedQuiver};
use crate::rootsys::RootSystem;

#[derive(Debug, Clone)]
pub struct Seed {
    /// The quiver of `S`.
    pub quiver: WindowedQuiver,
    /// The quiver of the current reference seed.
    pub reference: WindowedQuiver,
    pub g: BTreeMap<VertexId, GVec>,
    pub c: BTreeMap<VertexId, GVec>,
    pub values: Option<BTreeMap<VertexId, KSeries>>,
    /// Number of completed green sweeps of the reference.
    pub ref_tag: usize,
}

/// Tracked and recomputed signs of a c-vector.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SignCheck {
    pub tracked: i8,
    /// `None` when the expansion in reference columns is not unique on the window.
    pub recomputed: Option<i8>,
}

impl SignCheck {
    pub fn agrees(&self) -> bool {
        self.recomputed.is_none_or(|s| s == self.tracked)
    }
}

fn sign_of(v: &GVec) -> Option<i8> {
    if v.is_zero() {
        None
    } else if v.is_nonneg() {
        Some(1)
    } else if v.is_nonpos() {
        Some(-1)
    } else {
        None
    }
}

impl Seed {
    /// `S = Σ` with unit g- and c-vectors.
    pub fn new(quiver: WindowedQuiver) -> Self {
        let units: BTreeMap<VertexId, GVec> = quiver.vertices().map(|v| (v, GVec::unit(v))).collect();
        Seed { reference: quiver.clone(), quiver, g: units.clone(), c: units, values: None, ref_tag: 0 }
    }

    pub fn coxeter(cq: &CoxeterQuiver) -> Self {
        Self::new(cq.quiver.clone())
    }

    pub fn with_values(mut self, values: BTreeMap<VertexId, KSeries>) -> Self {
        self.values = Some(values);
        self
    }

    pub fn gvec(&self, v: VertexId) -> Result<&GVec> {
        self.g.get(&v).ok_or(Error::MissingVertex(v))
    }

    pub fn cvec(&self, v: VertexId) -> Result<&GVec> {
        self.c.get(&v).ok_or(Error::MissingVertex(v))
    }

    /// Every c-vector is nonzero with entries of one sign.
    pub fn check_sign_coherence(&self) -> Result<()> {
        for (v, c) in &self.c {
            if sign_of(c).is_none() {
                return Err(Error::Precondition(format!("c-vector of {v} is not sign-coherent: {c}")));
            }
        }
        Ok(())
    }

    /// Mutates the reference seed at `l`, transforming every g-vector by the
    /// sign-split rule and row `l` of `C` by the dual rule.
    pub fn mutate_reference(&mut self, l: VertexId) -> Result<()> {
        let next = mutate_quiver(&self.reference, l)?;
        let outs: Vec<(VertexId, u32)> = self.reference.out_neighbors(l).collect();
        let ins: Vec<(VertexId, u32)> = self.reference.in_neighbors(l).collect();
        let mut row_sign = 0i8;
        for g in self.g.values_mut() {
            let gl = g.get(l);
            if gl == 0 {
                continue;
            }
            let s = if gl > 0 { 1 } else { -1 };
            if row_sign != 0 && row_sign != s {
                return Err(Error::Precondition(format!("row {l} of G is not sign-uniform")));
            }
            row_sign = s;
            for &(v, k) in if gl > 0 { &outs } else { &ins } {
                g.add_term(v, i64::from(k) * gl);
            }
            g.add_term(l, -2 * gl);
        }
        let partners = if row_sign >= 0 { &outs } else { &ins };
        for c in self.c.values_mut() {
            let new_l = -c.get(l) + partners.iter().map(|&(v, k)| i64::from(k) * c.get(v)).sum::<i64>();
            c.add_term(l, new_l - c.get(l));
        }
        self.reference = next;
        Ok(())
    }

    /// Mutates the reference at all of its green vertices, checking
    /// sign-coherence after each step.
    pub fn green_sweep(&mut self) -> Result<()> {
        let greens = self.reference.greens();
        if greens.is_empty() {
            return Err(Error::Precondition("reference quiver has no green vertices".into()));
        }
        for &l in &greens {
            if !self.reference.is_interior(l) {
                return Err(Error::WindowTooSmall(format!("green {l} reached the window boundary")));
            }
        }
        for l in greens {
            self.mutate_reference(l)?;
            self.check_sign_coherence()?;
        }
        self.ref_tag += 1;
        Ok(())
    }

    /// Mutates `S` at `k`: quiver, g-vectors, c-vectors and values.
    pub fn mutate_seed(&mut self, k: VertexId) -> Result<()> {
        let next = mutate_quiver(&self.quiver, k)?;
        let eps = sign_of(self.cvec(k)?)
            .ok_or_else(|| Error::Precondition(format!("c-vector of {k} is not sign-coherent")))?;
        let ins: Vec<(VertexId, u32)> = self.quiver.in_neighbors(k).collect();
        let outs: Vec<(VertexId, u32)> = self.quiver.out_neighbors(k).collect();
        let (g_side, c_side) = if eps > 0 { (&ins, &ins) } else { (&outs, &outs) };

        let mut gstar = self.gvec(k)?.neg();
        for &(v, m) in g_side {
            gstar.add_scaled(self.gvec(v)?, i64::from(m));
        }
        let ck = self.cvec(k)?.clone();
        for &(j, m) in c_side {
            self.c.get_mut(&j).ok_or(Error::MissingVertex(j))?.add_scaled(&ck, i64::from(m));
        }
        self.c.insert(k, ck.neg());

        if let Some(values) = &self.values {
            let prod = |side: &[(VertexId, u32)]| -> Result<Option<KSeries>> {
                let mut acc: Option<KSeries> = None;
                for &(v, m) in side {
                    let x = values.get(&v).ok_or(Error::MissingVertex(v))?.pow(m as usize)?;
                    acc = Some(match acc {
                        None => x,
                        Some(a) => a.mul(&x)?,
                    });
                }
                Ok(acc)
            };
            let xk = values.get(&k).ok_or(Error::MissingVertex(k))?;
            let num = match (prod(&ins)?, prod(&outs)?) {
                (Some(a), Some(b)) => a.add(&b)?,
                (Some(a), None) | (None, Some(a)) => a.add(&KSeries::one(xk.lattice(), xk.depth))?,
                (None, None) => KSeries::one(xk.lattice(), xk.depth).scale_int(&2.into()),
            };
            let new = num.mul(&xk.invert()?)?;
            self.values.as_mut().expect("values present").insert(k, new);
        }
        self.g.insert(k, gstar);
        self.quiver = next;
        Ok(())
    }

    /// Recomputes the sign of the c-vector of `k` by expanding
    /// `Σ_v (M_{v→k} − M_{k→v}) g^v` in the columns of the reference exchange
    /// matrix, over the non-frozen reference vertices within `radius` of the
    /// expansion's support.
    pub fn cvec_sign_check(&self, k: VertexId, radius: i64) -> Result<SignCheck> {
        let tracked = sign_of(self.cvec(k)?)
            .ok_or_else(|| Error::Precondition(format!("c-vector of {k} is not sign-coherent")))?;
        let mut lhs = GVec::zero();
        for (v, m) in self.quiver.in_neighbors(k) {
            lhs.add_scaled(self.gvec(v)?, i64::from(m));
        }
        for (v, m) in self.quiver.out_neighbors(k) {
            lhs.add_scaled(self.gvec(v)?, -i64::from(m));
        }
        let support: Vec<VertexId> = lhs.support().chain(self.cvec(k)?.support()).collect();
        let (lo, hi) = match (support.iter().map(|v| v.r).min(), support.iter().map(|v| v.r).max()) {
            (Some(a), Some(b)) => (a - radius, b + radius),
            _ => return Ok(SignCheck { tracked, recomputed: None }),
        };
        let unknowns: Vec<VertexId> = self
            .reference
            .vertices()
            .filter(|v| (lo..=hi).contains(&v.r) && !self.reference.is_frozen(*v))
            .collect();
        let mut rows: BTreeSet<VertexId> = lhs.support().collect();
        for &u in &unknowns {
            rows.extend(self.reference.out_neighbors(u).map(|x| x.0));
            rows.extend(self.reference.in_neighbors(u).map(|x| x.0));
        }
        let rows: Vec<VertexId> = rows.into_iter().collect();
        let a: Vec<Vec<_>> = rows
            .iter()
            .map(|&l| unknowns.iter().map(|&u| q(self.reference.b(l, u))).collect())
            .collect();
        let b: Vec<_> = rows.iter().map(|&l| q(lhs.get(l))).collect();
        let recomputed = match solve(&a, &b) {
            Solution::Unique(x) => {
                let pos = x.iter().any(|t| t > &q(0));
                let neg = x.iter().any(|t| t < &q(0));
                match (pos, neg) {
                    (true, false) => Some(1),
                    (false, true) => Some(-1),
                    _ => None,
                }
            }
            _ => None,
        };
        Ok(SignCheck { tracked, recomputed })
    }

    /// `(GᵀC)_{uv} = δ_{uv}` for all pairs of the given columns.
    pub fn duality_holds(&self, cols: &[VertexId]) -> bool {
        cols.iter().all(|&u| {
            cols.iter().all(|&v| {
                let (gu, cv) = (&self.g[&u], &self.c[&v]);
                let dot: i64 = gu.iter().map(|(x, a)| a * cv.get(x)).sum();
                dot == i64::from(u == v)
            })
        })
    }

    pub fn to_json(&self) -> serde_json::Value {
        let enc = |m: &BTreeMap<VertexId, GVec>| -> serde_json::Map<String, serde_json::Value> {
            m.iter()
                .map(|(v, g)| {
                    let terms: Vec<[i64; 3]> = g.iter().map(|(u, c)| [u.i as i64, u.r, c]).collect();
                    (format!("{},{}", v.i, v.r), json!(terms))
                })
                .collect()
        };
        let mut j = serde_json::to_value(self.quiver.to_json()).expect("quiver serializes");
        j["g"] = json!(enc(&self.g));
        j["c"] = json!(enc(&self.c));
        j["ref_tag"] = json!(self.ref_tag);
        if let Some(values) = &self.values {
            let vals: serde_json::Map<String, serde_json::Value> =
                values.iter().map(|(v, s)| (format!("{},{}", v.i, v.r), s.to_json())).collect();
            j["values"] = json!(vals);
        }
        j
    }
}

/// Runs `sweeps` green sweeps from the Coxeter seed and compares the tracked
/// g-vectors with the knitted ones on every slice `m ≥ −sweeps` away from
/// the window edges. A sign or sign-uniformity violation fails the check.
pub fn sweep_check(rs: &RootSystem, cq: &CoxeterQuiver, sweeps: usize) -> Result<(Certificate, Seed)> {
    let stable = knit(cq)?;
    let mut s = Seed::coxeter(cq);
    let mut params = json!({
        "type": rs.dynkin_type.to_string(),
        "coxeter": cq.data.word,
        "sweeps": sweeps,
        "window": [cq.quiver.r_min, cq.quiver.r_max],
    });
    for k in 1..=sweeps {
        match s.green_sweep() {
            Ok(()) => {}
            Err(Error::Precondition(why)) => return Ok((Certificate::fail("seed-sweep", params, format!("sweep {k}: {why}")), s)),
            Err(e) => return Err(e),
        }
    }
    let mut compared = 0usize;
    for (&v, g) in &s.g {
        if cq.data.slice_of(v.i, v.r) < -(sweeps as i64) || !cq.quiver.is_interior(v) {
            continue;
        }
        if let Some(want) = stable.get(&v) {
            if want != g {
                return Ok((Certificate::fail("seed-sweep", params, format!("{v}: tracked {g}, stabilized {want}")), s));
            }
            compared += 1;
        }
    }
    params["compared"] = compared.into();
    Ok((Certificate::pass("seed-sweep", params), s))
}

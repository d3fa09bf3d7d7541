//! Laurent monomials `[λ]·∏ Ψ_{i,q^r}^{m}` and the derived `Y`, `A`, `Ψ̃`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quiver::VertexId;
use crate::rootsys::{RootSystem, Weight};

/// Cartan data shared by all series of one root system.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lattice {
    pub n: usize,
    neighbors: Vec<Vec<usize>>,
    class: Vec<i64>,
    cartan: Vec<Vec<i64>>,
}

impl Lattice {
    pub fn new(rs: &RootSystem) -> Arc<Self> {
        Arc::new(Lattice {
            n: rs.n,
            neighbors: (1..=rs.n).map(|i| rs.neighbors(i)).collect(),
            class: (1..=rs.n).map(|i| rs.class(i)).collect(),
            cartan: rs.cartan.clone(),
        })
    }

    pub fn neighbors(&self, i: usize) -> &[usize] {
        &self.neighbors[i - 1]
    }

    /// Whether `(i,r)` lies in the parity component `V`.
    pub fn in_v(&self, i: usize, r: i64) -> bool {
        (r - self.class[i - 1]).rem_euclid(2) == 0
    }

    pub fn check(&self, i: usize, r: i64) -> Result<()> {
        if i == 0 || i > self.n {
            return Err(Error::NodeOutOfRange { index: i, rank: self.n });
        }
        if !self.in_v(i, r) {
            return Err(Error::Parity { i, r });
        }
        Ok(())
    }

    /// `2α_i` in doubled fundamental-weight coordinates.
    pub fn alpha2(&self, i: usize) -> Vec<i64> {
        self.cartan[i - 1].iter().map(|c| 2 * c).collect()
    }

    /// `s_j` on a doubled weight.
    pub fn reflect(&self, j: usize, lam2: &[i64]) -> Vec<i64> {
        let k = lam2[j - 1];
        lam2.iter().zip(&self.cartan[j - 1]).map(|(x, c)| x - k * c).collect()
    }

    /// `s_{w_1}⋯s_{w_k}(λ)`, rightmost letter first.
    pub fn apply_word(&self, word: &[usize], lam2: &[i64]) -> Vec<i64> {
        word.iter().rev().fold(lam2.to_vec(), |acc, &j| self.reflect(j, &acc))
    }

    pub fn fundamental2(&self, i: usize) -> Vec<i64> {
        let mut v = vec![0; self.n];
        v[i - 1] = 2;
        v
    }
}

/// `[λ]·∏ Ψ_{i,q^r}^{psi[(i,r)]}` with `λ` stored doubled.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
pub struct KMonomial {
    pub lam2: Vec<i64>,
    pub psi: BTreeMap<VertexId, i64>,
}

impl KMonomial {
    pub fn one(n: usize) -> Self {
        KMonomial { lam2: vec![0; n], psi: BTreeMap::new() }
    }

    pub fn psi(n: usize, i: usize, r: i64) -> Self {
        let mut m = KMonomial::one(n);
        m.psi.insert(VertexId::new(i, r), 1);
        m
    }

    pub fn weight(n: usize, lam2: Vec<i64>) -> Self {
        debug_assert_eq!(lam2.len(), n);
        KMonomial { lam2, psi: BTreeMap::new() }
    }

    pub fn is_one(&self) -> bool {
        self.psi.is_empty() && self.lam2.iter().all(|&x| x == 0)
    }

    pub fn add_psi(&mut self, v: VertexId, e: i64) {
        if e == 0 {
            return;
        }
        let x = self.psi.entry(v).or_insert(0);
        *x += e;
        if *x == 0 {
            self.psi.remove(&v);
        }
    }

    pub fn add_lam2(&mut self, lam2: &[i64], k: i64) {
        for (a, b) in self.lam2.iter_mut().zip(lam2) {
            *a += k * b;
        }
    }

    pub fn mul(&self, other: &KMonomial) -> KMonomial {
        let mut m = self.clone();
        m.add_lam2(&other.lam2, 1);
        for (&v, &e) in &other.psi {
            m.add_psi(v, e);
        }
        m
    }

    pub fn pow(&self, k: i64) -> KMonomial {
        KMonomial {
            lam2: self.lam2.iter().map(|x| k * x).collect(),
            psi: self.psi.iter().filter(|_| k != 0).map(|(&v, &e)| (v, k * e)).collect(),
        }
    }

    pub fn inv(&self) -> KMonomial {
        self.pow(-1)
    }

    pub fn div(&self, other: &KMonomial) -> KMonomial {
        self.mul(&other.inv())
    }

    /// Spectral translation `q^r ↦ q^{r+2k}`; `λ` is untouched.
    pub fn shift(&self, k: i64) -> KMonomial {
        KMonomial {
            lam2: self.lam2.clone(),
            psi: self.psi.iter().map(|(&v, &e)| (VertexId::new(v.i, v.r + 2 * k), e)).collect(),
        }
    }

    /// The weight grading: `Ψ` has weight zero.
    pub fn grading(&self) -> Weight {
        Weight { coords2: self.lam2.clone() }
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let bad = || Error::Json("malformed monomial".into());
        let lam2 = v
            .get("lam2")
            .and_then(|x| x.as_array())
            .ok_or_else(bad)?
            .iter()
            .map(|x| x.as_i64().ok_or_else(bad))
            .collect::<Result<Vec<_>>>()?;
        let mut m = KMonomial { lam2, psi: BTreeMap::new() };
        for (k, e) in v.get("psi").and_then(|x| x.as_object()).ok_or_else(bad)? {
            let (i, r) = k.split_once(',').ok_or_else(bad)?;
            let v = VertexId::new(i.trim().parse().map_err(|_| bad())?, r.trim().parse().map_err(|_| bad())?);
            m.add_psi(v, e.as_i64().ok_or_else(bad)?);
        }
        Ok(m)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let psi: serde_json::Map<String, serde_json::Value> =
            self.psi.iter().map(|(v, e)| (format!("{},{}", v.i, v.r), (*e).into())).collect();
        serde_json::json!({ "lam2": self.lam2, "psi": psi })
    }
}

impl fmt::Display for KMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if self.lam2.iter().any(|&x| x != 0) {
            parts.push(format!("[{:?}/2]", self.lam2));
        }
        for (v, e) in &self.psi {
            parts.push(if *e == 1 { format!("Ψ{v}") } else { format!("Ψ{v}^{e}") });
        }
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join("·"))
        }
    }
}

/// `Ω(Ψ_{i,q^r}) = (r/2)ϖ_i`, extended multiplicatively; `Ω([λ]) = λ`.
/// Returned doubled.
pub fn omega2(m: &KMonomial) -> Vec<i64> {
    let mut w = m.lam2.clone();
    for (v, e) in &m.psi {
        w[v.i - 1] += e * v.r;
    }
    w
}

/// Multiplies by `[−Ω(top)]` restricted to the `Ψ` part, making the weight
/// of the monomial equal to minus the `Ω` of its `Ψ` part.
pub fn renormalize_monomial(m: &KMonomial) -> KMonomial {
    let mut psi_only = m.clone();
    psi_only.lam2.iter_mut().for_each(|x| *x = 0);
    let mut out = m.clone();
    out.add_lam2(&omega2(&psi_only), -1);
    out
}

/// `Y_{i,q^r} = [ϖ_i] Ψ_{i,q^{r−1}} Ψ_{i,q^{r+1}}^{-1}`.
pub fn monomial_y(lat: &Lattice, i: usize, r: i64) -> Result<KMonomial> {
    lat.check(i, r - 1)?;
    let mut m = KMonomial::weight(lat.n, lat.fundamental2(i));
    m.add_psi(VertexId::new(i, r - 1), 1);
    m.add_psi(VertexId::new(i, r + 1), -1);
    Ok(m)
}

/// `A_{i,q^r} = Y_{i,q^{r−1}} Y_{i,q^{r+1}} ∏_{j∼i} Y_{j,q^r}^{-1}`, i.e.
/// `[α_i] Ψ_{i,r−2} Ψ_{i,r+2}^{-1} ∏_{j∼i} Ψ_{j,r+1} Ψ_{j,r−1}^{-1}`.
pub fn monomial_a(lat: &Lattice, i: usize, r: i64) -> Result<KMonomial> {
    lat.check(i, r)?;
    Ok(a_unchecked(lat, i, r))
}

pub(crate) fn a_unchecked(lat: &Lattice, i: usize, r: i64) -> KMonomial {
    let mut m = KMonomial::weight(lat.n, lat.alpha2(i));
    m.add_psi(VertexId::new(i, r - 2), 1);
    m.add_psi(VertexId::new(i, r + 2), -1);
    for &j in lat.neighbors(i) {
        m.add_psi(VertexId::new(j, r + 1), 1);
        m.add_psi(VertexId::new(j, r - 1), -1);
    }
    m
}

/// `Ψ̃_{i,q^r} = Ψ_{i,q^r}^{-1} ∏_{j∼i} Ψ_{j,q^{r+1}}`.
pub fn monomial_psitilde(lat: &Lattice, i: usize, r: i64) -> Result<KMonomial> {
    lat.check(i, r)?;
    let mut m = KMonomial::one(lat.n);
    m.add_psi(VertexId::new(i, r), -1);
    for &j in lat.neighbors(i) {
        m.add_psi(VertexId::new(j, r + 1), 1);
    }
    Ok(m)
}

//! The group-algebra factors `χ_{w(ϖ_i)}`: series in `[−Q_+]` with constant
//! term 1, determined by `χ_{ϖ_i} = 1` and
//! `χ_{ws_i(ϖ_i)}·χ_{w(ϖ_i)} = ∏_{j∼i} χ_{w(ϖ_j)} / (1 − [−w(α_i)])`.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rootsys::{is_reduced, RootSystem, Weight};

/// `Σ c_γ [−γ]` over `γ ∈ Q_+` (root coordinates) with height `≤ depth`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChiSeries {
    pub n: usize,
    pub terms: BTreeMap<Vec<i64>, BigInt>,
    pub depth: usize,
}

fn height(g: &[i64]) -> usize {
    g.iter().sum::<i64>() as usize
}

impl ChiSeries {
    pub fn one(n: usize, depth: usize) -> Self {
        ChiSeries { n, terms: BTreeMap::from([(vec![0; n], BigInt::one())]), depth }
    }

    /// `1/(1 − [−β]) = Σ_k [−kβ]` for `β ∈ Q_+ \ {0}`.
    pub fn geometric(beta: &[i64], depth: usize) -> Result<Self> {
        if beta.iter().any(|&x| x < 0) || beta.iter().all(|&x| x == 0) {
            return Err(Error::Series(format!("{beta:?} is not a nonzero element of Q_+")));
        }
        let mut s = ChiSeries::one(beta.len(), depth);
        let mut k = 1;
        while height(beta) * k <= depth {
            s.terms.insert(beta.iter().map(|x| x * k as i64).collect(), BigInt::one());
            k += 1;
        }
        Ok(s)
    }

    pub fn coefficient(&self, gamma: &[i64]) -> BigInt {
        self.terms.get(gamma).cloned().unwrap_or_default()
    }

    pub fn mul(&self, other: &ChiSeries) -> ChiSeries {
        let depth = self.depth.min(other.depth);
        let mut terms: BTreeMap<Vec<i64>, BigInt> = BTreeMap::new();
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                let g: Vec<i64> = a.iter().zip(b).map(|(p, q)| p + q).collect();
                if height(&g) <= depth {
                    *terms.entry(g).or_default() += x * y;
                }
            }
        }
        terms.retain(|_, c| !c.is_zero());
        ChiSeries { n: self.n, terms, depth }
    }

    /// Inverse when the constant term is 1.
    pub fn invert(&self) -> Result<ChiSeries> {
        if self.coefficient(&vec![0; self.n]) != BigInt::one() {
            return Err(Error::Series("constant term is not 1".into()));
        }
        let mut minus_s = self.clone();
        minus_s.terms.remove(&vec![0; self.n]);
        minus_s.terms.values_mut().for_each(|c| *c = -c.clone());
        let mut acc = ChiSeries::one(self.n, self.depth);
        let mut power = ChiSeries::one(self.n, self.depth);
        for _ in 0..self.depth {
            power = power.mul(&minus_s);
            for (g, c) in &power.terms {
                *acc.terms.entry(g.clone()).or_default() += c;
            }
        }
        acc.terms.retain(|_, c| !c.is_zero());
        Ok(acc)
    }
}

fn root_coords(rs: &RootSystem, lam2: Vec<i64>) -> Result<Vec<i64>> {
    rs.weight_to_root_coords(&Weight { coords2: lam2 })
        .ok_or_else(|| Error::Series("not in the root lattice".into()))
}

/// `χ_{w(ϖ_i)}` by recursion along the given reduced word.
pub fn chi(rs: &RootSystem, word: &[usize], i: usize, d: usize) -> Result<ChiSeries> {
    rs.check_node(i)?;
    if !is_reduced(rs, word)? {
        return Err(Error::NotReduced(word.to_vec()));
    }
    let mut memo = HashMap::new();
    chi_rec(rs, word, i, d, &mut memo)
}

fn chi_rec(
    rs: &RootSystem,
    word: &[usize],
    i: usize,
    d: usize,
    memo: &mut HashMap<(Vec<usize>, usize), ChiSeries>,
) -> Result<ChiSeries> {
    let mut word = word;
    while let Some((&last, rest)) = word.split_last() {
        if last == i {
            break;
        }
        word = rest;
    }
    let Some((_, w)) = word.split_last() else {
        return Ok(ChiSeries::one(rs.n, d));
    };
    if let Some(c) = memo.get(&(word.to_vec(), i)) {
        return Ok(c.clone());
    }
    let lat = super::monomial::Lattice::new(rs);
    let beta = root_coords(rs, lat.apply_word(w, &lat.alpha2(i)))?;
    let mut acc = ChiSeries::geometric(&beta, d)?;
    for &j in lat.neighbors(i) {
        acc = acc.mul(&chi_rec(rs, w, j, d, memo)?);
    }
    let out = acc.mul(&chi_rec(rs, w, i, d, memo)?.invert()?);
    memo.insert((word.to_vec(), i), out.clone());
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn a1_reflection_is_geometric() {
        let rs = RootSystem::parse("A1").unwrap();
        let c = chi(&rs, &[1], 1, 6).unwrap();
        assert_eq!(c.terms.len(), 7);
        assert!(c.terms.values().all(|x| x.is_one()));
        assert_eq!(chi(&rs, &[], 1, 6).unwrap(), ChiSeries::one(1, 6));
    }

    #[test]
    fn a2_two_step_product() {
        let rs = RootSystem::parse("A2").unwrap();
        let expect = ChiSeries::geometric(&[1, 1], 6).unwrap().mul(&ChiSeries::geometric(&[0, 1], 6).unwrap());
        assert_eq!(chi(&rs, &[2, 1], 1, 6).unwrap(), expect);
    }

    #[test]
    fn independent_of_reduced_word() {
        let rs = RootSystem::parse("A3").unwrap();
        let w0 = rs.longest_element();
        let words = crate::rootsys::reduced_words(&rs, &w0, 4);
        for i in 1..=3 {
            let first = chi(&rs, &words[0], i, 5).unwrap();
            for w in &words[1..] {
                assert_eq!(chi(&rs, w, i, 5).unwrap(), first);
            }
        }
    }
}

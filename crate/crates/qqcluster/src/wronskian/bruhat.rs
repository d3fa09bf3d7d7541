use std::collections::{BTreeMap, HashMap};

use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use super::{m_index, perm_power, weight_set, word_perm};
use crate::cert::Certificate;
use crate::error::{Error, Result};
use crate::linalg::{identity, mat_mul, minor as qminor, q, QMatrix};

type Key = (Vec<usize>, Vec<usize>);

/// Attempts per trial before giving up on finding a usable point.
const MAX_RESAMPLE: usize = 64;

/// `L·D·U` with unit-triangular `L, U` and `det D = 1`, all parameters
/// small nonzero rationals, so the determinant is exactly one.
pub fn random_sl(size: usize, rng: &mut impl Rng) -> QMatrix {
    let mut param = || {
        let p = loop {
            let p = rng.gen_range(-4i64..=4);
            if p != 0 {
                break p;
            }
        };
        q(p) / q(rng.gen_range(1i64..=3))
    };
    let mut g = identity(size);
    for i in 1..size {
        for j in 0..i {
            let mut e = identity(size);
            e[i][j] = param();
            g = mat_mul(&g, &e);
        }
    }
    let mut dg = identity(size);
    let mut prod = BigRational::one();
    for k in 0..size - 1 {
        dg[k][k] = param();
        prod *= &dg[k][k];
    }
    dg[size - 1][size - 1] = prod.recip();
    g = mat_mul(&g, &dg);
    for i in 0..size {
        for j in i + 1..size {
            let mut e = identity(size);
            e[i][j] = param();
            g = mat_mul(&g, &e);
        }
    }
    g
}

/// `Δ_{w_0ϖ_i,ϖ_i} ≠ 0` and `Δ_{ϖ_i,w_0ϖ_i} ≠ 0` for every `i`.
pub fn in_open_cell(g: &QMatrix) -> bool {
    let size = g.len();
    (1..size).all(|i| {
        let (low, high): (Vec<usize>, Vec<usize>) = ((0..i).collect(), (size - i..size).collect());
        !qminor(g, &high, &low).is_zero() && !qminor(g, &low, &high).is_zero()
    })
}

fn permutations(size: usize) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = vec![vec![]];
    for _ in 0..size {
        let mut next = Vec::new();
        for p in &out {
            for x in (0..size).filter(|x| !p.contains(x)) {
                let mut q = p.clone();
                q.push(x);
                next.push(q);
            }
        }
        out = next;
    }
    out
}

/// `u·s_i` (apply `s_i` first).
fn times_s(u: &[usize], i: usize) -> Vec<usize> {
    let mut v = u.to_vec();
    v.swap(i - 1, i);
    v
}

/// One exchange identity `X·Y = Z·W + ∏P` between minors.
#[derive(Debug, Clone)]
struct Identity {
    x: Key,
    y: Key,
    z: Key,
    w: Key,
    p: Vec<Key>,
}

/// All instances of `Δ_{uϖ_i,vϖ_i}Δ_{us_iϖ_i,vs_iϖ_i} = Δ_{us_iϖ_i,vϖ_i}Δ_{uϖ_i,vs_iϖ_i} + ∏_{j∼i}Δ_{uϖ_j,vϖ_j}`
/// with `ℓ(us_i) = ℓ(u)+1` and `ℓ(vs_i) = ℓ(v)+1`.
fn exchange_identities(size: usize) -> Vec<Identity> {
    let perms = permutations(size);
    let mut out = Vec::new();
    for i in 1..size {
        let ascents: Vec<&Vec<usize>> = perms.iter().filter(|u| u[i - 1] < u[i]).collect();
        for u in &ascents {
            for v in &ascents {
                let (us, vs) = (times_s(u, i), times_s(v, i));
                let key = |a: &[usize], b: &[usize], k: usize| (weight_set(a, k), weight_set(b, k));
                let p = [i.wrapping_sub(1), i + 1].into_iter().filter(|&j| (1..size).contains(&j)).map(|j| key(u, v, j)).collect();
                out.push(Identity { x: key(u, v, i), y: key(&us, &vs, i), z: key(&us, v, i), w: key(u, &vs, i), p });
            }
        }
    }
    out
}

/// Minors `Δ_{c^kϖ_i, c^ℓϖ_i}` with `m_i − 1 ≤ k+ℓ ≤ m_i`, `c = s_1⋯s_n`.
fn seed_keys(size: usize) -> Vec<Key> {
    let c: Vec<usize> = (1..size).collect();
    let p = word_perm(&c, size);
    let mut out = Vec::new();
    for i in 1..size {
        let mi = m_index(&p, i);
        for k in 0..=mi {
            for l in 0..=mi {
                if k + l + 1 >= mi && k + l <= mi {
                    out.push((weight_set(&perm_power(&p, k), i), weight_set(&perm_power(&p, l), i)));
                }
            }
        }
    }
    out
}

/// Recovers every entry of a point of `SL(size)` from the values of the
/// initial cluster by propagating exchange identities. `None` if some entry
/// is unreachable because a needed divisor vanishes.
pub fn reconstruct(size: usize, cluster: &BTreeMap<Key, BigRational>) -> Option<QMatrix> {
    let mut known: HashMap<Key, BigRational> = cluster.iter().map(|(k, v)| (k.clone(), v.clone())).collect();
    let all: Vec<usize> = (0..size).collect();
    known.insert((all.clone(), all), BigRational::one());
    let ids = exchange_identities(size);
    loop {
        let mut progress = false;
        for id in &ids {
            progress |= propagate(id, &mut known);
        }
        let done = (0..size).all(|a| (0..size).all(|b| known.contains_key(&(vec![a], vec![b]))));
        if done {
            return Some((0..size).map(|a| (0..size).map(|b| known[&(vec![a], vec![b])].clone()).collect()).collect());
        }
        if !progress {
            return None;
        }
    }
}

/// Solves `id` for its single unknown, if exactly one is missing and the
/// division it requires is by a nonzero value.
fn propagate(id: &Identity, known: &mut HashMap<Key, BigRational>) -> bool {
    let slots: Vec<&Key> = [&id.x, &id.y, &id.z, &id.w].into_iter().chain(id.p.iter()).collect();
    let missing: Vec<usize> = (0..slots.len()).filter(|&s| !known.contains_key(slots[s])).collect();
    let [m] = missing.as_slice() else { return false };
    let val = |s: usize| known[slots[s]].clone();
    let prod_p = |skip: Option<usize>| {
        (4..slots.len()).filter(|&s| Some(s) != skip).fold(BigRational::one(), |acc, s| acc * val(s))
    };
    let (num, den) = match *m {
        0 => (val(2) * val(3) + prod_p(None), val(1)),
        1 => (val(2) * val(3) + prod_p(None), val(0)),
        2 => (val(0) * val(1) - prod_p(None), val(3)),
        3 => (val(0) * val(1) - prod_p(None), val(2)),
        s => (val(0) * val(1) - val(2) * val(3), prod_p(Some(s))),
    };
    if den.is_zero() {
        return false;
    }
    known.insert(slots[*m].clone(), num / den);
    true
}

/// Result of one sampled point.
#[derive(Debug, Clone)]
pub struct BruhatTrial {
    pub matrix: QMatrix,
    pub resamples: usize,
    pub failure: Option<String>,
}

fn check_point(g: &QMatrix, ids: &[Identity]) -> Option<String> {
    let size = g.len();
    let mut cache: HashMap<Key, BigRational> = HashMap::new();
    let mut m = |k: &Key| cache.entry(k.clone()).or_insert_with(|| qminor(g, &k.0, &k.1)).clone();
    for id in ids {
        let lhs = m(&id.x) * m(&id.y);
        let rhs = m(&id.z) * m(&id.w) + id.p.iter().fold(BigRational::one(), |acc, k| acc * m(k));
        if lhs != rhs {
            return Some(format!("exchange identity fails at {:?}·{:?}", id.x, id.y));
        }
    }
    if size == 3 {
        let d = |r: &[usize], c: &[usize]| qminor(g, r, c);
        let a = (d(&[0, 1], &[0, 1]) + d(&[0], &[1]) * d(&[1], &[0])) / d(&[1], &[1]);
        let f = (d(&[0, 1], &[1, 2]) + d(&[1], &[1]) * d(&[0], &[2])) / d(&[0], &[1]);
        let i = (d(&[1, 2], &[0, 1]) + d(&[2], &[0]) * d(&[1], &[1])) / d(&[1], &[0]);
        let ej = (d(&[1], &[1]) + d(&[0, 1], &[1, 2]) * d(&[1, 2], &[0, 1])) / d(&[0, 1], &[0, 1]);
        if a != g[0][0] || f != g[1][2] || i != g[2][1] || ej != d(&[1, 2], &[1, 2]) {
            return Some("SL(3) entry formulas fail".into());
        }
    }
    let cluster: BTreeMap<Key, BigRational> = seed_keys(size).into_iter().map(|k| {
        let v = m(&k);
        (k, v)
    }).collect();
    match reconstruct(size, &cluster) {
        Some(h) if h == *g => None,
        Some(_) => Some("reconstruction differs from the sampled point".into()),
        None => Some("reconstruction stalled".into()),
    }
}

fn usable(g: &QMatrix) -> bool {
    in_open_cell(g) && seed_keys(g.len()).iter().all(|k| !qminor(g, &k.0, &k.1).is_zero()) && {
        let size = g.len();
        let cluster = seed_keys(size).into_iter().map(|k| {
            let v = qminor(g, &k.0, &k.1);
            (k, v)
        }).collect();
        reconstruct(size, &cluster).is_some()
    }
}

fn one_trial(size: usize, seed: u64, trial: u64, ids: &[Identity]) -> Result<BruhatTrial> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    for resamples in 0..MAX_RESAMPLE {
        let g = random_sl(size, &mut rng);
        if usable(&g) {
            let failure = check_point(&g, ids);
            return Ok(BruhatTrial { matrix: g, resamples, failure });
        }
    }
    Err(Error::Precondition(format!("no usable point after {MAX_RESAMPLE} samples")))
}

/// Samples `trials` points of the open cell of `SL(n+1)` and checks, exactly,
/// every exchange identity between generalized minors and that the initial
/// cluster for `c = s_1⋯s_n` determines the point.
pub fn bruhat_minor_identity_check(n: usize, trials: usize, seed: u64) -> Result<Certificate> {
    if n < 2 {
        return Err(Error::Precondition("n must be at least 2".into()));
    }
    let size = n + 1;
    let ids = exchange_identities(size);
    let run = |t: u64| one_trial(size, seed, t, &ids);
    #[cfg(feature = "parallel")]
    let results: Vec<Result<BruhatTrial>> = {
        use rayon::prelude::*;
        (0..trials as u64).into_par_iter().map(run).collect()
    };
    #[cfg(not(feature = "parallel"))]
    let results: Vec<Result<BruhatTrial>> = (0..trials as u64).map(run).collect();
    let mut resamples = 0;
    let params = json!({ "n": n, "trials": trials, "seed": seed, "identities": ids.len() });
    for (t, res) in results.into_iter().enumerate() {
        let tr = res?;
        resamples += tr.resamples;
        if let Some(why) = tr.failure {
            return Ok(Certificate::fail("bruhat", params, format!("trial {t}: {why}")));
        }
    }
    let mut params = params;
    params["resamples"] = json!(resamples);
    Ok(Certificate::pass("bruhat", params))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::det;

    #[test]
    fn identity_is_outside_cell() {
        assert!(!in_open_cell(&identity(3)));
    }

    #[test]
    fn lewis_carroll_instance_is_listed() {
        let ids = exchange_identities(3);
        let hit = ids.iter().any(|id| {
            id.x == (vec![0, 1], vec![0, 1]) && id.y == (vec![1, 2], vec![1, 2]) && id.p == vec![(vec![1], vec![1])]
        });
        assert!(hit);
    }

    #[test]
    fn seed_is_the_eight_minor_cluster() {
        let keys = seed_keys(3);
        assert_eq!(keys.len(), 8);
        for k in [(vec![2], vec![0]), (vec![0, 1], vec![1, 2]), (vec![1, 2], vec![0, 1]), (vec![0], vec![2])] {
            assert!(keys.contains(&k));
        }
        assert_eq!(seed_keys(4).len(), 15);
    }

    #[test]
    fn sampled_points_have_unit_determinant() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for size in [3, 4] {
            assert!(det(&random_sl(size, &mut rng)).is_one());
        }
    }

    #[test]
    fn small_batches_pass_and_repeat() {
        let a = bruhat_minor_identity_check(2, 5, 11).unwrap();
        assert!(a.pass, "{a:?}");
        assert_eq!(a, bruhat_minor_identity_check(2, 5, 11).unwrap());
        assert!(bruhat_minor_identity_check(3, 3, 11).unwrap().pass);
    }
}

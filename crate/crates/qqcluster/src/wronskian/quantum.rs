use std::collections::HashMap;

use serde_json::json;

use super::{m_index, perm_power, weight_set, word_perm};
use crate::cert::Certificate;
use crate::error::{Error, Result};
use crate::qseries::{KSeries, QEngine};
use crate::rootsys::{coxeter_data_from_word, DynkinType, RootSystem};

/// `g(q^r)` with entry `(k,ℓ) = Q̲_{c^ℓ(ϖ_1), q^{r+2k}}`, `c = s_1⋯s_n`.
#[derive(Debug, Clone)]
pub struct SeriesMatrix {
    pub r: i64,
    pub depth: usize,
    pub entries: Vec<Vec<KSeries>>,
}

impl SeriesMatrix {
    pub fn size(&self) -> usize {
        self.entries.len()
    }
}

fn type_a(rs: &RootSystem) -> Result<usize> {
    match rs.dynkin_type {
        DynkinType::A(n) => Ok(n),
        t => Err(Error::Unsupported(format!("{t}: Wronskians need ordinary minors"))),
    }
}

fn standard_word(n: usize) -> Vec<usize> {
    (1..=n).collect()
}

pub fn build_wronskian(engine: &QEngine, r: i64) -> Result<SeriesMatrix> {
    let n = type_a(engine.root_system())?;
    let lat = engine.lattice();
    let c = standard_word(n);
    let mut entries = Vec::with_capacity(n + 1);
    for k in 0..=n as i64 {
        let mut row = Vec::with_capacity(n + 1);
        let mut word = Vec::new();
        for _ in 0..=n {
            row.push(engine.q_bar(&lat.apply_word(&word, &lat.fundamental2(1)), r + 2 * k)?);
            word.extend_from_slice(&c);
        }
        entries.push(row);
    }
    Ok(SeriesMatrix { r, depth: engine.depth(), entries })
}

fn join(acc: Option<KSeries>, term: KSeries, negate: bool) -> Result<Option<KSeries>> {
    Ok(Some(match acc {
        None if negate => term.neg(),
        None => term,
        Some(a) if negate => a.sub(&term)?,
        Some(a) => a.add(&term)?,
    }))
}

/// Laplace expansion along the first listed row; `rows` and `cols` are
/// 0-based and must have equal length.
pub fn minor(m: &SeriesMatrix, rows: &[usize], cols: &[usize]) -> Result<KSeries> {
    let mut memo = HashMap::new();
    minor_memo(m, rows, cols, &mut memo)
}

type MinorMemo = HashMap<(Vec<usize>, Vec<usize>), KSeries>;

fn minor_memo(m: &SeriesMatrix, rows: &[usize], cols: &[usize], memo: &mut MinorMemo) -> Result<KSeries> {
    if rows.len() != cols.len() || rows.is_empty() {
        return Err(Error::Precondition(format!("minor on rows {rows:?} and columns {cols:?}")));
    }
    let key = (rows.to_vec(), cols.to_vec());
    if let Some(s) = memo.get(&key) {
        return Ok(s.clone());
    }
    let out = if rows.len() == 1 {
        m.entries[rows[0]][cols[0]].clone()
    } else {
        let mut acc = None;
        for (t, &c) in cols.iter().enumerate() {
            let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
            let sub = minor_memo(m, &rows[1..], &rest, memo)?;
            acc = join(acc, m.entries[rows[0]][c].mul(&sub)?, t % 2 == 1)?;
        }
        acc.expect("nonempty expansion")
    };
    memo.insert(key, out.clone());
    Ok(out)
}

/// Agreement to depth `d` measured from the common top. Incomparable tops
/// count as a difference.
fn differ(a: &KSeries, b: &KSeries, d: usize) -> Result<Option<String>> {
    if a.depth.min(b.depth) < d {
        return Err(Error::Precondition(format!("series known only to depth {}", a.depth.min(b.depth))));
    }
    match a.first_difference(b, d) {
        Err(Error::Series(why)) => Ok(Some(why)),
        other => other,
    }
}

/// Wronskian equations for the Coxeter word `c` on the standard matrices:
/// `Δ_{c^kϖ_i, c^ℓϖ_i}(g(q^r)) = Δ_{c^{k−1}ϖ_i, c^ℓϖ_i}(g(q^{r+2}))`.
fn equations(c: &[usize], g: &SeriesMatrix, g2: &SeriesMatrix, d: usize) -> Result<Option<String>> {
    let size = g.size();
    let p = word_perm(c, size);
    let (mut m1, mut m2) = (HashMap::new(), HashMap::new());
    for i in 1..size {
        let mi = m_index(&p, i);
        for k in 1..=mi {
            for l in 0..=mi {
                let cols = weight_set(&perm_power(&p, l), i);
                let lhs = minor_memo(g, &weight_set(&perm_power(&p, k), i), &cols, &mut m1)?;
                let rhs = minor_memo(g2, &weight_set(&perm_power(&p, k - 1), i), &cols, &mut m2)?;
                if let Some(why) = differ(&lhs, &rhs, d)? {
                    return Ok(Some(format!("i={i} k={k} l={l}: {why}")));
                }
            }
        }
    }
    Ok(None)
}

/// Wronskian equations for an arbitrary Coxeter word, evaluated on the
/// matrices built from `s_1⋯s_n`. Used as a negative control.
pub fn check_wronskian_for(engine: &QEngine, c: &[usize], rs_range: &[i64], d: usize) -> Result<Certificate> {
    let n = type_a(engine.root_system())?;
    coxeter_data_from_word(engine.root_system(), c)?;
    let params = json!({ "type": format!("A{n}"), "coxeter": c, "r": rs_range, "depth": d });
    for &r in rs_range {
        let (g, g2) = (build_wronskian(engine, r)?, build_wronskian(engine, r + 2)?);
        if let Some(why) = equations(c, &g, &g2, d)? {
            return Ok(Certificate::fail("wronskian-equations", params, format!("r={r} {why}")));
        }
    }
    Ok(Certificate::pass("wronskian-equations", params))
}

/// For `c = s_1⋯s_n` and each `r`: `det g(q^r) = 1`, the Wronskian
/// equations, and every minor `Δ_{c^kϖ_i, c^ℓϖ_i}(g(q^r))`
/// (`0 ≤ k,ℓ ≤ m_i`) equal to `Q̲_{c^ℓ(ϖ_i), q^{2+R+2(k−m_i)−l_c(i)}}` with
/// `R = r + l_c(1) + 2m_1 − 2`, compared against the series engine.
pub fn check_wronskian(engine: &QEngine, rs_range: &[i64], d: usize) -> Result<Certificate> {
    let rs = engine.root_system();
    let n = type_a(rs)?;
    let c = standard_word(n);
    let data = coxeter_data_from_word(rs, &c)?;
    let p = word_perm(&c, n + 1);
    let lat = engine.lattice();
    let params = json!({ "type": format!("A{n}"), "coxeter": c, "r": rs_range, "depth": d });
    let fail = |why: String| Ok(Certificate::fail("wronskian", params.clone(), why));
    let all: Vec<usize> = (0..=n).collect();
    for &r in rs_range {
        let (g, g2) = (build_wronskian(engine, r)?, build_wronskian(engine, r + 2)?);
        let mut memo = HashMap::new();
        let det = minor_memo(&g, &all, &all, &mut memo)?;
        if let Some(why) = differ(&det, &KSeries::one(lat, d), d)? {
            return fail(format!("r={r} det≠1: {why}"));
        }
        if let Some(why) = equations(&c, &g, &g2, d)? {
            return fail(format!("r={r} {why}"));
        }
        let big_r = r + data.l_c[0] + 2 * data.m[0] as i64 - 2;
        for i in 1..=n {
            let mi = data.m[i - 1];
            for k in 0..=mi {
                for l in 0..=mi {
                    let got = minor_memo(&g, &weight_set(&perm_power(&p, k), i), &weight_set(&perm_power(&p, l), i), &mut memo)?;
                    let mut word = Vec::new();
                    (0..l).for_each(|_| word.extend_from_slice(&c));
                    let shift = 2 + big_r + 2 * (k as i64 - mi as i64) - data.l_c[i - 1];
                    let want = engine.q_bar(&lat.apply_word(&word, &lat.fundamental2(i)), shift)?;
                    if let Some(why) = differ(&got, &want, d)? {
                        return fail(format!("r={r} minor i={i} k={k} l={l}: {why}"));
                    }
                }
            }
        }
    }
    Ok(Certificate::pass("wronskian", params))
}

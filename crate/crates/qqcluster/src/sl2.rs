//! Type `A1`: segments, diagonals of the ∞-gon, Ptolemy relations and the
//! unique factorization of ℓ-weights into prime segments.
//!
//! The spectral parameter of `Ψ_{q^{2r}}` is stored as the vertex `(1, 2r)`;
//! segment endpoints are the halved exponents `r`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use crate::cert::Certificate;
use crate::error::{Error, Result};
use crate::qseries::qvar::compare;
use crate::qseries::{KMonomial, KSeries, Lattice, TermKey};
use crate::quiver::VertexId;
use crate::rootsys::RootSystem;

/// A segment endpoint. The derived order puts `NegInf` below every finite
/// value and `PosInf` above.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum End {
    NegInf,
    Fin(i64),
    PosInf,
}

impl End {
    /// Translation; infinities are fixed.
    pub fn offset(self, k: i64) -> End {
        match self {
            End::Fin(x) => End::Fin(x + k),
            e => e,
        }
    }

    pub fn finite(self) -> Option<i64> {
        match self {
            End::Fin(x) => Some(x),
            _ => None,
        }
    }

    pub fn to_json(self) -> serde_json::Value {
        match self {
            End::NegInf => json!("-inf"),
            End::Fin(x) => json!(x),
            End::PosInf => json!("+inf"),
        }
    }

    pub fn parse(s: &str) -> Result<End> {
        match s.trim() {
            "-inf" | "-∞" => Ok(End::NegInf),
            "+inf" | "inf" | "+∞" | "∞" => Ok(End::PosInf),
            t => t.parse().map(End::Fin).map_err(|_| Error::Precondition(format!("bad endpoint `{t}`"))),
        }
    }
}

impl fmt::Display for End {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            End::NegInf => write!(f, "-inf"),
            End::Fin(x) => write!(f, "{x}"),
            End::PosInf => write!(f, "+inf"),
        }
    }
}

/// `[r,s]`. When `r > s` (or `[−∞,+∞]`) the segment is the unit class.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Segment {
    pub r: End,
    pub s: End,
}

impl Segment {
    pub fn new(r: End, s: End) -> Result<Segment> {
        if r == End::PosInf || s == End::NegInf {
            return Err(Error::Precondition(format!("[{r},{s}] is not a segment")));
        }
        Ok(Segment { r, s })
    }

    pub fn finite(r: i64, s: i64) -> Segment {
        Segment { r: End::Fin(r), s: End::Fin(s) }
    }

    /// `[r,+∞]`.
    pub fn plus(r: i64) -> Segment {
        Segment { r: End::Fin(r), s: End::PosInf }
    }

    /// `[−∞,s]`.
    pub fn minus(s: i64) -> Segment {
        Segment { r: End::NegInf, s: End::Fin(s) }
    }

    pub fn is_unit(&self) -> bool {
        self.r > self.s || (self.r == End::NegInf && self.s == End::PosInf)
    }

    /// Highest ℓ-weight: `[r,s] ↦ Ψ_{q^{2r}} Ψ_{q^{2s+2}}^{-1}` with the
    /// infinite ends omitted.
    pub fn ell_weight(&self) -> KMonomial {
        let mut m = KMonomial::one(1);
        if self.is_unit() {
            return m;
        }
        if let End::Fin(r) = self.r {
            m.add_psi(VertexId::new(1, 2 * r), 1);
        }
        if let End::Fin(s) = self.s {
            m.add_psi(VertexId::new(1, 2 * s + 2), -1);
        }
        m
    }

    /// The diagonal `(r, s+2)` of the ∞-gon; `None` for the unit.
    pub fn diagonal(&self) -> Option<Diagonal> {
        (!self.is_unit()).then(|| Diagonal { a: self.r, b: self.s.offset(2) })
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!([self.r.to_json(), self.s.to_json()])
    }
}

impl fmt::Display for Segment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]", self.r, self.s)
    }
}

/// A chord `(a,b)` of the ∞-gon whose vertices are `ℤ ∪ {±∞}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Diagonal {
    pub a: End,
    pub b: End,
}

impl Diagonal {
    /// Requires `a < b`; sides of the polygon (`b = a+1` and `(−∞,+∞)`) are
    /// accepted and evaluate to `1`.
    pub fn new(a: End, b: End) -> Result<Diagonal> {
        if a >= b || a == End::PosInf || b == End::NegInf {
            return Err(Error::Precondition(format!("({a},{b}) is not a chord")));
        }
        Ok(Diagonal { a, b })
    }

    /// `x⁺_v = (v,+∞)`.
    pub fn x_plus(v: i64) -> Diagonal {
        Diagonal { a: End::Fin(v), b: End::PosInf }
    }

    /// `x⁻_u = (−∞,u+1)`.
    pub fn x_minus(u: i64) -> Diagonal {
        Diagonal { a: End::NegInf, b: End::Fin(u + 1) }
    }

    /// `x_{r,s} = (r,s+1)`, `r < s`.
    pub fn x_mid(r: i64, s: i64) -> Diagonal {
        Diagonal { a: End::Fin(r), b: End::Fin(s + 1) }
    }

    pub fn is_side(&self) -> bool {
        self.b == self.a.offset(1) || (self.a == End::NegInf && self.b == End::PosInf)
    }

    /// `(a,b) ↦ [a,b−2]`; sides give the unit segment.
    pub fn segment(&self) -> Segment {
        Segment { r: self.a, s: self.b.offset(-2) }
    }

    /// Interior crossing. Chords sharing an endpoint do not cross.
    pub fn crosses(&self, o: &Diagonal) -> bool {
        (self.a < o.a && o.a < self.b && self.b < o.b) || (o.a < self.a && self.a < o.b && o.b < self.b)
    }
}

impl fmt::Display for Diagonal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.a, self.b)
    }
}

pub fn lattice() -> &'static Arc<Lattice> {
    static LAT: OnceLock<Arc<Lattice>> = OnceLock::new();
    LAT.get_or_init(|| Lattice::new(&RootSystem::parse("A1").expect("A1 is a valid type")))
}

fn weight2(k2: i64) -> KMonomial {
    KMonomial::weight(1, vec![k2])
}

/// q-character of the simple module labelled by `seg`, truncated at `d`.
/// `[r,s]` is `Ψ_{q^{2r}}Ψ_{q^{2s+2}}^{-1}(1 + A_{2s+2}^{-1}(1 + A_{2s}^{-1}(⋯(1 + A_{2r+2}^{-1}))))`;
/// `r = −∞` makes the nesting infinite and `s = +∞` leaves only the top.
pub fn segment_qchar(seg: &Segment, d: usize) -> KSeries {
    let lat = lattice();
    let mut out = KSeries::monomial(lat, seg.ell_weight(), d);
    let End::Fin(s) = seg.s else { return out };
    if seg.is_unit() {
        return out;
    }
    let len = match seg.r {
        End::Fin(r) => ((s - r + 1) as usize).min(d),
        _ => d,
    };
    let mut key = TermKey::zero(1);
    for t in 0..len as i64 {
        key.mu.insert(VertexId::new(1, 2 * (s + 1 - t)), 1);
        out.add_term(key.clone(), BigInt::one());
    }
    out
}

/// `[−Ω]`-renormalized class: the `F`-image of the matching cluster variable.
pub fn segment_normalized(seg: &Segment, d: usize) -> KSeries {
    segment_qchar(seg, d).renormalize()
}

/// `F`-image of a chord; sides are `1`.
pub fn diagonal_value(dg: &Diagonal, d: usize) -> KSeries {
    segment_normalized(&dg.segment(), d)
}

/// True iff `[r,s] ∪ [r′,s′]` is not an interval properly containing both.
pub fn compatible(x: &Segment, y: &Segment) -> bool {
    if x.is_unit() || y.is_unit() {
        return true;
    }
    let (p, q) = if x.r <= y.r { (x, y) } else { (y, x) };
    !(p.r < q.r && p.s < q.s && q.r <= p.s.offset(1))
}

/// `[r,s][r′,s′] = [r,s′][r′,s] + [2(r′−s−2)ϖ][r,r′−2][s+2,s′]` to depth `d`.
pub fn ptolemy_check(r: End, s: End, r2: End, s2: End, d: usize) -> Result<Certificate> {
    let (Some(fs), Some(fr2)) = (s.finite(), r2.finite()) else {
        return Err(Error::Precondition("r′ and s must be finite".into()));
    };
    if !(r < r2 && s < s2 && fr2 <= fs + 1) {
        return Err(Error::Precondition(format!("need r<r′, s<s′, r′≤s+1; got [{r},{s}], [{r2},{s2}]")));
    }
    let seg = |a: End, b: End| Segment::new(a, b).map(|x| segment_qchar(&x, d));
    let lhs = seg(r, s)?.mul(&seg(r2, s2)?)?;
    let t1 = seg(r, s2)?.mul(&seg(r2, s)?)?;
    let t2 = seg(r, End::Fin(fr2 - 2))?
        .mul(&seg(End::Fin(fs + 2), s2)?)?
        .scale_monomial(&weight2(4 * (fr2 - fs - 2)));
    let params = json!({ "r": r.to_json(), "s": s.to_json(), "r'": r2.to_json(), "s'": s2.to_json(), "depth": d });
    Ok(Certificate::new("sl2-ptolemy", params, compare(&lhs, &t1.add(&t2)?, d)?))
}

/// Every tuple `r<r′≤s+1`, `s<s′` with all four in `lo..=hi`.
pub fn ptolemy_grid(lo: i64, hi: i64) -> Vec<(i64, i64, i64, i64)> {
    let mut out = Vec::new();
    for r in lo..=hi {
        for s in r..=hi {
            for r2 in r + 1..=(s + 1).min(hi) {
                for s2 in s + 1..=hi {
                    out.push((r, s, r2, s2));
                }
            }
        }
    }
    out
}

/// Ptolemy certificates over [`ptolemy_grid`], in grid order.
pub fn ptolemy_batch(lo: i64, hi: i64, d: usize) -> Result<Vec<Certificate>> {
    let grid = ptolemy_grid(lo, hi);
    let one = |&(r, s, r2, s2): &(i64, i64, i64, i64)| ptolemy_check(End::Fin(r), End::Fin(s), End::Fin(r2), End::Fin(s2), d);
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        grid.par_iter().map(one).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        grid.iter().map(one).collect()
    }
}

/// Ptolemy relation in the quadrilateral `p0<p1<p2<p3` on the `F`-side:
/// `(p0,p2)(p1,p3) = (p0,p3)(p1,p2) + (p0,p1)(p2,p3)`.
pub fn quadrilateral_check(p: [End; 4], d: usize) -> Result<Certificate> {
    if !p.windows(2).all(|w| w[0] < w[1]) {
        return Err(Error::Precondition(format!("vertices {p:?} are not increasing")));
    }
    let dv = |a: usize, b: usize| Diagonal::new(p[a], p[b]).map(|x| diagonal_value(&x, d));
    let lhs = dv(0, 2)?.mul(&dv(1, 3)?)?;
    let rhs = dv(0, 3)?.mul(&dv(1, 2)?)?.add(&dv(0, 1)?.mul(&dv(2, 3)?)?)?;
    let params = json!({ "quadrilateral": p.iter().map(|e| e.to_json()).collect::<Vec<_>>(), "depth": d });
    Ok(Certificate::new("sl2-quadrilateral", params, compare(&lhs, &rhs, d)?))
}

fn relation(name: &str, params: serde_json::Value, lhs: KSeries, rhs: KSeries, d: usize) -> Result<Certificate> {
    Ok(Certificate::new(name, params, compare(&lhs, &rhs, d)?))
}

/// Exchange relations of the standard seed attached to the triangulation
/// fanning out from `r`, evaluated through `F`, plus the formula for the
/// finite cluster variables and two quadrilaterals with infinite vertices.
pub fn exchange_relations_at(r: i64, d: usize) -> Result<Vec<Certificate>> {
    let xp = |v: i64| diagonal_value(&Diagonal::x_plus(v), d);
    let xm = |u: i64| diagonal_value(&Diagonal::x_minus(u), d);
    let xf = |a: i64, b: i64| diagonal_value(&Diagonal::x_mid(a, b), d);
    let one = || KSeries::one(lattice(), d);
    let mut out = Vec::new();
    for v in [r + 1, r + 2] {
        out.push(relation("sl2-exchange-up", json!({"r": r, "v": v}), xp(v).mul(&xf(v - 1, v))?, xp(v + 1).add(&xp(v - 1))?, d)?);
    }
    // The flips at the two half-infinite fans are binomial with a unit term.
    out.push(relation(
        "sl2-exchange-plus",
        json!({ "r": r }),
        xp(r).mul(&xm(r))?,
        xp(r + 1).mul(&xm(r - 1))?.add(&one())?,
        d,
    )?);
    out.push(relation(
        "sl2-exchange-minus",
        json!({ "r": r }),
        xm(r - 1).mul(&xp(r - 1))?,
        xp(r).mul(&xm(r - 2))?.add(&one())?,
        d,
    )?);
    for v in [r - 2, r - 3] {
        out.push(relation("sl2-exchange-down", json!({"r": r, "v": v}), xm(v).mul(&xf(v, v + 1))?, xm(v + 1).add(&xm(v - 1))?, d)?);
    }
    for s in [r + 1, r + 3] {
        let twisted = segment_qchar(&Segment::finite(r, s - 1), d).scale_monomial(&weight2(2 * (s - r)));
        let rhs = xm(s).mul(&xp(r))?.sub(&xm(r - 1).mul(&xp(s + 1))?)?;
        out.push(relation("sl2-finite-variable", json!({"r": r, "s": s}), twisted.clone(), rhs, d)?);
        out.push(relation("sl2-finite-variable-chord", json!({"r": r, "s": s}), twisted, xf(r, s), d)?);
    }
    out.push(quadrilateral_check([End::NegInf, End::Fin(r), End::Fin(r + 2), End::PosInf], d)?);
    out.push(quadrilateral_check([End::NegInf, End::Fin(r - 1), End::Fin(r + 1), End::Fin(r + 4)], d)?);
    Ok(out)
}

/// Unique factorization of an `A1` ℓ-weight into pairwise compatible
/// segments, with the leftover `[λ]` kept apart.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    pub lam2: i64,
    pub segments: Vec<Segment>,
}

impl Factorization {
    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "lam2": self.lam2,
            "segments": self.segments.iter().map(|s| s.to_string()).collect::<Vec<_>>(),
        })
    }

    /// Product of the segment ℓ-weights times `[λ]`.
    pub fn ell_weight(&self) -> KMonomial {
        self.segments.iter().fold(weight2(self.lam2), |m, s| m.mul(&s.ell_weight()))
    }
}

/// Pairs each `Ψ_{q^{2r}}`, taken by decreasing `r`, with the nearest unused
/// `Ψ_{q^{2s}}^{-1}` having `s > r`, giving `[r,s−1]`. This is bracket
/// matching, so the pieces never cross. Unpaired factors become `[r,+∞]` or
/// `[−∞,s−1]`.
pub fn factorize(m: &KMonomial) -> Result<Factorization> {
    if m.lam2.len() != 1 {
        return Err(Error::Unsupported(format!("rank {} monomial", m.lam2.len())));
    }
    let mut opens = Vec::new();
    let mut closes: BTreeMap<i64, i64> = BTreeMap::new();
    for (v, &e) in &m.psi {
        if v.i != 1 || v.r.rem_euclid(2) != 0 {
            return Err(Error::Parity { i: v.i, r: v.r });
        }
        if e > 0 {
            opens.extend(std::iter::repeat_n(v.r / 2, e as usize));
        } else {
            *closes.entry(v.r / 2).or_insert(0) += -e;
        }
    }
    let mut segments = Vec::new();
    for &r in opens.iter().rev() {
        match closes.range(r + 1..).next().map(|(&s, _)| s) {
            Some(s) => {
                let c = closes.get_mut(&s).expect("key just found");
                *c -= 1;
                if *c == 0 {
                    closes.remove(&s);
                }
                segments.push(Segment::finite(r, s - 1));
            }
            None => segments.push(Segment::plus(r)),
        }
    }
    for (s, c) in closes {
        segments.extend(std::iter::repeat_n(Segment::minus(s - 1), c as usize));
    }
    segments.sort();
    Ok(Factorization { lam2: m.lam2[0], segments })
}

/// Factorizes `m`, multiplies the q-characters back together to depth `d`
/// and checks: the product's top is `m` with coefficient one, the pieces are
/// pairwise compatible, and the product's top factorizes to the same pieces.
pub fn roundtrip_check(m: &KMonomial, d: usize) -> Result<Certificate> {
    let f = factorize(m)?;
    let params = json!({ "monomial": m.to_json(), "depth": d });
    if f.ell_weight() != *m {
        return Ok(Certificate::fail("sl2-roundtrip", params, format!("pieces multiply to {}", f.ell_weight())));
    }
    for (a, x) in f.segments.iter().enumerate() {
        if let Some(y) = f.segments[a + 1..].iter().find(|y| !compatible(x, y)) {
            return Ok(Certificate::fail("sl2-roundtrip", params, format!("{x} and {y} are not compatible")));
        }
    }
    let mut prod = KSeries::monomial(lattice(), weight2(f.lam2), d);
    for s in &f.segments {
        prod = prod.mul(&segment_qchar(s, d))?;
    }
    let top_coeff = prod.coefficient(&TermKey::zero(1));
    if prod.top != *m || !top_coeff.is_one() {
        return Ok(Certificate::fail("sl2-roundtrip", params, format!("product top {}·{}", top_coeff, prod.top)));
    }
    let again = factorize(&prod.top)?;
    if again != f {
        return Ok(Certificate::fail("sl2-roundtrip", params, "product refactorizes differently"));
    }
    Ok(Certificate::pass("sl2-roundtrip", params))
}

/// `[2a]·∏_{|k|≤span} Ψ_{q^{2k}}^{e_k}` with `a` and each `e_k` uniform in
/// `[−span, span]`; about half the `e_k` are forced to zero.
pub fn random_monomial<R: Rng>(rng: &mut R, span: i64) -> KMonomial {
    let mut m = weight2(2 * rng.gen_range(-span..=span));
    for k in -span..=span {
        if rng.gen_bool(0.5) {
            m.add_psi(VertexId::new(1, 2 * k), rng.gen_range(-span..=span));
        }
    }
    m
}

/// [`roundtrip_check`] on `trials` monomials from [`random_monomial`]; trial
/// `t` draws from stream `t` of the ChaCha generator seeded with `seed`.
pub fn roundtrip_batch(trials: usize, span: i64, seed: u64, d: usize) -> Result<Vec<Certificate>> {
    let run = |t: u64| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(t);
        roundtrip_check(&random_monomial(&mut rng, span), d)
    };
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        (0..trials as u64).into_par_iter().map(run).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..trials as u64).map(run).collect()
    }
}

/// Parses `"4:1,8:1,-6:-1"` (q-exponent `:` power) or the `Ψ(4)·Ψ(-6)^-1`
/// form, optionally with a `[k]` factor meaning `[kϖ/2]`.
pub fn parse_monomial(text: &str) -> Result<KMonomial> {
    let bad = |t: &str| Error::Precondition(format!("cannot parse monomial factor `{t}`"));
    let mut m = KMonomial::one(1);
    for raw in text.split([',', '·', '*', ' ']).map(str::trim).filter(|t| !t.is_empty()) {
        if let Some(inner) = raw.strip_prefix('[').and_then(|t| t.strip_suffix(']')) {
            m.add_lam2(&[inner.parse().map_err(|_| bad(raw))?], 1);
            continue;
        }
        let (base, pow) = match raw.split_once('^') {
            Some((b, p)) => (b, p.parse::<i64>().map_err(|_| bad(raw))?),
            None => (raw, 1),
        };
        let (exp, pow) = if let Some((q, e)) = base.split_once(':') {
            (q.trim(), e.trim().parse::<i64>().map_err(|_| bad(raw))? * pow)
        } else {
            let inner = base
                .trim_start_matches("Psi")
                .trim_start_matches('Ψ')
                .trim_start_matches('(')
                .trim_end_matches(')');
            (inner, pow)
        };
        let r: i64 = exp.parse().map_err(|_| bad(raw))?;
        if r.rem_euclid(2) != 0 {
            return Err(Error::Parity { i: 1, r });
        }
        m.add_psi(VertexId::new(1, r), pow);
    }
    Ok(m)
}

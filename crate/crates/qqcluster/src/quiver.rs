//! Finite windows of the infinite quivers built on `V ⊂ I × ℤ`.
//!
//! A [`WindowedQuiver`] stores every vertex `(i, r)` of `V` with
//! `r_min ≤ r ≤ r_max` (or an explicit finite subset, for `γ_c`). Vertex
//! colors are not stored independently: a vertex is red when it is the source
//! of a vertical down-arrow `(i, r) → (i, r − 2)` and green when it is the
//! target of one.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rootsys::{coxeter_data, is_reduced, CoxeterData, DynkinType, Orientation, RootSystem};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct VertexId {
    pub i: usize,
    pub r: i64,
}

impl VertexId {
    pub const fn new(i: usize, r: i64) -> Self {
        VertexId { i, r }
    }

    pub fn shifted(self, dr: i64) -> Self {
        VertexId { i: self.i, r: self.r + dr }
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.i, self.r)
    }
}

impl std::str::FromStr for VertexId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().trim_start_matches('(').trim_end_matches(')');
        let bad = || Error::Json(format!("bad vertex `{s}`"));
        let (a, b) = t.split_once(',').ok_or_else(bad)?;
        Ok(VertexId { i: a.trim().parse().map_err(|_| bad())?, r: b.trim().parse().map_err(|_| bad())? })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Color {
    Black,
    Red,
    Green,
}

/// How the heights passed to [`build_seed_quiver`] are read.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum HeightConvention {
    /// Heights are the labels of the finished quiver; insertions are applied
    /// in the order given, each at its label in the current quiver.
    #[default]
    Final,
    /// Heights are labels in the unmodified quiver `Γ`; a vertex is moved down
    /// by 2 for every earlier insertion above it in the same column.
    Original,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WindowedQuiver {
    pub dynkin: DynkinType,
    pub r_min: i64,
    pub r_max: i64,
    pub margin: i64,
    vertices: BTreeSet<VertexId>,
    out: BTreeMap<VertexId, BTreeMap<VertexId, u32>>,
    inc: BTreeMap<VertexId, BTreeMap<VertexId, u32>>,
    colors: BTreeMap<VertexId, Color>,
    frozen: BTreeSet<VertexId>,
}

pub const DEFAULT_MARGIN: i64 = 2;

impl WindowedQuiver {
    fn empty(dynkin: DynkinType, r_min: i64, r_max: i64) -> Self {
        WindowedQuiver {
            dynkin,
            r_min,
            r_max,
            margin: DEFAULT_MARGIN,
            vertices: BTreeSet::new(),
            out: BTreeMap::new(),
            inc: BTreeMap::new(),
            colors: BTreeMap::new(),
            frozen: BTreeSet::new(),
        }
    }

    pub fn n(&self) -> usize {
        self.dynkin.rank()
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.vertices.iter().copied()
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.vertices.contains(&v)
    }

    pub fn arrows(&self, a: VertexId, b: VertexId) -> u32 {
        self.out.get(&a).and_then(|m| m.get(&b)).copied().unwrap_or(0)
    }

    /// All arrows as `(source, target, multiplicity)`, sorted.
    pub fn arrow_list(&self) -> Vec<(VertexId, VertexId, u32)> {
        self.out.iter().flat_map(|(&a, m)| m.iter().map(move |(&b, &k)| (a, b, k))).collect()
    }

    pub fn out_neighbors(&self, v: VertexId) -> impl Iterator<Item = (VertexId, u32)> + '_ {
        self.out.get(&v).into_iter().flat_map(|m| m.iter().map(|(&b, &k)| (b, k)))
    }

    pub fn in_neighbors(&self, v: VertexId) -> impl Iterator<Item = (VertexId, u32)> + '_ {
        self.inc.get(&v).into_iter().flat_map(|m| m.iter().map(|(&b, &k)| (b, k)))
    }

    pub fn color(&self, v: VertexId) -> Color {
        self.colors.get(&v).copied().unwrap_or(Color::Black)
    }

    pub fn colored(&self, c: Color) -> Vec<VertexId> {
        self.colors.iter().filter(|(_, &k)| k == c).map(|(&v, _)| v).collect()
    }

    pub fn reds(&self) -> Vec<VertexId> {
        self.colored(Color::Red)
    }

    pub fn greens(&self) -> Vec<VertexId> {
        self.colored(Color::Green)
    }

    pub fn is_frozen(&self, v: VertexId) -> bool {
        self.frozen.contains(&v)
    }

    pub fn frozen(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.frozen.iter().copied()
    }

    pub fn set_frozen(&mut self, v: VertexId, frozen: bool) {
        if frozen {
            self.frozen.insert(v);
        } else {
            self.frozen.remove(&v);
        }
    }

    /// True when `v` is further than `margin` from both window edges.
    pub fn is_interior(&self, v: VertexId) -> bool {
        v.r - self.r_min > self.margin && self.r_max - v.r > self.margin
    }

    fn require_interior(&self, v: VertexId) -> Result<()> {
        if !self.contains(v) {
            return Err(Error::MissingVertex(v));
        }
        if !self.is_interior(v) {
            return Err(Error::Margin { vertex: v, margin: self.margin });
        }
        Ok(())
    }

    fn add_vertex(&mut self, v: VertexId) {
        self.vertices.insert(v);
    }

    fn remove_vertex(&mut self, v: VertexId) {
        self.vertices.remove(&v);
        self.colors.remove(&v);
        self.frozen.remove(&v);
        if let Some(outs) = self.out.remove(&v) {
            for b in outs.keys() {
                if let Some(m) = self.inc.get_mut(b) {
                    m.remove(&v);
                }
            }
        }
        if let Some(ins) = self.inc.remove(&v) {
            for a in ins.keys() {
                if let Some(m) = self.out.get_mut(a) {
                    m.remove(&v);
                }
            }
        }
    }

    fn set_arrows(&mut self, a: VertexId, b: VertexId, k: u32) {
        if k == 0 {
            if let Some(m) = self.out.get_mut(&a) {
                m.remove(&b);
                if m.is_empty() {
                    self.out.remove(&a);
                }
            }
            if let Some(m) = self.inc.get_mut(&b) {
                m.remove(&a);
                if m.is_empty() {
                    self.inc.remove(&b);
                }
            }
        } else {
            self.out.entry(a).or_default().insert(b, k);
            self.inc.entry(b).or_default().insert(a, k);
        }
    }

    /// Adds `k` arrows `a → b` (negative `k` means `b → a`), cancelling 2-cycles.
    fn add_arrows(&mut self, a: VertexId, b: VertexId, k: i64) {
        let net = i64::from(self.arrows(a, b)) - i64::from(self.arrows(b, a)) + k;
        self.set_arrows(a, b, net.max(0) as u32);
        self.set_arrows(b, a, (-net).max(0) as u32);
    }

    /// Signed exchange-matrix entry `b_{ab} = #(a → b) − #(b → a)`.
    pub fn b(&self, a: VertexId, b: VertexId) -> i64 {
        i64::from(self.arrows(a, b)) - i64::from(self.arrows(b, a))
    }

    fn recolor(&mut self) {
        self.colors.clear();
        let downs: Vec<(VertexId, VertexId)> = self
            .arrow_list()
            .into_iter()
            .filter(|(a, b, _)| a.i == b.i && b.r == a.r - 2)
            .map(|(a, b, _)| (a, b))
            .collect();
        for (_, b) in &downs {
            self.colors.insert(*b, Color::Green);
        }
        for (a, _) in downs {
            self.colors.insert(a, Color::Red);
        }
    }

    /// Relabels every vertex by `f`; `f` must be injective on the vertex set.
    pub fn relabel(&self, f: impl Fn(VertexId) -> VertexId) -> WindowedQuiver {
        let mut q = WindowedQuiver::empty(self.dynkin, self.r_min, self.r_max);
        q.margin = self.margin;
        for v in self.vertices() {
            q.add_vertex(f(v));
        }
        for (a, b, k) in self.arrow_list() {
            q.set_arrows(f(a), f(b), k);
        }
        for v in self.frozen() {
            q.frozen.insert(f(v));
        }
        let (lo, hi) = q.vertices.iter().fold((i64::MAX, i64::MIN), |(lo, hi), v| (lo.min(v.r), hi.max(v.r)));
        if lo <= hi {
            q.r_min = q.r_min.min(lo);
            q.r_max = q.r_max.max(hi);
        }
        q.recolor();
        q
    }

    /// The same quiver with every label moved by `dr` (window moves too).
    pub fn translate(&self, dr: i64) -> WindowedQuiver {
        let mut q = self.relabel(|v| v.shifted(dr));
        q.r_min = self.r_min + dr;
        q.r_max = self.r_max + dr;
        q
    }

    /// Full subquiver on the vertices with `lo ≤ r ≤ hi`.
    pub fn restrict(&self, lo: i64, hi: i64) -> WindowedQuiver {
        self.induced(|v| (lo..=hi).contains(&v.r), lo, hi)
    }

    fn induced(&self, keep: impl Fn(VertexId) -> bool, lo: i64, hi: i64) -> WindowedQuiver {
        let mut q = WindowedQuiver::empty(self.dynkin, lo, hi);
        q.margin = self.margin;
        for v in self.vertices().filter(|&v| keep(v)) {
            q.add_vertex(v);
        }
        for (a, b, k) in self.arrow_list() {
            if q.contains(a) && q.contains(b) {
                q.set_arrows(a, b, k);
            }
        }
        q.frozen = self.frozen.iter().copied().filter(|v| q.contains(*v)).collect();
        q.recolor();
        q
    }

    /// Compare arrows, vertices and frozen sets on `lo ≤ r ≤ hi`.
    pub fn same_on(&self, other: &WindowedQuiver, lo: i64, hi: i64) -> bool {
        let a = self.restrict(lo, hi);
        let b = other.restrict(lo, hi);
        a.vertices == b.vertices && a.out == b.out && a.colors == b.colors
    }

    pub fn to_json(&self) -> QuiverJson {
        QuiverJson {
            dynkin_type: self.dynkin.to_string(),
            window: [self.r_min, self.r_max],
            margin: self.margin,
            vertices: self.vertices().map(|v| [v.i as i64, v.r]).collect(),
            arrows: self.arrow_list().into_iter().map(|(a, b, k)| [a.i as i64, a.r, b.i as i64, b.r, k as i64]).collect(),
            colors: self
                .colors
                .iter()
                .filter(|(_, &c)| c != Color::Black)
                .map(|(v, &c)| (format!("{},{}", v.i, v.r), c))
                .collect(),
            frozen: self.frozen().map(|v| [v.i as i64, v.r]).collect(),
        }
    }

    pub fn from_json(j: &QuiverJson) -> Result<Self> {
        let dynkin: DynkinType = j.dynkin_type.parse()?;
        let mut q = WindowedQuiver::empty(dynkin, j.window[0], j.window[1]);
        q.margin = j.margin;
        let vid = |i: i64, r: i64| -> Result<VertexId> {
            if i < 1 || i as usize > dynkin.rank() {
                return Err(Error::NodeOutOfRange { index: i.max(0) as usize, rank: dynkin.rank() });
            }
            Ok(VertexId::new(i as usize, r))
        };
        for &[i, r] in &j.vertices {
            q.add_vertex(vid(i, r)?);
        }
        for &[i, r, k, s, m] in &j.arrows {
            let (a, b) = (vid(i, r)?, vid(k, s)?);
            if !q.contains(a) || !q.contains(b) {
                return Err(Error::MissingVertex(if q.contains(a) { b } else { a }));
            }
            if m < 1 || q.arrows(b, a) > 0 {
                return Err(Error::Json(format!("bad arrow entry {a}->{b} x{m}")));
            }
            q.set_arrows(a, b, m as u32);
        }
        for &[i, r] in &j.frozen {
            q.frozen.insert(vid(i, r)?);
        }
        q.recolor();
        let declared: BTreeMap<String, Color> = j.colors.clone();
        let derived = q.to_json().colors;
        if declared != derived {
            return Err(Error::Json("colors disagree with the down-arrows".into()));
        }
        Ok(q)
    }
}

/// Serialized form of a quiver; field order is fixed so output is byte-stable.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuiverJson {
    #[serde(rename = "type")]
    pub dynkin_type: String,
    pub window: [i64; 2],
    pub margin: i64,
    pub vertices: Vec<[i64; 2]>,
    pub arrows: Vec<[i64; 5]>,
    pub colors: BTreeMap<String, Color>,
    pub frozen: Vec<[i64; 2]>,
}

/// Vertices of `V` in column `i` inside `[lo, hi]`.
fn column(rs: &RootSystem, i: usize, lo: i64, hi: i64) -> impl Iterator<Item = i64> {
    let class = rs.class(i);
    (lo..=hi).filter(move |r| (r - class).rem_euclid(2) == 0)
}

/// Checks that `(i, r)` lies in the component `V`.
pub fn check_vertex(rs: &RootSystem, v: VertexId) -> Result<()> {
    rs.check_node(v.i)?;
    if (v.r - rs.class(v.i)).rem_euclid(2) != 0 {
        return Err(Error::Parity { i: v.i, r: v.r });
    }
    Ok(())
}

/// The window `[r_min, r_max]` of `Γ`: arrows `(i,r) → (j, r + c_ij)`.
pub fn basic_quiver(rs: &RootSystem, r_min: i64, r_max: i64) -> Result<WindowedQuiver> {
    if r_min >= r_max {
        return Err(Error::WindowTooSmall(format!("[{r_min},{r_max}] is empty")));
    }
    let mut q = WindowedQuiver::empty(rs.dynkin_type, r_min, r_max);
    for i in 1..=rs.n {
        for r in column(rs, i, r_min, r_max) {
            q.add_vertex(VertexId::new(i, r));
        }
    }
    let verts: Vec<VertexId> = q.vertices().collect();
    for v in verts {
        for j in 1..=rs.n {
            let c = rs.c(v.i, j);
            if c != 0 {
                let w = VertexId::new(j, v.r + c);
                if q.contains(w) {
                    q.set_arrows(v, w, 1);
                }
            }
        }
    }
    Ok(q)
}

/// Splits the vertical arrow below the black vertex `v = (i, r)`: `v` becomes
/// red, a new green vertex takes the label `(i, r − 2)` and the rest of the
/// column below moves down by 2 (vertices leaving the window are dropped).
pub fn insert_reflection(q: &WindowedQuiver, v: VertexId) -> Result<WindowedQuiver> {
    if !q.contains(v) {
        return Err(Error::MissingVertex(v));
    }
    if q.color(v) != Color::Black {
        return Err(Error::AlreadyColored(v));
    }
    if v.r - q.r_min <= q.margin {
        return Err(Error::Margin { vertex: v, margin: q.margin });
    }
    let below = VertexId::new(v.i, v.r - 2);
    let mut p = q.relabel(|u| if u.i == v.i && u.r < v.r { u.shifted(-2) } else { u });
    p.r_min = q.r_min;
    p.r_max = q.r_max;
    let moved = below.shifted(-2);
    let star = below;
    let dropped: Vec<VertexId> = p.vertices().filter(|u| u.r < p.r_min).collect();
    for u in dropped {
        p.remove_vertex(u);
    }
    p.add_vertex(star);
    if p.contains(moved) {
        let k = p.arrows(moved, v);
        p.set_arrows(moved, v, 0);
        p.set_arrows(moved, star, k.max(1));
    }
    p.set_arrows(v, star, 1);
    let oblique: Vec<(VertexId, u32)> = p.out_neighbors(v).filter(|(w, _)| w.i != v.i).collect();
    for (w, k) in oblique {
        p.set_arrows(v, w, 0);
        p.set_arrows(star, w, k);
    }
    p.recolor();
    Ok(p)
}

/// `Γ_{(i_1…i_k),(r_1…r_k)}`: successive reflection insertions.
pub fn build_seed_quiver(
    rs: &RootSystem,
    r_min: i64,
    r_max: i64,
    word: &[usize],
    heights: &[i64],
    convention: HeightConvention,
) -> Result<WindowedQuiver> {
    if word.len() != heights.len() {
        return Err(Error::Precondition("word and heights differ in length".into()));
    }
    if !is_reduced(rs, word)? {
        return Err(Error::NotReduced(word.to_vec()));
    }
    let mut q = basic_quiver(rs, r_min, r_max)?;
    for (t, (&i, &r)) in word.iter().zip(heights).enumerate() {
        let v = VertexId::new(i, r);
        check_vertex(rs, v)?;
        let label = match convention {
            HeightConvention::Final => v,
            HeightConvention::Original => {
                let above = (0..t).filter(|&u| word[u] == i && heights[u] > r).count() as i64;
                if (0..t).any(|u| word[u] == i && heights[u] == r) {
                    return Err(Error::HeightCollision(v));
                }
                VertexId::new(i, r - 2 * above)
            }
        };
        q = insert_reflection(&q, label).map_err(|e| match e {
            Error::AlreadyColored(u) => Error::HeightCollision(u),
            other => other,
        })?;
    }
    Ok(q)
}

/// `Γ_c` on a window, together with its Coxeter data and the finite `γ_c`.
#[derive(Debug, Clone)]
pub struct CoxeterQuiver {
    pub data: CoxeterData,
    pub quiver: WindowedQuiver,
    /// Red/green band plus one vertex above the highest red of each column;
    /// the top rim and the lowest greens are frozen.
    pub finite: WindowedQuiver,
    /// Lowest `r` carrying a green vertex.
    pub band_bottom: i64,
}

impl CoxeterQuiver {
    /// Highest red vertex of column `i`.
    pub fn top_red(&self, i: usize) -> VertexId {
        VertexId::new(i, -self.data.lv(i))
    }

    /// Top rim vertex of column `i` (frozen in `γ_c`).
    pub fn rim(&self, i: usize) -> VertexId {
        VertexId::new(i, -self.data.lv(i) + 2)
    }
}

/// Builds `Γ_c` with its highest red vertex normalized to `r = 0` (or `r = −1`
/// when parity forces it), inside `[band_bottom − depth_below, r_max]`.
pub fn build_coxeter_quiver(
    rs: &RootSystem,
    orientation: &Orientation,
    r_max: i64,
    depth_below: i64,
) -> Result<CoxeterQuiver> {
    let data = coxeter_data(rs, orientation)?;
    coxeter_quiver_from_data(rs, data, r_max, depth_below)
}

pub fn coxeter_quiver_from_data(
    rs: &RootSystem,
    data: CoxeterData,
    r_max: i64,
    depth_below: i64,
) -> Result<CoxeterQuiver> {
    let word = data.sorting_word();
    let band_bottom = word.iter().map(|&(_, r)| r - 2).min().unwrap_or(0);
    let top_rim = (1..=rs.n).map(|i| -data.lv(i) + 2).max().unwrap_or(2);
    if r_max - top_rim <= DEFAULT_MARGIN {
        return Err(Error::WindowTooSmall(format!("r_max = {r_max} leaves no margin above the band")));
    }
    if depth_below <= DEFAULT_MARGIN {
        return Err(Error::WindowTooSmall(format!("depth below the band must exceed {DEFAULT_MARGIN}")));
    }
    let r_min = band_bottom - depth_below;
    let letters: Vec<usize> = word.iter().map(|x| x.0).collect();
    let heights: Vec<i64> = word.iter().map(|x| x.1).collect();
    let quiver = build_seed_quiver(rs, r_min, r_max, &letters, &heights, HeightConvention::Final)?;

    let mut lowest_green: BTreeMap<usize, i64> = BTreeMap::new();
    for &(i, r) in &word {
        let e = lowest_green.entry(i).or_insert(r - 2);
        *e = (*e).min(r - 2);
    }
    let keep = |v: VertexId| v.r <= -data.lv(v.i) + 2 && v.r >= lowest_green[&v.i];
    let mut finite = quiver.induced(keep, band_bottom, top_rim);
    for i in 1..=rs.n {
        finite.frozen.insert(VertexId::new(i, -data.lv(i) + 2));
        finite.frozen.insert(VertexId::new(i, lowest_green[&i]));
    }
    finite.margin = 0;
    Ok(CoxeterQuiver { data, quiver, finite, band_bottom })
}

/// Standard quiver mutation; colors are re-read from the new down-arrows.
pub fn mutate_quiver(q: &WindowedQuiver, k: VertexId) -> Result<WindowedQuiver> {
    q.require_interior(k)?;
    if q.is_frozen(k) {
        return Err(Error::Frozen(k));
    }
    Ok(mutate_unchecked(q, k))
}

pub(crate) fn mutate_unchecked(q: &WindowedQuiver, k: VertexId) -> WindowedQuiver {
    let mut p = q.clone();
    let ins: Vec<(VertexId, u32)> = q.in_neighbors(k).collect();
    let outs: Vec<(VertexId, u32)> = q.out_neighbors(k).collect();
    for &(u, a) in &ins {
        for &(w, b) in &outs {
            if q.is_frozen(u) && q.is_frozen(w) {
                continue;
            }
            p.add_arrows(u, w, i64::from(a) * i64::from(b));
        }
    }
    for &(u, a) in &ins {
        p.set_arrows(u, k, 0);
        p.set_arrows(k, u, a);
    }
    for &(w, b) in &outs {
        p.set_arrows(k, w, 0);
        p.set_arrows(w, k, b);
    }
    p.recolor();
    p
}

/// One horizontal slice `I(m) = {(i, l(i) + 2m)}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Slice {
    pub m: i64,
    pub vertices: Vec<VertexId>,
    pub red: Vec<usize>,
    pub green: Vec<usize>,
    /// Orientation of the Dynkin graph read off the slice: `(i, j)` for `i → j`.
    pub arrows: Vec<(usize, usize)>,
}

impl Slice {
    /// Reflect the slice orientation at every green node.
    pub fn reflected_at_greens(&self) -> Vec<(usize, usize)> {
        let mut a: Vec<(usize, usize)> = self
            .arrows
            .iter()
            .map(|&(x, y)| if self.green.contains(&x) || self.green.contains(&y) { (y, x) } else { (x, y) })
            .collect();
        a.sort_unstable();
        a
    }
}

pub fn slice(rs: &RootSystem, q: &WindowedQuiver, data: &CoxeterData, m: i64) -> Slice {
    let vertices: Vec<VertexId> = (1..=rs.n).map(|i| VertexId::new(i, data.lv(i) + 2 * m)).collect();
    let mut red = Vec::new();
    let mut green = Vec::new();
    for v in &vertices {
        match q.color(*v) {
            Color::Red => red.push(v.i),
            Color::Green => green.push(v.i),
            Color::Black => {}
        }
    }
    let mut arrows = Vec::new();
    for (a, b) in rs.edges() {
        let (va, vb) = (vertices[a - 1], vertices[b - 1]);
        if q.arrows(va, vb) > 0 {
            arrows.push((a, b));
        } else if q.arrows(vb, va) > 0 {
            arrows.push((b, a));
        }
    }
    arrows.sort_unstable();
    Slice { m, vertices, red, green, arrows }
}

/// Slices `m_lo ..= m_hi` of a Coxeter-shaped quiver.
pub fn slices(rs: &RootSystem, q: &WindowedQuiver, data: &CoxeterData, m_lo: i64, m_hi: i64) -> Vec<Slice> {
    (m_lo..=m_hi).map(|m| slice(rs, q, data, m)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rs(name: &str) -> RootSystem {
        RootSystem::parse(name).unwrap()
    }

    fn v(i: usize, r: i64) -> VertexId {
        VertexId::new(i, r)
    }

    #[test]
    fn basic_a3_arrows() {
        let a3 = rs("A3");
        let q = basic_quiver(&a3, -6, 2).unwrap();
        assert_eq!(q.arrows(v(2, 1), v(1, 0)), 1);
        assert_eq!(q.arrows(v(1, 0), v(1, 2)), 1);
        assert_eq!(q.arrows(v(2, -1), v(3, -2)), 1);
        assert_eq!(q.arrows(v(1, 0), v(2, -1)), 1);
        assert_eq!(q.arrows(v(1, 2), v(1, 0)), 0);
        assert!(q.reds().is_empty());
        assert!(check_vertex(&a3, v(1, 1)).is_err());
    }

    #[test]
    fn basic_a1_is_a_chain() {
        let q = basic_quiver(&rs("A1"), -4, 4).unwrap();
        let arrows = q.arrow_list();
        assert_eq!(arrows.len(), 4);
        assert!(arrows.iter().all(|(a, b, k)| b.r == a.r + 2 && *k == 1));
        assert!(basic_quiver(&rs("A1"), 3, 3).is_err());
    }

    #[test]
    fn reflection_in_a3_at_1_0() {
        let a3 = rs("A3");
        let q = basic_quiver(&a3, -10, 4).unwrap();
        let p = insert_reflection(&q, v(1, 0)).unwrap();
        assert_eq!(p.reds(), vec![v(1, 0)]);
        assert_eq!(p.greens(), vec![v(1, -2)]);
        assert_eq!(p.arrows(v(1, 0), v(1, -2)), 1);
        assert_eq!(p.arrows(v(1, -4), v(1, -2)), 1);
        assert_eq!(p.arrows(v(1, -2), v(2, -1)), 1);
        assert_eq!(p.arrows(v(1, 0), v(2, -1)), 0);
        assert_eq!(p.arrows(v(1, 0), v(1, 2)), 1);
        // the old (1,-2) now sits at (1,-4) and keeps its arrows
        assert_eq!(p.arrows(v(1, -4), v(2, -3)), 1);
        assert_eq!(p.arrows(v(2, -1), v(1, -4)), 1);
        assert!(insert_reflection(&p, v(1, 0)).is_err());
        assert_eq!(p.num_vertices(), q.num_vertices());
    }

    #[test]
    fn seed_quiver_conventions_agree_on_coxeter_band() {
        let a3 = rs("A3");
        let word = [1, 2, 1, 3, 2, 1];
        let fin = build_seed_quiver(&a3, -20, 6, &word, &[0, -1, -4, -2, -5, -8], HeightConvention::Final).unwrap();
        let orig =
            build_seed_quiver(&a3, -20, 6, &word, &[0, -1, -2, -2, -3, -4], HeightConvention::Original).unwrap();
        assert_eq!(fin, orig);
        let mut reds = fin.reds();
        reds.sort();
        assert_eq!(reds, vec![v(1, -8), v(1, -4), v(1, 0), v(2, -5), v(2, -1), v(3, -2)]);
        assert!(build_seed_quiver(&a3, -20, 6, &[1, 1], &[0, -4], HeightConvention::Final).is_err());
    }

    #[test]
    fn a2_seed_quiver_matches_coxeter() {
        let a2 = rs("A2");
        let q = build_seed_quiver(&a2, -16, 6, &[1, 2, 1], &[0, -1, -4], HeightConvention::Final).unwrap();
        let c = build_coxeter_quiver(&a2, &Orientation::parse(&a2, "2->1").unwrap(), 6, 10).unwrap();
        assert_eq!(q.restrict(-12, 6), c.quiver.restrict(-12, 6));
        assert_eq!(c.quiver.greens(), vec![v(1, -6), v(1, -2), v(2, -3)]);
        let empty = build_seed_quiver(&a2, -16, 6, &[], &[], HeightConvention::Final).unwrap();
        assert_eq!(empty, basic_quiver(&a2, -16, 6).unwrap());
    }

    #[test]
    fn coxeter_columns_carry_m_down_arrows() {
        for (name, o) in [("A3", "2->1,3->2"), ("D4", "1->2,3->2,4->2"), ("A4", "2->1,3->2,3->4")] {
            let r = rs(name);
            let cq = build_coxeter_quiver(&r, &Orientation::parse(&r, o).unwrap(), 6, 8).unwrap();
            for i in 1..=r.n {
                let downs = cq.finite.reds().iter().filter(|u| u.i == i).count();
                assert_eq!(downs, cq.data.m[i - 1], "{name} column {i}");
            }
            assert_eq!(cq.finite.num_vertices(), 2 * r.num_positive_roots() + r.n);
            assert_eq!(cq.finite.frozen().count(), 2 * r.n);
        }
    }

    #[test]
    fn mutation_is_involutive_and_moves_reflections() {
        let a3 = rs("A3");
        let q = build_seed_quiver(&a3, -14, 8, &[2], &[-1], HeightConvention::Final).unwrap();
        let m = mutate_quiver(&q, v(2, -1)).unwrap();
        let expect = build_seed_quiver(&a3, -14, 8, &[2], &[1], HeightConvention::Final).unwrap();
        assert!(m.same_on(&expect, -10, 4));
        assert_eq!(mutate_quiver(&m, v(2, -1)).unwrap(), q);
        let g = mutate_quiver(&q, v(2, -3)).unwrap();
        let lower = build_seed_quiver(&a3, -14, 8, &[2], &[-3], HeightConvention::Final).unwrap();
        assert!(g.same_on(&lower, -10, 4));
        assert!(mutate_quiver(&q, v(2, 7)).is_err());
    }

    #[test]
    fn green_sweep_translates_down() {
        let a2 = rs("A2");
        let cq = build_coxeter_quiver(&a2, &Orientation::parse(&a2, "2->1").unwrap(), 8, 10).unwrap();
        let mut q = cq.quiver.clone();
        for g in cq.quiver.greens() {
            q = mutate_quiver(&q, g).unwrap();
        }
        let t = cq.quiver.translate(-2);
        assert!(q.same_on(&t, cq.quiver.r_min + 3, cq.quiver.r_max - 3));
    }

    #[test]
    fn a4_slices_reflect_into_the_next_one() {
        let a4 = rs("A4");
        let cq = build_coxeter_quiver(&a4, &Orientation::parse(&a4, "2->1,3->2,3->4").unwrap(), 8, 8).unwrap();
        let s = slices(&a4, &cq.quiver, &cq.data, cq.data.h_c - 1, 2);
        for w in s.windows(2) {
            assert_eq!(w[0].reflected_at_greens(), w[1].arrows, "slice {}", w[0].m);
        }
        let top = s.last().unwrap();
        assert!(top.red.is_empty() && top.green.is_empty());
        let mut q = cq.data.orientation.arrows.clone();
        q.sort_unstable();
        assert_eq!(top.arrows, q);
    }

    #[test]
    fn json_round_trip() {
        let a3 = rs("A3");
        let cq = build_coxeter_quiver(&a3, &Orientation::parse(&a3, "2->1,3->2").unwrap(), 6, 6).unwrap();
        let text = serde_json::to_string(&cq.quiver.to_json()).unwrap();
        let back = WindowedQuiver::from_json(&serde_json::from_str(&text).unwrap()).unwrap();
        assert_eq!(back, cq.quiver);
        assert_eq!(serde_json::to_string(&back.to_json()).unwrap(), text);
        let ftext = serde_json::to_string(&cq.finite.to_json()).unwrap();
        let fback = WindowedQuiver::from_json(&serde_json::from_str(&ftext).unwrap()).unwrap();
        assert_eq!(fback, cq.finite);
    }
}

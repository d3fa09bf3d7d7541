//! Simply-laced root systems, weights and Weyl group elements.
//!
//! Nodes are numbered `1..=n` in the Bourbaki convention. Weights are stored
//! doubled (`coords2 = 2λ` in the fundamental-weight basis) so that the
//! half-integer weights produced by spectral renormalization stay integral.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Matrix = Vec<Vec<i64>>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum DynkinType {
    A(usize),
    D(usize),
    E(usize),
}

impl DynkinType {
    pub fn rank(self) -> usize {
        match self {
            DynkinType::A(n) | DynkinType::D(n) | DynkinType::E(n) => n,
        }
    }

    /// Undirected Dynkin edges with `i < j`.
    fn edges(self) -> Vec<(usize, usize)> {
        match self {
            DynkinType::A(n) => (1..n).map(|i| (i, i + 1)).collect(),
            DynkinType::D(n) => {
                let mut e: Vec<_> = (1..n - 2).map(|i| (i, i + 1)).collect();
                e.push((n - 2, n - 1));
                e.push((n - 2, n));
                e
            }
            DynkinType::E(n) => {
                let mut e = vec![(1, 3), (2, 4), (3, 4)];
                e.extend((4..n).map(|i| (i, i + 1)));
                e
            }
        }
    }
}

impl fmt::Display for DynkinType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DynkinType::A(n) => write!(f, "A{n}"),
            DynkinType::D(n) => write!(f, "D{n}"),
            DynkinType::E(n) => write!(f, "E{n}"),
        }
    }
}

impl std::str::FromStr for DynkinType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::UnknownType(s.to_string());
        let s = s.trim();
        let (head, tail) = s.split_at(s.len().min(1));
        let n: usize = tail.parse().map_err(|_| bad())?;
        match head {
            "A" | "a" if (1..=8).contains(&n) => Ok(DynkinType::A(n)),
            "D" | "d" if (4..=8).contains(&n) => Ok(DynkinType::D(n)),
            "E" | "e" if (6..=8).contains(&n) => Ok(DynkinType::E(n)),
            _ => Err(bad()),
        }
    }
}

/// A weight `λ`, stored as `2λ` in the basis of fundamental weights.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Weight {
    pub coords2: Vec<i64>,
}

impl Weight {
    pub fn zero(n: usize) -> Self {
        Weight { coords2: vec![0; n] }
    }

    pub fn is_zero(&self) -> bool {
        self.coords2.iter().all(|&c| c == 0)
    }

    /// True when the weight lies in `P` rather than only in `½P`.
    pub fn is_integral(&self) -> bool {
        self.coords2.iter().all(|c| c % 2 == 0)
    }

    pub fn add(&self, other: &Weight) -> Weight {
        Weight {
            coords2: self.coords2.iter().zip(&other.coords2).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &Weight) -> Weight {
        Weight {
            coords2: self.coords2.iter().zip(&other.coords2).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn scale(&self, k: i64) -> Weight {
        Weight { coords2: self.coords2.iter().map(|a| a * k).collect() }
    }

    pub fn neg(&self) -> Weight {
        self.scale(-1)
    }
}

/// Cartan data of a simply-laced simple Lie algebra.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootSystem {
    pub dynkin_type: DynkinType,
    pub n: usize,
    pub cartan: Matrix,
    /// Positive roots in simple-root coordinates.
    positive_roots: Vec<Vec<i64>>,
    /// Bipartition class of each node, node 1 in class 0.
    class: Vec<u8>,
}

impl RootSystem {
    pub fn new(dynkin_type: DynkinType) -> Result<Self> {
        let n = dynkin_type.rank();
        let valid = match dynkin_type {
            DynkinType::A(n) => n >= 1,
            DynkinType::D(n) => n >= 4,
            DynkinType::E(n) => (6..=8).contains(&n),
        };
        if !valid {
            return Err(Error::UnknownType(dynkin_type.to_string()));
        }
        let mut cartan = vec![vec![0i64; n]; n];
        for (i, row) in cartan.iter_mut().enumerate() {
            row[i] = 2;
        }
        for (i, j) in dynkin_type.edges() {
            cartan[i - 1][j - 1] = -1;
            cartan[j - 1][i - 1] = -1;
        }
        let class = bipartition(&cartan);
        let positive_roots = close_positive_roots(&cartan);
        Ok(RootSystem { dynkin_type, n, cartan, positive_roots, class })
    }

    pub fn parse(name: &str) -> Result<Self> {
        RootSystem::new(name.parse()?)
    }

    pub fn c(&self, i: usize, j: usize) -> i64 {
        self.cartan[i - 1][j - 1]
    }

    pub fn check_node(&self, i: usize) -> Result<()> {
        if i == 0 || i > self.n {
            Err(Error::NodeOutOfRange { index: i, rank: self.n })
        } else {
            Ok(())
        }
    }

    /// Nodes `j` with `c_ij = -1`.
    pub fn neighbors(&self, i: usize) -> Vec<usize> {
        (1..=self.n).filter(|&j| self.c(i, j) == -1).collect()
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.dynkin_type.edges()
    }

    /// Parity class of node `i`; vertices `(i, r)` of the quiver have `r ≡ class(i)`.
    pub fn class(&self, i: usize) -> i64 {
        self.class[i - 1] as i64
    }

    pub fn positive_roots(&self) -> &[Vec<i64>] {
        &self.positive_roots
    }

    pub fn num_positive_roots(&self) -> usize {
        self.positive_roots.len()
    }

    /// Coxeter number `h = #roots / n`.
    pub fn coxeter_number(&self) -> usize {
        2 * self.positive_roots.len() / self.n
    }

    pub fn fundamental_weight(&self, i: usize) -> Weight {
        let mut w = Weight::zero(self.n);
        w.coords2[i - 1] = 2;
        w
    }

    pub fn simple_root(&self, i: usize) -> Weight {
        Weight { coords2: (0..self.n).map(|j| 2 * self.cartan[j][i - 1]).collect() }
    }

    /// Weight of a root given in simple-root coordinates.
    pub fn root_weight(&self, beta: &[i64]) -> Weight {
        let mut w = Weight::zero(self.n);
        for (k, &b) in beta.iter().enumerate() {
            if b != 0 {
                w = w.add(&self.simple_root(k + 1).scale(b));
            }
        }
        w
    }

    /// Inverse of [`root_weight`]: simple-root coordinates of a weight in the root lattice.
    pub fn weight_to_root_coords(&self, w: &Weight) -> Option<Vec<i64>> {
        // Solve C x = coords2 / 2 by exact elimination; n is small.
        let n = self.n;
        if !w.is_integral() {
            return None;
        }
        let mut a: Vec<Vec<num_rational::Rational64>> = (0..n)
            .map(|r| {
                let mut row: Vec<_> =
                    (0..n).map(|c| num_rational::Rational64::from_integer(self.cartan[r][c])).collect();
                row.push(num_rational::Rational64::from_integer(w.coords2[r] / 2));
                row
            })
            .collect();
        for col in 0..n {
            let piv = (col..n).find(|&r| a[r][col] != 0.into())?;
            a.swap(col, piv);
            let p = a[col][col];
            for c in col..=n {
                a[col][c] /= p;
            }
            for r in 0..n {
                if r != col && a[r][col] != 0.into() {
                    let f = a[r][col];
                    for c in col..=n {
                        let v = a[col][c];
                        a[r][c] -= f * v;
                    }
                }
            }
        }
        a.iter().map(|row| if row[n].is_integer() { Some(row[n].to_integer()) } else { None }).collect()
    }

    /// Height of a weight in the root lattice (sum of simple-root coordinates).
    pub fn height(&self, w: &Weight) -> Option<i64> {
        self.weight_to_root_coords(w).map(|v| v.iter().sum())
    }

    pub fn identity(&self) -> WeylElement {
        WeylElement { mat_t: identity(self.n), length: 0, word: vec![] }
    }

    pub fn longest_element(&self) -> WeylElement {
        let mut word = Vec::new();
        let mut w = self.identity();
        'grow: loop {
            for i in 1..=self.n {
                let next = mat_mul(&w.mat_t, &reflection_matrix_t(self, i).expect("node in range"));
                if self.length_of(&next) > w.length {
                    word.push(i);
                    w = WeylElement { length: w.length + 1, mat_t: next, word: word.clone() };
                    continue 'grow;
                }
            }
            break;
        }
        w
    }

    /// Number of positive roots sent to negative roots; computed on `T_wᵀ`, the
    /// root-basis matrix of `w⁻¹`, since `ℓ(w) = ℓ(w⁻¹)`.
    pub fn length_of(&self, mat_t: &Matrix) -> usize {
        let n = self.n;
        self.positive_roots
            .iter()
            .filter(|beta| (0..n).any(|j| (0..n).map(|k| mat_t[k][j] * beta[k]).sum::<i64>() < 0))
            .count()
    }

    pub fn nakayama(&self) -> Vec<usize> {
        let w0 = self.longest_element();
        (1..=self.n)
            .map(|i| {
                let img = weyl_apply(&w0, &self.simple_root(i)).neg();
                (1..=self.n).find(|&j| self.simple_root(j) == img).expect("w0 permutes -simple roots")
            })
            .collect()
    }
}

fn bipartition(cartan: &Matrix) -> Vec<u8> {
    let n = cartan.len();
    let mut class = vec![u8::MAX; n];
    class[0] = 0;
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        for j in 0..n {
            if cartan[i][j] == -1 && class[j] == u8::MAX {
                class[j] = 1 - class[i];
                queue.push_back(j);
            }
        }
    }
    class
}

fn close_positive_roots(cartan: &Matrix) -> Vec<Vec<i64>> {
    let n = cartan.len();
    let mut seen = BTreeSet::new();
    let mut queue = VecDeque::new();
    for i in 0..n {
        let mut e = vec![0; n];
        e[i] = 1;
        seen.insert(e.clone());
        queue.push_back(e);
    }
    while let Some(beta) = queue.pop_front() {
        for i in 0..n {
            let pairing: i64 = (0..n).map(|j| beta[j] * cartan[j][i]).sum();
            let mut img = beta.clone();
            img[i] -= pairing;
            if img.iter().all(|&x| x >= 0) && seen.insert(img.clone()) {
                queue.push_back(img);
            }
        }
    }
    let mut roots: Vec<_> = seen.into_iter().collect();
    roots.sort_by_key(|r| (r.iter().sum::<i64>(), r.clone()));
    roots
}

pub fn identity(n: usize) -> Matrix {
    (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect()
}

pub fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let n = a.len();
    let m = b.first().map_or(0, Vec::len);
    let inner = b.len();
    (0..n).map(|i| (0..m).map(|j| (0..inner).map(|k| a[i][k] * b[k][j]).sum()).collect()).collect()
}

pub fn mat_vec(a: &Matrix, v: &[i64]) -> Vec<i64> {
    a.iter().map(|row| row.iter().zip(v).map(|(x, y)| x * y).sum()).collect()
}

pub fn transpose(a: &Matrix) -> Matrix {
    let m = a.first().map_or(0, Vec::len);
    (0..m).map(|j| a.iter().map(|row| row[j]).collect()).collect()
}

/// The matrix `t_i` of `s_i` acting on fundamental-weight coordinates:
/// column `k ≠ i` is the unit vector, column `i` has entries `δ_ji − c_ji`.
pub fn reflection_matrix_t(rs: &RootSystem, i: usize) -> Result<Matrix> {
    rs.check_node(i)?;
    let mut t = identity(rs.n);
    for j in 1..=rs.n {
        t[j - 1][i - 1] = i64::from(j == i) - rs.c(j, i);
    }
    Ok(t)
}

/// An element of the Weyl group; equality is matrix equality.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct WeylElement {
    pub mat_t: Matrix,
    pub length: usize,
    pub word: Vec<usize>,
}

impl PartialEq for WeylElement {
    fn eq(&self, other: &Self) -> bool {
        self.mat_t == other.mat_t
    }
}

impl Eq for WeylElement {}

impl std::hash::Hash for WeylElement {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.mat_t.hash(state)
    }
}

impl WeylElement {
    pub fn is_identity(&self) -> bool {
        self.length == 0
    }
}

pub fn weyl_apply(w: &WeylElement, lambda: &Weight) -> Weight {
    Weight { coords2: mat_vec(&w.mat_t, &lambda.coords2) }
}

pub fn weyl_from_word(rs: &RootSystem, word: &[usize]) -> Result<WeylElement> {
    let mut m = identity(rs.n);
    for &i in word {
        m = mat_mul(&m, &reflection_matrix_t(rs, i)?);
    }
    let length = rs.length_of(&m);
    Ok(WeylElement { mat_t: m, length, word: word.to_vec() })
}

pub fn is_reduced(rs: &RootSystem, word: &[usize]) -> Result<bool> {
    Ok(weyl_from_word(rs, word)?.length == word.len())
}

pub fn nakayama(rs: &RootSystem) -> Vec<usize> {
    rs.nakayama()
}

/// A reduced word for `w` obtained by peeling descents (lexicographically smallest first letter).
pub fn reduced_word(rs: &RootSystem, w: &WeylElement) -> Vec<usize> {
    let mut m = w.mat_t.clone();
    let mut len = rs.length_of(&m);
    let mut word = Vec::new();
    while len > 0 {
        let i = (1..=rs.n)
            .find(|&i| {
                let t = reflection_matrix_t(rs, i).expect("in range");
                rs.length_of(&mat_mul(&t, &m)) < len
            })
            .expect("nontrivial element has a left descent");
        m = mat_mul(&reflection_matrix_t(rs, i).expect("in range"), &m);
        len -= 1;
        word.push(i);
    }
    word
}

/// All reduced words of `w`, in lexicographic order; capped at `limit`.
pub fn reduced_words(rs: &RootSystem, w: &WeylElement, limit: usize) -> Vec<Vec<usize>> {
    fn rec(rs: &RootSystem, m: &Matrix, len: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>, limit: usize) {
        if out.len() >= limit {
            return;
        }
        if len == 0 {
            out.push(prefix.clone());
            return;
        }
        for i in 1..=rs.n {
            let t = reflection_matrix_t(rs, i).expect("in range");
            let next = mat_mul(&t, m);
            if rs.length_of(&next) < len {
                prefix.push(i);
                rec(rs, &next, len - 1, prefix, out, limit);
                prefix.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(rs, &w.mat_t, w.length, &mut Vec::new(), &mut out, limit);
    out
}

/// A directed orientation of the Dynkin graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Orientation {
    /// Arrows `(i, j)` meaning `i -> j`.
    pub arrows: Vec<(usize, usize)>,
}

impl Orientation {
    /// Parse `"2->1,3->2"` style edge lists.
    pub fn parse(rs: &RootSystem, s: &str) -> Result<Self> {
        let mut arrows = Vec::new();
        for part in s.split([',', ' ', ';']).filter(|p| !p.is_empty()) {
            let (a, b) = part.split_once("->").ok_or_else(|| Error::BadOrientation(part.to_string()))?;
            let a: usize = a.trim().parse().map_err(|_| Error::BadOrientation(part.to_string()))?;
            let b: usize = b.trim().parse().map_err(|_| Error::BadOrientation(part.to_string()))?;
            arrows.push((a, b));
        }
        Orientation::new(rs, arrows)
    }

    pub fn new(rs: &RootSystem, arrows: Vec<(usize, usize)>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for &(a, b) in &arrows {
            rs.check_node(a)?;
            rs.check_node(b)?;
            if rs.c(a, b) != -1 {
                return Err(Error::BadOrientation(format!("{a}->{b} is not a Dynkin edge")));
            }
            if !seen.insert((a.min(b), a.max(b))) {
                return Err(Error::BadOrientation(format!("edge {a}-{b} oriented twice")));
            }
        }
        if seen.len() != rs.edges().len() {
            return Err(Error::BadOrientation("not every Dynkin edge is oriented".into()));
        }
        Ok(Orientation { arrows })
    }

    /// The orientation for which `word` (a Coxeter word) is adapted:
    /// `i -> j` whenever `j` occurs before `i` in the word.
    pub fn from_coxeter_word(rs: &RootSystem, word: &[usize]) -> Result<Self> {
        let mut sorted = word.to_vec();
        sorted.sort_unstable();
        if sorted != (1..=rs.n).collect::<Vec<_>>() {
            return Err(Error::BadOrientation(format!("{word:?} is not a Coxeter word")));
        }
        let pos = |k: usize| word.iter().position(|&x| x == k).expect("present");
        let arrows = rs
            .edges()
            .into_iter()
            .map(|(a, b)| if pos(a) > pos(b) { (a, b) } else { (b, a) })
            .collect();
        Orientation::new(rs, arrows)
    }

    fn is_sink(&self, i: usize) -> bool {
        !self.arrows.iter().any(|&(a, _)| a == i)
    }

    fn reflect_at(&self, i: usize) -> Orientation {
        Orientation {
            arrows: self.arrows.iter().map(|&(a, b)| if a == i || b == i { (b, a) } else { (a, b) }).collect(),
        }
    }
}

/// Coxeter element data attached to an orientation.
#[derive(Debug, Clone)]
pub struct CoxeterData {
    pub orientation: Orientation,
    /// Adapted word `(i_1, …, i_n)` with `c = s_{i_1}⋯s_{i_n}`.
    pub word: Vec<usize>,
    pub c: WeylElement,
    /// Height function with minimum 0 and `l(i) = l(j) + 1` for `i -> j`.
    pub l_c: Vec<i64>,
    /// Vertical translation (0 or 1) making `l_c(i) + shift ≡ class(i) mod 2`.
    pub shift: i64,
    pub h: usize,
    /// `m_i`: minimal `m` with `c^m(ϖ_i) = −ϖ_{ν(i)}`.
    pub m: Vec<usize>,
    /// Minimal slice index carrying a green vertex.
    pub h_c: i64,
}

impl CoxeterData {
    /// Height used for vertex placement: `l_c(i) + shift`, which has the parity of node `i`.
    pub fn lv(&self, i: usize) -> i64 {
        self.l_c[i - 1] + self.shift
    }

    /// Slice index of vertex `(i, r)`.
    pub fn slice_of(&self, i: usize, r: i64) -> i64 {
        (r - self.lv(i)).div_euclid(2)
    }

    /// The `c`-sorting word of `w_0`: column `i` is red at slices `-l(i) - 2k`,
    /// green one slice lower; reading slices downward gives the word.
    pub fn sorting_word(&self) -> Vec<(usize, i64)> {
        let n = self.l_c.len();
        let mut reds: Vec<(i64, usize, i64)> = Vec::new();
        for i in 1..=n {
            for k in 0..self.m[i - 1] as i64 {
                let r = -self.lv(i) - 4 * k;
                reds.push((self.slice_of(i, r), i, r));
            }
        }
        reds.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
        reds.into_iter().map(|(_, i, r)| (i, r)).collect()
    }
}

pub fn coxeter_data(rs: &RootSystem, orientation: &Orientation) -> Result<CoxeterData> {
    let n = rs.n;
    // adapted word: repeatedly take the smallest unused sink and reflect there
    let mut word = Vec::new();
    let mut q = orientation.clone();
    let mut used = BTreeSet::new();
    while word.len() < n {
        let i = (1..=n)
            .find(|&i| !used.contains(&i) && q.is_sink(i))
            .ok_or_else(|| Error::BadOrientation("no sink found".into()))?;
        used.insert(i);
        word.push(i);
        q = q.reflect_at(i);
    }
    let c = weyl_from_word(rs, &word)?;

    // height function on the tree
    let mut l: BTreeMap<usize, i64> = BTreeMap::from([(1, 0)]);
    let mut queue = VecDeque::from([1usize]);
    while let Some(i) = queue.pop_front() {
        for &(a, b) in &orientation.arrows {
            let (other, val) = if a == i {
                (b, l[&i] - 1)
            } else if b == i {
                (a, l[&i] + 1)
            } else {
                continue;
            };
            if let std::collections::btree_map::Entry::Vacant(e) = l.entry(other) {
                e.insert(val);
                queue.push_back(other);
            }
        }
    }
    let min = *l.values().min().expect("nonempty");
    let l_c: Vec<i64> = (1..=n).map(|i| l[&i] - min).collect();
    let shift = (l_c[0] - rs.class(1)).rem_euclid(2);

    let nu = rs.nakayama();
    let mut m = Vec::with_capacity(n);
    for i in 1..=n {
        let target = rs.fundamental_weight(nu[i - 1]).neg();
        let mut lam = rs.fundamental_weight(i);
        let mut k = 0;
        while lam != target {
            lam = weyl_apply(&c, &lam);
            k += 1;
            if k > 4 * rs.coxeter_number() {
                return Err(Error::BadOrientation("orbit did not reach -ϖ_ν(i)".into()));
            }
        }
        m.push(k);
    }
    let mut data = CoxeterData {
        orientation: orientation.clone(),
        word,
        c,
        l_c,
        shift,
        h: rs.coxeter_number(),
        m,
        h_c: 0,
    };
    data.h_c = data
        .sorting_word()
        .iter()
        .map(|&(i, r)| data.slice_of(i, r - 2))
        .min()
        .unwrap_or(0);
    Ok(data)
}

/// Coxeter data for the element with adapted word `word`.
pub fn coxeter_data_from_word(rs: &RootSystem, word: &[usize]) -> Result<CoxeterData> {
    let o = Orientation::from_coxeter_word(rs, word)?;
    let data = coxeter_data(rs, &o)?;
    debug_assert_eq!(data.c, weyl_from_word(rs, word)?);
    Ok(data)
}

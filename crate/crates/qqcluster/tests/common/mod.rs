//! Quiver laws shared by the property tests and the acceptance runner.

use proptest::prelude::*;
use proptest::test_runner::TestCaseError;

use qqcluster::quiver::{build_coxeter_quiver, mutate_quiver, CoxeterQuiver, VertexId, WindowedQuiver};
use qqcluster::rootsys::{Orientation, RootSystem};

pub const TYPES: [&str; 7] = ["A1", "A2", "A3", "A4", "D4", "D5", "E6"];

/// A Coxeter quiver given by a type and a Coxeter word, plus a seed that
/// drives the choices made inside each law.
#[derive(Debug, Clone)]
pub struct Case {
    pub name: &'static str,
    pub word: Vec<usize>,
    pub picks: Vec<usize>,
}

impl Case {
    pub fn quiver(&self) -> CoxeterQuiver {
        let rs = RootSystem::parse(self.name).unwrap();
        let o = Orientation::from_coxeter_word(&rs, &self.word).unwrap();
        build_coxeter_quiver(&rs, &o, 6, 12).unwrap()
    }
}

pub fn case() -> impl Strategy<Value = Case> {
    (0..TYPES.len())
        .prop_flat_map(|t| {
            let n = RootSystem::parse(TYPES[t]).unwrap().n;
            (Just(t), Just((1..=n).collect::<Vec<_>>()).prop_shuffle(), prop::collection::vec(any::<usize>(), 8))
        })
        .prop_map(|(t, word, picks)| Case { name: TYPES[t], word, picks })
}

fn mutable(q: &WindowedQuiver) -> Vec<VertexId> {
    q.vertices().filter(|&v| q.is_interior(v) && !q.is_frozen(v)).collect()
}

/// `μ_v ∘ μ_v = id` after a short random mutation walk.
pub fn involutive(c: &Case) -> Result<(), TestCaseError> {
    let mut q = c.quiver().quiver;
    for &p in &c.picks[..c.picks[0] % 4] {
        let vs = mutable(&q);
        q = mutate_quiver(&q, vs[p % vs.len()]).unwrap();
    }
    let vs = mutable(&q);
    let v = vs[c.picks[7] % vs.len()];
    let twice = mutate_quiver(&mutate_quiver(&q, v).unwrap(), v).unwrap();
    prop_assert_eq!(twice, q, "{} {:?} at {}", c.name, c.word, v);
    Ok(())
}

fn shuffled<T: Clone>(items: &[T], picks: &[usize]) -> Vec<T> {
    let mut out = items.to_vec();
    for (k, &p) in picks.iter().cycle().take(out.len()).enumerate() {
        let j = k + p % (out.len() - k);
        out.swap(k, j);
    }
    out
}

fn mutate_all(q: &WindowedQuiver, order: &[VertexId]) -> WindowedQuiver {
    order.iter().fold(q.clone(), |acc, &g| mutate_quiver(&acc, g).unwrap())
}

/// Mutating at every green vertex gives the same quiver in any order.
pub fn greens_commute(c: &Case) -> Result<(), TestCaseError> {
    let q = c.quiver().quiver;
    let greens = q.greens();
    let a = mutate_all(&q, &shuffled(&greens, &c.picks[..4]));
    let b = mutate_all(&q, &shuffled(&greens, &c.picks[4..]));
    prop_assert_eq!(a, b, "{} {:?}", c.name, c.word);
    Ok(())
}

/// Mutating at every green vertex translates `Γ_c` down by one step.
pub fn shift_down(c: &Case) -> Result<(), TestCaseError> {
    let q = c.quiver().quiver;
    let moved = mutate_all(&q, &shuffled(&q.greens(), &c.picks));
    let lo = q.r_min + q.margin + 1;
    let hi = q.r_max - q.margin - 1;
    prop_assert!(moved.same_on(&q.translate(-2), lo, hi), "{} {:?}", c.name, c.word);
    Ok(())
}

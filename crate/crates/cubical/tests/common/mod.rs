//! Test-only oracles, independent of the kernels they check.
//!
//! The shuffle-closure oracle decides word equality by exhaustive closure
//! under adjacent commuting swaps and adjacent inverse cancellations; the
//! grid and tree models compute distances by breadth-first search and free
//! reduction. None of this code shares a path with the piling normal form,
//! the gate machinery, or the median extractor.

#![allow(dead_code)]

use std::collections::HashSet;

use cubical::graph::DefiningGraph;
use cubical::words::{GroupElement, Raag, Sign};

/// Oracle letter: (vertex index, sign) with `false` = positive.
pub type OLetter = (u8, bool);

pub struct OracleGroup {
    pub adj: Vec<Vec<bool>>,
}

impl OracleGroup {
    pub fn from_graph(g: &DefiningGraph) -> OracleGroup {
        let n = g.vertex_count();
        let mut adj = vec![vec![false; n]; n];
        for u in g.vertices() {
            for v in g.vertices() {
                adj[u.index()][v.index()] = g.adjacent(u, v);
            }
        }
        OracleGroup { adj }
    }

    fn neighbors(&self, w: &[OLetter]) -> Vec<Vec<OLetter>> {
        let mut out = Vec::new();
        for i in 0..w.len() {
            if i + 1 < w.len() {
                let (a, b) = (w[i], w[i + 1]);
                if a.0 == b.0 && a.1 != b.1 {
                    let mut shorter = w.to_vec();
                    shorter.drain(i..=i + 1);
                    out.push(shorter);
                } else if a.0 != b.0 && self.adj[a.0 as usize][b.0 as usize] {
                    let mut swapped = w.to_vec();
                    swapped.swap(i, i + 1);
                    out.push(swapped);
                }
            }
        }
        out
    }

    /// Exhaustive closure under swaps and cancellations; the canonical form
    /// is the ShortLex-least member.
    pub fn canonical(&self, word: &[OLetter]) -> Vec<OLetter> {
        let mut seen: HashSet<Vec<OLetter>> = HashSet::new();
        let mut stack = vec![word.to_vec()];
        let mut best: Option<Vec<OLetter>> = None;
        while let Some(w) = stack.pop() {
            if !seen.insert(w.clone()) {
                continue;
            }
            let better = match &best {
                None => true,
                Some(b) => (w.len(), &w) < (b.len(), b),
            };
            if better {
                best = Some(w.clone());
            }
            stack.extend(self.neighbors(&w));
        }
        best.expect("closure contains the word itself")
    }

    pub fn equal(&self, w1: &[OLetter], w2: &[OLetter]) -> bool {
        self.canonical(w1) == self.canonical(w2)
    }
}

pub fn to_oracle_letters(g: &GroupElement) -> Vec<OLetter> {
    g.letters()
        .iter()
        .map(|l| (l.vertex.0 as u8, l.sign == Sign::Neg))
        .collect()
}

// ---- fixtures ---------------------------------------------------------------

pub fn f2() -> Raag {
    Raag::new(DefiningGraph::new(&["a", "b"], &[]).unwrap())
}

pub fn z2() -> Raag {
    Raag::new(DefiningGraph::new(&["a", "b"], &[("a", "b")]).unwrap())
}

pub fn p3() -> Raag {
    Raag::new(DefiningGraph::new(&["a", "b", "c"], &[("a", "b"), ("b", "c")]).unwrap())
}

pub fn k3() -> Raag {
    Raag::new(DefiningGraph::new(&["a", "b", "c"], &[("a", "b"), ("b", "c"), ("a", "c")]).unwrap())
}

pub fn fixtures() -> Vec<(&'static str, Raag)> {
    vec![("F2", f2()), ("Z2", z2()), ("P3", p3()), ("K3", k3())]
}

/// All words of length exactly `len` over the fixture's signed alphabet.
pub fn words_of_length(raag: &Raag, len: usize) -> Vec<Vec<cubical::words::Letter>> {
    use cubical::words::Letter;
    let alphabet: Vec<Letter> = raag
        .graph()
        .vertices()
        .flat_map(|v| [Letter::pos(v), Letter::neg(v)])
        .collect();
    let mut words = vec![Vec::new()];
    for _ in 0..len {
        let mut next = Vec::with_capacity(words.len() * alphabet.len());
        for w in &words {
            for &l in &alphabet {
                let mut w2 = w.clone();
                w2.push(l);
                next.push(w2);
            }
        }
        words = next;
    }
    words
}

// ---- grid model (Z²) ---------------------------------------------------------

/// Coordinates of a Z² element in the grid model.
pub fn grid_coords(g: &GroupElement) -> (i32, i32) {
    let mut x = 0;
    let mut y = 0;
    for l in g.letters() {
        let delta = if l.sign == Sign::Pos { 1 } else { -1 };
        if l.vertex.0 == 0 {
            x += delta;
        } else {
            y += delta;
        }
    }
    (x, y)
}

/// Breadth-first search distance in the grid graph.
pub fn grid_bfs_distance(from: (i32, i32), to: (i32, i32)) -> usize {
    use std::collections::VecDeque;
    if from == to {
        return 0;
    }
    let mut seen = HashSet::new();
    let mut queue = VecDeque::from([(from, 0usize)]);
    seen.insert(from);
    while let Some((p, d)) = queue.pop_front() {
        for q in [(p.0 + 1, p.1), (p.0 - 1, p.1), (p.0, p.1 + 1), (p.0, p.1 - 1)] {
            if q == to {
                return d + 1;
            }
            // stay inside a box that surely contains every geodesic
            let bound = (from.0 - to.0).abs() + (from.1 - to.1).abs() + 2;
            if (q.0 - to.0).abs() + (q.1 - to.1).abs() > bound {
                continue;
            }
            if seen.insert(q) {
                queue.push_back((q, d + 1));
            }
        }
    }
    unreachable!("grid is connected")
}

// ---- tree model (F2) -----------------------------------------------------------

pub fn free_reduce(word: &[OLetter]) -> Vec<OLetter> {
    let mut out: Vec<OLetter> = Vec::new();
    for &l in word {
        if let Some(&last) = out.last() {
            if last.0 == l.0 && last.1 != l.1 {
                out.pop();
                continue;
            }
        }
        out.push(l);
    }
    out
}

pub fn tree_distance(u: &GroupElement, v: &GroupElement) -> usize {
    let mut w: Vec<OLetter> = to_oracle_letters(u)
        .iter()
        .rev()
        .map(|&(x, s)| (x, !s))
        .collect();
    w.extend(to_oracle_letters(v));
    free_reduce(&w).len()
}

// ---- brute-force helpers --------------------------------------------------------

use cubical::ball::{ball, interval};
use cubical::gates::{coset_contains, StandardCoset};
use cubical::geometry::distance;

/// Members of a standard coset of the form `base·u` with `|u| ≤ depth`.
pub fn coset_members(raag: &Raag, c: &StandardCoset, depth: usize) -> Vec<GroupElement> {
    let sub = subgroup_ball(raag, c.generators(), depth);
    sub.iter().map(|u| raag.multiply(c.base(), u).unwrap()).collect()
}

/// Ball of the standard subgroup ⟨gens⟩.
pub fn subgroup_ball(
    raag: &Raag,
    gens: cubical::graph::VertexSet,
    depth: usize,
) -> Vec<GroupElement> {
    ball(raag, depth)
        .into_iter()
        .filter(|g| g.support().is_subset(gens))
        .collect()
}

/// Brute-force gate: unique member of the coset window nearest to `x`.
/// Returns (gate, unique).
pub fn brute_gate(
    raag: &Raag,
    x: &GroupElement,
    c: &StandardCoset,
    depth: usize,
) -> (GroupElement, bool) {
    let members = coset_members(raag, c, depth);
    let best = members
        .iter()
        .map(|m| (distance(raag, x, m), m.clone()))
        .min_by_key(|(d, m)| (*d, m.ball_key()))
        .expect("coset window nonempty");
    let unique = members
        .iter()
        .filter(|m| distance(raag, x, m) == best.0)
        .count()
        == 1;
    (best.1, unique)
}

/// Brute-force median: the unique betweenness point of the interval I(a, b).
pub fn brute_median(
    raag: &Raag,
    a: &GroupElement,
    b: &GroupElement,
    c: &GroupElement,
) -> GroupElement {
    // every interval member is between a and b; filter by the other two
    // betweenness equalities
    let candidates: Vec<GroupElement> = interval(raag, a, b)
        .into_iter()
        .filter(|m| {
            distance(raag, a, m) + distance(raag, m, c) == distance(raag, a, c)
                && distance(raag, b, m) + distance(raag, m, c) == distance(raag, b, c)
        })
        .collect();
    assert_eq!(
        candidates.len(),
        1,
        "betweenness point must be unique in a median graph"
    );
    candidates.into_iter().next().unwrap()
}

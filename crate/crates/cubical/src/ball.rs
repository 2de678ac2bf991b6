//! Exact enumeration of balls and intervals in the Cayley graph.

use std::collections::HashSet;

use crate::words::{GroupElement, Letter, Raag};

/// All elements of length at most `radius`, in ball order (length, then
/// ShortLex). Deterministic.
pub fn ball(raag: &Raag, radius: usize) -> Vec<GroupElement> {
    let mut seen: HashSet<GroupElement> = HashSet::new();
    let mut out: Vec<GroupElement> = Vec::new();
    let mut frontier = vec![raag.identity()];
    seen.insert(raag.identity());
    let letters: Vec<Letter> = raag
        .graph()
        .vertices()
        .flat_map(|v| [Letter::pos(v), Letter::neg(v)])
        .collect();
    for len in 0..=radius {
        frontier.sort_by(|a, b| a.letters().cmp(b.letters()));
        out.extend(frontier.iter().cloned());
        if len == radius {
            break;
        }
        let mut next = Vec::new();
        for g in &frontier {
            for &l in &letters {
                let h = raag.mul_letter(g, l);
                if h.len() == len + 1 && seen.insert(h.clone()) {
                    next.push(h);
                }
            }
        }
        frontier = next;
    }
    out
}

/// The ball of `radius` around `center`: `center · ball(radius)`.
pub fn ball_around(raag: &Raag, center: &GroupElement, radius: usize) -> Vec<GroupElement> {
    ball(raag, radius).iter().map(|g| raag.mul(center, g)).collect()
}

/// All left divisors of `w`: the elements lying on some geodesic from the
/// identity to `w` (the interval `I(1, w)`).
pub fn left_divisors(raag: &Raag, w: &GroupElement) -> Vec<GroupElement> {
    // Collect the suffixes reachable by stripping front-shufflable letters;
    // the divisors are w · suffix⁻¹. Every length-additive decomposition
    // w = d · s arises by iterated front stripping.
    let mut suffixes: HashSet<GroupElement> = HashSet::new();
    let mut stack = vec![w.clone()];
    while let Some(cur) = stack.pop() {
        if !suffixes.insert(cur.clone()) {
            continue;
        }
        for &i in raag.front_positions(cur.letters()).iter() {
            let mut rest = cur.letters().to_vec();
            rest.remove(i);
            stack.push(raag.element(&rest));
        }
    }
    let mut out: Vec<GroupElement> = suffixes
        .iter()
        .map(|suffix| {
            // divisor d with w = d · suffix
            let d = raag.mul(w, &raag.invert(suffix));
            debug_assert_eq!(d.len() + suffix.len(), w.len());
            d
        })
        .collect();
    out.sort_by(|a, b| a.ball_key().cmp(&b.ball_key()));
    out.dedup();
    out
}

/// The interval `I(a, b)`: vertices lying on some geodesic from `a` to `b`.
pub fn interval(raag: &Raag, a: &GroupElement, b: &GroupElement) -> Vec<GroupElement> {
    left_divisors(raag, &raag.diff(a, b))
        .iter()
        .map(|d| raag.mul(a, d))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::DefiningGraph;

    fn z2() -> Raag {
        Raag::new(DefiningGraph::new(&["a", "b"], &[("a", "b")]).unwrap())
    }
    fn f2() -> Raag {
        Raag::new(DefiningGraph::new(&["a", "b"], &[]).unwrap())
    }

    #[test]
    fn ball_sizes() {
        // Z²: |ball(r)| = 2r² + 2r + 1
        let r = z2();
        for radius in 0..4 {
            assert_eq!(ball(&r, radius).len(), 2 * radius * radius + 2 * radius + 1);
        }
        // F2: 1 + 4·(3^r - 1)/2 elements: 1, 5, 17, 53
        let r = f2();
        let sizes: Vec<usize> = (0..4).map(|k| ball(&r, k).len()).collect();
        assert_eq!(sizes, vec![1, 5, 17, 53]);
    }

    #[test]
    fn ball_is_deterministic_and_sorted() {
        let r = z2();
        let b1 = ball(&r, 3);
        let b2 = ball(&r, 3);
        assert_eq!(b1, b2);
        for w in b1.windows(2) {
            assert!(w[0].ball_key() < w[1].ball_key());
        }
    }

    #[test]
    fn divisors_of_grid_word() {
        let r = z2();
        let w = r.parse_element("a a b").unwrap();
        // grid rectangle 2×1: divisors are the 6 lattice points
        let d = left_divisors(&r, &w);
        assert_eq!(d.len(), 6);
        for g in &d {
            let rest = r.diff(g, &w);
            assert_eq!(g.len() + rest.len(), w.len());
        }
    }

    #[test]
    fn divisors_of_free_word() {
        let r = f2();
        let w = r.parse_element("a b a^-1").unwrap();
        // a tree geodesic has exactly length+1 divisors
        assert_eq!(left_divisors(&r, &w).len(), 4);
    }
}

//! The classifying invariant for finite hyperplane sequences, the exact
//! orbit-equivalence decider it yields, tail equivalence for eventually
//! periodic sequences, and the horizon-bounded tuple decider.
//!
//! For a sequence `h_1, …, h_k` the invariant is the list of labels together
//! with the gate translations `s_n` between consecutive carrier cosets and
//! `t_n` between the nested projections, plus the terminal coset of the
//! recursion. Two sequences lie in the same orbit of the group action exactly
//! when labels, `s` and `t` agree, and then `y·x⁻¹` for the terminal bases
//! `x, y` is a witness.

use crate::ball;
use crate::error::{Error, Result};
use crate::exec;
use crate::gates::{coset_translate_right, gate_pair, StandardCoset};
use crate::geometry::Hyperplane;
use crate::graph::VertexId;
use crate::words::{GroupElement, Letter, Raag};

/// The carrier-side coset of a hyperplane: `base·⟨link(label)⟩`.
pub fn carrier_coset(raag: &Raag, h: &Hyperplane) -> StandardCoset {
    crate::geometry::carrier_coset(raag, h)
}

/// Left action of the group on hyperplanes: labels are preserved, carrier
/// cosets are translated.
pub fn act(raag: &Raag, g: &GroupElement, h: &Hyperplane) -> Hyperplane {
    let moved = raag.mul(g, h.base());
    crate::geometry::hyperplane_of_edge(raag, &moved, Letter::pos(h.label))
}

pub fn act_seq(raag: &Raag, g: &GroupElement, seq: &[Hyperplane]) -> Vec<Hyperplane> {
    seq.iter().map(|h| act(raag, g, h)).collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassifyingInvariant {
    pub labels: Vec<VertexId>,
    /// Gate translations between consecutive carriers, `s_1 … s_{k-1}`.
    pub s: Vec<GroupElement>,
    /// Translations of the nested projections, `t_2 … t_{k-1}`.
    pub t: Vec<GroupElement>,
    /// The terminal coset of the recursion; its base is the canonical point
    /// from which a witness is read off.
    pub terminal: StandardCoset,
}

impl ClassifyingInvariant {
    /// The action-invariant part (everything except the terminal coset).
    pub fn key(&self) -> (&[VertexId], &[GroupElement], &[GroupElement]) {
        (&self.labels, &self.s, &self.t)
    }
}

/// Runs the nested gate recursion on a finite hyperplane sequence.
///
/// For `k = 1` the terminal coset is the carrier itself. For `k ≥ 2` the
/// recursion projects each carrier onto the next, tracks the domains as
/// right-translates back in the first carrier, and stops with the terminal
/// domain coset: exactly the points `x` such that `x·(s_1 t_2 s_2 ⋯ s_{n-1})`
/// lies in the `n`-th carrier for every `n ≤ k`.
pub fn classifying_invariant(raag: &Raag, seq: &[Hyperplane]) -> Result<ClassifyingInvariant> {
    if seq.is_empty() {
        return Err(Error::LengthMismatch(0, 1));
    }
    let labels: Vec<VertexId> = seq.iter().map(|h| h.label).collect();
    let carriers: Vec<StandardCoset> = seq.iter().map(|h| carrier_coset(raag, h)).collect();
    let k = seq.len();
    if k == 1 {
        return Ok(ClassifyingInvariant {
            labels,
            s: Vec::new(),
            t: Vec::new(),
            terminal: carriers[0].clone(),
        });
    }

    let mut s = Vec::with_capacity(k - 1);
    let mut a_sets = Vec::with_capacity(k - 1);
    let mut b_sets = Vec::with_capacity(k - 1);
    for i in 0..k - 1 {
        let pair = gate_pair(raag, &carriers[i], &carriers[i + 1]);
        a_sets.push(pair.rho_a);
        b_sets.push(pair.rho_b);
        s.push(pair.translation);
    }

    let mut t = Vec::with_capacity(k.saturating_sub(2));
    let mut c = a_sets[0].clone();
    let mut d = b_sets[0].clone();
    // cumulative word u_n = s_1 t_2 s_2 ⋯ t_n s_n
    let mut u = s[0].clone();
    for j in 1..k - 1 {
        let pair = gate_pair(raag, &d, &a_sets[j]);
        t.push(pair.translation.clone());
        c = coset_translate_right(raag, &pair.rho_a, &raag.invert(&u));
        d = coset_translate_right(raag, &pair.rho_b, &s[j]);
        u = raag.mul(&raag.mul(&u, &pair.translation), &s[j]);
    }

    Ok(ClassifyingInvariant { labels, s, t, terminal: c })
}

/// Decides whether two equal-length hyperplane sequences lie in the same
/// orbit; returns a verified witness if so.
pub fn decide_orbit_equiv(
    raag: &Raag,
    seq1: &[Hyperplane],
    seq2: &[Hyperplane],
) -> Result<Option<GroupElement>> {
    if seq1.len() != seq2.len() {
        return Err(Error::LengthMismatch(seq1.len(), seq2.len()));
    }
    let inv1 = classifying_invariant(raag, seq1)?;
    let inv2 = classifying_invariant(raag, seq2)?;
    if inv1.key() != inv2.key() {
        return Ok(None);
    }
    let x = inv1.terminal.base();
    let y = inv2.terminal.base();
    let g = raag.mul(y, &raag.invert(x));
    let verified = seq1
        .iter()
        .zip(seq2)
        .all(|(h, target)| act(raag, &g, h) == *target);
    if verified {
        Ok(Some(g))
    } else {
        Ok(None)
    }
}

// ---- tail equivalence ------------------------------------------------------

/// An eventually periodic sequence: a finite preperiod followed by a
/// nonempty period repeated forever.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EventuallyPeriodic<T> {
    pub preperiod: Vec<T>,
    pub period: Vec<T>,
}

impl<T> EventuallyPeriodic<T> {
    pub fn new(preperiod: Vec<T>, period: Vec<T>) -> Result<Self> {
        if period.is_empty() {
            return Err(Error::EmptyPeriod);
        }
        Ok(EventuallyPeriodic { preperiod, period })
    }

    pub fn index(&self, i: usize) -> &T {
        if i < self.preperiod.len() {
            &self.preperiod[i]
        } else {
            &self.period[(i - self.preperiod.len()) % self.period.len()]
        }
    }

    pub fn map<U, F: FnMut(&T) -> U>(&self, mut f: F) -> EventuallyPeriodic<U> {
        EventuallyPeriodic {
            preperiod: self.preperiod.iter().map(&mut f).collect(),
            period: self.period.iter().map(&mut f).collect(),
        }
    }
}

fn lcm(a: usize, b: usize) -> usize {
    fn gcd(mut a: usize, mut b: usize) -> usize {
        while b != 0 {
            (a, b) = (b, a % b);
        }
        a
    }
    a / gcd(a, b) * b
}

/// Least lexicographic `(n, m)` with `u_{n+i} = w_{m+i}` for all `i`, if any.
///
/// Exact for eventually periodic inputs: shifts beyond preperiod + lcm of the
/// periods repeat, and two shifted sequences agree everywhere iff they agree
/// on a window of that length.
pub fn tail_equivalent<T: Eq>(
    u: &EventuallyPeriodic<T>,
    w: &EventuallyPeriodic<T>,
) -> Option<(usize, usize)> {
    let p = u.preperiod.len().max(w.preperiod.len());
    let q = lcm(u.period.len(), w.period.len());
    let bound = p + q;
    let window = p + 2 * q;
    for n in 0..=bound {
        for m in 0..=bound {
            if (0..window).all(|i| u.index(n + i) == w.index(m + i)) {
                return Some((n, m));
            }
        }
    }
    None
}

/// Equality of two eventually periodic sequences from position 0.
pub fn streams_equal<T: Eq>(u: &EventuallyPeriodic<T>, w: &EventuallyPeriodic<T>) -> bool {
    let window = u.preperiod.len().max(w.preperiod.len()) + 2 * lcm(u.period.len(), w.period.len());
    (0..window).all(|i| u.index(i) == w.index(i))
}

// ---- the tuple decider -----------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FnVerdict {
    /// A verified witness mapping every coordinate to a tail-equivalent
    /// sequence.
    Witness(GroupElement),
    /// No witness of length up to the given radius; not a "no".
    NoneWithinRadius(usize),
}

/// Searches for `g` with `|g| ≤ search_radius` such that `g·α_i` is
/// tail-equivalent to `β_i` for every coordinate.
pub fn decide_fn(
    raag: &Raag,
    alpha: &[EventuallyPeriodic<Hyperplane>],
    beta: &[EventuallyPeriodic<Hyperplane>],
    search_radius: usize,
) -> Result<FnVerdict> {
    if alpha.len() != beta.len() {
        return Err(Error::ArityMismatch(alpha.len(), beta.len()));
    }
    let candidates = ball::ball(raag, search_radius);
    let hit = exec::find_map_first(&candidates, |g| {
        let ok = alpha.iter().zip(beta).all(|(a, b)| {
            let moved = a.map(|h| act(raag, g, h));
            tail_equivalent(&moved, b).is_some()
        });
        ok.then(|| g.clone())
    });
    Ok(match hit {
        Some(g) => FnVerdict::Witness(g),
        None => FnVerdict::NoneWithinRadius(search_radius),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::hyperplane_of_edge;
    use crate::graph::DefiningGraph;

    fn z2() -> Raag {
        Raag::new(DefiningGraph::new(&["a", "b"], &[("a", "b")]).unwrap())
    }
    fn f2() -> Raag {
        Raag::new(DefiningGraph::new(&["a", "b"], &[]).unwrap())
    }
    fn p3() -> Raag {
        Raag::new(DefiningGraph::new(&["a", "b", "c"], &[("a", "b"), ("b", "c")]).unwrap())
    }

    fn hp(r: &Raag, at: &str, letter: &str) -> Hyperplane {
        let x = r.parse_element(at).unwrap();
        let l = r.parse_word(letter).unwrap()[0];
        hyperplane_of_edge(r, &x, l)
    }

    #[test]
    fn carriers() {
        let r = z2();
        let c = carrier_coset(&r, &hp(&r, "", "a"));
        assert!(c.base().is_identity());
        assert_eq!(r.graph().set_names(c.generators()), vec!["b"]);
        let r = f2();
        let c = carrier_coset(&r, &hp(&r, "b", "a"));
        assert_eq!(r.format(c.base()), "b");
        assert!(c.generators().is_empty());
        let r = p3();
        let c = carrier_coset(&r, &hp(&r, "", "b"));
        assert_eq!(r.graph().set_names(c.generators()), vec!["a", "c"]);
    }

    #[test]
    fn action() {
        let r = z2();
        let h = hp(&r, "", "a");
        assert_eq!(act(&r, &r.identity(), &h), h);
        // b³ lies in the carrier subgroup ⟨b⟩, so it stabilizes h
        assert_eq!(act(&r, &r.parse_element("b b b").unwrap(), &h), h);
        let r = f2();
        let h = hp(&r, "", "b");
        let moved = act(&r, &r.parse_element("a").unwrap(), &h);
        assert_eq!(moved, hp(&r, "a", "b"));
        // action law on a sample
        let g1 = r.parse_element("a b").unwrap();
        let g2 = r.parse_element("b^-1 a").unwrap();
        let g12 = r.multiply(&g1, &g2).unwrap();
        assert_eq!(act(&r, &g12, &h), act(&r, &g1, &act(&r, &g2, &h)));
    }

    #[test]
    fn invariant_small_cases() {
        let r = z2();
        // single hyperplane: terminal is the carrier
        let inv = classifying_invariant(&r, &[hp(&r, "", "b")]).unwrap();
        assert!(inv.s.is_empty() && inv.t.is_empty());
        assert_eq!(inv.terminal, carrier_coset(&r, &hp(&r, "", "b")));

        // crossing pair in Z²: carriers ⟨a⟩ and ⟨b⟩ intersect in {1}
        let seq = [hp(&r, "", "b"), hp(&r, "", "a")];
        let inv = classifying_invariant(&r, &seq).unwrap();
        assert_eq!(inv.s, vec![r.identity()]);
        assert!(inv.t.is_empty());
        assert!(inv.terminal.base().is_identity());
        assert!(inv.terminal.generators().is_empty());

        // F2: ((a,1),(b,a)): carriers {1} and {a}, s₁ = a, terminal {1}
        let r = f2();
        let seq = [hp(&r, "", "a"), hp(&r, "a", "b")];
        let inv = classifying_invariant(&r, &seq).unwrap();
        assert_eq!(inv.s, vec![r.parse_element("a").unwrap()]);
        assert!(inv.terminal.base().is_identity());
    }

    #[test]
    fn orbit_decider() {
        let r = f2();
        let s1 = vec![hp(&r, "", "a")];
        assert_eq!(
            decide_orbit_equiv(&r, &s1, &s1).unwrap(),
            Some(r.identity())
        );
        // free transitivity on same-label hyperplanes
        let s2 = vec![hp(&r, "b", "a")];
        assert_eq!(
            decide_orbit_equiv(&r, &s1, &s2).unwrap(),
            Some(r.parse_element("b").unwrap())
        );
        // label mismatch
        let r = z2();
        let s1 = vec![hp(&r, "", "a"), hp(&r, "", "b")];
        let s2 = vec![hp(&r, "", "b"), hp(&r, "", "a")];
        assert_eq!(decide_orbit_equiv(&r, &s1, &s2).unwrap(), None);
        // length mismatch is an error
        assert!(decide_orbit_equiv(&r, &s1, &s1[..1]).is_err());
    }

    #[test]
    fn tails() {
        let u = EventuallyPeriodic::new(vec![], vec!["x", "y"]).unwrap();
        assert_eq!(tail_equivalent(&u, &u), Some((0, 0)));
        // (x,y,x,y,…) vs (y,x,y,x,…): shift by one; (0,1) is the least witness
        let w = EventuallyPeriodic::new(vec![], vec!["y", "x"]).unwrap();
        assert_eq!(tail_equivalent(&u, &w), Some((0, 1)));
        assert_eq!(tail_equivalent(&w, &u), Some((0, 1)));
        // distinct constants
        let a = EventuallyPeriodic::new(vec![], vec!["x"]).unwrap();
        let b = EventuallyPeriodic::new(vec![], vec!["y"]).unwrap();
        assert_eq!(tail_equivalent(&a, &b), None);
        // empty period is rejected
        assert!(EventuallyPeriodic::<u8>::new(vec![1], vec![]).is_err());
    }

    #[test]
    fn fn_decider() {
        let r = f2();
        let alpha = vec![EventuallyPeriodic::new(vec![], vec![hp(&r, "", "a")]).unwrap()];
        assert_eq!(
            decide_fn(&r, &alpha, &alpha, 2).unwrap(),
            FnVerdict::Witness(r.identity())
        );
        let beta = vec![EventuallyPeriodic::new(vec![], vec![hp(&r, "b", "a")]).unwrap()];
        assert_eq!(
            decide_fn(&r, &alpha, &beta, 1).unwrap(),
            FnVerdict::Witness(r.parse_element("b").unwrap())
        );
        // label obstruction: never a witness at any radius
        let r = z2();
        let alpha = vec![EventuallyPeriodic::new(vec![], vec![hp(&r, "", "a")]).unwrap()];
        let beta = vec![EventuallyPeriodic::new(vec![], vec![hp(&r, "", "b")]).unwrap()];
        assert_eq!(
            decide_fn(&r, &alpha, &beta, 3).unwrap(),
            FnVerdict::NoneWithinRadius(3)
        );
    }
}

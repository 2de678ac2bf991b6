//! Hyperplanes of the Cayley cube complex `X(Γ)` as labeled carrier cosets,
//! with separation, the hyperplane-counting metric, medians, and the
//! crossing/contact relations.
//!
//! A hyperplane is encoded by its label vertex `v` and the canonical base of
//! the carrier-side coset `c·⟨link(v)⟩` (the initial vertices of its
//! positively-labeled dual edges). The base vertex lies on the `-` side.

use crate::error::{Error, Result};
use crate::gates::{coset_distance, standard_coset, StandardCoset};
use crate::graph::VertexId;
use crate::words::{GroupElement, Letter, Raag, Sign};
use crate::{ball, exec};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Hyperplane {
    pub label: VertexId,
    base: GroupElement,
}

impl Hyperplane {
    pub fn base(&self) -> &GroupElement {
        &self.base
    }

    fn sort_key(&self) -> (VertexId, (usize, Vec<Letter>)) {
        (self.label, self.base.ball_key())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    Minus,
    Plus,
}

/// The hyperplane dual to the edge leaving `x` with the given letter.
pub fn hyperplane_of_edge(raag: &Raag, x: &GroupElement, letter: Letter) -> Hyperplane {
    let initial = match letter.sign {
        Sign::Pos => x.clone(),
        Sign::Neg => raag.mul_letter(x, letter),
    };
    let link = raag.graph().link(letter.vertex);
    let coset = standard_coset(raag, &initial, link);
    Hyperplane { label: letter.vertex, base: coset.base().clone() }
}

/// The carrier-side coset `base·⟨link(label)⟩`.
pub fn carrier_coset(raag: &Raag, h: &Hyperplane) -> StandardCoset {
    standard_coset(raag, &h.base, raag.graph().link(h.label))
}

/// The coset on the `+` side of the carrier: `base·label·⟨link(label)⟩`.
pub fn carrier_far_coset(raag: &Raag, h: &Hyperplane) -> StandardCoset {
    let shifted = raag.mul_letter(&h.base, Letter::pos(h.label));
    standard_coset(raag, &shifted, raag.graph().link(h.label))
}

/// `d_X(a, b)`: the word metric, i.e. the number of separating hyperplanes.
pub fn distance(raag: &Raag, a: &GroupElement, b: &GroupElement) -> usize {
    raag.diff(a, b).len()
}

/// Hyperplanes dual to the successive edges of the canonical geodesic from
/// `a` to `b`, in crossing order. Pairwise distinct, length `d(a, b)`.
pub fn dual_hyperplanes(raag: &Raag, a: &GroupElement, b: &GroupElement) -> Vec<Hyperplane> {
    let w = raag.diff(a, b);
    let mut x = a.clone();
    let mut out = Vec::with_capacity(w.len());
    for &l in w.letters() {
        out.push(hyperplane_of_edge(raag, &x, l));
        x = raag.mul_letter(&x, l);
    }
    debug_assert_eq!(x, *b);
    out
}

/// Which halfspace of `h` contains `x`. The carrier base is on `Minus`.
pub fn side(raag: &Raag, h: &Hyperplane, x: &GroupElement) -> Side {
    let w = raag.diff(&h.base, x);
    if raag.pos_letter_divides(h.label, &w) {
        Side::Plus
    } else {
        Side::Minus
    }
}

pub fn separates(raag: &Raag, h: &Hyperplane, a: &GroupElement, b: &GroupElement) -> bool {
    side(raag, h, a) != side(raag, h, b)
}

/// `d_X(x, h)`: distance from a vertex to the hyperplane, as the distance to
/// the nearer of its two carrier-side cosets.
pub fn hyperplane_distance(raag: &Raag, x: &GroupElement, h: &Hyperplane) -> usize {
    let near = crate::gates::point_coset_distance(raag, x, &carrier_coset(raag, h));
    let far = crate::gates::point_coset_distance(raag, x, &carrier_far_coset(raag, h));
    near.min(far)
}

/// The median of three vertices: `a · mgld(a⁻¹b, a⁻¹c)`.
pub fn median(raag: &Raag, a: &GroupElement, b: &GroupElement, c: &GroupElement) -> GroupElement {
    let x = raag.diff(a, b);
    let y = raag.diff(a, c);
    raag.mul(a, &raag.common_left_divisor(&x, &y))
}

/// Two hyperplanes cross iff their labels are adjacent in `Γ` and their
/// carrier cosets intersect. Same-label hyperplanes never cross.
pub fn hyperplanes_cross(raag: &Raag, h: &Hyperplane, k: &Hyperplane) -> bool {
    if h.label == k.label || !raag.graph().adjacent(h.label, k.label) {
        return false;
    }
    coset_distance(raag, &carrier_coset(raag, h), &carrier_coset(raag, k)) == 0
}

/// Contact: the full carriers (both side cosets) intersect. Crossing implies
/// contact.
pub fn hyperplanes_contact(raag: &Raag, h: &Hyperplane, k: &Hyperplane) -> bool {
    let hs = [carrier_coset(raag, h), carrier_far_coset(raag, h)];
    let ks = [carrier_coset(raag, k), carrier_far_coset(raag, k)];
    hs.iter().any(|a| ks.iter().any(|b| coset_distance(raag, a, b) == 0))
}

/// A finite piece of the contact graph.
#[derive(Debug, Clone)]
pub struct ContactBall {
    /// Hyperplanes dual to the edges leaving the ball of radius `radius - 1`
    /// around the center, in deterministic order.
    pub hyperplanes: Vec<Hyperplane>,
    /// Contact pairs, as index pairs `i < j`.
    pub edges: Vec<(usize, usize)>,
}

/// Contact graph on the hyperplanes dual to edges within the given ball.
pub fn contact_graph_ball(
    raag: &Raag,
    center: &GroupElement,
    radius: usize,
    cap: usize,
) -> Result<ContactBall> {
    if radius > cap {
        return Err(Error::CapExceeded(radius, cap));
    }
    let mut hyperplanes = Vec::new();
    if radius > 0 {
        for x in ball::ball_around(raag, center, radius - 1) {
            for v in raag.graph().vertices() {
                hyperplanes.push(hyperplane_of_edge(raag, &x, Letter::pos(v)));
            }
        }
    }
    hyperplanes.sort_by(|a, b| a.sort_key().cmp(&b.sort_key()));
    hyperplanes.dedup();
    let pairs: Vec<(usize, usize)> = (0..hyperplanes.len())
        .flat_map(|i| ((i + 1)..hyperplanes.len()).map(move |j| (i, j)))
        .collect();
    let flags = exec::map_collect(&pairs, |&(i, j)| {
        hyperplanes_contact(raag, &hyperplanes[i], &hyperplanes[j])
    });
    let edges = pairs
        .into_iter()
        .zip(flags)
        .filter_map(|(p, f)| f.then_some(p))
        .collect();
    Ok(ContactBall { hyperplanes, edges })
}

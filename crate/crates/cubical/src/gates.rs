//! Standard convex cosets `g⟨U⟩` and the gate machinery between them: the
//! nearest-point projection, the sets `ρ_A^B`, the bijection `ψ_B^A` realized
//! by right multiplication with a translation element, and the common
//! generating set the `ρ`-sets are cosets of.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::VertexSet;
use crate::words::{GroupElement, Raag};

/// A coset `base·⟨U⟩` of a standard subgroup, kept with its canonical
/// (unique minimal-length) representative.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct StandardCoset {
    base: GroupElement,
    generators: VertexSet,
}

impl StandardCoset {
    pub fn base(&self) -> &GroupElement {
        &self.base
    }

    pub fn generators(&self) -> VertexSet {
        self.generators
    }
}

/// Builds the coset `rep·⟨gens⟩`, canonicalizing the representative to the
/// gate of the identity (strip the maximal right divisor supported in `gens`).
pub fn standard_coset(raag: &Raag, rep: &GroupElement, gens: VertexSet) -> StandardCoset {
    let (rest, _div) = raag.extract_right_divisor(rep, gens);
    StandardCoset { base: rest, generators: gens }
}

/// Right-translates a coset whose generators all commute with `g`; the result
/// is the standard coset `(base·g)·⟨U⟩`.
pub(crate) fn coset_translate_right(raag: &Raag, c: &StandardCoset, g: &GroupElement) -> StandardCoset {
    debug_assert!(
        g.support()
            .iter()
            .all(|w| c.generators.iter().all(|v| raag.graph().adjacent(v, w))),
        "right translation must commute with the coset generators"
    );
    standard_coset(raag, &raag.mul(&c.base, g), c.generators)
}

/// Membership: `x ∈ base·⟨U⟩` iff `base⁻¹x` is supported in `U`.
pub fn coset_contains(raag: &Raag, c: &StandardCoset, x: &GroupElement) -> bool {
    raag.diff(&c.base, x).support().is_subset(c.generators)
}

/// The unique nearest point of `A` to `x`.
pub fn gate_point(raag: &Raag, x: &GroupElement, a: &StandardCoset) -> GroupElement {
    let w = raag.diff(&a.base, x);
    let (div, _rest) = raag.extract_left_divisor(&w, a.generators);
    raag.mul(&a.base, &div)
}

/// `d(x, A)`.
pub fn point_coset_distance(raag: &Raag, x: &GroupElement, a: &StandardCoset) -> usize {
    let w = raag.diff(&a.base, x);
    let (_div, rest) = raag.extract_left_divisor(&w, a.generators);
    rest.len()
}

/// Minimal-length decomposition `w = u · core · t` with `u ∈ ⟨U⟩`,
/// `t ∈ ⟨W⟩`, obtained by alternately stripping left `U`-divisors and right
/// `W`-divisors until neither side makes progress.
fn double_strip(raag: &Raag, w: &GroupElement, u_set: VertexSet, w_set: VertexSet) -> (GroupElement, GroupElement, GroupElement) {
    let mut u = raag.identity();
    let mut t = raag.identity();
    let mut core = w.clone();
    loop {
        let mut progressed = false;
        let (du, rest) = raag.extract_left_divisor(&core, u_set);
        if !du.is_identity() {
            u = raag.mul(&u, &du);
            core = rest;
            progressed = true;
        }
        let (rest, dt) = raag.extract_right_divisor(&core, w_set);
        if !dt.is_identity() {
            t = raag.mul(&dt, &t);
            core = rest;
            progressed = true;
        }
        if !progressed {
            return (u, core, t);
        }
    }
}

/// `d(A, B)`: minimum distance between two standard cosets, zero exactly when
/// they intersect.
pub fn coset_distance(raag: &Raag, a: &StandardCoset, b: &StandardCoset) -> usize {
    let w = raag.diff(&a.base, &b.base);
    let (_u, core, _t) = double_strip(raag, &w, a.generators, b.generators);
    core.len()
}

/// The gate data of an ordered pair of standard cosets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GatePair {
    /// `g` with `gate_point(a, B) = a·g` for every `a ∈ ρ_A^B`.
    pub translation: GroupElement,
    /// `V_{A,B}`: the common generators the `ρ`-sets are cosets of.
    pub common: VertexSet,
    /// `ρ_A^B`, the points of `A` nearest to `B`.
    pub rho_a: StandardCoset,
    /// `ρ_B^A`.
    pub rho_b: StandardCoset,
}

/// Computes `ρ_A^B`, `ρ_B^A`, the translation element and `V_{A,B}`.
///
/// When `A ∩ B ≠ ∅` the translation is trivial and `V_{A,B} = U_A ∩ U_B`.
pub fn gate_pair(raag: &Raag, a: &StandardCoset, b: &StandardCoset) -> GatePair {
    let w = raag.diff(&a.base, &b.base);
    let (u, core, _t) = double_strip(raag, &w, a.generators, b.generators);
    let supp = core.support();
    let common = VertexSet::from_iter(
        a.generators
            .intersect(b.generators)
            .iter()
            .filter(|&v| supp.iter().all(|s| raag.graph().adjacent(v, s))),
    );
    let r = raag.mul(&a.base, &u);
    let rho_a = standard_coset(raag, &r, common);
    let rho_b = standard_coset(raag, &raag.mul(&r, &core), common);
    GatePair { translation: core, common, rho_a, rho_b }
}

/// Applies `ψ_B^A` to a point of `ρ_A^B`: right multiplication by the
/// translation element.
pub fn psi_apply(raag: &Raag, pair: &GatePair, x: &GroupElement) -> Result<GroupElement> {
    if !coset_contains(raag, &pair.rho_a, x) {
        return Err(Error::NotInRho);
    }
    Ok(raag.mul(x, &pair.translation))
}

/// Diagnostic record for the grid between two convex sets.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GridCheckReport {
    pub b0: String,
    pub b1: String,
    pub distance_top: usize,
    pub distance_bottom: usize,
    pub label_word_top: String,
    pub label_word_bottom: String,
    pub ok: bool,
}

/// Projects `a0, a1 ∈ ρ_A^B` onto `B` and checks the grid facts: equal side
/// lengths and equal label words of the opposite geodesics.
pub fn grid_check(
    raag: &Raag,
    a: &StandardCoset,
    a0: &GroupElement,
    a1: &GroupElement,
    b: &StandardCoset,
) -> Result<GridCheckReport> {
    let pair = gate_pair(raag, a, b);
    if !coset_contains(raag, &pair.rho_a, a0) || !coset_contains(raag, &pair.rho_a, a1) {
        return Err(Error::NotInRho);
    }
    let b0 = gate_point(raag, a0, b);
    let b1 = gate_point(raag, a1, b);
    let top = raag.diff(a0, a1);
    let bottom = raag.diff(&b0, &b1);
    let ok = top.len() == bottom.len() && top.letters() == bottom.letters();
    Ok(GridCheckReport {
        b0: raag.format(&b0),
        b1: raag.format(&b1),
        distance_top: top.len(),
        distance_bottom: bottom.len(),
        label_word_top: raag.format(&top),
        label_word_bottom: raag.format(&bottom),
        ok,
    })
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
    fn p3() -> Raag {
        Raag::new(DefiningGraph::new(&["a", "b", "c"], &[("a", "b"), ("b", "c")]).unwrap())
    }

    fn coset(r: &Raag, base: &str, gens: &[&str]) -> StandardCoset {
        let rep = r.parse_element(base).unwrap();
        let gens = VertexSet::from_iter(gens.iter().map(|n| r.graph().vertex(n).unwrap()));
        standard_coset(r, &rep, gens)
    }

    #[test]
    fn canonical_base_strips_right_divisors() {
        let r = z2();
        let c = coset(&r, "a a b", &["b"]);
        assert_eq!(r.format(c.base()), "a a");
        // membership
        assert!(coset_contains(&r, &c, &r.parse_element("a a b^-1 b^-1").unwrap()));
        assert!(!coset_contains(&r, &c, &r.parse_element("a b").unwrap()));
    }

    #[test]
    fn gate_points() {
        let r = z2();
        let axis = coset(&r, "", &["a"]);
        let x = r.parse_element("a a b b b").unwrap();
        assert_eq!(r.format(&gate_point(&r, &x, &axis)), "a a");
        assert_eq!(point_coset_distance(&r, &x, &axis), 3);
        // a point of the coset gates to itself
        let inside = r.parse_element("a a a").unwrap();
        assert_eq!(gate_point(&r, &inside, &axis), inside);

        let r = f2();
        let axis = coset(&r, "", &["a"]);
        let x = r.parse_element("a b").unwrap();
        assert_eq!(r.format(&gate_point(&r, &x, &axis)), "a");
    }

    #[test]
    fn coset_distances() {
        let r = f2();
        let a = coset(&r, "", &["a"]);
        let b = coset(&r, "b", &["a"]);
        assert_eq!(coset_distance(&r, &a, &a), 0);
        assert_eq!(coset_distance(&r, &a, &b), 1);
        let r = z2();
        let a = coset(&r, "", &["a"]);
        let b = coset(&r, "b b", &["a"]);
        assert_eq!(coset_distance(&r, &a, &b), 2);
    }

    #[test]
    fn gate_pairs() {
        // intersecting case: trivial translation, common = U_A ∩ U_B
        let r = z2();
        let a = coset(&r, "", &["a"]);
        let pair = gate_pair(&r, &a, &a);
        assert!(pair.translation.is_identity());
        assert_eq!(pair.common, a.generators());
        assert_eq!(pair.rho_a, a);
        assert_eq!(pair.rho_b, a);

        // Z²: parallel axes two apart; a commutes with the translation b²
        let b = coset(&r, "b b", &["a"]);
        let pair = gate_pair(&r, &a, &b);
        assert_eq!(r.format(&pair.translation), "b b");
        assert_eq!(pair.common, a.generators());
        assert_eq!(pair.rho_a, a);
        assert_eq!(pair.rho_b, b);
        // ψ: a³ ↦ a³b²
        let x = r.parse_element("a a a").unwrap();
        let y = psi_apply(&r, &pair, &x).unwrap();
        assert_eq!(y, r.parse_element("a a a b b").unwrap());

        // F2: gates collapse to single points
        let r = f2();
        let a = coset(&r, "", &["a"]);
        let b = coset(&r, "b", &["a"]);
        let pair = gate_pair(&r, &a, &b);
        assert_eq!(r.format(&pair.translation), "b");
        assert!(pair.common.is_empty());
        assert_eq!(pair.rho_a, coset(&r, "", &[]));
        assert_eq!(pair.rho_b, coset(&r, "b", &[]));
        assert_eq!(
            psi_apply(&r, &pair, &r.identity()).unwrap(),
            r.parse_element("b").unwrap()
        );
        // domain violation
        assert_eq!(
            psi_apply(&r, &pair, &r.parse_element("a").unwrap()),
            Err(Error::NotInRho)
        );
    }

    #[test]
    fn grid_checks() {
        let r = z2();
        let a = coset(&r, "", &["a"]);
        let b = coset(&r, "b b", &["a"]);
        let a0 = r.identity();
        let a1 = r.parse_element("a a").unwrap();
        let rep = grid_check(&r, &a, &a0, &a1, &b).unwrap();
        assert!(rep.ok);
        assert_eq!(rep.distance_top, 2);
        assert_eq!(rep.distance_bottom, 2);
        assert_eq!(rep.label_word_top, "a a");
        assert_eq!(rep.label_word_bottom, "a a");

        // P3: A = ⟨b⟩, B = c⟨b⟩ with b, c adjacent
        let r = p3();
        let a = coset(&r, "", &["b"]);
        let b = coset(&r, "c", &["b"]);
        let a0 = r.identity();
        let a1 = r.parse_element("b").unwrap();
        let rep = grid_check(&r, &a, &a0, &a1, &b).unwrap();
        assert!(rep.ok);
        assert_eq!(rep.distance_top, 1);
        assert_eq!(rep.label_word_top, "b");
        assert_eq!(rep.label_word_bottom, "b");
        // degenerate grid
        let rep = grid_check(&r, &a, &a0, &a0, &b).unwrap();
        assert!(rep.ok && rep.distance_top == 0);
    }
}

//! Eventually periodic geodesic rays as desk-scale Roller boundary points:
//! label spectra in the distance well-order, order-consistency diagnostics,
//! and the separating-hyperplane machinery behind the Roller graph.
//!
//! A ray is `base` followed by `period` repeated forever, based at the
//! identity. Every operation validates geodesicity of the prefix it touches
//! and reports `HorizonInsufficient` rather than guessing whenever the
//! development depth cannot certify an answer.
//!
//! Whether the ray eventually lies on a given side of a hyperplane is decided
//! by one of four sound certificates:
//!  * an observed side flip (a geodesic crosses a hyperplane at most once);
//!  * the hyperplane's label does not occur in the period, so the tail never
//!    crosses it;
//!  * the distance from the ray to the carrier strictly increased at some
//!    step — re-entering would recross the hyperplane dual to that step;
//!  * the tail translation `γ = base·period·base⁻¹` maps each period's
//!    crossings onto the next period's, so future crossings are the γ-orbit
//!    of the last observed period; an orbit hit certifies a future flip, a
//!    closed orbit certifies none.

use crate::error::{Error, Result};
use crate::gates::point_coset_distance;
use crate::geometry::{
    carrier_coset, carrier_far_coset, dual_hyperplanes, hyperplane_distance, side, Hyperplane, Side,
};
use crate::graph::{VertexId, VertexSet};
use crate::invariants::act;
use crate::words::{GroupElement, Raag};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PeriodicRay {
    pub base: GroupElement,
    pub period: GroupElement,
}

impl PeriodicRay {
    pub fn new(base: GroupElement, period: GroupElement) -> Result<PeriodicRay> {
        if period.is_identity() {
            return Err(Error::EmptyPeriod);
        }
        Ok(PeriodicRay { base, period })
    }
}

/// A ray developed to a fixed depth: vertices, the hyperplanes crossed by
/// each edge, and the tail translation.
pub struct DevelopedRay {
    pub vertices: Vec<GroupElement>,
    pub crossed: Vec<Hyperplane>,
    pub gamma: GroupElement,
    period_len: usize,
    period_support: VertexSet,
}

/// Develops the ray to `depth` edges past `base`, verifying that every prefix
/// is geodesic.
pub fn develop(raag: &Raag, ray: &PeriodicRay, depth: usize) -> Result<DevelopedRay> {
    if ray.period.is_identity() {
        return Err(Error::EmptyPeriod);
    }
    let letters = ray.period.letters().to_vec();
    let mut vertices = Vec::with_capacity(depth + 1);
    let mut crossed = Vec::with_capacity(depth);
    let mut x = ray.base.clone();
    vertices.push(x.clone());
    for d in 0..depth {
        let l = letters[d % letters.len()];
        crossed.push(crate::geometry::hyperplane_of_edge(raag, &x, l));
        let next = raag.mul_letter(&x, l);
        if next.len() != x.len() + 1 {
            return Err(Error::NonGeodesicRay(d + 1));
        }
        vertices.push(next.clone());
        x = next;
    }
    let gamma = raag.mul(&raag.mul(&ray.base, &ray.period), &raag.invert(&ray.base));
    Ok(DevelopedRay {
        vertices,
        crossed,
        gamma,
        period_len: letters.len(),
        period_support: ray.period.support(),
    })
}

/// The `k`-th vertex along the ray (vertex 0 is `base`).
pub fn ray_vertex(raag: &Raag, ray: &PeriodicRay, k: usize) -> Result<GroupElement> {
    let dev = develop(raag, ray, k)?;
    Ok(dev.vertices[k].clone())
}

/// The labels crossed infinitely often: exactly the support of the period.
pub fn infinite_label_classes(raag: &Raag, ray: &PeriodicRay) -> Result<VertexSet> {
    develop(raag, ray, 2 * ray.period.len())?;
    Ok(ray.period.support())
}

/// Eventual side of the ray with respect to `h`, or `HorizonInsufficient`.
pub fn eventual_side(raag: &Raag, dev: &DevelopedRay, h: &Hyperplane) -> Result<Side> {
    let depth = dev.vertices.len() - 1;
    let s0 = side(raag, h, &dev.vertices[0]);
    let mut flipped = false;
    for v in &dev.vertices[1..] {
        let s = side(raag, h, v);
        if s != s0 {
            flipped = true;
        } else if flipped {
            // a geodesic crosses a hyperplane at most once
            return Err(Error::Internal("ray side flipped twice".into()));
        }
    }
    if flipped {
        return Ok(s0_flip(s0));
    }

    // never crossed in the window; if the period never uses this label the
    // tail cannot cross h at all
    if !dev.period_support.contains(h.label) {
        return Ok(s0);
    }

    // distance escape: once the distance to the carrier strictly increases,
    // the ray can never re-enter it
    let near = carrier_coset(raag, h);
    let far = carrier_far_coset(raag, h);
    let dist = |x: &GroupElement| {
        point_coset_distance(raag, x, &near).min(point_coset_distance(raag, x, &far))
    };
    let mut prev = dist(&dev.vertices[0]);
    for v in &dev.vertices[1..] {
        let cur = dist(v);
        if cur > prev {
            return Ok(s0);
        }
        prev = cur;
    }

    // γ-orbit test over the last observed period's crossings
    if depth < dev.period_len {
        return Err(Error::HorizonInsufficient(depth));
    }
    let cap = depth.max(dev.period_len);
    let mut any_unknown = false;
    for d in depth - dev.period_len..depth {
        let start = &dev.crossed[d];
        if start.label != h.label {
            continue;
        }
        let mut x = start.clone();
        let mut resolved = false;
        for _ in 0..cap {
            x = act(raag, &dev.gamma, &x);
            if x == *h {
                // a future edge of this residue crosses h exactly once
                return Ok(s0_flip(s0));
            }
            if x == *start {
                resolved = true;
                break;
            }
        }
        if !resolved {
            any_unknown = true;
        }
    }
    if any_unknown {
        Err(Error::HorizonInsufficient(depth))
    } else {
        Ok(s0)
    }
}

fn s0_flip(s: Side) -> Side {
    match s {
        Side::Minus => Side::Plus,
        Side::Plus => Side::Minus,
    }
}

/// An initial segment of `H_i(x, ξ)` in the distance well-order.
#[derive(Debug, Clone)]
pub struct LabelSpectrum {
    pub label: VertexId,
    /// Hyperplane and its distance from `x`, strictly increasing.
    pub entries: Vec<(Hyperplane, usize)>,
}

/// First `count` hyperplanes of `H_i(x, ξ)` ordered by distance from `x`.
///
/// Members are collected among the hyperplanes dual to the geodesic from `x`
/// to the horizon vertex; the same-label nesting guarantees this captures a
/// prefix of the well-order, and any undecided candidate close enough to
/// matter yields `HorizonInsufficient`.
pub fn label_spectrum(
    raag: &Raag,
    ray: &PeriodicRay,
    x: &GroupElement,
    label: VertexId,
    count: usize,
    horizon: usize,
) -> Result<LabelSpectrum> {
    let infinite = infinite_label_classes(raag, ray)?.contains(label);
    let dev = develop(raag, ray, horizon)?;
    let tip = dev.vertices.last().expect("developed ray has vertices");
    let mut members: Vec<(Hyperplane, usize)> = Vec::new();
    let mut undecided: Vec<usize> = Vec::new();
    for h in dual_hyperplanes(raag, x, tip) {
        if h.label != label {
            continue;
        }
        let dist = hyperplane_distance(raag, x, &h);
        match eventual_side(raag, &dev, &h) {
            Ok(s) => {
                if s != side(raag, &h, x) {
                    members.push((h, dist));
                }
            }
            Err(Error::HorizonInsufficient(_)) => undecided.push(dist),
            Err(e) => return Err(e),
        }
    }
    members.sort_by_key(|&(_, d)| d);
    members.dedup();
    if infinite && members.len() < count {
        return Err(Error::HorizonInsufficient(horizon));
    }
    members.truncate(count);
    if let Some(&min_undecided) = undecided.iter().min() {
        let threshold = members.last().map(|&(_, d)| d).unwrap_or(usize::MAX);
        if min_undecided <= threshold {
            return Err(Error::HorizonInsufficient(horizon));
        }
    }
    debug_assert!(members.windows(2).all(|w| w[0].1 < w[1].1));
    Ok(LabelSpectrum { label, entries: members })
}

/// Checks that two basepoints list their common separating hyperplanes in the
/// same relative order. Always true; exposed as a diagnostic.
pub fn order_consistency_check(
    raag: &Raag,
    ray: &PeriodicRay,
    x: &GroupElement,
    y: &GroupElement,
    label: VertexId,
    count: usize,
    horizon: usize,
) -> Result<bool> {
    let sx = label_spectrum(raag, ray, x, label, count, horizon)?;
    let sy = label_spectrum(raag, ray, y, label, count, horizon)?;
    let in_y: Vec<&Hyperplane> = sy.entries.iter().map(|(h, _)| h).collect();
    let common_x: Vec<&Hyperplane> = sx
        .entries
        .iter()
        .map(|(h, _)| h)
        .filter(|h| in_y.contains(h))
        .collect();
    let in_x: Vec<&Hyperplane> = sx.entries.iter().map(|(h, _)| h).collect();
    let common_y: Vec<&Hyperplane> = sy
        .entries
        .iter()
        .map(|(h, _)| h)
        .filter(|h| in_x.contains(h))
        .collect();
    Ok(common_x == common_y)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SeparatorVerdict {
    /// The full finite set of hyperplanes separating the two boundary points.
    Exact(Vec<Hyperplane>),
    /// At least this many separators; the horizon could not certify the rest.
    AtLeast(usize),
}

/// Hyperplanes separating the two boundary points, certified exactly when
/// every candidate's eventual side resolves and the tails advance in
/// lockstep (equal tail translations and equal last-period crossing sets).
pub fn separating_hyperplanes(
    raag: &Raag,
    ray1: &PeriodicRay,
    ray2: &PeriodicRay,
    horizon: usize,
) -> Result<SeparatorVerdict> {
    let dev1 = develop(raag, ray1, horizon)?;
    let dev2 = develop(raag, ray2, horizon)?;
    let mut candidates: Vec<Hyperplane> = Vec::new();
    candidates.extend(dev1.crossed.iter().cloned());
    candidates.extend(dev2.crossed.iter().cloned());
    candidates.extend(dual_hyperplanes(raag, &ray1.base, &ray2.base));
    candidates.sort_by(|a, b| (a.label, a.base().ball_key()).cmp(&(b.label, b.base().ball_key())));
    candidates.dedup();

    let mut separators = Vec::new();
    let mut undecided = 0usize;
    for h in &candidates {
        match (eventual_side(raag, &dev1, h), eventual_side(raag, &dev2, h)) {
            (Ok(s1), Ok(s2)) => {
                if s1 != s2 {
                    separators.push(h.clone());
                }
            }
            (Err(Error::HorizonInsufficient(_)), _) | (_, Err(Error::HorizonInsufficient(_))) => {
                undecided += 1;
            }
            (Err(e), _) | (_, Err(e)) => return Err(e),
        }
    }

    if undecided == 0 && tails_parallel(raag, &dev1, &dev2) {
        Ok(SeparatorVerdict::Exact(separators))
    } else {
        Ok(SeparatorVerdict::AtLeast(separators.len()))
    }
}

/// Both tails advance across the same hyperplanes per period: equal tail
/// translations and equal crossing sets over the last observed period.
fn tails_parallel(raag: &Raag, dev1: &DevelopedRay, dev2: &DevelopedRay) -> bool {
    let _ = raag;
    if dev1.gamma != dev2.gamma {
        return false;
    }
    let last = |dev: &DevelopedRay| -> Option<Vec<Hyperplane>> {
        let depth = dev.crossed.len();
        if depth < dev.period_len {
            return None;
        }
        let mut s: Vec<Hyperplane> = dev.crossed[depth - dev.period_len..].to_vec();
        s.sort_by(|a, b| (a.label, a.base().ball_key()).cmp(&(b.label, b.base().ball_key())));
        Some(s)
    };
    match (last(dev1), last(dev2)) {
        (Some(s1), Some(s2)) => s1 == s2,
        _ => false,
    }
}

/// Two boundary points are Roller-adjacent iff exactly one hyperplane
/// separates them. `AtLeast(n ≥ 2)` certifies non-adjacency; smaller
/// uncertified counts are indeterminate.
pub fn roller_adjacent(
    raag: &Raag,
    ray1: &PeriodicRay,
    ray2: &PeriodicRay,
    horizon: usize,
) -> Result<bool> {
    match separating_hyperplanes(raag, ray1, ray2, horizon)? {
        SeparatorVerdict::Exact(list) => Ok(list.len() == 1),
        SeparatorVerdict::AtLeast(n) if n >= 2 => Ok(false),
        SeparatorVerdict::AtLeast(_) => Err(Error::HorizonInsufficient(horizon)),
    }
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

    fn ray(r: &Raag, base: &str, period: &str) -> PeriodicRay {
        PeriodicRay::new(
            r.parse_element(base).unwrap(),
            r.parse_element(period).unwrap(),
        )
        .unwrap()
    }

    fn hp(r: &Raag, at: &str, letter: &str) -> Hyperplane {
        let x = r.parse_element(at).unwrap();
        let l = r.parse_word(letter).unwrap()[0];
        crate::geometry::hyperplane_of_edge(r, &x, l)
    }

    #[test]
    fn vertices_and_validity() {
        let r = z2();
        let east = ray(&r, "", "a");
        assert_eq!(ray_vertex(&r, &east, 0).unwrap(), r.identity());
        assert_eq!(
            ray_vertex(&r, &east, 3).unwrap(),
            r.parse_element("a a a").unwrap()
        );
        let f = f2();
        let rr = ray(&f, "b", "a");
        assert_eq!(
            ray_vertex(&f, &rr, 2).unwrap(),
            f.parse_element("b a a").unwrap()
        );
        // non-geodesic: period cancels into the base
        let bad = ray(&r, "a", "a^-1");
        assert!(matches!(
            ray_vertex(&r, &bad, 2),
            Err(Error::NonGeodesicRay(1))
        ));
    }

    #[test]
    fn label_classes() {
        let r = z2();
        assert_eq!(
            r.graph().set_names(infinite_label_classes(&r, &ray(&r, "", "a")).unwrap()),
            vec!["a"]
        );
        assert_eq!(
            infinite_label_classes(&r, &ray(&r, "b", "a b")).unwrap(),
            r.graph().all_vertices()
        );
        let f = f2();
        assert_eq!(
            infinite_label_classes(&f, &ray(&f, "", "a b")).unwrap(),
            f.graph().all_vertices()
        );
    }

    #[test]
    fn spectra_on_the_grid() {
        let r = z2();
        let east = ray(&r, "", "a");
        let a = r.graph().vertex("a").unwrap();
        let s = label_spectrum(&r, &east, &r.identity(), a, 2, 32).unwrap();
        assert_eq!(s.entries.len(), 2);
        assert_eq!(s.entries[0].0, hp(&r, "", "a"));
        assert_eq!(s.entries[1].0, hp(&r, "a", "a"));
        assert!(s.entries[0].1 < s.entries[1].1);
        // moving the basepoint forward drops the first hyperplane
        let s = label_spectrum(&r, &east, &r.parse_element("a").unwrap(), a, 2, 32).unwrap();
        assert_eq!(s.entries[0].0, hp(&r, "a", "a"));
        assert_eq!(s.entries[1].0, hp(&r, "a a", "a"));
        // no separating b-hyperplane from the basepoint on an east ray
        let f = f2();
        let re = ray(&f, "", "a");
        let b = f.graph().vertex("b").unwrap();
        let s = label_spectrum(&f, &re, &f.identity(), b, 5, 32).unwrap();
        assert!(s.entries.is_empty());
    }

    #[test]
    fn order_consistency() {
        let r = z2();
        let east = ray(&r, "", "a");
        let a = r.graph().vertex("a").unwrap();
        assert!(order_consistency_check(
            &r,
            &east,
            &r.identity(),
            &r.parse_element("b b b").unwrap(),
            a,
            5,
            32
        )
        .unwrap());
        let f = f2();
        let re = ray(&f, "", "a");
        let av = f.graph().vertex("a").unwrap();
        assert!(order_consistency_check(
            &f,
            &re,
            &f.identity(),
            &f.parse_element("b").unwrap(),
            av,
            5,
            32
        )
        .unwrap());
    }

    #[test]
    fn separators_and_adjacency() {
        let r = z2();
        let east0 = ray(&r, "", "a");
        let east1 = ray(&r, "b", "a");
        // equal rays: no separators
        match separating_hyperplanes(&r, &east0, &east0, 24).unwrap() {
            SeparatorVerdict::Exact(list) => assert!(list.is_empty()),
            v => panic!("expected exact verdict, got {v:?}"),
        }
        // parallel east rays: exactly the single horizontal hyperplane
        match separating_hyperplanes(&r, &east0, &east1, 24).unwrap() {
            SeparatorVerdict::Exact(list) => {
                assert_eq!(list, vec![hp(&r, "", "b")]);
            }
            v => panic!("expected exact verdict, got {v:?}"),
        }
        assert!(roller_adjacent(&r, &east0, &east1, 24).unwrap());
        assert!(!roller_adjacent(&r, &east0, &east0, 24).unwrap());
        // east vs north: lower bound grows with the horizon
        let north = ray(&r, "", "b");
        let n8 = match separating_hyperplanes(&r, &east0, &north, 8).unwrap() {
            SeparatorVerdict::AtLeast(n) => n,
            v => panic!("expected lower bound, got {v:?}"),
        };
        let n16 = match separating_hyperplanes(&r, &east0, &north, 16).unwrap() {
            SeparatorVerdict::AtLeast(n) => n,
            v => panic!("expected lower bound, got {v:?}"),
        };
        assert!(n8 >= 2 && n16 > n8);
        assert!(!roller_adjacent(&r, &east0, &north, 16).unwrap());
    }

    #[test]
    fn f2_rays_separate_infinitely() {
        let f = f2();
        let r1 = ray(&f, "", "a");
        let r2 = ray(&f, "b", "a");
        match separating_hyperplanes(&f, &r1, &r2, 12).unwrap() {
            SeparatorVerdict::AtLeast(n) => assert!(n >= 2),
            v => panic!("tree rays with different ends cannot be exact: {v:?}"),
        }
    }
}

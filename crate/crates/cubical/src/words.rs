//! Canonical normal forms and exact arithmetic in the right-angled Artin
//! group of a defining graph.
//!
//! A group element is stored as its ShortLex-least geodesic word under the
//! graph's vertex order (sign `+` before `-` within a vertex). Two words
//! denote the same element exactly when their normal forms are identical, so
//! equality, hashing and ordering are structural.
//!
//! The normal form is computed in two stages:
//!  1. a left-greedy pile ("stack with commutations"): each incoming letter
//!     cancels against the unique matching inverse it can shuffle onto, or is
//!     appended — the result is geodesic;
//!  2. the lexicographically least linearization of the geodesic's trace,
//!     obtained by repeatedly emitting the least front-shufflable letter.

use std::fmt;

use crate::error::{Error, Result};
use crate::graph::{DefiningGraph, VertexId, VertexSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Pos,
    Neg,
}

impl Sign {
    #[inline]
    pub fn flip(self) -> Sign {
        match self {
            Sign::Pos => Sign::Neg,
            Sign::Neg => Sign::Pos,
        }
    }
}

/// A generator or its inverse.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub vertex: VertexId,
    pub sign: Sign,
}

impl Letter {
    pub fn pos(vertex: VertexId) -> Letter {
        Letter { vertex, sign: Sign::Pos }
    }

    pub fn neg(vertex: VertexId) -> Letter {
        Letter { vertex, sign: Sign::Neg }
    }

    #[inline]
    pub fn inverse(self) -> Letter {
        Letter { vertex: self.vertex, sign: self.sign.flip() }
    }
}

/// An element of `A(Γ)` in canonical normal form.
///
/// Carries a fingerprint of the defining graph so that cross-graph mixups are
/// caught at runtime.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement {
    letters: Vec<Letter>,
    tag: u64,
}

impl GroupElement {
    #[inline]
    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    /// Geodesic word length; equals the number of hyperplanes separating the
    /// identity from this element.
    #[inline]
    pub fn len(&self) -> usize {
        self.letters.len()
    }

    #[inline]
    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    /// Vertices whose letters occur in the normal form. Independent of the
    /// geodesic representative.
    pub fn support(&self) -> VertexSet {
        VertexSet::from_iter(self.letters.iter().map(|l| l.vertex))
    }

    /// Sort key giving the ball order: length first, then ShortLex.
    pub fn ball_key(&self) -> (usize, Vec<Letter>) {
        (self.letters.len(), self.letters.clone())
    }
}

/// The ambient group: a defining graph plus the word arithmetic over it.
#[derive(Debug, Clone)]
pub struct Raag {
    graph: DefiningGraph,
    tag: u64,
}

impl Raag {
    pub fn new(graph: DefiningGraph) -> Raag {
        // cheap structural fingerprint: FNV over names and adjacency
        let mut h: u64 = 0xcbf29ce484222325;
        let mut eat = |byte: u8| {
            h ^= byte as u64;
            h = h.wrapping_mul(0x100000001b3);
        };
        for v in graph.vertices() {
            for b in graph.name(v).bytes() {
                eat(b);
            }
            eat(0xff);
            for b in graph.link(v).0.to_le_bytes() {
                eat(b);
            }
        }
        Raag { tag: h, graph }
    }

    #[inline]
    pub fn graph(&self) -> &DefiningGraph {
        &self.graph
    }

    #[inline]
    fn commute(&self, u: VertexId, v: VertexId) -> bool {
        self.graph.adjacent(u, v)
    }

    fn check_tag(&self, g: &GroupElement) -> Result<()> {
        if g.tag == self.tag {
            Ok(())
        } else {
            Err(Error::GraphMismatch)
        }
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement { letters: Vec::new(), tag: self.tag }
    }

    pub fn generator(&self, v: VertexId) -> GroupElement {
        self.element(&[Letter::pos(v)])
    }

    fn check_letters(&self, word: &[Letter]) -> Result<()> {
        let n = self.graph.vertex_count() as u32;
        if word.iter().any(|l| l.vertex.0 >= n) {
            Err(Error::ForeignLetter)
        } else {
            Ok(())
        }
    }

    /// Canonical normal form of an arbitrary word.
    pub fn normal_form(&self, word: &[Letter]) -> Result<GroupElement> {
        self.check_letters(word)?;
        Ok(self.element(word))
    }

    /// Internal constructor: letters are assumed in range.
    pub(crate) fn element(&self, word: &[Letter]) -> GroupElement {
        let geodesic = self.reduce(word);
        let letters = self.least_linearization(geodesic);
        GroupElement { letters, tag: self.tag }
    }

    /// Left-greedy pile reduction. The output is a geodesic word.
    fn reduce(&self, word: &[Letter]) -> Vec<Letter> {
        let mut pile: Vec<Letter> = Vec::with_capacity(word.len());
        'next: for &x in word {
            for j in (0..pile.len()).rev() {
                let y = pile[j];
                if y.vertex == x.vertex {
                    if y.sign != x.sign {
                        pile.remove(j);
                    } else {
                        pile.push(x);
                    }
                    continue 'next;
                }
                if !self.commute(y.vertex, x.vertex) {
                    pile.push(x);
                    continue 'next;
                }
            }
            pile.push(x);
        }
        pile
    }

    /// Lexicographically least linearization of a geodesic's trace: repeatedly
    /// emit the least letter whose earlier letters all commute with it. Any
    /// two available occurrences have distinct vertices, so the choice is
    /// unambiguous.
    fn least_linearization(&self, mut word: Vec<Letter>) -> Vec<Letter> {
        let mut out = Vec::with_capacity(word.len());
        while !word.is_empty() {
            let mut best: Option<usize> = None;
            'scan: for i in 0..word.len() {
                for j in 0..i {
                    if !self.commute(word[j].vertex, word[i].vertex) {
                        continue 'scan;
                    }
                }
                match best {
                    None => best = Some(i),
                    Some(b) if word[i] < word[b] => best = Some(i),
                    _ => {}
                }
            }
            let b = best.expect("nonempty word has a front letter");
            out.push(word.remove(b));
        }
        out
    }

    /// Positions of letters that can shuffle to the front (at most one per
    /// vertex), in word order.
    pub(crate) fn front_positions(&self, word: &[Letter]) -> Vec<usize> {
        let mut fronts = Vec::new();
        'scan: for i in 0..word.len() {
            for j in 0..i {
                if !self.commute(word[j].vertex, word[i].vertex) {
                    continue 'scan;
                }
            }
            fronts.push(i);
        }
        fronts
    }

    pub fn multiply(&self, g: &GroupElement, h: &GroupElement) -> Result<GroupElement> {
        self.check_tag(g)?;
        self.check_tag(h)?;
        Ok(self.mul(g, h))
    }

    /// Product without the tag check, for internal call sites that already
    /// hold elements of this group.
    pub(crate) fn mul(&self, g: &GroupElement, h: &GroupElement) -> GroupElement {
        let mut word = Vec::with_capacity(g.letters.len() + h.letters.len());
        word.extend_from_slice(&g.letters);
        word.extend_from_slice(&h.letters);
        self.element(&word)
    }

    pub(crate) fn mul_letter(&self, g: &GroupElement, l: Letter) -> GroupElement {
        let mut word = Vec::with_capacity(g.letters.len() + 1);
        word.extend_from_slice(&g.letters);
        word.push(l);
        self.element(&word)
    }

    pub fn invert(&self, g: &GroupElement) -> GroupElement {
        let word: Vec<Letter> = g.letters.iter().rev().map(|l| l.inverse()).collect();
        self.element(&word)
    }

    /// `g⁻¹ · h`, the group-side difference used by the metric.
    pub(crate) fn diff(&self, g: &GroupElement, h: &GroupElement) -> GroupElement {
        let mut word = Vec::with_capacity(g.letters.len() + h.letters.len());
        word.extend(g.letters.iter().rev().map(|l| l.inverse()));
        word.extend_from_slice(&h.letters);
        self.element(&word)
    }

    pub fn geodesic_length(&self, g: &GroupElement) -> usize {
        g.len()
    }

    /// Membership in the standard subgroup generated by `U`.
    pub fn in_standard_subgroup(&self, g: &GroupElement, u: VertexSet) -> bool {
        g.support().is_subset(u)
    }

    /// Maximal left divisor of `w` supported in `U`, and the remainder:
    /// `w = div · rest` with `|w| = |div| + |rest|` and `div` in `⟨U⟩` maximal.
    pub(crate) fn extract_left_divisor(&self, w: &GroupElement, u: VertexSet) -> (GroupElement, GroupElement) {
        let mut rest: Vec<Letter> = w.letters.clone();
        let mut div: Vec<Letter> = Vec::new();
        loop {
            let mut found = None;
            for &i in self.front_positions(&rest).iter() {
                if u.contains(rest[i].vertex) {
                    found = Some(i);
                    break;
                }
            }
            match found {
                Some(i) => div.push(rest.remove(i)),
                None => break,
            }
        }
        (
            GroupElement { letters: self.least_linearization(div), tag: self.tag },
            GroupElement { letters: self.least_linearization(rest), tag: self.tag },
        )
    }

    /// Maximal right divisor of `w` supported in `U`, and the remainder:
    /// `w = rest · div`.
    pub(crate) fn extract_right_divisor(&self, w: &GroupElement, u: VertexSet) -> (GroupElement, GroupElement) {
        let inv = self.invert(w);
        let (div_inv, rest_inv) = self.extract_left_divisor(&inv, u);
        (self.invert(&rest_inv), self.invert(&div_inv))
    }

    /// Does the positive generator `v` left-divide `w`? Equivalent to:
    /// some geodesic word of `w` starts with `v`.
    pub(crate) fn pos_letter_divides(&self, v: VertexId, w: &GroupElement) -> bool {
        for &l in &w.letters {
            if l.vertex == v {
                return l.sign == Sign::Pos;
            }
            if !self.commute(l.vertex, v) {
                return false;
            }
        }
        false
    }

    /// Maximal common left divisor of two elements, extracted greedily by
    /// pulling front-shufflable letters common to both.
    pub(crate) fn common_left_divisor(&self, x: &GroupElement, y: &GroupElement) -> GroupElement {
        let mut x: Vec<Letter> = x.letters.clone();
        let mut y: Vec<Letter> = y.letters.clone();
        let mut m: Vec<Letter> = Vec::new();
        loop {
            let fx = self.front_positions(&x);
            let fy = self.front_positions(&y);
            let mut hit = None;
            for &i in &fx {
                if let Some(&j) = fy.iter().find(|&&j| y[j] == x[i]) {
                    hit = Some((i, j));
                    break;
                }
            }
            match hit {
                Some((i, j)) => {
                    m.push(x.remove(i));
                    y.remove(j);
                }
                None => break,
            }
        }
        GroupElement { letters: self.least_linearization(m), tag: self.tag }
    }

    // ---- word syntax -------------------------------------------------------

    /// Parses whitespace-separated tokens `v` / `v^-1` into letters.
    pub fn parse_word(&self, text: &str) -> Result<Vec<Letter>> {
        let mut letters = Vec::new();
        for tok in text.split_whitespace() {
            let (name, sign) = match tok.strip_suffix("^-1") {
                Some(base) => (base, Sign::Neg),
                None => {
                    if tok.contains('^') {
                        return Err(Error::BadToken(tok.to_owned()));
                    }
                    (tok, Sign::Pos)
                }
            };
            let v = self.graph.vertex(name)?;
            letters.push(Letter { vertex: v, sign });
        }
        Ok(letters)
    }

    pub fn parse_element(&self, text: &str) -> Result<GroupElement> {
        let w = self.parse_word(text)?;
        Ok(self.element(&w))
    }

    /// Canonical word syntax: whitespace-separated `v` / `v^-1` tokens.
    pub fn format(&self, g: &GroupElement) -> String {
        let mut s = String::new();
        for (i, l) in g.letters.iter().enumerate() {
            if i > 0 {
                s.push(' ');
            }
            s.push_str(self.graph.name(l.vertex));
            if l.sign == Sign::Neg {
                s.push_str("^-1");
            }
        }
        s
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sign::Pos => write!(f, "+"),
            Sign::Neg => write!(f, "-"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn raag(vertices: &[&str], edges: &[(&str, &str)]) -> Raag {
        Raag::new(DefiningGraph::new(vertices, edges).unwrap())
    }
    fn f2() -> Raag {
        raag(&["a", "b"], &[])
    }
    fn z2() -> Raag {
        raag(&["a", "b"], &[("a", "b")])
    }
    fn p3() -> Raag {
        raag(&["a", "b", "c"], &[("a", "b"), ("b", "c")])
    }

    fn nf(r: &Raag, s: &str) -> String {
        r.format(&r.parse_element(s).unwrap())
    }

    #[test]
    fn normal_forms() {
        // commuting cancellation
        assert_eq!(nf(&z2(), "b a b^-1 a"), "a a");
        // free reduction
        assert_eq!(nf(&f2(), "a b b^-1 a"), "a a");
        // c a admits no shuffle in P3 (a, c non-adjacent): stays c a
        assert_eq!(nf(&p3(), "c a"), "c a");
        // but a c with a first is already least
        assert_eq!(nf(&p3(), "a c"), "a c");
        // commuting letters are sorted by vertex order
        assert_eq!(nf(&z2(), "b a"), "a b");
        assert_eq!(nf(&p3(), "b a"), "a b");
        // sign order: positive before negative on the same vertex never
        // arises inside a geodesic, but across vertices order is by vertex
        assert_eq!(nf(&z2(), "b^-1 a^-1"), "a^-1 b^-1");
    }

    #[test]
    fn multiply_and_invert() {
        let r = z2();
        let a = r.parse_element("a").unwrap();
        let ainv = r.parse_element("a^-1").unwrap();
        assert!(r.multiply(&a, &ainv).unwrap().is_identity());
        let b = r.parse_element("b").unwrap();
        let ab = r.multiply(&a, &b).unwrap();
        assert_eq!(ab.len(), 2);

        let r = f2();
        let x = r.parse_element("a b").unwrap();
        let y = r.parse_element("b^-1 a").unwrap();
        assert_eq!(r.format(&r.multiply(&x, &y).unwrap()), "a a");

        // identity inverse
        let e = r.identity();
        assert_eq!(r.invert(&e), e);
        // free group anti-homomorphism
        assert_eq!(r.format(&r.invert(&x)), "b^-1 a^-1");
        // commuting letters reordered canonically
        let r = z2();
        let ab = r.parse_element("a b").unwrap();
        assert_eq!(r.format(&r.invert(&ab)), "a^-1 b^-1");
    }

    #[test]
    fn lengths_and_support() {
        let r = z2();
        assert_eq!(r.identity().len(), 0);
        assert_eq!(r.parse_element("a a b b b").unwrap().len(), 5);
        let r = f2();
        assert_eq!(r.parse_element("a b a b").unwrap().len(), 4);

        let r = z2();
        assert!(r.identity().support().is_empty());
        let g = r.parse_element("a b^-1").unwrap();
        assert_eq!(g.support(), r.graph().all_vertices());

        // P3: a and b commute, so b a b⁻¹ collapses to a
        let r = p3();
        let g = r.parse_element("b a b^-1").unwrap();
        assert_eq!(r.format(&g), "a");
        // conjugating by the non-commuting letter c keeps both in support
        let g = r.parse_element("c a c^-1").unwrap();
        assert_eq!(g.len(), 3);
        assert_eq!(r.graph().set_names(g.support()), vec!["a", "c"]);
    }

    #[test]
    fn standard_subgroup_membership() {
        let r = z2();
        let ua = VertexSet::from_iter([r.graph().vertex("a").unwrap()]);
        assert!(r.in_standard_subgroup(&r.parse_element("a a").unwrap(), ua));
        assert!(!r.in_standard_subgroup(&r.parse_element("a b").unwrap(), ua));
        let r = p3();
        let ua = VertexSet::from_iter([r.graph().vertex("a").unwrap()]);
        assert!(!r.in_standard_subgroup(&r.parse_element("c a c^-1").unwrap(), ua));
    }

    #[test]
    fn tag_mismatch_is_caught() {
        let r1 = z2();
        let r2 = f2();
        let g = r1.parse_element("a").unwrap();
        let h = r2.parse_element("a").unwrap();
        assert_eq!(r1.multiply(&g, &h), Err(Error::GraphMismatch));
    }

    #[test]
    fn divisor_extraction() {
        let r = z2();
        let ua = VertexSet::from_iter([r.graph().vertex("a").unwrap()]);
        let w = r.parse_element("a a b b b").unwrap();
        let (d, rest) = r.extract_left_divisor(&w, ua);
        assert_eq!(r.format(&d), "a a");
        assert_eq!(r.format(&rest), "b b b");

        // nothing extractable through a blocking letter
        let r = p3();
        let uc = VertexSet::from_iter([r.graph().vertex("c").unwrap()]);
        let w = r.parse_element("a c").unwrap();
        let (d, _) = r.extract_left_divisor(&w, uc);
        assert!(d.is_identity());
        // but c shuffles past b (b, c adjacent)
        let w = r.parse_element("b c").unwrap();
        let (d, rest) = r.extract_left_divisor(&w, uc);
        assert_eq!(r.format(&d), "c");
        assert_eq!(r.format(&rest), "b");
    }

    #[test]
    fn common_left_divisor_examples() {
        let r = z2();
        let x = r.parse_element("a a").unwrap();
        let y = r.parse_element("a b").unwrap();
        assert_eq!(r.format(&r.common_left_divisor(&x, &y)), "a");
        let r = f2();
        let x = r.parse_element("a b").unwrap();
        let y = r.parse_element("a b^-1").unwrap();
        assert_eq!(r.format(&r.common_left_divisor(&x, &y)), "a");
    }
}

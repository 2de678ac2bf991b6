//! Finite nonpositively curved cube complexes carried as 2-skeleta,
//! immersed hyperplanes, the four specialness conditions, the Salvetti local
//! isometry onto the crossing graph's Salvetti complex, and fundamental-group
//! development through such a map.
//!
//! Higher cubes are implied by flag completion, so every condition checked
//! here quantifies over 0-, 1- and 2-cubes only.

use std::collections::{HashMap, HashSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::ball::interval;
use crate::error::{Error, Result};
use crate::graph::DefiningGraph;
use crate::words::{GroupElement, Letter, Raag, Sign};

/// Wire format of a complex file.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ComplexDescription {
    pub vertices: Vec<String>,
    pub edges: Vec<EdgeDescription>,
    pub squares: Vec<[(String, i8); 4]>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EdgeDescription {
    pub id: String,
    pub src: String,
    pub dst: String,
}

/// A square side: edge index and traversal direction.
pub type Side = (usize, i8);

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CubeComplex {
    vertex_names: Vec<String>,
    edge_ids: Vec<String>,
    /// (src, dst) per edge; loops allowed
    edges: Vec<(usize, usize)>,
    squares: Vec<[Side; 4]>,
}

fn side_tail(edges: &[(usize, usize)], (e, d): Side) -> usize {
    if d >= 0 {
        edges[e].0
    } else {
        edges[e].1
    }
}

fn side_head(edges: &[(usize, usize)], (e, d): Side) -> usize {
    if d >= 0 {
        edges[e].1
    } else {
        edges[e].0
    }
}

/// An end of an edge: `out` is the end at the source vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EdgeEnd {
    pub edge: usize,
    pub out: bool,
}

impl CubeComplex {
    pub fn new(
        vertex_names: Vec<String>,
        edge_ids: Vec<String>,
        edges: Vec<(usize, usize)>,
        squares: Vec<[Side; 4]>,
    ) -> Result<CubeComplex> {
        let x = CubeComplex { vertex_names, edge_ids, edges, squares };
        x.validate_structure()?;
        Ok(x)
    }

    pub fn from_description(d: &ComplexDescription) -> Result<CubeComplex> {
        let vertex_names = d.vertices.clone();
        let vid = |n: &str| {
            vertex_names
                .iter()
                .position(|m| m == n)
                .ok_or_else(|| Error::BadComplex(format!("unknown vertex `{n}`")))
        };
        let mut edge_ids = Vec::new();
        let mut edges = Vec::new();
        for e in &d.edges {
            edge_ids.push(e.id.clone());
            edges.push((vid(&e.src)?, vid(&e.dst)?));
        }
        let eid = |n: &str| {
            edge_ids
                .iter()
                .position(|m| m == n)
                .ok_or_else(|| Error::BadComplex(format!("unknown edge `{n}`")))
        };
        let mut squares = Vec::new();
        for sq in &d.squares {
            let mut sides = [(0usize, 1i8); 4];
            for (i, (name, dir)) in sq.iter().enumerate() {
                if *dir != 1 && *dir != -1 {
                    return Err(Error::BadComplex(format!("square direction must be ±1, got {dir}")));
                }
                sides[i] = (eid(name)?, *dir);
            }
            squares.push(sides);
        }
        CubeComplex::new(vertex_names, edge_ids, edges, squares)
    }

    pub fn description(&self) -> ComplexDescription {
        ComplexDescription {
            vertices: self.vertex_names.clone(),
            edges: self
                .edges
                .iter()
                .zip(&self.edge_ids)
                .map(|(&(s, t), id)| EdgeDescription {
                    id: id.clone(),
                    src: self.vertex_names[s].clone(),
                    dst: self.vertex_names[t].clone(),
                })
                .collect(),
            squares: self
                .squares
                .iter()
                .map(|sq| {
                    let f = |&(e, d): &Side| (self.edge_ids[e].clone(), d);
                    [f(&sq[0]), f(&sq[1]), f(&sq[2]), f(&sq[3])]
                })
                .collect(),
        }
    }

    fn validate_structure(&self) -> Result<()> {
        for (i, id) in self.edge_ids.iter().enumerate() {
            if self.edge_ids[..i].contains(id) {
                return Err(Error::BadComplex(format!("duplicate edge id `{id}`")));
            }
        }
        for (i, name) in self.vertex_names.iter().enumerate() {
            if self.vertex_names[..i].contains(name) {
                return Err(Error::BadComplex(format!("duplicate vertex name `{name}`")));
            }
        }
        for &(s, t) in &self.edges {
            if s >= self.vertex_names.len() || t >= self.vertex_names.len() {
                return Err(Error::BadComplex("edge endpoint out of range".into()));
            }
        }
        for (n, sq) in self.squares.iter().enumerate() {
            for &(e, _) in sq {
                if e >= self.edges.len() {
                    return Err(Error::BadComplex(format!("square {n} references missing edge")));
                }
            }
            for i in 0..4 {
                if side_head(&self.edges, sq[i]) != side_tail(&self.edges, sq[(i + 1) % 4]) {
                    return Err(Error::BadComplex(format!("square {n} boundary does not close up")));
                }
            }
        }
        Ok(())
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_names.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn square_count(&self) -> usize {
        self.squares.len()
    }

    pub fn vertex_name(&self, v: usize) -> &str {
        &self.vertex_names[v]
    }

    pub fn edge_id(&self, e: usize) -> &str {
        &self.edge_ids[e]
    }

    pub fn edge_endpoints(&self, e: usize) -> (usize, usize) {
        self.edges[e]
    }

    pub fn vertex_index(&self, name: &str) -> Result<usize> {
        self.vertex_names
            .iter()
            .position(|m| m == name)
            .ok_or_else(|| Error::BadComplex(format!("unknown vertex `{name}`")))
    }

    pub fn edge_index(&self, id: &str) -> Result<usize> {
        self.edge_ids
            .iter()
            .position(|m| m == id)
            .ok_or_else(|| Error::BadComplex(format!("unknown edge `{id}`")))
    }

    /// Edge ends incident to `v`, in deterministic order.
    fn ends_at(&self, v: usize) -> Vec<EdgeEnd> {
        let mut out = Vec::new();
        for (e, &(s, t)) in self.edges.iter().enumerate() {
            if s == v {
                out.push(EdgeEnd { edge: e, out: true });
            }
            if t == v {
                out.push(EdgeEnd { edge: e, out: false });
            }
        }
        out
    }

    /// The four corners of each square: (vertex, arriving end, leaving end).
    fn corners(&self) -> Vec<(usize, EdgeEnd, EdgeEnd)> {
        let mut out = Vec::new();
        for sq in &self.squares {
            for i in 0..4 {
                let arr = sq[i];
                let leave = sq[(i + 1) % 4];
                let v = side_head(&self.edges, arr);
                let arr_end = EdgeEnd { edge: arr.0, out: arr.1 < 0 };
                let leave_end = EdgeEnd { edge: leave.0, out: leave.1 >= 0 };
                out.push((v, arr_end, leave_end));
            }
        }
        out
    }

    /// Link edges per vertex, as unordered end pairs.
    fn link_edges(&self) -> HashMap<usize, HashSet<(EdgeEnd, EdgeEnd)>> {
        let mut links: HashMap<usize, HashSet<(EdgeEnd, EdgeEnd)>> = HashMap::new();
        for (v, a, b) in self.corners() {
            let pair = if a <= b { (a, b) } else { (b, a) };
            links.entry(v).or_default().insert(pair);
        }
        links
    }

    /// The nonpositive-curvature condition on the 2-skeleton: every vertex
    /// link is a simple graph (no loop corners, no doubled corners). Higher
    /// flag conditions are satisfied by the flag-completion convention.
    pub fn validate_npc(&self) -> Result<()> {
        let mut seen: HashMap<(usize, EdgeEnd, EdgeEnd), usize> = HashMap::new();
        for (v, a, b) in self.corners() {
            if a == b {
                return Err(Error::NpcViolation(format!(
                    "loop corner at vertex `{}` on edge `{}`",
                    self.vertex_names[v], self.edge_ids[a.edge]
                )));
            }
            let key = if a <= b { (v, a, b) } else { (v, b, a) };
            *seen.entry(key).or_insert(0) += 1;
        }
        for ((v, a, b), count) in seen {
            if count > 1 {
                return Err(Error::NpcViolation(format!(
                    "doubled corner at vertex `{}` between edges `{}` and `{}`",
                    self.vertex_names[v], self.edge_ids[a.edge], self.edge_ids[b.edge]
                )));
            }
        }
        Ok(())
    }
}

// ---- immersed hyperplanes ---------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ImmersedHyperplane {
    /// Class index, ordered by least member edge.
    pub id: usize,
    /// Member edges, ascending.
    pub edges: Vec<usize>,
    /// A consistent transverse orientation (+1 keeps the stored direction),
    /// or `None` when the hyperplane is one-sided.
    pub orientation: Option<Vec<(usize, i8)>>,
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> UnionFind {
        UnionFind { parent: (0..n).collect() }
    }
    fn find(&mut self, x: usize) -> usize {
        if self.parent[x] != x {
            let root = self.find(self.parent[x]);
            self.parent[x] = root;
        }
        self.parent[x]
    }
    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// Opposite-side pairs of every square.
fn opposite_pairs(x: &CubeComplex) -> Vec<(Side, Side)> {
    let mut out = Vec::new();
    for sq in &x.squares {
        out.push((sq[0], sq[2]));
        out.push((sq[1], sq[3]));
    }
    out
}

/// Union-find closure of the opposite-edge relation; every edge lies in
/// exactly one class.
pub fn immersed_hyperplanes(x: &CubeComplex) -> Result<Vec<ImmersedHyperplane>> {
    x.validate_npc()?;
    let mut uf = UnionFind::new(x.edges.len());
    for (a, b) in opposite_pairs(x) {
        uf.union(a.0, b.0);
    }
    let mut members: HashMap<usize, Vec<usize>> = HashMap::new();
    for e in 0..x.edges.len() {
        members.entry(uf.find(e)).or_default().push(e);
    }
    let mut roots: Vec<usize> = members.keys().copied().collect();
    roots.sort_unstable();

    // two-sidedness: 2-color each class under the constraint that opposite
    // sides traversed in boundary order are anti-parallel
    let mut orientation: Vec<Option<i8>> = vec![None; x.edges.len()];
    let mut one_sided_roots: HashSet<usize> = HashSet::new();
    for (( ea, da), (eb, db)) in opposite_pairs(x) {
        if ea == eb && -(da * db) != 1 {
            one_sided_roots.insert(uf.find(ea));
        }
    }
    for &root in &roots {
        if one_sided_roots.contains(&root) {
            continue;
        }
        // BFS 2-coloring over the parity constraints of this class
        let mut constraints: HashMap<usize, Vec<(usize, i8)>> = HashMap::new();
        for ((ea, da), (eb, db)) in opposite_pairs(x) {
            if uf.find(ea) == root && ea != eb {
                let parity = -(da * db);
                constraints.entry(ea).or_default().push((eb, parity));
                constraints.entry(eb).or_default().push((ea, parity));
            }
        }
        let mut ok = true;
        for &start in members[&root].iter() {
            if orientation[start].is_some() {
                continue;
            }
            orientation[start] = Some(1);
            let mut queue = VecDeque::from([start]);
            while let Some(e) = queue.pop_front() {
                let col = orientation[e].expect("colored before enqueue");
                for &(f, parity) in constraints.get(&e).into_iter().flatten() {
                    let want = col * parity;
                    match orientation[f] {
                        None => {
                            orientation[f] = Some(want);
                            queue.push_back(f);
                        }
                        Some(c) if c != want => {
                            ok = false;
                        }
                        _ => {}
                    }
                }
            }
        }
        if !ok {
            one_sided_roots.insert(root);
        }
    }

    let mut out = Vec::new();
    for (id, &root) in roots.iter().enumerate() {
        let edges = members[&root].clone();
        let orient = if one_sided_roots.contains(&root) {
            None
        } else {
            Some(
                edges
                    .iter()
                    .map(|&e| (e, orientation[e].unwrap_or(1)))
                    .collect(),
            )
        };
        out.push(ImmersedHyperplane { id, edges, orientation: orient });
    }
    Ok(out)
}

// ---- specialness -------------------------------------------------------------

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SpecialnessReport {
    /// Hyperplane classes, as lists of edge ids.
    pub hyperplanes: Vec<Vec<String>>,
    pub self_cross: Vec<usize>,
    pub one_sided: Vec<usize>,
    pub self_osculate: Vec<usize>,
    pub interosculate: Vec<(usize, usize)>,
    pub special: bool,
}

/// Evaluates the four specialness conditions. NPC violations surface as
/// errors before specialness is judged.
pub fn check_special(x: &CubeComplex) -> Result<SpecialnessReport> {
    let hyperplanes = immersed_hyperplanes(x)?;
    let mut class_of = vec![0usize; x.edges.len()];
    for h in &hyperplanes {
        for &e in &h.edges {
            class_of[e] = h.id;
        }
    }

    // crossing pairs: consecutive sides of a square with distinct 1-cubes
    let mut crossing: HashSet<(usize, usize)> = HashSet::new();
    let mut self_cross: HashSet<usize> = HashSet::new();
    let mut spanning: HashSet<(usize, usize)> = HashSet::new();
    for sq in &x.squares {
        for i in 0..4 {
            let e = sq[i].0;
            let f = sq[(i + 1) % 4].0;
            if e == f {
                continue;
            }
            spanning.insert((e.min(f), e.max(f)));
            let (he, hf) = (class_of[e], class_of[f]);
            if he == hf {
                self_cross.insert(he);
            } else {
                crossing.insert((he.min(hf), he.max(hf)));
            }
        }
    }

    // osculation: distinct edges sharing a vertex that span no square
    let mut osculating: HashSet<(usize, usize)> = HashSet::new();
    let mut self_osculate: HashSet<usize> = HashSet::new();
    for e in 0..x.edges.len() {
        for f in (e + 1)..x.edges.len() {
            let (es, et) = x.edges[e];
            let (fs, ft) = x.edges[f];
            let share = es == fs || es == ft || et == fs || et == ft;
            if !share || spanning.contains(&(e, f)) {
                continue;
            }
            let (he, hf) = (class_of[e], class_of[f]);
            if he == hf {
                self_osculate.insert(he);
            } else {
                osculating.insert((he.min(hf), he.max(hf)));
            }
        }
    }

    let mut interosculate: Vec<(usize, usize)> =
        crossing.intersection(&osculating).copied().collect();
    interosculate.sort_unstable();
    let mut self_cross: Vec<usize> = self_cross.into_iter().collect();
    self_cross.sort_unstable();
    let mut self_osculate: Vec<usize> = self_osculate.into_iter().collect();
    self_osculate.sort_unstable();
    let one_sided: Vec<usize> = hyperplanes
        .iter()
        .filter(|h| h.orientation.is_none())
        .map(|h| h.id)
        .collect();

    let special = self_cross.is_empty()
        && one_sided.is_empty()
        && self_osculate.is_empty()
        && interosculate.is_empty();
    Ok(SpecialnessReport {
        hyperplanes: hyperplanes
            .iter()
            .map(|h| h.edges.iter().map(|&e| x.edge_ids[e].clone()).collect())
            .collect(),
        self_cross,
        one_sided,
        self_osculate,
        interosculate,
        special,
    })
}

/// The crossing graph of a special complex: one vertex per immersed
/// hyperplane, edges between crossing classes. Simple by specialness.
pub fn crossing_graph(x: &CubeComplex) -> Result<DefiningGraph> {
    let report = check_special(x)?;
    if !report.special {
        return Err(Error::NotSpecial);
    }
    let n = report.hyperplanes.len();
    let names: Vec<String> = (0..n).map(|i| format!("h{i}")).collect();
    let hyperplanes = immersed_hyperplanes(x)?;
    let mut class_of = vec![0usize; x.edges.len()];
    for h in &hyperplanes {
        for &e in &h.edges {
            class_of[e] = h.id;
        }
    }
    let mut edges: Vec<(String, String)> = Vec::new();
    let mut seen = HashSet::new();
    for sq in &x.squares {
        for i in 0..4 {
            let (e, f) = (sq[i].0, sq[(i + 1) % 4].0);
            if e == f {
                continue;
            }
            let (a, b) = (class_of[e].min(class_of[f]), class_of[e].max(class_of[f]));
            if a != b && seen.insert((a, b)) {
                edges.push((names[a].clone(), names[b].clone()));
            }
        }
    }
    edges.sort();
    let name_refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
    let edge_refs: Vec<(&str, &str)> = edges.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
    DefiningGraph::new(&name_refs, &edge_refs)
}

/// The Salvetti 2-skeleton of a defining graph: one vertex, a loop per
/// generator, and a commutator square per edge. Higher tori are implied by
/// flag completion.
pub fn salvetti_complex(graph: &DefiningGraph) -> CubeComplex {
    let vertex_names = vec!["v0".to_owned()];
    let edge_ids: Vec<String> = graph.vertices().map(|v| graph.name(v).to_owned()).collect();
    let edges: Vec<(usize, usize)> = edge_ids.iter().map(|_| (0, 0)).collect();
    let mut squares = Vec::new();
    for u in graph.vertices() {
        for v in graph.vertices() {
            if u < v && graph.adjacent(u, v) {
                squares.push([
                    (u.index(), 1),
                    (v.index(), 1),
                    (u.index(), -1),
                    (v.index(), -1),
                ]);
            }
        }
    }
    CubeComplex { vertex_names, edge_ids, edges, squares }
}

// ---- combinatorial maps -------------------------------------------------------

/// A combinatorial map between cube complexes: vertices to vertices, directed
/// edges to directed edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CombinatorialMap {
    pub vertex_map: Vec<usize>,
    /// Per source edge: target edge and direction (+1 preserves src→dst).
    pub edge_map: Vec<(usize, i8)>,
}

impl CombinatorialMap {
    fn image_end(&self, end: EdgeEnd) -> EdgeEnd {
        let (e, d) = self.edge_map[end.edge];
        EdgeEnd { edge: e, out: end.out == (d >= 0) }
    }
}

/// A verified local isometry from a special complex to the Salvetti complex
/// of its crossing graph. Target edges are indexed like the graph vertices.
#[derive(Debug, Clone)]
pub struct SalvettiMap {
    pub graph: DefiningGraph,
    pub target: CubeComplex,
    pub map: CombinatorialMap,
}

impl SalvettiMap {
    pub fn raag(&self) -> Raag {
        Raag::new(self.graph.clone())
    }

    /// The generator letter a directed source edge maps to.
    pub fn letter(&self, edge: usize, dir: i8) -> Letter {
        let (target_edge, map_dir) = self.map.edge_map[edge];
        let sign = if dir * map_dir >= 0 { Sign::Pos } else { Sign::Neg };
        Letter { vertex: crate::graph::VertexId(target_edge as u32), sign }
    }
}

/// Builds the local isometry to the Salvetti complex of the crossing graph:
/// each edge maps to its hyperplane's generator loop, directed by the
/// two-sided orientation. The result is verified before being returned.
pub fn salvetti_local_isometry(x: &CubeComplex) -> Result<SalvettiMap> {
    let graph = crossing_graph(x)?;
    let target = salvetti_complex(&graph);
    let hyperplanes = immersed_hyperplanes(x)?;
    let mut edge_map = vec![(0usize, 1i8); x.edges.len()];
    for h in &hyperplanes {
        let orient = h
            .orientation
            .as_ref()
            .ok_or(Error::NotSpecial)?;
        for &(e, d) in orient {
            edge_map[e] = (h.id, d);
        }
    }
    let map = CombinatorialMap { vertex_map: vec![0; x.vertex_count()], edge_map };
    let smap = SalvettiMap { graph, target, map };
    if !verify_local_isometry(x, &smap.target, &smap.map)? {
        return Err(Error::Internal(
            "constructed Salvetti map failed local-isometry verification".into(),
        ));
    }
    Ok(smap)
}

/// Checks the local-isometry condition: at every source vertex the induced
/// link map is injective, and it both preserves and reflects adjacency.
pub fn verify_local_isometry(x: &CubeComplex, y: &CubeComplex, m: &CombinatorialMap) -> Result<bool> {
    if m.vertex_map.len() != x.vertex_count() || m.edge_map.len() != x.edge_count() {
        return Err(Error::BadComplex("map tables have wrong lengths".into()));
    }
    for (e, &(s, t)) in x.edges.iter().enumerate() {
        let (e2, d) = m.edge_map[e];
        if e2 >= y.edge_count() || (d != 1 && d != -1) {
            return Err(Error::BadComplex("edge map out of range".into()));
        }
        let (s2, t2) = y.edges[e2];
        let (ims, imt) = if d >= 0 { (s2, t2) } else { (t2, s2) };
        if m.vertex_map[s] != ims || m.vertex_map[t] != imt {
            return Err(Error::BadComplex("map does not respect incidence".into()));
        }
    }
    let x_links = x.link_edges();
    let y_links = y.link_edges();
    let empty = HashSet::new();
    for v in 0..x.vertex_count() {
        let ends = x.ends_at(v);
        let images: Vec<EdgeEnd> = ends.iter().map(|&e| m.image_end(e)).collect();
        let distinct: HashSet<EdgeEnd> = images.iter().copied().collect();
        if distinct.len() != images.len() {
            return Ok(false);
        }
        let lx = x_links.get(&v).unwrap_or(&empty);
        let ly = y_links.get(&m.vertex_map[v]).unwrap_or(&empty);
        for i in 0..ends.len() {
            for j in (i + 1)..ends.len() {
                let (a, b) = (ends[i].min(ends[j]), ends[i].max(ends[j]));
                let (ia, ib) = (images[i].min(images[j]), images[i].max(images[j]));
                if lx.contains(&(a, b)) != ly.contains(&(ia, ib)) {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

// ---- fundamental group --------------------------------------------------------

#[derive(Debug, Clone)]
pub struct Pi1Presentation {
    pub basepoint: usize,
    /// Non-tree edges, ascending; these are the generators.
    pub generators: Vec<usize>,
    /// Relators as words over generator positions.
    pub relators: Vec<Vec<(usize, i8)>>,
    /// Tree path from the basepoint to each vertex, as directed edges.
    tree_paths: Vec<Vec<Side>>,
}

/// Spanning-tree presentation of `π₁(X, basepoint)`.
pub fn pi1_presentation(x: &CubeComplex, basepoint: usize) -> Result<Pi1Presentation> {
    let n = x.vertex_count();
    let mut tree_paths: Vec<Option<Vec<Side>>> = vec![None; n];
    tree_paths[basepoint] = Some(Vec::new());
    let mut tree_edges: HashSet<usize> = HashSet::new();
    let mut queue = VecDeque::from([basepoint]);
    while let Some(v) = queue.pop_front() {
        for (e, &(s, t)) in x.edges.iter().enumerate() {
            if s == t {
                continue;
            }
            let step = if s == v && tree_paths[t].is_none() {
                Some((t, (e, 1i8)))
            } else if t == v && tree_paths[s].is_none() {
                Some((s, (e, -1i8)))
            } else {
                None
            };
            if let Some((w, side)) = step {
                let mut path = tree_paths[v].clone().expect("visited vertex has a path");
                path.push(side);
                tree_paths[w] = Some(path);
                tree_edges.insert(e);
                queue.push_back(w);
            }
        }
    }
    if tree_paths.iter().any(Option::is_none) {
        return Err(Error::Disconnected);
    }
    let generators: Vec<usize> = (0..x.edge_count()).filter(|e| !tree_edges.contains(e)).collect();
    let gen_pos: HashMap<usize, usize> =
        generators.iter().enumerate().map(|(i, &e)| (e, i)).collect();
    let mut relators = Vec::new();
    for sq in &x.squares {
        let mut word: Vec<(usize, i8)> = Vec::new();
        for &(e, d) in sq {
            if let Some(&g) = gen_pos.get(&e) {
                // free reduction on the fly
                if let Some(&(last, ld)) = word.last() {
                    if last == g && ld == -d {
                        word.pop();
                        continue;
                    }
                }
                word.push((g, d));
            }
        }
        relators.push(word);
    }
    Ok(Pi1Presentation {
        basepoint,
        generators,
        relators,
        tree_paths: tree_paths.into_iter().map(|p| p.expect("connected")).collect(),
    })
}

/// The embedding of `π₁(X)` into the RAAG of the crossing graph, through a
/// verified Salvetti local isometry: each generator loop develops to a group
/// element, and every relator must develop to the identity.
#[derive(Debug, Clone)]
pub struct Pi1Embedding {
    pub presentation_generators: Vec<usize>,
    pub images: Vec<GroupElement>,
}

pub fn pi1_embedding(
    x: &CubeComplex,
    smap: &SalvettiMap,
    raag: &Raag,
    basepoint: usize,
) -> Result<Pi1Embedding> {
    if !verify_local_isometry(x, &smap.target, &smap.map)? {
        return Err(Error::NotLocalIsometry);
    }
    let pres = pi1_presentation(x, basepoint)?;
    let mut images = Vec::new();
    for &e in &pres.generators {
        let (s, t) = x.edges[e];
        let mut loop_path: Vec<Side> = pres.tree_paths[s].clone();
        loop_path.push((e, 1));
        loop_path.extend(pres.tree_paths[t].iter().rev().map(|&(pe, pd)| (pe, -pd)));
        images.push(develop_sides(raag, smap, &loop_path));
    }
    // relators must develop to the identity
    for sq in &x.squares {
        let img = develop_sides(raag, smap, sq);
        if !img.is_identity() {
            return Err(Error::Internal(format!(
                "square boundary develops to `{}` instead of the identity",
                raag.format(&img)
            )));
        }
    }
    Ok(Pi1Embedding { presentation_generators: pres.generators, images })
}

fn develop_sides(raag: &Raag, smap: &SalvettiMap, sides: &[Side]) -> GroupElement {
    let letters: Vec<Letter> = sides.iter().map(|&(e, d)| smap.letter(e, d)).collect();
    raag.element(&letters)
}

/// Develops a directed edge path from the basepoint into the target RAAG:
/// the endpoint of the lift of the path through the local isometry.
pub fn develop_path(
    x: &CubeComplex,
    smap: &SalvettiMap,
    raag: &Raag,
    basepoint: usize,
    path: &[Side],
) -> Result<GroupElement> {
    let mut at = basepoint;
    for (i, &side) in path.iter().enumerate() {
        if side_tail(&x.edges, side) != at {
            return Err(Error::BrokenPath(i));
        }
        at = side_head(&x.edges, side);
    }
    Ok(develop_sides(raag, smap, path))
}

/// Develops every path of length at most `radius` from the basepoint and
/// checks interval closure against the development to depth `2·radius`:
/// every vertex of every geodesic between two radius-`radius` developed
/// elements at distance at most `radius` is itself a developed vertex of the
/// lift (such vertices lie within depth `2·radius`). True always; exposed as
/// a diagnostic of convexity of the lift.
pub fn convexity_probe(
    x: &CubeComplex,
    smap: &SalvettiMap,
    raag: &Raag,
    basepoint: usize,
    radius: usize,
    cap: usize,
) -> Result<bool> {
    if radius > cap {
        return Err(Error::CapExceeded(radius, cap));
    }
    let inner = develop_ball(x, smap, raag, basepoint, radius);
    let universe = develop_ball(x, smap, raag, basepoint, 2 * radius);
    let elements: Vec<GroupElement> = inner.iter().cloned().collect();
    for (i, a) in elements.iter().enumerate() {
        for b in elements.iter().skip(i + 1) {
            if crate::geometry::distance(raag, a, b) > radius {
                continue;
            }
            for p in interval(raag, a, b) {
                if !universe.contains(&p) {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// Elements developed by paths of length at most `depth` from the basepoint.
fn develop_ball(
    x: &CubeComplex,
    smap: &SalvettiMap,
    raag: &Raag,
    basepoint: usize,
    depth: usize,
) -> HashSet<GroupElement> {
    let mut developed: HashSet<GroupElement> = HashSet::new();
    let mut seen: HashSet<(usize, GroupElement)> = HashSet::new();
    let mut frontier: Vec<(usize, GroupElement)> = vec![(basepoint, raag.identity())];
    developed.insert(raag.identity());
    seen.insert(frontier[0].clone());
    for _ in 0..depth {
        let mut next = Vec::new();
        for (v, g) in &frontier {
            for (e, &(s, t)) in x.edges.iter().enumerate() {
                let mut steps: Vec<(usize, i8, usize)> = Vec::new();
                if s == *v {
                    steps.push((e, 1, t));
                }
                if t == *v {
                    steps.push((e, -1, s));
                }
                for (e, d, w) in steps {
                    let img = raag.mul_letter(g, smap.letter(e, d));
                    let state = (w, img.clone());
                    if seen.insert(state.clone()) {
                        developed.insert(img);
                        next.push(state);
                    }
                }
            }
        }
        frontier = next;
    }
    developed
}

//! Plabic graphs as planar bicolored combinatorial maps in a disk: face
//! tracing, trips and face labels, the triangulation-to-plabic-graph
//! construction, local moves and move-class enumeration.
//!
//! A graph is stored as a rotation system: every vertex carries the
//! counterclockwise cyclic list of its darts (edge ends). The face to the
//! *left* of a dart is traced with `next = rot_prev(twin(d))`. The disk
//! boundary is modelled by synthetic arc darts between consecutive boundary
//! vertices whenever faces are traced.
//!
//! The rules-of-the-road trip has two mirror readings. The convention that
//! reproduces the reference data is: the trip *permutation* turns onto
//! `rot_prev(twin(d))` at black vertices, while the trips used for *face
//! labels* (and flow degrees: left regions of directed paths) use screen
//! geometry, turning onto `rot_next(twin(d))` at black vertices. Both are
//! pinned by the worked pentagon example in the tests.

use crate::error::{Error, Result};
use crate::polygon::Triangulation;
use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet, VecDeque};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Color {
    Black,
    White,
}

impl Color {
    pub fn opposite(self) -> Self {
        match self {
            Color::Black => Color::White,
            Color::White => Color::Black,
        }
    }
}

/// A plabic graph. Boundary vertices are uncolored, have degree one, and are
/// labelled 1..n counterclockwise.
#[derive(Clone, Debug)]
pub struct PlabicGraph {
    n: usize,
    colors: Vec<Option<Color>>, // None = boundary
    rot: Vec<Vec<usize>>,       // ccw darts per vertex
    origin: Vec<usize>,
    boundary: Vec<usize>, // label i -> vertex boundary[i-1]
}

impl PlabicGraph {
    /// Builds a graph from counterclockwise neighbor lists (simple graphs
    /// only; moves may create multi-edges internally but constructors get
    /// simple input).
    pub fn from_simple(
        colors: Vec<Option<Color>>,
        rot_neighbors: Vec<Vec<usize>>,
        boundary: Vec<usize>,
    ) -> Result<Self> {
        let nv = colors.len();
        if rot_neighbors.len() != nv {
            return Err(Error::InvalidInput("rotation list length mismatch".into()));
        }
        let mut edge_ids: HashMap<(usize, usize), usize> = HashMap::new();
        let mut nedges = 0;
        for (u, nbrs) in rot_neighbors.iter().enumerate() {
            let set: HashSet<usize> = nbrs.iter().copied().collect();
            if set.len() != nbrs.len() {
                return Err(Error::InvalidInput(format!("repeated neighbor at vertex {u}")));
            }
            for &v in nbrs {
                if v >= nv || v == u {
                    return Err(Error::InvalidInput(format!("bad neighbor {v} at vertex {u}")));
                }
                if u < v {
                    edge_ids.insert((u, v), nedges);
                    nedges += 1;
                }
            }
        }
        let mut origin = vec![usize::MAX; 2 * nedges];
        let mut rot = vec![Vec::new(); nv];
        for (u, nbrs) in rot_neighbors.iter().enumerate() {
            for &v in nbrs {
                let (key, side) = if u < v { ((u, v), 0) } else { ((v, u), 1) };
                let e = *edge_ids
                    .get(&key)
                    .ok_or_else(|| Error::InvalidInput(format!("edge ({u},{v}) present only at {u}")))?;
                let d = 2 * e + side;
                origin[d] = u;
                rot[u].push(d);
            }
        }
        if origin.contains(&usize::MAX) {
            return Err(Error::InvalidInput("asymmetric adjacency".into()));
        }
        let g = Self { n: boundary.len(), colors, rot, origin, boundary };
        g.validate()?;
        Ok(g)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn num_vertices(&self) -> usize {
        self.colors.len()
    }

    pub fn num_edges(&self) -> usize {
        self.origin.len() / 2
    }

    pub fn num_darts(&self) -> usize {
        self.origin.len()
    }

    pub fn color(&self, v: usize) -> Option<Color> {
        self.colors[v]
    }

    pub fn is_boundary(&self, v: usize) -> bool {
        self.colors[v].is_none()
    }

    pub fn boundary_vertex(&self, label: usize) -> usize {
        self.boundary[label - 1]
    }

    pub fn boundary_label(&self, v: usize) -> Option<usize> {
        self.boundary.iter().position(|&b| b == v).map(|i| i + 1)
    }

    pub fn origin(&self, d: usize) -> usize {
        self.origin[d]
    }

    pub fn twin(&self, d: usize) -> usize {
        d ^ 1
    }

    pub fn target(&self, d: usize) -> usize {
        self.origin[d ^ 1]
    }

    pub fn rotation(&self, v: usize) -> &[usize] {
        &self.rot[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.rot[v].len()
    }

    fn dart_pos(&self, d: usize) -> usize {
        let v = self.origin[d];
        self.rot[v].iter().position(|&x| x == d).expect("dart in rotation")
    }

    pub fn rot_next(&self, d: usize) -> usize {
        let v = self.origin[d];
        let p = self.dart_pos(d);
        self.rot[v][(p + 1) % self.rot[v].len()]
    }

    pub fn rot_prev(&self, d: usize) -> usize {
        let v = self.origin[d];
        let p = self.dart_pos(d);
        self.rot[v][(p + self.rot[v].len() - 1) % self.rot[v].len()]
    }

    /// The unique dart leaving the boundary vertex with the given label.
    pub fn ray_dart(&self, label: usize) -> usize {
        self.rot[self.boundary[label - 1]][0]
    }

    pub fn validate(&self) -> Result<()> {
        let nv = self.colors.len();
        if self.n == 0 || self.boundary.len() != self.n {
            return Err(Error::Structural("missing boundary vertices".into()));
        }
        for (i, &b) in self.boundary.iter().enumerate() {
            if b >= nv || self.colors[b].is_some() {
                return Err(Error::Structural(format!("boundary vertex {} is colored", i + 1)));
            }
            if self.rot[b].len() != 1 {
                return Err(Error::Structural(format!(
                    "boundary vertex {} has degree {}",
                    i + 1,
                    self.rot[b].len()
                )));
            }
        }
        let boundary_set: HashSet<usize> = self.boundary.iter().copied().collect();
        if boundary_set.len() != self.n {
            return Err(Error::Structural("repeated boundary vertex".into()));
        }
        for v in 0..nv {
            if self.colors[v].is_none() && !boundary_set.contains(&v) {
                return Err(Error::Structural(format!("uncolored internal vertex {v}")));
            }
            if self.colors[v].is_some() && self.rot[v].len() <= 1 {
                return Err(Error::Structural(format!("internal leaf vertex {v}")));
            }
        }
        // darts partition into rotations at their origins
        let mut seen = vec![false; self.origin.len()];
        for (v, list) in self.rot.iter().enumerate() {
            for &d in list {
                if d >= self.origin.len() || self.origin[d] != v || seen[d] {
                    return Err(Error::Structural(format!("bad dart {d} at vertex {v}")));
                }
                seen[d] = true;
            }
        }
        if !seen.iter().all(|&s| s) {
            return Err(Error::Structural("orphan dart".into()));
        }
        // connectivity
        let mut visited = vec![false; nv];
        let mut queue = VecDeque::from([self.boundary[0]]);
        visited[self.boundary[0]] = true;
        while let Some(v) = queue.pop_front() {
            for &d in &self.rot[v] {
                let w = self.target(d);
                if !visited[w] {
                    visited[w] = true;
                    queue.push_back(w);
                }
            }
        }
        if !visited.iter().all(|&x| x) {
            return Err(Error::Structural("graph is not connected".into()));
        }
        // disk embedding: Euler relation and a clean outer face
        let fs = self.faces()?;
        let v = nv as i64;
        let e = (self.num_edges() + self.n) as i64;
        let f = fs.faces.len() as i64;
        if v - e + f != 2 {
            return Err(Error::Structural(format!(
                "rotation system is not planar: V-E+F = {}",
                v - e + f
            )));
        }
        Ok(())
    }

    /// Faces of the disk picture, traced with synthetic boundary arcs. The
    /// outer face (outside the disk) must consist of exactly the reverse
    /// arcs; all other faces are disk faces.
    pub fn faces(&self) -> Result<FaceStructure> {
        let nd = self.origin.len();
        let n = self.n;
        // arc i (0-based) joins boundary label i+1 to label i+2; dart
        // nd + 2i runs forward (counterclockwise), nd + 2i + 1 backward.
        let arc_fwd = |i: usize| nd + 2 * i;
        let twin = |d: usize| {
            if d < nd {
                d ^ 1
            } else if (d - nd).is_multiple_of(2) {
                d + 1
            } else {
                d - 1
            }
        };
        // synthetic rotation at boundary vertex with label i+1:
        // [arc to i+2, ray, arc to i] counterclockwise
        let boundary_rot: Vec<[usize; 3]> = (0..n)
            .map(|i| {
                let prev = (i + n - 1) % n;
                [arc_fwd(i), self.rot[self.boundary[i]][0], arc_fwd(prev) + 1]
            })
            .collect();
        let rot_prev_aug = |d: usize| -> usize {
            let v = if d < nd {
                self.origin[d]
            } else {
                let i = (d - nd) / 2;
                if (d - nd).is_multiple_of(2) {
                    self.boundary[i]
                } else {
                    self.boundary[(i + 1) % n]
                }
            };
            if let Some(label0) = (0..n).find(|&j| self.boundary[j] == v) {
                let list = &boundary_rot[label0];
                let p = list.iter().position(|&x| x == d).expect("dart at boundary");
                list[(p + 2) % 3]
            } else {
                self.rot_prev(d)
            }
        };
        let total = nd + 2 * n;
        let mut face_of = vec![usize::MAX; total];
        let mut faces = Vec::new();
        for start in 0..total {
            if face_of[start] != usize::MAX {
                continue;
            }
            let mut darts = Vec::new();
            let mut d = start;
            loop {
                if face_of[d] != usize::MAX {
                    return Err(Error::Structural("face tracing re-entered an orbit".into()));
                }
                face_of[d] = faces.len();
                darts.push(d);
                d = rot_prev_aug(twin(d));
                if d == start {
                    break;
                }
                if darts.len() > total {
                    return Err(Error::Structural("face tracing did not close".into()));
                }
            }
            let internal = darts.iter().all(|&x| {
                x < nd && self.colors[self.origin[x]].is_some() && self.colors[self.target(x)].is_some()
            });
            faces.push(Face { darts, internal });
        }
        // the orbit of the reversed arc out of boundary vertex 2 must be all
        // n reversed arcs: boundary vertices sit on the disk in label order
        let outer = face_of[arc_fwd(0) + 1];
        let outer_face = &faces[outer];
        let all_rev_arcs = outer_face.darts.len() == n
            && outer_face
                .darts
                .iter()
                .all(|&d| d >= nd && (d - nd) % 2 == 1);
        if !all_rev_arcs {
            return Err(Error::Structural(
                "boundary vertices are not in counterclockwise disk order".into(),
            ));
        }
        Ok(FaceStructure { face_of, faces, outer, real_darts: nd })
    }

    /// External-interface JSON: vertices with colors, rotations as
    /// `[neighbor, slot in the neighbor's rotation]` pairs, boundary ids.
    pub fn to_json(&self) -> serde_json::Value {
        let vertices: Vec<serde_json::Value> = (0..self.num_vertices())
            .map(|v| {
                let color = match self.colors[v] {
                    Some(Color::Black) => "black",
                    Some(Color::White) => "white",
                    None => "boundary",
                };
                serde_json::json!({"id": v, "color": color})
            })
            .collect();
        let rotation: BTreeMap<String, Vec<[usize; 2]>> = (0..self.num_vertices())
            .map(|v| {
                let entries = self.rot[v]
                    .iter()
                    .map(|&d| {
                        let w = self.target(d);
                        let slot = self.rot[w].iter().position(|&x| x == (d ^ 1)).unwrap();
                        [w, slot]
                    })
                    .collect();
                (v.to_string(), entries)
            })
            .collect();
        serde_json::json!({
            "n": self.n,
            "vertices": vertices,
            "rotation": rotation,
            "boundary": self.boundary,
        })
    }
}

#[derive(Clone, Debug)]
pub struct Face {
    /// The darts with this face on their left, in walk order; boundary faces
    /// include synthetic arc darts.
    pub darts: Vec<usize>,
    pub internal: bool,
}

#[derive(Clone, Debug)]
pub struct FaceStructure {
    pub faces: Vec<Face>,
    pub face_of: Vec<usize>,
    pub outer: usize,
    real_darts: usize,
}

impl FaceStructure {
    pub fn is_arc(&self, d: usize) -> bool {
        d >= self.real_darts
    }

    /// Indices of disk faces (everything but the outer face).
    pub fn disk_faces(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.faces.len()).filter(move |&f| f != self.outer)
    }
}

/// The two mirror readings of the rules of the road.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TripRule {
    /// Used for the trip permutation.
    Permutation,
    /// Used for face labels.
    Labels,
}

/// The trip starting at boundary vertex `label`, as the list of darts
/// walked; the last dart ends at the terminal boundary vertex.
pub fn trip(g: &PlabicGraph, label: usize, rule: TripRule) -> Result<Vec<usize>> {
    let mut d = g.ray_dart(label);
    let mut path = vec![d];
    let limit = 2 * g.num_darts() + 2;
    while !g.is_boundary(g.target(d)) {
        let v = g.target(d);
        let back = g.twin(d);
        let turn_next = match (g.color(v).expect("internal vertex"), rule) {
            (Color::Black, TripRule::Permutation) | (Color::White, TripRule::Labels) => false,
            (Color::Black, TripRule::Labels) | (Color::White, TripRule::Permutation) => true,
        };
        d = if turn_next { g.rot_next(back) } else { g.rot_prev(back) };
        path.push(d);
        if path.len() > limit {
            return Err(Error::Structural(format!("trip from {label} does not terminate")));
        }
    }
    Ok(path)
}

/// The boundary-to-boundary permutation of the rules-of-the-road walk.
pub fn trip_permutation(g: &PlabicGraph) -> Result<Vec<usize>> {
    (1..=g.n())
        .map(|i| {
            let path = trip(g, i, TripRule::Permutation)?;
            let end = g.target(*path.last().unwrap());
            g.boundary_label(end)
                .ok_or_else(|| Error::Structural("trip ended off the boundary".into()))
        })
        .collect()
}

/// All faces weakly to the left of the directed dart path: the faces
/// immediately left of its darts, closed under adjacency that crosses
/// neither the path nor the disk boundary.
pub fn left_region(g: &PlabicGraph, fs: &FaceStructure, path: &[usize]) -> BTreeSet<usize> {
    let path_edges: HashSet<usize> = path.iter().map(|&d| d / 2).collect();
    let mut region: BTreeSet<usize> = path.iter().map(|&d| fs.face_of[d]).collect();
    let mut queue: VecDeque<usize> = region.iter().copied().collect();
    while let Some(f) = queue.pop_front() {
        for &d in &fs.faces[f].darts {
            if fs.is_arc(d) || path_edges.contains(&(d / 2)) {
                continue;
            }
            let nbr = fs.face_of[g.twin(d)];
            if region.insert(nbr) {
                queue.push_back(nbr);
            }
        }
    }
    region
}

/// Face labels for the disk faces of `g`.
#[derive(Clone, Debug)]
pub struct FaceLabeling {
    /// One label per disk face, in `FaceStructure::disk_faces` order.
    pub labels: Vec<BTreeSet<usize>>,
    pub internal: Vec<bool>,
}

impl FaceLabeling {
    pub fn internal_label_set(&self) -> BTreeSet<BTreeSet<usize>> {
        self.labels
            .iter()
            .zip(&self.internal)
            .filter(|(_, &i)| i)
            .map(|(l, _)| l.clone())
            .collect()
    }
}

/// Labels every disk face by the set of boundary indices whose trip has the
/// face in its left region; fails unless all labels share one cardinality.
pub fn face_labels(g: &PlabicGraph) -> Result<FaceLabeling> {
    let fs = g.faces()?;
    let disk: Vec<usize> = fs.disk_faces().collect();
    let mut labels: BTreeMap<usize, BTreeSet<usize>> =
        disk.iter().map(|&f| (f, BTreeSet::new())).collect();
    for i in 1..=g.n() {
        let path = trip(g, i, TripRule::Labels)?;
        for f in left_region(g, &fs, &path) {
            if f != fs.outer {
                labels.get_mut(&f).expect("disk face").insert(i);
            }
        }
    }
    let out_labels: Vec<BTreeSet<usize>> = disk.iter().map(|f| labels[f].clone()).collect();
    let cards: BTreeSet<usize> = out_labels.iter().map(|l| l.len()).collect();
    if cards.len() != 1 {
        return Err(Error::Structural(format!(
            "face labels have mixed cardinalities {cards:?}"
        )));
    }
    let distinct: BTreeSet<&BTreeSet<usize>> = out_labels.iter().collect();
    if distinct.len() != out_labels.len() {
        return Err(Error::Structural("repeated face label".into()));
    }
    Ok(FaceLabeling {
        labels: out_labels,
        internal: disk.iter().map(|&f| fs.faces[f].internal).collect(),
    })
}

/// The plabic graph of a triangulation: a black vertex in every triangle
/// joined to the triangle's corners, polygon vertices colored white when
/// they meet a diagonal, same-colored contractions applied, and one ray per
/// boundary position.
pub fn kw_graph(t: &Triangulation) -> Result<PlabicGraph> {
    let n = t.n();
    let triangles = t.triangles();
    let has_diagonal: Vec<bool> = (0..=n)
        .map(|p| {
            p >= 1
                && t.diagonals()
                    .iter()
                    .any(|d| d.endpoints().0 == p || d.endpoints().1 == p)
        })
        .collect();
    // vertex layout: boundary rays 0..n-1, then one vertex per polygon
    // position (white, or the merged black ear triangle), then the internal
    // black triangle vertices
    let pos_vertex: Vec<usize> = (0..n).map(|p| n + p).collect();
    let mut colors: Vec<Option<Color>> = vec![None; n];
    colors.extend((1..=n).map(|p| {
        Some(if has_diagonal[p] { Color::White } else { Color::Black })
    }));
    let mut tri_vertex = vec![usize::MAX; triangles.len()];
    let mut next_id = 2 * n;
    for (ti, tri) in triangles.iter().enumerate() {
        let tips: Vec<usize> = tri.iter().copied().filter(|&v| !has_diagonal[v]).collect();
        match tips.len() {
            0 => {
                tri_vertex[ti] = next_id;
                next_id += 1;
                colors.push(Some(Color::Black));
            }
            1 => tri_vertex[ti] = pos_vertex[tips[0] - 1],
            _ => {
                return Err(Error::Structural(format!(
                    "triangle {tri:?} has {} ear tips",
                    tips.len()
                )))
            }
        }
    }
    let mut rot = vec![Vec::new(); next_id];
    for p in 1..=n {
        rot[p - 1] = vec![pos_vertex[p - 1]]; // boundary ray
    }
    let triangle_index = |a: usize, b: usize, c: usize| -> usize {
        let mut key = [a, b, c];
        key.sort();
        triangles.iter().position(|t| *t == key).expect("triangle exists")
    };
    for p in 1..=n {
        let v = pos_vertex[p - 1];
        if has_diagonal[p] {
            // neighbors of p in ccw order starting just after p
            let mut others: Vec<usize> = (1..n)
                .map(|d| (p - 1 + d) % n + 1)
                .filter(|&q| t.is_edge(p, q))
                .collect();
            others.dedup();
            // wedges between consecutive incident edges are the triangles at p
            let mut list = vec![p - 1];
            for w in others.windows(2) {
                list.push(tri_vertex[triangle_index(p, w[0], w[1])]);
            }
            rot[v] = list;
        } else {
            // merged ear triangle (p-1, p, p+1)
            let next = p % n + 1;
            let prev = (p + n - 2) % n + 1;
            rot[v] = vec![p - 1, pos_vertex[next - 1], pos_vertex[prev - 1]];
        }
    }
    for (ti, tri) in triangles.iter().enumerate() {
        let v = tri_vertex[ti];
        if v >= 2 * n {
            rot[v] = tri.iter().map(|&c| pos_vertex[c - 1]).collect();
        }
    }
    PlabicGraph::from_simple(colors, rot, (0..n).collect())
}

/// Assembles a disk-embedded plabic graph from an internal block given by
/// ccw neighbor lists, attaching one boundary ray at each chosen vertex of
/// the outer cycle (listed counterclockwise). Rays are inserted in the
/// outer wedge, between the cycle-predecessor and cycle-successor.
pub fn assemble_disk_graph(
    colors: &[Color],
    rot_neighbors: &[Vec<usize>],
    outer_cycle: &[usize],
    legs: &[usize],
) -> Result<PlabicGraph> {
    let nv = colors.len();
    let mut all_colors: Vec<Option<Color>> = colors.iter().map(|&c| Some(c)).collect();
    let mut rot: Vec<Vec<usize>> = rot_neighbors.to_vec();
    let mut boundary = Vec::new();
    for &v in legs {
        let pos = outer_cycle
            .iter()
            .position(|&x| x == v)
            .ok_or_else(|| Error::InvalidInput(format!("leg vertex {v} not on the outer cycle")))?;
        let prev = outer_cycle[(pos + outer_cycle.len() - 1) % outer_cycle.len()];
        let b = all_colors.len();
        all_colors.push(None);
        let at = rot[v]
            .iter()
            .position(|&x| x == prev)
            .ok_or_else(|| Error::InvalidInput("outer cycle is not a closed walk".into()))?;
        rot[v].insert(at + 1, b);
        rot.push(vec![v]);
        boundary.push(b);
    }
    let _ = nv;
    PlabicGraph::from_simple(all_colors, rot, boundary)
}

// ---------------------------------------------------------------------------
// local moves
// ---------------------------------------------------------------------------

/// Mutable dart-level view used by the move implementations; finished back
/// into a compact `PlabicGraph`.
struct Editable {
    colors: Vec<Option<Color>>,
    rot: Vec<Vec<usize>>,
    origin: Vec<usize>,
    twin: Vec<usize>,
    alive_v: Vec<bool>,
    alive_d: Vec<bool>,
    boundary: Vec<usize>,
}

impl Editable {
    fn new(g: &PlabicGraph) -> Self {
        Self {
            colors: g.colors.clone(),
            rot: g.rot.clone(),
            origin: g.origin.clone(),
            twin: (0..g.origin.len()).map(|d| d ^ 1).collect(),
            alive_v: vec![true; g.colors.len()],
            alive_d: vec![true; g.origin.len()],
            boundary: g.boundary.clone(),
        }
    }

    fn target(&self, d: usize) -> usize {
        self.origin[self.twin[d]]
    }

    fn is_internal(&self, v: usize) -> bool {
        self.colors[v].is_some()
    }

    /// Contracts the edge of dart `d`, merging its target into its origin.
    fn contract(&mut self, d: usize) -> Result<()> {
        let u = self.origin[d];
        let v = self.target(d);
        if u == v {
            return Err(Error::Structural("contraction of a self-loop".into()));
        }
        let td = self.twin[d];
        let pos_u = self.rot[u].iter().position(|&x| x == d).unwrap();
        let pos_v = self.rot[v].iter().position(|&x| x == td).unwrap();
        let len_v = self.rot[v].len();
        let spliced: Vec<usize> = (1..len_v)
            .map(|k| self.rot[v][(pos_v + k) % len_v])
            .collect();
        for &x in &spliced {
            self.origin[x] = u;
        }
        self.rot[u].splice(pos_u..=pos_u, spliced);
        self.rot[v].clear();
        self.alive_v[v] = false;
        self.alive_d[d] = false;
        self.alive_d[td] = false;
        self.rot[u].retain(|&x| x != d && x != td);
        if self.rot[u].iter().any(|&x| self.target(x) == u) {
            return Err(Error::Structural("contraction created a self-loop".into()));
        }
        Ok(())
    }

    /// Removes a degree-2 internal vertex, joining its two edges.
    fn smooth(&mut self, v: usize) -> Result<()> {
        let (x, y) = (self.rot[v][0], self.rot[v][1]);
        let (tx, ty) = (self.twin[x], self.twin[y]);
        if self.origin[tx] == v || self.origin[ty] == v {
            return Err(Error::Structural("smoothing a self-loop".into()));
        }
        if self.origin[tx] == self.origin[ty] {
            return Err(Error::Structural(
                "degree-2 vertex with parallel edges: the graph is not reduced".into(),
            ));
        }
        self.twin[tx] = ty;
        self.twin[ty] = tx;
        self.alive_v[v] = false;
        self.alive_d[x] = false;
        self.alive_d[y] = false;
        self.rot[v].clear();
        Ok(())
    }

    fn recolor(&mut self, v: usize) {
        self.colors[v] = self.colors[v].map(Color::opposite);
    }

    /// Splits `out_dart` and `in_twin` (counterclockwise-consecutive darts
    /// at their shared vertex) onto a new vertex of the same color joined to
    /// the old one; returns the new vertex.
    fn split_off(&mut self, out_dart: usize, in_twin: usize) -> usize {
        let v = self.origin[out_dart];
        let w = self.colors.len();
        self.colors.push(self.colors[v]);
        self.alive_v.push(true);
        let g1 = self.origin.len(); // dart at v toward w
        let g2 = g1 + 1;
        self.origin.extend([v, w]);
        self.twin.extend([g2, g1]);
        self.alive_d.extend([true, true]);
        let pos = self.rot[v].iter().position(|&x| x == out_dart).unwrap();
        debug_assert_eq!(self.rot[v][(pos + 1) % self.rot[v].len()], in_twin);
        self.rot[v].retain(|&x| x != out_dart && x != in_twin);
        let pos = pos.min(self.rot[v].len());
        self.rot[v].insert(pos, g1);
        self.origin[out_dart] = w;
        self.origin[in_twin] = w;
        self.rot.push(vec![out_dart, in_twin, g2]);
        w
    }

    /// Repeatedly contracts unicolored internal edges and removes internal
    /// degree-2 vertices.
    fn normalize(&mut self) -> Result<()> {
        loop {
            let mut acted = false;
            if let Some(d) = (0..self.origin.len()).find(|&d| {
                self.alive_d[d]
                    && self.is_internal(self.origin[d])
                    && self.is_internal(self.target(d))
                    && self.colors[self.origin[d]] == self.colors[self.target(d)]
            }) {
                self.contract(d)?;
                acted = true;
            } else if let Some(v) = (0..self.colors.len()).find(|&v| {
                self.alive_v[v] && self.is_internal(v) && self.rot[v].len() == 2 && {
                    let a = self.target(self.rot[v][0]);
                    let b = self.target(self.rot[v][1]);
                    self.is_internal(a) || self.is_internal(b)
                }
            }) {
                self.smooth(v)?;
                acted = true;
            }
            if !acted {
                return Ok(());
            }
        }
    }

    /// Compacts to a `PlabicGraph` with the twin-by-xor dart layout.
    fn finish(self) -> Result<PlabicGraph> {
        let mut vmap = vec![usize::MAX; self.colors.len()];
        let mut colors = Vec::new();
        for (v, slot) in vmap.iter_mut().enumerate() {
            if self.alive_v[v] {
                *slot = colors.len();
                colors.push(self.colors[v]);
            }
        }
        let mut dmap = vec![usize::MAX; self.origin.len()];
        let mut next = 0;
        for d in 0..self.origin.len() {
            if self.alive_d[d] && dmap[d] == usize::MAX {
                let t = self.twin[d];
                dmap[d] = next;
                dmap[t] = next + 1;
                next += 2;
            }
        }
        let mut origin = vec![usize::MAX; next];
        let mut rot = vec![Vec::new(); colors.len()];
        for v in 0..self.colors.len() {
            if !self.alive_v[v] {
                continue;
            }
            for &d in &self.rot[v] {
                origin[dmap[d]] = vmap[v];
                rot[vmap[v]].push(dmap[d]);
            }
        }
        let g = PlabicGraph {
            n: self.boundary.len(),
            colors,
            rot,
            origin,
            boundary: self.boundary.iter().map(|&b| vmap[b]).collect(),
        };
        g.validate()?;
        Ok(g)
    }
}

/// Bipartite normal form: contract unicolored internal edges and remove
/// internal degree-2 vertices until neither applies. Trip permutation and
/// face labels are unchanged.
pub fn normalize(g: &PlabicGraph) -> Result<PlabicGraph> {
    let mut e = Editable::new(g);
    e.normalize()?;
    e.finish()
}

/// The square move at an internal quadrilateral face with alternating
/// colors. Face vertices of degree above three are split off first so the
/// color swap acts on trivalent vertices; the result is re-normalized.
/// Returns `Ok(None)` when the face does not support the move.
pub fn square_move(g: &PlabicGraph, face_index: usize) -> Result<Option<PlabicGraph>> {
    let fs = g.faces()?;
    let face = match fs.faces.get(face_index) {
        Some(f) => f,
        None => return Err(Error::InvalidInput(format!("no face {face_index}"))),
    };
    if !face.internal || face.darts.len() != 4 {
        return Ok(None);
    }
    let verts: Vec<usize> = face.darts.iter().map(|&d| g.origin(d)).collect();
    let distinct: HashSet<usize> = verts.iter().copied().collect();
    if distinct.len() != 4 {
        return Ok(None);
    }
    for w in 0..4 {
        let a = g.color(verts[w]).expect("internal face vertex");
        let b = g.color(verts[(w + 1) % 4]).expect("internal face vertex");
        if a == b {
            return Ok(None);
        }
    }
    let mut e = Editable::new(g);
    let mut to_recolor = Vec::new();
    for (t, &v) in verts.iter().enumerate() {
        let out_dart = face.darts[t];
        let in_dart = face.darts[(t + 3) % 4];
        if e.rot[v].len() > 3 {
            to_recolor.push(e.split_off(out_dart, g.twin(in_dart)));
        } else {
            to_recolor.push(v);
        }
    }
    for v in to_recolor {
        e.recolor(v);
    }
    e.normalize()?;
    e.finish().map(Some)
}

/// Isomorphism-invariant key for boundary-labelled embedded plabic graphs:
/// a canonical traversal anchored at the ray of boundary vertex 1.
pub fn canonical_key(g: &PlabicGraph) -> Vec<u8> {
    let mut vertex_order = Vec::new();
    let mut entry = vec![usize::MAX; g.num_vertices()];
    let mut dart_id = vec![usize::MAX; g.num_darts()];
    let mut next_dart = 0usize;
    let root = g.boundary_vertex(1);
    let mut queue = VecDeque::from([root]);
    entry[root] = g.ray_dart(1);
    let mut seen = vec![false; g.num_vertices()];
    seen[root] = true;
    while let Some(v) = queue.pop_front() {
        vertex_order.push(v);
        let rot = g.rotation(v);
        let start = rot.iter().position(|&d| d == entry[v]).unwrap();
        for k in 0..rot.len() {
            let d = rot[(start + k) % rot.len()];
            dart_id[d] = next_dart;
            next_dart += 1;
            let w = g.target(d);
            if !seen[w] {
                seen[w] = true;
                entry[w] = g.twin(d);
                queue.push_back(w);
            }
        }
    }
    let mut key = Vec::new();
    let push16 = |key: &mut Vec<u8>, x: usize| key.extend((x as u16).to_le_bytes());
    push16(&mut key, g.n());
    for v in vertex_order {
        match g.color(v) {
            None => {
                key.push(3);
                push16(&mut key, g.boundary_label(v).unwrap());
            }
            Some(Color::Black) => key.push(1),
            Some(Color::White) => key.push(2),
        }
        push16(&mut key, g.degree(v));
        let rot = g.rotation(v);
        let start = rot.iter().position(|&d| d == entry[v]).unwrap();
        for k in 0..rot.len() {
            let d = rot[(start + k) % rot.len()];
            push16(&mut key, dart_id[g.twin(d)]);
        }
    }
    key
}

pub fn canonical_key_hex(g: &PlabicGraph) -> String {
    canonical_key(g).iter().map(|b| format!("{b:02x}")).collect()
}

/// Breadth-first closure of the square move over all internal faces,
/// normalizing after each move and deduplicating by canonical key. The
/// result is sorted by key. Fails when the class exceeds `bound`.
pub fn enumerate_move_class(g: &PlabicGraph, bound: usize) -> Result<Vec<PlabicGraph>> {
    let start = normalize(g)?;
    let base_trip = trip_permutation(&start)?;
    let mut found: BTreeMap<Vec<u8>, PlabicGraph> = BTreeMap::new();
    let mut queue = VecDeque::new();
    found.insert(canonical_key(&start), start.clone());
    queue.push_back(start);
    while let Some(cur) = queue.pop_front() {
        let fs = cur.faces()?;
        for fi in 0..fs.faces.len() {
            let Some(moved) = square_move(&cur, fi)? else {
                continue;
            };
            if trip_permutation(&moved)? != base_trip {
                return Err(Error::Structural("square move changed the trip permutation".into()));
            }
            let moved_fs = moved.faces()?;
            if moved_fs
                .faces
                .iter()
                .any(|f| f.darts.len() == 2 && f.darts.iter().all(|&d| !moved_fs.is_arc(d)))
            {
                return Err(Error::Structural(
                    "enumeration produced parallel edges between internal vertices".into(),
                ));
            }
            let key = canonical_key(&moved);
            if !found.contains_key(&key) {
                if found.len() >= bound {
                    return Err(Error::Resource(format!("move class exceeds bound {bound}")));
                }
                found.insert(key, moved.clone());
                queue.push_back(moved);
            }
        }
    }
    Ok(found.into_values().collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polygon::{enumerate_triangulations, palm_triangulation};

    fn pentagon_palm_graph() -> PlabicGraph {
        kw_graph(&palm_triangulation(5, 2).unwrap()).unwrap()
    }

    fn label_set(labels: &[&[usize]]) -> BTreeSet<BTreeSet<usize>> {
        labels.iter().map(|l| l.iter().copied().collect()).collect()
    }

    #[test]
    fn kw_pentagon_palm_shape() {
        let g = pentagon_palm_graph();
        assert_eq!(g.n(), 5);
        // 5 boundary + 5 position vertices + 1 internal triangle vertex
        assert_eq!(g.num_vertices(), 11);
        assert_eq!(g.num_edges(), 12);
        let fs = g.faces().unwrap();
        // 7 disk faces, 2 internal
        assert_eq!(fs.faces.len(), 8);
        assert_eq!(fs.disk_faces().count(), 7);
        assert_eq!(fs.faces.iter().filter(|f| f.internal).count(), 2);
    }

    #[test]
    fn kw_pentagon_palm_trip_permutation() {
        let g = pentagon_palm_graph();
        assert_eq!(trip_permutation(&g).unwrap(), vec![3, 4, 5, 1, 2]);
    }

    #[test]
    fn kw_trip_permutations_shift_by_two() {
        for n in 4..=7 {
            for t in enumerate_triangulations(n).unwrap() {
                let g = kw_graph(&t).unwrap();
                let expect: Vec<usize> = (1..=n).map(|i| (i + 1) % n + 1).collect();
                assert_eq!(trip_permutation(&g).unwrap(), expect, "n={n} t={t:?}");
            }
        }
    }

    #[test]
    fn kw_pentagon_palm_face_labels() {
        let g = pentagon_palm_graph();
        let labeling = face_labels(&g).unwrap();
        assert_eq!(
            labeling.internal_label_set(),
            label_set(&[&[1, 3], &[3, 5]])
        );
        let all: BTreeSet<BTreeSet<usize>> = labeling.labels.iter().cloned().collect();
        assert_eq!(
            all,
            label_set(&[
                &[1, 2],
                &[1, 3],
                &[1, 5],
                &[2, 3],
                &[3, 4],
                &[3, 5],
                &[4, 5]
            ])
        );
    }

    #[test]
    fn kw_square_boundary_labels_are_cyclic_intervals() {
        for n in [4usize, 6, 7] {
            for t in enumerate_triangulations(n).unwrap().iter().take(8) {
                let g = kw_graph(t).unwrap();
                let labeling = face_labels(&g).unwrap();
                let boundary: BTreeSet<BTreeSet<usize>> = labeling
                    .labels
                    .iter()
                    .zip(&labeling.internal)
                    .filter(|(_, &i)| !i)
                    .map(|(l, _)| l.clone())
                    .collect();
                let expected: BTreeSet<BTreeSet<usize>> = (1..=n)
                    .map(|i| [i, i % n + 1].into_iter().collect())
                    .collect();
                assert_eq!(boundary, expected, "n={n}");
                // internal faces in bijection with diagonals
                assert_eq!(
                    labeling.internal.iter().filter(|&&i| i).count(),
                    n - 3,
                    "n={n}"
                );
            }
        }
    }

    #[test]
    fn kw_graphs_are_already_normal() {
        for t in enumerate_triangulations(6).unwrap() {
            let g = kw_graph(&t).unwrap();
            let ng = normalize(&g).unwrap();
            assert_eq!(canonical_key(&g), canonical_key(&ng));
        }
    }

    /// Neighbor-list view of a graph, for rebuilding modified copies.
    fn neighbor_lists(g: &PlabicGraph) -> (Vec<Option<Color>>, Vec<Vec<usize>>, Vec<usize>) {
        let colors = (0..g.num_vertices()).map(|v| g.color(v)).collect();
        let rot = (0..g.num_vertices())
            .map(|v| g.rotation(v).iter().map(|&d| g.target(d)).collect())
            .collect();
        let boundary = (1..=g.n()).map(|i| g.boundary_vertex(i)).collect();
        (colors, rot, boundary)
    }

    #[test]
    fn normalize_undoes_insertion_and_splitting() {
        let g = pentagon_palm_graph();
        let (mut colors, mut rot, boundary) = neighbor_lists(&g);

        // insert a degree-2 black vertex in the middle of an internal edge
        // (the inverse of the removal move)
        let w = (0..g.num_vertices())
            .find(|&v| g.color(v) == Some(Color::White) && g.degree(v) == 4)
            .expect("pentagon palm has a 4-valent white vertex");
        let nbr = *rot[w]
            .iter()
            .find(|&&x| g.color(x) == Some(Color::Black))
            .unwrap();
        let mid = colors.len();
        colors.push(Some(Color::Black));
        rot.push(vec![w, nbr]);
        let wp = rot[w].iter().position(|&x| x == nbr).unwrap();
        rot[w][wp] = mid;
        let np = rot[nbr].iter().position(|&x| x == w).unwrap();
        rot[nbr][np] = mid;

        // split the 4-valent white vertex into two adjacent whites
        // (the inverse of the merge move)
        let half = colors.len();
        colors.push(Some(Color::White));
        let moved: Vec<usize> = rot[w].drain(2..).collect();
        rot[w].push(half);
        let mut half_rot = moved.clone();
        half_rot.push(w);
        for &m in &moved {
            let p = rot[m].iter().position(|&x| x == w).unwrap();
            rot[m][p] = half;
        }
        rot.push(half_rot);

        let modified = PlabicGraph::from_simple(colors, rot, boundary).unwrap();
        assert_ne!(canonical_key(&modified), canonical_key(&g));
        let back = normalize(&modified).unwrap();
        assert_eq!(canonical_key(&back), canonical_key(&g));
    }

    #[test]
    fn canonical_key_invariance() {
        let g = pentagon_palm_graph();
        assert_eq!(canonical_key(&g), canonical_key(&g));
        let hex = canonical_key_hex(&g);
        assert_eq!(hex.len(), 2 * canonical_key(&g).len());
        assert!(hex.chars().all(|c| c.is_ascii_hexdigit() && !c.is_ascii_uppercase()));
        // relabelling internal ids: rebuild with permuted internal vertices
        let perm: Vec<usize> = vec![0, 1, 2, 3, 4, 10, 6, 5, 8, 9, 7];
        let mut colors = vec![None; g.num_vertices()];
        let mut rot_nbrs = vec![Vec::new(); g.num_vertices()];
        for v in 0..g.num_vertices() {
            colors[perm[v]] = g.color(v);
            rot_nbrs[perm[v]] = g.rotation(v).iter().map(|&d| perm[g.target(d)]).collect();
        }
        let boundary = (1..=5).map(|i| perm[g.boundary_vertex(i)]).collect();
        let h = PlabicGraph::from_simple(colors, rot_nbrs, boundary).unwrap();
        assert_eq!(canonical_key(&g), canonical_key(&h));
        // a different triangulation gives a different key
        let other = kw_graph(&palm_triangulation(5, 3).unwrap()).unwrap();
        assert_ne!(canonical_key(&g), canonical_key(&other));
    }

    #[test]
    fn square_move_involution_on_kw_faces() {
        let g = pentagon_palm_graph();
        let fs = g.faces().unwrap();
        let mut applied = 0;
        for fi in 0..fs.faces.len() {
            if let Some(h) = square_move(&g, fi).unwrap() {
                applied += 1;
                assert_eq!(trip_permutation(&h).unwrap(), trip_permutation(&g).unwrap());
                // exactly one internal label changes
                let before = face_labels(&g).unwrap().internal_label_set();
                let after = face_labels(&h).unwrap().internal_label_set();
                assert_eq!(before.intersection(&after).count(), 1);
                // the move undoes itself at the face carrying the new label
                let hfs = h.faces().unwrap();
                let mut back = None;
                for hfi in 0..hfs.faces.len() {
                    if let Some(b) = square_move(&h, hfi).unwrap() {
                        if canonical_key(&b) == canonical_key(&g) {
                            back = Some(b);
                        }
                    }
                }
                assert!(back.is_some(), "square move not undone");
            }
        }
        assert_eq!(applied, 2); // both internal faces are mutable quads
    }

    #[test]
    fn move_class_counts_for_small_grassmannians() {
        // Gr(2,4): two graphs, Gr(2,5): five
        for (n, expect) in [(4, 2), (5, 5), (6, 14)] {
            let t = palm_triangulation(n, 2).unwrap();
            let class = enumerate_move_class(&kw_graph(&t).unwrap(), 512).unwrap();
            assert_eq!(class.len(), expect, "n={n}");
        }
    }

    #[test]
    fn square_moves_match_diagonal_flips() {
        for n in 4..=6 {
            for t in enumerate_triangulations(n).unwrap() {
                let g = kw_graph(&t).unwrap();
                let fs = g.faces().unwrap();
                let mut from_moves = BTreeSet::new();
                for fi in 0..fs.faces.len() {
                    if let Some(h) = square_move(&g, fi).unwrap() {
                        from_moves.insert(face_labels(&h).unwrap().internal_label_set());
                    }
                }
                let mut from_flips = BTreeSet::new();
                for d in t.diagonals() {
                    let flipped = t.flip(d).unwrap();
                    from_flips
                        .insert(face_labels(&kw_graph(&flipped).unwrap()).unwrap().internal_label_set());
                }
                assert_eq!(from_moves, from_flips, "n={n} t={t:?}");
            }
        }
    }

    #[test]
    fn plabic_json_shape() {
        let g = pentagon_palm_graph();
        let v = g.to_json();
        assert_eq!(v["n"], 5);
        assert_eq!(v["vertices"].as_array().unwrap().len(), g.num_vertices());
        assert_eq!(v["boundary"].as_array().unwrap().len(), 5);
    }

    #[test]
    fn star_graph_faces() {
        // one internal vertex joined to all n boundary vertices: n disk
        // faces, none internal
        let n = 5;
        let mut colors = vec![Some(Color::White)];
        colors.extend(std::iter::repeat_n(None, n));
        let mut rot = vec![(1..=n).collect::<Vec<_>>()];
        for _ in 1..=n {
            rot.push(vec![0]);
        }
        let g = PlabicGraph::from_simple(colors, rot, (1..=n).collect()).unwrap();
        let fs = g.faces().unwrap();
        assert_eq!(fs.disk_faces().count(), n);
        assert!(fs.faces.iter().all(|f| !f.internal || f.darts.is_empty()));
    }
}

//! Perfect orientations and the flow model: J-flows, path and flow degrees,
//! plabic degrees and weight-vector extraction.

use crate::error::{Error, Result};
use crate::plabic::{self, Color, FaceStructure, PlabicGraph};
use crate::plucker::{SubsetOrder, WeightVector};
use std::collections::BTreeSet;

/// An orientation where every internal white vertex has exactly one incoming
/// edge and every internal black vertex exactly one outgoing edge. The
/// forward dart of edge `e` is `forward[e]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PerfectOrientation {
    pub forward: Vec<usize>,
    pub source_set: BTreeSet<usize>,
}

impl PerfectOrientation {
    /// Darts leaving `v` in the orientation.
    pub fn out_darts<'a>(&'a self, g: &'a PlabicGraph, v: usize) -> impl Iterator<Item = usize> + 'a {
        g.rotation(v)
            .iter()
            .copied()
            .filter(move |&d| self.forward[d / 2] == d)
    }
}

fn source_set(g: &PlabicGraph, forward: &[usize]) -> BTreeSet<usize> {
    (1..=g.n())
        .filter(|&i| {
            let ray = g.ray_dart(i);
            forward[ray / 2] == ray
        })
        .collect()
}

/// Whether the orientation has no directed cycle through internal vertices.
/// Orientations with cycles satisfy the local in/out constraints but do not
/// carry the path-flow model: their degrees are not gauge-equivalent to the
/// acyclic ones.
pub fn is_acyclic(g: &PlabicGraph, o: &PerfectOrientation) -> bool {
    let nv = g.num_vertices();
    let mut state = vec![0u8; nv]; // 0 unseen, 1 on stack, 2 done
    fn visit(g: &PlabicGraph, o: &PerfectOrientation, v: usize, state: &mut [u8]) -> bool {
        state[v] = 1;
        for d in o.out_darts(g, v) {
            let w = g.target(d);
            if g.is_boundary(w) {
                continue;
            }
            if state[w] == 1 || (state[w] == 0 && !visit(g, o, w, state)) {
                return false;
            }
        }
        state[v] = 2;
        true
    }
    (0..nv).all(|v| g.is_boundary(v) || state[v] != 0 || visit(g, o, v, &mut state))
}

/// Exhaustive backtracking over edge directions; deterministic order.
pub fn all_perfect_orientations(g: &PlabicGraph) -> Result<Vec<PerfectOrientation>> {
    let ne = g.num_edges();
    if ne > 64 {
        return Err(Error::Resource(format!("{ne} edges exceeds the orientation bound")));
    }
    let nv = g.num_vertices();
    let mut incoming = vec![0usize; nv];
    let mut outgoing = vec![0usize; nv];
    let mut undecided: Vec<usize> = (0..nv).map(|v| g.degree(v)).collect();
    let mut forward = vec![usize::MAX; ne];
    let mut found = Vec::new();

    fn vertex_ok(g: &PlabicGraph, v: usize, incoming: &[usize], outgoing: &[usize], undecided: &[usize]) -> bool {
        match g.color(v) {
            None => true,
            Some(Color::White) => incoming[v] <= 1 && incoming[v] + undecided[v] >= 1,
            Some(Color::Black) => outgoing[v] <= 1 && outgoing[v] + undecided[v] >= 1,
        }
    }

    fn recurse(
        g: &PlabicGraph,
        e: usize,
        forward: &mut Vec<usize>,
        incoming: &mut Vec<usize>,
        outgoing: &mut Vec<usize>,
        undecided: &mut Vec<usize>,
        found: &mut Vec<PerfectOrientation>,
    ) {
        if e == forward.len() {
            found.push(PerfectOrientation {
                forward: forward.clone(),
                source_set: source_set(g, forward),
            });
            return;
        }
        for d in [2 * e, 2 * e + 1] {
            let (u, v) = (g.origin(d), g.target(d));
            forward[e] = d;
            outgoing[u] += 1;
            incoming[v] += 1;
            undecided[u] -= 1;
            undecided[v] -= 1;
            if vertex_ok(g, u, incoming, outgoing, undecided)
                && vertex_ok(g, v, incoming, outgoing, undecided)
            {
                recurse(g, e + 1, forward, incoming, outgoing, undecided, found);
            }
            outgoing[u] -= 1;
            incoming[v] -= 1;
            undecided[u] += 1;
            undecided[v] += 1;
        }
        forward[e] = usize::MAX;
    }

    recurse(g, 0, &mut forward, &mut incoming, &mut outgoing, &mut undecided, &mut found);
    Ok(found)
}

/// A perfect orientation, preferring (in order) an acyclic one with source
/// set `preferred`, any acyclic one, then anything.
pub fn find_perfect_orientation(
    g: &PlabicGraph,
    preferred: &BTreeSet<usize>,
) -> Result<PerfectOrientation> {
    let all = all_perfect_orientations(g)?;
    if all.is_empty() {
        return Err(Error::Structural("no perfect orientation exists".into()));
    }
    let best = all
        .iter()
        .find(|o| &o.source_set == preferred && is_acyclic(g, o))
        .or_else(|| all.iter().find(|o| is_acyclic(g, o)))
        .unwrap_or(&all[0]);
    Ok(best.clone())
}

/// Which side of a directed path the internal faces are counted on. Each
/// path from boundary to boundary splits the disk in two; the worked n-gon
/// examples count the left side, while the bundled Gr(3,6) reference data
/// was produced with the mirror reading.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FlowSide {
    Left,
    Right,
}

/// A J-flow: vertex-disjoint self-avoiding directed paths from the unused
/// sources to the sinks, with its degree (total internal faces weakly on
/// the chosen side of the paths).
#[derive(Clone, Debug)]
pub struct Flow {
    pub paths: Vec<Vec<usize>>,
    pub degree: usize,
}

fn path_degree(g: &PlabicGraph, fs: &FaceStructure, path: &[usize], side: FlowSide) -> usize {
    let left = plabic::left_region(g, fs, path)
        .into_iter()
        .filter(|&f| fs.faces[f].internal)
        .count();
    match side {
        FlowSide::Left => left,
        // the two path sides partition the disk faces
        FlowSide::Right => fs.faces.iter().filter(|f| f.internal).count() - left,
    }
}

/// All J-flows of the orientation, in a deterministic order, with degrees
/// counting internal faces left of the paths.
pub fn j_flows(g: &PlabicGraph, o: &PerfectOrientation, j: &BTreeSet<usize>) -> Result<Vec<Flow>> {
    j_flows_with_side(g, o, j, FlowSide::Left)
}

/// All J-flows with the side of the face count made explicit.
pub fn j_flows_with_side(
    g: &PlabicGraph,
    o: &PerfectOrientation,
    j: &BTreeSet<usize>,
    side: FlowSide,
) -> Result<Vec<Flow>> {
    for &x in j {
        if x < 1 || x > g.n() {
            return Err(Error::InvalidInput(format!("boundary index {x} out of range")));
        }
    }
    if j.len() != o.source_set.len() {
        return Err(Error::InvalidInput(format!(
            "|J| = {} but the source set has size {}",
            j.len(),
            o.source_set.len()
        )));
    }
    let sources: Vec<usize> = o.source_set.difference(j).copied().collect();
    let sinks: BTreeSet<usize> = j.difference(&o.source_set).copied().collect();
    if sources.is_empty() {
        return Ok(vec![Flow { paths: Vec::new(), degree: 0 }]);
    }
    let fs = g.faces()?;
    let mut used = vec![false; g.num_vertices()];
    let mut flows = Vec::new();
    let mut current: Vec<Vec<usize>> = Vec::new();

    #[allow(clippy::too_many_arguments)]
    fn extend_path(
        g: &PlabicGraph,
        o: &PerfectOrientation,
        sinks: &BTreeSet<usize>,
        sinks_taken: &mut BTreeSet<usize>,
        used: &mut Vec<bool>,
        path: &mut Vec<usize>,
        sources: &[usize],
        src_idx: usize,
        current: &mut Vec<Vec<usize>>,
        fs: &FaceStructure,
        side: FlowSide,
        flows: &mut Vec<Flow>,
    ) {
        let v = g.target(*path.last().unwrap());
        if g.is_boundary(v) {
            let label = g.boundary_label(v).unwrap();
            if sinks.contains(&label) && !sinks_taken.contains(&label) {
                sinks_taken.insert(label);
                used[v] = true;
                current.push(path.clone());
                place_source(g, o, sinks, sinks_taken, used, sources, src_idx + 1, current, fs, side, flows);
                current.pop();
                used[v] = false;
                sinks_taken.remove(&label);
            }
            return;
        }
        if used[v] {
            return;
        }
        used[v] = true;
        for d in o.out_darts(g, v) {
            path.push(d);
            extend_path(g, o, sinks, sinks_taken, used, path, sources, src_idx, current, fs, side, flows);
            path.pop();
        }
        used[v] = false;
    }

    #[allow(clippy::too_many_arguments)]
    fn place_source(
        g: &PlabicGraph,
        o: &PerfectOrientation,
        sinks: &BTreeSet<usize>,
        sinks_taken: &mut BTreeSet<usize>,
        used: &mut Vec<bool>,
        sources: &[usize],
        src_idx: usize,
        current: &mut Vec<Vec<usize>>,
        fs: &FaceStructure,
        side: FlowSide,
        flows: &mut Vec<Flow>,
    ) {
        if src_idx == sources.len() {
            let degree = current.iter().map(|p| path_degree(g, fs, p, side)).sum();
            flows.push(Flow { paths: current.clone(), degree });
            return;
        }
        let s = sources[src_idx];
        let sv = g.boundary_vertex(s);
        let ray = g.ray_dart(s);
        debug_assert_eq!(o.forward[ray / 2], ray, "source ray must leave the boundary");
        used[sv] = true;
        let mut path = vec![ray];
        extend_path(g, o, sinks, sinks_taken, used, &mut path, sources, src_idx, current, fs, side, flows);
        used[sv] = false;
    }

    let mut sinks_taken = BTreeSet::new();
    place_source(g, o, &sinks, &mut sinks_taken, &mut used, &sources, 0, &mut current, &fs, side, &mut flows);
    if flows.is_empty() {
        return Err(Error::NoFlow(j.iter().copied().collect()));
    }
    Ok(flows)
}

/// The minimum flow degree over all J-flows, with one minimizing flow and
/// the number of flows attaining the minimum.
pub fn plabic_degree(
    g: &PlabicGraph,
    o: &PerfectOrientation,
    j: &BTreeSet<usize>,
) -> Result<(usize, Flow, usize)> {
    let flows = j_flows(g, o, j)?;
    let min = flows.iter().map(|f| f.degree).min().expect("nonempty");
    let count = flows.iter().filter(|f| f.degree == min).count();
    let argmin = flows.into_iter().find(|f| f.degree == min).unwrap();
    Ok((min, argmin, count))
}

/// The vector of plabic degrees over the subsets of `order`, computed with
/// an acyclic perfect orientation preferring source set {1, ..., k}.
pub fn plabic_weight_vector(g: &PlabicGraph, order: &SubsetOrder) -> Result<WeightVector> {
    plabic_weight_vector_with_side(g, order, FlowSide::Left)
}

/// As [`plabic_weight_vector`] with the face-count side made explicit.
pub fn plabic_weight_vector_with_side(
    g: &PlabicGraph,
    order: &SubsetOrder,
    side: FlowSide,
) -> Result<WeightVector> {
    if order.n != g.n() {
        return Err(Error::InvalidInput(format!(
            "order is over n={} but the graph has {} boundary vertices",
            order.n,
            g.n()
        )));
    }
    let preferred: BTreeSet<usize> = (1..=order.k).collect();
    let o = find_perfect_orientation(g, &preferred)?;
    if !is_acyclic(g, &o) {
        return Err(Error::Structural("no acyclic perfect orientation".into()));
    }
    if o.source_set.len() != order.k {
        return Err(Error::Structural(format!(
            "source set size {} does not match subset size {}",
            o.source_set.len(),
            order.k
        )));
    }
    let entries = order
        .subsets()
        .iter()
        .map(|s| {
            let j: BTreeSet<usize> = s.iter().copied().collect();
            let flows = j_flows_with_side(g, &o, &j, side)?;
            Ok(flows.iter().map(|f| f.degree).min().expect("nonempty") as i64)
        })
        .collect::<Result<Vec<i64>>>()?;
    WeightVector::new(order.clone(), entries)
}

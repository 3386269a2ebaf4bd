//! Labelled trivalent trees attached to triangulations: tree degrees, the
//! four-point condition, inner-edge region decompositions and tree mutation.

use crate::error::{Error, Result};
use crate::plucker::{SubsetOrder, WeightVector};
use crate::polygon::Triangulation;
use serde_json::json;
use std::collections::{BTreeMap, BTreeSet, VecDeque};

/// A rooted trivalent tree on `n` leaves. Vertices `0..n` are the leaves
/// (leaf label = index + 1, leaf 1 is the root); the remaining vertices are
/// internal. The planar structure is implicit: each internal subtree away
/// from the root spans a contiguous run of leaf labels, and the right child
/// is the one spanning the smaller labels.
#[derive(Clone, Debug)]
pub struct LabelledTree {
    n: usize,
    adj: Vec<Vec<usize>>,
}

impl LabelledTree {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_leaf(&self, v: usize) -> bool {
        v < self.n
    }

    pub fn num_internal(&self) -> usize {
        self.adj.len() - self.n
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    /// Internal edges as ordered pairs `(a, b)` with `a` closer to the root.
    pub fn internal_edges(&self) -> Vec<(usize, usize)> {
        let parent = self.parents();
        let mut out: Vec<(usize, usize)> = (self.n..self.adj.len())
            .filter_map(|b| {
                let a = parent[b];
                (!self.is_leaf(a)).then_some((a, b))
            })
            .collect();
        out.sort();
        out
    }

    fn parents(&self) -> Vec<usize> {
        let mut parent = vec![usize::MAX; self.adj.len()];
        let mut queue = VecDeque::from([0usize]);
        let mut seen = vec![false; self.adj.len()];
        seen[0] = true;
        while let Some(v) = queue.pop_front() {
            for &w in &self.adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    parent[w] = v;
                    queue.push_back(w);
                }
            }
        }
        parent
    }

    /// Leaf labels in the subtree at `v` away from `parent`.
    fn leaves_below(&self, v: usize, parent: usize) -> BTreeSet<usize> {
        let mut out = BTreeSet::new();
        let mut stack = vec![(v, parent)];
        while let Some((x, p)) = stack.pop() {
            if self.is_leaf(x) {
                out.insert(x + 1);
            }
            for &w in &self.adj[x] {
                if w != p {
                    stack.push((w, x));
                }
            }
        }
        out
    }

    /// `(right child, left child)` of internal vertex `v` with the given
    /// parent: the right child is the subtree with smaller leaf labels.
    fn children_lr(&self, v: usize, parent: usize) -> (usize, usize) {
        let kids: Vec<usize> = self.adj[v].iter().copied().filter(|&w| w != parent).collect();
        debug_assert_eq!(kids.len(), 2);
        let m0 = self.leaves_below(kids[0], v).into_iter().next().unwrap();
        let m1 = self.leaves_below(kids[1], v).into_iter().next().unwrap();
        if m0 < m1 {
            (kids[0], kids[1])
        } else {
            (kids[1], kids[0])
        }
    }

    /// Number of internal edges on the path between leaves `i` and `j`.
    pub fn tree_degree(&self, i: usize, j: usize) -> Result<usize> {
        if i == j || i < 1 || j < 1 || i > self.n || j > self.n {
            return Err(Error::InvalidInput(format!("bad leaf pair ({i},{j})")));
        }
        // BFS path from leaf i to leaf j
        let (src, dst) = (i - 1, j - 1);
        let mut prev = vec![usize::MAX; self.adj.len()];
        let mut queue = VecDeque::from([src]);
        prev[src] = src;
        while let Some(v) = queue.pop_front() {
            for &w in &self.adj[v] {
                if prev[w] == usize::MAX {
                    prev[w] = v;
                    queue.push_back(w);
                }
            }
        }
        let mut count = 0;
        let mut v = dst;
        while v != src {
            let p = prev[v];
            if !self.is_leaf(v) && !self.is_leaf(p) {
                count += 1;
            }
            v = p;
        }
        Ok(count)
    }

    /// Entry at `{i,j}` is the tree degree, lexicographic order on pairs.
    pub fn weight_vector(&self) -> Result<WeightVector> {
        let order = SubsetOrder::lex(2, self.n);
        let entries = order
            .subsets()
            .iter()
            .map(|s| Ok(self.tree_degree(s[0], s[1])? as i64))
            .collect::<Result<Vec<i64>>>()?;
        WeightVector::new(order, entries)
    }

    /// Label-respecting structural equality (internal ids do not matter).
    pub fn signature(&self) -> Vec<u8> {
        fn encode(t: &LabelledTree, v: usize, parent: usize, out: &mut Vec<u8>) {
            if t.is_leaf(v) {
                out.push(b'L');
                out.push(v as u8 + 1);
                return;
            }
            let (r, l) = t.children_lr(v, parent);
            out.push(b'(');
            encode(t, r, v, out);
            encode(t, l, v, out);
            out.push(b')');
        }
        let mut out = Vec::new();
        let child = self.adj[0][0];
        if self.is_leaf(child) {
            out.push(b'L');
            out.push(child as u8 + 1);
        } else {
            encode(self, child, 0, &mut out);
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        let internal: Vec<usize> = (self.n..self.adj.len()).collect();
        let mut edges: Vec<[usize; 2]> = self
            .internal_edges()
            .iter()
            .map(|&(a, b)| [a, b])
            .collect();
        edges.sort();
        let leaf_attach: BTreeMap<String, usize> = (0..self.n)
            .map(|leaf| ((leaf + 1).to_string(), self.adj[leaf][0]))
            .collect();
        json!({
            "n": self.n,
            "internal": internal,
            "edges": edges,
            "leaf_attach": leaf_attach,
        })
    }
}

/// The labelled tree of a triangulation: one internal vertex per triangle
/// (ids in sorted-triple order), internal edges between adjacent triangles,
/// and leaf `i+1` attached to the triangle containing the polygon side
/// `(i, i+1)`.
pub fn tree_from_triangulation(t: &Triangulation) -> LabelledTree {
    let n = t.n();
    let triangles = t.triangles();
    let mut adj = vec![Vec::new(); n + triangles.len()];
    let add = |a: usize, b: usize, adj: &mut Vec<Vec<usize>>| {
        adj[a].push(b);
        adj[b].push(a);
    };
    for (ti, tri) in triangles.iter().enumerate() {
        for (tj, trj) in triangles.iter().enumerate().skip(ti + 1) {
            let shared = tri.iter().filter(|v| trj.contains(v)).count();
            if shared == 2 {
                add(n + ti, n + tj, &mut adj);
            }
        }
    }
    for leaf in 1..=n {
        let side = [if leaf == 1 { n } else { leaf - 1 }, leaf];
        let (lo, hi) = (side[0].min(side[1]), side[0].max(side[1]));
        let ti = triangles
            .iter()
            .position(|tri| tri.contains(&lo) && tri.contains(&hi))
            .expect("side lies in one triangle");
        add(leaf - 1, n + ti, &mut adj);
    }
    LabelledTree { n, adj }
}

/// The four leaf regions of an inner edge `a -> b`, in the decomposition
/// used by tree mutation. `mirrored` records that `b` was the left child of
/// `a` and the symmetric convention applied.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeRegions {
    pub a_set: BTreeSet<usize>,
    pub d_set: BTreeSet<usize>,
    pub e_set: BTreeSet<usize>,
    pub c_set: BTreeSet<usize>,
    pub mirrored: bool,
}

impl EdgeRegions {
    /// True when the quadruple has one element in each region.
    pub fn meets_all(&self, quad: &[usize; 4]) -> bool {
        [&self.a_set, &self.d_set, &self.e_set, &self.c_set]
            .iter()
            .all(|set| quad.iter().any(|x| set.contains(x)))
    }
}

impl LabelledTree {
    /// Region decomposition at the inner edge `a -> b` (`a` closer to the
    /// root). In the plain case `b` is the right child of `a`, `c` the left
    /// child of `a`, `d` the right child of `b` and `e` the left child; the
    /// regions are the leaves outside `a`'s subtree and the leaf sets below
    /// `d`, `e`, `c`. When `b` is the left child everything mirrors.
    pub fn inner_edge_regions(&self, edge: (usize, usize)) -> Result<EdgeRegions> {
        let (a, b) = edge;
        if self.is_leaf(a) || self.is_leaf(b) || !self.adj[a].contains(&b) {
            return Err(Error::InvalidInput(format!("({a},{b}) is not an inner edge")));
        }
        let parent = self.parents();
        if parent[b] != a {
            return Err(Error::InvalidInput(format!(
                "({a},{b}) is not directed away from the root"
            )));
        }
        let (right_a, left_a) = self.children_lr(a, parent[a]);
        let mirrored = left_a == b;
        let (right_b, left_b) = self.children_lr(b, a);
        // x: the child of a other than b; y: the child of b on the same side
        // as b itself
        let (x, y) = if mirrored {
            (right_a, left_b)
        } else {
            (left_a, right_b)
        };
        let e_child = if mirrored { right_b } else { left_b };
        let below_a = self.leaves_below(a, parent[a]);
        let a_set: BTreeSet<usize> = (1..=self.n).filter(|l| !below_a.contains(l)).collect();
        Ok(EdgeRegions {
            a_set,
            d_set: self.leaves_below(y, b),
            e_set: self.leaves_below(e_child, b),
            c_set: self.leaves_below(x, a),
            mirrored,
        })
    }

    /// Mutation at the inner edge `a -> b`: the outer child of `b` moves to
    /// `a` and the outer child of `a` moves to `b`, keeping all labels.
    pub fn mutate(&self, edge: (usize, usize)) -> Result<LabelledTree> {
        let (a, b) = edge;
        if self.is_leaf(a) || self.is_leaf(b) || !self.adj[a].contains(&b) {
            return Err(Error::InvalidInput(format!("({a},{b}) is not an inner edge")));
        }
        let parent = self.parents();
        if parent[b] != a {
            return Err(Error::InvalidInput(format!(
                "({a},{b}) is not directed away from the root"
            )));
        }
        let (right_a, left_a) = self.children_lr(a, parent[a]);
        let mirrored = left_a == b;
        let (right_b, left_b) = self.children_lr(b, a);
        let (x, y) = if mirrored {
            (right_a, left_b)
        } else {
            (left_a, right_b)
        };
        let mut adj = self.adj.clone();
        let swap = |adj: &mut Vec<Vec<usize>>, from: usize, child: usize, to: usize| {
            let p = adj[from].iter().position(|&w| w == child).unwrap();
            adj[from].remove(p);
            adj[to].push(child);
            let q = adj[child].iter().position(|&w| w == from).unwrap();
            adj[child][q] = to;
        };
        swap(&mut adj, a, x, b);
        swap(&mut adj, b, y, a);
        Ok(LabelledTree { n: self.n, adj })
    }
}

/// Outcome of flipping a diagonal, relation by relation.
#[derive(Clone, Debug)]
pub struct MutationCheck {
    pub flipped: Triangulation,
    /// Quadruples whose degenerate relation changed.
    pub changed: Vec<[usize; 4]>,
    /// First quadruple violating the prediction, if any.
    pub violation: Option<serde_json::Value>,
}

/// The inner tree edge corresponding to a diagonal: the edge between the
/// two triangles adjacent to it, directed away from the root.
pub fn tree_edge_of_diagonal(t: &Triangulation, d: &crate::polygon::Diagonal) -> (usize, usize) {
    let (x, y) = d.endpoints();
    let triangles = t.triangles();
    let adjacent: Vec<usize> = triangles
        .iter()
        .enumerate()
        .filter(|(_, tri)| tri.contains(&x) && tri.contains(&y))
        .map(|(i, _)| t.n() + i)
        .collect();
    debug_assert_eq!(adjacent.len(), 2);
    let tree = tree_from_triangulation(t);
    let (p, q) = (adjacent[0], adjacent[1]);
    if tree.internal_edges().contains(&(p, q)) {
        (p, q)
    } else {
        (q, p)
    }
}

/// The quadruple pairing that groups `a` with `b` inside the sorted
/// quadruple.
fn pairing_grouping(quad: &[usize; 4], a: usize, b: usize) -> crate::plucker::Pairing {
    use crate::plucker::Pairing;
    let pos = |x: usize| quad.iter().position(|&q| q == x).expect("member of the quadruple");
    match (pos(a).min(pos(b)), pos(a).max(pos(b))) {
        (0, 1) | (2, 3) => Pairing::IjKl,
        (0, 2) | (1, 3) => Pairing::IkJl,
        _ => Pairing::IlJk,
    }
}

/// Flips the diagonal and checks the mutation prediction: a degenerate
/// relation changes exactly when its quadruple meets all four regions of
/// the mutated tree edge, and a changed relation follows the degree table:
/// before the flip the strictly smallest pair-sum groups the A-region
/// element with the C-region element, afterwards with the D-region one.
pub fn verify_mutation(t: &Triangulation, d: &crate::polygon::Diagonal) -> Result<MutationCheck> {
    let flipped = t.flip(d)?;
    let tree = tree_from_triangulation(t);
    let edge = tree_edge_of_diagonal(t, d);
    let regions = tree.inner_edge_regions(edge)?;
    let before = crate::plucker::gr2_initial_generators(&tree.weight_vector()?.negated())?.1;
    let after = crate::plucker::gr2_initial_generators(
        &tree_from_triangulation(&flipped).weight_vector()?.negated(),
    )?
    .1;
    let mut changed = Vec::new();
    let mut violation = None;
    for (x, y) in before.iter().zip(&after) {
        debug_assert_eq!(x.quad, y.quad);
        let is_changed = x.dropped != y.dropped;
        if is_changed {
            changed.push(x.quad);
        }
        let meets = regions.meets_all(&x.quad);
        if is_changed != meets {
            violation = Some(serde_json::json!({
                "quadruple": x.quad,
                "changed": is_changed,
                "meets_all_regions": meets,
            }));
            break;
        }
        if is_changed {
            let role = |set: &BTreeSet<usize>| {
                *set.iter().find(|v| x.quad.contains(v)).expect("meets the region")
            };
            let (ra, rd, rc) = (
                role(&regions.a_set),
                role(&regions.d_set),
                role(&regions.c_set),
            );
            let want_before = pairing_grouping(&x.quad, ra, rc);
            let want_after = pairing_grouping(&x.quad, ra, rd);
            if x.dropped != Some(want_before) || y.dropped != Some(want_after) {
                violation = Some(serde_json::json!({
                    "quadruple": x.quad,
                    "dropped_before": format!("{:?}", x.dropped),
                    "dropped_after": format!("{:?}", y.dropped),
                }));
                break;
            }
        }
    }
    Ok(MutationCheck { flipped, changed, violation })
}

/// Four-point check on a weight vector over 2-subsets. With `sign = -1` the
/// minimum of the three pair-sums of every quadruple must be attained at
/// least twice; with `sign = +1` the maximum must be. Returns the first
/// violating quadruple in lexicographic order, if any.
pub fn four_point_check(w: &WeightVector, sign: i64) -> Result<std::result::Result<(), [usize; 4]>> {
    if w.order.k != 2 {
        return Err(Error::InvalidInput("four-point check needs k = 2".into()));
    }
    if sign != 1 && sign != -1 {
        return Err(Error::InvalidInput("sign must be +1 or -1".into()));
    }
    let n = w.order.n;
    for i in 1..=n {
        for j in i + 1..=n {
            for k in j + 1..=n {
                for l in k + 1..=n {
                    let sums = [
                        w.get(&[i, j]) + w.get(&[k, l]),
                        w.get(&[i, k]) + w.get(&[j, l]),
                        w.get(&[i, l]) + w.get(&[j, k]),
                    ];
                    let extreme = if sign < 0 {
                        *sums.iter().min().unwrap()
                    } else {
                        *sums.iter().max().unwrap()
                    };
                    if sums.iter().filter(|&&s| s == extreme).count() < 2 {
                        return Ok(Err([i, j, k, l]));
                    }
                }
            }
        }
    }
    Ok(Ok(()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polygon::{enumerate_triangulations, palm_triangulation, Diagonal};

    fn tri(n: usize, ds: &[(usize, usize)]) -> Triangulation {
        Triangulation::new(n, ds.iter().copied()).unwrap()
    }

    #[test]
    fn square_tree_structure() {
        let t = tree_from_triangulation(&tri(4, &[(1, 3)]));
        assert_eq!(t.num_internal(), 2);
        assert_eq!(t.internal_edges().len(), 1);
        // leaves 2,3 share a parent; leaves 4,1 share the other
        assert_eq!(t.adj[1][0], t.adj[2][0]);
        assert_eq!(t.adj[3][0], t.adj[0][0]);
        assert_ne!(t.adj[1][0], t.adj[0][0]);
    }

    #[test]
    fn pentagon_palm_tree() {
        let t = tree_from_triangulation(&palm_triangulation(5, 2).unwrap());
        assert_eq!(t.num_internal(), 3);
        // leaves 3 and 4 share a parent
        assert_eq!(t.adj[2][0], t.adj[3][0]);
        assert_eq!(t.tree_degree(3, 4).unwrap(), 0);
        assert_eq!(t.tree_degree(2, 3).unwrap(), 2);
    }

    #[test]
    fn tree_degree_examples() {
        let t = tree_from_triangulation(&tri(4, &[(1, 3)]));
        assert_eq!(t.tree_degree(2, 4).unwrap(), 1);
        for i in 1..=4 {
            for j in 1..=4 {
                if i != j {
                    assert_eq!(
                        t.tree_degree(i, j).unwrap(),
                        t.tree_degree(j, i).unwrap()
                    );
                }
            }
        }
        assert!(t.tree_degree(2, 2).is_err());
    }

    #[test]
    fn weight_vector_example() {
        let t = tree_from_triangulation(&tri(4, &[(1, 3)]));
        assert_eq!(t.weight_vector().unwrap().entries, vec![1, 1, 0, 0, 1, 1]);
        // each 4-leaf tree has one zero pair and its complementary pair zero
        let t2 = tree_from_triangulation(&tri(4, &[(2, 4)]));
        assert_eq!(t2.weight_vector().unwrap().entries, vec![0, 1, 1, 1, 1, 0]);
    }

    #[test]
    fn tree_degrees_match_a_degrees() {
        for n in 4..=7 {
            for tr in enumerate_triangulations(n).unwrap() {
                let tree = tree_from_triangulation(&tr);
                for i in 1..=n {
                    for j in i + 1..=n {
                        assert_eq!(
                            tree.tree_degree(i, j).unwrap(),
                            tr.a_degree(i, j).unwrap(),
                            "n={n} t={tr:?} pair ({i},{j})"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn four_point_examples() {
        let order = SubsetOrder::lex(2, 4);
        let zero = WeightVector::new(order.clone(), vec![0; 6]).unwrap();
        assert!(four_point_check(&zero, -1).unwrap().is_ok());
        let viol = WeightVector::new(order.clone(), vec![2, 1, 0, 0, 1, 2]).unwrap();
        assert_eq!(four_point_check(&viol, -1).unwrap(), Err([1, 2, 3, 4]));
        let ok = WeightVector::new(order, vec![0, 0, 0, 0, 0, 1]).unwrap();
        assert!(four_point_check(&ok, -1).unwrap().is_ok());
        // tree weight vectors always pass on the max side
        for n in 4..=7 {
            for tr in enumerate_triangulations(n).unwrap() {
                let w = tree_from_triangulation(&tr).weight_vector().unwrap();
                assert!(four_point_check(&w, 1).unwrap().is_ok());
                assert!(four_point_check(&w.negated(), -1).unwrap().is_ok());
            }
        }
    }

    #[test]
    fn regions_partition_leaves() {
        let t = tree_from_triangulation(&tri(4, &[(1, 3)]));
        let edges = t.internal_edges();
        let r = t.inner_edge_regions(edges[0]).unwrap();
        for set in [&r.a_set, &r.d_set, &r.e_set, &r.c_set] {
            assert_eq!(set.len(), 1);
        }
        // pentagon palm: edge nearest the root has one region of size 2
        let palm = tree_from_triangulation(&palm_triangulation(5, 2).unwrap());
        let root_child = palm.adj[0][0];
        let edge = *palm
            .internal_edges()
            .iter()
            .find(|&&(a, _)| a == root_child)
            .unwrap();
        let r = palm.inner_edge_regions(edge).unwrap();
        let mut sizes: Vec<usize> = [&r.a_set, &r.d_set, &r.e_set, &r.c_set]
            .iter()
            .map(|s| s.len())
            .collect();
        sizes.sort();
        assert_eq!(sizes, vec![1, 1, 1, 2]);
        // all regions together cover the leaves, disjointly
        for n in 4..=7 {
            for tr in enumerate_triangulations(n).unwrap() {
                let tree = tree_from_triangulation(&tr);
                for e in tree.internal_edges() {
                    let r = tree.inner_edge_regions(e).unwrap();
                    let mut all = BTreeSet::new();
                    let mut total = 0;
                    for set in [&r.a_set, &r.d_set, &r.e_set, &r.c_set] {
                        total += set.len();
                        all.extend(set.iter().copied());
                    }
                    assert_eq!(total, n);
                    assert_eq!(all.len(), n);
                }
            }
        }
    }

    #[test]
    fn mutation_matches_diagonal_flip() {
        let t = tri(4, &[(1, 3)]);
        let tree = tree_from_triangulation(&t);
        let edge = tree.internal_edges()[0];
        let mutated = tree.mutate(edge).unwrap();
        let flipped = tree_from_triangulation(&t.flip(&Diagonal::new(1, 3, 4).unwrap()).unwrap());
        assert_eq!(mutated.signature(), flipped.signature());

        // exhaustively: mutating the edge of a diagonal equals flipping it
        for n in 4..=7 {
            for tr in enumerate_triangulations(n).unwrap() {
                let tree = tree_from_triangulation(&tr);
                let mut mutated_sigs = BTreeSet::new();
                for e in tree.internal_edges() {
                    mutated_sigs.insert(tree.mutate(e).unwrap().signature());
                }
                let mut flipped_sigs = BTreeSet::new();
                for d in tr.diagonals() {
                    flipped_sigs
                        .insert(tree_from_triangulation(&tr.flip(d).unwrap()).signature());
                }
                assert_eq!(mutated_sigs, flipped_sigs, "n={n} t={tr:?}");
            }
        }
    }

    #[test]
    fn mutation_is_an_involution() {
        for tr in enumerate_triangulations(6).unwrap() {
            let tree = tree_from_triangulation(&tr);
            for e in tree.internal_edges() {
                let once = tree.mutate(e).unwrap();
                let twice = once.mutate(e).unwrap();
                assert_eq!(twice.signature(), tree.signature());
            }
        }
    }

    #[test]
    fn mutations_connect_all_trees() {
        // BFS over mutations reaches every tree on n <= 7 leaves
        for n in 4..=7 {
            let all = enumerate_triangulations(n).unwrap();
            let start = tree_from_triangulation(&all[0]);
            let mut seen = BTreeSet::from([start.signature()]);
            let mut queue = VecDeque::from([start]);
            while let Some(t) = queue.pop_front() {
                for e in t.internal_edges() {
                    let m = t.mutate(e).unwrap();
                    if seen.insert(m.signature()) {
                        queue.push_back(m);
                    }
                }
            }
            assert_eq!(seen.len(), all.len(), "n={n}");
        }
    }

    #[test]
    fn tree_json_shape() {
        let t = tree_from_triangulation(&palm_triangulation(5, 2).unwrap());
        let v = t.to_json();
        assert_eq!(v["n"], 5);
        assert_eq!(v["internal"].as_array().unwrap().len(), 3);
        assert_eq!(v["edges"].as_array().unwrap().len(), 2);
        assert_eq!(v["leaf_attach"].as_object().unwrap().len(), 5);
    }
}

//! The Gr(3,6) atlas: enumeration of the 34 reduced plabic graphs with trip
//! permutation (4,5,6,1,2,3), their weight vectors in the reference basis
//! order, and the classification of the resulting initial ideals, checked
//! against the bundled reference table.

use crate::error::{Error, Result};
use crate::flow::{self, FlowSide};
use crate::plabic::{self, PlabicGraph};
use crate::plucker::{self, ReducedBasis, SubsetOrder, WeightVector};
use itertools::Itertools;
use rayon::prelude::*;
use std::collections::BTreeSet;
#[cfg(test)]
use std::collections::HashMap;

/// The reference basis order on 3-subsets of {1..6}. The 18th entry of the
/// printed source list repeats 236; it is read as 256, the unique missing
/// 3-subset (see [`TYPO_NOTICES`]).
pub fn paper36_order() -> SubsetOrder {
    let subsets: Vec<Vec<usize>> = PAPER36_SUBSETS
        .iter()
        .map(|s| s.iter().map(|&x| x as usize).collect())
        .collect();
    SubsetOrder::from_raw(3, 6, "paper36", subsets)
}

const PAPER36_SUBSETS: [[u8; 3]; 20] = [
    [1, 2, 3],
    [1, 2, 4],
    [1, 3, 4],
    [2, 3, 4],
    [1, 2, 5],
    [1, 3, 5],
    [2, 3, 5],
    [1, 4, 5],
    [2, 4, 5],
    [3, 4, 5],
    [1, 2, 6],
    [1, 3, 6],
    [2, 3, 6],
    [1, 4, 6],
    [2, 4, 6],
    [3, 4, 6],
    [1, 5, 6],
    [2, 5, 6], // printed as a second 236 in the source table
    [3, 5, 6],
    [4, 5, 6],
];

/// One row of the bundled reference data: the four internal face labels,
/// the weight vector in [`paper36_order`], the cone-type class name, and an
/// opaque cross-reference id from the pseudotriangulation model.
pub struct ReferenceRow {
    pub internal_labels: [[u8; 3]; 4],
    pub weight: [i64; 20],
    pub class_name: &'static str,
    pub bcl_id: u32,
}

/// Notices about the two typos in the printed source data; reports carry
/// them verbatim instead of silently correcting.
pub const TYPO_NOTICES: [&str; 2] = [
    "basis order: the printed list of 3-subsets repeats 236 at position 18; it is read as 256, the unique missing 3-subset",
    "class list: the printed list of cone types (FFGG, EEEE, EEFF1, EEFF2, EEFG, EEEG, EEFG) repeats EEFG; the realized types are GG, EEFF1, EEFF2, EFFG, EEEG, EEFG",
];

pub const REFERENCE_TABLE: [ReferenceRow; 34] = [
    ReferenceRow { internal_labels: [[1,3,5],[2,3,5],[1,4,5],[1,3,6]], weight: [0,0,1,1,1,1,1,1,1,4,1,1,1,1,1,4,4,4,5,5], class_name: "GG", bcl_id: 49 },
    ReferenceRow { internal_labels: [[1,2,4],[2,4,6],[3,4,6],[2,5,6]], weight: [0,0,0,3,0,0,3,3,4,4,3,3,4,4,4,4,4,4,4,7], class_name: "GG", bcl_id: 23 },
    ReferenceRow { internal_labels: [[1,2,5],[2,3,5],[2,4,5],[2,5,6]], weight: [0,0,1,1,0,1,1,2,2,5,3,3,3,3,3,5,3,3,5,6], class_name: "EEFF1", bcl_id: 17 },
    ReferenceRow { internal_labels: [[2,3,5],[1,3,6],[2,3,6],[3,5,6]], weight: [0,0,0,0,0,0,0,1,1,2,0,0,0,1,1,2,2,2,3,5], class_name: "EEFF1", bcl_id: 11 },
    ReferenceRow { internal_labels: [[1,2,4],[1,2,5],[1,4,5],[2,4,5]], weight: [0,0,2,3,1,2,3,2,3,6,4,4,4,4,4,6,5,5,6,6], class_name: "EEFF1", bcl_id: 15 },
    ReferenceRow { internal_labels: [[1,2,4],[1,2,5],[2,4,5],[2,5,6]], weight: [0,0,1,2,0,1,2,2,3,5,4,4,4,4,4,5,4,4,5,6], class_name: "EEFF1", bcl_id: 27 },
    ReferenceRow { internal_labels: [[2,3,5],[2,3,6],[2,5,6],[3,5,6]], weight: [0,0,0,0,0,0,0,2,2,3,1,1,1,2,2,3,2,2,3,6], class_name: "EEFF1", bcl_id: 29 },
    ReferenceRow { internal_labels: [[1,3,6],[2,3,6],[3,4,6],[3,5,6]], weight: [0,0,0,1,0,0,1,2,2,2,0,0,1,2,2,2,3,3,3,6], class_name: "EEFF1", bcl_id: 12 },
    ReferenceRow { internal_labels: [[2,3,6],[3,4,6],[2,5,6],[3,5,6]], weight: [0,0,0,1,0,0,1,3,3,3,1,1,2,3,3,3,3,3,3,7], class_name: "EEFF1", bcl_id: 28 },
    ReferenceRow { internal_labels: [[1,3,4],[1,3,6],[1,4,6],[3,4,6]], weight: [0,0,0,3,1,1,3,2,3,3,1,1,3,2,3,3,5,5,5,6], class_name: "EEFF1", bcl_id: 9 },
    ReferenceRow { internal_labels: [[1,3,4],[1,4,5],[1,3,6],[1,4,6]], weight: [0,0,1,3,2,2,3,2,3,4,2,2,3,2,3,4,6,6,6,6], class_name: "EEFF1", bcl_id: 8 },
    ReferenceRow { internal_labels: [[1,2,4],[1,3,4],[1,4,5],[1,4,6]], weight: [0,0,1,4,2,2,4,2,4,5,3,3,4,3,4,5,6,6,6,6], class_name: "EEFF1", bcl_id: 32 },
    ReferenceRow { internal_labels: [[1,2,5],[2,3,5],[1,4,5],[2,4,5]], weight: [0,0,2,2,1,2,2,2,2,6,3,3,3,3,3,6,4,4,6,6], class_name: "EEFF1", bcl_id: 14 },
    ReferenceRow { internal_labels: [[1,2,4],[1,3,4],[1,4,6],[3,4,6]], weight: [0,0,0,4,1,1,4,2,4,4,2,2,4,3,4,4,5,5,5,6], class_name: "EEFF1", bcl_id: 31 },
    ReferenceRow { internal_labels: [[1,2,5],[2,3,5],[2,5,6],[3,5,6]], weight: [0,0,0,0,0,0,0,2,2,4,2,2,2,3,3,4,3,3,4,6], class_name: "EEFF2", bcl_id: 30 },
    ReferenceRow { internal_labels: [[1,2,4],[1,3,4],[1,2,5],[1,4,5]], weight: [0,0,1,3,1,1,3,1,3,5,3,3,4,3,4,5,5,5,5,5], class_name: "EEFF2", bcl_id: 33 },
    ReferenceRow { internal_labels: [[1,3,4],[1,3,6],[3,4,6],[3,5,6]], weight: [0,0,0,2,0,0,2,2,3,3,0,0,2,2,3,3,4,4,4,6], class_name: "EEFF2", bcl_id: 10 },
    ReferenceRow { internal_labels: [[1,3,6],[2,3,6],[1,4,6],[3,4,6]], weight: [0,0,0,2,1,1,2,2,2,2,1,1,2,2,2,2,4,4,4,6], class_name: "EEFF2", bcl_id: 13 },
    ReferenceRow { internal_labels: [[1,2,4],[1,4,5],[2,4,5],[1,4,6]], weight: [0,0,2,4,2,3,4,3,4,6,4,4,4,4,4,6,6,6,7,7], class_name: "EEFF2", bcl_id: 16 },
    ReferenceRow { internal_labels: [[2,3,5],[2,4,5],[2,3,6],[2,5,6]], weight: [0,0,1,1,0,1,1,2,2,4,2,2,2,2,2,4,2,2,4,6], class_name: "EEFF2", bcl_id: 18 },
    ReferenceRow { internal_labels: [[1,2,5],[1,3,5],[2,3,5],[1,4,5]], weight: [0,0,1,1,1,1,1,1,1,5,2,2,2,2,2,5,4,4,5,5], class_name: "EFFG", bcl_id: 43 },
    ReferenceRow { internal_labels: [[1,3,5],[2,3,5],[1,3,6],[3,5,6]], weight: [0,0,0,0,0,0,0,1,1,3,0,0,0,1,1,3,3,3,4,5], class_name: "EFFG", bcl_id: 45 },
    ReferenceRow { internal_labels: [[2,3,6],[2,4,6],[3,4,6],[2,5,6]], weight: [0,0,0,2,0,0,2,3,3,3,2,2,3,3,3,3,3,3,3,7], class_name: "EFFG", bcl_id: 26 },
    ReferenceRow { internal_labels: [[1,2,4],[1,4,6],[2,4,6],[3,4,6]], weight: [0,0,0,4,1,1,4,3,4,4,3,3,4,4,4,4,5,5,5,7], class_name: "EFFG", bcl_id: 21 },
    ReferenceRow { internal_labels: [[1,3,4],[1,3,5],[1,4,5],[1,3,6]], weight: [0,0,1,2,1,1,2,1,2,4,1,1,2,1,2,4,5,5,5,5], class_name: "EFFG", bcl_id: 47 },
    ReferenceRow { internal_labels: [[1,2,4],[2,4,5],[2,4,6],[2,5,6]], weight: [0,0,1,3,0,1,3,3,4,5,4,4,4,4,4,5,4,4,5,7], class_name: "EFFG", bcl_id: 24 },
    ReferenceRow { internal_labels: [[2,4,5],[2,3,6],[1,4,6],[2,4,6]], weight: [0,0,1,3,1,2,3,3,3,4,3,3,3,3,3,4,4,4,5,7], class_name: "EEEG", bcl_id: 20 },
    ReferenceRow { internal_labels: [[1,3,4],[1,2,5],[1,3,5],[3,5,6]], weight: [0,0,0,1,0,0,1,1,2,4,1,1,2,2,3,4,4,4,4,5], class_name: "EEEG", bcl_id: 48 },
    ReferenceRow { internal_labels: [[1,2,5],[1,3,5],[2,3,5],[3,5,6]], weight: [0,0,0,0,0,0,0,1,1,4,1,1,1,2,2,4,3,3,4,5], class_name: "EEFG", bcl_id: 42 },
    ReferenceRow { internal_labels: [[1,3,4],[1,2,5],[1,3,5],[1,4,5]], weight: [0,0,1,2,1,1,2,1,2,5,2,2,3,2,3,5,5,5,5,5], class_name: "EEFG", bcl_id: 44 },
    ReferenceRow { internal_labels: [[1,3,4],[1,3,5],[1,3,6],[3,5,6]], weight: [0,0,0,1,0,0,1,1,2,3,0,0,1,1,2,3,4,4,4,5], class_name: "EEFG", bcl_id: 46 },
    ReferenceRow { internal_labels: [[2,4,5],[2,3,6],[2,4,6],[2,5,6]], weight: [0,0,1,2,0,1,2,3,3,4,3,3,3,3,3,4,3,3,4,7], class_name: "EEFG", bcl_id: 25 },
    ReferenceRow { internal_labels: [[2,3,6],[1,4,6],[2,4,6],[3,4,6]], weight: [0,0,0,3,1,1,3,3,3,3,2,2,3,3,3,3,4,4,4,7], class_name: "EEFG", bcl_id: 19 },
    ReferenceRow { internal_labels: [[1,2,4],[2,4,5],[1,4,6],[2,4,6]], weight: [0,0,1,4,1,2,4,3,4,5,4,4,4,4,4,5,5,5,6,7], class_name: "EEFG", bcl_id: 22 },
];

pub type LabelSet = BTreeSet<BTreeSet<usize>>;

/// Weight vector of a Gr(3,6) graph in the reference convention: plabic
/// degrees over [`paper36_order`] with faces counted to the *right* of flow
/// paths, the mirror of the n-gon convention. The two readings are pinned
/// by the worked pentagon example on one side and by the reference weight
/// rows on the other.
pub fn atlas_weight_vector(g: &PlabicGraph) -> Result<WeightVector> {
    flow::plabic_weight_vector_with_side(g, &paper36_order(), FlowSide::Right)
}

/// Number of minimal flows per subset, in the reference convention.
fn minimal_flow_counts(g: &PlabicGraph) -> Result<Vec<i64>> {
    let order = paper36_order();
    let o = flow::find_perfect_orientation(g, &(1..=3).collect())?;
    order
        .subsets()
        .iter()
        .map(|s| {
            let j = s.iter().copied().collect();
            let flows = flow::j_flows_with_side(g, &o, &j, FlowSide::Right)?;
            let min = flows.iter().map(|f| f.degree).min().expect("nonempty");
            Ok(flows.iter().filter(|f| f.degree == min).count() as i64)
        })
        .collect()
}

pub fn reference_label_set(row: &ReferenceRow) -> LabelSet {
    row.internal_labels
        .iter()
        .map(|l| l.iter().map(|&x| x as usize).collect())
        .collect()
}

pub fn reference_row_by_labels(labels: &LabelSet) -> Option<&'static ReferenceRow> {
    REFERENCE_TABLE
        .iter()
        .find(|row| &reference_label_set(row) == labels)
}

/// One enumerated graph with its computed data.
#[derive(Clone, Debug)]
pub struct AtlasRow {
    pub internal_labels: LabelSet,
    pub weight: WeightVector,
    pub class_name: String,
    pub bcl_id: u32,
    pub graph: PlabicGraph,
}

/// A concrete reduced plabic graph with trip permutation (4,5,6,1,2,3),
/// built from a 2x2 honeycomb block with boundary legs attached at the six
/// positions found by a deterministic search, and validated against the
/// reference table before use.
pub fn seed_graph_36() -> Result<PlabicGraph> {
    let (block_colors, block_rot, outer_cycle) = honeycomb_block();
    let reference_labels: Vec<LabelSet> =
        REFERENCE_TABLE.iter().map(reference_label_set).collect();
    for flip_colors in [false, true] {
        let colors: Vec<plabic::Color> = block_colors
            .iter()
            .map(|&c| if flip_colors { c.opposite() } else { c })
            .collect();
        for legs in outer_cycle.iter().copied().combinations(6) {
            let Ok(g) = plabic::assemble_disk_graph(&colors, &block_rot, &outer_cycle, &legs)
            else {
                continue;
            };
            let Ok(g) = plabic::normalize(&g) else { continue };
            if validate_seed(&g, &reference_labels).is_ok() {
                return Ok(g);
            }
        }
    }
    Err(Error::Construction(
        "no leg placement on the honeycomb block yields a valid Gr(3,6) seed".into(),
    ))
}

fn validate_seed(g: &PlabicGraph, reference_labels: &[LabelSet]) -> Result<()> {
    let perm = plabic::trip_permutation(g)?;
    if perm != vec![4, 5, 6, 1, 2, 3] {
        return Err(Error::Construction(format!("trip permutation {perm:?}")));
    }
    // the trip permutation of Gr(3,6) is an involution, so it cannot see a
    // mirrored disk; the weight vector can, and must match the reference row
    let labeling = plabic::face_labels(g)?;
    let internal = labeling.internal_label_set();
    if let Some(row) = reference_row_by_labels(&internal) {
        let w = atlas_weight_vector(g)?;
        if w.entries != row.weight.to_vec() {
            return Err(Error::Construction("seed weight vector off the reference row".into()));
        }
    }
    if labeling.labels.len() != 10 {
        return Err(Error::Construction(format!(
            "{} disk faces, expected 10",
            labeling.labels.len()
        )));
    }
    if internal.len() != 4 {
        return Err(Error::Construction("expected 4 internal faces".into()));
    }
    let boundary: LabelSet = labeling
        .labels
        .iter()
        .zip(&labeling.internal)
        .filter(|(_, &i)| !i)
        .map(|(l, _)| l.clone())
        .collect();
    let cyclic: LabelSet = (0..6)
        .map(|s| (0..3).map(|d| (s + d) % 6 + 1).collect())
        .collect();
    if boundary != cyclic {
        return Err(Error::Construction(format!(
            "boundary labels {boundary:?} are not the six cyclic 3-subsets"
        )));
    }
    if !reference_labels.contains(&internal) {
        return Err(Error::Construction(format!(
            "internal labels {internal:?} not in the reference table"
        )));
    }
    Ok(())
}

/// The 2x2 honeycomb block on a brick-wall layout: 16 vertices with a
/// parity 2-coloring, counterclockwise rotation lists, and the outer cycle
/// in counterclockwise order.
fn honeycomb_block() -> (Vec<plabic::Color>, Vec<Vec<usize>>, Vec<usize>) {
    let coords: [(i32, i32); 16] = [
        (0, 0), (1, 0), (2, 0), (3, 0), (4, 0),
        (0, 1), (1, 1), (2, 1), (3, 1), (4, 1), (5, 1),
        (1, 2), (2, 2), (3, 2), (4, 2), (5, 2),
    ];
    let idx = |x: i32, y: i32| coords.iter().position(|&c| c == (x, y)).unwrap();
    let has_wall = |x: i32, y: i32| {
        // vertical edges exist only on hexagon walls of the brick rows
        matches!((x, y), (0, 0) | (2, 0) | (4, 0) | (1, 1) | (3, 1) | (5, 1))
    };
    let rot: Vec<Vec<usize>> = coords
        .iter()
        .map(|&(x, y)| {
            // counterclockwise from east: E, N, W, S
            let mut nbrs = Vec::new();
            if coords.contains(&(x + 1, y)) {
                nbrs.push(idx(x + 1, y));
            }
            if has_wall(x, y) && coords.contains(&(x, y + 1)) {
                nbrs.push(idx(x, y + 1));
            }
            if coords.contains(&(x - 1, y)) {
                nbrs.push(idx(x - 1, y));
            }
            if has_wall(x, y - 1) && coords.contains(&(x, y - 1)) {
                nbrs.push(idx(x, y - 1));
            }
            nbrs
        })
        .collect();
    let colors: Vec<plabic::Color> = coords
        .iter()
        .map(|&(x, y)| {
            if (x + y) % 2 == 0 {
                plabic::Color::Black
            } else {
                plabic::Color::White
            }
        })
        .collect();
    let outer: Vec<usize> = [
        (0, 0), (1, 0), (2, 0), (3, 0), (4, 0), (4, 1), (5, 1), (5, 2),
        (4, 2), (3, 2), (2, 2), (1, 2), (1, 1), (0, 1),
    ]
    .iter()
    .map(|&(x, y)| idx(x, y))
    .collect();
    (colors, rot, outer)
}

/// Enumerates the move class of the seed and computes one row per graph.
/// Fails hard unless exactly 34 graphs arise and every computed row matches
/// the reference table.
pub fn atlas() -> Result<Vec<AtlasRow>> {
    let seed = seed_graph_36()?;
    let graphs = plabic::enumerate_move_class(&seed, 4096)?;
    if graphs.len() != 34 {
        return Err(Error::Construction(format!(
            "move-class enumeration found {} graphs, expected 34",
            graphs.len()
        )));
    }
    let order = paper36_order();
    let mut rows: Vec<(LabelSet, WeightVector, PlabicGraph)> = graphs
        .par_iter()
        .map(|g| {
            let labels = plabic::face_labels(g)?.internal_label_set();
            let weight = atlas_weight_vector(g)?;
            Ok((labels, weight, g.clone()))
        })
        .collect::<Result<_>>()?;
    rows.sort_by(|a, b| a.0.cmp(&b.0));

    // classify the initial ideals and name classes from the reference data
    let gens = plucker::plucker_generators(&order)?;
    let ideals: Vec<ReducedBasis> = rows
        .par_iter()
        .map(|(_, w, _)| plucker::initial_ideal(&gens, &order, &w.entries))
        .collect::<Result<_>>()?;
    let classes = plucker::orbit_classify(&ideals, 6)?;
    let mut class_names: Vec<Option<String>> = vec![None; rows.len()];
    for class in &classes {
        let names: BTreeSet<&str> = class
            .members
            .iter()
            .map(|&m| {
                reference_row_by_labels(&rows[m].0)
                    .map(|r| r.class_name)
                    .ok_or_else(|| {
                        Error::Construction(format!("labels {:?} not in reference table", rows[m].0))
                    })
            })
            .collect::<Result<_>>()?;
        if names.len() != 1 {
            return Err(Error::Construction(format!(
                "computed class mixes reference classes {names:?}"
            )));
        }
        let name = names.into_iter().next().unwrap().to_string();
        for &m in &class.members {
            class_names[m] = Some(name.clone());
        }
    }
    rows.into_iter()
        .zip(class_names)
        .map(|((labels, weight, graph), name)| {
            let reference = reference_row_by_labels(&labels).ok_or_else(|| {
                Error::Construction(format!("labels {labels:?} not in reference table"))
            })?;
            Ok(AtlasRow {
                internal_labels: labels,
                weight,
                class_name: name.expect("every row was classified"),
                bcl_id: reference.bcl_id,
                graph,
            })
        })
        .collect()
}

/// Per-class summary of the atlas.
#[derive(Clone, Debug)]
pub struct ClassReport {
    pub classes: Vec<ClassSummary>,
    pub all_monomial_free: bool,
    pub notices: Vec<String>,
}

#[derive(Clone, Debug)]
pub struct ClassSummary {
    pub name: String,
    pub size: usize,
    pub member_labels: Vec<LabelSet>,
    /// One witness permutation per member merged into the class.
    pub witnesses: Vec<(LabelSet, Vec<usize>)>,
}

pub fn class_report(atlas: &[AtlasRow]) -> Result<ClassReport> {
    let order = paper36_order();
    let gens = plucker::plucker_generators(&order)?;
    let ideals: Vec<ReducedBasis> = atlas
        .par_iter()
        .map(|row| plucker::initial_ideal(&gens, &order, &row.weight.entries))
        .collect::<Result<_>>()?;
    // The two edge-type ideals are not binomial, so the divisibility
    // shortcut does not apply there. The vector of minimal-flow counts is a
    // common zero of the initial ideal with positive coordinates (the
    // boundary measurement curve has those counts as lowest-order
    // coefficients), which certifies monomial-freeness directly.
    let mut all_free = true;
    for (ideal, row) in ideals.iter().zip(atlas) {
        let free = match plucker::is_monomial_free(ideal) {
            Ok(ans) => ans,
            Err(Error::UnsupportedShape(_)) => {
                let witness = minimal_flow_counts(&row.graph)?;
                plucker::monomial_free_by_witness(ideal, &witness)?
            }
            Err(e) => return Err(e),
        };
        all_free &= free;
    }
    let computed = plucker::orbit_classify(&ideals, 6)?;
    let mut classes = Vec::new();
    for class in &computed {
        let name = atlas[class.members[0]].class_name.clone();
        classes.push(ClassSummary {
            name,
            size: class.members.len(),
            member_labels: class
                .members
                .iter()
                .map(|&m| atlas[m].internal_labels.clone())
                .collect(),
            witnesses: class
                .witnesses
                .iter()
                .map(|(m, sigma)| (atlas[*m].internal_labels.clone(), sigma.clone()))
                .collect(),
        });
    }
    let mut notices: Vec<String> = TYPO_NOTICES.iter().map(|s| s.to_string()).collect();
    notices.push(format!(
        "exactly {} of 7 published cone types have a plabic representative",
        classes.len()
    ));
    Ok(ClassReport { classes, all_monomial_free: all_free, notices })
}

/// Atlas rows serialized as CSV (header plus 34 rows).
pub fn atlas_csv(rows: &[AtlasRow]) -> String {
    let mut out = String::from("internal_labels,weight,class,bcl_id\n");
    for row in rows {
        let labels = row
            .internal_labels
            .iter()
            .map(|l| l.iter().join(""))
            .join(";");
        let weight = row.weight.entries.iter().join(",");
        out.push_str(&format!(
            "{labels},\"{weight}\",{},{}\n",
            row.class_name, row.bcl_id
        ));
    }
    out
}

pub fn atlas_json(rows: &[AtlasRow]) -> serde_json::Value {
    serde_json::Value::Array(
        rows.iter()
            .map(|row| {
                serde_json::json!({
                    "internal_labels": row
                        .internal_labels
                        .iter()
                        .map(|l| l.iter().copied().collect::<Vec<_>>())
                        .collect::<Vec<_>>(),
                    "weight": row.weight.entries,
                    "class": row.class_name,
                    "bcl_id": row.bcl_id,
                })
            })
            .collect(),
    )
}

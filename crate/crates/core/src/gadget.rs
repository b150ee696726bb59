//! The explicit plane counterexample for correspondence colouring with
//! separation `(4, 2)`.
//!
//! The building block is a nine-vertex gadget `H` on hubs `v1, v2` (pinned
//! to colours `a`, `b`) whose remaining lists draw on six shared tokens. Its
//! matchings force one of `v6, v7` to colour `5` and one of `v8, v9` to
//! colour `6`, which empties `v5`'s list, so `H` admits no colouring. The
//! full counterexample glues sixteen copies of `H` — one per pair `(a, b)`
//! in `{7..10} x {11..14}` — at two shared hubs `u1, u2` with lists
//! `{7,8,9,10}` and `{11,12,13,14}`: every hub colouring activates exactly
//! one copy's pins, and that copy has no extension.
//!
//! Copies are embedded side by side between the hubs like pages of a book;
//! each copy's hub edges appear consecutively in the hub rotations, which
//! keeps the whole rotation system plane.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;
use thiserror::Error;

use crate::assign::{
    max_edge_intersection, validate_corr_profile, validate_list_profile, AssignError, Colour,
    CorrespondenceAssignment, ListAssignment, SeparationSpec,
};
use crate::graph::{GraphError, OuterChoice, PlaneGraph, VertexId};
use crate::solver::{enumerate_corr, solve_corr, solve_list, SearchStatus, SolveError};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GadgetError {
    #[error("bad gadget parameters: {0}")]
    BadParameters(String),
    #[error("verification failed: {0}")]
    VerificationFailed(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Assign(#[from] AssignError),
    #[error(transparent)]
    Solve(#[from] SolveError),
}

/// One copy of the gadget: its hub colours and its seven non-hub vertices,
/// keyed by role index 3 through 9.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GadgetCopy {
    pub a: Colour,
    pub b: Colour,
    pub members: BTreeMap<u8, VertexId>,
}

/// Roles of the identified hub vertices and the per-copy labels.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct HubMap {
    pub u1: VertexId,
    pub u2: VertexId,
    pub copies: Vec<GadgetCopy>,
}

/// A gadget graph together with its correspondence assignment and hub roles.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GadgetInstance {
    pub graph: PlaneGraph,
    pub assignment: CorrespondenceAssignment,
    pub hubs: HubMap,
}

/// Hub rotation blocks per copy and the copy-internal rotations, all
/// counterclockwise; roles 1 and 2 stand for the hubs.
const U1_FAN: [u8; 5] = [3, 8, 5, 6, 4];
const U2_FAN: [u8; 5] = [4, 7, 5, 9, 3];
const COPY_ROTATIONS: [(u8, &[u8]); 7] = [
    (3, &[8, 1, 2, 9]),
    (4, &[1, 6, 7, 2]),
    (5, &[6, 1, 8, 9, 2, 7]),
    (6, &[1, 5, 7, 4]),
    (7, &[4, 6, 5, 2]),
    (8, &[1, 3, 9, 5]),
    (9, &[5, 8, 3, 2]),
];

fn shared_token(n: u8) -> Colour {
    Colour::new(n.to_string())
}

/// Per-copy lists in terms of the copy's labels and the shared tokens.
fn copy_list(role: u8, a: &Colour, b: &Colour) -> BTreeSet<Colour> {
    match role {
        3 => [a.clone(), b.clone(), shared_token(1), shared_token(2)].into(),
        4 => [a.clone(), b.clone(), shared_token(3), shared_token(4)].into(),
        5 => [a.clone(), b.clone(), shared_token(5), shared_token(6)].into(),
        6 => [a.clone(), shared_token(3), shared_token(4), shared_token(5)].into(),
        7 => [b.clone(), shared_token(3), shared_token(4), shared_token(5)].into(),
        8 => [a.clone(), shared_token(1), shared_token(2), shared_token(6)].into(),
        9 => [b.clone(), shared_token(1), shared_token(2), shared_token(6)].into(),
        _ => unreachable!("roles 3..=9 only"),
    }
}

/// Matchings internal to one copy (hub edges aside): identity pairs on the
/// listed tokens.
const COPY_MATCHINGS: [(u8, u8, &[u8]); 10] = [
    (4, 6, &[3, 4]),
    (4, 7, &[3, 4]),
    (6, 7, &[3, 4]),
    (3, 8, &[1, 2]),
    (3, 9, &[1, 2]),
    (8, 9, &[1, 2]),
    (5, 6, &[5]),
    (5, 7, &[5]),
    (5, 8, &[6]),
    (5, 9, &[6]),
];

/// Hub adjacencies: role 1 reaches 3, 4, 5, 6, 8 and role 2 reaches
/// 3, 4, 5, 7, 9, each matched on the copy's own hub colour.
const U1_EDGES: [u8; 5] = [3, 4, 5, 6, 8];
const U2_EDGES: [u8; 5] = [3, 4, 5, 7, 9];

struct FanBuilder {
    vertices: Vec<VertexId>,
    rotation: BTreeMap<VertexId, Vec<VertexId>>,
    lists: Vec<(VertexId, BTreeSet<Colour>)>,
    matchings: Vec<(VertexId, VertexId, Vec<(Colour, Colour)>)>,
    copies: Vec<GadgetCopy>,
    u1: VertexId,
    u2: VertexId,
}

impl FanBuilder {
    fn new(u1: VertexId, u2: VertexId) -> Self {
        FanBuilder {
            vertices: vec![u1.clone(), u2.clone()],
            rotation: BTreeMap::new(),
            lists: Vec::new(),
            matchings: Vec::new(),
            copies: Vec::new(),
            u1,
            u2,
        }
    }

    fn add_copy(&mut self, prefix: &str, a: Colour, b: Colour) {
        let member = |role: u8| -> VertexId { VertexId::new(format!("{prefix}v{role}")) };
        let u1 = self.u1.clone();
        let u2 = self.u2.clone();
        let resolve = |role: u8| -> VertexId {
            match role {
                1 => u1.clone(),
                2 => u2.clone(),
                r => member(r),
            }
        };

        let mut members = BTreeMap::new();
        for role in 3..=9u8 {
            let v = member(role);
            members.insert(role, v.clone());
            self.vertices.push(v.clone());
            self.lists.push((v, copy_list(role, &a, &b)));
        }
        for (role, neighbours) in COPY_ROTATIONS {
            self.rotation
                .insert(member(role), neighbours.iter().map(|r| resolve(*r)).collect());
        }
        for (r1, r2, tokens) in COPY_MATCHINGS {
            let pairs: Vec<(Colour, Colour)> = tokens
                .iter()
                .map(|t| (shared_token(*t), shared_token(*t)))
                .collect();
            self.matchings.push((member(r1), member(r2), pairs));
        }
        for role in U1_EDGES {
            self.matchings
                .push((self.u1.clone(), member(role), vec![(a.clone(), a.clone())]));
        }
        for role in U2_EDGES {
            self.matchings
                .push((self.u2.clone(), member(role), vec![(b.clone(), b.clone())]));
        }
        self.copies.push(GadgetCopy { a, b, members });
    }

    fn finish(
        mut self,
        u1_list: BTreeSet<Colour>,
        u2_list: BTreeSet<Colour>,
    ) -> Result<GadgetInstance, GadgetError> {
        // Hub rotations: copies fan out left to right at u1 and in reverse
        // order at u2, each contributing its block of five edges.
        let u1_rot: Vec<VertexId> = self
            .copies
            .iter()
            .flat_map(|c| U1_FAN.iter().map(|r| c.members[r].clone()))
            .collect();
        let u2_rot: Vec<VertexId> = self
            .copies
            .iter()
            .rev()
            .flat_map(|c| U2_FAN.iter().map(|r| c.members[r].clone()))
            .collect();
        self.rotation.insert(self.u1.clone(), u1_rot);
        self.rotation.insert(self.u2.clone(), u2_rot);

        let outer_hint = [self.u1.clone(), self.copies[0].members[&3].clone()];
        let graph = PlaneGraph::build(self.vertices, self.rotation, &outer_hint)?;

        let mut lists = ListAssignment::new();
        lists.insert(self.u1.clone(), u1_list);
        lists.insert(self.u2.clone(), u2_list);
        for (v, list) in self.lists {
            lists.insert(v, list);
        }

        let mut assignment = CorrespondenceAssignment::new(lists);
        for (u, v, pairs) in self.matchings {
            assignment.set_matching(&u, &v, pairs);
        }

        let instance = GadgetInstance {
            graph,
            assignment,
            hubs: HubMap { u1: self.u1, u2: self.u2, copies: self.copies },
        };
        // Hub lists may be pinned singletons (the standalone gadget), so the
        // builder checks the matching cap and shape at minimum list size 1;
        // copy lists must be exactly 4 wide either way.
        let report = validate_corr_profile(
            &instance.graph,
            &instance.assignment,
            SeparationSpec::new(1, 2).expect("valid spec"),
        )?;
        if !report.valid {
            return Err(GadgetError::VerificationFailed(
                "constructed gadget fails its matching profile".into(),
            ));
        }
        for copy in &instance.hubs.copies {
            for member in copy.members.values() {
                if instance.assignment.base().list(member)?.len() != 4 {
                    return Err(GadgetError::VerificationFailed(format!(
                        "copy list at {member} is not 4 wide"
                    )));
                }
            }
        }
        Ok(instance)
    }
}

/// The standalone gadget with hubs pinned: `v1` gets the singleton list
/// `{a}` and `v2` gets `{b}`. The labels must differ and avoid the six
/// shared tokens.
pub fn build_gadget_h(a: &Colour, b: &Colour) -> Result<GadgetInstance, GadgetError> {
    if a == b {
        return Err(GadgetError::BadParameters("labels a and b must differ".into()));
    }
    for label in [a, b] {
        if (1..=6u8).any(|t| shared_token(t) == *label) {
            return Err(GadgetError::BadParameters(format!(
                "label {label} collides with the shared tokens 1-6"
            )));
        }
    }
    let mut builder = FanBuilder::new(VertexId::new("v1"), VertexId::new("v2"));
    builder.add_copy("", a.clone(), b.clone());
    builder.finish([a.clone()].into(), [b.clone()].into())
}

/// The 114-vertex counterexample: sixteen gadget copies, one per label pair
/// in `{7,8,9,10} x {11,12,13,14}`, glued at hubs `u1`, `u2` carrying those
/// sets as lists.
pub fn build_counterexample_g42() -> Result<GadgetInstance, GadgetError> {
    let mut builder = FanBuilder::new(VertexId::new("u1"), VertexId::new("u2"));
    for a in 7..=10u32 {
        for b in 11..=14u32 {
            builder.add_copy(
                &format!("h{a}_{b}_"),
                Colour::new(a.to_string()),
                Colour::new(b.to_string()),
            );
        }
    }
    builder.finish(
        (7..=10u32).map(|n| Colour::new(n.to_string())).collect(),
        (11..=14u32).map(|n| Colour::new(n.to_string())).collect(),
    )
}

/// One hub colour pair and the exhaustive count over its activated copy.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct CounterexampleEntry {
    pub u1_colour: Colour,
    pub u2_colour: Colour,
    pub copy: String,
    pub colourings: usize,
    pub search_space: usize,
}

/// The structured proof that the instance admits no colouring.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct CounterexampleReport {
    pub entries: Vec<CounterexampleEntry>,
    pub whole_graph_status: SearchStatus,
    pub whole_graph_nodes: u64,
}

/// The copy whose labels equal the given hub pins, as a standalone problem:
/// both hubs pinned, copy lists and matchings inherited.
fn pinned_copy_instance(
    inst: &GadgetInstance,
    copy: &GadgetCopy,
    c1: &Colour,
    c2: &Colour,
) -> Result<(PlaneGraph, CorrespondenceAssignment), GadgetError> {
    let mut keep: BTreeSet<VertexId> = copy.members.values().cloned().collect();
    keep.insert(inst.hubs.u1.clone());
    keep.insert(inst.hubs.u2.clone());
    let sub = inst.graph.induced(&keep, OuterChoice::Minimal)?;

    let mut lists = ListAssignment::new();
    lists.insert(inst.hubs.u1.clone(), [c1.clone()]);
    lists.insert(inst.hubs.u2.clone(), [c2.clone()]);
    for v in copy.members.values() {
        lists.insert(v.clone(), inst.assignment.base().list(v)?.clone());
    }
    let mut assignment = CorrespondenceAssignment::new(lists);
    for (e, pairs) in inst.assignment.matchings() {
        if sub.has_edge(e.lo(), e.hi()) {
            assignment.set_matching(e.lo(), e.hi(), pairs.iter().cloned());
        }
    }
    Ok((sub, assignment))
}

/// For every hub colour pair, exhaustively enumerate the activated copy with
/// the hubs pinned and demand zero colourings; then cross-check that the
/// generic search on the whole graph agrees it is not colourable.
pub fn verify_counterexample(
    inst: &GadgetInstance,
) -> Result<CounterexampleReport, GadgetError> {
    let u1_list = inst.assignment.base().list(&inst.hubs.u1)?.clone();
    let u2_list = inst.assignment.base().list(&inst.hubs.u2)?.clone();

    let mut entries = Vec::new();
    for c1 in &u1_list {
        for c2 in &u2_list {
            let copy = inst
                .hubs
                .copies
                .iter()
                .find(|c| c.a == *c1 && c.b == *c2)
                .ok_or_else(|| {
                    GadgetError::VerificationFailed(format!(
                        "no copy carries the labels ({c1}, {c2})"
                    ))
                })?;
            let (sub, assignment) = pinned_copy_instance(inst, copy, c1, c2)?;
            let search_space: usize = copy
                .members
                .values()
                .map(|v| assignment.base().list(v).map(|l| l.len()).unwrap_or(0))
                .product();
            let found = enumerate_corr(&sub, &assignment, search_space.max(1))?;
            entries.push(CounterexampleEntry {
                u1_colour: c1.clone(),
                u2_colour: c2.clone(),
                copy: copy.members[&3].to_string(),
                colourings: found.len(),
                search_space,
            });
        }
    }

    let whole = solve_corr(&inst.graph, &inst.assignment)?;

    let report = CounterexampleReport {
        entries,
        whole_graph_status: whole.status,
        whole_graph_nodes: whole.nodes,
    };
    if let Some(bad) = report.entries.iter().find(|e| e.colourings != 0) {
        return Err(GadgetError::VerificationFailed(format!(
            "copy {} admits {} colourings under pins ({}, {})",
            bad.copy, bad.colourings, bad.u1_colour, bad.u2_colour
        )));
    }
    if report.whole_graph_status != SearchStatus::NotColourable {
        return Err(GadgetError::VerificationFailed(format!(
            "whole-graph search returned {:?}",
            report.whole_graph_status
        )));
    }
    Ok(report)
}

/// The same lists also defeat plain list colouring, where intersections run
/// up to three.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct ListCounterexampleReport {
    pub profile_4_3_valid: bool,
    pub max_edge_intersection: usize,
    pub matchings_sub_identity: bool,
    pub solve_list_status: SearchStatus,
    pub solve_list_nodes: u64,
}

/// Confirm that the instance's lists form a valid `(4,3)` profile, that its
/// matchings are a sub-matching of the identity correspondence (so the
/// correspondence impossibility carries over to list colouring), and that
/// the list solver indeed finds no colouring.
pub fn verify_not_43_choosable(
    inst: &GadgetInstance,
) -> Result<ListCounterexampleReport, GadgetError> {
    let lists = inst.assignment.base();
    let profile =
        validate_list_profile(&inst.graph, lists, SeparationSpec::new(4, 3).expect("valid"))?;
    let max_shared = max_edge_intersection(&inst.graph, lists)?;
    let sub_identity = inst.assignment.is_sub_identity();
    let outcome = solve_list(&inst.graph, lists)?;

    let report = ListCounterexampleReport {
        profile_4_3_valid: profile.valid,
        max_edge_intersection: max_shared,
        matchings_sub_identity: sub_identity,
        solve_list_status: outcome.status,
        solve_list_nodes: outcome.nodes,
    };
    if !report.profile_4_3_valid {
        return Err(GadgetError::VerificationFailed(
            "lists are not a (4,3) profile".into(),
        ));
    }
    if !report.matchings_sub_identity {
        return Err(GadgetError::VerificationFailed(
            "matchings are not a sub-matching of the identity".into(),
        ));
    }
    if report.solve_list_status != SearchStatus::NotColourable {
        return Err(GadgetError::VerificationFailed(format!(
            "list search returned {:?}",
            report.solve_list_status
        )));
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::EdgeKey;

    fn c(s: &str) -> Colour {
        Colour::new(s)
    }

    fn v(s: &str) -> VertexId {
        VertexId::new(s)
    }

    #[test]
    fn gadget_h_has_nine_vertices_twenty_edges_thirteen_faces() {
        let h = build_gadget_h(&c("7"), &c("11")).unwrap();
        assert_eq!(h.graph.vertex_count(), 9);
        assert_eq!(h.graph.edge_count(), 20);
        assert_eq!(h.graph.faces().len(), 13);
        assert_eq!(h.graph.face_count(), 13);
    }

    #[test]
    fn gadget_h_outer_cycle_is_v1_v3_v2_v4() {
        let h = build_gadget_h(&c("7"), &c("11")).unwrap();
        assert_eq!(
            h.graph.outer_walk().vertex_seq(),
            vec![v("v1"), v("v3"), v("v2"), v("v4")]
        );
    }

    #[test]
    fn gadget_h_lists_follow_the_labels() {
        let h = build_gadget_h(&c("7"), &c("11")).unwrap();
        let lists = h.assignment.base();
        assert_eq!(lists.get(&v("v1")).unwrap(), &[c("7")].into());
        assert_eq!(lists.get(&v("v2")).unwrap(), &[c("11")].into());
        assert_eq!(
            lists.get(&v("v3")).unwrap(),
            &[c("7"), c("11"), c("1"), c("2")].into()
        );
        assert_eq!(
            lists.get(&v("v6")).unwrap(),
            &[c("7"), c("3"), c("4"), c("5")].into()
        );
    }

    #[test]
    fn gadget_h_matching_sizes_cap_at_two() {
        let h = build_gadget_h(&c("7"), &c("11")).unwrap();
        let mut max = 0;
        for (_, pairs) in h.assignment.matchings() {
            max = max.max(pairs.len());
        }
        assert_eq!(max, 2);
        let e = EdgeKey::new(&v("v4"), &v("v6"));
        assert_eq!(h.assignment.matching(&e).unwrap().len(), 2);
    }

    #[test]
    fn gadget_h_rejects_bad_labels() {
        assert!(matches!(
            build_gadget_h(&c("7"), &c("7")),
            Err(GadgetError::BadParameters(_))
        ));
        assert!(matches!(
            build_gadget_h(&c("3"), &c("11")),
            Err(GadgetError::BadParameters(_))
        ));
    }

    #[test]
    fn gadget_h_v5_has_degree_six() {
        let h = build_gadget_h(&c("7"), &c("11")).unwrap();
        assert_eq!(h.graph.degree(&v("v5")), 6);
        let without = h.graph.remove_vertex(&v("v5")).unwrap();
        assert_eq!(without.vertex_count(), 8);
        assert_eq!(without.edge_count(), 14);
    }

    #[test]
    fn gadget_h_triangles_include_the_expected_faces() {
        let h = build_gadget_h(&c("7"), &c("11")).unwrap();
        let triangles = h.graph.enumerate_triangles();
        for t in [["v1", "v5", "v6"], ["v2", "v5", "v7"], ["v1", "v3", "v8"]] {
            let key = [v(t[0]), v(t[1]), v(t[2])];
            assert!(triangles.contains(&key), "missing triangle {t:?}");
        }
        // All twelve bounded faces are triangles, and no others exist.
        assert_eq!(triangles.len(), 12);
    }

    #[test]
    fn gadget_h_without_v5_is_colourable_and_structured() {
        let h = build_gadget_h(&c("7"), &c("11")).unwrap();
        let graph = h.graph.remove_vertex(&v("v5")).unwrap();
        let mut lists = ListAssignment::new();
        for u in graph.vertices() {
            lists.insert(u.clone(), h.assignment.base().list(u).unwrap().clone());
        }
        let mut assignment = CorrespondenceAssignment::new(lists);
        for (e, pairs) in h.assignment.matchings() {
            if graph.has_edge(e.lo(), e.hi()) {
                assignment.set_matching(e.lo(), e.hi(), pairs.iter().cloned());
            }
        }
        let all = enumerate_corr(&graph, &assignment, 5000).unwrap();
        assert!(!all.is_empty());
        let five = c("5");
        let six = c("6");
        for phi in &all {
            assert!([c("1"), c("2")].contains(phi.get(&v("v3")).unwrap()));
            assert!([c("3"), c("4")].contains(phi.get(&v("v4")).unwrap()));
            // At least one of v6, v7 is forced onto colour 5, and one of
            // v8, v9 onto colour 6; together they block both options of v5.
            let fives = ["v6", "v7"]
                .iter()
                .filter(|s| phi.get(&v(s)).unwrap() == &five)
                .count();
            assert!(fives >= 1);
            let sixes = ["v8", "v9"]
                .iter()
                .filter(|s| phi.get(&v(s)).unwrap() == &six)
                .count();
            assert!(sixes >= 1);
        }
    }

    #[test]
    fn gadget_h_with_pinned_hubs_has_no_colouring() {
        let h = build_gadget_h(&c("7"), &c("11")).unwrap();
        let report = verify_counterexample(&h).unwrap();
        assert_eq!(report.entries.len(), 1);
        assert_eq!(report.entries[0].colourings, 0);
        assert_eq!(report.entries[0].search_space, 4usize.pow(7));
    }

    #[test]
    fn label_swap_is_an_isomorphism_of_assigned_graphs() {
        let fwd = build_gadget_h(&c("7"), &c("11")).unwrap();
        let swapped = build_gadget_h(&c("11"), &c("7")).unwrap();
        // Relabel: v1 <-> v2, v6 <-> v7, v8 <-> v9; v3, v4, v5 fixed.
        let map = |u: &VertexId| -> VertexId {
            match u.as_str() {
                "v1" => v("v2"),
                "v2" => v("v1"),
                "v6" => v("v7"),
                "v7" => v("v6"),
                "v8" => v("v9"),
                "v9" => v("v8"),
                other => v(other),
            }
        };
        for u in fwd.graph.vertices() {
            assert_eq!(
                fwd.assignment.base().list(u).unwrap(),
                swapped.assignment.base().list(&map(u)).unwrap(),
                "lists differ at {u}"
            );
        }
        for e in fwd.graph.edges() {
            let (x, y) = e.endpoints();
            assert!(swapped.graph.has_edge(&map(x), &map(y)), "edge {e} unmapped");
        }
        for (e, pairs) in fwd.assignment.matchings() {
            let (x, y) = e.endpoints();
            let mx = map(x);
            let my = map(y);
            for (cx, cy) in pairs {
                assert!(
                    swapped.assignment.forbids(&mx, cx, &my, cy),
                    "pair ({cx},{cy}) on {e} unmapped"
                );
            }
        }
    }

    #[test]
    fn counterexample_has_the_right_size() {
        let g = build_counterexample_g42().unwrap();
        assert_eq!(g.graph.vertex_count(), 114);
        assert_eq!(g.graph.edge_count(), 320);
        assert_eq!(g.graph.faces().len(), 208);
        assert_eq!(g.graph.face_count(), 208);
        assert_eq!(g.hubs.copies.len(), 16);
        assert_eq!(
            g.assignment.base().list(&v("u1")).unwrap(),
            &[c("7"), c("8"), c("9"), c("10")].into()
        );
        assert_eq!(
            g.assignment.base().list(&v("u2")).unwrap(),
            &[c("11"), c("12"), c("13"), c("14")].into()
        );
    }

    #[test]
    fn counterexample_passes_its_42_profile() {
        let g = build_counterexample_g42().unwrap();
        let report = validate_corr_profile(
            &g.graph,
            &g.assignment,
            SeparationSpec::new(4, 2).unwrap(),
        )
        .unwrap();
        assert!(report.valid);
    }

    #[test]
    fn tampering_with_a_copy_breaks_verification() {
        let g = build_counterexample_g42().unwrap();
        // Remove the v6-v7 edge of one copy, and its matching.
        let copy = &g.hubs.copies[0];
        let v6 = copy.members[&6].clone();
        let v7 = copy.members[&7].clone();
        let graph = g.graph.remove_edge(&v6, &v7).unwrap();
        let mut assignment = g.assignment.clone();
        assignment.remove_edge_matching(&EdgeKey::new(&v6, &v7));
        let tampered = GadgetInstance { graph, assignment, hubs: g.hubs.clone() };
        assert!(matches!(
            verify_counterexample(&tampered),
            Err(GadgetError::VerificationFailed(_))
        ));
    }
}

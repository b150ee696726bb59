//! The constructive colouring algorithm.
//!
//! [`extend_precoloured`] extends a proper colouring of a short path on the
//! outer walk to the whole plane graph, provided interior lists have at
//! least four colours, other outer-walk lists at least three, adjacent lists
//! share at most two colours, and no triangle's three lists share exactly
//! two colours. The recursion peels the graph apart exactly along the
//! structure that makes this work: components, cut vertices, chords of the
//! outer cycle, and finally one or two vertices next to the path whose
//! colours can be fixed and stripped from their neighbours' lists.
//!
//! [`colour_with_clique`] lifts this to arbitrary `(4,2)`-list assignments
//! whose offensive triangles are all met by one clique: the clique is
//! coloured greedily, one clique vertex is deleted (re-rooting the outer
//! face so its neighbourhood lies on the boundary), the remaining clique
//! vertices become the precoloured path, and for a four-clique the graph is
//! first partitioned along the four triangular regions of the clique's
//! embedding.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::assign::{
    offensive_triangles, validate_list_profile, AssignError, Colour, ListAssignment,
    Restriction, SeparationSpec,
};
use crate::graph::{EdgeKey, GraphError, OuterChoice, PlaneGraph, VertexId};
use crate::solver::{solve_list, Colouring, SearchStatus};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ExtendError {
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error("internal contradiction (implementation bug): {0}")]
    InternalContradiction(String),
    #[error("not a clique: {0}")]
    NotAClique(String),
    #[error("clique misses the offensive triangle {0}-{1}-{2}")]
    DoesNotHitAllOffensiveTriangles(VertexId, VertexId, VertexId),
    #[error(transparent)]
    Assign(#[from] AssignError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// A precoloured path of at most two vertices on the outer walk.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct PrecolouredPath {
    entries: Vec<(VertexId, Colour)>,
}

impl PrecolouredPath {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn single(v: VertexId, c: Colour) -> Self {
        PrecolouredPath { entries: vec![(v, c)] }
    }

    pub fn pair(v0: VertexId, c0: Colour, v1: VertexId, c1: Colour) -> Self {
        PrecolouredPath { entries: vec![(v0, c0), (v1, c1)] }
    }

    pub fn from_entries(entries: Vec<(VertexId, Colour)>) -> Self {
        PrecolouredPath { entries }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &(VertexId, Colour)> {
        self.entries.iter()
    }

    pub fn colour_of(&self, v: &VertexId) -> Option<&Colour> {
        self.entries.iter().find(|(u, _)| u == v).map(|(_, c)| c)
    }

    pub fn contains(&self, v: &VertexId) -> bool {
        self.colour_of(v).is_some()
    }

    fn restrict_to(&self, g: &PlaneGraph) -> PrecolouredPath {
        PrecolouredPath {
            entries: self
                .entries
                .iter()
                .filter(|(v, _)| g.has_vertex(v))
                .cloned()
                .collect(),
        }
    }
}

/// A full extension problem: graph, precoloured path, lists.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ExtensionInstance {
    pub graph: PlaneGraph,
    pub path: PrecolouredPath,
    pub lists: ListAssignment,
}

impl ExtensionInstance {
    pub fn new(graph: PlaneGraph, path: PrecolouredPath, lists: ListAssignment) -> Self {
        ExtensionInstance { graph, path, lists }
    }

    /// Check the hypotheses: lists cover the graph; the path has at most two
    /// distinct vertices, all on the outer walk, properly precoloured from
    /// their lists, adjacent when there are two; interior lists have at
    /// least 4 colours and outer-walk lists off the path at least 3 (an
    /// isolated vertex borders the face it sits in and counts as outer);
    /// every edge intersection is at most 2; and no triangle is offensive.
    pub fn validate(&self) -> Result<(), String> {
        validate_instance(&self.graph, &self.path, &self.lists)
    }
}

fn validate_instance(
    g: &PlaneGraph,
    path: &PrecolouredPath,
    lists: &ListAssignment,
) -> Result<(), String> {
    lists.covers(g).map_err(|e| e.to_string())?;

    if path.len() > 2 {
        return Err(format!("path has {} vertices, at most 2 allowed", path.len()));
    }
    let walk = g.outer_walk();
    for (pv, pc) in path.iter() {
        if !g.has_vertex(pv) {
            return Err(format!("path vertex {pv} is not in the graph"));
        }
        if !walk.contains(pv) {
            return Err(format!("path vertex {pv} is not on the outer walk"));
        }
        let list = lists.get(pv).expect("cover checked");
        if !list.contains(pc) {
            return Err(format!("path colour {pc} is not in the list of {pv}"));
        }
    }
    if path.len() == 2 {
        let (v0, c0) = path.iter().next().expect("len 2");
        let (v1, c1) = path.iter().nth(1).expect("len 2");
        if v0 == v1 {
            return Err(format!("path repeats vertex {v0}"));
        }
        if !g.has_edge(v0, v1) {
            return Err(format!("path vertices {v0} and {v1} are not adjacent"));
        }
        if c0 == c1 {
            return Err(format!("path colouring is improper: {v0} and {v1} both get {c0}"));
        }
    }

    for v in g.vertices() {
        let size = lists.get(v).expect("cover checked").len();
        let on_boundary = walk.contains(v) || g.degree(v) == 0;
        let needed = if path.contains(v) {
            1
        } else if on_boundary {
            3
        } else {
            4
        };
        if size < needed {
            return Err(format!(
                "list of {v} has {size} colours, needs {needed} ({})",
                if path.contains(v) {
                    "path vertex"
                } else if on_boundary {
                    "outer-walk vertex"
                } else {
                    "interior vertex"
                }
            ));
        }
    }

    for e in g.edges() {
        let (u, v) = e.endpoints();
        let shared = lists
            .get(u)
            .expect("cover checked")
            .intersection(lists.get(v).expect("cover checked"))
            .count();
        if shared > 2 {
            return Err(format!(
                "lists of {u} and {v} share {shared} colours, at most 2 allowed"
            ));
        }
    }

    let offensive = offensive_triangles(g, lists).map_err(|e| e.to_string())?;
    if let Some([a, b, c]) = offensive.first() {
        return Err(format!("offensive triangle {a}-{b}-{c}"));
    }
    Ok(())
}

/// Extend the path's colouring to the whole graph. Never fails on instances
/// that pass [`ExtensionInstance::validate`]; a failure on a recursively
/// constructed sub-instance is reported as
/// [`ExtendError::InternalContradiction`].
pub fn extend_precoloured(inst: &ExtensionInstance) -> Result<Colouring, ExtendError> {
    inst.validate().map_err(ExtendError::HypothesisViolated)?;
    let mut fuel = recursion_fuel(&inst.graph, &inst.lists);
    extend_rec(&inst.graph, &inst.path, &inst.lists, &mut fuel)
}

fn recursion_fuel(g: &PlaneGraph, lists: &ListAssignment) -> u64 {
    let total_list: usize = lists.iter().map(|(_, l)| l.len()).sum();
    1_000 + 20 * (g.vertex_count() + g.edge_count() + total_list) as u64
}

fn internal(msg: impl Into<String>) -> ExtendError {
    ExtendError::InternalContradiction(msg.into())
}

fn lists_for(g: &PlaneGraph, lists: &ListAssignment) -> ListAssignment {
    ListAssignment::from_entries(
        lists
            .iter()
            .filter(|(v, _)| g.has_vertex(v))
            .map(|(v, l)| (v.clone(), l.clone())),
    )
}

fn extend_rec(
    g: &PlaneGraph,
    path: &PrecolouredPath,
    lists: &ListAssignment,
    fuel: &mut u64,
) -> Result<Colouring, ExtendError> {
    if *fuel == 0 {
        return Err(internal("recursion fuel exhausted"));
    }
    *fuel -= 1;
    validate_instance(g, path, lists).map_err(internal)?;

    // Base case: small graphs go to the exact solver, with the path applied
    // as pins. The hypotheses make these instances colourable.
    if g.vertex_count() <= 4 {
        let pins: Vec<Restriction> = path
            .iter()
            .map(|(v, c)| Restriction::Pin(v.clone(), c.clone()))
            .collect();
        let pinned = lists.restrict(&pins)?;
        let outcome = solve_list(g, &pinned).map_err(|e| internal(e.to_string()))?;
        return match outcome.status {
            SearchStatus::Colourable => Ok(outcome.witness.expect("colourable has witness")),
            _ => Err(internal("base case reported not colourable")),
        };
    }

    // Disconnected: each component is independent; the path stays with its
    // component, others start from scratch.
    if !g.is_connected() {
        let mut out = Colouring::new();
        for part in g.split_components()? {
            let sub_path = path.restrict_to(&part);
            let sub_lists = lists_for(&part, lists);
            let phi = extend_rec(&part, &sub_path, &sub_lists, fuel)?;
            out.merge(&phi);
        }
        return Ok(out);
    }

    // Grow the path to two pinned vertices: first the minimal outer-walk
    // vertex with its minimal colour, then the minimal walk-neighbour with
    // the minimal colour differing from the first pin.
    if path.len() < 2 {
        let walk = g.outer_walk();
        let grown = if path.is_empty() {
            let v0 = walk
                .vertices()
                .into_iter()
                .min()
                .ok_or_else(|| internal("connected graph with 5+ vertices has an empty walk"))?;
            let c0 = lists
                .list(&v0)?
                .iter()
                .next()
                .cloned()
                .ok_or_else(|| internal("empty list on the outer walk"))?;
            PrecolouredPath::single(v0, c0)
        } else {
            let (v0, c0) = path.iter().next().expect("len 1").clone();
            let v1 = walk
                .steps()
                .iter()
                .filter_map(|(a, b)| {
                    if *a == v0 {
                        Some(b.clone())
                    } else if *b == v0 {
                        Some(a.clone())
                    } else {
                        None
                    }
                })
                .min()
                .ok_or_else(|| internal("path vertex has no walk neighbour"))?;
            let c1 = lists
                .list(&v1)?
                .iter()
                .find(|c| **c != c0)
                .cloned()
                .ok_or_else(|| internal("no proper colour for the second path vertex"))?;
            PrecolouredPath::pair(v0, c0, v1, c1)
        };
        return extend_rec(g, &grown, lists, fuel);
    }

    // Trim lists to exact sizes: 1 on the path, 3 on the rest of the
    // boundary, 4 in the interior. Order-minimal colours are kept, except
    // that a boundary vertex adjacent to a path vertex retains that path
    // colour when its list holds it, so the cycle case below sees the path
    // colour in its successor's list whenever the original list had it.
    let trimmed = trim_lists(g, path, lists);
    if trimmed != *lists {
        return extend_rec(g, path, &trimmed, fuel);
    }

    // Cut vertex: solve the path's side first, pin the cut vertex in the
    // other side.
    let cuts = g.cut_vertices();
    let (p0, p1) = path_pair(path);
    if let Some(u) = cuts.first() {
        let (g1, g2) = g.split_at_cut_vertex(u)?;
        let (p_side, other) = pick_path_side(g1, g2, &p0, &p1)?;
        let phi1 = extend_rec(&p_side, path, &lists_for(&p_side, lists), fuel)?;
        let pin = phi1
            .get(u)
            .cloned()
            .ok_or_else(|| internal("cut vertex uncoloured by its side"))?;
        let phi2 = extend_rec(
            &other,
            &PrecolouredPath::single(u.clone(), pin),
            &lists_for(&other, lists),
            fuel,
        )?;
        let mut out = phi1;
        out.merge(&phi2);
        return Ok(out);
    }

    // Two-connected now (5+ vertices, connected, no cut vertex), so the
    // outer walk is a cycle.
    let walk = g.outer_walk();
    if !walk.is_cycle() {
        return Err(internal("two-connected graph with a non-cycle outer walk"));
    }
    let chords = g.find_chords(&walk)?;

    // The path's own edge may be a chord (its vertices sit on the walk but
    // the edge does not); splitting there pins the path into both sides.
    let p_edge = EdgeKey::new(&p0, &p1);
    if chords.contains(&p_edge) {
        let (g1, g2) = g.split_at_chord(&p0, &p1)?;
        let mut out = Colouring::new();
        for part in [g1, g2] {
            let phi = extend_rec(&part, path, &lists_for(&part, lists), fuel)?;
            out.merge(&phi);
        }
        return Ok(out);
    }

    if let Some(chord) = chords.first() {
        let (vi, vj) = chord.endpoints();
        let (g1, g2) = g.split_at_chord(vi, vj)?;
        let (p_side, other) = pick_path_side(g1, g2, &p0, &p1)?;
        let phi1 = extend_rec(&p_side, path, &lists_for(&p_side, lists), fuel)?;
        let ci = phi1.get(vi).cloned().ok_or_else(|| internal("chord end uncoloured"))?;
        let cj = phi1.get(vj).cloned().ok_or_else(|| internal("chord end uncoloured"))?;
        let phi2 = extend_rec(
            &other,
            &PrecolouredPath::pair(vi.clone(), ci, vj.clone(), cj),
            &lists_for(&other, lists),
            fuel,
        )?;
        let mut out = phi1;
        out.merge(&phi2);
        return Ok(out);
    }

    chordless_cycle_case(g, path, lists, &walk, fuel)
}

fn path_pair(path: &PrecolouredPath) -> (VertexId, VertexId) {
    let mut it = path.iter();
    let (p0, _) = it.next().expect("path grown to two").clone();
    let (p1, _) = it.next().expect("path grown to two").clone();
    (p0, p1)
}

fn pick_path_side(
    g1: PlaneGraph,
    g2: PlaneGraph,
    p0: &VertexId,
    p1: &VertexId,
) -> Result<(PlaneGraph, PlaneGraph), ExtendError> {
    let holds = |g: &PlaneGraph| g.has_vertex(p0) && g.has_vertex(p1) && g.has_edge(p0, p1);
    if holds(&g1) {
        Ok((g1, g2))
    } else if holds(&g2) {
        Ok((g2, g1))
    } else {
        Err(internal("path lost by a split"))
    }
}

fn trim_lists(g: &PlaneGraph, path: &PrecolouredPath, lists: &ListAssignment) -> ListAssignment {
    let walk = g.outer_walk();
    let mut out = Vec::new();
    for (v, list) in lists.iter() {
        let on_boundary = walk.contains(v) || g.degree(v) == 0;
        let target = if path.contains(v) {
            1
        } else if on_boundary {
            3
        } else {
            4
        };
        if list.len() <= target {
            out.push((v.clone(), list.clone()));
            continue;
        }
        let mut keep: BTreeSet<Colour> = BTreeSet::new();
        if let Some(c) = path.colour_of(v) {
            keep.insert(c.clone());
        } else if on_boundary {
            for (p, c) in path.iter() {
                if g.has_edge(p, v) && list.contains(c) {
                    keep.insert(c.clone());
                }
            }
        }
        for c in list {
            if keep.len() >= target {
                break;
            }
            keep.insert(c.clone());
        }
        out.push((v.clone(), keep));
    }
    ListAssignment::from_entries(out)
}

/// The chordless-cycle case: the outer cycle is `v0 v1 v2 ... v(k-1)` with
/// the path on `v0 v1`; the reductions fix colours for `v2` (and possibly
/// `v3`), strip them from the deleted vertices' neighbourhoods, and recurse.
fn chordless_cycle_case(
    g: &PlaneGraph,
    path: &PrecolouredPath,
    lists: &ListAssignment,
    walk: &crate::graph::BoundaryWalk,
    fuel: &mut u64,
) -> Result<Colouring, ExtendError> {
    let (p0, p1) = path_pair(path);
    let c1 = path.colour_of(&p1).expect("path colours").clone();

    // Orient the cycle to read v0, v1, v2, ...
    let seq = walk.vertex_seq();
    let k = seq.len();
    let pos0 = seq
        .iter()
        .position(|v| *v == p0)
        .ok_or_else(|| internal("path vertex not on the cycle"))?;
    let forward = seq[(pos0 + 1) % k] == p1;
    let at = |i: usize| -> &VertexId {
        if forward {
            &seq[(pos0 + i) % k]
        } else {
            &seq[(pos0 + k - (i % k)) % k]
        }
    };
    if *at(1) != p1 {
        return Err(internal("path edge is not consecutive on the cycle"));
    }

    let v2 = at(2).clone();
    let l2 = lists.list(&v2)?.clone();

    // If the second path colour is absent from v2's list, the edge v1-v2
    // cannot conflict; drop it and recurse.
    if !l2.contains(&c1) {
        let reduced = g.remove_edge(&p1, &v2)?;
        return extend_rec(&reduced, path, &lists_for(&reduced, lists), fuel);
    }

    let spare: Vec<Colour> = l2.iter().filter(|c| **c != c1).cloned().collect();
    if spare.len() != 2 {
        return Err(internal(format!("trimmed list at {v2} has size {}", l2.len())));
    }

    let v3 = at(3).clone();
    let l3 = lists.list(&v3)?.clone();
    let missing: Vec<&Colour> = spare.iter().filter(|c| !l3.contains(*c)).collect();
    if let Some(&c) = missing.first() {
        // Colour v2 with a spare colour absent from v3's list, delete it,
        // and strip the colour from its neighbours. With a triangle cycle
        // (k = 3) this branch always fires, since v3 is then the singleton
        // first path vertex.
        let c = c.clone();
        return delete_and_recurse(g, path, lists, &[(v2, c)], fuel);
    }

    // Both spare colours of v2 sit in v3's list, whose third colour d then
    // avoids v2's list entirely.
    let d = l3
        .iter()
        .find(|c| !spare.contains(*c))
        .cloned()
        .ok_or_else(|| internal(format!("list of {v3} holds only spare colours")))?;
    if l2.contains(&d) {
        return Err(internal(format!(
            "lists of {v2} and {v3} share three colours despite the cap"
        )));
    }

    let v4 = at(4).clone();
    if v4 == v2 || v4 == v3 || v3 == p0 || v3 == p1 {
        return Err(internal("cycle too short for the double reduction"));
    }
    let l4 = lists.list(&v4)?.clone();
    if !l4.contains(&d) {
        // Colour v3 with d, delete it, strip d around it.
        return delete_and_recurse(g, path, lists, &[(v3, d)], fuel);
    }

    // d lies in v4's list too, so at most one of v2's spare colours does;
    // give v3 the absent one and v2 the other, delete both, strip both.
    let absent: Vec<&Colour> = spare.iter().filter(|c| !l4.contains(*c)).collect();
    let for_v3 = absent
        .first()
        .copied()
        .cloned()
        .ok_or_else(|| internal(format!("lists of {v3} and {v4} share three colours")))?;
    let for_v2 = spare
        .iter()
        .find(|c| **c != for_v3)
        .cloned()
        .expect("two spare colours");
    delete_and_recurse(g, path, lists, &[(v2, for_v2), (v3, for_v3)], fuel)
}

/// Fix the given vertex colours, delete those vertices, strip each fixed
/// colour from the surviving neighbours of its vertex, and recurse on every
/// remaining component.
fn delete_and_recurse(
    g: &PlaneGraph,
    path: &PrecolouredPath,
    lists: &ListAssignment,
    fixed: &[(VertexId, Colour)],
    fuel: &mut u64,
) -> Result<Colouring, ExtendError> {
    let deleted: Vec<VertexId> = fixed.iter().map(|(v, _)| v.clone()).collect();
    for (v, _) in fixed {
        if path.contains(v) {
            return Err(internal(format!("reduction tried to delete path vertex {v}")));
        }
    }
    let mut edits = Vec::new();
    for (v, c) in fixed {
        for n in g.neighbours(v) {
            if !deleted.contains(n) {
                edits.push(Restriction::Remove(n.clone(), c.clone()));
            }
        }
    }
    let stripped = lists.restrict(&edits)?;

    let parts = g.delete_and_split(&deleted)?;
    let mut out = Colouring::from_entries(fixed.iter().cloned());
    for part in parts {
        let sub_path = path.restrict_to(&part);
        let phi = extend_rec(&part, &sub_path, &lists_for(&part, &stripped), fuel)?;
        out.merge(&phi);
    }
    Ok(out)
}

/// A clique of at most four vertices meant to meet every offensive triangle.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct HittingClique {
    vertices: BTreeSet<VertexId>,
}

impl HittingClique {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn from_vertices(vertices: impl IntoIterator<Item = VertexId>) -> Self {
        HittingClique { vertices: vertices.into_iter().collect() }
    }

    pub fn vertices(&self) -> &BTreeSet<VertexId> {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Pairwise adjacency in `g`, and the planar size cap of four.
    pub fn validate(&self, g: &PlaneGraph) -> Result<(), ExtendError> {
        if self.vertices.len() > 4 {
            return Err(ExtendError::NotAClique(format!(
                "{} vertices, a planar clique has at most 4",
                self.vertices.len()
            )));
        }
        for v in &self.vertices {
            if !g.has_vertex(v) {
                return Err(ExtendError::NotAClique(format!("{v} is not in the graph")));
            }
        }
        let vs: Vec<&VertexId> = self.vertices.iter().collect();
        for i in 0..vs.len() {
            for j in i + 1..vs.len() {
                if !g.has_edge(vs[i], vs[j]) {
                    return Err(ExtendError::NotAClique(format!(
                        "{} and {} are not adjacent",
                        vs[i], vs[j]
                    )));
                }
            }
        }
        Ok(())
    }

    /// Whether every listed triangle contains a clique vertex.
    pub fn hits_all(&self, triangles: &[[VertexId; 3]]) -> Result<(), ExtendError> {
        for t in triangles {
            if !t.iter().any(|v| self.vertices.contains(v)) {
                return Err(ExtendError::DoesNotHitAllOffensiveTriangles(
                    t[0].clone(),
                    t[1].clone(),
                    t[2].clone(),
                ));
            }
        }
        Ok(())
    }
}

fn spec42() -> SeparationSpec {
    SeparationSpec::new(4, 2).expect("4,2 is a valid spec")
}

fn check_42_profile(g: &PlaneGraph, lists: &ListAssignment) -> Result<(), ExtendError> {
    let report = validate_list_profile(g, lists, spec42())?;
    if !report.valid {
        return Err(ExtendError::HypothesisViolated(format!(
            "not a (4,2)-list assignment: {} undersized lists, {} oversized intersections",
            report.undersized.len(),
            report.oversized_intersections.len()
        )));
    }
    Ok(())
}

/// Colour a plane graph with a `(4,2)`-list assignment and no offensive
/// triangles, by extending an empty precoloured path.
pub fn colour_no_offensive(
    g: &PlaneGraph,
    lists: &ListAssignment,
) -> Result<Colouring, ExtendError> {
    check_42_profile(g, lists)?;
    let offensive = offensive_triangles(g, lists)?;
    if let Some([a, b, c]) = offensive.first() {
        return Err(ExtendError::HypothesisViolated(format!(
            "offensive triangle {a}-{b}-{c}"
        )));
    }
    extend_precoloured(&ExtensionInstance::new(
        g.clone(),
        PrecolouredPath::empty(),
        lists.clone(),
    ))
}

/// Colour a plane graph with a `(4,2)`-list assignment whose offensive
/// triangles are all met by the given clique.
pub fn colour_with_clique(
    g: &PlaneGraph,
    lists: &ListAssignment,
    clique: &HittingClique,
) -> Result<Colouring, ExtendError> {
    clique.validate(g)?;
    check_42_profile(g, lists)?;
    let offensive = offensive_triangles(g, lists)?;
    clique.hits_all(&offensive)?;

    if clique.is_empty() {
        return extend_precoloured(&ExtensionInstance::new(
            g.clone(),
            PrecolouredPath::empty(),
            lists.clone(),
        ));
    }

    // Greedy colouring of the clique: minimal colour not used by an earlier
    // clique vertex. Lists of size four against at most three predecessors.
    let mut phi_h: Vec<(VertexId, Colour)> = Vec::new();
    for h in clique.vertices() {
        let used: BTreeSet<&Colour> = phi_h.iter().map(|(_, c)| c).collect();
        let c = lists
            .list(h)?
            .iter()
            .find(|c| !used.contains(*c))
            .cloned()
            .ok_or_else(|| internal("greedy clique colouring ran out of colours"))?;
        phi_h.push((h.clone(), c));
    }

    if clique.len() <= 3 {
        let delete = clique.vertices().iter().next().expect("non-empty").clone();
        return extend_with_pinned_clique(g, lists, &phi_h, &delete);
    }

    colour_with_k4(g, lists, &phi_h)
}

/// Extend a properly coloured clique of one to three pinned vertices: delete
/// `delete`, which re-roots each remaining component's outer face to the
/// merged region so the deleted vertex's neighbourhood lies on the boundary,
/// strip its colour from its non-clique neighbours, and run the extension
/// with the surviving pins as the path.
fn extend_with_pinned_clique(
    g: &PlaneGraph,
    lists: &ListAssignment,
    pins: &[(VertexId, Colour)],
    delete: &VertexId,
) -> Result<Colouring, ExtendError> {
    let phi_del = pins
        .iter()
        .find(|(v, _)| v == delete)
        .map(|(_, c)| c.clone())
        .ok_or_else(|| internal("deleted vertex is not pinned"))?;
    let survivors: Vec<(VertexId, Colour)> = pins
        .iter()
        .filter(|(v, _)| v != delete)
        .cloned()
        .collect();
    if survivors.len() > 2 {
        return Err(internal("more than two pins would survive the deletion"));
    }

    let pinned_set: BTreeSet<&VertexId> = survivors.iter().map(|(v, _)| v).collect();
    let edits: Vec<Restriction> = g
        .neighbours(delete)
        .iter()
        .filter(|n| !pinned_set.contains(n))
        .map(|n| Restriction::Remove(n.clone(), phi_del.clone()))
        .collect();
    let stripped = lists.restrict(&edits)?;

    let mut out = Colouring::from_entries([(delete.clone(), phi_del)]);
    let mut fuel = recursion_fuel(g, lists);
    for part in g.delete_and_split(&[delete.clone()])? {
        let sub_pins: Vec<(VertexId, Colour)> = survivors
            .iter()
            .filter(|(v, _)| part.has_vertex(v))
            .cloned()
            .collect();
        let sub_path = PrecolouredPath::from_entries(sub_pins);
        let phi = extend_rec(&part, &sub_path, &lists_for(&part, &stripped), &mut fuel)?;
        out.merge(&phi);
    }
    Ok(out)
}

/// The four-clique case: embed the clique as a tetrahedron, assign every
/// component of the rest to the triangular region its attachments single
/// out, and solve each region with its three corner pins, deleting the
/// corner whose removal frees the region's boundary.
fn colour_with_k4(
    g: &PlaneGraph,
    lists: &ListAssignment,
    phi_h: &[(VertexId, Colour)],
) -> Result<Colouring, ExtendError> {
    let h_set: BTreeSet<VertexId> = phi_h.iter().map(|(v, _)| v.clone()).collect();
    let k_graph = g.induced(&h_set, OuterChoice::Minimal)?;
    if k_graph.faces().len() != 4 || k_graph.faces().iter().any(|f| f.len() != 3) {
        return Err(internal("four-clique does not trace as a tetrahedron"));
    }

    // Region of the edge (h, w) with h in the clique: scan h's rotation
    // forward from w to the next clique vertex y; the clique face leaving h
    // towards y is the region containing the edge.
    let region_of = |h: &VertexId, w: &VertexId| -> Result<usize, ExtendError> {
        let rot = g.rotation(h);
        let pos = rot
            .iter()
            .position(|n| n == w)
            .ok_or_else(|| internal("attachment edge vanished"))?;
        for off in 1..=rot.len() {
            let y = &rot[(pos + off) % rot.len()];
            if h_set.contains(y) {
                return k_graph
                    .face_of_step(&(h.clone(), y.clone()))
                    .ok_or_else(|| internal("clique step lies on no clique face"));
            }
        }
        Err(internal("clique vertex has no clique neighbour in its rotation"))
    };

    // Components of the rest, each mapped to the region its attachments
    // agree on (None when unattached).
    let mut comp_region: Vec<(BTreeSet<VertexId>, Option<usize>)> = Vec::new();
    {
        let mut unseen: BTreeSet<VertexId> =
            g.vertex_set().difference(&h_set).cloned().collect();
        while let Some(start) = unseen.iter().next().cloned() {
            let mut comp = BTreeSet::new();
            let mut stack = vec![start];
            while let Some(v) = stack.pop() {
                if !unseen.remove(&v) {
                    continue;
                }
                for n in g.neighbours(&v) {
                    if unseen.contains(n) {
                        stack.push(n.clone());
                    }
                }
                comp.insert(v);
            }
            let mut region: Option<usize> = None;
            for w in &comp {
                for h in g.neighbours(w) {
                    if !h_set.contains(h) {
                        continue;
                    }
                    let r = region_of(h, w)?;
                    if let Some(prev) = region {
                        if prev != r {
                            return Err(internal(format!(
                                "component of {w} attaches to two clique regions"
                            )));
                        }
                    }
                    region = Some(r);
                    if !k_graph.faces()[r].contains_vertex(h) {
                        return Err(internal(format!(
                            "attachment {h} is off its region's triangle"
                        )));
                    }
                }
            }
            comp_region.push((comp, region));
        }
    }

    // The clique region holding the graph's outer face. A detached outer
    // walk leaves the nesting unconstrained; any region is consistent then,
    // so the first is taken.
    let outer_region: usize = {
        let mut found = None;
        for (x, y) in g.outer_face().steps() {
            if h_set.contains(x) && h_set.contains(y) {
                found = k_graph.face_of_step(&(x.clone(), y.clone()));
                break;
            }
            if h_set.contains(x) {
                found = Some(region_of(x, y)?);
                break;
            }
            if h_set.contains(y) {
                found = Some(region_of(y, x)?);
                break;
            }
            if let Some(r) = comp_region
                .iter()
                .find(|(comp, _)| comp.contains(x))
                .and_then(|(_, r)| *r)
            {
                found = Some(r);
                break;
            }
        }
        found.unwrap_or(0)
    };

    // The apex is the clique vertex off the outer region's triangle; every
    // inner region's triangle contains it, and deleting it there frees the
    // region's boundary for the extension.
    let outer_tri = k_graph.faces()[outer_region].vertices();
    let apex = h_set
        .iter()
        .find(|h| !outer_tri.contains(*h))
        .cloned()
        .ok_or_else(|| internal("no clique vertex off the outer region"))?;

    let mut out = Colouring::from_entries(phi_h.iter().cloned());
    for face_id in 0..k_graph.faces().len() {
        let tri = k_graph.faces()[face_id].vertices();
        let mut members: BTreeSet<VertexId> = tri.clone();
        for (comp, region) in &comp_region {
            if region.unwrap_or(outer_region) == face_id {
                members.extend(comp.iter().cloned());
            }
        }
        let outer_choice = if face_id == outer_region {
            let surviving: Vec<(VertexId, VertexId)> = g
                .outer_face()
                .steps()
                .iter()
                .filter(|(a, b)| members.contains(a) && members.contains(b))
                .cloned()
                .collect();
            OuterChoice::CoveringSteps(surviving)
        } else {
            // Outside of the region's triangle: the triangle traversed
            // against its face orientation.
            let rev: Vec<(VertexId, VertexId)> = k_graph.faces()[face_id]
                .steps()
                .iter()
                .map(|(a, b)| (b.clone(), a.clone()))
                .collect();
            OuterChoice::CoveringSteps(rev)
        };
        let sub = g.induced(&members, outer_choice)?;
        let pins: Vec<(VertexId, Colour)> = phi_h
            .iter()
            .filter(|(v, _)| tri.contains(v))
            .cloned()
            .collect();
        let delete = if face_id == outer_region {
            pins.first().expect("triangle has pins").0.clone()
        } else {
            apex.clone()
        };
        let phi = extend_with_pinned_clique(&sub, &lists_for(&sub, lists), &pins, &delete)?;
        out.merge(&phi);
    }
    Ok(out)
}

/// Exhaustive search for a clique of size at most four meeting every
/// offensive triangle: smallest cliques first, then lexicographic.
pub fn find_hitting_clique(
    g: &PlaneGraph,
    lists: &ListAssignment,
) -> Result<Option<HittingClique>, ExtendError> {
    let offensive = offensive_triangles(g, lists)?;
    if offensive.is_empty() {
        return Ok(Some(HittingClique::empty()));
    }
    let hits = |candidate: &[&VertexId]| {
        offensive
            .iter()
            .all(|t| t.iter().any(|tv| candidate.contains(&tv)))
    };

    for v in g.vertices() {
        if hits(&[v]) {
            return Ok(Some(HittingClique::from_vertices([v.clone()])));
        }
    }
    for e in g.edges() {
        let (u, v) = e.endpoints();
        if hits(&[u, v]) {
            return Ok(Some(HittingClique::from_vertices([u.clone(), v.clone()])));
        }
    }
    let triangles = g.enumerate_triangles();
    for t in &triangles {
        if hits(&[&t[0], &t[1], &t[2]]) {
            return Ok(Some(HittingClique::from_vertices(t.clone())));
        }
    }
    for t in &triangles {
        for w in g.neighbours(&t[2]) {
            if w > &t[2]
                && g.has_edge(&t[0], w)
                && g.has_edge(&t[1], w)
                && hits(&[&t[0], &t[1], &t[2], w])
            {
                return Ok(Some(HittingClique::from_vertices([
                    t[0].clone(),
                    t[1].clone(),
                    t[2].clone(),
                    w.clone(),
                ])));
            }
        }
    }
    Ok(None)
}

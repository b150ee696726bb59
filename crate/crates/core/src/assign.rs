//! Colour lists, correspondence matchings, and separation-profile validation.
//!
//! Colours are opaque string tokens under lexicographic order; in list
//! semantics the same token on two vertices means the same colour. A
//! correspondence assignment attaches to every edge a partial matching
//! between the endpoint lists; a colouring is proper when no edge's chosen
//! pair is matched.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{EdgeKey, PlaneGraph, VertexId};

/// A globally identified colour token.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Colour(String);

impl Colour {
    pub fn new(token: impl Into<String>) -> Self {
        Colour(token.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Colour {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for Colour {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

impl From<&str> for Colour {
    fn from(s: &str) -> Self {
        Colour(s.to_owned())
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum AssignError {
    #[error("no list for vertex {0}")]
    MissingList(VertexId),
    #[error("matching on non-edge {0}-{1}")]
    MatchingOnNonEdge(VertexId, VertexId),
    #[error("cannot pin {vertex} to {colour}: not in its list")]
    PinNotInList { vertex: VertexId, colour: Colour },
    #[error("invalid separation spec: l={l}, k={k} (need l >= 1)")]
    InvalidSpec { l: usize, k: usize },
}

/// The `(l, k)` profile a list or correspondence assignment is validated
/// against: minimum list size `l`, maximum edge intersection or matching
/// size `k`.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct SeparationSpec {
    pub l: usize,
    pub k: usize,
}

impl SeparationSpec {
    pub fn new(l: usize, k: usize) -> Result<Self, AssignError> {
        if l < 1 {
            return Err(AssignError::InvalidSpec { l, k });
        }
        Ok(SeparationSpec { l, k })
    }
}

/// A map from vertices to finite colour sets. Empty lists are representable;
/// they mean the vertex has no legal colour.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct ListAssignment {
    lists: BTreeMap<VertexId, BTreeSet<Colour>>,
}

/// One list-restriction step: drop a colour from a vertex's list, or pin the
/// vertex to a colour already in its list.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Restriction {
    Remove(VertexId, Colour),
    Pin(VertexId, Colour),
}

impl ListAssignment {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_entries(
        entries: impl IntoIterator<Item = (VertexId, BTreeSet<Colour>)>,
    ) -> Self {
        ListAssignment { lists: entries.into_iter().collect() }
    }

    pub fn insert(&mut self, v: VertexId, colours: impl IntoIterator<Item = Colour>) {
        self.lists.insert(v, colours.into_iter().collect());
    }

    pub fn get(&self, v: &VertexId) -> Option<&BTreeSet<Colour>> {
        self.lists.get(v)
    }

    pub fn list(&self, v: &VertexId) -> Result<&BTreeSet<Colour>, AssignError> {
        self.lists.get(v).ok_or_else(|| AssignError::MissingList(v.clone()))
    }

    pub fn iter(&self) -> impl Iterator<Item = (&VertexId, &BTreeSet<Colour>)> {
        self.lists.iter()
    }

    pub fn len(&self) -> usize {
        self.lists.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lists.is_empty()
    }

    pub fn covers(&self, g: &PlaneGraph) -> Result<(), AssignError> {
        for v in g.vertices() {
            if !self.lists.contains_key(v) {
                return Err(AssignError::MissingList(v.clone()));
            }
        }
        Ok(())
    }

    /// Vertices whose list is empty.
    pub fn empty_lists(&self) -> Vec<VertexId> {
        self.lists
            .iter()
            .filter(|(_, l)| l.is_empty())
            .map(|(v, _)| v.clone())
            .collect()
    }

    /// Apply removals and pins, returning the new assignment. Removing a
    /// colour a list does not contain is a no-op; removals may empty a list.
    pub fn restrict(&self, edits: &[Restriction]) -> Result<ListAssignment, AssignError> {
        let mut out = self.clone();
        for edit in edits {
            match edit {
                Restriction::Remove(v, c) => {
                    let list = out
                        .lists
                        .get_mut(v)
                        .ok_or_else(|| AssignError::MissingList(v.clone()))?;
                    list.remove(c);
                }
                Restriction::Pin(v, c) => {
                    let list = out
                        .lists
                        .get_mut(v)
                        .ok_or_else(|| AssignError::MissingList(v.clone()))?;
                    if !list.contains(c) {
                        return Err(AssignError::PinNotInList {
                            vertex: v.clone(),
                            colour: c.clone(),
                        });
                    }
                    list.clear();
                    list.insert(c.clone());
                }
            }
        }
        Ok(out)
    }
}

/// Validation findings for a list profile. `valid` holds exactly when both
/// violation lists are empty.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct ListProfileReport {
    pub valid: bool,
    pub undersized: Vec<(VertexId, usize)>,
    pub oversized_intersections: Vec<(VertexId, VertexId, usize)>,
}

/// Check every list size against `l` and every edge intersection against `k`.
pub fn validate_list_profile(
    g: &PlaneGraph,
    lists: &ListAssignment,
    spec: SeparationSpec,
) -> Result<ListProfileReport, AssignError> {
    lists.covers(g)?;
    let mut undersized = Vec::new();
    for v in g.vertices() {
        let size = lists.list(v)?.len();
        if size < spec.l {
            undersized.push((v.clone(), size));
        }
    }
    let mut oversized = Vec::new();
    for e in g.edges() {
        let (u, v) = e.endpoints();
        let shared = lists.list(u)?.intersection(lists.list(v)?).count();
        if shared > spec.k {
            oversized.push((u.clone(), v.clone(), shared));
        }
    }
    Ok(ListProfileReport {
        valid: undersized.is_empty() && oversized.is_empty(),
        undersized,
        oversized_intersections: oversized,
    })
}

/// Largest `|L(u) ∩ L(v)|` over the edges of `g`.
pub fn max_edge_intersection(
    g: &PlaneGraph,
    lists: &ListAssignment,
) -> Result<usize, AssignError> {
    let mut max = 0;
    for e in g.edges() {
        let (u, v) = e.endpoints();
        max = max.max(lists.list(u)?.intersection(lists.list(v)?).count());
    }
    Ok(max)
}

/// Triangles whose three lists share exactly two colours.
pub fn offensive_triangles(
    g: &PlaneGraph,
    lists: &ListAssignment,
) -> Result<Vec<[VertexId; 3]>, AssignError> {
    let mut out = Vec::new();
    for tri in g.enumerate_triangles() {
        let [a, b, c] = &tri;
        let ab: BTreeSet<&Colour> = lists.list(a)?.intersection(lists.list(b)?).collect();
        let lc = lists.list(c)?;
        let common = ab.iter().filter(|col| lc.contains(**col)).count();
        if common == 2 {
            out.push(tri);
        }
    }
    Ok(out)
}

/// A correspondence assignment: lists plus one partial matching per edge,
/// stored against the canonical edge orientation with pairs read as
/// `(colour at lo, colour at hi)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CorrespondenceAssignment {
    base: ListAssignment,
    matchings: BTreeMap<EdgeKey, BTreeSet<(Colour, Colour)>>,
}

/// Validation findings for a correspondence profile.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct CorrProfileReport {
    pub valid: bool,
    pub undersized: Vec<(VertexId, usize)>,
    pub oversized_matchings: Vec<(VertexId, VertexId, usize)>,
    /// Matchings that are not partial matchings of the endpoint lists: a
    /// repeated left or right colour, or a pair colour outside its list.
    pub malformed_matchings: Vec<(VertexId, VertexId, String)>,
}

impl CorrespondenceAssignment {
    pub fn new(base: ListAssignment) -> Self {
        CorrespondenceAssignment { base, matchings: BTreeMap::new() }
    }

    pub fn base(&self) -> &ListAssignment {
        &self.base
    }

    pub fn matchings(&self) -> impl Iterator<Item = (&EdgeKey, &BTreeSet<(Colour, Colour)>)> {
        self.matchings.iter()
    }

    /// Install the matching for an edge. Pairs are given in the orientation
    /// of `(u, v)` and flipped to canonical storage as needed.
    pub fn set_matching(
        &mut self,
        u: &VertexId,
        v: &VertexId,
        pairs: impl IntoIterator<Item = (Colour, Colour)>,
    ) {
        let key = EdgeKey::new(u, v);
        let flip = key.lo() != u;
        let stored: BTreeSet<(Colour, Colour)> = pairs
            .into_iter()
            .map(|(cu, cv)| if flip { (cv, cu) } else { (cu, cv) })
            .collect();
        self.matchings.insert(key, stored);
    }

    /// The matching of an edge in canonical orientation; absent means empty.
    pub fn matching(&self, e: &EdgeKey) -> Option<&BTreeSet<(Colour, Colour)>> {
        self.matchings.get(e)
    }

    /// Whether the pair `(colour at u, colour at v)` is forbidden.
    pub fn forbids(&self, u: &VertexId, cu: &Colour, v: &VertexId, cv: &Colour) -> bool {
        let key = EdgeKey::new(u, v);
        let Some(pairs) = self.matchings.get(&key) else {
            return false;
        };
        if key.lo() == u {
            pairs.contains(&(cu.clone(), cv.clone()))
        } else {
            pairs.contains(&(cv.clone(), cu.clone()))
        }
    }

    /// Drop a single matched pair (given in canonical orientation).
    pub fn remove_pair(&mut self, e: &EdgeKey, pair: &(Colour, Colour)) {
        if let Some(pairs) = self.matchings.get_mut(e) {
            pairs.remove(pair);
        }
    }

    /// Drop the whole matching of an edge, e.g. after an edge deletion.
    pub fn remove_edge_matching(&mut self, e: &EdgeKey) {
        self.matchings.remove(e);
    }

    /// True when every matched pair has the shape `(c, c)` with `c` present
    /// in both endpoint lists, i.e. the assignment is a sub-matching of the
    /// identity correspondence.
    pub fn is_sub_identity(&self) -> bool {
        self.matchings.iter().all(|(e, pairs)| {
            pairs.iter().all(|(cl, ch)| {
                cl == ch
                    && self.base.get(e.lo()).is_some_and(|l| l.contains(cl))
                    && self.base.get(e.hi()).is_some_and(|l| l.contains(ch))
            })
        })
    }
}

/// Check list sizes against `l`, matching sizes against `k`, and matching
/// shape (partial matching between the endpoint lists).
pub fn validate_corr_profile(
    g: &PlaneGraph,
    assignment: &CorrespondenceAssignment,
    spec: SeparationSpec,
) -> Result<CorrProfileReport, AssignError> {
    assignment.base.covers(g)?;
    for (e, _) in assignment.matchings() {
        if !g.has_edge(e.lo(), e.hi()) {
            return Err(AssignError::MatchingOnNonEdge(e.lo().clone(), e.hi().clone()));
        }
    }

    let mut undersized = Vec::new();
    for v in g.vertices() {
        let size = assignment.base.list(v)?.len();
        if size < spec.l {
            undersized.push((v.clone(), size));
        }
    }

    let mut oversized = Vec::new();
    let mut malformed = Vec::new();
    for (e, pairs) in assignment.matchings() {
        let (lo, hi) = e.endpoints();
        if pairs.len() > spec.k {
            oversized.push((lo.clone(), hi.clone(), pairs.len()));
        }
        let lo_list = assignment.base.list(lo)?;
        let hi_list = assignment.base.list(hi)?;
        let mut left = BTreeSet::new();
        let mut right = BTreeSet::new();
        for (cl, ch) in pairs {
            if !lo_list.contains(cl) {
                malformed.push((lo.clone(), hi.clone(), format!("{cl} not in list of {lo}")));
            }
            if !hi_list.contains(ch) {
                malformed.push((lo.clone(), hi.clone(), format!("{ch} not in list of {hi}")));
            }
            if !left.insert(cl.clone()) {
                malformed.push((lo.clone(), hi.clone(), format!("left colour {cl} repeated")));
            }
            if !right.insert(ch.clone()) {
                malformed.push((lo.clone(), hi.clone(), format!("right colour {ch} repeated")));
            }
        }
    }

    Ok(CorrProfileReport {
        valid: undersized.is_empty() && oversized.is_empty() && malformed.is_empty(),
        undersized,
        oversized_matchings: oversized,
        malformed_matchings: malformed,
    })
}

/// The correspondence assignment under which list colouring and
/// correspondence colouring coincide: every edge matches each shared colour
/// with itself.
pub fn identity_correspondence(
    g: &PlaneGraph,
    lists: &ListAssignment,
) -> Result<CorrespondenceAssignment, AssignError> {
    let mut out = CorrespondenceAssignment::new(lists.clone());
    for e in g.edges() {
        let (u, v) = e.endpoints();
        let shared: Vec<(Colour, Colour)> = lists
            .list(u)?
            .intersection(lists.list(v)?)
            .map(|c| (c.clone(), c.clone()))
            .collect();
        out.set_matching(u, v, shared);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::PlaneGraph;
    use std::collections::BTreeMap;

    fn v(s: &str) -> VertexId {
        VertexId::new(s)
    }

    fn c(s: &str) -> Colour {
        Colour::new(s)
    }

    fn cols(names: &[&str]) -> BTreeSet<Colour> {
        names.iter().map(|n| c(n)).collect()
    }

    fn single_vertex() -> PlaneGraph {
        PlaneGraph::build([v("a")], BTreeMap::new(), &[]).unwrap()
    }

    fn edge_graph() -> PlaneGraph {
        PlaneGraph::build(
            ["u", "v"].map(v),
            [(v("u"), vec![v("v")]), (v("v"), vec![v("u")])].into_iter().collect(),
            &[v("u"), v("v")],
        )
        .unwrap()
    }

    fn triangle() -> PlaneGraph {
        PlaneGraph::build(
            ["x", "y", "z"].map(v),
            [
                (v("x"), vec![v("y"), v("z")]),
                (v("y"), vec![v("z"), v("x")]),
                (v("z"), vec![v("x"), v("y")]),
            ]
            .into_iter()
            .collect(),
            &[v("x"), v("y")],
        )
        .unwrap()
    }

    #[test]
    fn single_vertex_with_four_colours_is_42_valid() {
        let g = single_vertex();
        let lists = ListAssignment::from_entries([(v("a"), cols(&["1", "2", "3", "4"]))]);
        let spec = SeparationSpec::new(4, 2).unwrap();
        assert!(validate_list_profile(&g, &lists, spec).unwrap().valid);
    }

    #[test]
    fn identical_four_lists_on_an_edge_violate_k2() {
        let g = edge_graph();
        let lists = ListAssignment::from_entries([
            (v("u"), cols(&["1", "2", "3", "4"])),
            (v("v"), cols(&["1", "2", "3", "4"])),
        ]);
        let spec = SeparationSpec::new(4, 2).unwrap();
        let report = validate_list_profile(&g, &lists, spec).unwrap();
        assert!(!report.valid);
        assert_eq!(report.oversized_intersections, vec![(v("u"), v("v"), 4)]);
    }

    #[test]
    fn missing_list_is_an_error() {
        let g = edge_graph();
        let lists = ListAssignment::from_entries([(v("u"), cols(&["1"]))]);
        let spec = SeparationSpec::new(1, 1).unwrap();
        assert_eq!(
            validate_list_profile(&g, &lists, spec).unwrap_err(),
            AssignError::MissingList(v("v"))
        );
    }

    #[test]
    fn offensive_triangle_detected_by_double_intersection() {
        let g = triangle();
        let lists = ListAssignment::from_entries([
            (v("x"), cols(&["1", "2", "3", "4"])),
            (v("y"), cols(&["1", "2", "5", "6"])),
            (v("z"), cols(&["1", "2", "7", "8"])),
        ]);
        assert_eq!(
            offensive_triangles(&g, &lists).unwrap(),
            vec![[v("x"), v("y"), v("z")]]
        );
    }

    #[test]
    fn triple_intersection_of_one_is_not_offensive() {
        let g = triangle();
        let lists = ListAssignment::from_entries([
            (v("x"), cols(&["1", "2", "3", "4"])),
            (v("y"), cols(&["1", "3", "5", "6"])),
            (v("z"), cols(&["2", "3", "7", "8"])),
        ]);
        assert!(offensive_triangles(&g, &lists).unwrap().is_empty());
    }

    #[test]
    fn triangle_free_graphs_have_no_offensive_triangles() {
        let g = edge_graph();
        let lists = ListAssignment::from_entries([
            (v("u"), cols(&["1", "2"])),
            (v("v"), cols(&["1", "2"])),
        ]);
        assert!(offensive_triangles(&g, &lists).unwrap().is_empty());
    }

    #[test]
    fn pin_restricts_to_a_singleton() {
        let lists = ListAssignment::from_entries([(v("a"), cols(&["1", "2", "3"]))]);
        let out = lists
            .restrict(&[Restriction::Pin(v("a"), c("1"))])
            .unwrap();
        assert_eq!(out.get(&v("a")).unwrap(), &cols(&["1"]));
    }

    #[test]
    fn removal_may_empty_a_list_and_is_flagged() {
        let lists = ListAssignment::from_entries([(v("a"), cols(&["5"]))]);
        let out = lists
            .restrict(&[Restriction::Remove(v("a"), c("5"))])
            .unwrap();
        assert_eq!(out.empty_lists(), vec![v("a")]);
    }

    #[test]
    fn removing_an_absent_colour_changes_nothing() {
        let lists = ListAssignment::from_entries([(v("a"), cols(&["1", "2"]))]);
        let out = lists
            .restrict(&[Restriction::Remove(v("a"), c("9"))])
            .unwrap();
        assert_eq!(out, lists);
    }

    #[test]
    fn pinning_an_absent_colour_errors() {
        let lists = ListAssignment::from_entries([(v("a"), cols(&["1", "2"]))]);
        let err = lists.restrict(&[Restriction::Pin(v("a"), c("9"))]).unwrap_err();
        assert_eq!(err, AssignError::PinNotInList { vertex: v("a"), colour: c("9") });
    }

    #[test]
    fn identity_correspondence_matches_shared_colours() {
        let g = edge_graph();
        let lists = ListAssignment::from_entries([
            (v("u"), cols(&["1", "2"])),
            (v("v"), cols(&["2", "3"])),
        ]);
        let corr = identity_correspondence(&g, &lists).unwrap();
        let e = EdgeKey::new(&v("u"), &v("v"));
        assert_eq!(corr.matching(&e).unwrap(), &[(c("2"), c("2"))].into());
        assert!(corr.is_sub_identity());
    }

    #[test]
    fn disjoint_lists_give_an_empty_identity_matching() {
        let g = edge_graph();
        let lists = ListAssignment::from_entries([
            (v("u"), cols(&["1", "2"])),
            (v("v"), cols(&["3", "4"])),
        ]);
        let corr = identity_correspondence(&g, &lists).unwrap();
        let e = EdgeKey::new(&v("u"), &v("v"));
        assert!(corr.matching(&e).unwrap().is_empty());
    }

    #[test]
    fn identity_on_a_triangle_with_shared_lists_has_three_pairs_per_edge() {
        let g = triangle();
        let lists = ListAssignment::from_entries([
            (v("x"), cols(&["1", "2", "3"])),
            (v("y"), cols(&["1", "2", "3"])),
            (v("z"), cols(&["1", "2", "3"])),
        ]);
        let corr = identity_correspondence(&g, &lists).unwrap();
        for (_, pairs) in corr.matchings() {
            assert_eq!(pairs.len(), 3);
        }
    }

    #[test]
    fn oversized_matching_fails_k2() {
        let g = edge_graph();
        let lists = ListAssignment::from_entries([
            (v("u"), cols(&["1", "2", "3", "4"])),
            (v("v"), cols(&["1", "2", "3", "4"])),
        ]);
        let mut corr = CorrespondenceAssignment::new(lists);
        corr.set_matching(
            &v("u"),
            &v("v"),
            [(c("1"), c("1")), (c("2"), c("2")), (c("3"), c("3"))],
        );
        let report =
            validate_corr_profile(&g, &corr, SeparationSpec::new(4, 2).unwrap()).unwrap();
        assert!(!report.valid);
        assert_eq!(report.oversized_matchings, vec![(v("u"), v("v"), 3)]);
    }

    #[test]
    fn repeated_left_colour_is_malformed() {
        let g = edge_graph();
        let lists = ListAssignment::from_entries([
            (v("u"), cols(&["1", "2"])),
            (v("v"), cols(&["1", "2"])),
        ]);
        let mut corr = CorrespondenceAssignment::new(lists);
        corr.set_matching(&v("u"), &v("v"), [(c("1"), c("1")), (c("1"), c("2"))]);
        let report =
            validate_corr_profile(&g, &corr, SeparationSpec::new(2, 2).unwrap()).unwrap();
        assert!(!report.valid);
        assert!(!report.malformed_matchings.is_empty());
    }

    #[test]
    fn matching_on_non_edge_is_an_error() {
        let g = single_vertex();
        let mut g2_vertices = vec![v("a"), v("b")];
        g2_vertices.sort();
        let g2 = PlaneGraph::build(g2_vertices, BTreeMap::new(), &[]).unwrap();
        drop(g);
        let lists = ListAssignment::from_entries([
            (v("a"), cols(&["1"])),
            (v("b"), cols(&["1"])),
        ]);
        let mut corr = CorrespondenceAssignment::new(lists);
        corr.set_matching(&v("a"), &v("b"), [(c("1"), c("1"))]);
        let err =
            validate_corr_profile(&g2, &corr, SeparationSpec::new(1, 1).unwrap()).unwrap_err();
        assert_eq!(err, AssignError::MatchingOnNonEdge(v("a"), v("b")));
    }

    #[test]
    fn forbids_respects_orientation() {
        let lists = ListAssignment::from_entries([
            (v("u"), cols(&["1", "2"])),
            (v("v"), cols(&["1", "2"])),
        ]);
        let mut corr = CorrespondenceAssignment::new(lists);
        // Pair given in (v, u) orientation; storage canonicalises.
        corr.set_matching(&v("v"), &v("u"), [(c("1"), c("2"))]);
        assert!(corr.forbids(&v("v"), &c("1"), &v("u"), &c("2")));
        assert!(corr.forbids(&v("u"), &c("2"), &v("v"), &c("1")));
        assert!(!corr.forbids(&v("u"), &c("1"), &v("v"), &c("2")));
    }

    #[test]
    fn restriction_never_creates_offensive_triangles_under_k2() {
        // With every edge intersection at most 2, a triple intersection is at
        // most 2 already, so removals can only shrink it below 2.
        let g = triangle();
        let lists = ListAssignment::from_entries([
            (v("x"), cols(&["1", "2", "3", "4"])),
            (v("y"), cols(&["1", "2", "5", "6"])),
            (v("z"), cols(&["3", "5", "7", "8"])),
        ]);
        let spec = SeparationSpec::new(4, 2).unwrap();
        assert!(validate_list_profile(&g, &lists, spec).unwrap().valid);
        let before = offensive_triangles(&g, &lists).unwrap();
        assert!(before.is_empty());
        for victim in ["x", "y", "z"] {
            for colour in ["1", "2", "3", "5"] {
                let out = lists
                    .restrict(&[Restriction::Remove(v(victim), c(colour))])
                    .unwrap();
                assert!(offensive_triangles(&g, &out).unwrap().is_empty());
            }
        }
    }
}

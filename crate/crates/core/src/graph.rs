//! Embedded plane graphs.
//!
//! A graph is given combinatorially: per vertex, the cyclic counterclockwise
//! order of its neighbours (a rotation system). Faces are obtained by tracing:
//! the step after a directed edge `(u, v)` is `(v, w)` where `w` follows `u`
//! in the rotation at `v`. Planarity is certified by the Euler relation on
//! the traced faces of every component that carries an edge, so construction
//! rejects rotation systems of positive genus.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// An opaque vertex identifier with a total (lexicographic) order.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexId(String);

impl VertexId {
    pub fn new(id: impl Into<String>) -> Self {
        VertexId(id.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

impl From<&str> for VertexId {
    fn from(s: &str) -> Self {
        VertexId(s.to_owned())
    }
}

/// A directed traversal of an edge.
pub type Step = (VertexId, VertexId);

/// An undirected edge in canonical orientation (`lo < hi`).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct EdgeKey {
    lo: VertexId,
    hi: VertexId,
}

impl EdgeKey {
    pub fn new(u: &VertexId, v: &VertexId) -> Self {
        if u <= v {
            EdgeKey { lo: u.clone(), hi: v.clone() }
        } else {
            EdgeKey { lo: v.clone(), hi: u.clone() }
        }
    }

    pub fn lo(&self) -> &VertexId {
        &self.lo
    }

    pub fn hi(&self) -> &VertexId {
        &self.hi
    }

    pub fn endpoints(&self) -> (&VertexId, &VertexId) {
        (&self.lo, &self.hi)
    }

    pub fn touches(&self, v: &VertexId) -> bool {
        &self.lo == v || &self.hi == v
    }

    /// The endpoint different from `v`, if `v` is an endpoint.
    pub fn other(&self, v: &VertexId) -> Option<&VertexId> {
        if &self.lo == v {
            Some(&self.hi)
        } else if &self.hi == v {
            Some(&self.lo)
        } else {
            None
        }
    }
}

impl fmt::Display for EdgeKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.lo, self.hi)
    }
}

/// A face of the embedding: the closed walk of directed steps that trace it.
/// The walk of the face an edgeless graph lives in is empty.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Face {
    steps: Vec<Step>,
}

impl Face {
    fn empty() -> Self {
        Face { steps: Vec::new() }
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn contains_step(&self, step: &Step) -> bool {
        self.steps.contains(step)
    }

    pub fn vertices(&self) -> BTreeSet<VertexId> {
        self.steps.iter().map(|(u, _)| u.clone()).collect()
    }

    pub fn edges(&self) -> BTreeSet<EdgeKey> {
        self.steps.iter().map(|(u, v)| EdgeKey::new(u, v)).collect()
    }

    pub fn contains_vertex(&self, v: &VertexId) -> bool {
        self.steps.iter().any(|(u, w)| u == v || w == v)
    }

    /// Rotate the step list so the minimal step comes first. Keeps face
    /// identity stable across re-traces.
    fn canonicalise(&mut self) {
        if let Some(min_pos) = self
            .steps
            .iter()
            .enumerate()
            .min_by(|a, b| a.1.cmp(b.1))
            .map(|(i, _)| i)
        {
            self.steps.rotate_left(min_pos);
        }
    }
}

/// The closed walk of the designated outer face.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BoundaryWalk {
    steps: Vec<Step>,
}

impl BoundaryWalk {
    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Vertices in walk order, one entry per step.
    pub fn vertex_seq(&self) -> Vec<VertexId> {
        self.steps.iter().map(|(u, _)| u.clone()).collect()
    }

    pub fn vertices(&self) -> BTreeSet<VertexId> {
        self.steps.iter().map(|(u, _)| u.clone()).collect()
    }

    pub fn edges(&self) -> BTreeSet<EdgeKey> {
        self.steps.iter().map(|(u, v)| EdgeKey::new(u, v)).collect()
    }

    pub fn contains(&self, v: &VertexId) -> bool {
        self.steps.iter().any(|(u, _)| u == v)
    }

    pub fn contains_edge(&self, e: &EdgeKey) -> bool {
        self.steps
            .iter()
            .any(|(u, v)| &EdgeKey::new(u, v) == e)
    }

    /// A walk is a cycle when it has at least three steps and visits no
    /// vertex twice. Two-connected graphs always satisfy this.
    pub fn is_cycle(&self) -> bool {
        if self.steps.len() < 3 {
            return false;
        }
        let seen: BTreeSet<_> = self.steps.iter().map(|(u, _)| u).collect();
        seen.len() == self.steps.len()
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("rotation at {at} lists {other}, but {other} does not list {at}")]
    AsymmetricRotation { at: VertexId, other: VertexId },
    #[error("rotation at {at} lists {neighbour} more than once")]
    DuplicateNeighbour { at: VertexId, neighbour: VertexId },
    #[error("rotation at {at} lists {at} itself")]
    LoopEdge { at: VertexId },
    #[error("rotation mentions unknown vertex {unknown}")]
    UnknownVertex { unknown: VertexId },
    #[error(
        "face tracing fails the Euler relation on the component of {witness}: \
         V={v}, E={e}, traced faces={f}"
    )]
    NotPlanarEmbedding { witness: VertexId, v: usize, e: usize, f: usize },
    #[error("outer hint does not identify a traced face: {0}")]
    UnknownOuterFace(String),
    #[error("the outer walk is not a cycle")]
    WalkNotCycle,
    #[error("{0} is not a cut vertex")]
    NotACutVertex(VertexId),
    #[error("{0}-{1} is not a chord of the outer cycle")]
    NotAChord(VertexId, VertexId),
    #[error("no such vertex or edge: {0}")]
    MissingItem(String),
    #[error("no face with id {0}")]
    UnknownFace(usize),
    #[error("embedding bookkeeping failed: {0}")]
    EmbeddingCorrupt(String),
}

/// How to pick the designated outer face when assembling a derived graph.
pub(crate) enum OuterChoice {
    /// The face whose walk covers all the given surviving steps. Falls back
    /// to the face containing the minimal listed step when no single face
    /// covers them (which only happens when a surgery disconnects the graph),
    /// and to `Minimal` when the list is empty.
    CoveringSteps(Vec<Step>),
    /// The minimal face whose walk passes through the vertex.
    ThroughVertex(VertexId),
    /// The face with the minimal first step.
    Minimal,
}

/// An immutable embedded plane graph. All operations are pure and return new
/// values, so graphs can be shared freely.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PlaneGraph {
    vertices: BTreeSet<VertexId>,
    rotation: BTreeMap<VertexId, Vec<VertexId>>,
    faces: Vec<Face>,
    outer: usize,
}

impl PlaneGraph {
    /// Build a graph from a rotation system and an outer-face hint.
    ///
    /// The hint is a directed-walk prefix (two or more vertices) lying on the
    /// outer face; it must be empty for edgeless graphs. Construction rejects
    /// asymmetric or duplicated rotation entries and any rotation system
    /// whose face tracing violates the Euler relation.
    pub fn build(
        vertices: impl IntoIterator<Item = VertexId>,
        rotation: BTreeMap<VertexId, Vec<VertexId>>,
        outer_hint: &[VertexId],
    ) -> Result<PlaneGraph, GraphError> {
        let vertices: BTreeSet<VertexId> = vertices.into_iter().collect();
        for (at, neighbours) in &rotation {
            if !vertices.contains(at) {
                return Err(GraphError::UnknownVertex { unknown: at.clone() });
            }
            let mut seen = BTreeSet::new();
            for n in neighbours {
                if n == at {
                    return Err(GraphError::LoopEdge { at: at.clone() });
                }
                if !vertices.contains(n) {
                    return Err(GraphError::UnknownVertex { unknown: n.clone() });
                }
                if !seen.insert(n.clone()) {
                    return Err(GraphError::DuplicateNeighbour {
                        at: at.clone(),
                        neighbour: n.clone(),
                    });
                }
            }
        }
        for (at, neighbours) in &rotation {
            for n in neighbours {
                let listed_back = rotation
                    .get(n)
                    .map(|back| back.contains(at))
                    .unwrap_or(false);
                if !listed_back {
                    return Err(GraphError::AsymmetricRotation {
                        at: at.clone(),
                        other: n.clone(),
                    });
                }
            }
        }

        let rotation = canonical_rotation(&vertices, rotation);
        let faces = trace_all_faces(&rotation);
        euler_check(&vertices, &rotation, &faces)?;
        let outer = resolve_outer_hint(&faces, outer_hint)?;
        Ok(PlaneGraph { vertices, rotation, faces, outer })
    }

    /// Assemble a graph whose rotation system is already known to be
    /// symmetric and duplicate free (restrictions of a validated graph).
    pub(crate) fn assemble(
        vertices: BTreeSet<VertexId>,
        rotation: BTreeMap<VertexId, Vec<VertexId>>,
        outer: OuterChoice,
    ) -> Result<PlaneGraph, GraphError> {
        let rotation = canonical_rotation(&vertices, rotation);
        let faces = trace_all_faces(&rotation);
        euler_check(&vertices, &rotation, &faces)?;
        let outer = resolve_outer_choice(&faces, outer)?;
        Ok(PlaneGraph { vertices, rotation, faces, outer })
    }

    pub fn vertices(&self) -> impl Iterator<Item = &VertexId> {
        self.vertices.iter()
    }

    pub fn vertex_set(&self) -> &BTreeSet<VertexId> {
        &self.vertices
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn has_vertex(&self, v: &VertexId) -> bool {
        self.vertices.contains(v)
    }

    pub fn neighbours(&self, v: &VertexId) -> &[VertexId] {
        self.rotation.get(v).map(|r| r.as_slice()).unwrap_or(&[])
    }

    pub fn degree(&self, v: &VertexId) -> usize {
        self.neighbours(v).len()
    }

    pub fn has_edge(&self, u: &VertexId, v: &VertexId) -> bool {
        self.neighbours(u).contains(v)
    }

    pub fn edges(&self) -> BTreeSet<EdgeKey> {
        let mut out = BTreeSet::new();
        for (u, neighbours) in &self.rotation {
            for v in neighbours {
                out.insert(EdgeKey::new(u, v));
            }
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.rotation.values().map(|r| r.len()).sum::<usize>() / 2
    }

    pub fn rotation(&self, v: &VertexId) -> &[VertexId] {
        self.neighbours(v)
    }

    /// The faces traced from the rotation system, in a deterministic order.
    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    /// Number of faces of the plane drawing. Components drawn side by side
    /// share one unbounded region, so for a graph with `W` traced walks and
    /// `K` edge-bearing components this is `W - K + 1`.
    pub fn face_count(&self) -> usize {
        let k = self.edge_bearing_component_count();
        if k == 0 {
            1
        } else {
            self.faces.len() - k + 1
        }
    }

    pub fn outer_face_id(&self) -> usize {
        self.outer
    }

    pub fn outer_face(&self) -> &Face {
        &self.faces[self.outer]
    }

    /// The closed walk of the designated outer face.
    pub fn outer_walk(&self) -> BoundaryWalk {
        BoundaryWalk { steps: self.faces[self.outer].steps.to_vec() }
    }

    /// The traced face carrying the directed step, if the edge exists.
    pub fn face_of_step(&self, step: &Step) -> Option<usize> {
        self.faces.iter().position(|f| f.contains_step(step))
    }

    /// Same rotation system with a different face designated as outer.
    pub fn reroot_outer_face(&self, face: usize) -> Result<PlaneGraph, GraphError> {
        if face >= self.faces.len() {
            return Err(GraphError::UnknownFace(face));
        }
        let mut g = self.clone();
        g.outer = face;
        Ok(g)
    }

    pub fn components(&self) -> Vec<BTreeSet<VertexId>> {
        let mut unseen: BTreeSet<VertexId> = self.vertices.clone();
        let mut out = Vec::new();
        while let Some(start) = unseen.iter().next().cloned() {
            let mut comp = BTreeSet::new();
            let mut stack = vec![start];
            while let Some(v) = stack.pop() {
                if !unseen.remove(&v) {
                    continue;
                }
                for n in self.neighbours(&v) {
                    if unseen.contains(n) {
                        stack.push(n.clone());
                    }
                }
                comp.insert(v);
            }
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    fn edge_bearing_component_count(&self) -> usize {
        self.components()
            .iter()
            .filter(|c| c.iter().any(|v| self.degree(v) > 0))
            .count()
    }

    /// Articulation points, computed by a depth-first lowpoint search.
    pub fn cut_vertices(&self) -> Vec<VertexId> {
        let verts: Vec<&VertexId> = self.vertices.iter().collect();
        let index: BTreeMap<&VertexId, usize> =
            verts.iter().enumerate().map(|(i, v)| (*v, i)).collect();
        let n = verts.len();
        let mut disc = vec![usize::MAX; n];
        let mut low = vec![0usize; n];
        let mut is_cut = vec![false; n];
        let mut timer = 0usize;

        // Iterative DFS; (vertex, parent, neighbour cursor).
        for root in 0..n {
            if disc[root] != usize::MAX {
                continue;
            }
            let mut stack: Vec<(usize, usize, usize)> = vec![(root, usize::MAX, 0)];
            let mut root_children = 0usize;
            disc[root] = timer;
            low[root] = timer;
            timer += 1;
            while let Some(&mut (v, parent, ref mut cursor)) = stack.last_mut() {
                let neighbours = self.neighbours(verts[v]);
                if *cursor < neighbours.len() {
                    let w = index[&neighbours[*cursor]];
                    *cursor += 1;
                    if disc[w] == usize::MAX {
                        disc[w] = timer;
                        low[w] = timer;
                        timer += 1;
                        if v == root {
                            root_children += 1;
                        }
                        stack.push((w, v, 0));
                    } else if w != parent {
                        low[v] = low[v].min(disc[w]);
                    }
                } else {
                    stack.pop();
                    if let Some(&mut (p, _, _)) = stack.last_mut() {
                        low[p] = low[p].min(low[v]);
                        if p != root && low[v] >= disc[p] {
                            is_cut[p] = true;
                        }
                    }
                }
            }
            if root_children >= 2 {
                is_cut[root] = true;
            }
        }
        verts
            .into_iter()
            .enumerate()
            .filter(|(i, _)| is_cut[*i])
            .map(|(_, v)| v.clone())
            .collect()
    }

    /// Edges joining two non-consecutive vertices of the outer cycle.
    pub fn find_chords(&self, walk: &BoundaryWalk) -> Result<Vec<EdgeKey>, GraphError> {
        if !walk.is_cycle() {
            return Err(GraphError::WalkNotCycle);
        }
        let seq = walk.vertex_seq();
        let pos: BTreeMap<&VertexId, usize> =
            seq.iter().enumerate().map(|(i, v)| (v, i)).collect();
        let k = seq.len();
        let mut chords = BTreeSet::new();
        for e in self.edges() {
            let (u, v) = e.endpoints();
            if let (Some(&i), Some(&j)) = (pos.get(u), pos.get(v)) {
                let consecutive = (i + 1) % k == j || (j + 1) % k == i;
                if !consecutive {
                    chords.insert(e.clone());
                }
            }
        }
        Ok(chords.into_iter().collect())
    }

    /// All 3-cliques, each once, with vertices in ascending order.
    pub fn enumerate_triangles(&self) -> Vec<[VertexId; 3]> {
        let mut out = Vec::new();
        for e in self.edges() {
            let (u, v) = e.endpoints();
            let nv: BTreeSet<&VertexId> = self.neighbours(v).iter().collect();
            for w in self.neighbours(u) {
                if w > v && nv.contains(w) {
                    out.push([u.clone(), v.clone(), w.clone()]);
                }
            }
        }
        out.sort();
        out
    }

    /// Restriction of the rotation system to a vertex subset, optionally
    /// dropping one edge.
    fn restricted_rotation(
        &self,
        keep: &BTreeSet<VertexId>,
        drop_edge: Option<&EdgeKey>,
    ) -> BTreeMap<VertexId, Vec<VertexId>> {
        let mut rot = BTreeMap::new();
        for v in keep {
            let list: Vec<VertexId> = self
                .neighbours(v)
                .iter()
                .filter(|n| keep.contains(*n))
                .filter(|n| match drop_edge {
                    Some(e) => EdgeKey::new(v, n) != *e,
                    None => true,
                })
                .cloned()
                .collect();
            rot.insert(v.clone(), list);
        }
        rot
    }

    /// Delete a vertex. The new outer face is the traced face whose walk
    /// carries all surviving steps of the old outer walk; if deletion
    /// disconnects the graph the face of the minimal surviving step is used.
    pub fn remove_vertex(&self, v: &VertexId) -> Result<PlaneGraph, GraphError> {
        if !self.has_vertex(v) {
            return Err(GraphError::MissingItem(v.to_string()));
        }
        let mut keep = self.vertices.clone();
        keep.remove(v);
        let rotation = self.restricted_rotation(&keep, None);
        let surviving = surviving_steps(self.outer_face().steps(), &keep, None);
        PlaneGraph::assemble(keep, rotation, OuterChoice::CoveringSteps(surviving))
    }

    /// Delete an edge, keeping both endpoints. Outer-face selection follows
    /// the same rule as vertex deletion.
    pub fn remove_edge(&self, u: &VertexId, v: &VertexId) -> Result<PlaneGraph, GraphError> {
        if !self.has_edge(u, v) {
            return Err(GraphError::MissingItem(format!("{u}-{v}")));
        }
        let e = EdgeKey::new(u, v);
        let rotation = self.restricted_rotation(&self.vertices, Some(&e));
        let surviving = surviving_steps(self.outer_face().steps(), &self.vertices, Some(&e));
        PlaneGraph::assemble(
            self.vertices.clone(),
            rotation,
            OuterChoice::CoveringSteps(surviving),
        )
    }

    /// Split at a cut vertex `u`: the first part is the branch holding the
    /// minimal neighbour of `u`, the second is the rest. Both parts keep `u`,
    /// inherit restricted rotations, and re-derive their outer faces from the
    /// surviving steps of the old outer walk (falling back to a face through
    /// `u` for a part the old outer walk does not touch).
    pub fn split_at_cut_vertex(
        &self,
        u: &VertexId,
    ) -> Result<(PlaneGraph, PlaneGraph), GraphError> {
        if !self.cut_vertices().contains(u) {
            return Err(GraphError::NotACutVertex(u.clone()));
        }
        let mut without = self.vertices.clone();
        without.remove(u);
        let rot_without = self.restricted_rotation(&without, None);
        let comps = components_of(&without, &rot_without);

        let min_neighbour = self
            .neighbours(u)
            .iter()
            .min()
            .cloned()
            .ok_or_else(|| GraphError::NotACutVertex(u.clone()))?;
        let side1: BTreeSet<VertexId> = comps
            .iter()
            .find(|c| c.contains(&min_neighbour))
            .cloned()
            .ok_or_else(|| GraphError::EmbeddingCorrupt("cut split lost a branch".into()))?;

        let mut v1: BTreeSet<VertexId> = side1;
        v1.insert(u.clone());
        let mut v2: BTreeSet<VertexId> =
            self.vertices.difference(&v1).cloned().collect();
        v2.insert(u.clone());

        let g1 = self.part(&v1, u)?;
        let g2 = self.part(&v2, u)?;
        Ok((g1, g2))
    }

    fn part(&self, keep: &BTreeSet<VertexId>, anchor: &VertexId) -> Result<PlaneGraph, GraphError> {
        let rotation = self.restricted_rotation(keep, None);
        let surviving = surviving_steps(self.outer_face().steps(), keep, None);
        let choice = if surviving.is_empty() {
            OuterChoice::ThroughVertex(anchor.clone())
        } else {
            OuterChoice::CoveringSteps(surviving)
        };
        PlaneGraph::assemble(keep.clone(), rotation, choice)
    }

    /// Split at a chord of the outer cycle. Both parts contain the chord on
    /// their outer walks. The first part is the one whose outer arc starts at
    /// the chord endpoint reached first when walking the outer cycle from its
    /// canonical start.
    pub fn split_at_chord(
        &self,
        vi: &VertexId,
        vj: &VertexId,
    ) -> Result<(PlaneGraph, PlaneGraph), GraphError> {
        let walk = self.outer_walk();
        let chords = self.find_chords(&walk)?;
        let chord = EdgeKey::new(vi, vj);
        if !chords.contains(&chord) {
            return Err(GraphError::NotAChord(vi.clone(), vj.clone()));
        }

        // Group the non-outer faces: two faces talk to each other when they
        // share an edge other than the chord. The chord's two sides seed the
        // two regions.
        let inner: Vec<usize> =
            (0..self.faces.len()).filter(|&f| f != self.outer).collect();
        let mut edge_faces: BTreeMap<EdgeKey, Vec<usize>> = BTreeMap::new();
        for &f in &inner {
            for e in self.faces[f].edges() {
                edge_faces.entry(e).or_default().push(f);
            }
        }
        let mut group = vec![usize::MAX; self.faces.len()];
        for (seed_step, label) in [
            ((vi.clone(), vj.clone()), 0usize),
            ((vj.clone(), vi.clone()), 1usize),
        ] {
            let seed = self
                .face_of_step(&seed_step)
                .ok_or_else(|| GraphError::EmbeddingCorrupt("chord side untraced".into()))?;
            if seed == self.outer {
                return Err(GraphError::NotAChord(vi.clone(), vj.clone()));
            }
            let mut stack = vec![seed];
            while let Some(f) = stack.pop() {
                if group[f] != usize::MAX {
                    continue;
                }
                group[f] = label;
                for e in self.faces[f].edges() {
                    if e == chord {
                        continue;
                    }
                    for &g in &edge_faces[&e] {
                        if group[g] == usize::MAX {
                            stack.push(g);
                        }
                    }
                }
            }
        }
        if inner.iter().any(|&f| group[f] == usize::MAX) {
            return Err(GraphError::EmbeddingCorrupt(
                "chord split did not reach every inner face".into(),
            ));
        }

        let side_vertices = |label: usize| -> BTreeSet<VertexId> {
            let mut vs: BTreeSet<VertexId> = inner
                .iter()
                .filter(|&&f| group[f] == label)
                .flat_map(|&f| self.faces[f].vertices())
                .collect();
            vs.insert(vi.clone());
            vs.insert(vj.clone());
            vs
        };

        // The part listed first is the side of the arc leaving vi along the
        // outer walk.
        let seq = walk.vertex_seq();
        let start = seq.iter().position(|v| v == vi).expect("chord endpoint on walk");
        let mut first_label = usize::MAX;
        for off in 1..seq.len() {
            let v = &seq[(start + off) % seq.len()];
            if v == vj {
                break;
            }
            // v is strictly inside the arc from vi; its reversed outer step
            // borders an inner face of the owning side.
            let prev = &seq[(start + off + seq.len() - 1) % seq.len()];
            let rev = (v.clone(), prev.clone());
            if let Some(f) = self.face_of_step(&rev) {
                if f != self.outer {
                    first_label = group[f];
                    break;
                }
            }
        }
        if first_label == usize::MAX {
            // Arc of length one step on each side cannot happen for a chord.
            return Err(GraphError::EmbeddingCorrupt("chord arc undetermined".into()));
        }

        let build_side = |label: usize| -> Result<PlaneGraph, GraphError> {
            let keep = side_vertices(label);
            let rotation = self.restricted_rotation(&keep, None);
            let surviving = surviving_steps(self.outer_face().steps(), &keep, None);
            PlaneGraph::assemble(keep, rotation, OuterChoice::CoveringSteps(surviving))
        };
        let g1 = build_side(first_label)?;
        let g2 = build_side(1 - first_label)?;
        Ok((g1, g2))
    }

    /// Delete a set of vertices and split the remainder into connected
    /// components, each one a plane graph whose outer face borders the region
    /// the deletion opened up. The merged region consists of all faces
    /// incident with a deleted vertex (including the old outer face when a
    /// deleted vertex lay on it); a component that never bordered that region
    /// keeps the old outer face if it owns it, and otherwise gets its minimal
    /// face. Components are returned in order of their minimal vertex.
    pub(crate) fn delete_and_split(
        &self,
        deleted: &[VertexId],
    ) -> Result<Vec<PlaneGraph>, GraphError> {
        for d in deleted {
            if !self.has_vertex(d) {
                return Err(GraphError::MissingItem(d.to_string()));
            }
        }
        let keep: BTreeSet<VertexId> = self
            .vertices
            .iter()
            .filter(|v| !deleted.contains(v))
            .cloned()
            .collect();
        let merged: Vec<Step> = {
            let mut steps = Vec::new();
            for face in &self.faces {
                if deleted.iter().any(|d| face.contains_vertex(d)) {
                    steps.extend_from_slice(face.steps());
                }
            }
            steps.sort();
            steps.dedup();
            surviving_from(&steps, &keep, None)
        };
        let old_outer = surviving_steps(self.outer_face().steps(), &keep, None);

        let rotation = self.restricted_rotation(&keep, None);
        let comps = components_of(&keep, &rotation);
        let mut out = Vec::new();
        for comp in comps {
            let rot = comps_rotation(&rotation, &comp);
            let in_comp = |steps: &[Step]| -> Vec<Step> {
                steps
                    .iter()
                    .filter(|(u, _)| comp.contains(u))
                    .cloned()
                    .collect()
            };
            let merged_here = in_comp(&merged);
            let outer_here = in_comp(&old_outer);
            let choice = if !merged_here.is_empty() {
                OuterChoice::CoveringSteps(merged_here)
            } else if !outer_here.is_empty() {
                OuterChoice::CoveringSteps(outer_here)
            } else {
                OuterChoice::Minimal
            };
            out.push(PlaneGraph::assemble(comp, rot, choice)?);
        }
        Ok(out)
    }

    /// Split a disconnected graph into its components. The component owning
    /// the designated outer face keeps it; every other component gets its
    /// minimal face.
    pub(crate) fn split_components(&self) -> Result<Vec<PlaneGraph>, GraphError> {
        let outer_steps = self.outer_face().steps().to_vec();
        let mut out = Vec::new();
        for comp in self.components() {
            let rot = comps_rotation(&self.rotation, &comp);
            let owned: Vec<Step> = outer_steps
                .iter()
                .filter(|(u, _)| comp.contains(u))
                .cloned()
                .collect();
            let choice = if owned.is_empty() {
                OuterChoice::Minimal
            } else {
                OuterChoice::CoveringSteps(owned)
            };
            out.push(PlaneGraph::assemble(comp, rot, choice)?);
        }
        Ok(out)
    }

    /// Induced embedded subgraph on a vertex subset.
    pub(crate) fn induced(
        &self,
        keep: &BTreeSet<VertexId>,
        outer: OuterChoice,
    ) -> Result<PlaneGraph, GraphError> {
        let rotation = self.restricted_rotation(keep, None);
        PlaneGraph::assemble(keep.clone(), rotation, outer)
    }

    /// Faces incident with `v`, by id.
    pub(crate) fn faces_at(&self, v: &VertexId) -> Vec<usize> {
        (0..self.faces.len())
            .filter(|&f| self.faces[f].contains_vertex(v))
            .collect()
    }
}

fn canonical_rotation(
    vertices: &BTreeSet<VertexId>,
    mut rotation: BTreeMap<VertexId, Vec<VertexId>>,
) -> BTreeMap<VertexId, Vec<VertexId>> {
    for v in vertices {
        rotation.entry(v.clone()).or_default();
    }
    for list in rotation.values_mut() {
        if let Some(min_pos) = list
            .iter()
            .enumerate()
            .min_by(|a, b| a.1.cmp(b.1))
            .map(|(i, _)| i)
        {
            list.rotate_left(min_pos);
        }
    }
    rotation
}

/// Trace every directed edge into its face walk: the step after `(u, v)` is
/// `(v, w)` with `w` the successor of `u` in the rotation at `v`. An edgeless
/// rotation system yields the single empty face.
fn trace_all_faces(rotation: &BTreeMap<VertexId, Vec<VertexId>>) -> Vec<Face> {
    let mut all_steps: Vec<Step> = Vec::new();
    for (u, neighbours) in rotation {
        for v in neighbours {
            all_steps.push((u.clone(), v.clone()));
        }
    }
    all_steps.sort();
    if all_steps.is_empty() {
        return vec![Face::empty()];
    }

    let mut used: BTreeSet<Step> = BTreeSet::new();
    let mut faces = Vec::new();
    for start in &all_steps {
        if used.contains(start) {
            continue;
        }
        let mut steps = Vec::new();
        let mut cur = start.clone();
        loop {
            used.insert(cur.clone());
            steps.push(cur.clone());
            let (u, v) = cur;
            let rot = &rotation[&v];
            let idx = rot
                .iter()
                .position(|n| *n == u)
                .expect("rotation symmetry was validated");
            let w = rot[(idx + 1) % rot.len()].clone();
            cur = (v, w);
            if cur == *start {
                break;
            }
        }
        let mut face = Face { steps };
        face.canonicalise();
        faces.push(face);
    }
    faces.sort_by(|a, b| a.steps.first().cmp(&b.steps.first()));
    faces
}

/// Per edge-bearing component, the traced walks must satisfy V - E + F = 2.
fn euler_check(
    vertices: &BTreeSet<VertexId>,
    rotation: &BTreeMap<VertexId, Vec<VertexId>>,
    faces: &[Face],
) -> Result<(), GraphError> {
    let comps = components_of(vertices, rotation);
    for comp in comps {
        let e: usize = comp.iter().map(|v| rotation[v].len()).sum::<usize>() / 2;
        if e == 0 {
            continue;
        }
        let f = faces
            .iter()
            .filter(|face| {
                face.steps
                    .first()
                    .map(|(u, _)| comp.contains(u))
                    .unwrap_or(false)
            })
            .count();
        let v = comp.len();
        if v + f != e + 2 {
            let witness = comp.iter().next().cloned().expect("component is non-empty");
            return Err(GraphError::NotPlanarEmbedding { witness, v, e, f });
        }
    }
    Ok(())
}

fn components_of(
    vertices: &BTreeSet<VertexId>,
    rotation: &BTreeMap<VertexId, Vec<VertexId>>,
) -> Vec<BTreeSet<VertexId>> {
    let mut unseen = vertices.clone();
    let mut out = Vec::new();
    while let Some(start) = unseen.iter().next().cloned() {
        let mut comp = BTreeSet::new();
        let mut stack = vec![start];
        while let Some(v) = stack.pop() {
            if !unseen.remove(&v) {
                continue;
            }
            if let Some(neighbours) = rotation.get(&v) {
                for n in neighbours {
                    if unseen.contains(n) {
                        stack.push(n.clone());
                    }
                }
            }
            comp.insert(v);
        }
        out.push(comp);
    }
    out
}

fn comps_rotation(
    rotation: &BTreeMap<VertexId, Vec<VertexId>>,
    comp: &BTreeSet<VertexId>,
) -> BTreeMap<VertexId, Vec<VertexId>> {
    comp.iter()
        .map(|v| (v.clone(), rotation[v].clone()))
        .collect()
}

fn surviving_steps(
    steps: &[Step],
    keep: &BTreeSet<VertexId>,
    drop_edge: Option<&EdgeKey>,
) -> Vec<Step> {
    surviving_from(steps, keep, drop_edge)
}

fn surviving_from(
    steps: &[Step],
    keep: &BTreeSet<VertexId>,
    drop_edge: Option<&EdgeKey>,
) -> Vec<Step> {
    steps
        .iter()
        .filter(|(u, v)| keep.contains(u) && keep.contains(v))
        .filter(|(u, v)| match drop_edge {
            Some(e) => EdgeKey::new(u, v) != *e,
            None => true,
        })
        .cloned()
        .collect()
}

fn resolve_outer_hint(faces: &[Face], hint: &[VertexId]) -> Result<usize, GraphError> {
    let edgeless = faces.len() == 1 && faces[0].is_empty();
    if edgeless {
        return if hint.is_empty() {
            Ok(0)
        } else {
            Err(GraphError::UnknownOuterFace(
                "graph has no edges, outer hint must be empty".into(),
            ))
        };
    }
    if hint.len() < 2 {
        return Err(GraphError::UnknownOuterFace(
            "outer hint needs at least one directed step".into(),
        ));
    }
    let first = (hint[0].clone(), hint[1].clone());
    let face = faces
        .iter()
        .position(|f| f.contains_step(&first))
        .ok_or_else(|| {
            GraphError::UnknownOuterFace(format!(
                "step {}->{} lies on no traced face",
                hint[0], hint[1]
            ))
        })?;
    // The whole hint must run along that face.
    let steps = faces[face].steps();
    let start = steps.iter().position(|s| *s == first).expect("found above");
    for (offset, pair) in hint.windows(2).enumerate() {
        let expect = &steps[(start + offset) % steps.len()];
        if expect.0 != pair[0] || expect.1 != pair[1] {
            return Err(GraphError::UnknownOuterFace(format!(
                "hint step {}->{} does not follow the traced walk",
                pair[0], pair[1]
            )));
        }
    }
    Ok(face)
}

fn resolve_outer_choice(faces: &[Face], choice: OuterChoice) -> Result<usize, GraphError> {
    match choice {
        OuterChoice::Minimal => Ok(0),
        OuterChoice::ThroughVertex(v) => (0..faces.len())
            .find(|&f| faces[f].contains_vertex(&v))
            .ok_or_else(|| {
                GraphError::EmbeddingCorrupt(format!("no face passes through {v}"))
            }),
        OuterChoice::CoveringSteps(steps) => {
            if steps.is_empty() {
                return Ok(0);
            }
            let min = steps.iter().min().expect("non-empty");
            let face = faces
                .iter()
                .position(|f| f.contains_step(min))
                .ok_or_else(|| {
                    GraphError::EmbeddingCorrupt(format!(
                        "step {}->{} lies on no traced face",
                        min.0, min.1
                    ))
                })?;
            Ok(face)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn v(s: &str) -> VertexId {
        VertexId::new(s)
    }

    pub(crate) fn rot(entries: &[(&str, &[&str])]) -> BTreeMap<VertexId, Vec<VertexId>> {
        entries
            .iter()
            .map(|(at, ns)| (v(at), ns.iter().map(|n| v(n)).collect()))
            .collect()
    }

    pub(crate) fn triangle() -> PlaneGraph {
        PlaneGraph::build(
            ["v0", "v1", "v2"].map(v),
            rot(&[("v0", &["v1", "v2"]), ("v1", &["v2", "v0"]), ("v2", &["v0", "v1"])]),
            &[v("v0"), v("v1")],
        )
        .unwrap()
    }

    fn path3() -> PlaneGraph {
        PlaneGraph::build(
            ["a", "b", "c"].map(v),
            rot(&[("a", &["b"]), ("b", &["a", "c"]), ("c", &["b"])]),
            &[v("a"), v("b")],
        )
        .unwrap()
    }

    pub(crate) fn c4() -> PlaneGraph {
        PlaneGraph::build(
            ["v0", "v1", "v2", "v3"].map(v),
            rot(&[
                ("v0", &["v1", "v3"]),
                ("v1", &["v2", "v0"]),
                ("v2", &["v3", "v1"]),
                ("v3", &["v0", "v2"]),
            ]),
            &[v("v0"), v("v1")],
        )
        .unwrap()
    }

    /// C4 with chord v0-v2 drawn inside: rotations place the chord between
    /// the two cycle neighbours at v0 and v2.
    pub(crate) fn c4_chord() -> PlaneGraph {
        PlaneGraph::build(
            ["v0", "v1", "v2", "v3"].map(v),
            rot(&[
                ("v0", &["v1", "v2", "v3"]),
                ("v1", &["v2", "v0"]),
                ("v2", &["v3", "v0", "v1"]),
                ("v3", &["v0", "v2"]),
            ]),
            &[v("v0"), v("v1")],
        )
        .unwrap()
    }

    #[test]
    fn triangle_has_two_faces_and_euler_holds() {
        let g = triangle();
        assert_eq!(g.faces().len(), 2);
        assert_eq!(g.face_count(), 2);
        assert_eq!(g.vertex_count(), 3);
        assert_eq!(g.edge_count(), 3);
        assert!(g.faces().iter().all(|f| f.len() == 3));
    }

    #[test]
    fn triangle_outer_walk_follows_hint() {
        let g = triangle();
        let seq = g.outer_walk().vertex_seq();
        assert_eq!(seq, vec![v("v0"), v("v1"), v("v2")]);
        assert!(g.outer_walk().is_cycle());
    }

    #[test]
    fn k5_circular_rotation_is_rejected() {
        // Vertices on a circle, each rotation the clockwise order of the
        // others as seen from the vertex. Tracing this rotation system
        // cannot satisfy the Euler relation.
        let names: Vec<VertexId> = (0..5).map(|i| v(&format!("v{i}"))).collect();
        let pos = |i: usize| {
            let a = std::f64::consts::TAU * (i as f64) / 5.0;
            (a.cos(), a.sin())
        };
        let mut rotation = BTreeMap::new();
        for i in 0..5 {
            let (xi, yi) = pos(i);
            let mut others: Vec<usize> = (0..5).filter(|&j| j != i).collect();
            others.sort_by(|&a, &b| {
                let (xa, ya) = pos(a);
                let (xb, yb) = pos(b);
                let aa = (ya - yi).atan2(xa - xi);
                let ab = (yb - yi).atan2(xb - xi);
                ab.partial_cmp(&aa).unwrap()
            });
            rotation.insert(
                names[i].clone(),
                others.into_iter().map(|j| names[j].clone()).collect::<Vec<_>>(),
            );
        }
        let err = PlaneGraph::build(names.clone(), rotation, &[names[0].clone(), names[1].clone()])
            .unwrap_err();
        assert!(matches!(err, GraphError::NotPlanarEmbedding { .. }));
    }

    #[test]
    fn two_disjoint_edges_pass_the_disconnected_euler_relation() {
        let g = PlaneGraph::build(
            ["a", "b", "c", "d"].map(v),
            rot(&[("a", &["b"]), ("b", &["a"]), ("c", &["d"]), ("d", &["c"])]),
            &[v("a"), v("b")],
        )
        .unwrap();
        // V - E + F = 4 - 2 + 1 = 3 = 1 + C with C = 2.
        assert_eq!(g.face_count(), 1);
        assert_eq!(g.components().len(), 2);
    }

    #[test]
    fn path_of_two_edges_has_one_face_of_length_four() {
        let g = path3();
        assert_eq!(g.faces().len(), 1);
        assert_eq!(g.faces()[0].len(), 4);
    }

    #[test]
    fn single_vertex_has_empty_outer_walk() {
        let g = PlaneGraph::build([v("a")], BTreeMap::new(), &[]).unwrap();
        assert!(g.outer_walk().is_empty());
        assert_eq!(g.face_count(), 1);
    }

    #[test]
    fn empty_graph_is_legal() {
        let g = PlaneGraph::build([], BTreeMap::new(), &[]).unwrap();
        assert_eq!(g.vertex_count(), 0);
        assert_eq!(g.face_count(), 1);
        assert!(g.outer_walk().is_empty());
    }

    #[test]
    fn asymmetric_rotation_is_rejected() {
        let err = PlaneGraph::build(
            ["a", "b"].map(v),
            [(v("a"), vec![v("b")]), (v("b"), vec![])].into_iter().collect(),
            &[v("a"), v("b")],
        )
        .unwrap_err();
        assert!(matches!(err, GraphError::AsymmetricRotation { .. }));
    }

    #[test]
    fn duplicate_neighbour_is_rejected() {
        let err = PlaneGraph::build(
            ["a", "b"].map(v),
            [(v("a"), vec![v("b"), v("b")]), (v("b"), vec![v("a")])]
                .into_iter()
                .collect(),
            &[v("a"), v("b")],
        )
        .unwrap_err();
        assert!(matches!(err, GraphError::DuplicateNeighbour { .. }));
    }

    #[test]
    fn bad_outer_hint_is_rejected() {
        let err = PlaneGraph::build(
            ["a", "b"].map(v),
            rot(&[("a", &["b"]), ("b", &["a"])]),
            &[v("a")],
        )
        .unwrap_err();
        assert!(matches!(err, GraphError::UnknownOuterFace(_)));
    }

    #[test]
    fn face_walk_lengths_sum_to_twice_the_edges() {
        for g in [triangle(), path3(), c4(), c4_chord()] {
            let total: usize = g.faces().iter().map(|f| f.len()).sum();
            assert_eq!(total, 2 * g.edge_count());
        }
    }

    #[test]
    fn cut_vertices_of_shared_triangle_pair() {
        // Two triangles sharing vertex u (bowtie).
        let g = bowtie();
        assert_eq!(g.cut_vertices(), vec![v("u")]);
    }

    pub(crate) fn bowtie() -> PlaneGraph {
        PlaneGraph::build(
            ["a", "b", "c", "d", "u"].map(v),
            rot(&[
                ("a", &["b", "u"]),
                ("b", &["u", "a"]),
                ("u", &["a", "b", "c", "d"]),
                ("c", &["d", "u"]),
                ("d", &["u", "c"]),
            ]),
            &[v("a"), v("b")],
        )
        .unwrap()
    }

    #[test]
    fn cycles_have_no_cut_vertices() {
        assert!(c4().cut_vertices().is_empty());
        assert!(triangle().cut_vertices().is_empty());
    }

    #[test]
    fn middle_of_path_is_a_cut_vertex() {
        assert_eq!(path3().cut_vertices(), vec![v("b")]);
    }

    #[test]
    fn chords_of_c4_with_diagonal() {
        let g = c4_chord();
        let walk = g.outer_walk();
        assert_eq!(
            g.find_chords(&walk).unwrap(),
            vec![EdgeKey::new(&v("v0"), &v("v2"))]
        );
    }

    #[test]
    fn chordless_c5_has_no_chords() {
        let g = PlaneGraph::build(
            ["v0", "v1", "v2", "v3", "v4"].map(v),
            rot(&[
                ("v0", &["v1", "v4"]),
                ("v1", &["v2", "v0"]),
                ("v2", &["v3", "v1"]),
                ("v3", &["v4", "v2"]),
                ("v4", &["v0", "v3"]),
            ]),
            &[v("v0"), v("v1")],
        )
        .unwrap();
        assert!(g.find_chords(&g.outer_walk()).unwrap().is_empty());
    }

    #[test]
    fn find_chords_rejects_non_cycle_walks() {
        let g = path3();
        assert_eq!(g.find_chords(&g.outer_walk()).unwrap_err(), GraphError::WalkNotCycle);
    }

    #[test]
    fn split_bowtie_at_cut_vertex() {
        let g = bowtie();
        let (g1, g2) = g.split_at_cut_vertex(&v("u")).unwrap();
        assert_eq!(g1.vertex_count() + g2.vertex_count(), g.vertex_count() + 1);
        assert_eq!(g1.edge_count() + g2.edge_count(), g.edge_count());
        assert_eq!(g1.vertex_count(), 3);
        assert_eq!(g2.vertex_count(), 3);
        assert!(g1.has_vertex(&v("a")) && g1.has_vertex(&v("b")));
        assert!(g2.has_vertex(&v("c")) && g2.has_vertex(&v("d")));
    }

    #[test]
    fn split_path_at_cut_vertex() {
        let g = path3();
        let (g1, g2) = g.split_at_cut_vertex(&v("b")).unwrap();
        assert_eq!(g1.edges(), [EdgeKey::new(&v("a"), &v("b"))].into());
        assert_eq!(g2.edges(), [EdgeKey::new(&v("b"), &v("c"))].into());
    }

    #[test]
    fn split_triangle_with_pendant_edge() {
        let g = PlaneGraph::build(
            ["a", "b", "u", "p"].map(v),
            rot(&[
                ("a", &["b", "u"]),
                ("b", &["u", "a"]),
                ("u", &["a", "b", "p"]),
                ("p", &["u"]),
            ]),
            &[v("a"), v("b")],
        )
        .unwrap();
        let (g1, g2) = g.split_at_cut_vertex(&v("u")).unwrap();
        assert_eq!(g1.vertex_count(), 3);
        assert_eq!(g2.edges(), [EdgeKey::new(&v("p"), &v("u"))].into());
    }

    #[test]
    fn split_at_cut_vertex_rejects_ordinary_vertices() {
        let err = c4().split_at_cut_vertex(&v("v0")).unwrap_err();
        assert_eq!(err, GraphError::NotACutVertex(v("v0")));
    }

    #[test]
    fn split_c4_at_chord_gives_two_triangles() {
        let g = c4_chord();
        let (g1, g2) = g.split_at_chord(&v("v0"), &v("v2")).unwrap();
        assert_eq!(g1.vertex_count() + g2.vertex_count(), g.vertex_count() + 2);
        assert_eq!(g1.edge_count() + g2.edge_count(), g.edge_count() + 1);
        for part in [&g1, &g2] {
            assert_eq!(part.vertex_count(), 3);
            assert_eq!(part.edge_count(), 3);
            assert!(part.has_edge(&v("v0"), &v("v2")));
            assert!(part.outer_walk().contains_edge(&EdgeKey::new(&v("v0"), &v("v2"))));
        }
    }

    #[test]
    fn split_c6_at_long_chord_gives_two_quadrilaterals() {
        let g = PlaneGraph::build(
            ["v0", "v1", "v2", "v3", "v4", "v5"].map(v),
            rot(&[
                ("v0", &["v1", "v3", "v5"]),
                ("v1", &["v2", "v0"]),
                ("v2", &["v3", "v1"]),
                ("v3", &["v4", "v0", "v2"]),
                ("v4", &["v5", "v3"]),
                ("v5", &["v0", "v4"]),
            ]),
            &[v("v0"), v("v1")],
        )
        .unwrap();
        let (g1, g2) = g.split_at_chord(&v("v0"), &v("v3")).unwrap();
        assert_eq!(g1.vertex_count(), 4);
        assert_eq!(g2.vertex_count(), 4);
        assert_eq!(g1.edge_count(), 4);
        assert_eq!(g2.edge_count(), 4);
    }

    #[test]
    fn split_c5_at_chord_gives_triangle_and_quadrilateral() {
        let g = PlaneGraph::build(
            ["v0", "v1", "v2", "v3", "v4"].map(v),
            rot(&[
                ("v0", &["v1", "v2", "v4"]),
                ("v1", &["v2", "v0"]),
                ("v2", &["v3", "v0", "v1"]),
                ("v3", &["v4", "v2"]),
                ("v4", &["v0", "v3"]),
            ]),
            &[v("v0"), v("v1")],
        )
        .unwrap();
        let (g1, g2) = g.split_at_chord(&v("v0"), &v("v2")).unwrap();
        let mut sizes = [g1.vertex_count(), g2.vertex_count()];
        sizes.sort();
        assert_eq!(sizes, [3, 4]);
    }

    #[test]
    fn split_at_chord_rejects_cycle_edges() {
        let g = c4_chord();
        let err = g.split_at_chord(&v("v0"), &v("v1")).unwrap_err();
        assert_eq!(err, GraphError::NotAChord(v("v0"), v("v1")));
    }

    #[test]
    fn remove_vertex_from_triangle_leaves_an_edge() {
        let g = triangle();
        let h = g.remove_vertex(&v("v2")).unwrap();
        assert_eq!(h.vertex_count(), 2);
        assert_eq!(h.edge_count(), 1);
        assert!(h.outer_walk().contains(&v("v0")));
    }

    #[test]
    fn remove_edge_from_c4_leaves_a_single_face() {
        let g = c4();
        let h = g.remove_edge(&v("v1"), &v("v2")).unwrap();
        assert_eq!(h.edge_count(), 3);
        assert_eq!(h.faces().len(), 1);
        assert_eq!(h.face_count(), 1);
    }

    #[test]
    fn remove_missing_item_errors() {
        let g = triangle();
        assert!(matches!(g.remove_vertex(&v("zz")), Err(GraphError::MissingItem(_))));
        assert!(matches!(
            g.remove_edge(&v("v0"), &v("zz")),
            Err(GraphError::MissingItem(_))
        ));
    }

    #[test]
    fn removal_keeps_remaining_rotations_intact() {
        let g = c4_chord();
        let h = g.remove_vertex(&v("v1")).unwrap();
        for u in h.vertices() {
            let expect: Vec<&VertexId> =
                g.neighbours(u).iter().filter(|n| **n != v("v1")).collect();
            let got: Vec<&VertexId> = h.neighbours(u).iter().collect();
            // Same cyclic order; both lists are canonicalised to start at the
            // minimal entry, so plain equality applies.
            assert_eq!(got, expect, "rotation at {u} changed beyond the deletion");
        }
    }

    #[test]
    fn reroot_triangle_keeps_vertex_set_of_walk() {
        let g = triangle();
        let other = 1 - g.outer_face_id();
        let h = g.reroot_outer_face(other).unwrap();
        assert_eq!(g.outer_walk().vertices(), h.outer_walk().vertices());
    }

    #[test]
    fn reroot_c4_chord_to_triangle_face() {
        let g = c4_chord();
        let tri = (0..g.faces().len())
            .find(|&f| f != g.outer_face_id() && g.faces()[f].len() == 3)
            .unwrap();
        let h = g.reroot_outer_face(tri).unwrap();
        assert_eq!(h.outer_walk().vertices().len(), 3);
    }

    #[test]
    fn reroot_rejects_unknown_faces() {
        assert!(matches!(
            triangle().reroot_outer_face(99),
            Err(GraphError::UnknownFace(99))
        ));
    }

    #[test]
    fn wheel_hub_deletion_exposes_every_neighbour() {
        // Wheel W5: hub h joined to a 5-cycle. Deleting the hub and rerooting
        // to the merged face puts all former neighbours on the outer walk.
        let g = PlaneGraph::build(
            ["h", "r0", "r1", "r2", "r3", "r4"].map(v),
            rot(&[
                ("h", &["r0", "r1", "r2", "r3", "r4"]),
                ("r0", &["r1", "h", "r4"]),
                ("r1", &["r2", "h", "r0"]),
                ("r2", &["r3", "h", "r1"]),
                ("r3", &["r4", "h", "r2"]),
                ("r4", &["r0", "h", "r3"]),
            ]),
            &[v("r0"), v("r1")],
        )
        .unwrap();
        let hub_faces = g.faces_at(&v("h"));
        let h = g.remove_vertex(&v("h")).unwrap();
        // The merged face is the one covering the surviving steps of the old
        // hub faces.
        let mut merged_steps: Vec<Step> = Vec::new();
        for f in hub_faces {
            merged_steps.extend(
                g.faces()[f]
                    .steps()
                    .iter()
                    .filter(|(a, b)| *a != v("h") && *b != v("h"))
                    .cloned(),
            );
        }
        let merged = h.face_of_step(&merged_steps[0]).unwrap();
        let rerooted = h.reroot_outer_face(merged).unwrap();
        for r in ["r0", "r1", "r2", "r3", "r4"] {
            assert!(rerooted.outer_walk().contains(&v(r)));
        }
    }

    #[test]
    fn triangles_of_c5_and_k4() {
        let c5 = PlaneGraph::build(
            ["v0", "v1", "v2", "v3", "v4"].map(v),
            rot(&[
                ("v0", &["v1", "v4"]),
                ("v1", &["v2", "v0"]),
                ("v2", &["v3", "v1"]),
                ("v3", &["v4", "v2"]),
                ("v4", &["v0", "v3"]),
            ]),
            &[v("v0"), v("v1")],
        )
        .unwrap();
        assert!(c5.enumerate_triangles().is_empty());

        let k4 = k4();
        assert_eq!(k4.enumerate_triangles().len(), 4);
    }

    pub(crate) fn k4() -> PlaneGraph {
        // Outer triangle a, b, c with centre m.
        PlaneGraph::build(
            ["a", "b", "c", "m"].map(v),
            rot(&[
                ("a", &["b", "m", "c"]),
                ("b", &["c", "m", "a"]),
                ("c", &["a", "m", "b"]),
                ("m", &["a", "b", "c"]),
            ]),
            &[v("a"), v("b")],
        )
        .unwrap()
    }

    #[test]
    fn k4_is_a_valid_embedding() {
        let g = k4();
        assert_eq!(g.faces().len(), 4);
        assert!(g.faces().iter().all(|f| f.len() == 3));
    }

    #[test]
    fn triangle_enumeration_agrees_with_brute_force() {
        for g in [triangle(), c4_chord(), k4(), bowtie()] {
            let vs: Vec<VertexId> = g.vertices().cloned().collect();
            let mut brute = Vec::new();
            for i in 0..vs.len() {
                for j in i + 1..vs.len() {
                    for k in j + 1..vs.len() {
                        if g.has_edge(&vs[i], &vs[j])
                            && g.has_edge(&vs[j], &vs[k])
                            && g.has_edge(&vs[i], &vs[k])
                        {
                            brute.push([vs[i].clone(), vs[j].clone(), vs[k].clone()]);
                        }
                    }
                }
            }
            brute.sort();
            assert_eq!(g.enumerate_triangles(), brute);
        }
    }
}

//! Exact decision and enumeration for both colouring semantics.
//!
//! The solver is a deterministic backtracking search: variable order is
//! minimum remaining domain with ties broken by vertex token order, values
//! are tried in colour token order, and the residual constraint graph is
//! split into connected components before search and whenever an assignment
//! disconnects it, so independent subproblems never thrash each other. A node
//! budget turns truncation into an explicit outcome rather than a wrong
//! answer.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::assign::{
    AssignError, Colour, CorrespondenceAssignment, ListAssignment,
};
use crate::graph::{PlaneGraph, VertexId};

/// A total assignment of colours to vertices.
#[derive(Clone, PartialEq, Eq, Debug, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Colouring(BTreeMap<VertexId, Colour>);

impl Colouring {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_entries(entries: impl IntoIterator<Item = (VertexId, Colour)>) -> Self {
        Colouring(entries.into_iter().collect())
    }

    pub fn set(&mut self, v: VertexId, c: Colour) {
        self.0.insert(v, c);
    }

    pub fn get(&self, v: &VertexId) -> Option<&Colour> {
        self.0.get(v)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&VertexId, &Colour)> {
        self.0.iter()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Merge another colouring into this one. Overlapping vertices must
    /// agree; disagreement is a caller bug.
    pub fn merge(&mut self, other: &Colouring) {
        for (v, c) in other.iter() {
            let old = self.0.insert(v.clone(), c.clone());
            debug_assert!(old.is_none() || old.as_ref() == Some(c));
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SolveError {
    #[error(transparent)]
    Assign(#[from] AssignError),
    #[error("colouring misses vertex {0}")]
    PartialColouring(VertexId),
    #[error("more than {limit} colourings exist")]
    LimitExceeded { limit: usize },
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SearchStatus {
    Colourable,
    NotColourable,
    /// The node budget ran out before the search finished; no claim is made
    /// either way.
    BudgetExceeded,
}

/// Result of a complete (or budget-cut) search.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SearchOutcome {
    pub status: SearchStatus,
    pub witness: Option<Colouring>,
    pub nodes: u64,
}

/// Outcome of checking a colouring: the violated edges and any vertex
/// coloured outside its list.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct CheckReport {
    pub proper: bool,
    pub conflicting_edges: Vec<(VertexId, VertexId)>,
    pub off_list: Vec<VertexId>,
}

fn check_common(
    g: &PlaneGraph,
    lists: &ListAssignment,
    colouring: &Colouring,
    forbidden: impl Fn(&VertexId, &Colour, &VertexId, &Colour) -> bool,
) -> Result<CheckReport, SolveError> {
    for v in g.vertices() {
        if colouring.get(v).is_none() {
            return Err(SolveError::PartialColouring(v.clone()));
        }
    }
    let mut off_list = Vec::new();
    for v in g.vertices() {
        let c = colouring.get(v).expect("checked total above");
        if !lists.list(v).map_err(SolveError::Assign)?.contains(c) {
            off_list.push(v.clone());
        }
    }
    let mut conflicts = Vec::new();
    for e in g.edges() {
        let (u, v) = e.endpoints();
        let cu = colouring.get(u).expect("total");
        let cv = colouring.get(v).expect("total");
        if forbidden(u, cu, v, cv) {
            conflicts.push((u.clone(), v.clone()));
        }
    }
    Ok(CheckReport {
        proper: conflicts.is_empty() && off_list.is_empty(),
        conflicting_edges: conflicts,
        off_list,
    })
}

/// Check a total colouring under list semantics: adjacent vertices must not
/// carry the same token.
pub fn check_list(
    g: &PlaneGraph,
    lists: &ListAssignment,
    colouring: &Colouring,
) -> Result<CheckReport, SolveError> {
    check_common(g, lists, colouring, |_, cu, _, cv| cu == cv)
}

/// Check a total colouring under correspondence semantics: no edge's chosen
/// pair may lie in its matching.
pub fn check_corr(
    g: &PlaneGraph,
    assignment: &CorrespondenceAssignment,
    colouring: &Colouring,
) -> Result<CheckReport, SolveError> {
    check_common(g, assignment.base(), colouring, |u, cu, v, cv| {
        assignment.forbids(u, cu, v, cv)
    })
}

/// Pruning rule of the active semantics, on the indexed representation.
enum Pruning {
    /// Same token is forbidden across an edge.
    List,
    /// `partners[(i, j)][c]` is the colour forbidden at `j` once `i` takes
    /// `c`, if any. Partial matchings forbid at most one partner per colour.
    Corr { partners: HashMap<(usize, usize), Vec<Option<usize>>> },
}

/// One reversible mutation of the search state.
enum TrailEntry {
    /// `colour` was removed from `vertex`'s domain at `pos`.
    Removed { vertex: usize, colour: usize, pos: usize },
    Assigned { vertex: usize },
}

struct Search<'a> {
    verts: Vec<&'a VertexId>,
    colours: Vec<&'a Colour>,
    adj: Vec<Vec<usize>>,
    domains: Vec<Vec<usize>>,
    assignment: Vec<Option<usize>>,
    trail: Vec<TrailEntry>,
    pruning: Pruning,
    nodes: u64,
    budget: u64,
}

enum SearchResult {
    Sat,
    Unsat,
    OutOfBudget,
}

impl<'a> Search<'a> {
    fn new(
        g: &'a PlaneGraph,
        lists: &'a ListAssignment,
        corr: Option<&'a CorrespondenceAssignment>,
        budget: u64,
    ) -> Result<Self, SolveError> {
        lists.covers(g)?;
        let verts: Vec<&VertexId> = g.vertices().collect();
        let vindex: BTreeMap<&VertexId, usize> =
            verts.iter().enumerate().map(|(i, v)| (*v, i)).collect();

        let mut palette: BTreeSet<&Colour> = BTreeSet::new();
        for (_, list) in lists.iter() {
            palette.extend(list.iter());
        }
        let colours: Vec<&Colour> = palette.into_iter().collect();
        let cindex: BTreeMap<&Colour, usize> =
            colours.iter().enumerate().map(|(i, c)| (*c, i)).collect();

        let adj: Vec<Vec<usize>> = verts
            .iter()
            .map(|v| {
                let mut ns: Vec<usize> =
                    g.neighbours(v).iter().map(|n| vindex[n]).collect();
                ns.sort_unstable();
                ns
            })
            .collect();
        let domains: Vec<Vec<usize>> = verts
            .iter()
            .map(|v| lists.get(v).expect("covers checked").iter().map(|c| cindex[c]).collect())
            .collect();

        let pruning = match corr {
            None => Pruning::List,
            Some(a) => {
                for (e, _) in a.matchings() {
                    if !g.has_edge(e.lo(), e.hi()) {
                        return Err(SolveError::Assign(AssignError::MatchingOnNonEdge(
                            e.lo().clone(),
                            e.hi().clone(),
                        )));
                    }
                }
                let mut partners: HashMap<(usize, usize), Vec<Option<usize>>> = HashMap::new();
                for (e, pairs) in a.matchings() {
                    let lo = vindex[e.lo()];
                    let hi = vindex[e.hi()];
                    let mut fwd = vec![None; colours.len()];
                    let mut bwd = vec![None; colours.len()];
                    for (cl, ch) in pairs {
                        // Pairs may mention colours outside the global list
                        // palette only if the lists omit them; such pairs can
                        // never fire.
                        if let (Some(&il), Some(&ih)) = (cindex.get(cl), cindex.get(ch)) {
                            fwd[il] = Some(ih);
                            bwd[ih] = Some(il);
                        }
                    }
                    partners.insert((lo, hi), fwd);
                    partners.insert((hi, lo), bwd);
                }
                Pruning::Corr { partners }
            }
        };

        Ok(Search {
            assignment: vec![None; verts.len()],
            domains,
            adj,
            verts,
            colours,
            trail: Vec::new(),
            pruning,
            nodes: 0,
            budget,
        })
    }

    fn assign(&mut self, vertex: usize, colour: usize) {
        self.assignment[vertex] = Some(colour);
        self.trail.push(TrailEntry::Assigned { vertex });
    }

    /// Remove `colour` from the domain of `vertex` if present; returns true
    /// when the domain became empty.
    fn prune(&mut self, vertex: usize, colour: usize) -> bool {
        if let Ok(pos) = self.domains[vertex].binary_search(&colour) {
            self.domains[vertex].remove(pos);
            self.trail.push(TrailEntry::Removed { vertex, colour, pos });
            self.domains[vertex].is_empty()
        } else {
            false
        }
    }

    fn rewind(&mut self, checkpoint: usize) {
        while self.trail.len() > checkpoint {
            match self.trail.pop().expect("trail is longer than checkpoint") {
                TrailEntry::Removed { vertex, colour, pos } => {
                    self.domains[vertex].insert(pos, colour);
                }
                TrailEntry::Assigned { vertex } => {
                    self.assignment[vertex] = None;
                }
            }
        }
    }

    fn forbidden_partner(&self, from: usize, to: usize, colour: usize) -> Option<usize> {
        match &self.pruning {
            Pruning::List => Some(colour),
            Pruning::Corr { partners } => {
                partners.get(&(from, to)).and_then(|per_colour| per_colour[colour])
            }
        }
    }

    /// Split `active` into connected components of the residual graph.
    fn residual_components(&self, active: &[usize]) -> Vec<Vec<usize>> {
        let in_active: BTreeSet<usize> = active.iter().copied().collect();
        let mut unseen = in_active.clone();
        let mut comps = Vec::new();
        while let Some(&start) = unseen.iter().next() {
            let mut comp = Vec::new();
            let mut stack = vec![start];
            while let Some(v) = stack.pop() {
                if !unseen.remove(&v) {
                    continue;
                }
                comp.push(v);
                for &n in &self.adj[v] {
                    if unseen.contains(&n) {
                        stack.push(n);
                    }
                }
            }
            comp.sort_unstable();
            comps.push(comp);
        }
        comps
    }

    /// Exhaustive search over `active`. On `Sat` the solved assignments stay
    /// in place; on `Unsat` or `OutOfBudget` the state is exactly as at
    /// entry.
    fn solve(&mut self, active: &[usize]) -> SearchResult {
        if active.is_empty() {
            return SearchResult::Sat;
        }
        let comps = self.residual_components(active);
        if comps.len() > 1 {
            let checkpoint = self.trail.len();
            for comp in &comps {
                match self.solve(comp) {
                    SearchResult::Sat => {}
                    other => {
                        self.rewind(checkpoint);
                        return other;
                    }
                }
            }
            return SearchResult::Sat;
        }

        let &pick = active
            .iter()
            .min_by_key(|&&v| (self.domains[v].len(), v))
            .expect("active is non-empty");
        let rest: Vec<usize> = active.iter().copied().filter(|&v| v != pick).collect();
        let candidates = self.domains[pick].clone();
        for colour in candidates {
            self.nodes += 1;
            if self.nodes > self.budget {
                return SearchResult::OutOfBudget;
            }
            let checkpoint = self.trail.len();
            self.assign(pick, colour);
            let mut wiped = false;
            let neighbours = self.adj[pick].clone();
            for n in neighbours {
                if self.assignment[n].is_some() {
                    continue;
                }
                if let Some(bad) = self.forbidden_partner(pick, n, colour) {
                    if self.prune(n, bad) {
                        wiped = true;
                        break;
                    }
                }
            }
            if !wiped {
                match self.solve(&rest) {
                    SearchResult::Sat => return SearchResult::Sat,
                    SearchResult::OutOfBudget => {
                        self.rewind(checkpoint);
                        return SearchResult::OutOfBudget;
                    }
                    SearchResult::Unsat => {}
                }
            }
            self.rewind(checkpoint);
        }
        SearchResult::Unsat
    }
}

/// Decide list colourability with an explicit node budget.
pub fn solve_list_budget(
    g: &PlaneGraph,
    lists: &ListAssignment,
    budget: u64,
) -> Result<SearchOutcome, SolveError> {
    run_search(g, lists, None, budget)
}

/// Decide list colourability.
pub fn solve_list(g: &PlaneGraph, lists: &ListAssignment) -> Result<SearchOutcome, SolveError> {
    solve_list_budget(g, lists, u64::MAX)
}

/// Decide correspondence colourability with an explicit node budget.
pub fn solve_corr_budget(
    g: &PlaneGraph,
    assignment: &CorrespondenceAssignment,
    budget: u64,
) -> Result<SearchOutcome, SolveError> {
    run_search(g, assignment.base(), Some(assignment), budget)
}

/// Decide correspondence colourability.
pub fn solve_corr(
    g: &PlaneGraph,
    assignment: &CorrespondenceAssignment,
) -> Result<SearchOutcome, SolveError> {
    solve_corr_budget(g, assignment, u64::MAX)
}

fn run_search(
    g: &PlaneGraph,
    lists: &ListAssignment,
    corr: Option<&CorrespondenceAssignment>,
    budget: u64,
) -> Result<SearchOutcome, SolveError> {
    let mut search = Search::new(g, lists, corr, budget)?;
    let all: Vec<usize> = (0..search.verts.len()).collect();
    let result = search.solve(&all);
    let outcome = match result {
        SearchResult::Sat => {
            let witness = Colouring(
                search
                    .assignment
                    .iter()
                    .enumerate()
                    .map(|(i, c)| {
                        (
                            search.verts[i].clone(),
                            search.colours[c.expect("sat leaves a total assignment")].clone(),
                        )
                    })
                    .collect(),
            );
            SearchOutcome {
                status: SearchStatus::Colourable,
                witness: Some(witness),
                nodes: search.nodes,
            }
        }
        SearchResult::Unsat => SearchOutcome {
            status: SearchStatus::NotColourable,
            witness: None,
            nodes: search.nodes,
        },
        SearchResult::OutOfBudget => SearchOutcome {
            status: SearchStatus::BudgetExceeded,
            witness: None,
            nodes: search.nodes,
        },
    };
    Ok(outcome)
}

/// All proper correspondence colourings, in lexicographic order of
/// (vertex token order, colour token order). Errs when more than `limit`
/// colourings exist.
pub fn enumerate_corr(
    g: &PlaneGraph,
    assignment: &CorrespondenceAssignment,
    limit: usize,
) -> Result<Vec<Colouring>, SolveError> {
    assignment.base().covers(g)?;
    for (e, _) in assignment.matchings() {
        if !g.has_edge(e.lo(), e.hi()) {
            return Err(SolveError::Assign(AssignError::MatchingOnNonEdge(
                e.lo().clone(),
                e.hi().clone(),
            )));
        }
    }
    let verts: Vec<&VertexId> = g.vertices().collect();
    let mut chosen: Vec<&Colour> = Vec::with_capacity(verts.len());
    let mut out = Vec::new();
    enumerate_rec(g, assignment, &verts, &mut chosen, limit, &mut out)?;
    Ok(out)
}

fn enumerate_rec<'a>(
    g: &PlaneGraph,
    assignment: &'a CorrespondenceAssignment,
    verts: &[&VertexId],
    chosen: &mut Vec<&'a Colour>,
    limit: usize,
    out: &mut Vec<Colouring>,
) -> Result<(), SolveError> {
    let depth = chosen.len();
    if depth == verts.len() {
        if out.len() == limit {
            return Err(SolveError::LimitExceeded { limit });
        }
        out.push(Colouring(
            verts
                .iter()
                .zip(chosen.iter())
                .map(|(v, c)| ((*v).clone(), (*c).clone()))
                .collect(),
        ));
        return Ok(());
    }
    let v = verts[depth];
    let list = assignment.base().list(v)?;
    for c in list {
        let clash = verts[..depth].iter().enumerate().any(|(j, u)| {
            g.has_edge(u, v) && assignment.forbids(u, chosen[j], v, c)
        });
        if !clash {
            chosen.push(c);
            enumerate_rec(g, assignment, verts, chosen, limit, out)?;
            chosen.pop();
        }
    }
    Ok(())
}

//! Explicit graphs: family generators, named catalog graphs, distance-regularity
//! verification, distance-i graphs, Delsarte clique geometries and the
//! halved/folded constructions for imprimitive graphs.

use crate::arrays::{FamilyTag, IntersectionArray};
use crate::spectrum::{delsarte_bound, Spectrum};
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use std::io::{BufRead, Write};
use thiserror::Error;

pub const UNREACHABLE: u8 = u8::MAX;
/// Node-visit budget for the per-edge Delsarte clique search.
const CLIQUE_SEARCH_CAP: u64 = 2_000_000;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum GraphsError {
    #[error("graph is not connected")]
    NotConnected,
    #[error("not distance-regular: pairs ({x1},{y1}) and ({x2},{y2}) at distance {dist} disagree on ({param})")]
    NotDistanceRegular {
        dist: usize,
        param: char,
        x1: u32,
        y1: u32,
        x2: u32,
        y2: u32,
    },
    #[error("graph too large: {n} vertices exceeds cap {cap}")]
    TooLarge { n: usize, cap: usize },
    #[error("distance index {i} out of range 1..={diameter}")]
    IndexOutOfRange { i: usize, diameter: usize },
    #[error("graph is not bipartite")]
    NotBipartite,
    #[error("graph is not antipodal: distance-{d} graph is not a union of cliques")]
    NotAntipodal { d: usize },
    #[error("no Delsarte clique geometry: {0}")]
    NoGeometry(String),
    #[error("clique hypothesis fails: lambda^2 = {lambda_sq} < 4*k*mu = {four_k_mu}")]
    HypothesisFails { lambda_sq: u128, four_k_mu: u128 },
    #[error("graph must have at least two vertices")]
    TrivialGraph,
    #[error("bad graph file: {0}")]
    BadFormat(String),
}

/// A simple undirected graph on vertices `0..n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    adj: Vec<Vec<u32>>,
    labels: Option<Vec<String>>,
}

impl Graph {
    pub fn from_edges(n: usize, edges: &[(u32, u32)]) -> Result<Self, GraphsError> {
        let mut adj = vec![BTreeSet::new(); n];
        for &(u, v) in edges {
            if u as usize >= n || v as usize >= n {
                return Err(GraphsError::BadFormat(format!("edge ({u},{v}) out of range")));
            }
            if u == v {
                return Err(GraphsError::BadFormat(format!("loop at {u}")));
            }
            adj[u as usize].insert(v);
            adj[v as usize].insert(u);
        }
        Ok(Graph {
            n,
            adj: adj.into_iter().map(|s| s.into_iter().collect()).collect(),
            labels: None,
        })
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        assert_eq!(labels.len(), self.n);
        self.labels = Some(labels);
        self
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn neighbors(&self, v: u32) -> &[u32] {
        &self.adj[v as usize]
    }

    pub fn degree(&self, v: u32) -> usize {
        self.adj[v as usize].len()
    }

    pub fn has_edge(&self, u: u32, v: u32) -> bool {
        self.adj[u as usize].binary_search(&v).is_ok()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|a| a.len()).sum::<usize>() / 2
    }

    /// Edges as ordered pairs `u < v`, lexicographically sorted.
    pub fn edges(&self) -> Vec<(u32, u32)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.n as u32 {
            for &v in self.neighbors(u) {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return false;
        }
        let mut seen = vec![false; self.n];
        let mut stack = vec![0u32];
        seen[0] = true;
        let mut count = 1;
        while let Some(u) = stack.pop() {
            for &v in self.neighbors(u) {
                if !seen[v as usize] {
                    seen[v as usize] = true;
                    count += 1;
                    stack.push(v);
                }
            }
        }
        count == self.n
    }

    /// All-pairs distances as a flat matrix; `UNREACHABLE` marks disconnected
    /// pairs.
    pub fn distance_matrix(&self) -> DistanceMatrix {
        let n = self.n;
        let mut d = vec![UNREACHABLE; n * n];
        let mut queue = std::collections::VecDeque::new();
        for src in 0..n {
            let row = &mut d[src * n..(src + 1) * n];
            row[src] = 0;
            queue.clear();
            queue.push_back(src as u32);
            while let Some(u) = queue.pop_front() {
                let du = row[u as usize];
                for &v in self.neighbors(u) {
                    if row[v as usize] == UNREACHABLE {
                        row[v as usize] = du + 1;
                        queue.push_back(v);
                    }
                }
            }
        }
        DistanceMatrix { n, d }
    }

    /// Two-coloring if bipartite.
    pub fn bipartition(&self) -> Option<(Vec<u32>, Vec<u32>)> {
        let mut color = vec![2u8; self.n];
        for start in 0..self.n as u32 {
            if color[start as usize] != 2 {
                continue;
            }
            color[start as usize] = 0;
            let mut stack = vec![start];
            while let Some(u) = stack.pop() {
                for &v in self.neighbors(u) {
                    if color[v as usize] == 2 {
                        color[v as usize] = 1 - color[u as usize];
                        stack.push(v);
                    } else if color[v as usize] == color[u as usize] {
                        return None;
                    }
                }
            }
        }
        let a = (0..self.n as u32).filter(|&v| color[v as usize] == 0).collect();
        let b = (0..self.n as u32).filter(|&v| color[v as usize] == 1).collect();
        Some((a, b))
    }

    /// Induced subgraph, relabeling `vertices[i] -> i`.
    pub fn induced(&self, vertices: &[u32]) -> Graph {
        let mut index = vec![u32::MAX; self.n];
        for (i, &v) in vertices.iter().enumerate() {
            index[v as usize] = i as u32;
        }
        let mut edges = Vec::new();
        for &v in vertices {
            for &w in self.neighbors(v) {
                if index[w as usize] != u32::MAX && v < w {
                    edges.push((index[v as usize], index[w as usize]));
                }
            }
        }
        let g = Graph::from_edges(vertices.len(), &edges).unwrap();
        match &self.labels {
            Some(l) => g.with_labels(vertices.iter().map(|&v| l[v as usize].clone()).collect()),
            None => g,
        }
    }
}

#[derive(Debug, Clone)]
pub struct DistanceMatrix {
    n: usize,
    d: Vec<u8>,
}

impl DistanceMatrix {
    #[inline]
    pub fn dist(&self, x: u32, y: u32) -> u8 {
        self.d[x as usize * self.n + y as usize]
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_connected(&self) -> bool {
        self.d.iter().all(|&x| x != UNREACHABLE)
    }

    pub fn diameter(&self) -> Option<usize> {
        if self.is_connected() {
            Some(*self.d.iter().max().unwrap() as usize)
        } else {
            None
        }
    }

    pub fn row(&self, x: u32) -> &[u8] {
        &self.d[x as usize * self.n..(x as usize + 1) * self.n]
    }
}

/// BFS layers around a source vertex.
#[derive(Debug, Clone)]
pub struct DistancePartition {
    pub source: u32,
    pub layers: Vec<Vec<u32>>,
}

pub fn distance_partition(g: &Graph, source: u32) -> DistancePartition {
    let dm = g.distance_matrix();
    let ecc = (0..g.n() as u32)
        .map(|y| dm.dist(source, y))
        .filter(|&d| d != UNREACHABLE)
        .max()
        .unwrap() as usize;
    let mut layers = vec![Vec::new(); ecc + 1];
    for y in 0..g.n() as u32 {
        let d = dm.dist(source, y);
        if d != UNREACHABLE {
            layers[d as usize].push(y);
        }
    }
    DistancePartition { source, layers }
}

/// Verifies distance-regularity: the counts `c_j, a_j, b_j` must depend only on
/// `d(x, y)`. Returns the intersection array on success.
pub fn check_drg(g: &Graph) -> Result<IntersectionArray, GraphsError> {
    if g.n() < 2 {
        return Err(GraphsError::TrivialGraph);
    }
    let dm = g.distance_matrix();
    let diameter = dm.diameter().ok_or(GraphsError::NotConnected)?;
    let d = diameter;
    let mut b = vec![u64::MAX; d + 1];
    let mut c = vec![u64::MAX; d + 1];
    let mut first_pair = vec![(0u32, 0u32); d + 1];
    for x in 0..g.n() as u32 {
        for y in 0..g.n() as u32 {
            let j = dm.dist(x, y) as usize;
            let mut cj = 0u64;
            let mut bj = 0u64;
            for &z in g.neighbors(y) {
                let dz = dm.dist(x, z) as usize;
                if dz + 1 == j {
                    cj += 1;
                } else if dz == j + 1 {
                    bj += 1;
                }
            }
            if b[j] == u64::MAX {
                b[j] = bj;
                c[j] = cj;
                first_pair[j] = (x, y);
            } else if b[j] != bj || c[j] != cj {
                let param = if b[j] != bj { 'b' } else { 'c' };
                return Err(GraphsError::NotDistanceRegular {
                    dist: j,
                    param,
                    x1: first_pair[j].0,
                    y1: first_pair[j].1,
                    x2: x,
                    y2: y,
                });
            }
        }
    }
    IntersectionArray::new(b[..d].to_vec(), c[1..].to_vec()).map_err(|e| {
        GraphsError::BadFormat(format!("distance-regular counts form an invalid array: {e}"))
    })
}

/// The graph on the same vertices whose edges are the pairs at distance
/// exactly `i`.
pub fn distance_i_graph(g: &Graph, dm: &DistanceMatrix, i: usize) -> Result<Graph, GraphsError> {
    let diameter = dm.diameter().ok_or(GraphsError::NotConnected)?;
    if i < 1 || i > diameter {
        return Err(GraphsError::IndexOutOfRange { i, diameter });
    }
    if i == 1 {
        return Ok(g.clone());
    }
    let mut edges = Vec::new();
    for x in 0..g.n() as u32 {
        for y in x + 1..g.n() as u32 {
            if dm.dist(x, y) as usize == i {
                edges.push((x, y));
            }
        }
    }
    Graph::from_edges(g.n(), &edges)
}

/// True iff every distance-i graph, `i = 1..=d`, is connected.
pub fn is_primitive(g: &Graph, dm: &DistanceMatrix) -> Result<bool, GraphsError> {
    let diameter = dm.diameter().ok_or(GraphsError::NotConnected)?;
    for i in 1..=diameter {
        if !distance_i_graph(g, dm, i)?.is_connected() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Whether the neighborhood graphs `G(v)` are connected; they are either all
/// connected or all disconnected in a Delsarte-geometric graph, and this
/// asserts the observed uniformity.
pub fn neighborhood_graphs_connected(g: &Graph) -> Result<bool, GraphsError> {
    let mut verdict = None;
    for v in 0..g.n() as u32 {
        let h = g.induced(g.neighbors(v));
        let conn = h.is_connected();
        match verdict {
            None => verdict = Some(conn),
            Some(prev) if prev != conn => {
                return Err(GraphsError::BadFormat(format!(
                    "neighborhood connectivity is not uniform (vertex {v})"
                )))
            }
            _ => {}
        }
    }
    Ok(verdict.unwrap_or(false))
}

/// A set of maximal cliques covering every edge exactly once.
#[derive(Debug, Clone)]
pub struct CliqueGeometry {
    pub cliques: Vec<Vec<u32>>,
    /// For each edge of `edges()`, the index of its clique.
    pub edge_clique: Vec<usize>,
    /// The common clique size `1 - k/m`.
    pub clique_size: u64,
}

impl CliqueGeometry {
    /// Number of cliques through each vertex.
    pub fn per_vertex_counts(&self, n: usize) -> Vec<usize> {
        let mut counts = vec![0usize; n];
        for cl in &self.cliques {
            for &v in cl {
                counts[v as usize] += 1;
            }
        }
        counts
    }
}

/// Searches for a Delsarte clique geometry: enumerates, per edge, all cliques
/// of size `1 - k/m` containing it, then selects a set covering every edge
/// exactly once (several Delsarte clique families can overlap, e.g. in Johnson
/// graphs, so the geometry is a choice among them).
pub fn find_clique_geometry(
    g: &Graph,
    arr: &IntersectionArray,
    spec: &Spectrum,
) -> Result<CliqueGeometry, GraphsError> {
    if spec.m_integer.is_none() {
        return Err(GraphsError::NoGeometry(
            "smallest eigenvalue is not an integer".into(),
        ));
    }
    let bound = delsarte_bound(arr, spec);
    let size = match bound.integral_size() {
        Some(s) if s >= 2 => s,
        _ => {
            return Err(GraphsError::NoGeometry(format!(
                "Delsarte bound {} is not an integral clique size",
                bound.approx
            )))
        }
    };
    let edges = g.edges();
    let mut cliques: Vec<Vec<u32>> = Vec::new();
    let mut clique_index: std::collections::BTreeMap<Vec<u32>, usize> = Default::default();
    let mut per_edge: Vec<Vec<usize>> = Vec::with_capacity(edges.len());
    let mut budget = CLIQUE_SEARCH_CAP;
    for &(u, v) in &edges {
        let candidates: Vec<u32> = g
            .neighbors(u)
            .iter()
            .copied()
            .filter(|&w| w != v && g.has_edge(w, v))
            .collect();
        let mut found = Vec::new();
        let mut current = vec![u, v];
        extend_cliques(g, &candidates, 0, &mut current, size as usize, &mut found, &mut budget)
            .map_err(|()| GraphsError::NoGeometry("clique search cap exceeded".into()))?;
        if found.is_empty() {
            return Err(GraphsError::NoGeometry(format!(
                "edge ({u},{v}) lies in no clique of size {size}"
            )));
        }
        let mut ids = Vec::with_capacity(found.len());
        for mut cl in found {
            cl.sort_unstable();
            let next = cliques.len();
            let id = *clique_index.entry(cl.clone()).or_insert_with(|| {
                cliques.push(cl);
                next
            });
            ids.push(id);
        }
        ids.sort_unstable();
        per_edge.push(ids);
    }
    // Exact cover: each edge in exactly one selected clique.
    let edge_of = |u: u32, v: u32| -> usize {
        edges.binary_search(&(u.min(v), u.max(v))).unwrap()
    };
    let clique_edges: Vec<Vec<usize>> = cliques
        .iter()
        .map(|cl| {
            let mut es = Vec::new();
            for i in 0..cl.len() {
                for j in i + 1..cl.len() {
                    es.push(edge_of(cl[i], cl[j]));
                }
            }
            es
        })
        .collect();
    let mut covered = vec![usize::MAX; edges.len()];
    let mut chosen = Vec::new();
    if !cover_edges(&per_edge, &clique_edges, &mut covered, &mut chosen) {
        return Err(GraphsError::NoGeometry(
            "Delsarte cliques admit no exact edge cover".into(),
        ));
    }
    chosen.sort_unstable();
    let remap: std::collections::BTreeMap<usize, usize> =
        chosen.iter().enumerate().map(|(i, &c)| (c, i)).collect();
    let selected: Vec<Vec<u32>> = chosen.iter().map(|&c| cliques[c].clone()).collect();
    // Delsarte cliques meet the upper bound, hence are maximal; verify anyway.
    for cl in &selected {
        for w in 0..g.n() as u32 {
            if !cl.contains(&w) && cl.iter().all(|&x| g.has_edge(w, x)) {
                return Err(GraphsError::NoGeometry(format!(
                    "clique is not maximal: vertex {w} extends it"
                )));
            }
        }
    }
    let edge_clique = covered.iter().map(|c| remap[c]).collect();
    Ok(CliqueGeometry {
        cliques: selected,
        edge_clique,
        clique_size: size,
    })
}

fn extend_cliques(
    g: &Graph,
    candidates: &[u32],
    from: usize,
    current: &mut Vec<u32>,
    target: usize,
    found: &mut Vec<Vec<u32>>,
    budget: &mut u64,
) -> Result<(), ()> {
    if *budget == 0 {
        return Err(());
    }
    *budget -= 1;
    if current.len() == target {
        found.push(current.clone());
        return Ok(());
    }
    let need = target - current.len();
    let avail = candidates.len().saturating_sub(from);
    if avail < need {
        return Ok(());
    }
    for i in from..candidates.len() {
        let w = candidates[i];
        if current[2..].iter().all(|&x| g.has_edge(w, x)) {
            current.push(w);
            extend_cliques(g, candidates, i + 1, current, target, found, budget)?;
            current.pop();
        }
    }
    Ok(())
}

fn cover_edges(
    per_edge: &[Vec<usize>],
    clique_edges: &[Vec<usize>],
    covered: &mut [usize],
    chosen: &mut Vec<usize>,
) -> bool {
    // Most-constrained uncovered edge first.
    let mut best: Option<(usize, usize)> = None;
    for (e, ids) in per_edge.iter().enumerate() {
        if covered[e] != usize::MAX {
            continue;
        }
        let admissible = ids
            .iter()
            .filter(|&&c| clique_edges[c].iter().all(|&f| covered[f] == usize::MAX))
            .count();
        if best.is_none_or(|(_, cnt)| admissible < cnt) {
            best = Some((e, admissible));
        }
        if admissible == 0 {
            return false;
        }
    }
    let (e, _) = match best {
        Some(b) => b,
        None => return true,
    };
    for &c in &per_edge[e] {
        if clique_edges[c].iter().any(|&f| covered[f] != usize::MAX) {
            continue;
        }
        for &f in &clique_edges[c] {
            covered[f] = c;
        }
        chosen.push(c);
        if cover_edges(per_edge, clique_edges, covered, chosen) {
            return true;
        }
        chosen.pop();
        for &f in &clique_edges[c] {
            covered[f] = usize::MAX;
        }
    }
    false
}

/// Outcome of the Metsch-style clique search.
#[derive(Debug, Clone)]
pub struct MetschClique {
    pub clique: Vec<u32>,
    /// Whether `(lambda+1)^2 > (3k + lambda + 1)(mu - 1)` holds.
    pub meq_holds: bool,
    pub target: u64,
}

/// Under `lambda^2 >= 4 k mu`, finds an explicit clique of size at least
/// `ceil(lambda/2)`: greedy extension inside a common neighborhood with a
/// backtracking fallback.
pub fn metsch_clique(g: &Graph, arr: &IntersectionArray) -> Result<MetschClique, GraphsError> {
    let k = arr.k() as u128;
    let lambda = arr.lambda() as u128;
    let mu = arr.mu().unwrap_or(0) as u128;
    if lambda * lambda < 4 * k * mu {
        return Err(GraphsError::HypothesisFails {
            lambda_sq: lambda * lambda,
            four_k_mu: 4 * k * mu,
        });
    }
    let meq_holds = (lambda + 1) * (lambda + 1) > (3 * k + lambda + 1) * mu.saturating_sub(1);
    let target = arr.lambda().div_ceil(2).max(2);
    for (u, v) in g.edges() {
        let mut clique = vec![u, v];
        let mut cand: Vec<u32> = g
            .neighbors(u)
            .iter()
            .copied()
            .filter(|&w| w != v && g.has_edge(w, v))
            .collect();
        while (clique.len() as u64) < target && !cand.is_empty() {
            // Pick the candidate keeping the most options open.
            let (bi, _) = cand
                .iter()
                .enumerate()
                .map(|(i, &w)| {
                    let live = cand.iter().filter(|&&x| x != w && g.has_edge(w, x)).count();
                    (i, live)
                })
                .max_by(|a, b| a.1.cmp(&b.1).then(b.0.cmp(&a.0)))
                .unwrap();
            let w = cand.remove(bi);
            clique.push(w);
            cand.retain(|&x| g.has_edge(w, x));
        }
        if clique.len() as u64 >= target {
            clique.sort_unstable();
            return Ok(MetschClique { clique, meq_holds, target });
        }
    }
    // Backtracking fallback over common neighborhoods.
    let mut budget = CLIQUE_SEARCH_CAP;
    for (u, v) in g.edges() {
        let candidates: Vec<u32> = g
            .neighbors(u)
            .iter()
            .copied()
            .filter(|&w| w != v && g.has_edge(w, v))
            .collect();
        let mut current = vec![u, v];
        let mut found = Vec::new();
        if extend_cliques(g, &candidates, 0, &mut current, target as usize, &mut found, &mut budget)
            .is_err()
        {
            break;
        }
        if let Some(mut cl) = found.into_iter().next() {
            cl.sort_unstable();
            return Ok(MetschClique { clique: cl, meq_holds, target });
        }
    }
    Err(GraphsError::NoGeometry(format!(
        "no clique of size {target} found despite hypothesis"
    )))
}

/// Halved graphs of a bipartite graph: the two components of the distance-2
/// graph, induced.
#[derive(Debug, Clone)]
pub struct HalvedGraphs {
    pub plus: Graph,
    pub minus: Graph,
    pub plus_vertices: Vec<u32>,
    pub minus_vertices: Vec<u32>,
}

pub fn halved_graphs(g: &Graph) -> Result<HalvedGraphs, GraphsError> {
    let (a, b) = g.bipartition().ok_or(GraphsError::NotBipartite)?;
    let dm = g.distance_matrix();
    if !dm.is_connected() {
        return Err(GraphsError::NotConnected);
    }
    let g2 = distance_i_graph(g, &dm, 2)?;
    let halve = |side: &[u32]| -> Graph { g2.induced(side) };
    Ok(HalvedGraphs {
        plus: halve(&a),
        minus: halve(&b),
        plus_vertices: a,
        minus_vertices: b,
    })
}

/// Folded graph of an antipodal graph: vertices are the cliques of `G_d`,
/// adjacent when some cross edge exists.
#[derive(Debug, Clone)]
pub struct FoldedGraph {
    pub graph: Graph,
    pub classes: Vec<Vec<u32>>,
}

pub fn folded_graph(g: &Graph) -> Result<FoldedGraph, GraphsError> {
    let dm = g.distance_matrix();
    let d = dm.diameter().ok_or(GraphsError::NotConnected)?;
    let gd = distance_i_graph(g, &dm, d)?;
    // Components of G_d, each of which must be a clique.
    let mut class_of = vec![usize::MAX; g.n()];
    let mut classes: Vec<Vec<u32>> = Vec::new();
    for v in 0..g.n() as u32 {
        if class_of[v as usize] != usize::MAX {
            continue;
        }
        let id = classes.len();
        let mut comp = vec![v];
        class_of[v as usize] = id;
        let mut stack = vec![v];
        while let Some(u) = stack.pop() {
            for &w in gd.neighbors(u) {
                if class_of[w as usize] == usize::MAX {
                    class_of[w as usize] = id;
                    comp.push(w);
                    stack.push(w);
                }
            }
        }
        comp.sort_unstable();
        for i in 0..comp.len() {
            for j in i + 1..comp.len() {
                if dm.dist(comp[i], comp[j]) as usize != d {
                    return Err(GraphsError::NotAntipodal { d });
                }
            }
        }
        if comp.len() < 2 {
            return Err(GraphsError::NotAntipodal { d });
        }
        classes.push(comp);
    }
    let mut edges = BTreeSet::new();
    for (u, v) in g.edges() {
        let (cu, cv) = (class_of[u as usize] as u32, class_of[v as usize] as u32);
        if cu != cv {
            edges.insert((cu.min(cv), cu.max(cv)));
        }
    }
    let edges: Vec<_> = edges.into_iter().collect();
    Ok(FoldedGraph {
        graph: Graph::from_edges(classes.len(), &edges)?,
        classes,
    })
}

/// Builds an explicit family graph with vertex labels.
pub fn build_family(tag: FamilyTag, cap: usize) -> Result<Graph, GraphsError> {
    match tag {
        FamilyTag::Johnson { s, d } => {
            let n = binomial(s, d);
            if n > cap as u128 {
                return Err(GraphsError::TooLarge { n: n as usize, cap });
            }
            let subsets = k_subsets(s as usize, d as usize);
            let mut edges = Vec::new();
            for i in 0..subsets.len() {
                for j in i + 1..subsets.len() {
                    if (subsets[i] & subsets[j]).count_ones() as u64 == d - 1 {
                        edges.push((i as u32, j as u32));
                    }
                }
            }
            let labels = subsets.iter().map(|&m| mask_label(m)).collect();
            Ok(Graph::from_edges(subsets.len(), &edges)?.with_labels(labels))
        }
        FamilyTag::Hamming { d, s } => {
            let n = (s as u128).pow(d as u32);
            if n > cap as u128 {
                return Err(GraphsError::TooLarge { n: n as usize, cap });
            }
            let n = n as usize;
            let tuples: Vec<Vec<u64>> = (0..n)
                .map(|mut x| {
                    let mut t = vec![0u64; d as usize];
                    for slot in t.iter_mut().rev() {
                        *slot = (x % s as usize) as u64 + 1;
                        x /= s as usize;
                    }
                    t
                })
                .collect();
            let mut edges = Vec::new();
            for i in 0..n {
                for j in i + 1..n {
                    let diff = tuples[i]
                        .iter()
                        .zip(&tuples[j])
                        .filter(|(a, b)| a != b)
                        .count();
                    if diff == 1 {
                        edges.push((i as u32, j as u32));
                    }
                }
            }
            let labels = tuples
                .iter()
                .map(|t| {
                    let parts: Vec<String> = t.iter().map(|x| x.to_string()).collect();
                    format!("({})", parts.join(","))
                })
                .collect();
            Ok(Graph::from_edges(n, &edges)?.with_labels(labels))
        }
        FamilyTag::Crown { m } => {
            let m = m as usize;
            if 2 * m > cap {
                return Err(GraphsError::TooLarge { n: 2 * m, cap });
            }
            let mut edges = Vec::new();
            for i in 0..m {
                for j in 0..m {
                    if i != j {
                        edges.push((i as u32, (m + j) as u32));
                    }
                }
            }
            let labels = (0..m)
                .map(|i| format!("a{}", i + 1))
                .chain((0..m).map(|i| format!("b{}", i + 1)))
                .collect();
            Ok(Graph::from_edges(2 * m, &edges)?.with_labels(labels))
        }
        FamilyTag::Cycle { n } => {
            let n = n as usize;
            if n > cap {
                return Err(GraphsError::TooLarge { n, cap });
            }
            let edges: Vec<_> = (0..n)
                .map(|i| (i as u32, ((i + 1) % n) as u32))
                .collect();
            Graph::from_edges(n, &edges)
        }
    }
}

fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let mut r: u128 = 1;
    for i in 0..k.min(n - k) {
        r = r * (n - i) as u128 / (i + 1) as u128;
    }
    r
}

fn k_subsets(s: usize, d: usize) -> Vec<u64> {
    let mut out = Vec::new();
    let mut current = 0u64;
    fn rec(s: usize, d: usize, from: usize, current: &mut u64, out: &mut Vec<u64>) {
        if d == 0 {
            out.push(*current);
            return;
        }
        for i in from..=s - d {
            *current |= 1 << i;
            rec(s, d - 1, i + 1, current, out);
            *current &= !(1 << i);
        }
    }
    rec(s, d, 0, &mut current, &mut out);
    out
}

fn mask_label(mask: u64) -> String {
    let parts: Vec<String> = (0..64)
        .filter(|i| mask >> i & 1 == 1)
        .map(|i| (i + 1).to_string())
        .collect();
    format!("{{{}}}", parts.join(","))
}

/// Named small graphs used by the catalog and tests.
pub mod named {
    use super::*;

    /// Cycle + chord construction from LCF notation.
    pub fn from_lcf(shifts: &[i64], reps: usize) -> Graph {
        let n = shifts.len() * reps;
        let mut edges = BTreeSet::new();
        for i in 0..n {
            let j = (i + 1) % n;
            edges.insert((i.min(j) as u32, i.max(j) as u32));
            let t = (i as i64 + shifts[i % shifts.len()]).rem_euclid(n as i64) as usize;
            edges.insert((i.min(t) as u32, i.max(t) as u32));
        }
        let edges: Vec<_> = edges.into_iter().collect();
        Graph::from_edges(n, &edges).unwrap()
    }

    /// Petersen graph as the Kneser graph: 2-subsets of {1..5}, adjacent when
    /// disjoint.
    pub fn petersen() -> Graph {
        let pairs = k_subsets(5, 2);
        let mut edges = Vec::new();
        for i in 0..pairs.len() {
            for j in i + 1..pairs.len() {
                if pairs[i] & pairs[j] == 0 {
                    edges.push((i as u32, j as u32));
                }
            }
        }
        let labels = pairs.iter().map(|&m| mask_label(m)).collect();
        Graph::from_edges(10, &edges).unwrap().with_labels(labels)
    }

    pub fn icosahedron() -> Graph {
        let edges: [(u32, u32); 30] = [
            (0, 1), (0, 2), (0, 3), (0, 4), (0, 5),
            (1, 2), (2, 3), (3, 4), (4, 5), (5, 1),
            (6, 7), (7, 8), (8, 9), (9, 10), (10, 6),
            (11, 6), (11, 7), (11, 8), (11, 9), (11, 10),
            (1, 6), (1, 7), (2, 7), (2, 8), (3, 8),
            (3, 9), (4, 9), (4, 10), (5, 10), (5, 6),
        ];
        Graph::from_edges(12, &edges).unwrap()
    }

    pub fn heawood() -> Graph {
        from_lcf(&[5, -5], 7)
    }

    pub fn pappus() -> Graph {
        from_lcf(&[5, 7, -7, 7, -7, -5], 3)
    }

    pub fn desargues() -> Graph {
        from_lcf(&[5, -5, 9, -9], 5)
    }

    pub fn tutte_coxeter() -> Graph {
        from_lcf(&[-13, -9, 7, -7, 9, 13], 5)
    }

    pub fn complete(q: usize) -> Graph {
        let mut edges = Vec::new();
        for i in 0..q as u32 {
            for j in i + 1..q as u32 {
                edges.push((i, j));
            }
        }
        Graph::from_edges(q, &edges).unwrap()
    }

    pub fn complete_bipartite(m: usize) -> Graph {
        let mut edges = Vec::new();
        for i in 0..m as u32 {
            for j in 0..m as u32 {
                edges.push((i, m as u32 + j));
            }
        }
        Graph::from_edges(2 * m, &edges).unwrap()
    }

    /// Paley graph on a prime number of vertices.
    pub fn paley(p: u32) -> Graph {
        assert!(p % 4 == 1);
        let residues: BTreeSet<u32> = (1..p).map(|x| x * x % p).collect();
        let mut edges = Vec::new();
        for i in 0..p {
            for j in i + 1..p {
                if residues.contains(&((j - i) % p)) {
                    edges.push((i, j));
                }
            }
        }
        Graph::from_edges(p as usize, &edges).unwrap()
    }
}

/// Sidecar metadata for graph files.
#[derive(Debug, Clone, Serialize, Deserialize, Default)]
pub struct GraphMeta {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub family: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

/// Writes the text edge-list format: first line `n m`, then `m` lines `u v`.
pub fn write_edge_list<W: Write>(g: &Graph, mut w: W) -> std::io::Result<()> {
    let edges = g.edges();
    writeln!(w, "{} {}", g.n(), edges.len())?;
    for (u, v) in edges {
        writeln!(w, "{u} {v}")?;
    }
    Ok(())
}

pub fn read_edge_list<R: BufRead>(r: R) -> Result<Graph, GraphsError> {
    let mut lines = r.lines();
    let header = lines
        .next()
        .ok_or_else(|| GraphsError::BadFormat("empty file".into()))?
        .map_err(|e| GraphsError::BadFormat(e.to_string()))?;
    let mut it = header.split_whitespace();
    let n: usize = it
        .next()
        .and_then(|t| t.parse().ok())
        .ok_or_else(|| GraphsError::BadFormat("bad header".into()))?;
    let m: usize = it
        .next()
        .and_then(|t| t.parse().ok())
        .ok_or_else(|| GraphsError::BadFormat("bad header".into()))?;
    let mut edges = Vec::with_capacity(m);
    for line in lines {
        let line = line.map_err(|e| GraphsError::BadFormat(e.to_string()))?;
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let mut it = line.split_whitespace();
        let u: u32 = it
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| GraphsError::BadFormat(format!("bad edge line: {line}")))?;
        let v: u32 = it
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| GraphsError::BadFormat(format!("bad edge line: {line}")))?;
        edges.push((u, v));
    }
    if edges.len() != m {
        return Err(GraphsError::BadFormat(format!(
            "expected {m} edges, found {}",
            edges.len()
        )));
    }
    Graph::from_edges(n, &edges)
}

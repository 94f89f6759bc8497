//! Brute-force automorphism oracle and the base-construction pipeline:
//! full group enumeration by backtracking over the distance partition, exact
//! motion, pointwise stabilizers, halving sets, splitting sets and the
//! split-all-edges-of-G-and-G2 base certificate.

use crate::graphs::{check_drg, distance_i_graph, is_primitive, Graph, GraphsError};
use crate::par;
use num_rational::Ratio;
use std::cmp::Reverse;
use std::collections::{BTreeMap, BTreeSet, HashSet};
use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum GroupsError {
    #[error("automorphism group order exceeds cap {cap}")]
    CapExceeded { cap: u64 },
    #[error("group is trivial")]
    TrivialGroup,
    #[error("group does not act edge-transitively on {graph}")]
    NotEdgeTransitive { graph: String },
    #[error("seed set splits no edges")]
    ZeroFraction,
    #[error("hypothesis not met: {unsplit_g} unsplit edges in G, {unsplit_g2} in G2")]
    HypothesisNotMet { unsplit_g: u64, unsplit_g2: u64 },
    #[error("pipeline precondition failed: {0}")]
    PreconditionFailed(String),
    #[error(transparent)]
    Graph(#[from] GraphsError),
}

/// A permutation of `0..n` as an image table.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm(pub Vec<u32>);

impl Perm {
    pub fn identity(n: usize) -> Self {
        Perm((0..n as u32).collect())
    }

    #[inline]
    pub fn apply(&self, x: u32) -> u32 {
        self.0[x as usize]
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0u32; self.0.len()];
        for (i, &y) in self.0.iter().enumerate() {
            inv[y as usize] = i as u32;
        }
        Perm(inv)
    }

    /// `self` then `other`: `(self * other)(x) = other(self(x))`.
    pub fn then(&self, other: &Perm) -> Perm {
        Perm(self.0.iter().map(|&y| other.0[y as usize]).collect())
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &y)| i as u32 == y)
    }

    pub fn support_size(&self) -> u64 {
        self.0.iter().enumerate().filter(|(i, &y)| *i as u32 != y).count() as u64
    }
}

/// A fully enumerated permutation group, elements sorted lexicographically.
#[derive(Debug, Clone)]
pub struct PermGroup {
    pub degree: usize,
    pub elements: Vec<Perm>,
    /// Indices of a small generating subset.
    pub generators: Vec<usize>,
}

impl PermGroup {
    pub fn order(&self) -> u64 {
        self.elements.len() as u64
    }
}

/// Enumerates the full automorphism group by backtracking along a BFS order,
/// pruned by degree/distance-profile invariants. Deterministic element order.
pub fn automorphisms(g: &Graph, cap: u64) -> Result<PermGroup, GroupsError> {
    let elements = enumerate_isomorphisms(g, g, Some(cap), false)?;
    let mut elements = elements;
    elements.sort_unstable();
    let generators = generating_subset(&elements, g.n());
    Ok(PermGroup {
        degree: g.n(),
        elements,
        generators,
    })
}

/// One isomorphism from `a` onto `b`, if any.
pub fn find_isomorphism(a: &Graph, b: &Graph) -> Option<Perm> {
    if a.n() != b.n() || a.edge_count() != b.edge_count() {
        return None;
    }
    enumerate_isomorphisms(a, b, None, true)
        .ok()
        .and_then(|v| v.into_iter().next())
}

fn vertex_classes(a: &Graph, b: &Graph) -> (Vec<u32>, Vec<u32>) {
    let mut keys: BTreeMap<Vec<u8>, u32> = BTreeMap::new();
    let mut class = |g: &Graph| -> Vec<u32> {
        let dm = g.distance_matrix();
        (0..g.n() as u32)
            .map(|v| {
                let mut row: Vec<u8> = dm.row(v).to_vec();
                row.sort_unstable();
                let next = keys.len() as u32;
                *keys.entry(row).or_insert(next)
            })
            .collect()
    };
    let ca = class(a);
    let cb = class(b);
    (ca, cb)
}

fn enumerate_isomorphisms(
    a: &Graph,
    b: &Graph,
    cap: Option<u64>,
    first_only: bool,
) -> Result<Vec<Perm>, GroupsError> {
    let n = a.n();
    let (class_a, class_b) = vertex_classes(a, b);
    // BFS forest order: each non-root vertex has an earlier neighbor.
    let mut order = Vec::with_capacity(n);
    let mut parent: Vec<Option<u32>> = vec![None; n];
    let mut seen = vec![false; n];
    for root in 0..n as u32 {
        if seen[root as usize] {
            continue;
        }
        seen[root as usize] = true;
        let mut queue = std::collections::VecDeque::from([root]);
        order.push(root);
        while let Some(u) = queue.pop_front() {
            for &v in a.neighbors(u) {
                if !seen[v as usize] {
                    seen[v as usize] = true;
                    parent[v as usize] = Some(u);
                    order.push(v);
                    queue.push_back(v);
                }
            }
        }
    }
    let mut image = vec![u32::MAX; n];
    let mut used = vec![false; n];
    let mut found = Vec::new();
    let mut stack_mapped: Vec<u32> = Vec::with_capacity(n);
    struct Ctx<'x> {
        a: &'x Graph,
        b: &'x Graph,
        class_a: &'x [u32],
        class_b: &'x [u32],
        order: &'x [u32],
        parent: &'x [Option<u32>],
        cap: Option<u64>,
        first_only: bool,
    }
    fn rec(
        ctx: &Ctx,
        level: usize,
        image: &mut Vec<u32>,
        used: &mut Vec<bool>,
        mapped: &mut Vec<u32>,
        found: &mut Vec<Perm>,
    ) -> Result<(), GroupsError> {
        if level == ctx.order.len() {
            found.push(Perm(image.clone()));
            if let Some(cap) = ctx.cap {
                if found.len() as u64 > cap {
                    return Err(GroupsError::CapExceeded { cap });
                }
            }
            return Ok(());
        }
        let v = ctx.order[level];
        let candidates: Vec<u32> = match ctx.parent[v as usize] {
            Some(p) => ctx.b.neighbors(image[p as usize]).to_vec(),
            None => (0..ctx.b.n() as u32).collect(),
        };
        for t in candidates {
            if used[t as usize] || ctx.class_b[t as usize] != ctx.class_a[v as usize] {
                continue;
            }
            let consistent = mapped.iter().all(|&u| {
                ctx.a.has_edge(v, u) == ctx.b.has_edge(t, image[u as usize])
            });
            if !consistent {
                continue;
            }
            image[v as usize] = t;
            used[t as usize] = true;
            mapped.push(v);
            rec(ctx, level + 1, image, used, mapped, found)?;
            mapped.pop();
            used[t as usize] = false;
            image[v as usize] = u32::MAX;
            if ctx.first_only && !found.is_empty() {
                return Ok(());
            }
        }
        Ok(())
    }
    let ctx = Ctx {
        a,
        b,
        class_a: &class_a,
        class_b: &class_b,
        order: &order,
        parent: &parent,
        cap,
        first_only,
    };
    rec(&ctx, 0, &mut image, &mut used, &mut stack_mapped, &mut found)?;
    Ok(found)
}

fn generating_subset(elements: &[Perm], n: usize) -> Vec<usize> {
    let mut gens: Vec<usize> = Vec::new();
    let mut closure: HashSet<Perm> = HashSet::new();
    closure.insert(Perm::identity(n));
    for (i, e) in elements.iter().enumerate() {
        if closure.contains(e) {
            continue;
        }
        gens.push(i);
        // Rebuild the closure under the enlarged generating set.
        let gen_perms: Vec<&Perm> = gens.iter().map(|&j| &elements[j]).collect();
        let mut frontier: Vec<Perm> = closure.iter().cloned().collect();
        while let Some(p) = frontier.pop() {
            for g in &gen_perms {
                let q = p.then(g);
                if closure.insert(q.clone()) {
                    frontier.push(q);
                }
            }
        }
        if closure.len() == elements.len() {
            break;
        }
    }
    gens
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Motion {
    pub value: u64,
    /// Index into `elements` of a minimal-support witness.
    pub witness: usize,
}

/// Minimal degree: fewest points moved by a nonidentity element.
pub fn motion_exact(group: &PermGroup) -> Result<Motion, GroupsError> {
    motion_impl(group, false)
}

pub fn motion_exact_seq(group: &PermGroup) -> Result<Motion, GroupsError> {
    motion_impl(group, true)
}

fn motion_impl(group: &PermGroup, force_seq: bool) -> Result<Motion, GroupsError> {
    if group.order() < 2 {
        return Err(GroupsError::TrivialGroup);
    }
    let best = par::min_over(group.elements.len(), force_seq, |i| {
        let supp = group.elements[i].support_size();
        if supp == 0 {
            None
        } else {
            Some((supp, i))
        }
    })
    .unwrap();
    Ok(Motion {
        value: best.0,
        witness: best.1,
    })
}

/// Pointwise stabilizer of a point set, with its orbits on V.
#[derive(Debug, Clone)]
pub struct StabilizerOrbits {
    /// Indices of group elements fixing sigma pointwise.
    pub fixing: Vec<usize>,
    /// Per-vertex orbit representative (least element of the orbit).
    pub orbit_rep: Vec<u32>,
    /// Orbits sorted by least element.
    pub orbits: Vec<Vec<u32>>,
}

pub fn stabilizer_orbits(group: &PermGroup, sigma: &[u32]) -> StabilizerOrbits {
    let n = group.degree;
    let fixing: Vec<usize> = (0..group.elements.len())
        .filter(|&i| sigma.iter().all(|&s| group.elements[i].apply(s) == s))
        .collect();
    let mut uf: Vec<u32> = (0..n as u32).collect();
    fn find(uf: &mut [u32], x: u32) -> u32 {
        let mut r = x;
        while uf[r as usize] != r {
            r = uf[r as usize];
        }
        let mut c = x;
        while uf[c as usize] != r {
            let next = uf[c as usize];
            uf[c as usize] = r;
            c = next;
        }
        r
    }
    for &i in &fixing {
        let p = &group.elements[i];
        for v in 0..n as u32 {
            let (a, b) = (find(&mut uf, v), find(&mut uf, p.apply(v)));
            if a != b {
                let (lo, hi) = (a.min(b), a.max(b));
                uf[hi as usize] = lo;
            }
        }
    }
    let mut orbit_rep = vec![0u32; n];
    let mut by_rep: BTreeMap<u32, Vec<u32>> = BTreeMap::new();
    for v in 0..n as u32 {
        let r = find(&mut uf, v);
        orbit_rep[v as usize] = r;
        by_rep.entry(r).or_default().push(v);
    }
    // Normalize representatives to orbit minima (union order already puts the
    // least element at the root, but make it explicit).
    let mut orbits: Vec<Vec<u32>> = by_rep.into_values().collect();
    for o in &mut orbits {
        o.sort_unstable();
    }
    orbits.sort_by_key(|o| o[0]);
    let mut rep_of = vec![0u32; n];
    for o in &orbits {
        for &v in o {
            rep_of[v as usize] = o[0];
        }
    }
    orbit_rep.copy_from_slice(&rep_of);
    StabilizerOrbits {
        fixing,
        orbit_rep,
        orbits,
    }
}

/// Greedy halving set: add the least point of the largest stabilizer orbit
/// until every orbit has size at most n/2.
pub fn find_halving_set(group: &PermGroup) -> Vec<u32> {
    let n = group.degree as u64;
    let mut sigma: Vec<u32> = Vec::new();
    loop {
        let st = stabilizer_orbits(group, &sigma);
        let largest = st
            .orbits
            .iter()
            .max_by_key(|o| (o.len(), Reverse(o[0])))
            .unwrap();
        if largest.len() as u64 * 2 <= n {
            return sigma;
        }
        sigma.push(largest[0]);
    }
}

/// Exact fraction of edges split by sigma: endpoints in different
/// pointwise-stabilizer orbits.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SplitCount {
    pub split: u64,
    pub edges: u64,
}

impl SplitCount {
    pub fn fraction(&self) -> Ratio<u64> {
        Ratio::new(self.split, self.edges)
    }
}

pub fn split_fraction(graph: &Graph, group: &PermGroup, sigma: &[u32]) -> SplitCount {
    let st = stabilizer_orbits(group, sigma);
    split_count_with(graph, &st.orbit_rep)
}

fn split_count_with(graph: &Graph, orbit_rep: &[u32]) -> SplitCount {
    let mut split = 0u64;
    let edges = graph.edge_count() as u64;
    for (u, v) in graph.edges() {
        if orbit_rep[u as usize] != orbit_rep[v as usize] {
            split += 1;
        }
    }
    SplitCount { split, edges }
}

fn edge_transitive(graph: &Graph, group: &PermGroup) -> bool {
    let edges = graph.edges();
    if edges.is_empty() {
        return false;
    }
    let (u0, v0) = edges[0];
    let mut orbit: BTreeSet<(u32, u32)> = BTreeSet::new();
    for p in &group.elements {
        let (a, b) = (p.apply(u0), p.apply(v0));
        orbit.insert((a.min(b), a.max(b)));
    }
    orbit.len() == edges.len()
}

/// One round of the greedy translate cover.
#[derive(Debug, Clone)]
pub struct SplitRound {
    pub element: usize,
    pub newly_split: u64,
    pub remaining: u64,
}

/// The result of covering all edges by translates of a seed set.
#[derive(Debug, Clone)]
pub struct SplitRun {
    pub delta: Vec<u32>,
    pub rounds: Vec<SplitRound>,
    /// `ceil(-log2 q / log2(1-c))` from the averaging argument.
    pub round_bound: u64,
    pub seed_fraction: Ratio<u64>,
    /// Whether every round scored all translates (the bound is only asserted
    /// then).
    pub full_scan: bool,
}

const FULL_SCAN_LIMIT: u64 = 100_000;
const SAMPLE_SIZE: u64 = 10_000;

/// Greedy cover by translates of sigma: each round picks the translate
/// splitting the most not-yet-split edges. Requires edge-transitivity, which
/// guarantees a translate splitting a c-fraction of the remainder.
pub fn splitting_set(
    graph: &Graph,
    group: &PermGroup,
    sigma: &[u32],
) -> Result<SplitRun, GroupsError> {
    if !edge_transitive(graph, group) {
        return Err(GroupsError::NotEdgeTransitive {
            graph: format!("{}-vertex graph", graph.n()),
        });
    }
    let seed = split_fraction(graph, group, sigma);
    if seed.split == 0 {
        return Err(GroupsError::ZeroFraction);
    }
    let q = seed.edges as f64;
    let c = seed.split as f64 / seed.edges as f64;
    let round_bound = if seed.split == seed.edges {
        1
    } else {
        (q.ln() / -(1.0 - c).ln()).ceil() as u64
    };
    let base = stabilizer_orbits(group, sigma);
    let inverses: Vec<Perm> = group.elements.iter().map(|p| p.inverse()).collect();
    let edges = graph.edges();
    let full_scan = group.order() <= FULL_SCAN_LIMIT;
    let mut unsplit: Vec<(u32, u32)> = edges.clone();
    let mut delta: BTreeSet<u32> = BTreeSet::new();
    let mut rounds = Vec::new();
    let mut rng_state = 0x9e3779b97f4a7c15u64;
    while !unsplit.is_empty() {
        let score = |i: usize| -> u64 {
            let inv = &inverses[i];
            unsplit
                .iter()
                .filter(|&&(u, v)| {
                    base.orbit_rep[inv.apply(u) as usize] != base.orbit_rep[inv.apply(v) as usize]
                })
                .count() as u64
        };
        let candidate_indices: Vec<usize> = if full_scan {
            (0..group.elements.len()).collect()
        } else {
            // Fixed-stride pseudo-random sample; deterministic.
            (0..SAMPLE_SIZE)
                .map(|_| {
                    rng_state = rng_state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                    (rng_state >> 16) as usize % group.elements.len()
                })
                .collect()
        };
        let best = par::min_over(candidate_indices.len(), false, |j| {
            let i = candidate_indices[j];
            Some((Reverse(score(i)), i))
        })
        .unwrap();
        let (Reverse(best_score), best_idx) = best;
        if best_score == 0 {
            if full_scan {
                // Impossible under edge-transitivity with c > 0.
                return Err(GroupsError::ZeroFraction);
            }
            // Sampling missed; fall back to scanning everything once.
            let best = par::min_over(group.elements.len(), false, |i| Some((Reverse(score(i)), i)))
                .unwrap();
            let (Reverse(s), i) = best;
            if s == 0 {
                return Err(GroupsError::ZeroFraction);
            }
            apply_round(group, sigma, i, s, &mut delta, &mut unsplit, &mut rounds, &base, &inverses);
            continue;
        }
        apply_round(
            group,
            sigma,
            best_idx,
            best_score,
            &mut delta,
            &mut unsplit,
            &mut rounds,
            &base,
            &inverses,
        );
    }
    Ok(SplitRun {
        delta: delta.into_iter().collect(),
        rounds,
        round_bound,
        seed_fraction: seed.fraction(),
        full_scan,
    })
}

#[allow(clippy::too_many_arguments)]
fn apply_round(
    group: &PermGroup,
    sigma: &[u32],
    element: usize,
    newly_split: u64,
    delta: &mut BTreeSet<u32>,
    unsplit: &mut Vec<(u32, u32)>,
    rounds: &mut Vec<SplitRound>,
    base: &StabilizerOrbits,
    inverses: &[Perm],
) {
    let h = &group.elements[element];
    for &s in sigma {
        delta.insert(h.apply(s));
    }
    // Splitting is monotone under adding points, so edges split by the chosen
    // translate alone stay split by the union.
    let inv = &inverses[element];
    unsplit.retain(|&(u, v)| {
        base.orbit_rep[inv.apply(u) as usize] == base.orbit_rep[inv.apply(v) as usize]
    });
    rounds.push(SplitRound {
        element,
        newly_split,
        remaining: unsplit.len() as u64,
    });
}

/// Checks the base trick: if sigma splits all edges of G and of G2, the
/// pointwise stabilizer must be trivial. Returns that triviality verdict.
pub fn verify_full_split_base(
    graph: &Graph,
    group: &PermGroup,
    sigma: &[u32],
) -> Result<bool, GroupsError> {
    let dm = graph.distance_matrix();
    let g2 = distance_i_graph(graph, &dm, 2)?;
    let st = stabilizer_orbits(group, sigma);
    let unsplit_g = graph
        .edges()
        .iter()
        .filter(|&&(u, v)| st.orbit_rep[u as usize] == st.orbit_rep[v as usize])
        .count() as u64;
    let unsplit_g2 = g2
        .edges()
        .iter()
        .filter(|&&(u, v)| st.orbit_rep[u as usize] == st.orbit_rep[v as usize])
        .count() as u64;
    if unsplit_g > 0 || unsplit_g2 > 0 {
        return Err(GroupsError::HypothesisNotMet {
            unsplit_g,
            unsplit_g2,
        });
    }
    Ok(st.fixing.len() == 1)
}

#[derive(Debug, Clone, Copy)]
pub struct BaseOptions {
    /// Relax the diameter/primitivity gate (used to run diameter-2 or
    /// imprimitive test graphs through the pipeline).
    pub relax_preconditions: bool,
    pub cap: u64,
}

impl Default for BaseOptions {
    fn default() -> Self {
        BaseOptions {
            relax_preconditions: false,
            cap: 10_000_000,
        }
    }
}

/// Per-orbit expansion accounting used in the split-count lower bound.
#[derive(Debug, Clone)]
pub struct OrbitRow {
    pub orbit_min: u32,
    pub size: u64,
    pub boundary_edges: u64,
}

/// Full trace of the base pipeline.
#[derive(Debug, Clone)]
pub struct BaseTrace {
    pub group_order: u64,
    pub sigma: Vec<u32>,
    pub orbit_rows: Vec<OrbitRow>,
    pub split_by_sigma: SplitCount,
    pub run_g: SplitRun,
    pub run_g2: SplitRun,
    pub sigma_prime: Vec<u32>,
    pub stabilizer_trivial: bool,
}

/// halving set -> per-orbit expansion accounting -> splitting sets on G and G2
/// -> sigma' = delta union delta2 -> trivial pointwise stabilizer.
pub fn base_via_splitting(graph: &Graph, opts: BaseOptions) -> Result<BaseTrace, GroupsError> {
    let arr = check_drg(graph)?;
    let dm = graph.distance_matrix();
    let d = arr.d() as u64;
    if !opts.relax_preconditions {
        if arr.d() <= 2 {
            return Err(GroupsError::PreconditionFailed(format!(
                "diameter {} is not greater than 2",
                arr.d()
            )));
        }
        if !is_primitive(graph, &dm)? {
            return Err(GroupsError::PreconditionFailed("graph is not primitive".into()));
        }
    }
    let group = automorphisms(graph, opts.cap)?;
    let g2 = distance_i_graph(graph, &dm, 2)?;
    if !g2.is_connected() {
        return Err(GroupsError::PreconditionFailed("distance-2 graph is disconnected".into()));
    }
    for (name, g) in [("G", graph), ("G2", &g2)] {
        if !edge_transitive(g, &group) {
            return Err(GroupsError::NotEdgeTransitive { graph: name.into() });
        }
    }
    let sigma = find_halving_set(&group);
    let st = stabilizer_orbits(&group, &sigma);
    let k = arr.k();
    let mut orbit_rows = Vec::new();
    for orbit in &st.orbits {
        let boundary = graph
            .edges()
            .iter()
            .filter(|&&(u, v)| {
                let iu = orbit.binary_search(&u).is_ok();
                let iv = orbit.binary_search(&v).is_ok();
                iu != iv
            })
            .count() as u64;
        // Expansion instance on the orbit: |delta(S)| * 2d >= k |S|.
        if (boundary as u128) * 2 * (d as u128) < (k as u128) * orbit.len() as u128 {
            return Err(GroupsError::PreconditionFailed(format!(
                "orbit at {} violates the expansion bound",
                orbit[0]
            )));
        }
        orbit_rows.push(OrbitRow {
            orbit_min: orbit[0],
            size: orbit.len() as u64,
            boundary_edges: boundary,
        });
    }
    let split_by_sigma = split_count_with(graph, &st.orbit_rep);
    // Summing boundaries counts each split edge twice: sigma splits at least
    // q/(2d) edges.
    if (split_by_sigma.split as u128) * 2 * (d as u128) < split_by_sigma.edges as u128 {
        return Err(GroupsError::PreconditionFailed(
            "halving set splits fewer than q/(2d) edges".into(),
        ));
    }
    let run_g = splitting_set(graph, &group, &sigma)?;
    let run_g2 = splitting_set(&g2, &group, &sigma)?;
    let mut sigma_prime: BTreeSet<u32> = run_g.delta.iter().copied().collect();
    sigma_prime.extend(run_g2.delta.iter().copied());
    let sigma_prime: Vec<u32> = sigma_prime.into_iter().collect();
    let stabilizer_trivial = verify_full_split_base(graph, &group, &sigma_prime)?;
    Ok(BaseTrace {
        group_order: group.order(),
        sigma,
        orbit_rows,
        split_by_sigma,
        run_g,
        run_g2,
        sigma_prime,
        stabilizer_trivial,
    })
}

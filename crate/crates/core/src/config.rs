//! Coherent configurations from distance-regular graphs: coherence
//! verification, the geodesic weight invariant P with its exact identity
//! `nk * P = sum of all distances`, edge expansion `|delta(S)|/|S| >= k/(2d)`,
//! and the distinguishing number D_min with its lower bounds.

use crate::arrays::IntersectionArray;
use crate::graphs::{distance_i_graph, Graph};
use crate::par;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum ConfigError {
    #[error("coherence violation: c_{{S={s},T={t}}}^{{R={r}}} differs between ({u1},{v1}) and ({u2},{v2})")]
    CoherenceViolation {
        r: u8,
        s: u8,
        t: u8,
        u1: u32,
        v1: u32,
        u2: u32,
        v2: u32,
    },
    #[error("relation {0} is not connected")]
    RelationDisconnected(usize),
    #[error("exhaustive mode requires n <= 20, got n = {0}")]
    ExhaustiveTooLarge(usize),
    #[error("expansion bound violated: |delta(S)| = {cut}, |S| = {size}, bound k/(2d) = {k}/{two_d}")]
    BoundViolation {
        cut: u64,
        size: u64,
        k: u64,
        two_d: u64,
        witness: Vec<u32>,
    },
    #[error("geodesic weight differs between edges ({u1},{v1}) and ({u2},{v2})")]
    InvarianceViolation { u1: u32, v1: u32, u2: u32, v2: u32 },
    #[error("configuration is not primitive: relation {0} is disconnected")]
    NotPrimitive(usize),
    #[error("graph is not distance-regular enough to form a configuration")]
    NotConfiguration,
}

/// Partition of V x V into distance relations with verified intersection
/// numbers `c_{ST}^R`.
#[derive(Debug, Clone)]
pub struct CoherentConfiguration {
    n: usize,
    rank: usize,
    relation: Vec<u8>,
    /// `c_{ST}^R` at `(r * rank + s) * rank + t`.
    table: Vec<u32>,
    valencies: Vec<u64>,
    /// Diameter of each relation graph; `None` when disconnected, 0 for the
    /// diagonal.
    diameters: Vec<Option<usize>>,
}

impl CoherentConfiguration {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    #[inline]
    pub fn rel(&self, x: u32, y: u32) -> u8 {
        self.relation[x as usize * self.n + y as usize]
    }

    pub fn intersection_number(&self, r: u8, s: u8, t: u8) -> u32 {
        self.table[(r as usize * self.rank + s as usize) * self.rank + t as usize]
    }

    /// Valency of each relation (`k_i` for DRG configurations).
    pub fn valencies(&self) -> &[u64] {
        &self.valencies
    }

    pub fn diameters(&self) -> &[Option<usize>] {
        &self.diameters
    }

    pub fn is_primitive(&self) -> bool {
        self.diameters[1..].iter().all(|d| d.is_some())
    }

    /// The graph of a symmetric nondiagonal relation.
    pub fn relation_graph(&self, i: usize) -> Graph {
        assert!(i >= 1 && i < self.rank);
        let mut edges = Vec::new();
        for x in 0..self.n as u32 {
            for y in x + 1..self.n as u32 {
                if self.rel(x, y) as usize == i {
                    edges.push((x, y));
                }
            }
        }
        Graph::from_edges(self.n, &edges).unwrap()
    }

    /// Brute-force path count for Lemma-paths style checks: the number of
    /// tuples `(v_1, ..., v_m)` with `v_1 = u`, `v_m = w` and
    /// `(v_i, v_{i+1}) in shape[i]`.
    pub fn path_count(&self, shape: &[u8], u: u32, w: u32) -> u64 {
        match shape.len() {
            0 => u64::from(u == w),
            1 => u64::from(self.rel(u, w) == shape[0]),
            _ => {
                let mut count = 0u64;
                for v in 0..self.n as u32 {
                    if self.rel(u, v) == shape[0] {
                        count += self.path_count(&shape[1..], v, w);
                    }
                }
                count
            }
        }
    }
}

/// Builds and verifies the rank d+1 configuration of distance relations.
pub fn from_drg(g: &Graph, arr: &IntersectionArray) -> Result<CoherentConfiguration, ConfigError> {
    from_drg_impl(g, arr, false)
}

/// Sequential variant, for benchmarks and determinism cross-checks.
pub fn from_drg_seq(g: &Graph, arr: &IntersectionArray) -> Result<CoherentConfiguration, ConfigError> {
    from_drg_impl(g, arr, true)
}

fn from_drg_impl(
    g: &Graph,
    arr: &IntersectionArray,
    force_seq: bool,
) -> Result<CoherentConfiguration, ConfigError> {
    let n = g.n();
    let dm = g.distance_matrix();
    let diameter = dm.diameter().ok_or(ConfigError::NotConfiguration)?;
    if diameter != arr.d() {
        return Err(ConfigError::NotConfiguration);
    }
    let rank = diameter + 1;
    let relation: Vec<u8> = (0..n as u32)
        .flat_map(|x| (0..n as u32).map(move |y| (x, y)))
        .map(|(x, y)| dm.dist(x, y))
        .collect();
    let cfg_rel = relation.clone();
    let count_pair = |u: u32, v: u32| -> Vec<u32> {
        let mut counts = vec![0u32; rank * rank];
        let ru = &cfg_rel[u as usize * n..(u as usize + 1) * n];
        for w in 0..n {
            let s = ru[w] as usize;
            let t = cfg_rel[w * n + v as usize] as usize;
            counts[s * rank + t] += 1;
        }
        counts
    };
    // Reference counts from the least pair of each relation.
    let mut reference: Vec<Option<(u32, u32, Vec<u32>)>> = vec![None; rank];
    'outer: for u in 0..n as u32 {
        for v in 0..n as u32 {
            let r = cfg_rel[u as usize * n + v as usize] as usize;
            if reference[r].is_none() {
                reference[r] = Some((u, v, count_pair(u, v)));
                if reference.iter().all(|x| x.is_some()) {
                    break 'outer;
                }
            }
        }
    }
    let reference: Vec<(u32, u32, Vec<u32>)> = reference.into_iter().map(|x| x.unwrap()).collect();
    // Verify every pair against the reference.
    let bad = par::find_min_index(n * n, force_seq, |p| {
        let (u, v) = ((p / n) as u32, (p % n) as u32);
        let r = cfg_rel[p] as usize;
        let counts = count_pair(u, v);
        let (ru, rv, ref_counts) = &reference[r];
        if counts != *ref_counts {
            let idx = counts
                .iter()
                .zip(ref_counts)
                .position(|(a, b)| a != b)
                .unwrap();
            Some(ConfigError::CoherenceViolation {
                r: r as u8,
                s: (idx / rank) as u8,
                t: (idx % rank) as u8,
                u1: *ru,
                v1: *rv,
                u2: u,
                v2: v,
            })
        } else {
            None
        }
    });
    if let Some((_, err)) = bad {
        return Err(err);
    }
    let mut table = vec![0u32; rank * rank * rank];
    for (r, (_, _, counts)) in reference.iter().enumerate() {
        table[r * rank * rank..(r + 1) * rank * rank].copy_from_slice(counts);
    }
    let params = arr.derive();
    let valencies: Vec<u64> = (0..rank)
        .map(|i| {
            use num_traits::ToPrimitive;
            params.k_i[i].to_u64().unwrap()
        })
        .collect();
    let mut diameters = vec![Some(0usize); rank];
    for (i, slot) in diameters.iter_mut().enumerate().skip(1) {
        let gi = distance_i_graph(g, &dm, i).unwrap();
        *slot = gi.distance_matrix().diameter();
    }
    Ok(CoherentConfiguration {
        n,
        rank,
        relation,
        table,
        valencies,
        diameters,
    })
}

/// The geodesic weight P of a relation: for any one edge, the weighted count
/// of geodesics through it, `sum_{x,y} N_e(x,y) / p(x,y)`. Constant over
/// edges, with `nk * P = sum_{x,y} d(x,y)` exactly.
#[derive(Debug, Clone)]
pub struct GeodesicWeight {
    pub relation: usize,
    pub value: BigRational,
    /// Distance sum identity side: `sum of d(x,y)` over ordered pairs.
    pub distance_sum: BigInt,
    /// Per-(R,S,T) pair counts from the proof, for one (hence every) edge.
    pub triple_counts: Vec<(u8, u8, u8, u64)>,
}

/// Computes P by exact geodesic counting on every directed edge of the
/// relation graph and asserts the per-edge values agree.
pub fn geodesic_weight(
    cfg: &CoherentConfiguration,
    relation: usize,
) -> Result<GeodesicWeight, ConfigError> {
    let g = cfg.relation_graph(relation);
    let n = g.n();
    let dm = g.distance_matrix();
    if !dm.is_connected() {
        return Err(ConfigError::RelationDisconnected(relation));
    }
    // Geodesic counts p(x, y) in the relation graph, exact.
    let mut paths: Vec<BigInt> = vec![BigInt::zero(); n * n];
    for x in 0..n as u32 {
        let mut order: Vec<u32> = (0..n as u32).collect();
        order.sort_by_key(|&y| dm.dist(x, y));
        paths[x as usize * n + x as usize] = BigInt::one();
        for &y in &order {
            if y == x {
                continue;
            }
            let dy = dm.dist(x, y);
            let mut total = BigInt::zero();
            for &z in g.neighbors(y) {
                if dm.dist(x, z) + 1 == dy {
                    total += &paths[x as usize * n + z as usize];
                }
            }
            paths[x as usize * n + y as usize] = total;
        }
    }
    // Triple-count table for one directed edge, cross-checked on all others.
    let table_for = |z: u32, w: u32| -> std::collections::BTreeMap<(u8, u8, u8), u64> {
        let mut t: std::collections::BTreeMap<(u8, u8, u8), u64> = std::collections::BTreeMap::new();
        for x in 0..n as u32 {
            for y in 0..n as u32 {
                if dm.dist(x, z) as usize + 1 + dm.dist(w, y) as usize != dm.dist(x, y) as usize {
                    continue;
                }
                *t.entry((cfg.rel(x, z), cfg.rel(w, y), cfg.rel(x, y)))
                    .or_insert(0u64) += 1;
            }
        }
        t
    };
    let weight_for = |t: &std::collections::BTreeMap<(u8, u8, u8), u64>,
                      p_of: &[BigInt]|
     -> BigRational {
        let mut total = BigRational::zero();
        for (&(r, s, tt), &count) in t {
            let pr = BigRational::from_integer(p_of[r as usize].clone());
            let ps = BigRational::from_integer(p_of[s as usize].clone());
            let pt = BigRational::from_integer(p_of[tt as usize].clone());
            total += BigRational::from_integer(BigInt::from(count)) * pr * ps / pt;
        }
        total
    };
    // p depends only on the relation (Lemma-paths consequence); verify.
    let mut p_of: Vec<Option<BigInt>> = vec![None; cfg.rank()];
    for x in 0..n as u32 {
        for y in 0..n as u32 {
            let r = cfg.rel(x, y) as usize;
            let p = &paths[x as usize * n + y as usize];
            match &p_of[r] {
                None => p_of[r] = Some(p.clone()),
                Some(q) if q != p => {
                    return Err(ConfigError::InvarianceViolation { u1: x, v1: y, u2: x, v2: y })
                }
                _ => {}
            }
        }
    }
    let p_of: Vec<BigInt> = p_of.into_iter().map(|x| x.unwrap()).collect();
    type TripleTable = std::collections::BTreeMap<(u8, u8, u8), u64>;
    let mut first: Option<(u32, u32, TripleTable)> = None;
    for (u, v) in g.edges() {
        for (z, w) in [(u, v), (v, u)] {
            let t = table_for(z, w);
            match &first {
                None => first = Some((z, w, t)),
                Some((fz, fw, ft)) => {
                    if *ft != t {
                        return Err(ConfigError::InvarianceViolation {
                            u1: *fz,
                            v1: *fw,
                            u2: z,
                            v2: w,
                        });
                    }
                }
            }
        }
    }
    let (_, _, table) = first.ok_or(ConfigError::RelationDisconnected(relation))?;
    let value = weight_for(&table, &p_of);
    // nk * P = sum d(x,y), both over ordered pairs.
    let distance_sum: BigInt = (0..n as u32)
        .flat_map(|x| (0..n as u32).map(move |y| (x, y)))
        .map(|(x, y)| BigInt::from(dm.dist(x, y)))
        .sum();
    let nk = BigInt::from(n as u64) * BigInt::from(g.degree(0) as u64);
    if BigRational::from_integer(nk) * &value != BigRational::from_integer(distance_sum.clone()) {
        return Err(ConfigError::InvarianceViolation { u1: 0, v1: 0, u2: 0, v2: 0 });
    }
    Ok(GeodesicWeight {
        relation,
        value,
        distance_sum,
        triple_counts: table.into_iter().map(|((r, s, t), c)| (r, s, t, c)).collect(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExpansionMode {
    Exhaustive,
    Sampled { seed: u64, count: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExpansionReport {
    pub relation: usize,
    /// Minimum of |delta(S)| / |S| as an exact pair (cut, size).
    pub min_cut: u64,
    pub min_size: u64,
    pub witness: Vec<u32>,
    /// The claimed lower bound k/(2d) as a pair.
    pub degree: u64,
    pub two_diam: u64,
    pub subsets_checked: u64,
}

#[derive(Clone, PartialEq, Eq)]
struct CutKey {
    cut: u64,
    size: u64,
    mask_or_id: u128,
}

impl Ord for CutKey {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        let lhs = self.cut as u128 * other.size as u128;
        let rhs = other.cut as u128 * self.size as u128;
        lhs.cmp(&rhs)
            .then(self.size.cmp(&other.size))
            .then(self.mask_or_id.cmp(&other.mask_or_id))
    }
}

impl PartialOrd for CutKey {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Verifies `|delta_G(S)|/|S| >= k/(2d)` over subsets of the relation graph,
/// either all of them (n <= 20) or a seeded sample including the adversarial
/// candidates (BFS balls and half-layers).
pub fn expansion_check(
    cfg: &CoherentConfiguration,
    relation: usize,
    mode: ExpansionMode,
) -> Result<ExpansionReport, ConfigError> {
    let g = cfg.relation_graph(relation);
    expansion_check_graph(&g, relation, mode, false)
}

/// Sequential exhaustive scan, for benchmarks.
pub fn expansion_check_seq(
    cfg: &CoherentConfiguration,
    relation: usize,
    mode: ExpansionMode,
) -> Result<ExpansionReport, ConfigError> {
    let g = cfg.relation_graph(relation);
    expansion_check_graph(&g, relation, mode, true)
}

pub(crate) fn expansion_check_graph(
    g: &Graph,
    relation: usize,
    mode: ExpansionMode,
    force_seq: bool,
) -> Result<ExpansionReport, ConfigError> {
    let n = g.n();
    let dm = g.distance_matrix();
    let diam = dm.diameter().ok_or(ConfigError::RelationDisconnected(relation))? as u64;
    let k = g.degree(0) as u64;
    let half = (n / 2) as u32;
    let edges = g.edges();
    let (best, witness, checked) = match mode {
        ExpansionMode::Exhaustive => {
            if n > 20 {
                return Err(ConfigError::ExhaustiveTooLarge(n));
            }
            let total: usize = (1usize << n) - 1;
            let best = par::min_over(total, force_seq, |i| {
                let mask = (i + 1) as u32;
                let size = mask.count_ones();
                if size > half {
                    return None;
                }
                let cut = edges
                    .iter()
                    .filter(|&&(u, v)| (mask >> u & 1) != (mask >> v & 1))
                    .count() as u64;
                Some(CutKey {
                    cut,
                    size: size as u64,
                    mask_or_id: mask as u128,
                })
            })
            .expect("at least one subset");
            let witness: Vec<u32> = (0..n as u32)
                .filter(|&v| best.mask_or_id >> v & 1 == 1)
                .collect();
            let count = (1..=half).map(|s| binom(n as u64, s as u64)).sum::<u128>() as u64;
            (best, witness, count)
        }
        ExpansionMode::Sampled { seed, count } => {
            let mut candidates: Vec<Vec<u32>> = Vec::new();
            // BFS balls and half-layers around every vertex.
            for v in 0..n as u32 {
                let mut by_dist: Vec<Vec<u32>> = vec![Vec::new(); diam as usize + 1];
                for y in 0..n as u32 {
                    by_dist[dm.dist(v, y) as usize].push(y);
                }
                let mut ball: Vec<u32> = Vec::new();
                for layer in &by_dist {
                    let mut with_half = ball.clone();
                    with_half.extend(layer.iter().take(layer.len().div_ceil(2)));
                    ball.extend_from_slice(layer);
                    for cand in [ball.clone(), with_half] {
                        if !cand.is_empty() && cand.len() as u32 <= half {
                            candidates.push(cand);
                        }
                    }
                }
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            while (candidates.len() as u64) < count {
                let size = rng.gen_range(1..=half.max(1));
                let mut pool: Vec<u32> = (0..n as u32).collect();
                for i in 0..size as usize {
                    let j = rng.gen_range(i..n);
                    pool.swap(i, j);
                }
                let mut s = pool[..size as usize].to_vec();
                s.sort_unstable();
                candidates.push(s);
            }
            let total = candidates.len();
            let best = par::min_over(total, force_seq, |i| {
                let set = &candidates[i];
                let mut member = vec![false; n];
                for &v in set {
                    member[v as usize] = true;
                }
                let cut = edges
                    .iter()
                    .filter(|&&(u, v)| member[u as usize] != member[v as usize])
                    .count() as u64;
                Some(CutKey {
                    cut,
                    size: set.len() as u64,
                    mask_or_id: i as u128,
                })
            })
            .expect("at least one subset");
            let witness = candidates[best.mask_or_id as usize].clone();
            (best, witness, total as u64)
        }
    };
    // |delta(S)| / |S| >= k / (2 diam)  <=>  cut * 2 diam >= k * |S|.
    if best.cut as u128 * 2 * diam as u128 >= k as u128 * best.size as u128 {
        Ok(ExpansionReport {
            relation,
            min_cut: best.cut,
            min_size: best.size,
            witness,
            degree: k,
            two_diam: 2 * diam,
            subsets_checked: checked,
        })
    } else {
        Err(ConfigError::BoundViolation {
            cut: best.cut,
            size: best.size,
            k,
            two_d: 2 * diam,
            witness,
        })
    }
}

fn binom(n: u64, k: u64) -> u128 {
    let mut r: u128 = 1;
    for i in 0..k.min(n - k) {
        r = r * (n - i) as u128 / (i + 1) as u128;
    }
    r
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DMinResult {
    pub value: u64,
    pub witness: (u32, u32),
}

/// `D_min = min over ordered pairs x != y of |{z : r(x,z) != r(y,z)}|`.
pub fn d_min(cfg: &CoherentConfiguration) -> DMinResult {
    d_min_impl(cfg, false)
}

pub fn d_min_seq(cfg: &CoherentConfiguration) -> DMinResult {
    d_min_impl(cfg, true)
}

fn d_min_impl(cfg: &CoherentConfiguration, force_seq: bool) -> DMinResult {
    let n = cfg.n();
    let best = par::min_over(n * n, force_seq, |p| {
        let (x, y) = ((p / n) as u32, (p % n) as u32);
        if x == y {
            return None;
        }
        let count = (0..n as u32).filter(|&z| cfg.rel(x, z) != cfg.rel(y, z)).count() as u64;
        Some((count, x, y))
    })
    .expect("n >= 2");
    DMinResult {
        value: best.0,
        witness: (best.1, best.2),
    }
}

#[derive(Debug, Clone)]
pub struct DMinBounds {
    /// `(n - k_max) / max relation diameter`.
    pub dmin_bound: BigRational,
    /// `eps * n / d` with the best `eps = max_j min(b_j, c_{j+1}) / k`.
    pub bandc_bound: BigRational,
    pub max_relation_diameter: usize,
}

/// The two lower bounds on D_min for a primitive configuration.
pub fn d_min_lower_bounds(
    arr: &IntersectionArray,
    cfg: &CoherentConfiguration,
) -> Result<DMinBounds, ConfigError> {
    if let Some(i) = cfg.diameters()[1..].iter().position(|d| d.is_none()) {
        return Err(ConfigError::NotPrimitive(i + 1));
    }
    let params = arr.derive();
    let max_diam = cfg.diameters()[1..]
        .iter()
        .map(|d| d.unwrap())
        .max()
        .unwrap();
    let n = params.n.clone();
    let dmin_bound = BigRational::new(n.clone() - params.k_max.clone(), BigInt::from(max_diam as u64));
    let d = arr.d() as u64;
    let k = arr.k();
    let eps = (1..arr.d())
        .map(|j| {
            let m = arr.b()[j].min(arr.c()[j]);
            BigRational::new(BigInt::from(m), BigInt::from(k))
        })
        .max()
        .unwrap_or_else(BigRational::zero);
    let bandc_bound = eps * BigRational::new(n, BigInt::from(d));
    Ok(DMinBounds {
        dmin_bound,
        bandc_bound,
        max_relation_diameter: max_diam,
    })
}

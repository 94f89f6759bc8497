//! Module-level invariant checks beyond the acceptance criteria: path-count
//! constancy, zero-weight and distinguishing-number instances, imprimitivity
//! cross-checks, geometry structure, splitting-round accounting, and
//! parallel/sequential agreement.

mod common;

use drg_core::arrays::{enumerate_valid_arrays, match_family, FamilyTag, IntersectionArray};
use drg_core::catalog::{catalog, extended_catalog, ORACLE_CAP};
use drg_core::config::{self, ExpansionMode};
use drg_core::graphs::{
    build_family, check_drg, find_clique_geometry, folded_graph, halved_graphs, is_primitive,
    named, neighborhood_graphs_connected, Graph,
};
use drg_core::groups::{
    automorphisms, find_halving_set, find_isomorphism, motion_exact, motion_exact_seq,
    splitting_set, stabilizer_orbits, verify_full_split_base, GroupsError, PermGroup,
};
use drg_core::spectrum::spectrum;
use num_traits::ToPrimitive;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn group_of(g: &Graph) -> Option<PermGroup> {
    automorphisms(g, ORACLE_CAP).ok()
}

#[test]
fn family_results_agree_with_isomorphism() {
    let tags = [
        FamilyTag::Johnson { s: 5, d: 2 },
        FamilyTag::Johnson { s: 6, d: 3 },
        FamilyTag::Hamming { d: 3, s: 2 },
        FamilyTag::Hamming { d: 2, s: 4 },
        FamilyTag::Crown { m: 4 },
        FamilyTag::Crown { m: 6 },
        FamilyTag::Cycle { n: 7 },
    ];
    for tag in tags {
        let g = build_family(tag, 10_000).unwrap();
        let arr = check_drg(&g).unwrap();
        let matched = match_family(&arr);
        assert!(matched.contains(&tag), "{tag} not matched by its own array");
        for other in matched {
            let h = build_family(other, 10_000).unwrap();
            let iso = find_isomorphism(&g, &h)
                .unwrap_or_else(|| panic!("{tag} should be isomorphic to {other}"));
            for (u, v) in g.edges() {
                assert!(h.has_edge(iso.apply(u), iso.apply(v)));
            }
        }
    }
}

#[test]
fn path_counts_depend_only_on_relation() {
    for e in catalog() {
        if e.graph.n() > 30 {
            continue;
        }
        let cfg = config::from_drg(&e.graph, &e.array).unwrap();
        let rank = cfg.rank() as u8;
        let n = cfg.n() as u32;
        // All shapes (R1, R2, R3), i.e. paths with m = 4 vertices.
        for r1 in 0..rank {
            for r2 in 0..rank {
                for r3 in 0..rank {
                    let shape = [r1, r2, r3];
                    let mut per_relation: Vec<Option<u64>> = vec![None; rank as usize];
                    for u in 0..n {
                        for w in 0..n {
                            let r = cfg.rel(u, w) as usize;
                            let count = cfg.path_count(&shape, u, w);
                            match per_relation[r] {
                                None => per_relation[r] = Some(count),
                                Some(c) => assert_eq!(
                                    c, count,
                                    "{}: path count varies within relation {r} for shape {shape:?}",
                                    e.name
                                ),
                            }
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn zerow_dmin_and_motion_instances() {
    for e in extended_catalog() {
        let Some(group) = group_of(&e.graph) else { continue };
        let Ok(motion) = motion_exact(&group) else { continue };
        let cfg = config::from_drg(&e.graph, &e.array).unwrap();
        // motion >= D_min always.
        let dmin = config::d_min(&cfg);
        assert!(
            motion.value >= dmin.value,
            "{}: motion {} < D_min {}",
            e.name,
            motion.value,
            dmin.value
        );
        // D_min >= (n - k_max)/relation-diameter for primitive configurations.
        if let Ok(bounds) = config::d_min_lower_bounds(&e.array, &cfg) {
            let dmin_rat = num_rational::BigRational::from_integer(dmin.value.into());
            assert!(dmin_rat >= bounds.dmin_bound, "{}: dmin bound", e.name);
        }
        // Zero-weight bound for d >= 2 arrays.
        if e.array.d() >= 2 {
            let spec = spectrum(&e.array).unwrap();
            let params = e.array.derive();
            let n = params.n.to_f64().unwrap();
            let k = e.array.k() as f64;
            let q = e.array.lambda().max(params.mu.unwrap()) as f64;
            let bound = n * (k - spec.xi - q) / k;
            assert!(
                motion.value as f64 >= bound - 1e-6,
                "{}: motion {} below zero-weight bound {bound}",
                e.name,
                motion.value
            );
        }
    }
}

#[test]
fn imprimitivity_flags_agree_with_explicit_tests() {
    for e in extended_catalog() {
        if e.array.k() < 3 || e.array.d() < 2 {
            continue;
        }
        let flags = e.array.imprimitivity().unwrap();
        let dm = e.graph.distance_matrix();
        assert_eq!(
            flags.bipartite,
            e.graph.bipartition().is_some(),
            "{}: bipartite flag",
            e.name
        );
        assert_eq!(
            flags.antipodal,
            folded_graph(&e.graph).is_ok(),
            "{}: antipodal flag",
            e.name
        );
        assert_eq!(
            flags.primitive,
            is_primitive(&e.graph, &dm).unwrap(),
            "{}: primitive flag",
            e.name
        );
    }
}

#[test]
fn halved_graphs_are_never_bipartite() {
    for e in extended_catalog() {
        if e.array.k() < 3 || e.graph.bipartition().is_none() || e.array.d() < 2 {
            continue;
        }
        let halves = halved_graphs(&e.graph).unwrap();
        for side in [&halves.plus, &halves.minus] {
            assert!(
                side.bipartition().is_none(),
                "{}: halved graph is bipartite",
                e.name
            );
        }
    }
}

#[test]
fn bang_koolen_and_mint_instances() {
    // Catalog scan: whenever lambda > m^2 mu, a Delsarte geometry must exist.
    let mut geometries = 0;
    let mut entries = extended_catalog();
    entries.push(drg_core::catalog::CatalogEntry {
        name: "hamming(2,20)".into(),
        graph: build_family(FamilyTag::Hamming { d: 2, s: 20 }, 10_000).unwrap(),
        array: IntersectionArray::new(vec![38, 19], vec![1, 2]).unwrap(),
    });
    for e in entries {
        if e.array.d() < 2 {
            continue;
        }
        let spec = spectrum(&e.array).unwrap();
        let Some(m_int) = spec.m_integer.clone() else { continue };
        let m = (-m_int.clone()).to_u64().unwrap();
        let hypothesis = e.array.lambda() as u128 > (m * m) as u128 * e.array.mu().unwrap() as u128;
        let geometry = find_clique_geometry(&e.graph, &e.array, &spec);
        if hypothesis {
            assert!(
                geometry.is_ok(),
                "{}: Bang-Koolen hypothesis holds but no geometry found",
                e.name
            );
        }
        if let Ok(geo) = geometry {
            geometries += 1;
            for (v, &count) in geo.per_vertex_counts(e.graph.n()).iter().enumerate() {
                assert_eq!(
                    count as u64, m,
                    "{}: vertex {v} lies on {count} cliques, expected -m = {m}",
                    e.name
                );
            }
            // Neighborhood connectivity must be uniform in geometric graphs.
            neighborhood_graphs_connected(&e.graph).unwrap();
        }
    }
    assert!(geometries >= 4, "too few geometric instances: {geometries}");
}

#[test]
fn full_split_base_never_false_when_hypothesis_holds() {
    let graphs = [
        ("petersen", named::petersen()),
        ("hamming(3,2)", build_family(FamilyTag::Hamming { d: 3, s: 2 }, 100).unwrap()),
        ("hamming(2,3)", build_family(FamilyTag::Hamming { d: 2, s: 3 }, 100).unwrap()),
        ("icosahedron", named::icosahedron()),
        ("johnson(5,2)", build_family(FamilyTag::Johnson { s: 5, d: 2 }, 100).unwrap()),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for (name, g) in graphs {
        let group = automorphisms(&g, ORACLE_CAP).unwrap();
        let n = g.n() as u32;
        let mut hypothesis_hits = 0;
        for _ in 0..100 {
            let size = rng.gen_range(1..=n);
            let mut sigma: Vec<u32> = (0..n).collect();
            for i in 0..size as usize {
                let j = rng.gen_range(i..n as usize);
                sigma.swap(i, j);
            }
            sigma.truncate(size as usize);
            sigma.sort_unstable();
            match verify_full_split_base(&g, &group, &sigma) {
                Ok(trivial) => {
                    hypothesis_hits += 1;
                    assert!(
                        trivial,
                        "{name}: sigma {sigma:?} splits all edges of G and G2 but the stabilizer is nontrivial"
                    );
                }
                Err(GroupsError::HypothesisNotMet { .. }) => {}
                Err(other) => panic!("{name}: {other}"),
            }
        }
        assert!(hypothesis_hits > 0, "{name}: no random seed met the hypothesis");
    }
}

#[test]
fn splitting_rounds_follow_the_averaging_guarantee() {
    for (g, seed) in [
        (named::petersen(), vec![0u32]),
        (build_family(FamilyTag::Hamming { d: 3, s: 3 }, 100).unwrap(), vec![0u32]),
        (named::icosahedron(), vec![0u32, 1]),
    ] {
        let group = automorphisms(&g, ORACLE_CAP).unwrap();
        let run = splitting_set(&g, &group, &seed).unwrap();
        assert!(run.full_scan);
        assert!(run.rounds.len() as u64 <= run.round_bound);
        let q = g.edge_count() as u64;
        let c = run.seed_fraction;
        let mut remaining = q;
        for round in &run.rounds {
            // Averaging: the best translate splits at least c * |unsplit|.
            assert!(
                round.newly_split as u128 * (*c.denom() as u128)
                    >= (*c.numer() as u128) * remaining as u128,
                "round splits {} of {remaining}, below the c = {c} average",
                round.newly_split
            );
            remaining = round.remaining;
        }
        assert_eq!(remaining, 0);
        // The final halving set from the library keeps all orbits small.
        let sigma = find_halving_set(&group);
        let st = stabilizer_orbits(&group, &sigma);
        assert!(st.orbits.iter().all(|o| 2 * o.len() <= g.n()));
    }
}

#[test]
fn parallel_and_sequential_paths_agree() {
    let g = build_family(FamilyTag::Johnson { s: 6, d: 3 }, 100).unwrap();
    let arr = check_drg(&g).unwrap();
    let cfg = config::from_drg(&g, &arr).unwrap();
    let cfg_seq = config::from_drg_seq(&g, &arr).unwrap();
    assert_eq!(config::d_min(&cfg), config::d_min_seq(&cfg_seq));
    let a = config::expansion_check(&cfg, 1, ExpansionMode::Exhaustive).unwrap();
    let b = config::expansion_check_seq(&cfg, 1, ExpansionMode::Exhaustive).unwrap();
    assert_eq!((a.min_cut, a.min_size, &a.witness), (b.min_cut, b.min_size, &b.witness));
    let group = automorphisms(&g, ORACLE_CAP).unwrap();
    assert_eq!(motion_exact(&group).unwrap(), motion_exact_seq(&group).unwrap());
}

#[test]
fn derive_warns_when_k2_below_k1() {
    let arr = IntersectionArray::new(vec![4, 1], vec![1, 2]).unwrap();
    let params = arr.derive();
    assert_eq!(params.k_i[2].to_u64(), Some(2));
    assert!(!params.warnings.is_empty());
    // The usual case carries no warning.
    assert!(IntersectionArray::new(vec![3, 2], vec![1, 1])
        .unwrap()
        .derive()
        .warnings
        .is_empty());
}

#[test]
fn johnson63_base_matches_exhaustive_minimum() {
    let g = build_family(FamilyTag::Johnson { s: 6, d: 3 }, 100).unwrap();
    let group = automorphisms(&g, ORACLE_CAP).unwrap();
    let trace = drg_core::groups::base_via_splitting(
        &g,
        drg_core::groups::BaseOptions {
            relax_preconditions: true,
            cap: ORACLE_CAP,
        },
    )
    .unwrap();
    let minimal = common::minimal_base_size_oracle(&group, 4).unwrap();
    assert!(
        trace.sigma_prime.len() >= minimal,
        "pipeline base cannot beat the exhaustive minimum"
    );
    println!(
        "J(6,3): pipeline base size {}, exhaustive minimal base size {minimal}",
        trace.sigma_prime.len()
    );
}

#[test]
fn family_build_roundtrips_through_check_drg() {
    for tag in [
        FamilyTag::Johnson { s: 4, d: 2 },
        FamilyTag::Johnson { s: 7, d: 3 },
        FamilyTag::Hamming { d: 2, s: 5 },
        FamilyTag::Hamming { d: 4, s: 2 },
        FamilyTag::Crown { m: 5 },
        FamilyTag::Cycle { n: 8 },
        FamilyTag::Cycle { n: 9 },
    ] {
        let g = build_family(tag, 10_000).unwrap();
        assert_eq!(
            check_drg(&g).unwrap(),
            drg_core::arrays::family_array(tag).unwrap(),
            "{tag}"
        );
    }
}

#[test]
fn enumerated_group_is_closed() {
    let g = named::petersen();
    let group = automorphisms(&g, ORACLE_CAP).unwrap();
    let set: std::collections::HashSet<_> = group.elements.iter().cloned().collect();
    assert!(set.contains(&drg_core::groups::Perm::identity(10)));
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..200 {
        let p = &group.elements[rng.gen_range(0..group.elements.len())];
        let q = &group.elements[rng.gen_range(0..group.elements.len())];
        assert!(set.contains(&p.then(q)));
        assert!(set.contains(&p.inverse()));
    }
    // The recorded generating subset generates everything.
    let mut closure: std::collections::HashSet<_> =
        [drg_core::groups::Perm::identity(10)].into_iter().collect();
    let gens: Vec<_> = group.generators.iter().map(|&i| group.elements[i].clone()).collect();
    let mut frontier: Vec<_> = closure.iter().cloned().collect();
    while let Some(p) = frontier.pop() {
        for h in &gens {
            let q = p.then(h);
            if closure.insert(q.clone()) {
                frontier.push(q);
            }
        }
    }
    assert_eq!(closure.len() as u64, group.order());
}

#[test]
fn eigen_gap_over_exhaustive_arrays() {
    let mut degenerate = 0usize;
    let mut checked = 0usize;
    for arr in enumerate_valid_arrays(12, 4, None) {
        match spectrum(&arr) {
            Ok(spec) => {
                drg_core::spectrum::check_eigen_gap(&arr, &spec)
                    .unwrap_or_else(|e| panic!("eigen gap fails for {arr}: {e}"));
                checked += 1;
            }
            Err(drg_core::spectrum::SpectrumError::DegenerateSpectrum { .. }) => degenerate += 1,
            Err(other) => panic!("{arr}: {other}"),
        }
    }
    println!("eigen gap holds on {checked} arrays ({degenerate} degenerate-at-tolerance skipped)");
    assert!(checked > 10_000);
}

#[test]
fn geom_certificate_terminates_on_exhaustive_primitive_arrays() {
    // Coverage note: at k <= 12 every c_2 >= 1 exceeds k/(20 d^4), so the
    // dichotomy always resolves through the distinguishing-number branch.
    let mut branch_dmin = 0usize;
    let mut other = 0usize;
    for arr in enumerate_valid_arrays(12, 4, None) {
        if arr.d() < 3 {
            continue;
        }
        let Ok(flags) = arr.imprimitivity() else { continue };
        if !flags.primitive {
            continue;
        }
        let Ok(spec) = spectrum(&arr) else { continue };
        let (outcome, _) = drg_core::certifier::geom_certificate(&arr, &spec)
            .unwrap_or_else(|e| panic!("geom certificate broke on {arr}: {e}"));
        match outcome {
            drg_core::certifier::GeomOutcome::MotionBound(_) => branch_dmin += 1,
            _ => other += 1,
        }
    }
    println!("geom dichotomy: {branch_dmin} arrays in the c2-large branch, {other} elsewhere");
    assert!(branch_dmin > 1000);
    assert_eq!(other, 0, "desk-scale arrays must all have c2 > k/(20 d^4)");
}

#[test]
fn petersen_named_base_and_g2_splitting() {
    let g = named::petersen();
    let group = automorphisms(&g, ORACLE_CAP).unwrap();
    // {1,2}, {3,4}, {1,3} are vertices 0, 7, 1 in the lexicographic 2-subset
    // labeling; they form a base.
    let labels = g.labels().unwrap();
    assert_eq!(labels[0], "{1,2}");
    assert_eq!(labels[7], "{3,4}");
    assert_eq!(labels[1], "{1,3}");
    assert_eq!(stabilizer_orbits(&group, &[0, 7, 1]).fixing.len(), 1);
    // Splitting the distance-2 graph from a single vertex covers all 30 pairs.
    let dm = g.distance_matrix();
    let g2 = drg_core::graphs::distance_i_graph(&g, &dm, 2).unwrap();
    assert_eq!(g2.edge_count(), 30);
    let run = splitting_set(&g2, &group, &[0]).unwrap();
    let st = stabilizer_orbits(&group, &run.delta);
    assert!(g2
        .edges()
        .iter()
        .all(|&(u, v)| st.orbit_rep[u as usize] != st.orbit_rep[v as usize]));
}

#[test]
fn distance_partition_layers() {
    let q3 = build_family(FamilyTag::Hamming { d: 3, s: 2 }, 100).unwrap();
    let dp = drg_core::graphs::distance_partition(&q3, 0);
    let sizes: Vec<usize> = dp.layers.iter().map(|l| l.len()).collect();
    assert_eq!(sizes, vec![1, 3, 3, 1]);
    let p = named::petersen();
    let dp = drg_core::graphs::distance_partition(&p, 3);
    assert_eq!(
        dp.layers.iter().map(|l| l.len()).collect::<Vec<_>>(),
        vec![1, 3, 6]
    );
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn validate_is_stable_and_serde_roundtrips(index in 0usize..5000) {
        let arrays = enumerate_valid_arrays(8, 3, Some(400));
        let arr = &arrays[index % arrays.len()];
        // Re-validating the same sequences yields the same object.
        let again = IntersectionArray::new(arr.b().to_vec(), arr.c().to_vec()).unwrap();
        prop_assert_eq!(&again, arr);
        let json = serde_json::to_string(arr).unwrap();
        let back: IntersectionArray = serde_json::from_str(&json).unwrap();
        prop_assert_eq!(&back, arr);
        // Tags returned by match_family regenerate the array exactly.
        for tag in match_family(arr) {
            prop_assert_eq!(&drg_core::arrays::family_array(tag).unwrap(), arr);
        }
    }
}

//! Batch front-end: validate and analyze intersection arrays, generate family
//! graphs, verify distance-regularity, run the motion oracle and the
//! certificate pipeline, and replay the whole catalog.

use clap::{Args, Parser, Subcommand};
use drg_core::arrays::{FamilyTag, IntersectionArray, RawArray};
use drg_core::catalog::{catalog, search_realizations, soundness_row, ORACLE_CAP};
use drg_core::certifier::{analyze, analyze_graph};
use drg_core::config::{self, ExpansionMode};
use drg_core::graphs::{
    build_family, check_drg, find_clique_geometry, metsch_clique, read_edge_list, write_edge_list,
    Graph, GraphMeta,
};
use drg_core::groups::{automorphisms, base_via_splitting, motion_exact, BaseOptions};
use drg_core::spectrum::{check_eigen_gap, delsarte_bound, spectrum};
use std::fs::File;
use std::io::{BufReader, Write as _};
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "drg", version, about = "Distance-regular graph motion toolkit")]
struct Cli {
    /// Emit structured JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads for parallel scans (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct ArrayInput {
    /// Intersection array as JSON: {"d":3,"b":[9,4,1],"c":[1,4,9]}.
    #[arg(long)]
    array: String,
}

#[derive(Args)]
struct GraphInput {
    /// Edge-list file: first line "n m", then m lines "u v".
    #[arg(long)]
    graph: String,
}

#[derive(Subcommand)]
enum Command {
    /// Validate an intersection array and print its derived parameters.
    Validate(ArrayInput),
    /// Run the certificate pipeline on an array or an explicit graph.
    Analyze {
        #[arg(long)]
        array: Option<String>,
        #[arg(long)]
        graph: Option<String>,
    },
    /// Generate a family graph as an edge list.
    Generate {
        /// One of: johnson, hamming, crown, cycle.
        #[arg(long)]
        family: String,
        #[arg(long)]
        s: Option<u64>,
        #[arg(long)]
        d: Option<u64>,
        #[arg(long)]
        m: Option<u64>,
        #[arg(long)]
        n: Option<u64>,
        /// Output file (stdout when omitted).
        #[arg(long)]
        out: Option<String>,
        /// Also write a <out>.meta.json sidecar with family tag and labels.
        #[arg(long)]
        meta: bool,
        /// Vertex-count cap.
        #[arg(long, default_value_t = 10_000)]
        cap: usize,
    },
    /// Verify distance-regularity and print the intersection array.
    CheckDrg(GraphInput),
    /// Exact motion via the automorphism oracle, or the certified bound.
    Motion {
        #[arg(long)]
        graph: String,
        #[arg(long)]
        exact: bool,
        #[arg(long)]
        certify: bool,
        #[arg(long, default_value_t = 10_000_000)]
        cap: u64,
    },
    /// Edge expansion of a distance relation.
    Expansion {
        #[arg(long)]
        graph: String,
        #[arg(long, default_value_t = 1)]
        relation: usize,
        #[arg(long)]
        exhaustive: bool,
        #[arg(long)]
        samples: Option<u64>,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Distinguishing number D_min with its lower bounds.
    Dmin(GraphInput),
    /// Delsarte clique geometry and the Metsch clique.
    Geometry(GraphInput),
    /// The splitting-set base pipeline.
    Base {
        #[arg(long)]
        graph: String,
        /// Relax the diameter/primitivity gate.
        #[arg(long)]
        relaxed: bool,
        #[arg(long, default_value_t = 10_000_000)]
        cap: u64,
    },
    /// Soundness run over the built-in catalog.
    Catalog,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if let Err(e) = drg_core::configure_threads(n) {
            eprintln!("error: thread pool: {e}");
            return ExitCode::from(1);
        }
    }
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

fn parse_array(s: &str) -> Result<IntersectionArray, String> {
    let raw: RawArray = serde_json::from_str(s).map_err(|e| format!("BadArrayJson: {e}"))?;
    IntersectionArray::from_raw(&raw).map_err(|e| e.to_string())
}

fn load_graph(path: &str) -> Result<Graph, String> {
    let f = File::open(path).map_err(|e| format!("Io: {path}: {e}"))?;
    read_edge_list(BufReader::new(f)).map_err(|e| e.to_string())
}

fn run(cli: Cli) -> Result<(), String> {
    match cli.command {
        Command::Validate(a) => {
            let raw: RawArray =
                serde_json::from_str(&a.array).map_err(|e| format!("BadArrayJson: {e}"))?;
            match IntersectionArray::from_raw(&raw) {
                Ok(arr) => {
                    let p = arr.derive();
                    if cli.json {
                        let v = serde_json::json!({
                            "valid": true,
                            "array": arr.to_raw(),
                            "n": p.n.to_string(),
                            "k": p.k,
                            "lambda": p.lambda,
                            "mu": p.mu,
                            "k_i": p.k_i.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
                            "warnings": p.warnings,
                        });
                        println!("{v}");
                    } else {
                        println!("valid: {arr}");
                        println!("n = {}, k = {}, lambda = {}, mu = {:?}", p.n, p.k, p.lambda, p.mu);
                        println!(
                            "sphere sizes: {}",
                            p.k_i.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
                        );
                        for w in &p.warnings {
                            println!("warning: {w}");
                        }
                    }
                    Ok(())
                }
                Err(report) => {
                    if cli.json {
                        let v = serde_json::json!({
                            "valid": false,
                            "violations": report.violations.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
                        });
                        println!("{v}");
                        Ok(())
                    } else {
                        Err(report.to_string())
                    }
                }
            }
        }
        Command::Analyze { array, graph } => {
            let rep = match (array, graph) {
                (Some(a), None) => analyze(&parse_array(&a)?, None),
                (None, Some(g)) => analyze_graph(&load_graph(&g)?),
                (Some(a), Some(g)) => analyze(&parse_array(&a)?, Some(&load_graph(&g)?)),
                (None, None) => return Err("Usage: analyze needs --array or --graph".into()),
            }
            .map_err(|e| e.to_string())?;
            if cli.json {
                println!("{}", rep.to_json());
            } else {
                print_report(&rep);
            }
            Ok(())
        }
        Command::Generate {
            family,
            s,
            d,
            m,
            n,
            out,
            meta,
            cap,
        } => {
            let tag = match family.as_str() {
                "johnson" => FamilyTag::Johnson {
                    s: s.ok_or("johnson needs --s")?,
                    d: d.ok_or("johnson needs --d")?,
                },
                "hamming" => FamilyTag::Hamming {
                    d: d.ok_or("hamming needs --d")?,
                    s: s.ok_or("hamming needs --s")?,
                },
                "crown" => FamilyTag::Crown {
                    m: m.ok_or("crown needs --m")?,
                },
                "cycle" => FamilyTag::Cycle {
                    n: n.ok_or("cycle needs --n")?,
                },
                other => return Err(format!("unknown family '{other}'")),
            };
            let g = build_family(tag, cap).map_err(|e| e.to_string())?;
            match &out {
                Some(path) => {
                    let mut f = File::create(path).map_err(|e| format!("Io: {path}: {e}"))?;
                    write_edge_list(&g, &mut f).map_err(|e| format!("Io: {e}"))?;
                    if meta {
                        let side = GraphMeta {
                            family: Some(tag.to_string()),
                            labels: g.labels().map(|l| l.to_vec()),
                        };
                        let mpath = format!("{path}.meta.json");
                        let mf = File::create(&mpath).map_err(|e| format!("Io: {mpath}: {e}"))?;
                        serde_json::to_writer(mf, &side).map_err(|e| format!("Io: {e}"))?;
                    }
                }
                None => {
                    let mut buf = Vec::new();
                    write_edge_list(&g, &mut buf).map_err(|e| format!("Io: {e}"))?;
                    std::io::stdout().write_all(&buf).map_err(|e| format!("Io: {e}"))?;
                }
            }
            Ok(())
        }
        Command::CheckDrg(gi) => {
            let g = load_graph(&gi.graph)?;
            let arr = check_drg(&g).map_err(|e| e.to_string())?;
            if cli.json {
                println!("{}", serde_json::to_string(&arr).unwrap());
            } else {
                println!("{arr}");
            }
            Ok(())
        }
        Command::Motion {
            graph,
            exact,
            certify,
            cap,
        } => {
            let g = load_graph(&graph)?;
            if exact == certify {
                return Err("Usage: motion needs exactly one of --exact / --certify".into());
            }
            if exact {
                let group = automorphisms(&g, cap).map_err(|e| e.to_string())?;
                let m = motion_exact(&group).map_err(|e| e.to_string())?;
                if cli.json {
                    println!(
                        "{}",
                        serde_json::json!({"motion": m.value, "group_order": group.order()})
                    );
                } else {
                    println!("{}", m.value);
                }
            } else {
                let rep = analyze_graph(&g).map_err(|e| e.to_string())?;
                if cli.json {
                    println!("{}", rep.to_json());
                } else {
                    match rep.best_bound() {
                        Some((b, excl)) => {
                            println!("motion {} {}", if excl { ">" } else { ">=" }, b)
                        }
                        None => println!("no unconditional bound certified"),
                    }
                }
            }
            Ok(())
        }
        Command::Expansion {
            graph,
            relation,
            exhaustive,
            samples,
            seed,
        } => {
            let g = load_graph(&graph)?;
            let arr = check_drg(&g).map_err(|e| e.to_string())?;
            let cfg = config::from_drg(&g, &arr).map_err(|e| e.to_string())?;
            let mode = if exhaustive {
                ExpansionMode::Exhaustive
            } else {
                ExpansionMode::Sampled {
                    seed,
                    count: samples.unwrap_or(100_000),
                }
            };
            let rep = config::expansion_check(&cfg, relation, mode).map_err(|e| e.to_string())?;
            if cli.json {
                println!(
                    "{}",
                    serde_json::json!({
                        "relation": rep.relation,
                        "min_cut": rep.min_cut,
                        "min_size": rep.min_size,
                        "bound": format!("{}/{}", rep.degree, rep.two_diam),
                        "witness": rep.witness,
                        "subsets_checked": rep.subsets_checked,
                    })
                );
            } else {
                println!(
                    "min |delta(S)|/|S| = {}/{} >= {}/{} over {} subsets; witness {:?}",
                    rep.min_cut, rep.min_size, rep.degree, rep.two_diam, rep.subsets_checked, rep.witness
                );
            }
            Ok(())
        }
        Command::Dmin(gi) => {
            let g = load_graph(&gi.graph)?;
            let arr = check_drg(&g).map_err(|e| e.to_string())?;
            let cfg = config::from_drg(&g, &arr).map_err(|e| e.to_string())?;
            let r = config::d_min(&cfg);
            let bounds = config::d_min_lower_bounds(&arr, &cfg).ok();
            if cli.json {
                println!(
                    "{}",
                    serde_json::json!({
                        "d_min": r.value,
                        "witness": [r.witness.0, r.witness.1],
                        "dmin_bound": bounds.as_ref().map(|b| b.dmin_bound.to_string()),
                        "bandc_bound": bounds.as_ref().map(|b| b.bandc_bound.to_string()),
                    })
                );
            } else {
                println!("D_min = {} at pair ({}, {})", r.value, r.witness.0, r.witness.1);
                if let Some(b) = bounds {
                    println!(
                        "bounds: (n - k_max)/d = {}, eps*n/d = {}",
                        b.dmin_bound, b.bandc_bound
                    );
                } else {
                    println!("bounds: configuration is not primitive");
                }
            }
            Ok(())
        }
        Command::Geometry(gi) => {
            let g = load_graph(&gi.graph)?;
            let arr = check_drg(&g).map_err(|e| e.to_string())?;
            let spec = spectrum(&arr).map_err(|e| e.to_string())?;
            let cap = delsarte_bound(&arr, &spec);
            let gap = check_eigen_gap(&arr, &spec).map_err(|e| e.to_string())?;
            let geo = find_clique_geometry(&g, &arr, &spec);
            let metsch = metsch_clique(&g, &arr);
            if cli.json {
                let v = serde_json::json!({
                    "delsarte_cap": cap.approx,
                    "clique_cap": cap.clique_cap(),
                    "eigen_gap_slack": gap.slack,
                    "geometry": geo.as_ref().ok().map(|c| serde_json::json!({
                        "cliques": c.cliques.len(),
                        "clique_size": c.clique_size,
                    })),
                    "geometry_error": geo.as_ref().err().map(|e| e.to_string()),
                    "metsch_clique": metsch.as_ref().ok().map(|m| m.clique.clone()),
                    "metsch_error": metsch.as_ref().err().map(|e| e.to_string()),
                });
                println!("{v}");
            } else {
                println!("Delsarte bound 1 - k/m = {} (cap {})", cap.approx, cap.clique_cap());
                match geo {
                    Ok(c) => println!(
                        "Delsarte geometry: {} cliques of size {}",
                        c.cliques.len(),
                        c.clique_size
                    ),
                    Err(e) => println!("no Delsarte geometry: {e}"),
                }
                match metsch {
                    Ok(m) => println!(
                        "Metsch clique of size {} (target {}), (meq) holds: {}",
                        m.clique.len(),
                        m.target,
                        m.meq_holds
                    ),
                    Err(e) => println!("Metsch clique: {e}"),
                }
            }
            Ok(())
        }
        Command::Base { graph, relaxed, cap } => {
            let g = load_graph(&graph)?;
            let trace = base_via_splitting(
                &g,
                BaseOptions {
                    relax_preconditions: relaxed,
                    cap,
                },
            )
            .map_err(|e| e.to_string())?;
            if cli.json {
                let v = serde_json::json!({
                    "group_order": trace.group_order,
                    "halving_set": trace.sigma,
                    "orbits": trace.orbit_rows.iter().map(|r| serde_json::json!({
                        "min": r.orbit_min, "size": r.size, "boundary": r.boundary_edges,
                    })).collect::<Vec<_>>(),
                    "split_by_sigma": [trace.split_by_sigma.split, trace.split_by_sigma.edges],
                    "rounds_g": trace.run_g.rounds.len(),
                    "round_bound_g": trace.run_g.round_bound,
                    "rounds_g2": trace.run_g2.rounds.len(),
                    "round_bound_g2": trace.run_g2.round_bound,
                    "base": trace.sigma_prime,
                    "stabilizer_trivial": trace.stabilizer_trivial,
                });
                println!("{v}");
            } else {
                println!("|Aut| = {}", trace.group_order);
                println!("halving set: {:?}", trace.sigma);
                println!(
                    "sigma splits {}/{} edges of G",
                    trace.split_by_sigma.split, trace.split_by_sigma.edges
                );
                println!(
                    "splitting rounds: G {}/{} (bound), G2 {}/{}",
                    trace.run_g.rounds.len(),
                    trace.run_g.round_bound,
                    trace.run_g2.rounds.len(),
                    trace.run_g2.round_bound
                );
                println!("base = {:?} (size {})", trace.sigma_prime, trace.sigma_prime.len());
                println!("pointwise stabilizer trivial: {}", trace.stabilizer_trivial);
            }
            Ok(())
        }
        Command::Catalog => {
            let mut entries = catalog();
            let sr = search_realizations();
            entries.extend(sr.realized);
            let mut rows = Vec::new();
            for e in &entries {
                let (row, _) = soundness_row(e).map_err(|e| e.to_string())?;
                rows.push(row);
            }
            let all_sound = rows.iter().all(|r| r.sound);
            if cli.json {
                let v = serde_json::json!({
                    "rows": rows,
                    "unrealized_arrays": sr.unrealized.len(),
                    "oracle_cap": ORACLE_CAP,
                    "all_sound": all_sound,
                });
                println!("{}", serde_json::to_string(&v).unwrap());
            } else {
                println!(
                    "{:<28} {:>4} {:>3} {:>2}  {:<22} {:>7}  sound",
                    "graph", "n", "k", "d", "best bound", "motion"
                );
                for r in &rows {
                    println!(
                        "{:<28} {:>4} {:>3} {:>2}  {:<22} {:>7}  {}",
                        r.name,
                        r.n,
                        r.k,
                        r.d,
                        r.best_bound.clone().unwrap_or_else(|| {
                            if r.family.is_empty() { "-".into() } else { format!("[{}]", r.family.join(",")) }
                        }),
                        r.motion.map(|m| m.to_string()).unwrap_or_else(|| "-".into()),
                        if r.sound { "ok" } else { "FAIL" }
                    );
                }
                println!(
                    "{} graphs checked, {} valid arrays without realizations skipped",
                    rows.len(),
                    sr.unrealized.len()
                );
            }
            if all_sound {
                Ok(())
            } else {
                Err("catalog soundness violation".into())
            }
        }
    }
}

fn print_report(rep: &drg_core::CertificateReport) {
    println!("input: {}", rep.input);
    for t in &rep.trace {
        println!("[{:?}] {}", t.verdict, t.prop);
        for c in &t.checks {
            let mark = match c.ok {
                Some(true) => "+",
                Some(false) => "-",
                None => "?",
            };
            if c.value.is_empty() {
                println!("    {mark} {}", c.name);
            } else {
                println!("    {mark} {}: {}", c.name, c.value);
            }
        }
    }
    if !rep.family.is_empty() {
        let tags: Vec<String> = rep.family.iter().map(|t| t.to_string()).collect();
        let suffix = if rep.family_fully_verified {
            ""
        } else {
            " (hypotheses partially verified)"
        };
        println!("family: {}{}", tags.join(", "), suffix);
    }
    for b in &rep.bounds {
        match &b.value {
            drg_core::certifier::BoundValue::Inclusive(r) => {
                println!("bound [{}] motion >= {}", b.prop, r)
            }
            drg_core::certifier::BoundValue::Exclusive(r) => {
                println!("bound [{}] motion > {}", b.prop, r)
            }
            drg_core::certifier::BoundValue::Form(f) => {
                println!("bound [{}] motion >= {} (conditional)", b.prop, f)
            }
        }
    }
    match rep.best_bound() {
        Some((r, excl)) => println!("best bound: motion {} {}", if excl { ">" } else { ">=" }, r),
        None => println!("best bound: none"),
    }
}

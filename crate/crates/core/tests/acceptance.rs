//! Acceptance suite. Runs without the libtest harness so that every
//! criterion prints exactly one PASS or FAIL line, even when it passes.
//!
//! Set `KELLER4_CLQ` to a DIMACS keller4 file to run criterion 7 on the
//! real instance; otherwise a seeded random graph of the same order and
//! size stands in.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use labelled_clique::bitset::Bitset;
use labelled_clique::cli::{self, check_witness};
use labelled_clique::graph::{Graph, LabelledGraph};
use labelled_clique::io::{self, BudgetSpec};
use labelled_clique::rng::SplitMix64;
use labelled_clique::{
    colour_order, fixtures, generate, incumbent_key, is_better, oracle_solve, solve, solve_parallel, Solution,
};

type Check = Result<String, String>;
type Criterion<'a> = (&'static str, Box<dyn Fn() -> Check + 'a>);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn one_based(s: &Solution) -> Vec<usize> {
    s.clique.iter().map(|v| v + 1).collect()
}

fn verify(g: &LabelledGraph, s: &Solution, budget: u32) -> Result<(), String> {
    let cost = check_witness(g, &one_based(s), budget).map_err(|e| format!("witness {:?}: {e}", s.clique))?;
    ensure(cost == s.cost && s.clique.len() == s.size, || {
        format!("witness {:?} re-checks at cost {cost}, reported {}", s.clique, s.cost)
    })
}

/// Median wall time of `runs` calls.
fn median_time(runs: usize, mut f: impl FnMut()) -> Duration {
    let mut times: Vec<Duration> = (0..runs)
        .map(|_| {
            let t = Instant::now();
            f();
            t.elapsed()
        })
        .collect();
    times.sort();
    times[runs / 2]
}

fn worked_example() -> Check {
    let g = fixtures::seven();
    let mut details = Vec::new();
    for (budget, want) in [(3, (4, 2)), (4, (5, 4))] {
        let s = solve(&g, budget).map_err(|e| e.to_string())?;
        let o = oracle_solve(&g, budget).map_err(|e| e.to_string())?;
        ensure((s.size, s.cost) == want, || format!("budget {budget}: got ({}, {})", s.size, s.cost))?;
        ensure((o.size, o.cost) == want, || format!("budget {budget}: oracle ({}, {})", o.size, o.cost))?;
        verify(&g, &s, budget)?;
        let t = median_time(11, || {
            std::hint::black_box(solve(&g, budget).unwrap());
        });
        ensure(t < Duration::from_millis(1), || format!("budget {budget}: median {t:?}"))?;
        details.push(format!("b={budget} -> ({}, {}) witness {:?} median {t:?}", s.size, s.cost, one_based(&s)));
    }
    Ok(details.join("; "))
}

fn colouring_example() -> Check {
    let g = fixtures::eight();
    let r = colour_order(&g, &g.vertex_set());
    let order: Vec<usize> = r.order.iter().map(|v| v + 1).collect();
    ensure(order == [1, 3, 2, 4, 8, 5, 7, 6], || format!("order {order:?}"))?;
    ensure(r.bounds == [1, 1, 2, 2, 2, 3, 3, 4], || format!("bounds {:?}", r.bounds))?;
    Ok(format!("order {order:?} bounds {:?}", r.bounds))
}

/// One seeded labelled instance of criterion 3.
struct Small {
    graph: LabelledGraph,
    num_labels: usize,
    tag: String,
}

fn small_instances() -> Vec<Small> {
    let mut out = Vec::new();
    let mut seed = 1000u64;
    for n in 6..=12 {
        for density in [0.2, 0.5, 0.8] {
            for k in [2usize, 3, 4, 6] {
                for _ in 0..6 {
                    seed += 1;
                    let g = generate::random_graph(n, density, seed);
                    let graph = io::random_labels(&g, k, seed).expect("label count in range");
                    let tag = format!("n={n} d={density} K={k} seed={seed}");
                    out.push(Small { graph, num_labels: k, tag });
                }
            }
        }
    }
    out
}

fn oracle_equivalence(instances: &[Small]) -> Check {
    let start = Instant::now();
    let mut solves = 0;
    for inst in instances {
        for b in 1..=inst.num_labels as u32 {
            let s = solve(&inst.graph, b).map_err(|e| e.to_string())?;
            let o = oracle_solve(&inst.graph, b).map_err(|e| e.to_string())?;
            ensure((s.size, s.cost) == (o.size, o.cost), || {
                format!("{} b={b}: solver ({}, {}) oracle ({}, {})", inst.tag, s.size, s.cost, o.size, o.cost)
            })?;
            verify(&inst.graph, &s, b)?;
            solves += 1;
        }
    }
    let t = start.elapsed();
    ensure(t < Duration::from_secs(60), || format!("took {t:?}"))?;
    Ok(format!("{} instances, {solves} budgets, all match; {t:.2?}", instances.len()))
}

fn parallel_equivalence() -> Check {
    let mut runs = 0;
    let mut steals = 0;
    for i in 0..50u64 {
        let g = generate::random_graph(40, 0.5, 5000 + i);
        let lg = io::random_labels(&g, 6, 5000 + i).expect("six labels");
        for b in [2, 3, 4] {
            let seq = solve(&lg, b).map_err(|e| e.to_string())?;
            for workers in [2, 4] {
                for rep in 0..5 {
                    let par = solve_parallel(&lg, b, workers).map_err(|e| e.to_string())?;
                    ensure((par.size, par.cost) == (seq.size, seq.cost), || {
                        format!(
                            "instance {i} b={b} workers={workers} rep={rep}: parallel ({}, {}) sequential ({}, {})",
                            par.size, par.cost, seq.size, seq.cost
                        )
                    })?;
                    verify(&lg, &par, b)?;
                    steals += par.stats.steals;
                    runs += 1;
                }
            }
            verify(&lg, &seq, b)?;
        }
    }
    Ok(format!("{runs} parallel runs agree with sequential; {steals} steals in total"))
}

fn shuffle<T>(xs: &mut [T], rng: &mut SplitMix64) {
    for i in (1..xs.len()).rev() {
        let j = rng.below(i as u64 + 1) as usize;
        xs.swap(i, j);
    }
}

fn relabel(g: &LabelledGraph, map: &[u8]) -> LabelledGraph {
    let edges = g.labelled_edges().map(|(u, v, l)| (u, v, usize::from(map[l as usize])));
    LabelledGraph::new(g.graph().clone(), g.num_labels(), edges).expect("bijection keeps labels in range")
}

fn unlabelled_max_clique(g: &Graph) -> usize {
    let one = LabelledGraph::new(g.clone(), 1, g.edges().map(|(u, v)| (u, v, 0))).expect("one label");
    oracle_solve(&one, 1).expect("oracle size limit").size
}

fn property_suite() -> Check {
    let mut rng = SplitMix64::new(77);
    for call in 0..1000 {
        let n = 1 + rng.below(120) as usize;
        let density = rng.next_f64();
        let g = generate::random_graph(n, density, rng.next_u64());
        let p = Bitset::from_indices(n, (0..n).filter(|_| rng.below(4) != 0));
        let r = colour_order(&g, &p);
        ensure(r.bounds.windows(2).all(|w| w[0] <= w[1]), || format!("call {call}: bounds {:?}", r.bounds))?;
        ensure(r.order.len() == p.count(), || format!("call {call}: order covers {} of {}", r.order.len(), p.count()))?;
    }

    let mut checked = 0;
    for i in 0..200u64 {
        let n = 6 + (i % 15) as usize;
        let k = [2usize, 3, 4, 5, 6][(i % 5) as usize];
        let g = generate::random_graph(n, [0.3, 0.5, 0.7, 0.9][(i % 4) as usize], 9000 + i);
        let lg = io::random_labels(&g, k, 9000 + i).expect("label count");
        let omega = unlabelled_max_clique(&g);
        let mut map: Vec<u8> = (0..k as u8).collect();
        shuffle(&mut map, &mut rng);
        let renamed = relabel(&lg, &map);
        let mut previous = 0;
        for b in 1..=k as u32 + 1 {
            let s = solve(&lg, b).map_err(|e| e.to_string())?;
            ensure(s.size >= previous, || format!("instance {i}: size falls from {previous} to {} at b={b}", s.size))?;
            previous = s.size;
            ensure(s.size <= omega, || format!("instance {i} b={b}: size {} above clique number {omega}", s.size))?;
            if b as usize >= k {
                ensure(s.size == omega, || format!("instance {i} b={b}: size {} below clique number {omega}", s.size))?;
            }
            let r = solve(&renamed, b).map_err(|e| e.to_string())?;
            ensure((r.size, r.cost) == (s.size, s.cost), || {
                format!("instance {i} b={b}: relabelled ({}, {}) vs ({}, {})", r.size, r.cost, s.size, s.cost)
            })?;
            let again = solve(&lg, b).map_err(|e| e.to_string())?;
            ensure(
                (again.stats.nodes_pass1, again.stats.nodes_pass2, &again.clique)
                    == (s.stats.nodes_pass1, s.stats.nodes_pass2, &s.clique),
                || format!("instance {i} b={b}: repeated run differs"),
            )?;
            checked += 1;
        }
    }
    Ok(format!("1000 colourings non-decreasing; {checked} (instance, budget) pairs hold every property"))
}

fn key_isomorphism() -> Check {
    let points: Vec<(usize, u32)> = (0..=100).flat_map(|s| (0..=100).map(move |c| (s, c))).collect();
    let keys: Vec<u64> = points.iter().map(|&(s, c)| incumbent_key(s, c)).collect();
    for (i, &a) in points.iter().enumerate() {
        for (j, &b) in points.iter().enumerate() {
            if (keys[i] > keys[j]) != is_better(a, b) {
                return Err(format!("key order disagrees at {a:?} vs {b:?}"));
            }
        }
    }
    Ok(format!("{} ordered pairs agree", points.len() * points.len()))
}

fn keller_like() -> (String, Graph) {
    if let Ok(path) = std::env::var("KELLER4_CLQ") {
        let text = fs::read_to_string(&path).unwrap_or_else(|e| panic!("{path}: {e}"));
        let g = io::parse_dimacs(&text).unwrap_or_else(|e| panic!("{path}: {e}"));
        return (format!("keller4 from {path}"), g);
    }
    // Same order and size as keller4 (171 vertices, 9435 edges).
    let g = generate::random_graph_with_edges(171, 9435, 4);
    ("stand-in G(171, 9435), seed 4; set KELLER4_CLQ for keller4".to_string(), g)
}

fn performance_smoke() -> Check {
    let (source, g) = keller_like();
    let mut worst_seq = Duration::ZERO;
    let mut worst_ratio: f64 = 0.0;
    let mut over_twice = 0;
    let mut runs = 0;
    for k in [4usize, 8] {
        for pct in [25, 50, 75] {
            let b = io::resolve_budget(BudgetSpec::Percent(pct), k).map_err(|e| e.to_string())?;
            for seed in 0..5 {
                let lg = io::random_labels(&g, k, seed).map_err(|e| e.to_string())?;
                let t = Instant::now();
                let s = solve(&lg, b).map_err(|e| e.to_string())?;
                let t_seq = t.elapsed();
                let t = Instant::now();
                let p = solve_parallel(&lg, b, 4).map_err(|e| e.to_string())?;
                let t_par = t.elapsed();
                verify(&lg, &s, b)?;
                verify(&lg, &p, b)?;
                ensure((s.size, s.cost) == (p.size, p.cost), || format!("K={k} b={b} seed={seed}: parallel disagrees"))?;
                ensure(t_seq < Duration::from_secs(60), || format!("K={k} b={b} seed={seed}: sequential {t_seq:?}"))?;
                worst_seq = worst_seq.max(t_seq);
                let ratio = t_par.as_secs_f64() / t_seq.as_secs_f64().max(1e-9);
                worst_ratio = worst_ratio.max(ratio);
                if ratio > 2.0 {
                    over_twice += 1;
                }
                runs += 1;
            }
        }
    }
    let cpus = std::thread::available_parallelism().map_or(1, |n| n.get());
    Ok(format!(
        "{source}: {runs} runs, worst sequential {worst_seq:.2?}; parallel(4)/sequential worst {worst_ratio:.2}, \
         {over_twice} runs over 2x (reported only, {cpus} hardware threads)"
    ))
}

fn large_sparse() -> Check {
    let graphs = [
        ("preferential attachment", generate::preferential_attachment(7000, 1, 5000, 1)),
        ("G(7000, 12000)", generate::random_graph_with_edges(7000, 12000, 2)),
    ];
    let mut worst = Duration::ZERO;
    let mut runs = 0;
    let mut shapes = Vec::new();
    for (name, g) in &graphs {
        let text = io::write_dimacs(g);
        shapes.push(format!("{name} m={}", g.m()));
        for k in 3..=5 {
            for b in 2..=4 {
                let t = Instant::now();
                let parsed = io::parse_dimacs(&text).map_err(|e| e.to_string())?;
                let lg = io::random_labels(&parsed, k, 7).map_err(|e| e.to_string())?;
                let s = solve(&lg, b).map_err(|e| e.to_string())?;
                let elapsed = t.elapsed();
                verify(&lg, &s, b)?;
                ensure(elapsed < Duration::from_secs(5), || format!("{name} K={k} b={b}: {elapsed:?}"))?;
                worst = worst.max(elapsed);
                runs += 1;
            }
        }
    }
    Ok(format!("{}; {runs} runs including parse and labelling, worst {worst:.2?}", shapes.join(", ")))
}

fn run_cli(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let mut argv = vec!["mlc"];
    argv.extend_from_slice(args);
    let code = cli::run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn field<'a>(report: &'a str, key: &str) -> Option<&'a str> {
    report
        .lines()
        .find_map(|l| l.strip_prefix(key).and_then(|rest| rest.strip_prefix(": ")))
}

fn write_instance(dir: &Path, name: &str, g: &LabelledGraph) -> (PathBuf, PathBuf) {
    let graph = dir.join(format!("{name}.clq"));
    let labels = dir.join(format!("{name}.lab"));
    fs::write(&graph, io::write_dimacs(g.graph())).unwrap();
    fs::write(&labels, io::write_labels(g)).unwrap();
    (graph, labels)
}

fn cli_contract(instances: &[Small]) -> Check {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let binary = env!("CARGO_BIN_EXE_mlc");
    let mut verified = 0;
    for (i, inst) in instances.iter().enumerate() {
        let (graph, labels) = write_instance(dir.path(), &format!("g{i}"), &inst.graph);
        let (graph, labels) = (graph.to_str().unwrap(), labels.to_str().unwrap());
        for b in 1..=inst.num_labels {
            let b = b.to_string();
            let (code, out, err) = run_cli(&["solve", graph, "--label-file", labels, "--budget", &b, "--threads", "1"]);
            ensure(code == cli::EXIT_OK, || format!("{} b={b}: solve exit {code}: {err}", inst.tag))?;
            let witness = field(&out, "witness").ok_or("solve report lacks a witness")?.replace(' ', ",");
            let verify_args = ["verify", graph, "--label-file", labels, "--budget", &b, "--witness", &witness];
            let (code, _, err) = run_cli(&verify_args);
            ensure(code == cli::EXIT_OK, || format!("{} b={b}: verify rejects {witness}: {err}", inst.tag))?;
            // A sample goes through the real binary as well.
            if i % 50 == 0 {
                let status = Command::new(binary).args(verify_args).output().map_err(|e| e.to_string())?;
                ensure(status.status.code() == Some(0), || format!("{} b={b}: binary verify {:?}", inst.tag, status))?;
            }
            verified += 1;
        }
    }

    let mut graphs = Vec::new();
    for i in 0..3u64 {
        let path = dir.path().join(format!("bench{i}.clq"));
        fs::write(&path, io::write_dimacs(&generate::random_graph(30, 0.6, 70 + i))).unwrap();
        graphs.push(path.to_str().unwrap().to_string());
    }
    let bench = |seed: &str| {
        let mut args = vec!["bench"];
        args.extend(graphs.iter().map(String::as_str));
        args.extend(["--labels", "3,5", "--budget-pct", "25,50,75", "--samples", "10", "--seed", seed]);
        run_cli(&args)
    };
    let columns = |out: &str| -> Vec<String> {
        out.lines()
            .skip(1)
            .map(|l| {
                let f: Vec<&str> = l.split('\t').collect();
                f[..7].join("\t")
            })
            .collect()
    };
    let (c1, a, e1) = bench("42");
    let (c2, b, e2) = bench("42");
    ensure(c1 == cli::EXIT_OK && c2 == cli::EXIT_OK, || format!("bench exit {c1}/{c2}: {e1}{e2}"))?;
    let (a, b) = (columns(&a), columns(&b));
    ensure(a.len() == 18 && a == b, || format!("bench rows differ:\n{a:?}\n{b:?}"))?;
    Ok(format!(
        "{verified} solve witnesses accepted by verify; {} bench rows reproduce under seed 42",
        a.len()
    ))
}

fn main() -> ExitCode {
    let instances = small_instances();
    let criteria: Vec<Criterion> = vec![
        ("worked example golden", Box::new(worked_example)),
        ("colouring golden", Box::new(colouring_example)),
        ("oracle equivalence", Box::new(|| oracle_equivalence(&instances))),
        ("parallel equivalence", Box::new(parallel_equivalence)),
        ("property suite", Box::new(property_suite)),
        ("incumbent key order", Box::new(key_isomorphism)),
        ("performance smoke", Box::new(performance_smoke)),
        ("large sparse graphs", Box::new(large_sparse)),
        ("cli contract", Box::new(|| cli_contract(&instances))),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let (verdict, detail) = match run() {
            Ok(detail) => ("PASS", detail),
            Err(detail) => ("FAIL", detail),
        };
        println!("{verdict} criterion {} ({name}): {detail}", i + 1);
        failed += usize::from(verdict == "FAIL");
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

//! Acceptance criteria, one PASS/FAIL line each. Runs without the libtest
//! harness so the report is always printed; exits nonzero on any failure.

use std::cell::Cell;
use std::collections::VecDeque;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use bireg::clustering::{accuracy, rsbm_thresholds, spectral_cluster, DEFAULT_GROUP_TOL};
use bireg::codes::{corollary_bound, janwa_lal_bound, min_distance_bruteforce, rate_lower_bound, ComponentCode, TannerCode};
use bireg::completion::{
    certify, measured_eta, mixing_defect, random_sign_rank_one, random_subset, solve_trace_norm, CompletionInstance,
};
use bireg::graphgen::{
    conditional_edge_probability, sample_frame_graph, sample_simple, tangle_free, BipartiteGraph, Frame,
    DEFAULT_MAX_ATTEMPTS, DEFAULT_RAW_BUDGET,
};
use bireg::numkernel::RngStream;
use bireg::spectra::{
    adjacency_spectrum, build_b, gap_certificate, ihara_bass_residual, perron_check, spectrum_b_from_a, Category,
};
use num_complex::Complex64;

thread_local! {
    /// Worst Perron residual and graph count over every simple sample drawn here.
    static PERRON: Cell<(f64, usize)> = const { Cell::new((0.0, 0)) };
}

fn simple(n: usize, m: usize, d1: usize, d2: usize, rng: &mut RngStream) -> BipartiteGraph {
    let g = sample_simple(n, m, d1, d2, rng, DEFAULT_MAX_ATTEMPTS).expect("simple sample").graph;
    record_perron(&g);
    g
}

fn record_perron(g: &BipartiteGraph) {
    let r = perron_check(&build_b(g).expect("operator"), g.d1(), g.d2()).max_residual();
    PERRON.with(|p| {
        let (worst, count) = p.get();
        p.set((worst.max(r), count + 1));
    });
}

struct Verdict {
    pass: bool,
    detail: String,
}

fn verdict(pass: bool, detail: impl Into<String>) -> Verdict {
    Verdict { pass, detail: detail.into() }
}

fn fraction(hits: usize, total: usize) -> f64 {
    hits as f64 / total as f64
}

/// Random simple-feasible biregular parameters with `n + m <= 40`.
fn small_params(rng: &mut RngStream) -> (usize, usize, usize, usize) {
    loop {
        let d2 = 2 + rng.index(3);
        let d1 = d2 + rng.index(4);
        let g = gcd(d1, d2);
        let (unit_n, unit_m) = (d2 / g, d1 / g);
        let max_k = 40 / (unit_n + unit_m);
        if max_k == 0 {
            continue;
        }
        let k = 1 + rng.index(max_k);
        let (n, m) = (k * unit_n, k * unit_m);
        if d1 <= m && d2 <= n && n * d1 > n + m {
            return (n, m, d1, d2);
        }
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 { a } else { gcd(b, a % b) }
}

fn criterion_1() -> Verdict {
    let start = Instant::now();
    let mut rng = RngStream::new(101);
    let mut worst = 0.0f64;
    let mut cases = 0;
    for _ in 0..50 {
        let (n, m, d1, d2) = small_params(&mut rng);
        let g = simple(n, m, d1, d2, &mut rng);
        let mut k = 0;
        while k < 10 {
            let r = 0.5 + 2.5 * rng.uniform();
            let z = Complex64::from_polar(r, std::f64::consts::TAU * rng.uniform());
            if (z - 1.0).norm() < 0.1 || (z + 1.0).norm() < 0.1 {
                continue;
            }
            let res = ihara_bass_residual(&g, z).expect("admissible point");
            worst = worst.max(res.log_modulus_rel).max(res.argument_diff);
            cases += 1;
            k += 1;
        }
    }
    let elapsed = start.elapsed();
    verdict(
        worst <= 1e-8 && elapsed < Duration::from_secs(60),
        format!("{cases} cases, worst discrepancy {worst:.2e}, {:.1}s", elapsed.as_secs_f64()),
    )
}

fn criterion_2() -> Verdict {
    let mut rng = RngStream::new(202);
    let mut ok = true;
    let mut worst_perron = 0.0f64;
    for _ in 0..40 {
        let (n, m, d1, d2) = small_params(&mut rng);
        let g = simple(n, m, d1, d2, &mut rng);
        let nb = spectrum_b_from_a(&adjacency_spectrum(&g).unwrap(), d1, d2).unwrap();
        ok &= nb.len() == 2 * g.num_edges();
        let mut vals = nb.values();
        let mut negs: Vec<Complex64> = vals.iter().map(|z| -z).collect();
        let key = |z: &Complex64| ((z.re * 1e8).round() as i64, (z.im * 1e8).round() as i64);
        vals.sort_by_key(key);
        negs.sort_by_key(key);
        ok &= vals.iter().zip(&negs).all(|(a, b)| (a - b).norm() < 1e-9);
        let (a, b) = nb.perron_pair();
        let p = nb.perron();
        worst_perron = worst_perron.max((nb.entries[a].value() - p).norm()).max((nb.entries[b].value() + p).norm());
    }
    ok &= worst_perron <= 1e-10;

    // K_{2,3}: sigma(X) = {sqrt 6, 0}; the quartic at xi = sqrt 6 is (l^2 - 1)(l^2 - 2).
    let k23 = BipartiteGraph::complete(2, 3);
    record_perron(&k23);
    let nb = spectrum_b_from_a(&adjacency_spectrum(&k23).unwrap(), 3, 2).unwrap();
    let s2 = 2f64.sqrt();
    let expected: Vec<(f64, f64, Category)> = vec![
        (1.0, 0.0, Category::Trivial),
        (-1.0, 0.0, Category::Trivial),
        (0.0, 1.0, Category::RightKernel),
        (0.0, -1.0, Category::RightKernel),
        (0.0, 1.0, Category::RightKernel),
        (0.0, -1.0, Category::RightKernel),
        (0.0, s2, Category::LeftKernel),
        (0.0, -s2, Category::LeftKernel),
        (s2, 0.0, Category::Quartic),
        (-s2, 0.0, Category::Quartic),
        (1.0, 0.0, Category::Quartic),
        (-1.0, 0.0, Category::Quartic),
    ];
    let mut remaining = nb.entries.clone();
    let mut k23_ok = remaining.len() == 12;
    for (re, im, cat) in expected {
        match remaining.iter().position(|e| e.category == cat && (e.re - re).abs() < 1e-12 && (e.im - im).abs() < 1e-12) {
            Some(i) => {
                remaining.swap_remove(i);
            }
            None => k23_ok = false,
        }
    }
    verdict(ok && k23_ok, format!("40 instances, Perron pair within {worst_perron:.1e}; K23 multiset match = {k23_ok}"))
}

struct GapRun {
    leading: f64,
    eta: f64,
    eta_min_plus: Option<f64>,
    rank: usize,
    lambda2_b: Option<f64>,
}

fn gap_runs() -> (Vec<GapRun>, Duration) {
    let start = Instant::now();
    let runs = (0..200)
        .map(|seed| {
            let g = simple(120, 280, 7, 3, &mut RngStream::derive(2024, seed));
            let c = gap_certificate(&g, 0.3).expect("certificate");
            GapRun { leading: c.leading, eta: c.eta, eta_min_plus: c.eta_min_plus, rank: c.rank_r, lambda2_b: c.lambda2_b }
        })
        .collect();
    (runs, start.elapsed())
}

fn criterion_3(runs: &[GapRun], elapsed: Duration) -> Verdict {
    let target = 6f64.sqrt() + 2f64.sqrt();
    let lead = runs.iter().all(|r| (r.leading - 21f64.sqrt()).abs() <= 1e-9);
    let within = runs.iter().filter(|r| (r.eta - target).abs() <= 0.3).count();
    let strict = runs.iter().all(|r| r.eta < 21f64.sqrt());
    let (lo, hi) = runs.iter().fold((f64::INFINITY, 0.0f64), |(a, b), r| (a.min(r.eta), b.max(r.eta)));
    verdict(
        lead && fraction(within, runs.len()) >= 0.95 && strict && elapsed < Duration::from_secs(300),
        format!(
            "lambda1 exact in all = {lead}; eta in band {within}/200 (range {lo:.4}..{hi:.4}, target {target:.4}); {:.1}s",
            elapsed.as_secs_f64()
        ),
    )
}

fn criterion_4(runs: &[GapRun]) -> Verdict {
    let full = runs.iter().filter(|r| r.rank == 120).count();
    let floor = 6f64.sqrt() - 2f64.sqrt() - 0.3;
    let above = runs.iter().filter(|r| r.eta_min_plus.is_some_and(|x| x >= floor)).count();
    let min = runs.iter().filter_map(|r| r.eta_min_plus).fold(f64::INFINITY, f64::min);
    verdict(
        fraction(full, 200) >= 0.99 && fraction(above, 200) >= 0.95,
        format!("rank 120 in {full}/200; eta_min_plus >= {floor:.4} in {above}/200 (min {min:.4})"),
    )
}

fn criterion_5(runs: &[GapRun]) -> Verdict {
    let bound = 12f64.powf(0.25) + 0.35;
    let below = runs.iter().filter(|r| r.lambda2_b.is_some_and(|x| x <= bound)).count();
    let max = runs.iter().filter_map(|r| r.lambda2_b).fold(0.0, f64::max);
    verdict(fraction(below, 200) >= 0.95, format!("|lambda2(B)| <= {bound:.4} in {below}/200 (max {max:.4})"))
}

/// Cycle-space dimension of the ball, computed independently: BFS on an
/// edge list, then `|E| - |V| + components` via union-find.
fn oracle_worst_excess(g: &BipartiteGraph, ell: usize) -> i64 {
    let nv = g.num_vertices();
    let edges: Vec<(usize, usize)> = g.edges().iter().map(|&(l, r)| (l, g.n() + r)).collect();
    let mut worst = i64::MIN;
    for v in 0..nv {
        let mut dist = vec![usize::MAX; nv];
        dist[v] = 0;
        let mut queue = VecDeque::from([v]);
        while let Some(u) = queue.pop_front() {
            for &(a, b) in &edges {
                let w = if a == u { b } else if b == u { a } else { continue };
                if dist[w] == usize::MAX && dist[u] < ell {
                    dist[w] = dist[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        let inside: Vec<usize> = (0..nv).filter(|&x| dist[x] != usize::MAX).collect();
        let ball_edges: Vec<&(usize, usize)> =
            edges.iter().filter(|(a, b)| dist[*a] != usize::MAX && dist[*b] != usize::MAX).collect();
        let mut parent: Vec<usize> = (0..nv).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            if p[x] != x {
                let r = find(p, p[x]);
                p[x] = r;
            }
            p[x]
        }
        let mut components = inside.len();
        for &&(a, b) in &ball_edges {
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            if ra != rb {
                parent[ra] = rb;
                components -= 1;
            }
        }
        worst = worst.max(ball_edges.len() as i64 - inside.len() as i64 + components as i64);
    }
    worst
}

fn criterion_6() -> Verdict {
    let mut rng = RngStream::new(606);
    let mut agree = 0;
    let mut total = 0;
    while total < 100 {
        let d2 = 1 + rng.index(4);
        let d1 = 1 + rng.index(4);
        let g = gcd(d1, d2);
        let (un, um) = (d2 / g, d1 / g);
        let max_k = (12 / un).min(12 / um);
        let k = 1 + rng.index(max_k);
        let (n, m) = (k * un, k * um);
        if d1 > m || d2 > n {
            continue;
        }
        let graph = simple(n, m, d1, d2, &mut rng);
        let ell = rng.index(5);
        let report = tangle_free(&graph, ell);
        let oracle = oracle_worst_excess(&graph, ell);
        total += 1;
        if report.worst_excess == oracle && report.tangle_free == (oracle <= 1) {
            agree += 1;
        }
    }
    let k23 = BipartiteGraph::complete(2, 3);
    let k23_ok = tangle_free(&k23, 1).tangle_free && !tangle_free(&k23, 2).tangle_free;
    verdict(agree == 100 && k23_ok, format!("{agree}/100 agree with the cycle-space oracle; K23 ell=1 free, ell=2 tangled = {k23_ok}"))
}

fn criterion_7() -> Verdict {
    let r = corollary_bound(216, 14, 9, 7.0, 6.0, 0.0).expect("hypothesis holds");
    let rate = rate_lower_bound(14, 9, 8, 4);
    let ok = (r.distance_lb - 4.299).abs() <= 1e-3
        && r.distance_lb >= 4.0
        && r.relative_distance_lb >= 0.0014
        && (rate - 0.0159).abs() <= 1e-4;
    verdict(
        ok,
        format!("distance_lb {:.5}, relative {:.6}, rate {:.6}", r.distance_lb, r.relative_distance_lb, rate),
    )
}

/// `K_{n,n}` minus a uniformly random perfect matching; rejection sampling
/// almost never produces this dense a simple graph.
fn matching_complement(n: usize, rng: &mut RngStream) -> BipartiteGraph {
    let mut perm: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        perm.swap(i, rng.index(i + 1));
    }
    let perm = &perm;
    let edges = (0..n).flat_map(|i| (0..n).filter(move |&j| j != perm[i]).map(move |j| (i, j))).collect();
    let g = BipartiteGraph::new(n, n, n - 1, n - 1, edges).expect("regular");
    record_perron(&g);
    g
}

fn criterion_8() -> Verdict {
    let mut rng = RngStream::new(808);
    let mut checked = 0;
    let mut ok = 0;
    let mut attempt = 0u64;
    let mut tightest = f64::INFINITY;
    while checked < 20 {
        attempt += 1;
        let (graph, c1, c2) = match attempt % 4 {
            0 => {
                let n = 4 + rng.index(3);
                (simple(n, n, 3, 3, &mut rng), ComponentCode::repetition(3), ComponentCode::single_parity_check(3))
            }
            1 => {
                let n = 3 + rng.index(2);
                (simple(n, 2 * n, 4, 2, &mut rng), ComponentCode::single_parity_check(4), ComponentCode::repetition(2))
            }
            2 => (matching_complement(8, &mut rng), ComponentCode::hamming(3), ComponentCode::hamming(3)),
            _ => {
                let n = 3 + rng.index(3);
                (simple(n, n, 3, 3, &mut rng), ComponentCode::single_parity_check(3), ComponentCode::single_parity_check(3))
            }
        };
        let (c1, c2) = (c1.unwrap(), c2.unwrap());
        let (d1, d2) = (c1.distance as f64, c2.distance as f64);
        let eta = measured_eta(&graph).unwrap();
        let Ok(bound) = janwa_lal_bound(graph.n(), graph.d1(), graph.d2(), d1, d2, eta) else {
            continue;
        };
        let code = TannerCode::new(graph, c1, c2).unwrap();
        if code.dimension() > 20 {
            continue;
        }
        checked += 1;
        if let Some(d) = min_distance_bruteforce(&code, 20).unwrap() {
            tightest = tightest.min(d as f64 - bound.distance_lb);
            if d as f64 >= bound.distance_lb - 1e-9 {
                ok += 1;
            }
        } else {
            // zero code: distance is vacuous
            ok += 1;
        }
    }
    let k23 = BipartiteGraph::complete(2, 3);
    let rep = TannerCode::new(k23, ComponentCode::repetition(3).unwrap(), ComponentCode::repetition(2).unwrap()).unwrap();
    let k23_d = min_distance_bruteforce(&rep, 20).unwrap();
    verdict(
        ok == 20 && k23_d == Some(6),
        format!("{ok}/20 brute-force distances meet the bound (smallest slack {tightest:.3}); K23 repetition distance {k23_d:?}"),
    )
}

fn criterion_9() -> Verdict {
    let frame = Frame::regular_sbm(60, 6).unwrap();
    let mut exact = 0;
    for seed in 0..20 {
        let fg = sample_frame_graph(400, &frame, &mut RngStream::derive(909, seed), DEFAULT_MAX_ATTEMPTS).unwrap();
        let res = spectral_cluster(&fg, 2, DEFAULT_GROUP_TOL).unwrap();
        if accuracy(&res.assignment, &fg.labels).unwrap() == 1.0 {
            exact += 1;
        }
    }
    let a = rsbm_thresholds(14, 2).unwrap();
    let b = rsbm_thresholds(60, 6).unwrap();
    let thresholds = (a.brito_holds, a.spectral_holds) == (true, false) && (b.brito_holds, b.spectral_holds) == (true, true);
    verdict(
        fraction(exact, 20) >= 0.95 && thresholds,
        format!("exact recovery {exact}/20; thresholds (14,2) and (60,6) as expected = {thresholds}"),
    )
}

fn criterion_10() -> Verdict {
    let mut rng = RngStream::new(1010);
    let small = simple(4, 6, 3, 2, &mut rng);
    let eta = measured_eta(&small).unwrap();
    let mut exhaustive = 0;
    let mut total = 0;
    for ma in 0u32..16 {
        for mb in 0u32..64 {
            let a: Vec<usize> = (0..4).filter(|i| ma >> i & 1 == 1).collect();
            let b: Vec<usize> = (0..6).filter(|j| mb >> j & 1 == 1).collect();
            total += 1;
            if mixing_defect(&small, &a, &b, eta).unwrap().satisfied {
                exhaustive += 1;
            }
        }
    }
    let g = simple(40, 60, 6, 4, &mut rng);
    let eta = measured_eta(&g).unwrap();
    let random = (0..1000)
        .filter(|_| {
            let a = random_subset(40, &mut rng);
            let b = random_subset(60, &mut rng);
            mixing_defect(&g, &a, &b, eta).unwrap().satisfied
        })
        .count();
    verdict(
        exhaustive == total && random == 1000,
        format!("exhaustive {exhaustive}/{total}; random {random}/1000"),
    )
}

fn criterion_11() -> Verdict {
    let mut residual_ok = 0;
    let mut satisfied = 0;
    let mut noise_exact = true;
    let mut worst_residual = 0.0f64;
    let mut worst_noise_gap = 0.0f64;
    for seed in 0..20 {
        let mut rng = RngStream::derive(1111, seed);
        let mask = simple(40, 60, 6, 4, &mut rng);
        let inst = CompletionInstance::new(random_sign_rank_one(40, 60, &mut rng), mask).unwrap();
        let Ok(c) = solve_trace_norm(&inst) else { continue };
        worst_residual = worst_residual.max(c.residual_rms);
        if c.residual_rms <= 1e-6 {
            residual_ok += 1;
        }
        let cert = certify(&inst, &c.x, 0.0).unwrap();
        if cert.satisfied {
            satisfied += 1;
        }
        let noisy = inst.clone().with_noise(inst.observed(), 0.1).unwrap();
        let noisy_cert = certify(&noisy, &c.x, 0.0).unwrap();
        let gap = (noisy_cert.mse_bound - cert.mse_bound - 0.04).abs();
        worst_noise_gap = worst_noise_gap.max(gap);
        noise_exact &= gap <= 1e-12;
    }
    verdict(
        residual_ok == 20 && satisfied == 20 && noise_exact,
        format!(
            "residual <= 1e-6 in {residual_ok}/20 (worst {worst_residual:.2e}); certified {satisfied}/20; delta=0.1 adds 0.04 (max deviation {worst_noise_gap:.1e})"
        ),
    )
}

fn criterion_12() -> Verdict {
    let (worst, count) = PERRON.with(Cell::get);
    verdict(worst <= 1e-12 && count > 0, format!("{count} graphs, worst residual {worst:.2e}"))
}

fn criterion_13() -> Verdict {
    let (n, m, d1, d2) = (30, 45, 3, 2);
    let est = conditional_edge_probability(n, m, d1, d2, &[(0, 0)], (1, 1), 100_000, DEFAULT_RAW_BUDGET, &mut RngStream::new(1313))
        .expect("conditioning event hit");
    let reference = d2 as f64 / n as f64;
    let z = (est.estimate - reference) / est.std_error;
    verdict(
        z.abs() <= 3.0 && est.hits == 100_000,
        format!("estimate {:.5} vs {reference:.5}, {z:+.2} standard errors, {} raw samples", est.estimate, est.raw_samples),
    )
}

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().collect();
    // libtest-style listing asked for by some runners
    if args.iter().any(|a| a == "--list") {
        println!("acceptance: test");
        return ExitCode::SUCCESS;
    }
    let mut results: Vec<(u32, &str, Verdict)> = Vec::new();
    let mut run = |id: u32, name: &'static str, f: &dyn Fn() -> Verdict| {
        let v = f();
        println!("criterion {id:>2} {name}: {} ({})", if v.pass { "PASS" } else { "FAIL" }, v.detail);
        results.push((id, name, v));
    };
    run(1, "ihara-bass identity", &criterion_1);
    run(2, "non-backtracking bookkeeping", &criterion_2);
    let (runs, elapsed) = gap_runs();
    run(3, "spectral gap statistics", &|| criterion_3(&runs, elapsed));
    run(4, "rank and smallest positive eigenvalue", &|| criterion_4(&runs));
    run(5, "non-backtracking second eigenvalue", &|| criterion_5(&runs));
    run(6, "tangle checker", &criterion_6);
    run(7, "tanner worked example", &criterion_7);
    run(8, "tanner oracle consistency", &criterion_8);
    run(9, "regular block model clustering", &criterion_9);
    run(10, "expander mixing", &criterion_10);
    run(11, "matrix completion", &criterion_11);
    run(13, "conditional edge probability", &criterion_13);
    run(12, "perron vector", &criterion_12);
    let failed: Vec<u32> = results.iter().filter(|(_, _, v)| !v.pass).map(|(id, _, _)| *id).collect();
    if failed.is_empty() {
        println!("acceptance: all {} criteria PASS", results.len());
        ExitCode::SUCCESS
    } else {
        println!("acceptance: FAIL on criteria {failed:?}");
        ExitCode::FAILURE
    }
}

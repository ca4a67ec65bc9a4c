//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line each and
//! exits non-zero if any criterion fails.

use std::alloc::{GlobalAlloc, Layout, System};
use std::process::{Command, ExitCode};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::time::{Duration, Instant};

use pants_calculus::cli::{RunReport, Status, SCHEMA};
use pants_calculus::homs::{
    delete_top, drop_pants, expand, expand_once, expand_truncated, project, tee, verify_cube,
    verify_trapezoid,
};
use pants_calculus::limits::{
    chi, chi_coherence_check, spanier_witness, truncated_square_check, PantsElement,
};
use pants_calculus::rewrite::{
    cyclic_reduce, is_conjugate, is_reduced, multiply, prefix_split, reduce, reduce_oracle,
    ReducedWord,
};
use pants_calculus::sample::{loop_alphabet, mixed_word, random_word, random_word_over, sample_rng};
use pants_calculus::{AlphabetBound, Exec, Letter, Word};
use rand::Rng;

struct CountingAlloc;

static CURRENT: AtomicUsize = AtomicUsize::new(0);
static PEAK: AtomicUsize = AtomicUsize::new(0);

unsafe impl GlobalAlloc for CountingAlloc {
    unsafe fn alloc(&self, layout: Layout) -> *mut u8 {
        let p = unsafe { System.alloc(layout) };
        if !p.is_null() {
            let now = CURRENT.fetch_add(layout.size(), Ordering::Relaxed) + layout.size();
            PEAK.fetch_max(now, Ordering::Relaxed);
        }
        p
    }

    unsafe fn dealloc(&self, ptr: *mut u8, layout: Layout) {
        unsafe { System.dealloc(ptr, layout) };
        CURRENT.fetch_sub(layout.size(), Ordering::Relaxed);
    }
}

#[global_allocator]
static ALLOC: CountingAlloc = CountingAlloc;

const SEED: u64 = 0x5eed;

fn bound(n: u64, k: u64) -> AlphabetBound {
    AlphabetBound::new(n, k).unwrap()
}

/// Draws until the word differs from `other`.
fn distinct_word<R: Rng>(rng: &mut R, b: AlphabetBound, max_len: usize, other: &Word) -> Word {
    loop {
        let w = mixed_word(rng, b, max_len);
        if &w != other {
            return w;
        }
    }
}

fn count_failures(results: Vec<bool>) -> usize {
    results.into_iter().filter(|ok| !ok).count()
}

fn c1_confluence() -> (bool, String) {
    let results = Exec::default().map_indexed(1000, |i| {
        let mut rng = sample_rng(SEED ^ 1, i);
        let n = rng.gen_range(1..=5);
        let k = rng.gen_range(n..=13);
        let w = mixed_word(&mut rng, bound(n, k), 200);
        let canonical = reduce(&w);
        (0..5).all(|s| reduce_oracle(&w, i * 5 + s) == canonical)
    });
    let bad = count_failures(results);
    (bad == 0, format!("1000 words x 5 seeds, {bad} disagreements"))
}

fn c2_homomorphisms() -> (bool, String) {
    let results = Exec::default().map_indexed(500, |i| {
        let mut rng = sample_rng(SEED ^ 2, i);
        let mut failures: Vec<&'static str> = Vec::new();
        let mut check = |name, ok: bool| {
            if !ok {
                failures.push(name)
            }
        };
        let n = rng.gen_range(1..=4);

        // R_{n,k}
        let k = rng.gen_range(n..=10);
        let (u, v) = (mixed_word(&mut rng, bound(n, k + 1), 40), mixed_word(&mut rng, bound(n, k + 1), 40));
        let r = |w: &Word| delete_top(w, n, k).unwrap();
        check("R", r(&u.concat(&v)) == r(&u).concat(&r(&v)) && r(&Word::empty()).is_empty());

        // S_{n,k}
        check("S", reduce(&u.concat(&v)) == multiply(&reduce(&u), &reduce(&v)));

        // T_{n,k}
        let (a, b) = (reduce(&u), reduce(&v));
        let t = |w: &ReducedWord| tee(w, n, k).unwrap();
        check("T", t(&multiply(&a, &b)) == multiply(&t(&a), &t(&b)));

        // D_n, on W⁺_{n,k} with k ≥ 2n + 1
        let kd = rng.gen_range(2 * n + 1..=2 * n + 4);
        let u = mixed_word(&mut rng, bound(n, kd), 40);
        let v = distinct_word(&mut rng, bound(n, kd), 40, &u);
        let d = |w: &Word| expand_once(w, n).unwrap();
        check("D", d(&u.concat(&v)) == d(&u).concat(&d(&v)) && d(&Word::empty()).is_empty());
        check("D injective", d(&u) != d(&v));

        // E_{n-1}
        let (x, y) = (mixed_word(&mut rng, bound(n + 1, n), 40), mixed_word(&mut rng, bound(n + 1, n), 40));
        let e = |w: &Word| drop_pants(w, n).unwrap();
        check("E", e(&x.concat(&y)) == e(&x).concat(&e(&y)) && e(&Word::empty()).is_empty());

        // D̄_{j,m-1}, both regimes
        let m = 2 * rng.gen_range(1..=6u64);
        let j = rng.gen_range(1..m);
        let u = mixed_word(&mut rng, bound(j, m - 1), 40);
        let v = distinct_word(&mut rng, bound(j, m - 1), 40, &u);
        let db = |w: &Word| expand_truncated(w, j, m).unwrap();
        check("Dbar", db(&u.concat(&v)) == db(&u).concat(&db(&v)) && db(&Word::empty()).is_empty());
        check("Dbar injective", db(&u) != db(&v));
        failures
    });
    let failures: Vec<&str> = results.into_iter().flatten().collect();
    (
        failures.is_empty(),
        format!("500 pairs each for R, S, T, D, E, Dbar; injectivity of D, Dbar; failures: {failures:?}"),
    )
}

fn c3_reducedness() -> (bool, String) {
    let results = Exec::default().map_indexed(1000, |i| {
        let mut rng = sample_rng(SEED ^ 3, i);
        let n = rng.gen_range(1..=6);
        let k = rng.gen_range(2 * n + 1..=2 * n + 3);
        let w = random_word(&mut rng, bound(n, k), 60, true);
        is_reduced(&w) && is_reduced(&expand_once(&w, n).unwrap())
    });
    let bad = count_failures(results);
    (bad == 0, format!("1000 reduced words, {bad} non-reduced images"))
}

fn diagram_grid(verify: fn(u64, u64, u64, u64) -> pants_calculus::Result<pants_calculus::homs::DiagramReport>) -> (bool, String) {
    let mut runs = 0;
    let mut failures = 0;
    for n in 2..=5 {
        for k in 2 * n + 1..=2 * n + 3 {
            let report = verify(n, k, 200, SEED + n * 100 + k).unwrap();
            runs += 1;
            failures += report.failures.len();
        }
    }
    (failures == 0, format!("{runs} (n, k) cells x 200 samples, {failures} failures"))
}

fn c6_chi_well_defined() -> (bool, String) {
    let results = Exec::default().map_indexed(200, |i| {
        let mut rng = sample_rng(SEED ^ 6, i);
        let n = rng.gen_range(1..=4);
        let k = rng.gen_range(n..=n + 6);
        let x = PantsElement::finite(n, &mixed_word(&mut rng, bound(n, k), 30)).unwrap();
        (1..=5).all(|m| chi_coherence_check(&x, m).unwrap())
    });
    let bad = count_failures(results);
    (bad == 0, format!("200 elements at levels ≤ 4, m = 1..5, {bad} incoherent"))
}

fn c7_chi_injective() -> (bool, String) {
    let results = Exec::default().map_indexed(200, |i| {
        let mut rng = sample_rng(SEED ^ 7, i);
        let n = rng.gen_range(1..=3);
        let alphabet = loop_alphabet(n, 6);
        let u = random_word_over(&mut rng, &alphabet, 12, true);
        let v = loop {
            let v = random_word_over(&mut rng, &alphabet, 12, true);
            if v != u {
                break v;
            }
        };
        let (a, b) = (PantsElement::finite(n, &u).unwrap(), PantsElement::finite(n, &v).unwrap());
        let separated = (1..=14).any(|m| chi(&a, m).unwrap() != chi(&b, m).unwrap());
        let squares = (2..=14)
            .step_by(2)
            .filter(|&m| m >= n)
            .all(|m| truncated_square_check(&a, m).unwrap() && truncated_square_check(&b, m).unwrap());
        (separated, squares)
    });
    let unseparated = results.iter().filter(|r| !r.0).count();
    let broken_squares = results.iter().filter(|r| !r.1).count();
    (
        unseparated == 0 && broken_squares == 0,
        format!("200 distinct pairs, {unseparated} not separated by m ≤ 14, {broken_squares} with a non-commuting Dbar square"),
    )
}

fn c8_spanier() -> (bool, String) {
    let l1 = ReducedWord::new(Word::single(Letter::ell(1))).unwrap();
    let x = PantsElement::finite(1, l1.word()).unwrap();
    let mut bad = Vec::new();
    for n in 1..=12u64 {
        let fac = spanier_witness(&l1, n + 1).unwrap();
        let expanded = expand(l1.word(), n).unwrap();
        let flat_count = expanded.to_vec().len() as u64;
        let loops: Vec<u64> = expanded.iter().filter(|l| l.is_loop()).map(|l| l.index()).collect();
        let ok = fac.factors.len() as u64 == n + 1
            && fac.min_core_index() == Some(n + 1)
            && flat_count == 5 * n + 1
            && expanded.len() == flat_count
            && loops.len() as u64 == n + 1
            && loops.iter().all(|&i| i >= n + 1 && i <= 2 * n + 1)
            && reduce(&fac.product()) == reduce(&expanded);
        if !ok {
            bad.push(format!("witness at n = {n}"));
        }
    }
    for m in 1..=12 {
        if chi(&x, m).unwrap().is_empty() {
            bad.push(format!("chi_{m} empty"));
        }
    }
    (bad.is_empty(), format!("n = 1..12 closed forms (n+1 factors, min index n+1, length 5n+1), chi_1..12 nonempty; problems: {bad:?}"))
}

fn c9_monotonicity() -> (bool, String) {
    let results = Exec::default().map_indexed(500, |i| {
        let mut rng = sample_rng(SEED ^ 9, i);
        let n = rng.gen_range(1..=4);
        let k = rng.gen_range(n..=n + 8);
        let w = mixed_word(&mut rng, bound(n, k), 60);
        let mut violations = 0usize;
        for m in n - 1..=k {
            let p = project(&w, n, k, m).unwrap();
            if reduce(&p).len() as u64 > p.len() {
                violations += 1;
            }
        }
        violations
    });
    let total: usize = results.into_iter().sum();
    (total == 0, format!("500 words, every projection chain, {total} violations"))
}

fn c10_prefix() -> (bool, String) {
    let results = Exec::default().map_indexed(500, |i| {
        let mut rng = sample_rng(SEED ^ 10, i);
        let b = bound(rng.gen_range(1..=3), 5);
        let lambda = reduce(&random_word(&mut rng, b, 25, true));
        let delta = loop {
            let d = reduce(&random_word(&mut rng, b, 15, true));
            if !d.is_empty() {
                break d;
            }
        };
        prefix_split(&lambda, &delta).is_ok_and(|s| s.census_ok)
    });
    let bad = count_failures(results);
    (bad == 0, format!("500 (λ, δ) pairs, {bad} failed splits"))
}

fn c11_avoidance() -> (bool, String) {
    let results = Exec::default().map_indexed(500, |i| {
        let mut rng = sample_rng(SEED ^ 11, i);
        let b = bound(2, 4);
        loop {
            let u = reduce(&random_word(&mut rng, b, 12, true));
            let v = reduce(&random_word(&mut rng, b, 12, true));
            let core = cyclic_reduce(u.word()).core;
            let vc = v.census();
            if core.census().letters().any(|l| !vc.contains_generator(l.generator)) {
                return !is_conjugate(&u, &v);
            }
        }
    });
    let bad = count_failures(results);
    (bad == 0, format!("500 qualifying pairs, {bad} reported conjugate"))
}

fn c12_performance() -> (bool, String) {
    let copies = 1_000_000u64;
    let baseline = CURRENT.load(Ordering::Relaxed);
    PEAK.store(baseline, Ordering::Relaxed);
    let start = Instant::now();
    let word = Word::single(Letter::ell(1)).repeat(copies);
    let expanded = expand(&word, 10).unwrap();
    let length = expanded.len();
    let elapsed = start.elapsed();
    let peak = PEAK.load(Ordering::Relaxed).saturating_sub(baseline);
    drop(expanded);

    let small = Word::from_letters(vec![Letter::ell(1); 10]);
    let flat = expand(&small, 10).unwrap();
    let shared = expand(&small.to_shared(), 10).unwrap();
    let cross = flat.to_vec().len() as u64 == 10 * 51 && shared == flat && shared.len() == 510;

    let ok = length == copies * 51 && elapsed < Duration::from_secs(1) && peak < 100 * 1024 * 1024 && cross;
    (
        ok,
        format!(
            "length {length} (expected {}), {:.1} ms, peak {:.2} MB, 10-copy flat cross-check {}",
            copies * 51,
            elapsed.as_secs_f64() * 1e3,
            peak as f64 / (1024.0 * 1024.0),
            if cross { "ok" } else { "MISMATCH" }
        ),
    )
}

fn c13_cli() -> (bool, String) {
    let fixtures: &[(&[&str], i32, Status)] = &[
        (&["reduce", "l1 L1"], 0, Status::Pass),
        (&["reduce", "l1 bogus"], 2, Status::Error),
        (&["expand", "l1", "--depth", "4"], 0, Status::Pass),
        (&["chi", "1", "l1", "1"], 0, Status::Pass),
        (&["chi", "1", "e", "4"], 0, Status::Pass),
        (&["eq", "1", "l1", "2", "r1.1 l2 R1.1 r1.2 l3 R1.2"], 0, Status::Pass),
        (&["witness", "l1", "--threshold", "13"], 0, Status::Pass),
        (&["witness", "e", "--threshold", "5"], 0, Status::Pass),
        (&["census", "l1 l2 L1"], 0, Status::Pass),
        (&["census", "l1", "--depth", "3"], 0, Status::Pass),
        (&["verify", "trapezoid", "--n", "2", "--k", "5", "--samples", "200", "--seed", "7"], 0, Status::Pass),
        (&["verify", "cube", "--n", "3", "--k", "7", "--samples", "200", "--seed", "7"], 0, Status::Pass),
        (&["verify", "trapezoid", "--n", "2", "--k", "4"], 2, Status::Error),
        (&["expand", "l4611686018427387904", "--n", "4611686018427387904", "--depth", "1"], 3, Status::Error),
        (&["demo-notinj", "--depth", "0"], 0, Status::Pass),
        (&["demo-notinj", "--depth", "12"], 0, Status::Pass),
    ];
    let mut problems = Vec::new();
    for (args, code, status) in fixtures {
        let out = Command::new(env!("CARGO_BIN_EXE_pants"))
            .arg("--json")
            .args(*args)
            .output()
            .expect("binary runs");
        let text = String::from_utf8_lossy(&out.stdout);
        let report: Result<RunReport, _> = serde_json::from_str(&text);
        let ok = match report {
            Ok(r) => {
                let again: RunReport = serde_json::from_str(&serde_json::to_string(&r).unwrap()).unwrap();
                out.status.code() == Some(*code) && r.status == *status && r.schema == SCHEMA && again == r
            }
            Err(_) => false,
        };
        if !ok {
            problems.push(args.join(" "));
        }
    }
    // the witness at threshold 13 has 13 factors, minimum index 13
    let w = Command::new(env!("CARGO_BIN_EXE_pants"))
        .args(["witness", "l1", "--threshold", "13"])
        .output()
        .unwrap();
    let factors: serde_json::Value = serde_json::from_slice(&w.stdout).unwrap_or_default();
    let shape_ok = factors.as_array().is_some_and(|a| {
        a.len() == 13
            && a.iter().all(|f| {
                f["core"].as_str().and_then(|c| c[1..].parse::<u64>().ok()).is_some_and(|i| i >= 13)
            })
    });
    if !shape_ok {
        problems.push("witness l1 --threshold 13 shape".into());
    }
    (problems.is_empty(), format!("{} fixtures; problems: {problems:?}", fixtures.len()))
}

fn main() -> ExitCode {
    // Performance first, while the heap is quiet.
    let perf = c12_performance();
    let criteria: Vec<(&str, Box<dyn Fn() -> (bool, String)>)> = vec![
        ("Confluence", Box::new(c1_confluence)),
        ("Homomorphism and injectivity laws", Box::new(c2_homomorphisms)),
        ("Reducedness preservation", Box::new(c3_reducedness)),
        ("Trapezoids", Box::new(|| diagram_grid(verify_trapezoid))),
        ("Cube squares", Box::new(|| diagram_grid(verify_cube))),
        ("chi well-definedness", Box::new(c6_chi_well_defined)),
        ("chi injectivity", Box::new(c7_chi_injective)),
        ("Spanier witness / non-injectivity", Box::new(c8_spanier)),
        ("Letter-count monotonicity", Box::new(c9_monotonicity)),
        ("Prefix property", Box::new(c10_prefix)),
        ("Conjugacy avoidance", Box::new(c11_avoidance)),
        ("Performance", Box::new(move || perf.clone())),
        ("CLI contract", Box::new(c13_cli)),
    ];
    let suite = Instant::now();
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let started = Instant::now();
        let (ok, detail) = run();
        if !ok {
            failed += 1;
        }
        println!(
            "[{}] {:>2}. {name}: {detail} ({:.2} s)",
            if ok { "PASS" } else { "FAIL" },
            i + 1,
            started.elapsed().as_secs_f64()
        );
    }
    println!(
        "acceptance: {} passed, {failed} failed in {:.1} s",
        criteria.len() - failed,
        suite.elapsed().as_secs_f64()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

//! Acceptance criteria 1 to 10. Prints one line per criterion and exits
//! non-zero if any fails.

use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use gridtau::braid::{expand_quasipositive, to_grid, BraidWord, QuasipositiveWord};
use gridtau::grid::{fixture_by_name, fixtures, GridDiagram};
use gridtau::invariants::{
    check_additivity, check_bennequin, check_crossing_change, check_monotonicity,
    check_quasipositive, compute, compute_grid, CheckStatus, ComputeOptions, Input,
    InvariantReport,
};
use gridtau::verify::{random_braid, random_crossing_pair, random_moves, random_quasipositive};
use gridtau::HalfInt;

const SEED: u64 = 2024;

fn h(v: i64) -> HalfInt {
    HalfInt::from_int(v)
}

struct Outcome {
    ok: bool,
    detail: String,
}

impl Outcome {
    fn new(ok: bool, detail: impl Into<String>) -> Self {
        Outcome {
            ok,
            detail: detail.into(),
        }
    }
}

/// Every report computed here, for the monotonicity sweep.
#[derive(Default)]
struct Seen {
    reports: Vec<InvariantReport>,
}

impl Seen {
    fn keep(&mut self, r: &InvariantReport) {
        self.reports.push(r.clone());
    }
}

fn opts() -> ComputeOptions {
    ComputeOptions {
        max_grid: 10,
        ..Default::default()
    }
}

fn braid(s: &str) -> BraidWord {
    s.parse().unwrap()
}

fn qp(s: &str) -> QuasipositiveWord {
    s.parse().unwrap()
}

fn failures(r: &InvariantReport) -> String {
    r.failures()
        .iter()
        .map(|c| format!("{}: {}", c.name, c.detail))
        .collect::<Vec<_>>()
        .join("; ")
}

fn fixture_values(seen: &mut Seen) -> Outcome {
    let mut bad = Vec::new();
    let mut slowest = Duration::ZERO;
    let want: [(&str, i64, i64); 6] = [
        ("unknot2", 0, 0),
        ("trefoil5", 1, 1),
        ("figure8_6", 0, 0),
        ("hopf4", 1, 0),
        ("torus24_6", 2, 1),
        ("torus25_7", 2, 2),
    ];
    for (name, top, bot) in want {
        let start = Instant::now();
        let r = compute(&Input::Fixture(name.into()), &opts()).unwrap();
        let took = start.elapsed();
        slowest = slowest.max(took);
        seen.keep(&r);
        if (r.tau_top, r.tau_bot) != (h(top), h(bot))
            || took >= Duration::from_secs(5)
            || !r.all_passed()
        {
            bad.push(format!(
                "{name}: ({}, {}) in {took:?} {}",
                r.tau_top,
                r.tau_bot,
                failures(&r)
            ));
        }
        if name == "unknot2" && r.total_homology_rank != 2 {
            bad.push("unknot total rank".into());
        }
        if name == "trefoil5" && r.signature.map(|s| -s) != Some(r.tau_top.doubled()) {
            bad.push("trefoil tau != -sigma/2".into());
        }
    }
    let trefoil = fixture_by_name("trefoil5").unwrap().grid;
    let mirror = compute_grid("mirror trefoil", &trefoil.mirror(), &opts()).unwrap();
    seen.keep(&mirror);
    if mirror.tau_top != h(-1) {
        bad.push(format!("mirror trefoil tau = {}", mirror.tau_top));
    }
    let q = compute(&Input::Quasipositive(qp("2: (|1) (|1) (|1)")), &opts()).unwrap();
    seen.keep(&q);
    if q.tau_top != h(1) || q.check("quasipositive").map(|c| c.status) != Some(CheckStatus::Pass) {
        bad.push("trefoil tau != g4 from (b=2, m=3)".into());
    }
    let t25 = compute(&Input::Braid(braid("2: 1 1 1 1 1")), &opts()).unwrap();
    seen.keep(&t25);
    // Seifert's algorithm on the positive braid realizes g3 = (c - b + 1) / 2 = 2
    if t25.tau_top != h(2) || t25.check("sqp_fibered").map(|c| c.status) != Some(CheckStatus::Pass)
    {
        bad.push(format!(
            "T(2,5) tau = {}, expected g3 = g4 = 2",
            t25.tau_top
        ));
    }
    Outcome::new(
        bad.is_empty(),
        if bad.is_empty() {
            format!("6 fixtures, mirror, g4, g3; slowest {slowest:.2?}")
        } else {
            bad.join("; ")
        },
    )
}

fn additivity(seen: &mut Seen) -> Outcome {
    let start = Instant::now();
    let trefoil = fixture_by_name("trefoil5").unwrap().grid;
    let base = compute_grid("trefoil", &trefoil, &opts()).unwrap();
    let mirror = compute_grid("mirror", &trefoil.mirror(), &opts()).unwrap();
    let mut bad = Vec::new();
    for (label, other, rother, want) in [
        ("trefoil # trefoil", trefoil.clone(), &base, 2),
        ("trefoil # mirror", trefoil.mirror(), &mirror, 0),
    ] {
        let sum = trefoil.connected_sum(&other).unwrap();
        if sum.size() != 9 {
            bad.push(format!("{label}: size {}", sum.size()));
        }
        let r = compute_grid(label, &sum, &opts()).unwrap();
        seen.keep(&r);
        let add = check_additivity(&base, rother, &r).unwrap();
        if r.tau_top != h(want) || add.status != CheckStatus::Pass {
            bad.push(format!("{label}: tau = {}", r.tau_top));
        }
    }
    let took = start.elapsed();
    let ok = bad.is_empty() && took < Duration::from_secs(600);
    Outcome::new(
        ok,
        if bad.is_empty() {
            format!("2 and 0 on n = 9 grids in {took:.2?}")
        } else {
            bad.join("; ")
        },
    )
}

fn quasipositive_words() -> Vec<QuasipositiveWord> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    (0..25).map(|_| random_quasipositive(&mut rng, 8)).collect()
}

fn quasipositive_suite(seen: &mut Seen) -> Outcome {
    let mut bad = Vec::new();
    for q in quasipositive_words() {
        assert!(q.strands() <= 3 && q.bands().len() <= 4);
        let r = compute(&Input::Quasipositive(q.clone()), &opts()).unwrap();
        seen.keep(&r);
        if r.grid_size > 8 || check_quasipositive(&r, &q).status != CheckStatus::Pass {
            bad.push(format!("{q}: 2 tau_top = {}", r.tau_top.doubled()));
        }
    }
    Outcome::new(
        bad.is_empty(),
        if bad.is_empty() {
            "25 of 25 words".to_string()
        } else {
            bad.join("; ")
        },
    )
}

fn crossing_suite(seen: &mut Seen) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 1);
    let mut bad = Vec::new();
    for _ in 0..25 {
        let (minus, plus) = random_crossing_pair(&mut rng, 7);
        let rm = compute(&Input::Braid(minus.clone()), &opts()).unwrap();
        let rp = compute(&Input::Braid(plus.clone()), &opts()).unwrap();
        seen.keep(&rm);
        seen.keep(&rp);
        let c = check_crossing_change(&rm, &rp).unwrap();
        if c.status != CheckStatus::Pass || rm.grid_size > 7 || rp.grid_size > 7 {
            bad.push(format!("{minus} -> {plus}: {}", c.detail));
        }
    }
    Outcome::new(
        bad.is_empty(),
        if bad.is_empty() {
            "25 of 25 pairs".to_string()
        } else {
            bad.join("; ")
        },
    )
}

fn bennequin_suite(seen: &mut Seen) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 2);
    let mut bad = Vec::new();
    for _ in 0..25 {
        let w = random_braid(&mut rng, 8);
        let r = compute(&Input::Braid(w.clone()), &opts()).unwrap();
        seen.keep(&r);
        let c = check_bennequin(&r, &w, false);
        if c.status != CheckStatus::Pass {
            bad.push(format!("{w}: {}", c.detail));
        }
    }
    for q in quasipositive_words() {
        let w = expand_quasipositive(&q).unwrap();
        let r = compute(&Input::Quasipositive(q.clone()), &opts()).unwrap();
        let c = check_bennequin(&r, &w, true);
        if c.status != CheckStatus::Pass {
            bad.push(format!("{q} (equality): {}", c.detail));
        }
    }
    Outcome::new(
        bad.is_empty(),
        if bad.is_empty() {
            "25 braids, equality on 25 quasipositive words".to_string()
        } else {
            bad.join("; ")
        },
    )
}

fn structural(seen: &mut Seen) -> Outcome {
    let start = Instant::now();
    let o = ComputeOptions {
        cross_check: true,
        assoc_graded: true,
        ..opts()
    };
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 3);
    let mut bad = Vec::new();
    let mut grids: Vec<(String, GridDiagram)> = fixtures()
        .into_iter()
        .map(|f| (f.name.to_string(), f.grid))
        .collect();
    for _ in 0..100 {
        let w = random_braid(&mut rng, 7);
        grids.push((format!("braid {w}"), to_grid(&w)));
    }
    let wanted = [
        "square_zero",
        "total_rank",
        "maslov_profile",
        "divisibility",
        "oracle",
    ];
    for (label, g) in &grids {
        match compute_grid(label, g, &o) {
            Ok(r) => {
                let missing: Vec<&str> = wanted
                    .iter()
                    .copied()
                    .filter(|k| r.check(k).map(|c| c.status) != Some(CheckStatus::Pass))
                    .collect();
                if !missing.is_empty() || !r.all_passed() {
                    bad.push(format!("{label}: {missing:?} {}", failures(&r)));
                }
                seen.keep(&r);
            }
            Err(e) => bad.push(format!("{label}: {e}")),
        }
    }
    let took = start.elapsed();
    let ok = bad.is_empty() && took < Duration::from_secs(900);
    Outcome::new(
        ok,
        if bad.is_empty() {
            format!(
                "{} grids, both modes, oracle agrees, {took:.2?}",
                grids.len()
            )
        } else {
            bad.join("; ")
        },
    )
}

fn move_invariance(seen: &mut Seen) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 4);
    let fx = fixtures();
    let bases: Vec<InvariantReport> = fx
        .iter()
        .map(|f| compute(&Input::Fixture(f.name.into()), &opts()).unwrap())
        .collect();
    let mut bad = Vec::new();
    let mut applied = 0;
    for i in 0..50 {
        let k = i % fx.len();
        let (g, moves) = random_moves(&mut rng, &fx[k].grid, 6, 8);
        applied += moves.len();
        let r = compute_grid("moved", &g, &opts()).unwrap();
        seen.keep(&r);
        if !bases[k].same_invariants(&r) || g.size() > 8 {
            let names: Vec<String> = moves.iter().map(|m| m.to_string()).collect();
            bad.push(format!("{} {}", fx[k].name, names.join(" ")));
        }
    }
    Outcome::new(
        bad.is_empty(),
        if bad.is_empty() {
            format!("50 sequences, {applied} moves")
        } else {
            bad.join("; ")
        },
    )
}

fn delta_thin(seen: &mut Seen) -> Outcome {
    let o = ComputeOptions {
        assoc_graded: true,
        ..opts()
    };
    let mut bad = Vec::new();
    let mut found = Vec::new();
    for name in ["trefoil5", "figure8_6", "hopf4", "torus24_6"] {
        let r = compute(&Input::Fixture(name.into()), &o).unwrap();
        seen.keep(&r);
        let sigma = r.signature.unwrap();
        let want = HalfInt::from_doubled(r.components as i64 - 1 - sigma);
        match r.delta {
            Some(d) if d == want => found.push(format!("{name} {d}")),
            other => bad.push(format!("{name}: delta {other:?}, predicted {want}")),
        }
    }
    Outcome::new(
        bad.is_empty(),
        if bad.is_empty() {
            found.join(", ")
        } else {
            bad.join("; ")
        },
    )
}

fn peak_rss_kib() -> Option<u64> {
    let status = std::fs::read_to_string("/proc/self/status").ok()?;
    let line = status.lines().find(|l| l.starts_with("VmHWM:"))?;
    line.split_whitespace().nth(1)?.parse().ok()
}

fn performance(seen: &mut Seen) -> Outcome {
    let o = ComputeOptions {
        assoc_graded: true,
        ..opts()
    };
    let mut bad = Vec::new();
    let mut slowest = Duration::ZERO;
    let inputs = [
        Input::Braid(braid("3: 1 1 -2 1 -2")),
        Input::Braid(braid("4: 1 2 3 1")),
        Input::Quasipositive(qp("3: (2 | 1) (| 2) (| 1)")),
    ];
    for input in &inputs {
        let start = Instant::now();
        let r = compute(input, &o).unwrap();
        let took = start.elapsed();
        slowest = slowest.max(took);
        seen.keep(&r);
        if r.grid_size != 8 {
            bad.push(format!("{input} has n = {}", r.grid_size));
        }
        if took >= Duration::from_secs(60) {
            bad.push(format!("{input} took {took:?}"));
        }
    }
    // the n = 10 gate is optional and slow, so it only runs on request
    if std::env::var_os("GRIDTAU_ACCEPT_N10").is_some() {
        let start = Instant::now();
        let r = compute(&Input::Braid(braid("3: 1 -2 1 -2 1 -2 1")), &opts()).unwrap();
        let took = start.elapsed();
        seen.keep(&r);
        println!("optional n = {} gate: {took:.2?}", r.grid_size);
        if r.grid_size != 10 || took >= Duration::from_secs(1800) {
            bad.push(format!("n = 10 gate: n = {} in {took:?}", r.grid_size));
        }
    }
    let rss = peak_rss_kib();
    if rss.is_some_and(|kib| kib >= 4 * 1024 * 1024) {
        bad.push(format!("peak RSS {rss:?} KiB"));
    }
    let mem = rss.map_or("peak RSS unavailable".to_string(), |k| {
        format!("peak RSS {} MiB", k / 1024)
    });
    Outcome::new(
        bad.is_empty(),
        if bad.is_empty() {
            format!("n = 8 slowest {slowest:.2?}, {mem}")
        } else {
            bad.join("; ")
        },
    )
}

type Criterion = (&'static str, fn(&mut Seen) -> Outcome);

fn main() {
    let mut seen = Seen::default();
    let criteria: Vec<Criterion> = vec![
        ("fixture values", fixture_values),
        ("connected-sum additivity", additivity),
        ("quasipositive sharpness", quasipositive_suite),
        ("crossing change", crossing_suite),
        ("monotonicity", |_| Outcome::new(true, "")),
        ("bennequin", bennequin_suite),
        ("structural invariants", structural),
        ("move invariance", move_invariance),
        ("delta-thinness", delta_thin),
        ("performance", performance),
    ];
    let mut results: Vec<(usize, &str, Outcome)> = Vec::new();
    for (i, (name, run)) in criteria.iter().enumerate() {
        if i == 4 {
            continue;
        }
        results.push((i + 1, name, run(&mut seen)));
    }
    // monotonicity is judged on every report the other criteria produced
    let bad: Vec<String> = seen
        .reports
        .iter()
        .filter(|r| check_monotonicity(r).status != CheckStatus::Pass)
        .map(|r| r.input.clone())
        .collect();
    let mono = Outcome::new(
        bad.is_empty(),
        if bad.is_empty() {
            format!("{} reports", seen.reports.len())
        } else {
            bad.join("; ")
        },
    );
    results.insert(4, (5, "monotonicity", mono));

    let mut all = true;
    for (n, name, o) in &results {
        all &= o.ok;
        println!(
            "criterion {n:>2} {:<26} {}  {}",
            name,
            if o.ok { "PASS" } else { "FAIL" },
            o.detail
        );
    }
    if !all {
        std::process::exit(1);
    }
}

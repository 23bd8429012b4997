//! Seeded verification suites built from the checks in [`crate::invariants`].

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::braid::{expand_quasipositive, to_grid, Band, BraidWord, QuasipositiveWord};
use crate::error::{Error, Result};
use crate::grid::{fixtures, Corner, GridDiagram};
use crate::invariants::{
    check_additivity, check_crossing_change, check_mirror_duality, compute, compute_grid, Check,
    ComputeOptions, Input, InvariantReport,
};
use crate::HalfInt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Suite {
    Fixtures,
    Moves,
    Crossing,
    Additivity,
    Quasipositive,
    Bennequin,
    Alternating,
    Oracle,
    All,
}

impl Suite {
    pub const EACH: [Suite; 8] = [
        Suite::Fixtures,
        Suite::Moves,
        Suite::Crossing,
        Suite::Additivity,
        Suite::Quasipositive,
        Suite::Bennequin,
        Suite::Alternating,
        Suite::Oracle,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Fixtures => "fixtures",
            Suite::Moves => "moves",
            Suite::Crossing => "crossing",
            Suite::Additivity => "additivity",
            Suite::Quasipositive => "quasipositive",
            Suite::Bennequin => "bennequin",
            Suite::Alternating => "alternating",
            Suite::Oracle => "oracle",
            Suite::All => "all",
        }
    }

    /// Number of random cases drawn when no count is given.
    pub fn default_samples(self) -> usize {
        match self {
            Suite::Moves => 50,
            Suite::Oracle => 100,
            Suite::Alternating => 10,
            Suite::Crossing | Suite::Quasipositive | Suite::Bennequin => 25,
            _ => 0,
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::EACH
            .into_iter()
            .chain([Suite::All])
            .find(|suite| suite.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown suite '{s}'")))
    }
}

#[derive(Clone, Copy, Debug)]
pub struct VerifyConfig {
    pub seed: u64,
    pub max_grid: usize,
    /// Overrides [`Suite::default_samples`].
    pub samples: Option<usize>,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            seed: 0,
            max_grid: crate::chain::DEFAULT_MAX_SIZE,
            samples: None,
        }
    }
}

/// Checks run on one generated case.
#[derive(Clone, Debug)]
pub struct CaseResult {
    pub case: String,
    pub checks: Vec<Check>,
}

impl CaseResult {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }
}

#[derive(Clone, Debug)]
pub struct SuiteReport {
    pub suite: Suite,
    pub cases: Vec<CaseResult>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.cases.iter().all(CaseResult::passed)
    }

    pub fn failed_cases(&self) -> usize {
        self.cases.iter().filter(|c| !c.passed()).count()
    }

    /// One line per case, then a summary line.
    pub fn lines(&self) -> Vec<String> {
        let mut out: Vec<String> = self
            .cases
            .iter()
            .map(|c| {
                let mark = if c.passed() { "PASS" } else { "FAIL" };
                let mut line = format!("[{}] {mark} {}", self.suite, c.case);
                for f in c.checks.iter().filter(|k| !k.passed()) {
                    line.push_str(&format!("\n    {}: {}", f.name, f.detail));
                }
                line
            })
            .collect();
        out.push(format!(
            "[{}] {} of {} cases passed",
            self.suite,
            self.cases.len() - self.failed_cases(),
            self.cases.len()
        ));
        out
    }
}

fn rng_for(suite: Suite, seed: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(suite as u64);
    rng
}

/// A braid on 2 to 4 strands whose grid has size at most `max_grid`.
pub fn random_braid(rng: &mut impl Rng, max_grid: usize) -> BraidWord {
    loop {
        let strands = rng.gen_range(2..=4usize);
        if strands + 1 > max_grid {
            continue;
        }
        let len = rng.gen_range(1..=max_grid - strands);
        let letters = (0..len)
            .map(|_| {
                let g = rng.gen_range(1..strands as i32);
                if rng.gen_bool(0.5) {
                    g
                } else {
                    -g
                }
            })
            .collect();
        let w = BraidWord::new(strands, letters).expect("letters in range");
        if to_grid(&w).size() <= max_grid {
            return w;
        }
    }
}

/// A braid whose closure is an alternating diagram.
pub fn random_alternating_braid(rng: &mut impl Rng, max_grid: usize) -> BraidWord {
    loop {
        let strands = rng.gen_range(2..=3usize);
        if 2 * strands > max_grid {
            continue;
        }
        let first = if rng.gen_bool(0.5) { 1 } else { -1 };
        let len = rng.gen_range(strands..=max_grid - strands);
        let letters: Vec<i32> = (0..len)
            .map(|_| {
                let g = rng.gen_range(1..strands as i32);
                if g % 2 == 1 {
                    first * g
                } else {
                    -first * g
                }
            })
            .collect();
        let w = BraidWord::new(strands, letters).expect("letters in range");
        if w.uses_all_generators() && to_grid(&w).size() <= max_grid {
            return w;
        }
    }
}

/// A quasipositive word with `b ≤ 3`, `m ≤ 4` and grid size at most `max_grid`.
pub fn random_quasipositive(rng: &mut impl Rng, max_grid: usize) -> QuasipositiveWord {
    loop {
        let strands = rng.gen_range(2..=3usize);
        let m = rng.gen_range(1..=4usize);
        let bands = (0..m)
            .map(|_| {
                let generator = rng.gen_range(1..strands);
                let conj_len = if strands > 2 { rng.gen_range(0..=1) } else { 0 };
                let conjugator = (0..conj_len)
                    .map(|_| {
                        let g = rng.gen_range(1..strands as i32);
                        let g = if g == generator as i32 {
                            g % (strands as i32 - 1) + 1
                        } else {
                            g
                        };
                        if rng.gen_bool(0.5) {
                            g
                        } else {
                            -g
                        }
                    })
                    .collect();
                Band {
                    conjugator,
                    generator,
                }
            })
            .collect();
        let Ok(q) = QuasipositiveWord::new(strands, bands) else {
            continue;
        };
        let Ok(w) = expand_quasipositive(&q) else {
            continue;
        };
        if to_grid(&w).size() <= max_grid {
            return q;
        }
    }
}

/// `(L₋, L₊)` differing in the sign of one letter.
pub fn random_crossing_pair(rng: &mut impl Rng, max_grid: usize) -> (BraidWord, BraidWord) {
    loop {
        let w = random_braid(rng, max_grid);
        let i = rng.gen_range(0..w.len());
        let mut plus = w.letters().to_vec();
        plus[i] = plus[i].abs();
        let mut minus = plus.clone();
        minus[i] = -minus[i];
        let plus = BraidWord::new(w.strands(), plus).expect("same strands");
        let minus = BraidWord::new(w.strands(), minus).expect("same strands");
        if to_grid(&plus).size() <= max_grid && to_grid(&minus).size() <= max_grid {
            return (minus, plus);
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Move {
    Stabilize(usize, Corner),
    Commute(usize),
    Translate(usize, usize),
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Move::Stabilize(c, corner) => write!(f, "stab({c},{corner:?})"),
            Move::Commute(c) => write!(f, "comm({c})"),
            Move::Translate(dc, dr) => write!(f, "trans({dc},{dr})"),
        }
    }
}

/// Applies up to `steps` random moves, keeping the size at most `max_grid`.
/// Commutations are drawn from the legal ones.
pub fn random_moves(
    rng: &mut impl Rng,
    grid: &GridDiagram,
    steps: usize,
    max_grid: usize,
) -> (GridDiagram, Vec<Move>) {
    let mut g = grid.clone();
    let mut applied = Vec::new();
    for _ in 0..steps {
        let n = g.size();
        let mv = match rng.gen_range(0..3) {
            0 if n < max_grid => {
                Move::Stabilize(rng.gen_range(0..n), *Corner::ALL.choose(rng).unwrap())
            }
            1 => {
                let legal: Vec<usize> = (0..n).filter(|&c| g.commutation_move(c).is_ok()).collect();
                match legal.choose(rng) {
                    Some(&c) => Move::Commute(c),
                    None => continue,
                }
            }
            _ => Move::Translate(rng.gen_range(0..n), rng.gen_range(0..n)),
        };
        let next = match mv {
            Move::Stabilize(c, corner) => g.stabilize(c, corner),
            Move::Commute(c) => g.commutation_move(c),
            Move::Translate(dc, dr) => Ok(g.translate(dc, dr)),
        };
        if let Ok(next) = next {
            g = next;
            applied.push(mv);
        }
    }
    (g, applied)
}

fn opts(cfg: &VerifyConfig) -> ComputeOptions {
    ComputeOptions {
        max_grid: cfg.max_grid,
        ..Default::default()
    }
}

fn case_from(label: String, report: Result<InvariantReport>) -> CaseResult {
    match report {
        Ok(r) => CaseResult {
            case: label,
            checks: r.checks,
        },
        Err(e) => CaseResult {
            case: label,
            checks: vec![Check::new("compute", false, e.to_string())],
        },
    }
}

fn braid_case(w: &BraidWord, o: &ComputeOptions) -> CaseResult {
    case_from(format!("braid {w}"), compute(&Input::Braid(w.clone()), o))
}

fn qp_case(q: &QuasipositiveWord, o: &ComputeOptions) -> CaseResult {
    case_from(
        format!("qp {q}"),
        compute(&Input::Quasipositive(q.clone()), o),
    )
}

fn braid(s: &str) -> BraidWord {
    s.parse().expect("built-in braid word")
}

fn qp(s: &str) -> QuasipositiveWord {
    s.parse().expect("built-in quasipositive word")
}

fn expect_tau(label: &str, r: &InvariantReport, top: i64) -> Check {
    Check::new(
        label,
        r.tau_top == HalfInt::from_int(top),
        format!("tau_top = {}, expected {top}", r.tau_top),
    )
}

fn run_fixtures(cfg: &VerifyConfig) -> Vec<CaseResult> {
    let o = ComputeOptions {
        assoc_graded: true,
        cross_check: true,
        ..opts(cfg)
    };
    let mut cases: Vec<CaseResult> = fixtures()
        .par_iter()
        .map(|f| {
            case_from(
                format!("fixture {}", f.name),
                compute(&Input::Fixture(f.name.into()), &o),
            )
        })
        .collect();

    let trefoil = compute(&Input::Fixture("trefoil5".into()), &o);
    let mirror = fixtures()
        .into_iter()
        .find(|f| f.name == "trefoil5")
        .map(|f| compute_grid("mirror trefoil", &f.grid.mirror(), &o));
    let dual = match (trefoil, mirror) {
        (Ok(t), Some(Ok(m))) => {
            let mut checks = m.checks.clone();
            checks.push(expect_tau("mirror_value", &m, -1));
            checks.extend(check_mirror_duality(&t, &m));
            checks
        }
        (t, m) => vec![Check::new(
            "compute",
            false,
            format!("{:?} {:?}", t.err(), m),
        )],
    };
    cases.push(CaseResult {
        case: "mirror trefoil".into(),
        checks: dual,
    });

    let from_braid = compute(&Input::Braid(braid("2: 1 1 1")), &o);
    let fixture = compute(&Input::Fixture("trefoil5".into()), &o);
    let same = match (&from_braid, &fixture) {
        (Ok(a), Ok(b)) => Check::new(
            "braid_matches_fixture",
            a.same_invariants(b),
            "2: 1 1 1 vs trefoil5",
        ),
        _ => Check::new("braid_matches_fixture", false, "computation failed"),
    };
    cases.push(CaseResult {
        case: "braid 2: 1 1 1".into(),
        checks: vec![same],
    });
    cases
}

fn run_moves(cfg: &VerifyConfig, samples: usize) -> Vec<CaseResult> {
    let max = cfg.max_grid.min(8);
    let o = opts(cfg);
    let fx = fixtures();
    let mut rng = rng_for(Suite::Moves, cfg.seed);
    let jobs: Vec<(usize, GridDiagram, Vec<Move>)> = (0..samples)
        .map(|i| {
            let f = &fx[i % fx.len()];
            let steps = rng.gen_range(1..=6);
            let (g, moves) = random_moves(&mut rng, &f.grid, steps, max);
            (i % fx.len(), g, moves)
        })
        .collect();
    let bases: Vec<Result<InvariantReport>> = fx
        .par_iter()
        .map(|f| compute(&Input::Fixture(f.name.into()), &o))
        .collect();
    jobs.par_iter()
        .map(|(fi, g, moves)| {
            let names: Vec<String> = moves.iter().map(Move::to_string).collect();
            let label = format!("{} {}", fx[*fi].name, names.join(" "));
            let moved = compute_grid(&label, g, &o);
            match (&bases[*fi], moved) {
                (Ok(base), Ok(r)) => {
                    let mut checks = r.checks.clone();
                    checks.push(Check::new(
                        "move_invariance",
                        base.same_invariants(&r),
                        format!(
                            "n = {}, tau_top = {}, tau_bot = {}",
                            r.grid_size, r.tau_top, r.tau_bot
                        ),
                    ));
                    CaseResult {
                        case: label,
                        checks,
                    }
                }
                (_, moved) => case_from(
                    label,
                    moved.and(Err(Error::Inconsistent("base failed".into()))),
                ),
            }
        })
        .collect()
}

fn run_crossing(cfg: &VerifyConfig, samples: usize) -> Vec<CaseResult> {
    let o = opts(cfg);
    let max = cfg.max_grid.min(7);
    let mut rng = rng_for(Suite::Crossing, cfg.seed);
    let mut pairs = vec![
        (braid("2: 1 -1 1"), braid("2: 1 1 1")),
        (braid("2: 1 1 1 1 -1"), braid("2: 1 1 1 1 1")),
        (braid("2: 1 1 1"), braid("2: 1 1 1")),
    ];
    pairs.extend((0..samples).map(|_| random_crossing_pair(&mut rng, max)));
    pairs
        .par_iter()
        .map(|(minus, plus)| {
            let label = format!("{minus} -> {plus}");
            let rm = compute(&Input::Braid(minus.clone()), &o);
            let rp = compute(&Input::Braid(plus.clone()), &o);
            match (rm, rp) {
                (Ok(a), Ok(b)) => {
                    let mut checks = a.checks.clone();
                    checks.extend(b.checks.clone());
                    checks.push(
                        check_crossing_change(&a, &b).unwrap_or_else(|e| {
                            Check::new("crossing_change", false, e.to_string())
                        }),
                    );
                    CaseResult {
                        case: label,
                        checks,
                    }
                }
                (a, b) => CaseResult {
                    case: label,
                    checks: vec![Check::new(
                        "compute",
                        false,
                        format!("{:?} {:?}", a.err(), b.err()),
                    )],
                },
            }
        })
        .collect()
}

fn run_additivity(cfg: &VerifyConfig) -> Vec<CaseResult> {
    let o = opts(cfg);
    let trefoil = fixtures()
        .into_iter()
        .find(|f| f.name == "trefoil5")
        .expect("fixture")
        .grid;
    let figure8 = fixtures()
        .into_iter()
        .find(|f| f.name == "figure8_6")
        .expect("fixture")
        .grid;
    let mirror = trefoil.mirror();
    let cases = [
        ("trefoil # trefoil", trefoil.clone(), trefoil.clone(), 2),
        ("trefoil # mirror trefoil", trefoil.clone(), mirror, 0),
        (
            "unknot # trefoil",
            GridDiagram::unknot(),
            trefoil.clone(),
            1,
        ),
        ("unknot # figure-8", GridDiagram::unknot(), figure8, 0),
    ];
    cases
        .par_iter()
        .map(|(label, a, b, want)| {
            let run = || -> Result<Vec<Check>> {
                let sum = a.connected_sum(b)?;
                let ra = compute_grid("summand", a, &o)?;
                let rb = compute_grid("summand", b, &o)?;
                let rs = compute_grid(label, &sum, &o)?;
                let mut checks = rs.checks.clone();
                checks.push(check_additivity(&ra, &rb, &rs)?);
                checks.push(expect_tau("sum_value", &rs, *want));
                Ok(checks)
            };
            match run() {
                Ok(checks) => CaseResult {
                    case: label.to_string(),
                    checks,
                },
                Err(e) => CaseResult {
                    case: label.to_string(),
                    checks: vec![Check::new("compute", false, e.to_string())],
                },
            }
        })
        .collect()
}

fn run_quasipositive(cfg: &VerifyConfig, samples: usize) -> Vec<CaseResult> {
    let o = opts(cfg);
    let max = cfg.max_grid.min(8);
    let mut rng = rng_for(Suite::Quasipositive, cfg.seed);
    let mut words = vec![
        qp("2: (|1) (|1) (|1)"),
        qp("2: (|1) (|1)"),
        qp("2: (|1) (|1) (|1) (|1) (|1)"),
    ];
    words.extend((0..samples).map(|_| random_quasipositive(&mut rng, max)));
    words.par_iter().map(|q| qp_case(q, &o)).collect()
}

fn run_bennequin(cfg: &VerifyConfig, samples: usize) -> Vec<CaseResult> {
    let o = opts(cfg);
    let max = cfg.max_grid.min(8);
    let mut rng = rng_for(Suite::Bennequin, cfg.seed);
    let mut words = vec![braid("2: 1 1 1"), braid("3: 1 -2 1 -2"), braid("2: 1 1")];
    words.extend((0..samples).map(|_| random_braid(&mut rng, max)));
    words.par_iter().map(|w| braid_case(w, &o)).collect()
}

fn run_alternating(cfg: &VerifyConfig, samples: usize) -> Vec<CaseResult> {
    let o = ComputeOptions {
        assoc_graded: true,
        ..opts(cfg)
    };
    let max = cfg.max_grid.min(8);
    let mut rng = rng_for(Suite::Alternating, cfg.seed);
    let mut cases: Vec<CaseResult> = ["trefoil5", "figure8_6", "hopf4", "torus24_6"]
        .par_iter()
        .map(|name| {
            case_from(
                format!("fixture {name}"),
                compute(&Input::Fixture(name.to_string()), &o),
            )
        })
        .collect();
    let words: Vec<BraidWord> = (0..samples)
        .map(|_| random_alternating_braid(&mut rng, max))
        .collect();
    cases.extend(
        words
            .par_iter()
            .map(|w| braid_case(w, &o))
            .collect::<Vec<_>>(),
    );
    cases
}

fn run_oracle(cfg: &VerifyConfig, samples: usize) -> Vec<CaseResult> {
    let o = ComputeOptions {
        cross_check: true,
        ..opts(cfg)
    };
    let max = cfg.max_grid.min(7);
    let mut rng = rng_for(Suite::Oracle, cfg.seed);
    let words: Vec<BraidWord> = (0..samples).map(|_| random_braid(&mut rng, max)).collect();
    let mut cases: Vec<CaseResult> = fixtures()
        .par_iter()
        .map(|f| {
            case_from(
                format!("fixture {}", f.name),
                compute(&Input::Fixture(f.name.into()), &o),
            )
        })
        .collect();
    cases.extend(
        words
            .par_iter()
            .map(|w| braid_case(w, &o))
            .collect::<Vec<_>>(),
    );
    cases
}

/// Runs one suite, or every suite for [`Suite::All`].
pub fn run_suite(suite: Suite, cfg: &VerifyConfig) -> Vec<SuiteReport> {
    if suite == Suite::All {
        return Suite::EACH
            .iter()
            .flat_map(|&s| run_suite(s, cfg))
            .collect();
    }
    let samples = cfg.samples.unwrap_or(suite.default_samples());
    log::info!(
        "running suite {suite} with {samples} samples, seed {}",
        cfg.seed
    );
    let cases = match suite {
        Suite::Fixtures => run_fixtures(cfg),
        Suite::Moves => run_moves(cfg, samples),
        Suite::Crossing => run_crossing(cfg, samples),
        Suite::Additivity => run_additivity(cfg),
        Suite::Quasipositive => run_quasipositive(cfg, samples),
        Suite::Bennequin => run_bennequin(cfg, samples),
        Suite::Alternating => run_alternating(cfg, samples),
        Suite::Oracle => run_oracle(cfg, samples),
        Suite::All => unreachable!(),
    };
    vec![SuiteReport { suite, cases }]
}

//! τ invariants from reduced complexes, and the checks run on them.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::algebra::{bigraded_homology, filtered_reduce, tau_jump_oracle};
use crate::braid::{
    closure_components, expand_quasipositive, legendrian_tb_rot, qp_euler_characteristic,
    signature, to_grid, BraidWord, QuasipositiveWord,
};
use crate::chain::{build_filtered_complex, build_graded_complex, BuildOptions};
use crate::error::{Error, Result};
use crate::grading::HalfInt;
use crate::grid::{fixture_by_name, FixtureExpect, GridDiagram};

/// Laurent polynomial in `q` (Maslov) and `t` (Alexander, half-integer exponents).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BigradedPolynomial {
    terms: BTreeMap<(i64, HalfInt), i64>,
}

impl BigradedPolynomial {
    pub fn new() -> Self {
        Self::default()
    }

    /// One monomial per `(maslov, level)` entry.
    pub fn from_levels(levels: &BTreeMap<i64, Vec<HalfInt>>) -> Self {
        let mut p = Self::new();
        for (&m, ls) in levels {
            for &a in ls {
                p.add(m, a, 1);
            }
        }
        p
    }

    pub fn from_table(table: &BTreeMap<(i64, HalfInt), usize>) -> Self {
        let mut p = Self::new();
        for (&(m, a), &k) in table {
            p.add(m, a, k as i64);
        }
        p
    }

    pub fn add(&mut self, maslov: i64, alexander: HalfInt, coeff: i64) {
        let e = self.terms.entry((maslov, alexander)).or_insert(0);
        *e += coeff;
        if *e == 0 {
            self.terms.remove(&(maslov, alexander));
        }
    }

    pub fn coeff(&self, maslov: i64, alexander: HalfInt) -> i64 {
        self.terms.get(&(maslov, alexander)).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = ((i64, HalfInt), i64)> + '_ {
        self.terms.iter().map(|(&k, &v)| (k, v))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn total(&self) -> i64 {
        self.terms.values().sum()
    }

    /// Specialization `t = 1`: coefficients by Maslov grading.
    pub fn maslov_profile(&self) -> BTreeMap<i64, i64> {
        let mut out = BTreeMap::new();
        for (&(m, _), &c) in &self.terms {
            *out.entry(m).or_insert(0) += c;
        }
        out.retain(|_, c| *c != 0);
        out
    }

    /// Product with `(1 + q⁻¹t⁻¹)^power`.
    pub fn stabilize(&self, power: usize) -> Self {
        let mut p = self.clone();
        for _ in 0..power {
            let mut next = p.clone();
            for ((m, a), c) in p.terms() {
                next.add(m - 1, a - HalfInt::from_int(1), c);
            }
            p = next;
        }
        p
    }
}

impl fmt::Display for BigradedPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .rev()
            .map(|(&(m, a), &c)| format!("{c}·q^{m}t^{a}"))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Exact quotient by `(1 + q⁻¹t⁻¹)^power`.
pub fn divide_stabilization_factor(
    p: &BigradedPolynomial,
    power: usize,
) -> Result<BigradedPolynomial> {
    let mut q = p.clone();
    for step in 0..power {
        let mut rest = q;
        let mut quotient = BigradedPolynomial::new();
        // peel off the term with the largest Maslov grading each time
        while let Some((&(m, a), &c)) = rest.terms.iter().next_back() {
            if c < 0 {
                return Err(Error::NotDivisible(format!(
                    "negative remainder at q^{m}t^{a} in division step {}",
                    step + 1
                )));
            }
            quotient.add(m, a, c);
            rest.add(m, a, -c);
            rest.add(m - 1, a - HalfInt::from_int(1), -c);
        }
        q = quotient;
    }
    if q.terms.values().any(|&c| c < 0) {
        return Err(Error::NotDivisible(
            "negative coefficient in quotient".into(),
        ));
    }
    Ok(q)
}

/// Levels of the ℓ-component link τ-function, indexed by `k = m + (ℓ−1)/2`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TauFunction {
    components: usize,
    entries: BTreeMap<HalfInt, Vec<HalfInt>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TauEntry {
    pub k: HalfInt,
    pub levels: Vec<HalfInt>,
}

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

impl TauFunction {
    pub fn components(&self) -> usize {
        self.components
    }

    pub fn levels(&self, k: HalfInt) -> &[HalfInt] {
        self.entries.get(&k).map_or(&[], |v| v.as_slice())
    }

    /// Entries sorted by `k`, descending.
    pub fn entries(&self) -> Vec<TauEntry> {
        self.entries
            .iter()
            .rev()
            .map(|(&k, levels)| TauEntry {
                k,
                levels: levels.clone(),
            })
            .collect()
    }

    pub fn top_grading(&self) -> HalfInt {
        HalfInt::from_doubled(self.components as i64 - 1)
    }

    pub fn tau_top(&self) -> HalfInt {
        self.levels(self.top_grading())[0]
    }

    pub fn tau_bot(&self) -> HalfInt {
        self.levels(-self.top_grading())[0]
    }

    pub fn all_levels(&self) -> impl Iterator<Item = HalfInt> + '_ {
        self.entries.values().flatten().copied()
    }
}

/// Reads the τ-function off the quotient polynomial.
pub fn tau_function(q: &BigradedPolynomial, components: usize) -> Result<TauFunction> {
    let l = components as i64;
    let shift = HalfInt::from_doubled(l - 1);
    let mut entries: BTreeMap<HalfInt, Vec<HalfInt>> = BTreeMap::new();
    for ((m, a), c) in q.terms() {
        if m > 0 || m < -(l - 1) {
            return Err(Error::Inconsistent(format!(
                "quotient term q^{m}t^{a} outside the Maslov window [{}, 0]",
                -(l - 1)
            )));
        }
        let k = HalfInt::from_int(m) + shift;
        entries.entry(k).or_default().extend((0..c).map(|_| a));
    }
    for i in 0..components {
        let k = HalfInt::from_doubled(2 * i as i64 - (l - 1));
        let got = entries.get(&k).map_or(0, |v| v.len());
        let want = binomial(components - 1, i);
        if got != want {
            return Err(Error::Inconsistent(format!(
                "grading k = {k} carries {got} classes, expected {want}"
            )));
        }
    }
    for v in entries.values_mut() {
        v.sort();
    }
    Ok(TauFunction {
        components,
        entries,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Pass,
    Fail,
    Skipped,
}

/// Outcome of one named check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub status: CheckStatus,
    pub detail: String,
}

impl Check {
    pub fn new(name: &str, ok: bool, detail: impl Into<String>) -> Self {
        Check {
            name: name.to_string(),
            status: if ok {
                CheckStatus::Pass
            } else {
                CheckStatus::Fail
            },
            detail: detail.into(),
        }
    }

    pub fn skipped(name: &str, detail: impl Into<String>) -> Self {
        Check {
            name: name.to_string(),
            status: CheckStatus::Skipped,
            detail: detail.into(),
        }
    }

    pub fn passed(&self) -> bool {
        self.status != CheckStatus::Fail
    }
}

/// Everything computed for one input.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InvariantReport {
    pub input: String,
    pub grid_size: usize,
    pub components: usize,
    pub total_homology_rank: usize,
    pub tau_top: HalfInt,
    pub tau_bot: HalfInt,
    pub tau_function: Vec<TauEntry>,
    pub signature: Option<i64>,
    pub slice_genus_lower_bound: HalfInt,
    #[serde(skip)]
    pub euler_char_bound: Option<i64>,
    pub delta: Option<HalfInt>,
    pub checks: Vec<Check>,
    /// Graded homology after division, present when requested.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bigraded_homology: Option<Vec<GradedRank>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GradedRank {
    pub maslov: i64,
    pub alexander: HalfInt,
    pub rank: i64,
}

impl InvariantReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    pub fn failures(&self) -> Vec<&Check> {
        self.checks.iter().filter(|c| !c.passed()).collect()
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    /// Compares the link invariants, ignoring the input and the grid used.
    pub fn same_invariants(&self, other: &InvariantReport) -> bool {
        self.components == other.components
            && self.tau_top == other.tau_top
            && self.tau_bot == other.tau_bot
            && self.tau_function == other.tau_function
            && self.delta == other.delta
    }

    pub fn levels(&self) -> impl Iterator<Item = HalfInt> + '_ {
        self.tau_function
            .iter()
            .flat_map(|e| e.levels.iter().copied())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

pub fn check_monotonicity(r: &InvariantReport) -> Check {
    let ceiling = r.tau_bot + HalfInt::from_int(r.components as i64 - 1);
    let inside = r.levels().all(|a| r.tau_bot <= a && a <= r.tau_top);
    Check::new(
        "monotonicity",
        inside && r.tau_top <= ceiling,
        format!(
            "tau_bot = {}, tau_top = {}, ceiling = {ceiling}",
            r.tau_bot, r.tau_top
        ),
    )
}

/// `2|τ| ≤ ℓ − χ` for every level, given a surface of Euler characteristic `chi`.
pub fn check_slice_bound(r: &InvariantReport, chi: i64) -> Check {
    let bound = r.components as i64 - chi;
    let worst = r.levels().map(|a| a.doubled().abs()).max().unwrap_or(0);
    Check::new(
        "slice_bound",
        worst <= bound,
        format!("max 2|tau| = {worst}, l - chi = {bound}"),
    )
}

/// Every level at grading `k` equals `k − σ/2`.
pub fn check_alternating(r: &InvariantReport, sigma: i64) -> Check {
    let bad: Vec<String> = r
        .tau_function
        .iter()
        .flat_map(|e| e.levels.iter().map(move |&a| (e.k, a)))
        .filter(|&(k, a)| a.doubled() != k.doubled() - sigma)
        .map(|(k, a)| format!("level {a} at k = {k}"))
        .collect();
    Check::new(
        "alternating",
        bad.is_empty(),
        if bad.is_empty() {
            format!("all levels equal k - sigma/2 with sigma = {sigma}")
        } else {
            format!("sigma = {sigma}: {}", bad.join(", "))
        },
    )
}

/// `2τ_top = ℓ − (b − m)`.
pub fn check_quasipositive(r: &InvariantReport, qp: &QuasipositiveWord) -> Check {
    let chi = qp_euler_characteristic(qp);
    let want = r.components as i64 - chi;
    Check::new(
        "quasipositive",
        r.tau_top.doubled() == want,
        format!("2 tau_top = {}, l - (b - m) = {want}", r.tau_top.doubled()),
    )
}

/// `2τ_top = ℓ − χ` with χ = b − c, for positive braids using every generator.
pub fn check_sqp_fibered(r: &InvariantReport, w: &BraidWord) -> Check {
    if !(w.is_positive() && w.uses_all_generators()) {
        return Check::skipped("sqp_fibered", "not a positive braid on all generators");
    }
    let chi = w.strands() as i64 - w.len() as i64;
    let want = r.components as i64 - chi;
    Check::new(
        "sqp_fibered",
        r.tau_top.doubled() == want,
        format!("2 tau_top = {}, l - chi = {want}", r.tau_top.doubled()),
    )
}

/// `tb + rot + ℓ − 1 ≤ 2τ_top − 1`, with equality demanded when `sharp`.
pub fn check_bennequin(r: &InvariantReport, w: &BraidWord, sharp: bool) -> Check {
    let (tb, rot) = legendrian_tb_rot(w);
    let lhs = tb + rot + r.components as i64 - 1;
    let rhs = r.tau_top.doubled() - 1;
    let ok = if sharp { lhs == rhs } else { lhs <= rhs };
    Check::new(
        "bennequin",
        ok,
        format!(
            "tb + rot + l - 1 = {lhs} {} 2 tau_top - 1 = {rhs}",
            if sharp { "==" } else { "<=" }
        ),
    )
}

/// `τ(L₋) ≤ τ(L₊) ≤ τ(L₋) + 1` for τ_top and τ_bot.
pub fn check_crossing_change(minus: &InvariantReport, plus: &InvariantReport) -> Result<Check> {
    if minus.components != plus.components {
        return Err(Error::ComponentMismatch {
            left: minus.components,
            right: plus.components,
        });
    }
    let one = HalfInt::from_int(1);
    let within = |lo: HalfInt, hi: HalfInt| lo <= hi && hi <= lo + one;
    Ok(Check::new(
        "crossing_change",
        within(minus.tau_top, plus.tau_top) && within(minus.tau_bot, plus.tau_bot),
        format!(
            "tau_top {} -> {}, tau_bot {} -> {}",
            minus.tau_top, plus.tau_top, minus.tau_bot, plus.tau_bot
        ),
    ))
}

/// `τ(K₁#K₂) = τ(K₁) + τ(K₂)`.
pub fn check_additivity(
    k1: &InvariantReport,
    k2: &InvariantReport,
    sum: &InvariantReport,
) -> Result<Check> {
    for r in [k1, k2, sum] {
        if r.components != 1 {
            return Err(Error::NotAKnot {
                components: r.components,
            });
        }
    }
    let want = k1.tau_top + k2.tau_top;
    Ok(Check::new(
        "additivity",
        sum.tau_top == want,
        format!(
            "tau = {}, expected {} + {} = {want}",
            sum.tau_top, k1.tau_top, k2.tau_top
        ),
    ))
}

/// `τ_top(mirror K) = −τ_top(K)` for knots.
pub fn check_mirror_duality(k: &InvariantReport, mirror: &InvariantReport) -> Result<Check> {
    if k.components != 1 {
        return Err(Error::NotAKnot {
            components: k.components,
        });
    }
    Ok(Check::new(
        "mirror_duality",
        mirror.tau_top == -k.tau_top,
        format!("tau = {}, tau(mirror) = {}", k.tau_top, mirror.tau_top),
    ))
}

/// The constant `A − M` over the support, if there is one.
pub fn delta_grading(table: &BigradedPolynomial) -> Option<HalfInt> {
    let mut deltas = table.terms().map(|((m, a), _)| a - HalfInt::from_int(m));
    let first = deltas.next()?;
    deltas.all(|d| d == first).then_some(first)
}

/// δ-thinness with the predicted constant `(ℓ−1)/2 − σ/2`.
pub fn delta_thinness(table: &BigradedPolynomial, components: usize, sigma: i64) -> Check {
    let want = HalfInt::from_doubled(components as i64 - 1 - sigma);
    match delta_grading(table) {
        Some(d) => Check::new(
            "delta_thin",
            d == want,
            format!("delta = {d}, predicted {want}"),
        ),
        None => Check::new(
            "delta_thin",
            false,
            format!("not thin; predicted delta = {want}"),
        ),
    }
}

/// `rank(A, M) = rank(−A, M − 2A)` for knots.
pub fn check_knot_symmetry(table: &BigradedPolynomial) -> Check {
    let bad = table
        .terms()
        .filter(|&((m, a), c)| table.coeff(m - a.doubled(), -a) != c)
        .count();
    Check::new(
        "knot_symmetry",
        bad == 0,
        format!("{bad} asymmetric entries"),
    )
}

pub fn check_fixture(r: &InvariantReport, e: &FixtureExpect) -> Check {
    let ok = r.components == e.components && r.tau_top == e.tau_top && r.tau_bot == e.tau_bot;
    Check::new(
        "fixture_values",
        ok,
        format!(
            "got (l, tau_top, tau_bot) = ({}, {}, {}), expected ({}, {}, {})",
            r.components, r.tau_top, r.tau_bot, e.components, e.tau_top, e.tau_bot
        ),
    )
}

/// What the invariants are computed from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Input {
    Braid(BraidWord),
    Quasipositive(QuasipositiveWord),
    Grid(GridDiagram),
    Fixture(String),
}

impl fmt::Display for Input {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Input::Braid(w) => write!(f, "braid {w}"),
            Input::Quasipositive(q) => write!(f, "qp {q}"),
            Input::Grid(g) => write!(f, "grid X={:?} O={:?}", g.x(), g.o()),
            Input::Fixture(name) => write!(f, "fixture {name}"),
        }
    }
}

/// Largest grid on which the rank-jump cross-check is run.
pub const ORACLE_MAX_SIZE: usize = 8;

#[derive(Clone, Copy, Debug)]
pub struct ComputeOptions {
    pub max_grid: usize,
    pub check_square: bool,
    /// Recompute the levels with the rank-jump formula and compare.
    pub cross_check: bool,
    /// Also compute the associated graded homology (δ-grading, symmetry).
    pub assoc_graded: bool,
}

impl Default for ComputeOptions {
    fn default() -> Self {
        ComputeOptions {
            max_grid: crate::chain::DEFAULT_MAX_SIZE,
            check_square: true,
            cross_check: false,
            assoc_graded: false,
        }
    }
}

struct Prepared {
    grid: GridDiagram,
    braid: Option<BraidWord>,
    qp: Option<QuasipositiveWord>,
    expect: Option<FixtureExpect>,
    signature: Option<i64>,
    alternating: bool,
}

fn prepare(input: &Input) -> Result<Prepared> {
    Ok(match input {
        Input::Braid(w) => Prepared {
            grid: to_grid(w),
            braid: Some(w.clone()),
            qp: None,
            expect: None,
            signature: Some(signature(w)),
            alternating: w.is_alternating() && w.uses_all_generators(),
        },
        Input::Quasipositive(q) => {
            let w = expand_quasipositive(q)?;
            Prepared {
                grid: to_grid(&w),
                signature: Some(signature(&w)),
                alternating: w.is_alternating() && w.uses_all_generators(),
                braid: Some(w),
                qp: Some(q.clone()),
                expect: None,
            }
        }
        Input::Grid(g) => Prepared {
            grid: g.clone(),
            braid: None,
            qp: None,
            expect: None,
            signature: None,
            alternating: false,
        },
        Input::Fixture(name) => {
            let f = fixture_by_name(name)?;
            Prepared {
                grid: f.grid,
                braid: None,
                qp: None,
                signature: f.expected.signature,
                alternating: f.expected.signature.is_some(),
                expect: Some(f.expected),
            }
        }
    })
}

fn sorted_levels(mut m: BTreeMap<i64, Vec<HalfInt>>) -> BTreeMap<i64, Vec<HalfInt>> {
    for v in m.values_mut() {
        v.sort();
    }
    m
}

/// Runs the full pipeline on one input.
pub fn compute(input: &Input, opts: &ComputeOptions) -> Result<InvariantReport> {
    let p = prepare(input)?;
    compute_prepared(input.to_string(), p, opts)
}

/// Invariants of an explicit grid, labelled with `label`.
pub fn compute_grid(
    label: &str,
    grid: &GridDiagram,
    opts: &ComputeOptions,
) -> Result<InvariantReport> {
    let p = prepare(&Input::Grid(grid.clone()))?;
    compute_prepared(label.to_string(), p, opts)
}

fn compute_prepared(label: String, p: Prepared, opts: &ComputeOptions) -> Result<InvariantReport> {
    let n = p.grid.size();
    let build = BuildOptions {
        max_size: opts.max_grid,
        check_square: opts.check_square,
    };
    let complex = build_filtered_complex(&p.grid, &build)?;
    let components = complex.components();
    log::debug!(
        "{label}: {} generators, {} arrows",
        complex.len(),
        complex.arrow_count()
    );
    let mut checks = Vec::new();
    if opts.check_square {
        checks.push(Check::new(
            "square_zero",
            complex.is_verified(),
            "boundary squares to zero",
        ));
    }

    let reduced = filtered_reduce(&complex)?;
    let total = reduced.len();
    let want_total = 1usize << (n - 1);
    if total != want_total {
        return Err(Error::Inconsistent(format!(
            "total homology rank {total}, expected {want_total}"
        )));
    }
    checks.push(Check::new(
        "total_rank",
        true,
        format!("rank {total} = 2^{}", n - 1),
    ));

    let levels = sorted_levels(reduced.levels_by_maslov());
    let poly = BigradedPolynomial::from_levels(&levels);
    let profile_ok = (0..n).all(|i| {
        poly.maslov_profile()
            .get(&-(i as i64))
            .copied()
            .unwrap_or(0)
            == binomial(n - 1, i) as i64
    }) && poly.maslov_profile().len() == n;
    if !profile_ok {
        return Err(Error::Inconsistent(format!(
            "Maslov profile {:?} is not binomial",
            poly.maslov_profile()
        )));
    }
    checks.push(Check::new(
        "maslov_profile",
        true,
        "coefficients are binomial(n-1, -m)",
    ));

    if opts.cross_check && n > ORACLE_MAX_SIZE {
        checks.push(Check::skipped(
            "oracle",
            format!("grid larger than {ORACLE_MAX_SIZE}"),
        ));
    } else if opts.cross_check {
        let oracle = sorted_levels(tau_jump_oracle(&complex));
        checks.push(Check::new(
            "oracle",
            oracle == levels,
            if oracle == levels {
                "rank-jump levels agree".to_string()
            } else {
                format!("oracle {oracle:?}")
            },
        ));
    }

    let quotient = divide_stabilization_factor(&poly, n - components)?;
    let tf = tau_function(&quotient, components)?;
    checks.push(Check::new(
        "divisibility",
        true,
        format!("divided by W^{}", n - components),
    ));

    let tau_top = tf.tau_top();
    let tau_bot = tf.tau_bot();
    let mut report = InvariantReport {
        input: label,
        grid_size: n,
        components,
        total_homology_rank: total,
        tau_top,
        tau_bot,
        tau_function: tf.entries(),
        signature: p.signature,
        slice_genus_lower_bound: tau_top.abs().max(tau_bot.abs()),
        euler_char_bound: None,
        delta: None,
        checks: Vec::new(),
        bigraded_homology: None,
    };

    checks.push(check_monotonicity(&report));

    if let Some(w) = &p.braid {
        let chi = w.strands() as i64 - w.len() as i64;
        let qp_chi = p.qp.as_ref().map(qp_euler_characteristic);
        let best = qp_chi.map_or(chi, |q| q.max(chi));
        report.euler_char_bound = Some(best);
        checks.push(check_slice_bound(&report, best));
        if closure_components(w) != components {
            return Err(Error::Inconsistent(format!(
                "grid has {components} components, braid closure has {}",
                closure_components(w)
            )));
        }
        let sharp = p.qp.is_some() || w.is_positive();
        checks.push(check_bennequin(&report, w, sharp));
        checks.push(check_sqp_fibered(&report, w));
    }
    if let Some(q) = &p.qp {
        checks.push(check_quasipositive(&report, q));
    }
    if let (true, Some(sigma)) = (p.alternating, p.signature) {
        checks.push(check_alternating(&report, sigma));
    }
    if let Some(e) = &p.expect {
        checks.push(check_fixture(&report, e));
    }

    if opts.assoc_graded {
        let graded = build_graded_complex(&p.grid, &build)?;
        let table = BigradedPolynomial::from_table(&bigraded_homology(&graded)?);
        let hat = divide_stabilization_factor(&table, n - components)?;
        report.delta = delta_grading(&hat);
        report.bigraded_homology = Some(
            hat.terms()
                .rev()
                .map(|((maslov, alexander), rank)| GradedRank {
                    maslov,
                    alexander,
                    rank,
                })
                .collect(),
        );
        if let (true, Some(sigma)) = (p.alternating, p.signature) {
            checks.push(delta_thinness(&hat, components, sigma));
        }
        if components == 1 {
            checks.push(check_knot_symmetry(&hat));
        }
    }

    report.checks = checks;
    Ok(report)
}

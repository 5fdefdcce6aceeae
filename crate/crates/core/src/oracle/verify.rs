//! Named verification suites with structured reports.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rand::SeedableRng;
use serde::Serialize;

use crate::context::Context;
use crate::element::Element;
use crate::error::{Error, Result};
use crate::oracle::{digits, mex, tower};
use crate::sample;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    TowerEquivalence,
    MexBounds,
    Conjecture,
    AdditionOracle,
    Axioms,
}

impl Suite {
    pub const ALL: [Suite; 5] = [
        Suite::TowerEquivalence,
        Suite::MexBounds,
        Suite::Conjecture,
        Suite::AdditionOracle,
        Suite::Axioms,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::TowerEquivalence => "tower-equivalence",
            Suite::MexBounds => "mex-bounds",
            Suite::Conjecture => "conjecture",
            Suite::AdditionOracle => "addition-oracle",
            Suite::Axioms => "axioms",
        }
    }

    /// Whether a failure of this suite counts as a verification failure.
    pub fn gating(self) -> bool {
        self != Suite::Conjecture
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown suite {s:?}")))
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VerifyOptions {
    /// Suite-specific size bound; `None` picks the suite default.
    pub cap: Option<u64>,
    /// Number of random samples for the sampled suites.
    pub samples: u64,
    pub seed: u64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            cap: None,
            samples: 1000,
            seed: 0x5eed,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub p: u32,
    pub gating: bool,
    pub passed: bool,
    pub checks: u64,
    /// At most [`MAX_LISTED_FAILURES`] descriptions.
    pub failures: Vec<String>,
    pub stats: BTreeMap<String, String>,
}

pub const MAX_LISTED_FAILURES: usize = 20;

impl SuiteReport {
    fn new(suite: Suite, p: u32) -> Self {
        SuiteReport {
            suite,
            p,
            gating: suite.gating(),
            passed: true,
            checks: 0,
            failures: Vec::new(),
            stats: BTreeMap::new(),
        }
    }

    fn check(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.passed = false;
            if self.failures.len() < MAX_LISTED_FAILURES {
                self.failures.push(describe());
            }
        }
    }

    fn stat(&mut self, key: &str, value: impl ToString) {
        self.stats.insert(key.into(), value.to_string());
    }

    /// Exit status contribution: a non-gating suite never fails.
    pub fn ok(&self) -> bool {
        self.passed || !self.gating
    }

    pub fn render_text(&self) -> String {
        let verdict = match (self.passed, self.gating) {
            (true, _) => "PASS",
            (false, true) => "FAIL",
            (false, false) => "REPORT",
        };
        let mut out = format!("{} (p = {}): {verdict}, {} checks\n", self.suite, self.p, self.checks);
        for (k, v) in &self.stats {
            out.push_str(&format!("  {k}: {v}\n"));
        }
        for f in &self.failures {
            out.push_str(&format!("  failure: {f}\n"));
        }
        out
    }
}

pub fn run(suite: Suite, ctx: &Context, opts: &VerifyOptions) -> Result<SuiteReport> {
    match suite {
        Suite::TowerEquivalence => tower_equivalence(ctx, opts),
        Suite::MexBounds => mex_bounds(ctx, opts),
        Suite::Conjecture => conjecture(ctx, opts),
        Suite::AdditionOracle => addition_oracle(ctx, opts),
        Suite::Axioms => axioms(ctx, opts),
    }
}

/// Default comparison size: `p^4` for `p <= 3`, `p^2` otherwise.
pub fn default_tower_size(p: u32) -> u64 {
    if p <= 3 {
        (p as u64).pow(4)
    } else {
        (p as u64).pow(2)
    }
}

fn tower_equivalence(ctx: &Context, opts: &VerifyOptions) -> Result<SuiteReport> {
    let p = ctx.p();
    let size = opts.cap.unwrap_or_else(|| default_tower_size(p));
    let field = tower::build_tower(p, size as usize)?;
    let mut report = SuiteReport::new(Suite::TowerEquivalence, p);
    report.stat("size", size);
    let steps: Vec<String> = field.history().iter().map(|e| format!("x^{} = {:?}", e.n, e.h)).collect();
    report.stat("extensions", steps.join("; "));
    if size <= 81 {
        let axioms = field.check_axioms();
        report.check(axioms.is_ok(), || format!("tower table: {}", axioms.clone().unwrap_err()));
    }
    let elems: Vec<Element> = (0..size).map(|n| ctx.natural(n)).collect();
    let value = |e: &Element| ctx.element_to_ordinal(e).as_natural();
    for a in 0..size {
        for b in 0..size {
            let (x, y) = (&elems[a as usize], &elems[b as usize]);
            let want_mul = field.mul(a as u32, b as u32) as u64;
            let got_mul = value(&ctx.mul(x, y)?);
            report.check(got_mul == Some(want_mul.into()), || {
                format!("{a}*{b}: engine {got_mul:?}, tower {want_mul}")
            });
            let want_add = field.add(a as u32, b as u32) as u64;
            let got_add = value(&ctx.add(x, y));
            report.check(got_add == Some(want_add.into()), || {
                format!("{a}+{b}: engine {got_add:?}, tower {want_add}")
            });
        }
    }
    Ok(report)
}

fn mex_bounds(ctx: &Context, opts: &VerifyOptions) -> Result<SuiteReport> {
    let cap = opts.cap.unwrap_or(16);
    let lb = mex::check_lower_bounds(cap, ctx)?;
    let mut report = SuiteReport::new(Suite::MexBounds, ctx.p());
    report.checks = 2 * lb.pairs;
    for &(a, b) in &lb.add_violations {
        report.check(false, || format!("{a}+{b} is below its mex"));
    }
    for &(a, b) in &lb.mul_violations {
        report.check(false, || format!("{a}*{b} is below its mex"));
    }
    report.stat("cap", cap);
    report.stat("pairs", lb.pairs);
    report.stat("add equalities", lb.add_equalities);
    report.stat("mul equalities (MEX property)", lb.mul_equalities);
    report.stat("pairs without MEX property", lb.pairs - lb.mul_equalities);
    Ok(report)
}

fn conjecture(ctx: &Context, opts: &VerifyOptions) -> Result<SuiteReport> {
    let cap = opts.cap.unwrap_or(81);
    let pairs = mex::group_pairs(cap, ctx)?;
    let mut report = SuiteReport::new(Suite::Conjecture, ctx.p());
    report.stat("cap", cap);
    report.stat("group pairs", pairs.len());
    for r in &pairs {
        report.check(r.mex_property, || {
            format!("{{{}, {}}}: product {} but mex {}", r.a, r.b, r.product, r.mex)
        });
    }
    report.stat("counterexamples", report.checks as usize - pairs.iter().filter(|r| r.mex_property).count());
    Ok(report)
}

fn addition_oracle(ctx: &Context, opts: &VerifyOptions) -> Result<SuiteReport> {
    let p = ctx.p();
    let mut rng = rand::rngs::StdRng::seed_from_u64(opts.seed);
    let mut report = SuiteReport::new(Suite::AdditionOracle, p);
    let samples = opts.cap.unwrap_or(10_000);
    for _ in 0..samples {
        let a = sample::random_ordinal_below_omega_omega(&mut rng, p, 8);
        let b = sample::random_ordinal_below_omega_omega(&mut rng, p, 8);
        let engine = ctx.element_to_ordinal(&ctx.add(&ctx.ordinal_to_element(&a), &ctx.ordinal_to_element(&b)));
        let oracle = digits::add_no_carry(&a, &b, p);
        report.check(engine == oracle, || format!("{a} + {b}: engine {engine}, oracle {oracle}"));
    }
    report.stat("samples", samples);
    Ok(report)
}

fn axioms(ctx: &Context, opts: &VerifyOptions) -> Result<SuiteReport> {
    let p = ctx.p();
    let mut rng = rand::rngs::StdRng::seed_from_u64(opts.seed);
    let mut report = SuiteReport::new(Suite::Axioms, p);
    let pools = [sample::power_of_two_generators(3), sample::mixed_generators()];
    for gens in &pools {
        for _ in 0..opts.samples {
            let a = sample::random_element(&mut rng, p, gens, 4);
            let b = sample::random_element(&mut rng, p, gens, 4);
            let c = sample::random_element(&mut rng, p, gens, 4);
            let failures = check_triple(ctx, &a, &b, &c)?;
            for what in failures {
                report.check(false, || format!("{what} fails for ({a}, {b}, {c})"));
            }
            report.checks += 1;
        }
    }
    report.stat("triples", 2 * opts.samples);
    Ok(report)
}

/// Names of the field axioms violated by the triple.
pub fn check_triple(ctx: &Context, a: &Element, b: &Element, c: &Element) -> Result<Vec<&'static str>> {
    let mut bad = Vec::new();
    let ab = ctx.mul(a, b)?;
    if ctx.add(&ctx.add(a, b), c) != ctx.add(a, &ctx.add(b, c)) {
        bad.push("additive associativity");
    }
    if ctx.add(a, b) != ctx.add(b, a) {
        bad.push("additive commutativity");
    }
    if ctx.mul(&ab, c)? != ctx.mul(a, &ctx.mul(b, c)?)? {
        bad.push("multiplicative associativity");
    }
    if ab != ctx.mul(b, a)? {
        bad.push("multiplicative commutativity");
    }
    if ctx.mul(a, &ctx.add(b, c))? != ctx.add(&ab, &ctx.mul(a, c)?) {
        bad.push("distributivity");
    }
    if ctx.add(a, &Element::zero()) != *a || ctx.mul(a, &Element::one())? != *a {
        bad.push("identities");
    }
    if !ctx.add(a, &ctx.negate(a)).is_zero() {
        bad.push("additive inverse");
    }
    if !a.is_zero() {
        if !ctx.mul(a, &ctx.inverse(a)?)?.is_one() {
            bad.push("multiplicative inverse");
        }
        if !b.is_zero() && ab.is_zero() {
            bad.push("no zero divisors");
        }
    }
    Ok(bad)
}

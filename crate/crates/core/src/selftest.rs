//! The self-test corpus: every identity the engine is expected to satisfy,
//! each reported as a named check with counts.
//!
//! The rendered report depends only on the configuration, never on the worker
//! count, so runs with different `jobs` are byte-identical.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::compactrep::{
    dimension, inner_product, labels_up_to, weight_multiplicity, weyl_dimension_formula, CompactGroup, Family,
    IrrepLabel,
};
use crate::corpus;
use crate::error::{Error, Result};
use crate::exactalg::{is_nonneg_integer, rint, AbsProduct, LaurentPoly, Rat};
use crate::exec::par_map;
use crate::finitemult::{m_geom_average, m_geom_classes, CRat, ClassData, FiniteGroupData};
use crate::geommult::{enumerate_support, geom_multiplicity, geom_multiplicity_complex, so_from_o, GeomIntegrands};
use crate::glstd::{integrand_term, phi, x_m_classes, Block, GL2Block, StandardModule, Variant, VirtualRep};
use crate::oracle::{self, Split};

pub const REPORT_VERSION: u32 = 1;
const KEEP_FAILURES: usize = 3;

#[derive(Clone, Debug)]
pub struct SelftestConfig {
    pub max_n: usize,
    pub jobs: usize,
    pub finite_trials: usize,
    pub seed: u64,
}

impl Default for SelftestConfig {
    fn default() -> Self {
        SelftestConfig { max_n: 5, jobs: crate::exec::default_jobs(), finite_trials: 1000, seed: 0x6b74_7970 }
    }
}

/// One named invariant: how many instances were checked and which failed.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub checked: u64,
    pub failed: u64,
    pub examples: Vec<String>,
}

impl Check {
    pub fn new(name: impl Into<String>) -> Self {
        Check { name: name.into(), ..Default::default() }
    }

    pub fn record(&mut self, ok: bool, msg: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.fail(msg());
        }
    }

    fn fail(&mut self, msg: String) {
        self.failed += 1;
        if self.examples.len() < KEEP_FAILURES {
            self.examples.push(msg);
        }
    }

    fn error(&mut self, e: Error) {
        self.checked += 1;
        self.fail(e.to_string());
    }

    fn absorb(&mut self, other: Check) {
        self.checked += other.checked;
        self.failed += other.failed;
        for m in other.examples {
            if self.examples.len() < KEEP_FAILURES {
                self.examples.push(m);
            }
        }
    }

    pub fn passed(&self) -> bool {
        self.failed == 0 && self.checked > 0
    }
}

#[derive(Clone, Debug)]
pub struct Report {
    pub config: SelftestConfig,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn render(&self) -> String {
        let mut s = String::new();
        let c = &self.config;
        let _ = writeln!(s, "# ktype-mult selftest v{REPORT_VERSION}");
        let _ = writeln!(s, "# max_n={} finite_trials={} seed={}", c.max_n, c.finite_trials, c.seed);
        for ch in &self.checks {
            let verdict = if ch.passed() { "PASS" } else { "FAIL" };
            let _ = writeln!(s, "{:<28} checked={:<7} failed={:<5} {verdict}", ch.name, ch.checked, ch.failed);
            for m in &ch.examples {
                let _ = writeln!(s, "    ! {m}");
            }
        }
        let good = self.checks.iter().filter(|c| c.passed()).count();
        let verdict = if self.passed() { "PASS" } else { "FAIL" };
        let _ = writeln!(s, "result: {verdict} ({good}/{})", self.checks.len());
        s
    }
}

pub fn run(cfg: &SelftestConfig) -> Report {
    let mut checks = vec![check_gl2(cfg.jobs), check_gl2_displayed_values()];
    for n in 3..=cfg.max_n {
        let (theorem, integral) = check_o_theorem(n, cfg.jobs);
        checks.push(theorem);
        checks.push(integral);
    }
    for n in 2..=cfg.max_n {
        checks.push(check_so_via_o(n, cfg.jobs));
    }
    checks.push(check_complex());
    checks.push(check_finite_random(cfg.finite_trials, cfg.seed));
    checks.push(check_finite_fixtures());
    checks.push(check_orthogonality());
    checks.push(check_dimensions());
    checks.push(check_stages(4.min(cfg.max_n).max(2)));
    checks.push(check_elliptic_vanishing(cfg.max_n));
    checks.push(check_residual(cfg.max_n, cfg.jobs));
    checks.push(check_split_associativity(cfg.max_n, cfg.jobs));
    Report { config: cfg.clone(), checks }
}

fn geom_vs_oracle(pi: &VirtualRep, labels: &[IrrepLabel], variant: Variant, tag: &str) -> (Check, Check) {
    let mut eq = Check::new(tag);
    let mut integral = Check::new(tag);
    let g = match GeomIntegrands::new(pi, variant) {
        Ok(g) => g,
        Err(e) => {
            eq.error(e);
            return (eq, integral);
        }
    };
    for l in labels {
        let geom = g.evaluate(l);
        let orac = match variant {
            Variant::O => oracle::multiplicity(pi, l),
            Variant::SO => oracle::multiplicity_so(pi, l),
        };
        match (geom, orac) {
            (Ok(geom), Ok(m)) => {
                eq.record(geom.value == rint(m), || format!("{} at {l}: geom {} oracle {m}", show(pi), geom.value));
                if pi.is_genuine() {
                    integral
                        .record(is_nonneg_integer(&geom.value), || format!("{} at {l}: geom {}", show(pi), geom.value));
                }
            }
            (Err(e), _) | (_, Err(e)) => eq.error(e),
        }
    }
    (eq, integral)
}

fn show(pi: &VirtualRep) -> String {
    pi.terms
        .iter()
        .map(|t| if t.coeff == 1 { t.module.to_string() } else { format!("{}*{}", t.coeff, t.module) })
        .collect::<Vec<_>>()
        .join(" + ")
}

fn fold(name: &str, parts: Vec<(Check, Check)>) -> (Check, Check) {
    let mut a = Check::new(name);
    let mut b = Check::new(format!("{name}_integrality"));
    for (x, y) in parts {
        a.absorb(x);
        b.absorb(y);
    }
    (a, b)
}

/// The `GL_2` corpus: four principal series, `F(a,b)` with `a-b ≤ 3`, their
/// discrete series, all `O(2)`-types of weight `≤ 4`.
pub fn gl2_reps() -> Vec<VirtualRep> {
    let fds = corpus::fd_blocks(3, -1..=1);
    let mut blocks = corpus::principal_blocks();
    blocks.extend(fds.iter().cloned());
    blocks.extend(corpus::discrete_blocks(&fds));
    blocks.into_iter().map(|b| StandardModule::from_blocks(vec![b]).expect("one block").into()).collect()
}

pub fn check_gl2(jobs: usize) -> Check {
    let labels = corpus::o_types(2, 4);
    let parts = par_map(&gl2_reps(), jobs, |pi| geom_vs_oracle(pi, &labels, Variant::O, "gl2"));
    fold("gl2_closed_form", parts).0
}

/// The induced-case values over `J(2)`, term by term.
pub fn check_gl2_displayed_values() -> Check {
    let mut c = Check::new("gl2_induced_terms");
    let triv = IrrepLabel::trivial(CompactGroup::o(2));
    let cases: [((u8, u8), [&str; 4], i64); 4] = [
        ((0, 0), ["1/4", "1/2", "1/4", "0"], 1),
        ((1, 0), ["1/4", "0", "-1/4", "0"], 0),
        ((0, 1), ["1/4", "0", "-1/4", "0"], 0),
        ((1, 1), ["1/4", "-1/2", "1/4", "0"], 0),
    ];
    for ((e1, e2), terms, want) in cases {
        let pi: VirtualRep = StandardModule::from_blocks(vec![Block::ps(e1, e2)]).expect("one block").into();
        match geom_multiplicity(&pi, &triv, Variant::O) {
            Ok(r) => {
                let got: Vec<&str> = r.per_term.iter().map(|(_, v)| v.as_str()).collect();
                c.record(got == terms && r.value == rint(want), || {
                    format!("P({e1},{e2}): terms {got:?}, value {}", r.value)
                });
            }
            Err(e) => c.error(e),
        }
    }
    c
}

pub fn check_o_theorem(n: usize, jobs: usize) -> (Check, Check) {
    let labels = corpus::o_types(n, 3);
    let mods = corpus::main_modules(n);
    let parts = par_map(&mods, jobs, |m| geom_vs_oracle(&m.clone().into(), &labels, Variant::O, "o"));
    fold(&format!("o_theorem_n{n}"), parts)
}

/// Direct SO-variant value, the oracle, and the value assembled from O-types.
pub fn check_so_via_o(n: usize, jobs: usize) -> Check {
    let labels = corpus::so_types(n, 3);
    let mods = if n == 2 {
        gl2_reps().into_iter().map(|v| v.terms[0].module.clone()).collect()
    } else {
        corpus::main_modules(n)
    };
    let parts = par_map(&mods, jobs, |m| {
        let pi: VirtualRep = m.clone().into();
        let mut c = Check::new("so");
        let (gs, go) = match (GeomIntegrands::new(&pi, Variant::SO), GeomIntegrands::new(&pi, Variant::O)) {
            (Ok(a), Ok(b)) => (a, b),
            (Err(e), _) | (_, Err(e)) => {
                c.error(e);
                return c;
            }
        };
        for l in &labels {
            match (gs.evaluate(l), so_from_o(&go, l), oracle::multiplicity_so(&pi, l)) {
                (Ok(direct), Ok(via_o), Ok(m)) => c.record(direct.value == via_o && via_o == rint(m), || {
                    format!("{m_} at {l}: SO {} via O {via_o} oracle {m}", direct.value, m_ = show(&pi))
                }),
                (Err(e), _, _) | (_, Err(e), _) | (_, _, Err(e)) => c.error(e),
            }
        }
        c
    });
    let mut c = Check::new(format!("so_via_o_n{n}"));
    parts.into_iter().for_each(|p| c.absorb(p));
    c
}

pub fn check_complex() -> Check {
    let mut c = Check::new("complex_weights");
    let su2 = CompactGroup::su2();
    for m in 0..=12 {
        let omega = IrrepLabel::su2(m).expect("m ≥ 0");
        for tau in -6..=6 {
            compare_complex(&mut c, su2, &[tau], &omega);
        }
    }
    let u2 = CompactGroup::u(2);
    for l2 in -6..=6 {
        for d in 0..=6 {
            let omega = IrrepLabel::u(&[l2 + d, l2]).expect("dominant");
            for t1 in -3..=3 {
                for t2 in -3..=3 {
                    compare_complex(&mut c, u2, &[t1, t2], &omega);
                }
            }
        }
    }
    c
}

fn compare_complex(c: &mut Check, h: CompactGroup, tau: &[i32], omega: &IrrepLabel) {
    match (geom_multiplicity_complex(h, tau, omega), weight_multiplicity(omega, tau)) {
        (Ok(g), Ok(w)) => c.record(g == rint(w), || format!("{omega} weight {tau:?}: geom {g} weights {w}")),
        (Err(e), _) | (_, Err(e)) => c.error(e),
    }
}

fn random_crat(rng: &mut ChaCha8Rng) -> CRat {
    let part = |rng: &mut ChaCha8Rng| Rat::new(rng.random_range(-6i64..=6).into(), rng.random_range(1i64..=4).into());
    let re = part(rng);
    CRat::new(re, part(rng))
}

/// Valid class data with random character values: class sizes are divisors of
/// `|H|` summing to `|H|`, the first being the identity class.
pub fn random_class_data(rng: &mut ChaCha8Rng) -> FiniteGroupData {
    let order = rng.random_range(1u64..=60);
    let divisors: Vec<u64> = (1..=order).filter(|d| order % d == 0).collect();
    let mut sizes = vec![1u64];
    let mut left = order - 1;
    while left > 0 {
        let fits: Vec<u64> = divisors.iter().copied().filter(|d| *d <= left && *d < order).collect();
        let s = fits[rng.random_range(0..fits.len())];
        sizes.push(s);
        left -= s;
    }
    let classes = sizes
        .into_iter()
        .map(|size| ClassData { size, centralizer: order / size, theta: random_crat(rng), chi: random_crat(rng) })
        .collect();
    FiniteGroupData { order_h: order, classes }
}

pub fn check_finite_random(trials: usize, seed: u64) -> Check {
    let mut c = Check::new("finite_two_forms");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for i in 0..trials {
        let d = random_class_data(&mut rng);
        match (m_geom_average(&d), m_geom_classes(&d)) {
            (Ok(a), Ok(b)) => c.record(a == b, || format!("trial {i}: {a} vs {b}")),
            (Err(e), _) | (_, Err(e)) => c.error(e),
        }
    }
    c
}

fn real_classes(order: u64, sizes: &[u64], theta: &[i64], chi: &[i64]) -> FiniteGroupData {
    FiniteGroupData {
        order_h: order,
        classes: sizes
            .iter()
            .zip(theta.iter().zip(chi))
            .map(|(s, (t, x))| ClassData {
                size: *s,
                centralizer: order / s,
                theta: CRat::real(rint(*t)),
                chi: CRat::real(rint(*x)),
            })
            .collect(),
    }
}

/// Restrictions `S_3 → S_2` and `D_4 → {e, r², s, r²s}` with hand-decomposed
/// multiplicities.
pub fn finite_fixtures() -> Vec<(&'static str, FiniteGroupData, i64)> {
    let s2 = |t: [i64; 2], x: [i64; 2]| real_classes(2, &[1, 1], &t, &x);
    let v4 = |t: [i64; 4], x: [i64; 4]| real_classes(4, &[1, 1, 1, 1], &t, &x);
    vec![
        ("S3 triv / S2 triv", s2([1, 1], [1, 1]), 1),
        ("S3 sgn / S2 triv", s2([1, -1], [1, 1]), 0),
        ("S3 sgn / S2 sgn", s2([1, -1], [1, -1]), 1),
        ("S3 std / S2 triv", s2([2, 0], [1, 1]), 1),
        ("S3 std / S2 sgn", s2([2, 0], [1, -1]), 1),
        ("D4 std / V triv", v4([2, -2, 0, 0], [1, 1, 1, 1]), 0),
        ("D4 std / V (-,+)", v4([2, -2, 0, 0], [1, -1, 1, -1]), 1),
        ("D4 std / V (-,-)", v4([2, -2, 0, 0], [1, -1, -1, 1]), 1),
        ("D4 (s->-1) / V (+,-)", v4([1, 1, -1, -1], [1, 1, -1, -1]), 1),
        ("D4 (r->-1) / V triv", v4([1, 1, 1, 1], [1, 1, 1, 1]), 1),
    ]
}

pub fn check_finite_fixtures() -> Check {
    let mut c = Check::new("finite_fixtures");
    for (name, d, want) in finite_fixtures() {
        match (m_geom_average(&d), m_geom_classes(&d)) {
            (Ok(a), Ok(b)) => {
                c.record(a == b && a == CRat::real(rint(want)), || format!("{name}: {a} / {b}, expected {want}"))
            }
            (Err(e), _) | (_, Err(e)) => c.error(e),
        }
    }
    c
}

fn small_labels(g: CompactGroup) -> Vec<IrrepLabel> {
    labels_up_to(g, 3)
        .into_iter()
        .filter(|l| g.family == Family::SU || l.lambda.iter().map(|v| v.abs()).sum::<i32>() <= 3)
        .collect()
}

fn orthogonality_groups() -> Vec<CompactGroup> {
    vec![
        CompactGroup::so(2),
        CompactGroup::so(3),
        CompactGroup::so(4),
        CompactGroup::so(5),
        CompactGroup::su2(),
        CompactGroup::u(2),
    ]
}

pub fn check_orthogonality() -> Check {
    let mut c = Check::new("character_orthogonality");
    for g in orthogonality_groups() {
        let labels = small_labels(g);
        for a in &labels {
            for b in &labels {
                match inner_product(a, b) {
                    Ok(v) => c.record(v == rint((a == b) as i64), || format!("<{a}, {b}> = {v}")),
                    Err(e) => c.error(e),
                }
            }
        }
    }
    c
}

pub fn check_dimensions() -> Check {
    let mut c = Check::new("dimension_formula");
    for g in orthogonality_groups() {
        for l in labels_up_to(g, 4) {
            match dimension(&l) {
                Ok(d) => {
                    let want = weyl_dimension_formula(g, &l.lambda);
                    c.record(rint(d as i64) == want, || format!("{l}: character {d}, product {want}"));
                }
                Err(e) => c.error(e),
            }
        }
    }
    c
}

fn refine(pi: &StandardModule) -> Option<StandardModule> {
    let mut out = Vec::new();
    let mut changed = false;
    for b in &pi.blocks {
        match b {
            Block::GL2(GL2Block::Principal(c1, c2)) => {
                out.push(Block::GL1(c1.clone()));
                out.push(Block::GL1(c2.clone()));
                changed = true;
            }
            other => out.push(other.clone()),
        }
    }
    changed.then(|| StandardModule::new(pi.n, out).expect("same size"))
}

fn normalized_phi(pi: &StandardModule, x: &crate::glstd::SupportElement) -> Result<BTreeMap<AbsProduct, LaurentPoly>> {
    let mut out: BTreeMap<AbsProduct, LaurentPoly> = BTreeMap::new();
    for (abs, p) in phi(pi, x)? {
        let e = out.entry(abs).or_insert_with(|| LaurentPoly::zero(x.k));
        *e += &p;
    }
    out.retain(|_, p| !p.is_zero());
    Ok(out)
}

fn all_support(n: usize) -> Vec<crate::glstd::SupportElement> {
    let mut xs = enumerate_support(n, Variant::SO);
    xs.extend(enumerate_support(n, Variant::O));
    xs
}

/// `Φ` of a module with principal-series blocks equals `Φ` of the module with
/// each of them split into two `GL_1` blocks, at every support point.
pub fn check_stages(n: usize) -> Check {
    let mut c = Check::new(format!("induction_in_stages_n{n}"));
    let mut mods = corpus::main_modules(n);
    mods.extend(corpus::modules(n, &corpus::gl1_blocks(), &corpus::discrete_blocks(&corpus::fd_blocks(2, 0..=1))));
    for pi in mods {
        let Some(fine) = refine(&pi) else { continue };
        for x in all_support(n) {
            match (normalized_phi(&pi, &x), normalized_phi(&fine, &x)) {
                (Ok(a), Ok(b)) => c.record(a == b, || format!("{pi} vs {fine} at {x}")),
                (Err(e), _) | (_, Err(e)) => c.error(e),
            }
        }
    }
    c
}

/// `Φ` vanishes wherever no `M`-class meets the support point, and a module
/// with no finite-dimensional or discrete block vanishes at every point with
/// a rotation.
pub fn check_elliptic_vanishing(max_n: usize) -> Check {
    let mut c = Check::new("elliptic_vanishing");
    for n in 1..=max_n {
        for pi in corpus::main_modules(n) {
            let split = pi.blocks.iter().all(|b| matches!(b, Block::GL1(_) | Block::GL2(GL2Block::Principal(..))));
            for x in all_support(n) {
                if !(x_m_classes(&x, &pi.shape()).is_empty() || (split && x.k > 0)) {
                    continue;
                }
                match normalized_phi(&pi, &x) {
                    Ok(p) => c.record(p.is_empty(), || format!("{pi} at {x}")),
                    Err(e) => c.error(e),
                }
            }
        }
    }
    c
}

/// Every integrand over the corpus cancels its absolute values completely.
pub fn check_residual(max_n: usize, jobs: usize) -> Check {
    let mut mods = Vec::new();
    let ds = corpus::discrete_blocks(&corpus::fd_blocks(2, 0..=1));
    for n in 1..=max_n {
        mods.extend(corpus::main_modules(n));
        if n <= 4 {
            mods.extend(corpus::modules(n, &corpus::gl1_blocks(), &ds));
        }
    }
    let parts = par_map(&mods, jobs, |pi| {
        let mut c = Check::new("residual");
        for x in all_support(pi.n) {
            match integrand_term(pi, &x) {
                Ok(_) => c.record(true, String::new),
                Err(e) => c.error(e),
            }
        }
        c
    });
    let mut c = Check::new("no_residual_abs_factor");
    parts.into_iter().for_each(|p| c.absorb(p));
    c
}

/// The oracle recursion cut after the first block agrees with the cut before
/// the last one.
pub fn check_split_associativity(max_n: usize, jobs: usize) -> Check {
    let mut c = Check::new("oracle_split_independence");
    for n in 3..=max_n {
        let labels = corpus::o_types(n, 3);
        let mods: Vec<StandardModule> = corpus::main_modules(n).into_iter().filter(|m| m.blocks.len() >= 3).collect();
        let parts = par_map(&mods, jobs, |pi| {
            let mut c = Check::new("split");
            for l in &labels {
                match (
                    oracle::multiplicity_module(pi, l, Split::First),
                    oracle::multiplicity_module(pi, l, Split::Last),
                ) {
                    (Ok(a), Ok(b)) => c.record(a == b, || format!("{pi} at {l}: {a} vs {b}")),
                    (Err(e), _) | (_, Err(e)) => c.error(e),
                }
            }
            c
        });
        parts.into_iter().for_each(|p| c.absorb(p));
    }
    c
}

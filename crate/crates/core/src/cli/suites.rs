//! Property suites behind `verify`.
//!
//! A failure's `input` holds `{"config": <config file JSON>, ...}` plus the
//! parameters (swap set, permutation, map) that reproduce it.

use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use rayon::prelude::*;
use serde_json::{json, Map, Value};

use crate::cremona::{
    apply_word, geometric_swap, std_cremona_eval, std_cremona_form_image, swap_word, CremonaToken, SwapSet,
    TernaryForm,
};
use crate::dm::{
    ball_dimension, descendants, fingerprint, moduli_equal, stability, P1Config, Stability, WeightVector,
};
use crate::field::FieldDescriptor;
use crate::geom::{collinear, Conic, Map2, Map3, Point1, Point2};
use crate::phi::{
    classify, collinear_to_conic, fiber_orbit, moduli_equal_plane, phi67, P1Output, PlaneConfig, StratumClass,
};

use super::boundary::{boundary_divisors, DivisorLabel};
use super::config::{config_to_json, plane_points_to_json, ConfigFile};
use super::random::{mix, sample_collinear, sample_generic, SplitMix64};
use super::CliError;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Suite {
    CremonaLemma,
    PhiEquivariance,
    Fiber,
    SwapWord,
    Stability,
    Descendants,
    Boundary,
    Identification,
    DivisorAction,
    All,
}

impl Suite {
    pub const LEAVES: [Suite; 9] = [
        Suite::CremonaLemma,
        Suite::PhiEquivariance,
        Suite::Fiber,
        Suite::SwapWord,
        Suite::Stability,
        Suite::Descendants,
        Suite::Boundary,
        Suite::Identification,
        Suite::DivisorAction,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::CremonaLemma => "cremona-lemma",
            Suite::PhiEquivariance => "phi-equivariance",
            Suite::Fiber => "fiber",
            Suite::SwapWord => "swap-word",
            Suite::Stability => "stability",
            Suite::Descendants => "descendants",
            Suite::Boundary => "boundary",
            Suite::Identification => "identification",
            Suite::DivisorAction => "divisor-action",
            Suite::All => "all",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        Suite::LEAVES
            .into_iter()
            .chain([Suite::All])
            .find(|x| x.name() == s)
            .ok_or_else(|| CliError::UnknownSuite(s.to_string()))
    }
}

#[derive(Debug, Clone)]
pub struct TrialPlan {
    pub suite: Suite,
    pub trials: usize,
    pub seed: u64,
    pub field: FieldDescriptor,
}

impl TrialPlan {
    pub fn new(suite: Suite, trials: usize, seed: u64, field: FieldDescriptor) -> Result<Self, CliError> {
        if trials == 0 {
            return Err(CliError::InvalidPlan("trials must be at least 1".into()));
        }
        Ok(TrialPlan { suite, trials, seed, field })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Failure {
    pub trial: usize,
    pub assertion: String,
    pub input: Value,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub suite: String,
    pub seed: u64,
    pub trials: usize,
    pub passed: usize,
    pub failed: usize,
    pub failures: Vec<Failure>,
    pub version: String,
    pub details: Option<Value>,
    pub suites: Vec<Report>,
}

impl Report {
    pub fn to_json(&self) -> Value {
        let mut obj = Map::new();
        obj.insert("suite".into(), json!(self.suite));
        obj.insert("seed".into(), json!(self.seed));
        obj.insert("trials".into(), json!(self.trials));
        obj.insert("passed".into(), json!(self.passed));
        obj.insert("failed".into(), json!(self.failed));
        let failures: Vec<Value> = self
            .failures
            .iter()
            .map(|f| json!({ "trial": f.trial, "assertion": f.assertion, "input": f.input }))
            .collect();
        obj.insert("failures".into(), Value::Array(failures));
        obj.insert("version".into(), json!(self.version));
        if let Some(d) = &self.details {
            obj.insert("details".into(), d.clone());
        }
        if !self.suites.is_empty() {
            obj.insert("suites".into(), Value::Array(self.suites.iter().map(Report::to_json).collect()));
        }
        Value::Object(obj)
    }

    pub fn ok(&self) -> bool {
        self.failed == 0
    }
}

enum Outcome {
    Pass(Option<String>),
    Fail(String, Value),
    Indeterminate(String),
}

fn fail(assertion: &str, input: Value) -> Outcome {
    Outcome::Fail(assertion.to_string(), input)
}

fn plane_input(cfg: &PlaneConfig) -> Value {
    json!({ "config": config_to_json(&ConfigFile::plane(cfg)) })
}

fn with(mut input: Value, key: &str, v: Value) -> Value {
    input.as_object_mut().expect("object input").insert(key.into(), v);
    input
}

/// Runs a leaf or combined suite. Trials run in parallel and are reported in
/// index order.
pub fn run_suite(plan: &TrialPlan) -> Report {
    if plan.suite == Suite::All {
        let suites: Vec<Report> =
            Suite::LEAVES.iter().map(|&s| run_suite(&TrialPlan { suite: s, ..plan.clone() })).collect();
        let failures: Vec<Failure> = suites
            .iter()
            .flat_map(|r| {
                r.failures.iter().map(|f| Failure {
                    trial: f.trial,
                    assertion: format!("{}/{}", r.suite, f.assertion),
                    input: f.input.clone(),
                })
            })
            .collect();
        return Report {
            suite: Suite::All.name().into(),
            seed: plan.seed,
            trials: plan.trials,
            passed: suites.iter().map(|r| r.passed).sum(),
            failed: failures.len(),
            failures,
            version: VERSION.into(),
            details: None,
            suites,
        };
    }

    let trial: fn(usize, &mut SplitMix64, &FieldDescriptor) -> Outcome = match plan.suite {
        Suite::CremonaLemma => trial_cremona_lemma,
        Suite::PhiEquivariance => trial_phi_equivariance,
        Suite::Fiber => trial_fiber,
        Suite::SwapWord => trial_swap_word,
        Suite::Stability => trial_stability,
        Suite::Descendants => trial_descendants,
        Suite::Boundary => trial_boundary,
        Suite::Identification => trial_identification,
        Suite::DivisorAction => trial_divisor_action,
        Suite::All => unreachable!("handled above"),
    };
    let outcomes: Vec<Outcome> = (0..plan.trials)
        .into_par_iter()
        .map(|t| trial(t, &mut SplitMix64::new(mix(plan.seed, t as u64)), &plan.field))
        .collect();

    let mut failures = Vec::new();
    let mut passed = 0;
    let mut indeterminate = Vec::new();
    let mut notes: Vec<String> = Vec::new();
    for (t, o) in outcomes.into_iter().enumerate() {
        match o {
            Outcome::Pass(note) => {
                passed += 1;
                if let Some(n) = note {
                    if !notes.contains(&n) {
                        notes.push(n);
                    }
                }
            }
            Outcome::Fail(assertion, input) => failures.push(Failure { trial: t, assertion, input }),
            Outcome::Indeterminate(reason) => indeterminate.push(json!({ "trial": t, "reason": reason })),
        }
    }
    let details = (plan.suite == Suite::DivisorAction).then(|| {
        json!({ "determined": passed, "indeterminate": indeterminate.len(), "images": notes, "indeterminate_trials": indeterminate })
    });
    Report {
        suite: plan.suite.name().into(),
        seed: plan.seed,
        trials: plan.trials,
        passed,
        failed: failures.len(),
        failures,
        version: VERSION.into(),
        details,
        suites: Vec::new(),
    }
}

macro_rules! check {
    ($cond:expr, $name:expr, $input:expr) => {
        match $cond {
            Ok(true) => {}
            Ok(false) => return fail($name, $input),
            Err(e) => return fail(&format!("{}: {}", $name, e), $input),
        }
    };
}

macro_rules! ensure {
    ($cond:expr, $name:expr, $input:expr) => {
        if !$cond {
            return fail($name, $input);
        }
    };
}

macro_rules! attempt {
    ($e:expr, $name:expr, $input:expr) => {
        match $e {
            Ok(v) => v,
            Err(e) => return fail(&format!("{}: {}", $name, e), $input),
        }
    };
}

fn generic(rng: &mut SplitMix64, field: &FieldDescriptor) -> Result<PlaneConfig, Outcome> {
    sample_generic(rng, field).map_err(|e| fail(&format!("sample: {e}"), json!({ "field": field.to_string() })))
}

fn trial_cremona_lemma(_t: usize, rng: &mut SplitMix64, field: &FieldDescriptor) -> Outcome {
    let form = |terms: &[([u32; 3], i64)]| TernaryForm::from_ints(field, terms).expect("nonzero");
    let line = form(&[([1, 0, 0], 1), ([0, 1, 0], 1), ([0, 0, 1], 1)]);
    let cubic = form(&[([0, 1, 1], 1), ([1, 0, 1], 1), ([1, 1, 0], 1)]);
    ensure!(std_cremona_form_image(&line) == cubic, "line-to-conic", json!({}));
    let v = form(&[([0, 2, 0], 1), ([1, 0, 1], -1)]);
    let minus_v = form(&[([0, 2, 0], -1), ([1, 0, 1], 1)]);
    ensure!(std_cremona_form_image(&v) == minus_v, "veronese-preserved", json!({}));
    let x = form(&[([1, 0, 0], 1)]);
    ensure!(std_cremona_form_image(&x) == form(&[([0, 1, 1], 1)]), "edge-to-edges", json!({}));

    let [a, b, c] = [0; 3].map(|_| rng.nonzero_scalar(field));
    let input = json!({ "line": [a.to_string(), b.to_string(), c.to_string()] });
    let l = TernaryForm::new(field, [([1, 0, 0], a), ([0, 1, 0], b), ([0, 0, 1], c)]).expect("nonzero");
    let twice = std_cremona_form_image(&std_cremona_form_image(&l));
    ensure!(twice == l, "line-round-trip", input);

    // a y^2 + b xy + c xz + d yz passes through e1 and e3 only
    let [a, b, c, d] = [0; 4].map(|_| rng.nonzero_scalar(field));
    let input = json!({ "conic": [a.to_string(), b.to_string(), c.to_string(), d.to_string()] });
    let q = TernaryForm::new(field, [([0, 2, 0], a), ([1, 1, 0], b), ([1, 0, 1], c), ([0, 1, 1], d)])
        .expect("nonzero");
    let img = std_cremona_form_image(&q);
    let invariant = |f: &TernaryForm| {
        let k = |e| f.coefficient(e);
        (&k([0, 2, 0]) * &k([1, 0, 1])).try_div(&(&k([1, 1, 0]) * &k([0, 1, 1])))
    };
    check!(invariant(&img).and_then(|x| invariant(&q).map(|y| x == y)), "two-vertex-torus-invariant", input.clone());
    let frame = Point2::standard_frame(field);
    let vanishing = |f: &TernaryForm| -> Result<[bool; 3], CliError> {
        let mut out = [false; 3];
        for (k, e) in frame[..3].iter().enumerate() {
            out[k] = f.evaluate(e).map_err(|e| CliError::Domain(e.to_string()))?.is_zero();
        }
        Ok(out)
    };
    check!(vanishing(&img).map(|v| v == [true, false, true]), "two-vertex-image-vertices", input);

    let p = rng.point2(field);
    if p.coords().iter().all(|x| !x.is_zero()) {
        let input = json!({ "point": plane_points_to_json(std::slice::from_ref(&p)) });
        let back = std_cremona_eval(&p).and_then(|q| std_cremona_eval(&q));
        check!(back.map(|r| r == p), "point-involution", input);
    }
    Outcome::Pass(None)
}

fn trial_phi_equivariance(_t: usize, rng: &mut SplitMix64, field: &FieldDescriptor) -> Outcome {
    let cfg = match generic(rng, field) {
        Ok(c) => c,
        Err(o) => return o,
    };
    let input = plane_input(&cfg);
    let out = attempt!(phi67(&cfg), "phi67", input);
    for perm in (0..5).permutations(5) {
        let sigma: [usize; 6] = [perm[0], perm[1], perm[2], perm[3], perm[4], 5];
        let moved = attempt!(phi67(&cfg.permute(&sigma)), "phi67-permuted", input);
        let ok = (0..5).all(|i| moved.ordered[sigma[i]] == out.ordered[i]) && moved.pair == out.pair;
        ensure!(ok, "s5-equivariance", with(input.clone(), "sigma", json!(perm)));
    }
    for s in SwapSet::all() {
        let swapped = attempt!(geometric_swap(&cfg, s), "geometric-swap", input);
        let image = attempt!(phi67(&swapped), "phi67-swapped", input);
        ensure!(image == out, "swap-invariance", with(input.clone(), "swap", json!(s.to_string())));
    }
    Outcome::Pass(None)
}

fn trial_fiber(_t: usize, rng: &mut SplitMix64, field: &FieldDescriptor) -> Outcome {
    let cfg = match generic(rng, field) {
        Ok(c) => c,
        Err(o) => return o,
    };
    let input = plane_input(&cfg);
    let orbit = attempt!(fiber_orbit(&cfg), "fiber-orbit", input);
    ensure!(orbit.len() == 16, "orbit-size-16", with(input.clone(), "size", json!(orbit.len())));
    let base = attempt!(phi67(&cfg).and_then(|o| o.to_p1_config()), "phi67", input);
    let sym = P1Output::pair_symmetry();
    let base_key = attempt!(fingerprint(&base, &sym), "fingerprint", input);
    for (s, member) in &orbit {
        let image = attempt!(phi67(member).and_then(|o| o.to_p1_config()), "phi67-member", input);
        let swap = with(input.clone(), "swap", json!(s.to_string()));
        check!(moduli_equal(&image, &base, &sym), "fiber-same-image", swap.clone());
        check!(fingerprint(&image, &sym).map(|k| k == base_key), "fiber-same-fingerprint", swap);
    }
    Outcome::Pass(None)
}

fn trial_swap_word(_t: usize, rng: &mut SplitMix64, field: &FieldDescriptor) -> Outcome {
    let cfg = match generic(rng, field) {
        Ok(c) => c,
        Err(o) => return o,
    };
    let input = plane_input(&cfg);
    for s in SwapSet::all() {
        let word = swap_word(s);
        let case = with(with(input.clone(), "swap", json!(s.to_string())), "word", json!(word.to_string()));
        let lhs = attempt!(apply_word(cfg.points(), &word), "apply-word", case);
        let lhs = attempt!(PlaneConfig::new(lhs), "word-image-distinct", case);
        let rhs = attempt!(geometric_swap(&cfg, s), "geometric-swap", case);
        check!(moduli_equal_plane(&lhs, &rhs), "word-matches-swap", case);
    }
    Outcome::Pass(None)
}

fn trial_stability(_t: usize, rng: &mut SplitMix64, field: &FieldDescriptor) -> Outcome {
    let mut pts: Vec<Point1> = Vec::new();
    while pts.len() < 6 {
        let p = rng.point1(field);
        if !pts.contains(&p) {
            pts.push(p);
        }
    }
    let mu = WeightVector::new(vec![2; 6]).expect("valid");
    let g = loop {
        let m = [[rng.scalar(field), rng.scalar(field)], [rng.scalar(field), rng.scalar(field)]];
        if let Ok(g) = Map2::new(m) {
            break g;
        }
    };
    let sigma = rng.permutation(6);
    let cases = [(0, Stability::Stable), (1, Stability::Stable), (2, Stability::StrictlySemistable), (3, Stability::Unstable)];
    for (extra, want) in cases {
        let mut v = pts.clone();
        for k in 1..=extra {
            v[k] = v[0].clone();
        }
        let cfg = P1Config::new(v, mu.clone()).expect("lengths match");
        let input = json!({ "config": config_to_json(&ConfigFile::line(&cfg)) });
        let name = format!("collide-{}-{}", extra + 1, want.as_str());
        ensure!(stability(&cfg) == want, &name, input);
        let moved = attempt!(cfg.map(&g), "mobius", input);
        ensure!(stability(&moved) == want, "mobius-invariance", input);
        ensure!(stability(&cfg.permute(&sigma)) == want, "permutation-invariance", input);
    }
    Outcome::Pass(None)
}

fn trial_descendants(_t: usize, rng: &mut SplitMix64, _field: &FieldDescriptor) -> Outcome {
    let twelve: WeightVector = "1^12".parse().expect("valid");
    let d = descendants(&twelve, 7);
    let input = json!({ "mu": "1^12", "points": 7 });
    ensure!(d.len() == 6, "six-descendants", input);
    for w in ["2^5,1^2", "3,2^3,1^3"] {
        let w: WeightVector = w.parse().expect("valid");
        ensure!(d.contains(&w), "contains-new-examples", input);
    }
    ensure!(d.iter().all(|w| ball_dimension(w) == 4), "four-balls", input);

    let n = 3 + rng.below(6) as usize;
    let weights: Vec<u32> = (0..n).map(|_| 1 + rng.below(4) as u32).collect();
    let mu = WeightVector::new(weights).expect("positive");
    let total = mu.total();
    for m in 3..=n {
        let input = json!({ "mu": mu.to_string(), "points": m });
        for w in descendants(&mu, m) {
            let s = w.weights();
            let ok = s.len() == m && w.total() == total && s.windows(2).all(|p| p[0] >= p[1]) && s.iter().all(|&c| 2 * c < total);
            ensure!(ok, "descendant-shape", input);
        }
    }
    if mu.weights().iter().all(|&w| 2 * w < total) {
        let full = descendants(&mu, n);
        let input = json!({ "mu": mu.to_string(), "points": n });
        ensure!(full.len() == 1 && full.contains(&mu.sorted()), "no-collision-identity", input);
    }
    Outcome::Pass(None)
}

fn trial_boundary(_t: usize, _rng: &mut SplitMix64, _field: &FieldDescriptor) -> Outcome {
    let c = boundary_divisors();
    ensure!(c.labels.len() == 36, "count-36", json!({}));
    ensure!(c.class_counts() == [1, 10, 10, 15], "class-split", json!({}));
    let sizes: Vec<(char, usize)> = c.orbits.iter().map(|o| (c.labels[o[0]].class(), o.len())).collect();
    check!(
        Ok::<_, CliError>(sizes == [('A', 1), ('B', 10), ('C', 10), ('D', 10), ('D', 5)]),
        "s5-orbits",
        json!({ "orbits": sizes.iter().map(|(k, n)| format!("{k}:{n}")).collect::<Vec<_>>() })
    );
    Outcome::Pass(None)
}

fn trial_identification(_t: usize, rng: &mut SplitMix64, field: &FieldDescriptor) -> Outcome {
    let cfg = match sample_collinear(rng, field) {
        Ok(c) => c,
        Err(e) => return fail(&format!("sample: {e}"), json!({ "field": field.to_string() })),
    };
    let input = plane_input(&cfg);
    let out = attempt!(collinear_to_conic(&cfg), "collinear-to-conic", input);
    ensure!(classify(&out) == StratumClass::OnConic, "lands-on-conic", input);
    let StratumClass::CollinearThrough6([i, j]) = classify(&cfg) else {
        return fail("sample-stratum", input);
    };
    let fixed = (1..=5).filter(|&l| l != i && l != j).all(|l| out.label(l) == cfg.label(l));
    ensure!(fixed, "base-fixed", input);

    let g: Map3 = rng.projectivity(field);
    let other = attempt!(cfg.map(&g), "projectivity", input);
    let case = with(input.clone(), "map", json!(format!("{g:?}")));
    let out2 = attempt!(collinear_to_conic(&other), "collinear-to-conic-image", case);
    check!(moduli_equal_plane(&out, &out2), "well-defined", case);
    Outcome::Pass(None)
}

/// Divisor loci containing the raw configuration.
pub fn detect_divisors(points: &[Point2; 6]) -> Result<Vec<DivisorLabel>, CliError> {
    let dom = |e: crate::geom::GeomError| CliError::Domain(e.to_string());
    let pts = crate::geom::unify_points(points).map_err(dom)?;
    let mut out = Vec::new();
    let mut coincide = false;
    for (i, j) in (0..6).tuple_combinations() {
        if pts[i] == pts[j] {
            coincide = true;
            out.push(DivisorLabel::DCollision([i + 1, j + 1]));
        }
    }
    let mut any_line = false;
    for (i, j, k) in (0..6).tuple_combinations() {
        if pts[i] == pts[j] || pts[j] == pts[k] || pts[i] == pts[k] {
            continue;
        }
        if collinear(&pts[i], &pts[j], &pts[k]).map_err(dom)? {
            any_line = true;
            out.push(if k == 5 {
                DivisorLabel::BCollinearWith6([i + 1, j + 1])
            } else {
                DivisorLabel::CCollinearAmong5([i + 1, j + 1, k + 1])
            });
        }
    }
    if !coincide && !any_line {
        let five: [Point2; 5] = pts[..5].to_vec().try_into().expect("five points");
        if let Ok(q) = Conic::through_five(&five) {
            if q.contains(&pts[5]).map_err(dom)? {
                out.push(DivisorLabel::AOnConic);
            }
        }
    }
    Ok(out)
}

fn sample_in_divisor(rng: &mut SplitMix64, field: &FieldDescriptor, label: &DivisorLabel) -> Option<[Point2; 6]> {
    for _ in 0..100 {
        let mut pts: [Point2; 6] = std::array::from_fn(|_| rng.point2(field));
        let along = |rng: &mut SplitMix64, a: &Point2, b: &Point2| {
            let t = rng.nonzero_scalar(field);
            Point2::new(std::array::from_fn(|k| &a.coords()[k] + &(&t * &b.coords()[k]))).ok()
        };
        match label {
            DivisorLabel::AOnConic => {
                let g = rng.projectivity(field);
                for p in pts.iter_mut() {
                    let t = rng.scalar(field);
                    let v = Point2::new([field.one(), t.clone(), &t * &t]).expect("nonzero");
                    *p = g.apply(&v).expect("same field");
                }
            }
            DivisorLabel::BCollinearWith6([i, j]) => {
                pts[5] = along(rng, &pts[i - 1], &pts[j - 1])?;
            }
            DivisorLabel::CCollinearAmong5([a, b, c]) => {
                pts[c - 1] = along(rng, &pts[a - 1], &pts[b - 1])?;
            }
            DivisorLabel::DCollision(_) => return None,
        }
        if detect_divisors(&pts).ok()? == [label.clone()] {
            return Some(pts);
        }
    }
    None
}

fn trial_divisor_action(t: usize, rng: &mut SplitMix64, field: &FieldDescriptor) -> Outcome {
    let labels = boundary_divisors().labels;
    let label = &labels[t % labels.len()];
    let gens: Vec<(usize, usize)> = (1..=5).tuple_combinations().collect();
    let (i, j) = gens[(t / labels.len()) % gens.len()];
    let token = CremonaToken::psi(i, j, 6).expect("valid labels");
    if matches!(label, DivisorLabel::DCollision(_)) {
        return Outcome::Indeterminate(format!("{token} on {label}: collisions are not representable"));
    }
    let Some(pts) = sample_in_divisor(rng, field, label) else {
        return Outcome::Indeterminate(format!("{token} on {label}: no sample in the locus"));
    };
    let image = match token.apply(&pts) {
        Ok(img) => img,
        Err(e) => return Outcome::Indeterminate(format!("{token} on {label}: {e}")),
    };
    let input = json!({ "field": field.to_string(), "points": plane_points_to_json(&pts), "token": token.to_string(), "divisor": label.to_string() });
    let found = attempt!(detect_divisors(&image), "detect", input);
    if found.is_empty() {
        return fail("image-on-boundary", input);
    }
    Outcome::Pass(Some(format!("{token}: {label} -> {}", found.iter().join(" "))))
}

pub fn report_text(report: &Report) -> String {
    let mut s = serde_json::to_string_pretty(&report.to_json()).expect("JSON values serialize");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn plan(suite: Suite, trials: usize) -> TrialPlan {
        TrialPlan::new(suite, trials, 42, FieldDescriptor::prime(2147483647).unwrap()).unwrap()
    }

    #[test]
    fn each_leaf_passes_briefly() {
        for s in Suite::LEAVES {
            let r = run_suite(&plan(s, 3));
            assert!(r.ok(), "{}", report_text(&r));
            assert_eq!(r.failures.len(), r.failed);
        }
    }

    #[test]
    fn reports_are_deterministic() {
        let a = report_text(&run_suite(&plan(Suite::Fiber, 4)));
        let b = report_text(&run_suite(&plan(Suite::Fiber, 4)));
        assert_eq!(a, b);
    }

    #[test]
    fn plan_validation() {
        assert!("nope".parse::<Suite>().is_err());
        assert_eq!("swap-word".parse::<Suite>().unwrap(), Suite::SwapWord);
        assert!(TrialPlan::new(Suite::Fiber, 0, 1, FieldDescriptor::rationals()).is_err());
    }

    #[test]
    fn rational_field_suites() {
        let p = TrialPlan::new(Suite::SwapWord, 2, 9, FieldDescriptor::rationals()).unwrap();
        assert!(run_suite(&p).ok());
    }
}

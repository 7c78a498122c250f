//! Acceptance criteria, one line each. Exits nonzero if any criterion fails.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use itertools::Itertools;
use serde_json::Value;

use cubic_dm::cli::{boundary_divisors, mix, random_generic_config, sample_collinear, DivisorLabel, SplitMix64};
use cubic_dm::cremona::{apply_word, geometric_swap, std_cremona_form_image, swap_word, SwapSet, TernaryForm};
use cubic_dm::dm::{descendants, stability, P1Config, Stability, WeightVector};
use cubic_dm::field::FieldDescriptor;
use cubic_dm::geom::{Conic, Point1, Point2};
use cubic_dm::phi::{
    classify, collinear_to_conic, degenerate_limit_check_I, fiber_orbit, moduli_equal_plane, phi67, PlaneConfig,
    StratumClass,
};

const SEED: u64 = 0x5EED_0001;

type Outcome = Result<String, String>;

fn fp() -> FieldDescriptor {
    FieldDescriptor::prime(2_147_483_647).unwrap()
}

fn q() -> FieldDescriptor {
    FieldDescriptor::rationals()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn c1_descendants() -> Outcome {
    let mu: WeightVector = "1^12".parse().map_err(|e| format!("{e}"))?;
    let found = descendants(&mu, 7);
    let names: Vec<String> = found.iter().map(ToString::to_string).collect();
    ensure(found.len() == 6, || format!("expected 6 vectors, got {names:?}"))?;
    for want in ["2^5,1^2", "3,2^3,1^3"] {
        ensure(names.iter().any(|n| n == want), || format!("{want} missing from {names:?}"))?;
    }
    Ok(names.join(" "))
}

fn c2_boundary() -> Outcome {
    let census = boundary_divisors();
    let counts = census.class_counts();
    ensure(census.labels.len() == 36, || format!("{} labels", census.labels.len()))?;
    ensure(counts == [1, 10, 10, 15], || format!("class counts {counts:?}"))?;
    for class in ['B', 'C'] {
        let orbits: Vec<_> =
            census.orbits.iter().filter(|o| census.labels[o[0]].class() == class).collect();
        ensure(orbits.len() == 1 && orbits[0].len() == 10, || format!("class {class} orbits {orbits:?}"))?;
    }
    let d_sizes: Vec<usize> = census
        .orbits
        .iter()
        .filter(|o| matches!(census.labels[o[0]], DivisorLabel::DCollision(_)))
        .map(Vec::len)
        .sorted()
        .collect();
    Ok(format!("36 labels 1/10/10/15, D orbits {d_sizes:?}"))
}

fn c3_cremona_forms() -> Outcome {
    let f = q();
    let lin = TernaryForm::from_ints(&f, &[([1, 0, 0], 1), ([0, 1, 0], 1), ([0, 0, 1], 1)]).unwrap();
    let lin_img = TernaryForm::from_ints(&f, &[([0, 1, 1], 1), ([1, 0, 1], 1), ([1, 1, 0], 1)]).unwrap();
    ensure(std_cremona_form_image(&lin) == lin_img, || format!("x+y+z -> {}", std_cremona_form_image(&lin)))?;

    let conic = TernaryForm::from_ints(&f, &[([0, 2, 0], 1), ([1, 0, 1], -1)]).unwrap();
    let img = std_cremona_form_image(&conic);
    let neg = TernaryForm::from_ints(&f, &[([0, 2, 0], -1), ([1, 0, 1], 1)]).unwrap();
    ensure(img == conic || img == neg, || format!("y^2 - xz -> {img}"))?;

    // Y^2 - XZ at (yz, xz, xy) equals xz times the image, checked pointwise
    for (x, y, z) in (-3i64..=3).cartesian_product(-3i64..=3).cartesian_product(-3i64..=3).map(|((a, b), c)| (a, b, c)) {
        if (x, y, z) == (0, 0, 0) {
            continue;
        }
        let lhs = (x * z) * (x * z) - (y * z) * (x * y);
        let g = img.terms().iter().fold(f.zero(), |acc, (&[a, b, c], k)| {
            &acc + &(k * &f.from_i64(x.pow(a) * y.pow(b) * z.pow(c)))
        });
        ensure(f.from_i64(lhs) == &f.from_i64(x * z) * &g, || format!("substitution differs at {:?}", (x, y, z)))?;
    }
    Ok(format!("x+y+z -> {lin_img}; y^2-xz -> {img}"))
}

fn c4_tangency() -> Outcome {
    let f = q();
    let conic = Conic::from_ints(&f, [0, 1, 0, 0, -1, 0]).unwrap();
    let pts = conic.tangent_points(&Point2::from_ints(&f, [0, 1, 0]).unwrap()).map_err(|e| e.to_string())?;
    let want = [Point2::from_ints(&f, [1, 0, 0]).unwrap(), Point2::from_ints(&f, [0, 0, 1]).unwrap()];
    let same = (pts[0] == want[0] && pts[1] == want[1]) || (pts[0] == want[1] && pts[1] == want[0]);
    ensure(same, || format!("got {pts:?}"))?;
    Ok("{[1,0,0],[0,0,1]}".into())
}

fn c5_fiber() -> Outcome {
    let f = fp();
    for t in 0..200 {
        let cfg = random_generic_config(mix(SEED, t), &f).map_err(|e| e.to_string())?;
        let orbit = fiber_orbit(&cfg).map_err(|e| format!("trial {t}: {e}"))?;
        ensure(orbit.len() == 16, || format!("trial {t}: orbit size {}", orbit.len()))?;
        let base = phi67(&cfg).map_err(|e| e.to_string())?;
        for (s, member) in &orbit {
            let img = phi67(member).map_err(|e| format!("trial {t} swap {s}: {e}"))?;
            ensure(img == base, || format!("trial {t}: swap {s} changes the image"))?;
        }
    }
    Ok("200 configurations, orbit 16, one image each".into())
}

fn c6_swap_word() -> Outcome {
    let f = fp();
    let mut checks = 0;
    for s in SwapSet::all() {
        let word = swap_word(s);
        for t in 0..20 {
            let cfg = random_generic_config(mix(SEED ^ u64::from(s.mask()), t), &f).map_err(|e| e.to_string())?;
            let via_word = apply_word(cfg.points(), &word).map_err(|e| format!("{s} trial {t}: {e}"))?;
            let via_word = PlaneConfig::new(via_word).map_err(|e| e.to_string())?;
            let direct = geometric_swap(&cfg, s).map_err(|e| e.to_string())?;
            ensure(moduli_equal_plane(&via_word, &direct).map_err(|e| e.to_string())?, || {
                format!("{s} trial {t}: {word} disagrees with the swap")
            })?;
            checks += 1;
        }
    }
    Ok(format!("{checks} word/swap comparisons"))
}

fn c7_equivariance() -> Outcome {
    let f = fp();
    let perms: Vec<Vec<usize>> = (0..5).permutations(5).collect();
    for t in 0..200 {
        let cfg = random_generic_config(mix(SEED.rotate_left(7), t), &f).map_err(|e| e.to_string())?;
        let base = phi67(&cfg).map_err(|e| e.to_string())?;
        for p in &perms {
            let sigma = [p[0], p[1], p[2], p[3], p[4], 5];
            let img = phi67(&cfg.permute(&sigma)).map_err(|e| e.to_string())?;
            for i in 0..5 {
                ensure(img.ordered[sigma[i]] == base.ordered[i], || format!("trial {t}: sigma {p:?} slot {i}"))?;
            }
            ensure(img.pair == base.pair, || format!("trial {t}: sigma {p:?} moves the pair"))?;
        }
        for s in SwapSet::all() {
            let img = phi67(&geometric_swap(&cfg, s).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
            ensure(img == base, || format!("trial {t}: swap {s} changes the image"))?;
        }
    }
    Ok("200 trials x 120 permutations x 32 swaps".into())
}

fn c8_identification() -> Outcome {
    let f = fp();
    for t in 0..100 {
        let mut rng = SplitMix64::new(mix(SEED.rotate_left(13), t));
        let a = sample_collinear(&mut rng, &f).map_err(|e| e.to_string())?;
        let conic_a = collinear_to_conic(&a).map_err(|e| format!("trial {t}: {e}"))?;
        ensure(classify(&conic_a) == StratumClass::OnConic, || format!("trial {t}: {:?}", classify(&conic_a)))?;
        let b = a.map(&rng.projectivity(&f)).map_err(|e| e.to_string())?;
        let conic_b = collinear_to_conic(&b).map_err(|e| format!("trial {t}: {e}"))?;
        ensure(moduli_equal_plane(&conic_a, &conic_b).map_err(|e| e.to_string())?, || {
            format!("trial {t}: equivalent inputs, inequivalent outputs")
        })?;
    }
    Ok("100 collinear configurations and 100 equivalent pairs".into())
}

fn c9_stability() -> Outcome {
    let f = q();
    let w = WeightVector::new(vec![2; 6]).unwrap();
    let cases: [(&str, [i64; 6]); 3] =
        [("distinct", [0, 1, 2, 3, 4, 5]), ("pair", [0, 0, 2, 3, 4, 5]), ("triple", [0, 0, 0, 3, 4, 5])];
    let mut line = Vec::new();
    for (name, xs) in cases {
        let pts = xs.iter().map(|&x| Point1::from_ints(&f, [1, x]).unwrap()).collect();
        let cfg = P1Config::new(pts, w.clone()).unwrap();
        // threshold oracle: heaviest coincident weight against half the total
        let heaviest = xs.iter().map(|x| 2 * xs.iter().filter(|y| *y == x).count() as u32).max().unwrap();
        let expected = match (2 * heaviest).cmp(&12) {
            std::cmp::Ordering::Less => Stability::Stable,
            std::cmp::Ordering::Equal => Stability::StrictlySemistable,
            std::cmp::Ordering::Greater => Stability::Unstable,
        };
        let got = stability(&cfg);
        ensure(got == expected, || format!("{name}: {got:?}, expected {expected:?}"))?;
        line.push(format!("{name} {}", got.as_str()));
    }
    ensure(line[2].ends_with("strictly-semistable"), || "triple collision not strictly semistable".into())?;
    Ok(line.join(", "))
}

fn c10_limit() -> Outcome {
    let f = q();
    let witness = [[1, 1, 0], [1, 2, 3], [1, 0, 0], [0, 1, 0], [0, 0, 1], [2, 3, 3]].map(|c| Point2::from_ints(&f, c).unwrap());
    let report = degenerate_limit_check_I(&witness).map_err(|e| e.to_string())?;
    ensure(report.ok(), || format!("{report:?}"))?;
    ensure(report.merged == [4, 2, 2, 2, 2], || format!("merged {:?}", report.merged))?;
    Ok(format!("pair {:?}, merged (4,2,2,2,2)", report.pair))
}

fn c11_cli_determinism() -> Outcome {
    let args = ["verify", "--suite", "all", "--trials", "200", "--seed", "42", "--field", "prime:2147483647"];
    let run = || Command::new(env!("CARGO_BIN_EXE_cubic-dm")).args(args).output().map_err(|e| e.to_string());
    let (first, second) = (run()?, run()?);
    ensure(first.status.code() == Some(0), || format!("exit {:?}", first.status.code()))?;
    ensure(first.stdout == second.stdout, || "reports differ between runs".into())?;
    let report: Value = serde_json::from_slice(&first.stdout).map_err(|e| e.to_string())?;
    ensure(report["failed"] == 0, || format!("failed = {}", report["failed"]))?;
    Ok(format!("{} bytes, passed {}, identical", first.stdout.len(), report["passed"]))
}

fn main() -> ExitCode {
    let criteria: [(&str, u64, fn() -> Outcome); 11] = [
        ("descendant count", 1, c1_descendants),
        ("boundary census", 1, c2_boundary),
        ("Cremona identities", 1, c3_cremona_forms),
        ("tangency normal form", 1, c4_tangency),
        ("fiber suite", 30, c5_fiber),
        ("swap-word suite", 60, c6_swap_word),
        ("equivariance suite", 10, c7_equivariance),
        ("identification suite", 30, c8_identification),
        ("stability suite", 1, c9_stability),
        ("degenerate limit (I)", 1, c10_limit),
        ("CLI report determinism", 300, c11_cli_determinism),
    ];
    let mut failures = 0;
    for (n, (name, bound, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(detail) if elapsed > Duration::from_secs(*bound) => Err(format!("{detail}; over the {bound} s bound")),
            other => other,
        };
        let (tag, detail) = match &outcome {
            Ok(d) => ("PASS", d),
            Err(d) => ("FAIL", d),
        };
        println!("{tag} {:>2} {name} ({:.2} s, bound {bound} s): {detail}", n + 1, elapsed.as_secs_f64());
        failures += usize::from(outcome.is_err());
    }
    println!("acceptance: {} of 11 passed", 11 - failures);
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

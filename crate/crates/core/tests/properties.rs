use std::collections::BTreeSet;

use proptest::prelude::*;

use cubic_dm::cli::{parse_config, random_generic_config, serialize_config, ConfigFile};
use cubic_dm::cremona::{geometric_swap, SwapSet};
use cubic_dm::dm::{descendants, fingerprint, moduli_equal, stability, P1Config, SymmetryGroup, WeightVector};
use cubic_dm::field::{FieldDescriptor, Scalar};
use cubic_dm::geom::{Map2, Point1};
use cubic_dm::phi::moduli_equal_plane;

const P: u64 = 2_147_483_647;

fn fp() -> FieldDescriptor {
    FieldDescriptor::prime(P).unwrap()
}

#[derive(Debug, Clone, Copy)]
enum Kind {
    Rational,
    Prime,
    RationalExt,
    PrimeExt,
}

fn base_of(kind: Kind) -> FieldDescriptor {
    match kind {
        Kind::Rational | Kind::RationalExt => FieldDescriptor::rationals(),
        Kind::Prime | Kind::PrimeExt => fp(),
    }
}

/// `(num, den)` pairs for rationals, residues for the prime field.
fn base_scalar(kind: Kind, n: i64, d: i64) -> Scalar {
    let f = base_of(kind);
    match kind {
        Kind::Rational | Kind::RationalExt => f.from_ratio(n, d).unwrap(),
        Kind::Prime | Kind::PrimeExt => f.from_i64(n.rem_euclid(P as i64)),
    }
}

fn scalar(kind: Kind, v: [i64; 4]) -> Scalar {
    let a = base_scalar(kind, v[0], v[1]);
    match kind {
        Kind::Rational | Kind::Prime => a,
        Kind::RationalExt | Kind::PrimeExt => {
            // 2 is not a rational square; 3 is not a square mod 2^31 - 1
            let d = base_of(kind).from_i64(if matches!(kind, Kind::RationalExt) { 2 } else { 3 });
            Scalar::adjoin(&a, &base_scalar(kind, v[2], v[3]), &d).unwrap()
        }
    }
}

fn kind_strategy() -> impl Strategy<Value = Kind> {
    prop_oneof![Just(Kind::Rational), Just(Kind::Prime), Just(Kind::RationalExt), Just(Kind::PrimeExt)]
}

fn raw() -> impl Strategy<Value = [i64; 4]> {
    [-1000i64..1000, 1i64..50, -1000i64..1000, 1i64..50]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn field_axioms(kind in kind_strategy(), x in raw(), y in raw(), z in raw()) {
        let (a, b, c) = (scalar(kind, x), scalar(kind, y), scalar(kind, z));
        let zero = a.field().zero();
        let one = a.field().one();
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a + &zero, a.clone());
        prop_assert_eq!(&a * &one, a.clone());
        prop_assert_eq!(&a + &(-&a), zero.clone());
        prop_assert_eq!(&a - &b, &a + &(-&b));
        if !a.is_zero() {
            prop_assert_eq!(&a * &a.inv().unwrap(), one);
            prop_assert_eq!(a.try_div(&a).unwrap(), a.field().one());
        }
    }

    #[test]
    fn square_roots_of_squares(kind in kind_strategy(), x in raw()) {
        let a = scalar(kind, x);
        let sq = &a * &a;
        prop_assert!(sq.is_square());
        let r = sq.sqrt().unwrap();
        prop_assert_eq!(&r * &r, sq);
    }

    #[test]
    fn conjugation_and_norm(ext in prop_oneof![Just(Kind::RationalExt), Just(Kind::PrimeExt)], x in raw(), y in raw()) {
        let (a, b) = (scalar(ext, x), scalar(ext, y));
        prop_assert_eq!((&a * &b).conjugate(), &a.conjugate() * &b.conjugate());
        prop_assert_eq!((&a + &b).conjugate(), &a.conjugate() + &b.conjugate());
        prop_assert_eq!(a.conjugate().conjugate(), a.clone());
        prop_assert_eq!((&a * &b).norm(), &a.norm() * &b.norm());
        prop_assert!(a.norm().is_base());
    }
}

/// Points drawn from a small pool so that collisions are frequent.
fn line_config(pool: &[u8], weights: &[u32]) -> P1Config {
    let f = fp();
    let pts = pool
        .iter()
        .map(|&v| if v == 0 { Point1::from_ints(&f, [0, 1]).unwrap() } else { Point1::from_ints(&f, [1, v as i64]).unwrap() })
        .collect();
    P1Config::new(pts, WeightVector::new(weights.to_vec()).unwrap()).unwrap()
}

fn mobius(m: [i64; 4]) -> Option<Map2> {
    let f = fp();
    Map2::mobius(&f.from_i64(m[0]), &f.from_i64(m[1]), &f.from_i64(m[2]), &f.from_i64(m[3])).ok()
}

fn line_strategy() -> impl Strategy<Value = (Vec<u8>, Vec<u32>)> {
    (4usize..8).prop_flat_map(|n| (prop::collection::vec(0u8..6, n), prop::collection::vec(1u32..5, n)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn stability_is_invariant((pool, weights) in line_strategy(), m in [0i64..50, 0i64..50, 0i64..50, 0i64..50], seed in any::<u64>()) {
        let cfg = line_config(&pool, &weights);
        let s = stability(&cfg);
        let n = cfg.len();
        let mut sigma: Vec<usize> = (0..n).collect();
        let mut state = seed;
        for i in (1..n).rev() {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            sigma.swap(i, (state >> 33) as usize % (i + 1));
        }
        prop_assert_eq!(stability(&cfg.permute(&sigma)), s);
        if let Some(g) = mobius(m) {
            prop_assert_eq!(stability(&cfg.map(&g).unwrap()), s);
        }
    }

    #[test]
    fn moduli_equality_is_an_equivalence(
        (pool, weights) in line_strategy(),
        g in [0i64..50, 0i64..50, 0i64..50, 0i64..50],
        h in [0i64..50, 0i64..50, 0i64..50, 0i64..50],
        other in prop::collection::vec(0u8..6, 7),
    ) {
        let a = line_config(&pool, &weights);
        let group = SymmetryGroup::full(a.weights());
        let Ok(fa) = fingerprint(&a, &group) else { return Ok(()) };
        prop_assert!(moduli_equal(&a, &a, &group).unwrap());
        let (Some(g), Some(h)) = (mobius(g), mobius(h)) else { return Ok(()) };
        let b = a.map(&g).unwrap();
        let c = b.map(&h).unwrap();
        prop_assert!(moduli_equal(&a, &b, &group).unwrap());
        prop_assert!(moduli_equal(&b, &a, &group).unwrap());
        prop_assert!(moduli_equal(&b, &c, &group).unwrap());
        prop_assert!(moduli_equal(&a, &c, &group).unwrap());
        prop_assert_eq!(fingerprint(&c, &group).unwrap(), fa.clone());

        let d = line_config(&other[..a.len()], &weights);
        if let (Ok(eq), Ok(fd)) = (moduli_equal(&a, &d, &group), fingerprint(&d, &group)) {
            prop_assert_eq!(eq, fd == fa);
            prop_assert_eq!(moduli_equal(&d, &a, &group).unwrap(), eq);
        }
    }
}

/// Weight multisets of all set partitions into `m` blocks, each block below
/// half the total.
fn brute_descendants(mu: &[u32], m: usize) -> BTreeSet<Vec<u32>> {
    fn go(mu: &[u32], i: usize, blocks: &mut Vec<u32>, m: usize, total: u32, out: &mut BTreeSet<Vec<u32>>) {
        if i == mu.len() {
            if blocks.len() == m && blocks.iter().all(|&b| 2 * b < total) {
                let mut v = blocks.clone();
                v.sort_unstable_by(|a, b| b.cmp(a));
                out.insert(v);
            }
            return;
        }
        for k in 0..blocks.len() {
            blocks[k] += mu[i];
            go(mu, i + 1, blocks, m, total, out);
            blocks[k] -= mu[i];
        }
        if blocks.len() < m {
            blocks.push(mu[i]);
            go(mu, i + 1, blocks, m, total, out);
            blocks.pop();
        }
    }
    let mut out = BTreeSet::new();
    go(mu, 0, &mut Vec::new(), m, mu.iter().sum(), &mut out);
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn descendants_match_partitions(mu in prop::collection::vec(1u32..5, 3..9), m in 3usize..9) {
        let m = m.min(mu.len());
        let got: BTreeSet<Vec<u32>> =
            descendants(&WeightVector::new(mu.clone()).unwrap(), m).into_iter().map(|w| w.sorted().weights().to_vec()).collect();
        prop_assert_eq!(got, brute_descendants(&mu, m));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn swaps_compose_by_symmetric_difference(seed in any::<u64>(), s in 0u8..32, t in 0u8..32) {
        let cfg = random_generic_config(seed, &fp()).unwrap();
        let (s, t) = (SwapSet::from_mask(s), SwapSet::from_mask(t));
        let st = geometric_swap(&geometric_swap(&cfg, s).unwrap(), t).unwrap();
        let direct = geometric_swap(&cfg, s.symmetric_difference(t)).unwrap();
        prop_assert!(moduli_equal_plane(&st, &direct).unwrap());
    }

    #[test]
    fn config_files_round_trip(seed in any::<u64>(), rational in any::<bool>()) {
        let field = if rational { FieldDescriptor::rationals() } else { fp() };
        let file = ConfigFile::plane(&random_generic_config(seed, &field).unwrap());
        let text = serialize_config(&file);
        let back = parse_config(&text).unwrap();
        prop_assert_eq!(&back, &file);
        prop_assert_eq!(serialize_config(&back), text);
    }
}

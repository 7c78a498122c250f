//! Word-sized modular arithmetic for prime fields below 2^64.

#[inline]
pub(crate) fn add(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 + b as u128) % p as u128) as u64
}

#[inline]
pub(crate) fn sub(a: u64, b: u64, p: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        p - (b - a)
    }
}

#[inline]
pub(crate) fn neg(a: u64, p: u64) -> u64 {
    if a == 0 {
        0
    } else {
        p - a
    }
}

#[inline]
pub(crate) fn mul(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub(crate) fn pow(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul(acc, base, p);
        }
        base = mul(base, base, p);
        exp >>= 1;
    }
    acc
}

/// Inverse by the extended Euclidean algorithm; `a` must be nonzero mod `p`.
pub(crate) fn inv(a: u64, p: u64) -> u64 {
    let (mut old_r, mut r) = (a as i128, p as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    debug_assert_eq!(old_r, 1, "inverse of a non-unit");
    old_s.rem_euclid(p as i128) as u64
}

/// Legendre symbol as 1, -1 or 0.
pub(crate) fn legendre(a: u64, p: u64) -> i8 {
    let a = a % p;
    if a == 0 {
        return 0;
    }
    if pow(a, (p - 1) / 2, p) == 1 {
        1
    } else {
        -1
    }
}

/// Tonelli-Shanks. Returns the smaller of the two roots, or `None` for a
/// non-residue.
pub(crate) fn sqrt(a: u64, p: u64) -> Option<u64> {
    let a = a % p;
    if a == 0 {
        return Some(0);
    }
    if legendre(a, p) != 1 {
        return None;
    }
    let root = if p % 4 == 3 {
        pow(a, (p + 1) / 4, p)
    } else {
        let mut q = p - 1;
        let mut s = 0u32;
        while q.is_multiple_of(2) {
            q /= 2;
            s += 1;
        }
        let z = (2..p).find(|&z| legendre(z, p) == -1).expect("odd prime has a non-residue");
        let mut m = s;
        let mut c = pow(z, q, p);
        let mut t = pow(a, q, p);
        let mut r = pow(a, q.div_ceil(2), p);
        while t != 1 {
            let mut i = 0u32;
            let mut t2 = t;
            while t2 != 1 {
                t2 = mul(t2, t2, p);
                i += 1;
            }
            let b = pow(c, 1u64 << (m - i - 1), p);
            m = i;
            c = mul(b, b, p);
            t = mul(t, c, p);
            r = mul(r, b, p);
        }
        r
    };
    Some(root.min(p - root))
}

/// Smallest positive quadratic non-residue.
pub(crate) fn least_non_residue(p: u64) -> u64 {
    (2..p).find(|&z| legendre(z, p) == -1).expect("odd prime has a non-residue")
}

/// Deterministic Miller-Rabin; the first twelve prime bases are a witness
/// set for every n < 2^64.
pub(crate) fn is_prime(n: u64) -> bool {
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &b in &BASES {
        if n.is_multiple_of(b) {
            return n == b;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for &b in &BASES {
        let mut x = pow(b, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality_matches_trial_division() {
        let trial = |n: u64| n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d));
        for n in 0..5000 {
            assert_eq!(is_prime(n), trial(n), "n = {n}");
        }
        assert!(is_prime(2_147_483_647));
        assert!(is_prime(18_446_744_073_709_551_557));
        assert!(!is_prime(3_215_031_751)); // strong pseudoprime to bases 2,3,5,7
    }

    #[test]
    fn square_roots_mod_small_primes() {
        for p in [5u64, 7, 11, 13, 17, 97, 101, 65537] {
            for a in 0..p.min(300) {
                let squares = (0..p).any(|x| mul(x, x, p) == a);
                match sqrt(a, p) {
                    Some(r) => {
                        assert!(squares);
                        assert_eq!(mul(r, r, p), a);
                    }
                    None => assert!(!squares),
                }
            }
        }
    }

    #[test]
    fn inverse_is_inverse() {
        let p = 2_147_483_647;
        for a in [1u64, 2, 3, 12345, p - 1] {
            assert_eq!(mul(a, inv(a, p), p), 1);
        }
    }
}

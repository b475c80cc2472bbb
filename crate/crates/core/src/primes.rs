//! Exact prime data (sieve-backed [`PrimeTable`]), integer factorization,
//! and asymptotic prime approximations.
//!
//! The table stores odd numbers in a packed bitset with a block rank index,
//! so the default limit of 2^30 fits in ~72 MiB while still answering
//! rank→prime, prime→rank, and prime-counting queries in near-constant time.
//!
//! Beyond the sieve, [`extend`] resolves individual `p_n` exactly with a
//! Lucy_Hedgehog-style prime-counting recursion plus a short segmented walk.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use crate::math;
use crate::{Error, Result};

pub mod extend;

pub use extend::{nth_prime_ext, prime_pi_big, prime_power_index, MAX_EXT_PRIME};

/// Words per rank-index block. 8 words = 512 odd numbers per block.
const RANK_BLOCK_WORDS: usize = 8;

/// Upper bound on the sieve limit; the packed bitset for 2^34 is 1 GiB.
pub const MAX_SIEVE_LIMIT: u64 = 1 << 34;

/// Default sieve limit: reaches `p_{2^25}` = 645_155_197 for the `m = 2`
/// lambda system while staying within ~128 MiB.
pub const DEFAULT_SIEVE_LIMIT: u64 = 1 << 30;

/// Sieve-backed store of all primes up to a configured limit.
///
/// Immutable after construction; all queries are pure and safe to share
/// across threads.
pub struct PrimeTable {
    limit: u64,
    /// Bit `i` set iff `2i + 1` is prime (bit 0, the number 1, is clear).
    bits: Vec<u64>,
    /// `ranks[b]` = number of odd primes represented by words `< b * RANK_BLOCK_WORDS`.
    ranks: Vec<u64>,
    /// Total number of primes `<= limit`, including 2.
    count: u64,
}

/// Builds a [`PrimeTable`] containing exactly all primes `<= limit`.
///
/// `limit` must be at least 2 and at most [`MAX_SIEVE_LIMIT`].
pub fn build_prime_table(limit: u64) -> Result<PrimeTable> {
    if limit < 2 {
        return Err(Error::Contract(format!(
            "sieve limit {limit} is below the first prime"
        )));
    }
    if limit > MAX_SIEVE_LIMIT {
        return Err(Error::Capacity(format!(
            "sieve limit {limit} exceeds the memory budget (max {MAX_SIEVE_LIMIT})"
        )));
    }

    let n_odds = ((limit + 1) / 2) as usize; // odds 1, 3, ..., <= limit
    let n_words = n_odds.div_ceil(64).max(1);
    let mut bits = vec![!0u64; n_words];
    bits[0] &= !1; // 1 is not prime

    // Clear bits past the limit in the last word.
    let tail = n_odds % 64;
    if tail != 0 {
        bits[n_words - 1] &= (1u64 << tail) - 1;
    }

    // Mark composites, one base prime at a time, walking the bitset in
    // segments so marking stays cache-resident.
    let root = math::isqrt_u64(limit);
    let mut p = 3u64;
    while p <= root {
        let idx = ((p - 1) / 2) as usize;
        if bits[idx / 64] >> (idx % 64) & 1 == 1 {
            let mut c = p * p;
            while c <= limit {
                let ci = ((c - 1) / 2) as usize;
                bits[ci / 64] &= !(1u64 << (ci % 64));
                c += 2 * p;
            }
        }
        p += 2;
    }

    let n_blocks = n_words.div_ceil(RANK_BLOCK_WORDS);
    let mut ranks = Vec::with_capacity(n_blocks + 1);
    let mut acc = 0u64;
    ranks.push(0);
    for b in 0..n_blocks {
        let lo = b * RANK_BLOCK_WORDS;
        let hi = (lo + RANK_BLOCK_WORDS).min(n_words);
        for w in &bits[lo..hi] {
            acc += w.count_ones() as u64;
        }
        ranks.push(acc);
    }
    let count = acc + 1; // + the prime 2

    Ok(PrimeTable {
        limit,
        bits,
        ranks,
        count,
    })
}

impl PrimeTable {
    /// Largest sieved value.
    pub fn limit(&self) -> u64 {
        self.limit
    }

    /// Number of primes `<= limit`, i.e. `prime_pi(limit)`.
    pub fn count(&self) -> u64 {
        self.count
    }

    /// Whether `n` is prime. Errors when `n` exceeds the sieved range.
    pub fn is_prime(&self, n: u64) -> Result<bool> {
        if n > self.limit {
            return Err(Error::OutOfRange(format!(
                "{n} exceeds sieve limit {}",
                self.limit
            )));
        }
        if n == 2 {
            return Ok(true);
        }
        if n < 2 || n % 2 == 0 {
            return Ok(false);
        }
        let i = ((n - 1) / 2) as usize;
        Ok(self.bits[i / 64] >> (i % 64) & 1 == 1)
    }

    /// `π(n)`: the number of primes `<= n`. Errors when `n > limit`.
    pub fn prime_pi(&self, n: u64) -> Result<u64> {
        if n > self.limit {
            return Err(Error::OutOfRange(format!(
                "{n} exceeds sieve limit {}",
                self.limit
            )));
        }
        if n < 2 {
            return Ok(0);
        }
        if n == 2 {
            return Ok(1);
        }
        // Count odd primes <= n; bit index of the largest odd <= n.
        let last = ((n - 1) / 2) as usize; // odd 2*last+1 <= n
        let word = last / 64;
        let block = word / RANK_BLOCK_WORDS;
        let mut acc = self.ranks[block];
        for w in block * RANK_BLOCK_WORDS..word {
            acc += self.bits[w].count_ones() as u64;
        }
        let keep = last % 64;
        let mask = if keep == 63 { !0 } else { (1u64 << (keep + 1)) - 1 };
        acc += (self.bits[word] & mask).count_ones() as u64;
        Ok(acc + 1)
    }

    /// The `i`-th prime `p_i` (1-based: `p_1 = 2`). Errors when the `i`-th
    /// prime is beyond the sieved range; callers may fall back to
    /// [`extend::nth_prime_ext`] or [`cipolla_log_prime`].
    pub fn nth_prime(&self, i: u64) -> Result<u64> {
        if i == 0 {
            return Err(Error::Contract("prime rank must be >= 1".into()));
        }
        if i > self.count {
            return Err(Error::OutOfRange(format!(
                "rank {i} beyond table range (pi(limit) = {})",
                self.count
            )));
        }
        if i == 1 {
            return Ok(2);
        }
        // Find the (i-1)-th set bit.
        let target = i - 1;
        // Binary search over cumulative block ranks.
        let mut lo = 0usize;
        let mut hi = self.ranks.len() - 1;
        while lo + 1 < hi {
            let mid = (lo + hi) / 2;
            if self.ranks[mid] < target {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let mut remaining = target - self.ranks[lo];
        for w in lo * RANK_BLOCK_WORDS..self.bits.len() {
            let c = self.bits[w].count_ones() as u64;
            if remaining > c {
                remaining -= c;
                continue;
            }
            // The remaining-th set bit of this word (1-based).
            let mut word = self.bits[w];
            for _ in 1..remaining {
                word &= word - 1;
            }
            let bit = word.trailing_zeros() as u64;
            return Ok(2 * (w as u64 * 64 + bit) + 1);
        }
        unreachable!("rank indexed within counted range")
    }

    /// Rank of a prime `p` (inverse of [`Self::nth_prime`]). Errors when `p`
    /// is beyond the table or not prime; never silently approximates.
    pub fn prime_index(&self, p: u64) -> Result<u64> {
        if !self.is_prime(p)? {
            return Err(Error::Contract(format!("{p} is not prime")));
        }
        self.prime_pi(p)
    }

    /// Iterator over all stored primes, ascending.
    pub fn iter(&self) -> impl Iterator<Item = u64> + '_ {
        let odds = self
            .bits
            .iter()
            .enumerate()
            .flat_map(|(w, &word)| BitIter { word, base: w as u64 * 64 });
        core::iter::once(2).chain(odds)
    }
}

struct BitIter {
    word: u64,
    base: u64,
}

impl Iterator for BitIter {
    type Item = u64;
    fn next(&mut self) -> Option<u64> {
        if self.word == 0 {
            return None;
        }
        let bit = self.word.trailing_zeros() as u64;
        self.word &= self.word - 1;
        Some(2 * (self.base + bit) + 1)
    }
}

/// Full factorization of `n` into `(prime, exponent)` pairs, primes strictly
/// increasing. `n = 1` yields the empty factorization.
///
/// Trial division by sieved primes first; any 64-bit remnant is split with
/// Brent's cycle variant of Pollard rho. Remnants wider than 64 bits that
/// are not covered by the sieve are a capacity error.
pub fn factorize(n: u128, table: &PrimeTable) -> Result<Vec<(u128, u32)>> {
    if n == 0 {
        return Err(Error::Contract("factorize requires n >= 1".into()));
    }
    let mut out: Vec<(u128, u32)> = Vec::new();
    let mut rest = n;
    for p in table.iter() {
        let p128 = p as u128;
        if p128 * p128 > rest {
            break;
        }
        if rest % p128 == 0 {
            let mut e = 0u32;
            while rest % p128 == 0 {
                rest /= p128;
                e += 1;
            }
            out.push((p128, e));
        }
    }
    if rest > 1 {
        let root = math::isqrt_u128(rest);
        if root <= table.limit() as u128 {
            // All factors up to sqrt(rest) were removed, so rest is prime.
            push_factor(&mut out, rest);
        } else if let Ok(r64) = u64::try_from(rest) {
            let mut stack = vec![r64];
            while let Some(v) = stack.pop() {
                if is_prime_u64(v) {
                    push_factor(&mut out, v as u128);
                } else {
                    let d = pollard_brent(v);
                    stack.push(d);
                    stack.push(v / d);
                }
            }
        } else {
            return Err(Error::Capacity(format!(
                "cofactor {rest} exceeds 64 bits and the sieve limit {}",
                table.limit()
            )));
        }
    }
    out.sort_unstable_by_key(|&(p, _)| p);
    // Merge duplicates produced by the rho splits.
    let mut merged: Vec<(u128, u32)> = Vec::with_capacity(out.len());
    for (p, e) in out {
        match merged.last_mut() {
            Some((q, f)) if *q == p => *f += e,
            _ => merged.push((p, e)),
        }
    }
    Ok(merged)
}

/// Factorization for arbitrary-precision inputs; same pipeline as
/// [`factorize`], with trial division on the big integer first.
pub fn factorize_big(n: &BigUint, table: &PrimeTable) -> Result<Vec<(BigUint, u32)>> {
    if n.is_zero() {
        return Err(Error::Contract("factorize requires n >= 1".into()));
    }
    if let Some(small) = n.to_u128() {
        return Ok(factorize(small, table)?
            .into_iter()
            .map(|(p, e)| (BigUint::from(p), e))
            .collect());
    }
    let mut out: Vec<(BigUint, u32)> = Vec::new();
    let mut rest = n.clone();
    for p in table.iter() {
        let pb = BigUint::from(p);
        if (&pb * &pb) > rest {
            break;
        }
        let mut e = 0u32;
        while (&rest % &pb).is_zero() {
            rest /= &pb;
            e += 1;
        }
        if e > 0 {
            out.push((pb, e));
        }
        if rest.is_one() {
            break;
        }
        if let Some(small) = rest.to_u128() {
            for (q, f) in factorize(small, table)? {
                out.push((BigUint::from(q), f));
            }
            rest = BigUint::one();
            break;
        }
    }
    if !rest.is_one() {
        return Err(Error::Capacity(format!(
            "cofactor with {} bits is beyond the factorization pipeline",
            rest.bits()
        )));
    }
    out.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(out)
}

fn push_factor(out: &mut Vec<(u128, u32)>, p: u128) {
    out.push((p, 1));
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1u64;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, b, m);
        }
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    acc
}

/// Deterministic Miller–Rabin for `u64` (the 7-base set valid below 3.3e24).
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let d = n - 1;
    let s = d.trailing_zeros();
    let d = d >> s;
    'witness: for a in [2u64, 325, 9375, 28178, 450775, 9780504, 1795265022] {
        let a = a % n;
        if a == 0 {
            continue;
        }
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Brent's variant of Pollard rho; returns a nontrivial factor of an odd
/// composite `n`. A fixed-seed xorshift keeps runs deterministic.
fn pollard_brent(n: u64) -> u64 {
    if n % 2 == 0 {
        return 2;
    }
    let mut seed = 0x9e37_79b9_7f4a_7c15u64 ^ n;
    loop {
        seed ^= seed << 13;
        seed ^= seed >> 7;
        seed ^= seed << 17;
        let c = seed % (n - 1) + 1;
        let f = |x: u64| (mul_mod(x, x, n) + c) % n;
        let mut x = seed % n;
        let mut g = 1u64;
        let mut q = 1u64;
        let mut xs = 0u64;
        let mut y = 0u64;
        let m = 128u64;
        let mut r = 1u64;
        while g == 1 {
            y = x;
            for _ in 0..r {
                x = f(x);
            }
            let mut k = 0u64;
            while k < r && g == 1 {
                xs = x;
                for _ in 0..m.min(r - k) {
                    x = f(x);
                    q = mul_mod(q, x.abs_diff(y), n);
                }
                g = gcd(q, n);
                k += m;
            }
            r *= 2;
        }
        if g == n {
            g = 1;
            while g == 1 {
                xs = f(xs);
                g = gcd(xs.abs_diff(y), n);
            }
        }
        if g != n {
            return g;
        }
    }
}

/// Two-term approximation `log p_n ≈ log n + log log n`.
///
/// The truncation error is `O(log log n / log n)`; use the sieve (or
/// [`extend`]) whenever exact values are required.
pub fn cipolla_log_prime(n: f64) -> Result<f64> {
    if !(n >= 2.0) {
        return Err(Error::Domain(format!(
            "cipolla_log_prime requires n >= 2, got {n}"
        )));
    }
    let ln = math::ln(n);
    Ok(ln + math::ln(ln))
}

/// Higher-order expansion of `log p_n`, parameterized by `log n` so it stays
/// finite for `n = m^k` far past any representable integer.
///
/// Uses the classical three-correction expansion
/// `p_n = n (log n + log log n − 1 + (log log n − 2)/log n
///        − (log² log n − 6 log log n + 11)/(2 log² n) + …)`,
/// whose error in `log p_n` is `O(log³ log n / log⁴ n)`.
pub fn log_prime_refined(log_n: f64) -> Result<f64> {
    if !(log_n > 1.0) {
        return Err(Error::Domain(format!(
            "log_prime_refined requires log n > 1, got {log_n}"
        )));
    }
    let l = log_n;
    let ll = math::ln(l);
    let inner = l + ll - 1.0 + (ll - 2.0) / l - (ll * ll - 6.0 * ll + 11.0) / (2.0 * l * l);
    Ok(l + math::ln(inner))
}

/// Four-term expansion of `log log p_{m^k}`:
/// `log k + log log m + (log k)/(k log m) + (log log m)/(k log m)`,
/// with remainder `O(log² k / k²)`.
///
/// Accuracy claims apply for large `k`; the value is defined for all
/// `k >= 1`, `m >= 2` (at `k = 1, m = 2` the `log k` terms vanish).
pub fn loglog_prime_expansion(m: u64, k: u64) -> Result<f64> {
    if m < 2 {
        return Err(Error::Domain(format!(
            "loglog_prime_expansion requires m >= 2, got {m}"
        )));
    }
    if k < 1 {
        return Err(Error::Contract("loglog_prime_expansion requires k >= 1".into()));
    }
    let log_m = math::ln(m as f64);
    let llm = math::ln(log_m);
    let kf = k as f64;
    let lk = math::ln(kf);
    Ok(lk + llm + lk / (kf * log_m) + llm / (kf * log_m))
}

/// Calibrated remainder constant `c` for the `O(log² k / k²)` bound of
/// [`loglog_prime_expansion`]: the maximum observed ratio
/// `k² |log log p_{m^k} − expansion| / log² k` over the sieve-exact range
/// (`k >= 2`), times a 1.5 safety factor.
pub fn calibrate_remainder_constant(m: u64, table: &PrimeTable) -> Result<f64> {
    let mut max_ratio = 0.0f64;
    let mut k = 2u64;
    loop {
        let Some(idx) = m.checked_pow(k as u32) else { break };
        if idx > table.count() {
            break;
        }
        let p = table.nth_prime(idx)?;
        let exact = math::ln(math::ln(p as f64));
        let approx = loglog_prime_expansion(m, k)?;
        let lk = math::ln(k as f64);
        let ratio = (k * k) as f64 * (exact - approx).abs() / (lk * lk);
        if ratio > max_ratio {
            max_ratio = ratio;
        }
        k += 1;
    }
    if max_ratio == 0.0 {
        return Err(Error::Capacity(format!(
            "sieve limit {} too small to calibrate the remainder for m = {m}",
            table.limit()
        )));
    }
    Ok(max_ratio * 1.5)
}

/// Remainder bound `c · log² k / k²` for [`loglog_prime_expansion`], with a
/// constant from [`calibrate_remainder_constant`].
pub fn loglog_expansion_remainder_bound(c: f64, k: u64) -> f64 {
    let lk = math::ln(k as f64);
    c * lk * lk / (k * k) as f64
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec::Vec;

    fn small_table() -> PrimeTable {
        build_prime_table(2_000_000).unwrap()
    }

    #[test]
    fn tiny_limits() {
        let t = build_prime_table(10).unwrap();
        let primes: Vec<u64> = t.iter().collect();
        assert_eq!(primes, vec![2, 3, 5, 7]);
        assert_eq!(t.count(), 4);
        assert!(build_prime_table(1).is_err());
        assert!(build_prime_table(MAX_SIEVE_LIMIT + 1).is_err());
    }

    #[test]
    fn sieve_oracle_counts() {
        // Independent oracle: plain boolean sieve of Eratosthenes.
        let n = 100_000usize;
        let mut is_p = vec![true; n + 1];
        is_p[0] = false;
        is_p[1] = false;
        for i in 2..=n {
            if is_p[i] {
                let mut j = i * i;
                while j <= n {
                    is_p[j] = false;
                    j += i;
                }
            }
        }
        let oracle: Vec<u64> = (0..=n).filter(|&i| is_p[i]).map(|i| i as u64).collect();
        let t = build_prime_table(n as u64).unwrap();
        let got: Vec<u64> = t.iter().collect();
        assert_eq!(got, oracle);
        assert_eq!(t.prime_pi(n as u64).unwrap(), oracle.len() as u64);
    }

    #[test]
    fn pi_of_million() {
        let t = small_table();
        assert_eq!(t.prime_pi(1_000_000).unwrap(), 78_498);
        assert_eq!(t.prime_pi(1).unwrap(), 0);
        assert_eq!(t.prime_pi(10).unwrap(), 4);
        assert!(t.prime_pi(t.limit() + 1).is_err());
    }

    #[test]
    fn nth_prime_values() {
        let t = small_table();
        assert_eq!(t.nth_prime(1).unwrap(), 2);
        assert_eq!(t.nth_prime(100).unwrap(), 541);
        assert_eq!(t.nth_prime(1000).unwrap(), 7919);
        assert!(t.nth_prime(t.count() + 1).is_err());
    }

    #[test]
    fn rank_roundtrip() {
        let t = build_prime_table(10_000).unwrap();
        for i in 1..=t.count() {
            let p = t.nth_prime(i).unwrap();
            assert_eq!(t.prime_index(p).unwrap(), i);
        }
        assert!(t.prime_index(4).is_err());
    }

    #[test]
    fn pi_steps_exactly_at_primes() {
        let t = build_prime_table(500).unwrap();
        for n in 2..=500u64 {
            let step = t.prime_pi(n).unwrap() - t.prime_pi(n - 1).unwrap();
            assert_eq!(step, u64::from(t.is_prime(n).unwrap()));
        }
    }

    #[test]
    fn factorize_basics() {
        let t = small_table();
        assert_eq!(
            factorize(84, &t).unwrap(),
            vec![(2, 2), (3, 1), (7, 1)]
        );
        assert_eq!(factorize(1, &t).unwrap(), vec![]);
        assert_eq!(
            factorize(7919u128 * 7919, &t).unwrap(),
            vec![(7919, 2)]
        );
        assert!(factorize(0, &t).is_err());
    }

    #[test]
    fn factorize_large_remnants() {
        let t = build_prime_table(1000).unwrap();
        // Semiprime with both factors beyond the sieve: rho path.
        let a = 1_000_003u64;
        let b = 1_000_033u64;
        assert_eq!(
            factorize(a as u128 * b as u128, &t).unwrap(),
            vec![(a as u128, 1), (b as u128, 1)]
        );
        // Prime remnant detected by sqrt check.
        let t2 = small_table();
        assert_eq!(
            factorize(2 * 1_000_000_007u128, &t2).unwrap(),
            vec![(2, 1), (1_000_000_007, 1)]
        );
    }

    #[test]
    fn factorize_big_matches_small() {
        let t = small_table();
        let n = BigUint::from(84u32);
        let f = factorize_big(&n, &t).unwrap();
        assert_eq!(f.len(), 3);
        assert_eq!(f[0], (BigUint::from(2u32), 2));
        // A genuinely big input: 2^200 * 3^5
        let big = BigUint::from(2u32).pow(200) * BigUint::from(3u32).pow(5);
        let f = factorize_big(&big, &t).unwrap();
        assert_eq!(f, vec![(BigUint::from(2u32), 200), (BigUint::from(3u32), 5)]);
    }

    #[test]
    fn miller_rabin_agrees_with_sieve() {
        let t = build_prime_table(20_000).unwrap();
        for n in 0..20_000u64 {
            assert_eq!(is_prime_u64(n), t.is_prime(n).unwrap(), "n = {n}");
        }
    }

    #[test]
    fn cipolla_examples() {
        // n = e^e so that log log n = 1: value is e + 1.
        let n = math::exp(core::f64::consts::E);
        let v = cipolla_log_prime(n).unwrap();
        assert!((v - (core::f64::consts::E + 1.0)).abs() < 1e-12);
        // n = 1000: 6.9078 + 1.9326, vs exact log p_1000 = log 7919.
        let v = cipolla_log_prime(1000.0).unwrap();
        assert!((v - 8.8404).abs() < 1e-3);
        let exact = math::ln(7919.0);
        assert!((exact - 8.9770).abs() < 1e-3);
        assert!((v - exact).abs() < 0.2);
        assert!(cipolla_log_prime(1.5).is_err());
    }

    #[test]
    fn cipolla_at_million() {
        let t = build_prime_table(16_000_000).unwrap();
        let p = t.nth_prime(1_000_000).unwrap();
        assert_eq!(p, 15_485_863);
        let v = cipolla_log_prime(1e6).unwrap();
        assert!((v - 16.4414).abs() < 1e-3);
        assert!((math::ln(p as f64) - 16.5556).abs() < 1e-3);
    }

    #[test]
    fn loglog_expansion_examples() {
        // m=3, k=1: log log 3 + (log log 3)/log 3.
        let v = loglog_prime_expansion(3, 1).unwrap();
        let ll3 = math::ln(math::ln(3.0));
        assert!((v - (ll3 + ll3 / math::ln(3.0))).abs() < 1e-12);
        assert!((v - 0.17966).abs() < 1e-4);
        // Exact value at k=1 is far away (documented small-k regime).
        assert!((math::ln(math::ln(5.0)) - 0.47588).abs() < 1e-4);

        // m=2, k=10 spot value from direct term evaluation.
        let v = loglog_prime_expansion(2, 10).unwrap();
        assert!((v - 2.21540).abs() < 1e-4);
        assert!(loglog_prime_expansion(1, 5).is_err());
    }

    #[test]
    fn refined_log_prime_beats_two_term() {
        let t = build_prime_table(16_000_000).unwrap();
        for n in [1000u64, 100_000, 1_000_000] {
            let exact = math::ln(t.nth_prime(n).unwrap() as f64);
            let two = cipolla_log_prime(n as f64).unwrap();
            let refined = log_prime_refined(math::ln(n as f64)).unwrap();
            assert!((refined - exact).abs() < (two - exact).abs() / 5.0);
        }
    }

    #[test]
    fn remainder_ratio_bounded() {
        let t = build_prime_table(20_000_000).unwrap();
        let c = calibrate_remainder_constant(2, &t).unwrap();
        // Every sieve-exact k respects the calibrated bound by construction.
        let mut k = 2u64;
        while 2u64.pow(k as u32) <= t.count() {
            let p = t.nth_prime(2u64.pow(k as u32)).unwrap();
            let exact = math::ln(math::ln(p as f64));
            let approx = loglog_prime_expansion(2, k).unwrap();
            assert!((exact - approx).abs() <= loglog_expansion_remainder_bound(c, k));
            k += 1;
        }
    }
}

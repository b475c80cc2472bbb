//! Exact prime counting and nth-prime resolution beyond the sieve.
//!
//! The lambda systems need `p_{m^k}` for indices far past what any
//! in-memory sieve can reach (`p_{2^41} ≈ 6.9·10^13` already shows up when
//! counting `M_{2,2}` at `x = 10^14`). Sieving that far is hopeless, so
//! `π(x)` is computed with the Lucy_Hedgehog divide recursion
//! (`O(x^{3/4})` time, `O(√x)` space), and a single nth prime is found by
//! anchoring at an inverse-li estimate and walking a short segmented sieve
//! to the requested rank.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use super::PrimeTable;
use crate::math;
use crate::{Error, Result};

/// Hard cap for [`nth_prime_ext`] targets; past this the `O(x^{3/4})`
/// counting pass stops being desk-scale.
pub const MAX_EXT_PRIME: u64 = 1 << 51;

/// Exact `π(x)` for `x` beyond any sieve, via the Lucy_Hedgehog recursion.
///
/// Self-contained: does not need a [`PrimeTable`]. Runtime grows like
/// `x^{3/4}`; `x = 10^12` takes a few seconds, `x = 7·10^13` under a minute.
pub fn prime_pi_big(x: u64) -> u64 {
    if x < 2 {
        return 0;
    }
    let r = math::isqrt_u64(x) as usize;
    // small[v] = S(v) for v <= r; large[i] = S(x / i) for i <= r.
    // S(v) starts at v - 1 (all integers in [2, v]) and after processing
    // all primes p <= sqrt(x) equals pi(v).
    let mut small: Vec<u64> = (0..=r as u64).map(|v| v.saturating_sub(1)).collect();
    let mut large: Vec<u64> = (0..=r as u64)
        .map(|i| if i == 0 { 0 } else { x / i - 1 })
        .collect();

    for p in 2..=r {
        if small[p] == small[p - 1] {
            continue; // composite
        }
        let sp = small[p - 1];
        let p2 = (p * p) as u64;
        let imax = (x / p2).min(r as u64) as usize;
        for i in 1..=imax {
            let ip = i * p;
            let term = if ip <= r {
                large[ip]
            } else {
                small[(x / ip as u64) as usize]
            };
            large[i] -= term - sp;
        }
        // Descending over the small array; v / p tracked incrementally to
        // avoid a division per step.
        let lo = (p * p).min(r + 1);
        if lo <= r {
            let mut w = r / p;
            let mut boundary = w * p;
            for v in (lo..=r).rev() {
                while v < boundary {
                    w -= 1;
                    boundary -= p;
                }
                small[v] -= small[w] - sp;
            }
        }
    }
    large[1]
}

/// Logarithmic integral `li(x)` via the convergent series
/// `li(x) = γ + log log x + Σ_{k≥1} (log x)^k / (k · k!)`.
pub fn li(x: f64) -> f64 {
    const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;
    let lx = math::ln(x);
    let mut sum = EULER_GAMMA + math::ln(lx);
    let mut term = 1.0f64;
    for k in 1..200 {
        let kf = k as f64;
        term *= lx / kf;
        let add = term / kf;
        sum += add;
        if add.abs() < sum.abs() * 1e-17 && k as f64 > lx {
            break;
        }
    }
    sum
}

/// Inverse of [`li`]: the `y` with `li(y) = n`, by Newton iteration.
fn inverse_li(n: f64) -> f64 {
    let ln_n = math::ln(n);
    let mut y = n * (ln_n + math::ln(ln_n) - 1.0);
    for _ in 0..64 {
        let step = (li(y) - n) * math::ln(y);
        y -= step;
        if step.abs() < 0.5 {
            break;
        }
    }
    y
}

/// Exact `p_n` for ranks beyond the sieve.
///
/// Anchors at `E = li^{-1}(n)`, computes `π(E)` exactly with
/// [`prime_pi_big`], then walks segmented-sieve windows until rank `n` is
/// reached. The table only supplies base primes, so its limit must cover
/// `√p_n`.
pub fn nth_prime_ext(n: u64, table: &PrimeTable) -> Result<u64> {
    if n == 0 {
        return Err(Error::Contract("prime rank must be >= 1".into()));
    }
    if n <= table.count() {
        return table.nth_prime(n);
    }
    let estimate = inverse_li(n as f64);
    if !(estimate < MAX_EXT_PRIME as f64) {
        return Err(Error::Capacity(format!(
            "p_{n} ≈ {estimate:.3e} exceeds the extension cap {MAX_EXT_PRIME}"
        )));
    }
    let anchor = estimate as u64;
    // The walk stays within a few windows of the anchor; 64 windows of
    // slack keeps the base-prime requirement honest.
    let root = math::isqrt_u64(anchor.saturating_add(64 * WINDOW)) + 2;
    if root > table.limit() {
        return Err(Error::Capacity(format!(
            "sieve limit {} too small for base primes up to ~{root} (p_{n})",
            table.limit()
        )));
    }
    let rank_at_anchor = prime_pi_big(anchor);
    if rank_at_anchor < n {
        walk_up(anchor, rank_at_anchor, n, table)
    } else {
        walk_down(anchor, rank_at_anchor, n, table)
    }
}

const WINDOW: u64 = 1 << 22;

/// Primality bitset for the odd numbers in `[lo, hi]` (inclusive), by
/// trial marking with the table's base primes.
fn sieve_window(lo: u64, hi: u64, table: &PrimeTable) -> Vec<bool> {
    debug_assert!(lo % 2 == 1 && lo > 2);
    let len = ((hi - lo) / 2 + 1) as usize;
    let mut flags = vec![true; len];
    let root = math::isqrt_u64(hi);
    for p in table.iter().skip(1) {
        if p > root {
            break;
        }
        // First odd multiple of p that is >= max(lo, p*p).
        let start = p * p;
        let mut c = if start >= lo {
            start
        } else {
            let mut c = lo + (p - lo % p) % p;
            if c % 2 == 0 {
                c += p;
            }
            c
        };
        if c % 2 == 0 {
            c += p;
        }
        while c <= hi {
            flags[((c - lo) / 2) as usize] = false;
            c += 2 * p;
        }
    }
    flags
}

fn walk_up(anchor: u64, mut rank: u64, n: u64, table: &PrimeTable) -> Result<u64> {
    let mut lo = anchor + 1 + (anchor % 2); // first odd > anchor
    loop {
        let hi = lo + WINDOW;
        let flags = sieve_window(lo, hi, table);
        for (i, &f) in flags.iter().enumerate() {
            if f {
                rank += 1;
                if rank == n {
                    return Ok(lo + 2 * i as u64);
                }
            }
        }
        lo = hi + 2;
    }
}

fn walk_down(anchor: u64, rank_at_anchor: u64, n: u64, table: &PrimeTable) -> Result<u64> {
    // rank_at_anchor >= n: the target is the (rank_at_anchor - n)-th prime
    // below or equal to anchor, counting down from the largest.
    let mut back = rank_at_anchor - n; // how many primes to skip, from the top
    let mut hi = anchor - ((anchor % 2) ^ 1); // largest odd <= anchor
    loop {
        let lo = hi.saturating_sub(WINDOW) | 1;
        let flags = sieve_window(lo, hi, table);
        for (i, &f) in flags.iter().enumerate().rev() {
            if f {
                if back == 0 {
                    return Ok(lo + 2 * i as u64);
                }
                back -= 1;
            }
        }
        if lo <= 3 {
            return Err(Error::Contract(format!("rank {n} not found walking down")));
        }
        hi = lo - 2;
    }
}

/// Exact `p_{m^k}`, from the sieve when `m^k` is within the table's rank
/// range and via [`nth_prime_ext`] otherwise.
pub fn prime_power_index(m: u64, k: u32, table: &PrimeTable) -> Result<u64> {
    let idx = m
        .checked_pow(k)
        .ok_or_else(|| Error::Capacity(format!("index {m}^{k} overflows u64")))?;
    if idx <= table.count() {
        table.nth_prime(idx)
    } else {
        nth_prime_ext(idx, table)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::primes::build_prime_table;

    #[test]
    fn lucy_matches_sieve() {
        let t = build_prime_table(2_000_000).unwrap();
        for x in [2u64, 10, 100, 1000, 65_536, 1_000_000] {
            assert_eq!(prime_pi_big(x), t.prime_pi(x).unwrap(), "x = {x}");
        }
        assert_eq!(prime_pi_big(0), 0);
        assert_eq!(prime_pi_big(1), 0);
    }

    #[test]
    fn lucy_known_values() {
        // Classical reference values of pi(10^k).
        assert_eq!(prime_pi_big(100_000_000), 5_761_455);
        assert_eq!(prime_pi_big(1_000_000_000), 50_847_534);
    }

    #[test]
    fn li_brackets_pi() {
        // li(x) overshoots pi(x) slightly at these scales.
        let approx = li(1e9);
        assert!((approx - 50_849_234.0).abs() < 100.0);
    }

    #[test]
    fn nth_prime_ext_agrees_with_sieve() {
        let small = build_prime_table(100_000_000).unwrap();
        let big_ranks = [1_000_000u64, 2_000_000, 5_000_000];
        let tiny = build_prime_table(2_000_000).unwrap();
        for n in big_ranks {
            assert!(n > tiny.count());
            let expect = small.nth_prime(n).unwrap();
            assert_eq!(nth_prime_ext(n, &tiny).unwrap(), expect, "n = {n}");
        }
    }

    #[test]
    fn prime_power_index_consistency() {
        let t = build_prime_table(2_000_000).unwrap();
        assert_eq!(prime_power_index(2, 0, &t).unwrap(), 2);
        assert_eq!(prime_power_index(2, 10, &t).unwrap(), 8161);
        assert_eq!(prime_power_index(3, 9, &t).unwrap(), 220_861);
        // Beyond the table's rank range: 2^18 = 262144 > pi(2e6) = 148933.
        assert_eq!(prime_power_index(2, 18, &t).unwrap(), 3_681_131);
    }
}

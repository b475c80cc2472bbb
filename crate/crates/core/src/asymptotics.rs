//! The Tauberian engine and its consequences: the extended Ingham
//! asymptotics for `P(u)` (an extra `B log² u` term in the averaged
//! `N`-expansion), its `α = 1` specialization, the strong asymptotic
//! formula for `M_{2,m}(x)`, the Hardy–Ramanujan cross-check, and the
//! Laplace-side residual diagnostics for both supporting lemmas.
//!
//! Everything is evaluated in the log domain — the formulas overflow
//! doubles almost immediately otherwise.

use alloc::format;

use crate::constants;
use crate::counting::{avg_integral_exact, LambdaSeq, LambdaSystem};
use crate::math;
use crate::primes::PrimeTable;
use crate::{Error, Result};

const PI: f64 = core::f64::consts::PI;

/// Coefficients of the averaged expansion
/// `∫_0^u N(t)/t dt = (A/α) u^α + B log²u + C log u + D + o(1)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExpansionCoefficients {
    pub alpha: f64,
    pub A: f64,
    pub B: f64,
    pub C: f64,
    pub D: f64,
}

impl ExpansionCoefficients {
    /// Requires `alpha > 0` and `A > 0` (the theorem's hypothesis).
    pub fn new(alpha: f64, A: f64, B: f64, C: f64, D: f64) -> Result<Self> {
        if !(alpha > 0.0) || !(A > 0.0) {
            return Err(Error::Contract(format!(
                "expansion needs alpha > 0 and A > 0, got alpha = {alpha}, A = {A}"
            )));
        }
        Ok(ExpansionCoefficients { alpha, A, B, C, D })
    }
}

/// Saddle-point data derived from the expansion coefficients.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SaddleData {
    /// `β = α/(α+1)`.
    pub beta: f64,
    /// `M = (A·α·Γ(α+1)·ζ(α+1))^{1/(α+1)}`.
    pub M: f64,
    /// `D′ = D + (π²/6 − 2γ₁ − γ²)·B`.
    pub Dprime: f64,
}

/// Builds [`SaddleData`] from expansion coefficients.
pub fn derive_saddle(coeffs: &ExpansionCoefficients) -> Result<SaddleData> {
    let a = coeffs.alpha;
    let m = math::powf(
        coeffs.A * a * constants::gamma_fn(a + 1.0)? * constants::zeta(a + 1.0)?,
        1.0 / (a + 1.0),
    );
    Ok(SaddleData {
        beta: a / (a + 1.0),
        M: m,
        Dprime: constants::Dprime(coeffs),
    })
}

/// The saddle point `σ(u) = M·u^{−1/(α+1)}` (inverse of `−φ′`).
pub fn sigma_saddle(sd: &SaddleData, u: f64) -> Result<f64> {
    if !(u > 0.0) {
        return Err(Error::Domain(format!("sigma_saddle requires u > 0, got {u}")));
    }
    Ok(sd.M * math::powf(u, sd.beta - 1.0))
}

/// `log P(u)` from the extended Ingham theorem:
/// `P(u) ∼ ((1−β)/2π)^{1/2} e^{D′} M^{−(C+1/2)} u^{C−βC−β/2}
///         exp(M u^β/β + B log²(u^{1−β}/M))`.
pub fn ingham_logP(coeffs: &ExpansionCoefficients, u: f64) -> Result<f64> {
    if !(u > 1.0) {
        return Err(Error::Domain(format!("ingham_logP requires u > 1, got {u}")));
    }
    let sd = derive_saddle(coeffs)?;
    let (b, m) = (sd.beta, sd.M);
    let c = coeffs.C;
    Ok(0.5 * math::ln((1.0 - b) / (2.0 * PI))
        + sd.Dprime
        - (c + 0.5) * math::ln(m)
        + (c - b * c - b / 2.0) * math::ln(u)
        + m * math::powf(u, b) / b
        + coeffs.B * {
            let t = (1.0 - b) * math::ln(u) - math::ln(m);
            t * t
        })
}

/// `log P(u)` from the `α = 1` corollary:
/// `P(u) ∼ (e^{D′ + B log²(π√(A/6))}/(2√π)) (π√(A/6))^{−(C+1/2)}
///         u^{C/2 − 1/4 − B log(π√(A/6))} exp(π√(2Au/3) + (B/4) log²u)`.
pub fn corollary1_logP(coeffs: &ExpansionCoefficients, u: f64) -> Result<f64> {
    if coeffs.alpha != 1.0 {
        return Err(Error::Contract(format!(
            "corollary applies only to alpha = 1, got {}",
            coeffs.alpha
        )));
    }
    if !(u > 1.0) {
        return Err(Error::Domain(format!(
            "corollary1_logP requires u > 1, got {u}"
        )));
    }
    let dprime = constants::Dprime(coeffs);
    let q = PI * math::sqrt(coeffs.A / 6.0);
    let lq = math::ln(q);
    let lu = math::ln(u);
    Ok(dprime + coeffs.B * lq * lq
        - math::ln(2.0 * math::sqrt(PI))
        - (coeffs.C + 0.5) * lq
        + (coeffs.C / 2.0 - 0.25 - coeffs.B * lq) * lu
        + PI * math::sqrt(2.0 * coeffs.A * u / 3.0)
        + coeffs.B / 4.0 * lu * lu)
}

/// The averaged-expansion coefficients of the prime system
/// `λ_k = log p_{m^k}`: `α = 1`, `A = 1/log m`, `B = −1/(2 log m)`,
/// `C = 1/2`, `D = D_m`.
pub fn lemma44_coeffs(m: u64, table: &PrimeTable) -> Result<ExpansionCoefficients> {
    let log_m = math::ln(m as f64);
    let d = constants::Dm(m, table)?;
    ExpansionCoefficients::new(1.0, 1.0 / log_m, -1.0 / (2.0 * log_m), 0.5, d.value)
}

/// `log M_{2,m}(x)` per the strong asymptotic formula:
/// `M_{2,m}(x) ∼ (e^{K_m}√3 log m/(2π² log 2))
///   (log x)^{log(π/√(6 log m))/(2 log m)}
///   exp(π√(2 log x/(3 log m)) − (log log x)²/(8 log m))`.
pub fn theorem1_logM(m: u64, x: f64, table: &PrimeTable) -> Result<f64> {
    if !(x > core::f64::consts::E) {
        return Err(Error::Domain(format!(
            "theorem1_logM requires x > e, got {x}"
        )));
    }
    theorem1_logM_from_logx(m, math::ln(x), table)
}

/// [`theorem1_logM`] parameterized by `log x`, for arguments past the
/// double-precision range of `x` itself.
pub fn theorem1_logM_from_logx(m: u64, log_x: f64, table: &PrimeTable) -> Result<f64> {
    if !(log_x > 1.0) {
        return Err(Error::Domain(format!(
            "theorem1_logM requires x > e, got log x = {log_x}"
        )));
    }
    let log_m = math::ln(m as f64);
    let km = constants::Km(m, table)?.value;
    let lx = log_x;
    let llx = math::ln(lx);
    Ok(km + math::ln(math::sqrt(3.0) * log_m / (2.0 * PI * PI * core::f64::consts::LN_2))
        + math::ln(PI / math::sqrt(6.0 * log_m)) / (2.0 * log_m) * llx
        + PI * math::sqrt(2.0 * lx / (3.0 * log_m))
        - llx * llx / (8.0 * log_m))
}

/// The weak asymptotic's leading term: `log M_{2,m}(x) ~ π√(2 log x/(3 log m))`.
pub fn weak_logM(m: u64, x: f64) -> Result<f64> {
    if !(x > 1.0) {
        return Err(Error::Domain(format!("weak_logM requires x > 1, got {x}")));
    }
    Ok(PI * math::sqrt(2.0 * math::ln(x) / (3.0 * math::ln(m as f64))))
}

/// `log p(n)` from the refined Hardy–Ramanujan formula
/// `p(n) ∼ e^{π√(2n/3)}/(4√3 n)`.
pub fn hardy_ramanujan_logp(n: u64) -> Result<f64> {
    if n == 0 {
        return Err(Error::Contract("hardy_ramanujan_logp requires n >= 1".into()));
    }
    let nf = n as f64;
    Ok(PI * math::sqrt(2.0 * nf / 3.0) - math::ln(4.0 * math::sqrt(3.0) * nf))
}

/// The log of the Euler-product generating function,
/// `f(σ) = Σ_k −log(1 − e^{−σ λ_k})`, truncated once the geometric tail
/// drops below `eps`.
pub fn laplace_f<S: LambdaSeq>(seq: &S, sigma: f64, eps: f64) -> Result<f64> {
    if !(sigma > 0.0) {
        return Err(Error::Domain(format!("laplace_f requires sigma > 0, got {sigma}")));
    }
    if !(eps > 0.0) {
        return Err(Error::Domain(format!("laplace_f requires eps > 0, got {eps}")));
    }
    let mut sum = 0.0f64;
    let mut i = seq.first_index();
    let mut prev = None;
    loop {
        let lam = seq.lambda_at(i);
        let term = -math::ln_1p(-math::exp(-sigma * lam));
        sum += term;
        // The tail is dominated by a geometric series with ratio
        // e^{−σ·gap}; stop once its sum is below eps.
        if let Some(p) = prev {
            let gap: f64 = lam - p;
            let ratio = math::exp(-sigma * gap);
            if term * ratio / (1.0 - ratio) < eps {
                break;
            }
        }
        prev = Some(lam);
        i += 1;
    }
    Ok(sum)
}

/// Residual of the Laplace-side expansion:
/// `f(σ) − [A Γ(α+1) ζ(α+1)/σ^α + B log²σ − C log σ]`, which must tend to
/// `D′` as `σ → 0⁺` when the averaged expansion holds.
pub fn lemma31_residual_for<S: LambdaSeq>(
    seq: &S,
    coeffs: &ExpansionCoefficients,
    sigma: f64,
) -> Result<f64> {
    if !(sigma > 0.0) {
        return Err(Error::Domain(format!(
            "lemma31_residual requires sigma > 0, got {sigma}"
        )));
    }
    let f = laplace_f(seq, sigma, 1e-13)?;
    let a = coeffs.alpha;
    let main = coeffs.A * constants::gamma_fn(a + 1.0)? * constants::zeta(a + 1.0)?
        / math::powf(sigma, a);
    let ls = math::ln(sigma);
    Ok(f - main - coeffs.B * ls * ls + coeffs.C * ls)
}

/// [`lemma31_residual_for`] with the prime-system coefficients of
/// [`lemma44_coeffs`] (the `D` entry is irrelevant to the residual).
pub fn lemma31_residual(sys: &LambdaSystem, sigma: f64, table: &PrimeTable) -> Result<f64> {
    let coeffs = lemma44_coeffs(sys.m(), table)?;
    lemma31_residual_for(sys, &coeffs, sigma)
}

/// Residual of the averaged expansion on the integral side:
/// `∫_0^u N(t)/t dt − [u/log m − log²u/(2 log m) + (1/2) log u]`, which
/// must tend to `D_m`. The second component flags whether every `λ` used
/// was sieve-exact.
pub fn lemma44_residual(sys: &LambdaSystem, u: f64) -> Result<(f64, bool)> {
    if !(u > core::f64::consts::LN_2) {
        return Err(Error::Domain(format!(
            "lemma44_residual requires u > log 2, got {u}"
        )));
    }
    let log_m = math::ln(sys.m() as f64);
    let step = crate::counting::N_of_u(sys, u);
    // Exact iff every λ_k <= u came from the sieve and the count itself is
    // certain at the truncation boundary.
    let exact = step.exact && step.count <= sys.crossover() + 1;
    let lu = math::ln(u);
    let value =
        avg_integral_exact(sys, u) - (u / log_m - lu * lu / (2.0 * log_m) + 0.5 * lu);
    Ok((value, exact))
}

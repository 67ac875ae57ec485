//! Strongly regular graphs from two-weight codes, certified exactly.
//!
//! The Cayley graph `Γ(C)` of a two-weight code has the codewords as
//! vertices and an edge between `u` and `v` exactly when `w(u−v) = w₁`.
//! [`certify_srg`] builds its adjacency structure and verifies the defining
//! matrix identities
//!
//! ```text
//! AJ = JA = kJ        A² − (λ−μ)A − (k−μ)I = μJ
//! ```
//!
//! over the integers — no floating point eigensolvers. The candidate `(λ,μ)`
//! is read off one adjacent and one non-adjacent vertex pair and then checked
//! globally, entry by entry, via neighbourhood intersections.
//!
//! [`srg_spectrum`] is the purely arithmetic direction: restricted
//! eigenvalues and multiplicities from `(N,k,λ,μ)`, with non-integral cases
//! rejected as verdicts rather than errors. [`derive_code_targets`] turns an
//! admissible spectrum into the weight pair any matching code must carry.

use crate::codes::{weight_enumerator, DistanceMatrix, ExpandedCode};
use crate::rings::WeightTable;
use crate::{Error, Rat, Result};
use serde::{Deserialize, Serialize};
use std::collections::HashMap;

/// Parameters of a strongly regular graph together with its restricted
/// spectrum `ρ₁ < ρ₂` of multiplicities `m₁`, `m₂`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SrgParams {
    pub n: u64,
    pub k: u64,
    pub lambda: u64,
    pub mu: u64,
    pub rho1: i64,
    pub rho2: i64,
    pub m1: u64,
    pub m2: u64,
    /// Whether both the graph and its complement are connected
    /// (`μ ≠ 0` and `μ ≠ k`).
    pub primitive: bool,
}

/// Why a parameter set admits no integral strongly regular spectrum.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SpectrumRejection {
    /// `ρ² − (λ−μ)ρ − (k−μ) = 0` has no integer roots (conference-graph
    /// half-integer cases land here too).
    NonIntegralEigenvalues { discriminant: i64 },
    /// Multiplicities `((N−1)ρ₂ + k)/(ρ₂−ρ₁)` fail to be positive integers.
    NonIntegralMultiplicities,
    /// Degenerate input (`k = 0`, `k ≥ N`, or a double eigenvalue).
    Degenerate(String),
}

impl std::fmt::Display for SpectrumRejection {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SpectrumRejection::NonIntegralEigenvalues { discriminant } => {
                write!(f, "no integral eigenvalues (discriminant {discriminant})")
            }
            SpectrumRejection::NonIntegralMultiplicities => write!(f, "non-integral multiplicities"),
            SpectrumRejection::Degenerate(msg) => write!(f, "degenerate parameters: {msg}"),
        }
    }
}

fn isqrt_exact(v: i64) -> Option<i64> {
    if v < 0 {
        return None;
    }
    let r = (v as f64).sqrt().round() as i64;
    for c in [r - 1, r, r + 1] {
        if c >= 0 && c * c == v {
            return Some(c);
        }
    }
    None
}

/// Solves the eigenvalue equation for `(N,k,λ,μ)` and computes integral
/// multiplicities, rejecting anything non-integral.
pub fn srg_spectrum(n: u64, k: u64, lambda: u64, mu: u64) -> std::result::Result<SrgParams, SpectrumRejection> {
    if k == 0 || k >= n {
        return Err(SpectrumRejection::Degenerate(format!("need N > k > 0, got N={n}, k={k}")));
    }
    let lm = lambda as i64 - mu as i64;
    let km = k as i64 - mu as i64;
    let disc = lm * lm + 4 * km;
    let s = match isqrt_exact(disc) {
        Some(s) => s,
        None => return Err(SpectrumRejection::NonIntegralEigenvalues { discriminant: disc }),
    };
    if (lm + s) % 2 != 0 {
        return Err(SpectrumRejection::NonIntegralEigenvalues { discriminant: disc });
    }
    let rho2 = (lm + s) / 2;
    let rho1 = (lm - s) / 2;
    if rho1 == rho2 {
        return Err(SpectrumRejection::Degenerate("double restricted eigenvalue".into()));
    }
    let diff = rho2 - rho1;
    let num1 = (n as i64 - 1) * rho2 + k as i64;
    let num2 = (n as i64 - 1) * rho1 + k as i64;
    if num1 % diff != 0 || num2 % (-diff) != 0 {
        return Err(SpectrumRejection::NonIntegralMultiplicities);
    }
    let m1 = num1 / diff;
    let m2 = num2 / (-diff);
    if m1 <= 0 || m2 <= 0 {
        return Err(SpectrumRejection::NonIntegralMultiplicities);
    }
    debug_assert_eq!(m1 + m2, n as i64 - 1);
    debug_assert_eq!(m1 * rho1 + m2 * rho2 + k as i64, 0);
    Ok(SrgParams {
        n,
        k,
        lambda,
        mu,
        rho1,
        rho2,
        m1: m1 as u64,
        m2: m2 as u64,
        primitive: mu != 0 && mu != k,
    })
}

/// Outcome of [`certify_srg`]: verified parameters plus the weight pair the
/// adjacency was built from.
#[derive(Clone, Debug)]
pub struct SrgCertificate {
    pub params: SrgParams,
    pub w1: Rat,
    pub w2: Rat,
}

/// Builds the Cayley graph of a two-weight code on the `w₁`-difference
/// relation and certifies strong regularity by the exact matrix identities.
///
/// Fails on codes that are not two-weight, on duplicated codewords, and on
/// any violated identity (which would signal a bug upstream, not a property
/// of valid input). Imprimitive graphs certify with `primitive = false`.
pub fn certify_srg(expanded: &ExpandedCode, weights: &WeightTable) -> Result<SrgCertificate> {
    let enumerator = weight_enumerator(expanded, weights);
    let (w1, w2) = enumerator
        .two_weights()
        .ok_or_else(|| Error::invalid(format!("not a two-weight code: spectrum {:?}", enumerator.spectrum)))?;
    if !expanded.is_faithful() {
        return Err(Error::invalid("codeword list has repetitions; the generator does not have its declared shape"));
    }
    let t = expanded.size();
    let words = expanded.words();
    let index: HashMap<&[u16], usize> = words.iter().enumerate().map(|(i, w)| (w.as_slice(), i)).collect();
    let ring = expanded.ring();
    let n = expanded.length();

    let word_weight: Vec<Rat> = words.iter().map(|w| weights.vector_weight(w)).collect();

    // adjacency bitset rows on u ~ v  ⟺  w(u − v) = w₁
    let stride = t.div_ceil(64);
    let mut rows = vec![0u64; t * stride];
    let mut diff = vec![0u16; n];
    for u in 0..t {
        for v in 0..u {
            for (j, d) in diff.iter_mut().enumerate() {
                *d = ring.sub(words[u][j] as usize, words[v][j] as usize) as u16;
            }
            let d = *index
                .get(diff.as_slice())
                .ok_or_else(|| Error::inconsistent("difference of codewords left the code"))?;
            if word_weight[d] == w1 {
                rows[u * stride + v / 64] |= 1 << (v % 64);
                rows[v * stride + u / 64] |= 1 << (u % 64);
            }
        }
    }

    // AJ = kJ: constant degree
    let degree = |u: usize| -> u64 { rows[u * stride..(u + 1) * stride].iter().map(|w| w.count_ones() as u64).sum() };
    let k = degree(0);
    if k == 0 || k as usize == t - 1 {
        return Err(Error::invalid(format!(
            "graph is {} — not strongly regular",
            if k == 0 { "empty" } else { "complete" }
        )));
    }
    for u in 1..t {
        if degree(u) != k {
            return Err(Error::inconsistent(format!("vertex {u} has degree {} ≠ {k}", degree(u))));
        }
    }

    let adjacent = |u: usize, v: usize| rows[u * stride + v / 64] >> (v % 64) & 1 == 1;
    let common = |u: usize, v: usize| -> u64 {
        rows[u * stride..(u + 1) * stride]
            .iter()
            .zip(&rows[v * stride..(v + 1) * stride])
            .map(|(a, b)| (a & b).count_ones() as u64)
            .sum()
    };

    // read λ and μ off two probe pairs, then verify globally
    let mut lambda = None;
    let mut mu = None;
    'probe: for u in 0..t {
        for v in 0..u {
            if adjacent(u, v) {
                lambda.get_or_insert_with(|| common(u, v));
            } else {
                mu.get_or_insert_with(|| common(u, v));
            }
            if lambda.is_some() && mu.is_some() {
                break 'probe;
            }
        }
    }
    let lambda = lambda.ok_or_else(|| Error::invalid("graph has no edges"))?;
    let mu = mu.ok_or_else(|| Error::invalid("graph is complete"))?;
    for u in 0..t {
        for v in 0..u {
            let c = common(u, v);
            let expect = if adjacent(u, v) { lambda } else { mu };
            if c != expect {
                return Err(Error::inconsistent(format!(
                    "A² identity fails at pair ({u},{v}): {c} common neighbours, expected {expect}"
                )));
            }
        }
    }

    let params = srg_spectrum(t as u64, k, lambda, mu)
        .map_err(|r| Error::inconsistent(format!("certified graph has a non-SRG spectrum: {r}")))?;
    Ok(SrgCertificate { params, w1, w2 })
}

/// The code invariants forced by a graph parameter set at `γ = |R^×|`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeTargets {
    /// `θ = N/(ρ₂−ρ₁)`, the weight gap `w₂ − w₁`.
    pub theta: u64,
    pub w1: u64,
    pub w2: u64,
    /// Frequency of `w₁` (equals `k`).
    pub freq1: u64,
    /// Frequency of `w₂` (equals `N − k − 1`).
    pub freq2: u64,
    /// Code length `n = m₂ / |R^×|` for the given unit count.
    pub n: u64,
    /// The unit count the length was derived for.
    pub unit_count: u64,
}

/// Why no code targets exist for a spectrum / unit-count combination.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum TargetRejection {
    ThetaNotIntegral { n: u64, diff: i64 },
    LengthNotIntegral { m2: u64, unit_count: u64 },
    NonpositiveWeights,
}

impl std::fmt::Display for TargetRejection {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            TargetRejection::ThetaNotIntegral { n, diff } => write!(f, "ρ₂−ρ₁ = {diff} does not divide N = {n}"),
            TargetRejection::LengthNotIntegral { m2, unit_count } => {
                write!(f, "unit count {unit_count} does not divide m₂ = {m2}")
            }
            TargetRejection::NonpositiveWeights => write!(f, "derived weights are not positive"),
        }
    }
}

/// Derives `θ`, the weight pair `(w₁, w₂) = (−(ρ₁+1)θ, −ρ₁θ)`, frequencies
/// and the length `n = m₂/|R^×|` from an integral spectrum.
pub fn derive_code_targets(params: &SrgParams, unit_count: u64) -> std::result::Result<CodeTargets, TargetRejection> {
    let diff = params.rho2 - params.rho1;
    if diff <= 0 || params.n as i64 % diff != 0 {
        return Err(TargetRejection::ThetaNotIntegral { n: params.n, diff });
    }
    let theta = (params.n as i64 / diff) as u64;
    let w1 = -(params.rho1 + 1) * theta as i64;
    let w2 = -params.rho1 * theta as i64;
    if w1 <= 0 || w2 <= 0 {
        return Err(TargetRejection::NonpositiveWeights);
    }
    if unit_count == 0 || params.m2 % unit_count != 0 {
        return Err(TargetRejection::LengthNotIntegral { m2: params.m2, unit_count });
    }
    Ok(CodeTargets {
        theta,
        w1: w1 as u64,
        w2: w2 as u64,
        freq1: params.k,
        freq2: params.n - params.k - 1,
        n: params.m2 / unit_count,
        unit_count,
    })
}

/// One verified identity in an [`EigenReport`].
#[derive(Clone, Debug, Serialize)]
pub struct EigenCheck {
    pub name: &'static str,
    pub detail: String,
}

/// The list of eigenvalue–weight–multiplicity relations verified by
/// [`verify_eigen_relations`].
#[derive(Clone, Debug, Serialize)]
pub struct EigenReport {
    pub checks: Vec<EigenCheck>,
}

/// Verifies every relation between a certified two-weight code and its graph
/// parameters: the three weight/eigenvalue identities, the divisibility of
/// `|C|` by `ρ₂−ρ₁` with the closed weight forms, the `w₁ = d·t`,
/// `w₂ = d(t+1)` factorisation at `γ = |R^×|`, and the multiplicity formulas
/// `m₁ = |C|−1−n|R^×|`, `m₂ = n|R^×|`.
///
/// Any failed identity is reported as a detailed mismatch error; this is the
/// main regression tripwire for the whole pipeline.
pub fn verify_eigen_relations(
    expanded: &ExpandedCode,
    weights: &WeightTable,
    params: &SrgParams,
) -> Result<EigenReport> {
    let enumerator = weight_enumerator(expanded, weights);
    let (w1, w2) = enumerator
        .two_weights()
        .ok_or_else(|| Error::invalid("eigen relations need a two-weight code"))?;
    let mut checks = Vec::new();
    let size = Rat::from_integer(expanded.size() as i64);
    let n = Rat::from_integer(expanded.length() as i64);
    let gamma = weights.gamma();
    let units = Rat::from_integer(expanded.ring().units_count() as i64);
    let rho1 = Rat::from_integer(params.rho1);
    let rho2 = Rat::from_integer(params.rho2);
    let k = Rat::from_integer(params.k as i64);
    let one = Rat::from_integer(1);

    fn expect_in(checks: &mut Vec<EigenCheck>, name: &'static str, lhs: Rat, rhs: Rat) -> Result<()> {
        if lhs != rhs {
            return Err(Error::inconsistent(format!("{name}: {lhs} ≠ {rhs}")));
        }
        checks.push(EigenCheck { name, detail: format!("{lhs} = {rhs}") });
        Ok(())
    }
    macro_rules! expect {
        ($name:expr, $lhs:expr, $rhs:expr) => {
            expect_in(&mut checks, $name, $lhs, $rhs)
        };
    }

    expect!(
        "degree identity (w2-w1)k = w2(|C|-1) - gamma n |C|",
        (w2 - w1) * k,
        w2 * (size - one) - gamma * n * size
    )?;
    expect!("first eigenvalue (w2-w1)rho1 = -w2", (w2 - w1) * rho1, -w2)?;
    expect!(
        "second eigenvalue (w2-w1)rho2 = -w2 + gamma|C|/|units|",
        (w2 - w1) * rho2,
        -w2 + gamma * size / units
    )?;

    let diff = params.rho2 - params.rho1;
    if expanded.size() as i64 % diff != 0 {
        return Err(Error::inconsistent(format!("rho2-rho1 = {diff} does not divide |C| = {}", expanded.size())));
    }
    checks.push(EigenCheck { name: "rho2-rho1 divides |C|", detail: format!("{diff} | {}", expanded.size()) });

    let denom = (rho1 - rho2) * units;
    expect!("closed form w1", w1, gamma * size * (rho1 + one) / denom)?;
    expect!("closed form w2", w2, gamma * size * rho1 / denom)?;

    if gamma == units {
        let d = w2 - w1;
        if !d.is_integer() || expanded.size() as i64 % d.to_integer() != 0 {
            return Err(Error::inconsistent(format!("weight gap {d} is not an integer divisor of |C|")));
        }
        let tpar = -(params.rho1 + 1);
        if tpar <= 0 {
            return Err(Error::inconsistent(format!("t = -(rho1+1) = {tpar} must be positive")));
        }
        expect!("w1 = d t", w1, d * Rat::from_integer(tpar))?;
        expect!("w2 = d (t+1)", w2, d * Rat::from_integer(tpar + 1))?;
    }

    let m2_expect = expanded.length() as u64 * expanded.ring().units_count();
    let m1_expect = expanded.size() as u64 - 1 - m2_expect;
    expect!("m2 = n |units|", Rat::from_integer(params.m2 as i64), Rat::from_integer(m2_expect as i64))?;
    expect!("m1 = |C| - 1 - n |units|", Rat::from_integer(params.m1 as i64), Rat::from_integer(m1_expect as i64))?;

    Ok(EigenReport { checks })
}

/// The exact factorisation `(D − γn|C|·I) · D · (D + (γ|C|/|R^×|)·I) = 0`
/// of the distance matrix, which pins its spectrum to
/// `{γn|C|, 0, −γ|C|/|R^×|}`.
pub fn verify_distance_spectrum(expanded: &ExpandedCode, weights: &WeightTable, d: &DistanceMatrix) -> Result<()> {
    let t = d.size;
    let units = expanded.ring().units_count() as i128;
    let g1 = *weights.gamma().numer() as i128;
    let g2 = *weights.gamma().denom() as i128;
    let den = d.den as i128;
    // everything is scaled by S = den·g2·units so the spectral shifts are integral
    let m: Vec<i128> = d.num.iter().map(|&v| v as i128 * g2 * units).collect();
    let a = g1 * expanded.length() as i128 * t as i128 * den * units;
    let b = g1 * t as i128 * den;

    let mut left = m.clone();
    for i in 0..t {
        left[i * t + i] -= a;
    }
    let mut mid = vec![0i128; t * t];
    for u in 0..t {
        for w in 0..t {
            let lv = left[u * t + w];
            if lv == 0 {
                continue;
            }
            for v in 0..t {
                mid[u * t + v] += lv * m[w * t + v];
            }
        }
    }
    let mut right = m;
    for i in 0..t {
        right[i * t + i] += b;
    }
    for u in 0..t {
        for v in 0..t {
            let mut acc: i128 = 0;
            for w in 0..t {
                acc += mid[u * t + w] * right[w * t + v];
            }
            if acc != 0 {
                return Err(Error::inconsistent(format!("distance spectrum factorisation fails at ({u},{v})")));
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::fixtures::{arc_ring, gf4xgf2_code, z4_hjelmslev_code};
    use crate::codes::{check_code_properties, distance_matrix, LinearCode, Shape};
    use crate::rings::{hom_weight_table, unit_gamma_weights};

    #[test]
    fn spectrum_table_rows() {
        let p = srg_spectrum(96, 45, 24, 18).unwrap();
        assert_eq!((p.rho1, p.m1, p.rho2, p.m2), (-3, 75, 9, 20));

        let p = srg_spectrum(16, 6, 2, 2).unwrap();
        assert_eq!((p.rho1, p.rho2, p.m1, p.m2), (-2, 2, 9, 6));

        let p = srg_spectrum(729, 140, 13, 30).unwrap();
        assert_eq!((p.rho1, p.m1, p.rho2, p.m2), (-22, 140, 5, 588));
    }

    #[test]
    fn pentagon_is_rejected() {
        assert!(matches!(srg_spectrum(5, 2, 0, 1), Err(SpectrumRejection::NonIntegralEigenvalues { .. })));
    }

    #[test]
    fn certify_the_gf4xgf2_example() {
        let exp = gf4xgf2_code().expand().unwrap();
        let w = hom_weight_table(exp.ring(), Rat::from_integer(3)).unwrap();
        assert!(check_code_properties(&exp, &w).all());
        let cert = certify_srg(&exp, &w).unwrap();
        assert_eq!((cert.params.n, cert.params.k, cert.params.lambda, cert.params.mu), (16, 9, 4, 6));
        assert_eq!((cert.params.rho1, cert.params.rho2), (-3, 1));
        assert!(cert.params.primitive);

        // spectrum arithmetic reproduces the eigen-structure of the graph
        let again = srg_spectrum(16, 9, 4, 6).unwrap();
        assert_eq!(again, cert.params);

        verify_eigen_relations(&exp, &w, &cert.params).unwrap();
    }

    #[test]
    fn certify_the_z4_hjelmslev_code() {
        let exp = z4_hjelmslev_code().expand().unwrap();
        let w = unit_gamma_weights(exp.ring());
        let cert = certify_srg(&exp, &w).unwrap();
        assert_eq!((cert.params.n, cert.params.k, cert.params.lambda, cert.params.mu), (16, 6, 2, 2));
        verify_eigen_relations(&exp, &w, &cert.params).unwrap();

        let d = distance_matrix(&exp, &w, 64).unwrap();
        verify_distance_spectrum(&exp, &w, &d).unwrap();
    }

    #[test]
    fn targets_row_96() {
        let p = srg_spectrum(96, 45, 24, 18).unwrap();
        let t = derive_code_targets(&p, 4).unwrap();
        assert_eq!((t.theta, t.w1, t.w2, t.n), (8, 16, 24, 5));
        assert_eq!((t.freq1, t.freq2), (45, 50));
    }

    #[test]
    fn targets_row_729() {
        let p = srg_spectrum(729, 140, 13, 30).unwrap();
        let t = derive_code_targets(&p, p.m2).unwrap();
        assert_eq!((t.theta, t.w1, t.w2), (27, 567, 594));
    }

    #[test]
    fn targets_16_6_2_2() {
        let p = srg_spectrum(16, 6, 2, 2).unwrap();
        let t = derive_code_targets(&p, 2).unwrap();
        assert_eq!((t.theta, t.w1, t.w2, t.n), (4, 4, 8, 3));
    }

    #[test]
    fn target_rejections() {
        let p = srg_spectrum(16, 6, 2, 2).unwrap();
        assert!(matches!(derive_code_targets(&p, 4), Err(TargetRejection::LengthNotIntegral { .. })));
    }

    #[test]
    fn one_weight_code_is_rejected() {
        // {00, 11} over Z2 has a single nonzero weight
        let ring = arc_ring("Z2");
        let code = LinearCode::new(ring, Shape::new(vec![vec![1]]), vec![vec![1, 1]]).unwrap();
        let exp = code.expand().unwrap();
        let w = unit_gamma_weights(exp.ring());
        assert!(certify_srg(&exp, &w).is_err());
    }
}

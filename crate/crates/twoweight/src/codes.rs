//! Left linear codes over products of chain rings.
//!
//! A submodule `C ≤ R^n` over `R = R₁ ⊕ … ⊕ R_s` is classified up to
//! isomorphism by its [`Shape`]: one partition `λᵢ = (λᵢ¹ ≥ λᵢ² ≥ …)` per
//! chain component, with parts bounded by the chain length `ℓᵢ`. Such a code
//! is the row space of a block generator matrix whose row `(i,j)` has entries
//! in the embedded ideal `I(i, λᵢʲ) = θᵢ^{ℓᵢ-λᵢʲ} Rᵢ`, and every codeword is
//! `x·Y` for exactly one coefficient tuple `x` from the product of coset
//! transversals `S(i, λᵢʲ)` of `Rᵢ/θᵢ^{λᵢʲ}Rᵢ`.
//!
//! [`ExpandedCode`] materialises that correspondence: a list of `|C|`
//! codewords indexed by coefficient tuples, on which the property checks
//! (proper / regular / projective), the weight enumerator and the distance
//! matrix operate.
//!
//! # Code file format
//!
//! Text, one record per file, `#` starts a comment:
//!
//! ```text
//! ring GF(4)xGF(2)
//! shape 1;1,1
//! gamma 3
//! 1 1 1
//! 4 4 0
//! 0 4 4
//! ```
//!
//! `shape` lists one partition per component (comma-separated parts,
//! components separated by `;`), and the generator rows are element indices
//! in the ring's positional encoding.

use crate::rings::{build_ring, hom_weight_table, parse_ring_spec, RingSpec, RingTable, WeightTable};
use crate::{Error, Rat, Result};
use num_traits::Zero;
use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::sync::Arc;

/// Isomorphism type of a module over a product of chain rings: one partition
/// per component.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Shape {
    parts: Vec<Vec<u32>>,
}

impl Shape {
    pub fn new(parts: Vec<Vec<u32>>) -> Self {
        Shape { parts }
    }

    pub fn parts(&self) -> &[Vec<u32>] {
        &self.parts
    }

    /// Row count `e₁ + … + e_s` of the block generator matrix.
    pub fn row_count(&self) -> usize {
        self.parts.iter().map(|p| p.len()).sum()
    }

    /// `(component, part)` per generator row, in row order.
    pub fn row_blocks(&self) -> Vec<(usize, u32)> {
        let mut out = Vec::with_capacity(self.row_count());
        for (i, p) in self.parts.iter().enumerate() {
            for &l in p {
                out.push((i, l));
            }
        }
        out
    }

    /// `Π qᵢ^{|λᵢ|}`, the size of a module of this shape.
    pub fn code_size(&self, spec: &RingSpec) -> u64 {
        self.parts
            .iter()
            .zip(spec.components())
            .map(|(p, c)| c.residue_size().pow(p.iter().sum::<u32>()))
            .product()
    }

    /// Partitions must be non-increasing with parts in `1..=ℓᵢ`, one
    /// partition slot per ring component.
    pub fn validate(&self, spec: &RingSpec) -> Result<()> {
        if self.parts.len() != spec.components().len() {
            return Err(Error::invalid(format!(
                "shape has {} partitions but the ring has {} components",
                self.parts.len(),
                spec.components().len()
            )));
        }
        for (i, (p, c)) in self.parts.iter().zip(spec.components()).enumerate() {
            let ell = c.chain_length();
            if p.windows(2).any(|w| w[0] < w[1]) {
                return Err(Error::invalid(format!("partition {i} is not non-increasing: {p:?}")));
            }
            if p.iter().any(|&l| l == 0 || l > ell) {
                return Err(Error::invalid(format!("partition {i} has parts outside 1..={ell}: {p:?}")));
            }
        }
        Ok(())
    }

    /// Formats as the file-format field, e.g. `2,2` or `1;1,1`.
    pub fn to_field(&self) -> String {
        self.parts
            .iter()
            .map(|p| p.iter().map(|l| l.to_string()).collect::<Vec<_>>().join(","))
            .collect::<Vec<_>>()
            .join(";")
    }

    pub fn parse_field(s: &str) -> Result<Self> {
        let parts = s
            .split(';')
            .map(|comp| {
                comp.split(',')
                    .map(|t| t.trim().parse::<u32>().map_err(|_| Error::invalid(format!("bad shape part {t:?}"))))
                    .collect::<Result<Vec<u32>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Shape { parts })
    }
}

/// Fixed linear order on partitions used for the equal-component reduction:
/// first by length, then lexicographically on the parts.
pub fn partition_cmp(a: &[u32], b: &[u32]) -> std::cmp::Ordering {
    a.len().cmp(&b.len()).then_with(|| a.cmp(b))
}

/// All shapes of a module of the given size whose first part equals the
/// chain length in every component (the projective normalisation), with the
/// reduction `λᵢ ≤ λⱼ` for equal components `Rᵢ = Rⱼ`, `i < j`.
///
/// The empty list means no such shape exists.
pub fn enumerate_shapes(spec: &RingSpec, code_size: u64) -> Vec<Shape> {
    fn partitions_with_first(total: u32, first: u32) -> Vec<Vec<u32>> {
        fn rec(rem: u32, max: u32, acc: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
            if rem == 0 {
                out.push(acc.clone());
                return;
            }
            let hi = max.min(rem);
            for part in (1..=hi).rev() {
                acc.push(part);
                rec(rem - part, part, acc, out);
                acc.pop();
            }
        }
        if total < first {
            return Vec::new();
        }
        let mut out = Vec::new();
        let mut acc = vec![first];
        rec(total - first, first, &mut acc, &mut out);
        out
    }
    fn rec(spec: &RingSpec, idx: usize, remaining: u64, chosen: &mut Vec<Vec<u32>>, out: &mut Vec<Shape>) {
        let comps = spec.components();
        if idx == comps.len() {
            if remaining == 1 {
                out.push(Shape::new(chosen.clone()));
            }
            return;
        }
        let q = comps[idx].residue_size();
        let ell = comps[idx].chain_length();
        let mut a = 0u32;
        let mut pw = 1u64;
        while remaining % (pw * q) == 0 {
            pw *= q;
            a += 1;
        }
        for total in ell..=a.max(0) {
            for p in partitions_with_first(total, ell) {
                if idx > 0 && comps[idx - 1] == comps[idx] {
                    let prev = &chosen[idx - 1];
                    if partition_cmp(prev, &p) == std::cmp::Ordering::Greater {
                        continue;
                    }
                }
                chosen.push(p);
                rec(spec, idx + 1, remaining / q.pow(total), chosen, out);
                chosen.pop();
            }
        }
    }
    let mut out = Vec::new();
    let mut chosen: Vec<Vec<u32>> = Vec::with_capacity(spec.components().len());
    rec(spec, 0, code_size, &mut chosen, &mut out);
    out.sort();
    out
}

/// A linear code given by a shape and a block generator matrix.
#[derive(Clone)]
pub struct LinearCode {
    ring: Arc<RingTable>,
    shape: Shape,
    gen: Vec<Vec<u16>>,
    n: usize,
}

impl LinearCode {
    /// Validates the shape against the ring and every generator entry
    /// against its block ideal `I(i, λᵢʲ)`.
    pub fn new(ring: Arc<RingTable>, shape: Shape, gen: Vec<Vec<u16>>) -> Result<Self> {
        shape.validate(ring.spec())?;
        if gen.len() != shape.row_count() {
            return Err(Error::invalid(format!(
                "generator has {} rows but the shape needs {}",
                gen.len(),
                shape.row_count()
            )));
        }
        let n = gen.first().map(|r| r.len()).unwrap_or(0);
        if n == 0 || gen.iter().any(|r| r.len() != n) {
            return Err(Error::invalid("generator rows must be nonempty and of equal length"));
        }
        for (ridx, (row, (comp, lam))) in gen.iter().zip(shape.row_blocks()).enumerate() {
            let ideal = ring.component_ideal(comp, lam);
            for (cidx, &e) in row.iter().enumerate() {
                if e as usize >= ring.order() {
                    return Err(Error::invalid(format!("entry {e} at ({ridx},{cidx}) is out of range")));
                }
                if ideal.binary_search(&e).is_err() {
                    return Err(Error::invalid(format!(
                        "entry {e} at row {ridx}, column {cidx} lies outside the block ideal I({comp},{lam})"
                    )));
                }
            }
        }
        Ok(LinearCode { ring, shape, gen, n })
    }

    pub fn ring(&self) -> &RingTable {
        &self.ring
    }

    pub fn ring_arc(&self) -> Arc<RingTable> {
        Arc::clone(&self.ring)
    }

    pub fn shape(&self) -> &Shape {
        &self.shape
    }

    pub fn generator(&self) -> &[Vec<u16>] {
        &self.gen
    }

    pub fn length(&self) -> usize {
        self.n
    }

    pub fn column(&self, j: usize) -> Vec<u16> {
        self.gen.iter().map(|r| r[j]).collect()
    }

    /// Expected `|C| = Π qᵢ^{|λᵢ|}`.
    pub fn expected_size(&self) -> u64 {
        self.shape.code_size(self.ring.spec())
    }

    /// Materialises the codeword list: one word `x·Y` per coefficient tuple
    /// `x` in the transversal product, in odometer order with row 0 the most
    /// significant digit.
    pub fn expand(&self) -> Result<ExpandedCode> {
        let blocks = self.shape.row_blocks();
        let transversals: Vec<Vec<u16>> =
            blocks.iter().map(|&(i, l)| self.ring.component_transversal(i, l)).collect();
        let t: u64 = transversals.iter().map(|t| t.len() as u64).product();
        if t != self.expected_size() {
            return Err(Error::inconsistent("transversal product does not match the shape size"));
        }
        if t > 1 << 20 {
            return Err(Error::BoundExceeded { what: format!("code size {t}"), limit: 1 << 20 });
        }
        let t = t as usize;
        let m = blocks.len();
        let mut words = Vec::with_capacity(t);
        let mut coeffs = Vec::with_capacity(t);
        let mut digits = vec![0usize; m];
        for _ in 0..t {
            let coeff: Vec<u16> = (0..m).map(|k| transversals[k][digits[k]]).collect();
            let mut word = vec![0u16; self.n];
            for (k, &c) in coeff.iter().enumerate() {
                if c == 0 {
                    continue;
                }
                for (j, w) in word.iter_mut().enumerate() {
                    let prod = self.ring.mul(c as usize, self.gen[k][j] as usize);
                    *w = self.ring.add(*w as usize, prod) as u16;
                }
            }
            words.push(word);
            coeffs.push(coeff);
            // odometer increment, last row fastest
            for k in (0..m).rev() {
                digits[k] += 1;
                if digits[k] < transversals[k].len() {
                    break;
                }
                digits[k] = 0;
            }
        }
        let mut sorted = words.clone();
        sorted.sort_unstable();
        sorted.dedup();
        let distinct = sorted.len() == words.len();
        Ok(ExpandedCode { code: self.clone(), words, coeffs, distinct })
    }
}

/// A code together with its full codeword list.
pub struct ExpandedCode {
    code: LinearCode,
    words: Vec<Vec<u16>>,
    coeffs: Vec<Vec<u16>>,
    distinct: bool,
}

impl ExpandedCode {
    pub fn code(&self) -> &LinearCode {
        &self.code
    }

    pub fn ring(&self) -> &RingTable {
        self.code.ring()
    }

    /// Codewords in coefficient order, `|C|` of them (with repetitions if
    /// the generator fails to have the declared shape).
    pub fn words(&self) -> &[Vec<u16>] {
        &self.words
    }

    /// Coefficient tuple that produced each word.
    pub fn coefficients(&self) -> &[Vec<u16>] {
        &self.coeffs
    }

    pub fn size(&self) -> usize {
        self.words.len()
    }

    /// Whether the `x ↦ xY` correspondence is one-to-one.
    pub fn is_faithful(&self) -> bool {
        self.distinct
    }

    pub fn length(&self) -> usize {
        self.code.length()
    }
}

/// The proper / regular / projective property flags.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CodeProperties {
    /// No nonzero codeword of weight zero.
    pub proper: bool,
    /// Every column's entries generate `R` as an ideal.
    pub regular: bool,
    /// The cyclic modules `yᵢR` of distinct columns are distinct.
    pub projective: bool,
}

impl CodeProperties {
    pub fn all(&self) -> bool {
        self.proper && self.regular && self.projective
    }
}

/// Checks the three property flags of a code against a weight table.
pub fn check_code_properties(expanded: &ExpandedCode, weights: &WeightTable) -> CodeProperties {
    let ring = expanded.ring();
    let proper = expanded
        .words()
        .iter()
        .all(|w| !weights.vector_weight(w).is_zero() || w.iter().all(|&x| x == 0));

    let code = expanded.code();
    let regular = (0..code.length()).all(|j| column_generates_ring(ring, &code.column(j)));

    let mut orbits: Vec<Vec<u16>> = (0..code.length())
        .map(|j| {
            let col = code.column(j);
            let mut orbit: Vec<Vec<u16>> = (0..ring.order())
                .map(|r| col.iter().map(|&e| ring.mul(e as usize, r) as u16).collect())
                .collect();
            orbit.sort_unstable();
            orbit.dedup();
            orbit.concat()
        })
        .collect();
    orbits.sort_unstable();
    let before = orbits.len();
    orbits.dedup();
    let projective = orbits.len() == before;

    CodeProperties { proper, regular, projective }
}

/// Whether the entries of a column generate the whole ring as an ideal:
/// componentwise, some entry must be a unit of that chain component.
pub fn column_generates_ring(ring: &RingTable, col: &[u16]) -> bool {
    let s = ring.component_count();
    let one = ring.decode(ring.one());
    let mut covered = vec![false; s];
    for &e in col {
        let d = ring.decode(e as usize);
        for (i, &local) in d.iter().enumerate() {
            if covered[i] {
                continue;
            }
            let mut probe = one.clone();
            probe[i] = local;
            if ring.is_unit(ring.encode(&probe)) {
                covered[i] = true;
            }
        }
    }
    covered.into_iter().all(|c| c)
}

/// Exact homogeneous weight spectrum.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightEnumerator {
    pub gamma: Rat,
    pub spectrum: BTreeMap<Rat, u64>,
}

impl WeightEnumerator {
    /// The two nonzero weights `(w₁, w₂)`, when the spectrum has exactly two.
    pub fn two_weights(&self) -> Option<(Rat, Rat)> {
        let nz: Vec<Rat> = self.spectrum.keys().filter(|w| !w.is_zero()).cloned().collect();
        match nz.as_slice() {
            [a, b] => Some((*a, *b)),
            _ => None,
        }
    }

    pub fn count(&self, w: Rat) -> u64 {
        self.spectrum.get(&w).copied().unwrap_or(0)
    }

    pub fn total(&self) -> u64 {
        self.spectrum.values().sum()
    }
}

pub fn weight_enumerator(expanded: &ExpandedCode, weights: &WeightTable) -> WeightEnumerator {
    let mut spectrum: BTreeMap<Rat, u64> = BTreeMap::new();
    for w in expanded.words() {
        *spectrum.entry(weights.vector_weight(w)).or_insert(0) += 1;
    }
    WeightEnumerator { gamma: weights.gamma(), spectrum }
}

/// Dense symmetric distance matrix `D_{uv} = w(u − v)`, stored as integer
/// numerators over a common denominator.
pub struct DistanceMatrix {
    pub size: usize,
    /// Row-major numerators.
    pub num: Vec<i64>,
    /// Common denominator.
    pub den: i64,
}

impl DistanceMatrix {
    pub fn entry(&self, u: usize, v: usize) -> Rat {
        Rat::new(self.num[u * self.size + v], self.den)
    }

    pub fn row_sum(&self, u: usize) -> Rat {
        let s: i64 = self.num[u * self.size..(u + 1) * self.size].iter().sum();
        Rat::new(s, self.den)
    }
}

pub const DEFAULT_MATRIX_BOUND: usize = 4096;

/// Builds `D` for an expanded code; memory is quadratic in `|C|`, so the
/// size is capped (default [`DEFAULT_MATRIX_BOUND`]).
pub fn distance_matrix(expanded: &ExpandedCode, weights: &WeightTable, cap: usize) -> Result<DistanceMatrix> {
    let t = expanded.size();
    if t > cap {
        return Err(Error::BoundExceeded { what: format!("distance matrix for |C| = {t}"), limit: cap as u64 });
    }
    let ring = expanded.ring();
    let den = weights.weights().iter().fold(1i64, |acc, w| num_integer::lcm(acc, *w.denom()));
    let scaled: Vec<i64> = weights.weights().iter().map(|w| (w * Rat::from_integer(den)).to_integer()).collect();
    let words = expanded.words();
    let n = expanded.length();
    let mut num = vec![0i64; t * t];
    for u in 0..t {
        for v in 0..u {
            let mut acc = 0i64;
            for j in 0..n {
                let d = ring.sub(words[u][j] as usize, words[v][j] as usize);
                acc += scaled[d];
            }
            num[u * t + v] = acc;
            num[v * t + u] = acc;
        }
    }
    Ok(DistanceMatrix { size: t, num, den })
}

/// The two exact matrix identities satisfied by every regular projective
/// code: `DJ = γn|C|·J` and `D² + (|C|γ/|R^×|)·D = nγ²|C|(1/|R^×| + n)·J`.
pub fn verify_distance_identities(expanded: &ExpandedCode, weights: &WeightTable, d: &DistanceMatrix) -> Result<()> {
    let t = d.size;
    let n = Rat::from_integer(expanded.length() as i64);
    let size = Rat::from_integer(t as i64);
    let gamma = weights.gamma();
    let units = Rat::from_integer(expanded.ring().units_count() as i64);

    let row_target = gamma * n * size;
    for u in 0..t {
        if d.row_sum(u) != row_target {
            return Err(Error::inconsistent(format!("row {u} of D sums to {}, expected {row_target}", d.row_sum(u))));
        }
    }

    let lin = size * gamma / units;
    let rhs = n * gamma * gamma * size * (Rat::from_integer(1) / units + n);
    let den2 = Rat::from_integer(d.den * d.den);
    let den1 = Rat::from_integer(d.den);
    for u in 0..t {
        for v in 0..t {
            let mut sq = 0i64;
            for w in 0..t {
                sq += d.num[u * t + w] * d.num[w * t + v];
            }
            let val = Rat::from_integer(sq) / den2 + lin * Rat::from_integer(d.num[u * t + v]) / den1;
            if val != rhs {
                return Err(Error::inconsistent(format!("quadratic identity fails at ({u},{v}): {val} ≠ {rhs}")));
            }
        }
    }
    Ok(())
}

/// Canonical form of a code under monomial equivalence (column permutations
/// composed with per-column unit scalings): the lexicographically least
/// sorted codeword list over the whole orbit. Brute force, so the orbit size
/// `n! · |R^×|^n` is capped.
pub fn monomial_canonical_form(expanded: &ExpandedCode, cap: u64) -> Result<Vec<Vec<u16>>> {
    let n = expanded.length();
    let ring = expanded.ring();
    let units: Vec<u16> = ring.units().to_vec();
    let perms_count: u64 = (1..=n as u64).product();
    let orbit = perms_count.saturating_mul((units.len() as u64).saturating_pow(n as u32));
    if orbit > cap {
        return Err(Error::BoundExceeded { what: format!("monomial orbit of size {orbit}"), limit: cap });
    }
    let mut perm: Vec<usize> = (0..n).collect();
    let mut best: Option<Vec<Vec<u16>>> = None;
    loop {
        let mut scale = vec![0usize; n];
        loop {
            let mut imgs: Vec<Vec<u16>> = expanded
                .words()
                .iter()
                .map(|w| {
                    (0..n)
                        .map(|j| ring.mul(w[perm[j]] as usize, units[scale[j]] as usize) as u16)
                        .collect()
                })
                .collect();
            imgs.sort_unstable();
            if best.as_ref().map_or(true, |b| imgs < *b) {
                best = Some(imgs);
            }
            // odometer over unit scalings
            let mut done = true;
            for s in scale.iter_mut() {
                *s += 1;
                if *s < units.len() {
                    done = false;
                    break;
                }
                *s = 0;
            }
            if done {
                break;
            }
        }
        if !next_permutation(&mut perm) {
            break;
        }
    }
    Ok(best.expect("orbit is nonempty"))
}

fn next_permutation(p: &mut [usize]) -> bool {
    let n = p.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

// --- file format -------------------------------------------------------------

/// Parsed `.code` file prior to ring construction.
#[derive(Clone, Debug)]
pub struct CodeFile {
    pub ring: RingSpec,
    pub shape: Shape,
    pub gamma: Rat,
    pub rows: Vec<Vec<u16>>,
}

pub fn parse_rational(s: &str) -> Result<Rat> {
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n: i64 = n.trim().parse().map_err(|_| Error::invalid(format!("bad rational {s:?}")))?;
        let d: i64 = d.trim().parse().map_err(|_| Error::invalid(format!("bad rational {s:?}")))?;
        if d == 0 {
            return Err(Error::invalid("zero denominator"));
        }
        Ok(Rat::new(n, d))
    } else {
        let n: i64 = s.parse().map_err(|_| Error::invalid(format!("bad rational {s:?}")))?;
        Ok(Rat::from_integer(n))
    }
}

pub fn format_rational(r: Rat) -> String {
    if r.is_integer() {
        r.to_integer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn read_code_file(text: &str) -> Result<CodeFile> {
    let mut ring = None;
    let mut shape = None;
    let mut gamma = None;
    let mut rows: Vec<Vec<u16>> = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix("ring ") {
            ring = Some(parse_ring_spec(rest.trim())?);
        } else if let Some(rest) = line.strip_prefix("shape ") {
            shape = Some(Shape::parse_field(rest.trim())?);
        } else if let Some(rest) = line.strip_prefix("gamma ") {
            gamma = Some(parse_rational(rest)?);
        } else {
            let row = line
                .split_whitespace()
                .map(|t| {
                    t.parse::<u16>()
                        .map_err(|_| Error::invalid(format!("line {}: bad element index {t:?}", lineno + 1)))
                })
                .collect::<Result<Vec<u16>>>()?;
            rows.push(row);
        }
    }
    Ok(CodeFile {
        ring: ring.ok_or_else(|| Error::invalid("missing 'ring' line"))?,
        shape: shape.ok_or_else(|| Error::invalid("missing 'shape' line"))?,
        gamma: gamma.ok_or_else(|| Error::invalid("missing 'gamma' line"))?,
        rows,
    })
}

pub fn write_code_file(code: &LinearCode, gamma: Rat) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "ring {}", code.ring().spec());
    let _ = writeln!(out, "shape {}", code.shape().to_field());
    let _ = writeln!(out, "gamma {}", format_rational(gamma));
    for row in code.generator() {
        let _ = writeln!(out, "{}", row.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(" "));
    }
    out
}

/// Loads a `.code` file into an expanded code plus its weight table.
pub fn load_code(text: &str) -> Result<(ExpandedCode, WeightTable)> {
    let file = read_code_file(text)?;
    let ring = Arc::new(build_ring(&file.ring)?);
    let weights = hom_weight_table(&ring, file.gamma)?;
    let code = LinearCode::new(ring, file.shape, file.rows)?;
    Ok((code.expand()?, weights))
}

#[cfg(test)]
pub(crate) mod fixtures {
    use super::*;

    pub fn arc_ring(s: &str) -> Arc<RingTable> {
        Arc::new(build_ring(&parse_ring_spec(s).unwrap()).unwrap())
    }

    /// Canonical three-row generator of the GF(4)xGF(2) length-3 example:
    /// rows (1,0)(1,0)(1,0) / (0,1)(0,1)(0,0) / (0,0)(0,1)(0,1) in the
    /// little-endian product encoding (GF(4) digit first).
    pub fn gf4xgf2_code() -> LinearCode {
        let ring = arc_ring("GF(4)xGF(2)");
        let shape = Shape::new(vec![vec![1], vec![1, 1]]);
        LinearCode::new(ring, shape, vec![vec![1, 1, 1], vec![4, 4, 0], vec![0, 4, 4]]).unwrap()
    }

    /// Length-3 two-weight code over Z4: one point per neighbour class of
    /// the projective Hjelmslev line.
    pub fn z4_hjelmslev_code() -> LinearCode {
        let ring = arc_ring("Z4");
        let shape = Shape::new(vec![vec![2, 2]]);
        LinearCode::new(ring, shape, vec![vec![1, 0, 1], vec![0, 1, 1]]).unwrap()
    }
}

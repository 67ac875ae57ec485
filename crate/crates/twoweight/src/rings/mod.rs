//! Finite Frobenius rings as explicit operation tables.
//!
//! The rings handled here are exactly the direct products of finite chain
//! rings. A [`RingSpec`] names such a product through a small text grammar,
//! [`build_ring`] materialises it as a [`RingTable`] (operation tables, unit
//! group, principal ideal lattice, Möbius function, generating character),
//! and [`hom_weight_table`] derives the homogeneous weight
//!
//! ```text
//! w(x) = γ · (1 − μ(0, Rx) / |R^× x|)
//! ```
//!
//! from the Möbius function of the principal-ideal poset.
//!
//! # Ring-spec grammar
//!
//! ASCII, case-sensitive; products are joined with a lowercase `x`:
//!
//! * `GF(q)` or `GF(p^k)` — the finite field with `q = p^k` elements,
//! * `Z<n>` or `Z(p^m)` — integers modulo `n`; composite `n` splits into its
//!   prime-power factors, so `Z6` and `Z2xZ3` name the same product,
//! * `ZX(p,e)` — the truncated polynomial ring `Z_p[X]/(X^e)`, `e ∈ {2,3}`,
//! * `W(p,a)` — `Z_{p²}[X]/(X² − αp, X³)` with `a = 1` for `α = 1` and
//!   `a = n` for a non-square `α` (odd `p` only),
//! * `GR(c,r)` — the Galois ring of characteristic `c = p²` and rank `r`
//!   (so `GR(4,2)` is the chain ring of order 16 with residue field `GF(4)`).
//!
//! Chain components of length four or more (for example `Z16`) are outside
//! the catalog and rejected.

mod chain;
mod table;
mod weight;

pub use table::{
    build_ring, build_ring_bounded, verify_frobenius, verify_generating_character, FrobeniusCertificate, IdealInfo,
    RingTable,
};
pub use weight::{character_weight_crosscheck, hom_weight_table, unit_gamma_weights, verify_product_rule, WeightTable};

pub(crate) use chain::prime_power;

use crate::{Error, Result};
use serde::{Deserialize, Serialize};
use std::fmt;

/// Default bound on the order of a ring that [`build_ring`] will materialise.
pub const DEFAULT_MAX_ORDER: u64 = 2048;

/// One finite chain ring from the supported catalog.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ChainSpec {
    /// `GF(p^k)`.
    Field { p: u64, k: u32 },
    /// `Z_{p^m}` with `m ≤ 3`.
    IntegerResidue { p: u64, m: u32 },
    /// `Z_p[X]/(X^e)` with `e ∈ {2,3}`.
    TruncatedPoly { p: u64, e: u32 },
    /// `Z_{p²}[X]/(X² − αp, X³)`; `nonsquare` selects the non-square class
    /// of `α` modulo `p` (odd `p` only).
    Witt { p: u64, nonsquare: bool },
    /// `GR(p², r)`, the Galois ring of characteristic `p²` and rank `r`.
    GaloisRing { p: u64, r: u32 },
}

impl ChainSpec {
    /// Number of elements.
    pub fn order(&self) -> u64 {
        match *self {
            ChainSpec::Field { p, k } => p.pow(k),
            ChainSpec::IntegerResidue { p, m } => p.pow(m),
            ChainSpec::TruncatedPoly { p, e } => p.pow(e),
            ChainSpec::Witt { p, .. } => p.pow(3),
            ChainSpec::GaloisRing { p, r } => p.pow(2 * r),
        }
    }

    /// Residue field size `q`.
    pub fn residue_size(&self) -> u64 {
        match *self {
            ChainSpec::Field { p, k } => p.pow(k),
            ChainSpec::IntegerResidue { p, .. } => p,
            ChainSpec::TruncatedPoly { p, .. } => p,
            ChainSpec::Witt { p, .. } => p,
            ChainSpec::GaloisRing { p, r } => p.pow(r),
        }
    }

    /// Chain length `ℓ`, so `order = q^ℓ`.
    pub fn chain_length(&self) -> u32 {
        match *self {
            ChainSpec::Field { .. } => 1,
            ChainSpec::IntegerResidue { m, .. } => m,
            ChainSpec::TruncatedPoly { e, .. } => e,
            ChainSpec::Witt { .. } => 3,
            ChainSpec::GaloisRing { .. } => 2,
        }
    }

    /// Size of the unit group, `q^{ℓ-1}(q-1)`.
    pub fn units_count(&self) -> u64 {
        let q = self.residue_size();
        q.pow(self.chain_length() - 1) * (q - 1)
    }

    /// The underlying prime.
    pub fn prime(&self) -> u64 {
        match *self {
            ChainSpec::Field { p, .. }
            | ChainSpec::IntegerResidue { p, .. }
            | ChainSpec::TruncatedPoly { p, .. }
            | ChainSpec::Witt { p, .. }
            | ChainSpec::GaloisRing { p, .. } => p,
        }
    }

    /// `s` such that the minimal ideal (the socle) has size `p^s`.
    pub fn socle_exponent(&self) -> u32 {
        match *self {
            ChainSpec::Field { k, .. } => k,
            ChainSpec::GaloisRing { r, .. } => r,
            _ => 1,
        }
    }

    /// Whether this chain ring is a finite field.
    pub fn is_field(&self) -> bool {
        self.chain_length() == 1
    }
}

impl fmt::Display for ChainSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            ChainSpec::Field { p, k } => write!(f, "GF({})", p.pow(k)),
            ChainSpec::IntegerResidue { p, m } => write!(f, "Z{}", p.pow(m)),
            ChainSpec::TruncatedPoly { p, e } => write!(f, "ZX({p},{e})"),
            ChainSpec::Witt { p, nonsquare } => write!(f, "W({p},{})", if nonsquare { "n" } else { "1" }),
            ChainSpec::GaloisRing { p, r } => write!(f, "GR({},{r})", p * p),
        }
    }
}

/// A direct product of chain rings. A single chain ring is the product with
/// one component.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RingSpec {
    components: Vec<ChainSpec>,
}

impl RingSpec {
    pub fn new(components: Vec<ChainSpec>) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::invalid("a ring spec needs at least one component"));
        }
        Ok(RingSpec { components })
    }

    pub fn single(c: ChainSpec) -> Self {
        RingSpec { components: vec![c] }
    }

    pub fn components(&self) -> &[ChainSpec] {
        &self.components
    }

    pub fn order(&self) -> u64 {
        self.components.iter().map(|c| c.order()).product()
    }

    pub fn units_count(&self) -> u64 {
        self.components.iter().map(|c| c.units_count()).product()
    }

    /// Whether the whole ring is a finite field (a single field component).
    pub fn is_field(&self) -> bool {
        self.components.len() == 1 && self.components[0].is_field()
    }

    /// Sorts the components into the canonical catalog order. Used when
    /// generating candidate rings so that equal products compare equal.
    pub fn canonicalize(mut self) -> Self {
        self.components.sort();
        self
    }

    /// Regroups the components by their underlying prime. Each returned
    /// entry `(p, R_p)` is the product of all components of `p`-power order,
    /// so the result is the primary decomposition of the ring.
    pub fn primary_decomposition(&self) -> Vec<(u64, RingSpec)> {
        let mut primes: Vec<u64> = self.components.iter().map(|c| c.prime()).collect();
        primes.sort_unstable();
        primes.dedup();
        primes
            .into_iter()
            .map(|p| {
                let comps: Vec<ChainSpec> =
                    self.components.iter().filter(|c| c.prime() == p).cloned().collect();
                (p, RingSpec { components: comps })
            })
            .collect()
    }

    /// Minimal (right) ideal sizes grouped per primary component: for each
    /// prime, the sorted distinct exponents `s` with a minimal ideal of size
    /// `p^s`.
    pub fn min_ideal_exponents(&self) -> Vec<(u64, Vec<u32>)> {
        self.primary_decomposition()
            .into_iter()
            .map(|(p, rp)| {
                let mut s: Vec<u32> = rp.components.iter().map(|c| c.socle_exponent()).collect();
                s.sort_unstable();
                s.dedup();
                (p, s)
            })
            .collect()
    }
}

impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.components.iter().enumerate() {
            if i > 0 {
                write!(f, "x")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

/// Parses the ring-spec grammar. Errors carry the byte position of the
/// offending token.
pub fn parse_ring_spec(text: &str) -> Result<RingSpec> {
    let text = text.trim();
    if text.is_empty() {
        return Err(Error::syntax(0, "empty ring spec"));
    }
    // split on 'x' at parenthesis depth 0
    let mut parts: Vec<(usize, &str)> = Vec::new();
    let mut depth = 0usize;
    let mut start = 0usize;
    for (i, ch) in text.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => {
                if depth == 0 {
                    return Err(Error::syntax(i, "unbalanced ')'"));
                }
                depth -= 1;
            }
            'x' if depth == 0 => {
                parts.push((start, &text[start..i]));
                start = i + 1;
            }
            _ => {}
        }
    }
    if depth != 0 {
        return Err(Error::syntax(text.len(), "unbalanced '('"));
    }
    parts.push((start, &text[start..]));

    let mut components = Vec::new();
    for (pos, part) in parts {
        if part.is_empty() {
            return Err(Error::syntax(pos, "empty product factor"));
        }
        components.extend(parse_atom(pos, part)?);
    }
    RingSpec::new(components)
}

fn parse_atom(pos: usize, atom: &str) -> Result<Vec<ChainSpec>> {
    if let Some(rest) = atom.strip_prefix("GF(") {
        let inner = strip_close(pos, atom, rest)?;
        let (p, k) = parse_prime_power(pos + 3, inner)?;
        return Ok(vec![ChainSpec::Field { p, k }]);
    }
    if let Some(rest) = atom.strip_prefix("GR(") {
        let inner = strip_close(pos, atom, rest)?;
        let (c, r) = split2(pos + 3, inner)?;
        let cval = parse_u64(pos + 3, c)?;
        let rval = parse_u64(pos + 3, r)? as u32;
        let (p, e) = prime_power(cval).ok_or_else(|| Error::syntax(pos + 3, format!("GR characteristic {cval} is not a prime power")))?;
        if e != 2 {
            return Err(Error::UnsupportedRing(format!("GR({cval},{rval}): only characteristic p² Galois rings are supported")));
        }
        if rval == 0 {
            return Err(Error::syntax(pos + 3, "GR rank must be positive"));
        }
        if rval == 1 {
            return Ok(vec![ChainSpec::IntegerResidue { p, m: 2 }]);
        }
        return Ok(vec![ChainSpec::GaloisRing { p, r: rval }]);
    }
    if let Some(rest) = atom.strip_prefix("ZX(") {
        let inner = strip_close(pos, atom, rest)?;
        let (ps, es) = split2(pos + 3, inner)?;
        let p = parse_u64(pos + 3, ps)?;
        let e = parse_u64(pos + 3, es)? as u32;
        if !(2..=3).contains(&e) {
            return Err(Error::UnsupportedRing(format!("ZX({p},{e}): truncation exponent must be 2 or 3")));
        }
        return Ok(vec![ChainSpec::TruncatedPoly { p, e }]);
    }
    if let Some(rest) = atom.strip_prefix("W(") {
        let inner = strip_close(pos, atom, rest)?;
        let (ps, a) = split2(pos + 2, inner)?;
        let p = parse_u64(pos + 2, ps)?;
        let nonsquare = match a {
            "1" => false,
            "n" => true,
            other => return Err(Error::syntax(pos + 2, format!("W square class must be 1 or n, got {other:?}"))),
        };
        if nonsquare && p == 2 {
            return Err(Error::UnsupportedRing("W(2,n): the non-square variant exists only for odd p".into()));
        }
        return Ok(vec![ChainSpec::Witt { p, nonsquare }]);
    }
    if let Some(rest) = atom.strip_prefix("Z(") {
        let inner = strip_close(pos, atom, rest)?;
        let (p, m) = parse_prime_power(pos + 2, inner)?;
        return residue_components(p.pow(m));
    }
    if let Some(digits) = atom.strip_prefix('Z') {
        let n = parse_u64(pos + 1, digits)?;
        return residue_components_of(n);
    }
    Err(Error::syntax(pos, format!("unrecognized ring atom {atom:?}")))
}

/// `Z_n` for composite `n` splits into its coprime prime-power factors.
fn residue_components_of(n: u64) -> Result<Vec<ChainSpec>> {
    if n < 2 {
        return Err(Error::UnsupportedRing(format!("Z{n} is not a supported ring")));
    }
    let mut out = Vec::new();
    let mut m = n;
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            let mut e = 0u32;
            while m % p == 0 {
                m /= p;
                e += 1;
            }
            out.extend(residue_components(p.pow(e))?);
        }
        p += 1;
    }
    if m > 1 {
        out.extend(residue_components(m)?);
    }
    Ok(out)
}

fn residue_components(q: u64) -> Result<Vec<ChainSpec>> {
    let (p, m) = prime_power(q).expect("argument is a prime power");
    if m > 3 {
        return Err(Error::UnsupportedRing(format!("Z{q}: chain rings of length {m} ≥ 4 are outside the catalog")));
    }
    Ok(vec![ChainSpec::IntegerResidue { p, m }])
}

fn strip_close<'a>(pos: usize, atom: &str, rest: &'a str) -> Result<&'a str> {
    rest.strip_suffix(')')
        .ok_or_else(|| Error::syntax(pos + atom.len(), "expected ')'"))
}

fn split2(pos: usize, inner: &str) -> Result<(&str, &str)> {
    let mut it = inner.splitn(2, ',');
    let a = it.next().unwrap_or("");
    let b = it.next().ok_or_else(|| Error::syntax(pos, "expected two comma-separated arguments"))?;
    Ok((a.trim(), b.trim()))
}

fn parse_u64(pos: usize, s: &str) -> Result<u64> {
    s.trim().parse::<u64>().map_err(|_| Error::syntax(pos, format!("expected an integer, got {s:?}")))
}

/// Accepts either `q` (a prime power) or the explicit form `p^k`.
fn parse_prime_power(pos: usize, s: &str) -> Result<(u64, u32)> {
    if let Some((ps, ks)) = s.split_once('^') {
        let p = parse_u64(pos, ps)?;
        let k = parse_u64(pos, ks)? as u32;
        match prime_power(p) {
            Some((_, 1)) if k >= 1 => Ok((p, k)),
            _ => Err(Error::syntax(pos, format!("{p} must be prime in {s:?}"))),
        }
    } else {
        let q = parse_u64(pos, s)?;
        prime_power(q).ok_or_else(|| Error::syntax(pos, format!("{q} is not a prime power")))
    }
}

/// Constraints for [`catalog_primary_rings`].
#[derive(Clone, Debug, Default)]
pub struct CatalogConstraints {
    /// Exact size of the unit group.
    pub unit_count: Option<u64>,
    /// Requires a minimal ideal of exactly this size.
    pub min_ideal_size: Option<u64>,
    /// Drops rings that are finite fields.
    pub exclude_fields: bool,
}

/// All finite Frobenius rings of order `p^order_exp`, `order_exp ≤ 3`, up to
/// isomorphism. These are exactly the direct products of chain rings of that
/// order; the non-trivial classification input is that every Frobenius ring
/// of order dividing `p³` is such a product.
pub fn catalog_primary_rings(p: u64, order_exp: u32, constraints: &CatalogConstraints) -> Result<Vec<RingSpec>> {
    if prime_power(p) != Some((p, 1)) {
        return Err(Error::invalid(format!("{p} is not prime")));
    }
    let zp = ChainSpec::IntegerResidue { p, m: 1 };
    let rows: Vec<Vec<ChainSpec>> = match order_exp {
        1 => vec![vec![zp]],
        2 => vec![
            vec![ChainSpec::TruncatedPoly { p, e: 2 }],
            vec![ChainSpec::Field { p, k: 2 }],
            vec![zp.clone(), zp],
            vec![ChainSpec::IntegerResidue { p, m: 2 }],
        ],
        3 => {
            let mut rows = vec![
                vec![ChainSpec::Field { p, k: 3 }],
                vec![ChainSpec::TruncatedPoly { p, e: 3 }],
                vec![zp.clone(), zp.clone(), zp.clone()],
                vec![ChainSpec::TruncatedPoly { p, e: 2 }, zp.clone()],
                vec![ChainSpec::Field { p, k: 2 }, zp.clone()],
                vec![ChainSpec::Witt { p, nonsquare: false }],
            ];
            if p != 2 {
                rows.push(vec![ChainSpec::Witt { p, nonsquare: true }]);
            }
            rows.push(vec![ChainSpec::IntegerResidue { p, m: 2 }, zp]);
            rows.push(vec![ChainSpec::IntegerResidue { p, m: 3 }]);
            rows
        }
        other => return Err(Error::invalid(format!("catalog covers order exponents 1..=3, got {other}"))),
    };
    let specs = rows.into_iter().map(|components| RingSpec { components }.canonicalize());
    let mut out = Vec::new();
    for spec in specs {
        if let Some(u) = constraints.unit_count {
            if spec.units_count() != u {
                continue;
            }
        }
        if let Some(sz) = constraints.min_ideal_size {
            let ok = spec.components.iter().any(|c| c.residue_size() == sz);
            if !ok {
                continue;
            }
        }
        if constraints.exclude_fields && spec.is_field() {
            continue;
        }
        out.push(spec);
    }
    Ok(out)
}

//! Product-ring assembly: flat operation tables, the principal ideal poset
//! with its Möbius function, unit orbits, socle and generating character.

use super::chain::{build_chain, ChainData};
use super::{RingSpec, DEFAULT_MAX_ORDER};
use crate::{Error, Rat, Result};
use std::collections::HashMap;

/// A principal ideal `Rx`, stored once per distinct ideal.
#[derive(Clone, Debug)]
pub struct IdealInfo {
    /// Sorted element indices.
    pub elements: Vec<u16>,
    /// Least generator.
    pub generator: u16,
    /// `μ(0, Rx)` in the poset of principal ideals.
    pub mobius: i64,
    mask: Vec<u64>,
}

impl IdealInfo {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    fn contains_all(&self, other: &IdealInfo) -> bool {
        other.mask.iter().zip(&self.mask).all(|(o, s)| o & !s == 0)
    }
}

/// A fully materialised finite ring: a direct product of chain rings with
/// flat `order × order` operation tables and every derived structure the
/// pipeline needs.
///
/// Elements are indices `0..order` in a mixed-radix positional encoding over
/// the components, component 0 least significant: the tuple
/// `(x₀, …, x_{s-1})` has index `x₀ + |R₀|·(x₁ + |R₁|·(…))`. Zero is always
/// index 0 and one is the all-ones tuple.
pub struct RingTable {
    spec: RingSpec,
    order: usize,
    chains: Vec<ChainData>,
    add: Vec<u16>,
    mul: Vec<u16>,
    neg: Vec<u16>,
    one: u16,
    units: Vec<u16>,
    is_unit: Vec<bool>,
    /// `|R^× x|` per element.
    unit_orbit_size: Vec<u32>,
    /// Least element of `x R^×` per element.
    orbit_rep: Vec<u16>,
    ideals: Vec<IdealInfo>,
    /// Element -> index into `ideals` of its principal ideal `Rx`.
    ideal_of: Vec<u32>,
    socle: Vec<u16>,
    radical: Vec<u16>,
    /// Character phase per element; `χ(x) = e^{2πi·phase}`.
    phase: Vec<Rat>,
}

impl RingTable {
    #[inline]
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn spec(&self) -> &RingSpec {
        &self.spec
    }

    #[inline]
    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add[a * self.order + b] as usize
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.order + b] as usize
    }

    #[inline]
    pub fn neg(&self, a: usize) -> usize {
        self.neg[a] as usize
    }

    #[inline]
    pub fn sub(&self, a: usize, b: usize) -> usize {
        self.add(a, self.neg(b))
    }

    pub fn zero(&self) -> usize {
        0
    }

    pub fn one(&self) -> usize {
        self.one as usize
    }

    pub fn units(&self) -> &[u16] {
        &self.units
    }

    #[inline]
    pub fn is_unit(&self, x: usize) -> bool {
        self.is_unit[x]
    }

    pub fn units_count(&self) -> u64 {
        self.units.len() as u64
    }

    /// `Σ aᵢ·bᵢ` over the ring.
    pub fn dot(&self, a: &[u16], b: &[u16]) -> usize {
        debug_assert_eq!(a.len(), b.len());
        let mut acc = 0usize;
        for (&x, &y) in a.iter().zip(b) {
            acc = self.add(acc, self.mul(x as usize, y as usize));
        }
        acc
    }

    pub fn socle(&self) -> &[u16] {
        &self.socle
    }

    pub fn radical(&self) -> &[u16] {
        &self.radical
    }

    /// All distinct principal ideals, sorted by size then generator; the
    /// zero ideal comes first and the whole ring last. For the commutative
    /// rings in the catalog, left and right principal ideals coincide.
    pub fn principal_ideals(&self) -> &[IdealInfo] {
        &self.ideals
    }

    /// The principal ideal `Rx`.
    pub fn ideal_of(&self, x: usize) -> &IdealInfo {
        &self.ideals[self.ideal_of[x] as usize]
    }

    /// `μ(0, Rx)`.
    pub fn mobius(&self, x: usize) -> i64 {
        self.ideal_of(x).mobius
    }

    /// `|R^× x|`, the number of associates of `x`.
    pub fn unit_orbit_size(&self, x: usize) -> u32 {
        self.unit_orbit_size[x]
    }

    /// Least element of `x R^×`; canonical representative of the associate
    /// class of `x`.
    pub fn orbit_rep(&self, x: usize) -> usize {
        self.orbit_rep[x] as usize
    }

    /// Character phase of `x` as an exact rational in `[0, 1)`.
    pub fn character_phase(&self, x: usize) -> Rat {
        self.phase[x]
    }

    /// Number of chain components.
    pub fn component_count(&self) -> usize {
        self.chains.len()
    }

    /// `(q, ℓ)` of component `i`.
    pub fn component_profile(&self, i: usize) -> (usize, u32) {
        (self.chains[i].q, self.chains[i].ell)
    }

    /// A radical generator of component `i`, embedded in the product.
    pub fn component_theta(&self, i: usize) -> usize {
        let mut comps = vec![0usize; self.chains.len()];
        comps[i] = self.chains[i].theta as usize;
        self.encode(&comps)
    }

    /// Mixed-radix decode of an element into its component indices.
    pub fn decode(&self, x: usize) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.chains.len());
        let mut v = x;
        for c in &self.chains {
            out.push(v % c.order);
            v /= c.order;
        }
        out
    }

    /// Mixed-radix encode of component indices.
    pub fn encode(&self, comps: &[usize]) -> usize {
        debug_assert_eq!(comps.len(), self.chains.len());
        let mut v = 0usize;
        for (c, &x) in self.chains.iter().zip(comps).rev() {
            debug_assert!(x < c.order);
            v = v * c.order + x;
        }
        v
    }

    /// Elements of the embedded ideal `θᵢ^{ℓᵢ-j} Rᵢ` of component `i` (all
    /// other components zero), sorted. `j = ℓᵢ` gives the whole component.
    pub fn component_ideal(&self, i: usize, j: u32) -> Vec<u16> {
        let c = &self.chains[i];
        debug_assert!(j <= c.ell);
        let local = c.theta_power_ideal(c.ell - j);
        let mut comps = vec![0usize; self.chains.len()];
        let mut out: Vec<u16> = local
            .iter()
            .map(|&e| {
                comps[i] = e as usize;
                self.encode(&comps) as u16
            })
            .collect();
        out.sort_unstable();
        out
    }

    /// Transversal of `Rᵢ/θᵢ^j Rᵢ` embedded in the product: the
    /// lexicographically least element of each coset. Has `qᵢ^j` elements.
    pub fn component_transversal(&self, i: usize, j: u32) -> Vec<u16> {
        let c = &self.chains[i];
        debug_assert!(j <= c.ell);
        let modulus = c.theta_power_ideal(j);
        let mut seen = vec![false; c.order];
        let mut local = Vec::new();
        for x in 0..c.order {
            if !seen[x] {
                local.push(x);
                for &m in &modulus {
                    seen[c.addi(x, m as usize)] = true;
                }
            }
        }
        let mut comps = vec![0usize; self.chains.len()];
        local
            .iter()
            .map(|&e| {
                comps[i] = e;
                self.encode(&comps) as u16
            })
            .collect()
    }

    /// Residue of the component-`i` part of `x`: the index of its coset
    /// modulo the radical of `Rᵢ`, counted in transversal order `0..qᵢ`.
    pub fn component_residue(&self, i: usize, x: usize) -> usize {
        let c = &self.chains[i];
        let local = self.decode(x)[i];
        let rad = c.theta_power_ideal(1);
        let trans = self.component_transversal(i, 1);
        for (ri, &t) in trans.iter().enumerate() {
            let tv = self.decode(t as usize)[i];
            let diff = c.addi(local, neg_local(c, tv));
            if rad.binary_search(&(diff as u16)).is_ok() {
                return ri;
            }
        }
        unreachable!("transversal covers every coset")
    }

    /// Verifies associativity, distributivity and commutativity on every
    /// table entry. Quadratic checks always run; the cubic ones are what
    /// make this O(order³).
    pub fn verify_table_axioms(&self) -> Result<()> {
        let n = self.order;
        for a in 0..n {
            if self.add(a, 0) != a || self.mul(a, self.one()) != a || self.add(a, self.neg(a)) != 0 {
                return Err(Error::inconsistent(format!("identity axioms fail at element {a}")));
            }
            for b in 0..n {
                if self.add(a, b) != self.add(b, a) || self.mul(a, b) != self.mul(b, a) {
                    return Err(Error::inconsistent(format!("commutativity fails at ({a},{b})")));
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                let ab = self.add(a, b);
                let mab = self.mul(a, b);
                for c in 0..n {
                    if self.add(ab, c) != self.add(a, self.add(b, c)) {
                        return Err(Error::inconsistent(format!("additive associativity fails at ({a},{b},{c})")));
                    }
                    if self.mul(mab, c) != self.mul(a, self.mul(b, c)) {
                        return Err(Error::inconsistent(format!("multiplicative associativity fails at ({a},{b},{c})")));
                    }
                    if self.mul(a, self.add(b, c)) != self.add(mab, self.mul(a, c)) {
                        return Err(Error::inconsistent(format!("distributivity fails at ({a},{b},{c})")));
                    }
                }
            }
        }
        Ok(())
    }
}

fn neg_local(c: &ChainData, x: usize) -> usize {
    (0..c.order).find(|&y| c.addi(x, y) == 0).expect("additive inverse exists")
}

/// Materialises a ring from its spec. Product rings are built componentwise,
/// with the product character `χ(x) = Π χᵢ(xᵢ)`.
///
/// Fails if the total order exceeds `max_order` (see
/// [`build_ring_bounded`]; [`build_ring`] uses [`DEFAULT_MAX_ORDER`]) or if
/// any internal consistency check trips, which signals a construction bug
/// rather than bad input.
pub fn build_ring(spec: &RingSpec) -> Result<RingTable> {
    build_ring_bounded(spec, DEFAULT_MAX_ORDER)
}

pub fn build_ring_bounded(spec: &RingSpec, max_order: u64) -> Result<RingTable> {
    let total = spec.order();
    if total > max_order {
        return Err(Error::BoundExceeded { what: format!("ring order {total}"), limit: max_order });
    }
    let chains: Vec<ChainData> = spec.components().iter().map(build_chain).collect::<Result<_>>()?;
    let order = total as usize;

    // componentwise tables in the mixed-radix encoding
    let sizes: Vec<usize> = chains.iter().map(|c| c.order).collect();
    let decode = |x: usize| -> Vec<usize> {
        let mut out = Vec::with_capacity(sizes.len());
        let mut v = x;
        for &s in &sizes {
            out.push(v % s);
            v /= s;
        }
        out
    };
    let encode = |comps: &[usize]| -> usize {
        let mut v = 0usize;
        for (&s, &x) in sizes.iter().zip(comps).rev() {
            v = v * s + x;
        }
        v
    };

    let mut add = vec![0u16; order * order];
    let mut mul = vec![0u16; order * order];
    let mut phase = vec![Rat::from_integer(0); order];
    let decoded: Vec<Vec<usize>> = (0..order).map(decode).collect();
    for a in 0..order {
        for b in 0..order {
            let mut s = Vec::with_capacity(chains.len());
            let mut m = Vec::with_capacity(chains.len());
            for (i, c) in chains.iter().enumerate() {
                s.push(c.addi(decoded[a][i], decoded[b][i]));
                m.push(c.muli(decoded[a][i], decoded[b][i]));
            }
            add[a * order + b] = encode(&s) as u16;
            mul[a * order + b] = encode(&m) as u16;
        }
    }
    for x in 0..order {
        let mut ph = Rat::from_integer(0);
        for (i, c) in chains.iter().enumerate() {
            ph += c.phase[decoded[x][i]];
        }
        phase[x] = ph - ph.floor();
    }
    let one = encode(&vec![1usize; chains.len()]) as u16;

    let mut neg = vec![0u16; order];
    for a in 0..order {
        neg[a] = (0..order)
            .find(|&b| add[a * order + b] == 0)
            .ok_or_else(|| Error::inconsistent("missing additive inverse"))? as u16;
    }

    let mut is_unit = vec![false; order];
    let mut units = Vec::new();
    for x in 0..order {
        if (0..order).any(|y| mul[x * order + y] == one) {
            is_unit[x] = true;
            units.push(x as u16);
        }
    }

    // associate classes xR^×
    let mut unit_orbit_size = vec![0u32; order];
    let mut orbit_rep = vec![0u16; order];
    {
        let mut seen = vec![false; order];
        let mut orbit = Vec::new();
        for x in 0..order {
            if seen[x] {
                continue;
            }
            orbit.clear();
            for &u in &units {
                orbit.push(mul[x * order + u as usize]);
            }
            orbit.sort_unstable();
            orbit.dedup();
            let rep = orbit[0];
            for &y in &orbit {
                seen[y as usize] = true;
                unit_orbit_size[y as usize] = orbit.len() as u32;
                orbit_rep[y as usize] = rep;
            }
        }
    }

    // distinct principal ideals Rx with Möbius values
    let words = order.div_ceil(64);
    let mut ideal_key: HashMap<Vec<u16>, u32> = HashMap::new();
    let mut ideals: Vec<IdealInfo> = Vec::new();
    let mut ideal_of = vec![0u32; order];
    for x in 0..order {
        let mut elems: Vec<u16> = (0..order).map(|r| mul[r * order + x]).collect();
        elems.sort_unstable();
        elems.dedup();
        let id = match ideal_key.get(&elems) {
            Some(&id) => id,
            None => {
                let id = ideals.len() as u32;
                let mut mask = vec![0u64; words];
                for &e in &elems {
                    mask[e as usize / 64] |= 1u64 << (e as usize % 64);
                }
                ideals.push(IdealInfo { elements: elems.clone(), generator: x as u16, mobius: 0, mask });
                ideal_key.insert(elems, id);
                id
            }
        };
        ideal_of[x] = id;
    }
    // sort ideals by (size, generator); remap
    let mut perm: Vec<usize> = (0..ideals.len()).collect();
    perm.sort_by_key(|&i| (ideals[i].elements.len(), ideals[i].generator));
    let mut inv = vec![0u32; ideals.len()];
    for (new, &old) in perm.iter().enumerate() {
        inv[old] = new as u32;
    }
    let mut sorted: Vec<IdealInfo> = perm.iter().map(|&i| ideals[i].clone()).collect();
    for id in ideal_of.iter_mut() {
        *id = inv[*id as usize];
    }
    // Möbius by the defining recursion, bottom-up over the sorted list
    for i in 0..sorted.len() {
        if sorted[i].elements.len() == 1 {
            sorted[i].mobius = 1;
            continue;
        }
        let mut acc = 0i64;
        for j in 0..i {
            if sorted[j].elements.len() < sorted[i].elements.len() && sorted[i].contains_all(&sorted[j]) {
                acc += sorted[j].mobius;
            }
        }
        sorted[i].mobius = -acc;
    }

    // socle and radical are componentwise
    let component_product = |pick: &dyn Fn(&ChainData) -> Vec<u16>| -> Vec<u16> {
        let locals: Vec<Vec<u16>> = chains.iter().map(|c| pick(c)).collect();
        let mut out = vec![0usize];
        for (i, loc) in locals.iter().enumerate() {
            let stride: usize = sizes[..i].iter().product();
            let mut next = Vec::with_capacity(out.len() * loc.len());
            for &base in &out {
                for &e in loc {
                    next.push(base + stride * e as usize);
                }
            }
            out = next;
        }
        let mut out: Vec<u16> = out.into_iter().map(|v| v as u16).collect();
        out.sort_unstable();
        out
    };
    let socle = component_product(&|c| c.theta_power_ideal(c.ell - 1));
    let radical = component_product(&|c| c.theta_power_ideal(1));

    let table = RingTable {
        spec: spec.clone(),
        order,
        chains,
        add,
        mul,
        neg,
        one,
        units,
        is_unit,
        unit_orbit_size,
        orbit_rep,
        ideals: sorted,
        ideal_of,
        socle,
        radical,
        phase,
    };

    if table.units_count() != spec.units_count() {
        return Err(Error::inconsistent(format!(
            "{spec}: unit count {} does not match the catalog value {}",
            table.units_count(),
            spec.units_count()
        )));
    }
    if order <= 256 {
        table.verify_table_axioms()?;
    }
    verify_generating_character(&table, |x| table.character_phase(x))?;
    Ok(table)
}

/// Proof data returned by [`verify_frobenius`].
#[derive(Clone, Debug)]
pub struct FrobeniusCertificate {
    /// A generator of the socle as a principal ideal.
    pub socle_generator: u16,
    pub socle_size: usize,
    pub radical_size: usize,
    /// `|R| / |rad R|`, which must equal the socle size.
    pub top_quotient_size: usize,
}

/// Checks that `phase` describes an additive character whose kernel contains
/// no nonzero ideal. Exhaustive: additivity over all pairs, then every
/// nonzero principal ideal must contain an element with nontrivial phase.
pub fn verify_generating_character(ring: &RingTable, phase: impl Fn(usize) -> Rat) -> Result<()> {
    let n = ring.order();
    for a in 0..n {
        for b in 0..n {
            let want = phase(a) + phase(b);
            let got = phase(ring.add(a, b));
            if (want - got).fract() != Rat::from_integer(0) {
                return Err(Error::inconsistent(format!("character not additive at ({a},{b})")));
            }
        }
    }
    for ideal in ring.principal_ideals() {
        if ideal.len() == 1 {
            continue;
        }
        let generating = ideal.elements.iter().any(|&e| !phase(e as usize).is_integer());
        if !generating {
            return Err(Error::inconsistent(format!(
                "character kernel contains the nonzero ideal generated by {}",
                ideal.generator
            )));
        }
    }
    Ok(())
}

/// Certifies the Frobenius property of a built ring: the stored character is
/// generating and the socle is a principal ideal of size `|R/rad R|`.
pub fn verify_frobenius(ring: &RingTable) -> Result<FrobeniusCertificate> {
    verify_generating_character(ring, |x| ring.character_phase(x))?;
    let socle: Vec<u16> = ring.socle().to_vec();
    let socle_gen = ring
        .principal_ideals()
        .iter()
        .find(|i| i.elements == socle)
        .ok_or_else(|| Error::inconsistent("socle is not a principal ideal"))?;
    let cert = FrobeniusCertificate {
        socle_generator: socle_gen.generator,
        socle_size: socle.len(),
        radical_size: ring.radical().len(),
        top_quotient_size: ring.order() / ring.radical().len(),
    };
    if cert.top_quotient_size != cert.socle_size {
        return Err(Error::inconsistent(format!(
            "socle size {} differs from |R/rad| = {}",
            cert.socle_size, cert.top_quotient_size
        )));
    }
    Ok(cert)
}

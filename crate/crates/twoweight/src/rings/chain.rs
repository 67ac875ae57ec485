//! Construction of a single finite chain ring as explicit operation tables.
//!
//! Every supported chain ring is one of
//!
//! * `GF(p^k)` — the finite field, built as `Z_p[X]/(f)` for the
//!   lexicographically least monic irreducible `f` of degree `k`,
//! * `Z_{p^m}` — integers modulo a prime power, `m ≤ 3`,
//! * `Z_p[X]/(X^e)` — truncated polynomials, `e ∈ {2,3}`,
//! * `W(p,α) = Z_{p²}[X]/(X² − αp, X³)` — the two length-3 chain rings with
//!   additive group `Z_{p²} × Z_p`, where `α` is either `1` or a fixed
//!   non-square modulo `p` (the latter only for odd `p`),
//! * `GR(p²,r)` — the Galois ring of characteristic `p²` and rank `r`, built
//!   as `Z_{p²}[X]/(f)` for a lifted irreducible `f`.
//!
//! A chain ring of residue field size `q` and length `ℓ` has `q^ℓ` elements,
//! `q^{ℓ-1}(q-1)` units, and its ideals form the chain
//! `R ⊃ θR ⊃ … ⊃ θ^{ℓ-1}R ⊃ 0` for any generator `θ` of the radical.
//!
//! Element encodings are positional and documented per kind so that file
//! formats and orbit representatives are reproducible:
//!
//! * field: index `= Σ cᵢ pⁱ` over the coefficients of the residue
//!   polynomial `c₀ + c₁X + …`,
//! * `Z_{p^m}`: the residue itself,
//! * truncated polynomials: base-`p` digits, constant term least significant,
//! * `W(p,α)`: `a + bX ↦ a + p²·b` with `a ∈ Z_{p²}`, `b ∈ Z_p`,
//! * `GR(p²,r)`: base-`p²` digits of the coefficient vector.

use super::ChainSpec;
use crate::{Error, Rat, Result};

/// A fully materialised chain ring: operation tables plus the structural
/// data (residue size, chain length, radical generator, character phases)
/// that the product-ring assembly consumes.
pub(crate) struct ChainData {
    pub order: usize,
    /// Residue field size `q`.
    pub q: usize,
    /// Chain length `ℓ`, so `order = q^ℓ`.
    pub ell: u32,
    pub add: Vec<u16>,
    pub mul: Vec<u16>,
    /// Lexicographically least generator of the radical (0 for fields).
    pub theta: u16,
    /// Character phase `a/b` per element: `χ(x) = e^{2πi·phase(x)}`.
    pub phase: Vec<Rat>,
}

impl ChainData {
    #[inline]
    pub fn addi(&self, a: usize, b: usize) -> usize {
        self.add[a * self.order + b] as usize
    }

    #[inline]
    pub fn muli(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.order + b] as usize
    }

    /// Elements of the ideal `θ^k R`, sorted ascending. `k = 0` gives the
    /// whole ring, `k = ℓ` gives the zero ideal.
    pub fn theta_power_ideal(&self, k: u32) -> Vec<u16> {
        let mut gen = 1usize; // theta^0
        for _ in 0..k {
            gen = self.muli(gen, self.theta as usize);
        }
        let mut set: Vec<u16> = (0..self.order).map(|r| self.mul[r * self.order + gen] as u16).collect();
        set.sort_unstable();
        set.dedup();
        set
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Splits `n` as `p^k` with `p` prime, if possible.
pub(crate) fn prime_power(n: u64) -> Option<(u64, u32)> {
    if n < 2 {
        return None;
    }
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            let mut m = n;
            let mut k = 0;
            while m % p == 0 {
                m /= p;
                k += 1;
            }
            return if m == 1 { Some((p, k)) } else { None };
        }
        p += 1;
    }
    Some((n, 1))
}

// --- polynomial helpers over Z_p ------------------------------------------

fn poly_trim(c: &mut Vec<u64>) {
    while c.last() == Some(&0) {
        c.pop();
    }
}

fn poly_mul_mod_p(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    poly_trim(&mut out);
    out
}

fn poly_rem_mod_p(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    let mut r = a.to_vec();
    poly_trim(&mut r);
    let dm = m.len() - 1;
    let lead_inv = mod_inverse(m[dm], p);
    while r.len() > dm {
        let dr = r.len() - 1;
        let factor = (r[dr] * lead_inv) % p;
        for i in 0..=dm {
            let idx = dr - dm + i;
            r[idx] = (r[idx] + p - (factor * m[i]) % p) % p;
        }
        poly_trim(&mut r);
    }
    r
}

fn mod_inverse(a: u64, p: u64) -> u64 {
    // p prime, a != 0 mod p
    let mut result = 1u64;
    let mut base = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    result
}

fn poly_is_irreducible(f: &[u64], p: u64) -> bool {
    let deg = f.len() - 1;
    if deg == 0 {
        return false;
    }
    // trial division by all monic polynomials of degree 1..=deg/2
    for d in 1..=deg / 2 {
        let count = p.pow(d as u32);
        for t in 0..count {
            let mut g = vec![0u64; d + 1];
            let mut v = t;
            for ci in g.iter_mut().take(d) {
                *ci = v % p;
                v /= p;
            }
            g[d] = 1;
            if poly_rem_mod_p(f, &g, p).is_empty() {
                return false;
            }
        }
    }
    true
}

/// The lexicographically least monic irreducible polynomial of degree `k`
/// over `Z_p`: candidates `X^k + Σ cᵢ Xⁱ` are ordered by the base-`p` value
/// `Σ cᵢ pⁱ` of their lower coefficients.
pub(crate) fn least_irreducible(p: u64, k: u32) -> Vec<u64> {
    let count = p.pow(k);
    for t in 0..count {
        let mut f = vec![0u64; k as usize + 1];
        let mut v = t;
        for ci in f.iter_mut().take(k as usize) {
            *ci = v % p;
            v /= p;
        }
        f[k as usize] = 1;
        if poly_is_irreducible(&f, p) {
            return f;
        }
    }
    unreachable!("an irreducible polynomial of every degree exists over GF(p)")
}

/// Least quadratic non-residue modulo an odd prime.
fn least_nonsquare(p: u64) -> u64 {
    (2..p)
        .find(|&a| {
            let mut r = 1u64;
            let mut b = a;
            let mut e = (p - 1) / 2;
            while e > 0 {
                if e & 1 == 1 {
                    r = r * b % p;
                }
                b = b * b % p;
                e >>= 1;
            }
            r != 1
        })
        .expect("odd prime has a non-residue")
}

// --- generic table filling --------------------------------------------------

fn fill_tables(
    order: usize,
    add_fn: impl Fn(usize, usize) -> usize,
    mul_fn: impl Fn(usize, usize) -> usize,
) -> (Vec<u16>, Vec<u16>) {
    let mut add = vec![0u16; order * order];
    let mut mul = vec![0u16; order * order];
    for a in 0..order {
        for b in 0..order {
            add[a * order + b] = add_fn(a, b) as u16;
            mul[a * order + b] = mul_fn(a, b) as u16;
        }
    }
    (add, mul)
}

pub(crate) fn build_chain(spec: &ChainSpec) -> Result<ChainData> {
    let order = spec.order() as usize;
    if order > u16::MAX as usize {
        return Err(Error::BoundExceeded { what: format!("chain ring order {order}"), limit: u16::MAX as u64 });
    }
    let (add, mul, phase) = match *spec {
        ChainSpec::IntegerResidue { p, m: _ } => {
            if !is_prime(p) {
                return Err(Error::UnsupportedRing(format!("Z{}: {p} is not prime", spec)));
            }
            let n = order as u64;
            let (add, mul) = fill_tables(
                order,
                |a, b| ((a as u64 + b as u64) % n) as usize,
                |a, b| ((a as u64 * b as u64) % n) as usize,
            );
            let phase: Vec<Rat> = (0..order).map(|x| Rat::new(x as i64, n as i64)).collect();
            (add, mul, phase)
        }
        ChainSpec::Field { p, k } => {
            if !is_prime(p) {
                return Err(Error::UnsupportedRing(format!("GF({}): {p} is not a prime power base", spec)));
            }
            let f = least_irreducible(p, k);
            let kk = k as usize;
            let digits = |mut x: usize| -> Vec<u64> {
                let mut d = vec![0u64; kk];
                for di in d.iter_mut() {
                    *di = (x as u64) % p;
                    x /= p as usize;
                }
                d
            };
            let undigits = |d: &[u64]| -> usize {
                let mut v = 0usize;
                for &c in d.iter().rev() {
                    v = v * p as usize + c as usize;
                }
                v
            };
            let add_fn = |a: usize, b: usize| {
                let (da, db) = (digits(a), digits(b));
                let s: Vec<u64> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                undigits(&s)
            };
            let mul_fn = |a: usize, b: usize| {
                let prod = poly_mul_mod_p(&digits(a), &digits(b), p);
                let mut r = poly_rem_mod_p(&prod, &f, p);
                r.resize(kk, 0);
                undigits(&r)
            };
            let (add, mul) = fill_tables(order, add_fn, mul_fn);
            // trace character: χ(x) = e^{2πi·Tr(x)/p}, Tr(x) = Σ x^{p^i}
            let mut phase = vec![Rat::from_integer(0); order];
            for x in 0..order {
                let mut term = x;
                let mut tr = 0usize;
                for _ in 0..k {
                    tr = add[tr * order + term] as usize;
                    // term <- term^p
                    let mut pw = 1usize;
                    for _ in 0..p {
                        pw = mul[pw * order + term] as usize;
                    }
                    term = pw;
                }
                debug_assert!(tr < p as usize, "trace lands in the prime subfield");
                phase[x] = Rat::new(tr as i64, p as i64);
            }
            (add, mul, phase)
        }
        ChainSpec::TruncatedPoly { p, e } => {
            if !is_prime(p) {
                return Err(Error::UnsupportedRing(format!("ZX({p},{e}): {p} is not prime")));
            }
            let ee = e as usize;
            let digits = |mut x: usize| -> Vec<u64> {
                let mut d = vec![0u64; ee];
                for di in d.iter_mut() {
                    *di = (x as u64) % p;
                    x /= p as usize;
                }
                d
            };
            let undigits = |d: &[u64]| -> usize {
                let mut v = 0usize;
                for &c in d.iter().rev() {
                    v = v * p as usize + c as usize;
                }
                v
            };
            let add_fn = |a: usize, b: usize| {
                let (da, db) = (digits(a), digits(b));
                let s: Vec<u64> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                undigits(&s)
            };
            let mul_fn = |a: usize, b: usize| {
                let (da, db) = (digits(a), digits(b));
                let mut out = vec![0u64; ee];
                for i in 0..ee {
                    for j in 0..ee - i {
                        out[i + j] = (out[i + j] + da[i] * db[j]) % p;
                    }
                }
                undigits(&out)
            };
            let (add, mul) = fill_tables(order, add_fn, mul_fn);
            // top coefficient over p; nontrivial on the socle (X^{e-1})
            let phase: Vec<Rat> = (0..order)
                .map(|x| {
                    let top = (x / (order / p as usize)) as i64;
                    Rat::new(top, p as i64)
                })
                .collect();
            (add, mul, phase)
        }
        ChainSpec::Witt { p, nonsquare } => {
            if !is_prime(p) {
                return Err(Error::UnsupportedRing(format!("W({p},..): {p} is not prime")));
            }
            if nonsquare && p == 2 {
                return Err(Error::UnsupportedRing("W(2,n): the non-square variant needs an odd prime".into()));
            }
            let alpha = if nonsquare { least_nonsquare(p) } else { 1 };
            let p2 = (p * p) as usize;
            // a + bX <-> a + p²·b
            let split = |x: usize| (x % p2, x / p2);
            let join = |a: usize, b: usize| a + p2 * b;
            let add_fn = |x: usize, y: usize| {
                let ((a, b), (c, d)) = (split(x), split(y));
                join((a + c) % p2, (b + d) % p as usize)
            };
            let mul_fn = |x: usize, y: usize| {
                let ((a, b), (c, d)) = (split(x), split(y));
                let lo = (a * c + (alpha as usize) * (p as usize) * b * d) % p2;
                let hi = (a * d + b * c) % p as usize;
                join(lo, hi)
            };
            let (add, mul) = fill_tables(order, add_fn, mul_fn);
            let phase: Vec<Rat> = (0..order)
                .map(|x| {
                    let (a, b) = split(x);
                    let r = Rat::new(a as i64, p2 as i64) + Rat::new(b as i64, p as i64);
                    r - r.floor()
                })
                .collect();
            (add, mul, phase)
        }
        ChainSpec::GaloisRing { p, r } => {
            if !is_prime(p) {
                return Err(Error::UnsupportedRing(format!("GR({},{r}): {p} is not prime", p * p)));
            }
            let f = least_irreducible(p, r); // lifted coefficient-wise into Z_{p²}
            let p2 = p * p;
            let rr = r as usize;
            let digits = |mut x: usize| -> Vec<u64> {
                let mut d = vec![0u64; rr];
                for di in d.iter_mut() {
                    *di = (x as u64) % p2;
                    x /= p2 as usize;
                }
                d
            };
            let undigits = |d: &[u64]| -> usize {
                let mut v = 0usize;
                for &c in d.iter().rev() {
                    v = v * p2 as usize + c as usize;
                }
                v
            };
            let add_fn = |a: usize, b: usize| {
                let (da, db) = (digits(a), digits(b));
                let s: Vec<u64> = da.iter().zip(&db).map(|(x, y)| (x + y) % p2).collect();
                undigits(&s)
            };
            let mul_fn = |a: usize, b: usize| {
                let (da, db) = (digits(a), digits(b));
                let mut out = vec![0u64; 2 * rr - 1];
                for i in 0..rr {
                    for j in 0..rr {
                        out[i + j] = (out[i + j] + da[i] * db[j]) % p2;
                    }
                }
                // reduce modulo the monic lift of f: X^r = -(f - X^r)
                for i in (rr..out.len()).rev() {
                    let c = out[i];
                    if c != 0 {
                        out[i] = 0;
                        for (j, &fj) in f.iter().enumerate().take(rr) {
                            out[i - rr + j] = (out[i - rr + j] + c * (p2 - fj % p2) % p2) % p2;
                        }
                    }
                }
                out.truncate(rr);
                undigits(&out)
            };
            let (add, mul) = fill_tables(order, add_fn, mul_fn);
            let phase: Vec<Rat> = (0..order)
                .map(|x| {
                    let s: u64 = digits(x).iter().sum::<u64>() % p2;
                    Rat::new(s as i64, p2 as i64)
                })
                .collect();
            (add, mul, phase)
        }
    };

    // units: x with x·y = 1 for some y
    let mut is_unit = vec![false; order];
    for x in 0..order {
        is_unit[x] = (0..order).any(|y| mul[x * order + y] == 1);
    }
    let rad: Vec<usize> = (0..order).filter(|&x| !is_unit[x]).collect();
    let q = order / rad.len().max(1);
    let q = if rad.len() == 1 { order } else { q };
    let mut ell = 0u32;
    let mut pw = 1usize;
    while pw < order {
        pw *= q;
        ell += 1;
    }
    if pw != order || ell == 0 && order != 1 {
        return Err(Error::inconsistent(format!("{spec}: radical size does not match a chain structure")));
    }
    let ell = ell.max(1);

    // radical generator: least x with Rx equal to the radical as a set
    let ideal_of = |x: usize| -> Vec<usize> {
        let mut v: Vec<usize> = (0..order).map(|r| mul[r * order + x] as usize).collect();
        v.sort_unstable();
        v.dedup();
        v
    };
    let mut rad_sorted = rad.clone();
    rad_sorted.sort_unstable();
    let theta = if rad_sorted.len() == 1 {
        0u16
    } else {
        (0..order)
            .find(|&x| ideal_of(x) == rad_sorted)
            .ok_or_else(|| Error::inconsistent(format!("{spec}: radical is not principal")))? as u16
    };

    let data = ChainData { order, q, ell, add, mul, theta, phase };

    // chain-ness: the principal ideals must be exactly the theta powers
    let mut sizes: Vec<usize> = (0..=ell).map(|k| data.theta_power_ideal(k).len()).collect();
    sizes.sort_unstable();
    let mut expect: Vec<usize> = (0..=ell).map(|k| q.pow(k)).collect();
    expect.sort_unstable();
    if sizes != expect {
        return Err(Error::inconsistent(format!("{spec}: ideal chain has wrong sizes")));
    }
    Ok(data)
}

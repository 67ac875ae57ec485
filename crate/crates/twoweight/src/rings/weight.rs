//! Homogeneous weight tables.
//!
//! The homogeneous weight with average value γ is
//!
//! ```text
//! w(x) = γ · (1 − μ(0, Rx) / |R^× x|)
//! ```
//!
//! where μ is the Möbius function of the principal-ideal poset. It satisfies
//! `Σ_{y ∈ Rx} w(y) = γ·|Rx|` for every `x ≠ 0`, is constant on associate
//! classes, and factors over direct products. With `γ = |R^×|` every weight
//! is an integer.

use super::table::RingTable;
use crate::{Error, Rat, Result};
use num_traits::{ToPrimitive, Zero};

/// Exact homogeneous weights of every ring element at a fixed γ.
#[derive(Clone, Debug)]
pub struct WeightTable {
    gamma: Rat,
    weights: Vec<Rat>,
}

impl WeightTable {
    pub fn gamma(&self) -> Rat {
        self.gamma
    }

    #[inline]
    pub fn weight(&self, x: usize) -> Rat {
        self.weights[x]
    }

    pub fn weights(&self) -> &[Rat] {
        &self.weights
    }

    /// Weight of a vector: the coordinate sum.
    pub fn vector_weight(&self, v: &[u16]) -> Rat {
        v.iter().map(|&x| self.weights[x as usize]).sum()
    }

    /// True when every weight is an integer (always the case at γ = |R^×|).
    pub fn is_integral(&self) -> bool {
        self.weights.iter().all(|w| w.is_integer())
    }

    /// The weights as integers; только valid when [`Self::is_integral`].
    pub fn integer_weights(&self) -> Option<Vec<i64>> {
        self.weights.iter().map(|w| if w.is_integer() { w.to_integer().to_i64() } else { None }).collect()
    }
}

/// Computes the homogeneous weight table of a built ring at the given γ > 0.
pub fn hom_weight_table(ring: &RingTable, gamma: Rat) -> Result<WeightTable> {
    if gamma <= Rat::zero() {
        return Err(Error::invalid(format!("γ must be positive, got {gamma}")));
    }
    let weights: Vec<Rat> = (0..ring.order())
        .map(|x| {
            let mu = Rat::from_integer(ring.mobius(x));
            let orbit = Rat::from_integer(ring.unit_orbit_size(x) as i64);
            gamma * (Rat::from_integer(1) - mu / orbit)
        })
        .collect();
    let table = WeightTable { gamma, weights };
    verify_weight_axioms(ring, &table)?;
    Ok(table)
}

/// The γ = |R^×| table, the scale on which two-weight searches run.
pub fn unit_gamma_weights(ring: &RingTable) -> WeightTable {
    hom_weight_table(ring, Rat::from_integer(ring.units_count() as i64))
        .expect("unit count is positive")
}

/// Defining axioms, checked exhaustively: `w(0) = 0`, constancy on associate
/// classes, and `Σ_{y ∈ Rx} w(y) = γ|Rx|` for every `x ≠ 0`.
fn verify_weight_axioms(ring: &RingTable, table: &WeightTable) -> Result<()> {
    if !table.weight(0).is_zero() {
        return Err(Error::inconsistent("w(0) must be 0"));
    }
    for x in 0..ring.order() {
        if table.weight(x) != table.weight(ring.orbit_rep(x)) {
            return Err(Error::inconsistent(format!("weight not constant on the associate class of {x}")));
        }
    }
    for ideal in ring.principal_ideals() {
        if ideal.len() == 1 {
            continue;
        }
        let sum: Rat = ideal.elements.iter().map(|&e| table.weight(e as usize)).sum();
        let expect = table.gamma * Rat::from_integer(ideal.len() as i64);
        if sum != expect {
            return Err(Error::inconsistent(format!(
                "ideal average fails on the ideal of {}: Σw = {sum}, γ|Rx| = {expect}",
                ideal.generator
            )));
        }
    }
    Ok(())
}

/// Floating-point cross-check of the character description
/// `w(x) = γ(1 − |R^×|⁻¹ Σ_{u ∈ R^×} χ(xu))`: returns the largest absolute
/// deviation over all elements (imaginary parts included).
pub fn character_weight_crosscheck(ring: &RingTable, table: &WeightTable) -> f64 {
    let units = ring.units();
    let gamma = ratio_to_f64(table.gamma());
    let mut worst = 0.0f64;
    for x in 0..ring.order() {
        let (mut re, mut im) = (0.0f64, 0.0f64);
        for &u in units {
            let ph = ratio_to_f64(ring.character_phase(ring.mul(x, u as usize)));
            let ang = 2.0 * std::f64::consts::PI * ph;
            re += ang.cos();
            im += ang.sin();
        }
        let w = gamma * (1.0 - re / units.len() as f64);
        worst = worst.max(im.abs() / units.len() as f64);
        worst = worst.max((w - ratio_to_f64(table.weight(x))).abs());
    }
    worst
}

fn ratio_to_f64(r: Rat) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

/// The product identity
/// `1 − w(r,s)/γ_{R⊕S} = (1 − w_R(r)/γ_R)(1 − w_S(s)/γ_S)`,
/// checked exhaustively for a two-component product ring against the
/// componentwise tables. The left factor is component 0 of the encoding.
pub fn verify_product_rule(
    product: &RingTable,
    wp: &WeightTable,
    left: &RingTable,
    wl: &WeightTable,
    right: &RingTable,
    wr: &WeightTable,
) -> Result<()> {
    if product.order() != left.order() * right.order() {
        return Err(Error::invalid("component orders do not multiply to the product order"));
    }
    let one = Rat::from_integer(1);
    for a in 0..left.order() {
        for b in 0..right.order() {
            let x = a + left.order() * b;
            let lhs = one - wp.weight(x) / wp.gamma();
            let rhs = (one - wl.weight(a) / wl.gamma()) * (one - wr.weight(b) / wr.gamma());
            if lhs != rhs {
                return Err(Error::inconsistent(format!("product rule fails at ({a},{b})")));
            }
        }
    }
    Ok(())
}

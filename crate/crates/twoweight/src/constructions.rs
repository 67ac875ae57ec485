//! The Hjelmslev-line two-weight family and the Gray isometry.
//!
//! Over a chain ring `R` of length 2 with residue field `GF(q)`, the
//! projective Hjelmslev line has `q(q+1)` points (associate classes of
//! regular pairs in `R²`), partitioned into `q+1` neighbour classes of `q`
//! points by the residue map onto the projective line over `GF(q)`.
//! Choosing `s` distinct points from every neighbour class, `1 ≤ s ≤ q−1`,
//! gives a `2 × s(q+1)` generator matrix of a code with `q⁴` codewords and
//! nonzero homogeneous weights
//!
//! ```text
//! w₁ = q²(qs−1)    w₂ = q³s        (γ = |R^×| = q²−q)
//! ```
//!
//! whose Cayley graph is strongly regular with parameters
//! `(q⁴, s(q³−q), q²(s²+1)−3qs, qs(qs−1))`.
//!
//! The Gray map sends `x ∈ R` with residue coordinates `x = τ(b) + θ·τ(a)`
//! to the evaluation vector of the affine function `c ↦ a + b·c` over
//! `GF(q)`. It is an isometry from the homogeneous weight at `γ = q−1` onto
//! the Hamming weight, and the image of `R` is the first-order generalized
//! Reed–Muller code of length `q` (all affine functions). Composing a code
//! with the Gray map coordinatewise gives a Hamming-metric code over the
//! residue field whose linearity [`gray_linear_check`] decides exactly.

use crate::codes::{ExpandedCode, LinearCode, Shape};
use crate::rings::{hom_weight_table, RingTable};
use crate::{Error, Rat, Result};
use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

/// Points and neighbour classes of the projective Hjelmslev line over a
/// chain ring of length 2.
pub struct HjelmslevLine {
    ring: Arc<RingTable>,
    /// Residue field size.
    pub q: usize,
    /// Canonical point representatives `(a, b)`, lexicographically least in
    /// their associate class, sorted.
    pub points: Vec<(u16, u16)>,
    /// `q+1` neighbour classes, each a sorted list of `q` indices into
    /// `points`; classes ordered by their least point.
    pub classes: Vec<Vec<usize>>,
}

impl HjelmslevLine {
    pub fn ring(&self) -> &Arc<RingTable> {
        &self.ring
    }
}

fn require_length2_chain(ring: &RingTable) -> Result<usize> {
    if ring.component_count() != 1 {
        return Err(Error::invalid(format!("{} is not a chain ring", ring.spec())));
    }
    let (q, ell) = ring.component_profile(0);
    if ell != 2 {
        return Err(Error::invalid(format!("{} has chain length {ell}, need 2", ring.spec())));
    }
    Ok(q)
}

/// Enumerates the projective Hjelmslev line of a length-2 chain ring.
pub fn hjelmslev_points(ring: &Arc<RingTable>) -> Result<HjelmslevLine> {
    let q = require_length2_chain(ring)?;
    let order = ring.order();
    let units: Vec<u16> = ring.units().to_vec();

    let mut seen = vec![false; order * order];
    let mut points: Vec<(u16, u16)> = Vec::new();
    let mut class_of: BTreeMap<(u16, u16), Vec<usize>> = BTreeMap::new();
    for a in 0..order {
        for b in 0..order {
            if seen[a * order + b] || !(ring.is_unit(a) || ring.is_unit(b)) {
                continue;
            }
            let mut orbit: Vec<(u16, u16)> = units
                .iter()
                .map(|&u| (ring.mul(a, u as usize) as u16, ring.mul(b, u as usize) as u16))
                .collect();
            orbit.sort_unstable();
            orbit.dedup();
            for &(x, y) in &orbit {
                seen[x as usize * order + y as usize] = true;
            }
            let rep = orbit[0];
            // residue label: least residue pair over the associate class
            let label = orbit
                .iter()
                .map(|&(x, y)| (ring.component_residue(0, x as usize) as u16, ring.component_residue(0, y as usize) as u16))
                .min()
                .expect("orbit is nonempty");
            let idx = points.len();
            points.push(rep);
            class_of.entry(label).or_default().push(idx);
        }
    }
    if points.len() != q * (q + 1) {
        return Err(Error::inconsistent(format!("expected {} points, found {}", q * (q + 1), points.len())));
    }
    let mut classes: Vec<Vec<usize>> = class_of.into_values().collect();
    for c in &mut classes {
        c.sort_unstable();
    }
    classes.sort_by_key(|c| c[0]);
    if classes.len() != q + 1 || classes.iter().any(|c| c.len() != q) {
        return Err(Error::inconsistent("neighbour classes do not split as q+1 classes of q points"));
    }
    Ok(HjelmslevLine { ring: Arc::clone(ring), q, points, classes })
}

/// Builds the two-row code of a selection of `s` points per neighbour class.
/// `selection[c]` lists point indices belonging to class `c`; the generator
/// takes the selected points as columns, classes in order.
pub fn hjelmslev_code(line: &HjelmslevLine, s: u32, selection: &[Vec<usize>]) -> Result<LinearCode> {
    let q = line.q as u32;
    if s == 0 || s > q - 1 {
        return Err(Error::invalid(format!("need 1 ≤ s ≤ q−1 = {}, got {s}", q - 1)));
    }
    if selection.len() != line.classes.len() {
        return Err(Error::invalid("selection must pick from every neighbour class"));
    }
    let mut row_a = Vec::new();
    let mut row_b = Vec::new();
    for (c, picks) in selection.iter().enumerate() {
        if picks.len() != s as usize {
            return Err(Error::invalid(format!("class {c} selects {} points, need {s}", picks.len())));
        }
        let mut sorted = picks.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != picks.len() {
            return Err(Error::invalid(format!("class {c} selects a repeated point")));
        }
        for &p in &sorted {
            if !line.classes[c].contains(&p) {
                return Err(Error::invalid(format!("point {p} does not belong to class {c}")));
            }
            let (a, b) = line.points[p];
            row_a.push(a);
            row_b.push(b);
        }
    }
    let shape = Shape::new(vec![vec![2, 2]]);
    LinearCode::new(Arc::clone(&line.ring), shape, vec![row_a, row_b])
}

/// The default deterministic selection: the first `s` points of each class.
pub fn default_selection(line: &HjelmslevLine, s: u32) -> Vec<Vec<usize>> {
    line.classes.iter().map(|c| c[..s as usize].to_vec()).collect()
}

/// The weight pair and graph parameters the construction guarantees.
pub fn hjelmslev_expectations(q: u64, s: u64) -> ((u64, u64), (u64, u64, u64, u64)) {
    let w1 = q * q * (q * s - 1);
    let w2 = q * q * q * s;
    let k = s * (q * q * q - q);
    let lambda = q * q * (s * s + 1) - 3 * q * s;
    let mu = q * s * (q * s - 1);
    ((w1, w2), (q * q * q * q, k, lambda, mu))
}

/// The enumerated family: every selection of `s` points per class, with the
/// codes deduplicated by their literal codeword sets.
pub struct HjelmslevFamily {
    /// Total number of selections, `C(q,s)^{q+1}`.
    pub selections: u64,
    /// One code per distinct codeword set, in enumeration order.
    pub codes: Vec<LinearCode>,
}

/// Enumerates all `C(q,s)^{q+1}` selections and deduplicates the resulting
/// codes by comparing their sorted codeword lists. Two selections frequently
/// generate the same row space, so this count is below the selection count.
pub fn enumerate_hjelmslev_family(line: &HjelmslevLine, s: u32, cap: u64) -> Result<HjelmslevFamily> {
    let q = line.q;
    let per_class: Vec<Vec<Vec<usize>>> = line.classes.iter().map(|c| subsets_of(c, s as usize)).collect();
    let total: u64 = per_class.iter().map(|v| v.len() as u64).product();
    if total > cap {
        return Err(Error::BoundExceeded { what: format!("{total} selections"), limit: cap });
    }
    let mut seen: BTreeSet<Vec<Vec<u16>>> = BTreeSet::new();
    let mut codes = Vec::new();
    let mut digits = vec![0usize; q + 1];
    for _ in 0..total {
        let selection: Vec<Vec<usize>> =
            digits.iter().enumerate().map(|(c, &d)| per_class[c][d].clone()).collect();
        let code = hjelmslev_code(line, s, &selection)?;
        let expanded = code.expand()?;
        if !expanded.is_faithful() {
            return Err(Error::inconsistent("a Hjelmslev selection expanded unfaithfully"));
        }
        let mut words = expanded.words().to_vec();
        words.sort_unstable();
        if seen.insert(words) {
            codes.push(code);
        }
        for k in (0..digits.len()).rev() {
            digits[k] += 1;
            if digits[k] < per_class[k].len() {
                break;
            }
            digits[k] = 0;
        }
    }
    Ok(HjelmslevFamily { selections: total, codes })
}

fn subsets_of(items: &[usize], s: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut acc = Vec::with_capacity(s);
    fn rec(items: &[usize], s: usize, from: usize, acc: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if acc.len() == s {
            out.push(acc.clone());
            return;
        }
        for i in from..items.len() {
            acc.push(items[i]);
            rec(items, s, i + 1, acc, out);
            acc.pop();
        }
    }
    rec(items, s, 0, &mut acc, &mut out);
    out
}

/// The Gray isometry table of a length-2 chain ring: `x ↦ (a + b·c)_{c}`
/// over the residue field, where `b` is the residue of `x` and `a` the
/// socle coordinate of `x − τ(b)`.
pub struct GrayMap {
    ring: Arc<RingTable>,
    pub q: usize,
    /// Residue index of every ring element (position in the lex-least coset
    /// transversal).
    pub resid: Vec<u8>,
    /// Residue field operation tables, `q × q`.
    radd: Vec<u8>,
    rmul: Vec<u8>,
    /// `ψ(x)` per element: a length-`q` vector of residue indices.
    pub table: Vec<Vec<u8>>,
}

impl GrayMap {
    pub fn ring(&self) -> &Arc<RingTable> {
        &self.ring
    }

    pub fn image(&self, x: usize) -> &[u8] {
        &self.table[x]
    }

    pub fn residue_add(&self, a: u8, b: u8) -> u8 {
        self.radd[a as usize * self.q + b as usize]
    }

    pub fn residue_mul(&self, a: u8, b: u8) -> u8 {
        self.rmul[a as usize * self.q + b as usize]
    }

    /// Componentwise Gray image of a codeword: length `q·n` over the
    /// residue field.
    pub fn map_word(&self, word: &[u16]) -> Vec<u8> {
        let mut out = Vec::with_capacity(self.q * word.len());
        for &x in word {
            out.extend_from_slice(&self.table[x as usize]);
        }
        out
    }
}

/// Builds and verifies the Gray map of a length-2 chain ring: the isometry
/// property `w_hom(x; γ=q−1) = wt_Ham(ψ(x))` is checked pointwise, `ψ` must
/// be additive on the socle, and `ψ(R)` must have the affine-function weight
/// enumerator (one zero word, `q−1` words of weight `q`, `q²−q` of weight
/// `q−1`).
pub fn gray_map(ring: &Arc<RingTable>) -> Result<GrayMap> {
    let q = require_length2_chain(ring)?;
    let order = ring.order();
    let transversal = ring.component_transversal(0, 1);
    debug_assert_eq!(transversal.len(), q);
    let resid: Vec<u8> = (0..order).map(|x| ring.component_residue(0, x) as u8).collect();

    let mut radd = vec![0u8; q * q];
    let mut rmul = vec![0u8; q * q];
    for i in 0..q {
        for j in 0..q {
            radd[i * q + j] = resid[ring.add(transversal[i] as usize, transversal[j] as usize)];
            rmul[i * q + j] = resid[ring.mul(transversal[i] as usize, transversal[j] as usize)];
        }
    }

    // socle coordinates: θ·τ(c) ↦ c
    let theta = ring.component_theta(0);
    let mut socle_coord: BTreeMap<usize, u8> = BTreeMap::new();
    for c in 0..q {
        socle_coord.insert(ring.mul(theta, transversal[c] as usize), c as u8);
    }
    if socle_coord.len() != q {
        return Err(Error::inconsistent("socle is not a free rank-1 module over the residue field"));
    }

    let mut table = Vec::with_capacity(order);
    for x in 0..order {
        let b = resid[x];
        let lift = transversal[b as usize] as usize;
        let d = ring.sub(x, lift);
        let a = *socle_coord
            .get(&d)
            .ok_or_else(|| Error::inconsistent(format!("x − τ(res x) escaped the socle at {x}")))?;
        let row: Vec<u8> = (0..q).map(|c| radd[a as usize * q + rmul[b as usize * q + c] as usize]).collect();
        table.push(row);
    }
    let map = GrayMap { ring: Arc::clone(ring), q, resid, radd, rmul, table };

    // pointwise isometry at γ = q−1
    let weights = hom_weight_table(ring, Rat::from_integer(q as i64 - 1))?;
    for x in 0..order {
        let ham = map.table[x].iter().filter(|&&v| v != 0).count();
        if weights.weight(x) != Rat::from_integer(ham as i64) {
            return Err(Error::inconsistent(format!(
                "Gray image of {x} has Hamming weight {ham} but homogeneous weight {}",
                weights.weight(x)
            )));
        }
    }
    // additivity on the socle
    let socle: Vec<usize> = ring.socle().iter().map(|&e| e as usize).collect();
    for &s1 in &socle {
        for &s2 in &socle {
            let sum = ring.add(s1, s2);
            let want: Vec<u8> =
                (0..q).map(|c| map.radd[map.table[s1][c] as usize * q + map.table[s2][c] as usize]).collect();
            if map.table[sum] != want {
                return Err(Error::inconsistent("Gray map is not additive on the socle"));
            }
        }
    }
    // image of R is the affine-function code
    let mut by_weight: BTreeMap<usize, usize> = BTreeMap::new();
    let mut distinct: BTreeSet<&Vec<u8>> = BTreeSet::new();
    for row in &map.table {
        distinct.insert(row);
        *by_weight.entry(row.iter().filter(|&&v| v != 0).count()).or_insert(0) += 1;
    }
    let expect: BTreeMap<usize, usize> =
        [(0, 1), (q - 1, q * q - q), (q, q - 1)].into_iter().collect();
    if distinct.len() != order || by_weight != expect {
        return Err(Error::inconsistent(format!(
            "Gray image of R is not the affine-function code: weights {by_weight:?}"
        )));
    }
    Ok(map)
}

/// Verdict of the field-linearity check of a Gray image.
#[derive(Clone, Debug)]
pub struct LinearityCheck {
    pub linear: bool,
    /// For non-linear images: two image words whose sum (or a scalar
    /// multiple of the first) leaves the image.
    pub witness: Option<LinearityWitness>,
}

#[derive(Clone, Debug)]
pub struct LinearityWitness {
    pub left: Vec<u8>,
    pub right: Option<Vec<u8>>,
    pub scalar: Option<u8>,
}

/// Decides whether the Gray image of a code is linear over the residue
/// field, by closure of the image set under addition and scalar
/// multiplication. Returns a violating pair or scalar as a witness.
pub fn gray_linear_check(map: &GrayMap, expanded: &ExpandedCode) -> Result<LinearityCheck> {
    if !Arc::ptr_eq(map.ring(), &expanded.code().ring_arc())
        && map.ring().spec() != expanded.ring().spec()
    {
        return Err(Error::invalid("Gray map and code live over different rings"));
    }
    if expanded.size() > 1 << 16 {
        return Err(Error::BoundExceeded { what: format!("linearity check on |C| = {}", expanded.size()), limit: 1 << 16 });
    }
    let q = map.q;
    let images: Vec<Vec<u8>> = expanded.words().iter().map(|w| map.map_word(w)).collect();
    let set: BTreeSet<&Vec<u8>> = images.iter().collect();
    // scalar closure
    for img in &images {
        for s in 2..q as u8 {
            let scaled: Vec<u8> = img.iter().map(|&v| map.rmul[v as usize * q + s as usize]).collect();
            if !set.contains(&scaled) {
                return Ok(LinearityCheck {
                    linear: false,
                    witness: Some(LinearityWitness { left: img.clone(), right: None, scalar: Some(s) }),
                });
            }
        }
    }
    // additive closure
    for (i, a) in images.iter().enumerate() {
        for b in images.iter().skip(i) {
            let sum: Vec<u8> = a.iter().zip(b).map(|(&x, &y)| map.radd[x as usize * q + y as usize]).collect();
            if !set.contains(&sum) {
                return Ok(LinearityCheck {
                    linear: false,
                    witness: Some(LinearityWitness { left: a.clone(), right: Some(b.clone()), scalar: None }),
                });
            }
        }
    }
    Ok(LinearityCheck { linear: true, witness: None })
}

/// Serialises a Gray image as a plain field-code file: one codeword per
/// line, residue-field symbols separated by spaces.
pub fn write_gray_image(map: &GrayMap, expanded: &ExpandedCode) -> String {
    let mut out = String::new();
    for w in expanded.words() {
        let img = map.map_word(w);
        out.push_str(&img.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" "));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::fixtures::arc_ring;
    use crate::codes::{check_code_properties, weight_enumerator};
    use crate::rings::unit_gamma_weights;
    use crate::srg::certify_srg;

    #[test]
    fn z4_line() {
        let ring = arc_ring("Z4");
        let line = hjelmslev_points(&ring).unwrap();
        assert_eq!(line.points.len(), 6);
        assert_eq!(line.classes.len(), 3);
        let pts: Vec<(u16, u16)> = line.points.clone();
        for expect in [(0, 1), (1, 0), (1, 1), (1, 2), (1, 3), (2, 1)] {
            assert!(pts.contains(&expect), "{expect:?} missing from {pts:?}");
        }
    }

    #[test]
    fn z9_and_gr42_lines() {
        let line = hjelmslev_points(&arc_ring("Z9")).unwrap();
        assert_eq!((line.points.len(), line.classes.len()), (12, 4));
        let line = hjelmslev_points(&arc_ring("GR(4,2)")).unwrap();
        assert_eq!((line.points.len(), line.classes.len()), (20, 5));
    }

    #[test]
    fn z4_code_certifies() {
        let ring = arc_ring("Z4");
        let line = hjelmslev_points(&ring).unwrap();
        let code = hjelmslev_code(&line, 1, &default_selection(&line, 1)).unwrap();
        let exp = code.expand().unwrap();
        let w = unit_gamma_weights(exp.ring());
        assert!(check_code_properties(&exp, &w).all());
        let e = weight_enumerator(&exp, &w);
        let ((w1, w2), (n, k, l, m)) = hjelmslev_expectations(2, 1);
        let _ = (w1, w2);
        assert_eq!(e.two_weights(), Some((Rat::from_integer(w1 as i64), Rat::from_integer(w2 as i64))));
        let cert = certify_srg(&exp, &w).unwrap();
        assert_eq!((cert.params.n, cert.params.k, cert.params.lambda, cert.params.mu), (n, k, l, m));
    }

    #[test]
    fn z9_code_weights() {
        let ring = arc_ring("Z9");
        let line = hjelmslev_points(&ring).unwrap();
        let code = hjelmslev_code(&line, 1, &default_selection(&line, 1)).unwrap();
        let exp = code.expand().unwrap();
        assert_eq!(exp.size(), 81);
        let w = unit_gamma_weights(exp.ring());
        let e = weight_enumerator(&exp, &w);
        // q=3, s=1: w1 = 9·2 = 18, w2 = 27
        assert_eq!(e.two_weights(), Some((Rat::from_integer(18), Rat::from_integer(27))));
    }

    #[test]
    fn gray_map_z4() {
        let ring = arc_ring("Z4");
        let map = gray_map(&ring).unwrap();
        assert_eq!(map.table[0], vec![0, 0]);
        assert_eq!(map.table[1], vec![0, 1]);
        assert_eq!(map.table[2], vec![1, 1]);
        assert_eq!(map.table[3], vec![1, 0]);
    }

    #[test]
    fn gray_map_z9_socle() {
        let ring = arc_ring("Z9");
        let map = gray_map(&ring).unwrap();
        // 3 is the socle generator: constant function of Hamming weight q
        assert_eq!(map.table[3], vec![1, 1, 1]);
    }

    #[test]
    fn gray_maps_build_everywhere() {
        for s in ["Z4", "Z9", "GR(4,2)", "ZX(2,2)", "ZX(3,2)", "Z25"] {
            gray_map(&arc_ring(s)).unwrap();
        }
    }

    #[test]
    fn diagonal_z4_code_is_gray_linear() {
        // {00, 11, 22, 33}: image {0000, 0101, 1111, 1010} is closed
        let ring = arc_ring("Z4");
        let code = LinearCode::new(
            Arc::clone(&ring),
            Shape::new(vec![vec![2]]),
            vec![vec![1, 1]],
        )
        .unwrap();
        let exp = code.expand().unwrap();
        let map = gray_map(&ring).unwrap();
        let check = gray_linear_check(&map, &exp).unwrap();
        assert!(check.linear);
    }

    #[test]
    fn zero_code_is_gray_linear() {
        let ring = arc_ring("Z4");
        let code = LinearCode::new(Arc::clone(&ring), Shape::new(vec![vec![1]]), vec![vec![0]]).unwrap();
        let exp = code.expand().unwrap();
        let map = gray_map(&ring).unwrap();
        assert!(gray_linear_check(&map, &exp).unwrap().linear);
    }

    #[test]
    fn z4_family_counts_and_nonlinearity() {
        let ring = arc_ring("Z4");
        let line = hjelmslev_points(&ring).unwrap();
        let family = enumerate_hjelmslev_family(&line, 1, 1 << 20).unwrap();
        assert_eq!(family.selections, 8);
        assert_eq!(family.codes.len(), 4);
        let map = gray_map(&ring).unwrap();
        for code in &family.codes {
            let exp = code.expand().unwrap();
            let check = gray_linear_check(&map, &exp).unwrap();
            assert!(!check.linear);
            assert!(check.witness.is_some());
        }
    }
}

//! Property tests for the structural invariants: grammar round trips,
//! weight axioms at arbitrary γ, coefficient-vector uniqueness for pivoted
//! generators, monomial invariance of the property flags, and solver
//! completeness against brute force.

use proptest::prelude::*;
use std::sync::Arc;
use twoweight::codes::{check_code_properties, LinearCode, Shape};
use twoweight::rings::{
    build_ring, character_weight_crosscheck, hom_weight_table, parse_ring_spec, unit_gamma_weights, ChainSpec,
    RingSpec, RingTable,
};
use twoweight::search::{solve_dio, DioSystem, OrbitReps, SearchOptions};
use twoweight::Rat;

fn chain_spec() -> impl Strategy<Value = ChainSpec> {
    prop_oneof![
        (prop_oneof![Just(2u64), Just(3), Just(5)], 1..=2u32).prop_map(|(p, k)| ChainSpec::Field { p, k }),
        (prop_oneof![Just(2u64), Just(3), Just(5)], 1..=3u32).prop_map(|(p, m)| ChainSpec::IntegerResidue { p, m }),
        (prop_oneof![Just(2u64), Just(3)], 2..=3u32).prop_map(|(p, e)| ChainSpec::TruncatedPoly { p, e }),
        prop_oneof![Just(2u64), Just(3), Just(5)].prop_map(|p| ChainSpec::Witt { p, nonsquare: false }),
        prop_oneof![Just(3u64), Just(5)].prop_map(|p| ChainSpec::Witt { p, nonsquare: true }),
        Just(ChainSpec::GaloisRing { p: 2, r: 2 }),
    ]
}

fn ring_spec() -> impl Strategy<Value = RingSpec> {
    prop::collection::vec(chain_spec(), 1..=3).prop_map(|cs| RingSpec::new(cs).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// The text grammar round-trips every constructible spec.
    #[test]
    fn grammar_round_trip(spec in ring_spec()) {
        let text = spec.to_string();
        let parsed = parse_ring_spec(&text).unwrap();
        prop_assert_eq!(parsed, spec);
    }

    /// Unit counts and primary decompositions are consistent: the unit count
    /// of the product is the product over the primary components.
    #[test]
    fn primary_decomposition_units(spec in ring_spec()) {
        let total: u64 = spec.primary_decomposition().iter().map(|(_, r)| r.units_count()).product();
        prop_assert_eq!(total, spec.units_count());
    }
}

fn small_ring() -> impl Strategy<Value = &'static str> {
    prop_oneof![
        Just("Z4"), Just("Z6"), Just("Z9"), Just("GF(4)"), Just("GF(8)"), Just("ZX(2,2)"),
        Just("ZX(3,2)"), Just("W(3,1)"), Just("W(3,n)"), Just("GF(4)xGF(2)"), Just("Z4xZ3"),
        Just("GR(4,2)"), Just("Z2xZ2"),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    /// The ideal-average axiom Σ_{y∈Rx} w(y) = γ|Rx| and the character
    /// description hold at arbitrary positive rational γ.
    #[test]
    fn weight_axioms_any_gamma(spec in small_ring(), num in 1i64..20, den in 1i64..8) {
        let ring = build_ring(&parse_ring_spec(spec).unwrap()).unwrap();
        let gamma = Rat::new(num, den);
        let w = hom_weight_table(&ring, gamma).unwrap();
        for ideal in ring.principal_ideals() {
            if ideal.len() == 1 { continue; }
            let sum: Rat = ideal.elements.iter().map(|&e| w.weight(e as usize)).sum();
            prop_assert_eq!(sum, gamma * Rat::from_integer(ideal.len() as i64));
        }
        prop_assert!(character_weight_crosscheck(&ring, &w) < 1e-9);
    }
}

fn pivoted_code(ring: &Arc<RingTable>, shape: &Shape, extra: &[usize]) -> LinearCode {
    // one pivot column per row (the block ideal generator) plus arbitrary
    // extra columns drawn from the column module
    let blocks = shape.row_blocks();
    let ideals: Vec<Vec<u16>> = blocks.iter().map(|&(i, l)| ring.component_ideal(i, l)).collect();
    let rows = blocks.len();
    let mut cols: Vec<Vec<u16>> = Vec::new();
    for (r, ideal) in ideals.iter().enumerate() {
        let mut col = vec![0u16; rows];
        let gen = ideal
            .iter()
            .copied()
            .find(|&g| {
                let mut set: Vec<u16> = (0..ring.order()).map(|x| ring.mul(x, g as usize) as u16).collect();
                set.sort_unstable();
                set.dedup();
                set.len() == ideal.len()
            })
            .expect("block ideal has a generator");
        col[r] = gen;
        cols.push(col);
    }
    for &pick in extra {
        let col: Vec<u16> = ideals.iter().map(|ideal| ideal[pick % ideal.len()]).collect();
        cols.push(col);
    }
    let gen_rows: Vec<Vec<u16>> = (0..rows).map(|r| cols.iter().map(|c| c[r]).collect()).collect();
    LinearCode::new(Arc::clone(ring), shape.clone(), gen_rows).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    /// A generator with one pivot column per block row expands faithfully:
    /// exactly Π qᵢ^{|λᵢ|} distinct codewords, one per coefficient tuple.
    #[test]
    fn pivoted_generators_expand_faithfully(extra in prop::collection::vec(0usize..64, 0..4)) {
        for (spec, parts) in [
            ("Z4", vec![vec![2, 1]]),
            ("Z9", vec![vec![2, 2]]),
            ("GF(4)xGF(2)", vec![vec![1], vec![1, 1]]),
            ("ZX(2,2)", vec![vec![2, 1, 1]]),
        ] {
            let ring = Arc::new(build_ring(&parse_ring_spec(spec).unwrap()).unwrap());
            let shape = Shape::new(parts);
            let code = pivoted_code(&ring, &shape, &extra);
            let expanded = code.expand().unwrap();
            prop_assert!(expanded.is_faithful());
            prop_assert_eq!(expanded.size() as u64, code.expected_size());
        }
    }

    /// The proper/regular/projective flags are invariant under column
    /// permutation and unit rescaling of columns.
    #[test]
    fn flags_are_monomial_invariants(perm_seed in 0usize..24, unit_seed in 0usize..64) {
        let ring = Arc::new(build_ring(&parse_ring_spec("Z4").unwrap()).unwrap());
        let shape = Shape::new(vec![vec![2, 2]]);
        let base = vec![vec![1u16, 0, 1], vec![0, 1, 1]];
        let n = 3;
        let units = [1u16, 3];
        // decode a permutation of 3 columns and a unit per column
        let perms = [[0usize, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
        let perm = perms[perm_seed % 6];
        let scales: Vec<u16> = (0..n).map(|j| units[(unit_seed >> j) & 1]).collect();
        let transformed: Vec<Vec<u16>> = base
            .iter()
            .map(|row| (0..n).map(|j| (row[perm[j]] as usize * scales[j] as usize % 4) as u16).collect())
            .collect();
        let w = unit_gamma_weights(&ring);
        let a = check_code_properties(&LinearCode::new(Arc::clone(&ring), shape.clone(), base).unwrap().expand().unwrap(), &w);
        let b = check_code_properties(&LinearCode::new(ring, shape, transformed).unwrap().expand().unwrap(), &w);
        prop_assert_eq!(a, b);
    }

    /// Solver completeness: on arbitrary small systems the backtracking
    /// solution set is bit-for-bit the brute-force subset enumeration.
    #[test]
    fn solver_is_complete(
        rows in 1usize..12,
        cols in 1usize..10,
        n in 1u64..6,
        w1 in 1i64..10,
        gap in 1i64..5,
        k in 0u64..12,
        entries in prop::collection::vec(0i64..6, 12 * 10),
    ) {
        let n = n.min(cols as u64);
        let k = k.min(rows as u64);
        let w: Vec<i64> = (0..rows * cols).map(|i| entries[i]).collect();
        let system = DioSystem {
            w, rows, cols, w1, w2: w1 + gap, n, k,
            reps: OrbitReps { reps: vec![], orbit_sizes: vec![], total_regular: 0 },
            x_tuples: vec![],
        };
        let out = solve_dio(&system, &SearchOptions::default());
        prop_assert!(out.complete);
        let got: Vec<Vec<bool>> = out.solutions.iter().map(|s| s.v.clone()).collect();
        let mut expect = Vec::new();
        for mask in 0u32..1 << cols {
            if mask.count_ones() as u64 != n { continue; }
            let pick: Vec<bool> = (0..cols).map(|c| mask >> c & 1 == 1).collect();
            let mut ones = 0u64;
            let mut ok = true;
            for r in 0..rows {
                let s: i64 = (0..cols).filter(|&c| pick[c]).map(|c| system.w[r * cols + c]).sum();
                if s == system.w1 { ones += 1; } else if s != system.w2 { ok = false; break; }
            }
            if ok && ones == k { expect.push(pick); }
        }
        expect.sort();
        prop_assert_eq!(got, expect);
    }
}

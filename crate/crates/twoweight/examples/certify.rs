//! Builds the length-3 two-weight code over GF(4)xGF(2) from scratch and
//! prints its invariants and graph certificate.

use std::sync::Arc;
use twoweight::codes::{check_code_properties, weight_enumerator, LinearCode, Shape};
use twoweight::rings::{build_ring, parse_ring_spec, unit_gamma_weights};
use twoweight::srg::{certify_srg, verify_eigen_relations};

fn main() {
    let spec = parse_ring_spec("GF(4)xGF(2)").unwrap();
    let ring = Arc::new(build_ring(&spec).unwrap());
    let shape = Shape::new(vec![vec![1], vec![1, 1]]);
    let code = LinearCode::new(ring, shape, vec![vec![1, 1, 1], vec![4, 4, 0], vec![0, 4, 4]]).unwrap();

    let expanded = code.expand().unwrap();
    let weights = unit_gamma_weights(expanded.ring());
    let props = check_code_properties(&expanded, &weights);
    println!("ring {spec}, length {}, |C| = {}", expanded.length(), expanded.size());
    println!("proper {}, regular {}, projective {}", props.proper, props.regular, props.projective);

    let enumerator = weight_enumerator(&expanded, &weights);
    for (w, count) in &enumerator.spectrum {
        println!("weight {w}: {count} codeword(s)");
    }

    let cert = certify_srg(&expanded, &weights).unwrap();
    let p = cert.params;
    println!("certified srg({}, {}, {}, {}), spectrum {}^{} {}^{}", p.n, p.k, p.lambda, p.mu, p.rho1, p.m1, p.rho2, p.m2);
    let checks = verify_eigen_relations(&expanded, &weights, &p).unwrap();
    println!("{} eigenvalue/weight/multiplicity relations verified", checks.checks.len());
}

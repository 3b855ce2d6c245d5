//! Quartet classification, interference counting and exact resonance
//! enumeration.
//!
//! ```bash
//! cargo run --example quartet_census
//! ```

use nls_spectra::quartets::{
    classify, count_interference_terms, enumerate_resonant, is_trivial, nr_set,
    DispersionRelation, Quartet,
};

fn main() {
    // the five interaction kinds
    for (l, m, n, k) in [(0, 0, 0, 0), (-2, 0, -2, 0), (-1, -1, -2, 0), (-2, 2, 0, 0), (-2, 1, -1, 0)] {
        let q = Quartet::new(l, m, n, k);
        let c = classify(&q).unwrap();
        println!(
            "({l:2},{m:2},{n:2},{k:2})  {:?} ×{}  trivial={}",
            c.kind,
            c.multiplicity,
            is_trivial(&q).unwrap()
        );
    }

    // interference counting on the band −N…N
    println!("\ninterference terms felt by mode k on the band −N…N:");
    println!("  N   k=0 (3N²+3N+2)   k=N (boundary)");
    for n in [0i64, 1, 2, 5, 10] {
        println!(
            "{n:3}   {:6}            {:6}",
            count_interference_terms(n, 0).unwrap(),
            count_interference_terms(n, n).unwrap()
        );
    }
    println!(
        "the N=2 band splits into 2(2N+1) = 10 XPM terms and |nr₀| = {} FWM triples",
        nr_set(0, 2).unwrap().len()
    );

    // exact resonance enumeration: convex vs non-convex relations
    let quadratic = DispersionRelation::quadratic();
    let res = enumerate_resonant(&quadratic, 16).unwrap();
    let trivial = res.iter().filter(|q| is_trivial(q).unwrap()).count();
    println!("\nζ(k) = k², box 16: {} resonant quartets, {trivial} trivial — the convex", res.len());
    println!("relation admits no energy-transporting resonances.");

    let cubic = DispersionRelation::new(vec![0, 0, 3, 1]);
    let res = enumerate_resonant(&cubic, 8).unwrap();
    let nontrivial: Vec<&Quartet> = res.iter().filter(|q| !is_trivial(q).unwrap()).collect();
    println!(
        "\nζ(k) = k³+3k², box 8: {} resonant, {} nontrivial; the first few couplings:",
        res.len(),
        nontrivial.len()
    );
    for q in nontrivial.iter().take(6) {
        println!("  ({}, {}, {}, {})", q.l, q.m, q.n, q.k);
    }
}

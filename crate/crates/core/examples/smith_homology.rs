//! Smith normal form and abelianizations of presentations.

use forge::dsl::parse_presentation;
use forge::homcalc::{abelianization, mapping_torus_h1, smith_normal_form, IntMatrix};

fn main() {
    let m = IntMatrix::from_i64([[2, 4, 4], [-6, 6, 12], [10, -4, -16]]);
    let s = smith_normal_form(&m);
    println!("invariant factors: {:?}", s.invariant_factors().iter().map(|x| x.to_string()).collect::<Vec<_>>());
    assert_eq!(s.u.mul(&m).mul(&s.v), s.d);

    for src in ["gens: x, y; rels: x^2, y^3", "gens: a, b; rels: a b a^-1 b^-1", "gens: s, t; rels: s^3 t^-2, s t s t^-1"] {
        let p = parse_presentation(src).expect("presentation");
        println!("{src:<40} H1 = {}", abelianization(&p));
    }

    // mapping torus of the hyperelliptic involution on H1 of the genus-2 surface
    let minus = IntMatrix::diagonal(&[-1i64; 4]);
    println!("H1 of the mapping torus of -I: {}", mapping_torus_h1(&minus).expect("square"));
}

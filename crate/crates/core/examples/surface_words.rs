//! Word problem and conjugacy in the genus-2 surface group.

use forge::dsl::{parse_word, surface_alphabet};
use forge::mcg::surface;
use forge::words::{Conjugacy, DEFAULT_BOUND};

fn main() {
    let g = surface();
    let abc = surface_alphabet();
    let word = |s: &str| parse_word(s, abc).expect("word");

    for s in ["x1 y1 x1^-1 y1^-1 x2 y2 x2^-1 y2^-1", "x1 y1 x1^-1 y1^-1", "y2 x2 y2^-1 x1 y1 x1^-1 y1^-1 x2"] {
        let w = word(s);
        println!("{s:<40} -> {:<24} trivial: {}", g.dehn_reduce(&w).display(abc).to_string(), g.is_trivial(&w));
    }

    let u = word("x2 y1 x1 y1^-1 x2^-1");
    let v = word("x1");
    match g.conjugacy(&u, &v, DEFAULT_BOUND) {
        Conjugacy::Witness(w) => println!("conjugate via {}", w.display(abc)),
        Conjugacy::NotConjugate => println!("not conjugate"),
        Conjugacy::Exhausted => println!("no conjugator within bound {DEFAULT_BOUND}"),
    }
    println!("x1 ~ y1? {:?}", g.conjugacy(&word("x1"), &word("y1"), DEFAULT_BOUND));
}

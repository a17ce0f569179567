//! Mapping class identities checked up to inner automorphisms.

use forge::dsl::parse_twist_word;
use forge::mcg::{mc_equal, McEquality};
use forge::words::DEFAULT_BOUND;

fn main() {
    let pairs = [
        ("a b d^-1 e^-1", "comm(a b, phi)"),
        ("conj(a b d^-1 e^-1, e^-1)", "a b e^-1 d^-1"),
        ("phi^2", "id"),
        ("conj(a, phi)", "e"),
        ("conj(a b, eps)", "e^-1 d^-1"),
        ("(a b c d e)^6", "id"),
        ("a b", "b a"),
    ];
    for (l, r) in pairs {
        let class = |s: &str| parse_twist_word(s).unwrap().mapping_class_closed().unwrap();
        let verdict = match mc_equal(&class(l), &class(r), DEFAULT_BOUND) {
            McEquality::Equal(w) => format!("equal (conjugator length {})", w.len()),
            McEquality::NotEqual => "different".to_string(),
            McEquality::BoundExhausted => "undecided within bound".to_string(),
        };
        println!("{l:>28} vs {r:<18} {verdict}");
    }
}

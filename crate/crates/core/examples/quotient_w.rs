//! Double of V, its free quotient W, and the mod-2 ledger.

use forge::bundles::{manifold_v, v_report};
use forge::quotients::{double_report, mod2_form_from_ledger, quotient_report, CycleLedger, DeckAction, Double, FreeQuotient};

fn main() {
    let v = v_report(&manifold_v()).expect("V");
    let double = Double { half: v, gluing: "id".into() };
    let z = double_report(&double).expect("Z");
    println!("Z: chi = {}, betti = {:?}, H1 = {}", z.euler, z.betti, z.h1);

    let mut ledger = CycleLedger::new("W");
    for c in ["F", "Gamma"] {
        ledger.add_class(c).unwrap();
    }
    ledger.add_pair("F", "F", 0, "cited").unwrap();
    ledger.add_pair("F", "Gamma", 1, "cited").unwrap();
    ledger.add_pair("Gamma", "Gamma", 0, "cited").unwrap();
    let summary = mod2_form_from_ledger(&ledger).expect("ledger");
    println!("ledger form: even {}, hyperbolic {}", summary.even, summary.hyperbolic);

    let q = FreeQuotient { name: "W".into(), double, deck: DeckAction::free_involution() };
    let w = quotient_report(&q, Some(&ledger)).expect("W");
    println!("W: chi = {}, betti = {:?}, H1 = {}, spin = {:?}", w.euler, w.betti, w.h1, w.spin);
    let labels: Vec<_> = w.assumptions().iter().map(|a| a.label()).collect();
    println!("holds given: {}", labels.join(", "));
}

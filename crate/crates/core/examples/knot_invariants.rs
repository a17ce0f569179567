//! Alexander polynomial, Arf invariant and signature from Seifert matrices.

use forge::dsl::{parse_document, Item};
use forge::knots::{alexander, arf, arf_from_alexander, determinant_and_signature, fibered_necessary, slice_family_eligible};
use forge::suite::KNOTS_DSL;

fn main() {
    let doc = parse_document(KNOTS_DSL).expect("knot table");
    for item in &doc.items {
        let Item::Knot(k) = item else { continue };
        let d = alexander(&k.seifert);
        let (det, sig) = determinant_and_signature(&k.seifert);
        println!(
            "{:<7} Δ = {:<28} Arf {} (from Δ: {})  det {det:<3} σ {sig:<3} fibered-compatible {:<5} slice family {}",
            k.name,
            d.to_string(),
            arf(&k.seifert),
            arf_from_alexander(&d),
            fibered_necessary(&k.seifert),
            slice_family_eligible(k)
        );
    }
}

//! The bundle R over the torus, Luttinger surgeries and the manifold V.

use forge::bundles::{bundle_h1_from_matrices, bundle_r, manifold_v, sections_generate_relative_h2, surgery_presentation, v_report};
use forge::homcalc::abelianization;

fn main() {
    let r = bundle_r();
    println!("chi(R) = {}, H1(R) = {}", r.euler_characteristic(), bundle_h1_from_matrices(&r));
    println!("boundary monodromy: {}", r.boundary_monodromy_expr());

    let v = manifold_v();
    let p = surgery_presentation(&v).expect("presentation");
    println!("pi1(V): {} generators, {} relators", p.generators().len(), p.relators().len());
    println!("H1(V) = {}", abelianization(&p));
    println!("chi(V) = {}", v.euler_characteristic());
    for (name, ok) in sections_generate_relative_h2(&v) {
        println!("section {name}: dual to a fiber class: {ok}");
    }
    let report = v_report(&v).expect("report");
    println!("{}", serde_json::to_string_pretty(&report.to_json()).unwrap());
}

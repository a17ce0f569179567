//! Parsing, printing and error reporting for the input language.

use forge::dsl::parse_document;

const SRC: &str = "
# a small document
twist m = a b d^-1 e^-1;
equal m == comm(a b, phi);
word w = x1 y1 x1^-1 y1^-1;
presentation P { gens: x, y; rels: x^2, y^3, x y x y x y x y x y }
form H { ring Z; matrix [[0,1],[1,0]] (+) diag(1,-1) }
";

fn main() {
    let doc = parse_document(SRC).expect("valid document");
    println!("{} statements, printed back:\n{doc}", doc.items.len());
    assert_eq!(parse_document(&doc.to_string()).unwrap(), doc);

    for bad in ["twist t = a b^;", "equal a == q;", "form F { ring Q; diag(1) }"] {
        match parse_document(bad) {
            Ok(_) => println!("{bad:<28} parsed"),
            Err(e) => println!("{bad:<28} {e}"),
        }
    }
}

use super::*;
use crate::expr::Expr;
use crate::mcg::{Generator, TwistAtom};

#[test]
fn twist_words() {
    let e = parse_twist_word("a b d^-1 e^-1").unwrap();
    assert_eq!(
        e,
        TwistExpr::gens(&[(Generator::A, 1), (Generator::B, 1), (Generator::D, -1), (Generator::E, -1)])
    );
    let c = parse_twist_word("comm(a b, phi)").unwrap();
    assert!(matches!(c, Expr::Comm(..)));
    assert_eq!(c.to_string(), "comm(a b, phi)");
    let k = parse_twist_word("conj(a b d^-1 e^-1, e^-1)").unwrap();
    assert!(matches!(k, Expr::Conj(..)));
    assert_eq!(parse_twist_word("epsilon").unwrap(), Expr::Atom(TwistAtom::Gen(Generator::Epsilon)));
}

#[test]
fn error_positions() {
    let err = parse_twist_word("a b^").unwrap_err();
    assert!(matches!(err, DslError::Syntax { .. }));
    assert_eq!(err.pos(), Pos { line: 1, col: 5 });
    let err = parse_twist_word("a q b").unwrap_err();
    assert_eq!(
        err,
        DslError::UnknownGenerator {
            name: "q".into(),
            pos: Pos { line: 1, col: 3 }
        }
    );
    let err = parse_document("twist m = a b;\nequal m == (a b;\n").unwrap_err();
    assert_eq!(err.pos(), Pos { line: 2, col: 16 });
    assert!(parse_document("luttinger { torus e beta; slope +1 }").is_err());
    assert!(parse_document("twist a = b;").is_err());
    assert!(parse_document("form { ring Z; matrix [[0,1],[2,0]] }").is_err());
    assert!(parse_document("knot K { seifert [[1,0],[0,1]]; g4 0; sna false }").is_err());
}

#[test]
fn words_and_presentations() {
    let w = parse_word("x1 y1 x1^-1 y1^-1", surface_alphabet()).unwrap();
    assert_eq!(w, Word::from_signed(&[1, 2, -1, -2]));
    assert_eq!(parse_word("1", surface_alphabet()).unwrap(), Word::identity());
    assert_eq!(parse_word("x1^3 x1^-2", surface_alphabet()).unwrap(), Word::generator(0));
    let p = parse_presentation("gens: x,y ; rels: x y x^-1 y^-1").unwrap();
    assert_eq!(p.generators(), ["x".to_string(), "y".to_string()]);
    assert_eq!(crate::homcalc::abelianization(&p), crate::homcalc::FPAbelianGroup::free(2));
    assert!(parse_presentation("gens: ; rels:").unwrap().is_trivial());
}

const SAMPLE: &str = "
# comment
word r = x1 y1 x1^-1 y1^-1 x2 y2 x2^-1 y2^-1;
twist m = a b d^-1 e^-1;
equal m == comm(a b, phi);
presentation P { gens: x, y; rels: x y x^-1 y^-1, x^2 }
bundle R { fiber_genus 2; alpha: phi; beta: a b; section Gamma 1; section Gamma' 1 }
luttinger { torus c alpha; meridian comm(b, beta''); slope +1 }
luttinger { torus e beta; meridian comm(z, alpha''); slope +1 }
ledger W { class F; class Gamma; pair F F = 0 cited; pair F Gamma = 1 cited; pair Gamma Gamma = 0 cited }
form A { ring Z; matrix [[0,1],[1,1]] (+) diag(-1,-1,-1,-1) }
knot 4_1 { seifert [[1,1],[0,-1]]; g4 1; sna true }
";

#[test]
fn document_round_trip() {
    let doc = parse_document(SAMPLE).unwrap();
    assert_eq!(doc.items.len(), 8);
    let printed = doc.to_string();
    assert_eq!(parse_document(&printed).unwrap(), doc);
    match &doc.items[4] {
        Item::Bundle(b) => {
            assert_eq!(b.surgeries.len(), 2);
            let s = b.surgered(&doc.twist_env().unwrap()).unwrap();
            assert_eq!(s, crate::bundles::manifold_v());
        }
        other => panic!("expected a bundle, got {other:?}"),
    }
    match &doc.items[6] {
        Item::Form(f) => assert_eq!(f.form().unwrap().rank(), 6),
        other => panic!("expected a form, got {other:?}"),
    }
}

use std::fmt;

use crate::forms::Ring;
use crate::homcalc::IntMatrix;

use super::{surface_alphabet, BundleDef, Document, FormDef, FormTerm, Item};

fn join<T: fmt::Display>(items: impl IntoIterator<Item = T>, sep: &str) -> String {
    items.into_iter().map(|x| x.to_string()).collect::<Vec<_>>().join(sep)
}

fn rows_literal(rows: &[Vec<i64>]) -> String {
    format!("[{}]", join(rows.iter().map(|r| format!("[{}]", join(r, ","))), ","))
}

fn matrix_literal(m: &IntMatrix) -> String {
    format!("[{}]", join(m.to_rows().iter().map(|r| format!("[{}]", join(r, ","))), ","))
}

fn signed(k: i64) -> String {
    if k > 0 {
        format!("+{k}")
    } else {
        k.to_string()
    }
}

fn opt_name(n: &Option<String>) -> String {
    n.as_ref().map(|s| format!(" {s}")).unwrap_or_default()
}

impl fmt::Display for FormTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FormTerm::Matrix(rows) => f.write_str(&rows_literal(rows)),
            FormTerm::Diag(d) => write!(f, "diag({})", join(d, ",")),
        }
    }
}

impl fmt::Display for FormDef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ring = match self.ring {
            Ring::Z => "Z",
            Ring::Z2 => "Z2",
        };
        write!(
            f,
            "form{} {{ ring {ring}; matrix {} }}",
            opt_name(&self.name),
            join(&self.terms, " (+) ")
        )
    }
}

impl fmt::Display for BundleDef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "bundle{} {{ fiber_genus {}; alpha: {}; beta: {}",
            opt_name(&self.name),
            self.fiber_genus,
            self.alpha,
            self.beta
        )?;
        for s in &self.sections {
            write!(f, "; section {} {}", s.name, s.fiber_intersection)?;
        }
        f.write_str(" }")?;
        for t in &self.surgeries {
            write!(f, "\nluttinger {{ torus {} {}", t.fiber_curve.name(), t.direction.name())?;
            if let Some(m) = &t.meridian {
                write!(f, "; meridian {m}")?;
            }
            write!(f, "; slope {} }}", signed(t.coefficient))?;
        }
        Ok(())
    }
}

impl fmt::Display for Item {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Item::Word { name, word } => write!(f, "word {name} = {};", word.display(surface_alphabet())),
            Item::Twist { name, expr } => write!(f, "twist {name} = {expr};"),
            Item::Equal { lhs, rhs } => write!(f, "equal {lhs} == {rhs};"),
            Item::Presentation { name, presentation } => {
                let alphabet = crate::words::Alphabet::new(presentation.generators().to_vec());
                let rels = match &alphabet {
                    Ok(a) => join(presentation.relators().iter().map(|r| r.display(a).to_string()), ", "),
                    Err(_) => String::new(),
                };
                write!(
                    f,
                    "presentation{} {{ gens: {}; rels: {} }}",
                    opt_name(name),
                    presentation.generators().join(", "),
                    rels
                )
            }
            Item::Bundle(b) => write!(f, "{b}"),
            Item::Ledger(l) => {
                write!(f, "ledger {} {{ ", l.name)?;
                let mut parts: Vec<String> = l.classes().iter().map(|c| format!("class {c}")).collect();
                parts.extend(
                    l.entries()
                        .iter()
                        .map(|e| format!("pair {} {} = {} {}", e.a, e.b, e.value, e.provenance)),
                );
                write!(f, "{} }}", parts.join("; "))
            }
            Item::Form(d) => write!(f, "{d}"),
            Item::Knot(k) => write!(
                f,
                "knot {} {{ seifert {}; g4 {}; sna {} }}",
                k.name,
                matrix_literal(k.seifert.matrix()),
                k.four_ball_genus,
                k.strongly_neg_amphichiral
            ),
        }
    }
}

impl fmt::Display for Document {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for item in &self.items {
            writeln!(f, "{item}")?;
        }
        Ok(())
    }
}

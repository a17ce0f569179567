//! Text syntax for words, twist words, presentations, bundles, ledgers, forms
//! and knots.
//!
//! ```text
//! word r = x1 y1 x1^-1 y1^-1 x2 y2 x2^-1 y2^-1;
//! twist m = a b d^-1 e^-1;
//! equal m == comm(a b, phi);
//! presentation P { gens: x, y; rels: x y x^-1 y^-1 }
//! bundle R { fiber_genus 2; alpha: phi; beta: a b; section Gamma 1 }
//! luttinger { torus e beta; meridian comm(z, alpha''); slope +1 }
//! ledger W { class F; class Gamma; pair F F = 0 cited; pair F Gamma = 1 cited; pair Gamma Gamma = 0 cited }
//! form A { ring Z; matrix [[0,1],[1,1]] (+) diag(-1,-1,-1,-1) }
//! knot 4_1 { seifert [[1,1],[0,-1]]; g4 1; sna true }
//! ```
//!
//! `#` and `//` start comments. A `luttinger` block attaches to the closest
//! preceding `bundle`. Printing a [`Document`] and parsing it back gives the
//! same value.

mod lexer;
mod parser;
mod print;

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

use crate::bundles::{SurfaceBundle, LuttingerDatum, Pushoffs, Section, SurgeredBundle, BundleError};
use crate::forms::{BilinearForm, FormError, Ring};
use crate::homcalc::{GroupPresentation, IntMatrix};
use crate::knots::KnotRecord;
use crate::mcg::{MappingClass, McgError, TwistExpr};
use crate::quotients::CycleLedger;
use crate::words::{Alphabet, Word};

pub use parser::{parse_document, parse_pi_word, parse_presentation, parse_twist_word, parse_word};

/// One-based line and column.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, col {}", self.line, self.col)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DslError {
    #[error("syntax error at {pos}: {msg}")]
    Syntax { pos: Pos, msg: String },
    #[error("unknown generator `{name}` at {pos}")]
    UnknownGenerator { name: String, pos: Pos },
    #[error("invalid value at {pos}: {msg}")]
    Invalid { pos: Pos, msg: String },
}

impl DslError {
    pub(crate) fn syntax(pos: Pos, msg: impl Into<String>) -> Self {
        DslError::Syntax { pos, msg: msg.into() }
    }

    pub(crate) fn invalid(pos: Pos, msg: impl fmt::Display) -> Self {
        DslError::Invalid { pos, msg: msg.to_string() }
    }

    pub fn pos(&self) -> Pos {
        match self {
            DslError::Syntax { pos, .. } | DslError::UnknownGenerator { pos, .. } | DslError::Invalid { pos, .. } => *pos,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Document {
    pub items: Vec<Item>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Item {
    /// Word in the genus-2 surface group.
    Word { name: String, word: Word },
    Twist { name: String, expr: TwistExpr },
    Equal { lhs: TwistExpr, rhs: TwistExpr },
    Presentation { name: Option<String>, presentation: GroupPresentation },
    Bundle(BundleDef),
    Ledger(CycleLedger),
    Form(FormDef),
    Knot(KnotRecord),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BundleDef {
    pub name: Option<String>,
    pub fiber_genus: usize,
    pub alpha: TwistExpr,
    pub beta: TwistExpr,
    pub sections: Vec<Section>,
    pub surgeries: Vec<LuttingerDatum>,
}

impl BundleDef {
    pub fn bundle(&self, env: &HashMap<String, MappingClass>) -> Result<SurfaceBundle, BundleError> {
        SurfaceBundle::with_base(
            self.fiber_genus,
            crate::bundles::BaseSurface::PUNCTURED_TORUS,
            self.alpha.clone(),
            self.beta.clone(),
            env,
        )
    }

    pub fn surgered(&self, env: &HashMap<String, MappingClass>) -> Result<SurgeredBundle, BundleError> {
        SurgeredBundle::new(self.bundle(env)?, self.surgeries.clone(), self.sections.clone(), Pushoffs::default())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FormTerm {
    Matrix(Vec<Vec<i64>>),
    Diag(Vec<i64>),
}

impl FormTerm {
    fn matrix(&self) -> IntMatrix {
        match self {
            FormTerm::Matrix(rows) if rows.is_empty() => IntMatrix::zeros(0, 0),
            FormTerm::Matrix(rows) => IntMatrix::from_rows(rows).expect("rows checked by the parser"),
            FormTerm::Diag(d) => IntMatrix::diagonal(d),
        }
    }
}

/// Block sum of its terms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormDef {
    pub name: Option<String>,
    pub ring: Ring,
    pub terms: Vec<FormTerm>,
}

impl FormDef {
    pub fn form(&self) -> Result<BilinearForm, FormError> {
        let m = self
            .terms
            .iter()
            .fold(IntMatrix::zeros(0, 0), |acc, t| acc.block_sum(&t.matrix()));
        BilinearForm::new(self.ring, m)
    }
}

impl Document {
    /// Mapping classes of the named twist words, in order of definition.
    pub fn twist_env(&self) -> Result<HashMap<String, MappingClass>, McgError> {
        let mut env = HashMap::new();
        for item in &self.items {
            if let Item::Twist { name, expr } = item {
                let m = expr.mapping_class(&env)?;
                env.insert(name.clone(), m);
            }
        }
        Ok(env)
    }
}

/// Names of the genus-2 surface generators, `x1 y1 x2 y2`.
pub fn surface_alphabet() -> &'static Alphabet {
    crate::mcg::surface().alphabet()
}

#[cfg(test)]
mod tests;

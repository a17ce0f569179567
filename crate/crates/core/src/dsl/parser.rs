use std::collections::HashSet;

use crate::bundles::{BaseDirection, LuttingerDatum, PiAtom, PiExpr, Section};
use crate::expr::Expr;
use crate::forms::Ring;
use crate::homcalc::{GroupPresentation, IntMatrix};
use crate::knots::{KnotRecord, SeifertMatrix};
use crate::mcg::{CurveName, Generator, TwistAtom, TwistExpr};
use crate::quotients::CycleLedger;
use crate::words::{Alphabet, Letter, Word};

use super::lexer::{lex, Tok, Token};
use super::{surface_alphabet, BundleDef, Document, DslError, FormDef, FormTerm, Item, Pos};

const KEYWORDS: [&str; 3] = ["comm", "conj", "id"];

struct Parser {
    toks: Vec<Token>,
    at: usize,
}

impl Parser {
    fn new(src: &str) -> Result<Self, DslError> {
        Ok(Parser { toks: lex(src)?, at: 0 })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.at].tok
    }

    fn peek2(&self) -> &Tok {
        &self.toks[(self.at + 1).min(self.toks.len() - 1)].tok
    }

    fn pos(&self) -> Pos {
        self.toks[self.at].pos
    }

    fn bump(&mut self) -> Token {
        let t = self.toks[self.at].clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn describe(t: &Tok) -> String {
        match t {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Int(n) => format!("`{n}`"),
            Tok::Sym(s) => format!("`{s}`"),
            Tok::Eof => "end of input".into(),
        }
    }

    fn error<T>(&self, expected: &str) -> Result<T, DslError> {
        Err(DslError::syntax(self.pos(), format!("expected {expected}, found {}", Self::describe(self.peek()))))
    }

    fn is_sym(&self, s: &str) -> bool {
        matches!(self.peek(), Tok::Sym(x) if *x == s)
    }

    fn eat_sym(&mut self, s: &str) -> bool {
        if self.is_sym(s) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn expect_sym(&mut self, s: &str) -> Result<(), DslError> {
        if self.eat_sym(s) {
            Ok(())
        } else {
            self.error(&format!("`{s}`"))
        }
    }

    fn is_kw(&self, kw: &str) -> bool {
        matches!(self.peek(), Tok::Ident(x) if x == kw)
    }

    fn expect_kw(&mut self, kw: &str) -> Result<(), DslError> {
        if self.is_kw(kw) {
            self.bump();
            Ok(())
        } else {
            self.error(&format!("`{kw}`"))
        }
    }

    fn ident(&mut self) -> Result<(String, Pos), DslError> {
        match self.peek().clone() {
            Tok::Ident(s) => {
                let p = self.pos();
                self.bump();
                Ok((s, p))
            }
            _ => self.error("a name"),
        }
    }

    fn int(&mut self) -> Result<i64, DslError> {
        let neg = if self.eat_sym("-") {
            true
        } else {
            self.eat_sym("+");
            false
        };
        match *self.peek() {
            Tok::Int(n) => {
                self.bump();
                Ok(if neg { -n } else { n })
            }
            _ => self.error("an integer"),
        }
    }

    fn natural(&mut self) -> Result<u64, DslError> {
        let p = self.pos();
        let n = self.int()?;
        u64::try_from(n).map_err(|_| DslError::invalid(p, format!("{n} is negative")))
    }

    fn end(&mut self) -> Result<(), DslError> {
        if *self.peek() == Tok::Eof {
            Ok(())
        } else {
            self.error("end of input")
        }
    }

    fn at_expr_end(&self) -> bool {
        matches!(self.peek(), Tok::Eof) || [")", ",", ";", "}", "=="].iter().any(|s| self.is_sym(s))
    }

    // expr := factor+ ; factor := primary ('^' int)? ;
    // primary := atom | 'id' | '(' expr ')' | ('comm' | 'conj') '(' expr ',' expr ')'
    fn expr<A>(&mut self, atom: &mut dyn FnMut(&str, Pos) -> Result<A, DslError>) -> Result<Expr<A>, DslError> {
        let mut factors = Vec::new();
        while !self.at_expr_end() {
            let mut f = self.primary(atom)?;
            if self.eat_sym("^") {
                f = f.pow(self.int()?);
            }
            factors.push(f);
        }
        if factors.is_empty() {
            return self.error("an expression");
        }
        Ok(Expr::product(factors))
    }

    fn primary<A>(&mut self, atom: &mut dyn FnMut(&str, Pos) -> Result<A, DslError>) -> Result<Expr<A>, DslError> {
        if self.eat_sym("(") {
            let e = self.expr(atom)?;
            self.expect_sym(")")?;
            return Ok(e);
        }
        let (name, p) = match self.peek() {
            Tok::Ident(_) => self.ident()?,
            _ => return self.error("a generator, `(`, `comm` or `conj`"),
        };
        match name.as_str() {
            "id" => Ok(Expr::identity()),
            "comm" | "conj" if self.is_sym("(") => {
                self.bump();
                let u = self.expr(atom)?;
                self.expect_sym(",")?;
                let v = self.expr(atom)?;
                self.expect_sym(")")?;
                Ok(if name == "comm" { Expr::comm(u, v) } else { Expr::conj(u, v) })
            }
            _ => Ok(Expr::Atom(atom(&name, p)?)),
        }
    }

    // word := '1' | (name ('^' int)?)+
    fn word(&mut self, alphabet: &Alphabet) -> Result<Word, DslError> {
        if *self.peek() == Tok::Int(1) {
            self.bump();
            return Ok(Word::identity());
        }
        let mut letters = Vec::new();
        while !self.at_expr_end() {
            let (name, p) = match self.peek() {
                Tok::Ident(_) => self.ident()?,
                _ => return self.error("a generator"),
            };
            let g = alphabet.index(&name).ok_or(DslError::UnknownGenerator { name, pos: p })?;
            let k = if self.eat_sym("^") { self.int()? } else { 1 };
            for _ in 0..k.unsigned_abs() {
                letters.push(Letter::new(g, k < 0));
            }
        }
        if letters.is_empty() {
            return self.error("a word");
        }
        Ok(Word::from_letters(letters))
    }

    fn twist(&mut self, names: &HashSet<String>) -> Result<TwistExpr, DslError> {
        self.expr(&mut |s, p| {
            if let Some(g) = Generator::parse(s) {
                Ok(TwistAtom::Gen(g))
            } else if names.contains(s) {
                Ok(TwistAtom::Name(s.to_string()))
            } else {
                Err(DslError::UnknownGenerator { name: s.into(), pos: p })
            }
        })
    }

    fn pi(&mut self) -> Result<PiExpr, DslError> {
        self.expr(&mut |s, p| {
            PiAtom::parse(s).ok_or_else(|| DslError::UnknownGenerator { name: s.into(), pos: p })
        })
    }

    // gens: a, b ; rels: w1, w2
    fn presentation_body(&mut self) -> Result<GroupPresentation, DslError> {
        self.expect_kw("gens")?;
        self.expect_sym(":")?;
        let p0 = self.pos();
        let mut gens = Vec::new();
        if matches!(self.peek(), Tok::Ident(_)) {
            loop {
                gens.push(self.ident()?.0);
                if !self.eat_sym(",") {
                    break;
                }
            }
        }
        self.expect_sym(";")?;
        self.expect_kw("rels")?;
        self.expect_sym(":")?;
        let mut rels = Vec::new();
        if !gens.is_empty() {
            let alphabet = Alphabet::new(gens.clone()).map_err(|e| DslError::invalid(p0, e))?;
            if !self.is_sym("}") && *self.peek() != Tok::Eof && !self.is_sym(";") {
                loop {
                    rels.push(self.word(&alphabet)?);
                    if !self.eat_sym(",") {
                        break;
                    }
                }
            }
        }
        self.eat_sym(";");
        GroupPresentation::new(gens, rels).map_err(|e| DslError::invalid(p0, e))
    }

    fn matrix_literal(&mut self) -> Result<Vec<Vec<i64>>, DslError> {
        let p = self.pos();
        self.expect_sym("[")?;
        let mut rows = Vec::new();
        if !self.is_sym("]") {
            loop {
                self.expect_sym("[")?;
                let mut row = Vec::new();
                if !self.is_sym("]") {
                    loop {
                        row.push(self.int()?);
                        if !self.eat_sym(",") {
                            break;
                        }
                    }
                }
                self.expect_sym("]")?;
                rows.push(row);
                if !self.eat_sym(",") {
                    break;
                }
            }
        }
        self.expect_sym("]")?;
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(DslError::invalid(p, "matrix is not square"));
        }
        Ok(rows)
    }

    fn opt_name(&mut self) -> Result<Option<String>, DslError> {
        Ok(if matches!(self.peek(), Tok::Ident(_)) { Some(self.ident()?.0) } else { None })
    }

    // Runs `field` for each `;`-separated entry of a `{ ... }` block.
    fn block(&mut self, mut field: impl FnMut(&mut Self) -> Result<(), DslError>) -> Result<(), DslError> {
        self.expect_sym("{")?;
        while !self.eat_sym("}") {
            field(self)?;
            if !self.eat_sym(";") {
                self.expect_sym("}")?;
                break;
            }
        }
        Ok(())
    }

    fn define(&mut self, names: &mut HashSet<String>, p: Pos, name: &str) -> Result<(), DslError> {
        if Generator::parse(name).is_some() || KEYWORDS.contains(&name) {
            return Err(DslError::invalid(p, format!("`{name}` is reserved")));
        }
        if !names.insert(name.to_string()) {
            return Err(DslError::invalid(p, format!("`{name}` is already defined")));
        }
        Ok(())
    }

    fn document(&mut self) -> Result<Document, DslError> {
        let mut doc = Document::default();
        let mut twists = HashSet::new();
        while *self.peek() != Tok::Eof {
            let (kw, kw_pos) = self.ident()?;
            match kw.as_str() {
                "word" => {
                    let (name, _) = self.ident()?;
                    self.expect_sym("=")?;
                    let word = self.word(surface_alphabet())?;
                    self.expect_sym(";")?;
                    doc.items.push(Item::Word { name, word });
                }
                "twist" => {
                    let (name, p) = self.ident()?;
                    self.expect_sym("=")?;
                    let expr = self.twist(&twists)?;
                    self.expect_sym(";")?;
                    self.define(&mut twists, p, &name)?;
                    doc.items.push(Item::Twist { name, expr });
                }
                "equal" => {
                    let lhs = self.twist(&twists)?;
                    self.expect_sym("==")?;
                    let rhs = self.twist(&twists)?;
                    self.expect_sym(";")?;
                    doc.items.push(Item::Equal { lhs, rhs });
                }
                "presentation" => {
                    let name = self.opt_name()?;
                    self.expect_sym("{")?;
                    let presentation = self.presentation_body()?;
                    self.expect_sym("}")?;
                    doc.items.push(Item::Presentation { name, presentation });
                }
                "bundle" => {
                    let b = self.bundle(&twists)?;
                    doc.items.push(Item::Bundle(b));
                }
                "luttinger" => {
                    let d = self.luttinger()?;
                    match doc.items.iter_mut().rev().find_map(|i| match i {
                        Item::Bundle(b) => Some(b),
                        _ => None,
                    }) {
                        Some(b) => b.surgeries.push(d),
                        None => return Err(DslError::invalid(kw_pos, "`luttinger` needs a preceding `bundle`")),
                    }
                }
                "ledger" => {
                    let l = self.ledger()?;
                    doc.items.push(Item::Ledger(l));
                }
                "form" => {
                    let f = self.form()?;
                    doc.items.push(Item::Form(f));
                }
                "knot" => {
                    let k = self.knot()?;
                    doc.items.push(Item::Knot(k));
                }
                _ => {
                    return Err(DslError::syntax(
                        kw_pos,
                        format!("expected a statement keyword, found `{kw}`"),
                    ))
                }
            }
            self.eat_sym(";");
        }
        Ok(doc)
    }

    fn bundle(&mut self, twists: &HashSet<String>) -> Result<BundleDef, DslError> {
        let name = self.opt_name()?;
        let start = self.pos();
        let mut fiber_genus = None;
        let mut alpha = None;
        let mut beta = None;
        let mut sections = Vec::new();
        self.block(|p| {
            let (key, kp) = p.ident()?;
            match key.as_str() {
                "fiber_genus" => fiber_genus = Some(p.natural()? as usize),
                "alpha" | "beta" => {
                    p.expect_sym(":")?;
                    let e = p.twist(twists)?;
                    if key == "alpha" {
                        alpha = Some(e);
                    } else {
                        beta = Some(e);
                    }
                }
                "section" => {
                    let (name, _) = p.ident()?;
                    let fiber_intersection = p.int()?;
                    sections.push(Section { name, fiber_intersection });
                }
                _ => return Err(DslError::syntax(kp, format!("unknown bundle field `{key}`"))),
            }
            Ok(())
        })?;
        let missing = |f: &str| DslError::invalid(start, format!("bundle is missing `{f}`"));
        Ok(BundleDef {
            name,
            fiber_genus: fiber_genus.ok_or_else(|| missing("fiber_genus"))?,
            alpha: alpha.ok_or_else(|| missing("alpha"))?,
            beta: beta.ok_or_else(|| missing("beta"))?,
            sections,
            surgeries: Vec::new(),
        })
    }

    fn luttinger(&mut self) -> Result<LuttingerDatum, DslError> {
        let start = self.pos();
        let mut torus = None;
        let mut meridian = None;
        let mut coefficient = None;
        self.block(|p| {
            let (key, kp) = p.ident()?;
            match key.as_str() {
                "torus" => {
                    let (c, cp) = p.ident()?;
                    let curve = CurveName::parse(&c).ok_or(DslError::UnknownGenerator { name: c, pos: cp })?;
                    let (d, dp) = p.ident()?;
                    let dir = BaseDirection::parse(&d).ok_or(DslError::UnknownGenerator { name: d, pos: dp })?;
                    torus = Some((curve, dir));
                }
                "meridian" => meridian = Some(p.pi()?),
                "slope" => coefficient = Some(p.int()?),
                _ => return Err(DslError::syntax(kp, format!("unknown luttinger field `{key}`"))),
            }
            Ok(())
        })?;
        let (fiber_curve, direction) = torus.ok_or_else(|| DslError::invalid(start, "luttinger is missing `torus`"))?;
        Ok(LuttingerDatum {
            fiber_curve,
            direction,
            meridian,
            coefficient: coefficient.ok_or_else(|| DslError::invalid(start, "luttinger is missing `slope`"))?,
        })
    }

    fn ledger(&mut self) -> Result<CycleLedger, DslError> {
        let (name, _) = self.ident()?;
        let mut l = CycleLedger::new(name);
        self.block(|p| {
            let (key, kp) = p.ident()?;
            match key.as_str() {
                "class" => {
                    let (c, cp) = p.ident()?;
                    l.add_class(c).map_err(|e| DslError::invalid(cp, e))?;
                }
                "pair" => {
                    let (a, ap) = p.ident()?;
                    let (b, _) = p.ident()?;
                    p.expect_sym("=")?;
                    let vp = p.pos();
                    let v = p.int()?;
                    if v != 0 && v != 1 {
                        return Err(DslError::invalid(vp, "mod-2 pairing must be 0 or 1"));
                    }
                    let (tag, _) = p.ident()?;
                    l.add_pair(&a, &b, v as u8, &tag).map_err(|e| DslError::invalid(ap, e))?;
                }
                _ => return Err(DslError::syntax(kp, format!("unknown ledger field `{key}`"))),
            }
            Ok(())
        })?;
        Ok(l)
    }

    fn form(&mut self) -> Result<FormDef, DslError> {
        let name = self.opt_name()?;
        let start = self.pos();
        let mut ring = None;
        let mut terms = None;
        self.block(|p| {
            let (key, kp) = p.ident()?;
            match key.as_str() {
                "ring" => {
                    let (r, rp) = p.ident()?;
                    ring = Some(match r.as_str() {
                        "Z" => Ring::Z,
                        "Z2" => Ring::Z2,
                        _ => return Err(DslError::invalid(rp, format!("unknown ring `{r}`; use Z or Z2"))),
                    });
                }
                "matrix" => {
                    let mut ts = vec![p.form_term()?];
                    while p.eat_sym("(+)") {
                        ts.push(p.form_term()?);
                    }
                    terms = Some(ts);
                }
                _ => return Err(DslError::syntax(kp, format!("unknown form field `{key}`"))),
            }
            Ok(())
        })?;
        let f = FormDef {
            name,
            ring: ring.ok_or_else(|| DslError::invalid(start, "form is missing `ring`"))?,
            terms: terms.ok_or_else(|| DslError::invalid(start, "form is missing `matrix`"))?,
        };
        f.form().map_err(|e| DslError::invalid(start, e))?;
        Ok(f)
    }

    fn form_term(&mut self) -> Result<FormTerm, DslError> {
        if self.is_kw("diag") && *self.peek2() == Tok::Sym("(") {
            self.bump();
            self.bump();
            let mut d = Vec::new();
            if !self.is_sym(")") {
                loop {
                    d.push(self.int()?);
                    if !self.eat_sym(",") {
                        break;
                    }
                }
            }
            self.expect_sym(")")?;
            return Ok(FormTerm::Diag(d));
        }
        if self.is_sym("[") {
            return Ok(FormTerm::Matrix(self.matrix_literal()?));
        }
        self.error("a matrix or `diag(...)`")
    }

    fn knot(&mut self) -> Result<KnotRecord, DslError> {
        let (name, _) = self.ident()?;
        let start = self.pos();
        let mut seifert = None;
        let mut g4 = None;
        let mut sna = None;
        self.block(|p| {
            let (key, kp) = p.ident()?;
            match key.as_str() {
                "seifert" => {
                    let mp = p.pos();
                    let rows = p.matrix_literal()?;
                    let m = if rows.is_empty() {
                        IntMatrix::zeros(0, 0)
                    } else {
                        IntMatrix::from_rows(&rows).map_err(|e| DslError::invalid(mp, e))?
                    };
                    seifert = Some(SeifertMatrix::new(m).map_err(|e| DslError::invalid(mp, e))?);
                }
                "g4" => {
                    let gp = p.pos();
                    g4 = Some(u32::try_from(p.natural()?).map_err(|e| DslError::invalid(gp, e))?);
                }
                "sna" => {
                    let (b, bp) = p.ident()?;
                    sna = Some(match b.as_str() {
                        "true" => true,
                        "false" => false,
                        _ => return Err(DslError::syntax(bp, format!("expected `true` or `false`, found `{b}`"))),
                    });
                }
                _ => return Err(DslError::syntax(kp, format!("unknown knot field `{key}`"))),
            }
            Ok(())
        })?;
        let missing = |f: &str| DslError::invalid(start, format!("knot is missing `{f}`"));
        Ok(KnotRecord {
            name,
            seifert: seifert.ok_or_else(|| missing("seifert"))?,
            four_ball_genus: g4.ok_or_else(|| missing("g4"))?,
            strongly_neg_amphichiral: sna.ok_or_else(|| missing("sna"))?,
        })
    }
}

/// A word over `alphabet`, e.g. `x1 y1 x1^-1 y1^-1`; `1` is the empty word.
pub fn parse_word(src: &str, alphabet: &Alphabet) -> Result<Word, DslError> {
    let mut p = Parser::new(src)?;
    let w = p.word(alphabet)?;
    p.end()?;
    Ok(w)
}

/// A twist word over `a b c d e phi eps` with `comm`, `conj`, `id` and powers.
pub fn parse_twist_word(src: &str) -> Result<TwistExpr, DslError> {
    let mut p = Parser::new(src)?;
    let e = p.twist(&HashSet::new())?;
    p.end()?;
    Ok(e)
}

/// A word over fiber curves and (primed) base loops, e.g. `comm(z, alpha'')`.
pub fn parse_pi_word(src: &str) -> Result<PiExpr, DslError> {
    let mut p = Parser::new(src)?;
    let e = p.pi()?;
    p.end()?;
    Ok(e)
}

/// `gens: x, y; rels: x y x^-1 y^-1`.
pub fn parse_presentation(src: &str) -> Result<GroupPresentation, DslError> {
    let mut p = Parser::new(src)?;
    let g = p.presentation_body()?;
    p.end()?;
    Ok(g)
}

pub fn parse_document(src: &str) -> Result<Document, DslError> {
    Parser::new(src)?.document()
}

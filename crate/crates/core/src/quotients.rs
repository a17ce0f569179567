//! Doubles along the boundary, free involution quotients, and mod-2 cycle
//! ledgers.
//!
//! Results that rest on covering-space, duality or gluing facts rather than on
//! a computation carry those facts as [`Assumption`]s.

use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use crate::forms::{congruent_mod2, BilinearForm, Ring};
use crate::homcalc::{FPAbelianGroup, IntMatrix};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QuotientError {
    #[error("incompatible boundary: {0}")]
    IncompatibleBoundary(String),
    #[error("hypothesis failure: {0}")]
    HypothesisFailure(String),
    #[error("ledger has no entry for ({0}, {1})")]
    MissingEntry(String, String),
    #[error("unknown class `{0}`")]
    UnknownClass(String),
    #[error("entry ({0}, {1}) has no provenance tag")]
    Unprovenanced(String, String),
    #[error("conflicting entries for ({0}, {1})")]
    ConflictingEntry(String, String),
    #[error("duplicate class `{0}`")]
    DuplicateClass(String),
}

/// Facts a result relies on without computing them.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Assumption {
    /// Framed pushoffs of the surgery directions are homologous to the directions.
    PushoffIdentification,
    /// Free-homotopy expressions of the surgery meridians are taken as input.
    MeridianExpressions,
    /// Mayer–Vietoris bookkeeping across the gluing boundary.
    MayerVietoris,
    /// Signatures add under gluing along rational homology `S¹×S²` boundaries.
    NovikovAdditivity,
    /// Poincaré–Lefschetz duality and universal coefficients.
    Duality,
    /// Rational homology of a finite quotient is the invariant part of the cover's.
    Transfer,
    /// The boundary gluing carries the spin structure across.
    SpinGluing,
    /// The deck involution is free and the cover connected.
    FreeInvolution,
    /// Cycle pairings are supplied by the construction.
    LedgerPairings,
    /// The ledger classes span mod-2 second homology (so Wu's formula applies).
    FullMod2Pairing,
    /// Indefinite unimodular forms are determined by rank, signature and parity.
    FormClassification,
    /// Four-ball genus and symmetry flags are tabulated input.
    KnotData,
}

impl Assumption {
    pub fn label(self) -> &'static str {
        match self {
            Assumption::PushoffIdentification => "pushoff-identification",
            Assumption::MeridianExpressions => "meridian-expressions",
            Assumption::MayerVietoris => "mayer-vietoris",
            Assumption::NovikovAdditivity => "novikov-additivity",
            Assumption::Duality => "duality",
            Assumption::Transfer => "transfer",
            Assumption::SpinGluing => "spin-gluing",
            Assumption::FreeInvolution => "free-involution",
            Assumption::LedgerPairings => "ledger-pairings",
            Assumption::FullMod2Pairing => "full-mod2-pairing",
            Assumption::FormClassification => "form-classification",
            Assumption::KnotData => "knot-data",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Boundary {
    pub description: String,
    pub h1: FPAbelianGroup,
}

/// Homological profile of a compact 4-manifold.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ManifoldReport {
    pub name: String,
    pub euler: i64,
    /// Rational Betti numbers `b0..b4`.
    pub betti: Vec<u64>,
    pub h1: FPAbelianGroup,
    pub h2: Option<FPAbelianGroup>,
    pub mod2_betti: Option<Vec<u64>>,
    pub signature: Option<i64>,
    pub spin: Option<bool>,
    pub orientable: bool,
    /// `None` for closed manifolds.
    pub boundary: Option<Boundary>,
    pub derivation: Vec<String>,
    assumptions: Vec<Assumption>,
}

impl ManifoldReport {
    pub fn new(name: impl Into<String>, euler: i64, betti: Vec<u64>, h1: FPAbelianGroup) -> Self {
        ManifoldReport {
            name: name.into(),
            euler,
            betti,
            h1,
            h2: None,
            mod2_betti: None,
            signature: None,
            spin: None,
            orientable: true,
            boundary: None,
            derivation: Vec::new(),
            assumptions: Vec::new(),
        }
    }

    /// The 4-ball.
    pub fn ball() -> Self {
        let mut r = Self::new("B^4", 1, vec![1, 0, 0, 0, 0], FPAbelianGroup::trivial());
        r.h2 = Some(FPAbelianGroup::trivial());
        r.signature = Some(0);
        r.spin = Some(true);
        r.boundary = Some(Boundary {
            description: "S^3".into(),
            h1: FPAbelianGroup::trivial(),
        });
        r
    }

    /// The trace of `n`-surgery on a knot: `B^4` with one 2-handle of framing `n`.
    pub fn knot_trace(knot: &str, framing: i64) -> Self {
        let mut r = Self::new(format!("X_{framing}({knot})"), 2, vec![1, 0, 1, 0, 0], FPAbelianGroup::trivial());
        r.h2 = Some(FPAbelianGroup::free(1));
        r.signature = Some(framing.signum());
        r.spin = Some(framing % 2 == 0);
        r.boundary = Some(Boundary {
            description: format!("S^3_{framing}({knot})"),
            h1: FPAbelianGroup::cyclic(framing.unsigned_abs()),
        });
        r.derivation.push(format!("intersection form <{framing}> on the 2-handle core"));
        r
    }

    pub fn assumptions(&self) -> &[Assumption] {
        &self.assumptions
    }

    pub fn assume(&mut self, a: Assumption) {
        if let Err(pos) = self.assumptions.binary_search(&a) {
            self.assumptions.insert(pos, a);
        }
    }

    pub fn assume_all(&mut self, items: impl IntoIterator<Item = Assumption>) {
        for a in items {
            self.assume(a);
        }
    }

    pub fn is_closed(&self) -> bool {
        self.boundary.is_none()
    }

    /// `χ = Σ (−1)^i b_i`.
    pub fn is_consistent(&self) -> bool {
        let alt: i64 = self
            .betti
            .iter()
            .enumerate()
            .map(|(i, &b)| if i % 2 == 0 { b as i64 } else { -(b as i64) })
            .sum();
        alt == self.euler
    }

    pub fn is_rational_homology_sphere(&self) -> bool {
        self.is_closed() && self.betti == [1, 0, 0, 0, 1]
    }

    pub fn to_json(&self) -> Value {
        json!({
            "name": self.name,
            "euler": self.euler,
            "betti": self.betti,
            "h1": self.h1.to_string(),
            "h2": self.h2.as_ref().map(|g| g.to_string()),
            "mod2_betti": self.mod2_betti,
            "signature": self.signature,
            "spin": self.spin,
            "orientable": self.orientable,
            "boundary": self.boundary.as_ref().map(|b| json!({"description": b.description, "h1": b.h1.to_string()})),
            "derivation": self.derivation,
            "assumptions": self.assumptions.iter().map(|a| a.label()).collect::<Vec<_>>(),
        })
    }
}

/// Two copies of `half` glued along their common boundary by an involution.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Double {
    pub half: ManifoldReport,
    pub gluing: String,
}

fn boundary_ok(b: &Boundary) -> bool {
    b.h1.is_trivial() || b.h1 == FPAbelianGroup::free(1)
}

/// Homology of `half ∪ half`. Restricted to halves with `H1 = 0` and boundary a
/// homology `S³` or `S¹×S²`; anything else is refused.
pub fn double_report(d: &Double) -> Result<ManifoldReport, QuotientError> {
    let half = &d.half;
    let boundary = half
        .boundary
        .as_ref()
        .ok_or_else(|| QuotientError::IncompatibleBoundary(format!("{} is closed", half.name)))?;
    if !boundary_ok(boundary) {
        return Err(QuotientError::IncompatibleBoundary(format!(
            "H1({}) = {} is neither 0 nor Z",
            boundary.description, boundary.h1
        )));
    }
    if !half.h1.is_trivial() {
        return Err(QuotientError::HypothesisFailure(format!("H1({}) = {} is not zero", half.name, half.h1)));
    }
    let euler = 2 * half.euler;
    let b2 = euler - 2;
    let half_b2 = half.betti.get(2).copied().unwrap_or(0) as i64;
    if b2 < 0 || b2 != 2 * half_b2 {
        return Err(QuotientError::IncompatibleBoundary(format!(
            "b2 bookkeeping fails: chi gives {b2}, halves give {}",
            2 * half_b2
        )));
    }
    let b2 = b2 as u64;
    let mut r = ManifoldReport::new(
        format!("{} ∪_{} {}", half.name, d.gluing, half.name),
        euler,
        vec![1, 0, b2, 0, 1],
        FPAbelianGroup::trivial(),
    );
    r.h2 = Some(FPAbelianGroup::free(b2 as usize));
    r.mod2_betti = Some(vec![1, 0, b2, 0, 1]);
    r.spin = half.spin;
    r.derivation = vec![
        format!("chi = 2 chi({}) = {euler} since chi({}) = 0", half.name, boundary.description),
        "H1 = 0 from Mayer-Vietoris with H1(half) = 0".into(),
        "b1 = b3 = 0 by duality, so b2 = chi - 2".into(),
        "H2 torsion-free since Tors H2 = Tors H^3 = Tors H1 = 0".into(),
    ];
    r.assume_all(half.assumptions().iter().copied());
    r.assume_all([Assumption::MayerVietoris, Assumption::Duality]);
    if half.spin == Some(true) {
        r.assume(Assumption::SpinGluing);
    }
    Ok(r)
}

/// Free `Z/k` action on a connected cover.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DeckAction {
    pub order: u32,
    pub free: bool,
    pub orientation_preserving: bool,
}

impl DeckAction {
    pub fn free_involution() -> Self {
        DeckAction {
            order: 2,
            free: true,
            orientation_preserving: true,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FreeQuotient {
    pub name: String,
    pub double: Double,
    pub deck: DeckAction,
}

/// If the connected double cover has `H1 = 0`, its fundamental group is
/// perfect, so it lies in the commutator subgroup of the quotient's group,
/// which therefore abelianizes to `Z/2`.
pub fn quotient_h1_from_cover(cover: &ManifoldReport, deck: &DeckAction) -> Result<FPAbelianGroup, QuotientError> {
    if deck.order != 2 {
        return Err(QuotientError::HypothesisFailure(format!("deck group has order {}", deck.order)));
    }
    if !deck.free {
        return Err(QuotientError::HypothesisFailure("deck involution is not free".into()));
    }
    if !cover.h1.is_trivial() {
        return Err(QuotientError::HypothesisFailure(format!("H1({}) = {} is not zero", cover.name, cover.h1)));
    }
    Ok(FPAbelianGroup::cyclic(2))
}

pub fn quotient_h1(q: &FreeQuotient) -> Result<FPAbelianGroup, QuotientError> {
    quotient_h1_from_cover(&double_report(&q.double)?, &q.deck)
}

/// Homology of the quotient. When a ledger is given, its mod-2 form decides spin.
pub fn quotient_report(q: &FreeQuotient, ledger: Option<&CycleLedger>) -> Result<ManifoldReport, QuotientError> {
    let cover = double_report(&q.double)?;
    let h1 = quotient_h1_from_cover(&cover, &q.deck)?;
    if cover.euler % 2 != 0 {
        return Err(QuotientError::HypothesisFailure(format!("chi({}) = {} is odd", cover.name, cover.euler)));
    }
    let euler = cover.euler / 2;
    let top = u64::from(q.deck.orientation_preserving);
    // b1 = 0 since H1 is finite; b3 = b1 by duality
    let b2 = euler - 1 - top as i64;
    if b2 < 0 {
        return Err(QuotientError::HypothesisFailure(format!("chi = {euler} forces negative b2")));
    }
    let mut r = ManifoldReport::new(q.name.clone(), euler, vec![1, 0, b2 as u64, 0, top], h1);
    r.orientable = q.deck.orientation_preserving;
    // dim H1(;Z/2) = 1 and H3(;Z/2) ≅ H1(;Z/2) by mod-2 duality
    let mod2_b2 = euler as u64;
    r.mod2_betti = Some(vec![1, 1, mod2_b2, 1, 1]);
    if b2 == 0 && r.orientable {
        r.signature = Some(0);
    }
    r.derivation = vec![
        format!("chi = chi({}) / 2 = {euler}", cover.name),
        "H1 = Z/2 since the double cover has H1 = 0".into(),
        "b1 = b3 = 0: rational homology is the invariant part of the cover's".into(),
        format!("b2 = chi - b0 - b4 = {b2}"),
        format!("mod-2 Betti numbers (1, 1, {mod2_b2}, 1, 1) from chi and H1 = Z/2"),
    ];
    r.assume_all(cover.assumptions().iter().copied());
    r.assume_all([Assumption::Transfer, Assumption::Duality, Assumption::FreeInvolution]);
    r.spin = None;
    if let Some(l) = ledger {
        let s = mod2_form_from_ledger(l)?;
        if s.form.rank() as u64 != mod2_b2 {
            return Err(QuotientError::HypothesisFailure(format!(
                "ledger has {} classes but dim H2(;Z/2) = {mod2_b2}",
                s.form.rank()
            )));
        }
        if !s.form.det().bit(0) {
            return Err(QuotientError::HypothesisFailure("ledger form is degenerate mod 2".into()));
        }
        r.spin = Some(wu_spin_check(&s.form));
        r.derivation.push(format!(
            "ledger form is {} and {}, so w2 {}",
            if s.even { "even" } else { "odd" },
            if s.hyperbolic { "hyperbolic" } else { "not hyperbolic" },
            if s.even { "vanishes" } else { "does not vanish" }
        ));
        r.assume_all([Assumption::LedgerPairings, Assumption::FullMod2Pairing]);
    }
    Ok(r)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LedgerEntry {
    pub a: String,
    pub b: String,
    pub value: u8,
    pub provenance: String,
}

/// Named mod-2 classes with pairings, each entry tagged with where it comes from.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CycleLedger {
    pub name: String,
    classes: Vec<String>,
    entries: Vec<LedgerEntry>,
}

impl CycleLedger {
    pub fn new(name: impl Into<String>) -> Self {
        CycleLedger {
            name: name.into(),
            ..Default::default()
        }
    }

    pub fn classes(&self) -> &[String] {
        &self.classes
    }

    pub fn entries(&self) -> &[LedgerEntry] {
        &self.entries
    }

    pub fn add_class(&mut self, class: impl Into<String>) -> Result<(), QuotientError> {
        let class = class.into();
        if self.classes.contains(&class) {
            return Err(QuotientError::DuplicateClass(class));
        }
        self.classes.push(class);
        Ok(())
    }

    /// Records `a · b = value (mod 2)`; the provenance tag must be nonempty.
    pub fn add_pair(&mut self, a: &str, b: &str, value: u8, provenance: &str) -> Result<(), QuotientError> {
        for c in [a, b] {
            if !self.classes.iter().any(|x| x == c) {
                return Err(QuotientError::UnknownClass(c.to_string()));
            }
        }
        if provenance.trim().is_empty() {
            return Err(QuotientError::Unprovenanced(a.into(), b.into()));
        }
        let value = value % 2;
        if let Some(v) = self.lookup(a, b) {
            if v != value {
                return Err(QuotientError::ConflictingEntry(a.into(), b.into()));
            }
        }
        self.entries.push(LedgerEntry {
            a: a.into(),
            b: b.into(),
            value,
            provenance: provenance.into(),
        });
        Ok(())
    }

    fn lookup(&self, a: &str, b: &str) -> Option<u8> {
        self.entries
            .iter()
            .find(|e| (e.a == a && e.b == b) || (e.a == b && e.b == a))
            .map(|e| e.value)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mod2Summary {
    pub form: BilinearForm,
    pub even: bool,
    pub hyperbolic: bool,
}

/// Symmetric mod-2 matrix of a complete ledger, with evenness and whether it
/// is congruent to a sum of hyperbolic planes.
pub fn mod2_form_from_ledger(l: &CycleLedger) -> Result<Mod2Summary, QuotientError> {
    let n = l.classes.len();
    let mut m = IntMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            let (a, b) = (&l.classes[i], &l.classes[j]);
            let v = l.lookup(a, b).ok_or_else(|| QuotientError::MissingEntry(a.clone(), b.clone()))?;
            m.set(i, j, v.into());
        }
    }
    let form = BilinearForm::new(Ring::Z2, m).expect("ledger lookups are symmetric");
    let even = form.is_even();
    let hyperbolic = n.is_multiple_of(2)
        && n <= crate::forms::MAX_CONGRUENCE_RANK
        && congruent_mod2(&form, &hyperbolic_sum(n / 2)).unwrap_or(false);
    Ok(Mod2Summary { form, even, hyperbolic })
}

fn hyperbolic_sum(k: usize) -> BilinearForm {
    (0..k).fold(BilinearForm::zero(Ring::Z2), |acc, _| acc.direct_sum(&BilinearForm::hyperbolic(Ring::Z2)))
}

/// For the full mod-2 pairing of a closed 4-manifold, `w2` is the
/// characteristic element, so the manifold is spin iff the form is even.
pub fn wu_spin_check(f: &BilinearForm) -> bool {
    f.is_even()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v_half() -> ManifoldReport {
        let mut r = ManifoldReport::new("V", 2, vec![1, 0, 1, 0, 0], FPAbelianGroup::trivial());
        r.spin = Some(true);
        r.boundary = Some(Boundary {
            description: "Y".into(),
            h1: FPAbelianGroup::free(1),
        });
        r
    }

    fn w_ledger() -> CycleLedger {
        let mut l = CycleLedger::new("W");
        l.add_class("F").unwrap();
        l.add_class("Gamma").unwrap();
        l.add_pair("F", "F", 0, "cited").unwrap();
        l.add_pair("F", "Gamma", 1, "cited").unwrap();
        l.add_pair("Gamma", "Gamma", 0, "cited").unwrap();
        l
    }

    #[test]
    fn doubles() {
        let z = double_report(&Double { half: v_half(), gluing: "s".into() }).unwrap();
        assert_eq!((z.euler, z.betti[2], z.h1.is_trivial()), (4, 2, true));
        assert!(z.is_consistent());
        assert!(z.assumptions().contains(&Assumption::MayerVietoris));
        let s4 = double_report(&Double { half: ManifoldReport::ball(), gluing: "id".into() }).unwrap();
        assert_eq!((s4.euler, s4.betti.clone()), (2, vec![1, 0, 0, 0, 1]));
        let x0 = double_report(&Double { half: ManifoldReport::knot_trace("K", 0), gluing: "t".into() }).unwrap();
        assert_eq!((x0.euler, x0.betti[2]), (4, 2));
    }

    #[test]
    fn double_refusals() {
        let mut bad = v_half();
        bad.boundary.as_mut().unwrap().h1 = FPAbelianGroup::cyclic(3);
        assert!(matches!(
            double_report(&Double { half: bad, gluing: "s".into() }),
            Err(QuotientError::IncompatibleBoundary(_))
        ));
        let mut closed = v_half();
        closed.boundary = None;
        assert!(double_report(&Double { half: closed, gluing: "s".into() }).is_err());
        let trace5 = ManifoldReport::knot_trace("K", 5);
        assert!(double_report(&Double { half: trace5, gluing: "s".into() }).is_err());
    }

    #[test]
    fn quotients() {
        let q = FreeQuotient {
            name: "W".into(),
            double: Double { half: v_half(), gluing: "s".into() },
            deck: DeckAction::free_involution(),
        };
        assert_eq!(quotient_h1(&q).unwrap(), FPAbelianGroup::cyclic(2));
        let w = quotient_report(&q, Some(&w_ledger())).unwrap();
        assert_eq!((w.euler, w.betti.clone(), w.spin), (2, vec![1, 0, 0, 0, 1], Some(true)));
        assert_eq!(w.mod2_betti, Some(vec![1, 1, 2, 1, 1]));
        assert!(w.is_rational_homology_sphere() && w.is_consistent());
        let rp4 = FreeQuotient {
            name: "RP4".into(),
            double: Double { half: ManifoldReport::ball(), gluing: "id".into() },
            deck: DeckAction { order: 2, free: true, orientation_preserving: false },
        };
        assert_eq!(quotient_h1(&rp4).unwrap(), FPAbelianGroup::cyclic(2));
        let r = quotient_report(&rp4, None).unwrap();
        assert_eq!((r.euler, r.betti.clone()), (1, vec![1, 0, 0, 0, 0]));
    }

    #[test]
    fn quotient_refuses_nonzero_h1() {
        let mut cover = ManifoldReport::new("C", 4, vec![1, 1, 4, 1, 1], FPAbelianGroup::cyclic(3));
        cover.boundary = None;
        assert!(matches!(
            quotient_h1_from_cover(&cover, &DeckAction::free_involution()),
            Err(QuotientError::HypothesisFailure(_))
        ));
        let ok = ManifoldReport::new("C", 4, vec![1, 0, 2, 0, 1], FPAbelianGroup::trivial());
        let not_free = DeckAction { free: false, ..DeckAction::free_involution() };
        assert!(quotient_h1_from_cover(&ok, &not_free).is_err());
    }

    #[test]
    fn ledgers() {
        let s = mod2_form_from_ledger(&w_ledger()).unwrap();
        assert!(s.even && s.hyperbolic);
        assert_eq!(s.form.matrix(), &IntMatrix::from_i64([[0, 1], [1, 0]]));
        let mut odd = CycleLedger::new("odd");
        odd.add_class("x").unwrap();
        odd.add_pair("x", "x", 1, "computed").unwrap();
        let s = mod2_form_from_ledger(&odd).unwrap();
        assert!(!s.even && !wu_spin_check(&s.form));
        let empty = mod2_form_from_ledger(&CycleLedger::new("e")).unwrap();
        assert!(empty.even && empty.form.rank() == 0);
    }

    #[test]
    fn ledger_refusals() {
        let mut l = CycleLedger::new("L");
        l.add_class("F").unwrap();
        l.add_class("G").unwrap();
        assert_eq!(l.add_pair("F", "G", 1, " "), Err(QuotientError::Unprovenanced("F".into(), "G".into())));
        assert_eq!(l.add_pair("F", "H", 1, "x"), Err(QuotientError::UnknownClass("H".into())));
        l.add_pair("F", "G", 1, "x").unwrap();
        assert!(l.add_pair("G", "F", 0, "x").is_err());
        assert_eq!(mod2_form_from_ledger(&l), Err(QuotientError::MissingEntry("F".into(), "F".into())));
    }

    #[test]
    fn assumption_labels_serialize() {
        let v = serde_json::to_value(Assumption::MayerVietoris).unwrap();
        assert_eq!(v, json!(Assumption::MayerVietoris.label()));
        let v = serde_json::to_value(Assumption::FullMod2Pairing).unwrap();
        assert_eq!(v, json!("full-mod2-pairing"));
    }
}

//! The verification suite: named checks over the built-in constructions,
//! run in parallel and reported in id order.
//!
//! Exit status: 0 when everything passes, 1 when anything fails, 2 when some
//! check ran out of search bound and none failed.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Serialize, Serializer};
use serde_json::{json, Value};

use crate::bundles::{
    bundle_h1_from_matrices, bundle_presentation, bundle_r, canonical_fiber_evaluation, manifold_v,
    sections_generate_relative_h2, square_knot_monodromy, surgery_presentation, v_report,
};
use crate::dsl::{parse_document, parse_twist_word, surface_alphabet, Document, FormDef, Item};
use crate::forms::{
    classify_indefinite, classify_parametric, inertia, novikov_sum, parametric_block, parametric_reduction,
    BilinearForm, Ring,
};
use crate::homcalc::{abelianization, mapping_torus_h1, quotient_presentation, FPAbelianGroup, IntMatrix};
use crate::knots::{
    alexander, arf, arf_from_alexander, determinant_and_signature, fibered_necessary, slice_family_eligible,
    KnotRecord, LaurentPoly,
};
use crate::mcg::{
    check_gluing_condition, mc_equal, symplectic_sign, transvection, CurveName, H1Matrix, MappingClass, McEquality,
};
use crate::quotients::{
    double_report, mod2_form_from_ledger, quotient_report, Assumption, CycleLedger, DeckAction, Double,
    ManifoldReport, FreeQuotient,
};
use crate::words::DEFAULT_BOUND;

/// Knot table shipped with the crate.
pub const KNOTS_DSL: &str = include_str!("../data/knots.dsl");
/// Twist identities, the surgered bundle, the ledger of `W` and the forms of `A`.
pub const CONSTRUCTIONS_DSL: &str = include_str!("../data/constructions.dsl");

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    /// A bounded search ran out; carries the bound.
    Inconclusive(usize),
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Status::Pass => f.write_str("pass"),
            Status::Fail => f.write_str("fail"),
            Status::Inconclusive(b) => write!(f, "inconclusive(bound={b})"),
        }
    }
}

impl Serialize for Status {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// What a check computed.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub status: Status,
    pub value: Value,
    pub assumptions: Vec<Assumption>,
}

impl Outcome {
    pub fn new(ok: bool, value: Value) -> Self {
        Outcome {
            status: if ok { Status::Pass } else { Status::Fail },
            value,
            assumptions: Vec::new(),
        }
    }

    pub fn error(msg: impl fmt::Display) -> Self {
        Self::new(false, json!({ "error": msg.to_string() }))
    }

    pub fn assuming(mut self, items: impl IntoIterator<Item = Assumption>) -> Self {
        self.assumptions.extend(items);
        self.assumptions.sort();
        self.assumptions.dedup();
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Config {
    /// Length bound for conjugator searches.
    pub bound: usize,
    /// Record wall time; off gives byte-identical reports across runs.
    pub timing: bool,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            bound: DEFAULT_BOUND,
            timing: true,
        }
    }
}

type Runner = Arc<dyn Fn(&Config) -> Outcome + Send + Sync>;

#[derive(Clone)]
pub struct Check {
    pub id: String,
    pub description: String,
    /// Where in the construction the checked claim lives.
    pub anchor: String,
    run: Runner,
}

impl fmt::Debug for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Check")
            .field("id", &self.id)
            .field("anchor", &self.anchor)
            .finish_non_exhaustive()
    }
}

impl Check {
    pub fn new(
        id: impl Into<String>,
        description: impl Into<String>,
        anchor: impl Into<String>,
        run: impl Fn(&Config) -> Outcome + Send + Sync + 'static,
    ) -> Self {
        Check {
            id: id.into(),
            description: description.into(),
            anchor: anchor.into(),
            run: Arc::new(run),
        }
    }

    pub fn run(&self, cfg: &Config) -> CheckResult {
        let start = Instant::now();
        let out = (self.run)(cfg);
        let ms = if cfg.timing { start.elapsed().as_millis() as u64 } else { 0 };
        CheckResult {
            id: self.id.clone(),
            status: out.status,
            value: out.value,
            assumptions: out.assumptions.iter().map(|a| a.label().to_string()).collect(),
            ms,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckResult {
    pub id: String,
    pub status: Status,
    pub value: Value,
    pub assumptions: Vec<String>,
    pub ms: u64,
}

/// Glob match when the pattern has `*`, `?` or `[`, substring match otherwise.
pub fn matches(pattern: &str, id: &str) -> bool {
    if pattern.contains(['*', '?', '[']) {
        glob::Pattern::new(pattern).map(|p| p.matches(id)).unwrap_or(false)
    } else {
        id.contains(pattern)
    }
}

/// Runs the checks whose id matches `filter`, sorted by id.
pub fn run(checks: &[Check], filter: Option<&str>, cfg: &Config) -> Vec<CheckResult> {
    let mut out: Vec<CheckResult> = checks
        .par_iter()
        .filter(|c| filter.is_none_or(|p| matches(p, &c.id)))
        .map(|c| c.run(cfg))
        .collect();
    out.sort_by(|a, b| a.id.cmp(&b.id));
    out
}

pub fn run_suite(filter: Option<&str>, cfg: &Config) -> Vec<CheckResult> {
    run(&builtin_checks(), filter, cfg)
}

pub fn exit_code(results: &[CheckResult]) -> i32 {
    if results.iter().any(|r| r.status == Status::Fail) {
        1
    } else if results.iter().any(|r| matches!(r.status, Status::Inconclusive(_))) {
        2
    } else {
        0
    }
}

pub fn to_json(results: &[CheckResult]) -> String {
    serde_json::to_string_pretty(results).expect("results serialize")
}

pub fn to_text(results: &[CheckResult]) -> String {
    let width = results.iter().map(|r| r.id.len()).max().unwrap_or(0);
    let mut s = String::new();
    for r in results {
        s.push_str(&format!("{:<22} {:<width$}  {}", r.status.to_string(), r.id, r.value));
        if !r.assumptions.is_empty() {
            s.push_str(&format!("\n{:<22} {:<width$}  holds given: {}", "", "", r.assumptions.join(", ")));
        }
        s.push('\n');
    }
    let count = |f: fn(&Status) -> bool| results.iter().filter(|r| f(&r.status)).count();
    s.push_str(&format!(
        "{} checks: {} pass, {} fail, {} inconclusive\n",
        results.len(),
        count(|s| *s == Status::Pass),
        count(|s| *s == Status::Fail),
        count(|s| matches!(s, Status::Inconclusive(_)))
    ));
    s
}

fn knots_table() -> Vec<KnotRecord> {
    parse_document(KNOTS_DSL)
        .expect("bundled knot table parses")
        .items
        .into_iter()
        .filter_map(|i| match i {
            Item::Knot(k) => Some(k),
            _ => None,
        })
        .collect()
}

fn knot(name: &str) -> KnotRecord {
    knots_table()
        .into_iter()
        .find(|k| k.name == name)
        .unwrap_or_else(|| panic!("knot {name} missing from the table"))
}

fn constructions() -> Document {
    parse_document(CONSTRUCTIONS_DSL).expect("bundled constructions parse")
}

fn w_ledger() -> CycleLedger {
    constructions()
        .items
        .into_iter()
        .find_map(|i| match i {
            Item::Ledger(l) if l.name == "W" => Some(l),
            _ => None,
        })
        .expect("ledger W present")
}

fn form_def(name: &str) -> FormDef {
    constructions()
        .items
        .into_iter()
        .find_map(|i| match i {
            Item::Form(f) if f.name.as_deref() == Some(name) => Some(f),
            _ => None,
        })
        .unwrap_or_else(|| panic!("form {name} missing"))
}

fn tw(s: &str) -> MappingClass {
    let e = parse_twist_word(s).unwrap_or_else(|e| panic!("built-in twist word `{s}`: {e}"));
    e.mapping_class_closed().expect("closed twist word")
}

fn describe(e: &McEquality) -> Value {
    match e {
        McEquality::Equal(w) => json!({ "equal": true, "conjugator": w.display(surface_alphabet()).to_string() }),
        McEquality::NotEqual => json!({ "equal": false }),
        McEquality::BoundExhausted => json!({ "equal": null }),
    }
}

/// Every comparison must come out equal; a refutation fails, a bound-limited
/// search with no refutation is inconclusive.
fn all_equal(items: Vec<(String, McEquality)>, extra_ok: bool, bound: usize) -> Outcome {
    let mut value = serde_json::Map::new();
    let mut status = if extra_ok { Status::Pass } else { Status::Fail };
    let mut inconclusive = false;
    for (label, e) in &items {
        value.insert(label.clone(), describe(e));
        match e {
            McEquality::Equal(_) => {}
            McEquality::NotEqual => status = Status::Fail,
            McEquality::BoundExhausted => inconclusive = true,
        }
    }
    if status == Status::Pass && inconclusive {
        status = Status::Inconclusive(bound);
    }
    Outcome {
        status,
        value: Value::Object(value),
        assumptions: Vec::new(),
    }
}

fn eq_words(lhs: &str, rhs: &str, bound: usize) -> (String, McEquality) {
    (format!("{lhs} == {rhs}"), mc_equal(&tw(lhs), &tw(rhs), bound))
}

fn check_commutator_identity(cfg: &Config) -> Outcome {
    all_equal(vec![eq_words("a b d^-1 e^-1", "comm(a b, phi)", cfg.bound)], true, cfg.bound)
}

fn check_conjugated_monodromy(cfg: &Config) -> Outcome {
    all_equal(
        vec![eq_words("conj(a b d^-1 e^-1, e^-1)", "a b e^-1 d^-1", cfg.bound)],
        true,
        cfg.bound,
    )
}

fn check_phi_table(cfg: &Config) -> Outcome {
    let b = cfg.bound;
    let items = vec![
        eq_words("phi^2", "id", b),
        eq_words("conj(a, phi)", "e", b),
        eq_words("conj(b, phi)", "d", b),
        eq_words("conj(c, phi)", "c", b),
    ];
    all_equal(items, MappingClass::phi().orientation() == 1, b)
}

fn check_epsilon_table(cfg: &Config) -> Outcome {
    let b = cfg.bound;
    let eps = MappingClass::epsilon();
    let items = vec![
        eq_words("eps^2", "id", b),
        eq_words("conj(a, eps)", "e^-1", b),
        eq_words("conj(b, eps)", "d^-1", b),
    ];
    let reversing = eps.orientation() == -1 && symplectic_sign(&eps.h1_matrix()) == Some(-1);
    all_equal(items, reversing, b)
}

fn check_gluing(cfg: &Config) -> Outcome {
    let e = check_gluing_condition(&tw("a b"), &tw("e^-1 d^-1"), &MappingClass::epsilon(), cfg.bound);
    all_equal(vec![("eps (a b) eps^-1 == e^-1 d^-1".into(), e)], true, cfg.bound)
}

fn check_relations(cfg: &Config) -> Outcome {
    let names = ["a", "b", "c", "d", "e"];
    let mut items = Vec::new();
    for i in 0..5 {
        for j in i + 1..5 {
            let (x, y) = (names[i], names[j]);
            if j == i + 1 {
                items.push(eq_words(&format!("{x} {y} {x}"), &format!("{y} {x} {y}"), cfg.bound));
            } else {
                items.push(eq_words(&format!("{x} {y}"), &format!("{y} {x}"), cfg.bound));
            }
        }
    }
    let symplectic = CurveName::CHAIN.iter().all(|&c| {
        let m = MappingClass::twist(c).expect("chain twist").h1_matrix();
        m == transvection(c.homology()) && symplectic_sign(&m) == Some(1)
    });
    let mut out = all_equal(items, symplectic, cfg.bound);
    if let Value::Object(m) = &mut out.value {
        m.insert("transvections".into(), json!(symplectic));
    }
    out
}

fn check_boundary_monodromy(cfg: &Config) -> Outcome {
    let r = bundle_r();
    let q = square_knot_monodromy().mapping_class_closed().expect("closed");
    all_equal(
        vec![(
            format!("{} == {}", r.boundary_monodromy_expr(), square_knot_monodromy()),
            mc_equal(&r.boundary_monodromy(), &q, cfg.bound),
        )],
        true,
        cfg.bound,
    )
}

/// `det(tI − M)` by Faddeev–LeVerrier, lowest coefficient first.
fn charpoly(m: &H1Matrix) -> Vec<i64> {
    let n = 4;
    let mut c = vec![0i64; n + 1];
    c[n] = 1;
    let mut mk = [[0i64; 4]; 4];
    for k in 1..=n {
        let mut next = crate::mcg::matmul(m, &mk);
        for (i, row) in next.iter_mut().enumerate() {
            row[i] += c[n - k + 1];
        }
        mk = next;
        let am = crate::mcg::matmul(m, &mk);
        let tr: i64 = (0..n).map(|i| am[i][i]).sum();
        c[n - k] = -tr / k as i64;
    }
    c
}

fn check_s30q(_: &Config) -> Outcome {
    let m = square_knot_monodromy().mapping_class_closed().expect("closed").h1_matrix();
    let mi = IntMatrix::from_i64(m);
    let h1 = mapping_torus_h1(&mi).expect("square");
    let det = IntMatrix::identity(4).sub(&mi).det().expect("square");
    let q = knot("Q");
    let delta = alexander(&q.seifert);
    let cp = LaurentPoly::new(0, charpoly(&m));
    let det_i64: i64 = det.try_into().expect("small");
    let ok = h1 == FPAbelianGroup::free(1)
        && det_i64.abs() == delta.at_one().abs()
        && cp.normalized() == delta.normalized();
    Outcome::new(
        ok,
        json!({
            "h1": h1.to_string(),
            "det(I-M)": det_i64,
            "alexander_Q(1)": delta.at_one(),
            "charpoly": cp.normalized().to_string(),
            "alexander_Q": delta.to_string(),
        }),
    )
}

fn check_h1r(_: &Config) -> Outcome {
    let r = bundle_r();
    match bundle_presentation(&r) {
        Ok(p) => {
            let h = abelianization(&p);
            let m = bundle_h1_from_matrices(&r);
            Outcome::new(
                h == m && h == FPAbelianGroup::free(2),
                json!({ "presentation": h.to_string(), "matrices": m.to_string() }),
            )
        }
        Err(e) => Outcome::error(e),
    }
}

fn check_h1v(_: &Config) -> Outcome {
    let v = manifold_v();
    let from_data = constructions().items.iter().find_map(|i| match i {
        Item::Bundle(b) => Some(b.clone()),
        _ => None,
    });
    let data_agrees = from_data
        .map(|b| constructions().twist_env().ok().and_then(|env| b.surgered(&env).ok()) == Some(v.clone()))
        .unwrap_or(false);
    match surgery_presentation(&v) {
        Ok(p) => {
            let h = abelianization(&p);
            Outcome::new(
                h.is_trivial() && data_agrees,
                json!({ "h1": h.to_string(), "data_file_agrees": data_agrees }),
            )
            .assuming([Assumption::PushoffIdentification, Assumption::MeridianExpressions])
        }
        Err(e) => Outcome::error(e),
    }
}

fn check_chi_v(_: &Config) -> Outcome {
    let v = manifold_v();
    let chi = v.euler_characteristic();
    Outcome::new(
        chi == 2 && bundle_r().euler_characteristic() == 2,
        json!({ "chi": chi, "chi_R": bundle_r().euler_characteristic() }),
    )
}

fn check_v_normal_generation(_: &Config) -> Outcome {
    let v = manifold_v();
    let p = match surgery_presentation(&v) {
        Ok(p) => p,
        Err(e) => return Outcome::error(e),
    };
    match quotient_presentation(&p, &["x1", "y1", "x2", "y2"]) {
        Ok(q) => {
            let simplified = q.simplify();
            Outcome::new(
                q.is_trivial(),
                json!({ "quotient": simplified.to_string(), "trivial": q.is_trivial() }),
            )
            .assuming([Assumption::PushoffIdentification, Assumption::MeridianExpressions])
        }
        Err(e) => Outcome::error(e),
    }
}

fn report_value(r: &ManifoldReport) -> Value {
    let mut v = r.to_json();
    if let Value::Object(m) = &mut v {
        m.remove("assumptions");
        m.remove("derivation");
    }
    v
}

fn check_v_report(_: &Config) -> Outcome {
    match v_report(&manifold_v()) {
        Ok(r) => {
            let ok = r.is_consistent()
                && r.h1.is_trivial()
                && r.betti == [1, 0, 1, 0, 0]
                && r.signature == Some(0)
                && r.spin == Some(true);
            Outcome::new(ok, report_value(&r)).assuming(r.assumptions().iter().copied())
        }
        Err(e) => Outcome::error(e),
    }
}

fn check_canonical_fiber(_: &Config) -> Outcome {
    let sections = sections_generate_relative_h2(&manifold_v());
    match canonical_fiber_evaluation(2) {
        Ok((k, c1)) => Outcome::new(
            (k, c1) == (2, -2) && !sections.is_empty() && sections.iter().all(|s| s.1),
            json!({ "K.F": k, "c1.F": c1, "sections": sections }),
        ),
        Err(e) => Outcome::error(e),
    }
}

fn z_double() -> Result<Double, String> {
    let half = v_report(&manifold_v()).map_err(|e| e.to_string())?;
    Ok(Double {
        half,
        gluing: "id".into(),
    })
}

fn check_quotient_w(_: &Config) -> Outcome {
    let double = match z_double() {
        Ok(d) => d,
        Err(e) => return Outcome::error(e),
    };
    let z = match double_report(&double) {
        Ok(z) => z,
        Err(e) => return Outcome::error(e),
    };
    let ledger = w_ledger();
    let q = FreeQuotient {
        name: "W".into(),
        double,
        deck: DeckAction::free_involution(),
    };
    let (w, summary) = match (quotient_report(&q, Some(&ledger)), mod2_form_from_ledger(&ledger)) {
        (Ok(w), Ok(s)) => (w, s),
        (Err(e), _) => return Outcome::error(e),
        (_, Err(e)) => return Outcome::error(e),
    };
    let ok = z.euler == 4
        && z.betti[2] == 2
        && z.h1.is_trivial()
        && w.h1 == FPAbelianGroup::cyclic(2)
        && w.euler == 2
        && w.betti[2] == 0
        && summary.even
        && summary.hyperbolic
        && w.spin == Some(true);
    Outcome::new(
        ok,
        json!({
            "Z": report_value(&z),
            "W": report_value(&w),
            "ledger": { "even": summary.even, "hyperbolic": summary.hyperbolic },
        }),
    )
    .assuming(w.assumptions().iter().copied())
}

fn check_quotient_b(_: &Config) -> Outcome {
    let double = Double {
        half: ManifoldReport::knot_trace("4_1", 0),
        gluing: "id".into(),
    };
    let cover = match double_report(&double) {
        Ok(c) => c,
        Err(e) => return Outcome::error(e),
    };
    let q = FreeQuotient {
        name: "B".into(),
        double,
        deck: DeckAction::free_involution(),
    };
    match quotient_report(&q, None) {
        Ok(b) => Outcome::new(
            cover.euler == 4 && b.h1 == FPAbelianGroup::cyclic(2) && b.euler == 2 && b.betti[2] == 0,
            json!({ "cover": report_value(&cover), "B": report_value(&b) }),
        )
        .assuming(b.assumptions().iter().copied()),
        Err(e) => Outcome::error(e),
    }
}

const A_NAME: &str = "⟨1⟩⊕5⟨−1⟩";

fn check_a_classification(_: &Config) -> Outcome {
    let tail = BilinearForm::diagonal(Ring::Z, &[-1, -1, -1, -1]);
    let mut names = BTreeSet::new();
    let mut ok = true;
    for n in -6..=6 {
        let f = parametric_block(n).direct_sum(&tail);
        match classify_indefinite(&f) {
            Ok(c) => {
                ok &= c.standard_name == A_NAME;
                names.insert(c.standard_name);
            }
            Err(_) => ok = false,
        }
        ok &= parametric_block(n).transform(&parametric_reduction(n)) == parametric_block(n.rem_euclid(2));
    }
    for parity in [0u8, 1] {
        match classify_parametric(parity, &tail) {
            Ok(c) => ok &= c.standard_name == A_NAME,
            Err(_) => ok = false,
        }
    }
    for name in ["A_even", "A_odd"] {
        match form_def(name).form().map(|f| classify_indefinite(&f)) {
            Ok(Ok(c)) => ok &= c.standard_name == A_NAME,
            _ => ok = false,
        }
    }
    Outcome::new(ok, json!({ "classes": names, "n_range": [-6, 6] })).assuming([Assumption::FormClassification])
}

fn check_a_novikov(_: &Config) -> Outcome {
    let v = match v_report(&manifold_v()) {
        Ok(v) => v,
        Err(e) => return Outcome::error(e),
    };
    let d = match form_def("D").form().map(|f| inertia(&f)) {
        Ok(Ok(i)) => i,
        Ok(Err(e)) => return Outcome::error(e),
        Err(e) => return Outcome::error(e),
    };
    let v_part = (v.betti[2] as i64, v.signature.unwrap_or(i64::MIN));
    let d_part = ((d.positive + d.negative + d.nullity) as i64, d.signature());
    let a = novikov_sum(&[v_part, d_part]);
    Outcome::new(
        v.signature.is_some() && a == (6, -4),
        json!({ "V": v_part, "D": d_part, "A": a }),
    )
    .assuming(v.assumptions().iter().copied())
    .assuming([Assumption::NovikovAdditivity])
}

fn check_z_novikov(_: &Config) -> Outcome {
    let double = match z_double() {
        Ok(d) => d,
        Err(e) => return Outcome::error(e),
    };
    let half = &double.half;
    let part = (half.betti[2] as i64, half.signature.unwrap_or(i64::MIN));
    let z = match double_report(&double) {
        Ok(z) => z,
        Err(e) => return Outcome::error(e),
    };
    let sum = novikov_sum(&[part, part]);
    Outcome::new(
        half.signature.is_some() && sum == (2, 0) && sum.0 == z.betti[2] as i64,
        json!({ "V": part, "Z": sum, "b2(Z) from chi": z.betti[2] }),
    )
    .assuming(z.assumptions().iter().copied())
    .assuming([Assumption::NovikovAdditivity])
}

fn knot_value(k: &KnotRecord) -> Value {
    let delta = alexander(&k.seifert);
    let (det, sig) = determinant_and_signature(&k.seifert);
    json!({
        "alexander": delta.to_string(),
        "arf": arf(&k.seifert),
        "arf_from_alexander": arf_from_alexander(&delta),
        "determinant": det,
        "signature": sig,
        "genus": k.genus(),
    })
}

fn check_figure_eight(_: &Config) -> Outcome {
    let k = knot("4_1");
    let delta = alexander(&k.seifert);
    let (det, sig) = determinant_and_signature(&k.seifert);
    let expected = LaurentPoly::new(-1, vec![1, -3, 1]);
    let ok = arf(&k.seifert) == 1
        && arf_from_alexander(&delta) == 1
        && det == 5
        && sig == 0
        && delta.normalized() == expected
        && delta.is_symmetric();
    Outcome::new(ok, knot_value(&k))
}

fn check_square_knot(_: &Config) -> Outcome {
    let q = knot("Q");
    let t = knot("3_1");
    let delta = alexander(&q.seifert);
    let trefoil = alexander(&t.seifert);
    let (det, sig) = determinant_and_signature(&q.seifert);
    let ok = delta.normalized() == trefoil.mul(&trefoil).normalized()
        && delta.leading().abs() == 1
        && delta.span() == 4
        && q.genus() == 2
        && fibered_necessary(&q.seifert)
        && det == 9
        && sig == 0;
    let mut v = knot_value(&q);
    if let Value::Object(m) = &mut v {
        m.insert("monic".into(), json!(delta.leading().abs() == 1));
        m.insert("degree".into(), json!(delta.span()));
    }
    Outcome::new(ok, v)
}

fn check_slice_family(_: &Config) -> Outcome {
    let table = knots_table();
    let verdicts: Vec<(String, bool)> = table.iter().map(|k| (k.name.clone(), slice_family_eligible(k))).collect();
    let ok = verdicts.iter().all(|(n, e)| *e == (n == "4_1"))
        && table.iter().all(|k| arf(&k.seifert) == arf_from_alexander(&alexander(&k.seifert)));
    Outcome::new(ok, json!(verdicts.into_iter().collect::<std::collections::BTreeMap<_, _>>()))
        .assuming([Assumption::KnotData])
}

/// The built-in suite.
pub fn builtin_checks() -> Vec<Check> {
    type F = fn(&Config) -> Outcome;
    let table: [(&str, &str, &str, F); 22] = [
        ("mcg.commutator-identity", "a b d^-1 e^-1 equals the commutator of a b and phi", "bundle R: boundary monodromy", check_commutator_identity),
        ("mcg.conjugated-monodromy", "conjugating a b d^-1 e^-1 by e^-1 gives a b e^-1 d^-1", "bundle R: boundary monodromy", check_conjugated_monodromy),
        ("mcg.phi-table", "phi is an involution exchanging a and e, b and d, fixing c", "involution phi", check_phi_table),
        ("mcg.epsilon-table", "eps is an orientation-reversing involution with eps a eps = e^-1, eps b eps = d^-1", "involution eps", check_epsilon_table),
        ("mcg.gluing", "eps conjugates a b to e^-1 d^-1", "quotient W: free involution on the boundary", check_gluing),
        ("mcg.relations", "braid and commutation relations of the chain twists; transvections on H1", "chain twists a-e", check_relations),
        ("mcg.boundary-monodromy", "the boundary monodromy of R is the square knot monodromy", "bundle R: boundary", check_boundary_monodromy),
        ("homology.s30q", "0-surgery on the square knot has H1 = Z and fiber homology dies", "square knot 0-surgery", check_s30q),
        ("homology.h1r", "H1(R) from the presentation and from the monodromy matrices", "bundle R", check_h1r),
        ("homology.h1v", "H1(V) = 0 from the surgery presentation", "manifold V: homology", check_h1v),
        ("homology.chi-v", "chi(V) = 2", "manifold V: Euler characteristic", check_chi_v),
        ("homology.v-normal-generation", "killing the fiber generators trivializes pi1(V)", "manifold V: fundamental group", check_v_normal_generation),
        ("homology.v-report", "homological profile of V", "manifold V", check_v_report),
        ("homology.canonical-fiber", "canonical class on the fiber and sections dual to it", "manifold V: canonical class", check_canonical_fiber),
        ("quotient.W", "homology of Z = V u V and of its free quotient W, and spin via the ledger", "quotient W", check_quotient_w),
        ("quotient.B", "homology of the free quotient B of the double of X_0(4_1)", "quotient B", check_quotient_b),
        ("forms.a-classification", "[[0,1],[1,n]] + 4<-1> is <1> + 5<-1> for every n", "manifold A: intersection form", check_a_classification),
        ("forms.a-novikov", "b2(A) = 6, sigma(A) = -4", "manifold A: signature", check_a_novikov),
        ("forms.z-novikov", "b2(Z) = 2, sigma(Z) = 0", "double Z: signature", check_z_novikov),
        ("knots.4_1", "figure-eight: Arf 1, det 5, signature 0", "knot 4_1", check_figure_eight),
        ("knots.square-knot", "square knot: monic Alexander polynomial of degree 4", "square knot Q", check_square_knot),
        ("knots.slice-family", "eligibility for the slice family across the knot table", "knot family", check_slice_family),
    ];
    table
        .into_iter()
        .map(|(id, desc, anchor, f)| Check::new(id, desc, anchor, f))
        .collect()
}

fn item_label(kind: &str, name: Option<&str>, index: usize) -> String {
    match name {
        Some(n) => format!("file.{kind}.{n}"),
        None => format!("file.{kind}.{index}"),
    }
}

/// One check per statement of a parsed file.
pub fn document_checks(doc: &Document) -> Vec<Check> {
    let env = Arc::new(doc.twist_env());
    let mut out = Vec::new();
    let mut used = BTreeSet::new();
    for (i, item) in doc.items.iter().enumerate() {
        let env = Arc::clone(&env);
        let item = item.clone();
        let (mut id, desc) = match &item {
            Item::Word { name, .. } => (item_label("word", Some(name), i), "word problem in the surface group"),
            Item::Twist { name, .. } => (item_label("twist", Some(name), i), "mapping class of a twist word"),
            Item::Equal { .. } => (item_label("equal", None, i), "equality of mapping classes"),
            Item::Presentation { name, .. } => (item_label("presentation", name.as_deref(), i), "abelianization"),
            Item::Bundle(b) => (item_label("bundle", b.name.as_deref(), i), "bundle and surgery homology"),
            Item::Ledger(l) => (item_label("ledger", Some(&l.name), i), "mod-2 ledger form"),
            Item::Form(f) => (item_label("form", f.name.as_deref(), i), "form invariants"),
            Item::Knot(k) => (item_label("knot", Some(&k.name), i), "knot invariants"),
        };
        if !used.insert(id.clone()) {
            id = format!("{id}.{i}");
            used.insert(id.clone());
        }
        let anchor = format!("statement {}", i + 1);
        out.push(Check::new(id, desc, anchor, move |cfg: &Config| {
            let env = match env.as_ref() {
                Ok(e) => e,
                Err(e) => return Outcome::error(e),
            };
            run_item(&item, env, cfg)
        }));
    }
    out
}

fn run_item(item: &Item, env: &std::collections::HashMap<String, MappingClass>, cfg: &Config) -> Outcome {
    let g = crate::mcg::surface();
    match item {
        Item::Word { word, .. } => {
            let reduced = g.dehn_reduce(word);
            Outcome::new(
                true,
                json!({ "dehn_reduced": reduced.display(surface_alphabet()).to_string(), "trivial": reduced.is_empty() }),
            )
        }
        Item::Twist { name, .. } => match env.get(name) {
            Some(m) => Outcome::new(true, json!({ "orientation": m.orientation(), "h1": m.h1_matrix() })),
            None => Outcome::error(format!("unknown twist {name}")),
        },
        Item::Equal { lhs, rhs } => match (lhs.mapping_class(env), rhs.mapping_class(env)) {
            (Ok(f), Ok(h)) => all_equal(vec![(format!("{lhs} == {rhs}"), mc_equal(&f, &h, cfg.bound))], true, cfg.bound),
            (Err(e), _) | (_, Err(e)) => Outcome::error(e),
        },
        Item::Presentation { presentation, .. } => {
            Outcome::new(true, json!({ "abelianization": abelianization(presentation).to_string() }))
        }
        Item::Bundle(b) => {
            let sb = match b.surgered(env) {
                Ok(s) => s,
                Err(e) => return Outcome::error(e),
            };
            if b.surgeries.is_empty() {
                match bundle_presentation(&sb.base_bundle) {
                    Ok(p) => Outcome::new(
                        true,
                        json!({ "h1": abelianization(&p).to_string(), "chi": sb.euler_characteristic() }),
                    ),
                    Err(e) => Outcome::error(e),
                }
            } else {
                match v_report(&sb) {
                    Ok(r) => Outcome::new(r.is_consistent(), report_value(&r)).assuming(r.assumptions().iter().copied()),
                    Err(e) => Outcome::error(e),
                }
            }
        }
        Item::Ledger(l) => match mod2_form_from_ledger(l) {
            Ok(s) => Outcome::new(
                true,
                json!({ "rank": s.form.rank(), "even": s.even, "hyperbolic": s.hyperbolic }),
            )
            .assuming([Assumption::LedgerPairings]),
            Err(e) => Outcome::error(e),
        },
        Item::Form(d) => {
            let f = match d.form() {
                Ok(f) => f,
                Err(e) => return Outcome::error(e),
            };
            let mut v = json!({ "rank": f.rank(), "parity": f.parity().to_string(), "det": f.det().to_string() });
            if f.ring() == Ring::Z {
                if let Ok(i) = inertia(&f) {
                    v["signature"] = json!(i.signature());
                    v["nullity"] = json!(i.nullity);
                }
                if let Ok(c) = classify_indefinite(&f) {
                    v["class"] = json!(c.standard_name);
                    return Outcome::new(true, v).assuming([Assumption::FormClassification]);
                }
            }
            Outcome::new(true, v)
        }
        Item::Knot(k) => {
            let v = knot_value(k);
            let consistent = v["arf"] == v["arf_from_alexander"];
            let mut out = Outcome::new(consistent, v);
            out.value["slice_family_eligible"] = json!(slice_family_eligible(k));
            out.assuming([Assumption::KnotData])
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_are_unique_and_anchored() {
        let checks = builtin_checks();
        let ids: BTreeSet<_> = checks.iter().map(|c| c.id.clone()).collect();
        assert_eq!(ids.len(), checks.len());
        assert!(checks.iter().all(|c| !c.anchor.is_empty() && !c.description.is_empty()));
    }

    #[test]
    fn patterns() {
        assert!(matches("mcg.*", "mcg.phi-table"));
        assert!(!matches("mcg.*", "homology.h1v"));
        assert!(matches("h1v", "homology.h1v"));
        assert!(matches("*.4_1", "knots.4_1"));
    }

    #[test]
    fn charpoly_of_identity() {
        let id = crate::mcg::identity_matrix();
        assert_eq!(charpoly(&id), vec![1, -4, 6, -4, 1]);
    }

    #[test]
    fn exit_codes() {
        let r = |status| CheckResult {
            id: "x".into(),
            status,
            value: Value::Null,
            assumptions: vec![],
            ms: 0,
        };
        assert_eq!(exit_code(&[r(Status::Pass)]), 0);
        assert_eq!(exit_code(&[r(Status::Pass), r(Status::Inconclusive(2))]), 2);
        assert_eq!(exit_code(&[r(Status::Fail), r(Status::Inconclusive(2))]), 1);
        assert_eq!(exit_code(&[]), 0);
    }

    #[test]
    fn bundled_data_checks() {
        let cfg = Config::default();
        let results = run(&document_checks(&constructions()), None, &cfg);
        assert!(results.iter().all(|r| r.status == Status::Pass), "{}", to_text(&results));
        let knots = run(&document_checks(&parse_document(KNOTS_DSL).unwrap()), None, &cfg);
        assert_eq!(knots.len(), 4);
        assert!(knots.iter().all(|r| r.status == Status::Pass));
    }
}

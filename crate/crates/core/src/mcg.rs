//! The genus-2 mapping class group as outer automorphisms of `π1(Σ2)`.
//!
//! Generators of the surface group are `x1, y1, x2, y2` with relator
//! `[x1,y1][x2,y2]`; the symplectic pairing has `<x_i, y_i> = 1`.
//!
//! # Model
//!
//! `Σ2` is the double cover of the sphere branched over six points. The arc
//! between consecutive branch points `i, i+1` lifts to a simple closed curve,
//! and the half-twist on that arc lifts to the Dehn twist about it. Writing the
//! orbifold group on the branch loops `t1..t6` and letting the half-twists act
//! by the Artin formulas gives the chain twists exactly; in the `x/y` basis
//! the chain curves are
//!
//! | curve | word        | class        |
//! |-------|-------------|--------------|
//! | a     | `x1`        | `x1`         |
//! | b     | `y1`        | `y1`         |
//! | c     | `x1^-1 y2`  | `-x1 + y2`   |
//! | d     | `x2`        | `x2`         |
//! | e     | `y2`        | `y2`         |
//! | z     | `y1 x2^-1`  | `y1 - x2`    |
//!
//! `φ` is the lift of the rotation of the branch set reversing the chain, and
//! `ε` the reflection `x1 ↔ y2, y1 ↔ x2`. The model is pinned down by its
//! testable properties (transvection action, fixing disjoint curves, braid
//! relations, and the conjugation tables of `φ` and `ε`) rather than by any
//! particular picture; whether `φ` is isotopic to a given drawn involution is
//! not decidable from these constraints alone.
//!
//! # Composition
//!
//! Twist words act left to right: in `g1 g2 ... gn` the map `g1` is applied
//! first. [`MappingClass::then`] implements this.

use std::collections::HashMap;
use std::fmt;
use std::sync::OnceLock;

use thiserror::Error;

use crate::expr::{Expr, GroupOps};
use crate::words::{Conjugacy, SurfaceGroup, Word, DEFAULT_BOUND};

pub type H1Matrix = [[i64; 4]; 4];

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum McgError {
    #[error("images do not define an automorphism: {0}")]
    InvalidAutomorphism(String),
    #[error("unknown twist word `{0}`")]
    UnknownName(String),
    #[error("expected 4 generator images, got {0}")]
    WrongArity(usize),
}

/// The genus-2 surface group shared by every mapping class.
pub fn surface() -> &'static SurfaceGroup {
    static G: OnceLock<SurfaceGroup> = OnceLock::new();
    G.get_or_init(|| SurfaceGroup::new(2).expect("genus 2 is valid"))
}

const X1: i32 = 1;
const Y1: i32 = 2;
const X2: i32 = 3;
const Y2: i32 = 4;

fn w(s: &[i32]) -> Word {
    Word::from_signed(s)
}

/// Named simple closed curves on the genus-2 fiber.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CurveName {
    A,
    B,
    C,
    D,
    E,
    Z,
    X1,
    Y1,
    X2,
    Y2,
}

impl CurveName {
    pub const CHAIN: [CurveName; 5] = [CurveName::A, CurveName::B, CurveName::C, CurveName::D, CurveName::E];

    pub fn word(self) -> Word {
        match self {
            CurveName::A | CurveName::X1 => w(&[X1]),
            CurveName::B | CurveName::Y1 => w(&[Y1]),
            CurveName::C => w(&[-X1, Y2]),
            CurveName::D | CurveName::X2 => w(&[X2]),
            CurveName::E | CurveName::Y2 => w(&[Y2]),
            CurveName::Z => w(&[Y1, -X2]),
        }
    }

    pub fn homology(self) -> [i64; 4] {
        abel(&self.word())
    }

    pub fn name(self) -> &'static str {
        match self {
            CurveName::A => "a",
            CurveName::B => "b",
            CurveName::C => "c",
            CurveName::D => "d",
            CurveName::E => "e",
            CurveName::Z => "z",
            CurveName::X1 => "x1",
            CurveName::Y1 => "y1",
            CurveName::X2 => "x2",
            CurveName::Y2 => "y2",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        [
            CurveName::A,
            CurveName::B,
            CurveName::C,
            CurveName::D,
            CurveName::E,
            CurveName::Z,
            CurveName::X1,
            CurveName::Y1,
            CurveName::X2,
            CurveName::Y2,
        ]
        .into_iter()
        .find(|c| c.name() == s)
    }
}

fn abel(w: &Word) -> [i64; 4] {
    let v = w.abelianization(4);
    [v[0], v[1], v[2], v[3]]
}

/// Algebraic intersection `<u, v>` with `<x_i, y_i> = 1`.
pub fn intersection(u: [i64; 4], v: [i64; 4]) -> i64 {
    u[0] * v[1] - u[1] * v[0] + u[2] * v[3] - u[3] * v[2]
}

/// Symplectic transvection `x ↦ x + <x, c> c` as a matrix acting on columns.
pub fn transvection(c: [i64; 4]) -> H1Matrix {
    let mut m = identity_matrix();
    for j in 0..4 {
        let mut e = [0; 4];
        e[j] = 1;
        let k = intersection(e, c);
        for i in 0..4 {
            m[i][j] += k * c[i];
        }
    }
    m
}

pub fn identity_matrix() -> H1Matrix {
    let mut m = [[0; 4]; 4];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = 1;
    }
    m
}

pub fn matmul(a: &H1Matrix, b: &H1Matrix) -> H1Matrix {
    let mut m = [[0; 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            m[i][j] = (0..4).map(|k| a[i][k] * b[k][j]).sum();
        }
    }
    m
}

/// `Mᵀ J M = s J`: the sign `s` if `M` preserves the pairing up to sign.
pub fn symplectic_sign(m: &H1Matrix) -> Option<i64> {
    let col = |j: usize| [m[0][j], m[1][j], m[2][j], m[3][j]];
    let unit = |j: usize| {
        let mut e = [0; 4];
        e[j] = 1;
        e
    };
    for s in [1, -1] {
        if (0..4).all(|i| (0..4).all(|j| intersection(col(i), col(j)) == s * intersection(unit(i), unit(j)))) {
            return Some(s);
        }
    }
    None
}

/// Endomorphism of the surface group given by generator images.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Automorphism {
    images: Vec<Word>,
    orientation: i8,
}

impl Automorphism {
    pub fn identity() -> Self {
        Automorphism {
            images: (0..4).map(Word::generator).collect(),
            orientation: 1,
        }
    }

    /// Checks that the relator goes to a conjugate of `relator^orientation`.
    pub fn new(images: Vec<Word>, orientation: i8) -> Result<Self, McgError> {
        if images.len() != 4 {
            return Err(McgError::WrongArity(images.len()));
        }
        if orientation != 1 && orientation != -1 {
            return Err(McgError::InvalidAutomorphism(format!("orientation {orientation}")));
        }
        let g = surface();
        let images: Vec<Word> = images.iter().map(|i| g.dehn_reduce(i)).collect();
        let a = Automorphism { images, orientation };
        let target = g.relator().pow(i64::from(orientation));
        match g.conjugacy(&a.apply(g.relator()), &target, DEFAULT_BOUND) {
            Conjugacy::Witness(_) => Ok(a),
            _ => Err(McgError::InvalidAutomorphism(
                "relator is not sent to a conjugate of itself".into(),
            )),
        }
    }

    pub fn images(&self) -> &[Word] {
        &self.images
    }

    pub fn orientation(&self) -> i8 {
        self.orientation
    }

    pub fn apply(&self, word: &Word) -> Word {
        surface().dehn_reduce(&word.substitute(&self.images))
    }

    /// `self` first, then `next`.
    pub fn then(&self, next: &Automorphism) -> Automorphism {
        Automorphism {
            images: self.images.iter().map(|i| next.apply(i)).collect(),
            orientation: self.orientation * next.orientation,
        }
    }

    pub fn h1_matrix(&self) -> H1Matrix {
        let mut m = [[0; 4]; 4];
        for (j, img) in self.images.iter().enumerate() {
            let v = abel(img);
            for i in 0..4 {
                m[i][j] = v[i];
            }
        }
        m
    }
}

/// Atomic generators of twist words.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Generator {
    A,
    B,
    C,
    D,
    E,
    Phi,
    Epsilon,
}

impl Generator {
    pub const ALL: [Generator; 7] = [
        Generator::A,
        Generator::B,
        Generator::C,
        Generator::D,
        Generator::E,
        Generator::Phi,
        Generator::Epsilon,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Generator::A => "a",
            Generator::B => "b",
            Generator::C => "c",
            Generator::D => "d",
            Generator::E => "e",
            Generator::Phi => "phi",
            Generator::Epsilon => "eps",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "epsilon" => Some(Generator::Epsilon),
            _ => Generator::ALL.into_iter().find(|g| g.name() == s),
        }
    }

    pub fn curve(self) -> Option<CurveName> {
        match self {
            Generator::A => Some(CurveName::A),
            Generator::B => Some(CurveName::B),
            Generator::C => Some(CurveName::C),
            Generator::D => Some(CurveName::D),
            Generator::E => Some(CurveName::E),
            _ => None,
        }
    }
}

/// A mapping class, carried as an automorphism together with an explicit inverse.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MappingClass {
    fwd: Automorphism,
    inv: Automorphism,
}

fn auto(images: [&[i32]; 4], orientation: i8) -> Automorphism {
    Automorphism::new(images.iter().map(|s| w(s)).collect(), orientation).expect("built-in model is valid")
}

/// Right-handed Dehn twist about a chain curve.
pub fn twist_auto(c: CurveName) -> Result<Automorphism, McgError> {
    Ok(twist_pair(c)?.0)
}

fn twist_pair(c: CurveName) -> Result<(Automorphism, Automorphism), McgError> {
    let x1: &[i32] = &[X1];
    let y1: &[i32] = &[Y1];
    let x2: &[i32] = &[X2];
    let y2: &[i32] = &[Y2];
    Ok(match c {
        CurveName::A => (auto([x1, &[Y1, -X1], x2, y2], 1), auto([x1, &[Y1, X1], x2, y2], 1)),
        CurveName::B => (auto([&[X1, Y1], y1, x2, y2], 1), auto([&[X1, -Y1], y1, x2, y2], 1)),
        CurveName::C => (
            auto([x1, &[-X1, Y2, Y1], &[-X1, Y2, X2], y2], 1),
            auto([x1, &[-Y2, X1, Y1], &[-Y2, X1, X2], y2], 1),
        ),
        CurveName::D => (auto([x1, y1, x2, &[Y2, -X2]], 1), auto([x1, y1, x2, &[Y2, X2]], 1)),
        CurveName::E => (auto([x1, y1, &[X2, Y2], y2], 1), auto([x1, y1, &[X2, -Y2], y2], 1)),
        other => return Err(McgError::UnknownName(other.name().to_string())),
    })
}

/// The orientation-preserving involution exchanging `a ↔ e`, `b ↔ d` and fixing `c`.
pub fn involution_phi() -> Automorphism {
    auto([&[-Y2], &[Y2, X2, -Y2], &[X1, Y1, -X1], &[-X1]], 1)
}

/// The orientation-reversing involution `x1 ↔ y2`, `y1 ↔ x2`.
pub fn involution_epsilon() -> Automorphism {
    auto([&[Y2], &[X2], &[Y1], &[X1]], -1)
}

impl MappingClass {
    pub fn identity() -> Self {
        MappingClass {
            fwd: Automorphism::identity(),
            inv: Automorphism::identity(),
        }
    }

    /// Requires `fwd` and `inv` to compose to the identity on every generator.
    pub fn from_pair(fwd: Automorphism, inv: Automorphism) -> Result<Self, McgError> {
        let g = surface();
        let comp = fwd.then(&inv);
        if (0..4).all(|i| g.equal(&comp.images[i], &Word::generator(i))) {
            Ok(MappingClass { fwd, inv })
        } else {
            Err(McgError::InvalidAutomorphism("inverse does not compose to the identity".into()))
        }
    }

    pub fn twist(c: CurveName) -> Result<Self, McgError> {
        let (fwd, inv) = twist_pair(c)?;
        Ok(MappingClass { fwd, inv })
    }

    pub fn phi() -> Self {
        MappingClass {
            fwd: involution_phi(),
            inv: involution_phi(),
        }
    }

    pub fn epsilon() -> Self {
        MappingClass {
            fwd: involution_epsilon(),
            inv: involution_epsilon(),
        }
    }

    pub fn generator(g: Generator) -> Self {
        match g {
            Generator::Phi => Self::phi(),
            Generator::Epsilon => Self::epsilon(),
            other => Self::twist(other.curve().expect("twist generator")).expect("chain curve"),
        }
    }

    pub fn automorphism(&self) -> &Automorphism {
        &self.fwd
    }

    pub fn inverse_automorphism(&self) -> &Automorphism {
        &self.inv
    }

    pub fn orientation(&self) -> i8 {
        self.fwd.orientation
    }

    pub fn apply(&self, word: &Word) -> Word {
        self.fwd.apply(word)
    }

    /// `self` first, then `next`; as a twist word this is `self next`.
    pub fn then(&self, next: &MappingClass) -> MappingClass {
        MappingClass {
            fwd: self.fwd.then(&next.fwd),
            inv: next.inv.then(&self.inv),
        }
    }

    pub fn inverse(&self) -> MappingClass {
        MappingClass {
            fwd: self.inv.clone(),
            inv: self.fwd.clone(),
        }
    }

    pub fn pow(&self, n: i64) -> MappingClass {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        (0..n.unsigned_abs()).fold(MappingClass::identity(), |acc, _| acc.then(&base))
    }

    /// The twist word `x self x^-1`.
    pub fn conjugate_by(&self, x: &MappingClass) -> MappingClass {
        x.then(self).then(&x.inverse())
    }

    /// The twist word `u v u^-1 v^-1`.
    pub fn commutator(u: &MappingClass, v: &MappingClass) -> MappingClass {
        u.then(v).then(&u.inverse()).then(&v.inverse())
    }

    pub fn h1_matrix(&self) -> H1Matrix {
        self.fwd.h1_matrix()
    }
}

/// Left-to-right composition of a sequence of mapping classes.
pub fn compose(parts: &[MappingClass]) -> MappingClass {
    parts.iter().fold(MappingClass::identity(), |acc, p| acc.then(p))
}

/// Result of comparing two mapping classes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum McEquality {
    /// `f(x) = w g(x) w^-1` for every generator `x`.
    Equal(Word),
    NotEqual,
    BoundExhausted,
}

impl McEquality {
    pub fn is_equal(&self) -> bool {
        matches!(self, McEquality::Equal(_))
    }
}

/// Equality in `Out(π1 Σ2)`.
///
/// A conjugator taking `g(x1)` to `f(x1)` is unique up to right multiplication
/// by the centralizer of `g(x1)`, which is cyclic and generated by `g(x1)`
/// because `x1` is primitive. Candidates `w0 g(x1)^k` with `|k| <= bound` are
/// verified on every generator.
pub fn mc_equal(f: &MappingClass, g: &MappingClass, bound: usize) -> McEquality {
    if f.orientation() != g.orientation() || f.h1_matrix() != g.h1_matrix() {
        return McEquality::NotEqual;
    }
    let s = surface();
    let (fi, gi) = (f.fwd.images(), g.fwd.images());
    let w0 = match s.conjugacy(&fi[0], &gi[0], bound) {
        Conjugacy::Witness(w) => w,
        Conjugacy::NotConjugate => return McEquality::NotEqual,
        Conjugacy::Exhausted => return McEquality::BoundExhausted,
    };
    let bound = bound as i64;
    for k in (0..=bound).flat_map(|k| if k == 0 { vec![0] } else { vec![k, -k] }) {
        let w = s.dehn_reduce(&(&w0 * &gi[0].pow(k)));
        if (1..4).all(|i| s.equal(&fi[i], &w.conjugate(&gi[i]))) {
            return McEquality::Equal(w);
        }
    }
    McEquality::BoundExhausted
}

/// Whether `ε f ε^-1 ≡ g`; when it holds, rotation by π in the base combined
/// with `ε` on the fiber is a free orientation-reversing self-map of the
/// mapping torus of `f g`.
pub fn check_gluing_condition(
    f: &MappingClass,
    g: &MappingClass,
    epsilon: &MappingClass,
    bound: usize,
) -> McEquality {
    mc_equal(&f.conjugate_by(epsilon), g, bound)
}

/// Atom of a twist word: a generator or a reference to a named twist word.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum TwistAtom {
    Gen(Generator),
    Name(String),
}

impl fmt::Display for TwistAtom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TwistAtom::Gen(g) => f.write_str(g.name()),
            TwistAtom::Name(n) => f.write_str(n),
        }
    }
}

/// Twist words over `a..e`, `phi`, `eps`, e.g. `comm(a b, phi)`.
pub type TwistExpr = Expr<TwistAtom>;

struct Mcg;

impl GroupOps for Mcg {
    type Elem = MappingClass;
    fn identity(&self) -> MappingClass {
        MappingClass::identity()
    }
    fn mul(&self, a: &MappingClass, b: &MappingClass) -> MappingClass {
        a.then(b)
    }
    fn inv(&self, a: &MappingClass) -> MappingClass {
        a.inverse()
    }
}

impl Expr<TwistAtom> {
    pub fn gens(gs: &[(Generator, i64)]) -> TwistExpr {
        Expr::atoms(gs.iter().map(|&(g, e)| (TwistAtom::Gen(g), e)))
    }

    pub fn mapping_class(&self, env: &HashMap<String, MappingClass>) -> Result<MappingClass, McgError> {
        self.eval(&Mcg, &mut |a: &TwistAtom| match a {
            TwistAtom::Gen(g) => Ok(MappingClass::generator(*g)),
            TwistAtom::Name(n) => env.get(n).cloned().ok_or_else(|| McgError::UnknownName(n.clone())),
        })
    }

    pub fn mapping_class_closed(&self) -> Result<MappingClass, McgError> {
        self.mapping_class(&HashMap::new())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(c: CurveName) -> MappingClass {
        MappingClass::twist(c).unwrap()
    }

    fn eq(f: &MappingClass, g: &MappingClass) -> bool {
        mc_equal(f, g, DEFAULT_BOUND).is_equal()
    }

    #[test]
    fn chain_intersections() {
        let ch = CurveName::CHAIN;
        for i in 0..5 {
            for j in 0..5 {
                let p = intersection(ch[i].homology(), ch[j].homology());
                if i.abs_diff(j) == 1 {
                    assert_eq!(p.abs(), 1, "{:?} {:?}", ch[i], ch[j]);
                } else {
                    assert_eq!(p, 0);
                }
            }
        }
    }

    #[test]
    fn twists_abelianize_to_transvections() {
        for c in CurveName::CHAIN {
            assert_eq!(t(c).h1_matrix(), transvection(c.homology()), "{c:?}");
            assert_eq!(symplectic_sign(&t(c).h1_matrix()), Some(1));
        }
    }

    #[test]
    fn twists_fix_disjoint_curves() {
        let g = surface();
        for (i, &c) in CurveName::CHAIN.iter().enumerate() {
            for (j, &d) in CurveName::CHAIN.iter().enumerate() {
                if i.abs_diff(j) != 1 {
                    let img = t(c).apply(&d.word());
                    assert!(g.conjugacy_witness(&img, &d.word(), DEFAULT_BOUND).is_some(), "{c:?} {d:?}");
                }
            }
        }
    }

    #[test]
    fn explicit_inverses() {
        for c in CurveName::CHAIN {
            let (f, i) = twist_pair(c).unwrap();
            assert!(MappingClass::from_pair(f, i).is_ok());
        }
        assert!(MappingClass::from_pair(involution_phi(), involution_phi()).is_ok());
        assert!(MappingClass::from_pair(involution_epsilon(), involution_epsilon()).is_ok());
        assert!(MappingClass::from_pair(twist_auto(CurveName::A).unwrap(), Automorphism::identity()).is_err());
    }

    #[test]
    fn invalid_images_rejected() {
        let bad = vec![w(&[X1, X1]), w(&[Y1]), w(&[X2]), w(&[Y2])];
        assert!(Automorphism::new(bad, 1).is_err());
        assert!(Automorphism::new(vec![Word::identity()], 1).is_err());
    }

    #[test]
    fn phi_table() {
        let phi = MappingClass::phi();
        assert!(eq(&phi.pow(2), &MappingClass::identity()));
        let pairs = [
            (CurveName::A, CurveName::E),
            (CurveName::B, CurveName::D),
            (CurveName::C, CurveName::C),
            (CurveName::D, CurveName::B),
            (CurveName::E, CurveName::A),
        ];
        for (x, y) in pairs {
            assert!(eq(&t(x).conjugate_by(&phi), &t(y)), "{x:?}");
        }
        assert_eq!(phi.orientation(), 1);
    }

    #[test]
    fn epsilon_table() {
        let eps = MappingClass::epsilon();
        assert_eq!(eps.orientation(), -1);
        assert!(eq(&eps.pow(2), &MappingClass::identity()));
        assert!(eq(&t(CurveName::A).conjugate_by(&eps), &t(CurveName::E).inverse()));
        assert!(eq(&t(CurveName::B).conjugate_by(&eps), &t(CurveName::D).inverse()));
        assert_eq!(symplectic_sign(&eps.h1_matrix()), Some(-1));
    }

    #[test]
    fn commutator_identity() {
        let (a, b, d, e) = (t(CurveName::A), t(CurveName::B), t(CurveName::D), t(CurveName::E));
        let ab = a.then(&b);
        let lhs = compose(&[a.clone(), b.clone(), d.inverse(), e.inverse()]);
        let rhs = MappingClass::commutator(&ab, &MappingClass::phi());
        assert!(eq(&lhs, &rhs));
        let conj = lhs.conjugate_by(&e.inverse());
        let target = compose(&[a, b, e.inverse(), d.inverse()]);
        assert!(eq(&conj, &target));
    }

    #[test]
    fn negative_examples() {
        let (a, b) = (t(CurveName::A), t(CurveName::B));
        assert_eq!(mc_equal(&a.then(&b), &b.then(&a), DEFAULT_BOUND), McEquality::NotEqual);
        assert_eq!(
            mc_equal(&MappingClass::epsilon(), &MappingClass::identity(), DEFAULT_BOUND),
            McEquality::NotEqual
        );
        let eps = MappingClass::epsilon();
        assert!(!check_gluing_condition(&a.then(&b), &a.then(&b), &eps, DEFAULT_BOUND).is_equal());
    }

    #[test]
    fn gluing_condition() {
        let eps = MappingClass::epsilon();
        let ab = t(CurveName::A).then(&t(CurveName::B));
        let g = t(CurveName::E).inverse().then(&t(CurveName::D).inverse());
        assert!(check_gluing_condition(&ab, &g, &eps, DEFAULT_BOUND).is_equal());
        let id = MappingClass::identity();
        assert!(check_gluing_condition(&id, &id, &eps, DEFAULT_BOUND).is_equal());
    }

    #[test]
    fn h1_is_a_homomorphism() {
        let f = t(CurveName::C);
        let g = MappingClass::phi();
        assert_eq!(f.then(&g).h1_matrix(), matmul(&g.h1_matrix(), &f.h1_matrix()));
    }

    #[test]
    fn z_curve() {
        let g = surface();
        let z = CurveName::Z;
        assert_eq!(intersection(z.homology(), CurveName::E.homology()).abs(), 1);
        assert_eq!(intersection(z.homology(), CurveName::C.homology()), 0);
        let tc = t(CurveName::C).apply(&z.word());
        assert!(g.conjugacy_witness(&tc, &z.word(), DEFAULT_BOUND).is_some());
    }

    #[test]
    fn twist_expr_display() {
        let e = TwistExpr::comm(
            TwistExpr::gens(&[(Generator::A, 1), (Generator::B, 1)]),
            Expr::Atom(TwistAtom::Gen(Generator::Phi)),
        );
        assert_eq!(e.to_string(), "comm(a b, phi)");
        let p = TwistExpr::gens(&[(Generator::D, -1), (Generator::E, -1)]);
        assert_eq!(p.to_string(), "d^-1 e^-1");
        assert_eq!(TwistExpr::Product(vec![]).to_string(), "id");
    }

    #[test]
    fn twist_expr_evaluation() {
        let e = TwistExpr::conj(
            TwistExpr::gens(&[(Generator::A, 1), (Generator::B, 1), (Generator::D, -1), (Generator::E, -1)]),
            TwistExpr::gens(&[(Generator::E, -1)]),
        );
        let target = TwistExpr::gens(&[(Generator::A, 1), (Generator::B, 1), (Generator::E, -1), (Generator::D, -1)]);
        assert!(eq(&e.mapping_class_closed().unwrap(), &target.mapping_class_closed().unwrap()));
        let unknown = Expr::Atom(TwistAtom::Name("w".into()));
        assert_eq!(unknown.mapping_class_closed().unwrap_err(), McgError::UnknownName("w".into()));
    }
}

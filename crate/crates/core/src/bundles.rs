//! Genus-2 surface bundles over the once-punctured torus and torus surgeries
//! on them.
//!
//! `π1` of a bundle over a punctured torus is the semidirect product of the
//! fiber group with the free group on the base loops `α, β`, so the
//! presentation has the surface relator and `α x α^-1 = φα(x)`,
//! `β x β^-1 = φβ(x)` for every fiber generator `x`.
//!
//! The surgery presentation is bookkeeping rather than a computed `π1` of the
//! torus complement: each surgery contributes a meridian generator `μ`, the
//! relator `μ = m` for its supplied free-homotopy expression `m`, and the
//! filling relator `μ · p^k` where `p` is the pushoff of the surgery direction
//! and `k` the coefficient.

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

use crate::expr::{Expr, GroupOps};
use crate::homcalc::{abelianization, mapping_torus_h1, FPAbelianGroup, GroupPresentation, IntMatrix};
use crate::mcg::{surface, CurveName, Generator, MappingClass, McgError, TwistExpr};
use crate::quotients::{Assumption, Boundary, ManifoldReport};
use crate::words::{Letter, Word, DEFAULT_BOUND};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BundleError {
    #[error("only genus-2 fibers are modelled (got {0})")]
    UnsupportedFiber(usize),
    #[error("presentations are only built over the once-punctured torus")]
    UnsupportedBase,
    #[error(transparent)]
    Mcg(#[from] McgError),
    #[error("surgery along {0} lacks its meridian expression")]
    MissingMeridian(String),
    #[error("meridian `{0}` is not null-homologous")]
    MeridianNotNullHomologous(String),
    #[error("curve {0} is not fixed by the monodromy along {1}")]
    TorusNotInvariant(String, String),
    #[error("surgery tori along {0} and {1} meet")]
    ToriIntersect(String, String),
    #[error("two surgeries along the base direction {0}")]
    DuplicateDirection(String),
    #[error("surgery coefficient {0} is not supported; only +1 is modelled")]
    UnsupportedSlope(i64),
    #[error("pushoff `{0}` may only use fiber curves and single-primed base loops")]
    RecursivePushoff(String),
    #[error("canonical class evaluation needs fiber genus at least 2 (got {0})")]
    GenusTooSmall(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BaseDirection {
    Alpha,
    Beta,
}

impl BaseDirection {
    pub fn name(self) -> &'static str {
        match self {
            BaseDirection::Alpha => "alpha",
            BaseDirection::Beta => "beta",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "alpha" => Some(BaseDirection::Alpha),
            "beta" => Some(BaseDirection::Beta),
            _ => None,
        }
    }
}

/// Atom of a word in the fundamental group of the bundle or of the torus
/// complement: a fiber curve, or a base loop with 0, 1 or 2 primes.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum PiAtom {
    Curve(CurveName),
    Base(BaseDirection, u8),
}

impl fmt::Display for PiAtom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PiAtom::Curve(c) => f.write_str(c.name()),
            PiAtom::Base(d, primes) => write!(f, "{}{}", d.name(), "'".repeat(usize::from(*primes))),
        }
    }
}

impl PiAtom {
    pub fn parse(s: &str) -> Option<Self> {
        if let Some(c) = CurveName::parse(s) {
            return Some(PiAtom::Curve(c));
        }
        let primes = s.len() - s.trim_end_matches('\'').len();
        let base = BaseDirection::parse(s.trim_end_matches('\''))?;
        (primes <= 2).then_some(PiAtom::Base(base, primes as u8))
    }
}

pub type PiExpr = Expr<PiAtom>;

struct Free;

impl GroupOps for Free {
    type Elem = Word;
    fn identity(&self) -> Word {
        Word::identity()
    }
    fn mul(&self, a: &Word, b: &Word) -> Word {
        a * b
    }
    fn inv(&self, a: &Word) -> Word {
        a.inverse()
    }
}

/// Base surface of a bundle.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BaseSurface {
    pub genus: u32,
    pub punctures: u32,
}

impl BaseSurface {
    pub const PUNCTURED_TORUS: BaseSurface = BaseSurface { genus: 1, punctures: 1 };
    pub const TORUS: BaseSurface = BaseSurface { genus: 1, punctures: 0 };

    pub fn euler(self) -> i64 {
        2 - 2 * i64::from(self.genus) - i64::from(self.punctures)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurfaceBundle {
    pub fiber_genus: usize,
    pub base: BaseSurface,
    pub monodromy_alpha: TwistExpr,
    pub monodromy_beta: TwistExpr,
    alpha: MappingClass,
    beta: MappingClass,
}

impl SurfaceBundle {
    /// Genus-2 bundle over the punctured torus; names in the monodromies
    /// resolve through `env`.
    pub fn new(
        monodromy_alpha: TwistExpr,
        monodromy_beta: TwistExpr,
        env: &HashMap<String, MappingClass>,
    ) -> Result<Self, BundleError> {
        Self::with_base(2, BaseSurface::PUNCTURED_TORUS, monodromy_alpha, monodromy_beta, env)
    }

    pub fn with_base(
        fiber_genus: usize,
        base: BaseSurface,
        monodromy_alpha: TwistExpr,
        monodromy_beta: TwistExpr,
        env: &HashMap<String, MappingClass>,
    ) -> Result<Self, BundleError> {
        if fiber_genus != 2 {
            return Err(BundleError::UnsupportedFiber(fiber_genus));
        }
        let alpha = monodromy_alpha.mapping_class(env)?;
        let beta = monodromy_beta.mapping_class(env)?;
        Ok(SurfaceBundle {
            fiber_genus,
            base,
            monodromy_alpha,
            monodromy_beta,
            alpha,
            beta,
        })
    }

    pub fn monodromy(&self, d: BaseDirection) -> &MappingClass {
        match d {
            BaseDirection::Alpha => &self.alpha,
            BaseDirection::Beta => &self.beta,
        }
    }

    /// Monodromy around the puncture, `[φβ, φα]`.
    pub fn boundary_monodromy(&self) -> MappingClass {
        MappingClass::commutator(&self.beta, &self.alpha)
    }

    pub fn boundary_monodromy_expr(&self) -> TwistExpr {
        TwistExpr::comm(self.monodromy_beta.clone(), self.monodromy_alpha.clone())
    }

    pub fn euler_characteristic(&self) -> i64 {
        (2 - 2 * self.fiber_genus as i64) * self.base.euler()
    }
}

/// The bundle with monodromy `phi` along `α` and `a b` along `β`.
pub fn bundle_r() -> SurfaceBundle {
    SurfaceBundle::new(
        TwistExpr::gens(&[(Generator::Phi, 1)]),
        TwistExpr::gens(&[(Generator::A, 1), (Generator::B, 1)]),
        &HashMap::new(),
    )
    .expect("built-in monodromies are valid")
}

fn fiber_names() -> Vec<String> {
    surface().alphabet().names().to_vec()
}

// α x α^-1 φ(x)^-1 for each fiber generator x; `base` is the index of α.
fn monodromy_relators(base: usize, m: &MappingClass) -> Vec<Word> {
    let a = Word::generator(base);
    (0..4)
        .map(|x| &a.conjugate(&Word::generator(x)) * &m.apply(&Word::generator(x)).inverse())
        .collect()
}

/// `⟨x1, y1, x2, y2, alpha, beta | [x1,y1][x2,y2], α x α^-1 = φα(x), β x β^-1 = φβ(x)⟩`.
pub fn bundle_presentation(b: &SurfaceBundle) -> Result<GroupPresentation, BundleError> {
    if b.base != BaseSurface::PUNCTURED_TORUS {
        return Err(BundleError::UnsupportedBase);
    }
    let mut gens = fiber_names();
    gens.extend(["alpha".to_string(), "beta".to_string()]);
    let mut rels = vec![surface().relator().clone()];
    rels.extend(monodromy_relators(4, &b.alpha));
    rels.extend(monodromy_relators(5, &b.beta));
    Ok(GroupPresentation::new(gens, rels).expect("generators are distinct"))
}

/// `H1` of the bundle from homology alone: `Z^2 ⊕ coker[I − Mα | I − Mβ]`.
pub fn bundle_h1_from_matrices(b: &SurfaceBundle) -> FPAbelianGroup {
    let block = |m: &MappingClass| {
        let h = m.h1_matrix();
        IntMatrix::identity(4).sub(&IntMatrix::from_i64(h))
    };
    FPAbelianGroup::cokernel(&block(&b.alpha).hcat(&block(&b.beta))).direct_sum(&FPAbelianGroup::free(2))
}

/// Surgery on the torus `fiber_curve × direction`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LuttingerDatum {
    pub fiber_curve: CurveName,
    pub direction: BaseDirection,
    pub meridian: Option<PiExpr>,
    pub coefficient: i64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Section {
    pub name: String,
    pub fiber_intersection: i64,
}

/// Words used for `α'_∂, β'_∂` (filling pushoffs) and `α'', β''` (meridian
/// pushoffs), over fiber curves and `alpha'`, `beta'`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pushoffs {
    pub alpha_boundary: PiExpr,
    pub beta_boundary: PiExpr,
    pub alpha_double: PiExpr,
    pub beta_double: PiExpr,
}

impl Default for Pushoffs {
    fn default() -> Self {
        let a = Expr::Atom(PiAtom::Base(BaseDirection::Alpha, 1));
        let b = Expr::Atom(PiAtom::Base(BaseDirection::Beta, 1));
        Pushoffs {
            alpha_boundary: a.clone(),
            beta_boundary: b.clone(),
            alpha_double: a,
            beta_double: b,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurgeredBundle {
    pub base_bundle: SurfaceBundle,
    pub surgeries: Vec<LuttingerDatum>,
    pub sections: Vec<Section>,
    pub pushoffs: Pushoffs,
}

const ALPHA_PRIME: usize = 4;
const BETA_PRIME: usize = 5;

impl SurgeredBundle {
    /// Validates each surgery: coefficient `+1`, torus invariant under the
    /// monodromy of its direction, null-homologous meridian, disjoint tori.
    pub fn new(
        base_bundle: SurfaceBundle,
        surgeries: Vec<LuttingerDatum>,
        sections: Vec<Section>,
        pushoffs: Pushoffs,
    ) -> Result<Self, BundleError> {
        let s = SurgeredBundle {
            base_bundle,
            surgeries,
            sections,
            pushoffs,
        };
        for p in [
            &s.pushoffs.alpha_boundary,
            &s.pushoffs.beta_boundary,
            &s.pushoffs.alpha_double,
            &s.pushoffs.beta_double,
        ] {
            let mut bad = false;
            p.visit_atoms(&mut |a| bad |= matches!(a, PiAtom::Base(_, 2)));
            if bad {
                return Err(BundleError::RecursivePushoff(p.to_string()));
            }
        }
        let g = surface();
        for (i, t) in s.surgeries.iter().enumerate() {
            if t.coefficient != 1 {
                return Err(BundleError::UnsupportedSlope(t.coefficient));
            }
            let c = t.fiber_curve.word();
            let image = s.base_bundle.monodromy(t.direction).apply(&c);
            if g.conjugacy_witness(&image, &c, DEFAULT_BOUND).is_none() {
                return Err(BundleError::TorusNotInvariant(
                    t.fiber_curve.name().into(),
                    t.direction.name().into(),
                ));
            }
            if let Some(m) = &t.meridian {
                let w = s.complement_word(m);
                if w.abelianization(8).iter().any(|&e| e != 0) {
                    return Err(BundleError::MeridianNotNullHomologous(m.to_string()));
                }
            }
            for u in &s.surgeries[..i] {
                if u.direction == t.direction {
                    return Err(BundleError::DuplicateDirection(t.direction.name().into()));
                }
                if crate::mcg::intersection(u.fiber_curve.homology(), t.fiber_curve.homology()) != 0 {
                    return Err(BundleError::ToriIntersect(
                        u.fiber_curve.name().into(),
                        t.fiber_curve.name().into(),
                    ));
                }
            }
        }
        Ok(s)
    }

    /// Word over `x1, y1, x2, y2, alpha', beta'`; unprimed base loops are read
    /// as their primed lifts and double primes through [`Pushoffs`].
    pub fn complement_word(&self, e: &PiExpr) -> Word {
        e.eval(&Free, &mut |a: &PiAtom| -> Result<Word, ()> {
            Ok(match a {
                PiAtom::Curve(c) => c.word(),
                PiAtom::Base(BaseDirection::Alpha, 2) => self.complement_word(&self.pushoffs.alpha_double),
                PiAtom::Base(BaseDirection::Beta, 2) => self.complement_word(&self.pushoffs.beta_double),
                PiAtom::Base(BaseDirection::Alpha, _) => Word::generator(ALPHA_PRIME),
                PiAtom::Base(BaseDirection::Beta, _) => Word::generator(BETA_PRIME),
            })
        })
        .expect("atoms always evaluate")
    }

    pub fn euler_characteristic(&self) -> i64 {
        // removing and regluing T²×D² changes χ by χ(T²×D²) − χ(T²×D²) = 0
        self.base_bundle.euler_characteristic()
    }
}

fn meridian_name(d: BaseDirection) -> String {
    format!("mu_{}", d.name())
}

/// Generators `x1, y1, x2, y2, alpha', beta'` and one `mu_*` per surgery.
pub fn surgery_presentation(s: &SurgeredBundle) -> Result<GroupPresentation, BundleError> {
    let base = bundle_presentation(&s.base_bundle)?;
    let mut gens = fiber_names();
    gens.extend(["alpha'".to_string(), "beta'".to_string()]);
    let mut rels = base.relators().to_vec();
    for (k, t) in s.surgeries.iter().enumerate() {
        let m = t
            .meridian
            .as_ref()
            .ok_or_else(|| BundleError::MissingMeridian(format!("{} x {}", t.fiber_curve.name(), t.direction.name())))?;
        let mu = Word::generator(6 + k);
        gens.push(meridian_name(t.direction));
        rels.push(&mu.inverse() * &s.complement_word(m));
        let push = match t.direction {
            BaseDirection::Alpha => &s.pushoffs.alpha_boundary,
            BaseDirection::Beta => &s.pushoffs.beta_boundary,
        };
        rels.push(&mu * &s.complement_word(push).pow(t.coefficient));
    }
    Ok(GroupPresentation::new(gens, rels).expect("generators are distinct"))
}

/// The same presentation with every meridian relator replaced by `μ = 1`.
pub fn surgery_presentation_trivial_meridians(s: &SurgeredBundle) -> Result<GroupPresentation, BundleError> {
    let p = surgery_presentation(s)?;
    let n_base = 1 + 8;
    let rels = p
        .relators()
        .iter()
        .enumerate()
        .map(|(i, r)| {
            if i >= n_base && (i - n_base) % 2 == 0 {
                let mu = 6 + (i - n_base) / 2;
                Word::from_letters([Letter::new(mu, false)])
            } else {
                r.clone()
            }
        })
        .collect();
    Ok(GroupPresentation::new(p.generators().to_vec(), rels).expect("same generators"))
}

/// `±(2g − 2)`: the canonical class on a fiber, and `c1` of the two spin-c
/// structures of the fibered 3-manifold paired with the fiber.
pub fn canonical_fiber_evaluation(fiber_genus: usize) -> Result<(i64, i64), BundleError> {
    if fiber_genus < 2 {
        return Err(BundleError::GenusTooSmall(fiber_genus));
    }
    let k = 2 * fiber_genus as i64 - 2;
    Ok((k, -k))
}

/// Homology of the surgered bundle, from the surgery presentation and `χ`.
pub fn v_report(s: &SurgeredBundle) -> Result<ManifoldReport, BundleError> {
    let h1 = abelianization(&surgery_presentation(s)?);
    let euler = s.euler_characteristic();
    let boundary_h1 = mapping_torus_h1(&IntMatrix::from_i64(s.base_bundle.boundary_monodromy().h1_matrix()))
        .expect("square");
    let mut r = ManifoldReport::new("V", euler, vec![1, 0, 0, 0, 0], h1.clone());
    r.boundary = Some(Boundary {
        description: format!("mapping torus of {}", s.base_bundle.boundary_monodromy_expr()),
        h1: boundary_h1,
    });
    r.derivation.push(format!("H1 = {h1} from the surgery presentation"));
    r.derivation.push(format!("chi = chi(F) chi(base) = {euler}, unchanged by torus surgery"));
    r.assume_all([Assumption::PushoffIdentification, Assumption::MeridianExpressions]);
    if h1.is_trivial() {
        // H^1 = 0, H3 = H^1(V, dV) = 0 and H1(V, dV) = 0 since dV is connected
        let b2 = euler - 1;
        if b2 >= 0 {
            r.betti = vec![1, 0, b2 as u64, 0, 0];
            r.h2 = Some(FPAbelianGroup::free(b2 as usize));
            r.derivation.push("H3 = H^1(V, dV) = 0 and H4 = 0 by duality with connected boundary".into());
            r.derivation.push(format!("b2 = chi - 1 = {b2}; H2 torsion-free since H1(V, dV) = 0"));
            r.assume(Assumption::Duality);
        }
        if b2 == 1 {
            // the fiber generates H2 (it is dual to a section) and has square zero
            r.signature = Some(0);
            r.spin = Some(true);
            r.derivation.push("w2 evaluates on the generator F as F.F = 0 mod 2, so V is spin".into());
        }
    }
    Ok(r)
}

/// Whether each section meets the fiber once, and so generates `H2(V, ∂V) ≅ Z`
/// dually to the fiber.
pub fn sections_generate_relative_h2(s: &SurgeredBundle) -> Vec<(String, bool)> {
    s.sections
        .iter()
        .map(|x| (x.name.clone(), x.fiber_intersection.abs() == 1))
        .collect()
}

/// `V`: `bundle_r` with `+1` surgeries on `c × α` (meridian `[b, β'']`) and
/// `e × β` (meridian `[z, α'']`), and two sections meeting the fiber once.
pub fn manifold_v() -> SurgeredBundle {
    manifold_v_with(Pushoffs::default())
}

pub fn manifold_v_with(pushoffs: Pushoffs) -> SurgeredBundle {
    let curve = |c| Expr::Atom(PiAtom::Curve(c));
    let base2 = |d| Expr::Atom(PiAtom::Base(d, 2));
    SurgeredBundle::new(
        bundle_r(),
        vec![
            LuttingerDatum {
                fiber_curve: CurveName::C,
                direction: BaseDirection::Alpha,
                meridian: Some(Expr::comm(curve(CurveName::B), base2(BaseDirection::Beta))),
                coefficient: 1,
            },
            LuttingerDatum {
                fiber_curve: CurveName::E,
                direction: BaseDirection::Beta,
                meridian: Some(Expr::comm(curve(CurveName::Z), base2(BaseDirection::Alpha))),
                coefficient: 1,
            },
        ],
        vec![
            Section {
                name: "Gamma".into(),
                fiber_intersection: 1,
            },
            Section {
                name: "Gamma'".into(),
                fiber_intersection: 1,
            },
        ],
        pushoffs,
    )
    .expect("built-in surgery data is valid")
}

/// Twist word `a b d^-1 e^-1`.
pub fn square_knot_monodromy() -> TwistExpr {
    TwistExpr::gens(&[(Generator::A, 1), (Generator::B, 1), (Generator::D, -1), (Generator::E, -1)])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homcalc::quotient_presentation;
    use crate::mcg::{mc_equal, McEquality};

    #[test]
    fn trivial_bundle() {
        let id = TwistExpr::identity();
        let b = SurfaceBundle::new(id.clone(), id.clone(), &HashMap::new()).unwrap();
        assert_eq!(abelianization(&bundle_presentation(&b).unwrap()), FPAbelianGroup::free(6));
        let closed = SurfaceBundle::with_base(2, BaseSurface::TORUS, id.clone(), id, &HashMap::new()).unwrap();
        assert_eq!(closed.euler_characteristic(), 0);
        assert_eq!(bundle_presentation(&closed), Err(BundleError::UnsupportedBase));
    }

    #[test]
    fn bundle_r_homology() {
        let r = bundle_r();
        assert_eq!(r.euler_characteristic(), 2);
        let h = abelianization(&bundle_presentation(&r).unwrap());
        assert_eq!(h, FPAbelianGroup::free(2));
        assert_eq!(h, bundle_h1_from_matrices(&r));
    }

    #[test]
    fn partial_monodromy() {
        let b = SurfaceBundle::new(TwistExpr::identity(), TwistExpr::gens(&[(Generator::A, 1), (Generator::B, 1)]), &HashMap::new())
            .unwrap();
        let h = abelianization(&bundle_presentation(&b).unwrap());
        assert_eq!(h, bundle_h1_from_matrices(&b));
        // I − M_ab has rank 2 on the first handle, so two fiber classes survive
        assert_eq!(h, FPAbelianGroup::free(4));
    }

    #[test]
    fn boundary_monodromy_is_square_knot() {
        let r = bundle_r();
        let target = square_knot_monodromy().mapping_class_closed().unwrap();
        assert!(matches!(mc_equal(&r.boundary_monodromy(), &target, DEFAULT_BOUND), McEquality::Equal(_)));
    }

    #[test]
    fn v_homology() {
        let v = manifold_v();
        let p = surgery_presentation(&v).unwrap();
        assert!(abelianization(&p).is_trivial());
        assert_eq!(v.euler_characteristic(), 2);
        let q = quotient_presentation(&p, &["x1", "y1", "x2", "y2"]).unwrap();
        assert!(q.is_trivial());
        assert_eq!(
            abelianization(&surgery_presentation_trivial_meridians(&v).unwrap()),
            abelianization(&p)
        );
    }

    #[test]
    fn no_surgeries_reduces_to_bundle() {
        let v = SurgeredBundle::new(bundle_r(), vec![], vec![], Pushoffs::default()).unwrap();
        let p = surgery_presentation(&v).unwrap();
        let b = bundle_presentation(&bundle_r()).unwrap();
        assert_eq!(p.relators(), b.relators());
        assert_eq!(p.generators().len(), b.generators().len());
    }

    #[test]
    fn report() {
        let r = v_report(&manifold_v()).unwrap();
        assert_eq!((r.euler, r.h1.is_trivial(), r.spin), (2, true, Some(true)));
        assert_eq!(r.h2, Some(FPAbelianGroup::free(1)));
        assert_eq!(r.betti, vec![1, 0, 1, 0, 0]);
        assert_eq!(r.boundary.as_ref().unwrap().h1, FPAbelianGroup::free(1));
        assert!(r.assumptions().contains(&Assumption::PushoffIdentification));
        assert!(sections_generate_relative_h2(&manifold_v()).iter().all(|(_, ok)| *ok));
    }

    #[test]
    fn pushoff_changes_do_not_change_homology() {
        let fiber_comm = Expr::comm(Expr::Atom(PiAtom::Curve(CurveName::X1)), Expr::Atom(PiAtom::Curve(CurveName::Y2)));
        let a1 = Expr::Atom(PiAtom::Base(BaseDirection::Alpha, 1));
        let b1 = Expr::Atom(PiAtom::Base(BaseDirection::Beta, 1));
        let p = Pushoffs {
            alpha_boundary: Expr::product(vec![a1.clone(), fiber_comm.clone()]),
            beta_boundary: Expr::product(vec![fiber_comm.clone(), b1.clone()]),
            alpha_double: Expr::product(vec![a1, fiber_comm.clone()]),
            beta_double: Expr::product(vec![b1, fiber_comm]),
        };
        let v = manifold_v_with(p);
        assert!(abelianization(&surgery_presentation(&v).unwrap()).is_trivial());
    }

    #[test]
    fn validation() {
        let r = bundle_r();
        let bad_torus = LuttingerDatum {
            fiber_curve: CurveName::A,
            direction: BaseDirection::Alpha,
            meridian: None,
            coefficient: 1,
        };
        assert!(matches!(
            SurgeredBundle::new(r.clone(), vec![bad_torus], vec![], Pushoffs::default()),
            Err(BundleError::TorusNotInvariant(..))
        ));
        let no_meridian = LuttingerDatum {
            fiber_curve: CurveName::E,
            direction: BaseDirection::Beta,
            meridian: None,
            coefficient: 1,
        };
        let s = SurgeredBundle::new(r.clone(), vec![no_meridian.clone()], vec![], Pushoffs::default()).unwrap();
        assert!(matches!(surgery_presentation(&s), Err(BundleError::MissingMeridian(_))));
        let slope2 = LuttingerDatum { coefficient: 2, ..no_meridian.clone() };
        assert_eq!(
            SurgeredBundle::new(r.clone(), vec![slope2], vec![], Pushoffs::default()),
            Err(BundleError::UnsupportedSlope(2))
        );
        let homologous = LuttingerDatum {
            meridian: Some(Expr::Atom(PiAtom::Curve(CurveName::Z))),
            ..no_meridian
        };
        assert!(matches!(
            SurgeredBundle::new(r, vec![homologous], vec![], Pushoffs::default()),
            Err(BundleError::MeridianNotNullHomologous(_))
        ));
    }

    #[test]
    fn canonical_class() {
        assert_eq!(canonical_fiber_evaluation(2), Ok((2, -2)));
        assert_eq!(canonical_fiber_evaluation(3), Ok((4, -4)));
        assert!(canonical_fiber_evaluation(1).is_err());
    }

    #[test]
    fn pi_atoms() {
        assert_eq!(PiAtom::parse("alpha''"), Some(PiAtom::Base(BaseDirection::Alpha, 2)));
        assert_eq!(PiAtom::parse("z"), Some(PiAtom::Curve(CurveName::Z)));
        assert_eq!(PiAtom::parse("beta'''"), None);
        assert_eq!(PiAtom::Base(BaseDirection::Beta, 1).to_string(), "beta'");
    }
}

//! Seifert-matrix invariants: Alexander polynomial, determinant, signature,
//! Arf invariant.

use std::fmt;

use num_traits::{One, Signed, ToPrimitive};
use thiserror::Error;

use crate::forms::{signature, BilinearForm, Ring};
use crate::homcalc::IntMatrix;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum KnotError {
    #[error("invalid Seifert matrix: {0}")]
    InvalidSeifert(String),
}

/// Integer Laurent polynomial `Σ c_k t^(min_exp + k)`, trimmed of zero ends.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    min_exp: i64,
    coeffs: Vec<i64>,
}

impl LaurentPoly {
    pub fn new(min_exp: i64, coeffs: Vec<i64>) -> Self {
        let mut p = LaurentPoly { min_exp, coeffs };
        p.trim();
        p
    }

    pub fn constant(c: i64) -> Self {
        Self::new(0, vec![c])
    }

    fn trim(&mut self) {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
        let lead = self.coeffs.iter().take_while(|&&c| c == 0).count();
        self.coeffs.drain(..lead);
        self.min_exp = if self.coeffs.is_empty() { 0 } else { self.min_exp + lead as i64 };
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn min_exp(&self) -> i64 {
        self.min_exp
    }

    pub fn max_exp(&self) -> i64 {
        self.min_exp + self.coeffs.len() as i64 - 1
    }

    /// Coefficients from lowest to highest exponent.
    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn coeff(&self, exp: i64) -> i64 {
        let k = exp - self.min_exp;
        if k < 0 {
            0
        } else {
            self.coeffs.get(k as usize).copied().unwrap_or(0)
        }
    }

    /// Difference between the top and bottom exponents.
    pub fn span(&self) -> i64 {
        if self.is_zero() {
            0
        } else {
            self.max_exp() - self.min_exp
        }
    }

    pub fn leading(&self) -> i64 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn mul(&self, other: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() || other.is_zero() {
            return Self::new(0, vec![]);
        }
        let mut c = vec![0; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        Self::new(self.min_exp + other.min_exp, c)
    }

    pub fn neg(&self) -> LaurentPoly {
        Self::new(self.min_exp, self.coeffs.iter().map(|c| -c).collect())
    }

    /// `t ↦ t^-1`.
    pub fn mirror(&self) -> LaurentPoly {
        Self::new(-self.max_exp(), self.coeffs.iter().rev().copied().collect())
    }

    pub fn is_symmetric(&self) -> bool {
        *self == self.mirror()
    }

    /// Value at `t = 1`.
    pub fn at_one(&self) -> i64 {
        self.coeffs.iter().sum()
    }

    /// Value at `t = -1`.
    pub fn at_minus_one(&self) -> i64 {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| if (self.min_exp + k as i64).rem_euclid(2) == 0 { *c } else { -c })
            .sum()
    }

    /// Shifted so the exponents are centred on zero and the top coefficient is positive.
    pub fn normalized(&self) -> LaurentPoly {
        if self.is_zero() {
            return self.clone();
        }
        let shifted = LaurentPoly {
            min_exp: -self.span() / 2,
            coeffs: self.coeffs.clone(),
        };
        if shifted.leading() < 0 {
            shifted.neg()
        } else {
            shifted
        }
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let e = self.min_exp + k as i64;
            let sign = if c < 0 { "-" } else { "+" };
            if first {
                if c < 0 {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            let a = c.abs();
            let var = match e {
                0 => String::new(),
                1 => "t".to_string(),
                _ => format!("t^{e}"),
            };
            if var.is_empty() {
                write!(f, "{a}")?;
            } else if a == 1 {
                f.write_str(&var)?;
            } else {
                write!(f, "{a}{var}")?;
            }
            first = false;
        }
        Ok(())
    }
}

/// Square matrix `V` of even size with `det(V − Vᵀ) = ±1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SeifertMatrix {
    v: IntMatrix,
}

impl SeifertMatrix {
    pub fn new(v: IntMatrix) -> Result<Self, KnotError> {
        if !v.is_square() {
            return Err(KnotError::InvalidSeifert("not square".into()));
        }
        if !v.rows().is_multiple_of(2) {
            return Err(KnotError::InvalidSeifert("odd size".into()));
        }
        let skew = v.sub(&v.transpose());
        if !skew.det().expect("square").abs().is_one() {
            return Err(KnotError::InvalidSeifert("V - V^T is not unimodular".into()));
        }
        Ok(SeifertMatrix { v })
    }

    pub fn from_i64<const N: usize>(rows: [[i64; N]; N]) -> Result<Self, KnotError> {
        Self::new(IntMatrix::from_i64(rows))
    }

    pub fn unknot() -> Self {
        SeifertMatrix { v: IntMatrix::zeros(0, 0) }
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.v
    }

    pub fn genus(&self) -> usize {
        self.v.rows() / 2
    }

    pub fn block_sum(&self, other: &SeifertMatrix) -> SeifertMatrix {
        SeifertMatrix {
            v: self.v.block_sum(&other.v),
        }
    }

    fn entry(&self, i: usize, j: usize) -> i64 {
        self.v.get(i, j).to_i64().expect("Seifert entries fit in i64")
    }
}

type Poly = Vec<i64>;

fn poly_mul(a: &Poly, b: &Poly) -> Poly {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut c = vec![0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            c[i + j] += x * y;
        }
    }
    c
}

fn poly_add(a: &Poly, b: &Poly, sign: i64) -> Poly {
    let mut c = vec![0; a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        c[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        c[i] += sign * y;
    }
    c
}

// Cofactor expansion along the first row; sizes here are at most a few dozen entries.
fn poly_det(m: &[Vec<Poly>]) -> Poly {
    let n = m.len();
    if n == 0 {
        return vec![1];
    }
    let mut acc: Poly = vec![];
    for j in 0..n {
        if m[0][j].iter().all(|&c| c == 0) {
            continue;
        }
        let minor: Vec<Vec<Poly>> = m[1..]
            .iter()
            .map(|row| row.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, p)| p.clone()).collect())
            .collect();
        let term = poly_mul(&m[0][j], &poly_det(&minor));
        acc = poly_add(&acc, &term, if j % 2 == 0 { 1 } else { -1 });
    }
    acc
}

/// `det(V − t Vᵀ)`, normalized symmetric with positive top coefficient.
pub fn alexander(s: &SeifertMatrix) -> LaurentPoly {
    let n = s.v.rows();
    let m: Vec<Vec<Poly>> = (0..n)
        .map(|i| (0..n).map(|j| vec![s.entry(i, j), -s.entry(j, i)]).collect())
        .collect();
    let raw = LaurentPoly::new(0, poly_det(&m));
    let p = raw.normalized();
    debug_assert!(p.is_symmetric(), "Alexander polynomial is symmetric");
    debug_assert_eq!(p.at_one().abs(), 1);
    p
}

/// `q(x) = xᵀ V x mod 2` on all of `(Z/2)^2g`; the Arf invariant is the value
/// taken by the majority of vectors.
pub fn arf(s: &SeifertMatrix) -> u8 {
    let n = s.v.rows();
    let entries: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| s.entry(i, j).rem_euclid(2)).collect()).collect();
    let mut ones: u64 = 0;
    for x in 0u64..(1u64 << n) {
        let mut q = 0;
        for i in 0..n {
            if x >> i & 1 == 0 {
                continue;
            }
            for (j, e) in entries[i].iter().enumerate() {
                if x >> j & 1 == 1 {
                    q ^= e;
                }
            }
        }
        ones += q as u64;
    }
    u8::from(2 * ones > (1u64 << n))
}

/// Arf invariant from the Alexander polynomial: `0` iff `Δ(−1) ≡ ±1 (mod 8)`.
pub fn arf_from_alexander(delta: &LaurentPoly) -> u8 {
    u8::from(!matches!(delta.at_minus_one().rem_euclid(8), 1 | 7))
}

/// `(|Δ(−1)|, σ(V + Vᵀ))`.
pub fn determinant_and_signature(s: &SeifertMatrix) -> (i64, i64) {
    let det = alexander(s).at_minus_one().abs();
    let sym = s.v.add(&s.v.transpose());
    let form = BilinearForm::new(Ring::Z, sym).expect("V + Vᵀ is symmetric");
    (det, signature(&form).expect("integral form"))
}

/// Necessary condition for fiberedness: monic `Δ` of span `2g`.
pub fn fibered_necessary(s: &SeifertMatrix) -> bool {
    let d = alexander(s);
    d.leading().abs() == 1 && d.span() == 2 * s.genus() as i64
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KnotRecord {
    pub name: String,
    pub seifert: SeifertMatrix,
    pub four_ball_genus: u32,
    pub strongly_neg_amphichiral: bool,
}

impl KnotRecord {
    pub fn genus(&self) -> usize {
        self.seifert.genus()
    }
}

/// Strongly negatively amphichiral, nontrivial Arf invariant, four-ball genus one.
pub fn slice_family_eligible(k: &KnotRecord) -> bool {
    k.strongly_neg_amphichiral && arf(&k.seifert) == 1 && k.four_ball_genus == 1
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fig8() -> SeifertMatrix {
        SeifertMatrix::from_i64([[1, 1], [0, -1]]).unwrap()
    }

    fn trefoil() -> SeifertMatrix {
        SeifertMatrix::from_i64([[-1, 1], [0, -1]]).unwrap()
    }

    fn mirror_trefoil() -> SeifertMatrix {
        SeifertMatrix::from_i64([[1, -1], [0, 1]]).unwrap()
    }

    #[test]
    fn alexander_examples() {
        assert_eq!(alexander(&SeifertMatrix::unknot()), LaurentPoly::constant(1));
        assert_eq!(alexander(&fig8()).to_string(), "t - 3 + t^-1");
        assert_eq!(alexander(&trefoil()).to_string(), "t - 1 + t^-1");
        let q = trefoil().block_sum(&mirror_trefoil());
        let dq = alexander(&q);
        assert_eq!(dq.to_string(), "t^2 - 2t + 3 - 2t^-1 + t^-2");
        assert_eq!(dq, alexander(&trefoil()).mul(&alexander(&trefoil())));
        assert!(fibered_necessary(&q));
        assert!(!fibered_necessary(&fig8().block_sum(&SeifertMatrix::from_i64([[1, 1], [0, 2]]).unwrap())));
    }

    #[test]
    fn arf_examples() {
        assert_eq!(arf(&SeifertMatrix::unknot()), 0);
        assert_eq!(arf(&fig8()), 1);
        assert_eq!(arf(&trefoil()), 1);
        assert_eq!(arf(&trefoil().block_sum(&mirror_trefoil())), 0);
        for s in [fig8(), trefoil(), SeifertMatrix::unknot()] {
            assert_eq!(arf(&s), arf_from_alexander(&alexander(&s)));
        }
    }

    #[test]
    fn determinant_signature_examples() {
        assert_eq!(determinant_and_signature(&SeifertMatrix::unknot()), (1, 0));
        assert_eq!(determinant_and_signature(&fig8()), (5, 0));
        assert_eq!(determinant_and_signature(&trefoil().block_sum(&mirror_trefoil())), (9, 0));
        assert_eq!(determinant_and_signature(&trefoil()), (3, -2));
    }

    #[test]
    fn invalid_seifert() {
        assert!(SeifertMatrix::from_i64([[1, 0], [0, 1]]).is_err());
        assert!(SeifertMatrix::from_i64([[1]]).is_err());
    }

    #[test]
    fn eligibility() {
        let k = |s: SeifertMatrix, sna: bool| KnotRecord {
            name: "k".into(),
            seifert: s,
            four_ball_genus: 1,
            strongly_neg_amphichiral: sna,
        };
        assert!(slice_family_eligible(&k(fig8(), true)));
        assert!(!slice_family_eligible(&k(trefoil(), false)));
        let mut u = k(SeifertMatrix::unknot(), true);
        u.four_ball_genus = 0;
        assert!(!slice_family_eligible(&u));
    }

    #[test]
    fn laurent_display() {
        assert_eq!(LaurentPoly::new(-1, vec![-2, 0, 5]).to_string(), "5t - 2t^-1");
        assert_eq!(LaurentPoly::new(0, vec![]).to_string(), "0");
        assert_eq!(LaurentPoly::new(3, vec![0, 1]).min_exp(), 4);
    }
}

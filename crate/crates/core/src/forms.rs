//! Symmetric bilinear forms over `Z` and `Z/2`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::homcalc::IntMatrix;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FormError {
    #[error("matrix is not symmetric")]
    NotSymmetric,
    #[error("form is definite; indefinite classification does not apply")]
    DefiniteForm,
    #[error("form is not unimodular")]
    NotUnimodular,
    #[error("operation needs a form over {0}")]
    WrongRing(Ring),
    #[error("rank {0} exceeds the brute-force limit of {MAX_CONGRUENCE_RANK}")]
    RankTooLarge(usize),
}

pub const MAX_CONGRUENCE_RANK: usize = 6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Ring {
    Z,
    Z2,
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Ring::Z => "Z",
            Ring::Z2 => "Z/2",
        })
    }
}

/// Symmetric square matrix over `Z` or `Z/2` (entries reduced to `0, 1`).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BilinearForm {
    ring: Ring,
    matrix: IntMatrix,
}

impl BilinearForm {
    pub fn new(ring: Ring, matrix: IntMatrix) -> Result<Self, FormError> {
        if !matrix.is_symmetric() {
            return Err(FormError::NotSymmetric);
        }
        let matrix = match ring {
            Ring::Z => matrix,
            Ring::Z2 => {
                let mut m = matrix;
                for i in 0..m.rows() {
                    for j in 0..m.cols() {
                        let v = m.get(i, j).mod_floor(&BigInt::from(2));
                        m.set(i, j, v);
                    }
                }
                m
            }
        };
        Ok(BilinearForm { ring, matrix })
    }

    pub fn integral<const N: usize>(rows: [[i64; N]; N]) -> Result<Self, FormError> {
        Self::new(Ring::Z, IntMatrix::from_i64(rows))
    }

    pub fn diagonal(ring: Ring, entries: &[i64]) -> Self {
        Self::new(ring, IntMatrix::diagonal(entries)).expect("diagonal is symmetric")
    }

    pub fn hyperbolic(ring: Ring) -> Self {
        Self::new(ring, IntMatrix::from_i64([[0, 1], [1, 0]])).expect("symmetric")
    }

    pub fn zero(ring: Ring) -> Self {
        BilinearForm {
            ring,
            matrix: IntMatrix::zeros(0, 0),
        }
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn rank(&self) -> usize {
        self.matrix.rows()
    }

    pub fn direct_sum(&self, other: &BilinearForm) -> BilinearForm {
        assert_eq!(self.ring, other.ring, "direct sum over different rings");
        BilinearForm {
            ring: self.ring,
            matrix: self.matrix.block_sum(&other.matrix),
        }
    }

    /// `Pᵀ M P`.
    pub fn transform(&self, p: &IntMatrix) -> BilinearForm {
        Self::new(self.ring, p.transpose().mul(&self.matrix).mul(p)).expect("congruence keeps symmetry")
    }

    /// Even iff `x·x` is even for every `x`; for a symmetric form this is
    /// decided by the diagonal of any basis.
    pub fn is_even(&self) -> bool {
        (0..self.rank()).all(|i| !self.matrix.get(i, i).bit(0))
    }

    pub fn parity(&self) -> Parity {
        if self.is_even() {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn det(&self) -> BigInt {
        let d = self.matrix.det().expect("square");
        match self.ring {
            Ring::Z => d,
            Ring::Z2 => d.mod_floor(&BigInt::from(2)),
        }
    }

    pub fn is_unimodular(&self) -> bool {
        self.det().abs().is_one()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Parity {
    Even,
    Odd,
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        })
    }
}

/// Inertia of the rationalized form.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Inertia {
    pub positive: usize,
    pub negative: usize,
    pub nullity: usize,
}

impl Inertia {
    pub fn signature(&self) -> i64 {
        self.positive as i64 - self.negative as i64
    }
}

/// Exact congruence diagonalization over `Q`. When every remaining diagonal
/// entry vanishes, an off-diagonal pair `(i, j)` is folded in via
/// `e_i ↦ e_i + e_j`, which puts `2 a_ij` on the diagonal.
pub fn inertia(f: &BilinearForm) -> Result<Inertia, FormError> {
    if f.ring != Ring::Z {
        return Err(FormError::WrongRing(Ring::Z));
    }
    let n = f.rank();
    let mut a: Vec<Vec<BigRational>> = f
        .matrix
        .to_rows()
        .into_iter()
        .map(|r| r.into_iter().map(BigRational::from_integer).collect())
        .collect();
    let mut out = Inertia {
        positive: 0,
        negative: 0,
        nullity: 0,
    };
    for k in 0..n {
        let diag = (k..n).find(|&i| !a[i][i].is_zero());
        let pivot = match diag {
            Some(i) => i,
            None => match (k..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).find(|&(i, j)| !a[i][j].is_zero()) {
                Some((i, j)) => {
                    // e_i += e_j
                    for c in 0..n {
                        let v = &a[i][c] + &a[j][c];
                        a[i][c] = v;
                    }
                    for r in 0..n {
                        let v = &a[r][i] + &a[r][j];
                        a[r][i] = v;
                    }
                    i
                }
                None => {
                    out.nullity = n - k;
                    return Ok(out);
                }
            },
        };
        a.swap(k, pivot);
        for row in a.iter_mut() {
            row.swap(k, pivot);
        }
        let p = a[k][k].clone();
        for i in k + 1..n {
            let factor = &a[i][k] / &p;
            if factor.is_zero() {
                continue;
            }
            for c in 0..n {
                let v = &a[i][c] - &factor * &a[k][c];
                a[i][c] = v;
            }
            for r in 0..n {
                let v = &a[r][i] - &factor * &a[r][k];
                a[r][i] = v;
            }
        }
        if p.is_positive() {
            out.positive += 1;
        } else {
            out.negative += 1;
        }
    }
    Ok(out)
}

pub fn signature(f: &BilinearForm) -> Result<i64, FormError> {
    Ok(inertia(f)?.signature())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormClass {
    pub rank: usize,
    pub signature: i64,
    pub parity: Parity,
    pub definite: bool,
    pub standard_name: String,
}

fn repeat_name(count: usize, name: &str) -> Vec<String> {
    match count {
        0 => vec![],
        1 => vec![name.to_string()],
        k => vec![format!("{k}{name}")],
    }
}

/// Name of the indefinite unimodular form with these invariants: odd forms are
/// `p⟨1⟩⊕q⟨−1⟩`, even forms are sums of `±E8` and `H`.
pub fn standard_name(rank: usize, signature: i64, parity: Parity) -> String {
    let r = rank as i64;
    match parity {
        Parity::Odd => {
            let p = ((r + signature) / 2) as usize;
            let q = ((r - signature) / 2) as usize;
            let mut parts = repeat_name(p, "⟨1⟩");
            parts.extend(repeat_name(q, "⟨−1⟩"));
            parts.join("⊕")
        }
        Parity::Even => {
            let e8 = (signature.unsigned_abs() / 8) as usize;
            let h = ((r - signature.abs()) / 2) as usize;
            let e8_name = if signature < 0 { "−E8" } else { "E8" };
            let mut parts = vec![e8_name.to_string(); e8];
            parts.extend(vec!["H".to_string(); h]);
            parts.join("⊕")
        }
    }
}

/// Indefinite unimodular forms are classified by rank, signature and parity.
pub fn classify_indefinite(f: &BilinearForm) -> Result<FormClass, FormError> {
    let inertia = inertia(f)?;
    if !f.is_unimodular() {
        return Err(FormError::NotUnimodular);
    }
    if inertia.positive == 0 || inertia.negative == 0 {
        return Err(FormError::DefiniteForm);
    }
    let (rank, signature, parity) = (f.rank(), inertia.signature(), f.parity());
    Ok(FormClass {
        rank,
        signature,
        parity,
        definite: false,
        standard_name: standard_name(rank, signature, parity),
    })
}

/// `[[0,1],[1,n]]`.
pub fn parametric_block(n: i64) -> BilinearForm {
    BilinearForm::integral([[0, 1], [1, n]]).expect("symmetric")
}

/// Unimodular `P` with `Pᵀ [[0,1],[1,n]] P = [[0,1],[1,n mod 2]]`, via `e2 ↦ e2 − k e1`
/// where `n = 2k + (n mod 2)`.
pub fn parametric_reduction(n: i64) -> IntMatrix {
    let k = n.div_euclid(2);
    IntMatrix::from_i64([[1, -k], [0, 1]])
}

/// Classifies `[[0,1],[1,n]] ⊕ tail` for every `n` of the given parity, by
/// reducing to the representative `n ∈ {0, 1}`.
pub fn classify_parametric(n_parity: u8, tail: &BilinearForm) -> Result<FormClass, FormError> {
    classify_indefinite(&parametric_block(i64::from(n_parity % 2)).direct_sum(tail))
}

/// Componentwise sum of `(b2, σ)` pairs.
pub fn novikov_sum(parts: &[(i64, i64)]) -> (i64, i64) {
    parts.iter().fold((0, 0), |(b, s), &(b2, sig)| (b + b2, s + sig))
}

fn bitmatrix(f: &BilinearForm) -> Vec<u8> {
    (0..f.rank())
        .map(|i| (0..f.rank()).fold(0u8, |acc, j| acc | (u8::from(f.matrix.get(i, j).bit(0)) << j)))
        .collect()
}

fn pair(m: &[u8], x: u8, y: u8) -> u8 {
    let mut acc = 0u8;
    for (i, row) in m.iter().enumerate() {
        if x >> i & 1 == 1 {
            acc ^= (row & y).count_ones() as u8 & 1;
        }
    }
    acc
}

/// Whether `Pᵀ F P = G` for some invertible `P` over `Z/2`. Columns of `P` are
/// chosen one at a time, pruning on the pairings fixed so far.
pub fn congruent_mod2(f: &BilinearForm, g: &BilinearForm) -> Result<bool, FormError> {
    for x in [f, g] {
        if x.ring != Ring::Z2 {
            return Err(FormError::WrongRing(Ring::Z2));
        }
        if x.rank() > MAX_CONGRUENCE_RANK {
            return Err(FormError::RankTooLarge(x.rank()));
        }
    }
    if f.rank() != g.rank() {
        return Ok(false);
    }
    let (fm, gm) = (bitmatrix(f), bitmatrix(g));
    let n = f.rank();
    let mut cols = Vec::with_capacity(n);
    Ok(search(&fm, &gm, n, &mut cols, &mut Vec::new()))
}

// `basis` is an echelon basis of the span of `cols`, kept for independence tests.
fn search(fm: &[u8], gm: &[u8], n: usize, cols: &mut Vec<u8>, basis: &mut Vec<u8>) -> bool {
    let k = cols.len();
    if k == n {
        return true;
    }
    for v in 1..(1u16 << n) as u8 {
        let ok = (0..=k).all(|j| {
            let other = if j == k { v } else { cols[j] };
            pair(fm, v, other) == (gm[k] >> j & 1)
        });
        if !ok {
            continue;
        }
        let mut r = v;
        for &b in basis.iter() {
            r = r.min(r ^ b);
        }
        if r == 0 {
            continue;
        }
        cols.push(v);
        basis.push(r);
        basis.sort_unstable_by(|a, b| b.cmp(a));
        if search(fm, gm, n, cols, basis) {
            return true;
        }
        cols.pop();
        let pos = basis.iter().position(|&b| b == r).expect("just inserted");
        basis.remove(pos);
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(rows: &[Vec<i64>]) -> BilinearForm {
        BilinearForm::new(Ring::Z, IntMatrix::from_rows(rows).unwrap()).unwrap()
    }

    #[test]
    fn signature_examples() {
        let a = BilinearForm::diagonal(Ring::Z, &[1, -1, -1, -1, -1, -1]);
        assert_eq!(signature(&a).unwrap(), -4);
        assert_eq!(signature(&BilinearForm::hyperbolic(Ring::Z)).unwrap(), 0);
        for n in -2..=2 {
            assert_eq!(signature(&parametric_block(n)).unwrap(), 0);
        }
    }

    #[test]
    fn degenerate_inertia() {
        let f = z(&[vec![0, 0], vec![0, 0]]);
        assert_eq!(inertia(&f).unwrap().nullity, 2);
        let f = z(&[vec![1, 1], vec![1, 1]]);
        let i = inertia(&f).unwrap();
        assert_eq!((i.positive, i.negative, i.nullity), (1, 0, 1));
    }

    #[test]
    fn classification_examples() {
        let tail = BilinearForm::diagonal(Ring::Z, &[-1, -1, -1, -1]);
        let c = classify_indefinite(&parametric_block(1).direct_sum(&tail)).unwrap();
        assert_eq!((c.rank, c.signature, c.parity), (6, -4, Parity::Odd));
        assert_eq!(c.standard_name, "⟨1⟩⊕5⟨−1⟩");
        let h = classify_indefinite(&BilinearForm::hyperbolic(Ring::Z)).unwrap();
        assert_eq!((h.parity, h.standard_name.as_str()), (Parity::Even, "H"));
        let hh = BilinearForm::hyperbolic(Ring::Z).direct_sum(&BilinearForm::hyperbolic(Ring::Z));
        assert_eq!(classify_indefinite(&hh).unwrap().standard_name, "H⊕H");
        let o = classify_indefinite(&BilinearForm::diagonal(Ring::Z, &[1, -1])).unwrap();
        assert_eq!((o.parity, o.signature, o.standard_name.as_str()), (Parity::Odd, 0, "⟨1⟩⊕⟨−1⟩"));
    }

    #[test]
    fn classification_refusals() {
        let def = BilinearForm::diagonal(Ring::Z, &[1, 1]);
        assert_eq!(classify_indefinite(&def).unwrap_err(), FormError::DefiniteForm);
        let non = BilinearForm::diagonal(Ring::Z, &[2, -1]);
        assert_eq!(classify_indefinite(&non).unwrap_err(), FormError::NotUnimodular);
    }

    #[test]
    fn parametric_case_split() {
        for n in -7..=7 {
            let p = parametric_reduction(n);
            assert_eq!(p.det().unwrap().abs(), BigInt::one());
            assert_eq!(parametric_block(n).transform(&p), parametric_block(n.rem_euclid(2)));
        }
        let tail = BilinearForm::diagonal(Ring::Z, &[-1, -1, -1, -1]);
        for parity in [0, 1] {
            assert_eq!(classify_parametric(parity, &tail).unwrap().standard_name, "⟨1⟩⊕5⟨−1⟩");
        }
    }

    #[test]
    fn novikov() {
        assert_eq!(novikov_sum(&[(1, 0), (5, -4)]), (6, -4));
        assert_eq!(novikov_sum(&[(3, 1)]), (3, 1));
        assert_eq!(novikov_sum(&[(1, 0), (1, 0)]), (2, 0));
        assert_eq!(novikov_sum(&[]), (0, 0));
    }

    #[test]
    fn mod2_congruence() {
        let h = BilinearForm::hyperbolic(Ring::Z2);
        let i2 = BilinearForm::diagonal(Ring::Z2, &[1, 1]);
        assert!(congruent_mod2(&h, &h).unwrap());
        assert!(!congruent_mod2(&i2, &h).unwrap());
        // nondegenerate odd forms over Z/2 are diagonalizable
        let odd = BilinearForm::new(Ring::Z2, IntMatrix::from_i64([[1, 1], [1, 0]])).unwrap();
        assert!(congruent_mod2(&odd, &i2).unwrap());
        let big = BilinearForm::diagonal(Ring::Z2, &[1; 7]);
        assert_eq!(congruent_mod2(&big, &big).unwrap_err(), FormError::RankTooLarge(7));
        let hh = h.direct_sum(&h);
        let i4 = BilinearForm::diagonal(Ring::Z2, &[1, 1, 1, 1]);
        assert!(!congruent_mod2(&hh, &i4).unwrap());
        assert!(congruent_mod2(&i2.direct_sum(&h), &BilinearForm::diagonal(Ring::Z2, &[1, 1, 1, 1])).unwrap());
    }

    #[test]
    fn mod2_reduction() {
        let f = BilinearForm::new(Ring::Z2, IntMatrix::from_i64([[3, -1], [-1, 2]])).unwrap();
        assert_eq!(f.matrix(), &IntMatrix::from_i64([[1, 1], [1, 0]]));
        assert!(BilinearForm::zero(Ring::Z2).is_even());
    }
}

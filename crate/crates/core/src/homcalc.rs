//! Integer linear algebra for homology: Smith normal form, finitely generated
//! abelian groups, abelianized presentations and mapping tori.

use std::collections::HashSet;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::words::{Letter, Word};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HomError {
    #[error("ragged matrix rows")]
    Ragged,
    #[error("duplicate generator `{0}`")]
    DuplicateGenerator(String),
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("relator uses generator index {0} outside the presentation")]
    GeneratorOutOfRange(usize),
    #[error("matrix is not square")]
    NotSquare,
}

/// Dense matrix of arbitrary-precision integers.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    /// From row vectors; an empty list gives a `0 x cols` matrix only via [`IntMatrix::zeros`].
    pub fn from_rows<T: Clone + Into<BigInt>>(rows: &[Vec<T>]) -> Result<Self, HomError> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(HomError::Ragged);
        }
        Ok(IntMatrix {
            rows: rows.len(),
            cols,
            data: rows.iter().flat_map(|r| r.iter().cloned().map(Into::into)).collect(),
        })
    }

    pub fn from_i64<const R: usize, const C: usize>(rows: [[i64; C]; R]) -> Self {
        IntMatrix {
            rows: R,
            cols: C,
            data: rows.iter().flat_map(|r| r.iter().map(|&x| BigInt::from(x))).collect(),
        }
    }

    pub fn diagonal<T: Clone + Into<BigInt>>(entries: &[T]) -> Self {
        let mut m = Self::zeros(entries.len(), entries.len());
        for (i, e) in entries.iter().enumerate() {
            m.set(i, i, e.clone().into());
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut m = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let v = m.get(i, j) + a * other.get(k, j);
                    m.set(i, j, v);
                }
            }
        }
        m
    }

    pub fn add(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        }
    }

    /// Block diagonal sum.
    pub fn block_sum(&self, other: &IntMatrix) -> IntMatrix {
        let mut m = Self::zeros(self.rows + other.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(i, j, self.get(i, j).clone());
            }
        }
        for i in 0..other.rows {
            for j in 0..other.cols {
                m.set(self.rows + i, self.cols + j, other.get(i, j).clone());
            }
        }
        m
    }

    /// Horizontal concatenation.
    pub fn hcat(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.rows, other.rows);
        let mut m = Self::zeros(self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(i, j, self.get(i, j).clone());
            }
            for j in 0..other.cols {
                m.set(i, self.cols + j, other.get(i, j).clone());
            }
        }
        m
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> Result<BigInt, HomError> {
        if !self.is_square() {
            return Err(HomError::NotSquare);
        }
        let n = self.rows;
        if n == 0 {
            return Ok(BigInt::one());
        }
        let mut a = self.to_rows();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                    Some(p) => {
                        a.swap(k, p);
                        sign = -sign;
                    }
                    None => return Ok(BigInt::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    a[i][j] = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                }
            }
            prev = a[k][k].clone();
        }
        Ok(sign * &a[n - 1][n - 1])
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// row[dst] += k * row[src]
    fn add_row(&mut self, dst: usize, src: usize, k: &BigInt) {
        for j in 0..self.cols {
            let v = self.get(dst, j) + k * self.get(src, j);
            self.set(dst, j, v);
        }
    }

    /// col[dst] += k * col[src]
    fn add_col(&mut self, dst: usize, src: usize, k: &BigInt) {
        for i in 0..self.rows {
            let v = self.get(i, dst) + k * self.get(i, src);
            self.set(i, dst, v);
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -self.get(i, j);
            self.set(i, j, v);
        }
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for i in 0..self.rows {
            if i > 0 {
                f.write_str(",")?;
            }
            f.write_str("[")?;
            for j in 0..self.cols {
                if j > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            f.write_str("]")?;
        }
        f.write_str("]")
    }
}

/// `D = U · M · V` with `U`, `V` unimodular and `D` in Smith form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Snf {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
}

impl Snf {
    /// Nonzero diagonal entries, in order.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        (0..self.d.rows.min(self.d.cols))
            .map(|i| self.d.get(i, i).clone())
            .filter(|x| !x.is_zero())
            .collect()
    }
}

/// Smith normal form. The pivot is always the entry of least nonzero absolute
/// value in the active block, ties broken row-major, so the output is a
/// deterministic function of the input.
pub fn smith_normal_form(m: &IntMatrix) -> Snf {
    let (r, c) = (m.rows, m.cols);
    let mut d = m.clone();
    let mut u = IntMatrix::identity(r);
    let mut v = IntMatrix::identity(c);
    let mut t = 0;
    while t < r.min(c) {
        let mut pivot: Option<(usize, usize)> = None;
        for i in t..r {
            for j in t..c {
                let x = d.get(i, j);
                if !x.is_zero() && pivot.is_none_or(|(pi, pj)| x.abs() < d.get(pi, pj).abs()) {
                    pivot = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        d.swap_rows(t, pi);
        u.swap_rows(t, pi);
        d.swap_cols(t, pj);
        v.swap_cols(t, pj);

        let p = d.get(t, t).clone();
        let mut dirty = false;
        for i in t + 1..r {
            let q = -d.get(i, t).div_floor(&p);
            if !q.is_zero() {
                d.add_row(i, t, &q);
                u.add_row(i, t, &q);
            }
            dirty |= !d.get(i, t).is_zero();
        }
        for j in t + 1..c {
            let q = -d.get(t, j).div_floor(&p);
            if !q.is_zero() {
                d.add_col(j, t, &q);
                v.add_col(j, t, &q);
            }
            dirty |= !d.get(t, j).is_zero();
        }
        if dirty {
            // a smaller remainder exists; it becomes the next pivot
            continue;
        }
        let bad_row = (t + 1..r).find(|&i| (t + 1..c).any(|j| !d.get(i, j).is_multiple_of(&p)));
        if let Some(i) = bad_row {
            let one = BigInt::one();
            d.add_row(t, i, &one);
            u.add_row(t, i, &one);
            continue;
        }
        if p.is_negative() {
            d.negate_row(t);
            u.negate_row(t);
        }
        t += 1;
    }
    Snf { u, d, v }
}

/// `Z^free_rank ⊕ Z/d1 ⊕ ... ⊕ Z/dk` with `d1 | d2 | ... | dk`, each `> 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FPAbelianGroup {
    pub free_rank: usize,
    pub torsion: Vec<BigInt>,
}

impl FPAbelianGroup {
    pub fn trivial() -> Self {
        FPAbelianGroup {
            free_rank: 0,
            torsion: Vec::new(),
        }
    }

    pub fn free(rank: usize) -> Self {
        FPAbelianGroup {
            free_rank: rank,
            torsion: Vec::new(),
        }
    }

    pub fn cyclic(order: u64) -> Self {
        if order == 0 {
            return Self::free(1);
        }
        Self::from_relations(&IntMatrix::from_i64([[order as i64]]))
    }

    /// `Z^cols / rowspace(relations)`.
    pub fn from_relations(relations: &IntMatrix) -> Self {
        let snf = smith_normal_form(relations);
        let factors = snf.invariant_factors();
        FPAbelianGroup {
            free_rank: relations.cols - factors.len(),
            torsion: factors.into_iter().filter(|x| !x.is_one()).collect(),
        }
    }

    /// `Z^rows / colspace(m)`: the cokernel of `m` acting on column vectors.
    pub fn cokernel(m: &IntMatrix) -> Self {
        Self::from_relations(&m.transpose())
    }

    pub fn direct_sum(&self, other: &FPAbelianGroup) -> FPAbelianGroup {
        let diag: Vec<BigInt> = self.torsion.iter().chain(&other.torsion).cloned().collect();
        let mut g = Self::from_relations(&IntMatrix::diagonal(&diag));
        g.free_rank = self.free_rank + other.free_rank;
        g
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    pub fn order(&self) -> Option<BigInt> {
        (self.free_rank == 0).then(|| self.torsion.iter().product())
    }
}

impl fmt::Display for FPAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            n => parts.push(format!("Z^{n}")),
        }
        parts.extend(self.torsion.iter().map(|d| format!("Z/{d}")));
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

/// Finite presentation `<generators | relators>`. Unlike an [`crate::words::Alphabet`]
/// the generator list may be empty (the trivial group).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GroupPresentation {
    generators: Vec<String>,
    relators: Vec<Word>,
}

impl GroupPresentation {
    pub fn new(generators: Vec<String>, relators: Vec<Word>) -> Result<Self, HomError> {
        let mut seen = HashSet::new();
        for g in &generators {
            if !seen.insert(g) {
                return Err(HomError::DuplicateGenerator(g.clone()));
            }
        }
        for r in &relators {
            if r.support_rank() > generators.len() {
                return Err(HomError::GeneratorOutOfRange(r.support_rank() - 1));
            }
        }
        Ok(GroupPresentation { generators, relators })
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn index(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g == name)
    }

    /// Relator exponent-sum matrix: one row per relator.
    pub fn relation_matrix(&self) -> IntMatrix {
        let mut m = IntMatrix::zeros(self.relators.len(), self.generators.len());
        for (i, r) in self.relators.iter().enumerate() {
            for (j, e) in r.abelianization(self.generators.len()).into_iter().enumerate() {
                m.set(i, j, BigInt::from(e));
            }
        }
        m
    }

    /// Presentation with no generators left.
    pub fn is_trivial(&self) -> bool {
        self.generators.is_empty()
    }

    /// Sets each listed generator to the identity and drops it.
    pub fn kill(&self, kill: &[usize]) -> GroupPresentation {
        let killed: HashSet<usize> = kill.iter().copied().collect();
        let mut new_index = vec![None; self.generators.len()];
        let mut generators = Vec::new();
        for (i, g) in self.generators.iter().enumerate() {
            if !killed.contains(&i) {
                new_index[i] = Some(generators.len());
                generators.push(g.clone());
            }
        }
        let relators = self
            .relators
            .iter()
            .map(|r| {
                Word::from_letters(
                    r.letters()
                        .iter()
                        .filter_map(|l| new_index[l.generator()].map(|n| Letter::new(n, l.is_inverse()))),
                )
            })
            .filter(|r| !r.is_empty())
            .collect();
        GroupPresentation { generators, relators }
    }

    /// Repeatedly eliminates generators that occur as single-letter relators
    /// and drops empty or repeated relators.
    pub fn simplify(&self) -> GroupPresentation {
        let mut p = self.clone();
        loop {
            let single: Vec<usize> = p
                .relators
                .iter()
                .filter(|r| r.len() == 1)
                .map(|r| r.letters()[0].generator())
                .collect();
            if single.is_empty() {
                break;
            }
            p = p.kill(&single);
        }
        let mut seen = HashSet::new();
        p.relators.retain(|r| seen.insert(r.clone()));
        p
    }
}

impl fmt::Display for GroupPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let alphabet = crate::words::Alphabet::new(self.generators.clone());
        write!(f, "gens: {} ; rels: ", self.generators.join(", "))?;
        match alphabet {
            Ok(a) => {
                let rels: Vec<String> = self.relators.iter().map(|r| r.display(&a).to_string()).collect();
                f.write_str(&rels.join(", "))
            }
            Err(_) => Ok(()),
        }
    }
}

/// Cokernel of the relator exponent matrix.
pub fn abelianization(p: &GroupPresentation) -> FPAbelianGroup {
    FPAbelianGroup::from_relations(&p.relation_matrix())
}

/// `H1` of the mapping torus of a map with homology action `m`: `Z ⊕ coker(I − m)`.
pub fn mapping_torus_h1(m: &IntMatrix) -> Result<FPAbelianGroup, HomError> {
    if !m.is_square() {
        return Err(HomError::NotSquare);
    }
    let block = IntMatrix::identity(m.rows).sub(m);
    Ok(FPAbelianGroup::cokernel(&block).direct_sum(&FPAbelianGroup::free(1)))
}

/// Kills the named generators and simplifies.
pub fn quotient_presentation(p: &GroupPresentation, kill: &[&str]) -> Result<GroupPresentation, HomError> {
    let idx = kill
        .iter()
        .map(|k| p.index(k).ok_or_else(|| HomError::UnknownGenerator(k.to_string())))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(p.kill(&idx).simplify())
}

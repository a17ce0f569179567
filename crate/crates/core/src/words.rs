//! Free-group words and the closed orientable surface group.
//!
//! Words are stored freely reduced at all times. [`SurfaceGroup`] decides the
//! word problem with Dehn's algorithm and searches for conjugating elements.
//!
//! For genus `g >= 2` the relator `[x1,y1]...[xg,yg]` has `4g` pairwise
//! distinct signed letters, so two distinct cyclic permutations of `r` or
//! `r^-1` share at most one letter at a time: every piece has length 1. With
//! `4g >= 8` this is the metric condition C'(1/7), which is strong enough for
//! Greendlinger's lemma: a nonempty freely reduced word that is trivial in the
//! group contains more than half of some cyclic permutation of `r^{±1}`.
//! Replacing that half by the inverse of its (shorter) complement strictly
//! shortens the word, so greedy shortening terminates at the empty word exactly
//! when the input is trivial.

use std::collections::{HashSet, VecDeque};
use std::fmt;
use std::ops::Mul;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WordError {
    #[error("alphabet must be nonempty")]
    EmptyAlphabet,
    #[error("duplicate generator name `{0}`")]
    DuplicateGenerator(String),
    #[error("surface genus must be positive")]
    ZeroGenus,
}

/// Ordered list of generator names.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Alphabet {
    names: Vec<String>,
}

impl Alphabet {
    pub fn new<I, S>(names: I) -> Result<Self, WordError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.is_empty() {
            return Err(WordError::EmptyAlphabet);
        }
        let mut seen = HashSet::new();
        for n in &names {
            if !seen.insert(n.as_str()) {
                return Err(WordError::DuplicateGenerator(n.clone()));
            }
        }
        Ok(Alphabet { names })
    }

    /// `x1, y1, ..., xg, yg`.
    pub fn surface(genus: usize) -> Result<Self, WordError> {
        if genus == 0 {
            return Err(WordError::ZeroGenus);
        }
        Alphabet::new((1..=genus).flat_map(|i| [format!("x{i}"), format!("y{i}")]))
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, index: usize) -> &str {
        &self.names[index]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }
}

/// A generator or its inverse, encoded as `±(index + 1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter(i32);

impl Letter {
    pub fn new(generator: usize, inverse: bool) -> Self {
        let v = generator as i32 + 1;
        Letter(if inverse { -v } else { v })
    }

    pub fn generator(self) -> usize {
        (self.0.unsigned_abs() - 1) as usize
    }

    pub fn is_inverse(self) -> bool {
        self.0 < 0
    }

    pub fn sign(self) -> i64 {
        if self.0 < 0 {
            -1
        } else {
            1
        }
    }

    pub fn inverse(self) -> Self {
        Letter(-self.0)
    }

    /// Dense index in `0..2n`: generator `i` maps to `2i`, its inverse to `2i + 1`.
    fn key(self) -> usize {
        2 * self.generator() + usize::from(self.is_inverse())
    }
}

/// A freely reduced word.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Word(Vec<Letter>);

/// Free reduction of a letter sequence.
pub fn reduce<I: IntoIterator<Item = Letter>>(letters: I) -> Word {
    let mut out: Vec<Letter> = Vec::new();
    for l in letters {
        if out.last() == Some(&l.inverse()) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    Word(out)
}

impl Word {
    pub fn identity() -> Self {
        Word(Vec::new())
    }

    pub fn from_letters<I: IntoIterator<Item = Letter>>(letters: I) -> Self {
        reduce(letters)
    }

    /// Builds a word from signed one-based generator indices, e.g. `[1, -2]` is `x1 y1^-1`
    /// over the surface alphabet.
    pub fn from_signed(indices: &[i32]) -> Self {
        reduce(indices.iter().map(|&i| {
            assert!(i != 0, "signed generator index must be nonzero");
            Letter(i)
        }))
    }

    pub fn generator(index: usize) -> Self {
        Word(vec![Letter::new(index, false)])
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l.inverse()).collect())
    }

    pub fn pow(&self, n: i64) -> Word {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        reduce(
            std::iter::repeat_n(base.0, n.unsigned_abs() as usize).flatten(),
        )
    }

    /// `self · other · self^-1`.
    pub fn conjugate(&self, other: &Word) -> Word {
        reduce(
            self.0
                .iter()
                .chain(other.0.iter())
                .copied()
                .chain(self.inverse().0),
        )
    }

    /// `[u, v] = u v u^-1 v^-1`.
    pub fn commutator(u: &Word, v: &Word) -> Word {
        reduce(
            u.0.iter()
                .chain(v.0.iter())
                .copied()
                .chain(u.inverse().0)
                .chain(v.inverse().0),
        )
    }

    /// Exponent sums over `rank` generators.
    pub fn abelianization(&self, rank: usize) -> Vec<i64> {
        let mut v = vec![0i64; rank];
        for l in &self.0 {
            v[l.generator()] += l.sign();
        }
        v
    }

    /// Largest generator index used, plus one.
    pub fn support_rank(&self) -> usize {
        self.0.iter().map(|l| l.generator() + 1).max().unwrap_or(0)
    }

    /// Returns `(core, conjugator)` with `core` cyclically reduced and
    /// `self = conjugator · core · conjugator^-1` in the free group.
    pub fn cyclic_reduce(&self) -> (Word, Word) {
        let w = &self.0;
        let mut i = 0;
        let mut j = w.len();
        while j - i >= 2 && w[i] == w[j - 1].inverse() {
            i += 1;
            j -= 1;
        }
        (Word(w[i..j].to_vec()), Word(w[..i].to_vec()))
    }

    pub fn is_cyclically_reduced(&self) -> bool {
        self.0.len() < 2 || self.0[0] != self.0[self.0.len() - 1].inverse()
    }

    /// Cyclic rotation moving the first `k` letters to the end.
    pub fn rotate(&self, k: usize) -> Word {
        if self.0.is_empty() {
            return self.clone();
        }
        let k = k % self.0.len();
        let mut v = self.0[k..].to_vec();
        v.extend_from_slice(&self.0[..k]);
        Word(v)
    }

    pub fn prefix(&self, k: usize) -> Word {
        Word(self.0[..k].to_vec())
    }

    /// Replaces generator `i` by `images[i]`.
    pub fn substitute(&self, images: &[Word]) -> Word {
        let mut out = Vec::new();
        for l in &self.0 {
            let img = &images[l.generator()];
            if l.is_inverse() {
                out.extend(img.0.iter().rev().map(|x| x.inverse()));
            } else {
                out.extend_from_slice(&img.0);
            }
        }
        reduce(out)
    }

    pub fn display<'a>(&'a self, alphabet: &'a Alphabet) -> WordDisplay<'a> {
        WordDisplay {
            word: self,
            alphabet,
        }
    }
}

impl Mul for &Word {
    type Output = Word;
    fn mul(self, rhs: &Word) -> Word {
        reduce(self.0.iter().chain(rhs.0.iter()).copied())
    }
}

impl Mul for Word {
    type Output = Word;
    fn mul(self, rhs: Word) -> Word {
        &self * &rhs
    }
}

pub struct WordDisplay<'a> {
    word: &'a Word,
    alphabet: &'a Alphabet,
}

impl fmt::Display for WordDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_empty() {
            return f.write_str("1");
        }
        for (i, l) in self.word.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            f.write_str(self.alphabet.name(l.generator()))?;
            if l.is_inverse() {
                f.write_str("^-1")?;
            }
        }
        Ok(())
    }
}

/// Outcome of a bounded conjugacy search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Conjugacy {
    /// `u = w · v · w^-1`, verified with Dehn's algorithm.
    Witness(Word),
    /// Not conjugate, witnessed by an invariant (abelianization or triviality).
    NotConjugate,
    /// No witness of length within the bound was found.
    Exhausted,
}

/// Default length bound for conjugator searches.
pub const DEFAULT_BOUND: usize = 16;

// Cap on the number of distinct cyclic words explored through half-relator swaps.
const ORBIT_CAP: usize = 4096;
// Longest bridging word enumerated between cyclic cores.
const BRIDGE_MAX: usize = 3;

/// `π1` of the closed orientable surface of genus `g`.
#[derive(Debug, Clone)]
pub struct SurfaceGroup {
    genus: usize,
    alphabet: Alphabet,
    relator: Word,
    // successor of each letter inside the cyclic relator and its inverse
    next_fwd: Vec<Letter>,
    next_bwd: Vec<Letter>,
}

impl SurfaceGroup {
    pub fn new(genus: usize) -> Result<Self, WordError> {
        let alphabet = Alphabet::surface(genus)?;
        let mut letters = Vec::with_capacity(4 * genus);
        for i in 0..genus {
            let (x, y) = (Letter::new(2 * i, false), Letter::new(2 * i + 1, false));
            letters.extend([x, y, x.inverse(), y.inverse()]);
        }
        let relator = Word(letters);
        let n = relator.len();
        let mut next_fwd = vec![Letter(1); 2 * alphabet.len()];
        let mut next_bwd = vec![Letter(1); 2 * alphabet.len()];
        let r = relator.letters();
        for i in 0..n {
            next_fwd[r[i].key()] = r[(i + 1) % n];
            // r^-1 reads inv(r[n-1]), ..., inv(r[0]); after inv(r[i]) comes inv(r[i-1])
            next_bwd[r[i].inverse().key()] = r[(i + n - 1) % n].inverse();
        }
        Ok(SurfaceGroup {
            genus,
            alphabet,
            relator,
            next_fwd,
            next_bwd,
        })
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn relator(&self) -> &Word {
        &self.relator
    }

    pub fn rank(&self) -> usize {
        self.alphabet.len()
    }

    fn relator_len(&self) -> usize {
        4 * self.genus
    }

    /// The cyclic permutation of `r` (forward) or `r^-1` starting at `start`.
    fn relator_from(&self, start: Letter, forward: bool) -> Vec<Letter> {
        let next = if forward { &self.next_fwd } else { &self.next_bwd };
        let mut seq = Vec::with_capacity(self.relator_len());
        let mut l = start;
        for _ in 0..self.relator_len() {
            seq.push(l);
            l = next[l.key()];
        }
        seq
    }

    /// Longest relator piece starting at `w[i]`, reading at most `limit` letters
    /// (cyclically when `cyclic`). Returns `(length, forward)`.
    fn piece_at(&self, w: &[Letter], i: usize, limit: usize, cyclic: bool) -> (usize, bool) {
        let n = w.len();
        let mut best = (0, true);
        for forward in [true, false] {
            let next = if forward { &self.next_fwd } else { &self.next_bwd };
            let mut k = 1;
            while k < limit.min(self.relator_len()) {
                let (a, b) = if cyclic {
                    (w[(i + k - 1) % n], w[(i + k) % n])
                } else {
                    if i + k >= n {
                        break;
                    }
                    (w[i + k - 1], w[i + k])
                };
                if next[a.key()] != b {
                    break;
                }
                k += 1;
            }
            if k > best.0 {
                best = (k, forward);
            }
        }
        best
    }

    /// Inverse of the complement of a relator piece: the word equal in the
    /// group to the piece of length `k` starting with `start`.
    fn complement_inverse(&self, start: Letter, forward: bool, k: usize) -> Vec<Letter> {
        let seq = self.relator_from(start, forward);
        seq[k..].iter().rev().map(|l| l.inverse()).collect()
    }

    /// One Dehn shortening step on a linear word: the leftmost position carrying
    /// more than half a relator, taking the longest piece there.
    fn dehn_step(&self, w: &Word) -> Option<Word> {
        let half = self.relator_len() / 2;
        let letters = w.letters();
        for i in 0..letters.len() {
            let (k, forward) = self.piece_at(letters, i, letters.len() - i, false);
            if k > half {
                let mut out = letters[..i].to_vec();
                out.extend(self.complement_inverse(letters[i], forward, k));
                out.extend_from_slice(&letters[i + k..]);
                return Some(reduce(out));
            }
        }
        None
    }

    /// Dehn-reduced representative: no subword is more than half a relator.
    ///
    /// For genus 1 the word is only freely reduced; the torus group is abelian
    /// and handled separately by [`SurfaceGroup::is_trivial`].
    pub fn dehn_reduce(&self, w: &Word) -> Word {
        if self.genus < 2 {
            return w.clone();
        }
        let mut cur = w.clone();
        while let Some(next) = self.dehn_step(&cur) {
            cur = next;
        }
        cur
    }

    pub fn is_trivial(&self, w: &Word) -> bool {
        if self.genus < 2 {
            return w.abelianization(self.rank()).iter().all(|&e| e == 0);
        }
        self.dehn_reduce(w).is_empty()
    }

    pub fn equal(&self, u: &Word, v: &Word) -> bool {
        self.is_trivial(&(u * &v.inverse()))
    }

    /// Cyclic Dehn reduction. Returns `(core, conjugator)` with
    /// `w = conjugator · core · conjugator^-1` in the group, `core` cyclically
    /// reduced and free of cyclic subwords longer than half a relator.
    pub fn cyclic_dehn_reduce(&self, w: &Word) -> (Word, Word) {
        let w = self.dehn_reduce(w);
        let (mut core, mut conj) = w.cyclic_reduce();
        if self.genus < 2 {
            return (core, conj);
        }
        let half = self.relator_len() / 2;
        'outer: loop {
            let letters = core.letters().to_vec();
            let n = letters.len();
            for i in 0..n {
                let (k, forward) = self.piece_at(&letters, i, n, true);
                if k > half {
                    // rotate the piece to the front, then replace it
                    let rotated = core.rotate(i);
                    conj = &conj * &core.prefix(i);
                    let mut out = self.complement_inverse(letters[i], forward, k);
                    out.extend_from_slice(&rotated.letters()[k..]);
                    let (c, p) = self.dehn_reduce(&reduce(out)).cyclic_reduce();
                    conj = &conj * &p;
                    core = c;
                    continue 'outer;
                }
            }
            break;
        }
        (core, conj)
    }

    /// Cyclic words reachable from `core` by swapping exactly-half relator
    /// pieces, each paired with its conjugator back to `core`.
    fn half_swap_orbit(&self, core: &Word) -> Vec<(Word, Word)> {
        let half = self.relator_len() / 2;
        let mut seen: HashSet<Word> = HashSet::new();
        let mut out = Vec::new();
        let mut queue = VecDeque::new();
        seen.insert(canonical_rotation(core));
        queue.push_back((core.clone(), Word::identity()));
        while let Some((w, c)) = queue.pop_front() {
            out.push((w.clone(), c.clone()));
            if out.len() >= ORBIT_CAP || self.genus < 2 {
                continue;
            }
            let letters = w.letters().to_vec();
            let n = letters.len();
            if n < half {
                continue;
            }
            for i in 0..n {
                for forward in [true, false] {
                    let next = if forward { &self.next_fwd } else { &self.next_bwd };
                    let mut k = 1;
                    while k < half.min(n) && next[letters[(i + k - 1) % n].key()] == letters[(i + k) % n] {
                        k += 1;
                    }
                    if k != half {
                        continue;
                    }
                    let rotated = w.rotate(i);
                    let mut conj = &c * &w.prefix(i);
                    let mut repl = self.complement_inverse(letters[i], forward, half);
                    repl.extend_from_slice(&rotated.letters()[half..]);
                    let (core2, p) = self.cyclic_dehn_reduce(&reduce(repl));
                    conj = &conj * &p;
                    if seen.insert(canonical_rotation(&core2)) {
                        queue.push_back((core2, conj));
                    }
                }
            }
        }
        out
    }

    /// Bounded search for `w` with `u = w · v · w^-1`.
    ///
    /// Non-conjugacy is only asserted when an invariant proves it; otherwise an
    /// unsuccessful search reports [`Conjugacy::Exhausted`].
    pub fn conjugacy(&self, u: &Word, v: &Word, bound: usize) -> Conjugacy {
        let rank = self.rank();
        if u.abelianization(rank) != v.abelianization(rank) {
            return Conjugacy::NotConjugate;
        }
        let (u_triv, v_triv) = (self.is_trivial(u), self.is_trivial(v));
        if u_triv || v_triv {
            return if u_triv && v_triv {
                Conjugacy::Witness(Word::identity())
            } else {
                Conjugacy::NotConjugate
            };
        }
        if self.equal(u, v) {
            return Conjugacy::Witness(Word::identity());
        }
        if self.genus < 2 {
            // abelian: equal abelianizations already decided equality
            return Conjugacy::Witness(Word::identity());
        }
        if bound == 0 {
            return Conjugacy::Exhausted;
        }

        let (cu, pu) = self.cyclic_dehn_reduce(u);
        let (cv, pv) = self.cyclic_dehn_reduce(v);
        let mut best: Option<Word> = None;
        let consider = |w: Word, best: &mut Option<Word>| {
            let w = self.dehn_reduce(&w);
            if w.len() <= bound
                && best.as_ref().is_none_or(|b| w.len() < b.len())
                && self.is_trivial(&(&w.conjugate(v) * &u.inverse()))
            {
                *best = Some(w);
            }
        };

        // cyclic permutations, up to half-relator swaps of the cyclic word
        if cu.len() == cv.len() {
            for (o, co) in self.half_swap_orbit(&cv) {
                for k in 0..o.len().max(1) {
                    if o.rotate(k) == cu {
                        // o = A · cu · A^-1 with A the first k letters of o
                        let w = &(&pu * &o.prefix(k).inverse()) * &(&co.inverse() * &pv.inverse());
                        consider(w, &mut best);
                    }
                }
            }
        }
        if let Some(w) = best {
            return Conjugacy::Witness(w);
        }

        // short bridging words between rotations of the cores
        for s in enumerate_words(rank, bound.min(BRIDGE_MAX)) {
            for k in 0..cv.len() {
                let rot = cv.rotate(k);
                if self.equal(&s.conjugate(&rot), &cu) {
                    let w = &(&pu * &s) * &(&cv.prefix(k).inverse() * &pv.inverse());
                    consider(w, &mut best);
                }
            }
            if best.is_some() {
                break;
            }
        }
        match best {
            Some(w) => Conjugacy::Witness(w),
            None => Conjugacy::Exhausted,
        }
    }

    /// `Some(w)` with `u = w v w^-1` when found within `bound`, else `None`.
    pub fn conjugacy_witness(&self, u: &Word, v: &Word, bound: usize) -> Option<Word> {
        match self.conjugacy(u, v, bound) {
            Conjugacy::Witness(w) => Some(w),
            _ => None,
        }
    }
}

/// Lexicographically least rotation; identifies a cyclic word.
pub fn canonical_rotation(w: &Word) -> Word {
    (0..w.len().max(1))
        .map(|k| w.rotate(k))
        .min()
        .unwrap_or_default()
}

/// All freely reduced words of length `1..=max_len` over `rank` generators, shortest first.
pub fn enumerate_words(rank: usize, max_len: usize) -> Vec<Word> {
    let letters: Vec<Letter> = (0..rank)
        .flat_map(|g| [Letter::new(g, false), Letter::new(g, true)])
        .collect();
    let mut out = Vec::new();
    let mut layer = vec![Word::identity()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &layer {
            for &l in &letters {
                if w.0.last() == Some(&l.inverse()) {
                    continue;
                }
                let mut v = w.0.clone();
                v.push(l);
                next.push(Word(v));
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

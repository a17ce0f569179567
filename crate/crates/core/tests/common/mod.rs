//! Independent oracles shared by the integration tests.

#![allow(dead_code)]

use std::collections::HashSet;

use forge::bundles::{BaseDirection, LuttingerDatum, PiAtom, PiExpr, Section};
use forge::dsl::{BundleDef, Document, FormDef, FormTerm, Item};
use forge::expr::Expr;
use forge::forms::Ring;
use forge::homcalc::{smith_normal_form, GroupPresentation, IntMatrix};
use forge::knots::{KnotRecord, SeifertMatrix};
use forge::mcg::{surface, CurveName, Generator, TwistAtom, TwistExpr};
use forge::quotients::CycleLedger;
use forge::words::{Letter, Word};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

// ---- words ----

fn letters(rank: usize) -> Vec<Letter> {
    (0..rank).flat_map(|g| [Letter::new(g, false), Letter::new(g, true)]).collect()
}

/// Freely reduced products of at most two conjugates `c r c^-1`, `r = ρ^±1`,
/// with `|c| <= 2`, plus single conjugates with `|c| <= 4` (which covers every
/// cyclic rotation of `ρ^±1`). Keeps those of length `<= max_len`.
pub fn normal_closure_ball(max_len: usize) -> HashSet<Word> {
    let rho = surface().relator().clone();
    let rels = [rho.clone(), rho.inverse()];
    let conjugators = |n: usize| {
        let mut out = vec![Word::identity()];
        out.extend(forge::words::enumerate_words(4, n));
        out
    };
    let mut set = HashSet::new();
    set.insert(Word::identity());
    for c in conjugators(4) {
        for r in &rels {
            let w = c.conjugate(r);
            if w.len() <= max_len {
                set.insert(w);
            }
        }
    }
    let small: Vec<Word> = conjugators(2)
        .iter()
        .flat_map(|c| rels.iter().map(move |r| c.conjugate(r)))
        .collect();
    for u in &small {
        for v in &small {
            let w = u * v;
            if w.len() <= max_len {
                set.insert(w);
            }
        }
    }
    set
}

/// Compares Dehn's algorithm with the enumerated ball on every reduced word of
/// length `<= max_len`. Returns `(words checked, mismatches)`.
pub fn dehn_vs_normal_closure(max_len: usize) -> (u64, Vec<Word>) {
    let ball = normal_closure_ball(max_len);
    let g = surface();
    let ls = letters(4);
    let prefixes: Vec<Vec<Letter>> = ls
        .iter()
        .flat_map(|&a| ls.iter().filter(move |&&b| b != a.inverse()).map(move |&b| vec![a, b]))
        .collect();
    let mut count = 1 + ls.len() as u64;
    let mut bad = Vec::new();
    for w in std::iter::once(Vec::new()).chain(ls.iter().map(|&l| vec![l])) {
        let w = Word::from_letters(w);
        if g.is_trivial(&w) != ball.contains(&w) {
            bad.push(w);
        }
    }
    let parts: Vec<(u64, Vec<Word>)> = prefixes
        .par_iter()
        .map(|p| {
            let mut buf = p.clone();
            let mut n = 0;
            let mut bad = Vec::new();
            walk(&mut buf, max_len, &ls, &mut |letters| {
                n += 1;
                let w = Word::from_letters(letters.iter().copied());
                if g.is_trivial(&w) != ball.contains(&w) {
                    bad.push(w);
                }
            });
            (n, bad)
        })
        .collect();
    for (n, b) in parts {
        count += n;
        bad.extend(b);
    }
    (count, bad)
}

fn walk(buf: &mut Vec<Letter>, max_len: usize, ls: &[Letter], f: &mut impl FnMut(&[Letter])) {
    f(buf);
    if buf.len() == max_len {
        return;
    }
    for &l in ls {
        if buf.last() == Some(&l.inverse()) {
            continue;
        }
        buf.push(l);
        walk(buf, max_len, ls, f);
        buf.pop();
    }
}

/// Permutation images of a word, composing left to right.
pub fn perm_image(w: &Word, gens: &[Vec<usize>]) -> Vec<usize> {
    let n = gens[0].len();
    let inv = |p: &Vec<usize>| {
        let mut q = vec![0; p.len()];
        for (i, &j) in p.iter().enumerate() {
            q[j] = i;
        }
        q
    };
    let invs: Vec<Vec<usize>> = gens.iter().map(inv).collect();
    let mut acc: Vec<usize> = (0..n).collect();
    for l in w.letters() {
        let p = if l.is_inverse() { &invs[l.generator()] } else { &gens[l.generator()] };
        acc = acc.iter().map(|&i| p[i]).collect();
    }
    acc
}

// ---- Smith normal form ----

fn det_i128(m: &[Vec<i128>]) -> i128 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    if n == 1 {
        return m[0][0];
    }
    (0..n)
        .map(|j| {
            let minor: Vec<Vec<i128>> = m[1..]
                .iter()
                .map(|r| r.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, &x)| x).collect())
                .collect();
            let s = if j % 2 == 0 { 1 } else { -1 };
            s * m[0][j] * det_i128(&minor)
        })
        .sum()
}

fn gcd(a: i128, b: i128) -> i128 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

/// Invariant factors from determinantal divisors: `d_k` is the gcd of all
/// `k × k` minors and the factors are `d_k / d_{k-1}`.
pub fn factors_by_minors(m: &[Vec<i64>]) -> Vec<i128> {
    let (r, c) = (m.len(), m.first().map_or(0, |x| x.len()));
    let mut prev = 1i128;
    let mut out = Vec::new();
    for k in 1..=r.min(c) {
        let mut g = 0i128;
        for rows in subsets(r, k) {
            for cols in subsets(c, k) {
                let sub: Vec<Vec<i128>> = rows.iter().map(|&i| cols.iter().map(|&j| m[i][j] as i128).collect()).collect();
                g = gcd(g, det_i128(&sub));
            }
        }
        if g == 0 {
            break;
        }
        out.push(g / prev);
        prev = g;
    }
    out
}

/// Elementary reduction that clears the pivot row and column by Euclidean
/// steps, then fixes divisibility on the diagonal with `(a, b) ↦ (gcd, lcm)`.
pub fn factors_by_naive_reduction(m: &[Vec<i64>]) -> Vec<i128> {
    let mut a: Vec<Vec<i128>> = m.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let (r, c) = (a.len(), a.first().map_or(0, |x| x.len()));
    let mut diag = Vec::new();
    let mut t = 0;
    while t < r.min(c) {
        let Some((pi, pj)) = (t..r).flat_map(|i| (t..c).map(move |j| (i, j))).find(|&(i, j)| a[i][j] != 0) else {
            break;
        };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let mut changed = false;
            for i in t + 1..r {
                while a[i][t] != 0 {
                    let q = a[i][t] / a[t][t];
                    for k in 0..c {
                        a[i][k] -= q * a[t][k];
                    }
                    if a[i][t] != 0 {
                        a.swap(t, i);
                    }
                    changed = true;
                }
            }
            for j in t + 1..c {
                while a[t][j] != 0 {
                    let q = a[t][j] / a[t][t];
                    for row in a.iter_mut() {
                        row[j] -= q * row[t];
                    }
                    if a[t][j] != 0 {
                        for row in a.iter_mut() {
                            row.swap(t, j);
                        }
                    }
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        diag.push(a[t][t].abs());
        t += 1;
    }
    // gcd/lcm pass gives the divisibility chain
    for i in 0..diag.len() {
        for j in i + 1..diag.len() {
            let g = gcd(diag[i], diag[j]);
            if g != 0 {
                let l = diag[i] / g * diag[j];
                diag[i] = g;
                diag[j] = l;
            }
        }
    }
    diag.retain(|&x| x != 0);
    diag
}

pub fn random_matrix(r: &mut impl Rng) -> Vec<Vec<i64>> {
    let rows = r.gen_range(1..=5);
    let cols = r.gen_range(1..=5);
    (0..rows).map(|_| (0..cols).map(|_| r.gen_range(-5..=5)).collect()).collect()
}

/// SNF on `count` random matrices against both oracles and the identity `U M V = D`.
pub fn snf_oracle(count: usize, seed: u64) -> (usize, Vec<Vec<Vec<i64>>>) {
    let mut r = rng(seed);
    let mut bad = Vec::new();
    for _ in 0..count {
        let m = random_matrix(&mut r);
        let im = IntMatrix::from_rows(&m).unwrap();
        let s = smith_normal_form(&im);
        let ours: Vec<i128> = s.invariant_factors().iter().map(|x| i128::try_from(x).unwrap()).collect();
        let ok = ours == factors_by_minors(&m)
            && ours == factors_by_naive_reduction(&m)
            && s.u.mul(&im).mul(&s.v) == s.d
            && s.u.det().unwrap().magnitude() == &1u32.into()
            && s.v.det().unwrap().magnitude() == &1u32.into();
        if !ok {
            bad.push(m);
        }
    }
    (count, bad)
}

// ---- DSL corpus ----

fn gen_expr<A: Clone>(r: &mut impl Rng, depth: u32, atom: &mut impl FnMut(&mut ChaCha8Rng) -> A, rr: &mut ChaCha8Rng) -> Expr<A> {
    let pick = if depth == 0 { 0 } else { r.gen_range(0..6) };
    match pick {
        0 | 1 => Expr::Atom(atom(rr)),
        2 => {
            let n = [0usize, 2, 3][r.gen_range(0..3)];
            Expr::product((0..n).map(|_| gen_expr(r, depth - 1, atom, rr)).collect())
        }
        3 => gen_expr(r, depth - 1, atom, rr).pow(r.gen_range(-3..=3)),
        4 => Expr::comm(gen_expr(r, depth - 1, atom, rr), gen_expr(r, depth - 1, atom, rr)),
        _ => Expr::conj(gen_expr(r, depth - 1, atom, rr), gen_expr(r, depth - 1, atom, rr)),
    }
}

pub fn random_twist(r: &mut ChaCha8Rng, names: &[String]) -> TwistExpr {
    let mut rr = ChaCha8Rng::seed_from_u64(r.gen());
    let names = names.to_vec();
    gen_expr(r, 3, &mut |x: &mut ChaCha8Rng| {
        if !names.is_empty() && x.gen_bool(0.2) {
            TwistAtom::Name(names.choose(x).unwrap().clone())
        } else {
            TwistAtom::Gen(*Generator::ALL.choose(x).unwrap())
        }
    }, &mut rr)
}

pub fn random_pi(r: &mut ChaCha8Rng) -> PiExpr {
    let mut rr = ChaCha8Rng::seed_from_u64(r.gen());
    gen_expr(r, 3, &mut |x: &mut ChaCha8Rng| {
        if x.gen_bool(0.5) {
            PiAtom::Curve(*[CurveName::A, CurveName::B, CurveName::C, CurveName::D, CurveName::E, CurveName::Z].choose(x).unwrap())
        } else {
            PiAtom::Base(if x.gen() { BaseDirection::Alpha } else { BaseDirection::Beta }, x.gen_range(0..=2))
        }
    }, &mut rr)
}

pub fn random_word(r: &mut impl Rng, rank: usize, max_len: usize) -> Word {
    let n = r.gen_range(0..=max_len);
    Word::from_letters((0..n).map(|_| Letter::new(r.gen_range(0..rank), r.gen())))
}

fn random_seifert(r: &mut impl Rng) -> SeifertMatrix {
    let g = r.gen_range(0..=2);
    let n = 2 * g;
    let mut v = vec![vec![0i64; n]; n];
    for b in 0..g {
        v[2 * b][2 * b + 1] = 1;
    }
    for i in 0..n {
        for j in i..n {
            let x = r.gen_range(-2..=2);
            v[i][j] += x;
            if i != j {
                v[j][i] += x;
            }
        }
    }
    let m = if n == 0 { IntMatrix::zeros(0, 0) } else { IntMatrix::from_rows(&v).unwrap() };
    SeifertMatrix::new(m).expect("V - V^T is a sum of hyperbolic blocks")
}

/// A random document exercising every statement kind.
pub fn random_document(r: &mut ChaCha8Rng) -> Document {
    let mut items = Vec::new();
    let mut twists: Vec<String> = Vec::new();
    for k in 0..r.gen_range(1..8) {
        let item = match r.gen_range(0..8) {
            0 => Item::Word { name: format!("w{k}"), word: random_word(r, 4, 10) },
            1 => {
                let expr = random_twist(r, &twists);
                let name = format!("t{k}");
                twists.push(name.clone());
                Item::Twist { name, expr }
            }
            2 => Item::Equal { lhs: random_twist(r, &twists), rhs: random_twist(r, &twists) },
            3 => {
                let n = r.gen_range(0..4);
                let gens: Vec<String> = (0..n).map(|i| format!("g{i}")).collect();
                let rels = if n == 0 { vec![] } else { (0..r.gen_range(0..3)).map(|_| random_word(r, n, 6)).collect() };
                Item::Presentation {
                    name: if r.gen() { Some(format!("P{k}")) } else { None },
                    presentation: GroupPresentation::new(gens, rels).unwrap(),
                }
            }
            4 => Item::Bundle(BundleDef {
                name: if r.gen() { Some(format!("R{k}")) } else { None },
                fiber_genus: r.gen_range(1..4),
                alpha: random_twist(r, &twists),
                beta: random_twist(r, &twists),
                sections: (0..r.gen_range(0..3))
                    .map(|i| Section { name: format!("S{i}'"), fiber_intersection: r.gen_range(-2..=2) })
                    .collect(),
                surgeries: (0..r.gen_range(0..3))
                    .map(|_| LuttingerDatum {
                        fiber_curve: *CurveName::CHAIN.choose(r).unwrap(),
                        direction: if r.gen() { BaseDirection::Alpha } else { BaseDirection::Beta },
                        meridian: if r.gen() { Some(random_pi(r)) } else { None },
                        coefficient: r.gen_range(-3..=3),
                    })
                    .collect(),
            }),
            5 => {
                let mut l = CycleLedger::new(format!("L{k}"));
                let n = r.gen_range(0..4);
                for i in 0..n {
                    l.add_class(format!("C{i}")).unwrap();
                }
                for i in 0..n {
                    for j in i..n {
                        if r.gen_bool(0.7) {
                            l.add_pair(&format!("C{i}"), &format!("C{j}"), r.gen_range(0..2), "cited").unwrap();
                        }
                    }
                }
                Item::Ledger(l)
            }
            6 => {
                let terms = (0..r.gen_range(1..4))
                    .map(|_| {
                        if r.gen() {
                            FormTerm::Diag((0..r.gen_range(0..4)).map(|_| r.gen_range(-3..=3)).collect())
                        } else {
                            let n = r.gen_range(0..4);
                            let mut m = vec![vec![0i64; n]; n];
                            for i in 0..n {
                                for j in i..n {
                                    let x = r.gen_range(-3..=3);
                                    m[i][j] = x;
                                    m[j][i] = x;
                                }
                            }
                            FormTerm::Matrix(m)
                        }
                    })
                    .collect();
                Item::Form(FormDef {
                    name: if r.gen() { Some(format!("F{k}")) } else { None },
                    ring: if r.gen() { Ring::Z } else { Ring::Z2 },
                    terms,
                })
            }
            _ => Item::Knot(KnotRecord {
                name: format!("{}_{}", r.gen_range(3..10), r.gen_range(1..20)),
                seifert: random_seifert(r),
                four_ball_genus: r.gen_range(0..3),
                strongly_neg_amphichiral: r.gen(),
            }),
        };
        items.push(item);
    }
    Document { items }
}

/// Print → parse on `count` random documents; returns the mismatching ones.
pub fn roundtrip_corpus(count: usize, seed: u64) -> (usize, Vec<String>) {
    let mut r = rng(seed);
    let mut bad = Vec::new();
    for _ in 0..count {
        let doc = random_document(&mut r);
        let text = doc.to_string();
        match forge::dsl::parse_document(&text) {
            Ok(back) if back == doc => {}
            Ok(_) => bad.push(text),
            Err(e) => bad.push(format!("{text}\n-- {e}")),
        }
    }
    (count, bad)
}

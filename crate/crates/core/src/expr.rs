//! Group-word expressions with commutators and conjugates, generic over atoms.
//!
//! Shared by twist words (atoms are mapping-class generators) and by
//! fundamental-group words (atoms are curves and base loops).

use std::fmt;

/// `Product` of exactly one factor is not canonical; build products with
/// [`Expr::product`]. The parser never produces one.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Expr<A> {
    Atom(A),
    /// Left-to-right product; empty is the identity.
    Product(Vec<Expr<A>>),
    Power(Box<Expr<A>>, i64),
    /// `comm(u, v) = u v u^-1 v^-1`
    Comm(Box<Expr<A>>, Box<Expr<A>>),
    /// `conj(w, x) = x w x^-1`
    Conj(Box<Expr<A>>, Box<Expr<A>>),
}

/// Operations needed to evaluate an [`Expr`].
pub trait GroupOps {
    type Elem: Clone;
    fn identity(&self) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Self::Elem;

    fn pow(&self, a: &Self::Elem, k: i64) -> Self::Elem {
        let base = if k < 0 { self.inv(a) } else { a.clone() };
        (0..k.unsigned_abs()).fold(self.identity(), |acc, _| self.mul(&acc, &base))
    }
}

impl<A> Expr<A> {
    pub fn identity() -> Self {
        Expr::Product(Vec::new())
    }

    pub fn product(mut factors: Vec<Expr<A>>) -> Self {
        if factors.len() == 1 {
            factors.pop().expect("one factor")
        } else {
            Expr::Product(factors)
        }
    }

    pub fn pow(self, k: i64) -> Self {
        Expr::Power(Box::new(self), k)
    }

    pub fn comm(u: Expr<A>, v: Expr<A>) -> Self {
        Expr::Comm(Box::new(u), Box::new(v))
    }

    pub fn conj(w: Expr<A>, by: Expr<A>) -> Self {
        Expr::Conj(Box::new(w), Box::new(by))
    }

    /// Product of atoms with exponents; exponent 1 gives a bare atom.
    pub fn atoms(items: impl IntoIterator<Item = (A, i64)>) -> Self {
        Expr::product(
            items
                .into_iter()
                .map(|(a, e)| if e == 1 { Expr::Atom(a) } else { Expr::Atom(a).pow(e) })
                .collect(),
        )
    }

    pub fn eval<G, E, F>(&self, ops: &G, atom: &mut F) -> Result<G::Elem, E>
    where
        G: GroupOps,
        F: FnMut(&A) -> Result<G::Elem, E>,
    {
        Ok(match self {
            Expr::Atom(a) => atom(a)?,
            Expr::Product(fs) => {
                let mut acc = ops.identity();
                for f in fs {
                    acc = ops.mul(&acc, &f.eval(ops, atom)?);
                }
                acc
            }
            Expr::Power(b, k) => ops.pow(&b.eval(ops, atom)?, *k),
            Expr::Comm(u, v) => {
                let (u, v) = (u.eval(ops, atom)?, v.eval(ops, atom)?);
                let uv = ops.mul(&u, &v);
                let ui_vi = ops.mul(&ops.inv(&u), &ops.inv(&v));
                ops.mul(&uv, &ui_vi)
            }
            Expr::Conj(w, by) => {
                let (w, x) = (w.eval(ops, atom)?, by.eval(ops, atom)?);
                ops.mul(&ops.mul(&x, &w), &ops.inv(&x))
            }
        })
    }

    /// All atoms in reading order.
    pub fn visit_atoms<'a>(&'a self, f: &mut impl FnMut(&'a A)) {
        match self {
            Expr::Atom(a) => f(a),
            Expr::Product(fs) => fs.iter().for_each(|x| x.visit_atoms(f)),
            Expr::Power(b, _) => b.visit_atoms(f),
            Expr::Comm(u, v) | Expr::Conj(u, v) => {
                u.visit_atoms(f);
                v.visit_atoms(f);
            }
        }
    }

    fn is_atomic(&self) -> bool {
        match self {
            Expr::Product(fs) => fs.is_empty(),
            Expr::Power(..) => false,
            _ => true,
        }
    }
}

impl<A: fmt::Display> fmt::Display for Expr<A> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Atom(a) => write!(f, "{a}"),
            Expr::Product(fs) if fs.is_empty() => f.write_str("id"),
            Expr::Product(fs) => {
                for (i, x) in fs.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" ")?;
                    }
                    if matches!(x, Expr::Product(inner) if !inner.is_empty()) {
                        write!(f, "({x})")?;
                    } else {
                        write!(f, "{x}")?;
                    }
                }
                Ok(())
            }
            Expr::Power(b, k) if b.is_atomic() => write!(f, "{b}^{k}"),
            Expr::Power(b, k) => write!(f, "({b})^{k}"),
            Expr::Comm(u, v) => write!(f, "comm({u}, {v})"),
            Expr::Conj(w, by) => write!(f, "conj({w}, {by})"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    // integers under addition, to see the evaluation order
    struct Add;
    impl GroupOps for Add {
        type Elem = i64;
        fn identity(&self) -> i64 {
            0
        }
        fn mul(&self, a: &i64, b: &i64) -> i64 {
            a + b
        }
        fn inv(&self, a: &i64) -> i64 {
            -a
        }
    }

    #[test]
    fn evaluates_in_abelian_group() {
        let e: Expr<i64> = Expr::product(vec![Expr::Atom(3), Expr::Atom(2).pow(-2), Expr::comm(Expr::Atom(5), Expr::Atom(7))]);
        let v: Result<i64, ()> = e.eval(&Add, &mut |a| Ok(*a));
        assert_eq!(v, Ok(-1));
    }

    #[test]
    fn display() {
        let e: Expr<&str> = Expr::comm(Expr::atoms([("a", 1), ("b", 1)]), Expr::Atom("phi"));
        assert_eq!(e.to_string(), "comm(a b, phi)");
        let p: Expr<&str> = Expr::product(vec![Expr::atoms([("a", 1), ("b", 1)]), Expr::Atom("c")]);
        assert_eq!(p.to_string(), "(a b) c");
        assert_eq!(Expr::atoms([("a", 1), ("b", 2)]).pow(-1).to_string(), "(a b^2)^-1");
        assert_eq!(Expr::<&str>::identity().to_string(), "id");
    }
}

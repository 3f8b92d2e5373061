//! Expression language shared by the identity registry and the CLI.
//!
//! See `docs/grammar.md` for the full grammar. In short: integers, `q`,
//! `q^k`, `q^(m/5)`, the atoms `f phi psi chi fm poch G H R T` applied to
//! signed powers of q, `negq(e)` for `q ↦ -q`, `$NAME` for registry
//! definitions, and `+ - * / ^` with explicit multiplication.

mod eval;
mod parse;

use std::fmt;

use num_bigint::BigInt;
use num_traits::Signed;

pub use crate::rr::PrefixedSeries;
pub use crate::theta::Monomial;
pub use eval::{difference, evaluate, evaluate_atom, static_margin};
pub use parse::{parse, parse_with_defs, Definitions};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AtomKind {
    /// `f(a, b)`, or `f(a) = f(a, -a²)`.
    F,
    Phi,
    Psi,
    Chi,
    /// `fm(a) = f(-a)`
    Fm,
    /// `poch(a, b) = (a; b)∞`
    Poch,
    G,
    H,
    R,
    T,
}

impl AtomKind {
    pub const ALL: [AtomKind; 10] = [
        AtomKind::F,
        AtomKind::Phi,
        AtomKind::Psi,
        AtomKind::Chi,
        AtomKind::Fm,
        AtomKind::Poch,
        AtomKind::G,
        AtomKind::H,
        AtomKind::R,
        AtomKind::T,
    ];

    pub fn name(self) -> &'static str {
        match self {
            AtomKind::F => "f",
            AtomKind::Phi => "phi",
            AtomKind::Psi => "psi",
            AtomKind::Chi => "chi",
            AtomKind::Fm => "fm",
            AtomKind::Poch => "poch",
            AtomKind::G => "G",
            AtomKind::H => "H",
            AtomKind::R => "R",
            AtomKind::T => "T",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|k| k.name() == name)
    }

    /// Accepted argument counts.
    pub fn arity(self) -> &'static [usize] {
        match self {
            AtomKind::F => &[1, 2],
            AtomKind::Poch => &[2],
            _ => &[1],
        }
    }
}

/// A named function applied to signed integral powers of q.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Atom {
    pub kind: AtomKind,
    /// `(negative, exponent)` for each `±q^k`.
    pub args: Vec<(bool, i64)>,
}

impl Atom {
    pub fn new(kind: AtomKind, args: Vec<(bool, i64)>) -> Self {
        Atom { kind, args }
    }

    /// `kind(q^k)`
    pub fn at(kind: AtomKind, k: i64) -> Self {
        Atom::new(kind, vec![(false, k)])
    }

    pub fn monomials(&self) -> Vec<Monomial> {
        self.args
            .iter()
            .map(|&(neg, k)| Monomial::new(neg, k, 1))
            .collect()
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}(", self.kind.name())?;
        for (i, &(neg, k)) in self.args.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            if neg {
                write!(f, "-")?;
            }
            match k {
                1 => write!(f, "q")?,
                k if k >= 0 => write!(f, "q^{k}")?,
                k => write!(f, "q^({k})")?,
            }
        }
        write!(f, ")")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Int(BigInt),
    /// `q^(m/5)`
    QPow(i64),
    Atom(Atom),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i64),
    /// `q ↦ -q` applied to the child.
    NegQ(Box<Expr>),
}

#[allow(clippy::should_implement_trait)]
impl Expr {
    pub fn int(n: i64) -> Self {
        Expr::Int(BigInt::from(n))
    }

    pub fn atom(kind: AtomKind, k: i64) -> Self {
        Expr::Atom(Atom::at(kind, k))
    }

    pub fn add(a: Expr, b: Expr) -> Self {
        Expr::Add(Box::new(a), Box::new(b))
    }

    pub fn sub(a: Expr, b: Expr) -> Self {
        Expr::Sub(Box::new(a), Box::new(b))
    }

    pub fn mul(a: Expr, b: Expr) -> Self {
        Expr::Mul(Box::new(a), Box::new(b))
    }

    pub fn div(a: Expr, b: Expr) -> Self {
        Expr::Div(Box::new(a), Box::new(b))
    }

    pub fn pow(a: Expr, n: i64) -> Self {
        Expr::Pow(Box::new(a), n)
    }

    pub fn neg(a: Expr) -> Self {
        Expr::Neg(Box::new(a))
    }

    pub fn children(&self) -> Vec<&Expr> {
        match self {
            Expr::Int(_) | Expr::QPow(_) | Expr::Atom(_) => vec![],
            Expr::Neg(a) | Expr::Pow(a, _) | Expr::NegQ(a) => vec![a],
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) => vec![a, b],
        }
    }

    /// Every atom in the tree, in evaluation order, with repeats.
    pub fn atoms(&self) -> Vec<&Atom> {
        let mut out = Vec::new();
        self.collect_atoms(&mut out);
        out
    }

    fn collect_atoms<'a>(&'a self, out: &mut Vec<&'a Atom>) {
        if let Expr::Atom(a) = self {
            out.push(a);
        }
        for c in self.children() {
            c.collect_atoms(out);
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            Expr::Add(..) | Expr::Sub(..) => 1,
            Expr::Mul(..) | Expr::Div(..) => 2,
            Expr::Neg(_) => 3,
            Expr::Pow(..) => 4,
            Expr::Int(_) | Expr::QPow(_) | Expr::Atom(_) | Expr::NegQ(_) => 5,
        }
    }

    /// Canonical text; `parse(e.to_canonical())` rebuilds `e` exactly.
    pub fn to_canonical(&self) -> String {
        self.to_string()
    }
}

fn write_child(f: &mut fmt::Formatter<'_>, child: &Expr, paren: bool) -> fmt::Result {
    if paren {
        write!(f, "({child})")
    } else {
        write!(f, "{child}")
    }
}

fn write_qpow(f: &mut fmt::Formatter<'_>, m: i64) -> fmt::Result {
    if m == 5 {
        return write!(f, "q");
    }
    if m % 5 == 0 && m >= 0 {
        return write!(f, "q^{}", m / 5);
    }
    let r = num_rational::Rational64::new(m, 5);
    if r.is_integer() {
        write!(f, "q^({})", r.to_integer())
    } else {
        write!(f, "q^({}/{})", r.numer(), r.denom())
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = self.precedence();
        match self {
            Expr::Int(n) if n.is_negative() => write!(f, "({n})"),
            Expr::Int(n) => write!(f, "{n}"),
            Expr::QPow(m) => write_qpow(f, *m),
            Expr::Atom(a) => write!(f, "{a}"),
            Expr::NegQ(a) => write!(f, "negq({a})"),
            Expr::Neg(a) => {
                write!(f, "-")?;
                write_child(f, a, a.precedence() < p)
            }
            Expr::Pow(a, n) => {
                let paren = a.precedence() < p || matches!(**a, Expr::QPow(_));
                write_child(f, a, paren)?;
                if *n < 0 {
                    write!(f, "^({n})")
                } else {
                    write!(f, "^{n}")
                }
            }
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) => {
                let op = match self {
                    Expr::Add(..) => '+',
                    Expr::Sub(..) => '-',
                    Expr::Mul(..) => '*',
                    _ => '/',
                };
                write_child(f, a, a.precedence() < p)?;
                write!(f, "{op}")?;
                write_child(f, b, b.precedence() <= p)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn printer_parenthesises_by_precedence() {
        let e = Expr::mul(
            Expr::add(Expr::atom(AtomKind::R, 1), Expr::int(1)),
            Expr::pow(Expr::atom(AtomKind::G, 2), 3),
        );
        assert_eq!(e.to_string(), "(R(q)+1)*G(q^2)^3");
        let e = Expr::sub(Expr::int(1), Expr::sub(Expr::QPow(5), Expr::QPow(3)));
        assert_eq!(e.to_string(), "1-(q-q^(3/5))");
        assert_eq!(Expr::pow(Expr::QPow(10), -1).to_string(), "(q^2)^(-1)");
    }

    #[test]
    fn atom_display() {
        let a = Atom::new(AtomKind::F, vec![(true, 7), (true, 8)]);
        assert_eq!(a.to_string(), "f(-q^7,-q^8)");
        assert_eq!(AtomKind::from_name("poch"), Some(AtomKind::Poch));
        assert_eq!(AtomKind::from_name("zeta"), None);
    }
}

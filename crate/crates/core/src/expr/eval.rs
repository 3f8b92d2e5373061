use std::collections::HashMap;

use num_rational::Rational64;

use super::{Atom, AtomKind, Expr};
use crate::error::{EvalError, SeriesError};
use crate::rr::{self, PrefixedSeries, Twist};
use crate::series::LaurentSeries;
use crate::theta::{self, ThetaPair};
use crate::LATTICE;

const MAX_PASSES: usize = 8;
const SLACK: i64 = 10;

/// Evaluates `e` exactly below `q^(order/5)`.
///
/// Atoms are first expanded `static_margin(e)` fifths beyond `order`; if
/// cancellation or division still leaves the result short of `order`, the
/// atoms are re-expanded further by the shortfall.
pub fn evaluate(e: &Expr, order: i64) -> Result<PrefixedSeries, EvalError> {
    let mut atom_order = order + static_margin(e);
    let mut reached = i64::MIN;
    for _ in 0..MAX_PASSES {
        let mut ctx = Context {
            order: atom_order,
            cache: HashMap::new(),
        };
        let v = ctx.eval(e, &mut String::new())?;
        reached = v.bound_fifths();
        if reached >= order {
            return Ok(v.truncate_fifths(order));
        }
        atom_order += (order - reached) + SLACK;
    }
    Err(EvalError {
        path: "/".into(),
        source: SeriesError::PrecisionLoss {
            reached,
            requested: order,
        },
    })
}

/// Largest shift, in fifths, that the tree's q-powers and R prefixes can
/// cost the result.
pub fn static_margin(e: &Expr) -> i64 {
    match e {
        Expr::Int(_) => 0,
        Expr::QPow(m) => m.abs(),
        Expr::Atom(a) if a.kind == AtomKind::R => a.args[0].1.abs(),
        Expr::Atom(_) => 0,
        Expr::Pow(a, n) => static_margin(a).saturating_mul(n.abs()),
        _ => e.children().into_iter().map(static_margin).sum(),
    }
}

/// One atom exact below `q^(order/5)`.
pub fn evaluate_atom(atom: &Atom, order: i64) -> Result<PrefixedSeries, SeriesError> {
    let bound = order.max(0).div_euclid(LATTICE as i64) + 1;
    let args = atom.monomials();
    let integral = |s: LaurentSeries| Ok(PrefixedSeries::integral(s));
    match atom.kind {
        AtomKind::F => {
            let pair = match args[..] {
                [a, b] => ThetaPair::new(a, b)?,
                [x] => ThetaPair::new(x, x.pow(2).negated())?,
                _ => unreachable!("parser enforces arity"),
            };
            integral(theta::theta_sum(&pair, 1, bound)?)
        }
        AtomKind::Poch => integral(theta::poch_monomial(args[0], args[1], 1, bound)?),
        AtomKind::R => {
            let (negative, k) = atom.args[0];
            if negative {
                return Err(SeriesError::FractionalExponent(Rational64::new(k, 5)));
            }
            let k = positive_power(atom, k)?;
            Ok(rr::r(k, order))
        }
        kind => {
            let (negative, k) = atom.args[0];
            let k = positive_power(atom, k)?;
            let n = bound.div_euclid(k as i64) + 1;
            let base = match (kind, negative) {
                (AtomKind::Phi, _) => theta::phi(n),
                (AtomKind::Psi, _) => theta::psi(n),
                (AtomKind::Chi, _) => theta::chi(n),
                (AtomKind::Fm, _) => theta::fm(n),
                (AtomKind::G, false) => rr::g(1, n),
                (AtomKind::H, false) => rr::h(1, n),
                (AtomKind::T, false) => rr::t(1, n),
                (AtomKind::G, true) => rr::twisted(Twist::G, n)?,
                (AtomKind::H, true) => rr::twisted(Twist::H, n)?,
                (AtomKind::T, true) => rr::twisted(Twist::T, n)?,
                _ => unreachable!(),
            };
            let base = match kind {
                AtomKind::Phi | AtomKind::Psi | AtomKind::Chi | AtomKind::Fm if negative => {
                    base.negate_q()?
                }
                _ => base,
            };
            integral(base.substitute_power(k).truncate(bound))
        }
    }
}

fn positive_power(atom: &Atom, k: i64) -> Result<u32, SeriesError> {
    u32::try_from(k).ok().filter(|&k| k >= 1).ok_or_else(|| {
        SeriesError::InvalidArgument(format!("{atom}: argument must be a positive power of q"))
    })
}

struct Context {
    order: i64,
    cache: HashMap<Atom, PrefixedSeries>,
}

impl Context {
    fn eval(&mut self, e: &Expr, path: &mut String) -> Result<PrefixedSeries, EvalError> {
        let fail = |path: &str, source: SeriesError| EvalError {
            path: if path.is_empty() {
                "/".into()
            } else {
                path.to_string()
            },
            source,
        };
        let value = match e {
            Expr::Int(n) => Ok(PrefixedSeries::constant(n.clone(), self.order)),
            Expr::QPow(m) => Ok(PrefixedSeries::q_power(*m, self.order)),
            Expr::Atom(a) => {
                if let Some(v) = self.cache.get(a) {
                    return Ok(v.clone());
                }
                let v = evaluate_atom(a, self.order).map_err(|s| fail(path, s))?;
                self.cache.insert(a.clone(), v.clone());
                Ok(v)
            }
            Expr::Neg(a) => Ok(self.child(a, 0, path)?.neg()),
            Expr::NegQ(a) => self.child(a, 0, path)?.negate_q(),
            Expr::Pow(a, 0) => {
                self.child(a, 0, path)?;
                Ok(PrefixedSeries::constant(1.into(), self.order))
            }
            Expr::Pow(a, n) => self.child(a, 0, path)?.pow(*n),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) => {
                let x = self.child(a, 0, path)?;
                let y = self.child(b, 1, path)?;
                match e {
                    Expr::Add(..) => x.add(&y),
                    Expr::Sub(..) => x.sub(&y),
                    Expr::Mul(..) => x.mul(&y),
                    _ => x.div(&y),
                }
            }
        };
        value.map_err(|s| fail(path, s))
    }

    fn child(
        &mut self,
        e: &Expr,
        i: usize,
        path: &mut String,
    ) -> Result<PrefixedSeries, EvalError> {
        let len = path.len();
        path.push('/');
        path.push_str(&i.to_string());
        let v = self.eval(e, path);
        path.truncate(len);
        v
    }
}

/// `lhs - rhs` exact below `q^(order/5)`, as a series on the 1/5 lattice.
pub fn difference(lhs: &Expr, rhs: &Expr, order: i64) -> Result<LaurentSeries, EvalError> {
    let diff = Expr::sub(lhs.clone(), rhs.clone());
    Ok(evaluate(&diff, order)?.to_fifths().truncate(order))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse;

    fn eval(s: &str, order: i64) -> PrefixedSeries {
        evaluate(&parse(s).unwrap(), order).unwrap()
    }

    fn zero(lhs: &str, rhs: &str, order: i64) -> bool {
        let d = difference(&parse(lhs).unwrap(), &parse(rhs).unwrap(), order).unwrap();
        assert!(d.bound() >= order);
        d.is_zero_to_bound()
    }

    #[test]
    fn q_is_prefix_five() {
        let v = eval("q", 40);
        assert_eq!(v.prefix(), 5);
        assert_eq!(v.body().to_i64s().unwrap()[0], 1);
    }

    #[test]
    fn gh_product() {
        assert!(zero("G(q)*H(q)", "fm(q^5)/fm(q)", 250));
    }

    #[test]
    fn rr_fifth_power() {
        assert!(zero(
            "R(q)^5",
            "R(q^5)*(1-2*R(q^5)+4*R(q^5)^2-3*R(q^5)^3+R(q^5)^4)/(1+3*R(q^5)+4*R(q^5)^2+2*R(q^5)^3+R(q^5)^4)",
            200
        ));
    }

    #[test]
    fn wrong_sign_is_detected() {
        assert!(!zero("G(q)*H(q)", "fm(q^5)/fm(-q)", 100));
    }

    #[test]
    fn cancellation_triggers_refinement() {
        // The denominator has order 2 and carries no q-power the static
        // margin could see.
        let v = eval("(G(q)*H(q)-fm(q^5)/fm(q))/(fm(q)-1+q)", 60);
        assert!(v.bound_fifths() >= 60);
        assert!(v.is_zero().is_zero());
        let v = eval("(q^(12/5)+G(q)*H(q)-fm(q^5)/fm(q))/q^(12/5)", 50);
        assert_eq!(v.to_fifths().terms().count(), 1);
        assert_eq!(v.q_order(), Some(Rational64::from_integer(0)));
    }

    #[test]
    fn errors_report_paths() {
        let err = evaluate(&parse("1+R(-q)").unwrap(), 20).unwrap_err();
        assert_eq!(err.path, "/1");
        assert!(matches!(err.source, SeriesError::FractionalExponent(_)));
        let err = evaluate(&parse("1/(q-q)").unwrap(), 20).unwrap_err();
        assert_eq!(err.path, "/");
    }

    #[test]
    fn negative_arguments() {
        assert!(zero("negq(G(q))", "G(-q)", 100));
        assert!(zero("phi(-q^3)", "negq(phi(q^3))", 100));
        assert!(zero("T(-q)", "T(q^4)/(T(q)*T(q^2))", 100));
        assert!(zero("fm(q)", "f(-q)", 100));
        assert!(zero("chi(q)", "poch(-q,q^2)", 100));
    }

    #[test]
    fn zeroth_power_is_exact() {
        let v = eval("(G(q)-G(q))^0", 40);
        assert_eq!(v.bound_fifths(), 40);
        assert_eq!(v.body().coeff(0), Some(1.into()));
    }

    #[test]
    fn margin_counts_shifts() {
        assert_eq!(static_margin(&parse("q^2*R(q^3)^2/q").unwrap()), 10 + 6 + 5);
    }
}

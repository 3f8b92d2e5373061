use std::collections::HashMap;

use num_bigint::BigInt;

use super::{Atom, AtomKind, Expr};
use crate::error::ParseError;

/// Named subexpressions available as `$NAME`.
pub type Definitions = HashMap<String, Expr>;

pub fn parse(text: &str) -> Result<Expr, ParseError> {
    parse_with_defs(text, &Definitions::new())
}

pub fn parse_with_defs(text: &str, defs: &Definitions) -> Result<Expr, ParseError> {
    let tokens = lex(text)?;
    let mut p = Parser {
        tokens,
        at: 0,
        end: text.len(),
        defs,
    };
    let e = p.expr()?;
    match p.peek() {
        None => Ok(e),
        Some(t) => Err(syntax(t.pos, format!("unexpected {}", t.kind.describe()))),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Def(String),
    Sym(char),
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Int(n) => format!("number `{n}`"),
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Def(s) => format!("`${s}`"),
            Tok::Sym(c) => format!("`{c}`"),
        }
    }
}

#[derive(Clone, Debug)]
struct Token {
    kind: Tok,
    pos: usize,
}

fn syntax(pos: usize, msg: impl Into<String>) -> ParseError {
    ParseError::Syntax {
        pos,
        msg: msg.into(),
    }
}

fn lex(text: &str) -> Result<Vec<Token>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        let start = i;
        if c.is_ascii_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let n: BigInt = text[start..i].parse().expect("ascii digits");
            out.push(Token {
                kind: Tok::Int(n),
                pos: start,
            });
        } else if c.is_ascii_alphabetic() || c == '$' {
            i += 1;
            let name_start = i - usize::from(c != '$');
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            let name = text[name_start..i].to_string();
            let kind = if c == '$' {
                if name.is_empty() {
                    return Err(syntax(start, "expected a definition name after `$`"));
                }
                Tok::Def(name)
            } else {
                Tok::Ident(name)
            };
            out.push(Token { kind, pos: start });
        } else if "+-*/^(),".contains(c) {
            out.push(Token {
                kind: Tok::Sym(c),
                pos: start,
            });
            i += 1;
        } else {
            let ch = text[start..].chars().next().unwrap();
            return Err(syntax(start, format!("unexpected character `{ch}`")));
        }
    }
    Ok(out)
}

struct Parser<'a> {
    tokens: Vec<Token>,
    at: usize,
    end: usize,
    defs: &'a Definitions,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.at)
    }

    fn pos(&self) -> usize {
        self.peek().map_or(self.end, |t| t.pos)
    }

    fn next(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.at).cloned();
        self.at += 1;
        t
    }

    fn eat(&mut self, c: char) -> bool {
        if matches!(self.peek(), Some(Token { kind: Tok::Sym(s), .. }) if *s == c) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        if self.eat(c) {
            return Ok(());
        }
        let found = self
            .peek()
            .map_or("end of input".to_string(), |t| t.kind.describe());
        Err(syntax(self.pos(), format!("expected `{c}`, found {found}")))
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.term()?;
        loop {
            if self.eat('+') {
                lhs = Expr::add(lhs, self.term()?);
            } else if self.eat('-') {
                lhs = Expr::sub(lhs, self.term()?);
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.unary()?;
        loop {
            if self.eat('*') {
                lhs = Expr::mul(lhs, self.unary()?);
            } else if self.eat('/') {
                lhs = Expr::div(lhs, self.unary()?);
            } else {
                return Ok(lhs);
            }
        }
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        if self.eat('-') {
            return Ok(Expr::neg(self.unary()?));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, ParseError> {
        let mut base = self.primary()?;
        while self.eat('^') {
            let pos = self.pos();
            let (num, den) = self.exponent()?;
            if den != 1 {
                return Err(syntax(pos, "only powers of q may be fractional"));
            }
            base = Expr::pow(base, num);
        }
        Ok(base)
    }

    /// `INT | -INT | ( [-] INT [/ INT] )`
    fn exponent(&mut self) -> Result<(i64, i64), ParseError> {
        if self.eat('(') {
            let neg = self.eat('-');
            let num = self.small_int()?;
            let den = if self.eat('/') { self.small_int()? } else { 1 };
            self.expect(')')?;
            if den == 0 {
                return Err(syntax(self.pos(), "zero denominator in exponent"));
            }
            return Ok((if neg { -num } else { num }, den));
        }
        let neg = self.eat('-');
        let num = self.small_int()?;
        Ok((if neg { -num } else { num }, 1))
    }

    fn small_int(&mut self) -> Result<i64, ParseError> {
        let pos = self.pos();
        match self.next() {
            Some(Token {
                kind: Tok::Int(n), ..
            }) => i64::try_from(n).map_err(|_| syntax(pos, "exponent out of range")),
            Some(t) => Err(syntax(
                pos,
                format!("expected an integer, found {}", t.kind.describe()),
            )),
            None => Err(syntax(pos, "expected an integer, found end of input")),
        }
    }

    fn primary(&mut self) -> Result<Expr, ParseError> {
        let pos = self.pos();
        let Some(tok) = self.next() else {
            return Err(syntax(pos, "unexpected end of input"));
        };
        match tok.kind {
            Tok::Int(n) => Ok(Expr::Int(n)),
            Tok::Sym('(') => {
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            Tok::Def(name) => self
                .defs
                .get(&name)
                .cloned()
                .ok_or(ParseError::UnknownDefinition { name, pos }),
            Tok::Ident(name) if name == "q" => self.q_power(),
            Tok::Ident(name) if name == "negq" => {
                self.expect('(')?;
                let e = self.expr()?;
                self.expect(')')?;
                Ok(Expr::NegQ(Box::new(e)))
            }
            Tok::Ident(name) => self.atom(name, pos),
            Tok::Sym(c) => Err(syntax(pos, format!("unexpected `{c}`"))),
        }
    }

    /// After `q`: an optional exponent on the 1/5 lattice.
    fn q_power(&mut self) -> Result<Expr, ParseError> {
        if !self.eat('^') {
            return Ok(Expr::QPow(5));
        }
        let pos = self.pos();
        let (num, den) = self.exponent()?;
        let scaled = num
            .checked_mul(5)
            .ok_or_else(|| syntax(pos, "exponent out of range"))?;
        if scaled % den != 0 {
            return Err(syntax(
                pos,
                format!("q^({num}/{den}) is not on the 1/5 lattice"),
            ));
        }
        Ok(Expr::QPow(scaled / den))
    }

    fn atom(&mut self, name: String, pos: usize) -> Result<Expr, ParseError> {
        let kind = AtomKind::from_name(&name).ok_or(ParseError::UnknownAtom {
            name: name.clone(),
            pos,
        })?;
        // `G^3(q)` is sugar for `G(q)^3`.
        let power = if self.eat('^') {
            let ppos = self.pos();
            let k = self.small_int()?;
            if k < 1 {
                return Err(syntax(ppos, "atom powers must be at least 1"));
            }
            Some(k)
        } else {
            None
        };
        self.expect('(')?;
        let mut args = vec![self.monomial_arg()?];
        while self.eat(',') {
            args.push(self.monomial_arg()?);
        }
        self.expect(')')?;
        if !kind.arity().contains(&args.len()) {
            return Err(syntax(
                pos,
                format!(
                    "`{name}` takes {:?} argument(s), got {}",
                    kind.arity(),
                    args.len()
                ),
            ));
        }
        let atom = Expr::Atom(Atom::new(kind, args));
        Ok(match power {
            Some(k) => Expr::pow(atom, k),
            None => atom,
        })
    }

    /// `[-] q [^ exponent]` with an integral exponent.
    fn monomial_arg(&mut self) -> Result<(bool, i64), ParseError> {
        let neg = self.eat('-');
        let pos = self.pos();
        match self.next() {
            Some(Token {
                kind: Tok::Ident(ref s),
                ..
            }) if s == "q" => {}
            _ => return Err(syntax(pos, "atom arguments must be `q^k` or `-q^k`")),
        }
        if !self.eat('^') {
            return Ok((neg, 1));
        }
        let epos = self.pos();
        let (num, den) = self.exponent()?;
        if den != 1 && num % den != 0 {
            return Err(syntax(epos, "atom arguments need integral exponents"));
        }
        Ok((neg, num / den))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(k: i64) -> Expr {
        Expr::atom(AtomKind::R, k)
    }

    #[test]
    fn product_of_atoms() {
        assert_eq!(parse("R(q)*R(q^4)").unwrap(), Expr::mul(r(1), r(4)));
    }

    #[test]
    fn quotient_with_grouping() {
        let e = parse("(R(q^5)+R(q^20)-R(q^5)*R(q^20))/(1+R(q^5)+R(q^20))").unwrap();
        let num = Expr::sub(Expr::add(r(5), r(20)), Expr::mul(r(5), r(20)));
        let den = Expr::add(Expr::add(Expr::int(1), r(5)), r(20));
        assert_eq!(e, Expr::div(num, den));
    }

    #[test]
    fn theta_arguments() {
        let e = parse("f(-q^7,-q^8)+q*f(-q^2,-q^13)").unwrap();
        let f1 = Expr::Atom(Atom::new(AtomKind::F, vec![(true, 7), (true, 8)]));
        let f2 = Expr::Atom(Atom::new(AtomKind::F, vec![(true, 2), (true, 13)]));
        assert_eq!(e, Expr::add(f1, Expr::mul(Expr::QPow(5), f2)));
    }

    #[test]
    fn q_powers() {
        assert_eq!(parse("q").unwrap(), Expr::QPow(5));
        assert_eq!(parse("q^3").unwrap(), Expr::QPow(15));
        assert_eq!(parse("q^(6/5)").unwrap(), Expr::QPow(6));
        assert_eq!(parse("q^(-1/5)").unwrap(), Expr::QPow(-1));
        assert_eq!(parse("q^-2").unwrap(), Expr::QPow(-10));
        assert_eq!(parse("(q)^2").unwrap(), Expr::pow(Expr::QPow(5), 2));
        assert!(matches!(
            parse("q^(1/3)"),
            Err(ParseError::Syntax { pos: 2, .. })
        ));
    }

    #[test]
    fn atom_power_sugar() {
        assert_eq!(
            parse("G^3(q^2)").unwrap(),
            Expr::pow(Expr::atom(AtomKind::G, 2), 3)
        );
        assert!(parse("G^0(q)").is_err());
    }

    #[test]
    fn unary_minus_binds_looser_than_power() {
        assert_eq!(parse("-q^2").unwrap(), Expr::neg(Expr::QPow(10)));
        assert_eq!(
            parse("-R(q)*R(q)").unwrap(),
            Expr::mul(Expr::neg(r(1)), r(1))
        );
    }

    #[test]
    fn definitions_expand() {
        let mut defs = Definitions::new();
        defs.insert("S".into(), parse("G(q)*H(q)").unwrap());
        let e = parse_with_defs("$S/q", &defs).unwrap();
        assert_eq!(
            e,
            Expr::div(
                Expr::mul(Expr::atom(AtomKind::G, 1), Expr::atom(AtomKind::H, 1)),
                Expr::QPow(5)
            )
        );
        assert_eq!(
            parse("$S"),
            Err(ParseError::UnknownDefinition {
                name: "S".into(),
                pos: 0
            })
        );
    }

    #[test]
    fn errors_carry_positions() {
        assert_eq!(
            parse("1+zeta(q)"),
            Err(ParseError::UnknownAtom {
                name: "zeta".into(),
                pos: 2
            })
        );
        assert!(matches!(
            parse("R(q"),
            Err(ParseError::Syntax { pos: 3, .. })
        ));
        assert!(matches!(
            parse("R(2)"),
            Err(ParseError::Syntax { pos: 2, .. })
        ));
        assert!(matches!(
            parse("1 # 2"),
            Err(ParseError::Syntax { pos: 2, .. })
        ));
        assert!(matches!(
            parse("f(q,q,q)"),
            Err(ParseError::Syntax { pos: 0, .. })
        ));
        assert!(matches!(
            parse("R(q) R(q)"),
            Err(ParseError::Syntax { pos: 5, .. })
        ));
    }

    #[test]
    fn negq_wraps() {
        assert_eq!(
            parse("negq(T(q))").unwrap(),
            Expr::NegQ(Box::new(Expr::atom(AtomKind::T, 1)))
        );
    }

    #[test]
    fn canonical_round_trip() {
        for s in [
            "R(q)^5-R(q^5)*(1-2*R(q^5))/(1+R(q^5))",
            "-(G(q)*H(q))+q^(6/5)*f(-q^2,-q^3)^(-1)",
            "(q)^2^3-1-(2-3)",
            "poch(-q,q^2)*negq(chi(q))/fm(q^5)",
        ] {
            let e = parse(s).unwrap();
            assert_eq!(parse(&e.to_canonical()).unwrap(), e, "{s}");
        }
    }
}

//! Expression syntax.
//!
//! ```text
//! expr   := term (("+" | "-") term)*
//! term   := factor ("*" factor)*
//! factor := atom ("^" atom)?
//! atom   := NAT | "w" | "chi(" NAT ")" | "(" expr ")" | "[" expr "]"
//! ```
//!
//! Outside brackets the operators are field operations of `On_p` and the
//! exponent of `^` must be a natural number. Inside `[...]` they are ordinary
//! ordinal operations, with `a - b` the left difference (the `c` with
//! `b + c = a`). Parentheses keep the surrounding mode.

use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::ToPrimitive;

use crate::context::Context;
use crate::error::{Error, Result};
use crate::ordinal::Ordinal;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    /// Operators are `On_p` field operations.
    Field,
    /// Operators are ordinal operations, as inside `[...]`.
    Ordinal,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Style {
    /// Cantor normal form, e.g. `w^(w*2)*3+w+4`.
    #[default]
    Cnf,
    /// Base-`p` expansion, e.g. `3^(w*3)+3^2*2+1`.
    PExpansion,
}

impl FromStr for Style {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "cnf" => Ok(Style::Cnf),
            "p" | "p-expansion" => Ok(Style::PExpansion),
            _ => Err(Error::InvalidArgument(format!("unknown style {s:?}"))),
        }
    }
}

pub fn format(o: &Ordinal, style: Style, p: u32) -> String {
    match style {
        Style::Cnf => o.to_cnf_string(),
        Style::PExpansion => o.to_p_expansion_string(p),
    }
}

/// Parses and evaluates `text`, with `mode` governing operators outside brackets.
pub fn parse(text: &str, mode: Mode, ctx: &Context) -> Result<Ordinal> {
    let tokens = tokenize(text)?;
    let mut parser = Parser {
        tokens,
        pos: 0,
        end: text.len(),
        ctx,
    };
    let value = parser.expr(mode)?;
    match parser.peek() {
        None => Ok(value),
        Some((at, tok)) => Err(Error::syntax(at, format!("unexpected {}", tok.describe()))),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Nat(BigUint),
    Omega,
    Chi,
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
    LBracket,
    RBracket,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Nat(n) => format!("number {n}"),
            Tok::Omega => "'w'".into(),
            Tok::Chi => "'chi'".into(),
            Tok::Plus => "'+'".into(),
            Tok::Minus => "'-'".into(),
            Tok::Star => "'*'".into(),
            Tok::Caret => "'^'".into(),
            Tok::LParen => "'('".into(),
            Tok::RParen => "')'".into(),
            Tok::LBracket => "'['".into(),
            Tok::RBracket => "']'".into(),
        }
    }
}

fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>> {
    let mut out = Vec::new();
    let mut chars = text.char_indices().peekable();
    while let Some(&(at, c)) = chars.peek() {
        let single = match c {
            '+' => Some(Tok::Plus),
            '-' => Some(Tok::Minus),
            '*' => Some(Tok::Star),
            '^' => Some(Tok::Caret),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            '[' => Some(Tok::LBracket),
            ']' => Some(Tok::RBracket),
            'w' | 'ω' => Some(Tok::Omega),
            _ => None,
        };
        if let Some(tok) = single {
            chars.next();
            out.push((at, tok));
        } else if c.is_whitespace() {
            chars.next();
        } else if c.is_ascii_digit() {
            let mut digits = String::new();
            while let Some(&(_, d)) = chars.peek().filter(|(_, d)| d.is_ascii_digit()) {
                digits.push(d);
                chars.next();
            }
            out.push((at, Tok::Nat(digits.parse().expect("ascii digits"))));
        } else if text[at..].starts_with("chi") {
            for _ in 0..3 {
                chars.next();
            }
            out.push((at, Tok::Chi));
        } else {
            return Err(Error::syntax(at, format!("unexpected character {c:?}")));
        }
    }
    Ok(out)
}

struct Parser<'a> {
    tokens: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
    ctx: &'a Context,
}

impl Parser<'_> {
    fn peek(&self) -> Option<(usize, &Tok)> {
        self.tokens.get(self.pos).map(|(at, t)| (*at, t))
    }

    fn offset(&self) -> usize {
        self.peek().map_or(self.end, |(at, _)| at)
    }

    fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek().map(|(_, t)| t) == Some(tok) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, tok: Tok) -> Result<()> {
        if self.eat(&tok) {
            Ok(())
        } else {
            let found = self.peek().map_or("end of input".into(), |(_, t)| t.describe());
            Err(Error::syntax(self.offset(), format!("expected {}, found {found}", tok.describe())))
        }
    }

    fn expr(&mut self, mode: Mode) -> Result<Ordinal> {
        let mut acc = self.term(mode)?;
        loop {
            if self.eat(&Tok::Plus) {
                let rhs = self.term(mode)?;
                acc = match mode {
                    Mode::Field => self.field(|c, p| c.add(&p.0, &p.1), &acc, &rhs),
                    Mode::Ordinal => acc.add(&rhs),
                };
            } else if self.eat(&Tok::Minus) {
                let rhs = self.term(mode)?;
                acc = match mode {
                    Mode::Field => self.field(|c, p| c.sub(&p.0, &p.1), &acc, &rhs),
                    Mode::Ordinal => acc.sub(&rhs).ok_or_else(|| {
                        Error::InvalidArgument(format!("cannot subtract {rhs} from the smaller {acc}"))
                    })?,
                };
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self, mode: Mode) -> Result<Ordinal> {
        let mut acc = self.factor(mode)?;
        while self.eat(&Tok::Star) {
            let rhs = self.factor(mode)?;
            acc = match mode {
                Mode::Field => {
                    let ctx = self.ctx;
                    let prod = ctx.mul(&ctx.ordinal_to_element(&acc), &ctx.ordinal_to_element(&rhs))?;
                    ctx.element_to_ordinal(&prod)
                }
                Mode::Ordinal => acc.mul(&rhs),
            };
        }
        Ok(acc)
    }

    fn factor(&mut self, mode: Mode) -> Result<Ordinal> {
        let base = self.atom(mode)?;
        if !self.eat(&Tok::Caret) {
            return Ok(base);
        }
        let at = self.offset();
        let exponent = self.atom(mode)?;
        match mode {
            Mode::Ordinal => base.pow(&exponent),
            Mode::Field => {
                let n = exponent.as_natural().ok_or_else(|| {
                    Error::InvalidArgument(format!(
                        "field exponent at offset {at} must be a natural number, got {exponent}"
                    ))
                })?;
                let ctx = self.ctx;
                Ok(ctx.element_to_ordinal(&ctx.pow(&ctx.ordinal_to_element(&base), &n)?))
            }
        }
    }

    fn atom(&mut self, mode: Mode) -> Result<Ordinal> {
        let at = self.offset();
        let Some((_, tok)) = self.peek() else {
            return Err(Error::syntax(at, "unexpected end of input"));
        };
        let tok = tok.clone();
        self.pos += 1;
        match tok {
            Tok::Nat(n) => Ok(Ordinal::natural(n)),
            Tok::Omega => Ok(Ordinal::omega()),
            Tok::Chi => {
                self.expect(Tok::LParen)?;
                let arg_at = self.offset();
                let n = match self.peek() {
                    Some((_, Tok::Nat(n))) => n.clone(),
                    _ => return Err(Error::syntax(arg_at, "chi expects a natural number")),
                };
                self.pos += 1;
                self.expect(Tok::RParen)?;
                let h = n
                    .to_u64()
                    .ok_or_else(|| Error::InvalidArgument(format!("chi({n}) argument is too large")))?;
                let chi = self.ctx.chi_h(h)?;
                Ok(self.ctx.element_to_ordinal(&chi.element))
            }
            Tok::LParen => {
                let v = self.expr(mode)?;
                self.expect(Tok::RParen)?;
                Ok(v)
            }
            Tok::LBracket => {
                let v = self.expr(Mode::Ordinal)?;
                self.expect(Tok::RBracket)?;
                Ok(v)
            }
            other => Err(Error::syntax(at, format!("unexpected {}", other.describe()))),
        }
    }

    fn field(
        &self,
        op: impl Fn(&Context, (crate::Element, crate::Element)) -> crate::Element,
        a: &Ordinal,
        b: &Ordinal,
    ) -> Ordinal {
        let ctx = self.ctx;
        let pair = (ctx.ordinal_to_element(a), ctx.ordinal_to_element(b));
        ctx.element_to_ordinal(&op(ctx, pair))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn eval(p: u32, text: &str) -> String {
        let ctx = Context::new(p).unwrap();
        parse(text, Mode::Field, &ctx).unwrap().to_string()
    }

    #[test]
    fn field_mode_examples() {
        assert_eq!(eval(3, "22+19"), "14");
        assert_eq!(eval(2, "4*4+3"), "5");
        assert_eq!(eval(3, "0+0"), "0");
        assert_eq!(eval(3, "[w^w]^5"), "10");
        assert_eq!(eval(3, "w^3"), "w+1");
        assert_eq!(eval(3, "3-1"), "5");
    }

    #[test]
    fn bracket_literals() {
        let ctx = Context::new(3).unwrap();
        let chi5 = ctx.chi_prime_power(5, 1).unwrap();
        assert_eq!(parse("[w^w]", Mode::Field, &ctx).unwrap(), chi5);
        let chi7 = ctx.chi_prime_power(7, 1).unwrap();
        assert_eq!(parse("[w^(w^2)]", Mode::Field, &ctx).unwrap(), chi7);
        assert_eq!(parse("[3^(w*3)]", Mode::Field, &ctx).unwrap().to_string(), "w^3");
        assert_eq!(parse("[w+5-w]", Mode::Field, &ctx).unwrap().to_string(), "5");
        assert_eq!(parse("[1+w]", Mode::Field, &ctx).unwrap().to_string(), "w");
    }

    #[test]
    fn chi_atoms() {
        let ctx = Context::new(3).unwrap();
        assert_eq!(parse("chi(18)", Mode::Field, &ctx).unwrap().to_p_expansion_string(3), "3^(w*3)+3");
        assert_eq!(parse("chi(1)", Mode::Field, &ctx).unwrap(), Ordinal::zero());
        assert!(matches!(parse("chi(0)", Mode::Field, &ctx), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn errors() {
        let ctx = Context::new(3).unwrap();
        assert!(matches!(parse("2+", Mode::Field, &ctx), Err(Error::Syntax { pos: 2, .. })));
        assert!(matches!(parse("2 3", Mode::Field, &ctx), Err(Error::Syntax { pos: 2, .. })));
        assert!(matches!(parse("[w", Mode::Field, &ctx), Err(Error::Syntax { .. })));
        assert!(matches!(parse("x", Mode::Field, &ctx), Err(Error::Syntax { pos: 0, .. })));
        assert!(matches!(parse("[w^(w^w)]", Mode::Field, &ctx), Err(Error::OutOfRange(_))));
        assert!(matches!(parse("3^w", Mode::Field, &ctx), Err(Error::InvalidArgument(_))));
        assert!(matches!(parse("[1-w]", Mode::Field, &ctx), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn formats_round_trip() {
        let ctx = Context::new(3).unwrap();
        let chi9 = ctx.chi_prime_power(3, 2).unwrap();
        assert_eq!(format(&chi9, Style::Cnf, 3), "w^3");
        assert_eq!(format(&chi9, Style::PExpansion, 3), "3^(w*3)");
        assert_eq!(format(&Ordinal::zero(), Style::Cnf, 3), "0");
        for text in ["w^(w*2+1)*4+w^3+w*2+17", "w^w*2+6", "w^(w^3*2)+w"] {
            let o = parse(text, Mode::Ordinal, &ctx).unwrap();
            for style in [Style::Cnf, Style::PExpansion] {
                assert_eq!(parse(&format(&o, style, 3), Mode::Ordinal, &ctx).unwrap(), o);
            }
        }
    }
}

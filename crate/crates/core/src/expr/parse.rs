//! Text form of expressions.
//!
//! ```text
//! union  := inter ('|' inter)*
//! inter  := cat ('&' cat)*          x & y  ==>  !(!x|!y)
//! cat    := unary unary*
//! unary  := '!' unary | postfix
//! postfix:= atom '*'*
//! atom   := '(' union ')' | '\0' | '\e' | '\' reserved | symbol
//! ```
//!
//! Whitespace between tokens is ignored.

use super::words::RESERVED;
use super::{Alphabet, Expr, ExprError};

pub fn parse_expr(text: &str, alphabet: &Alphabet) -> Result<Expr, ExprError> {
    let mut p = Parser { chars: text.chars().collect(), pos: 0, alphabet };
    let e = p.union()?;
    p.skip_ws();
    if p.pos < p.chars.len() {
        return Err(p.err(format!("unexpected {:?}", p.chars[p.pos])));
    }
    Ok(e)
}

struct Parser<'a> {
    chars: Vec<char>,
    pos: usize,
    alphabet: &'a Alphabet,
}

impl Parser<'_> {
    fn err(&self, msg: impl Into<String>) -> ExprError {
        ExprError::Syntax { pos: self.pos, msg: msg.into() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn union(&mut self) -> Result<Expr, ExprError> {
        let mut e = self.inter()?;
        while self.peek() == Some('|') {
            self.pos += 1;
            let r = self.inter()?;
            e = Expr::union(e, r);
        }
        Ok(e)
    }

    fn inter(&mut self) -> Result<Expr, ExprError> {
        let mut e = self.cat()?;
        while self.peek() == Some('&') {
            self.pos += 1;
            let r = self.cat()?;
            e = Expr::intersect(e, r);
        }
        Ok(e)
    }

    fn starts_unary(&mut self) -> bool {
        matches!(self.peek(), Some(c) if !matches!(c, '|' | '&' | ')' | '*'))
    }

    fn cat(&mut self) -> Result<Expr, ExprError> {
        if !self.starts_unary() {
            return Err(match self.peek() {
                Some(c) => self.err(format!("expected an expression, found {c:?}")),
                None => self.err("expected an expression, found end of input"),
            });
        }
        let mut e = self.unary()?;
        while self.starts_unary() {
            let r = self.unary()?;
            e = Expr::cat(e, r);
        }
        Ok(e)
    }

    fn unary(&mut self) -> Result<Expr, ExprError> {
        if self.peek() == Some('!') {
            self.pos += 1;
            if !self.starts_unary() {
                return Err(self.err("expected an expression after '!'"));
            }
            return Ok(Expr::not(self.unary()?));
        }
        let mut e = self.atom()?;
        while self.peek() == Some('*') {
            self.pos += 1;
            e = Expr::star(e);
        }
        Ok(e)
    }

    fn atom(&mut self) -> Result<Expr, ExprError> {
        let start = self.pos;
        let c = self.peek().ok_or_else(|| self.err("unexpected end of input"))?;
        self.pos += 1;
        match c {
            '(' => {
                let e = self.union()?;
                if self.peek() != Some(')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(e)
            }
            '\\' => {
                let Some(&n) = self.chars.get(self.pos) else {
                    return Err(self.err("dangling '\\'"));
                };
                self.pos += 1;
                match n {
                    '0' => Ok(Expr::Empty),
                    'e' => Ok(Expr::Epsilon),
                    r if RESERVED.contains(&r) => self.symbol(r, start),
                    other => Err(ExprError::Syntax { pos: start, msg: format!("unknown escape \\{other}") }),
                }
            }
            other => self.symbol(other, start),
        }
    }

    fn symbol(&self, c: char, pos: usize) -> Result<Expr, ExprError> {
        if self.alphabet.contains(c) {
            Ok(Expr::Atom(c))
        } else {
            Err(ExprError::UnknownSymbol { symbol: c, pos })
        }
    }
}

/// Renders with the fewest parentheses that parse back to the same tree.
pub fn render_expr(e: &Expr) -> String {
    let mut out = String::new();
    render(e, 0, &mut out);
    out
}

// binding levels: 0 union, 1 catenation, 2 complement, 3 star operand, 4 leaf
fn level(e: &Expr) -> u8 {
    match e {
        Expr::Union(..) => 0,
        Expr::Cat(..) => 1,
        Expr::Not(_) => 2,
        Expr::Star(_) => 3,
        Expr::Empty | Expr::Epsilon | Expr::Atom(_) => 4,
    }
}

fn render(e: &Expr, ctx: u8, out: &mut String) {
    let wrap = level(e) < ctx;
    if wrap {
        out.push('(');
    }
    match e {
        Expr::Empty => out.push_str("\\0"),
        Expr::Epsilon => out.push_str("\\e"),
        Expr::Atom(c) => {
            if RESERVED.contains(c) {
                out.push('\\');
            }
            out.push(*c);
        }
        Expr::Union(l, r) => {
            render(l, 0, out);
            out.push('|');
            render(r, 1, out);
        }
        Expr::Cat(l, r) => {
            render(l, 1, out);
            render(r, 2, out);
        }
        Expr::Not(x) => {
            out.push('!');
            render(x, 2, out);
        }
        Expr::Star(x) => {
            render(x, 3, out);
            out.push('*');
        }
    }
    if wrap {
        out.push(')');
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ab() -> Alphabet {
        Alphabet::parse("abc").unwrap()
    }

    #[test]
    fn precedence() {
        let e = parse_expr("(ab)*|c", &ab()).unwrap();
        let want = Expr::union(Expr::star(Expr::cat(Expr::atom('a'), Expr::atom('b'))), Expr::atom('c'));
        assert_eq!(e, want);
    }

    #[test]
    fn escapes() {
        let parens = Alphabet::parse("()").unwrap();
        assert_eq!(parse_expr("!\\(", &parens).unwrap(), Expr::not(Expr::atom('(')));
        assert_eq!(parse_expr("\\0", &parens).unwrap(), Expr::Empty);
        assert_eq!(parse_expr("\\e", &parens).unwrap(), Expr::Epsilon);
        assert_eq!(render_expr(&Expr::cat(Expr::atom('('), Expr::atom(')'))), "\\(\\)");
    }

    #[test]
    fn union_left_associative() {
        let e = parse_expr("a|b|c", &ab()).unwrap();
        assert!(matches!(&e, Expr::Union(l, _) if matches!(**l, Expr::Union(..))));
        assert_eq!(render_expr(&e), "a|b|c");
        let right = Expr::union(Expr::atom('a'), Expr::union(Expr::atom('b'), Expr::atom('c')));
        assert_eq!(render_expr(&right), "a|(b|c)");
    }

    #[test]
    fn complement_binds_looser_than_star() {
        let e = parse_expr("!a*", &ab()).unwrap();
        assert_eq!(e, Expr::not(Expr::star(Expr::atom('a'))));
        assert_eq!(render_expr(&Expr::star(Expr::not(Expr::atom('a')))), "(!a)*");
        let e = parse_expr("a!bc", &ab()).unwrap();
        assert_eq!(e, Expr::cat(Expr::cat(Expr::atom('a'), Expr::not(Expr::atom('b'))), Expr::atom('c')));
    }

    #[test]
    fn intersection_sugar() {
        let e = parse_expr("a&b", &ab()).unwrap();
        assert_eq!(e, Expr::intersect(Expr::atom('a'), Expr::atom('b')));
        assert_eq!(render_expr(&e), "!(!a|!b)");
    }

    #[test]
    fn errors() {
        assert!(matches!(parse_expr("a|", &ab()), Err(ExprError::Syntax { .. })));
        assert!(matches!(parse_expr("(a", &ab()), Err(ExprError::Syntax { .. })));
        assert!(matches!(parse_expr("", &ab()), Err(ExprError::Syntax { .. })));
        assert!(matches!(parse_expr("*a", &ab()), Err(ExprError::Syntax { .. })));
        assert!(matches!(parse_expr("ad", &ab()), Err(ExprError::UnknownSymbol { symbol: 'd', pos: 1 })));
        assert!(matches!(parse_expr("\\q", &ab()), Err(ExprError::Syntax { .. })));
        assert!(matches!(parse_expr("(", &Alphabet::parse("()").unwrap()), Err(ExprError::Syntax { .. })));
    }

    fn arb_expr() -> impl Strategy<Value = Expr> {
        let leaf = prop_oneof![
            Just(Expr::Empty),
            Just(Expr::Epsilon),
            Just(Expr::Atom('(')),
            Just(Expr::Atom('a')),
            Just(Expr::Atom('|')),
        ];
        leaf.prop_recursive(5, 32, 2, |inner| {
            prop_oneof![
                (inner.clone(), inner.clone()).prop_map(|(l, r)| Expr::union(l, r)),
                (inner.clone(), inner.clone()).prop_map(|(l, r)| Expr::cat(l, r)),
                inner.clone().prop_map(Expr::star),
                inner.prop_map(Expr::not),
            ]
        })
    }

    proptest! {
        #[test]
        fn parse_inverts_render(e in arb_expr()) {
            let sigma = Alphabet::parse("(a|").unwrap();
            let text = render_expr(&e);
            prop_assert_eq!(parse_expr(&text, &sigma).unwrap(), e.clone());
            // rendering is canonical
            prop_assert_eq!(render_expr(&parse_expr(&text, &sigma).unwrap()), text);
        }
    }
}

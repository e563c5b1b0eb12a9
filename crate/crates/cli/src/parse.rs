//! Parser and printer for the tangle expression language.
//!
//! Grammar:
//!
//! ```text
//! expr    := primary (infix primary)*          (left associative)
//! infix   := '+h' | '+v' | '.+h' | '.+v' | 'o'
//! primary := atom postfix*
//! postfix := '*' | '-' | 'r1' | 'r2' | 'R' | 'hf' | 'vf'
//! atom    := 't1' | 't2' | 'I'
//!          | 'h' '(' int ')' | 'v' '(' int ')'
//!          | 'J' '(' int ',' int ',' int ',' int ')'
//!          | 'fill' '(' expr ';' expr (',' expr)* ')'
//!          | 'num' '(' expr ')' | 'den' '(' expr ')'
//!          | '(' expr ')'
//! ```
//!
//! `a o b` puts `b` inside `a`. Postfix operators bind tightest.

use std::fmt;

use tanglekit_core::expr::TangleExpr;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "parse error at {}:{}: {}", self.line, self.col, self.message)
    }
}

impl std::error::Error for ParseError {}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(i64),
    LParen,
    RParen,
    Comma,
    Semi,
    Star,
    Minus,
    PlusH,
    PlusV,
    DotPlusH,
    DotPlusV,
}

#[derive(Clone, Debug)]
struct Spanned {
    tok: Tok,
    line: usize,
    col: usize,
}

fn err(line: usize, col: usize, message: impl Into<String>) -> ParseError {
    ParseError { line, col, message: message.into() }
}

fn lex(src: &str) -> Result<Vec<Spanned>, ParseError> {
    let mut out = Vec::new();
    let mut line = 1usize;
    let mut col = 1usize;
    let mut it = src.chars().peekable();
    while let Some(&c) = it.peek() {
        let (l0, c0) = (line, col);
        let bump = |it: &mut std::iter::Peekable<std::str::Chars>, col: &mut usize| {
            it.next();
            *col += 1;
        };
        match c {
            '\n' => {
                it.next();
                line += 1;
                col = 1;
            }
            c if c.is_whitespace() => bump(&mut it, &mut col),
            '(' => {
                bump(&mut it, &mut col);
                out.push(Spanned { tok: Tok::LParen, line: l0, col: c0 });
            }
            ')' => {
                bump(&mut it, &mut col);
                out.push(Spanned { tok: Tok::RParen, line: l0, col: c0 });
            }
            ',' => {
                bump(&mut it, &mut col);
                out.push(Spanned { tok: Tok::Comma, line: l0, col: c0 });
            }
            ';' => {
                bump(&mut it, &mut col);
                out.push(Spanned { tok: Tok::Semi, line: l0, col: c0 });
            }
            '*' => {
                bump(&mut it, &mut col);
                out.push(Spanned { tok: Tok::Star, line: l0, col: c0 });
            }
            '-' => {
                bump(&mut it, &mut col);
                out.push(Spanned { tok: Tok::Minus, line: l0, col: c0 });
            }
            '+' => {
                bump(&mut it, &mut col);
                match it.peek() {
                    Some('h') => {
                        bump(&mut it, &mut col);
                        out.push(Spanned { tok: Tok::PlusH, line: l0, col: c0 });
                    }
                    Some('v') => {
                        bump(&mut it, &mut col);
                        out.push(Spanned { tok: Tok::PlusV, line: l0, col: c0 });
                    }
                    _ => return Err(err(l0, c0, "expected '+h' or '+v'")),
                }
            }
            '.' => {
                bump(&mut it, &mut col);
                if it.peek() != Some(&'+') {
                    return Err(err(l0, c0, "expected '.+h' or '.+v'"));
                }
                bump(&mut it, &mut col);
                match it.peek() {
                    Some('h') => {
                        bump(&mut it, &mut col);
                        out.push(Spanned { tok: Tok::DotPlusH, line: l0, col: c0 });
                    }
                    Some('v') => {
                        bump(&mut it, &mut col);
                        out.push(Spanned { tok: Tok::DotPlusV, line: l0, col: c0 });
                    }
                    _ => return Err(err(l0, c0, "expected '.+h' or '.+v'")),
                }
            }
            c if c.is_ascii_digit() => {
                let mut n: i64 = 0;
                while let Some(&d) = it.peek() {
                    if let Some(v) = d.to_digit(10) {
                        n = n
                            .checked_mul(10)
                            .and_then(|n| n.checked_add(v as i64))
                            .ok_or_else(|| err(l0, c0, "integer literal too large"))?;
                        bump(&mut it, &mut col);
                    } else {
                        break;
                    }
                }
                out.push(Spanned { tok: Tok::Int(n), line: l0, col: c0 });
            }
            c if c.is_ascii_alphabetic() => {
                let mut s = String::new();
                while let Some(&d) = it.peek() {
                    if d.is_ascii_alphanumeric() {
                        s.push(d);
                        bump(&mut it, &mut col);
                    } else {
                        break;
                    }
                }
                out.push(Spanned { tok: Tok::Ident(s), line: l0, col: c0 });
            }
            other => return Err(err(l0, c0, format!("unexpected character '{}'", other))),
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Spanned> {
        self.toks.get(self.pos)
    }

    fn next(&mut self) -> Option<Spanned> {
        let t = self.toks.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn here(&self) -> (usize, usize) {
        match self.peek() {
            Some(s) => (s.line, s.col),
            None => self
                .toks
                .last()
                .map(|s| (s.line, s.col + 1))
                .unwrap_or((1, 1)),
        }
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<(), ParseError> {
        let (l, c) = self.here();
        match self.next() {
            Some(s) if s.tok == tok => Ok(()),
            _ => Err(err(l, c, format!("expected {}", what))),
        }
    }

    fn int(&mut self) -> Result<i64, ParseError> {
        let (l, c) = self.here();
        match self.next().map(|s| s.tok) {
            Some(Tok::Int(n)) => Ok(n),
            Some(Tok::Minus) => match self.next().map(|s| s.tok) {
                Some(Tok::Int(n)) => {
                    n.checked_neg().ok_or_else(|| err(l, c, "integer literal too large"))
                }
                _ => Err(err(l, c, "expected integer")),
            },
            _ => Err(err(l, c, "expected integer")),
        }
    }

    fn expr(&mut self) -> Result<TangleExpr, ParseError> {
        let mut lhs = self.primary()?;
        loop {
            let op = match self.peek().map(|s| &s.tok) {
                Some(Tok::PlusH) => Some(0),
                Some(Tok::PlusV) => Some(1),
                Some(Tok::DotPlusH) => Some(2),
                Some(Tok::DotPlusV) => Some(3),
                Some(Tok::Ident(id)) if id == "o" => Some(4),
                _ => None,
            };
            let Some(op) = op else { break };
            self.next();
            let rhs = self.primary()?;
            lhs = match op {
                0 => TangleExpr::ConnectH(Box::new(lhs), Box::new(rhs)),
                1 => TangleExpr::ConnectV(Box::new(lhs), Box::new(rhs)),
                2 => TangleExpr::InnerH(Box::new(lhs), Box::new(rhs)),
                3 => TangleExpr::InnerV(Box::new(lhs), Box::new(rhs)),
                _ => TangleExpr::Compose(Box::new(lhs), Box::new(rhs)),
            };
        }
        Ok(lhs)
    }

    fn primary(&mut self) -> Result<TangleExpr, ParseError> {
        let mut e = self.atom()?;
        loop {
            match self.peek().map(|s| &s.tok) {
                Some(Tok::Star) => {
                    self.next();
                    e = TangleExpr::Mirror(Box::new(e));
                }
                Some(Tok::Minus) => {
                    self.next();
                    e = TangleExpr::Swap(Box::new(e));
                }
                Some(Tok::Ident(id)) => {
                    let wrapped = match id.as_str() {
                        "r1" => Some(TangleExpr::R1 as fn(_) -> _),
                        "r2" => Some(TangleExpr::R2 as fn(_) -> _),
                        "R" => Some(TangleExpr::Rotate as fn(_) -> _),
                        "hf" => Some(TangleExpr::HFlip as fn(_) -> _),
                        "vf" => Some(TangleExpr::VFlip as fn(_) -> _),
                        _ => None,
                    };
                    match wrapped {
                        Some(f) => {
                            self.next();
                            e = f(Box::new(e));
                        }
                        None => break,
                    }
                }
                _ => break,
            }
        }
        Ok(e)
    }

    fn atom(&mut self) -> Result<TangleExpr, ParseError> {
        let (l, c) = self.here();
        match self.next().map(|s| s.tok) {
            Some(Tok::LParen) => {
                let e = self.expr()?;
                self.expect(Tok::RParen, "')'")?;
                Ok(e)
            }
            Some(Tok::Ident(id)) => match id.as_str() {
                "t1" => Ok(TangleExpr::T1),
                "t2" => Ok(TangleExpr::T2),
                "I" => Ok(TangleExpr::Identity),
                "h" => {
                    self.expect(Tok::LParen, "'(' after 'h'")?;
                    let p = self.int()?;
                    self.expect(Tok::RParen, "')'")?;
                    Ok(TangleExpr::HTwist(p))
                }
                "v" => {
                    self.expect(Tok::LParen, "'(' after 'v'")?;
                    let q = self.int()?;
                    self.expect(Tok::RParen, "')'")?;
                    Ok(TangleExpr::VTwist(q))
                }
                "J" => {
                    self.expect(Tok::LParen, "'(' after 'J'")?;
                    let p1 = self.int()?;
                    self.expect(Tok::Comma, "','")?;
                    let p2 = self.int()?;
                    self.expect(Tok::Comma, "','")?;
                    let p3 = self.int()?;
                    self.expect(Tok::Comma, "','")?;
                    let p4 = self.int()?;
                    self.expect(Tok::RParen, "')'")?;
                    Ok(TangleExpr::J(p1, p2, p3, p4))
                }
                "fill" => {
                    self.expect(Tok::LParen, "'(' after 'fill'")?;
                    let t = self.expr()?;
                    self.expect(Tok::Semi, "';' between target and fills")?;
                    let mut fills = vec![self.expr()?];
                    while self.peek().map(|s| &s.tok) == Some(&Tok::Comma) {
                        self.next();
                        fills.push(self.expr()?);
                    }
                    self.expect(Tok::RParen, "')'")?;
                    Ok(TangleExpr::Fill(Box::new(t), fills))
                }
                "num" => {
                    self.expect(Tok::LParen, "'(' after 'num'")?;
                    let e = self.expr()?;
                    self.expect(Tok::RParen, "')'")?;
                    Ok(TangleExpr::Num(Box::new(e)))
                }
                "den" => {
                    self.expect(Tok::LParen, "'(' after 'den'")?;
                    let e = self.expr()?;
                    self.expect(Tok::RParen, "')'")?;
                    Ok(TangleExpr::Den(Box::new(e)))
                }
                other => Err(err(l, c, format!("unknown name '{}'", other))),
            },
            Some(t) => Err(err(l, c, format!("unexpected token {:?}", t))),
            None => Err(err(l, c, "unexpected end of input")),
        }
    }
}

pub fn parse_expr(src: &str) -> Result<TangleExpr, ParseError> {
    let toks = lex(src)?;
    let mut p = Parser { toks, pos: 0 };
    let e = p.expr()?;
    if let Some(s) = p.peek() {
        return Err(err(s.line, s.col, format!("unexpected trailing token {:?}", s.tok)));
    }
    Ok(e)
}

fn is_infix(e: &TangleExpr) -> bool {
    matches!(
        e,
        TangleExpr::ConnectH(..)
            | TangleExpr::ConnectV(..)
            | TangleExpr::InnerH(..)
            | TangleExpr::InnerV(..)
            | TangleExpr::Compose(..)
    )
}

fn print_wrapped(e: &TangleExpr, out: &mut String) {
    if is_infix(e) {
        out.push('(');
        print_into(e, out);
        out.push(')');
    } else {
        print_into(e, out);
    }
}

fn print_into(e: &TangleExpr, out: &mut String) {
    use std::fmt::Write;
    match e {
        TangleExpr::T1 => out.push_str("t1"),
        TangleExpr::T2 => out.push_str("t2"),
        TangleExpr::Identity => out.push('I'),
        TangleExpr::HTwist(p) => {
            let _ = write!(out, "h({})", p);
        }
        TangleExpr::VTwist(q) => {
            let _ = write!(out, "v({})", q);
        }
        TangleExpr::J(p1, p2, p3, p4) => {
            let _ = write!(out, "J({},{},{},{})", p1, p2, p3, p4);
        }
        TangleExpr::Mirror(x) => {
            print_wrapped(x, out);
            out.push('*');
        }
        TangleExpr::Swap(x) => {
            print_wrapped(x, out);
            out.push('-');
        }
        TangleExpr::R1(x) => {
            print_wrapped(x, out);
            out.push_str(" r1");
        }
        TangleExpr::R2(x) => {
            print_wrapped(x, out);
            out.push_str(" r2");
        }
        TangleExpr::Rotate(x) => {
            print_wrapped(x, out);
            out.push_str(" R");
        }
        TangleExpr::HFlip(x) => {
            print_wrapped(x, out);
            out.push_str(" hf");
        }
        TangleExpr::VFlip(x) => {
            print_wrapped(x, out);
            out.push_str(" vf");
        }
        TangleExpr::ConnectH(a, b) => {
            print_into(a, out);
            out.push_str(" +h ");
            print_wrapped(b, out);
        }
        TangleExpr::ConnectV(a, b) => {
            print_into(a, out);
            out.push_str(" +v ");
            print_wrapped(b, out);
        }
        TangleExpr::InnerH(a, b) => {
            print_into(a, out);
            out.push_str(" .+h ");
            print_wrapped(b, out);
        }
        TangleExpr::InnerV(a, b) => {
            print_into(a, out);
            out.push_str(" .+v ");
            print_wrapped(b, out);
        }
        TangleExpr::Compose(a, b) => {
            print_into(a, out);
            out.push_str(" o ");
            print_wrapped(b, out);
        }
        TangleExpr::Fill(t, fills) => {
            out.push_str("fill(");
            print_into(t, out);
            out.push_str("; ");
            for (i, f) in fills.iter().enumerate() {
                if i > 0 {
                    out.push_str(", ");
                }
                print_into(f, out);
            }
            out.push(')');
        }
        TangleExpr::Num(x) => {
            out.push_str("num(");
            print_into(x, out);
            out.push(')');
        }
        TangleExpr::Den(x) => {
            out.push_str("den(");
            print_into(x, out);
            out.push(')');
        }
    }
}

/// Renders an expression in the surface syntax; `parse_expr` of the
/// result returns the same tree.
pub fn print_expr(e: &TangleExpr) -> String {
    let mut out = String::new();
    print_into(e, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_atoms_and_sums() {
        let e = parse_expr("h(3) +h v(2)").unwrap();
        assert_eq!(
            e,
            TangleExpr::ConnectH(
                Box::new(TangleExpr::HTwist(3)),
                Box::new(TangleExpr::VTwist(2))
            )
        );
        let e = parse_expr("num(fill(J(1,1,1,1); t1))").unwrap();
        assert!(matches!(e, TangleExpr::Num(_)));
    }

    #[test]
    fn compose_and_postfix() {
        let b = "(h(1) +v I) o (h(1) +v I)";
        let e = parse_expr(b).unwrap();
        assert!(matches!(e, TangleExpr::Compose(..)));
        let e = parse_expr("I r1 r2").unwrap();
        assert!(matches!(e, TangleExpr::R2(_)));
        // swap of a ball tangle parses but will not elaborate
        let e = parse_expr("t1* -").unwrap();
        assert!(matches!(e, TangleExpr::Swap(_)));
        assert!(e.elaborate().is_err());
    }

    #[test]
    fn negative_arguments() {
        assert_eq!(parse_expr("h(-4)").unwrap(), TangleExpr::HTwist(-4));
        assert_eq!(
            parse_expr("J(-1,2,-3,0)").unwrap(),
            TangleExpr::J(-1, 2, -3, 0)
        );
    }

    #[test]
    fn left_associativity() {
        let e = parse_expr("t1 +h t2 +h h(1)").unwrap();
        match e {
            TangleExpr::ConnectH(lhs, _) => assert!(matches!(*lhs, TangleExpr::ConnectH(..))),
            other => panic!("unexpected {:?}", other),
        }
    }

    #[test]
    fn error_positions() {
        let e = parse_expr("h(3) +x t1").unwrap_err();
        assert_eq!((e.line, e.col), (1, 6));
        let e = parse_expr("frob(2)").unwrap_err();
        assert_eq!(e.col, 1);
        let e = parse_expr("h(3").unwrap_err();
        assert!(e.message.contains("')'"));
    }

    #[test]
    fn print_parse_round_trip() {
        for src in [
            "h(3) +h v(2)",
            "(t1 +h t2)*",
            "num(fill(J(1,-1,0,2); h(3) +h t1))",
            "I r1 r2 -",
            "(h(2) +v I) o I",
            "t1 .+h I",
            "fill(I; t1)",
            "den(h(1) hf)",
        ] {
            let e = parse_expr(src).unwrap();
            let printed = print_expr(&e);
            assert_eq!(parse_expr(&printed).unwrap(), e, "{} -> {}", src, printed);
        }
    }
}

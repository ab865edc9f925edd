//! S-expression serialization of formulas.
//!
//! Grammar (UTF-8, whitespace-insensitive between tokens):
//!
//! ```text
//! formula  := atom | "(+" ws formula (ws formula)+ ")" | "(*" ws formula (ws formula)+ ")"
//! atom     := "x" digits | rational
//! rational := ["-"] digits ["/" digits]
//! ```

use crate::error::{Error, Result};
use crate::poly::VarId;
use crate::scalar::Scalar;

use super::{Formula, NodeId, NodeKind, TreeBuilder};

impl<T: Scalar> Formula<T> {
    /// Render as an s-expression, e.g. `(* (+ x1 x2) 3/2)`.
    pub fn serialize(&self) -> String {
        fn rec<T: Scalar>(f: &Formula<T>, id: NodeId, out: &mut String) {
            match f.kind(id) {
                NodeKind::Var(v) => out.push_str(&v.to_string()),
                NodeKind::Const(c) => out.push_str(&c.token()),
                NodeKind::Sum(cs) | NodeKind::Prod(cs) => {
                    let op = if matches!(f.kind(id), NodeKind::Sum(_)) {
                        '+'
                    } else {
                        '*'
                    };
                    out.push('(');
                    out.push(op);
                    for c in cs {
                        out.push(' ');
                        rec(f, *c, out);
                    }
                    out.push(')');
                }
            }
        }
        let mut out = String::new();
        rec(self, self.root(), &mut out);
        out
    }
}

struct Cursor<'a> {
    src: &'a [u8],
    pos: usize,
    line: usize,
    col: usize,
}

impl<'a> Cursor<'a> {
    fn new(src: &'a str) -> Self {
        Cursor {
            src: src.as_bytes(),
            pos: 0,
            line: 1,
            col: 1,
        }
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<u8> {
        let b = self.peek()?;
        self.pos += 1;
        if b == b'\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(b)
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(b) if b.is_ascii_whitespace()) {
            self.bump();
        }
    }

    fn error(&self, message: impl Into<String>) -> Error {
        Error::Parse {
            line: self.line,
            col: self.col,
            message: message.into(),
        }
    }

    fn take_while(&mut self, pred: impl Fn(u8) -> bool) -> String {
        let start = self.pos;
        while matches!(self.peek(), Some(b) if pred(b)) {
            self.bump();
        }
        String::from_utf8_lossy(&self.src[start..self.pos]).into_owned()
    }
}

/// Parse the s-expression grammar; `parse_formula(serialize(f)) == f`
/// structurally. Errors carry line/column and the expected token.
pub fn parse_formula<T: Scalar>(input: &str) -> Result<Formula<T>> {
    let mut cur = Cursor::new(input);
    let mut builder = TreeBuilder::new();
    cur.skip_ws();
    let root = parse_expr(&mut cur, &mut builder)?;
    cur.skip_ws();
    if cur.peek().is_some() {
        return Err(cur.error("expected end of input"));
    }
    builder.finish(root)
}

fn parse_expr<T: Scalar>(cur: &mut Cursor<'_>, builder: &mut TreeBuilder<T>) -> Result<NodeId> {
    cur.skip_ws();
    match cur.peek() {
        Some(b'(') => {
            cur.bump();
            let op = match cur.peek() {
                Some(b'+') => {
                    cur.bump();
                    b'+'
                }
                Some(b'*') => {
                    cur.bump();
                    b'*'
                }
                _ => return Err(cur.error("expected '+' or '*' after '('")),
            };
            let mut children = Vec::new();
            loop {
                cur.skip_ws();
                match cur.peek() {
                    Some(b')') => {
                        cur.bump();
                        break;
                    }
                    Some(_) => children.push(parse_expr(cur, builder)?),
                    None => return Err(cur.error("expected ')' or operand")),
                }
            }
            if children.len() < 2 {
                return Err(cur.error("sum/product needs at least two operands"));
            }
            Ok(if op == b'+' {
                builder.sum(children)
            } else {
                builder.prod(children)
            })
        }
        Some(b'x') => {
            cur.bump();
            let digits = cur.take_while(|b| b.is_ascii_digit());
            if digits.is_empty() {
                return Err(cur.error("expected digits after 'x'"));
            }
            let idx: u32 = digits
                .parse()
                .map_err(|_| cur.error(format!("variable index {digits:?} out of range")))?;
            Ok(builder.var(VarId(idx)))
        }
        Some(b) if b == b'-' || b.is_ascii_digit() => {
            let mut text = String::new();
            if b == b'-' {
                cur.bump();
                text.push('-');
            }
            let digits = cur.take_while(|c| c.is_ascii_digit());
            if digits.is_empty() {
                return Err(cur.error("expected digits in rational"));
            }
            text.push_str(&digits);
            if cur.peek() == Some(b'/') {
                cur.bump();
                let den = cur.take_while(|c| c.is_ascii_digit());
                if den.is_empty() {
                    return Err(cur.error("expected digits after '/'"));
                }
                text.push('/');
                text.push_str(&den);
            }
            let value = T::parse_token(&text)
                .ok_or_else(|| cur.error(format!("invalid rational {text:?}")))?;
            Ok(builder.constant(value))
        }
        Some(b) => Err(cur.error(format!(
            "expected '(', variable or rational, found {:?}",
            b as char
        ))),
        None => Err(cur.error("unexpected end of input")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::RingMode;
    use crate::Rat;

    #[test]
    fn atom_round_trip() {
        let f: Formula<Rat> = parse_formula("x1").unwrap();
        assert_eq!(f.serialize(), "x1");
        let f: Formula<Rat> = parse_formula("-3/2").unwrap();
        assert_eq!(f.serialize(), "-3/2");
    }

    #[test]
    fn nested_round_trip() {
        let text = "(* (+ x1 x2) 3/2)";
        let f: Formula<Rat> = parse_formula(text).unwrap();
        assert_eq!(f.serialize(), text);
        assert_eq!(f.expand(RingMode::Commutative).to_string(), "3/2*x1 + 3/2*x2");
    }

    #[test]
    fn whitespace_insensitive() {
        let f: Formula<Rat> = parse_formula("  (+\n  x1\t x2 (* 2  x3 ) )").unwrap();
        assert_eq!(f.serialize(), "(+ x1 x2 (* 2 x3))");
    }

    #[test]
    fn errors_carry_position() {
        let err = parse_formula::<Rat>("(+ x1)").unwrap_err();
        match err {
            Error::Parse { line, col, .. } => {
                assert_eq!(line, 1);
                assert!(col >= 6);
            }
            other => panic!("unexpected error {other:?}"),
        }
        let err = parse_formula::<Rat>("(- x1 x2)").unwrap_err();
        assert!(matches!(err, Error::Parse { .. }));
        let err = parse_formula::<Rat>("(+ x1 x2) trailing").unwrap_err();
        assert!(matches!(err, Error::Parse { .. }));
        let err = parse_formula::<Rat>("x").unwrap_err();
        assert!(matches!(err, Error::Parse { .. }));
    }
}

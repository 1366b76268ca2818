//! Recursive-descent parser for lamplighter group-algebra expressions.
//!
//! ```text
//! expr   := term { ("+"|"-") term }
//! term   := factor { "*" factor }
//! factor := "-" factor | atom [ "^" sint ] { "'" }
//! atom   := rational | "t" | "a(" sint ")" | "e(" sint ")" | "f(" sint ")"
//!         | "S(" "\"" word "\"" ")" | "(" expr ")"
//! ```
//!
//! `S("w")` is the special term χ_S t^i with S the cylinder w on [−n−i+1, n]
//! for the level n given in [`ParseOptions`]; it requires `i = |w| − 2n ≥ 1`.

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::field::{Field, FieldExt};

use super::{AlgebraError, GroupAlgebraElement, LampGroupElement};

#[derive(Debug, Clone, Copy, Default)]
pub struct ParseOptions {
    /// Level used to interpret `S("...")` literals.
    pub level: Option<usize>,
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    field: &'a Field,
    opts: ParseOptions,
}

type PResult<T> = Result<T, AlgebraError>;

impl<'a> Parser<'a> {
    fn err<T>(&self, msg: impl Into<String>) -> PResult<T> {
        Err(AlgebraError::Syntax {
            pos: self.pos,
            msg: msg.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> PResult<()> {
        if self.eat(c) {
            Ok(())
        } else {
            self.err(format!("expected '{}'", c as char))
        }
    }

    fn int(&mut self) -> PResult<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected an integer");
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        Ok(s.parse().unwrap())
    }

    fn sint(&mut self) -> PResult<i64> {
        let neg = self.eat(b'-');
        let at = self.pos;
        let v = self.int()?;
        let v: i64 = match i64::try_from(v) {
            Ok(v) => v,
            Err(_) => {
                self.pos = at;
                return self.err("integer out of range");
            }
        };
        Ok(if neg { -v } else { v })
    }

    fn expr(&mut self) -> PResult<GroupAlgebraElement> {
        let mut acc = self.term()?;
        loop {
            if self.eat(b'+') {
                acc = acc.try_add(&self.term()?)?;
            } else if self.peek() == Some(b'-') {
                self.pos += 1;
                acc = acc.try_sub(&self.term()?)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> PResult<GroupAlgebraElement> {
        let mut acc = self.factor()?;
        while self.eat(b'*') {
            acc = acc.try_mul(&self.factor()?)?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> PResult<GroupAlgebraElement> {
        if self.eat(b'-') {
            return Ok(self.factor()?.neg());
        }
        let mut x = self.atom()?;
        if self.eat(b'^') {
            let e = self.sint()?;
            x = x.pow(e)?;
        }
        while self.eat(b'\'') {
            x = x.star();
        }
        Ok(x)
    }

    fn call_arg(&mut self) -> PResult<i64> {
        self.expect(b'(')?;
        let v = self.sint()?;
        self.expect(b')')?;
        Ok(v)
    }

    fn atom(&mut self) -> PResult<GroupAlgebraElement> {
        let k = self.field;
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let x = self.expr()?;
                self.expect(b')')?;
                Ok(x)
            }
            Some(c) if c.is_ascii_digit() => {
                let num = self.int()?;
                let den = if self.eat(b'/') { self.int()? } else { BigInt::from(1) };
                if den == BigInt::from(0) {
                    return self.err("zero denominator");
                }
                let q = BigRational::new(num, den);
                let c = k
                    .from_rational(&q)
                    .map_err(|_| AlgebraError::CharacteristicError(k.characteristic()))?;
                Ok(GroupAlgebraElement::scalar(c))
            }
            Some(b't') => {
                self.pos += 1;
                Ok(GroupAlgebraElement::group(LampGroupElement::t(1), k))
            }
            Some(b'a') => {
                self.pos += 1;
                let i = self.call_arg()?;
                Ok(GroupAlgebraElement::group(LampGroupElement::a(i), k))
            }
            Some(b'e') => {
                self.pos += 1;
                let i = self.call_arg()?;
                GroupAlgebraElement::e(i, k)
            }
            Some(b'f') => {
                self.pos += 1;
                let i = self.call_arg()?;
                GroupAlgebraElement::f(i, k)
            }
            Some(b'S') => {
                self.pos += 1;
                self.special_literal()
            }
            Some(c) => self.err(format!("unexpected '{}'", c as char)),
            None => self.err("unexpected end of input"),
        }
    }

    fn special_literal(&mut self) -> PResult<GroupAlgebraElement> {
        let Some(n) = self.opts.level else {
            return self.err("S(...) literals need a level");
        };
        self.expect(b'(')?;
        self.expect(b'"')?;
        let start = self.pos;
        while self.pos < self.src.len() && matches!(self.src[self.pos], b'0' | b'1') {
            self.pos += 1;
        }
        let word: Vec<u8> = self.src[start..self.pos].iter().map(|b| b - b'0').collect();
        self.expect(b'"')?;
        self.expect(b')')?;
        if word.len() < 2 * n + 1 {
            return self.err(format!("special word must have length at least {}", 2 * n + 1));
        }
        let i = (word.len() - 2 * n) as i64;
        let first = -(n as i64) - i + 1;
        let mut acc = GroupAlgebraElement::one(self.field);
        for (off, &s) in word.iter().enumerate() {
            let pos = first + off as i64;
            let g = if s == 0 {
                GroupAlgebraElement::e(pos, self.field)?
            } else {
                GroupAlgebraElement::f(pos, self.field)?
            };
            acc = acc.try_mul(&g)?;
        }
        acc.try_mul(&GroupAlgebraElement::group(LampGroupElement::t(i), self.field))
    }
}

pub fn parse_expression_with(
    text: &str,
    field: &Field,
    opts: ParseOptions,
) -> Result<GroupAlgebraElement, AlgebraError> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
        field,
        opts,
    };
    let x = p.expr()?;
    if p.peek().is_some() {
        return p.err("trailing input");
    }
    Ok(x)
}

pub fn parse_expression(text: &str, field: &Field) -> Result<GroupAlgebraElement, AlgebraError> {
    parse_expression_with(text, field, ParseOptions::default())
}

/// Parses `[[x11, x12], [x21, x22]]` (row-major), or a single expression as a 1×1 matrix.
pub fn parse_matrix(
    text: &str,
    field: &Field,
    opts: ParseOptions,
) -> Result<Vec<Vec<GroupAlgebraElement>>, AlgebraError> {
    let trimmed = text.trim();
    if !trimmed.starts_with('[') {
        return Ok(vec![vec![parse_expression_with(text, field, opts)?]]);
    }
    let inner = trimmed
        .strip_prefix('[')
        .and_then(|s| s.strip_suffix(']'))
        .ok_or(AlgebraError::Syntax {
            pos: 0,
            msg: "unbalanced brackets".into(),
        })?;
    let mut rows = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    let mut row_texts = Vec::new();
    for ch in inner.chars() {
        match ch {
            '[' if depth == 0 => {
                depth = 1;
                cur.clear();
            }
            ']' if depth == 1 => {
                depth = 0;
                row_texts.push(cur.clone());
            }
            '(' => {
                depth += 1;
                cur.push(ch);
            }
            ')' => {
                depth -= 1;
                cur.push(ch);
            }
            _ if depth >= 1 => cur.push(ch),
            ',' | ' ' | '\t' | '\n' => {}
            _ => {
                return Err(AlgebraError::Syntax {
                    pos: 0,
                    msg: format!("unexpected '{ch}' between matrix rows"),
                })
            }
        }
    }
    for rt in row_texts {
        let mut entries = Vec::new();
        let mut d = 0i32;
        let mut cell = String::new();
        for ch in rt.chars() {
            match ch {
                '(' => {
                    d += 1;
                    cell.push(ch);
                }
                ')' => {
                    d -= 1;
                    cell.push(ch);
                }
                ',' if d == 0 => {
                    entries.push(parse_expression_with(&cell, field, opts)?);
                    cell.clear();
                }
                _ => cell.push(ch),
            }
        }
        entries.push(parse_expression_with(&cell, field, opts)?);
        rows.push(entries);
    }
    let n = rows.len();
    if n == 0 || rows.iter().any(|r| r.len() != n) {
        return Err(AlgebraError::Shape(format!("matrix must be square, got {n} rows")));
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldContext;

    #[test]
    fn examples() {
        let k = FieldContext::rational();
        let s = parse_expression("(1/2)*(1+a(0))*t", &k).unwrap();
        let expect = GroupAlgebraElement::e(0, &k)
            .unwrap()
            .try_mul(&GroupAlgebraElement::group(LampGroupElement::t(1), &k))
            .unwrap();
        assert_eq!(s, expect);
        assert_eq!(parse_expression("t*t^-1", &k).unwrap(), GroupAlgebraElement::one(&k));
        assert_eq!(parse_expression("a(3)*a(3)", &k).unwrap(), GroupAlgebraElement::one(&k));
    }

    #[test]
    fn precedence() {
        let k = FieldContext::rational();
        // ^ binds before ': (t^2)' = t^-2
        assert_eq!(
            parse_expression("t^2'", &k).unwrap(),
            GroupAlgebraElement::group(LampGroupElement::t(-2), &k)
        );
        assert_eq!(
            parse_expression("-2*t + 3", &k).unwrap(),
            parse_expression("3 - (2*t)", &k).unwrap()
        );
        assert_eq!(
            parse_expression("e(1) + f(1)", &k).unwrap(),
            GroupAlgebraElement::one(&k)
        );
    }

    #[test]
    fn errors() {
        let k = FieldContext::rational();
        match parse_expression("1 + * t", &k) {
            Err(AlgebraError::Syntax { pos, .. }) => assert_eq!(pos, 4),
            other => panic!("{other:?}"),
        }
        assert!(parse_expression("(1+t)^-1", &k).is_err());
        let k2 = FieldContext::prime(2).unwrap();
        assert!(matches!(
            parse_expression("e(0)", &k2),
            Err(AlgebraError::CharacteristicError(2))
        ));
        assert!(matches!(
            parse_expression("1/2", &k2),
            Err(AlgebraError::CharacteristicError(2))
        ));
    }

    #[test]
    fn matrices() {
        let k = FieldContext::rational();
        let m = parse_matrix("[[1, t], [a(0), e(0) + f(1)]]", &k, ParseOptions::default()).unwrap();
        assert_eq!(m.len(), 2);
        assert_eq!(m[1][0], GroupAlgebraElement::group(LampGroupElement::a(0), &k));
        assert!(parse_matrix("[[1, t]]", &k, ParseOptions::default()).is_err());
    }
}

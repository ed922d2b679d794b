//! Text and JSON input/output for polynomials, Lie trees and splittings.
//!
//! Polynomial grammar: sum of terms joined by `+`/`-`; a term is
//! `coeff '*' word`, a bare `coeff`, or a bare `word`; a word is generator
//! names joined by `.`. Lie tree grammar: `tree := name | '[' tree ',' tree ']'`
//! with an optional leading minus. The ASCII `-` and the typographic `−`
//! are both accepted.

use serde_json::{json, Value};

use crate::error::LieError;
use crate::freealg::{Alphabet, NcPoly, Word};
use crate::lieops::{LieShape, LieTree};
use crate::scalar::Rational;

struct Cursor<'a> {
    chars: Vec<char>,
    pos: usize,
    src: &'a str,
}

impl<'a> Cursor<'a> {
    fn new(src: &'a str) -> Self {
        Cursor {
            chars: src.chars().collect(),
            pos: 0,
            src,
        }
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek();
        if c.is_some() {
            self.pos += 1;
        }
        c
    }

    fn err(&self, msg: &str) -> LieError {
        LieError::Parse(format!("{msg} at position {} in {:?}", self.pos, self.src))
    }

    fn eat_minus(&mut self) -> bool {
        match self.peek() {
            Some('-') | Some('−') => {
                self.pos += 1;
                true
            }
            _ => false,
        }
    }

    fn ident(&mut self) -> Option<String> {
        let start = self.pos;
        while self
            .peek()
            .is_some_and(|c| c.is_ascii_alphanumeric() || c == '_')
        {
            self.pos += 1;
        }
        (self.pos > start).then(|| self.chars[start..self.pos].iter().collect())
    }

    fn number(&mut self) -> Option<String> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.peek() == Some('/') {
            let save = self.pos;
            self.pos += 1;
            let dstart = self.pos;
            while self.peek().is_some_and(|c| c.is_ascii_digit()) {
                self.pos += 1;
            }
            if self.pos == dstart {
                self.pos = save;
            }
        }
        (self.pos > start).then(|| self.chars[start..self.pos].iter().collect())
    }
}

/// Parses the polynomial text grammar against an alphabet.
pub fn parse_poly(src: &str, alpha: &Alphabet) -> Result<NcPoly, LieError> {
    let mut cur = Cursor::new(src);
    let mut out = NcPoly::zero();
    cur.skip_ws();
    if cur.peek().is_none() {
        return Err(cur.err("empty input"));
    }
    let mut negate = cur.eat_minus();
    loop {
        cur.skip_ws();
        let (word, coeff) = parse_term(&mut cur, alpha)?;
        let c = if negate { -coeff } else { coeff };
        out.add_term(word, c);
        cur.skip_ws();
        match cur.peek() {
            None => break,
            Some('+') => {
                cur.bump();
                negate = false;
            }
            Some('-') | Some('−') => {
                cur.bump();
                negate = true;
            }
            _ => return Err(cur.err("expected '+' or '-'")),
        }
    }
    Ok(out)
}

fn parse_term(cur: &mut Cursor, alpha: &Alphabet) -> Result<(Word, Rational), LieError> {
    cur.skip_ws();
    let mut coeff = Rational::one();
    let mut have_coeff = false;
    if cur.peek().is_some_and(|c| c.is_ascii_digit()) {
        let num = cur.number().unwrap();
        coeff = num.parse()?;
        have_coeff = true;
        cur.skip_ws();
        if cur.peek() == Some('*') {
            cur.bump();
            cur.skip_ws();
        } else {
            // bare rational: the unit monomial
            return Ok((Word::empty(), coeff));
        }
    }
    let mut letters = Vec::new();
    loop {
        let Some(name) = cur.ident() else {
            if letters.is_empty() && have_coeff {
                return Ok((Word::empty(), coeff));
            }
            return Err(cur.err("expected generator name"));
        };
        if name == "1" && letters.is_empty() {
            return Ok((Word::empty(), coeff));
        }
        let g = alpha
            .resolve(&name)
            .ok_or_else(|| cur.err(&format!("unknown generator {name:?}")))?;
        letters.push(g);
        cur.skip_ws();
        if cur.peek() == Some('.') {
            cur.bump();
            cur.skip_ws();
        } else {
            break;
        }
    }
    Ok((Word(letters), coeff))
}

/// Parses the Lie tree grammar: `name | '[' tree ',' tree ']'`, optional
/// leading minus.
pub fn parse_lie_tree(src: &str, alpha: &Alphabet) -> Result<LieTree, LieError> {
    let mut cur = Cursor::new(src);
    let tree = parse_tree_inner(&mut cur, alpha)?;
    cur.skip_ws();
    if cur.peek().is_some() {
        return Err(cur.err("trailing input"));
    }
    Ok(tree)
}

fn parse_tree_inner(cur: &mut Cursor, alpha: &Alphabet) -> Result<LieTree, LieError> {
    cur.skip_ws();
    let neg = cur.eat_minus();
    cur.skip_ws();
    let tree = match cur.peek() {
        Some('[') => {
            cur.bump();
            let left = parse_tree_inner(cur, alpha)?;
            cur.skip_ws();
            if cur.peek() != Some(',') {
                return Err(cur.err("expected ','"));
            }
            cur.bump();
            let right = parse_tree_inner(cur, alpha)?;
            cur.skip_ws();
            if cur.peek() != Some(']') {
                return Err(cur.err("expected ']'"));
            }
            cur.bump();
            LieTree::bracket(left, right)
        }
        _ => {
            let name = cur.ident().ok_or_else(|| cur.err("expected name or '['"))?;
            let g = alpha
                .resolve(&name)
                .ok_or_else(|| cur.err(&format!("unknown generator {name:?}")))?;
            LieTree {
                sign: 1,
                shape: LieShape::Leaf(g),
            }
        }
    };
    Ok(if neg { tree.negated() } else { tree })
}

/// Accepts either a polynomial or a bracketed Lie tree (expanded on
/// ingestion), the CLI's universal input form.
pub fn parse_poly_or_tree(src: &str, alpha: &Alphabet) -> Result<NcPoly, LieError> {
    let trimmed = src.trim();
    if trimmed.starts_with('[')
        || (trimmed.starts_with(['-', '−']) && trimmed[1..].trim_start().starts_with('['))
    {
        Ok(parse_lie_tree(trimmed, alpha)?.expand())
    } else {
        parse_poly(trimmed, alpha)
    }
}

/// `{"vars": k, "terms": [{"c": "p/q", "w": [i1,...]}]}` with 1-based
/// generator indices.
pub fn poly_to_json(p: &NcPoly, vars: usize) -> Value {
    let terms: Vec<Value> = p
        .terms()
        .map(|(w, c)| {
            json!({
                "c": c.to_string(),
                "w": w.0.iter().map(|&g| g as usize + 1).collect::<Vec<_>>(),
            })
        })
        .collect();
    json!({ "vars": vars, "terms": terms })
}

pub fn poly_from_json(v: &Value) -> Result<(NcPoly, usize), LieError> {
    let vars = v
        .get("vars")
        .and_then(Value::as_u64)
        .ok_or_else(|| LieError::Parse("missing \"vars\"".into()))? as usize;
    let terms = v
        .get("terms")
        .and_then(Value::as_array)
        .ok_or_else(|| LieError::Parse("missing \"terms\"".into()))?;
    let mut p = NcPoly::zero();
    for t in terms {
        let c: Rational = t
            .get("c")
            .and_then(Value::as_str)
            .ok_or_else(|| LieError::Parse("missing \"c\"".into()))?
            .parse()?;
        let w = t
            .get("w")
            .and_then(Value::as_array)
            .ok_or_else(|| LieError::Parse("missing \"w\"".into()))?;
        let mut letters = Vec::with_capacity(w.len());
        for i in w {
            let i = i
                .as_u64()
                .ok_or_else(|| LieError::Parse("bad letter index".into()))? as usize;
            if i < 1 || i > vars {
                return Err(LieError::BadGenerator(i, vars));
            }
            letters.push((i - 1) as u8);
        }
        p.add_term(Word(letters), c);
    }
    Ok((p, vars))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freealg::Gen;

    #[test]
    fn poly_text_roundtrip() {
        let alpha = Alphabet::xy();
        let p = parse_poly("X + Y + 1/2*X.Y - 1/2*Y.X", &alpha).unwrap();
        assert_eq!(p.display(&alpha), "X + Y + 1/2*X.Y - 1/2*Y.X");
        let again = parse_poly(&p.display(&alpha), &alpha).unwrap();
        assert_eq!(again, p);
    }

    #[test]
    fn poly_text_forms() {
        let alpha = Alphabet::new(3);
        assert_eq!(
            parse_poly("X1", &alpha).unwrap(),
            NcPoly::gen(0)
        );
        assert_eq!(
            parse_poly("-X2 + 3*X1.X3", &alpha).unwrap().coeff(&Word(vec![0, 2])),
            Rational::from_int(3)
        );
        assert_eq!(parse_poly("2/3", &alpha).unwrap().constant_term(), Rational::new(2, 3));
        assert!(parse_poly("X9", &alpha).is_err());
        assert!(parse_poly("X1 +", &alpha).is_err());
    }

    #[test]
    fn tree_text() {
        let alpha = Alphabet::new(4);
        let t = parse_lie_tree("-[[X1,X3],[X2,X4]]", &alpha).unwrap();
        assert_eq!(t.sign, -1);
        assert_eq!(t.degree(), 4);
        assert_eq!(t.display(&alpha), "-[[X1,X3],[X2,X4]]");
        // inner minus folds into the global sign
        let t2 = parse_lie_tree("[[X1,X3],-[X2,X4]]", &alpha).unwrap();
        assert_eq!(t2.expand(), t.expand());
    }

    #[test]
    fn json_roundtrip() {
        let alpha = Alphabet::xy();
        let p = parse_poly("1/2*X.Y - 1/2*Y.X + 7", &alpha).unwrap();
        let v = poly_to_json(&p, 2);
        let (q, vars) = poly_from_json(&v).unwrap();
        assert_eq!(q, p);
        assert_eq!(vars, 2);
    }

    #[test]
    fn poly_or_tree() {
        let alpha = Alphabet::xy();
        let from_tree = parse_poly_or_tree("[X,Y]", &alpha).unwrap();
        let from_poly = parse_poly_or_tree("X.Y - Y.X", &alpha).unwrap();
        assert_eq!(from_tree, from_poly);
        let g: Gen = 0;
        assert_eq!(parse_poly_or_tree("X", &alpha).unwrap(), NcPoly::gen(g));
    }
}

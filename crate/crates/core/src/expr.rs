//! Textual ring expressions and element literals.
//!
//! ```text
//! expr := "Z" int
//!       | "prod(" expr ("," expr)+ ")"
//!       | "M" int "(" expr ")" | "T" int "(" expr ")"
//!       | "corner(" expr "," elem ")"
//!       | "quot(" expr "," elem ("," elem)* ")"
//!       | "gen(" expr "," elem ")"
//! elem := int | "[" row ("," row)* "]" | "(" elem ("," elem)* ")"
//! row  := "[" elem ("," elem)* "]"
//! ```
//!
//! Whitespace between tokens is ignored. An integer literal denotes its image
//! `m * 1` in any ring; matrix literals list full rows (triangular rings
//! included, with zero entries below the diagonal); tuples are product
//! elements.

use std::fmt;

use thiserror::Error;

use crate::ring::{Construction, Elem, FiniteRing, RingError, RingFactory};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum RingExpr {
    Zmod(usize),
    Product(Vec<RingExpr>),
    Matrix(usize, Box<RingExpr>),
    Triangular(usize, Box<RingExpr>),
    Corner(Box<RingExpr>, ElemLit),
    Quotient(Box<RingExpr>, Vec<ElemLit>),
    Subring(Box<RingExpr>, ElemLit),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ElemLit {
    Int(i64),
    Matrix(Vec<Vec<ElemLit>>),
    Tuple(Vec<ElemLit>),
}

impl fmt::Display for RingExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingExpr::Zmod(n) => write!(f, "Z{n}"),
            RingExpr::Product(fs) => {
                f.write_str("prod(")?;
                write_list(f, fs)?;
                f.write_str(")")
            }
            RingExpr::Matrix(k, b) => write!(f, "M{k}({b})"),
            RingExpr::Triangular(k, b) => write!(f, "T{k}({b})"),
            RingExpr::Corner(b, e) => write!(f, "corner({b},{e})"),
            RingExpr::Quotient(b, gens) => {
                write!(f, "quot({b},")?;
                write_list(f, gens)?;
                f.write_str(")")
            }
            RingExpr::Subring(b, e) => write!(f, "gen({b},{e})"),
        }
    }
}

impl fmt::Display for ElemLit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ElemLit::Int(m) => write!(f, "{m}"),
            ElemLit::Tuple(items) => {
                f.write_str("(")?;
                write_list(f, items)?;
                f.write_str(")")
            }
            ElemLit::Matrix(rows) => {
                f.write_str("[")?;
                for (i, row) in rows.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    f.write_str("[")?;
                    write_list(f, row)?;
                    f.write_str("]")?;
                }
                f.write_str("]")
            }
        }
    }
}

fn write_list<T: fmt::Display>(f: &mut fmt::Formatter<'_>, items: &[T]) -> fmt::Result {
    for (i, item) in items.iter().enumerate() {
        if i > 0 {
            f.write_str(",")?;
        }
        write!(f, "{item}")?;
    }
    Ok(())
}

/// Syntax error at a byte offset of the input.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{message} at byte {offset}")]
pub struct ParseError {
    pub offset: usize,
    pub message: String,
}

/// Bounds that keep hostile input from exhausting the stack or memory.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ParseLimits {
    pub max_depth: usize,
    pub max_arity: usize,
    pub max_len: usize,
}

impl Default for ParseLimits {
    fn default() -> Self {
        ParseLimits {
            max_depth: 32,
            max_arity: 64,
            max_len: 4096,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Token {
    Ident(String),
    Int(i64),
    Sym(u8),
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    limits: ParseLimits,
    depth: usize,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str, limits: ParseLimits) -> Result<Self, ParseError> {
        if text.len() > limits.max_len {
            return Err(ParseError {
                offset: limits.max_len,
                message: format!("input longer than {} bytes", limits.max_len),
            });
        }
        Ok(Parser {
            src: text.as_bytes(),
            pos: 0,
            limits,
            depth: 0,
        })
    }

    fn error<T>(&self, offset: usize, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError {
            offset,
            message: message.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    /// Next token with its byte span, without consuming it.
    fn lex(&mut self) -> Result<Option<(usize, usize, Token)>, ParseError> {
        self.skip_ws();
        let start = self.pos;
        let Some(&c) = self.src.get(start) else {
            return Ok(None);
        };
        let mut end = start + 1;
        let token = if c.is_ascii_alphabetic() {
            while end < self.src.len() && self.src[end].is_ascii_alphabetic() {
                end += 1;
            }
            Token::Ident(String::from_utf8_lossy(&self.src[start..end]).into_owned())
        } else if c.is_ascii_digit() || c == b'-' {
            while end < self.src.len() && self.src[end].is_ascii_digit() {
                end += 1;
            }
            let text = std::str::from_utf8(&self.src[start..end]).expect("ascii");
            if text == "-" {
                return self.error(start, "expected digits after `-`");
            }
            match text.parse::<i64>() {
                Ok(v) => Token::Int(v),
                Err(_) => return self.error(start, "integer out of range"),
            }
        } else if b"(),[]".contains(&c) {
            Token::Sym(c)
        } else {
            return self.error(start, format!("unexpected character {:?}", char::from(c)));
        };
        Ok(Some((start, end, token)))
    }

    fn peek(&mut self) -> Result<Option<(usize, Token)>, ParseError> {
        Ok(self.lex()?.map(|(start, _, t)| (start, t)))
    }

    fn next(&mut self) -> Result<Option<(usize, Token)>, ParseError> {
        Ok(self.lex()?.map(|(start, end, t)| {
            self.pos = end;
            (start, t)
        }))
    }

    fn expect_sym(&mut self, sym: u8) -> Result<(), ParseError> {
        match self.next()? {
            Some((_, Token::Sym(c))) if c == sym => Ok(()),
            Some((at, _)) => self.error(at, format!("expected `{}`", char::from(sym))),
            None => self.error(
                self.src.len(),
                format!("expected `{}`, found end of input", char::from(sym)),
            ),
        }
    }

    /// Consumes `sym` if it is next.
    fn eat_sym(&mut self, sym: u8) -> Result<bool, ParseError> {
        if let Some((_, Token::Sym(c))) = self.peek()? {
            if c == sym {
                self.next()?;
                return Ok(true);
            }
        }
        Ok(false)
    }

    fn size(&mut self, what: &str) -> Result<usize, ParseError> {
        match self.next()? {
            Some((at, Token::Int(v))) => {
                if v < 1 {
                    return self.error(at, format!("{what} must be positive"));
                }
                usize::try_from(v).or_else(|_| self.error(at, format!("{what} out of range")))
            }
            Some((at, _)) => self.error(at, format!("expected {what}")),
            None => self.error(self.src.len(), format!("expected {what}, found end of input")),
        }
    }

    fn enter(&mut self, at: usize) -> Result<(), ParseError> {
        self.depth += 1;
        if self.depth > self.limits.max_depth {
            return self.error(at, format!("nesting deeper than {}", self.limits.max_depth));
        }
        Ok(())
    }

    fn leave(&mut self) {
        self.depth -= 1;
    }

    fn check_arity(&self, at: usize, n: usize) -> Result<(), ParseError> {
        if n > self.limits.max_arity {
            return self.error(at, format!("more than {} items in a list", self.limits.max_arity));
        }
        Ok(())
    }

    fn ring(&mut self) -> Result<RingExpr, ParseError> {
        let Some((at, tok)) = self.next()? else {
            return self.error(self.src.len(), "expected a ring expression, found end of input");
        };
        let Token::Ident(name) = tok else {
            return self.error(at, "expected a ring expression");
        };
        self.enter(at)?;
        let expr = match name.as_str() {
            "Z" => RingExpr::Zmod(self.size("modulus")?),
            "M" | "T" => {
                let k = self.size("dimension")?;
                self.expect_sym(b'(')?;
                let base = Box::new(self.ring()?);
                self.expect_sym(b')')?;
                if name == "M" {
                    RingExpr::Matrix(k, base)
                } else {
                    RingExpr::Triangular(k, base)
                }
            }
            "prod" => {
                self.expect_sym(b'(')?;
                let mut factors = vec![self.ring()?];
                while self.eat_sym(b',')? {
                    self.check_arity(self.pos, factors.len() + 1)?;
                    factors.push(self.ring()?);
                }
                self.expect_sym(b')')?;
                if factors.len() < 2 {
                    return self.error(at, "prod needs at least two factors");
                }
                RingExpr::Product(factors)
            }
            "corner" | "gen" | "quot" => {
                self.expect_sym(b'(')?;
                let base = Box::new(self.ring()?);
                self.expect_sym(b',')?;
                let mut elems = vec![self.elem()?];
                if name == "quot" {
                    while self.eat_sym(b',')? {
                        self.check_arity(self.pos, elems.len() + 1)?;
                        elems.push(self.elem()?);
                    }
                }
                self.expect_sym(b')')?;
                match name.as_str() {
                    "corner" => RingExpr::Corner(base, elems.remove(0)),
                    "gen" => RingExpr::Subring(base, elems.remove(0)),
                    _ => RingExpr::Quotient(base, elems),
                }
            }
            other => return self.error(at, format!("unknown constructor `{other}`")),
        };
        self.leave();
        Ok(expr)
    }

    fn elem(&mut self) -> Result<ElemLit, ParseError> {
        let Some((at, tok)) = self.next()? else {
            return self.error(self.src.len(), "expected an element literal, found end of input");
        };
        self.enter(at)?;
        let lit = match tok {
            Token::Int(v) => ElemLit::Int(v),
            Token::Sym(b'(') => ElemLit::Tuple(self.elem_list(b')')?),
            Token::Sym(b'[') => {
                let mut rows = Vec::new();
                loop {
                    self.check_arity(self.pos, rows.len() + 1)?;
                    self.expect_sym(b'[')?;
                    rows.push(self.elem_list(b']')?);
                    if !self.eat_sym(b',')? {
                        break;
                    }
                }
                self.expect_sym(b']')?;
                ElemLit::Matrix(rows)
            }
            _ => return self.error(at, "expected an element literal"),
        };
        self.leave();
        Ok(lit)
    }

    /// Comma-separated elements up to and including `close`.
    fn elem_list(&mut self, close: u8) -> Result<Vec<ElemLit>, ParseError> {
        let mut items = vec![self.elem()?];
        while self.eat_sym(b',')? {
            self.check_arity(self.pos, items.len() + 1)?;
            items.push(self.elem()?);
        }
        self.expect_sym(close)?;
        Ok(items)
    }

    fn finish(&mut self) -> Result<(), ParseError> {
        match self.peek()? {
            None => Ok(()),
            Some((at, _)) => self.error(at, "unexpected trailing input"),
        }
    }
}

pub fn parse_ring_expr(text: &str) -> Result<RingExpr, ParseError> {
    parse_ring_expr_with(text, ParseLimits::default())
}

pub fn parse_ring_expr_with(text: &str, limits: ParseLimits) -> Result<RingExpr, ParseError> {
    let mut p = Parser::new(text, limits)?;
    let e = p.ring()?;
    p.finish()?;
    Ok(e)
}

pub fn parse_elem_literal(text: &str) -> Result<ElemLit, ParseError> {
    let mut p = Parser::new(text, ParseLimits::default())?;
    let e = p.elem()?;
    p.finish()?;
    Ok(e)
}

/// Error in a corpus file, located by 1-based line number.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {error}")]
pub struct CorpusError {
    pub line: usize,
    pub error: ParseError,
}

/// One ring expression per line; blank lines and `#` comments are skipped.
pub fn parse_corpus(text: &str) -> Result<Vec<RingExpr>, CorpusError> {
    text.lines()
        .enumerate()
        .filter_map(|(i, line)| {
            let body = line.split('#').next().unwrap_or("").trim();
            (!body.is_empty()).then(|| parse_ring_expr(body).map_err(|error| CorpusError { line: i + 1, error }))
        })
        .collect()
}

/// A literal that does not denote an element of the given ring.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("literal `{literal}` {reason}")]
pub struct LiteralError {
    pub literal: String,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BuildError {
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error(transparent)]
    Literal(#[from] LiteralError),
}

pub fn build(expr: &RingExpr, factory: &RingFactory) -> Result<FiniteRing, BuildError> {
    Ok(match expr {
        RingExpr::Zmod(n) => factory.zmod(*n)?,
        RingExpr::Product(fs) => {
            let rings = fs.iter().map(|f| build(f, factory)).collect::<Result<Vec<_>, _>>()?;
            factory.product(&rings)?
        }
        RingExpr::Matrix(k, b) => factory.matrix(*k, &build(b, factory)?)?,
        RingExpr::Triangular(k, b) => factory.triangular(*k, &build(b, factory)?)?,
        RingExpr::Corner(b, e) => {
            let base = build(b, factory)?;
            let e = resolve_literal(&base, e)?;
            factory.corner(&base, e)?
        }
        RingExpr::Quotient(b, gens) => {
            let base = build(b, factory)?;
            let gens = gens
                .iter()
                .map(|g| resolve_literal(&base, g))
                .collect::<Result<Vec<_>, _>>()?;
            factory.quotient_central(&base, &gens)?
        }
        RingExpr::Subring(b, e) => {
            let base = build(b, factory)?;
            let e = resolve_literal(&base, e)?;
            factory.subring_generated(&base, e)?
        }
    })
}

/// Parses and builds in one step.
pub fn build_str(text: &str, factory: &RingFactory) -> Result<FiniteRing, ExprError> {
    Ok(build(&parse_ring_expr(text)?, factory)?)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExprError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Build(#[from] BuildError),
}

fn mismatch(lit: &ElemLit, reason: impl Into<String>) -> LiteralError {
    LiteralError {
        literal: lit.to_string(),
        reason: reason.into(),
    }
}

/// The element a literal denotes in `ring`.
pub fn resolve_literal(ring: &FiniteRing, lit: &ElemLit) -> Result<Elem, LiteralError> {
    if let ElemLit::Int(m) = lit {
        return Ok(ring.int_image(*m));
    }
    match ring.construction() {
        Construction::Zmod { .. } => Err(mismatch(lit, "is not an integer")),
        Construction::Product { factors } => {
            let ElemLit::Tuple(items) = lit else {
                return Err(mismatch(lit, "is not a tuple"));
            };
            if items.len() != factors.len() {
                return Err(mismatch(lit, format!("needs {} components", factors.len())));
            }
            let parts = factors
                .iter()
                .zip(items)
                .map(|(f, item)| resolve_literal(f, item))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(ring.from_digits(&parts).expect("components resolved in their factors"))
        }
        Construction::Matrix { dim, base } | Construction::Triangular { dim, base } => {
            let ElemLit::Matrix(rows) = lit else {
                return Err(mismatch(lit, "is not a matrix"));
            };
            let k = *dim;
            if rows.len() != k || rows.iter().any(|r| r.len() != k) {
                return Err(mismatch(lit, format!("is not {k}x{k}")));
            }
            let triangular = matches!(ring.construction(), Construction::Triangular { .. });
            let mut entries = Vec::new();
            for (i, row) in rows.iter().enumerate() {
                for (j, item) in row.iter().enumerate() {
                    let v = resolve_literal(base, item)?;
                    if !triangular || j >= i {
                        entries.push(v);
                    } else if v != base.zero() {
                        return Err(mismatch(lit, "has a nonzero entry below the diagonal"));
                    }
                }
            }
            Ok(ring.from_digits(&entries).expect("entries resolved in the base"))
        }
        Construction::Corner { base, .. } | Construction::Subring { base, .. } => {
            let b = resolve_literal(base, lit)?;
            ring.from_base(b).ok_or_else(|| mismatch(lit, "is not in the subring"))
        }
        Construction::Quotient { base, .. } => {
            let b = resolve_literal(base, lit)?;
            Ok(ring.from_base(b).expect("projection is total"))
        }
    }
}

/// Canonical literal of an element; it resolves back to the same element.
pub fn format_elem(ring: &FiniteRing, e: Elem) -> ElemLit {
    assert!(ring.contains(e), "element belongs to a different ring");
    match ring.construction() {
        Construction::Zmod { .. } => ElemLit::Int(e.index() as i64),
        Construction::Product { factors } => {
            let parts = ring.digits(e).expect("tuple ring");
            ElemLit::Tuple(factors.iter().zip(parts).map(|(f, p)| format_elem(f, p)).collect())
        }
        Construction::Matrix { dim, base } => {
            let entries = ring.digits(e).expect("tuple ring");
            ElemLit::Matrix(
                entries
                    .chunks(*dim)
                    .map(|row| row.iter().map(|&x| format_elem(base, x)).collect())
                    .collect(),
            )
        }
        Construction::Triangular { dim, base } => {
            let k = *dim;
            let mut entries = ring.digits(e).expect("tuple ring").into_iter();
            let zero = format_elem(base, base.zero());
            ElemLit::Matrix(
                (0..k)
                    .map(|i| {
                        (0..k)
                            .map(|j| {
                                if j < i {
                                    zero.clone()
                                } else {
                                    format_elem(base, entries.next().expect("upper entry"))
                                }
                            })
                            .collect()
                    })
                    .collect(),
            )
        }
        Construction::Corner { base, .. }
        | Construction::Subring { base, .. }
        | Construction::Quotient { base, .. } => format_elem(base, ring.to_base(e).expect("carved-out ring")),
    }
}

/// JSON form of an element: the residue for `Z/n`, otherwise its literal text.
pub fn elem_json(ring: &FiniteRing, e: Elem) -> serde_json::Value {
    match format_elem(ring, e) {
        ElemLit::Int(m) => serde_json::Value::from(m),
        lit => serde_json::Value::from(lit.to_string()),
    }
}

/// Expression that rebuilds `ring`.
pub fn ring_to_expr(ring: &FiniteRing) -> RingExpr {
    match ring.construction() {
        Construction::Zmod { modulus } => RingExpr::Zmod(*modulus),
        Construction::Product { factors } => RingExpr::Product(factors.iter().map(ring_to_expr).collect()),
        Construction::Matrix { dim, base } => RingExpr::Matrix(*dim, Box::new(ring_to_expr(base))),
        Construction::Triangular { dim, base } => RingExpr::Triangular(*dim, Box::new(ring_to_expr(base))),
        Construction::Corner { base, idempotent } => {
            RingExpr::Corner(Box::new(ring_to_expr(base)), format_elem(base, *idempotent))
        }
        Construction::Quotient { base, generators } => RingExpr::Quotient(
            Box::new(ring_to_expr(base)),
            generators.iter().map(|g| format_elem(base, *g)).collect(),
        ),
        Construction::Subring { base, generator } => {
            RingExpr::Subring(Box::new(ring_to_expr(base)), format_elem(base, *generator))
        }
    }
}

/// Canonical expression text of a ring.
pub fn ring_name(ring: &FiniteRing) -> String {
    ring_to_expr(ring).to_string()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn built(text: &str) -> FiniteRing {
        build_str(text, &RingFactory::default()).unwrap()
    }

    #[test]
    fn parses_and_sizes() {
        assert_eq!(parse_ring_expr("Z25").unwrap(), RingExpr::Zmod(25));
        assert_eq!(built("Z25").size(), 25);
        assert_eq!(built("T2(Z4)").size(), 64);
        assert_eq!(built("quot(Z90, 4)").size(), 2);
        assert_eq!(built(" prod( Z2 , Z9 ) ").size(), 18);
        assert_eq!(built("corner(T2(Z2), [[1,0],[0,0]])").size(), 2);
        assert_eq!(built("gen(T2(Z2), [[0,1],[0,0]])").size(), 4);
        assert_eq!(built("M1(Z7)").size(), 7);
    }

    #[test]
    fn canonical_text_round_trips() {
        for text in [
            "Z25",
            "prod(Z2,Z9)",
            "M2(Z3)",
            "T3(Z2)",
            "corner(M2(Z2),[[1,0],[0,0]])",
            "quot(T2(Z4),2,[[0,1],[0,0]])",
            "gen(prod(Z4,Z5),(2,3))",
        ] {
            let e = parse_ring_expr(text).unwrap();
            assert_eq!(e.to_string(), text);
        }
    }

    #[test]
    fn errors_carry_offsets() {
        let e = parse_ring_expr("prod(Z2)").unwrap_err();
        assert_eq!(e.offset, 0);
        let e = parse_ring_expr("M2(Z4").unwrap_err();
        assert_eq!(e.offset, 5);
        let e = parse_ring_expr("Z4 junk").unwrap_err();
        assert_eq!(e.offset, 3);
        let e = parse_ring_expr("Q5").unwrap_err();
        assert_eq!(e.offset, 0);
        let e = parse_ring_expr("Z0").unwrap_err();
        assert_eq!(e.offset, 1);
        let e = parse_ring_expr("Z99999999999999999999").unwrap_err();
        assert_eq!(e.message, "integer out of range");
        let deep = "M1(".repeat(40) + "Z2" + &")".repeat(40);
        assert!(parse_ring_expr(&deep).unwrap_err().message.contains("nesting"));
    }

    #[test]
    fn literals_resolve_and_format() {
        let t2 = built("T2(Z2)");
        let lit = parse_elem_literal("[[1,1],[0,0]]").unwrap();
        let e = resolve_literal(&t2, &lit).unwrap();
        assert_eq!(e.index(), 0b110);
        assert_eq!(format_elem(&t2, e), lit);
        let bad = parse_elem_literal("[[1,1],[1,0]]").unwrap();
        assert!(resolve_literal(&t2, &bad).is_err());
        let z25 = built("Z25");
        assert_eq!(resolve_literal(&z25, &ElemLit::Int(-1)).unwrap().index(), 24);
        assert!(resolve_literal(&z25, &parse_elem_literal("(1,2)").unwrap()).is_err());
        let p = built("prod(Z4,Z5)");
        let e = resolve_literal(&p, &parse_elem_literal("(3, 4)").unwrap()).unwrap();
        assert_eq!(elem_json(&p, e), serde_json::json!("(3,4)"));
        assert_eq!(elem_json(&z25, z25.int_image(7)), serde_json::json!(7));
        let g = built("gen(T2(Z2),[[0,1],[0,0]])");
        assert!(resolve_literal(&g, &parse_elem_literal("[[1,0],[0,0]]").unwrap()).is_err());
        for r in [t2, p, g, built("quot(Z90,4)"), built("corner(M2(Z3),[[1,0],[0,0]])")] {
            for e in r.elements() {
                assert_eq!(resolve_literal(&r, &format_elem(&r, e)).unwrap(), e);
            }
        }
    }

    #[test]
    fn ring_names_rebuild() {
        for text in ["quot(Z90,4)", "corner(T2(Z2),[[1,0],[0,0]])", "prod(Z2,M2(Z2))"] {
            let r = built(text);
            assert_eq!(ring_name(&r), text);
        }
    }

    #[test]
    fn corpus_files() {
        let c = parse_corpus("# rings\nZ4\n\n  T2(Z2)  # triangular\n").unwrap();
        assert_eq!(
            c,
            vec![RingExpr::Zmod(4), RingExpr::Triangular(2, Box::new(RingExpr::Zmod(2)))]
        );
        let e = parse_corpus("Z4\nprod(\n").unwrap_err();
        assert_eq!(e.line, 2);
    }
}

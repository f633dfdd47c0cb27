//! Ring-spec file parsing and the matching raw-table writer.
//!
//! A spec file holds one expression — `Z(m)`, `GF(p,n)`, `M(n, <expr>)`,
//! `T(n, <expr>)`, `sum(<expr>, ...)` — or one raw `table{ ... }` block.
//! `#` starts a comment that runs to the end of the line. Parse errors
//! carry the 1-based line and column of the offending character.

use std::fmt;

use ring_atlas::FiniteRing;

#[derive(Debug, Clone)]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: {}", self.line, self.col, self.message)
    }
}

impl std::error::Error for ParseError {}

struct Cursor<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(src: &'a str) -> Cursor<'a> {
        Cursor {
            src: src.as_bytes(),
            pos: 0,
        }
    }

    fn line_col(&self, at: usize) -> (usize, usize) {
        let mut line = 1;
        let mut col = 1;
        for &b in &self.src[..at.min(self.src.len())] {
            if b == b'\n' {
                line += 1;
                col = 1;
            } else {
                col += 1;
            }
        }
        (line, col)
    }

    fn error_at(&self, at: usize, message: impl Into<String>) -> ParseError {
        let (line, col) = self.line_col(at);
        ParseError {
            line,
            col,
            message: message.into(),
        }
    }

    fn error(&self, message: impl Into<String>) -> ParseError {
        self.error_at(self.pos, message)
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() {
            match self.src[self.pos] {
                b' ' | b'\t' | b'\r' | b'\n' => self.pos += 1,
                b'#' => {
                    while self.pos < self.src.len() && self.src[self.pos] != b'\n' {
                        self.pos += 1;
                    }
                }
                _ => break,
            }
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expect(&mut self, byte: u8) -> Result<(), ParseError> {
        self.skip_ws();
        match self.src.get(self.pos) {
            Some(&b) if b == byte => {
                self.pos += 1;
                Ok(())
            }
            Some(&b) => Err(self.error(format!(
                "expected '{}', found '{}'",
                byte as char, b as char
            ))),
            None => Err(self.error(format!("expected '{}', found end of input", byte as char))),
        }
    }

    fn eat(&mut self, byte: u8) -> bool {
        self.skip_ws();
        if self.src.get(self.pos) == Some(&byte) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn ident(&mut self) -> Result<(String, usize), ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self
            .src
            .get(self.pos)
            .is_some_and(|b| b.is_ascii_alphanumeric() || *b == b'_')
        {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.error("expected a name"));
        }
        Ok((
            String::from_utf8_lossy(&self.src[start..self.pos]).into_owned(),
            start,
        ))
    }

    fn uint(&mut self) -> Result<usize, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.src.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.error("expected a number"));
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| self.error_at(start, "number too large"))
    }

    fn at_end(&mut self) -> bool {
        self.skip_ws();
        self.pos >= self.src.len()
    }
}

/// Parses a full ring-spec source: exactly one expression, nothing after.
pub fn parse_ring_source(src: &str) -> Result<FiniteRing, ParseError> {
    let mut cur = Cursor::new(src);
    let ring = parse_expr(&mut cur)?;
    if !cur.at_end() {
        return Err(cur.error("unexpected trailing input after the expression"));
    }
    Ok(ring)
}

fn parse_expr(cur: &mut Cursor) -> Result<FiniteRing, ParseError> {
    let (name, at) = cur.ident()?;
    match name.as_str() {
        "Z" => {
            cur.expect(b'(')?;
            let m = cur.uint()?;
            cur.expect(b')')?;
            FiniteRing::zmod(m).map_err(|e| cur.error_at(at, e.to_string()))
        }
        "GF" => {
            cur.expect(b'(')?;
            let p = cur.uint()?;
            cur.expect(b',')?;
            let n = cur.uint()?;
            cur.expect(b')')?;
            FiniteRing::galois_field(p, n).map_err(|e| cur.error_at(at, e.to_string()))
        }
        "M" => {
            cur.expect(b'(')?;
            let n = cur.uint()?;
            cur.expect(b',')?;
            let base = parse_expr(cur)?;
            cur.expect(b')')?;
            FiniteRing::matrix_ring(&base, n).map_err(|e| cur.error_at(at, e.to_string()))
        }
        "T" => {
            cur.expect(b'(')?;
            let n = cur.uint()?;
            cur.expect(b',')?;
            let base = parse_expr(cur)?;
            cur.expect(b')')?;
            FiniteRing::upper_triangular(&base, n).map_err(|e| cur.error_at(at, e.to_string()))
        }
        "sum" => {
            cur.expect(b'(')?;
            let mut acc = parse_expr(cur)?;
            let mut terms = 1;
            while cur.eat(b',') {
                let next = parse_expr(cur)?;
                acc = acc
                    .direct_sum(&next)
                    .map_err(|e| cur.error_at(at, e.to_string()))?;
                terms += 1;
            }
            cur.expect(b')')?;
            if terms < 2 {
                return Err(cur.error_at(at, "sum needs at least two summands"));
            }
            Ok(acc)
        }
        "table" => parse_table(cur, at),
        other => Err(cur.error_at(
            at,
            format!("unknown constructor '{other}' (expected Z, GF, M, T, sum, or table)"),
        )),
    }
}

fn parse_table(cur: &mut Cursor, at: usize) -> Result<FiniteRing, ParseError> {
    cur.expect(b'{')?;
    let mut order: Option<usize> = None;
    let mut add: Option<Vec<Vec<usize>>> = None;
    let mut mul: Option<Vec<Vec<usize>>> = None;
    let mut one: Option<usize> = None;
    loop {
        if cur.eat(b'}') {
            break;
        }
        let (key, key_at) = cur.ident()?;
        cur.expect(b':')?;
        match key.as_str() {
            "order" => order = Some(cur.uint()?),
            "one" => one = Some(cur.uint()?),
            "add" => add = Some(parse_matrix(cur)?),
            "mul" => mul = Some(parse_matrix(cur)?),
            other => {
                return Err(cur.error_at(
                    key_at,
                    format!("unknown table field '{other}' (expected order, add, mul, one)"),
                ))
            }
        }
        if !cur.eat(b';') {
            cur.expect(b'}')?;
            break;
        }
    }
    let order = order.ok_or_else(|| cur.error_at(at, "table block is missing 'order'"))?;
    let add = add.ok_or_else(|| cur.error_at(at, "table block is missing 'add'"))?;
    let mul = mul.ok_or_else(|| cur.error_at(at, "table block is missing 'mul'"))?;
    let one = one.ok_or_else(|| cur.error_at(at, "table block is missing 'one'"))?;
    let flatten = |m: Vec<Vec<usize>>, what: &str| -> Result<Vec<u32>, ParseError> {
        if m.len() != order || m.iter().any(|row| row.len() != order) {
            return Err(cur.error_at(at, format!("{what} table must be {order} rows of {order}")));
        }
        Ok(m.into_iter()
            .flatten()
            .map(|v| v as u32)
            .collect())
    };
    let add = flatten(add, "add")?;
    let mul = flatten(mul, "mul")?;
    let ring = FiniteRing::from_tables(order, add, mul, one, format!("table[order={order}]"))
        .map_err(|e| cur.error_at(at, e.to_string()))?;
    let report = ring.validate();
    if !report.is_ok() {
        let first = report
            .violations
            .first()
            .map(|v| format!("{v:?}"))
            .unwrap_or_default();
        return Err(cur.error_at(at, format!("raw table fails ring laws: {first}")));
    }
    Ok(ring)
}

fn parse_matrix(cur: &mut Cursor) -> Result<Vec<Vec<usize>>, ParseError> {
    cur.expect(b'[')?;
    let mut rows = Vec::new();
    loop {
        cur.expect(b'[')?;
        let mut row = Vec::new();
        if cur.peek() != Some(b']') {
            loop {
                row.push(cur.uint()?);
                if !cur.eat(b',') {
                    break;
                }
            }
        }
        cur.expect(b']')?;
        rows.push(row);
        if !cur.eat(b',') {
            break;
        }
    }
    cur.expect(b']')?;
    Ok(rows)
}

/// Renders a ring as a raw-table spec that `parse_ring_source` re-ingests
/// into an isomorphic (indeed identical) ring.
pub fn render_table(ring: &FiniteRing) -> String {
    let n = ring.order();
    let matrix = |f: &dyn Fn(usize, usize) -> usize| -> String {
        let rows: Vec<String> = (0..n)
            .map(|a| {
                let row: Vec<String> = (0..n).map(|b| f(a, b).to_string()).collect();
                format!("[{}]", row.join(","))
            })
            .collect();
        format!("[{}]", rows.join(",\n        "))
    };
    format!(
        "# {}\ntable{{\n  order: {};\n  add: {};\n  mul: {};\n  one: {};\n}}\n",
        ring.label(),
        n,
        matrix(&|a, b| ring.add(a, b)),
        matrix(&|a, b| ring.mul(a, b)),
        ring.one()
    )
}

//! The catml surface syntax: line-oriented blocks.
//!
//! ```text
//! # comment
//! [category Two]
//! objects = 0 1
//! mor f : 0 -> 1
//!
//! [functor F : A -> B]
//! obj a = x
//! mor f = g
//!
//! [nat N : F => G]
//! at a = m
//!
//! [pseudofunctor P : I -> CAT]        # also `J^op -> CAT`, `I x J^op -> CAT`
//! at i = C
//! on f = F
//! unit i : x = m, y = n
//! comp g f : x = m
//!
//! [cocone R : P -> T]
//! leg i = F
//! cell s : x = m
//!
//! [cone K : D -> P]
//! leg j = F
//! cell t : d = m
//! ```
//!
//! Tokens are separated by whitespace. A comma outside parentheses is a token
//! of its own, so `(i,j)` is a single name.

use crate::error::{CliError, Location, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token {
    pub text: String,
    pub line: usize,
    pub column: usize,
}

const RESERVED: &[&str] = &["=", ":", "->", "=>", ","];

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IndexShape {
    Plain(Token),
    Opposite(Token),
    Product(Token, Token),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Header {
    Category { name: Token },
    Functor { name: Token, source: Token, target: Token },
    Nat { name: Token, source: Token, target: Token },
    Pseudo { name: Token, index: IndexShape },
    Cocone { name: Token, diagram: Token, target: Token },
    Cone { name: Token, source: Token, diagram: Token },
}

impl Header {
    pub fn name(&self) -> &Token {
        match self {
            Header::Category { name }
            | Header::Functor { name, .. }
            | Header::Nat { name, .. }
            | Header::Pseudo { name, .. }
            | Header::Cocone { name, .. }
            | Header::Cone { name, .. } => name,
        }
    }
}

pub type Table = Vec<(Token, Token)>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Stmt {
    Objects(Vec<Token>),
    Mor { name: Token, dom: Token, cod: Token },
    Compose { g: Token, f: Token, gf: Token },
    Identity { object: Token, name: Token },
    ObjMap { from: Token, to: Token },
    MorMap { from: Token, to: Token },
    At { key: Token, value: Token },
    On { key: Token, value: Token },
    Unit { object: Token, table: Table },
    Comp { g: Token, f: Token, table: Table },
    Leg { key: Token, value: Token },
    Cell { key: Token, table: Table },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Block {
    pub file: String,
    pub header: Header,
    pub line: usize,
    pub body: Vec<Stmt>,
}

impl Block {
    pub fn at(&self, t: &Token) -> Location {
        Location {
            file: self.file.clone(),
            line: t.line,
            column: t.column,
        }
    }
}

fn tokenize(file: &str, line_no: usize, line: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let mut cur = String::new();
    let mut start = 0;
    let mut depth = 0i32;
    let flush = |cur: &mut String, start: usize, out: &mut Vec<Token>| {
        if !cur.is_empty() {
            out.push(Token {
                text: std::mem::take(cur),
                line: line_no,
                column: start,
            });
        }
    };
    for (k, ch) in line.chars().enumerate() {
        let col = k + 1;
        match ch {
            '#' if depth == 0 => break,
            c if c.is_whitespace() => {
                if depth > 0 {
                    return Err(syntax(file, line_no, col, "whitespace inside parentheses"));
                }
                flush(&mut cur, start, &mut out);
            }
            ',' if depth == 0 => {
                flush(&mut cur, start, &mut out);
                out.push(Token {
                    text: ",".into(),
                    line: line_no,
                    column: col,
                });
            }
            c => {
                if cur.is_empty() {
                    start = col;
                }
                if c == '(' {
                    depth += 1;
                } else if c == ')' {
                    depth -= 1;
                    if depth < 0 {
                        return Err(syntax(file, line_no, col, "unbalanced `)`"));
                    }
                }
                cur.push(c);
            }
        }
    }
    if depth != 0 {
        return Err(syntax(file, line_no, line.chars().count() + 1, "unbalanced `(`"));
    }
    flush(&mut cur, start, &mut out);
    Ok(out)
}

fn syntax(file: &str, line: usize, column: usize, message: impl Into<String>) -> CliError {
    CliError::Syntax {
        at: Location {
            file: file.to_string(),
            line,
            column,
        },
        message: message.into(),
    }
}

/// A cursor over one line's tokens.
struct Line<'a> {
    file: &'a str,
    line: usize,
    end: usize,
    tokens: Vec<Token>,
    pos: usize,
}

impl<'a> Line<'a> {
    fn err_here(&self, message: impl Into<String>) -> CliError {
        let column = self.tokens.get(self.pos).map(|t| t.column).unwrap_or(self.end);
        syntax(self.file, self.line, column, message)
    }

    fn name(&mut self, what: &str) -> Result<Token> {
        match self.tokens.get(self.pos) {
            Some(t) if !RESERVED.contains(&t.text.as_str()) => {
                self.pos += 1;
                Ok(t.clone())
            }
            _ => Err(self.err_here(format!("expected {what}"))),
        }
    }

    fn symbol(&mut self, s: &str) -> Result<()> {
        match self.tokens.get(self.pos) {
            Some(t) if t.text == s => {
                self.pos += 1;
                Ok(())
            }
            _ => Err(self.err_here(format!("expected `{s}`"))),
        }
    }

    fn done(&self) -> Result<()> {
        if self.pos < self.tokens.len() {
            return Err(self.err_here("unexpected trailing input"));
        }
        Ok(())
    }

    fn rest_names(&mut self, what: &str) -> Result<Vec<Token>> {
        let mut out = Vec::new();
        while self.pos < self.tokens.len() {
            out.push(self.name(what)?);
        }
        Ok(out)
    }

    /// `x = m, y = n`, possibly empty.
    fn table(&mut self) -> Result<Table> {
        let mut out = Vec::new();
        while self.pos < self.tokens.len() {
            let k = self.name("an object")?;
            self.symbol("=")?;
            let v = self.name("a morphism")?;
            out.push((k, v));
            if self.pos < self.tokens.len() {
                self.symbol(",")?;
            }
        }
        Ok(out)
    }
}

fn parse_header(l: &mut Line<'_>) -> Result<Header> {
    let kind = l.name("a block kind")?;
    let name = l.name("a block name")?;
    let h = match kind.text.as_str() {
        "category" => Header::Category { name },
        "functor" | "cocone" | "cone" => {
            l.symbol(":")?;
            let a = l.name("a name")?;
            l.symbol("->")?;
            let b = l.name("a name")?;
            match kind.text.as_str() {
                "functor" => Header::Functor { name, source: a, target: b },
                "cocone" => Header::Cocone { name, diagram: a, target: b },
                _ => Header::Cone { name, source: a, diagram: b },
            }
        }
        "nat" => {
            l.symbol(":")?;
            let source = l.name("a functor name")?;
            l.symbol("=>")?;
            let target = l.name("a functor name")?;
            Header::Nat { name, source, target }
        }
        "pseudofunctor" => {
            l.symbol(":")?;
            let first = l.name("an index category")?;
            let index = if l.tokens.get(l.pos).map(|t| t.text.as_str()) == Some("x") {
                l.pos += 1;
                let j = l.name("an index category")?;
                let Some(base) = j.text.strip_suffix("^op") else {
                    return Err(syntax(l.file, l.line, j.column, "second factor must be written `J^op`"));
                };
                IndexShape::Product(first, Token { text: base.to_string(), ..j })
            } else if let Some(base) = first.text.strip_suffix("^op") {
                IndexShape::Opposite(Token {
                    text: base.to_string(),
                    ..first
                })
            } else {
                IndexShape::Plain(first)
            };
            l.symbol("->")?;
            let cat = l.name("`CAT`")?;
            if cat.text != "CAT" {
                return Err(syntax(l.file, l.line, cat.column, "pseudofunctors must land in `CAT`"));
            }
            Header::Pseudo { name, index }
        }
        other => {
            return Err(syntax(l.file, l.line, kind.column, format!("unknown block kind `{other}`")));
        }
    };
    l.done()?;
    Ok(h)
}

fn parse_stmt(l: &mut Line<'_>, header: &Header) -> Result<Stmt> {
    let kw = l.name("a keyword")?;
    let stmt = match (header, kw.text.as_str()) {
        (Header::Category { .. }, "objects") => {
            l.symbol("=")?;
            Stmt::Objects(l.rest_names("an object name")?)
        }
        (Header::Category { .. }, "mor") => {
            let name = l.name("a morphism name")?;
            l.symbol(":")?;
            let dom = l.name("an object")?;
            l.symbol("->")?;
            let cod = l.name("an object")?;
            Stmt::Mor { name, dom, cod }
        }
        (Header::Category { .. }, "compose") => {
            let g = l.name("a morphism")?;
            let f = l.name("a morphism")?;
            l.symbol("=")?;
            let gf = l.name("a morphism")?;
            Stmt::Compose { g, f, gf }
        }
        (Header::Category { .. }, "identity") => {
            let object = l.name("an object")?;
            l.symbol("=")?;
            let name = l.name("a morphism name")?;
            Stmt::Identity { object, name }
        }
        (Header::Functor { .. }, "obj") | (Header::Functor { .. }, "mor") => {
            let from = l.name("a name")?;
            l.symbol("=")?;
            let to = l.name("a name")?;
            if kw.text == "obj" {
                Stmt::ObjMap { from, to }
            } else {
                Stmt::MorMap { from, to }
            }
        }
        (Header::Nat { .. }, "at") | (Header::Pseudo { .. }, "at") | (Header::Pseudo { .. }, "on") => {
            let key = l.name("a name")?;
            l.symbol("=")?;
            let value = l.name("a name")?;
            if kw.text == "at" {
                Stmt::At { key, value }
            } else {
                Stmt::On { key, value }
            }
        }
        (Header::Pseudo { .. }, "unit") => {
            let object = l.name("an index object")?;
            l.symbol(":")?;
            Stmt::Unit { object, table: l.table()? }
        }
        (Header::Pseudo { .. }, "comp") => {
            let g = l.name("an index morphism")?;
            let f = l.name("an index morphism")?;
            l.symbol(":")?;
            Stmt::Comp { g, f, table: l.table()? }
        }
        (Header::Cocone { .. } | Header::Cone { .. }, "leg") => {
            let key = l.name("an index object")?;
            l.symbol("=")?;
            let value = l.name("a functor name")?;
            Stmt::Leg { key, value }
        }
        (Header::Cocone { .. } | Header::Cone { .. }, "cell") => {
            let key = l.name("an index morphism")?;
            l.symbol(":")?;
            Stmt::Cell { key, table: l.table()? }
        }
        (_, other) => {
            return Err(syntax(l.file, l.line, kw.column, format!("unexpected `{other}` here")));
        }
    };
    l.done()?;
    Ok(stmt)
}

/// Parses one file into blocks.
pub fn parse_blocks(file: &str, text: &str) -> Result<Vec<Block>> {
    let mut blocks: Vec<Block> = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let line_no = k + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let end = raw.chars().count() + 1;
        if trimmed.starts_with('[') {
            let close = raw.rfind(']').ok_or_else(|| syntax(file, line_no, end, "expected `]`"))?;
            let open = raw.find('[').unwrap();
            let after = &raw[close + 1..];
            if !after.trim().is_empty() && !after.trim_start().starts_with('#') {
                return Err(syntax(file, line_no, raw[..close + 1].chars().count() + 1, "unexpected input after `]`"));
            }
            let inner_col = raw[..open + 1].chars().count();
            let mut tokens = tokenize(file, line_no, &raw[open + 1..close])?;
            for t in &mut tokens {
                t.column += inner_col;
            }
            let mut l = Line {
                file,
                line: line_no,
                end,
                tokens,
                pos: 0,
            };
            let header = parse_header(&mut l)?;
            blocks.push(Block {
                file: file.to_string(),
                header,
                line: line_no,
                body: Vec::new(),
            });
            continue;
        }
        let tokens = tokenize(file, line_no, raw)?;
        if tokens.is_empty() {
            continue;
        }
        let Some(block) = blocks.last_mut() else {
            return Err(syntax(file, line_no, tokens[0].column, "statement outside of a block"));
        };
        let mut l = Line {
            file,
            line: line_no,
            end,
            tokens,
            pos: 0,
        };
        let stmt = parse_stmt(&mut l, &block.header)?;
        block.body.push(stmt);
    }
    Ok(blocks)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_a_category_block() {
        let b = parse_blocks("t", "# c\n[category Two]\nobjects = 0 1\nmor f : 0 -> 1 # arrow\n").unwrap();
        assert_eq!(b.len(), 1);
        assert_eq!(b[0].body.len(), 2);
        assert!(matches!(&b[0].body[1], Stmt::Mor { name, .. } if name.text == "f"));
    }

    #[test]
    fn parenthesised_names_keep_their_commas() {
        let b = parse_blocks("t", "[pseudofunctor A : I x J^op -> CAT]\nunit (a,b) : x = m, y = n\n").unwrap();
        let Stmt::Unit { object, table } = &b[0].body[0] else { panic!() };
        assert_eq!(object.text, "(a,b)");
        assert_eq!(table.len(), 2);
        assert!(matches!(&b[0].header, Header::Pseudo { index: IndexShape::Product(_, j), .. } if j.text == "J"));
    }

    #[test]
    fn errors_carry_line_and_column() {
        let e = parse_blocks("t", "[category C]\nmor f 0 -> 1\n").unwrap_err();
        assert_eq!(e.location().map(|l| (l.line, l.column)), Some((2, 7)));
        let e = parse_blocks("t", "objects = a\n").unwrap_err();
        assert_eq!(e.code(), "E_SYNTAX");
        let e = parse_blocks("t", "[widget W]\n").unwrap_err();
        assert_eq!(e.location().map(|l| (l.line, l.column)), Some((1, 2)));
    }
}

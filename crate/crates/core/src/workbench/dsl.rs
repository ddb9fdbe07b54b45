//! Line-oriented text format for spaces, maps and contexts.
//!
//! ```text
//! # comment
//! space S { points 2; opens {} {1} {0 1} }
//! map m : P -> S { 0->1 }
//! context H = builtin(hull(S))
//! ```

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::cat::SubcatContext;
use crate::error::Error;
use crate::map::CMap;
use crate::space::{mk_space, FinSpace, Space};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum DslErrorKind {
    #[error("syntax error: {0}")]
    SyntaxError(String),
    #[error("unknown space {0}")]
    UnknownSpace(String),
    #[error("unknown context builtin {0}")]
    UnknownBuiltin(String),
    #[error("duplicate name {0}")]
    DuplicateName(String),
    #[error("map {map} is not continuous: preimage of open {open} is not open")]
    ContinuityViolation { map: String, open: String },
    #[error("open family must contain the empty set and the full set")]
    MissingEmptyOrFull,
    #[error("invalid declaration: {0}")]
    Invalid(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("line {line}, column {col}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub kind: DslErrorKind,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Builtin {
    Top,
    Top0,
    Ind,
    Sob,
    Zerodim,
    Zerodim0,
    Hull(String),
}

impl fmt::Display for Builtin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Builtin::Top => write!(f, "top"),
            Builtin::Top0 => write!(f, "top0"),
            Builtin::Ind => write!(f, "ind"),
            Builtin::Sob => write!(f, "sob"),
            Builtin::Zerodim => write!(f, "zerodim"),
            Builtin::Zerodim0 => write!(f, "zerodim0"),
            Builtin::Hull(s) => write!(f, "hull({s})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MapDecl {
    pub name: String,
    pub dom: String,
    pub cod: String,
    pub map: CMap,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContextDecl {
    pub name: String,
    pub builtin: Builtin,
}

/// Declarations in input order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Model {
    pub spaces: Vec<(String, Space)>,
    pub maps: Vec<MapDecl>,
    pub contexts: Vec<ContextDecl>,
}

impl Model {
    pub fn space(&self, name: &str) -> Option<&Space> {
        self.spaces.iter().find(|(n, _)| n == name).map(|(_, s)| s)
    }

    pub fn map(&self, name: &str) -> Option<&MapDecl> {
        self.maps.iter().find(|m| m.name == name)
    }

    pub fn context(&self, name: &str) -> Option<SubcatContext> {
        let decl = self.contexts.iter().find(|c| c.name == name)?;
        builtin_context(&decl.builtin, self)
    }

    fn has_name(&self, name: &str) -> bool {
        self.space(name).is_some()
            || self.map(name).is_some()
            || self.contexts.iter().any(|c| c.name == name)
    }

    pub fn to_dsl(&self) -> String {
        let mut out = String::new();
        for (name, x) in &self.spaces {
            out.push_str(&space_to_dsl(name, x));
            out.push('\n');
        }
        for m in &self.maps {
            out.push_str(&map_to_dsl(&m.name, &m.dom, &m.cod, &m.map));
            out.push('\n');
        }
        for c in &self.contexts {
            out.push_str(&format!("context {} = builtin({})\n", c.name, c.builtin));
        }
        out
    }
}

/// The context a builtin names. `hull(S)` looks `S` up in `model`.
pub fn builtin_context(b: &Builtin, model: &Model) -> Option<SubcatContext> {
    Some(match b {
        Builtin::Top => SubcatContext::top(),
        Builtin::Top0 => SubcatContext::top0(),
        Builtin::Ind => SubcatContext::ind(),
        Builtin::Sob => SubcatContext::sob(),
        Builtin::Zerodim => SubcatContext::zerodim(),
        Builtin::Zerodim0 => SubcatContext::zerodim0(),
        Builtin::Hull(s) => SubcatContext::hull(model.space(s)?, s),
    })
}

pub fn space_to_dsl(name: &str, x: &FinSpace) -> String {
    let opens: Vec<String> = x
        .opens()
        .iter()
        .map(|o| {
            let pts: Vec<String> = o.ones().map(|p| p.to_string()).collect();
            format!("{{{}}}", pts.join(" "))
        })
        .collect();
    format!("space {name} {{ points {}; opens {} }}", x.n(), opens.join(" "))
}

pub fn map_to_dsl(name: &str, dom: &str, cod: &str, f: &CMap) -> String {
    let entries: Vec<String> = f
        .table()
        .iter()
        .enumerate()
        .map(|(i, j)| format!("{i}->{j}"))
        .collect();
    if entries.is_empty() {
        format!("map {name} : {dom} -> {cod} {{ }}")
    } else {
        format!("map {name} : {dom} -> {cod} {{ {} }}", entries.join(" "))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Num(usize),
    Sym(&'static str),
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::Num(n) => write!(f, "`{n}`"),
            Tok::Sym(s) => write!(f, "`{s}`"),
        }
    }
}

struct Cursor {
    line: usize,
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end_col: usize,
}

impl Cursor {
    fn err(&self, col: usize, kind: DslErrorKind) -> ParseError {
        ParseError {
            line: self.line,
            col,
            kind,
        }
    }

    fn col(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end_col, |(c, _)| *c)
    }

    fn syntax(&self, expected: &str) -> ParseError {
        let found = match self.toks.get(self.pos) {
            Some((_, t)) => t.to_string(),
            None => "end of line".to_string(),
        };
        self.err(
            self.col(),
            DslErrorKind::SyntaxError(format!("expected {expected}, found {found}")),
        )
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn eat(&mut self, sym: &str) -> bool {
        if matches!(self.peek(), Some(Tok::Sym(s)) if *s == sym) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, sym: &str) -> Result<(), ParseError> {
        if self.eat(sym) {
            Ok(())
        } else {
            Err(self.syntax(&format!("`{sym}`")))
        }
    }

    fn keyword(&mut self, kw: &str) -> Result<(), ParseError> {
        match self.peek() {
            Some(Tok::Ident(s)) if s == kw => {
                self.pos += 1;
                Ok(())
            }
            _ => Err(self.syntax(&format!("`{kw}`"))),
        }
    }

    fn ident(&mut self) -> Result<(usize, String), ParseError> {
        match self.toks.get(self.pos) {
            Some((c, Tok::Ident(s))) => {
                let out = (*c, s.clone());
                self.pos += 1;
                Ok(out)
            }
            _ => Err(self.syntax("a name")),
        }
    }

    fn num(&mut self) -> Result<(usize, usize), ParseError> {
        match self.toks.get(self.pos) {
            Some((c, Tok::Num(n))) => {
                let out = (*c, *n);
                self.pos += 1;
                Ok(out)
            }
            _ => Err(self.syntax("a number")),
        }
    }

    fn finish(&self) -> Result<(), ParseError> {
        if self.pos == self.toks.len() {
            Ok(())
        } else {
            Err(self.syntax("end of line"))
        }
    }
}

fn tokenize(line_no: usize, line: &str) -> Result<Cursor, ParseError> {
    let chars: Vec<char> = line.chars().collect();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        if c == '#' {
            break;
        } else if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let text: String = chars[start..i].iter().collect();
            let n = text.parse().map_err(|_| ParseError {
                line: line_no,
                col,
                kind: DslErrorKind::SyntaxError(format!("number {text} is too large")),
            })?;
            toks.push((col, Tok::Num(n)));
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_' || chars[i] == '\'') {
                i += 1;
            }
            toks.push((col, Tok::Ident(chars[start..i].iter().collect())));
        } else if c == '-' && chars.get(i + 1) == Some(&'>') {
            toks.push((col, Tok::Sym("->")));
            i += 2;
        } else {
            let sym = match c {
                '{' => "{",
                '}' => "}",
                '(' => "(",
                ')' => ")",
                ';' => ";",
                ':' => ":",
                '=' => "=",
                _ => {
                    return Err(ParseError {
                        line: line_no,
                        col,
                        kind: DslErrorKind::SyntaxError(format!("unexpected character `{c}`")),
                    })
                }
            };
            toks.push((col, Tok::Sym(sym)));
            i += 1;
        }
    }
    Ok(Cursor {
        line: line_no,
        toks,
        pos: 0,
        end_col: chars.len() + 1,
    })
}

pub fn parse_model(text: &str) -> Result<Model, ParseError> {
    let mut model = Model::default();
    for (i, line) in text.lines().enumerate() {
        let mut cur = tokenize(i + 1, line)?;
        let head = match cur.peek() {
            None => continue,
            Some(Tok::Ident(s)) => s.clone(),
            Some(_) => return Err(cur.syntax("`space`, `map` or `context`")),
        };
        match head.as_str() {
            "space" => parse_space(&mut cur, &mut model)?,
            "map" => parse_map(&mut cur, &mut model)?,
            "context" => parse_context(&mut cur, &mut model)?,
            _ => return Err(cur.syntax("`space`, `map` or `context`")),
        }
        cur.finish()?;
    }
    Ok(model)
}

fn declare(cur: &Cursor, model: &Model, col: usize, name: &str) -> Result<(), ParseError> {
    if model.has_name(name) {
        Err(cur.err(col, DslErrorKind::DuplicateName(name.to_string())))
    } else {
        Ok(())
    }
}

fn parse_space(cur: &mut Cursor, model: &mut Model) -> Result<(), ParseError> {
    let start = cur.col();
    cur.keyword("space")?;
    let (name_col, name) = cur.ident()?;
    declare(cur, model, name_col, &name)?;
    cur.expect("{")?;
    cur.keyword("points")?;
    let (_, n) = cur.num()?;
    cur.expect(";")?;
    cur.keyword("opens")?;
    let mut opens = Vec::new();
    while cur.eat("{") {
        let mut set = Vec::new();
        while !cur.eat("}") {
            let (col, p) = cur.num()?;
            if p >= n {
                return Err(cur.err(
                    col,
                    DslErrorKind::Invalid(format!("point {p} out of range for {n} points")),
                ));
            }
            set.push(p);
        }
        opens.push(set);
    }
    cur.eat(";");
    cur.expect("}")?;
    let x = mk_space(n, &opens).map_err(|e| {
        cur.err(
            start,
            match e {
                Error::MissingEmptyOrFull => DslErrorKind::MissingEmptyOrFull,
                other => DslErrorKind::Invalid(other.to_string()),
            },
        )
    })?;
    model.spaces.push((name, Arc::new(x)));
    Ok(())
}

fn lookup_space(cur: &Cursor, model: &Model) -> Result<(String, Space), ParseError> {
    let (col, name) = match cur.toks.get(cur.pos) {
        Some((c, Tok::Ident(s))) => (*c, s.clone()),
        _ => return Err(cur.syntax("a space name")),
    };
    match model.space(&name) {
        Some(x) => Ok((name, x.clone())),
        None => Err(cur.err(col, DslErrorKind::UnknownSpace(name))),
    }
}

fn parse_map(cur: &mut Cursor, model: &mut Model) -> Result<(), ParseError> {
    let start = cur.col();
    cur.keyword("map")?;
    let (name_col, name) = cur.ident()?;
    declare(cur, model, name_col, &name)?;
    cur.expect(":")?;
    let (dom_name, dom) = lookup_space(cur, model)?;
    cur.pos += 1;
    cur.expect("->")?;
    let (cod_name, cod) = lookup_space(cur, model)?;
    cur.pos += 1;
    cur.expect("{")?;
    let mut table: Vec<Option<usize>> = vec![None; dom.n()];
    while !cur.eat("}") {
        let (col, i) = cur.num()?;
        cur.expect("->")?;
        let (jcol, j) = cur.num()?;
        if i >= dom.n() {
            return Err(cur.err(col, DslErrorKind::Invalid(format!("{dom_name} has no point {i}"))));
        }
        if j >= cod.n() {
            return Err(cur.err(jcol, DslErrorKind::Invalid(format!("{cod_name} has no point {j}"))));
        }
        if table[i].replace(j).is_some() {
            return Err(cur.err(col, DslErrorKind::Invalid(format!("point {i} mapped twice"))));
        }
    }
    let table: Vec<usize> = match table.iter().position(Option::is_none) {
        Some(i) => {
            return Err(cur.err(start, DslErrorKind::Invalid(format!("point {i} of {dom_name} has no image"))))
        }
        None => table.into_iter().flatten().collect(),
    };
    let map = CMap::new(dom, cod, table).map_err(|e| {
        cur.err(
            start,
            match e {
                Error::ContinuityViolation { open } => DslErrorKind::ContinuityViolation {
                    map: name.clone(),
                    open,
                },
                other => DslErrorKind::Invalid(other.to_string()),
            },
        )
    })?;
    model.maps.push(MapDecl {
        name,
        dom: dom_name,
        cod: cod_name,
        map,
    });
    Ok(())
}

fn parse_builtin(cur: &mut Cursor, model: &Model) -> Result<Builtin, ParseError> {
    let (col, name) = cur.ident()?;
    if name == "builtin" {
        cur.expect("(")?;
        let b = parse_builtin(cur, model)?;
        cur.expect(")")?;
        return Ok(b);
    }
    Ok(match name.as_str() {
        "top" => Builtin::Top,
        "top0" => Builtin::Top0,
        "ind" => Builtin::Ind,
        "sob" => Builtin::Sob,
        "zerodim" => Builtin::Zerodim,
        "zerodim0" => Builtin::Zerodim0,
        "hull" => {
            cur.expect("(")?;
            let (s, _) = lookup_space(cur, model)?;
            cur.pos += 1;
            cur.expect(")")?;
            Builtin::Hull(s)
        }
        _ => return Err(cur.err(col, DslErrorKind::UnknownBuiltin(name))),
    })
}

fn parse_context(cur: &mut Cursor, model: &mut Model) -> Result<(), ParseError> {
    cur.keyword("context")?;
    let (name_col, name) = cur.ident()?;
    declare(cur, model, name_col, &name)?;
    cur.expect("=")?;
    let builtin = parse_builtin(cur, model)?;
    model.contexts.push(ContextDecl { name, builtin });
    Ok(())
}

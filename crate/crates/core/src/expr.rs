//! Inline map expressions.
//!
//! ```text
//! seq     := starred+            juxtaposition composes right-to-left
//! starred := postfix ('*' postfix)?
//! postfix := primary '\''*       each ' inverts
//! primary := name | '@' path | '(' seq ')'
//! ```
//!
//! Names: `id`, `rho`, `lambda`, `alpha`, `x<j>` / `xk:<j>` (Thompson
//! generators), and the symbols `Id`, `ρ`, `λ`, `α`. So the label
//! `(λ⁻¹⋆Id)λ` is written `(lambda' * id) lambda`.

use std::path::Path;

use crate::catalogue;
use crate::error::{Error, Result};
use crate::map::CongruentialMap;
use crate::operad::star;
use crate::thompson::generator;

#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Name(String),
    File(String),
    Inverse(Box<Expr>),
    Star(Box<Expr>, Box<Expr>),
    /// `[f, g, h]` denotes `f ∘ g ∘ h`.
    Compose(Vec<Expr>),
}

pub fn builtin(name: &str) -> Option<CongruentialMap> {
    match name {
        "id" | "Id" | "identity" => Some(catalogue::identity()),
        "rho" | "ρ" => Some(catalogue::rho()),
        "lambda" | "λ" => Some(catalogue::lambda()),
        "alpha" | "α" => Some(catalogue::alpha()),
        _ => {
            let index = name.strip_prefix("xk:").or_else(|| name.strip_prefix('x'))?;
            index.parse().ok().map(generator)
        }
    }
}

pub const BUILTIN_NAMES: &[&str] = &["id", "rho", "lambda", "alpha", "x<j>", "xk:<j>"];

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err(&self, message: impl Into<String>) -> Error {
        Error::Expression { position: self.pos, message: message.into() }
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.peek() {
            if !c.is_whitespace() {
                break;
            }
            self.pos += c.len_utf8();
        }
    }

    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn seq(&mut self) -> Result<Expr> {
        let mut items = Vec::new();
        loop {
            self.skip_ws();
            match self.peek() {
                None | Some(')') => break,
                _ => items.push(self.starred()?),
            }
        }
        match items.len() {
            0 => Err(self.err("expected a map expression")),
            1 => Ok(items.pop().unwrap()),
            _ => Ok(Expr::Compose(items)),
        }
    }

    fn starred(&mut self) -> Result<Expr> {
        let left = self.postfix()?;
        self.skip_ws();
        if !matches!(self.peek(), Some('*' | '⋆')) {
            return Ok(left);
        }
        self.pos += self.peek().unwrap().len_utf8();
        self.skip_ws();
        let right = self.postfix()?;
        self.skip_ws();
        if matches!(self.peek(), Some('*' | '⋆')) {
            return Err(self.err("`*` is not associative; parenthesise chained conjunctions"));
        }
        Ok(Expr::Star(Box::new(left), Box::new(right)))
    }

    fn postfix(&mut self) -> Result<Expr> {
        let mut e = self.primary()?;
        loop {
            if self.src[self.pos..].starts_with('\'') {
                self.pos += 1;
            } else if self.src[self.pos..].starts_with("⁻¹") {
                self.pos += "⁻¹".len();
            } else {
                break;
            }
            e = Expr::Inverse(Box::new(e));
        }
        Ok(e)
    }

    fn primary(&mut self) -> Result<Expr> {
        self.skip_ws();
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let inner = self.seq()?;
                self.skip_ws();
                if self.peek() != Some(')') {
                    return Err(self.err("expected `)`"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some('@') => {
                self.pos += 1;
                let start = self.pos;
                while let Some(c) = self.peek() {
                    if c.is_whitespace() || c == ')' {
                        break;
                    }
                    self.pos += c.len_utf8();
                }
                if start == self.pos {
                    return Err(self.err("expected a path after `@`"));
                }
                Ok(Expr::File(self.src[start..self.pos].to_string()))
            }
            Some(c) if c.is_alphanumeric() || c == '_' => {
                let start = self.pos;
                while let Some(c) = self.peek() {
                    if !(c.is_alphanumeric() || c == '_' || c == ':') {
                        break;
                    }
                    self.pos += c.len_utf8();
                }
                Ok(Expr::Name(self.src[start..self.pos].to_string()))
            }
            Some(c) => Err(self.err(format!("unexpected `{c}`"))),
            None => Err(self.err("unexpected end of expression")),
        }
    }
}

pub fn parse(src: &str) -> Result<Expr> {
    let mut p = Parser { src, pos: 0 };
    let e = p.seq()?;
    p.skip_ws();
    if p.pos != src.len() {
        return Err(p.err("unbalanced `)`"));
    }
    Ok(e)
}

impl Expr {
    pub fn eval(&self) -> Result<CongruentialMap> {
        match self {
            Expr::Name(n) => builtin(n).ok_or_else(|| Error::Expression {
                position: 0,
                message: format!("unknown map `{n}` (builtins: {})", BUILTIN_NAMES.join(", ")),
            }),
            Expr::File(path) => load_map_file(Path::new(path)),
            Expr::Inverse(e) => e.eval()?.inverse(),
            Expr::Star(a, b) => Ok(star(&a.eval()?, &b.eval()?)),
            Expr::Compose(items) => items.iter().try_fold(CongruentialMap::identity(), |acc, e| {
                Ok(acc.compose(&e.eval()?))
            }),
        }
    }
}

pub fn load_map_file(path: &Path) -> Result<CongruentialMap> {
    let text = std::fs::read_to_string(path)?;
    crate::text::from_text(&text)
}

/// A path to a map file when one exists, otherwise an inline expression.
pub fn resolve(input: &str) -> Result<CongruentialMap> {
    let path = Path::new(input);
    if path.is_file() {
        return load_map_file(path);
    }
    parse(input)?.eval()
}

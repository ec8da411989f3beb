//! Line-based ring specification files.
//!
//! ```text
//! ring R = upper_triangular(F, 2)
//! ideal I in R = generated [e(2,2)]
//! module M over R side right presented [[e(1,1)]]
//! ```
//!
//! Names must be defined before use. `#` starts a comment.

use std::path::{Path, PathBuf};
use std::sync::Arc;

use ttfkit_core::construct::{gf, matrix, product, quotient, upper_triangular, zn};
use ttfkit_core::modcat::module_from_presentation;
use ttfkit_core::{build_ring, ElemSet, Elem, FinModule, FiniteRing, Ideal, RMatrix, RawTables, Side};

use crate::error::{HarnessError, Result};

#[derive(Debug, Clone)]
pub struct NamedRing {
    pub name: String,
    pub ctor: String,
    pub ring: Arc<FiniteRing>,
}

#[derive(Debug, Clone)]
pub struct NamedIdeal {
    pub name: String,
    pub ring: String,
    pub ideal: Ideal,
}

#[derive(Debug, Clone)]
pub struct NamedModule {
    pub name: String,
    pub ring: String,
    pub module: FinModule,
}

#[derive(Debug, Clone, Default)]
pub struct Environment {
    pub rings: Vec<NamedRing>,
    pub ideals: Vec<NamedIdeal>,
    pub modules: Vec<NamedModule>,
}

impl Environment {
    pub fn ring(&self, name: &str) -> Option<&NamedRing> {
        self.rings.iter().find(|r| r.name == name)
    }

    pub fn ideal(&self, name: &str) -> Option<&NamedIdeal> {
        self.ideals.iter().find(|i| i.name == name)
    }

    pub fn module(&self, name: &str) -> Option<&NamedModule> {
        self.modules.iter().find(|m| m.name == name)
    }

    pub fn ideals_of<'a>(&'a self, ring: &'a str) -> impl Iterator<Item = &'a NamedIdeal> + 'a {
        self.ideals.iter().filter(move |i| i.ring == ring)
    }

    fn taken(&self, name: &str) -> bool {
        self.ring(name).is_some() || self.ideal(name).is_some() || self.module(name).is_some()
    }
}

/// Source of `tables(<path>)` files.
pub trait TableSource {
    fn read(&self, path: &str) -> std::io::Result<String>;
}

/// Reads table files relative to a directory.
pub struct DirSource(pub PathBuf);

impl TableSource for DirSource {
    fn read(&self, path: &str) -> std::io::Result<String> {
        std::fs::read_to_string(self.0.join(path))
    }
}

pub fn parse_file(path: &Path) -> Result<Environment> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| HarnessError::Input(format!("cannot read {}: {e}", path.display())))?;
    let dir = path.parent().map(Path::to_path_buf).unwrap_or_default();
    parse_spec(&text, &DirSource(dir))
}

pub fn parse_spec(text: &str, tables: &dyn TableSource) -> Result<Environment> {
    let mut env = Environment::default();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let (keyword, rest) = content.split_once(char::is_whitespace).unwrap_or((content, ""));
        let mut p = LineParser { env: &env, line, tables };
        match keyword {
            "ring" => {
                let r = p.ring_line(rest.trim())?;
                env.rings.push(r);
            }
            "ideal" => {
                let i = p.ideal_line(rest.trim())?;
                env.ideals.push(i);
            }
            "module" => {
                let m = p.module_line(rest.trim())?;
                env.modules.push(m);
            }
            other => return Err(parse_err(line, format!("unknown statement `{other}`"))),
        }
    }
    Ok(env)
}

fn parse_err(line: usize, msg: impl Into<String>) -> HarnessError {
    HarnessError::Parse { line, msg: msg.into() }
}

fn valid_name(s: &str) -> bool {
    let mut chars = s.chars();
    chars.next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Splits on commas that are not nested in brackets or parentheses.
fn split_top(s: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in s.char_indices() {
        match c {
            '(' | '[' => depth += 1,
            ')' | ']' => depth -= 1,
            ',' if depth == 0 => {
                out.push(s[start..i].trim());
                start = i + 1;
            }
            _ => {}
        }
    }
    let last = s[start..].trim();
    if !last.is_empty() || !out.is_empty() {
        out.push(last);
    }
    out
}

fn bracketed(s: &str, open: char, close: char) -> Option<&str> {
    s.trim().strip_prefix(open)?.strip_suffix(close)
}

struct LineParser<'a> {
    env: &'a Environment,
    line: usize,
    tables: &'a dyn TableSource,
}

impl LineParser<'_> {
    fn err(&self, msg: impl Into<String>) -> HarnessError {
        parse_err(self.line, msg)
    }

    fn core<T>(&self, r: ttfkit_core::Result<T>) -> Result<T> {
        r.map_err(|e| self.err(e.to_string()))
    }

    fn fresh_name(&self, name: &str) -> Result<String> {
        if !valid_name(name) {
            return Err(self.err(format!("invalid name `{name}`")));
        }
        if self.env.taken(name) {
            return Err(self.err(format!("`{name}` is already defined")));
        }
        Ok(name.to_string())
    }

    fn ring_ref(&self, name: &str) -> Result<&NamedRing> {
        self.env.ring(name.trim()).ok_or_else(|| HarnessError::UnknownName {
            line: self.line,
            name: name.trim().to_string(),
        })
    }

    fn number<T: std::str::FromStr>(&self, s: &str) -> Result<T> {
        s.trim().parse().map_err(|_| self.err(format!("expected a number, got `{}`", s.trim())))
    }

    fn ring_line(&mut self, rest: &str) -> Result<NamedRing> {
        let (name, expr) = rest.split_once('=').ok_or_else(|| self.err("expected `ring <name> = <constructor>`"))?;
        let name = self.fresh_name(name.trim())?;
        let expr = expr.trim();
        let open = expr.find('(').ok_or_else(|| self.err("expected a constructor call"))?;
        let ctor = expr[..open].trim();
        let args = bracketed(&expr[open..], '(', ')').ok_or_else(|| self.err("unbalanced parentheses"))?;
        let args = split_top(args);
        let want = |n: usize| -> Result<()> {
            if args.len() == n {
                Ok(())
            } else {
                Err(self.err(format!("{ctor} takes {n} argument(s), got {}", args.len())))
            }
        };
        let ring = match ctor {
            "zn" => {
                want(1)?;
                self.core(zn(self.number(args[0])?))?
            }
            "gf" => {
                want(1)?;
                self.core(gf(self.number(args[0])?))?
            }
            "matrix" | "upper_triangular" => {
                want(2)?;
                let base = self.ring_ref(args[0])?.ring.clone();
                let k = self.number(args[1])?;
                if ctor == "matrix" {
                    self.core(matrix(&base, k))?
                } else {
                    self.core(upper_triangular(&base, k))?
                }
            }
            "product" => {
                want(2)?;
                let a = self.ring_ref(args[0])?.ring.clone();
                let b = self.ring_ref(args[1])?.ring.clone();
                self.core(product(&a, &b))?
            }
            "quotient" => {
                want(2)?;
                let parent = self.ring_ref(args[0])?;
                let ideal = self.env.ideal(args[1]).ok_or_else(|| HarnessError::UnknownName {
                    line: self.line,
                    name: args[1].to_string(),
                })?;
                if ideal.ring != parent.name {
                    return Err(self.err(format!("ideal `{}` is not an ideal of `{}`", ideal.name, parent.name)));
                }
                self.core(quotient(&ideal.ideal))?
            }
            "tables" => {
                want(1)?;
                let text = self
                    .tables
                    .read(args[0])
                    .map_err(|e| self.err(format!("cannot read tables `{}`: {e}", args[0])))?;
                let raw = parse_tables(&text, &name).map_err(|m| self.err(m))?;
                self.core(build_ring(raw))?
            }
            other => return Err(self.err(format!("unknown constructor `{other}`"))),
        };
        Ok(NamedRing {
            name,
            ctor: expr.to_string(),
            ring,
        })
    }

    fn element(&self, ring: &FiniteRing, s: &str) -> Result<Elem> {
        let s = s.trim();
        if let Some(args) = s.strip_prefix('e').and_then(|t| bracketed(t, '(', ')')) {
            let ij = split_top(args);
            if ij.len() != 2 {
                return Err(self.err(format!("matrix unit `{s}` needs two indices")));
            }
            let (i, j) = (self.number(ij[0])?, self.number(ij[1])?);
            return ring
                .encoding()
                .matrix_unit(i, j)
                .ok_or_else(|| self.err(format!("`{s}` is not a matrix unit of {}", ring.label())));
        }
        let x: usize = self.number(s)?;
        if x >= ring.size() {
            return Err(self.err(format!("element {x} out of range for a ring of size {}", ring.size())));
        }
        Ok(x as Elem)
    }

    fn elements(&self, ring: &FiniteRing, list: &str) -> Result<Vec<Elem>> {
        let inner = bracketed(list, '[', ']').ok_or_else(|| self.err("expected `[ ... ]`"))?;
        split_top(inner).into_iter().map(|s| self.element(ring, s)).collect()
    }

    fn ideal_line(&mut self, rest: &str) -> Result<NamedIdeal> {
        let (head, body) = rest.split_once('=').ok_or_else(|| self.err("expected `ideal <name> in <ring> = ...`"))?;
        let words: Vec<&str> = head.split_whitespace().collect();
        let [name, "in", ring_name] = words[..] else {
            return Err(self.err("expected `ideal <name> in <ring>`"));
        };
        let name = self.fresh_name(name)?;
        let nr = self.ring_ref(ring_name)?;
        let ring = &nr.ring;
        let mut body = body.trim();
        let mut side = Side::TwoSided;
        for (word, s) in [("left ", Side::Left), ("right ", Side::Right)] {
            if let Some(b) = body.strip_prefix(word) {
                side = s;
                body = b.trim();
            }
        }
        let ideal = if body == "jacobson" {
            if side != Side::TwoSided {
                return Err(self.err("the radical is two-sided"));
            }
            ring.jacobson_radical()
        } else if let Some(list) = body.strip_prefix("generated") {
            Ideal::generated(ring, &self.elements(ring, list)?, side)
        } else if let Some(list) = body.strip_prefix("members") {
            let xs = self.elements(ring, list)?;
            self.core(Ideal::from_members(ring, side, ElemSet::from_iter(ring.size(), xs)))?
        } else {
            return Err(self.err("expected `generated [..]`, `jacobson` or `members [..]`"));
        };
        Ok(NamedIdeal {
            name,
            ring: nr.name.clone(),
            ideal,
        })
    }

    fn module_line(&mut self, rest: &str) -> Result<NamedModule> {
        let words: Vec<&str> = rest.splitn(7, char::is_whitespace).collect();
        let [name, "over", ring_name, "side", side, "presented", matrix] = words[..] else {
            return Err(self.err("expected `module <name> over <ring> side <left|right> presented [[..]]`"));
        };
        let name = self.fresh_name(name)?;
        let nr = self.ring_ref(ring_name)?;
        let side = match side {
            "left" => Side::Left,
            "right" => Side::Right,
            other => return Err(self.err(format!("side must be left or right, got `{other}`"))),
        };
        let outer = bracketed(matrix, '[', ']').ok_or_else(|| self.err("expected `[[..],..]`"))?;
        let rows = split_top(outer)
            .into_iter()
            .map(|row| self.elements(&nr.ring, row))
            .collect::<Result<Vec<_>>>()?;
        let a = self.core(RMatrix::from_rows(&nr.ring, &rows))?;
        let module = self.core(module_from_presentation(&a, side))?;
        Ok(NamedModule {
            name,
            ring: nr.name.clone(),
            module,
        })
    }
}

/// `size z o`, then the addition rows, then the multiplication rows.
pub fn parse_tables(text: &str, label: &str) -> std::result::Result<RawTables, String> {
    let mut nums = text.split_whitespace().map(|t| t.parse::<usize>().map_err(|_| format!("bad table entry `{t}`")));
    let mut next = |what: &str| nums.next().unwrap_or_else(|| Err(format!("tables end before {what}")));
    let size = next("the header")?;
    let zero = next("the header")? as Elem;
    let one = next("the header")? as Elem;
    if size == 0 {
        return Err("table size must be positive".into());
    }
    let mut read = |what: &str| -> std::result::Result<Vec<Elem>, String> {
        (0..size * size).map(|_| next(what).map(|x| x as Elem)).collect()
    };
    let add = read("the addition table")?;
    let mul = read("the multiplication table")?;
    if nums.next().is_some() {
        return Err("trailing entries after the multiplication table".into());
    }
    Ok(RawTables {
        size,
        zero,
        one,
        add,
        mul,
        label: label.to_string(),
    })
}

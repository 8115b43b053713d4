//! The plain-text corpus format.
//!
//! ```text
//! # comments run to the end of the line
//! ring 4;
//! module A = (2);
//! module B = (4);
//! morphism phi : A -> B = [[2]];
//! complex Y { start: 0; modules: A, B; diffs: phi }
//! class X { ring: 4; members: [(2)], [(4)]; closed: extensions; bounds: L=3 k=2 }
//! ```
//!
//! Matrices list one row per invariant factor of the target. Modules in a
//! complex may be names or literal factor lists, differentials may be
//! morphism names or literal matrices. `members: all` is the class of all
//! modules.

mod lex;

use std::fmt::Write as _;

use indexmap::IndexMap;

use crate::classes::{Bounds, ClosureFlag, Members, ModuleClass};
use crate::complexes::Complex;
use crate::error::{Error, Result};
use crate::zm::{FinModule, Morphism, Ring};
use lex::{Lexer, Pos, Tok};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorpusDocument {
    pub ring: Ring,
    pub modules: IndexMap<String, FinModule>,
    pub morphisms: IndexMap<String, Morphism>,
    pub complexes: IndexMap<String, Complex>,
    pub classes: IndexMap<String, ModuleClass>,
}

impl CorpusDocument {
    pub fn new(ring: Ring) -> Self {
        Self {
            ring,
            modules: IndexMap::new(),
            morphisms: IndexMap::new(),
            complexes: IndexMap::new(),
            classes: IndexMap::new(),
        }
    }

    fn taken(&self, name: &str) -> bool {
        self.modules.contains_key(name)
            || self.morphisms.contains_key(name)
            || self.complexes.contains_key(name)
            || self.classes.contains_key(name)
    }

    /// The only complex, or the one called `name`.
    pub fn complex(&self, name: Option<&str>) -> Result<&Complex> {
        pick(&self.complexes, name, "complex")
    }

    pub fn morphism(&self, name: Option<&str>) -> Result<&Morphism> {
        pick(&self.morphisms, name, "morphism")
    }

    pub fn class(&self, name: Option<&str>) -> Result<&ModuleClass> {
        pick(&self.classes, name, "class")
    }
}

fn pick<'a, T>(map: &'a IndexMap<String, T>, name: Option<&str>, what: &str) -> Result<&'a T> {
    match name {
        Some(n) => map.get(n).ok_or_else(|| Error::Invalid(format!("no {what} named `{n}`"))),
        None if map.len() == 1 => Ok(&map[0]),
        None => Err(Error::Invalid(format!(
            "expected exactly one {what}, found {}",
            map.len()
        ))),
    }
}

fn at(pos: Pos, msg: impl Into<String>) -> Error {
    Error::Parse {
        line: pos.line,
        col: pos.col,
        msg: msg.into(),
    }
}

/// Attaches a position to a construction error.
fn located(pos: Pos, e: Error) -> Error {
    match e {
        Error::Parse { .. } => e,
        other => at(pos, other.to_string()),
    }
}

/// A matrix literal with the position of each entry.
struct MatrixLit {
    pos: Pos,
    rows: Vec<Vec<i128>>,
    cells: Vec<Vec<Pos>>,
}

impl MatrixLit {
    fn build(&self, source: &FinModule, target: &FinModule) -> Result<Morphism> {
        Morphism::new(source, target, &self.rows).map_err(|e| match e {
            Error::IllDefinedEntry { row, col, .. } => {
                let p = self.cells.get(row).and_then(|r| r.get(col)).copied().unwrap_or(self.pos);
                located(p, e)
            }
            other => located(self.pos, other),
        })
    }
}

struct Parser<'a> {
    lex: Lexer<'a>,
    doc: Option<CorpusDocument>,
}

pub fn parse(text: &str) -> Result<CorpusDocument> {
    let mut p = Parser {
        lex: Lexer::new(text),
        doc: None,
    };
    while let Some((tok, pos)) = p.lex.peek()? {
        let Tok::Ident(kw) = tok else {
            return Err(at(pos, format!("expected a declaration, found {tok}")));
        };
        match kw.as_str() {
            "ring" => p.ring()?,
            "module" => p.module()?,
            "morphism" => p.morphism()?,
            "complex" => p.complex()?,
            "class" => p.class()?,
            other => return Err(at(pos, format!("unknown declaration `{other}`"))),
        }
    }
    p.doc.ok_or_else(|| at(Pos { line: 1, col: 1 }, "missing `ring` declaration"))
}

impl Parser<'_> {
    fn doc(&mut self, pos: Pos) -> Result<&mut CorpusDocument> {
        self.doc.as_mut().ok_or_else(|| at(pos, "`ring` must come first"))
    }

    fn ring_of(&self) -> Option<Ring> {
        self.doc.as_ref().map(|d| d.ring)
    }

    fn fresh_name(&mut self) -> Result<(String, Pos)> {
        let (name, pos) = self.lex.ident()?;
        let doc = self.doc(pos)?;
        if doc.taken(&name) {
            return Err(at(pos, format!("name `{name}` is already declared")));
        }
        Ok((name, pos))
    }

    fn ring(&mut self) -> Result<()> {
        let (_, pos) = self.lex.keyword("ring")?;
        if self.doc.is_some() {
            return Err(at(pos, "duplicate `ring` declaration"));
        }
        let (m, mpos) = self.lex.int()?;
        let ring = Ring::new(u64::try_from(m).map_err(|_| at(mpos, "modulus must be positive"))?).map_err(|e| located(mpos, e))?;
        self.lex.punct(';')?;
        self.doc = Some(CorpusDocument::new(ring));
        Ok(())
    }

    /// `(d1, d2, ...)` or `0`.
    fn module_lit(&mut self) -> Result<FinModule> {
        let (tok, pos) = self.lex.next_tok()?;
        let ring = self.ring_of().ok_or_else(|| at(pos, "`ring` must come first"))?;
        match tok {
            Tok::Int(0) => Ok(FinModule::zero(ring)),
            Tok::Punct('(') => {
                let mut factors = Vec::new();
                if !self.lex.eat(')')? {
                    loop {
                        let (d, dpos) = self.lex.int()?;
                        factors.push(u64::try_from(d).map_err(|_| at(dpos, "factors must be positive"))?);
                        if self.lex.eat(')')? {
                            break;
                        }
                        self.lex.punct(',')?;
                    }
                }
                FinModule::new(ring, factors).map_err(|e| located(pos, e))
            }
            other => Err(at(pos, format!("expected a module such as (2, 4), found {other}"))),
        }
    }

    /// A literal module or the name of a declared one.
    fn module_ref(&mut self) -> Result<FinModule> {
        match self.lex.peek()? {
            Some((Tok::Ident(_), _)) => {
                let (name, pos) = self.lex.ident()?;
                let doc = self.doc(pos)?;
                doc.modules.get(&name).cloned().ok_or_else(|| at(pos, format!("unknown module `{name}`")))
            }
            _ => self.module_lit(),
        }
    }

    fn matrix_lit(&mut self) -> Result<MatrixLit> {
        let (_, pos) = self.lex.punct('[')?;
        let mut lit = MatrixLit {
            pos,
            rows: Vec::new(),
            cells: Vec::new(),
        };
        if self.lex.eat(']')? {
            return Ok(lit);
        }
        loop {
            self.lex.punct('[')?;
            let (mut row, mut cells) = (Vec::new(), Vec::new());
            if !self.lex.eat(']')? {
                loop {
                    let (v, vpos) = self.lex.int()?;
                    row.push(v);
                    cells.push(vpos);
                    if self.lex.eat(']')? {
                        break;
                    }
                    self.lex.punct(',')?;
                }
            }
            lit.rows.push(row);
            lit.cells.push(cells);
            if self.lex.eat(']')? {
                return Ok(lit);
            }
            self.lex.punct(',')?;
        }
    }

    fn module(&mut self) -> Result<()> {
        self.lex.keyword("module")?;
        let (name, _) = self.fresh_name()?;
        self.lex.punct('=')?;
        let m = self.module_lit()?;
        let (_, pos) = self.lex.punct(';')?;
        self.doc(pos)?.modules.insert(name, m);
        Ok(())
    }

    fn morphism(&mut self) -> Result<()> {
        self.lex.keyword("morphism")?;
        let (name, _) = self.fresh_name()?;
        self.lex.punct(':')?;
        let source = self.module_ref()?;
        self.lex.arrow()?;
        let target = self.module_ref()?;
        self.lex.punct('=')?;
        let f = self.matrix_lit()?.build(&source, &target)?;
        let (_, pos) = self.lex.punct(';')?;
        self.doc(pos)?.morphisms.insert(name, f);
        Ok(())
    }

    /// Reads `key:` and returns the key.
    fn field(&mut self) -> Result<(String, Pos)> {
        let (key, pos) = self.lex.ident()?;
        self.lex.punct(':')?;
        Ok((key, pos))
    }

    /// After a field value: `;` or the closing brace.
    fn end_field(&mut self) -> Result<bool> {
        if self.lex.eat('}')? {
            return Ok(true);
        }
        self.lex.punct(';')?;
        self.lex.eat('}')
    }

    fn complex(&mut self) -> Result<()> {
        let (_, kpos) = self.lex.keyword("complex")?;
        let (name, _) = self.fresh_name()?;
        self.lex.punct('{')?;
        let mut start = None;
        let mut modules: Option<Vec<FinModule>> = None;
        let mut diffs: Vec<(Pos, DiffRef)> = Vec::new();
        if !self.lex.eat('}')? {
            loop {
                let (key, pos) = self.field()?;
                match key.as_str() {
                    "start" => start = Some(self.lex.int()?.0 as i64),
                    "modules" => {
                        let mut list = vec![self.module_ref()?];
                        while self.lex.eat(',')? {
                            list.push(self.module_ref()?);
                        }
                        modules = Some(list);
                    }
                    "diffs" => loop {
                        let d = match self.lex.peek()? {
                            Some((Tok::Ident(_), p)) => (p, DiffRef::Name(self.lex.ident()?.0)),
                            Some((_, p)) => (p, DiffRef::Matrix(self.matrix_lit()?)),
                            None => return Err(at(pos, "unexpected end of input")),
                        };
                        diffs.push(d);
                        if !self.lex.eat(',')? {
                            break;
                        }
                    },
                    other => return Err(at(pos, format!("unknown complex field `{other}`"))),
                }
                if self.end_field()? {
                    break;
                }
            }
        }
        let modules = modules.ok_or_else(|| at(kpos, format!("complex `{name}` has no `modules` field")))?;
        if diffs.len() + 1 != modules.len() && !(modules.len() <= 1 && diffs.is_empty()) {
            return Err(at(
                kpos,
                format!("complex `{name}` has {} modules but {} differentials", modules.len(), diffs.len()),
            ));
        }
        let doc = self.doc(kpos)?;
        let mut maps = Vec::new();
        for (i, (pos, d)) in diffs.into_iter().enumerate() {
            let (s, t) = (&modules[i], &modules[i + 1]);
            let f = match d {
                DiffRef::Matrix(lit) => lit.build(s, t)?,
                DiffRef::Name(n) => {
                    let f = doc.morphisms.get(&n).ok_or_else(|| at(pos, format!("unknown morphism `{n}`")))?;
                    if f.source() != s || f.target() != t {
                        return Err(at(pos, format!("morphism `{n}` is {} -> {}, expected {s} -> {t}", f.source(), f.target())));
                    }
                    f.clone()
                }
            };
            maps.push(f);
        }
        let c = Complex::new(doc.ring, start.unwrap_or(0), modules, maps).map_err(|e| located(kpos, e))?;
        doc.complexes.insert(name, c);
        Ok(())
    }

    fn class(&mut self) -> Result<()> {
        let (_, kpos) = self.lex.keyword("class")?;
        let (name, _) = self.fresh_name()?;
        self.lex.punct('{')?;
        let mut members = None;
        let mut closed = Vec::new();
        let mut bounds = Bounds::default();
        if !self.lex.eat('}')? {
            loop {
                let (key, pos) = self.field()?;
                match key.as_str() {
                    "ring" => {
                        let (m, mpos) = self.lex.int()?;
                        let ring = self.doc(pos)?.ring;
                        if m != ring.modulus() as i128 {
                            return Err(at(mpos, format!("class ring Z/{m} differs from the document ring {ring}")));
                        }
                    }
                    "members" => {
                        if let Some((Tok::Ident(w), _)) = self.lex.peek()? {
                            if w == "all" {
                                self.lex.ident()?;
                                members = Some(Members::All);
                            }
                        }
                        if members.is_none() {
                            let mut list = Vec::new();
                            loop {
                                self.lex.punct('[')?;
                                list.push(self.module_ref()?);
                                self.lex.punct(']')?;
                                if !self.lex.eat(',')? {
                                    break;
                                }
                            }
                            members = Some(Members::Finite(list));
                        }
                    }
                    "closed" => loop {
                        let (flag, fpos) = self.lex.ident()?;
                        closed.push(ClosureFlag::parse(&flag).ok_or_else(|| at(fpos, format!("unknown closure flag `{flag}`")))?);
                        if !self.lex.eat(',')? {
                            break;
                        }
                    },
                    "bounds" => bounds = self.bounds()?,
                    other => return Err(at(pos, format!("unknown class field `{other}`"))),
                }
                if self.end_field()? {
                    break;
                }
            }
        }
        let members = members.ok_or_else(|| at(kpos, format!("class `{name}` has no `members` field")))?;
        let doc = self.doc(kpos)?;
        let x = ModuleClass::new(doc.ring, members, &closed, bounds).map_err(|e| located(kpos, e))?;
        doc.classes.insert(name, x);
        Ok(())
    }

    /// `L=3 k=2`, either part optional.
    fn bounds(&mut self) -> Result<Bounds> {
        let mut b = Bounds::default();
        while let Some((Tok::Ident(key), pos)) = self.lex.peek()? {
            if key != "L" && key != "k" {
                break;
            }
            self.lex.ident()?;
            self.lex.punct('=')?;
            let (v, vpos) = self.lex.int()?;
            let v = usize::try_from(v).map_err(|_| at(vpos, "bounds must be nonnegative"))?;
            match key.as_str() {
                "L" => b.length = v,
                _ => b.factors = v,
            }
            let _ = pos;
        }
        Ok(b)
    }
}

enum DiffRef {
    Name(String),
    Matrix(MatrixLit),
}

/// Writes a matrix literal, one row per target factor.
pub fn matrix_text(f: &Morphism) -> String {
    let rows: Vec<String> = f
        .to_rows()
        .iter()
        .map(|r| format!("[{}]", r.iter().map(u64::to_string).collect::<Vec<_>>().join(", ")))
        .collect();
    format!("[{}]", rows.join(", "))
}

pub fn module_text(m: &FinModule) -> String {
    if m.is_zero() {
        "()".to_string()
    } else {
        m.to_string()
    }
}

/// Writes a complex declaration with literal modules and matrices.
pub fn complex_text(name: &str, c: &Complex) -> String {
    let mods: Vec<String> = if c.is_zero() {
        vec!["()".to_string()]
    } else {
        c.modules().iter().map(module_text).collect()
    };
    let mut s = format!("complex {name} {{ start: {}; modules: {}", if c.is_zero() { 0 } else { c.lo() }, mods.join(", "));
    if !c.diffs().is_empty() {
        let ds: Vec<String> = c.diffs().iter().map(matrix_text).collect();
        let _ = write!(s, "; diffs: {}", ds.join(", "));
    }
    s.push_str(" }");
    s
}

pub fn class_text(name: &str, x: &ModuleClass) -> String {
    let members = match x.members() {
        Members::All => "all".to_string(),
        Members::Finite(list) if list.is_empty() => "[()]".to_string(),
        Members::Finite(list) => list.iter().map(|m| format!("[{m}]")).collect::<Vec<_>>().join(", "),
    };
    let mut s = format!("class {name} {{ ring: {}; members: {members}", x.ring().modulus());
    let flags: Vec<&str> = x.declared_closure().map(ClosureFlag::name).collect();
    if !flags.is_empty() {
        let _ = write!(s, "; closed: {}", flags.join(", "));
    }
    let _ = write!(s, "; bounds: {} }}", x.bounds());
    s
}

pub fn serialize(doc: &CorpusDocument) -> String {
    let mut s = format!("ring {};\n", doc.ring.modulus());
    for (n, m) in &doc.modules {
        let _ = writeln!(s, "module {n} = {};", module_text(m));
    }
    for (n, f) in &doc.morphisms {
        let _ = writeln!(
            s,
            "morphism {n} : {} -> {} = {};",
            module_text(f.source()),
            module_text(f.target()),
            matrix_text(f)
        );
    }
    for (n, c) in &doc.complexes {
        let _ = writeln!(s, "{}", complex_text(n, c));
    }
    for (n, x) in &doc.classes {
        let _ = writeln!(s, "{}", class_text(n, x));
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_module() {
        let d = parse("ring 4; module M = (2);").unwrap();
        assert_eq!(d.modules.len(), 1);
        assert_eq!(d.modules["M"].factors(), &[2]);
    }

    #[test]
    fn ill_defined_entry_is_named() {
        let text = "ring 4;\nmodule A = (2);\nmodule B = (4);\nmorphism f : A -> B = [[1]];\n";
        match parse(text) {
            Err(Error::Parse { line, col, msg }) => {
                assert_eq!((line, col), (4, 25));
                assert!(msg.contains("entry (0, 0) = 1"), "{msg}");
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn syntax_errors_have_positions() {
        assert!(matches!(parse("ring 4\nmodule A = (2);"), Err(Error::Parse { line: 2, col: 1, .. })));
        assert!(matches!(parse("module A = (2);"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(parse("ring 4; module A = (3);"), Err(Error::Parse { .. })));
        assert!(matches!(parse("ring 4; module A = (2); module A = (4);"), Err(Error::Parse { .. })));
        assert!(matches!(parse("ring 4; complex Y { modules: Q }"), Err(Error::Parse { .. })));
    }

    #[test]
    fn full_document_round_trips() {
        let text = "\
# two-term complex
ring 4;
module A = (2);
module B = (4);
morphism phi : A -> B = [[2]];
complex Y { start: 0; modules: A, B; diffs: phi }
complex Z { start: -1; modules: (4), (2, 4), (); diffs: [[0], [2]], [] }
class X { ring: 4; members: [(2)], [(4)]; closed: extensions; bounds: L=3 k=1 }
class W { members: all }
";
        let d = parse(text).unwrap();
        assert_eq!(d.complexes["Z"].len(), 2);
        let again = parse(&serialize(&d)).unwrap();
        assert_eq!(again, d);
        assert_eq!(serialize(&again), serialize(&d));
    }

    #[test]
    fn declared_closure_is_checked() {
        let e = parse("ring 4; class X { members: [(2)]; closed: extensions; bounds: L=2 k=1 }");
        assert!(matches!(e, Err(Error::Parse { .. })));
    }
}

//! Text syntax for ρ-terms.
//!
//! Binder identifiers are resolved to concrete names `@(g!(c_i))` where `g`
//! is fresh for every closed name written in the input and the `c_i` are
//! pairwise distinct, so distinct identifiers never collide with each other
//! or with written names.

use std::collections::{BTreeMap, BTreeSet};

use super::lexer::{describe, lex, Cursor, Tok};
use super::ParseError;
use crate::rho::canon::canon_name;
use crate::rho::names::gen_fresh;
use crate::rho::term::{RhoName, RhoProc};

#[derive(Clone, Debug)]
enum Ast {
    Nil,
    Drop(NameAst),
    Lift(NameAst, Box<Ast>),
    Input(NameAst, NameAst, Box<Ast>),
    Par(Vec<Ast>),
    Def(String, usize, usize),
}

#[derive(Clone, Debug)]
enum NameAst {
    Quote(Box<Ast>),
    Ident(String, usize, usize),
}

struct Parser {
    cur: Cursor,
    defs: BTreeMap<String, Ast>,
}

impl Parser {
    fn par(&mut self) -> Result<Ast, ParseError> {
        let mut items = vec![self.prefix()?];
        while *self.cur.peek() == Tok::Bar {
            self.cur.next();
            items.push(self.prefix()?);
        }
        Ok(if items.len() == 1 { items.pop().unwrap() } else { Ast::Par(items) })
    }

    fn prefix(&mut self) -> Result<Ast, ParseError> {
        match self.cur.peek().clone() {
            Tok::Zero => {
                self.cur.next();
                Ok(Ast::Nil)
            }
            Tok::Star => {
                self.cur.next();
                Ok(Ast::Drop(self.name()?))
            }
            Tok::LParen => {
                let save = self.cur.pos;
                if let Ok(n) = self.name() {
                    if matches!(self.cur.peek(), Tok::Bang | Tok::Query) {
                        return self.action(n);
                    }
                }
                self.cur.pos = save;
                self.cur.next();
                let p = self.par()?;
                self.cur.expect(Tok::RParen, "')'")?;
                Ok(p)
            }
            Tok::Ident(s) if !matches!(self.cur.peek_at(1), Tok::Bang | Tok::Query) => {
                let (line, col) = position(&self.cur);
                if self.defs.contains_key(&s) {
                    self.cur.next();
                    Ok(Ast::Def(s, line, col))
                } else {
                    Err(self.cur.error(format!("'{s}' is not a definition; expected a process")))
                }
            }
            Tok::At | Tok::Ident(_) => {
                let n = self.name()?;
                self.action(n)
            }
            t => Err(self.cur.error(format!("expected a process, found {}", describe(&t)))),
        }
    }

    fn action(&mut self, subject: NameAst) -> Result<Ast, ParseError> {
        match self.cur.next() {
            Tok::Bang => {
                self.cur.expect(Tok::LParen, "'(' after '!'")?;
                let body = self.par()?;
                self.cur.expect(Tok::RParen, "')'")?;
                Ok(Ast::Lift(subject, Box::new(body)))
            }
            Tok::Query => {
                self.cur.expect(Tok::LParen, "'(' after '?'")?;
                let binder = self.name()?;
                self.cur.expect(Tok::RParen, "')'")?;
                self.cur.expect(Tok::Dot, "'.'")?;
                let body = self.prefix()?;
                Ok(Ast::Input(subject, binder, Box::new(body)))
            }
            _ => {
                self.cur.pos -= 1;
                Err(self.cur.error("expected '!' or '?' after a name"))
            }
        }
    }

    fn name(&mut self) -> Result<NameAst, ParseError> {
        match self.cur.peek().clone() {
            Tok::At => {
                self.cur.next();
                match self.cur.peek().clone() {
                    Tok::Zero => {
                        self.cur.next();
                        Ok(NameAst::Quote(Box::new(Ast::Nil)))
                    }
                    Tok::LParen => {
                        self.cur.next();
                        let p = self.par()?;
                        self.cur.expect(Tok::RParen, "')'")?;
                        Ok(NameAst::Quote(Box::new(p)))
                    }
                    Tok::Star => {
                        self.cur.next();
                        let x = self.name()?;
                        Ok(NameAst::Quote(Box::new(Ast::Drop(x))))
                    }
                    Tok::Ident(s) if self.defs.contains_key(&s) => {
                        let (line, col) = position(&self.cur);
                        self.cur.next();
                        Ok(NameAst::Quote(Box::new(Ast::Def(s, line, col))))
                    }
                    t => Err(self.cur.error(format!(
                        "expected '0', '(' or '*' after '@', found {}",
                        describe(&t)
                    ))),
                }
            }
            Tok::Ident(s) => {
                let (line, col) = position(&self.cur);
                self.cur.next();
                Ok(NameAst::Ident(s, line, col))
            }
            Tok::LParen => {
                self.cur.next();
                let n = self.name()?;
                self.cur.expect(Tok::RParen, "')'")?;
                Ok(n)
            }
            t => Err(self.cur.error(format!("expected a name, found {}", describe(&t)))),
        }
    }
}

fn position(c: &Cursor) -> (usize, usize) {
    c.position()
}

/// Identifier used when printing the binder marker at `level`.
pub fn marker_ident(level: usize) -> String {
    format!("y{level}")
}

struct Resolver<'a> {
    defs: &'a BTreeMap<String, Ast>,
    binders: BTreeMap<String, RhoName>,
    gen: RhoName,
}

impl Resolver<'_> {
    fn binder_name(&mut self, id: &str) -> RhoName {
        if let Some(n) = self.binders.get(id) {
            return n.clone();
        }
        // c_0 = 0, c_{i+1} = @0!(c_i)
        let mut c = RhoProc::Nil;
        for _ in 0..self.binders.len() {
            c = RhoProc::lift(RhoName::zero(), c);
        }
        let n = RhoName::quote(RhoProc::lift(self.gen.clone(), c));
        self.binders.insert(id.to_string(), n.clone());
        n
    }

    fn proc(&mut self, a: &Ast, scope: &mut Vec<String>) -> Result<RhoProc, ParseError> {
        Ok(match a {
            Ast::Nil => RhoProc::Nil,
            Ast::Drop(x) => RhoProc::Drop(self.name(x, scope)?),
            Ast::Lift(x, b) => RhoProc::lift(self.name(x, scope)?, self.proc(b, scope)?),
            Ast::Input(x, y, b) => {
                let subject = self.name(x, scope)?;
                match y {
                    NameAst::Ident(id, _, _) => {
                        let binder = self.binder_name(id);
                        scope.push(id.clone());
                        let body = self.proc(b, scope);
                        scope.pop();
                        RhoProc::input(subject, binder, body?)
                    }
                    q => {
                        let binder = self.name(q, scope)?;
                        RhoProc::input(subject, binder, self.proc(b, scope)?)
                    }
                }
            }
            Ast::Par(ps) => RhoProc::Par(
                ps.iter()
                    .map(|q| self.proc(q, scope))
                    .collect::<Result<_, _>>()?,
            ),
            Ast::Def(d, line, col) => {
                let body = self.defs.get(d).ok_or_else(|| {
                    ParseError::new(*line, *col, format!("unknown definition '{d}'"))
                })?;
                // definitions are closed: they do not see enclosing binders
                self.proc(&body.clone(), &mut Vec::new())?
            }
        })
    }

    fn name(&mut self, x: &NameAst, scope: &mut Vec<String>) -> Result<RhoName, ParseError> {
        match x {
            NameAst::Quote(p) => Ok(RhoName::quote(self.proc(p, scope)?)),
            NameAst::Ident(id, line, col) => {
                if scope.contains(id) {
                    Ok(self.binder_name(id))
                } else if self.defs.contains_key(id) {
                    let p = self.proc(&Ast::Def(id.clone(), *line, *col), scope)?;
                    Ok(RhoName::quote(p))
                } else {
                    Err(ParseError::new(*line, *col, format!("unbound identifier '{id}'")))
                }
            }
        }
    }
}

fn closed_names(a: &Ast, out: &mut Vec<RhoName>, defs: &BTreeMap<String, Ast>) {
    fn closed(a: &Ast) -> bool {
        match a {
            Ast::Nil => true,
            Ast::Drop(x) => closed_name(x),
            Ast::Lift(x, b) => closed_name(x) && closed(b),
            Ast::Input(x, y, b) => closed_name(x) && closed_name(y) && closed(b),
            Ast::Par(ps) => ps.iter().all(closed),
            Ast::Def(..) => false,
        }
    }
    fn closed_name(x: &NameAst) -> bool {
        matches!(x, NameAst::Quote(p) if closed(p))
    }
    let visit_name = |x: &NameAst, out: &mut Vec<RhoName>| {
        if let NameAst::Quote(p) = x {
            if closed(p) {
                let mut r = Resolver {
                    defs,
                    binders: BTreeMap::new(),
                    gen: RhoName::zero(),
                };
                if let Ok(n) = r.name(x, &mut Vec::new()) {
                    out.push(canon_name(&n));
                }
            } else {
                closed_names(p, out, defs);
            }
        }
    };
    match a {
        Ast::Nil | Ast::Def(..) => {}
        Ast::Drop(x) => visit_name(x, out),
        Ast::Lift(x, b) => {
            visit_name(x, out);
            closed_names(b, out, defs);
        }
        Ast::Input(x, y, b) => {
            visit_name(x, out);
            visit_name(y, out);
            closed_names(b, out, defs);
        }
        Ast::Par(ps) => ps.iter().for_each(|q| closed_names(q, out, defs)),
    }
}

/// Parse a ρ-term, optionally preceded by `def name = term` lines.
pub fn parse_rho(src: &str) -> Result<RhoProc, ParseError> {
    let (defs, main) = parse_file(src)?;
    let mut written = Vec::new();
    closed_names(&main, &mut written, &defs);
    for d in defs.values() {
        closed_names(d, &mut written, &defs);
    }
    let set: BTreeSet<RhoName> = written.into_iter().collect();
    let mut r = Resolver {
        defs: &defs,
        binders: BTreeMap::new(),
        gen: gen_fresh(set.iter()),
    };
    r.proc(&main, &mut Vec::new())
}

/// Parse a standalone ρ-name such as `@(0 | 0)`.
pub fn parse_rho_name(src: &str) -> Result<RhoName, ParseError> {
    let p = parse_rho(&format!("({src})!(0)")).map_err(|e| ParseError {
        column: e.column.saturating_sub(1).max(1),
        ..e
    })?;
    match p {
        RhoProc::Lift(x, _) => Ok(x),
        _ => Err(ParseError::new(1, 1, "expected a name")),
    }
}

fn parse_file(src: &str) -> Result<(BTreeMap<String, Ast>, Ast), ParseError> {
    let mut p = Parser {
        cur: Cursor::new(lex(src)?),
        defs: BTreeMap::new(),
    };
    let mut main = None;
    loop {
        match p.cur.peek() {
            Tok::Eof => break,
            Tok::Def => {
                p.cur.next();
                let name = p.cur.ident("definition name")?;
                p.cur.expect(Tok::Eq, "'='")?;
                let body = p.par()?;
                p.defs.insert(name, body);
            }
            _ => {
                if main.is_some() {
                    return Err(p.cur.error("unexpected input after the term"));
                }
                main = Some(p.par()?);
            }
        }
    }
    let main = main.ok_or_else(|| p.cur.error("no term found"))?;
    Ok((p.defs, main))
}

/// Printer for ρ-terms. Names equivalent to an alias print as the alias.
#[derive(Clone, Debug, Default)]
pub struct RhoPrinter {
    pub aliases: Vec<(RhoName, String)>,
}

impl RhoPrinter {
    pub fn with_aliases(aliases: impl IntoIterator<Item = (RhoName, String)>) -> Self {
        RhoPrinter {
            aliases: aliases.into_iter().map(|(n, s)| (canon_name(&n), s)).collect(),
        }
    }

    pub fn proc(&self, p: &RhoProc) -> String {
        let mut s = String::new();
        self.write_proc(p, &mut s);
        s
    }

    pub fn name(&self, x: &RhoName) -> String {
        let mut s = String::new();
        self.write_name(x, &mut s);
        s
    }

    fn write_proc(&self, p: &RhoProc, s: &mut String) {
        match p {
            RhoProc::Nil => s.push('0'),
            RhoProc::Drop(x) => {
                s.push('*');
                self.write_name(x, s);
            }
            RhoProc::Lift(x, b) => {
                self.write_name(x, s);
                s.push_str("!(");
                self.write_proc(b, s);
                s.push(')');
            }
            RhoProc::Input(x, y, b) => {
                self.write_name(x, s);
                s.push_str("?(");
                self.write_name(y, s);
                s.push_str(").");
                match **b {
                    RhoProc::Nil => s.push('0'),
                    _ => {
                        s.push_str("( ");
                        self.write_proc(b, s);
                        s.push_str(" )");
                    }
                }
            }
            RhoProc::Par(ps) => {
                if ps.is_empty() {
                    s.push('0');
                }
                for (i, q) in ps.iter().enumerate() {
                    if i > 0 {
                        s.push_str(" | ");
                    }
                    if matches!(q, RhoProc::Par(_)) {
                        s.push_str("( ");
                        self.write_proc(q, s);
                        s.push_str(" )");
                    } else {
                        self.write_proc(q, s);
                    }
                }
            }
        }
    }

    fn write_name(&self, x: &RhoName, s: &mut String) {
        if !self.aliases.is_empty() {
            // names with markers can only be matched verbatim
            let c = if x.has_markers() { x.clone() } else { canon_name(x) };
            if let Some((_, a)) = self.aliases.iter().find(|(n, _)| *n == c) {
                s.push_str(a);
                return;
            }
        }
        match x {
            RhoName::Bound(k) => s.push_str(&marker_ident(*k)),
            RhoName::Quote(b) => match &**b {
                RhoProc::Nil => s.push_str("@0"),
                body => {
                    s.push_str("@(");
                    self.write_proc(body, s);
                    s.push(')');
                }
            },
        }
    }
}

pub fn print_rho(p: &RhoProc) -> String {
    RhoPrinter::default().proc(p)
}

pub fn print_rho_name(x: &RhoName) -> String {
    RhoPrinter::default().name(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rho::canon::{canon_proc, struct_eq};
    use crate::rho::names::lincr;

    #[test]
    fn parses_basic_term() {
        let p = parse_rho("@0?(y).*y | @0!(0)").unwrap();
        let RhoProc::Par(ps) = &p else { panic!("{p:?}") };
        assert_eq!(ps.len(), 2);
        assert!(matches!(&ps[0], RhoProc::Input(_, _, b) if matches!(**b, RhoProc::Drop(_))));
        assert_eq!(ps[1], RhoProc::lift(RhoName::zero(), RhoProc::Nil));
    }

    #[test]
    fn parenthesized_subject() {
        let p = parse_rho("(@0)!(0)").unwrap();
        assert_eq!(p, RhoProc::lift(RhoName::zero(), RhoProc::Nil));
        let x = parse_rho_name("@((@0)!(0))").unwrap();
        assert_eq!(x, lincr(&RhoName::zero()));
        let q = parse_rho("(@0!(0) | 0)").unwrap();
        assert!(struct_eq(&q, &RhoProc::lift(RhoName::zero(), RhoProc::Nil)));
    }

    #[test]
    fn errors_have_positions() {
        let e = parse_rho("*@(").unwrap_err();
        assert_eq!((e.line, e.column), (1, 4));
        let e = parse_rho("@0!(0)\n  | y!(0)").unwrap_err();
        assert_eq!((e.line, e.column), (2, 5));
    }

    #[test]
    fn definitions_expand() {
        let p = parse_rho("// a copier\ndef d = @0?(y).( *y | @0!(*y) )\nd | @0!(d)").unwrap();
        assert_eq!(p.components().len(), 2);
    }

    #[test]
    fn distinct_binders_differ_from_written_names() {
        let p = parse_rho("@0?(a).@0?(b).( a!(0) | b!(0) | @0!(0) )").unwrap();
        let c = canon_proc(&p);
        assert!(print_rho(&c).contains("y0!(0)"));
        assert!(print_rho(&c).contains("y1!(0)"));
    }

    #[test]
    fn canonical_round_trip() {
        let src = "@0?(y).( *y | @(y!(0))!(0) ) | @((@0)?(@0).0)!(@0?(q).q!(0))";
        let c = canon_proc(&parse_rho(src).unwrap());
        let printed = print_rho(&c);
        assert_eq!(canon_proc(&parse_rho(&printed).unwrap()), c, "{printed}");
    }
}

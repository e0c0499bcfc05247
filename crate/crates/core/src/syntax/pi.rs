//! Text syntax for π-terms.

use std::collections::BTreeMap;

use super::lexer::{describe, lex, Cursor, Tok};
use super::ParseError;
use crate::pi::term::{atoms_in_order, PiName, PiProc};

struct Parser {
    cur: Cursor,
    defs: BTreeMap<String, PiProc>,
}

impl Parser {
    fn par(&mut self) -> Result<PiProc, ParseError> {
        let mut items = vec![self.prefix()?];
        while *self.cur.peek() == Tok::Bar {
            self.cur.next();
            items.push(self.prefix()?);
        }
        Ok(PiProc::par(items))
    }

    fn atom(&mut self, what: &str) -> Result<PiName, ParseError> {
        let (line, col) = self.cur.position();
        let s = self.cur.ident(what)?;
        if !s.starts_with(|c: char| c.is_ascii_lowercase()) {
            return Err(ParseError::new(line, col, format!("'{s}' is not a valid name")));
        }
        Ok(PiName::Atom(s))
    }

    fn prefix(&mut self) -> Result<PiProc, ParseError> {
        match self.cur.peek().clone() {
            Tok::Zero => {
                self.cur.next();
                Ok(PiProc::Nil)
            }
            Tok::New => {
                self.cur.next();
                let x = self.atom("a restricted name")?;
                self.cur.expect(Tok::Dot, "'.'")?;
                Ok(PiProc::New(x, Box::new(self.prefix()?)))
            }
            Tok::Bang => {
                self.cur.next();
                Ok(PiProc::Repl(Box::new(self.prefix()?)))
            }
            Tok::LParen => {
                self.cur.next();
                let p = self.par()?;
                self.cur.expect(Tok::RParen, "')'")?;
                Ok(p)
            }
            Tok::Ident(s) => match self.cur.peek_at(1) {
                Tok::Bang => {
                    let x = self.atom("a channel")?;
                    self.cur.next();
                    let y = self.atom("an object name")?;
                    Ok(PiProc::Output(x, y))
                }
                Tok::Query => {
                    let x = self.atom("a channel")?;
                    self.cur.next();
                    self.cur.expect(Tok::LParen, "'(' after '?'")?;
                    let y = self.atom("a binder")?;
                    self.cur.expect(Tok::RParen, "')'")?;
                    self.cur.expect(Tok::Dot, "'.'")?;
                    Ok(PiProc::Input(x, y, Box::new(self.prefix()?)))
                }
                _ => match self.defs.get(&s) {
                    Some(p) => {
                        let p = p.clone();
                        self.cur.next();
                        Ok(p)
                    }
                    None => Err(self.cur.error(format!("'{s}' is not a definition; expected a process"))),
                },
            },
            t => Err(self.cur.error(format!("expected a process, found {}", describe(&t)))),
        }
    }
}

/// Parse a π-term, optionally preceded by `def name = term` lines.
pub fn parse_pi(src: &str) -> Result<PiProc, ParseError> {
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
    main.ok_or_else(|| p.cur.error("no term found"))
}

/// Identifier prefix for printed binder markers that clashes with no atom
/// of `p`.
fn marker_prefix(p: &PiProc) -> String {
    let atoms = atoms_in_order(p);
    let mut prefix = String::from("v");
    while atoms.iter().any(|a| {
        a.strip_prefix(prefix.as_str())
            .is_some_and(|rest| !rest.is_empty() && rest.chars().all(|c| c.is_ascii_digit()))
    }) {
        prefix.push('_');
    }
    prefix
}

pub fn print_pi(p: &PiProc) -> String {
    let prefix = marker_prefix(p);
    let mut s = String::new();
    write(p, &prefix, &mut s);
    s
}

fn name(x: &PiName, prefix: &str) -> String {
    match x {
        PiName::Atom(a) => a.clone(),
        PiName::Bound(k) => format!("{prefix}{k}"),
    }
}

fn write_guarded(p: &PiProc, prefix: &str, s: &mut String) {
    if matches!(p, PiProc::Par(_)) {
        s.push_str("( ");
        write(p, prefix, s);
        s.push_str(" )");
    } else {
        write(p, prefix, s);
    }
}

fn write(p: &PiProc, prefix: &str, s: &mut String) {
    match p {
        PiProc::Nil => s.push('0'),
        PiProc::Output(x, y) => {
            s.push_str(&name(x, prefix));
            s.push('!');
            s.push_str(&name(y, prefix));
        }
        PiProc::Input(x, y, b) => {
            s.push_str(&name(x, prefix));
            s.push_str("?(");
            s.push_str(&name(y, prefix));
            s.push_str(").");
            write_guarded(b, prefix, s);
        }
        PiProc::New(x, b) => {
            s.push_str("new ");
            s.push_str(&name(x, prefix));
            s.push_str(" . ");
            write_guarded(b, prefix, s);
        }
        PiProc::Repl(b) => {
            s.push('!');
            write_guarded(b, prefix, s);
        }
        PiProc::Par(ps) => {
            if ps.is_empty() {
                s.push('0');
            }
            for (i, q) in ps.iter().enumerate() {
                if i > 0 {
                    s.push_str(" | ");
                }
                write_guarded(q, prefix, s);
            }
        }
    }
}

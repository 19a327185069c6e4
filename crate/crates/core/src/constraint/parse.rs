//! Recursive-descent parser for the constraint DSL.
//!
//! ```text
//! file       := header line* "=>" line constraint
//! header     := "vars:" ident ("," ident)*
//! constraint := "I(" set ";" set ["|" set] ")" | "H(" set ["|" set] ")"
//!             | "FD:" set "->" set | "MVD:" set "->>" set ["|" set]
//!             | "D:" "{" set "}" ("+" "{" set "}")*
//! set        := "0" | ident ("," ident)*
//! ```

use std::sync::Arc;

use super::{Constraint, Implication};
use crate::error::{Error, Result};
use crate::varset::{VarSet, VarUniverse, MAX_VARS};

struct Cursor<'a> {
    chars: Vec<char>,
    pos: usize,
    line: usize,
    universe: Option<&'a VarUniverse>,
}

impl<'a> Cursor<'a> {
    fn new(text: &str, line: usize, universe: Option<&'a VarUniverse>) -> Self {
        Cursor {
            chars: text.chars().collect(),
            pos: 0,
            line,
            universe,
        }
    }

    fn err(&self, message: impl Into<String>) -> Error {
        Error::Syntax {
            line: self.line,
            column: self.pos + 1,
            message: message.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.chars.get(self.pos).is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn at(&mut self, lit: &str) -> bool {
        self.skip_ws();
        let n = lit.chars().count();
        self.pos + n <= self.chars.len()
            && self.chars[self.pos..self.pos + n]
                .iter()
                .copied()
                .eq(lit.chars())
    }

    fn eat(&mut self, lit: &str) -> bool {
        if self.at(lit) {
            self.pos += lit.chars().count();
            true
        } else {
            false
        }
    }

    /// Eats `parts` in order, whitespace allowed between them; no-op on failure.
    fn eat_seq(&mut self, parts: &[&str]) -> bool {
        let save = self.pos;
        if parts.iter().all(|p| self.eat(p)) {
            true
        } else {
            self.pos = save;
            false
        }
    }

    fn expect(&mut self, lit: &str) -> Result<()> {
        if self.eat(lit) {
            Ok(())
        } else {
            Err(self.err(format!("expected `{lit}`")))
        }
    }

    fn end(&mut self) -> Result<()> {
        match self.peek() {
            None => Ok(()),
            Some(c) => Err(self.err(format!("unexpected `{c}`"))),
        }
    }

    fn ident(&mut self) -> Result<String> {
        self.skip_ws();
        let start = self.pos;
        while self
            .chars
            .get(self.pos)
            .is_some_and(|&c| c.is_alphanumeric() || c == '_' || c == '\'')
        {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.err("expected a variable name"));
        }
        Ok(self.chars[start..self.pos].iter().collect())
    }

    fn set(&mut self) -> Result<VarSet> {
        let u = self.universe.expect("sets are parsed against a universe");
        if self.peek() == Some('0') {
            let save = self.pos;
            self.pos += 1;
            let next = self.chars.get(self.pos).copied();
            if !next.is_some_and(|c| c.is_alphanumeric() || c == '_') {
                return Ok(VarSet::EMPTY);
            }
            self.pos = save;
        }
        let mut out = VarSet::EMPTY;
        loop {
            let col = self.pos;
            let name = self.ident()?;
            match u.index_of(&name) {
                Some(i) => out = out.with(i),
                None => {
                    self.pos = col;
                    self.skip_ws();
                    return Err(Error::UnknownVariable(name));
                }
            }
            if !self.eat(",") {
                return Ok(out);
            }
        }
    }

    /// A set that may be omitted before `terminator`.
    fn opt_set(&mut self, terminator: &str) -> Result<VarSet> {
        if self.at(terminator) {
            Ok(VarSet::EMPTY)
        } else {
            self.set()
        }
    }

    fn constraint(&mut self) -> Result<Constraint> {
        let u = self
            .universe
            .expect("constraints are parsed against a universe");
        let c = if self.eat_seq(&["I", "("]) {
            let a = self.set()?;
            self.expect(";")?;
            let b = self.set()?;
            let given = if self.eat("|") {
                self.opt_set(")")?
            } else {
                VarSet::EMPTY
            };
            self.expect(")")?;
            Constraint::ci(a, b, given)
        } else if self.eat_seq(&["H", "("]) {
            let y = self.set()?;
            let x = if self.eat("|") {
                self.opt_set(")")?
            } else {
                VarSet::EMPTY
            };
            self.expect(")")?;
            Constraint::conditional(x, y)
        } else if self.eat_seq(&["FD", ":"]) {
            let x = self.opt_set("->")?;
            self.expect("->")?;
            let y = self.set()?;
            Constraint::conditional(x, y)
        } else if self.eat_seq(&["MVD", ":"]) {
            let x = self.opt_set("->>")?;
            self.expect("->>")?;
            let y = self.set()?;
            let z = if self.eat("|") {
                self.set()?
            } else {
                u.full() - x - y
            };
            if x | y | z != u.full() {
                return Err(Error::NonSaturatedMvd(format!(
                    "{} ->> {} | {} misses {}",
                    u.fmt_set(x),
                    u.fmt_set(y),
                    u.fmt_set(z),
                    u.fmt_set(u.full() - x - y - z)
                )));
            }
            Constraint::ci(y, z, x)
        } else if self.eat_seq(&["D", ":"]) {
            let mut atoms = Vec::new();
            loop {
                self.expect("{")?;
                let col = self.pos;
                let w = self.opt_set("}")?;
                if w == u.full() {
                    self.pos = col;
                    return Err(self.err("the full universe is not an atom"));
                }
                self.expect("}")?;
                atoms.push(w);
                if !self.eat("+") {
                    break;
                }
            }
            Constraint::Differential(atoms)
        } else {
            return Err(self.err("expected `I(`, `H(`, `FD:`, `MVD:` or `D:`"));
        };
        self.end()?;
        Ok(c)
    }
}

fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(i) => &line[..i],
        None => line,
    }
}

/// Parses one constraint against `universe`.
pub fn parse_constraint(text: &str, universe: &VarUniverse) -> Result<Constraint> {
    Cursor::new(strip_comment(text), 1, Some(universe)).constraint()
}

/// Parses an implication file. The universe comes from the `vars:` header.
pub fn parse_implication(text: &str) -> Result<Implication> {
    parse_implication_with_cap(text, MAX_VARS)
}

/// As [`parse_implication`], rejecting headers with more than `cap` variables.
pub fn parse_implication_with_cap(text: &str, cap: usize) -> Result<Implication> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, strip_comment(l)))
        .filter(|(_, l)| !l.trim().is_empty());

    let (hline, header) = lines.next().ok_or(Error::Syntax {
        line: 1,
        column: 1,
        message: "empty input; expected `vars:` header".into(),
    })?;
    let mut cur = Cursor::new(header, hline, None);
    if !cur.eat_seq(&["vars", ":"]) {
        return Err(cur.err("expected `vars:` header"));
    }
    let mut names = vec![cur.ident()?];
    while cur.eat(",") {
        names.push(cur.ident()?);
    }
    cur.end()?;
    let universe: Arc<VarUniverse> = VarUniverse::with_cap(names, cap)?;

    let mut antecedents = Vec::new();
    let mut consequent = None;
    let mut seen_arrow = false;
    for (lineno, line) in lines {
        if line.trim() == "=>" {
            if seen_arrow {
                return Err(Error::Syntax {
                    line: lineno,
                    column: 1,
                    message: "second `=>`".into(),
                });
            }
            seen_arrow = true;
            continue;
        }
        let c = Cursor::new(line, lineno, Some(&universe)).constraint()?;
        if !seen_arrow {
            antecedents.push(c);
        } else if consequent.is_none() {
            consequent = Some(c);
        } else {
            return Err(Error::Syntax {
                line: lineno,
                column: 1,
                message: "exactly one constraint may follow `=>`".into(),
            });
        }
    }
    if !seen_arrow {
        return Err(Error::Syntax {
            line: text.lines().count().max(1),
            column: 1,
            message: "missing `=>`".into(),
        });
    }
    let consequent = consequent.ok_or(Error::Syntax {
        line: text.lines().count().max(1),
        column: 1,
        message: "missing consequent after `=>`".into(),
    })?;
    Implication::new(universe, antecedents, consequent)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn u3() -> Arc<VarUniverse> {
        VarUniverse::letters(3).unwrap()
    }

    #[test]
    fn basic_forms() {
        let u = u3();
        let s = |t: &str| u.parse_set(t).unwrap();
        assert_eq!(
            parse_constraint("I(A;B|C)", &u).unwrap(),
            Constraint::ci(s("A"), s("B"), s("C"))
        );
        assert_eq!(
            parse_constraint("FD: A,B -> C", &u).unwrap(),
            Constraint::ci(s("C"), s("C"), s("A,B"))
        );
        assert_eq!(
            parse_constraint("MVD: A ->> B | C", &u).unwrap(),
            Constraint::ci(s("B"), s("C"), s("A"))
        );
        assert_eq!(
            parse_constraint("MVD: A ->> B", &u).unwrap(),
            Constraint::ci(s("B"), s("C"), s("A"))
        );
        assert_eq!(
            parse_constraint(" I ( A ; B ) ", &u).unwrap(),
            Constraint::ci(s("A"), s("B"), VarSet::EMPTY)
        );
        assert_eq!(
            parse_constraint("I( A ; B ,C| 0 )", &u).unwrap(),
            Constraint::ci(s("A"), s("B,C"), VarSet::EMPTY)
        );
        assert_eq!(
            parse_constraint("H(C)", &u).unwrap(),
            Constraint::conditional(VarSet::EMPTY, s("C"))
        );
        assert_eq!(
            parse_constraint("D: {A} + {0}", &u).unwrap(),
            Constraint::Differential(vec![s("A"), VarSet::EMPTY])
        );
    }

    #[test]
    fn errors_are_reported() {
        let u = u3();
        assert_eq!(
            parse_constraint("I(A;Q)", &u),
            Err(Error::UnknownVariable("Q".into()))
        );
        assert!(matches!(
            parse_constraint("MVD: A ->> B | A", &u),
            Err(Error::NonSaturatedMvd(_))
        ));
        match parse_constraint("I(A;B", &u) {
            Err(Error::Syntax { column, .. }) => assert_eq!(column, 6),
            other => panic!("{other:?}"),
        }
        assert!(parse_constraint("D: {A,B,C}", &u).is_err());
        assert!(parse_constraint("I(A;B) extra", &u).is_err());
    }

    #[test]
    fn implication_file() {
        let text = "# triangle\nvars: A, B, C\nI(A;B)\nI(A;C|B)  # chain\n\n=>\nI(A;C)\n";
        let imp = parse_implication(text).unwrap();
        assert_eq!(imp.antecedents.len(), 2);
        assert_eq!(parse_implication(&imp.display()).unwrap(), imp);
        assert!(parse_implication("vars: A\nH(A)\n").is_err());
        assert!(parse_implication("vars: A\n=>\nH(A)\nH(A)\n").is_err());
        assert!(parse_implication("vars: A, A\n=>\nH(A)\n").is_err());
        assert!(parse_implication_with_cap("vars: A, B\n=>\nH(A)\n", 1).is_err());
        match parse_implication("vars: A\n=>\nI(A;?)") {
            Err(Error::Syntax { line, .. }) => assert_eq!(line, 3),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn empty_antecedents_allowed() {
        let imp = parse_implication("vars: A,B\n=>\nI(A;A|B)\n").unwrap();
        assert!(imp.antecedents.is_empty());
    }
}

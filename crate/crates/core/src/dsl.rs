//! Line-oriented text formats for circuits and CSP instances.
//!
//! Circuit format, one gate per line, `#` starts a comment:
//!
//! ```text
//! gate 1 = const 2
//! gate 2 = var x
//! gate 3 = times 1 2
//! output 3
//! ```
//!
//! CSP format: a `vars` declaration, an optional `signature` line, then one
//! atom per line.  Terms are written prefix-style in parentheses; a bare
//! identifier is a variable and a bare number a constant:
//!
//! ```text
//! vars a b c;
//! signature cap cup;
//! (plus a b) = (const 3)
//! a != b
//! U(a)
//! times a b c
//! ```

use crate::{
    circuit::Gate, Atom, Circuit, CspInstance, GateId, GateLabel, Nat, Signature, Term,
};
use std::collections::BTreeMap;
use std::fmt;

/// Position-annotated syntax error.
#[derive(Clone, PartialEq, Eq, Debug, thiserror::Error)]
#[error("line {line}, column {col}: {msg}")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub msg: String,
}

impl ParseError {
    fn new(line: usize, col: usize, msg: impl Into<String>) -> ParseError {
        ParseError { line, col, msg: msg.into() }
    }
}

fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(i) => &line[..i],
        None => line,
    }
}

fn is_ident_start(c: char) -> bool {
    c.is_ascii_alphabetic() || c == '_'
}

fn is_ident_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_' || c == '\''
}

// ---------------------------------------------------------------------------
// circuit format
// ---------------------------------------------------------------------------

pub fn parse_circuit(input: &str) -> Result<Circuit, ParseError> {
    let mut gates: BTreeMap<usize, Gate> = BTreeMap::new();
    let mut output: Option<usize> = None;
    for (lineno, raw) in input.lines().enumerate() {
        let lineno = lineno + 1;
        let line = strip_comment(raw).trim();
        if line.is_empty() {
            continue;
        }
        let mut words = line.split_whitespace();
        match words.next() {
            Some("gate") => {
                let idx: usize = words
                    .next()
                    .ok_or_else(|| ParseError::new(lineno, 1, "expected gate index"))?
                    .parse()
                    .map_err(|_| ParseError::new(lineno, 6, "gate index must be a number"))?;
                if idx == 0 {
                    return Err(ParseError::new(lineno, 6, "gate indices start at 1"));
                }
                if words.next() != Some("=") {
                    return Err(ParseError::new(lineno, 1, "expected `=` after gate index"));
                }
                let kind = words
                    .next()
                    .ok_or_else(|| ParseError::new(lineno, 1, "expected gate kind after `=`"))?;
                let mut args: Vec<&str> = words.collect();
                let gate = match kind {
                    "const" => {
                        let n = one_arg(lineno, &mut args)?
                            .parse::<Nat>()
                            .map_err(|_| ParseError::new(lineno, 1, "bad constant"))?;
                        Gate::leaf(GateLabel::Constant(n))
                    }
                    "var" => {
                        let name = one_arg(lineno, &mut args)?;
                        if !name.starts_with(is_ident_start) {
                            return Err(ParseError::new(lineno, 1, "bad variable name"));
                        }
                        Gate::leaf(GateLabel::Variable(name.to_string()))
                    }
                    "not" => Gate {
                        label: GateLabel::Complement,
                        preds: pred_list(lineno, &args, 1)?,
                    },
                    "union" => Gate { label: GateLabel::Union, preds: pred_list(lineno, &args, 2)? },
                    "inter" => {
                        Gate { label: GateLabel::Intersect, preds: pred_list(lineno, &args, 2)? }
                    }
                    "plus" => Gate { label: GateLabel::Plus, preds: pred_list(lineno, &args, 2)? },
                    "times" => Gate { label: GateLabel::Times, preds: pred_list(lineno, &args, 2)? },
                    other => {
                        return Err(ParseError::new(lineno, 1, format!("unknown gate kind {other:?}")))
                    }
                };
                if gates.insert(idx, gate).is_some() {
                    return Err(ParseError::new(lineno, 1, format!("gate {idx} defined twice")));
                }
            }
            Some("output") => {
                let idx: usize = words
                    .next()
                    .ok_or_else(|| ParseError::new(lineno, 1, "expected output index"))?
                    .parse()
                    .map_err(|_| ParseError::new(lineno, 8, "output index must be a number"))?;
                if output.replace(idx).is_some() {
                    return Err(ParseError::new(lineno, 1, "output declared twice"));
                }
            }
            Some(other) => {
                return Err(ParseError::new(lineno, 1, format!("unexpected keyword {other:?}")))
            }
            None => unreachable!(),
        }
    }
    let output = output.ok_or_else(|| ParseError::new(1, 1, "missing `output` line"))?;
    let count = gates.len();
    let mut list = Vec::with_capacity(count);
    for i in 1..=count {
        match gates.remove(&i) {
            Some(g) => list.push(g),
            None => return Err(ParseError::new(1, 1, format!("gate {i} is missing"))),
        }
    }
    Ok(Circuit::new(list, GateId(output)))
}

fn one_arg<'a>(lineno: usize, args: &mut Vec<&'a str>) -> Result<&'a str, ParseError> {
    if args.len() != 1 {
        return Err(ParseError::new(lineno, 1, "expected exactly one argument"));
    }
    Ok(args.pop().unwrap())
}

fn pred_list(lineno: usize, args: &[&str], want: usize) -> Result<Vec<GateId>, ParseError> {
    if args.len() != want {
        return Err(ParseError::new(
            lineno,
            1,
            format!("expected {want} predecessor indices, found {}", args.len()),
        ));
    }
    args.iter()
        .map(|a| {
            a.parse::<usize>()
                .map(GateId)
                .map_err(|_| ParseError::new(lineno, 1, format!("bad gate index {a:?}")))
        })
        .collect()
}

pub fn render_circuit(c: &Circuit) -> String {
    let mut out = String::new();
    for (i, gate) in c.gates.iter().enumerate() {
        let idx = i + 1;
        match &gate.label {
            GateLabel::Constant(n) => out.push_str(&format!("gate {idx} = const {n}\n")),
            GateLabel::Variable(v) => out.push_str(&format!("gate {idx} = var {v}\n")),
            other => {
                let preds: Vec<String> = gate.preds.iter().map(|p| p.to_string()).collect();
                out.push_str(&format!("gate {idx} = {} {}\n", other.keyword(), preds.join(" ")));
            }
        }
    }
    out.push_str(&format!("output {}\n", c.output));
    out
}

// ---------------------------------------------------------------------------
// term syntax (shared by the CSP format)
// ---------------------------------------------------------------------------

struct Cursor<'a> {
    line: usize,
    text: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(line: usize, text: &'a str) -> Self {
        Cursor { line, text, pos: 0 }
    }

    fn error(&self, msg: impl Into<String>) -> ParseError {
        ParseError::new(self.line, self.pos + 1, msg)
    }

    fn skip_ws(&mut self) {
        while self.peek().map_or(false, |c| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<char> {
        self.text[self.pos..].chars().next()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += c.len_utf8();
        Some(c)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(format!("expected {c:?}")))
        }
    }

    fn ident(&mut self) -> Result<String, ParseError> {
        self.skip_ws();
        let start = self.pos;
        if !self.peek().map_or(false, is_ident_start) {
            return Err(self.error("expected an identifier"));
        }
        while self.peek().map_or(false, is_ident_char) {
            self.bump();
        }
        Ok(self.text[start..self.pos].to_string())
    }

    fn number(&mut self) -> Result<Nat, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.peek().map_or(false, |c| c.is_ascii_digit()) {
            self.bump();
        }
        if start == self.pos {
            return Err(self.error("expected a number"));
        }
        self.text[start..self.pos].parse::<Nat>().map_err(|_| self.error("bad number"))
    }

    fn at_end(&mut self) -> bool {
        self.skip_ws();
        self.pos >= self.text.len()
    }

    fn term(&mut self) -> Result<Term, ParseError> {
        self.skip_ws();
        match self.peek() {
            Some('(') => {
                self.bump();
                let head = self.ident()?;
                let t = match head.as_str() {
                    "const" => Term::Constant(self.number()?),
                    "var" => Term::Var(self.ident()?),
                    "not" => Term::Complement(Box::new(self.term()?)),
                    "union" => {
                        Term::Union(Box::new(self.term()?), Box::new(self.term()?))
                    }
                    "inter" => {
                        Term::Intersect(Box::new(self.term()?), Box::new(self.term()?))
                    }
                    "plus" => Term::Plus(Box::new(self.term()?), Box::new(self.term()?)),
                    "times" => Term::Times(Box::new(self.term()?), Box::new(self.term()?)),
                    other => return Err(self.error(format!("unknown operator {other:?}"))),
                };
                self.skip_ws();
                self.expect(')')?;
                Ok(t)
            }
            Some(c) if c.is_ascii_digit() => Ok(Term::Constant(self.number()?)),
            Some(c) if is_ident_start(c) => Ok(Term::Var(self.ident()?)),
            _ => Err(self.error("expected a term")),
        }
    }
}

pub fn render_term(t: &Term) -> String {
    match t {
        Term::Constant(n) => n.to_string(),
        Term::Var(v) => v.clone(),
        Term::Complement(a) => format!("(not {})", render_term(a)),
        Term::Union(a, b) => format!("(union {} {})", render_term(a), render_term(b)),
        Term::Intersect(a, b) => format!("(inter {} {})", render_term(a), render_term(b)),
        Term::Plus(a, b) => format!("(plus {} {})", render_term(a), render_term(b)),
        Term::Times(a, b) => format!("(times {} {})", render_term(a), render_term(b)),
    }
}

/// Parses a single term written in the atom syntax.
pub fn parse_term(input: &str) -> Result<Term, ParseError> {
    let mut cur = Cursor::new(1, input);
    let t = cur.term()?;
    if !cur.at_end() {
        return Err(cur.error("trailing input after term"));
    }
    Ok(t)
}

// ---------------------------------------------------------------------------
// CSP format
// ---------------------------------------------------------------------------

pub fn parse_csp(input: &str) -> Result<CspInstance, ParseError> {
    let mut vars: Option<Vec<String>> = None;
    let mut signature: Option<Signature> = None;
    let mut atoms = Vec::new();
    for (lineno, raw) in input.lines().enumerate() {
        let lineno = lineno + 1;
        let line = strip_comment(raw).trim().trim_end_matches(';').trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix("vars") {
            if rest.starts_with(|c: char| c.is_whitespace()) || rest.is_empty() {
                if vars.replace(rest.split_whitespace().map(str::to_string).collect()).is_some() {
                    return Err(ParseError::new(lineno, 1, "vars declared twice"));
                }
                continue;
            }
        }
        if let Some(rest) = line.strip_prefix("signature") {
            if rest.starts_with(|c: char| c.is_whitespace()) || rest.is_empty() {
                let sig = Signature::parse(rest)
                    .map_err(|e| ParseError::new(lineno, 11, e))?;
                if signature.replace(sig).is_some() {
                    return Err(ParseError::new(lineno, 1, "signature declared twice"));
                }
                continue;
            }
        }
        atoms.push(parse_atom_line(lineno, line)?);
    }
    let vars = vars.ok_or_else(|| ParseError::new(1, 1, "missing `vars` declaration"))?;
    let signature = signature.unwrap_or_else(|| CspInstance::inferred_signature(&atoms));
    Ok(CspInstance::new(vars, atoms, signature))
}

fn parse_atom_line(lineno: usize, line: &str) -> Result<Atom, ParseError> {
    // U(a)
    if let Some(rest) = line.strip_prefix("U(") {
        let inner = rest
            .strip_suffix(')')
            .ok_or_else(|| ParseError::new(lineno, line.len(), "expected `)`"))?;
        let name = inner.trim().to_string();
        if name.is_empty() || !name.starts_with(is_ident_start) {
            return Err(ParseError::new(lineno, 3, "expected a variable name"));
        }
        return Ok(Atom::UPred(name));
    }
    // times x y z  (ternary relation; no `=` anywhere on the line)
    if line.starts_with("times ") && !line.contains('=') && !line.contains('(') {
        let names: Vec<&str> = line.split_whitespace().skip(1).collect();
        if names.len() != 3 {
            return Err(ParseError::new(lineno, 1, "ternary times needs three variables"));
        }
        return Ok(Atom::TimesRel(
            names[0].to_string(),
            names[1].to_string(),
            names[2].to_string(),
        ));
    }
    // term (=|!=) term
    let mut cur = Cursor::new(lineno, line);
    let lhs = cur.term()?;
    cur.skip_ws();
    let negated = if cur.eat('!') {
        cur.expect('=')?;
        true
    } else if cur.eat('=') {
        false
    } else {
        return Err(cur.error("expected `=` or `!=`"));
    };
    let rhs = cur.term()?;
    if !cur.at_end() {
        return Err(cur.error("trailing input after atom"));
    }
    Ok(if negated { Atom::Neq(lhs, rhs) } else { Atom::Eq(lhs, rhs) })
}

pub fn render_csp(inst: &CspInstance) -> String {
    let mut out = format!("vars {};\n", inst.vars.join(" "));
    let sig = inst.signature.tokens().join(" ");
    out.push_str(&format!("signature {sig};\n"));
    for atom in &inst.atoms {
        match atom {
            Atom::Eq(a, b) => out.push_str(&format!("{} = {}\n", render_term(a), render_term(b))),
            Atom::Neq(a, b) => {
                out.push_str(&format!("{} != {}\n", render_term(a), render_term(b)))
            }
            Atom::UPred(v) => out.push_str(&format!("U({v})\n")),
            Atom::TimesRel(x, y, z) => out.push_str(&format!("times {x} {y} {z}\n")),
        }
    }
    out
}

impl fmt::Display for Circuit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", render_circuit(self))
    }
}

impl fmt::Display for CspInstance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", render_csp(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nat;

    #[test]
    fn circuit_parse_render_round_trip() {
        let text = "# a small circuit\n\
                    gate 1 = const 2\n\
                    gate 2 = var x\n\
                    gate 3 = times 1 2\n\
                    gate 4 = not 3\n\
                    output 4\n";
        let c = parse_circuit(text).unwrap();
        assert_eq!(c.len(), 4);
        assert_eq!(c.output, GateId(4));
        let rendered = render_circuit(&c);
        assert_eq!(parse_circuit(&rendered).unwrap(), c);
    }

    #[test]
    fn circuit_errors_carry_positions() {
        let err = parse_circuit("gate 1 = const 2\ngate 2 = smudge 1\noutput 2\n").unwrap_err();
        assert_eq!(err.line, 2);
        assert!(err.msg.contains("smudge"));

        let err = parse_circuit("gate 1 = const 2\ngate 3 = not 1\noutput 3\n").unwrap_err();
        assert!(err.msg.contains("gate 2 is missing"));
    }

    #[test]
    fn csp_parse_handles_every_atom_form() {
        let text = "vars a b c;\n\
                    signature cap cup plus neq u timesrel;\n\
                    (plus a b) = (const 3)\n\
                    a != b\n\
                    U(a)\n\
                    times a b c\n";
        let inst = parse_csp(text).unwrap();
        assert_eq!(inst.vars, vec!["a", "b", "c"]);
        assert_eq!(inst.atoms.len(), 4);
        assert_eq!(
            inst.atoms[0],
            Atom::Eq(Term::plus(Term::var("a"), Term::var("b")), Term::Constant(nat(3)))
        );
        assert_eq!(inst.atoms[1], Atom::Neq(Term::var("a"), Term::var("b")));
        assert_eq!(inst.atoms[2], Atom::UPred("a".into()));
        assert_eq!(inst.atoms[3], Atom::TimesRel("a".into(), "b".into(), "c".into()));

        let rendered = render_csp(&inst);
        assert_eq!(parse_csp(&rendered).unwrap(), inst);
    }

    #[test]
    fn csp_signature_is_inferred_when_absent() {
        let inst = parse_csp("vars x;\n(inter x 1) = 1\n").unwrap();
        assert!(inst.signature.intersect);
        assert!(!inst.signature.union);
    }
}

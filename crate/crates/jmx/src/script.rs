//! The session script language.
//!
//! One statement per `;`. Statements either bind names (rings, ideals,
//! quotient presentations, monomial curves) or invoke computations.
//! Polynomials inside `[...]` lists follow the polynomial grammar of
//! [`crate::parse`]; they are kept as raw text here and parsed at
//! execution time, once the ambient ring is known.
//!
//! ```text
//! script     = { statement ";" }
//! statement  = "ring" NAME "=" "vars" names [ "weights" ints ]
//!            | "ideal" NAME "=" "[" polys "]"
//!            | "ideal" NAME "=" "minors2" "[" "[" polys "]" "," "[" polys "]" "]"
//!            | "quotient" NAME "=" NAME "/" NAME
//!            | "curve" NAME NAME "=" INT INT INT
//!            | "jmult" NAME [ "in" NAME ] [ "method" METHOD ]
//!                      [ "using" NAME ] [ "last" "[" poly "]" ]
//!            | "dim" NAME | "length" NAME | "mult" NAME
//!            | "spread" NAME [ "in" NAME ]
//!            | "saturate" NAME NAME | "colon" NAME NAME
//!            | "hilbert" NAME
//!            | "oracle" NAME [ "in" NAME ] [ "max" INT ]
//! METHOD     = "auto" | "formula" | "cor3a" | "cor3b" | "oracle"
//!            | "reduction" | "residual"
//! ```

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ScriptError {
    #[error("line {line}, column {col}: {msg}")]
    Syntax { line: usize, col: usize, msg: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Position {
    pub line: usize,
    pub col: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MethodFlag {
    Auto,
    Formula,
    Cor3a,
    Cor3b,
    Oracle,
    Reduction,
    Residual,
}

impl MethodFlag {
    pub fn label(self) -> &'static str {
        match self {
            MethodFlag::Auto => "auto",
            MethodFlag::Formula => "formula",
            MethodFlag::Cor3a => "cor3a",
            MethodFlag::Cor3b => "cor3b",
            MethodFlag::Oracle => "oracle",
            MethodFlag::Reduction => "reduction",
            MethodFlag::Residual => "residual",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IdealSource {
    /// Raw polynomial texts.
    Generators(Vec<String>),
    /// Two rows of raw polynomial texts; the ideal of 2x2 minors.
    Minors2 { top: Vec<String>, bottom: Vec<String> },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CommandKind {
    DefRing {
        name: String,
        vars: Vec<String>,
        weights: Option<Vec<u64>>,
    },
    DefIdeal {
        name: String,
        source: IdealSource,
    },
    DefQuotient {
        name: String,
        ring: String,
        ideal: String,
    },
    DefCurve {
        ring_name: String,
        ideal_name: String,
        exponents: [u64; 3],
    },
    JMult {
        ideal: String,
        quotient: Option<String>,
        method: MethodFlag,
        using: Option<String>,
        last: Option<String>,
    },
    Dim {
        target: String,
    },
    Length {
        ideal: String,
    },
    Mult {
        ideal: String,
    },
    Spread {
        ideal: String,
        quotient: Option<String>,
    },
    Saturate {
        ideal: String,
        by: String,
    },
    Colon {
        ideal: String,
        by: String,
    },
    Hilbert {
        ideal: String,
    },
    Oracle {
        ideal: String,
        quotient: Option<String>,
        n_max: Option<u32>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Command {
    pub kind: CommandKind,
    pub pos: Position,
    /// Statement keyword, for report labeling.
    pub verb: String,
}

pub fn parse_script(text: &str) -> Result<Vec<Command>, ScriptError> {
    let mut cur = Cursor::new(text);
    let mut commands = Vec::new();
    loop {
        cur.skip_ws_and_comments();
        if cur.at_end() {
            return Ok(commands);
        }
        let pos = cur.position();
        let verb = cur.word().ok_or_else(|| cur.err("expected a statement keyword"))?;
        let kind = match verb.as_str() {
            "ring" => parse_ring(&mut cur)?,
            "ideal" => parse_ideal(&mut cur)?,
            "quotient" => parse_quotient(&mut cur)?,
            "curve" => parse_curve(&mut cur)?,
            "jmult" => parse_jmult(&mut cur)?,
            "dim" => CommandKind::Dim { target: cur.name()? },
            "length" => CommandKind::Length { ideal: cur.name()? },
            "mult" => CommandKind::Mult { ideal: cur.name()? },
            "spread" => {
                let ideal = cur.name()?;
                let quotient = cur.opt_keyword_name("in")?;
                CommandKind::Spread { ideal, quotient }
            }
            "saturate" => CommandKind::Saturate {
                ideal: cur.name()?,
                by: cur.name()?,
            },
            "colon" => CommandKind::Colon {
                ideal: cur.name()?,
                by: cur.name()?,
            },
            "hilbert" => CommandKind::Hilbert { ideal: cur.name()? },
            "oracle" => {
                let ideal = cur.name()?;
                let quotient = cur.opt_keyword_name("in")?;
                let n_max = if cur.try_keyword("max") {
                    Some(cur.integer()? as u32)
                } else {
                    None
                };
                CommandKind::Oracle { ideal, quotient, n_max }
            }
            other => {
                return Err(ScriptError::Syntax {
                    line: pos.line,
                    col: pos.col,
                    msg: format!("unknown statement `{other}`"),
                })
            }
        };
        cur.expect_char(';')?;
        commands.push(Command { kind, pos, verb });
    }
}

fn parse_ring(cur: &mut Cursor) -> Result<CommandKind, ScriptError> {
    let name = cur.name()?;
    cur.expect_char('=')?;
    cur.expect_keyword("vars")?;
    let mut vars = vec![cur.name()?];
    while cur.try_char(',') {
        vars.push(cur.name()?);
    }
    let weights = if cur.try_keyword("weights") {
        let mut w = vec![cur.integer()?];
        while cur.try_char(',') {
            w.push(cur.integer()?);
        }
        Some(w)
    } else {
        None
    };
    Ok(CommandKind::DefRing { name, vars, weights })
}

fn parse_ideal(cur: &mut Cursor) -> Result<CommandKind, ScriptError> {
    let name = cur.name()?;
    cur.expect_char('=')?;
    cur.skip_ws_and_comments();
    if cur.peek_char() == Some('[') {
        let gens = cur.poly_list()?;
        return Ok(CommandKind::DefIdeal {
            name,
            source: IdealSource::Generators(gens),
        });
    }
    cur.expect_keyword("minors2")?;
    cur.expect_char('[')?;
    let top = cur.poly_list()?;
    cur.expect_char(',')?;
    let bottom = cur.poly_list()?;
    cur.expect_char(']')?;
    Ok(CommandKind::DefIdeal {
        name,
        source: IdealSource::Minors2 { top, bottom },
    })
}

fn parse_quotient(cur: &mut Cursor) -> Result<CommandKind, ScriptError> {
    let name = cur.name()?;
    cur.expect_char('=')?;
    let ring = cur.name()?;
    cur.expect_char('/')?;
    let ideal = cur.name()?;
    Ok(CommandKind::DefQuotient { name, ring, ideal })
}

fn parse_curve(cur: &mut Cursor) -> Result<CommandKind, ScriptError> {
    let ring_name = cur.name()?;
    let ideal_name = cur.name()?;
    cur.expect_char('=')?;
    let k = cur.integer()?;
    let l = cur.integer()?;
    let m = cur.integer()?;
    Ok(CommandKind::DefCurve {
        ring_name,
        ideal_name,
        exponents: [k, l, m],
    })
}

fn parse_jmult(cur: &mut Cursor) -> Result<CommandKind, ScriptError> {
    let ideal = cur.name()?;
    let mut quotient = None;
    let mut method = MethodFlag::Auto;
    let mut using = None;
    let mut last = None;
    loop {
        if cur.try_keyword("in") {
            quotient = Some(cur.name()?);
        } else if cur.try_keyword("method") {
            let word = cur.name()?;
            method = match word.as_str() {
                "auto" => MethodFlag::Auto,
                "formula" => MethodFlag::Formula,
                "cor3a" => MethodFlag::Cor3a,
                "cor3b" => MethodFlag::Cor3b,
                "oracle" => MethodFlag::Oracle,
                "reduction" => MethodFlag::Reduction,
                "residual" => MethodFlag::Residual,
                other => return Err(cur.err(&format!("unknown method `{other}`"))),
            };
        } else if cur.try_keyword("using") {
            using = Some(cur.name()?);
        } else if cur.try_keyword("last") {
            cur.expect_char('[')?;
            last = Some(cur.poly_text(&[']'])?);
            cur.expect_char(']')?;
        } else {
            break;
        }
    }
    Ok(CommandKind::JMult {
        ideal,
        quotient,
        method,
        using,
        last,
    })
}

struct Cursor<'a> {
    src: &'a str,
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(src: &'a str) -> Self {
        Cursor {
            src,
            bytes: src.as_bytes(),
            pos: 0,
        }
    }

    fn position(&self) -> Position {
        let mut line = 1;
        let mut col = 1;
        for &b in &self.bytes[..self.pos] {
            if b == b'\n' {
                line += 1;
                col = 1;
            } else {
                col += 1;
            }
        }
        Position { line, col }
    }

    fn err(&self, msg: &str) -> ScriptError {
        let p = self.position();
        ScriptError::Syntax {
            line: p.line,
            col: p.col,
            msg: msg.to_string(),
        }
    }

    fn at_end(&mut self) -> bool {
        self.skip_ws_and_comments();
        self.pos >= self.bytes.len()
    }

    fn skip_ws_and_comments(&mut self) {
        loop {
            while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
                self.pos += 1;
            }
            // line comments with #
            if self.pos < self.bytes.len() && self.bytes[self.pos] == b'#' {
                while self.pos < self.bytes.len() && self.bytes[self.pos] != b'\n' {
                    self.pos += 1;
                }
                continue;
            }
            return;
        }
    }

    fn peek_char(&mut self) -> Option<char> {
        self.skip_ws_and_comments();
        self.src[self.pos..].chars().next()
    }

    fn word(&mut self) -> Option<String> {
        self.skip_ws_and_comments();
        let start = self.pos;
        while self.pos < self.bytes.len()
            && (self.bytes[self.pos].is_ascii_alphanumeric() || self.bytes[self.pos] == b'_')
        {
            self.pos += 1;
        }
        if self.pos == start {
            None
        } else {
            Some(self.src[start..self.pos].to_string())
        }
    }

    fn name(&mut self) -> Result<String, ScriptError> {
        self.skip_ws_and_comments();
        match self.word() {
            Some(w) if w.chars().next().is_some_and(|c| c.is_ascii_alphabetic()) => Ok(w),
            _ => Err(self.err("expected a name")),
        }
    }

    fn integer(&mut self) -> Result<u64, ScriptError> {
        self.skip_ws_and_comments();
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.err("expected an integer"));
        }
        self.src[start..self.pos]
            .parse()
            .map_err(|_| self.err("integer does not fit"))
    }

    fn expect_char(&mut self, c: char) -> Result<(), ScriptError> {
        self.skip_ws_and_comments();
        if self.src[self.pos..].starts_with(c) {
            self.pos += c.len_utf8();
            Ok(())
        } else {
            Err(self.err(&format!("expected `{c}`")))
        }
    }

    fn try_char(&mut self, c: char) -> bool {
        self.skip_ws_and_comments();
        if self.src[self.pos..].starts_with(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expect_keyword(&mut self, kw: &str) -> Result<(), ScriptError> {
        if self.try_keyword(kw) {
            Ok(())
        } else {
            Err(self.err(&format!("expected `{kw}`")))
        }
    }

    fn try_keyword(&mut self, kw: &str) -> bool {
        self.skip_ws_and_comments();
        let rest = &self.src[self.pos..];
        if rest.starts_with(kw) {
            let after = rest[kw.len()..].chars().next();
            if after.is_none_or(|c| !c.is_ascii_alphanumeric() && c != '_') {
                self.pos += kw.len();
                return true;
            }
        }
        false
    }

    fn opt_keyword_name(&mut self, kw: &str) -> Result<Option<String>, ScriptError> {
        if self.try_keyword(kw) {
            Ok(Some(self.name()?))
        } else {
            Ok(None)
        }
    }

    /// `[ poly , poly , ... ]`, returning the raw texts.
    fn poly_list(&mut self) -> Result<Vec<String>, ScriptError> {
        self.expect_char('[')?;
        let mut out = Vec::new();
        loop {
            let text = self.poly_text(&[',', ']'])?;
            if text.is_empty() {
                return Err(self.err("empty polynomial entry"));
            }
            out.push(text);
            self.skip_ws_and_comments();
            if self.try_char(',') {
                continue;
            }
            self.expect_char(']')?;
            return Ok(out);
        }
    }

    /// Raw text up to one of `stops` at parenthesis depth zero.
    fn poly_text(&mut self, stops: &[char]) -> Result<String, ScriptError> {
        self.skip_ws_and_comments();
        let start = self.pos;
        let mut depth = 0usize;
        while self.pos < self.bytes.len() {
            let c = self.bytes[self.pos] as char;
            if depth == 0 && stops.contains(&c) {
                return Ok(self.src[start..self.pos].trim().to_string());
            }
            match c {
                '(' => depth += 1,
                ')' => {
                    if depth == 0 {
                        return Err(self.err("unbalanced `)`"));
                    }
                    depth -= 1;
                }
                ';' if depth == 0 => return Err(self.err("unterminated polynomial list")),
                _ => {}
            }
            self.pos += 1;
        }
        Err(self.err("unterminated polynomial"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ring_and_ideal() {
        let cmds = parse_script("ring S = vars x,y,z; ideal I = [x^2 - y*z];").unwrap();
        assert_eq!(cmds.len(), 2);
        assert_eq!(
            cmds[0].kind,
            CommandKind::DefRing {
                name: "S".into(),
                vars: vec!["x".into(), "y".into(), "z".into()],
                weights: None,
            }
        );
        assert_eq!(
            cmds[1].kind,
            CommandKind::DefIdeal {
                name: "I".into(),
                source: IdealSource::Generators(vec!["x^2 - y*z".into()]),
            }
        );
    }

    #[test]
    fn weighted_ring() {
        let cmds = parse_script("ring S = vars x,y,z weights 3,4,5;").unwrap();
        assert_eq!(
            cmds[0].kind,
            CommandKind::DefRing {
                name: "S".into(),
                vars: vec!["x".into(), "y".into(), "z".into()],
                weights: Some(vec![3, 4, 5]),
            }
        );
    }

    #[test]
    fn minors_builder() {
        let cmds =
            parse_script("ideal I = minors2 [[x1,x2,x3,x4],[x2,x3,x4,x5]];").unwrap();
        match &cmds[0].kind {
            CommandKind::DefIdeal {
                source: IdealSource::Minors2 { top, bottom },
                ..
            } => {
                assert_eq!(top.len(), 4);
                assert_eq!(bottom[3], "x5");
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn jmult_with_options() {
        let cmds = parse_script(
            "jmult J method reduction using A last [x2*x4 - x3^2]; jmult I in R; jmult K;",
        )
        .unwrap();
        assert_eq!(
            cmds[0].kind,
            CommandKind::JMult {
                ideal: "J".into(),
                quotient: None,
                method: MethodFlag::Reduction,
                using: Some("A".into()),
                last: Some("x2*x4 - x3^2".into()),
            }
        );
        assert_eq!(
            cmds[1].kind,
            CommandKind::JMult {
                ideal: "I".into(),
                quotient: Some("R".into()),
                method: MethodFlag::Auto,
                using: None,
                last: None,
            }
        );
    }

    #[test]
    fn computations_and_comments() {
        let script = "# a comment\n oracle I in R max 6; dim I; saturate I J;";
        let cmds = parse_script(script).unwrap();
        assert_eq!(cmds.len(), 3);
        assert_eq!(
            cmds[0].kind,
            CommandKind::Oracle {
                ideal: "I".into(),
                quotient: Some("R".into()),
                n_max: Some(6),
            }
        );
    }

    #[test]
    fn errors_carry_positions() {
        let err = parse_script("ring S = vars x,y\nideal I = [x];").unwrap_err();
        match err {
            ScriptError::Syntax { line, .. } => assert_eq!(line, 2),
        }
        assert!(parse_script("bogus X;").is_err());
        assert!(parse_script("ideal I = [x").is_err());
    }
}

//! Parser for declarative space expressions.
//!
//! Grammar:
//!
//! ```text
//! space  := name [ '(' args ')' ]
//! args   := arg { ',' arg }
//! arg    := key '=' value        (scalar parameter)
//!         | space                (component of a direct sum)
//! value  := number | 'inf' | identifier
//! ```
//!
//! Names: `lp`, `lindenstrauss`, `difference`, `kt`, `logdem`,
//! `counterexample`, `directsum`. `window` defaults to 4096 when omitted.
//! Examples: `lp(p=2)`, `kt(p=2, window=4096)`,
//! `directsum(lindenstrauss(window=2048), logdem(alpha=1.0, window=2048))`,
//! `counterexample(c=log, window=3200)`.

use crate::error::{Error, Result};
use crate::sparse::Index;
use crate::spaces::{CSequence, PValue, SpaceSpec, DEFAULT_WINDOW};

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Ident(String),
    Number(f64),
    LParen,
    RParen,
    Comma,
    Equals,
}

struct Lexer<'a> {
    src: &'a str,
    pos: usize,
    line: usize,
    col: usize,
}

impl<'a> Lexer<'a> {
    fn new(src: &'a str) -> Self {
        Self {
            src,
            pos: 0,
            line: 1,
            col: 1,
        }
    }

    fn error(&self, msg: impl Into<String>) -> Error {
        Error::Parse {
            line: self.line,
            col: self.col,
            msg: msg.into(),
        }
    }

    fn bump(&mut self, len: usize) {
        for ch in self.src[self.pos..self.pos + len].chars() {
            if ch == '\n' {
                self.line += 1;
                self.col = 1;
            } else {
                self.col += 1;
            }
        }
        self.pos += len;
    }

    fn skip_ws(&mut self) {
        while let Some(ch) = self.src[self.pos..].chars().next() {
            if ch.is_whitespace() {
                self.bump(ch.len_utf8());
            } else {
                break;
            }
        }
    }

    fn next_token(&mut self) -> Result<Option<(Token, usize, usize)>> {
        self.skip_ws();
        let (line, col) = (self.line, self.col);
        let Some(ch) = self.src[self.pos..].chars().next() else {
            return Ok(None);
        };
        let tok = match ch {
            '(' => {
                self.bump(1);
                Token::LParen
            }
            ')' => {
                self.bump(1);
                Token::RParen
            }
            ',' => {
                self.bump(1);
                Token::Comma
            }
            '=' => {
                self.bump(1);
                Token::Equals
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let rest = &self.src[self.pos..];
                let len = rest
                    .find(|c: char| !(c.is_ascii_alphanumeric() || c == '_'))
                    .unwrap_or(rest.len());
                let word = rest[..len].to_string();
                self.bump(len);
                Token::Ident(word)
            }
            c if c.is_ascii_digit() || c == '-' || c == '+' || c == '.' => {
                let rest = &self.src[self.pos..];
                let len = rest
                    .find(|c: char| {
                        !(c.is_ascii_digit()
                            || c == '.'
                            || c == '-'
                            || c == '+'
                            || c == 'e'
                            || c == 'E')
                    })
                    .unwrap_or(rest.len());
                let text = &rest[..len];
                let value: f64 = text
                    .parse()
                    .map_err(|_| self.error(format!("invalid number `{text}`")))?;
                self.bump(len);
                Token::Number(value)
            }
            c => return Err(self.error(format!("unexpected character `{c}`"))),
        };
        Ok(Some((tok, line, col)))
    }
}

struct Parser {
    tokens: Vec<(Token, usize, usize)>,
    pos: usize,
    end: (usize, usize),
}

#[derive(Debug)]
enum Arg {
    Param(String, ParamValue, usize, usize),
    Space(SpaceSpec),
}

#[derive(Debug, Clone)]
enum ParamValue {
    Number(f64),
    Word(String),
}

impl Parser {
    fn error_at(&self, line: usize, col: usize, msg: impl Into<String>) -> Error {
        Error::Parse {
            line,
            col,
            msg: msg.into(),
        }
    }

    fn here(&self) -> (usize, usize) {
        self.tokens
            .get(self.pos)
            .map(|&(_, l, c)| (l, c))
            .unwrap_or(self.end)
    }

    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(t, _, _)| t)
    }

    fn next(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).map(|(t, _, _)| t.clone());
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, want: &Token, what: &str) -> Result<()> {
        let (line, col) = self.here();
        match self.next() {
            Some(ref t) if t == want => Ok(()),
            Some(t) => Err(self.error_at(line, col, format!("expected {what}, found {t:?}"))),
            None => Err(self.error_at(line, col, format!("expected {what}, found end of input"))),
        }
    }

    fn parse_space(&mut self) -> Result<SpaceSpec> {
        let (line, col) = self.here();
        let name = match self.next() {
            Some(Token::Ident(name)) => name,
            other => {
                return Err(self.error_at(line, col, format!("expected space name, found {other:?}")))
            }
        };
        let mut args = Vec::new();
        if self.peek() == Some(&Token::LParen) {
            self.next();
            if self.peek() != Some(&Token::RParen) {
                loop {
                    args.push(self.parse_arg()?);
                    if self.peek() == Some(&Token::Comma) {
                        self.next();
                    } else {
                        break;
                    }
                }
            }
            self.expect(&Token::RParen, "`)`")?;
        }
        build_space(&name, args, line, col)
    }

    fn parse_arg(&mut self) -> Result<Arg> {
        // `key = value` when an identifier is followed by `=`; otherwise a
        // nested space expression.
        if let Some(Token::Ident(_)) = self.peek() {
            if self.tokens.get(self.pos + 1).map(|(t, _, _)| t) == Some(&Token::Equals) {
                let (line, col) = self.here();
                let key = match self.next() {
                    Some(Token::Ident(k)) => k,
                    _ => unreachable!(),
                };
                self.next(); // `=`
                let (vline, vcol) = self.here();
                let value = match self.next() {
                    Some(Token::Number(n)) => ParamValue::Number(n),
                    Some(Token::Ident(w)) => ParamValue::Word(w),
                    other => {
                        return Err(self.error_at(
                            vline,
                            vcol,
                            format!("expected parameter value, found {other:?}"),
                        ))
                    }
                };
                return Ok(Arg::Param(key, value, line, col));
            }
        }
        Ok(Arg::Space(self.parse_space()?))
    }
}

struct ParamBag {
    name: String,
    params: Vec<(String, ParamValue, usize, usize)>,
    spaces: Vec<SpaceSpec>,
    line: usize,
    col: usize,
}

impl ParamBag {
    fn error(&self, msg: impl Into<String>) -> Error {
        Error::Parse {
            line: self.line,
            col: self.col,
            msg: msg.into(),
        }
    }

    fn take(&mut self, key: &str) -> Option<ParamValue> {
        let pos = self.params.iter().position(|(k, _, _, _)| k == key)?;
        Some(self.params.remove(pos).1)
    }

    fn number(&mut self, key: &str) -> Result<Option<f64>> {
        match self.take(key) {
            None => Ok(None),
            Some(ParamValue::Number(n)) => Ok(Some(n)),
            Some(ParamValue::Word(w)) => {
                Err(self.error(format!("parameter `{key}` expects a number, got `{w}`")))
            }
        }
    }

    fn window(&mut self) -> Result<Index> {
        match self.number("window")? {
            None => Ok(DEFAULT_WINDOW),
            Some(w) if w >= 1.0 && w.fract() == 0.0 && w <= u64::MAX as f64 => Ok(w as Index),
            Some(w) => Err(self.error(format!("window must be a positive integer, got {w}"))),
        }
    }

    fn finish(self, spec: SpaceSpec) -> Result<SpaceSpec> {
        if let Some((k, _, line, col)) = self.params.first() {
            return Err(Error::Parse {
                line: *line,
                col: *col,
                msg: format!("unknown parameter `{k}` for `{}`", self.name),
            });
        }
        if !self.spaces.is_empty() {
            return Err(self.error(format!(
                "`{}` does not take nested space arguments",
                self.name
            )));
        }
        spec.validate()
            .map_err(|e| self.error(e.to_string()))
            .map(|()| spec)
    }
}

fn build_space(name: &str, args: Vec<Arg>, line: usize, col: usize) -> Result<SpaceSpec> {
    let mut bag = ParamBag {
        name: name.to_string(),
        params: Vec::new(),
        spaces: Vec::new(),
        line,
        col,
    };
    for arg in args {
        match arg {
            Arg::Param(k, v, l, c) => {
                if bag.params.iter().any(|(key, _, _, _)| key == &k) {
                    return Err(Error::Parse {
                        line: l,
                        col: c,
                        msg: format!("duplicate parameter `{k}`"),
                    });
                }
                bag.params.push((k, v, l, c));
            }
            Arg::Space(s) => bag.spaces.push(s),
        }
    }

    match name {
        "lp" => {
            let p = match bag.take("p") {
                None => return Err(bag.error("lp requires parameter p")),
                Some(ParamValue::Number(n)) => PValue::Finite(n),
                Some(ParamValue::Word(w)) if w == "inf" || w == "infinity" => PValue::Infinity,
                Some(ParamValue::Word(w)) => {
                    return Err(bag.error(format!("invalid p value `{w}`")))
                }
            };
            let window = bag.window()?;
            bag.finish(SpaceSpec::Lp { p, window })
        }
        "lindenstrauss" => {
            let window = bag.window()?;
            bag.finish(SpaceSpec::Lindenstrauss { window })
        }
        "difference" => {
            let window = bag.window()?;
            bag.finish(SpaceSpec::Difference { window })
        }
        "kt" => {
            let p = bag
                .number("p")?
                .ok_or_else(|| bag.error("kt requires parameter p"))?;
            let window = bag.window()?;
            bag.finish(SpaceSpec::Kt { p, window })
        }
        "logdem" => {
            let alpha = bag
                .number("alpha")?
                .ok_or_else(|| bag.error("logdem requires parameter alpha"))?;
            let window = bag.window()?;
            bag.finish(SpaceSpec::LogDem { alpha, window })
        }
        "counterexample" => {
            let c = match bag.take("c") {
                None => CSequence::LogCeil,
                Some(ParamValue::Word(w)) if w == "log" => CSequence::LogCeil,
                Some(ParamValue::Word(w)) if w == "identity" => CSequence::Identity,
                Some(ParamValue::Word(w)) => {
                    return Err(bag.error(format!("invalid c sequence `{w}` (log|identity)")))
                }
                Some(ParamValue::Number(_)) => {
                    return Err(bag.error("parameter `c` expects log|identity"))
                }
            };
            let window = bag.window()?;
            bag.finish(SpaceSpec::Counterexample { c, window })
        }
        "directsum" => {
            if bag.spaces.len() != 2 {
                return Err(bag.error(format!(
                    "directsum takes exactly two space arguments, got {}",
                    bag.spaces.len()
                )));
            }
            let right = bag.spaces.pop().expect("len checked");
            let left = bag.spaces.pop().expect("len checked");
            bag.finish(SpaceSpec::DirectSum {
                left: Box::new(left),
                right: Box::new(right),
            })
        }
        other => Err(Error::Parse {
            line,
            col,
            msg: format!("unknown space `{other}`"),
        }),
    }
}

/// Parse a space expression like `kt(p=2, window=4096)`.
pub fn parse_space(src: &str) -> Result<SpaceSpec> {
    let mut lexer = Lexer::new(src);
    let mut tokens = Vec::new();
    while let Some(t) = lexer.next_token()? {
        tokens.push(t);
    }
    let end = (lexer.line, lexer.col);
    let mut parser = Parser {
        tokens,
        pos: 0,
        end,
    };
    let spec = parser.parse_space()?;
    if parser.pos != parser.tokens.len() {
        let (line, col) = parser.here();
        return Err(Error::Parse {
            line,
            col,
            msg: "trailing input after space expression".into(),
        });
    }
    Ok(spec)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_leaf_spaces() {
        assert_eq!(
            parse_space("lp(p=2, window=512)").unwrap(),
            SpaceSpec::Lp {
                p: PValue::Finite(2.0),
                window: 512
            }
        );
        assert_eq!(
            parse_space("lp(p=inf)").unwrap(),
            SpaceSpec::Lp {
                p: PValue::Infinity,
                window: DEFAULT_WINDOW
            }
        );
        assert_eq!(
            parse_space("logdem(alpha=0.5)").unwrap(),
            SpaceSpec::LogDem {
                alpha: 0.5,
                window: DEFAULT_WINDOW
            }
        );
        assert_eq!(
            parse_space("counterexample(c=identity, window=700)").unwrap(),
            SpaceSpec::Counterexample {
                c: CSequence::Identity,
                window: 700
            }
        );
    }

    #[test]
    fn parses_nested_direct_sum() {
        let s =
            parse_space("directsum(lindenstrauss(window=2048), logdem(alpha=1.0, window=2048))")
                .unwrap();
        assert_eq!(
            s,
            SpaceSpec::DirectSum {
                left: Box::new(SpaceSpec::Lindenstrauss { window: 2048 }),
                right: Box::new(SpaceSpec::LogDem {
                    alpha: 1.0,
                    window: 2048
                }),
            }
        );
        assert_eq!(s.window(), 4096);
    }

    #[test]
    fn round_trips_through_display() {
        for src in [
            "lp(p=2, window=512)",
            "lp(p=inf, window=4096)",
            "kt(p=2, window=4096)",
            "lindenstrauss(window=64)",
            "difference(window=128)",
            "logdem(alpha=1, window=4096)",
            "counterexample(c=log, window=3200)",
            "directsum(lindenstrauss(window=2048), logdem(alpha=1, window=2048))",
        ] {
            let spec = parse_space(src).unwrap();
            let again = parse_space(&spec.to_string()).unwrap();
            assert_eq!(spec, again, "round trip failed for `{src}`");
        }
    }

    #[test]
    fn rejects_malformed_input() {
        assert!(parse_space("frobnicate(p=2)").is_err());
        assert!(parse_space("lp(p=2,, window=3)").is_err());
        assert!(parse_space("lp(p=2) extra").is_err());
        assert!(parse_space("kt(window=16)").is_err()); // missing p
        assert!(parse_space("lp(p=2, p=3)").is_err()); // duplicate key
        assert!(parse_space("directsum(lp(p=1))").is_err()); // arity
        assert!(parse_space("lp(p=0.5)").is_err()); // validation
    }

    #[test]
    fn parse_errors_carry_position() {
        let err = parse_space("lp(p=2, window=@)").unwrap_err();
        match err {
            Error::Parse { line, col, .. } => {
                assert_eq!(line, 1);
                assert!(col > 1);
            }
            other => panic!("expected parse error, got {other:?}"),
        }
    }
}

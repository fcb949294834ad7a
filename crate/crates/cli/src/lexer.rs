//! Tokenizer for the script language, with line:col positions.

use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tok {
    Ident(String),
    Int(i64),
    LParen,
    RParen,
    LBracket,
    RBracket,
    LBrace,
    RBrace,
    Lt,
    Gt,
    Eq,
    Comma,
    Colon,
    Star,
    Plus,
    Minus,
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "identifier `{}`", s),
            Tok::Int(n) => write!(f, "integer `{}`", n),
            Tok::LParen => write!(f, "`(`"),
            Tok::RParen => write!(f, "`)`"),
            Tok::LBracket => write!(f, "`[`"),
            Tok::RBracket => write!(f, "`]`"),
            Tok::LBrace => write!(f, "`{{`"),
            Tok::RBrace => write!(f, "`}}`"),
            Tok::Lt => write!(f, "`<`"),
            Tok::Gt => write!(f, "`>`"),
            Tok::Eq => write!(f, "`=`"),
            Tok::Comma => write!(f, "`,`"),
            Tok::Colon => write!(f, "`:`"),
            Tok::Star => write!(f, "`*`"),
            Tok::Plus => write!(f, "`+`"),
            Tok::Minus => write!(f, "`-`"),
            Tok::Eof => write!(f, "end of input"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Pos {
    pub line: u32,
    pub col: u32,
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

#[derive(Clone, Debug)]
pub struct Spanned {
    pub tok: Tok,
    pub pos: Pos,
}

#[derive(Debug)]
pub struct LexError {
    pub pos: Pos,
    pub message: String,
}

impl fmt::Display for LexError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: lexical error: {}", self.pos, self.message)
    }
}

pub fn lex(source: &str) -> Result<Vec<Spanned>, LexError> {
    let mut out = Vec::new();
    let mut line = 1u32;
    let mut col = 1u32;
    let mut chars = source.chars().peekable();
    loop {
        let pos = Pos { line, col };
        let Some(&c) = chars.peek() else { break };
        match c {
            '\n' => {
                chars.next();
                line += 1;
                col = 1;
            }
            ' ' | '\t' | '\r' => {
                chars.next();
                col += 1;
            }
            '#' => {
                while let Some(&c) = chars.peek() {
                    if c == '\n' {
                        break;
                    }
                    chars.next();
                    col += 1;
                }
            }
            '(' | ')' | '[' | ']' | '{' | '}' | '<' | '>' | '=' | ',' | ':' | '*' | '+' | '-' => {
                chars.next();
                col += 1;
                out.push(Spanned {
                    tok: match c {
                        '(' => Tok::LParen,
                        ')' => Tok::RParen,
                        '[' => Tok::LBracket,
                        ']' => Tok::RBracket,
                        '{' => Tok::LBrace,
                        '}' => Tok::RBrace,
                        '<' => Tok::Lt,
                        '>' => Tok::Gt,
                        '=' => Tok::Eq,
                        ',' => Tok::Comma,
                        ':' => Tok::Colon,
                        '*' => Tok::Star,
                        '+' => Tok::Plus,
                        _ => Tok::Minus,
                    },
                    pos,
                });
            }
            '0'..='9' => {
                let mut n: i64 = 0;
                while let Some(&d) = chars.peek() {
                    if let Some(v) = d.to_digit(10) {
                        n = n
                            .checked_mul(10)
                            .and_then(|x| x.checked_add(v as i64))
                            .ok_or_else(|| LexError {
                                pos,
                                message: "integer literal too large".into(),
                            })?;
                        chars.next();
                        col += 1;
                    } else {
                        break;
                    }
                }
                out.push(Spanned {
                    tok: Tok::Int(n),
                    pos,
                });
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let mut s = String::new();
                while let Some(&d) = chars.peek() {
                    if d.is_ascii_alphanumeric() || d == '_' {
                        s.push(d);
                        chars.next();
                        col += 1;
                    } else {
                        break;
                    }
                }
                out.push(Spanned {
                    tok: Tok::Ident(s),
                    pos,
                });
            }
            other => {
                return Err(LexError {
                    pos,
                    message: format!("unexpected character `{}`", other),
                })
            }
        }
    }
    out.push(Spanned {
        tok: Tok::Eof,
        pos: Pos { line, col },
    });
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn positions_track_lines() {
        let toks = lex("group X =\n  perm(4) <(1 2)>").unwrap();
        assert_eq!(toks[0].pos, Pos { line: 1, col: 1 });
        let perm = toks.iter().find(|t| t.tok == Tok::Ident("perm".into())).unwrap();
        assert_eq!(perm.pos.line, 2);
        assert_eq!(perm.pos.col, 3);
    }

    #[test]
    fn comments_are_skipped() {
        let toks = lex("# a comment\ngroup").unwrap();
        assert_eq!(toks.len(), 2);
        assert_eq!(toks[0].tok, Tok::Ident("group".into()));
    }

    #[test]
    fn bad_character_reports_position() {
        let err = lex("group $x").unwrap_err();
        assert_eq!(err.pos, Pos { line: 1, col: 7 });
    }
}

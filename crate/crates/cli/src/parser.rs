//! Recursive-descent parser for the script language.

use crate::ast::*;
use crate::lexer::{lex, Pos, Spanned, Tok};
use std::fmt;

#[derive(Debug)]
pub struct ParseError {
    pub pos: Pos,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: syntax error: {}", self.pos, self.message)
    }
}

/// A parsed script together with the source position of each item.
#[derive(Debug)]
pub struct ParsedScript {
    pub script: Script,
    pub positions: Vec<Pos>,
}

pub fn parse(source: &str) -> Result<ParsedScript, ParseError> {
    let toks = lex(source).map_err(|e| ParseError {
        pos: e.pos,
        message: e.message,
    })?;
    let mut p = Parser { toks, at: 0 };
    p.script()
}

struct Parser {
    toks: Vec<Spanned>,
    at: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].tok
    }

    fn pos(&self) -> Pos {
        self.toks[self.at].pos
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.at].tok.clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn fail<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError {
            pos: self.pos(),
            message: message.into(),
        })
    }

    fn expect(&mut self, tok: Tok) -> Result<(), ParseError> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            self.fail(format!("expected {}, found {}", tok, self.peek()))
        }
    }

    fn ident(&mut self) -> Result<String, ParseError> {
        match self.peek().clone() {
            Tok::Ident(s) => {
                self.bump();
                Ok(s)
            }
            other => self.fail(format!("expected a name, found {}", other)),
        }
    }

    fn keyword(&mut self, kw: &str) -> Result<(), ParseError> {
        match self.peek().clone() {
            Tok::Ident(s) if s == kw => {
                self.bump();
                Ok(())
            }
            other => self.fail(format!("expected `{}`, found {}", kw, other)),
        }
    }

    fn uint(&mut self) -> Result<u64, ParseError> {
        match self.peek().clone() {
            Tok::Int(n) if n >= 0 => {
                self.bump();
                Ok(n as u64)
            }
            other => self.fail(format!("expected a nonnegative integer, found {}", other)),
        }
    }

    fn script(&mut self) -> Result<ParsedScript, ParseError> {
        let mut items = Vec::new();
        let mut positions = Vec::new();
        loop {
            let pos = self.pos();
            match self.peek().clone() {
                Tok::Eof => break,
                Tok::Ident(word) => {
                    let item = match word.as_str() {
                        "group" | "subgroup" | "symbol" | "class" | "prefilter" | "indexed" => {
                            Item::Decl(self.decl()?)
                        }
                        "structure" | "reduce" | "is_zero" | "equal" | "restrict" | "product"
                        | "diagonal_product" | "projectivize" | "project" | "check_prefilter"
                        | "basis" => Item::Cmd(self.cmd()?),
                        other => {
                            return self.fail(format!(
                                "expected a declaration or command, found `{}`",
                                other
                            ))
                        }
                    };
                    items.push(item);
                    positions.push(pos);
                }
                other => return self.fail(format!("expected a declaration or command, found {}", other)),
            }
        }
        Ok(ParsedScript {
            script: Script { items },
            positions,
        })
    }

    fn decl(&mut self) -> Result<Decl, ParseError> {
        let kind = self.ident()?;
        match kind.as_str() {
            "group" => {
                let name = self.ident()?;
                self.expect(Tok::Eq)?;
                let expr = self.group_expr()?;
                Ok(Decl::Group { name, expr })
            }
            "subgroup" => {
                let name = self.ident()?;
                self.expect(Tok::Eq)?;
                let gens = self.gen_list()?;
                self.keyword("in")?;
                let group = self.ident()?;
                Ok(Decl::Subgroup { name, gens, group })
            }
            "symbol" => {
                let name = self.ident()?;
                self.expect(Tok::Eq)?;
                self.expect(Tok::LParen)?;
                self.keyword("H")?;
                self.expect(Tok::Eq)?;
                let h = self.gen_list()?;
                self.expect(Tok::Comma)?;
                self.keyword("Y")?;
                self.expect(Tok::Eq)?;
                let y = self.gen_list()?;
                self.expect(Tok::Comma)?;
                self.keyword("beta")?;
                self.expect(Tok::Eq)?;
                let beta = self.char_list()?;
                self.expect(Tok::RParen)?;
                self.keyword("in")?;
                let group = self.ident()?;
                self.keyword("dim")?;
                let dim = self.uint()? as u32;
                Ok(Decl::Symbol {
                    name,
                    h,
                    y,
                    beta,
                    group,
                    dim,
                })
            }
            "class" => {
                let name = self.ident()?;
                self.expect(Tok::Eq)?;
                let terms = self.lin_comb()?;
                self.keyword("in")?;
                let group = self.ident()?;
                self.keyword("dim")?;
                let dim = self.uint()? as u32;
                Ok(Decl::Class {
                    name,
                    terms,
                    group,
                    dim,
                })
            }
            "prefilter" => {
                let name = self.ident()?;
                self.expect(Tok::Eq)?;
                self.expect(Tok::LBrace)?;
                let mut pairs = Vec::new();
                if *self.peek() != Tok::RBrace {
                    loop {
                        self.expect(Tok::LParen)?;
                        self.keyword("H")?;
                        self.expect(Tok::Eq)?;
                        let h = self.gen_list()?;
                        self.expect(Tok::Comma)?;
                        self.keyword("Y")?;
                        self.expect(Tok::Eq)?;
                        let y = self.gen_list()?;
                        self.expect(Tok::RParen)?;
                        pairs.push((h, y));
                        if *self.peek() == Tok::Comma {
                            self.bump();
                        } else {
                            break;
                        }
                    }
                }
                self.expect(Tok::RBrace)?;
                self.keyword("in")?;
                let group = self.ident()?;
                Ok(Decl::Prefilter { name, pairs, group })
            }
            "indexed" => {
                let name = self.ident()?;
                self.expect(Tok::Eq)?;
                let projective = if let Tok::Ident(s) = self.peek() {
                    if s == "projective" {
                        self.bump();
                        true
                    } else {
                        false
                    }
                } else {
                    false
                };
                self.expect(Tok::LBracket)?;
                let mut terms = Vec::new();
                if *self.peek() != Tok::RBracket {
                    loop {
                        terms.push(self.indexed_term()?);
                        if *self.peek() == Tok::Comma {
                            self.bump();
                        } else {
                            break;
                        }
                    }
                }
                self.expect(Tok::RBracket)?;
                self.keyword("in")?;
                let group = self.ident()?;
                self.keyword("dim")?;
                let dim = self.uint()? as u32;
                Ok(Decl::Indexed {
                    name,
                    projective,
                    terms,
                    group,
                    dim,
                })
            }
            other => self.fail(format!("unknown declaration `{}`", other)),
        }
    }

    fn indexed_term(&mut self) -> Result<IndexedTerm, ParseError> {
        let mut coeff = 1i64;
        if let Tok::Int(n) = self.peek().clone() {
            self.bump();
            self.expect(Tok::Star)?;
            coeff = n;
        } else if *self.peek() == Tok::Minus {
            self.bump();
            if let Tok::Int(n) = self.peek().clone() {
                self.bump();
                self.expect(Tok::Star)?;
                coeff = -n;
            } else {
                return self.fail("expected a coefficient after `-`");
            }
        }
        self.expect(Tok::LParen)?;
        self.keyword("H")?;
        self.expect(Tok::Eq)?;
        let h = self.gen_list()?;
        self.expect(Tok::Comma)?;
        self.keyword("Hp")?;
        self.expect(Tok::Eq)?;
        let hp = self.gen_list()?;
        self.expect(Tok::Comma)?;
        self.keyword("Y")?;
        self.expect(Tok::Eq)?;
        let y = self.gen_list()?;
        self.expect(Tok::Comma)?;
        self.keyword("beta")?;
        self.expect(Tok::Eq)?;
        let beta = self.char_list()?;
        self.expect(Tok::Comma)?;
        self.keyword("gamma")?;
        self.expect(Tok::Eq)?;
        self.expect(Tok::LBrace)?;
        let mut gamma = Vec::new();
        if *self.peek() != Tok::RBrace {
            loop {
                let idx = self.uint()? as usize;
                self.expect(Tok::Colon)?;
                let c = self.char_tuple()?;
                gamma.push((idx, c));
                if *self.peek() == Tok::Comma {
                    self.bump();
                } else {
                    break;
                }
            }
        }
        self.expect(Tok::RBrace)?;
        self.expect(Tok::RParen)?;
        Ok(IndexedTerm {
            coeff,
            h,
            hp,
            y,
            beta,
            gamma,
        })
    }

    fn group_expr(&mut self) -> Result<GroupExpr, ParseError> {
        let kind = self.ident()?;
        match kind.as_str() {
            "perm" => {
                self.expect(Tok::LParen)?;
                let degree = self.uint()? as u32;
                self.expect(Tok::RParen)?;
                let gens = self.gen_list()?;
                Ok(GroupExpr::Perm { degree, gens })
            }
            "product" => {
                self.expect(Tok::LParen)?;
                let left = self.ident()?;
                self.expect(Tok::Comma)?;
                let right = self.ident()?;
                self.expect(Tok::RParen)?;
                Ok(GroupExpr::Product { left, right })
            }
            "subgroup" => {
                let gens = self.gen_list()?;
                self.keyword("of")?;
                let parent = self.ident()?;
                Ok(GroupExpr::SubgroupOf { gens, parent })
            }
            other => self.fail(format!(
                "expected `perm`, `product` or `subgroup`, found `{}`",
                other
            )),
        }
    }

    /// `<(1 2)(3 4), (1 3)>`, `<()>` or `<>`.
    fn gen_list(&mut self) -> Result<GenList, ParseError> {
        self.expect(Tok::Lt)?;
        let mut gens = Vec::new();
        if *self.peek() != Tok::Gt {
            loop {
                gens.push(self.perm_lit()?);
                if *self.peek() == Tok::Comma {
                    self.bump();
                } else {
                    break;
                }
            }
        }
        self.expect(Tok::Gt)?;
        Ok(GenList(gens))
    }

    fn perm_lit(&mut self) -> Result<PermLit, ParseError> {
        let mut cycles = Vec::new();
        if *self.peek() != Tok::LParen {
            return self.fail(format!("expected a cycle, found {}", self.peek()));
        }
        while *self.peek() == Tok::LParen {
            self.bump();
            let mut cycle = Vec::new();
            while let Tok::Int(n) = self.peek().clone() {
                if n <= 0 {
                    return self.fail("cycle points are positive integers");
                }
                cycle.push(n as u32);
                self.bump();
            }
            self.expect(Tok::RParen)?;
            if cycle.len() == 1 {
                return self.fail("a cycle needs at least two points (or none for the identity)");
            }
            if !cycle.is_empty() {
                cycles.push(cycle);
            }
        }
        Ok(PermLit { cycles })
    }

    fn char_list(&mut self) -> Result<Vec<CharTuple>, ParseError> {
        self.expect(Tok::LBracket)?;
        let mut out = Vec::new();
        if *self.peek() != Tok::RBracket {
            loop {
                out.push(self.char_tuple()?);
                if *self.peek() == Tok::Comma {
                    self.bump();
                } else {
                    break;
                }
            }
        }
        self.expect(Tok::RBracket)?;
        Ok(out)
    }

    fn char_tuple(&mut self) -> Result<CharTuple, ParseError> {
        match self.peek().clone() {
            Tok::Int(_) => Ok(CharTuple(vec![self.uint()?])),
            Tok::LParen => {
                self.bump();
                let mut coeffs = Vec::new();
                loop {
                    coeffs.push(self.uint()?);
                    if *self.peek() == Tok::Comma {
                        self.bump();
                    } else {
                        break;
                    }
                }
                self.expect(Tok::RParen)?;
                Ok(CharTuple(coeffs))
            }
            other => self.fail(format!("expected a character tuple, found {}", other)),
        }
    }

    fn lin_comb(&mut self) -> Result<Vec<LinTerm>, ParseError> {
        let mut terms = Vec::new();
        let mut sign = 1i64;
        if *self.peek() == Tok::Minus {
            self.bump();
            sign = -1;
        }
        loop {
            let mut coeff = sign;
            if let Tok::Int(n) = self.peek().clone() {
                self.bump();
                self.expect(Tok::Star)?;
                coeff = sign * n;
            }
            let name = self.ident()?;
            terms.push(LinTerm { coeff, name });
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    sign = 1;
                }
                Tok::Minus => {
                    self.bump();
                    sign = -1;
                }
                _ => break,
            }
        }
        Ok(terms)
    }

    fn bc_ref(&mut self) -> Result<BcRef, ParseError> {
        self.keyword("BC")?;
        self.expect(Tok::LParen)?;
        let group = self.ident()?;
        self.expect(Tok::Comma)?;
        let dim = self.uint()? as u32;
        let prefilter = if *self.peek() == Tok::Comma {
            self.bump();
            Some(self.ident()?)
        } else {
            None
        };
        self.expect(Tok::RParen)?;
        Ok(BcRef {
            group,
            dim,
            prefilter,
        })
    }

    fn store(&mut self) -> Result<Option<String>, ParseError> {
        if let Tok::Ident(s) = self.peek() {
            if s == "as" {
                self.bump();
                return Ok(Some(self.ident()?));
            }
        }
        Ok(None)
    }

    fn cmd(&mut self) -> Result<Cmd, ParseError> {
        let kind = self.ident()?;
        match kind.as_str() {
            "structure" => Ok(Cmd::Structure { bc: self.bc_ref()? }),
            "reduce" => {
                let class = self.ident()?;
                self.keyword("in")?;
                let bc = self.bc_ref()?;
                let store = self.store()?;
                Ok(Cmd::Reduce { class, bc, store })
            }
            "is_zero" => {
                let class = self.ident()?;
                self.keyword("in")?;
                let bc = self.bc_ref()?;
                Ok(Cmd::IsZero { class, bc })
            }
            "equal" => {
                let left = self.ident()?;
                let right = self.ident()?;
                self.keyword("in")?;
                let bc = self.bc_ref()?;
                Ok(Cmd::Equal { left, right, bc })
            }
            "restrict" => {
                let class = self.ident()?;
                self.keyword("from")?;
                let from = self.ident()?;
                self.keyword("to")?;
                let to = self.ident()?;
                let store = self.store()?;
                Ok(Cmd::Restrict {
                    class,
                    from,
                    to,
                    store,
                })
            }
            "product" => {
                let left = self.ident()?;
                let right = self.ident()?;
                self.keyword("in")?;
                let group = self.ident()?;
                let store = self.store()?;
                Ok(Cmd::Product {
                    left,
                    right,
                    group,
                    store,
                })
            }
            "diagonal_product" => {
                let left = self.ident()?;
                let right = self.ident()?;
                let store = self.store()?;
                Ok(Cmd::DiagonalProduct { left, right, store })
            }
            "projectivize" => {
                let indexed = self.ident()?;
                let store = self.store()?;
                Ok(Cmd::Projectivize { indexed, store })
            }
            "project" => {
                let class = self.ident()?;
                self.keyword("with")?;
                let prefilter = self.ident()?;
                let store = self.store()?;
                Ok(Cmd::Project {
                    class,
                    prefilter,
                    store,
                })
            }
            "check_prefilter" => Ok(Cmd::CheckPrefilter {
                prefilter: self.ident()?,
            }),
            "basis" => {
                let gens = self.gen_list()?;
                self.keyword("in")?;
                let group = self.ident()?;
                Ok(Cmd::Basis { gens, group })
            }
            other => self.fail(format!("unknown command `{}`", other)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_group_and_symbol() {
        let src = "group S4 = perm(4) <(1 2), (1 2 3 4)>\n\
                   symbol s = (H=<(1 2)>, Y=<(3 4)>, beta=[1]) in S4 dim 2\n";
        let parsed = parse(src).unwrap();
        assert_eq!(parsed.script.items.len(), 2);
        assert_eq!(parsed.positions[1].line, 2);
    }

    #[test]
    fn syntax_error_carries_position() {
        let err = parse("symbol s = (H=<(1 2)>, Y=<(3 4)>, beta=[").unwrap_err();
        assert_eq!(err.pos.line, 1);
        assert_eq!(err.pos.col, 41);
    }

    #[test]
    fn shipped_examples_roundtrip() {
        let dir = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("examples");
        let mut seen = 0;
        for entry in std::fs::read_dir(dir).unwrap() {
            let path = entry.unwrap().path();
            if path.extension().and_then(|e| e.to_str()) != Some("burn") {
                continue;
            }
            seen += 1;
            let src = std::fs::read_to_string(&path).unwrap();
            let once = parse(&src).unwrap().script;
            let printed = once.to_string();
            let twice = parse(&printed).unwrap().script;
            assert_eq!(once, twice, "round trip of {:?}", path);
            assert_eq!(printed, twice.to_string());
        }
        assert!(seen >= 4);
    }

    #[test]
    fn roundtrip_is_a_fixed_point() {
        let src = "group S4 = perm(4) <(1 2), (1 2 3 4)>\n\
                   group P = product(S4, S4)\n\
                   group C4 = subgroup <(1 2 3 4)> of S4\n\
                   subgroup K = <(1 2)(3 4), (1 3)(2 4)> in S4\n\
                   symbol s = (H=<(1 2)>, Y=<(3 4)>, beta=[1]) in S4 dim 2\n\
                   symbol t = (H=<(1 2)(3 4), (1 3)(2 4)>, Y=<>, beta=[(0,1),(1,0)]) in S4 dim 2\n\
                   class c = 2*s - t in S4 dim 2\n\
                   prefilter F = {(H=<(1 2)>, Y=<(3 4)>)} in S4\n\
                   indexed xi = projective [(H=<(1 2)>, Hp=<(1 2)>, Y=<>, beta=[], gamma={0: 0, 1: 1})] in S4 dim 2\n\
                   structure BC(S4, 2)\n\
                   structure BC(S4, 2, F)\n\
                   is_zero c in BC(S4, 2)\n\
                   equal c c in BC(S4, 2)\n\
                   reduce c in BC(S4, 2) as r\n\
                   restrict c from S4 to C4 as cr\n\
                   product c c in P as cp\n\
                   diagonal_product c c as cd\n\
                   projectivize xi as px\n\
                   project c with F as pc\n\
                   check_prefilter F\n\
                   basis <(1 2 3 4)> in S4\n";
        let once = parse(src).unwrap().script;
        let printed = once.to_string();
        let twice = parse(&printed).unwrap().script;
        assert_eq!(once, twice);
        // printing is idempotent as well
        assert_eq!(printed, twice.to_string());
    }
}

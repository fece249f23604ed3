use super::Formula;
use crate::error::{Error, Result};

/// Parse the text grammar into a syntax tree.
pub fn parse(text: &str) -> Result<Formula> {
    let mut p = Parser { src: text, pos: 0 };
    let f = p.implies()?;
    p.skip_ws();
    if p.pos < text.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(f)
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

fn ident_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || matches!(c, '_' | '\'' | '^' | '.')
}

impl Parser<'_> {
    fn error(&self, msg: impl Into<String>) -> Error {
        Error::Syntax {
            pos: self.pos,
            msg: msg.into(),
        }
    }

    fn rest(&self) -> &str {
        &self.src[self.pos..]
    }

    fn peek(&self) -> Option<char> {
        self.rest().chars().next()
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.peek() {
            if !c.is_whitespace() {
                break;
            }
            self.pos += c.len_utf8();
        }
    }

    fn eat(&mut self, tok: &str) -> bool {
        self.skip_ws();
        if self.rest().starts_with(tok) {
            self.pos += tok.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, tok: &str) -> Result<()> {
        if self.eat(tok) {
            Ok(())
        } else {
            Err(self.error(format!("expected `{tok}`")))
        }
    }

    fn implies(&mut self) -> Result<Formula> {
        let lhs = self.or()?;
        if self.eat("->") {
            let rhs = self.implies()?;
            return Ok(Formula::implies(lhs, rhs));
        }
        Ok(lhs)
    }

    fn or(&mut self) -> Result<Formula> {
        let mut lhs = self.and()?;
        while self.eat("|") {
            lhs = Formula::or(lhs, self.and()?);
        }
        Ok(lhs)
    }

    fn and(&mut self) -> Result<Formula> {
        let mut lhs = self.unary()?;
        while self.eat("&") {
            lhs = Formula::and(lhs, self.unary()?);
        }
        Ok(lhs)
    }

    fn ident(&mut self) -> &str {
        let start = self.pos;
        while let Some(c) = self.peek() {
            if !ident_char(c) {
                break;
            }
            self.pos += c.len_utf8();
        }
        &self.src[start..self.pos]
    }

    fn unary(&mut self) -> Result<Formula> {
        self.skip_ws();
        let start = self.pos;
        match self.peek() {
            None => Err(self.error("unexpected end of input")),
            Some('~') => {
                self.pos += 1;
                Ok(Formula::not(self.unary()?))
            }
            Some('(') => {
                self.pos += 1;
                let f = self.implies()?;
                self.expect(")")?;
                Ok(f)
            }
            Some('"') => Ok(Formula::Atom(self.quoted()?)),
            Some(c) if ident_char(c) => {
                let word = self.ident().to_string();
                if self.peek() == Some('[') {
                    self.pos += 1;
                    return self.modality(&word, start);
                }
                Ok(match word.as_str() {
                    "true" => Formula::True,
                    "false" => Formula::False,
                    _ => Formula::Atom(word),
                })
            }
            Some(c) => Err(self.error(format!("unexpected `{c}`"))),
        }
    }

    fn quoted(&mut self) -> Result<String> {
        self.pos += 1;
        let mut out = String::new();
        loop {
            match self.peek() {
                None => return Err(self.error("unterminated quoted atom")),
                Some('"') => {
                    self.pos += 1;
                    return Ok(out);
                }
                Some('\\') => {
                    self.pos += 1;
                    match self.peek() {
                        Some(c) => {
                            out.push(c);
                            self.pos += c.len_utf8();
                        }
                        None => return Err(self.error("dangling escape")),
                    }
                }
                Some(c) => {
                    out.push(c);
                    self.pos += c.len_utf8();
                }
            }
        }
    }

    /// An agent name inside brackets; may contain balanced parentheses, as in `D(a,b)`.
    fn agent(&mut self) -> Result<String> {
        self.skip_ws();
        let start = self.pos;
        let mut depth = 0usize;
        while let Some(c) = self.peek() {
            match c {
                '(' => depth += 1,
                ')' if depth > 0 => depth -= 1,
                ',' | ']' | '}' | '{' | '[' if depth == 0 => break,
                c if c.is_whitespace() && depth == 0 => break,
                _ => {}
            }
            self.pos += c.len_utf8();
        }
        let name = self.src[start..self.pos].to_string();
        if name.is_empty() {
            return Err(self.error("expected agent name"));
        }
        Ok(name)
    }

    fn agent_list(&mut self, close: &str) -> Result<Vec<String>> {
        let mut out = vec![self.agent()?];
        while self.eat(",") {
            out.push(self.agent()?);
        }
        self.expect(close)?;
        Ok(out)
    }

    fn modality(&mut self, word: &str, start: usize) -> Result<Formula> {
        let single = |p: &mut Self| -> Result<String> {
            let a = p.agent()?;
            p.expect("]")?;
            Ok(a)
        };
        let op = match word {
            "K" | "Khat" | "B" | "Bhat" => {
                let a = single(self)?;
                let body = Box::new(self.unary()?);
                return Ok(match word {
                    "K" => Formula::K(a, body),
                    "Khat" => Formula::KHat(a, body),
                    "B" => Formula::B(a, body),
                    _ => Formula::BHat(a, body),
                });
            }
            "E" | "C" | "D" => {
                let g = self.agent_list("]")?;
                let body = Box::new(self.unary()?);
                return Ok(match word {
                    "E" => Formula::E(g, body),
                    "C" => Formula::C(g, body),
                    _ => Formula::D(g, body),
                });
            }
            "CD" => {
                let mut fam = Vec::new();
                loop {
                    self.expect("{")?;
                    fam.push(self.agent_list("}")?);
                    if !self.eat(",") {
                        break;
                    }
                }
                self.expect("]")?;
                Formula::CDFam(fam, Box::new(self.unary()?))
            }
            "CDdim" => {
                self.skip_ws();
                let digits_start = self.pos;
                while self.peek().is_some_and(|c| c.is_ascii_digit()) {
                    self.pos += 1;
                }
                let m = self.src[digits_start..self.pos]
                    .parse()
                    .map_err(|_| self.error("expected a dimension"))?;
                self.expect("]")?;
                Formula::CDDim(m, Box::new(self.unary()?))
            }
            _ => {
                return Err(Error::Syntax {
                    pos: start,
                    msg: format!("unknown modality `{word}`"),
                })
            }
        };
        Ok(op)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use Formula as F;

    #[test]
    fn knowledge_of_negation() {
        assert_eq!(
            parse("K[a] ~p_a").unwrap(),
            F::k("a", F::not(F::atom("p_a")))
        );
    }

    #[test]
    fn modalities_bind_tighter_than_and() {
        assert_eq!(
            parse("K[a] p_b & ~K[b] p_a").unwrap(),
            F::and(F::k("a", F::atom("p_b")), F::not(F::k("b", F::atom("p_a"))))
        );
    }

    #[test]
    fn implication_is_right_associative_and_loosest() {
        assert_eq!(
            parse("p_a -> q_a -> r_a | s_a").unwrap(),
            F::implies(F::atom("p_a"), F::implies(F::atom("q_a"), F::or(F::atom("r_a"), F::atom("s_a"))))
        );
    }

    #[test]
    fn group_modalities() {
        let f = parse("C[a,b] (K[c] p_c -> (K[a] ~p_a | K[b] ~p_b))").unwrap();
        let body = F::implies(
            F::k("c", F::atom("p_c")),
            F::or(F::k("a", F::not(F::atom("p_a"))), F::k("b", F::not(F::atom("p_b")))),
        );
        assert_eq!(f, F::C(vec!["a".into(), "b".into()], Box::new(body)));
        assert_eq!(
            parse("CD[{a,b},{b,c}] true").unwrap(),
            F::CDFam(vec![vec!["a".into(), "b".into()], vec!["b".into(), "c".into()]], Box::new(F::True))
        );
        assert_eq!(parse("CDdim[1]p_c").unwrap(), F::CDDim(1, Box::new(F::atom("p_c"))));
        assert_eq!(parse("K[D(a,b)] p").unwrap(), F::k("D(a,b)", F::atom("p")));
    }

    #[test]
    fn atoms_with_digits_and_quotes() {
        assert_eq!(parse("1_a").unwrap(), F::atom("1_a"));
        assert_eq!(parse("\"p | q_a\"").unwrap(), F::atom("p | q_a"));
    }

    #[test]
    fn errors_carry_positions() {
        assert!(matches!(parse("K[a] "), Err(Error::Syntax { pos: 5, .. })));
        assert!(matches!(parse("p_a &"), Err(Error::Syntax { .. })));
        assert!(matches!(parse("X[a] p"), Err(Error::Syntax { pos: 0, .. })));
        assert!(matches!(parse("(p_a"), Err(Error::Syntax { .. })));
        assert!(matches!(parse("p_a q_a"), Err(Error::Syntax { pos: 4, .. })));
    }
}

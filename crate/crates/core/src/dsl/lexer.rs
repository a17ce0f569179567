use super::{DslError, Pos};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Tok {
    /// Identifier, possibly with trailing primes; may start with a digit
    /// when it contains a letter or `_` (`4_1`).
    Ident(String),
    Int(i64),
    Sym(&'static str),
    Eof,
}

#[derive(Debug, Clone)]
pub struct Token {
    pub tok: Tok,
    pub pos: Pos,
}

const SYMBOLS: [&str; 15] = ["(+)", "==", "^", "(", ")", ",", ";", ":", "{", "}", "[", "]", "=", "-", "+"];

pub fn lex(src: &str) -> Result<Vec<Token>, DslError> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0, 1, 1);
    let advance = |i: &mut usize, line: &mut usize, col: &mut usize, n: usize| {
        for k in 0..n {
            if chars[*i + k] == '\n' {
                *line += 1;
                *col = 1;
            } else {
                *col += 1;
            }
        }
        *i += n;
    };
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            advance(&mut i, &mut line, &mut col, 1);
            continue;
        }
        if c == '#' || (c == '/' && chars.get(i + 1) == Some(&'/')) {
            while i < chars.len() && chars[i] != '\n' {
                advance(&mut i, &mut line, &mut col, 1);
            }
            continue;
        }
        let pos = Pos { line, col };
        if c.is_ascii_alphanumeric() || c == '_' {
            let start = i;
            let mut j = i;
            while j < chars.len() && (chars[j].is_ascii_alphanumeric() || chars[j] == '_') {
                j += 1;
            }
            while j < chars.len() && chars[j] == '\'' {
                j += 1;
            }
            let text: String = chars[start..j].iter().collect();
            let tok = if text.chars().all(|c| c.is_ascii_digit()) {
                Tok::Int(text.parse().map_err(|_| DslError::syntax(pos, format!("integer `{text}` out of range")))?)
            } else {
                Tok::Ident(text)
            };
            out.push(Token { tok, pos });
            advance(&mut i, &mut line, &mut col, j - start);
            continue;
        }
        let rest: String = chars[i..(i + 3).min(chars.len())].iter().collect();
        match SYMBOLS.iter().find(|s| rest.starts_with(**s)) {
            Some(s) => {
                out.push(Token { tok: Tok::Sym(s), pos });
                advance(&mut i, &mut line, &mut col, s.chars().count());
            }
            None => return Err(DslError::syntax(pos, format!("unexpected character `{c}`"))),
        }
    }
    out.push(Token {
        tok: Tok::Eof,
        pos: Pos { line, col },
    });
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tokens_and_positions() {
        let t = lex("alpha'' 4_1 -12 (+)\n  x1^-1 # note").unwrap();
        let toks: Vec<_> = t.iter().map(|t| t.tok.clone()).collect();
        assert_eq!(
            toks,
            vec![
                Tok::Ident("alpha''".into()),
                Tok::Ident("4_1".into()),
                Tok::Sym("-"),
                Tok::Int(12),
                Tok::Sym("(+)"),
                Tok::Ident("x1".into()),
                Tok::Sym("^"),
                Tok::Sym("-"),
                Tok::Int(1),
                Tok::Eof,
            ]
        );
        assert_eq!(t[5].pos, Pos { line: 2, col: 3 });
        assert_eq!(t.last().unwrap().pos, Pos { line: 2, col: 15 });
        assert!(lex("a $ b").is_err());
    }
}

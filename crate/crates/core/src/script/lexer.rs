use std::fmt;

use super::{ParseError, SourceSpan};

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum Tok {
    Zero,
    One,
    Number(String),
    Plus,
    LParen,
    RParen,
    LBrace,
    RBrace,
    Comma,
    Dot,
    Eq,
    Neq,
    Tilde,
    Arrow,
    Amp,
    Bar,
    Assign,
    Lower(String),
    Upper(String),
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Zero => f.write_str("`0`"),
            Tok::One => f.write_str("`1`"),
            Tok::Number(n) => write!(f, "`{n}`"),
            Tok::Plus => f.write_str("`+`"),
            Tok::LParen => f.write_str("`(`"),
            Tok::RParen => f.write_str("`)`"),
            Tok::LBrace => f.write_str("`{`"),
            Tok::RBrace => f.write_str("`}`"),
            Tok::Comma => f.write_str("`,`"),
            Tok::Dot => f.write_str("`.`"),
            Tok::Eq => f.write_str("`=`"),
            Tok::Neq => f.write_str("`!=`"),
            Tok::Tilde => f.write_str("`~`"),
            Tok::Arrow => f.write_str("`->`"),
            Tok::Amp => f.write_str("`&`"),
            Tok::Bar => f.write_str("`|`"),
            Tok::Assign => f.write_str("`:=`"),
            Tok::Lower(s) | Tok::Upper(s) => write!(f, "`{s}`"),
            Tok::Eof => f.write_str("end of input"),
        }
    }
}

#[derive(Debug, Clone)]
pub(crate) struct Token {
    pub tok: Tok,
    pub span: SourceSpan,
}

/// Tokenizes `text`, which starts at `line`, `column` of the enclosing source.
/// The final token is always `Eof`, positioned just past the last character.
pub(crate) fn tokenize(text: &str, line: usize, column: usize) -> Result<Vec<Token>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    let span = |start: usize, len: usize| SourceSpan {
        line,
        column: column + start,
        length: len,
    };
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        let two = chars.get(i + 1).copied();
        let tok = match c {
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '{' => Tok::LBrace,
            '}' => Tok::RBrace,
            ',' => Tok::Comma,
            '.' => Tok::Dot,
            '+' => Tok::Plus,
            '=' => Tok::Eq,
            '~' => Tok::Tilde,
            '&' => Tok::Amp,
            '|' => Tok::Bar,
            '!' if two == Some('=') => {
                i += 1;
                Tok::Neq
            }
            '-' if two == Some('>') => {
                i += 1;
                Tok::Arrow
            }
            ':' if two == Some('=') => {
                i += 1;
                Tok::Assign
            }
            '0'..='9' => {
                while i + 1 < chars.len() && chars[i + 1].is_ascii_digit() {
                    i += 1;
                }
                let digits: String = chars[start..=i].iter().collect();
                match digits.as_str() {
                    "0" => Tok::Zero,
                    "1" => Tok::One,
                    _ => Tok::Number(digits),
                }
            }
            'a'..='z' | 'A'..='Z' => {
                while i + 1 < chars.len()
                    && (chars[i + 1].is_ascii_alphanumeric() || chars[i + 1] == '_')
                {
                    i += 1;
                }
                let word: String = chars[start..=i].iter().collect();
                if c.is_ascii_lowercase() {
                    Tok::Lower(word)
                } else {
                    Tok::Upper(word)
                }
            }
            other => {
                return Err(ParseError {
                    span: span(start, 1),
                    expected: Vec::new(),
                    found: format!("`{other}`"),
                })
            }
        };
        i += 1;
        out.push(Token {
            tok,
            span: span(start, i - start),
        });
    }
    out.push(Token {
        tok: Tok::Eof,
        span: span(chars.len(), 0),
    });
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tokens_and_columns() {
        let toks = tokenize("0 != a+1", 1, 1).unwrap();
        let kinds: Vec<_> = toks.iter().map(|t| t.tok.clone()).collect();
        assert_eq!(
            kinds,
            vec![
                Tok::Zero,
                Tok::Neq,
                Tok::Lower("a".into()),
                Tok::Plus,
                Tok::One,
                Tok::Eof
            ]
        );
        assert_eq!(toks[1].span.column, 3);
        assert_eq!(toks[5].span.column, 9);
    }

    #[test]
    fn stray_character() {
        let err = tokenize("0 = $", 2, 5).unwrap_err();
        assert_eq!(
            err.span,
            SourceSpan {
                line: 2,
                column: 9,
                length: 1
            }
        );
    }
}

use crate::textio::{ParseError, ParseErrorKind, SourceSpan};

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum Tok {
    Int(String),
    Ident(String),
    AxisD(usize),
    AxisDx(usize),
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    Wedge,
    LParen,
    RParen,
}

#[derive(Debug, Clone)]
pub(crate) struct Token {
    pub tok: Tok,
    pub span: SourceSpan,
}

pub(crate) fn lex(input: &str) -> Result<Vec<Token>, ParseError> {
    let bytes = input.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let b = bytes[i];
        if b.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let begin = i;
        let tok = match b {
            b'+' => {
                i += 1;
                Tok::Plus
            }
            b'-' => {
                i += 1;
                Tok::Minus
            }
            b'*' => {
                i += 1;
                Tok::Star
            }
            b'^' => {
                i += 1;
                Tok::Caret
            }
            b'(' => {
                i += 1;
                Tok::LParen
            }
            b')' => {
                i += 1;
                Tok::RParen
            }
            b'/' => {
                if bytes.get(i + 1) == Some(&b'\\') {
                    i += 2;
                    Tok::Wedge
                } else {
                    i += 1;
                    Tok::Slash
                }
            }
            b'0'..=b'9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                Tok::Int(input[begin..i].to_string())
            }
            b'a'..=b'z' | b'A'..=b'Z' | b'_' => {
                while i < bytes.len()
                    && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_')
                {
                    i += 1;
                }
                let word = &input[begin..i];
                match classify_axis(word) {
                    Some(tok) => tok.map_err(|_| {
                        ParseError::new(
                            SourceSpan::new(begin, i),
                            ParseErrorKind::IndexRange,
                            format!("axis index in {word:?} is out of machine range"),
                        )
                    })?,
                    None => Tok::Ident(word.to_string()),
                }
            }
            _ => {
                let end = begin + utf8_len(bytes[begin]);
                return Err(ParseError::new(
                    SourceSpan::new(begin, end.min(bytes.len())),
                    ParseErrorKind::Lex,
                    format!("unexpected character {:?}", &input[begin..end.min(bytes.len())]),
                ));
            }
        };
        out.push(Token { tok, span: SourceSpan::new(begin, i) });
    }
    Ok(out)
}

/// `D<k>` and `dx<k>` are axis tokens; every other word is an identifier.
fn classify_axis(word: &str) -> Option<Result<Tok, ()>> {
    for (prefix, make) in [
        ("dx", Tok::AxisDx as fn(usize) -> Tok),
        ("D", Tok::AxisD as fn(usize) -> Tok),
    ] {
        if let Some(rest) = word.strip_prefix(prefix) {
            if !rest.is_empty() && rest.bytes().all(|b| b.is_ascii_digit()) {
                return Some(rest.parse::<usize>().map(make).map_err(|_| ()));
            }
        }
    }
    None
}

fn utf8_len(first: u8) -> usize {
    match first {
        0x00..=0x7f => 1,
        0xc0..=0xdf => 2,
        0xe0..=0xef => 3,
        _ => 4,
    }
}

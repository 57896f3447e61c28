//! Text file format for codes.
//!
//! ```text
//! #cwc q=3 n=4 d=3 w=2
//! 1200
//! 0012
//! ```
//!
//! The first line is the header: `#cwc q=<q> n=<n> d=<d> w=<w>` or
//! `#ccc q=<q> n=<n> d=<d> wbar=<w1,...,w_{q-1}>`. Every following line is
//! one word — `n` contiguous digits for `q ≤ 10`, comma-separated decimal
//! symbols for `q > 10` — or a `#` comment. Parsing is strict apart from
//! trailing whitespace and blank lines; duplicate words are rejected
//! (a duplicate pair has distance 0 and can never satisfy `d ≥ 1`).

use std::collections::HashMap;

use thiserror::Error;

use crate::code::{Code, CodeError, CodeSpec, Constraint, Word};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("empty input: missing header line")]
    MissingHeader,
    #[error("line 1: malformed header: {0}")]
    BadHeader(String),
    #[error("line 1: invalid parameters: {0}")]
    BadSpec(CodeError),
    #[error("line {line}: malformed word: {reason}")]
    BadWord { line: usize, reason: String },
    #[error("line {line}: duplicate of the word on line {first}")]
    DuplicateWord { line: usize, first: usize },
}

fn parse_field<'a>(token: Option<&'a str>, key: &str) -> Result<&'a str, ParseError> {
    let token = token.ok_or_else(|| ParseError::BadHeader(format!("missing {key}=")))?;
    token
        .strip_prefix(key)
        .and_then(|rest| rest.strip_prefix('='))
        .ok_or_else(|| ParseError::BadHeader(format!("expected {key}=<value>, got {token:?}")))
}

fn parse_num<T: std::str::FromStr>(text: &str, key: &str) -> Result<T, ParseError> {
    text.parse()
        .map_err(|_| ParseError::BadHeader(format!("bad value for {key}: {text:?}")))
}

fn parse_header(line: &str) -> Result<CodeSpec, ParseError> {
    let mut tokens = line.split_whitespace();
    let tag = tokens.next().ok_or(ParseError::MissingHeader)?;
    let is_ccc = match tag {
        "#cwc" => false,
        "#ccc" => true,
        other => {
            return Err(ParseError::BadHeader(format!(
                "expected #cwc or #ccc, got {other:?}"
            )))
        }
    };
    let q: u8 = parse_num(parse_field(tokens.next(), "q")?, "q")?;
    let n: usize = parse_num(parse_field(tokens.next(), "n")?, "n")?;
    let d: u32 = parse_num(parse_field(tokens.next(), "d")?, "d")?;
    let spec = if is_ccc {
        let wbar_text = parse_field(tokens.next(), "wbar")?;
        let counts: Vec<u32> = wbar_text
            .split(',')
            .map(|part| parse_num(part, "wbar"))
            .collect::<Result<_, _>>()?;
        CodeSpec::ccc(q, n, d, counts).map_err(ParseError::BadSpec)?
    } else {
        let w: u32 = parse_num(parse_field(tokens.next(), "w")?, "w")?;
        CodeSpec::cwc(q, n, d, w).map_err(ParseError::BadSpec)?
    };
    if let Some(extra) = tokens.next() {
        return Err(ParseError::BadHeader(format!("unexpected token {extra:?}")));
    }
    Ok(spec)
}

fn parse_word(line: &str, number: usize, spec: &CodeSpec) -> Result<Word, ParseError> {
    let bad = |reason: String| ParseError::BadWord {
        line: number,
        reason,
    };
    let symbols: Vec<u8> = if spec.q() <= 10 {
        line.chars()
            .map(|c| {
                c.to_digit(10)
                    .map(|d| d as u8)
                    .ok_or_else(|| bad(format!("non-digit character {c:?}")))
            })
            .collect::<Result<_, _>>()?
    } else {
        line.split(',')
            .map(|part| {
                part.parse::<u8>()
                    .map_err(|_| bad(format!("bad symbol {part:?}")))
            })
            .collect::<Result<_, _>>()?
    };
    if symbols.len() != spec.n() {
        return Err(bad(format!(
            "word has {} symbols, expected n={}",
            symbols.len(),
            spec.n()
        )));
    }
    Word::new(spec.q(), symbols).map_err(|e| bad(e.to_string()))
}

/// Parses a full code file. Strict except for trailing whitespace and blank
/// lines; `#` lines after the header are comments.
pub fn parse_code(text: &str) -> Result<Code, ParseError> {
    let mut lines = text.lines().enumerate();
    let header = loop {
        match lines.next() {
            None => return Err(ParseError::MissingHeader),
            Some((_, raw)) if raw.trim().is_empty() => continue,
            Some((_, raw)) => break raw.trim_end(),
        }
    };
    let spec = parse_header(header)?;
    let mut words = Vec::new();
    let mut seen: HashMap<Word, usize> = HashMap::new();
    for (index, raw) in lines {
        let line = raw.trim_end();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let number = index + 1;
        let word = parse_word(line, number, &spec)?;
        if let Some(&first) = seen.get(&word) {
            return Err(ParseError::DuplicateWord {
                line: number,
                first,
            });
        }
        seen.insert(word.clone(), number);
        words.push(word);
    }
    Ok(Code::new(spec, words).expect("parser enforces shape and uniqueness"))
}

fn render_word(word: &Word, q: u8) -> String {
    if q <= 10 {
        word.symbols().iter().map(|s| char::from(b'0' + s)).collect()
    } else {
        word.symbols()
            .iter()
            .map(u8::to_string)
            .collect::<Vec<_>>()
            .join(",")
    }
}

/// Renders a code in the file format; byte-deterministic for a given code.
pub fn write_code(code: &Code) -> String {
    let spec = code.spec();
    let mut out = String::new();
    match spec.constraint() {
        Constraint::Weight(w) => {
            out.push_str(&format!(
                "#cwc q={} n={} d={} w={}\n",
                spec.q(),
                spec.n(),
                spec.d(),
                w
            ));
        }
        Constraint::Composition(c) => {
            let parts: Vec<String> = c.counts().iter().map(u32::to_string).collect();
            out.push_str(&format!(
                "#ccc q={} n={} d={} wbar={}\n",
                spec.q(),
                spec.n(),
                spec.d(),
                parts.join(",")
            ));
        }
    }
    for word in code.words() {
        out.push_str(&render_word(word, spec.q()));
        out.push('\n');
    }
    out
}

//! Small lexical helpers shared by the element grammars.

use crate::error::{Error, Result};

/// A slice of the input together with its byte offset in the original text.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Span<'a> {
    pub text: &'a str,
    pub offset: usize,
}

/// Strips `open … close` around the (trimmed) input, returning the inside.
pub(crate) fn braced<'a>(s: &'a str, open: &str, close: &str) -> Result<Span<'a>> {
    let lead = s.len() - s.trim_start().len();
    let t = s.trim();
    if !t.starts_with(open) {
        return Err(Error::parse(lead, format!("expected '{open}'")));
    }
    if !t.ends_with(close) || t.len() < open.len() + close.len() {
        return Err(Error::parse(lead + t.len(), format!("expected closing '{close}'")));
    }
    let inner = &t[open.len()..t.len() - close.len()];
    check_balanced(inner, lead + open.len())?;
    Ok(Span {
        text: inner,
        offset: lead + open.len(),
    })
}

fn check_balanced(s: &str, offset: usize) -> Result<()> {
    let mut stack = Vec::new();
    for (i, c) in s.char_indices() {
        match c {
            '(' | '{' | '[' => stack.push(c),
            ')' | '}' | ']' => {
                let want = match c {
                    ')' => '(',
                    '}' => '{',
                    _ => '[',
                };
                if stack.pop() != Some(want) {
                    return Err(Error::parse(offset + i, format!("unbalanced '{c}'")));
                }
            }
            _ => {}
        }
    }
    if !stack.is_empty() {
        return Err(Error::parse(offset + s.len(), "unclosed bracket"));
    }
    Ok(())
}

/// Splits on `sep` occurring outside any bracket pair. Each piece comes
/// with its offset relative to `s`. Blank input yields no pieces.
pub(crate) fn split_top_level(s: &str, sep: char) -> Vec<(usize, &str)> {
    if s.trim().is_empty() {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in s.char_indices() {
        match c {
            '(' | '{' | '[' => depth += 1,
            ')' | '}' | ']' => depth -= 1,
            _ if c == sep && depth == 0 => {
                out.push((start, &s[start..i]));
                start = i + c.len_utf8();
            }
            _ => {}
        }
    }
    out.push((start, &s[start..]));
    out
}

/// Finds the first top-level occurrence of `pat`.
pub(crate) fn find_top_level(s: &str, pat: &str) -> Option<usize> {
    let mut depth = 0i32;
    for (i, c) in s.char_indices() {
        match c {
            '(' | '{' | '[' => depth += 1,
            ')' | '}' | ']' => depth -= 1,
            _ => {}
        }
        if depth == 0 && s[i..].starts_with(pat) {
            return Some(i);
        }
    }
    None
}

pub(crate) fn offset_err(e: Error, by: usize) -> Error {
    match e {
        Error::Parse { pos, msg } => Error::Parse { pos: pos + by, msg },
        Error::Alphabet { found, pos } => Error::Alphabet { found, pos: pos + by },
        other => other,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn top_level_split_respects_brackets() {
        let parts: Vec<&str> = split_top_level("a: (1,2), b, {x:0, y:1}", ',')
            .into_iter()
            .map(|(_, s)| s.trim())
            .collect();
        assert_eq!(parts, ["a: (1,2)", "b", "{x:0, y:1}"]);
        assert!(split_top_level("   ", ',').is_empty());
    }

    #[test]
    fn braces_checked() {
        assert_eq!(braced(" V{ 0 -> 1 } ", "V{", "}").unwrap().text, " 0 -> 1 ");
        assert!(braced("V{ (0 }", "V{", "}").is_err());
        assert!(braced("{0", "{", "}").is_err());
        assert!(braced("}", "{", "}").is_err());
    }
}

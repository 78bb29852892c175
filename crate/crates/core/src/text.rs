//! Shared letter-word parsing and formatting.

use crate::error::{parse_err, Result};

const COMBINING_MACRON: char = '\u{0304}';
const COMBINING_OVERLINE: char = '\u{0305}';

/// Parses a word of signed letters.
///
/// Accepted forms: the comma form `-2,3,1,6` (any letter size, whitespace
/// around letters ignored) and the comma-free digit form `-2316` in which
/// every letter is a single digit, negated either by a leading `-` or by a
/// combining overline/macron after the digit.
pub(crate) fn parse_letters(s: &str) -> Result<Vec<i32>> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(Vec::new());
    }
    if s.contains(',') || s.split_whitespace().count() > 1 {
        s.split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| {
                t.parse::<i32>()
                    .map_err(|_| parse_err!("invalid letter {t:?} in {s:?}"))
            })
            .collect()
    } else {
        parse_digit_word(s)
    }
}

fn parse_digit_word(s: &str) -> Result<Vec<i32>> {
    let mut letters: Vec<i32> = Vec::new();
    let mut negate_next = false;
    for c in s.chars() {
        match c {
            '-' => {
                if negate_next {
                    return Err(parse_err!("doubled sign in {s:?}"));
                }
                negate_next = true;
            }
            COMBINING_MACRON | COMBINING_OVERLINE => match letters.last_mut() {
                Some(l) if *l > 0 => *l = -*l,
                _ => return Err(parse_err!("misplaced overline in {s:?}")),
            },
            '0'..='9' => {
                let d = c as i32 - '0' as i32;
                letters.push(if negate_next { -d } else { d });
                negate_next = false;
            }
            _ => return Err(parse_err!("unexpected character {c:?} in {s:?}")),
        }
    }
    if negate_next {
        return Err(parse_err!("dangling sign in {s:?}"));
    }
    Ok(letters)
}

pub(crate) fn format_letters(letters: &[i32]) -> String {
    letters
        .iter()
        .map(|l| l.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn comma_and_digit_forms_agree() {
        let a = parse_letters("-2,3,1,6,-4,-7,5").unwrap();
        let b = parse_letters("-2316-4-75").unwrap();
        let c = parse_letters("2\u{0304}3164\u{0304}7\u{0304}5").unwrap();
        assert_eq!(a, vec![-2, 3, 1, 6, -4, -7, 5]);
        assert_eq!(a, b);
        assert_eq!(a, c);
    }

    #[test]
    fn multi_digit_letters_need_commas() {
        assert_eq!(parse_letters("10, -11").unwrap(), vec![10, -11]);
        assert_eq!(parse_letters("10 -11").unwrap(), vec![10, -11]);
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_letters("1-").is_err());
        assert!(parse_letters("1x2").is_err());
        assert!(parse_letters("--1").is_err());
        assert!(parse_letters("1,a").is_err());
    }
}

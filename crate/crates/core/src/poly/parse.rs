//! Shared term reader for the polynomial string grammar.
//!
//! Accepts the canonical output grammar and a little more: terms in any
//! order, optional `*`, exponents wrapped in `()` or `{}`.

use num_rational::Ratio;

use super::{GaussInt, PolyError};

pub(crate) type Monomial = Vec<(char, Ratio<i64>)>;

pub(crate) fn parse_terms(input: &str) -> Result<Vec<(GaussInt, Monomial)>, PolyError> {
    let chars: Vec<char> = input.chars().filter(|c| !c.is_whitespace()).collect();
    if chars.is_empty() {
        return Err(PolyError::Parse("empty polynomial".into()));
    }
    let mut terms = Vec::new();
    let mut pos = 0;
    while pos < chars.len() {
        let mut sign = 1i64;
        while pos < chars.len() && (chars[pos] == '+' || chars[pos] == '-') {
            if chars[pos] == '-' {
                sign = -sign;
            }
            pos += 1;
        }
        if pos >= chars.len() {
            return Err(PolyError::Parse("dangling sign".into()));
        }
        let (coeff, next) = read_coefficient(&chars, pos)?;
        pos = next;
        let mut mono = Monomial::new();
        loop {
            if pos < chars.len() && chars[pos] == '*' {
                pos += 1;
            }
            if pos < chars.len() && chars[pos].is_ascii_alphabetic() && chars[pos] != 'i' {
                let var = chars[pos];
                pos += 1;
                let mut exp = Ratio::from_integer(1);
                if pos < chars.len() && chars[pos] == '^' {
                    let (e, next) = read_exponent(&chars, pos + 1)?;
                    exp = e;
                    pos = next;
                }
                mono.push((var, exp));
            } else {
                break;
            }
        }
        let coeff = match coeff {
            Some(c) => c,
            None if mono.is_empty() => {
                return Err(PolyError::Parse(format!("expected a term at offset {pos}")))
            }
            None => GaussInt::ONE,
        };
        terms.push((coeff * GaussInt::real(sign), mono));
        if pos < chars.len() && chars[pos] != '+' && chars[pos] != '-' {
            return Err(PolyError::Parse(format!(
                "unexpected character '{}' at offset {pos}",
                chars[pos]
            )));
        }
    }
    Ok(terms)
}

fn read_int(chars: &[char], mut pos: usize) -> Option<(i64, usize)> {
    let start = pos;
    while pos < chars.len() && chars[pos].is_ascii_digit() {
        pos += 1;
    }
    if pos == start {
        return None;
    }
    let s: String = chars[start..pos].iter().collect();
    s.parse().ok().map(|v| (v, pos))
}

fn read_coefficient(chars: &[char], pos: usize) -> Result<(Option<GaussInt>, usize), PolyError> {
    if chars[pos] == '(' {
        let close = chars[pos..]
            .iter()
            .position(|&c| c == ')')
            .ok_or_else(|| PolyError::Parse("unclosed coefficient".into()))?
            + pos;
        let inner: String = chars[pos + 1..close].iter().collect();
        let mut re = 0i64;
        let mut im = 0i64;
        for (c, mono) in parse_terms(&inner)? {
            if !mono.is_empty() {
                return Err(PolyError::Parse("variable inside coefficient".into()));
            }
            re += c.re;
            im += c.im;
        }
        return Ok((Some(GaussInt::new(re, im)), close + 1));
    }
    if let Some((v, next)) = read_int(chars, pos) {
        if next < chars.len() && chars[next] == 'i' {
            return Ok((Some(GaussInt::new(0, v)), next + 1));
        }
        return Ok((Some(GaussInt::real(v)), next));
    }
    if chars[pos] == 'i' {
        return Ok((Some(GaussInt::I), pos + 1));
    }
    Ok((None, pos))
}

fn read_exponent(chars: &[char], mut pos: usize) -> Result<(Ratio<i64>, usize), PolyError> {
    let close = match chars.get(pos) {
        Some('(') => Some(')'),
        Some('{') => Some('}'),
        _ => None,
    };
    if close.is_some() {
        pos += 1;
    }
    let mut sign = 1;
    if chars.get(pos) == Some(&'-') {
        sign = -1;
        pos += 1;
    }
    let (num, mut next) =
        read_int(chars, pos).ok_or_else(|| PolyError::Parse("bad exponent".into()))?;
    let mut den = 1;
    if chars.get(next) == Some(&'/') {
        let (d, n2) =
            read_int(chars, next + 1).ok_or_else(|| PolyError::Parse("bad exponent".into()))?;
        if d == 0 {
            return Err(PolyError::Parse("zero denominator in exponent".into()));
        }
        den = d;
        next = n2;
    }
    if let Some(c) = close {
        if chars.get(next) != Some(&c) {
            return Err(PolyError::Parse("unclosed exponent".into()));
        }
        next += 1;
    }
    Ok((Ratio::new(sign * num, den), next))
}

/// Formats a rational exponent as `n` or `p/q`.
pub(crate) fn fmt_exponent(e: Ratio<i64>) -> String {
    if *e.denom() == 1 {
        e.numer().to_string()
    } else {
        format!("{}/{}", e.numer(), e.denom())
    }
}

/// Joins `(coefficient, monomial-text)` pairs with ` + ` / ` - `.
pub(crate) fn join_terms(terms: impl IntoIterator<Item = (GaussInt, String)>) -> String {
    let mut out = String::new();
    for (c, mono) in terms {
        let first = out.is_empty();
        let (negative, body) = if c.im == 0 {
            let mag = c.re.abs();
            let body = if mono.is_empty() {
                mag.to_string()
            } else if mag == 1 {
                mono
            } else {
                format!("{mag}{mono}")
            };
            (c.re < 0, body)
        } else if c.re == 0 {
            let mag = c.im.abs();
            let unit = if mag == 1 { "i".to_string() } else { format!("{mag}i") };
            (c.im < 0, format!("{unit}{mono}"))
        } else {
            (false, format!("{c}{mono}"))
        };
        match (first, negative) {
            (true, true) => out.push('-'),
            (true, false) => {}
            (false, true) => out.push_str(" - "),
            (false, false) => out.push_str(" + "),
        }
        out.push_str(&body);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

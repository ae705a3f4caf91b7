//! Differential expressions such as `1/2 x*y - y*x + z^2`.
//!
//! ```text
//! polynomial := sign? term (sign term)*
//! sign       := '+' | '-' | '−'
//! term       := rational ('*'? factor)* | factor ('*'? factor)*
//! factor     := generator ('^' natural)?
//! rational   := integer ('/' positive-integer)?
//! ```
//!
//! Whitespace is insignificant. Names are NFC-normalized before lookup, and
//! the result is normalized with Koszul signs.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use sullivan_core::{GeneratorSet, Polynomial, Rational};
use unicode_normalization::UnicodeNormalization;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.line, self.column, self.message)
    }
}

impl std::error::Error for ParseError {}

pub fn nfc(s: &str) -> String {
    s.nfc().collect()
}

pub fn is_name_start(c: char) -> bool {
    c.is_alphabetic() || c == '_'
}

pub fn is_name_char(c: char) -> bool {
    c.is_alphanumeric() || c == '_' || c == '\''
}

/// Checks that `name` is usable as a generator in expressions.
pub fn valid_name(name: &str) -> bool {
    let mut chars = name.chars();
    chars.next().is_some_and(is_name_start) && chars.all(is_name_char)
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Name(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    End,
}

struct Lexer {
    toks: Vec<(Tok, usize, usize)>,
    pos: usize,
}

impl Lexer {
    fn new(src: &str) -> Result<Self, ParseError> {
        let chars: Vec<char> = src.chars().collect();
        let (mut line, mut col) = (1, 1);
        let mut toks = Vec::new();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            let (l0, c0) = (line, col);
            let mut advance = |n: usize, i: &mut usize| {
                for _ in 0..n {
                    if chars[*i] == '\n' {
                        line += 1;
                        col = 1;
                    } else {
                        col += 1;
                    }
                    *i += 1;
                }
            };
            if c.is_whitespace() {
                advance(1, &mut i);
                continue;
            }
            let tok = match c {
                '+' => Tok::Plus,
                '-' | '−' => Tok::Minus,
                '*' | '·' => Tok::Star,
                '/' => Tok::Slash,
                '^' => Tok::Caret,
                d if d.is_ascii_digit() => {
                    let start = i;
                    let mut j = i;
                    while j < chars.len() && chars[j].is_ascii_digit() {
                        j += 1;
                    }
                    let digits: String = chars[start..j].iter().collect();
                    advance(j - start, &mut i);
                    toks.push((Tok::Int(digits.parse().expect("ascii digits")), l0, c0));
                    continue;
                }
                n if is_name_start(n) => {
                    let start = i;
                    let mut j = i;
                    while j < chars.len() && is_name_char(chars[j]) {
                        j += 1;
                    }
                    let name: String = chars[start..j].iter().collect();
                    advance(j - start, &mut i);
                    toks.push((Tok::Name(name), l0, c0));
                    continue;
                }
                other => {
                    return Err(ParseError { line: l0, column: c0, message: format!("unexpected character {other:?}") });
                }
            };
            advance(1, &mut i);
            toks.push((tok, l0, c0));
        }
        toks.push((Tok::End, line, col));
        Ok(Lexer { toks, pos: 0 })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn next(&mut self) -> (Tok, usize, usize) {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error(&self, message: impl Into<String>) -> ParseError {
        let (_, line, column) = &self.toks[self.pos];
        ParseError { line: *line, column: *column, message: message.into() }
    }
}

/// Parses and normalizes an expression over the declared generators.
pub fn parse_expression(src: &str, gens: &GeneratorSet) -> Result<Polynomial, ParseError> {
    let src = nfc(src);
    let mut lx = Lexer::new(&src)?;
    let mut total = Polynomial::zero();
    let mut negative = match lx.peek() {
        Tok::Plus => {
            lx.next();
            false
        }
        Tok::Minus => {
            lx.next();
            true
        }
        _ => false,
    };
    loop {
        let (coeff, raw) = term(&mut lx, gens)?;
        let coeff = if negative { -coeff } else { coeff };
        let p = Polynomial::from_product(&raw, &coeff, gens).map_err(|e| lx.error(e.to_string()))?;
        total.add_assign(&p);
        match lx.next() {
            (Tok::Plus, ..) => negative = false,
            (Tok::Minus, ..) => negative = true,
            (Tok::End, ..) => return Ok(total),
            (t, line, column) => {
                return Err(ParseError { line, column, message: format!("expected '+', '-' or end of input, found {}", describe(&t)) })
            }
        }
    }
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Int(n) => format!("number {n}"),
        Tok::Name(s) => format!("name {s:?}"),
        Tok::Plus => "'+'".into(),
        Tok::Minus => "'-'".into(),
        Tok::Star => "'*'".into(),
        Tok::Slash => "'/'".into(),
        Tok::Caret => "'^'".into(),
        Tok::End => "end of input".into(),
    }
}

fn term(lx: &mut Lexer, gens: &GeneratorSet) -> Result<(Rational, Vec<usize>), ParseError> {
    let mut coeff = Rational::one();
    let mut raw = Vec::new();
    let mut have_coeff = false;
    if let Tok::Int(_) = lx.peek() {
        coeff = rational(lx)?;
        have_coeff = true;
    }
    loop {
        let star = matches!(lx.peek(), Tok::Star);
        if star {
            if !have_coeff && raw.is_empty() {
                return Err(lx.error("'*' must follow a coefficient or a generator"));
            }
            lx.next();
        }
        match lx.peek().clone() {
            Tok::Name(name) => {
                let name = nfc(&name);
                let i = gens.index_of(&name).map_err(|_| lx.error(format!("undeclared generator {name:?}")))?;
                lx.next();
                let mut e = 1u32;
                if matches!(lx.peek(), Tok::Caret) {
                    lx.next();
                    match lx.next() {
                        (Tok::Int(n), line, column) => {
                            e = u32::try_from(&n).map_err(|_| ParseError { line, column, message: format!("exponent {n} too large") })?;
                        }
                        (t, line, column) => {
                            return Err(ParseError { line, column, message: format!("expected an exponent, found {}", describe(&t)) })
                        }
                    }
                }
                raw.extend(std::iter::repeat_n(i, e as usize));
            }
            Tok::Int(_) if !have_coeff || !raw.is_empty() => {
                return Err(lx.error("a coefficient may only start a term"));
            }
            _ if star => return Err(lx.error("expected a generator after '*'")),
            _ => break,
        }
    }
    if !have_coeff && raw.is_empty() {
        return Err(lx.error(format!("expected a term, found {}", describe(lx.peek()))));
    }
    Ok((coeff, raw))
}

fn rational(lx: &mut Lexer) -> Result<Rational, ParseError> {
    let Tok::Int(n) = lx.next().0 else { unreachable!("caller checked") };
    if matches!(lx.peek(), Tok::Slash) {
        lx.next();
        return match lx.next() {
            (Tok::Int(d), line, column) => {
                if d.is_zero() {
                    Err(ParseError { line, column, message: "division by zero".into() })
                } else {
                    Ok(Rational::new(n, d))
                }
            }
            (t, line, column) => Err(ParseError { line, column, message: format!("expected a denominator, found {}", describe(&t)) }),
        };
    }
    Ok(Rational::from_integer(n))
}

/// Parses a linear combination of names, e.g. `2 e1 - 1/3 e2`.
pub fn parse_linear(src: &str, names: &[String]) -> Result<Vec<Rational>, ParseError> {
    let gens = GeneratorSet::new(names.iter().map(|n| sullivan_core::Generator::new(n.clone(), 2)).collect())
        .map_err(|e| ParseError { line: 1, column: 1, message: e.to_string() })?;
    let p = parse_expression(src, &gens)?;
    let mut out = vec![Rational::zero(); names.len()];
    for (m, c) in p.terms() {
        let f = m.factors();
        if f.len() != 1 || f[0].1 != 1 {
            return Err(ParseError { line: 1, column: 1, message: format!("{src:?} is not a linear combination of generators") });
        }
        out[f[0].0] = c.clone();
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use sullivan_core::Generator;

    fn gens(list: &[(&str, i64)]) -> GeneratorSet {
        GeneratorSet::new(list.iter().map(|(n, d)| Generator::new(*n, *d)).collect()).unwrap()
    }

    #[test]
    fn powers_and_degrees() {
        let g = gens(&[("x", 2)]);
        let p = parse_expression("x^3", &g).unwrap();
        assert_eq!(p.homogeneous_degree(&g), Ok(Some(6)));
        assert_eq!(p.display(&g).to_string(), "x^3");
    }

    #[test]
    fn odd_square_vanishes() {
        let g = gens(&[("e", 1)]);
        assert!(parse_expression("e*e", &g).unwrap().is_zero());
    }

    #[test]
    fn koszul_normalization() {
        let g = gens(&[("x", 1), ("y", 1)]);
        let p = parse_expression("1/2 x*y − y*x", &g).unwrap();
        assert_eq!(p.display(&g).to_string(), "3/2 x*y");
        assert_eq!(parse_expression("1/2 x*y - y*x", &g).unwrap(), p);
    }

    #[test]
    fn constants_and_signs() {
        let g = gens(&[("x", 2)]);
        assert!(parse_expression("0", &g).unwrap().is_zero());
        assert_eq!(parse_expression("-2*x + 3 x", &g).unwrap().display(&g).to_string(), "x");
        assert_eq!(parse_expression(" x x ", &g).unwrap().display(&g).to_string(), "x^2");
    }

    #[test]
    fn errors_carry_positions() {
        let g = gens(&[("x", 2)]);
        let e = parse_expression("x +\n  y", &g).unwrap_err();
        assert_eq!((e.line, e.column), (2, 3));
        assert!(e.message.contains("\"y\""));
        let e = parse_expression("1/0 x", &g).unwrap_err();
        assert_eq!((e.line, e.column), (1, 3));
        assert!(parse_expression("x +", &g).is_err());
        assert!(parse_expression("x 2", &g).is_err());
        assert!(parse_expression("* x", &g).is_err());
        assert!(parse_expression("x # x", &g).is_err());
    }

    #[test]
    fn unicode_names_are_normalized() {
        // "é" precomposed versus e + combining acute
        let g = gens(&[("\u{e9}", 2)]);
        let p = parse_expression("e\u{301}^2", &g).unwrap();
        assert_eq!(p.display(&g).to_string(), "\u{e9}^2");
    }

    #[test]
    fn linear_combinations() {
        let names = vec!["a".to_string(), "b".to_string()];
        assert_eq!(parse_linear("2 b - 1/2 a", &names).unwrap(), vec![Rational::new(BigInt::from(-1), BigInt::from(2)), Rational::from_integer(2.into())]);
        assert!(parse_linear("a*b", &names).is_err());
        assert!(parse_linear("1", &names).is_err());
    }

    #[test]
    fn round_trip_through_display() {
        let g = gens(&[("a", 1), ("b", 2), ("c", 3)]);
        for src in ["a*b - 2/3 c*b^2 + 7", "b^3 - a*c", "-a*b*c"] {
            let p = parse_expression(src, &g).unwrap();
            let again = parse_expression(&p.display(&g).to_string(), &g).unwrap();
            assert_eq!(p, again);
        }
    }
}

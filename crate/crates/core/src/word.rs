//! Words over the standard generators `x0`, `x1` and their inverses.
//!
//! A word `a_1 a_2 … a_n` denotes the composite `a_1 ∘ a_2 ∘ … ∘ a_n`, so
//! the rightmost letter acts first: `eval(w, x) = a_1(a_2(…a_n(x)))`.

use alloc::vec::Vec;
use core::fmt;

use crate::fixtures;
use crate::plmap::{check_in_f, FElement};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Letter {
    X0,
    X0Inv,
    X1,
    X1Inv,
}

impl Letter {
    pub const ALL: [Letter; 4] = [Letter::X0, Letter::X0Inv, Letter::X1, Letter::X1Inv];

    pub fn inverse(self) -> Letter {
        match self {
            Letter::X0 => Letter::X0Inv,
            Letter::X0Inv => Letter::X0,
            Letter::X1 => Letter::X1Inv,
            Letter::X1Inv => Letter::X1,
        }
    }

    pub fn element(self) -> FElement {
        let g = match self {
            Letter::X0 | Letter::X0Inv => fixtures::x0(),
            Letter::X1 | Letter::X1Inv => fixtures::x1(),
        };
        let g = check_in_f(&g).expect("generators lie in F");
        match self {
            Letter::X0 | Letter::X1 => g,
            _ => g.inverse(),
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Letter::X0 => "x0",
            Letter::X0Inv => "x0^-1",
            Letter::X1 => "x1",
            Letter::X1Inv => "x1^-1",
        })
    }
}

/// Exact product of a word.
pub fn word_to_element(word: &[Letter]) -> FElement {
    let gens: [FElement; 4] = Letter::ALL.map(Letter::element);
    word.iter().fold(FElement::identity(), |acc, l| {
        acc.compose(&gens[Letter::ALL.iter().position(|x| x == l).unwrap()])
    })
}

/// Parses whitespace separated tokens `x0`, `x1`, optionally raised to an
/// integer power: `x1^-1`, `x0^3`, `x0⁻¹`.
pub fn parse_word(text: &str) -> Result<Vec<Letter>> {
    let mut out = Vec::new();
    for token in text.split_whitespace() {
        let token = token.replace('⁻', "^-").replace('¹', "1");
        let (base, exp) = match token.split_once('^') {
            Some((b, e)) => (
                b,
                e.parse::<i64>()
                    .map_err(|_| Error::Parse(alloc::format!("bad exponent in {token:?}")))?,
            ),
            None => (token.as_str(), 1),
        };
        let letter = match base {
            "x0" | "X0" => Letter::X0,
            "x1" | "X1" => Letter::X1,
            _ => return Err(Error::Parse(alloc::format!("unknown generator {base:?}"))),
        };
        let letter = if exp < 0 { letter.inverse() } else { letter };
        for _ in 0..exp.unsigned_abs() {
            out.push(letter);
        }
    }
    Ok(out)
}

pub fn format_word(word: &[Letter]) -> alloc::string::String {
    use alloc::string::ToString;
    let parts: Vec<_> = word.iter().map(|l| l.to_string()).collect();
    parts.join(" ")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    #[test]
    fn word_examples() {
        assert!(word_to_element(&[]).is_identity());
        assert_eq!(word_to_element(&[Letter::X0]).map(), &fixtures::x0());
        assert!(word_to_element(&[Letter::X0, Letter::X0Inv]).is_identity());
    }

    #[test]
    fn rightmost_letter_acts_first() {
        let w = word_to_element(&[Letter::X0, Letter::X1]);
        let x = rat(3, 4);
        let expect = fixtures::x0().evaluate(&fixtures::x1().evaluate(&x).unwrap()).unwrap();
        assert_eq!(w.evaluate(&x).unwrap(), expect);
    }

    #[test]
    fn parsing() {
        assert_eq!(parse_word("").unwrap(), Vec::<Letter>::new());
        assert_eq!(
            parse_word("x0 x1^-1 x0⁻¹").unwrap(),
            [Letter::X0, Letter::X1Inv, Letter::X0Inv]
        );
        assert_eq!(parse_word("x0^2").unwrap(), [Letter::X0, Letter::X0]);
        assert!(parse_word("x2").is_err());
        assert!(parse_word("x0^a").is_err());
        assert_eq!(format_word(&parse_word("x0 x1^-1").unwrap()), "x0 x1^-1");
    }
}

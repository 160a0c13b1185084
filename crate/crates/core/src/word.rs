//! Words over the standard generators and named elements.
//!
//! Text syntax is a whitespace-separated list of tokens, each optionally
//! followed by `^<e>` with a nonzero integer `e`:
//!
//! ```text
//! x<i>   A(<d>,<p>)   f1(<d>)   f2(<d>)   s
//! ```
//!
//! A word `w1 w2 ... wk` denotes the product `w1 · w2 · ... · wk`, i.e. the
//! map `x ↦ w1(w2(...wk(x)))`.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::construct::{
    make_a, make_f1, make_f2, shift_element, standard_generator, ADParams, ConstructError,
};
use crate::element::PlElement;
use crate::nadic::{check_base, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Symbol {
    /// Standard generator `x_i`.
    Generator(u32),
    A(ADParams),
    F1(Rational),
    F2(Rational),
    Shift,
}

impl Symbol {
    pub fn element(&self, base: u32) -> Result<PlElement, ConstructError> {
        match self {
            Symbol::Generator(i) => standard_generator(base, *i),
            Symbol::A(params) => Ok(make_a(params)),
            Symbol::F1(d) => make_f1(d, base),
            Symbol::F2(d) => make_f2(d, base),
            Symbol::Shift => shift_element(base),
        }
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Symbol::Generator(i) => write!(f, "x{i}"),
            Symbol::A(params) => write!(f, "A({},{})", params.d(), params.p()),
            Symbol::F1(d) => write!(f, "f1({d})"),
            Symbol::F2(d) => write!(f, "f2({d})"),
            Symbol::Shift => write!(f, "s"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Letter {
    pub symbol: Symbol,
    pub exponent: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("token {index} at byte {offset} ({token:?}): {reason}")]
pub struct WordParseError {
    pub index: usize,
    pub offset: usize,
    pub token: String,
    pub reason: String,
}

/// A finite word in F(N).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupWord {
    base: u32,
    letters: Vec<Letter>,
}

impl GroupWord {
    pub fn new(base: u32) -> Result<Self, ConstructError> {
        check_base(base)?;
        Ok(GroupWord {
            base,
            letters: Vec::new(),
        })
    }

    /// Builds a word of standard generators from `(id, exponent)` pairs;
    /// zero exponents are dropped.
    pub fn from_generators(
        base: u32,
        letters: impl IntoIterator<Item = (u32, i64)>,
    ) -> Result<Self, ConstructError> {
        let mut w = GroupWord::new(base)?;
        for (id, e) in letters {
            w.push(Symbol::Generator(id), e);
        }
        Ok(w)
    }

    pub fn base(&self) -> u32 {
        self.base
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    /// Appends `symbol^exponent`; a zero exponent is a no-op.
    pub fn push(&mut self, symbol: Symbol, exponent: i64) {
        if exponent != 0 {
            self.letters.push(Letter { symbol, exponent });
        }
    }

    pub fn concat(&self, other: &GroupWord) -> GroupWord {
        let mut letters = self.letters.clone();
        letters.extend(other.letters.iter().cloned());
        GroupWord {
            base: self.base,
            letters,
        }
    }

    /// Folds the letters left to right into an element; the empty word is the identity.
    pub fn evaluate(&self) -> Result<PlElement, ConstructError> {
        let mut acc = PlElement::identity(self.base);
        for letter in &self.letters {
            let g = letter.symbol.element(self.base)?.pow(letter.exponent);
            acc = acc.compose(&g)?;
        }
        Ok(acc)
    }

    pub fn parse(text: &str, base: u32) -> Result<Self, WordParseError> {
        let mut word = GroupWord {
            base,
            letters: Vec::new(),
        };
        if check_base(base).is_err() {
            return Err(WordParseError {
                index: 0,
                offset: 0,
                token: String::new(),
                reason: format!("base must be at least 2, got {base}"),
            });
        }
        for (index, (offset, token)) in tokenize(text).into_iter().enumerate() {
            let fail = |reason: String| WordParseError {
                index,
                offset,
                token: token.to_string(),
                reason,
            };
            let (symbol, exponent) = parse_token(token, base).map_err(fail)?;
            word.letters.push(Letter { symbol, exponent });
        }
        Ok(word)
    }
}

/// Evaluates a word into its element.
pub fn evaluate_word(w: &GroupWord) -> Result<PlElement, ConstructError> {
    w.evaluate()
}

impl fmt::Display for GroupWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, letter) in self.letters.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{}", letter.symbol)?;
            if letter.exponent != 1 {
                write!(f, "^{}", letter.exponent)?;
            }
        }
        Ok(())
    }
}

/// Splits on whitespace outside parentheses, keeping byte offsets.
fn tokenize(text: &str) -> Vec<(usize, &str)> {
    let mut tokens = Vec::new();
    let mut start: Option<usize> = None;
    let mut depth = 0i32;
    for (i, c) in text.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            _ => {}
        }
        if c.is_whitespace() && depth <= 0 {
            if let Some(s) = start.take() {
                tokens.push((s, &text[s..i]));
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        tokens.push((s, &text[s..]));
    }
    tokens
}

fn parse_rational(s: &str) -> Result<Rational, String> {
    s.trim().parse().map_err(|e| format!("{e}"))
}

fn parse_token(token: &str, base: u32) -> Result<(Symbol, i64), String> {
    let (head, exponent) = match token.rfind('^') {
        Some(i) if !token[i..].contains(')') => {
            let e: i64 = token[i + 1..]
                .parse()
                .map_err(|_| format!("bad exponent {:?}", &token[i + 1..]))?;
            if e == 0 {
                return Err("exponent must be nonzero".into());
            }
            (&token[..i], e)
        }
        _ => (token, 1),
    };
    let call = |name: &str| -> Option<&str> {
        head.strip_prefix(name)
            .and_then(|rest| rest.strip_prefix('('))
            .and_then(|rest| rest.strip_suffix(')'))
    };
    let symbol = if head == "s" {
        Symbol::Shift
    } else if let Some(digits) = head.strip_prefix('x') {
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(format!("bad generator index {digits:?}"));
        }
        Symbol::Generator(digits.parse().map_err(|_| "generator index too large")?)
    } else if let Some(args) = call("A") {
        let (d, p) = args
            .split_once(',')
            .ok_or_else(|| "A expects two arguments".to_string())?;
        let d = parse_rational(d)?;
        let p: i64 = p
            .trim()
            .parse()
            .map_err(|_| format!("bad exponent p {:?}", p.trim()))?;
        Symbol::A(ADParams::new(d, p, base).map_err(|e| e.to_string())?)
    } else if let Some(arg) = call("f1") {
        let d = parse_rational(arg)?;
        make_f1(&d, base).map_err(|e| e.to_string())?;
        Symbol::F1(d)
    } else if let Some(arg) = call("f2") {
        let d = parse_rational(arg)?;
        make_f2(&d, base).map_err(|e| e.to_string())?;
        Symbol::F2(d)
    } else {
        return Err("unknown token".into());
    };
    Ok((symbol, exponent))
}

/// Random valid `A_{d,p}` parameters with `p ∈ ±{1,2,3}` and denominators up to `N^4`.
pub fn random_ad_params<R: Rng + ?Sized>(base: u32, rng: &mut R) -> ADParams {
    loop {
        let magnitude = rng.random_range(1..=3i64);
        let p = if rng.random_bool(0.5) {
            magnitude
        } else {
            -magnitude
        };
        let k = rng.random_range(1..=4u32);
        let den = u64::from(base).pow(k);
        let m = rng.random_range(1..den);
        if let Ok(params) = ADParams::new(Rational::new(m, den), p, base) {
            return params;
        }
    }
}

/// A random word of exactly `length` letters over `x_0..x_{N+1}` and the
/// A-family, each with exponent ±1.
pub fn random_word<R: Rng + ?Sized>(base: u32, length: usize, rng: &mut R) -> GroupWord {
    let mut w = GroupWord {
        base,
        letters: Vec::with_capacity(length),
    };
    for _ in 0..length {
        let symbol = if rng.random_ratio(1, 4) {
            Symbol::A(random_ad_params(base, rng))
        } else {
            Symbol::Generator(rng.random_range(0..=base + 1))
        };
        let exponent = if rng.random_bool(0.5) { 1 } else { -1 };
        w.push(symbol, exponent);
    }
    w
}

/// Deterministic pseudo-random element: same `(base, length, seed)`, same element.
pub fn random_element(base: u32, length: usize, seed: u64) -> Result<PlElement, ConstructError> {
    check_base(base)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_word(base, length, &mut rng).evaluate()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn word(text: &str, base: u32) -> GroupWord {
        GroupWord::parse(text, base).unwrap()
    }

    #[test]
    fn evaluate_examples() {
        assert!(word("", 2).evaluate().unwrap().is_identity());
        let w = GroupWord::from_generators(2, [(0, 1), (0, -1)]).unwrap();
        assert!(w.evaluate().unwrap().is_identity());
        for n in 2..5u32 {
            let lhs = GroupWord::from_generators(n, [(1, 1), (0, 1)]).unwrap();
            let rhs = GroupWord::from_generators(n, [(0, 1), (n, 1)]).unwrap();
            assert_eq!(lhs.evaluate().unwrap(), rhs.evaluate().unwrap());
        }
    }

    #[test]
    fn parse_examples() {
        assert!(word("x0 x0^-1", 2).evaluate().unwrap().is_identity());
        let a = word("A(1/2,1)", 2).evaluate().unwrap();
        assert_eq!(a, standard_generator(2, 0).unwrap());
        assert_eq!(
            word("x1 x0", 2).evaluate().unwrap(),
            word("x0 x2", 2).evaluate().unwrap()
        );
        assert_eq!(
            word("A( 1/2 , 1 )^2", 2).evaluate().unwrap(),
            word("A(1/2,1) A(1/2,1)", 2).evaluate().unwrap()
        );
        let w = word("x3^-2 A(1/4,-1) f1(1/4) f2(1/8)^3 s", 2);
        assert_eq!(w.len(), 5);
        assert_eq!(w.to_string(), "x3^-2 A(1/4,-1) f1(1/4) f2(1/8)^3 s");
        assert_eq!(word(&w.to_string(), 2), w);
    }

    #[test]
    fn parse_errors_carry_position() {
        let err = GroupWord::parse("x0 y1", 2).unwrap_err();
        assert_eq!((err.index, err.offset), (1, 3));
        let err = GroupWord::parse("x0 x1^0", 2).unwrap_err();
        assert_eq!(err.index, 1);
        assert!(GroupWord::parse("A(3/4,1)", 2).is_err());
        assert!(GroupWord::parse("A(1/3,1)", 2).is_err());
        assert!(GroupWord::parse("f1(1/2)", 2).is_err());
        assert!(GroupWord::parse("x", 2).is_err());
        assert!(GroupWord::parse("x-1", 2).is_err());
        assert!(GroupWord::parse("A(1/2)", 2).is_err());
        assert!(GroupWord::parse("x0", 1).is_err());
    }

    #[test]
    fn random_element_examples() {
        assert!(random_element(2, 0, 1).unwrap().is_identity());
        assert_eq!(random_element(3, 7, 42), random_element(3, 7, 42));
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..1000 {
            let f = random_word(2, 8, &mut rng).evaluate().unwrap();
            assert_eq!(PlElement::new(2, f.breaks().to_vec()).unwrap(), f);
        }
    }

    #[test]
    fn evaluation_is_a_monoid_homomorphism() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for base in [2, 3, 5] {
            for _ in 0..50 {
                let u = random_word(base, 5, &mut rng);
                let v = random_word(base, 4, &mut rng);
                let joined = u.concat(&v).evaluate().unwrap();
                assert_eq!(joined, &u.evaluate().unwrap() * &v.evaluate().unwrap());
            }
        }
    }
}

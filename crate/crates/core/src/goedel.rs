//! Gödel numbering of terms and formulas.
//!
//! A node is written in preorder as a stream of naturals: its constructor
//! tag, then identifier indices, numeral values and subtrees. Each natural
//! `m` is written as the Elias-gamma code of `m + 1`, and the resulting bit
//! string, prefixed with a `1` bit, is read as a binary number. Code length
//! is linear in the size of the syntax tree, and numerals cost only about
//! twice their bit length, so codes of formulas that mention other codes stay
//! manageable.
//!
//! Term tags are `0..=4` (variable, numeral, successor, sum, product) and
//! formula tags start at 5, so term and formula codes never coincide. `0`
//! and `1` are not codes.

use crate::error::{Error, Result};
use crate::syntax::{free_variables, Formula, Ident, Term};
use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use std::fmt;

/// A natural number coding a term or a formula.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GoedelNumber(BigUint);

impl GoedelNumber {
    pub fn new(value: BigUint) -> Self {
        GoedelNumber(value)
    }

    pub fn value(&self) -> &BigUint {
        &self.0
    }

    pub fn into_value(self) -> BigUint {
        self.0
    }

    /// The numeral naming this code.
    pub fn numeral(&self) -> Term {
        Term::Num(self.0.clone())
    }
}

impl fmt::Display for GoedelNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl From<BigUint> for GoedelNumber {
    fn from(value: BigUint) -> Self {
        GoedelNumber(value)
    }
}

/// Either kind of codable syntax.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Syntax {
    Term(Term),
    Formula(Formula),
}

mod tag {
    pub const VAR: u32 = 0;
    pub const NUM: u32 = 1;
    pub const SUCC: u32 = 2;
    pub const ADD: u32 = 3;
    pub const MUL: u32 = 4;
    pub const EQ: u32 = 5;
    pub const LT: u32 = 6;
    pub const TRU: u32 = 7;
    pub const ITRU: u32 = 8;
    pub const PREC: u32 = 9;
    pub const ACK: u32 = 10;
    pub const DIAG: u32 = 11;
    pub const EXP: u32 = 12;
    pub const IDX_EQ: u32 = 13;
    pub const SUB_TRU: u32 = 14;
    pub const SENT: u32 = 15;
    pub const NOT: u32 = 16;
    pub const OR: u32 = 17;
    pub const EX: u32 = 18;
    pub const EX_IDX: u32 = 19;
    pub const AND: u32 = 20;
    pub const IMP: u32 = 21;
    pub const IFF: u32 = 22;
    pub const ALL: u32 = 23;
    pub const ALL_IDX: u32 = 24;
    pub const EX_LE: u32 = 25;
    pub const ALL_LE: u32 = 26;
    pub const LAST: u32 = ALL_LE;
}

/// Constructor tag of a formula node.
pub(crate) fn formula_tag(f: &Formula) -> u32 {
    use Formula::*;
    match f {
        Eq(..) => tag::EQ,
        Lt(..) => tag::LT,
        Tru(_) => tag::TRU,
        ITru(..) => tag::ITRU,
        Prec(..) => tag::PREC,
        Ack(..) => tag::ACK,
        Diag(..) => tag::DIAG,
        ExpRel(..) => tag::EXP,
        IdxEq(..) => tag::IDX_EQ,
        SubTru(..) => tag::SUB_TRU,
        SentA(_) => tag::SENT,
        Not(_) => tag::NOT,
        Or(..) => tag::OR,
        ExistsNum(..) => tag::EX,
        ExistsIdx(..) => tag::EX_IDX,
        And(..) => tag::AND,
        Imp(..) => tag::IMP,
        Iff(..) => tag::IFF,
        ForallNum(..) => tag::ALL,
        ForallIdx(..) => tag::ALL_IDX,
        BoundedExists(..) => tag::EX_LE,
        BoundedForall(..) => tag::ALL_LE,
    }
}

/// Bits in writing order, packed most significant first.
#[derive(Default)]
struct BitWriter {
    words: Vec<u64>,
    len: usize,
}

impl BitWriter {
    fn small(&mut self, m: u32) {
        self.word(u64::from(m) + 1);
    }

    fn ident(&mut self, x: &Ident) {
        match x.small_index() {
            Some(i) if i < u64::MAX => self.word(i + 1),
            _ => self.nat(&x.index()),
        }
    }

    /// Appends the low `width` bits of `v`.
    fn push(&mut self, v: u64, width: usize) {
        if width == 0 {
            return;
        }
        let used = self.len % 64;
        if used == 0 {
            self.words.push(0);
        }
        let free = 64 - used;
        let last = self.words.len() - 1;
        if width <= free {
            self.words[last] |= v << (free - width);
        } else {
            self.words[last] |= v >> (width - free);
            self.words.push(v << (64 - (width - free)));
        }
        self.len += width;
    }

    fn zeros(&mut self, mut k: usize) {
        while k > 0 {
            let step = k.min(64);
            self.push(0, step);
            k -= step;
        }
    }

    fn word(&mut self, n: u64) {
        let len = (64 - n.leading_zeros()) as usize;
        self.zeros(len - 1);
        self.push(n, len);
    }

    fn digit(&mut self, b: u8) {
        self.push(u64::from(b), 1);
    }

    fn nat(&mut self, m: &BigUint) {
        match m.to_u64() {
            Some(m) if m < u64::MAX => self.word(m + 1),
            _ => {
                let n = m + BigUint::one();
                let digits = n.to_radix_be(2);
                self.zeros(digits.len() - 1);
                for b in digits {
                    self.digit(b);
                }
            }
        }
    }

    fn term(&mut self, t: &Term) {
        match t {
            Term::Var(x) => {
                self.small(tag::VAR);
                self.ident(x);
            }
            Term::Num(n) => {
                self.small(tag::NUM);
                self.nat(n);
            }
            Term::Succ(a) => {
                self.small(tag::SUCC);
                self.term(a);
            }
            Term::Add(a, b) | Term::Mul(a, b) => {
                self.small(if matches!(t, Term::Add(..)) { tag::ADD } else { tag::MUL });
                self.term(a);
                self.term(b);
            }
        }
    }

    fn formula(&mut self, f: &Formula) {
        use Formula::*;
        self.small(formula_tag(f));
        match f {
            Eq(a, b) | Lt(a, b) | Ack(a, b) | Diag(a, b) | ExpRel(a, b) | SubTru(a, b) => {
                self.term(a);
                self.term(b);
            }
            Tru(a) | SentA(a) => self.term(a),
            ITru(i, a) => {
                self.ident(i);
                self.term(a);
            }
            Prec(a, b) | IdxEq(a, b) => {
                self.ident(a);
                self.ident(b);
            }
            Not(a) => self.formula(a),
            Or(a, b) | And(a, b) | Imp(a, b) | Iff(a, b) => {
                self.formula(a);
                self.formula(b);
            }
            ExistsNum(x, a) | ExistsIdx(x, a) | ForallNum(x, a) | ForallIdx(x, a) => {
                self.ident(x);
                self.formula(a);
            }
            BoundedExists(x, t, a) | BoundedForall(x, t, a) => {
                self.ident(x);
                self.term(t);
                self.formula(a);
            }
        }
    }

    fn finish(self) -> GoedelNumber {
        let pad = self.words.len() * 64 - self.len;
        let digits: Vec<u32> = self.words.iter().rev().flat_map(|w| [*w as u32, (*w >> 32) as u32]).collect();
        let mut n = BigUint::new(digits) >> pad;
        n.set_bit(self.len as u64, true);
        GoedelNumber(n)
    }
}

pub fn encode_formula(f: &Formula) -> GoedelNumber {
    let mut w = BitWriter::default();
    w.formula(f);
    w.finish()
}

pub fn encode_term(t: &Term) -> GoedelNumber {
    let mut w = BitWriter::default();
    w.term(t);
    w.finish()
}

pub fn encode(x: &Syntax) -> GoedelNumber {
    match x {
        Syntax::Term(t) => encode_term(t),
        Syntax::Formula(f) => encode_formula(f),
    }
}

/// `⌜φ⌝` as a numeral.
pub fn quote(f: &Formula) -> Term {
    encode_formula(f).numeral()
}

struct BitReader<'a> {
    bits: &'a [u8],
    at: usize,
}

impl BitReader<'_> {
    /// Bounds of the next gamma code's value bits.
    fn gamma(&mut self) -> Result<(usize, usize)> {
        let zeros = self.bits[self.at..].iter().take_while(|b| **b == 0).count();
        let start = self.at + zeros;
        let end = start + zeros + 1;
        if end > self.bits.len() {
            return Err(Error::NotACode("truncated".into()));
        }
        self.at = end;
        Ok((start, end))
    }

    fn nat(&mut self) -> Result<BigUint> {
        let (start, end) = self.gamma()?;
        if end - start <= 64 {
            return Ok(BigUint::from(self.word(start, end) - 1));
        }
        let n = BigUint::from_radix_be(&self.bits[start..end], 2).expect("binary digits");
        Ok(n - BigUint::one())
    }

    fn word(&self, start: usize, end: usize) -> u64 {
        self.bits[start..end].iter().fold(0u64, |acc, b| acc << 1 | u64::from(*b))
    }

    fn small(&mut self) -> Result<u32> {
        let (start, end) = self.gamma()?;
        if end - start > 33 {
            return Err(Error::NotACode("tag out of range".into()));
        }
        Ok((self.word(start, end) - 1) as u32)
    }

    fn ident(&mut self) -> Result<Ident> {
        let (start, end) = self.gamma()?;
        if end - start <= 64 {
            return Ok(Ident::nth(self.word(start, end) - 1));
        }
        let n = BigUint::from_radix_be(&self.bits[start..end], 2).expect("binary digits");
        Ok(Ident::from_index(&(n - BigUint::one())))
    }

    fn term_with_tag(&mut self, t: u32) -> Result<Term> {
        Ok(match t {
            tag::VAR => Term::Var(self.ident()?),
            tag::NUM => Term::Num(self.nat()?),
            tag::SUCC => {
                let a = self.term()?;
                if matches!(a, Term::Num(_)) {
                    return Err(Error::NotACode("successor of a numeral is not canonical".into()));
                }
                Term::Succ(Box::new(a))
            }
            tag::ADD => Term::add(self.term()?, self.term()?),
            tag::MUL => Term::mul(self.term()?, self.term()?),
            other => return Err(Error::NotACode(format!("tag {other} is not a term tag"))),
        })
    }

    fn term(&mut self) -> Result<Term> {
        let t = self.small()?;
        self.term_with_tag(t)
    }

    fn formula_with_tag(&mut self, t: u32) -> Result<Formula> {
        use Formula::*;
        let bx = |f: Formula| Box::new(f);
        Ok(match t {
            tag::EQ => Eq(self.term()?, self.term()?),
            tag::LT => Lt(self.term()?, self.term()?),
            tag::TRU => Tru(self.term()?),
            tag::ITRU => ITru(self.ident()?, self.term()?),
            tag::PREC => Prec(self.ident()?, self.ident()?),
            tag::ACK => Ack(self.term()?, self.term()?),
            tag::DIAG => Diag(self.term()?, self.term()?),
            tag::EXP => ExpRel(self.term()?, self.term()?),
            tag::IDX_EQ => IdxEq(self.ident()?, self.ident()?),
            tag::SUB_TRU => SubTru(self.term()?, self.term()?),
            tag::SENT => SentA(self.term()?),
            tag::NOT => Not(bx(self.formula()?)),
            tag::OR => Or(bx(self.formula()?), bx(self.formula()?)),
            tag::AND => And(bx(self.formula()?), bx(self.formula()?)),
            tag::IMP => Imp(bx(self.formula()?), bx(self.formula()?)),
            tag::IFF => Iff(bx(self.formula()?), bx(self.formula()?)),
            tag::EX => ExistsNum(self.ident()?, bx(self.formula()?)),
            tag::EX_IDX => ExistsIdx(self.ident()?, bx(self.formula()?)),
            tag::ALL => ForallNum(self.ident()?, bx(self.formula()?)),
            tag::ALL_IDX => ForallIdx(self.ident()?, bx(self.formula()?)),
            tag::EX_LE => BoundedExists(self.ident()?, self.term()?, bx(self.formula()?)),
            tag::ALL_LE => BoundedForall(self.ident()?, self.term()?, bx(self.formula()?)),
            other => return Err(Error::NotACode(format!("tag {other} is not a formula tag"))),
        })
    }

    fn formula(&mut self) -> Result<Formula> {
        let t = self.small()?;
        self.formula_with_tag(t)
    }
}

fn with_reader<T>(g: &GoedelNumber, read: impl FnOnce(&mut BitReader) -> Result<T>) -> Result<T> {
    if g.0.is_zero() {
        return Err(Error::NotACode("0".into()));
    }
    let len = g.0.bits();
    let words = g.0.to_u64_digits();
    let digits: Vec<u8> = (0..len).rev().map(|i| (words[(i / 64) as usize] >> (i % 64) & 1) as u8).collect();
    let mut r = BitReader { bits: &digits[1..], at: 0 };
    if r.bits.is_empty() {
        return Err(Error::NotACode("empty".into()));
    }
    let out = read(&mut r)?;
    if r.at != r.bits.len() {
        return Err(Error::NotACode("trailing bits".into()));
    }
    Ok(out)
}

/// Inverse of [`encode`].
pub fn decode(g: &GoedelNumber) -> Result<Syntax> {
    with_reader(g, |r| {
        let t = r.small()?;
        if t <= tag::MUL {
            r.term_with_tag(t).map(Syntax::Term)
        } else if t <= tag::LAST {
            r.formula_with_tag(t).map(Syntax::Formula)
        } else {
            Err(Error::NotACode(format!("unknown tag {t}")))
        }
    })
}

pub fn decode_formula(g: &GoedelNumber) -> Result<Formula> {
    match decode(g)? {
        Syntax::Formula(f) => Ok(f),
        Syntax::Term(_) => Err(Error::NotACode("codes a term, not a formula".into())),
    }
}

pub fn decode_term(g: &GoedelNumber) -> Result<Term> {
    match decode(g)? {
        Syntax::Term(t) => Ok(t),
        Syntax::Formula(_) => Err(Error::NotACode("codes a formula, not a term".into())),
    }
}

/// `g` codes a purely arithmetical formula with no free variables.
pub fn is_sentence_a(g: &GoedelNumber) -> bool {
    is_form_an(g, 0)
}

/// `g` codes a purely arithmetical formula with exactly `n` free variables.
pub fn is_form_an(g: &GoedelNumber, n: usize) -> bool {
    match decode_formula(g) {
        Ok(f) => f.is_arithmetical() && free_variables(&f).len() == n,
        Err(_) => false,
    }
}

/// Bit `x` of the binary expansion of `y` is 1.
pub fn ack_bit(x: &BigUint, y: &BigUint) -> bool {
    x.to_u64().is_some_and(|x| y.bit(x))
}

/// Value of a term under `env`.
pub fn eval_term(t: &Term, env: &dyn Fn(&Ident) -> Option<BigUint>) -> Result<BigUint> {
    Ok(match t {
        Term::Var(x) => env(x).ok_or_else(|| Error::OpenTerm(x.to_string()))?,
        Term::Num(n) => n.clone(),
        Term::Succ(a) => eval_term(a, env)? + BigUint::one(),
        Term::Add(a, b) => eval_term(a, env)? + eval_term(b, env)?,
        Term::Mul(a, b) => eval_term(a, env)? * eval_term(b, env)?,
    })
}

/// Standard value `τ°` of a closed term.
pub fn eval_closed_term(t: &Term) -> Result<BigUint> {
    eval_term(t, &|_| None)
}

#[cfg(test)]
#[allow(clippy::unusual_byte_groupings)]
mod tests {
    use super::*;
    use crate::syntax::{numeral, parse};

    #[test]
    fn golden_codes() {
        // tag 1 -> gamma(2) = 010, value 0 -> gamma(1) = 1; prefixed: 1 010 1
        assert_eq!(encode_term(&Term::zero()).value(), &BigUint::from(0b10101u32));
        // tag 5 -> gamma(6) = 00110, then two zeros
        assert_eq!(encode_formula(&parse("(eq z z)").unwrap()).value(), &BigUint::from(0b1_00110_0101_0101u32));
    }

    #[test]
    fn injectivity_instance() {
        let a = encode_formula(&parse("(eq z z)").unwrap());
        let b = encode_formula(&parse("(eq z (s z))").unwrap());
        assert_ne!(a, b);
    }

    #[test]
    fn round_trips() {
        let f = parse("(eq z z)").unwrap();
        assert_eq!(decode_formula(&encode_formula(&f)).unwrap(), f);
        let five = numeral(5u32);
        assert_eq!(decode(&encode_term(&five)).unwrap(), Syntax::Term(five));
        let big = parse("(all-le x (num 123456789012345678901234567890) (ex-i a (itru a (+ (var x) z))))").unwrap();
        assert_eq!(decode_formula(&encode_formula(&big)).unwrap(), big);
    }

    #[test]
    fn non_codes() {
        for n in [0u32, 1, 2, 0b11] {
            assert!(decode(&GoedelNumber::new(BigUint::from(n))).is_err(), "{n}");
        }
        // Succ(Num 0) is not canonical: 1 011 010 1
        assert!(decode(&GoedelNumber::new(BigUint::from(0b1_011_010_1u32))).is_err());
        // trailing bits after a complete term
        assert!(decode(&GoedelNumber::new(BigUint::from(0b1_010_1_1u32))).is_err());
    }

    #[test]
    fn recognizers() {
        let code = |s: &str| encode_formula(&parse(s).unwrap());
        assert!(is_sentence_a(&code("(eq z z)")));
        assert!(!is_sentence_a(&code("(eq (var x) z)")));
        assert!(!is_sentence_a(&code("(tru z)")));
        assert!(is_form_an(&code("(eq (var x) z)"), 1));
        assert!(!is_form_an(&code("(eq (var x) (var y))"), 1));
        assert!(is_form_an(&code("(eq z z)"), 0));
        assert!(!is_sentence_a(&encode_term(&Term::zero())));
    }

    #[test]
    fn ack_bits() {
        let b = |x: u32, y: u32| ack_bit(&BigUint::from(x), &BigUint::from(y));
        assert!(b(0, 1));
        assert!(b(1, 6));
        assert!(!b(0, 6));
        for u in 1..=64u32 {
            let w = (BigUint::one() << u) - BigUint::one();
            assert!(ack_bit(&BigUint::from(u - 1), &w));
            assert!(!ack_bit(&BigUint::from(u), &w));
        }
    }

    #[test]
    fn closed_term_values() {
        assert_eq!(eval_closed_term(&numeral(3u32)).unwrap(), BigUint::from(3u32));
        let t = Term::add(numeral(2u32), Term::mul(numeral(3u32), numeral(4u32)));
        assert_eq!(eval_closed_term(&t).unwrap(), BigUint::from(14u32));
        let x = Term::var(Ident::new("x").unwrap());
        assert_eq!(eval_closed_term(&x), Err(Error::OpenTerm("x".into())));
    }
}

//! Text front end for finite Puiseux sums.
//!
//! ```text
//! series   = ws term { ws ("+"|"-") ws term } ws ;
//! term     = coeff [ "*" mono ] | mono ;
//! mono     = "x" [ "^" exponent ] ;
//! exponent = integer | "(" ws signed-int [ ws "/" ws integer ] ws ")" ;
//! coeff    = rationalOrDecimal | "(" complex ")" ;
//! complex  = rationalOrDecimal [ ("+"|"-") rationalOrDecimal "*" "i" ] ;
//! ```
//!
//! A leading unary minus is accepted on the first term and inside a complex
//! coefficient. Decimal literals are converted exactly.

use num_bigint::BigInt;
use num_complex::Complex;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::numeric::{Domain, ExactComplex, Rational, Scalar};
use crate::puiseux::{AnySeries, PuiseuxSeries};

pub fn parse_series<T: Scalar>(text: &str) -> Result<PuiseuxSeries<T>> {
    let terms = Parser::new(text).series()?;
    Ok(PuiseuxSeries::from_terms(terms.into_iter().map(|(q, c)| {
        (q, Complex::new(T::from_rational(&c.re), T::from_rational(&c.im)))
    })))
}

pub fn parse_any(text: &str, domain: Domain) -> Result<AnySeries> {
    Ok(match domain {
        Domain::Exact => AnySeries::Exact(parse_series(text)?),
        Domain::Approx => AnySeries::Approx(parse_series(text)?),
    })
}

/// Parses `p/q`, `p` or a decimal literal, optionally signed.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let mut p = Parser::new(text);
    p.skip_ws();
    let neg = p.eat(b'-') || {
        p.eat(b'+');
        false
    };
    let value = p.number()?;
    p.skip_ws();
    if !p.at_end() {
        return Err(Error::syntax(p.pos, &["end of input"]));
    }
    Ok(if neg { -value } else { value })
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str) -> Self {
        Self {
            src: text.as_bytes(),
            pos: 0,
        }
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn at_end(&self) -> bool {
        self.pos >= self.src.len()
    }

    fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, b: u8, name: &str) -> Result<()> {
        if self.eat(b) {
            Ok(())
        } else {
            Err(Error::syntax(self.pos, &[name]))
        }
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(b' ' | b'\t' | b'\n' | b'\r')) {
            self.pos += 1;
        }
    }

    fn series(&mut self) -> Result<Vec<(Rational, ExactComplex)>> {
        let mut out = Vec::new();
        self.skip_ws();
        let mut negate = if self.eat(b'-') {
            self.skip_ws();
            true
        } else {
            false
        };
        loop {
            let (q, c) = self.term()?;
            out.push((q, if negate { -c } else { c }));
            self.skip_ws();
            negate = match self.peek() {
                Some(b'+') => false,
                Some(b'-') => true,
                None => break,
                Some(_) => return Err(Error::syntax(self.pos, &["+", "-", "*", "end of input"])),
            };
            self.pos += 1;
            self.skip_ws();
        }
        Ok(out)
    }

    fn term(&mut self) -> Result<(Rational, ExactComplex)> {
        match self.peek() {
            Some(b'x') => Ok((self.mono()?, Complex::one())),
            Some(b'(') | Some(b'0'..=b'9') => {
                let c = self.coeff()?;
                let save = self.pos;
                self.skip_ws();
                if self.eat(b'*') {
                    self.skip_ws();
                    Ok((self.mono()?, c))
                } else {
                    self.pos = save;
                    Ok((Rational::zero(), c))
                }
            }
            _ => Err(Error::syntax(self.pos, &["number", "(", "x"])),
        }
    }

    fn mono(&mut self) -> Result<Rational> {
        self.expect(b'x', "x")?;
        let save = self.pos;
        self.skip_ws();
        if !self.eat(b'^') {
            self.pos = save;
            return Ok(Rational::one());
        }
        self.skip_ws();
        self.exponent()
    }

    fn exponent(&mut self) -> Result<Rational> {
        match self.peek() {
            Some(b'0'..=b'9') => Ok(Rational::from_integer(self.integer()?)),
            Some(b'(') => {
                self.pos += 1;
                self.skip_ws();
                let neg = self.eat(b'-');
                if neg {
                    self.skip_ws();
                }
                let num = self.integer()?;
                self.skip_ws();
                let den = if self.eat(b'/') {
                    self.skip_ws();
                    let den = self.integer()?;
                    if den.is_zero() {
                        return Err(Error::ZeroDenominator);
                    }
                    self.skip_ws();
                    den
                } else {
                    BigInt::one()
                };
                self.expect(b')', ")")?;
                let q = Rational::new(num, den);
                Ok(if neg { -q } else { q })
            }
            _ => Err(Error::syntax(self.pos, &["integer", "("])),
        }
    }

    fn coeff(&mut self) -> Result<ExactComplex> {
        if !self.eat(b'(') {
            return Ok(Complex::new(self.number()?, Rational::zero()));
        }
        self.skip_ws();
        let neg = self.eat(b'-');
        if neg {
            self.skip_ws();
        }
        let mut re = self.number()?;
        if neg {
            re = -re;
        }
        self.skip_ws();
        let mut im = Rational::zero();
        let sign = match self.peek() {
            Some(b'+') => Some(false),
            Some(b'-') => Some(true),
            _ => None,
        };
        if let Some(minus) = sign {
            self.pos += 1;
            self.skip_ws();
            im = self.number()?;
            if minus {
                im = -im;
            }
            self.skip_ws();
            self.expect(b'*', "*")?;
            self.skip_ws();
            self.expect(b'i', "i")?;
            self.skip_ws();
        }
        if !self.eat(b')') {
            let expected: &[&str] = if sign.is_some() { &[")"] } else { &["+", "-", ")"] };
            return Err(Error::syntax(self.pos, expected));
        }
        Ok(Complex::new(re, im))
    }

    fn integer(&mut self) -> Result<BigInt> {
        let start = self.pos;
        while matches!(self.peek(), Some(b'0'..=b'9')) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(Error::syntax(self.pos, &["integer"]));
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(digits.parse().expect("digit run parses"))
    }

    /// `digits [ ws "/" ws digits | "." digits ]`, unsigned.
    fn number(&mut self) -> Result<Rational> {
        if !matches!(self.peek(), Some(b'0'..=b'9')) {
            return Err(Error::syntax(self.pos, &["number"]));
        }
        let whole = self.integer()?;
        if self.eat(b'.') {
            let start = self.pos;
            let frac = self.integer()?;
            let scale = BigInt::from(10u32).pow((self.pos - start) as u32);
            return Ok(Rational::new(whole * &scale + frac, scale));
        }
        let save = self.pos;
        self.skip_ws();
        if self.eat(b'/') {
            self.skip_ws();
            let den = self.integer()?;
            if den.is_zero() {
                return Err(Error::ZeroDenominator);
            }
            return Ok(Rational::new(whole, den));
        }
        self.pos = save;
        Ok(Rational::from_integer(whole))
    }
}

/// Canonical text: ascending exponents, parenthesised non-integer
/// coefficients and fractional or negative exponents.
pub fn format_series<T: Scalar>(f: &PuiseuxSeries<T>) -> String {
    let mut out = String::new();
    for (i, (q, c)) in f.terms().enumerate() {
        let zero = T::zero();
        let negative = c.re < zero || (c.re == zero && c.im < zero);
        let (re, im) = if negative {
            (-c.re.clone(), -c.im.clone())
        } else {
            (c.re.clone(), c.im.clone())
        };
        match (i, negative) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }

        let unit = im == zero && re == T::one();
        let coeff = if im == zero {
            literal(&re)
        } else if im < zero {
            format!("({}-{}*i)", re, -im)
        } else {
            format!("({}+{}*i)", re, im)
        };
        let mono = monomial_text(q);
        match mono {
            None => out.push_str(&coeff),
            Some(m) if unit => out.push_str(&m),
            Some(m) => {
                out.push_str(&coeff);
                out.push('*');
                out.push_str(&m);
            }
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

fn literal<T: Scalar>(v: &T) -> String {
    let s = v.to_string();
    if s.bytes().all(|b| b.is_ascii_digit()) {
        s
    } else {
        format!("({s})")
    }
}

fn monomial_text(q: &Rational) -> Option<String> {
    if q.is_zero() {
        None
    } else if q.is_one() {
        Some("x".to_string())
    } else if q.is_integer() && *q > Rational::zero() {
        Some(format!("x^{q}"))
    } else {
        Some(format!("x^({q})"))
    }
}

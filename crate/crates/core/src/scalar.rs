//! Exact arithmetic in the rational function field Q(q).
//!
//! A [`QScalar`] is a ratio of Laurent polynomials with arbitrary-precision
//! rational coefficients, always kept in a canonical form so that structural
//! equality coincides with field equality.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num::{BigInt, BigRational, One, Signed, Zero};

use crate::error::{Error, Result};

/// Laurent polynomial `sum c[k] q^(low + k)`, dense, trimmed on both ends.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Laurent {
    low: i32,
    coeffs: Vec<BigRational>,
}

impl Laurent {
    pub fn zero() -> Self {
        Laurent { low: 0, coeffs: Vec::new() }
    }

    pub fn constant(c: BigRational) -> Self {
        Self::from_parts(0, vec![c])
    }

    pub fn monomial(c: BigRational, exp: i32) -> Self {
        Self::from_parts(exp, vec![c])
    }

    pub fn from_parts(low: i32, coeffs: Vec<BigRational>) -> Self {
        let mut p = Laurent { low, coeffs };
        p.trim();
        p
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
        let lead_zeros = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead_zeros > 0 {
            self.coeffs.drain(..lead_zeros);
            self.low += lead_zeros as i32;
        }
        if self.coeffs.is_empty() {
            self.low = 0;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn low(&self) -> i32 {
        self.low
    }

    /// Highest exponent; meaningless for zero.
    pub fn high(&self) -> i32 {
        self.low + self.coeffs.len() as i32 - 1
    }

    pub fn coeff(&self, exp: i32) -> BigRational {
        let k = exp - self.low;
        if k < 0 || k as usize >= self.coeffs.len() {
            BigRational::zero()
        } else {
            self.coeffs[k as usize].clone()
        }
    }

    pub fn lead(&self) -> &BigRational {
        self.coeffs.last().expect("lead of zero polynomial")
    }

    /// Nonzero `(exponent, coefficient)` pairs in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i32, &BigRational)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(k, c)| (self.low + k as i32, c))
    }

    pub fn shift(&self, by: i32) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        Laurent { low: self.low + by, coeffs: self.coeffs.clone() }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Laurent { low: self.low, coeffs: self.coeffs.iter().map(|x| x * c).collect() }
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let low = self.low.min(other.low);
        let high = self.high().max(other.high());
        let mut coeffs = vec![BigRational::zero(); (high - low + 1) as usize];
        for (k, c) in self.coeffs.iter().enumerate() {
            coeffs[(self.low - low) as usize + k] += c;
        }
        for (k, c) in other.coeffs.iter().enumerate() {
            coeffs[(other.low - low) as usize + k] += c;
        }
        Self::from_parts(low, coeffs)
    }

    pub fn neg(&self) -> Self {
        Laurent { low: self.low, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigRational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    coeffs[i + j] += a * b;
                }
            }
        }
        Self::from_parts(self.low + other.low, coeffs)
    }

    /// Polynomial division with remainder, treating both as ordinary
    /// polynomials after dropping their `low` offsets.
    fn divrem_poly(num: &[BigRational], den: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
        let mut rem = num.to_vec();
        if num.len() < den.len() {
            return (Vec::new(), rem);
        }
        let dl = den.len();
        let lead = den[dl - 1].clone();
        let mut quot = vec![BigRational::zero(); num.len() - dl + 1];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dl - 1] / &lead;
            if !c.is_zero() {
                for (j, d) in den.iter().enumerate() {
                    rem[k + j] -= &c * d;
                }
            }
            quot[k] = c;
        }
        rem.truncate(dl - 1);
        while rem.last().is_some_and(|c| c.is_zero()) {
            rem.pop();
        }
        (quot, rem)
    }

    /// Gcd via the primitive pseudo-remainder sequence over the integers,
    /// returned monic.
    fn poly_gcd(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
        let mut x = primitive_part(a);
        let mut y = primitive_part(b);
        if x.len() < y.len() {
            std::mem::swap(&mut x, &mut y);
        }
        while !y.is_empty() {
            let r = pseudo_rem(&x, &y);
            x = y;
            y = primitive_part_int(r);
        }
        let Some(l) = x.last().cloned() else { return Vec::new() };
        x.into_iter().map(|c| BigRational::new(c, l.clone())).collect()
    }

    /// Value at a rational point.
    pub fn eval(&self, at: &BigRational) -> Result<BigRational> {
        if self.is_zero() {
            return Ok(BigRational::zero());
        }
        if at.is_zero() && self.low < 0 {
            return Err(Error::Pole);
        }
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * at + c;
        }
        Ok(acc * rat_pow(at, self.low))
    }

    /// Formatted as a sum of terms from highest to lowest exponent.
    fn write_terms(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for k in (0..self.coeffs.len()).rev() {
            let c = &self.coeffs[k];
            if c.is_zero() {
                continue;
            }
            let e = self.low + k as i32;
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let q = match e {
                0 => String::new(),
                1 => "q".to_string(),
                _ => format!("q^{e}"),
            };
            if q.is_empty() {
                write!(f, "{}", fmt_rat(&abs))?;
            } else if abs.is_one() {
                write!(f, "{q}")?;
            } else {
                write!(f, "{}*{q}", fmt_rat(&abs))?;
            }
        }
        Ok(())
    }

    fn term_count(&self) -> usize {
        self.coeffs.iter().filter(|c| !c.is_zero()).count()
    }
}

fn fmt_rat(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn rat_pow(x: &BigRational, e: i32) -> BigRational {
    let mut acc = BigRational::one();
    for _ in 0..e.unsigned_abs() {
        acc *= x;
    }
    if e < 0 {
        acc.recip()
    } else {
        acc
    }
}

fn primitive_part(p: &[BigRational]) -> Vec<BigInt> {
    let mut l = BigInt::one();
    for c in p {
        l = big_lcm(&l, c.denom());
    }
    primitive_part_int(p.iter().map(|c| c.numer() * (&l / c.denom())).collect())
}

fn primitive_part_int(mut p: Vec<BigInt>) -> Vec<BigInt> {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    let g = p.iter().fold(BigInt::zero(), |g, c| big_gcd(&g, c));
    if !g.is_zero() && !g.is_one() {
        for c in p.iter_mut() {
            *c /= &g;
        }
    }
    p
}

/// Pseudo-remainder of `a` by `b` (`deg b <= deg a`, `b` nonzero).
fn pseudo_rem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let lb = &b[db];
    while r.len() > db && !r.is_empty() {
        let lr = r.last().cloned().expect("nonempty");
        let shift = r.len() - 1 - db;
        for c in r.iter_mut() {
            *c *= lb;
        }
        for (j, c) in b.iter().enumerate() {
            r[shift + j] -= &lr * c;
        }
        while r.last().is_some_and(|c| c.is_zero()) {
            r.pop();
        }
    }
    r
}

fn big_lcm(a: &BigInt, b: &BigInt) -> BigInt {
    use num::Integer;
    a.lcm(b)
}

fn big_gcd(a: &BigInt, b: &BigInt) -> BigInt {
    use num::Integer;
    a.gcd(b)
}

/// Element of Q(q) in canonical form.
///
/// The denominator is an ordinary polynomial with nonzero constant term,
/// integer coefficients of content 1 and positive leading coefficient, coprime
/// to the numerator. Zero is `0 / 1`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct QScalar {
    num: Laurent,
    den: Laurent,
}

impl Default for QScalar {
    fn default() -> Self {
        Self::zero()
    }
}

impl QScalar {
    pub fn zero() -> Self {
        QScalar { num: Laurent::zero(), den: Laurent::constant(BigRational::one()) }
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(BigRational::from_integer(n.into()))
    }

    pub fn from_rational(r: BigRational) -> Self {
        QScalar { num: Laurent::constant(r), den: Laurent::constant(BigRational::one()) }
    }

    /// `q^e`.
    pub fn q_pow(e: i32) -> Self {
        Self::from_laurent(Laurent::monomial(BigRational::one(), e))
    }

    pub fn q() -> Self {
        Self::q_pow(1)
    }

    pub fn from_laurent(p: Laurent) -> Self {
        QScalar { num: p, den: Laurent::constant(BigRational::one()) }
    }

    /// Builds `num / den` and brings it to canonical form.
    pub fn from_fraction(num: Laurent, den: Laurent) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalize(num, den))
    }

    fn normalize(num: Laurent, den: Laurent) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let num = num.shift(-den.low);
        let mut den = den.shift(-den.low);
        let mut num = num;
        if den.coeffs.len() > 1 {
            let g = Laurent::poly_gcd(&num.coeffs, &den.coeffs);
            if g.len() > 1 {
                let (qn, rn) = Laurent::divrem_poly(&num.coeffs, &g);
                let (qd, rd) = Laurent::divrem_poly(&den.coeffs, &g);
                debug_assert!(rn.is_empty() && rd.is_empty());
                num = Laurent::from_parts(num.low, qn);
                den = Laurent::from_parts(0, qd);
            }
        }
        // Scale the denominator to a primitive integer polynomial with positive lead.
        let mut l = BigInt::one();
        for c in &den.coeffs {
            l = big_lcm(&l, c.denom());
        }
        let mut g = BigInt::zero();
        for c in &den.coeffs {
            let v = c.numer() * (&l / c.denom());
            g = big_gcd(&g, &v);
        }
        let mut factor = BigRational::new(l, g);
        if den.lead().is_negative() {
            factor = -factor;
        }
        if !factor.is_one() {
            den = den.scale(&factor);
            num = num.scale(&factor);
        }
        QScalar { num, den }
    }

    /// Sum of many terms, normalizing once per distinct denominator class.
    pub fn sum<'a>(terms: impl IntoIterator<Item = &'a QScalar>) -> QScalar {
        let mut groups: Vec<(Laurent, Laurent)> = Vec::new();
        for t in terms {
            if t.is_zero() {
                continue;
            }
            match groups.iter_mut().find(|(d, _)| *d == t.den) {
                Some((_, n)) => *n = n.add(&t.num),
                None => groups.push((t.den.clone(), t.num.clone())),
            }
        }
        match groups.len() {
            0 => QScalar::zero(),
            1 => {
                let (d, n) = groups.pop().expect("one group");
                if d.coeffs.len() == 1 {
                    QScalar::from_laurent(n)
                } else {
                    QScalar::normalize(n, d)
                }
            }
            _ => {
                let mut lcm = groups[0].0.clone();
                for (d, _) in &groups[1..] {
                    let g = Laurent::poly_gcd(&lcm.coeffs, &d.coeffs);
                    let (cof, _) = Laurent::divrem_poly(&d.coeffs, &g);
                    lcm = lcm.mul(&Laurent::from_parts(0, cof));
                }
                let mut num = Laurent::zero();
                for (d, n) in &groups {
                    let (cof, _) = Laurent::divrem_poly(&lcm.coeffs, &d.coeffs);
                    num = num.add(&n.mul(&Laurent::from_parts(0, cof)));
                }
                QScalar::normalize(num, lcm)
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.den_is_one() && self.num.low == 0 && self.num.coeffs.len() == 1 && self.num.coeffs[0].is_one()
    }

    fn is_monomial(&self) -> bool {
        self.den_is_one() && self.num.coeffs.len() == 1
    }

    fn den_is_one(&self) -> bool {
        self.den.coeffs.len() == 1
    }

    /// True if the value is a Laurent polynomial.
    pub fn is_laurent(&self) -> bool {
        self.den_is_one()
    }

    pub fn numerator(&self) -> &Laurent {
        &self.num
    }

    pub fn denominator(&self) -> &Laurent {
        &self.den
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalize(self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        Ok(self * &other.inv()?)
    }

    pub fn pow(&self, e: i32) -> Result<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut acc = Self::one();
        for _ in 0..e.unsigned_abs() {
            acc = &acc * &base;
        }
        Ok(acc)
    }

    pub fn eval(&self, at: &BigRational) -> Result<BigRational> {
        let d = self.den.eval(at)?;
        if d.is_zero() {
            return Err(Error::Pole);
        }
        Ok(self.num.eval(at)? / d)
    }

    /// Value at `q = 1`.
    pub fn at_one(&self) -> Result<BigRational> {
        self.eval(&BigRational::one())
    }

    /// `q -> q^-1`.
    pub fn bar(&self) -> Self {
        let flip = |p: &Laurent| {
            if p.is_zero() {
                return p.clone();
            }
            let mut c = p.coeffs.clone();
            c.reverse();
            Laurent::from_parts(-p.high(), c)
        };
        Self::normalize(flip(&self.num), flip(&self.den))
    }

    /// If the value is a rational constant, returns it.
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.is_zero() {
            return Some(BigRational::zero());
        }
        if self.den_is_one() && self.num.low == 0 && self.num.coeffs.len() == 1 {
            Some(self.num.coeffs[0].clone())
        } else {
            None
        }
    }

    /// If the value is `c q^e`, returns `(c, e)`.
    pub fn as_monomial(&self) -> Option<(BigRational, i32)> {
        if self.den_is_one() && self.num.term_count() == 1 {
            Some((self.num.lead().clone(), self.num.high()))
        } else {
            None
        }
    }

    /// Human-friendly rendering that recognises `±q^k [n]_{q^d}`; falls back to
    /// the canonical string.
    pub fn pretty(&self) -> String {
        if self.as_monomial().is_none() {
            for d in 1..=3u32 {
                for n in 2..=8u32 {
                    let qn = q_int(n, d);
                    if let Ok(ratio) = self.checked_div(&qn) {
                        if let Some((c, e)) = ratio.as_monomial() {
                            if c.abs().is_one() {
                                let sign = if c.is_negative() { "-" } else { "" };
                                let bracket =
                                    if d == 1 { format!("[{n}]_q") } else { format!("[{n}]_{{q^{d}}}") };
                                return match e {
                                    0 => format!("{sign}{bracket}"),
                                    1 => format!("{sign}q*{bracket}"),
                                    _ => format!("{sign}q^{e}*{bracket}"),
                                };
                            }
                        }
                    }
                }
            }
        }
        self.to_string()
    }
}

impl fmt::Display for QScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den_is_one() {
            if self.num.term_count() > 1 {
                write!(f, "(")?;
                self.num.write_terms(f)?;
                write!(f, ")")
            } else {
                self.num.write_terms(f)
            }
        } else {
            if self.num.term_count() > 1 {
                write!(f, "(")?;
                self.num.write_terms(f)?;
                write!(f, ")")?;
            } else {
                self.num.write_terms(f)?;
            }
            write!(f, "/(")?;
            self.den.write_terms(f)?;
            write!(f, ")")
        }
    }
}

impl PartialOrd for QScalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Arbitrary but total order, used only for deterministic sorting.
impl Ord for QScalar {
    fn cmp(&self, other: &Self) -> Ordering {
        self.to_string().cmp(&other.to_string())
    }
}

impl<'a> Add<&'a QScalar> for &'a QScalar {
    type Output = QScalar;
    fn add(self, rhs: &QScalar) -> QScalar {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den_is_one() && rhs.den_is_one() {
            return QScalar::from_laurent(self.num.add(&rhs.num));
        }
        if self.den == rhs.den {
            return QScalar::normalize(self.num.add(&rhs.num), self.den.clone());
        }
        QScalar::normalize(
            self.num.mul(&rhs.den).add(&rhs.num.mul(&self.den)),
            self.den.mul(&rhs.den),
        )
    }
}

impl<'a> Sub<&'a QScalar> for &'a QScalar {
    type Output = QScalar;
    fn sub(self, rhs: &QScalar) -> QScalar {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a QScalar> for &'a QScalar {
    type Output = QScalar;
    fn mul(self, rhs: &QScalar) -> QScalar {
        if self.is_zero() || rhs.is_zero() {
            return QScalar::zero();
        }
        if self.den_is_one() && rhs.den_is_one() {
            return QScalar::from_laurent(self.num.mul(&rhs.num));
        }
        if self.is_monomial() {
            return QScalar { num: rhs.num.mul(&self.num), den: rhs.den.clone() };
        }
        if rhs.is_monomial() {
            return QScalar { num: self.num.mul(&rhs.num), den: self.den.clone() };
        }
        QScalar::normalize(self.num.mul(&rhs.num), self.den.mul(&rhs.den))
    }
}

impl<'a> Div<&'a QScalar> for &'a QScalar {
    type Output = QScalar;
    /// Panics on division by zero; use [`QScalar::checked_div`] to handle it.
    fn div(self, rhs: &QScalar) -> QScalar {
        self.checked_div(rhs).expect("division by zero in Q(q)")
    }
}

impl Neg for &QScalar {
    type Output = QScalar;
    fn neg(self) -> QScalar {
        QScalar { num: self.num.neg(), den: self.den.clone() }
    }
}

impl Neg for QScalar {
    type Output = QScalar;
    fn neg(self) -> QScalar {
        -&self
    }
}

macro_rules! by_value {
    ($tr:ident, $m:ident) => {
        impl $tr<QScalar> for QScalar {
            type Output = QScalar;
            fn $m(self, rhs: QScalar) -> QScalar {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&QScalar> for QScalar {
            type Output = QScalar;
            fn $m(self, rhs: &QScalar) -> QScalar {
                (&self).$m(rhs)
            }
        }
    };
}
by_value!(Add, add);
by_value!(Sub, sub);
by_value!(Mul, mul);
by_value!(Div, div);

impl AddAssign<&QScalar> for QScalar {
    fn add_assign(&mut self, rhs: &QScalar) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&QScalar> for QScalar {
    fn sub_assign(&mut self, rhs: &QScalar) {
        *self = &*self - rhs;
    }
}

impl MulAssign<&QScalar> for QScalar {
    fn mul_assign(&mut self, rhs: &QScalar) {
        *self = &*self * rhs;
    }
}

/// `[n]_{q^d} = (q^{dn} - q^{-dn}) / (q^d - q^{-d})`.
pub fn q_int(n: u32, d: u32) -> QScalar {
    let n = n as i32;
    let d = d as i32;
    let coeffs = (0..n).map(|k| (k, BigRational::one()));
    let mut p = Laurent::zero();
    for (k, c) in coeffs {
        p = p.add(&Laurent::monomial(c, d * (n - 1 - 2 * k)));
    }
    QScalar::from_laurent(p)
}

/// `[n]_{q^d}!`.
pub fn q_factorial(n: u32, d: u32) -> QScalar {
    (1..=n).fold(QScalar::one(), |acc, k| &acc * &q_int(k, d))
}

/// Gaussian binomial `[n choose k]_{q^d}`.
pub fn q_binomial(n: u32, k: u32, d: u32) -> QScalar {
    if k > n {
        return QScalar::zero();
    }
    &q_factorial(n, d) / &(&q_factorial(k, d) * &q_factorial(n - k, d))
}

// Parsing: a small recursive-descent evaluator over + - * / ^ ( ) integers q.

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err(&self, msg: &str) -> Error {
        Error::Parse(format!("{msg} at byte {} in {:?}", self.pos, String::from_utf8_lossy(self.s)))
    }

    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<QScalar> {
        let mut acc = if self.peek() == Some(b'-') {
            self.pos += 1;
            -self.term()?
        } else {
            if self.peek() == Some(b'+') {
                self.pos += 1;
            }
            self.term()?
        };
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<QScalar> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = &acc * &self.factor()?;
                }
                Some(b'/') => {
                    self.pos += 1;
                    let d = self.factor()?;
                    acc = acc.checked_div(&d)?;
                }
                Some(b'(') | Some(b'q') => {
                    acc = &acc * &self.factor()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<QScalar> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let neg = if self.peek() == Some(b'-') {
                self.pos += 1;
                true
            } else {
                false
            };
            let e = self.integer()?;
            let e: i32 = e.try_into().map_err(|_| self.err("exponent too large"))?;
            return base.pow(if neg { -e } else { e });
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<QScalar> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(v)
            }
            Some(b'q') => {
                self.pos += 1;
                Ok(QScalar::q())
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer_big()?;
                Ok(QScalar::from_rational(BigRational::from_integer(n)))
            }
            _ => Err(self.err("unexpected token")),
        }
    }

    fn integer_big(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected integer"));
        }
        let txt = std::str::from_utf8(&self.s[start..self.pos]).expect("ascii digits");
        txt.parse::<BigInt>().map_err(|_| self.err("bad integer"))
    }

    fn integer(&mut self) -> Result<i64> {
        let n = self.integer_big()?;
        i64::try_from(n).map_err(|_| self.err("integer too large"))
    }
}

impl FromStr for QScalar {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let mut p = Parser { s: s.as_bytes(), pos: 0 };
        let v = p.expr()?;
        p.skip_ws();
        if p.pos != p.s.len() {
            return Err(p.err("trailing input"));
        }
        Ok(v)
    }
}

impl serde::Serialize for QScalar {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> serde::Deserialize<'de> for QScalar {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(x: &str) -> QScalar {
        x.parse().unwrap()
    }

    #[test]
    fn cancellation_and_factorization() {
        assert_eq!(&s("q - q^-1") + &s("q^-1"), QScalar::q());
        assert_eq!(s("(q^2 - 1)/(q - 1)"), s("q + 1"));
        assert_eq!(&s("q + q^-1") * &s("q - q^-1"), s("q^2 - q^-2"));
    }

    #[test]
    fn q_integers() {
        assert!(q_int(1, 1).is_one());
        assert_eq!(q_int(2, 1), s("q + q^-1"));
        assert_eq!(q_int(3, 1), s("q^2 + 1 + q^-2"));
        assert_eq!(q_int(0, 1), QScalar::zero());
        assert_eq!(q_int(2, 3), s("q^3 + q^-3"));
    }

    #[test]
    fn evaluation() {
        let one = BigRational::one();
        assert_eq!(s("q + q^-1").eval(&one).unwrap(), BigRational::from_integer(2.into()));
        assert_eq!(q_int(3, 1).eval(&one).unwrap(), BigRational::from_integer(3.into()));
        let two = BigRational::from_integer(2.into());
        assert_eq!(s("(q^4 - 1)/(q - 1)").eval(&two).unwrap(), BigRational::from_integer(15.into()));
        assert!(matches!(s("1/(q - 1)").eval(&one), Err(Error::Pole)));
    }

    #[test]
    fn division_by_zero_is_an_error() {
        assert!(matches!(QScalar::one().checked_div(&QScalar::zero()), Err(Error::DivisionByZero)));
    }

    #[test]
    fn canonical_denominator() {
        let x = s("(2*q^3 + 2*q)/(4*q^2 - 4)");
        assert_eq!(x.to_string(), "(1/2*q^3 + 1/2*q)/(q^2 - 1)");
        let y = s("1/(-q^-1 + 3)");
        assert_eq!(y.to_string(), "q/(3*q - 1)");
        assert_eq!(s(&y.to_string()), y);
    }

    #[test]
    fn printing_round_trips() {
        for txt in ["(q^3 - q^-1)", "(q^3 + q^2 + q + 1)", "-q^-2", "7/3", "0", "(q + 1)/(q^2 + 1)"] {
            let v = s(txt);
            assert_eq!(s(&v.to_string()), v, "{txt}");
        }
        assert_eq!(s("(q^4 - 1)/(q - 1)").to_string(), "(q^3 + q^2 + q + 1)");
        assert_eq!(s("(q^3 - q^-1)").to_string(), "(q^3 - q^-1)");
    }

    #[test]
    fn pretty_recognises_q_numbers() {
        assert_eq!(q_int(2, 1).pretty(), "[2]_q");
        assert_eq!((-q_int(3, 1)).pretty(), "-[3]_q");
        assert_eq!((&QScalar::q_pow(4) * &q_int(2, 1)).pretty(), "q^4*[2]_q");
        assert_eq!(QScalar::one().pretty(), "1");
    }

    #[test]
    fn binomials() {
        assert_eq!(q_binomial(2, 1, 1), q_int(2, 1));
        assert_eq!(q_binomial(4, 2, 1), s("q^4 + q^2 + 2 + q^-2 + q^-4"));
    }
}

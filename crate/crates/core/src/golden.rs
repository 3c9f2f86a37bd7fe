//! Exact arithmetic in `Z[τ]` and `Q(τ)`, `τ = (1+√5)/2`.
//!
//! Every coordinate handled by the crate is one of these two types. All
//! predicates (sign, comparison, unit test) are decided with integer
//! arithmetic only.

use std::cmp::Ordering;
use std::fmt;
use std::hash::Hash;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;
use crate::int::Int;

pub const TAU_F64: f64 = 1.618_033_988_749_895;
pub const TAU_CONJ_F64: f64 = -0.618_033_988_749_894_9;

/// An element `a + bτ` of the ring of integers `Z[τ]`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct GoldenInt {
    pub a: Int,
    pub b: Int,
}

impl GoldenInt {
    pub fn new(a: impl Into<Int>, b: impl Into<Int>) -> Self {
        GoldenInt { a: a.into(), b: b.into() }
    }

    pub fn zero() -> Self {
        GoldenInt::new(0, 0)
    }

    pub fn one() -> Self {
        GoldenInt::new(1, 0)
    }

    pub fn tau() -> Self {
        GoldenInt::new(0, 1)
    }

    /// `τ' = 1 - τ = -1/τ`.
    pub fn tau_conj() -> Self {
        GoldenInt::new(1, -1)
    }

    pub fn from_int(n: impl Into<Int>) -> Self {
        GoldenInt::new(n, 0)
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.a.is_one() && self.b.is_zero()
    }

    /// Galois conjugation `√5 ↦ -√5`: `a + bτ ↦ (a+b) - bτ`.
    pub fn conjugate(&self) -> Self {
        GoldenInt { a: &self.a + &self.b, b: -&self.b }
    }

    /// Field norm `x·x' = a² + ab - b²`.
    pub fn norm(&self) -> Int {
        &(&(&self.a * &self.a) + &(&self.a * &self.b)) - &(&self.b * &self.b)
    }

    /// Field trace `x + x' = 2a + b`.
    pub fn trace(&self) -> Int {
        &(&self.a + &self.a) + &self.b
    }

    pub fn is_unit(&self) -> bool {
        let n = self.norm();
        n.is_one() || (-&n).is_one()
    }

    /// Exact sign of the real number `a + bτ`.
    ///
    /// With `u = 2a + b` and `v = b` the value is `(u + v√5)/2`; mixed signs
    /// are resolved by comparing `u²` against `5v²`.
    pub fn sign(&self) -> i32 {
        let u = &(&self.a + &self.a) + &self.b;
        let v = &self.b;
        let (su, sv) = (u.signum(), v.signum());
        if su >= 0 && sv >= 0 {
            return if su == 0 && sv == 0 { 0 } else { 1 };
        }
        if su <= 0 && sv <= 0 {
            return -1;
        }
        let u2 = &u * &u;
        let v2 = &(v * v) * &Int::from(5);
        let c = match u2.cmp(&v2) {
            Ordering::Greater => 1,
            Ordering::Less => -1,
            Ordering::Equal => 0,
        };
        if su > 0 {
            c
        } else {
            -c
        }
    }

    /// Floating approximation with small relative error, also for values
    /// close to zero whose conjugate is large.
    pub fn to_f64(&self) -> f64 {
        let (af, bf) = (self.a.to_f64(), self.b.to_f64());
        let p = af + bf * TAU_F64;
        let q = af + bf * TAU_CONJ_F64;
        if p.abs() < q.abs() {
            self.norm().to_f64() / q
        } else {
            p
        }
    }

    /// `x / d` if the quotient lies in `Z[τ]`.
    pub fn div_exact(&self, d: &GoldenInt) -> Option<GoldenInt> {
        let n = d.norm();
        if n.is_zero() {
            return None;
        }
        let p = self * &d.conjugate();
        if n.divides(&p.a) && n.divides(&p.b) {
            Some(GoldenInt { a: p.a.div_exact(&n), b: p.b.div_exact(&n) })
        } else {
            None
        }
    }

    pub fn divides(&self, x: &GoldenInt) -> bool {
        if self.is_zero() {
            return x.is_zero();
        }
        x.div_exact(self).is_some()
    }

    /// Euclidean division with the quotient rounded coordinatewise;
    /// `|N(r)| < |N(d)|` holds since `Z[τ]` is norm-Euclidean.
    pub fn div_rem(&self, d: &GoldenInt) -> (GoldenInt, GoldenInt) {
        let n = d.norm();
        let p = self * &d.conjugate();
        let q = GoldenInt { a: p.a.div_round(&n), b: p.b.div_round(&n) };
        let r = self - &(&q * d);
        (q, r)
    }

    /// A greatest common divisor, defined up to a unit.
    pub fn gcd(&self, other: &GoldenInt) -> GoldenInt {
        let (mut x, mut y) = (self.clone(), other.clone());
        while !y.is_zero() {
            let (_, r) = x.div_rem(&y);
            x = y;
            y = r;
        }
        x
    }

    /// `τ^k` for any integer `k` (negative powers stay in `Z[τ]`).
    pub fn tau_pow(k: i64) -> GoldenInt {
        let base = if k >= 0 { GoldenInt::tau() } else { GoldenInt::new(-1, 1) };
        let mut acc = GoldenInt::one();
        for _ in 0..k.unsigned_abs() {
            acc = &acc * &base;
        }
        acc
    }

    /// Writes a unit as `±τ^s`. Returns `None` for non-units.
    pub fn unit_exponent(&self) -> Option<(i32, i64)> {
        if !self.is_unit() {
            return None;
        }
        let sgn = self.sign();
        let mut y = if sgn < 0 { -self } else { self.clone() };
        let one = GoldenInt::one();
        let tau = GoldenInt::tau();
        let tau_inv = GoldenInt::new(-1, 1);
        let mut s = 0i64;
        loop {
            match (&y - &one).sign() {
                0 => return Some((sgn, s)),
                1 => {
                    y = &y * &tau_inv;
                    s += 1;
                }
                _ => {
                    y = &y * &tau;
                    s -= 1;
                }
            }
        }
    }

    pub fn residue_mod2(&self) -> Residue {
        Residue::new(!self.a.is_even(), !self.b.is_even())
    }

    pub fn scale(&self, k: &Int) -> GoldenInt {
        GoldenInt { a: &self.a * k, b: &self.b * k }
    }

    /// Gcd of the two integer coordinates (the rational content).
    pub fn int_content(&self) -> Int {
        self.a.gcd(&self.b)
    }
}

macro_rules! forward_binop {
    ($ty:ident, $tr:ident, $method:ident) => {
        impl $tr<$ty> for $ty {
            type Output = $ty;
            fn $method(self, rhs: $ty) -> $ty {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $tr<&'a $ty> for $ty {
            type Output = $ty;
            fn $method(self, rhs: &'a $ty) -> $ty {
                (&self).$method(rhs)
            }
        }
        impl<'a> $tr<$ty> for &'a $ty {
            type Output = $ty;
            fn $method(self, rhs: $ty) -> $ty {
                self.$method(&rhs)
            }
        }
    };
}

impl<'a> Add<&'a GoldenInt> for &'a GoldenInt {
    type Output = GoldenInt;
    fn add(self, rhs: &'a GoldenInt) -> GoldenInt {
        GoldenInt { a: &self.a + &rhs.a, b: &self.b + &rhs.b }
    }
}

impl<'a> Sub<&'a GoldenInt> for &'a GoldenInt {
    type Output = GoldenInt;
    fn sub(self, rhs: &'a GoldenInt) -> GoldenInt {
        GoldenInt { a: &self.a - &rhs.a, b: &self.b - &rhs.b }
    }
}

/// `(a+bτ)(c+dτ) = (ac+bd) + (ad+bc+bd)τ`.
impl<'a> Mul<&'a GoldenInt> for &'a GoldenInt {
    type Output = GoldenInt;
    fn mul(self, rhs: &'a GoldenInt) -> GoldenInt {
        let bd = &self.b * &rhs.b;
        GoldenInt {
            a: &(&self.a * &rhs.a) + &bd,
            b: &(&(&self.a * &rhs.b) + &(&self.b * &rhs.a)) + &bd,
        }
    }
}

forward_binop!(GoldenInt, Add, add);
forward_binop!(GoldenInt, Sub, sub);
forward_binop!(GoldenInt, Mul, mul);

impl Neg for &GoldenInt {
    type Output = GoldenInt;
    fn neg(self) -> GoldenInt {
        GoldenInt { a: -&self.a, b: -&self.b }
    }
}

impl Neg for GoldenInt {
    type Output = GoldenInt;
    fn neg(self) -> GoldenInt {
        -&self
    }
}

impl PartialOrd for GoldenInt {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Numeric order on the real line.
impl Ord for GoldenInt {
    fn cmp(&self, other: &Self) -> Ordering {
        (self - other).sign().cmp(&0)
    }
}

fn write_golden(f: &mut fmt::Formatter<'_>, a: &Int, b: &Int) -> fmt::Result {
    if b.is_zero() {
        return write!(f, "{a}");
    }
    let bpart = if b.is_one() {
        "τ".to_string()
    } else if (-b).is_one() {
        "-τ".to_string()
    } else {
        format!("{b}τ")
    };
    if a.is_zero() {
        write!(f, "{bpart}")
    } else if b.is_negative() {
        write!(f, "{a}{bpart}")
    } else {
        write!(f, "{a}+{bpart}")
    }
}

impl fmt::Display for GoldenInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_golden(f, &self.a, &self.b)
    }
}

impl fmt::Debug for GoldenInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for GoldenInt {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        (&self.a, &self.b).serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for GoldenInt {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let (a, b) = <(Int, Int)>::deserialize(deserializer)?;
        Ok(GoldenInt { a, b })
    }
}

/// Residue class of `Z[τ]` modulo `2Z[τ]`, one of `{0, 1, τ, 1+τ}`.
///
/// `X² - X - 1` is irreducible over `F₂`, so this is the field with four elements.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Residue {
    pub a: bool,
    pub b: bool,
}

impl Residue {
    pub const ZERO: Residue = Residue { a: false, b: false };
    pub const ONE: Residue = Residue { a: true, b: false };
    pub const TAU: Residue = Residue { a: false, b: true };
    pub const TAU2: Residue = Residue { a: true, b: true };

    pub fn new(a: bool, b: bool) -> Self {
        Residue { a, b }
    }

    pub fn all() -> [Residue; 4] {
        [Residue::ZERO, Residue::ONE, Residue::TAU, Residue::TAU2]
    }

    pub fn is_zero(self) -> bool {
        !self.a && !self.b
    }

    pub fn add(self, o: Residue) -> Residue {
        Residue::new(self.a ^ o.a, self.b ^ o.b)
    }

    pub fn mul(self, o: Residue) -> Residue {
        let bd = self.b & o.b;
        Residue::new((self.a & o.a) ^ bd, (self.a & o.b) ^ (self.b & o.a) ^ bd)
    }

    pub fn lift(self) -> GoldenInt {
        GoldenInt::new(self.a as i64, self.b as i64)
    }
}

/// An element of `Q(τ)`, stored as `num / den` in lowest terms with `den > 0`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GoldenRat {
    num: GoldenInt,
    den: Int,
}

impl Default for GoldenRat {
    fn default() -> Self {
        GoldenRat::zero()
    }
}

impl GoldenRat {
    /// Panics if `den` is zero.
    pub fn new(num: GoldenInt, den: impl Into<Int>) -> Self {
        let den = den.into();
        assert!(!den.is_zero(), "zero denominator");
        let mut r = GoldenRat { num, den };
        r.reduce();
        r
    }

    fn reduce(&mut self) {
        if self.den.is_negative() {
            self.num = -&self.num;
            self.den = -&self.den;
        }
        if self.den.is_one() {
            return;
        }
        if self.num.is_zero() {
            self.den = Int::ONE;
            return;
        }
        let g = self.num.a.gcd(&self.num.b).gcd(&self.den);
        if !g.is_one() {
            self.num = GoldenInt { a: self.num.a.div_exact(&g), b: self.num.b.div_exact(&g) };
            self.den = self.den.div_exact(&g);
        }
    }

    pub fn zero() -> Self {
        GoldenRat { num: GoldenInt::zero(), den: Int::ONE }
    }

    pub fn one() -> Self {
        GoldenRat { num: GoldenInt::one(), den: Int::ONE }
    }

    pub fn tau() -> Self {
        GoldenInt::tau().into()
    }

    pub fn tau_conj() -> Self {
        GoldenInt::tau_conj().into()
    }

    pub fn from_int(n: impl Into<Int>) -> Self {
        GoldenRat { num: GoldenInt::from_int(n), den: Int::ONE }
    }

    pub fn ratio(p: impl Into<Int>, q: impl Into<Int>) -> Self {
        GoldenRat::new(GoldenInt::from_int(p), q)
    }

    /// `(a + bτ) / den`.
    pub fn from_parts(a: impl Into<Int>, b: impl Into<Int>, den: impl Into<Int>) -> Self {
        GoldenRat::new(GoldenInt::new(a, b), den)
    }

    pub fn half() -> Self {
        GoldenRat::ratio(1, 2)
    }

    pub fn numer(&self) -> &GoldenInt {
        &self.num
    }

    pub fn denom(&self) -> &Int {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_integral(&self) -> bool {
        self.den.is_one()
    }

    pub fn is_rational(&self) -> bool {
        self.num.b.is_zero()
    }

    pub fn to_golden_int(&self) -> Option<GoldenInt> {
        self.is_integral().then(|| self.num.clone())
    }

    pub fn conjugate(&self) -> Self {
        GoldenRat { num: self.num.conjugate(), den: self.den.clone() }
    }

    /// `x · x'` as a rational `(numerator, denominator)`.
    pub fn norm(&self) -> (Int, Int) {
        let n = self.num.norm();
        let d = &self.den * &self.den;
        let g = n.gcd(&d);
        if g.is_zero() || g.is_one() {
            (n, d)
        } else {
            (n.div_exact(&g), d.div_exact(&g))
        }
    }

    /// `x + x'` as a rational.
    pub fn trace(&self) -> (Int, Int) {
        (self.num.trace(), self.den.clone())
    }

    pub fn sign(&self) -> i32 {
        self.num.sign()
    }

    pub fn abs(&self) -> Self {
        if self.sign() < 0 {
            -self
        } else {
            self.clone()
        }
    }

    pub fn recip(&self) -> Option<Self> {
        if self.num.is_zero() {
            return None;
        }
        let n = self.num.norm();
        Some(GoldenRat::new(self.num.conjugate().scale(&self.den), n))
    }

    pub fn to_f64(&self) -> f64 {
        self.num.to_f64() / self.den.to_f64()
    }

    /// Floating approximation of the real number. Precision requests finer
    /// than `f64` resolution (about `1e-15·|x|`) are capped at that resolution.
    pub fn embed(&self, precision: f64) -> f64 {
        let v = self.to_f64();
        debug_assert!(precision > 0.0);
        v
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = GoldenRat::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn tau_pow(k: i64) -> Self {
        GoldenInt::tau_pow(k).into()
    }

    pub fn scale_int(&self, k: &Int) -> Self {
        GoldenRat::new(self.num.scale(k), self.den.clone())
    }

    /// Exact rational from a decimal literal such as `-0.001` or `3/4` or `2.5e-3`.
    pub fn parse_rational(s: &str) -> Result<Self, Error> {
        let s = s.trim();
        let bad = || Error::Parse(format!("invalid rational {s:?}"));
        if let Some((p, q)) = s.split_once('/') {
            let p: Int = p.trim().parse().map_err(|_| bad())?;
            let q: Int = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            return Ok(GoldenRat::ratio(p, q));
        }
        let (mant, exp) = match s.find(['e', 'E']) {
            Some(i) => (&s[..i], s[i + 1..].parse::<i32>().map_err(|_| bad())?),
            None => (s, 0),
        };
        let (neg, mant) = match mant.strip_prefix('-') {
            Some(m) => (true, m),
            None => (false, mant.strip_prefix('+').unwrap_or(mant)),
        };
        let (ip, fp) = mant.split_once('.').unwrap_or((mant, ""));
        if ip.is_empty() && fp.is_empty() {
            return Err(bad());
        }
        if !ip.chars().chain(fp.chars()).all(|c| c.is_ascii_digit()) {
            return Err(bad());
        }
        let digits: Int = format!("{ip}{fp}").parse().map_err(|_| bad())?;
        let scale = exp - fp.len() as i32;
        let ten = Int::from(10);
        let mut v = if scale >= 0 {
            GoldenRat::from_int(&digits * &ten.pow(scale as u32))
        } else {
            GoldenRat::ratio(digits, ten.pow((-scale) as u32))
        };
        if neg {
            v = -v;
        }
        Ok(v)
    }
}

impl From<GoldenInt> for GoldenRat {
    fn from(num: GoldenInt) -> Self {
        GoldenRat { num, den: Int::ONE }
    }
}

impl From<i64> for GoldenRat {
    fn from(n: i64) -> Self {
        GoldenRat::from_int(n)
    }
}

impl<'a> Add<&'a GoldenRat> for &'a GoldenRat {
    type Output = GoldenRat;
    fn add(self, rhs: &'a GoldenRat) -> GoldenRat {
        if self.den == rhs.den {
            return GoldenRat::new(&self.num + &rhs.num, self.den.clone());
        }
        GoldenRat::new(
            &self.num.scale(&rhs.den) + &rhs.num.scale(&self.den),
            &self.den * &rhs.den,
        )
    }
}

impl<'a> Sub<&'a GoldenRat> for &'a GoldenRat {
    type Output = GoldenRat;
    fn sub(self, rhs: &'a GoldenRat) -> GoldenRat {
        if self.den == rhs.den {
            return GoldenRat::new(&self.num - &rhs.num, self.den.clone());
        }
        GoldenRat::new(
            &self.num.scale(&rhs.den) - &rhs.num.scale(&self.den),
            &self.den * &rhs.den,
        )
    }
}

impl<'a> Mul<&'a GoldenRat> for &'a GoldenRat {
    type Output = GoldenRat;
    fn mul(self, rhs: &'a GoldenRat) -> GoldenRat {
        GoldenRat::new(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

/// Panics on division by zero.
impl<'a> Div<&'a GoldenRat> for &'a GoldenRat {
    type Output = GoldenRat;
    fn div(self, rhs: &'a GoldenRat) -> GoldenRat {
        self * &rhs.recip().expect("division by zero in Q(τ)")
    }
}

forward_binop!(GoldenRat, Add, add);
forward_binop!(GoldenRat, Sub, sub);
forward_binop!(GoldenRat, Mul, mul);
forward_binop!(GoldenRat, Div, div);

impl Neg for &GoldenRat {
    type Output = GoldenRat;
    fn neg(self) -> GoldenRat {
        GoldenRat { num: -&self.num, den: self.den.clone() }
    }
}

impl Neg for GoldenRat {
    type Output = GoldenRat;
    fn neg(self) -> GoldenRat {
        -&self
    }
}

impl PartialOrd for GoldenRat {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Numeric order on the real line.
impl Ord for GoldenRat {
    fn cmp(&self, other: &Self) -> Ordering {
        let d = &self.num.scale(&other.den) - &other.num.scale(&self.den);
        d.sign().cmp(&0)
    }
}

impl fmt::Display for GoldenRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else if self.num.a.is_zero() || self.num.b.is_zero() {
            write!(f, "{}/{}", self.num, self.den)
        } else {
            write!(f, "({})/{}", self.num, self.den)
        }
    }
}

impl fmt::Debug for GoldenRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Serialized as `[a, b, den]`.
impl Serialize for GoldenRat {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        (&self.num.a, &self.num.b, &self.den).serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for GoldenRat {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let (a, b, den) = <(Int, Int, Int)>::deserialize(deserializer)?;
        if den.is_zero() {
            return Err(serde::de::Error::custom("zero denominator"));
        }
        Ok(GoldenRat::new(GoldenInt { a, b }, den))
    }
}

/// Parses sums of terms like `1`, `-3/2`, `0.001`, `tau`, `2*tau`, `τ'`, `tau'`
/// (the conjugate `1-τ`) into an element of `Q(τ)`.
impl FromStr for GoldenRat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let src: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if src.is_empty() {
            return Err(Error::Parse("empty expression".into()));
        }
        let mut terms = Vec::new();
        let mut cur = String::new();
        let chars: Vec<char> = src.chars().collect();
        for (i, &c) in chars.iter().enumerate() {
            let after_exp = i > 0 && matches!(chars[i - 1], 'e' | 'E') && chars[..i - 1].last().is_some_and(|p| p.is_ascii_digit() || *p == '.');
            if (c == '+' || c == '-') && !cur.is_empty() && !after_exp {
                terms.push(std::mem::take(&mut cur));
            }
            cur.push(c);
        }
        terms.push(cur);
        let mut acc = GoldenRat::zero();
        for t in terms {
            acc = &acc + &parse_term(&t)?;
        }
        Ok(acc)
    }
}

fn parse_term(t: &str) -> Result<GoldenRat, Error> {
    let (neg, body) = match t.strip_prefix('-') {
        Some(r) => (true, r),
        None => (false, t.strip_prefix('+').unwrap_or(t)),
    };
    let symbols: [(&str, GoldenRat); 4] = [
        ("tau'", GoldenRat::tau_conj()),
        ("τ'", GoldenRat::tau_conj()),
        ("tau", GoldenRat::tau()),
        ("τ", GoldenRat::tau()),
    ];
    let mut value = None;
    for (sym, v) in symbols.iter() {
        if let Some(coef) = body.strip_suffix(sym) {
            let coef = coef.strip_suffix('*').unwrap_or(coef);
            let c = if coef.is_empty() { GoldenRat::one() } else { GoldenRat::parse_rational(coef)? };
            value = Some(&c * v);
            break;
        }
    }
    let v = match value {
        Some(v) => v,
        None => GoldenRat::parse_rational(body)?,
    };
    Ok(if neg { -v } else { v })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn gi(a: i64, b: i64) -> GoldenInt {
        GoldenInt::new(a, b)
    }

    #[test]
    fn multiplication_examples() {
        assert_eq!(gi(0, 1) * gi(0, 1), gi(1, 1));
        // (1+τ)(1-τ) = 1 - τ² = -τ
        assert_eq!(gi(1, 1) * gi(1, -1), gi(0, -1));
        assert_eq!(gi(3, -7) * GoldenInt::one(), gi(3, -7));
        // τ³ = 1 + 2τ
        assert_eq!(GoldenInt::tau_pow(3), gi(1, 2));
        assert_eq!(GoldenInt::tau_pow(-1) * GoldenInt::tau(), GoldenInt::one());
    }

    #[test]
    fn conjugate_examples() {
        assert_eq!(gi(0, 1).conjugate(), gi(1, -1));
        assert_eq!(gi(1, 2).conjugate(), gi(3, -2));
        assert_eq!(gi(-4, 0).conjugate(), gi(-4, 0));
        // τ·τ' = -1, τ + τ' = 1
        assert_eq!(GoldenInt::tau() * GoldenInt::tau_conj(), gi(-1, 0));
        assert_eq!(GoldenInt::tau() + GoldenInt::tau_conj(), gi(1, 0));
    }

    #[test]
    fn norm_examples() {
        assert_eq!(gi(0, 1).norm(), Int::from(-1));
        assert_eq!(gi(1, 2).norm(), Int::from(-1));
        assert_eq!(gi(2, 0).norm(), Int::from(4));
        assert!(gi(1, 2).is_unit());
        assert!(!gi(2, 0).is_unit());
    }

    #[test]
    fn sign_examples() {
        assert_eq!(gi(1, -1).sign(), -1);
        assert_eq!(GoldenInt::zero().sign(), 0);
        assert_eq!(gi(5, -3).sign(), 1);
        // F(n+1) - F(n)τ alternates in sign and shrinks like τ^-n
        assert_eq!(gi(89, -55).sign(), 1);
        assert_eq!(gi(144, -89).sign(), -1);
    }

    #[test]
    fn embed_examples() {
        assert!((GoldenRat::tau().embed(1e-12) - 1.618_033_988_7).abs() < 1e-10);
        assert_eq!(GoldenRat::zero().embed(1e-12), 0.0);
        assert!((GoldenRat::tau_conj().embed(1e-12) + 0.618_033_988_7).abs() < 1e-10);
        // catastrophic cancellation handled through the conjugate
        let tiny = gi(165_580_141, -102_334_155); // F(41) - F(40)τ ≈ τ^-40
        let exact = TAU_F64.powi(-40);
        assert!((tiny.to_f64() - exact).abs() < 1e-22);
    }

    #[test]
    fn unit_exponents() {
        assert_eq!(gi(1, 2).unit_exponent(), Some((1, 3)));
        assert_eq!(gi(-1, 0).unit_exponent(), Some((-1, 0)));
        assert_eq!(GoldenInt::tau_pow(-5).unit_exponent(), Some((1, -5)));
        assert_eq!((-GoldenInt::tau_pow(7)).unit_exponent(), Some((-1, 7)));
        assert_eq!(gi(2, 0).unit_exponent(), None);
    }

    #[test]
    fn residues_form_a_field() {
        for x in Residue::all() {
            assert_eq!(x.mul(Residue::ONE), x);
            if !x.is_zero() {
                assert!(Residue::all().iter().any(|y| x.mul(*y) == Residue::ONE));
            }
        }
        assert_eq!(Residue::TAU.mul(Residue::TAU), Residue::TAU2);
        assert_eq!(gi(3, 4).residue_mod2(), Residue::ONE);
    }

    #[test]
    fn gcd_and_division() {
        let x = gi(3, 5) * gi(2, 1);
        let y = gi(3, 5) * gi(7, -2);
        let g = x.gcd(&y);
        assert!(g.divides(&x) && g.divides(&y));
        assert!(gi(3, 5).divides(&g));
        assert_eq!(gi(2, 2).div_exact(&gi(1, 1)), Some(gi(2, 0)));
        assert_eq!(gi(1, 0).div_exact(&gi(2, 0)), None);
    }

    #[test]
    fn rational_field_ops() {
        let x = GoldenRat::from_parts(3, -2, 7);
        let inv = x.recip().unwrap();
        assert_eq!(&x * &inv, GoldenRat::one());
        let h = GoldenRat::half();
        assert_eq!(&h + &h, GoldenRat::one());
        assert_eq!(GoldenRat::from_parts(2, 4, 6), GoldenRat::from_parts(1, 2, 3));
        assert_eq!(GoldenRat::from_parts(1, 1, -2), GoldenRat::from_parts(-1, -1, 2));
        assert!(GoldenRat::tau() > GoldenRat::one());
    }

    #[test]
    fn parsing() {
        assert_eq!("tau".parse::<GoldenRat>().unwrap(), GoldenRat::tau());
        assert_eq!("1+2tau".parse::<GoldenRat>().unwrap(), GoldenInt::new(1, 2).into());
        assert_eq!("-tau'".parse::<GoldenRat>().unwrap(), -GoldenRat::tau_conj());
        assert_eq!("0.001".parse::<GoldenRat>().unwrap(), GoldenRat::ratio(1, 1000));
        assert_eq!("3/2*τ".parse::<GoldenRat>().unwrap(), GoldenRat::from_parts(0, 3, 2));
        assert_eq!("2.5e-3".parse::<GoldenRat>().unwrap(), GoldenRat::ratio(1, 400));
        assert!("x".parse::<GoldenRat>().is_err());
    }

    #[test]
    fn serde_formats() {
        assert_eq!(serde_json::to_string(&gi(1, -2)).unwrap(), "[1,-2]");
        let r = GoldenRat::from_parts(1, 3, 2);
        let s = serde_json::to_string(&r).unwrap();
        assert_eq!(s, "[1,3,2]");
        assert_eq!(serde_json::from_str::<GoldenRat>(&s).unwrap(), r);
    }

    fn arb_gi() -> impl Strategy<Value = GoldenInt> {
        (-1000i64..1000, -1000i64..1000).prop_map(|(a, b)| gi(a, b))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(2000))]

        #[test]
        fn conjugation_is_a_ring_automorphism(x in arb_gi(), y in arb_gi()) {
            prop_assert_eq!((&x * &y).conjugate(), &x.conjugate() * &y.conjugate());
            prop_assert_eq!((&x + &y).conjugate(), &x.conjugate() + &y.conjugate());
            prop_assert_eq!(x.conjugate().conjugate(), x.clone());
        }

        #[test]
        fn norm_is_multiplicative(x in arb_gi(), y in arb_gi()) {
            prop_assert_eq!((&x * &y).norm(), &x.norm() * &y.norm());
            prop_assert_eq!(GoldenRat::from(x.clone()) * GoldenRat::from(x.conjugate()),
                            GoldenRat::from_int(x.norm()));
        }

        #[test]
        fn sign_agrees_with_float(x in arb_gi()) {
            let f = x.to_f64();
            if f.abs() > 1e-9 {
                prop_assert_eq!(x.sign(), if f > 0.0 { 1 } else { -1 });
            }
        }

        #[test]
        fn euclidean_remainder_shrinks(x in arb_gi(), y in arb_gi()) {
            prop_assume!(!y.is_zero());
            let (q, r) = x.div_rem(&y);
            prop_assert_eq!(&(&q * &y) + &r, x);
            prop_assert!(r.norm().abs() < y.norm().abs());
        }
    }
}

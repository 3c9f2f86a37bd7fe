//! Vectors and 3×3 matrices over `Q(τ)`.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::golden::{GoldenInt, GoldenRat};
use crate::int::Int;

#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct QVec3(pub [GoldenRat; 3]);

impl QVec3 {
    pub fn new(x: GoldenRat, y: GoldenRat, z: GoldenRat) -> Self {
        QVec3([x, y, z])
    }

    pub fn zero() -> Self {
        QVec3::default()
    }

    pub fn from_ints(x: i64, y: i64, z: i64) -> Self {
        QVec3([x.into(), y.into(), z.into()])
    }

    pub fn from_golden(v: &[GoldenInt; 3]) -> Self {
        QVec3([v[0].clone().into(), v[1].clone().into(), v[2].clone().into()])
    }

    /// `num / 2`, the value of a point stored by its doubled numerator.
    pub fn from_doubled(v: &[GoldenInt; 3]) -> Self {
        let h = GoldenRat::half();
        QVec3([
            &GoldenRat::from(v[0].clone()) * &h,
            &GoldenRat::from(v[1].clone()) * &h,
            &GoldenRat::from(v[2].clone()) * &h,
        ])
    }

    pub fn x(&self) -> &GoldenRat {
        &self.0[0]
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(GoldenRat::is_zero)
    }

    pub fn scale(&self, k: &GoldenRat) -> QVec3 {
        QVec3([&self.0[0] * k, &self.0[1] * k, &self.0[2] * k])
    }

    pub fn dot(&self, o: &QVec3) -> GoldenRat {
        &(&(&self.0[0] * &o.0[0]) + &(&self.0[1] * &o.0[1])) + &(&self.0[2] * &o.0[2])
    }

    pub fn cross(&self, o: &QVec3) -> QVec3 {
        let [a1, a2, a3] = &self.0;
        let [b1, b2, b3] = &o.0;
        QVec3([
            &(a2 * b3) - &(a3 * b2),
            &(a3 * b1) - &(a1 * b3),
            &(a1 * b2) - &(a2 * b1),
        ])
    }

    pub fn norm2(&self) -> GoldenRat {
        self.dot(self)
    }

    /// Coordinatewise Galois conjugation.
    pub fn star(&self) -> QVec3 {
        QVec3([self.0[0].conjugate(), self.0[1].conjugate(), self.0[2].conjugate()])
    }

    pub fn is_parallel(&self, o: &QVec3) -> bool {
        self.cross(o).is_zero()
    }

    pub fn to_f64(&self) -> [f64; 3] {
        [self.0[0].to_f64(), self.0[1].to_f64(), self.0[2].to_f64()]
    }

    /// Least common multiple of the three denominators.
    pub fn denominator_lcm(&self) -> Int {
        self.0.iter().fold(Int::ONE, |acc, c| lcm(&acc, c.denom()))
    }

    /// `self · k` as an integral vector; `k` must clear every denominator.
    pub fn to_integral(&self, k: &Int) -> [GoldenInt; 3] {
        let f = |c: &GoldenRat| c.scale_int(k).to_golden_int().expect("scale does not clear denominators");
        [f(&self.0[0]), f(&self.0[1]), f(&self.0[2])]
    }

    pub fn is_integral(&self) -> bool {
        self.0.iter().all(GoldenRat::is_integral)
    }
}

pub fn lcm(a: &Int, b: &Int) -> Int {
    if a.is_zero() || b.is_zero() {
        return Int::ZERO;
    }
    (a * b).abs().div_exact(&a.gcd(b))
}

impl<'a> Add<&'a QVec3> for &'a QVec3 {
    type Output = QVec3;
    fn add(self, o: &'a QVec3) -> QVec3 {
        QVec3([&self.0[0] + &o.0[0], &self.0[1] + &o.0[1], &self.0[2] + &o.0[2]])
    }
}

impl<'a> Sub<&'a QVec3> for &'a QVec3 {
    type Output = QVec3;
    fn sub(self, o: &'a QVec3) -> QVec3 {
        QVec3([&self.0[0] - &o.0[0], &self.0[1] - &o.0[1], &self.0[2] - &o.0[2]])
    }
}

impl Add for QVec3 {
    type Output = QVec3;
    fn add(self, o: QVec3) -> QVec3 {
        &self + &o
    }
}

impl Sub for QVec3 {
    type Output = QVec3;
    fn sub(self, o: QVec3) -> QVec3 {
        &self - &o
    }
}

impl Neg for &QVec3 {
    type Output = QVec3;
    fn neg(self) -> QVec3 {
        QVec3([-&self.0[0], -&self.0[1], -&self.0[2]])
    }
}

impl PartialOrd for QVec3 {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Lexicographic in the numeric order of the coordinates.
impl Ord for QVec3 {
    fn cmp(&self, other: &Self) -> Ordering {
        for i in 0..3 {
            match self.0[i].cmp(&other.0[i]) {
                Ordering::Equal => continue,
                o => return o,
            }
        }
        Ordering::Equal
    }
}

impl fmt::Debug for QVec3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.0[0], self.0[1], self.0[2])
    }
}

impl fmt::Display for QVec3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Parses three comma-separated `Q(τ)` expressions, e.g. `tau,0,1`.
impl FromStr for QVec3 {
    type Err = Error;

    fn from_str(s: &str) -> Result<QVec3, Error> {
        let parts: Vec<&str> = s.split(',').collect();
        if parts.len() != 3 {
            return Err(Error::Parse(format!("expected three coordinates in {s:?}")));
        }
        Ok(QVec3([parts[0].parse()?, parts[1].parse()?, parts[2].parse()?]))
    }
}

/// Row-major 3×3 matrix over `Q(τ)`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Mat3(pub [[GoldenRat; 3]; 3]);

impl Mat3 {
    pub fn identity() -> Self {
        let o = GoldenRat::one;
        let z = GoldenRat::zero;
        Mat3([[o(), z(), z()], [z(), o(), z()], [z(), z(), o()]])
    }

    pub fn transpose(&self) -> Mat3 {
        let m = &self.0;
        Mat3([
            [m[0][0].clone(), m[1][0].clone(), m[2][0].clone()],
            [m[0][1].clone(), m[1][1].clone(), m[2][1].clone()],
            [m[0][2].clone(), m[1][2].clone(), m[2][2].clone()],
        ])
    }

    pub fn apply(&self, v: &QVec3) -> QVec3 {
        let row = |r: &[GoldenRat; 3]| QVec3(r.clone()).dot(v);
        QVec3([row(&self.0[0]), row(&self.0[1]), row(&self.0[2])])
    }

    pub fn neg(&self) -> Mat3 {
        Mat3(self.0.clone().map(|r| r.map(|c| -c)))
    }

    /// Entrywise Galois conjugation.
    pub fn star(&self) -> Mat3 {
        Mat3(self.0.clone().map(|r| r.map(|c| c.conjugate())))
    }

    pub fn det(&self) -> GoldenRat {
        let r0 = QVec3(self.0[0].clone());
        let r1 = QVec3(self.0[1].clone());
        let r2 = QVec3(self.0[2].clone());
        r0.dot(&r1.cross(&r2))
    }

    pub fn is_orthogonal(&self) -> bool {
        &self.transpose() * self == Mat3::identity()
    }
}

impl<'a> Mul<&'a Mat3> for &'a Mat3 {
    type Output = Mat3;
    fn mul(self, o: &'a Mat3) -> Mat3 {
        let mut out = Mat3::identity();
        for i in 0..3 {
            for j in 0..3 {
                let mut acc = GoldenRat::zero();
                for k in 0..3 {
                    acc = &acc + &(&self.0[i][k] * &o.0[k][j]);
                }
                out.0[i][j] = acc;
            }
        }
        out
    }
}

impl fmt::Debug for Mat3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:?}, {:?}, {:?}]", self.0[0], self.0[1], self.0[2])
    }
}

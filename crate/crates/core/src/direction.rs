//! Canonical representatives of directions in `Q(τ)³` and `Q(ζ₅)`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::golden::{GoldenInt, GoldenRat};
use crate::icosian::{integral_module_contains, ModuleTag};
use crate::int::Int;
use crate::linalg::QVec3;

/// Divide an integral vector by the `Z[τ]`-gcd of its entries.
pub fn primitive_part(g: &[GoldenInt]) -> Vec<GoldenInt> {
    let content = g.iter().fold(GoldenInt::zero(), |acc, x| acc.gcd(x));
    if content.is_zero() {
        return g.to_vec();
    }
    g.iter().map(|x| x.div_exact(&content).expect("gcd divides")).collect()
}

/// Picks the unit multiple `τ^s g` minimising `Tr(τ^{2s} q)`, where `q` is the
/// squared length of `g`; ties go to the larger `s`. Then makes the first
/// nonzero entry positive.
fn normalise_unit(g: Vec<GoldenInt>, q: &GoldenInt) -> Vec<GoldenInt> {
    let t = |s: i64| (&GoldenInt::tau_pow(2 * s) * q).trace();
    let mut s = 0i64;
    while t(s + 1) <= t(s) {
        s += 1;
    }
    while t(s - 1) < t(s) {
        s -= 1;
    }
    let u = GoldenInt::tau_pow(s);
    let mut out: Vec<GoldenInt> = g.iter().map(|x| &u * x).collect();
    if out.iter().find(|x| !x.is_zero()).map(|x| x.sign() < 0).unwrap_or(false) {
        out = out.iter().map(|x| -x).collect();
    }
    out
}

fn clear_denominators(v: &[GoldenRat]) -> Vec<GoldenInt> {
    let d = v.iter().fold(Int::ONE, |acc, c| crate::linalg::lcm(&acc, c.denom()));
    v.iter().map(|c| c.scale_int(&d).to_golden_int().unwrap()).collect()
}

/// Canonical primitive integral vector on the line through `v`.
pub fn canonical_integral_3d(v: &QVec3) -> Option<[GoldenInt; 3]> {
    if v.is_zero() {
        return None;
    }
    let g = primitive_part(&clear_denominators(&v.0));
    let q = g.iter().fold(GoldenInt::zero(), |acc, x| &acc + &(x * x));
    let g = normalise_unit(g, &q);
    Some([g[0].clone(), g[1].clone(), g[2].clone()])
}

/// The canonical primitive element of `L` parallel to `v`, or `None` for `v = 0`.
/// Every nonzero vector of `Q(τ)³` is parallel to some element of `L`.
pub fn is_l_direction(v: &QVec3, tag: ModuleTag) -> Option<QVec3> {
    let g = canonical_integral_3d(v)?;
    let num = if integral_module_contains(&g, tag.numerator_module()) {
        g
    } else {
        // g is primitive, so 2g is the first multiple inside the module
        [g[0].scale(&2.into()), g[1].scale(&2.into()), g[2].scale(&2.into())]
    };
    Some(if tag.is_halved() { QVec3::from_doubled(&num) } else { QVec3::from_golden(&num) })
}

/// Squared length of `α + βζ₅` as an element of `Q(τ)`.
pub fn cyc_norm2(a: &GoldenRat, b: &GoldenRat) -> GoldenRat {
    &(&(a * a) + &(b * b)) - &(&(a * b) * &GoldenRat::tau_conj())
}

/// Canonical primitive element `α + βζ₅` of `Z[ζ₅]` parallel to the given one.
pub fn canonical_cyclotomic(a: &GoldenRat, b: &GoldenRat) -> Option<(GoldenInt, GoldenInt)> {
    if a.is_zero() && b.is_zero() {
        return None;
    }
    let g = primitive_part(&clear_denominators(&[a.clone(), b.clone()]));
    let q = &(&(&g[0] * &g[0]) + &(&g[1] * &g[1])) - &(&(&g[0] * &g[1]) * &GoldenInt::tau_conj());
    let g = normalise_unit(g, &q);
    Some((g[0].clone(), g[1].clone()))
}

/// A direction for X-rays. Planar directions live in the coordinate plane
/// `z = 0`, where `(x, y)` are coordinates in a fixed basis such as `{1, ζ₅}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Direction {
    pub rep: QVec3,
    pub planar: bool,
}

impl Direction {
    /// Validated spatial `L`-direction.
    pub fn spatial(v: &QVec3, tag: ModuleTag) -> Result<Direction> {
        let rep = is_l_direction(v, tag).ok_or_else(|| Error::InvalidDirection("zero vector".into()))?;
        Ok(Direction { rep, planar: false })
    }

    /// Validated `Z[ζ₅]`-direction `α + βζ₅`.
    pub fn cyclotomic(a: &GoldenRat, b: &GoldenRat) -> Result<Direction> {
        let (a, b) = canonical_cyclotomic(a, b).ok_or_else(|| Error::InvalidDirection("zero vector".into()))?;
        Ok(Direction { rep: QVec3::new(a.into(), b.into(), GoldenRat::zero()), planar: true })
    }

    /// Exact key of the line through `x` parallel to this direction.
    pub fn key(&self, x: &QVec3) -> QVec3 {
        x.cross(&self.rep)
    }

    pub fn is_parallel(&self, other: &Direction) -> bool {
        self.rep.is_parallel(&other.rep)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tau_vec() -> QVec3 {
        QVec3::new(GoldenRat::tau(), 0.into(), 1.into())
    }

    #[test]
    fn tau_direction_is_canonical() {
        let g = canonical_integral_3d(&tau_vec()).unwrap();
        assert_eq!(QVec3::from_golden(&g), tau_vec());
        let scaled = tau_vec().scale(&GoldenRat::from_int(2));
        assert_eq!(canonical_integral_3d(&scaled).unwrap(), g);
        let unit = tau_vec().scale(&GoldenRat::tau_pow(-3)).scale(&GoldenRat::from_int(-5));
        assert_eq!(canonical_integral_3d(&unit).unwrap(), g);
    }

    #[test]
    fn l_representatives() {
        // (τ,0,1) ∈ M_B, so half of it lies in Im(𝕀)
        assert_eq!(is_l_direction(&tau_vec(), ModuleTag::ImIcosian).unwrap(), tau_vec().scale(&GoldenRat::half()));
        assert_eq!(is_l_direction(&tau_vec(), ModuleTag::MB).unwrap(), tau_vec());
        let e1 = QVec3::from_ints(3, 0, 0);
        assert_eq!(is_l_direction(&e1, ModuleTag::ImIcosian).unwrap(), QVec3::from_ints(1, 0, 0));
        assert_eq!(is_l_direction(&e1, ModuleTag::MB).unwrap(), QVec3::from_ints(2, 0, 0));
        assert!(is_l_direction(&QVec3::zero(), ModuleTag::MF).is_none());
        for tag in [ModuleTag::ImIcosian, ModuleTag::Icosian0] {
            let r = is_l_direction(&QVec3::from_ints(1, 1, 1), tag).unwrap();
            assert!(crate::icosian::module_contains(&r, tag));
        }
    }

    #[test]
    fn cyclotomic_canonical_form() {
        let base = canonical_cyclotomic(&GoldenRat::one(), &GoldenRat::one()).unwrap();
        let (a, b) = canonical_cyclotomic(&GoldenRat::from_int(2), &GoldenRat::from_int(2)).unwrap();
        assert_eq!((a, b), base);
        let t = GoldenRat::tau();
        assert_eq!(canonical_cyclotomic(&(-&t), &(-&t)).unwrap(), base);
        assert_eq!(base.0, base.1);
        assert_eq!(cyc_norm2(&1.into(), &1.into()), &GoldenRat::one() + &GoldenRat::tau());
    }
}

//! Planar slices of icosahedral model sets orthogonal to `(τ,0,1)` and their
//! identification with cyclotomic model sets over `Z[ζ₅]`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::golden::{GoldenInt, GoldenRat, TAU_CONJ_F64};
use crate::hull::{Hull2, P2};
use crate::icosian::{module_contains, ModuleTag};
use crate::linalg::QVec3;
use crate::modelset::{coordinate_candidates, range_by_u, ModelSet, ModelSetPatch};
use crate::window::Shift;

/// `α + βζ₅` (or, for internal images, `α + βζ₅³`).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CycPoint {
    pub alpha: GoldenRat,
    pub beta: GoldenRat,
}

impl CycPoint {
    pub fn new(alpha: GoldenRat, beta: GoldenRat) -> CycPoint {
        CycPoint { alpha, beta }
    }

    pub fn from_ints(a: (i64, i64), b: (i64, i64)) -> CycPoint {
        CycPoint { alpha: GoldenInt::new(a.0, a.1).into(), beta: GoldenInt::new(b.0, b.1).into() }
    }

    pub fn zero() -> CycPoint {
        CycPoint { alpha: GoldenRat::zero(), beta: GoldenRat::zero() }
    }

    pub fn is_integral(&self) -> bool {
        self.alpha.is_integral() && self.beta.is_integral()
    }

    /// `|α + βζ₅|² = α² + β² − αβτ′`.
    pub fn norm2(&self) -> GoldenRat {
        crate::direction::cyc_norm2(&self.alpha, &self.beta)
    }

    /// `|α + βζ₅³|² = α² + β² − αβτ`, the squared length of an internal image.
    pub fn norm2_star_basis(&self) -> GoldenRat {
        let (a, b) = (&self.alpha, &self.beta);
        &(&(a * a) + &(b * b)) - &(&(a * b) * &GoldenRat::tau())
    }

    /// `z^{⋆₅} = α′ + β′ζ₅³`, returned as coordinates in the basis `{1, ζ₅³}`.
    pub fn star5(&self) -> CycPoint {
        CycPoint { alpha: self.alpha.conjugate(), beta: self.beta.conjugate() }
    }

    pub fn sub(&self, o: &CycPoint) -> CycPoint {
        CycPoint { alpha: &self.alpha - &o.alpha, beta: &self.beta - &o.beta }
    }

    pub fn add(&self, o: &CycPoint) -> CycPoint {
        CycPoint { alpha: &self.alpha + &o.alpha, beta: &self.beta + &o.beta }
    }

    /// Coordinates as a point of the plane `z = 0`, for planar tomography.
    pub fn to_plane(&self) -> QVec3 {
        QVec3::new(self.alpha.clone(), self.beta.clone(), GoldenRat::zero())
    }

    pub fn from_plane(v: &QVec3) -> CycPoint {
        CycPoint { alpha: v.0[0].clone(), beta: v.0[1].clone() }
    }

    pub fn p2(&self) -> P2 {
        [self.alpha.clone(), self.beta.clone()]
    }

    /// Cartesian coordinates of `α + βζ₅` in `C`.
    pub fn to_complex_f64(&self) -> (f64, f64) {
        let ang = 2.0 * std::f64::consts::PI / 5.0;
        let (a, b) = (self.alpha.to_f64(), self.beta.to_f64());
        (a + b * ang.cos(), b * ang.sin())
    }
}

fn tau_vec() -> QVec3 {
    QVec3::new(GoldenRat::tau(), 0.into(), 1.into())
}

fn tau_conj_vec() -> QVec3 {
    QVec3::new(GoldenRat::tau_conj(), 0.into(), 1.into())
}

/// `½(−1, −τ′, τ)`, mapped to `ζ₅` by `Φ`.
pub fn zeta_preimage() -> QVec3 {
    QVec3::new(GoldenRat::ratio(-1, 2), -(&GoldenRat::tau_conj() * &GoldenRat::half()), &GoldenRat::tau() * &GoldenRat::half())
}

/// `½(−1, −τ, τ′)`, mapped to `ζ₅³` by `Φ*`.
pub fn zeta3_preimage() -> QVec3 {
    zeta_preimage().star()
}

/// The slice label `⟨x, (τ,0,1)⟩`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SliceKey {
    pub height: GoldenRat,
}

pub fn height(x: &QVec3) -> SliceKey {
    SliceKey { height: x.dot(&tau_vec()) }
}

/// `Φ : H^{(τ,0,1)} → C` with `(0,1,0) ↦ 1`, `½(−1,−τ′,τ) ↦ ζ₅`.
pub fn phi(v: &QVec3) -> Result<CycPoint> {
    if !v.dot(&tau_vec()).is_zero() {
        return Err(Error::NotInPlane("H^(τ,0,1)"));
    }
    let [v1, v2, _] = &v.0;
    Ok(CycPoint { alpha: v2 - &(&GoldenRat::tau_conj() * v1), beta: -(v1 * &GoldenRat::from_int(2)) })
}

/// `Φ* : H^{(τ′,0,1)} → C` with `(0,1,0) ↦ 1`, `½(−1,−τ,τ′) ↦ ζ₅³`; coordinates in `{1, ζ₅³}`.
pub fn phi_star(v: &QVec3) -> Result<CycPoint> {
    if !v.dot(&tau_conj_vec()).is_zero() {
        return Err(Error::NotInPlane("H^(τ',0,1)"));
    }
    let [v1, v2, _] = &v.0;
    Ok(CycPoint { alpha: v2 - &(&GoldenRat::tau() * v1), beta: -(v1 * &GoldenRat::from_int(2)) })
}

/// `Φ⁻¹(α + βζ₅) = α(0,1,0) + β·½(−1,−τ′,τ)`.
pub fn phi_inverse(z: &CycPoint) -> QVec3 {
    &QVec3::from_ints(0, 1, 0).scale(&z.alpha) + &zeta_preimage().scale(&z.beta)
}

/// Inverse of `Φ*`.
pub fn phi_star_inverse(z: &CycPoint) -> QVec3 {
    &QVec3::from_ints(0, 1, 0).scale(&z.alpha) + &zeta3_preimage().scale(&z.beta)
}

/// Convex polygon in the `{1, ζ₅³}` coordinates, stored as closed halfplanes
/// `a·r + b·s ≤ c` together with its vertices.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SliceWindow {
    pub halfplanes: Vec<[GoldenRat; 3]>,
    pub vertices: Vec<P2>,
}

impl SliceWindow {
    /// The polygon cut out by the halfplanes; empty or degenerate cross-sections are kept as such.
    pub fn from_halfplanes(halfplanes: Vec<[GoldenRat; 3]>) -> SliceWindow {
        let mut pts: Vec<P2> = Vec::new();
        let sat = |p: &P2, hs: &[[GoldenRat; 3]]| hs.iter().all(|h| &(&h[0] * &p[0]) + &(&h[1] * &p[1]) <= h[2]);
        if halfplanes.iter().any(|h| h[0].is_zero() && h[1].is_zero() && h[2].sign() < 0) {
            return SliceWindow { halfplanes, vertices: Vec::new() };
        }
        for i in 0..halfplanes.len() {
            for j in i + 1..halfplanes.len() {
                let (a, b) = (&halfplanes[i], &halfplanes[j]);
                let det = &(&a[0] * &b[1]) - &(&a[1] * &b[0]);
                if det.is_zero() {
                    continue;
                }
                let r = &(&(&a[2] * &b[1]) - &(&a[1] * &b[2])) / &det;
                let s = &(&(&a[0] * &b[2]) - &(&a[2] * &b[0])) / &det;
                let p = [r, s];
                if sat(&p, &halfplanes) && !pts.contains(&p) {
                    pts.push(p);
                }
            }
        }
        let vertices = Hull2::new(&pts).vertices;
        SliceWindow { halfplanes, vertices }
    }

    /// Closed containment of `(r, s)`.
    pub fn contains(&self, p: &P2) -> bool {
        if self.vertices.is_empty() {
            return false;
        }
        self.halfplanes.iter().all(|h| &(&h[0] * &p[0]) + &(&h[1] * &p[1]) <= h[2])
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    fn bbox_f64(&self) -> ([f64; 2], [f64; 2]) {
        let mut lo = [f64::INFINITY; 2];
        let mut hi = [f64::NEG_INFINITY; 2];
        for v in &self.vertices {
            for i in 0..2 {
                let x = v[i].to_f64();
                lo[i] = lo[i].min(x);
                hi[i] = hi[i].max(x);
            }
        }
        (lo, hi)
    }
}

/// `W_λ = Φ*(((s+W) ∩ ((λ−t)* + H^{(τ′,0,1)})) − (λ−t)*)`.
pub fn slice_window(model: &ModelSet, lambda: &QVec3) -> Result<SliceWindow> {
    let Shift::Exact(shift) = model.window.shift() else {
        return Err(Error::ApproximateShift);
    };
    let c0 = (lambda - &model.t).star();
    let e1 = QVec3::from_ints(0, 1, 0);
    let e2 = zeta3_preimage();
    let base = &c0 - shift;
    let halfplanes = model
        .window
        .facets()
        .iter()
        .map(|f| [f.normal.dot(&e1), f.normal.dot(&e2), &f.offset - &f.normal.dot(&base)])
        .collect();
    Ok(SliceWindow::from_halfplanes(halfplanes))
}

/// Every `z ∈ Z[ζ₅]` with `|z − c|² < r²` and `z^{⋆₅} ∈ W`, sorted.
pub fn cyclotomic_patch_in_disc(window: &SliceWindow, center: &CycPoint, radius2: &GoldenRat) -> Vec<CycPoint> {
    if window.is_empty() || radius2.sign() <= 0 {
        return Vec::new();
    }
    let r = radius2.to_f64().sqrt();
    // |x + yζ₅|² ≥ (1 − τ′²/4)·x², so each coordinate is bounded by r / √(1 − τ′²/4)
    let w = r / (1.0 - TAU_CONJ_F64 * TAU_CONJ_F64 / 4.0).sqrt() + 1e-9;
    let (lo, hi) = window.bbox_f64();
    let (ca, cb) = (center.alpha.to_f64(), center.beta.to_f64());
    let la = coordinate_candidates(ca, w, lo[0], hi[0]);
    let lb = coordinate_candidates(cb, w, lo[1], hi[1]);
    let mut out = Vec::new();
    for a in &la {
        let da = a.u - ca;
        for b in range_by_u(&lb, cb - w, cb + w) {
            let db = b.u - cb;
            let q = da * da + db * db - da * db * TAU_CONJ_F64;
            if q > radius2.to_f64() * (1.0 + 1e-9) + 1e-9 {
                continue;
            }
            let z = CycPoint { alpha: a.g.clone().into(), beta: b.g.clone().into() };
            if &z.sub(center).norm2() < radius2 && window.contains(&z.star5().p2()) {
                out.push(z);
            }
        }
    }
    out.sort();
    out
}

/// Cyclotomic patch about the origin.
pub fn cyclotomic_patch(window: &SliceWindow, radius: &GoldenRat) -> Vec<CycPoint> {
    cyclotomic_patch_in_disc(window, &CycPoint::zero(), &(radius * radius))
}

/// One slice of a patch: `Φ((Λ ∩ (λ + H)) − λ)` with its window and the disc
/// `Φ((B_R(a) ∩ (λ + H)) − λ)` it was cut from.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Slice {
    pub height: SliceKey,
    pub lambda: QVec3,
    pub points: Vec<CycPoint>,
    pub window: SliceWindow,
    pub disc_center: CycPoint,
    pub disc_radius2: GoldenRat,
}

/// The slice of `patch` through its point `λ`.
pub fn slice_patch(patch: &ModelSetPatch, lambda: &QVec3) -> Result<Slice> {
    let h = height(lambda);
    let mut points = Vec::new();
    for p in &patch.points {
        let x = p.value();
        if height(&x) == h {
            points.push(phi(&(&x - lambda))?);
        }
    }
    points.sort();
    let window = slice_window(&patch.model, lambda)?;
    let n = tau_vec();
    let n2 = n.norm2();
    let d = &(&patch.center - lambda).dot(&n) / &n2;
    let foot = &patch.center - &n.scale(&d);
    let disc_center = phi(&(&foot - lambda))?;
    let disc_radius2 = &(&patch.radius * &patch.radius) - &(&(&d * &d) * &n2);
    Ok(Slice { height: h, lambda: lambda.clone(), points, window, disc_center, disc_radius2 })
}

/// The directly generated cyclotomic model set on the disc of `slice`.
pub fn slice_oracle(slice: &Slice) -> Vec<CycPoint> {
    cyclotomic_patch_in_disc(&slice.window, &slice.disc_center, &slice.disc_radius2)
}

/// Patch points grouped by slice height.
pub fn slices_by_height(points: &[QVec3]) -> BTreeMap<SliceKey, Vec<QVec3>> {
    let mut out: BTreeMap<SliceKey, Vec<QVec3>> = BTreeMap::new();
    for x in points {
        out.entry(height(x)).or_default().push(x.clone());
    }
    out
}

/// Checks that `(0,1,0)` and `½(−1,−τ′,τ)` span `L ∩ H^{(τ,0,1)}`: both lie in
/// `L`, their stars lie in `L* ∩ H^{(τ′,0,1)}`, and every height-zero point of a
/// small patch is a `Z[τ]`-combination of them.
pub fn slice_basis_check(model: &ModelSet) -> Result<bool> {
    let tag: ModuleTag = model.tag();
    let basis = [QVec3::from_ints(0, 1, 0), zeta_preimage()];
    for b in &basis {
        if !module_contains(b, tag) || !b.dot(&tau_vec()).is_zero() {
            return Ok(false);
        }
        // b ∈ L, so b* ∈ L*; it remains to check the plane
        if !b.star().dot(&tau_conj_vec()).is_zero() {
            return Ok(false);
        }
    }
    let patch = model.patch(&model.t, &GoldenRat::from_int(6))?;
    for x in patch.values() {
        let a = &x - &model.t;
        if height(&a).height.is_zero() {
            let z = phi(&a)?;
            if !z.is_integral() || phi_inverse(&z) != a {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

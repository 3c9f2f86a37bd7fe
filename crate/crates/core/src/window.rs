//! Polyhedral windows in internal space.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::golden::{GoldenInt, GoldenRat};
use crate::hull::Hull3;
use crate::icosian::{rotation_group, RotationGroupKind};
use crate::linalg::{lcm, QVec3};

/// Translation of the window. Exact shifts keep every membership decision exact.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Shift {
    Exact(QVec3),
    Approximate([f64; 3]),
}

impl Shift {
    pub fn zero() -> Shift {
        Shift::Exact(QVec3::zero())
    }

    pub fn to_f64(&self) -> [f64; 3] {
        match self {
            Shift::Exact(v) => v.to_f64(),
            Shift::Approximate(v) => *v,
        }
    }

    pub fn exact(&self) -> Option<&QVec3> {
        match self {
            Shift::Exact(v) => Some(v),
            Shift::Approximate(_) => None,
        }
    }
}

/// Halfspace `normal · y ≤ offset` bounding the unshifted window.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Facet {
    pub normal: QVec3,
    pub offset: GoldenRat,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Location {
    Interior,
    Boundary,
    Outside,
}

/// Facet inequality `n · m ≤ k` for doubled internal coordinates `m = 2y`,
/// with the shift folded in and all denominators cleared.
#[derive(Clone, Debug)]
pub(crate) struct IntegralFacet {
    pub n: [GoldenInt; 3],
    pub k: GoldenInt,
    nf: [f64; 3],
    kf: f64,
}

impl IntegralFacet {
    fn exact_sign(&self, m: &[GoldenInt; 3]) -> i32 {
        let lhs = &(&(&self.n[0] * &m[0]) + &(&self.n[1] * &m[1])) + &(&self.n[2] * &m[2]);
        (&lhs - &self.k).sign()
    }
}

/// Convex polytope `s + W` given by the vertices of `W` and the shift `s`.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(try_from = "WindowSpec", into = "WindowSpec")]
pub struct Window {
    vertices: Vec<QVec3>,
    facets: Vec<Facet>,
    shift: Shift,
    hull: Hull3,
    integral: Option<Vec<IntegralFacet>>,
}

#[derive(Serialize, Deserialize)]
struct WindowSpec {
    vertices: Vec<QVec3>,
    shift: Shift,
}

impl TryFrom<WindowSpec> for Window {
    type Error = Error;
    fn try_from(s: WindowSpec) -> Result<Window> {
        Window::from_vertices(&s.vertices, s.shift)
    }
}

impl From<Window> for WindowSpec {
    fn from(w: Window) -> WindowSpec {
        WindowSpec { vertices: w.vertices, shift: w.shift }
    }
}

impl PartialEq for Window {
    fn eq(&self, other: &Window) -> bool {
        self.vertices == other.vertices && self.shift == other.shift
    }
}

impl Window {
    /// Convex hull of `points`, translated by `shift`.
    pub fn from_vertices(points: &[QVec3], shift: Shift) -> Result<Window> {
        let hull = Hull3::new(points);
        if !hull.is_solid() {
            return Err(Error::EmptyWindowInterior);
        }
        let mut vertices = hull.vertices();
        vertices.sort();
        let facets = hull.facet_planes().into_iter().map(|(normal, offset)| Facet { normal, offset }).collect();
        let mut w = Window { vertices, facets, shift, hull, integral: None };
        w.integral = w.shift.exact().map(|s| w.integral_facets(s));
        Ok(w)
    }

    /// The regular icosahedron with vertex set `Y_h*(τ′,0,1)`, shifted by `10⁻³(1,1,1)`.
    pub fn icosahedron() -> Window {
        let s = GoldenRat::ratio(1, 1000);
        Window::icosahedron_with_shift(Shift::Exact(QVec3::new(s.clone(), s.clone(), s)))
    }

    pub fn icosahedron_with_shift(shift: Shift) -> Window {
        let v = QVec3::new(GoldenRat::tau_conj(), 0.into(), 1.into());
        let mut orbit: Vec<QVec3> = rotation_group(RotationGroupKind::Yhstar).iter().map(|m| m.apply(&v)).collect();
        orbit.sort();
        orbit.dedup();
        Window::from_vertices(&orbit, shift).expect("icosahedron is solid")
    }

    pub fn with_shift(&self, shift: Shift) -> Window {
        Window::from_vertices(&self.vertices, shift).expect("translate of a solid window")
    }

    pub fn vertices(&self) -> &[QVec3] {
        &self.vertices
    }

    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    pub fn shift(&self) -> &Shift {
        &self.shift
    }

    fn integral_facets(&self, s: &QVec3) -> Vec<IntegralFacet> {
        let two = GoldenRat::from_int(2);
        self.facets
            .iter()
            .map(|f| {
                let rhs = &two * &(&f.offset + &f.normal.dot(s));
                let d = lcm(&f.normal.denominator_lcm(), rhs.denom());
                let n = f.normal.to_integral(&d);
                let k = rhs.scale_int(&d).to_golden_int().unwrap();
                let nf = [n[0].to_f64(), n[1].to_f64(), n[2].to_f64()];
                let kf = k.to_f64();
                IntegralFacet { n, k, nf, kf }
            })
            .collect()
    }

    /// Exact location of `y` relative to `s + W`. With an approximate shift,
    /// fails only when a facet test cannot be certified.
    pub fn classify(&self, y: &QVec3) -> Result<Location> {
        match &self.shift {
            Shift::Exact(s) => {
                let d = y - s;
                let mut boundary = false;
                for f in &self.facets {
                    match (&f.normal.dot(&d) - &f.offset).sign() {
                        1 => return Ok(Location::Outside),
                        0 => boundary = true,
                        _ => {}
                    }
                }
                Ok(if boundary { Location::Boundary } else { Location::Interior })
            }
            Shift::Approximate(s) => {
                let mut inside = true;
                for f in &self.facets {
                    let exact = &f.normal.dot(y) - &f.offset;
                    let nf = f.normal.to_f64();
                    let ns = nf[0] * s[0] + nf[1] * s[1] + nf[2] * s[2];
                    let v = exact.to_f64() - ns;
                    let tol = 1e-12 * (1.0 + exact.to_f64().abs() + ns.abs());
                    if v.abs() <= tol {
                        return Err(Error::ApproximateShift);
                    }
                    if v > 0.0 {
                        inside = false;
                    }
                }
                Ok(if inside { Location::Interior } else { Location::Outside })
            }
        }
    }

    /// Location of `m / 2` for an integral vector `m`; the hot path of patch enumeration.
    pub fn classify_doubled(&self, m: &[GoldenInt; 3]) -> Result<Location> {
        let Some(facets) = &self.integral else {
            return self.classify(&QVec3::from_doubled(m));
        };
        let mf = [m[0].to_f64(), m[1].to_f64(), m[2].to_f64()];
        Ok(classify_integral(facets, m, &mf))
    }

    pub(crate) fn integral(&self) -> Option<&[IntegralFacet]> {
        self.integral.as_deref()
    }

    /// Largest distance of a vertex of `W` from the origin, rounded up.
    pub fn circumradius_f64(&self) -> f64 {
        self.vertices.iter().map(|v| v.norm2().to_f64().sqrt()).fold(0.0, f64::max) * (1.0 + 1e-12)
    }

    /// Coordinatewise bounds of `W` (unshifted).
    pub fn bounding_box_f64(&self) -> ([f64; 3], [f64; 3]) {
        let mut lo = [f64::INFINITY; 3];
        let mut hi = [f64::NEG_INFINITY; 3];
        for v in &self.vertices {
            let f = v.to_f64();
            for i in 0..3 {
                lo[i] = lo[i].min(f[i]);
                hi[i] = hi[i].max(f[i]);
            }
        }
        (lo, hi)
    }

    /// Exact centroid of the unshifted body `W`.
    pub fn body_centroid(&self) -> QVec3 {
        let o = self.vertices.iter().fold(QVec3::zero(), |acc, v| &acc + v).scale(&GoldenRat::ratio(1, self.vertices.len() as i64));
        let mut vol = GoldenRat::zero();
        let mut moment = QVec3::zero();
        for [a, b, c] in self.hull.triangles() {
            let (a, b, c) = (&a - &o, &b - &o, &c - &o);
            let det = a.dot(&b.cross(&c));
            let centre = &(&a + &b) + &c;
            moment = &moment + &centre.scale(&det);
            vol = &vol + &det;
        }
        // tetrahedron (o,a,b,c) has centroid o + (a+b+c)/4 and volume det/6
        &o + &moment.scale(&(&GoldenRat::ratio(1, 4) / &vol))
    }

    /// Exact volume of `W`.
    pub fn volume(&self) -> GoldenRat {
        let o = &self.vertices[0];
        let total = self.hull.triangles().iter().fold(GoldenRat::zero(), |acc, [a, b, c]| {
            let (a, b, c) = (a - o, b - o, c - o);
            &acc + &a.dot(&b.cross(&c))
        });
        &total * &GoldenRat::ratio(1, 6)
    }

    /// Centroid of `s + W`; exact when the shift is.
    pub fn centroid(&self) -> Shift {
        let c = self.body_centroid();
        match &self.shift {
            Shift::Exact(s) => Shift::Exact(&c + s),
            Shift::Approximate(s) => {
                let f = c.to_f64();
                Shift::Approximate([f[0] + s[0], f[1] + s[1], f[2] + s[2]])
            }
        }
    }
}

pub(crate) fn classify_integral(facets: &[IntegralFacet], m: &[GoldenInt; 3], mf: &[f64; 3]) -> Location {
    let mut ambiguous = false;
    for f in facets {
        let terms = [f.nf[0] * mf[0], f.nf[1] * mf[1], f.nf[2] * mf[2]];
        let v = terms[0] + terms[1] + terms[2] - f.kf;
        let scale = terms[0].abs() + terms[1].abs() + terms[2].abs() + f.kf.abs() + 1.0;
        if v > 1e-9 * scale {
            return Location::Outside;
        }
        if v >= -1e-9 * scale {
            ambiguous = true;
        }
    }
    if !ambiguous {
        return Location::Interior;
    }
    let mut boundary = false;
    for f in facets {
        match f.exact_sign(m) {
            1 => return Location::Outside,
            0 => boundary = true,
            _ => {}
        }
    }
    if boundary {
        Location::Boundary
    } else {
        Location::Interior
    }
}

/// `true` when every facet normal and offset of `w` is stored without loss.
pub fn is_exact(w: &Window) -> bool {
    w.integral.is_some()
}

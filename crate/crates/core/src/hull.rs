//! Convex hulls with exact orientation predicates over `Q(τ)`.
//!
//! The planar hull works on coordinate pairs in any fixed affine frame:
//! containment is affine-invariant, so callers may pass coordinates in a
//! non-orthonormal basis (e.g. `{1, ζ₅}`). The spatial hull is built
//! incrementally on integral coordinates after clearing denominators.

use std::cmp::Ordering;
use std::collections::HashSet;

use crate::golden::{GoldenInt, GoldenRat};
use crate::int::Int;
use crate::linalg::{lcm, QVec3};

pub type P2 = [GoldenRat; 2];

/// Sign of the cross product `(b - a) × (c - a)`.
pub fn orient2(a: &P2, b: &P2, c: &P2) -> i32 {
    let ux = &b[0] - &a[0];
    let uy = &b[1] - &a[1];
    let vx = &c[0] - &a[0];
    let vy = &c[1] - &a[1];
    (&(&ux * &vy) - &(&uy * &vx)).sign()
}

fn cmp_p2(a: &P2, b: &P2) -> Ordering {
    a[0].cmp(&b[0]).then_with(|| a[1].cmp(&b[1]))
}

/// Convex hull of a planar point set, vertices in counter-clockwise order
/// without collinear points.
#[derive(Clone, Debug)]
pub struct Hull2 {
    pub vertices: Vec<P2>,
}

impl Hull2 {
    pub fn new(points: &[P2]) -> Hull2 {
        let mut pts: Vec<P2> = points.to_vec();
        pts.sort_by(cmp_p2);
        pts.dedup();
        if pts.len() <= 2 {
            return Hull2 { vertices: pts };
        }
        let mut lower: Vec<P2> = Vec::new();
        for p in &pts {
            while lower.len() >= 2 && orient2(&lower[lower.len() - 2], &lower[lower.len() - 1], p) <= 0 {
                lower.pop();
            }
            lower.push(p.clone());
        }
        let mut upper: Vec<P2> = Vec::new();
        for p in pts.iter().rev() {
            while upper.len() >= 2 && orient2(&upper[upper.len() - 2], &upper[upper.len() - 1], p) <= 0 {
                upper.pop();
            }
            upper.push(p.clone());
        }
        lower.pop();
        upper.pop();
        lower.extend(upper);
        if lower.len() == 2 && lower[0] == lower[1] {
            lower.pop();
        }
        Hull2 { vertices: lower }
    }

    /// Closed containment.
    pub fn contains(&self, q: &P2) -> bool {
        match self.vertices.len() {
            0 => false,
            1 => &self.vertices[0] == q,
            2 => {
                let (a, b) = (&self.vertices[0], &self.vertices[1]);
                orient2(a, b, q) == 0
                    && cmp_p2(q, min_p2(a, b)) != Ordering::Less
                    && cmp_p2(q, max_p2(a, b)) != Ordering::Greater
            }
            n => (0..n).all(|i| orient2(&self.vertices[i], &self.vertices[(i + 1) % n], q) >= 0),
        }
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.vertices.len() >= 3
    }
}

fn min_p2<'a>(a: &'a P2, b: &'a P2) -> &'a P2 {
    if cmp_p2(a, b) == Ordering::Greater {
        b
    } else {
        a
    }
}

fn max_p2<'a>(a: &'a P2, b: &'a P2) -> &'a P2 {
    if cmp_p2(a, b) == Ordering::Greater {
        a
    } else {
        b
    }
}

pub type Z3 = [GoldenInt; 3];

fn zsub(a: &Z3, b: &Z3) -> Z3 {
    [&a[0] - &b[0], &a[1] - &b[1], &a[2] - &b[2]]
}

fn zcross(a: &Z3, b: &Z3) -> Z3 {
    [
        &(&a[1] * &b[2]) - &(&a[2] * &b[1]),
        &(&a[2] * &b[0]) - &(&a[0] * &b[2]),
        &(&a[0] * &b[1]) - &(&a[1] * &b[0]),
    ]
}

fn zdot(a: &Z3, b: &Z3) -> GoldenInt {
    &(&(&a[0] * &b[0]) + &(&a[1] * &b[1])) + &(&a[2] * &b[2])
}

fn zis_zero(a: &Z3) -> bool {
    a.iter().all(GoldenInt::is_zero)
}

/// Supporting plane `normal · x ≤ offset` of a hull face, in the integral frame.
#[derive(Clone, Debug)]
struct Face {
    idx: [usize; 3],
    normal: Z3,
    offset: GoldenInt,
}

impl Face {
    fn new(pts: &[Z3], idx: [usize; 3]) -> Face {
        let [a, b, c] = idx;
        let normal = zcross(&zsub(&pts[b], &pts[a]), &zsub(&pts[c], &pts[a]));
        let offset = zdot(&normal, &pts[a]);
        Face { idx, normal, offset }
    }

    fn side(&self, p: &Z3) -> i32 {
        (&zdot(&self.normal, p) - &self.offset).sign()
    }
}

#[derive(Clone, Debug)]
enum Shape {
    Empty,
    Point(Z3),
    Segment(Z3, Z3),
    Planar { normal: Z3, origin: Z3, drop_axis: usize, hull: Hull2 },
    Solid { faces: Vec<Face> },
}

/// Exact convex hull of a finite point set in `Q(τ)³`, with degenerate
/// (planar, collinear, single-point) cases handled explicitly.
#[derive(Clone, Debug)]
pub struct Hull3 {
    scale: Int,
    pts: Vec<Z3>,
    shape: Shape,
}

fn project(p: &Z3, drop_axis: usize) -> P2 {
    let keep: Vec<usize> = (0..3).filter(|&i| i != drop_axis).collect();
    [p[keep[0]].clone().into(), p[keep[1]].clone().into()]
}

impl Hull3 {
    pub fn new(points: &[QVec3]) -> Hull3 {
        let scale = points.iter().fold(Int::ONE, |acc, p| lcm(&acc, &p.denominator_lcm()));
        let mut seen = HashSet::new();
        let pts: Vec<Z3> = points
            .iter()
            .map(|p| p.to_integral(&scale))
            .filter(|z| seen.insert(z.clone()))
            .collect();
        let shape = Self::build(&pts);
        Hull3 { scale, pts, shape }
    }

    fn build(pts: &[Z3]) -> Shape {
        if pts.is_empty() {
            return Shape::Empty;
        }
        let p0 = 0;
        let Some(p1) = (1..pts.len()).next() else {
            return Shape::Point(pts[0].clone());
        };
        let d1 = zsub(&pts[p1], &pts[p0]);
        let Some(p2) = (2..pts.len()).find(|&i| !zis_zero(&zcross(&d1, &zsub(&pts[i], &pts[p0])))) else {
            // collinear: keep the two extreme points along d1
            let key = |z: &Z3| zdot(&d1, z);
            let lo = pts.iter().min_by(|a, b| key(a).cmp(&key(b))).unwrap().clone();
            let hi = pts.iter().max_by(|a, b| key(a).cmp(&key(b))).unwrap().clone();
            return Shape::Segment(lo, hi);
        };
        let normal = zcross(&d1, &zsub(&pts[p2], &pts[p0]));
        let off0 = zdot(&normal, &pts[p0]);
        let Some(p3) = (3..pts.len()).find(|&i| !(&zdot(&normal, &pts[i]) - &off0).is_zero()) else {
            let drop_axis = (0..3).find(|&i| !normal[i].is_zero()).unwrap();
            let proj: Vec<P2> = pts.iter().map(|p| project(p, drop_axis)).collect();
            return Shape::Planar { normal, origin: pts[p0].clone(), drop_axis, hull: Hull2::new(&proj) };
        };

        let tet = [p0, p1, p2, p3];
        let mut faces: Vec<Face> = Vec::new();
        for skip in 0..4 {
            let tri: Vec<usize> = (0..4).filter(|&i| i != skip).map(|i| tet[i]).collect();
            let mut f = Face::new(pts, [tri[0], tri[1], tri[2]]);
            if f.side(&pts[tet[skip]]) > 0 {
                f = Face::new(pts, [tri[0], tri[2], tri[1]]);
            }
            faces.push(f);
        }
        for (i, p) in pts.iter().enumerate() {
            if tet.contains(&i) {
                continue;
            }
            let visible: Vec<bool> = faces.iter().map(|f| f.side(p) > 0).collect();
            if !visible.iter().any(|&v| v) {
                continue;
            }
            let mut vis_edges = HashSet::new();
            for (f, _) in faces.iter().zip(&visible).filter(|(_, &v)| v) {
                for k in 0..3 {
                    vis_edges.insert((f.idx[k], f.idx[(k + 1) % 3]));
                }
            }
            let horizon: Vec<(usize, usize)> =
                vis_edges.iter().filter(|&&(a, b)| !vis_edges.contains(&(b, a))).cloned().collect();
            let mut kept: Vec<Face> = faces.into_iter().zip(visible).filter(|(_, v)| !v).map(|(f, _)| f).collect();
            for (a, b) in horizon {
                kept.push(Face::new(pts, [a, b, i]));
            }
            faces = kept;
        }
        Shape::Solid { faces }
    }

    fn scaled(&self, q: &QVec3) -> (Z3, Int) {
        let e = q.denominator_lcm();
        (q.to_integral(&e), e)
    }

    /// Closed containment of `q` in the hull.
    pub fn contains(&self, q: &QVec3) -> bool {
        // compare q·scale with the integral frame: q·scale = w·scale/e
        let (w, e) = self.scaled(q);
        let ws: Z3 = [w[0].scale(&self.scale), w[1].scale(&self.scale), w[2].scale(&self.scale)];
        let lift = |z: &Z3| -> Z3 { [z[0].scale(&e), z[1].scale(&e), z[2].scale(&e)] };
        match &self.shape {
            Shape::Empty => false,
            Shape::Point(p) => lift(p) == ws,
            Shape::Segment(a, b) => {
                let (a, b) = (lift(a), lift(b));
                let d = zsub(&b, &a);
                let r = zsub(&ws, &a);
                if !zis_zero(&zcross(&d, &r)) {
                    return false;
                }
                let t = zdot(&d, &r);
                t.sign() >= 0 && t <= zdot(&d, &d)
            }
            Shape::Planar { normal, origin, drop_axis, hull } => {
                if !zdot(normal, &zsub(&ws, &lift(origin))).is_zero() {
                    return false;
                }
                // hull lives in the unlifted integral frame; divide the query by e
                let er: GoldenRat = GoldenRat::from_int(e.clone());
                let keep: Vec<usize> = (0..3).filter(|&i| i != *drop_axis).collect();
                let qp: P2 = [
                    &GoldenRat::from(ws[keep[0]].clone()) / &er,
                    &GoldenRat::from(ws[keep[1]].clone()) / &er,
                ];
                hull.contains(&qp)
            }
            Shape::Solid { faces } => faces.iter().all(|f| {
                let v = &zdot(&f.normal, &ws) - &f.offset.scale(&e);
                v.sign() <= 0
            }),
        }
    }

    pub fn is_solid(&self) -> bool {
        matches!(self.shape, Shape::Solid { .. })
    }

    /// Face planes `(normal, offset)` with `normal · x ≤ offset` in original
    /// coordinates, coplanar triangles merged. Only for solid hulls.
    pub fn facet_planes(&self) -> Vec<(QVec3, GoldenRat)> {
        let Shape::Solid { faces } = &self.shape else {
            return Vec::new();
        };
        let s: GoldenRat = GoldenRat::from_int(self.scale.clone());
        let mut out: Vec<(QVec3, GoldenRat)> = Vec::new();
        for f in faces {
            let n = QVec3::from_golden(&f.normal);
            let lead = n.0.iter().find(|c| !c.is_zero()).unwrap().abs();
            let inv = lead.recip().unwrap();
            let normal = n.scale(&inv);
            let offset = &(&GoldenRat::from(f.offset.clone()) * &inv) / &s;
            if !out.iter().any(|(m, o)| m == &normal && o == &offset) {
                out.push((normal, offset));
            }
        }
        out
    }

    /// Boundary triangles, outward oriented, in original coordinates. Only for solid hulls.
    pub fn triangles(&self) -> Vec<[QVec3; 3]> {
        let Shape::Solid { faces } = &self.shape else {
            return Vec::new();
        };
        let inv = GoldenRat::from_int(self.scale.clone()).recip().unwrap();
        let back = |i: usize| QVec3::from_golden(&self.pts[i]).scale(&inv);
        faces.iter().map(|f| [back(f.idx[0]), back(f.idx[1]), back(f.idx[2])]).collect()
    }

    /// Extreme points of the hull in original coordinates.
    pub fn vertices(&self) -> Vec<QVec3> {
        let s: GoldenRat = GoldenRat::from_int(self.scale.clone());
        let back = |z: &Z3| QVec3::from_golden(z).scale(&s.recip().unwrap());
        match &self.shape {
            Shape::Empty => vec![],
            Shape::Point(p) => vec![back(p)],
            Shape::Segment(a, b) => vec![back(a), back(b)],
            Shape::Planar { .. } | Shape::Solid { .. } => {
                let planes = self.facet_planes();
                let mut out = Vec::new();
                for p in &self.pts {
                    let q = back(p);
                    let extreme = match &self.shape {
                        Shape::Solid { .. } => {
                            let tight: Vec<&QVec3> = planes.iter().filter(|(n, o)| &n.dot(&q) == o).map(|(n, _)| n).collect();
                            rank(&tight) == 3
                        }
                        Shape::Planar { drop_axis, hull, .. } => hull.vertices.contains(&project(p, *drop_axis)),
                        _ => unreachable!(),
                    };
                    if extreme {
                        out.push(q);
                    }
                }
                out
            }
        }
    }
}

fn rank(vs: &[&QVec3]) -> usize {
    if vs.is_empty() {
        return 0;
    }
    let a = vs[0];
    let Some(b) = vs.iter().find(|v| !a.is_parallel(v)) else {
        return 1;
    };
    let n = a.cross(b);
    if vs.iter().any(|v| !n.dot(v).is_zero()) {
        3
    } else {
        2
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn p2(x: i64, y: i64) -> P2 {
        [x.into(), y.into()]
    }

    #[test]
    fn planar_square_with_collinear_points() {
        let pts = vec![p2(0, 0), p2(1, 0), p2(2, 0), p2(2, 2), p2(0, 2), p2(1, 1), p2(0, 1)];
        let h = Hull2::new(&pts);
        assert_eq!(h.vertices.len(), 4);
        assert!(h.contains(&p2(1, 1)));
        assert!(h.contains(&p2(2, 1)));
        assert!(!h.contains(&p2(3, 1)));
    }

    #[test]
    fn degenerate_planar_hulls() {
        let seg = Hull2::new(&[p2(0, 0), p2(2, 2), p2(1, 1)]);
        assert_eq!(seg.vertices.len(), 2);
        assert!(seg.contains(&p2(1, 1)));
        assert!(!seg.contains(&p2(3, 3)));
        assert!(!seg.contains(&p2(1, 0)));
        let pt = Hull2::new(&[p2(5, 5), p2(5, 5)]);
        assert!(pt.contains(&p2(5, 5)));
        assert!(!pt.contains(&p2(5, 4)));
    }

    #[test]
    fn cube_hull() {
        let mut pts = Vec::new();
        for x in 0..3 {
            for y in 0..3 {
                for z in 0..3 {
                    pts.push(QVec3::from_ints(x, y, z));
                }
            }
        }
        let h = Hull3::new(&pts);
        assert!(h.is_solid());
        assert_eq!(h.facet_planes().len(), 6);
        assert_eq!(h.vertices().len(), 8);
        assert!(h.contains(&QVec3::from_ints(1, 1, 1)));
        assert!(h.contains(&QVec3::from_ints(2, 1, 0)));
        assert!(!h.contains(&QVec3::from_ints(3, 1, 1)));
        let half = GoldenRat::half();
        assert!(h.contains(&QVec3::from_ints(3, 3, 3).scale(&half)));
        assert!(!h.contains(&QVec3::new(GoldenRat::tau(), GoldenRat::tau(), GoldenRat::from_int(2) + GoldenRat::ratio(1, 100))));
    }

    #[test]
    fn flat_and_collinear_hulls() {
        let flat = Hull3::new(&[QVec3::from_ints(0, 0, 1), QVec3::from_ints(2, 0, 1), QVec3::from_ints(0, 2, 1)]);
        assert!(flat.contains(&QVec3::from_ints(1, 1, 1)));
        assert!(!flat.contains(&QVec3::from_ints(1, 1, 0)));
        assert!(!flat.contains(&QVec3::from_ints(2, 2, 1)));
        let line = Hull3::new(&[QVec3::from_ints(0, 0, 0), QVec3::from_ints(2, 2, 2)]);
        assert!(line.contains(&QVec3::from_ints(1, 1, 1)));
        assert!(!line.contains(&QVec3::from_ints(3, 3, 3)));
    }

    /// Oracle: q ∈ conv(P) iff no plane through three points of P has all of
    /// P weakly on one side and q strictly on the other (for full-dimensional P).
    fn brute_contains(pts: &[QVec3], q: &QVec3) -> bool {
        let n = pts.len();
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let nrm = (&pts[j] - &pts[i]).cross(&(&pts[k] - &pts[i]));
                    if nrm.is_zero() {
                        continue;
                    }
                    let s: Vec<i32> = pts.iter().map(|p| nrm.dot(&(p - &pts[i])).sign()).collect();
                    let sq = nrm.dot(&(q - &pts[i])).sign();
                    if s.iter().all(|&x| x <= 0) && sq > 0 {
                        return false;
                    }
                    if s.iter().all(|&x| x >= 0) && sq < 0 {
                        return false;
                    }
                }
            }
        }
        true
    }

    #[test]
    fn incremental_hull_matches_brute_force() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..40 {
            let n = rng.gen_range(5..11);
            let pts: Vec<QVec3> = (0..n)
                .map(|_| {
                    QVec3([0, 1, 2].map(|_| GoldenRat::from_parts(rng.gen_range(-2..3), rng.gen_range(-2..3), 1)))
                })
                .collect();
            let h = Hull3::new(&pts);
            if !h.is_solid() {
                continue;
            }
            for _ in 0..20 {
                let q = QVec3([0, 1, 2].map(|_| GoldenRat::from_parts(rng.gen_range(-3..4), rng.gen_range(-3..4), 2)));
                assert_eq!(h.contains(&q), brute_contains(&pts, &q), "{pts:?} {q:?}");
            }
            for p in &pts {
                assert!(h.contains(p));
            }
        }
    }
}

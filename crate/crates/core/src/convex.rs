//! Convex subsets of model sets and slices, the direction sets `U₅` and
//! `U_ico`, property (E), and sampling experiments for X-ray uniqueness.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::direction::Direction;
use crate::error::{Error, Result};
use crate::golden::{GoldenInt, GoldenRat};
use crate::hull::{Hull2, Hull3, P2};
use crate::icosian::ModuleTag;
use crate::linalg::QVec3;
use crate::modelset::ModelSetPatch;
use crate::slicing::{phi_inverse, slices_by_height, CycPoint, SliceKey};
use crate::tomography::{grid, same_xrays, xray};

/// The set `O` of `Z[ζ₅]`-representatives of `U₅`.
pub fn u5_reps() -> [CycPoint; 4] {
    [
        CycPoint::from_ints((1, 1), (1, 0)),
        CycPoint::from_ints((-1, 1), (1, 0)),
        CycPoint::from_ints((0, -1), (1, 0)),
        CycPoint::from_ints((0, 2), (-1, 0)),
    ]
}

pub fn u5() -> Vec<Direction> {
    u5_reps().iter().map(|o| Direction::cyclotomic(&o.alpha, &o.beta).expect("nonzero")).collect()
}

/// `Φ⁻¹(U₅)` as `L`-directions in the plane `H^{(τ,0,1)}`.
pub fn u_ico(tag: ModuleTag) -> Vec<Direction> {
    u5_reps().iter().map(|o| Direction::spatial(&phi_inverse(o), tag).expect("nonzero")).collect()
}

/// `α_o β_{o′} − β_o α_{o′}` and whether it is a unit of `Z[τ]`.
pub fn property_e_check(o: &CycPoint, o2: &CycPoint) -> Result<(GoldenInt, bool)> {
    if !o.is_integral() || !o2.is_integral() {
        return Err(Error::PreconditionViolated("representatives must lie in Z[ζ₅]".into()));
    }
    let det = (&(&o.alpha * &o2.beta) - &(&o.beta * &o2.alpha)).to_golden_int().unwrap();
    if det.is_zero() {
        return Err(Error::PreconditionViolated("representatives are parallel".into()));
    }
    let unit = det.is_unit();
    Ok((det, unit))
}

/// Whether every point of `G^F_U` has both coordinates in `Z[τ]`.
pub fn grid_integrality(f: &[CycPoint], u: &[Direction]) -> Result<bool> {
    let pts: Vec<QVec3> = f.iter().map(CycPoint::to_plane).collect();
    Ok(grid(&pts, u)?.iter().all(|x| CycPoint::from_plane(x).is_integral()))
}

/// A convex subset `C = conv(C) ∩ S` together with its hull vertices.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConvexWitness {
    pub points: Vec<QVec3>,
    pub hull_vertices: Vec<QVec3>,
}

impl ConvexWitness {
    /// Checks `C = conv(C) ∩ S` and records the hull vertices.
    pub fn new(c: &[QVec3], s: &[QVec3], ball: Option<(&QVec3, &GoldenRat)>) -> Result<ConvexWitness> {
        if !is_convex_subset(c, s, ball)? {
            return Err(Error::PreconditionViolated("set is not convex in its context".into()));
        }
        let mut points = c.to_vec();
        points.sort();
        let mut hull_vertices = Hull3::new(c).vertices();
        hull_vertices.sort();
        Ok(ConvexWitness { points, hull_vertices })
    }
}

/// `C = conv(C) ∩ S` for planar point sets. If `disc = (centre, radius²)` is
/// the region `S` was enumerated in, the hull must lie strictly inside it.
pub fn is_convex_subset_2d(c: &[CycPoint], s: &[CycPoint], disc: Option<(&CycPoint, &GoldenRat)>) -> Result<bool> {
    let cs: HashSet<&CycPoint> = c.iter().collect();
    let ss: HashSet<&CycPoint> = s.iter().collect();
    if !cs.iter().all(|x| ss.contains(x)) {
        return Err(Error::PreconditionViolated("C is not a subset of S".into()));
    }
    let hull = Hull2::new(&c.iter().map(CycPoint::p2).collect::<Vec<P2>>());
    if let Some((center, r2)) = disc {
        for v in &hull.vertices {
            if &CycPoint::new(v[0].clone(), v[1].clone()).sub(center).norm2() >= r2 {
                return Err(Error::HullTouchesPatchBoundary);
            }
        }
    }
    Ok(s.iter().filter(|x| !cs.contains(x)).all(|x| !hull.contains(&x.p2())))
}

/// `C = conv(C) ∩ S` in space. If `ball = (centre, radius²)` is given, the hull
/// must lie strictly inside it.
pub fn is_convex_subset(c: &[QVec3], s: &[QVec3], ball: Option<(&QVec3, &GoldenRat)>) -> Result<bool> {
    let cs: HashSet<&QVec3> = c.iter().collect();
    let ss: HashSet<&QVec3> = s.iter().collect();
    if !cs.iter().all(|x| ss.contains(x)) {
        return Err(Error::PreconditionViolated("C is not a subset of S".into()));
    }
    let hull = Hull3::new(c);
    if let Some((center, r2)) = ball {
        if hull.vertices().iter().any(|v| &(v - center).norm2() >= r2) {
            return Err(Error::HullTouchesPatchBoundary);
        }
    }
    Ok(s.iter().filter(|x| !cs.contains(x)).all(|x| !hull.contains(x)))
}

/// Patch points grouped by slice, for repeated per-slice convexity checks.
pub struct PatchSlices {
    center: QVec3,
    radius2: GoldenRat,
    slices: BTreeMap<SliceKey, Vec<QVec3>>,
}

impl PatchSlices {
    pub fn new(patch: &ModelSetPatch) -> PatchSlices {
        PatchSlices {
            center: patch.center.clone(),
            radius2: &patch.radius * &patch.radius,
            slices: slices_by_height(&patch.values()),
        }
    }

    pub fn slice(&self, h: &SliceKey) -> &[QVec3] {
        self.slices.get(h).map(Vec::as_slice).unwrap_or(&[])
    }

    /// Whether every slice of `C` is a convex subset of the patch slice.
    pub fn is_h_convex(&self, c: &[QVec3]) -> Result<bool> {
        for (h, part) in slices_by_height(c) {
            let hull = Hull3::new(&part);
            if hull.vertices().iter().any(|v| (v - &self.center).norm2() >= self.radius2) {
                return Err(Error::HullTouchesPatchBoundary);
            }
            let ps: HashSet<&QVec3> = part.iter().collect();
            let s = self.slice(&h);
            if !ps.iter().all(|x| s.contains(x)) {
                return Err(Error::PreconditionViolated("C is not a subset of the patch".into()));
            }
            if s.iter().any(|x| !ps.contains(x) && hull.contains(x)) {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Whether every slice of `C` is a convex subset of the corresponding patch slice.
pub fn is_h_convex(c: &[QVec3], patch: &ModelSetPatch) -> Result<bool> {
    PatchSlices::new(patch).is_h_convex(c)
}

/// Parameters for random convex-subset sampling.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct SamplerConfig {
    pub samples: usize,
    pub seed: u64,
    /// Attempts per requested sample before giving up.
    pub attempts_per_sample: usize,
    pub max_generators: usize,
    pub min_radius: f64,
    pub max_radius: f64,
}

impl Default for SamplerConfig {
    fn default() -> Self {
        SamplerConfig { samples: 200, seed: 0, attempts_per_sample: 20, max_generators: 7, min_radius: 0.5, max_radius: 4.0 }
    }
}

/// Two distinct sampled sets with identical X-ray signatures.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Collision {
    pub first: usize,
    pub second: usize,
    /// For spatial sets: whether some slice carries distinct sets with equal X-rays.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub localized: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct UniquenessReport {
    pub directions: Vec<Direction>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub slice_height: Option<SliceKey>,
    pub samples: usize,
    pub attempts: usize,
    pub collisions: Vec<Collision>,
    pub cardinalities: Vec<usize>,
    pub all_convex: bool,
}

type Signature = Vec<BTreeMap<QVec3, usize>>;

fn signature(c: &[QVec3], u: &[Direction]) -> Signature {
    u.iter().map(|d| xray(c, d).counts).collect()
}

fn attempt_rng(seed: u64, i: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(i as u64);
    rng
}

/// Runs `draw` on attempt indices in parallel batches, keeping the first
/// `samples` distinct results in attempt order.
fn sample_distinct<F>(cfg: &SamplerConfig, draw: F) -> (Vec<Vec<QVec3>>, usize)
where
    F: Fn(&mut ChaCha8Rng) -> Option<Vec<QVec3>> + Sync,
{
    let budget = cfg.samples * cfg.attempts_per_sample.max(1);
    let batch = 64;
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    let mut attempts = 0;
    let mut start = 0;
    while out.len() < cfg.samples && start < budget {
        let end = (start + batch).min(budget);
        let drawn: Vec<Option<Vec<QVec3>>> = (start..end).into_par_iter().map(|i| draw(&mut attempt_rng(cfg.seed, i))).collect();
        for c in drawn {
            attempts += 1;
            if let Some(c) = c {
                if seen.insert(c.clone()) {
                    out.push(c);
                    if out.len() == cfg.samples {
                        break;
                    }
                }
            }
        }
        start = end;
    }
    (out, attempts)
}

fn find_collisions(sets: &[Vec<QVec3>], u: &[Direction]) -> Vec<(usize, usize)> {
    let sigs: Vec<Signature> = sets.par_iter().map(|c| signature(c, u)).collect();
    let mut first: HashMap<&Signature, usize> = HashMap::new();
    let mut out = Vec::new();
    for (i, s) in sigs.iter().enumerate() {
        match first.get(s) {
            Some(&j) => out.push((j, i)),
            None => {
                first.insert(s, i);
            }
        }
    }
    out
}

fn dist_c(a: (f64, f64), b: (f64, f64)) -> f64 {
    ((a.0 - b.0).powi(2) + (a.1 - b.1).powi(2)).sqrt()
}

/// Random convex subset of a planar point set: the points of `S` in the hull of
/// a few random points of `S` near a random anchor.
fn draw_convex_2d(s: &[CycPoint], zs: &[(f64, f64)], inner: &[usize], cfg: &SamplerConfig, rng: &mut ChaCha8Rng) -> Option<Vec<CycPoint>> {
    let &a = inner.choose(rng)?;
    let rho = rng.gen_range(cfg.min_radius..=cfg.max_radius);
    let near: Vec<usize> = (0..s.len()).filter(|&i| dist_c(zs[i], zs[a]) <= rho + 1e-9).collect();
    let g = rng.gen_range(1..=cfg.max_generators.max(1));
    let mut gens: Vec<P2> = near.choose_multiple(rng, g).map(|&i| s[i].p2()).collect();
    gens.push(s[a].p2());
    let hull = Hull2::new(&gens);
    let mut c: Vec<CycPoint> = near.iter().filter(|&&i| hull.contains(&s[i].p2())).map(|&i| s[i].clone()).collect();
    c.sort();
    Some(c)
}

/// Samples distinct convex subsets of one slice and looks for two with equal
/// X-rays in the planar directions `u`.
pub fn uniqueness_experiment_slice(
    s: &[CycPoint],
    disc_center: &CycPoint,
    disc_radius2: &GoldenRat,
    u: &[Direction],
    cfg: &SamplerConfig,
) -> Result<UniquenessReport> {
    let zs: Vec<(f64, f64)> = s.iter().map(CycPoint::to_complex_f64).collect();
    let cz = disc_center.to_complex_f64();
    let r = disc_radius2.to_f64().max(0.0).sqrt();
    let inner: Vec<usize> = (0..s.len()).filter(|&i| dist_c(zs[i], cz) < r - cfg.max_radius - 1e-6).collect();
    let (sets, attempts) = sample_distinct(cfg, |rng| {
        draw_convex_2d(s, &zs, &inner, cfg, rng).map(|c| c.iter().map(CycPoint::to_plane).collect())
    });
    let mut all_convex = true;
    for c in &sets {
        let cc: Vec<CycPoint> = c.iter().map(CycPoint::from_plane).collect();
        all_convex &= is_convex_subset_2d(&cc, s, Some((disc_center, disc_radius2)))?;
    }
    let collisions = find_collisions(&sets, u)
        .into_iter()
        .filter(|&(i, j)| same_xrays(&sets[i], &sets[j], u))
        .map(|(first, second)| Collision { first, second, localized: None })
        .collect();
    Ok(UniquenessReport {
        directions: u.to_vec(),
        slice_height: None,
        samples: sets.len(),
        attempts,
        collisions,
        cardinalities: sets.iter().map(Vec::len).collect(),
        all_convex,
    })
}

/// Samples distinct convex subsets of a spatial patch and looks for two with
/// equal X-rays in `u`. Every sample is also checked for convexity slice by
/// slice, and any collision is traced to a slice carrying distinct sets with
/// equal X-rays.
pub fn uniqueness_experiment_3d(patch: &ModelSetPatch, u: &[Direction], cfg: &SamplerConfig) -> Result<UniquenessReport> {
    let pts = patch.values();
    let fs: Vec<[f64; 3]> = pts.iter().map(QVec3::to_f64).collect();
    let a = patch.center.to_f64();
    let r = patch.radius.to_f64();
    let d = |x: &[f64; 3], y: &[f64; 3]| (0..3).map(|i| (x[i] - y[i]).powi(2)).sum::<f64>().sqrt();
    let inner: Vec<usize> = (0..pts.len()).filter(|&i| d(&fs[i], &a) < r - cfg.max_radius - 1e-6).collect();
    let (sets, attempts) = sample_distinct(cfg, |rng| {
        let &c0 = inner.choose(rng)?;
        let rho = rng.gen_range(cfg.min_radius..=cfg.max_radius);
        let near: Vec<usize> = (0..pts.len()).filter(|&i| d(&fs[i], &fs[c0]) <= rho + 1e-9).collect();
        let g = rng.gen_range(1..=cfg.max_generators.max(1));
        let mut gens: Vec<QVec3> = near.choose_multiple(rng, g).map(|&i| pts[i].clone()).collect();
        gens.push(pts[c0].clone());
        let hull = Hull3::new(&gens);
        let mut c: Vec<QVec3> = near.iter().filter(|&&i| hull.contains(&pts[i])).map(|&i| pts[i].clone()).collect();
        c.sort();
        Some(c)
    });
    let slices = PatchSlices::new(patch);
    let mut all_convex = true;
    for c in &sets {
        all_convex &= slices.is_h_convex(c)?;
    }
    let collisions = find_collisions(&sets, u)
        .into_iter()
        .filter(|&(i, j)| same_xrays(&sets[i], &sets[j], u))
        .map(|(i, j)| {
            let (si, sj) = (slices_by_height(&sets[i]), slices_by_height(&sets[j]));
            let heights: BTreeSet<&SliceKey> = si.keys().chain(sj.keys()).collect();
            let empty = Vec::new();
            let localized = heights.iter().any(|h| {
                let (a, b) = (si.get(*h).unwrap_or(&empty), sj.get(*h).unwrap_or(&empty));
                a != b && same_xrays(a, b, u)
            });
            Collision { first: i, second: j, localized: Some(localized) }
        })
        .collect();
    Ok(UniquenessReport {
        directions: u.to_vec(),
        slice_height: None,
        samples: sets.len(),
        attempts,
        collisions,
        cardinalities: sets.iter().map(Vec::len).collect(),
        all_convex,
    })
}

/// Solves `w = x·d1 + y·d2` in the plane `z = 0`.
fn planar_coords(w: &QVec3, d1: &QVec3, d2: &QVec3) -> Option<(GoldenRat, GoldenRat)> {
    let det = &(&d1.0[0] * &d2.0[1]) - &(&d1.0[1] * &d2.0[0]);
    let inv = det.recip()?;
    let x = &(&(&w.0[0] * &d2.0[1]) - &(&w.0[1] * &d2.0[0])) * &inv;
    let y = &(&(&d1.0[0] * &w.0[1]) - &(&d1.0[1] * &w.0[0])) * &inv;
    Some((x, y))
}

/// Best-effort search for two distinct convex subsets of a slice with equal
/// X-rays in three planar directions, seeded by affinely regular hexagons with
/// edges parallel to the directions: removing either set of alternate vertices
/// from the hexagon's points leaves sets with equal X-rays.
pub fn three_direction_search<R: Rng>(
    s: &[CycPoint],
    disc: Option<(&CycPoint, &GoldenRat)>,
    u: &[Direction; 3],
    budget: usize,
    rng: &mut R,
) -> Option<(Vec<CycPoint>, Vec<CycPoint>)> {
    if budget == 0 || s.is_empty() {
        return None;
    }
    let (d1, d2, d3) = (&u[0].rep, &u[1].rep, &u[2].rep);
    let (x, y) = planar_coords(d3, d1, d2)?;
    let base1 = d1.scale(&-&x);
    let base2 = d2.scale(&y);
    let set: HashSet<&CycPoint> = s.iter().collect();
    for _ in 0..budget {
        let scale = &GoldenRat::tau_pow(rng.gen_range(-2..=3)) * &GoldenRat::from_int(rng.gen_range(1..=3i64) * if rng.gen() { 1 } else { -1 });
        let e1 = CycPoint::from_plane(&base1.scale(&scale));
        let e2 = CycPoint::from_plane(&base2.scale(&scale));
        let p = s.choose(rng)?;
        let hex = [
            p.clone(),
            p.add(&e1),
            p.add(&e1).add(&e2),
            p.add(&e2).add(&e2),
            p.add(&e2).add(&e2).sub(&e1),
            p.add(&e2).sub(&e1),
        ];
        if !hex.iter().all(|v| set.contains(v)) {
            continue;
        }
        let hull = Hull2::new(&hex.iter().map(CycPoint::p2).collect::<Vec<P2>>());
        let inside: Vec<&CycPoint> = s.iter().filter(|z| hull.contains(&z.p2())).collect();
        let a: HashSet<&CycPoint> = [&hex[0], &hex[2], &hex[4]].into_iter().collect();
        let b: HashSet<&CycPoint> = [&hex[1], &hex[3], &hex[5]].into_iter().collect();
        let mut c1: Vec<CycPoint> = inside.iter().filter(|z| !a.contains(**z)).map(|z| (*z).clone()).collect();
        let mut c2: Vec<CycPoint> = inside.iter().filter(|z| !b.contains(**z)).map(|z| (*z).clone()).collect();
        c1.sort();
        c2.sort();
        let ok = |c: &[CycPoint]| is_convex_subset_2d(c, s, disc).unwrap_or(false);
        let (p1, p2): (Vec<QVec3>, Vec<QVec3>) = (c1.iter().map(CycPoint::to_plane).collect(), c2.iter().map(CycPoint::to_plane).collect());
        if c1 != c2 && ok(&c1) && ok(&c2) && same_xrays(&p1, &p2, u) {
            return Some((c1, c2));
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::icosian::module_contains;
    use crate::modelset::ModelSet;
    use crate::slicing::height;
    use crate::slicing::{cyclotomic_patch, slice_window};

    #[test]
    fn u5_pairwise_non_parallel_and_e() {
        let o = u5_reps();
        let d = u5();
        for i in 0..4 {
            for j in i + 1..4 {
                assert!(!d[i].is_parallel(&d[j]));
                assert!(property_e_check(&o[i], &o[j]).is_ok());
            }
        }
        let (det, unit) = property_e_check(&o[0], &o[2]).unwrap();
        assert_eq!(det, GoldenInt::tau_pow(3));
        assert!(unit);
        assert_eq!(det.norm(), (-1).into());
        let (det, unit) = property_e_check(&o[2], &o[3]).unwrap();
        assert_eq!(det, -GoldenInt::tau());
        assert!(unit);
        let (det, unit) = property_e_check(&o[0], &o[1]).unwrap();
        assert_eq!(det, GoldenInt::from_int(2));
        assert!(!unit);
    }

    #[test]
    fn u_ico_lies_in_plane_and_module() {
        for tag in [ModuleTag::ImIcosian, ModuleTag::Icosian0] {
            for d in u_ico(tag) {
                assert!(height(&d.rep).height.is_zero());
                assert!(module_contains(&d.rep, tag));
            }
        }
    }

    #[test]
    fn grid_integrality_examples() {
        assert!(grid_integrality(&[CycPoint::zero()], &u5()).unwrap());
        let f = vec![CycPoint::from_ints((1, 0), (0, 0)), CycPoint::from_ints((0, 1), (2, -1)), CycPoint::from_ints((3, 1), (1, 1))];
        assert!(grid_integrality(&f, &u5()).unwrap());
    }

    fn central_slice() -> (Vec<CycPoint>, GoldenRat) {
        let model = ModelSet::example_b();
        let w = slice_window(&model, &model.t).unwrap();
        let r = GoldenRat::from_int(6);
        (cyclotomic_patch(&w, &r), &r * &r)
    }

    #[test]
    fn convex_subset_examples() {
        let (s, r2) = central_slice();
        let c0 = CycPoint::zero();
        assert!(is_convex_subset_2d(&[s[0].clone()], &s, None).unwrap());
        let small = GoldenRat::from_int(4);
        let disc: Vec<CycPoint> = s.iter().filter(|z| z.norm2() < small).cloned().collect();
        assert!(is_convex_subset_2d(&disc, &s, Some((&c0, &r2))).unwrap());
        let holed: Vec<CycPoint> = disc.iter().filter(|z| **z != c0).cloned().collect();
        assert!(!is_convex_subset_2d(&holed, &s, Some((&c0, &r2))).unwrap());
        let tiny = GoldenRat::ratio(1, 100);
        assert!(matches!(is_convex_subset_2d(&disc, &s, Some((&c0, &tiny))), Err(Error::HullTouchesPatchBoundary)));
    }

    #[test]
    fn slice_experiment_small() {
        let (s, r2) = central_slice();
        let cfg = SamplerConfig { samples: 30, max_radius: 2.0, ..SamplerConfig::default() };
        let rep = uniqueness_experiment_slice(&s, &CycPoint::zero(), &r2, &u5(), &cfg).unwrap();
        assert_eq!(rep.samples, 30);
        assert!(rep.all_convex);
        assert!(rep.collisions.is_empty());
        let again = uniqueness_experiment_slice(&s, &CycPoint::zero(), &r2, &u5(), &cfg).unwrap();
        assert_eq!(rep, again);
    }

    #[test]
    fn h_convexity() {
        let model = ModelSet::example_b();
        let patch = model.patch(&QVec3::zero(), &GoldenRat::from_int(5)).unwrap();
        let pts = patch.values();
        let slices = PatchSlices::new(&patch);
        let r2 = GoldenRat::from_int(4);
        let ball: Vec<QVec3> = pts.iter().filter(|x| x.norm2() < r2).cloned().collect();
        assert!(slices.is_h_convex(&ball).unwrap());
        let by_h = slices_by_height(&ball);
        let mut it = by_h.values();
        let (a, b) = (it.next().unwrap(), it.last().unwrap());
        let two: Vec<QVec3> = a.iter().chain(b).cloned().collect();
        assert!(slices.is_h_convex(&two).unwrap());
        let big = by_h.values().max_by_key(|v| v.len()).unwrap();
        let hull = Hull3::new(big);
        let interior = big.iter().find(|x| {
            let rest: Vec<QVec3> = big.iter().filter(|y| y != x).cloned().collect();
            Hull3::new(&rest).contains(x)
        });
        if let Some(x) = interior {
            let holed: Vec<QVec3> = big.iter().filter(|y| *y != x).cloned().collect();
            assert!(hull.contains(x));
            assert!(!slices.is_h_convex(&holed).unwrap());
        }
    }

    #[test]
    fn three_direction_search_budget_zero() {
        let (s, _) = central_slice();
        let u = u5();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        assert!(three_direction_search(&s, None, &[u[0].clone(), u[1].clone(), u[2].clone()], 0, &mut rng).is_none());
    }

    #[test]
    fn hexagon_split_has_equal_xrays() {
        // all of a small piece of Z[ζ₅] stands in for a dense slice
        let mut s = Vec::new();
        for a in -4..=4 {
            for b in -4..=4 {
                s.push(CycPoint::from_ints((a, 0), (b, 0)));
            }
        }
        let u = [
            Direction::cyclotomic(&1.into(), &0.into()).unwrap(),
            Direction::cyclotomic(&0.into(), &1.into()).unwrap(),
            Direction::cyclotomic(&1.into(), &(-1).into()).unwrap(),
        ];
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let (c1, c2) = three_direction_search(&s, None, &u, 2000, &mut rng).expect("hexagon in grid");
        assert_ne!(c1, c2);
        let p = |c: &[CycPoint]| c.iter().map(CycPoint::to_plane).collect::<Vec<_>>();
        assert!(same_xrays(&p(&c1), &p(&c2), &u));
    }
}

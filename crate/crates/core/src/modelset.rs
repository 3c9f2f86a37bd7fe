//! Icosahedral model sets `Λ(t, s+W) = t + {α ∈ L | α* ∈ s+W}` and their finite patches.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::golden::{GoldenInt, GoldenRat, Residue, TAU_CONJ_F64, TAU_F64};
use crate::icosian::{integral_module_contains, mb_congruence, mf_congruence, module_contains, ModuleTag};
use crate::linalg::QVec3;
use crate::window::{classify_integral, Location, Window};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ModelSetKind {
    B,
    F,
}

impl ModelSetKind {
    /// The underlying module `L`: `Im(𝕀)` for B-type, `𝕀₀` for F-type.
    pub fn tag(self) -> ModuleTag {
        match self {
            ModelSetKind::B => ModuleTag::ImIcosian,
            ModelSetKind::F => ModuleTag::Icosian0,
        }
    }

    /// The integral module `2L`.
    pub fn numerator_module(self) -> ModuleTag {
        self.tag().numerator_module()
    }

    fn congruence(self, r: [Residue; 3]) -> bool {
        match self {
            ModelSetKind::B => mb_congruence(r),
            ModelSetKind::F => mf_congruence(r),
        }
    }
}

/// A point `num / 2` of `Q(τ)³` with integral doubled numerator.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct IcoPoint {
    pub num: [GoldenInt; 3],
}

impl IcoPoint {
    pub fn new(num: [GoldenInt; 3]) -> IcoPoint {
        IcoPoint { num }
    }

    /// `None` unless `2v` is integral.
    pub fn from_value(v: &QVec3) -> Option<IcoPoint> {
        let d = v.scale(&GoldenRat::from_int(2));
        if !d.is_integral() {
            return None;
        }
        Some(IcoPoint { num: d.to_integral(&1.into()) })
    }

    pub fn value(&self) -> QVec3 {
        QVec3::from_doubled(&self.num)
    }

    /// Coordinatewise conjugate of the value.
    pub fn star(&self) -> QVec3 {
        self.value().star()
    }

    pub fn to_f64(&self) -> [f64; 3] {
        [self.num[0].to_f64() / 2.0, self.num[1].to_f64() / 2.0, self.num[2].to_f64() / 2.0]
    }
}

/// Coordinatewise Galois conjugation.
pub fn star(v: &QVec3) -> QVec3 {
    v.star()
}

/// The data `(type, t, s+W)` defining an icosahedral model set.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ModelSet {
    #[serde(rename = "type")]
    pub kind: ModelSetKind,
    pub t: QVec3,
    pub window: Window,
}

impl ModelSet {
    /// `t` must have an integral doubled numerator so that points keep the
    /// `num / 2` representation.
    pub fn new(kind: ModelSetKind, t: QVec3, window: Window) -> Result<ModelSet> {
        if IcoPoint::from_value(&t).is_none() {
            return Err(Error::Config("translate t must lie in ½Z[τ]³".into()));
        }
        Ok(ModelSet { kind, t, window })
    }

    /// `Λ^B_ico(0, s+W)` for the icosahedron and `s = 10⁻³(1,1,1)`.
    pub fn example_b() -> ModelSet {
        ModelSet { kind: ModelSetKind::B, t: QVec3::zero(), window: Window::icosahedron() }
    }

    /// The F-type analogue of [`ModelSet::example_b`].
    pub fn example_f() -> ModelSet {
        ModelSet { kind: ModelSetKind::F, t: QVec3::zero(), window: Window::icosahedron() }
    }

    pub fn tag(&self) -> ModuleTag {
        self.kind.tag()
    }

    /// `None` if `x ∉ t + L`, else the location of `(x − t)*` relative to `s + W`.
    pub fn locate(&self, x: &QVec3) -> Result<Option<Location>> {
        let a = x - &self.t;
        if !module_contains(&a, self.tag()) {
            return Ok(None);
        }
        self.window.classify(&a.star()).map(Some)
    }

    pub fn contains(&self, x: &QVec3) -> Result<bool> {
        Ok(matches!(self.locate(x)?, Some(Location::Interior | Location::Boundary)))
    }

    /// Visits every `α ∈ L` with `‖t + α − a‖ < R` and `α* ∈ s + W`. One
    /// accumulator is produced per outer coordinate candidate, in a fixed order,
    /// so results do not depend on thread scheduling.
    pub fn scan<A, I, S>(&self, center: &QVec3, radius: &GoldenRat, init: I, step: S) -> Result<Vec<A>>
    where
        A: Send,
        I: Fn() -> A + Sync,
        S: Fn(&mut A, &IcoPoint, Location) + Sync,
    {
        if radius.sign() <= 0 {
            return Err(Error::Config("radius must be positive".into()));
        }
        let t2 = IcoPoint::from_value(&self.t).ok_or_else(|| Error::Config("translate t must lie in ½Z[τ]³".into()))?;
        // doubled coordinates: n = 2α, ball |n − c| < 2R with c = 2(a − t)
        let c = (center - &self.t).scale(&GoldenRat::from_int(2));
        let cf = c.to_f64();
        let r2 = radius.to_f64() * 2.0;
        let r2_exact = {
            let d = radius * &GoldenRat::from_int(2);
            &d * &d
        };
        let shift = self.window.shift().to_f64();
        let (lo, hi) = self.window.bounding_box_f64();
        let rho = 2.0 * self.window.circumradius_f64();
        let s2 = [2.0 * shift[0], 2.0 * shift[1], 2.0 * shift[2]];
        let lists: Vec<Vec<Cand>> = (0..3)
            .map(|i| coordinate_candidates(cf[i], r2, s2[i] + 2.0 * lo[i], s2[i] + 2.0 * hi[i]))
            .collect();
        let buckets: Vec<Vec<Cand>> = Residue::all()
            .iter()
            .map(|r| lists[2].iter().filter(|e| e.res == *r).cloned().collect())
            .collect();
        let kind = self.kind;
        let window = &self.window;
        let integral = window.integral();
        let margin = 1e-9 * (1.0 + r2 * r2 + cf.iter().map(|x| x * x).sum::<f64>());
        let rho_sq = rho * rho + 1e-9;

        lists[0]
            .par_iter()
            .map(|e0| -> Result<A> {
                let mut acc = init();
                let du0 = e0.u - cf[0];
                let rem0 = r2 * r2 - du0 * du0;
                let dv0 = e0.v - s2[0];
                let irem0 = rho_sq - dv0 * dv0;
                if rem0 < -margin || irem0 < 0.0 {
                    return Ok(acc);
                }
                let w1 = rem0.max(0.0).sqrt() + 1e-7;
                for e1 in range_by_u(&lists[1], cf[1] - w1, cf[1] + w1) {
                    let du1 = e1.u - cf[1];
                    let rem1 = rem0 - du1 * du1;
                    let dv1 = e1.v - s2[1];
                    let irem1 = irem0 - dv1 * dv1;
                    if rem1 < -margin || irem1 < 0.0 {
                        continue;
                    }
                    let w2 = rem1.max(0.0).sqrt() + 1e-7;
                    for (ri, r) in Residue::all().iter().enumerate() {
                        if !kind.congruence([e0.res, e1.res, *r]) {
                            continue;
                        }
                        for e2 in range_by_u(&buckets[ri], cf[2] - w2, cf[2] + w2) {
                            let dv2 = e2.v - s2[2];
                            if irem1 - dv2 * dv2 < 0.0 {
                                continue;
                            }
                            let du2 = e2.u - cf[2];
                            let f = rem1 - du2 * du2;
                            let n = [e0.g.clone(), e1.g.clone(), e2.g.clone()];
                            let inside_ball = if f > margin {
                                true
                            } else if f < -margin {
                                false
                            } else {
                                (&QVec3::from_golden(&n) - &c).norm2() < r2_exact
                            };
                            if !inside_ball {
                                continue;
                            }
                            let m = [n[0].conjugate(), n[1].conjugate(), n[2].conjugate()];
                            let loc = match integral {
                                Some(facets) => classify_integral(facets, &m, &[e0.v, e1.v, e2.v]),
                                None => window.classify_doubled(&m)?,
                            };
                            if loc == Location::Outside {
                                continue;
                            }
                            let num = [&n[0] + &t2.num[0], &n[1] + &t2.num[1], &n[2] + &t2.num[2]];
                            step(&mut acc, &IcoPoint { num }, loc);
                        }
                    }
                }
                Ok(acc)
            })
            .collect()
    }

    /// The patch `Λ ∩ B_R(a)`.
    pub fn patch(&self, center: &QVec3, radius: &GoldenRat) -> Result<ModelSetPatch> {
        let chunks = self.scan(center, radius, Vec::new, |acc: &mut Vec<IcoPoint>, p, _| acc.push(p.clone()))?;
        let mut points: Vec<IcoPoint> = chunks.into_iter().flatten().collect();
        points.sort();
        Ok(ModelSetPatch { model: self.clone(), center: center.clone(), radius: radius.clone(), points })
    }

    /// Number of enumerated points whose star image lies on the window boundary.
    pub fn boundary_hits(&self, center: &QVec3, radius: &GoldenRat) -> Result<usize> {
        let chunks = self.scan(center, radius, || 0usize, |acc, _, loc| {
            if loc == Location::Boundary {
                *acc += 1
            }
        })?;
        Ok(chunks.into_iter().sum())
    }
}

/// A candidate `g = p + qτ` for one doubled coordinate, with its two real embeddings.
#[derive(Clone, Debug)]
pub(crate) struct Cand {
    pub g: GoldenInt,
    pub u: f64,
    pub v: f64,
    pub res: Residue,
}

/// All `p + qτ` with `p + qτ ∈ [c − w, c + w]` and `p + qτ′ ∈ [lo, hi]`,
/// widened slightly so rounding never drops a point; sorted by `u`.
pub(crate) fn coordinate_candidates(c: f64, w: f64, lo: f64, hi: f64) -> Vec<Cand> {
    let eps = 1e-7;
    let sqrt5 = TAU_F64 - TAU_CONJ_F64;
    let (ulo, uhi) = (c - w - eps, c + w + eps);
    let (vlo, vhi) = (lo - eps, hi + eps);
    let qmin = ((ulo - vhi) / sqrt5).floor() as i64 - 1;
    let qmax = ((uhi - vlo) / sqrt5).ceil() as i64 + 1;
    let mut out = Vec::new();
    for q in qmin..=qmax {
        let qf = q as f64;
        let pmin = (ulo - qf * TAU_F64).max(vlo - qf * TAU_CONJ_F64).ceil() as i64;
        let pmax = (uhi - qf * TAU_F64).min(vhi - qf * TAU_CONJ_F64).floor() as i64;
        for p in pmin..=pmax {
            let g = GoldenInt::new(p, q);
            let res = g.residue_mod2();
            out.push(Cand { u: p as f64 + qf * TAU_F64, v: p as f64 + qf * TAU_CONJ_F64, g, res });
        }
    }
    out.sort_by(|a, b| a.u.total_cmp(&b.u));
    out
}

pub(crate) fn range_by_u(list: &[Cand], lo: f64, hi: f64) -> &[Cand] {
    let a = list.partition_point(|e| e.u < lo);
    let b = list.partition_point(|e| e.u <= hi);
    &list[a..b.max(a)]
}

/// A finite patch `Λ ∩ B_R(a)` with its defining data.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ModelSetPatch {
    #[serde(flatten)]
    pub model: ModelSet,
    pub center: QVec3,
    pub radius: GoldenRat,
    pub points: Vec<IcoPoint>,
}

impl ModelSetPatch {
    pub fn values(&self) -> Vec<QVec3> {
        self.points.iter().map(IcoPoint::value).collect()
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// `‖x − a‖ < R`.
    pub fn in_ball(&self, x: &QVec3) -> bool {
        (x - &self.center).norm2() < &self.radius * &self.radius
    }

    /// Indices of points whose star image lies on the window boundary.
    pub fn boundary_points(&self) -> Result<Vec<usize>> {
        let mut out = Vec::new();
        for (i, p) in self.points.iter().enumerate() {
            if self.model.locate(&p.value())? == Some(Location::Boundary) {
                out.push(i);
            }
        }
        Ok(out)
    }

    /// Checks the defining invariants of every stored point.
    pub fn verify(&self) -> Result<bool> {
        for p in &self.points {
            let x = p.value();
            if !self.in_ball(&x) || !self.model.contains(&x)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// `(‖(τα)*‖², ‖α*‖²/τ²)`; the two entries agree exactly.
pub fn mtau_star_contraction_check(alpha: &QVec3) -> (GoldenRat, GoldenRat) {
    let lhs = alpha.scale(&GoldenRat::tau()).star().norm2();
    let rhs = &alpha.star().norm2() * &GoldenRat::tau_pow(-2);
    (lhs, rhs)
}

/// Search parameters for [`embed_finite_set`].
#[derive(Clone, Debug)]
pub struct EmbedConfig {
    /// Physical centre around which the image should sit.
    pub center: QVec3,
    /// Radius of the ball searched for the anchor `α₀`.
    pub search_radius: GoldenRat,
    pub max_k: u32,
}

impl Default for EmbedConfig {
    fn default() -> Self {
        EmbedConfig { center: QVec3::zero(), search_radius: GoldenRat::from_int(4), max_k: 60 }
    }
}

/// Result of [`embed_finite_set`]: the homothety `x ↦ τᵏx + α₀` applied to `F`
/// and then translated by `t` into the model set.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Embedding {
    pub k: u32,
    pub alpha0: QVec3,
    pub image: Vec<QVec3>,
}

impl Embedding {
    pub fn apply(&self, x: &QVec3, t: &QVec3) -> QVec3 {
        &(&x.scale(&GoldenRat::tau_pow(self.k as i64)) + &self.alpha0) + t
    }
}

/// Finds `k` and `α₀ ∈ L` with `(τᵏα + α₀)* ∈ int(s+W)` for all `α ∈ F`. The
/// image points `t + τᵏα + α₀` then lie in the model set; `α₀` is taken from
/// the model set points nearest to where the image is centred on `cfg.center`.
pub fn embed_finite_set(f: &[QVec3], model: &ModelSet, cfg: &EmbedConfig) -> Result<Embedding> {
    let tag = model.tag();
    if let Some(bad) = f.iter().find(|x| !module_contains(x, tag)) {
        return Err(Error::PreconditionViolated(format!("{bad} is not in the module")));
    }
    let fc = f.iter().fold(QVec3::zero(), |acc, x| &acc + x);
    let fc = if f.is_empty() { fc } else { fc.scale(&GoldenRat::ratio(1, f.len() as i64)) };
    for k in 0..=cfg.max_k {
        let tk = GoldenRat::tau_pow(k as i64);
        let stars: Vec<QVec3> = f.iter().map(|x| x.scale(&tk).star()).collect();
        let sf: Vec<[f64; 3]> = stars.iter().map(QVec3::to_f64).collect();
        let n = sf.len().max(1) as f64;
        let cs: [f64; 3] = std::array::from_fn(|i| sf.iter().map(|y| y[i]).sum::<f64>() / n);
        let reach = sf.iter().map(|y| dist2(y, &cs).sqrt()).fold(0.0, f64::max);
        let target = &(&cfg.center - &model.t) - &fc.scale(&tk);
        let tf = target.to_f64();
        let mut anchors: Vec<(QVec3, f64)> = Vec::new();
        for p in model.patch(&(&target + &model.t), &cfg.search_radius)?.points {
            let alpha0 = &p.value() - &model.t;
            let a = alpha0.star().to_f64();
            let depth = interior_depth_f64(&model.window, &std::array::from_fn(|i| a[i] + cs[i]));
            if depth > reach * (1.0 + 1e-9) + 1e-12 {
                let d = dist2(&alpha0.to_f64(), &tf);
                anchors.push((alpha0, d));
            }
        }
        anchors.sort_by(|a, b| a.1.total_cmp(&b.1).then_with(|| a.0.cmp(&b.0)));
        for (alpha0, _) in &anchors {
            let a0s = alpha0.star();
            let mut ok = true;
            for y in &stars {
                if model.window.classify(&(y + &a0s))? != Location::Interior {
                    ok = false;
                    break;
                }
            }
            if ok {
                let image = f.iter().map(|x| &(&x.scale(&tk) + alpha0) + &model.t).collect();
                return Ok(Embedding { k, alpha0: alpha0.clone(), image });
            }
        }
    }
    Err(Error::NoInteriorPoint)
}

fn dist2(a: &[f64; 3], b: &[f64; 3]) -> f64 {
    (0..3).map(|i| (a[i] - b[i]).powi(2)).sum()
}

/// Euclidean distance from `y` to the boundary of `s + W` (negative outside), in floating point.
pub fn interior_depth(w: &Window, y: &QVec3) -> f64 {
    interior_depth_f64(w, &y.to_f64())
}

pub fn interior_depth_f64(w: &Window, yf: &[f64; 3]) -> f64 {
    let s = w.shift().to_f64();
    w.facets()
        .iter()
        .map(|f| {
            let n = f.normal.to_f64();
            let len = (n[0] * n[0] + n[1] * n[1] + n[2] * n[2]).sqrt();
            let v: f64 = (0..3).map(|i| n[i] * (yf[i] - s[i])).sum();
            (f.offset.to_f64() - v) / len
        })
        .fold(f64::INFINITY, f64::min)
}

/// `true` if `v ∈ 2L`, i.e. `v` passes the integral congruence of the module.
pub fn in_numerator_module(v: &[GoldenInt; 3], kind: ModelSetKind) -> bool {
    integral_module_contains(v, kind.numerator_module())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::icosian::{rotation_group, RotationGroupKind};
    use std::collections::HashSet;

    #[test]
    fn origin_is_in_example_patch() {
        let m = ModelSet::example_b();
        let p = m.patch(&QVec3::zero(), &GoldenRat::from_int(3)).unwrap();
        assert!(p.points.contains(&IcoPoint::new([GoldenInt::zero(), GoldenInt::zero(), GoldenInt::zero()])));
        assert!(p.verify().unwrap());
        for q in &p.points {
            assert!(in_numerator_module(&q.num, ModelSetKind::B));
        }
    }

    /// Brute force over a box of doubled numerators.
    fn brute(m: &ModelSet, r: i64) -> HashSet<IcoPoint> {
        let mut out = HashSet::new();
        let rr = GoldenRat::from_int(r);
        let range = -12i64..=12;
        let coords: Vec<GoldenInt> = range.clone().flat_map(|a| range.clone().map(move |b| GoldenInt::new(a, b))).collect();
        let coords: Vec<GoldenInt> = coords
            .into_iter()
            .filter(|g| g.to_f64().abs() < 2.0 * r as f64 + 0.1 && g.conjugate().to_f64().abs() < 2.5)
            .collect();
        for x in &coords {
            for y in &coords {
                for z in &coords {
                    let p = IcoPoint::new([x.clone(), y.clone(), z.clone()]);
                    let v = p.value();
                    if v.norm2() < &rr * &rr && m.contains(&v).unwrap() {
                        out.insert(p);
                    }
                }
            }
        }
        out
    }

    #[test]
    fn enumeration_matches_brute_force() {
        for m in [ModelSet::example_b(), ModelSet::example_f()] {
            let p = m.patch(&QVec3::zero(), &GoldenRat::from_int(2)).unwrap();
            let got: HashSet<IcoPoint> = p.points.iter().cloned().collect();
            assert_eq!(got, brute(&m, 2));
            assert!(!got.is_empty());
        }
    }

    #[test]
    fn patches_are_monotone_in_radius() {
        let m = ModelSet::example_b();
        let c = QVec3::new(GoldenRat::ratio(1, 3), 0.into(), GoldenRat::tau());
        let small = m.patch(&c, &GoldenRat::from_int(3)).unwrap();
        let big = m.patch(&c, &GoldenRat::from_int(5)).unwrap();
        let bigset: HashSet<&IcoPoint> = big.points.iter().collect();
        assert!(small.points.iter().all(|p| bigset.contains(p)));
        assert!(big.len() > small.len());
    }

    #[test]
    fn centred_unshifted_patch_has_full_symmetry() {
        let w = Window::icosahedron_with_shift(crate::window::Shift::zero());
        let m = ModelSet::new(ModelSetKind::B, QVec3::zero(), w).unwrap();
        let p = m.patch(&QVec3::zero(), &GoldenRat::from_int(4)).unwrap();
        let set: HashSet<QVec3> = p.values().into_iter().collect();
        for g in rotation_group(RotationGroupKind::Yh) {
            assert!(set.iter().all(|x| set.contains(&g.apply(x))));
        }
    }

    #[test]
    fn example_patch_is_generic_at_patch_scale() {
        let m = ModelSet::example_b();
        assert_eq!(m.boundary_hits(&QVec3::zero(), &GoldenRat::from_int(6)).unwrap(), 0);
        let unshifted = ModelSet::new(ModelSetKind::B, QVec3::zero(), Window::icosahedron_with_shift(crate::window::Shift::zero())).unwrap();
        assert!(unshifted.boundary_hits(&QVec3::zero(), &GoldenRat::from_int(6)).unwrap() > 0);
    }

    #[test]
    fn tiny_window_gives_empty_patch() {
        let e = GoldenRat::ratio(1, 1000);
        let pts: Vec<QVec3> = Window::icosahedron().vertices().iter().map(|v| &v.scale(&e) + &QVec3::new(GoldenRat::ratio(1, 3), GoldenRat::ratio(1, 3), GoldenRat::ratio(1, 3))).collect();
        let w = Window::from_vertices(&pts, crate::window::Shift::zero()).unwrap();
        let m = ModelSet::new(ModelSetKind::B, QVec3::zero(), w).unwrap();
        assert!(m.patch(&QVec3::zero(), &GoldenRat::from_int(3)).unwrap().is_empty());
    }

    #[test]
    fn contraction_pairs_agree() {
        let a = QVec3::new(GoldenRat::tau(), 0.into(), 1.into());
        let (l, r) = mtau_star_contraction_check(&a);
        assert_eq!(l, r);
        let (z1, z2) = mtau_star_contraction_check(&QVec3::zero());
        assert!(z1.is_zero() && z2.is_zero());
    }

    #[test]
    fn embedding_lands_in_the_interior() {
        let m = ModelSet::example_b();
        let e = embed_finite_set(&[QVec3::zero()], &m, &EmbedConfig::default()).unwrap();
        assert_eq!(e.k, 0);
        let f = vec![QVec3::zero(), QVec3::from_ints(1, 0, 0), QVec3::new(GoldenRat::tau(), 0.into(), 1.into()).scale(&GoldenRat::half())];
        let e = embed_finite_set(&f, &m, &EmbedConfig::default()).unwrap();
        for x in &e.image {
            assert_eq!(m.locate(x).unwrap(), Some(Location::Interior));
        }
    }

    #[test]
    fn patch_serde_round_trip() {
        let m = ModelSet::example_f();
        let p = m.patch(&QVec3::zero(), &GoldenRat::from_int(2)).unwrap();
        let s = serde_json::to_string(&p).unwrap();
        let back: ModelSetPatch = serde_json::from_str(&s).unwrap();
        assert_eq!(back, p);
    }
}

//! Discrete parallel X-rays, grids and switching components.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::direction::Direction;
use crate::error::{Error, Result};
use crate::golden::GoldenRat;
use crate::icosian::module_contains;
use crate::linalg::QVec3;
use crate::modelset::{embed_finite_set, EmbedConfig, Embedding, ModelSet};
use crate::slicing::{height, SliceKey};

/// `X_u F`: line key `x × u` ↦ number of points of `F` on that line.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "XRayFile", from = "XRayFile")]
pub struct XRayImage {
    pub direction: Direction,
    pub counts: BTreeMap<QVec3, usize>,
}

#[derive(Serialize, Deserialize)]
struct XRayFile {
    direction: QVec3,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    planar: bool,
    lines: Vec<XRayLine>,
}

#[derive(Serialize, Deserialize)]
struct XRayLine {
    key: QVec3,
    count: usize,
}

impl From<XRayImage> for XRayFile {
    fn from(x: XRayImage) -> XRayFile {
        XRayFile { direction: x.direction.rep, planar: x.direction.planar, lines: x.counts.into_iter().map(|(key, count)| XRayLine { key, count }).collect() }
    }
}

impl From<XRayFile> for XRayImage {
    fn from(f: XRayFile) -> XRayImage {
        let mut counts = BTreeMap::new();
        for l in f.lines {
            if l.count > 0 {
                *counts.entry(l.key).or_insert(0) += l.count;
            }
        }
        XRayImage { direction: Direction { rep: f.direction, planar: f.planar }, counts }
    }
}

impl XRayImage {
    pub fn total(&self) -> usize {
        self.counts.values().sum()
    }

    pub fn support(&self) -> impl Iterator<Item = &QVec3> {
        self.counts.keys()
    }
}

pub fn xray(f: &[QVec3], u: &Direction) -> XRayImage {
    let mut counts = BTreeMap::new();
    for x in f {
        *counts.entry(u.key(x)).or_insert(0) += 1;
    }
    XRayImage { direction: u.clone(), counts }
}

pub fn same_xrays(f: &[QVec3], g: &[QVec3], u: &[Direction]) -> bool {
    u.iter().all(|d| xray(f, d) == xray(g, d))
}

fn check_pairwise_non_parallel(u: &[Direction]) -> Result<()> {
    for i in 0..u.len() {
        for j in i + 1..u.len() {
            if u[i].is_parallel(&u[j]) {
                return Err(Error::InvalidDirection(format!("directions {i} and {j} are parallel")));
            }
        }
    }
    Ok(())
}

/// Intersection point of the lines `p + a·d` and `q + b·e`, if they meet.
pub fn line_intersection(p: &QVec3, d: &QVec3, q: &QVec3, e: &QVec3) -> Option<QVec3> {
    let n = d.cross(e);
    if n.is_zero() {
        return None;
    }
    let w = q - p;
    if !w.dot(&n).is_zero() {
        return None;
    }
    let a = &w.cross(e).dot(&n) / &n.norm2();
    Some(p + &d.scale(&a))
}

/// `G^F_U`: the points lying on a supported line in every direction of `U`.
pub fn grid(f: &[QVec3], u: &[Direction]) -> Result<Vec<QVec3>> {
    if u.len() < 2 {
        return Err(Error::InvalidDirection("a grid needs at least two directions".into()));
    }
    check_pairwise_non_parallel(u)?;
    let lines = |d: &Direction| -> Vec<QVec3> {
        let mut seen = HashSet::new();
        f.iter().filter(|x| seen.insert(d.key(x))).cloned().collect()
    };
    let l1 = lines(&u[0]);
    let l2 = lines(&u[1]);
    let supports: Vec<HashSet<QVec3>> = u[2..].iter().map(|d| f.iter().map(|x| d.key(x)).collect()).collect();
    let sliced = u.iter().all(|d| !d.planar && height(&d.rep).height.is_zero());
    let mut pairs: Vec<(&QVec3, &QVec3)> = Vec::new();
    if sliced {
        let mut by_h: HashMap<SliceKey, Vec<&QVec3>> = HashMap::new();
        for q in &l2 {
            by_h.entry(height(q)).or_default().push(q);
        }
        for p in &l1 {
            if let Some(qs) = by_h.get(&height(p)) {
                pairs.extend(qs.iter().map(|q| (p, *q)));
            }
        }
    } else {
        pairs = l1.iter().flat_map(|p| l2.iter().map(move |q| (p, q))).collect();
    }
    let mut out = BTreeSet::new();
    for (p, q) in pairs {
        if let Some(x) = line_intersection(p, &u[0].rep, q, &u[1].rep) {
            if u[2..].iter().zip(&supports).all(|(d, s)| s.contains(&d.key(&x))) {
                out.insert(x);
            }
        }
    }
    Ok(out.into_iter().collect())
}

fn centroid_sum(f: &[QVec3]) -> QVec3 {
    f.iter().fold(QVec3::zero(), |acc, x| &acc + x)
}

/// Whether the centroids of `F` and `F′` lie on a common line parallel to `u`.
pub fn centroid_check(f: &[QVec3], g: &[QVec3], u: &Direction) -> Result<bool> {
    if xray(f, u) != xray(g, u) {
        return Err(Error::PreconditionViolated("sets have different X-rays".into()));
    }
    // equal cardinalities, so the centroid difference is (ΣF − ΣF′)/card
    Ok((&centroid_sum(f) - &centroid_sum(g)).is_parallel(&u.rep))
}

/// `x ↦ λx + t`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Homothety {
    pub lambda: GoldenRat,
    pub t: QVec3,
}

impl Homothety {
    pub fn apply(&self, x: &QVec3) -> QVec3 {
        &x.scale(&self.lambda) + &self.t
    }

    pub fn apply_all(&self, f: &[QVec3]) -> Vec<QVec3> {
        f.iter().map(|x| self.apply(x)).collect()
    }
}

/// Checks that `h(F)` and `h(F′)` again have equal X-rays in `U`.
pub fn homothety_transport(f: &[QVec3], g: &[QVec3], u: &[Direction], h: &Homothety) -> Result<bool> {
    if h.lambda.sign() <= 0 {
        return Err(Error::PreconditionViolated("homothety ratio must be positive".into()));
    }
    if !same_xrays(f, g, u) {
        return Err(Error::PreconditionViolated("sets have different X-rays".into()));
    }
    Ok(same_xrays(&h.apply_all(f), &h.apply_all(g), u))
}

/// Disjoint `F ≠ F′ ⊂ L` with equal X-rays in the given directions, by the
/// doubling construction `F ∪ (α+F′)`, `F′ ∪ (α+F)`.
pub fn switching_component(u: &[Direction]) -> Result<(Vec<QVec3>, Vec<QVec3>)> {
    if u.is_empty() {
        return Err(Error::PreconditionViolated("need at least one direction".into()));
    }
    check_pairwise_non_parallel(u)?;
    let mut f = vec![QVec3::zero()];
    let mut g = vec![u[0].rep.clone()];
    for d in &u[1..] {
        let union: HashSet<QVec3> = f.iter().chain(&g).cloned().collect();
        let mut m = 1i64;
        let alpha = loop {
            let a = d.rep.scale(&GoldenRat::from_int(m));
            if union.iter().all(|x| !union.contains(&(x + &a))) {
                break a;
            }
            m += 1;
        };
        let nf: Vec<QVec3> = f.iter().cloned().chain(g.iter().map(|x| x + &alpha)).collect();
        let ng: Vec<QVec3> = g.iter().cloned().chain(f.iter().map(|x| x + &alpha)).collect();
        f = nf;
        g = ng;
    }
    f.sort();
    g.sort();
    Ok((f, g))
}

/// A switching component embedded in a model set patch.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SwitchingPair {
    pub f: Vec<QVec3>,
    pub f_prime: Vec<QVec3>,
    pub embedding: Embedding,
    pub directions: Vec<Direction>,
}

impl SwitchingPair {
    /// The homothety carrying the abstract component onto `(f, f_prime)`.
    pub fn homothety(&self, t: &QVec3) -> Homothety {
        Homothety { lambda: GoldenRat::tau_pow(self.embedding.k as i64), t: &self.embedding.alpha0 + t }
    }
}

/// Builds a switching component for `u` and places it into `Λ ∩ B_R(a)`.
pub fn switching_pair(u: &[Direction], model: &ModelSet, center: &QVec3, radius: &GoldenRat) -> Result<SwitchingPair> {
    for d in u {
        if d.planar || !module_contains(&d.rep, model.tag()) {
            return Err(Error::InvalidDirection(format!("{} is not an L-representative", d.rep)));
        }
    }
    let (f0, g0) = switching_component(u)?;
    let all: Vec<QVec3> = f0.iter().chain(&g0).cloned().collect();
    let cfg = EmbedConfig { center: center.clone(), ..EmbedConfig::default() };
    let embedding = embed_finite_set(&all, model, &cfg).map_err(|e| Error::EmbeddingFailed(e.to_string()))?;
    let (fi, gi) = embedding.image.split_at(f0.len());
    let mut f = fi.to_vec();
    let mut g = gi.to_vec();
    f.sort();
    g.sort();
    let r2 = radius * radius;
    if let Some(x) = f.iter().chain(&g).find(|x| (*x - center).norm2() >= r2) {
        return Err(Error::EmbeddingFailed(format!("image point {x} lies outside the patch ball (k = {})", embedding.k)));
    }
    Ok(SwitchingPair { f, f_prime: g, embedding, directions: u.to_vec() })
}

/// `F₁ = C ∖ F`, `F₂ = C ∖ F′` for `F, F′ ⊂ C`.
pub fn complement_variant(f: &[QVec3], g: &[QVec3], c: &[QVec3]) -> Result<(Vec<QVec3>, Vec<QVec3>)> {
    let cs: HashSet<&QVec3> = c.iter().collect();
    if !f.iter().chain(g).all(|x| cs.contains(x)) {
        return Err(Error::PreconditionViolated("F and F′ must lie in C".into()));
    }
    let fs: HashSet<&QVec3> = f.iter().collect();
    let gs: HashSet<&QVec3> = g.iter().collect();
    let f1 = c.iter().filter(|x| !fs.contains(x)).cloned().collect();
    let f2 = c.iter().filter(|x| !gs.contains(x)).cloned().collect();
    Ok((f1, f2))
}

/// For `card(F) ≤ k` and `k + 1` directions the grid is `F` itself, so the
/// X-rays determine `F`. Larger sets are accepted; the result may then be a
/// strict superset of `F`.
pub fn determine_small(f: &[QVec3], u: &[Direction]) -> Result<Vec<QVec3>> {
    grid(f, u)
}

/// Randomised search for distinct `F, F′` of diameter `< R` inside `points`
/// with equal X-rays in `u1, u2`. Candidates are parallelograms
/// `{p, p+a+b}` / `{p+a, p+b}` with `a ∥ u1`, `b ∥ u2` taken from the set itself.
pub fn bounded_falsifier<R: Rng>(
    r: &GoldenRat,
    u1: &Direction,
    u2: &Direction,
    points: &[QVec3],
    trials: usize,
    rng: &mut R,
) -> Option<(Vec<QVec3>, Vec<QVec3>)> {
    if points.is_empty() || u1.is_parallel(u2) {
        return None;
    }
    let set: HashSet<&QVec3> = points.iter().collect();
    let r2 = r * r;
    let mut by1: HashMap<QVec3, Vec<&QVec3>> = HashMap::new();
    let mut by2: HashMap<QVec3, Vec<&QVec3>> = HashMap::new();
    for x in points {
        by1.entry(u1.key(x)).or_default().push(x);
        by2.entry(u2.key(x)).or_default().push(x);
    }
    for _ in 0..trials {
        let p = points.choose(rng).unwrap();
        let on1: Vec<&&QVec3> = by1[&u1.key(p)].iter().filter(|q| **q != p && ((**q) - p).norm2() < r2).collect();
        let on2: Vec<&&QVec3> = by2[&u2.key(p)].iter().filter(|q| **q != p && ((**q) - p).norm2() < r2).collect();
        let (Some(q1), Some(q2)) = (on1.choose(rng), on2.choose(rng)) else {
            continue;
        };
        let far = &(**q1 + **q2) - p;
        if !set.contains(&far) {
            continue;
        }
        let mut f = vec![p.clone(), far];
        let mut g = vec![(**q1).clone(), (**q2).clone()];
        let diam_ok = f.iter().chain(&g).all(|x| f.iter().chain(&g).all(|y| (x - y).norm2() < r2));
        if !diam_ok {
            continue;
        }
        f.sort();
        g.sort();
        if f != g && same_xrays(&f, &g, &[u1.clone(), u2.clone()]) {
            return Some((f, g));
        }
    }
    None
}

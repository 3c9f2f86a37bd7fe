//! Experiment configuration, the star-centroid (Weyl) experiment, window-shift
//! recovery from centroids, and random tomography instances.

use rand::seq::{IteratorRandom, SliceRandom};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::convex::{u5, u_ico, SamplerConfig};
use crate::direction::Direction;
use crate::error::{Error, Result};
use crate::golden::GoldenRat;
use crate::linalg::QVec3;
use crate::modelset::ModelSet;
use crate::reconstruction::TomographyInstance;
use crate::tomography::xray;
use crate::window::Shift;

pub const SEED_ENV: &str = "ICOTOMO_SEED";

/// Named direction sets.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DirectionSet {
    U5,
    UIco,
    Custom(Vec<QVec3>),
}

impl DirectionSet {
    /// Resolves the set for a model set; custom vectors become `L`-directions.
    pub fn resolve(&self, model: &ModelSet) -> Result<Vec<Direction>> {
        match self {
            DirectionSet::U5 => Ok(u5()),
            DirectionSet::UIco => Ok(u_ico(model.tag())),
            DirectionSet::Custom(v) => v.iter().map(|x| Direction::spatial(x, model.tag())).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct ExperimentConfig {
    pub model: ModelSet,
    pub center: QVec3,
    pub radii: Vec<u32>,
    pub directions: DirectionSet,
    pub sampler: SamplerConfig,
    pub seed: Option<u64>,
    pub workers: Option<usize>,
    /// Largest accepted star-centroid deviation at the final radius.
    pub threshold: f64,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            model: ModelSet::example_b(),
            center: QVec3::zero(),
            radii: vec![10, 20, 40],
            directions: DirectionSet::UIco,
            sampler: SamplerConfig::default(),
            seed: None,
            workers: None,
            threshold: 0.05,
        }
    }
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<()> {
        if self.radii.is_empty() || self.radii[0] == 0 {
            return Err(Error::Config("radii must be nonempty and positive".into()));
        }
        if self.radii.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Config("radii must be strictly increasing".into()));
        }
        if !(self.threshold > 0.0) {
            return Err(Error::Config("threshold must be positive".into()));
        }
        Ok(())
    }

    /// The configured seed, else `ICOTOMO_SEED`, else 0.
    pub fn resolved_seed(&self) -> Result<u64> {
        resolve_seed(self.seed, std::env::var(SEED_ENV).ok().as_deref())
    }
}

pub fn resolve_seed(explicit: Option<u64>, env: Option<&str>) -> Result<u64> {
    match (explicit, env) {
        (Some(s), _) => Ok(s),
        (None, Some(v)) => v.trim().parse().map_err(|_| Error::Config(format!("{SEED_ENV}={v:?} is not an integer"))),
        (None, None) => Ok(0),
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RadiusEntry {
    pub radius: u32,
    pub count: usize,
    pub star_centroid: [f64; 3],
    pub deviation: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CentroidReport {
    pub center: QVec3,
    pub window_centroid: Shift,
    pub entries: Vec<RadiusEntry>,
    pub threshold: f64,
    pub strictly_decreasing: bool,
    pub below_threshold: bool,
}

fn norm(v: &[f64; 3]) -> f64 {
    (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt()
}

/// Star-centroids `(1/card) Σ (x − t)*` over `Λ ∩ B_R(a)` for each configured
/// radius, from one enumeration at the largest radius.
pub fn weyl_experiment(cfg: &ExperimentConfig) -> Result<CentroidReport> {
    cfg.validate()?;
    let model = &cfg.model;
    let radii: Vec<GoldenRat> = cfg.radii.iter().map(|&r| GoldenRat::from_int(r as i64)).collect();
    let r2: Vec<GoldenRat> = radii.iter().map(|r| r * r).collect();
    let r2f: Vec<f64> = r2.iter().map(GoldenRat::to_f64).collect();
    let cf = cfg.center.to_f64();
    let ts = model.t.star().to_f64();
    let n = radii.len();
    // per chunk: per radius bucket (smallest containing ball) count and star sum
    let chunks = model.scan(
        &cfg.center,
        radii.last().unwrap(),
        || vec![(0usize, [0.0f64; 3]); n],
        |acc, p, _| {
            let x = p.to_f64();
            let d2: f64 = (0..3).map(|i| (x[i] - cf[i]).powi(2)).sum();
            let bucket = (0..n)
                .find(|&i| {
                    if (d2 - r2f[i]).abs() > 1e-9 * r2f[i] {
                        d2 < r2f[i]
                    } else {
                        (&p.value() - &cfg.center).norm2() < r2[i]
                    }
                })
                .unwrap_or(n - 1);
            let s = p.star().to_f64();
            let e = &mut acc[bucket];
            e.0 += 1;
            for i in 0..3 {
                e.1[i] += s[i] - ts[i];
            }
        },
    )?;
    let window_centroid = model.window.centroid();
    let wc = window_centroid.to_f64();
    let mut entries = Vec::new();
    let (mut count, mut sum) = (0usize, [0.0f64; 3]);
    for (i, &radius) in cfg.radii.iter().enumerate() {
        for c in &chunks {
            count += c[i].0;
            for k in 0..3 {
                sum[k] += c[i].1[k];
            }
        }
        if count == 0 {
            return Err(Error::EmptyPatch);
        }
        let star_centroid = sum.map(|v| v / count as f64);
        let deviation = norm(&[star_centroid[0] - wc[0], star_centroid[1] - wc[1], star_centroid[2] - wc[2]]);
        entries.push(RadiusEntry { radius, count, star_centroid, deviation });
    }
    let strictly_decreasing = entries.windows(2).all(|w| w[1].deviation < w[0].deviation);
    let below_threshold = entries.last().unwrap().deviation < cfg.threshold;
    Ok(CentroidReport { center: cfg.center.clone(), window_centroid, entries, threshold: cfg.threshold, strictly_decreasing, below_threshold })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RecoveryReport {
    pub count: usize,
    /// Star-centroid of `F − t` minus the centroid of the unshifted window.
    pub estimate: [f64; 3],
    /// Index of the candidate shift nearest the estimate.
    pub best: Option<usize>,
    pub residual: f64,
}

/// Estimates the window shift of a model set from a ball-shaped patch `F`.
pub fn centroid_window_recovery(f: &[QVec3], t: &QVec3, body_centroid: &QVec3, candidates: &[Shift]) -> Result<RecoveryReport> {
    if f.is_empty() {
        return Err(Error::EmptyPatch);
    }
    let ts = t.star().to_f64();
    let mut sum = [0.0f64; 3];
    for x in f {
        let s = x.star().to_f64();
        for i in 0..3 {
            sum[i] += s[i] - ts[i];
        }
    }
    let bc = body_centroid.to_f64();
    let estimate: [f64; 3] = std::array::from_fn(|i| sum[i] / f.len() as f64 - bc[i]);
    let dist = |s: &Shift| {
        let v = s.to_f64();
        norm(&[v[0] - estimate[0], v[1] - estimate[1], v[2] - estimate[2]])
    };
    let best = (0..candidates.len()).min_by(|&a, &b| dist(&candidates[a]).total_cmp(&dist(&candidates[b])));
    let residual = best.map(|i| dist(&candidates[i])).unwrap_or(0.0);
    Ok(RecoveryReport { count: f.len(), estimate, best, residual })
}

/// A random instance on a small domain: the X-rays of a random subset of
/// `domain`, optionally perturbed by moving one unit of count between two
/// lines of the second direction (which keeps totals equal).
pub fn random_instance<R: Rng>(
    domain: &[QVec3],
    u1: &Direction,
    u2: &Direction,
    size: usize,
    perturb: bool,
    rng: &mut R,
) -> Result<TomographyInstance> {
    let f: Vec<QVec3> = domain.choose_multiple(rng, size.min(domain.len())).cloned().collect();
    let mut p2 = xray(&f, u2);
    if perturb && !f.is_empty() {
        let from = p2.counts.keys().choose(rng).cloned().unwrap();
        let others: Vec<QVec3> = domain.iter().map(|x| u2.key(x)).filter(|k| *k != from).collect();
        if let Some(to) = others.choose(rng).cloned() {
            *p2.counts.get_mut(&from).unwrap() -= 1;
            if p2.counts[&from] == 0 {
                p2.counts.remove(&from);
            }
            *p2.counts.entry(to).or_insert(0) += 1;
        }
    }
    TomographyInstance::new(xray(&f, u1), p2, domain.to_vec())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_validation_and_seed() {
        let mut c = ExperimentConfig::default();
        assert!(c.validate().is_ok());
        c.radii = vec![10, 10];
        assert!(matches!(c.validate(), Err(Error::Config(_))));
        assert_eq!(resolve_seed(Some(5), Some("7")).unwrap(), 5);
        assert_eq!(resolve_seed(None, Some("7")).unwrap(), 7);
        assert_eq!(resolve_seed(None, None).unwrap(), 0);
        assert!(resolve_seed(None, Some("x")).is_err());
        let js = serde_json::to_string(&ExperimentConfig::default()).unwrap();
        assert_eq!(serde_json::from_str::<ExperimentConfig>(&js).unwrap(), ExperimentConfig::default());
        let partial: ExperimentConfig = serde_json::from_str(r#"{"radii":[5,6]}"#).unwrap();
        assert_eq!(partial.radii, vec![5, 6]);
    }

    #[test]
    fn window_centroid_is_shift() {
        let m = ModelSet::example_b();
        let s = QVec3::new(GoldenRat::ratio(1, 1000), GoldenRat::ratio(1, 1000), GoldenRat::ratio(1, 1000));
        assert_eq!(m.window.centroid(), Shift::Exact(s));
    }

    #[test]
    fn small_weyl_run() {
        let cfg = ExperimentConfig { radii: vec![3, 6], ..ExperimentConfig::default() };
        let rep = weyl_experiment(&cfg).unwrap();
        assert_eq!(rep.entries.len(), 2);
        let direct = cfg.model.patch(&QVec3::zero(), &GoldenRat::from_int(3)).unwrap();
        assert_eq!(rep.entries[0].count, direct.len());
        assert!(rep.entries[0].count < rep.entries[1].count);
        assert_eq!(rep, weyl_experiment(&cfg).unwrap());
    }
}

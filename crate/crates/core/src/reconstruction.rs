//! Consistency, reconstruction and uniqueness for two X-rays in directions of
//! the plane `H^{(τ,0,1)}`, on an explicitly supplied candidate domain.
//! Every slice is an independent bipartite flow problem.

use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::direction::Direction;
use crate::error::{Error, Result};
use crate::flow::{find_cycle, FlowNetwork};
use crate::golden::GoldenRat;
use crate::linalg::QVec3;
use crate::slicing::{height, SliceKey};
use crate::tomography::{same_xrays, xray, XRayImage};

fn tau_vec() -> QVec3 {
    QVec3::new(GoldenRat::tau(), 0.into(), 1.into())
}

/// Two prescribed X-rays and the anchored candidate domain.
#[derive(Clone, Debug, PartialEq)]
pub struct TomographyInstance {
    pub xrays: [XRayImage; 2],
    pub domain: Vec<QVec3>,
}

impl TomographyInstance {
    pub fn new(p1: XRayImage, p2: XRayImage, domain: Vec<QVec3>) -> Result<TomographyInstance> {
        let n = tau_vec();
        for p in [&p1, &p2] {
            let d = &p.direction;
            if d.planar || !d.rep.dot(&n).is_zero() {
                return Err(Error::NotCoplanarDirections);
            }
            if let Some(k) = p.counts.keys().find(|k| !k.dot(&d.rep).is_zero()) {
                return Err(Error::InvalidDirection(format!("line key {k} is not orthogonal to {}", d.rep)));
            }
        }
        if p1.direction.is_parallel(&p2.direction) {
            return Err(Error::InvalidDirection("the two directions are parallel".into()));
        }
        Ok(TomographyInstance { xrays: [p1, p2], domain })
    }

    /// The instance given by the X-rays of `f`.
    pub fn from_set(f: &[QVec3], u1: &Direction, u2: &Direction, domain: Vec<QVec3>) -> Result<TomographyInstance> {
        TomographyInstance::new(xray(f, u1), xray(f, u2), domain)
    }

    pub fn directions(&self) -> [&Direction; 2] {
        [&self.xrays[0].direction, &self.xrays[1].direction]
    }

    pub fn totals(&self) -> (usize, usize) {
        (self.xrays[0].total(), self.xrays[1].total())
    }

    /// Domain points lying on a supported line in both directions.
    pub fn candidates(&self) -> Vec<QVec3> {
        let [u1, u2] = self.directions();
        let mut out: Vec<QVec3> = self
            .domain
            .par_iter()
            .filter(|x| self.xrays[0].counts.contains_key(&u1.key(x)) && self.xrays[1].counts.contains_key(&u2.key(x)))
            .cloned()
            .collect();
        out.sort();
        out.dedup();
        out
    }
}

/// Slice of the line through a point with key `key` in direction `u ⊂ H`.
fn line_height(key: &QVec3, u: &Direction) -> SliceKey {
    let m = u.rep.cross(&tau_vec());
    SliceKey { height: -&(&key.dot(&m) / &u.rep.norm2()) }
}

/// One planar subproblem.
#[derive(Clone, Debug, PartialEq)]
pub struct SliceInstance {
    pub height: SliceKey,
    pub lines: [Vec<(QVec3, usize)>; 2],
    /// Candidate points with the indices of their two lines.
    pub candidates: Vec<(QVec3, usize, usize)>,
}

impl SliceInstance {
    pub fn totals(&self) -> (usize, usize) {
        let t = |i: usize| self.lines[i].iter().map(|l| l.1).sum();
        (t(0), t(1))
    }
}

/// Groups lines and candidates by slice height.
pub fn split_by_slice(inst: &TomographyInstance) -> Result<Vec<SliceInstance>> {
    let n = tau_vec();
    let dirs = inst.directions();
    if dirs.iter().any(|d| d.planar || !d.rep.dot(&n).is_zero()) {
        return Err(Error::NotCoplanarDirections);
    }
    let mut slices: BTreeMap<SliceKey, SliceInstance> = BTreeMap::new();
    let mut index: [HashMap<QVec3, (SliceKey, usize)>; 2] = [HashMap::new(), HashMap::new()];
    for j in 0..2 {
        for (key, &count) in &inst.xrays[j].counts {
            let h = line_height(key, dirs[j]);
            let s = slices.entry(h.clone()).or_insert_with(|| SliceInstance {
                height: h.clone(),
                lines: [Vec::new(), Vec::new()],
                candidates: Vec::new(),
            });
            index[j].insert(key.clone(), (h, s.lines[j].len()));
            s.lines[j].push((key.clone(), count));
        }
    }
    for x in inst.candidates() {
        let (h, a) = index[0][&dirs[0].key(&x)].clone();
        let (_, b) = index[1][&dirs[1].key(&x)];
        debug_assert_eq!(h, height(&x));
        slices.get_mut(&h).expect("slice exists").candidates.push((x, a, b));
    }
    Ok(slices.into_values().collect())
}

/// Max-flow state of one slice; `mid` holds the candidate edge ids.
#[derive(Clone, Debug)]
struct SliceFlow {
    net: FlowNetwork,
    mid: Vec<usize>,
    feasible: bool,
}

fn solve_flow(s: &SliceInstance) -> SliceFlow {
    let (t1, t2) = s.totals();
    let n1 = s.lines[0].len();
    let n2 = s.lines[1].len();
    let (src, snk) = (n1 + n2, n1 + n2 + 1);
    let mut net = FlowNetwork::new(n1 + n2 + 2);
    for (i, l) in s.lines[0].iter().enumerate() {
        net.add_edge(src, i, l.1 as i64);
    }
    for (i, l) in s.lines[1].iter().enumerate() {
        net.add_edge(n1 + i, snk, l.1 as i64);
    }
    let mid = s.candidates.iter().map(|(_, a, b)| net.add_edge(*a, n1 + b, 1)).collect();
    let f = net.max_flow(src, snk);
    SliceFlow { net, mid, feasible: t1 == t2 && f as usize == t1 }
}

impl SliceFlow {
    fn chosen(&self, s: &SliceInstance) -> Vec<QVec3> {
        self.mid.iter().zip(&s.candidates).filter(|(e, _)| self.net.flow(**e) == 1).map(|(_, c)| c.0.clone()).collect()
    }
}

/// Whether the slice has a solution.
pub fn slice_consistent(s: &SliceInstance) -> bool {
    solve_flow(s).feasible
}

/// Whether some finite subset of the domain has the prescribed X-rays.
pub fn consistency(inst: &TomographyInstance) -> Result<bool> {
    let (t1, t2) = inst.totals();
    if t1 != t2 {
        return Ok(false);
    }
    Ok(split_by_slice(inst)?.par_iter().all(slice_consistent))
}

fn solve_all(inst: &TomographyInstance) -> Result<Vec<(SliceInstance, SliceFlow)>> {
    let (t1, t2) = inst.totals();
    if t1 != t2 {
        return Err(Error::UnequalTotals(t1, t2));
    }
    let solved: Vec<(SliceInstance, SliceFlow)> = split_by_slice(inst)?
        .into_par_iter()
        .map(|s| {
            let f = solve_flow(&s);
            (s, f)
        })
        .collect();
    if solved.iter().any(|(_, f)| !f.feasible) {
        return Err(Error::Infeasible);
    }
    Ok(solved)
}

/// A subset of the domain with the prescribed X-rays.
pub fn reconstruct(inst: &TomographyInstance) -> Result<Vec<QVec3>> {
    let mut out: Vec<QVec3> = solve_all(inst)?.iter().flat_map(|(s, f)| f.chosen(s)).collect();
    out.sort();
    let [u1, u2] = inst.directions();
    assert!(xray(&out, u1) == inst.xrays[0] && xray(&out, u2) == inst.xrays[1], "flow solution violates the X-rays");
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Uniqueness {
    Unique { solution: Vec<QVec3> },
    NonUnique { first: Vec<QVec3>, second: Vec<QVec3> },
}

/// Decides whether the solution is unique. A second solution exists iff the
/// residual graph of some slice has an alternating cycle between selected and
/// unselected candidates.
pub fn uniqueness(inst: &TomographyInstance) -> Result<Uniqueness> {
    let solved = solve_all(inst)?;
    let mut first: Vec<QVec3> = solved.iter().flat_map(|(s, f)| f.chosen(s)).collect();
    first.sort();
    for (s, f) in &solved {
        let n1 = s.lines[0].len();
        let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n1 + s.lines[1].len()];
        for (i, ((_, a, b), e)) in s.candidates.iter().zip(&f.mid).enumerate() {
            if f.net.flow(*e) == 1 {
                adj[n1 + b].push((*a, i));
            } else {
                adj[*a].push((n1 + b, i));
            }
        }
        if let Some(cycle) = find_cycle(&adj) {
            let swap: std::collections::HashSet<&QVec3> = cycle.iter().map(|&i| &s.candidates[i].0).collect();
            let mut second: Vec<QVec3> = first.iter().filter(|x| !swap.contains(x)).cloned().collect();
            let chosen: std::collections::HashSet<&QVec3> = first.iter().collect();
            second.extend(cycle.iter().map(|&i| &s.candidates[i].0).filter(|x| !chosen.contains(x)).cloned());
            second.sort();
            let [u1, u2] = inst.directions();
            assert!(same_xrays(&first, &second, &[u1.clone(), u2.clone()]), "cycle swap changed the X-rays");
            return Ok(Uniqueness::NonUnique { first, second });
        }
    }
    Ok(Uniqueness::Unique { solution: first })
}

pub const BRUTE_FORCE_LIMIT: usize = 24;

/// All solutions (up to `cap`) by exhaustive search over candidate subsets.
pub fn brute_force_oracle(inst: &TomographyInstance, cap: usize) -> Result<Vec<Vec<QVec3>>> {
    let cands = inst.candidates();
    if cands.len() > BRUTE_FORCE_LIMIT {
        return Err(Error::TooLarge(cands.len(), BRUTE_FORCE_LIMIT));
    }
    let [u1, u2] = inst.directions();
    let (t1, t2) = inst.totals();
    let mut out = Vec::new();
    if t1 != t2 {
        return Ok(out);
    }
    let n = cands.len();
    for mask in 0u32..(1u32 << n) {
        if mask.count_ones() as usize != t1 {
            continue;
        }
        let f: Vec<QVec3> = (0..n).filter(|i| mask >> i & 1 == 1).map(|i| cands[i].clone()).collect();
        if xray(&f, u1) == inst.xrays[0] && xray(&f, u2) == inst.xrays[1] {
            out.push(f);
            if out.len() >= cap {
                break;
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::convex::u_ico;
    use crate::icosian::ModuleTag;

    fn dirs() -> (Direction, Direction) {
        let u = u_ico(ModuleTag::ImIcosian);
        (u[0].clone(), u[1].clone())
    }

    fn parallelogram() -> (Vec<QVec3>, Vec<QVec3>) {
        let (u1, u2) = dirs();
        let f = vec![QVec3::zero(), &u1.rep + &u2.rep];
        let g = vec![u1.rep.clone(), u2.rep.clone()];
        (f, g)
    }

    #[test]
    fn parallelogram_is_not_unique() {
        let (u1, u2) = dirs();
        let (f, g) = parallelogram();
        let domain: Vec<QVec3> = f.iter().chain(&g).cloned().collect();
        let inst = TomographyInstance::from_set(&f, &u1, &u2, domain).unwrap();
        assert!(consistency(&inst).unwrap());
        let sols = brute_force_oracle(&inst, 10).unwrap();
        assert_eq!(sols.len(), 2);
        match uniqueness(&inst).unwrap() {
            Uniqueness::NonUnique { first, second } => {
                let mut both = vec![first, second];
                both.sort();
                let mut exp = vec![f.clone(), g.clone()];
                for e in &mut exp {
                    e.sort();
                }
                exp.sort();
                assert_eq!(both, exp);
            }
            u => panic!("expected non-unique, got {u:?}"),
        }
    }

    #[test]
    fn single_point_and_empty() {
        let (u1, u2) = dirs();
        let p = vec![QVec3::from_ints(1, 2, 3)];
        let inst = TomographyInstance::from_set(&p, &u1, &u2, p.clone()).unwrap();
        assert_eq!(uniqueness(&inst).unwrap(), Uniqueness::Unique { solution: p.clone() });
        assert_eq!(brute_force_oracle(&inst, 10).unwrap(), vec![p.clone()]);
        let empty = TomographyInstance::from_set(&[], &u1, &u2, p.clone()).unwrap();
        assert_eq!(reconstruct(&empty).unwrap(), Vec::<QVec3>::new());
    }

    #[test]
    fn infeasible_and_unequal() {
        let (u1, u2) = dirs();
        let p = vec![QVec3::from_ints(1, 2, 3)];
        let mut inst = TomographyInstance::from_set(&p, &u1, &u2, p.clone()).unwrap();
        for c in inst.xrays[0].counts.values_mut() {
            *c = 2;
        }
        assert!(!consistency(&inst).unwrap());
        assert!(matches!(reconstruct(&inst), Err(Error::UnequalTotals(2, 1))));
        for c in inst.xrays[1].counts.values_mut() {
            *c = 2;
        }
        assert!(!consistency(&inst).unwrap());
        assert!(matches!(reconstruct(&inst), Err(Error::Infeasible)));
        assert!(brute_force_oracle(&inst, 10).unwrap().is_empty());
    }

    #[test]
    fn rejects_directions_off_plane() {
        let u = Direction::spatial(&QVec3::from_ints(1, 0, 0), ModuleTag::ImIcosian).unwrap();
        let (u1, _) = dirs();
        assert!(matches!(TomographyInstance::from_set(&[], &u, &u1, vec![]), Err(Error::NotCoplanarDirections)));
    }

    #[test]
    fn two_heights_split() {
        let (u1, u2) = dirs();
        let (f, _) = parallelogram();
        let lifted: Vec<QVec3> = f.iter().map(|x| x + &QVec3::from_ints(1, 0, 0)).collect();
        let all: Vec<QVec3> = f.iter().chain(&lifted).cloned().collect();
        let inst = TomographyInstance::from_set(&all, &u1, &u2, all.clone()).unwrap();
        let slices = split_by_slice(&inst).unwrap();
        assert_eq!(slices.len(), 2);
        for s in &slices {
            assert!(s.candidates.iter().all(|(x, _, _)| height(x) == s.height));
        }
    }
}

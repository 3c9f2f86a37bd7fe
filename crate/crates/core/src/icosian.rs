//! Quaternions over `Q(τ)`, the icosian group, the icosahedral modules
//! `M_B`, `M_F`, `M_P` and the rotation groups `Y`, `Y*`, `Y_h`, `Y_h*`.

use std::collections::{HashSet, VecDeque};
use std::fmt;
use std::hash::Hash;
use std::ops::Mul;

use serde::{Deserialize, Serialize};

use crate::golden::{GoldenInt, GoldenRat, Residue};
use crate::linalg::{Mat3, QVec3};

/// `a + bi + cj + dk` with coefficients in `Q(τ)`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GoldenQuaternion {
    pub re: GoldenRat,
    pub im: QVec3,
}

impl GoldenQuaternion {
    pub fn new(re: GoldenRat, im: QVec3) -> Self {
        GoldenQuaternion { re, im }
    }

    pub fn from_coords(c: [GoldenRat; 4]) -> Self {
        let [a, b, c2, d] = c;
        GoldenQuaternion { re: a, im: QVec3([b, c2, d]) }
    }

    pub fn one() -> Self {
        GoldenQuaternion { re: GoldenRat::one(), im: QVec3::zero() }
    }

    pub fn i() -> Self {
        GoldenQuaternion { re: GoldenRat::zero(), im: QVec3::from_ints(1, 0, 0) }
    }

    pub fn j() -> Self {
        GoldenQuaternion { re: GoldenRat::zero(), im: QVec3::from_ints(0, 1, 0) }
    }

    pub fn k() -> Self {
        GoldenQuaternion { re: GoldenRat::zero(), im: QVec3::from_ints(0, 0, 1) }
    }

    pub fn conj(&self) -> Self {
        GoldenQuaternion { re: self.re.clone(), im: -&self.im }
    }

    /// Reduced norm `a² + b² + c² + d²`.
    pub fn nr(&self) -> GoldenRat {
        &(&self.re * &self.re) + &self.im.norm2()
    }

    /// Reduced trace `2a`.
    pub fn tr(&self) -> GoldenRat {
        &self.re + &self.re
    }

    pub fn neg(&self) -> Self {
        GoldenQuaternion { re: -&self.re, im: -&self.im }
    }
}

impl<'a> Mul<&'a GoldenQuaternion> for &'a GoldenQuaternion {
    type Output = GoldenQuaternion;
    fn mul(self, o: &'a GoldenQuaternion) -> GoldenQuaternion {
        let re = &(&self.re * &o.re) - &self.im.dot(&o.im);
        let im = &(&o.im.scale(&self.re) + &self.im.scale(&o.re)) + &self.im.cross(&o.im);
        GoldenQuaternion { re, im }
    }
}

impl fmt::Debug for GoldenQuaternion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}; {}, {}, {}]", self.re, self.im.0[0], self.im.0[1], self.im.0[2])
    }
}

/// The twelve even permutations of four positions.
fn even_permutations4() -> Vec<[usize; 4]> {
    let mut out = Vec::new();
    for a in 0..4 {
        for b in 0..4 {
            for c in 0..4 {
                for d in 0..4 {
                    let p = [a, b, c, d];
                    let distinct = (0..4).all(|i| (0..4).all(|j| i == j || p[i] != p[j]));
                    if !distinct {
                        continue;
                    }
                    let inversions = (0..4).flat_map(|i| (i + 1..4).map(move |j| (i, j))).filter(|&(i, j)| p[i] > p[j]).count();
                    if inversions % 2 == 0 {
                        out.push(p);
                    }
                }
            }
        }
    }
    out
}

fn with_signs(base: &[GoldenRat; 4], signed: &[usize]) -> Vec<[GoldenRat; 4]> {
    let mut out = Vec::new();
    for mask in 0..(1u32 << signed.len()) {
        let mut v = base.clone();
        for (bit, &pos) in signed.iter().enumerate() {
            if mask & (1 << bit) != 0 {
                v[pos] = -&v[pos];
            }
        }
        out.push(v);
    }
    out
}

/// The generating quaternions `(±1,0,0,0)^A`, `½(±1,±1,±1,±1)^A` and `½(0,±1,±τ',τ)^A`.
pub fn icosian_generators() -> Vec<GoldenQuaternion> {
    let z = GoldenRat::zero;
    let h = GoldenRat::half;
    let perms = even_permutations4();
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    let mut push = |c: [GoldenRat; 4], out: &mut Vec<GoldenQuaternion>| {
        let q = GoldenQuaternion::from_coords(c);
        if seen.insert(q.clone()) {
            out.push(q);
        }
    };
    let families: [([GoldenRat; 4], Vec<usize>); 3] = [
        ([GoldenRat::one(), z(), z(), z()], vec![0]),
        ([h(), h(), h(), h()], vec![0, 1, 2, 3]),
        ([z(), h(), &GoldenRat::tau_conj() * &h(), &GoldenRat::tau() * &h()], vec![1, 2]),
    ];
    for (base, signed) in families.iter() {
        for v in with_signs(base, signed) {
            for p in &perms {
                let permuted = [v[p[0]].clone(), v[p[1]].clone(), v[p[2]].clone(), v[p[3]].clone()];
                push(permuted, &mut out);
            }
        }
    }
    out
}

/// Breadth-first closure of `gens` under `mul`, with exact equality as set membership.
pub fn closure<T, F>(gens: &[T], mul: F) -> Vec<T>
where
    T: Clone + Eq + Hash,
    F: Fn(&T, &T) -> T,
{
    let mut seen: HashSet<T> = HashSet::new();
    let mut order = Vec::new();
    let mut queue = VecDeque::new();
    for g in gens {
        if seen.insert(g.clone()) {
            order.push(g.clone());
            queue.push_back(g.clone());
        }
    }
    while let Some(x) = queue.pop_front() {
        for g in gens {
            for p in [mul(&x, g), mul(g, &x)] {
                if seen.insert(p.clone()) {
                    order.push(p.clone());
                    queue.push_back(p);
                }
            }
        }
    }
    order
}

/// The icosian group (order 120).
pub fn icosian_group() -> Vec<GoldenQuaternion> {
    closure(&icosian_generators(), |a, b| a * b)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ModuleTag {
    MB,
    MF,
    MP,
    /// `Im(𝕀) = ½ M_B`, the module of B-type model sets.
    ImIcosian,
    /// `𝕀₀ = ½ M_F`, the module of F-type model sets.
    Icosian0,
}

impl ModuleTag {
    /// The integral module whose half is this one, or itself if already integral.
    pub fn numerator_module(self) -> ModuleTag {
        match self {
            ModuleTag::ImIcosian => ModuleTag::MB,
            ModuleTag::Icosian0 => ModuleTag::MF,
            t => t,
        }
    }

    pub fn is_halved(self) -> bool {
        matches!(self, ModuleTag::ImIcosian | ModuleTag::Icosian0)
    }

    /// A `Z[τ]`-basis of the integral module (not defined for `M_P`).
    pub fn basis(self) -> Option<[QVec3; 3]> {
        let t = GoldenRat::tau();
        let v = |a: GoldenRat, b: GoldenRat, c: GoldenRat| QVec3::new(a, b, c);
        match self.numerator_module() {
            ModuleTag::MB => Some([
                QVec3::from_ints(2, 0, 0),
                QVec3::from_ints(1, 1, 1),
                v(t, 0.into(), 1.into()),
            ]),
            ModuleTag::MF => Some([
                QVec3::from_ints(2, 0, 0),
                v(&t + &GoldenRat::one(), t.clone(), 1.into()),
                QVec3::from_ints(0, 0, 2),
            ]),
            _ => None,
        }
    }

    /// The second listed `Z[τ]`-basis.
    pub fn alternate_basis(self) -> Option<[QVec3; 3]> {
        let mid = QVec3::new((-1).into(), -GoldenRat::tau_conj(), GoldenRat::tau());
        match self.numerator_module() {
            ModuleTag::MB => Some([QVec3::from_ints(0, 2, 0), mid, QVec3::from_ints(1, 1, 1)]),
            ModuleTag::MF => Some([QVec3::from_ints(0, 2, 0), mid, QVec3::from_ints(2, 0, 0)]),
            _ => None,
        }
    }
}

/// `τ²β + τγ + δ ≡ 0 (mod 2)`.
pub fn mb_congruence(r: [Residue; 3]) -> bool {
    Residue::TAU2.mul(r[0]).add(Residue::TAU.mul(r[1])).add(r[2]).is_zero()
}

/// `β ≡ τγ ≡ τ²δ (mod 2)`.
pub fn mf_congruence(r: [Residue; 3]) -> bool {
    let x = r[0];
    let y = Residue::TAU.mul(r[1]);
    let z = Residue::TAU2.mul(r[2]);
    x == y && y == z
}

/// `M_B` congruence together with `β + γ + δ ≡ 0 (mod 2)`.
pub fn mf_congruence_via_mb(r: [Residue; 3]) -> bool {
    mb_congruence(r) && r[0].add(r[1]).add(r[2]).is_zero()
}

/// `M_B` congruence together with `β + γ + δ ≡ 0 or τ (mod 2)`.
pub fn mp_congruence(r: [Residue; 3]) -> bool {
    let s = r[0].add(r[1]).add(r[2]);
    mb_congruence(r) && (s == Residue::ZERO || s == Residue::TAU)
}

fn residues(v: &[GoldenInt; 3]) -> [Residue; 3] {
    [v[0].residue_mod2(), v[1].residue_mod2(), v[2].residue_mod2()]
}

/// Membership of an integral vector in the integral module `tag.numerator_module()`.
pub fn integral_module_contains(v: &[GoldenInt; 3], tag: ModuleTag) -> bool {
    let r = residues(v);
    match tag.numerator_module() {
        ModuleTag::MB => mb_congruence(r),
        ModuleTag::MF => mf_congruence(r),
        ModuleTag::MP => mp_congruence(r),
        _ => unreachable!(),
    }
}

/// Exact module membership. Halved tags test `2v` against `M_B` / `M_F`.
pub fn module_contains(v: &QVec3, tag: ModuleTag) -> bool {
    let w = if tag.is_halved() { v.scale(&GoldenRat::from_int(2)) } else { v.clone() };
    if !w.is_integral() {
        return false;
    }
    let n = w.to_integral(&1.into());
    integral_module_contains(&n, tag)
}

/// Membership in the `Z[τ]`-span of three independent vectors, decided by
/// Cramer's rule and an integrality check on the coefficients.
pub fn in_z_tau_span(v: &QVec3, basis: &[QVec3; 3]) -> bool {
    let m = Mat3([basis[0].0.clone(), basis[1].0.clone(), basis[2].0.clone()]).transpose();
    let det = m.det();
    if det.is_zero() {
        return false;
    }
    (0..3).all(|col| {
        let mut mc = m.clone();
        for row in 0..3 {
            mc.0[row][col] = v.0[row].clone();
        }
        (&mc.det() / &det).is_integral()
    })
}

fn residue_vectors() -> Vec<[Residue; 3]> {
    let mut out = Vec::with_capacity(64);
    for a in Residue::all() {
        for b in Residue::all() {
            for c in Residue::all() {
                out.push([a, b, c]);
            }
        }
    }
    out
}

/// Number of residue classes of `Z[τ]³ / 2Z[τ]³` satisfying the congruence.
pub fn residue_count(tag: ModuleTag) -> usize {
    residue_vectors()
        .into_iter()
        .filter(|r| integral_module_contains(&[r[0].lift(), r[1].lift(), r[2].lift()], tag))
        .count()
}

/// Subgroup index `[sup : sub]` for modules containing `2Z[τ]³`, computed
/// from residue counts. Returns `None` if the residues of `sub` are not
/// contained in those of `sup`.
pub fn module_index(sub: ModuleTag, sup: ModuleTag) -> Option<usize> {
    let rs = residue_vectors();
    let lift = |r: &[Residue; 3]| [r[0].lift(), r[1].lift(), r[2].lift()];
    let sub_set: Vec<_> = rs.iter().filter(|r| integral_module_contains(&lift(r), sub)).collect();
    let sup_count = rs.iter().filter(|r| integral_module_contains(&lift(r), sup)).count();
    if !sub_set.iter().all(|r| integral_module_contains(&lift(r), sup)) {
        return None;
    }
    (sup_count % sub_set.len() == 0).then(|| sup_count / sub_set.len())
}

pub fn module_index_mf_in_mb() -> usize {
    module_index(ModuleTag::MF, ModuleTag::MB).expect("M_F ⊂ M_B")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum RotationGroupKind {
    Y,
    Ystar,
    Yh,
    Yhstar,
}

/// The order-2 generator `diag(-1,-1,1)`.
pub fn generator_order2() -> Mat3 {
    let o = GoldenRat::one;
    let z = GoldenRat::zero;
    Mat3([[-o(), z(), z()], [z(), -o(), z()], [z(), z(), o()]])
}

/// The order-5 generator `½[[τ,-1,-τ'],[1,-τ',-τ],[-τ',τ,1]]`.
pub fn generator_order5() -> Mat3 {
    let h = GoldenRat::half();
    let t = GoldenRat::tau();
    let tc = GoldenRat::tau_conj();
    let o = GoldenRat::one();
    let rows = [
        [t.clone(), -&o, -&tc],
        [o.clone(), -&tc, -&t],
        [-&tc, t.clone(), o.clone()],
    ];
    Mat3(rows.map(|r| r.map(|c| &c * &h)))
}

/// Exact closure of the two generators (conjugated entrywise for starred variants).
pub fn rotation_group(which: RotationGroupKind) -> Vec<Mat3> {
    let starred = matches!(which, RotationGroupKind::Ystar | RotationGroupKind::Yhstar);
    let mut gens = vec![generator_order2(), generator_order5()];
    if starred {
        gens = gens.iter().map(Mat3::star).collect();
    }
    let y = closure(&gens, |a, b| a * b);
    match which {
        RotationGroupKind::Y | RotationGroupKind::Ystar => y,
        RotationGroupKind::Yh | RotationGroupKind::Yhstar => {
            let mut all = y.clone();
            all.extend(y.iter().map(Mat3::neg));
            all
        }
    }
}

pub fn multiplicative_order(m: &Mat3, max: usize) -> Option<usize> {
    let id = Mat3::identity();
    let mut p = m.clone();
    for k in 1..=max {
        if p == id {
            return Some(k);
        }
        p = &p * m;
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(a: (i64, i64), b: (i64, i64), c: (i64, i64)) -> QVec3 {
        QVec3::new(GoldenInt::new(a.0, a.1).into(), GoldenInt::new(b.0, b.1).into(), GoldenInt::new(c.0, c.1).into())
    }

    #[test]
    fn quaternion_units() {
        let (i, j, k) = (GoldenQuaternion::i(), GoldenQuaternion::j(), GoldenQuaternion::k());
        assert_eq!(&i * &j, k);
        assert_eq!(&j * &i, k.neg());
        let minus_one = GoldenQuaternion::one().neg();
        assert_eq!(&i * &i, minus_one);
        assert_eq!(&(&i * &j) * &k, minus_one);
    }

    #[test]
    fn quaternion_norm_via_conjugate() {
        let q = GoldenQuaternion::from_coords([
            GoldenRat::from_parts(1, 2, 3),
            GoldenRat::tau(),
            GoldenRat::ratio(-5, 2),
            GoldenRat::from_parts(0, -1, 7),
        ]);
        let p = &q * &q.conj();
        assert_eq!(p.re, q.nr());
        assert!(p.im.is_zero());
        assert_eq!(q.tr(), &q.re + &q.re);
    }

    #[test]
    fn generator_counts() {
        let g = icosian_generators();
        assert_eq!(g.len(), 8 + 16 + 48);
        assert!(g.iter().all(|q| q.nr() == GoldenRat::one()));
    }

    #[test]
    fn module_examples() {
        assert!(module_contains(&QVec3::from_ints(2, 0, 0), ModuleTag::MB));
        assert!(!module_contains(&QVec3::from_ints(1, 0, 0), ModuleTag::MB));
        assert!(!module_contains(&QVec3::from_ints(1, 1, 1), ModuleTag::MF));
        assert!(module_contains(&v((1, 1), (0, 1), (1, 0)), ModuleTag::MF));
        assert!(module_contains(&QVec3::from_ints(1, 1, 1), ModuleTag::MB));
        // halved modules
        assert!(module_contains(&QVec3::from_ints(1, 0, 0), ModuleTag::ImIcosian));
        let half = GoldenRat::half();
        assert!(module_contains(&QVec3::from_ints(1, 1, 1).scale(&half), ModuleTag::ImIcosian));
        assert!(!module_contains(&QVec3::from_ints(1, 1, 1).scale(&half), ModuleTag::Icosian0));
        assert!(!module_contains(&QVec3::new(GoldenRat::ratio(1, 3), 0.into(), 0.into()), ModuleTag::MB));
    }

    #[test]
    fn residue_counts_and_index() {
        assert_eq!(residue_count(ModuleTag::MB), 16);
        assert_eq!(residue_count(ModuleTag::MF), 4);
        assert_eq!(residue_count(ModuleTag::MP), 8);
        assert_eq!(module_index_mf_in_mb(), 4);
        assert_eq!(module_index(ModuleTag::MB, ModuleTag::MB), Some(1));
        assert_eq!(module_index(ModuleTag::MF, ModuleTag::MP), Some(2));
        assert_eq!(module_index(ModuleTag::MB, ModuleTag::MF), None);
    }

    #[test]
    fn listed_bases_satisfy_congruences() {
        for tag in [ModuleTag::MB, ModuleTag::MF] {
            for basis in [tag.basis().unwrap(), tag.alternate_basis().unwrap()] {
                for b in &basis {
                    assert!(module_contains(b, tag), "{b:?} not in {tag:?}");
                }
            }
        }
    }

    #[test]
    fn generator_orders() {
        assert_eq!(multiplicative_order(&generator_order2(), 10), Some(2));
        assert_eq!(multiplicative_order(&generator_order5(), 10), Some(5));
        let l = generator_order2();
        assert_eq!(&l * &l, Mat3::identity());
        assert!(generator_order5().is_orthogonal());
        assert_eq!(generator_order5().det(), GoldenRat::one());
    }

    #[test]
    fn group_orders() {
        let g = icosian_group();
        assert_eq!(g.len(), 120);
        assert!(g.contains(&GoldenQuaternion::one()));
        assert!(g.iter().all(|q| q.nr() == GoldenRat::one()));
        assert_eq!(rotation_group(RotationGroupKind::Y).len(), 60);
        assert_eq!(rotation_group(RotationGroupKind::Ystar).len(), 60);
        assert_eq!(rotation_group(RotationGroupKind::Yh).len(), 120);
        assert_eq!(rotation_group(RotationGroupKind::Yhstar).len(), 120);
        for m in rotation_group(RotationGroupKind::Y) {
            assert!(m.is_orthogonal());
            assert_eq!(m.det(), GoldenRat::one());
        }
    }

    #[test]
    fn doubled_imaginary_parts_lie_in_mb() {
        for q in icosian_group() {
            assert!(module_contains(&q.im, ModuleTag::ImIcosian), "{q:?}");
        }
    }

    #[test]
    fn even_permutation_count() {
        assert_eq!(even_permutations4().len(), 12);
    }
}

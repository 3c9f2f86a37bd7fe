//! Small-scale invariant checks run by `icotomo selftest`.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use icotomo_core::convex::{property_e_check, u5_reps, u_ico};
use icotomo_core::direction::cyc_norm2;
use icotomo_core::experiments::random_instance;
use icotomo_core::icosian::{icosian_group, module_index_mf_in_mb};
use icotomo_core::modelset::ModelSet;
use icotomo_core::reconstruction::reconstruct;
use icotomo_core::slicing::{slice_oracle, slice_patch};
use icotomo_core::tomography::{grid, same_xrays, switching_pair, xray};
use icotomo_core::window::Shift;
use icotomo_core::{GoldenInt, GoldenRat, QVec3, Result};

fn check(name: &str, f: impl FnOnce() -> Result<bool>) -> (String, bool) {
    (name.to_string(), f().unwrap_or(false))
}

pub fn run(seed: u64) -> Vec<(String, bool)> {
    let model = ModelSet::example_b();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let u = u_ico(model.tag());
    vec![
        check("icosian group has 120 elements of norm 1", || {
            let g = icosian_group();
            Ok(g.len() == 120 && g.iter().all(|q| q.nr() == GoldenRat::one()))
        }),
        check("[M_B : M_F] = 4", || Ok(module_index_mf_in_mb() == 4)),
        check("central slice equals cyclotomic model set", || {
            let patch = model.patch(&QVec3::zero(), &GoldenRat::from_int(6))?;
            let s = slice_patch(&patch, &model.t)?;
            Ok(s.points == slice_oracle(&s))
        }),
        check("|1 + ζ₅| = τ", || Ok(cyc_norm2(&1.into(), &1.into()) == GoldenRat::tau().pow(2))),
        check("property (E) for (1+τ)+ζ₅, −τ+ζ₅", || {
            let o = u5_reps();
            let (det, unit) = property_e_check(&o[0], &o[2])?;
            Ok(det == GoldenInt::tau_pow(3) && unit)
        }),
        check("window centroid equals shift", || Ok(model.window.centroid() == *model.window.shift() && matches!(model.window.shift(), Shift::Exact(_)))),
        check("grid collapse with three directions", || {
            let patch = model.patch(&QVec3::zero(), &GoldenRat::from_int(4))?;
            let pts = patch.values();
            for _ in 0..20 {
                let mut f: Vec<QVec3> = pts.choose_multiple(&mut rng, 2).cloned().collect();
                f.sort();
                if grid(&f, &u[..3])? != f {
                    return Ok(false);
                }
            }
            Ok(true)
        }),
        check("switching pair for three directions", || {
            let p = switching_pair(&u[..3], &model, &QVec3::zero(), &GoldenRat::from_int(15))?;
            Ok(p.f.len() == 4 && p.f != p.f_prime && same_xrays(&p.f, &p.f_prime, &u[..3]))
        }),
        check("reconstruction round trip", || {
            let patch = model.patch(&QVec3::zero(), &GoldenRat::from_int(5))?;
            let pts = patch.values();
            for size in [5, 10, 20] {
                let inst = random_instance(&pts, &u[0], &u[1], size, false, &mut rng)?;
                let g = reconstruct(&inst)?;
                if xray(&g, &u[0]) != inst.xrays[0] || xray(&g, &u[1]) != inst.xrays[1] {
                    return Ok(false);
                }
            }
            Ok(true)
        }),
    ]
}

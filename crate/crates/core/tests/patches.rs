use icotomo_core::convex::{u5, u_ico};
use icotomo_core::modelset::ModelSet;
use icotomo_core::slicing::{slice_patch, slice_window, CycPoint};
use icotomo_core::tomography::{grid, same_xrays, switching_pair, xray};
use icotomo_core::{GoldenRat, QVec3};

#[test]
fn central_cross_section_is_a_decagon() {
    let m = ModelSet::example_b();
    let w = slice_window(&m, &QVec3::zero()).unwrap();
    assert_eq!(w.vertices.len(), 10);
}

#[test]
fn every_slice_contains_its_base_point() {
    let patch = ModelSet::example_f().patch(&QVec3::zero(), &GoldenRat::from_int(5)).unwrap();
    for lambda in patch.values().iter().step_by(37) {
        let s = slice_patch(&patch, lambda).unwrap();
        assert!(s.points.contains(&CycPoint::zero()));
        assert!(s.points.iter().all(|z| z.is_integral() && s.window.contains(&z.star5().p2())));
    }
}

#[test]
fn no_boundary_points_in_example_patch() {
    let patch = ModelSet::example_b().patch(&QVec3::zero(), &GoldenRat::from_int(10)).unwrap();
    assert!(patch.boundary_points().unwrap().is_empty());
    assert!(patch.verify().unwrap());
}

#[test]
fn switching_pairs_share_grids() {
    let m = ModelSet::example_b();
    let u = u_ico(m.tag());
    for k in 2..=4 {
        let p = switching_pair(&u[..k], &m, &QVec3::zero(), &GoldenRat::from_int(15)).unwrap();
        let g = grid(&p.f, &u[..k]).unwrap();
        assert_eq!(g, grid(&p.f_prime, &u[..k]).unwrap());
        assert!(p.f.iter().chain(&p.f_prime).all(|x| g.contains(x)));
        for d in &u[..k] {
            assert_eq!(xray(&p.f, d).total(), xray(&p.f_prime, d).total());
        }
        let mut bigger = p.f.clone();
        bigger.push(&p.f[0] + &QVec3::from_ints(0, 0, 40));
        assert!(!same_xrays(&bigger, &p.f_prime, &u[..k]));
    }
}

#[test]
fn direction_sets_have_expected_shape() {
    assert_eq!(u_ico(ModelSet::example_b().tag()).len(), 4);
    assert!(u5().iter().all(|d| d.planar));
}

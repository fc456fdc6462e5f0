//! End-to-end runs through the public API, crossing module boundaries.

use lcwlab_core::ckf::{
    lcw_conditions, orbit_class, orbit_of_family, reduce_to_family, verify_correspondence,
    ConformalMove, LcwFamily,
};
use lcwlab_core::dist::{is_integrable, is_umbilical, Distribution};
use lcwlab_core::flags::{det_cy, eigenflag_find_3d, weyl_type_with, FlagSearch3d, WeylTag};
use lcwlab_core::liealg::{
    cotton_york, cotton_york_closed_form_3d, fixtures, scalar, weyl, LieAlgebra,
};
use lcwlab_core::ratmath::linalg::{basis_vector, int_vector};
use lcwlab_core::ratmath::{q, qi, Matrix};

#[test]
fn unimodular_flags_carry_no_weight() {
    let alg = fixtures::unimodular_6_m4_5();
    let cy = cotton_york(&alg).unwrap();
    let closed = cotton_york_closed_form_3d(&qi(6), &qi(-4), &qi(5));
    for (i, value) in closed.iter().enumerate() {
        assert_eq!(&cy[(i, i)], value);
    }
    assert!(det_cy(&cy).unwrap().is_zero());

    let FlagSearch3d::Found { certificates } = eigenflag_find_3d(&cy).unwrap() else {
        panic!("CY vanishes");
    };
    assert_eq!(certificates.len(), 2);
    for cert in &certificates {
        let v = cert.exact_direction().expect("exact flag");
        let d = Distribution::orthogonal_to(v).unwrap();
        let integrable = is_integrable(&alg, &d).unwrap().integrable;
        let umbilical = is_umbilical(&alg, &d).unwrap().umbilical;
        assert!(!(integrable && umbilical), "{v:?} carries a weight");
    }
}

#[test]
fn scalar_curvature_survives_a_frame_permutation() {
    let alg = LieAlgebra::unimodular_3d(qi(1), q(1, 2), qi(-3));
    let swap = Matrix::from_ints(&[&[0, 1, 0], &[0, 0, 1], &[1, 0, 0]]);
    let moved = alg.change_basis(&swap).unwrap();
    assert_eq!(scalar(&alg), scalar(&moved));
}

#[test]
fn type_b_flags_are_the_frame() {
    let alg = fixtures::weyl_type_b();
    let found = weyl_type_with(&weyl(&alg).unwrap(), 1).unwrap();
    assert_eq!(found.tag, WeylTag::B);
    let dirs: Vec<_> = found
        .flags
        .iter()
        .map(|c| c.exact_direction().unwrap().clone())
        .collect();
    assert_eq!(dirs, (0..4).map(|i| basis_vector(4, i)).collect::<Vec<_>>());

    let last = Distribution::orthogonal_to(&basis_vector(4, 3)).unwrap();
    assert!(is_integrable(&alg, &last).unwrap().integrable);
    assert!(!is_umbilical(&alg, &last).unwrap().umbilical);
}

#[test]
fn families_survive_moves() {
    let families = [
        LcwFamily::linear(int_vector(&[1, 2, 0])).unwrap(),
        LcwFamily::logarithmic(3),
        LcwFamily::angular(int_vector(&[1, 0, 0]), int_vector(&[0, 1, 0])).unwrap(),
        LcwFamily::inverse_linear(int_vector(&[0, 0, 2])).unwrap(),
        LcwFamily::spherical_arctan(int_vector(&[1, 0, 0]), qi(2)).unwrap(),
        LcwFamily::spherical_arctanh(int_vector(&[1, 0, 0]), q(1, 2)).unwrap(),
    ];
    let samples = vec![
        int_vector(&[1, 2, 3]),
        int_vector(&[-2, 1, 1]),
        int_vector(&[3, -1, 2]),
    ];
    let moves = [
        ConformalMove::Translation {
            x0: int_vector(&[1, -1, 2]),
        },
        ConformalMove::Dilation { r: q(3, 2) },
        ConformalMove::Inversion,
    ];
    for f in &families {
        let x = f.field();
        assert!(lcw_conditions(&x).pass, "family {}", f.id);
        assert!(
            verify_correspondence(f, &samples).max_residual < 1e-6,
            "family {}",
            f.id
        );
        assert_eq!(reduce_to_family(&x).unwrap().family.id, f.id);
        for m in &moves {
            let y = x.act(m).unwrap();
            let reduced = reduce_to_family(&y).unwrap();
            assert_eq!(
                orbit_of_family(reduced.family.id),
                f.orbit(),
                "family {} under {m:?}",
                f.id
            );
            assert_eq!(orbit_class(&y).unwrap(), f.orbit());
            if m.is_affine() {
                assert_eq!(reduced.family.id, f.id, "family {} under {m:?}", f.id);
            }
        }
    }
}

use hypertoric::fixtures;
use hypertoric::rings::{
    distinguish, fingerprint, identity_map, present, present_os2, present_z2os, set_x_to_zero, verify_substitution_iso,
    RingKind, Verdict,
};
use hypertoric::{Arrangement, FieldKind, Ideal, Polynomial, Rational, F2};

fn u_names(n: usize, prefix: &str) -> Vec<String> {
    (1..=n).map(|i| format!("{prefix}{i}")).collect()
}

#[test]
fn z2os_at_x_zero_is_os2() {
    for arr in fixtures::all() {
        let z = present_z2os(&arr).unwrap().ideal::<F2>();
        let os = present_os2(&arr).unwrap().ideal::<F2>();
        let image = set_x_to_zero(&z, u_names(arr.len(), "e")).unwrap();
        assert!(image.equals(&os).unwrap(), "{:?}", arr.name());
    }
}

#[test]
fn s1_at_x_zero_is_ordinary() {
    for arr in fixtures::all() {
        for field in [FieldKind::Q, FieldKind::F2] {
            let s1 = present(&arr, RingKind::S1, Some(field)).unwrap();
            let ord = present(&arr, RingKind::Ordinary, Some(field)).unwrap();
            let names = u_names(arr.len(), "u");
            let same = match field {
                FieldKind::Q => set_x_to_zero(&s1.ideal::<Rational>(), names).unwrap().equals(&ord.ideal()).unwrap(),
                FieldKind::F2 => set_x_to_zero(&s1.ideal::<F2>(), names).unwrap().equals(&ord.ideal()).unwrap(),
            };
            assert!(same, "{:?} {field}", arr.name());
        }
    }
}

#[test]
fn z2os_is_free_over_x() {
    // numerator times (1 - t) of the deformation equals the os2 series
    for arr in fixtures::all() {
        let z = present_z2os(&arr).unwrap().ideal::<F2>().hilbert_series(8).unwrap();
        let os = present_os2(&arr).unwrap().ideal::<F2>().hilbert_series(8).unwrap();
        let mut scaled: Vec<i64> = z.truncation.clone();
        for d in (1..scaled.len()).rev() {
            scaled[d] -= scaled[d - 1];
        }
        assert_eq!(scaled, os.truncation, "{:?}", arr.name());
    }
}

#[test]
fn ordinary_total_is_vertex_count() {
    for arr in [fixtures::fig2a(), fixtures::fig2b(), fixtures::fig2c()] {
        let h = present(&arr, RingKind::Ordinary, None)
            .unwrap()
            .ideal::<Rational>()
            .hilbert_series(8)
            .unwrap();
        assert_eq!(h.total(), Some(hypertoric::regions::vertices(&arr).len() as i64));
    }
}

#[test]
fn fingerprints_are_permutation_invariant() {
    let arr = fixtures::fig2a5();
    let perm = [4, 2, 0, 3, 1];
    let moved = arr.permute(&perm).unwrap();
    for kind in [RingKind::Tds1, RingKind::Z2os] {
        let a = fingerprint(&present(&arr, kind, Some(FieldKind::F2)).unwrap()).unwrap();
        let b = fingerprint(&present(&moved, kind, Some(FieldKind::F2)).unwrap()).unwrap();
        assert_eq!(a.hilbert, b.hilbert);
        assert_eq!(a.profile_histogram(), b.profile_histogram());
        assert_eq!(distinguish(&a, &b).unwrap(), Verdict::EqualFingerprint);
    }
}

#[test]
fn identity_is_not_an_isomorphism_between_a_and_c() {
    let a = present(&fixtures::fig2a(), RingKind::Tds1, None).unwrap();
    let c = present(&fixtures::fig2c(), RingKind::Tds1, None).unwrap();
    let check = verify_substitution_iso(&a, &c, &identity_map(a.vars.len())).unwrap();
    assert!(check.invertible && check.hilbert_equal);
    assert!(!check.image_contained);
}

#[test]
fn mixed_fields_cannot_be_compared() {
    let arr = fixtures::fig2a();
    let q = fingerprint(&present(&arr, RingKind::Tds1, Some(FieldKind::Q)).unwrap()).unwrap();
    let f = fingerprint(&present(&arr, RingKind::Tds1, Some(FieldKind::F2)).unwrap()).unwrap();
    assert!(distinguish(&q, &f).is_err());
}

#[test]
fn single_hyperplane_os_algebra() {
    let arr = Arrangement::from_ints(1, &[(&[1], 0)], None).unwrap();
    let h = present_os2(&arr).unwrap().ideal::<F2>().hilbert_series(3).unwrap();
    assert_eq!(h.truncation, vec![1, 1, 0, 0]);
    let td = present(&arr, RingKind::Td, None).unwrap();
    assert!(td.relations.is_empty());
    assert!(hypertoric::rings::lawrence_specialize(&arr).unwrap());
}

#[test]
fn non_smooth_arrangements_warn() {
    let arr = Arrangement::from_ints(2, &[(&[2, 1], 0), (&[0, 1], 1)], None).unwrap();
    let p = present(&arr, RingKind::Tds1, None).unwrap();
    assert_eq!(p.warnings.len(), 1);
    assert!(p.warnings[0].contains("Q-coefficients advised"));
}

#[test]
fn relations_have_integer_coefficients_and_sorted_order() {
    for arr in fixtures::all() {
        for kind in RingKind::ALL {
            let p = present(&arr, kind, None).unwrap();
            assert!(p.relations.iter().all(Polynomial::has_integer_coefficients));
            let keys: Vec<_> = p.relations.iter().map(|r| (r.degree(), r.support())).collect();
            let mut sorted = keys.clone();
            sorted.sort();
            assert_eq!(keys, sorted, "{kind}");
            let ideal: Ideal<Rational> = p.ideal();
            assert!(ideal.is_homogeneous());
        }
    }
}

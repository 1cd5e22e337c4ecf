//! End-to-end classification checks below the acceptance scale: route
//! agreement, well-definedness of the classifying maps, and the normality
//! correspondence.

use hypergroups::action::same_orbit;
use hypergroups::extension::{
    classify_ext, class_representatives, ext_by_quotient, extensions_equal,
    hypergroup_of_extension, map_e, map_h, split_normal, Extension,
};
use hypergroups::group::{
    all_isomorphisms, cyclic, enumerate_groups_oracle, enumerate_transversals, isomorphism,
    GroupMorphism,
};

#[test]
fn degree_two_and_three_classifications_agree_across_routes() {
    for (h, m, expected) in [
        (cyclic(2), 2usize, 2usize),
        (cyclic(3), 2, 2),
        (cyclic(2), 3, 2),
    ] {
        let c = classify_ext(&h, m).unwrap();
        assert!(c.orbit_extensions.is_some());
        assert!(c.oracle_extensions.is_some());
        assert_eq!(c.class_count, expected);
    }
}

#[test]
fn isomorphic_extensions_land_in_one_orbit() {
    // the same subgroup seen through two different isomorphisms H -> image
    let g = cyclic(6);
    let h = cyclic(3);
    let sub = vec![0usize, 2, 4];
    let table = g.subgroup_table(&sub).unwrap();
    let isos = all_isomorphisms(&h, &table);
    assert_eq!(isos.len(), 2);
    let exts: Vec<Extension> = isos
        .iter()
        .map(|iso| {
            let map: Vec<usize> = iso.map().iter().map(|&p| sub[p]).collect();
            Extension::new(GroupMorphism::new(h.clone(), g.clone(), map).unwrap()).unwrap()
        })
        .collect();
    assert!(extensions_equal(&exts[0], &exts[1]));
    let x0 = map_h(&exts[0]).unwrap();
    let x1 = map_h(&exts[1]).unwrap();
    assert!(same_orbit(&x0, &x1).unwrap());
}

#[test]
fn transversal_choice_never_changes_the_orbit() {
    for n in [4usize, 6] {
        for g in enumerate_groups_oracle(n).unwrap() {
            for sub in g.all_subgroups() {
                let table = g.subgroup_table(&sub).unwrap();
                let iso = isomorphism(&table, &table).unwrap();
                let map: Vec<usize> = iso.map().iter().map(|&p| sub[p]).collect();
                let e = Extension::new(
                    GroupMorphism::new(table.clone(), g.clone(), map).unwrap(),
                )
                .unwrap();
                let base = map_h(&e).unwrap();
                for t in enumerate_transversals(&g, &sub).unwrap() {
                    let x = hypergroup_of_extension(&e, t.members()).unwrap();
                    assert!(x.check_axioms().passed());
                    assert!(same_orbit(&base, &x).unwrap());
                }
            }
        }
    }
}

#[test]
fn normality_matches_trivial_action_at_order_six() {
    let c = classify_ext(&cyclic(2), 3).unwrap();
    let (normal, rest) = split_normal(&c).unwrap();
    assert_eq!((normal.len(), rest.len()), (1, 1));
    let c = classify_ext(&cyclic(3), 2).unwrap();
    let (normal, rest) = split_normal(&c).unwrap();
    // index-2 subgroups are always normal
    assert_eq!((normal.len(), rest.len()), (2, 0));
}

#[test]
fn composites_fix_representatives() {
    let c = classify_ext(&cyclic(3), 2).unwrap();
    for e in class_representatives(&c) {
        let x = map_h(e).unwrap();
        let back = map_e(&x).unwrap();
        assert!(extensions_equal(e, &back));
    }
    for (rep, ext) in c
        .orbit_reps
        .as_ref()
        .unwrap()
        .iter()
        .zip(c.orbit_extensions.as_ref().unwrap())
    {
        let back = map_h(ext).unwrap();
        assert!(same_orbit(rep, &back).unwrap());
    }
}

#[test]
fn enumeration_contains_every_standard_construction() {
    // completeness of the pruned search, checked from the ambient side:
    // each transversal hypergroup must literally appear in the enumerated set
    use hypergroups::action::enumerate_hypergroups;
    use hypergroups::construction::standard_construct;
    for (h, ambient_order) in [
        (cyclic(2), 4usize),
        (cyclic(2), 6),
        (cyclic(3), 6),
    ] {
        let m = ambient_order / h.order();
        let all = enumerate_hypergroups(&h, m).unwrap();
        for g in enumerate_groups_oracle(ambient_order).unwrap() {
            for sub in g.all_subgroups() {
                if sub.len() != h.order() {
                    continue;
                }
                if isomorphism(&g.subgroup_table(&sub).unwrap(), &h).is_none() {
                    continue;
                }
                if g.subgroup_table(&sub).unwrap() != h {
                    continue;
                }
                for t in enumerate_transversals(&g, &sub).unwrap() {
                    let x = standard_construct(&g, &sub, t.members()).unwrap();
                    assert!(
                        all.contains(&x),
                        "missing from enumeration: |G|={ambient_order}, H={sub:?}, M={:?}",
                        t.members()
                    );
                }
            }
        }
    }
}

#[test]
fn quotient_routes_agree_on_small_pairs() {
    for (h, q, expected) in [
        (cyclic(2), cyclic(2), 2usize),
        (cyclic(3), cyclic(2), 2),
        (cyclic(2), cyclic(3), 1),
    ] {
        let out = ext_by_quotient(&h, &q).unwrap();
        assert!(out.routes_agree());
        assert_eq!(out.r1_count, expected);
        assert_eq!(out.r2_count, expected);
        assert_eq!(out.r3_count, expected);
        assert_eq!(out.r3_stabilizer_count, expected);
    }
}

#[test]
fn kappa_only_route_is_finer_when_the_quotient_has_symmetries() {
    // with Q = V4 three factor-set classes of the same ambient type are
    // permuted by the table automorphisms, so the kappa-only orbit count
    // splits what the other routes (and the stabilizer correction) merge
    let out = ext_by_quotient(&cyclic(2), &hypergroups::group::klein()).unwrap();
    assert_eq!(out.r1_count, 4);
    assert_eq!(out.r2_count, 4);
    assert_eq!(out.r3_count, 8);
    assert_eq!(out.r3_stabilizer_count, 4);
    assert!(!out.routes_agree());
}

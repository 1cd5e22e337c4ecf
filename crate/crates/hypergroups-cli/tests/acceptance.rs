//! Acceptance suite: one test per criterion, exact assertions throughout.
//!
//! Every criterion prints a `[PASS]` line with the quantities it verified
//! (visible under `--nocapture`); the harness itself is the pass/fail
//! record. All checks are exact table or count comparisons; there are no
//! tolerances anywhere.

use std::collections::HashSet;
use std::process::Command;

use hypergroups::action::{
    act_f, act_kappa, act_wreath, enumerate_hypergroups, same_orbit, WreathElement, WreathGroup,
};
use hypergroups::cohomology::{
    all_reverse_representations, coboundary, noncommutative_obstruction_witness,
    schreier_classify, ReverseRepresentation,
};
use hypergroups::construction::{
    exact_product, reconstruction_map, standard_construct, universality_roundtrip,
};
use hypergroups::extension::{
    classify_ext, ext_by_quotient, extensions_equal, map_e, map_h, Extension,
};
use hypergroups::group::{
    by_name, cyclic, direct_product, enumerate_groups_oracle, enumerate_transversals,
    symmetric3, FiniteGroup, GroupMorphism,
};
use hypergroups::hypergroup::Hypergroup;

/// Every (group, subgroup, transversal) triple with ambient order <= `max`.
fn construction_instances(max: usize) -> Vec<(FiniteGroup, Vec<usize>, Vec<usize>)> {
    let mut out = Vec::new();
    for n in 1..=max {
        for g in enumerate_groups_oracle(n).unwrap() {
            for sub in g.all_subgroups() {
                for t in enumerate_transversals(&g, &sub).unwrap() {
                    out.push((g.clone(), sub.clone(), t.members().to_vec()));
                }
            }
        }
    }
    out
}

#[test]
fn criterion_01_standard_construction_soundness() {
    let instances = construction_instances(8);
    for (g, sub, members) in &instances {
        let x = standard_construct(g, sub, members).unwrap();
        let report = x.check_axioms();
        assert!(
            report.passed(),
            "axioms failed for |G|={}, H={:?}, M={:?}: {:?}",
            g.order(),
            sub,
            members,
            report.failed_axioms()
        );
        // derived() re-proves A6-A11, (S), and psi(o,.) bijectivity
        x.derived().unwrap();
    }
    println!(
        "[PASS] criterion 1: standard construction sound on {} (G, H, M) instances of order <= 8",
        instances.len()
    );
}

/// The full corpus of criterion 2: all standard constructions of order <= 8
/// plus the exhaustive enumerations at tiny parameters.
fn hypergroup_corpus() -> Vec<Hypergroup> {
    let mut corpus: Vec<Hypergroup> = construction_instances(8)
        .iter()
        .map(|(g, sub, members)| standard_construct(g, sub, members).unwrap())
        .collect();
    for (h, m) in [
        (cyclic(1), 1usize),
        (cyclic(1), 2),
        (cyclic(1), 3),
        (cyclic(2), 1),
        (cyclic(2), 2),
    ] {
        corpus.extend(enumerate_hypergroups(&h, m).unwrap());
    }
    corpus
}

#[test]
fn criterion_02_exact_product_and_universality() {
    let corpus = hypergroup_corpus();
    for x in &corpus {
        // exact_product validates the group laws internally
        let ep = exact_product(x).unwrap();
        assert_eq!(ep.group.order(), x.group().order() * x.basic_len());
        let iso = universality_roundtrip(x).unwrap();
        assert!(iso.is_isomorphism());
    }
    println!(
        "[PASS] criterion 2: exact product and universality roundtrip on {} hypergroups",
        corpus.len()
    );
}

#[test]
fn criterion_03_reconstruction_of_the_ambient_group() {
    let instances = construction_instances(8);
    for (g, sub, members) in &instances {
        let (ep, pi) = reconstruction_map(g, sub, members).unwrap();
        assert!(pi.is_isomorphism());
        for al in 0..sub.len() {
            assert_eq!(pi.apply(ep.f0.apply(al)), sub[al]);
        }
    }
    println!(
        "[PASS] criterion 3: (alpha, a) -> alpha*a reconstructs G on {} instances",
        instances.len()
    );
}

struct Rng(u64);

impl Rng {
    fn next(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    fn below(&mut self, n: usize) -> usize {
        (self.next() % n as u64) as usize
    }
}

fn random_wreath(rng: &mut Rng, h_order: usize, m: usize) -> WreathElement {
    let kappa: Vec<usize> = (0..m).map(|_| rng.below(h_order)).collect();
    let mut perm: Vec<usize> = (0..m).collect();
    for i in (1..m).rev() {
        perm.swap(i, rng.below(i + 1));
    }
    WreathElement { kappa, perm }
}

#[test]
fn criterion_04_action_laws() {
    // exhaustive at |H| = 2, m = 2
    let h = cyclic(2);
    let hgs = enumerate_hypergroups(&h, 2).unwrap();
    let w = WreathGroup::new(h.clone(), 2);
    let elems = w.elements();
    let mut exhaustive_checks = 0usize;
    for x in &hgs {
        assert_eq!(act_wreath(x, &w.id()).unwrap(), *x, "wreath identity");
        assert_eq!(act_kappa(x, &[0, 0]).unwrap(), *x, "kappa identity");
        assert_eq!(act_f(x, &[0, 1]).unwrap(), *x, "permutation identity");
        for a in &elems {
            for b in &elems {
                let ab = w.mul(a, b).unwrap();
                assert_eq!(
                    act_wreath(&act_wreath(x, a).unwrap(), b).unwrap(),
                    act_wreath(x, &ab).unwrap(),
                    "wreath action law"
                );
                exhaustive_checks += 1;
            }
        }
        for k0 in 0..4usize {
            for l0 in 0..4usize {
                let kappa = [k0 / 2, k0 % 2];
                let lambda = [l0 / 2, l0 % 2];
                let star: Vec<usize> =
                    (0..2).map(|i| h.mul(lambda[i], kappa[i])).collect();
                assert_eq!(
                    act_kappa(&act_kappa(x, &kappa).unwrap(), &lambda).unwrap(),
                    act_kappa(x, &star).unwrap(),
                    "reverse-action law"
                );
            }
        }
        for f in [[0usize, 1], [1, 0]] {
            for g in [[0usize, 1], [1, 0]] {
                let fg: Vec<usize> = (0..2).map(|i| g[f[i]]).collect();
                assert_eq!(
                    act_f(&act_f(x, &f).unwrap(), &g).unwrap(),
                    act_f(x, &fg).unwrap(),
                    "permutation action law"
                );
            }
            for k0 in 0..4usize {
                let kappa = [k0 / 2, k0 % 2];
                let f_kappa: Vec<usize> = (0..2).map(|i| kappa[f[i]]).collect();
                assert_eq!(
                    act_kappa(&act_f(x, &f).unwrap(), &kappa).unwrap(),
                    act_f(&act_kappa(x, &f_kappa).unwrap(), &f).unwrap(),
                    "interchange law"
                );
            }
        }
    }
    // the wreath group itself satisfies the group laws
    for a in &elems {
        assert_eq!(w.mul(a, &w.id()).unwrap(), *a);
        assert_eq!(w.mul(&w.id(), a).unwrap(), *a);
        assert_eq!(w.mul(a, &w.inv(a).unwrap()).unwrap(), w.id());
        for b in &elems {
            for c in &elems {
                assert_eq!(
                    w.mul(&w.mul(a, b).unwrap(), c).unwrap(),
                    w.mul(a, &w.mul(b, c).unwrap()).unwrap()
                );
            }
        }
    }
    assert_eq!(w.cayley_table().unwrap().order(), 8);

    // 1000 seeded random triples over |H| = 3, m <= 3
    let z3 = cyclic(3);
    let mut pool: Vec<Hypergroup> = Vec::new();
    let mut ambients: Vec<(FiniteGroup, Vec<usize>)> = vec![
        (cyclic(3), vec![0, 1, 2]),
        (cyclic(6), vec![0, 2, 4]),
        (cyclic(9), vec![0, 3, 6]),
    ];
    let s3 = symmetric3();
    let a3 = s3
        .all_subgroups()
        .into_iter()
        .find(|s| s.len() == 3)
        .expect("s3 has a rotation subgroup");
    ambients.push((s3, a3));
    let z3xz3 = direct_product(&cyclic(3), &cyclic(3));
    for sub in z3xz3.all_subgroups() {
        if sub.len() == 3 {
            ambients.push((z3xz3.clone(), sub));
        }
    }
    for (g, sub) in &ambients {
        for t in enumerate_transversals(g, sub).unwrap() {
            let x = standard_construct(g, sub, t.members()).unwrap();
            assert_eq!(x.group().order(), 3);
            pool.push(x);
        }
    }
    let mut rng = Rng(0x5EED_0001);
    for _ in 0..1000 {
        let x = &pool[rng.below(pool.len())];
        let m = x.basic_len();
        let wg = WreathGroup::new(z3.clone(), m);
        assert_eq!(act_wreath(x, &wg.id()).unwrap(), *x);
        let a = random_wreath(&mut rng, 3, m);
        let b = random_wreath(&mut rng, 3, m);
        let ab = wg.mul(&a, &b).unwrap();
        assert_eq!(
            act_wreath(&act_wreath(x, &a).unwrap(), &b).unwrap(),
            act_wreath(x, &ab).unwrap()
        );
        let star: Vec<usize> = (0..m).map(|i| z3.mul(b.kappa[i], a.kappa[i])).collect();
        assert_eq!(
            act_kappa(&act_kappa(x, &a.kappa).unwrap(), &b.kappa).unwrap(),
            act_kappa(x, &star).unwrap()
        );
        let f_kappa: Vec<usize> = (0..m).map(|i| a.kappa[b.perm[i]]).collect();
        assert_eq!(
            act_kappa(&act_f(x, &b.perm).unwrap(), &a.kappa).unwrap(),
            act_f(&act_kappa(x, &f_kappa).unwrap(), &b.perm).unwrap()
        );
    }
    println!(
        "[PASS] criterion 4: action laws exhaustive for |H|=2, m=2 ({exhaustive_checks} pairs on {} hypergroups) and on 1000 seeded random triples for |H|=3, m<=3 (pool {})",
        hgs.len(),
        pool.len()
    );
}

#[test]
fn criterion_05_main_bijection() {
    // the pinned counts were derived from the ambient-group oracle route
    let mut summary = Vec::new();
    for (h, m, expected) in [
        (cyclic(2), 2usize, Some(2usize)),
        (cyclic(2), 3, Some(2)),
        (cyclic(3), 2, Some(2)),
        (cyclic(4), 2, None),
        (by_name("v4").unwrap(), 2, None),
    ] {
        let c = classify_ext(&h, m).unwrap();
        let r1 = c.orbit_extensions.as_ref().expect("orbit route in range").len();
        let r2 = c.oracle_extensions.as_ref().expect("oracle route in range").len();
        assert_eq!(r1, r2, "routes disagree");
        if let Some(want) = expected {
            assert_eq!(c.class_count, want);
        }
        // composites fix representatives, re-checked here explicitly
        for e in c.oracle_extensions.as_ref().unwrap() {
            assert!(extensions_equal(e, &map_e(&map_h(e).unwrap()).unwrap()));
        }
        for (rep, ext) in c
            .orbit_reps
            .as_ref()
            .unwrap()
            .iter()
            .zip(c.orbit_extensions.as_ref().unwrap())
        {
            assert!(same_orbit(rep, &map_h(ext).unwrap()).unwrap());
        }
        summary.push(format!("|Ext_{}({})| = {}", m, hypergroups::group::describe_group(&h), r1));
    }
    println!("[PASS] criterion 5: main bijection, {}", summary.join(", "));
}

#[test]
fn criterion_06_normality_equals_trivial_action() {
    let mut checked = 0usize;
    for n in 1..=8usize {
        for g in enumerate_groups_oracle(n).unwrap() {
            for sub in g.all_subgroups() {
                let table = g.subgroup_table(&sub).unwrap();
                let e = Extension::new(
                    GroupMorphism::new(table, g.clone(), sub.clone()).unwrap(),
                )
                .unwrap();
                assert_eq!(
                    e.is_normal(),
                    map_h(&e).unwrap().is_trivial_phi(),
                    "|G| = {n}, H = {sub:?}"
                );
                checked += 1;
            }
        }
    }
    println!(
        "[PASS] criterion 6: normality <=> trivial action on {checked} extensions of ambient order <= 8"
    );
}

#[test]
fn criterion_07_quotient_fixed_classification() {
    let pairs: [(&str, &str, Option<usize>); 7] = [
        ("z2", "z2", Some(2)),
        ("z3", "z2", Some(2)),
        ("z2", "z3", Some(1)),
        ("z4", "z2", None),
        ("v4", "z2", None),
        ("z2", "z4", None),
        ("z2", "v4", None),
    ];
    let mut summary = Vec::new();
    let mut disagreements = Vec::new();
    for (h_name, q_name, expected) in pairs {
        let h = by_name(h_name).unwrap();
        let q = by_name(q_name).unwrap();
        let out = ext_by_quotient(&h, &q).unwrap();
        // the extension route and the isomorphism-class orbit route must
        // always match, and the stabilizer-corrected fixed-table route too
        assert_eq!(out.r1_count, out.r2_count, "({h_name}, {q_name})");
        assert_eq!(out.r1_count, out.r3_stabilizer_count, "({h_name}, {q_name})");
        if let Some(want) = expected {
            assert_eq!(out.r1_count, want, "({h_name}, {q_name})");
        }
        summary.push(format!(
            "Ext({h_name}, {q_name}): r1={} r2={} r3={}",
            out.r1_count, out.r2_count, out.r3_count
        ));
        if !out.routes_agree() {
            disagreements.push(format!(
                "({h_name}, {q_name}): r3={} vs r1=r2={} (kappa-only orbits are finer; \
                 the automorphisms of the quotient table glue them, and the \
                 stabilizer-corrected count {} does agree)",
                out.r3_count, out.r1_count, out.r3_stabilizer_count
            ));
        }
    }
    println!("criterion 7 route counts: {}", summary.join("; "));
    assert!(
        disagreements.is_empty(),
        "the kappa-only route disagrees as stated: {}",
        disagreements.join("; ")
    );
    println!(
        "[PASS] criterion 7: three quotient-fixed routes agree: {}",
        summary.join(", ")
    );
}

#[test]
fn criterion_08_schreier_classification() {
    // pinned values for the trivial representations, derived by enumeration
    let rep = ReverseRepresentation::trivial(cyclic(2), cyclic(2));
    let out = schreier_classify(&rep).unwrap();
    assert_eq!(out.h2.z2.len(), 4);
    assert_eq!(out.h2.b2.len(), 2);
    assert_eq!(out.h2.h2_order(), 2);
    let rep = ReverseRepresentation::trivial(cyclic(2), cyclic(3));
    assert_eq!(schreier_classify(&rep).unwrap().h2.h2_order(), 1);
    let rep = ReverseRepresentation::trivial(cyclic(2), cyclic(4));
    assert_eq!(schreier_classify(&rep).unwrap().h2.h2_order(), 2);

    // every in-scope (Q, H, psi): orbit count = |H2| and distinct classes
    // stay distinct as extensions with the twist structure kept fixed
    let mut reps_checked = 0usize;
    let mut collapses = Vec::new();
    for (q_name, h_name) in [
        ("z2", "z2"),
        ("z2", "z3"),
        ("z2", "z4"),
        ("z2", "v4"),
        ("z3", "z2"),
        ("z4", "z2"),
        ("v4", "z2"),
    ] {
        let q = by_name(q_name).unwrap();
        let h = by_name(h_name).unwrap();
        for rep in all_reverse_representations(&q, &h) {
            let out = schreier_classify(&rep).unwrap();
            assert_eq!(out.fixed_psi_orbit_count, out.h2.h2_order());
            assert_eq!(out.extensions.len(), out.h2.h2_order());
            assert!(
                out.quotient_compatible_distinct,
                "({q_name}, {h_name}): cohomology classes merged under \
                 quotient-compatible equivalence"
            );
            if out.iso_class_count < out.h2.h2_order() {
                collapses.push(format!(
                    "({q_name}, {h_name}): {} classes -> {} plain isomorphism classes",
                    out.h2.h2_order(),
                    out.iso_class_count
                ));
            }
            reps_checked += 1;
        }
    }
    let collapse_note = if collapses.is_empty() {
        "no quotient-automorphism gluing observed".to_string()
    } else {
        format!("quotient-automorphism gluing reported at {}", collapses.join("; "))
    };
    println!(
        "[PASS] criterion 8: |Z2|=4 |B2|=2 |H2|=2 at (z2, z2, trivial); |H2|=1 at (z2, z3); |H2|=2 at (z2, z4); orbit count = |H2| and classes pairwise distinct under fixed-twist equivalence for {reps_checked} representations; {collapse_note}"
    );
}

#[test]
fn criterion_09_noncommutative_obstruction() {
    let report = noncommutative_obstruction_witness().unwrap();
    // closure confirmed for every abelian kernel of order <= 6
    assert_eq!(
        report.abelian_closure_checked,
        vec!["z1", "z2", "z3", "z4", "v4", "z5", "z6"]
    );
    assert!(report.central_case_checked);
    // independently re-verify the witness over S3
    let q = by_name("z2").unwrap();
    let s3 = by_name("s3").unwrap();
    let rep = ReverseRepresentation::trivial(q, s3.clone());
    let mut coboundaries = HashSet::new();
    for k0 in 0..6usize {
        for k1 in 0..6usize {
            coboundaries.insert(coboundary(&rep, &[k0, k1]));
        }
    }
    let product = coboundary(&rep, &report.kappa)
        .mul(&coboundary(&rep, &report.lambda), &s3)
        .unwrap();
    assert_eq!(product, report.product);
    assert!(!coboundaries.contains(&product));
    println!(
        "[PASS] criterion 9: coboundary closure fails over S3 at kappa={:?}, lambda={:?}; closure exact for all abelian kernels of order <= 6",
        report.kappa, report.lambda
    );
}

fn run_cli(args: &[&str]) -> (String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_hypergroups"))
        .args(args)
        .output()
        .expect("binary runs");
    assert!(
        out.status.success(),
        "command {:?} failed: {}",
        args,
        String::from_utf8_lossy(&out.stderr)
    );
    (
        String::from_utf8(out.stdout).expect("utf-8 stdout"),
        String::from_utf8(out.stderr).expect("utf-8 stderr"),
    )
}

#[test]
fn criterion_10_cli_determinism() {
    let dir = std::env::temp_dir().join(format!("hypergroups-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let z4 = dir.join("z4.txt");
    std::fs::write(&z4, "group 4\n0 1 2 3\n1 2 3 0\n2 3 0 1\n3 0 1 2\n").unwrap();
    let z4_path = z4.to_str().unwrap().to_string();
    let (hg_text, _) =
        run_cli(&["construct", "--group", &z4_path, "--subgroup", "0,2", "--transversal", "0,1"]);
    let hg = dir.join("h.txt");
    std::fs::write(&hg, &hg_text).unwrap();
    let hg_path = hg.to_str().unwrap().to_string();

    let commands: Vec<Vec<&str>> = vec![
        vec!["validate", "--group", &z4_path],
        vec!["construct", "--group", &z4_path, "--subgroup", "0,2", "--transversal", "0,1"],
        vec!["product", "--hypergroup", &hg_path],
        vec!["roundtrip", "--hypergroup", &hg_path],
        vec!["enumerate", "--h-order", "2", "--m", "2"],
        vec!["orbits", "--h-order", "2", "--m", "2"],
        vec!["classify", "--h", "z2", "--m", "2"],
        vec!["classify", "--h", "z2", "--m", "2", "--emit", "json"],
        vec!["ext", "--h", "z3", "--q", "z2"],
        vec!["h2", "--q", "z2", "--h", "z2", "--psi", "trivial"],
        vec!["schreier", "--q", "z2", "--h", "z2", "--emit", "json"],
        vec!["oracle", "--n", "6"],
    ];
    for args in &commands {
        let (out1, err1) = run_cli(args);
        let (out2, err2) = run_cli(args);
        assert_eq!(out1, out2, "stdout differs across runs for {args:?}");
        // the wall-time field lives on stderr and is the only varying part
        assert!(err1.starts_with("wall_ms: "), "stderr: {err1}");
        assert!(err2.starts_with("wall_ms: "), "stderr: {err2}");
    }
    std::fs::remove_dir_all(&dir).ok();
    println!(
        "[PASS] criterion 10: {} CLI invocations byte-identical across repeated runs",
        commands.len()
    );
}

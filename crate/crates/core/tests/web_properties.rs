//! Structural invariants of webs of quadrics containing a plane, on random
//! integer webs and on the bundled fixtures.

use quadweb_core::exactnum::{random_prime, Field, PrimeField};
use quadweb_core::groebner::Deadline;
use quadweb_core::webquadrics::fixtures::{COLLINEAR_QUADRUPLE_WEB, RANK_FIVE_WEB};
use quadweb_core::webquadrics::{
    analyze, bordiga, check_a3, classify_discriminant, discriminant, quintic, random_web, rank2_locus, sing_on_plane, validate_web,
    Agreement, AnalysisOptions, DerivedMatrices, FieldMode, IntegerWeb, Verdict, Web, ON_PLANE_POINTS,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn field(seed: u64) -> PrimeField {
    PrimeField::new(random_prime(62, seed).unwrap()).unwrap()
}

/// Random webs that are linearly independent over `f`.
fn random_webs(f: &PrimeField, n: usize, seed: u64) -> Vec<Web<PrimeField>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n).filter_map(|_| validate_web(f, &random_web(&mut rng, 4)).ok()).collect()
}

#[test]
fn structural_identities_hold_on_random_webs() {
    let f = field(101);
    let webs = random_webs(&f, 200, 1);
    assert!(webs.len() > 190, "only {} independent webs", webs.len());
    for (i, web) in webs.iter().enumerate() {
        let report = DerivedMatrices::new(web).identities();
        assert!(report.all_hold(), "web {i}: {report:?}");
    }
}

#[test]
fn quintic_equals_its_first_column_expansion() {
    let f = field(102);
    let mut webs = random_webs(&f, 50, 2);
    webs.push(validate_web(&f, &RANK_FIVE_WEB).unwrap());
    webs.push(validate_web(&f, &COLLINEAR_QUADRUPLE_WEB).unwrap());
    for web in &webs {
        let q = quintic(&DerivedMatrices::new(web)).unwrap();
        assert!(q.laplace_identity);
        let s = q.summary();
        assert!(s.homogeneous && matches!(s.degree, Some(5) | None));
    }
}

#[test]
fn at_most_ten_isolated_singular_points_on_the_plane() {
    let f = field(103);
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut finite = 0;
    for web in random_webs(&f, 200, 3) {
        // a positive-dimensional locus is reported as an error and not counted
        if let Ok(s) = sing_on_plane(&DerivedMatrices::new(&web), &mut rng, &Deadline::never()) {
            assert!(s.point_count() <= ON_PLANE_POINTS, "{} points", s.point_count());
            finite += 1;
        }
    }
    assert!(finite > 0);
}

#[test]
fn counts_are_invariant_under_member_permutations() {
    let f = field(104);
    let base = validate_web(&f, &RANK_FIVE_WEB).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for perm in [[1, 0, 2, 3], [3, 2, 1, 0], [2, 3, 0, 1]] {
        let web = base.permuted(perm).unwrap();
        let d = DerivedMatrices::new(&web);
        assert_eq!(sing_on_plane(&d, &mut rng, &Deadline::never()).unwrap().point_count(), 10, "{perm:?}");
        assert_eq!(check_a3(&d, &mut rng, &Deadline::never()).unwrap().0.count, Some(46), "{perm:?}");
        assert_eq!(rank2_locus(&d, &mut rng, &Deadline::never()).unwrap().0.count, Some(10), "{perm:?}");
        let s8 = discriminant(&web, &d).unwrap();
        let report = classify_discriminant(&web, &d, &s8, &mut rng, &Deadline::never()).unwrap();
        assert_eq!(report.budget.sum_tau_plus_one, 187, "{perm:?}");
    }
}

/// `p` is a nonzero multiple of `q`.
fn proportional(p: &quadweb_core::multipoly::Poly<PrimeField>, q: &quadweb_core::multipoly::Poly<PrimeField>) -> bool {
    let (Some(a), Some(b)) = (p.leading_coeff(), q.leading_coeff()) else {
        return p.is_zero() && q.is_zero();
    };
    let f = p.field();
    *p == q.scale(&f.div(a, b).unwrap())
}

#[test]
fn quintic_is_projectively_invariant_under_member_scaling() {
    let f = field(105);
    for seed in 0..5 {
        let mut ints: IntegerWeb = random_web(&mut ChaCha8Rng::seed_from_u64(seed), 4);
        let Ok(web) = validate_web(&f, &ints) else { continue };
        let before = quintic(&DerivedMatrices::new(&web)).unwrap().poly;
        for row in ints[2].iter_mut() {
            for v in row.iter_mut() {
                *v *= -3;
            }
        }
        let scaled = validate_web(&f, &ints).unwrap();
        let after = quintic(&DerivedMatrices::new(&scaled)).unwrap().poly;
        assert!(proportional(&after, &before), "seed {seed}");
        assert!(!after.is_zero());
    }
}

#[test]
fn degenerate_bordiga_surface_is_reported_not_fatal() {
    // zeroing one off-plane block leaves a 3×4 matrix with a zero column: its
    // cubic minors cut out a threefold instead of a surface
    let mut ints = RANK_FIVE_WEB;
    for i in 0..5 {
        for j in 5..8 {
            ints[3][i][j] = 0;
            ints[3][j][i] = 0;
        }
    }
    let f = field(106);
    let web = validate_web(&f, &ints).unwrap();
    let d = DerivedMatrices::new(&web);
    let q = quintic(&d).unwrap();
    let summary = bordiga(&d, &q.poly, &mut ChaCha8Rng::seed_from_u64(6), &Deadline::never()).unwrap();
    assert_ne!(summary.projective_dimension, 2);
    assert_eq!(summary.sampled_points, 0);
}

#[test]
fn fixture_counts_agree_across_primes() {
    for (ints, expected) in [(&RANK_FIVE_WEB, Verdict::Holds), (&COLLINEAR_QUADRUPLE_WEB, Verdict::Fails)] {
        let auto = analyze(ints, &AnalysisOptions { seed: 21, ..Default::default() }).unwrap().certificate;
        assert_eq!(auto.field.agreement, Agreement::Agreed);
        assert_eq!(auto.field.primes.len(), 2);
        assert_eq!(auto.verdict, expected);
        let other = random_prime(62, 9_999).unwrap();
        assert!(!auto.field.primes.contains(&other));
        let single = analyze(ints, &AnalysisOptions { mode: FieldMode::Prime(other), seed: 22, ..Default::default() }).unwrap().certificate;
        assert_eq!(single.field.agreement, Agreement::Single);
        assert_eq!(single.verdict, auto.verdict);
        assert_eq!(single.assumptions.a1.on_plane_count, auto.assumptions.a1.on_plane_count);
        assert_eq!(single.assumptions.a3.count, auto.assumptions.a3.count);
        assert_eq!(single.type_a_fibers, auto.type_a_fibers);
    }
}

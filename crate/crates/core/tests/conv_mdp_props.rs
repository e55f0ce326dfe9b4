mod common;

use common::{
    block_toeplitz, bound, cofactor_det, naive_column_distance, naive_minor_check_g, random_code,
};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use skewmdp::construct::{admissible_qs, build_generator, ConstructionParams};
use skewmdp::conv::{
    bounds, column_distance_bruteforce, is_basic, profile, profile_lengths, CodeDescriptor,
};
use skewmdp::field::{Elt, Field};
use skewmdp::linalg::rank;
use skewmdp::mdp::{
    classify, dual_mdp_check, minor_check_g, minor_check_h, ClassifyOptions, HConvention,
};

const BUDGET: u128 = 10_000_000;

fn g0_full(c: &CodeDescriptor) -> bool {
    rank(&c.field, &c.generator.coeff(0)) == c.k
}

fn random_corpus(seed: u64, count: usize, fields: &[Field], max_n: usize, max_m: usize) -> Vec<CodeDescriptor> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    while out.len() < count {
        let f = &fields[rng.gen_range(0..fields.len())];
        let n = rng.gen_range(2..=max_n);
        let k = rng.gen_range(1..n).min(2);
        let m = rng.gen_range(0..=max_m);
        // Zero out entries now and then so that failures are common.
        let c = random_code(f, n, k, m, || {
            let x: u64 = rng.gen();
            if x % 5 == 0 { 0 } else { x >> 8 }
        });
        if g0_full(&c) {
            out.push(c);
        }
    }
    out
}

fn construction_corpus() -> Vec<CodeDescriptor> {
    let mut out = Vec::new();
    for n in 3..=6 {
        for k in 1..n {
            if n <= 2 * k {
                continue;
            }
            for q in admissible_qs(n, 2) {
                out.push(build_generator(&ConstructionParams::new(n, k, q).unwrap()).unwrap());
            }
        }
    }
    out
}

#[test]
fn column_distances_cascade_and_grow() {
    let f5 = Field::build(5, 1, 1).unwrap();
    let f49 = Field::build(7, 1, 2).unwrap();
    let mut corpus = random_corpus(11, 60, std::slice::from_ref(&f5), 5, 2);
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    while corpus.len() < 100 {
        let n = rng.gen_range(2..=5);
        let m = rng.gen_range(0..=2);
        let c = random_code(&f49, n, 1, m, || rng.gen());
        if g0_full(&c) {
            corpus.push(c);
        }
    }
    let mut attained_at_two = 0;
    for c in &corpus {
        let d: Vec<usize> = (0..=2)
            .map(|j| column_distance_bruteforce(c, j, BUDGET).unwrap())
            .collect();
        for j in 0..=2 {
            assert!(d[j] <= bound(c.n, c.k, j), "{c:?}");
            if j > 0 {
                assert!(d[j] >= d[j - 1]);
            }
            if d[j] == bound(c.n, c.k, j) {
                for (i, &di) in d.iter().enumerate().take(j) {
                    assert_eq!(di, bound(c.n, c.k, i), "{c:?}");
                }
                if j == 2 {
                    attained_at_two += 1;
                }
            }
        }
    }
    assert!(attained_at_two > 0);
}

#[test]
fn bruteforce_matches_naive_enumeration() {
    let fields = [Field::build(2, 1, 1).unwrap(), Field::build(3, 1, 1).unwrap(), Field::build(2, 2, 1).unwrap()];
    for c in random_corpus(5, 60, &fields, 4, 2) {
        for j in 0..=1 {
            assert_eq!(column_distance_bruteforce(&c, j, BUDGET).unwrap(), naive_column_distance(&c, j), "{c:?}");
        }
    }
}

proptest! {
    #![proptest_config(common::cases(256))]

    #[test]
    fn profile_lengths_formulas(n in 2..40usize, k in 1..40usize, delta in 0..200usize) {
        prop_assume!(k < n);
        let (l, m) = profile_lengths(n, k, delta);
        let r = n - k;
        prop_assert_eq!(l, delta / k + delta / r);
        prop_assert_eq!(m, delta / k + delta.div_ceil(r));
        prop_assert!(m == l || m == l + 1);
        let (free, col) = bounds(n, k, delta, 0);
        prop_assert_eq!(free, r * (delta / k + 1) + delta + 1);
        prop_assert_eq!(col, r + 1);
    }
}

#[test]
fn minor_criterion_matches_distances() {
    let fields = [Field::build(5, 1, 1).unwrap(), Field::build(7, 1, 1).unwrap()];
    let mut corpus = construction_corpus();
    corpus.extend(random_corpus(21, 200, &fields, 4, 1));
    let (mut pass, mut fail) = (0, 0);
    for c in &corpus {
        let l = profile(c).l.min(2);
        for j in 0..=l {
            let Ok(d) = column_distance_bruteforce(c, j, BUDGET) else { continue };
            let mc = minor_check_g(&c.field, &c.generator, j, BUDGET).unwrap();
            assert_eq!(mc.holds, d == bound(c.n, c.k, j), "j = {j}, {c:?}");
            if mc.holds { pass += 1 } else { fail += 1 }
            if c.field.order() <= 7 && c.k * (j + 1) <= 4 {
                assert_eq!(mc.holds, naive_minor_check_g(c, j));
            }
            if let Some(w) = mc.witness {
                // re-extract and re-evaluate independently
                let m = block_toeplitz(&c.generator, j);
                let (n, k) = (c.n, c.k);
                assert_eq!(w.len(), k * (j + 1));
                for s in 1..=j {
                    assert!(w[k * s] > n * s);
                }
                let sub: Vec<Vec<Elt>> = (0..m.rows())
                    .map(|r| w.iter().map(|&t| m.get(r, t - 1)).collect())
                    .collect();
                assert!(cofactor_det(&c.field, &sub).is_zero());
            }
        }
    }
    assert!(pass > 50 && fail > 50, "pass {pass} fail {fail}");
}

#[test]
fn dual_criteria_agree() {
    let fields = [Field::build(5, 1, 1).unwrap(), Field::build(7, 1, 1).unwrap()];
    let mut corpus = construction_corpus();
    corpus.extend(random_corpus(31, 200, &fields, 4, 1));
    let (mut checked, mut mdp_seen, mut non_mdp_seen) = (0, 0, 0);
    for c in &corpus {
        let prof = profile(c);
        if !prof.minimal || !is_basic(c).unwrap() {
            continue;
        }
        let rep = dual_mdp_check(c, HConvention::Corrected, true, BUDGET).unwrap();
        let h = rep.dual_generator.clone().unwrap();
        let dual = CodeDescriptor::new(c.field.clone(), h).unwrap();
        assert_eq!(profile(&dual).delta, prof.delta);
        let (n, kd) = (c.n, c.n - c.k);
        for j in 0..=rep.l {
            let hs = minor_check_h(&c.field, &c.generator, n, kd, j, HConvention::Corrected, BUDGET).unwrap();
            let gs = minor_check_g(&dual.field, &dual.generator, j, BUDGET).unwrap();
            assert_eq!(hs.holds, gs.holds, "j = {j}, {c:?}");
        }
        let primal = classify(c, &ClassifyOptions { bruteforce: false, strongly_mds: false, ..Default::default() }).unwrap();
        assert_eq!(rep.mdp, primal.mdp, "{c:?}");
        checked += 1;
        if rep.mdp { mdp_seen += 1 } else { non_mdp_seen += 1 }
    }
    assert!(checked > 40 && mdp_seen > 5 && non_mdp_seen > 5, "{checked} {mdp_seen} {non_mdp_seen}");
}

/// Runs both H-side conventions on the same corpus and reports how often
/// each agrees with the dual generator's G-side verdict.
#[test]
fn h_convention_audit() {
    let fields = [Field::build(5, 1, 1).unwrap(), Field::build(7, 1, 1).unwrap()];
    let mut corpus = construction_corpus();
    corpus.extend(random_corpus(41, 300, &fields, 5, 1));
    let mut agree = [0usize; 2];
    let mut total = 0;
    for c in &corpus {
        if !profile(c).minimal || !is_basic(c).unwrap() {
            continue;
        }
        let rep = dual_mdp_check(c, HConvention::Corrected, true, BUDGET).unwrap();
        let dual = rep.dual_generator.unwrap();
        let (n, kd) = (c.n, c.n - c.k);
        for j in 0..=rep.l {
            let truth = minor_check_g(&c.field, &dual, j, BUDGET).unwrap().holds;
            for (i, conv) in [HConvention::Corrected, HConvention::AsPrinted].into_iter().enumerate() {
                let v = minor_check_h(&c.field, &c.generator, n, kd, j, conv, BUDGET).unwrap().holds;
                agree[i] += (v == truth) as usize;
            }
            total += 1;
        }
    }
    println!("h-convention audit: {total} windows, corrected agrees {}, as printed agrees {}", agree[0], agree[1]);
    assert_eq!(agree[0], total);
}

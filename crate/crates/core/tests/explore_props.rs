mod common;

use skewmdp::construct::{build_generator, ConstructionParams};
use skewmdp::conv::{profile, CodeDescriptor};
use skewmdp::explore::{
    intersection_dimension_audit, search_mdp, span_invariance, subspace_probe, ProbeConfig,
    SearchMode, SearchSpace,
};
use skewmdp::field::Field;
use skewmdp::mdp::{classify, ClassifyOptions};

const BUDGET: u128 = 100_000_000;

fn prime(q: u64) -> Field {
    Field::build(q, 1, 1).unwrap()
}

fn found(space: &SearchSpace, mode: SearchMode) -> CodeDescriptor {
    let out = search_mdp(space, &mode, BUDGET, BUDGET).unwrap();
    assert!(out.found, "no code in {} trials", out.certificate.scanned);
    out.code.unwrap()
}

/// MDP codes with profile lengths 1, 2 and 3.
fn corpus() -> Vec<CodeDescriptor> {
    let mut out = vec![
        build_generator(&ConstructionParams::new(3, 1, 4).unwrap()).unwrap(),
        build_generator(&ConstructionParams::new(5, 2, 7).unwrap()).unwrap(),
        found(&SearchSpace::new(2, 1, 1, prime(3)).unwrap(), SearchMode::Exhaustive),
    ];
    out.push(found(
        &SearchSpace::new(4, 2, 1, prime(31)).unwrap(),
        SearchMode::Randomized { seed: 1, trials: 20_000 },
    ));
    out.push(found(
        &SearchSpace::new(3, 1, 2, prime(13)).unwrap(),
        SearchMode::Randomized { seed: 2, trials: 20_000 },
    ));
    out
}

#[test]
fn certificates_are_reproducible() {
    for (n, k, m, q) in [(2, 1, 1, 2), (2, 1, 1, 3), (3, 1, 0, 2), (3, 2, 1, 2)] {
        let s = SearchSpace::new(n, k, m, prime(q)).unwrap();
        let a = search_mdp(&s, &SearchMode::Exhaustive, BUDGET, BUDGET).unwrap();
        let b = search_mdp(&s, &SearchMode::Exhaustive, BUDGET, BUDGET).unwrap();
        assert_eq!(a.certificate, b.certificate);
        assert_eq!(a.found, b.found);
        assert_eq!(a.generator, b.generator);
    }
}

#[test]
fn found_codes_classify_as_mdp() {
    let opts = ClassifyOptions::default();
    for c in corpus() {
        let r = classify(&c, &opts).unwrap();
        assert!(r.mdp && r.minimal, "{c:?}");
        for w in &r.windows {
            assert_ne!(w.attains, Some(false));
        }
    }
}

#[test]
fn probe_direct_sum_for_every_config() {
    let mut seen_l = Vec::new();
    for c in corpus() {
        let l = profile(&c).l;
        seen_l.push(l);
        let configs = ProbeConfig::enumerate(c.n, c.k, l);
        assert!(!configs.is_empty() && configs.len() <= 10_000, "{}", configs.len());
        for cfg in &configs {
            let rep = subspace_probe(&c, cfg, BUDGET).unwrap();
            assert!(rep.rank_ok && rep.direct_sum, "{cfg:?} on {c:?}: {rep:?}");
        }
    }
    seen_l.sort();
    assert_eq!(seen_l, vec![1, 1, 2, 2, 3]);
}

#[test]
fn spans_do_not_depend_on_b() {
    for c in corpus() {
        let l = profile(&c).l;
        let mut a_sets: Vec<Vec<Vec<usize>>> = ProbeConfig::enumerate(c.n, c.k, l)
            .into_iter()
            .map(|cfg| cfg.a)
            .collect();
        a_sets.dedup();
        for a in a_sets {
            let inv = span_invariance(&c, &a, BUDGET).unwrap();
            assert!(inv.cumulative.iter().all(|&b| b), "{a:?} on {c:?}");
            if c.k == 1 || l == 1 {
                assert!(inv.holds(), "{a:?} on {c:?}");
            }
        }
    }
}

/// With `k = 2` the individual spans can move with `B_1` while their sum
/// stays fixed.
#[test]
fn individual_spans_can_depend_on_b() {
    let c = found(
        &SearchSpace::new(4, 2, 1, prime(31)).unwrap(),
        SearchMode::Randomized { seed: 1, trials: 20_000 },
    );
    let inv = span_invariance(&c, &[vec![1, 2, 3], vec![1, 2, 3]], BUDGET).unwrap();
    assert_eq!(inv.choices, 9);
    assert_eq!(inv.cumulative, vec![true, true]);
    assert_eq!(inv.per_step, vec![true, false]);
}

#[test]
fn intersection_dimensions() {
    let c = found(
        &SearchSpace::new(4, 2, 1, prime(31)).unwrap(),
        SearchMode::Randomized { seed: 1, trials: 20_000 },
    );
    assert_eq!(profile(&c).l, 2);
    let mut checked = 0;
    for cfg in ProbeConfig::enumerate(4, 2, 2) {
        for other in ProbeConfig::enumerate(4, 2, 2) {
            if cfg.a[0] != other.a[0] || cfg.b[0] != other.b[0] {
                continue;
            }
            let r = intersection_dimension_audit(&c, &cfg.a[..1], &cfg.b[..1], &cfg.a[1], &other.a[1], BUDGET)
                .unwrap();
            assert_eq!(r.dimension, r.expected, "{r:?}");
            checked += 1;
        }
    }
    assert!(checked > 0);
    // i = k + 1 with |A_j| = k + 1 means A_j = A'_j
    let r = intersection_dimension_audit(&c, &[vec![1, 2, 3]], &[vec![1, 2]], &[1, 2, 4], &[1, 2, 4], BUDGET)
        .unwrap();
    assert_eq!((r.i, r.dimension), (3, 1));
}

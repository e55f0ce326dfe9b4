mod common;

use common::Tower;
use proptest::prelude::*;
use skewmdp::field::{Elt, Field};

const SHAPES: &[(u64, u32, u32)] = &[
    (2, 1, 1),
    (5, 1, 1),
    (2, 2, 1),
    (7, 1, 2),
    (2, 1, 4),
    (2, 2, 2),
    (3, 2, 2),
    (5, 1, 3),
    (3, 1, 5),
    (2, 1, 20),
    (3, 3, 4),
    (65521, 1, 1),
];

fn fields() -> Vec<Field> {
    SHAPES.iter().map(|&(p, e, k)| Field::build(p, e, k).unwrap()).collect()
}

fn elt(f: &Field, x: u64) -> Elt {
    Elt(x % f.order())
}

proptest! {
    #![proptest_config(common::cases(1000))]

    #[test]
    fn axioms(fi in 0..SHAPES.len(), a in any::<u64>(), b in any::<u64>(), c in any::<u64>()) {
        let f = &fields()[fi];
        let (a, b, c) = (elt(f, a), elt(f, b), elt(f, c));
        prop_assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
        prop_assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
        prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        prop_assert_eq!(f.add(a, f.neg(a)), Elt::ZERO);
        prop_assert_eq!(f.mul(a, b), f.mul(b, a));
        if !a.is_zero() {
            prop_assert_eq!(f.mul(a, f.inv(a).unwrap()), Elt::ONE);
        }
    }

    #[test]
    fn arithmetic_matches_schoolbook(fi in 0..SHAPES.len(), a in any::<u64>(), b in any::<u64>()) {
        let f = &fields()[fi];
        let t = Tower::new(f.spec());
        let (a, b) = (elt(f, a), elt(f, b));
        prop_assert_eq!(f.mul(a, b).0, t.mul(a.0, b.0));
        prop_assert_eq!(f.add(a, b).0, t.add(a.0, b.0));
    }

    #[test]
    fn frobenius_is_multiplicative_and_additive(fi in 0..SHAPES.len(), a in any::<u64>(), b in any::<u64>()) {
        let f = &fields()[fi];
        let (a, b) = (elt(f, a), elt(f, b));
        prop_assert_eq!(f.frobenius(f.add(a, b)), f.add(f.frobenius(a), f.frobenius(b)));
        prop_assert_eq!(f.frobenius(f.mul(a, b)), f.mul(f.frobenius(a), f.frobenius(b)));
        let t = Tower::new(f.spec());
        prop_assert_eq!(f.frobenius(a).0, t.pow(a.0, f.q() as u128));
    }
}

#[test]
fn frobenius_order_divides_extension_degree() {
    for f in fields().iter().filter(|f| f.order() <= 1 << 16) {
        let k = f.k_ext() as usize;
        for a in f.elements() {
            assert_eq!(f.frobenius_pow(a, k), a);
        }
        // σ fixes exactly F_q
        let fixed = f.elements().filter(|&a| f.frobenius(a) == a).count() as u64;
        assert_eq!(fixed, f.q());
    }
}

#[test]
fn norm_recursion() {
    for f in fields().iter().filter(|f| f.order() <= 1 << 12) {
        let k = f.k_ext() as usize;
        for a in f.elements() {
            assert_eq!(f.norm(0, a), Elt::ONE);
            for i in 0..=2 * k {
                assert_eq!(f.norm(i + 1, a), f.mul(f.frobenius(f.norm(i, a)), a));
            }
        }
    }
}

/// Orbits `{σ(β) a β^{-1}}` computed with schoolbook arithmetic and a
/// brute-force inverse.
fn orbit_sizes(f: &Field) -> Vec<usize> {
    let t = Tower::new(f.spec());
    let order = f.order();
    let inv: Vec<u64> = (0..order)
        .map(|b| (1..order).find(|&c| t.mul(b, c) == 1).unwrap_or(0))
        .collect();
    let mut seen = vec![false; order as usize];
    let mut sizes = Vec::new();
    for a in 0..order {
        if seen[a as usize] {
            continue;
        }
        let mut size = 0;
        for b in 1..order {
            let c = t.mul(t.mul(t.pow(b, f.q() as u128), a), inv[b as usize]);
            if !seen[c as usize] {
                seen[c as usize] = true;
                size += 1;
            }
        }
        sizes.push(size);
    }
    sizes
}

#[test]
fn conjugacy_classes() {
    for f in fields().iter().filter(|f| f.order() <= 1 << 10) {
        let (q, order) = (f.q() as usize, f.order() as usize);
        let parts = f.conjugacy_partition().unwrap();
        assert_eq!(parts.len(), q);
        assert_eq!(parts[0].members, vec![Elt::ZERO]);
        for c in &parts[1..] {
            assert_eq!(c.members.len(), (order - 1) / (q - 1));
        }
        let mut oracle = orbit_sizes(f);
        oracle.sort_unstable();
        let mut mine: Vec<usize> = parts.iter().map(|c| c.members.len()).collect();
        mine.sort_unstable();
        assert_eq!(mine, oracle);
        // closure under conjugation
        for (ci, c) in parts.iter().enumerate() {
            for &a in c.members.iter().take(3) {
                for b in f.elements().skip(1) {
                    let x = f.conjugate(a, b).unwrap();
                    assert_eq!(f.conjugacy_class_index(x).unwrap(), ci);
                }
            }
        }
    }
}

#[test]
fn moduli_are_smallest_irreducibles() {
    // x^2 + 1 is the first monic irreducible quadratic over F_7 (-1 is a
    // non-residue mod 7), found here by root exhaustion.
    let f = Field::build(7, 1, 2).unwrap();
    let first = (0..49u64)
        .find(|&i| {
            let (c0, c1) = (i % 7, i / 7);
            (0..7u64).all(|x| (x * x + c1 * x + c0) % 7 != 0)
        })
        .unwrap();
    assert_eq!(first, 1);
    assert_eq!(f.spec().ext_modulus, vec![vec![1], vec![0], vec![1]]);
}

use proptest::prelude::*;
use qsha256::annealer::{
    build_xor_qubo, solve_anneal, solve_exhaustive, AnnealSchedule, Assignment, Qubo,
};
use std::collections::BTreeSet;

// All assignments with z = x ^ y and a = x & y at every position, built from
// the truth table rather than the energy function.
fn truth_set(width: usize) -> BTreeSet<String> {
    let mut out = BTreeSet::new();
    for inputs in 0u32..(1 << (2 * width)) {
        let mut bits = Vec::with_capacity(4 * width);
        for p in 0..width {
            let x = inputs >> (2 * p) & 1 == 1;
            let y = inputs >> (2 * p + 1) & 1 == 1;
            bits.extend([x, y, x ^ y, x & y]);
        }
        out.insert(Assignment::from_bits(bits).to_string());
    }
    out
}

#[test]
fn ground_set_is_the_xor_truth_table() {
    for width in 1..=4 {
        let (q, _) = build_xor_qubo::<f64>(width).unwrap();
        let exact = solve_exhaustive(&q).unwrap();
        assert_eq!(exact.ground_energy, 0.0);
        let found: BTreeSet<String> = exact.ground_states.iter().map(|s| s.to_string()).collect();
        assert_eq!(found, truth_set(width), "width {width}");
    }
}

fn arb_qubo() -> impl Strategy<Value = Qubo<f64>> {
    (2usize..9).prop_flat_map(|n| {
        (
            prop::collection::vec(-3i32..4, n),
            prop::collection::vec((0..n, 0..n, -3i32..4), 0..12),
        )
            .prop_map(move |(w, c)| {
                let mut q = Qubo::new(n);
                for (i, v) in w.into_iter().enumerate() {
                    q.add_weight(i, v as f64).unwrap();
                }
                for (i, j, v) in c {
                    if i != j {
                        q.add_coupler(i, j, v as f64).unwrap();
                    }
                }
                q
            })
    })
}

proptest! {
    #[test]
    fn penalty_soundness(width in 1usize..5, bits in prop::collection::vec(any::<bool>(), 16)) {
        let (q, roles) = build_xor_qubo::<f64>(width).unwrap();
        let s = Assignment::from_bits(bits[..4 * width].to_vec());
        let e = q.energy(&s).unwrap();
        let b = s.bits();
        let xor_ok = roles.iter().all(|r| b[r.z] == (b[r.x] ^ b[r.y]));
        prop_assert!(e >= 0.0);
        if !xor_ok {
            prop_assert!(e >= 1.0);
        }
    }

    #[test]
    fn anneal_never_beats_exhaustive(q in arb_qubo(), seed in any::<u64>()) {
        let exact = solve_exhaustive(&q).unwrap();
        let schedule = AnnealSchedule { sweeps: 50, ..AnnealSchedule::default() }.with_seed(seed);
        let r = solve_anneal(&q, &schedule).unwrap();
        prop_assert!(r.energy >= exact.ground_energy - 1e-9);
        prop_assert!((q.energy(&r.best).unwrap() - r.energy).abs() < 1e-9);
    }

    #[test]
    fn text_roundtrip(q in arb_qubo()) {
        let back = Qubo::<f64>::parse(&q.to_text()).unwrap();
        prop_assert_eq!(back, q);
    }
}

#[test]
fn anneal_is_seed_deterministic() {
    let (q, _) = build_xor_qubo::<f64>(3).unwrap();
    let s = AnnealSchedule::default().with_seed(5);
    assert_eq!(solve_anneal(&q, &s).unwrap(), solve_anneal(&q, &s).unwrap());
}

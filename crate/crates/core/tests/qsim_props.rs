use proptest::prelude::*;
use qsha256::qsim::{
    self, simulate_basis, simulate_dense, BitString, Circuit, Gate, Method, NoiseModel,
    Simulator, StateVector,
};

fn arb_gate(n: usize) -> impl Strategy<Value = Gate> {
    prop_oneof![
        (0..n).prop_map(|target| Gate::X { target }),
        (0..n, 1..n).prop_map(move |(c, off)| Gate::Cnot {
            control: c,
            target: (c + off) % n,
        }),
    ]
}

fn arb_circuit(max_qubits: usize, max_gates: usize) -> impl Strategy<Value = Circuit> {
    (2..=max_qubits).prop_flat_map(move |n| {
        prop::collection::vec(arb_gate(n), 0..max_gates).prop_map(move |gates| {
            let mut c = Circuit::new(n).unwrap();
            for g in gates {
                c.push(g).unwrap();
            }
            c
        })
    })
}

fn basis_index(s: &BitString) -> usize {
    s.to_u64().unwrap() as usize
}

proptest! {
    #[test]
    fn normalization_after_every_gate(c in arb_circuit(8, 40)) {
        let mut s = StateVector::<f64>::zero_state(c.num_qubits());
        for g in c.gates() {
            s.apply(g);
            prop_assert!((s.norm_sqr() - 1.0).abs() < 1e-9);
        }
    }

    #[test]
    fn dense_and_basis_paths_agree(c in arb_circuit(12, 60)) {
        let dense: StateVector<f64> = simulate_dense(&c).unwrap();
        let basis = simulate_basis(&c);
        prop_assert_eq!(dense.as_basis_state(), Some(basis_index(&basis)));
    }

    #[test]
    fn cnot_is_an_involution_and_permutation(
        n in 2usize..7,
        seed_gates in prop::collection::vec(any::<u16>(), 0..10),
        control in 0usize..7,
        off in 1usize..7,
    ) {
        let control = control % n;
        let target = (control + off % (n - 1).max(1)) % n;
        prop_assume!(control != target);
        // random non-basis-preserving amplitudes
        let mut state = StateVector::<f64>::zero_state(n);
        let mut c = Circuit::new(n).unwrap();
        for g in &seed_gates {
            c.x(*g as usize % n).unwrap();
        }
        for g in c.gates() {
            state.apply(g);
        }
        let before: Vec<f64> = state.amplitudes().iter().map(|a| a.norm_sqr()).collect();
        let gate = Gate::Cnot { control, target };
        state.apply(&gate);
        let mut once: Vec<f64> = state.amplitudes().iter().map(|a| a.norm_sqr()).collect();
        state.apply(&gate);
        let twice: Vec<f64> = state.amplitudes().iter().map(|a| a.norm_sqr()).collect();
        prop_assert_eq!(&twice, &before);
        let mut sorted = before.clone();
        sorted.sort_by(f64::total_cmp);
        once.sort_by(f64::total_cmp);
        prop_assert_eq!(once, sorted);
    }

    #[test]
    fn histograms_conserve_shots_and_reproduce(
        c in arb_circuit(6, 20),
        shots in 1u64..300,
        p in 0.0f64..0.5,
        seed in any::<u64>(),
    ) {
        let mut c = c;
        c.measure_all().unwrap();
        let noise = NoiseModel::new(p).unwrap();
        let h = qsim::run(&c, shots, Some(&noise), seed).unwrap();
        prop_assert_eq!(h.shots(), shots);
        prop_assert_eq!(h.iter().map(|(_, n)| n).sum::<u64>(), shots);
        for (k, _) in h.iter() {
            prop_assert_eq!(k.len(), c.num_qubits());
        }
        prop_assert_eq!(h, qsim::run(&c, shots, Some(&noise), seed).unwrap());
    }

    #[test]
    fn noiseless_runs_have_one_bin(c in arb_circuit(10, 30), shots in 1u64..2000) {
        let mut c = c;
        c.measure_all().unwrap();
        let h = qsim::run(&c, shots, None, 0).unwrap();
        prop_assert_eq!(h.num_outcomes(), 1);
        let dense = Simulator { method: Method::Dense, ..Default::default() };
        prop_assert_eq!(dense.run(&c, shots, None, 3).unwrap(), h);
    }

    #[test]
    fn text_format_roundtrip(c in arb_circuit(10, 30), m in prop::collection::btree_set(0usize..10, 0..5)) {
        let mut c = c;
        let n = c.num_qubits();
        c.measure(m.into_iter().filter(|&q| q < n)).unwrap();
        let back: Circuit = qsim::text::to_text(&c).parse().unwrap();
        prop_assert_eq!(back, c);
    }
}

#[test]
fn cnot_truth_table_dense() {
    // string "control target", qubit 1 is control
    for (input, expected) in [("00", 0b00), ("01", 0b01), ("10", 0b11), ("11", 0b10)] {
        let mut c = Circuit::new(2).unwrap();
        c.encode_bits(&input.parse().unwrap(), 0).unwrap();
        c.cnot(1, 0).unwrap();
        let s: StateVector<f64> = simulate_dense(&c).unwrap();
        assert_eq!(s.as_basis_state(), Some(expected), "input {input}");
    }
}

#[test]
fn xor_circuit_at_24_qubits_dense() {
    let a: BitString = "01101010".parse().unwrap();
    let b: BitString = "01110100".parse().unwrap();
    let c = qsha256::hybrid::xor_circuit(&a, &b).unwrap();
    assert_eq!(c.num_qubits(), 24);
    let s: StateVector<f32> = simulate_dense(&c).unwrap();
    let idx = s.as_basis_state().unwrap();
    // output register is qubits 0..8
    assert_eq!(idx & 0xff, 0x1e);
    assert_eq!(idx >> 16, 0x6a);
    assert_eq!((idx >> 8) & 0xff, 0x74);
}

#[test]
fn noisy_xor_modal_outcome() {
    let a: BitString = "01101010".parse().unwrap();
    let b: BitString = "01110100".parse().unwrap();
    let c = qsha256::hybrid::xor_circuit(&a, &b).unwrap();
    let noise = NoiseModel::new(0.05).unwrap();
    let h = qsim::run(&c, 1022, Some(&noise), 11).unwrap();
    let (mode, count) = h.mode().unwrap();
    assert_eq!(mode.to_string(), "00011110");
    assert!(count < 1022);
    for (k, n) in h.iter() {
        if k != mode {
            assert!(n < count);
        }
    }
}

mod common;

use common::{all_paulis, monomial_commute, qubit_commute, qubit_matrix, SmallField};
use qconv::stabilizer::{commutes, PauliVec, TraceAltContext};
use qconv::ExtensionPair;

fn ctx(q: u64) -> TraceAltContext {
    TraceAltContext::new(&ExtensionPair::with_order(q).unwrap())
}

#[test]
fn qubit_matrices_are_signed_permutations() {
    let m = qubit_matrix(&[1, 0], &[1, 1]);
    assert_eq!(m.len(), 4);
    for row in &m {
        assert_eq!(row.iter().filter(|&&x| x != 0).count(), 1);
    }
}

#[test]
fn commutation_matches_matrices_for_qubits() {
    let c = ctx(2);
    for n in 1..=3 {
        let all = all_paulis(2, n);
        for (a, b) in &all {
            for (a2, b2) in &all {
                let lib = commutes(&PauliVec::new(a.clone(), b.clone()), &PauliVec::new(a2.clone(), b2.clone()), &c);
                assert_eq!(lib, qubit_commute((a, b), (a2, b2)), "{a:?}{b:?} vs {a2:?}{b2:?}");
            }
        }
    }
}

#[test]
fn commutation_matches_monomials_for_q3_and_q4() {
    for q in [3u32, 4] {
        let f = SmallField { q };
        let c = ctx(q as u64);
        for n in 1..=2 {
            let all = all_paulis(q, n);
            for (a, b) in &all {
                for (a2, b2) in &all {
                    let lib =
                        commutes(&PauliVec::new(a.clone(), b.clone()), &PauliVec::new(a2.clone(), b2.clone()), &c);
                    assert_eq!(lib, monomial_commute(f, (a, b), (a2, b2)), "q={q} {a:?}{b:?} vs {a2:?}{b2:?}");
                }
            }
        }
    }
}

#[test]
fn monomial_model_agrees_with_matrices_for_qubits() {
    let f = SmallField { q: 2 };
    let all = all_paulis(2, 2);
    for (a, b) in &all {
        for (a2, b2) in &all {
            assert_eq!(monomial_commute(f, (a, b), (a2, b2)), qubit_commute((a, b), (a2, b2)));
        }
    }
}

use num_bigint::BigUint;
use omfact_core::gens::{omega_minus_gens, su_gens};
use omfact_core::orders::{order_of, Family};
use omfact_core::{HermitianSpace, QuadraticSpace};

fn omega_gate(m: usize, q: u32) {
    let space = QuadraticSpace::minus_standard(m, q).unwrap();
    let h = omega_minus_gens(&space).unwrap();
    let expected = order_of(Family::OmegaMinus { m: m as u32, q }).unwrap();
    assert_eq!(h.order().unwrap(), expected, "Omega-_{}({q})", 2 * m);
}

fn su_gate(n: usize, q: u32) {
    let hs = HermitianSpace::standard(n, q).unwrap();
    let h = su_gens(&hs).unwrap();
    let expected = order_of(Family::SU { n: n as u32, q }).unwrap();
    assert_eq!(h.order().unwrap(), expected, "SU_{n}({q})");
}

#[test]
fn omega_minus_gates() {
    for (m, q) in [(4, 2), (4, 3), (4, 4), (5, 2), (6, 2)] {
        omega_gate(m, q);
    }
    assert_eq!(
        order_of(Family::OmegaMinus { m: 5, q: 2 }).unwrap(),
        BigUint::from(25_015_379_558_400u64)
    );
}

#[test]
fn su_gates() {
    for (n, q) in [(3, 2), (3, 4), (4, 2), (4, 3), (5, 2), (5, 3)] {
        su_gate(n, q);
    }
}

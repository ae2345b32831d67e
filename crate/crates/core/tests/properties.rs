//! Randomized invariants across modules.

use num_bigint::BigUint;
use omfact_core::factorcore::{is_factorization, is_factorization_by_count, SmallGroup};
use omfact_core::gens::{in_omega, omega_minus_gens, su_gens};
use omfact_core::permgrp::{group_orbit, setwise_pair_stabilizer, stabilizer, ActionPoint};
use omfact_core::{Fe, HermitianSpace, QuadraticSpace, ScalarBridge, Semilinear};
use proptest::prelude::*;

fn vector(q: u32, n: usize) -> impl Strategy<Value = Vec<Fe>> {
    proptest::collection::vec((0..q as u16).prop_map(Fe), n)
}

fn word(gens: &[Semilinear], idx: &[usize], space_field: &omfact_core::Field) -> Semilinear {
    let n = gens[0].dim();
    idx.iter().fold(Semilinear::identity(n), |acc, &i| {
        acc.compose(&gens[i % gens.len()], space_field)
    })
}

/// Reflections in the nonsingular vectors among `vs`.
fn reflections(space: &QuadraticSpace, vs: &[Vec<Fe>]) -> Vec<Semilinear> {
    vs.iter()
        .filter(|v| !space.q(v).is_zero())
        .map(|v| space.reflection(v).unwrap())
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    // Products of reflections: the invariant matches an independent count.
    #[test]
    fn dickson_counts_reflections(q in prop_oneof![Just(2u32), Just(3), Just(4)], seed in proptest::collection::vec(vector(4, 6), 1..6)) {
        let space = QuadraticSpace::minus_standard(3, q).unwrap();
        let f = space.field().clone();
        let vs: Vec<Vec<Fe>> = seed.iter().map(|v| v.iter().map(|x| Fe(x.0 % q as u16)).collect()).collect();
        let rs = reflections(&space, &vs);
        prop_assume!(!rs.is_empty());
        let g = rs.iter().fold(Semilinear::identity(6), |acc, r| acc.compose(r, &f));
        prop_assert!(space.is_isometry(&g));
        if q == 3 {
            // odd q: an odd count has determinant -1; an even count has spinor norm the product of the Q values
            let disc = vs.iter().filter(|v| !space.q(v).is_zero()).fold(Fe::ONE, |a, v| f.mul(a, space.q(v)));
            let want = if rs.len() % 2 == 1 { 1 } else { u8::from(!f.is_square(disc)) };
            prop_assert_eq!(space.dickson_or_spinor(&g).unwrap(), want);
        } else {
            prop_assert_eq!(space.dickson_or_spinor(&g).unwrap() as usize, rs.len() % 2);
        }
    }

    // The invariant is a homomorphism on products of generators and reflections.
    #[test]
    fn dickson_is_multiplicative(idx in proptest::collection::vec(0usize..64, 1..10), q in prop_oneof![Just(2u32), Just(3)]) {
        let space = QuadraticSpace::minus_standard(3, q).unwrap();
        let f = space.field().clone();
        let basis = space.standard_basis().unwrap();
        let mut gens = omega_minus_gens(&space).unwrap().generators().to_vec();
        let mut w = basis.e(1).to_vec();
        for (a, b) in w.iter_mut().zip(basis.f(1)) {
            *a = f.add(*a, *b);
        }
        gens.push(space.reflection(&w).unwrap());
        let mut expected = 0u8;
        let mut g = Semilinear::identity(6);
        for &i in &idx {
            let h = &gens[i % gens.len()];
            expected ^= space.dickson_or_spinor(h).unwrap();
            g = g.compose(h, &f);
        }
        prop_assert_eq!(space.dickson_or_spinor(&g).unwrap(), expected);
        prop_assert_eq!(in_omega(&space, &g), expected == 0);
    }

    // Eichler transformations lie in Omega.
    #[test]
    fn eichler_in_omega(v in vector(3, 6)) {
        let space = QuadraticSpace::minus_standard(3, 3).unwrap();
        let basis = space.standard_basis().unwrap();
        let u = basis.e(1).to_vec();
        let f = space.field().clone();
        // project v into u^perp by removing its f1 coordinate along u's partner
        let c = space.beta(&u, &v);
        let mut w = v.clone();
        let fb = basis.f(1);
        let scale = f.div(c, space.beta(&u, fb)).unwrap();
        for (x, y) in w.iter_mut().zip(fb) {
            *x = f.sub(*x, f.mul(scale, *y));
        }
        let e = space.eichler(&u, &w).unwrap();
        prop_assert!(space.is_isometry(&e));
        prop_assert_eq!(space.dickson_or_spinor(&e).unwrap(), 0);
    }

    // Orbit-stabilizer on random vectors.
    #[test]
    fn orbit_stabilizer(v in vector(3, 6)) {
        prop_assume!(v.iter().any(|x| !x.is_zero()));
        let space = QuadraticSpace::minus_standard(3, 3).unwrap();
        let h = omega_minus_gens(&space).unwrap();
        let orbit = group_orbit(&h, &ActionPoint::Vector(v.clone()), 1 << 20).unwrap();
        let stab = stabilizer(&h, &v).unwrap();
        prop_assert_eq!(h.order().unwrap(), stab.order().unwrap() * BigUint::from(orbit.len()));
    }

    // Membership holds for words in the generators and fails off the group.
    #[test]
    fn sifting(idx in proptest::collection::vec(0usize..64, 0..12)) {
        let space = QuadraticSpace::minus_standard(3, 2).unwrap();
        let f = space.field().clone();
        let h = omega_minus_gens(&space).unwrap();
        let g = word(h.generators(), &idx, &f);
        prop_assert!(h.contains(&g).unwrap());
        let basis = space.standard_basis().unwrap();
        let r = space.reflection(basis.d()).unwrap();
        prop_assert!(!h.contains(&g.compose(&r, &f)).unwrap());
    }

    // Blow-up is a homomorphism and preserves the form on vectors.
    #[test]
    fn blowup_functorial(idx in proptest::collection::vec(0usize..64, 1..8), a in 0usize..64, v in vector(4, 3)) {
        let hs = HermitianSpace::standard(3, 2).unwrap();
        let ext = hs.field().clone();
        let bridge = ScalarBridge::new(ext.clone(), 3).unwrap();
        let space = bridge.unitary_restriction(&hs).unwrap();
        let gens = su_gens(&hs).unwrap().generators().to_vec();
        let g = word(&gens, &idx, &ext);
        let h = &gens[a % gens.len()];
        let lhs = bridge.blowup_element(&g.compose(h, &ext)).unwrap();
        let rhs = bridge.blowup_element(&g).unwrap().compose(&bridge.blowup_element(h).unwrap(), space.field());
        prop_assert_eq!(lhs, rhs);
        let w = bridge.blowup_vector(&v);
        prop_assert_eq!(Some(space.q(&w)), bridge.to_sub(hs.eval(&v, &v)).ok());
    }

    // The two factorization counts agree on random subgroups of S4.
    #[test]
    fn factorization_counts_agree(a in proptest::collection::vec(0usize..24, 1..3), b in proptest::collection::vec(0usize..24, 1..3)) {
        let g = SmallGroup::symmetric(4).unwrap();
        let pick = |ix: &[usize]| -> SmallGroup {
            let gens: Vec<Vec<u8>> = ix.iter().map(|&i| g.elements()[i].clone()).collect();
            SmallGroup::generate(4, &gens).unwrap()
        };
        let (h, k) = (pick(&a), pick(&b));
        prop_assert_eq!(is_factorization(&g, &h, &k).unwrap(), is_factorization_by_count(&g, &h, &k));
    }
}

#[test]
fn chain_is_deterministic() {
    let space = QuadraticSpace::minus_standard(4, 2).unwrap();
    let a = omega_minus_gens(&space).unwrap();
    let b = omega_minus_gens(&space).unwrap();
    assert_eq!(a.chain().unwrap().base(), b.chain().unwrap().base());
    assert_eq!(
        a.chain().unwrap().orbit_sizes(),
        b.chain().unwrap().orbit_sizes()
    );
    assert_eq!(a.order().unwrap(), b.order().unwrap());
}

#[test]
fn ordered_versus_unordered_pair_orbits() {
    let space = QuadraticSpace::minus_standard(3, 2).unwrap();
    let h = omega_minus_gens(&space).unwrap();
    let basis = space.standard_basis().unwrap();
    let (e, f) = (basis.e(1).to_vec(), basis.f(1).to_vec());
    let ordered = group_orbit(
        &h,
        &ActionPoint::OrderedTuple(vec![e.clone(), f.clone()]),
        1 << 20,
    )
    .unwrap();
    let unordered = group_orbit(
        &h,
        &ActionPoint::unordered_pair(e.clone(), f.clone()),
        1 << 20,
    )
    .unwrap();
    let swap = setwise_pair_stabilizer(&h, &e, &f).unwrap().swap_exists();
    assert_eq!(ordered.len(), unordered.len() * if swap { 2 } else { 1 });
}

//! Property tests for algebraic invariants across modules.

use std::sync::Arc;

use proptest::prelude::*;

use isocat::algebra::{BitMatrix, CycloNumber};
use isocat::cohomology::{coboundary_solve, d1, gauge, is_cocycle2, Coeff, Cochain1, Cochain2, Module, Triviality, SOLVER_CAP};
use isocat::groups::sympl::{preserves_pairing, sp_generators};
use isocat::groups::{build_group, AbelianGroup, Group, GroupSpec, TableGroup};
use isocat::twists::{cocycle_to_twist, rmatrix, twist_to_cocycle, verify_twist_axioms};
use isocat::weil::{heisenberg, heisenberg_cocycle, ps_compose, ps_lift, ps_member, rho, t_chi, Gauss, HeisenbergElement, WeilContext};

fn sp_word(n: usize, word: &[usize]) -> BitMatrix {
    let gens = sp_generators(n);
    word.iter().fold(BitMatrix::identity(2 * n), |g, &i| g.mul(&gens[i % gens.len()]))
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, ..ProptestConfig::default() })]

    #[test]
    fn coboundaries_are_cocycles(moduli in prop::sample::select(vec![vec![2u32, 2], vec![4], vec![3, 3], vec![2, 4]]), seed in any::<u64>()) {
        let a = AbelianGroup::new(moduli).unwrap();
        let n = a.exponent();
        let values: Vec<usize> = (0..a.order()).map(|x| ((seed >> (x % 60)) as usize + x * 7) % n as usize).collect();
        let z = Cochain1 { coeff: Coeff::Mu(n), values };
        prop_assert!(is_cocycle2(&a, &d1(&a, &z)).is_ok());
    }

    #[test]
    fn solver_splits_module_coboundaries(spec in prop::sample::select(vec!["cyclic 6", "dihedral8", "quaternion8", "elementary_abelian 2 3"]), values in prop::collection::vec(0usize..4, 8)) {
        let (k, _) = TableGroup::from_group(&build_group(&GroupSpec::parse_builtin(spec).unwrap()).unwrap(), 100).unwrap();
        let m = Arc::new(Module::trivial(AbelianGroup::new(vec![4]).unwrap()));
        let mut v: Vec<usize> = (0..k.order()).map(|i| values[i % values.len()]).collect();
        v[0] = 0;
        let c = d1(&k, &Cochain1 { coeff: Coeff::Module(m), values: v });
        match coboundary_solve(&k, &c, SOLVER_CAP).unwrap() {
            Triviality::Coboundary(z) => prop_assert_eq!(d1(&k, &z), c),
            _ => prop_assert!(false, "coboundary not split"),
        }
    }

    #[test]
    fn gauge_keeps_the_rmatrix(values in prop::collection::vec(0usize..4, 4), bits in 0u32..16) {
        let a = AbelianGroup::elementary(2, 2);
        let j = Cochain2::from_fn(4, Coeff::Mu(4), |x, y| {
            2 * (0..2).map(|i| (0..2).map(|k| ((x >> i) & 1) * ((y >> k) & 1) * ((bits >> (2 * i + k)) & 1) as usize).sum::<usize>()).sum::<usize>() % 4
        });
        let mut v = values;
        v[0] = 0;
        let g = gauge(&a, &j, &Cochain1 { coeff: Coeff::Mu(4), values: v }).unwrap();
        prop_assert_eq!(rmatrix(&g), rmatrix(&j));
    }

    #[test]
    fn twist_round_trip(values in prop::collection::vec(0usize..4, 4)) {
        let a = AbelianGroup::new(vec![4]).unwrap();
        let mut v = values;
        v[0] = 0;
        let j = d1(&a, &Cochain1 { coeff: Coeff::Mu(4), values: v });
        let t = cocycle_to_twist(&a, &j).unwrap();
        prop_assert!(verify_twist_axioms(&t).unwrap().is_ok());
        prop_assert_eq!(twist_to_cocycle(&t).unwrap(), j);
    }

    #[test]
    fn cyclotomic_inverse(coeffs in prop::collection::vec(-3i64..4, 4)) {
        let x = (0..4).fold(CycloNumber::zero(8), |acc, k| acc + CycloNumber::zeta_power(8, k as i64) * CycloNumber::from_integer(8, coeffs[k]));
        if let Some(inv) = x.inverse() {
            prop_assert!((x * inv).is_one());
        } else {
            prop_assert!(x.is_zero());
        }
    }

    #[test]
    fn rho_multiplies_through_the_cocycle(v1 in 0u8..64, v2 in 0u8..64) {
        let lhs = rho(v1, 3).unwrap().mul(&rho(v2, 3).unwrap());
        let rhs = rho(v1 ^ v2, 3).unwrap().scale(Gauss::unit(2 * heisenberg_cocycle(3, v1, v2) as u32));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn heisenberg_is_associative(a in 0u8..64, b in 0u8..64, c in 0u8..64, s in 0u8..8) {
        let h = heisenberg(3).unwrap();
        let e = |v: u8, bit: u8| HeisenbergElement { v, sign: (s >> bit) & 1 };
        let (x, y, z) = (e(a, 0), e(b, 1), e(c, 2));
        prop_assert_eq!(h.mul(&h.mul(&x, &y), &z), h.mul(&x, &h.mul(&y, &z)));
        prop_assert_eq!(h.mul(&x, &h.inv(&x)), h.identity());
    }

    #[test]
    fn weil_operator_conjugates_t(word in prop::collection::vec(0usize..8, 0..25), v in 0u8..16) {
        let ctx = WeilContext::new(2).unwrap();
        let g = sp_word(2, &word);
        prop_assert!(preserves_pairing(2, &g));
        let a = ctx.weil_operator(&g).unwrap();
        prop_assert!(a.mul(&t_chi(v, 2).unwrap()).proportional(&t_chi(g.apply(v), 2).unwrap().mul(&a)));
    }

    #[test]
    fn weil_and_cohomology_agree(w1 in prop::collection::vec(0usize..8, 0..25), w2 in prop::collection::vec(0usize..8, 0..25)) {
        let ctx = WeilContext::new(2).unwrap();
        let (g, h) = (sp_word(2, &w1), sp_word(2, &w2));
        prop_assert_eq!(ctx.crosscheck_btilde(&g, &h).unwrap(), ctx.twist.btilde(&g, &h).unwrap());
    }

    #[test]
    fn ps_composition_closes(w1 in prop::collection::vec(0usize..8, 0..20), w2 in prop::collection::vec(0usize..8, 0..20), l1 in 0usize..16, l2 in 0usize..16) {
        let (g, h) = (sp_word(2, &w1), sp_word(2, &w2));
        if let (Some(q), Some(r)) = (ps_lift(2, &g), ps_lift(2, &h)) {
            let shift = |q: Vec<u8>, l: usize| -> Vec<u8> { q.iter().enumerate().map(|(x, &b)| b ^ ((l & x).count_ones() & 1) as u8).collect() };
            let (q, r) = (shift(q, l1), shift(r, l2));
            prop_assert!(ps_member(2, &g, &q) && ps_member(2, &h, &r));
            let (gh, qr) = ps_compose(2, (&g, &q), (&h, &r));
            prop_assert!(ps_member(2, &gh, &qr));
        }
    }
}

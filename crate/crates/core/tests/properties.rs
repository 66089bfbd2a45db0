use proptest::prelude::*;
use qcurrent::bform::pair;
use qcurrent::freealg::{straighten_with, Letter, Strategy as Order, Word};
use qcurrent::kashiwara::{alpha_bar, FormalExpr, KLetter};
use qcurrent::omega::{omega_oracle, omega_phi, omega_psi, OmegaKind, OmegaOp};
use qcurrent::{CartanData, Coefficient, Element, Scalar};

fn letters(rank: usize, maxlen: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(
        (1..=rank, -3i64..=3).prop_map(|(c, k)| Letter::new(c, k)),
        0..=maxlen,
    )
}

fn kletter() -> impl Strategy<Value = KLetter> {
    (any::<bool>(), 1usize..=3, -4i64..=4).prop_map(|(x, i, m)| {
        if x {
            KLetter::X(i, m)
        } else {
            KLetter::O(i, m)
        }
    })
}

fn expr() -> impl Strategy<Value = FormalExpr> {
    prop::collection::vec(
        (prop::collection::vec(kletter(), 0..4), -3i64..=3, -4i64..=4),
        1..5,
    )
    .prop_map(|terms| {
        let mut e = FormalExpr::zero();
        for (w, ce, n) in terms {
            e.add_term(w, &Coefficient::monomial(ce, Scalar::from_int(n)));
        }
        e
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn omega_matches_oracle_in_g2(w in letters(2, 3), i in 1usize..=2, k in -5i64..=5) {
        let cd = CartanData::from_label("G2").unwrap();
        let e = Element::from_word(w.clone());
        prop_assert_eq!(omega_psi(&cd, i, k, &e), omega_oracle(&cd, OmegaOp { kind: OmegaKind::Psi, color: i, k }, &w));
        prop_assert_eq!(omega_phi(&cd, i, k, &e), omega_oracle(&cd, OmegaOp { kind: OmegaKind::Phi, color: i, k }, &w));
    }

    #[test]
    fn alpha_bar_is_involutive_anti_automorphism(a in expr(), b in expr()) {
        let aa = alpha_bar(&alpha_bar(&a).unwrap()).unwrap();
        prop_assert_eq!(&aa, &a);
        let lhs = alpha_bar(&a.multiply(&b)).unwrap();
        let rhs = alpha_bar(&b).unwrap().multiply(&alpha_bar(&a).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn form_is_symmetric_in_c2(a in letters(2, 2), b in letters(2, 2)) {
        let cd = CartanData::from_label("C2").unwrap();
        let (ea, eb) = (Element::from_word(a), Element::from_word(b));
        prop_assert_eq!(pair(&cd, &ea, &eb), pair(&cd, &eb, &ea));
    }

    #[test]
    fn straightening_is_idempotent_and_order_free(w in letters(1, 4)) {
        let cd = CartanData::from_label("A1").unwrap();
        let e = Element::from_word(w);
        let l = straighten_with(&cd, &e, Order::Leftmost).unwrap();
        let r = straighten_with(&cd, &e, Order::Rightmost).unwrap();
        prop_assert_eq!(&l, &r);
        prop_assert_eq!(straighten_with(&cd, &l, Order::Leftmost).unwrap(), l);
    }
}

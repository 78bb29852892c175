use coxpath::barred::{psi, psi_inverse};
use coxpath::sgnperm::{des_positive, enumerate_group};
use coxpath::{Budget, Kind, SignedPermutation};
use proptest::prelude::*;

fn group(n: usize, kind: Kind) -> Vec<SignedPermutation> {
    enumerate_group(n, kind, &Budget::default())
        .unwrap()
        .map(|w| SignedPermutation::new(w).unwrap())
        .collect()
}

#[test]
fn positive_descents_are_descents_of_the_standardization() {
    for n in 1..=7 {
        for u in group(n, Kind::B) {
            let (w, _) = u.window_decomposition();
            let mut desc = u.descent_set(Kind::B).unwrap();
            desc.remove(&0);
            assert_eq!(desc, w.descent_set(), "{u}");
        }
    }
}

#[test]
fn type_d_descents_agree_between_sentinel_forms() {
    for n in 2..=6 {
        for u in group(n, Kind::B) {
            let zero_form = u.descent_set(Kind::D).unwrap();
            let signed_form = u.descent_set_d_signed().unwrap();
            // position 0 (with u_0 = -u_2) corresponds to position -1
            let relabelled: std::collections::BTreeSet<i32> =
                zero_form.iter().map(|&i| if i == 0 { -1 } else { i as i32 }).collect();
            assert_eq!(relabelled, signed_form, "{u}");
            assert_eq!(u.des(Kind::D).unwrap(), u.mate().des(Kind::D).unwrap(), "{u}");
        }
    }
}

#[test]
fn smooth_elements_have_equal_b_and_d_descents() {
    for n in 2..=6 {
        for u in group(n, Kind::B) {
            if u.is_smooth().unwrap() {
                assert_eq!(u.des(Kind::D).unwrap(), u.des(Kind::B).unwrap(), "{u}");
            }
        }
    }
}

#[test]
fn chi_is_a_bijection_with_a_descent_shift() {
    for n in 2..=6 {
        let mut seen = std::collections::HashSet::new();
        for u in group(n, Kind::B).into_iter().filter(|u| !u.is_smooth().unwrap()) {
            let (x, v) = u.chi().unwrap();
            assert_eq!(des_positive(v.window()), u.des(Kind::B).unwrap() - 1);
            assert_eq!(SignedPermutation::chi_inverse(x, &v).unwrap(), u);
            assert!(seen.insert((x, v)));
        }
        assert_eq!(seen.len(), n * group(n - 1, Kind::B).len());
    }
}

fn signed_window(max_n: usize) -> impl Strategy<Value = Vec<i32>> {
    (1..=max_n)
        .prop_flat_map(|n| {
            (Just((1..=n as i32).collect::<Vec<_>>()).prop_shuffle(), proptest::collection::vec(any::<bool>(), n))
        })
        .prop_map(|(w, signs)| w.into_iter().zip(signs).map(|(l, s)| if s { -l } else { l }).collect())
}

proptest! {
    #[test]
    fn text_form_round_trips(window in signed_window(11)) {
        let u = SignedPermutation::new(window).unwrap();
        prop_assert_eq!(u.to_string().parse::<SignedPermutation>().unwrap(), u);
    }

    #[test]
    fn psi_round_trips_beyond_exhaustive_range(window in signed_window(10)) {
        let u = SignedPermutation::new(window).unwrap();
        let s = psi_inverse(&u);
        prop_assert_eq!(s.descent_index(), u.des(Kind::B).unwrap());
        prop_assert_eq!(psi(&s), u);
    }

    #[test]
    fn mates_share_type_d_descents(window in signed_window(10)) {
        let u = SignedPermutation::new(window).unwrap();
        if u.len() >= 2 {
            prop_assert_eq!(u.des(Kind::D).unwrap(), u.mate().des(Kind::D).unwrap());
            prop_assert_ne!(u.is_smooth().unwrap(), u.mate().is_smooth().unwrap());
        }
    }
}

use proptest::prelude::*;
use tilecrystal::crossings::CrossingCrystal;
use tilecrystal::lusztig::LusztigDatum;
use tilecrystal::strings::{polar_duality_check, string_cone, string_datum, string_op_f};
use tilecrystal::words::{enumerate_reduced_words, ReducedWord};

#[test]
fn polar_duality_rank_two() {
    for word in enumerate_reduced_words(3).unwrap() {
        let c = CrossingCrystal::new(&word).unwrap();
        let report = polar_duality_check(&c, 4, 8).unwrap();
        assert!(report.ok(), "{report:?}");
        assert!(report.checked > 0);
    }
}

#[test]
fn polar_duality_rank_three() {
    for word in enumerate_reduced_words(4).unwrap() {
        let c = CrossingCrystal::new(&word).unwrap();
        let report = polar_duality_check(&c, 3, 5).unwrap();
        assert!(report.ok(), "{report:?}");
    }
}

#[test]
fn cone_rejects_negative_entry() {
    let word: ReducedWord = "212".parse().unwrap();
    let cone = string_cone(&CrossingCrystal::new(&word).unwrap());
    assert!(!cone.contains(&[0, 1, -1]));
    assert!(cone.contains(&[0, 0, 0]));
    assert_eq!(cone.inequalities().lines().count(), 3);
}

#[test]
fn lexicographic_word_gives_classical_cone() {
    // For (1,2,1) the cone is s_1 >= 0, s_2 >= s_3 >= 0.
    let word: ReducedWord = "121".parse().unwrap();
    let cone = string_cone(&CrossingCrystal::new(&word).unwrap());
    for p in tilecrystal::strings::box_points(3, -2, 3) {
        let classical = p[0] >= 0 && p[1] >= p[2] && p[2] >= 0;
        assert_eq!(cone.contains(&p), classical, "{p:?}");
    }
}

fn n4_words() -> Vec<ReducedWord> {
    enumerate_reduced_words(4).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn string_f_is_a_unit_step(k in 0usize..16, a in 1u8..4, s in prop::collection::vec(0i64..5, 6)) {
        let word = &n4_words()[k];
        let t = string_op_f(word, a, &s).unwrap();
        let moved: Vec<usize> = (0..6).filter(|&j| t[j] != s[j]).collect();
        prop_assert_eq!(moved.len(), 1);
        prop_assert_eq!(t[moved[0]], s[moved[0]] + 1);
        prop_assert_eq!(word.letters()[moved[0]], a);
    }

    #[test]
    fn string_data_lie_in_cone(k in 0usize..16, x in prop::collection::vec(0i64..4, 6)) {
        let word = &n4_words()[k];
        let c = CrossingCrystal::new(word).unwrap();
        let d = LusztigDatum::from_word_coords(word, &x).unwrap();
        let s = string_datum(&c, &d).unwrap();
        prop_assert!(string_cone(&c).contains(&s));
    }
}

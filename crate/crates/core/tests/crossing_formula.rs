use proptest::prelude::*;
use tilecrystal::crossings::{direct_dual_crossings, dual_crossings, CrossingCrystal};
use tilecrystal::lusztig::{CrystalOp, LusztigDatum, OpOutcome, Oracle};
use tilecrystal::strings::box_points;
use tilecrystal::tiling::Tiling;
use tilecrystal::words::{enumerate_reduced_words, ReducedWord};

#[test]
fn formula_matches_transport_small() {
    let oracle = Oracle::new();
    for n in 3..=4 {
        for word in enumerate_reduced_words(n).unwrap() {
            let crystal = CrossingCrystal::new(&word).expect("crystal");
            for coords in box_points(word.len(), 0, 2) {
                let x = LusztigDatum::from_word_coords(&word, &coords).unwrap();
                for a in 1..n as u8 {
                    for op in CrystalOp::ALL {
                        let want = oracle.apply(op, a, &x).unwrap();
                        let got = crystal.apply(op, a, &x).unwrap_or_else(|e| panic!("{word} {x} {op}{a}: {e}"));
                        assert_eq!(got, want, "{word} {x} {op}{a}");
                    }
                }
            }
        }
    }
}

#[test]
fn dual_crossings_two_ways() {
    for n in 3..=5 {
        for word in enumerate_reduced_words(n).unwrap() {
            let tiling = Tiling::new(&word);
            for a in 1..n as u8 {
                let reduced = dual_crossings(&word, a).unwrap();
                let direct = direct_dual_crossings(&tiling, a).unwrap();
                assert_eq!(reduced.len(), direct.len(), "{word} a={a}");
                let find = |form: &[i64]| reduced.crossings.iter().position(|c| c.form == form);
                let image: Vec<usize> = direct
                    .crossings
                    .iter()
                    .map(|c| find(&c.form).unwrap_or_else(|| panic!("{word} a={a}: {:?} missing", c.pairs(n))))
                    .collect();
                for i in 0..image.len() {
                    for j in 0..image.len() {
                        assert_eq!(direct.leq(i, j), reduced.leq(image[i], image[j]), "{word} a={a}");
                    }
                }
            }
        }
    }
}

fn word_and_datum(n: usize) -> impl Strategy<Value = (ReducedWord, Vec<i64>)> {
    let words = enumerate_reduced_words(n).unwrap();
    let len = n * (n - 1) / 2;
    (proptest::sample::select(words), proptest::collection::vec(0i64..6, len))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn e_undoes_f((word, coords) in word_and_datum(5), a in 1u8..5) {
        let crystal = CrossingCrystal::new(&word).unwrap();
        let x = LusztigDatum::from_word_coords(&word, &coords).unwrap();
        for star in [false, true] {
            let (fx, back, eps, eps_f) = if star {
                let fx = crystal.f_star(a, &x).unwrap();
                (fx.clone(), crystal.e_star(a, &fx).unwrap(), crystal.eps_star(a, &x).unwrap(), crystal.eps_star(a, &fx).unwrap())
            } else {
                let fx = crystal.f(a, &x).unwrap();
                (fx.clone(), crystal.e(a, &fx).unwrap(), crystal.eps(a, &x).unwrap(), crystal.eps(a, &fx).unwrap())
            };
            prop_assert_eq!(back, Some(x.clone()));
            prop_assert_eq!(eps_f, eps + 1);
            let mut w = x.weight();
            w[a as usize - 1] += 1;
            prop_assert_eq!(fx.weight(), w);
        }
    }

    #[test]
    fn formula_matches_transport_rank_four((word, coords) in word_and_datum(5), a in 1u8..5) {
        let crystal = CrossingCrystal::new(&word).unwrap();
        let x = LusztigDatum::from_word_coords(&word, &coords).unwrap();
        let oracle = Oracle::new();
        for op in CrystalOp::ALL {
            let got = crystal.apply(op, a, &x).unwrap();
            prop_assert_eq!(&got, &oracle.apply(op, a, &x).unwrap());
            if let OpOutcome::Value(v) = got {
                prop_assert!(v >= 0);
            }
        }
    }
}

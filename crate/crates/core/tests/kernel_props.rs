mod common;

use proptest::prelude::*;
use recipdim::{Field, MultiPoly};

fn fields() -> impl Strategy<Value = Field> {
    prop_oneof![
        Just(Field::rationals()),
        prop::sample::select(vec![2u64, 3, 5, 7, 11, 101, 65537]).prop_map(|p| Field::prime(p).unwrap()),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn field_axioms(k in fields(), seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let (a, b, c) = (k.random(&mut rng), k.random(&mut rng), k.random(&mut rng));
        common::check_field_axioms(&k, &a, &b, &c).map_err(TestCaseError::fail)?;
        common::check_field_axioms(&k, &k.zero(), &a, &b).map_err(TestCaseError::fail)?;
    }

    #[test]
    fn factors_multiply_back(k in fields(), seed in any::<u64>(), n in 1usize..=3) {
        let mut rng = common::rng(seed);
        let parts: Vec<MultiPoly> =
            (0..n).map(|i| common::rand_upoly(&k, (seed >> (2 * i)) as u32 % 4, &mut rng)).collect();
        common::check_factor_reconstruction(&parts).map_err(TestCaseError::fail)?;
    }

    #[test]
    fn leading_form_is_multiplicative(k in fields(), seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let f = common::rand_poly(&k, &["X", "Y", "Z"], 4, &mut rng);
        let g = common::rand_poly(&k, &["X", "Y", "Z"], 4, &mut rng);
        common::check_leading_form_mult(&f, &g).map_err(TestCaseError::fail)?;
    }

    #[test]
    fn resultant_vanishes_with_common_factor(k in fields(), seed in any::<u64>(), shared in any::<bool>()) {
        let mut rng = common::rng(seed);
        let mut f = common::rand_upoly(&k, 1 + seed as u32 % 4, &mut rng);
        let mut g = common::rand_upoly(&k, 1 + (seed >> 8) as u32 % 4, &mut rng);
        if shared {
            let h = common::rand_upoly(&k, 1 + (seed >> 16) as u32 % 2, &mut rng);
            f = f.mul(&h);
            g = g.mul(&h);
        }
        common::check_resultant_gcd(&f, &g).map_err(TestCaseError::fail)?;
    }
}

mod common;

use proptest::prelude::*;
use recipdim::dimcriteria::{classify_quadric, replay_serialized, Verdict};
use recipdim::planeloc::{coordinate_detect, localization_is_field};
use recipdim::poly::{parse_poly, vars};
use recipdim::{Field, MultiPoly};

/// An invertible affine substitution of X, Y, Z over Q.
fn affine_images() -> impl Strategy<Value = Vec<String>> {
    (prop::array::uniform9(-2i64..=2), prop::array::uniform3(-2i64..=2))
        .prop_filter("singular", |(m, _)| {
            m[0] * (m[4] * m[8] - m[5] * m[7]) - m[1] * (m[3] * m[8] - m[5] * m[6])
                + m[2] * (m[3] * m[7] - m[4] * m[6])
                != 0
        })
        .prop_map(|(m, c)| {
            (0..3).map(|r| format!("({})*X+({})*Y+({})*Z+({})", m[3 * r], m[3 * r + 1], m[3 * r + 2], c[r])).collect()
        })
}

fn disguise(normal: &str, images: &[String]) -> MultiPoly {
    let q = Field::rationals();
    let v = vars(&["X", "Y", "Z"]);
    let f = parse_poly(normal, &v, &q).unwrap();
    let im: Vec<MultiPoly> = images.iter().map(|s| parse_poly(s, &v, &q).unwrap()).collect();
    f.compose(&im)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    /// Coordinate changes do not move a quadric between classes, and every
    /// exact answer survives a serialization round trip.
    #[test]
    fn quadric_class_is_affine_invariant(images in affine_images(), which in 0usize..3) {
        let (normal, n) = [("X*Y-1", 1), ("X*Y+Z", 2), ("X^2+Y", 2)][which];
        let f = disguise(normal, &images);
        let v = classify_quadric(&f).unwrap();
        prop_assert_eq!(&v.verdict, &Verdict::Exact { n }, "{} from {}", f, normal);
        replay_serialized(v.certificate.as_ref().unwrap()).unwrap();
    }

    /// `aY + h(X)` is always recognised, its certificate re-checks, and its
    /// localization is never a field once `deg h >= 2`.
    #[test]
    fn graphs_are_coordinates(a in prop_oneof![-5i64..=-1, 1i64..=5], seed in any::<u64>(), deg in 2u32..=4) {
        let q = Field::rationals();
        let mut rng = common::rng(seed);
        let h = common::rand_upoly(&q, deg, &mut rng);
        let v = vars(&["X", "Y"]);
        let h = h.with_vars(&v).unwrap();
        let f = MultiPoly::var(&q, &v, 1).scale(&q.from_i64(a)).add(&h);
        let cert = coordinate_detect(&f);
        prop_assert!(cert.is_some(), "{}", f);
        prop_assert!(cert.unwrap().verify(&q).unwrap());
        let fv = localization_is_field(&f, false).unwrap();
        prop_assert_eq!(fv.value, Some(false), "{}", f);
        if let Some(t) = fv.transform_value {
            prop_assert!(!t, "transform count disagrees for {}", f);
        }
    }

    #[test]
    fn solution_counts_agree(p in prop::sample::select(vec![5u64, 7]), seed in any::<u64>(), a in 1u32..=3, b in 1u32..=2) {
        let k = Field::prime(p).unwrap();
        let mut rng = common::rng(seed);
        let f = common::rand_form(&k, a, &mut rng);
        let g = common::rand_form(&k, b, &mut rng);
        common::check_numsol_pair(p, &f, &g).map_err(TestCaseError::fail)?;
    }
}

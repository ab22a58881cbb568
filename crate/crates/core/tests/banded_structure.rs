use gosper::banded::{band_product, BandAccumulator, BandFactor};
use gosper::group::{finite_product, finite_product_chunked, finite_product_segmented, GosperMatrix};
use gosper::numeric::{rat, Scalar};
use proptest::prelude::*;

fn nonzero() -> impl Strategy<Value = Scalar> {
    (1i64..9, 1i64..7, any::<bool>())
        .prop_map(|(n, d, neg)| Scalar::from(rat(if neg { -n } else { n }, d)))
}

fn entry() -> impl Strategy<Value = Scalar> {
    (-8i64..9, 1i64..7).prop_map(|(n, d)| Scalar::from(rat(n, d)))
}

fn factors(dim: usize, len: usize) -> impl Strategy<Value = Vec<BandFactor>> {
    prop::collection::vec(
        (nonzero(), entry(), prop::collection::vec(entry(), dim))
            .prop_map(|(a, b, u)| BandFactor::new(a, b, u)),
        len,
    )
}

fn dims_and_factors() -> impl Strategy<Value = (usize, Vec<BandFactor>)> {
    (1usize..=6, 1usize..=25).prop_flat_map(|(d, p)| (Just(d), factors(d, p)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn band_product_equals_dense((dim, fs) in dims_and_factors()) {
        let dense: Vec<GosperMatrix> = fs.iter().map(BandFactor::to_gosper).collect();
        let full = finite_product(dim, &dense).unwrap();
        prop_assert_eq!(band_product(&fs, dim).unwrap(), full.a_rows());

        let mut acc = BandAccumulator::new(dim);
        for f in &fs {
            acc.accumulate(f).unwrap();
        }
        let top_first: Vec<Scalar> = acc.v().iter().rev().cloned().collect();
        prop_assert_eq!(full.u(), &top_first[..]);
        prop_assert_eq!(acc.a_block(), full.a_rows());
    }

    #[test]
    fn segmented_reduction_is_identical((dim, fs) in dims_and_factors(), leaf in 1usize..6, chunk in 1usize..8) {
        let dense: Vec<GosperMatrix> = fs.iter().map(BandFactor::to_gosper).collect();
        let seq = finite_product(dim, &dense).unwrap();
        let seg = finite_product_segmented(dim, &dense, leaf).unwrap();
        let chk = finite_product_chunked(dim, &dense, chunk).unwrap();
        prop_assert_eq!(format!("{seq:?}"), format!("{seg:?}"));
        prop_assert_eq!(&seq, &seg);
        prop_assert_eq!(&seq, &chk);
    }
}

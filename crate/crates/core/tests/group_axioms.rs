use gosper::group::{finite_product, GosperMatrix};
use gosper::numeric::{rat, Scalar};
use proptest::prelude::*;

fn entry() -> impl Strategy<Value = Scalar> {
    (-9i64..10, 1i64..6).prop_map(|(n, d)| Scalar::from(rat(n, d)))
}

fn matrix(dim: usize) -> impl Strategy<Value = GosperMatrix> {
    (
        prop::collection::vec(prop::collection::vec(entry(), dim), dim),
        prop::collection::vec(entry(), dim),
    )
        .prop_map(|(a, u)| GosperMatrix::new(a, u).unwrap())
}

fn triple() -> impl Strategy<Value = (GosperMatrix, GosperMatrix, GosperMatrix)> {
    (1usize..=5).prop_flat_map(|d| (matrix(d), matrix(d), matrix(d)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn associativity_and_identity((a, b, c) in triple()) {
        let d = a.dim();
        let left = a.multiply(&b).unwrap().multiply(&c).unwrap();
        let right = a.multiply(&b.multiply(&c).unwrap()).unwrap();
        prop_assert_eq!(&left, &right);
        prop_assert_eq!(finite_product(d, &[a.clone(), b.clone(), c.clone()]).unwrap(), left);
        let id = GosperMatrix::identity(d);
        prop_assert_eq!(&a.multiply(&id).unwrap(), &a);
        prop_assert_eq!(&id.multiply(&a).unwrap(), &a);
    }

    #[test]
    fn closure_keeps_block_shape((a, b, _c) in triple()) {
        let p = a.multiply(&b).unwrap();
        prop_assert_eq!(p.dim(), a.dim());
        // u of the product is A1 u2 + u1
        for i in 0..a.dim() {
            let mut expect = a.u()[i].clone();
            for k in 0..a.dim() {
                expect = &expect + &(a.a(i, k) * &b.u()[k]);
            }
            prop_assert_eq!(&p.u()[i], &expect);
        }
    }

    #[test]
    fn inverses_when_invertible((a, _b, _c) in triple()) {
        if let Ok(inv) = a.inverse() {
            let id = GosperMatrix::identity(a.dim());
            prop_assert_eq!(&a.multiply(&inv).unwrap(), &id);
            prop_assert_eq!(&inv.multiply(&a).unwrap(), &id);
            prop_assert!(inv.is_exact());
        }
    }
}

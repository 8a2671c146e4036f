use mpc_core::{BruteForceDecoder, Field, FieldElement, GsDecoder, ListDecoder, Polynomial, RingElement, RsCode};
use proptest::prelude::*;

fn fields() -> Vec<Field> {
    vec![Field::gf(2, 4).unwrap(), Field::gf(2, 3).unwrap(), Field::gf(7, 1).unwrap(), Field::gf(3, 2).unwrap()]
}

fn elems(f: &Field, n: usize) -> impl Strategy<Value = Vec<FieldElement>> {
    let f = f.clone();
    proptest::collection::vec(0..f.order(), n).prop_map(move |v| v.into_iter().map(|x| f.element(x)).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn field_axioms(fi in 0usize..4, a in 0u32..49, b in 0u32..49, c in 0u32..49) {
        let f = &fields()[fi];
        let q = f.order();
        let (a, b, c) = (f.element(a % q), f.element(b % q), f.element(c % q));
        prop_assert_eq!(f.add(a, b), f.add(b, a));
        prop_assert_eq!(f.mul(a, b), f.mul(b, a));
        prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        prop_assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
        prop_assert_eq!(f.add(a, f.neg(a)), f.zero());
        if !a.is_zero() {
            prop_assert_eq!(f.mul(a, f.inv(a).unwrap()), f.one());
        }
        prop_assert_eq!(f.parse_element(&f.format_element(a)).unwrap(), a);
    }

    #[test]
    fn bezout_identity(a in elems(&Field::gf(2, 4).unwrap(), 7), b in elems(&Field::gf(2, 4).unwrap(), 5)) {
        let f = Field::gf(2, 4).unwrap();
        let (pa, pb) = (Polynomial::new(&f, a), Polynomial::new(&f, b));
        prop_assume!(!pa.is_zero() || !pb.is_zero());
        let (g, s, t) = Polynomial::gcd_ext(&pa, &pb).unwrap();
        prop_assert!(pa.mul(&s).add(&pb.mul(&t)) == g);
        prop_assert!(pa.rem(&g).unwrap().is_zero());
        prop_assert!(pb.rem(&g).unwrap().is_zero());
    }

    #[test]
    fn ring_units_invert(c in elems(&Field::gf(2, 3).unwrap(), 7)) {
        let f = Field::gf(2, 3).unwrap();
        let r = RingElement::from_coeffs(&f, c);
        if r.is_unit() {
            prop_assert!(r.mul(&r.inv().unwrap()).unwrap() == RingElement::one(&f, 7));
        } else {
            prop_assert!(r.inv().is_err());
        }
    }

    #[test]
    fn gs_matches_brute_force(k in 2usize..5, v in 1usize..3, r in elems(&Field::gf(2, 3).unwrap(), 7)) {
        let f = Field::gf(2, 3).unwrap();
        let gs = GsDecoder::new(RsCode::new(&f, k).unwrap(), v).unwrap();
        let brute = BruteForceDecoder::new(gs.code().clone(), gs.tau());
        prop_assert_eq!(gs.decode(&r).unwrap(), brute.decode(&r).unwrap());
    }

    #[test]
    fn encoded_words_are_members(k in 1usize..6, msg in elems(&Field::gf(2, 3).unwrap(), 6)) {
        let f = Field::gf(2, 3).unwrap();
        let code = RsCode::new(&f, k).unwrap();
        let lin = code.linear_code();
        let w = lin.encode(&msg[..k]).unwrap();
        prop_assert!(lin.contains(&w));
        prop_assert_eq!(lin.extract_systematic(&lin.encode_systematic(&msg[..k]).unwrap()).unwrap(), msg[..k].to_vec());
    }
}

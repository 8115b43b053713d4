use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use relhom::brute::chain_retraction_exists;
use relhom::complexes::{is_null_homotopic, mapping_cone, ChainMap, Complex, Homotopy};
use relhom::corpus::{parse, serialize, CorpusDocument};
use relhom::ext::{split_check, ShortExact};
use relhom::verifier::sample;
use relhom::zm::Ring;

fn ring(m: u64) -> Ring {
    Ring::new(m).unwrap()
}

fn complex(seed: u64, m: u64, len: usize) -> Complex {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    sample::complex(&mut rng, ring(m), len, 2, (-1, 1))
}

fn pair(seed: u64, m: u64) -> (Complex, Complex, ChainMap) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let x = sample::complex(&mut rng, ring(m), 2, 1, (-1, 1));
    let y = sample::complex(&mut rng, ring(m), 3, 1, (-1, 1));
    let f = sample::chain_map(&mut rng, &x, &y);
    (x, y, f)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn differentials_square_to_zero(seed: u64, m in prop::sample::select(vec![4u64, 6, 8, 9])) {
        let c = complex(seed, m, 4);
        for n in c.lo()..c.hi() {
            prop_assert!(c.diff(n + 1).after(&c.diff(n)).is_zero());
        }
    }

    #[test]
    fn shift_moves_modules_and_composes(seed: u64, s in -3i64..=3) {
        let c = complex(seed, 4, 3);
        let d = c.shift(s);
        for n in c.lo() - 1..=c.hi() + 1 {
            prop_assert_eq!(d.module(n - s), c.module(n));
        }
        prop_assert_eq!(d.shift(-s), c.clone());
        prop_assert!(d.validate().is_ok());
    }

    #[test]
    fn cone_is_a_short_exact_sequence(seed: u64) {
        let (_, _, f) = pair(seed, 4);
        let cone = mapping_cone(&f);
        prop_assert!(cone.cone.validate().is_ok());
        prop_assert!(ShortExact::new(cone.inclusion.clone(), cone.projection.clone()).is_ok());
    }

    #[test]
    fn homotopy_boundaries_are_null_homotopic(seed: u64) {
        let (x, y, _) = pair(seed, 4);
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 1);
        let comps: Vec<_> = (x.lo()..=x.hi())
            .map(|n| (n, sample::morphism(&mut rng, &x.module(n), &y.module(n - 1))))
            .collect();
        let s = Homotopy::new(&x, &y, comps).unwrap();
        let b = s.boundary();
        prop_assert!(ChainMap::new(&x, &y, b.components().iter().map(|(n, m)| (*n, m.clone()))).is_ok());
        prop_assert!(s.witnesses(&b));
        prop_assert!(is_null_homotopic(&b).is_some());
    }

    #[test]
    fn cone_splits_iff_null_homotopic(seed: u64) {
        let (_, _, f) = pair(seed, 4);
        let cone = mapping_cone(&f);
        let seq = ShortExact::new(cone.inclusion.clone(), cone.projection.clone()).unwrap();
        let split = split_check(&seq).is_split();
        let null = is_null_homotopic(&f);
        prop_assert_eq!(split, null.is_some());
        if let Some(s) = null {
            prop_assert!(s.witnesses(&f));
        }
        if let Ok(brute) = chain_retraction_exists(&cone.inclusion, 1 << 14) {
            prop_assert_eq!(brute, split);
        }
    }

    #[test]
    fn corpus_round_trips(seed: u64) {
        let c = complex(seed, 8, 3);
        let mut doc = CorpusDocument::new(c.ring());
        doc.complexes.insert("C".into(), c);
        let text = serialize(&doc);
        prop_assert_eq!(parse(&text).unwrap(), doc);
    }
}

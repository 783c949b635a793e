use proptest::prelude::*;

use recperm::exact::laws::Model;
use recperm::exact::table::pushforward_table;
use recperm::params::{GeneralParams, TwoParam};
use recperm::perm::Permutation;
use recperm::records::extract_records;
use recperm::sample::{sample_general_with, sample_two_param_with, substream};

fn rational() -> impl Strategy<Value = String> {
    (1u32..6, 1u32..4).prop_map(|(p, q)| format!("{p}/{q}"))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn two_param_tables_are_coherent(theta in rational(), zeta in rational(), n in 2usize..6) {
        let model = Model::TwoParam(TwoParam::parse(&theta, &zeta).unwrap());
        let big = pushforward_table(n, &model).unwrap();
        let small = pushforward_table(n - 1, &model).unwrap();
        prop_assert!(big.total() == num_rational::BigRational::from_integer(1.into()));
        prop_assert_eq!(big.restrict(n - 1).unwrap(), small);
    }

    #[test]
    fn general_tables_are_coherent(theta in rational(), zeta in rational(), a in 0u32..4, tail in 0u32..2) {
        let alpha = format!("-1:{a}/4,1:{}/5;tail:{tail}/3", 3 - a.min(3));
        let model = Model::General(GeneralParams::parse(&theta, &zeta, &alpha).unwrap());
        let big = pushforward_table(5, &model).unwrap();
        prop_assert_eq!(big.restrict(4).unwrap(), pushforward_table(4, &model).unwrap());
    }

    #[test]
    fn samples_are_permutations_with_prefix_records(seed in any::<u64>(), n in 1usize..200) {
        let p = TwoParam::parse("3/2", "1/3").unwrap();
        let w = sample_two_param_with(n, &p, &mut substream(seed, 0)).unwrap();
        prop_assert!(Permutation::new(w.as_slice().to_vec()).is_ok());
        let prof = extract_records(&w);
        let mut lo = usize::MAX;
        let mut hi = 0;
        let mut records = 0;
        for &x in w.as_slice() {
            if x < lo || x > hi {
                records += 1;
            }
            lo = lo.min(x);
            hi = hi.max(x);
        }
        prop_assert_eq!(prof.lower_count() + prof.upper_count() + 1, records);
    }

    #[test]
    fn general_sampler_is_seeded(seed in any::<u64>(), n in 1usize..60) {
        let g = GeneralParams::parse("1", "2", "1:1/2;tail:1/4").unwrap();
        let a = sample_general_with(n, &g, substream(seed, 3)).unwrap();
        let b = sample_general_with(n, &g, substream(seed, 3)).unwrap();
        prop_assert_eq!(a, b);
    }
}

mod common;

use proptest::prelude::*;

use ecp::dispatch::{dispatch, Algorithm, Answer, Strategy};
use ecp::{verify_partition, SearchLimits};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn auto_agrees_with_the_oracle(instance in common::arb_instance(1, 11)) {
        let limits = SearchLimits::default();
        let auto = dispatch(&instance, Strategy::Auto, &limits).unwrap();
        let oracle = dispatch(&instance, Strategy::Forced(Algorithm::Oracle), &limits).unwrap();
        prop_assert_ne!(oracle.answer, Answer::Unknown);
        prop_assert_eq!(auto.answer, oracle.answer, "auto used {}", auto.algorithm_tag());
        if let Some(partition) = &auto.certificate {
            prop_assert!(verify_partition(&instance, partition).unwrap().is_valid());
        }
    }

    #[test]
    fn reports_repeat_exactly(instance in common::arb_instance(1, 11)) {
        let limits = SearchLimits::default();
        let mut first = dispatch(&instance, Strategy::Auto, &limits).unwrap();
        let mut second = dispatch(&instance, Strategy::Auto, &limits).unwrap();
        first.millis = 0;
        second.millis = 0;
        prop_assert_eq!(first.to_json(), second.to_json());
    }
}

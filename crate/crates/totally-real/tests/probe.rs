use num_bigint::BigInt;
use num_rational::BigRational;
use totally_real::driver::plan_shards;
use totally_real::search::{enumerate_primitive, merge_dedup};

#[test]
fn probe_counts() {
    for (n, b, want, want_min) in [
        (2usize, "30", 273usize, 5i64),
        (3, "25", 630, 49),
        (5, "17", 674, 14641),
    ] {
        let bound = BigRational::new(
            BigInt::from(b.parse::<i64>().unwrap()),
            BigInt::from(1),
        );
        let units = plan_shards(n, b, 1).unwrap();
        let out = enumerate_primitive(n, &bound, &units[0]).unwrap();
        let merged = merge_dedup(out.records).unwrap();
        println!(
            "n={n} B={b}: tested={} accepted={} merged={}",
            out.counters.tested,
            out.counters.accepted,
            merged.len()
        );
        assert_eq!(merged.len(), want, "degree {n}");
        assert_eq!(merged[0].field_disc, BigInt::from(want_min));
        assert!(merged.iter().all(|r| !r.needs_review));
    }
}

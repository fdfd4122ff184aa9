//! Run orchestration: work units, shard planning, result files, and the
//! subcommand entry points used by the thin binary.
//!
//! A tabulation run is split into work units that partition the seed list
//! for one degree. Units are self-describing (degree, bound, slice, shard
//! identity) so that independently produced result files can be checked
//! for compatibility before merging. All file formats are line-oriented
//! JSON with integers carried as decimal strings, immune to 64-bit
//! overflow and stable across platforms.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;
use serde::{Deserialize, Serialize};

use crate::bounds::BoundTables;
use crate::search;
use crate::{Error, Result};

/// One shard of a per-degree enumeration: a contiguous slice of the
/// canonical seed list, plus a flag for the finitely many exceptional
/// candidates that sit below the general trace bound (injected into
/// exactly one shard so the union over shards is exact).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WorkUnit {
    pub degree: usize,
    /// Root-discriminant bound as an exact decimal string, e.g. "15.5".
    pub bound: String,
    /// Half-open slice [slice_start, slice_end) of the seed list.
    pub slice_start: usize,
    pub slice_end: usize,
    pub shard_id: usize,
    pub shard_count: usize,
    pub includes_exceptional: bool,
}

impl WorkUnit {
    pub fn bound_value(&self) -> Result<BigRational> {
        parse_decimal(&self.bound)
    }
}

/// Parses an exact decimal string ("20", "15.5", "14.613") into a
/// rational. No rounding: "15.5" is exactly 31/2.
pub fn parse_decimal(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let (int_part, frac_part) = match s.split_once('.') {
        Some((a, b)) => (a, b),
        None => (s, ""),
    };
    let digits: String = [int_part, frac_part].concat();
    if digits.is_empty() || !digits.chars().all(|c| c.is_ascii_digit()) {
        return Err(Error::Parse(format!("not a decimal number: {s:?}")));
    }
    let num: BigInt = digits.parse().expect("digit string");
    let den = BigInt::from(10u32).pow(frac_part.len() as u32);
    Ok(BigRational::new(num, den))
}

/// Splits the degree-`n` seed list into `count` balanced contiguous work
/// units. Deterministic: the same arguments always produce the same plan,
/// and the union of the slices is exactly the full seed list.
///
/// Below the proven root-discriminant floor for the degree the seed list
/// is empty and a single trivial unit is returned.
pub fn plan_shards(n: usize, bound: &str, count: usize) -> Result<Vec<WorkUnit>> {
    if count == 0 {
        return Err(Error::contract("shard count must be positive"));
    }
    let b = parse_decimal(bound)?;
    if !(2..=10).contains(&n) {
        return Err(Error::contract("degree must be between 2 and 10"));
    }
    if !b.is_positive() {
        return Err(Error::contract("bound must be positive"));
    }
    let total = if b <= BoundTables::odlyzko_window(n) {
        0
    } else {
        search::seed_pairs(n, &b)?.len()
    };
    let count = count.min(total).max(1);
    let mut units = Vec::with_capacity(count);
    for i in 0..count {
        units.push(WorkUnit {
            degree: n,
            bound: bound.trim().to_string(),
            slice_start: i * total / count,
            slice_end: (i + 1) * total / count,
            shard_id: i,
            shard_count: count,
            includes_exceptional: i == 0,
        });
    }
    Ok(units)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decimal_parsing_is_exact() {
        assert_eq!(
            parse_decimal("15.5").unwrap(),
            BigRational::new(BigInt::from(31), BigInt::from(2))
        );
        assert_eq!(
            parse_decimal("20").unwrap(),
            BigRational::from_integer(BigInt::from(20))
        );
        assert_eq!(
            parse_decimal("14.613").unwrap(),
            BigRational::new(BigInt::from(14613), BigInt::from(1000))
        );
        assert!(parse_decimal("").is_err());
        assert!(parse_decimal("12.3.4").is_err());
        assert!(parse_decimal("-3").is_err());
        assert!(parse_decimal("1e3").is_err());
    }

    #[test]
    fn shard_plans_partition_the_seed_list() {
        let units = plan_shards(3, "25", 4).unwrap();
        assert_eq!(units.len(), 4);
        let full = search::seed_pairs(3, &parse_decimal("25").unwrap()).unwrap();
        assert_eq!(units[0].slice_start, 0);
        assert_eq!(units.last().unwrap().slice_end, full.len());
        for w in units.windows(2) {
            assert_eq!(w[0].slice_end, w[1].slice_start);
        }
        assert!(units[0].includes_exceptional);
        assert!(units[1..].iter().all(|u| !u.includes_exceptional));
    }

    #[test]
    fn shard_plan_below_degree_floor_is_a_single_empty_unit() {
        // the proven quartic root-discriminant floor is 5.067
        let units = plan_shards(4, "5", 8).unwrap();
        assert_eq!(units.len(), 1);
        assert_eq!((units[0].slice_start, units[0].slice_end), (0, 0));
        assert!(units[0].includes_exceptional);
    }
}

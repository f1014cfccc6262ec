//! Parsers for exact rationals and integer ranges on the command line.

use qzeta::arith::{parse_rat, Rat};

/// An exact rational `p/q` or integer; decimals are rejected.
pub fn parse_q(s: &str) -> Result<Rat, String> {
    parse_rat(s).map_err(|e| e.to_string())
}

/// `a..b` or `a..=b` (both inclusive), a single `a`, or a comma list `a,b,c`.
pub fn parse_range(s: &str) -> Result<Vec<u32>, String> {
    let num = |t: &str| t.trim().parse::<u32>().map_err(|_| format!("expected a non-negative integer, got {t:?}"));
    if let Some((lo, hi)) = s.split_once("..") {
        let hi = hi.strip_prefix('=').unwrap_or(hi);
        let (lo, hi) = (num(lo)?, num(hi)?);
        if lo > hi {
            return Err(format!("empty range {s:?}"));
        }
        return Ok((lo..=hi).collect());
    }
    let mut v = s.split(',').map(num).collect::<Result<Vec<_>, _>>()?;
    v.sort_unstable();
    v.dedup();
    Ok(v)
}

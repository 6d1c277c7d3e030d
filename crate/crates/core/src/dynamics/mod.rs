//! Rational self-maps of `P^1` over `Q`: normalization, iteration, critical
//! points, reduction, post-critical finiteness and exceptional points.

mod map;
mod pcf;

pub use map::{
    critical_wronskian, iterate_forms, iterate_map, normalize_map, reduction_bad_primes, BadPrimeClasses,
    BinaryForm, ProjPointQ, RationalMapP1, Wronskian,
};
pub use pcf::{
    forward_image, is_exceptional, pcf_check, Divisor, Exceptionality, HeightBound, PcfStatus, PcfVerdict,
    EXCEPTIONAL_LEVELS,
};

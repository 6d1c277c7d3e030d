use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::{BigInt, BigUint};

use super::{check_prime, vp_int, Valuation};
use crate::error::{Error, Result};
use crate::exactmath::{BigRat, UniPoly};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Segment {
    pub slope: BigRat,
    pub length: usize,
}

/// Lower convex hull of `{(i, v_p(a_i)) : a_i != 0}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NewtonPolygon {
    pub p: BigUint,
    pub vertices: Vec<(usize, i64)>,
    /// Strictly increasing slopes.
    pub segments: Vec<Segment>,
}

impl NewtonPolygon {
    /// Lowest index with a nonzero coefficient, i.e. the number of roots at
    /// zero, which the polygon does not see.
    pub fn zero_roots(&self) -> usize {
        self.vertices[0].0
    }

    pub fn span(&self) -> usize {
        self.segments.iter().map(|s| s.length).sum()
    }

    pub fn render(&self) -> String {
        let v: Vec<String> = self.vertices.iter().map(|(i, v)| format!("({i},{v})")).collect();
        let s: Vec<String> = self.segments.iter().map(|s| format!("slope {} length {}", s.slope, s.length)).collect();
        format!("p = {}\nvertices: {}\nsegments: {}", self.p, v.join(" "), s.join(", "))
    }
}

impl fmt::Display for NewtonPolygon {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

fn cross(o: (usize, i64), a: (usize, i64), b: (usize, i64)) -> i128 {
    let (ox, oy) = (o.0 as i128, o.1 as i128);
    (a.0 as i128 - ox) * (b.1 as i128 - oy) - (a.1 as i128 - oy) * (b.0 as i128 - ox)
}

pub(crate) fn polygon_unchecked(poly: &UniPoly, p: &BigUint) -> NewtonPolygon {
    let mut hull: Vec<(usize, i64)> = Vec::new();
    for (i, c) in poly.coeffs().iter().enumerate() {
        let Valuation::Finite(v) = vp_int(c, p) else { continue };
        while hull.len() >= 2 && cross(hull[hull.len() - 2], hull[hull.len() - 1], (i, v)) <= 0 {
            hull.pop();
        }
        hull.push((i, v));
    }
    let segments = hull
        .windows(2)
        .map(|w| Segment {
            slope: BigRat::new(BigInt::from(w[1].1 - w[0].1), BigInt::from(w[1].0 - w[0].0)),
            length: w[1].0 - w[0].0,
        })
        .collect();
    NewtonPolygon { p: p.clone(), vertices: hull, segments }
}

pub fn newton_polygon(poly: &UniPoly, p: &BigUint) -> Result<NewtonPolygon> {
    check_prime(p)?;
    if poly.is_zero() {
        return Err(Error::InvalidArgument("the zero polynomial has no Newton polygon".into()));
    }
    Ok(polygon_unchecked(poly, p))
}

/// Valuations of the nonzero roots: `-slope` repeated `length` times per
/// segment. Roots at zero are counted by [`NewtonPolygon::zero_roots`].
pub fn root_valuation_multiset(np: &NewtonPolygon) -> Vec<BigRat> {
    np.segments.iter().flat_map(|s| core::iter::repeat_n(-s.slope.clone(), s.length)).collect()
}

/// Whether some root valuation has the form `v/e` with `e` not dividing
/// `v`: such a root cannot lie in a field unramified over `p`, while roots
/// whose valuations are multiples of `1/e` can lie in a field of
/// ramification index `e`.
pub fn integrality_obstruction(np: &NewtonPolygon, e: u32) -> Result<bool> {
    if e < 2 {
        return Err(Error::InvalidArgument("e must be at least 2".into()));
    }
    let e = BigInt::from(e);
    Ok(np.segments.iter().any(|s| !s.slope.is_integer() && (&s.slope * &e).is_integer()))
}

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::poly::{default_names, MultiPoly};
use crate::error::{Error, Result};
use crate::exactmath::UniPoly;
use crate::parse::split_bracketed;

/// A rational map `P^N -> P^N` given by `N+1` forms of a common degree in
/// `N+1` variables.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MapPN {
    coords: Vec<MultiPoly>,
}

impl MapPN {
    pub fn new(coords: Vec<MultiPoly>) -> Result<Self> {
        let n = coords.len();
        if n < 2 {
            return Err(Error::InvalidArgument("a map of projective space needs at least two coordinates".into()));
        }
        if let Some(c) = coords.iter().find(|c| c.nvars() != n) {
            return Err(Error::ArityMismatch { left: n, right: c.nvars() });
        }
        let degs: Vec<u32> = coords.iter().filter_map(MultiPoly::total_degree).collect();
        if degs.is_empty() {
            return Err(Error::InvalidArgument("all coordinates vanish".into()));
        }
        if coords.iter().any(|c| !c.is_homogeneous()) || degs.iter().any(|&d| d != degs[0]) {
            return Err(Error::InvalidArgument("coordinates must be forms of a common degree".into()));
        }
        Ok(MapPN { coords })
    }

    /// Parses `"[f0 : f1 : ...]"` in the default variable names.
    pub fn parse(s: &str) -> Result<Self> {
        let parts = split_bracketed(s).ok_or_else(|| Error::Parse("expected [f0 : f1 : ...]".into()))?;
        let names = default_names(parts.len());
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        let coords = parts.iter().map(|p| MultiPoly::parse(p, &refs)).collect::<Result<Vec<_>>>()?;
        Self::new(coords)
    }

    pub fn identity(n: usize) -> Self {
        MapPN { coords: (0..n).map(|i| MultiPoly::var(n, i)).collect() }
    }

    pub fn coords(&self) -> &[MultiPoly] {
        &self.coords
    }

    /// Number of coordinates, `N + 1`.
    pub fn arity(&self) -> usize {
        self.coords.len()
    }

    pub fn degree(&self) -> u32 {
        self.coords.iter().filter_map(MultiPoly::total_degree).next().unwrap_or(0)
    }

    /// Coordinates composed with the given substitution.
    pub fn apply(&self, point: &[MultiPoly]) -> Result<Vec<MultiPoly>> {
        self.coords.iter().map(|c| c.substitute(point)).collect()
    }

    pub fn iterate(&self, k: usize) -> Result<MapPN> {
        let mut out = self.clone();
        for _ in 1..k {
            out = compose_map(self, &out)?;
        }
        Ok(out)
    }
}

impl fmt::Display for MapPN {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(|c| format!("{c}")).collect();
        write!(f, "[{}]", parts.join(" : "))
    }
}

pub fn jacobian_det(map: &MapPN) -> Result<MultiPoly> {
    let n = map.arity();
    let m: Vec<Vec<MultiPoly>> = map.coords.iter().map(|c| (0..n).map(|j| c.derivative(j)).collect()).collect();
    MultiPoly::determinant(&m)
}

/// `f o g`, with the common integer content and common monomial factor of
/// the coordinates removed.
pub fn compose_map(f: &MapPN, g: &MapPN) -> Result<MapPN> {
    if f.arity() != g.arity() {
        return Err(Error::ArityMismatch { left: f.arity(), right: g.arity() });
    }
    let coords = f.apply(&g.coords)?;
    let content = coords.iter().fold(BigInt::zero(), |acc, c| acc.gcd(&c.content()));
    let nonzero: Vec<&MultiPoly> = coords.iter().filter(|c| !c.is_zero()).collect();
    let mono = nonzero
        .iter()
        .map(|c| c.monomial_content())
        .reduce(|a, b| super::Monomial(a.0.iter().zip(&b.0).map(|(x, y)| *x.min(y)).collect()))
        .expect("some coordinate is nonzero");
    let coords = coords
        .iter()
        .map(|c| {
            if c.is_zero() {
                c.clone()
            } else {
                c.div_scalar_exact(&content).div_monomial(&mono)
            }
        })
        .collect();
    MapPN::new(coords)
}

/// Restricts `map` to the line `{t u + v}` and expresses the image in the
/// same parameter, returning `(num, den)` in lowest terms with positive
/// leading denominator coefficient. Fails unless the line is invariant.
pub fn restrict_to_line(map: &MapPN, u: &[i64], v: &[i64]) -> Result<(UniPoly, UniPoly)> {
    let n = map.arity();
    if u.len() != n || v.len() != n {
        return Err(Error::ArityMismatch { left: n, right: u.len().max(v.len()) });
    }
    let t = MultiPoly::var(1, 0);
    let point: Vec<MultiPoly> = (0..n)
        .map(|i| &t.scale(&BigInt::from(u[i])) + &MultiPoly::constant(1, BigInt::from(v[i])))
        .collect();
    let q: Vec<UniPoly> = map.apply(&point)?.iter().map(|c| c.to_unipoly(0).expect("univariate")).collect();
    let ub: Vec<BigInt> = u.iter().map(|&c| BigInt::from(c)).collect();
    let vb: Vec<BigInt> = v.iter().map(|&c| BigInt::from(c)).collect();
    // The image lies in span(u, v) iff every 3x3 minor of [q; u; v] vanishes.
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let mut normal = vec![BigInt::zero(); n];
                normal[i] = &ub[j] * &vb[k] - &ub[k] * &vb[j];
                normal[j] = &ub[k] * &vb[i] - &ub[i] * &vb[k];
                normal[k] = &ub[i] * &vb[j] - &ub[j] * &vb[i];
                let minor = (0..n).fold(UniPoly::zero(), |acc, c| &acc + &q[c].scale(&normal[c]));
                if !minor.is_zero() {
                    return Err(Error::LineNotInvariant { residual: format!("{} = {}", line_form(&normal), minor) });
                }
            }
        }
    }
    let (i, j) = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .find(|&(i, j)| !(&ub[i] * &vb[j] - &ub[j] * &vb[i]).is_zero())
        .ok_or_else(|| Error::InvalidArgument("u and v do not span a line".into()))?;
    // q = a u + b v, parameter a/b.
    let num = &q[i].scale(&vb[j]) - &q[j].scale(&vb[i]);
    let den = &q[j].scale(&ub[i]) - &q[i].scale(&ub[j]);
    let g = num.gcd(&den);
    let (mut num, mut den) = (num.div_exact(&g).unwrap(), den.div_exact(&g).unwrap());
    if den.lc().is_negative() {
        num = -num;
        den = -den;
    }
    Ok((num, den))
}

/// Normalizes a linear form on `P^2`: primitive, first nonzero coefficient
/// positive.
pub fn normalize_line(l: &[BigInt]) -> Vec<BigInt> {
    let g = l.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if g.is_zero() {
        return l.to_vec();
    }
    let sign = if l.iter().find(|c| !c.is_zero()).is_some_and(|c| c.is_negative()) { -g } else { g };
    l.iter().map(|c| c / &sign).collect()
}

pub fn line_form(l: &[BigInt]) -> MultiPoly {
    let n = l.len();
    (0..n).fold(MultiPoly::zero(n), |acc, i| &acc + &MultiPoly::var(n, i).scale(&l[i]))
}

fn cross(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    vec![
        &a[1] * &b[2] - &a[2] * &b[1],
        &a[2] * &b[0] - &a[0] * &b[2],
        &a[0] * &b[1] - &a[1] * &b[0],
    ]
}

/// Image of the line `l . (x, y, z) = 0` under a map of `P^2`: the linear
/// form of the image if the image is a line, `None` if it is a point or a
/// curve of higher degree.
pub fn image_of_line(map: &MapPN, l: &[BigInt]) -> Result<Option<Vec<BigInt>>> {
    if map.arity() != 3 || l.len() != 3 {
        return Err(Error::InvalidArgument("line images are implemented for maps of P^2".into()));
    }
    let zero = BigInt::zero();
    let candidates = [
        vec![l[1].clone(), -&l[0], zero.clone()],
        vec![l[2].clone(), zero.clone(), -&l[0]],
        vec![zero.clone(), l[2].clone(), -&l[1]],
    ];
    let nonzero: Vec<&Vec<BigInt>> = candidates.iter().filter(|c| c.iter().any(|x| !x.is_zero())).collect();
    let (p, q) = nonzero
        .iter()
        .flat_map(|a| nonzero.iter().map(move |b| (*a, *b)))
        .find(|(a, b)| cross(a, b).iter().any(|x| !x.is_zero()))
        .ok_or_else(|| Error::InvalidArgument("not a line".into()))?;
    let s = MultiPoly::var(2, 0);
    let t = MultiPoly::var(2, 1);
    let point: Vec<MultiPoly> = (0..3).map(|i| &s.scale(&p[i]) + &t.scale(&q[i])).collect();
    let img = map.apply(&point)?;
    let d = map.degree();
    let cols: Vec<Vec<BigInt>> = (0..=d).map(|k| img.iter().map(|c| c.coeff(&[k, d - k])).collect()).collect();
    let normal = cols
        .iter()
        .flat_map(|a| cols.iter().map(move |b| cross(a, b)))
        .find(|c| c.iter().any(|x| !x.is_zero()));
    let Some(normal) = normal else {
        return Ok(None);
    };
    let on_plane = cols.iter().all(|c| (0..3).map(|i| &normal[i] * &c[i]).sum::<BigInt>().is_zero());
    Ok(on_plane.then(|| normalize_line(&normal)))
}

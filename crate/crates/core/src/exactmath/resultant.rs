//! Resultants and discriminants.
//!
//! Convention: `Res(p, q) = lc(p)^deg(q) * prod_{p(a)=0} q(a)`, which is the
//! determinant of the Sylvester matrix with the rows of `p` on top.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::poly::UniPoly;
use crate::error::{Error, Result};

/// Fraction-free determinant by Bareiss elimination with row pivoting.
pub fn bareiss_determinant(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = false;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(i, k);
                    sign = !sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = v / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if sign {
        -det
    } else {
        det
    }
}

/// Sylvester matrix of `p` and `q` taken with formal degrees `m` and `n`.
pub fn sylvester_matrix(p: &UniPoly, m: usize, q: &UniPoly, n: usize) -> Vec<Vec<BigInt>> {
    let size = m + n;
    let mut rows = Vec::with_capacity(size);
    // Columns are x^(size-1), ..., x^0.
    for i in 0..n {
        let mut row = vec![BigInt::zero(); size];
        for k in 0..=m {
            row[i + (m - k)] = p.coeff(k);
        }
        rows.push(row);
    }
    for i in 0..m {
        let mut row = vec![BigInt::zero(); size];
        for k in 0..=n {
            row[i + (n - k)] = q.coeff(k);
        }
        rows.push(row);
    }
    rows
}

/// Resultant as a Bareiss-evaluated Sylvester determinant with the actual
/// degrees.
pub fn resultant_sylvester(p: &UniPoly, q: &UniPoly) -> Result<BigInt> {
    check_nonzero(p, q)?;
    Ok(bareiss_determinant(sylvester_matrix(p, p.deg(), q, q.deg())))
}

fn check_nonzero(p: &UniPoly, q: &UniPoly) -> Result<()> {
    if p.is_zero() || q.is_zero() {
        return Err(Error::InvalidArgument("resultant of a zero polynomial".into()));
    }
    Ok(())
}

fn pow(b: &BigInt, e: usize) -> BigInt {
    num_traits::pow(b.clone(), e)
}

/// Resultant by the subresultant pseudo-remainder sequence.
pub fn resultant_subresultant(p: &UniPoly, q: &UniPoly) -> Result<BigInt> {
    check_nonzero(p, q)?;
    let (mut a, mut b) = (p.clone(), q.clone());
    let mut s = BigInt::one();
    if a.deg() < b.deg() {
        core::mem::swap(&mut a, &mut b);
        if a.deg() % 2 == 1 && b.deg() % 2 == 1 {
            s = -s;
        }
    }
    if b.is_constant() {
        return Ok(s * pow(&b.lc(), a.deg()));
    }
    let ca = a.content();
    let cb = b.content();
    let t = pow(&ca, b.deg()) * pow(&cb, a.deg());
    a = a.div_scalar_exact(&ca);
    b = b.div_scalar_exact(&cb);
    let mut g = BigInt::one();
    let mut h = BigInt::one();
    loop {
        let delta = a.deg() - b.deg();
        if a.deg() % 2 == 1 && b.deg() % 2 == 1 {
            s = -s;
        }
        let (_, r) = a.pseudo_div_rem(&b);
        a = b;
        if r.is_zero() {
            return Ok(BigInt::zero());
        }
        let div = &g * pow(&h, delta);
        b = r.div_scalar_exact(&div);
        g = a.lc();
        // h <- g^delta / h^(delta-1)
        h = if delta == 0 {
            h
        } else {
            pow(&g, delta) / pow(&h, delta - 1)
        };
        if b.is_constant() {
            let da = a.deg();
            let hh = if da == 0 {
                h
            } else {
                pow(&b.lc(), da) / pow(&h, da - 1)
            };
            return Ok(s * t * hh);
        }
    }
}

/// `Res(p, q)`; the subresultant route.
pub fn resultant(p: &UniPoly, q: &UniPoly) -> Result<BigInt> {
    resultant_subresultant(p, q)
}

/// Resultant with formal degrees `m >= deg p` and `n >= deg q`, i.e. the
/// Sylvester determinant of the padded coefficient vectors. This is the
/// resultant of the binary forms of degrees `m` and `n` attached to `p`, `q`.
pub fn resultant_formal(p: &UniPoly, m: usize, q: &UniPoly, n: usize) -> BigInt {
    debug_assert!(p.is_zero() || p.deg() <= m);
    debug_assert!(q.is_zero() || q.deg() <= n);
    if p.is_zero() || q.is_zero() {
        return if m + n == 0 { BigInt::one() } else { BigInt::zero() };
    }
    let (dp, dq) = (p.deg(), q.deg());
    if dp == m {
        // lc(p)^(n-dq) * Res_{m,dq}(p,q)
        let base = if dq == 0 {
            pow(&q.lc(), m)
        } else {
            resultant(p, q).expect("nonzero inputs")
        };
        return pow(&p.lc(), n - dq) * base;
    }
    if dq == n {
        // Res_{m,n}(p,q) = (-1)^(mn) Res_{n,m}(q,p)
        let r = resultant_formal(q, n, p, m);
        return if (m * n) % 2 == 1 { -r } else { r };
    }
    // Both leading coefficients vanish: common root at infinity.
    BigInt::zero()
}

/// `disc(p) = (-1)^(d(d-1)/2) Res(p, p') / lc(p)`.
pub fn discriminant(p: &UniPoly) -> Result<BigInt> {
    disc_with(p, resultant)
}

/// Discriminant through the Sylvester determinant route (independent of
/// the subresultant sequence).
pub fn discriminant_sylvester(p: &UniPoly) -> Result<BigInt> {
    disc_with(p, resultant_sylvester)
}

fn disc_with(p: &UniPoly, res: fn(&UniPoly, &UniPoly) -> Result<BigInt>) -> Result<BigInt> {
    let d = match p.degree() {
        Some(d) if d >= 1 => d,
        _ => {
            return Err(Error::InvalidArgument(
                "discriminant of a constant polynomial".into(),
            ))
        }
    };
    if d == 1 {
        return Ok(BigInt::one());
    }
    let r = res(p, &p.derivative())?;
    let v = r / p.lc();
    Ok(if (d * (d - 1) / 2) % 2 == 1 { -v } else { v })
}

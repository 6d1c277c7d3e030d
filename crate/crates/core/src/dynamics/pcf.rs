use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};

use super::map::{critical_wronskian, iterate_forms, ProjPointQ, RationalMapP1};
use crate::budget::Budgets;
use crate::error::Result;
use crate::exactmath::{bareiss_determinant, resultant_formal, sylvester_matrix, BigRat, UniPoly};

/// Reduced effective divisor on `P^1`: a squarefree primitive polynomial
/// for the finite points and a flag for infinity.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Divisor {
    poly: UniPoly,
    pub infinity: bool,
}

impl Divisor {
    pub fn new(poly: &UniPoly, infinity: bool) -> Self {
        let poly = if poly.is_zero() || poly.is_constant() {
            UniPoly::one()
        } else {
            poly.squarefree_part()
        };
        Divisor { poly, infinity }
    }

    pub fn empty() -> Self {
        Divisor { poly: UniPoly::one(), infinity: false }
    }

    pub fn point(p: &ProjPointQ) -> Self {
        if p.is_infinity() {
            Divisor { poly: UniPoly::one(), infinity: true }
        } else {
            Divisor::new(&UniPoly::vanishing_at(p.a(), p.b()), false)
        }
    }

    pub fn poly(&self) -> &UniPoly {
        &self.poly
    }

    /// Number of points.
    pub fn size(&self) -> usize {
        self.poly.deg() + usize::from(self.infinity)
    }

    pub fn is_empty(&self) -> bool {
        self.size() == 0
    }

    pub fn contains(&self, other: &Divisor) -> bool {
        (!other.infinity || self.infinity) && self.poly.div_exact(&other.poly).is_some()
    }

    pub fn contains_point(&self, p: &ProjPointQ) -> bool {
        if p.is_infinity() {
            self.infinity
        } else {
            self.poly.eval_homogeneous(p.a(), p.b(), self.poly.deg()).is_zero()
        }
    }

    pub fn union(&self, other: &Divisor) -> Divisor {
        let g = self.poly.gcd(&other.poly);
        let l = (&self.poly * &other.poly).div_exact(&g).expect("gcd divides");
        Divisor { poly: l.primitive_part(), infinity: self.infinity || other.infinity }
    }

    /// Points of `self` not in `other`.
    pub fn difference(&self, other: &Divisor) -> Divisor {
        let g = self.poly.gcd(&other.poly);
        let q = self.poly.div_exact(&g).expect("gcd divides");
        Divisor { poly: q.primitive_part(), infinity: self.infinity && !other.infinity }
    }

    /// Rational points, ascending, with infinity last.
    pub fn rational_points(&self) -> Vec<ProjPointQ> {
        let mut pts: Vec<BigRat> = Vec::new();
        let fac = crate::exactmath::factor_poly(&self.poly, &Budgets::default());
        if let Ok(fac) = fac {
            for f in &fac.factors {
                if f.degree() == 1 {
                    pts.push(BigRat::new(-f.poly.coeff(0), f.poly.coeff(1)));
                }
            }
        }
        pts.sort();
        let mut out: Vec<ProjPointQ> = pts.iter().map(ProjPointQ::from_rat).collect();
        if self.infinity {
            out.push(ProjPointQ::infinity());
        }
        out
    }

    /// True when every point is rational.
    pub fn is_rational(&self) -> bool {
        self.rational_points().len() == self.size()
    }
}

impl fmt::Display for Divisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_rational() {
            let pts: Vec<String> = self.rational_points().iter().map(|p| format!("{p}")).collect();
            write!(f, "{{{}}}", pts.join(", "))
        } else {
            write!(f, "{{{} = 0", self.poly)?;
            if self.infinity {
                f.write_str(", inf")?;
            }
            f.write_str("}")
        }
    }
}

/// Interpolates integer values `ys[j] = R(j)`, `j = 0..=m`, to the unique
/// polynomial of degree at most `m` (which must have integer coefficients).
fn interpolate_integer(ys: &[BigInt]) -> UniPoly {
    // Newton divided differences over Q.
    let n = ys.len();
    let mut dd: Vec<BigRat> = ys.iter().map(|y| BigRat::from(y.clone())).collect();
    for k in 1..n {
        for j in (k..n).rev() {
            dd[j] = (&dd[j] - &dd[j - 1]) / BigRat::from(BigInt::from(k));
        }
    }
    // Horner in the Newton basis.
    let mut acc: Vec<BigRat> = vec![dd[n - 1].clone()];
    for j in (0..n - 1).rev() {
        // acc = acc * (x - j) + dd[j]
        let mut next = vec![BigRat::zero(); acc.len() + 1];
        let jj = BigRat::from(BigInt::from(j));
        for (i, c) in acc.iter().enumerate() {
            next[i + 1] += c;
            next[i] -= c * &jj;
        }
        next[0] += &dd[j];
        acc = next;
    }
    UniPoly::new(
        acc.into_iter()
            .map(|c| {
                assert!(c.is_integer(), "interpolated resultant has integer coefficients");
                c.to_integer()
            })
            .collect(),
    )
}

/// The reduced divisor `phi(D)`.
pub fn forward_image(map: &RationalMapP1, dv: &Divisor) -> Divisor {
    let d = map.degree();
    let (f, g) = (&map.f().poly, &map.g().poly);
    let mut out = Divisor::empty();
    let m = dv.poly.deg();
    if m > 0 {
        // R(w) = Res_z(D(z), F(z,1) - w G(z,1)) has degree at most m, with
        // degree exactly the number of roots of D not sent to infinity.
        let ys: Vec<BigInt> = (0..=m)
            .map(|w| {
                let h = f - &g.scale(&BigInt::from(w));
                resultant_formal(&dv.poly, m, &h, d)
            })
            .collect();
        let r = interpolate_integer(&ys);
        let finite = r.deg();
        out = Divisor::new(&r, finite < m);
    }
    if dv.infinity {
        let img = map.evaluate(&ProjPointQ::infinity());
        out = out.union(&Divisor::point(&img));
    }
    out
}

/// Constant in `h(phi(P)) >= d h(P) - log(2 d H)`, where `H` bounds the
/// integer Sylvester cofactors with `A F + B G = Res x^(2d-1)` (and the
/// same for `y`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeightBound {
    pub degree: usize,
    pub cofactor_max: BigUint,
}

impl HeightBound {
    pub fn new(map: &RationalMapP1) -> Self {
        let d = map.degree();
        let s = sylvester_matrix(&map.f().poly, d, &map.g().poly, d);
        // Columns are x^(2d-1), x^(2d-2) y, ..., y^(2d-1); the cofactors of
        // the first and last columns give A, B for the two pure powers.
        let n = 2 * d;
        let mut cofactor_max = BigUint::zero();
        for col in [0, n - 1] {
            for row in 0..n {
                let minor: Vec<Vec<BigInt>> = (0..n)
                    .filter(|&r| r != row)
                    .map(|r| (0..n).filter(|&c| c != col).map(|c| s[r][c].clone()).collect())
                    .collect();
                let m = bareiss_determinant(minor).magnitude().clone();
                if m > cofactor_max {
                    cofactor_max = m;
                }
            }
        }
        HeightBound { degree: d, cofactor_max }
    }

    /// `2 d H`.
    pub fn scale(&self) -> BigUint {
        BigUint::from(2 * self.degree) * &self.cofactor_max
    }

    /// Human-readable form of `B = log(2 d H)/(d - 1) + log 2`.
    pub fn describe(&self) -> String {
        format!("log({})/{} + log(2)", self.scale(), self.degree - 1)
    }

    /// True if some root of the nonzero, nonconstant polynomial `p` provably
    /// has Weil height above `B`. Uses `M(p) >= |a_i| / C(n, i)` and
    /// `max h(root) >= log M(pp(p)) / n`.
    pub fn some_root_exceeds(&self, p: &UniPoly) -> bool {
        let p = p.primitive_part();
        let n = p.deg();
        if n == 0 {
            return false;
        }
        let e = (self.degree - 1) as u32;
        let rhs_base = num_traits::pow(BigInt::from(self.scale()), n) * (BigInt::one() << (n as u32 * e) as usize);
        let mut binom = BigInt::one();
        for i in 0..=n {
            if i > 0 {
                binom = binom * BigInt::from(n + 1 - i) / BigInt::from(i);
            }
            let lhs = num_traits::pow(p.coeff(i).abs(), e as usize);
            let rhs = num_traits::pow(binom.clone(), e as usize) * &rhs_base;
            if lhs > rhs {
                return true;
            }
        }
        false
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PcfStatus {
    Pcf,
    NonPcf,
    Undetermined,
}

impl PcfStatus {
    pub fn as_str(&self) -> &'static str {
        match self {
            PcfStatus::Pcf => "PCF",
            PcfStatus::NonPcf => "NonPCF",
            PcfStatus::Undetermined => "Undetermined",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PcfVerdict {
    pub status: PcfStatus,
    /// Critical points (squarefree Wronskian).
    pub critical: Divisor,
    /// The accumulated postcritical divisor; for `Pcf` it is closed under
    /// the map.
    pub divisor: Divisor,
    /// `Pcf`: level at which the divisor stopped growing. `NonPcf`: level
    /// of the witness. `Undetermined`: last level computed.
    pub level: usize,
    /// For `NonPcf`: a polynomial, all of whose roots lie in the critical
    /// orbits, with a root of height above the bound.
    pub witness: Option<UniPoly>,
    pub bound: HeightBound,
    /// For `Undetermined`: which budget ran out.
    pub exhausted: Option<String>,
}

/// Decides post-critical finiteness where the budgets allow.
///
/// `D_1` is the set of critical values; `D_{n+1} = D_n + phi(D_n)`. The map
/// is PCF once `phi(D_n)` lies in `D_n`. It is not PCF once a newly reached
/// point provably has height above the preperiodicity bound.
/// `coeff_bits_budget` caps the coefficient size of the accumulated divisor.
pub fn pcf_check(map: &RationalMapP1, level_budget: usize, coeff_bits_budget: u64) -> Result<PcfVerdict> {
    let w = critical_wronskian(map)?;
    let critical = Divisor::new(&w.finite_critical_divisor(), w.infinity_critical);
    let bound = HeightBound::new(map);
    let mut dv = forward_image(map, &critical);
    let verdict = |status, dv: Divisor, level, witness, exhausted| PcfVerdict {
        status,
        critical: critical.clone(),
        divisor: dv,
        level,
        witness,
        bound: bound.clone(),
        exhausted,
    };
    if dv.poly.deg() > 0 && bound.some_root_exceeds(&dv.poly) {
        let wit = dv.poly.clone();
        return Ok(verdict(PcfStatus::NonPcf, dv, 1, Some(wit), None));
    }
    for level in 1..=level_budget {
        let img = forward_image(map, &dv);
        if dv.contains(&img) {
            return Ok(verdict(PcfStatus::Pcf, dv, level, None, None));
        }
        if level == level_budget {
            break;
        }
        let new = img.difference(&dv);
        if new.poly.deg() > 0 && bound.some_root_exceeds(&new.poly) {
            let wit = new.poly.clone();
            return Ok(verdict(PcfStatus::NonPcf, dv.union(&new), level + 1, Some(wit), None));
        }
        dv = dv.union(&new);
        if dv.poly.max_coeff_bits() > coeff_bits_budget {
            let why = format!("coefficient size exceeded {coeff_bits_budget} bits");
            return Ok(verdict(PcfStatus::Undetermined, dv, level + 1, None, Some(why)));
        }
    }
    let why = format!("level budget {level_budget} reached");
    Ok(verdict(PcfStatus::Undetermined, dv, level_budget, None, Some(why)))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Exceptionality {
    pub exceptional: bool,
    /// Union of the first three preimage levels.
    pub backward: Divisor,
}

/// Levels of preimages inspected by [`is_exceptional`]. Two levels are not
/// enough: for `1/(z^2+1)` the first two levels above `1` are `{0, inf}`.
pub const EXCEPTIONAL_LEVELS: usize = 3;

/// `alpha` is exceptional iff its backward orbit is finite, which happens
/// iff the first three preimage levels contain at most two points.
pub fn is_exceptional(map: &RationalMapP1, alpha: &ProjPointQ, budget: &Budgets) -> Result<Exceptionality> {
    let mut backward = Divisor::empty();
    for n in 1..=EXCEPTIONAL_LEVELS {
        let (fnn, gn) = iterate_forms(map, n, budget)?;
        let dn = fnn.degree;
        let p = if alpha.is_infinity() {
            gn.poly.clone()
        } else {
            &fnn.poly.scale(alpha.b()) - &gn.poly.scale(alpha.a())
        };
        let at_infinity = p.is_zero() || p.deg() < dn;
        backward = backward.union(&Divisor::new(&p, at_infinity));
    }
    Ok(Exceptionality { exceptional: backward.size() <= 2, backward })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn map(s: &str) -> RationalMapP1 {
        RationalMapP1::parse(s).unwrap()
    }

    fn dv(s: &str, inf: bool) -> Divisor {
        Divisor::new(&s.parse().unwrap(), inf)
    }

    #[test]
    fn forward_images() {
        assert_eq!(forward_image(&map("z^2"), &dv("x-2", false)), dv("x-4", false));
        assert_eq!(forward_image(&map("z^2+1"), &dv("x", false)), dv("x-1", false));
        assert_eq!(forward_image(&map("z^2-2"), &dv("x^2-2", false)), dv("x", false));
        assert_eq!(forward_image(&map("1/z^2"), &dv("x", true)), dv("x", true));
        assert_eq!(forward_image(&map("(z^2+1)/(z-1)"), &dv("x-1", false)), dv("1", true));
    }

    #[test]
    fn height_bound_for_quadratic_polynomial() {
        let b = HeightBound::new(&map("z^2+1"));
        assert_eq!(b.cofactor_max, BigUint::from(1u32));
        assert_eq!(b.describe(), "log(4)/1 + log(2)");
        assert!(!b.some_root_exceeds(&"x-5".parse().unwrap()));
        assert!(b.some_root_exceeds(&"x-26".parse().unwrap()));
        assert!(!b.some_root_exceeds(&"x-8".parse().unwrap()));
        assert!(b.some_root_exceeds(&"x-9".parse().unwrap()));
    }

    #[test]
    fn pcf_examples() {
        let v = pcf_check(&map("z^2"), 10, 4096).unwrap();
        assert_eq!((v.status, v.level), (PcfStatus::Pcf, 1));
        assert_eq!(v.divisor.to_string(), "{0, inf}");
        let v = pcf_check(&map("z^2-2"), 10, 4096).unwrap();
        assert_eq!((v.status, v.level), (PcfStatus::Pcf, 2));
        assert_eq!(v.divisor.to_string(), "{-2, 2, inf}");
        let v = pcf_check(&map("z^2+1"), 10, 4096).unwrap();
        assert_eq!(v.status, PcfStatus::NonPcf);
        assert_eq!(v.witness.unwrap().to_string(), "x-26");
        assert_eq!(v.level, 4);
        let v = pcf_check(&map("z^2+1"), 2, 4096).unwrap();
        assert_eq!(v.status, PcfStatus::Undetermined);
    }

    #[test]
    fn exceptional_points() {
        let b = Budgets::default();
        assert!(is_exceptional(&map("z^2"), &ProjPointQ::from_int(0), &b).unwrap().exceptional);
        assert!(is_exceptional(&map("z^2+1"), &ProjPointQ::infinity(), &b).unwrap().exceptional);
        assert!(!is_exceptional(&map("z^2+1"), &ProjPointQ::from_int(0), &b).unwrap().exceptional);
        assert!(!is_exceptional(&map("1/(z^2+1)"), &ProjPointQ::from_int(1), &b).unwrap().exceptional);
        assert!(is_exceptional(&map("1/z^2"), &ProjPointQ::infinity(), &b).unwrap().exceptional);
    }
}

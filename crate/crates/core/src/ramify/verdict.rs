use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::exactmath::modp::{BigPrime, PolyRing, PrimeField, SmallPrime};
use crate::exactmath::UniPoly;
use crate::padic::newton::polygon_unchecked;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RamStatus {
    Ramified,
    Unramified,
    Unknown,
}

impl RamStatus {
    pub fn as_str(&self) -> &'static str {
        match self {
            RamStatus::Ramified => "ramified",
            RamStatus::Unramified => "unramified",
            RamStatus::Unknown => "unknown",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RamVerdict {
    pub p: BigUint,
    pub status: RamStatus,
    pub evidence: String,
    /// Some repeated factor of the reduction has multiplicity divisible by
    /// `p`. A heuristic, not a proof of wild ramification.
    pub wild_candidate: bool,
}

/// Shifts tried by the polygon and transform certificates.
const SHIFTS: u64 = 16;
const DEEP_SHIFTS: u64 = 4;

/// Decides whether `p` ramifies in the algebra `Q[x]/(poly)`, given a
/// splitting of `poly` into coprime factors. `formal_degree` counts roots
/// at infinity. `poly` must be squarefree.
pub fn prime_verdict(poly: &UniPoly, formal_degree: usize, factors: &[UniPoly], p: &BigUint) -> RamVerdict {
    match p.to_u64() {
        Some(q) if q < 1 << 62 => Verdicter { ring: PolyRing::new(SmallPrime(q)), p }.run(poly, formal_degree, factors),
        _ => Verdicter { ring: PolyRing::new(BigPrime(p.clone())), p }.run(poly, formal_degree, factors),
    }
}

enum FactorOutcome {
    Ramified(String),
    Unramified(String),
    Unknown(String),
}

struct Verdicter<'a, F: PrimeField> {
    ring: PolyRing<F>,
    p: &'a BigUint,
}

/// `a^(n-1) f(x/a)`, monic with root `a * theta`.
fn monic_transform(f: &UniPoly) -> UniPoly {
    let n = f.deg();
    let a = f.lc();
    let mut pw = BigInt::one();
    let mut c = alloc::vec![BigInt::zero(); n + 1];
    for i in (0..n).rev() {
        c[i] = &f.coeff(i) * &pw;
        pw *= &a;
    }
    c[n] = BigInt::one();
    UniPoly::new(c)
}

fn normalized(f: &UniPoly) -> UniPoly {
    let f = f.primitive_part();
    if f.lc().is_negative() {
        -f
    } else {
        f
    }
}

impl<F: PrimeField> Verdicter<'_, F>
where
    F::E: Ord,
{
    fn pattern(&self, poly: &UniPoly, formal_degree: usize) -> (Vec<(usize, u32)>, usize) {
        let r = self.ring.reduce(poly);
        let at_inf = formal_degree - PolyRing::<F>::degree(&r).unwrap_or(0);
        if r.len() <= 1 {
            return (Vec::new(), at_inf);
        }
        let mut pat: Vec<(usize, u32)> =
            self.ring.factor(&r).iter().map(|(g, m)| (g.len() - 1, *m)).collect();
        pat.sort();
        (pat, at_inf)
    }

    fn run(&self, poly: &UniPoly, formal_degree: usize, factors: &[UniPoly]) -> RamVerdict {
        let p = self.p;
        let (pat, at_inf) = self.pattern(poly, formal_degree);
        let mut mults: Vec<u32> = pat.iter().map(|(_, m)| *m).collect();
        mults.push(at_inf as u32);
        let wild_candidate = mults.iter().any(|&m| m >= 2 && (BigUint::from(m) % p).is_zero());
        let mut desc: Vec<String> = pat.iter().map(|(d, m)| format!("{d}^{m}")).collect();
        if at_inf > 0 {
            desc.push(format!("inf^{at_inf}"));
        }
        let head = format!("mod {p}: [{}]", desc.join(" "));
        if mults.iter().all(|&m| m <= 1) {
            return RamVerdict {
                p: p.clone(),
                status: RamStatus::Unramified,
                evidence: format!("{head}; squarefree reduction"),
                wild_candidate,
            };
        }
        let mut notes = Vec::new();
        let mut any_unknown = false;
        for f in factors {
            let outcome = self.factor_outcome(f);
            match outcome {
                FactorOutcome::Ramified(why) => {
                    notes.push(format!("{f}: {why}"));
                    return RamVerdict {
                        p: p.clone(),
                        status: RamStatus::Ramified,
                        evidence: format!("{head}; {}", notes.join("; ")),
                        wild_candidate,
                    };
                }
                FactorOutcome::Unramified(why) => notes.push(format!("{f}: {why}")),
                FactorOutcome::Unknown(why) => {
                    any_unknown = true;
                    notes.push(format!("{f}: {why}"));
                }
            }
        }
        let status = if any_unknown { RamStatus::Unknown } else { RamStatus::Unramified };
        RamVerdict { p: p.clone(), status, evidence: format!("{head}; {}", notes.join("; ")), wild_candidate }
    }

    fn factor_outcome(&self, f: &UniPoly) -> FactorOutcome {
        let n = f.deg();
        if n <= 1 {
            return FactorOutcome::Unramified("rational root".into());
        }
        let (pat, at_inf) = self.pattern(f, n);
        if at_inf <= 1 && pat.iter().all(|(_, m)| *m == 1) {
            return FactorOutcome::Unramified("squarefree reduction".into());
        }
        let base = monic_transform(f);
        if let Some(out) = self.decide_by_dedekind(&base, "x") {
            return out;
        }
        if let Some(why) = self.polygon_certificate(f) {
            return FactorOutcome::Ramified(why);
        }
        let mut candidates = self.transforms(&base);
        if f.lc() != BigInt::one() {
            candidates.extend(self.transforms(f).into_iter().map(|(g, l)| (g, format!("{l} of the original root"))));
        }
        for (g, label) in candidates {
            if let Some(out) = self.decide_by_dedekind(&g, &label) {
                return out;
            }
        }
        FactorOutcome::Unknown("no certificate".into())
    }

    fn decide_by_dedekind(&self, g: &UniPoly, label: &str) -> Option<FactorOutcome> {
        let e = self.dedekind(g)?;
        let generator = if label == "x" { String::from("the monic generator") } else { format!("generator {label}") };
        Some(if e.iter().any(|&m| m >= 2) {
            FactorOutcome::Ramified(format!("Dedekind on {generator}: p does not divide the index, e = {e:?}"))
        } else {
            FactorOutcome::Unramified(format!("Dedekind on {generator}: p does not divide the index, unramified"))
        })
    }

    /// Dedekind's criterion for a monic integer polynomial: the
    /// multiplicities of the irreducible factors mod `p` when `p` does not
    /// divide the index of `Z[x]/(g)`, otherwise `None`.
    fn dedekind(&self, g: &UniPoly) -> Option<Vec<u32>> {
        let ring = &self.ring;
        let gbar = ring.reduce(g);
        let fac = ring.factor(&gbar);
        let rad = fac.iter().fold(ring.one(), |acc, (h, _)| ring.mul(&acc, h));
        let rest = ring.div_rem(&gbar, &rad).0;
        let lifted = &ring.lift(&rad) * &ring.lift(&rest);
        let diff = &lifted - g;
        let pz = BigInt::from(self.p.clone());
        let fq = ring.reduce(&diff.div_scalar_exact(&pz));
        let d = ring.gcd(&ring.gcd(&rad, &rest), &fq);
        (d.len() <= 1).then(|| fac.iter().map(|(_, m)| *m).collect())
    }

    /// A root `theta - c` of non-integral valuation forces ramification.
    fn polygon_certificate(&self, f: &UniPoly) -> Option<String> {
        for c in 0..SHIFTS.min(self.p.to_u64().unwrap_or(u64::MAX)) {
            let g = f.shift(&BigInt::from(c));
            let np = polygon_unchecked(&g, self.p);
            if let Some(s) = np.segments.iter().find(|s| !s.slope.is_integer()) {
                return Some(format!("Newton polygon of f(x+{c}) has slope {}", s.slope));
            }
        }
        None
    }

    /// Monic polynomials for other generators of the same algebra:
    /// `1/theta`, `(theta - c)/p`, `1/(theta - c)` and `(theta - c - p c')/p^2`.
    fn transforms(&self, f: &UniPoly) -> Vec<(UniPoly, String)> {
        let n = f.deg();
        let pz = BigInt::from(self.p.clone());
        let shifts = SHIFTS.min(self.p.to_u64().unwrap_or(u64::MAX));
        let deep = DEEP_SHIFTS.min(shifts);
        let mut out = Vec::new();
        for c in 0..shifts {
            let cz = BigInt::from(c);
            let shifted = f.shift(&cz);
            if !shifted.coeff(0).is_zero() {
                out.push((monic_transform(&normalized(&shifted.reverse(n))), format!("1/(x-{c})")));
            }
            let scaled = shifted.scale_var(&pz);
            out.push((monic_transform(&normalized(&scaled)), format!("(x-{c})/p")));
        }
        for c1 in 0..deep {
            for c2 in 0..deep {
                let shift = BigInt::from(c1) + &pz * BigInt::from(c2);
                let g = f.shift(&shift).scale_var(&(&pz * &pz));
                out.push((monic_transform(&normalized(&g)), format!("(x-{c1}-{c2}p)/p^2")));
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn verdict(poly: &str, p: u32) -> RamVerdict {
        let f: UniPoly = poly.parse().unwrap();
        prime_verdict(&f, f.deg(), core::slice::from_ref(&f), &BigUint::from(p))
    }

    #[test]
    fn quadratic_fields() {
        assert_eq!(verdict("x^2+1", 2).status, RamStatus::Ramified);
        assert_eq!(verdict("x^2-5", 2).status, RamStatus::Unramified);
        assert_eq!(verdict("x^2-5", 5).status, RamStatus::Ramified);
        assert_eq!(verdict("x^2-3", 2).status, RamStatus::Ramified);
        assert_eq!(verdict("x^2-2", 2).status, RamStatus::Ramified);
        assert_eq!(verdict("x^2+3", 3).status, RamStatus::Ramified);
        assert_eq!(verdict("x^2+7", 2).status, RamStatus::Unramified);
        assert_eq!(verdict("x^2+1", 3).status, RamStatus::Unramified);
    }

    #[test]
    fn non_monic_and_wild_flags() {
        // 4x^2 - 5 defines Q(sqrt 5): unramified at 2.
        assert_eq!(verdict("4*x^2-5", 2).status, RamStatus::Unramified);
        let v = verdict("x^4-2", 2);
        assert_eq!(v.status, RamStatus::Ramified);
        assert!(v.wild_candidate);
        assert!(!verdict("x^2-3", 3).wild_candidate);
    }

    #[test]
    fn common_index_divisor_is_unknown() {
        // 2 divides the index of every monogenic order of this cubic field,
        // so no single-generator certificate exists.
        assert_eq!(verdict("x^3-x^2-2*x-8", 2).status, RamStatus::Unknown);
    }
}

//! Sturm-sequence root counting, positive-root isolation and certified
//! refinement over the rationals.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{domain, Error, Result};
use crate::{Rational, RationalPoly};

/// An isolating interval `(lo, hi]` for one distinct real root.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootInterval {
    pub lo: Rational,
    pub hi: Rational,
    /// Multiplicity of the root in the original (not squarefree) polynomial.
    pub multiplicity: u32,
}

impl RootInterval {
    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn contains(&self, x: &Rational) -> bool {
        &self.lo < x && x <= &self.hi
    }
}

/// `1 / 10^12`.
pub fn default_eps() -> Rational {
    Rational::new(BigInt::one(), BigInt::from(10u64.pow(12)))
}

fn sign(r: &Rational) -> i8 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

/// `p / gcd(p, p')`: same distinct roots, all simple.
pub fn squarefree_part(p: &RationalPoly) -> RationalPoly {
    if p.degree().unwrap_or(0) == 0 {
        return p.clone();
    }
    let g = p.gcd(&p.derivative());
    p.div_rem(&g).0
}

/// Yun's squarefree factorisation: pairs `(a_i, i)` with `p = c * prod a_i^i`,
/// constant factors omitted.
pub fn yun_factors(p: &RationalPoly) -> Vec<(RationalPoly, u32)> {
    let mut out = Vec::new();
    if p.degree().unwrap_or(0) == 0 {
        return out;
    }
    let dp = p.derivative();
    let b = p.gcd(&dp);
    let mut c = p.div_rem(&b).0;
    let mut d = &dp.div_rem(&b).0 - &c.derivative();
    let mut i = 1;
    while c.degree().unwrap_or(0) > 0 {
        let a = c.gcd(&d);
        c = c.div_rem(&a).0;
        d = &d.div_rem(&a).0 - &c.derivative();
        if a.degree().unwrap_or(0) > 0 {
            out.push((a, i));
        }
        i += 1;
    }
    out
}

/// Canonical Sturm sequence `p, p', -rem(...)...` of `p`.
pub fn sturm_sequence(p: &RationalPoly) -> Vec<RationalPoly> {
    let mut seq = vec![p.clone()];
    if p.is_zero() {
        return seq;
    }
    let mut next = p.derivative();
    while !next.is_zero() {
        let prev = seq.last().unwrap();
        let (_, r) = prev.div_rem(&next);
        seq.push(next);
        next = -&r;
    }
    seq
}

fn count_variations(signs: impl Iterator<Item = i8>) -> usize {
    let mut last = 0i8;
    let mut n = 0;
    for s in signs.filter(|&s| s != 0) {
        if last != 0 && s != last {
            n += 1;
        }
        last = s;
    }
    n
}

fn variations_at(seq: &[RationalPoly], x: &Rational) -> usize {
    count_variations(seq.iter().map(|q| sign(&q.eval(x))))
}

fn variations_at_pos_inf(seq: &[RationalPoly]) -> usize {
    count_variations(seq.iter().map(|q| sign(&q.leading())))
}

/// Distinct roots of the Sturm sequence's head in `(lo, hi]`.
fn count_in(seq: &[RationalPoly], lo: &Rational, hi: &Rational) -> usize {
    variations_at(seq, lo).saturating_sub(variations_at(seq, hi))
}

/// Number of distinct real roots in `(0, +inf)`.
pub fn sturm_count_positive(p: &RationalPoly) -> Result<usize> {
    if p.is_zero() {
        return domain("root count of the zero polynomial");
    }
    let seq = sturm_sequence(&squarefree_part(p));
    Ok(variations_at(&seq, &Rational::zero()).saturating_sub(variations_at_pos_inf(&seq)))
}

/// Smallest power of two strictly above the Cauchy root bound.
fn positive_root_bound(p: &RationalPoly) -> Rational {
    let lead = p.leading().abs();
    let mut m = Rational::zero();
    for c in &p.coeffs()[..p.coeffs().len() - 1] {
        let v = c.abs() / &lead;
        if v > m {
            m = v;
        }
    }
    let bound = m + Rational::one();
    let mut b = Rational::one();
    while b <= bound {
        b = b * Rational::from_integer(BigInt::from(2));
    }
    b
}

/// One isolating interval per distinct positive root, sorted ascending.
pub fn isolate_positive_roots(p: &RationalPoly) -> Result<Vec<RootInterval>> {
    if p.is_zero() {
        return domain("root isolation of the zero polynomial");
    }
    if p.degree() == Some(0) {
        return Ok(Vec::new());
    }
    let q = squarefree_part(p);
    let seq = sturm_sequence(&q);
    let factors: Vec<(Vec<RationalPoly>, u32)> = yun_factors(p)
        .into_iter()
        .map(|(f, m)| (sturm_sequence(&f), m))
        .collect();

    let two = Rational::from_integer(BigInt::from(2));
    let mut out = Vec::new();
    let mut stack = vec![(Rational::zero(), positive_root_bound(&q))];
    while let Some((lo, hi)) = stack.pop() {
        match count_in(&seq, &lo, &hi) {
            0 => {}
            1 => {
                let multiplicity = factors
                    .iter()
                    .find(|(fs, _)| count_in(fs, &lo, &hi) == 1)
                    .map(|(_, m)| *m)
                    .ok_or_else(|| {
                        Error::Inconsistent("root not attributed to a squarefree factor".into())
                    })?;
                out.push(RootInterval { lo, hi, multiplicity });
            }
            _ => {
                let mid = (&lo + &hi) / &two;
                stack.push((mid.clone(), hi));
                stack.push((lo, mid));
            }
        }
    }
    out.sort_by(|a, b| a.lo.cmp(&b.lo));
    Ok(out)
}

/// `floor(x * 2^bits) / 2^bits`.
fn round_dyadic(x: &Rational, bits: u64) -> Rational {
    let scale = BigInt::one() << bits;
    let scaled = x * Rational::from_integer(scale.clone());
    Rational::new(scaled.numer().div_floor(scaled.denom()), scale)
}

fn bits_for(eps: &Rational) -> u64 {
    // ceil(log2(1/eps)) is bounded by the bit length of denom/numer.
    let inv = eps.recip();
    let q = inv.numer() / inv.denom() + BigInt::one();
    q.bits() + 16
}

/// Refines the root isolated by `iv` to an approximation within `eps`.
///
/// Bisection guarantees progress; a Newton step from the midpoint (rounded to
/// a dyadic grid finer than `eps`) is tried first and accepted only if it
/// falls inside the current bracket. Exact roots hit on the way are returned
/// exactly.
pub fn refine_root(p: &RationalPoly, iv: &RootInterval, eps: &Rational) -> Result<Rational> {
    if p.is_zero() {
        return domain("refinement on the zero polynomial");
    }
    if !eps.is_positive() {
        return domain("refinement tolerance must be positive");
    }
    if iv.lo >= iv.hi {
        return domain("empty root interval");
    }
    // The squarefree part changes sign at every root, whatever its multiplicity.
    let work = squarefree_part(p);
    let dwork = work.derivative();
    let mut lo = iv.lo.clone();
    let mut hi = iv.hi.clone();
    let s_hi = sign(&work.eval(&hi));
    if s_hi == 0 {
        return Ok(hi);
    }
    // A root sitting at `lo` belongs to the neighbouring interval; the sign just
    // to its right is the sign of the derivative there.
    let s_lo = match sign(&work.eval(&lo)) {
        0 => sign(&dwork.eval(&lo)),
        s => s,
    };
    if s_lo == s_hi {
        return Err(Error::Inconsistent(format!(
            "interval ({lo}, {hi}] does not bracket a sign change"
        )));
    }
    let bits = bits_for(eps);
    let two = Rational::from_integer(BigInt::from(2));

    // Splits the bracket at `t`; returns Some(root) if `t` is an exact root.
    let split = |t: Rational, lo: &mut Rational, hi: &mut Rational| -> Option<Rational> {
        let s = sign(&work.eval(&t));
        if s == 0 {
            return Some(t);
        }
        if s == s_lo {
            *lo = t;
        } else {
            *hi = t;
        }
        None
    };

    loop {
        let width = &hi - &lo;
        if &width < eps {
            return Ok((&lo + &hi) / &two);
        }
        let mid = (&lo + &hi) / &two;
        let slope = dwork.eval(&mid);
        if !slope.is_zero() {
            let newton = &mid - work.eval(&mid) / slope;
            if newton > lo && newton <= hi {
                if work.eval(&newton).is_zero() {
                    return Ok(newton);
                }
                let t = round_dyadic(&newton, bits);
                if t > lo && t < hi {
                    if let Some(r) = split(t.clone(), &mut lo, &mut hi) {
                        return Ok(r);
                    }
                    // Probe a small step past the Newton point to catch the root tightly.
                    let step = round_dyadic(&(&width / Rational::from_integer(BigInt::from(64))), bits);
                    if step.is_positive() {
                        let probe = if t == lo { &t + &step } else { &t - &step };
                        if probe > lo && probe < hi {
                            if let Some(r) = split(probe, &mut lo, &mut hi) {
                                return Ok(r);
                            }
                        }
                    }
                }
            }
        }
        let mid = (&lo + &hi) / &two;
        if let Some(r) = split(mid, &mut lo, &mut hi) {
            return Ok(r);
        }
    }
}

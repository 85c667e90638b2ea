//! Exact fractions, the Farey graph, and 2-bridge knot classes.
//!
//! A vertex of the Farey graph is a reduced fraction `p/q` or the point at
//! infinity `1/0`; two vertices `a/b` and `c/d` are joined by an edge when
//! `|ad - bc| = 1`. The *mediant* of an edge is `(a+c)/(b+d)` and every
//! non-integral fraction is the mediant of exactly one edge, whose endpoints
//! are its *parents*. The *depth* of a fraction is 0 on the integers and on
//! `1/0`, and otherwise one more than the smaller parent depth.

use std::cell::RefCell;
use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// A reduced rational number, or the point at infinity represented as `1/0`.
///
/// Invariants: `gcd(|num|, den) = 1`, `den >= 0`, and `den = 0` only for
/// infinity (stored as `1/0`). `0/0` is rejected at construction.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Fraction {
    num: BigInt,
    den: BigInt,
}

impl Fraction {
    /// Builds a fraction, reducing to lowest terms and normalizing the sign
    /// into the numerator. Any `n/0` with `n != 0` normalizes to `1/0`.
    pub fn new(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Result<Self> {
        let (mut num, mut den) = (num.into(), den.into());
        if num.is_zero() && den.is_zero() {
            return Err(Error::Indeterminate);
        }
        if den.is_negative() {
            num = -num;
            den = -den;
        }
        if den.is_zero() {
            return Ok(Self::infinity());
        }
        let g = num.gcd(&den);
        if !g.is_one() {
            num /= &g;
            den /= &g;
        }
        Ok(Fraction { num, den })
    }

    pub fn infinity() -> Self {
        Fraction {
            num: BigInt::one(),
            den: BigInt::zero(),
        }
    }

    pub fn from_integer(n: impl Into<BigInt>) -> Self {
        Fraction {
            num: n.into(),
            den: BigInt::one(),
        }
    }

    /// Internal constructor for pairs already known to be coprime with a
    /// non-negative denominator.
    pub(crate) fn from_coprime(num: BigInt, den: BigInt) -> Self {
        debug_assert!(!den.is_negative());
        debug_assert!(num.gcd(&den).is_one());
        Fraction { num, den }
    }

    pub fn numer(&self) -> &BigInt {
        &self.num
    }

    pub fn denom(&self) -> &BigInt {
        &self.den
    }

    pub fn is_integer(&self) -> bool {
        self.den.is_one()
    }

    pub fn is_infinity(&self) -> bool {
        self.den.is_zero()
    }
}

impl fmt::Display for Fraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl fmt::Debug for Fraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl FromStr for Fraction {
    type Err = Error;

    /// Accepts `p/q` or a bare integer `n` (meaning `n/1`).
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::ParseFraction(s.to_string());
        let t = s.trim();
        match t.split_once('/') {
            Some((p, q)) => {
                let p = BigInt::from_str(p.trim()).map_err(|_| bad())?;
                let q = BigInt::from_str(q.trim()).map_err(|_| bad())?;
                Fraction::new(p, q).map_err(|_| bad())
            }
            None => {
                let n = BigInt::from_str(t).map_err(|_| bad())?;
                Ok(Fraction::from_integer(n))
            }
        }
    }
}

/// The mediant `(a+c)/(b+d)` of a Farey edge `a/b — c/d`.
///
/// The inputs must be Farey-adjacent; the result is automatically reduced
/// and adjacent to both inputs.
pub fn mediant(a: &Fraction, b: &Fraction) -> Result<Fraction> {
    let det = a.numer() * b.denom() - b.numer() * a.denom();
    if !det.abs().is_one() {
        return Err(Error::NotAdjacent(a.to_string(), b.to_string()));
    }
    Ok(Fraction::from_coprime(
        a.numer() + b.numer(),
        a.denom() + b.denom(),
    ))
}

/// The two Farey parents of a non-integral fraction, ordered by denominator
/// (ties, which occur only for `1/2`, broken by numerator).
///
/// Writing `x = p/q`, the parents are `a/b` and `(p-a)/(q-b)` where
/// `bp - aq = 1`, obtained from the extended Euclidean algorithm; their
/// mediant is `x` and they are joined by a Farey edge.
pub fn parents(x: &Fraction) -> Result<(Fraction, Fraction)> {
    if x.is_integer() || x.is_infinity() {
        return Err(Error::NoParents(x.to_string()));
    }
    let p = x.numer();
    let q = x.denom();
    // b1 = p^{-1} (mod q), taken in (0, q).
    let e = p.extended_gcd(q);
    debug_assert!(e.gcd.is_one());
    let b1 = e.x.mod_floor(q);
    let a1 = (&b1 * p - BigInt::one()) / q; // exact: b1*p ≡ 1 (mod q)
    let a2 = p - &a1;
    let b2 = q - &b1;
    let u = Fraction::from_coprime(a1, b1);
    let v = Fraction::from_coprime(a2, b2);
    let swap = match u.denom().cmp(v.denom()) {
        std::cmp::Ordering::Less => false,
        std::cmp::Ordering::Greater => true,
        std::cmp::Ordering::Equal => u.numer() > v.numer(),
    };
    if swap {
        Ok((v, u))
    } else {
        Ok((u, v))
    }
}

thread_local! {
    static DEPTH_MEMO: RefCell<HashMap<Fraction, u64>> = RefCell::new(HashMap::new());
}

/// Depth of a fraction: 0 on `Z ∪ {1/0}`, otherwise one more than the
/// minimum of the two parent depths.
///
/// Memoized per thread, so concurrent callers always agree. The evaluation
/// is iterative because parent chains can have length proportional to the
/// denominator (e.g. `(q-1)/q` descends through every `(k-1)/k`).
pub fn depth_oracle(x: &Fraction) -> u64 {
    fn known(f: &Fraction, memo: &HashMap<Fraction, u64>) -> Option<u64> {
        if f.is_integer() || f.is_infinity() {
            Some(0)
        } else {
            memo.get(f).copied()
        }
    }

    if x.is_integer() || x.is_infinity() {
        return 0;
    }
    DEPTH_MEMO.with(|m| {
        let mut memo = m.borrow_mut();
        let mut stack: Vec<Fraction> = vec![x.clone()];
        while let Some(top) = stack.last() {
            if known(top, &memo).is_some() {
                stack.pop();
                continue;
            }
            let (u, v) = parents(top).expect("non-integral fraction has parents");
            match (known(&u, &memo), known(&v, &memo)) {
                (Some(du), Some(dv)) => {
                    memo.insert(stack.pop().unwrap(), 1 + du.min(dv));
                }
                (ku, kv) => {
                    if ku.is_none() {
                        stack.push(u);
                    }
                    if kv.is_none() {
                        stack.push(v);
                    }
                }
            }
        }
        memo[x]
    })
}

/// A 2-bridge knot class: fractions `p/q` and `p'/q` with
/// `p' ≡ ±p (mod q)` or `p'p ≡ ±1 (mod q)` describe the same knot up to
/// mirror image. The class is keyed by its canonical representative, the
/// smallest even residue among the four; the unknot is the sentinel `0/1`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct KnotClass {
    canonical: Fraction,
}

impl KnotClass {
    pub fn unknot() -> Self {
        KnotClass {
            canonical: Fraction::from_coprime(BigInt::zero(), BigInt::one()),
        }
    }

    pub fn is_unknot(&self) -> bool {
        self.canonical.is_integer()
    }

    pub fn canonical(&self) -> &Fraction {
        &self.canonical
    }

    /// The four residues `{p, -p, p^{-1}, -p^{-1}} (mod q)` that describe
    /// this class, reduced into `(0, q)`. Exactly two of them are even.
    /// Returns the empty vector for the unknot.
    pub fn representatives(&self) -> Vec<Fraction> {
        if self.is_unknot() {
            return Vec::new();
        }
        let q = self.canonical.denom();
        let p = self.canonical.numer();
        let inv = p.extended_gcd(q).x.mod_floor(q);
        let mut reps = vec![p.clone(), q - p, inv.clone(), q - &inv];
        reps.sort();
        reps.dedup();
        reps.into_iter()
            .map(|r| Fraction::from_coprime(r, q.clone()))
            .collect()
    }

    pub fn from_fraction(f: &Fraction) -> Result<Self> {
        if f.is_infinity() {
            return Err(Error::ParseFraction("1/0".into()));
        }
        canonicalize(f.numer().clone(), f.denom().clone())
    }
}

impl fmt::Display for KnotClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.canonical)
    }
}

/// Canonicalizes `p/q` (with `q` odd and `gcd(p,q) = 1`) to its knot class:
/// the representative is the minimum even member of
/// `{p, -p, p^{-1}, -p^{-1}}` reduced mod `q` into `(0, q)`.
///
/// `q = 1` yields the unknot. Even `q` (a 2-bridge link) is rejected.
pub fn canonicalize(p: impl Into<BigInt>, q: impl Into<BigInt>) -> Result<KnotClass> {
    let p = p.into();
    let mut q = q.into();
    if q.is_negative() {
        q = -q;
    }
    if q.is_even() {
        return Err(Error::EvenDenominator(q));
    }
    if !p.gcd(&q).is_one() {
        return Err(Error::NotCoprime(p, q));
    }
    if q.is_one() {
        return Ok(KnotClass::unknot());
    }
    let r = p.mod_floor(&q);
    let inv = r.extended_gcd(&q).x.mod_floor(&q);
    let candidates = [r.clone(), &q - &r, inv.clone(), &q - &inv];
    let canonical_p = candidates
        .into_iter()
        .filter(|c| c.is_even())
        .min()
        .expect("q odd: two of the four residues are even");
    Ok(KnotClass {
        canonical: Fraction::from_coprime(canonical_p, q),
    })
}

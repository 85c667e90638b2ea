//! Continued-fraction vectors and the three expansions of a fraction:
//! the unique all-even expansion, the all-positive expansion, and a
//! shortest expansion found by Farey-parent descent.
//!
//! A vector `[a1, ..., an]` with integer offset `r` denotes
//! `r + 1/(a1 + 1/(a2 + ... + 1/an))`. Evaluation is projective, with
//! values in `Q ∪ {1/0}`, so every vector has a value even when an
//! intermediate tail is zero.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::farey::{parents, Fraction};

/// An integer continued-fraction vector with an integer offset.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CFVector {
    offset: BigInt,
    entries: Vec<BigInt>,
}

impl CFVector {
    pub fn new(offset: impl Into<BigInt>, entries: Vec<BigInt>) -> Self {
        CFVector {
            offset: offset.into(),
            entries,
        }
    }

    pub fn from_entries(entries: Vec<BigInt>) -> Self {
        Self::new(0, entries)
    }

    /// Convenience constructor for small literals.
    pub fn from_i64(offset: i64, entries: &[i64]) -> Self {
        Self::new(offset, entries.iter().map(|&a| BigInt::from(a)).collect())
    }

    pub fn offset(&self) -> &BigInt {
        &self.offset
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Exact projective evaluation; total on all vectors.
    pub fn eval(&self) -> Fraction {
        let (n, d) = eval_tail(&self.entries);
        // value = offset + n/d = (offset*d + n)/d
        normalize_pair(&self.offset * &d + n, d)
    }
}

impl fmt::Display for CFVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.offset.is_zero() {
            write!(f, "{}+", self.offset)?;
        }
        write!(f, "[")?;
        for (i, a) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, "]")
    }
}

/// Evaluates `[a1, ..., an]` (offset 0) as a coprime projective pair
/// `(num, den)`; the pair may be `(±1, 0)` for a tail that reciprocates
/// zero. Coprimality is preserved by every step, so no reduction is needed.
fn eval_tail(entries: &[BigInt]) -> (BigInt, BigInt) {
    let mut num = BigInt::zero();
    let mut den = BigInt::one();
    for a in entries.iter().rev() {
        // 1/(a + num/den) = den/(a*den + num)
        let next_den = a * &den + &num;
        num = den;
        den = next_den;
    }
    (num, den)
}

fn normalize_pair(mut num: BigInt, mut den: BigInt) -> Fraction {
    if den.is_negative() {
        num = -num;
        den = -den;
    }
    if den.is_zero() {
        return Fraction::infinity();
    }
    Fraction::from_coprime(num, den)
}

/// Evaluates an entry slice with offset 0.
pub fn eval_entries(entries: &[BigInt]) -> Fraction {
    let (n, d) = eval_tail(entries);
    normalize_pair(n, d)
}

/// The unique continued fraction of `p/q` (with `0 < p < q`, `p` even,
/// `q` odd) whose entries are all even and nonzero. Its length is even,
/// and half the length is the genus of the knot `K_{p/q}`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct EvenCF {
    entries: Vec<BigInt>,
}

impl EvenCF {
    pub fn entries(&self) -> &[BigInt] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn into_vec(self) -> Vec<BigInt> {
        self.entries
    }

    pub fn to_cf_vector(&self) -> CFVector {
        CFVector::from_entries(self.entries.clone())
    }
}

impl std::ops::Deref for EvenCF {
    type Target = [BigInt];

    fn deref(&self) -> &[BigInt] {
        &self.entries
    }
}

impl TryFrom<Vec<BigInt>> for EvenCF {
    type Error = Error;

    fn try_from(entries: Vec<BigInt>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::EmptyVector);
        }
        if entries.len() % 2 != 0 {
            return Err(Error::ParsingConstraint(
                "an all-even expansion has even length".into(),
            ));
        }
        for a in &entries {
            if a.is_zero() || a.is_odd() {
                return Err(Error::BadEvenEntry(a.clone()));
            }
        }
        Ok(EvenCF { entries })
    }
}

impl fmt::Display for EvenCF {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", CFVector::from_entries(self.entries.clone()))
    }
}

/// Computes the unique all-even expansion of `p/q`.
///
/// Requires `0 < p < q`, `p` even, `q` odd, `gcd(p,q) = 1` — i.e. a
/// canonical-form knot fraction. Each step picks the unique even quotient
/// that leaves a remainder of magnitude less than one; parity of the pair
/// alternates, which forces even length and termination.
pub fn even_cf(x: &Fraction) -> Result<EvenCF> {
    if x.is_infinity() || !x.numer().is_positive() || x.numer() >= x.denom() {
        return Err(Error::OutOfRange(x.to_string()));
    }
    if x.denom().is_even() {
        return Err(Error::EvenDenominator(x.denom().clone()));
    }
    if x.numer().is_odd() {
        return Err(Error::OddNumerator(x.to_string()));
    }
    let mut entries = Vec::new();
    // Current tail value n/d with 0 < |n| < d; the next entry is the even
    // integer a with d/n - a in (-1, 1).
    let mut n = x.numer().clone();
    let mut d = x.denom().clone();
    loop {
        let f = d.div_floor(&n);
        let a = if f.is_even() { f } else { f + 1 };
        let mut next_n = &d - &a * &n;
        let mut next_d = n;
        entries.push(a);
        if next_n.is_zero() {
            break;
        }
        if next_d.is_negative() {
            next_n = -next_n;
            next_d = -next_d;
        }
        n = next_n;
        d = next_d;
    }
    let cf = EvenCF::try_from(entries)?;
    debug_assert_eq!(&eval_entries(&cf.entries), x);
    Ok(cf)
}

/// The unique expansion of `p/q` (with `0 < p < q`) whose entries are all
/// at least 1, with last entry at least 2. Its entry sum is the crossing
/// number of the alternating 4-plat diagram.
pub fn positive_cf(x: &Fraction) -> Result<CFVector> {
    if x.is_infinity() || !x.numer().is_positive() || x.numer() >= x.denom() {
        return Err(Error::OutOfRange(x.to_string()));
    }
    let mut entries = Vec::new();
    let mut n = x.denom().clone();
    let mut d = x.numer().clone();
    loop {
        let (q, r) = n.div_rem(&d);
        entries.push(q);
        if r.is_zero() {
            break;
        }
        n = d;
        d = r;
    }
    debug_assert!(entries
        .last()
        .map(|a| a >= &BigInt::from(2))
        .unwrap_or(false));
    Ok(CFVector::from_entries(entries))
}

/// Removes interior zeros: `(..., x, 0, y, ...)` becomes `(..., x+y, ...)`,
/// repeatedly, including zeros created by earlier collapses. The value of
/// the vector is unchanged. Leading and trailing zeros cannot be removed;
/// the returned flag is true when any remain.
pub fn collapse_zeros(v: &CFVector) -> (CFVector, bool) {
    let mut entries = v.entries().to_vec();
    loop {
        let interior = (1..entries.len().saturating_sub(1)).find(|&i| entries[i].is_zero());
        match interior {
            Some(i) => {
                let merged = &entries[i - 1] + &entries[i + 1];
                entries.splice(i - 1..=i + 1, [merged]);
            }
            None => break,
        }
    }
    let boundary = entries.first().map(|a| a.is_zero()).unwrap_or(false)
        || entries.last().map(|a| a.is_zero()).unwrap_or(false);
    let out = CFVector::new(v.offset().clone(), entries);
    debug_assert_eq!(out.eval(), v.eval());
    (out, boundary)
}

/// True when the entry vector admits a shortening: it contains a zero, a
/// `±1`, or a consecutive run that alternates in sign, starts and ends with
/// magnitude 2, and has only magnitude-3 entries in between (e.g. `(2,-2)`,
/// `(2,-3,2)`, `(-2,3,-3,2)`). The test is about this particular vector,
/// not about whether the fraction has a shorter expansion of another shape.
pub fn is_shortenable(v: &CFVector) -> bool {
    is_shortenable_entries(v.entries())
}

/// Slice form of [`is_shortenable`].
pub fn is_shortenable_entries(entries: &[BigInt]) -> bool {
    let two = BigInt::from(2);
    let three = BigInt::from(3);
    for a in entries {
        if a.is_zero() || a.abs().is_one() {
            return true;
        }
    }
    for start in 0..entries.len() {
        if entries[start].abs() != two {
            continue;
        }
        let mut prev_positive = entries[start].is_positive();
        for a in &entries[start + 1..] {
            if a.is_positive() == prev_positive {
                break; // signs must strictly alternate
            }
            let mag = a.abs();
            if mag == two {
                return true;
            }
            if mag != three {
                break;
            }
            prev_positive = a.is_positive();
        }
    }
    false
}

/// A shortest expansion `r + [a1, ..., an]` of a finite fraction, with
/// `n` equal to the depth of the fraction and every `|ai| >= 2`.
///
/// The expansion is produced by descending to `1/0` through the parent of
/// smaller denominator (finishing through `n/1`, or `k/1` from `(2k+1)/2`),
/// then reading the turning numbers back off the reversed path with the
/// convergent recurrence `P_i = a_i P_{i-1} + P_{i-2}`,
/// `Q_i = a_i Q_{i-1} + Q_{i-2}`. Path vertices carry no sign, so at each
/// step the unique signed representative consistent with both recurrences
/// is selected.
pub fn shortest_cf(x: &Fraction) -> Result<CFVector> {
    if x.is_infinity() {
        return Err(Error::NoParents(x.to_string()));
    }

    // Descend to an integer, then to 1/0.
    let mut down: Vec<Fraction> = vec![x.clone()];
    let mut cur = x.clone();
    let two = BigInt::from(2);
    while !cur.is_integer() {
        if *cur.denom() == two {
            // (2k+1)/2 -> k/1
            let k = (cur.numer() - BigInt::one()) / &two;
            cur = Fraction::from_integer(k);
        } else {
            let (small, _) = parents(&cur)?;
            cur = small;
        }
        down.push(cur.clone());
    }
    down.push(Fraction::infinity());
    down.reverse();
    // down = [1/0, r/1, v_1, ..., v_n = x]

    let offset = down[1].numer().clone();
    let mut entries: Vec<BigInt> = Vec::with_capacity(down.len() - 2);
    let (mut p_prev2, mut q_prev2) = (BigInt::one(), BigInt::zero());
    let (mut p_prev, mut q_prev) = (offset.clone(), BigInt::one());
    for vertex in &down[2..] {
        let mut accepted: Option<(BigInt, BigInt, BigInt)> = None;
        let mut matches = 0;
        for sign in [1i32, -1] {
            let (n, d) = if sign == 1 {
                (vertex.numer().clone(), vertex.denom().clone())
            } else {
                (-vertex.numer(), -vertex.denom())
            };
            let (a, rem) = (&d - &q_prev2).div_rem(&q_prev);
            if !rem.is_zero() {
                continue;
            }
            if n != &a * &p_prev + &p_prev2 {
                continue;
            }
            matches += 1;
            accepted = Some((a, n, d));
        }
        assert_eq!(
            matches, 1,
            "turning-number recovery must match exactly one signed representative"
        );
        let (a, n, d) = accepted.unwrap();
        assert!(
            a.abs() >= two,
            "grandparent-path turning numbers have magnitude at least 2"
        );
        entries.push(a);
        p_prev2 = std::mem::replace(&mut p_prev, n);
        q_prev2 = std::mem::replace(&mut q_prev, d);
    }

    let out = CFVector::new(offset, entries);
    debug_assert_eq!(&out.eval(), x);
    Ok(out)
}

/// Exhaustive test oracle: the least length of any expansion
/// `r + [a1, ..., an]` of `x` with `2 <= |ai| <= max_abs` and
/// `n <= max_len`, over all integer offsets `r`.
///
/// `None` means the search space was exhausted without a hit (the bounds
/// are too small), never a silent wrong answer. The search walks lengths in
/// increasing order; at each position only the one or two integers that
/// keep the remaining tail inside `(-1, 1)` can extend a prefix, so the
/// pruning loses nothing.
pub fn shortest_len_bruteforce(x: &Fraction, max_abs: u64, max_len: usize) -> Option<usize> {
    if x.is_infinity() {
        return None;
    }
    if x.is_integer() {
        return Some(0);
    }
    let floor = x.numer().div_floor(x.denom());
    // x - r lies in (-1, 1) \ {0} only for r = floor(x) or floor(x) + 1.
    let targets: Vec<(BigInt, BigInt)> = [floor.clone(), floor + 1]
        .into_iter()
        .map(|r| (x.numer() - r * x.denom(), x.denom().clone()))
        .collect();
    let max_abs = BigInt::from(max_abs);
    for len in 1..=max_len {
        for (n, d) in &targets {
            if exists_expansion(n, d, len, &max_abs) {
                return Some(len);
            }
        }
    }
    None
}

/// Is there `[a1, ..., am] = n/d` with every `2 <= |ai| <= max_abs`?
/// Precondition: `0 < |n| < d` and `gcd(n, d) = 1`.
fn exists_expansion(n: &BigInt, d: &BigInt, m: usize, max_abs: &BigInt) -> bool {
    let two = BigInt::from(2);
    if m == 1 {
        // a = d/n exactly.
        let (a, rem) = d.div_rem(n);
        return rem.is_zero() && a.abs() >= two && a.abs() <= *max_abs;
    }
    // a must lie in the open unit interval around d/n.
    let f = d.div_floor(n);
    for a in [f.clone(), f + 1] {
        if a.abs() < two || a.abs() > *max_abs {
            continue;
        }
        let rem = d - &a * n;
        // tail value rem/n must be in (-1, 1) \ {0}
        if rem.is_zero() || rem.abs() >= n.abs() {
            continue;
        }
        let (next_n, next_d) = if n.is_negative() {
            (-rem, -n.clone())
        } else {
            (rem, n.clone())
        };
        if exists_expansion(&next_n, &next_d, m - 1, max_abs) {
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::farey::{canonicalize, depth_oracle, KnotClass};
    use proptest::prelude::*;
    use std::collections::HashMap;

    fn frac(p: i64, q: i64) -> Fraction {
        Fraction::new(p, q).unwrap()
    }

    fn cf(entries: &[i64]) -> CFVector {
        CFVector::from_i64(0, entries)
    }

    fn ints(entries: &[i64]) -> Vec<BigInt> {
        entries.iter().map(|&a| BigInt::from(a)).collect()
    }

    #[test]
    fn eval_examples() {
        assert_eq!(cf(&[2, -2, 2]).eval(), frac(3, 4));
        assert_eq!(cf(&[4, -4]).eval(), frac(4, 15));
        assert_eq!(cf(&[]).eval(), frac(0, 1));
        assert_eq!(CFVector::from_i64(7, &[]).eval(), frac(7, 1));
        assert_eq!(
            CFVector::from_i64(1, &[-4, 5, -3, -2]).eval(),
            frac(92, 125)
        );
    }

    #[test]
    fn eval_is_projective() {
        // intermediate tails pass through 1/0 without failing
        assert_eq!(cf(&[2, 0, -2, 0, 2]).eval(), frac(1, 2));
        assert_eq!(cf(&[2, 0, -2]).eval(), Fraction::infinity());
        assert_eq!(cf(&[3, 0, -3]).eval(), Fraction::infinity());
    }

    #[test]
    fn even_cf_examples() {
        assert_eq!(
            even_cf(&frac(10, 23)).unwrap().entries(),
            ints(&[2, 4, -2, 2])
        );
        assert_eq!(
            even_cf(&frac(92, 125)).unwrap().entries(),
            ints(&[2, -2, 2, 4, -4, 2])
        );
        assert_eq!(even_cf(&frac(2, 3)).unwrap().entries(), ints(&[2, -2]));
        assert_eq!(even_cf(&frac(4, 15)).unwrap().entries(), ints(&[4, -4]));
    }

    #[test]
    fn even_cf_rejects_bad_inputs() {
        assert!(matches!(even_cf(&frac(3, 7)), Err(Error::OddNumerator(_))));
        assert!(matches!(
            even_cf(&frac(1, 2)),
            Err(Error::EvenDenominator(_))
        ));
        assert!(matches!(even_cf(&frac(5, 4)), Err(Error::OutOfRange(_))));
        assert!(matches!(even_cf(&frac(7, 1)), Err(Error::OutOfRange(_))));
        assert!(matches!(even_cf(&frac(-2, 5)), Err(Error::OutOfRange(_))));
        assert!(matches!(
            even_cf(&frac(2, 4)),
            Err(Error::EvenDenominator(_))
        ));
    }

    #[test]
    fn positive_cf_examples() {
        assert_eq!(positive_cf(&frac(4, 15)).unwrap(), cf(&[3, 1, 3]));
        assert_eq!(positive_cf(&frac(1, 3)).unwrap(), cf(&[3]));
        assert_eq!(positive_cf(&frac(11, 15)).unwrap(), cf(&[1, 2, 1, 3]));
        assert_eq!(positive_cf(&frac(2, 3)).unwrap(), cf(&[1, 2]));
        assert_eq!(positive_cf(&frac(2, 5)).unwrap(), cf(&[2, 2]));
        assert!(positive_cf(&frac(5, 3)).is_err());
    }

    #[test]
    fn collapse_examples() {
        let (v, boundary) = collapse_zeros(&cf(&[4, 4, 0, 4, 4, 0, 4, 4]));
        assert_eq!(v, cf(&[4, 8, 8, 4]));
        assert!(!boundary);

        let (v, boundary) = collapse_zeros(&cf(&[4, -4]));
        assert_eq!(v, cf(&[4, -4]));
        assert!(!boundary);

        // cascades: (2,0,-2) -> (0), then (0,0,2) -> ...
        let (v, boundary) = collapse_zeros(&cf(&[2, 0, -2, 0, 2]));
        assert_eq!(v, cf(&[2]));
        assert!(!boundary);

        let (v, boundary) = collapse_zeros(&cf(&[0, 4, 0, 4, 0]));
        assert_eq!(v, cf(&[0, 8, 0]));
        assert!(boundary);

        let (v, boundary) = collapse_zeros(&cf(&[2, 0, -2]));
        assert_eq!(v, cf(&[0]));
        assert!(boundary);
    }

    #[test]
    fn shortenable_examples() {
        assert!(is_shortenable(&cf(&[2, -2])));
        assert!(!is_shortenable(&cf(&[4, -4])));
        assert!(is_shortenable(&cf(&[2, -3, 2])));
        assert!(is_shortenable(&cf(&[-2, 3, -3, 2])));
        assert!(is_shortenable(&cf(&[4, 0, 4])));
        assert!(is_shortenable(&cf(&[5, 1, 5])));
        assert!(is_shortenable(&cf(&[5, -1, 5])));
        assert!(!is_shortenable(&cf(&[2, 3, 2]))); // signs do not alternate
        assert!(!is_shortenable(&cf(&[2, -4, 2]))); // interior magnitude 4
        assert!(!is_shortenable(&cf(&[2, -3, 3, 2]))); // alternation breaks at the end
        assert!(is_shortenable(&cf(&[2, -3, 3, -2])));
        assert!(!is_shortenable(&cf(&[3, -3])));
        assert!(!is_shortenable(&cf(&[])));
        // [2,4,-2,2] expands 10/23, which has depth 3: the trailing (-2, 2)
        // is a shortening site.
        assert!(is_shortenable(&cf(&[2, 4, -2, 2])));
    }

    #[test]
    fn shortest_cf_examples() {
        assert_eq!(shortest_cf(&frac(10, 23)).unwrap(), cf(&[2, 3, 3]));
        assert_eq!(shortest_cf(&frac(4, 15)).unwrap(), cf(&[4, -4]));
        assert_eq!(shortest_cf(&frac(1, 2)).unwrap(), cf(&[2]));
        assert_eq!(
            shortest_cf(&frac(92, 125)).unwrap(),
            CFVector::from_i64(1, &[-4, 5, -3, -2])
        );
        assert_eq!(
            shortest_cf(&frac(7, 1)).unwrap(),
            CFVector::from_i64(7, &[])
        );
        assert_eq!(
            shortest_cf(&frac(7, 2)).unwrap(),
            CFVector::from_i64(3, &[2])
        );
        assert!(shortest_cf(&Fraction::infinity()).is_err());
    }

    #[test]
    fn bruteforce_examples() {
        assert_eq!(shortest_len_bruteforce(&frac(10, 23), 6, 8), Some(3));
        assert_eq!(shortest_len_bruteforce(&frac(1, 2), 6, 4), Some(1));
        assert_eq!(shortest_len_bruteforce(&frac(92, 125), 8, 8), Some(4));
        assert_eq!(shortest_len_bruteforce(&frac(5, 1), 6, 4), Some(0));
        assert_eq!(shortest_len_bruteforce(&Fraction::infinity(), 6, 4), None);
        // 1/5 needs the entry 5 at length 1; with entries capped at 3 the
        // least expansion is 1 + [-2, 2, -2, 2].
        assert_eq!(shortest_len_bruteforce(&frac(1, 5), 5, 3), Some(1));
        assert_eq!(shortest_len_bruteforce(&frac(1, 5), 3, 3), None);
        assert_eq!(shortest_len_bruteforce(&frac(1, 5), 3, 6), Some(4));
    }

    /// Naive grid enumeration over all bounded vectors, used to validate
    /// the pruned search on a small box.
    fn naive_min_lengths(max_abs: i64, max_len: usize) -> HashMap<Fraction, usize> {
        fn go(
            prefix: &mut Vec<i64>,
            max_abs: i64,
            max_len: usize,
            out: &mut HashMap<Fraction, usize>,
        ) {
            if !prefix.is_empty() {
                let v = CFVector::from_i64(0, prefix).eval();
                if !v.is_infinity() {
                    out.entry(v).or_insert(prefix.len());
                }
            }
            if prefix.len() == max_len {
                return;
            }
            for a in -max_abs..=max_abs {
                if a.abs() < 2 {
                    continue;
                }
                prefix.push(a);
                go(prefix, max_abs, max_len, out);
                prefix.pop();
            }
        }
        let mut out = HashMap::new();
        // enumerate by increasing length so the first hit is minimal
        for len in 1..=max_len {
            go(&mut Vec::new(), max_abs, len, &mut out);
        }
        out
    }

    #[test]
    fn bruteforce_agrees_with_naive_enumeration() {
        let table = naive_min_lengths(4, 3);
        assert!(!table.is_empty());
        for (value, len) in table {
            // restrict to offset-zero values in (-1,1); the pruned search
            // also scans offsets, which can only find equal-or-shorter
            if value.numer().abs() >= *value.denom() {
                continue;
            }
            let found = shortest_len_bruteforce(&value, 4, 3).unwrap();
            assert!(
                found <= len,
                "pruned search found {found} > naive {len} for {value}"
            );
            if found < len {
                // must be explained by a nonzero offset; re-check at the
                // exact length with a one-off naive scan is overkill, but
                // the length must still match the depth lower bound
                assert!(found >= 1);
            }
        }
    }

    #[test]
    fn bruteforce_equals_depth_for_small_denominators() {
        for q in 2i64..=60 {
            for p in 1..q {
                if num_integer::gcd(p, q) != 1 {
                    continue;
                }
                let x = frac(p, q);
                let d = depth_oracle(&x) as usize;
                assert_eq!(
                    shortest_len_bruteforce(&x, q as u64, 10),
                    Some(d),
                    "bruteforce disagrees with depth at {x}"
                );
            }
        }
    }

    proptest! {
        #[test]
        fn expansions_round_trip(p in 1i64..800, q in 2i64..800) {
            let x = frac(p, q);
            prop_assume!(!x.is_integer());
            if x.numer() < x.denom() {
                prop_assert_eq!(positive_cf(&x).unwrap().eval(), x.clone());
                if x.numer().is_even() && x.denom().is_odd() {
                    let e = even_cf(&x).unwrap();
                    prop_assert_eq!(eval_entries(e.entries()), x.clone());
                }
            }
            let s = shortest_cf(&x).unwrap();
            prop_assert_eq!(s.eval(), x.clone());
            prop_assert_eq!(s.len() as u64, depth_oracle(&x));
            prop_assert!(!is_shortenable(&s));
        }

        #[test]
        fn collapse_preserves_value(entries in proptest::collection::vec(-4i64..=4, 0..10)) {
            let v = CFVector::from_i64(0, &entries);
            let (collapsed, _) = collapse_zeros(&v);
            prop_assert_eq!(collapsed.eval(), v.eval());
            let interior_zero = collapsed.entries().len() >= 3
                && collapsed.entries()[1..collapsed.len() - 1].iter().any(|a| a.is_zero());
            prop_assert!(!interior_zero);
        }

        #[test]
        fn even_vectors_and_their_reversals_share_a_class(
            entries in proptest::collection::vec(
                (1i64..=4, proptest::bool::ANY).prop_map(|(m, neg)| if neg { -2 * m } else { 2 * m }),
                1..=4,
            )
        ) {
            // double the length to stay a knot (odd denominator)
            let doubled: Vec<i64> = entries.iter().chain(entries.iter()).copied().collect();
            let v = cf(&doubled);
            let x = v.eval();
            let reversed: Vec<i64> = doubled.iter().rev().copied().collect();
            let negated: Vec<i64> = doubled.iter().map(|a| -a).collect();
            let class = KnotClass::from_fraction(&x).unwrap();
            prop_assert_eq!(
                KnotClass::from_fraction(&cf(&reversed).eval()).unwrap(),
                class.clone()
            );
            let mirror = cf(&negated).eval();
            prop_assert_eq!(Fraction::new(-mirror.numer(), mirror.denom().clone()).unwrap(), x);
            prop_assert_eq!(KnotClass::from_fraction(&mirror).unwrap(), class);
        }
    }

    #[test]
    fn shortenability_matches_depth_exactly_on_a_bounded_box() {
        // On every vector with entries in {±2, ±3, ±4} and length <= 5,
        // the predicate is an exact test for "longer than the depth of the
        // value", in both directions.
        fn go(prefix: &mut Vec<i64>, visit: &mut impl FnMut(&[i64])) {
            if !prefix.is_empty() {
                visit(prefix);
            }
            if prefix.len() == 5 {
                return;
            }
            for a in [-4, -3, -2, 2, 3, 4] {
                prefix.push(a);
                go(prefix, visit);
                prefix.pop();
            }
        }
        let mut examined = 0u64;
        go(&mut Vec::new(), &mut |v: &[i64]| {
            let vector = CFVector::from_i64(0, v);
            let value = vector.eval();
            if value.is_infinity() {
                return;
            }
            examined += 1;
            let shortest = v.len() as u64 == depth_oracle(&value);
            assert_eq!(
                is_shortenable(&vector),
                !shortest,
                "characterization breaks at {v:?} (value {value})"
            );
        });
        assert!(examined > 9000);
    }

    #[test]
    fn even_cf_matches_class_canonical_form() {
        // the two even representatives of a class have reversed expansions
        let a = even_cf(&frac(10, 23)).unwrap();
        let b = even_cf(&frac(16, 23)).unwrap();
        let reversed: Vec<BigInt> = a.entries().iter().rev().cloned().collect();
        assert_eq!(b.entries(), &reversed[..]);
        assert_eq!(canonicalize(10, 23).unwrap(), canonicalize(16, 23).unwrap());
    }
}

//! Exact arithmetic on extended Hölder exponents in [1, ∞] and on exponent
//! intervals with open/closed endpoint bookkeeping.
//!
//! Exponents are exact rationals plus a distinguished ∞; no floats enter any
//! membership decision. Intervals carry first-class endpoint flags because
//! the integrability set of a power function is genuinely half-open.

use crate::{Error, Result};
use num_rational::Ratio;
use num_traits::{One, Signed, Zero};
use serde::de::{self, Deserializer, MapAccess, Visitor};
use serde::ser::{SerializeStruct, Serializer};
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

pub type Rat = Ratio<i64>;

/// An extended Hölder exponent: an exact rational in [1, ∞) or ∞.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Exponent {
    Finite(Rat),
    Infinity,
}

impl Exponent {
    /// Builds a finite exponent, rejecting values below 1.
    pub fn new(value: Rat) -> Result<Self> {
        if value < Rat::one() {
            return Err(Error::ExponentRange(format!(
                "exponent {value} is below 1"
            )));
        }
        Ok(Exponent::Finite(value))
    }

    pub fn from_int(n: i64) -> Result<Self> {
        Self::new(Rat::from_integer(n))
    }

    /// Convenience constructor from a numerator/denominator pair.
    pub fn ratio(num: i64, den: i64) -> Result<Self> {
        if den == 0 {
            return Err(Error::ExponentRange("zero denominator".into()));
        }
        Self::new(Rat::new(num, den))
    }

    pub const ONE: Exponent = Exponent::Finite(Rat::new_raw(1, 1));
    pub const TWO: Exponent = Exponent::Finite(Rat::new_raw(2, 1));

    pub fn is_infinite(&self) -> bool {
        matches!(self, Exponent::Infinity)
    }

    /// 1/p with the convention 1/∞ = 0. Always lands in [0, 1].
    pub fn recip(&self) -> Rat {
        match self {
            Exponent::Finite(p) => p.recip(),
            Exponent::Infinity => Rat::zero(),
        }
    }

    /// Inverse of [`Exponent::recip`]: 0 maps back to ∞.
    pub fn from_recip(r: Rat) -> Result<Self> {
        if r.is_zero() {
            Ok(Exponent::Infinity)
        } else if r.is_negative() || r > Rat::one() {
            Err(Error::ExponentRange(format!(
                "reciprocal {r} outside [0, 1]"
            )))
        } else {
            Self::new(r.recip())
        }
    }

    pub fn as_f64(&self) -> f64 {
        match self {
            Exponent::Finite(p) => *p.numer() as f64 / *p.denom() as f64,
            Exponent::Infinity => f64::INFINITY,
        }
    }

    pub fn as_rat(&self) -> Option<Rat> {
        match self {
            Exponent::Finite(p) => Some(*p),
            Exponent::Infinity => None,
        }
    }

    /// The Hölder conjugate p' with 1/p + 1/p' = 1 (1 ↔ ∞, 2 ↔ 2).
    pub fn conjugate(&self) -> Exponent {
        match self {
            Exponent::Infinity => Exponent::ONE,
            Exponent::Finite(p) if p.is_one() => Exponent::Infinity,
            Exponent::Finite(p) => Exponent::Finite((Rat::one() - p.recip()).recip()),
        }
    }

    /// p/(p−2), with ∞ at p = 2 and 1 at p = ∞. Rejects p < 2, where the
    /// weight ball is undefined.
    pub fn gamma_exponent(&self) -> Result<Exponent> {
        match self {
            Exponent::Infinity => Ok(Exponent::ONE),
            Exponent::Finite(p) => {
                let two = Rat::from_integer(2);
                match p.cmp(&two) {
                    Ordering::Less => Err(Error::ExponentRange(format!(
                        "gamma exponent undefined for p = {p} < 2"
                    ))),
                    Ordering::Equal => Ok(Exponent::Infinity),
                    Ordering::Greater => Ok(Exponent::Finite(p / (p - two))),
                }
            }
        }
    }

    /// The r with 1/r = 1/p + 1/q, rejecting pairs whose reciprocal sum
    /// exceeds 1 (r would fall below 1).
    pub fn holder_combine(&self, other: &Exponent) -> Result<Exponent> {
        let sum = self.recip() + other.recip();
        if sum > Rat::one() {
            return Err(Error::ExponentArith(format!(
                "1/{self} + 1/{other} exceeds 1"
            )));
        }
        Exponent::from_recip(sum)
    }

    /// Solves 1/p + 1/q = 1/r for q, given p and r (the multiplier exponent
    /// of the operator-norm lemma). Rejects triples with q < 1.
    pub fn holder_solve(p: &Exponent, r: &Exponent) -> Result<Exponent> {
        let diff = r.recip() - p.recip();
        if diff.is_negative() || diff > Rat::one() {
            return Err(Error::ExponentArith(format!(
                "no q >= 1 with 1/{p} + 1/q = 1/{r}"
            )));
        }
        Exponent::from_recip(diff)
    }
}

impl PartialOrd for Exponent {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Exponent {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Exponent::Infinity, Exponent::Infinity) => Ordering::Equal,
            (Exponent::Infinity, _) => Ordering::Greater,
            (_, Exponent::Infinity) => Ordering::Less,
            (Exponent::Finite(a), Exponent::Finite(b)) => a.cmp(b),
        }
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Exponent::Finite(p) => write!(f, "{p}"),
            Exponent::Infinity => write!(f, "inf"),
        }
    }
}

impl FromStr for Exponent {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("inf") || s == "∞" {
            return Ok(Exponent::Infinity);
        }
        if let Some((n, d)) = s.split_once('/') {
            let n: i64 = n
                .trim()
                .parse()
                .map_err(|_| Error::Invalid(format!("bad exponent {s:?}")))?;
            let d: i64 = d
                .trim()
                .parse()
                .map_err(|_| Error::Invalid(format!("bad exponent {s:?}")))?;
            return Exponent::ratio(n, d);
        }
        if let Ok(n) = s.parse::<i64>() {
            return Exponent::from_int(n);
        }
        // decimal form like "2.5"
        if let Some((int, frac)) = s.split_once('.') {
            let digits = frac.len() as u32;
            if digits <= 9 {
                let scale = 10_i64.pow(digits);
                let int: i64 = if int.is_empty() {
                    0
                } else {
                    int.parse()
                        .map_err(|_| Error::Invalid(format!("bad exponent {s:?}")))?
                };
                let frac: i64 = frac
                    .parse()
                    .map_err(|_| Error::Invalid(format!("bad exponent {s:?}")))?;
                return Exponent::new(Rat::new(int * scale + frac, scale));
            }
        }
        Err(Error::Invalid(format!("bad exponent {s:?}")))
    }
}

// Wire format: {"num": i64, "den": i64} or the string "inf".
impl Serialize for Exponent {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Exponent::Infinity => serializer.serialize_str("inf"),
            Exponent::Finite(p) => {
                let mut s = serializer.serialize_struct("Exponent", 2)?;
                s.serialize_field("num", p.numer())?;
                s.serialize_field("den", p.denom())?;
                s.end()
            }
        }
    }
}

impl<'de> Deserialize<'de> for Exponent {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        struct ExpVisitor;

        impl<'de> Visitor<'de> for ExpVisitor {
            type Value = Exponent;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("\"inf\" or {\"num\": int, \"den\": int}")
            }

            fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<Exponent, E> {
                v.parse().map_err(E::custom)
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<Exponent, E> {
                Exponent::from_int(v).map_err(E::custom)
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<Exponent, E> {
                Exponent::from_int(v as i64).map_err(E::custom)
            }

            fn visit_map<A: MapAccess<'de>>(
                self,
                mut map: A,
            ) -> std::result::Result<Exponent, A::Error> {
                let mut num: Option<i64> = None;
                let mut den: Option<i64> = None;
                while let Some(key) = map.next_key::<String>()? {
                    match key.as_str() {
                        "num" => num = Some(map.next_value()?),
                        "den" => den = Some(map.next_value()?),
                        other => return Err(de::Error::unknown_field(other, &["num", "den"])),
                    }
                }
                let num = num.ok_or_else(|| de::Error::missing_field("num"))?;
                let den = den.ok_or_else(|| de::Error::missing_field("den"))?;
                Exponent::ratio(num, den).map_err(de::Error::custom)
            }
        }

        deserializer.deserialize_any(ExpVisitor)
    }
}

/// An order interval of exponents with open/closed endpoints. The empty
/// interval is representable and canonical: (1, 1) with both ends open.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct ExponentInterval {
    lo: Exponent,
    hi: Exponent,
    lo_closed: bool,
    hi_closed: bool,
}

impl ExponentInterval {
    /// Canonicalizing constructor: any void span collapses to [`Self::empty`].
    pub fn new(lo: Exponent, lo_closed: bool, hi: Exponent, hi_closed: bool) -> Self {
        let void = match lo.cmp(&hi) {
            Ordering::Greater => true,
            Ordering::Equal => !(lo_closed && hi_closed),
            Ordering::Less => false,
        };
        if void {
            Self::empty()
        } else {
            ExponentInterval {
                lo,
                hi,
                lo_closed,
                hi_closed,
            }
        }
    }

    pub fn empty() -> Self {
        ExponentInterval {
            lo: Exponent::ONE,
            hi: Exponent::ONE,
            lo_closed: false,
            hi_closed: false,
        }
    }

    /// A single exponent as the degenerate closed interval [q, q].
    pub fn singleton(q: Exponent) -> Self {
        ExponentInterval {
            lo: q,
            hi: q,
            lo_closed: true,
            hi_closed: true,
        }
    }

    /// The whole extended range [1, ∞].
    pub fn full() -> Self {
        ExponentInterval {
            lo: Exponent::ONE,
            hi: Exponent::Infinity,
            lo_closed: true,
            hi_closed: true,
        }
    }

    pub fn is_empty(&self) -> bool {
        *self == Self::empty()
    }

    pub fn lo(&self) -> Exponent {
        self.lo
    }

    pub fn hi(&self) -> Exponent {
        self.hi
    }

    pub fn lo_closed(&self) -> bool {
        self.lo_closed
    }

    pub fn hi_closed(&self) -> bool {
        self.hi_closed
    }

    pub fn contains(&self, q: Exponent) -> bool {
        if self.is_empty() {
            return false;
        }
        let above = match q.cmp(&self.lo) {
            Ordering::Greater => true,
            Ordering::Equal => self.lo_closed,
            Ordering::Less => false,
        };
        let below = match q.cmp(&self.hi) {
            Ordering::Less => true,
            Ordering::Equal => self.hi_closed,
            Ordering::Greater => false,
        };
        above && below
    }

    pub fn intersect(&self, other: &ExponentInterval) -> ExponentInterval {
        if self.is_empty() || other.is_empty() {
            return Self::empty();
        }
        let (lo, lo_closed) = match self.lo.cmp(&other.lo) {
            Ordering::Greater => (self.lo, self.lo_closed),
            Ordering::Less => (other.lo, other.lo_closed),
            Ordering::Equal => (self.lo, self.lo_closed && other.lo_closed),
        };
        let (hi, hi_closed) = match self.hi.cmp(&other.hi) {
            Ordering::Less => (self.hi, self.hi_closed),
            Ordering::Greater => (other.hi, other.hi_closed),
            Ordering::Equal => (self.hi, self.hi_closed && other.hi_closed),
        };
        Self::new(lo, lo_closed, hi, hi_closed)
    }

    /// The reciprocal image {1/q : q ∈ I, q finite} as a rational interval
    /// inside [0, 1]. The point ∞ is dropped, so 0 is always an open
    /// endpoint; this is the quantifier range of the Γ₂ split.
    pub fn recip_finite(&self) -> RatInterval {
        if self.is_empty() {
            return RatInterval::empty();
        }
        // Strip the point ∞ from the span first.
        let (hi, hi_closed) = match self.hi {
            Exponent::Infinity => (Exponent::Infinity, false),
            _ => (self.hi, self.hi_closed),
        };
        if self.lo.is_infinite() {
            // The interval was [∞, ∞]: nothing finite remains.
            return RatInterval::empty();
        }
        let (rlo, rlo_closed) = (hi.recip(), hi_closed);
        let (rhi, rhi_closed) = (self.lo.recip(), self.lo_closed);
        RatInterval::new(rlo, rlo_closed, rhi, rhi_closed)
    }
}

impl fmt::Display for ExponentInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "∅");
        }
        write!(
            f,
            "{}{}, {}{}",
            if self.lo_closed { '[' } else { '(' },
            self.lo,
            self.hi,
            if self.hi_closed { ']' } else { ')' }
        )
    }
}

/// A rational interval with endpoint flags; used for reciprocal images and
/// Minkowski sums. Canonical empty interval: (0, 0).
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct RatInterval {
    lo: Rat,
    hi: Rat,
    lo_closed: bool,
    hi_closed: bool,
}

impl RatInterval {
    pub fn new(lo: Rat, lo_closed: bool, hi: Rat, hi_closed: bool) -> Self {
        let void = match lo.cmp(&hi) {
            Ordering::Greater => true,
            Ordering::Equal => !(lo_closed && hi_closed),
            Ordering::Less => false,
        };
        if void {
            Self::empty()
        } else {
            RatInterval {
                lo,
                hi,
                lo_closed,
                hi_closed,
            }
        }
    }

    pub fn empty() -> Self {
        RatInterval {
            lo: Rat::zero(),
            hi: Rat::zero(),
            lo_closed: false,
            hi_closed: false,
        }
    }

    pub fn is_empty(&self) -> bool {
        *self == Self::empty()
    }

    pub fn contains(&self, t: Rat) -> bool {
        if self.is_empty() {
            return false;
        }
        let above = t > self.lo || (self.lo_closed && t == self.lo);
        let below = t < self.hi || (self.hi_closed && t == self.hi);
        above && below
    }

    pub fn minkowski_add(&self, other: &RatInterval) -> RatInterval {
        if self.is_empty() || other.is_empty() {
            return Self::empty();
        }
        RatInterval {
            lo: self.lo + other.lo,
            hi: self.hi + other.hi,
            lo_closed: self.lo_closed && other.lo_closed,
            hi_closed: self.hi_closed && other.hi_closed,
        }
    }

    /// The reflected interval {c − t : t ∈ self}.
    pub fn reflect_about(&self, c: Rat) -> RatInterval {
        if self.is_empty() {
            return Self::empty();
        }
        RatInterval {
            lo: c - self.hi,
            hi: c - self.lo,
            lo_closed: self.hi_closed,
            hi_closed: self.lo_closed,
        }
    }

    pub fn intersect(&self, other: &RatInterval) -> RatInterval {
        if self.is_empty() || other.is_empty() {
            return Self::empty();
        }
        let (lo, lo_closed) = match self.lo.cmp(&other.lo) {
            Ordering::Greater => (self.lo, self.lo_closed),
            Ordering::Less => (other.lo, other.lo_closed),
            Ordering::Equal => (self.lo, self.lo_closed && other.lo_closed),
        };
        let (hi, hi_closed) = match self.hi.cmp(&other.hi) {
            Ordering::Less => (self.hi, self.hi_closed),
            Ordering::Greater => (other.hi, other.hi_closed),
            Ordering::Equal => (self.hi, self.hi_closed && other.hi_closed),
        };
        Self::new(lo, lo_closed, hi, hi_closed)
    }

    /// Picks an exact rational point of the interval, favouring interior
    /// points so open endpoints are never returned.
    pub fn pick_point(&self) -> Option<Rat> {
        if self.is_empty() {
            return None;
        }
        if self.lo == self.hi {
            return Some(self.lo); // both flags closed by canonicalization
        }
        Some((self.lo + self.hi) / Rat::from_integer(2))
    }
}

/// Decides whether there exist finite r ∈ I, s ∈ J with 1/r + 1/s = 1/p,
/// by Minkowski-summing the reciprocal intervals with exact endpoint
/// bookkeeping. Empty inputs yield `false`.
pub fn reciprocal_sum_contains(
    i: &ExponentInterval,
    j: &ExponentInterval,
    p: &Exponent,
) -> bool {
    let ri = i.recip_finite();
    let rj = j.recip_finite();
    ri.minkowski_add(&rj).contains(p.recip())
}

/// Like [`reciprocal_sum_contains`], but also produces one exact witness
/// pair (r, s) when the split exists.
pub fn reciprocal_split_witness(
    i: &ExponentInterval,
    j: &ExponentInterval,
    p: &Exponent,
) -> Option<(Exponent, Exponent)> {
    let ri = i.recip_finite();
    let rj = j.recip_finite();
    let feasible = ri.intersect(&rj.reflect_about(p.recip()));
    let x = feasible.pick_point()?;
    let y = p.recip() - x;
    // Endpoint bookkeeping guarantees x, y > 0 for any non-empty feasible set:
    // 0 can only occur as an open endpoint of a reciprocal image.
    debug_assert!(x.is_positive() && y.is_positive());
    let r = Exponent::from_recip(x).ok()?;
    let s = Exponent::from_recip(y).ok()?;
    Some((r, s))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> Rat {
        Rat::new(n, d)
    }

    fn fin(n: i64, d: i64) -> Exponent {
        Exponent::ratio(n, d).unwrap()
    }

    #[test]
    fn conjugate_examples() {
        assert_eq!(Exponent::TWO.conjugate(), Exponent::TWO);
        assert_eq!(Exponent::ONE.conjugate(), Exponent::Infinity);
        assert_eq!(Exponent::Infinity.conjugate(), Exponent::ONE);
        // solve 1/q = 1 - 1/4 exactly
        assert_eq!(fin(4, 1).conjugate(), fin(4, 3));
    }

    #[test]
    fn gamma_exponent_examples() {
        assert_eq!(Exponent::TWO.gamma_exponent().unwrap(), Exponent::Infinity);
        assert_eq!(fin(4, 1).gamma_exponent().unwrap(), Exponent::TWO);
        // 3 is the fixed point of x/(x-2)
        assert_eq!(fin(3, 1).gamma_exponent().unwrap(), fin(3, 1));
        assert!(fin(3, 2).gamma_exponent().is_err());
    }

    #[test]
    fn gamma_exponent_is_conjugate_of_half() {
        // p/(p-2) = (p/2)' for p > 2, on a rational grid
        for num in 5..40 {
            for den in 1..6 {
                let p = rat(num, den);
                if p <= rat(2, 1) {
                    continue;
                }
                let gamma = Exponent::Finite(p).gamma_exponent().unwrap();
                let half = Exponent::new(p / rat(2, 1)).unwrap();
                assert_eq!(gamma, half.conjugate(), "p = {p}");
            }
        }
    }

    #[test]
    fn holder_combine_examples() {
        let r = fin(4, 1).holder_combine(&fin(4, 1)).unwrap();
        assert_eq!(r, Exponent::TWO);
        let r = fin(3, 1).holder_combine(&Exponent::Infinity).unwrap();
        assert_eq!(r, fin(3, 1));
        let r = fin(3, 1).holder_combine(&fin(6, 1)).unwrap();
        assert_eq!(r, Exponent::TWO);
        assert!(fin(3, 2).holder_combine(&fin(2, 1)).is_err());
    }

    #[test]
    fn conjugate_is_involutive() {
        for num in 1..30 {
            for den in 1..8 {
                if rat(num, den) < Rat::one() {
                    continue;
                }
                let p = fin(num, den);
                assert_eq!(p.conjugate().conjugate(), p);
                assert_eq!(p.recip() + p.conjugate().recip(), Rat::one());
            }
        }
    }

    #[test]
    fn interval_canonical_empty() {
        let e = ExponentInterval::new(fin(3, 1), true, Exponent::TWO, true);
        assert!(e.is_empty());
        let half_open_point = ExponentInterval::new(Exponent::TWO, true, Exponent::TWO, false);
        assert!(half_open_point.is_empty());
        assert_eq!(e, ExponentInterval::empty());
        assert!(!e.contains(Exponent::TWO));
    }

    #[test]
    fn interval_membership_and_intersection_commute() {
        let i = ExponentInterval::new(Exponent::ONE, true, fin(3, 1), false);
        let j = ExponentInterval::new(Exponent::TWO, false, Exponent::Infinity, true);
        let k = i.intersect(&j);
        let grid: Vec<Exponent> = (7..40)
            .map(|n| fin(n, 7))
            .chain([Exponent::Infinity])
            .collect();
        for q in grid {
            assert_eq!(k.contains(q), i.contains(q) && j.contains(q), "q = {q}");
        }
    }

    #[test]
    fn recip_finite_drops_infinity() {
        let full = ExponentInterval::full();
        let r = full.recip_finite();
        assert!(!r.contains(Rat::zero()));
        assert!(r.contains(Rat::one()));
        assert!(r.contains(rat(1, 100)));

        let point_inf = ExponentInterval::singleton(Exponent::Infinity);
        assert!(point_inf.recip_finite().is_empty());
    }

    /// Dense rational sweep oracle for the reciprocal-sum decision:
    /// enumerate r over a fine grid inside I, solve for s and test s ∈ J.
    fn sweep_oracle(i: &ExponentInterval, j: &ExponentInterval, p: &Exponent) -> bool {
        let target = p.recip();
        let denoms = 1..=64i64;
        for d in denoms {
            // numerators covering [1, 64] with denominator d
            for n in d..=64 * d {
                let r = rat(n, d);
                if r < Rat::one() || !i.contains(Exponent::Finite(r)) {
                    continue;
                }
                let y = target - r.recip();
                if !y.is_positive() {
                    continue;
                }
                let s = y.recip();
                if s >= Rat::one() && j.contains(Exponent::Finite(s)) {
                    return true;
                }
            }
        }
        false
    }

    #[test]
    fn reciprocal_sum_degenerate_pair() {
        let i = ExponentInterval::singleton(Exponent::TWO);
        assert!(reciprocal_sum_contains(&i, &i, &Exponent::ONE));
        let (r, s) = reciprocal_split_witness(&i, &i, &Exponent::ONE).unwrap();
        assert_eq!((r, s), (Exponent::TWO, Exponent::TWO));
    }

    #[test]
    fn reciprocal_sum_agrees_with_sweep_oracle() {
        let cases = [
            // (I, J, p): values frozen from the sweep oracle below.
            (
                ExponentInterval::new(Exponent::ONE, true, fin(3, 1), false),
                ExponentInterval::new(Exponent::ONE, true, fin(3, 1), false),
                Exponent::TWO,
                false, // 1/r + 1/s > 2/3 > 1/2 throughout
            ),
            (
                ExponentInterval::new(fin(10, 1), true, Exponent::Infinity, true),
                ExponentInterval::new(Exponent::ONE, true, fin(3, 1), false),
                Exponent::TWO,
                true, // r = 10, s = 5/2 works
            ),
            (
                ExponentInterval::new(Exponent::ONE, true, fin(8, 1), false),
                ExponentInterval::new(Exponent::ONE, true, fin(8, 1), false),
                Exponent::TWO,
                true, // r = s = 4
            ),
            (
                ExponentInterval::new(fin(5, 2), false, Exponent::Infinity, false),
                ExponentInterval::new(Exponent::ONE, true, fin(5, 2), false),
                Exponent::TWO,
                true, // e.g. r = 20, s = 20/9
            ),
            (
                ExponentInterval::new(fin(5, 2), false, Exponent::Infinity, false),
                ExponentInterval::new(Exponent::ONE, true, fin(5, 4), true),
                Exponent::TWO,
                false, // reciprocal sum lives in (4/5, 7/5), above 1/2
            ),
        ];
        for (i, j, p, expected) in cases {
            assert_eq!(sweep_oracle(&i, &j, &p), expected, "oracle {i} {j} {p}");
            assert_eq!(
                reciprocal_sum_contains(&i, &j, &p),
                expected,
                "decision {i} {j} {p}"
            );
        }
    }

    #[test]
    fn witness_lands_inside_both_intervals() {
        let i = ExponentInterval::new(Exponent::ONE, true, fin(8, 1), false);
        let j = ExponentInterval::new(Exponent::ONE, true, fin(8, 1), false);
        let (r, s) = reciprocal_split_witness(&i, &j, &Exponent::TWO).unwrap();
        assert!(i.contains(r));
        assert!(j.contains(s));
        assert_eq!(r.recip() + s.recip(), Exponent::TWO.recip());
        assert_eq!(r, fin(4, 1));
        assert_eq!(s, fin(4, 1));
    }

    #[test]
    fn serde_wire_format() {
        let p = fin(5, 2);
        let js = serde_json::to_string(&p).unwrap();
        assert_eq!(js, r#"{"num":5,"den":2}"#);
        let back: Exponent = serde_json::from_str(&js).unwrap();
        assert_eq!(back, p);
        let inf: Exponent = serde_json::from_str("\"inf\"").unwrap();
        assert_eq!(inf, Exponent::Infinity);
        let iv = ExponentInterval::new(Exponent::ONE, true, fin(3, 1), false);
        let js = serde_json::to_string(&iv).unwrap();
        let back: ExponentInterval = serde_json::from_str(&js).unwrap();
        assert_eq!(back, iv);
    }
}

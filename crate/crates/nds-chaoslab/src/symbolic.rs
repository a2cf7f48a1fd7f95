//! Eventually periodic binary sequences and the shift-space metric.
//!
//! Points of the shift spaces are binary sequences, one-sided (indices 0, 1,
//! 2, ...) or two-sided (all integers). We restrict to eventually periodic
//! sequences: a finite core flanked by periodic words. That class is closed
//! under both shift directions, contains every construction the crate needs,
//! and makes equality and the metric exactly computable.
//!
//! Representation: `left^inf | core | right^inf`, with `offset` the index of
//! the first core symbol. The left word is anchored so that reading right to
//! left from the core start cycles through it from its end; equivalently
//! `symbol(offset - 1) == left[len-1]`. One-sided sequences have no left word
//! and their core is anchored at index 0.
//!
//! Metric: `d(s, t) = sum_i |s_i - t_i| / 2^(|i|+1)`. One-sided diameter is 1,
//! two-sided is 3/2. [`distance`] returns the nearest double; [`distance_exact`]
//! returns the exact rational via closed-form geometric sums.

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// How far [`distance`] scans before declaring the remaining tail invisible
/// at double precision. Everything beyond index 1075 weighs less than the
/// smallest subnormal, so a cap of 1100 leaves slack. Constructions that
/// truncate an infinite pattern pad their cores past this depth so every
/// in-horizon distance equals the untruncated value.
pub(crate) const SCAN_CAP: i64 = 1100;

/// Once a mismatch is found at depth m, symbols beyond m + 80 cannot move the
/// 53-bit mantissa of the accumulated sum.
const POST_MISMATCH: i64 = 80;

/// An eventually periodic binary sequence, canonicalized on construction.
#[derive(Clone, Debug)]
pub struct SymbolicSeq {
    /// Periodic word extending to -infinity; `None` for one-sided sequences.
    left: Option<Arc<[u8]>>,
    core: Arc<[u8]>,
    /// Periodic word extending to +infinity. Never empty.
    right: Arc<[u8]>,
    /// Index of `core[0]`; also the left/right anchor when the core is empty.
    /// Always 0 for one-sided sequences.
    offset: i64,
}

impl SymbolicSeq {
    /// One-sided sequence `core` followed by `tail` repeated forever.
    pub fn one_sided(core: &[u8], tail: &[u8]) -> Self {
        assert!(!tail.is_empty(), "periodic tail must be nonempty");
        check_binary(core);
        check_binary(tail);
        canonicalize(None, core.to_vec(), tail.to_vec(), 0)
    }

    /// Two-sided sequence: `left` repeated to -infinity, `core` starting at
    /// index `offset`, `right` repeated to +infinity.
    pub fn two_sided(left: &[u8], core: &[u8], right: &[u8], offset: i64) -> Self {
        assert!(!left.is_empty() && !right.is_empty(), "periodic words must be nonempty");
        check_binary(left);
        check_binary(core);
        check_binary(right);
        canonicalize(Some(left.to_vec()), core.to_vec(), right.to_vec(), offset)
    }

    /// The constant sequence of `bit`.
    pub fn constant(bit: u8, two_sided: bool) -> Self {
        if two_sided {
            Self::two_sided(&[bit], &[], &[bit], 0)
        } else {
            Self::one_sided(&[], &[bit])
        }
    }

    pub fn is_two_sided(&self) -> bool {
        self.left.is_some()
    }

    /// Symbol at index `i`. One-sided sequences require `i >= 0`.
    #[inline]
    pub fn symbol_at(&self, i: i64) -> u8 {
        let rel = i - self.offset;
        if rel < 0 {
            match &self.left {
                Some(left) => {
                    let p = left.len() as i64;
                    left[(rel.rem_euclid(p)) as usize]
                }
                None => panic!("one-sided sequence indexed at {i} < 0"),
            }
        } else if (rel as usize) < self.core.len() {
            self.core[rel as usize]
        } else {
            let j = rel as usize - self.core.len();
            self.right[j % self.right.len()]
        }
    }

    /// Index one past the core (start of the right tail).
    fn core_end(&self) -> i64 {
        self.offset + self.core.len() as i64
    }

    /// Forward shift: the new sequence reads `s_1 s_2 ...`.
    pub fn shift_forward(&self) -> Self {
        match &self.left {
            Some(_) => Self { offset: self.offset - 1, ..self.clone() },
            None => {
                if self.core.is_empty() {
                    let mut tail: Vec<u8> = self.right.to_vec();
                    tail.rotate_left(1);
                    // A rotation of a primitive word is primitive; nothing to
                    // absorb into an empty core.
                    Self { left: None, core: self.core.clone(), right: tail.into(), offset: 0 }
                } else {
                    let core: Vec<u8> = self.core[1..].to_vec();
                    // Dropping the head cannot create a new absorption at the
                    // core/tail seam, so the result is already canonical.
                    Self { left: None, core: core.into(), right: self.right.clone(), offset: 0 }
                }
            }
        }
    }

    /// Backward shift, defined only for two-sided sequences.
    pub fn shift_backward(&self) -> Option<Self> {
        self.left.as_ref()?;
        Some(Self { offset: self.offset + 1, ..self.clone() })
    }

    /// Shift by `m` steps (negative = backward). Backward steps on one-sided
    /// sequences return `None`.
    pub fn shift_by(&self, m: i64) -> Option<Self> {
        if self.left.is_some() {
            return Some(Self { offset: self.offset - m, ..self.clone() });
        }
        if m < 0 {
            return None;
        }
        let m = m as usize;
        if m <= self.core.len() {
            let core: Vec<u8> = self.core[m..].to_vec();
            Some(Self { left: None, core: core.into(), right: self.right.clone(), offset: 0 })
        } else {
            // The whole core is consumed; the rest of the shift rotates the tail.
            let mut tail: Vec<u8> = self.right.to_vec();
            let extra = (m - self.core.len()) % tail.len();
            tail.rotate_left(extra);
            Some(Self { left: None, core: Arc::from(&[][..]), right: tail.into(), offset: 0 })
        }
    }

    /// Exposed for samplers and tests: (left period, core length, right period).
    pub fn shape(&self) -> (usize, usize, usize) {
        (self.left.as_ref().map_or(0, |w| w.len()), self.core.len(), self.right.len())
    }
}

fn check_binary(word: &[u8]) {
    assert!(word.iter().all(|&b| b <= 1), "symbols must be 0 or 1");
}

/// Smallest d (dividing len) such that the word is a repetition of its first
/// d symbols. The minimal period of an infinite repetition divides every
/// period, so divisors of the length suffice.
fn primitive_period(word: &[u8]) -> usize {
    let n = word.len();
    for d in 1..=n {
        if n % d == 0 && word.iter().enumerate().all(|(i, &b)| b == word[i % d]) {
            return d;
        }
    }
    n
}

fn canonicalize(left: Option<Vec<u8>>, core: Vec<u8>, right: Vec<u8>, offset: i64) -> SymbolicSeq {
    let mut right = {
        let p = primitive_period(&right);
        right[..p].to_vec()
    };
    let mut left = left.map(|w| {
        let p = primitive_period(&w);
        w[..p].to_vec()
    });
    let mut offset = offset;

    // Absorb core symbols into the right tail. Removing the core's last
    // symbol c is sound when c equals the tail's current last symbol: the
    // tail regenerates it when rotated right by one.
    let mut hi = core.len();
    let mut lo = 0usize;
    {
        let p = right.len();
        let mut k = 0usize;
        while hi > lo && core[hi - 1] == right[(p - 1 - (k % p)) % p] {
            hi -= 1;
            k += 1;
        }
        right.rotate_right(k % p);
    }
    // Symmetrically absorb into the left tail (two-sided only).
    if let Some(w) = left.as_mut() {
        let p = w.len();
        let mut r = 0usize;
        while lo < hi && core[lo] == w[r % p] {
            lo += 1;
            r += 1;
            offset += 1;
        }
        w.rotate_left(r % p);
    }

    let core = core[lo..hi].to_vec();
    let offset = if left.is_some() { offset } else { 0 };
    SymbolicSeq {
        left: left.map(Into::into),
        core: core.into(),
        right: right.into(),
        offset,
    }
}

fn lcm(a: usize, b: usize) -> usize {
    fn gcd(mut a: usize, mut b: usize) -> usize {
        while b != 0 {
            (a, b) = (b, a % b);
        }
        a
    }
    a / gcd(a, b) * b
}

impl PartialEq for SymbolicSeq {
    /// Decides true equality of the sequences, not of representations.
    /// Two sequences that are periodic below some index with periods p and q
    /// agree everywhere below it iff they agree on lcm(p, q) consecutive
    /// indices there; likewise above. So comparing a finite window around the
    /// cores decides equality.
    fn eq(&self, other: &Self) -> bool {
        if self.is_two_sided() != other.is_two_sided() {
            return false;
        }
        // Fast path: identical words and alignment.
        if self.offset == other.offset
            && Arc::ptr_eq(&self.core, &other.core)
            && Arc::ptr_eq(&self.right, &other.right)
            && match (&self.left, &other.left) {
                (Some(a), Some(b)) => Arc::ptr_eq(a, b),
                (None, None) => true,
                _ => false,
            }
        {
            return true;
        }
        let hi = self.core_end().max(other.core_end())
            + lcm(self.right.len(), other.right.len()) as i64;
        let lo = match (&self.left, &other.left) {
            (Some(a), Some(b)) => {
                self.offset.min(other.offset) - lcm(a.len(), b.len()) as i64
            }
            _ => 0,
        };
        (lo..hi).all(|i| self.symbol_at(i) == other.symbol_at(i))
    }
}

impl Eq for SymbolicSeq {}

/// Distance between two sequences of the same sidedness, as the nearest
/// double. Scans outward from the origin and stops once further symbols
/// cannot affect the mantissa; sequences agreeing through depth [`SCAN_CAP`]
/// are closer than the smallest subnormal and the result is 0.
pub fn distance(a: &SymbolicSeq, b: &SymbolicSeq) -> f64 {
    assert_eq!(a.is_two_sided(), b.is_two_sided(), "mixed shift kinds");
    let mut weight = 0.5f64;
    let mut first: Option<i64> = None;
    if a.is_two_sided() {
        // Accumulate each side separately: interleaving them into one sum
        // stalls a couple of ulps short once increments drop below the ulp
        // of the running total (e.g. the diameter pair would come out just
        // under 3/2). Per-side sums round cleanly, as in the one-sided case.
        let mut pos = 0.0f64;
        let mut neg = 0.0f64;
        for r in 0..=SCAN_CAP {
            if let Some(m) = first {
                if r > m + POST_MISMATCH {
                    break;
                }
            }
            let mut hit = false;
            if a.symbol_at(r) != b.symbol_at(r) {
                pos += weight;
                hit = true;
            }
            if r > 0 && a.symbol_at(-r) != b.symbol_at(-r) {
                neg += weight;
                hit = true;
            }
            if hit && first.is_none() {
                first = Some(r);
            }
            weight *= 0.5;
        }
        pos + neg
    } else {
        let mut sum = 0.0f64;
        for i in 0..=SCAN_CAP {
            if let Some(m) = first {
                if i > m + POST_MISMATCH {
                    break;
                }
            }
            if a.symbol_at(i) != b.symbol_at(i) {
                sum += weight;
                if first.is_none() {
                    first = Some(i);
                }
            }
            weight *= 0.5;
        }
        sum
    }
}

/// Exact distance as a rational, via geometric closed forms on the periodic
/// tails and direct summation over the finite middle.
pub fn distance_exact(a: &SymbolicSeq, b: &SymbolicSeq) -> BigRational {
    assert_eq!(a.is_two_sided(), b.is_two_sided(), "mixed shift kinds");
    let two = BigInt::from(2);

    // Forward side: indices 0 <= i < h explicit, then period pr.
    let h = a.core_end().max(b.core_end()).max(0);
    let pr = lcm(a.right.len(), b.right.len());
    let mut total = bits_value(
        (0..h).map(|i| a.symbol_at(i) != b.symbol_at(i)),
        // sum of e_i * 2^(h-1-i), denominator 2^h
    )
    .map(|v| BigRational::new(v, two.pow(h as u32)))
    .unwrap_or_else(BigRational::zero);

    let tail_num = bits_value((0..pr).map(|j| a.symbol_at(h + j as i64) != b.symbol_at(h + j as i64)));
    if let Some(v) = tail_num {
        // sum_{j>=0} e_{h+j} 2^-(h+j+1) = V / (2^h (2^pr - 1))
        let den = two.pow(h as u32) * (two.pow(pr as u32) - BigInt::one());
        total += BigRational::new(v, den);
    }

    if a.is_two_sided() {
        let lo = a.offset.min(b.offset).min(0);
        let m = (-lo) as usize; // indices -1 .. -m explicit
        let pl = lcm(
            a.left.as_ref().expect("two-sided").len(),
            b.left.as_ref().expect("two-sided").len(),
        );
        // weight at -k is 2^-(k+1): explicit part V / 2^(m+1)
        let neg = bits_value((1..=m).map(|k| a.symbol_at(-(k as i64)) != b.symbol_at(-(k as i64))));
        if let Some(v) = neg {
            total += BigRational::new(v, two.pow(m as u32 + 1));
        }
        let lt = bits_value(
            (0..pl).map(|j| a.symbol_at(lo - 1 - j as i64) != b.symbol_at(lo - 1 - j as i64)),
        );
        if let Some(v) = lt {
            // positions lo-1-j carry weight 2^-(m+1+j+1); closed form:
            // V / (2^(m+1) (2^pl - 1))
            let den = two.pow(m as u32 + 1) * (two.pow(pl as u32) - BigInt::one());
            total += BigRational::new(v, den);
        }
    }
    total
}

/// Reads a mismatch-indicator stream as a big-endian binary integer.
/// Returns `None` when every bit is zero (avoids building zero BigInts).
fn bits_value(bits: impl Iterator<Item = bool>) -> Option<BigInt> {
    let bytes: Vec<u8> = bits.map(u8::from).collect();
    if bytes.iter().all(|&b| b == 0) {
        return None;
    }
    Some(BigInt::from(num_bigint::BigUint::from_radix_be(&bytes, 2).expect("binary digits")))
}

/// Exact diameter of the shift space: 1 one-sided, 3/2 two-sided.
pub fn diameter_exact(two_sided: bool) -> BigRational {
    if two_sided {
        BigRational::new(BigInt::from(3), BigInt::from(2))
    } else {
        BigRational::one()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;

    #[test]
    fn canonical_form_reduces_periods_and_trims() {
        let s = SymbolicSeq::one_sided(&[0, 1, 0], &[1, 0, 1, 0]);
        // 010 (1010)^inf is (01)^inf: everything absorbs into the tail.
        let t = SymbolicSeq::one_sided(&[0], &[1, 0]);
        assert_eq!(s, t, "period reduction and trimming must agree");
        assert_eq!(s.shape(), (0, 0, 2));
    }

    #[test]
    fn trimming_rotates_the_tail_correctly() {
        // core 10, tail (10)^inf: whole thing is (10)^inf.
        let s = SymbolicSeq::one_sided(&[1, 0], &[1, 0]);
        assert_eq!(s.shape().1, 0, "core should fully absorb");
        for i in 0..8 {
            assert_eq!(s.symbol_at(i), if i % 2 == 0 { 1 } else { 0 });
        }
    }

    #[test]
    fn two_sided_left_absorption() {
        // ...0101 | 01 core | (1)^inf  collapses core into the left word.
        let s = SymbolicSeq::two_sided(&[0, 1], &[0, 1], &[1], 0);
        let t = SymbolicSeq::two_sided(&[0, 1], &[], &[1], 2);
        assert_eq!(s, t);
    }

    #[test]
    fn shifts_are_inverse_on_two_sided() {
        let s = SymbolicSeq::two_sided(&[0], &[1, 1, 0, 1], &[0, 1], 3);
        let back = s.shift_forward().shift_backward().unwrap();
        assert_eq!(s, back);
        let fwd = s.shift_backward().unwrap().shift_forward();
        assert_eq!(s, fwd);
        assert_eq!(s.shift_by(5).unwrap().shift_by(-5).unwrap(), s);
    }

    #[test]
    fn one_sided_shift_drops_head() {
        let s = SymbolicSeq::one_sided(&[1, 0, 0], &[0, 1]);
        let t = s.shift_forward();
        for i in 0..12 {
            assert_eq!(t.symbol_at(i), s.symbol_at(i + 1));
        }
        assert!(s.shift_by(-1).is_none(), "one-sided has no backward shift");
        let far = s.shift_by(7).unwrap();
        for i in 0..12 {
            assert_eq!(far.symbol_at(i), s.symbol_at(i + 7));
        }
    }

    #[test]
    fn equality_sees_through_representation() {
        // (01)^inf written with different alignments and cores.
        let a = SymbolicSeq::one_sided(&[0, 1, 0, 1], &[0, 1]);
        let b = SymbolicSeq::one_sided(&[], &[0, 1]);
        assert_eq!(a, b);
        let c = SymbolicSeq::one_sided(&[], &[1, 0]);
        assert_ne!(a, c);
    }

    #[test]
    fn distance_matches_hand_values() {
        let zeros = SymbolicSeq::constant(0, false);
        let ones = SymbolicSeq::constant(1, false);
        assert_eq!(distance(&zeros, &ones), 1.0, "one-sided diameter");
        assert_eq!(
            distance_exact(&zeros, &ones),
            BigRational::one()
        );

        let zeros2 = SymbolicSeq::constant(0, true);
        let ones2 = SymbolicSeq::constant(1, true);
        assert_eq!(distance(&zeros2, &ones2), 1.5, "two-sided diameter");
        assert_eq!(distance_exact(&zeros2, &ones2), diameter_exact(true));
    }

    #[test]
    fn distance_single_mismatch() {
        // Differ exactly at index 3: d = 2^-4.
        let a = SymbolicSeq::one_sided(&[0, 0, 0, 1], &[0]);
        let b = SymbolicSeq::constant(0, false);
        assert_eq!(distance(&a, &b), 0.0625);
        assert_eq!(
            distance_exact(&a, &b),
            BigRational::new(BigInt::from(1), BigInt::from(16))
        );
    }

    #[test]
    fn exact_and_double_agree_on_periodic_pairs() {
        let a = SymbolicSeq::two_sided(&[0, 1, 1], &[1, 0], &[1, 1, 0], -2);
        let b = SymbolicSeq::two_sided(&[1], &[0, 0, 1], &[0, 1], 1);
        let exact = distance_exact(&a, &b).to_f64().unwrap();
        let fast = distance(&a, &b);
        assert!((exact - fast).abs() < 1e-12, "exact {exact} vs scan {fast}");
    }

    #[test]
    fn metric_zero_iff_equal_on_samples() {
        let pts = [
            SymbolicSeq::one_sided(&[1, 0, 1], &[0, 0, 1]),
            SymbolicSeq::one_sided(&[1, 0, 1], &[0, 1]),
            SymbolicSeq::one_sided(&[], &[1]),
            SymbolicSeq::one_sided(&[0, 1, 1, 0], &[1, 0]),
        ];
        for (i, p) in pts.iter().enumerate() {
            for (j, q) in pts.iter().enumerate() {
                let d = distance(p, q);
                if i == j {
                    assert_eq!(d, 0.0);
                } else {
                    assert!(d > 0.0, "distinct points {i},{j} at distance 0");
                    assert_eq!(d, distance(q, p), "symmetry");
                }
            }
        }
    }
}

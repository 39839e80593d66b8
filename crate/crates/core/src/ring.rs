//! Exact arithmetic in the cyclotomic ring Z[ω], ω = exp(iπ/4).
//!
//! Every amplitude reachable from a Dicke state under H, P, CNOT and the
//! Pauli gates is of the form `x / sqrt(2^d · M)` with `x ∈ Z[ω]`, so the ring
//! element alone carries all the phase information. Elements are stored as
//! four big-integer coefficients in the power basis `1, ω, ω², ω³` and reduced
//! with `ω⁴ = -1`.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// `c0 + c1·ω + c2·ω² + c3·ω³`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct RingAmplitude {
    pub c: [BigInt; 4],
}

/// An element `a + b·√2` of Z[√2]; squared magnitudes of ring elements live here.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RootTwoInt {
    pub a: BigInt,
    pub b: BigInt,
}

impl RootTwoInt {
    pub fn to_f64(&self) -> f64 {
        self.a.to_f64().unwrap_or(f64::NAN) + self.b.to_f64().unwrap_or(f64::NAN) * std::f64::consts::SQRT_2
    }

    /// Sign of `a + b√2` decided exactly.
    pub fn is_non_negative(&self) -> bool {
        match (self.a.is_negative(), self.b.is_negative()) {
            (false, false) => true,
            (true, true) => false,
            // compare a² against 2b²
            (false, true) => &self.a * &self.a >= BigInt::from(2) * &self.b * &self.b,
            (true, false) => &self.a * &self.a <= BigInt::from(2) * &self.b * &self.b,
        }
    }
}

impl Add for RootTwoInt {
    type Output = RootTwoInt;
    fn add(self, rhs: RootTwoInt) -> RootTwoInt {
        RootTwoInt { a: self.a + rhs.a, b: self.b + rhs.b }
    }
}

impl RingAmplitude {
    pub fn new(c0: i64, c1: i64, c2: i64, c3: i64) -> Self {
        Self { c: [c0.into(), c1.into(), c2.into(), c3.into()] }
    }

    pub fn from_coeffs(c: [BigInt; 4]) -> Self {
        Self { c }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::new(1, 0, 0, 0)
    }

    pub fn omega() -> Self {
        Self::new(0, 1, 0, 0)
    }

    /// The imaginary unit, ω².
    pub fn i() -> Self {
        Self::new(0, 0, 1, 0)
    }

    /// √2 = ω − ω³.
    pub fn sqrt2() -> Self {
        Self::new(0, 1, 0, -1)
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(Zero::is_zero)
    }

    /// Multiplication by ω^k, a cyclic shift with sign flips on wrap-around.
    pub fn mul_omega(&self, k: u32) -> Self {
        let k = (k % 8) as usize;
        let mut out: [BigInt; 4] = Default::default();
        for (j, cj) in self.c.iter().enumerate() {
            let p = j + k;
            let (idx, flip) = (p % 4, (p / 4) % 2 == 1);
            out[idx] = if flip { -cj.clone() } else { cj.clone() };
        }
        Self { c: out }
    }

    pub fn conj(&self) -> Self {
        // conj(ω) = −ω³, conj(ω²) = −ω², conj(ω³) = −ω
        let [c0, c1, c2, c3] = &self.c;
        Self { c: [c0.clone(), -c3.clone(), -c2.clone(), -c1.clone()] }
    }

    /// `|x|² = x·conj(x)` as an element of Z[√2].
    pub fn norm_sq(&self) -> RootTwoInt {
        let p = self * &self.conj();
        debug_assert!(p.c[2].is_zero() && p.c[3] == -p.c[1].clone());
        let [a, b, _, _] = p.c;
        RootTwoInt { a, b }
    }

    /// Whether `self / √2` stays in the ring. With `self·(ω − ω³) =
    /// (c1−c3, c0+c2, c1+c3, c2−c0)` this holds iff `c0 ≡ c2` and `c1 ≡ c3 (mod 2)`.
    pub fn divisible_by_sqrt2(&self) -> bool {
        let [c0, c1, c2, c3] = &self.c;
        (c0 - c2).is_even() && (c1 - c3).is_even()
    }

    /// `self / √2`; caller guarantees [`divisible_by_sqrt2`](Self::divisible_by_sqrt2).
    pub fn div_sqrt2(&self) -> Self {
        let [c0, c1, c2, c3] = &self.c;
        let two = BigInt::from(2);
        Self {
            c: [
                (c1 - c3) / &two,
                (c0 + c2) / &two,
                (c1 + c3) / &two,
                (c2 - c0) / &two,
            ],
        }
    }

    pub fn mul_sqrt2(&self) -> Self {
        let [c0, c1, c2, c3] = &self.c;
        // (c0 + c1ω + c2ω² + c3ω³)(ω − ω³)
        Self { c: [c1 - c3, c0 + c2, c1 + c3, c2 - c0] }
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        Self { c: self.c.clone().map(|x| x * k) }
    }

    pub fn div_exact(&self, k: &BigInt) -> Self {
        Self { c: self.c.clone().map(|x| x / k) }
    }

    /// Integer content: gcd of the four coefficients (0 for the zero element).
    pub fn content(&self) -> BigInt {
        self.c.iter().fold(BigInt::zero(), |g, x| g.gcd(x))
    }

    pub fn to_complex(&self) -> Complex64 {
        let f = |x: &BigInt| x.to_f64().unwrap_or(f64::NAN);
        let [c0, c1, c2, c3] = self.c.each_ref().map(f);
        let r = std::f64::consts::FRAC_1_SQRT_2;
        Complex64::new(c0 + r * (c1 - c3), c2 + r * (c1 + c3))
    }

    /// Coefficients as `i64` when they all fit.
    pub fn to_small(&self) -> Option<[i64; 4]> {
        let [a, b, c, d] = &self.c;
        Some([a.to_i64()?, b.to_i64()?, c.to_i64()?, d.to_i64()?])
    }

    /// Self-delimiting byte encoding: per coefficient a big-endian `u16` length
    /// followed by the two's-complement big-endian bytes.
    pub fn write_bytes(&self, out: &mut Vec<u8>) {
        for x in &self.c {
            let bytes = if x.is_zero() { Vec::new() } else { x.to_signed_bytes_be() };
            out.extend_from_slice(&(bytes.len() as u16).to_be_bytes());
            out.extend_from_slice(&bytes);
        }
    }

    pub fn encoded(&self) -> Vec<u8> {
        let mut v = Vec::new();
        self.write_bytes(&mut v);
        v
    }
}

impl From<i64> for RingAmplitude {
    fn from(x: i64) -> Self {
        Self::new(x, 0, 0, 0)
    }
}

impl<'a> Add<&'a RingAmplitude> for &'a RingAmplitude {
    type Output = RingAmplitude;
    fn add(self, rhs: &RingAmplitude) -> RingAmplitude {
        RingAmplitude {
            c: [
                &self.c[0] + &rhs.c[0],
                &self.c[1] + &rhs.c[1],
                &self.c[2] + &rhs.c[2],
                &self.c[3] + &rhs.c[3],
            ],
        }
    }
}

impl Add for RingAmplitude {
    type Output = RingAmplitude;
    fn add(self, rhs: RingAmplitude) -> RingAmplitude {
        &self + &rhs
    }
}

impl AddAssign<&RingAmplitude> for RingAmplitude {
    fn add_assign(&mut self, rhs: &RingAmplitude) {
        for (a, b) in self.c.iter_mut().zip(rhs.c.iter()) {
            *a += b;
        }
    }
}

impl<'a> Sub<&'a RingAmplitude> for &'a RingAmplitude {
    type Output = RingAmplitude;
    fn sub(self, rhs: &RingAmplitude) -> RingAmplitude {
        RingAmplitude {
            c: [
                &self.c[0] - &rhs.c[0],
                &self.c[1] - &rhs.c[1],
                &self.c[2] - &rhs.c[2],
                &self.c[3] - &rhs.c[3],
            ],
        }
    }
}

impl Sub for RingAmplitude {
    type Output = RingAmplitude;
    fn sub(self, rhs: RingAmplitude) -> RingAmplitude {
        &self - &rhs
    }
}

impl Neg for &RingAmplitude {
    type Output = RingAmplitude;
    fn neg(self) -> RingAmplitude {
        RingAmplitude { c: self.c.clone().map(|x| -x) }
    }
}

impl Neg for RingAmplitude {
    type Output = RingAmplitude;
    fn neg(self) -> RingAmplitude {
        -&self
    }
}

impl<'a> Mul<&'a RingAmplitude> for &'a RingAmplitude {
    type Output = RingAmplitude;
    fn mul(self, rhs: &RingAmplitude) -> RingAmplitude {
        let mut out: [BigInt; 4] = Default::default();
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.c.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let p = a * b;
                if i + j < 4 {
                    out[i + j] += p;
                } else {
                    out[i + j - 4] -= p;
                }
            }
        }
        RingAmplitude { c: out }
    }
}

impl Mul for RingAmplitude {
    type Output = RingAmplitude;
    fn mul(self, rhs: RingAmplitude) -> RingAmplitude {
        &self * &rhs
    }
}

impl fmt::Display for RingAmplitude {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = ["", "w", "w^2", "w^3"];
        let mut wrote = false;
        for (x, name) in self.c.iter().zip(names) {
            if x.is_zero() {
                continue;
            }
            if wrote {
                write!(f, "{}", if x.is_negative() { " - " } else { " + " })?;
            } else if x.is_negative() {
                write!(f, "-")?;
            }
            let mag = x.abs();
            match (name.is_empty(), mag.is_one()) {
                (true, _) => write!(f, "{mag}")?,
                (false, true) => write!(f, "{name}")?,
                (false, false) => write!(f, "{mag}{name}")?,
            }
            wrote = true;
        }
        if !wrote {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Fixed-width counterpart of [`RingAmplitude`] for hot loops (partial
/// traces). Every operation is checked; `None` signals the caller to fall
/// back to big integers.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub(crate) struct SmallRing(pub [i64; 4]);

impl SmallRing {
    pub fn checked_mul(self, rhs: SmallRing) -> Option<SmallRing> {
        let mut out = [0i64; 4];
        for i in 0..4 {
            if self.0[i] == 0 {
                continue;
            }
            for j in 0..4 {
                let p = self.0[i].checked_mul(rhs.0[j])?;
                if i + j < 4 {
                    out[i + j] = out[i + j].checked_add(p)?;
                } else {
                    out[i + j - 4] = out[i + j - 4].checked_sub(p)?;
                }
            }
        }
        Some(SmallRing(out))
    }

    pub fn checked_add(self, rhs: SmallRing) -> Option<SmallRing> {
        Some(SmallRing([
            self.0[0].checked_add(rhs.0[0])?,
            self.0[1].checked_add(rhs.0[1])?,
            self.0[2].checked_add(rhs.0[2])?,
            self.0[3].checked_add(rhs.0[3])?,
        ]))
    }

    pub fn conj(self) -> SmallRing {
        let [c0, c1, c2, c3] = self.0;
        SmallRing([c0, -c3, -c2, -c1])
    }

    pub fn to_complex(self) -> Complex64 {
        let [c0, c1, c2, c3] = self.0.map(|x| x as f64);
        let r = std::f64::consts::FRAC_1_SQRT_2;
        Complex64::new(c0 + r * (c1 - c3), c2 + r * (c1 + c3))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ring() -> impl Strategy<Value = RingAmplitude> {
        prop::array::uniform4(-9i64..10).prop_map(|[a, b, c, d]| RingAmplitude::new(a, b, c, d))
    }

    #[test]
    fn omega_to_the_eighth_is_one() {
        let w = RingAmplitude::omega();
        let mut acc = RingAmplitude::one();
        for _ in 0..8 {
            acc = &acc * &w;
        }
        assert_eq!(acc, RingAmplitude::one());
        assert_eq!(RingAmplitude::one().mul_omega(4), -RingAmplitude::one());
    }

    #[test]
    fn sqrt2_squares_to_two() {
        let s = RingAmplitude::sqrt2();
        assert_eq!(&s * &s, RingAmplitude::from(2));
        assert!((s.to_complex().re - std::f64::consts::SQRT_2).abs() < 1e-15);
    }

    #[test]
    fn divisibility_by_sqrt2() {
        assert!(!RingAmplitude::one().divisible_by_sqrt2());
        // 1 + i = √2·ω
        let x = RingAmplitude::new(1, 0, 1, 0);
        assert!(x.divisible_by_sqrt2());
        assert_eq!(x.div_sqrt2(), RingAmplitude::omega());
    }

    #[test]
    fn display() {
        assert_eq!(RingAmplitude::new(1, -2, 0, 1).to_string(), "1 - 2w + w^3");
        assert_eq!(RingAmplitude::zero().to_string(), "0");
    }

    proptest! {
        #[test]
        fn mul_matches_complex(a in ring(), b in ring()) {
            let exact = (&a * &b).to_complex();
            let float = a.to_complex() * b.to_complex();
            prop_assert!((exact - float).norm() < 1e-9);
        }

        #[test]
        fn norm_is_real_and_non_negative(a in ring()) {
            let n = a.norm_sq();
            prop_assert!(n.is_non_negative());
            prop_assert!((n.to_f64() - a.to_complex().norm_sqr()).abs() < 1e-9);
        }

        #[test]
        fn sqrt2_division_inverts_multiplication(a in ring()) {
            let m = a.mul_sqrt2();
            prop_assert!(m.divisible_by_sqrt2());
            prop_assert_eq!(m.div_sqrt2(), a);
        }

        #[test]
        fn small_ring_agrees(a in ring(), b in ring()) {
            let sa = SmallRing(a.to_small().unwrap());
            let sb = SmallRing(b.to_small().unwrap());
            let p = sa.checked_mul(sb.conj()).unwrap();
            prop_assert_eq!(Some(p.0), (&a * &b.conj()).to_small());
        }
    }
}

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{MextError, Result};

/// A rational number modulo 1, kept as `num/den` with `0 ≤ num < den` and `gcd = 1`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct QZ {
    num: i64,
    den: i64,
}

impl QZ {
    pub const ZERO: QZ = QZ { num: 0, den: 1 };

    /// `num/den mod 1`. Panics on a zero denominator.
    pub fn new(num: i64, den: i64) -> QZ {
        QZ::from_wide(num as i128, den as i128)
    }

    pub(crate) fn from_wide(num: i128, den: i128) -> QZ {
        assert!(den != 0, "zero denominator");
        let (mut n, mut d) = if den < 0 { (-num, -den) } else { (num, den) };
        n = n.rem_euclid(d);
        let g = num_integer::gcd(n, d);
        if g > 1 {
            n /= g;
            d /= g;
        }
        if n == 0 {
            d = 1;
        }
        QZ {
            num: n as i64,
            den: d as i64,
        }
    }

    pub fn num(self) -> i64 {
        self.num
    }

    pub fn den(self) -> i64 {
        self.den
    }

    pub fn is_zero(self) -> bool {
        self.num == 0
    }

    /// Additive order in `Q/Z`.
    pub fn order(self) -> i64 {
        self.den
    }

    pub fn scale(self, k: i64) -> QZ {
        QZ::from_wide(self.num as i128 * k as i128, self.den as i128)
    }

    /// Representative in `[0, 1)` as a float.
    pub fn to_f64(self) -> f64 {
        self.num as f64 / self.den as f64
    }

    /// `k` such that `self = k/d`, provided `d · self ≡ 0`.
    pub fn numerator_over(self, d: i64) -> Option<i64> {
        if d % self.den == 0 {
            Some(self.num * (d / self.den))
        } else {
            None
        }
    }

    /// True when `k · self ≡ 0`.
    pub fn killed_by(self, k: i64) -> bool {
        k % self.den == 0
    }
}

impl Default for QZ {
    fn default() -> Self {
        QZ::ZERO
    }
}

impl Add for QZ {
    type Output = QZ;
    fn add(self, o: QZ) -> QZ {
        let l = num_integer::lcm(self.den as i128, o.den as i128);
        QZ::from_wide(
            self.num as i128 * (l / self.den as i128) + o.num as i128 * (l / o.den as i128),
            l,
        )
    }
}

impl Sub for QZ {
    type Output = QZ;
    fn sub(self, o: QZ) -> QZ {
        self + (-o)
    }
}

impl Neg for QZ {
    type Output = QZ;
    fn neg(self) -> QZ {
        QZ::from_wide(-(self.num as i128), self.den as i128)
    }
}

impl Mul<i64> for QZ {
    type Output = QZ;
    fn mul(self, k: i64) -> QZ {
        self.scale(k)
    }
}

impl AddAssign for QZ {
    fn add_assign(&mut self, o: QZ) {
        *self = *self + o;
    }
}

impl SubAssign for QZ {
    fn sub_assign(&mut self, o: QZ) {
        *self = *self - o;
    }
}

impl std::iter::Sum for QZ {
    fn sum<I: Iterator<Item = QZ>>(iter: I) -> QZ {
        iter.fold(QZ::ZERO, |a, b| a + b)
    }
}

impl Ord for QZ {
    fn cmp(&self, o: &QZ) -> Ordering {
        (self.num as i128 * o.den as i128).cmp(&(o.num as i128 * self.den as i128))
    }
}

impl PartialOrd for QZ {
    fn partial_cmp(&self, o: &QZ) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl fmt::Display for QZ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl fmt::Debug for QZ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl FromStr for QZ {
    type Err = MextError;
    fn from_str(s: &str) -> Result<QZ> {
        let bad = |e: &dyn fmt::Display| MextError::Parse(format!("rational {s:?}: {e}"));
        let s = s.trim();
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (
                n.trim().parse::<i64>().map_err(|e| bad(&e))?,
                d.trim().parse::<i64>().map_err(|e| bad(&e))?,
            ),
            None => (s.parse::<i64>().map_err(|e| bad(&e))?, 1),
        };
        if d == 0 {
            return Err(bad(&"zero denominator"));
        }
        Ok(QZ::new(n, d))
    }
}

impl Serialize for QZ {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for QZ {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<QZ, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

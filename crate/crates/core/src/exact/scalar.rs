//! Gaussian rationals `a + b*i` with `a, b` exact rationals.

use core::fmt;
use core::iter::{Product, Sum};
use core::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use core::str::FromStr;

use super::rational::Rational;

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Scalar {
    pub re: Rational,
    pub im: Rational,
}

impl Scalar {
    pub const ZERO: Scalar = Scalar { re: Rational::ZERO, im: Rational::ZERO };
    pub const ONE: Scalar = Scalar { re: Rational::ONE, im: Rational::ZERO };
    pub const I: Scalar = Scalar { re: Rational::ZERO, im: Rational::ONE };

    pub fn new(re: Rational, im: Rational) -> Self {
        Scalar { re, im }
    }

    pub fn int(n: i64) -> Self {
        Scalar { re: Rational::from_int(n), im: Rational::ZERO }
    }

    pub fn ratio(num: i64, den: i64) -> Self {
        Scalar { re: Rational::new(num, den), im: Rational::ZERO }
    }

    pub fn gaussian(re: i64, im: i64) -> Self {
        Scalar { re: Rational::from_int(re), im: Rational::from_int(im) }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    /// The value as an integer when it is a real integer fitting `i64`.
    pub fn to_i64(&self) -> Option<i64> {
        if self.im.is_zero() {
            self.re.to_i64()
        } else {
            None
        }
    }

    /// True iff the value lies in `Z_+ = {0, 1, 2, ...}`.
    pub fn is_nonneg_integer(&self) -> bool {
        self.im.is_zero() && self.re.is_integer() && !self.re.is_negative()
    }

    pub fn conj(&self) -> Self {
        Scalar { re: self.re.clone(), im: -&self.im }
    }

    pub fn norm_sq(&self) -> Rational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn inv(&self) -> Self {
        assert!(!self.is_zero(), "division by zero");
        if self.im.is_zero() {
            return Scalar { re: self.re.recip(), im: Rational::ZERO };
        }
        let n = self.norm_sq();
        Scalar { re: &self.re / &n, im: -(&self.im / &n) }
    }

    pub fn pow(&self, exp: i64) -> Self {
        if exp < 0 {
            return self.inv().pow(-exp);
        }
        if self.im.is_zero() {
            return Scalar { re: self.re.pow(exp as i32), im: Rational::ZERO };
        }
        let mut base = self.clone();
        let mut acc = Scalar::ONE;
        let mut e = exp as u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Pivot-selection weight: smaller is preferred.
    pub fn height(&self) -> (u64, u64) {
        (
            self.re.denominator_height().max(self.im.denominator_height()),
            self.re.height() + self.im.height(),
        )
    }

    fn mul_ref(&self, rhs: &Scalar) -> Scalar {
        if self.im.is_zero() && rhs.im.is_zero() {
            return Scalar { re: &self.re * &rhs.re, im: Rational::ZERO };
        }
        if self.im.is_zero() {
            return Scalar { re: &self.re * &rhs.re, im: &self.re * &rhs.im };
        }
        if rhs.im.is_zero() {
            return Scalar { re: &self.re * &rhs.re, im: &self.im * &rhs.re };
        }
        Scalar {
            re: &self.re * &rhs.re - &self.im * &rhs.im,
            im: &self.re * &rhs.im + &self.im * &rhs.re,
        }
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::int(n)
    }
}

impl From<Rational> for Scalar {
    fn from(r: Rational) -> Self {
        Scalar { re: r, im: Rational::ZERO }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar { re: -&self.re, im: -&self.im }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

macro_rules! scalar_binop {
    ($tr:ident, $method:ident, $body:expr) => {
        impl $tr<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                let f: fn(&Scalar, &Scalar) -> Scalar = $body;
                f(self, rhs)
            }
        }
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                (&self).$method(rhs)
            }
        }
        impl $tr<Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                self.$method(&rhs)
            }
        }
    };
}

scalar_binop!(Add, add, |a, b| Scalar { re: &a.re + &b.re, im: &a.im + &b.im });
scalar_binop!(Sub, sub, |a, b| Scalar { re: &a.re - &b.re, im: &a.im - &b.im });
scalar_binop!(Mul, mul, |a, b| a.mul_ref(b));
scalar_binop!(Div, div, |a, b| a.mul_ref(&b.inv()));

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        *self = &*self + rhs;
    }
}

impl AddAssign for Scalar {
    fn add_assign(&mut self, rhs: Scalar) {
        *self = &*self + &rhs;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        *self = &*self - rhs;
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        *self = &*self * rhs;
    }
}

impl Sum for Scalar {
    fn sum<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::ZERO, |acc, x| acc + x)
    }
}

impl Product for Scalar {
    fn product<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::ONE, |acc, x| acc * x)
    }
}

/// Emits `a/b+c/d*i`, dropping a zero part; `0` for zero.
impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", self.re),
            (true, false) => write!(f, "{}*i", self.im),
            (false, false) => {
                if self.im.is_negative() {
                    write!(f, "{}-{}*i", self.re, -&self.im)
                } else {
                    write!(f, "{}+{}*i", self.re, self.im)
                }
            }
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Scalar {
    type Err = crate::text::ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        crate::text::parse_scalar(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    #[test]
    fn field_ops() {
        let a = Scalar::gaussian(1, 2);
        let b = Scalar::gaussian(3, -1);
        assert_eq!(&a * &b, Scalar::gaussian(5, 5));
        assert_eq!(&(&a / &b) * &b, a);
        assert_eq!(Scalar::I.pow(2), Scalar::int(-1));
        assert_eq!(Scalar::I.pow(-1), -Scalar::I);
        assert_eq!(Scalar::int(2).pow(-2), Scalar::ratio(1, 4));
    }

    #[test]
    fn text_format() {
        let cases = [
            (Scalar::int(2), "2"),
            (Scalar::new(Rational::ZERO, Rational::new(-1, 3)), "-1/3*i"),
            (Scalar::new(Rational::new(1, 2), Rational::from_int(3)), "1/2+3*i"),
            (Scalar::new(Rational::new(1, 2), Rational::from_int(-3)), "1/2-3*i"),
            (Scalar::ZERO, "0"),
        ];
        for (v, s) in cases {
            assert_eq!(v.to_string(), s);
            assert_eq!(s.parse::<Scalar>().unwrap(), v);
        }
        assert_eq!("i".parse::<Scalar>().unwrap(), Scalar::I);
        assert_eq!("-2/4 - i".parse::<Scalar>().unwrap(), Scalar::new(Rational::new(-1, 2), Rational::from_int(-1)));
    }

    #[test]
    fn nonneg_integer_test() {
        assert!(Scalar::int(0).is_nonneg_integer());
        assert!(Scalar::int(3).is_nonneg_integer());
        assert!(!Scalar::int(-1).is_nonneg_integer());
        assert!(!Scalar::ratio(1, 2).is_nonneg_integer());
        assert!(!Scalar::gaussian(1, 1).is_nonneg_integer());
    }
}

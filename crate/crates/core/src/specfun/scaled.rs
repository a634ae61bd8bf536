/// A real number stored as `mantissa · 2^exponent` with `|mantissa|` in
/// `[0.5, 1)` (or zero), so products of very large and very small factors
/// can be formed without overflow or underflow.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Scaled {
    mantissa: f64,
    exponent: i64,
}

fn frexp(v: f64) -> (f64, i64) {
    if v == 0.0 || !v.is_finite() {
        return (v, 0);
    }
    let (v, bias) = if v.abs() < f64::MIN_POSITIVE {
        (v * 2f64.powi(64), -64)
    } else {
        (v, 0)
    };
    let bits = v.to_bits();
    let e = ((bits >> 52) & 0x7ff) as i64 - 1022;
    let m = f64::from_bits((bits & !(0x7ff << 52)) | (1022 << 52));
    (m, e + bias)
}

fn ldexp(mut m: f64, mut e: i64) -> f64 {
    while e > 1000 {
        m *= 2f64.powi(1000);
        e -= 1000;
        if m.is_infinite() {
            return m;
        }
    }
    while e < -1000 {
        m *= 2f64.powi(-1000);
        e += 1000;
        if m == 0.0 {
            return m;
        }
    }
    m * 2f64.powi(e as i32)
}

impl Scaled {
    pub const ZERO: Scaled = Scaled {
        mantissa: 0.0,
        exponent: 0,
    };

    pub fn new(v: f64) -> Self {
        Self::from_parts(v, 0)
    }

    /// `m · 2^e`, normalized.
    pub fn from_parts(m: f64, e: i64) -> Self {
        let (mm, ee) = frexp(m);
        if mm == 0.0 {
            return Self::ZERO;
        }
        Self {
            mantissa: mm,
            exponent: e + ee,
        }
    }

    /// `exp(x)` for any finite `x`.
    pub fn exp(x: f64) -> Self {
        let k = (x / std::f64::consts::LN_2).floor();
        Self::from_parts((x - k * std::f64::consts::LN_2).exp(), k as i64)
    }

    pub fn mantissa(self) -> f64 {
        self.mantissa
    }

    pub fn exponent(self) -> i64 {
        self.exponent
    }

    pub fn to_f64(self) -> f64 {
        ldexp(self.mantissa, self.exponent)
    }

    pub fn is_zero(self) -> bool {
        self.mantissa == 0.0
    }

    pub fn signum(self) -> f64 {
        if self.mantissa == 0.0 {
            0.0
        } else {
            self.mantissa.signum()
        }
    }

    /// Natural log of the magnitude (−∞ for zero).
    pub fn ln_abs(self) -> f64 {
        self.mantissa.abs().ln() + self.exponent as f64 * std::f64::consts::LN_2
    }

    pub fn abs(self) -> Self {
        Self {
            mantissa: self.mantissa.abs(),
            exponent: self.exponent,
        }
    }

    pub fn neg(self) -> Self {
        Self {
            mantissa: -self.mantissa,
            exponent: self.exponent,
        }
    }

    pub fn mul(self, o: Self) -> Self {
        Self::from_parts(self.mantissa * o.mantissa, self.exponent + o.exponent)
    }

    pub fn div(self, o: Self) -> Self {
        Self::from_parts(self.mantissa / o.mantissa, self.exponent - o.exponent)
    }

    pub fn scale(self, f: f64) -> Self {
        Self::from_parts(self.mantissa * f, self.exponent)
    }

    pub fn add(self, o: Self) -> Self {
        if self.is_zero() {
            return o;
        }
        if o.is_zero() {
            return self;
        }
        let e = self.exponent.max(o.exponent);
        let a = ldexp(self.mantissa, self.exponent - e);
        let b = ldexp(o.mantissa, o.exponent - e);
        Self::from_parts(a + b, e)
    }

    pub fn sub(self, o: Self) -> Self {
        self.add(o.neg())
    }

    pub fn sqrt(self) -> Self {
        assert!(self.mantissa >= 0.0);
        if self.exponent % 2 == 0 {
            Self::from_parts(self.mantissa.sqrt(), self.exponent / 2)
        } else {
            Self::from_parts((2.0 * self.mantissa).sqrt(), (self.exponent - 1) / 2)
        }
    }

    /// Ratio `self / o` as a plain float (may be ±∞ or 0).
    pub fn ratio(self, o: Self) -> f64 {
        self.div(o).to_f64()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roundtrip() {
        for &v in &[1.0, -3.5, 1e-310, 6.02e23, -1e300, 0.0] {
            assert_eq!(Scaled::new(v).to_f64(), v);
        }
    }

    #[test]
    fn arithmetic_beyond_double_range() {
        let big = Scaled::exp(2000.0);
        let small = Scaled::exp(-1990.0);
        let p = big.mul(small).to_f64();
        assert!((p - 10f64.exp()).abs() < 1e-9 * p);
        assert!((big.ln_abs() - 2000.0).abs() < 1e-12);
        let q = big.div(Scaled::exp(1999.0)).to_f64();
        assert!((q - std::f64::consts::E).abs() < 1e-12);
        assert_eq!(big.to_f64(), f64::INFINITY);
        assert_eq!(small.to_f64(), 0.0);
    }

    #[test]
    fn add_sub_sqrt() {
        let a = Scaled::new(3.0).add(Scaled::new(-1.0));
        assert_eq!(a.to_f64(), 2.0);
        assert_eq!(Scaled::new(1.0).sub(Scaled::new(1.0)).to_f64(), 0.0);
        assert!((Scaled::new(8.0).sqrt().to_f64() - 8f64.sqrt()).abs() < 1e-15);
        assert_eq!(Scaled::new(16.0).sqrt().to_f64(), 4.0);
    }
}

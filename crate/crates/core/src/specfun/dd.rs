//! Double-double ("compensated") arithmetic, real and complex.
//!
//! The confluent hypergeometric series for purely imaginary arguments is an
//! alternating sum whose partial sums grow like `e^{|z|}` while the result
//! stays `O(1)`; at `|z| = 50` that costs ~22 decimal digits to cancellation,
//! which plain f64 cannot afford. Double-double carries ~31 digits, leaving
//! ~9 after cancellation at the domain cap, which is how the 1e-10 error
//! budget is met. Only the operations needed by the series loops are
//! implemented.

/// Exact sum: returns (s, e) with s = fl(a+b) and a+b = s+e exactly.
#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    let e = (a - (s - bb)) + (b - bb);
    (s, e)
}

/// Like `two_sum` but assumes |a| >= |b|.
#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let e = b - (s - a);
    (s, e)
}

/// Exact product via FMA: a*b = p + e.
#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    let e = f64::mul_add(a, b, -p);
    (p, e)
}

/// A double-double number `hi + lo` with |lo| <= ulp(hi)/2.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Dd {
    pub hi: f64,
    pub lo: f64,
}

impl Dd {
    pub const ZERO: Dd = Dd { hi: 0.0, lo: 0.0 };
    pub const ONE: Dd = Dd { hi: 1.0, lo: 0.0 };

    /// Unit roundoff of the format, ~1.2e-32.
    pub const EPS: f64 = 1.23e-32;

    #[inline]
    pub fn from_f64(x: f64) -> Dd {
        Dd { hi: x, lo: 0.0 }
    }

    #[inline]
    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    #[inline]
    pub fn abs(self) -> f64 {
        (self.hi + self.lo).abs()
    }

    #[inline]
    pub fn neg(self) -> Dd {
        Dd {
            hi: -self.hi,
            lo: -self.lo,
        }
    }

    #[inline]
    pub fn add(self, b: Dd) -> Dd {
        let (s, e) = two_sum(self.hi, b.hi);
        let (t, f) = two_sum(self.lo, b.lo);
        let (s, e2) = quick_two_sum(s, e + t);
        let (hi, lo) = quick_two_sum(s, e2 + f);
        Dd { hi, lo }
    }

    #[inline]
    pub fn sub(self, b: Dd) -> Dd {
        self.add(b.neg())
    }

    #[inline]
    pub fn mul(self, b: Dd) -> Dd {
        let (p, e) = two_prod(self.hi, b.hi);
        let e = e + (self.hi * b.lo + self.lo * b.hi);
        let (hi, lo) = quick_two_sum(p, e);
        Dd { hi, lo }
    }

    #[inline]
    pub fn mul_f64(self, b: f64) -> Dd {
        let (p, e) = two_prod(self.hi, b);
        let e = e + self.lo * b;
        let (hi, lo) = quick_two_sum(p, e);
        Dd { hi, lo }
    }

    /// Quotient, accurate to ~full double-double precision.
    pub fn div(self, b: Dd) -> Dd {
        let q1 = self.hi / b.hi;
        let r = self.sub(b.mul_f64(q1));
        let q2 = r.hi / b.hi;
        let r = r.sub(b.mul_f64(q2));
        let q3 = r.hi / b.hi;
        let (s, e) = quick_two_sum(q1, q2);
        let (hi, lo) = quick_two_sum(s, e + q3);
        Dd { hi, lo }
    }
}

/// Complex double-double.
#[derive(Debug, Clone, Copy)]
pub struct Cdd {
    pub re: Dd,
    pub im: Dd,
}

impl Cdd {
    pub const ONE: Cdd = Cdd {
        re: Dd::ONE,
        im: Dd::ZERO,
    };

    #[inline]
    pub fn new(re: f64, im: f64) -> Cdd {
        Cdd {
            re: Dd::from_f64(re),
            im: Dd::from_f64(im),
        }
    }

    #[inline]
    pub fn add(self, b: Cdd) -> Cdd {
        Cdd {
            re: self.re.add(b.re),
            im: self.im.add(b.im),
        }
    }

    #[inline]
    pub fn mul(self, b: Cdd) -> Cdd {
        Cdd {
            re: self.re.mul(b.re).sub(self.im.mul(b.im)),
            im: self.re.mul(b.im).add(self.im.mul(b.re)),
        }
    }

    #[inline]
    pub fn mul_f64(self, b: f64) -> Cdd {
        Cdd {
            re: self.re.mul_f64(b),
            im: self.im.mul_f64(b),
        }
    }

    pub fn div(self, b: Cdd) -> Cdd {
        let den = b.re.mul(b.re).add(b.im.mul(b.im));
        let re = self.re.mul(b.re).add(self.im.mul(b.im)).div(den);
        let im = self.im.mul(b.re).sub(self.re.mul(b.im)).div(den);
        Cdd { re, im }
    }

    /// Euclidean magnitude in plain f64 (for termination checks only).
    #[inline]
    pub fn abs(self) -> f64 {
        self.re.to_f64().hypot(self.im.to_f64())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dd_add_keeps_cancelled_digits() {
        // (1 + 1e-20) - 1 is lost in f64 but exact in dd
        let a = Dd::ONE.add(Dd::from_f64(1e-20));
        let d = a.sub(Dd::ONE);
        assert_eq!(d.to_f64(), 1e-20);
    }

    #[test]
    fn dd_mul_div_roundtrip() {
        let a = Dd::from_f64(std::f64::consts::PI);
        let b = Dd::from_f64(std::f64::consts::E);
        let c = a.mul(b).div(b);
        assert!((c.to_f64() - std::f64::consts::PI).abs() < 1e-30);
        assert!(c.sub(a).abs() < 1e-30);
    }

    #[test]
    fn dd_div_matches_rational() {
        let q = Dd::ONE.div(Dd::from_f64(3.0));
        // 1/3 = 0.333...; hi+lo should agree with 1/3 to ~1e-32
        let err = q.mul_f64(3.0).sub(Dd::ONE).abs();
        assert!(err < 1e-31, "err = {err:e}");
    }

    #[test]
    fn cdd_mul_matches_complex() {
        let a = Cdd::new(1.5, -2.5);
        let b = Cdd::new(-0.25, 3.0);
        let p = a.mul(b);
        assert!((p.re.to_f64() - (1.5 * -0.25 - -2.5 * 3.0)).abs() < 1e-28);
        assert!((p.im.to_f64() - (1.5 * 3.0 + -2.5 * -0.25)).abs() < 1e-28);
    }
}

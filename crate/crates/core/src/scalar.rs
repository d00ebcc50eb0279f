//! Scalar backends: exact Gaussian rationals and double-precision complex
//! numbers.
//!
//! The exact backend keeps every computation inside the field of complex
//! numbers with rational real and imaginary parts, so elimination,
//! factorization and conjugation are closed operations and golden values
//! can be compared bit-exactly. The float backend is `Complex<f64>`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Which scalar representation a matrix (or scalar) lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Backend {
    Exact,
    Float,
}

impl fmt::Display for Backend {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Backend::Exact => write!(f, "exact"),
            Backend::Float => write!(f, "float"),
        }
    }
}

/// A complex number with arbitrary-precision rational real and imaginary
/// parts. Both parts are kept in canonical reduced form (this is what
/// `BigRational` guarantees: gcd(numer, denom) = 1 and denom > 0).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GaussianRational {
    re: BigRational,
    im: BigRational,
}

impl GaussianRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        GaussianRational { re, im }
    }

    pub fn from_i64(re: i64) -> Self {
        GaussianRational {
            re: BigRational::from_integer(BigInt::from(re)),
            im: BigRational::zero(),
        }
    }

    pub fn from_parts_i64(re_num: i64, re_den: i64, im_num: i64, im_den: i64) -> Self {
        GaussianRational {
            re: BigRational::new(BigInt::from(re_num), BigInt::from(re_den)),
            im: BigRational::new(BigInt::from(im_num), BigInt::from(im_den)),
        }
    }

    pub fn zero() -> Self {
        Self::from_i64(0)
    }

    pub fn one() -> Self {
        Self::from_i64(1)
    }

    pub fn i() -> Self {
        GaussianRational {
            re: BigRational::zero(),
            im: BigRational::one(),
        }
    }

    pub fn re(&self) -> &BigRational {
        &self.re
    }

    pub fn im(&self) -> &BigRational {
        &self.im
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        GaussianRational {
            re: self.re.clone(),
            im: -self.im.clone(),
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        GaussianRational {
            re: &self.re + &rhs.re,
            im: &self.im + &rhs.im,
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        GaussianRational {
            re: &self.re - &rhs.re,
            im: &self.im - &rhs.im,
        }
    }

    pub fn neg(&self) -> Self {
        GaussianRational {
            re: -self.re.clone(),
            im: -self.im.clone(),
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        // real factors are very common; skip the full complex product
        if rhs.im.is_zero() {
            if self.im.is_zero() {
                return GaussianRational {
                    re: &self.re * &rhs.re,
                    im: BigRational::zero(),
                };
            }
            return GaussianRational {
                re: &self.re * &rhs.re,
                im: &self.im * &rhs.re,
            };
        }
        if self.im.is_zero() {
            return GaussianRational {
                re: &self.re * &rhs.re,
                im: &self.re * &rhs.im,
            };
        }
        GaussianRational {
            re: &self.re * &rhs.re - &self.im * &rhs.im,
            im: &self.re * &rhs.im + &self.im * &rhs.re,
        }
    }

    /// |x|^2 = re^2 + im^2, exactly.
    pub fn norm_sq(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    /// Panics on division by zero; callers guard with `is_zero`.
    pub fn div(&self, rhs: &Self) -> Self {
        assert!(!rhs.is_zero(), "division by zero Gaussian rational");
        if rhs.im.is_zero() {
            return GaussianRational {
                re: &self.re / &rhs.re,
                im: if self.im.is_zero() {
                    BigRational::zero()
                } else {
                    &self.im / &rhs.re
                },
            };
        }
        let d = rhs.norm_sq();
        let num = self.mul(&rhs.conj());
        GaussianRational {
            re: num.re / &d,
            im: num.im / &d,
        }
    }

    pub fn to_complex64(&self) -> Complex64 {
        Complex64::new(
            self.re.to_f64().unwrap_or(f64::NAN),
            self.im.to_f64().unwrap_or(f64::NAN),
        )
    }

    fn abs_sq_f64(&self) -> f64 {
        self.norm_sq().to_f64().unwrap_or(0.0)
    }
}

fn parse_rational(s: &str) -> Result<BigRational> {
    let err = || Error::Parse(format!("invalid rational literal {s:?}"));
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let num = BigInt::from_str(num).map_err(|_| err())?;
    let den = BigInt::from_str(den).map_err(|_| err())?;
    if den.is_zero() {
        return Err(Error::Parse(format!("zero denominator in {s:?}")));
    }
    Ok(BigRational::new(num, den))
}

impl FromStr for GaussianRational {
    type Err = Error;

    /// Accepts `a`, `a/b`, `ci`, `i`, `-i`, and `a/b+c/d i` style forms
    /// (whitespace is ignored; the imaginary term comes last).
    fn from_str(raw: &str) -> Result<Self> {
        let s: String = raw.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(Error::Parse("empty scalar literal".into()));
        }
        let split = s
            .char_indices()
            .skip(1)
            .find(|(_, c)| *c == '+' || *c == '-')
            .map(|(i, _)| i);
        let (first, second) = match split {
            Some(i) => (&s[..i], Some(&s[i..])),
            None => (&s[..], None),
        };

        let parse_term = |term: &str| -> Result<(BigRational, bool)> {
            if let Some(mag) = term.strip_suffix('i') {
                let mag = match mag {
                    "" | "+" => BigRational::one(),
                    "-" => -BigRational::one(),
                    other => parse_rational(other)?,
                };
                Ok((mag, true))
            } else {
                Ok((parse_rational(term)?, false))
            }
        };

        let (v1, imag1) = parse_term(first)?;
        match second {
            None => {
                if imag1 {
                    Ok(GaussianRational::new(BigRational::zero(), v1))
                } else {
                    Ok(GaussianRational::new(v1, BigRational::zero()))
                }
            }
            Some(t2) => {
                let (v2, imag2) = parse_term(t2)?;
                if imag1 || !imag2 {
                    return Err(Error::Parse(format!(
                        "expected real part then imaginary part in {raw:?}"
                    )));
                }
                Ok(GaussianRational::new(v1, v2))
            }
        }
    }
}

impl fmt::Display for GaussianRational {
    /// Canonical form: `a` or `a/b` for real values, `re+imi` / `re-imi`
    /// otherwise (e.g. `1/2-2/3i`). This is the form the JSON writer emits
    /// and the parser round-trips byte-identically.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            write!(f, "{}", self.re)
        } else {
            let sign = if self.im.is_negative() { '-' } else { '+' };
            write!(f, "{}{}{}i", self.re, sign, self.im.abs())
        }
    }
}

/// A single matrix entry, tagged with its backend. Arithmetic never mixes
/// backends; mixing is reported as an error.
#[derive(Debug, Clone, PartialEq)]
pub enum Scalar {
    Exact(GaussianRational),
    Float(Complex64),
}

impl Scalar {
    pub fn backend(&self) -> Backend {
        match self {
            Scalar::Exact(_) => Backend::Exact,
            Scalar::Float(_) => Backend::Float,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Exact(q) => q.is_zero(),
            Scalar::Float(z) => z.re == 0.0 && z.im == 0.0,
        }
    }

    pub fn conj(&self) -> Scalar {
        match self {
            Scalar::Exact(q) => Scalar::Exact(q.conj()),
            Scalar::Float(z) => Scalar::Float(z.conj()),
        }
    }

    pub fn to_float(&self) -> Complex64 {
        match self {
            Scalar::Exact(q) => q.to_complex64(),
            Scalar::Float(z) => *z,
        }
    }

    fn binop(
        &self,
        rhs: &Scalar,
        ctx: &'static str,
        fq: impl Fn(&GaussianRational, &GaussianRational) -> GaussianRational,
        fz: impl Fn(Complex64, Complex64) -> Complex64,
    ) -> Result<Scalar> {
        match (self, rhs) {
            (Scalar::Exact(a), Scalar::Exact(b)) => Ok(Scalar::Exact(fq(a, b))),
            (Scalar::Float(a), Scalar::Float(b)) => Ok(Scalar::Float(fz(*a, *b))),
            _ => Err(Error::BackendMismatch(ctx)),
        }
    }

    pub fn try_add(&self, rhs: &Scalar) -> Result<Scalar> {
        self.binop(rhs, "scalar add", GaussianRational::add, |a, b| a + b)
    }

    pub fn try_sub(&self, rhs: &Scalar) -> Result<Scalar> {
        self.binop(rhs, "scalar sub", GaussianRational::sub, |a, b| a - b)
    }

    pub fn try_mul(&self, rhs: &Scalar) -> Result<Scalar> {
        self.binop(rhs, "scalar mul", GaussianRational::mul, |a, b| a * b)
    }

    pub fn try_div(&self, rhs: &Scalar) -> Result<Scalar> {
        if rhs.is_zero() {
            return Err(Error::Precondition("scalar division by zero".into()));
        }
        self.binop(rhs, "scalar div", GaussianRational::div, |a, b| a / b)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Exact(q) => write!(f, "{q}"),
            Scalar::Float(z) => write!(f, "{z}"),
        }
    }
}

/// The arithmetic the generic dense kernels need from an entry type.
pub(crate) trait Entry: Clone + PartialEq + fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn div(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    fn conj(&self) -> Self;
    fn is_zero(&self) -> bool;
    /// |x|^2 as f64, used for norm accumulation. For exact entries this
    /// is a lossy display value; zero tests stay exact.
    fn abs_sq(&self) -> f64;
    /// Cheap magnitude surrogate for pivot ordering only. Any value that
    /// ranks larger entries higher is fine; exactness of elimination does
    /// not depend on the choice.
    fn pivot_weight(&self) -> f64 {
        self.abs_sq()
    }
}

fn log2_magnitude(r: &BigRational) -> i64 {
    use num_traits::Zero as _;
    if r.is_zero() {
        i64::MIN / 2
    } else {
        r.numer().bits() as i64 - r.denom().bits() as i64
    }
}

impl Entry for GaussianRational {
    fn zero() -> Self {
        GaussianRational::zero()
    }
    fn one() -> Self {
        GaussianRational::one()
    }
    fn add(&self, rhs: &Self) -> Self {
        GaussianRational::add(self, rhs)
    }
    fn sub(&self, rhs: &Self) -> Self {
        GaussianRational::sub(self, rhs)
    }
    fn mul(&self, rhs: &Self) -> Self {
        GaussianRational::mul(self, rhs)
    }
    fn div(&self, rhs: &Self) -> Self {
        GaussianRational::div(self, rhs)
    }
    fn neg(&self) -> Self {
        GaussianRational::neg(self)
    }
    fn conj(&self) -> Self {
        GaussianRational::conj(self)
    }
    fn is_zero(&self) -> bool {
        GaussianRational::is_zero(self)
    }
    fn abs_sq(&self) -> f64 {
        self.abs_sq_f64()
    }
    fn pivot_weight(&self) -> f64 {
        log2_magnitude(&self.re).max(log2_magnitude(&self.im)) as f64
    }
}

impl Entry for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn one() -> Self {
        Complex64::new(1.0, 0.0)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn div(&self, rhs: &Self) -> Self {
        self / rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn conj(&self) -> Self {
        Complex64::conj(self)
    }
    fn is_zero(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }
    fn abs_sq(&self) -> f64 {
        self.norm_sqr()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> GaussianRational {
        s.parse().unwrap()
    }

    #[test]
    fn parses_common_forms() {
        assert_eq!(q("5"), GaussianRational::from_i64(5));
        assert_eq!(q("-3/4"), GaussianRational::from_parts_i64(-3, 4, 0, 1));
        assert_eq!(q("i"), GaussianRational::i());
        assert_eq!(q("-i"), GaussianRational::from_parts_i64(0, 1, -1, 1));
        assert_eq!(q("3i"), GaussianRational::from_parts_i64(0, 1, 3, 1));
        assert_eq!(q("1/2+1/3i"), GaussianRational::from_parts_i64(1, 2, 1, 3));
        assert_eq!(
            q("1/2 - 2/3 i"),
            GaussianRational::from_parts_i64(1, 2, -2, 3)
        );
        assert_eq!(q("2-i"), GaussianRational::from_parts_i64(2, 1, -1, 1));
    }

    #[test]
    fn rejects_bad_forms() {
        assert!("".parse::<GaussianRational>().is_err());
        assert!("1/0".parse::<GaussianRational>().is_err());
        assert!("i+1".parse::<GaussianRational>().is_err());
        assert!("1+1".parse::<GaussianRational>().is_err());
        assert!("abc".parse::<GaussianRational>().is_err());
    }

    #[test]
    fn canonical_reduced_form() {
        let x = GaussianRational::from_parts_i64(2, 4, -6, 8);
        assert_eq!(x.to_string(), "1/2-3/4i");
        let y = GaussianRational::from_parts_i64(3, -6, 0, 1);
        // denominator normalized positive
        assert_eq!(y.to_string(), "-1/2");
    }

    #[test]
    fn arithmetic_and_conjugation() {
        let a = q("1/2+1/3i");
        let b = q("2-i");
        assert_eq!(a.mul(&b), q("4/3+1/6i"));
        assert_eq!(a.conj().conj(), a);
        let quot = a.div(&b);
        assert_eq!(quot.mul(&b), a);
        assert_eq!(a.mul(&a.conj()).im(), &num_rational::BigRational::zero());
    }

    #[test]
    fn scalar_backend_mixing_is_an_error() {
        let e = Scalar::Exact(q("1"));
        let f = Scalar::Float(Complex64::new(1.0, 0.0));
        assert!(matches!(e.try_add(&f), Err(Error::BackendMismatch(_))));
        assert!(e.try_mul(&e.clone()).is_ok());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn arb_gauss() -> impl Strategy<Value = GaussianRational> {
            (-50i64..=50, 1i64..=20, -50i64..=50, 1i64..=20)
                .prop_map(|(a, b, c, d)| GaussianRational::from_parts_i64(a, b, c, d))
        }

        proptest! {
            #[test]
            fn display_parse_round_trip(x in arb_gauss()) {
                let shown = x.to_string();
                let back: GaussianRational = shown.parse().unwrap();
                prop_assert_eq!(back, x);
            }

            #[test]
            fn field_axioms_spot_checks(a in arb_gauss(), b in arb_gauss()) {
                prop_assert_eq!(a.add(&b), b.add(&a));
                prop_assert_eq!(a.mul(&b), b.mul(&a));
                prop_assert_eq!(a.sub(&a), GaussianRational::zero());
                if !b.is_zero() {
                    prop_assert_eq!(a.div(&b).mul(&b), a.clone());
                }
                // conjugation is a ring homomorphism
                prop_assert_eq!(a.mul(&b).conj(), a.conj().mul(&b.conj()));
            }
        }
    }
}

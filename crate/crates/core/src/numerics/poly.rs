use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::Rational;
use crate::error::{Error, Result};

/// Univariate polynomial with arbitrary-precision integer coefficients.
///
/// `coeffs[i]` is the coefficient of `p^i`. The zero polynomial is the empty
/// vector; otherwise the last coefficient is nonzero.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(coeffs: Vec<BigInt>) -> Self {
        let mut p = IntPolynomial { coeffs };
        p.trim();
        p
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPolynomial { coeffs: Vec::new() }
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::new(vec![c.into()])
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    /// The polynomial `p`.
    pub fn var() -> Self {
        Self::from_i64(&[0, 1])
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    /// Lowest-order nonzero coefficient.
    pub fn trailing(&self) -> Option<&BigInt> {
        self.coeffs.iter().find(|c| !c.is_zero())
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Divides out the integer content and flips the sign so the lowest
    /// nonzero coefficient is positive.
    pub fn primitive(&self) -> Result<IntPolynomial> {
        let lowest = self.trailing().ok_or(Error::ZeroPolynomial)?;
        let mut c = self.content();
        if lowest.is_negative() {
            c = -c;
        }
        Ok(self.div_scalar(&c))
    }

    fn div_scalar(&self, c: &BigInt) -> IntPolynomial {
        IntPolynomial::new(self.coeffs.iter().map(|x| x / c).collect())
    }

    pub fn scale(&self, c: &BigInt) -> IntPolynomial {
        IntPolynomial::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        // Horner over the common denominator keeps everything integral until
        // the final division.
        let (n, d) = (x.numer(), x.denom());
        let mut acc = BigInt::zero();
        let mut dpow = BigInt::one();
        for c in self.coeffs.iter().rev() {
            acc = acc * n + c * &dpow;
            dpow *= d;
        }
        // acc = sum c_i n^i d^(deg-i); divide by d^deg
        let deg_pow = if self.coeffs.is_empty() {
            BigInt::one()
        } else {
            dpow / d
        };
        Rational::new(acc, deg_pow).expect("positive denominator")
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        let mut acc = 0.0;
        for c in self.coeffs.iter().rev() {
            acc = acc * x + Rational::from_integer(c.clone()).to_f64();
        }
        acc
    }

    /// Pseudo-remainder of `self` by `divisor`: lc(divisor)^k * self mod divisor.
    fn pseudo_rem(&self, divisor: &IntPolynomial) -> IntPolynomial {
        let dd = divisor.degree().expect("nonzero divisor");
        let lc = divisor.leading().unwrap();
        let mut r = self.clone();
        while let Some(dr) = r.degree() {
            if dr < dd {
                break;
            }
            let lr = r.leading().unwrap().clone();
            let shift = dr - dd;
            let mut next: Vec<BigInt> = r.coeffs.iter().map(|c| c * lc).collect();
            for (i, c) in divisor.coeffs.iter().enumerate() {
                next[i + shift] -= &lr * c;
            }
            r = IntPolynomial::new(next);
        }
        r
    }

    /// Greatest common divisor in Z[p], primitive with positive lowest-order
    /// coefficient. gcd(0, 0) = 0.
    pub fn gcd(&self, other: &IntPolynomial) -> IntPolynomial {
        if self.is_zero() {
            return other.primitive().unwrap_or_default();
        }
        if other.is_zero() {
            return self.primitive().unwrap_or_default();
        }
        let content = self.content().gcd(&other.content());
        let (mut a, mut b) = (self.primitive().unwrap(), other.primitive().unwrap());
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        // primitive PRS
        while !b.is_zero() {
            let r = a.pseudo_rem(&b);
            a = b;
            b = if r.is_zero() {
                r
            } else {
                r.primitive().unwrap()
            };
        }
        a.primitive().unwrap().scale(&content)
    }

    /// Exact quotient in Z[p]; `None` when `divisor` does not divide `self`.
    pub fn div_exact(&self, divisor: &IntPolynomial) -> Option<IntPolynomial> {
        let dd = divisor.degree()?;
        let lc = divisor.leading().unwrap();
        let mut rem = self.coeffs.clone();
        let Some(dn) = self.degree() else {
            return Some(IntPolynomial::zero());
        };
        if dn < dd {
            return None;
        }
        let mut quot = vec![BigInt::zero(); dn - dd + 1];
        for k in (0..=dn - dd).rev() {
            let top = &rem[k + dd];
            let (q, r) = top.div_rem(lc);
            if !r.is_zero() {
                return None;
            }
            for (i, c) in divisor.coeffs.iter().enumerate() {
                rem[k + i] -= &q * c;
            }
            quot[k] = q;
        }
        if rem.iter().all(Zero::is_zero) {
            Some(IntPolynomial::new(quot))
        } else {
            None
        }
    }

    /// Number of times `p - 1` divides `self`, and the cofactor.
    pub fn strip_root_at_one(&self) -> (usize, IntPolynomial) {
        let factor = IntPolynomial::from_i64(&[-1, 1]);
        let mut k = 0;
        let mut cur = self.clone();
        while !cur.is_zero() && cur.eval(&Rational::one()).is_zero() {
            cur = cur
                .div_exact(&factor)
                .expect("p - 1 divides a polynomial vanishing at 1");
            k += 1;
        }
        (k, cur)
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            first = false;
            match (i, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "p")?,
                (1, false) => write!(f, "{mag}p")?,
                (_, true) => write!(f, "p^{i}")?,
                (_, false) => write!(f, "{mag}p^{i}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPolynomial({self})")
    }
}

impl Add for &IntPolynomial {
    type Output = IntPolynomial;
    fn add(self, rhs: &IntPolynomial) -> IntPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let zero = BigInt::zero();
        IntPolynomial::new(
            (0..n)
                .map(|i| self.coeffs.get(i).unwrap_or(&zero) + rhs.coeffs.get(i).unwrap_or(&zero))
                .collect(),
        )
    }
}

impl Sub for &IntPolynomial {
    type Output = IntPolynomial;
    fn sub(self, rhs: &IntPolynomial) -> IntPolynomial {
        self + &(-rhs)
    }
}

impl Mul for &IntPolynomial {
    type Output = IntPolynomial;
    fn mul(self, rhs: &IntPolynomial) -> IntPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return IntPolynomial::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPolynomial::new(out)
    }
}

impl Neg for &IntPolynomial {
    type Output = IntPolynomial;
    fn neg(self) -> IntPolynomial {
        IntPolynomial::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

macro_rules! owned_poly_op {
    ($tr:ident, $method:ident) => {
        impl $tr for IntPolynomial {
            type Output = IntPolynomial;
            fn $method(self, rhs: IntPolynomial) -> IntPolynomial {
                $tr::$method(&self, &rhs)
            }
        }
    };
}
owned_poly_op!(Add, add);
owned_poly_op!(Sub, sub);
owned_poly_op!(Mul, mul);

/// Which arithmetic operation [`poly_arith`] applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PolyOp {
    Add,
    Sub,
    Mul,
}

pub fn poly_arith(a: &IntPolynomial, b: &IntPolynomial, op: PolyOp) -> IntPolynomial {
    match op {
        PolyOp::Add => a + b,
        PolyOp::Sub => a - b,
        PolyOp::Mul => a * b,
    }
}

/// A quotient `num / den` of integer polynomials in lowest terms.
///
/// The denominator's lowest-order nonzero coefficient is positive, so for
/// functions that are finite at `p = 0` the denominator is positive near 0.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    num: IntPolynomial,
    den: IntPolynomial,
}

impl RationalFunction {
    pub fn new(num: IntPolynomial, den: IntPolynomial) -> Option<Self> {
        if den.is_zero() {
            return None;
        }
        if num.is_zero() {
            return Some(RationalFunction {
                num,
                den: IntPolynomial::one(),
            });
        }
        let g = num.gcd(&den);
        let mut num = num.div_exact(&g).expect("gcd divides numerator");
        let mut den = den.div_exact(&g).expect("gcd divides denominator");
        let mut c = num.content().gcd(&den.content());
        if den.trailing().unwrap().is_negative() {
            c = -c;
        }
        num = num.div_scalar(&c);
        den = den.div_scalar(&c);
        Some(RationalFunction { num, den })
    }

    pub fn from_poly(p: IntPolynomial) -> Self {
        RationalFunction {
            num: p,
            den: IntPolynomial::one(),
        }
    }

    pub fn num(&self) -> &IntPolynomial {
        &self.num
    }

    pub fn den(&self) -> &IntPolynomial {
        &self.den
    }

    /// `None` at a pole.
    pub fn eval(&self, x: &Rational) -> Option<Rational> {
        self.num.eval(x).checked_div(&self.den.eval(x))
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == IntPolynomial::one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RationalFunction({self})")
    }
}

/// Grid used by [`smallest_root`] before bisection.
pub const ROOT_GRID_CELLS: u32 = 1 << 10;

/// Hard limit on bisection steps once the bracket is narrower than `tol`.
/// Only reached when a root sits exactly on a multiple of `tol` that the
/// dyadic midpoints never hit.
const MAX_EXTRA_HALVINGS: u32 = 64;

/// Smallest sign-change bracket of `a` inside `(lo, hi)`.
///
/// Samples `a` on a uniform grid of [`ROOT_GRID_CELLS`] cells, takes the first
/// cell whose endpoint signs differ, and bisects it. Refinement continues
/// until the bracket is no wider than `tol` and lies inside a single cell
/// `[k*tol, (k+1)*tol]`, so both endpoints agree on every digit `tol`
/// resolves. Roots of even multiplicity produce no sign change and are not
/// found.
pub fn smallest_root(
    a: &IntPolynomial,
    lo: &Rational,
    hi: &Rational,
    tol: &Rational,
) -> Result<Option<(Rational, Rational)>> {
    if !tol.is_positive() {
        return Err(Error::NonPositiveTolerance);
    }
    if lo >= hi {
        return Err(Error::EmptyInterval);
    }
    let s_lo = a.eval(lo).signum();
    let s_hi = a.eval(hi).signum();
    if s_lo == 0 || s_hi == 0 {
        return Err(Error::RootAtEndpoint);
    }

    let cells = Rational::from(ROOT_GRID_CELLS as i64);
    let step = (hi - lo) / &cells;
    let mut left = lo.clone();
    let mut s_left = s_lo;
    for k in 1..=ROOT_GRID_CELLS {
        let right = if k == ROOT_GRID_CELLS {
            hi.clone()
        } else {
            lo + &step * Rational::from(k as i64)
        };
        let s_right = a.eval(&right).signum();
        if s_right != s_left {
            return Ok(Some(refine_bracket(
                |x| a.eval(x).signum(),
                left,
                right,
                tol,
            )));
        }
        left = right;
        s_left = s_right;
    }
    Ok(None)
}

/// True when `[lo, hi]` fits in one cell of the `tol` grid.
pub(crate) fn within_grid_cell(lo: &Rational, hi: &Rational, tol: &Rational) -> bool {
    if hi - lo > *tol {
        return false;
    }
    let k = (lo / tol).floor();
    let cell_hi = Rational::from(k + 1) * tol;
    *hi <= cell_hi
}

/// Bisects `[left, right]` keeping `sign(left) != sign(right)`, where
/// `sign(left)` is nonzero.
pub(crate) fn refine_bracket(
    mut sign: impl FnMut(&Rational) -> i8,
    mut left: Rational,
    mut right: Rational,
    tol: &Rational,
) -> (Rational, Rational) {
    let s_left = sign(&left);
    debug_assert_ne!(s_left, 0);
    let half = Rational::frac(1, 2);
    let mut extra = 0;
    while !within_grid_cell(&left, &right, tol) {
        if &right - &left <= *tol {
            extra += 1;
            if extra > MAX_EXTRA_HALVINGS {
                break;
            }
        }
        let mid = (&left + &right) * &half;
        if sign(&mid) == s_left {
            left = mid;
        } else {
            right = mid;
        }
    }
    (left, right)
}

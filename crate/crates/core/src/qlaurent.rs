//! Sparse Laurent polynomials in `q` with exponents on the quarter-integer
//! lattice and `BigInt` coefficients.
//!
//! A single exponent lattice with denominator 4 covers everything at once:
//! the R-matrix needs `q^{1/4}`, the skein variable satisfies `A = q^{-1/4}`,
//! and braces `{m} = q^{m/2} - q^{-m/2}` need halves. Exponents are stored
//! as the integer number of quarter units, so [`QExp`]`(6)` means `q^{3/2}`.
//!
//! All arithmetic is exact. The only truncating operations are the explicit
//! `mod q^order` ones (`truncate`, [`QPoly::series_div`], infinite
//! Pochhammer products).

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::ser::SerializeStruct;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::{Error, Result};

/// Exponent of `q` measured in quarter-integer units.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct QExp(pub i64);

impl QExp {
    /// The exponent of `q^n`.
    pub fn whole(n: i64) -> Self {
        QExp(4 * n)
    }

    /// The exponent of `q^{n/2}`.
    pub fn half(n: i64) -> Self {
        QExp(2 * n)
    }

    /// True when the exponent is an integer power of `q`.
    pub fn is_whole(self) -> bool {
        self.0 % 4 == 0
    }
}

impl Add for QExp {
    type Output = QExp;
    fn add(self, rhs: QExp) -> QExp {
        QExp(self.0 + rhs.0)
    }
}

impl Sub for QExp {
    type Output = QExp;
    fn sub(self, rhs: QExp) -> QExp {
        QExp(self.0 - rhs.0)
    }
}

impl Neg for QExp {
    type Output = QExp;
    fn neg(self) -> QExp {
        QExp(-self.0)
    }
}

impl Mul<i64> for QExp {
    type Output = QExp;
    fn mul(self, rhs: i64) -> QExp {
        QExp(self.0 * rhs)
    }
}

impl fmt::Display for QExp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 % 4 == 0 {
            write!(f, "{}", self.0 / 4)
        } else if self.0 % 2 == 0 {
            write!(f, "{}/2", self.0 / 2)
        } else {
            write!(f, "{}/4", self.0)
        }
    }
}

/// A sign, exactly `+1` or `-1`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    /// `(-1)^k` as a sign.
    pub fn neg_one_pow(k: i64) -> Sign {
        if k.rem_euclid(2) == 0 {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }

    /// This sign raised to the `k`-th power.
    pub fn pow(self, k: i64) -> Sign {
        match self {
            Sign::Plus => Sign::Plus,
            Sign::Minus => Sign::neg_one_pow(k),
        }
    }

    pub fn as_int(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

impl Mul for Sign {
    type Output = Sign;
    fn mul(self, rhs: Sign) -> Sign {
        if self == rhs {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

/// A monomial `±q^{e/4}`, the argument type of theta functions and
/// Pochhammer symbols (e.g. `a = -q^4` in `f(-q^4, -q)`).
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct SignedMonomial {
    pub sign: Sign,
    pub exp: QExp,
}

impl SignedMonomial {
    pub fn new(sign: Sign, exp: QExp) -> Self {
        SignedMonomial { sign, exp }
    }

    /// `+q^n`.
    pub fn q_pow(n: i64) -> Self {
        SignedMonomial::new(Sign::Plus, QExp::whole(n))
    }

    /// `-q^n`.
    pub fn neg_q_pow(n: i64) -> Self {
        SignedMonomial::new(Sign::Minus, QExp::whole(n))
    }

    /// The monomial raised to the `k`-th power (`k >= 0`).
    pub fn pow(self, k: i64) -> Self {
        SignedMonomial::new(self.sign.pow(k), self.exp * k)
    }

    pub fn to_poly(self) -> QPoly {
        QPoly::monomial(BigInt::from(self.sign.as_int()), self.exp)
    }
}

impl Mul for SignedMonomial {
    type Output = SignedMonomial;
    fn mul(self, rhs: SignedMonomial) -> SignedMonomial {
        SignedMonomial::new(self.sign * rhs.sign, self.exp + rhs.exp)
    }
}

/// A sparse exact Laurent polynomial in `q^{1/4}`.
///
/// Invariant: no stored zero coefficients; the zero polynomial is the empty
/// map, so representations are unique and `==` is semantic equality.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct QPoly {
    terms: BTreeMap<QExp, BigInt>,
}

impl QPoly {
    pub fn zero() -> Self {
        QPoly::default()
    }

    pub fn one() -> Self {
        QPoly::monomial(BigInt::one(), QExp(0))
    }

    /// The monomial `c * q^{e/4}` (empty if `c == 0`).
    pub fn monomial(c: BigInt, e: QExp) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        QPoly { terms }
    }

    /// Build from `(quarter-exponent, coefficient)` pairs; repeated exponents
    /// accumulate.
    pub fn from_terms<I: IntoIterator<Item = (i64, i64)>>(iter: I) -> Self {
        let mut p = QPoly::zero();
        for (e, c) in iter {
            p.add_term(QExp(e), &BigInt::from(c));
        }
        p
    }

    /// Build from integer q-powers: `(n, c)` meaning `c * q^n`.
    pub fn from_q_terms<I: IntoIterator<Item = (i64, i64)>>(iter: I) -> Self {
        QPoly::from_terms(iter.into_iter().map(|(e, c)| (4 * e, c)))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.coeff(QExp(0)).is_one()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Coefficient of `q^{e/4}` (zero if absent).
    pub fn coeff(&self, e: QExp) -> BigInt {
        self.terms.get(&e).cloned().unwrap_or_else(BigInt::zero)
    }

    /// Coefficient of the integer power `q^n`.
    pub fn coeff_q(&self, n: i64) -> BigInt {
        self.coeff(QExp::whole(n))
    }

    /// Terms in ascending exponent order.
    pub fn iter_terms(&self) -> impl Iterator<Item = (QExp, &BigInt)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    /// Lowest exponent, if nonzero.
    pub fn min_exp(&self) -> Option<QExp> {
        self.terms.keys().next().copied()
    }

    /// Highest exponent, if nonzero.
    pub fn max_exp(&self) -> Option<QExp> {
        self.terms.keys().next_back().copied()
    }

    /// True when every exponent is an integer power of `q`.
    pub fn is_whole(&self) -> bool {
        self.terms.keys().all(|e| e.is_whole())
    }

    pub fn add_term(&mut self, e: QExp, c: &BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(e).or_insert_with(BigInt::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&e);
        }
    }

    /// Add `rhs` scaled by the monomial `c * q^{e/4}` into `self`.
    pub fn add_scaled(&mut self, rhs: &QPoly, c: &BigInt, e: QExp) {
        for (re, rc) in rhs.iter_terms() {
            self.add_term(re + e, &(rc * c));
        }
    }

    /// Multiply by the monomial `c * q^{e/4}`.
    pub fn mul_monomial(&self, c: &BigInt, e: QExp) -> QPoly {
        if c.is_zero() {
            return QPoly::zero();
        }
        QPoly {
            terms: self
                .terms
                .iter()
                .map(|(te, tc)| (*te + e, tc * c))
                .collect(),
        }
    }

    /// Shift all exponents by `e` (multiply by `q^{e/4}`).
    pub fn shift(&self, e: QExp) -> QPoly {
        self.mul_monomial(&BigInt::one(), e)
    }

    /// Small non-negative integer power.
    pub fn pow(&self, k: u32) -> QPoly {
        let mut acc = QPoly::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// The substitution `q -> 1/q` (negates all exponents).
    pub fn reverse(&self) -> QPoly {
        QPoly {
            terms: self.terms.iter().map(|(e, c)| (-*e, c.clone())).collect(),
        }
    }

    /// The substitution `q -> q^k` for `k >= 1` (stretches exponents).
    pub fn stretch(&self, k: i64) -> QPoly {
        QPoly {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (*e * k, c.clone()))
                .collect(),
        }
    }

    /// Drop all terms with exponent `>= cut` quarter units.
    pub fn truncate_quarter(&self, cut: i64) -> QPoly {
        QPoly {
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e.0 < cut)
                .map(|(e, c)| (*e, c.clone()))
                .collect(),
        }
    }

    /// Reduce mod `q^order` (whole q-powers).
    pub fn truncate_q(&self, order: i64) -> QPoly {
        self.truncate_quarter(4 * order)
    }

    /// Evaluate at `q = -1`. Only defined for polynomials supported on whole
    /// powers; the absolute value on a Jones polynomial is the determinant.
    pub fn eval_at_minus_one(&self) -> Option<BigInt> {
        let mut acc = BigInt::zero();
        for (e, c) in self.iter_terms() {
            if !e.is_whole() {
                return None;
            }
            if (e.0 / 4).rem_euclid(2) == 0 {
                acc += c;
            } else {
                acc -= c;
            }
        }
        Some(acc)
    }

    /// Normal form under the relation "equal up to `±q^s`".
    ///
    /// The sign ambiguity is resolved by making the lowest coefficient
    /// positive, so two polynomials are equivalent iff their canonical
    /// normalized parts are identical.
    pub fn canonical(&self) -> CanonicalForm {
        match self.min_exp() {
            None => CanonicalForm {
                normalized: QPoly::zero(),
                sign: Sign::Plus,
                shift: QExp(0),
            },
            Some(low) => {
                let sign = if self.coeff(low).is_negative() {
                    Sign::Minus
                } else {
                    Sign::Plus
                };
                let mut normalized = self.shift(-low);
                if sign == Sign::Minus {
                    normalized = -&normalized;
                }
                CanonicalForm {
                    normalized,
                    sign,
                    shift: low,
                }
            }
        }
    }

    /// True iff the canonical forms coincide mod `q^order` (whole powers);
    /// this is the decidable version of the `=_n` relation.
    pub fn agree_mod(&self, other: &QPoly, order: i64) -> bool {
        self.canonical().normalized.truncate_q(order)
            == other.canonical().normalized.truncate_q(order)
    }

    /// Exact division: returns `Q` with `Q * den == self`, or
    /// [`Error::NonDivisible`] if no such Laurent polynomial exists.
    pub fn exact_div(&self, den: &QPoly) -> Result<QPoly> {
        let den_low = den.min_exp().ok_or(Error::DivisionByZero)?;
        let den_high = den.max_exp().expect("nonzero");
        let den_low_coeff = den.coeff(den_low);
        if self.is_zero() {
            return Ok(QPoly::zero());
        }
        // Any exact quotient has top exponent max(self) - max(den); once the
        // running quotient exponent passes that, the division cannot close.
        let quot_max = self.max_exp().expect("nonzero") - den_high;
        let mut rem = self.clone();
        let mut quot = QPoly::zero();
        while let Some(low) = rem.min_exp() {
            let e = low - den_low;
            if e > quot_max {
                return Err(Error::NonDivisible);
            }
            let c = rem.coeff(low);
            let (q, r) = (&c / &den_low_coeff, &c % &den_low_coeff);
            if !r.is_zero() {
                return Err(Error::NonDivisible);
            }
            quot.add_term(e, &q);
            let neg_q = -q;
            rem.add_scaled(den, &neg_q, e);
        }
        Ok(quot)
    }

    /// Truncated power-series quotient `canonical(self) / canonical(den)`
    /// mod `q^order`. The denominator's lowest coefficient must be `±1`.
    pub fn series_div(&self, den: &QPoly, order: i64) -> Result<QPoly> {
        let den_c = den.canonical();
        if den_c.normalized.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let lead = den_c.normalized.coeff(QExp(0));
        if !lead.is_one() {
            return Err(Error::NonUnitLeadingTerm(lead.to_string()));
        }
        let cut = 4 * order;
        let num = self.canonical().normalized.truncate_quarter(cut);
        let den = den_c.normalized.truncate_quarter(cut);
        let mut quot = QPoly::zero();
        let mut rem = num;
        while let Some(low) = rem.min_exp() {
            if low.0 >= cut {
                break;
            }
            let c = rem.coeff(low);
            quot.add_term(low, &c);
            let neg_c = -c;
            rem.add_scaled(&den, &neg_c, low);
            rem = rem.truncate_quarter(cut);
        }
        Ok(quot)
    }

    /// Serialize to the shared JSON schema
    /// `{"variable":"q","terms":[[e,"c"],...]}`.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("QPoly serialization cannot fail")
    }
}

impl Add for &QPoly {
    type Output = QPoly;
    fn add(self, rhs: &QPoly) -> QPoly {
        let mut out = self.clone();
        for (e, c) in rhs.iter_terms() {
            out.add_term(e, c);
        }
        out
    }
}

impl Sub for &QPoly {
    type Output = QPoly;
    fn sub(self, rhs: &QPoly) -> QPoly {
        let mut out = self.clone();
        for (e, c) in rhs.iter_terms() {
            out.add_term(e, &-c.clone());
        }
        out
    }
}

impl Neg for &QPoly {
    type Output = QPoly;
    fn neg(self) -> QPoly {
        QPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c.clone())).collect(),
        }
    }
}

impl Mul for &QPoly {
    type Output = QPoly;
    fn mul(self, rhs: &QPoly) -> QPoly {
        let mut out = QPoly::zero();
        if self.is_zero() || rhs.is_zero() {
            return out;
        }
        // Iterate the smaller operand on the outside.
        let (small, large) = if self.num_terms() <= rhs.num_terms() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        for (e, c) in small.iter_terms() {
            out.add_scaled(large, c, e);
        }
        out
    }
}

impl fmt::Display for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.iter_terms() {
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let show_coeff = !mag.is_one() || e == QExp(0);
            if show_coeff {
                write!(f, "{mag}")?;
            }
            if e != QExp(0) {
                if show_coeff {
                    write!(f, "*")?;
                }
                if e == QExp(4) {
                    write!(f, "q")?;
                } else if e.0 % 4 == 0 {
                    write!(f, "q^{}", e.0 / 4)?;
                } else {
                    write!(f, "q^({})", e)?;
                }
            }
        }
        Ok(())
    }
}

impl Serialize for QPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let terms: Vec<(i64, String)> = self
            .iter_terms()
            .map(|(e, c)| (e.0, c.to_string()))
            .collect();
        let mut st = serializer.serialize_struct("QPoly", 2)?;
        st.serialize_field("variable", "q")?;
        st.serialize_field("terms", &terms)?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for QPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(serde::Deserialize)]
        struct Raw {
            variable: String,
            terms: Vec<(i64, String)>,
        }
        let raw = Raw::deserialize(deserializer)?;
        if raw.variable != "q" {
            return Err(D::Error::custom(format!(
                "expected variable \"q\", found {:?}",
                raw.variable
            )));
        }
        let mut p = QPoly::zero();
        for (e, c) in raw.terms {
            let c: BigInt = c
                .parse()
                .map_err(|_| D::Error::custom(format!("bad coefficient {c:?}")))?;
            p.add_term(QExp(e), &c);
        }
        Ok(p)
    }
}

/// The result of canonicalizing a polynomial: `sign * q^{shift} * normalized`
/// reconstructs the input, `normalized` starts with a positive coefficient at
/// `q^0` (or is zero).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CanonicalForm {
    pub normalized: QPoly,
    pub sign: Sign,
    pub shift: QExp,
}

impl CanonicalForm {
    pub fn reconstruct(&self) -> QPoly {
        let c = BigInt::from(self.sign.as_int());
        self.normalized.mul_monomial(&c, self.shift)
    }
}

/// The q-Pochhammer symbol `(a; q)_k = prod_{j=0}^{k-1} (1 - a q^j)`.
///
/// `k = None` means the infinite product, truncated mod `q^order`; this
/// requires `exp(a) > 0` so that all but finitely many factors are
/// `1 mod q^order`. For finite `k` the result is exact and `order` is
/// ignored.
pub fn pochhammer(a: SignedMonomial, k: Option<u64>, order: i64) -> Result<QPoly> {
    match k {
        Some(k) => {
            let mut acc = QPoly::one();
            for j in 0..k as i64 {
                let factor = &QPoly::one() - &(a * SignedMonomial::q_pow(j)).to_poly();
                acc = &acc * &factor;
            }
            Ok(acc)
        }
        None => {
            if a.exp.0 <= 0 {
                return Err(Error::DivergentProduct);
            }
            let cut = 4 * order;
            let mut acc = QPoly::one();
            let mut j = 0;
            while a.exp.0 + 4 * j < cut {
                let factor = &QPoly::one() - &(a * SignedMonomial::q_pow(j)).to_poly();
                acc = (&acc * &factor).truncate_quarter(cut);
                j += 1;
            }
            Ok(acc)
        }
    }
}

/// `(q; q)_k`, the finite Euler product.
pub fn qq_pochhammer(k: u64) -> QPoly {
    pochhammer(SignedMonomial::q_pow(1), Some(k), 0).expect("finite product")
}

/// The Gaussian binomial `[n choose k]_q = (q;q)_n / ((q;q)_{n-k} (q;q)_k)`.
pub fn gauss_binomial(n: u64, k: u64) -> Result<QPoly> {
    if k > n {
        return Err(Error::OutOfRange(format!(
            "gauss_binomial requires 0 <= k <= n, got n={n}, k={k}"
        )));
    }
    let num = qq_pochhammer(n);
    let den = &qq_pochhammer(n - k) * &qq_pochhammer(k);
    num.exact_div(&den)
}

/// The quantum brace `{m} = q^{m/2} - q^{-m/2}`, or with `factorial` the
/// product `{m}! = {1}{2}...{m}` (`{0}! = 1`).
pub fn brace(m: u64, factorial: bool) -> QPoly {
    let single = |m: i64| -> QPoly {
        if m == 0 {
            return QPoly::zero();
        }
        let mut p = QPoly::zero();
        p.add_term(QExp::half(m), &BigInt::one());
        p.add_term(QExp::half(-m), &-BigInt::one());
        p
    };
    if !factorial {
        return single(m as i64);
    }
    let mut acc = QPoly::one();
    for i in 1..=m as i64 {
        acc = &acc * &single(i);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q() -> QPoly {
        QPoly::from_q_terms([(1, 1)])
    }

    #[test]
    fn mul_difference_of_squares() {
        let a = QPoly::from_q_terms([(0, 1), (1, -1)]); // 1 - q
        let b = QPoly::from_q_terms([(0, 1), (1, 1)]); // 1 + q
        assert_eq!(&a * &b, QPoly::from_q_terms([(0, 1), (2, -1)]));
    }

    #[test]
    fn add_inverse_law() {
        let p = QPoly::from_terms([(-3, 4), (0, -2), (5, 7)]);
        assert!((&p + &-&p).is_zero());
    }

    #[test]
    fn quarter_exponent_bookkeeping() {
        // (q^{1/2} - q^{-1/2})(q^{1/2} + q^{-1/2}) = q - q^{-1}
        let a = QPoly::from_terms([(2, 1), (-2, -1)]);
        let b = QPoly::from_terms([(2, 1), (-2, 1)]);
        assert_eq!(&a * &b, QPoly::from_q_terms([(1, 1), (-1, -1)]));
    }

    #[test]
    fn canonical_paper_example() {
        // -q^{-4} + 2q^{-3} - 3 + 11q  ->  1 - 2q + 3q^4 - 11q^5, sign -, shift -4
        let p = QPoly::from_q_terms([(-4, -1), (-3, 2), (0, -3), (1, 11)]);
        let c = p.canonical();
        assert_eq!(
            c.normalized,
            QPoly::from_q_terms([(0, 1), (1, -2), (4, 3), (5, -11)])
        );
        assert_eq!(c.sign, Sign::Minus);
        assert_eq!(c.shift, QExp::whole(-4));
        assert_eq!(c.reconstruct(), p);
    }

    #[test]
    fn canonical_trivial_cases() {
        let c = QPoly::one().canonical();
        assert!(c.normalized.is_one());
        assert_eq!((c.sign, c.shift), (Sign::Plus, QExp(0)));

        let c = QPoly::from_q_terms([(3, -1)]).canonical();
        assert!(c.normalized.is_one());
        assert_eq!((c.sign, c.shift), (Sign::Minus, QExp::whole(3)));

        let c = QPoly::zero().canonical();
        assert!(c.normalized.is_zero());
        assert_eq!((c.sign, c.shift), (Sign::Plus, QExp(0)));
    }

    #[test]
    fn agree_mod_paper_example() {
        let a = QPoly::from_q_terms([(-4, -1), (-3, 2), (0, -3), (1, 11)]);
        let b = QPoly::from_q_terms([(0, 1), (1, -2), (4, 3)]);
        assert!(a.agree_mod(&b, 5));
        assert!(!a.agree_mod(&b, 6));
    }

    #[test]
    fn agree_mod_sign_of_linear_term() {
        let a = QPoly::from_q_terms([(0, 1), (1, -1)]);
        let b = QPoly::from_q_terms([(0, 1), (1, 1)]);
        assert!(!a.agree_mod(&b, 2));
        assert!(a.agree_mod(&b, 1));
    }

    #[test]
    fn exact_div_long_division() {
        // (1 - q - q^2 + q^5) / (q^2 - 1) = -1 + q + q^3
        let num = QPoly::from_q_terms([(0, 1), (1, -1), (2, -1), (5, 1)]);
        let den = QPoly::from_q_terms([(2, 1), (0, -1)]);
        let quot = num.exact_div(&den).unwrap();
        assert_eq!(quot, QPoly::from_q_terms([(0, -1), (1, 1), (3, 1)]));
        assert_eq!(&quot * &den, num);
    }

    #[test]
    fn exact_div_unit_and_failure() {
        let p = QPoly::from_q_terms([(0, 3), (2, -5)]);
        assert_eq!(p.exact_div(&QPoly::one()).unwrap(), p);
        let num = QPoly::from_q_terms([(0, 1), (1, -1)]);
        let den = QPoly::from_q_terms([(0, 1), (2, -1)]);
        assert_eq!(num.exact_div(&den), Err(Error::NonDivisible));
    }

    #[test]
    fn series_div_geometric() {
        let one = QPoly::one();
        let den = &one - &q();
        assert_eq!(
            one.series_div(&den, 4).unwrap(),
            QPoly::from_q_terms([(0, 1), (1, 1), (2, 1), (3, 1)])
        );
    }

    #[test]
    fn series_div_exact_case() {
        let num = QPoly::from_q_terms([(0, 1), (2, -1)]);
        let den = &QPoly::one() - &q();
        assert_eq!(
            num.series_div(&den, 4).unwrap(),
            QPoly::from_q_terms([(0, 1), (1, 1)])
        );
    }

    #[test]
    fn series_div_hikami_prefix() {
        // canonical(q + q^6 - 1 - q^3) / canonical(q^3 - 1) mod q^3 = 1 - q
        let num = QPoly::from_q_terms([(1, 1), (6, 1), (0, -1), (3, -1)]);
        let den = QPoly::from_q_terms([(3, 1), (0, -1)]);
        assert_eq!(
            num.series_div(&den, 3).unwrap(),
            QPoly::from_q_terms([(0, 1), (1, -1)])
        );
    }

    #[test]
    fn series_div_rejects_non_unit() {
        let num = QPoly::one();
        let den = QPoly::from_q_terms([(0, 2), (1, 1)]);
        assert!(matches!(
            num.series_div(&den, 3),
            Err(Error::NonUnitLeadingTerm(_))
        ));
    }

    #[test]
    fn pochhammer_finite() {
        // (q;q)_3 = (1-q)(1-q^2)(1-q^3)
        let p = qq_pochhammer(3);
        assert_eq!(
            p,
            QPoly::from_q_terms([(0, 1), (1, -1), (2, -1), (4, 1), (5, 1), (6, -1)])
        );
        assert!(pochhammer(SignedMonomial::q_pow(2), Some(0), 0)
            .unwrap()
            .is_one());
    }

    /// Independent oracle: Euler's pentagonal number theorem gives
    /// `(q;q)_inf = sum_k (-1)^k q^{k(3k-1)/2}` over all integers k.
    fn pentagonal_series(order: i64) -> QPoly {
        let mut p = QPoly::zero();
        for k in -200i64..=200 {
            let e = k * (3 * k - 1) / 2;
            if (0..order).contains(&e) {
                p.add_term(
                    QExp::whole(e),
                    &BigInt::from((-1i64).pow(k.rem_euclid(2) as u32)),
                );
            }
        }
        p
    }

    #[test]
    fn pochhammer_infinite_pentagonal() {
        let p = pochhammer(SignedMonomial::q_pow(1), None, 8).unwrap();
        assert_eq!(
            p,
            QPoly::from_q_terms([(0, 1), (1, -1), (2, -1), (5, 1), (7, 1)])
        );
        let p30 = pochhammer(SignedMonomial::q_pow(1), None, 30).unwrap();
        assert_eq!(p30, pentagonal_series(30));
    }

    #[test]
    fn pochhammer_divergent() {
        assert_eq!(
            pochhammer(SignedMonomial::q_pow(0), None, 5),
            Err(Error::DivergentProduct)
        );
    }

    #[test]
    fn gauss_binomial_values() {
        assert_eq!(
            gauss_binomial(4, 2).unwrap(),
            QPoly::from_q_terms([(0, 1), (1, 1), (2, 2), (3, 1), (4, 1)])
        );
        assert!(gauss_binomial(7, 0).unwrap().is_one());
        assert_eq!(
            gauss_binomial(2, 1).unwrap(),
            QPoly::from_q_terms([(0, 1), (1, 1)])
        );
        assert!(gauss_binomial(2, 3).is_err());
    }

    #[test]
    fn brace_values() {
        assert_eq!(brace(2, false), QPoly::from_q_terms([(1, 1), (-1, -1)]));
        // {2}! = {1}{2} = q^{3/2} - q^{1/2} - q^{-1/2} + q^{-3/2}
        assert_eq!(
            brace(2, true),
            QPoly::from_terms([(6, 1), (2, -1), (-2, -1), (-6, 1)])
        );
    }

    #[test]
    fn brace_factorial_identity() {
        // {m}! = (-1)^m q^{-m(m+1)/4} (q;q)_m for 0 <= m <= 12. Each factor
        // is {i} = -q^{-i/2}(1 - q^i), so the product carries (-1)^m.
        for m in 0..=12u64 {
            let lhs = brace(m, true);
            let mut rhs = qq_pochhammer(m).shift(QExp(-((m * (m + 1)) as i64)));
            if m % 2 == 1 {
                rhs = -&rhs;
            }
            assert_eq!(lhs, rhs, "brace factorial identity fails at m={m}");
        }
    }

    #[test]
    fn json_round_trip() {
        let p = QPoly::from_terms([(-5, 3), (0, -7), (11, 1)]);
        let js = p.to_json();
        assert_eq!(js["variable"], "q");
        let back: QPoly = serde_json::from_value(js).unwrap();
        assert_eq!(back, p);
    }

    #[test]
    fn display_formatting() {
        let p = QPoly::from_q_terms([(0, 1), (1, -1), (3, -1)]);
        assert_eq!(p.to_string(), "1 - q - q^3");
        let h = QPoly::from_terms([(2, 1), (-2, -1)]);
        assert_eq!(h.to_string(), "-q^(-1/2) + q^(1/2)");
        assert_eq!(QPoly::zero().to_string(), "0");
    }

    fn arb_qpoly() -> impl Strategy<Value = QPoly> {
        proptest::collection::vec(((-40i64..=40), (-1_000_000i64..=1_000_000)), 0..8)
            .prop_map(QPoly::from_terms)
    }

    proptest! {
        #[test]
        fn ring_axioms(a in arb_qpoly(), b in arb_qpoly(), c in arb_qpoly()) {
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        }

        #[test]
        fn canonical_idempotent(a in arb_qpoly()) {
            let c = a.canonical();
            let c2 = c.normalized.canonical();
            prop_assert_eq!(&c2.normalized, &c.normalized);
            prop_assert_eq!(c2.sign, Sign::Plus);
            prop_assert_eq!(c2.shift, QExp(0));
            prop_assert_eq!(c.reconstruct(), a);
        }

        #[test]
        fn agree_mod_is_equivalence(a in arb_qpoly(), b in arb_qpoly(), c in arb_qpoly(), n in 1i64..10) {
            prop_assert!(a.agree_mod(&a, n));
            if a.agree_mod(&b, n) {
                prop_assert!(b.agree_mod(&a, n));
                if b.agree_mod(&c, n) {
                    prop_assert!(a.agree_mod(&c, n));
                }
                for m in 1..=n {
                    prop_assert!(a.agree_mod(&b, m));
                }
            }
        }

        #[test]
        fn exact_div_inverts_mul(a in arb_qpoly(), b in arb_qpoly()) {
            prop_assume!(!a.is_zero() && !b.is_zero());
            let prod = &a * &b;
            prop_assert_eq!(prod.exact_div(&b).unwrap(), a);
        }
    }
}

//! Kauffman-bracket skein quantities in the variable `A`, specialized to
//! closures of 2-strand twist regions.
//!
//! Loop values `Delta_n`, theta-graph evaluations, and the vertex twist
//! coefficient combine through fusion into a closed form for the unreduced
//! bracket of the `(2, m)` torus link with both strands colored `n`:
//! `sum_j gamma(n,n,2j)^{|m|} Delta_{2j}`. Dividing by `Delta_n` and
//! converting with `q = A^{-4}` gives the reduced colored Jones polynomial
//! at color `N = n + 1`, in exact agreement with the state sum.

use num_bigint::BigInt;

use crate::qlaurent::{QExp, QPoly, Sign};
use crate::{Error, Result};

/// A Laurent polynomial in the skein variable `A`. Stored sparsely with
/// integer `A`-exponents; `q = A^{-4}` maps `A`-exponent `k` to the
/// quarter-unit `q`-exponent `-k`.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct APoly(QPoly);

impl APoly {
    pub fn zero() -> Self {
        APoly(QPoly::zero())
    }

    pub fn one() -> Self {
        APoly(QPoly::one())
    }

    /// The monomial `c * A^k`.
    pub fn monomial(c: i64, k: i64) -> Self {
        APoly(QPoly::monomial(BigInt::from(c), QExp(k)))
    }

    pub fn from_terms<I: IntoIterator<Item = (i64, i64)>>(iter: I) -> Self {
        APoly(QPoly::from_terms(iter))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn add(&self, rhs: &APoly) -> APoly {
        APoly(&self.0 + &rhs.0)
    }

    pub fn mul(&self, rhs: &APoly) -> APoly {
        APoly(&self.0 * &rhs.0)
    }

    pub fn neg(&self) -> APoly {
        APoly(-&self.0)
    }

    pub fn pow(&self, k: u32) -> APoly {
        APoly(self.0.pow(k))
    }

    pub fn exact_div(&self, den: &APoly) -> Result<APoly> {
        self.0.exact_div(&den.0).map(APoly)
    }

    /// Convert to the `q` variable via `q = A^{-4}`.
    pub fn to_q(&self) -> QPoly {
        // A-exponent k becomes quarter-unit exponent -k.
        self.0.reverse()
    }
}

/// The loop value of the Jones-Wenzl idempotent:
/// `Delta_n = (-1)^n (A^{2(n+1)} - A^{-2(n+1)}) / (A^2 - A^{-2})`, expanded
/// as the telescoped sum `(-1)^n sum_{i=0}^n A^{2n-4i}`. `Delta_{-1} = 0`.
pub fn delta_n(n: i64) -> Result<APoly> {
    if n < -1 {
        return Err(Error::OutOfRange(format!("delta_n needs n >= -1, got {n}")));
    }
    if n == -1 {
        return Ok(APoly::zero());
    }
    let sign = if n % 2 == 0 { 1 } else { -1 };
    Ok(APoly::from_terms((0..=n).map(|i| (2 * n - 4 * i, sign))))
}

/// `Delta_n! = Delta_n Delta_{n-1} ... Delta_1`, with the empty products
/// `Delta_0! = Delta_{-1}! = 1`.
pub fn delta_fact(n: i64) -> Result<APoly> {
    if n < -1 {
        return Err(Error::OutOfRange(format!(
            "delta_fact needs n >= -1, got {n}"
        )));
    }
    let mut acc = APoly::one();
    for i in 1..=n {
        acc = acc.mul(&delta_n(i)?);
    }
    Ok(acc)
}

/// Admissibility of a colored trivalent vertex: `a + b + c` even and the
/// triangle inequality `|a - b| <= c <= a + b`.
pub fn admissible(a: u64, b: u64, c: u64) -> bool {
    (a + b + c).is_multiple_of(2) && a.abs_diff(b) <= c && c <= a + b
}

/// Numerator and denominator of the theta-graph evaluation for an
/// admissible triple, via the factorial quotient with `a = y+z`, `b = z+x`,
/// `c = x+y`. Theta evaluations are rational functions of `A` in general
/// (already theta(2,2,2) = Delta_3 Delta_2 / Delta_1^2 has no polynomial
/// form), so the raw fraction is exposed alongside [`theta_coeff`].
pub fn theta_coeff_fraction(a: u64, b: u64, c: u64) -> Result<(APoly, APoly)> {
    if !admissible(a, b, c) {
        return Err(Error::NotAdmissible(a as usize, b as usize, c as usize));
    }
    let x = ((b + c) as i64 - a as i64) / 2;
    let y = ((a + c) as i64 - b as i64) / 2;
    let z = ((a + b) as i64 - c as i64) / 2;
    let num = delta_fact(x + y + z)?
        .mul(&delta_fact(x - 1)?)
        .mul(&delta_fact(y - 1)?)
        .mul(&delta_fact(z - 1)?);
    let den = delta_fact(y + z - 1)?
        .mul(&delta_fact(z + x - 1)?)
        .mul(&delta_fact(x + y - 1)?);
    Ok((num, den))
}

/// The theta-graph evaluation as a Laurent polynomial, when it is one;
/// triples whose value is genuinely rational give [`Error::NonDivisible`].
/// The fusion formula only ever uses theta in ratios where the denominators
/// cancel, so the polynomial cases (e.g. `theta(n,n,0) = Delta_n`) cover
/// everything the twist-region closure needs.
pub fn theta_coeff(a: u64, b: u64, c: u64) -> Result<APoly> {
    let (num, den) = theta_coeff_fraction(a, b, c)?;
    num.exact_div(&den)
}

/// The vertex twist coefficient
/// `gamma(a,b,c) = (-1)^{(a+b-c)/2} A^{a+b-c+(a^2+b^2-c^2)/2}`.
/// `Sign::Minus` substitutes `A -> A^{-1}`, which is the coefficient for the
/// other crossing sign.
pub fn gamma_twist(a: u64, b: u64, c: u64, sign: Sign) -> Result<APoly> {
    if !admissible(a, b, c) {
        return Err(Error::NotAdmissible(a as usize, b as usize, c as usize));
    }
    let (a, b, c) = (a as i64, b as i64, c as i64);
    let parity = (a + b - c) / 2;
    let exp = a + b - c + (a * a + b * b - c * c) / 2;
    let exp = match sign {
        Sign::Plus => exp,
        Sign::Minus => -exp,
    };
    let coeff = if parity % 2 == 0 { 1 } else { -1 };
    Ok(APoly::monomial(coeff, exp))
}

/// Which `gamma` variable convention a half twist of the given sign carries.
/// Calibrated once against the bracket oracle at `N = 2`: a positive half
/// twist uses the `A -> A^{-1}` form, so that the reduced `(2, 3)` value
/// matches the positive trefoil.
pub fn gamma_sign_for_twist(m: i64) -> Sign {
    if m > 0 {
        Sign::Minus
    } else {
        Sign::Plus
    }
}

/// Unreduced bracket of the `(2, m)` torus link with both strands colored
/// `n`: fusing the two strands and absorbing `|m|` half twists gives
/// `sum_{j=0}^{n} gamma(n,n,2j)^{|m|} Delta_{2j}`.
pub fn torus2m_bracket(m: i64, n: u64) -> Result<APoly> {
    if m == 0 {
        return Err(Error::OutOfRange("torus2m_bracket needs m != 0".into()));
    }
    let sign = gamma_sign_for_twist(m);
    let mut sum = APoly::zero();
    for j in 0..=n {
        let gamma = gamma_twist(n, n, 2 * j, sign)?;
        let term = gamma
            .pow(m.unsigned_abs() as u32)
            .mul(&delta_n(2 * j as i64)?);
        sum = sum.add(&term);
    }
    Ok(sum)
}

/// Reduced colored Jones polynomial of the `(2, m)` torus link at color
/// `N = n + 1` via the skein route: divide the unreduced bracket by
/// `Delta_n` and convert to `q`.
pub fn torus2m_reduced_jones(m: i64, n: u64) -> Result<QPoly> {
    let bracket = torus2m_bracket(m, n)?;
    let reduced = bracket.exact_div(&delta_n(n as i64)?)?;
    Ok(reduced.to_q())
}

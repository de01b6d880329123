//! Closed-form colored Jones expressions for 2-strand torus knots and
//! links, the general bilateral twist sum for `(m, p)` torus knots, and the
//! walk-derived multisums.
//!
//! Orientation convention, verified against the state sum in the tests:
//! each bilateral sum below equals `(q^N - 1) J_N` of the NEGATIVE torus
//! knot or link of its family, up to a unit `±q^s`. The ascending end of
//! its canonical form is therefore the tail of the negative knot, which is
//! the same thing as the head of the positive one; the descending end
//! carries the positive knot's trivial tail.

use num_bigint::BigInt;
use num_traits::One;

use crate::qlaurent::{gauss_binomial, qq_pochhammer, QExp, QPoly};
use crate::series::TruncatedSeries;
use crate::{gcd, Error, Result};

/// How a closed-form torus value is normalized before being returned.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum TorusMode {
    /// The canonical representative of `J_N` of the negative torus knot,
    /// obtained by exact division by `1 - q^N`.
    Exact,
    /// Ascending prefix mod `q^N`: tail of the negative knot (equivalently
    /// the head of the positive one). Skips the division, which is
    /// invisible below `q^N`.
    Tail,
    /// Prefix after `q -> 1/q`: tail of the positive braid closure, the
    /// constant series 1 for these families.
    Head,
}

fn normalize(sum: &QPoly, color: i64, mode: TorusMode) -> Result<QPoly> {
    let one_minus_qn = &QPoly::one() - &QPoly::monomial(BigInt::one(), QExp::whole(color));
    match mode {
        TorusMode::Exact => sum.canonical().normalized.exact_div(&one_minus_qn),
        TorusMode::Tail => Ok(sum.canonical().normalized.truncate_q(color)),
        TorusMode::Head => Ok(sum.reverse().canonical().normalized.truncate_q(color)),
    }
}

/// Morton's bilateral sum for the negative `(2, 2k+1)` torus knot:
/// `(q^N - 1) J_N = ±q^s sum_{R=-N+1}^{N} (-1)^R q^{k(R^2-R) + (R^2+R)/2}`.
pub fn morton_sum(k: u64, color: u64) -> QPoly {
    let k = k as i64;
    let n = color as i64;
    let mut sum = QPoly::zero();
    for r in (1 - n)..=n {
        let quarter = 4 * k * (r * r - r) + 2 * (r * r + r);
        let coeff = BigInt::from(if r.rem_euclid(2) == 0 { 1 } else { -1 });
        sum.add_term(QExp(quarter), &coeff);
    }
    sum
}

/// Colored Jones of the negative `(2, 2k+1)` torus knot from Morton's sum.
pub fn morton_2odd(k: u64, color: u64, mode: TorusMode) -> Result<QPoly> {
    if k < 1 || color < 1 {
        return Err(Error::OutOfRange("morton_2odd needs k >= 1, N >= 1".into()));
    }
    normalize(&morton_sum(k, color), color as i64, mode)
}

/// Hikami's bilateral sum for the negative `(2, 2k)` torus link, equal to
/// `(q^N - 1) J_N` up to a unit. For `N = 1` this is `q - 1` (the empty
/// displayed sum corresponds to `J_1 = 1`).
pub fn hikami_sum_raw(k: u64, color: u64) -> QPoly {
    let ki = k as i64;
    let n = color as i64;
    if n == 1 {
        return QPoly::from_q_terms([(1, 1), (0, -1)]);
    }
    let mut sum = QPoly::zero();
    for r in 0..(n - 1) {
        sum.add_term(QExp::whole(ki * r * r + (ki + 1) * r + 1), &BigInt::one());
        sum.add_term(QExp::whole(ki * r * r + (ki - 1) * r), &-BigInt::one());
    }
    sum
}

/// Series class of the colored Jones of the negative `(2, 2k)` torus link.
/// The reduced colored Jones of a link is a rational function here, so only
/// the series class is returned; the division is a truncated power-series
/// division by `1 - q^N`.
pub fn hikami_2even(k: u64, color: u64, order: i64) -> Result<TruncatedSeries> {
    if k < 1 || color < 1 {
        return Err(Error::OutOfRange(
            "hikami_2even needs k >= 1, N >= 1".into(),
        ));
    }
    let n = color as i64;
    let sum = hikami_sum_raw(k, color);
    let den = &QPoly::one() - &QPoly::monomial(BigInt::one(), QExp::whole(n));
    let series = sum.series_div(&den, order)?;
    Ok(TruncatedSeries::new(order, series))
}

/// The bilateral twist sum for a coprime `(m, p)` torus knot:
/// `sum_r q^{psi(r + 1/m)} - q^{psi(r)}` with `psi(r) = r^2 mp - rp + rm`
/// and `r` stepping by integers from `-(N-1)/2` to `(N-1)/2` (half-integers
/// when `N` is even; all exponents land on the quarter lattice).
pub fn psi_sum_raw(m: u64, p: u64, color: u64) -> QPoly {
    let (m, p, n) = (m as i64, p as i64, color as i64);
    let mut sum = QPoly::zero();
    // t = 2r runs over -(N-1), -(N-1)+2, ..., N-1.
    let mut t = -(n - 1);
    while t < n {
        // psi(r + 1/m) = mp r^2 + pr + mr + 1 and psi(r), in quarter units
        let plus = m * p * t * t + 2 * p * t + 2 * m * t + 4;
        let minus = m * p * t * t - 2 * p * t + 2 * m * t;
        sum.add_term(QExp(plus), &BigInt::one());
        sum.add_term(QExp(minus), &-BigInt::one());
        t += 2;
    }
    sum
}

/// Colored Jones class of the `(m, p)` torus knot from the twist sum.
/// Requires `gcd(m, p) = 1` (a knot). See [`TorusMode`] for which end is
/// which; `Exact` and `Tail` are oriented to the negative knot.
pub fn psi_sum(m: u64, p: u64, color: u64, mode: TorusMode) -> Result<QPoly> {
    if m < 2 || color < 1 || p == 0 {
        return Err(Error::OutOfRange(
            "psi_sum needs m >= 2, p >= 1, N >= 1".into(),
        ));
    }
    if gcd(m as i64, p as i64) != 1 {
        return Err(Error::NotCoprime(m as i64, p as i64));
    }
    normalize(&psi_sum_raw(m, p, color), color as i64, mode)
}

/// Walk-model closed form for the positive `(2,5)` torus knot:
/// `q^{2(N-1)} sum_{n=0}^{N-1} sum_{k=0}^{n} [n choose k]_q
///  q^{nN + k(2N-1-n)} prod_{i=0}^{n-1} (1 - q^{N-1-i})`.
pub fn walk_25(color: u64) -> Result<QPoly> {
    if color < 1 {
        return Err(Error::OutOfRange("walk_25 needs N >= 1".into()));
    }
    let n_color = color as i64;
    let mut total = QPoly::zero();
    for n in 0..n_color {
        // prod_{i=0}^{n-1} (1 - q^{N-1-i})
        let mut prod = QPoly::one();
        for i in 0..n {
            let factor =
                &QPoly::one() - &QPoly::monomial(BigInt::one(), QExp::whole(n_color - 1 - i));
            prod = &prod * &factor;
        }
        for k in 0..=n {
            let binom = gauss_binomial(n as u64, k as u64)?;
            let shift = QExp::whole(n * n_color + k * (2 * n_color - 1 - n));
            total = &total + &(&binom * &prod).shift(shift);
        }
    }
    Ok(total.shift(QExp::whole(2 * (n_color - 1))))
}

/// Tail-side multisum for the negative `(2, 2k+1)` torus knot coming from
/// the walk model:
/// `prod_{j=1}^{N-1}(1-q^j) * sum q^{sum_j N_j(N_j+1)} / prod (q;q)_{n_i}`
/// over `n_1, ..., n_{k-1} >= 0` with `n_1 + ... + n_{k-1} <= N-1` and
/// `N_j = n_1 + ... + n_j`. For `k = 1` the multisum is empty and the
/// prefactor alone remains. Truncated mod `q^order`; the expression matches
/// `J_N` only below `q^N`, so `order <= N` is the useful range.
pub fn walk_2odd_tail(k: u64, color: u64, order: i64) -> Result<TruncatedSeries> {
    if k < 1 || color < 1 {
        return Err(Error::OutOfRange(
            "walk_2odd_tail needs k >= 1, N >= 1".into(),
        ));
    }
    let prefactor = qq_pochhammer(color - 1).truncate_q(order);
    if k == 1 {
        return Ok(TruncatedSeries::new(order, prefactor));
    }
    let budget = color as i64 - 1;
    let mut sum = QPoly::zero();
    #[allow(clippy::too_many_arguments)]
    fn recurse(
        depth: u64,
        k: u64,
        partial_n: i64,
        exp_so_far: i64,
        budget: i64,
        order: i64,
        sum: &mut QPoly,
        inv_acc: &QPoly,
    ) {
        if depth == k - 1 {
            sum.add_scaled(inv_acc, &BigInt::one(), QExp::whole(exp_so_far));
            return;
        }
        let remaining = (k - 1 - depth) as i64;
        let mut n = 0i64;
        while partial_n + n <= budget {
            let nj = partial_n + n;
            let contrib = nj * (nj + 1);
            if exp_so_far + remaining * contrib >= order {
                break;
            }
            let inv_n = QPoly::one()
                .series_div(&qq_pochhammer(n as u64), order)
                .expect("(q;q)_n is a unit series");
            let inv = (inv_acc * &inv_n).truncate_q(order);
            recurse(
                depth + 1,
                k,
                nj,
                exp_so_far + contrib,
                budget,
                order,
                sum,
                &inv,
            );
            n += 1;
        }
    }
    recurse(0, k, 0, 0, budget, order, &mut sum, &QPoly::one());
    let poly = (&sum.truncate_q(order) * &prefactor).truncate_q(order);
    Ok(TruncatedSeries::new(order, poly))
}

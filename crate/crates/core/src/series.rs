//! Truncated q-series: Ramanujan theta `f(a,b)`, the false theta `Psi(a,b)`,
//! the Euler product, and both sides of the Andrews-Gordon identities.
//!
//! All series here are power series in `q` with integer coefficients,
//! represented exactly up to a stated order.

use num_bigint::BigInt;
use num_traits::One;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::qlaurent::{pochhammer, qq_pochhammer, QExp, QPoly, Sign, SignedMonomial};
use crate::{Error, Result};

/// A power series prefix: `poly` holds the exact coefficients of
/// `q^0 .. q^{order-1}`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TruncatedSeries {
    order: i64,
    poly: QPoly,
}

impl TruncatedSeries {
    /// Wrap a polynomial as a series prefix, reducing mod `q^order`.
    /// Panics if the polynomial has terms below `q^0`.
    pub fn new(order: i64, poly: QPoly) -> Self {
        let poly = poly.truncate_q(order);
        assert!(
            poly.min_exp().is_none_or(|e| e.0 >= 0),
            "series prefix has terms below q^0"
        );
        TruncatedSeries { order, poly }
    }

    pub fn order(&self) -> i64 {
        self.order
    }

    pub fn poly(&self) -> &QPoly {
        &self.poly
    }

    pub fn one(order: i64) -> Self {
        TruncatedSeries::new(order, QPoly::one())
    }

    /// Re-truncate to a smaller order.
    pub fn truncate(&self, order: i64) -> Self {
        assert!(order <= self.order, "cannot extend a truncated series");
        TruncatedSeries::new(order, self.poly.clone())
    }

    /// Product, valid to the smaller of the two orders.
    pub fn mul(&self, rhs: &TruncatedSeries) -> TruncatedSeries {
        let order = self.order.min(rhs.order);
        TruncatedSeries::new(order, &self.poly * &rhs.poly)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("series serialization cannot fail")
    }
}

impl Serialize for TruncatedSeries {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("TruncatedSeries", 2)?;
        st.serialize_field("order", &self.order)?;
        st.serialize_field("poly", &self.poly)?;
        st.end()
    }
}

impl std::fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} + O(q^{})", self.poly, self.order)
    }
}

fn check_growth(a: SignedMonomial, b: SignedMonomial) -> Result<()> {
    if a.exp.0 + b.exp.0 <= 0 {
        return Err(Error::DivergentSeries);
    }
    Ok(())
}

/// One theta term `a^{k(k+1)/2} b^{k(k-1)/2}` as `(sign, quarter exponent)`.
fn theta_term(a: SignedMonomial, b: SignedMonomial, k: i64) -> (Sign, i64) {
    let t1 = k * (k + 1) / 2;
    let t2 = k * (k - 1) / 2;
    let sign = a.sign.pow(t1) * b.sign.pow(t2);
    (sign, a.exp.0 * t1 + b.exp.0 * t2)
}

fn add_signed(p: &mut QPoly, sign: Sign, quarter: i64, cut: i64) -> Result<()> {
    if quarter < 0 {
        return Err(Error::OutOfRange(
            "theta term below q^0; arguments must have non-negative exponents".into(),
        ));
    }
    if quarter < cut {
        p.add_term(QExp(quarter), &BigInt::from(sign.as_int()));
    }
    Ok(())
}

/// The general Ramanujan theta function
/// `f(a,b) = sum_{k in Z} a^{k(k+1)/2} b^{k(k-1)/2}`, truncated mod
/// `q^order`. Requires `exp(a) + exp(b) > 0` so the bilateral sum settles.
pub fn theta_f(a: SignedMonomial, b: SignedMonomial, order: i64) -> Result<TruncatedSeries> {
    check_growth(a, b)?;
    let cut = 4 * order;
    // Past |k| > |exp(a)-exp(b)| the exponent is monotone in each direction,
    // so it is safe to stop once it clears the cutoff.
    let settle = (a.exp.0 - b.exp.0).abs() + 1;
    let mut poly = QPoly::zero();
    for dir in [1i64, -1] {
        let mut k = if dir == 1 { 0 } else { -1 };
        loop {
            let (sign, quarter) = theta_term(a, b, k);
            add_signed(&mut poly, sign, quarter, cut)?;
            if quarter >= cut && k.abs() > settle {
                break;
            }
            k += dir;
        }
    }
    Ok(TruncatedSeries::new(order, poly))
}

/// Truncated product `prod_{j>=0} (1 - x step^j)` for `exp(step) > 0`.
fn infinite_product(x: SignedMonomial, step: SignedMonomial, order: i64) -> Result<QPoly> {
    if step.exp.0 <= 0 {
        return Err(Error::DivergentProduct);
    }
    if x.exp.0 < 0 {
        return Err(Error::OutOfRange(
            "product argument must have non-negative exponent".into(),
        ));
    }
    let cut = 4 * order;
    let mut acc = QPoly::one();
    let mut j = 0;
    while x.exp.0 + step.exp.0 * j < cut {
        let factor = &QPoly::one() - &(x * step.pow(j)).to_poly();
        acc = (&acc * &factor).truncate_quarter(cut);
        j += 1;
    }
    Ok(acc)
}

/// `f(a,b)` via the Jacobi triple product
/// `(-a; ab)_inf (-b; ab)_inf (ab; ab)_inf`.
pub fn theta_f_product(
    a: SignedMonomial,
    b: SignedMonomial,
    order: i64,
) -> Result<TruncatedSeries> {
    check_growth(a, b)?;
    let ab = a * b;
    let neg = |m: SignedMonomial| SignedMonomial::new(m.sign * Sign::Minus, m.exp);
    let p1 = infinite_product(neg(a), ab, order)?;
    let p2 = infinite_product(neg(b), ab, order)?;
    let p3 = infinite_product(ab, ab, order)?;
    let cut = 4 * order;
    let poly = (&(&p1 * &p2).truncate_quarter(cut) * &p3).truncate_quarter(cut);
    Ok(TruncatedSeries::new(order, poly))
}

/// The false theta function
/// `Psi(a,b) = sum_{k>=0} a^{k(k+1)/2} b^{k(k-1)/2}
///           - sum_{k>=1} a^{k(k-1)/2} b^{k(k+1)/2}`.
pub fn false_theta_psi(
    a: SignedMonomial,
    b: SignedMonomial,
    order: i64,
) -> Result<TruncatedSeries> {
    check_growth(a, b)?;
    let cut = 4 * order;
    let settle = (a.exp.0 - b.exp.0).abs() + 1;
    let mut poly = QPoly::zero();
    let mut k = 0i64;
    loop {
        let (sign, quarter) = theta_term(a, b, k);
        add_signed(&mut poly, sign, quarter, cut)?;
        if k >= 1 {
            // Second sum: a and b exchange roles, with an overall minus.
            let (sign, quarter) = theta_term(b, a, k);
            add_signed(&mut poly, sign * Sign::Minus, quarter, cut)?;
        }
        let both_clear = theta_term(a, b, k).1 >= cut && theta_term(b, a, k).1 >= cut;
        if both_clear && k > settle {
            break;
        }
        k += 1;
    }
    Ok(TruncatedSeries::new(order, poly))
}

/// The Euler function `(q;q)_inf`, which equals `f(-q^2, -q)`.
pub fn euler_inf(order: i64) -> TruncatedSeries {
    let poly = pochhammer(SignedMonomial::q_pow(1), None, order).expect("exp(q) > 0");
    TruncatedSeries::new(order, poly)
}

/// Series inverse of `(q;q)_n` mod `q^order`, for the multisum denominators.
fn inv_qq(n: u64, order: i64) -> QPoly {
    QPoly::one()
        .series_div(&qq_pochhammer(n), order)
        .expect("(q;q)_n has unit lowest term")
}

/// The right-hand side of the Andrews-Gordon identity:
/// `(q;q)_inf * sum_{n_1..n_{k-1} >= 0} q^{sum N_j^2 + N_j} / prod (q;q)_{n_i}`
/// with `N_j = n_1 + ... + n_j`. Equals `f(-q^{2k}, -q)`.
pub fn andrews_gordon_rhs(k: u64, order: i64) -> Result<TruncatedSeries> {
    if k < 2 {
        return Err(Error::OutOfRange(
            "andrews_gordon_rhs requires k >= 2".into(),
        ));
    }
    let mut sum = QPoly::zero();
    // Depth-first over (n_1, ..., n_{k-1}); the exponent only grows with any
    // n_j, and all-zero continuations give the lower bound used to prune.
    fn recurse(
        depth: u64,
        k: u64,
        partial_n: i64,
        exp_so_far: i64,
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
        loop {
            let nj = partial_n + n;
            let contrib = nj * (nj + 1);
            if exp_so_far + remaining * contrib >= order {
                break;
            }
            let inv = &(inv_acc * &inv_qq(n as u64, order)).truncate_q(order);
            recurse(depth + 1, k, nj, exp_so_far + contrib, order, sum, inv);
            n += 1;
        }
    }
    recurse(0, k, 0, 0, order, &mut sum, &QPoly::one());
    let poly = (&sum.truncate_q(order) * euler_inf(order).poly()).truncate_q(order);
    Ok(TruncatedSeries::new(order, poly))
}

/// The three shapes of `Psi(q^3, q)` on page 200 of Ramanujan's lost
/// notebook (plus Entry 9 of the notebooks).
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum P200Form {
    /// `sum_{k>=0} (-1)^k q^{(k^2+k)/2}`
    Alternating,
    /// `(q;q)_inf * sum_k q^{k^2+k} / (q;q)_k^2`
    Entry9,
    /// `(q;q)_inf^2 * sum_k q^k / (q;q)_k^2`
    P200,
}

pub fn ramanujan_p200(form: P200Form, order: i64) -> TruncatedSeries {
    let poly = match form {
        P200Form::Alternating => {
            let mut p = QPoly::zero();
            let mut k = 0i64;
            loop {
                let e = k * (k + 1) / 2;
                if e >= order {
                    break;
                }
                p.add_term(QExp::whole(e), &BigInt::from((-1i64).pow((k % 2) as u32)));
                k += 1;
            }
            p
        }
        P200Form::Entry9 => {
            let euler = euler_inf(order);
            let mut sum = QPoly::zero();
            let mut k = 0i64;
            while k * (k + 1) < order {
                let inv = inv_qq(k as u64, order);
                let inv2 = (&inv * &inv).truncate_q(order);
                sum.add_scaled(&inv2, &BigInt::one(), QExp::whole(k * (k + 1)));
                k += 1;
            }
            (&sum.truncate_q(order) * euler.poly()).truncate_q(order)
        }
        P200Form::P200 => {
            let euler = euler_inf(order).poly().clone();
            let euler2 = (&euler * &euler).truncate_q(order);
            let mut sum = QPoly::zero();
            for k in 0..order {
                let inv = inv_qq(k as u64, order);
                let inv2 = (&inv * &inv).truncate_q(order);
                sum.add_scaled(&inv2, &BigInt::one(), QExp::whole(k));
                sum = sum.truncate_q(order);
            }
            (&sum * &euler2).truncate_q(order)
        }
    };
    TruncatedSeries::new(order, poly)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn neg_q(n: i64) -> SignedMonomial {
        SignedMonomial::neg_q_pow(n)
    }

    #[test]
    fn theta_f_euler_case() {
        // f(-q^2, -q) = (q;q)_inf
        let f = theta_f(neg_q(2), neg_q(1), 8).unwrap();
        assert_eq!(
            f.poly(),
            &QPoly::from_q_terms([(0, 1), (1, -1), (2, -1), (5, 1), (7, 1)])
        );
        assert_eq!(theta_f(neg_q(2), neg_q(1), 50).unwrap(), euler_inf(50));
    }

    /// Independent oracle for f(-q^4,-q): exponents (5k^2+3k)/2 with sign
    /// (-1)^k, over all integers k.
    fn rr2_series(order: i64) -> TruncatedSeries {
        let mut p = QPoly::zero();
        for k in -100i64..=100 {
            let e = (5 * k * k + 3 * k) / 2;
            if (0..order).contains(&e) {
                p.add_term(
                    QExp::whole(e),
                    &BigInt::from((-1i64).pow(k.rem_euclid(2) as u32)),
                );
            }
        }
        TruncatedSeries::new(order, p)
    }

    #[test]
    fn theta_f_rr2_case() {
        let f = theta_f(neg_q(4), neg_q(1), 8).unwrap();
        assert_eq!(
            f.poly(),
            &QPoly::from_q_terms([(0, 1), (1, -1), (4, -1), (7, 1)])
        );
        assert_eq!(theta_f(neg_q(4), neg_q(1), 60).unwrap(), rr2_series(60));
    }

    #[test]
    fn theta_f_symmetry() {
        for (a, b) in [
            (neg_q(2), neg_q(1)),
            (neg_q(1), neg_q(3)),
            (SignedMonomial::q_pow(3), SignedMonomial::q_pow(1)),
            (neg_q(5), SignedMonomial::q_pow(2)),
        ] {
            assert_eq!(
                theta_f(a, b, 30).unwrap(),
                theta_f(b, a, 30).unwrap(),
                "f(a,b) = f(b,a) fails for {a:?}, {b:?}"
            );
        }
    }

    #[test]
    fn theta_f_divergent() {
        assert_eq!(
            theta_f(neg_q(1), neg_q(-1), 10),
            Err(Error::DivergentSeries)
        );
        // convergent but with terms below q^0: not a power series
        assert!(matches!(
            theta_f(neg_q(4), neg_q(-1), 10),
            Err(Error::OutOfRange(_))
        ));
    }

    #[test]
    fn jacobi_triple_product() {
        for (a, b) in [
            (neg_q(2), neg_q(1)),
            (neg_q(4), neg_q(1)),
            (neg_q(6), neg_q(1)),
            (neg_q(1), neg_q(3)),
        ] {
            assert_eq!(
                theta_f(a, b, 40).unwrap(),
                theta_f_product(a, b, 40).unwrap(),
                "triple product fails for {a:?}, {b:?}"
            );
        }
        // Equal-argument case, both routes computed independently.
        assert_eq!(
            theta_f(neg_q(1), neg_q(1), 30).unwrap(),
            theta_f_product(neg_q(1), neg_q(1), 30).unwrap()
        );
    }

    /// Independent oracle: Psi(q^3,q) = sum_{k>=0} (-1)^k q^{(k^2+k)/2}.
    fn alternating_triangular(order: i64) -> TruncatedSeries {
        ramanujan_p200(P200Form::Alternating, order)
    }

    #[test]
    fn false_theta_values() {
        let psi = false_theta_psi(SignedMonomial::q_pow(3), SignedMonomial::q_pow(1), 11).unwrap();
        assert_eq!(
            psi.poly(),
            &QPoly::from_q_terms([(0, 1), (1, -1), (3, 1), (6, -1), (10, 1)])
        );
        assert_eq!(
            false_theta_psi(SignedMonomial::q_pow(3), SignedMonomial::q_pow(1), 60).unwrap(),
            alternating_triangular(60)
        );
    }

    #[test]
    fn false_theta_reflection() {
        // Psi(a,b) - 2 = -Psi(b,a)
        for (a, b) in [
            (SignedMonomial::q_pow(3), SignedMonomial::q_pow(1)),
            (SignedMonomial::q_pow(5), SignedMonomial::q_pow(1)),
            (SignedMonomial::q_pow(2), SignedMonomial::q_pow(3)),
            (neg_q(4), SignedMonomial::q_pow(1)),
        ] {
            let lhs =
                &false_theta_psi(a, b, 30).unwrap().poly().clone() - &QPoly::from_q_terms([(0, 2)]);
            let rhs = -false_theta_psi(b, a, 30).unwrap().poly();
            assert_eq!(lhs, rhs, "reflection fails for {a:?}, {b:?}");
        }
    }

    #[test]
    fn false_theta_symmetric_cancellation() {
        let psi = false_theta_psi(SignedMonomial::q_pow(1), SignedMonomial::q_pow(1), 40).unwrap();
        assert!(psi.poly().is_one());
    }

    #[test]
    fn false_theta_sparse_coefficients() {
        // Coefficients of Psi(q^{2k-1}, q) stay in {-1, 0, +1} far out.
        for k in [2i64, 3] {
            let psi = false_theta_psi(
                SignedMonomial::q_pow(2 * k - 1),
                SignedMonomial::q_pow(1),
                100,
            )
            .unwrap();
            for (e, c) in psi.poly().iter_terms() {
                assert!(
                    num_traits::Signed::abs(c) <= BigInt::one(),
                    "coefficient {c} at exponent {e:?} out of range for k={k}"
                );
            }
        }
    }

    #[test]
    fn euler_small_orders() {
        assert!(euler_inf(1).poly().is_one());
        assert_eq!(
            euler_inf(8).poly(),
            &QPoly::from_q_terms([(0, 1), (1, -1), (2, -1), (5, 1), (7, 1)])
        );
    }

    #[test]
    fn andrews_gordon_small() {
        let ag2 = andrews_gordon_rhs(2, 8).unwrap();
        assert_eq!(
            ag2.poly(),
            &QPoly::from_q_terms([(0, 1), (1, -1), (4, -1), (7, 1)])
        );
        let ag2_trunc = andrews_gordon_rhs(2, 1).unwrap();
        assert!(ag2_trunc.poly().is_one());
        assert!(andrews_gordon_rhs(1, 5).is_err());
    }

    #[test]
    fn andrews_gordon_matches_theta() {
        for k in 2..=5u64 {
            assert_eq!(
                andrews_gordon_rhs(k, 60).unwrap(),
                theta_f(neg_q(2 * k as i64), neg_q(1), 60).unwrap(),
                "Andrews-Gordon fails for k={k}"
            );
        }
    }

    /// The multisum with the other reading of N_j (N_j = n_j + ... + n_{k-1});
    /// reversing the summation indices shows both readings agree.
    fn ag_rhs_reversed(k: u64, order: i64) -> QPoly {
        let mut sum = QPoly::zero();
        // brute force over small tuples; exponent bound N_j <= 8 suffices at order 40
        let k = k as usize;
        let mut tuple = vec![0i64; k - 1];
        loop {
            // N_j = n_j + ... + n_{k-1}: suffix sums
            let mut exp = 0i64;
            let mut suffix = 0i64;
            for &n in tuple.iter().rev() {
                suffix += n;
                exp += suffix * suffix + suffix;
            }
            if exp < order {
                let mut den = QPoly::one();
                for &n in &tuple {
                    den = &den * &qq_pochhammer(n as u64);
                }
                let inv = QPoly::one().series_div(&den, order).unwrap();
                sum.add_scaled(&inv, &BigInt::one(), QExp::whole(exp));
            }
            // odometer over 0..=8 per slot
            let mut i = 0;
            loop {
                if i == tuple.len() {
                    let poly = (&sum.truncate_q(order) * euler_inf(order).poly()).truncate_q(order);
                    return poly;
                }
                tuple[i] += 1;
                if tuple[i] <= 8 {
                    break;
                }
                tuple[i] = 0;
                i += 1;
            }
        }
    }

    #[test]
    fn andrews_gordon_index_reading_regression() {
        assert_eq!(
            andrews_gordon_rhs(3, 40).unwrap().poly(),
            &ag_rhs_reversed(3, 40)
        );
    }

    #[test]
    fn p200_alternating_value() {
        let alt = ramanujan_p200(P200Form::Alternating, 11);
        assert_eq!(
            alt.poly(),
            &QPoly::from_q_terms([(0, 1), (1, -1), (3, 1), (6, -1), (10, 1)])
        );
    }

    #[test]
    fn p200_forms_agree() {
        let a = ramanujan_p200(P200Form::Alternating, 60);
        let b = ramanujan_p200(P200Form::Entry9, 60);
        let c = ramanujan_p200(P200Form::P200, 60);
        assert_eq!(a, b);
        assert_eq!(b, c);
    }

    #[test]
    fn p200_small_order() {
        let p = ramanujan_p200(P200Form::P200, 2);
        assert_eq!(p.poly(), &QPoly::from_q_terms([(0, 1), (1, -1)]));
        assert_eq!(ramanujan_p200(P200Form::P200, 1).poly(), &QPoly::one());
    }

    #[test]
    fn series_product_truncates_to_min_order() {
        let a = TruncatedSeries::new(5, QPoly::from_q_terms([(0, 1), (1, 1)]));
        let b = TruncatedSeries::new(3, QPoly::from_q_terms([(0, 1), (2, 4)]));
        let p = a.mul(&b);
        assert_eq!(p.order(), 3);
        assert_eq!(p.poly(), &QPoly::from_q_terms([(0, 1), (1, 1), (2, 4)]));
    }

    #[test]
    fn series_json_shape() {
        let s = TruncatedSeries::new(3, QPoly::from_q_terms([(0, 1), (1, -2)]));
        let js = s.to_json();
        assert_eq!(js["order"], 3);
        assert_eq!(js["poly"]["variable"], "q");
    }
}

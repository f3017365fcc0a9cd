//! Divided differences of the truncated power `t ↦ max(t, 0)^n` on integer
//! knots, in exact arithmetic. Repeated knots are treated as confluent
//! (Hermite) knots, which is what makes the B-spline identity hold without
//! perturbing anything.

use num_bigint::BigInt;
use num_integer::binomial;
use num_rational::BigRational;
use num_traits::{Pow, Signed, Zero};

/// `f^{(k)}(x) / k!` for `f(t) = t_+^n`, valid for `k < n`.
fn scaled_derivative(n: u32, k: u32, x: &BigInt) -> BigInt {
    if !x.is_positive() {
        return BigInt::zero();
    }
    binomial(BigInt::from(n), BigInt::from(k)) * Pow::pow(x, n - k)
}

/// `[x_0, …, x_k] t_+^n` for `k + 1` knots, `k < n`.
pub fn divided_difference(knots: &[BigInt], n: u32) -> BigRational {
    assert!(
        !knots.is_empty(),
        "divided difference needs at least one knot"
    );
    assert!(
        knots.len() <= n as usize,
        "truncated power of degree {n} is not smooth enough for {} knots",
        knots.len()
    );
    let mut x = knots.to_vec();
    x.sort();
    let len = x.len();
    // table[i] holds [x_i, …, x_{i+width}] for the current width.
    let mut table: Vec<BigRational> = x
        .iter()
        .map(|xi| BigRational::from_integer(scaled_derivative(n, 0, xi)))
        .collect();
    for width in 1..len {
        let mut next = Vec::with_capacity(len - width);
        for i in 0..len - width {
            let j = i + width;
            let value = if x[i] == x[j] {
                BigRational::from_integer(scaled_derivative(n, width as u32, &x[i]))
            } else {
                (&table[i + 1] - &table[i]) / BigRational::from_integer(&x[j] - &x[i])
            };
            next.push(value);
        }
        table = next;
    }
    table.pop().unwrap()
}

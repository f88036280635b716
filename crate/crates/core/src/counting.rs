//! Exact count sequences: Pólya counting of unlabeled graphs, the additive
//! Euler transform and its inverse, and the B-sequence driving truncated
//! inversion.

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::numtheory::{divisors, factorial, gcd, mobius};

/// Largest order accepted by [`count_graphs_polya`].
pub const POLYA_MAX_ORDER: usize = 32;

/// Nonnegative counts indexed densely by degree `0..=max_degree`.
///
/// Totals sequences carry 1 at degree 0 (the additive identity); prime
/// sequences carry 0 there. Evaluation at a non-integer degree yields 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountSequence {
    values: Vec<BigUint>,
}

impl CountSequence {
    pub fn new(values: Vec<BigUint>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::domain("a count sequence needs at least degree 0"));
        }
        Ok(CountSequence { values })
    }

    pub fn from_u64(values: &[u64]) -> Result<Self> {
        Self::new(values.iter().map(|&v| BigUint::from(v)).collect())
    }

    /// All-zero sequence through `max_degree`.
    pub fn zeros(max_degree: usize) -> Self {
        CountSequence { values: vec![BigUint::zero(); max_degree + 1] }
    }

    pub fn max_degree(&self) -> usize {
        self.values.len() - 1
    }

    pub fn values(&self) -> &[BigUint] {
        &self.values
    }

    /// Value at integer degree `n`; degrees past the horizon are an error.
    pub fn get(&self, n: usize) -> Result<&BigUint> {
        self.values
            .get(n)
            .ok_or_else(|| Error::capacity("degree beyond sequence horizon", n, self.max_degree()))
    }

    /// Value at the degree `num / den`, which is 0 unless `den` divides `num`.
    pub fn at_quotient(&self, num: usize, den: usize) -> Result<BigUint> {
        if den == 0 {
            return Err(Error::domain("zero denominator in degree"));
        }
        if num % den != 0 {
            return Ok(BigUint::zero());
        }
        self.get(num / den).cloned()
    }

    /// Value at the degree `sqrt(n)`, which is 0 unless `n` is a perfect square.
    pub fn at_sqrt(&self, n: usize) -> Result<BigUint> {
        match crate::numtheory::exact_sqrt(n) {
            Some(r) => self.get(r).cloned(),
            None => Ok(BigUint::zero()),
        }
    }

    pub fn truncated(&self, max_degree: usize) -> Result<Self> {
        self.get(max_degree)?;
        Ok(CountSequence { values: self.values[..=max_degree].to_vec() })
    }

    fn require(&self, n: usize) -> Result<()> {
        self.get(n).map(|_| ())
    }

    /// `degree,value` lines with a header row.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("degree,value\n");
        for (n, v) in self.values.iter().enumerate() {
            out.push_str(&format!("{n},{v}\n"));
        }
        out
    }

    /// JSON array of decimal strings, index = degree.
    pub fn to_json(&self) -> Value {
        Value::Array(self.values.iter().map(|v| Value::String(v.to_string())).collect())
    }

    pub fn from_json(value: &Value) -> Result<Self> {
        let items = value.as_array().ok_or_else(|| Error::parse("expected a JSON array"))?;
        let values = items
            .iter()
            .map(|item| {
                let text = match item {
                    Value::String(s) => s.clone(),
                    Value::Number(n) if n.is_u64() => n.to_string(),
                    other => return Err(Error::parse(format!("not a decimal integer: {other}"))),
                };
                text.parse::<BigUint>().map_err(|e| Error::parse(format!("{text:?}: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(values)
    }
}

/// Signed integers indexed by degree `1..=max_degree`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignedSequence {
    values: Vec<BigInt>,
}

impl SignedSequence {
    /// `values[0]` is the entry at degree 1.
    pub fn new(values: Vec<BigInt>) -> Self {
        SignedSequence { values }
    }

    pub fn from_i64(values: &[i64]) -> Self {
        Self::new(values.iter().map(|&v| BigInt::from(v)).collect())
    }

    pub fn max_degree(&self) -> usize {
        self.values.len()
    }

    pub fn get(&self, s: usize) -> Result<&BigInt> {
        if s == 0 {
            return Err(Error::domain("signed sequences start at degree 1"));
        }
        self.values
            .get(s - 1)
            .ok_or_else(|| Error::capacity("degree beyond sequence horizon", s, self.max_degree()))
    }

    pub fn values(&self) -> &[BigInt] {
        &self.values
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("degree,value\n");
        for (i, v) in self.values.iter().enumerate() {
            out.push_str(&format!("{},{v}\n", i + 1));
        }
        out
    }

    pub fn to_json(&self) -> Value {
        Value::Array(self.values.iter().map(|v| Value::String(v.to_string())).collect())
    }
}

fn partitions(n: usize, max_part: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if n == 0 {
        out.push(current.clone());
        return;
    }
    for part in (1..=max_part.min(n)).rev() {
        current.push(part);
        partitions(n - part, part, current, out);
        current.pop();
    }
}

/// Number of unlabeled graphs on `n` vertices by the cycle index of the
/// pair group: the average of `2^{e(λ)}` over the symmetric group, summed by
/// cycle type `λ` with class size `n!/z(λ)`.
pub fn count_graphs_polya(n: usize) -> Result<BigUint> {
    if n > POLYA_MAX_ORDER {
        return Err(Error::capacity("Pólya order", n, POLYA_MAX_ORDER));
    }
    let mut all = Vec::new();
    partitions(n, n, &mut Vec::new(), &mut all);
    let n_fact = factorial(n);
    let mut total = BigUint::zero();
    for lambda in &all {
        let within: usize = lambda.iter().map(|&k| k / 2).sum();
        let mut across = 0usize;
        for i in 0..lambda.len() {
            for j in i + 1..lambda.len() {
                across += gcd(lambda[i], lambda[j]);
            }
        }
        // z(λ) = Π k^{m_k} m_k!
        let mut z = BigUint::one();
        let mut i = 0;
        while i < lambda.len() {
            let k = lambda[i];
            let m = lambda[i..].iter().take_while(|&&x| x == k).count();
            z *= BigUint::from(k).pow(m as u32) * factorial(m);
            i += m;
        }
        let class_size = &n_fact / z;
        total += class_size << (within + across);
    }
    let (q, r) = total.div_rem(&n_fact);
    assert!(r.is_zero(), "orbit count must be integral");
    Ok(q)
}

/// Pólya totals `G(0..=max_degree)`.
pub fn graph_totals(max_degree: usize) -> Result<CountSequence> {
    CountSequence::new((0..=max_degree).map(count_graphs_polya).collect::<Result<_>>()?)
}

/// `q(k) = Σ_{d | k} d · p_d`, the log-derivative coefficients of the Euler product.
fn log_derivative(primes: &CountSequence, max_degree: usize) -> Vec<BigUint> {
    let mut q = vec![BigUint::zero(); max_degree + 1];
    for (k, slot) in q.iter_mut().enumerate().skip(1) {
        for d in divisors(k) {
            *slot += &primes.values[d] * d;
        }
    }
    q
}

/// Coefficients of `Π_m (1 - x^m)^{-p_m}` through `max_degree`, via
/// `n·S(n) = Σ_{k=1}^{n} q(k)·S(n-k)`.
pub fn euler_transform(primes: &CountSequence, max_degree: usize) -> Result<CountSequence> {
    primes.require(max_degree)?;
    let q = log_derivative(primes, max_degree);
    let mut totals = vec![BigUint::one()];
    for n in 1..=max_degree {
        let mut acc = BigUint::zero();
        for k in 1..=n {
            acc += &q[k] * &totals[n - k];
        }
        let (value, rem) = acc.div_rem(&BigUint::from(n));
        debug_assert!(rem.is_zero());
        totals.push(value);
    }
    CountSequence::new(totals)
}

/// The unique prime sequence whose Euler transform is `totals`. Non-integral
/// or negative prime counts are reported as [`Error::NotEulerTransform`].
pub fn euler_inverse(totals: &CountSequence, max_degree: usize) -> Result<CountSequence> {
    totals.require(max_degree)?;
    if !totals.values[0].is_one() {
        return Err(Error::domain("totals must equal 1 at degree 0"));
    }
    let s: Vec<BigInt> = totals.values[..=max_degree]
        .iter()
        .map(|v| BigInt::from_biguint(Sign::Plus, v.clone()))
        .collect();
    let mut q = vec![BigInt::zero(); max_degree + 1];
    for n in 1..=max_degree {
        let mut acc = &s[n] * BigInt::from(n);
        for k in 1..n {
            acc -= &q[k] * &s[n - k];
        }
        q[n] = acc;
    }
    let mut primes = vec![BigUint::zero(); max_degree + 1];
    for n in 1..=max_degree {
        let mut acc = BigInt::zero();
        for d in divisors(n) {
            match mobius(n / d) {
                1 => acc += &q[d],
                -1 => acc -= &q[d],
                _ => {}
            }
        }
        let (p, rem) = acc.div_rem(&BigInt::from(n));
        if !rem.is_zero() {
            return Err(Error::NotEulerTransform(format!("prime count at degree {n} is not an integer")));
        }
        if p.is_negative() {
            return Err(Error::NotEulerTransform(format!("prime count at degree {n} is negative ({p})")));
        }
        primes[n] = p.magnitude().clone();
    }
    CountSequence::new(primes)
}

/// `B(n) = -S(n) - Σ_{s=1}^{n-1} B(s)·S(n-s)` for `n = 1..=max_degree`.
pub fn b_sequence(totals: &CountSequence, max_degree: usize) -> Result<SignedSequence> {
    totals.require(max_degree)?;
    let s: Vec<BigInt> = totals.values.iter().map(|v| BigInt::from(v.clone())).collect();
    let mut b: Vec<BigInt> = Vec::with_capacity(max_degree);
    for n in 1..=max_degree {
        let mut value = -&s[n];
        for j in 1..n {
            value -= &b[j - 1] * &s[n - j];
        }
        b.push(value);
    }
    Ok(SignedSequence::new(b))
}

/// Truncated inversion `S(n) + Σ_{s=1}^{R-1} B(s)·S(n-s)`; terms with
/// `s > n` vanish.
pub fn expansion_estimate(
    totals: &CountSequence,
    b: &SignedSequence,
    n: usize,
    terms: usize,
) -> Result<BigInt> {
    if terms < 2 {
        return Err(Error::domain(format!("the truncation order R must be at least 2, got {terms}")));
    }
    let mut value = BigInt::from(totals.get(n)?.clone());
    for s in 1..terms.min(n + 1) {
        value += b.get(s)? * BigInt::from(totals.get(n - s)?.clone());
    }
    Ok(value)
}

/// Dirichlet analogue of [`euler_transform`]: entry `n >= 2` counts multisets
/// of prime objects (degrees `>= 2`, `primes[m]` kinds of degree `m`) whose
/// degrees multiply to `n`; entry 1 is the empty product.
pub fn multiplicative_euler_transform(
    primes: &CountSequence,
    max_degree: usize,
) -> Result<CountSequence> {
    primes.require(max_degree)?;
    let mut f = vec![BigUint::zero(); max_degree + 1];
    if max_degree >= 1 {
        f[1] = BigUint::one();
    }
    for m in 2..=max_degree {
        let kinds = &primes.values[m];
        if kinds.is_zero() {
            continue;
        }
        let old = f.clone();
        for (n, slot) in f.iter_mut().enumerate().skip(1) {
            // choose k >= 1 objects of degree m with repetition: C(kinds + k - 1, k)
            let mut power = m;
            let mut k = 1u32;
            let mut choose = kinds.clone();
            while power <= n {
                if n % power == 0 {
                    *slot += &choose * &old[n / power];
                }
                choose = choose * (kinds + k) / (k + 1);
                k += 1;
                power *= m;
            }
        }
    }
    CountSequence::new(f)
}

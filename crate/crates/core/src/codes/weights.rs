use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::BinaryCode;
use crate::error::{Error, Result};

/// Largest code dimension that `weight_distribution` will enumerate.
pub const ENUMERATION_LIMIT: usize = 24;

/// Number of codewords of each Hamming weight `0..=n`.
#[derive(Clone, PartialEq, Eq)]
pub struct WeightDistribution {
    n: usize,
    counts: Vec<BigUint>,
}

impl WeightDistribution {
    pub fn new(n: usize, counts: Vec<BigUint>) -> Result<Self> {
        if counts.len() != n + 1 {
            return Err(Error::LengthMismatch {
                expected: n + 1,
                actual: counts.len(),
            });
        }
        Ok(WeightDistribution { n, counts })
    }

    /// Builds a distribution from sparse `(weight, count)` pairs.
    pub fn from_pairs(n: usize, pairs: &[(usize, u64)]) -> Result<Self> {
        let mut counts = vec![BigUint::zero(); n + 1];
        for &(w, c) in pairs {
            if w > n {
                return Err(Error::invalid("weight", format!("{w} exceeds length {n}")));
            }
            counts[w] += c;
        }
        Ok(WeightDistribution { n, counts })
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn count(&self, w: usize) -> &BigUint {
        &self.counts[w]
    }

    pub fn counts(&self) -> &[BigUint] {
        &self.counts
    }

    pub fn total(&self) -> BigUint {
        self.counts.iter().sum()
    }

    /// Nonzero entries in increasing weight order.
    pub fn support(&self) -> impl Iterator<Item = (usize, &BigUint)> {
        self.counts.iter().enumerate().filter(|(_, c)| !c.is_zero())
    }

    pub fn min_nonzero_weight(&self) -> Option<usize> {
        self.support().map(|(w, _)| w).find(|&w| w > 0)
    }
}

impl fmt::Display for WeightDistribution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.support().map(|(w, c)| format!("{w}:{c}")).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

impl fmt::Debug for WeightDistribution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "WeightDistribution(n={}, {self})", self.n)
    }
}

/// Exact distribution by walking the whole row space.
pub fn weight_distribution(code: &BinaryCode) -> Result<WeightDistribution> {
    let k = code.dimension();
    if k > ENUMERATION_LIMIT {
        return Err(Error::EnumerationTooLarge {
            k,
            limit: ENUMERATION_LIMIT,
        });
    }
    let n = code.len();
    let mut counts = vec![0u64; n + 1];
    code.generator().for_each_codeword(|c| counts[c.weight()] += 1);
    WeightDistribution::new(n, counts.into_iter().map(BigUint::from).collect())
}

/// `Σ_w A_w x^(n-w) y^w`, summed with Neumaier compensation.
pub fn weight_enum_eval(dist: &WeightDistribution, x: f64, y: f64) -> f64 {
    let n = dist.n;
    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    for (w, a) in dist.support() {
        let term = a.to_f64().unwrap_or(f64::INFINITY) * pow(x, n - w) * pow(y, w);
        let t = sum + term;
        if sum.abs() >= term.abs() {
            comp += (sum - t) + term;
        } else {
            comp += (term - t) + sum;
        }
        sum = t;
    }
    sum + comp
}

fn pow(base: f64, e: usize) -> f64 {
    match i32::try_from(e) {
        Ok(e) => base.powi(e),
        Err(_) => base.powf(e as f64),
    }
}

/// `C(a, 0..=a)`.
fn binomial_row(a: usize) -> Vec<BigInt> {
    let mut row = Vec::with_capacity(a + 1);
    let mut c = BigInt::one();
    row.push(c.clone());
    for k in 0..a {
        c = c * BigInt::from(a - k) / BigInt::from(k + 1);
        row.push(c.clone());
    }
    row
}

/// Distribution of the dual code via the MacWilliams identity,
/// `B_j = |C|^-1 Σ_w A_w K_j(w)` with Krawtchouk polynomials `K_j`.
///
/// `dual_size` must satisfy `|C| · dual_size = 2^n`.
pub fn macwilliams_transform(dist: &WeightDistribution, dual_size: &BigUint) -> Result<WeightDistribution> {
    let n = dist.n;
    let total = dist.total();
    if &total * dual_size != BigUint::one() << n {
        return Err(Error::InconsistentDual(format!(
            "|C| = {total} and dual size {dual_size} do not multiply to 2^{n}"
        )));
    }
    let mut acc = vec![BigInt::zero(); n + 1];
    for (w, a) in dist.support() {
        let a = BigInt::from(a.clone());
        let left = binomial_row(w);
        let right = binomial_row(n - w);
        for (j, slot) in acc.iter_mut().enumerate() {
            let mut k = BigInt::zero();
            let lo = j.saturating_sub(n - w);
            for s in lo..=j.min(w) {
                let term = &left[s] * &right[j - s];
                if s % 2 == 0 {
                    k += term;
                } else {
                    k -= term;
                }
            }
            *slot += &a * k;
        }
    }
    let total = BigInt::from(total);
    let counts = acc
        .into_iter()
        .enumerate()
        .map(|(j, v)| {
            if v.is_negative() || !(&v % &total).is_zero() {
                return Err(Error::InconsistentDual(format!(
                    "coefficient {j} is not a nonnegative integer; input is not a linear code distribution"
                )));
            }
            Ok((v / &total).to_biguint().expect("nonnegative"))
        })
        .collect::<Result<Vec<_>>>()?;
    WeightDistribution::new(n, counts)
}

fn check_closed_form_m(m: usize) -> Result<()> {
    if !(2..=super::MAX_M).contains(&m) {
        return Err(Error::invalid("m", format!("expected 2 <= m <= {}, got {m}", super::MAX_M)));
    }
    Ok(())
}

/// RM-bar(1,m) without enumeration: `{0: 1, 2^(m-1): 2^m - 1}`.
pub fn shortened_rm_distribution(m: usize) -> Result<WeightDistribution> {
    check_closed_form_m(m)?;
    let n = (1usize << m) - 1;
    WeightDistribution::from_pairs(n, &[(0, 1), (1 << (m - 1), n as u64)])
}

/// RM*(1,m) without enumeration.
pub fn punctured_rm_distribution(m: usize) -> Result<WeightDistribution> {
    check_closed_form_m(m)?;
    let n = (1usize << m) - 1;
    let h = 1usize << (m - 1);
    WeightDistribution::from_pairs(n, &[(0, 1), (h - 1, n as u64), (h, n as u64), (n, 1)])
}

/// The Hamming code `(2^m - 1, 2^m - 1 - m)` as the MacWilliams dual of RM-bar.
pub fn hamming_distribution(m: usize) -> Result<WeightDistribution> {
    let bar = shortened_rm_distribution(m)?;
    let n = bar.len();
    macwilliams_transform(&bar, &(BigUint::one() << (n - m)))
}

/// Closed-form distribution of RM(2,m) for `4 <= m <= 16`.
///
/// Weights `2^(m-1) ± 2^(m-1-h)` carry
/// `2^(h(h+1)) Π_{i<2h} (2^(m-i) - 1) / Π_{i=1..h} (2^(2i) - 1)` words;
/// the weight `2^(m-1)` count is whatever remains of `2^(1+m+C(m,2))`.
pub fn rm2_weight_distribution(m: usize) -> Result<WeightDistribution> {
    if !(4..=super::MAX_M).contains(&m) {
        return Err(Error::invalid("m", format!("expected 4 <= m <= {}, got {m}", super::MAX_M)));
    }
    let n = 1usize << m;
    let half = n / 2;
    let mut counts = vec![BigUint::zero(); n + 1];
    counts[0] = BigUint::one();
    counts[n] = BigUint::one();
    for h in 1..=m.div_ceil(2) {
        let mut num = BigUint::one() << (h * (h + 1));
        for i in 0..2 * h {
            num *= (BigUint::one() << (m - i)) - 1u32;
        }
        let mut den = BigUint::one();
        for i in 1..=h {
            den *= (BigUint::one() << (2 * i)) - 1u32;
        }
        let a = num / den;
        let off = 1usize << (m - 1 - h);
        counts[half - off] += &a;
        counts[half + off] += &a;
    }
    let total = BigUint::one() << (1 + m + m * (m - 1) / 2);
    let rest: BigUint = counts.iter().sum();
    counts[half] = total - rest;
    WeightDistribution::new(n, counts)
}

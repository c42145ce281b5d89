//! MDS/NMDS classification and closed-form weight distributions.

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use super::{TgrsError, TgrsParams};
use crate::galois::{Elem, Field};
use crate::lincode::{biguint_json, WeightDistribution};

pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

/// Number of `k`-subsets `A` of `set` with `A != set` whose product is `b`.
///
/// Dynamic programming over (elements seen, subset size, running product).
pub fn subset_product_count(
    field: &Field,
    k: usize,
    b: Elem,
    set: &[Elem],
) -> Result<BigUint, TgrsError> {
    if k > set.len() {
        return Err(TgrsError::BadSize { k, size: set.len() });
    }
    let q = field.order() as usize;
    // dp[s][x] = number of s-subsets of the prefix with product x.
    let mut dp = vec![vec![BigUint::zero(); q]; k + 1];
    dp[0][1] = BigUint::one();
    for (seen, &x) in set.iter().enumerate() {
        for s in (1..=k.min(seen + 1)).rev() {
            let (lower, upper) = dp.split_at_mut(s);
            let prev = &lower[s - 1];
            let cur = &mut upper[0];
            for (prod, count) in prev.iter().enumerate() {
                if !count.is_zero() {
                    cur[field.mul(Elem(prod as u32), x).rep() as usize] += count;
                }
            }
        }
    }
    let mut count = std::mem::take(&mut dp[k][b.rep() as usize]);
    if k == set.len() && field.product(set.iter().copied()) == b {
        // the whole set is not a proper subset
        count -= BigUint::one();
    }
    Ok(count)
}

/// `binom(q-1, k) / (q-1)` when `gcd(k, q-1) = 1`.
pub fn unit_subset_count_closed_form(q: u32, k: usize) -> Option<BigUint> {
    let m = (q - 1) as u64;
    if (k as u64).gcd(&m) != 1 {
        return None;
    }
    Some(binomial(m, k as u64) / BigUint::from(m))
}

/// `L_A(m) = sum_{a in A} a^m prod_{b in F_q \ A} (a - b)`.
pub fn l_sum(field: &Field, set: &[Elem], m: u64) -> Result<Elem, TgrsError> {
    if set.len() <= 2 {
        return Err(TgrsError::SetTooSmall(set.len()));
    }
    let outside: Vec<Elem> = field.elements().filter(|x| !set.contains(x)).collect();
    Ok(field.sum(set.iter().map(|&a| {
        let prod = field.product(outside.iter().map(|&b| field.sub(a, b)));
        field.mul(field.pow_u(a, m), prod)
    })))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum CodeKind {
    #[serde(rename = "MDS")]
    Mds,
    #[serde(rename = "NMDS")]
    Nmds,
}

impl std::fmt::Display for CodeKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            CodeKind::Mds => "MDS",
            CodeKind::Nmds => "NMDS",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub kind: CodeKind,
    #[serde(serialize_with = "ser_biguint")]
    pub m_count: BigUint,
    pub d: usize,
}

fn ser_biguint<S: Serializer>(x: &BigUint, s: S) -> Result<S::Ok, S::Error> {
    biguint_json(x).serialize(s)
}

/// Weight distribution of an `[n, k]` code with minimum distance at least
/// `n - k` and `A_{n-k} = a_min`, keeping signs so that inconsistent inputs
/// are visible.
pub fn weights_from_min_count_signed(n: usize, k: usize, q: u32, a_min: &BigInt) -> Vec<BigInt> {
    let q = BigInt::from(q);
    let mut out = vec![BigInt::zero(); n + 1];
    out[0] = BigInt::one();
    out[n - k] += a_min;
    for s in 1..=k {
        let mut acc = BigInt::zero();
        for j in 0..s {
            let term =
                BigInt::from(binomial((n - k + s) as u64, j as u64)) * (q.pow((s - j) as u32) - 1);
            if j % 2 == 0 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        acc *= BigInt::from(binomial(n as u64, (k - s) as u64));
        let tail = BigInt::from(binomial(k as u64, s as u64)) * a_min;
        if s % 2 == 0 {
            acc += tail;
        } else {
            acc -= tail;
        }
        out[n - k + s] = acc;
    }
    out
}

/// [`weights_from_min_count_signed`] for a consistent input; `None` if any entry is negative.
pub fn weights_from_min_count(
    n: usize,
    k: usize,
    q: u32,
    a_min: &BigUint,
) -> Option<WeightDistribution> {
    let signed = weights_from_min_count_signed(n, k, q, &BigInt::from(a_min.clone()));
    signed
        .into_iter()
        .map(|x| match x.sign() {
            Sign::Minus => None,
            _ => x.to_biguint(),
        })
        .collect::<Option<Vec<_>>>()
        .map(|counts| WeightDistribution { counts })
}

impl TgrsParams {
    fn classification_range(&self) -> Result<(), TgrsError> {
        if self.k < 3 || self.k >= self.n() {
            return Err(TgrsError::OutOfTheoremRange(format!(
                "classification needs 3 <= k < n, got k={}, n={}",
                self.k,
                self.n()
            )));
        }
        Ok(())
    }

    /// `(-1)^k eta^{-1}`, the product a k-subset must hit for NMDS.
    pub fn nmds_target(&self) -> Elem {
        let f = self.field();
        let inv = f.inv(self.eta).expect("eta nonzero");
        if self.k % 2 == 1 {
            f.neg(inv)
        } else {
            inv
        }
    }

    /// `#M(k, (-1)^k eta^{-1}, A_alpha)`.
    pub fn m_count(&self) -> BigUint {
        subset_product_count(self.field(), self.k, self.nmds_target(), &self.alpha).expect("k < n")
    }

    pub fn classify(&self) -> Result<Classification, TgrsError> {
        self.classification_range()?;
        let m_count = self.m_count();
        let n = self.n();
        Ok(if m_count.is_zero() {
            Classification {
                kind: CodeKind::Mds,
                m_count,
                d: n - self.k + 1,
            }
        } else {
            Classification {
                kind: CodeKind::Nmds,
                m_count,
                d: n - self.k,
            }
        })
    }

    /// Closed-form weight distributions of the code and of its dual.
    pub fn closed_weight_distribution(
        &self,
    ) -> Result<(WeightDistribution, WeightDistribution), TgrsError> {
        let cls = self.classify()?;
        let n = self.n();
        let q = self.field().order();
        let a_min = BigUint::from(q - 1) * cls.m_count;
        let code = weights_from_min_count(n, self.k, q, &a_min).expect("consistent MDS/NMDS input");
        // The dual has parameters [n, n-k] and A^perp_k = A_{n-k}.
        let dual =
            weights_from_min_count(n, n - self.k, q, &a_min).expect("consistent MDS/NMDS input");
        Ok((code, dual))
    }
}

//! Generic linear codes over GF(q): duals, puncturing, Schur products,
//! monomial equivalences, exhaustive weight enumeration and orthogonality
//! status.

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::galois::{Elem, Field};
use crate::matgf::{schur, MatrixError, MatrixGF};

/// Default cap on the number of messages enumerated by brute force.
pub const DEFAULT_BUDGET: u64 = 1 << 26;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CodeError {
    #[error("the code has dimension zero")]
    ZeroCode,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("bad index set: {0}")]
    BadIndexSet(String),
    #[error("enumeration of {needed} messages exceeds the budget of {budget}")]
    BudgetExceeded { needed: u128, budget: u64 },
    #[error("bad transform: {0}")]
    BadTransform(String),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
}

/// `q^k`, saturating at `u128::MAX`.
pub fn message_count(q: u32, k: usize) -> u128 {
    (0..k).fold(1u128, |acc, _| acc.saturating_mul(q as u128))
}

pub fn check_budget(q: u32, k: usize, budget: u64) -> Result<(), CodeError> {
    let needed = message_count(q, k);
    if needed > budget as u128 {
        Err(CodeError::BudgetExceeded { needed, budget })
    } else {
        Ok(())
    }
}

/// Exact weight counts `A_0..A_n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightDistribution {
    pub counts: Vec<BigUint>,
}

impl WeightDistribution {
    pub fn from_counts<I: IntoIterator<Item = u64>>(counts: I) -> WeightDistribution {
        WeightDistribution {
            counts: counts.into_iter().map(BigUint::from).collect(),
        }
    }

    pub fn length(&self) -> usize {
        self.counts.len() - 1
    }

    pub fn total(&self) -> BigUint {
        self.counts.iter().sum()
    }

    /// Smallest positive weight with a nonzero count.
    pub fn min_distance(&self) -> Option<usize> {
        self.counts
            .iter()
            .enumerate()
            .skip(1)
            .find(|(_, c)| !c.is_zero())
            .map(|(i, _)| i)
    }

    pub fn get(&self, weight: usize) -> &BigUint {
        &self.counts[weight]
    }
}

impl Serialize for WeightDistribution {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let values: Vec<serde_json::Value> = self.counts.iter().map(biguint_json).collect();
        values.serialize(s)
    }
}

/// JSON number when it fits in 64 bits, decimal string otherwise.
pub fn biguint_json(x: &BigUint) -> serde_json::Value {
    match x.to_u64() {
        Some(v) => serde_json::Value::from(v),
        None => serde_json::Value::from(x.to_string()),
    }
}

/// Column permutation followed by column scaling:
/// `(c_1..c_n) -> (s_1 c_perm(1), ..., s_n c_perm(n))`, zero-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PermScale {
    pub perm: Vec<usize>,
    pub scale: Vec<Elem>,
}

impl PermScale {
    pub fn identity(n: usize) -> PermScale {
        PermScale {
            perm: (0..n).collect(),
            scale: vec![Elem::ONE; n],
        }
    }

    pub fn scaling(scale: Vec<Elem>) -> PermScale {
        PermScale {
            perm: (0..scale.len()).collect(),
            scale,
        }
    }

    fn validate(&self, n: usize) -> Result<(), CodeError> {
        if self.perm.len() != n || self.scale.len() != n {
            return Err(CodeError::BadTransform(format!(
                "transform has length {}/{} for a code of length {n}",
                self.perm.len(),
                self.scale.len()
            )));
        }
        let mut seen = vec![false; n];
        for &i in &self.perm {
            if i >= n || seen[i] {
                return Err(CodeError::BadTransform("not a permutation".into()));
            }
            seen[i] = true;
        }
        if self.scale.iter().any(|s| s.is_zero()) {
            return Err(CodeError::BadTransform("zero scale entry".into()));
        }
        Ok(())
    }

    pub fn apply_to_vector(&self, field: &Field, c: &[Elem]) -> Vec<Elem> {
        self.perm
            .iter()
            .zip(&self.scale)
            .map(|(&src, &s)| field.mul(s, c[src]))
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct OrthogonalityReport {
    pub self_orthogonal: bool,
    pub self_dual: bool,
    pub almost_self_dual: bool,
    pub lcd: bool,
    pub hull_dim: usize,
}

/// A linear code, stored by a generator in reduced row echelon form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearCode {
    gen: MatrixGF,
}

impl LinearCode {
    pub fn from_generator(m: &MatrixGF) -> Result<LinearCode, CodeError> {
        let gen = m.row_basis();
        if gen.rows() == 0 {
            return Err(CodeError::ZeroCode);
        }
        Ok(LinearCode { gen })
    }

    pub fn field(&self) -> &Field {
        self.gen.field()
    }

    pub fn length(&self) -> usize {
        self.gen.cols()
    }

    pub fn dimension(&self) -> usize {
        self.gen.rows()
    }

    pub fn generator(&self) -> &MatrixGF {
        &self.gen
    }

    pub fn same_code(&self, other: &LinearCode) -> bool {
        self.gen == other.gen
    }

    pub fn contains(&self, v: &[Elem]) -> bool {
        v.len() == self.length() && self.gen.contains_row(v).unwrap_or(false)
    }

    pub fn dual(&self) -> Result<LinearCode, CodeError> {
        if self.dimension() == self.length() {
            return Err(CodeError::ZeroCode);
        }
        Ok(LinearCode {
            gen: self.gen.nullspace(),
        })
    }

    /// Restriction to the strictly increasing, zero-based coordinates `idx`.
    pub fn puncture(&self, idx: &[usize]) -> Result<LinearCode, CodeError> {
        if idx.is_empty() {
            return Err(CodeError::BadIndexSet("empty".into()));
        }
        if idx.windows(2).any(|w| w[0] >= w[1]) {
            return Err(CodeError::BadIndexSet("not strictly increasing".into()));
        }
        if *idx.last().unwrap() >= self.length() {
            return Err(CodeError::BadIndexSet("index out of range".into()));
        }
        LinearCode::from_generator(&self.gen.select_columns(idx))
    }

    /// Span of all coordinatewise products of basis rows.
    pub fn schur_product(&self, other: &LinearCode) -> Result<LinearCode, CodeError> {
        if self.field() != other.field() {
            return Err(CodeError::Matrix(MatrixError::FieldMismatch));
        }
        if self.length() != other.length() {
            return Err(CodeError::DimensionMismatch(format!(
                "lengths {} and {}",
                self.length(),
                other.length()
            )));
        }
        let f = self.field();
        let mut rows = Vec::with_capacity(self.dimension() * other.dimension());
        for i in 0..self.dimension() {
            for j in 0..other.dimension() {
                rows.push(schur(f, self.gen.row(i), other.gen.row(j)));
            }
        }
        LinearCode::from_generator(&MatrixGF::from_rows(f, self.length(), rows)?)
    }

    pub fn schur_square(&self) -> LinearCode {
        let f = self.field();
        let k = self.dimension();
        let mut rows = Vec::with_capacity(k * (k + 1) / 2);
        for i in 0..k {
            for j in i..k {
                rows.push(schur(f, self.gen.row(i), self.gen.row(j)));
            }
        }
        let m = MatrixGF::from_rows(f, self.length(), rows).expect("rows have code length");
        LinearCode::from_generator(&m).expect("square of a nonzero code is nonzero")
    }

    pub fn apply_perm_scale(&self, t: &PermScale) -> Result<LinearCode, CodeError> {
        t.validate(self.length())?;
        let f = self.field();
        let rows = (0..self.dimension())
            .map(|r| t.apply_to_vector(f, self.gen.row(r)))
            .collect();
        LinearCode::from_generator(&MatrixGF::from_rows(f, self.length(), rows)?)
    }

    /// Pivot columns of the reduced generator: an information set.
    pub fn information_set(&self) -> Vec<usize> {
        self.gen.rref().pivots
    }

    pub fn orthogonality_status(&self) -> OrthogonalityReport {
        let gram = self.gen.gram();
        let k = self.dimension();
        let n = self.length();
        let gram_rank = gram.rank();
        let self_orthogonal = gram_rank == 0;
        OrthogonalityReport {
            self_orthogonal,
            self_dual: self_orthogonal && n == 2 * k,
            almost_self_dual: self_orthogonal && n % 2 == 1 && k == (n - 1) / 2,
            lcd: gram_rank == k,
            hull_dim: k - gram_rank,
        }
    }

    /// Exact weight distribution by enumerating all `q^k` messages.
    pub fn brute_weights(&self, budget: u64) -> Result<WeightDistribution, CodeError> {
        check_budget(self.field().order(), self.dimension(), budget)?;
        Ok(WeightDistribution::from_counts(enumerate_weights(
            &self.gen,
        )))
    }

    pub fn min_distance(&self, budget: u64) -> Result<usize, CodeError> {
        Ok(self
            .brute_weights(budget)?
            .min_distance()
            .expect("a nonzero code has a nonzero codeword"))
    }
}

/// Weight histogram of the row space of `gen` (rows assumed independent).
///
/// The coefficient of row 0 is split across workers; each worker walks the
/// remaining coefficients as an odometer over the elements in rep order, so
/// every step adds one precomputed difference vector.
fn enumerate_weights(gen: &MatrixGF) -> Vec<u64> {
    let f = gen.field().clone();
    let q = f.order() as usize;
    let k = gen.rows();
    let n = gen.cols();

    // step[i][j] = (elem(j+1) - elem(j)) * row_i, with wrap-around at j = q-1.
    let step: Vec<Vec<Vec<Elem>>> = (0..k)
        .map(|i| {
            (0..q)
                .map(|j| {
                    let next = Elem(((j + 1) % q) as u32);
                    let d = f.sub(next, Elem(j as u32));
                    gen.row(i).iter().map(|&g| f.mul(d, g)).collect()
                })
                .collect()
        })
        .collect();

    (0..q)
        .into_par_iter()
        .map(|lead| {
            let mut hist = vec![0u64; n + 1];
            let c = Elem(lead as u32);
            let mut word: Vec<Elem> = gen.row(0).iter().map(|&g| f.mul(c, g)).collect();
            let mut counter = vec![0usize; k];
            loop {
                hist[word.iter().filter(|x| !x.is_zero()).count()] += 1;
                let mut i = 1;
                loop {
                    if i >= k {
                        return hist;
                    }
                    let j = counter[i];
                    for (w, &d) in word.iter_mut().zip(&step[i][j]) {
                        *w = f.add(*w, d);
                    }
                    counter[i] = (j + 1) % q;
                    if counter[i] != 0 {
                        break;
                    }
                    i += 1;
                }
            }
        })
        .reduce(
            || vec![0u64; n + 1],
            |mut a, b| {
                for (x, y) in a.iter_mut().zip(b) {
                    *x += y;
                }
                a
            },
        )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(q: u32) -> Field {
        Field::with_order(q).unwrap()
    }

    fn code(f: &Field, rows: &[&[u32]]) -> LinearCode {
        let m =
            MatrixGF::from_reps(f, &rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap();
        LinearCode::from_generator(&m).unwrap()
    }

    fn worked_example(f: &Field) -> LinearCode {
        code(f, &[&[2, 4, 3, 0], &[1, 2, 3, 4], &[1, 4, 4, 1]])
    }

    #[test]
    fn from_generator_reduces() {
        let f = gf(5);
        let full = LinearCode::from_generator(&MatrixGF::identity(&f, 3)).unwrap();
        assert_eq!((full.length(), full.dimension()), (3, 3));
        assert_eq!(code(&f, &[&[1, 2, 3], &[1, 2, 3]]).dimension(), 1);
        assert_eq!(worked_example(&f).dimension(), 3);
        let zero = MatrixGF::zeros(&f, 2, 3);
        assert_eq!(LinearCode::from_generator(&zero), Err(CodeError::ZeroCode));
    }

    #[test]
    fn duals() {
        let f = gf(5);
        let c = code(&f, &[&[1, 1]]);
        assert_eq!(c.dual().unwrap().generator().to_reps(), vec![vec![1, 4]]);
        assert!(c.dual().unwrap().dual().unwrap().same_code(&c));
        let d = worked_example(&f).dual().unwrap();
        assert!(d.same_code(&code(&f, &[&[0, 1, 2, 3]])));
        let full = LinearCode::from_generator(&MatrixGF::identity(&f, 2)).unwrap();
        assert_eq!(full.dual(), Err(CodeError::ZeroCode));
    }

    #[test]
    fn punctures() {
        let f = gf(5);
        let c = worked_example(&f);
        assert!(c.puncture(&[0, 1, 2, 3]).unwrap().same_code(&c));
        let rep = code(&f, &[&[1, 1, 1]]);
        assert!(rep
            .puncture(&[0, 1])
            .unwrap()
            .same_code(&code(&f, &[&[1, 1]])));
        let p = c.puncture(&[0, 1, 2]).unwrap();
        assert_eq!((p.length(), p.dimension()), (3, 3));
        assert!(matches!(c.puncture(&[]), Err(CodeError::BadIndexSet(_))));
        assert!(matches!(
            c.puncture(&[1, 0]),
            Err(CodeError::BadIndexSet(_))
        ));
        assert!(matches!(
            c.puncture(&[0, 4]),
            Err(CodeError::BadIndexSet(_))
        ));
    }

    #[test]
    fn schur_products() {
        let f = gf(5);
        let c = worked_example(&f);
        let ones = code(&f, &[&[1, 1, 1, 1]]);
        assert!(ones.schur_product(&c).unwrap().same_code(&c));
        assert_eq!(c.schur_square().dimension(), 4);

        // GRS_{3,6} over GF(7) squares to dimension 2k-1 = 5.
        let f7 = gf(7);
        let alpha: Vec<Elem> = (1..7).map(Elem).collect();
        let rows: Vec<Vec<Elem>> = (0..3)
            .map(|i| alpha.iter().map(|&a| f7.pow_u(a, i)).collect())
            .collect();
        let grs = LinearCode::from_generator(&MatrixGF::from_rows(&f7, 6, rows).unwrap()).unwrap();
        assert_eq!(grs.schur_square().dimension(), 5);
        assert!(grs
            .schur_product(&grs)
            .unwrap()
            .same_code(&grs.schur_square()));
    }

    #[test]
    fn brute_force_weights() {
        let f = gf(5);
        let rep = code(&f, &[&[1, 1, 1]]);
        assert_eq!(
            rep.brute_weights(DEFAULT_BUDGET).unwrap(),
            WeightDistribution::from_counts([1, 0, 0, 4])
        );
        let c = worked_example(&f);
        let w = c.brute_weights(DEFAULT_BUDGET).unwrap();
        assert_eq!(w, WeightDistribution::from_counts([1, 4, 12, 60, 48]));
        assert_eq!(w.min_distance(), Some(1));
        assert_eq!(
            c.dual().unwrap().brute_weights(DEFAULT_BUDGET).unwrap(),
            WeightDistribution::from_counts([1, 0, 0, 4, 0])
        );
        assert!(matches!(
            c.brute_weights(100),
            Err(CodeError::BudgetExceeded {
                needed: 125,
                budget: 100
            })
        ));
    }

    #[test]
    fn perm_scale_transforms() {
        let f = gf(5);
        let c = worked_example(&f);
        assert!(c
            .apply_perm_scale(&PermScale::identity(4))
            .unwrap()
            .same_code(&c));
        let scaled = c
            .apply_perm_scale(&PermScale::scaling(vec![
                Elem(2),
                Elem(3),
                Elem(4),
                Elem(1),
            ]))
            .unwrap();
        assert_eq!(
            scaled.brute_weights(DEFAULT_BUDGET).unwrap(),
            c.brute_weights(DEFAULT_BUDGET).unwrap()
        );
        let swap = PermScale {
            perm: vec![1, 0, 2, 3],
            scale: vec![Elem::ONE; 4],
        };
        let swapped = c.apply_perm_scale(&swap).unwrap();
        assert_eq!(
            swapped.brute_weights(DEFAULT_BUDGET).unwrap(),
            c.brute_weights(DEFAULT_BUDGET).unwrap()
        );
        let bad = PermScale {
            perm: vec![0, 0, 2, 3],
            scale: vec![Elem::ONE; 4],
        };
        assert!(matches!(
            c.apply_perm_scale(&bad),
            Err(CodeError::BadTransform(_))
        ));
        let zero_scale = PermScale::scaling(vec![Elem(0), Elem(1), Elem(1), Elem(1)]);
        assert!(matches!(
            c.apply_perm_scale(&zero_scale),
            Err(CodeError::BadTransform(_))
        ));
    }

    #[test]
    fn orthogonality_statuses() {
        let f = gf(5);
        let sd = code(&f, &[&[1, 2]]).orthogonality_status();
        assert!(sd.self_orthogonal && sd.self_dual && !sd.lcd);
        assert_eq!(sd.hull_dim, 1);
        let lcd = code(&f, &[&[1, 1]]).orthogonality_status();
        assert!(lcd.lcd && !lcd.self_orthogonal);
        assert_eq!(lcd.hull_dim, 0);
        let asd = code(&f, &[&[1, 2, 0]]).orthogonality_status();
        assert!(asd.almost_self_dual && !asd.self_dual);
    }
}

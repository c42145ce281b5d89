//! [1,0]-twisted generalized Reed-Solomon codes.
//!
//! `C_{k,n}(alpha, v, eta)` is the evaluation code of the twisted polynomials
//! `f(x) = a_0 + a_1 x + ... + a_{k-1} x^{k-1} + eta a_0 x^k`, scaled column
//! by column by `v`.

mod schur;
mod selforth;
mod weights;

use serde::Serialize;
use thiserror::Error;

use crate::galois::{Elem, Field, FieldError};
use crate::lincode::{CodeError, LinearCode};
use crate::matgf::{MatrixError, MatrixGF};

pub use schur::{NonGrsBranch, NonGrsCertificate, SchurSquare};
pub use selforth::{LambdaCheck, SelfOrthWitness};
pub use weights::{
    binomial, l_sum, subset_product_count, unit_subset_count_closed_form, weights_from_min_count,
    weights_from_min_count_signed, Classification, CodeKind,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TgrsError {
    #[error("evaluation point {0} appears more than once")]
    RepeatedEvaluationPoint(u32),
    #[error("multiplier v_{0} is zero")]
    ZeroMultiplier(usize),
    #[error("eta must be nonzero")]
    ZeroEta,
    #[error("alpha has {alpha} entries but v has {v}")]
    LengthMismatch { alpha: usize, v: usize },
    #[error("need 1 <= k < n <= q, got k={k}, n={n}, q={q}")]
    BadDimension { k: usize, n: usize, q: u32 },
    #[error("0 is an evaluation point; the dual is not a TGRS code")]
    ZeroEvaluationPoint,
    #[error("outside the proven range: {0}")]
    OutOfTheoremRange(String),
    #[error("subset size {k} exceeds set size {size}")]
    BadSize { k: usize, size: usize },
    #[error("set must have more than 2 elements, got {0}")]
    SetTooSmall(usize),
    #[error("wrong shape: {0}")]
    WrongShape(String),
    #[error("element {0} is not in the field")]
    NotAnElement(u32),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error(transparent)]
    Code(#[from] CodeError),
}

/// `u_j = -prod_{i != j} (alpha_j - alpha_i)^{-1}`.
pub fn dual_multipliers_u(field: &Field, alpha: &[Elem]) -> Result<Vec<Elem>, TgrsError> {
    check_distinct(alpha)?;
    Ok((0..alpha.len())
        .map(|j| {
            let prod = field.product(
                alpha
                    .iter()
                    .enumerate()
                    .filter(|&(i, _)| i != j)
                    .map(|(_, &a)| field.sub(alpha[j], a)),
            );
            field.neg(field.inv(prod).expect("points are distinct"))
        })
        .collect())
}

fn check_distinct(alpha: &[Elem]) -> Result<(), TgrsError> {
    let mut seen = std::collections::HashSet::new();
    for a in alpha {
        if !seen.insert(*a) {
            return Err(TgrsError::RepeatedEvaluationPoint(a.rep()));
        }
    }
    Ok(())
}

/// `a_0 + ... + a_{k-1} x^{k-1} + eta a_0 x^k` with `k = coeffs.len()`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwistedPolynomial {
    pub coeffs: Vec<Elem>,
    pub eta: Elem,
}

impl TwistedPolynomial {
    /// Coefficients `c_0..c_k` of the underlying ordinary polynomial.
    pub fn expanded(&self, field: &Field) -> Vec<Elem> {
        let mut c = self.coeffs.clone();
        let a0 = c.first().copied().unwrap_or(Elem::ZERO);
        c.push(field.mul(self.eta, a0));
        c
    }

    pub fn eval(&self, field: &Field, x: Elem) -> Elem {
        self.expanded(field)
            .iter()
            .rev()
            .fold(Elem::ZERO, |acc, &c| field.add(field.mul(acc, x), c))
    }
}

/// Parameters `(q, k, alpha, v, eta)` of one code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TgrsParams {
    field: Field,
    k: usize,
    alpha: Vec<Elem>,
    v: Vec<Elem>,
    eta: Elem,
}

/// Integer-rep view used for serialization.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ParamsReps {
    pub k: usize,
    pub alpha: Vec<u32>,
    pub v: Vec<u32>,
    pub eta: u32,
}

impl TgrsParams {
    pub fn new(
        field: &Field,
        k: usize,
        alpha: Vec<Elem>,
        v: Vec<Elem>,
        eta: Elem,
    ) -> Result<TgrsParams, TgrsError> {
        for x in alpha.iter().chain(&v).chain(std::iter::once(&eta)) {
            if !field.contains(*x) {
                return Err(TgrsError::NotAnElement(x.rep()));
            }
        }
        if alpha.len() != v.len() {
            return Err(TgrsError::LengthMismatch {
                alpha: alpha.len(),
                v: v.len(),
            });
        }
        let n = alpha.len();
        if k == 0 || k >= n || n > field.order() as usize {
            return Err(TgrsError::BadDimension {
                k,
                n,
                q: field.order(),
            });
        }
        check_distinct(&alpha)?;
        if let Some(j) = v.iter().position(|x| x.is_zero()) {
            return Err(TgrsError::ZeroMultiplier(j + 1));
        }
        if eta.is_zero() {
            return Err(TgrsError::ZeroEta);
        }
        Ok(TgrsParams {
            field: field.clone(),
            k,
            alpha,
            v,
            eta,
        })
    }

    /// Build from integer reps.
    pub fn from_reps(
        field: &Field,
        k: usize,
        alpha: &[u32],
        v: &[u32],
        eta: u32,
    ) -> Result<TgrsParams, TgrsError> {
        let conv = |xs: &[u32]| -> Result<Vec<Elem>, TgrsError> {
            xs.iter()
                .map(|&r| field.elem(r as u64).map_err(|_| TgrsError::NotAnElement(r)))
                .collect()
        };
        let eta = field
            .elem(eta as u64)
            .map_err(|_| TgrsError::NotAnElement(eta))?;
        TgrsParams::new(field, k, conv(alpha)?, conv(v)?, eta)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.alpha.len()
    }

    pub fn alpha(&self) -> &[Elem] {
        &self.alpha
    }

    pub fn v(&self) -> &[Elem] {
        &self.v
    }

    pub fn eta(&self) -> Elem {
        self.eta
    }

    pub fn reps(&self) -> ParamsReps {
        ParamsReps {
            k: self.k,
            alpha: self.alpha.iter().map(|x| x.rep()).collect(),
            v: self.v.iter().map(|x| x.rep()).collect(),
            eta: self.eta.rep(),
        }
    }

    /// Index of the evaluation point 0, if present.
    pub fn zero_position(&self) -> Option<usize> {
        self.alpha.iter().position(|a| a.is_zero())
    }

    pub fn with_v(&self, v: Vec<Elem>) -> Result<TgrsParams, TgrsError> {
        TgrsParams::new(&self.field, self.k, self.alpha.clone(), v, self.eta)
    }

    /// Same code shape with coordinates reordered: position `i` of the
    /// result takes `(alpha, v)[perm[i]]`.
    pub fn reindexed(&self, perm: &[usize]) -> Result<TgrsParams, TgrsError> {
        if perm.len() != self.n() {
            return Err(TgrsError::WrongShape("permutation length".into()));
        }
        let alpha = perm.iter().map(|&i| self.alpha[i]).collect();
        let v = perm.iter().map(|&i| self.v[i]).collect();
        TgrsParams::new(&self.field, self.k, alpha, v, self.eta)
    }

    pub fn u(&self) -> Vec<Elem> {
        dual_multipliers_u(&self.field, &self.alpha).expect("validated distinct")
    }

    /// Product of all evaluation points.
    pub fn p_alpha(&self) -> Elem {
        self.field.product(self.alpha.iter().copied())
    }

    /// `(-1)^n` times the product of the evaluation points other than `alpha_j`.
    pub fn p_alpha_j(&self, j: usize) -> Elem {
        let f = &self.field;
        let prod = f.product(
            self.alpha
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != j)
                .map(|(_, &a)| a),
        );
        if self.n() % 2 == 1 {
            f.neg(prod)
        } else {
            prod
        }
    }

    pub fn generator_matrix(&self) -> MatrixGF {
        let f = &self.field;
        let mut rows = Vec::with_capacity(self.k);
        rows.push(
            self.alpha
                .iter()
                .zip(&self.v)
                .map(|(&a, &v)| {
                    f.mul(
                        v,
                        f.add(Elem::ONE, f.mul(self.eta, f.pow_u(a, self.k as u64))),
                    )
                })
                .collect(),
        );
        for i in 1..self.k {
            rows.push(
                self.alpha
                    .iter()
                    .zip(&self.v)
                    .map(|(&a, &v)| f.mul(v, f.pow_u(a, i as u64)))
                    .collect(),
            );
        }
        MatrixGF::from_rows(f, self.n(), rows).expect("rows have length n")
    }

    pub fn parity_check_matrix(&self) -> MatrixGF {
        let f = &self.field;
        let r = self.n() - self.k;
        let scale: Vec<Elem> = self
            .u()
            .iter()
            .zip(&self.v)
            .map(|(&u, &v)| f.div(u, v).expect("v nonzero"))
            .collect();
        let mut rows = Vec::with_capacity(r);
        for i in 0..r - 1 {
            rows.push(
                self.alpha
                    .iter()
                    .zip(&scale)
                    .map(|(&a, &s)| f.mul(s, f.pow_u(a, i as u64)))
                    .collect(),
            );
        }
        rows.push(
            (0..self.n())
                .map(|j| {
                    let top = f.pow_u(self.alpha[j], (r - 1) as u64);
                    f.mul(scale[j], f.add(top, f.mul(self.eta, self.p_alpha_j(j))))
                })
                .collect(),
        );
        MatrixGF::from_rows(f, self.n(), rows).expect("rows have length n")
    }

    pub fn code(&self) -> LinearCode {
        LinearCode::from_generator(&self.generator_matrix()).expect("generator has rank k")
    }

    /// Parameters `(n-k, alpha, w, eta')` of the dual code, defined when 0 is
    /// not an evaluation point. `w_j = u_j / (v_j alpha_j)` and
    /// `eta' = ((-1)^n eta P_alpha)^{-1}`.
    pub fn dual_params(&self) -> Result<TgrsParams, TgrsError> {
        if self.zero_position().is_some() {
            return Err(TgrsError::ZeroEvaluationPoint);
        }
        let f = &self.field;
        let w = self
            .u()
            .iter()
            .zip(&self.v)
            .zip(&self.alpha)
            .map(|((&u, &v), &a)| f.div(u, f.mul(v, a)).expect("nonzero"))
            .collect();
        // ((-1)^n eta P_alpha)^{-1}; the sign matters for odd n
        let mut t = f.mul(self.eta, self.p_alpha());
        if self.n() % 2 == 1 {
            t = f.neg(t);
        }
        TgrsParams::new(f, self.n() - self.k, self.alpha.clone(), w, f.inv(t)?)
    }

    /// The twisted polynomial whose evaluations give `message * G`.
    pub fn encode(&self, message: &[Elem]) -> Vec<Elem> {
        let poly = TwistedPolynomial {
            coeffs: message.to_vec(),
            eta: self.eta,
        };
        self.alpha
            .iter()
            .zip(&self.v)
            .map(|(&a, &v)| self.field.mul(v, poly.eval(&self.field, a)))
            .collect()
    }
}

/// `A_alpha = F_q` in canonical order: ascending reps with 0 moved last.
pub fn full_field_points(field: &Field) -> Vec<Elem> {
    let mut pts: Vec<Elem> = field.nonzero_elements().collect();
    pts.push(Elem::ZERO);
    pts
}

/// `A_alpha = F_q^*` in ascending rep order.
pub fn unit_points(field: &Field) -> Vec<Elem> {
    field.nonzero_elements().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matgf::dot;

    pub(crate) fn worked_example() -> TgrsParams {
        let f = Field::with_order(5).unwrap();
        TgrsParams::from_reps(&f, 3, &[1, 2, 3, 4], &[1, 1, 1, 1], 1).unwrap()
    }

    #[test]
    fn u_multipliers() {
        let f5 = Field::with_order(5).unwrap();
        let reps = |v: Vec<Elem>| v.iter().map(|x| x.rep()).collect::<Vec<_>>();
        let alpha: Vec<Elem> = (1..5).map(Elem).collect();
        assert_eq!(
            reps(dual_multipliers_u(&f5, &alpha).unwrap()),
            vec![1, 2, 3, 4]
        );
        assert_eq!(
            reps(dual_multipliers_u(&f5, &[Elem(0), Elem(1)]).unwrap()),
            vec![1, 4]
        );
        let f7 = Field::with_order(7).unwrap();
        let units = unit_points(&f7);
        assert_eq!(dual_multipliers_u(&f7, &units).unwrap(), units);
        assert_eq!(
            dual_multipliers_u(&f5, &[Elem(1), Elem(1)]),
            Err(TgrsError::RepeatedEvaluationPoint(1))
        );
    }

    #[test]
    fn twisted_evaluation() {
        let f = Field::with_order(5).unwrap();
        let p = TwistedPolynomial {
            coeffs: vec![Elem(1), Elem(0), Elem(0)],
            eta: Elem(1),
        };
        assert_eq!(p.eval(&f, Elem(2)), Elem(4));
        let z = TwistedPolynomial {
            coeffs: vec![Elem(0); 3],
            eta: Elem(3),
        };
        assert!(f.elements().all(|x| z.eval(&f, x).is_zero()));
        let id = TwistedPolynomial {
            coeffs: vec![Elem(0), Elem(1), Elem(0)],
            eta: Elem(4),
        };
        assert!(f.elements().all(|x| id.eval(&f, x) == x));
    }

    #[test]
    fn worked_example_matrices() {
        let p = worked_example();
        assert_eq!(
            p.generator_matrix().to_reps(),
            vec![vec![2, 4, 3, 0], vec![1, 2, 3, 4], vec![1, 4, 4, 1]]
        );
        assert_eq!(
            (0..4).map(|j| p.p_alpha_j(j).rep()).collect::<Vec<_>>(),
            vec![4, 2, 3, 1]
        );
        let h = p.parity_check_matrix();
        assert_eq!(h.to_reps(), vec![vec![0, 1, 2, 3]]);
        let g = p.generator_matrix();
        assert!(g.matmul(&h.transpose()).unwrap().is_zero());
        assert_eq!(dot(p.field(), g.row(0), h.row(0)), Elem::ZERO);
    }

    #[test]
    fn encode_matches_generator() {
        let p = worked_example();
        let g = p.generator_matrix();
        let msg = [Elem(2), Elem(0), Elem(3)];
        let expect: Vec<Elem> = (0..4)
            .map(|j| {
                p.field()
                    .sum((0..3).map(|i| p.field().mul(msg[i], g.get(i, j))))
            })
            .collect();
        assert_eq!(p.encode(&msg), expect);
    }

    #[test]
    fn dual_parameters() {
        let p = worked_example();
        let d = p.dual_params().unwrap();
        assert_eq!(d.k(), 1);
        assert_eq!(d.eta(), Elem(4));
        assert_eq!(d.v(), &[Elem(1); 4]);
        assert!(d
            .generator_matrix()
            .row_space_equal(&p.generator_matrix().nullspace())
            .unwrap());
        let back = d.dual_params().unwrap();
        assert!(back.code().same_code(&p.code()));
        let f = Field::with_order(5).unwrap();
        let z = TgrsParams::from_reps(&f, 3, &[0, 1, 2, 3], &[1; 4], 1).unwrap();
        assert_eq!(z.dual_params(), Err(TgrsError::ZeroEvaluationPoint));
    }

    #[test]
    fn dual_twist_at_odd_length() {
        let f = Field::with_order(11).unwrap();
        let p = TgrsParams::from_reps(&f, 3, &[9, 7, 1, 3, 6], &[6, 6, 9, 4, 1], 2).unwrap();
        let h = p.parity_check_matrix();
        let d = p.dual_params().unwrap();
        assert!(d.generator_matrix().row_space_equal(&h).unwrap());
        // eta' = (eta P_alpha)^{-1} without the sign misses the dual when n is odd
        let unsigned = f.inv(f.mul(p.eta(), p.p_alpha())).unwrap();
        let wrong = TgrsParams::new(&f, 2, d.alpha().to_vec(), d.v().to_vec(), unsigned).unwrap();
        assert!(!wrong.generator_matrix().row_space_equal(&h).unwrap());
    }

    #[test]
    fn single_parity_row_with_zero_point() {
        // n - k = 1: the only row is the twisted one; alpha_j^0 = 1 even at alpha_j = 0.
        let f = Field::with_order(5).unwrap();
        let p = TgrsParams::from_reps(&f, 3, &[1, 2, 3, 0], &[1; 4], 2).unwrap();
        let h = p.parity_check_matrix();
        assert_eq!(h.rows(), 1);
        let u = p.u();
        let expect = f.mul(u[3], f.add(Elem::ONE, f.mul(Elem(2), p.p_alpha_j(3))));
        assert_eq!(h.get(0, 3), expect);
        assert!(p
            .generator_matrix()
            .matmul(&h.transpose())
            .unwrap()
            .is_zero());
    }

    #[test]
    fn rejects_bad_params() {
        let f = Field::with_order(5).unwrap();
        assert!(matches!(
            TgrsParams::from_reps(&f, 3, &[1, 2, 3], &[1; 3], 1),
            Err(TgrsError::BadDimension { .. })
        ));
        assert_eq!(
            TgrsParams::from_reps(&f, 2, &[1, 2, 3], &[1, 0, 1], 1),
            Err(TgrsError::ZeroMultiplier(2))
        );
        assert_eq!(
            TgrsParams::from_reps(&f, 2, &[1, 2, 3], &[1; 3], 0),
            Err(TgrsError::ZeroEta)
        );
        assert_eq!(
            TgrsParams::from_reps(&f, 2, &[1, 2, 2], &[1; 3], 1),
            Err(TgrsError::RepeatedEvaluationPoint(2))
        );
        assert_eq!(
            TgrsParams::from_reps(&f, 2, &[1, 2, 7], &[1; 3], 1),
            Err(TgrsError::NotAnElement(7))
        );
    }

    #[test]
    fn scaling_v_keeps_weights() {
        let p = worked_example();
        let scaled = p.with_v(vec![Elem(3); 4]).unwrap();
        assert!(scaled.code().same_code(&p.code()));
        let mixed = p.with_v(vec![Elem(1), Elem(2), Elem(3), Elem(4)]).unwrap();
        let budget = crate::lincode::DEFAULT_BUDGET;
        assert_eq!(
            mixed.code().brute_weights(budget).unwrap(),
            p.code().brute_weights(budget).unwrap()
        );
        assert_eq!(mixed.classify().unwrap(), p.classify().unwrap());
    }
}

//! Self-orthogonality: the polynomial witness system and the lambda tests
//! for (almost) self-dual codes.

use super::{TgrsError, TgrsParams};
use crate::galois::Elem;
use crate::matgf::MatrixGF;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SelfOrthWitness {
    /// Coefficients `g_0..g_{q-1-2k}` of a witness polynomial.
    Witness(Vec<Elem>),
    Infeasible,
}

impl SelfOrthWitness {
    pub fn is_witness(&self) -> bool {
        matches!(self, SelfOrthWitness::Witness(_))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LambdaCheck {
    AlmostSelfDual(Elem),
    SelfDual(Elem),
    Fails(String),
}

impl TgrsParams {
    /// Solve for `g` with `deg g <= q-1-2k`:
    /// `g(alpha_j) = v_j^2` at the nonzero points, `g(beta) = 0` off the
    /// support, and `g_0 + eta^2 g_{q-1-2k}` equal to `v_z^2` when
    /// `alpha_z = 0`, else to 0. Free variables are set to zero.
    pub fn self_orthogonal_witness(&self) -> Result<SelfOrthWitness, TgrsError> {
        let f = self.field();
        let q = f.order() as usize;
        let k = self.k;
        if k < 3 || 2 * k > q {
            return Err(TgrsError::OutOfTheoremRange(format!(
                "witness system needs 3 <= k < (q+1)/2, got k={k}, q={q}"
            )));
        }
        if 2 * k == q {
            // deg g <= -1: only the zero polynomial, which cannot hit v_j^2 != 0
            return Ok(SelfOrthWitness::Infeasible);
        }
        let deg = q - 1 - 2 * k;
        let unknowns = deg + 1;
        let mut rows: Vec<Vec<Elem>> = Vec::new();
        let eval_row = |x: Elem, rhs: Elem| -> Vec<Elem> {
            let mut r: Vec<Elem> = (0..unknowns).map(|i| f.pow_u(x, i as u64)).collect();
            r.push(rhs);
            r
        };
        for (&a, &v) in self.alpha.iter().zip(&self.v) {
            if !a.is_zero() {
                rows.push(eval_row(a, f.square(v)));
            }
        }
        for b in f.nonzero_elements() {
            if !self.alpha.contains(&b) {
                rows.push(eval_row(b, Elem::ZERO));
            }
        }
        let mut boundary = vec![Elem::ZERO; unknowns + 1];
        boundary[0] = Elem::ONE;
        boundary[deg] = f.add(boundary[deg], f.square(self.eta));
        boundary[unknowns] = match self.zero_position() {
            Some(z) => f.square(self.v[z]),
            None => Elem::ZERO,
        };
        rows.push(boundary);

        let system = MatrixGF::from_rows(f, unknowns + 1, rows)?;
        let rref = system.rref();
        if rref.pivots.contains(&unknowns) {
            return Ok(SelfOrthWitness::Infeasible);
        }
        let mut g = vec![Elem::ZERO; unknowns];
        for (r, &c) in rref.pivots.iter().enumerate() {
            g[c] = rref.reduced.get(r, unknowns);
        }
        Ok(SelfOrthWitness::Witness(g))
    }

    /// The lambda relations for `n = 2k+1` with `alpha_n = 0` (almost
    /// self-dual) or `n = 2k` without 0 (self-dual).
    pub fn lambda_self_dual_check(&self) -> Result<LambdaCheck, TgrsError> {
        let f = self.field();
        let (k, n) = (self.k, self.n());
        if k < 3 || 2 * k >= f.order() as usize {
            return Err(TgrsError::OutOfTheoremRange(format!(
                "lambda test needs 3 <= k < q/2, got k={k}, q={}",
                f.order()
            )));
        }
        let zero = self.zero_position();
        let almost = n == 2 * k + 1 && zero == Some(n - 1);
        let full = n == 2 * k && zero.is_none();
        if !almost && !full {
            return Err(TgrsError::WrongShape(format!(
                "need n = 2k+1 with alpha_n = 0 or n = 2k without 0, got n={n}, k={k}, zero at {zero:?}"
            )));
        }
        let m = 2 * k;
        // r_j = alpha_j^{-1} prod_{i != j, i <= 2k} (alpha_j - alpha_i)^{-1}
        let r: Vec<Elem> = (0..m)
            .map(|j| {
                let prod = f.product(
                    (0..m)
                        .filter(|&i| i != j)
                        .map(|i| f.sub(self.alpha[j], self.alpha[i])),
                );
                f.inv(f.mul(self.alpha[j], prod))
                    .expect("distinct nonzero points")
            })
            .collect();
        let inv_prod = f.inv(f.product(self.alpha[..m].iter().copied()))?;
        let eta2 = f.square(self.eta);
        // almost: v_j^2 = -lambda r_j; self-dual: v_j^2 = lambda r_j
        let signed: Vec<Elem> = if almost {
            r.iter().map(|&x| f.neg(x)).collect()
        } else {
            r
        };
        let lambda = f.div(f.square(self.v[0]), signed[0])?;
        if let Some(j) = (0..m).find(|&j| f.square(self.v[j]) != f.mul(lambda, signed[j])) {
            return Ok(LambdaCheck::Fails(format!(
                "v_{}^2 does not match lambda = {} from v_1",
                j + 1,
                lambda
            )));
        }
        if almost {
            let rhs = f.mul(lambda, f.add(f.neg(inv_prod), eta2));
            if rhs != f.square(self.v[n - 1]) {
                return Ok(LambdaCheck::Fails(format!(
                    "v_{n}^2 = {} but lambda (eta^2 - prod alpha^-1) = {}",
                    f.square(self.v[n - 1]),
                    rhs
                )));
            }
            Ok(LambdaCheck::AlmostSelfDual(lambda))
        } else {
            if eta2 != inv_prod {
                return Ok(LambdaCheck::Fails(format!(
                    "eta^2 = {eta2} differs from prod alpha^-1 = {inv_prod}"
                )));
            }
            Ok(LambdaCheck::SelfDual(lambda))
        }
    }
}

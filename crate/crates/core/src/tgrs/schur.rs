//! Schur squares and the non-GRS certificate.

use num_traits::Zero;
use serde::Serialize;

use super::{TgrsError, TgrsParams};
use crate::galois::Elem;
use crate::lincode::LinearCode;
use crate::matgf::{schur, MatrixGF};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SchurSquare {
    FullSpace(usize),
    Tgrs(TgrsParams),
    /// `n = 2k` and `eta^2 P_alpha = 1`: the twisted row falls into the span
    /// of `v_j^2 alpha_j^i`, `1 <= i <= n-1`, which is stored here.
    Hyperplane(MatrixGF),
}

impl SchurSquare {
    pub fn dimension(&self) -> usize {
        match self {
            SchurSquare::FullSpace(n) => *n,
            SchurSquare::Tgrs(p) => p.k(),
            SchurSquare::Hyperplane(m) => m.rows(),
        }
    }

    /// Generator of the square's row space.
    pub fn generator(&self, like: &TgrsParams) -> MatrixGF {
        match self {
            SchurSquare::FullSpace(n) => MatrixGF::identity(like.field(), *n),
            SchurSquare::Tgrs(p) => p.generator_matrix(),
            SchurSquare::Hyperplane(m) => m.clone(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum NonGrsBranch {
    /// `dim C^2` compared with the GRS value `2k - 1`.
    CodeSquare,
    /// `dim (C^perp)^2` compared with the GRS value `2(n-k) - 1`.
    DualSquare,
    /// A weight-1 word inside `(C^perp)^2`, impossible for a GRS dual square.
    WeightOneDualWord,
    /// `C` is not MDS, and every GRS code is.
    NotMds,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NonGrsCertificate {
    pub branch: NonGrsBranch,
    pub observed_dim: usize,
    pub grs_dim: usize,
    /// The weight-1 word for [`NonGrsBranch::WeightOneDualWord`], as reps.
    pub witness: Option<Vec<u32>>,
    pub certified: bool,
}

impl TgrsParams {
    /// `C^2` is spanned by the evaluations of `x, ..., x^{2k-1}` and
    /// `1 + eta^2 x^{2k}`, scaled by `v^2`. That is `C_{2k,n}(alpha, v^2, eta^2)`
    /// for `3 <= k < n/2` and the full space for `k > n/2`. At `n = 2k` the
    /// `n x n` evaluation matrix has determinant `V (1 - eta^2 P_alpha)`, so
    /// the square is a hyperplane when `eta^2 P_alpha = 1`.
    pub fn schur_square_params(&self) -> Result<SchurSquare, TgrsError> {
        if self.k < 3 {
            return Err(TgrsError::OutOfTheoremRange(format!(
                "Schur square structure needs k >= 3, got {}",
                self.k
            )));
        }
        let f = self.field();
        let n = self.n();
        let v2: Vec<Elem> = self.v.iter().map(|&x| f.square(x)).collect();
        if 2 * self.k == n && f.mul(f.square(self.eta), self.p_alpha()) == Elem::ONE {
            let rows = (1..n)
                .map(|i| {
                    self.alpha
                        .iter()
                        .zip(&v2)
                        .map(|(&a, &w)| f.mul(w, f.pow_u(a, i as u64)))
                        .collect()
                })
                .collect();
            return Ok(SchurSquare::Hyperplane(MatrixGF::from_rows(f, n, rows)?));
        }
        if 2 * self.k >= n {
            return Ok(SchurSquare::FullSpace(n));
        }
        Ok(SchurSquare::Tgrs(TgrsParams::new(
            f,
            2 * self.k,
            self.alpha.clone(),
            v2,
            f.square(self.eta),
        )?))
    }

    pub fn non_grs_certificate(&self) -> Result<NonGrsCertificate, TgrsError> {
        let (k, n) = (self.k, self.n());
        if k < 3 || k + 3 > n {
            return Err(TgrsError::OutOfTheoremRange(format!(
                "non-GRS certificate needs 3 <= k <= n-3, got k={k}, n={n}"
            )));
        }
        if 2 * k - 1 < n {
            let observed = self.code().schur_square().dimension();
            if observed == 2 * k - 1 {
                // only at n = 2k with eta^2 P_alpha = 1; such codes can be GRS
                let mds = self.m_count().is_zero();
                return Ok(NonGrsCertificate {
                    branch: if mds {
                        NonGrsBranch::CodeSquare
                    } else {
                        NonGrsBranch::NotMds
                    },
                    observed_dim: observed,
                    grs_dim: 2 * k - 1,
                    witness: None,
                    certified: !mds,
                });
            }
            return Ok(NonGrsCertificate {
                branch: NonGrsBranch::CodeSquare,
                observed_dim: observed,
                grs_dim: 2 * k - 1,
                witness: None,
                certified: observed != 2 * k - 1,
            });
        }
        let dual = LinearCode::from_generator(&self.parity_check_matrix())?;
        let dual_sq = dual.schur_square();
        let grs_dim = 2 * (n - k) - 1;
        match self.zero_position() {
            None => Ok(NonGrsCertificate {
                branch: NonGrsBranch::DualSquare,
                observed_dim: dual_sq.dimension(),
                grs_dim,
                witness: None,
                certified: dual_sq.dimension() != grs_dim,
            }),
            Some(_) => {
                let c = self.weight_one_dual_word();
                let weight = c.iter().filter(|x| !x.is_zero()).count();
                Ok(NonGrsCertificate {
                    branch: NonGrsBranch::WeightOneDualWord,
                    observed_dim: dual_sq.dimension(),
                    grs_dim,
                    certified: weight == 1 && dual_sq.contains(&c),
                    witness: Some(c.iter().map(|x| x.rep()).collect()),
                })
            }
        }
    }

    /// `c_1 * c_4 - c_2 * c_3` from rows 0, 1, n-k-2 and n-k-1 of the parity
    /// check matrix.
    fn weight_one_dual_word(&self) -> Vec<Elem> {
        let f = self.field();
        let h = self.parity_check_matrix();
        let r = self.n() - self.k;
        let a = schur(f, h.row(0), h.row(r - 1));
        let b = schur(f, h.row(1), h.row(r - 2));
        a.iter().zip(&b).map(|(&x, &y)| f.sub(x, y)).collect()
    }
}

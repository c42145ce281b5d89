//! Independent audit of the structured results.
//!
//! Weight and subset counting are redone here from scratch, without the
//! enumerators in `lincode` or the dynamic program in `tgrs`, and compared
//! with the closed forms.

use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use num_bigint::{BigInt, BigUint};
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use crate::galois::{Elem, Field};
use crate::lincode::{biguint_json, check_budget, CodeError};
use crate::matgf::{dot, schur, MatrixGF};
use crate::tgrs::{binomial, ParamsReps, SchurSquare, SelfOrthWitness, TgrsError, TgrsParams};

/// Cap on the number of subsets the subset oracle will list.
pub const SUBSET_BUDGET: u64 = 1 << 26;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error("enumeration of {needed} items exceeds the budget of {budget}")]
    BudgetExceeded { needed: u128, budget: u64 },
    #[error("unknown check `{0}`")]
    UnknownCheck(String),
    #[error(transparent)]
    Tgrs(#[from] TgrsError),
}

impl From<CodeError> for VerifyError {
    fn from(e: CodeError) -> Self {
        match e {
            CodeError::BudgetExceeded { needed, budget } => {
                VerifyError::BudgetExceeded { needed, budget }
            }
            other => VerifyError::Tgrs(TgrsError::Code(other)),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckKind {
    Parity,
    Weights,
    DualParams,
    Classification,
    Schur,
    SelfOrth,
}

impl CheckKind {
    pub const ALL: [CheckKind; 6] = [
        CheckKind::Parity,
        CheckKind::Weights,
        CheckKind::DualParams,
        CheckKind::Classification,
        CheckKind::Schur,
        CheckKind::SelfOrth,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CheckKind::Parity => "parity",
            CheckKind::Weights => "weights",
            CheckKind::DualParams => "dual_params",
            CheckKind::Classification => "classification",
            CheckKind::Schur => "schur",
            CheckKind::SelfOrth => "self_orth",
        }
    }

    /// The claim a check validates.
    pub fn claim(self) -> &'static str {
        match self {
            CheckKind::Parity => "H is a parity-check matrix of C",
            CheckKind::Weights => "closed-form weight distributions of C and its dual",
            CheckKind::DualParams => "the dual is C_{n-k,n}(alpha, w, eta') when 0 is not a point",
            CheckKind::Classification => "C is MDS iff no k-subset of alpha has product (-1)^k/eta",
            CheckKind::Schur => {
                "C^2 = C_{2k,n}(alpha, v^2, eta^2) below half length, else the full space"
            }
            CheckKind::SelfOrth => "C is self-orthogonal iff the witness polynomial exists",
        }
    }

    /// Parse a comma list of check names, or `all`.
    pub fn parse_list(s: &str) -> Result<Vec<CheckKind>, VerifyError> {
        if s.trim() == "all" {
            return Ok(CheckKind::ALL.to_vec());
        }
        let mut out = Vec::new();
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let c: CheckKind = part.parse()?;
            if !out.contains(&c) {
                out.push(c);
            }
        }
        Ok(out)
    }
}

impl FromStr for CheckKind {
    type Err = VerifyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        CheckKind::ALL
            .into_iter()
            .find(|c| c.name() == s || c.name().replace('_', "-") == s)
            .ok_or_else(|| VerifyError::UnknownCheck(s.to_string()))
    }
}

impl fmt::Display for CheckKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    /// Outside the range where the claim is made.
    Skipped,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub claim: String,
    pub status: Status,
    pub expected: Value,
    pub observed: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl Check {
    fn compare(kind: CheckKind, expected: Value, observed: Value) -> Check {
        let status = if expected == observed {
            Status::Pass
        } else {
            Status::Fail
        };
        Check {
            name: kind.name().to_string(),
            claim: kind.claim().to_string(),
            status,
            expected,
            observed,
            detail: None,
        }
    }

    fn skipped(kind: CheckKind, reason: String) -> Check {
        Check {
            name: kind.name().to_string(),
            claim: kind.claim().to_string(),
            status: Status::Skipped,
            expected: Value::Null,
            observed: Value::Null,
            detail: Some(reason),
        }
    }

    fn with_detail(mut self, d: impl Into<String>) -> Check {
        self.detail = Some(d.into());
        self
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Subject {
    pub field: String,
    #[serde(flatten)]
    pub params: ParamsReps,
}

#[derive(Debug, Clone, Serialize)]
pub struct AuditReport {
    pub subject: Subject,
    pub checks: Vec<Check>,
    /// Known misprints, evaluated for the record. They do not affect
    /// [`AuditReport::passed`].
    pub discrepancies: Vec<Check>,
}

impl AuditReport {
    /// True if no check failed.
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.status == Status::Fail)
    }
}

/// Weight counts of the row space of `gen`, by encoding every message.
pub fn naive_weight_counts(gen: &MatrixGF, budget: u64) -> Result<Vec<BigUint>, VerifyError> {
    let f = gen.field();
    let q = f.order();
    let (k, n) = (gen.rows(), gen.cols());
    check_budget(q, k, budget)?;
    if k == 0 {
        let mut out = vec![BigUint::zero(); n + 1];
        out[0] = BigUint::from(1u8);
        return Ok(out);
    }
    let rows = gen.row_vecs();
    let partial: Vec<Vec<u64>> = (0..q)
        .into_par_iter()
        .map(|lead| {
            let mut counts = vec![0u64; n + 1];
            let mut msg = vec![0u32; k];
            msg[0] = lead;
            loop {
                let w = (0..n)
                    .filter(|&j| {
                        let s = f.sum((0..k).map(|i| f.mul(Elem(msg[i]), rows[i][j])));
                        !s.is_zero()
                    })
                    .count();
                counts[w] += 1;
                // odometer over msg[1..]
                let mut i = k;
                loop {
                    i -= 1;
                    if i == 0 {
                        return counts;
                    }
                    msg[i] += 1;
                    if msg[i] < q {
                        break;
                    }
                    msg[i] = 0;
                }
            }
        })
        .collect();
    let mut out = vec![BigUint::zero(); n + 1];
    for c in partial {
        for (o, x) in out.iter_mut().zip(c) {
            *o += x;
        }
    }
    Ok(out)
}

/// Number of `k`-subsets of `set`, other than `set` itself, whose product
/// is `b`, by listing them.
pub fn subset_count_oracle(
    field: &Field,
    k: usize,
    b: Elem,
    set: &[Elem],
) -> Result<BigUint, VerifyError> {
    let needed = binomial(set.len() as u64, k as u64);
    if needed > BigUint::from(SUBSET_BUDGET) {
        return Err(VerifyError::BudgetExceeded {
            needed: needed.to_u128().unwrap_or(u128::MAX),
            budget: SUBSET_BUDGET,
        });
    }
    let hits = set
        .iter()
        .combinations(k)
        .filter(|c| c.len() < set.len())
        .filter(|c| field.product(c.iter().map(|&&x| x)) == b)
        .count();
    Ok(BigUint::from(hits))
}

/// The dual weight distribution as printed, with the coefficient
/// `(-1)^s binom(k, s) A_k^perp` on the seed term.
pub fn printed_dual_distribution(n: usize, k: usize, q: u32, a_k_perp: &BigInt) -> Vec<BigInt> {
    let qb = BigInt::from(q);
    let mut out = vec![BigInt::zero(); n + 1];
    out[0] = BigInt::from(1);
    out[k] = a_k_perp.clone();
    for s in 1..=(n - k) {
        let mut acc = BigInt::zero();
        for j in 0..s {
            let term =
                BigInt::from(binomial((k + s) as u64, j as u64)) * (qb.pow((s - j) as u32) - 1);
            if j % 2 == 0 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        acc *= BigInt::from(binomial(n as u64, (k + s) as u64));
        let tail = BigInt::from(binomial(k as u64, s as u64)) * a_k_perp;
        if s % 2 == 0 {
            acc += tail;
        } else {
            acc -= tail;
        }
        out[k + s] = acc;
    }
    out
}

/// `H` with the sign of the twist term in its last row flipped:
/// `(u_j / v_j)(alpha_j^{n-k-1} - eta P_{alpha,j})`.
pub fn flipped_parity_check_matrix(p: &TgrsParams) -> MatrixGF {
    let f = p.field();
    let mut h = p.parity_check_matrix();
    let r = p.n() - p.k();
    let u = p.u();
    for j in 0..p.n() {
        let scale = f.div(u[j], p.v()[j]).expect("v is nonzero");
        let t = f.sub(
            f.pow_u(p.alpha()[j], (r - 1) as u64),
            f.mul(p.eta(), p.p_alpha_j(j)),
        );
        h.set(r - 1, j, f.mul(scale, t));
    }
    h
}

/// Compare a candidate parity-check matrix `h` with the code of `p`.
pub fn parity_check(p: &TgrsParams, h: &MatrixGF) -> Check {
    let g = p.generator_matrix();
    let f = p.field();
    let mut first = Value::Null;
    'outer: for i in 0..g.rows() {
        for j in 0..h.rows() {
            let x = dot(f, g.row(i), h.row(j));
            if !x.is_zero() {
                first = json!({ "g_row": i, "h_row": j, "value": x.rep() });
                break 'outer;
            }
        }
    }
    let span_equal = h.row_space_equal(&g.nullspace()).unwrap_or(false);
    let expected = json!({ "first_nonzero_of_g_ht": Value::Null, "span_equal": true });
    let observed = json!({ "first_nonzero_of_g_ht": first, "span_equal": span_equal });
    Check::compare(CheckKind::Parity, expected, observed)
}

fn weights_json(w: &[BigUint]) -> Value {
    Value::Array(w.iter().map(biguint_json).collect())
}

fn bigint_json(x: &BigInt) -> Value {
    match x.to_i64() {
        Some(v) => json!(v),
        None => json!(x.to_string()),
    }
}

/// The printed dual formula against enumeration of the dual.
pub fn printed_dual_formula_check(p: &TgrsParams, budget: u64) -> Result<Check, VerifyError> {
    let (n, k, q) = (p.n(), p.k(), p.field().order());
    let g = p.generator_matrix();
    let code = naive_weight_counts(&g, budget)?;
    let dual = naive_weight_counts(&g.nullspace(), budget)?;
    let printed = printed_dual_distribution(n, k, q, &BigInt::from(code[n - k].clone()));
    let mismatch = (0..=n).find(|&i| BigInt::from(dual[i].clone()) != printed[i]);
    let mut check = Check {
        name: "dual_weights_printed_formula".into(),
        claim: "dual weights from the printed coefficient (-1)^s binom(k,s) A_k^perp".into(),
        status: if mismatch.is_some() {
            Status::Fail
        } else {
            Status::Pass
        },
        expected: weights_json(&dual),
        observed: Value::Array(printed.iter().map(bigint_json).collect()),
        detail: None,
    };
    if let Some(i) = mismatch {
        check.detail = Some(format!(
            "A^perp_{i}: printed formula gives {}, enumeration gives {}",
            printed[i], dual[i]
        ));
    }
    Ok(check)
}

fn budget_ok(q: u32, k: usize, budget: u64) -> Result<(), VerifyError> {
    Ok(check_budget(q, k, budget)?)
}

/// Run the requested checks against `p`.
pub fn audit(
    p: &TgrsParams,
    checks: &[CheckKind],
    budget: u64,
) -> Result<AuditReport, VerifyError> {
    let (n, k, q) = (p.n(), p.k(), p.field().order());
    for c in checks {
        match c {
            CheckKind::Weights => {
                budget_ok(q, k, budget)?;
                budget_ok(q, n - k, budget)?;
            }
            CheckKind::Classification => budget_ok(q, k, budget)?,
            _ => {}
        }
    }
    let mut out = Vec::with_capacity(checks.len());
    let mut discrepancies = Vec::new();
    for &c in checks {
        let check = match c {
            CheckKind::Parity => parity_check(p, &p.parity_check_matrix()),
            CheckKind::Weights => {
                let check = weights_check(p, budget)?;
                if check.status != Status::Skipped {
                    discrepancies.push(printed_dual_formula_check(p, budget)?);
                }
                check
            }
            CheckKind::DualParams => dual_params_check(p)?,
            CheckKind::Classification => classification_check(p, budget)?,
            CheckKind::Schur => schur_check(p)?,
            CheckKind::SelfOrth => self_orth_check(p)?,
        };
        out.push(check);
    }
    Ok(AuditReport {
        subject: Subject {
            field: p.field().spec_string(),
            params: p.reps(),
        },
        checks: out,
        discrepancies,
    })
}

fn weights_check(p: &TgrsParams, budget: u64) -> Result<Check, VerifyError> {
    let (closed, closed_dual) = match p.closed_weight_distribution() {
        Ok(x) => x,
        Err(TgrsError::OutOfTheoremRange(why)) => {
            return Ok(Check::skipped(CheckKind::Weights, why))
        }
        Err(e) => return Err(e.into()),
    };
    let g = p.generator_matrix();
    let brute = naive_weight_counts(&g, budget)?;
    let brute_dual = naive_weight_counts(&g.nullspace(), budget)?;
    Ok(Check::compare(
        CheckKind::Weights,
        json!({ "code": weights_json(&closed.counts), "dual": weights_json(&closed_dual.counts) }),
        json!({ "code": weights_json(&brute), "dual": weights_json(&brute_dual) }),
    ))
}

fn dual_params_check(p: &TgrsParams) -> Result<Check, VerifyError> {
    let dp = match p.dual_params() {
        Ok(d) => d,
        Err(TgrsError::ZeroEvaluationPoint) => {
            return Ok(Check::skipped(
                CheckKind::DualParams,
                "0 is an evaluation point".to_string(),
            ))
        }
        Err(e) => return Err(e.into()),
    };
    let same = dp
        .generator_matrix()
        .row_space_equal(&p.generator_matrix().nullspace())
        .map_err(TgrsError::from)?;
    let reps = dp.reps();
    Ok(Check::compare(
        CheckKind::DualParams,
        json!({ "span_equal": true }),
        json!({ "span_equal": same }),
    )
    .with_detail(format!("k={}, w={:?}, eta'={}", reps.k, reps.v, reps.eta)))
}

fn classification_check(p: &TgrsParams, budget: u64) -> Result<Check, VerifyError> {
    let cl = match p.classify() {
        Ok(c) => c,
        Err(TgrsError::OutOfTheoremRange(why)) => {
            return Ok(Check::skipped(CheckKind::Classification, why))
        }
        Err(e) => return Err(e.into()),
    };
    let counts = naive_weight_counts(&p.generator_matrix(), budget)?;
    let d = (1..counts.len()).find(|&i| !counts[i].is_zero());
    Ok(Check::compare(
        CheckKind::Classification,
        json!({ "d": cl.d }),
        json!({ "d": d }),
    )
    .with_detail(format!("{} with m_count = {}", cl.kind, cl.m_count)))
}

fn schur_check(p: &TgrsParams) -> Result<Check, VerifyError> {
    let sq = match p.schur_square_params() {
        Ok(s) => s,
        Err(TgrsError::OutOfTheoremRange(why)) => return Ok(Check::skipped(CheckKind::Schur, why)),
        Err(e) => return Err(e.into()),
    };
    let f = p.field();
    let g = p.generator_matrix();
    let mut products = Vec::new();
    for i in 0..g.rows() {
        for j in i..g.rows() {
            products.push(schur(f, g.row(i), g.row(j)));
        }
    }
    let naive = MatrixGF::from_rows(f, p.n(), products).map_err(TgrsError::from)?;
    let structured = sq.generator(p);
    let same = structured
        .row_space_equal(&naive)
        .map_err(TgrsError::from)?;
    let label = match &sq {
        SchurSquare::FullSpace(_) => "full space".to_string(),
        SchurSquare::Hyperplane(_) => "hyperplane (n = 2k, eta^2 P_alpha = 1)".to_string(),
        SchurSquare::Tgrs(s) => format!("C_{{{},{}}}(alpha, v^2, eta^2)", s.k(), s.n()),
    };
    Ok(Check::compare(
        CheckKind::Schur,
        json!({ "dimension": sq.dimension(), "span_equal": true }),
        json!({ "dimension": naive.rank(), "span_equal": same }),
    )
    .with_detail(label))
}

fn self_orth_check(p: &TgrsParams) -> Result<Check, VerifyError> {
    let w = match p.self_orthogonal_witness() {
        Ok(w) => w,
        Err(TgrsError::OutOfTheoremRange(why)) => {
            return Ok(Check::skipped(CheckKind::SelfOrth, why))
        }
        Err(e) => return Err(e.into()),
    };
    let gram_zero = p.generator_matrix().gram().is_zero();
    let check = Check::compare(
        CheckKind::SelfOrth,
        json!({ "self_orthogonal": w.is_witness() }),
        json!({ "self_orthogonal": gram_zero }),
    );
    Ok(match w {
        SelfOrthWitness::Witness(g) => {
            let reps: Vec<u32> = g.iter().map(|x| x.rep()).collect();
            check.with_detail(format!("witness coefficients {reps:?}"))
        }
        SelfOrthWitness::Infeasible => check.with_detail("no witness polynomial"),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tgrs::{full_field_points, subset_product_count, unit_points};

    fn worked() -> TgrsParams {
        let f = Field::with_order(5).unwrap();
        TgrsParams::from_reps(&f, 3, &[1, 2, 3, 4], &[1; 4], 1).unwrap()
    }

    #[test]
    fn worked_example_passes_everything() {
        let r = audit(&worked(), &CheckKind::ALL, 1 << 20).unwrap();
        assert_eq!(r.checks.len(), 6);
        assert!(r.passed(), "{:#?}", r.checks);
        // self_orth needs k < (q+1)/2
        let skipped: Vec<&str> = r
            .checks
            .iter()
            .filter(|c| c.status == Status::Skipped)
            .map(|c| c.name.as_str())
            .collect();
        assert_eq!(skipped, ["self_orth"]);
    }

    #[test]
    fn naive_counts_worked_example() {
        let g = worked().generator_matrix();
        let c = naive_weight_counts(&g, 1 << 20).unwrap();
        assert_eq!(c, [1u32, 4, 12, 60, 48].map(BigUint::from).to_vec());
    }

    #[test]
    fn printed_dual_formula_gives_minus_eight() {
        let check = printed_dual_formula_check(&worked(), 1 << 20).unwrap();
        assert_eq!(check.status, Status::Fail);
        assert_eq!(check.observed[4], json!(-8));
        assert_eq!(check.expected[4], json!(0));
    }

    #[test]
    fn flipped_last_row_is_off_by_two_eta() {
        let f = Field::with_order(7).unwrap();
        let alpha: Vec<u32> = (1..6).collect();
        let p = TgrsParams::from_reps(&f, 3, &alpha, &[1, 2, 3, 4, 5], 3).unwrap();
        let check = parity_check(&p, &flipped_parity_check_matrix(&p));
        assert_eq!(check.status, Status::Fail);
        let minus_two_eta = f.neg(f.mul(f.from_int(2), p.eta()));
        assert_eq!(
            check.observed["first_nonzero_of_g_ht"]["value"],
            json!(minus_two_eta.rep())
        );
        assert_eq!(check.observed["first_nonzero_of_g_ht"]["g_row"], json!(0));
    }

    #[test]
    fn subset_oracle_examples() {
        let f5 = Field::with_order(5).unwrap();
        let b: Vec<Elem> = (1..5).map(Elem).collect();
        assert_eq!(
            subset_count_oracle(&f5, 3, Elem(4), &b).unwrap(),
            BigUint::from(1u8)
        );
        let f8 = Field::with_order(8).unwrap();
        let units = unit_points(&f8);
        for x in f8.nonzero_elements() {
            assert_eq!(
                subset_count_oracle(&f8, 3, x, &units).unwrap(),
                BigUint::from(5u8)
            );
        }
    }

    #[test]
    fn subset_oracle_partitions() {
        let f = Field::with_order(9).unwrap();
        let set = full_field_points(&f);
        let total: BigUint = f
            .elements()
            .map(|b| subset_count_oracle(&f, 4, b, &set).unwrap())
            .sum();
        assert_eq!(total, binomial(9, 4));
        for b in f.elements() {
            assert_eq!(
                subset_count_oracle(&f, 4, b, &set).unwrap(),
                subset_product_count(&f, 4, b, &set).unwrap()
            );
        }
    }

    #[test]
    fn budget_is_enforced() {
        let p = worked();
        assert!(matches!(
            audit(&p, &[CheckKind::Weights], 10),
            Err(VerifyError::BudgetExceeded { .. })
        ));
        // linear algebra checks need no budget
        assert!(audit(&p, &[CheckKind::Parity, CheckKind::Schur], 1).is_ok());
    }

    #[test]
    fn parse_check_lists() {
        assert_eq!(CheckKind::parse_list("all").unwrap().len(), 6);
        assert_eq!(
            CheckKind::parse_list("parity,self-orth,parity").unwrap(),
            [CheckKind::Parity, CheckKind::SelfOrth]
        );
        assert!(matches!(
            CheckKind::parse_list("parity,bogus"),
            Err(VerifyError::UnknownCheck(_))
        ));
        assert!(CheckKind::parse_list("").unwrap().is_empty());
    }

    #[test]
    fn empty_check_list_gives_empty_report() {
        let r = audit(&worked(), &[], 1).unwrap();
        assert!(r.checks.is_empty() && r.passed());
    }
}

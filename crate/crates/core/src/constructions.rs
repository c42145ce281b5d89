//! Families of self-dual, almost self-dual and LCD TGRS codes.
//!
//! Every factory checks the claimed property on the generator matrix before
//! returning; a failed check is reported as [`ConstructionError::ClaimFailed`].

use serde::Serialize;
use thiserror::Error;

use crate::galois::{Elem, Field, FieldError};
use crate::lincode::{LinearCode, PermScale};
use crate::tgrs::{full_field_points, unit_points, Classification, TgrsError, TgrsParams};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructionError {
    #[error("this family needs even characteristic")]
    OddCharacteristic,
    #[error("this family needs odd characteristic")]
    EvenCharacteristic,
    #[error("bad shape: {0}")]
    BadShape(String),
    #[error("eta = {0} is excluded: it would make the last multiplier zero")]
    ExcludedEta(u32),
    #[error("bad parameter: {0}")]
    BadParameter(String),
    #[error("q = {0} is not 1 mod 4")]
    BadModulus(u32),
    #[error("evaluation point {0} is not in the subfield")]
    PointNotInSubfield(u32),
    #[error("beta must avoid 0, 1 and -1 in a field with q > 3")]
    BadBeta,
    #[error("the input code is not self-orthogonal")]
    NotSelfOrthogonal,
    #[error("0 must be the last evaluation point")]
    ZeroNotLast,
    #[error("constructed code fails its claim: {0}")]
    ClaimFailed(String),
    #[error(transparent)]
    Tgrs(#[from] TgrsError),
    #[error(transparent)]
    Field(#[from] FieldError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Family {
    Cda,
    Cda1,
    Q1,
    Q2,
    Q12,
    Q13,
    Pcd1,
    Pcd2,
    #[serde(rename = "LCD_SCALE")]
    LcdScale,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Claim {
    SelfDual,
    AlmostSelfDual,
    Lcd,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Variant {
    Almost,
    SelfDual,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstructionReport {
    pub params: TgrsParams,
    pub family: Family,
    pub claimed: Claim,
    pub classification: Classification,
    pub notes: Vec<String>,
}

/// Outcome of the unit-support family, which does not exist for q = 3 mod 4.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum UnitsOutcome {
    Built(Box<ConstructionReport>),
    NonExistence { q: u32, reason: String },
}

fn finish(
    params: TgrsParams,
    family: Family,
    claimed: Claim,
    notes: Vec<String>,
) -> Result<ConstructionReport, ConstructionError> {
    let status = params.code().orthogonality_status();
    let ok = match claimed {
        Claim::SelfDual => status.self_dual,
        Claim::AlmostSelfDual => status.almost_self_dual,
        Claim::Lcd => status.lcd,
    };
    if !ok {
        return Err(ConstructionError::ClaimFailed(format!(
            "{family:?} claims {claimed:?} but the status is {status:?}"
        )));
    }
    let classification = params.classify()?;
    Ok(ConstructionReport {
        params,
        family,
        claimed,
        classification,
        notes,
    })
}

/// `prod_{i != j, i < m} (alpha_j - alpha_i)` over the first `m` points.
fn vandermonde_factor(f: &Field, alpha: &[Elem], j: usize, m: usize) -> Elem {
    f.product(
        (0..m)
            .filter(|&i| i != j)
            .map(|i| f.sub(alpha[j], alpha[i])),
    )
}

fn check_points(
    f: &Field,
    alpha: &[Elem],
    n: usize,
    zero_last: bool,
) -> Result<(), ConstructionError> {
    if alpha.len() != n {
        return Err(ConstructionError::BadShape(format!(
            "need {n} evaluation points, got {}",
            alpha.len()
        )));
    }
    if let Some(x) = alpha.iter().find(|x| !f.contains(**x)) {
        return Err(TgrsError::NotAnElement(x.rep()).into());
    }
    match alpha.iter().position(|a| a.is_zero()) {
        Some(z) if !zero_last => Err(ConstructionError::BadShape(format!(
            "0 is not allowed, found at position {}",
            z + 1
        ))),
        Some(z) if z != n - 1 => Err(ConstructionError::ZeroNotLast),
        None if zero_last => Err(ConstructionError::BadShape(
            "0 must be an evaluation point".into(),
        )),
        _ => Ok(()),
    }
}

/// Even q, `3 <= k <= q/2 - 1`. Square roots are `x^{q/2}`.
pub fn even_q_family(
    field: &Field,
    k: usize,
    alpha: Option<Vec<Elem>>,
    eta: Option<Elem>,
    variant: Variant,
) -> Result<ConstructionReport, ConstructionError> {
    let f = field;
    if !f.is_even() {
        return Err(ConstructionError::OddCharacteristic);
    }
    let q = f.order() as usize;
    if k < 3 || 2 * k + 2 > q {
        return Err(ConstructionError::BadShape(format!(
            "need 3 <= k <= q/2 - 1, got k={k}, q={q}"
        )));
    }
    let half = (q / 2) as i64;
    let m = 2 * k;
    let almost = variant == Variant::Almost;
    let alpha = alpha.unwrap_or_else(|| {
        let mut pts: Vec<Elem> = f.nonzero_elements().take(m).collect();
        if almost {
            pts.push(Elem::ZERO);
        }
        pts
    });
    check_points(f, &alpha, if almost { m + 1 } else { m }, almost)?;
    // v_j = (alpha_j prod_{i != j} (alpha_j - alpha_i))^{-q/2}
    let mut v: Vec<Elem> = (0..m)
        .map(|j| f.pow(f.mul(alpha[j], vandermonde_factor(f, &alpha, j, m)), -half))
        .collect::<Result<_, _>>()?;
    let inv_prod = f.inv(f.product(alpha[..m].iter().copied()))?;
    let forbidden = f.pow_u(inv_prod, half as u64);
    if almost {
        let eta = match eta {
            Some(e) if e.is_zero() => {
                return Err(ConstructionError::BadParameter(
                    "eta must be nonzero".into(),
                ))
            }
            Some(e) if e == forbidden => return Err(ConstructionError::ExcludedEta(e.rep())),
            Some(e) => e,
            None => f
                .nonzero_elements()
                .find(|&e| e != forbidden)
                .expect("q >= 8 leaves admissible eta"),
        };
        v.push(f.pow_u(f.add(inv_prod, f.square(eta)), half as u64));
        let params = TgrsParams::new(f, k, alpha, v, eta)?;
        finish(params, Family::Cda, Claim::AlmostSelfDual, Vec::new())
    } else {
        if eta.is_some() {
            return Err(ConstructionError::BadParameter(
                "eta is determined by alpha in the self-dual variant".into(),
            ));
        }
        let params = TgrsParams::new(f, k, alpha, v, forbidden)?;
        finish(params, Family::Cda1, Claim::SelfDual, Vec::new())
    }
}

fn require_odd(f: &Field) -> Result<(), ConstructionError> {
    if f.is_even() {
        Err(ConstructionError::EvenCharacteristic)
    } else {
        Ok(())
    }
}

fn nonzero_square(f: &Field, x: Elem) -> Option<Elem> {
    if x.is_zero() {
        None
    } else {
        f.square_root(x)
    }
}

/// Odd q >= 7: `C_{(q-1)/2, q}(F_q, (1,...,1,a), eta)` with `eta^2 = a^2 - 1`.
pub fn odd_q_full_support(
    field: &Field,
    a: Option<Elem>,
) -> Result<ConstructionReport, ConstructionError> {
    let f = field;
    require_odd(f)?;
    let q = f.order();
    if q < 7 {
        return Err(ConstructionError::BadParameter(format!(
            "need q >= 7, got {q}"
        )));
    }
    let root_for = |a: Elem| nonzero_square(f, f.sub(f.square(a), Elem::ONE));
    let (a, eta) = match a {
        Some(a) if a.is_zero() || !f.contains(a) => {
            return Err(ConstructionError::BadParameter(
                "a must be a nonzero element".into(),
            ))
        }
        Some(a) => match root_for(a) {
            Some(eta) => (a, eta),
            None => {
                return Err(ConstructionError::BadParameter(format!(
                    "a^2 - 1 is zero or a non-square for a = {a}"
                )))
            }
        },
        None => (2..q as u64)
            .map(|r| Elem(r as u32))
            .find_map(|a| root_for(a).map(|eta| (a, eta)))
            .expect("an admissible a exists for odd q >= 7"),
    };
    let k = ((q - 1) / 2) as usize;
    let mut v = vec![Elem::ONE; q as usize - 1];
    v.push(a);
    let params = TgrsParams::new(f, k, full_field_points(f), v, eta)?;
    finish(params, Family::Q1, Claim::AlmostSelfDual, Vec::new())
}

/// Odd q >= 7: `C_{(q-1)/2, q-1}(F_q^*, 1, eta)` with `eta^2 = -1`, or the
/// obstruction when -1 is a non-square.
pub fn odd_q_units(field: &Field) -> Result<UnitsOutcome, ConstructionError> {
    let f = field;
    require_odd(f)?;
    let q = f.order();
    if q < 7 {
        return Err(ConstructionError::BadParameter(format!(
            "need q >= 7, got {q}"
        )));
    }
    let minus_one = f.neg(Elem::ONE);
    let Some(eta) = f.square_root(minus_one) else {
        return Ok(UnitsOutcome::NonExistence {
            q,
            reason: "self-duality forces eta^2 = -1, and chi(-1) = -1 for q = 3 mod 4".into(),
        });
    };
    let k = ((q - 1) / 2) as usize;
    let params = TgrsParams::new(f, k, unit_points(f), vec![Elem::ONE; q as usize - 1], eta)?;
    Ok(UnitsOutcome::Built(Box::new(finish(
        params,
        Family::Q2,
        Claim::SelfDual,
        Vec::new(),
    )?)))
}

/// q = 1 mod 4, q >= 13, `k = (q-1)/4`, points the non-squares (plus 0 last
/// for the almost variant).
pub fn nonsquare_support(
    field: &Field,
    a: Option<Elem>,
    variant: Variant,
) -> Result<ConstructionReport, ConstructionError> {
    let f = field;
    require_odd(f)?;
    let q = f.order();
    if q % 4 != 1 {
        return Err(ConstructionError::BadModulus(q));
    }
    let k = ((q - 1) / 4) as usize;
    if k < 3 {
        return Err(ConstructionError::BadParameter(format!(
            "need k = (q-1)/4 >= 3, got q = {q}"
        )));
    }
    let mut alpha: Vec<Elem> = f.nonzero_elements().filter(|&x| !f.is_square(x)).collect();
    match variant {
        Variant::Almost => {
            let root_for = |a: Elem| {
                let two = f.from_int(2);
                nonzero_square(f, f.sub(Elem::ONE, f.mul(two, f.square(a))))
            };
            let (a, eta) = match a {
                Some(a) if a.is_zero() || !f.contains(a) => {
                    return Err(ConstructionError::BadParameter(
                        "a must be a nonzero element".into(),
                    ))
                }
                Some(a) => match root_for(a) {
                    Some(eta) => (a, eta),
                    None => {
                        return Err(ConstructionError::BadParameter(format!(
                            "1 - 2a^2 is zero or a non-square for a = {a}"
                        )))
                    }
                },
                None => f
                    .nonzero_elements()
                    .find_map(|a| root_for(a).map(|eta| (a, eta)))
                    .ok_or_else(|| ConstructionError::BadParameter("no admissible a".into()))?,
            };
            alpha.push(Elem::ZERO);
            let mut v = vec![Elem::ONE; alpha.len() - 1];
            v.push(a);
            let params = TgrsParams::new(f, k, alpha, v, eta)?;
            finish(params, Family::Q12, Claim::AlmostSelfDual, Vec::new())
        }
        Variant::SelfDual => {
            if a.is_some() {
                return Err(ConstructionError::BadParameter(
                    "the self-dual variant takes no a".into(),
                ));
            }
            let n = alpha.len();
            let params = TgrsParams::new(f, k, alpha, vec![Elem::ONE; n], Elem::ONE)?;
            let notes = vec![
                "eta is fixed to 1; the MDS/NMDS split is decided by whether 1 is in S_k(alpha)"
                    .into(),
            ];
            finish(params, Family::Q13, Claim::SelfDual, notes)
        }
    }
}

/// q = p^{2m} with p odd, points in the subfield of order p^m.
pub fn subfield_family(
    field: &Field,
    k: usize,
    alpha: Option<Vec<Elem>>,
    eta: Option<Elem>,
    variant: Variant,
) -> Result<ConstructionReport, ConstructionError> {
    let f = field;
    require_odd(f)?;
    if !f.degree().is_multiple_of(2) {
        return Err(ConstructionError::BadShape(format!(
            "q = {} is not an even power of its characteristic",
            f.order()
        )));
    }
    let sub_degree = f.degree() / 2;
    let sub = f.subfield_elements(sub_degree)?;
    let sub_order = sub.len();
    if k < 3 || 2 * k + 1 > sub_order {
        return Err(ConstructionError::BadShape(format!(
            "need 3 <= k <= (p^m - 1)/2 = {}, got k={k}",
            (sub_order - 1) / 2
        )));
    }
    let m = 2 * k;
    let almost = variant == Variant::Almost;
    let alpha = alpha.unwrap_or_else(|| {
        let mut pts: Vec<Elem> = sub
            .iter()
            .copied()
            .filter(|x| !x.is_zero())
            .take(m)
            .collect();
        if almost {
            pts.push(Elem::ZERO);
        }
        pts
    });
    check_points(f, &alpha, if almost { m + 1 } else { m }, almost)?;
    if let Some(x) = alpha.iter().find(|x| !sub.contains(x)) {
        return Err(ConstructionError::PointNotInSubfield(x.rep()));
    }
    let root = |x: Elem| f.square_root(x).expect("subfield elements are squares");
    // v_j^2 = alpha_j^{-1} prod_{i != j} (alpha_j - alpha_i)^{-1}
    let mut v: Vec<Elem> = (0..m)
        .map(|j| {
            Ok(root(f.inv(
                f.mul(alpha[j], vandermonde_factor(f, &alpha, j, m)),
            )?))
        })
        .collect::<Result<_, FieldError>>()?;
    let inv_prod = f.inv(f.product(alpha[..m].iter().copied()))?;
    if almost {
        let eta = match eta {
            Some(e) if e.is_zero() => {
                return Err(ConstructionError::BadParameter(
                    "eta must be nonzero".into(),
                ))
            }
            Some(e) if !sub.contains(&e) => {
                return Err(ConstructionError::PointNotInSubfield(e.rep()))
            }
            Some(e) if f.square(e) == inv_prod => {
                return Err(ConstructionError::ExcludedEta(e.rep()))
            }
            Some(e) => e,
            None => sub
                .iter()
                .copied()
                .find(|&e| !e.is_zero() && f.square(e) != inv_prod)
                .expect("at most two excluded values"),
        };
        // With v_j^2 = r_j the common ratio is lambda = -1, so
        // v_{2k+1}^2 = -(eta^2 - prod alpha^{-1}).
        v.push(root(f.sub(inv_prod, f.square(eta))));
        let params = TgrsParams::new(f, k, alpha, v, eta)?;
        finish(params, Family::Pcd1, Claim::AlmostSelfDual, Vec::new())
    } else {
        if eta.is_some() {
            return Err(ConstructionError::BadParameter(
                "eta is determined by alpha in the self-dual variant".into(),
            ));
        }
        let eta = root(inv_prod);
        let params = TgrsParams::new(f, k, alpha, v, eta)?;
        finish(params, Family::Pcd2, Claim::SelfDual, Vec::new())
    }
}

fn check_beta(f: &Field, beta: Elem) -> Result<(), ConstructionError> {
    if f.order() <= 3
        || !f.contains(beta)
        || beta.is_zero()
        || beta == Elem::ONE
        || beta == f.neg(Elem::ONE)
    {
        return Err(ConstructionError::BadBeta);
    }
    Ok(())
}

/// Scale the first `n-k` coordinates of a self-orthogonal code with
/// `alpha_n = 0` by `beta`; the result is LCD.
pub fn lcd_scale(params: &TgrsParams, beta: Elem) -> Result<ConstructionReport, ConstructionError> {
    let f = params.field();
    check_beta(f, beta)?;
    let n = params.n();
    if params.zero_position() != Some(n - 1) {
        return Err(ConstructionError::ZeroNotLast);
    }
    if !params.generator_matrix().gram().is_zero() {
        return Err(ConstructionError::NotSelfOrthogonal);
    }
    let r = n - params.k();
    let v = params
        .v()
        .iter()
        .enumerate()
        .map(|(i, &x)| if i < r { f.mul(beta, x) } else { x })
        .collect();
    let scaled = params.with_v(v)?;
    let det = scaled
        .generator_matrix()
        .gram()
        .determinant()
        .expect("square");
    if det.is_zero() {
        return Err(ConstructionError::ClaimFailed(
            "det(G G^T) = 0 after scaling".into(),
        ));
    }
    finish(scaled, Family::LcdScale, Claim::Lcd, Vec::new())
}

/// [`lcd_from_self_orthogonal`] on the multipliers of a TGRS code, so the
/// result stays in the family: `v_i` becomes `beta v_i` off an information
/// set.
pub fn lcd_scale_information_set(
    params: &TgrsParams,
    beta: Elem,
) -> Result<ConstructionReport, ConstructionError> {
    let f = params.field();
    check_beta(f, beta)?;
    let code = params.code();
    if !code.orthogonality_status().self_orthogonal {
        return Err(ConstructionError::NotSelfOrthogonal);
    }
    let info = code.information_set();
    let v = params
        .v()
        .iter()
        .enumerate()
        .map(|(i, &x)| if info.contains(&i) { x } else { f.mul(beta, x) })
        .collect();
    finish(params.with_v(v)?, Family::LcdScale, Claim::Lcd, Vec::new())
}

/// Any self-orthogonal code: scale the complement of an information set by
/// `beta`.
pub fn lcd_from_self_orthogonal(
    code: &LinearCode,
    beta: Elem,
) -> Result<LinearCode, ConstructionError> {
    let f = code.field();
    check_beta(f, beta)?;
    if !code.orthogonality_status().self_orthogonal {
        return Err(ConstructionError::NotSelfOrthogonal);
    }
    let info = code.information_set();
    let scale = (0..code.length())
        .map(|i| if info.contains(&i) { Elem::ONE } else { beta })
        .collect();
    let out = code
        .apply_perm_scale(&PermScale::scaling(scale))
        .expect("valid scaling");
    if !out.orthogonality_status().lcd {
        return Err(ConstructionError::ClaimFailed(
            "scaled code is not LCD".into(),
        ));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tgrs::CodeKind;

    fn gf(q: u32) -> Field {
        Field::with_order(q).unwrap()
    }

    #[test]
    fn even_q_self_dual() {
        let f = gf(8);
        let r = even_q_family(&f, 3, None, None, Variant::SelfDual).unwrap();
        assert_eq!((r.params.n(), r.params.k()), (6, 3));
        assert!(r.params.generator_matrix().gram().is_zero());
        assert_eq!(r.family, Family::Cda1);
    }

    #[test]
    fn even_q_literal_multiplier_exponent_fails() {
        // v_j = alpha_j^{-1} prod (alpha_j - alpha_i)^{-q/2} as printed
        let f = gf(8);
        let good = even_q_family(&f, 3, None, None, Variant::SelfDual)
            .unwrap()
            .params;
        let alpha = good.alpha().to_vec();
        let v = (0..6)
            .map(|j| {
                let vf = vandermonde_factor(&f, &alpha, j, 6);
                f.mul(f.inv(alpha[j]).unwrap(), f.pow(vf, -4).unwrap())
            })
            .collect();
        let literal = good.with_v(v).unwrap();
        assert!(!literal.generator_matrix().gram().is_zero());
    }

    #[test]
    fn even_q_almost_and_excluded_eta() {
        let f = gf(8);
        let r = even_q_family(&f, 3, None, Some(Elem(1)), Variant::Almost).unwrap();
        assert_eq!((r.params.n(), r.params.k()), (7, 3));
        assert!(r.params.code().orthogonality_status().almost_self_dual);
        let units: Vec<Elem> = f.nonzero_elements().take(6).collect();
        let inv_prod = f.inv(f.product(units)).unwrap();
        let forbidden = f.pow_u(inv_prod, 4);
        assert_eq!(
            even_q_family(&f, 3, None, Some(forbidden), Variant::Almost),
            Err(ConstructionError::ExcludedEta(forbidden.rep()))
        );
        assert_eq!(
            even_q_family(&gf(7), 3, None, None, Variant::Almost),
            Err(ConstructionError::OddCharacteristic)
        );
    }

    #[test]
    fn even_q_both_branches() {
        let f = gf(16);
        let kinds: std::collections::HashSet<CodeKind> = f
            .nonzero_elements()
            .filter_map(|eta| even_q_family(&f, 3, None, Some(eta), Variant::Almost).ok())
            .map(|r| r.classification.kind)
            .collect();
        assert_eq!(kinds.len(), 2);
    }

    #[test]
    fn full_support_family() {
        let r = odd_q_full_support(&gf(7), Some(Elem(3))).unwrap();
        assert_eq!(r.params.eta(), Elem(1));
        assert_eq!(r.classification.kind, CodeKind::Nmds);
        assert_eq!(r.params.code().min_distance(1 << 20).unwrap(), 4);
        assert!(matches!(
            odd_q_full_support(&gf(7), Some(Elem(1))),
            Err(ConstructionError::BadParameter(_))
        ));
        let r11 = odd_q_full_support(&gf(11), None).unwrap();
        assert_eq!((r11.params.v()[10], r11.params.eta()), (Elem(2), Elem(5)));
    }

    #[test]
    fn units_family() {
        let UnitsOutcome::Built(r) = odd_q_units(&gf(13)).unwrap() else {
            panic!("q = 13 is 1 mod 4");
        };
        assert_eq!(r.params.eta(), Elem(5));
        assert_eq!(r.classification.kind, CodeKind::Nmds);
        assert!(matches!(
            odd_q_units(&gf(7)).unwrap(),
            UnitsOutcome::NonExistence { q: 7, .. }
        ));
        let UnitsOutcome::Built(r9) = odd_q_units(&gf(9)).unwrap() else {
            panic!("q = 9 is 1 mod 4");
        };
        assert_eq!((r9.params.n(), r9.params.k()), (8, 4));
        let f9 = gf(9);
        assert_eq!(f9.square(r9.params.eta()), f9.neg(Elem::ONE));
    }

    #[test]
    fn nonsquare_families() {
        let f = gf(13);
        let r = nonsquare_support(&f, Some(Elem(1)), Variant::Almost).unwrap();
        assert_eq!(
            (r.params.n(), r.params.k(), r.params.eta()),
            (7, 3, Elem(5))
        );
        assert_eq!(r.classification.kind, CodeKind::Nmds);
        let sd = nonsquare_support(&f, None, Variant::SelfDual).unwrap();
        let reps: Vec<u32> = sd.params.alpha().iter().map(|x| x.rep()).collect();
        assert_eq!(reps, vec![2, 5, 6, 7, 8, 11]);
        assert_eq!(sd.params.eta(), Elem::ONE);
        assert_eq!(sd.notes.len(), 1);
        assert_eq!(
            nonsquare_support(&gf(11), None, Variant::SelfDual),
            Err(ConstructionError::BadModulus(11))
        );
    }

    #[test]
    fn subfield_families_gf49() {
        let f = gf(49);
        let sd = subfield_family(&f, 3, None, None, Variant::SelfDual).unwrap();
        assert_eq!((sd.params.n(), sd.family), (6, Family::Pcd2));
        let asd = subfield_family(&f, 3, None, None, Variant::Almost).unwrap();
        assert_eq!((asd.params.n(), asd.family), (7, Family::Pcd1));
    }

    #[test]
    fn subfield_literal_last_multiplier_fails() {
        // v_{2k+1}^2 = eta^2 - prod alpha^{-1} as printed
        let f = gf(49);
        let good = subfield_family(&f, 3, None, None, Variant::Almost)
            .unwrap()
            .params;
        let inv_prod = f.inv(f.product(good.alpha()[..6].iter().copied())).unwrap();
        let mut v = good.v().to_vec();
        v[6] = f
            .square_root(f.sub(f.square(good.eta()), inv_prod))
            .unwrap();
        let literal = good.with_v(v).unwrap();
        assert!(!literal.generator_matrix().gram().is_zero());
    }

    #[test]
    fn subfield_errors() {
        let f = gf(49);
        let mut alpha: Vec<Elem> = f.subfield_elements(1).unwrap()[1..7].to_vec();
        let outside = f
            .nonzero_elements()
            .find(|x| !f.subfield_elements(1).unwrap().contains(x))
            .unwrap();
        alpha[0] = outside;
        assert_eq!(
            subfield_family(&f, 3, Some(alpha), None, Variant::SelfDual),
            Err(ConstructionError::PointNotInSubfield(outside.rep()))
        );
        assert!(matches!(
            subfield_family(&gf(25), 3, None, None, Variant::SelfDual),
            Err(ConstructionError::BadShape(_))
        ));
    }

    #[test]
    fn lcd_from_almost_self_dual() {
        let q1 = odd_q_full_support(&gf(7), Some(Elem(3))).unwrap();
        let r = lcd_scale(&q1.params, Elem(2)).unwrap();
        let status = r.params.code().orthogonality_status();
        assert!(status.lcd && !status.self_orthogonal);
        assert_eq!(status.hull_dim, 0);
        assert_eq!(
            lcd_scale(&q1.params, Elem(1)),
            Err(ConstructionError::BadBeta)
        );
        assert_eq!(
            lcd_scale(&q1.params, Elem(6)),
            Err(ConstructionError::BadBeta)
        );
        let q12 = nonsquare_support(&gf(13), Some(Elem(1)), Variant::Almost).unwrap();
        assert!(lcd_scale(&q12.params, Elem(2)).is_ok());
    }

    #[test]
    fn lcd_scale_preconditions() {
        let f = gf(7);
        let plain =
            TgrsParams::new(&f, 3, full_field_points(&f), vec![Elem::ONE; 7], Elem::ONE).unwrap();
        assert_eq!(
            lcd_scale(&plain, Elem(2)),
            Err(ConstructionError::NotSelfOrthogonal)
        );
        let q1 = odd_q_full_support(&f, Some(Elem(3))).unwrap().params;
        let moved = q1.reindexed(&[6, 0, 1, 2, 3, 4, 5]).unwrap();
        assert_eq!(
            lcd_scale(&moved, Elem(2)),
            Err(ConstructionError::ZeroNotLast)
        );
    }

    #[test]
    fn generic_lcd_path() {
        let UnitsOutcome::Built(r) = odd_q_units(&gf(13)).unwrap() else {
            panic!("q = 13 is 1 mod 4");
        };
        let lcd = lcd_from_self_orthogonal(&r.params.code(), Elem(2)).unwrap();
        assert_eq!(lcd.orthogonality_status().hull_dim, 0);
    }

    #[test]
    fn information_set_scaling_stays_tgrs() {
        let UnitsOutcome::Built(r) = odd_q_units(&gf(13)).unwrap() else {
            panic!("q = 13 is 1 mod 4");
        };
        let lcd = lcd_scale_information_set(&r.params, Elem(2)).unwrap();
        let generic = lcd_from_self_orthogonal(&r.params.code(), Elem(2)).unwrap();
        assert!(lcd.params.code().same_code(&generic));
        assert_eq!(lcd.family, Family::LcdScale);
        let plain = TgrsParams::new(
            &gf(7),
            3,
            full_field_points(&gf(7)),
            vec![Elem::ONE; 7],
            Elem::ONE,
        )
        .unwrap();
        assert_eq!(
            lcd_scale_information_set(&plain, Elem(2)),
            Err(ConstructionError::NotSelfOrthogonal)
        );
    }
}

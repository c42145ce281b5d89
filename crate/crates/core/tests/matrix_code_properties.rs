mod common;

use common::gf;
use proptest::prelude::*;
use tgrs_core::lincode::PermScale;
use tgrs_core::matgf::dot;
use tgrs_core::{Elem, LinearCode, MatrixGF};

const FIELDS: [u32; 4] = [5, 7, 8, 9];

fn matrix(max_rows: usize, max_cols: usize) -> impl Strategy<Value = MatrixGF> {
    (
        prop::sample::select(FIELDS.to_vec()),
        1..=max_rows,
        1..=max_cols,
    )
        .prop_flat_map(|(q, r, c)| {
            prop::collection::vec(prop::collection::vec(0..q, c), r)
                .prop_map(move |rows| MatrixGF::from_reps(&gf(q), &rows).unwrap())
        })
}

fn square_pair() -> impl Strategy<Value = (MatrixGF, MatrixGF)> {
    (prop::sample::select(FIELDS.to_vec()), 1..=5usize).prop_flat_map(|(q, n)| {
        let m = prop::collection::vec(prop::collection::vec(0..q, n), n);
        (m.clone(), m).prop_map(move |(a, b)| {
            let f = gf(q);
            (
                MatrixGF::from_reps(&f, &a).unwrap(),
                MatrixGF::from_reps(&f, &b).unwrap(),
            )
        })
    })
}

/// A code of dimension >= 1 with a random monomial transform.
fn code_and_transform() -> impl Strategy<Value = (LinearCode, PermScale)> {
    matrix(3, 6)
        .prop_filter("nonzero", |m| m.rank() > 0)
        .prop_flat_map(|m| {
            let n = m.cols();
            let q = m.field().order();
            (
                Just(m),
                Just((0..n).collect::<Vec<usize>>()).prop_shuffle(),
                prop::collection::vec(1..q, n),
            )
        })
        .prop_map(|(m, perm, scale)| {
            let f = m.field().clone();
            let code = LinearCode::from_generator(&m).unwrap();
            let scale: Vec<Elem> = scale
                .into_iter()
                .map(|s| f.elem(s as u64).unwrap())
                .collect();
            (code, PermScale { perm, scale })
        })
}

/// Two nonzero codes of the same length over the same field.
fn code_pair() -> impl Strategy<Value = (LinearCode, LinearCode)> {
    (
        prop::sample::select(FIELDS.to_vec()),
        2..=6usize,
        1..=3usize,
        1..=3usize,
    )
        .prop_flat_map(|(q, n, ka, kb)| {
            let m = move |k| prop::collection::vec(prop::collection::vec(0..q, n), k);
            (Just(q), m(ka), m(kb))
        })
        .prop_filter_map("nonzero", |(q, a, b)| {
            let f = gf(q);
            let ca = LinearCode::from_generator(&MatrixGF::from_reps(&f, &a).unwrap()).ok()?;
            let cb = LinearCode::from_generator(&MatrixGF::from_reps(&f, &b).unwrap()).ok()?;
            Some((ca, cb))
        })
}

proptest! {
    #[test]
    fn rank_of_transpose(m in matrix(6, 6)) {
        prop_assert_eq!(m.rank(), m.transpose().rank());
    }

    #[test]
    fn nullspace_is_orthogonal_and_complementary(m in matrix(6, 8)) {
        let ns = m.nullspace();
        prop_assert_eq!(ns.rank() + m.rank(), m.cols());
        if ns.rows() > 0 {
            prop_assert!(m.matmul(&ns.transpose()).unwrap().is_zero());
        }
    }

    #[test]
    fn determinant_is_multiplicative((a, b) in square_pair()) {
        let f = a.field().clone();
        let ab = a.matmul(&b).unwrap();
        prop_assert_eq!(
            ab.determinant().unwrap(),
            f.mul(a.determinant().unwrap(), b.determinant().unwrap())
        );
        prop_assert_eq!(a.determinant().unwrap().is_zero(), a.rank() < a.rows());
    }

    #[test]
    fn dual_is_an_involution(m in matrix(4, 7).prop_filter("proper", |m| m.rank() > 0 && m.rank() < m.cols())) {
        let c = LinearCode::from_generator(&m).unwrap();
        let d = c.dual().unwrap();
        prop_assert!(d.dual().unwrap().same_code(&c));
        let f = c.field().clone();
        for x in c.generator().row_vecs() {
            for y in d.generator().row_vecs() {
                prop_assert!(dot(&f, &x, &y).is_zero());
            }
        }
    }

    #[test]
    fn monomial_maps_keep_weights((c, t) in code_and_transform()) {
        let image = c.apply_perm_scale(&t).unwrap();
        prop_assert_eq!(c.brute_weights(1 << 16).unwrap(), image.brute_weights(1 << 16).unwrap());
    }

    #[test]
    fn schur_product_commutes((a, b) in code_pair()) {
        let ab = a.schur_product(&b).unwrap();
        let ba = b.schur_product(&a).unwrap();
        prop_assert!(ab.same_code(&ba));
    }

    #[test]
    fn orthogonality_flags_agree(m in matrix(4, 7).prop_filter("nonzero", |m| m.rank() > 0)) {
        let c = LinearCode::from_generator(&m).unwrap();
        let s = c.orthogonality_status();
        prop_assert!(!(s.lcd && s.self_orthogonal));
        prop_assert_eq!(s.hull_dim == c.dimension(), s.self_orthogonal);
        prop_assert_eq!(s.hull_dim == 0, s.lcd);
    }
}

#[test]
fn schur_with_ones_contains_code() {
    let f = gf(7);
    let g = MatrixGF::from_reps(&f, &[vec![1, 1, 1, 1, 1], vec![0, 1, 2, 3, 4]]).unwrap();
    let c = LinearCode::from_generator(&g).unwrap();
    let ones =
        LinearCode::from_generator(&MatrixGF::from_reps(&f, &[vec![1; 5]]).unwrap()).unwrap();
    assert!(c.schur_product(&ones).unwrap().same_code(&c));
    let sq = c.schur_square();
    assert!(c.generator().row_vecs().iter().all(|r| sq.contains(r)));
}

#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::Rng;
use tgrs_core::tgrs::TgrsParams;
use tgrs_core::{Elem, Field};

pub fn gf(q: u32) -> Field {
    Field::with_order(q).unwrap()
}

pub fn nonzero<R: Rng>(f: &Field, rng: &mut R) -> Elem {
    f.elem(rng.gen_range(1..f.order() as u64)).unwrap()
}

/// Random valid parameters with `n` distinct points drawn from all of GF(q).
pub fn random_params<R: Rng>(f: &Field, n: usize, k: usize, rng: &mut R) -> TgrsParams {
    let mut pts: Vec<Elem> = f.elements().collect();
    pts.shuffle(rng);
    pts.truncate(n);
    let v = (0..n).map(|_| nonzero(f, rng)).collect();
    let eta = nonzero(f, rng);
    TgrsParams::new(f, k, pts, v, eta).unwrap()
}

pub fn worked_example() -> TgrsParams {
    TgrsParams::from_reps(&gf(5), 3, &[1, 2, 3, 4], &[1; 4], 1).unwrap()
}

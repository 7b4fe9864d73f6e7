//! Reference maps used throughout the tests and documentation.

use alloc::vec::Vec;

use crate::exact::rat;
use crate::plmap::PlMap;

fn build(raw: &[(i64, i64, i64, i64)]) -> PlMap {
    let points: Vec<_> = raw.iter().map(|&(a, b, c, d)| (rat(a, b), rat(c, d))).collect();
    PlMap::normalize(points).expect("fixture breakpoints are valid")
}

/// First standard generator of F.
pub fn x0() -> PlMap {
    build(&[(0, 1, 0, 1), (1, 2, 1, 4), (3, 4, 1, 2), (1, 1, 1, 1)])
}

/// Second standard generator of F: the identity on `[0,1/2]`.
pub fn x1() -> PlMap {
    build(&[(0, 1, 0, 1), (1, 2, 1, 2), (3, 4, 5, 8), (7, 8, 3, 4), (1, 1, 1, 1)])
}

/// Two bumps joined at the non-dyadic fixed point `1/3`: one bump chain.
pub fn w() -> PlMap {
    build(&[
        (0, 1, 0, 1),
        (1, 8, 1, 16),
        (5, 16, 1, 4),
        (3, 8, 1, 2),
        (1, 2, 3, 4),
        (1, 1, 1, 1),
    ])
}

/// Cornered map of PL⁺(0,1) outside F: node `1/3`, slopes 2 then 1/2.
pub fn l_minus() -> PlMap {
    build(&[(0, 1, 0, 1), (1, 3, 2, 3), (1, 1, 1, 1)])
}

/// Square of [`l_minus`]: slopes 4, 1, 1/4.
pub fn l2() -> PlMap {
    build(&[(0, 1, 0, 1), (1, 6, 2, 3), (1, 3, 5, 6), (1, 1, 1, 1)])
}

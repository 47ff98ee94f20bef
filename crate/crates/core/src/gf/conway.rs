//! Conway polynomials for the small fields the workbench ships with.
//!
//! Coefficients are listed low-to-high and include the leading 1.

pub(crate) fn conway(p: u32, k: u32) -> Option<&'static [u32]> {
    let poly: &'static [u32] = match (p, k) {
        (2, 1) => &[1, 1],
        (2, 2) => &[1, 1, 1],
        (2, 3) => &[1, 1, 0, 1],
        (2, 4) => &[1, 1, 0, 0, 1],
        (3, 1) => &[1, 1],
        (3, 2) => &[2, 2, 1],
        (3, 3) => &[1, 2, 0, 1],
        (3, 4) => &[2, 0, 0, 2, 1],
        (5, 1) => &[3, 1],
        (5, 2) => &[2, 4, 1],
        (5, 3) => &[3, 3, 0, 1],
        (5, 4) => &[2, 4, 4, 0, 1],
        (7, 1) => &[4, 1],
        (7, 2) => &[3, 6, 1],
        (7, 3) => &[4, 0, 6, 1],
        (7, 4) => &[3, 4, 5, 0, 1],
        _ => return None,
    };
    Some(poly)
}

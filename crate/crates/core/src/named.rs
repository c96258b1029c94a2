//! Small named ideals used throughout the tests and the CLI docs.

use crate::ideal::MonomialIdeal;

/// `(x1^3, x2^3, x3^3, x1*x2*x3)`, the Togliatti system.
pub fn togliatti() -> MonomialIdeal {
    MonomialIdeal::from_exponents(3, 3, vec![vec![3, 0, 0], vec![0, 3, 0], vec![0, 0, 3], vec![1, 1, 1]])
        .expect("valid ideal")
}

/// Every cubic in three variables except `xyz`; it has almost linear
/// resolution.
pub fn cubics_without_xyz() -> MonomialIdeal {
    MonomialIdeal::parse_gens("x^3,y^3,z^3,x*y^2,x^2*y,x*z^2,x^2*z,y^2*z,y*z^2", 3, 3).expect("valid ideal")
}

/// All cubics in `K[x,y,z]` not divisible by `xy`.
pub fn cubics_not_divisible_by_xy() -> MonomialIdeal {
    MonomialIdeal::parse_gens("x1^3,x2^3,x3^3,x1^2*x3,x1*x3^2,x2^2*x3,x2*x3^2", 3, 3).expect("valid ideal")
}

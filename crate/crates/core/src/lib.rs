//! Exact rank brackets for elements and matrices over crossed product algebras
//! C_K(X) ⋊_T ℤ, specialised to the lamplighter group and the binary odometer.

pub mod algebra;
pub mod approx;
pub mod field;
pub mod matrix;
pub mod rank;
pub mod series;
pub mod space;
pub mod verify;

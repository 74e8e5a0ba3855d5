//! Exact effective Bertini computations: bad-hyperplane hypersurfaces with
//! explicit degree bounds, and a certified search for small smooth sections.

pub mod exactalg;
pub mod arithseek;
pub mod bertini;
pub mod cnsolve;
pub mod elimination;
pub mod linalg;
pub mod variety;

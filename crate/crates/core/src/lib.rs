pub mod exact;
pub mod flow;
pub mod instance;
pub mod lagrangian;
pub mod lp;
pub mod matroid;
pub mod oracles;
pub mod ptas;
pub mod scalar;
pub mod verify;

pub type Rational = num_rational::BigRational;

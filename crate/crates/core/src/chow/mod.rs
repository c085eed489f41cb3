//! Tautological-ring arithmetic: the Weyl-coinvariant quotient with formal
//! p coefficients, normal forms, and intersection products against
//! Ekedahl–Oort cycle-class fixtures.

pub mod fixture;
pub mod poly;
pub mod ring;

pub use fixture::{EOFixture, FixtureError, LambdaSpec, ProductSpec, Stratum};
pub use poly::{parse_expr, ExprError, MPoly};
pub use ring::{ChowError, ChowRing};

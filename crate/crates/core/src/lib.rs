pub mod words;
pub mod expr;
pub mod mcg;
pub mod homcalc;
pub mod forms;
pub mod knots;
pub mod quotients;
pub mod bundles;
pub mod dsl;
pub mod suite;

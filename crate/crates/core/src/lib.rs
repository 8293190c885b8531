//! Bound quiver algebras over prime fields, their modules and bimodules,
//! syzygies, twisted periodicity and two-term tilting complexes.

pub mod bimod;
pub mod corpus;
pub mod exactla;
pub mod qalg;
pub mod periodicity;
pub mod rep;
pub mod report;
pub mod tilt;
pub mod text;

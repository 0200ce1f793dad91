//! Topological invariants of links of weighted homogeneous hypersurface
//! singularities and of their cyclic branched covers, together with exact
//! evaluation of Fano, klt and Brieskorn–Pham Kähler–Einstein existence
//! tests.
//!
//! The modules build on each other bottom-up:
//!
//! - [`arith`]: gcd/lcm, binomials, weighted monomial counts, exact rationals
//! - [`links`]: weight systems, branched covers `z_0^k + f`, quasi-smoothness
//! - [`topology`]: Milnor–Orlik Betti numbers, curve genus, torsion orders
//! - [`ke_cert`]: existence certificates
//! - [`moduli`]: effective parameter counts
//! - [`survey`]: family generators and scans producing catalog records
//!
//! All arithmetic is exact; there is no floating point anywhere.

pub mod arith;
pub mod error;
pub mod ke_cert;
pub mod links;
pub mod moduli;
pub mod serde_big;
pub mod survey;
pub mod topology;

pub use error::{Error, Result};

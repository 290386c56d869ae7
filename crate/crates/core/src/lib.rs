//! Orthogonal arrays `OA[s, m, n, t]` for every alphabet size `n`, composite
//! or not, built from linear codes over a prime field `F_q` with
//! `q = 1 (mod n)`, together with the equivalent strongly `t`-universal hash
//! family and exact verifiers for both.
//!
//! ```
//! use orthoarray::{codes::plan_rs, oa::{build_oa, DEFAULT_CELL_CAP}, verify::{verify_oa, DEFAULT_WORK_CAP}};
//!
//! let plan = plan_rs(6, 4, 2).unwrap();
//! let oa = build_oa(&plan, DEFAULT_CELL_CAP).unwrap();
//! assert_eq!(oa.header(), "OA 1764 4 6 2 49");
//! assert!(verify_oa(&oa, 2, DEFAULT_WORK_CAP).unwrap().pass);
//! ```

pub mod cli;
pub mod codes;
pub mod error;
pub mod field;
pub mod hash;
mod linalg;
pub mod oa;
pub mod primes;
pub mod verify;

pub use codes::{CodeProvider, FarVector, LinearCode};
pub use error::{Error, Result};
pub use field::FieldCtx;
pub use hash::HashFunction;
pub use oa::{BuildPlan, OrthogonalArray};
pub use verify::VerifyReport;

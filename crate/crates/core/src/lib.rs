//! Finite root systems of connected rank-two Cartan schemes.
//!
//! The decision procedure reduces any connected rank-two scheme to a
//! centrally symmetric cycle and then contracts its characteristic sequence
//! until a base case is reached. Sequences whose η-product is `-id` with
//! nonnegative prefix columns (the set `A+`) are the combinatorial skeleton:
//! every finite irreducible root system comes from one, and
//! [`roots::build_root_system`] builds it back explicitly.
//!
//! ```
//! use cartan_rank2::{decide::decide, scheme::CartanScheme2};
//!
//! let s = CartanScheme2::cycle_from_char_seq(vec![5, 1, 2, 2]).unwrap();
//! let d = decide(&s).unwrap();
//! assert!(d.finite);
//! assert_eq!(d.stats.unwrap().positive_roots, 12);
//! ```

pub mod aplus;
pub mod cli;
pub mod covering;
pub mod decide;
pub mod error;
pub mod exec;
pub mod grid;
pub mod mat2cf;
pub mod oracle;
pub mod roots;
pub mod scheme;

pub use aplus::{MoveCertificate, Seq};
pub use decide::{decide, Decision, Stats, Step};
pub use error::{Error, Result};
pub use exec::Strategy;
pub use mat2cf::{Mat2, OrderResult};
pub use roots::RootSystem2;
pub use scheme::{CartanScheme2, Label};

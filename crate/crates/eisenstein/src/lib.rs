//! Exact arithmetic and perfect-number search in the ring of Eisenstein
//! integers ℤ[ω], where ω = e^{2πi/3} and ω² = −1 − ω.
//!
//! The crate provides:
//!
//! * ring arithmetic, the norm, Euclidean division, units and associates,
//!   and the canonical-associate selection ([`int`]);
//! * primality testing and unique factorization into canonical primes
//!   ([`factor`], backed by the rational-integer routines in [`primes`]);
//! * the rational sum of divisors σ, its complex extension σ*, divisor
//!   enumeration, and the perfect / norm-perfect predicates ([`sigma`]);
//! * Eisenstein Mersenne numbers, their closed-form coefficient table,
//!   primality scanning, and the Euclid-style norm-perfect construction
//!   ([`mersenne`]);
//! * a checkpointed, norm-bounded norm-perfect search ([`scan`]).
//!
//! All values are immutable and every operation is a pure function, so the
//! whole API is safe to use from any number of threads.
//!
//! # Example
//!
//! ```
//! use eisenstein::{factor, EisensteinInt};
//!
//! // 3 ramifies: 3 = (1+ω)·(1−ω)²
//! let f = factor(&EisensteinInt::new(3, 0)).unwrap();
//! assert_eq!(f.to_string(), "1+1w * (1-1w)^2");
//! assert_eq!(f.value(), EisensteinInt::new(3, 0));
//! ```

pub mod error;
pub mod factor;
pub mod int;
pub mod mersenne;
pub mod primes;
pub mod scan;
pub mod sigma;

pub(crate) mod serde_dec;

pub use error::{Error, ParseError, Result};
pub use factor::{factor, factor_with, is_prime, split_rational_prime, FactorEntry, PrimeFactorization};
pub use int::{EisensteinInt, Unit};
pub use mersenne::{
    euclid_norm_perfect, is_mersenne_prime, mersenne_number, power_table_entry, scan_mersenne,
    MersenneRecord,
};
pub use primes::{factor_rational, is_rational_prime, Effort};
pub use scan::{
    scan_norm_perfect, ReportRecord, ScanCheckpoint, ScanCursor, ScanMode, ScanOptions,
    ScanOutcome,
};
pub use sigma::{
    canonical_divisors, canonical_divisors_with, divisor_report, divisor_report_with, is_norm_perfect,
    is_norm_perfect_with, is_perfect, is_perfect_with, matches_odd_conjecture,
    matches_odd_conjecture_with, rational_sigma, rational_sigma_with, sigma_star, sigma_star_factored,
    sigma_star_with, ConjectureWitness, DivisorReport,
};

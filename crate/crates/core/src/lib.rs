//! Trace Euclidean and trace Hermitian duals of F_q-linear cyclic and skew
//! cyclic F_{q²}-codes.
//!
//! Codes live in R_n = F_{q²}[X]/(Xⁿ − 1), written as c + γd with
//! c, d ∈ F_q[X]. A code in standard form is ⟨w·f + γq, γ·w·g⟩ for a
//! factorization Xⁿ − 1 = w·ℓ·f·g. The [`dual`] module builds dual generators
//! in closed form; [`oracle`] recomputes the dual by linear algebra alone.

pub mod code;
pub mod dual;
pub mod error;
pub mod field;
pub mod linalg;
pub mod oracle;
pub mod poly;
pub mod ring;
pub mod sweep;

pub use code::{build_code, canonical_decomposition, decompose, fq_dimension, Code, CodeSpec, QShape};
pub use dual::{DualReport, Theorem, Witness};
pub use error::{Error, Result};
pub use field::{make_field, FieldCtx, Fq, Fq2};
pub use oracle::{brute_dual, enumerate_codewords, verify_dual, GramMatrix, VerifyReport};
pub use poly::{FqPoly, PolyRing};
pub use ring::{Form, Rn, RnElem, Variant};

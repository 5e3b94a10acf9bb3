//! Exact computation with valuations on `k[x, y]` centered at the origin.
//!
//! Valuations are described either by MacLane chains of key polynomials
//! ([`MacLaneChain`]) or by sequences of point blowups ([`BlowupSeq`]).
//! The crate converts between the two descriptions, evaluates both on
//! polynomials, and computes order, infima and segments in the valuative tree.
//!
//! ```
//! use valtree::{io::chain_from_json, parse_poly, tree::segment_point, BaseField, Value};
//!
//! # fn main() -> valtree::Result<()> {
//! let c = chain_from_json(r#"{"field":"Q","chain":[{"Q":"y","beta":"3/2"},{"Q":"y^2 - x^3","beta":"4"}]}"#)?;
//! let f = parse_poly("y^3 + x", BaseField::Rationals)?;
//! assert_eq!(c.evaluate(&f), Value::int(1));
//! let mid = segment_point(&c, &"7/4".parse()?)?;
//! assert_eq!(mid.to_string(), "[(y, 3/2), (y^2 - x^3, 7/2)]");
//! # Ok(())
//! # }
//! ```

pub mod blowup;
pub mod correspondence;
pub mod error;
pub mod exact;
pub mod io;
pub mod keypoly;
#[cfg(test)]
mod testutil;
pub mod tree;
pub mod valuation;

pub use blowup::{BlowupSeq, BlowupStep, Chart};
pub use correspondence::ValuationOracle;
pub use error::{Error, Result};
pub use exact::{parse_poly, BaseField, BivarPoly, Elem, RatFunc, Value};
pub use valuation::{ChainEntry, MacLaneChain};

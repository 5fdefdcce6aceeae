//! Exact arithmetic in the field `On_p` of ordinals below `ω^ω^ω`.
//!
//! Ordinals are exchanged as [`Ordinal`] values; arithmetic runs on the
//! internal [`Element`] form through a per-prime [`Context`], which also
//! memoizes the structure data (`α_u`, `χ_h`, degrees, dense layouts).
//!
//! ```
//! use onp::{Context, Mode};
//!
//! let ctx = Context::new(3).unwrap();
//! let x = onp::parse("22+19", Mode::Field, &ctx).unwrap();
//! assert_eq!(x.to_string(), "14");
//! ```

mod arith;
mod context;
pub mod dense;
mod element;
mod error;
pub mod expr;
pub mod nt;
pub mod oracle;
mod ordinal;
pub mod sample;
mod structure;
pub mod table;

pub use context::{Config, Context};
pub use element::{Element, GeneratorId, Monomial};
pub use error::{Error, Result};
pub use expr::{format, parse, Mode, Style};
pub use nt::FactorLimits;
pub use ordinal::{ExpOrdinal, Ordinal};
pub use structure::{u_part, AlphaRecord, ChiRecord};
pub use table::{TableRow, TablesFile};

//! Linear codes for preferential pliable index coding.
//!
//! A sender broadcasts m messages over GF(q) to n receivers. Each receiver
//! already holds some messages (side information) and ranks the rest by
//! preference; it is satisfied by decoding *any one* message it does not
//! hold, and the lower that message's rank, the better. A linear code is an
//! encoding matrix: the sender transmits its rows' combinations of messages,
//! and a receiver decodes by cancelling its side information.
//!
//! The crate measures a code by two numbers — its length (rows transmitted)
//! and the overall satisfaction (sum over receivers of the rank of the
//! message each one decodes) — and provides:
//!
//! * [`oracle`]: two independent exhaustive searches for the exact Pareto
//!   boundary between length and satisfaction, one enumerating decoding
//!   choices, one enumerating row spaces. They must agree; that redundancy
//!   is the point.
//! * [`greedy`]: a randomized greedy cover heuristic that scales far past
//!   the oracles, plus a Gaussian-elimination post-processing step.
//! * [`pareto`], [`instance`], [`fq`]: the supporting pieces — dominance
//!   bookkeeping, the problem model with its generators and JSON format,
//!   and exact linear algebra over prime fields.

pub mod error;
pub mod fq;
pub mod greedy;
pub mod instance;
pub mod oracle;
pub mod pareto;

pub use error::Error;

#[cfg(test)]
pub(crate) mod testkit;

//! Fixtures shared by the unit tests.

use crate::fq::PrimeField;
use crate::instance::{Instance, Rank};

pub(crate) fn gf(q: u64) -> PrimeField {
    PrimeField::new(q).unwrap()
}

/// The running two-receiver example over GF(2):
/// P = [[2, inf, 1, inf, 2], [inf, 1, 2, 1, inf]].
pub(crate) fn two_receiver_instance() -> Instance {
    Instance::from_rows(
        gf(2),
        vec![
            vec![Rank::int(2), Rank::Infinite, Rank::int(1), Rank::Infinite, Rank::int(2)],
            vec![Rank::Infinite, Rank::int(1), Rank::int(2), Rank::int(1), Rank::Infinite],
        ],
    )
    .unwrap()
}

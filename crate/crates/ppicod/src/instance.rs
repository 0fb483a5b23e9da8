//! The problem model: a broadcast field, n receivers, m messages, and an
//! n x m preference matrix of ranks.
//!
//! A rank is either a positive rational (smaller = more wanted) or infinite,
//! meaning the receiver already holds that message as side information. All
//! rank arithmetic is exact — arbitrary-precision rationals — so scores and
//! thresholds never suffer rounding or overflow, whatever the input.
//!
//! Indices are 0-based throughout the API. The JSON format, CSV files and
//! log messages are 1-based; the conversion happens at those boundaries and
//! nowhere else.

use std::collections::BTreeSet;
use std::fmt;
use std::path::Path;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

use crate::error::Error;
use crate::fq::PrimeField;

/// Exact rational scalar used for ranks, thresholds, weights and scores.
pub type Rational = BigRational;

/// Rational from a numerator/denominator pair. Panics on a zero denominator;
/// use [`parse_rational`] for untrusted input.
pub fn rat(num: i64, den: i64) -> Rational {
    assert!(den != 0, "zero denominator");
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn rat_int(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

/// Parses "3", "-7", "3/2" or "0.25" into an exact rational. Length-capped
/// and total: no panic on any input string.
pub fn parse_rational(text: &str) -> Result<Rational, Error> {
    const MAX_LEN: usize = 64;
    if text.is_empty() {
        return Err(Error::Parse("empty rational".into()));
    }
    if text.len() > MAX_LEN {
        return Err(Error::Parse(format!("rational literal longer than {MAX_LEN} bytes")));
    }
    let parse_int = |s: &str| -> Result<BigInt, Error> {
        s.parse::<BigInt>()
            .map_err(|_| Error::Parse(format!("bad integer {s:?}")))
    };
    if let Some((num, den)) = text.split_once('/') {
        let num = parse_int(num)?;
        let den = parse_int(den)?;
        if den.is_zero() {
            return Err(Error::Parse(format!("zero denominator in {text:?}")));
        }
        return Ok(Rational::new(num, den));
    }
    if let Some((whole, frac)) = text.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(Error::Parse(format!("bad decimal {text:?}")));
        }
        let negative = whole.starts_with('-');
        let whole_int = if whole == "-" { BigInt::zero() } else { parse_int(whole)? };
        let scale = BigInt::from(10u32).pow(frac.len() as u32);
        let frac_int = parse_int(frac)?;
        let numerator = whole_int.abs() * &scale + frac_int;
        let signed = if negative { -numerator } else { numerator };
        return Ok(Rational::new(signed, scale));
    }
    Ok(Rational::from_integer(parse_int(text)?))
}

/// Renders a rational as "n" (integral) or "n/d", the inverse of
/// [`parse_rational`] on its canonical forms.
pub fn format_rational(value: &Rational) -> String {
    if value.denom().is_one() {
        value.numer().to_string()
    } else {
        format!("{}/{}", value.numer(), value.denom())
    }
}

/// A preference-matrix entry: a finite rank, or infinite for a message the
/// receiver already holds. Infinite compares greater than every finite rank.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Rank {
    Finite(Rational),
    Infinite,
}

impl Rank {
    pub fn int(value: i64) -> Rank {
        Rank::Finite(rat_int(value))
    }

    pub fn of(num: i64, den: i64) -> Rank {
        Rank::Finite(rat(num, den))
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Rank::Finite(_))
    }

    pub fn finite(&self) -> Option<&Rational> {
        match self {
            Rank::Finite(r) => Some(r),
            Rank::Infinite => None,
        }
    }
}

impl PartialOrd for Rank {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Rank {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        use Rank::*;
        match (self, other) {
            (Infinite, Infinite) => std::cmp::Ordering::Equal,
            (Infinite, Finite(_)) => std::cmp::Ordering::Greater,
            (Finite(_), Infinite) => std::cmp::Ordering::Less,
            (Finite(a), Finite(b)) => a.cmp(b),
        }
    }
}

impl fmt::Display for Rank {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rank::Finite(r) => write!(f, "{}", format_rational(r)),
            Rank::Infinite => write!(f, "inf"),
        }
    }
}

/// A structural problem with a preference matrix, reported per cell or per
/// row so a user can fix their input.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    /// Every entry of the row is infinite: the receiver wants nothing.
    AllSideInformation { receiver: usize },
    /// A finite rank must be strictly positive.
    NonPositiveRank { receiver: usize, message: usize, rank: Rational },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::AllSideInformation { receiver } => {
                write!(f, "receiver {} holds every message and wants nothing", receiver + 1)
            }
            Violation::NonPositiveRank { receiver, message, rank } => write!(
                f,
                "receiver {} ranks message {} at {}, but finite ranks must be positive",
                receiver + 1,
                message + 1,
                format_rational(rank)
            ),
        }
    }
}

/// One demand edge of the bipartite demand graph: `receiver` wants `message`
/// with the given (finite) weight.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub receiver: usize,
    pub message: usize,
    pub weight: Rational,
}

/// The demand graph of an instance: one edge per finite preference entry,
/// in row-major order.
#[derive(Clone, Debug)]
pub struct BipartiteView {
    pub n: usize,
    pub m: usize,
    pub edges: Vec<Edge>,
}

impl BipartiteView {
    pub fn receiver_edges(&self, receiver: usize) -> impl Iterator<Item = &Edge> {
        self.edges.iter().filter(move |e| e.receiver == receiver)
    }
}

/// A problem instance: field order q plus the n x m preference matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    field: PrimeField,
    n: usize,
    m: usize,
    prefs: Vec<Rank>,
}

impl Instance {
    pub fn new(field: PrimeField, n: usize, m: usize, prefs: Vec<Rank>) -> Result<Self, Error> {
        if n == 0 || m == 0 {
            return Err(Error::Shape("an instance needs at least one receiver and one message".into()));
        }
        if prefs.len() != n * m {
            return Err(Error::Shape(format!(
                "preference matrix needs {} entries, got {}",
                n * m,
                prefs.len()
            )));
        }
        Ok(Self { field, n, m, prefs })
    }

    pub fn from_rows(field: PrimeField, rows: Vec<Vec<Rank>>) -> Result<Self, Error> {
        let n = rows.len();
        let m = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != m) {
            return Err(Error::Shape("ragged preference matrix".into()));
        }
        Self::new(field, n, m, rows.into_iter().flatten().collect())
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn receivers(&self) -> usize {
        self.n
    }

    pub fn messages(&self) -> usize {
        self.m
    }

    pub fn pref(&self, receiver: usize, message: usize) -> &Rank {
        debug_assert!(receiver < self.n && message < self.m);
        &self.prefs[receiver * self.m + message]
    }

    pub fn row(&self, receiver: usize) -> &[Rank] {
        &self.prefs[receiver * self.m..(receiver + 1) * self.m]
    }

    fn check_receiver(&self, receiver: usize) -> Result<(), Error> {
        if receiver < self.n {
            Ok(())
        } else {
            Err(Error::ReceiverOutOfRange { index: receiver, n: self.n })
        }
    }

    /// The side-information set H_i: messages the receiver already holds.
    pub fn side_info(&self, receiver: usize) -> Result<BTreeSet<usize>, Error> {
        self.check_receiver(receiver)?;
        Ok(self
            .row(receiver)
            .iter()
            .enumerate()
            .filter(|(_, r)| !r.is_finite())
            .map(|(j, _)| j)
            .collect())
    }

    /// Messages the receiver does not hold, with their finite ranks.
    pub fn wanted(&self, receiver: usize) -> impl Iterator<Item = (usize, &Rational)> {
        self.row(receiver)
            .iter()
            .enumerate()
            .filter_map(|(j, r)| r.finite().map(|w| (j, w)))
    }

    /// Smallest finite rank in the row — the receiver's favourite.
    pub fn best_rank(&self, receiver: usize) -> Option<&Rational> {
        self.wanted(receiver).map(|(_, w)| w).min()
    }

    /// Largest finite rank in the row.
    pub fn worst_rank(&self, receiver: usize) -> Option<&Rational> {
        self.wanted(receiver).map(|(_, w)| w).max()
    }

    /// The smallest side-information set size over all receivers.
    pub fn min_side_info(&self) -> usize {
        (0..self.n)
            .map(|i| self.row(i).iter().filter(|r| !r.is_finite()).count())
            .min()
            .unwrap_or(0)
    }

    /// All structural violations, in row-major order of discovery.
    pub fn violations(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        for i in 0..self.n {
            let mut any_finite = false;
            for (j, rank) in self.row(i).iter().enumerate() {
                if let Rank::Finite(r) = rank {
                    any_finite = true;
                    if !r.is_positive() {
                        out.push(Violation::NonPositiveRank {
                            receiver: i,
                            message: j,
                            rank: r.clone(),
                        });
                    }
                }
            }
            if !any_finite {
                out.push(Violation::AllSideInformation { receiver: i });
            }
        }
        out
    }

    pub fn validate(&self) -> Result<(), Error> {
        let violations = self.violations();
        if violations.is_empty() {
            Ok(())
        } else {
            Err(Error::InvalidInstance(violations))
        }
    }

    /// The demand graph: one weighted edge per finite preference.
    pub fn bipartite(&self) -> BipartiteView {
        let mut edges = Vec::new();
        for i in 0..self.n {
            for (j, w) in self.wanted(i) {
                edges.push(Edge { receiver: i, message: j, weight: w.clone() });
            }
        }
        BipartiteView { n: self.n, m: self.m, edges }
    }

    // ---- JSON ----

    /// Parses `{"q": 2, "P": [[2, null, "3/2"], ...]}`. Entries are null
    /// (side information), JSON integers, or strings accepted by
    /// [`parse_rational`]. Unknown top-level keys are ignored.
    pub fn from_json_str(text: &str) -> Result<Instance, Error> {
        let value: Value =
            serde_json::from_str(text).map_err(|e| Error::Parse(format!("bad JSON: {e}")))?;
        let obj = value
            .as_object()
            .ok_or_else(|| Error::Parse("top level must be an object".into()))?;
        let q = obj
            .get("q")
            .ok_or_else(|| Error::Parse("missing field \"q\"".into()))?
            .as_u64()
            .ok_or_else(|| Error::Parse("\"q\" must be a positive integer".into()))?;
        let field = PrimeField::new(q)?;
        let rows = obj
            .get("P")
            .ok_or_else(|| Error::Parse("missing field \"P\"".into()))?
            .as_array()
            .ok_or_else(|| Error::Parse("\"P\" must be an array of rows".into()))?;
        let mut parsed: Vec<Vec<Rank>> = Vec::with_capacity(rows.len());
        for (i, row) in rows.iter().enumerate() {
            let row = row
                .as_array()
                .ok_or_else(|| Error::Parse(format!("row {} must be an array", i + 1)))?;
            let mut out = Vec::with_capacity(row.len());
            for (j, cell) in row.iter().enumerate() {
                out.push(parse_rank_cell(cell).map_err(|e| {
                    Error::Parse(format!("row {}, entry {}: {e}", i + 1, j + 1))
                })?);
            }
            parsed.push(out);
        }
        Instance::from_rows(field, parsed)
    }

    /// Serializes back to the JSON form. Integral ranks that fit a JSON
    /// number are written bare; everything else finite becomes a rational
    /// string, so a round trip is always exact.
    pub fn to_json_string(&self) -> String {
        let mut rows = Vec::with_capacity(self.n);
        for i in 0..self.n {
            let cells: Vec<String> = self
                .row(i)
                .iter()
                .map(|rank| match rank {
                    Rank::Infinite => "null".to_string(),
                    Rank::Finite(r) => {
                        if r.denom().is_one() {
                            if let Ok(v) = i64::try_from(r.numer().clone()) {
                                return v.to_string();
                            }
                        }
                        format!("\"{}\"", format_rational(r))
                    }
                })
                .collect();
            rows.push(format!("[{}]", cells.join(",")));
        }
        format!("{{\"q\":{},\"P\":[{}]}}", self.field.order(), rows.join(","))
    }

    pub fn load(path: &Path) -> Result<Instance, Error> {
        let text = std::fs::read_to_string(path)?;
        Instance::from_json_str(&text)
    }

    pub fn save(&self, path: &Path) -> Result<(), Error> {
        std::fs::write(path, self.to_json_string() + "\n")?;
        Ok(())
    }
}

fn parse_rank_cell(cell: &Value) -> Result<Rank, Error> {
    match cell {
        Value::Null => Ok(Rank::Infinite),
        Value::Number(n) => {
            let v = n
                .as_i64()
                .ok_or_else(|| Error::Parse(format!("rank {n} is not an integer; write rationals as strings")))?;
            Ok(Rank::int(v))
        }
        Value::String(s) => Ok(Rank::Finite(parse_rational(s)?)),
        other => Err(Error::Parse(format!("rank must be null, integer or string, got {other}"))),
    }
}

// ---- generators ----

/// Fisher-Yates with an explicit loop so the sequence of RNG draws is pinned
/// by this crate, not by whatever `shuffle` does in a given rand release.
fn shuffle<T>(values: &mut [T], rng: &mut ChaCha8Rng) {
    for i in (1..values.len()).rev() {
        let j = rng.random_range(0..=i);
        values.swap(i, j);
    }
}

fn random_subset(m: usize, h: usize, rng: &mut ChaCha8Rng) -> BTreeSet<usize> {
    let mut idx: Vec<usize> = (0..m).collect();
    shuffle(&mut idx, rng);
    idx.into_iter().take(h).collect()
}

/// Uniform instance: every receiver holds a uniformly random h-subset as
/// side information and ranks the remaining m-h messages by a uniformly
/// random permutation of 1..=m-h. Deterministic in `seed`.
pub fn gen_uniform(
    field: PrimeField,
    m: usize,
    n: usize,
    h: usize,
    seed: u64,
) -> Result<Instance, Error> {
    if h >= m {
        return Err(Error::Params(format!(
            "side information size {h} must be smaller than the message count {m}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rows = Vec::with_capacity(n);
    for _ in 0..n {
        let side = random_subset(m, h, &mut rng);
        let mut ranks: Vec<i64> = (1..=(m - h) as i64).collect();
        shuffle(&mut ranks, &mut rng);
        let mut row = vec![Rank::Infinite; m];
        for (slot, j) in (0..m).filter(|j| !side.contains(j)).enumerate() {
            row[j] = Rank::int(ranks[slot]);
        }
        rows.push(row);
    }
    Instance::from_rows(field, rows)
}

/// Rank order for the two-camp generator: camp 0 ranks messages by ascending
/// index; camp 1 rotates the index space by half so its favourites start at
/// message 5 (of 8). Exposed for tests.
pub fn group_biased_row(camp: usize, m: usize, side: &BTreeSet<usize>) -> Vec<Rank> {
    let key = |j: usize| if camp == 0 { j } else { (j + 4) % m };
    let mut wanted: Vec<usize> = (0..m).filter(|j| !side.contains(j)).collect();
    wanted.sort_by_key(|&j| key(j));
    let mut row = vec![Rank::Infinite; m];
    for (rank, &j) in wanted.iter().enumerate() {
        row[j] = Rank::int(rank as i64 + 1);
    }
    row
}

/// Two-camp instance on m = 8 messages: receivers split into two equal camps
/// with deterministic, opposed rank orders; only the side-information
/// h-subsets are random. Deterministic in `seed`.
pub fn gen_group_biased(
    field: PrimeField,
    m: usize,
    n: usize,
    h: usize,
    seed: u64,
) -> Result<Instance, Error> {
    if m != 8 {
        return Err(Error::Params(format!("the two-camp generator is defined for m = 8, got {m}")));
    }
    if h >= m {
        return Err(Error::Params(format!(
            "side information size {h} must be smaller than the message count {m}"
        )));
    }
    if n == 0 || n % 2 != 0 {
        return Err(Error::Params(format!("receiver count must be even and positive, got {n}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rows = Vec::with_capacity(n);
    for i in 0..n {
        let camp = usize::from(i >= n / 2);
        let side = random_subset(m, h, &mut rng);
        rows.push(group_biased_row(camp, m, &side));
    }
    Instance::from_rows(field, rows)
}

//! Dominance bookkeeping for (length, satisfaction) pairs.
//!
//! A point is a code length together with the best overall satisfaction
//! known at that length, plus the witnesses that achieve it. Lower is better
//! in both coordinates; a point dominates another if it is no worse in both
//! and strictly better in one. A front is an antichain of points sorted by
//! length — walked left to right, lengths go up exactly when satisfactions
//! go down.
//!
//! Fronts merge associatively, so exhaustive sweeps can reduce partial
//! fronts in any order (and in parallel) and land on the same answer. The
//! only wrinkle is the witnesses: each point keeps at most
//! [`MAX_WITNESSES`], chosen as the smallest in a total order, so the
//! result is independent of merge order anyway.

use std::collections::BTreeMap;
use std::fmt;

use num::Zero;

use crate::error::Error;
use crate::fq::Matrix;
use crate::instance::{format_rational, parse_rational, Rational};

/// Cap on stored witnesses per point. Exhaustive sweeps can hit the same
/// coordinates astronomically often; keeping the few smallest is enough to
/// exhibit achievability without drowning in matrices.
pub const MAX_WITNESSES: usize = 8;

/// Proof that a point is achievable: either an encoding matrix or a decoding
/// choice (one message index per receiver, 0-based).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Witness {
    Code(Matrix),
    Decoding(Vec<usize>),
}

impl Witness {
    /// Compact one-token id used in CSV output: `rref:<row-major entries>`
    /// for a code (single digits for q <= 10, dot-separated otherwise) or
    /// `dec:<choices>` with 1-based message indices joined by dashes.
    pub fn id(&self) -> String {
        match self {
            Witness::Code(m) => {
                let digits: Vec<String> = m.entries().iter().map(u64::to_string).collect();
                if m.field().order() <= 10 {
                    format!("rref:{}", digits.join(""))
                } else {
                    format!("rref:{}", digits.join("."))
                }
            }
            Witness::Decoding(choice) => {
                let parts: Vec<String> = choice.iter().map(|j| (j + 1).to_string()).collect();
                format!("dec:{}", parts.join("-"))
            }
        }
    }
}

/// One point of the length/satisfaction trade-off.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Point {
    pub ell: usize,
    pub s: Rational,
    pub witnesses: Vec<Witness>,
}

impl Point {
    pub fn new(ell: usize, s: Rational) -> Point {
        Point { ell, s, witnesses: Vec::new() }
    }

    pub fn with_witness(ell: usize, s: Rational, witness: Witness) -> Point {
        Point { ell, s, witnesses: vec![witness] }
    }

    pub fn coord(&self) -> (usize, &Rational) {
        (self.ell, &self.s)
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.ell, format_rational(&self.s))
    }
}

/// Both coordinates no worse and at least one strictly better.
pub fn dominates(a: &Point, b: &Point) -> bool {
    a.ell <= b.ell && a.s <= b.s && (a.ell < b.ell || a.s < b.s)
}

/// An antichain of points, sorted by length (so satisfaction strictly
/// decreases left to right).
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Front {
    points: Vec<Point>,
}

impl Front {
    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn coords(&self) -> Vec<(usize, Rational)> {
        self.points.iter().map(|p| (p.ell, p.s.clone())).collect()
    }

    /// Shortest length on the front.
    pub fn min_ell(&self) -> Option<usize> {
        self.points.first().map(|p| p.ell)
    }

    /// Best (smallest) satisfaction on the front.
    pub fn min_s(&self) -> Option<&Rational> {
        self.points.last().map(|p| &p.s)
    }

    pub fn contains_coord(&self, ell: usize, s: &Rational) -> bool {
        self.points.iter().any(|p| p.ell == ell && &p.s == s)
    }

    /// True if no point of the front dominates `point`.
    pub fn admits(&self, point: &Point) -> bool {
        !self.points.iter().any(|p| dominates(p, point))
    }

    pub fn merge(&self, other: &Front) -> Front {
        pareto_front(self.points.iter().chain(other.points.iter()).cloned())
    }

    /// Folds one point into the front: pooled into an existing point on an
    /// exact coordinate match, dropped if dominated, otherwise inserted in
    /// place of whatever it dominates. Equivalent to rebuilding the front
    /// from scratch (a test holds the two routes together), but O(len) —
    /// what exhaustive sweeps call once per enumerated object.
    pub fn insert(&mut self, point: Point) {
        if let Some(existing) = self
            .points
            .iter_mut()
            .find(|e| e.ell == point.ell && e.s == point.s)
        {
            existing.witnesses.extend(point.witnesses);
            existing.witnesses.sort();
            existing.witnesses.dedup();
            existing.witnesses.truncate(MAX_WITNESSES);
            return;
        }
        if self.points.iter().any(|e| dominates(e, &point)) {
            return;
        }
        self.points.retain(|e| !dominates(&point, e));
        let pos = self.points.partition_point(|e| e.ell < point.ell);
        self.points.insert(pos, point);
    }
}

/// Filters an arbitrary collection of points down to its Pareto front.
/// Points sharing coordinates are collapsed into one, pooling witnesses
/// (sorted, deduplicated, capped at [`MAX_WITNESSES`]).
pub fn pareto_front(points: impl IntoIterator<Item = Point>) -> Front {
    // group by exact coordinates first
    let mut grouped: BTreeMap<(usize, Rational), Vec<Witness>> = BTreeMap::new();
    for p in points {
        let slot = grouped.entry((p.ell, p.s)).or_default();
        slot.extend(p.witnesses);
        slot.sort();
        slot.dedup();
        slot.truncate(MAX_WITNESSES);
    }
    let candidates: Vec<Point> = grouped
        .into_iter()
        .map(|((ell, s), witnesses)| Point { ell, s, witnesses })
        .collect();
    let points: Vec<Point> = candidates
        .iter()
        .filter(|p| !candidates.iter().any(|other| dominates(other, p)))
        .cloned()
        .collect();
    // BTreeMap iteration already sorted by (ell, s); the filter keeps order
    Front { points }
}

// ---- CSV ----

/// One row of a front CSV file: exact coordinates plus the id of one
/// witness (possibly empty). The id is carried as an opaque token.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FrontRow {
    pub ell: usize,
    pub s: Rational,
    pub witness_id: String,
}

const FRONT_HEADER: [&str; 4] = ["ell", "s_num", "s_den", "witness_id"];

impl Front {
    pub fn to_rows(&self) -> Vec<FrontRow> {
        self.points
            .iter()
            .map(|p| FrontRow {
                ell: p.ell,
                s: p.s.clone(),
                witness_id: p.witnesses.first().map(Witness::id).unwrap_or_default(),
            })
            .collect()
    }
}

/// Writes `ell,s_num,s_den,witness_id` rows.
pub fn write_front_csv(rows: &[FrontRow]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(FRONT_HEADER).expect("write to Vec cannot fail");
    for row in rows {
        w.write_record([
            row.ell.to_string(),
            row.s.numer().to_string(),
            row.s.denom().to_string(),
            row.witness_id.clone(),
        ])
        .expect("write to Vec cannot fail");
    }
    String::from_utf8(w.into_inner().expect("no partial flush")).expect("CSV output is UTF-8")
}

/// Parses what [`write_front_csv`] produces. Header required; satisfaction
/// is reassembled from the exact numerator/denominator columns.
pub fn parse_front_csv(text: &str) -> Result<Vec<FrontRow>, Error> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .from_reader(text.as_bytes());
    check_header(&mut reader, &FRONT_HEADER)?;
    let mut rows = Vec::new();
    for (line, record) in reader.records().enumerate() {
        let record = record.map_err(|e| Error::Parse(format!("row {}: {e}", line + 2)))?;
        if record.len() != FRONT_HEADER.len() {
            return Err(Error::Parse(format!(
                "row {}: expected {} fields, got {}",
                line + 2,
                FRONT_HEADER.len(),
                record.len()
            )));
        }
        rows.push(FrontRow {
            ell: parse_usize(&record[0], line + 2)?,
            s: parse_fraction(&record[1], &record[2], line + 2)?,
            witness_id: record[3].to_string(),
        });
    }
    Ok(rows)
}

pub(crate) fn check_header<R: std::io::Read>(
    reader: &mut csv::Reader<R>,
    expected: &[&str],
) -> Result<(), Error> {
    let header = reader
        .headers()
        .map_err(|e| Error::Parse(format!("bad CSV header: {e}")))?;
    let got: Vec<&str> = header.iter().collect();
    if got != expected {
        return Err(Error::Parse(format!(
            "bad CSV header: expected {}, got {}",
            expected.join(","),
            got.join(",")
        )));
    }
    Ok(())
}

pub(crate) fn parse_usize(text: &str, line: usize) -> Result<usize, Error> {
    text.parse::<usize>()
        .map_err(|_| Error::Parse(format!("row {line}: bad count {text:?}")))
}

/// Exact rational from separate numerator and denominator fields.
pub(crate) fn parse_fraction(num: &str, den: &str, line: usize) -> Result<Rational, Error> {
    let num = parse_rational(num).map_err(|e| Error::Parse(format!("row {line}: {e}")))?;
    let den = parse_rational(den).map_err(|e| Error::Parse(format!("row {line}: {e}")))?;
    if !num.is_integer() || !den.is_integer() {
        return Err(Error::Parse(format!("row {line}: numerator and denominator must be integers")));
    }
    if den.is_zero() {
        return Err(Error::Parse(format!("row {line}: zero denominator")));
    }
    Ok(num / den)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::{rat, rat_int};
    use crate::testkit::gf;
    use rand::{RngExt, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn pt(ell: usize, s: i64) -> Point {
        Point::new(ell, rat_int(s))
    }

    #[test]
    fn dominance() {
        assert!(dominates(&pt(1, 3), &pt(2, 3)));
        assert!(dominates(&pt(1, 3), &pt(1, 4)));
        assert!(dominates(&pt(1, 3), &pt(2, 4)));
        assert!(!dominates(&pt(1, 3), &pt(1, 3)));
        assert!(!dominates(&pt(1, 3), &pt(2, 2)));
        assert!(!dominates(&pt(2, 2), &pt(1, 3)));
        // exact rational comparison: 5/2 < 3
        assert!(dominates(&Point::new(1, rat(5, 2)), &pt(1, 3)));
    }

    #[test]
    fn front_filters_dominated_points() {
        let front = pareto_front([pt(1, 3), pt(2, 2), pt(2, 4), pt(3, 2), pt(1, 5)]);
        assert_eq!(front.coords(), vec![(1, rat_int(3)), (2, rat_int(2))]);
        assert_eq!(front.min_ell(), Some(1));
        assert_eq!(front.min_s(), Some(&rat_int(2)));
        assert!(front.contains_coord(2, &rat_int(2)));
        assert!(!front.contains_coord(2, &rat_int(4)));
        assert!(front.admits(&pt(1, 2)));
        assert!(!front.admits(&pt(2, 5)));
    }

    #[test]
    fn front_of_antichain_keeps_everything() {
        let front = pareto_front([pt(3, 1), pt(1, 5), pt(2, 3)]);
        assert_eq!(front.coords(), vec![(1, rat_int(5)), (2, rat_int(3)), (3, rat_int(1))]);
    }

    #[test]
    fn empty_and_singleton() {
        assert!(pareto_front([]).is_empty());
        let front = pareto_front([pt(2, 2)]);
        assert_eq!(front.coords(), vec![(2, rat_int(2))]);
    }

    #[test]
    fn satisfaction_strictly_decreases_along_front() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for _ in 0..100 {
            let points: Vec<Point> = (0..rng.random_range(0..40))
                .map(|_| pt(rng.random_range(1..8), rng.random_range(1..30)))
                .collect();
            let front = pareto_front(points);
            for pair in front.points().windows(2) {
                assert!(pair[0].ell < pair[1].ell);
                assert!(pair[0].s > pair[1].s);
            }
        }
    }

    #[test]
    fn merge_examples() {
        let a = pareto_front([pt(1, 3)]);
        let b = pareto_front([pt(2, 2)]);
        assert_eq!(a.merge(&b).coords(), vec![(1, rat_int(3)), (2, rat_int(2))]);
        let c = pareto_front([pt(2, 3)]);
        assert_eq!(a.merge(&c).coords(), vec![(1, rat_int(3))]);
        assert_eq!(a.merge(&Front::default()), a);
        assert_eq!(a.merge(&a), a);
    }

    #[test]
    fn merge_is_associative_and_commutative() {
        let mut rng = ChaCha8Rng::seed_from_u64(22);
        for _ in 0..200 {
            let mut sets = Vec::new();
            for _ in 0..3 {
                let pts: Vec<Point> = (0..rng.random_range(0..12))
                    .map(|_| pt(rng.random_range(1..6), rng.random_range(1..20)))
                    .collect();
                sets.push(pareto_front(pts));
            }
            let (a, b, c) = (&sets[0], &sets[1], &sets[2]);
            assert_eq!(a.merge(b).merge(c), a.merge(&b.merge(c)));
            assert_eq!(a.merge(b), b.merge(a));
        }
    }

    #[test]
    fn front_of_superset_between_front_and_set_is_stable() {
        // If F = front(S) and F ⊆ T ⊆ S, then front(T) = F.
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for _ in 0..50 {
            let set: Vec<Point> = (0..rng.random_range(1..30))
                .map(|_| pt(rng.random_range(1..6), rng.random_range(1..20)))
                .collect();
            let front = pareto_front(set.clone());
            let mut middle = front.points().to_vec();
            for p in set.iter().step_by(3) {
                middle.push(p.clone());
            }
            assert_eq!(pareto_front(middle).coords(), front.coords());
        }
    }

    #[test]
    fn incremental_insert_equals_batch_rebuild() {
        let mut rng = ChaCha8Rng::seed_from_u64(24);
        for _ in 0..100 {
            let points: Vec<Point> = (0..rng.random_range(0..40))
                .map(|_| {
                    Point::with_witness(
                        rng.random_range(1..6),
                        rat_int(rng.random_range(1..15)),
                        Witness::Decoding(vec![rng.random_range(0..4)]),
                    )
                })
                .collect();
            let mut incremental = Front::default();
            for p in points.clone() {
                incremental.insert(p);
            }
            assert_eq!(incremental, pareto_front(points));
        }
    }

    #[test]
    fn witnesses_pool_sorted_and_capped() {
        let wit = |k: usize| Witness::Decoding(vec![k]);
        let points: Vec<Point> = (0..20)
            .rev()
            .map(|k| Point::with_witness(1, rat_int(1), wit(k)))
            .chain(std::iter::once(Point::with_witness(1, rat_int(1), wit(3))))
            .collect();
        let front = pareto_front(points);
        assert_eq!(front.len(), 1);
        let witnesses = &front.points()[0].witnesses;
        assert_eq!(witnesses.len(), MAX_WITNESSES);
        let expected: Vec<Witness> = (0..MAX_WITNESSES).map(wit).collect();
        assert_eq!(witnesses, &expected, "smallest witnesses survive, duplicates collapse");
    }

    #[test]
    fn witness_ids() {
        let m = Matrix::from_rows(gf(2), &[vec![1, 0, 1], vec![0, 1, 0]]).unwrap();
        assert_eq!(Witness::Code(m).id(), "rref:101010");
        let m = Matrix::from_rows(crate::fq::PrimeField::new(11).unwrap(), &[vec![10, 0]]).unwrap();
        assert_eq!(Witness::Code(m).id(), "rref:10.0");
        assert_eq!(Witness::Decoding(vec![2, 0, 1]).id(), "dec:3-1-2");
    }

    #[test]
    fn front_csv_round_trip() {
        let mut front = pareto_front([
            Point::with_witness(1, rat_int(3), Witness::Decoding(vec![2, 2])),
            Point::new(2, rat(5, 2)),
        ]);
        front.points[1].witnesses.clear();
        let rows = front.to_rows();
        let text = write_front_csv(&rows);
        assert!(text.starts_with("ell,s_num,s_den,witness_id\n"));
        assert_eq!(parse_front_csv(&text).unwrap(), rows);
    }

    #[test]
    fn front_csv_rejects_malformed_input() {
        let cases = [
            "",
            "nonsense\n1,2,3,x",
            "ell,s_num,s_den\n1,2,3",
            "ell,s_num,s_den,witness_id\nx,2,3,",
            "ell,s_num,s_den,witness_id\n1,2,0,",
            "ell,s_num,s_den,witness_id\n1,2.5,3,",
            "ell,s_num,s_den,witness_id\n1,2",
        ];
        for text in cases {
            assert!(parse_front_csv(text).is_err(), "{text:?} should fail");
        }
    }
}

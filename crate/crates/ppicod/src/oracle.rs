//! Exhaustive ground truth: the exact Pareto boundary of code length versus
//! overall satisfaction, computed two independent ways.
//!
//! Method 1 enumerates *decoding choices* — one wanted message per receiver
//! — and for each computes the shortest code supporting it, by brute-forcing
//! every fitting matrix (rows constrained to the chosen message plus side
//! information). Method 2 enumerates *codes*: every reduced-row-echelon
//! matrix, i.e. one representative per row space, and evaluates what each
//! receiver can decode. Both land on the same boundary by construction of
//! the search spaces, not shared code — which is exactly why the crate has
//! both. Any disagreement is a bug, and the test suite treats it that way.
//!
//! Everything here is exponential and guarded by an explicit [`Budget`]:
//! callers learn the exact enumeration size of a refused request instead of
//! waiting on a sweep that will not finish.

use std::collections::BTreeSet;

use num::Zero;
use rayon::prelude::*;

use crate::error::Error;
use crate::fq::{count_rref, remove_columns, rref, rref_blocks, Matrix, PrimeField};
use crate::instance::{Instance, Rational};
use crate::pareto::{check_header, parse_fraction, parse_usize, Front, Point, Witness};

/// Hard ceiling on how many objects (fitting matrices, RREF codes, decoding
/// choices x fitting matrices) an exhaustive call may enumerate.
#[derive(Clone, Copy, Debug)]
pub struct Budget {
    pub max_objects: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { max_objects: 10_000_000 }
    }
}

impl Budget {
    pub fn new(max_objects: u64) -> Budget {
        Budget { max_objects }
    }

    fn admit(&self, required: u128) -> Result<(), Error> {
        if required > self.max_objects as u128 {
            Err(Error::BudgetExceeded { required, budget: self.max_objects })
        } else {
            Ok(())
        }
    }
}

fn check_code_shape(code: &Matrix, inst: &Instance) -> Result<(), Error> {
    if code.field() != inst.field() {
        return Err(Error::Shape(format!(
            "code is over GF({}) but the instance uses GF({})",
            code.field().order(),
            inst.field().order()
        )));
    }
    if code.cols() != inst.messages() {
        return Err(Error::Shape(format!(
            "code has {} columns but the instance has {} messages",
            code.cols(),
            inst.messages()
        )));
    }
    Ok(())
}

/// Messages receiver `i` can decode from `code`: project away the side
/// information columns and read off the unit rows of the projection's RREF.
/// A message is decodable exactly when its unit vector lies in the
/// projected row space, and for an RREF that happens exactly when the unit
/// vector appears as a row.
pub fn decodable_messages(
    code: &Matrix,
    inst: &Instance,
    receiver: usize,
) -> Result<BTreeSet<usize>, Error> {
    check_code_shape(code, inst)?;
    let side = inst.side_info(receiver)?;
    Ok(decodable_inner(code, &side))
}

fn decodable_inner(code: &Matrix, side: &BTreeSet<usize>) -> BTreeSet<usize> {
    let (projected, keep) = remove_columns(code, side).expect("side info indices are in range");
    rref(&projected)
        .unit_row_columns()
        .into_iter()
        .map(|c| keep[c])
        .collect()
}

/// Per-receiver decodability: the full decodable set and the rank-minimal
/// pick (ties broken toward the smaller message index).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReceiverReport {
    pub receiver: usize,
    pub decodable: BTreeSet<usize>,
    pub best: Option<(usize, Rational)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecodabilityReport {
    pub receivers: Vec<ReceiverReport>,
}

impl DecodabilityReport {
    pub fn all_satisfied(&self) -> bool {
        self.receivers.iter().all(|r| r.best.is_some())
    }
}

pub fn decodability_report(code: &Matrix, inst: &Instance) -> Result<DecodabilityReport, Error> {
    check_code_shape(code, inst)?;
    let mut receivers = Vec::with_capacity(inst.receivers());
    for i in 0..inst.receivers() {
        let side = inst.side_info(i)?;
        let decodable = decodable_inner(code, &side);
        let best = best_pick(inst, i, &decodable);
        receivers.push(ReceiverReport { receiver: i, decodable, best });
    }
    Ok(DecodabilityReport { receivers })
}

/// Rank-minimal decodable message; `decodable` never intersects the side
/// information, so every member has a finite rank.
fn best_pick(inst: &Instance, receiver: usize, decodable: &BTreeSet<usize>) -> Option<(usize, Rational)> {
    decodable
        .iter()
        .map(|&j| {
            let rank = inst
                .pref(receiver, j)
                .finite()
                .expect("decodable messages are outside the side information")
                .clone();
            (j, rank)
        })
        .min_by(|(ja, ra), (jb, rb)| ra.cmp(rb).then(ja.cmp(jb)))
}

/// How to count a code's length: by its rank (row spaces are what matter)
/// or by its literal row count (what a sender would transmit, zero or
/// redundant rows included).
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum LengthMode {
    Rank,
    Rows,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CodeEvaluation {
    pub ell: usize,
    pub s: Rational,
    /// Rank-minimal decodable message per receiver, 0-based.
    pub decoding: Vec<usize>,
}

/// Scores a code against an instance: `None` if some receiver decodes
/// nothing, otherwise the length, the overall satisfaction under the
/// rank-minimal decoding, and that decoding.
pub fn evaluate_code(
    code: &Matrix,
    inst: &Instance,
    mode: LengthMode,
) -> Result<Option<CodeEvaluation>, Error> {
    let report = decodability_report(code, inst)?;
    let mut s = Rational::zero();
    let mut decoding = Vec::with_capacity(inst.receivers());
    for r in report.receivers {
        match r.best {
            None => return Ok(None),
            Some((j, rank)) => {
                decoding.push(j);
                s += rank;
            }
        }
    }
    let ell = match mode {
        LengthMode::Rank => rref(code).rank,
        LengthMode::Rows => code.rows(),
    };
    Ok(Some(CodeEvaluation { ell, s, decoding }))
}

/// Overall satisfaction of a decoding choice: the sum of the chosen
/// messages' ranks. Rejects choices that point a receiver at its own side
/// information or out of range.
pub fn satisfaction(decoding: &[usize], inst: &Instance) -> Result<Rational, Error> {
    if decoding.len() != inst.receivers() {
        return Err(Error::Shape(format!(
            "decoding choice has {} entries for {} receivers",
            decoding.len(),
            inst.receivers()
        )));
    }
    let mut s = Rational::zero();
    for (i, &j) in decoding.iter().enumerate() {
        if j >= inst.messages() {
            return Err(Error::MessageOutOfRange { index: j, m: inst.messages() });
        }
        match inst.pref(i, j).finite() {
            Some(rank) => s += rank,
            None => return Err(Error::DecodingIntoSideInfo { receiver: i, message: j }),
        }
    }
    Ok(s)
}

// ---- decoding choices ----

fn wanted_lists(inst: &Instance) -> Vec<Vec<usize>> {
    (0..inst.receivers())
        .map(|i| inst.wanted(i).map(|(j, _)| j).collect())
        .collect()
}

/// Number of decoding choices: the product of the receivers' wanted-set
/// sizes. Saturates at `u128::MAX`.
pub fn decoding_choice_count(inst: &Instance) -> u128 {
    wanted_lists(inst)
        .iter()
        .fold(1u128, |acc, w| acc.saturating_mul(w.len() as u128))
}

/// The `index`-th decoding choice in odometer order: receiver 0 is the
/// fastest-spinning digit, and each receiver's candidates are its wanted
/// messages in ascending order.
fn choice_at(candidates: &[Vec<usize>], mut index: u64) -> Vec<usize> {
    let mut choice = Vec::with_capacity(candidates.len());
    for wanted in candidates {
        let k = wanted.len() as u64;
        choice.push(wanted[(index % k) as usize]);
        index /= k;
    }
    choice
}

/// All decoding choices of an instance, in the order of [`choice_at`].
pub fn decoding_choices(inst: &Instance) -> impl Iterator<Item = Vec<usize>> {
    let candidates = wanted_lists(inst);
    let count = decoding_choice_count(inst);
    (0..count).map(move |i| choice_at(&candidates, i as u64))
}

// ---- Method 1: minrank over fitting matrices ----

/// Result of the minrank search for one decoding choice: the minimum rank
/// over all fitting matrices and a basis (RREF rows) of one optimal fit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinrankOutcome {
    pub rank: usize,
    pub witness: Matrix,
}

/// Fitting matrices of a decoding choice D: n x m, row i fixed to 1 at
/// D(i), free over the side information H_i, zero elsewhere. The cell
/// count is sum |H_i|, so the search visits q^(sum |H_i|) matrices.
fn fitting_cells(inst: &Instance) -> Vec<(usize, usize)> {
    let mut cells = Vec::new();
    for i in 0..inst.receivers() {
        for j in inst.side_info(i).expect("receiver index in range") {
            cells.push((i, j));
        }
    }
    cells
}

fn fitting_count(inst: &Instance) -> u128 {
    let cells = fitting_cells(inst).len();
    (inst.field().order() as u128)
        .checked_pow(cells as u32)
        .unwrap_or(u128::MAX)
}

/// Minimum rank over the fitting matrices of `decoding`, with a witness.
/// The witness is the RREF basis of the first optimal fit in enumeration
/// order, so the outcome is deterministic.
pub fn minrank(inst: &Instance, decoding: &[usize], budget: &Budget) -> Result<MinrankOutcome, Error> {
    satisfaction(decoding, inst)?; // validates the choice
    let required = fitting_count(inst);
    budget.admit(required)?;
    Ok(minrank_unchecked(inst, decoding))
}

fn minrank_unchecked(inst: &Instance, decoding: &[usize]) -> MinrankOutcome {
    let field = inst.field();
    let q = field.order() as u128;
    let cells = fitting_cells(inst);
    let count = fitting_count(inst);
    let mut base = Matrix::zeros(field, inst.receivers(), inst.messages());
    for (i, &j) in decoding.iter().enumerate() {
        base.set(i, j, 1);
    }
    let mut best: Option<MinrankOutcome> = None;
    for idx in 0..count {
        let mut fit = base.clone();
        let mut digits = idx;
        for &(i, j) in &cells {
            fit.set(i, j, (digits % q) as u64);
            digits /= q;
        }
        let reduced = rref(&fit);
        if best.as_ref().is_none_or(|b| reduced.rank < b.rank) {
            let witness = reduced.rref.nonzero_rows();
            best = Some(MinrankOutcome { rank: reduced.rank, witness });
            if reduced.rank == 1 {
                break; // every fitting matrix is nonzero, so 1 is optimal
            }
        }
    }
    best.expect("at least the base matrix is enumerated")
}

/// Method 1 boundary: sweep every decoding choice, solve minrank for each,
/// and keep the Pareto front of (minrank, satisfaction) points witnessed by
/// their decoding choices.
#[derive(Clone, Debug)]
pub struct Method1Outcome {
    pub front: Front,
    /// Decoding choices enumerated.
    pub decoding_choices: u128,
    /// Fitting matrices enumerated per choice.
    pub fits_per_choice: u128,
}

pub fn method1_boundary(inst: &Instance, budget: &Budget) -> Result<Method1Outcome, Error> {
    inst.validate()?;
    let candidates = wanted_lists(inst);
    let choices = decoding_choice_count(inst);
    let fits = fitting_count(inst);
    budget.admit(choices.saturating_mul(fits))?;
    let total = choices as u64;
    let front = (0..total)
        .into_par_iter()
        .fold(Front::default, |mut front, idx| {
            let decoding = choice_at(&candidates, idx);
            let s = satisfaction(&decoding, inst).expect("candidates are wanted messages");
            let outcome = minrank_unchecked(inst, &decoding);
            front.insert(Point::with_witness(outcome.rank, s, Witness::Decoding(decoding)));
            front
        })
        .reduce(Front::default, |a, b| a.merge(&b));
    Ok(Method1Outcome { front, decoding_choices: choices, fits_per_choice: fits })
}

// ---- Method 2: sweep over row spaces ----

#[derive(Clone, Debug)]
pub struct Method2Outcome {
    pub front: Front,
    /// RREF codes enumerated (every rank from 1 to m).
    pub codes: u128,
}

/// Method 2 boundary: enumerate every row space of GF(q)^m once (as its
/// RREF), score each against the instance, and keep the Pareto front with
/// the scoring codes as witnesses. Rank 0 is skipped — the zero code
/// decodes nothing.
pub fn method2_boundary(inst: &Instance, budget: &Budget) -> Result<Method2Outcome, Error> {
    inst.validate()?;
    let field = inst.field();
    let m = inst.messages();
    let required = count_rref(field.order(), m, 1..=m);
    budget.admit(required)?;

    let sides: Vec<BTreeSet<usize>> = (0..inst.receivers())
        .map(|i| inst.side_info(i).expect("receiver index in range"))
        .collect();

    let front = rref_blocks(field, m, 1..=m)
        .into_par_iter()
        .fold(Front::default, |mut front, block| {
            let rank = block.rank();
            for code in block.iter() {
                if let Some((s, _)) = score_code(&code, inst, &sides) {
                    front.insert(Point::with_witness(
                        rank,
                        s,
                        Witness::Code(code.nonzero_rows()),
                    ));
                }
            }
            front
        })
        .reduce(Front::default, |a, b| a.merge(&b));
    Ok(Method2Outcome { front, codes: required })
}

/// Satisfaction and decoding of a code, or `None` if some receiver decodes
/// nothing. Shape-checked by the caller; early-exits on the first
/// unsatisfied receiver.
fn score_code(
    code: &Matrix,
    inst: &Instance,
    sides: &[BTreeSet<usize>],
) -> Option<(Rational, Vec<usize>)> {
    let mut s = Rational::zero();
    let mut decoding = Vec::with_capacity(sides.len());
    for (i, side) in sides.iter().enumerate() {
        let decodable = decodable_inner(code, side);
        let (j, rank) = best_pick(inst, i, &decodable)?;
        decoding.push(j);
        s += rank;
    }
    Some((s, decoding))
}

// ---- reference constructions ----

/// A code paired with the decoding choice it supports.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RateCapCode {
    pub label: &'static str,
    pub code: Matrix,
    pub decoding: Vec<usize>,
}

/// The three textbook codes that bracket the trade-off for a given decoding
/// choice, each audited before being returned:
///
/// * `uncoded`: one unit row per receiver — length n, any satisfaction
///   achievable at all is achievable here;
/// * `identity`: send everything — length m, every receiver decodes its
///   favourite;
/// * `mds` (only when q >= m): a Vandermonde code of length m minus the
///   smallest side-information set, from which every receiver decodes
///   everything it misses.
pub fn ratecap_codes(inst: &Instance, decoding: &[usize]) -> Result<Vec<RateCapCode>, Error> {
    satisfaction(decoding, inst)?;
    let field = inst.field();
    let (n, m) = (inst.receivers(), inst.messages());

    let mut uncoded = Matrix::zeros(field, n, m);
    for (i, &j) in decoding.iter().enumerate() {
        uncoded.set(i, j, 1);
    }
    let mut out = vec![RateCapCode { label: "uncoded", code: uncoded, decoding: decoding.to_vec() }];

    out.push(RateCapCode {
        label: "identity",
        code: Matrix::identity(field, m),
        decoding: decoding.to_vec(),
    });

    if field.order() >= m as u64 {
        let k = m - inst.min_side_info();
        out.push(RateCapCode {
            label: "mds",
            code: Matrix::vandermonde(field, k, m)?,
            decoding: decoding.to_vec(),
        });
    }

    for entry in &out {
        for (i, &j) in entry.decoding.iter().enumerate() {
            if !decodable_messages(&entry.code, inst, i)?.contains(&j) {
                return Err(Error::Audit(format!(
                    "{} code fails to deliver message {} to receiver {}",
                    entry.label,
                    j + 1,
                    i + 1
                )));
            }
        }
    }
    Ok(out)
}

// ---- code JSON ----

/// Parses `{"q": 2, "A": [[1,0,1],[0,1,0]]}` into an encoding matrix.
/// Entries are bare integers in `0..q`. `A: []` is the empty (0 x 0) code.
pub fn code_from_json_str(text: &str) -> Result<Matrix, Error> {
    let value: serde_json::Value =
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
        .get("A")
        .ok_or_else(|| Error::Parse("missing field \"A\"".into()))?
        .as_array()
        .ok_or_else(|| Error::Parse("\"A\" must be an array of rows".into()))?;
    let mut parsed: Vec<Vec<u64>> = Vec::with_capacity(rows.len());
    for (r, row) in rows.iter().enumerate() {
        let row = row
            .as_array()
            .ok_or_else(|| Error::Parse(format!("row {} must be an array", r + 1)))?;
        let mut out = Vec::with_capacity(row.len());
        for (c, cell) in row.iter().enumerate() {
            let v = cell.as_u64().ok_or_else(|| {
                Error::Parse(format!("row {}, entry {}: not an integer in 0..q", r + 1, c + 1))
            })?;
            out.push(v);
        }
        parsed.push(out);
    }
    Matrix::from_rows(field, &parsed)
}

pub fn code_to_json_string(code: &Matrix) -> String {
    let rows: Vec<String> = (0..code.rows())
        .map(|r| {
            let cells: Vec<String> = code.row(r).iter().map(u64::to_string).collect();
            format!("[{}]", cells.join(","))
        })
        .collect();
    format!("{{\"q\":{},\"A\":[{}]}}", code.field().order(), rows.join(","))
}

// ---- boundary CSV ----

/// One row of a boundary CSV file: exact coordinates plus a witness — the
/// row-major entries of an RREF code (kind "rref") or a 1-based,
/// comma-separated decoding choice (kind "dec"). Witness-free rows carry
/// empty kind and payload.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundaryRow {
    pub ell: usize,
    pub s: Rational,
    pub witness_kind: String,
    pub witness: String,
}

const BOUNDARY_HEADER: [&str; 5] = ["ell", "s_num", "s_den", "witness_kind", "witness"];

pub fn boundary_rows(front: &Front) -> Vec<BoundaryRow> {
    front
        .points()
        .iter()
        .map(|p| {
            let (kind, payload) = match p.witnesses.first() {
                None => (String::new(), String::new()),
                Some(Witness::Code(m)) => {
                    let digits: Vec<String> = m.entries().iter().map(u64::to_string).collect();
                    let joined = if m.field().order() <= 10 {
                        digits.join("")
                    } else {
                        digits.join(".")
                    };
                    ("rref".into(), joined)
                }
                Some(Witness::Decoding(choice)) => {
                    let parts: Vec<String> = choice.iter().map(|j| (j + 1).to_string()).collect();
                    ("dec".into(), parts.join(","))
                }
            };
            BoundaryRow { ell: p.ell, s: p.s.clone(), witness_kind: kind, witness: payload }
        })
        .collect()
}

pub fn write_boundary_csv(rows: &[BoundaryRow]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(BOUNDARY_HEADER).expect("write to Vec cannot fail");
    for row in rows {
        w.write_record([
            row.ell.to_string(),
            row.s.numer().to_string(),
            row.s.denom().to_string(),
            row.witness_kind.clone(),
            row.witness.clone(),
        ])
        .expect("write to Vec cannot fail");
    }
    String::from_utf8(w.into_inner().expect("no partial flush")).expect("CSV output is UTF-8")
}

pub fn parse_boundary_csv(text: &str) -> Result<Vec<BoundaryRow>, Error> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .from_reader(text.as_bytes());
    check_header(&mut reader, &BOUNDARY_HEADER)?;
    let mut rows = Vec::new();
    for (line, record) in reader.records().enumerate() {
        let line = line + 2;
        let record = record.map_err(|e| Error::Parse(format!("row {line}: {e}")))?;
        let row = BoundaryRow {
            ell: parse_usize(&record[0], line)?,
            s: parse_fraction(&record[1], &record[2], line)?,
            witness_kind: record[3].to_string(),
            witness: record[4].to_string(),
        };
        validate_witness_fields(&row, line)?;
        rows.push(row);
    }
    Ok(rows)
}

fn validate_witness_fields(row: &BoundaryRow, line: usize) -> Result<(), Error> {
    match row.witness_kind.as_str() {
        "" => {
            if !row.witness.is_empty() {
                return Err(Error::Parse(format!("row {line}: witness without a kind")));
            }
        }
        "rref" => {
            let ok = !row.witness.is_empty()
                && row.witness.bytes().all(|b| b.is_ascii_digit() || b == b'.');
            if !ok {
                return Err(Error::Parse(format!(
                    "row {line}: rref witness must be matrix entries, got {:?}",
                    row.witness
                )));
            }
        }
        "dec" => {
            let ok = !row.witness.is_empty()
                && row
                    .witness
                    .split(',')
                    .all(|part| part.parse::<u64>().is_ok_and(|v| v >= 1));
            if !ok {
                return Err(Error::Parse(format!(
                    "row {line}: dec witness must be comma-separated 1-based indices, got {:?}",
                    row.witness
                )));
            }
        }
        other => {
            return Err(Error::Parse(format!("row {line}: unknown witness kind {other:?}")));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::{gen_uniform, rat_int, Instance, Rank};
    use crate::testkit::{gf, two_receiver_instance};
    use rand::{RngExt, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn code(q: u64, rows: &[Vec<u64>]) -> Matrix {
        Matrix::from_rows(gf(q), rows).unwrap()
    }

    #[test]
    fn decodable_sets_on_the_reference_instance() {
        let inst = two_receiver_instance();
        // sending X3 alone satisfies both receivers
        let e3 = code(2, &[vec![0, 0, 1, 0, 0]]);
        assert_eq!(decodable_messages(&e3, &inst, 0).unwrap(), BTreeSet::from([2]));
        assert_eq!(decodable_messages(&e3, &inst, 1).unwrap(), BTreeSet::from([2]));
        // X1 + X2: receiver 0 holds X2 and reads X1; receiver 1 holds X1
        // and reads X2
        let mixed = code(2, &[vec![1, 1, 0, 0, 0]]);
        assert_eq!(decodable_messages(&mixed, &inst, 0).unwrap(), BTreeSet::from([0]));
        assert_eq!(decodable_messages(&mixed, &inst, 1).unwrap(), BTreeSet::from([1]));
        // X2 + X4 involves only messages receiver 0 already holds
        let held = code(2, &[vec![0, 1, 0, 1, 0]]);
        assert!(decodable_messages(&held, &inst, 0).unwrap().is_empty());
        // the identity code delivers everything wanted
        let id = Matrix::identity(gf(2), 5);
        assert_eq!(decodable_messages(&id, &inst, 0).unwrap(), BTreeSet::from([0, 2, 4]));
        assert_eq!(decodable_messages(&id, &inst, 1).unwrap(), BTreeSet::from([1, 2, 3]));
        // shape mismatches are rejected
        assert!(decodable_messages(&code(2, &[vec![1, 0]]), &inst, 0).is_err());
        assert!(decodable_messages(&code(3, &[vec![0; 5]]), &inst, 0).is_err());
    }

    #[test]
    fn report_picks_rank_minimal_messages() {
        let inst = two_receiver_instance();
        let report = decodability_report(&Matrix::identity(gf(2), 5), &inst).unwrap();
        assert!(report.all_satisfied());
        assert_eq!(report.receivers[0].best, Some((2, rat_int(1))));
        // receiver 1 ranks X2 and X4 both at 1; the tie goes to X2
        assert_eq!(report.receivers[1].best, Some((1, rat_int(1))));
    }

    #[test]
    fn code_evaluation() {
        let inst = two_receiver_instance();
        let e3 = code(2, &[vec![0, 0, 1, 0, 0]]);
        let eval = evaluate_code(&e3, &inst, LengthMode::Rank).unwrap().unwrap();
        assert_eq!((eval.ell, eval.s.clone(), eval.decoding.clone()), (1, rat_int(3), vec![2, 2]));
        // a code only receiver 1 can use satisfies nobody overall
        let e2 = code(2, &[vec![0, 1, 0, 0, 0]]);
        assert_eq!(evaluate_code(&e2, &inst, LengthMode::Rank).unwrap(), None);
        // length by rows counts redundancy, length by rank does not
        let padded = e3.padded(2);
        let eval = evaluate_code(&padded, &inst, LengthMode::Rank).unwrap().unwrap();
        assert_eq!(eval.ell, 1);
        let eval = evaluate_code(&padded, &inst, LengthMode::Rows).unwrap().unwrap();
        assert_eq!(eval.ell, 3);
    }

    #[test]
    fn satisfaction_of_decoding_choices() {
        let inst = two_receiver_instance();
        assert_eq!(satisfaction(&[2, 2], &inst).unwrap(), rat_int(3));
        assert_eq!(satisfaction(&[2, 1], &inst).unwrap(), rat_int(2));
        assert_eq!(satisfaction(&[0, 2], &inst).unwrap(), rat_int(4));
        assert!(matches!(
            satisfaction(&[1, 1], &inst),
            Err(Error::DecodingIntoSideInfo { receiver: 0, message: 1 })
        ));
        assert!(matches!(satisfaction(&[5, 1], &inst), Err(Error::MessageOutOfRange { .. })));
        assert!(satisfaction(&[2], &inst).is_err());
    }

    #[test]
    fn decoding_choice_enumeration() {
        let inst = two_receiver_instance();
        assert_eq!(decoding_choice_count(&inst), 9);
        let all: Vec<Vec<usize>> = decoding_choices(&inst).collect();
        assert_eq!(all.len(), 9);
        // receiver 0 spins fastest
        assert_eq!(all[0], vec![0, 1]);
        assert_eq!(all[1], vec![2, 1]);
        assert_eq!(all[3], vec![0, 2]);
        let distinct: BTreeSet<Vec<usize>> = all.iter().cloned().collect();
        assert_eq!(distinct.len(), 9);
        // the overall satisfactions these choices can reach
        let values: BTreeSet<Rational> =
            all.iter().map(|d| satisfaction(d, &inst).unwrap()).collect();
        assert_eq!(values, BTreeSet::from([rat_int(2), rat_int(3), rat_int(4)]));
    }

    #[test]
    fn minrank_on_the_reference_instance() {
        let inst = two_receiver_instance();
        let budget = Budget::default();
        // both receivers on X3: a single transmission fits
        let out = minrank(&inst, &[2, 2], &budget).unwrap();
        assert_eq!(out.rank, 1);
        assert_eq!(out.witness.rows(), 1);
        // receiver 0 on X3, receiver 1 on X2: provably two transmissions
        let out = minrank(&inst, &[2, 1], &budget).unwrap();
        assert_eq!(out.rank, 2);
        // receiver 0 on X1, receiver 1 on X3
        assert_eq!(minrank(&inst, &[0, 2], &budget).unwrap().rank, 2);
        assert!(minrank(&inst, &[1, 1], &budget).is_err());
    }

    #[test]
    fn minrank_witness_supports_its_decoding() {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        let budget = Budget::default();
        for trial in 0..15 {
            let q = [2u64, 3][trial % 2];
            let m = rng.random_range(2..=4);
            let n = rng.random_range(1..=3);
            let h = rng.random_range(0..m.min(3) - 1);
            let inst = gen_uniform(gf(q), m, n, h, trial as u64).unwrap();
            for decoding in decoding_choices(&inst) {
                let out = minrank(&inst, &decoding, &budget).unwrap();
                assert_eq!(out.witness.rows(), out.rank);
                for (i, &j) in decoding.iter().enumerate() {
                    assert!(
                        decodable_messages(&out.witness, &inst, i).unwrap().contains(&j),
                        "witness must deliver message {} to receiver {}",
                        j + 1,
                        i + 1
                    );
                }
            }
        }
    }

    #[test]
    fn minrank_respects_budget() {
        let inst = two_receiver_instance();
        // sum |H_i| = 4 over GF(2): 16 fitting matrices
        let err = minrank(&inst, &[2, 2], &Budget::new(15)).unwrap_err();
        match err {
            Error::BudgetExceeded { required, budget } => {
                assert_eq!((required, budget), (16, 15));
            }
            other => panic!("expected budget refusal, got {other}"),
        }
        assert!(minrank(&inst, &[2, 2], &Budget::new(16)).is_ok());
    }

    #[test]
    fn method1_on_the_reference_instance() {
        let inst = two_receiver_instance();
        let out = method1_boundary(&inst, &Budget::default()).unwrap();
        assert_eq!(out.front.coords(), vec![(1, rat_int(3)), (2, rat_int(2))]);
        assert_eq!(out.decoding_choices, 9);
        assert_eq!(out.fits_per_choice, 16);
        // five decoding choices reach satisfaction 3 with a single
        // transmission; for instance [0, 1] via the code row X1 + X2
        let short: Vec<Witness> = [[0, 1], [0, 3], [2, 2], [4, 1], [4, 3]]
            .into_iter()
            .map(|d| Witness::Decoding(d.to_vec()))
            .collect();
        assert_eq!(out.front.points()[0].witnesses, short);
        // every witness reproduces its point's satisfaction
        for p in out.front.points() {
            for w in &p.witnesses {
                let Witness::Decoding(d) = w else { panic!("method 1 witnesses are decodings") };
                assert_eq!(satisfaction(d, &inst).unwrap(), p.s);
            }
        }
    }

    #[test]
    fn method2_on_the_reference_instance() {
        let inst = two_receiver_instance();
        let out = method2_boundary(&inst, &Budget::default()).unwrap();
        assert_eq!(out.front.coords(), vec![(1, rat_int(3)), (2, rat_int(2))]);
        // all nonzero row spaces of GF(2)^5
        assert_eq!(out.codes, 373);
        // each witness is a code that scores exactly its point
        for p in out.front.points() {
            for w in &p.witnesses {
                let Witness::Code(c) = w else { panic!("method 2 witnesses are codes") };
                let eval = evaluate_code(c, &inst, LengthMode::Rank).unwrap().unwrap();
                assert_eq!((eval.ell, eval.s), (p.ell, p.s.clone()));
            }
        }
    }

    #[test]
    fn methods_agree_on_random_small_instances() {
        let budget = Budget::default();
        for trial in 0..10u64 {
            let q = [2u64, 3][(trial % 2) as usize];
            let m = 2 + (trial % 3) as usize;
            let n = 1 + (trial % 3) as usize;
            let h = (trial % 2) as usize;
            let inst = gen_uniform(gf(q), m, n, h.min(m - 1), trial).unwrap();
            let m1 = method1_boundary(&inst, &budget).unwrap();
            let m2 = method2_boundary(&inst, &budget).unwrap();
            assert_eq!(
                m1.front.coords(),
                m2.front.coords(),
                "boundary mismatch on trial {trial}: q={q} m={m} n={n}"
            );
        }
    }

    #[test]
    fn method2_budget_refusal_reports_exact_count() {
        let inst = two_receiver_instance();
        let err = method2_boundary(&inst, &Budget::new(100)).unwrap_err();
        match err {
            Error::BudgetExceeded { required, budget } => {
                assert_eq!((required, budget), (373, 100));
            }
            other => panic!("expected budget refusal, got {other}"),
        }
    }

    #[test]
    fn scoring_is_invariant_under_row_space_preserving_changes() {
        let inst = two_receiver_instance();
        let a = code(2, &[vec![0, 0, 1, 0, 0], vec![0, 1, 0, 1, 0]]);
        let base = evaluate_code(&a, &inst, LengthMode::Rank).unwrap().unwrap();
        // add the sum of the two rows as a redundant third row
        let stacked = code(2, &[vec![0, 0, 1, 0, 0], vec![0, 1, 0, 1, 0], vec![0, 1, 1, 1, 0]]);
        let eval = evaluate_code(&stacked, &inst, LengthMode::Rank).unwrap().unwrap();
        assert_eq!((eval.ell, eval.s, eval.decoding), (base.ell, base.s.clone(), base.decoding.clone()));
        let padded = a.padded(2);
        let eval = evaluate_code(&padded, &inst, LengthMode::Rank).unwrap().unwrap();
        assert_eq!((eval.ell, eval.s, eval.decoding), (base.ell, base.s, base.decoding));
    }

    #[test]
    fn ratecap_constructions() {
        let inst = two_receiver_instance();
        let codes = ratecap_codes(&inst, &[2, 1]).unwrap();
        // GF(2) < m, so no MDS entry
        assert_eq!(codes.len(), 2);
        assert_eq!(codes[0].label, "uncoded");
        assert_eq!(codes[0].code, code(2, &[vec![0, 0, 1, 0, 0], vec![0, 1, 0, 0, 0]]));
        assert_eq!(codes[1].label, "identity");
        assert_eq!(codes[1].code, Matrix::identity(gf(2), 5));
        for entry in &codes {
            // the decoding the codes were built for scores as promised
            assert_eq!(satisfaction(&entry.decoding, &inst).unwrap(), rat_int(2));
        }
        assert!(ratecap_codes(&inst, &[1, 1]).is_err());
    }

    #[test]
    fn mds_construction_over_a_large_field() {
        // m = 4 messages over GF(7), three receivers each holding two
        let inst = Instance::from_rows(
            gf(7),
            vec![
                vec![Rank::Infinite, Rank::Infinite, Rank::int(1), Rank::int(2)],
                vec![Rank::int(2), Rank::Infinite, Rank::Infinite, Rank::int(1)],
                vec![Rank::int(1), Rank::int(2), Rank::Infinite, Rank::Infinite],
            ],
        )
        .unwrap();
        let codes = ratecap_codes(&inst, &[2, 3, 0]).unwrap();
        let mds = codes.iter().find(|c| c.label == "mds").expect("q >= m");
        // length m - min |H_i| = 4 - 2 = 2
        assert_eq!(mds.code.rows(), 2);
        // every receiver decodes everything outside its side information
        for i in 0..3 {
            let wanted: BTreeSet<usize> = inst.wanted(i).map(|(j, _)| j).collect();
            assert_eq!(decodable_messages(&mds.code, &inst, i).unwrap(), wanted);
        }
    }

    #[test]
    fn code_json_round_trip() {
        let a = code(2, &[vec![1, 0, 1, 0, 1], vec![0, 1, 0, 1, 0]]);
        let text = code_to_json_string(&a);
        assert_eq!(text, r#"{"q":2,"A":[[1,0,1,0,1],[0,1,0,1,0]]}"#);
        assert_eq!(code_from_json_str(&text).unwrap(), a);
        let empty = code_from_json_str(r#"{"q":5,"A":[]}"#).unwrap();
        assert_eq!((empty.rows(), empty.cols()), (0, 0));
    }

    #[test]
    fn code_json_rejects_malformed_input() {
        let cases = [
            "",
            "[]",
            r#"{"A":[[1]]}"#,
            r#"{"q":2}"#,
            r#"{"q":6,"A":[[1]]}"#,
            r#"{"q":2,"A":[[2]]}"#,
            r#"{"q":2,"A":[[1],[0,1]]}"#,
            r#"{"q":2,"A":[[1.5]]}"#,
            r#"{"q":2,"A":[[-1]]}"#,
            r#"{"q":2,"A":[["1"]]}"#,
        ];
        for text in cases {
            assert!(code_from_json_str(text).is_err(), "{text:?} should fail");
        }
    }

    #[test]
    fn boundary_csv_round_trip() {
        let inst = two_receiver_instance();
        let m2 = method2_boundary(&inst, &Budget::default()).unwrap();
        let rows = boundary_rows(&m2.front);
        let text = write_boundary_csv(&rows);
        assert!(text.starts_with("ell,s_num,s_den,witness_kind,witness\n"));
        assert_eq!(parse_boundary_csv(&text).unwrap(), rows);

        let m1 = method1_boundary(&inst, &Budget::default()).unwrap();
        let rows = boundary_rows(&m1.front);
        // decoding witnesses carry 1-based indices
        assert_eq!(rows[0].witness_kind, "dec");
        assert_eq!(rows[0].witness, "1,2");
        let text = write_boundary_csv(&rows);
        assert_eq!(parse_boundary_csv(&text).unwrap(), rows);
    }

    #[test]
    fn boundary_csv_rejects_malformed_input() {
        let cases = [
            "",
            "ell,s_num,s_den,witness_id\n1,2,3,",
            "ell,s_num,s_den,witness_kind,witness\nx,1,1,,",
            "ell,s_num,s_den,witness_kind,witness\n1,1,0,,",
            "ell,s_num,s_den,witness_kind,witness\n1,1,1,wat,101",
            "ell,s_num,s_den,witness_kind,witness\n1,1,1,,101",
            "ell,s_num,s_den,witness_kind,witness\n1,1,1,rref,",
            "ell,s_num,s_den,witness_kind,witness\n1,1,1,rref,1x1",
            "ell,s_num,s_den,witness_kind,witness\n1,1,1,dec,\"3,0\"",
            "ell,s_num,s_den,witness_kind,witness\n1,1,1,dec,\"3,,2\"",
        ];
        for text in cases {
            assert!(parse_boundary_csv(text).is_err(), "{text:?} should fail");
        }
    }
}

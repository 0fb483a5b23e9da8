//! The randomized greedy cover heuristic.
//!
//! The algorithm works on the demand graph: receivers on one side, messages
//! on the other, an edge wherever a receiver wants a message, weighted by
//! rank. It builds the code one row at a time. Each row is the sum of a
//! message subset S, grown greedily: starting from the empty set, it keeps
//! adding the message that most improves a fitness score, stopping at the
//! first non-improving step. A receiver is *covered* by S if exactly one of
//! its live edges lands in S — it can then cancel the rest of the row with
//! its side information and decode that message — and it *counts* only if
//! that message's rank is within the receiver's threshold eta. The fitness
//! balances how many receivers count against how much they like what they
//! get:
//!
//! ```text
//! f(S) = alpha * |W1(S)| - (1 - alpha) * mean rank over W1(S)
//! ```
//!
//! with f(S) = -(eta_max + 1), a sentinel below every reachable score, when
//! W1(S) is empty. Committing a row satisfies the counted receivers, prunes
//! all their edges, and the outer loop repeats until everyone is satisfied
//! — at most n rows, each satisfying at least one receiver.
//!
//! Ties in the growth step are broken uniformly at random; the rest is
//! deterministic in the seed. Exactly one random draw happens per growth
//! step (including the final, rejected one), which pins the whole run to
//! the seed and makes traces of different variants comparable draw by draw.
//!
//! [`grcov`] is the preference-blind specialization (alpha = 1, thresholds
//! at each row's worst rank). It is implemented separately over integer
//! counts — no rationals anywhere — yet must reproduce [`prgrcov`] runs
//! under those parameters *exactly*, random draws included. Keeping the two
//! implementations independent turns that equality into a real check on
//! both, and the test suite enforces it.

use std::collections::BTreeSet;

use num::{One, Signed, Zero};
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Error;
use crate::fq::{rref, Matrix};
use crate::instance::{
    format_rational, parse_rational, BipartiteView, Instance, Rational,
};
use crate::oracle::{decodability_report, satisfaction};
use crate::pareto::{check_header, parse_fraction, parse_usize};

/// Tuning knobs of a greedy run. `alpha` in [0, 1] trades coverage (1)
/// against preference quality (0); `eta` is a positive per-receiver rank
/// threshold — a receiver only counts toward a row's fitness if the message
/// it would decode ranks within its threshold.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GreedyParams {
    pub alpha: Rational,
    pub eta: Vec<Rational>,
    pub seed: u64,
}

/// Ways to spell the threshold vector before an instance is known.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EtaSpec {
    /// One threshold for every receiver.
    Scalar(Rational),
    /// Explicit per-receiver thresholds.
    PerReceiver(Vec<Rational>),
    /// Each receiver's favourite rank: only first choices count.
    Min,
    /// Each receiver's worst rank: every message counts.
    RowMax,
}

impl EtaSpec {
    pub fn resolve(&self, inst: &Instance) -> Result<Vec<Rational>, Error> {
        inst.validate()?;
        let n = inst.receivers();
        let eta = match self {
            EtaSpec::Scalar(v) => vec![v.clone(); n],
            EtaSpec::PerReceiver(v) => {
                if v.len() != n {
                    return Err(Error::Params(format!(
                        "{} thresholds for {} receivers",
                        v.len(),
                        n
                    )));
                }
                v.clone()
            }
            EtaSpec::Min => (0..n)
                .map(|i| inst.best_rank(i).expect("validated row has a finite rank").clone())
                .collect(),
            EtaSpec::RowMax => (0..n)
                .map(|i| inst.worst_rank(i).expect("validated row has a finite rank").clone())
                .collect(),
        };
        if let Some(bad) = eta.iter().find(|v| !v.is_positive()) {
            return Err(Error::Params(format!(
                "thresholds must be positive, got {}",
                format_rational(bad)
            )));
        }
        Ok(eta)
    }

    /// Parses "min", "rowmax", a rational scalar, or a comma-separated list.
    pub fn parse(text: &str) -> Result<EtaSpec, Error> {
        match text {
            "min" => Ok(EtaSpec::Min),
            "rowmax" => Ok(EtaSpec::RowMax),
            _ if text.contains(',') => {
                let values: Result<Vec<Rational>, Error> =
                    text.split(',').map(parse_rational).collect();
                Ok(EtaSpec::PerReceiver(values?))
            }
            _ => Ok(EtaSpec::Scalar(parse_rational(text)?)),
        }
    }
}

impl std::fmt::Display for EtaSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            EtaSpec::Scalar(v) => write!(f, "{}", format_rational(v)),
            EtaSpec::PerReceiver(v) => {
                let parts: Vec<String> = v.iter().map(format_rational).collect();
                write!(f, "{}", parts.join(","))
            }
            EtaSpec::Min => write!(f, "min"),
            EtaSpec::RowMax => write!(f, "rowmax"),
        }
    }
}

/// A receiver satisfied by a committed row: it decodes `message` at rank
/// `rank`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Satisfied {
    pub receiver: usize,
    pub message: usize,
    pub rank: Rational,
}

/// One committed row of a greedy run: the message subset, who it satisfied,
/// and the fitness it scored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubcodeSelection {
    pub messages: BTreeSet<usize>,
    pub satisfied: Vec<Satisfied>,
    pub fitness: Rational,
}

/// A finished greedy run. `ell == code.rows() == subcodes.len()` and
/// `s == satisfaction(decoding)`; `iterations` counts growth steps across
/// all rows — one random draw each — including each row's final, rejected
/// step.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GreedyOutcome {
    pub code: Matrix,
    pub decoding: Vec<usize>,
    pub ell: usize,
    pub s: Rational,
    pub subcodes: Vec<SubcodeSelection>,
    pub iterations: usize,
}

/// The demand graph restricted to not-yet-satisfied receivers. Satisfying a
/// receiver prunes *all* of its edges; a live receiver keeps all of its
/// original ones.
#[derive(Clone, Debug)]
pub struct LiveEdges {
    n: usize,
    m: usize,
    edges: Vec<Vec<(usize, Rational)>>,
}

impl LiveEdges {
    pub fn new(view: &BipartiteView) -> LiveEdges {
        let mut edges = vec![Vec::new(); view.n];
        for e in &view.edges {
            edges[e.receiver].push((e.message, e.weight.clone()));
        }
        LiveEdges { n: view.n, m: view.m, edges }
    }

    pub fn prune_receiver(&mut self, receiver: usize) {
        self.edges[receiver].clear();
    }

    pub fn receiver(&self, receiver: usize) -> &[(usize, Rational)] {
        &self.edges[receiver]
    }

    pub fn receivers(&self) -> usize {
        self.n
    }

    pub fn messages(&self) -> usize {
        self.m
    }
}

/// Receivers covered-and-counting for the selection S: exactly one live
/// edge into S, with rank within the receiver's threshold. These are the
/// receivers a row summing S would satisfy.
pub fn satisfied_set(live: &LiveEdges, selection: &BTreeSet<usize>, eta: &[Rational]) -> Vec<Satisfied> {
    let mut out = Vec::new();
    for u in 0..live.n {
        let mut hits = live.receiver(u).iter().filter(|(j, _)| selection.contains(j));
        if let (Some((j, w)), None) = (hits.next(), hits.next()) {
            if w <= &eta[u] {
                out.push(Satisfied { receiver: u, message: *j, rank: w.clone() });
            }
        }
    }
    out
}

fn sentinel(eta: &[Rational]) -> Rational {
    let eta_max = eta.iter().max().expect("at least one receiver");
    -(eta_max.clone() + Rational::one())
}

/// The greedy growth score of a selection, straight from its definition:
/// `alpha * |W1| - (1 - alpha) * (sum of W1 ranks) / |W1|`, with the
/// below-everything sentinel `-(eta_max + 1)` when W1 is empty.
pub fn fitness(
    live: &LiveEdges,
    selection: &BTreeSet<usize>,
    alpha: &Rational,
    eta: &[Rational],
) -> Rational {
    let satisfied = satisfied_set(live, selection, eta);
    if satisfied.is_empty() {
        return sentinel(eta);
    }
    let k = Rational::from_integer(satisfied.len().into());
    let total: Rational = satisfied.iter().map(|s| s.rank.clone()).sum();
    alpha * &k - (Rational::one() - alpha) * total / k
}

fn check_params(inst: &Instance, params: &GreedyParams) -> Result<(), Error> {
    if params.alpha.is_negative() || params.alpha > Rational::one() {
        return Err(Error::Params(format!(
            "alpha must lie in [0, 1], got {}",
            format_rational(&params.alpha)
        )));
    }
    if params.eta.len() != inst.receivers() {
        return Err(Error::Params(format!(
            "{} thresholds for {} receivers",
            params.eta.len(),
            inst.receivers()
        )));
    }
    if let Some(bad) = params.eta.iter().find(|v| !v.is_positive()) {
        return Err(Error::Params(format!(
            "thresholds must be positive, got {}",
            format_rational(bad)
        )));
    }
    // every receiver needs some edge it is allowed to count
    let starved: Vec<usize> = (0..inst.receivers())
        .filter(|&u| !inst.wanted(u).any(|(_, w)| w <= &params.eta[u]))
        .collect();
    if !starved.is_empty() {
        return Err(Error::InfeasibleEta(starved));
    }
    Ok(())
}

/// The preference-aware randomized greedy cover. Deterministic in
/// `params.seed`; rejects infeasible thresholds up front.
pub fn prgrcov(inst: &Instance, params: &GreedyParams) -> Result<GreedyOutcome, Error> {
    inst.validate()?;
    check_params(inst, params)?;

    let (n, m) = (inst.receivers(), inst.messages());
    let one = Rational::one();
    let fallback = sentinel(&params.eta);
    // receivers adjacent to each message, with edge weights
    let mut adj: Vec<Vec<(usize, Rational)>> = vec![Vec::new(); m];
    for u in 0..n {
        for (j, w) in inst.wanted(u) {
            adj[j].push((u, w.clone()));
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let mut alive = vec![true; n];
    let mut decoding = vec![usize::MAX; n];
    let mut rows: Vec<Vec<u64>> = Vec::new();
    let mut subcodes = Vec::new();
    let mut s_total = Rational::zero();
    let mut iterations = 0usize;

    while alive.iter().any(|&a| a) {
        // grow one selection from scratch
        let mut selection: BTreeSet<usize> = BTreeSet::new();
        // degree of each live receiver into the selection, and while that
        // degree is exactly 1, the edge it came from
        let mut degree = vec![0usize; n];
        let mut sole: Vec<Option<(usize, Rational)>> = vec![None; n];
        let mut counting = vec![false; n];
        let mut w1 = 0usize;
        let mut rank_sum = Rational::zero();
        let mut f_cur = fallback.clone();

        loop {
            iterations += 1;
            let candidates: Vec<usize> = (0..m).filter(|j| !selection.contains(j)).collect();
            if candidates.is_empty() {
                break;
            }
            // score every candidate by the delta its message induces
            let mut best_f: Option<Rational> = None;
            let mut ties: Vec<usize> = Vec::new();
            for &j in &candidates {
                let mut w1_new = w1;
                let mut sum_new = rank_sum.clone();
                for (u, w) in &adj[j] {
                    if !alive[*u] {
                        continue;
                    }
                    match degree[*u] {
                        0 => {
                            if w <= &params.eta[*u] {
                                w1_new += 1;
                                sum_new += w;
                            }
                        }
                        1 => {
                            if counting[*u] {
                                w1_new -= 1;
                                sum_new -= &sole[*u].as_ref().expect("degree 1 keeps its edge").1;
                            }
                        }
                        _ => {}
                    }
                }
                let f = if w1_new == 0 {
                    fallback.clone()
                } else {
                    let k = Rational::from_integer(w1_new.into());
                    &params.alpha * &k - (&one - &params.alpha) * sum_new / k
                };
                match &best_f {
                    Some(b) if &f < b => {}
                    Some(b) if &f == b => ties.push(j),
                    _ => {
                        best_f = Some(f);
                        ties = vec![j];
                    }
                }
            }
            let pick = ties[rng.random_range(0..ties.len())];
            let f_pick = best_f.expect("candidates were scored");
            if f_pick <= f_cur {
                break;
            }
            // commit the pick into the incremental state
            for (u, w) in &adj[pick] {
                if !alive[*u] {
                    continue;
                }
                match degree[*u] {
                    0 => {
                        degree[*u] = 1;
                        let counts = w <= &params.eta[*u];
                        sole[*u] = Some((pick, w.clone()));
                        counting[*u] = counts;
                        if counts {
                            w1 += 1;
                            rank_sum += w;
                        }
                    }
                    1 => {
                        if counting[*u] {
                            w1 -= 1;
                            rank_sum -= &sole[*u].as_ref().expect("degree 1 keeps its edge").1;
                            counting[*u] = false;
                        }
                        sole[*u] = None;
                        degree[*u] = 2;
                    }
                    d => degree[*u] = d + 1,
                }
            }
            selection.insert(pick);
            f_cur = f_pick;
        }

        // commit the selection as a row
        let satisfied: Vec<Satisfied> = (0..n)
            .filter(|&u| alive[u] && counting[u])
            .map(|u| {
                let (j, w) = sole[u].clone().expect("counting receivers have a sole edge");
                Satisfied { receiver: u, message: j, rank: w }
            })
            .collect();
        debug_assert!(
            !satisfied.is_empty(),
            "feasible thresholds guarantee progress every outer iteration"
        );
        let mut row = vec![0u64; m];
        for &j in &selection {
            row[j] = 1;
        }
        rows.push(row);
        for sat in &satisfied {
            alive[sat.receiver] = false;
            decoding[sat.receiver] = sat.message;
            s_total += &sat.rank;
        }
        subcodes.push(SubcodeSelection { messages: selection, satisfied, fitness: f_cur });
    }

    let code = Matrix::from_rows(inst.field(), &rows).expect("rows are indicator vectors");
    Ok(GreedyOutcome {
        ell: code.rows(),
        code,
        decoding,
        s: s_total,
        subcodes,
        iterations,
    })
}

/// The preference-blind greedy cover: grow by the number of covered
/// receivers alone, thresholds wide open. This is `prgrcov` at alpha = 1
/// with each receiver's threshold at its worst rank, but implemented
/// independently over plain integer counts; the two must produce identical
/// runs for the same seed, and the tests hold them to that.
pub fn grcov(inst: &Instance, seed: u64) -> Result<GreedyOutcome, Error> {
    inst.validate()?;

    let (n, m) = (inst.receivers(), inst.messages());
    let mut adj: Vec<Vec<(usize, Rational)>> = vec![Vec::new(); m];
    for u in 0..n {
        for (j, w) in inst.wanted(u) {
            adj[j].push((u, w.clone()));
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut alive = vec![true; n];
    let mut decoding = vec![usize::MAX; n];
    let mut rows: Vec<Vec<u64>> = Vec::new();
    let mut subcodes = Vec::new();
    let mut s_total = Rational::zero();
    let mut iterations = 0usize;

    while alive.iter().any(|&a| a) {
        let mut selection: BTreeSet<usize> = BTreeSet::new();
        let mut degree = vec![0usize; n];
        let mut sole: Vec<Option<(usize, Rational)>> = vec![None; n];
        let mut covered = 0i64;
        // score of the empty selection: below any reachable count
        let mut f_cur = -1i64;

        loop {
            iterations += 1;
            let candidates: Vec<usize> = (0..m).filter(|j| !selection.contains(j)).collect();
            if candidates.is_empty() {
                break;
            }
            let mut best_f = i64::MIN;
            let mut ties: Vec<usize> = Vec::new();
            for &j in &candidates {
                let mut covered_new = covered;
                for (u, _) in &adj[j] {
                    if !alive[*u] {
                        continue;
                    }
                    match degree[*u] {
                        0 => covered_new += 1,
                        1 => covered_new -= 1,
                        _ => {}
                    }
                }
                let f = if covered_new == 0 { -1 } else { covered_new };
                if f > best_f {
                    best_f = f;
                    ties = vec![j];
                } else if f == best_f {
                    ties.push(j);
                }
            }
            let pick = ties[rng.random_range(0..ties.len())];
            if best_f <= f_cur {
                break;
            }
            for (u, w) in &adj[pick] {
                if !alive[*u] {
                    continue;
                }
                match degree[*u] {
                    0 => {
                        degree[*u] = 1;
                        sole[*u] = Some((pick, w.clone()));
                        covered += 1;
                    }
                    1 => {
                        sole[*u] = None;
                        degree[*u] = 2;
                        covered -= 1;
                    }
                    d => degree[*u] = d + 1,
                }
            }
            selection.insert(pick);
            f_cur = best_f;
        }

        let satisfied: Vec<Satisfied> = (0..n)
            .filter(|&u| alive[u] && degree[u] == 1)
            .map(|u| {
                let (j, w) = sole[u].clone().expect("degree 1 keeps its edge");
                Satisfied { receiver: u, message: j, rank: w }
            })
            .collect();
        debug_assert!(!satisfied.is_empty(), "a live receiver always has a singleton to cover it");
        let mut row = vec![0u64; m];
        for &j in &selection {
            row[j] = 1;
        }
        rows.push(row);
        for sat in &satisfied {
            alive[sat.receiver] = false;
            decoding[sat.receiver] = sat.message;
            s_total += &sat.rank;
        }
        subcodes.push(SubcodeSelection {
            messages: selection,
            satisfied,
            fitness: Rational::from_integer(f_cur.into()),
        });
    }

    let code = Matrix::from_rows(inst.field(), &rows).expect("rows are indicator vectors");
    Ok(GreedyOutcome {
        ell: code.rows(),
        code,
        decoding,
        s: s_total,
        subcodes,
        iterations,
    })
}

/// Gaussian-elimination cleanup of a finished run: replace the code by the
/// RREF basis of its row space and re-pick every receiver's rank-minimal
/// decodable message. The row space is unchanged, so nobody loses
/// decodability; the length can only shrink (to the rank) and the
/// satisfaction can only improve. Dropping either guarantee is a reportable
/// bug, not a silent regression.
pub fn postprocess(outcome: &GreedyOutcome, inst: &Instance) -> Result<GreedyOutcome, Error> {
    let basis = rref(&outcome.code).rref.nonzero_rows();
    let report = decodability_report(&basis, inst)?;
    let mut decoding = Vec::with_capacity(inst.receivers());
    let mut s = Rational::zero();
    for r in report.receivers {
        match r.best {
            Some((j, rank)) => {
                decoding.push(j);
                s += rank;
            }
            None => {
                return Err(Error::Audit(format!(
                    "receiver {} lost decodability under a row-space-preserving cleanup",
                    r.receiver + 1
                )))
            }
        }
    }
    if basis.rows() > outcome.ell || s > outcome.s {
        return Err(Error::Audit(
            "cleanup worsened a coordinate; the input run was inconsistent".into(),
        ));
    }
    Ok(GreedyOutcome {
        ell: basis.rows(),
        code: basis,
        decoding,
        s,
        subcodes: outcome.subcodes.clone(),
        iterations: outcome.iterations,
    })
}

/// End-to-end validity check of a run: the bookkeeping must match what the
/// code actually delivers.
pub fn audit(outcome: &GreedyOutcome, inst: &Instance) -> Result<(), Error> {
    if outcome.decoding.len() != inst.receivers() {
        return Err(Error::Audit(format!(
            "{} decoding entries for {} receivers",
            outcome.decoding.len(),
            inst.receivers()
        )));
    }
    if outcome.ell != outcome.code.rows() {
        return Err(Error::Audit(format!(
            "recorded length {} but the code has {} rows",
            outcome.ell,
            outcome.code.rows()
        )));
    }
    let report = decodability_report(&outcome.code, inst)?;
    for (i, &j) in outcome.decoding.iter().enumerate() {
        if !report.receivers[i].decodable.contains(&j) {
            return Err(Error::Audit(format!(
                "receiver {} cannot decode its assigned message {}",
                i + 1,
                j + 1
            )));
        }
    }
    let s = satisfaction(&outcome.decoding, inst)?;
    if s != outcome.s {
        return Err(Error::Audit(format!(
            "recorded satisfaction {} but the decoding scores {}",
            format_rational(&outcome.s),
            format_rational(&s)
        )));
    }
    Ok(())
}

// ---- run CSV ----

/// One line of a run log: parameters, the raw point, the cleaned-up point,
/// and the growth steps spent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunRecord {
    pub seed: u64,
    pub alpha: Rational,
    pub eta_spec: String,
    pub ell: usize,
    pub s: Rational,
    pub ell_post: usize,
    pub s_post: Rational,
    pub iters: usize,
}

const RUN_HEADER: [&str; 10] = [
    "seed",
    "alpha",
    "eta_spec",
    "ell",
    "s_num",
    "s_den",
    "ell_post",
    "s_post_num",
    "s_post_den",
    "iters",
];

pub fn write_run_csv(records: &[RunRecord]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(RUN_HEADER).expect("write to Vec cannot fail");
    for r in records {
        w.write_record([
            r.seed.to_string(),
            format_rational(&r.alpha),
            r.eta_spec.clone(),
            r.ell.to_string(),
            r.s.numer().to_string(),
            r.s.denom().to_string(),
            r.ell_post.to_string(),
            r.s_post.numer().to_string(),
            r.s_post.denom().to_string(),
            r.iters.to_string(),
        ])
        .expect("write to Vec cannot fail");
    }
    String::from_utf8(w.into_inner().expect("no partial flush")).expect("CSV output is UTF-8")
}

pub fn parse_run_csv(text: &str) -> Result<Vec<RunRecord>, Error> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .from_reader(text.as_bytes());
    check_header(&mut reader, &RUN_HEADER)?;
    let mut rows = Vec::new();
    for (line, record) in reader.records().enumerate() {
        let line = line + 2;
        let record = record.map_err(|e| Error::Parse(format!("row {line}: {e}")))?;
        let seed = record[0]
            .parse::<u64>()
            .map_err(|_| Error::Parse(format!("row {line}: bad seed {:?}", &record[0])))?;
        let alpha = parse_rational(&record[1])
            .map_err(|e| Error::Parse(format!("row {line}: {e}")))?;
        let eta_spec = record[2].to_string();
        EtaSpec::parse(&eta_spec).map_err(|e| Error::Parse(format!("row {line}: {e}")))?;
        rows.push(RunRecord {
            seed,
            alpha,
            eta_spec,
            ell: parse_usize(&record[3], line)?,
            s: parse_fraction(&record[4], &record[5], line)?,
            ell_post: parse_usize(&record[6], line)?,
            s_post: parse_fraction(&record[7], &record[8], line)?,
            iters: parse_usize(&record[9], line)?,
        });
    }
    Ok(rows)
}

/// One line of a sweep summary: exact mean coordinates of the cleaned-up
/// runs at one alpha.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AggregateRecord {
    pub alpha: Rational,
    pub runs: u64,
    pub mean_ell: Rational,
    pub mean_s: Rational,
}

const AGGREGATE_HEADER: [&str; 6] =
    ["alpha", "runs", "mean_ell_num", "mean_ell_den", "mean_s_num", "mean_s_den"];

pub fn write_aggregate_csv(records: &[AggregateRecord]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(AGGREGATE_HEADER).expect("write to Vec cannot fail");
    for r in records {
        w.write_record([
            format_rational(&r.alpha),
            r.runs.to_string(),
            r.mean_ell.numer().to_string(),
            r.mean_ell.denom().to_string(),
            r.mean_s.numer().to_string(),
            r.mean_s.denom().to_string(),
        ])
        .expect("write to Vec cannot fail");
    }
    String::from_utf8(w.into_inner().expect("no partial flush")).expect("CSV output is UTF-8")
}

pub fn parse_aggregate_csv(text: &str) -> Result<Vec<AggregateRecord>, Error> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .from_reader(text.as_bytes());
    check_header(&mut reader, &AGGREGATE_HEADER)?;
    let mut rows = Vec::new();
    for (line, record) in reader.records().enumerate() {
        let line = line + 2;
        let record = record.map_err(|e| Error::Parse(format!("row {line}: {e}")))?;
        let alpha = parse_rational(&record[0])
            .map_err(|e| Error::Parse(format!("row {line}: {e}")))?;
        let runs = record[1]
            .parse::<u64>()
            .map_err(|_| Error::Parse(format!("row {line}: bad run count {:?}", &record[1])))?;
        rows.push(AggregateRecord {
            alpha,
            runs,
            mean_ell: parse_fraction(&record[2], &record[3], line)?,
            mean_s: parse_fraction(&record[4], &record[5], line)?,
        });
    }
    Ok(rows)
}

//! Empirical asymptotic-bound checking over measured step counts.
//!
//! A bound claim is checked only on sampled input sizes: `check_bound`
//! verifies `steps <= c * g(n)` for every sample with `n >= n0`, and
//! `find_witnesses` searches bounded ranges for such a `(c, n0)` pair.
//! A verdict here is evidence over the sampled sizes, not a proof of the
//! unbounded claim; reports carry the largest `n` actually checked so
//! results can be labeled accordingly.

use std::io::{Read, Write};

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::interp::{run_program, RunStatus};
use crate::oracle::log2;
use crate::parser::parse_value;
use crate::programs::{probe_values, ProgramFamily};
use crate::value::Value;

/// The bounding functions, ordered from slowest- to fastest-growing.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum BoundClass {
    Constant,
    Log2,
    Linear,
    NLog2N,
    Quadratic,
}

impl BoundClass {
    pub const ALL: [BoundClass; 5] = [
        BoundClass::Constant,
        BoundClass::Log2,
        BoundClass::Linear,
        BoundClass::NLog2N,
        BoundClass::Quadratic,
    ];

    /// The bounding function, nondecreasing on n >= 1.
    pub fn g(self, n: u64) -> u64 {
        match self {
            BoundClass::Constant => 1,
            BoundClass::Log2 => log2(n),
            BoundClass::Linear => n,
            BoundClass::NLog2N => n * log2(n),
            BoundClass::Quadratic => n * n,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            BoundClass::Constant => "constant",
            BoundClass::Log2 => "log2",
            BoundClass::Linear => "linear",
            BoundClass::NLog2N => "nlog2n",
            BoundClass::Quadratic => "quadratic",
        }
    }

    pub fn by_name(name: &str) -> Option<BoundClass> {
        BoundClass::ALL.iter().copied().find(|c| c.name() == name)
    }
}

impl std::fmt::Display for BoundClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// The constants exhibited for a bound claim: `steps <= c * g(n)` for
/// all sampled `n >= n0`. Both are positive.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WitnessPair {
    pub c: u64,
    pub n0: u64,
}

/// One measured point of a sweep: the worst step count observed over the
/// probe set at input size `n`, and the probe achieving it.
#[derive(Clone, Debug, PartialEq)]
pub struct SweepSample {
    pub n: u64,
    pub steps: u64,
    pub probe: Value,
    pub timed_out: bool,
}

#[derive(Debug, Error)]
pub enum ComplexityError {
    #[error("program errored at n = {n}, probe = {probe}")]
    ProgramError { n: u64, probe: Value },
    #[error("sample at n = {n} is marked timed-out; bound checking requires completed runs")]
    TimedOutSample { n: u64 },
    #[error("no samples to check")]
    EmptySamples,
    #[error("witness constants must be positive, got c = {c}, n0 = {n0}")]
    InvalidWitness { c: u64, n0: u64 },
    #[error("g({n}) = 0 under class {class}; the bound is unsatisfiable there")]
    ZeroBound { class: BoundClass, n: u64 },
}

/// Run `family` at size `n` over the full probe set and keep the worst
/// step count. Probes run independently (in parallel) and are folded in
/// ascending probe order, so the result is deterministic: the reported
/// probe is the smallest one achieving the maximum. A timed-out probe
/// marks the whole sample; an erroring probe is a harness failure.
pub fn worst_case_steps(
    family: &ProgramFamily,
    n: u64,
    count: u64,
) -> Result<SweepSample, ComplexityError> {
    let program = family.program();
    let outcomes: Vec<(BigInt, RunStatus, u64)> = probe_values(n)
        .into_par_iter()
        .map(|probe| {
            let out = run_program(&program, family.input_env(n, &probe), count);
            (probe, out.status, out.steps)
        })
        .collect();
    let mut worst: Option<(BigInt, u64)> = None;
    for (probe, status, steps) in outcomes {
        match status {
            RunStatus::Error | RunStatus::Ok => {
                // Search programs always return; anything else is a bug
                // in the harness inputs.
                return Err(ComplexityError::ProgramError {
                    n,
                    probe: Value::Int(probe),
                });
            }
            RunStatus::TimedOut => {
                return Ok(SweepSample {
                    n,
                    steps,
                    probe: Value::Int(probe),
                    timed_out: true,
                });
            }
            RunStatus::Returned => {
                if worst.as_ref().is_none_or(|(_, s)| steps > *s) {
                    worst = Some((probe, steps));
                }
            }
        }
    }
    let (probe, steps) = worst.expect("probe set is never empty");
    Ok(SweepSample {
        n,
        steps,
        probe: Value::Int(probe),
        timed_out: false,
    })
}

/// Sweep clock: always sufficient for the built-in search families,
/// whose loop re-entries are bounded by the list length.
pub fn sweep_count(n: u64) -> u64 {
    n + 2
}

/// Worst-case samples for each size, in ascending size order.
pub fn sweep(family: &ProgramFamily, sizes: &[u64]) -> Result<Vec<SweepSample>, ComplexityError> {
    let mut sizes = sizes.to_vec();
    sizes.sort_unstable();
    sizes.dedup();
    sizes
        .iter()
        .map(|&n| worst_case_steps(family, n, sweep_count(n)))
        .collect()
}

/// Doubling sizes from `n_min` up to `n_max`.
pub fn geometric_sizes(n_min: u64, n_max: u64) -> Vec<u64> {
    let mut sizes = Vec::new();
    let mut n = n_min.max(1);
    while n <= n_max {
        sizes.push(n);
        match n.checked_mul(2) {
            Some(next) => n = next,
            None => break,
        }
    }
    sizes
}

/// Every `step`-th size in `n_min..=n_max`.
pub fn stepped_sizes(n_min: u64, n_max: u64, step: u64) -> Vec<u64> {
    (n_min..=n_max).step_by(step.max(1) as usize).collect()
}

/// A sample that broke the bound, with the bound value it exceeded.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub n: u64,
    pub steps: u64,
    pub bound: u64,
    pub probe: String,
}

/// Outcome of a bound check over sampled sizes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundVerdict {
    pub pass: bool,
    /// The violating sample with the smallest `n`, if any.
    pub first_violation: Option<Violation>,
    /// Largest sampled size the bound was actually checked at (0 when
    /// the quantification domain was empty).
    pub n_max_checked: u64,
}

fn ensure_clean(samples: &[SweepSample]) -> Result<(), ComplexityError> {
    if samples.is_empty() {
        return Err(ComplexityError::EmptySamples);
    }
    if let Some(s) = samples.iter().find(|s| s.timed_out) {
        return Err(ComplexityError::TimedOutSample { n: s.n });
    }
    Ok(())
}

/// Check `steps <= c * g(n)` for every sample with `n >= n0`. Samples
/// below `n0` are outside the claim; an empty domain passes vacuously.
pub fn check_bound(
    samples: &[SweepSample],
    g: BoundClass,
    w: WitnessPair,
) -> Result<BoundVerdict, ComplexityError> {
    ensure_clean(samples)?;
    if w.c == 0 || w.n0 == 0 {
        return Err(ComplexityError::InvalidWitness { c: w.c, n0: w.n0 });
    }
    let mut first_violation = None;
    let mut n_max_checked = 0;
    for sample in samples.iter().filter(|s| s.n >= w.n0) {
        n_max_checked = n_max_checked.max(sample.n);
        let bound = (w.c as u128) * (g.g(sample.n) as u128);
        if (sample.steps as u128) > bound && first_violation.is_none() {
            first_violation = Some(Violation {
                n: sample.n,
                steps: sample.steps,
                bound: bound.try_into().unwrap_or(u64::MAX),
                probe: sample.probe.to_string(),
            });
        }
    }
    Ok(BoundVerdict {
        pass: first_violation.is_none(),
        first_violation,
        n_max_checked,
    })
}

/// Search for the lexicographically smallest `(n0, c)` witness with
/// `n0 <= n0_max` and `c <= c_max`: `n0` is scanned ascending, and for
/// each `n0` the minimal `c` is the maximum of `ceil(steps / g(n))` over
/// the samples in the domain. An `n0` whose domain contains a sample
/// with `g(n) = 0` is infeasible. Returns `None` when no pair within the
/// limits bounds the samples.
pub fn find_witnesses(
    samples: &[SweepSample],
    g: BoundClass,
    c_max: u64,
    n0_max: u64,
) -> Result<Option<WitnessPair>, ComplexityError> {
    ensure_clean(samples)?;
    'next_n0: for n0 in 1..=n0_max {
        let mut c_min: u64 = 1;
        for sample in samples.iter().filter(|s| s.n >= n0) {
            let bound = g.g(sample.n);
            if bound == 0 {
                continue 'next_n0;
            }
            c_min = c_min.max(sample.steps.div_ceil(bound));
        }
        if c_min <= c_max {
            return Ok(Some(WitnessPair { c: c_min, n0 }));
        }
    }
    Ok(None)
}

pub const DEFAULT_C_MAX: u64 = 256;
pub const DEFAULT_N0_MAX: u64 = 64;

/// The first class in growth order admitting a witness within the
/// limits, with that witness. On finite sample sets every bound holds
/// for a large enough constant, so `c_max` is what makes the answer
/// discriminating; the result is bounded empirical evidence over the
/// sampled sizes, not a proof.
pub fn classify(
    samples: &[SweepSample],
    c_max: u64,
    n0_max: u64,
) -> Result<Option<(BoundClass, WitnessPair)>, ComplexityError> {
    for class in BoundClass::ALL {
        if let Some(w) = find_witnesses(samples, class, c_max, n0_max)? {
            return Ok(Some((class, w)));
        }
    }
    Ok(None)
}

// ---------------------------------------------------------------------
// CSV serialization: header `n,steps,probe,timed_out`, ascending n.
// ---------------------------------------------------------------------

#[derive(Serialize, Deserialize)]
struct CsvRow {
    n: u64,
    steps: u64,
    probe: String,
    timed_out: bool,
}

#[derive(Debug, Error)]
pub enum CsvError {
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("csv probe column: {0}")]
    Probe(#[from] crate::parser::ParseError),
}

pub fn write_csv<W: Write>(writer: W, samples: &[SweepSample]) -> Result<(), CsvError> {
    let mut w = csv::Writer::from_writer(writer);
    for s in samples {
        w.serialize(CsvRow {
            n: s.n,
            steps: s.steps,
            probe: s.probe.to_string(),
            timed_out: s.timed_out,
        })?;
    }
    w.flush().map_err(csv::Error::from)?;
    Ok(())
}

pub fn read_csv<R: Read>(reader: R) -> Result<Vec<SweepSample>, CsvError> {
    let mut r = csv::Reader::from_reader(reader);
    let mut samples = Vec::new();
    for row in r.deserialize() {
        let row: CsvRow = row?;
        samples.push(SweepSample {
            n: row.n,
            steps: row.steps,
            probe: parse_value(&row.probe)?,
            timed_out: row.timed_out,
        });
    }
    Ok(samples)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{hit_law_steps, miss_law_steps, predicted_outcome, recursive_bs_helper};
    use crate::programs::canonical_list;
    use crate::value::VarEnv;

    fn bs_family() -> &'static ProgramFamily {
        ProgramFamily::by_name("binarysearch").unwrap()
    }

    fn law_samples(sizes: impl Iterator<Item = u64>) -> Vec<SweepSample> {
        sizes
            .map(|n| SweepSample {
                n,
                steps: 25 + 26 * log2(n),
                probe: Value::int(0),
                timed_out: false,
            })
            .collect()
    }

    #[test]
    fn worst_case_matches_the_law_maximum() {
        let n = 8;
        let sample = worst_case_steps(bs_family(), n, sweep_count(n)).unwrap();
        assert!(!sample.timed_out);
        let lst = canonical_list(n);
        let law_max = probe_values(n)
            .into_iter()
            .map(|p| {
                let t = recursive_bs_helper(&p, &lst, 0, None, lst.len() as i64 - 1, 0);
                if t.success {
                    hit_law_steps(t.calls)
                } else {
                    miss_law_steps(t.calls)
                }
            })
            .max()
            .unwrap();
        assert_eq!(sample.steps, law_max);
    }

    #[test]
    fn worst_case_at_size_one_covers_three_probes() {
        let sample = worst_case_steps(bs_family(), 1, sweep_count(1)).unwrap();
        // Probes -1, 0, 1: one hit (25 steps), two one-call misses (39).
        assert_eq!(sample.steps, 39);
        assert_eq!(sample.probe, Value::int(-1));
    }

    #[test]
    fn insufficient_clock_marks_the_sample_timed_out() {
        let sample = worst_case_steps(bs_family(), 8, 1).unwrap();
        assert!(sample.timed_out);
    }

    #[test]
    fn linear_search_worst_case_matches_the_affine_fit() {
        let family = ProgramFamily::by_name("linear-search").unwrap();
        let sample = worst_case_steps(family, 8, sweep_count(8)).unwrap();
        // Fitted in the programs module: 9 + 15n for a missing key.
        assert_eq!(sample.steps, 9 + 15 * 8);
    }

    #[test]
    fn check_bound_accepts_the_intended_witnesses() {
        let samples = sweep(bs_family(), &geometric_sizes(26, 4096)).unwrap();
        let verdict =
            check_bound(&samples, BoundClass::Log2, WitnessPair { c: 51, n0: 26 }).unwrap();
        assert!(verdict.pass, "{:?}", verdict.first_violation);
        assert_eq!(verdict.n_max_checked, 3328);
    }

    #[test]
    fn check_bound_is_vacuous_above_the_samples() {
        let samples = law_samples(2..=64);
        let verdict =
            check_bound(&samples, BoundClass::Log2, WitnessPair { c: 1, n0: 1000 }).unwrap();
        assert!(verdict.pass);
        assert_eq!(verdict.n_max_checked, 0);
    }

    #[test]
    fn check_bound_reports_the_first_violation() {
        let samples = sweep(bs_family(), &geometric_sizes(26, 4096)).unwrap();
        let verdict =
            check_bound(&samples, BoundClass::Log2, WitnessPair { c: 1, n0: 1 }).unwrap();
        assert!(!verdict.pass);
        let v = verdict.first_violation.unwrap();
        assert_eq!(v.n, 26);
        assert_eq!(v.bound, log2(26));
        assert!(v.steps > v.bound);
    }

    #[test]
    fn check_bound_rejects_timed_out_and_invalid_inputs() {
        let mut samples = law_samples(2..=8);
        assert!(matches!(
            check_bound(&samples, BoundClass::Log2, WitnessPair { c: 0, n0: 1 }),
            Err(ComplexityError::InvalidWitness { .. })
        ));
        samples[0].timed_out = true;
        assert!(matches!(
            check_bound(&samples, BoundClass::Log2, WitnessPair { c: 51, n0: 26 }),
            Err(ComplexityError::TimedOutSample { n: 2 })
        ));
        assert!(matches!(
            check_bound(&[], BoundClass::Log2, WitnessPair { c: 1, n0: 1 }),
            Err(ComplexityError::EmptySamples)
        ));
    }

    #[test]
    fn find_witnesses_on_law_generated_samples() {
        let samples = law_samples(2..=4096);
        let w = find_witnesses(&samples, BoundClass::Log2, 51, 26)
            .unwrap()
            .expect("feasible");
        assert!(w.c <= 51);
        // The intended pair also passes.
        let verdict =
            check_bound(&samples, BoundClass::Log2, WitnessPair { c: 51, n0: 26 }).unwrap();
        assert!(verdict.pass);
    }

    #[test]
    fn find_witnesses_on_constant_samples() {
        let samples: Vec<SweepSample> = (1..=16)
            .map(|n| SweepSample {
                n,
                steps: 5,
                probe: Value::int(0),
                timed_out: false,
            })
            .collect();
        let w = find_witnesses(&samples, BoundClass::Constant, 100, 100)
            .unwrap()
            .unwrap();
        assert_eq!(w, WitnessPair { c: 5, n0: 1 });
    }

    #[test]
    fn find_witnesses_refuses_linear_growth_under_log2() {
        let samples: Vec<SweepSample> = geometric_sizes(2, 4096)
            .into_iter()
            .map(|n| SweepSample {
                n,
                steps: n,
                probe: Value::int(0),
                timed_out: false,
            })
            .collect();
        // ceil(4096 / log2(4096)) = ceil(4096 / 13) = 316 > 64.
        assert_eq!(
            find_witnesses(&samples, BoundClass::Log2, 64, 64).unwrap(),
            None
        );
    }

    #[test]
    fn classify_orders_classes_from_slowest_growing() {
        let lin_family = ProgramFamily::by_name("linear-search").unwrap();
        let lin = sweep(lin_family, &geometric_sizes(2, 4096)).unwrap();
        let (class, _) = classify(&lin, DEFAULT_C_MAX, DEFAULT_N0_MAX).unwrap().unwrap();
        assert_eq!(class, BoundClass::Linear);

        let bs = sweep(bs_family(), &geometric_sizes(2, 4096)).unwrap();
        let (class, w) = classify(&bs, DEFAULT_C_MAX, DEFAULT_N0_MAX).unwrap().unwrap();
        assert_eq!(class, BoundClass::Log2);
        assert!(w.c <= 51);

        // A constant-steps program stays constant for any n.
        let constant: Vec<SweepSample> = geometric_sizes(1, 64)
            .into_iter()
            .map(|n| SweepSample {
                n,
                steps: 2,
                probe: Value::int(0),
                timed_out: false,
            })
            .collect();
        let (class, w) = classify(&constant, DEFAULT_C_MAX, DEFAULT_N0_MAX)
            .unwrap()
            .unwrap();
        assert_eq!(class, BoundClass::Constant);
        assert_eq!(w, WitnessPair { c: 2, n0: 1 });
    }

    #[test]
    fn sweep_samples_match_predictions_exhaustively() {
        let sizes: Vec<u64> = (1..=64).collect();
        let samples = sweep(bs_family(), &sizes).unwrap();
        for s in &samples {
            let lst = canonical_list(s.n);
            let probe = s.probe.as_int().unwrap();
            let predicted = predicted_outcome(probe, &lst, &VarEnv::new());
            assert_eq!(s.steps, predicted.steps, "n = {}", s.n);
            // Worst case is bounded by the miss law at the call bound.
            assert!(s.steps <= miss_law_steps(log2(s.n)));
        }
    }

    #[test]
    fn csv_round_trips() {
        let samples = sweep(bs_family(), &[1, 2, 8]).unwrap();
        let mut buf = Vec::new();
        write_csv(&mut buf, &samples).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert!(text.starts_with("n,steps,probe,timed_out\n"));
        assert_eq!(read_csv(&buf[..]).unwrap(), samples);
    }

    #[test]
    fn geometric_and_stepped_size_grids() {
        assert_eq!(
            geometric_sizes(2, 4096).len(),
            12,
            "powers of two from 2 to 4096"
        );
        assert_eq!(geometric_sizes(26, 100), vec![26, 52]);
        assert_eq!(stepped_sizes(8, 8, 1), vec![8]);
        assert_eq!(stepped_sizes(2, 64, 1).len(), 63);
    }

}

//! Randomized verification of every identity over seeded trials.
//!
//! Trial `t` draws from its own stream of the seeded generator, so results
//! do not depend on thread scheduling and any failure can be replayed from
//! its digest alone.

use rand::Rng;
use rayon::prelude::*;

use crate::algebra::Algebra;
use crate::blade::Blade;
use crate::error::Result;
use crate::identities::{check_homogeneous_hyperbolic, check_hyperbolic, BladePair, IdentityResult};
use crate::random::{
    distinct_angles, pair_with_angles, random_blade, random_homogeneous, structured_angles, trial_rng,
};
use crate::scalar::Scalar;
use crate::tolerance::Tolerance;

/// Largest blade grade drawn by the suite.
pub const MAX_GRADE: usize = 4;

/// Which grade combinations a run draws.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum GradeMode {
    #[default]
    Any,
    Equal,
    Mixed,
}

/// How the blades of a trial are generated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PairKind {
    /// Independent Gaussian factors.
    Gaussian,
    /// Distinct generic angles prescribed in a random frame.
    Prescribed,
    /// Angles mixing zeros, right angles and generic values.
    Structured,
}

impl PairKind {
    fn for_trial(t: u64) -> Self {
        match t % 4 {
            0 | 1 => PairKind::Gaussian,
            2 => PairKind::Prescribed,
            _ => PairKind::Structured,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            PairKind::Gaussian => "gaussian",
            PairKind::Prescribed => "prescribed",
            PairKind::Structured => "structured",
        }
    }
}

#[derive(Debug, Clone)]
pub struct SuiteConfig<T> {
    pub seed: u64,
    pub trials: usize,
    pub min_dim: usize,
    pub max_dim: usize,
    pub grades: GradeMode,
    pub tol: Tolerance<T>,
    /// Also check the hyperbolic-function identities on a random
    /// multivector per trial.
    pub hyperbolic: bool,
    /// Negates the right-hand side of the product-exponential checks so the
    /// harness can be shown to catch failures.
    #[doc(hidden)]
    pub inject_fault: bool,
}

impl<T: Scalar> SuiteConfig<T> {
    pub fn new(seed: u64, trials: usize, max_dim: usize, tol: Tolerance<T>) -> Self {
        SuiteConfig {
            seed,
            trials,
            min_dim: 3,
            max_dim,
            grades: GradeMode::Any,
            tol,
            hyperbolic: true,
            inject_fault: false,
        }
    }
}

/// Inputs and results of one trial.
#[derive(Debug, Clone)]
pub struct TrialOutcome<T> {
    pub digest: String,
    pub results: Vec<IdentityResult<T>>,
}

/// Per-identity aggregate over a run.
#[derive(Debug, Clone, PartialEq)]
pub struct IdentitySummary<T> {
    pub name: &'static str,
    pub total: usize,
    pub passed: usize,
    pub skipped: usize,
    pub max_relative_residual: T,
    /// Digest and residual of the first failing trial.
    pub first_failure: Option<IdentityResult<T>>,
}

impl<T: Scalar> IdentitySummary<T> {
    pub fn failed(&self) -> usize {
        self.total - self.passed
    }
}

#[derive(Debug, Clone)]
pub struct SuiteReport<T> {
    pub seed: u64,
    pub trials: usize,
    pub identities: Vec<IdentitySummary<T>>,
}

impl<T: Scalar> SuiteReport<T> {
    pub fn all_passed(&self) -> bool {
        self.identities.iter().all(|s| s.passed == s.total)
    }

    pub fn get(&self, name: &str) -> Option<&IdentitySummary<T>> {
        self.identities.iter().find(|s| s.name == name)
    }

    /// Summaries whose name starts with `prefix`, merged into one line.
    pub fn merged(&self, prefix: &str) -> Option<IdentitySummary<T>> {
        let mut matching = self.identities.iter().filter(|s| s.name.starts_with(prefix));
        let first = matching.next()?.clone();
        Some(matching.fold(first, |mut acc, s| {
            acc.total += s.total;
            acc.passed += s.passed;
            acc.skipped += s.skipped;
            acc.max_relative_residual = acc.max_relative_residual.max(s.max_relative_residual);
            if acc.first_failure.is_none() {
                acc.first_failure = s.first_failure.clone();
            }
            acc
        }))
    }
}

/// Runs every trial in parallel and aggregates in trial order.
pub fn run_suite<T: Scalar + Send + Sync>(config: &SuiteConfig<T>) -> SuiteReport<T> {
    let outcomes: Vec<TrialOutcome<T>> =
        (0..config.trials as u64).into_par_iter().map(|t| run_trial(config, t)).collect();
    let mut identities: Vec<IdentitySummary<T>> = Vec::new();
    for outcome in outcomes {
        for r in outcome.results {
            let idx = match identities.iter().position(|s| s.name == r.name) {
                Some(i) => i,
                None => {
                    identities.push(IdentitySummary {
                        name: r.name,
                        total: 0,
                        passed: 0,
                        skipped: 0,
                        max_relative_residual: T::zero(),
                        first_failure: None,
                    });
                    identities.len() - 1
                }
            };
            let s = &mut identities[idx];
            s.total += 1;
            if r.is_skipped() {
                s.skipped += 1;
            } else {
                s.max_relative_residual = s.max_relative_residual.max(r.relative_residual());
            }
            if r.passed {
                s.passed += 1;
            } else if s.first_failure.is_none() {
                s.first_failure = Some(r.with_digest(outcome.digest.clone()));
            }
        }
    }
    SuiteReport { seed: config.seed, trials: config.trials, identities }
}

/// Draws the inputs of trial `t` and runs every check on them.
pub fn run_trial<T: Scalar>(config: &SuiteConfig<T>, t: u64) -> TrialOutcome<T> {
    let mut rng = trial_rng(config.seed, t);
    let kind = PairKind::for_trial(t);
    let n = rng.gen_range(config.min_dim..=config.max_dim.max(config.min_dim));
    let (p, q) = draw_grades(&mut rng, n, kind, config.grades);
    let digest = format!("seed={} trial={} n={} p={} q={} kind={}", config.seed, t, n, p, q, kind.label());
    let mut results =
        match draw_pair(&mut rng, n, p, q, kind, &config.tol).and_then(|(a, b)| BladePair::new(a, b, &config.tol)) {
            Ok(pair) => {
                let pair = if config.inject_fault { pair.with_injected_fault() } else { pair };
                pair.check_all()
            }
            Err(e) => vec![IdentityResult::errored("principal-data", &e)],
        };
    if config.hyperbolic {
        let alg = Algebra::new(n).expect("dimension in range");
        let k = rng.gen_range(0..=n.min(MAX_GRADE + 2));
        let h = random_homogeneous::<T, _>(&mut rng, alg, k, 2.0);
        let checks = h.and_then(|h| {
            let mut out = check_hyperbolic(&h, &config.tol)?;
            out.extend(check_homogeneous_hyperbolic(&h, &config.tol)?);
            Ok(out)
        });
        match checks {
            Ok(v) => results.extend(v),
            Err(e) => results.push(IdentityResult::errored("hyperbolic", &e)),
        }
    }
    TrialOutcome { digest, results }
}

fn draw_grades<R: Rng + ?Sized>(rng: &mut R, n: usize, kind: PairKind, mode: GradeMode) -> (usize, usize) {
    // Prescribed angles need room for both blades side by side.
    let budget = if kind == PairKind::Gaussian { usize::MAX } else { n };
    let top = n.min(MAX_GRADE);
    loop {
        let p = rng.gen_range(1..=top);
        let q = match mode {
            GradeMode::Equal => p,
            _ => rng.gen_range(1..=top),
        };
        let fits = p + q <= budget;
        let mode_ok = match mode {
            GradeMode::Any | GradeMode::Equal => true,
            GradeMode::Mixed => p != q,
        };
        if fits && mode_ok {
            return (p, q);
        }
    }
}

fn draw_pair<T: Scalar, R: Rng + ?Sized>(
    rng: &mut R,
    n: usize,
    p: usize,
    q: usize,
    kind: PairKind,
    tol: &Tolerance<T>,
) -> Result<(Blade<T>, Blade<T>)> {
    let alg = Algebra::new(n)?;
    match kind {
        PairKind::Gaussian => Ok((random_blade(rng, alg, p, tol)?, random_blade(rng, alg, q, tol)?)),
        PairKind::Prescribed => {
            let thetas = distinct_angles::<T, _>(rng, p.min(q), 0.05, std::f64::consts::FRAC_PI_2 - 0.05, 0.02);
            pair_with_angles(rng, alg, p, q, &thetas, tol)
        }
        PairKind::Structured => {
            let thetas = structured_angles::<T, _>(rng, p.min(q));
            pair_with_angles(rng, alg, p, q, &thetas, tol)
        }
    }
}

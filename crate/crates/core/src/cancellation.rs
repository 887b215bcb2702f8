//! Checkers for cancellation along geodesic factorizations `u = y_1 ⋯ y_n`
//! over a generating set `Y = Ḃ_r ∩ H`: pairwise cancellation bounds, survival
//! of the second half of each factor, and strict growth of prefix lengths.

use std::fmt;

use crate::error::{Error, Result};
use crate::freegroup::{cancellation_length, FreeWord, Letter};
use crate::ideals::{YFactorization, YMetric};

/// Number of trailing letters of `y` cancelled against `z` in `y·z`.
pub fn pair_cancellation(y: &FreeWord, z: &FreeWord) -> usize {
    cancellation_length(y.letters(), z.letters())
}

fn half_up(k: usize) -> usize {
    k.div_ceil(2)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairCheck {
    /// 1-based factor index `i`; the pair is `y_i y_{i+1}`.
    pub i: usize,
    pub cancelled: usize,
    /// `min(⌈k_i/2⌉, ⌈k_{i+1}/2⌉) − 1`.
    pub bound: usize,
    pub ok: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurvivalCheck {
    pub j: usize,
    /// 1-based positions `p ≥ ⌈k_j/2⌉` of `y_j` cancelled in the reduction of `y_1 ⋯ y_j`.
    pub cancelled_positions: Vec<usize>,
    pub ok: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrowthCheck {
    pub j: usize,
    pub before: usize,
    pub after: usize,
    pub ok: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CancellationReport {
    pub factorization: YFactorization,
    pub pairs: Vec<PairCheck>,
    pub survival: Vec<SurvivalCheck>,
    pub growth: Vec<GrowthCheck>,
}

impl CancellationReport {
    pub fn passed(&self) -> bool {
        self.pairs.iter().all(|c| c.ok) && self.survival.iter().all(|c| c.ok) && self.growth.iter().all(|c| c.ok)
    }

    pub fn violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        for c in self.pairs.iter().filter(|c| !c.ok) {
            out.push(format!("pair {}: {} cancelled, bound {}", c.i, c.cancelled, c.bound));
        }
        for c in self.survival.iter().filter(|c| !c.ok) {
            out.push(format!("factor {}: positions {:?} cancelled", c.j, c.cancelled_positions));
        }
        for c in self.growth.iter().filter(|c| !c.ok) {
            out.push(format!("prefix {}: length {} -> {}", c.j, c.before, c.after));
        }
        out
    }
}

impl fmt::Display for CancellationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let factors: Vec<String> = self.factorization.factors.iter().map(|y| y.to_string()).collect();
        writeln!(f, "u = {} = ({})", self.factorization.u, factors.join(")("))?;
        for c in &self.pairs {
            writeln!(f, "  pair {}: cancelled {} <= {} {}", c.i, c.cancelled, c.bound, mark(c.ok))?;
        }
        for c in &self.survival {
            writeln!(f, "  survival {}: {}", c.j, mark(c.ok))?;
        }
        for c in &self.growth {
            writeln!(f, "  growth {}: {} < {} {}", c.j, c.before, c.after, mark(c.ok))?;
        }
        Ok(())
    }
}

fn mark(ok: bool) -> &'static str {
    if ok {
        "ok"
    } else {
        "FAIL"
    }
}

/// Runs all three checks by direct reduction. Factorizations that are not
/// geodesic are rejected with [`Error::NonGeodesic`].
pub fn check_cancellation(metric: &YMetric<'_>, fact: &YFactorization) -> Result<CancellationReport> {
    let fact = YFactorization::new(metric.subgroup(), fact.u.clone(), fact.factors.clone())?;
    let geodesic = metric.distance(&fact.u)?;
    if geodesic != fact.len() {
        return Err(Error::NonGeodesic {
            given: fact.len(),
            geodesic,
        });
    }
    Ok(cancellation_report(fact))
}

/// The report without the geodesic precondition; any failed flag is a
/// counterexample for this factorization.
pub fn cancellation_report(fact: YFactorization) -> CancellationReport {
    let ys = &fact.factors;
    let pairs = ys
        .windows(2)
        .enumerate()
        .map(|(i, w)| {
            let cancelled = pair_cancellation(&w[0], &w[1]);
            let bound = half_up(w[0].len()).min(half_up(w[1].len())).saturating_sub(1);
            PairCheck {
                i: i + 1,
                cancelled,
                bound,
                ok: cancelled <= bound,
            }
        })
        .collect();

    // stack reduction tracking which factor and position each letter came from
    let mut stack: Vec<(Letter, usize, usize)> = Vec::new();
    let mut survival = Vec::with_capacity(ys.len());
    let mut growth = Vec::with_capacity(ys.len());
    for (j, y) in ys.iter().enumerate() {
        let before = stack.len();
        for (p, &x) in y.letters().iter().enumerate() {
            match stack.last() {
                Some(&(top, _, _)) if top == x.inverse() => {
                    stack.pop();
                }
                _ => stack.push((x, j, p + 1)),
            }
        }
        let from = half_up(y.len());
        let surviving: Vec<usize> = stack.iter().filter(|e| e.1 == j).map(|e| e.2).collect();
        let cancelled_positions: Vec<usize> = (from.max(1)..=y.len()).filter(|p| !surviving.contains(p)).collect();
        survival.push(SurvivalCheck {
            j: j + 1,
            ok: cancelled_positions.is_empty(),
            cancelled_positions,
        });
        growth.push(GrowthCheck {
            j: j + 1,
            before,
            after: stack.len(),
            ok: before < stack.len(),
        });
    }
    CancellationReport {
        factorization: fact,
        pairs,
        survival,
        growth,
    }
}

/// Summary of an exhaustive check over every geodesic factorization.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ExhaustiveSummary {
    pub elements: usize,
    pub factorizations: usize,
    pub truncated: usize,
    pub violations: Vec<String>,
}

/// Checks every geodesic factorization of every `u` in the metric's ball
/// with `|u|_Y ≤ max_length`, up to `cap` factorizations per element.
pub fn check_exhaustive(metric: &YMetric<'_>, max_length: usize, cap: usize) -> Result<ExhaustiveSummary> {
    let mut summary = ExhaustiveSummary::default();
    let words: Vec<FreeWord> = metric
        .ball()
        .filter(|(_, d)| *d <= max_length)
        .map(|(w, _)| w.clone())
        .collect();
    for u in words {
        summary.elements += 1;
        let (all, truncated) = metric.all_geodesics(&u, cap)?;
        if truncated {
            summary.truncated += 1;
        }
        for fact in all {
            summary.factorizations += 1;
            let report = check_cancellation(metric, &fact)?;
            for v in report.violations() {
                summary.violations.push(format!("{u}: {v}"));
            }
        }
    }
    Ok(summary)
}

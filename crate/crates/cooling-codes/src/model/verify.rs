//! The brute-force verifier. It checks, with explicit witnesses on failure:
//! per-kind weight bounds, pairwise codeset disjointness, and the cooling
//! property (every hot set of size t is avoided by some codeword of every
//! codeset). Exhaustive mode refuses to start when the work exceeds its
//! budget rather than silently sampling.

use std::collections::HashMap;

use num_bigint::BigUint;
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use super::{CodeKind, LpcCode};
use crate::bits::{BitWord, Combinations};
use crate::error::{Error, Result};
use crate::model::bounds::binomial;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VerifyMode {
    /// Every hot set crossed with every codeset, within the work budget.
    Exhaustive,
    /// `trials` random (hot set, codeset) pairs from a seeded generator, so
    /// runs are reproducible.
    Sampled { trials: u64, seed: u64 },
}

#[derive(Clone, Copy, Debug)]
pub struct VerifyOptions {
    /// Maximum number of elementary avoid-checks exhaustive mode may cost.
    pub budget: u64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            budget: 100_000_000,
        }
    }
}

#[derive(Clone, Debug, serde::Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FailDetail {
    Weight {
        codeset: u128,
        codeword: Vec<usize>,
        weight: usize,
    },
    Disjoint {
        codeset_a: u128,
        codeset_b: u128,
        codeword: Vec<usize>,
    },
    Cooling {
        codeset: u128,
        hot: Vec<usize>,
    },
}

#[derive(Clone, Debug, serde::Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum CheckResult {
    Pass { checked: u128 },
    Fail { detail: FailDetail },
}

impl CheckResult {
    pub fn passed(&self) -> bool {
        matches!(self, CheckResult::Pass { .. })
    }
}

#[derive(Clone, Debug, serde::Serialize)]
pub struct VerifyReport {
    pub mode: String,
    pub codesets_checked: u128,
    pub weight: CheckResult,
    pub disjointness: CheckResult,
    pub cooling: CheckResult,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.weight.passed() && self.disjointness.passed() && self.cooling.passed()
    }
}

fn weight_violation(kind: CodeKind, w: usize, weight: usize) -> bool {
    match kind {
        CodeKind::Lpc => weight > w,
        CodeKind::Cpc | CodeKind::Cpecc { .. } => weight != w,
        CodeKind::Cooling => false,
    }
}

pub fn verify_code(code: &LpcCode, mode: VerifyMode, opts: &VerifyOptions) -> Result<VerifyReport> {
    match mode {
        VerifyMode::Exhaustive => verify_exhaustive(code, opts),
        VerifyMode::Sampled { trials, seed } => verify_sampled(code, trials, seed),
    }
}

fn verify_exhaustive(code: &LpcCode, opts: &VerifyOptions) -> Result<VerifyReport> {
    let m = code.num_codesets();
    let hot_count = binomial(code.n as u64, code.t as u64);
    let budget = BigUint::from(opts.budget);

    // each codeset holds at least one codeword, so C(n,t) * M lower-bounds
    // the avoid-check count; refuse before materializing anything
    let lower = &hot_count * m;
    if lower > budget {
        return Err(Error::BudgetExceeded {
            required: lower.try_into().unwrap_or(u128::MAX),
            budget: opts.budget,
        });
    }

    let mut weight = CheckResult::Pass { checked: 0 };
    let mut disjoint = CheckResult::Pass { checked: 0 };
    let mut seen: HashMap<BitWord, u128> = HashMap::new();
    let mut masks: Vec<Vec<BitWord>> = Vec::new();
    let mut total_words: u64 = 0;

    for i in 0..m {
        let cs = code.codeset(i)?;
        total_words += cs.codewords.len() as u64;
        let required = &hot_count * total_words;
        if required > budget {
            return Err(Error::BudgetExceeded {
                required: required.try_into().unwrap_or(u128::MAX),
                budget: opts.budget,
            });
        }
        let mut set_masks = Vec::with_capacity(cs.codewords.len());
        for cw in &cs.codewords {
            if weight.passed() && weight_violation(code.kind, code.w, cw.weight()) {
                weight = CheckResult::Fail {
                    detail: FailDetail::Weight {
                        codeset: i,
                        codeword: cw.support().to_vec(),
                        weight: cw.weight(),
                    },
                };
            }
            let mask = cw.to_mask();
            if disjoint.passed() {
                if let Some(&other) = seen.get(&mask) {
                    if other != i {
                        disjoint = CheckResult::Fail {
                            detail: FailDetail::Disjoint {
                                codeset_a: other,
                                codeset_b: i,
                                codeword: cw.support().to_vec(),
                            },
                        };
                    }
                } else {
                    seen.insert(mask.clone(), i);
                }
            }
            set_masks.push(mask);
        }
        masks.push(set_masks);
    }
    if let CheckResult::Pass { checked } = &mut weight {
        *checked = total_words as u128;
    }
    if let CheckResult::Pass { checked } = &mut disjoint {
        *checked = total_words as u128;
    }

    // cooling: every t-subset must be avoided by at least one codeword of
    // every codeset
    let universe: Vec<usize> = (0..code.n).collect();
    let mut cooling = CheckResult::Pass { checked: 0 };
    let mut pairs: u128 = 0;
    'outer: for hot in Combinations::new(&universe, code.t) {
        let hot_mask = BitWord::from_support(code.n, hot.iter().copied());
        for (i, set_masks) in masks.iter().enumerate() {
            pairs += 1;
            if !set_masks.iter().any(|w| !w.intersects(&hot_mask)) {
                cooling = CheckResult::Fail {
                    detail: FailDetail::Cooling {
                        codeset: i as u128,
                        hot: hot.clone(),
                    },
                };
                break 'outer;
            }
        }
    }
    if let CheckResult::Pass { checked } = &mut cooling {
        *checked = pairs;
    }

    Ok(VerifyReport {
        mode: "exhaustive".into(),
        codesets_checked: m,
        weight,
        disjointness: disjoint,
        cooling,
    })
}

fn verify_sampled(code: &LpcCode, trials: u64, seed: u64) -> Result<VerifyReport> {
    let m = code.num_codesets();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut weight = CheckResult::Pass { checked: 0 };
    let mut disjoint = CheckResult::Pass { checked: 0 };
    let mut cooling = CheckResult::Pass { checked: 0 };
    let mut seen: HashMap<BitWord, u128> = HashMap::new();
    let mut words_checked: u128 = 0;
    let mut pairs: u128 = 0;

    for _ in 0..trials {
        let i = rng.gen_range(0..m);
        let hot: Vec<usize> = rand::seq::index::sample(&mut rng, code.n, code.t).into_vec();
        let hot_mask = BitWord::from_support(code.n, hot.iter().copied());
        let cs = code.codeset(i)?;

        let mut avoided = false;
        for cw in &cs.codewords {
            words_checked += 1;
            if weight.passed() && weight_violation(code.kind, code.w, cw.weight()) {
                weight = CheckResult::Fail {
                    detail: FailDetail::Weight {
                        codeset: i,
                        codeword: cw.support().to_vec(),
                        weight: cw.weight(),
                    },
                };
            }
            let mask = cw.to_mask();
            if disjoint.passed() {
                match seen.get(&mask) {
                    Some(&other) if other != i => {
                        disjoint = CheckResult::Fail {
                            detail: FailDetail::Disjoint {
                                codeset_a: other,
                                codeset_b: i,
                                codeword: cw.support().to_vec(),
                            },
                        };
                    }
                    None => {
                        seen.insert(mask.clone(), i);
                    }
                    _ => {}
                }
            }
            if !mask.intersects(&hot_mask) {
                avoided = true;
            }
        }
        pairs += 1;
        if cooling.passed() && !avoided {
            cooling = CheckResult::Fail {
                detail: FailDetail::Cooling {
                    codeset: i,
                    hot: hot.clone(),
                },
            };
        }
    }
    if let CheckResult::Pass { checked } = &mut weight {
        *checked = words_checked;
    }
    if let CheckResult::Pass { checked } = &mut disjoint {
        *checked = words_checked;
    }
    if let CheckResult::Pass { checked } = &mut cooling {
        *checked = pairs;
    }

    Ok(VerifyReport {
        mode: format!("sampled({trials}, seed={seed})"),
        codesets_checked: m.min(trials as u128),
        weight,
        disjointness: disjoint,
        cooling,
    })
}

/// Minimum Hamming distance over all pairs of codewords across all codesets.
/// `budget` caps the number of pairs scanned.
pub fn min_distance(code: &LpcCode, budget: u64) -> Result<usize> {
    let m = code.num_codesets();
    if m > budget as u128 {
        return Err(Error::BudgetExceeded {
            required: m,
            budget,
        });
    }
    let mut masks: Vec<BitWord> = Vec::new();
    for i in 0..m {
        for cw in code.codeset(i)?.codewords {
            masks.push(cw.to_mask());
        }
        let total = masks.len() as u128;
        if total * (total.saturating_sub(1)) / 2 > budget as u128 {
            return Err(Error::BudgetExceeded {
                required: total * (total - 1) / 2,
                budget,
            });
        }
    }
    let mut best = usize::MAX;
    for i in 0..masks.len() {
        for j in i + 1..masks.len() {
            best = best.min(masks[i].hamming_distance(&masks[j]));
            if best == 0 {
                return Ok(0);
            }
        }
    }
    if best == usize::MAX {
        return Err(Error::param("min distance needs at least two codewords"));
    }
    Ok(best)
}

/// Independent Turán-system test: every k-subset of the n points contains at
/// least one of the blocks. Used as an oracle for the cooling property of
/// constant-weight codesets.
pub fn is_turan_system(n: usize, k: usize, blocks: &[Vec<usize>]) -> bool {
    let universe: Vec<usize> = (0..n).collect();
    let block_masks: Vec<BitWord> = blocks
        .iter()
        .map(|b| BitWord::from_support(n, b.iter().copied()))
        .collect();
    Combinations::new(&universe, k).all(|subset| {
        let mask = BitWord::from_support(n, subset.iter().copied());
        block_masks.iter().any(|b| b.is_subset_of(&mask))
    })
}

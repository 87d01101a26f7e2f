//! Experiment configuration and the sweep runners behind the CLI.

use std::collections::BTreeMap;
use std::str::FromStr;

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::constructions::{
    convex_family, dcd_construction, e3_counterexample, ConvexKind, SidonMethod,
};
use crate::energy::{self, DEFAULT_TRIPLE_BUDGET};
use crate::error::{Error, Result};
use crate::fit::{fit_exponent, ExponentFit};
use crate::proofscope::{self, IntPoly, DEFAULT_GOOD_CONSTANT, DEFAULT_TRIPLE_SUMSET_MAX_K};
use crate::random::{instance_rng, random_dcd_set, random_set};
use crate::record::{Threshold, VerificationRecord};
use crate::search::{self, AnnealSchedule, SearchMethod, SearchWitness};
use crate::sets::{
    difference_set, has_distinct_consecutive_differences, is_convex, sumset, GroundSet,
};

/// Environment variable overriding the default resource budget.
pub const BUDGET_ENV: &str = "DCDLAB_BUDGET";

/// Upper bound on the number of sizes a size list may expand to.
pub const MAX_SIZE_LIST: usize = 1 << 20;

/// Parses `n`, `a,b,c`, `a..b` (inclusive) or `a..b:step`, comma-combined.
pub fn parse_sizes(text: &str) -> Result<Vec<u64>> {
    let bad = |m: &str| Error::InvalidParameter(format!("size list {text:?}: {m}"));
    let mut out = Vec::new();
    for item in text.split(',') {
        let item = item.trim();
        if item.is_empty() {
            return Err(bad("empty item"));
        }
        match item.split_once("..") {
            None => out.push(item.parse::<u64>().map_err(|_| bad("not an integer"))?),
            Some((lo, rest)) => {
                let rest = rest.strip_prefix('=').unwrap_or(rest);
                let (hi, step) = match rest.split_once(':') {
                    Some((hi, step)) => (hi, step.parse::<u64>().map_err(|_| bad("bad step"))?),
                    None => (rest, 1),
                };
                let lo: u64 = lo.trim().parse().map_err(|_| bad("bad range start"))?;
                let hi: u64 = hi.trim().parse().map_err(|_| bad("bad range end"))?;
                if step == 0 || lo > hi {
                    return Err(bad("empty range"));
                }
                let count = ((hi - lo) / step).saturating_add(1);
                if count > (MAX_SIZE_LIST - out.len().min(MAX_SIZE_LIST)) as u64 {
                    return Err(bad("too many sizes"));
                }
                out.extend((0..count).map(|i| lo + i * step));
            }
        }
        if out.len() > MAX_SIZE_LIST {
            return Err(bad("too many sizes"));
        }
    }
    Ok(out)
}

/// Named instance families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    /// Eulerian construction from a greedy Sidon set; size parameter is `m`.
    Dcd,
    /// Eulerian construction from a modular Sidon set; `m` must be prime.
    DcdModular,
    Squares,
    Power(u32),
    RandomGaps,
    E3,
    Interval,
    Random,
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "dcd" | "greedy" => Family::Dcd,
            "dcd-modular" | "modular" => Family::DcdModular,
            "squares" => Family::Squares,
            "random-gaps" => Family::RandomGaps,
            "e3" => Family::E3,
            "interval" => Family::Interval,
            "random" => Family::Random,
            other => match other.strip_prefix("power:") {
                Some(a) => {
                    Family::Power(a.parse().map_err(|_| {
                        Error::InvalidParameter(format!("bad exponent in {other:?}"))
                    })?)
                }
                None => return Err(Error::InvalidParameter(format!("unknown family {other:?}"))),
            },
        })
    }
}

impl std::fmt::Display for Family {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Family::Dcd => f.write_str("dcd"),
            Family::DcdModular => f.write_str("dcd-modular"),
            Family::Squares => f.write_str("squares"),
            Family::Power(a) => write!(f, "power:{a}"),
            Family::RandomGaps => f.write_str("random-gaps"),
            Family::E3 => f.write_str("e3"),
            Family::Interval => f.write_str("interval"),
            Family::Random => f.write_str("random"),
        }
    }
}

impl Family {
    /// Single-set families indexed by a size parameter.
    pub fn build(&self, size: u64, seed: u64) -> Result<GroundSet> {
        let k = size as usize;
        match self {
            Family::Squares => convex_family(ConvexKind::Squares, k),
            Family::Power(a) => convex_family(ConvexKind::Power(*a), k),
            Family::RandomGaps => convex_family(ConvexKind::RandomGaps(seed ^ size), k),
            Family::E3 => e3_counterexample(size),
            Family::Interval => GroundSet::interval(1, size as i64),
            Family::Dcd => dcd_construction(k, &SidonMethod::Greedy).map(|i| i.a),
            Family::DcdModular => dcd_construction(k, &SidonMethod::Modular).map(|i| i.a),
            Family::Random => Err(Error::InvalidParameter(
                "the random family is driven by --trials, not sizes".into(),
            )),
        }
    }
}

/// Assertion constants for the three `>>` checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Thresholds {
    pub thm1: Threshold,
    pub thm2: Threshold,
    pub thm3: Threshold,
}

/// Minimum of `|A+B|^2 / (k^2 |B|)` over all sets with distinct consecutive
/// differences, `2 <= k <= 6`, gaps in `1..=8`, and all `B ⊆ [0, 8]` with
/// `1 <= |B| <= 4`. Frozen from the exhaustive oracle in the test suite.
/// Attained already by `|B| = 1`, where `|A + B| = |A|`.
pub const THM1_ORACLE_MIN_SQUARED: (u64, u64) = (1, 1);

/// Minimum of `(|A+B| |A'+B'|)^2 / (k^3 |B| |B'|)` over `2 <= k <= 4`,
/// `A, A' ⊆ [0, 6]` containing 0 with distinct pairs of consecutive
/// differences, and `B, B' ⊆ [0, 5]` containing 0 with `|B|, |B'| <= 3`.
pub const THM2_ORACLE_MIN_SQUARED: (u64, u64) = (2, 1);

/// `c^2` for the `k^{5/4}` check: a rational lower approximation of half
/// the minimum of `max(|A+B|, |A^2+C|) / k^{5/4}` over `2 <= k <= 5`,
/// `A ⊆ [0, 8]`, and `B, C ⊆ [0, 8]` of size `k` containing 0.
pub const THM3_DEFAULT_C_SQUARED: (u64, u64) = (397, 1000);

impl Default for Thresholds {
    /// Half the small-case oracle minimum for each inequality.
    fn default() -> Self {
        let (n1, d1) = THM1_ORACLE_MIN_SQUARED;
        let (n2, d2) = THM2_ORACLE_MIN_SQUARED;
        let (n3, d3) = THM3_DEFAULT_C_SQUARED;
        Thresholds {
            thm1: Threshold::from_squared(n1, 4 * d1).expect("nonzero"),
            thm2: Threshold::from_squared(n2, 4 * d2).expect("nonzero"),
            thm3: Threshold::from_squared(n3, d3).expect("nonzero"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Csv,
    Jsonl,
}

/// Everything that determines a run's payload.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub command: String,
    pub family: Family,
    pub sizes: Vec<u64>,
    pub seed: u64,
    pub trials: usize,
    pub max_k: usize,
    pub max_b: usize,
    pub thresholds: Thresholds,
    pub good_constant: u64,
    /// Cap on generated pairs/triples in planar and energy computations.
    pub budget: u128,
    /// Cap on `|A|` for the triple sumset `A + A - A`.
    pub triple_max_k: usize,
    pub format: OutputFormat,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            command: String::new(),
            family: Family::Random,
            sizes: Vec::new(),
            seed: 0,
            trials: 100,
            max_k: 40,
            max_b: 100,
            thresholds: Thresholds::default(),
            good_constant: DEFAULT_GOOD_CONSTANT,
            budget: default_budget(),
            triple_max_k: DEFAULT_TRIPLE_SUMSET_MAX_K,
            format: OutputFormat::Csv,
        }
    }
}

/// `DCDLAB_BUDGET` if set and valid, else [`DEFAULT_TRIPLE_BUDGET`].
pub fn default_budget() -> u128 {
    std::env::var(BUDGET_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_TRIPLE_BUDGET)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum VerifyCheck {
    Thm1,
    Pigeonhole,
    Thm2,
    Thm3,
    PropConv,
    Tightness,
    EnergyIdentity,
    Theorem5,
}

impl FromStr for VerifyCheck {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "thm1" => VerifyCheck::Thm1,
            "pigeonhole" => VerifyCheck::Pigeonhole,
            "thm2" => VerifyCheck::Thm2,
            "thm3" => VerifyCheck::Thm3,
            "prop-conv" => VerifyCheck::PropConv,
            "tightness" => VerifyCheck::Tightness,
            "energy-identity" => VerifyCheck::EnergyIdentity,
            "theorem5" => VerifyCheck::Theorem5,
            other => return Err(Error::InvalidParameter(format!("unknown check {other:?}"))),
        })
    }
}

fn sweep_sizes<F>(cfg: &ExperimentConfig, f: F) -> Result<Vec<VerificationRecord>>
where
    F: Fn(u64) -> Result<VerificationRecord> + Sync,
{
    if cfg.sizes.is_empty() {
        return Err(Error::InvalidParameter(format!(
            "family {} needs sizes",
            cfg.family
        )));
    }
    cfg.sizes.par_iter().map(|&s| f(s)).collect()
}

fn sweep_trials<F>(cfg: &ExperimentConfig, f: F) -> Result<Vec<VerificationRecord>>
where
    F: Fn(u64, &mut rand_chacha::ChaCha8Rng) -> Result<VerificationRecord> + Sync,
{
    (0..cfg.trials as u64)
        .into_par_iter()
        .map(|i| {
            let mut rng = instance_rng(cfg.seed, i);
            f(i, &mut rng).map(|r| r.param("seed", cfg.seed).param("trial", i))
        })
        .collect()
}

/// A random pair `(A, B)` with `A` having distinct consecutive differences,
/// `2 <= |A| <= max_k` and `1 <= |B| <= max_b`.
pub fn random_dcd_pair(
    rng: &mut impl Rng,
    max_k: usize,
    max_b: usize,
) -> Result<(GroundSet, GroundSet)> {
    let k = rng.gen_range(2..=max_k.max(2));
    let bsize = rng.gen_range(1..=max_b.max(1));
    let max_gap = (k as i64 - 1) * rng.gen_range(1..=4);
    let a = random_dcd_set(rng, k, max_gap, 1000)?;
    let span = bsize * rng.gen_range(1..=4);
    let b = random_set(rng, bsize, -500, span)?;
    Ok((a, b))
}

pub fn run_verify(check: VerifyCheck, cfg: &ExperimentConfig) -> Result<Vec<VerificationRecord>> {
    let fam = cfg.family;
    let name = fam.to_string();
    let th = cfg.thresholds;
    match check {
        VerifyCheck::Thm1 | VerifyCheck::Pigeonhole => {
            let one = |a: &GroundSet, b: &GroundSet| match check {
                VerifyCheck::Thm1 => proofscope::check_theorem1(a, b, th.thm1, &name),
                _ => proofscope::check_pigeonhole(a, b, cfg.good_constant, &name),
            };
            match fam {
                Family::Random => sweep_trials(cfg, |_, rng| {
                    let (a, b) = random_dcd_pair(rng, cfg.max_k, cfg.max_b)?;
                    one(&a, &b)
                }),
                Family::Dcd | Family::DcdModular => sweep_sizes(cfg, |m| {
                    let method = if fam == Family::Dcd {
                        SidonMethod::Greedy
                    } else {
                        SidonMethod::Modular
                    };
                    let inst = dcd_construction(m as usize, &method)?;
                    Ok(one(&inst.a, &inst.b)?.param("m", m))
                }),
                _ => sweep_sizes(cfg, |k| {
                    let a = fam.build(k, cfg.seed)?;
                    one(&a, &a)
                }),
            }
        }
        VerifyCheck::Thm2 => match fam {
            Family::Random => sweep_trials(cfg, |_, rng| {
                let k = rng.gen_range(2..=cfg.max_k.max(2));
                let a = random_set(rng, k, 0, 4 * k)?;
                let a2 = random_dcd_set(rng, k, 2 * k as i64, 0)?;
                let max_b = cfg.max_b.max(1);
                let (nb, nb2) = (rng.gen_range(1..=max_b), rng.gen_range(1..=max_b));
                let b = random_set(rng, nb, 0, 4 * max_b)?;
                let b2 = random_set(rng, nb2, 0, 4 * max_b)?;
                proofscope::check_theorem2(&a, &a2, &b, &b2, th.thm2, &name)
            }),
            _ => sweep_sizes(cfg, |k| {
                let a = GroundSet::interval(1, k as i64)?;
                let a2 = fam.build(k, cfg.seed)?;
                proofscope::check_theorem2(&a, &a2, &a, &a, th.thm2, &name)
            }),
        },
        VerifyCheck::Thm3 => match fam {
            Family::Random => sweep_trials(cfg, |_, rng| {
                let k = rng.gen_range(2..=cfg.max_k.max(2));
                let a = random_set(rng, k, 0, 4 * k)?;
                let b = random_set(rng, k, 0, 4 * k)?;
                let c = random_set(rng, k, 0, 4 * k)?;
                proofscope::check_theorem3(&a, &b, &c, &IntPoly::square(), th.thm3, &name)
            }),
            _ => sweep_sizes(cfg, |k| {
                let a = fam.build(k, cfg.seed)?;
                let i = GroundSet::interval(1, a.len() as i64)?;
                proofscope::check_theorem3(&a, &i, &i, &IntPoly::square(), th.thm3, &name)
            }),
        },
        VerifyCheck::PropConv => sweep_sizes(cfg, |k| {
            let a = fam.build(k, cfg.seed)?;
            proofscope::check_convex_proposition(&a, cfg.triple_max_k, &name)
        }),
        VerifyCheck::Tightness => sweep_sizes(cfg, |m| {
            let method = if fam == Family::DcdModular {
                SidonMethod::Modular
            } else {
                SidonMethod::Greedy
            };
            proofscope::check_tightness(m as usize, &method)
        }),
        VerifyCheck::EnergyIdentity => sweep_trials(cfg, |_, rng| {
            let k = rng.gen_range(1..=cfg.max_k.max(1));
            let a = random_set(rng, k, -(3 * k as i64), 6 * k)?;
            let (lhs, rhs) = energy::energy_pair_identity(&a)?;
            let mut rec = VerificationRecord::new("energy-identity", &name, k as u64);
            rec.quantity("planar", lhs).quantity("e3", rhs);
            rec.headline(lhs, rhs as f64, Some(lhs == rhs));
            Ok(rec)
        }),
        VerifyCheck::Theorem5 => sweep_sizes(cfg, |k| {
            let a = fam.build(k, cfg.seed)?;
            let mut rec = energy::schoen_shkredov_report(&a, &name, cfg.budget)?;
            let pass = theorem5_assertions(&rec)?;
            rec.pass = Some(pass);
            Ok(rec)
        }),
    }
}

/// Exact facts on a popular-difference report: the band mass equals `|G|`,
/// `Δ |P| >= k^2 / (2 (floor(log2 k) + 1))`, and Cauchy-Schwarz.
pub fn theorem5_assertions(rec: &VerificationRecord) -> Result<bool> {
    let get = |key: &str| {
        rec.get(key)
            .ok_or_else(|| Error::InvalidParameter(format!("record lacks {key}")))
    };
    let k = u128::from(rec.k);
    let levels = u128::from(rec.k.ilog2()) + 1;
    let mass_ok = get("band_mass")? == get("graph_edges")?;
    let dyadic_ok = get("delta")? * get("popular")? * 2 * levels >= k * k;
    Ok(mass_ok && dyadic_ok && energy::cauchy_schwarz_holds(rec)?)
}

/// Report-only measurements of one set.
pub fn measure_set(a: &GroundSet, family: &str) -> Result<VerificationRecord> {
    let k = a.len();
    let plus = sumset(a, a)?;
    let minus = difference_set(a, a)?;
    let r = energy::rep_fn(a, a)?;
    let e3 = r.moment(3)?;
    let mut rec = VerificationRecord::new("measure", family, k as u64);
    rec.quantity("sumset", plus.len() as u64)
        .quantity("diff_set", minus.len() as u64)
        .quantity("e2", r.moment(2)?)
        .quantity("e3", e3)
        .quantity("convex", u8::from(is_convex(a)))
        .quantity("dcd", u8::from(has_distinct_consecutive_differences(a)));
    if k >= 2 {
        let rich = energy::difference_richness(a)?;
        rec.params.insert(
            "richness".into(),
            format!("{}/{}", rich.numer(), rich.denom()),
        );
    }
    rec.headline(e3, (k as f64).powi(3), None);
    Ok(rec)
}

pub fn run_measure(cfg: &ExperimentConfig) -> Result<Vec<VerificationRecord>> {
    let name = cfg.family.to_string();
    sweep_sizes(cfg, |k| {
        let a = cfg.family.build(k, cfg.seed)?;
        Ok(measure_set(&a, &name)?.param("size", k))
    })
}

/// Search options not covered by [`ExperimentConfig`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchConfig {
    pub method: SearchMethod,
    pub max_gap: i64,
    pub schedule: AnnealSchedule,
}

pub fn run_search(cfg: &ExperimentConfig, search_cfg: &SearchConfig) -> Result<Vec<SearchWitness>> {
    if cfg.sizes.is_empty() {
        return Err(Error::InvalidParameter("search needs --k".into()));
    }
    cfg.sizes
        .iter()
        .map(|&k| match search_cfg.method {
            SearchMethod::Exhaustive => {
                search::exhaustive_min(k as usize, search_cfg.max_gap, cfg.budget)
            }
            SearchMethod::Anneal => search::anneal_min(
                k as usize,
                search_cfg.max_gap,
                cfg.seed,
                &search_cfg.schedule,
            ),
        })
        .collect()
}

/// An exponent fitted for one `(check, family)` group of records.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FitRow {
    pub check: String,
    pub family: String,
    pub quantity: String,
    pub fit: ExponentFit,
}

/// Fits `quantity` (or the headline `measured` value) against `k`, grouped
/// by `(check, family)` in sorted order.
pub fn run_report(records: &[VerificationRecord], quantity: &str) -> Result<Vec<FitRow>> {
    let mut groups: BTreeMap<(String, String), Vec<(f64, f64)>> = BTreeMap::new();
    for r in records {
        let v = if quantity == "measured" {
            Some(r.measured)
        } else {
            r.get(quantity)
        };
        if let Some(v) = v {
            groups
                .entry((r.check.clone(), r.family.clone()))
                .or_default()
                .push((r.k as f64, v as f64));
        }
    }
    if groups.is_empty() {
        return Err(Error::InvalidParameter(format!(
            "no record carries {quantity:?}"
        )));
    }
    groups
        .into_iter()
        .map(|((check, family), pts)| {
            Ok(FitRow {
                check,
                family,
                quantity: quantity.to_string(),
                fit: fit_exponent(&pts)?,
            })
        })
        .collect()
}

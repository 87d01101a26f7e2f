//! Minimizing `|A + A|` over sets of size `k` with distinct consecutive
//! differences: exhaustive enumeration for tiny sizes, seeded simulated
//! annealing beyond.
//!
//! Sets are encoded by their gap vectors with `a_1 = 0`; gaps are distinct
//! values in `1..=max_gap` and their order matters.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::sets::{has_distinct_consecutive_differences, sumset, GroundSet};

pub const DEFAULT_EXHAUSTIVE_BUDGET: u128 = 20_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SearchMethod {
    Exhaustive,
    Anneal,
}

/// Geometric cooling from `t_start` to `t_end` over `iterations` steps per
/// restart; `chains` independent chains are merged by best objective.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AnnealSchedule {
    pub iterations: u64,
    pub restarts: u32,
    pub chains: u32,
    pub t_start: f64,
    pub t_end: f64,
    /// Probability of a swap move; otherwise one gap is replaced by an unused value.
    pub swap_prob: f64,
}

impl Default for AnnealSchedule {
    fn default() -> Self {
        AnnealSchedule {
            iterations: 4_000,
            restarts: 4,
            chains: 4,
            t_start: 2.0,
            t_end: 0.02,
            swap_prob: 0.5,
        }
    }
}

/// A set with distinct consecutive differences and its exact `|A + A|`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchWitness {
    pub set: GroundSet,
    pub gaps: Vec<i64>,
    pub objective: usize,
    pub method: SearchMethod,
    pub max_gap: i64,
    pub seed: Option<u64>,
    /// Gap vectors evaluated.
    pub iterations: u64,
    pub schedule: Option<AnnealSchedule>,
}

impl SearchWitness {
    fn from_gaps(gaps: Vec<i64>, method: SearchMethod, max_gap: i64) -> Result<Self> {
        let set = set_from_gaps(&gaps)?;
        let objective = sumset(&set, &set)?.len();
        Ok(SearchWitness {
            set,
            gaps,
            objective,
            method,
            max_gap,
            seed: None,
            iterations: 0,
            schedule: None,
        })
    }

    /// Recomputes everything derivable and checks it against the stored fields.
    pub fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(Error::InvalidParameter(format!("invalid witness: {m}")));
        if set_from_gaps(&self.gaps)? != self.set {
            return bad("gaps do not generate the set");
        }
        if !has_distinct_consecutive_differences(&self.set) {
            return bad("gaps are not distinct");
        }
        if self.gaps.iter().any(|&g| g < 1 || g > self.max_gap) {
            return bad("gap outside 1..=max_gap");
        }
        if sumset(&self.set, &self.set)?.len() != self.objective {
            return bad("objective does not match |A+A|");
        }
        Ok(())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("witness serialization is infallible")
    }

    /// Parses and validates a serialized witness.
    pub fn from_json(input: &[u8]) -> Result<Self> {
        let w: SearchWitness = serde_json::from_slice(input).map_err(|e| Error::Parse {
            line: e.line(),
            msg: e.to_string(),
        })?;
        w.validate()?;
        Ok(w)
    }
}

/// `{0, d_1, d_1 + d_2, ...}`.
pub fn set_from_gaps(gaps: &[i64]) -> Result<GroundSet> {
    let mut v = Vec::with_capacity(gaps.len() + 1);
    let mut x = 0i64;
    v.push(0);
    for &g in gaps {
        if g < 1 {
            return Err(Error::InvalidParameter(format!("gap {g} is not positive")));
        }
        x = x.checked_add(g).ok_or(Error::Overflow)?;
        v.push(crate::sets::check_range(x)?);
    }
    GroundSet::new(v)
}

fn objective(gaps: &[i64], buf: &mut Vec<i64>, sums: &mut Vec<i64>) -> usize {
    buf.clear();
    buf.push(0);
    let mut x = 0;
    for &g in gaps {
        x += g;
        buf.push(x);
    }
    sums.clear();
    for (i, &p) in buf.iter().enumerate() {
        for &q in &buf[i..] {
            sums.push(p + q);
        }
    }
    sums.sort_unstable();
    sums.dedup();
    sums.len()
}

fn check_feasible(k: usize, max_gap: i64) -> Result<()> {
    if k < 2 {
        return Err(Error::TooSmall { need: 2, got: k });
    }
    if max_gap < (k as i64 - 1) {
        return Err(Error::Infeasible(format!(
            "{} distinct gaps cannot fit in 1..={max_gap}",
            k - 1
        )));
    }
    Ok(())
}

/// Number of gap vectors: `M (M-1) ... (M-k+2)`.
pub fn gap_vector_count(k: usize, max_gap: i64) -> u128 {
    (0..k as i64 - 1).fold(1u128, |acc, i| {
        acc.saturating_mul((max_gap - i).max(0) as u128)
    })
}

/// Global minimizer of `|A + A|`; ties go to the lexicographically smallest gap vector.
pub fn exhaustive_min(k: usize, max_gap: i64, budget: u128) -> Result<SearchWitness> {
    check_feasible(k, max_gap)?;
    let count = gap_vector_count(k, max_gap);
    if count > budget {
        return Err(Error::BudgetExceeded {
            needed: count,
            budget,
        });
    }
    struct Dfs {
        used: Vec<bool>,
        gaps: Vec<i64>,
        best: Option<(usize, Vec<i64>)>,
        buf: Vec<i64>,
        sums: Vec<i64>,
        len: usize,
    }
    fn go(st: &mut Dfs) {
        if st.gaps.len() == st.len {
            let obj = objective(&st.gaps, &mut st.buf, &mut st.sums);
            if st.best.as_ref().is_none_or(|(b, _)| obj < *b) {
                st.best = Some((obj, st.gaps.clone()));
            }
            return;
        }
        for g in 1..st.used.len() {
            if !st.used[g] {
                st.used[g] = true;
                st.gaps.push(g as i64);
                go(st);
                st.gaps.pop();
                st.used[g] = false;
            }
        }
    }
    let mut st = Dfs {
        used: vec![false; max_gap as usize + 1],
        gaps: Vec::with_capacity(k - 1),
        best: None,
        buf: Vec::new(),
        sums: Vec::new(),
        len: k - 1,
    };
    go(&mut st);
    let (_, gaps) = st.best.expect("feasible space is nonempty");
    let mut w = SearchWitness::from_gaps(gaps, SearchMethod::Exhaustive, max_gap)?;
    w.iterations = count as u64;
    Ok(w)
}

fn run_chain(
    k: usize,
    max_gap: i64,
    schedule: &AnnealSchedule,
    rng: &mut ChaCha8Rng,
) -> (usize, Vec<i64>, u64) {
    let n = k - 1;
    let pool: Vec<i64> = (1..=max_gap).collect();
    let (mut buf, mut sums) = (Vec::new(), Vec::new());
    let mut best: Option<(usize, Vec<i64>)> = None;
    let mut evaluated = 0u64;
    let cooling = if schedule.iterations > 1 {
        (schedule.t_end / schedule.t_start).powf(1.0 / (schedule.iterations - 1) as f64)
    } else {
        1.0
    };
    let consider = |obj: usize, g: &Vec<i64>, best: &mut Option<(usize, Vec<i64>)>| {
        let better = match best {
            None => true,
            Some((b, bg)) => obj < *b || (obj == *b && g < bg),
        };
        if better {
            *best = Some((obj, g.clone()));
        }
    };
    for _ in 0..schedule.restarts.max(1) {
        let mut cur: Vec<i64> = pool.choose_multiple(rng, n).copied().collect();
        cur.shuffle(rng);
        let mut cur_obj = objective(&cur, &mut buf, &mut sums);
        evaluated += 1;
        consider(cur_obj, &cur, &mut best);
        let mut temp = schedule.t_start;
        for _ in 0..schedule.iterations {
            let mut cand = cur.clone();
            let can_swap = n >= 2;
            let can_replace = (max_gap as usize) > n;
            let swap = match (can_swap, can_replace) {
                (false, false) => break,
                (true, false) => true,
                (false, true) => false,
                (true, true) => rng.gen_bool(schedule.swap_prob.clamp(0.0, 1.0)),
            };
            if swap {
                let i = rng.gen_range(0..n);
                let mut j = rng.gen_range(0..n - 1);
                if j >= i {
                    j += 1;
                }
                cand.swap(i, j);
            } else {
                let i = rng.gen_range(0..n);
                let unused: Vec<i64> = pool.iter().copied().filter(|v| !cur.contains(v)).collect();
                cand[i] = *unused.choose(rng).expect("an unused gap exists");
            }
            let obj = objective(&cand, &mut buf, &mut sums);
            evaluated += 1;
            let delta = obj as f64 - cur_obj as f64;
            if delta <= 0.0 || rng.gen::<f64>() < (-delta / temp).exp() {
                cur = cand;
                cur_obj = obj;
                consider(cur_obj, &cur, &mut best);
            }
            temp *= cooling;
        }
    }
    let (obj, gaps) = best.expect("at least one state evaluated");
    (obj, gaps, evaluated)
}

/// Seeded simulated annealing over gap vectors. Deterministic given
/// `(seed, schedule)`; chains use independent streams of one seed.
pub fn anneal_min(
    k: usize,
    max_gap: i64,
    seed: u64,
    schedule: &AnnealSchedule,
) -> Result<SearchWitness> {
    check_feasible(k, max_gap)?;
    let results: Vec<(usize, Vec<i64>, u64)> = (0..schedule.chains.max(1))
        .into_par_iter()
        .map(|chain| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(u64::from(chain));
            run_chain(k, max_gap, schedule, &mut rng)
        })
        .collect();
    let evaluated = results.iter().map(|r| r.2).sum();
    let (_, gaps, _) = results
        .into_iter()
        .min_by(|x, y| (x.0, &x.1).cmp(&(y.0, &y.1)))
        .expect("at least one chain");
    let mut w = SearchWitness::from_gaps(gaps, SearchMethod::Anneal, max_gap)?;
    w.seed = Some(seed);
    w.iterations = evaluated;
    w.schedule = Some(*schedule);
    Ok(w)
}

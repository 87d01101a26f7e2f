//! Generators for the set families studied here: Sidon sets, the Eulerian
//! construction of sets with distinct consecutive differences whose sumset
//! with an interval is small, convex families and the energy counterexample.

use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::sets::{check_range, has_distinct_consecutive_differences, GroundSet};

/// First `m` terms of the greedy (Mian-Chowla) Sidon sequence `1, 2, 4, 8, 13, ...`.
pub fn sidon_greedy(m: usize) -> Result<GroundSet> {
    if m == 0 {
        return Err(Error::InvalidParameter(
            "Sidon set size must be positive".into(),
        ));
    }
    let mut elems: Vec<i64> = vec![1];
    let mut diffs: HashSet<i64> = HashSet::new();
    let mut candidate: i64 = 1;
    while elems.len() < m {
        candidate = candidate.checked_add(1).ok_or(Error::Overflow)?;
        check_range(candidate)?;
        if elems.iter().all(|&e| !diffs.contains(&(candidate - e))) {
            diffs.extend(elems.iter().map(|&e| candidate - e));
            elems.push(candidate);
        }
    }
    GroundSet::from_sorted(elems)
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// `{2pa + (a^2 mod p) : 0 <= a < p}` for a prime `p`.
pub fn sidon_modular(p: u64) -> Result<GroundSet> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    // 2p^2 must stay in range.
    if p > (1 << 30) {
        return Err(Error::Overflow);
    }
    let p = p as i64;
    GroundSet::from_sorted((0..p).map(|a| 2 * p * a + (a * a) % p).collect())
}

/// Nonzero differences pairwise distinct.
pub fn is_sidon(s: &GroundSet) -> bool {
    let e = s.elements();
    let mut seen = HashSet::with_capacity(e.len() * e.len() / 2);
    for (i, &x) in e.iter().enumerate() {
        for &y in &e[..i] {
            if !seen.insert(x - y) {
                return false;
            }
        }
    }
    true
}

/// A list of Sidon-set values whose consecutive differences are nonzero and
/// pairwise distinct.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EulerianList {
    entries: Vec<i64>,
}

impl EulerianList {
    /// Wraps an explicit list. Validity is checked where the list is consumed.
    pub fn from_entries(entries: Vec<i64>) -> Self {
        EulerianList { entries }
    }

    pub fn entries(&self) -> &[i64] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// `entries[i+1] - entries[i]` for each consecutive pair.
    pub fn differences(&self) -> Vec<i64> {
        self.entries.windows(2).map(|w| w[1] - w[0]).collect()
    }
}

/// Hierholzer's algorithm on the complete symmetric digraph over `0..m`.
/// Out-neighbours of `v` are visited in cyclic value order `v+1, v+2, ...`
/// (mod `m`). The closed walk has `m(m-1) + 1` vertices and starts and ends at 0.
fn complete_digraph_circuit(m: usize) -> Vec<usize> {
    // offset[v] is the next unused arc v -> (v + offset) mod m.
    let mut offset = vec![1usize; m];
    let mut stack = vec![0usize];
    let mut circuit = Vec::with_capacity(m * (m - 1) + 1);
    while let Some(&v) = stack.last() {
        if offset[v] < m {
            let w = (v + offset[v]) % m;
            offset[v] += 1;
            stack.push(w);
        } else {
            circuit.push(stack.pop().unwrap());
        }
    }
    circuit.reverse();
    circuit
}

/// Vertex sequence of an Eulerian circuit of the complete symmetric digraph on
/// `s`, truncated to its first `m(m-1)` vertices.
pub fn eulerian_list(s: &GroundSet) -> Result<EulerianList> {
    let m = s.len();
    if m < 3 {
        return Err(Error::TooSmall { need: 3, got: m });
    }
    if !is_sidon(s) {
        return Err(Error::NotSidon);
    }
    let mut walk = complete_digraph_circuit(m);
    debug_assert_eq!(walk.len(), m * (m - 1) + 1);
    walk.truncate(m * (m - 1));
    let values = s.elements();
    Ok(EulerianList {
        entries: walk.into_iter().map(|i| values[i]).collect(),
    })
}

/// Which Sidon set feeds the distinct-consecutive-differences construction.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SidonMethod {
    /// Greedy sequence translated to start at 0.
    Greedy,
    /// `sidon_modular(m)`; `m` must be prime.
    Modular,
    /// A caller-supplied Sidon set.
    Explicit(GroundSet),
}

/// Output of [`dcd_construction`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DcdInstance {
    pub a: GroundSet,
    pub b: GroundSet,
    pub sidon: GroundSet,
    /// Scale separating consecutive blocks: `2 * max(S) + 1`.
    pub scale: i64,
    pub list: EulerianList,
}

impl DcdInstance {
    /// `k = m(m-1)`.
    pub fn k(&self) -> usize {
        self.a.len()
    }
}

/// Builds `A = {iQ + L_i}` and `B = {jQ}` for `1 <= i, j <= k` from a Sidon
/// set `S` with `min(S) >= 0`, its Eulerian list `L` and `Q = 2 max(S) + 1`.
pub fn dcd_construction(m: usize, method: &SidonMethod) -> Result<DcdInstance> {
    if m < 3 {
        return Err(Error::TooSmall { need: 3, got: m });
    }
    let sidon = match method {
        SidonMethod::Greedy => {
            let g = sidon_greedy(m)?;
            crate::sets::dilate_translate(&g, 1, -g.min())?
        }
        SidonMethod::Modular => sidon_modular(m as u64)?,
        SidonMethod::Explicit(s) => {
            if s.len() != m {
                return Err(Error::SizeMismatch {
                    left: s.len(),
                    right: m,
                });
            }
            s.clone()
        }
    };
    let list = eulerian_list(&sidon)?;
    dcd_from_list(sidon, list)
}

/// The construction for an explicit list; `list` must be an Eulerian list of `sidon`.
pub fn dcd_from_list(sidon: GroundSet, list: EulerianList) -> Result<DcdInstance> {
    if sidon.min() < 0 {
        return Err(Error::InvalidParameter(
            "Sidon set must be nonnegative".into(),
        ));
    }
    let scale = sidon
        .max()
        .checked_mul(2)
        .and_then(|v| v.checked_add(1))
        .ok_or(Error::Overflow)?;
    let k = list.len() as i64;
    let mut a = Vec::with_capacity(list.len());
    for (i, &l) in (1..=k).zip(list.entries()) {
        let v = i
            .checked_mul(scale)
            .and_then(|v| v.checked_add(l))
            .ok_or(Error::Overflow)?;
        a.push(check_range(v)?);
    }
    let mut b = Vec::with_capacity(list.len());
    for j in 1..=k {
        b.push(check_range(j.checked_mul(scale).ok_or(Error::Overflow)?)?);
    }
    let a = GroundSet::new(a)?;
    if !has_distinct_consecutive_differences(&a) {
        return Err(Error::NotDcd);
    }
    Ok(DcdInstance {
        a,
        b: GroundSet::from_sorted(b)?,
        sidon,
        scale,
        list,
    })
}

/// Convex family selector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ConvexKind {
    /// `{i^2 : 1 <= i <= k}`.
    Squares,
    /// `{i^alpha : 1 <= i <= k}`, `alpha >= 2`.
    Power(u32),
    /// Starts at 0; each gap exceeds the previous by a seeded draw from `1..=8`.
    RandomGaps(u64),
}

pub fn convex_family(kind: ConvexKind, k: usize) -> Result<GroundSet> {
    if k == 0 {
        return Err(Error::InvalidParameter("k must be positive".into()));
    }
    let values: Vec<i64> = match kind {
        ConvexKind::Squares => power_values(2, k)?,
        ConvexKind::Power(alpha) => {
            if alpha < 2 {
                return Err(Error::InvalidParameter(format!("exponent {alpha} < 2")));
            }
            power_values(alpha, k)?
        }
        ConvexKind::RandomGaps(seed) => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut out = Vec::with_capacity(k);
            let mut x: i64 = 0;
            let mut gap: i64 = 0;
            out.push(0);
            for _ in 1..k {
                gap = gap
                    .checked_add(rng.gen_range(1..=8))
                    .ok_or(Error::Overflow)?;
                x = x.checked_add(gap).ok_or(Error::Overflow)?;
                out.push(check_range(x)?);
            }
            out
        }
    };
    GroundSet::from_sorted(values)
}

fn power_values(alpha: u32, k: usize) -> Result<Vec<i64>> {
    (1..=k as i64)
        .map(|i| {
            i.checked_pow(alpha)
                .ok_or(Error::Overflow)
                .and_then(check_range)
        })
        .collect()
}

/// `k * [k/10]  ∪  (k+1) * [k/10]`, a set with distinct consecutive
/// differences and large third energy.
pub fn e3_counterexample(k: u64) -> Result<GroundSet> {
    if k < 10 || !k.is_multiple_of(10) {
        return Err(Error::NotDivisible {
            value: k,
            divisor: 10,
        });
    }
    let n = (k / 10) as i64;
    let d = k as i64;
    let mut v = Vec::with_capacity(2 * n as usize);
    for i in 1..=n {
        v.push(check_range(d.checked_mul(i).ok_or(Error::Overflow)?)?);
        v.push(check_range((d + 1).checked_mul(i).ok_or(Error::Overflow)?)?);
    }
    // The two arms never meet: k*i = (k+1)*j forces (k+1) | i, out of range.
    let set = GroundSet::new(v)?;
    debug_assert_eq!(set.len() as i64, 2 * n);
    Ok(set)
}

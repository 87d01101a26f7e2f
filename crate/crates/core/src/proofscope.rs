//! Instrumented versions of the sumset lower-bound arguments: the interval
//! and box tables behind the pigeonhole counts, plus checkers that compare
//! measured sizes against each inequality with an explicit constant.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::constructions::{dcd_construction, SidonMethod};
use crate::error::{Error, Result};
use crate::record::{Threshold, VerificationRecord};
use crate::sets::{
    difference_set, has_distinct_consecutive_differences, has_distinct_pairs, is_convex, sumset,
    GroundSet,
};

/// Default goodness constant `G`: a window is good when `|J| <= G |S| / k`.
pub const DEFAULT_GOOD_CONSTANT: u64 = 100;

/// Default cap on `|A|` for the triple sumset `A + A - A`.
pub const DEFAULT_TRIPLE_SUMSET_MAX_K: usize = 300;

/// One window `J_b(i) = (a_i + b, a_{i+1} + b] ∩ S`, stored as a run of
/// consecutive elements of `S` starting at index `start`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntervalRow {
    pub b: i64,
    /// 1-based gap index.
    pub i: usize,
    pub lo: i64,
    pub hi: i64,
    pub start: usize,
    pub size: usize,
    pub good: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntervalTable {
    rows: Vec<IntervalRow>,
    sumset: GroundSet,
    k: usize,
    b_len: usize,
    good_constant: u64,
}

/// Indices `[start, end)` of the elements of `s` in `(lo, hi]`.
fn window(s: &[i64], lo: i64, hi: i64) -> (usize, usize) {
    let start = s.partition_point(|&x| x <= lo);
    let end = s.partition_point(|&x| x <= hi);
    (start, end)
}

/// `size * k <= G * |S|`.
fn is_good(size: usize, k: usize, g: u64, s_len: usize) -> bool {
    size as u128 * k as u128 <= u128::from(g) * s_len as u128
}

pub fn build_interval_table(
    a: &GroundSet,
    b: &GroundSet,
    good_constant: u64,
) -> Result<IntervalTable> {
    if a.len() < 2 {
        return Err(Error::TooSmall {
            need: 2,
            got: a.len(),
        });
    }
    if !has_distinct_consecutive_differences(a) {
        return Err(Error::NotDcd);
    }
    let s = sumset(a, b)?;
    let k = a.len();
    let se = s.elements();
    let ae = a.elements();
    let mut rows = Vec::with_capacity(b.len() * (k - 1));
    for bv in b.iter() {
        for i in 0..k - 1 {
            let (lo, hi) = (ae[i] + bv, ae[i + 1] + bv);
            let (start, end) = window(se, lo, hi);
            let size = end - start;
            rows.push(IntervalRow {
                b: bv,
                i: i + 1,
                lo,
                hi,
                start,
                size,
                good: is_good(size, k, good_constant, se.len()),
            });
        }
    }
    Ok(IntervalTable {
        rows,
        sumset: s,
        k,
        b_len: b.len(),
        good_constant,
    })
}

impl IntervalTable {
    pub fn rows(&self) -> &[IntervalRow] {
        &self.rows
    }

    pub fn sumset(&self) -> &GroundSet {
        &self.sumset
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn good_constant(&self) -> u64 {
        self.good_constant
    }

    /// Rows for each `b`, in increasing order of `b`.
    pub fn rows_by_b(&self) -> impl Iterator<Item = &[IntervalRow]> {
        self.rows.chunks(self.k - 1)
    }

    pub fn good_count(&self) -> usize {
        self.rows.iter().filter(|r| r.good).count()
    }

    /// Exact structural facts used by the pigeonhole step.
    pub fn pigeonhole(&self) -> PigeonholeReport {
        let s_len = self.sumset.len();
        let g = u128::from(self.good_constant);
        let k = self.k as u128;
        let mut rep = PigeonholeReport {
            disjoint: true,
            row_sums_bounded: true,
            membership: true,
            good_count_bounded: true,
            min_good_per_b: usize::MAX,
            max_row_sum: 0,
        };
        for rows in self.rows_by_b() {
            rep.disjoint &= rows
                .windows(2)
                .all(|w| w[0].start + w[0].size <= w[1].start);
            let sum: usize = rows.iter().map(|r| r.size).sum();
            rep.max_row_sum = rep.max_row_sum.max(sum);
            rep.row_sums_bounded &= sum <= s_len;
            rep.membership &= rows
                .iter()
                .all(|r| r.size >= 1 && self.sumset.elements()[r.start + r.size - 1] == r.hi);
            let good = rows.iter().filter(|r| r.good).count();
            rep.min_good_per_b = rep.min_good_per_b.min(good);
            // good >= (k - 1) - k / G
            rep.good_count_bounded &= good as u128 * g + k >= (k - 1) * g;
        }
        rep
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PigeonholeReport {
    pub disjoint: bool,
    pub row_sums_bounded: bool,
    pub membership: bool,
    pub good_count_bounded: bool,
    pub min_good_per_b: usize,
    pub max_row_sum: usize,
}

impl PigeonholeReport {
    pub fn all_hold(&self) -> bool {
        self.disjoint && self.row_sums_bounded && self.membership && self.good_count_bounded
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunCount {
    /// Distinct runs `(start, length)` among good rows.
    pub distinct: usize,
    /// Good rows whose run was already produced by another good row.
    pub collisions: usize,
    /// `|S| * ceil(G |S| / k)`, the number of runs short enough to be good.
    pub cap: u128,
}

pub fn count_distinct_good_runs(table: &IntervalTable) -> RunCount {
    let runs: HashSet<(usize, usize)> = table
        .rows
        .iter()
        .filter(|r| r.good)
        .map(|r| (r.start, r.size))
        .collect();
    let s_len = table.sumset.len() as u128;
    let k = table.k as u128;
    let cap = s_len * (u128::from(table.good_constant) * s_len).div_ceil(k);
    RunCount {
        distinct: runs.len(),
        collisions: table.good_count() - runs.len(),
        cap,
    }
}

/// Full proof-level pigeonhole check for one `(A, B)`.
pub fn check_pigeonhole(
    a: &GroundSet,
    b: &GroundSet,
    good_constant: u64,
    family: &str,
) -> Result<VerificationRecord> {
    let table = build_interval_table(a, b, good_constant)?;
    let ph = table.pigeonhole();
    let runs = count_distinct_good_runs(&table);
    let cap_ok = runs.distinct as u128 <= runs.cap;
    let mut rec = VerificationRecord::new("pigeonhole", family, a.len() as u64)
        .param("good_constant", good_constant);
    rec.quantity("b_size", b.len() as u64)
        .quantity("sumset", table.sumset.len() as u64)
        .quantity("rows", table.rows.len() as u64)
        .quantity("good_rows", table.good_count() as u64)
        .quantity("min_good_per_b", ph.min_good_per_b as u64)
        .quantity("max_row_sum", ph.max_row_sum as u64)
        .quantity("distinct_runs", runs.distinct as u64)
        .quantity("collisions", runs.collisions as u64)
        .quantity("run_cap", runs.cap);
    rec.headline(
        runs.distinct as u128,
        runs.cap as f64,
        Some(ph.all_hold() && cap_ok),
    );
    Ok(rec)
}

/// `|A + B| >= c |A| |B|^{1/2}`, compared as `|A+B|^2 >= c^2 k^2 |B|`.
pub fn check_theorem1(
    a: &GroundSet,
    b: &GroundSet,
    c: Threshold,
    family: &str,
) -> Result<VerificationRecord> {
    if !has_distinct_consecutive_differences(a) {
        return Err(Error::NotDcd);
    }
    let s = sumset(a, b)?.len() as u128;
    let k = a.len() as u128;
    let bl = b.len() as u128;
    let pass = c.admits(s * s, 1, k * k * bl)?;
    let bound = c.c() * k as f64 * (bl as f64).sqrt();
    let mut rec = VerificationRecord::new("thm1", family, k as u64).param("c", c);
    rec.quantity("sumset", s).quantity("b_size", bl);
    rec.headline(s, bound, Some(pass));
    Ok(rec)
}

/// One box `J_{b,b'}(i)` described by its two projection sizes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoxRow {
    pub b: i64,
    pub b2: i64,
    pub i: usize,
    pub size1: usize,
    pub size2: usize,
    pub good: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoxTable {
    rows: Vec<BoxRow>,
    k: usize,
    s1_len: usize,
    s2_len: usize,
    good_constant: u64,
}

pub fn build_box_table(
    a: &GroundSet,
    a2: &GroundSet,
    b: &GroundSet,
    b2: &GroundSet,
    good_constant: u64,
) -> Result<BoxTable> {
    if a.len() < 2 {
        return Err(Error::TooSmall {
            need: 2,
            got: a.len(),
        });
    }
    if !has_distinct_pairs(a, a2)? {
        return Err(Error::NotDistinctPairs);
    }
    let s1 = sumset(a, b)?;
    let s2 = sumset(a2, b2)?;
    let k = a.len();
    let (ae, a2e) = (a.elements(), a2.elements());
    // Window sizes depend on one translate only; build both 1-D profiles first.
    let profile = |set: &[i64], shifts: &GroundSet, s: &GroundSet| -> Vec<Vec<usize>> {
        shifts
            .iter()
            .map(|t| {
                (0..k - 1)
                    .map(|i| {
                        let (st, en) = window(s.elements(), set[i] + t, set[i + 1] + t);
                        en - st
                    })
                    .collect()
            })
            .collect()
    };
    let p1 = profile(ae, b, &s1);
    let p2 = profile(a2e, b2, &s2);
    let mut rows = Vec::with_capacity(b.len() * b2.len() * (k - 1));
    for (bi, bv) in b.iter().enumerate() {
        for (ci, cv) in b2.iter().enumerate() {
            for i in 0..k - 1 {
                let (size1, size2) = (p1[bi][i], p2[ci][i]);
                rows.push(BoxRow {
                    b: bv,
                    b2: cv,
                    i: i + 1,
                    size1,
                    size2,
                    good: is_good(size1, k, good_constant, s1.len())
                        && is_good(size2, k, good_constant, s2.len()),
                });
            }
        }
    }
    Ok(BoxTable {
        rows,
        k,
        s1_len: s1.len(),
        s2_len: s2.len(),
        good_constant,
    })
}

impl BoxTable {
    pub fn rows(&self) -> &[BoxRow] {
        &self.rows
    }

    pub fn good_count(&self) -> usize {
        self.rows.iter().filter(|r| r.good).count()
    }

    /// Per `(b, b')`: projection sums bounded by `|S|`, `|S'|`, and at least
    /// `(k - 1) - 2k / G` good boxes.
    pub fn pigeonhole_holds(&self) -> bool {
        let g = u128::from(self.good_constant);
        let k = self.k as u128;
        self.rows.chunks(self.k - 1).all(|rows| {
            let sum1: usize = rows.iter().map(|r| r.size1).sum();
            let sum2: usize = rows.iter().map(|r| r.size2).sum();
            let good = rows.iter().filter(|r| r.good).count() as u128;
            sum1 <= self.s1_len && sum2 <= self.s2_len && good * g + 2 * k >= (k - 1) * g
        })
    }
}

/// `|A+B| |A'+B'| >= c (k^3 |B| |B'|)^{1/2}`, compared after squaring.
pub fn check_theorem2(
    a: &GroundSet,
    a2: &GroundSet,
    b: &GroundSet,
    b2: &GroundSet,
    c: Threshold,
    family: &str,
) -> Result<VerificationRecord> {
    if !has_distinct_pairs(a, a2)? {
        return Err(Error::NotDistinctPairs);
    }
    let s1 = sumset(a, b)?.len() as u128;
    let s2 = sumset(a2, b2)?.len() as u128;
    let k = a.len() as u128;
    let prod = s1 * s2;
    let rhs = k * k * k * b.len() as u128 * b2.len() as u128;
    let pass = c.admits(prod.checked_mul(prod).ok_or(Error::Overflow)?, 1, rhs)?;
    let mut rec = VerificationRecord::new("thm2", family, k as u64).param("c", c);
    rec.quantity("sumset1", s1)
        .quantity("sumset2", s2)
        .quantity("b_size", b.len() as u64)
        .quantity("b2_size", b2.len() as u64);
    rec.headline(prod, c.c() * (rhs as f64).sqrt(), Some(pass));
    Ok(rec)
}

/// An integer polynomial with coefficients in increasing degree order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntPoly {
    coeffs: Vec<i64>,
}

impl IntPoly {
    /// Requires degree >= 2 and a positive leading coefficient.
    pub fn new(coeffs: Vec<i64>) -> Result<Self> {
        let mut coeffs = coeffs;
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        match coeffs.last() {
            Some(&lead) if coeffs.len() >= 3 && lead > 0 => Ok(IntPoly { coeffs }),
            _ => Err(Error::NotConvexFunction(
                "need degree >= 2 and positive leading coefficient".into(),
            )),
        }
    }

    pub fn square() -> Self {
        IntPoly {
            coeffs: vec![0, 0, 1],
        }
    }

    pub fn eval(&self, x: i64) -> Result<i64> {
        let mut acc: i128 = 0;
        for &c in self.coeffs.iter().rev() {
            acc = acc
                .checked_mul(i128::from(x))
                .and_then(|v| v.checked_add(i128::from(c)))
                .filter(|v| v.unsigned_abs() <= 1u128 << 62)
                .ok_or(Error::Overflow)?;
        }
        Ok(acc as i64)
    }

    /// Values on `a` in order, if strictly increasing with strictly
    /// increasing chord slopes.
    fn image_if_convex_increasing(&self, a: &GroundSet) -> Option<Vec<i64>> {
        let vals: Vec<i64> = a.iter().map(|x| self.eval(x)).collect::<Result<_>>().ok()?;
        if !vals.windows(2).all(|w| w[0] < w[1]) {
            return None;
        }
        let e = a.elements();
        let convex = (1..e.len().saturating_sub(1)).all(|i| {
            let left = i128::from(vals[i] - vals[i - 1]) * i128::from(e[i + 1] - e[i]);
            let right = i128::from(vals[i + 1] - vals[i]) * i128::from(e[i] - e[i - 1]);
            left < right
        });
        convex.then_some(vals)
    }
}

/// `max{|A+B|, |F(A)+C|} >= c k^{5/4}`, compared as 4th powers. If `F` is
/// not increasing and convex on `A`, `A` is first translated into the
/// increasing branch; the shift is recorded.
pub fn check_theorem3(
    a: &GroundSet,
    b: &GroundSet,
    c_set: &GroundSet,
    f: &IntPoly,
    c: Threshold,
    family: &str,
) -> Result<VerificationRecord> {
    let k = a.len();
    for other in [b, c_set] {
        if other.len() != k {
            return Err(Error::SizeMismatch {
                left: k,
                right: other.len(),
            });
        }
    }
    let mut shift = 0i64;
    let mut shifted = a.clone();
    let mut image = f.image_if_convex_increasing(a);
    let mut j = 0;
    while image.is_none() && j < 40 {
        shift = (1i64 << j) - a.min();
        shifted = crate::sets::dilate_translate(a, 1, shift)?;
        image = f.image_if_convex_increasing(&shifted);
        j += 1;
    }
    let image =
        image.ok_or_else(|| Error::NotConvexFunction("no increasing branch found".into()))?;
    let fa = GroundSet::from_sorted(image)?;
    if !has_distinct_pairs(&shifted, &fa)? {
        return Err(Error::NotDistinctPairs);
    }
    let s1 = sumset(&shifted, b)?.len() as u128;
    let s2 = sumset(&fa, c_set)?.len() as u128;
    let m = s1.max(s2);
    let kk = k as u128;
    let pass = c.admits(m.pow(4), 2, kk.pow(5))?;
    let mut rec = VerificationRecord::new("thm3", family, k as u64)
        .param("c", c)
        .param("shift", shift);
    rec.quantity("sumset_ab", s1).quantity("sumset_fc", s2);
    rec.headline(m, c.c() * (k as f64).powf(1.25), Some(pass));
    Ok(rec)
}

/// For convex `A`: `|A + A - A| >= k(k-1)/2` exactly; `|A-A||A+A| / |A|^3`
/// is recorded without assertion.
pub fn check_convex_proposition(
    a: &GroundSet,
    max_k: usize,
    family: &str,
) -> Result<VerificationRecord> {
    if !is_convex(a) {
        return Err(Error::NotConvex);
    }
    let k = a.len();
    if k > max_k {
        return Err(Error::ResourceLimit {
            needed: k as u128,
            budget: max_k as u128,
        });
    }
    let plus = sumset(a, a)?;
    let minus = difference_set(a, a)?;
    let triple = difference_set(&plus, a)?.len() as u128;
    let kk = k as u128;
    let bound = kk * (kk - 1) / 2;
    let mut rec = VerificationRecord::new("prop-conv", family, kk as u64);
    rec.quantity("triple", triple)
        .quantity("sumset", plus.len() as u64)
        .quantity("diff_set", minus.len() as u64);
    rec.add_ratio(
        "sum_times_diff_over_k3",
        plus.len() as f64 * minus.len() as f64 / (k as f64).powi(3),
    );
    rec.headline(triple, bound as f64, Some(triple >= bound));
    Ok(rec)
}

/// Runs the Eulerian construction for `m` and checks distinct consecutive
/// differences, `|A+B| <= 2km` and `|A+B| <= 3 k^{3/2}` exactly.
pub fn check_tightness(m: usize, method: &SidonMethod) -> Result<VerificationRecord> {
    let inst = dcd_construction(m, method)?;
    let k = inst.k() as u128;
    let s = sumset(&inst.a, &inst.b)?.len() as u128;
    let dcd = has_distinct_consecutive_differences(&inst.a);
    let linear = s <= 2 * k * m as u128;
    let power = s * s <= 9 * k * k * k;
    let mut rec = VerificationRecord::new("tightness", "dcd", k as u64).param("m", m);
    rec.quantity("sumset", s)
        .quantity("a_size", inst.a.len() as u64)
        .quantity("b_size", inst.b.len() as u64)
        .quantity("scale", inst.scale as u64)
        .quantity("linear_bound", 2 * k * m as u128);
    rec.add_ratio("sumset_over_2km", s as f64 / (2 * k * m as u128) as f64);
    rec.headline(s, (k as f64).powf(1.5), Some(dcd && linear && power));
    Ok(rec)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{dcd_from_list, EulerianList};

    fn s(v: &[i64]) -> GroundSet {
        GroundSet::new(v.to_vec()).unwrap()
    }

    #[test]
    fn interval_table_small() {
        let t = build_interval_table(&s(&[0, 1, 3]), &s(&[0]), 100).unwrap();
        assert_eq!(t.sumset().elements(), &[0, 1, 3]);
        let rows = t.rows();
        assert_eq!(rows.len(), 2);
        assert_eq!((rows[0].lo, rows[0].hi, rows[0].size), (0, 1, 1));
        assert_eq!((rows[1].lo, rows[1].hi, rows[1].size), (1, 3, 1));
        assert!(rows.iter().all(|r| r.good));
        assert!(t.pigeonhole().all_hold());
        let runs = count_distinct_good_runs(&t);
        assert_eq!((runs.distinct, runs.collisions), (2, 0));
        // |S| * ceil(100 * 3 / 3)
        assert_eq!(runs.cap, 300);
    }

    #[test]
    fn interval_table_rejects() {
        assert_eq!(
            build_interval_table(&s(&[0, 1, 2]), &s(&[0]), 100),
            Err(Error::NotDcd)
        );
        assert!(matches!(
            build_interval_table(&s(&[0]), &s(&[0]), 100),
            Err(Error::TooSmall { .. })
        ));
    }

    #[test]
    fn goodness_boundary_is_inclusive() {
        // k = 3, |S| = 3: with G = 1 a window is good iff its size <= 1.
        let t = build_interval_table(&s(&[0, 1, 3]), &s(&[0]), 1).unwrap();
        assert!(t.rows().iter().all(|r| r.good));
        let t = build_interval_table(&s(&[0, 1, 3]), &s(&[0, 1]), 1).unwrap();
        // S = {0,1,2,3,4}, threshold 5/3: sizes 1 good, sizes 2 bad.
        for r in t.rows() {
            assert_eq!(r.good, r.size <= 1);
        }
    }

    #[test]
    fn theorem1_examples() {
        let inst = dcd_from_list(
            s(&[0, 1, 3]),
            EulerianList::from_entries(vec![0, 1, 3, 0, 3, 1]),
        )
        .unwrap();
        let one = Threshold::from_ratio(1, 1).unwrap();
        let rec = check_theorem1(&inst.a, &inst.b, one, "dcd").unwrap();
        assert_eq!(rec.measured, 27);
        assert!((rec.ratio - 27.0 / (6.0 * 6f64.sqrt())).abs() < 1e-12);
        assert_eq!(rec.pass, Some(true));

        let ab = s(&[0, 1]);
        let rec = check_theorem1(&ab, &ab, one, "pair").unwrap();
        assert_eq!(rec.measured, 3);
        assert_eq!(rec.pass, Some(true));
        // c = 2 asks for 3 >= 4 sqrt 2.
        let two = Threshold::from_ratio(2, 1).unwrap();
        assert_eq!(
            check_theorem1(&ab, &ab, two, "pair").unwrap().pass,
            Some(false)
        );
        assert_eq!(
            check_theorem1(&s(&[0, 1, 2]), &ab, one, "x"),
            Err(Error::NotDcd)
        );
    }

    #[test]
    fn box_table_small() {
        let t = build_box_table(&s(&[0, 1]), &s(&[0, 2]), &s(&[0]), &s(&[0]), 100).unwrap();
        assert_eq!(t.rows().len(), 1);
        let r = t.rows()[0];
        assert_eq!((r.size1, r.size2, r.good), (1, 1, true));
        assert!(t.pigeonhole_holds());
        assert_eq!(
            build_box_table(&s(&[0, 1, 2]), &s(&[0, 1, 2]), &s(&[0]), &s(&[0]), 100),
            Err(Error::NotDistinctPairs)
        );
        assert!(matches!(
            build_box_table(&s(&[0, 1]), &s(&[0, 1, 2]), &s(&[0]), &s(&[0]), 100),
            Err(Error::SizeMismatch { .. })
        ));
        let a = s(&[1, 2, 3, 4]);
        let t = build_box_table(&a, &s(&[1, 4, 9, 16]), &a, &a, 100).unwrap();
        assert_eq!(t.rows().len(), 4 * 4 * 3);
        assert!(t.pigeonhole_holds());
    }

    #[test]
    fn theorem2_examples() {
        let a = s(&[1, 2, 3, 4]);
        let a2 = s(&[1, 4, 9, 16]);
        let one = Threshold::from_ratio(1, 1).unwrap();
        let rec = check_theorem2(&a, &a2, &a, &a, one, "squares").unwrap();
        // |A+A| = 7, |A2 + A| = |{i^2 + j}| = 15; bound (4^3 * 16)^{1/2} = 32.
        assert_eq!(rec.get("sumset1"), Some(7));
        assert_eq!(rec.get("sumset2"), Some(15));
        assert_eq!(rec.measured, 105);
        assert!((rec.bound - 32.0).abs() < 1e-12);
        assert_eq!(rec.pass, Some(true));
    }

    #[test]
    fn poly_validation() {
        assert!(IntPoly::new(vec![1, 2]).is_err());
        assert!(IntPoly::new(vec![0, 0, -1]).is_err());
        assert!(IntPoly::new(vec![0, 0, 1, 0]).is_ok());
        let f = IntPoly::new(vec![1, 0, 0, 2]).unwrap();
        assert_eq!(f.eval(3).unwrap(), 55);
        assert_eq!(IntPoly::square().eval(1 << 31).unwrap(), 1 << 62);
        assert_eq!(IntPoly::square().eval(1 << 32), Err(Error::Overflow));
    }

    #[test]
    fn theorem3_examples() {
        let a = GroundSet::interval(1, 3).unwrap();
        let one = Threshold::from_ratio(1, 1).unwrap();
        let rec = check_theorem3(&a, &a, &a, &IntPoly::square(), one, "interval").unwrap();
        assert_eq!(rec.get("sumset_fc"), Some(9));
        assert_eq!(rec.measured, 9);
        assert_eq!(rec.pass, Some(true));

        // Negative elements: x^2 is shifted into its increasing branch.
        let neg = s(&[-5, -1, 0, 4]);
        let rec = check_theorem3(&neg, &neg, &neg, &IntPoly::square(), one, "neg").unwrap();
        assert_eq!(rec.params["shift"], "6");

        // B = F(A), C = A.
        let fa = s(&[1, 4, 9]);
        let rec = check_theorem3(&a, &fa, &a, &IntPoly::square(), one, "a+f(a)").unwrap();
        assert_eq!(rec.get("sumset_ab"), rec.get("sumset_fc"));
        assert!(matches!(
            check_theorem3(&a, &s(&[1]), &a, &IntPoly::square(), one, "x"),
            Err(Error::SizeMismatch { .. })
        ));
    }

    #[test]
    fn convex_proposition_examples() {
        for (v, bound) in [
            (vec![1, 4, 9, 16, 25], 10u128),
            (vec![1, 4, 9], 3),
            (vec![0, 5], 1),
        ] {
            let rec = check_convex_proposition(&s(&v), 300, "squares").unwrap();
            assert_eq!(rec.bound, bound as f64);
            assert!(rec.measured >= bound);
            assert_eq!(rec.pass, Some(true));
        }
        assert_eq!(
            check_convex_proposition(&s(&[1, 2, 3]), 300, "ap"),
            Err(Error::NotConvex)
        );
        assert!(matches!(
            check_convex_proposition(&s(&[1, 4, 9]), 2, "sq"),
            Err(Error::ResourceLimit { .. })
        ));
    }

    #[test]
    fn tightness_small() {
        let rec = check_tightness(3, &SidonMethod::Greedy).unwrap();
        assert_eq!(rec.k, 6);
        assert_eq!(rec.measured, 27);
        assert_eq!(rec.pass, Some(true));
    }
}

//! Test-only oracles shared by the calibration and acceptance suites.
//! Sumsets are computed with bit masks, independently of the library.

#![allow(dead_code)]

/// Exact fraction compared by cross multiplication.
#[derive(Clone, Copy, Debug)]
pub struct Frac(pub u128, pub u128);

impl Frac {
    /// `1/0`, above every finite fraction under `lt`.
    pub const INF: Frac = Frac(1, 0);

    pub fn lt(self, o: Frac) -> bool {
        self.0 * o.1 < o.0 * self.1
    }
    pub fn reduced(self) -> (u128, u128) {
        let (mut a, mut b) = (self.0, self.1);
        while b != 0 {
            (a, b) = (b, a % b);
        }
        (self.0 / a, self.1 / a)
    }
}

pub fn mask(set: &[u32]) -> u128 {
    set.iter().fold(0u128, |m, &x| m | 1 << x)
}

pub fn sum_size(a: u128, b: &[u32]) -> u32 {
    b.iter().fold(0u128, |m, &x| m | a << x).count_ones()
}

/// All subsets of `0..=hi` of size in `sizes`, optionally forced to contain 0.
pub fn subsets(hi: u32, sizes: std::ops::RangeInclusive<usize>, with_zero: bool) -> Vec<Vec<u32>> {
    let mut out = vec![];
    for m in 0u32..(1 << (hi + 1)) {
        if with_zero && m & 1 == 0 {
            continue;
        }
        let v: Vec<u32> = (0..=hi).filter(|i| m >> i & 1 == 1).collect();
        if sizes.contains(&v.len()) {
            out.push(v);
        }
    }
    out
}

pub fn gaps_distinct(v: &[u32]) -> bool {
    let g: Vec<u32> = v.windows(2).map(|w| w[1] - w[0]).collect();
    (0..g.len()).all(|i| (0..i).all(|j| g[i] != g[j]))
}

/// Every set with distinct consecutive differences, `a_1 = 0`, `k <= 6`,
/// gaps in `1..=8`.
pub fn dcd_sets() -> Vec<Vec<u32>> {
    fn go(cur: &mut Vec<u32>, used: &mut [bool; 9], out: &mut Vec<Vec<u32>>) {
        out.push(cur.clone());
        if cur.len() == 6 {
            return;
        }
        for g in 1..=8u32 {
            if !used[g as usize] {
                used[g as usize] = true;
                cur.push(cur.last().unwrap() + g);
                go(cur, used, out);
                cur.pop();
                used[g as usize] = false;
            }
        }
    }
    let mut out = vec![];
    go(&mut vec![0], &mut [false; 9], &mut out);
    out
}

pub fn thm1_oracle_min_squared() -> (u128, u128) {
    let bs = subsets(8, 1..=4, false);
    let mut best = Frac::INF;
    for a in dcd_sets() {
        let am = mask(&a);
        let k = a.len() as u128;
        for b in &bs {
            let s = u128::from(sum_size(am, b));
            let r = Frac(s * s, k * k * b.len() as u128);
            if r.lt(best) {
                best = r;
            }
        }
    }
    best.reduced()
}

pub fn distinct_pairs(a: &[u32], a2: &[u32]) -> bool {
    let p: Vec<(u32, u32)> = a
        .windows(2)
        .zip(a2.windows(2))
        .map(|(x, y)| (x[1] - x[0], y[1] - y[0]))
        .collect();
    (0..p.len()).all(|i| (0..i).all(|j| p[i] != p[j]))
}

pub fn thm2_oracle_min_squared() -> (u128, u128) {
    let bs = subsets(5, 1..=3, true);
    let mut best = Frac::INF;
    for k in 2..=4usize {
        let sets = subsets(6, k..=k, true);
        // min over B of |A+B|^2 / |B|, per A; the ratio factorizes over (A, B) and (A', B').
        let f: Vec<Frac> = sets
            .iter()
            .map(|a| {
                let am = mask(a);
                bs.iter()
                    .map(|b| {
                        let s = u128::from(sum_size(am, b));
                        Frac(s * s, b.len() as u128)
                    })
                    .fold(Frac::INF, |m, r| if r.lt(m) { r } else { m })
            })
            .collect();
        for (i, a) in sets.iter().enumerate() {
            for (j, a2) in sets.iter().enumerate() {
                if distinct_pairs(a, a2) {
                    let r = Frac(f[i].0 * f[j].0, f[i].1 * f[j].1 * (k as u128).pow(3));
                    if r.lt(best) {
                        best = r;
                    }
                }
            }
        }
    }
    best.reduced()
}

pub fn thm3_oracle_min_fourth() -> (u128, u128) {
    let mut best = Frac::INF;
    for k in 2..=5usize {
        let shifts = subsets(8, k..=k, true);
        for a in subsets(8, k..=k, false) {
            let am = mask(&a);
            let fa: Vec<u32> = a.iter().map(|x| x * x).collect();
            let fm = mask(&fa);
            let p = shifts.iter().map(|b| sum_size(am, b)).min().unwrap();
            let q = shifts.iter().map(|c| sum_size(fm, c)).min().unwrap();
            let m = u128::from(p.max(q));
            let r = Frac(m.pow(4), (k as u128).pow(5));
            if r.lt(best) {
                best = r;
            }
        }
    }
    best.reduced()
}

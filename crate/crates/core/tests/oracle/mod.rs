//! Independent counts of plane curves used to pin down expected values.
//!
//! Relative Severi degrees follow the Caporaso–Harris recursion; irreducible
//! counts are extracted by removing reducible curves, splitting off the
//! component through the first point. Kontsevich's recursion gives the
//! rational counts a second way.

#![allow(dead_code)]

use std::collections::HashMap;

type Seq = Vec<u32>;

fn trim(mut v: Seq) -> Seq {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

fn weighted(v: &[u32]) -> u64 {
    v.iter().enumerate().map(|(i, &a)| (i as u64 + 1) * a as u64).sum()
}

fn size(v: &[u32]) -> u64 {
    v.iter().map(|&a| a as u64).sum()
}

fn binom(n: i64, k: i64) -> i128 {
    if k < 0 || n < 0 || k > n {
        return 0;
    }
    let mut r: i128 = 1;
    for i in 0..k {
        r = r * (n - i) as i128 / (i + 1) as i128;
    }
    r
}

/// All sequences `x` with `lo ≤ x` componentwise and `I x = target`.
fn sequences_with_weight(target: u64, lo: &[u32]) -> Vec<Seq> {
    fn rec(k: usize, remaining: u64, lo: &[u32], cur: &mut Seq, out: &mut Vec<Seq>) {
        if k as u64 > remaining.max(lo.len() as u64) {
            if remaining == 0 {
                out.push(trim(cur.clone()));
            }
            return;
        }
        let floor = lo.get(k - 1).copied().unwrap_or(0);
        let mut c = floor;
        while (c as u64) * k as u64 <= remaining {
            cur.push(c);
            rec(k + 1, remaining - c as u64 * k as u64, lo, cur, out);
            cur.pop();
            c += 1;
        }
    }
    if weighted(lo) > target {
        return Vec::new();
    }
    let mut out = Vec::new();
    rec(1, target, lo, &mut Vec::new(), &mut out);
    out
}

/// All sequences `x ≤ hi` componentwise.
fn subsequences(hi: &[u32]) -> Vec<Seq> {
    let mut out = vec![Vec::new()];
    for &h in hi {
        out = out.into_iter().flat_map(|p: Seq| (0..=h).map(move |k| [p.clone(), vec![k]].concat())).collect();
    }
    out.into_iter().map(trim).collect()
}

#[derive(Default)]
pub struct Severi {
    memo: HashMap<(u32, i64, Seq, Seq), i128>,
}

impl Severi {
    /// Degree-`d` curves with `delta` nodes, tangency `alpha` at fixed points
    /// and `beta` at free points of a line, possibly reducible.
    pub fn relative(&mut self, d: u32, delta: i64, alpha: &[u32], beta: &[u32]) -> i128 {
        let (alpha, beta) = (trim(alpha.to_vec()), trim(beta.to_vec()));
        if delta < 0 || weighted(&alpha) + weighted(&beta) != d as u64 {
            return 0;
        }
        if d == 0 {
            return i128::from(delta == 0);
        }
        let key = (d, delta, alpha.clone(), beta.clone());
        if let Some(&v) = self.memo.get(&key) {
            return v;
        }
        let mut total = 0i128;
        for k in 1..=beta.len() {
            if beta[k - 1] == 0 {
                continue;
            }
            let mut a = alpha.clone();
            a.resize(a.len().max(k), 0);
            a[k - 1] += 1;
            let mut b = beta.clone();
            b[k - 1] -= 1;
            total += k as i128 * self.relative(d, delta, &a, &b);
        }
        for a2 in subsequences(&alpha) {
            let rest = (d - 1) as u64;
            if weighted(&a2) > rest {
                continue;
            }
            for b2 in sequences_with_weight(rest - weighted(&a2), &beta) {
                let diff: Seq = (0..b2.len()).map(|i| b2[i] - beta.get(i).copied().unwrap_or(0)).collect();
                let delta2 = delta - (d as i64 - 1) + size(&diff) as i64;
                if delta2 < 0 {
                    continue;
                }
                let mut coeff: i128 = diff.iter().enumerate().map(|(i, &c)| (i as i128 + 1).pow(c)).product();
                for (i, &a) in alpha.iter().enumerate() {
                    coeff *= binom(a as i64, a2.get(i).copied().unwrap_or(0) as i64);
                }
                for (i, &b) in b2.iter().enumerate() {
                    coeff *= binom(b as i64, beta.get(i).copied().unwrap_or(0) as i64);
                }
                if coeff != 0 {
                    total += coeff * self.relative(d - 1, delta2, &a2, &b2);
                }
            }
        }
        self.memo.insert(key, total);
        total
    }

    /// Severi degree `N^{d,δ}`: all reduced curves, reducible ones included.
    pub fn plane(&mut self, d: u32, delta: i64) -> i128 {
        self.relative(d, delta, &[], &[d])
    }

    /// Irreducible plane curves of degree `d` and genus `g`.
    pub fn irreducible(&mut self, d: u32, g: i64) -> i128 {
        let delta = (d as i64 - 1) * (d as i64 - 2) / 2 - g;
        self.irreducible_nodes(d, delta)
    }

    fn irreducible_nodes(&mut self, d: u32, delta: i64) -> i128 {
        let pa = (d as i64 - 1) * (d as i64 - 2) / 2;
        if delta < 0 || delta > pa {
            return 0;
        }
        let points = |d: i64, delta: i64| d * (d + 3) / 2 - delta;
        let n = points(d as i64, delta);
        let mut reducible = 0i128;
        for d1 in 1..d {
            let d2 = d - d1;
            let pa1 = (d1 as i64 - 1) * (d1 as i64 - 2) / 2;
            for delta1 in 0..=pa1 {
                let delta2 = delta - delta1 - (d1 * d2) as i64;
                if delta2 < 0 {
                    continue;
                }
                let n1 = points(d1 as i64, delta1);
                if n1 < 1 {
                    continue;
                }
                let rest = self.plane(d2, delta2);
                if rest != 0 {
                    reducible += binom(n - 1, n1 - 1) * self.irreducible_nodes(d1, delta1) * rest;
                }
            }
        }
        self.plane(d, delta) - reducible
    }
}

/// Rational plane curves of degree `d` through `3d − 1` points.
pub fn kontsevich(d: i64) -> i128 {
    let mut n = vec![0i128; d as usize + 1];
    n[1] = 1;
    for e in 2..=d {
        let mut s = 0i128;
        for a in 1..e {
            let b = e - a;
            let t = b as i128 * binom(3 * e - 4, 3 * a - 2) - a as i128 * binom(3 * e - 4, 3 * a - 1);
            s += n[a as usize] * n[b as usize] * (a * a * b) as i128 * t;
        }
        n[e as usize] = s;
    }
    n[d as usize]
}

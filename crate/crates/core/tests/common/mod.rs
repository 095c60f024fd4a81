//! Oracles shared by the integration tests. Everything here is brute force
//! over group elements and deliberately avoids the library's own double coset
//! and norm code.
#![allow(dead_code)]

use std::collections::HashMap;
use std::sync::Arc;

use num_bigint::BigInt;
use tambara_core::{Burnside, BurnsideElement, Group, Subgroup};

pub const GROUPS: [&str; 6] = ["C2", "C4", "C8", "C2xC2", "D8", "Q8"];

pub fn burnsides() -> Vec<Arc<Burnside>> {
    GROUPS.iter().map(|g| Burnside::new(Group::builtin(g).unwrap())).collect()
}

/// An element at `level` with the first `rank` entries of `coeffs`.
pub fn element(b: &Burnside, level: Subgroup, coeffs: &[i64]) -> BurnsideElement {
    let rank = b.ring(level).rank();
    b.element(level, coeffs.iter().cycle().take(rank).map(|&c| BigInt::from(c)).collect())
}

pub fn elements(s: Subgroup) -> Vec<usize> {
    (0..64).filter(|&i| s.mask() >> i & 1 == 1).collect()
}

/// Representatives of the double cosets `L g K` inside `H`, found by marking elements.
pub fn double_coset_reps(g: &Group, h: Subgroup, l: Subgroup, k: Subgroup) -> Vec<usize> {
    let mut seen = 0u64;
    let mut reps = Vec::new();
    for x in elements(h) {
        if seen >> x & 1 == 1 {
            continue;
        }
        reps.push(x);
        for a in elements(l) {
            for c in elements(k) {
                seen |= 1 << g.mul(g.mul(a, x), c);
            }
        }
    }
    reps
}

/// The `H`-set `Map_K(H, X)` for `X = ⊔ mult · K/L`, decomposed into orbits,
/// as an element of `A(H)`.
pub fn coinduction(b: &Burnside, k: Subgroup, h: Subgroup, orbits: &[(Subgroup, usize)]) -> BurnsideElement {
    let g = b.group();
    // points of X: (orbit, left coset of L in K as a mask)
    let mut points: Vec<(usize, u64)> = Vec::new();
    for (o, &(l, mult)) in orbits.iter().enumerate() {
        for copy in 0..mult {
            let mut cosets: Vec<u64> = Vec::new();
            for a in elements(k) {
                let c = elements(l).iter().fold(0u64, |m, &y| m | 1 << g.mul(a, y));
                if !cosets.contains(&c) {
                    cosets.push(c);
                }
            }
            points.extend(cosets.into_iter().map(|c| (o * 64 + copy, c)));
        }
    }
    let index: HashMap<(usize, u64), usize> = points.iter().enumerate().map(|(i, p)| (*p, i)).collect();
    let act = |a: usize, p: usize| {
        let (o, c) = points[p];
        let moved = elements(Subgroup::from_mask(c)).iter().fold(0u64, |m, &y| m | 1 << g.mul(a, y));
        index[&(o, moved)]
    };
    // right cosets K r of K in H
    let mut reps: Vec<usize> = Vec::new();
    let mut covered = 0u64;
    for x in elements(h) {
        if covered >> x & 1 == 0 {
            reps.push(x);
            for a in elements(k) {
                covered |= 1 << g.mul(a, x);
            }
        }
    }
    // x = a r_j with a in K
    let split = |x: usize| -> (usize, usize) {
        for (j, &r) in reps.iter().enumerate() {
            let a = g.mul(x, g.inv(r));
            if k.contains(a) {
                return (a, j);
            }
        }
        unreachable!("right cosets cover H")
    };
    let n = points.len();
    let m = reps.len();
    let total = n.checked_pow(m as u32).expect("small");
    assert!(total <= 1 << 20, "coinduction too large");
    let decode = |mut code: usize| {
        let mut f = vec![0usize; m];
        for v in f.iter_mut() {
            *v = code % n;
            code /= n;
        }
        f
    };
    let encode = |f: &[usize]| f.iter().rev().fold(0usize, |acc, &v| acc * n + v);
    let act_fn = |y: usize, f: &[usize]| -> Vec<usize> {
        reps.iter()
            .map(|&r| {
                let (a, j) = split(g.mul(r, y));
                act(a, f[j])
            })
            .collect()
    };
    let lat = b.ring(h).lattice();
    let mut coeffs = vec![BigInt::from(0); lat.len()];
    let mut visited = vec![false; total];
    for code in 0..total {
        if visited[code] {
            continue;
        }
        let f = decode(code);
        let mut stab = 0u64;
        for y in elements(h) {
            let image = encode(&act_fn(y, &f));
            visited[image] = true;
            if image == code {
                stab |= 1 << y;
            }
        }
        coeffs[lat.class_of(Subgroup::from_mask(stab))] += 1;
    }
    b.element(h, coeffs)
}

/// The element `Σ mult · [K/L]` of `A(K)`.
pub fn orbit_sum(b: &Burnside, k: Subgroup, orbits: &[(Subgroup, usize)]) -> BurnsideElement {
    let lat = b.ring(k).lattice();
    let mut coeffs = vec![BigInt::from(0); lat.len()];
    for &(l, mult) in orbits {
        coeffs[lat.class_of(l)] += mult;
    }
    b.element(k, coeffs)
}

/// Invariant factors of `Z^n / (rows)` from gcds of minors, dropping units.
pub fn invariant_factors_by_minors(rows: &[Vec<i64>], n: usize) -> Vec<BigInt> {
    use num_integer::Integer;
    fn det(m: &[Vec<BigInt>]) -> BigInt {
        if m.len() == 1 {
            return m[0][0].clone();
        }
        let mut acc = BigInt::from(0);
        for j in 0..m.len() {
            let minor: Vec<Vec<BigInt>> =
                m[1..].iter().map(|r| r.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, v)| v.clone()).collect()).collect();
            let term = &m[0][j] * det(&minor);
            if j % 2 == 0 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        acc
    }
    fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
        if k == 0 {
            return vec![vec![]];
        }
        if n < k {
            return vec![];
        }
        let mut out = subsets(n - 1, k);
        for mut s in subsets(n - 1, k - 1) {
            s.push(n - 1);
            out.push(s);
        }
        out
    }
    let mut divisors = vec![BigInt::from(1)];
    let mut factors = Vec::new();
    for k in 1..=n {
        let mut d = BigInt::from(0);
        for rs in subsets(rows.len(), k) {
            for cs in subsets(n, k) {
                let m: Vec<Vec<BigInt>> = rs.iter().map(|&r| cs.iter().map(|&c| BigInt::from(rows[r][c])).collect()).collect();
                d = d.gcd(&det(&m));
            }
        }
        let prev = divisors.last().unwrap().clone();
        let f = if d == BigInt::from(0) { BigInt::from(0) } else { &d / &prev };
        if f != BigInt::from(1) {
            factors.push(f.clone());
        }
        if d == BigInt::from(0) {
            // remaining factors are free
            factors.extend(std::iter::repeat(BigInt::from(0)).take(n - k));
            break;
        }
        divisors.push(d);
    }
    factors
}

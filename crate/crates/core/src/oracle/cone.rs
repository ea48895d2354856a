use std::collections::HashSet;

use rayon::prelude::*;

pub const DEFAULT_KBOUND: u32 = 24;

/// Exponent vectors of a monomial ideal, minimalized under divisibility.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExponentCone {
    generators: Vec<Vec<u32>>,
}

fn below(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

impl ExponentCone {
    /// Dedups and drops vectors dominated by another generator. All
    /// vectors must have the same length.
    pub fn new(mut generators: Vec<Vec<u32>>) -> ExponentCone {
        generators.sort();
        generators.dedup();
        let keep: Vec<Vec<u32>> = generators
            .iter()
            .filter(|g| !generators.iter().any(|h| h != *g && below(h, g)))
            .cloned()
            .collect();
        ExponentCone { generators: keep }
    }

    pub fn generators(&self) -> &[Vec<u32>] {
        &self.generators
    }

    pub fn nvars(&self) -> usize {
        self.generators.first().map_or(0, Vec::len)
    }

    pub fn contains(&self, a: &[u32]) -> bool {
        self.generators.iter().any(|g| below(g, a))
    }

    /// Componentwise maximum of the generators.
    pub fn bounding_box(&self) -> Vec<u32> {
        let mut m = vec![0; self.nvars()];
        for g in &self.generators {
            for (x, &e) in m.iter_mut().zip(g) {
                *x = (*x).max(e);
            }
        }
        m
    }

    /// Supporting inequalities `w . x >= d` of the Newton polyhedron.
    pub fn facets(&self) -> Vec<(Vec<i64>, i64)> {
        facets(&self.generators)
    }

    /// Rational Newton-polyhedron membership.
    pub fn in_polyhedron(&self, a: &[u32]) -> bool {
        if self.generators.is_empty() {
            return false;
        }
        self.facets().iter().all(|(w, d)| dot(w, a) >= *d)
    }
}

fn dot(w: &[i64], a: &[u32]) -> i64 {
    w.iter().zip(a).map(|(x, &y)| x * y as i64).sum()
}

fn det(m: &[Vec<i64>]) -> i64 {
    let n = m.len();
    match n {
        0 => 1,
        1 => m[0][0],
        _ => (0..n)
            .map(|c| {
                let minor: Vec<Vec<i64>> = m[1..]
                    .iter()
                    .map(|r| r.iter().enumerate().filter(|(j, _)| *j != c).map(|(_, &v)| v).collect())
                    .collect();
                let s = if c % 2 == 0 { 1 } else { -1 };
                s * m[0][c] * det(&minor)
            })
            .sum(),
    }
}

/// Normal of the hyperplane through `n - 1` independent directions.
fn normal(rows: &[Vec<i64>], n: usize) -> Vec<i64> {
    (0..n)
        .map(|k| {
            let minor: Vec<Vec<i64>> = rows
                .iter()
                .map(|r| r.iter().enumerate().filter(|(j, _)| *j != k).map(|(_, &v)| v).collect())
                .collect();
            let s = if k % 2 == 0 { 1 } else { -1 };
            s * det(&minor)
        })
        .collect()
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
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

fn facets(gens: &[Vec<u32>]) -> Vec<(Vec<i64>, i64)> {
    let n = gens.first().map_or(0, Vec::len);
    let mut out: HashSet<(Vec<i64>, i64)> = HashSet::new();
    for r in 1..=n.min(gens.len()) {
        for pts in subsets(gens.len(), r) {
            for dirs in subsets(n, n - r) {
                let p0: Vec<i64> = gens[pts[0]].iter().map(|&e| e as i64).collect();
                let mut rows: Vec<Vec<i64>> = pts[1..]
                    .iter()
                    .map(|&p| gens[p].iter().zip(&p0).map(|(&e, &z)| e as i64 - z).collect())
                    .collect();
                for &d in &dirs {
                    let mut e = vec![0i64; n];
                    e[d] = 1;
                    rows.push(e);
                }
                let mut w = normal(&rows, n);
                if w.iter().all(|&x| x == 0) {
                    continue;
                }
                if w.iter().any(|&x| x < 0) {
                    if w.iter().any(|&x| x > 0) {
                        continue;
                    }
                    w.iter_mut().for_each(|x| *x = -*x);
                }
                let g = w.iter().fold(0, |a, &b| gcd(a, b));
                w.iter_mut().for_each(|x| *x /= g);
                let d = dot(&w, &gens[pts[0]]);
                if gens.iter().all(|c| dot(&w, c) >= d) {
                    out.insert((w, d));
                }
            }
        }
    }
    let mut v: Vec<_> = out.into_iter().collect();
    v.sort();
    v
}

/// Result of a bounded integrality search for a monomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NpAnswer {
    /// Smallest `k` and a multiset (generator indices) summing to at most `k a`.
    Member { k: u32, multiset: Vec<usize> },
    /// A weight `w` with `w . a < d <= w . c` for every generator `c`.
    NotMember { weight: Vec<i64>, bound: i64 },
    /// No certificate up to `kbound`.
    Unknown { kbound: u32 },
}

impl NpAnswer {
    pub fn is_member(&self) -> bool {
        matches!(self, NpAnswer::Member { .. })
    }
}

fn search(
    gens: &[Vec<u32>],
    cap: &[u32],
    start: usize,
    left: u32,
    sum: &mut Vec<u32>,
    pick: &mut Vec<usize>,
    dead: &mut HashSet<(usize, u32, Vec<u32>)>,
) -> bool {
    if left == 0 {
        return true;
    }
    if dead.contains(&(start, left, sum.clone())) {
        return false;
    }
    for i in start..gens.len() {
        if sum.iter().zip(&gens[i]).zip(cap).any(|((s, g), c)| s + g > *c) {
            continue;
        }
        sum.iter_mut().zip(&gens[i]).for_each(|(s, g)| *s += g);
        pick.push(i);
        if search(gens, cap, i, left - 1, sum, pick, dead) {
            return true;
        }
        pick.pop();
        sum.iter_mut().zip(&gens[i]).for_each(|(s, g)| *s -= g);
    }
    dead.insert((start, left, sum.clone()));
    false
}

/// Is `x^a` integral over the monomial ideal, i.e. is there `k <= kbound`
/// and `k` generators whose exponent sum is at most `k a`?
pub fn np_member(a: &[u32], cone: &ExponentCone, kbound: u32) -> NpAnswer {
    let gens = cone.generators();
    if let Some((w, d)) = cone.facets().into_iter().find(|(w, d)| dot(w, a) < *d) {
        return NpAnswer::NotMember { weight: w, bound: d };
    }
    for k in 1..=kbound {
        let cap: Vec<u32> = a.iter().map(|&e| e * k).collect();
        let mut sum = vec![0; a.len()];
        let mut pick = Vec::new();
        let mut dead = HashSet::new();
        if search(gens, &cap, 0, k, &mut sum, &mut pick, &mut dead) {
            return NpAnswer::Member { k, multiset: pick };
        }
    }
    NpAnswer::Unknown { kbound }
}

/// Minimal exponents of the closure over the generators' bounding box.
/// Points inside the polyhedron with no certificate up to `kbound` count
/// as members.
pub fn np_closure(cone: &ExponentCone, kbound: u32) -> ExponentCone {
    let bx = cone.bounding_box();
    let mut points: Vec<Vec<u32>> = vec![vec![]];
    for &b in &bx {
        points = points
            .into_iter()
            .flat_map(|p| {
                (0..=b).map(move |e| {
                    let mut q = p.clone();
                    q.push(e);
                    q
                })
            })
            .collect();
    }
    let members: Vec<Vec<u32>> = points
        .into_par_iter()
        .filter(|a| match np_member(a, cone, kbound) {
            NpAnswer::Member { .. } => true,
            NpAnswer::NotMember { .. } => false,
            NpAnswer::Unknown { .. } => cone.in_polyhedron(a),
        })
        .collect();
    ExponentCone::new(members)
}

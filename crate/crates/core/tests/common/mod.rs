//! Independent reference computations used by the integration tests.
//!
//! Nothing here calls into the class-graph, structure or classifier
//! modules; only element multiplication from the group engine is shared.
#![allow(dead_code)]

use std::collections::{BTreeSet, VecDeque};

use classgraph::Group;

pub fn oracle_primes(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Class size of every element, by conjugating each new representative by
/// every group element.
pub fn oracle_class_sizes(g: &Group) -> Vec<u64> {
    let n = g.order();
    let mut size = vec![0u64; n];
    let mut seen = vec![false; n];
    for x in 0..n {
        if size[x] != 0 {
            continue;
        }
        let mut orbit = Vec::new();
        for h in 0..n {
            let y = g.mul(g.mul(g.inv(h), x), h);
            if !seen[y] {
                seen[y] = true;
                orbit.push(y);
            }
        }
        for &y in &orbit {
            size[y] = orbit.len() as u64;
        }
    }
    size
}

/// `|G : C_G(x)|` by counting commuting elements.
pub fn oracle_centralizer_index(g: &Group, x: usize) -> u64 {
    let c = (0..g.order())
        .filter(|&h| g.mul(x, h) == g.mul(h, x))
        .count();
    (g.order() / c) as u64
}

pub fn sorted_multiset(per_element: &[u64]) -> Vec<u64> {
    // Each class of size s contributes s entries; keep one per class.
    let mut sizes: Vec<u64> = per_element.to_vec();
    sizes.sort_unstable();
    let mut out = Vec::new();
    let mut i = 0;
    while i < sizes.len() {
        let s = sizes[i];
        let run = sizes[i..].iter().take_while(|&&t| t == s).count();
        out.extend(std::iter::repeat(s).take(run / s as usize));
        i += run;
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleGraph {
    pub vertices: BTreeSet<u64>,
    pub edges: BTreeSet<(u64, u64)>,
}

impl OracleGraph {
    pub fn from_sizes(sizes: &[u64]) -> OracleGraph {
        let mut vertices = BTreeSet::new();
        let mut edges = BTreeSet::new();
        let distinct: BTreeSet<u64> = sizes.iter().copied().collect();
        for s in distinct {
            let ps = oracle_primes(s);
            for (i, &p) in ps.iter().enumerate() {
                vertices.insert(p);
                for &q in &ps[i + 1..] {
                    edges.insert((p, q));
                }
            }
        }
        OracleGraph { vertices, edges }
    }

    pub fn new(vertices: &[u64], edges: &[(u64, u64)]) -> OracleGraph {
        OracleGraph {
            vertices: vertices.iter().copied().collect(),
            edges: edges.iter().map(|&(u, v)| (u.min(v), u.max(v))).collect(),
        }
    }

    pub fn adjacent(&self, u: u64, v: u64) -> bool {
        self.edges.contains(&(u.min(v), u.max(v)))
    }

    fn components_without(&self, skip: Option<u64>) -> usize {
        let vs: Vec<u64> = self
            .vertices
            .iter()
            .copied()
            .filter(|&v| Some(v) != skip)
            .collect();
        let mut seen = BTreeSet::new();
        let mut count = 0;
        for &s in &vs {
            if !seen.insert(s) {
                continue;
            }
            count += 1;
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for &w in &vs {
                    if self.adjacent(u, w) && seen.insert(w) {
                        queue.push_back(w);
                    }
                }
            }
        }
        count
    }

    pub fn is_connected(&self) -> bool {
        self.components_without(None) <= 1
    }

    /// Vertices whose removal increases the number of components.
    pub fn cut_vertices(&self) -> Vec<u64> {
        let base = self.components_without(None);
        self.vertices
            .iter()
            .copied()
            .filter(|&v| self.components_without(Some(v)) > base)
            .collect()
    }

    /// Two-colouring of the complement.
    pub fn complement_bipartite(&self) -> bool {
        let vs: Vec<u64> = self.vertices.iter().copied().collect();
        let mut colour = vec![None::<bool>; vs.len()];
        for s in 0..vs.len() {
            if colour[s].is_some() {
                continue;
            }
            colour[s] = Some(false);
            let mut stack = vec![s];
            while let Some(i) = stack.pop() {
                for j in 0..vs.len() {
                    if i == j || self.adjacent(vs[i], vs[j]) {
                        continue;
                    }
                    let want = !colour[i].unwrap();
                    match colour[j] {
                        None => {
                            colour[j] = Some(want);
                            stack.push(j);
                        }
                        Some(c) if c != want => return false,
                        _ => {}
                    }
                }
            }
        }
        true
    }
}

fn p_part(n: u64, p: u64) -> u64 {
    let mut m = n;
    let mut out = 1;
    while m % p == 0 {
        m /= p;
        out *= p;
    }
    out
}

fn is_p_power(mut n: u64, p: u64) -> bool {
    while n % p == 0 {
        n /= p;
    }
    n == 1
}

/// A normal `p`-complement exists iff the `p'`-elements are closed under
/// multiplication (they then form a subgroup containing a Sylow subgroup
/// for every other prime).
pub fn oracle_p_nilpotent(g: &Group, p: u64) -> bool {
    let pprime: Vec<usize> = g.elements().filter(|&x| g.elem_order(x) % p != 0).collect();
    if pprime.len() as u64 != g.order() as u64 / p_part(g.order() as u64, p) {
        return false;
    }
    pprime
        .iter()
        .all(|&x| pprime.iter().all(|&y| g.elem_order(g.mul(x, y)) % p != 0))
}

/// Sylow `p`-subgroup taken from the engine, checked for order and then for
/// commutativity element by element.
pub fn oracle_sylow_abelian(g: &Group, p: u64) -> bool {
    let s = g.sylow_subgroup(p);
    assert_eq!(s.order() as u64, p_part(g.order() as u64, p));
    assert!(s.members().iter().all(|&x| is_p_power(g.elem_order(x), p)));
    let m = s.members();
    m.iter()
        .all(|&x| m.iter().all(|&y| g.mul(x, y) == g.mul(y, x)))
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// First commuting coprime pair with `π(x) ∪ π(y) ⊄ π(xy)`.
pub fn oracle_product_counterexample(g: &Group, sizes: &[u64]) -> Option<(usize, usize)> {
    let pi = |x: usize| oracle_primes(sizes[x]);
    for x in g.elements() {
        for y in g.elements().skip(x + 1) {
            if gcd(g.elem_order(x), g.elem_order(y)) != 1 || g.mul(x, y) != g.mul(y, x) {
                continue;
            }
            let pxy = pi(g.mul(x, y));
            if !pi(x).iter().chain(pi(y).iter()).all(|p| pxy.contains(p)) {
                return Some((x, y));
            }
        }
    }
    None
}

/// Every labelled simple graph on vertices `1..=n`.
pub fn all_graphs(n: u64) -> impl Iterator<Item = (Vec<u64>, Vec<(u64, u64)>)> {
    let pairs: Vec<(u64, u64)> = (1..=n)
        .flat_map(|u| (u + 1..=n).map(move |v| (u, v)))
        .collect();
    let vertices: Vec<u64> = (1..=n).collect();
    (0u64..1 << pairs.len()).map(move |mask| {
        let edges = pairs
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &e)| e)
            .collect();
        (vertices.clone(), edges)
    })
}

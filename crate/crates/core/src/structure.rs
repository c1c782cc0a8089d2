//! Structural predicates used by the classifier: normal Sylow primes,
//! `K_p`, reduction modulo central subgroups, the Frobenius kernel test and
//! the structure of groups with disconnected prime graph.

use serde::Serialize;

use crate::arith;
use crate::class_graph::{conjugacy_class_data, graph_analysis, prime_graph};
use crate::error::{Error, Result};
use crate::group::{Group, Subgroup};

/// `ν(G)`: primes with a normal Sylow subgroup, ascending.
pub fn normal_sylow_set(g: &Group) -> Vec<u64> {
    g.primes()
        .into_iter()
        .filter(|&p| g.is_normal(&g.sylow_subgroup(p)))
        .collect()
}

/// `K_p(G)`, the normal `p`-complement of `[G, P]`.
pub fn k_p(g: &Group, p: u64) -> Result<Subgroup> {
    let sylow = g.sylow_subgroup(p);
    let mut seeds = Vec::new();
    for &x in g.generators() {
        for &y in sylow.generators() {
            seeds.push(g.comm(x, y));
        }
    }
    let gp = g.normal_closure(&seeds, &Subgroup::whole(g));
    let complement: Vec<usize> = gp
        .members()
        .iter()
        .copied()
        .filter(|&x| g.elem_order(x) % p != 0)
        .collect();
    let closed = Subgroup::closure_bounded(g, &complement, complement.len())
        .filter(|s| s.order() == complement.len())
        .ok_or(Error::NoNormalComplement { p })?;
    let k = Subgroup::from_members(g, closed.members().to_vec());
    if !g.commutator_subgroup(&k, &sylow).same_members(&k) {
        return Err(Error::NoNormalComplement { p });
    }
    Ok(k)
}

/// `H` is a Frobenius group with kernel `K`: `1 < K < H` and the centralizer
/// in `H` of every non-trivial element of `K` lies in `K`.
pub fn frobenius_with_kernel(g: &Group, h: &Subgroup, k: &Subgroup) -> Result<bool> {
    if !k.is_subset(h) || !g.is_normal_in(k, h) {
        return Err(Error::NotNormal);
    }
    if k.is_trivial() || k.order() == h.order() {
        return Ok(false);
    }
    Ok(k.members().iter().skip(1).all(|&x| {
        h.members()
            .iter()
            .all(|&y| k.contains(y) || !g.commute(x, y))
    }))
}

#[derive(Debug, Clone, Serialize)]
pub struct ReductionStep {
    /// Generator of the stripped cyclic subgroup, as an index of the group
    /// being reduced at that step.
    pub generator: usize,
    pub order: usize,
    /// Class sizes agree as sets and each multiplicity scales by `order`.
    pub class_sizes_preserved: bool,
}

#[derive(Debug, Clone)]
pub struct ReducedForm {
    pub reduced_group: Group,
    /// Kernel of `projection`: everything factored out of the input.
    pub stripped_center: Subgroup,
    /// Input element index -> reduced element index.
    pub projection: Vec<usize>,
    pub steps: Vec<ReductionStep>,
}

impl ReducedForm {
    pub fn is_identity(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn sizes_preserved(&self) -> bool {
        self.steps.iter().all(|s| s.class_sizes_preserved)
    }
}

/// Least non-identity `z` in `Z(G)` with `<z> ∩ G' = 1`.
fn strippable(g: &Group) -> Option<usize> {
    let derived = g.derived_subgroup();
    g.center().members().iter().skip(1).copied().find(|&z| {
        let mut y = z;
        while y != 0 {
            if derived.contains(y) {
                return false;
            }
            y = g.mul(y, z);
        }
        true
    })
}

pub fn is_reduced(g: &Group) -> bool {
    strippable(g).is_none()
}

/// `multiplicity(G, s) = |Z| * multiplicity(G/Z, s)` for every size `s`.
fn sizes_scale(big: &[u64], small: &[u64], factor: usize) -> bool {
    let count = |v: &[u64], s: u64| v.iter().filter(|&&x| x == s).count();
    let mut sizes = big.to_vec();
    sizes.extend_from_slice(small);
    sizes.sort_unstable();
    sizes.dedup();
    sizes
        .iter()
        .all(|&s| count(big, s) == factor * count(small, s))
}

/// Strip central cyclic subgroups meeting the derived subgroup trivially,
/// least generator first, until the group is reduced.
pub fn reduce(g: &Group) -> ReducedForm {
    let mut current = g.clone();
    let mut projection: Vec<usize> = g.elements().collect();
    let mut steps = Vec::new();
    let mut sizes = conjugacy_class_data(g).size_multiset;
    while let Some(z) = strippable(&current) {
        let cyclic = Subgroup::closure(&current, &[z]);
        let q = current
            .quotient(&cyclic)
            .expect("central subgroups are normal");
        let next_sizes = conjugacy_class_data(&q.group).size_multiset;
        steps.push(ReductionStep {
            generator: z,
            order: cyclic.order(),
            class_sizes_preserved: sizes_scale(&sizes, &next_sizes, cyclic.order()),
        });
        for x in projection.iter_mut() {
            *x = q.projection[*x];
        }
        current = q.group;
        sizes = next_sizes;
    }
    let kernel = g.elements().filter(|&x| projection[x] == 0).collect();
    ReducedForm {
        reduced_group: current,
        stripped_center: Subgroup::from_members(g, kernel),
        projection,
        steps,
    }
}

/// Outcome of the structure test for groups whose prime graph is disconnected.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DisconnectedStructure {
    pub holds: bool,
    /// Primes of the normal Hall subgroup `A`.
    pub alpha: Vec<u64>,
    pub beta: Vec<u64>,
    pub a_order: usize,
    pub b_order: usize,
    pub clauses: Vec<(String, bool)>,
}

/// Checks `G = AB` with `A ⊴ G`, `A` and `B` abelian Hall subgroups of
/// coprime order, and `G/Z(G)` Frobenius with kernel `AZ/Z`. The two prime
/// sets are taken from the components of `Δ(G)`; both assignments are tried.
pub fn disconnected_structure(g: &Group, seed: u64) -> Result<DisconnectedStructure> {
    let graph = prime_graph(&conjugacy_class_data(g));
    let comps = graph_analysis(&graph).components;
    if comps.len() != 2 {
        return Ok(DisconnectedStructure {
            holds: false,
            alpha: Vec::new(),
            beta: Vec::new(),
            a_order: 0,
            b_order: 0,
            clauses: vec![("two components".into(), false)],
        });
    }
    let mut first = None;
    for (alpha, beta) in [(&comps[0], &comps[1]), (&comps[1], &comps[0])] {
        let attempt = disconnected_oriented(g, alpha, beta, seed)?;
        if attempt.holds {
            return Ok(attempt);
        }
        first.get_or_insert(attempt);
    }
    Ok(first.unwrap())
}

fn disconnected_oriented(
    g: &Group,
    alpha: &[u64],
    beta: &[u64],
    seed: u64,
) -> Result<DisconnectedStructure> {
    let a = g.hall_subgroup(alpha, seed)?;
    let b = g.hall_subgroup(beta, seed)?;
    let mut clauses = vec![
        ("G = AB".to_string(), a.order() * b.order() == g.order()),
        ("A normal".to_string(), g.is_normal(&a)),
        ("A abelian".to_string(), g.is_abelian_subgroup(&a)),
        ("B abelian".to_string(), g.is_abelian_subgroup(&b)),
        (
            "coprime orders".to_string(),
            arith::gcd(a.order() as u64, b.order() as u64) == 1,
        ),
    ];
    let frob = if clauses[1].1 {
        let z = g.center();
        let q = g.quotient(&z)?;
        let whole = Subgroup::whole(&q.group);
        frobenius_with_kernel(&q.group, &whole, &q.image(&a))?
    } else {
        false
    };
    clauses.push(("G/Z Frobenius with kernel AZ/Z".to_string(), frob));
    Ok(DisconnectedStructure {
        holds: clauses.iter().all(|c| c.1),
        alpha: alpha.to_vec(),
        beta: beta.to_vec(),
        a_order: a.order(),
        b_order: b.order(),
        clauses,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{enumerate_group, GroupSpec};

    fn perm(degree: usize, gens: &[&[usize]]) -> Group {
        enumerate_group(
            &GroupSpec::Perm {
                degree,
                generators: gens.iter().map(|g| g.to_vec()).collect(),
            },
            1000,
        )
        .unwrap()
    }

    fn s3() -> Group {
        perm(3, &[&[2, 3, 1], &[2, 1, 3]])
    }

    fn s4() -> Group {
        perm(4, &[&[2, 3, 4, 1], &[2, 1, 3, 4]])
    }

    fn f21() -> Group {
        enumerate_group(
            &GroupSpec::Extension {
                base: vec![7],
                actor: vec![3],
                action: vec![vec![2]],
            },
            100,
        )
        .unwrap()
    }

    #[test]
    fn normal_sylows() {
        assert_eq!(normal_sylow_set(&s3()), vec![3]);
        assert!(normal_sylow_set(&s4()).is_empty());
        let c = enumerate_group(&GroupSpec::cyclic(30), 100).unwrap();
        assert_eq!(normal_sylow_set(&c), vec![2, 3, 5]);
    }

    #[test]
    fn k_p_examples() {
        let g = s3();
        assert_eq!(k_p(&g, 2).unwrap().order(), 3);
        assert!(k_p(&g, 3).unwrap().is_trivial());
        let c = enumerate_group(&GroupSpec::cyclic(12), 100).unwrap();
        assert!(k_p(&c, 2).unwrap().is_trivial());
        // S4: [G, P_3] = A4 whose 3'-elements form V4, a subgroup
        assert_eq!(k_p(&s4(), 3).unwrap().order(), 4);
        // A5: [G, P] = A5, its 2'-elements are not closed
        let a5 = perm(5, &[&[2, 3, 1, 4, 5], &[1, 2, 4, 5, 3]]);
        assert_eq!(k_p(&a5, 2), Err(Error::NoNormalComplement { p: 2 }));
    }

    #[test]
    fn reductions() {
        let g = enumerate_group(
            &GroupSpec::Direct {
                factors: vec![
                    GroupSpec::Perm {
                        degree: 3,
                        generators: vec![vec![2, 3, 1], vec![2, 1, 3]],
                    },
                    GroupSpec::cyclic(2),
                ],
            },
            100,
        )
        .unwrap();
        let r = reduce(&g);
        assert_eq!(r.reduced_group.order(), 6);
        assert_eq!(r.stripped_center.order(), 2);
        assert_eq!(r.steps.len(), 1);
        assert!(r.sizes_preserved());
        assert!(is_reduced(&r.reduced_group));
        assert!(!r.reduced_group.is_abelian());

        let s4 = reduce(&s4());
        assert!(s4.is_identity());
        assert_eq!(s4.reduced_group.order(), 24);

        let c6 = reduce(&enumerate_group(&GroupSpec::cyclic(6), 10).unwrap());
        assert_eq!(c6.reduced_group.order(), 1);
        assert_eq!(c6.stripped_center.order(), 6);

        // Z(Q8) = Q8', nothing strips
        let q8 = perm(8, &[&[2, 5, 4, 7, 6, 1, 8, 3], &[3, 8, 5, 2, 7, 4, 1, 6]]);
        assert!(reduce(&q8).is_identity());
    }

    #[test]
    fn multiplicity_scaling() {
        assert!(sizes_scale(&[1, 1, 2, 2, 3, 3], &[1, 2, 3], 2));
        assert!(!sizes_scale(&[1, 1, 2, 3, 3], &[1, 2, 3], 2));
        assert!(!sizes_scale(&[1, 1, 2, 2], &[1, 2, 3], 2));
    }

    #[test]
    fn frobenius_examples() {
        let g = s3();
        let whole = Subgroup::whole(&g);
        assert_eq!(
            frobenius_with_kernel(&g, &whole, &g.derived_subgroup()),
            Ok(true)
        );
        let c6 = enumerate_group(&GroupSpec::cyclic(6), 10).unwrap();
        let c3 = c6.sylow_subgroup(3);
        assert_eq!(
            frobenius_with_kernel(&c6, &Subgroup::whole(&c6), &c3),
            Ok(false)
        );
        let f = f21();
        let k = f.sylow_subgroup(7);
        assert_eq!(
            frobenius_with_kernel(&f, &Subgroup::whole(&f), &k),
            Ok(true)
        );
        let not_normal = g.sylow_subgroup(2);
        assert_eq!(
            frobenius_with_kernel(&g, &whole, &not_normal),
            Err(Error::NotNormal)
        );
    }

    #[test]
    fn disconnected_examples() {
        let s = disconnected_structure(&s3(), 0).unwrap();
        assert!(s.holds);
        assert_eq!(s.alpha, vec![3]);
        assert_eq!((s.a_order, s.b_order), (3, 2));
        assert!(disconnected_structure(&f21(), 0).unwrap().holds);
        assert!(!disconnected_structure(&s4(), 0).unwrap().holds);
    }
}

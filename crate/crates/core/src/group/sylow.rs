use fixedbitset::FixedBitSet;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{Group, Subgroup};
use crate::arith;
use crate::error::{Error, Result};

/// Randomized Hall attempts before the exhaustive fallback.
pub const HALL_RETRY_BUDGET: usize = 200;
/// The exhaustive pair/triple fallback only runs up to this order.
pub const HALL_EXHAUSTIVE_LIMIT: usize = 5_000;

/// Fitting subgroup, Fitting height (solvable groups only) and solvability.
#[derive(Debug, Clone)]
pub struct FittingSeries {
    pub fitting: Subgroup,
    pub height: Option<u32>,
    pub solvable: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Predicates {
    pub is_abelian: bool,
    pub is_nilpotent: bool,
    /// `(p, is_p_nilpotent)` for each prime divisor of `|G|`.
    pub p_nilpotent: Vec<(u64, bool)>,
}

impl Group {
    /// The `p`-part of `|G|`.
    pub fn p_part(&self, p: u64) -> u64 {
        arith::pi_part(self.order() as u64, &[p])
    }

    /// A Sylow `p`-subgroup, grown from a cyclic `p`-subgroup by repeatedly
    /// adjoining a `p`-element of its normalizer.
    pub fn sylow_subgroup(&self, p: u64) -> Subgroup {
        let target = self.p_part(p) as usize;
        let whole = Subgroup::whole(self);
        let Some(start) = self
            .elements()
            .rev()
            .find(|&x| x != 0 && arith::is_power_of(self.elem_order(x), p))
        else {
            return Subgroup::trivial(self);
        };
        let mut sub = Subgroup::closure(self, &[start]);
        while sub.order() < target {
            let norm = self.normalizer(&sub, &whole);
            let x = norm
                .members()
                .iter()
                .rev()
                .copied()
                .find(|&x| !sub.contains(x) && arith::is_power_of(self.elem_order(x), p))
                .expect(
                    "a proper p-subgroup is properly contained in a p-subgroup of its normalizer",
                );
            sub = sub.extended(self, x);
        }
        debug_assert_eq!(sub.order(), target);
        sub
    }

    /// A Hall `primes`-subgroup, found by seeded randomized greedy growth
    /// over `primes`-elements with an exhaustive fallback.
    pub fn hall_subgroup(&self, primes: &[u64], seed: u64) -> Result<Subgroup> {
        let target = arith::pi_part(self.order() as u64, primes) as usize;
        if target == self.order() {
            return Ok(Subgroup::whole(self));
        }
        if target == 1 {
            return Ok(Subgroup::trivial(self));
        }
        let factors: Vec<u64> = primes
            .iter()
            .copied()
            .filter(|p| self.order() as u64 % p == 0)
            .collect();
        if factors.len() == 1 {
            return Ok(self.sylow_subgroup(factors[0]));
        }
        let pi_elements: Vec<usize> = self
            .elements()
            .filter(|&x| x != 0 && self.is_pi_element(x, primes))
            .collect();
        let accept = |s: &Subgroup| arith::is_pi_number(s.order() as u64, primes);

        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut order = pi_elements.clone();
        for _ in 0..HALL_RETRY_BUDGET {
            order.shuffle(&mut rng);
            let mut sub = Subgroup::trivial(self);
            for &x in &order {
                if sub.contains(x) {
                    continue;
                }
                // Prefer extending inside the normalizer: then <H, x> = H<x>.
                if let Some(next) = sub.extended_bounded(self, x, target) {
                    if accept(&next) {
                        sub = next;
                        if sub.order() == target {
                            return Ok(sub);
                        }
                    }
                }
            }
        }
        if self.order() <= HALL_EXHAUSTIVE_LIMIT {
            if let Some(found) = self.hall_exhaustive(&pi_elements, target) {
                return Ok(found);
            }
        }
        Err(Error::NotFound {
            primes: factors,
            target: target as u64,
        })
    }

    fn hall_exhaustive(&self, pi_elements: &[usize], target: usize) -> Option<Subgroup> {
        // Hall subgroups of the groups handled here are generated by at most
        // three elements; closures of pairs and triples cover them.
        let reps: Vec<usize> = pi_elements
            .iter()
            .copied()
            .filter(|&x| self.elem_order(x) > 1)
            .collect();
        for (i, &a) in reps.iter().enumerate() {
            let Some(sa) = Subgroup::closure_bounded(self, &[a], target) else {
                continue;
            };
            if sa.order() == target {
                return Some(sa);
            }
            for (j, &b) in reps.iter().enumerate().skip(i + 1) {
                let Some(sab) = sa.extended_bounded(self, b, target) else {
                    continue;
                };
                if sab.order() == target {
                    return Some(sab);
                }
                for &c in &reps[j + 1..] {
                    if let Some(sabc) = sab.extended_bounded(self, c, target) {
                        if sabc.order() == target {
                            return Some(sabc);
                        }
                    }
                }
            }
        }
        None
    }

    /// `O_p(G)`: generated by the `p`-elements whose normal closure is a `p`-group.
    pub fn p_core(&self, p: u64) -> Subgroup {
        let limit = self.p_part(p) as usize;
        let whole = Subgroup::whole(self);
        let mut core = Subgroup::trivial(self);
        let mut rejected = FixedBitSet::with_capacity(self.order());
        for x in self.elements() {
            if x == 0
                || core.contains(x)
                || rejected.contains(x)
                || !arith::is_power_of(self.elem_order(x), p)
            {
                continue;
            }
            match self.normal_closure_bounded(&[x], &whole, limit) {
                Some(n) if arith::is_power_of(n.order() as u64, p) => core = core.join(self, &n),
                _ => {
                    // every conjugate of x fails the same way
                    let mut stack = vec![x];
                    rejected.insert(x);
                    while let Some(y) = stack.pop() {
                        for &g in self.generators() {
                            let z = self.conj(y, g);
                            if !rejected.contains(z) {
                                rejected.insert(z);
                                stack.push(z);
                            }
                        }
                    }
                }
            }
        }
        core
    }

    /// `O_p(G)` as the intersection of all conjugates of a Sylow `p`-subgroup.
    pub fn p_core_via_sylow(&self, p: u64) -> Subgroup {
        let mut core = self.sylow_subgroup(p).mask().clone();
        loop {
            let mut next = core.clone();
            for &g in self.generators() {
                let mut conj = FixedBitSet::with_capacity(self.order());
                for x in core.ones() {
                    conj.insert(self.conj(x, g));
                }
                next.intersect_with(&conj);
            }
            if next == core {
                break;
            }
            core = next;
        }
        Subgroup::from_mask(self, core)
    }

    /// `F(G)`, the product of the `p`-cores.
    pub fn fitting_subgroup(&self) -> Subgroup {
        self.primes()
            .into_iter()
            .fold(Subgroup::trivial(self), |acc, p| {
                acc.join(self, &self.p_core(p))
            })
    }

    /// Derived series of `G` reaches the trivial group.
    pub fn is_solvable(&self) -> bool {
        let mut cur = Subgroup::whole(self);
        while !cur.is_trivial() {
            let next = self.derived_of(&cur);
            if next.order() == cur.order() {
                return false;
            }
            cur = next;
        }
        true
    }

    /// Fitting subgroup and the length of `1 < F_1 < F_2 < ... = G`.
    pub fn fitting_series(&self) -> FittingSeries {
        let fitting = self.fitting_subgroup();
        let solvable = self.is_solvable();
        let height = if !solvable {
            None
        } else if self.order() == 1 {
            Some(0)
        } else {
            let mut height = 1;
            let mut current = fitting.clone();
            while current.order() < self.order() {
                let q = self
                    .quotient(&current)
                    .expect("Fitting chain terms are normal");
                let f = q.group.fitting_subgroup();
                let next = q.preimage(self, &f);
                assert!(
                    next.order() > current.order(),
                    "solvable quotient has a non-trivial Fitting subgroup"
                );
                current = next;
                height += 1;
            }
            Some(height)
        };
        FittingSeries {
            fitting,
            height,
            solvable,
        }
    }

    /// The `p'`-elements form a subgroup of order `|G|_{p'}`.
    pub fn is_p_nilpotent(&self, p: u64) -> bool {
        let target = self.order() / self.p_part(p) as usize;
        let complement: Vec<usize> = self
            .elements()
            .filter(|&x| self.elem_order(x) % p != 0)
            .collect();
        if complement.len() != target {
            return false;
        }
        let mut sub = Subgroup::trivial(self);
        for &x in &complement {
            if !sub.contains(x) {
                match sub.extended_bounded(self, x, target) {
                    Some(s) => sub = s,
                    None => return false,
                }
            }
        }
        sub.order() == target
    }

    pub fn is_nilpotent(&self) -> bool {
        self.primes()
            .into_iter()
            .all(|p| self.is_normal(&self.sylow_subgroup(p)))
    }

    pub fn predicates(&self) -> Predicates {
        Predicates {
            is_abelian: self.is_abelian(),
            is_nilpotent: self.is_nilpotent(),
            p_nilpotent: self
                .primes()
                .into_iter()
                .map(|p| (p, self.is_p_nilpotent(p)))
                .collect(),
        }
    }

    /// `Phi(P) = <P', P^p>` for a `p`-subgroup `P`.
    pub fn frattini_of_p_group(&self, sub: &Subgroup, p: u64) -> Result<Subgroup> {
        if !arith::is_power_of(sub.order() as u64, p) {
            return Err(Error::NotAPGroup {
                order: sub.order() as u64,
                p,
            });
        }
        let derived = self.derived_of(sub);
        let powers: Vec<usize> = sub.members().iter().map(|&x| self.pow(x, p)).collect();
        let mut phi = derived;
        for x in powers {
            if !phi.contains(x) {
                phi = phi.extended(self, x);
            }
        }
        Ok(phi)
    }
}

#[cfg(test)]
mod tests {
    use crate::group::{enumerate_group, Group, GroupSpec, Subgroup};

    fn perm(degree: usize, gens: &[&[usize]]) -> Group {
        enumerate_group(
            &GroupSpec::Perm {
                degree,
                generators: gens.iter().map(|g| g.to_vec()).collect(),
            },
            200_000,
        )
        .unwrap()
    }

    fn s3() -> Group {
        perm(3, &[&[2, 3, 1], &[2, 1, 3]])
    }
    fn s4() -> Group {
        perm(4, &[&[2, 3, 4, 1], &[2, 1, 3, 4]])
    }
    fn a5() -> Group {
        perm(5, &[&[2, 3, 1, 4, 5], &[1, 2, 4, 5, 3]])
    }
    fn q8() -> Group {
        perm(8, &[&[2, 5, 4, 7, 6, 1, 8, 3], &[3, 8, 5, 2, 7, 4, 1, 6]])
    }

    #[test]
    fn sylow_examples() {
        let g = s4();
        assert_eq!(g.sylow_subgroup(2).order(), 8);
        assert_eq!(g.sylow_subgroup(3).order(), 3);
        assert!(g.sylow_subgroup(5).is_trivial());
        let c6 = enumerate_group(&GroupSpec::cyclic(6), 10).unwrap();
        let p = c6.sylow_subgroup(3);
        assert_eq!(p.order(), 3);
        assert!(p.members().iter().all(|&x| 3 % c6.elem_order(x) == 0));
        assert_eq!(a5().sylow_subgroup(2).order(), 4);
    }

    #[test]
    fn hall_examples() {
        let g = s3();
        assert_eq!(g.hall_subgroup(&[3], 0).unwrap().order(), 3);
        assert_eq!(g.hall_subgroup(&[2, 3, 5], 0).unwrap().order(), 6);
        let a5 = a5();
        assert!(matches!(
            a5.hall_subgroup(&[2, 5], 7),
            Err(crate::Error::NotFound { .. })
        ));
        let a = a5.hall_subgroup(&[2, 3], 1).unwrap();
        assert_eq!(a.order(), 12);
        let s4 = s4();
        let h1 = s4.hall_subgroup(&[2, 3], 11).unwrap();
        assert_eq!(h1.order(), 24);
    }

    #[test]
    fn hall_is_deterministic() {
        let s4 = s4();
        for seed in 0..5 {
            let x = s4.hall_subgroup(&[2], seed).unwrap();
            let y = s4.hall_subgroup(&[2], seed).unwrap();
            assert_eq!(x, y);
        }
    }

    #[test]
    fn p_core_examples() {
        let g = s4();
        let o2 = g.p_core(2);
        assert_eq!(o2.order(), 4);
        assert!(o2.same_members(&g.p_core_via_sylow(2)));
        assert!(g.p_core(3).is_trivial());
        assert!(g.p_core_via_sylow(3).is_trivial());
        assert_eq!(q8().p_core(2).order(), 8);
    }

    #[test]
    fn fitting_examples() {
        let s4 = s4();
        let f = s4.fitting_series();
        assert_eq!(f.fitting.order(), 4);
        assert_eq!(f.height, Some(3));
        assert!(f.solvable);
        let s3 = s3().fitting_series();
        assert_eq!(s3.fitting.order(), 3);
        assert_eq!(s3.height, Some(2));
        let q = q8().fitting_series();
        assert_eq!(q.fitting.order(), 8);
        assert_eq!(q.height, Some(1));
        let a5 = a5().fitting_series();
        assert!(!a5.solvable);
        assert_eq!(a5.height, None);
        assert!(a5.fitting.is_trivial());
        assert_eq!(Group::trivial().fitting_series().height, Some(0));
    }

    #[test]
    fn predicate_examples() {
        let s4 = s4();
        // 16 elements of 3'-order (2-power order) vs |S4|_{3'} = 8
        assert_eq!(
            s4.elements().filter(|&x| s4.elem_order(x) % 3 != 0).count(),
            16
        );
        assert!(!s4.is_p_nilpotent(3));
        assert!(!s4.is_p_nilpotent(2));
        assert!(s3().is_p_nilpotent(2));
        assert!(!s3().is_p_nilpotent(3));
        let ab = enumerate_group(&GroupSpec::abelian(&[2, 6, 5]), 100).unwrap();
        let pr = ab.predicates();
        assert!(pr.is_abelian && pr.is_nilpotent);
        assert!(pr.p_nilpotent.iter().all(|&(_, b)| b));
        assert!(q8().is_nilpotent());
        assert!(!s4.is_nilpotent());
    }

    #[test]
    fn frattini_examples() {
        let q = q8();
        let whole = Subgroup::whole(&q);
        assert_eq!(q.frattini_of_p_group(&whole, 2).unwrap().order(), 2);
        let v = enumerate_group(&GroupSpec::abelian(&[2, 2, 2]), 10).unwrap();
        assert!(v
            .frattini_of_p_group(&Subgroup::whole(&v), 2)
            .unwrap()
            .is_trivial());
        let c4 = enumerate_group(&GroupSpec::cyclic(4), 10).unwrap();
        assert_eq!(
            c4.frattini_of_p_group(&Subgroup::whole(&c4), 2)
                .unwrap()
                .order(),
            2
        );
        let s3 = s3();
        assert!(matches!(
            s3.frattini_of_p_group(&Subgroup::whole(&s3), 2),
            Err(crate::Error::NotAPGroup { .. })
        ));
    }
}

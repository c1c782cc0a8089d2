use std::sync::Arc;

use fixedbitset::FixedBitSet;

use super::subgroup::greedy_generators;
use super::{Group, Rule, Subgroup};
use crate::error::{Error, Result};

/// A quotient `G/N` with the projection `G -> G/N` on element indices.
#[derive(Debug, Clone)]
pub struct Quotient {
    pub group: Group,
    pub projection: Vec<usize>,
}

impl Quotient {
    /// Image of a subgroup of the parent.
    pub fn image(&self, h: &Subgroup) -> Subgroup {
        let seeds: Vec<usize> = h.generators().iter().map(|&x| self.projection[x]).collect();
        Subgroup::closure(&self.group, &seeds)
    }

    /// Full preimage of a subgroup of the quotient.
    pub fn preimage(&self, parent: &Group, h: &Subgroup) -> Subgroup {
        let mut mask = FixedBitSet::with_capacity(parent.order());
        for x in parent.elements() {
            if h.contains(self.projection[x]) {
                mask.insert(x);
            }
        }
        Subgroup::from_mask(parent, mask)
    }
}

/// A subgroup materialized as a group in its own right.
#[derive(Debug, Clone)]
pub struct Embedding {
    pub group: Group,
    /// Local canonical index -> parent index.
    pub to_parent: Vec<usize>,
    from_parent: Vec<u32>,
}

impl Embedding {
    pub fn to_local(&self, parent_index: usize) -> Option<usize> {
        match self.from_parent[parent_index] {
            u32::MAX => None,
            i => Some(i as usize),
        }
    }

    /// Push a local subgroup into the parent.
    pub fn lift(&self, parent: &Group, h: &Subgroup) -> Subgroup {
        let members = h.members().iter().map(|&x| self.to_parent[x]).collect();
        Subgroup::from_members(parent, members)
    }

    /// Pull a parent subgroup contained in the embedded one down to local indices.
    pub fn restrict(&self, h: &Subgroup) -> Subgroup {
        let members = h
            .members()
            .iter()
            .map(|&x| {
                self.to_local(x)
                    .expect("subgroup lies inside the embedding")
            })
            .collect();
        Subgroup::from_members(&self.group, members)
    }
}

pub(crate) fn reduce_generators(g: Group) -> Group {
    let all: Vec<usize> = g.elements().collect();
    let gens = greedy_generators(&g, &all);
    let mut data = Arc::try_unwrap(g.0)
        .ok()
        .expect("freshly built group is uniquely owned");
    data.generators = gens;
    Group(Arc::new(data))
}

impl Group {
    /// Materialize `h` as a standalone group.
    pub fn embed(&self, h: &Subgroup) -> Embedding {
        let gens: Vec<u64> = h.generators().iter().map(|&x| x as u64).collect();
        let rule = Rule::Embedded {
            parent: self.clone(),
        };
        let (group, codes) = Group::from_codes(rule, self.order(), 0, &gens, u64::MAX)
            .expect("closure of a subgroup is bounded by the parent");
        let to_parent: Vec<usize> = codes.iter().map(|&c| c as usize).collect();
        debug_assert_eq!(to_parent.len(), h.order());
        let mut from_parent = vec![u32::MAX; self.order()];
        for (i, &p) in to_parent.iter().enumerate() {
            from_parent[p] = i as u32;
        }
        Embedding {
            group,
            to_parent,
            from_parent,
        }
    }

    /// `{h in within : hx = xh}`
    pub fn centralizer(&self, x: usize, within: &Subgroup) -> Subgroup {
        let members = within
            .members()
            .iter()
            .copied()
            .filter(|&h| self.commute(h, x))
            .collect();
        Subgroup::from_members(self, members)
    }

    /// Elements of `within` commuting with every element of `s`.
    pub fn centralizer_of(&self, s: &Subgroup, within: &Subgroup) -> Subgroup {
        let gens = s.generators();
        let members = within
            .members()
            .iter()
            .copied()
            .filter(|&h| gens.iter().all(|&x| self.commute(h, x)))
            .collect();
        Subgroup::from_members(self, members)
    }

    /// `Z(H)`
    pub fn center_of(&self, h: &Subgroup) -> Subgroup {
        self.centralizer_of(h, h)
    }

    pub fn center(&self) -> Subgroup {
        self.center_of(&Subgroup::whole(self))
    }

    /// Generators of `h` commute pairwise.
    pub fn is_abelian_subgroup(&self, h: &Subgroup) -> bool {
        let gens = h.generators();
        gens.iter()
            .enumerate()
            .all(|(i, &a)| gens[i + 1..].iter().all(|&b| self.commute(a, b)))
    }

    /// `N_within(s)`
    pub fn normalizer(&self, s: &Subgroup, within: &Subgroup) -> Subgroup {
        let gens = s.generators();
        let members = within
            .members()
            .iter()
            .copied()
            .filter(|&w| gens.iter().all(|&x| s.contains(self.conj(x, w))))
            .collect();
        Subgroup::from_members(self, members)
    }

    /// `n` is normalized by every generator of `within`.
    pub fn is_normal_in(&self, n: &Subgroup, within: &Subgroup) -> bool {
        within
            .generators()
            .iter()
            .all(|&w| n.generators().iter().all(|&x| n.contains(self.conj(x, w))))
    }

    pub fn is_normal(&self, n: &Subgroup) -> bool {
        self.is_normal_in(n, &Subgroup::whole(self))
    }

    /// Smallest subgroup containing `seeds` and normalized by `within`.
    pub fn normal_closure(&self, seeds: &[usize], within: &Subgroup) -> Subgroup {
        self.normal_closure_bounded(seeds, within, usize::MAX)
            .expect("unbounded closure")
    }

    pub fn normal_closure_bounded(
        &self,
        seeds: &[usize],
        within: &Subgroup,
        limit: usize,
    ) -> Option<Subgroup> {
        let mut n = Subgroup::closure_bounded(self, seeds, limit)?;
        let mut i = 0;
        while i < n.generators().len() {
            let x = n.generators()[i];
            for &w in within.generators() {
                let y = self.conj(x, w);
                if !n.contains(y) {
                    n = n.extended_bounded(self, y, limit)?;
                }
            }
            i += 1;
        }
        Some(n)
    }

    /// `[X, Y]`, the subgroup generated by all commutators `[x, y]`.
    pub fn commutator_subgroup(&self, x: &Subgroup, y: &Subgroup) -> Subgroup {
        let mut seeds = Vec::new();
        for &a in x.generators() {
            for &b in y.generators() {
                seeds.push(self.comm(a, b));
            }
        }
        let joined = x.join(self, y);
        self.normal_closure(&seeds, &joined)
    }

    /// `H'`
    pub fn derived_of(&self, h: &Subgroup) -> Subgroup {
        self.commutator_subgroup(h, h)
    }

    pub fn derived_subgroup(&self) -> Subgroup {
        self.derived_of(&Subgroup::whole(self))
    }

    /// `G/N` with canonical coset representatives (least member index).
    pub fn quotient(&self, n: &Subgroup) -> Result<Quotient> {
        if !self.is_normal(n) {
            return Err(Error::NotNormal);
        }
        let order = self.order();
        let mut coset_of = vec![u32::MAX; order];
        let mut reps = Vec::with_capacity(order / n.order());
        for x in self.elements() {
            if coset_of[x] != u32::MAX {
                continue;
            }
            let id = reps.len() as u32;
            reps.push(x as u32);
            for &m in n.members() {
                coset_of[self.mul(x, m)] = id;
            }
        }
        let k = reps.len();
        let gens: Vec<u64> = self
            .generators()
            .iter()
            .map(|&g| coset_of[g] as u64)
            .filter(|&c| c != 0)
            .collect();
        let rule = Rule::Quotient {
            parent: self.clone(),
            reps,
            coset_of: coset_of.clone(),
        };
        let (group, codes) = Group::from_codes(rule, k, 0, &gens, u64::MAX)?;
        let mut canon = vec![0usize; k];
        for (i, &c) in codes.iter().enumerate() {
            canon[c as usize] = i;
        }
        let projection = coset_of.iter().map(|&c| canon[c as usize]).collect();
        Ok(Quotient { group, projection })
    }
}

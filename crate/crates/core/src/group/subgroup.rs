use fixedbitset::FixedBitSet;

use super::Group;

/// A subgroup of an enumerated group, stored as a sorted member list plus a
/// membership mask over the parent's element indices.
#[derive(Clone, PartialEq, Eq)]
pub struct Subgroup {
    members: Vec<usize>,
    mask: FixedBitSet,
    generators: Vec<usize>,
}

impl std::fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Subgroup")
            .field("order", &self.order())
            .field("generators", &self.generators)
            .finish()
    }
}

impl Subgroup {
    pub fn trivial(g: &Group) -> Subgroup {
        let mut mask = FixedBitSet::with_capacity(g.order());
        mask.insert(0);
        Subgroup {
            members: vec![0],
            mask,
            generators: Vec::new(),
        }
    }

    pub fn whole(g: &Group) -> Subgroup {
        let mut mask = FixedBitSet::with_capacity(g.order());
        mask.insert_range(..);
        Subgroup {
            members: g.elements().collect(),
            mask,
            generators: g.generators().to_vec(),
        }
    }

    /// Smallest subgroup containing `seed`; its generators are exactly the
    /// non-identity seed elements.
    pub fn closure(g: &Group, seed: &[usize]) -> Subgroup {
        let gens: Vec<usize> = dedup(seed.iter().copied().filter(|&x| x != 0));
        Self::closure_bounded(g, &gens, usize::MAX).expect("unbounded closure")
    }

    /// Closure that gives up (returns `None`) once it exceeds `limit` elements.
    pub fn closure_bounded(g: &Group, gens: &[usize], limit: usize) -> Option<Subgroup> {
        let mut sub = Subgroup::trivial(g);
        for &x in gens {
            if x == 0 {
                continue;
            }
            if sub.contains(x) {
                sub.generators.push(x);
                continue;
            }
            sub = sub.extended_bounded(g, x, limit)?;
        }
        Some(sub)
    }

    /// `<self, x>`.
    pub fn extended(&self, g: &Group, x: usize) -> Subgroup {
        self.extended_bounded(g, x, usize::MAX)
            .expect("unbounded closure")
    }

    /// `<self, x>`, or `None` once the result exceeds `limit` elements.
    pub fn extended_bounded(&self, g: &Group, x: usize, limit: usize) -> Option<Subgroup> {
        let mut generators = self.generators.clone();
        if x == 0 || self.contains(x) {
            if x != 0 {
                generators.push(x);
            }
            return Some(Subgroup {
                members: self.members.clone(),
                mask: self.mask.clone(),
                generators,
            });
        }
        generators.push(x);
        let mut mask = self.mask.clone();
        let mut list = self.members.clone();
        // Old members are already closed under the old generators.
        let old = list.len();
        for i in 0..old {
            let y = g.mul(list[i], x);
            if !mask.contains(y) {
                mask.insert(y);
                list.push(y);
            }
        }
        if list.len() > limit {
            return None;
        }
        let mut head = old;
        while head < list.len() {
            let m = list[head];
            head += 1;
            for &s in &generators {
                let y = g.mul(m, s);
                if !mask.contains(y) {
                    mask.insert(y);
                    list.push(y);
                    if list.len() > limit {
                        return None;
                    }
                }
            }
        }
        list.sort_unstable();
        Some(Subgroup {
            members: list,
            mask,
            generators,
        })
    }

    /// Wrap a member set already known to be a subgroup; computes a small
    /// generating set greedily (largest element orders first).
    pub fn from_members(g: &Group, mut members: Vec<usize>) -> Subgroup {
        members.sort_unstable();
        members.dedup();
        let mut mask = FixedBitSet::with_capacity(g.order());
        for &m in &members {
            mask.insert(m);
        }
        let generators = greedy_generators(g, &members);
        Subgroup {
            members,
            mask,
            generators,
        }
    }

    pub(crate) fn from_mask(g: &Group, mask: FixedBitSet) -> Subgroup {
        let members: Vec<usize> = mask.ones().collect();
        let generators = greedy_generators(g, &members);
        Subgroup {
            members,
            mask,
            generators,
        }
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn mask(&self) -> &FixedBitSet {
        &self.mask
    }

    #[inline]
    pub fn contains(&self, x: usize) -> bool {
        self.mask.contains(x)
    }

    pub fn is_trivial(&self) -> bool {
        self.members.len() == 1
    }

    pub fn is_subset(&self, other: &Subgroup) -> bool {
        self.mask.is_subset(&other.mask)
    }

    pub fn same_members(&self, other: &Subgroup) -> bool {
        self.members == other.members
    }

    pub fn intersection(&self, g: &Group, other: &Subgroup) -> Subgroup {
        let mut mask = self.mask.clone();
        mask.intersect_with(&other.mask);
        Subgroup::from_mask(g, mask)
    }

    /// `<self, other>`.
    pub fn join(&self, g: &Group, other: &Subgroup) -> Subgroup {
        let mut sub = self.clone();
        for &x in other.generators() {
            sub = sub.extended(g, x);
        }
        sub
    }

    /// `g^-1 H g`.
    pub fn conjugate(&self, group: &Group, g: usize) -> Subgroup {
        let members: Vec<usize> = self.members.iter().map(|&h| group.conj(h, g)).collect();
        let mut mask = FixedBitSet::with_capacity(group.order());
        for &m in &members {
            mask.insert(m);
        }
        let mut members = members;
        members.sort_unstable();
        Subgroup {
            members,
            mask,
            generators: self.generators.iter().map(|&h| group.conj(h, g)).collect(),
        }
    }

    /// Lagrange: the order divides the parent order.
    pub fn satisfies_lagrange(&self, g: &Group) -> bool {
        g.order() % self.order() == 0
    }

    /// Closed under multiplication and inversion and contains the identity.
    pub fn is_closed(&self, g: &Group) -> bool {
        self.contains(0)
            && self.members.iter().all(|&x| self.contains(g.inv(x)))
            && self
                .members
                .iter()
                .all(|&x| self.generators.iter().all(|&s| self.contains(g.mul(x, s))))
            && Subgroup::closure(g, &self.generators).members == self.members
    }
}

fn dedup(it: impl Iterator<Item = usize>) -> Vec<usize> {
    let mut out: Vec<usize> = Vec::new();
    for x in it {
        if !out.contains(&x) {
            out.push(x);
        }
    }
    out
}

pub(crate) fn greedy_generators(g: &Group, members: &[usize]) -> Vec<usize> {
    let mut sub = Subgroup::trivial(g);
    let mut gens = Vec::new();
    for &x in members.iter().rev() {
        if sub.order() == members.len() {
            break;
        }
        if !sub.contains(x) {
            sub = sub.extended(g, x);
            gens.push(x);
        }
    }
    gens
}

use serde::Serialize;

use crate::arith;
use crate::group::{Group, Subgroup};

/// Centralizer-index cross-check runs automatically up to this order.
pub const CROSS_CHECK_LIMIT: usize = 20_000;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConjugacyClass {
    /// Least canonical index in the class.
    pub representative: usize,
    pub size: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassData {
    /// Classes ordered by representative.
    pub classes: Vec<ConjugacyClass>,
    /// Class sizes, ascending, with multiplicity.
    pub size_multiset: Vec<u64>,
    /// Prime divisors of each class size, parallel to `classes`.
    pub pi_of_class: Vec<Vec<u64>>,
    /// Class index of every element.
    #[serde(skip)]
    pub class_of: Vec<u32>,
}

impl ClassData {
    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    pub fn class_size_of(&self, x: usize) -> u64 {
        self.classes[self.class_of[x] as usize].size
    }

    /// `π_G(x)`: primes dividing `|x^G|`.
    pub fn pi_of_element(&self, x: usize) -> &[u64] {
        &self.pi_of_class[self.class_of[x] as usize]
    }

    /// Distinct class sizes, ascending.
    pub fn size_set(&self) -> Vec<u64> {
        let mut s = self.size_multiset.clone();
        s.dedup();
        s
    }

    /// Members of class `c`, ascending.
    pub fn members(&self, c: usize) -> Vec<usize> {
        (0..self.class_of.len())
            .filter(|&x| self.class_of[x] as usize == c)
            .collect()
    }

    /// `|G : C_G(rep)|` for every class, in class order.
    pub fn centralizer_index_sizes(&self, g: &Group) -> Vec<u64> {
        let whole = Subgroup::whole(g);
        self.classes
            .iter()
            .map(|c| (g.order() / g.centralizer(c.representative, &whole).order()) as u64)
            .collect()
    }
}

/// Conjugacy classes by flooding each element's orbit under conjugation by
/// the generators.
pub fn conjugacy_class_data(g: &Group) -> ClassData {
    let n = g.order();
    let mut class_of = vec![u32::MAX; n];
    let mut classes = Vec::new();
    let mut stack = Vec::new();
    for x in g.elements() {
        if class_of[x] != u32::MAX {
            continue;
        }
        let id = classes.len() as u32;
        class_of[x] = id;
        stack.push(x);
        let mut size = 1u64;
        while let Some(y) = stack.pop() {
            for &s in g.generators() {
                let z = g.conj(y, s);
                if class_of[z] == u32::MAX {
                    class_of[z] = id;
                    size += 1;
                    stack.push(z);
                }
            }
        }
        classes.push(ConjugacyClass {
            representative: x,
            size,
        });
    }
    let pi_of_class: Vec<Vec<u64>> = classes
        .iter()
        .map(|c| arith::prime_divisors(c.size))
        .collect();
    let mut size_multiset: Vec<u64> = classes.iter().map(|c| c.size).collect();
    size_multiset.sort_unstable();
    let data = ClassData {
        classes,
        size_multiset,
        pi_of_class,
        class_of,
    };
    if n <= CROSS_CHECK_LIMIT {
        let indices = data.centralizer_index_sizes(g);
        for (c, idx) in data.classes.iter().zip(indices) {
            assert_eq!(
                c.size, idx,
                "orbit size disagrees with centralizer index for class of {}",
                c.representative
            );
        }
    }
    data
}

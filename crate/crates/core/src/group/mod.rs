//! Enumerated finite groups and subgroup-level algebra.
//!
//! Every group is fully materialized: elements are canonical indices
//! `0..order` (index 0 is the identity, the rest sorted by element order and
//! then discovery order). Multiplication is a cached Cayley table for small
//! groups and is otherwise computed on demand from the native representation
//! (permutations, extension coordinates, factor tuples, parent indices).

use std::collections::HashMap;
use std::hash::Hash;
use std::sync::Arc;

use crate::arith;
use crate::error::{Error, Result};

mod ops;
mod spec;
mod subgroup;
mod sylow;

pub use ops::{Embedding, Quotient};
pub use spec::{enumerate_group, GroupSpec};
pub use subgroup::Subgroup;
pub use sylow::{FittingSeries, Predicates};

/// Groups up to this order get a full multiplication table.
pub const TABLE_LIMIT: usize = 5_000;

/// Default enumeration cap (elements).
pub const DEFAULT_CAP: u64 = 100_000;

/// Largest number of cyclic factors allowed on either side of an extension spec.
pub const MAX_EXTENSION_FACTORS: usize = 16;

/// A fully enumerated finite group. Cloning is cheap (shared storage).
#[derive(Clone)]
pub struct Group(Arc<GroupData>);

struct GroupData {
    mul: Mul,
    inv: Vec<u32>,
    orders: Vec<u32>,
    generators: Vec<usize>,
    factors: Vec<(u64, u32)>,
}

impl std::fmt::Debug for Group {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Group")
            .field("order", &self.order())
            .field("generators", &self.0.generators)
            .finish()
    }
}

enum Mul {
    Table {
        n: usize,
        table: Vec<u16>,
    },
    Coded {
        codes: Vec<u64>,
        lookup: Vec<u32>,
        rule: Rule,
    },
    Perm {
        perms: Vec<Box<[u16]>>,
        lookup: HashMap<Box<[u16]>, u32>,
    },
}

impl Mul {
    #[inline]
    fn mul(&self, a: usize, b: usize) -> usize {
        match self {
            Mul::Table { n, table } => table[a * n + b] as usize,
            Mul::Coded {
                codes,
                lookup,
                rule,
            } => lookup[rule.apply(codes[a], codes[b]) as usize] as usize,
            Mul::Perm { perms, lookup } => {
                let composed = compose(&perms[a], &perms[b]);
                lookup[&composed] as usize
            }
        }
    }

    /// Re-index: new element `i` is old element `perm[i]`.
    fn permuted(self, perm: &[usize]) -> Mul {
        match self {
            Mul::Table { .. } => unreachable!("tables are built after canonical ordering"),
            Mul::Coded {
                codes,
                lookup,
                rule,
            } => {
                let codes: Vec<u64> = perm.iter().map(|&i| codes[i]).collect();
                let mut lookup = vec![u32::MAX; lookup.len()];
                for (i, &c) in codes.iter().enumerate() {
                    lookup[c as usize] = i as u32;
                }
                Mul::Coded {
                    codes,
                    lookup,
                    rule,
                }
            }
            Mul::Perm { mut perms, .. } => {
                let mut taken: Vec<Option<Box<[u16]>>> = perms.drain(..).map(Some).collect();
                let perms: Vec<Box<[u16]>> =
                    perm.iter().map(|&i| taken[i].take().unwrap()).collect();
                let lookup = perms
                    .iter()
                    .enumerate()
                    .map(|(i, p)| (p.clone(), i as u32))
                    .collect();
                Mul::Perm { perms, lookup }
            }
        }
    }

    fn codes(&self) -> Option<&[u64]> {
        match self {
            Mul::Coded { codes, .. } => Some(codes),
            _ => None,
        }
    }
}

/// `x^(a b) = (x^a)^b`: apply `a` first.
fn compose(a: &[u16], b: &[u16]) -> Box<[u16]> {
    a.iter().map(|&x| b[x as usize]).collect()
}

/// Native multiplication on integer codes.
enum Rule {
    Table {
        n: usize,
        table: Vec<u32>,
    },
    Extension(ExtensionRule),
    Direct {
        factors: Vec<Group>,
        radix: Vec<u64>,
    },
    Embedded {
        parent: Group,
    },
    Quotient {
        parent: Group,
        reps: Vec<u32>,
        coset_of: Vec<u32>,
    },
}

impl Rule {
    #[inline]
    fn apply(&self, a: u64, b: u64) -> u64 {
        match self {
            Rule::Table { n, table } => table[a as usize * n + b as usize] as u64,
            Rule::Extension(ext) => ext.apply(a, b),
            Rule::Direct { factors, radix } => {
                let (mut a, mut b) = (a, b);
                let mut out = 0u64;
                let mut stride = 1u64;
                for (f, &m) in factors.iter().zip(radix) {
                    let x = f.mul((a % m) as usize, (b % m) as usize) as u64;
                    out += x * stride;
                    stride *= m;
                    a /= m;
                    b /= m;
                }
                out
            }
            Rule::Embedded { parent } => parent.mul(a as usize, b as usize) as u64,
            Rule::Quotient {
                parent,
                reps,
                coset_of,
            } => {
                let x = parent.mul(reps[a as usize] as usize, reps[b as usize] as usize);
                coset_of[x] as u64
            }
        }
    }
}

/// Semidirect product of an abelian base `C_{n_1} x ... x C_{n_k}` by an
/// abelian actor `C_{m_1} x ... x C_{m_l}`, each actor generator raising each
/// base generator to a fixed power. Code = base coordinates (mixed radix)
/// followed by actor coordinates.
struct ExtensionRule {
    base: Vec<u64>,
    actor: Vec<u64>,
    base_size: u64,
    /// `powers[j][i][k] = e_ji^k mod n_i`
    powers: Vec<Vec<Vec<u64>>>,
}

impl ExtensionRule {
    fn new(base: &[u64], actor: &[u64], action: &[Vec<u64>]) -> Self {
        let powers = actor
            .iter()
            .enumerate()
            .map(|(j, &m)| {
                base.iter()
                    .enumerate()
                    .map(|(i, &n)| {
                        let e = action[j][i] % n.max(1);
                        let mut acc = 1 % n;
                        (0..m)
                            .map(|_| {
                                let cur = acc;
                                acc = acc * e % n;
                                cur
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect();
        ExtensionRule {
            base: base.to_vec(),
            actor: actor.to_vec(),
            base_size: base.iter().product(),
            powers,
        }
    }

    fn encode(&self, base: &[u64], act: &[u64]) -> u64 {
        let mut code = 0;
        let mut stride = 1;
        for (&c, &n) in base.iter().zip(&self.base) {
            code += c * stride;
            stride *= n;
        }
        for (&c, &m) in act.iter().zip(&self.actor) {
            code += c * stride;
            stride *= m;
        }
        code
    }

    #[inline]
    fn apply(&self, a: u64, b: u64) -> u64 {
        // (u, x)(v, y) = (u + x(v), x + y)
        let (mut ab, mut aa) = (a % self.base_size, a / self.base_size);
        let (mut bb, mut ba) = (b % self.base_size, b / self.base_size);
        let mut xs = [0u64; MAX_EXTENSION_FACTORS];
        let mut act_code = 0;
        let mut stride = 1;
        for (j, &m) in self.actor.iter().enumerate() {
            let x = aa % m;
            let y = ba % m;
            xs[j] = x;
            act_code += ((x + y) % m) * stride;
            stride *= m;
            aa /= m;
            ba /= m;
        }
        let mut base_code = 0;
        let mut stride = 1;
        for (i, &n) in self.base.iter().enumerate() {
            let u = ab % n;
            let v = bb % n;
            let mut e = 1 % n;
            for (j, pw) in self.powers.iter().enumerate() {
                e = e * pw[i][xs[j] as usize] % n;
            }
            base_code += ((u + e * v) % n) * stride;
            stride *= n;
            ab /= n;
            bb /= n;
        }
        base_code + act_code * self.base_size
    }
}

/// Breadth-first closure of `gens` under right multiplication.
fn discover<T, F>(identity: T, gens: &[T], mul: F, cap: u64) -> Result<Vec<T>>
where
    T: Clone + Eq + Hash,
    F: Fn(&T, &T) -> T,
{
    let mut seen: HashMap<T, ()> = HashMap::new();
    seen.insert(identity.clone(), ());
    let mut elems = vec![identity];
    let mut head = 0;
    while head < elems.len() {
        let x = elems[head].clone();
        head += 1;
        for g in gens {
            let y = mul(&x, g);
            if !seen.contains_key(&y) {
                if elems.len() as u64 >= cap {
                    return Err(Error::OrderExceedsCap {
                        order: cap + 1,
                        cap,
                    });
                }
                seen.insert(y.clone(), ());
                elems.push(y);
            }
        }
    }
    Ok(elems)
}

impl Group {
    /// Finish construction from a multiplication in discovery order
    /// (identity at 0). Returns the group and, for coded groups, the code of
    /// every canonical element.
    fn finish(mul: Mul, n: usize, gen_positions: Vec<usize>) -> (Group, Vec<u64>) {
        let order = n as u64;
        let factors = arith::factorize(order);
        let pow = |x: usize, mut k: u64| {
            let mut acc = 0usize;
            let mut base = x;
            while k > 0 {
                if k & 1 == 1 {
                    acc = mul.mul(acc, base);
                }
                base = mul.mul(base, base);
                k >>= 1;
            }
            acc
        };
        let orders_disc: Vec<u64> = (0..n)
            .map(|x| {
                let mut ord = order;
                for &(p, _) in &factors {
                    while ord % p == 0 && pow(x, ord / p) == 0 {
                        ord /= p;
                    }
                }
                ord
            })
            .collect();
        let mut perm: Vec<usize> = (0..n).collect();
        perm.sort_by_key(|&i| (orders_disc[i], i));
        let mut position = vec![0usize; n];
        for (new, &old) in perm.iter().enumerate() {
            position[old] = new;
        }
        let mul = mul.permuted(&perm);
        let codes = mul.codes().map(|c| c.to_vec()).unwrap_or_default();
        let orders: Vec<u32> = perm.iter().map(|&i| orders_disc[i] as u32).collect();

        let pow = |x: usize, mut k: u64| {
            let mut acc = 0usize;
            let mut base = x;
            while k > 0 {
                if k & 1 == 1 {
                    acc = mul.mul(acc, base);
                }
                base = mul.mul(base, base);
                k >>= 1;
            }
            acc
        };
        let inv: Vec<u32> = (0..n)
            .map(|x| pow(x, orders[x] as u64 - 1) as u32)
            .collect();

        let mut seen = vec![false; n];
        let mut generators = Vec::new();
        for g in gen_positions.into_iter().map(|g| position[g]) {
            if g != 0 && !seen[g] {
                seen[g] = true;
                generators.push(g);
            }
        }

        let mul = if n <= TABLE_LIMIT {
            let mut table = vec![0u16; n * n];
            for a in 0..n {
                for b in 0..n {
                    table[a * n + b] = mul.mul(a, b) as u16;
                }
            }
            Mul::Table { n, table }
        } else {
            mul
        };
        let group = Group(Arc::new(GroupData {
            mul,
            inv,
            orders,
            generators,
            factors,
        }));
        (group, codes)
    }

    /// Build a group whose elements are integer codes under `rule`;
    /// `code_space` bounds every code.
    fn from_codes(
        rule: Rule,
        code_space: usize,
        identity: u64,
        gens: &[u64],
        cap: u64,
    ) -> Result<(Group, Vec<u64>)> {
        let elems = discover(identity, gens, |a, b| rule.apply(*a, *b), cap)?;
        let mut lookup = vec![u32::MAX; code_space];
        for (i, &c) in elems.iter().enumerate() {
            lookup[c as usize] = i as u32;
        }
        let gen_positions = gens.iter().map(|&g| lookup[g as usize] as usize).collect();
        let n = elems.len();
        let mul = Mul::Coded {
            codes: elems,
            lookup,
            rule,
        };
        Ok(Group::finish(mul, n, gen_positions))
    }

    fn from_perms(degree: usize, gens: &[Box<[u16]>], cap: u64) -> Result<Group> {
        let identity: Box<[u16]> = (0..degree as u16).collect();
        let elems = discover(identity, gens, |a, b| compose(a, b), cap)?;
        let lookup: HashMap<Box<[u16]>, u32> = elems
            .iter()
            .enumerate()
            .map(|(i, p)| (p.clone(), i as u32))
            .collect();
        let gen_positions = gens.iter().map(|g| lookup[g] as usize).collect();
        let n = elems.len();
        let mul = Mul::Perm {
            perms: elems,
            lookup,
        };
        Ok(Group::finish(mul, n, gen_positions).0)
    }

    pub fn trivial() -> Group {
        let rule = Rule::Table {
            n: 1,
            table: vec![0],
        };
        Group::from_codes(rule, 1, 0, &[], 1).unwrap().0
    }

    pub fn order(&self) -> usize {
        self.0.inv.len()
    }

    /// Ascending `(prime, exponent)` factorization of the group order.
    pub fn order_factors(&self) -> &[(u64, u32)] {
        &self.0.factors
    }

    /// Prime divisors of `|G|`, ascending.
    pub fn primes(&self) -> Vec<u64> {
        self.0.factors.iter().map(|&(p, _)| p).collect()
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn generators(&self) -> &[usize] {
        &self.0.generators
    }

    pub fn has_table(&self) -> bool {
        matches!(self.0.mul, Mul::Table { .. })
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.0.mul.mul(a, b)
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.0.inv[a] as usize
    }

    #[inline]
    pub fn elem_order(&self, a: usize) -> u64 {
        self.0.orders[a] as u64
    }

    pub fn element_orders(&self) -> &[u32] {
        &self.0.orders
    }

    pub fn pow(&self, x: usize, k: u64) -> usize {
        let k = k % self.elem_order(x);
        let mut acc = 0;
        let mut base = x;
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        acc
    }

    /// `x^g = g^-1 x g`
    #[inline]
    pub fn conj(&self, x: usize, g: usize) -> usize {
        self.mul(self.mul(self.inv(g), x), g)
    }

    /// `[a, b] = a^-1 b^-1 a b`
    #[inline]
    pub fn comm(&self, a: usize, b: usize) -> usize {
        let ab = self.mul(a, b);
        let ba = self.mul(b, a);
        self.mul(self.inv(ba), ab)
    }

    #[inline]
    pub fn commute(&self, a: usize, b: usize) -> bool {
        self.mul(a, b) == self.mul(b, a)
    }

    pub fn is_abelian(&self) -> bool {
        let gens = self.generators();
        gens.iter()
            .enumerate()
            .all(|(i, &a)| gens[i + 1..].iter().all(|&b| self.commute(a, b)))
    }

    /// True when the order of `x` is a product of primes in `primes`.
    pub fn is_pi_element(&self, x: usize, primes: &[u64]) -> bool {
        arith::is_pi_number(self.elem_order(x), primes)
    }

    /// Elements in canonical order.
    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s3() -> Group {
        let gens: Vec<Box<[u16]>> = vec![vec![1, 2, 0].into(), vec![1, 0, 2].into()];
        Group::from_perms(3, &gens, 100).unwrap()
    }

    #[test]
    fn canonical_order_puts_identity_first_and_sorts_by_order() {
        let g = s3();
        assert_eq!(g.order(), 6);
        assert_eq!(g.elem_order(0), 1);
        let orders: Vec<u32> = g.element_orders().to_vec();
        assert_eq!(orders, vec![1, 2, 2, 2, 3, 3]);
        for x in g.elements() {
            assert_eq!(g.mul(x, 0), x);
            assert_eq!(g.mul(0, x), x);
            assert_eq!(g.mul(x, g.inv(x)), 0);
        }
    }

    #[test]
    fn extension_rule_multiplies_semidirectly() {
        // C7 x| C3 with generator acting by squaring.
        let rule = ExtensionRule::new(&[7], &[3], &[vec![2]]);
        let a = rule.encode(&[1], &[0]);
        let x = rule.encode(&[0], &[1]);
        // x a x^-1 = a^2  <=>  x a = a^2 x
        let xa = rule.apply(x, a);
        let a2x = rule.apply(rule.encode(&[2], &[0]), x);
        assert_eq!(xa, a2x);
    }

    #[test]
    fn cap_is_enforced_during_discovery() {
        let gens: Vec<Box<[u16]>> = vec![vec![1, 2, 3, 0].into(), vec![1, 0, 2, 3].into()];
        let err = Group::from_perms(4, &gens, 10).unwrap_err();
        assert!(matches!(err, Error::OrderExceedsCap { cap: 10, .. }));
    }
}

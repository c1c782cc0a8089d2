use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::{ExtensionRule, Group, Rule, MAX_EXTENSION_FACTORS};
use crate::arith;
use crate::error::{Error, Result};

/// Full associativity check for table specs up to this order; random triples above.
const FULL_ASSOCIATIVITY_LIMIT: usize = 256;
const SPOT_CHECK_TRIPLES: usize = 20_000;

/// Serialized description of a finite group.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum GroupSpec {
    /// Permutations of `{1..degree}`, each generator given by its image list.
    Perm {
        degree: usize,
        generators: Vec<Vec<usize>>,
    },
    /// Square multiplication table over element indices `0..n`.
    Table {
        table: Vec<Vec<usize>>,
    },
    /// `(C_{base[0]} x ...) x| (C_{actor[0]} x ...)`; actor generator `j`
    /// maps base generator `i` to its `action[j][i]`-th power.
    Extension {
        base: Vec<u64>,
        actor: Vec<u64>,
        action: Vec<Vec<u64>>,
    },
    Direct {
        factors: Vec<GroupSpec>,
    },
}

impl GroupSpec {
    /// Order known without enumeration (`None` for permutation specs).
    pub fn projected_order(&self) -> Option<u64> {
        match self {
            GroupSpec::Perm { .. } => None,
            GroupSpec::Table { table } => Some(table.len() as u64),
            GroupSpec::Extension { base, actor, .. } => Some(base.iter().chain(actor).product()),
            GroupSpec::Direct { factors } => factors
                .iter()
                .map(GroupSpec::projected_order)
                .try_fold(1u64, |acc, o| o.map(|o| acc.saturating_mul(o))),
        }
    }

    /// Hex SHA-256 of the compact JSON encoding.
    pub fn digest(&self) -> String {
        let json = serde_json::to_vec(self).expect("specs always serialize");
        hex::encode(Sha256::digest(&json))
    }

    /// Cyclic group `C_n` as an extension with trivial actor.
    pub fn cyclic(n: u64) -> GroupSpec {
        GroupSpec::Extension {
            base: vec![n],
            actor: vec![1],
            action: vec![vec![1]],
        }
    }

    /// Abelian group with the given cyclic factor orders.
    pub fn abelian(orders: &[u64]) -> GroupSpec {
        GroupSpec::Extension {
            base: orders.to_vec(),
            actor: vec![1],
            action: vec![vec![1; orders.len()]],
        }
    }
}

/// Materialize a group from its spec.
pub fn enumerate_group(spec: &GroupSpec, cap: u64) -> Result<Group> {
    if let Some(order) = spec.projected_order() {
        if order > cap {
            return Err(Error::OrderExceedsCap { order, cap });
        }
    }
    match spec {
        GroupSpec::Perm { degree, generators } => perm_group(*degree, generators, cap),
        GroupSpec::Table { table } => table_group(table, cap),
        GroupSpec::Extension {
            base,
            actor,
            action,
        } => extension_group(base, actor, action, cap),
        GroupSpec::Direct { factors } => {
            let mut groups = Vec::with_capacity(factors.len());
            for f in factors {
                groups.push(enumerate_group(f, cap)?);
            }
            let order: u64 = groups.iter().map(|g| g.order() as u64).product();
            if order > cap {
                return Err(Error::OrderExceedsCap { order, cap });
            }
            direct_product(groups, cap)
        }
    }
}

fn perm_group(degree: usize, generators: &[Vec<usize>], cap: u64) -> Result<Group> {
    if degree == 0 || degree > u16::MAX as usize {
        return Err(Error::MalformedSpec(format!("unsupported degree {degree}")));
    }
    let mut gens = Vec::with_capacity(generators.len());
    for (k, g) in generators.iter().enumerate() {
        if g.len() != degree {
            return Err(Error::MalformedSpec(format!(
                "generator {k} has {} images, degree is {degree}",
                g.len()
            )));
        }
        let mut hit = vec![false; degree];
        for &img in g {
            if img == 0 || img > degree || hit[img - 1] {
                return Err(Error::MalformedSpec(format!(
                    "generator {k} is not a bijection on 1..{degree}"
                )));
            }
            hit[img - 1] = true;
        }
        gens.push(g.iter().map(|&i| (i - 1) as u16).collect::<Box<[u16]>>());
    }
    Group::from_perms(degree, &gens, cap)
}

fn table_group(table: &[Vec<usize>], cap: u64) -> Result<Group> {
    let n = table.len();
    if n == 0 {
        return Err(Error::MalformedSpec("empty table".into()));
    }
    if n as u64 > cap {
        return Err(Error::OrderExceedsCap {
            order: n as u64,
            cap,
        });
    }
    for (i, row) in table.iter().enumerate() {
        if row.len() != n {
            return Err(Error::MalformedSpec(format!(
                "row {i} has length {}",
                row.len()
            )));
        }
        let mut hit = vec![false; n];
        for &x in row {
            if x >= n || hit[x] {
                return Err(Error::MalformedSpec(format!(
                    "row {i} is not a permutation"
                )));
            }
            hit[x] = true;
        }
    }
    for j in 0..n {
        let mut hit = vec![false; n];
        for row in table {
            if hit[row[j]] {
                return Err(Error::MalformedSpec(format!(
                    "column {j} is not a permutation"
                )));
            }
            hit[row[j]] = true;
        }
    }
    let identity = (0..n)
        .find(|&e| (0..n).all(|x| table[e][x] == x && table[x][e] == x))
        .ok_or_else(|| Error::MalformedSpec("table has no identity".into()))?;
    let assoc = |a: usize, b: usize, c: usize| table[table[a][b]][c] == table[a][table[b][c]];
    if n <= FULL_ASSOCIATIVITY_LIMIT {
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if !assoc(a, b, c) {
                        return Err(Error::MalformedSpec(format!(
                            "table is not associative at ({a}, {b}, {c})"
                        )));
                    }
                }
            }
        }
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(n as u64);
        for _ in 0..SPOT_CHECK_TRIPLES {
            let (a, b, c) = (
                rng.gen_range(0..n),
                rng.gen_range(0..n),
                rng.gen_range(0..n),
            );
            if !assoc(a, b, c) {
                return Err(Error::MalformedSpec(format!(
                    "table is not associative at ({a}, {b}, {c})"
                )));
            }
        }
    }
    let flat: Vec<u32> = table.iter().flatten().map(|&x| x as u32).collect();
    let gens: Vec<u64> = (0..n as u64).filter(|&x| x != identity as u64).collect();
    let rule = Rule::Table { n, table: flat };
    let (g, _) = Group::from_codes(rule, n, identity as u64, &gens, cap)?;
    Ok(super::ops::reduce_generators(g))
}

fn extension_group(base: &[u64], actor: &[u64], action: &[Vec<u64>], cap: u64) -> Result<Group> {
    if base.is_empty() || actor.is_empty() {
        return Err(Error::MalformedSpec(
            "base and actor need at least one factor".into(),
        ));
    }
    if base.len() > MAX_EXTENSION_FACTORS || actor.len() > MAX_EXTENSION_FACTORS {
        return Err(Error::MalformedSpec(format!(
            "at most {MAX_EXTENSION_FACTORS} cyclic factors per side"
        )));
    }
    if base.iter().chain(actor).any(|&n| n == 0) {
        return Err(Error::MalformedSpec("cyclic factor of order 0".into()));
    }
    if action.len() != actor.len() || action.iter().any(|row| row.len() != base.len()) {
        return Err(Error::MalformedSpec(format!(
            "action must be {} x {} (actor generators x base factors)",
            actor.len(),
            base.len()
        )));
    }
    for (j, row) in action.iter().enumerate() {
        for (i, &e) in row.iter().enumerate() {
            let n = base[i];
            if n == 1 {
                continue;
            }
            if arith::gcd(e % n, n) != 1 || arith::pow_mod(e, actor[j], n) != 1 {
                return Err(Error::MalformedSpec(format!(
                    "exponent {e} of actor {j} on base factor {i}: need gcd(e, {n}) = 1 and e^{} = 1 mod {n}",
                    actor[j]
                )));
            }
        }
    }
    let rule = ExtensionRule::new(base, actor, action);
    let k = base.len();
    let mut gens = Vec::new();
    for i in 0..k {
        let mut b = vec![0; k];
        b[i] = 1 % base[i];
        gens.push(rule.encode(&b, &vec![0; actor.len()]));
    }
    for j in 0..actor.len() {
        let mut a = vec![0; actor.len()];
        a[j] = 1 % actor[j];
        gens.push(rule.encode(&vec![0; k], &a));
    }
    let space: u64 = base.iter().chain(actor).product();
    let (g, _) = Group::from_codes(Rule::Extension(rule), space as usize, 0, &gens, cap)?;
    Ok(g)
}

pub(crate) fn direct_product(factors: Vec<Group>, cap: u64) -> Result<Group> {
    let radix: Vec<u64> = factors.iter().map(|g| g.order() as u64).collect();
    let space: u64 = radix.iter().product();
    let mut gens = Vec::new();
    let mut stride = 1u64;
    for f in &factors {
        for &g in f.generators() {
            gens.push(g as u64 * stride);
        }
        stride *= f.order() as u64;
    }
    let rule = Rule::Direct { factors, radix };
    let (g, _) = Group::from_codes(rule, space as usize, 0, &gens, cap)?;
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn s3_from_permutations() {
        let spec = GroupSpec::Perm {
            degree: 3,
            generators: vec![vec![2, 3, 1], vec![2, 1, 3]],
        };
        assert_eq!(enumerate_group(&spec, 100).unwrap().order(), 6);
    }

    #[test]
    fn trivial_extension() {
        let spec = GroupSpec::Extension {
            base: vec![1],
            actor: vec![1],
            action: vec![vec![1]],
        };
        assert_eq!(enumerate_group(&spec, 100).unwrap().order(), 1);
    }

    #[test]
    fn semidirect_orders_multiply() {
        let spec = GroupSpec::Extension {
            base: vec![7, 13],
            actor: vec![2, 3],
            action: vec![vec![6, 1], vec![2, 3]],
        };
        let g = enumerate_group(&spec, 1000).unwrap();
        assert_eq!(g.order(), 546);
        assert!(!g.is_abelian());
    }

    #[test]
    fn bad_specs_are_rejected() {
        let not_bijective = GroupSpec::Perm {
            degree: 3,
            generators: vec![vec![1, 1, 2]],
        };
        assert!(matches!(
            enumerate_group(&not_bijective, 100),
            Err(Error::MalformedSpec(_))
        ));
        // 3 has order 6 mod 7, not dividing 2.
        let bad_action = GroupSpec::Extension {
            base: vec![7],
            actor: vec![2],
            action: vec![vec![3]],
        };
        assert!(matches!(
            enumerate_group(&bad_action, 100),
            Err(Error::MalformedSpec(_))
        ));
        let non_assoc = GroupSpec::Table {
            // a quasigroup with identity 0 that is not associative (order 5 loop)
            table: vec![
                vec![0, 1, 2, 3, 4],
                vec![1, 0, 3, 4, 2],
                vec![2, 4, 0, 1, 3],
                vec![3, 2, 4, 0, 1],
                vec![4, 3, 1, 2, 0],
            ],
        };
        assert!(matches!(
            enumerate_group(&non_assoc, 100),
            Err(Error::MalformedSpec(_))
        ));
    }

    #[test]
    fn projected_order_is_checked_before_enumeration() {
        let spec = GroupSpec::cyclic(1_000_003);
        assert_eq!(
            enumerate_group(&spec, 100_000).unwrap_err(),
            Error::OrderExceedsCap {
                order: 1_000_003,
                cap: 100_000
            }
        );
    }

    #[test]
    fn json_shape() {
        let spec = GroupSpec::Direct {
            factors: vec![
                GroupSpec::Perm {
                    degree: 2,
                    generators: vec![vec![2, 1]],
                },
                GroupSpec::cyclic(3),
            ],
        };
        let json = serde_json::to_string(&spec).unwrap();
        assert!(json.starts_with(r#"{"kind":"direct","factors":[{"kind":"perm","degree":2"#));
        let back: GroupSpec = serde_json::from_str(&json).unwrap();
        assert_eq!(back, spec);
        assert_eq!(enumerate_group(&spec, 100).unwrap().order(), 6);
    }

    #[test]
    fn table_spec_with_relabelled_identity() {
        // C3 with identity at index 2
        let table = vec![vec![1, 2, 0], vec![2, 0, 1], vec![0, 1, 2]];
        let g = enumerate_group(&GroupSpec::Table { table }, 10).unwrap();
        assert_eq!(g.order(), 3);
        assert_eq!(g.element_orders(), &[1, 3, 3]);
    }
}

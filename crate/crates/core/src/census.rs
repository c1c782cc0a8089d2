//! Built-in families of small groups and the per-group census record.

use std::io::Write;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::arith;
use crate::class_graph::{
    articulation_points_bruteforce, articulation_points_lowlink, conjugacy_class_data, prime_graph,
    two_clique_cover, ClassData, PrimeGraph,
};
use crate::classifier::classify_with;
use crate::error::{Error, Result};
use crate::group::{enumerate_group, Group, GroupSpec};
use crate::realizer::catalog;
use crate::structure::reduce;

/// Groups up to this order get the commuting-pair check.
pub const PRODUCT_CHECK_LIMIT: usize = 600;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Family {
    /// `C_n` for `n <= max_order`.
    Cyclic(u64),
    /// Every abelian group of order at most the bound.
    Abelian(u64),
    /// Dihedral groups of order `2n <= bound`, `n >= 3`.
    Dihedral(u64),
    /// `S_n`, `n <= bound`.
    Symmetric(u64),
    /// `A_n`, `n <= bound`.
    Alternating(u64),
    /// `C_n ⋊ Aut(C_n)`, `n <= bound`.
    Holomorph(u64),
    Witnesses,
    File(String),
}

impl std::str::FromStr for Family {
    type Err = String;

    /// `name[:bound]` or `file:<path>`.
    fn from_str(s: &str) -> std::result::Result<Family, String> {
        if let Some(path) = s.strip_prefix("file:") {
            return Ok(Family::File(path.to_string()));
        }
        let (name, bound) = match s.split_once(':') {
            Some((n, b)) => (
                n,
                Some(
                    b.parse::<u64>()
                        .map_err(|e| format!("bad bound in {s:?}: {e}"))?,
                ),
            ),
            None => (s, None),
        };
        Ok(match name {
            "cyclic" => Family::Cyclic(bound.unwrap_or(512)),
            "abelian" => Family::Abelian(bound.unwrap_or(512)),
            "dihedral" => Family::Dihedral(bound.unwrap_or(512)),
            "symmetric" => Family::Symmetric(bound.unwrap_or(5)),
            "alternating" => Family::Alternating(bound.unwrap_or(5)),
            "holomorph" | "holomorph-cyclic" => Family::Holomorph(bound.unwrap_or(50)),
            "witnesses" => Family::Witnesses,
            other => return Err(format!("unknown family {other:?}")),
        })
    }
}

/// The default census families.
pub fn default_families() -> Vec<Family> {
    vec![
        Family::Cyclic(512),
        Family::Abelian(512),
        Family::Dihedral(512),
        Family::Symmetric(5),
        Family::Alternating(5),
        Family::Holomorph(50),
        Family::Witnesses,
    ]
}

#[derive(Debug, Clone)]
pub struct CensusInput {
    pub family: String,
    pub name: String,
    pub spec: GroupSpec,
}

fn perm_spec(degree: usize, generators: Vec<Vec<usize>>) -> GroupSpec {
    GroupSpec::Perm { degree, generators }
}

/// Abelian invariants up to isomorphism: all prime-power factorizations.
fn abelian_types(n: u64) -> Vec<Vec<u64>> {
    fn partitions(k: u32, max: u32) -> Vec<Vec<u32>> {
        if k == 0 {
            return vec![Vec::new()];
        }
        let mut out = Vec::new();
        for first in (1..=k.min(max)).rev() {
            for mut rest in partitions(k - first, first) {
                rest.insert(0, first);
                out.push(rest);
            }
        }
        out
    }
    let mut types = vec![Vec::new()];
    for (p, e) in arith::factorize(n) {
        let mut next = Vec::new();
        for t in &types {
            for part in partitions(e, e) {
                let mut t2: Vec<u64> = t.clone();
                t2.extend(part.iter().map(|&k| p.pow(k)));
                next.push(t2);
            }
        }
        types = next;
    }
    types
}

fn unit_generators(n: u64) -> Vec<u64> {
    let mut gens = Vec::new();
    let mut reached = vec![false; n as usize];
    reached[1 % n as usize] = true;
    let mut subgroup = vec![1 % n];
    for u in 2..n {
        if arith::gcd(u, n) != 1 || reached[u as usize] {
            continue;
        }
        gens.push(u);
        let mut i = 0;
        while i < subgroup.len() {
            let x = subgroup[i];
            i += 1;
            for &g in &gens {
                let y = x * g % n;
                if !reached[y as usize] {
                    reached[y as usize] = true;
                    subgroup.push(y);
                }
            }
        }
    }
    gens
}

impl Family {
    pub fn name(&self) -> String {
        match self {
            Family::Cyclic(b) => format!("cyclic:{b}"),
            Family::Abelian(b) => format!("abelian:{b}"),
            Family::Dihedral(b) => format!("dihedral:{b}"),
            Family::Symmetric(b) => format!("symmetric:{b}"),
            Family::Alternating(b) => format!("alternating:{b}"),
            Family::Holomorph(b) => format!("holomorph:{b}"),
            Family::Witnesses => "witnesses".into(),
            Family::File(p) => format!("file:{p}"),
        }
    }

    /// Named specs of the family, in a fixed order.
    pub fn members(&self) -> Result<Vec<(String, GroupSpec)>> {
        Ok(match *self {
            Family::Cyclic(b) => (1..=b)
                .map(|n| (format!("C{n}"), GroupSpec::cyclic(n)))
                .collect(),
            Family::Abelian(b) => (1..=b)
                .flat_map(|n| abelian_types(n).into_iter())
                .map(|t| {
                    let name = if t.is_empty() {
                        "C1".to_string()
                    } else {
                        t.iter()
                            .map(|k| format!("C{k}"))
                            .collect::<Vec<_>>()
                            .join("x")
                    };
                    let spec = if t.is_empty() {
                        GroupSpec::cyclic(1)
                    } else {
                        GroupSpec::abelian(&t)
                    };
                    (name, spec)
                })
                .collect(),
            Family::Dihedral(b) => (3..=b / 2)
                .map(|n| {
                    let n = n as usize;
                    let rot = (0..n).map(|i| (i + 1) % n + 1).collect();
                    let refl = (0..n).map(|i| (n - i) % n + 1).collect();
                    (format!("D{}", 2 * n), perm_spec(n, vec![rot, refl]))
                })
                .collect(),
            Family::Symmetric(b) => (1..=b as usize)
                .map(|n| {
                    let gens = if n < 2 {
                        Vec::new()
                    } else {
                        let cycle = (0..n).map(|i| (i + 1) % n + 1).collect();
                        let mut swap: Vec<usize> = (1..=n).collect();
                        swap.swap(0, 1);
                        vec![cycle, swap]
                    };
                    (format!("S{n}"), perm_spec(n, gens))
                })
                .collect(),
            Family::Alternating(b) => (1..=b as usize)
                .map(|n| {
                    let gens = (3..=n)
                        .map(|k| {
                            let mut p: Vec<usize> = (1..=n).collect();
                            // (1 2 k)
                            p[0] = 2;
                            p[1] = k;
                            p[k - 1] = 1;
                            p
                        })
                        .collect();
                    (format!("A{n}"), perm_spec(n, gens))
                })
                .collect(),
            Family::Holomorph(b) => (2..=b)
                .map(|n| {
                    let m = n as usize;
                    let mut gens = vec![(0..m).map(|x| (x + 1) % m + 1).collect::<Vec<_>>()];
                    for u in unit_generators(n) {
                        gens.push((0..m).map(|x| (x * u as usize) % m + 1).collect());
                    }
                    (format!("Hol(C{n})"), perm_spec(m, gens))
                })
                .collect(),
            Family::Witnesses => catalog()
                .into_iter()
                .map(|e| (e.name.to_string(), e.spec))
                .collect(),
            Family::File(ref path) => read_spec_file(path)?
                .into_iter()
                .enumerate()
                .map(|(i, s)| (format!("{path}#{i}"), s))
                .collect(),
        })
    }
}

/// A JSON array of specs, a single spec, or one spec per line.
pub fn read_spec_file(path: &str) -> Result<Vec<GroupSpec>> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::MalformedSpec(format!("cannot read {path}: {e}")))?;
    parse_specs(&text)
}

pub fn parse_specs(text: &str) -> Result<Vec<GroupSpec>> {
    if let Ok(list) = serde_json::from_str::<Vec<GroupSpec>>(text) {
        return Ok(list);
    }
    if let Ok(one) = serde_json::from_str::<GroupSpec>(text) {
        return Ok(vec![one]);
    }
    text.lines()
        .filter(|l| !l.trim().is_empty())
        .map(|l| serde_json::from_str(l).map_err(|e| Error::MalformedSpec(e.to_string())))
        .collect()
}

pub fn census_inputs(families: &[Family]) -> Result<Vec<CensusInput>> {
    let mut out = Vec::new();
    for f in families {
        for (name, spec) in f.members()? {
            out.push(CensusInput {
                family: f.name(),
                name,
                spec,
            });
        }
    }
    Ok(out)
}

/// Results of the invariant checks on one group; `true` means it holds or
/// does not apply.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InvariantFlags {
    pub two_clique_cover: bool,
    pub reduction_preserves_sizes: bool,
    /// `None` above [`PRODUCT_CHECK_LIMIT`].
    pub commuting_product: Option<bool>,
    pub non_adjacent_nilpotency: bool,
    pub centralizer_sizes_match: bool,
    pub lowlink_matches_bruteforce: bool,
    pub classification_consistent: bool,
}

impl InvariantFlags {
    pub fn all_hold(&self) -> bool {
        self.two_clique_cover
            && self.reduction_preserves_sizes
            && self.commuting_product != Some(false)
            && self.non_adjacent_nilpotency
            && self.centralizer_sizes_match
            && self.lowlink_matches_bruteforce
            && self.classification_consistent
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CaseEntry {
    pub r: u64,
    pub label: Option<String>,
    pub case_pass: bool,
    pub theorem_a_pass: bool,
    pub bridge_pass: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct CensusRecord {
    pub family: String,
    pub name: String,
    pub spec_digest: String,
    pub order: Option<usize>,
    pub class_sizes: Vec<u64>,
    pub vertices: Vec<u64>,
    pub edges: Vec<[u64; 2]>,
    pub cut_vertices: Vec<u64>,
    pub verdict: Option<String>,
    pub cases: Vec<CaseEntry>,
    pub theorem_c: Option<bool>,
    pub invariants: Option<InvariantFlags>,
    pub violations: Vec<String>,
    pub error: Option<String>,
    pub timing_ms: u64,
}

impl CensusRecord {
    pub fn violation_count(&self) -> usize {
        self.violations.len()
    }
}

/// `π(x) ∪ π(y) ⊆ π(xy)` for commuting `x, y` of coprime orders.
pub fn commuting_product_holds(g: &Group, cd: &ClassData) -> bool {
    g.elements().all(|x| {
        let ox = g.elem_order(x);
        g.elements().skip(x + 1).all(|y| {
            if arith::gcd(ox, g.elem_order(y)) != 1 || !g.commute(x, y) {
                return true;
            }
            let pxy = cd.pi_of_element(g.mul(x, y));
            cd.pi_of_element(x)
                .iter()
                .chain(cd.pi_of_element(y))
                .all(|p| pxy.contains(p))
        })
    })
}

/// For non-adjacent `p, q`: `G` is `p`- or `q`-nilpotent and both Sylow
/// subgroups are abelian.
pub fn non_adjacent_nilpotency_holds(g: &Group, graph: &PrimeGraph) -> bool {
    let v = graph.vertices();
    v.iter().enumerate().all(|(i, &p)| {
        v[i + 1..].iter().all(|&q| {
            graph.adjacent(p, q)
                || ((g.is_p_nilpotent(p) || g.is_p_nilpotent(q))
                    && g.is_abelian_subgroup(&g.sylow_subgroup(p))
                    && g.is_abelian_subgroup(&g.sylow_subgroup(q)))
        })
    })
}

fn census_one(input: &CensusInput, cap: u64, seed: u64) -> CensusRecord {
    let start = Instant::now();
    let digest = input.spec.digest();
    let mut rec = CensusRecord {
        family: input.family.clone(),
        name: input.name.clone(),
        spec_digest: digest.clone(),
        order: None,
        class_sizes: Vec::new(),
        vertices: Vec::new(),
        edges: Vec::new(),
        cut_vertices: Vec::new(),
        verdict: None,
        cases: Vec::new(),
        theorem_c: None,
        invariants: None,
        violations: Vec::new(),
        error: None,
        timing_ms: 0,
    };
    let result = (|| -> Result<()> {
        let g = enumerate_group(&input.spec, cap)?;
        rec.order = Some(g.order());
        let cd = conjugacy_class_data(&g);
        let graph = prime_graph(&cd);
        rec.class_sizes = cd.size_multiset.clone();
        rec.vertices = graph.vertices().to_vec();
        rec.edges = graph.edges().into_iter().map(|(u, v)| [u, v]).collect();
        let report = classify_with(&g, seed, Some(digest.clone()))?;
        rec.cut_vertices = report.analysis.articulation_points.clone();
        rec.verdict = Some(report.verdict.name().to_string());
        rec.cases = report
            .cut_vertices
            .iter()
            .map(|c| CaseEntry {
                r: c.r,
                label: c.label.map(|l| l.name().to_string()),
                case_pass: c.error.is_none() && c.checklist.passed(),
                theorem_a_pass: c.theorem_a.passed(),
                bridge_pass: c.bridge_set.as_ref().is_some_and(|b| b.matches),
            })
            .collect();
        rec.theorem_c = report
            .theorem_c
            .two_cut_vertices
            .then_some(report.theorem_c.verdict);
        rec.violations = report.violations.clone();

        let reduction = reduce(&g);
        let flags = InvariantFlags {
            two_clique_cover: two_clique_cover(&graph).is_some(),
            reduction_preserves_sizes: reduction.sizes_preserved(),
            commuting_product: (g.order() <= PRODUCT_CHECK_LIMIT)
                .then(|| commuting_product_holds(&g, &cd)),
            non_adjacent_nilpotency: non_adjacent_nilpotency_holds(&g, &graph),
            centralizer_sizes_match: cd
                .classes
                .iter()
                .zip(cd.centralizer_index_sizes(&g))
                .all(|(c, s)| c.size == s),
            lowlink_matches_bruteforce: articulation_points_lowlink(&graph)
                == articulation_points_bruteforce(&graph),
            classification_consistent: report.graph == graph,
        };
        for (ok, what) in [
            (flags.two_clique_cover, "complement not bipartite"),
            (
                flags.reduction_preserves_sizes,
                "reduction changed class sizes",
            ),
            (
                flags.commuting_product != Some(false),
                "commuting product property failed",
            ),
            (
                flags.non_adjacent_nilpotency,
                "non-adjacent nilpotency property failed",
            ),
            (
                flags.centralizer_sizes_match,
                "centralizer index disagrees with orbit size",
            ),
            (
                flags.lowlink_matches_bruteforce,
                "articulation point routes disagree",
            ),
            (flags.classification_consistent, "reduced graph differs"),
        ] {
            if !ok && !rec.violations.iter().any(|v| v == what) {
                rec.violations.push(what.to_string());
            }
        }
        rec.invariants = Some(flags);
        Ok(())
    })();
    if let Err(e) = result {
        rec.error = Some(e.to_string());
    }
    rec.timing_ms = start.elapsed().as_millis() as u64;
    rec
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct CensusSummary {
    pub groups: usize,
    pub errors: usize,
    pub violations: usize,
    pub with_cut_vertex: usize,
    pub by_verdict: Vec<(String, usize)>,
}

impl CensusSummary {
    pub fn of(records: &[CensusRecord]) -> CensusSummary {
        let mut by_verdict: Vec<(String, usize)> = Vec::new();
        for r in records {
            let v = r.verdict.clone().unwrap_or_else(|| "error".into());
            match by_verdict.iter_mut().find(|(k, _)| *k == v) {
                Some(e) => e.1 += 1,
                None => by_verdict.push((v, 1)),
            }
        }
        by_verdict.sort();
        CensusSummary {
            groups: records.len(),
            errors: records.iter().filter(|r| r.error.is_some()).count(),
            violations: records.iter().map(CensusRecord::violation_count).sum(),
            with_cut_vertex: records
                .iter()
                .filter(|r| !r.cut_vertices.is_empty())
                .count(),
            by_verdict,
        }
    }
}

#[derive(Debug, Clone)]
pub struct CensusConfig {
    pub families: Vec<Family>,
    pub max_order: u64,
    pub jobs: usize,
    pub seed: u64,
}

impl Default for CensusConfig {
    fn default() -> Self {
        CensusConfig {
            families: default_families(),
            max_order: crate::group::DEFAULT_CAP,
            jobs: 0,
            seed: 0,
        }
    }
}

/// Runs every input on a pool of `jobs` workers (0 = all cores); records
/// come back in input order.
pub fn run_census(config: &CensusConfig) -> Result<Vec<CensusRecord>> {
    let inputs = census_inputs(&config.families)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.jobs)
        .build()
        .map_err(|e| Error::MalformedSpec(format!("thread pool: {e}")))?;
    Ok(pool.install(|| {
        inputs
            .par_iter()
            .map(|i| census_one(i, config.max_order, config.seed))
            .collect()
    }))
}

/// Writes one JSON object per record.
pub fn write_jsonl<W: Write>(out: &mut W, records: &[CensusRecord]) -> std::io::Result<()> {
    for r in records {
        serde_json::to_writer(&mut *out, r)?;
        out.write_all(b"\n")?;
    }
    Ok(())
}

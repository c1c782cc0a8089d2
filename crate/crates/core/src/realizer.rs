//! Realization of graph shapes with a cut vertex as prime graphs of
//! explicit groups, plus the catalog of witness groups per case.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Mutex, OnceLock};

use serde::Serialize;

use crate::arith;
use crate::class_graph::{
    conjugacy_class_data, graph_analysis, prime_graph, two_clique_cover, PrimeGraph,
};
use crate::classifier::{classify, CaseLabel};
use crate::error::{Error, Result};
use crate::group::{enumerate_group, GroupSpec};

/// Trial bound for the prime searches.
pub const PRIME_SEARCH_BOUND: u64 = 1_000_000;

/// A target graph split at a cut vertex: `{r} ∪ alpha` and `t ∪ q` are
/// cliques, and `r` is adjacent exactly to `alpha ∪ t`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ShapeParams {
    pub r_vertex: u64,
    pub alpha_side: Vec<u64>,
    pub t_side: Vec<u64>,
    pub q_side: Vec<u64>,
}

impl ShapeParams {
    /// `(n, m1, m0)`
    pub fn counts(&self) -> (usize, usize, usize) {
        (self.alpha_side.len(), self.t_side.len(), self.q_side.len())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    /// `(A × R) ⋊ (B0 × B1)`, used when `r` has non-neighbours.
    Example52,
    /// `R × (A ⋊ B1)` with `R` extraspecial, used when `r` is complete.
    DirectProduct,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RealizationPlan {
    pub mode: Mode,
    /// Abstract vertex -> prime.
    pub prime_map: BTreeMap<u64, u64>,
    pub r: u64,
    pub p: Vec<u64>,
    pub t: Vec<u64>,
    pub q: Vec<u64>,
    pub b0: u64,
    pub b1: u64,
    /// `action_exponents[j][i]`: exponent by which actor generator `j` acts
    /// on base factor `i` (base order `[r, p_1, ...]` for example52 and
    /// `[p_1, ...]` for the direct product).
    pub action_exponents: Vec<Vec<u64>>,
    pub predicted_order: u64,
}

/// Finds a cut vertex and orientation fitting the realizable shape. With two
/// cut vertices both are tried; splits with `m0 >= 1` are preferred, then the
/// smallest planned group.
pub fn shape_extract(g: &PrimeGraph) -> Result<ShapeParams> {
    candidate_shapes(g)?
        .into_iter()
        .map(|s| {
            let order = assign_primes(&s).map_or(u64::MAX, |p| p.predicted_order);
            (s.q_side.is_empty(), order, s.r_vertex, s)
        })
        .min_by(|a, b| (a.0, a.1, a.2).cmp(&(b.0, b.1, b.2)))
        .map(|c| c.3)
        .ok_or_else(|| Error::NotRealizable("no valid orientation at any cut vertex".into()))
}

/// Every valid `(r, orientation)` split of `g`.
pub fn candidate_shapes(g: &PrimeGraph) -> Result<Vec<ShapeParams>> {
    if g.is_empty() || !g.is_connected() {
        return Err(Error::NotRealizable("graph is not connected".into()));
    }
    let analysis = graph_analysis(g);
    if analysis.articulation_points.is_empty() {
        return Err(Error::NotRealizable("graph has no cut vertex".into()));
    }
    if two_clique_cover(g).is_none() {
        return Err(Error::NotRealizable(
            "complement of the graph is not bipartite".into(),
        ));
    }
    let mut out = Vec::new();
    for &r in &analysis.articulation_points {
        let comps = g.without(r).components();
        if comps.len() != 2 || !comps.iter().all(|c| g.is_clique(c)) {
            continue;
        }
        for (alpha, beta) in [(&comps[0], &comps[1]), (&comps[1], &comps[0])] {
            if !alpha.iter().all(|&v| g.adjacent(r, v)) {
                continue;
            }
            let (t, q): (Vec<u64>, Vec<u64>) = beta.iter().partition(|&&v| g.adjacent(r, v));
            if t.is_empty() {
                continue;
            }
            out.push(ShapeParams {
                r_vertex: r,
                alpha_side: alpha.clone(),
                t_side: t,
                q_side: q,
            });
        }
    }
    if out.is_empty() {
        return Err(Error::NotRealizable(
            "no valid orientation at any cut vertex".into(),
        ));
    }
    Ok(out)
}

fn next_prime(from: u64, used: &[u64], residue_mod: u64) -> Result<u64> {
    arith::primes_from(from)
        .take_while(|&p| p <= PRIME_SEARCH_BOUND)
        .find(|p| !used.contains(p) && p % residue_mod == 1 % residue_mod)
        .ok_or(Error::SearchBudgetExceeded(PRIME_SEARCH_BOUND))
}

fn smallest_unused(count: usize, used: &mut Vec<u64>) -> Result<Vec<u64>> {
    let mut out = Vec::new();
    for _ in 0..count {
        let p = next_prime(2, used, 1)?;
        used.push(p);
        out.push(p);
    }
    Ok(out)
}

/// Exponent of exact order `k` modulo the prime `p` (requires `k | p - 1`).
fn root_of_unity(p: u64, k: u64) -> u64 {
    arith::pow_mod(arith::primitive_root(p), (p - 1) / k, p)
}

/// Primes for every role. `m0 >= 1`: t-side gets the smallest primes, then
/// the q-side, then `r ≡ 1 (mod b0 b1)` and `p_i ≡ 1 (mod b1)` ascending.
/// `m0 = 0`: small `r` values are tried (t-side on the smallest remaining
/// primes, `p_i ≡ 1 (mod b1)`) and the smallest group order is kept.
pub fn assign_primes(shape: &ShapeParams) -> Result<RealizationPlan> {
    if shape.alpha_side.is_empty() || shape.t_side.is_empty() {
        return Err(Error::InvalidPlan(
            "alpha and t sides must be non-empty".into(),
        ));
    }
    if shape.q_side.is_empty() {
        return assign_direct(shape);
    }
    let mut used = Vec::new();
    let t = smallest_unused(shape.t_side.len(), &mut used)?;
    let q = smallest_unused(shape.q_side.len(), &mut used)?;
    let b1: u64 = t.iter().product();
    let b0: u64 = q.iter().product();
    let r = next_prime(2, &used, b0 * b1)?;
    used.push(r);
    let mut p = Vec::new();
    for _ in &shape.alpha_side {
        let pi = next_prime(2, &used, b1)?;
        used.push(pi);
        p.push(pi);
    }
    let mut on_b0 = vec![root_of_unity(r, b0)];
    let mut on_b1 = vec![root_of_unity(r, b1)];
    for &pi in &p {
        on_b0.push(1);
        on_b1.push(root_of_unity(pi, b1));
    }
    let predicted_order = r * p.iter().product::<u64>() * b0 * b1;
    Ok(RealizationPlan {
        mode: Mode::Example52,
        prime_map: prime_map(shape, r, &p, &t, &q),
        r,
        p,
        t,
        q,
        b0,
        b1,
        action_exponents: vec![on_b0, on_b1],
        predicted_order,
    })
}

fn prime_map(shape: &ShapeParams, r: u64, p: &[u64], t: &[u64], q: &[u64]) -> BTreeMap<u64, u64> {
    let mut map = BTreeMap::new();
    map.insert(shape.r_vertex, r);
    for (side, primes) in [
        (&shape.alpha_side, p),
        (&shape.t_side, t),
        (&shape.q_side, q),
    ] {
        for (&v, &x) in side.iter().zip(primes) {
            map.insert(v, x);
        }
    }
    map
}

fn assign_direct(shape: &ShapeParams) -> Result<RealizationPlan> {
    let mut best: Option<RealizationPlan> = None;
    for r in arith::primes_from(2) {
        if best
            .as_ref()
            .is_some_and(|b| r.saturating_pow(3) >= b.predicted_order)
            || r > PRIME_SEARCH_BOUND
        {
            break;
        }
        let mut used = vec![r];
        let t = smallest_unused(shape.t_side.len(), &mut used)?;
        let b1: u64 = t.iter().product();
        let mut p = Vec::new();
        for _ in &shape.alpha_side {
            let pi = next_prime(2, &used, b1)?;
            used.push(pi);
            p.push(pi);
        }
        let order = r
            .checked_pow(3)
            .and_then(|x| x.checked_mul(p.iter().product::<u64>()))
            .and_then(|x| x.checked_mul(b1))
            .unwrap_or(u64::MAX);
        if best.as_ref().map_or(true, |b| order < b.predicted_order) {
            best = Some(RealizationPlan {
                mode: Mode::DirectProduct,
                prime_map: prime_map(shape, r, &p, &t, &[]),
                r,
                action_exponents: vec![p.iter().map(|&pi| root_of_unity(pi, b1)).collect()],
                p,
                t,
                q: Vec::new(),
                b0: 1,
                b1,
                predicted_order: order,
            });
        }
    }
    best.ok_or(Error::SearchBudgetExceeded(PRIME_SEARCH_BOUND))
}

fn plan_check(ok: bool, msg: impl FnOnce() -> String) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::InvalidPlan(msg()))
    }
}

/// Re-verifies the plan invariants independently of `assign_primes`.
pub fn verify_plan(plan: &RealizationPlan) -> Result<()> {
    let mut all: Vec<u64> = [plan.r]
        .into_iter()
        .chain(plan.p.iter().copied())
        .chain(plan.t.iter().copied())
        .chain(plan.q.iter().copied())
        .collect();
    plan_check(all.iter().all(|&x| arith::is_prime(x)), || {
        format!("non-prime in {all:?}")
    })?;
    all.sort_unstable();
    let n = all.len();
    all.dedup();
    plan_check(all.len() == n, || "primes are not distinct".into())?;
    plan_check(
        plan.b1 == plan.t.iter().product::<u64>() && plan.b0 == plan.q.iter().product::<u64>(),
        || "b0/b1 do not match the q/t primes".into(),
    )?;
    plan_check(plan.p.iter().all(|&p| (p - 1) % plan.b1 == 0), || {
        "some p_i is not 1 mod b1".into()
    })?;
    let order_is = |e: u64, m: u64, k: u64| arith::multiplicative_order(e, m) == Some(k);
    match plan.mode {
        Mode::Example52 => {
            plan_check((plan.r - 1) % (plan.b0 * plan.b1) == 0, || {
                "r is not 1 mod b0*b1".into()
            })?;
            let ex = &plan.action_exponents;
            plan_check(
                ex.len() == 2 && ex.iter().all(|row| row.len() == plan.p.len() + 1),
                || "action exponent matrix has the wrong shape".into(),
            )?;
            plan_check(
                order_is(ex[0][0], plan.r, plan.b0) && order_is(ex[1][0], plan.r, plan.b1),
                || "exponents on R do not have orders b0 and b1".into(),
            )?;
            for (i, &p) in plan.p.iter().enumerate() {
                plan_check(
                    ex[0][i + 1] == 1 && order_is(ex[1][i + 1], p, plan.b1),
                    || format!("exponents on the {p}-block are wrong"),
                )?;
            }
            plan_check(
                plan.predicted_order == plan.r * plan.p.iter().product::<u64>() * plan.b0 * plan.b1,
                || "predicted order mismatch".into(),
            )
        }
        Mode::DirectProduct => {
            let ex = &plan.action_exponents;
            plan_check(ex.len() == 1 && ex[0].len() == plan.p.len(), || {
                "action exponent matrix has the wrong shape".into()
            })?;
            for (i, &p) in plan.p.iter().enumerate() {
                plan_check(order_is(ex[0][i], p, plan.b1), || {
                    format!("exponent on the {p}-block does not have order b1")
                })?;
            }
            plan_check(
                plan.predicted_order == plan.r.pow(3) * plan.p.iter().product::<u64>() * plan.b1,
                || "predicted order mismatch".into(),
            )
        }
    }
}

/// Non-abelian group of order `r^3` as permutations: quaternion (regular,
/// degree 8) for `r = 2`, the Heisenberg group acting on `F_r^2` by
/// `(x, y) -> (x + a y + b, y + c)` for odd `r`.
pub fn extraspecial_spec(r: u64) -> GroupSpec {
    if r == 2 {
        return quaternion_spec();
    }
    let r = r as usize;
    let point = |x: usize, y: usize| (x % r) + r * (y % r) + 1;
    let map = |a: usize, b: usize, c: usize| -> Vec<usize> {
        let mut images = vec![0; r * r];
        for y in 0..r {
            for x in 0..r {
                images[point(x, y) - 1] = point(x + a * y + b, y + c);
            }
        }
        images
    };
    GroupSpec::Perm {
        degree: r * r,
        generators: vec![map(1, 0, 0), map(0, 1, 0), map(0, 0, 1)],
    }
}

/// `Q8` acting on itself by left multiplication; points are
/// `1, i, j, k, -1, -i, -j, -k`.
pub fn quaternion_spec() -> GroupSpec {
    GroupSpec::Perm {
        degree: 8,
        generators: vec![vec![2, 5, 4, 7, 6, 1, 8, 3], vec![3, 8, 5, 2, 7, 4, 1, 6]],
    }
}

pub fn build_group(plan: &RealizationPlan) -> Result<GroupSpec> {
    verify_plan(plan)?;
    Ok(match plan.mode {
        Mode::Example52 => GroupSpec::Extension {
            base: [plan.r].into_iter().chain(plan.p.iter().copied()).collect(),
            actor: vec![plan.b0, plan.b1],
            action: plan.action_exponents.clone(),
        },
        Mode::DirectProduct => GroupSpec::Direct {
            factors: vec![
                extraspecial_spec(plan.r),
                GroupSpec::Extension {
                    base: plan.p.clone(),
                    actor: vec![plan.b1],
                    action: plan.action_exponents.clone(),
                },
            ],
        },
    })
}

/// Outcome of enumerating a planned group, shared across targets with the
/// same plan.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub order: usize,
    pub graph: PrimeGraph,
    /// Label found at the planned `r`.
    pub label_at_r: Option<CaseLabel>,
    pub r_complete: bool,
    pub cut_vertices: Vec<u64>,
    pub violations: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Realization {
    pub shape: ShapeParams,
    pub plan: RealizationPlan,
    pub spec: GroupSpec,
    pub verified: bool,
    /// Set when verification was skipped or failed.
    pub note: Option<String>,
    pub report: Option<VerificationReport>,
}

fn memo() -> &'static Mutex<HashMap<(String, u64), VerificationReport>> {
    static MEMO: OnceLock<Mutex<HashMap<(String, u64), VerificationReport>>> = OnceLock::new();
    MEMO.get_or_init(Default::default)
}

fn verify_spec(spec: &GroupSpec, plan: &RealizationPlan, cap: u64) -> Result<VerificationReport> {
    let key = (spec.digest(), cap);
    if let Some(hit) = memo().lock().unwrap().get(&key) {
        return Ok(hit.clone());
    }
    let g = enumerate_group(spec, cap)?;
    let graph = prime_graph(&conjugacy_class_data(&g));
    let report = classify(&g)?;
    let out = VerificationReport {
        order: g.order(),
        label_at_r: report.label_at(plan.r),
        r_complete: report.analysis.complete_vertices.contains(&plan.r),
        cut_vertices: report.analysis.articulation_points.clone(),
        violations: report.violations.clone(),
        graph,
    };
    memo().lock().unwrap().insert(key, out.clone());
    Ok(out)
}

/// Plans a group for `target`, and when its order is within `cap`,
/// enumerates it and checks `Δ(G)` against the relabelled target together
/// with the expected case at `r`.
pub fn realize_and_verify(target: &PrimeGraph, cap: u64) -> Result<Realization> {
    let shape = shape_extract(target)?;
    let plan = assign_primes(&shape)?;
    let spec = build_group(&plan)?;
    if plan.predicted_order > cap {
        return Ok(Realization {
            note: Some(
                Error::OrderExceedsCap {
                    order: plan.predicted_order,
                    cap,
                }
                .to_string(),
            ),
            shape,
            plan,
            spec,
            verified: false,
            report: None,
        });
    }
    let report = verify_spec(&spec, &plan, cap)?;
    let expected = target.relabel(|v| plan.prime_map[&v]);
    let mut problems = Vec::new();
    if report.order as u64 != plan.predicted_order {
        problems.push(format!(
            "order {} != predicted {}",
            report.order, plan.predicted_order
        ));
    }
    if report.graph != expected {
        problems.push("prime graph differs from the target".to_string());
    }
    let want = match plan.mode {
        Mode::Example52 => CaseLabel::IIa,
        Mode::DirectProduct => CaseLabel::IIbI,
    };
    if report.label_at_r != Some(want) {
        problems.push(format!(
            "expected case {want} at r, found {:?}",
            report.label_at_r
        ));
    }
    if plan.mode == Mode::DirectProduct && !report.r_complete {
        problems.push("r is not complete".to_string());
    }
    if !report.violations.is_empty() {
        problems.push(format!("classifier violations: {:?}", report.violations));
    }
    Ok(Realization {
        verified: problems.is_empty(),
        note: (!problems.is_empty()).then(|| problems.join("; ")),
        shape,
        plan,
        spec,
        report: Some(report),
    })
}

fn gf8_mul(mut a: usize, mut b: usize) -> usize {
    // GF(2)[x]/(x^3 + x + 1)
    let mut acc = 0;
    while b > 0 {
        if b & 1 == 1 {
            acc ^= a;
        }
        b >>= 1;
        a <<= 1;
        if a & 8 != 0 {
            a ^= 0b1011;
        }
    }
    acc
}

/// Affine semilinear maps `v -> a v^(2^k) + b` on `GF(8)`, order 168.
fn gf8_semilinear_spec() -> GroupSpec {
    let perm = |f: &dyn Fn(usize) -> usize| (0..8).map(|v| f(v) + 1).collect::<Vec<_>>();
    GroupSpec::Perm {
        degree: 8,
        generators: vec![
            perm(&|v| v ^ 1),
            perm(&|v| gf8_mul(v, 2)),
            perm(&|v| gf8_mul(v, v)),
        ],
    }
}

/// `F21` on points `offset+1 ..= offset+7` together with `head` identity points.
fn f21_points(head: usize) -> (Vec<usize>, Vec<usize>) {
    let shift = |f: &dyn Fn(usize) -> usize| -> Vec<usize> {
        (0..head)
            .map(|i| i + 1)
            .chain((0..7).map(|v| head + f(v) + 1))
            .collect()
    };
    (shift(&|v| (v + 1) % 7), shift(&|v| (2 * v) % 7))
}

/// `Q8 × F21` on 15 points.
fn q8_times_f21_spec() -> GroupSpec {
    let ext = |q: &[usize]| q.iter().copied().chain(9..=15).collect::<Vec<_>>();
    let (t, m) = f21_points(8);
    GroupSpec::Perm {
        degree: 15,
        generators: vec![
            ext(&[2, 5, 4, 7, 6, 1, 8, 3]),
            ext(&[3, 8, 5, 2, 7, 4, 1, 6]),
            t,
            m,
        ],
    }
}

/// `(Q8 × C7) ⋊ C3`, with `C3` cycling `i -> j -> k` and squaring `C7`:
/// left-regular `Q8` extended by the automorphism, glued to `F21`.
fn q8_c7_c3_spec() -> GroupSpec {
    let ext = |q: &[usize]| q.iter().copied().chain(9..=15).collect::<Vec<_>>();
    let (t, m) = f21_points(8);
    let phi: Vec<usize> = [1, 3, 4, 2, 5, 7, 8, 6]
        .into_iter()
        .chain(m[8..].iter().copied())
        .collect();
    let id8: Vec<usize> = (1..=8).collect();
    let mut translate = id8;
    translate.extend_from_slice(&t[8..]);
    GroupSpec::Perm {
        degree: 15,
        generators: vec![
            ext(&[2, 5, 4, 7, 6, 1, 8, 3]),
            ext(&[3, 8, 5, 2, 7, 4, 1, 6]),
            phi,
            translate,
        ],
    }
}

/// `(C7 × C5) ⋊ (C3 × C2)`, order 210, two cut vertices.
pub fn order_210_spec() -> GroupSpec {
    GroupSpec::Extension {
        base: vec![7, 5],
        actor: vec![3, 2],
        action: vec![vec![2, 1], vec![6, 4]],
    }
}

/// `(C7 × C13) ⋊ (C2 × C3)`, order 546, two cut vertices.
pub fn order_546_spec() -> GroupSpec {
    GroupSpec::Extension {
        base: vec![7, 13],
        actor: vec![2, 3],
        action: vec![vec![6, 1], vec![2, 3]],
    }
}

/// `(C31 × C7) ⋊ (C5 × C6)`, order 6510, one cut vertex.
pub fn order_6510_spec() -> GroupSpec {
    GroupSpec::Extension {
        base: vec![31, 7],
        actor: vec![5, 6],
        action: vec![vec![16, 1], vec![26, 3]],
    }
}

pub const WITNESS_LABELS: [&str; 6] = ["I", "IIa", "IIb_i", "IIb_ii", "III", "TwoCutVertices"];

/// Catalog group for a case label (or `TwoCutVertices`).
pub fn witness(label: &str) -> Result<GroupSpec> {
    Ok(match label {
        "I" => gf8_semilinear_spec(),
        "IIa" => order_6510_spec(),
        "IIb_i" => q8_times_f21_spec(),
        "IIb_ii" => q8_c7_c3_spec(),
        "III" | "TwoCutVertices" => order_210_spec(),
        other => return Err(Error::UnknownLabel(other.to_string())),
    })
}

/// A named catalog group with the labels expected at each cut vertex.
#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub spec: GroupSpec,
    pub expected: Vec<(u64, CaseLabel)>,
}

pub fn catalog() -> Vec<CatalogEntry> {
    use CaseLabel::*;
    vec![
        CatalogEntry {
            name: "I",
            spec: gf8_semilinear_spec(),
            expected: vec![(2, I)],
        },
        CatalogEntry {
            name: "IIa",
            spec: order_6510_spec(),
            expected: vec![(31, IIa)],
        },
        CatalogEntry {
            name: "IIb_i",
            spec: q8_times_f21_spec(),
            expected: vec![(2, IIbI)],
        },
        CatalogEntry {
            name: "IIb_ii",
            spec: q8_c7_c3_spec(),
            expected: vec![(2, IIbIi)],
        },
        CatalogEntry {
            name: "III",
            spec: order_210_spec(),
            expected: vec![(2, III), (7, IIa)],
        },
        CatalogEntry {
            name: "order546",
            spec: order_546_spec(),
            expected: vec![(3, III), (7, IIa)],
        },
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(labels: &[u64]) -> PrimeGraph {
        let edges: Vec<(u64, u64)> = labels.windows(2).map(|w| (w[0], w[1])).collect();
        PrimeGraph::new(labels.to_vec(), &edges).unwrap()
    }

    #[test]
    fn shapes_of_paths() {
        let s = shape_extract(&path(&[10, 11, 12])).unwrap();
        assert_eq!(s.r_vertex, 11);
        assert_eq!(s.counts(), (1, 1, 0));
        let s = shape_extract(&path(&[20, 21, 22, 23])).unwrap();
        assert_eq!(s.counts(), (1, 1, 1));
        assert_eq!(s.r_vertex, 21);
        assert_eq!((s.alpha_side[0], s.t_side[0], s.q_side[0]), (20, 22, 23));
        let c5 =
            PrimeGraph::new((0..5).collect(), &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]).unwrap();
        assert!(matches!(shape_extract(&c5), Err(Error::NotRealizable(_))));
        assert!(matches!(
            shape_extract(&path(&[1, 2])),
            Err(Error::NotRealizable(_))
        ));
    }

    #[test]
    fn prime_assignment() {
        let shape = ShapeParams {
            r_vertex: 0,
            alpha_side: vec![1],
            t_side: vec![2],
            q_side: vec![3],
        };
        let plan = assign_primes(&shape).unwrap();
        assert_eq!((plan.r, plan.p[0], plan.t[0], plan.q[0]), (7, 5, 2, 3));
        assert_eq!(plan.predicted_order, 210);
        assert_eq!(plan.action_exponents, vec![vec![2, 1], vec![6, 4]]);
        assert_eq!(build_group(&plan).unwrap(), order_210_spec());

        let direct = assign_primes(&ShapeParams {
            q_side: vec![],
            ..shape
        })
        .unwrap();
        assert_eq!(direct.mode, Mode::DirectProduct);
        assert_eq!((direct.r, direct.t[0], direct.p[0]), (2, 3, 7));
        assert_eq!(direct.predicted_order, 168);
    }

    #[test]
    fn invalid_plans_are_rejected() {
        let shape = ShapeParams {
            r_vertex: 0,
            alpha_side: vec![1],
            t_side: vec![2],
            q_side: vec![3],
        };
        let mut plan = assign_primes(&shape).unwrap();
        plan.p[0] = plan.r;
        assert!(matches!(build_group(&plan), Err(Error::InvalidPlan(_))));
        let mut plan = assign_primes(&shape).unwrap();
        plan.action_exponents[1][0] = 2;
        assert!(matches!(build_group(&plan), Err(Error::InvalidPlan(_))));
    }

    #[test]
    fn extraspecial_orders() {
        for r in [2, 3, 5] {
            let g = enumerate_group(&extraspecial_spec(r), 1000).unwrap();
            assert_eq!(g.order() as u64, r * r * r);
            assert!(!g.is_abelian());
            assert_eq!(g.center().order() as u64, r);
        }
    }

    #[test]
    fn gf8_field() {
        for a in 1..8 {
            assert_eq!((1..8).filter(|&b| gf8_mul(a, b) == 1).count(), 1);
        }
        assert_eq!(gf8_mul(2, 4), 3); // x * x^2 = x + 1
    }

    #[test]
    fn unknown_witness() {
        assert_eq!(witness("V"), Err(Error::UnknownLabel("V".into())));
        for l in WITNESS_LABELS {
            assert!(witness(l).is_ok());
        }
    }
}

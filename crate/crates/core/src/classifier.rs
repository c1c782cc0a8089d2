//! Cut-vertex classification: locates cut vertices of `Δ(G)`, orients the two
//! sides, decides the structural case and checks every clause of it.

use serde::Serialize;

use crate::arith;
use crate::class_graph::{
    conjugacy_class_data, graph_analysis, prime_graph, two_clique_cover, ClassData, Diameter,
    GraphAnalysis, PrimeGraph,
};
use crate::error::{Error, Result};
use crate::group::{FittingSeries, Group, Subgroup};
use crate::structure::{
    disconnected_structure, frobenius_with_kernel, normal_sylow_set, reduce, DisconnectedStructure,
    ReductionStep,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum CaseLabel {
    I,
    IIa,
    #[serde(rename = "IIb_i")]
    IIbI,
    #[serde(rename = "IIb_ii")]
    IIbIi,
    III,
    NoCutVertex,
    Disconnected,
}

impl CaseLabel {
    pub const STRUCTURAL: [CaseLabel; 5] = [
        CaseLabel::I,
        CaseLabel::IIa,
        CaseLabel::IIbI,
        CaseLabel::IIbIi,
        CaseLabel::III,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CaseLabel::I => "I",
            CaseLabel::IIa => "IIa",
            CaseLabel::IIbI => "IIb_i",
            CaseLabel::IIbIi => "IIb_ii",
            CaseLabel::III => "III",
            CaseLabel::NoCutVertex => "NoCutVertex",
            CaseLabel::Disconnected => "Disconnected",
        }
    }

    pub fn parse(s: &str) -> Option<CaseLabel> {
        [
            CaseLabel::I,
            CaseLabel::IIa,
            CaseLabel::IIbI,
            CaseLabel::IIbIi,
            CaseLabel::III,
            CaseLabel::NoCutVertex,
            CaseLabel::Disconnected,
        ]
        .into_iter()
        .find(|l| l.name() == s)
    }

    fn is_case_two(self) -> bool {
        matches!(self, CaseLabel::IIa | CaseLabel::IIbI | CaseLabel::IIbIi)
    }
}

impl std::fmt::Display for CaseLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Clause {
    pub name: String,
    /// Case the clause belongs to (`common`, `I`, `II`, `IIa`, ...).
    pub case: String,
    pub pass: bool,
    pub witness: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ConditionChecklist {
    pub clauses: Vec<Clause>,
}

impl ConditionChecklist {
    pub fn passed(&self) -> bool {
        self.clauses.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> Vec<&str> {
        self.clauses
            .iter()
            .filter(|c| !c.pass)
            .map(|c| c.name.as_str())
            .collect()
    }

    pub fn get(&self, name: &str) -> Option<&Clause> {
        self.clauses.iter().find(|c| c.name == name)
    }

    fn push(&mut self, case: &str, name: &str, pass: bool, witness: impl Into<String>) {
        self.clauses.push(Clause {
            name: name.to_string(),
            case: case.to_string(),
            pass,
            witness: witness.into(),
        });
    }
}

/// Everything about one group that the per-vertex checks share.
#[derive(Debug, Clone)]
pub struct GroupContext {
    pub group: Group,
    pub classes: ClassData,
    pub graph: PrimeGraph,
    pub analysis: GraphAnalysis,
    /// Primes with a normal Sylow subgroup.
    pub nu: Vec<u64>,
    pub fitting: FittingSeries,
    pub seed: u64,
}

impl GroupContext {
    pub fn new(group: &Group, seed: u64) -> GroupContext {
        let classes = conjugacy_class_data(group);
        let graph = prime_graph(&classes);
        let analysis = graph_analysis(&graph);
        GroupContext {
            nu: normal_sylow_set(group),
            fitting: group.fitting_series(),
            group: group.clone(),
            classes,
            graph,
            analysis,
            seed,
        }
    }

    /// Hall `primes`-subgroup of the subgroup `h`.
    fn hall_in(&self, h: &Subgroup, primes: &[u64]) -> Result<Subgroup> {
        let g = &self.group;
        if h.order() == g.order() {
            return g.hall_subgroup(primes, self.seed);
        }
        let e = g.embed(h);
        let local = e.group.hall_subgroup(primes, self.seed)?;
        Ok(e.lift(g, &local))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SubgroupSummary {
    pub order: usize,
    pub generators: Vec<usize>,
}

impl From<&Subgroup> for SubgroupSummary {
    fn from(s: &Subgroup) -> Self {
        SubgroupSummary {
            order: s.order(),
            generators: s.generators().to_vec(),
        }
    }
}

/// The subgroups `A`, `B`, `R`, `Z = Z(AB)` for one orientation.
#[derive(Debug, Clone)]
pub struct CaseData {
    pub r: u64,
    pub alpha: Vec<u64>,
    pub beta: Vec<u64>,
    /// `AB`, a Hall `r'`-subgroup.
    pub h: Subgroup,
    pub a: Subgroup,
    pub b: Subgroup,
    /// Sylow `r`-subgroup (for case III, the conjugate normalizing `B`).
    pub sylow_r: Subgroup,
    pub z: Subgroup,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CaseSubgroups {
    pub a: SubgroupSummary,
    pub b: SubgroupSummary,
    pub r: SubgroupSummary,
    pub z: SubgroupSummary,
}

impl From<&CaseData> for CaseSubgroups {
    fn from(d: &CaseData) -> Self {
        CaseSubgroups {
            a: (&d.a).into(),
            b: (&d.b).into(),
            r: (&d.sylow_r).into(),
            z: (&d.z).into(),
        }
    }
}

pub fn case_data(ctx: &GroupContext, r: u64, alpha: &[u64], beta: &[u64]) -> Result<CaseData> {
    let g = &ctx.group;
    let mut both: Vec<u64> = alpha.iter().chain(beta).copied().collect();
    both.sort_unstable();
    let h = g.hall_subgroup(&both, ctx.seed)?;
    let a = ctx.hall_in(&h, alpha)?;
    let b = ctx.hall_in(&h, beta)?;
    let z = g.center_of(&h);
    Ok(CaseData {
        r,
        alpha: alpha.to_vec(),
        beta: beta.to_vec(),
        h,
        a,
        b,
        sylow_r: g.sylow_subgroup(r),
        z,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BridgeSet {
    /// `beta` for IIa, `alpha` for III, `none` otherwise.
    pub side: String,
    pub primes: Vec<u64>,
    /// Non-neighbours of `r` in `Δ(G)`.
    pub non_neighbors: Vec<u64>,
    pub matches: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TheoremA {
    pub solvable: bool,
    pub fitting_height: Option<u32>,
    pub components_complete: bool,
    pub complete_vertex_dichotomy: bool,
    pub at_most_two_cut_vertices: bool,
    pub checklist: ConditionChecklist,
}

impl TheoremA {
    pub fn passed(&self) -> bool {
        self.checklist.passed()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CutVertexReport {
    pub r: u64,
    pub alpha: Vec<u64>,
    pub beta: Vec<u64>,
    pub label: Option<CaseLabel>,
    /// Set when the case could not be decided or its subgroups not built.
    pub error: Option<String>,
    pub checklist: ConditionChecklist,
    pub subgroups: Option<CaseSubgroups>,
    pub bridge_set: Option<BridgeSet>,
    pub theorem_a: TheoremA,
}

impl CutVertexReport {
    pub fn verified(&self) -> bool {
        self.error.is_none()
            && self.checklist.passed()
            && self.theorem_a.passed()
            && self.bridge_set.as_ref().map_or(false, |b| b.matches)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct TheoremC {
    pub two_cut_vertices: bool,
    /// The cut vertex in the IIa orientation.
    pub r: Option<u64>,
    pub t: Option<u64>,
    pub t_in_beta: bool,
    pub b_star_in_z: bool,
    pub fixed_point_free: bool,
    pub beta_minus_beta_star_is_t: bool,
    pub verdict: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct ClassificationReport {
    pub spec_digest: Option<String>,
    pub order: usize,
    pub reduced: bool,
    pub reduction_steps: Vec<ReductionStep>,
    pub reduced_order: usize,
    pub class_sizes: Vec<u64>,
    pub graph: PrimeGraph,
    pub analysis: GraphAnalysis,
    /// `Δ` of the reduced group equals `Δ` of the input.
    pub graph_preserved: bool,
    pub two_clique_cover: Option<(Vec<u64>, Vec<u64>)>,
    pub verdict: CaseLabel,
    pub cut_vertices: Vec<CutVertexReport>,
    pub disconnected: Option<DisconnectedStructure>,
    pub theorem_c: TheoremC,
    /// Descriptions of every failed theorem-level check.
    pub violations: Vec<String>,
}

impl ClassificationReport {
    pub fn labels(&self) -> Vec<(u64, Option<CaseLabel>)> {
        self.cut_vertices.iter().map(|c| (c.r, c.label)).collect()
    }

    pub fn label_at(&self, r: u64) -> Option<CaseLabel> {
        self.cut_vertices
            .iter()
            .find(|c| c.r == r)
            .and_then(|c| c.label)
    }

    pub fn cut_vertex(&self, r: u64) -> Option<&CutVertexReport> {
        self.cut_vertices.iter().find(|c| c.r == r)
    }
}

pub fn classify(g: &Group) -> Result<ClassificationReport> {
    classify_with(g, 0, None)
}

/// Reduces `g`, then checks every cut vertex of the reduced group.
pub fn classify_with(
    g: &Group,
    seed: u64,
    spec_digest: Option<String>,
) -> Result<ClassificationReport> {
    let original_graph = prime_graph(&conjugacy_class_data(g));
    let reduction = reduce(g);
    let ctx = GroupContext::new(&reduction.reduced_group, seed);
    let mut violations = Vec::new();
    if !reduction.sizes_preserved() {
        violations.push("reduction changed the class sizes".to_string());
    }
    let graph_preserved = ctx.graph == original_graph;
    if !graph_preserved {
        violations.push("reduction changed the prime graph".to_string());
    }
    let cover = two_clique_cover(&ctx.graph);
    if cover.is_none() {
        violations.push("complement of the prime graph is not bipartite".to_string());
    }
    if ctx.analysis.articulation_points.len() > 2 {
        violations.push("more than two cut vertices".to_string());
    }
    if ctx.analysis.components.len() == 1
        && !matches!(ctx.analysis.diameter, Diameter::Finite(d) if d <= 3)
    {
        violations.push("connected graph of diameter above 3".to_string());
    }

    let mut disconnected = None;
    let mut cut_vertices = Vec::new();
    let verdict = if ctx.analysis.components.len() >= 2 {
        let s = disconnected_structure(&ctx.group, seed)?;
        if !s.holds {
            violations.push("disconnected graph without the expected structure".to_string());
        }
        if ctx.analysis.components.len() != 2 || ctx.analysis.clique_flags.contains(&false) {
            violations.push("disconnected graph is not two cliques".to_string());
        }
        disconnected = Some(s);
        CaseLabel::Disconnected
    } else if ctx.analysis.articulation_points.is_empty() {
        CaseLabel::NoCutVertex
    } else {
        for &r in &ctx.analysis.articulation_points.clone() {
            let report = cut_vertex_report(&ctx, r);
            if !report.theorem_a.passed() {
                violations.push(format!(
                    "cut vertex {r}: failed {:?}",
                    report.theorem_a.checklist.failures()
                ));
            }
            match (&report.error, report.checklist.passed()) {
                (Some(e), _) => violations.push(format!("cut vertex {r}: {e}")),
                (None, false) => violations.push(format!(
                    "cut vertex {r}: case {} failed {:?}",
                    report.label.map_or("?", |l| l.name()),
                    report.checklist.failures()
                )),
                _ => {}
            }
            if let Some(b) = &report.bridge_set {
                if !b.matches {
                    violations.push(format!("cut vertex {r}: bridge set mismatch"));
                }
            }
            cut_vertices.push(report);
        }
        cut_vertices[0].label.unwrap_or(CaseLabel::NoCutVertex)
    };
    let theorem_c = theorem_c_check(&ctx, &cut_vertices);
    if theorem_c.two_cut_vertices && !theorem_c.verdict {
        violations.push("two cut vertices without the expected structure".to_string());
    }
    Ok(ClassificationReport {
        spec_digest,
        order: g.order(),
        reduced: reduction.is_identity(),
        reduction_steps: reduction.steps,
        reduced_order: ctx.group.order(),
        class_sizes: ctx.classes.size_multiset.clone(),
        graph: ctx.graph.clone(),
        analysis: ctx.analysis.clone(),
        graph_preserved,
        two_clique_cover: cover,
        verdict,
        cut_vertices,
        disconnected,
        theorem_c,
        violations,
    })
}

fn cut_vertex_report(ctx: &GroupContext, r: u64) -> CutVertexReport {
    let theorem_a = theorem_a_check(ctx, r);
    let comps = ctx.graph.without(r).components();
    let failed = |alpha: Vec<u64>, beta: Vec<u64>, label, e: Error| CutVertexReport {
        r,
        alpha,
        beta,
        label,
        error: Some(e.to_string()),
        checklist: ConditionChecklist::default(),
        subgroups: None,
        bridge_set: None,
        theorem_a: theorem_a.clone(),
    };
    if comps.len() != 2 {
        let e = Error::OrientationConflict;
        return failed(Vec::new(), Vec::new(), None, e);
    }
    let (label, alpha, beta) = match case_discriminant(ctx, r, &comps[0], &comps[1]) {
        Ok(x) => x,
        Err(e) => return failed(comps[0].clone(), comps[1].clone(), None, e),
    };
    match verify_case(ctx, r, label, &alpha, &beta) {
        Ok((checklist, data)) => CutVertexReport {
            r,
            bridge_set: Some(bridge_set(ctx, label, &data)),
            subgroups: Some((&data).into()),
            alpha,
            beta,
            label: Some(label),
            error: None,
            checklist,
            theorem_a,
        },
        Err(e) => failed(alpha, beta, Some(label), e),
    }
}

pub fn theorem_a_check(ctx: &GroupContext, r: u64) -> TheoremA {
    let a = &ctx.analysis;
    let mut list = ConditionChecklist::default();
    let solvable = ctx.fitting.solvable;
    let height = ctx.fitting.height;
    list.push("A", "solvable", solvable, "");
    list.push(
        "A",
        "Fitting height at most 3",
        height.is_some_and(|h| h <= 3),
        format!("{height:?}"),
    );
    let rest = ctx.graph.without(r);
    let comps = rest.components();
    let components_complete = comps.len() == 2 && comps.iter().all(|c| rest.is_clique(c));
    list.push(
        "A",
        "two complete components after removing r",
        components_complete,
        format!("{comps:?}"),
    );
    let complete = a.complete_vertices.contains(&r);
    let dichotomy = if complete {
        a.complete_vertices == [r] && a.articulation_points == [r]
    } else {
        a.diameter == Diameter::Finite(3)
    };
    list.push(
        "A",
        if complete {
            "complete r is the unique complete and unique cut vertex"
        } else {
            "non-complete r gives diameter 3"
        },
        dichotomy,
        format!("{:?}", a.diameter),
    );
    let at_most_two = a.articulation_points.len() <= 2;
    list.push(
        "A",
        "at most two cut vertices",
        at_most_two,
        format!("{:?}", a.articulation_points),
    );
    TheoremA {
        solvable,
        fitting_height: height,
        components_complete,
        complete_vertex_dichotomy: dichotomy,
        at_most_two_cut_vertices: at_most_two,
        checklist: list,
    }
}

/// Decides the case and orientation at the cut vertex `r`, where `c1` and
/// `c2` are the components of `Δ(G) - r`.
pub fn case_discriminant(
    ctx: &GroupContext,
    r: u64,
    c1: &[u64],
    c2: &[u64],
) -> Result<(CaseLabel, Vec<u64>, Vec<u64>)> {
    let nu = &ctx.nu;
    let in_nu = |s: &[u64]| s.iter().filter(|p| nu.contains(p)).count();
    if in_nu(c1) == 0 && in_nu(c2) == 0 {
        let mut fallback = None;
        for (alpha, beta) in [(c1, c2), (c2, c1)] {
            if let Ok((list, _)) = verify_case(ctx, r, CaseLabel::I, alpha, beta) {
                if list.passed() {
                    return Ok((CaseLabel::I, alpha.to_vec(), beta.to_vec()));
                }
            }
            if beta.len() == 1 && fallback.is_none() {
                fallback = Some((alpha, beta));
            }
        }
        let (alpha, beta) = fallback.unwrap_or((c1, c2));
        return Ok((CaseLabel::I, alpha.to_vec(), beta.to_vec()));
    }
    let (alpha, beta) = if in_nu(c1) == c1.len() && in_nu(c2) == 0 {
        (c1, c2)
    } else if in_nu(c2) == c2.len() && in_nu(c1) == 0 {
        (c2, c1)
    } else {
        return Err(Error::OrientationConflict);
    };
    let label = if nu.contains(&r) {
        let g = &ctx.group;
        let sylow = g.sylow_subgroup(r);
        if g.is_abelian_subgroup(&sylow) {
            CaseLabel::IIa
        } else {
            let h = g.hall_subgroup(&[alpha, beta].concat(), ctx.seed)?;
            if commute_elementwise(g, &sylow, &h) {
                CaseLabel::IIbI
            } else {
                CaseLabel::IIbIi
            }
        }
    } else {
        CaseLabel::III
    };
    Ok((label, alpha.to_vec(), beta.to_vec()))
}

fn commute_elementwise(g: &Group, x: &Subgroup, y: &Subgroup) -> bool {
    x.generators()
        .iter()
        .all(|&a| y.generators().iter().all(|&b| g.commute(a, b)))
}

fn is_cyclic(g: &Group, s: &Subgroup) -> bool {
    s.members()
        .iter()
        .any(|&x| g.elem_order(x) as usize == s.order())
}

/// `X × Y` inside `F`: orders multiply, both lie in `F`, and they commute.
fn is_direct_product_of(g: &Group, f: &Subgroup, x: &Subgroup, y: &Subgroup) -> bool {
    f.order() == x.order() * y.order()
        && x.is_subset(f)
        && y.is_subset(f)
        && commute_elementwise(g, x, y)
}

/// `H/N` is Frobenius with kernel `KN/N`, with `N ⊴ H` and `K ≤ H`.
fn quotient_is_frobenius(g: &Group, h: &Subgroup, n: &Subgroup, k: &Subgroup) -> bool {
    if !n.is_subset(h) || !k.is_subset(h) || !g.is_normal_in(n, h) {
        return false;
    }
    let e = g.embed(h);
    let Ok(q) = e.group.quotient(&e.restrict(n)) else {
        return false;
    };
    let kernel = q.image(&e.restrict(&k.join(g, n)));
    frobenius_with_kernel(&q.group, &Subgroup::whole(&q.group), &kernel).unwrap_or(false)
}

/// Evaluates every clause of `label` for the orientation `(alpha, beta)`.
pub fn verify_case(
    ctx: &GroupContext,
    r: u64,
    label: CaseLabel,
    alpha: &[u64],
    beta: &[u64],
) -> Result<(ConditionChecklist, CaseData)> {
    let g = &ctx.group;
    let whole = Subgroup::whole(g);
    let mut data = case_data(ctx, r, alpha, beta)?;
    let mut list = ConditionChecklist::default();

    if label == CaseLabel::III {
        let b = &data.b;
        let found = g.elements().find(|&x| {
            let conj = data.sylow_r.conjugate(g, x);
            conj.generators()
                .iter()
                .all(|&y| b.generators().iter().all(|&z| b.contains(g.conj(z, y))))
        });
        match found {
            Some(x) => data.sylow_r = data.sylow_r.conjugate(g, x),
            None => return Err(Error::ConjugateSearchExhausted { r }),
        }
    }
    let (a, b, sr, z, h) = (&data.a, &data.b, &data.sylow_r, &data.z, &data.h);

    let nontrivial = !a.is_trivial() && !b.is_trivial() && !sr.is_trivial();
    list.push(
        "common",
        "A, B, R non-trivial",
        nontrivial,
        format!("|A|={} |B|={} |R|={}", a.order(), b.order(), sr.order()),
    );
    list.push(
        "common",
        "G = ABR with AB an r-complement",
        h.order() == a.order() * b.order() && h.order() * sr.order() == g.order(),
        format!("|AB|={}", h.order()),
    );
    list.push("common", "A abelian", g.is_abelian_subgroup(a), "");
    list.push("common", "B abelian", g.is_abelian_subgroup(b), "");

    let fit = &ctx.fitting.fitting;
    let r_abelian = g.is_abelian_subgroup(sr);
    match label {
        CaseLabel::I => {
            list.push(
                "I",
                "F(G) = R",
                fit.same_members(sr),
                format!("|F(G)|={}", fit.order()),
            );
            list.push(
                "I",
                "beta is a single prime",
                beta.len() == 1,
                format!("{beta:?}"),
            );
            let e = g.embed(h);
            let fab = e.lift(g, &e.group.fitting_subgroup());
            list.push(
                "I",
                "F(AB) = A",
                fab.same_members(a),
                format!("|F(AB)|={}", fab.order()),
            );
            list.push("I", "A cyclic", is_cyclic(g, a), "");
            list.push(
                "I",
                "|B| = q",
                beta.len() == 1 && b.order() as u64 == beta[0],
                format!("|B|={}", b.order()),
            );
            let ca = g.centralizer_of(a, &whole);
            let cb = g.centralizer_of(b, &whole);
            let mut classes_meeting_cb = vec![false; ctx.classes.class_count()];
            for &y in cb.members() {
                classes_meeting_cb[ctx.classes.class_of[y] as usize] = true;
            }
            let mut bad = Vec::new();
            let (mut via_i, mut via_ii) = (0, 0);
            for &x in sr.members() {
                let orbit_meets_ca = r_orbit(g, sr, x).into_iter().any(|y| ca.contains(y));
                let second = classes_meeting_cb[ctx.classes.class_of[x] as usize]
                    && a.members()
                        .iter()
                        .all(|&y| !g.commute(x, y) || z.contains(y));
                via_i += orbit_meets_ca as usize;
                via_ii += second as usize;
                if !orbit_meets_ca && !second {
                    bad.push(x);
                }
            }
            list.push(
                "I",
                "every x in R satisfies (i) or (ii)",
                bad.is_empty(),
                format!("(i): {via_i}, (ii): {via_ii}, neither: {bad:?}"),
            );
        }
        l if l.is_case_two() => {
            list.push(
                "II",
                "F(G) = A x R",
                is_direct_product_of(g, fit, a, sr),
                format!("|F(G)|={}", fit.order()),
            );
            list.push(
                "II",
                "Z(AB) < B",
                z.is_subset(b) && z.order() < b.order(),
                format!("|Z|={}", z.order()),
            );
            list.push(
                "II",
                "AB/Z Frobenius with kernel AZ/Z",
                quotient_is_frobenius(g, h, z, a),
                "",
            );
            match l {
                CaseLabel::IIa => {
                    list.push("IIa", "R abelian", r_abelian, "");
                    let cbr = g.centralizer_of(sr, b);
                    list.push(
                        "IIa",
                        "C_B(R) = 1",
                        cbr.is_trivial(),
                        format!("|C_B(R)|={}", cbr.order()),
                    );
                    list.push("IIa", "Z non-trivial", !z.is_trivial(), "");
                    let bad: Vec<usize> = sr.members()[1..]
                        .iter()
                        .copied()
                        .filter(|&x| !g.centralizer(x, b).is_subset(z))
                        .collect();
                    list.push(
                        "IIa",
                        "C_B(x) <= Z for non-trivial x in R",
                        bad.is_empty(),
                        format!("violations: {bad:?}"),
                    );
                }
                CaseLabel::IIbI => {
                    list.push("IIb", "R non-abelian", !r_abelian, "");
                    list.push("IIb_i", "G = R x AB", commute_elementwise(g, sr, h), "");
                }
                _ => {
                    list.push("IIb", "R non-abelian", !r_abelian, "");
                    list.push("IIb_ii", "G != R x AB", !commute_elementwise(g, sr, h), "");
                    let mut bad = Vec::new();
                    let mut considered = 0;
                    for &x in sr.members() {
                        let cg = g.order() as u64 / ctx.classes.class_size_of(x);
                        let cr = sr.members().iter().filter(|&&y| g.commute(x, y)).count() as u64;
                        if cg * sr.order() as u64 / cr < g.order() as u64 {
                            considered += 1;
                            if !g.centralizer(x, b).is_subset(z) {
                                bad.push(x);
                            }
                        }
                    }
                    list.push(
                        "IIb_ii",
                        "C_B(x) <= Z when C_G(x)R < G",
                        bad.is_empty(),
                        format!("checked {considered}, violations: {bad:?}"),
                    );
                }
            }
        }
        CaseLabel::III => {
            let br = b.join(g, sr);
            let br_nilpotent =
                br.order() == b.order() * sr.order() && g.embed(&br).group.is_nilpotent();
            list.push(
                "III",
                "BR nilpotent",
                br_nilpotent,
                format!("|BR|={}", br.order()),
            );
            let r0 = g.p_core(r);
            list.push(
                "III",
                "F(G) = A x R0",
                is_direct_product_of(g, fit, a, &r0),
                format!("|F(G)|={} |R0|={}", fit.order(), r0.order()),
            );
            list.push(
                "III",
                "R0 < R",
                r0.is_subset(sr) && r0.order() < sr.order(),
                "",
            );
            let car = g.centralizer_of(sr, a);
            list.push(
                "III",
                "C_A(R) = 1",
                car.is_trivial(),
                format!("|C_A(R)|={}", car.order()),
            );
            let ab = g.commutator_subgroup(a, b);
            let top = ab.join(g, b).join(g, sr);
            list.push(
                "III",
                "[A,B]BR/R0 Frobenius with kernel [A,B]R0/R0",
                quotient_is_frobenius(g, &top, &r0, &ab),
                format!("|[A,B]|={}", ab.order()),
            );
            let cab = g.centralizer_of(b, a);
            list.push(
                "III",
                "R abelian implies R0 = 1 and C_A(B) non-trivial",
                !r_abelian || (r0.is_trivial() && !cab.is_trivial()),
                format!("|C_A(B)|={}", cab.order()),
            );
        }
        other => {
            list.push(
                "none",
                "structural case",
                false,
                format!("{other} has no clauses"),
            );
        }
    }
    Ok((list, data))
}

/// Orbit of `x` under conjugation by `s`.
fn r_orbit(g: &Group, s: &Subgroup, x: usize) -> Vec<usize> {
    let mut orbit = vec![x];
    let mut i = 0;
    while i < orbit.len() {
        let y = orbit[i];
        i += 1;
        for &t in s.generators() {
            let w = g.conj(y, t);
            if !orbit.contains(&w) {
                orbit.push(w);
            }
        }
    }
    orbit
}

/// Sylow `p`-subgroup of the abelian subgroup `s`.
fn p_part_of(g: &Group, s: &Subgroup, p: u64) -> Subgroup {
    let members = s
        .members()
        .iter()
        .copied()
        .filter(|&x| arith::is_power_of(g.elem_order(x), p))
        .collect();
    Subgroup::from_members(g, members)
}

/// Every non-trivial element of `acting` fixes only the identity of `on`.
fn fixed_point_free(g: &Group, acting: &Subgroup, on: &Subgroup) -> bool {
    acting.members()[1..]
        .iter()
        .all(|&b| on.members()[1..].iter().all(|&y| !g.commute(b, y)))
}

/// `β*` (IIa) or `α*` (III), compared with the non-neighbours of `r`.
pub fn bridge_set(ctx: &GroupContext, label: CaseLabel, data: &CaseData) -> BridgeSet {
    let g = &ctx.group;
    let r = data.r;
    let mut non_neighbors: Vec<u64> = data
        .alpha
        .iter()
        .chain(&data.beta)
        .copied()
        .filter(|&p| !ctx.graph.adjacent(r, p))
        .collect();
    non_neighbors.sort_unstable();
    let (side, primes) = match label {
        CaseLabel::IIa => {
            let primes = data
                .beta
                .iter()
                .copied()
                .filter(|&q| {
                    let sq = p_part_of(g, &data.b, q);
                    sq.is_subset(&data.z)
                        && fixed_point_free(g, &data.b, &g.commutator_subgroup(&data.sylow_r, &sq))
                })
                .collect();
            ("beta", primes)
        }
        CaseLabel::III => {
            let c = g.centralizer_of(&data.b, &data.a);
            let primes = data
                .alpha
                .iter()
                .copied()
                .filter(|&p| {
                    let sp = p_part_of(g, &data.a, p);
                    let crp = g.centralizer_of(&sp, &data.sylow_r);
                    sp.is_subset(&c)
                        && data.a.members()[1..]
                            .iter()
                            .all(|&x| g.centralizer(x, &data.sylow_r).is_subset(&crp))
                })
                .collect();
            ("alpha", primes)
        }
        _ => ("none", Vec::new()),
    };
    BridgeSet {
        side: side.to_string(),
        matches: primes == non_neighbors,
        primes,
        non_neighbors,
    }
}

/// Two cut vertices: at the IIa-oriented one, the other lies in `β`,
/// `B* ≤ Z` for the Hall `t'`-subgroup `B*` of `B`, `B` is fixed-point-free
/// on `[R, B*]`, and `β ∖ β* = {t}`.
pub fn theorem_c_check(ctx: &GroupContext, cuts: &[CutVertexReport]) -> TheoremC {
    let mut out = TheoremC {
        two_cut_vertices: ctx.analysis.articulation_points.len() == 2,
        ..TheoremC::default()
    };
    if !out.two_cut_vertices {
        return out;
    }
    let Some(at) = cuts.iter().find(|c| c.label == Some(CaseLabel::IIa)) else {
        return out;
    };
    let r = at.r;
    let t = ctx
        .analysis
        .articulation_points
        .iter()
        .copied()
        .find(|&v| v != r)
        .unwrap();
    out.r = Some(r);
    out.t = Some(t);
    out.t_in_beta = at.beta.contains(&t);
    let Ok(data) = case_data(ctx, r, &at.alpha, &at.beta) else {
        return out;
    };
    let g = &ctx.group;
    let others: Vec<u64> = at.beta.iter().copied().filter(|&q| q != t).collect();
    let b_star = Subgroup::from_members(
        g,
        data.b
            .members()
            .iter()
            .copied()
            .filter(|&x| g.elem_order(x) % t != 0 && arith::is_pi_number(g.elem_order(x), &others))
            .collect(),
    );
    out.b_star_in_z = b_star.is_subset(&data.z);
    out.fixed_point_free =
        fixed_point_free(g, &data.b, &g.commutator_subgroup(&data.sylow_r, &b_star));
    let star = bridge_set(ctx, CaseLabel::IIa, &data).primes;
    let rest: Vec<u64> = at
        .beta
        .iter()
        .copied()
        .filter(|q| !star.contains(q))
        .collect();
    out.beta_minus_beta_star_is_t = rest == [t];
    out.verdict =
        out.t_in_beta && out.b_star_in_z && out.fixed_point_free && out.beta_minus_beta_star_is_t;
    out
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

    #[test]
    fn labels_round_trip() {
        for l in CaseLabel::STRUCTURAL {
            assert_eq!(CaseLabel::parse(l.name()), Some(l));
        }
        assert_eq!(
            serde_json::to_string(&CaseLabel::IIbI).unwrap(),
            "\"IIb_i\""
        );
        assert_eq!(CaseLabel::parse("V"), None);
    }

    #[test]
    fn no_cut_vertex_and_disconnected() {
        let s4 = perm(4, &[&[2, 3, 4, 1], &[2, 1, 3, 4]]);
        let rep = classify(&s4).unwrap();
        assert_eq!(rep.verdict, CaseLabel::NoCutVertex);
        assert!(rep.violations.is_empty());
        let s3 = perm(3, &[&[2, 3, 1], &[2, 1, 3]]);
        let rep = classify(&s3).unwrap();
        assert_eq!(rep.verdict, CaseLabel::Disconnected);
        assert!(rep.disconnected.unwrap().holds);
        assert!(!rep.theorem_c.two_cut_vertices);
    }

    #[test]
    fn order_210_group() {
        let g = enumerate_group(
            &GroupSpec::Extension {
                base: vec![7, 5],
                actor: vec![3, 2],
                action: vec![vec![2, 1], vec![6, 4]],
            },
            1000,
        )
        .unwrap();
        let rep = classify(&g).unwrap();
        assert_eq!(rep.analysis.articulation_points, vec![2, 7]);
        assert_eq!(rep.label_at(2), Some(CaseLabel::III));
        assert_eq!(rep.label_at(7), Some(CaseLabel::IIa));
        let at2 = rep.cut_vertex(2).unwrap();
        assert_eq!(at2.alpha, vec![5, 7]);
        assert_eq!(at2.bridge_set.as_ref().unwrap().primes, vec![5]);
        assert_eq!(at2.theorem_a.fitting_height, Some(2));
        assert!(rep.theorem_c.verdict, "{:?}", rep.theorem_c);
        assert!(rep.violations.is_empty(), "{:?}", rep.violations);
    }
}

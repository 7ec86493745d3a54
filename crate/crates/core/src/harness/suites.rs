use std::collections::BTreeMap;
use std::fmt::{self, Write};
use std::str::FromStr;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::cat::{
    check_homotopy_equivalence_witness, two_of_three_check, Direction, Functor, RelativeCategory, ZigzagWitness,
};
use crate::homology::{cone_probe, homology, levelwise_probe, HomologyProfile};
use crate::nerve::{classical_nerve, nerve_levelwise, nerve_map, simplicial_nerve, Axis, BisimplicialMap, LevelwiseNerve};
use crate::report::Verdict;
use crate::scat::{
    dk_equivalence_probe, flipped_nerve, homotopy_category, iso_nrel_ny, iso_ybar_gamma_z, relativize, retraction,
    retraction_sweep, validate_simplicial_category, y_diagram, y_level, ybar_diagram, ybar_level, FiniteSimplicialCategory,
    Rel, SimplicialFunctor,
};
use crate::simp::{gamma, gamma_map, gamma_op, last_vertex_map, validate_simplicial_set, TruncatedSimplicialSet};

use super::gen::{gen_maps_from, gen_simplicial_category, gen_simplicial_set, GenError, GenParams};
use super::text::{read_simplicial_category, read_simplicial_set, write_simplicial_category, write_simplicial_set, TextError};

/// Largest `|Mor Y_k|` for which `Y_k` and its nerves are materialized.
pub const LADDER_BUDGET: u64 = 100_000;

/// Node budget of the homotopy-category equivalence search in the DK probe.
pub const DK_SEARCH_BUDGET: u64 = 100_000;

/// Separates a FAIL message from its serialized counterexample.
pub const COUNTEREXAMPLE_MARKER: &str = "--- counterexample ---";

pub const GENERATOR_NOTE: &str = "simplicial categories: random preorder on 1..=max_objects objects (acyclic: \
    compatible with the object order), each related pair carrying a uniformly chosen hom shape within the \
    nondegenerate bound (point, two points, vertex with loop edge), composition by units and otherwise constant \
    at a basepoint; simplicial sets: ordered simplicial complexes with per-dimension nondegenerate bounds";

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum SuiteId {
    S1,
    S2,
    S3,
    S4,
    S5,
    S6,
    S7,
    S8,
}

impl SuiteId {
    pub const ALL: [SuiteId; 8] =
        [SuiteId::S1, SuiteId::S2, SuiteId::S3, SuiteId::S4, SuiteId::S5, SuiteId::S6, SuiteId::S7, SuiteId::S8];

    pub fn claim(self) -> &'static str {
        match self {
            SuiteId::S1 => "Ȳ_k A is a strong deformation retract of Y_k A",
            SuiteId::S2 => "Ȳ_k A is isomorphic to Γᵒᵖ (ZA)_k",
            SuiteId::S3 => "N Rel A = n Y A",
            SuiteId::S4 => "n Ȳ A → n Y A is a levelwise weak equivalence",
            SuiteId::S5 => "n Γᵒᵖ X and n Γ X have the same homology",
            SuiteId::S6 => "the last-vertex map n Γ X → X is a natural weak equivalence",
            SuiteId::S7 => "N Rel A and Z A are levelwise weakly equivalent through the chain of comparisons",
            SuiteId::S8 => "DK probe, two-out-of-three and homotopy-equivalence witnesses",
        }
    }

    /// Suites whose checks rely on homology and so need acyclic instances.
    pub fn needs_acyclic(self) -> bool {
        !matches!(self, SuiteId::S1 | SuiteId::S2 | SuiteId::S3)
    }
}

impl fmt::Display for SuiteId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

impl FromStr for SuiteId {
    type Err = SuiteError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        SuiteId::ALL
            .into_iter()
            .find(|id| id.to_string().eq_ignore_ascii_case(s))
            .ok_or_else(|| SuiteError::UnknownSuite(s.to_string()))
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SuiteError {
    #[error("unknown suite `{0}`, expected S1..S8")]
    UnknownSuite(String),
    #[error(transparent)]
    Params(#[from] GenError),
    #[error("suite {0} feeds homology probes and needs acyclic instances")]
    NeedsAcyclic(SuiteId),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckVerdict {
    pub check: String,
    pub verdict: Verdict,
    pub detail: String,
}

impl CheckVerdict {
    fn new(check: impl Into<String>, verdict: Verdict, detail: impl Into<String>) -> Self {
        Self { check: check.into(), verdict, detail: detail.into() }
    }

    fn pass(check: impl Into<String>, detail: impl Into<String>) -> Self {
        Self::new(check, Verdict::Pass, detail)
    }

    fn inconclusive(check: impl Into<String>, detail: impl Into<String>) -> Self {
        Self::new(check, Verdict::Inconclusive, detail)
    }

    fn fail(check: impl Into<String>, detail: impl fmt::Display, input: &Input) -> Self {
        Self::new(check, Verdict::Fail, format!("{detail}\n{COUNTEREXAMPLE_MARKER}\n{}", input.to_text()))
    }

    /// The serialized input carried by a FAIL.
    pub fn counterexample(&self) -> Option<&str> {
        self.detail.split_once(COUNTEREXAMPLE_MARKER).map(|(_, text)| text.trim_start_matches('\n'))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InstanceReport {
    pub sub_seed: u64,
    pub verdicts: Vec<CheckVerdict>,
    pub millis: u64,
}

impl InstanceReport {
    pub fn verdict(&self) -> Verdict {
        self.verdicts.iter().fold(Verdict::Pass, |acc, v| acc.combine(v.verdict))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub suite: SuiteId,
    pub seed: u64,
    pub params: GenParams,
    pub instances: Vec<InstanceReport>,
}

impl SuiteReport {
    pub fn verdict(&self) -> Verdict {
        self.instances.iter().fold(Verdict::Pass, |acc, i| acc.combine(i.verdict()))
    }

    pub fn count(&self, verdict: Verdict) -> usize {
        self.instances.iter().filter(|i| i.verdict() == verdict).count()
    }

    /// The report with every timing field zeroed.
    pub fn without_timing(&self) -> SuiteReport {
        let mut r = self.clone();
        r.instances.iter_mut().for_each(|i| i.millis = 0);
        r
    }

    /// `(PASS, FAIL, INCONCLUSIVE)` counts per check name, in name order.
    pub fn check_table(&self) -> BTreeMap<&str, [usize; 3]> {
        let mut table: BTreeMap<&str, [usize; 3]> = BTreeMap::new();
        for v in self.instances.iter().flat_map(|i| &i.verdicts) {
            let slot = match v.verdict {
                Verdict::Pass => 0,
                Verdict::Fail => 1,
                Verdict::Inconclusive => 2,
            };
            table.entry(&v.check).or_default()[slot] += 1;
        }
        table
    }

    pub fn to_text(&self) -> String {
        let p = &self.params;
        let mut out = String::new();
        writeln!(out, "suite {}: {}", self.suite, self.suite.claim()).unwrap();
        writeln!(
            out,
            "seed {} instances {} max_objects={} max_nondegenerate={} simplex_bounds={:?} P={} K={} Q={} d={} acyclic={}",
            self.seed,
            self.instances.len(),
            p.max_objects,
            p.max_nondegenerate,
            p.simplex_bounds,
            p.trunc_p,
            p.trunc_k,
            p.trunc_q,
            p.degree,
            p.acyclic
        )
        .unwrap();
        writeln!(out, "generator: {GENERATOR_NOTE}").unwrap();
        for inst in &self.instances {
            writeln!(out, "instance {:#018x} {} ({} ms)", inst.sub_seed, inst.verdict(), inst.millis).unwrap();
            for v in &inst.verdicts {
                let first = v.detail.lines().next().unwrap_or("");
                writeln!(out, "  {:<12} {}: {}", v.verdict.to_string(), v.check, first).unwrap();
                if let Some(text) = v.counterexample() {
                    for line in text.lines() {
                        writeln!(out, "    | {line}").unwrap();
                    }
                }
            }
        }
        writeln!(out, "checks:").unwrap();
        writeln!(out, "  {:<40} {:>6} {:>6} {:>13}", "check", "PASS", "FAIL", "INCONCLUSIVE").unwrap();
        for (check, [pass, fail, inconclusive]) in self.check_table() {
            writeln!(out, "  {check:<40} {pass:>6} {fail:>6} {inconclusive:>13}").unwrap();
        }
        writeln!(
            out,
            "summary {}: {} PASS, {} FAIL, {} INCONCLUSIVE",
            self.verdict(),
            self.count(Verdict::Pass),
            self.count(Verdict::Fail),
            self.count(Verdict::Inconclusive)
        )
        .unwrap();
        out
    }
}

/// Input of a suite instance, as carried by FAIL payloads.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Input {
    Category(FiniteSimplicialCategory),
    Set(TruncatedSimplicialSet),
}

impl Input {
    pub fn to_text(&self) -> String {
        match self {
            Input::Category(x) => write_simplicial_category(x),
            Input::Set(x) => write_simplicial_set(x),
        }
    }

    pub fn from_text(text: &str) -> Result<Input, TextError> {
        let head = text.lines().map(str::trim).find(|l| !l.is_empty() && !l.starts_with('#')).unwrap_or("");
        if head.starts_with("sset") {
            read_simplicial_set(text).map(Input::Set)
        } else {
            read_simplicial_category(text).map(Input::Category)
        }
    }
}

/// Per-instance seeds derived from the suite seed.
pub fn sub_seeds(seed: u64, count: usize) -> Vec<u64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| rng.gen()).collect()
}

pub fn check_config(suite: SuiteId, params: &GenParams) -> Result<(), SuiteError> {
    params.check()?;
    if suite.needs_acyclic() && !params.acyclic {
        return Err(SuiteError::NeedsAcyclic(suite));
    }
    Ok(())
}

/// Runs `count` seeded instances of `suite`. Instances are evaluated in
/// parallel and emitted in sub-seed order.
pub fn run_suite(suite: SuiteId, params: &GenParams, count: usize) -> Result<SuiteReport, SuiteError> {
    check_config(suite, params)?;
    let mut instances: Vec<InstanceReport> = sub_seeds(params.seed, count)
        .into_par_iter()
        .map(|sub_seed| {
            let start = Instant::now();
            let verdicts = run_instance(suite, &params.with_seed(sub_seed));
            InstanceReport { sub_seed, verdicts, millis: start.elapsed().as_millis() as u64 }
        })
        .collect();
    instances.sort_by_key(|i| i.sub_seed);
    Ok(SuiteReport { suite, seed: params.seed, params: params.clone(), instances })
}

/// Generates the inputs of one instance from `params.seed` and runs the suite's checks.
pub fn run_instance(suite: SuiteId, params: &GenParams) -> Vec<CheckVerdict> {
    let mut inputs = Vec::new();
    let wants_set = matches!(suite, SuiteId::S5 | SuiteId::S6);
    let wants_category = suite != SuiteId::S5;
    if wants_set {
        match gen_simplicial_set(params) {
            Ok(x) => inputs.push(Input::Set(x)),
            Err(e) => return vec![CheckVerdict::inconclusive("generate", e.to_string())],
        }
    }
    if wants_category {
        match gen_simplicial_category(params) {
            Ok(x) => inputs.push(Input::Category(x)),
            Err(e) => return vec![CheckVerdict::inconclusive("generate", e.to_string())],
        }
    }
    inputs.iter().flat_map(|input| replay(suite, params, input)).collect()
}

/// Runs the checks of `suite` that apply to `input`.
pub fn replay(suite: SuiteId, params: &GenParams, input: &Input) -> Vec<CheckVerdict> {
    match input {
        Input::Set(x) => {
            let report = validate_simplicial_set(x);
            if !report.is_empty() {
                return vec![CheckVerdict::fail("input", report, input)];
            }
            match suite {
                SuiteId::S5 => vec![s5_homology(x, params.degree, input)],
                SuiteId::S6 => s6_set(x, params, input),
                _ => Vec::new(),
            }
        }
        Input::Category(x) => {
            let report = validate_simplicial_category(x);
            if !report.is_empty() {
                return vec![CheckVerdict::fail("input", report, input)];
            }
            let rel = relativize(x, x.truncation());
            match suite {
                SuiteId::S1 => s1(&rel, params.trunc_k, input),
                SuiteId::S2 => s2(x, &rel, params.trunc_k, input),
                SuiteId::S3 => vec![s3(&rel, params, input)],
                SuiteId::S4 => s4(&rel, params, input),
                SuiteId::S5 => Vec::new(),
                SuiteId::S6 => s6_rows(x, params, input),
                SuiteId::S7 => s7(x, &rel, params, input),
                SuiteId::S8 => s8(x, &rel, params, input),
            }
        }
    }
}

fn s1(rel: &Rel, k_max: usize, input: &Input) -> Vec<CheckVerdict> {
    (0..=k_max)
        .map(|k| {
            let ybar = ybar_level(rel, k);
            let sweep = retraction_sweep(rel, &ybar);
            let check = format!("retraction k={k}");
            if sweep.report.is_empty() {
                CheckVerdict::pass(
                    check,
                    format!(
                        "Y_{k}: {} objects, {} morphisms; Ȳ_{k}: {} objects, {} morphisms; r∘i = id, η natural, marked, identity on Ȳ",
                        sweep.objects,
                        sweep.morphisms,
                        ybar.category.n_objects(),
                        ybar.category.n_morphisms()
                    ),
                )
            } else {
                CheckVerdict::fail(check, sweep.report, input)
            }
        })
        .collect()
}

fn s2(x: &FiniteSimplicialCategory, rel: &Rel, k_max: usize, input: &Input) -> Vec<CheckVerdict> {
    let z = flipped_nerve(x, k_max);
    (0..=k_max).map(|k| s2_level(rel, &z, k, format!("iso k={k}"), input)).collect()
}

fn s2_level(rel: &Rel, z: &crate::scat::FlippedNerve, k: usize, check: String, input: &Input) -> CheckVerdict {
    let ybar = ybar_level(rel, k);
    let (_, iso) = iso_ybar_gamma_z(rel, &ybar, z);
    if iso.holds() {
        CheckVerdict::pass(
            check,
            format!("objects={} morphisms={}", ybar.category.n_objects(), ybar.category.n_morphisms()),
        )
    } else {
        CheckVerdict::fail(check, iso.report, input)
    }
}

/// `|Mor Y_k|` for `k ≤ k_max`, or the first level over [`LADDER_BUDGET`].
fn within_budget(rel: &Rel, k_max: usize) -> Result<Vec<u64>, String> {
    let mut counts = Vec::with_capacity(k_max + 1);
    for k in 0..=k_max {
        let n = retraction_sweep(rel, &ybar_level(rel, k)).morphisms;
        if n > LADDER_BUDGET {
            return Err(format!("Y_{k} has {n} morphisms, over the budget of {LADDER_BUDGET}"));
        }
        counts.push(n);
    }
    Ok(counts)
}

fn s3(rel: &Rel, params: &GenParams, input: &Input) -> CheckVerdict {
    let check = "NRel = nY";
    let (k_max, q_max) = (params.trunc_k, params.trunc_q);
    if let Err(why) = within_budget(rel, k_max) {
        return CheckVerdict::inconclusive(check, why);
    }
    let (levels, diagram) = y_diagram(rel, k_max);
    let ny = match nerve_levelwise(&diagram, q_max) {
        Ok(ny) => ny,
        Err(e) => return CheckVerdict::fail(check, e, input),
    };
    let nrel = simplicial_nerve(&rel.relative, k_max, q_max);
    let iso = iso_nrel_ny(&levels, &ny, &nrel);
    if iso.holds() {
        let cells: usize = nrel.set.sizes().iter().flatten().sum();
        CheckVerdict::pass(check, format!("cellwise bijection on {cells} cells (k ≤ {k_max}, q ≤ {q_max}), all structure maps commute"))
    } else {
        CheckVerdict::fail(check, iso.report, input)
    }
}

/// `n Ȳ → n Y` with both nerves, built level by level.
fn ybar_inclusion(rel: &Rel, k_max: usize, q_max: usize) -> Result<(LevelwiseNerve, LevelwiseNerve, BisimplicialMap), String> {
    let (ys, ydiag) = y_diagram(rel, k_max);
    let (bars, bdiag) = ybar_diagram(rel, k_max);
    let ny = nerve_levelwise(&ydiag, q_max).map_err(|e| e.to_string())?;
    let nb = nerve_levelwise(&bdiag, q_max).map_err(|e| e.to_string())?;
    let maps = (0..=k_max)
        .map(|k| {
            let inc = bars[k].inclusion(&ys[k]);
            nerve_map(&inc, &bars[k].category, &ys[k].category, &nb.nerves[k], &ny.nerves[k]).maps
        })
        .collect();
    Ok((nb, ny, BisimplicialMap { maps }))
}

fn s4(rel: &Rel, params: &GenParams, input: &Input) -> Vec<CheckVerdict> {
    let k_max = params.trunc_k;
    let levels = |verdict: Verdict, detail: &str| {
        (0..=k_max).map(|k| CheckVerdict::new(format!("level k={k}"), verdict, detail)).collect::<Vec<_>>()
    };
    if let Err(why) = within_budget(rel, k_max) {
        return levels(Verdict::Inconclusive, &why);
    }
    let (nb, ny, map) = match ybar_inclusion(rel, k_max, params.trunc_q) {
        Ok(parts) => parts,
        Err(e) => return vec![CheckVerdict::fail("inclusion", e, input)],
    };
    let report = map.validate(&nb.set, &ny.set);
    if !report.is_empty() {
        return vec![CheckVerdict::fail("inclusion", report, input)];
    }
    match levelwise_probe(&map, &nb.set, &ny.set, Axis::Outer, params.degree) {
        Ok(probe) => probe
            .levels
            .into_iter()
            .map(|l| {
                let check = format!("level k={}", l.level);
                match l.verdict {
                    Verdict::Fail => CheckVerdict::fail(check, l.detail, input),
                    v => CheckVerdict::new(check, v, l.detail),
                }
            })
            .collect(),
        Err(e) => vec![CheckVerdict::fail("inclusion", e, input)],
    }
}

fn profile_text(h: &HomologyProfile) -> String {
    let torsion: Vec<Vec<String>> = h.torsion().iter().map(|t| t.iter().map(|x| x.to_string()).collect()).collect();
    format!("betti {:?} torsion {:?}", h.betti(), torsion)
}

fn s5_homology(x: &TruncatedSimplicialSet, d: usize, input: &Input) -> CheckVerdict {
    s5_named(x, d, "homology".into(), input)
}

fn s5_named(x: &TruncatedSimplicialSet, d: usize, check: String, input: &Input) -> CheckVerdict {
    let (op, co) = (gamma_op(x), gamma(x));
    let (n_op, n_co) = (classical_nerve(&op.category, d + 1), classical_nerve(&co.category, d + 1));
    match (homology(&n_op.set, d), homology(&n_co.set, d)) {
        (Ok(a), Ok(b)) if a == b => CheckVerdict::pass(check, format!("n Γᵒᵖ X and n Γ X: {}", profile_text(&a))),
        (Ok(a), Ok(b)) => {
            CheckVerdict::fail(check, format!("n Γᵒᵖ X: {}; n Γ X: {}", profile_text(&a), profile_text(&b)), input)
        }
        (Err(e), _) | (_, Err(e)) => CheckVerdict::fail(check, e, input),
    }
}

/// Cone of the last-vertex map of `x` through degree `d`. A nonzero cone is
/// INCONCLUSIVE when `x` is truncated at `d + 1` or below, FAIL above.
fn latch_cone(x: &TruncatedSimplicialSet, d: usize, check: String, input: &Input) -> CheckVerdict {
    let k = d + 1;
    let p = x.truncation();
    if p < k {
        return CheckVerdict::inconclusive(check, format!("truncation {p} too shallow for degree {d}"));
    }
    let lv = match last_vertex_map(x, k) {
        Ok(lv) => lv,
        Err(e) => return CheckVerdict::fail(check, e, input),
    };
    match cone_probe(&lv.map, &lv.nerve.set, &lv.target, d) {
        Ok(cone) if cone.is_trivial() => CheckVerdict::pass(check, format!("cone homology trivial through degree {d}")),
        Ok(cone) => {
            let deg = cone.first_obstruction().unwrap_or(0);
            if p <= k {
                CheckVerdict::inconclusive(check, format!("cone homology in degree {deg} at truncation {p}, too shallow to decide"))
            } else {
                CheckVerdict::fail(check, format!("cone homology in degree {deg} at truncation {p}"), input)
            }
        }
        Err(e) => CheckVerdict::fail(check, e, input),
    }
}

fn s6_set(x: &TruncatedSimplicialSet, params: &GenParams, input: &Input) -> Vec<CheckVerdict> {
    let d = params.degree;
    let k = d + 1;
    let p = x.truncation();
    let mut out = Vec::new();
    if p < k {
        out.push(CheckVerdict::inconclusive("simplicial", format!("truncation {p} too shallow for degree {d}")));
    } else {
        let lv = last_vertex_map(x, k).expect("k within truncation");
        let report = lv.map.validate(&lv.nerve.set, &lv.target);
        if report.is_empty() {
            out.push(CheckVerdict::pass("simplicial", format!("n Γ X → X simplicial through dimension {k}")));
        } else {
            out.push(CheckVerdict::fail("simplicial", report, input));
        }
        for (name, target, f) in gen_maps_from(x, params) {
            let check = format!("natural {name}");
            let lv2 = last_vertex_map(&target, k).expect("same truncation");
            let gf = gamma_map(&f, &lv.gamma, &lv2.gamma);
            let nf = nerve_map(&gf, &lv.gamma.category, &lv2.gamma.category, &lv.nerve, &lv2.nerve);
            if nf.then(&lv2.map) == lv.map.then(&f.truncate(k)) {
                out.push(CheckVerdict::pass(check, "last vertex ∘ n Γ f = f ∘ last vertex"));
            } else {
                out.push(CheckVerdict::fail(check, format!("naturality square fails for the {name} map"), input));
            }
        }
    }
    let lowest = 2.min(p);
    for q in lowest..=p {
        let xq = x.truncate(q).expect("below truncation");
        out.push(latch_cone(&xq, d, format!("cone P={q}"), input));
    }
    out
}

fn s6_rows(x: &FiniteSimplicialCategory, params: &GenParams, input: &Input) -> Vec<CheckVerdict> {
    let z = flipped_nerve(x, params.trunc_k);
    let d = params.degree;
    (0..=params.trunc_k)
        .map(|k| latch_cone(z.set.row(k), d, format!("row (ZA)_{k} cone"), input))
        .collect()
}

fn s7(x: &FiniteSimplicialCategory, rel: &Rel, params: &GenParams, input: &Input) -> Vec<CheckVerdict> {
    let k_max = params.trunc_k;
    let d = params.degree;
    let mut out = vec![s3(rel, params, input)];
    out[0].check = "leg N Rel A = n Y A".into();
    for mut v in s4(rel, params, input) {
        v.check = format!("leg n Ȳ → n Y {}", v.check);
        out.push(v);
    }
    let z = flipped_nerve(x, k_max);
    for k in 0..=k_max {
        out.push(s2_level(rel, &z, k, format!("leg Ȳ_{k} ≅ Γᵒᵖ (ZA)_{k}"), input));
        out.push(s5_named(z.set.row(k), d, format!("leg n Γᵒᵖ (ZA)_{k} ~ n Γ (ZA)_{k}"), input));
        out.push(latch_cone(z.set.row(k), d, format!("leg n Γ (ZA)_{k} → (ZA)_{k}"), input));
    }
    let verdict = out.iter().fold(Verdict::Pass, |acc, v| acc.combine(v.verdict));
    let open: Vec<&str> = out.iter().filter(|v| v.verdict != Verdict::Pass).map(|v| v.check.as_str()).collect();
    let detail = if open.is_empty() {
        format!("N Rel A ≃ n Y A ≃ n Ȳ A ≅ n Γᵒᵖ Z A ≃ n Γ Z A ≃ Z A levelwise for k ≤ {k_max}, degrees ≤ {d}")
    } else {
        format!("open legs: {}", open.join(", "))
    };
    out.push(CheckVerdict::new("chain", verdict, detail));
    out
}

fn s8(x: &FiniteSimplicialCategory, rel: &Rel, params: &GenParams, input: &Input) -> Vec<CheckVerdict> {
    let mut out = Vec::new();
    match dk_equivalence_probe(&SimplicialFunctor::identity(x), x, x, params.degree, DK_SEARCH_BUDGET) {
        Ok(r) if r.verdict == Verdict::Fail => out.push(CheckVerdict::fail("dk identity", r.detail, input)),
        Ok(r) => out.push(CheckVerdict::new("dk identity", r.verdict, r.detail)),
        Err(e) => out.push(CheckVerdict::fail("dk identity", e, input)),
    }
    match homotopy_category(x) {
        Ok(ho) => {
            let c = &ho.category;
            let isos = (0..c.n_morphisms()).filter(|&m| c.is_isomorphism(m));
            let r = RelativeCategory::new(c.clone(), isos);
            if two_of_three_check(&r) {
                out.push(CheckVerdict::pass("two-of-three", "isomorphisms of Ho(A) satisfy two-out-of-three"));
            } else {
                out.push(CheckVerdict::fail("two-of-three", "isomorphisms of Ho(A) violate two-out-of-three", input));
            }
        }
        Err(e) => out.push(CheckVerdict::fail("two-of-three", e, input)),
    }
    let r = &rel.relative;
    let id = Functor::identity(&r.underlying);
    match check_homotopy_equivalence_witness(&id, &id, &ZigzagWitness::empty(), &ZigzagWitness::empty(), r, r) {
        Ok(()) => out.push(CheckVerdict::pass("witness identity", "identity of Rel A with empty zigzags")),
        Err(e) => out.push(CheckVerdict::fail("witness identity", e, input)),
    }
    // i: Ȳ_k ⇄ Y_k: r with r∘i = id and η: id ⇒ i∘r
    let k_max = params.trunc_k.min(1);
    let budget = within_budget(rel, k_max);
    for k in 0..=k_max {
        let check = format!("witness Ȳ_{k} ⇄ Y_{k}");
        if let Err(why) = &budget {
            out.push(CheckVerdict::inconclusive(check, why.clone()));
            continue;
        }
        let (y, ybar) = (y_level(rel, k), ybar_level(rel, k));
        let ret = retraction(rel, &y, &ybar);
        let (Some(rf), Some(eta)) = (ret.r, ret.eta) else {
            out.push(CheckVerdict::fail(check, ret.report, input));
            continue;
        };
        let inc = ybar.inclusion(&y);
        let (yr, br) = (RelativeCategory::maximal(y.category.clone()), RelativeCategory::maximal(ybar.category.clone()));
        let w2 = ZigzagWitness::single(Direction::Backward, Functor::identity(&y.category), rf.then(&inc), eta.components);
        match check_homotopy_equivalence_witness(&inc, &rf, &ZigzagWitness::empty(), &w2, &br, &yr) {
            Ok(()) => out.push(CheckVerdict::pass(check, "r ∘ i = id and η: id ⇒ i ∘ r through weak equivalences")),
            Err(e) => out.push(CheckVerdict::fail(check, e, input)),
        }
    }
    out
}

//! Verification suites, one per acceptance criterion, shared by the acceptance
//! harness and the `verify` command.

use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::action::{agreement_failure, calibrate_gamma, character_table_check, chart_anchor_failures, derive_chart, ActionEngine, ChartCase};
use crate::cells::{cell_closure, forest_cells, poincare, sphere_product_poincare, subcomplex_cells};
use crate::diagram::{compatible, ArrowGraph, TieBreak};
use crate::error::Result;
use crate::homology::{betti, dotted_generators, filtration_ranks, presentation_betti, relation_instances, HomClass, Reducer};
use crate::matching::{enumerate, DottedMatching, Matching};
use crate::perm::Perm;
use crate::skein::{calibrate, random_word, SkeinEvaluator};
use crate::specht::{f_embed, matching_vector, modules_equal, zeta};
use crate::sphere::{subspace_of, PointMap, Variant};
use crate::tableau::standard_basis;

/// Limits for a verification run.
#[derive(Clone, Copy, Debug)]
pub struct CheckConfig {
    /// Caps every suite's largest n; None keeps each suite's own bound.
    pub n_cap: Option<usize>,
    pub seed: u64,
}

impl Default for CheckConfig {
    fn default() -> Self {
        CheckConfig { n_cap: None, seed: 2024 }
    }
}

impl CheckConfig {
    fn bound(&self, default: usize) -> usize {
        self.n_cap.map_or(default, |c| c.min(default))
    }
}

#[derive(Clone, Debug, Default)]
pub struct Outcome {
    pub summary: String,
    pub failures: Vec<String>,
}

impl Outcome {
    fn fail(&mut self, msg: impl Into<String>) {
        if self.failures.len() < 20 {
            self.failures.push(msg.into());
        }
    }
}

pub struct Criterion {
    pub id: u8,
    pub title: &'static str,
    pub budget: Duration,
    run: fn(&CheckConfig) -> Result<Outcome>,
}

#[derive(Clone, Debug)]
pub struct CriterionReport {
    pub id: u8,
    pub title: &'static str,
    pub elapsed: Duration,
    pub budget: Duration,
    pub outcome: Outcome,
}

impl CriterionReport {
    pub fn within_budget(&self) -> bool {
        self.elapsed <= self.budget
    }

    pub fn passed(&self) -> bool {
        self.outcome.failures.is_empty() && self.within_budget()
    }
}

impl Criterion {
    pub fn run(&self, cfg: &CheckConfig) -> CriterionReport {
        let start = Instant::now();
        let outcome = (self.run)(cfg).unwrap_or_else(|e| Outcome { summary: String::new(), failures: vec![format!("error: {e}")] });
        CriterionReport { id: self.id, title: self.title, elapsed: start.elapsed(), budget: self.budget, outcome }
    }
}

pub fn criteria() -> Vec<Criterion> {
    let c = |id, title, secs, run| Criterion { id, title, budget: Duration::from_secs(secs), run };
    vec![
        c(1, "Betti numbers from the standard basis and the ψ⁻ cokernel", 60, betti_numbers),
        c(2, "X_{3,1} components, intersection points and Betti numbers", 1, x31),
        c(3, "distance formula and certified minimal sequences", 120, distances),
        c(4, "meet elements", 120, meets),
        c(5, "Coxeter relations and characters of the representation matrices", 60, representations),
        c(6, "matching vectors and polytabloids span the same module", 30, modules),
        c(7, "action chart anchors", 10, chart),
        c(8, "γ-route agrees with ζ-route; ζ kills all relations", 60, triangulation),
        c(9, "skein calibration and skein action", 120, skein),
        c(10, "padding embedding and the η/ι/γ square", 30, embedding),
        c(11, "cell decompositions", 30, cells),
        c(12, "independence of the linear extension", 60, order_independence),
    ]
}

fn binomial(n: usize, r: usize) -> usize {
    (0..r).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn betti_numbers(cfg: &CheckConfig) -> Result<Outcome> {
    let mut out = Outcome::default();
    let n_max = cfg.bound(8);
    let mut cases = 0;
    for n in 0..=n_max {
        for k in 0..=n / 2 {
            let formula: Vec<usize> =
                (0..=k).map(|m| binomial(n, m) - if m == 0 { 0 } else { binomial(n, m - 1) }).collect();
            let count = betti(n, k)?;
            let cokernel = presentation_betti(n, k)?;
            if count != formula || cokernel != formula {
                out.fail(format!("({n},{k}): formula {formula:?}, standard {count:?}, cokernel {cokernel:?}"));
            }
            cases += 1;
        }
    }
    out.summary = format!("{cases} types, n ≤ {n_max}");
    Ok(out)
}

fn x31(_: &CheckConfig) -> Result<Outcome> {
    let mut out = Outcome::default();
    let all = enumerate(4, 1)?;
    if all.len() != 3 {
        out.fail(format!("{} components", all.len()));
    }
    let s: Vec<_> = all.iter().map(|a| subspace_of(a, Variant::Plain)).collect();
    for (a, x) in all.iter().zip(&s) {
        if x.dimension() != Some(2) {
            out.fail(format!("S_{{{a}}} has dimension {:?}", x.dimension()));
        }
    }
    let find = |t: &str| -> Result<usize> {
        let m: Matching = t.parse()?;
        Ok(all.iter().position(|x| *x == m).expect("listed"))
    };
    let (a, b, c) = (find("4: u1-2 r3 r4")?, find("4: r1 u2-3 r4")?, find("4: r1 r2 u3-4")?);
    let ab = s[a].intersect(&s[b])?.as_point();
    let bc = s[b].intersect(&s[c])?.as_point();
    if ab != Some(vec![-1, -1, -1, 1]) {
        out.fail(format!("S_a ∩ S_b = {ab:?}"));
    }
    if bc != Some(vec![-1, 1, 1, 1]) {
        out.fail(format!("S_b ∩ S_c = {bc:?}"));
    }
    if !s[a].intersect(&s[c])?.is_empty() {
        out.fail("S_a ∩ S_c is not empty");
    }
    let ranks = (betti(4, 1)?, presentation_betti(4, 1)?);
    if ranks != (vec![1, 3], vec![1, 3]) {
        out.fail(format!("Betti {ranks:?}"));
    }
    out.summary = "wedge of 3 spheres".into();
    Ok(out)
}

fn distances(cfg: &CheckConfig) -> Result<Outcome> {
    let mut out = Outcome::default();
    let n_max = cfg.bound(8);
    let mut pairs = 0;
    for n in 0..=n_max {
        for k in 0..=n / 2 {
            let g = ArrowGraph::new(n, k)?;
            for a in &g.nodes {
                for b in &g.nodes {
                    if !compatible(a, b)? {
                        continue;
                    }
                    pairs += 1;
                    let d = match g.distance(a, b) {
                        Ok(Some(d)) => d as usize,
                        Ok(None) => {
                            out.fail(format!("{a} and {b} are compatible but disconnected"));
                            continue;
                        }
                        Err(e) => {
                            out.fail(e.to_string());
                            continue;
                        }
                    };
                    let seq = g.minimal_sequence(a, b)?;
                    if seq.len() != d || !seq.certified {
                        out.fail(format!("sequence {a} → {b}: {} steps (d = {d}), certified {}", seq.len(), seq.certified));
                    }
                }
            }
        }
    }
    out.summary = format!("{pairs} compatible pairs, n ≤ {n_max}");
    Ok(out)
}

fn meets(cfg: &CheckConfig) -> Result<Outcome> {
    let mut out = Outcome::default();
    let mut pairs = 0;
    let mut check = |g: &ArrowGraph, a: &Matching, b: &Matching, out: &mut Outcome| -> Result<()> {
        pairs += 1;
        let (x, y) = (g.index(a)?, g.index(b)?);
        match g.meet(a, b) {
            Ok(c) => {
                let z = g.index(&c)?;
                if !(g.below(z, x) && g.below(z, y) && g.dist(x, z) + g.dist(z, y) == g.dist(x, y)) {
                    out.fail(format!("meet({a}, {b}) = {c} fails"));
                }
            }
            Err(e) => out.fail(format!("meet({a}, {b}): {e}")),
        }
        Ok(())
    };
    let compat_max = cfg.bound(7);
    for n in 0..=compat_max {
        for k in 0..=n / 2 {
            let g = ArrowGraph::new(n, k)?;
            for a in &g.nodes {
                for b in &g.nodes {
                    if compatible(a, b)? {
                        check(&g, a, b, &mut out)?;
                    }
                }
            }
        }
    }
    let full_max = cfg.bound(8);
    for n in (0..=full_max).step_by(2) {
        let g = ArrowGraph::new(n, n / 2)?;
        for a in &g.nodes {
            for b in &g.nodes {
                check(&g, a, b, &mut out)?;
            }
        }
    }
    out.summary = format!("{pairs} pairs (compatible n ≤ {compat_max}, all of B^{{n/2,n/2}} n ≤ {full_max})");
    Ok(out)
}

fn representations(cfg: &CheckConfig) -> Result<Outcome> {
    let mut out = Outcome::default();
    let n_max = cfg.bound(6);
    let mut rows = 0;
    for n in 0..=n_max {
        for k in 0..=n / 2 {
            let report = character_table_check(n, k)?;
            rows += report.rows.len();
            for f in report.failures {
                out.fail(format!("({n},{k}) {f}"));
            }
        }
    }
    out.summary = format!("{rows} character values, n ≤ {n_max}");
    Ok(out)
}

fn modules(cfg: &CheckConfig) -> Result<Outcome> {
    let mut out = Outcome::default();
    let n_max = cfg.bound(7);
    let mut cases = 0;
    for n in 0..=n_max {
        for k in 0..=n / 2 {
            for m in 0..=k {
                let r = modules_equal(n, m, k)?;
                let expected = standard_tableaux_count(n, m);
                if !r.equal || r.rank_specht != expected || r.rank_matching != expected {
                    out.fail(format!("(n,m,k) = ({n},{m},{k}): equal {}, ranks {} {}", r.equal, r.rank_specht, r.rank_matching));
                }
                cases += 1;
            }
        }
    }
    out.summary = format!("{cases} (n,m,k) triples, n ≤ {n_max}");
    Ok(out)
}

fn standard_tableaux_count(n: usize, m: usize) -> usize {
    crate::tableau::standard_tableaux(n, m).len()
}

fn chart(cfg: &CheckConfig) -> Result<Outcome> {
    let mut out = Outcome::default();
    let n_max = cfg.bound(6);
    let mut seen = [0usize; 8];
    for n in 2..=n_max {
        for k in 1..=n / 2 {
            let rows = derive_chart(n, k)?;
            for r in &rows {
                seen[r.case.number() as usize] += 1;
            }
            for f in chart_anchor_failures(&rows) {
                out.fail(format!("({n},{k}) {f}"));
            }
        }
    }
    for (case, &count) in seen.iter().enumerate().skip(1) {
        if count == 0 {
            out.fail(format!("case {case} never occurs"));
        }
    }
    let cap = derive_chart(2, 1)?
        .into_iter()
        .find(|r| r.case == ChartCase::UndottedCap)
        .map(|r| r.output.to_string());
    if cap.as_deref() != Some("-1·(2: u1-2)") {
        out.fail(format!("case 2 at n = 2 gives {cap:?}"));
    }
    out.summary = format!("cases seen {:?}, n ≤ {n_max}", &seen[1..]);
    Ok(out)
}

fn triangulation(cfg: &CheckConfig) -> Result<Outcome> {
    let mut out = Outcome::default();
    let gamma_max = cfg.bound(5);
    let cal = calibrate_gamma(gamma_max)?;
    for n in 0..=gamma_max {
        for k in 0..=n / 2 {
            if let Some(f) = agreement_failure(n, k, cal.chosen)? {
                out.fail(f);
            }
        }
    }
    let rel_max = cfg.bound(7);
    let mut relations = 0;
    for n in 0..=rel_max {
        for k in 0..=n / 2 {
            for m in 0..=k {
                for r in relation_instances(n, k, m)? {
                    relations += 1;
                    if !zeta(&r.class).is_zero() {
                        out.fail(format!("ζ({}) ≠ 0", r.class));
                    }
                }
            }
        }
    }
    out.summary = format!("γ convention {} (n ≤ {gamma_max}); {relations} relations (n ≤ {rel_max})", cal.chosen);
    Ok(out)
}

fn skein(cfg: &CheckConfig) -> Result<Outcome> {
    let mut out = Outcome::default();
    let cal = calibrate(cfg.bound(4).max(2))?;
    let c = cal.chosen;
    if cal.fits.len() > 1 {
        out.summary = format!("{} conventions fit; ", cal.fits.len());
    }
    let gen_max = cfg.bound(5);
    let mut checks = 0;
    for n in 1..=gen_max {
        for k in 0..=n / 2 {
            let engine = ActionEngine::new(n, k)?;
            let skein = SkeinEvaluator::new(n, k)?;
            for i in 1..n {
                let s = Perm::simple(n, i)?;
                for m in 0..=k {
                    for b in engine.basis(m) {
                        checks += 1;
                        let want = engine.act(&s, &HomClass::single(b.clone()))?;
                        match skein.act_word(&[i], b, &c) {
                            Ok(got) if got == want => {}
                            got => out.fail(format!("s{i}·({b}): skein {got:?}, oracle {want}")),
                        }
                    }
                }
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let word_max = cfg.bound(4);
    for n in 1..=word_max {
        for k in 0..=n / 2 {
            let engine = ActionEngine::new(n, k)?;
            let skein = SkeinEvaluator::new(n, k)?;
            let gens: Vec<DottedMatching> = (0..=k).flat_map(|m| standard_basis(n, k, m)).collect();
            for _ in 0..100 {
                checks += 1;
                let b = &gens[rng.gen_range(0..gens.len())];
                let len = rng.gen_range(0..=8);
                let word = random_word(n, len, &mut rng);
                let want = engine.act(&Perm::from_word(n, &word)?, &HomClass::single(b.clone()))?;
                match skein.act_word(&word, b, &c) {
                    Ok(got) if got == want => {}
                    got => out.fail(format!("{word:?}·({b}): skein {got:?}, oracle {want}")),
                }
            }
        }
    }
    let x: DottedMatching = "3: u1-2 r3".parse()?;
    let sigma = Perm::parse("(1 2 3)", 3)?;
    let want = ActionEngine::new(3, 1)?.act(&sigma, &HomClass::single(x.clone()))?;
    let got = SkeinEvaluator::new(3, 1)?.act(&sigma, &x, &c)?;
    if got != want {
        out.fail(format!("(1 2 3)·({x}): skein {got}, oracle {want}"));
    }
    out.summary += &format!("convention [{c}]; {checks} comparisons; (1 2 3)·({x}) = {got}");
    Ok(out)
}

fn embedding(cfg: &CheckConfig) -> Result<Outcome> {
    let mut out = Outcome::default();
    let n_max = cfg.bound(5);
    let mut count = 0;
    for n in 1..=n_max {
        for k in 0..=n / 2 {
            let target = 2 * n - 2 * k;
            let eta = PointMap::eta(n, target)?;
            let iota = PointMap::iota(n, target)?;
            for a in enumerate(n, k)? {
                let s = subspace_of(&a, Variant::Plain);
                let image = s.apply(&eta)?;
                if !subspace_of(&a.complete(), Variant::Plain).contains(&image)? {
                    out.fail(format!("η(S_{{{a}}}) ⊄ S_φ"));
                }
                let left = image.apply(&PointMap::gamma(target))?;
                let right = s.apply(&PointMap::gamma(n))?.apply(&iota)?;
                if left != right {
                    out.fail(format!("square fails on {a}"));
                }
            }
            for m in 0..=k {
                for x in dotted_generators(n, k, m)? {
                    count += 1;
                    if f_embed(&matching_vector(&x), n - 2 * k) != matching_vector(&x.complete()) {
                        out.fail(format!("f(e_M) ≠ e_φ(M) for {x}"));
                    }
                }
            }
        }
    }
    out.summary = format!("{count} dotted matchings, n ≤ {n_max}");
    Ok(out)
}

fn cells(cfg: &CheckConfig) -> Result<Outcome> {
    let mut out = Outcome::default();
    let n_max = cfg.bound(7);
    let mut count = 0;
    for n in 0..=n_max {
        for k in 0..=n / 2 {
            let g = ArrowGraph::new(n, k)?;
            for (x, a) in g.nodes.iter().enumerate() {
                count += 1;
                if poincare(forest_cells(a).iter().map(|c| c.dimension)) != sphere_product_poincare(k) {
                    out.fail(format!("forest cells of {a}"));
                }
                let sa = subspace_of(a, Variant::Plain);
                for &y in &g.pred[x] {
                    let b = &g.nodes[y];
                    let sab = sa.intersect(&subspace_of(b, Variant::Plain))?;
                    for c in subcomplex_cells(a, b)? {
                        if !sab.contains(&cell_closure(a, &c.j))? {
                            out.fail(format!("cell {:?} of {a} escapes S_a ∩ S_b for b = {b}", c.j));
                        }
                    }
                }
            }
        }
    }
    out.summary = format!("{count} matchings, n ≤ {n_max}");
    Ok(out)
}

fn order_independence(cfg: &CheckConfig) -> Result<Outcome> {
    let mut out = Outcome::default();
    let n_max = cfg.bound(7);
    let mut most_orders = 0;
    for n in 0..=n_max {
        for k in 0..=n / 2 {
            let g = ArrowGraph::new(n, k)?;
            let mut orders = Vec::new();
            let ties = [TieBreak::LexMin, TieBreak::LexMax]
                .into_iter()
                .chain((0..4).map(|i| TieBreak::Seeded(cfg.seed.wrapping_add(i))));
            for tie in ties {
                let o = g.linear_order(tie)?;
                if !orders.contains(&o) {
                    orders.push(o);
                }
            }
            most_orders = most_orders.max(orders.len());
            let expected = betti(n, k)?;
            for o in &orders {
                let stages = filtration_ranks(&g, o)?;
                if stages.last() != Some(&expected) && !(g.is_empty() && expected.is_empty()) {
                    out.fail(format!("({n},{k}) order {o:?}: final ranks {:?}", stages.last()));
                }
                for w in stages.windows(2) {
                    if w[0].iter().zip(&w[1]).any(|(x, y)| x > y) {
                        out.fail(format!("({n},{k}) ranks decrease along {o:?}: {:?} → {:?}", w[0], w[1]));
                    }
                }
            }
            if n > cfg.bound(6) {
                continue;
            }
            let engine = ActionEngine::new(n, k)?;
            for m in 0..=k {
                let reducers: Vec<Reducer> = orders
                    .iter()
                    .map(|o| {
                        let seq: Vec<Matching> = o.iter().map(|&x| g.nodes[x].clone()).collect();
                        Reducer::new(n, k, m, Some(&seq))
                    })
                    .collect::<Result<_>>()?;
                for x in dotted_generators(n, k, m)? {
                    let x = HomClass::single(x);
                    for i in 1..n {
                        let s = Perm::simple(n, i)?;
                        let direct = engine.act(&s, &x)?;
                        for r in &reducers {
                            let via = engine.act(&s, &r.reduce(&x)?)?;
                            if via != direct {
                                out.fail(format!("({n},{k}) s{i}·{x}: {via} vs {direct}"));
                            }
                        }
                    }
                }
            }
        }
    }
    // Types with n ≤ 5 have too few matchings for three distinct extensions.
    if n_max >= 6 && most_orders < 3 {
        out.fail(format!("only {most_orders} distinct linear extensions compared"));
    }
    out.summary = format!("up to {most_orders} linear extensions per type, n ≤ {n_max}");
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_runs_pass() {
        let cfg = CheckConfig { n_cap: Some(4), seed: 1 };
        for c in criteria() {
            let r = c.run(&cfg);
            assert!(r.outcome.failures.is_empty(), "criterion {}: {:?}", r.id, r.outcome.failures);
        }
    }
}

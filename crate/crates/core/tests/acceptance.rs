//! Acceptance criteria 1 to 8.
//!
//! Runs as a plain binary under `cargo test` and prints one line per
//! criterion. Sizes, seeds, weight bounds and time budgets are pinned below;
//! any failed check or exceeded budget makes the run exit with status 1.

use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::Rng;

use tamemod::exactalg::{ideals_equal, monomials_of_degree, FreeElement, GradedPoly, Rational};
use tamemod::gradedmod::{
    annihilator, cokernel, cyclic_submodule, image, is_tame_support, kernel, submodule, Contraction, LongExactSequence,
};
use tamemod::graphsplit::{check_merge_closure, split_edge, tame_partitions, EdgeGraph, TamenessPredicate};
use tamemod::partition::{all_partitions, partition_ideal, partition_module, Partition};
use tamemod::serre::{campaign, sample_rng, CampaignEntry, Sampler, Shape};
use tamemod::{ModuleMap, Predicate, PresentedModule};

const MAX_EDGES: usize = 5;
const HILBERT_BOUND: i64 = 6;
const SEED: u64 = 20_240_917;
const CYCLIC_SAMPLES: u64 = 100;
const MAX_ELEMENT_WEIGHT: u32 = 4;
const CAMPAIGN_SAMPLES: u64 = 100;
const NON_TAME_SAMPLES: u64 = 50;
const SES_SAMPLES: u64 = 50;
const DETERMINISM_JOBS: [usize; 2] = [1, 3];

const BUDGET_1: Duration = Duration::from_secs(10);
const BUDGET_2: Duration = Duration::from_secs(10);
const BUDGET_3: Duration = Duration::from_secs(30);
const BUDGET_4: Duration = Duration::from_secs(120);
const BUDGET_5: Duration = Duration::from_secs(60);
const BUDGET_6: Duration = Duration::from_secs(60);
const BUDGET_7: Duration = Duration::from_secs(10);

struct Outcome {
    failures: Vec<String>,
    summary: String,
}

impl Outcome {
    fn new() -> Self {
        Outcome { failures: Vec::new(), summary: String::new() }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if !ok {
            self.failures.push(what());
        }
    }
}

/// Ground sets `{e, e'}`, `{a, e, e'}`, … up to `MAX_EDGES` elements.
fn split_grounds() -> Vec<Vec<String>> {
    (1..MAX_EDGES).map(|n| split_edge(&EdgeGraph::standard(n), "e").unwrap().split_graph.edges().to_vec()).collect()
}

fn criterion_1() -> Outcome {
    let mut out = Outcome::new();
    let mut counted = (0, 0);
    for ground in split_grounds() {
        let ring = split_edge(&EdgeGraph::standard(ground.len() - 1), "e").unwrap().split_graph.ring();
        let c = Contraction::new(&ring, "e", "e'").unwrap();
        for p in all_partitions(&ground) {
            let m = partition_module(&p);
            let t = c.torsion(&m).unwrap();
            if !p.related("e", "e'").unwrap() {
                counted.0 += 1;
                out.check(t.module.is_zero(), || format!("F1 of Q{p} is not zero"));
                continue;
            }
            counted.1 += 1;
            let merged = partition_module(&p.merge_edges("e", "e'").unwrap());
            for w in 0..=HILBERT_BOUND {
                let (a, b) = (t.module.hilbert_function(w), merged.hilbert_function(w));
                out.check(a == b, || format!("Q{p}: Hilbert function {a} != {b} at weight {w}"));
            }
            let column = t.express(&c, &m.generator(0));
            let witness = column.and_then(|col| ModuleMap::new(merged.clone(), t.module.clone(), vec![col]).ok());
            let iso = witness.is_some_and(|f| f.is_well_defined() && f.is_mono().unwrap() && f.is_epi().unwrap());
            out.check(iso, || format!("Q{p}: no isomorphism Q[merged] -> F1"));
        }
    }
    out.summary = format!("{} unrelated partitions give 0, {} related match the merge", counted.0, counted.1);
    out
}

fn criterion_2() -> Outcome {
    let mut out = Outcome::new();
    let mut n = 0;
    for ground in split_grounds() {
        let ring = split_edge(&EdgeGraph::standard(ground.len() - 1), "e").unwrap().split_graph.ring();
        let c = Contraction::new(&ring, "e", "e'").unwrap();
        for p in all_partitions(&ground) {
            n += 1;
            let f0 = c.f0(&partition_module(&p)).unwrap();
            let expected = partition_module(&p.merge_edges("e", "e'").unwrap());
            out.check(f0.same_presentation(&expected), || format!("F0 of Q{p} is {}", f0.display()));
        }
    }
    out.summary = format!("{n} partitions");
    out
}

fn random_form(rng: &mut impl Rng, nvars: usize, degree: u32) -> GradedPoly {
    let monos = monomials_of_degree(nvars, degree);
    let terms = (0..rng.gen_range(1..=3)).map(|_| {
        let c = *[-3i64, -2, -1, 1, 2, 3].choose(rng).unwrap();
        (monos.choose(rng).unwrap().clone(), Rational::from_integer(c.into()))
    });
    GradedPoly::from_terms(terms)
}

fn criterion_3() -> Outcome {
    let mut out = Outcome::new();
    for index in 0..CYCLIC_SAMPLES {
        let mut rng = sample_rng(SEED, index);
        let g = EdgeGraph::standard(rng.gen_range(1..=MAX_EDGES));
        let p = all_partitions(g.edges()).choose(&mut rng).unwrap().clone();
        let m = partition_module(&p);
        let x = loop {
            let d = rng.gen_range(0..=MAX_ELEMENT_WEIGHT);
            let x = FreeElement::new(vec![random_form(&mut rng, g.len(), d)]);
            if !m.is_zero_element(&x) {
                break x;
            }
        };
        let weight = x.weight(m.gen_weights()).unwrap();
        let ann = annihilator(&m, &x).unwrap();
        out.check(ideals_equal(m.ring(), &ann, &partition_ideal(&p)).unwrap(), || {
            format!("sample {index}: Ann({}) differs from I_P for {p}", x.display(m.ring()))
        });
        let cyc = cyclic_submodule(&m, &x).unwrap();
        out.check(cyc.shift == weight, || format!("sample {index}: shift {} for weight {weight}", cyc.shift));
    }
    out.summary = format!("{CYCLIC_SAMPLES} elements of weight <= {MAX_ELEMENT_WEIGHT}");
    out
}

fn report(entries: &[CampaignEntry]) -> String {
    entries.iter().map(|e| format!("{e}\n")).collect()
}

fn criterion_4(corpus: &mut Vec<(Predicate, Vec<CampaignEntry>)>) -> Outcome {
    let mut out = Outcome::new();
    let mut total = 0;
    for pred in Predicate::shipped() {
        let entries = campaign(&pred, MAX_EDGES, CAMPAIGN_SAMPLES, SEED, 0).unwrap();
        for e in &entries {
            total += 1;
            for (i, d) in e.degrees.iter().enumerate() {
                out.check(d.ok(), || format!("{pred} sample {} degree {i}: {e}", e.index));
            }
        }
        out.check(entries.iter().all(|e| e.level <= 3), || format!("{pred}: level above 3"));
        corpus.push((pred, entries));
    }
    out.summary = format!("{total} certificates x 2 degrees over {} predicates", Predicate::shipped().len());
    out
}

/// Partitions of `g` no tame partition refines: their support is not
/// covered by the tame components.
fn non_tame(pred: &Predicate, g: &EdgeGraph) -> Vec<Partition> {
    let all = all_partitions(g.edges());
    let tame: Vec<_> = all.iter().filter(|p| pred.is_tame(p)).cloned().collect();
    all.into_iter().filter(|q| !tame.iter().any(|p| p.refines(q))).collect()
}

fn criterion_5(corpus: &[(Predicate, Vec<CampaignEntry>)]) -> Outcome {
    let mut out = Outcome::new();
    let mut agreed = 0;
    for (pred, entries) in corpus {
        for e in entries {
            agreed += 1;
            out.check(e.input_tame, || format!("{pred} sample {}: verified but support test says no", e.index));
        }
    }
    let restrictive = [Predicate::MaxBlocks(1), Predicate::MaxBlocks(2), Predicate::Coblocked(vec!["a".into(), "b".into()])];
    let mut rejected = 0;
    for index in 0..NON_TAME_SAMPLES {
        let mut rng = sample_rng(SEED ^ 0x5eed, index);
        let pred = &restrictive[(index % 3) as usize];
        let g = EdgeGraph::standard(rng.gen_range(3..=MAX_EDGES));
        let tame = tame_partitions(pred, &g).unwrap();
        let candidates = non_tame(pred, &g);
        let discrete = Partition::discrete(g.edges());
        let m = if rng.gen_bool(0.3) && candidates.contains(&discrete) {
            PresentedModule::free(g.ring(), (0..rng.gen_range(1..=2)).map(|_| rng.gen_range(0..=1)).collect())
        } else {
            let q = candidates.choose(&mut rng).unwrap();
            partition_module(q).shift(rng.gen_range(-1..=1))
        };
        let verdict = is_tame_support(&m, &tame).unwrap();
        rejected += usize::from(!verdict);
        out.check(!verdict, || format!("{pred}: {} reported tame", m.display()));
    }
    out.summary = format!("{agreed} certified modules tame, {rejected}/{NON_TAME_SAMPLES} non-tame modules rejected");
    out
}

fn criterion_6() -> Outcome {
    let mut out = Outcome::new();
    let mut positions = 0;
    for index in 0..SES_SAMPLES {
        let mut rng = sample_rng(SEED ^ 0x6, index);
        let split = split_edge(&EdgeGraph::standard(rng.gen_range(1..MAX_EDGES)), "e").unwrap();
        let tame = tame_partitions(&Predicate::Always, &split.split_graph).unwrap();
        let sampler = Sampler::new(&split, &tame);
        let level = rng.gen_range(0..=2);
        let a = sampler.certificate(&mut rng, level, Shape::Any).unwrap().root().clone();
        let elems: Vec<_> = (0..rng.gen_range(1..=2)).map(|_| sampler.random_element(&mut rng, &a)).collect();
        let (inc, proj) = if index % 2 == 0 {
            let sub = submodule(&a, &elems).unwrap();
            let (_, proj) = cokernel(&sub.inclusion).unwrap();
            (sub.inclusion, proj)
        } else {
            let weights = elems.iter().map(|x| a.check_element(x).unwrap().unwrap_or(0)).collect();
            let free = PresentedModule::free(a.ring().clone(), weights);
            let phi = ModuleMap::new(free, a.clone(), elems).unwrap();
            let (_, k_inc) = kernel(&phi).unwrap();
            (k_inc, image(&phi).unwrap().corestriction)
        };
        let b = inc.source();
        let c = proj.target();
        for w in 0..=HILBERT_BOUND {
            let (hb, ha, hc) = (b.hilbert_function(w), inc.target().hilbert_function(w), c.hilbert_function(w));
            out.check(ha == hb + hc, || format!("sample {index}: Hilbert {ha} != {hb} + {hc} at {w}"));
        }
        let contraction = Contraction::new(a.ring(), "e", "e'").unwrap();
        let les = LongExactSequence::new(&contraction, &inc, &proj).unwrap();
        for r in les.check(0, HILBERT_BOUND).unwrap() {
            positions += 1;
            out.check(r.exact(), || format!("sample {index}: not exact at {}", r.position));
        }
    }
    out.summary = format!("{SES_SAMPLES} sequences, {positions} positions exact through weight {HILBERT_BOUND}");
    out
}

fn criterion_7() -> Outcome {
    let mut out = Outcome::new();
    let mut checked = 0;
    for pred in Predicate::shipped() {
        for n in 1..MAX_EDGES {
            let g = EdgeGraph::standard(n);
            for edge in g.edges() {
                let s = split_edge(&g, edge).unwrap();
                let r = check_merge_closure(&pred, &pred, &s, None).unwrap();
                checked += r.checked;
                out.check(r.passed(), || format!("{pred} splitting {edge} of {n} edges: {:?}", r.counterexample));
            }
        }
    }
    out.summary = format!("{checked} partitions over {} predicates", Predicate::shipped().len());
    out
}

fn criterion_8(corpus: &[(Predicate, Vec<CampaignEntry>)]) -> Outcome {
    let mut out = Outcome::new();
    let mut bytes = 0;
    for (pred, reference) in corpus {
        let expected = report(reference);
        bytes += expected.len();
        for jobs in DETERMINISM_JOBS {
            let again = report(&campaign(pred, MAX_EDGES, CAMPAIGN_SAMPLES, SEED, jobs).unwrap());
            out.check(again == expected, || format!("{pred}: report with {jobs} workers differs"));
        }
    }
    out.summary = format!("{bytes} report bytes identical for jobs 0, 1, 3");
    out
}

fn run(number: u32, title: &str, budget: Option<Duration>, f: impl FnOnce() -> Outcome) -> bool {
    let start = Instant::now();
    let mut outcome = f();
    let elapsed = start.elapsed();
    if let Some(b) = budget {
        outcome.check(elapsed <= b, || format!("took {elapsed:.1?}, budget {b:?}"));
    }
    let verdict = if outcome.failures.is_empty() { "PASS" } else { "FAIL" };
    let budget = budget.map_or(String::new(), |b| format!(", budget {b:?}"));
    println!("criterion {number} {verdict}  {title}: {} ({elapsed:.2?}{budget})", outcome.summary);
    for f in outcome.failures.iter().take(10) {
        println!("    {f}");
    }
    outcome.failures.is_empty()
}

fn main() {
    let mut corpus = Vec::new();
    let results = [
        run(1, "F1 case formula", Some(BUDGET_1), criterion_1),
        run(2, "F0 of partition modules", Some(BUDGET_2), criterion_2),
        run(3, "cyclic submodules", Some(BUDGET_3), criterion_3),
        run(4, "certificate transform end to end", Some(BUDGET_4), || criterion_4(&mut corpus)),
        run(5, "support test agrees with certificates", Some(BUDGET_5), || criterion_5(&corpus)),
        run(6, "six-term exactness", Some(BUDGET_6), criterion_6),
        run(7, "merge closure of shipped predicates", Some(BUDGET_7), criterion_7),
        run(8, "determinism across worker counts", None, || criterion_8(&corpus)),
    ];
    let passed = results.iter().filter(|ok| **ok).count();
    println!("acceptance: {passed}/{} criteria passed", results.len());
    if passed != results.len() {
        std::process::exit(1);
    }
}

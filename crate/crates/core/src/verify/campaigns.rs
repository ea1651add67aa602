use rand::Rng;
use rayon::prelude::*;

use super::fixtures::{build_elsahili_example, build_t5, c5_join_k2};
use super::{enumerate_oriented, enumerate_tournaments, CampaignOptions, Finding, Scope, Timer, VerificationReport};
use crate::circuits::{handle_decomposition, is_k_good, is_strongly_connected, k_good_circuit, verify_bondy};
use crate::coloring::{chi, clique_number};
use crate::forest::{corollary32_find, gallai_roy_path};
use crate::paths::{find_p4, find_pattern, find_two_block_certified, find_two_block_strong, BlockPattern, Direction};
use crate::random::{oriented_sample, random_orientation, random_oriented, random_tournament, rng, strong_sample};
use crate::{Digraph, Error, Result};

pub const CAMPAIGNS: &[&str] =
    &["grunbaum", "bondy", "cor32", "thm36", "conj219", "conj38", "gallai", "good_circuits", "handles"];

/// Largest order any sampling campaign accepts.
const MAX_SAMPLE_ORDER: usize = 12;

#[derive(Default)]
struct Tally {
    checked: usize,
    failures: Vec<Finding>,
    observations: Vec<Finding>,
}

impl Tally {
    fn fail(&mut self, d: &Digraph, detail: impl Into<String>) {
        self.failures.push(Finding::new(d, detail));
    }

    fn absorb(&mut self, other: Tally) {
        self.checked += other.checked;
        self.failures.extend(other.failures);
        self.observations.extend(other.observations);
    }
}

fn check_all(instances: &[Digraph], check: impl Fn(&Digraph) -> Tally + Sync + Send) -> Tally {
    let parts: Vec<Tally> = instances.par_iter().map(check).collect();
    let mut total = Tally::default();
    for p in parts {
        total.absorb(p);
    }
    total
}

fn report(name: &str, scope: Scope, tally: Tally, timer: &Timer) -> VerificationReport {
    VerificationReport {
        campaign: name.to_string(),
        scope: Scope { checked: tally.checked, ..scope },
        failures: tally.failures,
        observations: tally.observations,
        elapsed_ms: timer.ms(),
    }
}

fn max_order(opts: &CampaignOptions, default: usize) -> Result<usize> {
    let n = opts.max_n.unwrap_or(default);
    if !(3..=MAX_SAMPLE_ORDER).contains(&n) {
        return Err(Error::InvalidArgument(format!("max-n {n} outside 3..={MAX_SAMPLE_ORDER}")));
    }
    Ok(n)
}

fn tournaments_up_to(lo: usize, hi: usize) -> Vec<Digraph> {
    (lo..=hi).flat_map(|n| enumerate_tournaments(n).expect("order within cap")).collect()
}

fn oriented_up_to(hi: usize) -> Vec<Digraph> {
    (1..=hi).flat_map(|n| enumerate_oriented(n).expect("order within cap")).collect()
}

fn orders_of(instances: &[Digraph]) -> Vec<usize> {
    let mut o: Vec<usize> = instances.iter().map(Digraph::n).collect();
    o.sort_unstable();
    o.dedup();
    o
}

/// The 5-tournament classes contain `b1,f1,b1,f1` except for exactly one
/// class, isomorphic to [`build_t5`].
pub fn verify_grunbaum() -> VerificationReport {
    verify_grunbaum_over(&enumerate_tournaments(5).expect("order 5 is within cap"), true)
}

/// Grünbaum check over a chosen set of 5-tournaments. With `expect_t5`, the
/// set must contain exactly one `p4`-free member and it must be `T5`;
/// otherwise every member must contain `p4` unless it is `T5`.
pub fn verify_grunbaum_over(classes: &[Digraph], expect_t5: bool) -> VerificationReport {
    let timer = Timer::start();
    let t5 = build_t5();
    let free: Vec<bool> = classes.par_iter().map(|d| find_p4(d).is_none()).collect();
    let mut tally = Tally { checked: classes.len(), ..Tally::default() };
    let mut free_count = 0;
    for (d, &is_free) in classes.iter().zip(&free) {
        if !d.is_tournament() || d.n() != 5 {
            tally.fail(d, "not a 5-tournament");
            continue;
        }
        let is_t5 = d.is_isomorphic(&t5);
        if is_free {
            free_count += 1;
            if !is_t5 {
                tally.fail(d, "p4-free 5-tournament not isomorphic to T5");
            }
        } else if is_t5 {
            tally.fail(d, "T5 class reported to contain p4");
        }
    }
    if expect_t5 && free_count != 1 {
        tally.observations.push(Finding { arclist: String::new(), detail: format!("{free_count} p4-free classes") });
        if free_count == 0 {
            tally.fail(&t5, "no p4-free class found");
        }
    }
    tally.observations.push(Finding {
        arclist: String::new(),
        detail: format!("{} classes, {free_count} p4-free", classes.len()),
    });
    let scope = Scope { orders: vec![5], classes: classes.len(), samples: 0, seed: None, checked: 0 };
    report("grunbaum", scope, tally, &timer)
}

/// Longest circuit at least the chromatic number, on strongly connected
/// tournaments up to order 7 and seeded strongly connected samples.
pub fn verify_bondy_campaign(opts: &CampaignOptions) -> Result<VerificationReport> {
    let timer = Timer::start();
    let hi = max_order(opts, 9)?;
    let classes: Vec<Digraph> =
        tournaments_up_to(1, hi.min(7)).into_iter().filter(is_strongly_connected).collect();
    let samples = strong_sample(opts.seed, opts.samples.unwrap_or(200), 3..=hi);
    let all: Vec<Digraph> = classes.iter().chain(&samples).cloned().collect();
    let tally = check_all(&all, |d| {
        let mut t = Tally { checked: 1, ..Tally::default() };
        match verify_bondy(d) {
            Ok(r) if r.pass => {
                if let Some(c) = &r.circuit {
                    if let Err(m) = c.validate(d) {
                        t.fail(d, format!("invalid circuit witness: {m}"));
                    }
                }
            }
            Ok(r) => t.fail(d, format!("longest circuit {} < chi {}", r.longest, r.chi)),
            Err(e) => t.fail(d, e.to_string()),
        }
        t
    });
    let scope =
        Scope { orders: orders_of(&all), classes: classes.len(), samples: samples.len(), seed: Some(opts.seed), checked: 0 };
    Ok(report("bondy", scope, tally, &timer))
}

/// The level-coloring finder returns a checked `P(k, l)` whenever
/// `chi >= k + l + 2`, for `k, l` in `{1, 2}`.
pub fn verify_cor32(opts: &CampaignOptions) -> Result<VerificationReport> {
    let timer = Timer::start();
    let hi = max_order(opts, 10)?;
    let samples = oriented_sample(opts.seed, opts.samples.unwrap_or(300), 4..=hi);
    let tally = check_all(&samples, |d| {
        let mut t = Tally::default();
        let c = chi(d);
        for (k, l) in [(1, 1), (1, 2), (2, 1), (2, 2)] {
            if c < k + l + 2 {
                continue;
            }
            t.checked += 1;
            match corollary32_find(d, k, l) {
                Ok(p) if p.pattern == BlockPattern::two_block(k, l).expect("valid") => {
                    if let Err(m) = p.validate(d) {
                        t.fail(d, format!("P({k},{l}) witness rejected: {m}"));
                    }
                }
                Ok(p) => t.fail(d, format!("asked P({k},{l}), got {}", p.pattern)),
                Err(e) => t.fail(d, format!("P({k},{l}): {e}")),
            }
        }
        t
    });
    let scope = Scope { orders: orders_of(&samples), classes: 0, samples: samples.len(), seed: Some(opts.seed), checked: 0 };
    Ok(report("cor32", scope, tally, &timer))
}

fn thm36_instance(d: &Digraph) -> Tally {
    let mut t = Tally::default();
    let c = chi(d);
    // Pairs at the threshold must give a path; one above it, either witness
    // is acceptable but must check out.
    for total in [c.saturating_sub(1), c] {
        if total < 3 {
            continue;
        }
        let guaranteed = total + 1 == c;
        for k in 1..total {
            let l = total - k;
            t.checked += 1;
            let out = match find_two_block_certified(d, k, l) {
                Ok(o) => o,
                Err(e) => {
                    t.fail(d, format!("P({k},{l}): {e}"));
                    continue;
                }
            };
            if let Err(m) = out.validate(d, k, l) {
                t.fail(d, format!("P({k},{l}): invalid certificate: {m}"));
                continue;
            }
            let pattern = BlockPattern::two_block(k, l).expect("valid");
            let brute = find_pattern(d, &pattern).is_some();
            match (out.embedding().is_some(), guaranteed, brute) {
                (false, true, _) => t.fail(d, format!("P({k},{l}): coloring returned with chi = {c}")),
                (true, _, false) => t.fail(d, format!("P({k},{l}): brute force finds no path")),
                _ => {}
            }
            if guaranteed && is_strongly_connected(d) {
                match find_two_block_strong(d, k, l) {
                    Ok(Some(p)) if p.validate(d).is_ok() => {}
                    Ok(Some(_)) => t.fail(d, format!("P({k},{l}): invalid path from the contraction route")),
                    Ok(None) => t.fail(d, format!("P({k},{l}): contraction route found no path")),
                    Err(e) => t.fail(d, format!("P({k},{l}) contraction route: {e}")),
                }
            }
        }
    }
    if c >= 4 {
        t.checked += 1;
        let p = BlockPattern::two_block(c - 2, 1).expect("valid");
        if find_pattern(d, &p).is_none() {
            t.fail(d, format!("no {p} with chi = {c}"));
        }
    }
    t
}

/// Certified two-block search across tournaments, small oriented graphs and
/// seeded samples, cross-checked against brute force.
pub fn verify_thm36(opts: &CampaignOptions) -> Result<VerificationReport> {
    let timer = Timer::start();
    let hi = max_order(opts, 10)?;
    let mut classes = tournaments_up_to(4, hi.min(7));
    classes.extend(oriented_up_to(hi.min(5)));
    let samples = oriented_sample(opts.seed, opts.samples.unwrap_or(1000), 4..=hi);
    let all: Vec<Digraph> = classes.iter().chain(&samples).cloned().collect();
    let tally = check_all(&all, thm36_instance);
    let scope =
        Scope { orders: orders_of(&all), classes: classes.len(), samples: samples.len(), seed: Some(opts.seed), checked: 0 };
    Ok(report("thm36", scope, tally, &timer))
}

/// Maximal-forest path order is at least the chromatic number.
pub fn verify_gallai(opts: &CampaignOptions) -> Result<VerificationReport> {
    let timer = Timer::start();
    let hi = max_order(opts, 12)?;
    let classes = oriented_up_to(5);
    let samples = oriented_sample(opts.seed, opts.samples.unwrap_or(500), 6.min(hi)..=hi);
    let all: Vec<Digraph> = classes.iter().chain(&samples).cloned().collect();
    let tally = check_all(&all, |d| {
        let mut t = Tally { checked: 1, ..Tally::default() };
        let p = gallai_roy_path(d);
        if let Err(m) = p.validate(d) {
            t.fail(d, format!("invalid path: {m}"));
        } else if p.order() < chi(d) {
            t.fail(d, format!("path order {} below chi {}", p.order(), chi(d)));
        }
        t
    });
    let scope =
        Scope { orders: orders_of(&all), classes: classes.len(), samples: samples.len(), seed: Some(opts.seed), checked: 0 };
    Ok(report("gallai", scope, tally, &timer))
}

/// `k`-good circuits for every `k` in `3..=chi` on strongly connected samples.
pub fn verify_good_circuits(opts: &CampaignOptions) -> Result<VerificationReport> {
    let timer = Timer::start();
    let hi = max_order(opts, 8)?;
    let samples = strong_sample(opts.seed, opts.samples.unwrap_or(200), 3..=hi);
    let tally = check_all(&samples, |d| {
        let mut t = Tally::default();
        for k in 3..=chi(d) {
            t.checked += 1;
            match k_good_circuit(d, k) {
                Ok(c) if is_k_good(d, &c, k) => {}
                Ok(c) => t.fail(d, format!("k={k}: circuit {:?} is not {k}-good", c.vertices)),
                Err(e) => t.fail(d, format!("k={k}: {e}")),
            }
        }
        t
    });
    let scope = Scope { orders: orders_of(&samples), classes: 0, samples: samples.len(), seed: Some(opts.seed), checked: 0 };
    Ok(report("good_circuits", scope, tally, &timer))
}

/// Handle decompositions pass the structural checker, including
/// `r = m - n + 1`.
pub fn verify_handles(opts: &CampaignOptions) -> Result<VerificationReport> {
    let timer = Timer::start();
    let hi = max_order(opts, 9)?;
    let samples = strong_sample(opts.seed, opts.samples.unwrap_or(100), 3..=hi);
    let tally = check_all(&samples, |d| {
        let mut t = Tally { checked: 1, ..Tally::default() };
        match handle_decomposition(d) {
            Ok(h) => {
                if let Err(m) = h.validate(d) {
                    t.fail(d, m);
                }
            }
            Err(e) => t.fail(d, e.to_string()),
        }
        t
    });
    let scope = Scope { orders: orders_of(&samples), classes: 0, samples: samples.len(), seed: Some(opts.seed), checked: 0 };
    Ok(report("handles", scope, tally, &timer))
}

fn join_with_edge(cycle: usize) -> Vec<(usize, usize)> {
    let (a, b) = (cycle, cycle + 1);
    let mut edges: Vec<(usize, usize)> = (0..cycle).map(|i| (i, (i + 1) % cycle)).collect();
    for i in 0..cycle {
        edges.push((i, a));
        edges.push((i, b));
    }
    edges.push((a, b));
    edges
}

/// Antidirected `b1,f1,b1,f1` in 5-chromatic digraphs with no 5-tournament
/// and minimum out-degree 2, over orientations of `C5 + K2`-type graphs and
/// random oriented graphs of order at most `max_n`.
pub fn scan_conjecture_219(max_n: usize, opts: &CampaignOptions) -> Result<VerificationReport> {
    let timer = Timer::start();
    let hi = max_order(&CampaignOptions { max_n: Some(max_n), ..opts.clone() }, 8)?;
    let per_base = opts.samples.unwrap_or(300);
    let mut r = rng(opts.seed);
    let mut candidates = vec![build_t5(), build_elsahili_example(), c5_join_k2()];
    let mut bases: Vec<(usize, Vec<(usize, usize)>)> = Vec::new();
    if hi >= 7 {
        bases.push((7, join_with_edge(5)));
    }
    if hi >= 9 {
        bases.push((9, join_with_edge(7)));
    }
    for (n, edges) in &bases {
        for _ in 0..per_base {
            candidates.push(random_orientation(&mut r, *n, edges));
        }
    }
    if hi >= 8 {
        let base = join_with_edge(5);
        for _ in 0..per_base {
            let mut edges = base.clone();
            let mut others: Vec<usize> = (0..7).collect();
            rand::seq::SliceRandom::shuffle(&mut others[..], &mut r);
            let deg = r.gen_range(2..=5);
            edges.extend(others[..deg].iter().map(|&v| (v, 7)));
            candidates.push(random_orientation(&mut r, 8, &edges));
        }
    }
    for _ in 0..per_base {
        let n = r.gen_range(5..=hi);
        let p = r.gen_range(0.5..0.9);
        candidates.push(random_oriented(&mut r, n, p));
    }
    let pattern = BlockPattern::antidirected(4, Direction::Backward).expect("valid");
    let tally = check_all(&candidates, |d| {
        let mut t = Tally::default();
        if d.min_out_degree() < 2 || clique_number(d) >= 5 || chi(d) != 5 {
            return t;
        }
        t.checked = 1;
        if find_pattern(d, &pattern).is_none() {
            t.fail(d, format!("no {pattern} in a qualifying digraph"));
        }
        t
    });
    let scope = Scope {
        orders: orders_of(&candidates),
        classes: 3,
        samples: candidates.len() - 3,
        seed: Some(opts.seed),
        checked: 0,
    };
    Ok(report("conj219", scope, tally, &timer))
}

/// Every oriented path with `chi - 1` arcs, on tournaments up to order 7,
/// seeded samples up to `max_n` and dense instances of order 8 and 9.
/// Misses with `chi >= 8` are failures; smaller misses are observations.
pub fn scan_conjecture_38(max_n: usize, opts: &CampaignOptions) -> Result<VerificationReport> {
    let timer = Timer::start();
    let hi = max_order(&CampaignOptions { max_n: Some(max_n), ..opts.clone() }, 9)?;
    let classes = tournaments_up_to(1, hi.min(7));
    let mut samples = oriented_sample(opts.seed, opts.samples.unwrap_or(300), 4..=hi);
    let mut r = rng(opts.seed ^ 0x38);
    for n in 8..=hi.min(9) {
        for _ in 0..10 {
            samples.push(random_tournament(&mut r, n));
            let p = r.gen_range(0.9..1.0);
            samples.push(random_oriented(&mut r, n, p));
        }
    }
    let all: Vec<Digraph> = classes.iter().chain(&samples).cloned().collect();
    let tally = check_all(&all, |d| {
        let mut t = Tally::default();
        let c = chi(d);
        if c < 2 {
            return t;
        }
        for p in BlockPattern::all_of_length(c - 1) {
            t.checked += 1;
            if find_pattern(d, &p).is_none() {
                let detail = format!("no {p} with chi = {c}");
                if c >= 8 {
                    t.fail(d, detail);
                } else {
                    t.observations.push(Finding::new(d, detail));
                }
            }
        }
        t
    });
    let scope =
        Scope { orders: orders_of(&all), classes: classes.len(), samples: samples.len(), seed: Some(opts.seed), checked: 0 };
    Ok(report("conj38", scope, tally, &timer))
}

/// Runs a campaign by name.
pub fn run_campaign(name: &str, opts: &CampaignOptions) -> Result<VerificationReport> {
    match name {
        "grunbaum" => Ok(verify_grunbaum()),
        "bondy" => verify_bondy_campaign(opts),
        "cor32" => verify_cor32(opts),
        "thm36" => verify_thm36(opts),
        "conj219" => scan_conjecture_219(opts.max_n.unwrap_or(8), opts),
        "conj38" => scan_conjecture_38(opts.max_n.unwrap_or(9), opts),
        "gallai" => verify_gallai(opts),
        "good_circuits" => verify_good_circuits(opts),
        "handles" => verify_handles(opts),
        other => Err(Error::InvalidArgument(format!("unknown campaign {other:?}; expected one of {CAMPAIGNS:?}"))),
    }
}

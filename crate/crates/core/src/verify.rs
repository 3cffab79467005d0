//! The acceptance suite: eleven exact checks of the weight formulas and the
//! remainder machinery against brute-force oracles.
//!
//! Weights of explicit constructions are recomputed point by point with
//! [`Polynomial::evaluate`], independently of the fast torus transform, and
//! counting formulas are compared with plain box enumeration.

use std::time::{Duration, Instant};

use serde::Serialize;

use crate::code::{
    evaluate_on_torus, exhaustive_spectrum, sample_weights, torus_points, zeros_via_footprint, CodeParams, CodeShape,
};
use crate::extremal::{
    analyze, binomial_divisor, build_min_weight, build_next_to_min, corpus, is_min_weight_form,
    min_distance, n_formula, next_to_min, pattern_monomial, verify_inequalities, BinomialPair, MonomialType,
    RemainderClass,
};
use crate::gf::FieldSpec;
use crate::groebner::{count_multiples_excluding, FootprintSpec};
use crate::limits::Limits;
use crate::poly::{Monomial, Polynomial};
use crate::rng::SplitMix64;

/// Knobs for [`run_all`]; defaults reproduce the documented suite.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VerifyConfig {
    pub seed: u64,
    /// Codewords sampled by the gap check.
    pub samples: u64,
    /// Random forms in the classification corpus.
    pub corpus: usize,
    /// Extra forms constructed to be divisible by a binomial.
    pub divisible: usize,
    /// Random polynomials in the footprint check.
    pub footprint_cases: usize,
    pub limits: Limits,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            seed: 42,
            samples: 100_000,
            corpus: 1000,
            divisible: 200,
            footprint_cases: 100,
            limits: Limits::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

/// Outcome of one criterion.
#[derive(Debug, Clone, Serialize)]
pub struct CheckReport {
    pub id: u8,
    pub name: &'static str,
    pub status: Status,
    pub detail: String,
    pub elapsed_ms: u128,
    pub budget_ms: u128,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    /// `[PASS] 01 name (12 ms): detail`
    pub fn line(&self) -> String {
        let tag = if self.passed() { "PASS" } else { "FAIL" };
        format!("[{tag}] {:02} {} ({} ms): {}", self.id, self.name, self.elapsed_ms, self.detail)
    }
}

type Outcome = Result<String, String>;

fn timed(id: u8, name: &'static str, budget: Duration, body: impl FnOnce() -> Outcome) -> CheckReport {
    let start = Instant::now();
    let outcome = body();
    let elapsed = start.elapsed();
    let over = elapsed > budget;
    let (mut ok, mut detail) = match outcome {
        Ok(d) => (true, d),
        Err(d) => (false, d),
    };
    if over {
        ok = false;
        detail = format!("{detail}; exceeded the {} ms budget", budget.as_millis());
    }
    CheckReport {
        id,
        name,
        status: if ok { Status::Pass } else { Status::Fail },
        detail,
        elapsed_ms: elapsed.as_millis(),
        budget_ms: budget.as_millis(),
    }
}

fn params(q: u64, s: usize, d: usize) -> Result<CodeParams, String> {
    CodeParams::from_order(q, s, d).map_err(|e| e.to_string())
}

fn shape(q: u64, s: u32, d: u32) -> CodeShape {
    CodeShape::new(q, s, d)
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

/// Weight of `phi(f)` by evaluating `f` at every torus point separately.
pub fn naive_weight(f: &Polynomial, params: &CodeParams) -> u64 {
    torus_points(params).filter(|pt| !f.evaluate(pt).expect("arity matches").is_zero()).count() as u64
}

/// Box monomials divisible by `m` and not by `lead`, by visiting every
/// exponent vector in `0..=q-2`.
pub fn count_box(m: &Monomial, lead: &Monomial, spec: FootprintSpec) -> u64 {
    let top = (spec.q - 2) as u32;
    let mut cell = vec![0u32; spec.s];
    let mut count = 0;
    loop {
        let over = |g: &Monomial| g.exps().iter().zip(&cell).all(|(&a, &b)| a <= b);
        if over(m) && !over(lead) {
            count += 1;
        }
        let Some(i) = cell.iter().rposition(|&e| e < top) else { return count };
        cell[i] += 1;
        cell[i + 1..].fill(0);
    }
}

fn random_pairs(params: &CodeParams, rng: &mut SplitMix64) -> Vec<BinomialPair> {
    let (s, d) = (params.s(), params.d());
    let outer: Vec<usize> = corpus::permutation(s - d, rng).into_iter().map(|k| d + k).collect();
    let q = params.q();
    (1..=d)
        .map(|i| BinomialPair {
            i,
            c: outer[i - 1],
            a: params.field().element(1 + rng.below(q - 1) as u32).expect("unit"),
        })
        .collect()
}

/// 1: product-form words have weight `(q-2)^d (q-1)^(s-d)`.
pub fn check_min_weight_construction(cfg: &VerifyConfig) -> CheckReport {
    timed(1, "minimum-weight construction", Duration::from_secs(5), || {
        let mut rng = SplitMix64::new(cfg.seed);
        let mut seen = Vec::new();
        for (q, s, d) in [(4, 8, 3), (5, 8, 3), (4, 6, 3)] {
            let p = params(q, s, d)?;
            let f = build_min_weight(&p, &random_pairs(&p, &mut rng)).map_err(err)?;
            let w = naive_weight(&f, &p);
            let want = min_distance(p.shape()).map_err(err)?;
            if w != want {
                return Err(format!("({q},{s},{d}): weight {w}, formula {want}"));
            }
            seen.push(w.to_string());
        }
        Ok(format!("weights {} match (q-2)^d (q-1)^(s-d); the (4,6,3) value is 2^3*3^3 = 216", seen.join(" / ")))
    })
}

/// 2: the small-d construction has next-to-minimal weight.
pub fn check_next_to_min_small_d(_cfg: &VerifyConfig) -> CheckReport {
    timed(2, "next-to-minimal construction, 2d + 2 <= s", Duration::from_secs(30), || {
        let mut seen = Vec::new();
        for ((q, s, d), want) in [((4, 8, 3), 2160), ((5, 8, 3), 29376), ((4, 9, 3), 6480)] {
            let p = params(q, s, d)?;
            let f = build_next_to_min(&p).map_err(err)?;
            let w = naive_weight(&f, &p);
            let formula = next_to_min(p.shape()).map_err(err)?;
            if w != want || formula != want {
                return Err(format!("({q},{s},{d}): weight {w}, formula {formula}, expected {want}"));
            }
            seen.push(w.to_string());
        }
        Ok(format!("weights {}", seen.join(" / ")))
    })
}

/// 3: the large-d construction at (4,8,5).
pub fn check_next_to_min_large_d(_cfg: &VerifyConfig) -> CheckReport {
    timed(3, "next-to-minimal construction, 2d - 2 >= s", Duration::from_secs(5), || {
        let p = params(4, 8, 5)?;
        let g = build_next_to_min(&p).map_err(err)?;
        let w = naive_weight(&g, &p);
        let formula = next_to_min(p.shape()).map_err(err)?;
        if w != 2160 || formula != 2160 {
            return Err(format!("weight {w}, formula {formula}, expected 2160"));
        }
        Ok("weight 2160".to_string())
    })
}

/// 4: exhaustive spectra reproduce both formulas.
pub fn check_exhaustive_spectra(cfg: &VerifyConfig) -> CheckReport {
    timed(4, "exhaustive spectrum oracle", Duration::from_secs(60), || {
        let mut seen = Vec::new();
        for (q, s, d) in [(4, 4, 3), (5, 4, 3), (4, 5, 4)] {
            let p = params(q, s, d)?;
            let spectrum = exhaustive_spectrum(&p, &cfg.limits).map_err(err)?;
            let (min, second) = (spectrum.min_nonzero(), spectrum.second_nonzero());
            let want = (min_distance(p.shape()).map_err(err)?, next_to_min(p.shape()).map_err(err)?);
            if (min, second) != (Some(want.0), Some(want.1)) {
                return Err(format!("({q},{s},{d}): spectrum gives {min:?}/{second:?}, formulas {want:?}"));
            }
            seen.push(format!("{}/{}", want.0, want.1));
        }
        Ok(format!("min/second {}", seen.join(", ")))
    })
}

/// 5: counting formulas, inclusion-exclusion and box enumeration agree.
pub fn check_counting_formulas(_cfg: &VerifyConfig) -> CheckReport {
    timed(5, "counting formulas", Duration::from_secs(10), || {
        let mut checked = 0;
        for (q, s, d) in [(4u64, 8u32, 3u32), (5, 8, 3)] {
            let sh = shape(q, s, d);
            let spec = FootprintSpec::new(q, s as usize);
            let lead = Monomial::product_of(s as usize, 1..=d as usize);
            let mut cases = vec![(MonomialType::M1, None), (MonomialType::M4, None)];
            cases.extend((2..=d).map(|v| (MonomialType::M2, Some(v))));
            cases.extend((0..=d - 2).map(|v| (MonomialType::M3, Some(v))));
            for (class, v) in cases {
                let formula = n_formula(class, v, sh).map_err(err)?;
                for j in 1..=d as usize {
                    let m = pattern_monomial(class, v, j, sh).map_err(err)?;
                    let ie = count_multiples_excluding(&m, std::slice::from_ref(&lead), spec).map_err(err)?;
                    let brute = count_box(&m, &lead, spec);
                    if formula != ie || ie != brute {
                        return Err(format!(
                            "({q},{s},{d}) {} v={v:?} j={j}: formula {formula}, inclusion-exclusion {ie}, box {brute}",
                            class.name()
                        ));
                    }
                    checked += 1;
                }
            }
        }
        Ok(format!("{checked} pattern monomials agree"))
    })
}

/// 6: the inequality grid.
pub fn check_inequality_grid(_cfg: &VerifyConfig) -> CheckReport {
    timed(6, "inequality grid", Duration::from_secs(1), || {
        let mut grid = Vec::new();
        for q in [4, 5, 7, 8, 9] {
            for d in 3..=5 {
                for s in [2 * d + 2, 2 * d + 3, 2 * d + 4] {
                    grid.push(shape(q, s, d));
                }
            }
        }
        let report = verify_inequalities(&grid);
        let first = report.failures().next().map(|row| format!("{:?}: {}", row.shape, row.failures.join("; ")));
        match first {
            None => Ok(format!("{} grid points pass", report.rows.len())),
            Some(msg) => Err(msg),
        }
    })
}

fn corpus_params() -> Result<CodeParams, String> {
    params(4, 8, 3)
}

/// 7: every corpus remainder falls into one of the four classes.
pub fn check_remainder_classification(cfg: &VerifyConfig) -> CheckReport {
    timed(7, "remainder classification", Duration::from_secs(120), || {
        let p = corpus_params()?;
        let mut tally = std::collections::BTreeMap::<&str, usize>::new();
        let mut others = Vec::new();
        for f in corpus::random_forms(&p, cfg.seed, cfg.corpus) {
            let a = analyze(&f, &p).map_err(err)?;
            for piv in &a.pivots {
                let c = &piv.classification;
                *tally.entry(c.class.tag()).or_default() += 1;
                if c.class == RemainderClass::Other && others.len() < 3 {
                    others.push(format!("f = {f}, j = {}, witness {:?}", c.j, c.witness.as_ref().map(|w| w.to_string())));
                }
            }
        }
        let summary = tally.iter().map(|(k, v)| format!("{k}={v}")).collect::<Vec<_>>().join(" ");
        if tally.contains_key("Other") {
            return Err(format!("{summary}; first Other cases: {}", others.join(" | ")));
        }
        Ok(summary)
    })
}

/// 8: zero remainder exactly when a binomial `t_j + a t_e` divides.
pub fn check_zero_iff_divisible(cfg: &VerifyConfig) -> CheckReport {
    timed(8, "zero remainder iff binomial divisor", Duration::from_secs(60), || {
        let p = corpus_params()?;
        let mut forms = corpus::random_forms(&p, cfg.seed, cfg.corpus);
        forms.extend(corpus::divisible_forms(&p, cfg.seed.wrapping_add(1), cfg.divisible));
        let (mut zeros, mut pivots) = (0, 0);
        for f in &forms {
            let a = analyze(f, &p).map_err(err)?;
            for piv in &a.pivots {
                let c = &piv.classification;
                let divisible = binomial_divisor(&a.normalized, c.j, p.d()).is_some();
                if divisible != c.class.is_zero() {
                    return Err(format!("f = {f}, j = {}: class {}, divisible {divisible}", c.j, c.class));
                }
                zeros += usize::from(divisible);
                pivots += 1;
            }
        }
        Ok(format!("{pivots} pivots over {} forms, {zeros} zero remainders, no exceptions", forms.len()))
    })
}

/// 9: the footprint bound never exceeds the weight and is tight on the
/// extremal constructions.
pub fn check_bound_soundness(cfg: &VerifyConfig) -> CheckReport {
    timed(9, "lower bound soundness", Duration::from_secs(120), || {
        let p = corpus_params()?;
        let limits = &cfg.limits;
        let weight = |f: &Polynomial| evaluate_on_torus(f, &p, limits).map(|w| w.weight().weight).map_err(err);
        let bound = |f: &Polynomial| analyze(f, &p).map_err(err)?.lower_bound.ok_or("no bound in this regime".to_string());
        let mut tight = 0;
        let mut slack = 0u64;
        for f in corpus::random_forms(&p, cfg.seed, cfg.corpus) {
            let (b, w) = (bound(&f)?, weight(&f)?);
            if b > w {
                return Err(format!("f = {f}: bound {b} exceeds weight {w}"));
            }
            slack = slack.max(w - b);
        }
        let mut rng = SplitMix64::new(cfg.seed ^ 0x9e37);
        let mut extremal: Vec<Polynomial> =
            (0..50).map(|_| build_min_weight(&p, &random_pairs(&p, &mut rng))).collect::<Result<_, _>>().map_err(err)?;
        extremal.push(build_next_to_min(&p).map_err(err)?);
        for f in &extremal {
            let (b, w) = (bound(f)?, weight(f)?);
            if b != w {
                return Err(format!("f = {f}: bound {b} but weight {w}"));
            }
            tight += 1;
        }
        Ok(format!("{} corpus forms sound (max slack {slack}), {tight} extremal words tight", cfg.corpus))
    })
}

/// 10: footprint of `I_X + (f)` counts the torus zeros of `f`.
pub fn check_footprint_zero_count(cfg: &VerifyConfig) -> CheckReport {
    timed(10, "footprint equals zero count", Duration::from_secs(120), || {
        let field = std::sync::Arc::new(FieldSpec::with_order(4).map_err(err)?);
        let mut done = 0;
        for s in 2..=4usize {
            let share = cfg.footprint_cases / 3 + usize::from(s - 2 < cfg.footprint_cases % 3);
            let p = CodeParams::new(field.clone(), s, 1).map_err(err)?;
            let n = p.shape().length().expect("small");
            for f in corpus::random_squarefree(&field, s, cfg.seed.wrapping_add(s as u64), share) {
                let zeros = zeros_via_footprint(&f, &p, &cfg.limits).map_err(err)?;
                let w = naive_weight(&f, &p);
                if zeros != n - w {
                    return Err(format!("f = {f} (s = {s}): footprint {zeros}, zeros by evaluation {}", n - w));
                }
                done += 1;
            }
        }
        Ok(format!("{done} polynomials agree"))
    })
}

/// 11: sampled weights respect the minimum distance and the gap.
pub fn check_gap_sampling(cfg: &VerifyConfig) -> CheckReport {
    timed(11, "gap sampling consistency", Duration::from_secs(300), || {
        let p = corpus_params()?;
        let (delta, ntm) = (min_distance(p.shape()).map_err(err)?, next_to_min(p.shape()).map_err(err)?);
        let weights = sample_weights(&p, cfg.seed, cfg.samples, &cfg.limits).map_err(err)?;
        let nonzero: Vec<u64> = weights.into_iter().filter(|&w| w > 0).collect();
        if let Some(w) = nonzero.iter().find(|&&w| w < delta || (w > delta && w < ntm)) {
            return Err(format!("sampled weight {w} violates delta = {delta}, next = {ntm}"));
        }
        let min = nonzero.iter().min().copied();
        Ok(format!("{} samples, min observed nonzero weight {min:?}", cfg.samples))
    })
}

/// Runs all eleven criteria in order.
pub fn run_all(cfg: &VerifyConfig) -> Vec<CheckReport> {
    let checks: [fn(&VerifyConfig) -> CheckReport; 11] = [
        check_min_weight_construction,
        check_next_to_min_small_d,
        check_next_to_min_large_d,
        check_exhaustive_spectra,
        check_counting_formulas,
        check_inequality_grid,
        check_remainder_classification,
        check_zero_iff_divisible,
        check_bound_soundness,
        check_footprint_zero_count,
        check_gap_sampling,
    ];
    checks.iter().map(|check| check(cfg)).collect()
}

/// Round trip of [`build_min_weight`] through [`is_min_weight_form`] for
/// `count` seeded pair sets; returns the first mismatch.
pub fn min_weight_round_trip(p: &CodeParams, seed: u64, count: usize) -> Result<(), String> {
    let mut rng = SplitMix64::new(seed);
    for _ in 0..count {
        let pairs = random_pairs(p, &mut rng);
        let f = build_min_weight(p, &pairs).map_err(err)?;
        let mut want = pairs.clone();
        want.sort_by_key(|x| x.i);
        let got = is_min_weight_form(&f, p).map_err(err)?;
        if got.as_ref() != Some(&want) {
            return Err(format!("f = {f}: built from {want:?}, recovered {got:?}"));
        }
    }
    Ok(())
}

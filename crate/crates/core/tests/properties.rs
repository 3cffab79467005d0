use std::sync::Arc;

use hyperweight::code::{
    evaluate_on_torus, hypersimplex_monomials, sample_weights, torus_points, zeros_via_footprint, CodeParams, CodeShape,
    Encoder,
};
use hyperweight::extremal::corpus::random_forms;
use hyperweight::extremal::{
    analyze, m3_followup, min_distance, n_formula, next_to_min, pattern_monomial, MonomialType, Normalization,
};
use hyperweight::gf::{FieldElement, FieldSpec};
use hyperweight::groebner::{count_multiples_excluding, reduce, DivisorList};
use hyperweight::limits::Limits;
use hyperweight::poly::{parse_poly, Monomial, Polynomial};
use hyperweight::rng::SplitMix64;
use hyperweight::verify::{min_weight_round_trip, naive_weight};
use proptest::prelude::*;

const ORDERS: [u64; 9] = [4, 5, 7, 8, 9, 11, 16, 25, 27];

fn field_of(q: u64) -> Arc<FieldSpec> {
    Arc::new(FieldSpec::with_order(q).unwrap())
}

fn elements(q: u64, n: usize) -> impl Strategy<Value = Vec<u32>> {
    prop::collection::vec(0..q as u32, n)
}

fn field_and_elements(n: usize) -> impl Strategy<Value = (u64, Vec<u32>)> {
    prop::sample::select(ORDERS.to_vec()).prop_flat_map(move |q| (Just(q), elements(q, n)))
}

fn exps(s: usize, max: u32) -> impl Strategy<Value = Monomial> {
    prop::collection::vec(0..=max, s).prop_map(Monomial::new)
}

/// Random polynomial in `s` variables over GF(q) with exponents below `q`.
fn poly(field: Arc<FieldSpec>, s: usize) -> impl Strategy<Value = Polynomial> {
    let q = field.q();
    prop::collection::vec((exps(s, q - 1), 0..q), 0..6).prop_map(move |terms| {
        let terms = terms.into_iter().map(|(m, c)| (m, field.element(c).unwrap()));
        Polynomial::from_terms(&field, s, terms).unwrap()
    })
}

fn ring() -> impl Strategy<Value = (Arc<FieldSpec>, usize)> {
    (prop::sample::select(vec![4u64, 5, 7, 8, 9]), 2usize..=4).prop_map(|(q, s)| (field_of(q), s))
}

fn ring_with_polys(n: usize) -> impl Strategy<Value = (Arc<FieldSpec>, usize, Vec<Polynomial>)> {
    ring().prop_flat_map(move |(f, s)| {
        let p = poly(Arc::clone(&f), s);
        (Just(f), Just(s), prop::collection::vec(p, n))
    })
}

fn point(field: &FieldSpec, reps: &[u32]) -> Vec<FieldElement> {
    reps.iter().map(|&r| field.element(r % field.q()).unwrap()).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_axioms((q, v) in field_and_elements(3)) {
        let f = FieldSpec::with_order(q).unwrap();
        let [a, b, c] = [0, 1, 2].map(|i| f.element(v[i]).unwrap());
        prop_assert_eq!(f.add(a, f.add(b, c)), f.add(f.add(a, b), c));
        prop_assert_eq!(f.mul(a, f.mul(b, c)), f.mul(f.mul(a, b), c));
        prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        prop_assert_eq!(f.add(a, b), f.add(b, a));
        prop_assert_eq!(f.mul(a, b), f.mul(b, a));
        prop_assert_eq!(f.add(a, f.neg(a)), f.zero());
        prop_assert_eq!(f.sub(f.add(a, b), b), a);
        if !a.is_zero() {
            prop_assert_eq!(f.mul(a, f.inv(a).unwrap()), f.one());
            prop_assert_eq!(f.pow(a, q as i64 - 1).unwrap(), f.one());
        }
        prop_assert_eq!(f.pow(a, q as i64).unwrap(), a);
        prop_assert_eq!(f.parse(&f.format(a)).unwrap(), a);
    }

    #[test]
    fn grlex_is_a_multiplicative_total_order(a in exps(4, 5), b in exps(4, 5), c in exps(4, 5)) {
        prop_assert_eq!(a.cmp(&b), b.cmp(&a).reverse());
        prop_assert_eq!(a.mul(&c).cmp(&b.mul(&c)), a.cmp(&b));
        if a.degree() != b.degree() {
            prop_assert_eq!(a.cmp(&b), a.degree().cmp(&b.degree()));
        }
        prop_assert!(a.mul(&c) >= a);
        if a < b && b < c {
            prop_assert!(a < c);
        }
    }

    #[test]
    fn format_then_parse_round_trips((field, s, fs) in ring_with_polys(1)) {
        let f = &fs[0];
        prop_assert_eq!(&parse_poly(&f.to_string(), &field, s).unwrap(), f);
    }

    #[test]
    fn evaluation_is_a_ring_homomorphism((field, s, fs) in ring_with_polys(2), reps in elements(256, 4)) {
        let x = point(&field, &reps[..s]);
        let (f, g) = (&fs[0], &fs[1]);
        let (fx, gx) = (f.evaluate(&x).unwrap(), g.evaluate(&x).unwrap());
        prop_assert_eq!((f + g).evaluate(&x).unwrap(), field.add(fx, gx));
        prop_assert_eq!((f * g).evaluate(&x).unwrap(), field.mul(fx, gx));
        prop_assert_eq!((-f).evaluate(&x).unwrap(), field.neg(fx));
    }

    #[test]
    fn leading_monomial_is_multiplicative((_field, _s, fs) in ring_with_polys(2)) {
        let (f, g) = (&fs[0], &fs[1]);
        let prod = f * g;
        match (f.leading_monomial(), g.leading_monomial()) {
            (Some(a), Some(b)) => prop_assert_eq!(prod.leading_monomial(), Some(&a.mul(b))),
            _ => prop_assert!(prod.is_zero()),
        }
    }

    #[test]
    fn torus_reduction_preserves_values((field, s, fs) in ring_with_polys(1)) {
        let f = &fs[0];
        let divisors = DivisorList::torus(&field, s);
        let r = reduce(f, &divisors).unwrap().remainder;
        let q1 = field.q() - 1;
        for (m, _) in r.terms() {
            prop_assert!(m.exps().iter().all(|&e| e < q1), "{}", m);
        }
        let params = CodeParams::new(Arc::clone(&field), s, 1).unwrap();
        for x in torus_points(&params) {
            prop_assert_eq!(f.evaluate(&x).unwrap(), r.evaluate(&x).unwrap());
        }
    }

    #[test]
    fn normalization_round_trips(seed in any::<u64>()) {
        let p = CodeParams::from_order(5, 7, 3).unwrap();
        for f in random_forms(&p, seed, 4) {
            let n = Normalization::for_leading(f.leading_monomial().unwrap());
            let g = n.normalize(&f);
            prop_assert_eq!(g.leading_monomial(), Some(&Monomial::product_of(7, 1..=3)));
            prop_assert_eq!(n.restore(&g), f);
        }
    }

    #[test]
    fn below_stays_in_range(seed in any::<u64>(), n in 1u64..1_000_000) {
        let mut rng = SplitMix64::new(seed);
        for _ in 0..32 {
            prop_assert!(rng.below(n) < n);
        }
    }
}

fn code() -> impl Strategy<Value = CodeParams> {
    prop::sample::select(vec![(4u64, 4usize, 2usize), (5, 4, 2), (4, 5, 2), (7, 3, 2), (8, 3, 1), (4, 4, 3)])
        .prop_map(|(q, s, d)| CodeParams::from_order(q, s, d).unwrap())
}

fn code_with_coeffs(n: usize) -> impl Strategy<Value = (CodeParams, Vec<Vec<u32>>)> {
    code().prop_flat_map(move |p| {
        let k = hypersimplex_monomials(&p).len();
        let q = p.q();
        (Just(p), prop::collection::vec(elements(q, k), n))
    })
}

fn coeffs(p: &CodeParams, reps: &[u32]) -> Vec<FieldElement> {
    reps.iter().map(|&r| p.field().element(r).unwrap()).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn encoding_is_linear((p, cs) in code_with_coeffs(2), lambda in 0u32..4) {
        let field = p.field();
        let lam = field.element(lambda % field.q()).unwrap();
        let (a, b) = (coeffs(&p, &cs[0]), coeffs(&p, &cs[1]));
        let mix: Vec<FieldElement> = a.iter().zip(&b).map(|(&x, &y)| field.add(x, field.mul(lam, y))).collect();
        let mut enc = Encoder::new(&p, &Limits::default()).unwrap();
        let (wa, wb, wm) = (enc.encode(&a).unwrap(), enc.encode(&b).unwrap(), enc.encode(&mix).unwrap());
        for i in 0..wm.entries.len() {
            prop_assert_eq!(wm.entries[i], field.add(wa.entries[i], field.mul(lam, wb.entries[i])));
        }
    }

    #[test]
    fn encoder_matches_pointwise_evaluation((p, cs) in code_with_coeffs(1)) {
        let a = coeffs(&p, &cs[0]);
        let mut enc = Encoder::new(&p, &Limits::default()).unwrap();
        let word = enc.encode(&a).unwrap();
        let f = enc.polynomial(&a).unwrap();
        for (x, &value) in torus_points(&p).zip(&word.entries) {
            prop_assert_eq!(f.evaluate(&x).unwrap(), value);
        }
        let w = word.weight();
        prop_assert_eq!(w.weight + w.zeros, w.length);
        prop_assert_eq!(w.weight, naive_weight(&f, &p));
        prop_assert_eq!(enc.weight_of(&a).unwrap(), w.weight);
    }

    #[test]
    fn footprint_counts_zeros((p, cs) in code_with_coeffs(1)) {
        let limits = Limits::default();
        prop_assume!(p.s() <= limits.max_groebner_vars);
        let f = Encoder::new(&p, &limits).unwrap().polynomial(&coeffs(&p, &cs[0])).unwrap();
        let w = evaluate_on_torus(&f, &p, &limits).unwrap().weight();
        prop_assert_eq!(zeros_via_footprint(&f, &p, &limits).unwrap(), w.zeros);
    }

    #[test]
    fn nonzero_weights_respect_minimum_distance((p, cs) in code_with_coeffs(1)) {
        let a = coeffs(&p, &cs[0]);
        let w = Encoder::new(&p, &Limits::default()).unwrap().weight_of(&a).unwrap();
        if let (true, Ok(delta)) = (w > 0, min_distance(p.shape())) {
            prop_assert!(w >= delta, "weight {} below {}", w, delta);
        }
    }
}

fn extremal_shapes() -> Vec<CodeShape> {
    let mut out = Vec::new();
    for q in [4u64, 5, 7, 8] {
        for d in 3u32..=5 {
            for s in d + 2..=2 * d + 3 {
                out.push(CodeShape::new(q, s, d));
            }
        }
    }
    out
}

#[test]
fn counting_formulas_match_inclusion_exclusion() {
    for shape in extremal_shapes() {
        let (s, d) = (shape.s as usize, shape.d as usize);
        let spec = hyperweight::groebner::FootprintSpec::new(shape.q, s);
        let lead = Monomial::product_of(s, 1..=d);
        let mut cases = vec![(MonomialType::M1, None), (MonomialType::M4, None)];
        cases.extend((2..=shape.d).map(|v| (MonomialType::M2, Some(v))));
        cases.extend((0..=shape.d.saturating_sub(2)).map(|v| (MonomialType::M3, Some(v))));
        for (class, v) in cases {
            for j in 1..=d {
                let Ok(want) = n_formula(class, v, shape) else { continue };
                let Ok(m) = pattern_monomial(class, v, j, shape) else { continue };
                let got = count_multiples_excluding(&m, std::slice::from_ref(&lead), spec).unwrap();
                assert_eq!(got, want, "{shape:?} {} v={v:?} j={j}", class.name());
            }
        }
    }
}

#[test]
fn min_weight_forms_round_trip() {
    for q in [4, 5] {
        let p = CodeParams::from_order(q, 8, 3).unwrap();
        min_weight_round_trip(&p, 2024 + q, 200).unwrap();
    }
}

#[test]
fn m3_followups_hold_on_corpus() {
    let p = CodeParams::from_order(4, 8, 3).unwrap();
    let mut seen = 0;
    for f in random_forms(&p, 42, 400) {
        let a = analyze(&f, &p).unwrap();
        for fu in m3_followup(&a, &p).unwrap() {
            assert!(fu.holds(), "{f}: {fu:?}");
            seen += 1;
        }
    }
    assert!(seen > 0, "corpus produced no M3 pivot with v = 0");
}

#[test]
fn lower_bound_never_exceeds_weight() {
    let p = CodeParams::from_order(4, 7, 3).unwrap();
    let limits = Limits::default();
    for f in random_forms(&p, 7, 120) {
        let a = analyze(&f, &p).unwrap();
        let w = evaluate_on_torus(&f, &p, &limits).unwrap().weight().weight;
        if let Some(lb) = a.lower_bound {
            assert!(lb <= w, "{f}: bound {lb} > weight {w}");
        }
    }
}

#[test]
fn sampled_weights_leave_the_gap_empty() {
    let p = CodeParams::from_order(4, 8, 3).unwrap();
    let (delta, ntm) = (min_distance(p.shape()).unwrap(), next_to_min(p.shape()).unwrap());
    let weights = sample_weights(&p, 42, 10_000, &Limits::default()).unwrap();
    assert_eq!(weights.len(), 10_000);
    for w in weights.into_iter().filter(|&w| w > 0) {
        assert!(w >= delta, "weight {w} below {delta}");
        assert!(!(delta < w && w < ntm), "weight {w} inside the gap");
    }
}

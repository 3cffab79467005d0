//! Seeded random polynomials for the empirical checks.

use std::sync::Arc;

use crate::code::{hypersimplex_monomials, CodeParams};
use crate::gf::{FieldElement, FieldSpec};
use crate::poly::{Monomial, Polynomial};
use crate::rng::SplitMix64;

fn unit(field: &FieldSpec, rng: &mut SplitMix64) -> FieldElement {
    field.element(1 + rng.below(field.q() as u64 - 1) as u32).expect("in range")
}

fn element(field: &FieldSpec, rng: &mut SplitMix64) -> FieldElement {
    field.element(rng.below(field.q() as u64) as u32).expect("in range")
}

/// Uniform permutation of `1..=n` (Fisher-Yates).
pub fn permutation(n: usize, rng: &mut SplitMix64) -> Vec<usize> {
    let mut v: Vec<usize> = (1..=n).collect();
    for i in (1..n).rev() {
        let k = rng.below(i as u64 + 1) as usize;
        v.swap(i, k);
    }
    v
}

/// All square-free degree-`k` monomials in the listed variables.
fn squarefree_monomials(s: usize, vars: &[usize], k: usize) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut pick = Vec::with_capacity(k);
    fn rec(s: usize, vars: &[usize], k: usize, start: usize, pick: &mut Vec<usize>, out: &mut Vec<Monomial>) {
        if pick.len() == k {
            out.push(Monomial::product_of(s, pick.iter().copied()));
            return;
        }
        for i in start..vars.len() {
            pick.push(vars[i]);
            rec(s, vars, k, i + 1, pick, out);
            pick.pop();
        }
    }
    rec(s, vars, k, 0, &mut pick, &mut out);
    out
}

fn random_combination(field: &Arc<FieldSpec>, s: usize, basis: &[Monomial], count: usize, rng: &mut SplitMix64) -> Polynomial {
    let mut idx: Vec<usize> = (0..basis.len()).collect();
    for i in 0..count.min(idx.len()) {
        let k = i + rng.below((idx.len() - i) as u64) as usize;
        idx.swap(i, k);
    }
    let terms = idx[..count.min(basis.len())].iter().map(|&i| (basis[i].clone(), unit(field, rng)));
    Polynomial::from_terms(field, s, terms).expect("valid terms")
}

/// Product of `d` random linear forms on disjoint, nonempty variable groups.
fn product_of_linear_forms(params: &CodeParams, rng: &mut SplitMix64) -> Polynomial {
    let (field, s, d) = (params.field(), params.s(), params.d());
    let order = permutation(s, rng);
    // cut points: d - 1 distinct positions in 1..s, leaving groups nonempty
    let mut cuts: Vec<usize> = permutation(s - 1, rng).into_iter().take(d - 1).collect();
    cuts.sort_unstable();
    cuts.push(s);
    let mut start = 0;
    let mut f = Polynomial::constant(field, s, field.one());
    for &end in &cuts {
        let group = &order[start..end];
        let size = 1 + rng.below(group.len() as u64) as usize;
        let form = Polynomial::from_terms(field, s, group[..size].iter().map(|&v| (Monomial::var(s, v, 1), unit(field, rng))))
            .expect("valid terms");
        f = &f * &form;
        start = end;
    }
    f
}

/// `n` seeded monic square-free homogeneous degree-`d` polynomials, cycling
/// through four families: sparse sums of 2 to 6 basis monomials, dense
/// sums including each monomial with probability 1/2, products of linear
/// forms on disjoint variables, and such products plus one extra monomial.
pub fn random_forms(params: &CodeParams, seed: u64, n: usize) -> Vec<Polynomial> {
    let mut rng = SplitMix64::new(seed);
    let field = params.field();
    let s = params.s();
    let basis = hypersimplex_monomials(params);
    let mut out = Vec::with_capacity(n);
    while out.len() < n {
        let f = match out.len() % 4 {
            0 => {
                let k = 2 + rng.below(5) as usize;
                random_combination(field, s, &basis, k, &mut rng)
            }
            1 => {
                let chosen: Vec<Monomial> = basis.iter().filter(|_| rng.below(2) == 1).cloned().collect();
                random_combination(field, s, &chosen, chosen.len(), &mut rng)
            }
            2 => product_of_linear_forms(params, &mut rng),
            _ => {
                let extra = &basis[rng.below(basis.len() as u64) as usize];
                let bump = Polynomial::monomial(field, s, extra.clone(), unit(field, &mut rng));
                &product_of_linear_forms(params, &mut rng) + &bump
            }
        };
        if !f.is_zero() {
            out.push(f.monic());
        }
    }
    out
}

/// `n` seeded forms divisible by a binomial: `(t_j + a t_e) * g` with `g`
/// random square-free homogeneous of degree `d - 1` avoiding `t_j, t_e`,
/// made monic and then randomly relabeled.
pub fn divisible_forms(params: &CodeParams, seed: u64, n: usize) -> Vec<Polynomial> {
    let mut rng = SplitMix64::new(seed);
    let (field, s, d) = (params.field(), params.s(), params.d());
    let mut out = Vec::with_capacity(n);
    while out.len() < n {
        let j = 1 + rng.below(d as u64) as usize;
        let e = d + 1 + rng.below((s - d) as u64) as usize;
        let a = unit(field, &mut rng);
        let rest: Vec<usize> = (1..=s).filter(|&v| v != j && v != e).collect();
        let basis = squarefree_monomials(s, &rest, d - 1);
        let k = 1 + rng.below(6) as usize;
        let g = random_combination(field, s, &basis, k, &mut rng);
        let binomial =
            Polynomial::from_terms(field, s, [(Monomial::var(s, j, 1), field.one()), (Monomial::var(s, e, 1), a)]).expect("valid");
        let f = (&binomial * &g).relabel(&permutation(s, &mut rng));
        out.push(f.monic());
    }
    out
}

/// `n` seeded square-free polynomials (not necessarily homogeneous) in
/// `s` variables, each term kept with probability 1/2 with a random
/// coefficient.
pub fn random_squarefree(field: &Arc<FieldSpec>, s: usize, seed: u64, n: usize) -> Vec<Polynomial> {
    let mut rng = SplitMix64::new(seed);
    (0..n)
        .map(|_| {
            let terms: Vec<(Monomial, FieldElement)> = (0u32..1 << s)
                .filter_map(|mask| {
                    let keep = rng.below(2) == 1;
                    let c = element(field, &mut rng);
                    let m = Monomial::new((0..s).map(|i| mask >> (s - 1 - i) & 1).collect());
                    keep.then_some((m, c))
                })
                .collect();
            Polynomial::from_terms(field, s, terms).expect("valid terms")
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn forms_have_the_promised_shape() {
        let p = CodeParams::from_order(4, 8, 3).unwrap();
        let forms = random_forms(&p, 42, 40);
        assert_eq!(forms.len(), 40);
        for f in &forms {
            assert!(f.is_squarefree_homog(3), "{f}");
            assert_eq!(f.leading_coeff(), Some(p.field().one()));
        }
        assert_eq!(forms, random_forms(&p, 42, 40));
        assert_ne!(forms, random_forms(&p, 43, 40));

        for f in divisible_forms(&p, 7, 40) {
            assert!(f.is_squarefree_homog(3), "{f}");
            assert_eq!(f.leading_coeff(), Some(p.field().one()));
        }
    }

    #[test]
    fn permutations_are_bijective() {
        let mut rng = SplitMix64::new(5);
        for n in 1..10 {
            let mut p = permutation(n, &mut rng);
            p.sort_unstable();
            assert_eq!(p, (1..=n).collect::<Vec<_>>());
        }
    }

    #[test]
    fn squarefree_sampler() {
        let field = Arc::new(FieldSpec::with_order(4).unwrap());
        let fs = random_squarefree(&field, 3, 1, 20);
        assert!(fs.iter().all(Polynomial::is_squarefree));
        assert!(fs.iter().any(|f| f.len() > 2));
    }
}

//! Random generators and independent reference implementations shared by the
//! integration tests.
//!
//! The references here avoid the library's π tables and derivation matrices:
//! `σ̃` is recomputed from the permutation, `Δ` from its inner form
//! `Δ(f) = a (f - σ̃(f))` with `a` the diagonal, and products by rewriting one
//! `x` at a time.
#![allow(dead_code)]

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::{Command, Stdio};
use std::io::Write;
use std::sync::Arc;

use num_traits::{One, Zero};
use ore_ext::rational::rat;
use ore_ext::{FuncElem, OreContext, OrePoly, Permutation, Rational};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_rational(rng: &mut impl Rng) -> Rational {
    rat(rng.gen_range(-6..=6), rng.gen_range(1..=4))
}

pub fn nonzero_rational(rng: &mut impl Rng) -> Rational {
    loop {
        let r = random_rational(rng);
        if !r.is_zero() {
            return r;
        }
    }
}

pub fn random_perm(rng: &mut impl Rng, n: usize) -> Permutation {
    let mut image: Vec<usize> = (0..n).collect();
    image.shuffle(rng);
    Permutation::new(image).unwrap()
}

pub fn random_non_identity(rng: &mut impl Rng, n: usize) -> Permutation {
    assert!(n >= 2);
    loop {
        let p = random_perm(rng, n);
        if !p.is_identity() {
            return p;
        }
    }
}

/// Random function; about a third of the entries are zero.
pub fn random_func(rng: &mut impl Rng, n: usize) -> FuncElem {
    FuncElem::new(
        (0..n).map(|_| if rng.gen_bool(0.33) { Rational::zero() } else { random_rational(rng) }).collect(),
    )
    .unwrap()
}

/// A diagonal admissible for `perm`: zero on fixed points, random elsewhere.
pub fn random_diag(rng: &mut impl Rng, perm: &Permutation, nonzero: bool) -> Vec<Rational> {
    (0..perm.n())
        .map(|i| {
            if perm.apply(i) == i {
                Rational::zero()
            } else if nonzero {
                nonzero_rational(rng)
            } else {
                random_rational(rng)
            }
        })
        .collect()
}

pub fn random_context(rng: &mut impl Rng, n: usize, with_delta: bool) -> Arc<OreContext> {
    let perm = random_perm(rng, n);
    if with_delta && !perm.is_identity() {
        let diag = random_diag(rng, &perm, false);
        OreContext::from_diag(perm, diag).unwrap()
    } else {
        OreContext::skew(perm)
    }
}

/// A context whose derivation is not zero.
pub fn random_delta_context(rng: &mut impl Rng, n: usize) -> Arc<OreContext> {
    loop {
        let perm = random_non_identity(rng, n);
        let nonzero = rng.gen_bool(0.5);
        let diag = random_diag(rng, &perm, nonzero);
        let ctx = OreContext::from_diag(perm, diag).unwrap();
        if !ctx.has_zero_derivation() {
            return ctx;
        }
    }
}

pub fn random_poly(rng: &mut impl Rng, ctx: &Arc<OreContext>, max_degree: usize) -> OrePoly {
    let deg = rng.gen_range(0..=max_degree);
    OrePoly::new(ctx, (0..=deg).map(|_| random_func(rng, ctx.n())).collect()).unwrap()
}

// ---------------------------------------------------------------- references

/// `f ∘ σ^{-k}` evaluated pointwise by walking `σ` backwards.
pub fn ref_automorphism(perm: &Permutation, f: &FuncElem, k: i64) -> FuncElem {
    let n = perm.n();
    let inv: Vec<usize> = {
        let mut v = vec![0; n];
        for i in 0..n {
            v[perm.apply(i)] = i;
        }
        v
    };
    let step = |i: usize| if k >= 0 { inv[i] } else { perm.apply(i) };
    let values = (0..n)
        .map(|i| {
            let mut j = i;
            for _ in 0..k.unsigned_abs() {
                j = step(j);
            }
            f.get(j).clone()
        })
        .collect();
    FuncElem::new(values).unwrap()
}

/// `Δ(f) = a (f - σ̃(f))` with `a` the diagonal of the context.
pub fn ref_derivation(ctx: &OreContext, f: &FuncElem) -> FuncElem {
    let a = FuncElem::new(ctx.derivation().diagonal()).unwrap();
    &a * &(f - &ref_automorphism(ctx.perm(), f, 1))
}

/// Left form of `x^k g`: `k` applications of `x h = σ̃(h) x + Δ(h)`.
pub fn ref_rewrite(ctx: &OreContext, k: usize, g: &FuncElem) -> Vec<FuncElem> {
    let n = ctx.n();
    let mut terms = vec![g.clone()];
    for _ in 0..k {
        let mut next = vec![FuncElem::zero(n); terms.len() + 1];
        for (m, h) in terms.iter().enumerate() {
            next[m + 1] = &next[m + 1] + &ref_automorphism(ctx.perm(), h, 1);
            next[m] = &next[m] + &ref_derivation(ctx, h);
        }
        terms = next;
    }
    terms
}

/// Product by rewriting, coefficient lists in and out (trailing zeros stripped).
pub fn ref_multiply(ctx: &OreContext, p: &[FuncElem], q: &[FuncElem]) -> Vec<FuncElem> {
    let n = ctx.n();
    if p.is_empty() || q.is_empty() {
        return Vec::new();
    }
    let mut out = vec![FuncElem::zero(n); p.len() + q.len() - 1];
    for (k, f) in p.iter().enumerate() {
        for (l, g) in q.iter().enumerate() {
            for (m, h) in ref_rewrite(ctx, k, g).iter().enumerate() {
                out[m + l] = &out[m + l] + &(f * h);
            }
        }
    }
    while out.last().is_some_and(FuncElem::is_zero) {
        out.pop();
    }
    out
}

pub fn ref_mul_poly(p: &OrePoly, q: &OrePoly) -> OrePoly {
    OrePoly::new(p.context(), ref_multiply(p.context(), p.coeffs(), q.coeffs())).unwrap()
}

/// `P` commutes with every `e_i`, by the reference product.
pub fn ref_commutes_with_a(p: &OrePoly) -> bool {
    let ctx = p.context();
    (0..ctx.n()).all(|i| {
        let e = OrePoly::constant(ctx, FuncElem::basis(ctx.n(), i));
        ref_mul_poly(p, &e) == ref_mul_poly(&e, p)
    })
}

/// `P` commutes with every `e_i` and with `x`, which generate the ring.
pub fn ref_is_central(p: &OrePoly) -> bool {
    let x = OrePoly::x(p.context());
    ref_commutes_with_a(p) && ref_mul_poly(p, &x) == ref_mul_poly(&x, p)
}

/// `y = x - a`, with `a` the diagonal. Conjugation by this substitution turns
/// the extension into the skew polynomial ring: `y f = σ̃(f) y`.
pub fn ref_y(ctx: &Arc<OreContext>) -> OrePoly {
    let a = FuncElem::new(ctx.derivation().diagonal()).unwrap();
    OrePoly::new(ctx, vec![-&a, FuncElem::one(ctx.n())]).unwrap()
}

pub fn ref_y_power(ctx: &Arc<OreContext>, k: usize) -> OrePoly {
    let y = ref_y(ctx);
    let mut acc = OrePoly::one(ctx);
    for _ in 0..k {
        acc = ref_mul_poly(&acc, &y);
    }
    acc
}

/// Spanning set of the centralizer up to `max_degree` from the substitution
/// `y = x - a`: `{ e_i y^k : i ∈ Per^k }`. Each `e_i y^k` has degree exactly
/// `k`, so the window is respected.
pub fn ref_centralizer_spanning_set(ctx: &Arc<OreContext>, max_degree: usize) -> Vec<OrePoly> {
    let n = ctx.n();
    let mut out = Vec::new();
    for k in 0..=max_degree {
        let yk = ref_y_power(ctx, k);
        for i in 0..n {
            if ctx.perm().pow(k as i64).apply(i) == i {
                let e = OrePoly::constant(ctx, FuncElem::basis(n, i));
                out.push(ref_mul_poly(&e, &yk));
            }
        }
    }
    out
}

/// Membership of `x^k` conditions: `f_k = 0` wherever `σ^k` moves a point.
pub fn ref_vanishes_on_sep(perm: &Permutation, f: &FuncElem, k: i64) -> bool {
    let pk = perm.pow(k);
    (0..perm.n()).all(|i| pk.apply(i) == i || f.get(i).is_zero())
}

/// A random function built to satisfy (or not) the centrality conditions at
/// power `k`, useful for sampling both members and non-members.
pub fn masked_func(rng: &mut impl Rng, perm: &Permutation, k: i64, keep_sep: bool) -> FuncElem {
    let f = random_func(rng, perm.n());
    let pk = perm.pow(k);
    FuncElem::new(
        (0..perm.n())
            .map(|i| if keep_sep || pk.apply(i) == i { f.get(i).clone() } else { Rational::zero() })
            .collect(),
    )
    .unwrap()
}

/// A function constant on each cycle of `perm`.
pub fn cycle_constant_func(rng: &mut impl Rng, perm: &Permutation) -> FuncElem {
    let mut values = vec![Rational::zero(); perm.n()];
    for cycle in perm.cycle_decomposition().cycles {
        let v = if rng.gen_bool(0.3) { Rational::zero() } else { random_rational(rng) };
        for i in cycle {
            values[i] = v.clone();
        }
    }
    FuncElem::new(values).unwrap()
}

pub fn one() -> Rational {
    Rational::one()
}

// ----------------------------------------------------------------- CLI golden

pub struct GoldenCase {
    pub name: String,
    pub args: Vec<String>,
    pub exit: i32,
}

pub fn fixture_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests").join("fixtures").join("cli")
}

/// Reads `cases.txt`: `name exit arg...` per line, `#` comments.
pub fn golden_cases() -> Vec<GoldenCase> {
    let text = std::fs::read_to_string(fixture_dir().join("cases.txt")).expect("cases.txt");
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|l| {
            let mut parts = l.split_whitespace();
            let name = parts.next().unwrap().to_string();
            let exit = parts.next().unwrap().parse().unwrap();
            GoldenCase { name, exit, args: parts.map(str::to_string).collect() }
        })
        .collect()
}

/// Runs the binary on the case input through standard input.
pub fn run_case(case: &GoldenCase) -> (i32, String) {
    let input = std::fs::read(fixture_dir().join(format!("{}.json", case.name))).unwrap_or_default();
    let mut child = Command::new(env!("CARGO_BIN_EXE_ore"))
        .args(&case.args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("spawn ore");
    child.stdin.take().unwrap().write_all(&input).unwrap();
    let out = child.wait_with_output().unwrap();
    (out.status.code().unwrap_or(-1), String::from_utf8(out.stdout).unwrap())
}

pub fn expected_output(case: &GoldenCase) -> String {
    std::fs::read_to_string(fixture_dir().join(format!("{}.out", case.name))).unwrap_or_default()
}

/// Coefficient map `{k: f}` helper for Laurent elements.
pub fn laurent_map(pairs: Vec<(i64, FuncElem)>) -> BTreeMap<i64, FuncElem> {
    pairs.into_iter().collect()
}

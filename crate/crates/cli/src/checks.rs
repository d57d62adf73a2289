//! The registry of verification claims.
//!
//! Each claim recomputes one statement about the invariant rings from scratch
//! and compares it with the expected value by exact equality.

use std::collections::BTreeMap;

use anyhow::{anyhow, ensure, Result};
use kempe_core::exactfield::{kernel_basis, rank, EchelonBasis, FieldSpec, Scalar, SparseMatrix};
use kempe_core::graphalg::{
    enumerate_spanning, plucker_step, straighten, straighten_by_solve, GraphMonomial, GraphPolynomial, Permutation,
    ValenceVector,
};
use kempe_core::invring::{
    bracket_expand, graded_dimension_with, kempe_check, linear_relation_space, relation_kernel_with, KernelOptions,
    SparseVec, SymPower, SymbolicRelation, SPANNING_CAP,
};
use kempe_core::relcat::{
    del_pezzo_quadrics, extend_relation, generation_check_with, orbit_span, partial_vectors,
    partial_vectors_in_basis, plucker_relation, primitive_part, reduce_vector, segre_binomial_cubic,
    simple_quadric, skew_cubic_vector,
};
use kempe_core::symrep::{character_table, hook_dimension, module_character, sym_power_character, Partition};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::config::{Caps, ModeOverride, Suite};

/// Prime used for the n = 10 pre-pass.
pub const PREPASS_PRIME: u64 = 1_000_003;

/// Number of random instances in each property check.
pub const PROPERTY_CASES: usize = 200;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Outcome {
    pub computed: Value,
    pub expected: Value,
    pub pass: bool,
}

impl Outcome {
    /// Passes iff `computed == expected`.
    pub fn exact(computed: Value, expected: Value) -> Outcome {
        let pass = computed == expected;
        Outcome {
            computed,
            expected,
            pass,
        }
    }
}

/// Which field a claim is evaluated over.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldPolicy {
    /// Runs over the configured field (rationals unless overridden).
    Any,
    /// Stated over one field only.
    Fixed(&'static str),
    /// Uses several fields internally; `label` names them.
    Mixed(&'static str),
}

/// Inputs shared by every claim.
#[derive(Clone, Debug)]
pub struct Context {
    pub field: FieldSpec,
    pub seed: u64,
    pub mode: Option<ModeOverride>,
    pub caps: Caps,
}

impl Context {
    fn kernel_options(&self) -> KernelOptions {
        KernelOptions {
            cell_cap: self.caps.cell_cap,
            ..KernelOptions::default()
        }
    }

    fn dimension(&self, n: usize, v: &ValenceVector) -> Result<usize> {
        Ok(graded_dimension_with(
            n,
            v,
            self.field,
            self.mode.map(Into::into),
            self.seed,
            SPANNING_CAP,
        )?)
    }

    fn kernel_dim(&self, n: usize, w: &ValenceVector, d: usize, field: FieldSpec) -> Result<usize> {
        Ok(relation_kernel_with(n, w, d, field, &self.kernel_options())?.dim())
    }
}

pub type ClaimFn = fn(&Context) -> Result<Outcome>;

pub struct Claim {
    pub id: &'static str,
    /// Short statement of what is being checked.
    pub anchor: &'static str,
    /// Acceptance criterion number this claim belongs to.
    pub criterion: u8,
    pub suite: Suite,
    pub field: FieldPolicy,
    /// Optional checks beyond the default budget; skipped unless requested.
    pub stretch: bool,
    pub run: ClaimFn,
}

const Q: FieldSpec = FieldSpec::Rationals;

fn unit(n: usize) -> ValenceVector {
    ValenceVector::uniform(n, 1)
}

fn span_of(dim: usize, field: FieldSpec, vectors: &[SparseVec]) -> Result<EchelonBasis> {
    let mut b = EchelonBasis::new(dim, field);
    for v in vectors {
        b.insert(v)?;
    }
    Ok(b)
}

fn spans_equal(a: &EchelonBasis, b: &EchelonBasis) -> Result<bool> {
    if a.rank() != b.rank() {
        return Ok(false);
    }
    for v in b.basis() {
        if !a.contains(&v)? {
            return Ok(false);
        }
    }
    Ok(true)
}

fn proportional(a: &SparseVec, b: &SparseVec) -> Result<bool> {
    if a.len() != b.len() || a.is_empty() {
        return Ok(false);
    }
    let Some(inv) = b[0].1.inv() else {
        return Ok(false);
    };
    let ratio = &a[0].1 * &inv;
    Ok(a.iter().zip(b).all(|((i, x), (j, y))| i == j && *x == &ratio * y))
}

fn standard_matching(n: usize) -> GraphMonomial {
    let pairs: Vec<(usize, usize)> = (0..n / 2).map(|i| (2 * i + 1, 2 * i + 2)).collect();
    GraphMonomial::normalize(n, &pairs).expect("valid matching")
}

fn partition_labels(ps: impl IntoIterator<Item = Partition>) -> Vec<String> {
    let mut v: Vec<Partition> = ps.into_iter().collect();
    v.sort();
    v.iter().map(|p| p.to_string()).collect()
}

fn dims_claim(n: usize, k: usize, expected: usize) -> impl Fn(&Context) -> Result<Outcome> {
    move |ctx| {
        let d = ctx.dimension(n, &ValenceVector::uniform(n, k))?;
        Ok(Outcome::exact(json!(d), json!(expected)))
    }
}

fn n4_dim1(ctx: &Context) -> Result<Outcome> {
    dims_claim(4, 1, 2)(ctx)
}
fn n6_dim1(ctx: &Context) -> Result<Outcome> {
    dims_claim(6, 1, 5)(ctx)
}
fn n8_dim1(ctx: &Context) -> Result<Outcome> {
    dims_claim(8, 1, 14)(ctx)
}
fn n10_dim1(ctx: &Context) -> Result<Outcome> {
    dims_claim(10, 1, 42)(ctx)
}
fn n5_dim1(ctx: &Context) -> Result<Outcome> {
    dims_claim(5, 1, 0)(ctx)
}
fn n5_dim2(ctx: &Context) -> Result<Outcome> {
    dims_claim(5, 2, 6)(ctx)
}

fn n4_cross_ratio(_: &Context) -> Result<Outcome> {
    let rels = linear_relation_space(4, &unit(4), Q)?;
    // normalize so that the coefficient of the first matching is +1
    let coefficients: Vec<Vec<String>> = rels
        .iter()
        .map(|r| {
            let first = r.terms().values().next().cloned().expect("nonzero relation");
            let inv = first.inv().expect("nonzero");
            r.terms().values().map(|c| (c * &inv).to_string()).collect()
        })
        .collect();
    let straightened = straighten(&GraphPolynomial::from_terms(
        4,
        Q,
        plucker_relation()
            .terms
            .iter()
            .map(|(f, c)| (&f[0], c.clone())),
    )?)?;
    Ok(Outcome::exact(
        json!({"relations": rels.len(), "coefficients": coefficients, "plucker_straightens_to_zero": straightened.is_zero()}),
        json!({"relations": 1, "coefficients": [["1", "-1", "1"]], "plucker_straightens_to_zero": true}),
    ))
}

fn n5_kernel2(ctx: &Context) -> Result<Outcome> {
    let d = ctx.kernel_dim(5, &ValenceVector::uniform(5, 2), 2, ctx.field)?;
    Ok(Outcome::exact(json!(d), json!(5)))
}

fn n5_del_pezzo(ctx: &Context) -> Result<Outcome> {
    let k = relation_kernel_with(5, &ValenceVector::uniform(5, 2), 2, Q, &ctx.kernel_options())?;
    let dim = k.sym().dim();
    let rotations: Vec<SparseVec> = del_pezzo_quadrics()
        .iter()
        .map(|r| k.sym().vector_of(r))
        .collect::<kempe_core::Result<_>>()?;
    let span = span_of(dim, Q, &rotations)?;
    let equal = spans_equal(&span, &span_of(dim, Q, &k.vectors)?)?;
    Ok(Outcome::exact(
        json!({"rotations": rotations.len(), "rank": span.rank(), "equals_kernel": equal}),
        json!({"rotations": 5, "rank": 5, "equals_kernel": true}),
    ))
}

fn n6_kernel2(ctx: &Context) -> Result<Outcome> {
    Ok(Outcome::exact(json!(ctx.kernel_dim(6, &unit(6), 2, ctx.field)?), json!(0)))
}

fn n6_kernel3(ctx: &Context) -> Result<Outcome> {
    Ok(Outcome::exact(json!(ctx.kernel_dim(6, &unit(6), 3, ctx.field)?), json!(1)))
}

fn n6_segre(ctx: &Context) -> Result<Outcome> {
    let k = relation_kernel_with(6, &unit(6), 3, Q, &ctx.kernel_options())?;
    let segre = k.sym().vector_of(&segre_binomial_cubic())?;
    let spans = k.dim() == 1 && proportional(&segre, &k.vectors[0])?;
    Ok(Outcome::exact(
        json!({"nonzero": !segre.is_empty(), "expands_to_zero": segre_binomial_cubic().expands_to_zero()?, "spans_kernel": spans}),
        json!({"nonzero": true, "expands_to_zero": true, "spans_kernel": true}),
    ))
}

fn n6_skew(_: &Context) -> Result<Outcome> {
    let sym3 = SymPower::new(6, &unit(6), 3);
    let skew = skew_cubic_vector(&sym3, &standard_matching(6))?;
    let segre = sym3.vector_of(&segre_binomial_cubic())?;
    Ok(Outcome::exact(json!({"proportional": proportional(&skew, &segre)?}), json!({"proportional": true})))
}

fn n8_kernel2(ctx: &Context) -> Result<Outcome> {
    Ok(Outcome::exact(json!(ctx.kernel_dim(8, &unit(8), 2, ctx.field)?), json!(14)))
}

fn n8_partials(ctx: &Context) -> Result<Outcome> {
    let k = relation_kernel_with(8, &unit(8), 2, Q, &ctx.kernel_options())?;
    let dim = k.sym().dim();
    let sym3 = SymPower::new(8, &unit(8), 3);
    let cubic = skew_cubic_vector(&sym3, &standard_matching(8))?;
    let partials = span_of(dim, Q, &partial_vectors(&sym3, &cubic))?;
    let equal = spans_equal(&partials, &span_of(dim, Q, &k.vectors)?)?;
    let sigma = Permutation::from_cycles(8, &[vec![1, 3, 6], vec![2, 8]])?;
    let other = span_of(dim, Q, &partial_vectors_in_basis(&sym3, &cubic, &sigma)?)?;
    let basis_free = spans_equal(&partials, &other)?;
    Ok(Outcome::exact(
        json!({"rank": partials.rank(), "equals_kernel": equal, "basis_independent": basis_free}),
        json!({"rank": 14, "equals_kernel": true, "basis_independent": true}),
    ))
}

fn n8_orbit(ctx: &Context) -> Result<Outcome> {
    let k = relation_kernel_with(8, &unit(8), 2, Q, &ctx.kernel_options())?;
    let quadric = k.sym().vector_of(&simple_quadric())?;
    let orbit = orbit_span(k.sym(), &quadric, Q)?;
    let equal = spans_equal(&orbit.basis, &span_of(k.sym().dim(), Q, &k.vectors)?)?;
    Ok(Outcome::exact(
        json!({"rank": orbit.dim(), "equals_kernel": equal}),
        json!({"rank": 14, "equals_kernel": true}),
    ))
}

fn n8_skew_negates(_: &Context) -> Result<Outcome> {
    let sym3 = SymPower::new(8, &unit(8), 3);
    let cubic = skew_cubic_vector(&sym3, &standard_matching(8))?;
    let mut negates = !cubic.is_empty();
    for (a, b) in [(1, 2), (4, 7)] {
        let moved = sym3.act(&sym3.action_matrix(&Permutation::transposition(8, a, b))?, &cubic)?;
        let negated: SparseVec = cubic.iter().map(|(i, c)| (*i, -c)).collect();
        negates &= moved == negated;
    }
    Ok(Outcome::exact(
        json!({"nonzero": !cubic.is_empty(), "negates_under_transpositions": negates}),
        json!({"nonzero": true, "negates_under_transpositions": true}),
    ))
}

fn n8_generation_q(ctx: &Context) -> Result<Outcome> {
    let g = generation_check_with(8, 3, Q, &ctx.kernel_options())?;
    Ok(Outcome::exact(
        json!({"kernel2": g.kernel2_dim, "kernel3": g.kernel_dim, "generated": g.generated_dim, "equal": g.equal()}),
        json!({"kernel2": 14, "kernel3": 196, "generated": 196, "equal": true}),
    ))
}

fn char3_generation(ctx: &Context) -> Result<Outcome> {
    let f3 = FieldSpec::prime(3)?;
    let mut g = generation_check_with(8, 3, f3, &ctx.kernel_options())?;
    let sym3 = g.kernel.sym().clone();
    let cubic = reduce_vector(&primitive_part(&skew_cubic_vector(&sym3, &standard_matching(8))?), f3)?;
    let is_relation = !cubic.is_empty() && g.kernel.map.apply(&cubic, f3).is_empty();
    let outside = !g.generated.contains(&cubic)?;
    g.generated.insert(&cubic)?;
    let filled = g.generated.rank() == g.kernel_dim;
    let computed = json!({
        "strict": g.defect() >= 1,
        "defect": g.defect(),
        "skew_cubic_is_relation": is_relation,
        "skew_cubic_outside_generated": outside,
        "defect_filled_by_skew_cubic": filled,
    });
    let expected = json!({
        "strict": true,
        "defect": 1,
        "skew_cubic_is_relation": true,
        "skew_cubic_outside_generated": true,
        "defect_filled_by_skew_cubic": true,
    });
    Ok(Outcome::exact(computed, expected))
}

fn n10_kernel2(ctx: &Context) -> Result<Outcome> {
    let fp = FieldSpec::prime(PREPASS_PRIME)?;
    let prepass = ctx.kernel_dim(10, &unit(10), 2, fp)?;
    let exact = relation_kernel_with(10, &unit(10), 2, Q, &ctx.kernel_options())?;
    Ok(Outcome::exact(
        json!({"prime_field": prepass, "rationals": exact.dim(), "expansion_verified": exact.expansion_verified}),
        json!({"prime_field": 300, "rationals": 300, "expansion_verified": true}),
    ))
}

fn n10_hook(_: &Context) -> Result<Outcome> {
    let table = character_table(10)?;
    let r1 = module_character(10, &unit(10))?;
    let diff = sym_power_character(&r1, 2)?.sub(&module_character(10, &ValenceVector::uniform(10, 2))?)?;
    let m = table.decompose(&diff)?;
    Ok(Outcome::exact(
        json!({
            "hook_dimension": hook_dimension(&Partition::new(vec![4, 2, 2, 2])?).to_string(),
            "quadric_summands": partition_labels(m.partitions()),
            "quadric_dimension": m.dimension().to_string(),
        }),
        json!({"hook_dimension": "300", "quadric_summands": ["(4,2,2,2)"], "quadric_dimension": "300"}),
    ))
}

/// Orbit span over the pre-pass prime, then exact rational witnesses.
///
/// The witnesses are rational relations whose reductions are independent mod
/// p, so they are independent over Q; with the rational kernel of the same
/// dimension they span it.
fn n10_orbit(ctx: &Context) -> Result<Outcome> {
    let fp = FieldSpec::prime(PREPASS_PRIME)?;
    let kp = relation_kernel_with(10, &unit(10), 2, fp, &ctx.kernel_options())?;
    let extra = GraphMonomial::normalize(10, &[(9, 10)])?;
    let quadric = extend_relation(&simple_quadric(), &extra)?;
    let v = kp.sym().vector_of(&quadric)?;
    let orbit = orbit_span(kp.sym(), &v, fp)?;
    let equal_fp = spans_equal(&orbit.basis, &span_of(kp.sym().dim(), fp, &kp.vectors)?)?;
    let kq = relation_kernel_with(10, &unit(10), 2, Q, &ctx.kernel_options())?;
    let witnesses_are_relations = orbit
        .witnesses
        .iter()
        .all(|(_, w)| kq.map.apply(w, Q).is_empty());
    let equal_q = witnesses_are_relations && orbit.witnesses.len() == kq.dim();
    Ok(Outcome::exact(
        json!({"rank": orbit.dim(), "equals_kernel_mod_p": equal_fp, "rational_witnesses": orbit.witnesses.len(), "equals_kernel_over_q": equal_q}),
        json!({"rank": 300, "equals_kernel_mod_p": true, "rational_witnesses": 300, "equals_kernel_over_q": true}),
    ))
}

fn r1_irreducible(n: usize) -> Result<Outcome> {
    let table = character_table(n)?;
    let m = table.decompose(&module_character(n, &unit(n))?)?;
    Ok(Outcome::exact(
        json!(partition_labels(m.partitions())),
        json!([Partition::new(vec![n / 2, n / 2])?.to_string()]),
    ))
}

fn n4_r1(_: &Context) -> Result<Outcome> {
    r1_irreducible(4)
}
fn n6_r1(_: &Context) -> Result<Outcome> {
    r1_irreducible(6)
}
fn n8_r1(_: &Context) -> Result<Outcome> {
    r1_irreducible(8)
}
fn n10_r1(_: &Context) -> Result<Outcome> {
    r1_irreducible(10)
}

fn key_fact(n: usize) -> Result<Outcome> {
    let table = character_table(n)?;
    let r1 = module_character(n, &unit(n))?;
    let sym2 = sym_power_character(&r1, 2)?;
    let r2 = module_character(n, &ValenceVector::uniform(n, 2))?;
    let m_sym2 = table.decompose(&sym2)?;
    let m_r2 = table.decompose(&r2)?;
    let m_diff = table.decompose(&sym2.sub(&r2)?)?;
    let even = |max_parts: usize, exact: bool| {
        partition_labels(
            Partition::all(n)
                .into_iter()
                .filter(|p| p.all_even() && if exact { p.len() == max_parts } else { p.len() <= max_parts }),
        )
    };
    Ok(Outcome::exact(
        json!({
            "sym2": partition_labels(m_sym2.partitions()),
            "sym2_multiplicity_free": m_sym2.is_multiplicity_free(),
            "r2": partition_labels(m_r2.partitions()),
            "r2_multiplicity_free": m_r2.is_multiplicity_free(),
            "difference": partition_labels(m_diff.partitions()),
        }),
        json!({
            "sym2": even(4, false),
            "sym2_multiplicity_free": true,
            "r2": even(3, false),
            "r2_multiplicity_free": true,
            "difference": even(4, true),
        }),
    ))
}

fn n6_key_fact(_: &Context) -> Result<Outcome> {
    key_fact(6)
}
fn n8_key_fact(_: &Context) -> Result<Outcome> {
    key_fact(8)
}
fn n10_key_fact(_: &Context) -> Result<Outcome> {
    key_fact(10)
}

fn sign_multiplicity(n: usize, expected: u64) -> Result<Outcome> {
    let table = character_table(n)?;
    let cubes = sym_power_character(&module_character(n, &unit(n))?, 3)?;
    Ok(Outcome::exact(json!(table.sign_multiplicity(&cubes)?), json!(expected)))
}

fn n8_sign_multiplicity(_: &Context) -> Result<Outcome> {
    sign_multiplicity(8, 1)
}
fn n10_sign_multiplicity(_: &Context) -> Result<Outcome> {
    sign_multiplicity(10, 0)
}

fn n10_skew_vanishes(_: &Context) -> Result<Outcome> {
    let sym3 = SymPower::new(10, &unit(10), 3);
    let cubic = skew_cubic_vector(&sym3, &standard_matching(10))?;
    Ok(Outcome::exact(json!({"nonzero_coordinates": cubic.len()}), json!({"nonzero_coordinates": 0})))
}

/// All weight vectors on `n` points with entries in `1..=3` and even total.
fn small_weights(n: usize) -> Vec<ValenceVector> {
    let mut out = Vec::new();
    let mut w = vec![1usize; n];
    loop {
        if w.iter().sum::<usize>() % 2 == 0 {
            out.push(ValenceVector(w.clone()));
        }
        let Some(i) = w.iter().rposition(|&x| x < 3) else {
            return out;
        };
        w[i] += 1;
        for x in &mut w[i + 1..] {
            *x = 1;
        }
    }
}

fn kempe_cases(cases: &[(usize, ValenceVector)], seed: u64) -> Result<Outcome> {
    let mut failures = Vec::new();
    let mut checked = 0usize;
    for (n, w) in cases {
        for k in 2..=3 {
            let v = kempe_check(*n, w, k, seed)?;
            checked += 1;
            if !v.holds {
                failures.push(format!("{w} k={k}"));
            }
        }
    }
    Ok(Outcome::exact(
        json!({"cases": checked, "failures": failures}),
        json!({"cases": checked, "failures": Vec::<String>::new()}),
    ))
}

fn kempe_small(ctx: &Context) -> Result<Outcome> {
    let cases: Vec<(usize, ValenceVector)> = (2..=6)
        .flat_map(|n| small_weights(n).into_iter().map(move |w| (n, w)))
        .collect();
    kempe_cases(&cases, ctx.seed)
}

fn kempe_n8(ctx: &Context) -> Result<Outcome> {
    kempe_cases(&[(8, unit(8))], ctx.seed)
}

/// Sum of the bracket expansions of the terms of `p`.
fn polynomial_expansion(p: &GraphPolynomial) -> Result<BTreeMap<u128, Scalar>> {
    let mut acc: BTreeMap<u128, Scalar> = BTreeMap::new();
    for (g, c) in p.terms() {
        for (k, e) in bracket_expand(g)?.terms {
            let term = c * &p.field().from_i128(e);
            let sum = match acc.remove(&k) {
                Some(old) => &old + &term,
                None => term,
            };
            if !sum.is_zero() {
                acc.insert(k, sum);
            }
        }
    }
    Ok(acc)
}

fn random_graph(rng: &mut ChaCha8Rng, n: usize, edges: usize) -> Result<GraphMonomial> {
    let raw: Vec<(usize, usize)> = (0..edges)
        .map(|_| {
            let a = rng.gen_range(1..=n);
            let mut b = rng.gen_range(1..=n - 1);
            if b >= a {
                b += 1;
            }
            (a, b)
        })
        .collect();
    Ok(GraphMonomial::normalize(n, &raw)?)
}

/// A homogeneous polynomial on at most 8 points with every valence at most 3.
pub fn random_polynomial(rng: &mut ChaCha8Rng) -> Result<GraphPolynomial> {
    loop {
        let n = rng.gen_range(2..=8);
        let edges = rng.gen_range(1..=6);
        let base = random_graph(rng, n, edges)?;
        let v = base.valence();
        if v.0.iter().any(|&d| d > 3) {
            continue;
        }
        let pool = enumerate_spanning(n, &v, 100_000).graphs;
        let mut p = GraphPolynomial::zero(n, Q);
        p.add_term(&base, &Q.from_i64(rng.gen_range(1..=3)))?;
        for _ in 0..rng.gen_range(0..=3) {
            let g = pool.choose(rng).ok_or_else(|| anyhow!("empty spanning set"))?;
            p.add_term(g, &Q.from_i64(rng.gen_range(-3..=3)))?;
        }
        return Ok(p);
    }
}

fn props_straighten(ctx: &Context) -> Result<Outcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(ctx.seed);
    let mut mismatches = Vec::new();
    for _ in 0..PROPERTY_CASES {
        let p = random_polynomial(&mut rng)?;
        let fast = straighten(&p)?;
        let solved = straighten_by_solve(&p)?;
        if fast != solved || !fast.terms().keys().all(|g| g.is_noncrossing()) {
            mismatches.push(p.to_string());
        }
    }
    Ok(Outcome::exact(
        json!({"instances": PROPERTY_CASES, "mismatches": mismatches}),
        json!({"instances": PROPERTY_CASES, "mismatches": Vec::<String>::new()}),
    ))
}

fn props_plucker(ctx: &Context) -> Result<Outcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(ctx.seed ^ 0x9e37_79b9);
    let mut failures = Vec::new();
    for _ in 0..PROPERTY_CASES {
        let n = rng.gen_range(4..=8);
        let mut quad: Vec<usize> = (1..=n).collect::<Vec<_>>().choose_multiple(&mut rng, 4).copied().collect();
        quad.sort_unstable();
        let mut edges = vec![(quad[0], quad[2]), (quad[3], quad[1])];
        let count = rng.gen_range(1..=3);
        let extra = random_graph(&mut rng, n, count)?;
        edges.extend(extra.edges().iter().map(|e| (e.tail, e.head)));
        let g = GraphMonomial::normalize(n, &edges)?;
        let crossings = g.crossings();
        let pair = *crossings.choose(&mut rng).ok_or_else(|| anyhow!("no crossing in {g}"))?;
        let rewritten = plucker_step(&g, pair, Q)?;
        if polynomial_expansion(&rewritten)? != polynomial_expansion(&GraphPolynomial::from_monomial(&g, Q))? {
            failures.push(format!("{g} at {pair:?}"));
        }
    }
    Ok(Outcome::exact(
        json!({"instances": PROPERTY_CASES, "failures": failures}),
        json!({"instances": PROPERTY_CASES, "failures": Vec::<String>::new()}),
    ))
}

/// Every relation produced by the kernel, catalog, partial and orbit code.
fn emitted_relations(ctx: &Context) -> Result<Vec<(String, SymbolicRelation)>> {
    let opts = ctx.kernel_options();
    let mut out: Vec<(String, SymbolicRelation)> = Vec::new();
    let kernels = [
        (5, ValenceVector::uniform(5, 2), 2),
        (6, unit(6), 3),
        (8, unit(8), 2),
        (6, ValenceVector(vec![2, 2, 1, 1, 1, 1]), 2),
    ];
    for (n, w, d) in kernels {
        let k = relation_kernel_with(n, &w, d, Q, &opts)?;
        out.extend(k.relations().into_iter().map(|r| (format!("kernel {w} d={d}"), r)));
    }
    out.push(("plucker".into(), plucker_relation()));
    out.push(("simple quadric".into(), simple_quadric()));
    out.push(("segre cubic".into(), segre_binomial_cubic()));
    out.extend(del_pezzo_quadrics().into_iter().map(|r| ("del pezzo".to_string(), r)));
    let extra = GraphMonomial::normalize(10, &[(9, 10)])?;
    out.push(("extended quadric".into(), extend_relation(&simple_quadric(), &extra)?));
    let sym3 = SymPower::new(8, &unit(8), 3);
    let sym2 = sym3.with_degree(2);
    let cubic = skew_cubic_vector(&sym3, &standard_matching(8))?;
    out.push(("skew cubic".into(), sym3.relation_from_vector(&cubic, Q)));
    out.extend(
        partial_vectors(&sym3, &cubic)
            .iter()
            .filter(|v| !v.is_empty())
            .map(|v| ("skew partial".to_string(), sym2.relation_from_vector(v, Q))),
    );
    let orbit = orbit_span(&sym2, &sym2.vector_of(&simple_quadric())?, Q)?;
    out.extend(
        orbit
            .witnesses
            .iter()
            .map(|(s, w)| (format!("orbit {s}"), sym2.relation_from_vector(w, Q))),
    );
    Ok(out)
}

fn props_relations(ctx: &Context) -> Result<Outcome> {
    let rels = emitted_relations(ctx)?;
    let mut failures = Vec::new();
    for (origin, r) in &rels {
        if !r.expands_to_zero()? {
            failures.push(format!("{origin}: {r}"));
        }
    }
    Ok(Outcome::exact(
        json!({"relations": rels.len(), "failures": failures}),
        json!({"relations": rels.len(), "failures": Vec::<String>::new()}),
    ))
}

fn props_rank_nullity(ctx: &Context) -> Result<Outcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(ctx.seed ^ 0x5eed);
    let fields = [
        Q,
        FieldSpec::prime(2)?,
        FieldSpec::prime(3)?,
        FieldSpec::prime(7)?,
        FieldSpec::prime(PREPASS_PRIME)?,
    ];
    let mut failures = 0usize;
    for case in 0..PROPERTY_CASES {
        let field = fields[case % fields.len()];
        let (r, c) = (rng.gen_range(1..=8), rng.gen_range(1..=8));
        let rows: Vec<Vec<i64>> = (0..r)
            .map(|_| (0..c).map(|_| if rng.gen_bool(0.4) { 0 } else { rng.gen_range(-5..=5) }).collect())
            .collect();
        let m = SparseMatrix::from_int_rows(field, &rows);
        let kernel = kernel_basis(&m);
        let annihilated = kernel
            .iter()
            .map(|v| m.mul_vec(v))
            .collect::<kempe_core::Result<Vec<_>>>()?
            .iter()
            .all(|img| img.iter().all(|x| x.is_zero()));
        if rank(&m) + kernel.len() != m.ncols() || !annihilated {
            failures += 1;
        }
    }
    Ok(Outcome::exact(
        json!({"instances": PROPERTY_CASES, "failures": failures}),
        json!({"instances": PROPERTY_CASES, "failures": 0}),
    ))
}

/// Stretch check: the quadric count at n = 12 against the character computation.
fn n12_kernel2(ctx: &Context) -> Result<Outcome> {
    let fp = FieldSpec::prime(PREPASS_PRIME)?;
    let d = ctx.kernel_dim(12, &unit(12), 2, fp)?;
    let expected: u128 = Partition::all(12)
        .into_iter()
        .filter(|p| p.all_even() && p.len() == 4)
        .map(|p| hook_dimension(&p))
        .sum();
    ensure!(expected > 0, "no four-part even partitions of 12");
    Ok(Outcome::exact(json!(d.to_string()), json!(expected.to_string())))
}

/// All claims, sorted by id.
pub fn registry() -> Vec<Claim> {
    use FieldPolicy::*;
    use Suite::*;
    let c = |id, anchor, criterion, suite, field, run: ClaimFn| Claim {
        id,
        anchor,
        criterion,
        suite,
        field,
        stretch: false,
        run,
    };
    let mut claims = vec![
        c("n4.dim1", "dim R_1 on 4 points is the Catalan number 2", 1, Quick, Any, n4_dim1),
        c("n6.dim1", "dim R_1 on 6 points is 5", 1, Quick, Any, n6_dim1),
        c("n8.dim1", "dim R_1 on 8 points is 14", 1, Quick, Any, n8_dim1),
        c("n10.dim1", "dim R_1 on 10 points is 42", 1, Full, Any, n10_dim1),
        c("n4.cross_ratio", "the three matchings on 4 points satisfy one relation with coefficients +-1", 2, Quick, Fixed("q"), n4_cross_ratio),
        c("n5.dim1", "no degree-one invariants of 5 points", 3, Quick, Any, n5_dim1),
        c("n5.dim2", "the degree-two piece on 5 points has dimension 6", 3, Quick, Any, n5_dim2),
        c("n5.kernel2.dim", "5 quadrics vanish on the image of 5 points in P^5", 3, Quick, Any, n5_kernel2),
        c("n5.del_pezzo.span", "the 5 rotations of one quadric span the quadrics on 5 points", 3, Quick, Fixed("q"), n5_del_pezzo),
        c("n6.kernel2.dim", "no quadric relations on 6 points", 4, Quick, Any, n6_kernel2),
        c("n6.kernel3.dim", "one cubic relation on 6 points", 4, Quick, Any, n6_kernel3),
        c("n6.segre.spans", "the binomial Segre cubic is a nonzero relation spanning the cubics", 4, Quick, Fixed("q"), n6_segre),
        c("n6.skew.proportional", "the alternating cubic on 6 points is proportional to the Segre cubic", 4, Quick, Fixed("q"), n6_skew),
        c("n8.kernel2.dim", "14 quadric relations on 8 points", 5, Quick, Any, n8_kernel2),
        c("n8.partials.span", "the partials of the skew cubic span the quadrics on 8 points", 5, Quick, Fixed("q"), n8_partials),
        c("n8.orbit.span", "the orbit of the simple quadric spans the quadrics on 8 points", 5, Quick, Fixed("q"), n8_orbit),
        c("n8.skew.negates", "the skew cubic on 8 points changes sign under transpositions", 5, Quick, Fixed("q"), n8_skew_negates),
        c("n8.generation.q", "quadrics generate the cubic relations on 8 points over Q", 6, Quick, Fixed("q"), n8_generation_q),
        c("char3-generation", "over F_3 the skew cubic is needed in addition to the quadrics", 6, Full, Fixed("fp:3"), char3_generation),
        c("n10.kernel2.dim", "300 quadric relations on 10 points, by a prime pre-pass and exact confirmation", 7, Full, Mixed("fp:1000003+q"), n10_kernel2),
        c("n10.kernel2.hook", "the quadric count on 10 points is the dimension of (4,2,2,2)", 7, Full, Fixed("q"), n10_hook),
        c("n10.orbit.span", "the orbit of the extended simple quadric spans the quadrics on 10 points", 7, Full, Mixed("fp:1000003+q"), n10_orbit),
        c("n4.rep.r1", "R_1 on 4 points is the irreducible (2,2)", 8, Quick, Fixed("q"), n4_r1),
        c("n6.rep.r1", "R_1 on 6 points is the irreducible (3,3)", 8, Quick, Fixed("q"), n6_r1),
        c("n8.rep.r1", "R_1 on 8 points is the irreducible (4,4)", 8, Quick, Fixed("q"), n8_r1),
        c("n10.rep.r1", "R_1 on 10 points is the irreducible (5,5)", 8, Full, Fixed("q"), n10_r1),
        c("n6.rep.key_fact", "Sym^2 R_1 and R_2 on 6 points are sums of even partitions with at most 4 and 3 parts", 8, Quick, Fixed("q"), n6_key_fact),
        c("n8.rep.key_fact", "Sym^2 R_1 and R_2 on 8 points are sums of even partitions with at most 4 and 3 parts", 8, Quick, Fixed("q"), n8_key_fact),
        c("n10.rep.key_fact", "Sym^2 R_1 and R_2 on 10 points are sums of even partitions with at most 4 and 3 parts", 8, Full, Fixed("q"), n10_key_fact),
        c("n8.skew.sign_multiplicity", "Sym^3 R_1 on 8 points contains the sign representation once", 9, Quick, Fixed("q"), n8_sign_multiplicity),
        c("n10.skew.sign_multiplicity", "Sym^3 R_1 on 10 points does not contain the sign representation", 9, Full, Fixed("q"), n10_sign_multiplicity),
        c("n10.skew.vanishes", "the alternating sum of cubes of a matching on 10 points is zero", 9, Full, Fixed("q"), n10_skew_vanishes),
        c("kempe.small_weights", "products of degree-one invariants span degrees 2 and 3 for weights at most 3 on at most 6 points", 10, Quick, Fixed("q"), kempe_small),
        c("kempe.n8", "products of degree-one invariants span degrees 2 and 3 on 8 points", 10, Quick, Fixed("q"), kempe_n8),
        c("props.straighten_oracle", "rewriting agrees with the linear-solve oracle on random polynomials", 11, Quick, Fixed("q"), props_straighten),
        c("props.relations_expand", "every emitted relation has zero bracket expansion", 11, Quick, Fixed("q"), props_relations),
        c("props.plucker", "a Plucker rewrite preserves the bracket expansion", 11, Quick, Fixed("q"), props_plucker),
        c("props.rank_nullity", "rank plus nullity equals the column count", 11, Quick, Mixed("q,fp:2,fp:3,fp:7,fp:1000003"), props_rank_nullity),
    ];
    claims.push(Claim {
        id: "n12.kernel2.dim",
        anchor: "quadric count on 12 points equals the four-part even summands",
        criterion: 0,
        suite: Full,
        field: Mixed("fp:1000003"),
        stretch: true,
        run: n12_kernel2,
    });
    claims.sort_by_key(|c| c.id);
    claims
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn claim_ids_are_unique() {
        let r = registry();
        let mut ids: Vec<&str> = r.iter().map(|c| c.id).collect();
        ids.dedup();
        assert_eq!(ids.len(), r.len());
    }

    #[test]
    fn every_criterion_has_a_claim() {
        let r = registry();
        for k in 1..=11 {
            assert!(r.iter().any(|c| c.criterion == k), "criterion {k}");
        }
    }

    #[test]
    fn weight_enumeration() {
        // 3^3 vectors, 13 with even sum
        assert_eq!(small_weights(3).len(), 13);
        assert!(small_weights(4).iter().all(|w| w.total() % 2 == 0 && w.0.iter().all(|&x| (1..=3).contains(&x))));
    }
}

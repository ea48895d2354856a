//! The Qth-power algorithm: nested `P`-module chains and the closure loop.

mod ideal;
mod local;

use std::collections::HashMap;
use std::sync::Arc;

use rayon::prelude::*;

pub use ideal::Ideal;
pub use local::{normalize_units, strip_unit, LocalShadow};

use crate::error::{Error, Result};
use crate::gb::{Budget, Limits, PModule, RingPresentation};
use crate::gb::{ModuleGb, ModuleRing};
use crate::linalg::{kernel, Eliminator, Insert, SparseVec};
use crate::poly::{Monomial, Poly};

/// Tuning knobs and caps for closure computations.
#[derive(Clone, Debug)]
pub struct ClosureOptions {
    /// Exponent `e` in `Q = q^e`; `None` picks the smallest `e` with
    /// `q^e >= 1 + max total degree`.
    pub e: Option<u32>,
    pub max_rounds: usize,
    pub max_chain: usize,
    /// Uniform candidate box overriding the generator maximum.
    pub box_bound: Option<u32>,
    /// Cap on the number of candidate products.
    pub max_candidates: usize,
    /// Cap on generators produced while forming `M^(Q-1) I`.
    pub max_products: usize,
    /// Check chain nesting and round monotonicity while running.
    pub verify: bool,
    pub limits: Limits,
}

impl Default for ClosureOptions {
    fn default() -> Self {
        ClosureOptions {
            e: None,
            max_rounds: 64,
            max_chain: 256,
            box_bound: None,
            max_candidates: 2_000_000,
            max_products: 4_000_000,
            verify: true,
            limits: Limits::default(),
        }
    }
}

/// One chain `M_0 ⊇ M_1 ⊇ …` per round, plus the ideals of the rounds.
#[derive(Clone, Debug)]
pub struct ChainTrace {
    pub q_exp: u64,
    /// `chains[r]` lists the module generators of each step in round `r`.
    pub chains: Vec<Vec<PModule>>,
    pub rounds: Vec<Ideal>,
    pub stabilized: bool,
}

impl ChainTrace {
    fn new(q_exp: u64) -> Self {
        ChainTrace {
            q_exp,
            chains: Vec::new(),
            rounds: Vec::new(),
            stabilized: false,
        }
    }

    /// Every generator of a later module lies in the earlier one.
    pub fn check_nesting(&self) -> Result<bool> {
        for chain in &self.chains {
            for w in chain.windows(2) {
                for g in &w[1].generators {
                    if !w[0].contains(g)? {
                        return Ok(false);
                    }
                }
            }
        }
        Ok(true)
    }

    /// Each round's ideal contains the previous one.
    pub fn check_monotone(&self) -> Result<bool> {
        for w in self.rounds.windows(2) {
            if !w[1].contains_ideal(&w[0])? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// `Q = q^e` with the default rule for `e`.
pub fn choose_q(ideal: &Ideal, e: Option<u32>) -> Result<u64> {
    let q = ideal.ring().modulus() as u64;
    let e = match e {
        Some(0) => return Err(Error::input("the exponent e must be at least 1")),
        Some(e) => e,
        None => {
            let need = 1 + ideal.max_degree();
            let mut e = 1;
            let mut big_q = q;
            while big_q < need {
                big_q *= q;
                e += 1;
            }
            e
        }
    };
    q.checked_pow(e)
        .filter(|v| *v <= u32::MAX as u64)
        .ok_or_else(|| Error::input(format!("Q = {q}^{e} is too large")))
}

/// A `P`-module held with its Gröbner basis.
pub(crate) struct Held {
    pub module: PModule,
    pub gb: ModuleGb,
}

impl Held {
    fn new(module: PModule, limits: &Limits) -> Result<Held> {
        let gb = module.gb(limits)?;
        let gens = gb.basis.iter().map(|v| gb.mring.vector_to_poly(v)).collect();
        Ok(Held {
            module: PModule {
                presentation: module.presentation,
                generators: gens,
            },
            gb,
        })
    }

    fn mring(&self) -> &Arc<ModuleRing> {
        &self.gb.mring
    }
}

fn multiply_sets(
    pres: &RingPresentation,
    a: &[Poly],
    b: &[Poly],
    opts: &ClosureOptions,
) -> Result<Vec<Poly>> {
    if a.len().saturating_mul(b.len()) > opts.max_products {
        return Err(Error::resource(format!(
            "{} x {} generator products exceed the cap of {}",
            a.len(),
            b.len(),
            opts.max_products
        )));
    }
    let pairs: Vec<(usize, usize)> = (0..a.len())
        .flat_map(|i| (0..b.len()).map(move |j| (i, j)))
        .collect();
    pairs
        .par_iter()
        .map(|&(i, j)| pres.normal_form(&a[i].mul_unchecked(&b[j])))
        .collect()
}

/// `M^(Q-1) I` as a `P`-module, by repeated squaring of `M`.
pub fn power_product(m: &PModule, ideal: &Ideal, q_exp: u64) -> Result<PModule> {
    Ok(power_product_held(m, ideal, q_exp, &ClosureOptions::default())?.module)
}

fn power_product_held(m: &PModule, ideal: &Ideal, q_exp: u64, opts: &ClosureOptions) -> Result<Held> {
    let pres = m.presentation.clone();
    if q_exp < 2 {
        return Err(Error::input("Q must be at least 2"));
    }
    let mut k = q_exp - 1;
    let mut base = Held::new(m.clone(), &opts.limits)?;
    let mut acc: Option<Held> = None;
    loop {
        if k & 1 == 1 {
            acc = Some(match acc {
                None => Held::new(base.module.clone(), &opts.limits)?,
                Some(a) => {
                    let gens = multiply_sets(&pres, &a.module.generators, &base.module.generators, opts)?;
                    Held::new(PModule::new(&pres, gens)?, &opts.limits)?
                }
            });
        }
        k >>= 1;
        if k == 0 {
            break;
        }
        let gens = multiply_sets(&pres, &base.module.generators, &base.module.generators, opts)?;
        base = Held::new(PModule::new(&pres, gens)?, &opts.limits)?;
    }
    let acc = acc.expect("Q - 1 >= 1");
    let gens = multiply_sets(&pres, &acc.module.generators, &ideal.generators, opts)?;
    Held::new(PModule::new(&pres, gens)?, &opts.limits)
}

/// Literal definition: every product of `Q-1` generators (with repetition)
/// times one ideal generator. Exponential; meant as a test oracle.
pub fn power_product_naive(m: &PModule, ideal: &Ideal, q_exp: u64) -> Result<PModule> {
    let pres = &m.presentation;
    let n = m.generators.len();
    let r = (q_exp - 1) as usize;
    let mut out = Vec::new();
    let mut idx = vec![0usize; r];
    loop {
        let mut p = Poly::one(&pres.ring);
        for &i in &idx {
            p = pres.normal_form(&p.mul(&m.generators[i])?)?;
        }
        for g in &ideal.generators {
            out.push(pres.normal_form(&p.mul(g)?)?);
        }
        // next nondecreasing index tuple
        let mut k = r;
        loop {
            if k == 0 {
                return PModule::new(pres, out);
            }
            k -= 1;
            if idx[k] + 1 < n {
                idx[k] += 1;
                for t in k + 1..r {
                    idx[t] = idx[k];
                }
                break;
            }
        }
        if n == 0 {
            return PModule::new(pres, out);
        }
    }
}

fn box_monomials(ring: &crate::poly::FlatRing, beta: &[u32]) -> Vec<Monomial> {
    let xr = ring.independent_range();
    let mut out = Vec::new();
    let mut cur = vec![0u32; beta.len()];
    loop {
        let mut e = vec![0u32; ring.nvars()];
        for (k, i) in xr.clone().enumerate() {
            e[i] = cur[k];
        }
        out.push(Monomial::from_exponents(e));
        let mut k = 0;
        loop {
            if k == beta.len() {
                return out;
            }
            cur[k] += 1;
            if cur[k] <= beta[k] {
                break;
            }
            cur[k] = 0;
            k += 1;
        }
    }
}

fn to_sparse(v: &Poly, cols: &mut HashMap<Monomial, usize>) -> SparseVec {
    let mut out: SparseVec = v
        .terms()
        .iter()
        .map(|(m, c)| {
            let n = cols.len();
            (*cols.entry(m.clone()).or_insert(n), *c)
        })
        .collect();
    out.sort_unstable_by_key(|e| e.0);
    out
}

/// Closes a generating set under multiplication by the standard monomials.
fn close_under_y(pres: &RingPresentation, gens: Vec<Poly>) -> Result<Vec<Poly>> {
    let mut out = gens.clone();
    for g in &gens {
        for y in pres.y.iter().filter(|y| !y.is_one()) {
            out.push(pres.normal_form(&g.mul_monomial(y))?);
        }
    }
    Ok(out)
}

/// One step `M_(i+1) = { g ∈ M_i : g^Q ∈ M_i^(Q-1) I }`, linearized over
/// the candidate box `x^m b` with `m <= beta`.
pub fn qth_kernel_step(m: &PModule, ideal: &Ideal, q_exp: u64, beta: &[u32]) -> Result<PModule> {
    let opts = ClosureOptions::default();
    let held = Held::new(m.clone(), &opts.limits)?;
    Ok(kernel_step(&held, ideal, q_exp, beta, &opts)?.module)
}

fn kernel_step(
    m: &Held,
    ideal: &Ideal,
    q_exp: u64,
    beta: &[u32],
    opts: &ClosureOptions,
) -> Result<Held> {
    let pres = m.module.presentation.clone();
    let k0 = Held::new(ideal.as_pmodule()?, &opts.limits)?;
    let mring = m.mring().clone();
    let boxm = box_monomials(&pres.ring, beta);
    let ncand = boxm.len().saturating_mul(m.module.generators.len());
    if ncand > opts.max_candidates {
        return Err(Error::resource(format!(
            "{ncand} candidates exceed the cap of {}",
            opts.max_candidates
        )));
    }

    // candidates modulo the target ideal, then an F_q-basis of them
    let mut budget = Budget::new(opts.limits.max_steps);
    let mut cols = HashMap::new();
    let mut elim = Eliminator::new(pres.ring.field());
    let mut basis_vecs: Vec<Poly> = Vec::new();
    for b in &m.module.generators {
        for xm in &boxm {
            let cand = b.mul_monomial(xm);
            let r = k0.gb.reduce(&k0.mring().to_vector(&cand)?, &mut budget)?;
            if r.is_zero() {
                continue;
            }
            let sv = to_sparse(&r, &mut cols);
            if let Insert::Independent = elim.insert(basis_vecs.len(), &sv) {
                basis_vecs.push(r);
            }
        }
    }
    let vs: Vec<Poly> = basis_vecs.iter().map(|r| k0.mring().vector_to_poly(r)).collect();

    let target = power_product_held(&m.module, ideal, q_exp, opts)?;
    let tm = target.mring().clone();
    let limits = opts.limits.clone();
    let residuals: Vec<Poly> = vs
        .par_iter()
        .map(|v| {
            let p = pres.normal_form(&v.frobenius_power(q_exp)?)?;
            let mut b = Budget::new(limits.max_steps);
            target.gb.reduce(&tm.to_vector(&p)?, &mut b)
        })
        .collect::<Result<Vec<_>>>()?;
    let mut cols = HashMap::new();
    let sparse: Vec<SparseVec> = residuals.iter().map(|r| to_sparse(r, &mut cols)).collect();
    let ker = kernel(pres.ring.field(), &sparse);

    let mut gens = ideal.as_pmodule()?.generators;
    for gamma in ker {
        let mut g = Poly::zero(&pres.ring);
        for (i, c) in gamma {
            g = g.add_scaled(c, &pres.ring.one(), &vs[i]);
        }
        if !g.is_zero() {
            gens.push(g);
        }
    }
    let gens = close_under_y(&pres, gens)?;
    let _ = mring;
    Held::new(PModule::new(&pres, gens)?, &opts.limits)
}

fn beta_for(ideal: &Ideal, opts: &ClosureOptions) -> Vec<u32> {
    match opts.box_bound {
        Some(b) => vec![b; ideal.ring().independent_range().len()],
        None => ideal.beta(),
    }
}

/// Runs the chain from `seed` to its fixed point against `target`.
fn run_chain(
    seed: PModule,
    target: &Ideal,
    q_exp: u64,
    opts: &ClosureOptions,
) -> Result<(Held, Vec<PModule>)> {
    let beta = beta_for(target, opts);
    let mut cur = Held::new(seed, &opts.limits)?;
    let mut chain = vec![cur.module.clone()];
    for _ in 0..opts.max_chain {
        let next = kernel_step(&cur, target, q_exp, &beta, opts)?;
        // next ⊆ cur by construction; equal spans mean a fixed point
        let mut budget = Budget::new(opts.limits.max_steps);
        let mut same = true;
        for g in &cur.module.generators {
            if !next.gb.reduce(&next.mring().to_vector(g)?, &mut budget)?.is_zero() {
                same = false;
                break;
            }
        }
        chain.push(next.module.clone());
        cur = next;
        if same {
            return Ok((cur, chain));
        }
    }
    Err(Error::resource(format!(
        "module chain did not stabilize within {} steps",
        opts.max_chain
    )))
}

/// `φ_Q(I)`: the fixed module of the chain seeded at `⟨1⟩`.
pub fn phi_q(ideal: &Ideal, q_exp: u64) -> Result<(Ideal, ChainTrace)> {
    phi_q_with(ideal, q_exp, &ClosureOptions::default())
}

pub fn phi_q_with(ideal: &Ideal, q_exp: u64, opts: &ClosureOptions) -> Result<(Ideal, ChainTrace)> {
    let seed = Ideal::unit(&ideal.presentation).as_pmodule()?;
    let mut trace = ChainTrace::new(q_exp);
    let out = phi_round(ideal, seed, q_exp, opts, &mut trace)?;
    trace.rounds.push(ideal.clone());
    trace.rounds.push(out.clone());
    Ok((out, trace))
}

fn phi_round(
    ideal: &Ideal,
    seed: PModule,
    q_exp: u64,
    opts: &ClosureOptions,
    trace: &mut ChainTrace,
) -> Result<Ideal> {
    let (fixed, chain) = run_chain(seed, ideal, q_exp, opts)?;
    trace.chains.push(chain);
    let mut gens = fixed.module.generators;
    gens.extend(ideal.generators.iter().cloned());
    Ideal::new(&ideal.presentation, gens)?.minimalized()
}

/// Iterates `φ_Q` from `I` until two consecutive rounds agree.
pub fn integral_closure(ideal: &Ideal, e: Option<u32>) -> Result<(Ideal, ChainTrace)> {
    integral_closure_with(
        ideal,
        &ClosureOptions {
            e,
            ..ClosureOptions::default()
        },
    )
}

pub fn integral_closure_with(ideal: &Ideal, opts: &ClosureOptions) -> Result<(Ideal, ChainTrace)> {
    if !ideal.presentation.is_global() {
        let shadow = LocalShadow::new(ideal)?;
        let (c, trace) = integral_closure_with(&shadow.ideal, opts)?;
        return Ok((shadow.lift(&c)?, trace));
    }
    let q_exp = choose_q(ideal, opts.e)?;
    let seed = Ideal::unit(&ideal.presentation).as_pmodule()?;
    closure_rounds(ideal, seed, q_exp, opts)
}

fn closure_rounds(
    ideal: &Ideal,
    seed: PModule,
    q_exp: u64,
    opts: &ClosureOptions,
) -> Result<(Ideal, ChainTrace)> {
    let mut trace = ChainTrace::new(q_exp);
    let mut cur = ideal.minimalized()?;
    trace.rounds.push(cur.clone());
    if cur.is_unit()? {
        trace.stabilized = true;
        return Ok((cur, trace));
    }
    for _ in 0..opts.max_rounds {
        let next = phi_round(&cur, seed.clone(), q_exp, opts, &mut trace)?;
        if opts.verify && !next.contains_ideal(&cur)? {
            return Err(Error::resource("round monotonicity violated"));
        }
        let done = cur.contains_ideal(&next)?;
        trace.rounds.push(next.clone());
        cur = next;
        if done {
            trace.stabilized = true;
            if opts.verify && !trace.check_nesting()? {
                return Err(Error::resource("chain nesting violated"));
            }
            return Ok((cur, trace));
        }
    }
    Err(Error::resource(format!(
        "closure did not stabilize within {} rounds",
        opts.max_rounds
    )))
}

/// Seed choice for the chains computing `C(I^k)`, `k >= 2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PowerSeed {
    /// `M_0 = C(I^(k-1))`.
    PreviousClosure,
    /// `M_0 = I^(k-1)`.
    PreviousPower,
}

#[derive(Clone, Debug)]
pub struct PowersResult {
    /// `closures[k-1] = C(I^k)`.
    pub closures: Vec<Ideal>,
    /// First `k` with `C(I^k) = C(I^(k-1)) C(I)`, if reached.
    pub stop_index: Option<usize>,
    pub traces: Vec<ChainTrace>,
}

pub fn closure_powers(ideal: &Ideal, kmax: usize, e: Option<u32>) -> Result<PowersResult> {
    closure_powers_with(
        ideal,
        kmax,
        PowerSeed::PreviousClosure,
        &ClosureOptions {
            e,
            ..ClosureOptions::default()
        },
    )
}

pub fn closure_powers_with(
    ideal: &Ideal,
    kmax: usize,
    seed: PowerSeed,
    opts: &ClosureOptions,
) -> Result<PowersResult> {
    if kmax == 0 {
        return Err(Error::input("kmax must be at least 1"));
    }
    if !ideal.presentation.is_global() {
        let shadow = LocalShadow::new(ideal)?;
        let mut r = closure_powers_with(&shadow.ideal, kmax, seed, opts)?;
        r.closures = r
            .closures
            .iter()
            .map(|c| shadow.lift(c))
            .collect::<Result<Vec<_>>>()?;
        return Ok(r);
    }
    // one Q for the whole run, sized for the largest power
    let q_exp = match opts.e {
        Some(_) => choose_q(ideal, opts.e)?,
        None => choose_q(&ideal.power(kmax as u32)?, None)?,
    };
    let (c1, t1) = closure_rounds(ideal, Ideal::unit(&ideal.presentation).as_pmodule()?, q_exp, opts)?;
    let mut closures = vec![c1];
    let mut traces = vec![t1];
    let mut stop_index = None;
    for k in 2..=kmax {
        let prev = closures[k - 2].clone();
        let target = ideal.power(k as u32)?;
        let seed_ideal = match seed {
            PowerSeed::PreviousClosure => prev.clone(),
            PowerSeed::PreviousPower => ideal.power(k as u32 - 1)?,
        };
        let (ck, tk) = closure_rounds(&target, seed_ideal.as_pmodule()?, q_exp, opts)?;
        let product = prev.product(&closures[0])?;
        let stop = product.same_ideal(&ck)?;
        closures.push(ck);
        traces.push(tk);
        if stop {
            stop_index = Some(k);
            break;
        }
    }
    Ok(PowersResult {
        closures,
        stop_index,
        traces,
    })
}

//! Verification suites: each expands a run configuration into independent
//! checks, runs them under an [`Execution`] mode and returns one [`Record`]
//! per check.

use crate::arith::{odd_prime, pow_u64, Integers, PLocal};
use crate::congruence::{self, quadratic_residues};
use crate::hmodp::{basis_hn, frobenius_kernel_dim, FpElement};
use crate::par::Execution;
use crate::report::{Record, Verdict};
use crate::reps::{frobenius_twist_recovery, weyl_module};
use crate::splitting::{RelationReport, Splitting, XMonomial};
use crate::zform::Monomial;
use crate::Error;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;
use std::time::{Duration, Instant};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Relations,
    Idempotent,
    Recursion,
    Orthogonality,
    Frobenius,
    Theta,
    Congruence,
    Casimir,
    Minpoly,
    Reps,
}

impl Suite {
    pub const ALL: [Suite; 10] = [
        Suite::Relations,
        Suite::Idempotent,
        Suite::Recursion,
        Suite::Orthogonality,
        Suite::Frobenius,
        Suite::Theta,
        Suite::Congruence,
        Suite::Casimir,
        Suite::Minpoly,
        Suite::Reps,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Relations => "relations",
            Suite::Idempotent => "idempotent",
            Suite::Recursion => "recursion",
            Suite::Orthogonality => "orthogonality",
            Suite::Frobenius => "frobenius",
            Suite::Theta => "theta",
            Suite::Congruence => "congruence",
            Suite::Casimir => "casimir",
            Suite::Minpoly => "minpoly",
            Suite::Reps => "reps",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown suite {s:?}")))
    }
}

/// Parameters shared by all suites.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub primes: Vec<u64>,
    pub kmax: u32,
    pub nmax: u32,
    /// Inclusive; `None` means [−2p², 2p²] for each p.
    pub h_range: Option<(i64, i64)>,
    pub seed: u64,
    pub exec: Execution,
    pub time_budget: Option<Duration>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            primes: vec![3, 5],
            kmax: 2,
            nmax: 2,
            h_range: None,
            seed: 0,
            exec: Execution::default(),
            time_budget: None,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<(), Error> {
        if self.primes.is_empty() {
            return Err(Error::Precondition("no primes given".into()));
        }
        for p in &self.primes {
            odd_prime(*p)?;
        }
        if let Some((a, b)) = self.h_range {
            if a > b {
                return Err(Error::Precondition(format!("empty h-range {a}:{b}")));
            }
        }
        Ok(())
    }

    pub fn h_range_for(&self, p: u64) -> (i64, i64) {
        let r = 2 * (p * p) as i64;
        self.h_range.unwrap_or((-r, r))
    }

    fn rng(&self, p: u64, salt: u64) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed ^ (p << 32) ^ salt)
    }
}

type Job = Box<dyn Fn() -> Vec<Record> + Send + Sync>;

struct Task {
    check: String,
    params: Value,
    job: Job,
}

fn task(check: impl Into<String>, params: Value, job: impl Fn() -> Vec<Record> + Send + Sync + 'static) -> Task {
    Task { check: check.into(), params, job: Box::new(job) }
}

/// Wraps a single-verdict computation; errors become failures.
fn single(
    suite: Suite,
    check: impl Into<String>,
    params: Value,
    f: impl Fn() -> Result<Verdict, Error> + Send + Sync + 'static,
) -> Task {
    let check = check.into();
    let (c, ps) = (check.clone(), params.clone());
    task(check, params, move || {
        let v = f().unwrap_or_else(|e| Verdict::fail(format!("error: {e}")));
        vec![Record::from_verdict(suite.name(), c.clone(), ps.clone(), &v)]
    })
}

fn relation_record(suite: Suite, params: Value, r: Result<RelationReport, Error>) -> Record {
    match r {
        Ok(rep) => {
            let witness = (!rep.passed).then(|| serde_json::to_value(&rep).expect("reports serialize"));
            Record::new(suite.name(), rep.check.to_string(), params, rep.passed, witness)
        }
        Err(e) => Record::new(suite.name(), "error", params, false, Some(Value::String(e.to_string()))),
    }
}

/// Runs `suite` and returns its records in a deterministic order.
pub fn run_suite(suite: Suite, cfg: &RunConfig) -> Result<Vec<Record>, Error> {
    cfg.validate()?;
    let tasks = build_tasks(suite, cfg)?;
    let deadline = cfg.time_budget.map(|b| Instant::now() + b);
    let out = cfg.exec.map(&tasks, |t| {
        if deadline.is_some_and(|d| Instant::now() >= d) {
            vec![Record::skipped(suite.name(), t.check.clone(), t.params.clone())]
        } else {
            (t.job)()
        }
    });
    Ok(out.into_iter().flatten().collect())
}

fn splittings(cfg: &RunConfig) -> Result<Vec<Arc<Splitting>>, Error> {
    cfg.primes.iter().map(|p| Splitting::new(*p).map(Arc::new)).collect()
}

fn build_tasks(suite: Suite, cfg: &RunConfig) -> Result<Vec<Task>, Error> {
    let mut tasks = Vec::new();
    match suite {
        Suite::Relations => {
            for sp in splittings(cfg)? {
                let p = sp.prime();
                for k in 0..=cfg.kmax {
                    for id in 1..=6u8 {
                        let ns: Vec<u32> = if (2..=4).contains(&id) { (1..=cfg.nmax).collect() } else { vec![0] };
                        for n in ns {
                            let sp = sp.clone();
                            let params = json!({"p": p, "k": k, "n": n, "id": id});
                            let ps = params.clone();
                            tasks.push(task(format!("relation {id}"), params, move || {
                                vec![relation_record(suite, ps.clone(), sp.verify_relation(id, k, n))]
                            }));
                        }
                    }
                }
            }
        }
        Suite::Idempotent | Suite::Recursion | Suite::Orthogonality => {
            for sp in splittings(cfg)? {
                let p = sp.prime();
                let kmin = if suite == Suite::Idempotent { 0 } else { 1 };
                for k in kmin..=cfg.kmax {
                    let sp = sp.clone();
                    let params = json!({"p": p, "k": k});
                    let ps = params.clone();
                    tasks.push(task(suite.name(), params, move || {
                        let r = match suite {
                            Suite::Idempotent => sp.verify_t_idempotent(k),
                            Suite::Recursion => sp.verify_t_recursion(k),
                            _ => sp.verify_orthogonality(k),
                        };
                        vec![relation_record(suite, ps.clone(), r)]
                    }));
                }
                if suite == Suite::Idempotent {
                    let sp = sp.clone();
                    tasks.push(single(suite, "t_0 = 0", json!({"p": p}), move || {
                        Ok(Verdict::check(sp.t(0)?.is_zero(), || "t_0 is nonzero".into()))
                    }));
                }
            }
        }
        Suite::Frobenius => frobenius_tasks(cfg, &mut tasks),
        Suite::Theta => theta_tasks(cfg, &mut tasks)?,
        Suite::Congruence => congruence_tasks(cfg, &mut tasks),
        Suite::Casimir => {
            tasks.push(single(suite, "casimir over Z", json!({}), || {
                congruence::casimir(Integers).map(|_| Verdict::pass())
            }));
            for &p in &cfg.primes {
                let params = json!({"p": p});
                tasks.push(single(suite, "casimir over Z_(p)", params.clone(), move || {
                    congruence::casimir(PLocal::new(p)?).map(|_| Verdict::pass())
                }));
                tasks.push(single(suite, "product formula", params.clone(), move || {
                    congruence::product_formula_check(p)
                }));
                let (a, b) = cfg.h_range_for(p);
                tasks.push(single(suite, "Q integral pointwise", json!({"p": p, "h": [a, b]}), move || {
                    congruence::q_integrality_pointwise(p, a..=b)
                }));
                tasks.push(single(suite, "Q integral symbolic", params.clone(), move || {
                    congruence::q_integrality_symbolic(p)
                }));
                tasks.push(single(suite, "Q reduces to 4X_1", params, move || congruence::q_image_check(p)));
            }
        }
        Suite::Minpoly => {
            for &p in &cfg.primes {
                tasks.push(single(suite, "minimal polynomial of delta", json!({"p": p}), move || {
                    congruence::delta_minpoly_check(p)
                }));
            }
        }
        Suite::Reps => reps_tasks(cfg, &mut tasks)?,
    }
    Ok(tasks)
}

fn random_monomial(rng: &mut ChaCha8Rng, bound: u64) -> Monomial {
    Monomial::new(rng.gen_range(0..bound), rng.gen_range(0..bound), rng.gen_range(0..bound))
}

fn frobenius_tasks(cfg: &RunConfig, tasks: &mut Vec<Task>) {
    let suite = Suite::Frobenius;
    for &p in &cfg.primes {
        for n in 1..=cfg.kmax.max(1) {
            let params = json!({"p": p, "n": n});
            tasks.push(single(suite, "kernel dimension", params.clone(), move || {
                let (dim, expect) = (frobenius_kernel_dim(n, p), pow_u64(p, 3 * n) - pow_u64(p, 3 * (n - 1)));
                Ok(Verdict::check(dim as u64 == expect, || format!("dim ker = {dim}, expected {expect}")))
            }));
            tasks.push(single(suite, "surjective onto H_{n-1}", params.clone(), move || {
                let lower = pow_u64(p, n - 1);
                let mut hit = 0;
                for m in basis_hn(n, p) {
                    let img = FpElement::monomial(p, m).frobenius();
                    if !img.is_zero() {
                        let target = Monomial::new(m.a / p, m.b / p, m.c / p);
                        if img != FpElement::monomial(p, target) || target.a >= lower || target.b >= lower {
                            return Ok(Verdict::fail(format!("Fr({m:?}) = {img}")));
                        }
                        hit += 1;
                    }
                }
                Ok(Verdict::check(hit == pow_u64(p, 3 * (n - 1)), || format!("{hit} basis images")))
            }));
            let mut rng = cfg.rng(p, n as u64);
            let bound = pow_u64(p, n);
            let pairs: Vec<(Monomial, Monomial)> =
                (0..100).map(|_| (random_monomial(&mut rng, bound), random_monomial(&mut rng, bound))).collect();
            tasks.push(single(suite, "homomorphism", json!({"p": p, "n": n, "pairs": pairs.len()}), move || {
                for (a, b) in &pairs {
                    let (x, y) = (FpElement::monomial(p, *a), FpElement::monomial(p, *b));
                    if x.mul(&y).frobenius() != x.frobenius().mul(&y.frobenius()) {
                        return Ok(Verdict::fail(format!("{a:?} * {b:?}")));
                    }
                    if x.mul(&y).counit() != x.counit() * y.counit() % p {
                        return Ok(Verdict::fail(format!("counit on {a:?} * {b:?}")));
                    }
                }
                Ok(Verdict::pass())
            }));
        }
    }
}

fn theta_tasks(cfg: &RunConfig, tasks: &mut Vec<Task>) -> Result<(), Error> {
    let suite = Suite::Theta;
    let n = cfg.kmax.clamp(1, 2);
    for sp in splittings(cfg)? {
        let p = sp.prime();
        let basis = basis_hn(n, p);
        // Split the exhaustive sweeps into chunks so they spread over workers.
        for chunk in basis.chunks(basis.len().div_ceil(8)) {
            let chunk = chunk.to_vec();
            let params = json!({"p": p, "n": n, "from": chunk[0], "count": chunk.len()});
            let s = sp.clone();
            tasks.push(single(suite, "Fr(theta(x)) = x", params, move || {
                for m in &chunk {
                    let x = FpElement::monomial(p, *m);
                    if s.theta(&x, n)?.frobenius() != x {
                        return Ok(Verdict::fail(format!("{m:?}")));
                    }
                }
                Ok(Verdict::pass())
            }));
        }
        for chunk in basis.chunks(basis.len().div_ceil(8)) {
            let chunk = chunk.to_vec();
            let params = json!({"p": p, "n": n, "from": chunk[0], "count": chunk.len()});
            let s = sp.clone();
            tasks.push(single(suite, "X-basis round trip", params, move || {
                for m in &chunk {
                    let x = FpElement::monomial(p, *m);
                    if s.from_xbasis(&s.to_xbasis(&x, n)?)? != x {
                        return Ok(Verdict::fail(format!("{m:?}")));
                    }
                    let xm = XMonomial::from_indices(m.a, m.b, m.c, p);
                    if let Some(w) = s.unitriangular_violation(&xm, n)? {
                        return Ok(Verdict::fail(w));
                    }
                }
                Ok(Verdict::pass())
            }));
        }
        let s = sp.clone();
        tasks.push(single(suite, "theta(1) = 1", json!({"p": p}), move || {
            let one = FpElement::one(p);
            Ok(Verdict::check(s.theta(&one, 0)? == one, || "theta(1) != 1".into()))
        }));
        let s = sp.clone();
        tasks.push(single(suite, "theta commutes with Chevalley on generators", json!({"p": p}), move || {
            let h = s.algebra();
            for k in 0..n {
                for g in [h.e_gen(k), h.f_gen(k)] {
                    let lhs = s.theta(&g.chevalley_involution(), k + 1)?;
                    if lhs != s.theta(&g, k + 1)?.chevalley_involution() {
                        return Ok(Verdict::fail(format!("{g} at level {k}")));
                    }
                }
            }
            Ok(Verdict::pass())
        }));
        let mut rng = cfg.rng(p, 0x7e7a);
        let h1 = basis_hn(1, p);
        let pairs: Vec<(Monomial, Monomial)> =
            (0..200).map(|_| (h1[rng.gen_range(0..h1.len())], h1[rng.gen_range(0..h1.len())])).collect();
        for chunk in pairs.chunks(25) {
            let chunk = chunk.to_vec();
            let s = sp.clone();
            tasks.push(single(suite, "theta multiplicative", json!({"p": p, "pairs": chunk.len()}), move || {
                for (a, b) in &chunk {
                    let (x, y) = (FpElement::monomial(p, *a), FpElement::monomial(p, *b));
                    if s.theta(&x.mul(&y), 1)? != s.theta(&x, 1)?.mul(&s.theta(&y, 1)?) {
                        return Ok(Verdict::fail(format!("{a:?} * {b:?}")));
                    }
                }
                Ok(Verdict::pass())
            }));
        }
    }
    Ok(())
}

fn congruence_tasks(cfg: &RunConfig, tasks: &mut Vec<Task>) {
    let suite = Suite::Congruence;
    for &p in &cfg.primes {
        let (a, b) = cfg.h_range_for(p);
        for (residue, roots) in quadratic_residues(p) {
            for j in roots {
                for jt in [j as i64, (j + p) as i64] {
                    let params = json!({"p": p, "residue": residue, "j": jt, "h": [a, b]});
                    tasks.push(single(suite, "chi(h) - chi(h+2p) = 0 mod p^3", params.clone(), move || {
                        congruence::r1_congruence_check(p, jt, a..=b)
                    }));
                    tasks.push(single(suite, "phi' argument", params, move || {
                        let mut vs = Vec::new();
                        for h in a..=b {
                            vs.push(congruence::phi_prime_check(p, jt, h)?);
                        }
                        Ok(Verdict::all(vs))
                    }));
                }
            }
        }
        tasks.push(single(suite, "eigenvalues in {0,4}", json!({"p": p}), move || {
            let mut vs = Vec::new();
            for i in 0..p {
                for jt in 0..p as i64 {
                    vs.push(congruence::eigenvalue_check(p, i, jt)?.verdict());
                }
            }
            Ok(Verdict::all(vs))
        }));
        tasks.push(single(suite, "factor algebras", json!({"p": p}), move || congruence::factor_algebra_check(p)));
        tasks.push(single(suite, "closing identity", json!({"p": p}), move || {
            Ok(congruence::closing_identity_check(p))
        }));
        if p == 3 {
            tasks.push(single(suite, "binom(np, p) = n mod p^3 fails", json!({"p": 3, "n": 2}), || {
                let w = congruence::wolstenholme_check(2, 3)?;
                Ok(Verdict::check(!w.passed, || format!("{w:?}")))
            }));
        } else {
            tasks.push(single(suite, "binom(np, p) = n mod p^3", json!({"p": p, "n": [1, 10]}), move || {
                let mut vs = Vec::new();
                for n in 1..=10 {
                    let w = congruence::wolstenholme_check(n, p)?;
                    vs.push(Verdict::check(w.passed, || format!("{w:?}")));
                }
                Ok(Verdict::all(vs))
            }));
        }
    }
}

fn reps_tasks(cfg: &RunConfig, tasks: &mut Vec<Task>) -> Result<(), Error> {
    let suite = Suite::Reps;
    for sp in splittings(cfg)? {
        let p = sp.prime();
        for m in 0..=12u64 {
            let s = sp.clone();
            tasks.push(single(suite, "Weyl module", json!({"p": p, "m": m}), move || {
                let v = weyl_module(m, p)?;
                let mut vs = vec![v.verify_casimir()?, v.verify_t_idempotent(&s, 1)?];
                for r in 0..p {
                    vs.push(v.verify_theta_relations(&s, r, 0, 1)?);
                }
                Ok(Verdict::all(vs))
            }));
        }
        for m in [0u64, 1, 2] {
            let s = sp.clone();
            tasks.push(single(suite, "Frobenius twist recovery", json!({"p": p, "m": m}), move || {
                frobenius_twist_recovery(&s, &weyl_module(m, p)?)
            }));
        }
    }
    Ok(())
}

//! The full seeded verification suite behind `selftest`: property corpora,
//! exhaustive sweeps, and construction certificates, with a deterministic
//! text report (byte-identical for a fixed seed).

use std::fmt::Write as _;

use crate::bounds::{self, binomial, formula_monomial_bound, AlphaChoice, BoundConstants};
use crate::constructions::{
    ben_or, circuit_to_formula, depth_four_formula, frontier_identity_holds, monotone_dc,
    newton_circuit, newton_homogeneous_formula, power_sum_formula,
};
use crate::corpus::{
    bounded_depth_corpus, homogeneous_multilinear_corpus, random_formula, random_point,
    w_homogeneous_circuits,
};
use crate::decomposition::{
    balanced_decompose, find_split_node, form_decompose, validate_balanced, validate_form,
};
use crate::error::Result;
use crate::formula::parse_formula;
use crate::poly::{
    div_exact, newton_z, oracle_p, oracle_s, oracle_s_by_enumeration, parse_poly, Monomial,
    RingMode, VarId, Weighting,
};
use crate::rng::Rng;
use crate::scalar::Scalar;
use crate::{Poly, Rat};
use num_traits::ToPrimitive;

/// Outcome of a selftest run: the full report text plus the overall verdict.
#[derive(Debug, Clone)]
pub struct SelftestOutcome {
    pub report: String,
    pub ok: bool,
}

struct Suite {
    out: String,
    ok: bool,
}

impl Suite {
    fn new() -> Self {
        Suite {
            out: String::new(),
            ok: true,
        }
    }

    fn check(&mut self, name: &str, cases: u64, failures: Vec<String>) {
        if failures.is_empty() {
            let _ = writeln!(self.out, "ok   {name} cases={cases}");
        } else {
            self.ok = false;
            let _ = writeln!(
                self.out,
                "FAIL {name} cases={cases} failures={}",
                failures.len()
            );
            for f in failures.iter().take(8) {
                let _ = writeln!(self.out, "     - {f}");
            }
        }
    }

    fn run(&mut self, name: &str, body: impl FnOnce() -> Result<(u64, Vec<String>)>) {
        match body() {
            Ok((cases, failures)) => self.check(name, cases, failures),
            Err(e) => {
                self.ok = false;
                let _ = writeln!(self.out, "FAIL {name} error={e}");
            }
        }
    }
}

fn random_poly(rng: &mut Rng, mode: RingMode) -> Poly {
    let terms = rng.range(0, 4);
    let mut p = Poly::zero(mode);
    for _ in 0..terms {
        let deg = rng.range(0, 3);
        let monomial = match mode {
            RingMode::Commutative => Monomial::from_exponents(
                (0..deg).map(|_| (VarId(rng.range(1, 4) as u32), rng.range(1, 2) as u32)),
            ),
            RingMode::Noncommutative => {
                Monomial::Ordered((0..deg).map(|_| VarId(rng.range(1, 4) as u32)).collect())
            }
        };
        let num = rng.range(0, 10) as i64 - 5;
        let den = rng.range(1, 3) as i64;
        let single = Poly::from_terms(mode, [(monomial, Rat::new(num.into(), den.into()))])
            .expect("uniform mode");
        p = p.add(&single).expect("uniform mode");
    }
    p
}

/// Run every suite with the given seed. The report is deterministic:
/// identical seeds give byte-identical output.
pub fn run_selftest(seed: u64) -> SelftestOutcome {
    let consts = BoundConstants::default();
    let mut suite = Suite::new();
    let _ = writeln!(suite.out, "selftest seed={seed}");

    suite.run("ring-axioms", || {
        let mut rng = Rng::new(seed ^ 0x52494e47);
        let mut failures = Vec::new();
        let mut cases = 0;
        for mode in [RingMode::Commutative, RingMode::Noncommutative] {
            for i in 0..30 {
                let a = random_poly(&mut rng, mode);
                let b = random_poly(&mut rng, mode);
                let c = random_poly(&mut rng, mode);
                cases += 1;
                let assoc_add = a.add(&b)?.add(&c)? == a.add(&b.add(&c)?)?;
                let comm_add = a.add(&b)? == b.add(&a)?;
                let distrib = a.mul(&b.add(&c)?)? == a.mul(&b)?.add(&a.mul(&c)?)?;
                let assoc_mul = a.mul(&b)?.mul(&c)? == a.mul(&b.mul(&c)?)?;
                if !(assoc_add && comm_add && distrib && assoc_mul) {
                    failures.push(format!("ring axiom failed ({mode:?} case {i})"));
                }
                if mode == RingMode::Commutative && a.mul(&b)? != b.mul(&a)? {
                    failures.push(format!("commutativity failed (case {i})"));
                }
            }
        }
        Ok((cases, failures))
    });

    suite.run("oracle-s-two-routes", || {
        let mut failures = Vec::new();
        let mut cases = 0;
        for mode in [RingMode::Commutative, RingMode::Noncommutative] {
            for n in 1..=10u32 {
                for k in 0..=n {
                    cases += 1;
                    if oracle_s::<Rat>(n, k, mode) != oracle_s_by_enumeration::<Rat>(n, k, mode) {
                        failures.push(format!("routes disagree at n={n} k={k} {mode:?}"));
                    }
                }
            }
        }
        for n in 1..=12u32 {
            for k in 0..=n {
                cases += 1;
                let count = oracle_s::<Rat>(n, k, RingMode::Commutative).monomial_count();
                let expected = binomial(n as u64, k as u64).to_usize().unwrap_or(usize::MAX);
                if count != expected {
                    failures.push(format!("count != C(n,k) at n={n} k={k}"));
                }
            }
        }
        Ok((cases, failures))
    });

    suite.run("newton-identity", || {
        let mut failures = Vec::new();
        let mut cases = 0;
        for n in 1..=8u32 {
            for k in 1..=n {
                cases += 1;
                let via = crate::poly::newton_s::<Rat>(n, k)?;
                if via != oracle_s::<Rat>(n, k, RingMode::Commutative) {
                    failures.push(format!("identity fails at n={n} k={k}"));
                }
            }
        }
        Ok((cases, failures))
    });

    suite.run("newton-z-partition-counts", || {
        let mut failures = Vec::new();
        for k in 0..=20u32 {
            let count = newton_z::<Rat>(k).monomial_count() as u128;
            let p = bounds::partition_function(k)?;
            if count != p {
                failures.push(format!("term count {count} != p({k}) = {p}"));
            }
        }
        Ok((21, failures))
    });

    suite.run("partition-two-routes", || {
        let mut failures = Vec::new();
        for k in 0..=200u32 {
            if bounds::partition_function(k)? != bounds::partition_function_dp(k) {
                failures.push(format!("partition routes disagree at k={k}"));
            }
        }
        Ok((201, failures))
    });

    suite.run("eval-expand-homomorphism", || {
        let mut rng = Rng::new(seed ^ 0x4556414c);
        let mut failures = Vec::new();
        let mut cases = 0;
        for i in 0..500 {
            let n_vars = rng.range(1, 6) as u32;
            let f = random_formula(&mut rng, n_vars, 60);
            let expansion = f.expand(RingMode::Commutative);
            for _ in 0..5 {
                cases += 1;
                let pt = random_point(&mut rng, n_vars);
                if f.eval(&pt)? != expansion.eval(&pt)? {
                    failures.push(format!("eval != expand-then-eval (formula {i})"));
                }
            }
        }
        Ok((cases, failures))
    });

    suite.run("serialize-round-trip", || {
        let mut rng = Rng::new(seed ^ 0x524f554e44);
        let mut failures = Vec::new();
        for i in 0..500 {
            let n_vars = rng.range(1, 6) as u32;
            let f = random_formula(&mut rng, n_vars, 60);
            let text = f.serialize();
            match parse_formula::<Rat>(&text) {
                Ok(g) => {
                    if g != f {
                        failures.push(format!("round trip changed formula {i}"));
                    }
                }
                Err(e) => failures.push(format!("reparse failed on formula {i}: {e}")),
            }
            // polynomial text round-trip on the expansion
            let p = f.expand(RingMode::Commutative);
            match parse_poly::<Rat>(&p.to_string(), RingMode::Commutative) {
                Ok(q) => {
                    if q != p {
                        failures.push(format!("poly text round trip changed formula {i}"));
                    }
                }
                Err(e) => failures.push(format!("poly reparse failed on {i}: {e}")),
            }
        }
        Ok((1000, failures))
    });

    suite.run("split-identity", || {
        // expand(phi) = h * expand(phi_w) + expand(phi_{w=0}) with h exact
        let mut failures = Vec::new();
        let corpus = homogeneous_multilinear_corpus(seed ^ 0x53504c4954, 40);
        for (i, sample) in corpus.iter().enumerate() {
            let phi = &sample.formula;
            let w = find_split_node(phi)?;
            let p = phi.expand(RingMode::Commutative);
            let p_w = phi.subformula(w)?.expand(RingMode::Commutative);
            let p_0 = phi
                .restrict(w, Rat::from_int(0))?
                .expand(RingMode::Commutative);
            let k = phi.formal_degree(phi.root());
            let wdeg = phi.formal_degree(w);
            if !(3 * wdeg >= k && 3 * wdeg < 2 * k) {
                failures.push(format!("split degree outside window (sample {i})"));
                continue;
            }
            let h = div_exact(&p.sub(&p_0)?, &p_w)?;
            if h.mul(&p_w)?.add(&p_0)? != p {
                failures.push(format!("split identity fails (sample {i})"));
            }
            if h.degree().finite() != Some(k - wdeg) {
                failures.push(format!("split quotient degree wrong (sample {i})"));
            }
        }
        Ok((40, failures))
    });

    suite.run("balanced-certificates", || {
        let mut failures = Vec::new();
        let corpus = homogeneous_multilinear_corpus(seed, 200);
        for (i, sample) in corpus.iter().enumerate() {
            let cert = balanced_decompose(&sample.formula)?;
            let report = validate_balanced(&cert, &sample.formula)?;
            if !report.pass {
                failures.push(format!(
                    "certificate invalid (sample {i}): {:?}",
                    report.failures.first()
                ));
            }
            let count = sample
                .formula
                .expand(RingMode::Commutative)
                .monomial_count();
            let bound = formula_monomial_bound(
                sample.formula.size(),
                sample.degree as u64,
                sample.universe as u64,
                &consts,
            )?;
            if count as f64 > bound {
                failures.push(format!(
                    "monomial count {count} above bound {bound:.3} (sample {i})"
                ));
            }
        }
        Ok((200, failures))
    });

    suite.run("form-certificates", || {
        let mut failures = Vec::new();
        let corpus = bounded_depth_corpus(seed);
        let cases = corpus.len() as u64;
        for (i, sample) in corpus.iter().enumerate() {
            let cert = form_decompose(&sample.formula, sample.q, sample.product_depth)?;
            let two_q = 2 * sample.q as u64;
            let l = Rat::new(
                (sample.degree as i64).into(),
                (two_q.pow(sample.product_depth) as i64).into(),
            );
            let report = validate_form(&cert, &sample.formula, sample.q, &l)?;
            if !report.pass {
                failures.push(format!(
                    "certificate invalid (sample {i}): {:?}",
                    report.failures.first()
                ));
            }
            // constant-depth monomial bound where its hypothesis holds
            let k = sample.degree as u64;
            let d = sample.product_depth;
            if (k as f64).powf(1.0 / d as f64) >= 8.0 {
                let count = sample
                    .formula
                    .expand(RingMode::Commutative)
                    .monomial_count();
                let bound = bounds::const_depth_monomial_bound(
                    sample.formula.size(),
                    k,
                    sample.universe as u64,
                    d,
                    &consts,
                )?;
                if count as f64 > bound {
                    failures.push(format!(
                        "monomial count {count} above const-depth bound (sample {i})"
                    ));
                }
            }
        }
        Ok((cases, failures))
    });

    suite.run("frontier-identity", || {
        let mut failures = Vec::new();
        let mut cases = 0;
        for k in 2..=6u32 {
            cases += 1;
            let c = newton_circuit::<Rat>(k);
            let w = Weighting::ascending(k);
            if !frontier_identity_holds(&c, &w)? {
                failures.push(format!("identity fails on the Newton circuit k={k}"));
            }
        }
        for (i, (c, w)) in w_homogeneous_circuits(seed, 25).iter().enumerate() {
            let k = c.formal_w_degrees(w)?[c.output().index()];
            if k < 2 {
                continue;
            }
            cases += 1;
            if !frontier_identity_holds(c, w)? {
                failures.push(format!("identity fails on random circuit {i}"));
            }
            let f = circuit_to_formula(c, w)?;
            if f.expand(RingMode::Commutative) != c.expand(RingMode::Commutative) {
                failures.push(format!("balanced formula differs on circuit {i}"));
            }
        }
        Ok((cases, failures))
    });

    suite.run("binomial-product-sweep", || {
        let report = bounds::binomial_product_sweep(14, 7);
        let failures = if report.pass {
            Vec::new()
        } else {
            report.failures.clone()
        };
        Ok((report.cases_checked, failures))
    });

    suite.run("growth-recurrence", || {
        let report =
            bounds::monotone_size_recurrence_check(&AlphaChoice::ProofRule, 1024, 10, &consts)?;
        let failures = if report.pass {
            Vec::new()
        } else {
            report.failures.clone()
        };
        Ok((report.cases_checked, failures))
    });

    suite.run("construction-oracles", || {
        let mut failures = Vec::new();
        let mut cases = 0;
        for n in 1..=6u32 {
            for k in 1..=n {
                cases += 1;
                let oracle = oracle_s::<Rat>(n, k, RingMode::Commutative);
                let checks: [(&str, crate::RatFormula); 4] = [
                    ("ben-or", ben_or::<Rat>(n, k)?),
                    ("newton", newton_homogeneous_formula::<Rat>(n, k)?),
                    ("depth4", depth_four_formula::<Rat>(n, k)?),
                    ("monotone", monotone_dc::<Rat>(n, k)?),
                ];
                for (name, f) in checks {
                    if f.expand(RingMode::Commutative) != oracle {
                        failures.push(format!("{name} misses the oracle at n={n} k={k}"));
                    }
                }
            }
        }
        for i in 1..=4u32 {
            cases += 1;
            if power_sum_formula::<Rat>(5, i)?.expand(RingMode::Commutative)
                != oracle_p::<Rat>(5, i)?
            {
                failures.push(format!("power sum misses the oracle at i={i}"));
            }
        }
        Ok((cases, failures))
    });

    suite.run("noncommutative-constructions", || {
        let mut failures = Vec::new();
        let mut cases = 0;
        for n in 1..=6u32 {
            for k in 1..=n {
                cases += 1;
                let oracle = oracle_s::<Rat>(n, k, RingMode::Noncommutative);
                if ben_or::<Rat>(n, k)?.expand(RingMode::Noncommutative) != oracle {
                    failures.push(format!("ordered ben-or fails at n={n} k={k}"));
                }
                if monotone_dc::<Rat>(n, k)?.expand(RingMode::Noncommutative) != oracle {
                    failures.push(format!("ordered monotone fails at n={n} k={k}"));
                }
            }
        }
        Ok((cases, failures))
    });

    suite.run("size-certificates", || {
        let mut failures = Vec::new();
        let mut cases = 0;
        for n in [4u32, 8, 16, 32] {
            for k in [0u32, 1, 2, 3] {
                if k > n {
                    continue;
                }
                cases += 1;
                let size = ben_or::<Rat>(n, k)?.size();
                if size > 4 * (n as u64 + 1).pow(2) {
                    failures.push(format!("ben-or size cap fails at n={n} k={k}"));
                }
            }
        }
        for k in 2..=6u32 {
            for n in [2 * k, 16, 32] {
                if n < 2 * k {
                    continue;
                }
                cases += 1;
                let size = monotone_dc::<Rat>(n, k)?.size();
                let cap = bounds::monotone_upper_bound_ceil(n as u64, k as u64, &consts)?;
                if size as u128 > cap {
                    failures.push(format!("monotone size cap fails at n={n} k={k}"));
                }
                let lb = bounds::lower_bound_size(n as u64, k as u64, &consts);
                if lb.value > size as f64 {
                    failures.push(format!("lower bound above actual size at n={n} k={k}"));
                }
            }
        }
        for k in [2u32, 3] {
            let s8 = newton_homogeneous_formula::<Rat>(8, k)?.size();
            let s16 = newton_homogeneous_formula::<Rat>(16, k)?.size();
            cases += 1;
            if s16 != 2 * s8 {
                failures.push(format!("newton size ratio not exactly 2 at k={k}"));
            }
        }
        for k in 2..=6u32 {
            cases += 1;
            let f = depth_four_formula::<Rat>(16, k)?;
            let cap = bounds::partition_function(k)? * (k as u128 * 16 + 1);
            if f.size() as u128 > cap {
                failures.push(format!("depth-4 size cap fails at k={k}"));
            }
        }
        Ok((cases, failures))
    });

    let verdict = if suite.ok { "PASS" } else { "FAIL" };
    let _ = writeln!(suite.out, "selftest verdict: {verdict}");
    SelftestOutcome {
        report: suite.out,
        ok: suite.ok,
    }
}

//! One function per subcommand. Each resolves the configuration fields it
//! uses (writing defaults and sampled parameters back, so the report's
//! embedded config reproduces the run) and records checks.

use std::str::FromStr;

use affvir_core::analysis::{
    cyclic_closure, finite_difference, local_finiteness_probe, omega_operator, omega_s1s2_closed_form, r_invariant,
    reduce_to_degree_zero, vandermonde_closed_form, vandermonde_matrix, wl_submodule_check, Window, WlWindow,
};
use affvir_core::classify::{
    is_irreducible_rankone, is_irreducible_tensor, iso_rankone, iso_tensor, ClassifyError, IsoVerdict, SlotRelation,
};
use affvir_core::exact::Scalar;
use affvir_core::hwmod::{words_of_level, HwElement, HwKind, HwModule, HwParams, PbwMonomial};
use affvir_core::liealg::{bracket, bracket_gen, gen, Generator};
use affvir_core::polymod::{act_rankone, act_rankone_element, in_t_ideal, theta_ideal_generator, Family, FamilyParams, Poly2};
use affvir_core::tensor::{degree, format_element, is_degree_zero, one_vh, parse_element, TensorElement, TensorModule, TensorParams};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::config::{Command, JobConfig};
use crate::report::{Builder, Report};
use crate::{sample, JobError};

type Result<T> = std::result::Result<T, JobError>;

fn config_err(msg: impl Into<String>) -> JobError {
    JobError::Config(msg.into())
}

pub fn dispatch(cfg: JobConfig) -> Result<Report> {
    let command = cfg.command.ok_or_else(|| config_err("no command given (flag or config file)"))?;
    validate_window(&cfg)?;
    let mut job = Job::new(cfg);
    let mut out = Builder::default();
    match command {
        Command::Classify => classify(&mut job, &mut out)?,
        Command::VerifyAxioms => verify_axioms(&mut job, &mut out)?,
        Command::DetCheck => det_check(&mut job, &mut out)?,
        Command::Reduce => reduce(&mut job, &mut out)?,
        Command::Closure => closure(&mut job, &mut out)?,
        Command::Rg => rg(&mut job, &mut out)?,
        Command::WlCheck => wl_check(&mut job, &mut out)?,
        Command::Omega => omega(&mut job, &mut out)?,
        Command::Locfin => locfin(&mut job, &mut out)?,
        Command::HwQuotient => hw_quotient(&mut job, &mut out)?,
    }
    Ok(Report::new(command.name(), job.cfg, out.checks, out.results))
}

/// Window sizes must be positive whether or not the command reads them; the
/// level and `f_0` cutoffs may be zero.
fn validate_window(cfg: &JobConfig) -> Result<()> {
    let w = &cfg.window;
    let sizes = [
        ("max_p", w.max_p.map(i64::from)),
        ("max_q", w.max_q.map(i64::from)),
        ("mode_bound", w.mode_bound),
        ("samples", w.samples.map(i64::from)),
        ("max_dim", w.max_dim.map(|d| d as i64)),
    ];
    match sizes.iter().find(|(_, v)| matches!(v, Some(v) if *v <= 0)) {
        Some((name, Some(v))) => Err(config_err(format!("{name} must be positive, got {v}"))),
        _ => Ok(()),
    }
}

// ------------------------------------------------------------ text formats

fn parse_scalar(src: &str, what: &str) -> Result<Scalar> {
    Scalar::from_str(src.trim()).map_err(|e| config_err(format!("{what}: cannot parse {src:?} as a scalar ({e})")))
}

fn parse_list(src: &str, n: usize, what: &str) -> Result<Vec<Scalar>> {
    let parts: Vec<&str> = src.split(',').collect();
    if parts.len() != n {
        return Err(config_err(format!("{what}: expected {n} comma-separated values, found {:?}", src)));
    }
    parts.iter().map(|p| parse_scalar(p, what)).collect()
}

/// `"lambda,alpha,beta,gamma"`, optionally prefixed by `"Family:"`.
pub fn parse_factor(src: &str, default: Family) -> Result<FamilyParams> {
    let (family, rest) = match src.split_once(':') {
        Some((f, rest)) => (Family::from_str(f.trim()).map_err(|_| config_err(format!("unknown family {f:?}")))?, rest),
        None => (default, src),
    };
    let v = parse_list(rest, 4, "factor parameters")?;
    FamilyParams::new(family, v[0].clone(), v[1].clone(), v[2].clone(), v[3].clone())
        .map_err(|e| config_err(format!("factor {src:?}: {e}")))
}

pub fn format_factor(p: &FamilyParams) -> String {
    format!("{}:{},{},{},{}", p.family, p.lambda, p.alpha, p.beta, p.gamma)
}

fn element_text(g: &TensorElement) -> String {
    let s = format_element(g);
    let s = s.trim_end().replace('\n', "; ");
    if s.is_empty() {
        "0".into()
    } else {
        s
    }
}

fn degree_json(g: &TensorElement) -> Value {
    degree(g).map_or(Value::Null, |d| json!(d))
}

// ------------------------------------------------------------ job context

struct Job {
    cfg: JobConfig,
    rng: ChaCha8Rng,
}

impl Job {
    fn new(mut cfg: JobConfig) -> Job {
        let seed = *cfg.seed.get_or_insert(0);
        Job { cfg, rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    fn family(&mut self) -> Result<Family> {
        let name = self.cfg.family.get_or_insert_with(|| "Omega".into()).clone();
        Family::from_str(&name).map_err(|_| config_err(format!("unknown family {name:?} (Omega, Delta or Theta)")))
    }

    fn positive<T: PartialOrd + Default + Copy + std::fmt::Display>(value: T, name: &str) -> Result<T> {
        if value > T::default() {
            Ok(value)
        } else {
            Err(config_err(format!("{name} must be positive, got {value}")))
        }
    }

    fn max_p(&mut self, d: u32) -> Result<u32> {
        Self::positive(*self.cfg.window.max_p.get_or_insert(d), "max_p")
    }

    fn max_q(&mut self, d: u32) -> Result<u32> {
        Self::positive(*self.cfg.window.max_q.get_or_insert(d), "max_q")
    }

    fn level(&mut self, d: u32) -> u32 {
        *self.cfg.window.level.get_or_insert(d)
    }

    fn f0(&mut self, d: u32) -> u32 {
        *self.cfg.window.f0.get_or_insert(d)
    }

    fn mode_bound(&mut self, d: i64) -> Result<i64> {
        Self::positive(*self.cfg.window.mode_bound.get_or_insert(d), "mode_bound")
    }

    fn samples(&mut self, d: u32) -> Result<u32> {
        Self::positive(*self.cfg.window.samples.get_or_insert(d), "samples")
    }

    fn hw_triple(src: &str) -> Result<(Scalar, Scalar, Scalar)> {
        let v = parse_list(src, 3, "highest weight")?;
        Ok((v[0].clone(), v[1].clone(), v[2].clone()))
    }

    /// Highest weight with the window's level and `f_0` cutoffs.
    fn hw(&mut self, default: &str, level: u32, f0: u32) -> Result<HwParams> {
        let src = self.cfg.hw.get_or_insert_with(|| default.into()).clone();
        let (eta, eps, theta) = Self::hw_triple(&src)?;
        let level = self.level(level);
        let f0 = self.f0(f0);
        Ok(HwParams::new(eta, eps, theta, level, f0))
    }

    fn sampled_factor(&mut self, family: Family, lambda: Scalar) -> FamilyParams {
        let beta = if family == Family::Theta { sample::admissible_beta(&mut self.rng) } else { sample::scalar(&mut self.rng) };
        let alpha = sample::nonzero(&mut self.rng);
        let gamma = sample::scalar(&mut self.rng);
        FamilyParams::new(family, lambda, alpha, beta, gamma).expect("nonzero samples")
    }

    /// Given factors, or `m` sampled ones (distinct `λ`, or one shared `λ`).
    fn factors(&mut self, default_m: usize, shared_lambda: bool) -> Result<Vec<FamilyParams>> {
        let family = self.family()?;
        if self.cfg.params.is_empty() {
            let m = Self::positive(*self.cfg.m.get_or_insert(default_m), "m")?;
            let lambdas = if shared_lambda { vec![sample::nonzero(&mut self.rng); m] } else { sample::distinct(&mut self.rng, m) };
            let fs: Vec<FamilyParams> = lambdas.into_iter().map(|l| self.sampled_factor(family, l)).collect();
            self.cfg.params = fs.iter().map(format_factor).collect();
            return Ok(fs);
        }
        let fs = self.cfg.params.iter().map(|s| parse_factor(s, family)).collect::<Result<Vec<_>>>()?;
        match self.cfg.m {
            Some(m) if m != fs.len() => {
                return Err(config_err(format!("inconsistent m: --m {m} but {} parameter lists", fs.len())));
            }
            _ => self.cfg.m = Some(fs.len()),
        }
        Ok(fs)
    }

    fn element(&mut self, m: usize, default: impl FnOnce() -> TensorElement) -> Result<TensorElement> {
        let src = self.cfg.element.get_or_insert_with(|| element_text(&default())).clone();
        parse_element(&src, m).map_err(|e| config_err(format!("element {src:?} (m = {m}): {e}")))
    }
}

fn tensor_params(job: &mut Job, factors: Vec<FamilyParams>, hw: HwParams) -> Result<TensorParams> {
    let allow_mixed = *job.cfg.allow_mixed.get_or_insert(false);
    TensorParams::build(factors, hw, HwKind::Irreducible, allow_mixed).map_err(|e| config_err(e.to_string()))
}

fn tensor(job: &mut Job, factors: Vec<FamilyParams>, hw: HwParams) -> Result<TensorModule> {
    Ok(TensorModule::new(tensor_params(job, factors, hw)?))
}

fn factors_json(fs: &[FamilyParams]) -> Value {
    json!(fs.iter().map(format_factor).collect::<Vec<_>>())
}

// ------------------------------------------------------------ classify

fn relation_name(r: &SlotRelation) -> &'static str {
    match r {
        SlotRelation::Equal => "equal",
        SlotRelation::BetaTwin => "beta-twin",
    }
}

fn verdict_json(v: &IsoVerdict) -> Value {
    match &v.witness {
        Some(w) => json!({
            "isomorphic": v.isomorphic,
            "witness": {
                "permutation": w.permutation,
                "relations": w.relations.iter().map(relation_name).collect::<Vec<_>>(),
            },
        }),
        None => json!({ "isomorphic": v.isomorphic, "witness": null }),
    }
}

fn classify(job: &mut Job, out: &mut Builder) -> Result<()> {
    let fs = job.factors(1, false)?;
    let family = job.family()?;
    let inputs = factors_json(&fs);
    let per_slot: Vec<bool> = fs.iter().map(is_irreducible_rankone).collect();
    for (k, f) in fs.iter().enumerate() {
        if f.family == Family::Theta {
            // The invariant ideal exists exactly in the reducible case.
            out.check_eq(format!("slot {k}: theta ideal exists iff reducible"), json!(format_factor(f)), !per_slot[k], theta_ideal_generator(&f.beta).is_some());
        }
    }
    out.result("rankone_irreducible", per_slot.clone());
    if fs.len() == 1 {
        out.result("irreducible", per_slot[0]);
    } else {
        let hw = job.hw("0,0,0", 0, 0)?;
        let t = tensor_params(job, fs.clone(), hw)?;
        match is_irreducible_tensor(&t) {
            Ok(irr) => {
                out.result("irreducible", irr);
                out.result("lambdas_distinct", t.lambdas_distinct());
            }
            Err(ClassifyError::ReducibleFactor { slot }) => {
                out.result("irreducible", false);
                out.result("reducible_slot", slot);
            }
            Err(e) => return Err(config_err(e.to_string())),
        }
    }

    if job.cfg.against.is_empty() {
        return Ok(());
    }
    let other = job.cfg.against.iter().map(|s| parse_factor(s, family)).collect::<Result<Vec<_>>>()?;
    let both = json!({ "first": inputs, "second": factors_json(&other) });
    let verdict = if fs.len() == 1 && other.len() == 1 {
        let v = iso_rankone(&fs[0], &other[0]);
        out.check_eq("symmetric", both.clone(), v.isomorphic, iso_rankone(&other[0], &fs[0]).isomorphic);
        out.check_eq("reflexive", both.clone(), true, iso_rankone(&fs[0], &fs[0]).isomorphic);
        v
    } else {
        let hw = job.hw("0,0,0", 0, 0)?;
        let src = job.cfg.against_hw.get_or_insert_with(|| job.cfg.hw.clone().unwrap_or_default()).clone();
        let (eta, eps, theta) = Job::hw_triple(&src)?;
        let hw2 = HwParams::new(eta, eps, theta, hw.level_cutoff, hw.f0_cutoff);
        let a = tensor_params(job, fs, hw)?;
        let b = tensor_params(job, other, hw2)?;
        let v = iso_tensor(&a, &b).map_err(|e| config_err(e.to_string()))?;
        let back = iso_tensor(&b, &a).map_err(|e| config_err(e.to_string()))?;
        out.check_eq("symmetric", both.clone(), v.isomorphic, back.isomorphic);
        v
    };
    out.check_eq("witness present iff isomorphic", both, verdict.isomorphic, verdict.witness.is_some());
    out.result("iso", verdict_json(&verdict));
    Ok(())
}

// ------------------------------------------------------------ verify-axioms

fn verify_axioms(job: &mut Job, out: &mut Builder) -> Result<()> {
    let bound = job.mode_bound(2)?;
    let max_p = job.max_p(2)?;
    let max_q = job.max_q(2)?;
    let samples = job.samples(3)?;
    let gens = Generator::all_up_to(bound);

    let mut bad = 0;
    let mut triples = 0;
    for &x in &gens {
        for &y in &gens {
            if !(&bracket_gen(x, y) + &bracket_gen(y, x)).is_zero() {
                bad += 1;
            }
            let xy = bracket_gen(x, y);
            for &z in &gens {
                let j = &(&bracket(&gen(x), &bracket_gen(y, z)) + &bracket(&gen(y), &bracket_gen(z, x))) + &bracket(&gen(z), &xy);
                if !j.is_zero() {
                    bad += 1;
                }
                triples += 1;
            }
        }
    }
    out.check("lie algebra: antisymmetry and Jacobi", json!({ "mode_bound": bound, "triples": triples }), 0, bad, bad == 0);

    let families: Vec<Family> = if job.cfg.family.is_some() || !job.cfg.params.is_empty() { vec![job.family()?] } else { Family::ALL.to_vec() };
    let mut tuples: Vec<FamilyParams> = Vec::new();
    if job.cfg.params.is_empty() {
        for &f in &families {
            for _ in 0..samples {
                let l = sample::nonzero(&mut job.rng);
                let mut p = job.sampled_factor(f, l);
                p.beta = sample::scalar(&mut job.rng);
                tuples.push(p);
            }
        }
    } else {
        let fam = job.family()?;
        tuples = job.cfg.params.iter().map(|s| parse_factor(s, fam)).collect::<Result<_>>()?;
    }
    for p in &tuples {
        let mut bad = 0;
        for a in 0..=max_p {
            for b in 0..=max_q {
                let g = Poly2::monomial(a, b);
                for &x in &gens {
                    for &y in &gens {
                        let lhs = act_rankone_element(&bracket_gen(x, y), p, &g);
                        let mut rhs = act_rankone(x, p, &act_rankone(y, p, &g));
                        rhs.add_scaled(&act_rankone(y, p, &act_rankone(x, p, &g)), &-Scalar::ONE);
                        if lhs != rhs {
                            bad += 1;
                        }
                    }
                }
            }
        }
        out.check(format!("rank-one module axiom {}", p.family), json!(format_factor(p)), 0, bad, bad == 0);
    }

    let hw = job.hw("1,3,1/2", 2, 2)?;
    let verma = HwModule::verma(hw.clone());
    let mut bad = 0;
    let mut words = 0;
    for n in 0..=hw.level_cutoff {
        for w in words_of_level(n) {
            for a in 0..=hw.f0_cutoff {
                let mut fs = w.factors().to_vec();
                if a > 0 {
                    fs.push((Generator::f(0), a));
                }
                let v = HwElement::basis(PbwMonomial::new(fs));
                words += 1;
                for &x in &gens {
                    for &y in &gens {
                        let mut lhs = HwElement::zero();
                        for (z, c) in &bracket_gen(x, y) {
                            lhs.add_scaled(&verma.verma_act(*z, &v), c);
                        }
                        let mut rhs = verma.verma_act(x, &verma.verma_act(y, &v));
                        rhs.add_scaled(&verma.verma_act(y, &verma.verma_act(x, &v)), &-Scalar::ONE);
                        if lhs != rhs {
                            bad += 1;
                        }
                    }
                }
            }
        }
    }
    out.check("Verma module axiom", json!({ "hw": job.cfg.hw, "words": words }), 0, bad, bad == 0);
    Ok(())
}

// ------------------------------------------------------------ det-check

fn det_check(job: &mut Job, out: &mut Builder) -> Result<()> {
    let max_m = Job::positive(*job.cfg.max_m.get_or_insert(3), "max_m")?;
    let max_size = Job::positive(*job.cfg.max_size.get_or_insert(3), "max_size")?;
    let max_r = *job.cfg.max_r.get_or_insert(2);
    let samples = job.samples(3)?;
    for m in 1..=max_m {
        let count = (max_size as usize).pow(m as u32);
        for code in 0..count {
            let mut c = code;
            let sizes: Vec<u32> = (0..m)
                .map(|_| {
                    let s = (c % max_size as usize) as u32 + 1;
                    c /= max_size as usize;
                    s
                })
                .collect();
            for r in 0..=max_r {
                for _ in 0..samples {
                    let ls = sample::distinct(&mut job.rng, m);
                    let closed = vandermonde_closed_form(&ls, &sizes, r)?;
                    let det = vandermonde_matrix(&ls, &sizes, r)?.det().expect("square");
                    let inputs = json!({
                        "lambdas": ls.iter().map(|l| l.to_string()).collect::<Vec<_>>(),
                        "sizes": sizes,
                        "r": r,
                    });
                    out.check_eq(format!("vandermonde m={m} sizes={sizes:?} r={r}"), inputs, closed.to_string(), det.to_string());
                }
            }
        }
    }
    Ok(())
}

// ------------------------------------------------------------ reduce

fn reduce(job: &mut Job, out: &mut Builder) -> Result<()> {
    let fs = job.factors(1, false)?;
    let m = fs.len();
    let hw = job.hw("0,0,0", 2, 2)?;
    let t = tensor(job, fs.clone(), hw)?;
    let g = job.element(m, || {
        let mut e = vec![1; 2 * m];
        e[m..].iter_mut().for_each(|q| *q = 1);
        TensorElement::basis((e, PbwMonomial::vh()))
    })?;
    if g.is_zero() {
        return Err(config_err("reduce needs a nonzero element"));
    }
    let irreducible = is_irreducible_tensor(t.params()).unwrap_or(false);
    let trace = reduce_to_degree_zero(&t, &g, 1000)?;
    for (k, w) in trace.steps.windows(2).enumerate() {
        let (a, b) = (degree(&w[0]), degree(&w[1]));
        out.check(format!("step {} lowers the degree", k + 1), json!(element_text(&w[0])), "lower", json!({ "from": a, "to": b }), b < a);
    }
    let expected = if irreducible { json!(true) } else { json!("any") };
    out.check("reaches degree zero", factors_json(&fs), expected, trace.reached_zero_degree, !irreducible || trace.reached_zero_degree);
    let steps: Vec<Value> = trace.steps.iter().map(|s| json!({ "degree": degree_json(s), "element": element_text(s) })).collect();
    out.result("irreducible", irreducible);
    out.result("reached_zero_degree", trace.reached_zero_degree);
    out.result("trace", steps);
    Ok(())
}

// ------------------------------------------------------------ closure

fn closure(job: &mut Job, out: &mut Builder) -> Result<()> {
    let fs = job.factors(1, false)?;
    let m = fs.len();
    let window = Window {
        max_p: job.max_p(2)?,
        max_q: job.max_q(2)?,
        max_level: job.level(1),
        mode_bound: job.mode_bound(1)?,
        max_dim: *job.cfg.window.max_dim.get_or_insert(500),
    };
    let hw = job.hw("0,0,0", window.max_level, 2)?;
    let t = tensor(job, fs.clone(), hw)?;
    let g = job.element(m, || one_vh(m))?;
    let c = cyclic_closure(&t, &g, window)?;
    let inputs = json!({ "factors": factors_json(&fs), "seed": element_text(&g) });
    out.check_eq("stabilized within window", inputs.clone(), true, c.stabilized);
    if m == 1 && t.hw().is_trivial() {
        if let Some(ideal) = theta_ideal_generator(&fs[0].beta).filter(|_| fs[0].family == Family::Theta) {
            let poly = |v: &TensorElement| -> Poly2 { v.iter().map(|((e, _), c)| ((e[0], e[1]), c.clone())).collect() };
            if in_t_ideal(&poly(&g), &ideal) {
                let inside = c.basis.iter().all(|v| in_t_ideal(&poly(v), &ideal));
                out.check_eq("closure stays in the theta ideal", inputs.clone(), true, inside);
            }
        }
    }
    out.result("dimension", c.dim());
    out.result("stabilized", c.stabilized);
    out.result("dropped", c.dropped);
    out.result("contains_one_vh", c.contains(&one_vh(m)));
    out.result("basis", c.basis.iter().map(element_text).collect::<Vec<_>>());
    Ok(())
}

// ------------------------------------------------------------ rg

fn rg(job: &mut Job, out: &mut Builder) -> Result<()> {
    let fs = job.factors(1, false)?;
    let m = fs.len();
    let hw = job.hw("0,0,0", 2, 2)?;
    let t = tensor(job, fs.clone(), hw)?;
    let g = job.element(m, || one_vh(m))?;
    if g.is_zero() {
        return Err(config_err("R_g needs a nonzero element"));
    }
    let r = r_invariant(&t, &g)?;
    let inputs = json!({ "factors": factors_json(&fs), "element": element_text(&g) });
    if is_degree_zero(&g) {
        out.check_eq("R_g = m+1 on degree zero", inputs, m + 1, r);
    } else {
        out.check("R_g >= m+2 on positive degree", inputs, format!(">= {}", m + 2), r, r >= m + 2);
    }
    out.result("R_g", r);
    Ok(())
}

// ------------------------------------------------------------ wl-check

fn wl_check(job: &mut Job, out: &mut Builder) -> Result<()> {
    let fs = job.factors(2, true)?;
    let l = *job.cfg.l.get_or_insert(0);
    if l < 0 {
        return Err(config_err(format!("l must be non-negative, got {l}")));
    }
    let window = WlWindow { max_s: job.max_p(2)?, max_t: job.max_q(1)?, mode_bound: job.mode_bound(2)? };
    let t = tensor(job, fs.clone(), HwParams::trivial(0, 0))?;
    let r = wl_submodule_check(&t, l as u32, window)?;
    let inputs = json!({ "factors": factors_json(&fs), "l": l });
    out.check("W_l is invariant", inputs.clone(), 0, r.failures.len(), r.failures.is_empty());
    out.check_eq(format!("s2^{} outside W_l", l + 1), inputs.clone(), true, r.witness_outside);
    out.check_eq("W_l strictly inside W_(l+1)", inputs, true, r.strict_inclusion);
    out.result("images_checked", r.checked);
    out.result("s2_in_W_l", r.s2_inside);
    if let Some((x, g)) = r.failures.first() {
        out.result("first_failure", json!({ "generator": x.to_string(), "element": element_text(g) }));
    }
    Ok(())
}

// ------------------------------------------------------------ omega

fn omega(job: &mut Job, out: &mut Builder) -> Result<()> {
    let fs = job.factors(2, false)?;
    let m = fs.len();
    let hw = job.hw("0,0,0", 2, 2)?;
    let l = *job.cfg.l.get_or_insert(4);
    let j = *job.cfg.j.get_or_insert(-1);
    let r = *job.cfg.r.get_or_insert(3);
    let t = tensor(job, fs.clone(), hw)?;
    let g = job.element(m, || one_vh(m))?;
    let w = omega_operator(&t, l, j, r, &g)?;
    let inputs = json!({ "factors": factors_json(&fs), "l": l, "j": j, "r": r });
    let fd_bad = (0..r).filter(|&jj| !finite_difference(r, jj).is_zero()).count();
    out.check("finite differences vanish below r", json!({ "r": r }), 0, fd_bad, fd_bad == 0);
    if m == 2 && t.hw().is_trivial() && g == one_vh(2) {
        let vh = PbwMonomial::vh();
        let got = w.coeff(&(vec![1, 1, 0, 0], vh.clone()));
        let closed = omega_s1s2_closed_form(&fs[0].lambda, &fs[1].lambda, l, j, r);
        out.check_eq("s1*s2 coefficient matches closed form", inputs.clone(), closed.to_string(), got.to_string());
        if r > 2 {
            let single = [[2, 0, 0, 0], [0, 2, 0, 0]].iter().filter(|e| !w.coeff(&(e.to_vec(), vh.clone())).is_zero()).count();
            out.check("single-slot quadratics vanish", inputs, 0, single, single == 0);
        }
    }
    out.result("result", element_text(&w));
    Ok(())
}

// ------------------------------------------------------------ locfin

fn locfin(job: &mut Job, out: &mut Builder) -> Result<()> {
    let fs = job.factors(1, false)?;
    let m = fs.len();
    let hw = job.hw("0,0,0", 2, 2)?;
    let t = tensor(job, fs.clone(), hw)?;
    let g = job.element(m, || one_vh(m))?;
    let bound = t.annihilation_bound(&g)?;
    let i = *job.cfg.i.get_or_insert(bound);
    let depth = *job.cfg.depth.get_or_insert(4);
    let ranks = local_finiteness_probe(&t, &g, i, depth)?;
    let inputs = json!({ "factors": factors_json(&fs), "element": element_text(&g), "i": i, "depth": depth });
    if !g.is_zero() {
        let increasing = ranks.windows(2).all(|w| w[1] > w[0]);
        out.check_eq("ranks strictly increase", inputs, true, increasing);
    }
    out.result("ranks", ranks);
    out.result("annihilation_bound", bound);
    Ok(())
}

// ------------------------------------------------------------ hw-quotient

fn hw_quotient(job: &mut Job, out: &mut Builder) -> Result<()> {
    let hw = job.hw("0,0,0", 2, 2)?;
    let bound = job.mode_bound(2)?;
    let module = HwModule::irreducible_via_gram(hw);
    let reports: Vec<Value> = module
        .weight_reports()
        .into_iter()
        .map(|w| {
            json!({
                "level": w.level,
                "h0_weight": w.h0_weight.to_string(),
                "dimension": w.dimension,
                "radical_dimension": w.radical_dimension,
                "basis": w.basis.iter().map(|b| b.to_string()).collect::<Vec<_>>(),
            })
        })
        .collect();
    let inputs = json!({ "hw": job.cfg.hw, "mode_bound": bound });
    match module.check_radical_invariance(&Generator::all_up_to(bound)) {
        Ok(n) => out.check("radical is invariant", inputs, "invariant", json!({ "images": n }), true),
        Err(e) => out.check("radical is invariant", inputs, "invariant", e, false),
    }
    out.result("dimension", module.truncated_dimension());
    out.result("weight_spaces", reports);
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factor_text_round_trips() {
        let p = parse_factor("2,3,3/2,i", Family::Theta).unwrap();
        assert_eq!(p.beta, Scalar::ratio(3, 2));
        assert_eq!(p.gamma, Scalar::I);
        assert_eq!(parse_factor(&format_factor(&p), Family::Omega).unwrap(), p);
    }

    #[test]
    fn factor_prefix_overrides_family() {
        assert_eq!(parse_factor("Delta:1,1,0,0", Family::Omega).unwrap().family, Family::Delta);
        assert!(parse_factor("Sigma:1,1,0,0", Family::Omega).is_err());
    }

    #[test]
    fn bad_factors_are_config_errors() {
        assert!(parse_factor("1,1,0", Family::Omega).is_err());
        assert!(parse_factor("0,1,0,0", Family::Omega).is_err());
        assert!(parse_factor("1,0,0,0", Family::Omega).is_err());
    }

    #[test]
    fn sampled_parameters_are_written_back() {
        let cfg = JobConfig { command: Some(Command::Rg), m: Some(2), ..JobConfig::default() };
        let report = dispatch(cfg).unwrap();
        assert_eq!(report.config.params.len(), 2);
        assert_eq!(report.summary["R_g"], 3);
        let again = dispatch(report.config.clone()).unwrap();
        assert_eq!(again.to_json(), report.to_json());
    }
}

//! Acceptance suites. Every check records the expected value, the computed
//! value and where the expectation comes from; independent checks run in
//! parallel but the report keeps a fixed order.

use std::fmt::{self, Display};
use std::str::FromStr;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::{int, rat, render_rational, CoefficientRing, LaurentPoly, Monomial, Rational, Vars};
use crate::catalog::{
    bfdiff_away_from_2, bg2_twisted, bg_groups_dims, bg_rational_presentation, circle_pullback, connectivity_check,
    derive_psi_star, kernel_generator, main2_generators, mayer_vietoris_stage, psi_star, strata,
    twisted_change_of_variables, IsometryGroup, SurfaceFamily,
};
use crate::graded::{DegreewiseDims, Field, HilbertSeries, RingMap};
use crate::localization::{
    ab_vars, atiyah_bott_index, euler_class, h01_character_standard, invariant_vars, isotropy_rep_name, split_index,
    verify_euler_nzd, xy_vars,
};
use crate::torus::shear_equivalent_circles;

pub const DEFAULT_MAX_DEGREE: usize = 30;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Index,
    Dimensions,
    Characters,
    Euler,
    Psi,
    Presentations,
    Twisted,
    Bases,
    Circles,
    Connectivity,
    Maps,
}

impl Suite {
    pub const ALL: [Suite; 11] = [
        Suite::Index,
        Suite::Dimensions,
        Suite::Characters,
        Suite::Euler,
        Suite::Psi,
        Suite::Presentations,
        Suite::Twisted,
        Suite::Bases,
        Suite::Circles,
        Suite::Connectivity,
        Suite::Maps,
    ];

    pub fn label(self) -> &'static str {
        match self {
            Suite::Index => "index",
            Suite::Dimensions => "dimensions",
            Suite::Characters => "characters",
            Suite::Euler => "euler",
            Suite::Psi => "psi",
            Suite::Presentations => "presentations",
            Suite::Twisted => "twisted",
            Suite::Bases => "bases",
            Suite::Circles => "circles",
            Suite::Connectivity => "connectivity",
            Suite::Maps => "maps",
        }
    }

    /// Parses a suite name; `all` expands to every suite.
    pub fn parse_list(s: &str) -> Result<Vec<Suite>, String> {
        if s == "all" {
            return Ok(Suite::ALL.to_vec());
        }
        s.split(',').map(|p| p.trim().parse()).collect()
    }
}

impl Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Suite::ALL
            .into_iter()
            .find(|x| x.label() == s)
            .ok_or_else(|| format!("unknown suite '{s}'"))
    }
}

/// Where the expected value of a check comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Source {
    /// A closed form built term by term.
    ClosedForm,
    /// A second, independent computation of the same object.
    Derived,
    /// A structural identity such as rank-nullity.
    Identity,
}

impl Source {
    pub fn label(self) -> &'static str {
        match self {
            Source::ClosedForm => "closed-form",
            Source::Derived => "derived",
            Source::Identity => "identity",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Ok,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub suite: Suite,
    pub name: String,
    pub expected: String,
    pub actual: String,
    pub source: Source,
    pub passed: bool,
    pub elapsed_ms: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub status: Status,
    pub max_degree: usize,
    pub seed: u64,
    pub suites: Vec<Suite>,
    pub checks: Vec<Check>,
    pub elapsed_ms: u64,
}

impl Report {
    pub fn passed(&self) -> usize {
        self.checks.iter().filter(|c| c.passed).count()
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    /// Copy with timing fields zeroed, for comparing runs.
    pub fn without_timing(&self) -> Report {
        let mut r = self.clone();
        r.elapsed_ms = 0;
        for c in &mut r.checks {
            c.elapsed_ms = 0;
        }
        r
    }

    /// One line per check; failures also show expected and actual values.
    pub fn table(&self) -> String {
        let width = self.checks.iter().map(|c| c.name.len()).max().unwrap_or(0);
        let mut out = String::new();
        for c in &self.checks {
            let mark = if c.passed { "ok  " } else { "FAIL" };
            out += &format!(
                "{mark} {:<13} {:<width$} {:<11} {:>6} ms\n",
                c.suite.label(),
                c.name,
                c.source.label(),
                c.elapsed_ms
            );
            if !c.passed {
                out += &format!("       expected: {}\n       actual:   {}\n", c.expected, c.actual);
            }
        }
        out += &format!(
            "{}: {}/{} checks passed in {} ms\n",
            match self.status {
                Status::Ok => "ok",
                Status::Fail => "FAIL",
            },
            self.passed(),
            self.checks.len(),
            self.elapsed_ms
        );
        out
    }
}

struct Outcome {
    name: String,
    expected: String,
    actual: String,
    source: Source,
}

fn eq(name: impl Into<String>, source: Source, expected: impl Display, actual: impl Display) -> Outcome {
    Outcome {
        name: name.into(),
        expected: expected.to_string(),
        actual: actual.to_string(),
        source,
    }
}

type JobResult = Result<Vec<Outcome>, String>;

struct Job {
    suite: Suite,
    /// Name used if the job fails before producing outcomes.
    name: String,
    source: Source,
    run: Box<dyn Fn() -> JobResult + Send + Sync>,
}

fn job<F>(suite: Suite, name: impl Into<String>, source: Source, run: F) -> Job
where
    F: Fn() -> JobResult + Send + Sync + 'static,
{
    Job {
        suite,
        name: name.into(),
        source,
        run: Box::new(run),
    }
}

fn err(e: impl Display) -> String {
    e.to_string()
}

pub fn run_suites(suites: &[Suite], max_degree: usize, seed: u64) -> Report {
    let start = Instant::now();
    let jobs: Vec<Job> = suites.iter().flat_map(|&s| jobs_for(s, max_degree, seed)).collect();
    let checks: Vec<Check> = jobs
        .par_iter()
        .map(|j| {
            let t = Instant::now();
            let result = (j.run)();
            let elapsed_ms = t.elapsed().as_millis() as u64;
            match result {
                Ok(outcomes) => outcomes
                    .into_iter()
                    .map(|o| Check {
                        suite: j.suite,
                        passed: o.expected == o.actual,
                        name: o.name,
                        expected: o.expected,
                        actual: o.actual,
                        source: o.source,
                        elapsed_ms,
                    })
                    .collect(),
                Err(e) => vec![Check {
                    suite: j.suite,
                    name: j.name.clone(),
                    expected: "success".into(),
                    actual: format!("error: {e}"),
                    source: j.source,
                    passed: false,
                    elapsed_ms,
                }],
            }
        })
        .collect::<Vec<Vec<Check>>>()
        .into_iter()
        .flatten()
        .collect();
    let status = if checks.iter().all(|c| c.passed) {
        Status::Ok
    } else {
        Status::Fail
    };
    Report {
        status,
        max_degree,
        seed,
        suites: suites.to_vec(),
        checks,
        elapsed_ms: start.elapsed().as_millis() as u64,
    }
}

fn jobs_for(suite: Suite, max: usize, seed: u64) -> Vec<Job> {
    use Source::*;
    let families = [SurfaceFamily::Untwisted, SurfaceFamily::Twisted];
    let mut out = Vec::new();
    match suite {
        Suite::Index => {
            for n in 0..=12u32 {
                out.push(job(suite, format!("I({n})"), ClosedForm, move || {
                    let i = atiyah_bott_index(n).map_err(err)?;
                    Ok(vec![eq(format!("I({n})"), ClosedForm, closed_index(n), i.value())])
                }));
            }
        }
        Suite::Dimensions => {
            for n in 1..=12u32 {
                out.push(job(suite, format!("dims I({n})"), ClosedForm, move || {
                    let s = split_index(&atiyah_bott_index(n).map_err(err)?).map_err(err)?;
                    Ok(vec![
                        eq(format!("dim H0 part, n={n}"), ClosedForm, n + 5, render_rational(&s.positive_dimension())),
                        eq(format!("dim H1 part, n={n}"), ClosedForm, n - 1, render_rational(&s.negative_dimension())),
                    ])
                }));
            }
        }
        Suite::Characters => {
            for n in 2..=12u32 {
                out.push(job(suite, format!("H01 character n={n}"), ClosedForm, move || {
                    let chi = h01_character_standard(n).map_err(err)?;
                    let name = isotropy_rep_name(n).map_err(err)?;
                    Ok(vec![
                        eq(format!("H01 character n={n}"), ClosedForm, closed_standard(n), chi.value()),
                        eq(format!("{name} character n={n}"), Derived, name.character(), chi.value()),
                    ])
                }));
            }
        }
        Suite::Euler => {
            for n in 2..=12u32 {
                out.push(job(suite, format!("e_{n}"), ClosedForm, move || {
                    let e = euler_class(n).map_err(err)?;
                    let (family, k) = if n % 2 == 0 {
                        (SurfaceFamily::Untwisted, n / 2)
                    } else {
                        (SurfaceFamily::Twisted, (n - 1) / 2)
                    };
                    let codim = strata(&int(i64::from(k) + 1), family)
                        .map_err(err)?
                        .codims
                        .last()
                        .map_or(0, |c| c.1);
                    let mut v = vec![
                        eq(format!("e_{n}"), ClosedForm, closed_euler(n), &e.value),
                        eq(format!("deg e_{n} = codim"), Derived, codim, e.degree().unwrap_or(-1)),
                    ];
                    for r in [CoefficientRing::Rationals, CoefficientRing::F2, CoefficientRing::F3] {
                        let nzd = verify_euler_nzd(n, r).map_err(err)?;
                        v.push(eq(format!("e_{n} non-zero-divisor over {}", r.label()), Identity, true, nzd));
                    }
                    Ok(v)
                }));
            }
        }
        Suite::Psi => {
            for n in 2..=12u32 {
                out.push(job(suite, format!("psi_{n} derived"), Derived, move || {
                    let d = derive_psi_star(n).map_err(err)?;
                    Ok(vec![eq(format!("psi_{n} derived"), Derived, psi_star(n), d)])
                }));
            }
            let d = max.min(24);
            for n in 0..=8u32 {
                out.push(job(suite, format!("ker psi_{n}"), Identity, move || {
                    let c = psi_star(n).kernel_certificate(&[kernel_generator(n)], d).map_err(err)?;
                    Ok(vec![
                        eq(format!("ker psi_{n} contains generator"), Identity, true, c.candidates_in_kernel),
                        eq(format!("ker psi_{n} = ideal through {d}"), Identity, c.ideal, c.kernel),
                    ])
                }));
            }
        }
        Suite::Presentations => {
            for family in families {
                for l in 0..=5u32 {
                    out.push(job(suite, format!("BG {family} l={l}"), Derived, move || {
                        let lambda = int(i64::from(l) + 1);
                        let p = bg_rational_presentation(&lambda, family, max).map_err(err)?;
                        let closed = HilbertSeries::from_degrees(&[2, 4, 4], &[p.relation.degree()]);
                        let mut v = vec![
                            eq(format!("{family} l={l} hilbert series"), ClosedForm, &closed, &p.hilbert_series),
                            eq(format!("{family} l={l} dims"), ClosedForm, closed.dims(max).map_err(err)?, &p.dims),
                            eq(
                                format!("{family} l={l} groups over Q"),
                                Derived,
                                bg_groups_dims(&lambda, family, CoefficientRing::Rationals, max).map_err(err)?,
                                &p.dims,
                            ),
                        ];
                        if let Some(fp) = &p.fiber_product_dims {
                            v.push(eq(format!("{family} l={l} fiber product"), Identity, &p.dims, fp));
                            let s = mayer_vietoris_stage(l, family, Field::F2, max).map_err(err)?;
                            v.push(eq(
                                format!("{family} l={l} fiber product mod 2"),
                                Identity,
                                &s.expected,
                                &s.fiber_product,
                            ));
                        }
                        Ok(v)
                    }));
                }
            }
        }
        Suite::Twisted => {
            out.push(job(suite, "change of variables", Derived, || {
                let c = twisted_change_of_variables().map_err(err)?;
                let ks: Vec<String> = c.checked.iter().map(u32::to_string).collect();
                Ok(vec![eq("change of variables k <= 8", Derived, "0,1,2,3,4,5,6,7,8", ks.join(","))])
            }));
            out.push(job(suite, "BG_2 twisted", Derived, move || {
                let b = bg2_twisted(max).map_err(err)?;
                let mut v: Vec<Outcome> = b
                    .checks
                    .iter()
                    .map(|(name, ok)| eq(format!("BG_2 {name}"), Identity, true, ok))
                    .collect();
                v.push(eq("BG_2 fiber product", Identity, &b.expected, &b.fiber_product));
                Ok(v)
            }));
        }
        Suite::Bases => {
            for l in 0..=4u32 {
                out.push(job(suite, format!("module basis l={l}"), Identity, move || {
                    let m = main2_generators(l, max).map_err(err)?;
                    Ok(vec![eq(
                        format!("module basis l={l} closes"),
                        Identity,
                        format!("{} + {} generators", l + 1, l),
                        format!("{} + {} generators", m.a.len(), m.b.len()),
                    )])
                }));
            }
            out.push(job(suite, "away from 2", Identity, || {
                let r = bfdiff_away_from_2(4).map_err(err)?;
                let mut v: Vec<Outcome> = r
                    .stages
                    .iter()
                    .map(|s| eq(format!("away from 2: stage {} ({})", s.stage, s.name), Identity, "pass", "pass"))
                    .collect();
                v.push(eq("involution ansatz (a, b)", Derived, "(1, 0)", format!("({}, {})", r.ansatz.a, r.ansatz.b)));
                Ok(v)
            }));
        }
        Suite::Circles => {
            for k in 0..=8u32 {
                for l in (k..=8).step_by(2) {
                    out.push(job(suite, format!("circles F_{k} ~ F_{l}"), Derived, move || {
                        let n = k.max(l);
                        let base = if n % 2 == 0 { (n / 2).max(1) } else { (n - 1) / 2 };
                        let lambda = int(i64::from(base)) + rat(1, 2);
                        let s = shear_equivalent_circles(k, l, &lambda).map_err(err)?;
                        let t = shear_equivalent_circles(l, k, &lambda).map_err(err)?;
                        Ok(vec![eq(
                            format!("circles F_{k} ~ F_{l} at {}", render_rational(&lambda)),
                            Derived,
                            true,
                            s.invariant == t.invariant,
                        )])
                    }));
                }
            }
        }
        Suite::Connectivity => {
            for family in families {
                for (i, (lambda, mu)) in random_pairs(seed, family).into_iter().enumerate() {
                    let name = format!("{family} pair {i}: {} <= {}", render_rational(&lambda), render_rational(&mu));
                    out.push(job(suite, name.clone(), Identity, move || {
                        let mut v = Vec::new();
                        for r in [CoefficientRing::Rationals, CoefficientRing::F2] {
                            let ok = connectivity_check(&lambda, &mu, family, r, max).map_err(err)?;
                            v.push(eq(format!("{name} over {}", r.label()), Identity, true, ok));
                        }
                        Ok(v)
                    }));
                }
            }
        }
        Suite::Maps => {
            for n in 0..=8u32 {
                out.push(job(suite, format!("rank-nullity psi_{n}"), Identity, move || {
                    Ok(vec![rank_nullity(&format!("rank-nullity psi_{n}"), &psi_star(n), max)?])
                }));
            }
            for g in [IsometryGroup::So3xSo3, IsometryGroup::S1xSo3, IsometryGroup::U2] {
                for d in [[1, 0], [0, 1], [2, 1], [1, -1]] {
                    out.push(job(suite, format!("rank-nullity {g} {d:?}"), Identity, move || {
                        Ok(vec![rank_nullity(&format!("rank-nullity {g} circle {d:?}"), &circle_pullback(g, d), max)?])
                    }));
                }
            }
            for family in families {
                for l in 1..=5u32 {
                    for field in [Field::F2, Field::F3] {
                        out.push(job(suite, format!("{family} stage {l} over {}", field.label()), Identity, move || {
                            let s = mayer_vietoris_stage(l, family, field, max).map_err(err)?;
                            Ok(vec![eq(
                                format!("{family} stage {l} over {}", field.label()),
                                Identity,
                                &s.expected,
                                &s.fiber_product,
                            )])
                        }));
                    }
                }
            }
        }
    }
    out
}

fn rank_nullity(name: &str, f: &RingMap, max: usize) -> Result<Outcome, String> {
    let k = f.kernel_dims(max).map_err(err)?;
    let i = f.image_dims(max).map_err(err)?;
    let sum = DegreewiseDims((0..=max).map(|d| k.get(d) + i.get(d)).collect());
    Ok(eq(name, Source::Identity, f.source().dims(max).map_err(err)?, sum))
}

/// Ten pairs `lambda <= mu` in the same chamber or beyond, from a fixed seed.
pub fn random_pairs(seed: u64, family: SurfaceFamily) -> Vec<(Rational, Rational)> {
    let salt = match family {
        SurfaceFamily::Untwisted => 0,
        SurfaceFamily::Twisted => 1,
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_mul(2).wrapping_add(salt));
    (0..10)
        .map(|_| {
            let q = rng.gen_range(1..=6);
            let lambda = rat(rng.gen_range(1..=6 * q), q);
            let s = rng.gen_range(1..=4);
            let mu = &lambda + &rat(rng.gen_range(0..=8 * s), s);
            (lambda, mu)
        })
        .collect()
}

fn mono(v: &Vars, e: &[i64]) -> LaurentPoly {
    LaurentPoly::monomial(v, Monomial::new(e.to_vec()))
}

/// `2 + y + 1/y` plus the fixed-point contributions, as displayed.
pub fn closed_index(n: u32) -> LaurentPoly {
    let v = xy_vars();
    let n = i64::from(n);
    let mut out = LaurentPoly::integer(&v, 2) + mono(&v, &[0, 1]) + mono(&v, &[0, -1]);
    match n {
        0 => out + mono(&v, &[1, 0]) + mono(&v, &[-1, 0]),
        1 => out + mono(&v, &[-1, -1]) + mono(&v, &[-1, 0]),
        _ => {
            for j in 0..=n {
                out = out + mono(&v, &[-1, j - n]);
            }
            for j in 0..=n - 2 {
                out = out - mono(&v, &[1, 1 + j]);
            }
            out
        }
    }
}

pub fn closed_standard(n: u32) -> LaurentPoly {
    let v = ab_vars();
    let n = i64::from(n);
    let mut out = LaurentPoly::zero(&v);
    if n % 2 == 1 {
        let e = -(n - 3) / 2;
        for j in 0..=n - 2 {
            out = out + mono(&v, &[e + j, e + n - 2 - j]);
        }
    } else {
        for j in 1 - n / 2..n / 2 {
            out = out + mono(&v, &[1, j]);
        }
    }
    out
}

pub fn closed_euler(n: u32) -> LaurentPoly {
    let v = invariant_vars();
    let n = i64::from(n);
    let a = mono(&v, &[1, 0]);
    let x = mono(&v, &[0, 1]);
    let a2 = &a * &a;
    if n % 2 == 1 {
        (1..=(n - 1) / 2).fold(LaurentPoly::one(&v), |acc, i| {
            &acc * &(&x.scale_int((2 * i - 1) * (2 * i - 1)) - &a2.scale_int(i * (i - 1)))
        })
    } else {
        (1..n / 2).fold(a.clone(), |acc, i| &acc * &(&a2 - &x.scale_int(i * i)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_parse() {
        assert_eq!(Suite::parse_list("all").unwrap().len(), 11);
        assert_eq!(Suite::parse_list("index,euler").unwrap(), vec![Suite::Index, Suite::Euler]);
        assert!(Suite::parse_list("nope").is_err());
    }

    #[test]
    fn small_suites_pass_and_are_deterministic() {
        let a = run_suites(&[Suite::Index, Suite::Dimensions, Suite::Connectivity], 12, 7);
        assert_eq!(a.status, Status::Ok, "{}", a.table());
        let b = run_suites(&[Suite::Index, Suite::Dimensions, Suite::Connectivity], 12, 7);
        assert_eq!(a.without_timing(), b.without_timing());
    }

    #[test]
    fn pairs_are_ordered() {
        for f in [SurfaceFamily::Untwisted, SurfaceFamily::Twisted] {
            let p = random_pairs(3, f);
            assert_eq!(p.len(), 10);
            assert!(p.iter().all(|(l, m)| l <= m && *l > int(0)));
        }
    }
}

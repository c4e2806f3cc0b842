//! Seeded invariant suites behind `commgroup selftest`.

use std::fmt::Write as _;
use std::thread;

use commgroup::homology::{free_case_complex, injectivity_truncation_check, surface_case_complex};
use commgroup::module::{
    abelianize_free, act_monomial, braces, filtration_project, fox_of_element, fox_vector,
    koszul_relation_check, relator_class, surface_quotient,
};
use commgroup::sample::{self, Stream};
use commgroup::{rewrite, rewrite_surface, SurfacePresentation};
use serde_json::{json, Value};

use crate::Global;

type Check = Result<(), String>;

pub struct SuiteResult {
    name: &'static str,
    cases: usize,
    failures: usize,
    first_failure: Option<String>,
}

pub struct Report {
    suites: Vec<SuiteResult>,
}

impl Report {
    pub fn all_passed(&self) -> bool {
        self.suites.iter().all(|s| s.failures == 0)
    }

    pub fn table(&self) -> String {
        let mut out = String::new();
        writeln!(out, "{:<22} {:>6} {:>6}  result", "suite", "cases", "failed").unwrap();
        for s in &self.suites {
            let verdict = if s.failures == 0 { "pass" } else { "FAIL" };
            writeln!(out, "{:<22} {:>6} {:>6}  {verdict}", s.name, s.cases, s.failures).unwrap();
            if let Some(f) = &s.first_failure {
                writeln!(out, "    first failure: {f}").unwrap();
            }
        }
        let passed = self.suites.iter().filter(|s| s.failures == 0).count();
        writeln!(out, "{passed}/{} suites passed", self.suites.len()).unwrap();
        out
    }

    pub fn json(&self) -> Value {
        let suites: Vec<Value> = self
            .suites
            .iter()
            .map(|s| {
                json!({
                    "suite": s.name,
                    "cases": s.cases,
                    "failed": s.failures,
                    "first_failure": s.first_failure,
                })
            })
            .collect();
        json!({"passed": self.all_passed(), "suites": suites})
    }
}

fn tally(name: &'static str, checks: impl IntoIterator<Item = Check>) -> SuiteResult {
    let mut result = SuiteResult {
        name,
        cases: 0,
        failures: 0,
        first_failure: None,
    };
    for c in checks {
        result.cases += 1;
        if let Err(e) = c {
            result.failures += 1;
            result.first_failure.get_or_insert(e);
        }
    }
    result
}

fn check(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn free_round_trip(cfg: &Global) -> SuiteResult {
    let mut rng = sample::rng(cfg.seed, Stream::FreeRoundTrip);
    tally(
        "free-round-trip",
        (0..cfg.cases).map(|t| {
            let w = sample::commutator_word(&mut rng, 2 + t % 4, 40);
            let bw = rewrite(&w).map_err(|e| format!("{w}: {e}"))?;
            check(bw.expand() == w, || format!("expand(rewrite({w})) differs"))
        }),
    )
}

fn free_normal_form(cfg: &Global) -> SuiteResult {
    let mut rng = sample::rng(cfg.seed, Stream::FreeNormalForm);
    tally(
        "free-normal-form",
        (0..cfg.cases).map(|t| {
            let bw = sample::basis_word(&mut rng, 2 + t % 3, 8, 2);
            let back = rewrite(&bw.expand()).map_err(|e| e.to_string())?;
            check(back == bw, || format!("rewrite(expand({bw})) = {back}"))
        }),
    )
}

fn surface_round_trip(cfg: &Global) -> SuiteResult {
    let mut rng = sample::rng(cfg.seed, Stream::SurfaceRoundTrip);
    tally(
        "surface-round-trip",
        (0..cfg.cases).map(|t| {
            let p = SurfacePresentation::new(2 + t % 2).map_err(|e| e.to_string())?;
            let w = sample::commutator_word(&mut rng, p.rank(), 30);
            let out = rewrite_surface(&p, &w).map_err(|e| format!("{w}: {e}"))?;
            check(
                out.letters().iter().all(|(s, _)| (s.i, s.j) != (1, 2)),
                || format!("(1,2) symbol for {w}"),
            )?;
            let same = p.surface_equal(&out.expand(), &w).map_err(|e| e.to_string())?;
            check(same, || format!("surface round trip failed for {w}"))
        }),
    )
}

fn dehn(cfg: &Global) -> SuiteResult {
    let mut rng = sample::rng(cfg.seed, Stream::Dehn);
    tally(
        "dehn",
        (0..cfg.cases).map(|t| {
            let p = SurfacePresentation::new(2 + t % 2).map_err(|e| e.to_string())?;
            let r = sample::relator_product(&mut rng, &p, 5, 6);
            check(p.is_trivial(&r).map_err(|e| e.to_string())?, || {
                format!("relator product {r} declared nontrivial")
            })?;
            let v = sample::noncommutator_word(&mut rng, p.rank(), 20);
            check(!p.is_trivial(&v).map_err(|e| e.to_string())?, || {
                format!("{v} declared trivial")
            })
        }),
    )
}

fn module_action(cfg: &Global) -> SuiteResult {
    let mut rng = sample::rng(cfg.seed, Stream::Module);
    tally(
        "unit-symbols",
        (0..cfg.cases).map(|t| {
            let n = 2 + t % 3;
            let j = 2 + t % (n - 1);
            let h = sample::exponent(&mut rng, n, cfg.box_bound);
            let base = braces(n, 1, j, &vec![0; n]).map_err(|e| e.to_string())?;
            let m = act_monomial(&h, &base).map_err(|e| e.to_string())?;
            check(
                m.as_unit_symbol().is_some_and(|s| s.j == j && s.k == h),
                || format!("t^{h:?} on C[1,{j}] gives {m}"),
            )
        }),
    )
}

fn fox(cfg: &Global) -> SuiteResult {
    let mut rng = sample::rng(cfg.seed, Stream::Fox);
    tally(
        "fox",
        (0..cfg.cases).map(|t| {
            let w = sample::commutator_word(&mut rng, 2 + t % 4, 30);
            check(fox_vector(&w).fundamental_sum().is_zero(), || {
                format!("fundamental identity fails for {w}")
            })?;
            let m = abelianize_free(&w).map_err(|e| e.to_string())?;
            check(fox_of_element(&m) == fox_vector(&w), || {
                format!("Fox vector of the coordinates of {w} differs")
            })
        }),
    )
}

fn koszul(cfg: &Global) -> SuiteResult {
    let mut rng = sample::rng(cfg.seed, Stream::Koszul);
    tally(
        "koszul",
        (0..cfg.cases).map(|t| {
            let triple = [(1, 2, 3), (1, 2, 4), (1, 3, 4), (2, 3, 4)][t % 4];
            let h = sample::exponent(&mut rng, 4, cfg.box_bound);
            let m = koszul_relation_check(4, triple, &h).map_err(|e| e.to_string())?;
            check(m.is_zero(), || format!("{triple:?} at {h:?}: {m}"))
        }),
    )
}

fn well_defined(cfg: &Global) -> SuiteResult {
    let mut rng = sample::rng(cfg.seed, Stream::WellDefined);
    tally(
        "well-defined",
        (0..cfg.cases).map(|t| {
            let n = 2 + t % 3;
            let c = sample::commutator_word(&mut rng, n, 12);
            let w = sample::reduced_word(&mut rng, n, 6);
            let d = sample::commutator_word(&mut rng, n, 12);
            let a = abelianize_free(&c.conjugate_by(&w)).map_err(|e| e.to_string())?;
            let b = abelianize_free(&c.conjugate_by(&(&w * &d))).map_err(|e| e.to_string())?;
            check(a == b, || format!("c={c} w={w} d={d}"))
        }),
    )
}

fn filtration(cfg: &Global) -> SuiteResult {
    let mut rng = sample::rng(cfg.seed, Stream::Filtration);
    tally(
        "filtration",
        (0..cfg.cases).map(|t| {
            let n = 3 + t % 2;
            let h = sample::exponent(&mut rng, n, cfg.box_bound);
            let low = braces(n, 1, n, &h).map_err(|e| e.to_string())?;
            let killed = filtration_project(&low).map_err(|e| e.to_string())?;
            check(killed.is_zero(), || format!("C[1,{n}] at {h:?} survives"))?;
            let m = braces(n, 2, n, &vec![0; n]).map_err(|e| e.to_string())?;
            let moved = act_monomial(&h, &m).map_err(|e| e.to_string())?;
            let lhs = filtration_project(&moved).map_err(|e| e.to_string())?;
            let base = filtration_project(&m).map_err(|e| e.to_string())?;
            let rhs = act_monomial(&h[1..], &base).map_err(|e| e.to_string())?;
            check(lhs == rhs, || format!("projection not equivariant at {h:?}"))
        }),
    )
}

fn quotient(cfg: &Global) -> SuiteResult {
    let mut rng = sample::rng(cfg.seed, Stream::Quotient);
    tally(
        "relator-quotient",
        (0..cfg.cases).map(|t| {
            let g = 1 + t % 2;
            let rc = relator_class(g).map_err(|e| e.to_string())?;
            let h = sample::exponent(&mut rng, 2 * g, cfg.box_bound);
            let moved = act_monomial(&h, &rc).map_err(|e| e.to_string())?;
            let q = surface_quotient(&moved).map_err(|e| e.to_string())?;
            check(q.is_zero(), || format!("g={g} t^{h:?}: {q}"))
        }),
    )
}

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn homology_tables(_cfg: &Global) -> SuiteResult {
    let mut checks = Vec::new();
    for n in 2..=5 {
        checks.extend((0..=4).map(|k| -> Check {
            let h = free_case_complex(n, k)
                .and_then(|c| c.homology_at(k))
                .map_err(|e| e.to_string())?;
            check(h.betti == binomial(n, k + 2) && h.torsion.is_empty(), || {
                format!("free n={n} k={k}: {}", h.to_json())
            })
        }));
    }
    for g in 1..=3 {
        checks.extend((0..=4).map(|k| -> Check {
            let h = surface_case_complex(g, k)
                .and_then(|c| c.homology_at(k))
                .map_err(|e| e.to_string())?;
            let expected = binomial(2 * g, k + 2) - usize::from(k == 0);
            check(h.betti == expected && h.torsion.is_empty(), || {
                format!("surface g={g} k={k}: {}", h.to_json())
            })
        }));
    }
    tally("homology-tables", checks)
}

fn injectivity(cfg: &Global) -> SuiteResult {
    let bound = cfg.box_bound.min(2);
    tally(
        "injectivity",
        [1, 2].map(|g| -> Check {
            let ok = injectivity_truncation_check(g, bound).map_err(|e| e.to_string())?;
            check(ok, || format!("g={g} box {bound}: dependent columns"))
        }),
    )
}

/// Runs every suite on its own thread and reports them in a fixed order.
pub fn run(cfg: &Global) -> Report {
    let suites: [fn(&Global) -> SuiteResult; 12] = [
        free_round_trip,
        free_normal_form,
        surface_round_trip,
        dehn,
        module_action,
        fox,
        koszul,
        well_defined,
        filtration,
        quotient,
        homology_tables,
        injectivity,
    ];
    let suites = thread::scope(|scope| {
        let handles: Vec<_> = suites
            .iter()
            .map(|suite| scope.spawn(move || suite(cfg)))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("suite panicked"))
            .collect()
    });
    Report { suites }
}

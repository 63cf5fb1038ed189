//! Regression corpus: recomputes the reference example values and compares
//! them with an expectations table.

use std::collections::BTreeMap;

use hodgering_core::criteria::{
    class_test, surface_classification, suspension_bound_check, wahl_check, zariski_family_check,
    Catalog, SpectralSource, SurfaceResolutionData,
};
use hodgering_core::local::{
    local_membership, milnor_number, tau_min_search, tjurina_number, LocalGerm, TauMinSearch,
};
use hodgering_core::poly::{
    format_rational, parse_polynomial, ExponentVector, Polynomial, Rational,
};
use hodgering_core::spectrum::{
    find_weights, geometric_genus, induced_filtration, nemethi_check, v_degree,
};
use serde::{Deserialize, Serialize};

use crate::commands::Failure;

pub const BUILTIN_EXPECTATIONS: &str = include_str!("../data/expectations.toml");

pub const GAP_NOTE: &str =
    "note: a reference gap printed as \"91/111\" is read as 91/110; every V-degree of \
x^5+y^11+z^2 has denominator 110";

#[derive(Debug, Deserialize)]
struct ExpectationFile {
    expected: BTreeMap<String, String>,
}

pub fn parse_expectations(text: &str) -> Result<BTreeMap<String, String>, Failure> {
    let file: ExpectationFile =
        toml::from_str(text).map_err(|e| Failure::Parse(format!("expectations: {e}")))?;
    Ok(file.expected)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Case {
    pub key: String,
    pub expected: Option<String>,
    pub actual: Option<String>,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegressReport {
    pub tool: String,
    pub version: String,
    pub seed: u64,
    pub passed: usize,
    pub failed: usize,
    pub cases: Vec<Case>,
}

impl RegressReport {
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        for c in &self.cases {
            if c.pass {
                out.push_str(&format!(
                    "ok    {} = {}\n",
                    c.key,
                    c.actual.as_deref().unwrap_or("")
                ));
            } else {
                out.push_str(&format!("FAIL  {}\n", c.key));
                out.push_str(&format!(
                    "  - {}\n",
                    c.expected.as_deref().unwrap_or("(no expectation)")
                ));
                out.push_str(&format!(
                    "  + {}\n",
                    c.actual.as_deref().unwrap_or("(not computed)")
                ));
            }
        }
        out.push_str(&format!("{} passed, {} failed\n", self.passed, self.failed));
        out
    }
}

fn germ(s: &str) -> Result<LocalGerm, Failure> {
    let f = parse_polynomial(s, &["x", "y", "z"]).map_err(|e| Failure::Other(e.to_string()))?;
    Ok(LocalGerm::new(f)?)
}

fn list(v: &[Rational]) -> String {
    v.iter().map(format_rational).collect::<Vec<_>>().join(",")
}

fn q(v: Option<Rational>) -> String {
    v.as_ref()
        .map_or_else(|| "none".to_string(), format_rational)
}

/// Every value of the corpus, keyed as in the expectations file.
pub fn observations(seed: u64) -> Result<Vec<(String, String)>, Failure> {
    let mut out: Vec<(String, String)> = Vec::new();
    let mut put = |k: &str, v: String| out.push((k.to_string(), v));
    let search = TauMinSearch {
        seed,
        ..TauMinSearch::default()
    };

    let g = germ("x^7+x^4*y^2+x^2*y^4+y^7+z^2")?;
    let (mu, tau) = (milnor_number(&g)?, tjurina_number(&g)?);
    let w = wahl_check(mu, tau, &SurfaceResolutionData { p_g: 3, g: 0, b: 2 });
    put("w27.mu", mu.to_string());
    put("w27.tau", tau.to_string());
    put("w27.wahl_bound", w.bound.to_string());
    put("w27.wahl_equality", (w.bound == tau as i64).to_string());

    let g = germ("x^3+y^10+z^19")?;
    let w = find_weights(g.polynomial())
        .ok_or_else(|| Failure::Other("x^3+y^10+z^19: no weights".into()))?;
    put("brieskorn_3_10_19.mu", milnor_number(&g)?.to_string());
    put("brieskorn_3_10_19.p_g", geometric_genus(&g)?.to_string());
    let r = tau_min_search(&g, w.as_slice(), &search)?;
    put("brieskorn_3_10_19.tau_min", r.tau_min.to_string());
    let v = class_test(&LocalGerm::new(r.witness)?, &SpectralSource::Reference(w))?;
    put("brieskorn_3_10_19.deformation_defect", v.defect.to_string());

    let g = germ("x^5+y^11+z^2")?;
    let w = find_weights(g.polynomial())
        .ok_or_else(|| Failure::Other("x^5+y^11+z^2: no weights".into()))?;
    let mu = milnor_number(&g)?;
    let p_g = geometric_genus(&g)?;
    put("brieskorn_5_11_2.weights", list(w.as_slice()));
    put("brieskorn_5_11_2.mu", mu.to_string());
    put("brieskorn_5_11_2.p_g", p_g.to_string());
    let r = tau_min_search(&g, w.as_slice(), &search)?;
    put("brieskorn_5_11_2.tau_min", r.tau_min.to_string());
    let wc = wahl_check(mu, r.tau_min, &SurfaceResolutionData { p_g, g: 0, b: 0 });
    put("brieskorn_5_11_2.wahl_bound", wc.bound.to_string());
    put(
        "brieskorn_5_11_2.wahl_strict",
        (r.tau_min as i64 > wc.bound).to_string(),
    );
    let v = class_test(
        &LocalGerm::new(r.witness)?,
        &SpectralSource::Reference(w.clone()),
    )?;
    put(
        "brieskorn_5_11_2.deformation_in_class",
        v.in_class.to_string(),
    );
    put(
        "brieskorn_5_11_2.nemethi",
        nemethi_check(&g)?.holds.to_string(),
    );
    let f = g.polynomial();
    let mut euler = Polynomial::zero(3);
    for (i, wi) in w.as_slice().iter().enumerate() {
        let d = f
            .partial_derivative(i)
            .map_err(|e| Failure::Other(e.to_string()))?;
        euler = &euler + &(&d * &Polynomial::var(3, i)).scale(wi);
    }
    put(
        "brieskorn_5_11_2.euler_membership",
        local_membership(f, &[euler])?.to_string(),
    );
    let one = Rational::from_integer(1.into());
    put(
        "brieskorn_5_11_2.v_degree_f",
        format_rational(&v_degree(&ExponentVector::zero(3), &w, &one)),
    );
    let fl = induced_filtration(&g)?;
    put("brieskorn_5_11_2.generator", q(fl.generator.clone()));
    put(
        "brieskorn_5_11_2.v_degree_y",
        format_rational(&v_degree(&ExponentVector::unit(3, 1), &w, &one)),
    );
    put(
        "brieskorn_5_11_2.rung_x",
        q(fl.variables[0].induced.clone()),
    );
    put(
        "brieskorn_5_11_2.rung_y",
        q(fl.variables[1].induced.clone()),
    );
    let y2 = fl
        .ladder
        .iter()
        .find(|r| r.monomial.as_slice() == [0, 2, 0])
        .and_then(|r| r.induced.clone());
    put("brieskorn_5_11_2.rung_y2", q(y2));
    put("brieskorn_5_11_2.gaps", list(&fl.gaps));

    let catalog = Catalog::builtin();
    for name in ["A1", "T237", "E12"] {
        let e = catalog
            .get(name)
            .ok_or_else(|| Failure::Other(format!("catalog lacks {name}")))?;
        let g = e.germ().map_err(|x| Failure::Other(x.to_string()))?;
        let (mu, tau) = (milnor_number(&g)?, tjurina_number(&g)?);
        let data = e
            .resolution()
            .ok_or_else(|| Failure::Other(format!("{name}: no resolution data")))?;
        put(
            &format!("classification.{name}"),
            surface_classification(mu, tau, &data).to_string(),
        );
        if name == "T237" {
            put("classification.T237.mu_minus_tau", (mu - tau).to_string());
        }
    }

    let node = LocalGerm::new(
        parse_polynomial("x^2+y^2", &["x", "y"]).map_err(|e| Failure::Other(e.to_string()))?,
    )?;
    put(
        "suspension.m2",
        match suspension_bound_check(&node, 2) {
            Err(_) => "excluded".into(),
            Ok(c) => format!("dim_v={}", c.dim_v),
        },
    );

    for a in 1..=3 {
        let z = zariski_family_check(a, None)?;
        put(
            &format!("zariski.a{a}.mu_minus_2p_g"),
            (z.mu as i64 - 2 * z.p_g as i64).to_string(),
        );
    }
    Ok(out)
}

pub fn compare(
    seed: u64,
    actual: Vec<(String, String)>,
    expected: &BTreeMap<String, String>,
) -> RegressReport {
    let mut cases: Vec<Case> = actual
        .iter()
        .map(|(k, v)| {
            let e = expected.get(k).cloned();
            Case {
                key: k.clone(),
                pass: e.as_deref() == Some(v.as_str()),
                expected: e,
                actual: Some(v.clone()),
            }
        })
        .collect();
    for (k, v) in expected {
        if !actual.iter().any(|(a, _)| a == k) {
            cases.push(Case {
                key: k.clone(),
                expected: Some(v.clone()),
                actual: None,
                pass: false,
            });
        }
    }
    let passed = cases.iter().filter(|c| c.pass).count();
    RegressReport {
        tool: "hodgering".into(),
        version: env!("CARGO_PKG_VERSION").into(),
        seed,
        passed,
        failed: cases.len() - passed,
        cases,
    }
}

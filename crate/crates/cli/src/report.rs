//! The report document and its text rendering. JSON keys follow field
//! declaration order; rationals are `"p/q"` strings.

use std::fmt::Write;

use hodgering_core::poly::{parse_rational, Rational};
use serde::{Deserialize, Serialize};

/// A rational serialized as `"p/q"`, with `q = 1` for integers.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub struct Q(pub Rational);

impl From<Q> for String {
    fn from(q: Q) -> String {
        format!("{}/{}", q.0.numer(), q.0.denom())
    }
}

impl TryFrom<String> for Q {
    type Error = String;

    fn try_from(s: String) -> Result<Self, String> {
        if !s.contains('/') {
            return Err(format!("expected p/q, found {s:?}"));
        }
        parse_rational(&s)
            .map(Q)
            .ok_or_else(|| format!("bad rational {s:?}"))
    }
}

impl From<Rational> for Q {
    fn from(r: Rational) -> Self {
        Q(r)
    }
}

impl std::fmt::Display for Q {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&hodgering_core::poly::format_rational(&self.0))
    }
}

pub fn qs(v: impl IntoIterator<Item = Rational>) -> Vec<Q> {
    v.into_iter().map(Q).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub tool: String,
    pub version: String,
    pub command: String,
    pub input: InputEcho,
    pub singularities: Vec<SingularityBlock>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub global: Option<GlobalBlock>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub catalog: Vec<CatalogRow>,
}

impl ReportDocument {
    pub fn new(command: &str, input: InputEcho) -> Self {
        Self {
            tool: "hodgering".into(),
            version: env!("CARGO_PKG_VERSION").into(),
            command: command.into(),
            input,
            singularities: Vec::new(),
            global: None,
            catalog: Vec::new(),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct InputEcho {
    pub polynomial: Option<String>,
    pub variables: Vec<String>,
    /// Degree of a homogeneous input.
    pub d: Option<u32>,
    /// Dimension of the germ or hypersurface.
    pub n: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpectralEntry {
    pub value: Q,
    pub multiplicity: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub tau: usize,
    pub s_n_minus_1: usize,
    pub defect: i64,
    pub in_class: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TauMinBlock {
    pub seed: u64,
    pub samples: usize,
    pub upper_monomials: usize,
    pub tau_min: usize,
    pub mu_constant: bool,
    pub witness: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Rung {
    pub monomial: Vec<u32>,
    pub raw: Q,
    pub induced: Option<Q>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiltrationBlock {
    pub raw_generator: Q,
    pub generator: Option<Q>,
    pub variables: Vec<Rung>,
    pub gaps: Vec<Q>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SingularityBlock {
    /// Affine point, or homogeneous coordinates for hypersurfaces.
    pub point: Vec<Q>,
    pub chart: Option<usize>,
    pub mu: usize,
    pub tau: usize,
    pub weights: Option<Vec<Q>>,
    pub spectrum: Option<Vec<SpectralEntry>>,
    pub s_k: Option<Vec<usize>>,
    pub p_g: Option<usize>,
    pub class_verdict: Option<Verdict>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tau_min: Option<TauMinBlock>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub filtration: Option<FiltrationBlock>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeDim {
    pub k: i64,
    pub dim_r: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GlobalBlock {
    pub residue_degree: i64,
    pub dim_r: usize,
    pub c_d: i64,
    pub h0_log: usize,
    pub tau_total: usize,
    pub h1: usize,
    pub h2: usize,
    pub exact: bool,
    pub complete: bool,
    pub chi_barlet: i64,
    pub chi_dubois: Option<i64>,
    /// True when every singular point satisfies `τ = s_(n-1)`, so that `h1`
    /// and `h2` are graded pieces of primitive cohomology.
    pub hodge_graded: bool,
    pub degrees: Vec<DegreeDim>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveBlock {
    pub r: usize,
    pub m: usize,
    pub delta: usize,
    pub bound: i64,
    pub holds: bool,
    pub curve_class_equality: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogRow {
    pub name: String,
    pub family: String,
    pub equation: String,
    pub mu: usize,
    pub tau: usize,
    pub expected_mu: Option<usize>,
    pub expected_tau: Option<usize>,
    pub class_verdict: Option<Verdict>,
    pub wahl_bound: Option<i64>,
    pub classification: Option<bool>,
    pub curve: Option<CurveBlock>,
}

fn opt<T: std::fmt::Display>(v: &Option<T>) -> String {
    v.as_ref().map_or_else(|| "-".to_string(), T::to_string)
}

fn join(v: &[Q]) -> String {
    v.iter().map(Q::to_string).collect::<Vec<_>>().join(", ")
}

/// Plain-text rendering for terminals.
pub fn render_text(doc: &ReportDocument) -> String {
    let mut out = String::new();
    if let Some(p) = &doc.input.polynomial {
        let _ = writeln!(out, "f = {p}");
    }
    if !doc.input.variables.is_empty() {
        let _ = writeln!(out, "variables: {}", doc.input.variables.join(", "));
    }
    if let Some(d) = doc.input.d {
        let _ = writeln!(out, "d = {d}, n = {}", opt(&doc.input.n));
    }
    for (i, s) in doc.singularities.iter().enumerate() {
        let _ = writeln!(out, "\npoint {} = ({})", i, join(&s.point));
        if let Some(c) = s.chart {
            let _ = writeln!(out, "  chart      {c}");
        }
        let _ = writeln!(out, "  mu         {}", s.mu);
        let _ = writeln!(out, "  tau        {}", s.tau);
        if let Some(w) = &s.weights {
            let _ = writeln!(out, "  weights    ({})", join(w));
        }
        if let Some(sp) = &s.spectrum {
            let items: Vec<String> = sp
                .iter()
                .map(|e| {
                    if e.multiplicity == 1 {
                        e.value.to_string()
                    } else {
                        format!("{}^{}", e.value, e.multiplicity)
                    }
                })
                .collect();
            let _ = writeln!(out, "  spectrum   {{{}}}", items.join(", "));
        }
        if let Some(sk) = &s.s_k {
            let items: Vec<String> = sk
                .iter()
                .enumerate()
                .map(|(k, v)| format!("s{k}={v}"))
                .collect();
            let _ = writeln!(out, "  hodge      {}", items.join(" "));
        }
        if let Some(p) = s.p_g {
            let _ = writeln!(out, "  p_g        {p}");
        }
        if let Some(v) = &s.class_verdict {
            let _ = writeln!(
                out,
                "  class      tau - s_(n-1) = {} - {} = {} ({})",
                v.tau,
                v.s_n_minus_1,
                v.defect,
                if v.in_class {
                    "in class"
                } else {
                    "not in class"
                }
            );
        }
        if let Some(t) = &s.tau_min {
            let _ = writeln!(
                out,
                "  tau_min    {} over {} samples (seed {}, {} upper monomials{})",
                t.tau_min,
                t.samples,
                t.seed,
                t.upper_monomials,
                if t.mu_constant { "" } else { ", mu jumped" }
            );
        }
        if let Some(fl) = &s.filtration {
            let _ = writeln!(
                out,
                "  generator  {} -> {}",
                fl.raw_generator,
                opt(&fl.generator)
            );
            for r in &fl.variables {
                let _ = writeln!(
                    out,
                    "  rung {:?} {} -> {}",
                    r.monomial,
                    r.raw,
                    opt(&r.induced)
                );
            }
            let _ = writeln!(out, "  gaps       {{{}}}", join(&fl.gaps));
        }
    }
    if let Some(g) = &doc.global {
        let _ = writeln!(out, "\nglobal");
        let _ = writeln!(
            out,
            "  dim R_{}    {} (c_d = {})",
            g.residue_degree, g.dim_r, g.c_d
        );
        let _ = writeln!(out, "  h0_log     {}", g.h0_log);
        let _ = writeln!(out, "  tau total  {}", g.tau_total);
        let _ = writeln!(out, "  h1, h2     {}, {}", g.h1, g.h2);
        let _ = writeln!(out, "  exact      {}", g.exact);
        let _ = writeln!(out, "  complete   {}", g.complete);
        let _ = writeln!(
            out,
            "  chi        {} (tau), {} (s_(n-1))",
            g.chi_barlet,
            opt(&g.chi_dubois)
        );
        let _ = writeln!(out, "  graded     {}", g.hodge_graded);
        for dd in &g.degrees {
            let _ = writeln!(out, "  dim R_{:<4} {}", dd.k, dd.dim_r);
        }
    }
    if !doc.catalog.is_empty() {
        let _ = writeln!(
            out,
            "{:<12} {:<12} {:>4} {:>4}  verdict",
            "name", "family", "mu", "tau"
        );
        for r in &doc.catalog {
            let verdict = match (&r.class_verdict, r.classification, &r.curve) {
                (_, _, Some(c)) => format!(
                    "delta={} BG bound {} {} class-equality {}",
                    c.delta,
                    c.bound,
                    if c.holds { "holds" } else { "FAILS" },
                    c.curve_class_equality
                ),
                (Some(v), cls, _) => format!("defect {} classification {}", v.defect, opt(&cls)),
                (None, cls, _) => format!("defect - classification {}", opt(&cls)),
            };
            let _ = writeln!(
                out,
                "{:<12} {:<12} {:>4} {:>4}  {verdict}",
                r.name, r.family, r.mu, r.tau
            );
        }
    }
    out
}

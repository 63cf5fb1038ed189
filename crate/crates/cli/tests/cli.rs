use std::io::Write;
use std::path::Path;
use std::process::{Command, Output};

use hodgering_cli::regress::RegressReport;
use hodgering_cli::report::Q;
use hodgering_cli::ReportDocument;
use hodgering_core::poly::rat;
use tempfile::NamedTempFile;

const NODAL_QUARTIC: &str =
    "x0^2*x1^2+x0^2*x2^2+x0^2*x3^2+x0*x1^3-x0*x2^3+x0*x1*x2*x3+x1^4+2*x2^4+3*x3^4";

fn hodgering(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hodgering"))
        .args(args)
        .env_remove("HODGERING_SEED")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn json_report(args: &[&str]) -> (ReportDocument, String) {
    let o = hodgering(args);
    assert!(o.status.success(), "{args:?}: {}", stderr(&o));
    let text = stdout(&o);
    (serde_json::from_str(&text).expect("report parses"), text)
}

fn temp_file(contents: &str) -> NamedTempFile {
    let mut f = NamedTempFile::new().unwrap();
    f.write_all(contents.as_bytes()).unwrap();
    f
}

fn path(f: &NamedTempFile) -> &str {
    f.path().to_str().unwrap()
}

#[test]
fn local_report_for_the_first_example() {
    let (doc, _) = json_report(&["local", "-e", "x^7+x^4*y^2+x^2*y^4+y^7+z^2", "--json"]);
    let s = &doc.singularities[0];
    assert_eq!((s.mu, s.tau), (27, 23));
    assert!(s.weights.is_none() && s.spectrum.is_none());
    assert_eq!(doc.input.n, Some(2));
}

#[test]
fn local_report_reads_files() {
    let poly = temp_file("x^3+y^10+z^19\n");
    let (doc, _) = json_report(&["local", path(&poly), "--json"]);
    let s = &doc.singularities[0];
    assert_eq!((s.mu, s.p_g), (324, Some(39)));
    assert_eq!(
        s.weights.as_deref(),
        Some(&[Q(rat(1, 3)), Q(rat(1, 10)), Q(rat(1, 19))][..])
    );
    let total: usize = s
        .spectrum
        .as_ref()
        .unwrap()
        .iter()
        .map(|e| e.multiplicity)
        .sum();
    assert_eq!(total, 324);
}

#[test]
fn node_spectrum_is_zero() {
    let (doc, text) = json_report(&["local", "-e", "x^2+y^2", "--json"]);
    let s = &doc.singularities[0];
    assert_eq!((s.mu, s.tau), (1, 1));
    let sp = s.spectrum.as_ref().unwrap();
    assert_eq!(sp.len(), 1);
    assert_eq!(sp[0].value, Q(rat(0, 1)));
    assert!(text.contains("\"0/1\""));
}

#[test]
fn morse_points_need_no_normal_form() {
    let (doc, _) = json_report(&["local", "-e", "x^2+y^2+z^2+x^3*y", "--json"]);
    let s = &doc.singularities[0];
    assert_eq!(s.mu, 1);
    assert_eq!(s.spectrum.as_ref().unwrap()[0].value, Q(rat(1, 2)));
    assert_eq!(s.class_verdict.as_ref().unwrap().defect, 0);
}

#[test]
fn json_round_trips_byte_for_byte() {
    for args in [
        &["local", "-e", "x^5+y^11+z^2", "--json"][..],
        &["spectrum", "-e", "x^5+y^11+z^2", "--json"],
        &["criteria", "--json"],
    ] {
        let (doc, text) = json_report(args);
        assert_eq!(
            serde_json::to_string_pretty(&doc).unwrap() + "\n",
            text,
            "{args:?}"
        );
        let (_, again) = json_report(args);
        assert_eq!(text, again, "{args:?} is not deterministic");
    }
}

#[test]
fn key_order_is_fixed() {
    let (_, text) = json_report(&["local", "-e", "x^2+y^3", "--json"]);
    let keys = [
        "\"tool\"",
        "\"version\"",
        "\"command\"",
        "\"input\"",
        "\"singularities\"",
    ];
    let pos: Vec<usize> = keys.iter().map(|k| text.find(k).unwrap()).collect();
    assert!(pos.windows(2).all(|w| w[0] < w[1]), "{pos:?}");
    let block = [
        "\"point\"",
        "\"chart\"",
        "\"mu\"",
        "\"tau\"",
        "\"weights\"",
        "\"spectrum\"",
        "\"s_k\"",
        "\"p_g\"",
    ];
    let pos: Vec<usize> = block.iter().map(|k| text.find(k).unwrap()).collect();
    assert!(pos.windows(2).all(|w| w[0] < w[1]), "{pos:?}");
}

#[test]
fn rationals_are_p_over_q_strings() {
    let q: Q = serde_json::from_str("\"-87/110\"").unwrap();
    assert_eq!(q, Q(rat(-87, 110)));
    assert_eq!(serde_json::to_string(&Q(rat(3, 1))).unwrap(), "\"3/1\"");
    assert!(serde_json::from_str::<Q>("\"3\"").is_err());
    assert!(serde_json::from_str::<Q>("0.5").is_err());
}

#[test]
fn spectrum_ladder() {
    let (doc, _) = json_report(&["spectrum", "-e", "x^5+y^11+z^2", "--json"]);
    let fl = doc.singularities[0].filtration.as_ref().unwrap();
    assert_eq!(fl.raw_generator, Q(rat(87, 110)));
    assert_eq!(fl.generator, Some(Q(rat(89, 110))));
    assert_eq!(fl.variables[0].induced, Some(Q(rat(111, 110))));
    assert_eq!(fl.variables[1].induced, Some(Q(rat(101, 110))));
    assert_eq!(fl.gaps, vec![Q(rat(91, 110)), Q(rat(93, 110))]);
}

#[test]
fn tau_min_uses_seed_from_environment_and_flag() {
    let run = |env: Option<&str>, flag: Option<&str>| {
        let mut c = Command::new(env!("CARGO_BIN_EXE_hodgering"));
        c.args(["local", "-e", "x^5+y^6+z^2", "--tau-min", "--json"])
            .env_remove("HODGERING_SEED");
        if let Some(v) = env {
            c.env("HODGERING_SEED", v);
        }
        if let Some(v) = flag {
            c.args(["--seed", v]);
        }
        let o = c.output().unwrap();
        assert!(o.status.success());
        let doc: ReportDocument = serde_json::from_slice(&o.stdout).unwrap();
        doc.singularities[0].tau_min.clone().unwrap()
    };
    let default = run(None, None);
    assert_eq!(
        (default.seed, default.tau_min, default.samples),
        (0, 18, 32)
    );
    assert_eq!(run(Some("11"), None).seed, 11);
    assert_eq!(run(Some("11"), Some("3")).seed, 3);
}

#[test]
fn hypersurface_reports() {
    let (doc, _) = json_report(&["hypersurface", "-e", "x0^4+x1^4+x2^4+x3^4", "--json"]);
    let g = doc.global.unwrap();
    assert_eq!(
        (g.dim_r, g.c_d, g.tau_total, g.h1, g.h2),
        (19, 19, 0, 19, 0)
    );
    assert!(g.complete && g.exact && g.hodge_graded);
    assert_eq!(g.chi_dubois, Some(19));

    let poly = temp_file(NODAL_QUARTIC);
    let pts = temp_file("# the node\nchart=0; coords=0,0,0\n");
    let (doc, _) = json_report(&[
        "hypersurface",
        path(&poly),
        "--sing-file",
        path(&pts),
        "--degree",
        "9",
        "--json",
    ]);
    let g = doc.global.unwrap();
    assert_eq!(
        (g.dim_r, g.h0_log, g.tau_total, g.h1, g.h2),
        (19, 0, 1, 18, 0)
    );
    assert!(g.complete);
    assert_eq!((g.chi_barlet, g.chi_dubois), (20, Some(20)));
    assert!(g.hodge_graded);
    assert_eq!((g.degrees[0].k, g.degrees[0].dim_r), (9, 1));
    assert_eq!(
        doc.singularities[0].point,
        vec![Q(rat(1, 1)), Q(rat(0, 1)), Q(rat(0, 1)), Q(rat(0, 1))]
    );
}

#[test]
fn exit_codes() {
    let code = |args: &[&str]| hodgering(args).status.code().unwrap();
    let poly = temp_file(NODAL_QUARTIC);
    let empty = temp_file("");
    let cusp = temp_file("chart=0; coords=0,0\n");
    assert_eq!(code(&["local", "-e", "x^2+y^3+"]), 2);
    assert_eq!(code(&["local", "-e", "x^2+y^3", "--point", "1/0,0"]), 2);
    assert_eq!(code(&["local", "/nonexistent/file"]), 2);
    assert_eq!(code(&["frobnicate"]), 2);
    assert_eq!(code(&["local", "-e", "x^2*y^2"]), 3);
    assert_eq!(code(&["local", "-e", "x+y^2"]), 4);
    assert_eq!(code(&["local", "-e", "x^2+y^3", "--point", "1,0"]), 4);
    assert_eq!(
        code(&["hypersurface", path(&poly), "--sing-file", path(&empty)]),
        5
    );
    assert_eq!(
        code(&[
            "hypersurface",
            "-e",
            "x0*x1^2-x2^3",
            "--sing-file",
            path(&cusp)
        ]),
        6
    );
    assert_eq!(code(&["hypersurface", "-e", "x0^3+x1^2*x2"]), 6);
}

#[test]
fn failures_keep_stdout_clean() {
    let o = hodgering(&["local", "-e", "x^2*y^2", "--json"]);
    assert!(o.stdout.is_empty());
    assert!(stderr(&o).contains("not isolated"));
}

#[test]
fn criteria_over_the_catalog() {
    let (doc, _) = json_report(&["criteria", "--json"]);
    assert!(doc.catalog.len() >= 30);
    for row in &doc.catalog {
        assert_eq!(Some(row.mu), row.expected_mu, "{}", row.name);
        assert_eq!(Some(row.tau), row.expected_tau, "{}", row.name);
        match row.family.as_str() {
            "ade" | "cusp" => assert_eq!(row.classification, Some(true), "{}", row.name),
            "exceptional" => assert_eq!(row.classification, Some(false)),
            "curve" => {
                let c = row.curve.as_ref().unwrap();
                assert!(c.holds && !c.curve_class_equality, "{}", row.name);
            }
            _ => {}
        }
    }
    assert_eq!(hodgering(&["criteria", "nosuch"]).status.code(), Some(2));
}

#[test]
fn regress_passes_and_logs_the_gap_note() {
    let o = hodgering(&["regress", "--json"]);
    assert!(o.status.success(), "{}", stdout(&o));
    let report: RegressReport = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(report.failed, 0);
    assert!(report.passed >= 30);
    assert!(stderr(&o).contains("91/111"));
    assert!(!stdout(&o).contains("91/111"));
}

#[test]
fn regress_reports_a_diff_on_corrupted_expectations() {
    let corrupted = hodgering_cli::regress::BUILTIN_EXPECTATIONS
        .replace("\"w27.tau\" = \"23\"", "\"w27.tau\" = \"24\"")
        .replace(
            "\"brieskorn_5_11_2.gaps\" = \"91/110,93/110\"",
            "\"brieskorn_5_11_2.gaps\" = \"91/111,93/110\"",
        );
    let file = temp_file(&corrupted);
    let o = hodgering(&["regress", "--expect", path(&file)]);
    assert_eq!(o.status.code(), Some(1));
    let out = stdout(&o);
    assert!(out.contains("FAIL  w27.tau\n  - 24\n  + 23\n"), "{out}");
    assert!(
        out.contains("FAIL  brieskorn_5_11_2.gaps\n  - 91/111,93/110\n  + 91/110,93/110\n"),
        "{out}"
    );
    assert!(out.contains("2 failed"));
    assert!(Path::new(path(&file)).exists());
}

use std::fmt::Write as _;

use anyhow::Result;
use serde_json::json;

use tracegap::asymptotics::{
    kappa_bridge_capped, kappa_brute, kappa_walks_capped, Minimizer,
};
use tracegap::average::{
    gap_sign_scan_capped, p_newton, p_word_sum_capped, verify_counterexample_5_5,
    verify_newton10_hardcoded, EnsembleResult,
};
use tracegap::exact::{format_rational, rat_int, Rational};
use tracegap::report::Check;
use tracegap::words::{bridge_word, run_decomposition, word_trace, Word};
use tracegap::{classify_order4, verify_normal_form, Classification, KappaResult};

use crate::report::{inputs_from, Output, Report};
use crate::{Caps, KappaMethodArg, SectionArg};

pub fn cmd_trace(word: &Word) -> Result<Output> {
    let trace = word_trace(word);
    let valuation = trace.valuation().ok();
    let mut text = format!(
        "word: {word} (n={}, m={}, length {})\ntrace = {trace}\n",
        word.count_a(),
        word.count_b(),
        word.len()
    );
    match &valuation {
        Some((d, c)) => {
            let _ = writeln!(text, "valuation: {d}, leading coefficient {}", format_rational(c));
        }
        None => text.push_str("trace is identically zero\n"),
    }
    let csv_rows = trace
        .terms()
        .map(|(d, c)| vec![d.to_string(), format_rational(c)])
        .collect();
    Ok(Output {
        report: Report {
            command: "trace".to_string(),
            inputs: inputs_from([("word", word.to_string())]),
            results: json!({
                "word": word,
                "n": word.count_a(),
                "m": word.count_b(),
                "trace": trace,
                "valuation": valuation.as_ref().map(|(d, _)| d),
                "leading_coefficient": valuation.as_ref().map(|(_, c)| format_rational(c)),
            }),
            checks: Vec::new(),
        },
        text,
        csv_header: vec!["degree", "coefficient"],
        csv_rows,
    })
}

fn kappa_text(result: &KappaResult) -> String {
    let mut s = format!("method {}: kappa = {}", result.method, result.kappa);
    if let Some(c) = &result.leading_coefficient {
        let _ = write!(s, ", leading coefficient {}", format_rational(c));
    }
    if !result.minimizers.is_empty() {
        let _ = write!(s, ", {} minimizer(s)", result.minimizers.len());
    }
    s.push('\n');
    for m in &result.minimizers {
        match m {
            Minimizer::Walk(a) => {
                let _ = writeln!(s, "  {a}");
            }
            Minimizer::Bridge(b) => {
                let _ = writeln!(s, "  {b}");
            }
        }
    }
    s
}

pub fn cmd_kappa(word: &Word, method: KappaMethodArg, caps: &Caps) -> Result<Output> {
    let mut results: Vec<KappaResult> = Vec::new();
    let wants = |m: KappaMethodArg| method == KappaMethodArg::All || method == m;
    if wants(KappaMethodArg::Brute) {
        results.push(kappa_brute(word)?);
    }
    if wants(KappaMethodArg::Walks) {
        results.push(kappa_walks_capped(word, caps.max_runs_walks)?);
    }
    if wants(KappaMethodArg::Bridge) {
        results.push(kappa_bridge_capped(
            &run_decomposition(word)?,
            caps.max_runs_bridge,
        )?);
    }

    let rf = run_decomposition(word)?;
    let mut text = format!(
        "word: {word} (runs: a={:?}, b={:?})\n",
        rf.a, rf.b
    );
    for r in &results {
        text.push_str(&kappa_text(r));
    }

    let mut checks = Vec::new();
    if method == KappaMethodArg::All {
        let kappas: Vec<String> = results
            .iter()
            .map(|r| format!("{}={}", r.method, r.kappa))
            .collect();
        let agree = results.windows(2).all(|p| p[0].kappa == p[1].kappa);
        checks.push(Check::named(
            "kappa agreement across methods",
            format!("all equal to {}", results[0].kappa),
            kappas.join(" "),
            agree,
        ));
        let coeffs: Vec<&Rational> = results
            .iter()
            .filter_map(|r| r.leading_coefficient.as_ref())
            .collect();
        let coeff_agree = coeffs.windows(2).all(|p| p[0] == p[1]);
        checks.push(Check::named(
            "leading coefficient agreement (brute vs walks)",
            format_rational(coeffs[0]),
            coeffs
                .iter()
                .map(|c| format_rational(c))
                .collect::<Vec<_>>()
                .join(" "),
            coeff_agree,
        ));
    }

    let csv_rows = results
        .iter()
        .map(|r| {
            vec![
                word.to_string(),
                r.method.to_string(),
                r.kappa.to_string(),
                r.leading_coefficient
                    .as_ref()
                    .map(format_rational)
                    .unwrap_or_default(),
            ]
        })
        .collect();
    Ok(Output {
        report: Report {
            command: "kappa".to_string(),
            inputs: inputs_from([
                ("word", word.to_string()),
                ("method", method.to_string()),
            ]),
            results: json!({ "word": word, "results": results }),
            checks,
        },
        text,
        csv_header: vec!["word", "method", "kappa", "leading_coefficient"],
        csv_rows,
    })
}

pub fn cmd_average(n: u32, m: u32, method: crate::AverageMethodArg, caps: &Caps) -> Result<Output> {
    use crate::AverageMethodArg;
    let mut results: Vec<EnsembleResult> = Vec::new();
    if method != AverageMethodArg::Newton {
        results.push(p_word_sum_capped(n, m, caps.max_words)?);
    }
    if method != AverageMethodArg::Sum {
        results.push(p_newton(n, m)?);
    }

    let mut text = format!(
        "p_{{{n},{m}}}: average over {} words\n",
        results[0].word_count
    );
    for r in &results {
        let _ = writeln!(text, "{}: {}", r.method, r.p_poly);
    }
    if let Ok((d, c)) = results[0].p_poly.valuation() {
        let _ = writeln!(text, "valuation: {d}, leading coefficient {}", format_rational(&c));
    }

    let mut checks = Vec::new();
    if results.len() == 2 {
        checks.push(Check::exact(
            "ensemble routes agree",
            &results[0].p_poly,
            &results[1].p_poly,
        ));
    }
    let csv_rows = results
        .iter()
        .flat_map(|r| {
            let method = r.method;
            r.p_poly
                .terms()
                .map(|(d, c)| vec![method.to_string(), d.to_string(), format_rational(c)])
                .collect::<Vec<_>>()
        })
        .collect();
    Ok(Output {
        report: Report {
            command: "average".to_string(),
            inputs: inputs_from([
                ("n", n.to_string()),
                ("m", m.to_string()),
                ("method", method.to_string()),
            ]),
            results: json!({ "results": results }),
            checks,
        },
        text,
        csv_header: vec!["method", "degree", "coefficient"],
        csv_rows,
    })
}

pub fn cmd_scan(
    n: u32,
    m: u32,
    x_lo: &Rational,
    x_hi: &Rational,
    steps: u32,
    caps: &Caps,
) -> Result<Output> {
    let scan = gap_sign_scan_capped(n, m, x_lo, x_hi, steps, caps.max_words)?;
    let negatives = scan.points.iter().filter(|p| p.sign < 0).count();
    let zeros = scan.points.iter().filter(|p| p.sign == 0).count();
    let positives = scan.points.iter().filter(|p| p.sign > 0).count();
    let mut text = format!(
        "gap({n},{m}) = tr(A^{n} B^{m}) - p_{{{n},{m}}} on [{x_lo}, {x_hi}], {steps} steps\n\
         signs: {negatives} negative, {zeros} zero, {positives} positive\n"
    );
    for b in &scan.brackets {
        let _ = writeln!(
            text,
            "sign change ({} -> {}) inside [{}, {}] (width <= 10^-9)",
            b.sign_lo,
            b.sign_hi,
            format_rational(&b.lo),
            format_rational(&b.hi)
        );
    }
    if scan.brackets.is_empty() {
        text.push_str("no strict sign change on the grid\n");
    }
    let csv_rows = scan
        .points
        .iter()
        .map(|p| {
            vec![
                p.x.numer().to_string(),
                p.x.denom().to_string(),
                p.sign.to_string(),
            ]
        })
        .collect();
    Ok(Output {
        report: Report {
            command: "scan".to_string(),
            inputs: inputs_from([
                ("n", n.to_string()),
                ("m", m.to_string()),
                ("x_lo", format_rational(x_lo)),
                ("x_hi", format_rational(x_hi)),
                ("steps", steps.to_string()),
            ]),
            results: serde_json::to_value(&scan)?,
            checks: Vec::new(),
        },
        text,
        csv_header: vec!["x_num", "x_den", "sign"],
        csv_rows,
    })
}

fn classification_checks(c: &Classification) -> Vec<Check> {
    let expected_count = (c.n + c.m) as usize;
    let shifts = bridge_word(c.n, c.m)
        .expect("classification requires n, m >= 5")
        .cyclic_shifts();
    let found: std::collections::BTreeSet<Word> = c.order4.iter().copied().collect();
    vec![
        Check::exact("order-4 word count", &expected_count, &c.order4.len()),
        Check::named(
            "order-4 words are the bridge-pattern shifts",
            format!("{} cyclic shifts of {}", expected_count, bridge_word(c.n, c.m).unwrap()),
            if found == shifts { "match" } else { "mismatch" },
            found == shifts,
        ),
        Check::exact("minimum kappa over the class", &4u32, &c.min_kappa),
        Check::exact(
            "words of higher order",
            &(c.total_words - expected_count as u64),
            &(c.total_words - c.order4.len() as u64),
        ),
    ]
}

pub fn cmd_classify(n: u32, m: u32) -> Result<Output> {
    let c = classify_order4(n, m)?;
    let checks = classification_checks(&c);
    let mut text = format!(
        "class ({n},{m}): {} words, minimum kappa {}\norder-4 words ({}):\n",
        c.total_words,
        c.min_kappa,
        c.order4.len()
    );
    for w in &c.order4 {
        let _ = writeln!(text, "  {w}");
    }
    let csv_rows = c
        .order4
        .iter()
        .map(|w| vec![w.to_string(), "4".to_string()])
        .collect();
    Ok(Output {
        report: Report {
            command: "classify".to_string(),
            inputs: inputs_from([("n", n.to_string()), ("m", m.to_string())]),
            results: serde_json::to_value(&c)?,
            checks,
        },
        text,
        csv_header: vec!["word", "kappa"],
        csv_rows,
    })
}

fn benchmark_word_checks(caps: &Caps) -> Result<Vec<Check>> {
    let expected: [(&str, u32, Rational); 3] = [
        ("A^5 B^5", 5, rat_int(32)),
        ("A^3 B A B^3 A B", 4, rat_int(1)),
        ("ABABABABAB", 5, rat_int(2)),
    ];
    let mut checks = Vec::new();
    for (text, kappa, coeff) in expected {
        let word: Word = text.parse().expect("benchmark words parse");
        let brute = kappa_brute(&word)?;
        let walks = kappa_walks_capped(&word, caps.max_runs_walks)?;
        let bridge = kappa_bridge_capped(&run_decomposition(&word)?, caps.max_runs_bridge)?;
        checks.push(Check::named(
            format!("kappa({word}) by all methods"),
            kappa.to_string(),
            format!(
                "brute={} walks={} bridge={}",
                brute.kappa, walks.kappa, bridge.kappa
            ),
            brute.kappa == kappa && walks.kappa == kappa && bridge.kappa == kappa,
        ));
        let brute_coeff = brute.leading_coefficient.expect("brute carries a coefficient");
        let walks_coeff = walks.leading_coefficient.expect("walks carries a coefficient");
        checks.push(Check::named(
            format!("leading coefficient of {word}"),
            format_rational(&coeff),
            format!(
                "brute={} walks={}",
                format_rational(&brute_coeff),
                format_rational(&walks_coeff)
            ),
            brute_coeff == coeff && walks_coeff == coeff,
        ));
    }
    Ok(checks)
}

pub fn cmd_verify(section: SectionArg, n: u32, m: u32, caps: &Caps) -> Result<Output> {
    let mut sections: Vec<(&'static str, Vec<Check>)> = Vec::new();
    let wants = |s: SectionArg| section == SectionArg::All || section == s;
    if wants(SectionArg::NormalForm) {
        sections.push(("normal-form", verify_normal_form()));
    }
    if wants(SectionArg::Table1) {
        sections.push(("table1", benchmark_word_checks(caps)?));
    }
    if wants(SectionArg::Classification) {
        let c = classify_order4(n, m)?;
        sections.push(("classification", classification_checks(&c)));
    }
    if wants(SectionArg::Appendix) {
        let mut checks = verify_newton10_hardcoded();
        checks.extend(verify_counterexample_5_5()?);
        sections.push(("appendix", checks));
    }

    let mut text = String::new();
    let mut checks = Vec::new();
    let section_names: Vec<&str> = sections.iter().map(|(name, _)| *name).collect();
    for (name, section_checks) in sections {
        let passed = section_checks.iter().filter(|c| c.pass).count();
        let _ = writeln!(
            text,
            "section {name}: {passed}/{} checks passed",
            section_checks.len()
        );
        checks.extend(section_checks);
    }
    let csv_rows = checks
        .iter()
        .map(|c| {
            vec![
                c.name.clone(),
                c.expected.clone(),
                c.actual.clone(),
                c.pass.to_string(),
            ]
        })
        .collect();
    Ok(Output {
        report: Report {
            command: "verify".to_string(),
            inputs: inputs_from([
                ("section", section.to_string()),
                ("n", n.to_string()),
                ("m", m.to_string()),
            ]),
            results: json!({ "sections": section_names }),
            checks,
        },
        text,
        csv_header: vec!["name", "expected", "actual", "pass"],
        csv_rows,
    })
}

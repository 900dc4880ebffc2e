//! Plain-text rendering of a contradiction chain.

use std::fmt::Write;

use mpflow::algebra::rational;
use mpflow::algebra::SignCertificate;
use mpflow::cases::CaseVerdict;

fn certificate(c: &SignCertificate) -> String {
    match c {
        SignCertificate::Pass => "certified on the whole range".into(),
        SignCertificate::Fail { witness, value, .. } => {
            format!("NOT certified: coefficient {} at σ = {}", rational::to_string(value), rational::to_string(witness))
        }
        SignCertificate::RootWitness { lo, hi } => {
            format!("NOT certified: coefficient vanishes in ({}, {})", rational::to_string(lo), rational::to_string(hi))
        }
    }
}

pub fn verdict(v: &CaseVerdict) -> String {
    let p = &v.params;
    let mut s = String::new();
    let _ = writeln!(
        s,
        "Case {}: g = {}, h = {}, k = {}, l = {}, c_k = {}, d_l = {}",
        p.case_id,
        p.g,
        p.h,
        p.k,
        p.l,
        rational::to_string(&p.c_k),
        rational::to_string(&p.d_l)
    );
    let _ = writeln!(s, "\nPredicted top terms (σ symbolic):");
    for pr in &v.predictions {
        let _ = writeln!(
            s,
            "  {:<3} ρ^{:<4} coefficient {}{}",
            pr.form.to_string(),
            pr.exponent,
            pr.coefficient,
            if pr.stated { "" } else { "   (derived)" }
        );
    }
    let scope = match &v.sigma {
        Some(sig) => format!("σ = {}", rational::to_string(sig)),
        None => "every σ > 1".into(),
    };
    let _ = writeln!(s, "\nContradiction chain for {scope}:");
    for (i, st) in v.chain.iter().enumerate() {
        let _ = writeln!(s, "  {}. on {}: {}", i + 1, st.range, st.violated);
        let _ = writeln!(s, "     {}", certificate(&st.certificate));
        if let Some(note) = &st.note {
            let _ = writeln!(s, "     note: {note}");
        }
    }
    if !v.uncovered.is_empty() {
        let ranges: Vec<String> = v.uncovered.iter().map(ToString::to_string).collect();
        let _ = writeln!(s, "  uncovered: {}", ranges.join(", "));
    }
    let _ = writeln!(s, "\nSpot checks:");
    for c in &v.spot_checks {
        let _ = writeln!(
            s,
            "  σ = {:<10} {} = {}  {}",
            rational::to_string(&c.sigma),
            c.form.map(|f| f.to_string()).unwrap_or_else(|| "-".into()),
            c.value.as_ref().map(rational::to_string).unwrap_or_else(|| "-".into()),
            if c.agrees_with_chain { "ok" } else { "DISAGREES" }
        );
    }
    let _ = writeln!(s, "\n{}", if v.contradiction { "No maximum-principle function in this case." } else { "Chain does not close." });
    s
}

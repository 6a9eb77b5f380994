//! Line-oriented text form of lab reports. Functions are embedded as PWF v1
//! blocks, each closed by a line `end`.

use std::fmt::Write as _;

use super::axioms::{AxiomReport, Classification};
use super::reproduce::CaseReport;
use crate::pwfn::{serialize_pwf, PwFn};

const CONV_NOTE: &str = "note lambda and upsilon are read as the wedge and vee convolutions";

fn block(out: &mut String, label: &str, f: &PwFn) {
    out.push_str(label);
    out.push('\n');
    out.push_str(&serialize_pwf(f));
    out.push_str("end\n");
}

fn is_convolution(op: &str) -> bool {
    op.starts_with("wedge:") || op.starts_with("vee:")
}

pub fn write_axiom_report(r: &AxiomReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "axiom {}", r.axiom);
    let _ = writeln!(out, "op {}", r.op);
    let _ = writeln!(out, "seed {}", r.seed);
    let _ = writeln!(out, "trials {}", r.trials);
    let _ = writeln!(out, "verdict {}", r.verdict);
    if let Some(w) = &r.witness {
        let _ = writeln!(out, "witness trial {}", w.trial);
        let _ = writeln!(out, "relation {}", w.relation);
        for (i, f) in w.inputs.iter().enumerate() {
            block(&mut out, &format!("input {i}"), f);
        }
        block(&mut out, "lhs", &w.lhs);
        if let Some(rhs) = &w.rhs {
            block(&mut out, "rhs", rhs);
        }
    }
    out
}

pub fn write_classification(c: &Classification) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "op {}", c.op);
    let _ = writeln!(out, "direction {}", c.direction);
    let _ = writeln!(out, "class {}", c.class);
    if is_convolution(&c.op) {
        let _ = writeln!(out, "{CONV_NOTE}");
    }
    for r in &c.reports {
        out.push('\n');
        out.push_str(&write_axiom_report(r));
    }
    out
}

pub fn write_case_report(c: &CaseReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "case {}", c.id);
    let _ = writeln!(out, "title {}", c.title);
    for check in &c.checks {
        let _ = writeln!(
            out,
            "check {}: {}",
            check.label,
            if check.holds { "ok" } else { "MISMATCH" }
        );
        let _ = writeln!(out, "  expected {}", check.expected);
        let _ = writeln!(out, "  computed {}", check.computed);
    }
    let _ = writeln!(out, "verdict {}", if c.passed() { "pass" } else { "fail" });
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lab::{check_axiom, AxiomId, GenConfig, T2Op};
    use crate::pwfn::parse_pwf;

    #[test]
    fn witness_blocks_parse_back() {
        let r = check_axiom(&T2Op::Star, AxiomId::O4p, 5, GenConfig::default()).unwrap();
        let text = write_axiom_report(&r);
        assert!(text
            .starts_with("axiom O4p\nop star\nseed 0\ntrials 5\nverdict fail\nwitness trial 0\n"));
        let blocks: Vec<&str> = text
            .split("end\n")
            .filter_map(|chunk| chunk.find("pwf v1").map(|i| &chunk[i..]))
            .collect();
        assert_eq!(blocks.len(), 5);
        let w = r.witness.unwrap();
        assert_eq!(parse_pwf(blocks[3]).unwrap(), w.lhs);
        assert_eq!(parse_pwf(blocks[4]).unwrap(), w.rhs.unwrap());
    }
}

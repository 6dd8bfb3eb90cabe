//! Line-oriented reports: `entity<TAB>check<TAB>status<TAB>witness`.

use std::fmt;

use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skip,
    Info,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skip => "skip",
            Status::Info => "info",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReportLine {
    pub entity: String,
    pub check: String,
    pub status: Status,
    pub witness: String,
}

impl fmt::Display for ReportLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let clean = |s: &str| s.replace(['\t', '\n'], " ");
        write!(
            f,
            "{}\t{}\t{}\t{}",
            clean(&self.entity),
            clean(&self.check),
            self.status,
            clean(&self.witness)
        )
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Report {
    pub lines: Vec<ReportLine>,
}

impl Report {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, entity: &str, check: &str, status: Status, witness: impl Into<String>) {
        self.lines.push(ReportLine {
            entity: entity.to_string(),
            check: check.to_string(),
            status,
            witness: witness.into(),
        });
    }

    /// `pass` when `ok`, otherwise `fail` with the witness.
    pub fn check(&mut self, entity: &str, check: &str, ok: bool, witness: impl Into<String>) {
        let status = if ok { Status::Pass } else { Status::Fail };
        self.push(entity, check, status, witness);
    }

    pub fn info(&mut self, entity: &str, check: &str, witness: impl Into<String>) {
        self.push(entity, check, Status::Info, witness);
    }

    pub fn extend(&mut self, other: Report) {
        self.lines.extend(other.lines);
    }

    pub fn failures(&self) -> impl Iterator<Item = &ReportLine> {
        self.lines.iter().filter(|l| l.status == Status::Fail)
    }

    pub fn is_ok(&self) -> bool {
        self.failures().next().is_none()
    }

    pub fn count(&self, status: Status) -> usize {
        self.lines.iter().filter(|l| l.status == status).count()
    }

    pub fn render_text(&self) -> String {
        let mut s = String::new();
        for l in &self.lines {
            s.push_str(&l.to_string());
            s.push('\n');
        }
        s
    }

    pub fn render_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize") + "\n"
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_lines_are_tab_separated() {
        let mut r = Report::new();
        r.check("diamond", "flags", true, "tc=true");
        r.check("m3", "flags", false, "top\tbad");
        assert_eq!(
            r.render_text(),
            "diamond\tflags\tpass\ttc=true\nm3\tflags\tfail\ttop bad\n"
        );
        assert!(!r.is_ok());
        assert_eq!(r.count(Status::Pass), 1);
    }

    #[test]
    fn json_has_fixed_key_order() {
        let mut r = Report::new();
        r.info("x", "c", "w");
        let j = r.render_json();
        let e = j.find("entity").unwrap();
        let c = j.find("check").unwrap();
        let s = j.find("status").unwrap();
        assert!(e < c && c < s);
    }
}

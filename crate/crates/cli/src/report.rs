//! Campaign reports: per-check counters, replayable failure exhibits, and a
//! plain-text rendering whose bytes depend only on the configuration and
//! outcomes. Timing never enters the document; the runner prints it to
//! stderr instead.

use std::collections::BTreeMap;
use std::fmt::Write as _;

pub const FORMAT_LINE: &str = "kwitt-report/1";

#[derive(Debug, Default, Clone, Copy)]
pub struct Counter {
    pub pass: u32,
    pub fail: u32,
    pub skip: u32,
}

#[derive(Debug, Clone)]
pub struct Exhibit {
    pub sample: u32,
    pub check: String,
    pub input: String,
    pub note: String,
}

#[derive(Debug)]
pub struct Report {
    campaign: String,
    config_lines: Vec<(String, String)>,
    counters: BTreeMap<String, Counter>,
    exhibits: Vec<Exhibit>,
    skips: BTreeMap<(String, String), u32>,
}

impl Report {
    pub fn new(campaign: &str, config_lines: Vec<(String, String)>) -> Report {
        Report {
            campaign: campaign.to_string(),
            config_lines,
            counters: BTreeMap::new(),
            exhibits: Vec::new(),
            skips: BTreeMap::new(),
        }
    }

    /// Registers a check so its counter line appears even if every sample
    /// skips it.
    pub fn touch(&mut self, check: &str) {
        self.counters.entry(check.to_string()).or_default();
    }

    pub fn pass(&mut self, check: &str) {
        self.counters.entry(check.to_string()).or_default().pass += 1;
    }

    pub fn fail(&mut self, check: &str, sample: u32, input: String, note: String) {
        self.counters.entry(check.to_string()).or_default().fail += 1;
        self.exhibits.push(Exhibit { sample, check: check.to_string(), input, note });
    }

    pub fn skip(&mut self, check: &str, reason: &str) {
        self.counters.entry(check.to_string()).or_default().skip += 1;
        *self
            .skips
            .entry((check.to_string(), reason.to_string()))
            .or_default() += 1;
    }

    pub fn passed(&self) -> bool {
        self.counters.values().all(|c| c.fail == 0)
    }

    pub fn counter(&self, check: &str) -> Counter {
        self.counters.get(check).copied().unwrap_or_default()
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{FORMAT_LINE}");
        let _ = writeln!(out, "campaign: {}", self.campaign);
        for (k, v) in &self.config_lines {
            let _ = writeln!(out, "{k}: {v}");
        }
        for (name, c) in &self.counters {
            let _ = writeln!(out, "check: {name} pass={} fail={} skip={}", c.pass, c.fail, c.skip);
        }
        let mut exhibits = self.exhibits.clone();
        exhibits.sort_by(|a, b| (a.sample, &a.check).cmp(&(b.sample, &b.check)));
        for e in &exhibits {
            let _ = writeln!(
                out,
                "exhibit: sample={} check={} input={} note={}",
                e.sample, e.check, e.input, e.note
            );
        }
        for ((check, reason), count) in &self.skips {
            let _ = writeln!(out, "skipnote: check={check} reason={reason} count={count}");
        }
        let _ = writeln!(out, "status: {}", if self.passed() { "pass" } else { "fail" });
        out
    }
}

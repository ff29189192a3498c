//! Structured command output: one report type serializable as JSON and
//! renderable as plain text. Indices are 1-based on this surface.

use serde::Serialize;
use symtensor::{
    CopositivityCertificate, EigenBounds, SpectralResult, Stats, StructureClass, TestId, Verdict,
};

/// The configuration every numeric field in the report was computed under.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct ConfigEcho {
    pub tolerance: f64,
    pub max_iterations: u64,
    pub shift: f64,
    pub restarts: u32,
    pub grid_resolution: Option<u32>,
    pub seed: u64,
}

#[derive(Serialize)]
pub struct BlockLambda {
    pub indices: Vec<usize>,
    pub lambda: f64,
}

#[derive(Serialize)]
pub struct SpectralSection {
    pub lambda: f64,
    pub eigenvector: Vec<f64>,
    pub residual: f64,
    pub iterations: u64,
    pub block_lambdas: Vec<BlockLambda>,
}

impl SpectralSection {
    pub fn from_result(r: &SpectralResult) -> Self {
        SpectralSection {
            lambda: r.lambda,
            eigenvector: r.eigenvector.clone(),
            residual: r.residual,
            iterations: r.iterations,
            block_lambdas: r
                .block_lambdas
                .iter()
                .map(|(block, lambda)| BlockLambda {
                    indices: block.iter().map(|&i| i + 1).collect(),
                    lambda: *lambda,
                })
                .collect(),
        }
    }
}

#[derive(Serialize)]
pub struct CertificateSection {
    pub verdict: Verdict,
    pub reason: TestId,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub nmin_estimate: Option<f64>,
}

impl CertificateSection {
    pub fn from_certificate(c: &CopositivityCertificate) -> Self {
        CertificateSection {
            verdict: c.verdict,
            reason: c.reason,
            witness: c.witness.clone(),
            nmin_estimate: c.nmin_estimate,
        }
    }
}

/// Everything a command may report; absent sections are omitted from JSON.
#[derive(Serialize)]
pub struct Report {
    pub command: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub file: Option<String>,
    pub order: usize,
    pub dim: usize,
    pub nnz: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub symmetrized: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub classification: Option<StructureClass>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub row_stats: Option<Stats>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub diag_stats: Option<Stats>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub weakly_irreducible: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reducing_set: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub blocks: Option<Vec<Vec<usize>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lambda_max: Option<SpectralSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lambda_min: Option<SpectralSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lambda_max_bounds: Option<EigenBounds>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lambda_min_bounds: Option<EigenBounds>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<CertificateSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub inner_product: Option<f64>,
    pub config: ConfigEcho,
}

impl Report {
    pub fn new(command: &'static str, order: usize, dim: usize, nnz: usize, config: ConfigEcho) -> Self {
        Report {
            command,
            file: None,
            order,
            dim,
            nnz,
            symmetrized: None,
            classification: None,
            row_stats: None,
            diag_stats: None,
            weakly_irreducible: None,
            reducing_set: None,
            blocks: None,
            lambda_max: None,
            lambda_min: None,
            lambda_max_bounds: None,
            lambda_min_bounds: None,
            certificate: None,
            inner_product: None,
            config,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Plain-text rendering: one `key: value` line per present field.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        push_line(&mut out, "command", self.command.to_string());
        if let Some(file) = &self.file {
            push_line(&mut out, "file", file.clone());
        }
        push_line(&mut out, "order", self.order.to_string());
        push_line(&mut out, "dim", self.dim.to_string());
        push_line(&mut out, "nnz", self.nnz.to_string());
        if let Some(symmetrized) = self.symmetrized {
            push_line(&mut out, "symmetrized", symmetrized.to_string());
        }
        if let Some(c) = &self.classification {
            push_line(
                &mut out,
                "classification",
                format!(
                    "nonnegative={} essentially-nonnegative={} essentially-nonpositive={}",
                    c.nonnegative, c.essentially_nonnegative, c.essentially_nonpositive
                ),
            );
        }
        if let Some(s) = &self.row_stats {
            push_line(
                &mut out,
                "row-sums",
                format!("max={} min={} mean={}", s.max, s.min, s.mean),
            );
        }
        if let Some(s) = &self.diag_stats {
            push_line(
                &mut out,
                "diagonal",
                format!("max={} min={} mean={}", s.max, s.min, s.mean),
            );
        }
        if let Some(w) = self.weakly_irreducible {
            push_line(&mut out, "weakly-irreducible", w.to_string());
        }
        if let Some(set) = &self.reducing_set {
            push_line(&mut out, "reducing-set", format_indices(set));
        }
        if let Some(blocks) = &self.blocks {
            let rendered: Vec<String> = blocks.iter().map(|b| format_indices(b)).collect();
            push_line(&mut out, "blocks", rendered.join(" "));
        }
        if let Some(s) = &self.lambda_max {
            render_spectral(&mut out, "lambda-max", s);
        }
        if let Some(s) = &self.lambda_min {
            render_spectral(&mut out, "lambda-min", s);
        }
        if let Some(b) = &self.lambda_max_bounds {
            push_line(&mut out, "lambda-max-bounds", format!("[{}, {}]", b.lower, b.upper));
        }
        if let Some(b) = &self.lambda_min_bounds {
            push_line(&mut out, "lambda-min-bounds", format!("[{}, {}]", b.lower, b.upper));
        }
        if let Some(c) = &self.certificate {
            push_line(&mut out, "verdict", verdict_name(c.verdict).to_string());
            push_line(&mut out, "reason", reason_name(c.reason).to_string());
            if let Some(w) = &c.witness {
                push_line(&mut out, "witness", format_vector(w));
            }
            if let Some(estimate) = c.nmin_estimate {
                push_line(&mut out, "nmin-estimate", format!("{estimate:e}"));
            }
        }
        if let Some(p) = self.inner_product {
            push_line(&mut out, "inner-product", p.to_string());
        }
        push_line(
            &mut out,
            "config",
            format!(
                "tolerance={} max-iterations={} shift={} restarts={} grid={} seed={}",
                self.config.tolerance,
                self.config.max_iterations,
                self.config.shift,
                self.config.restarts,
                self.config
                    .grid_resolution
                    .map_or("none".to_string(), |g| g.to_string()),
                self.config.seed
            ),
        );
        out
    }
}

fn push_line(out: &mut String, key: &str, value: String) {
    out.push_str(key);
    out.push_str(": ");
    out.push_str(&value);
    out.push('\n');
}

fn render_spectral(out: &mut String, name: &str, s: &SpectralSection) {
    out.push_str(&format!(
        "{name}: {} (residual {:e}, {} iterations)\n",
        s.lambda, s.residual, s.iterations
    ));
    out.push_str(&format!("{name}-eigenvector: {}\n", format_vector(&s.eigenvector)));
    for b in &s.block_lambdas {
        out.push_str(&format!(
            "{name}-block: {} -> {}\n",
            format_indices(&b.indices),
            b.lambda
        ));
    }
}

pub fn verdict_name(v: Verdict) -> &'static str {
    match v {
        Verdict::StrictlyCopositiveCertified => "strictly-copositive",
        Verdict::CopositiveCertified => "copositive",
        Verdict::NumericallyCopositive => "numerically-copositive",
        Verdict::NotCopositive => "not-copositive",
        Verdict::Inconclusive => "inconclusive",
    }
}

fn reason_name(t: TestId) -> &'static str {
    match t {
        TestId::DiagNecessary => "diag_necessary",
        TestId::DiagDominanceNonneg => "diag_dominance_nonneg",
        TestId::DiagDominancePos => "diag_dominance_pos",
        TestId::NonnegativeEntries => "nonnegative_entries",
        TestId::EssNonposRowsum => "ess_nonpos_rowsum",
        TestId::NminSearch => "nmin_search",
        TestId::GridOracle => "grid_oracle",
    }
}

fn format_indices(indices: &[usize]) -> String {
    let inner: Vec<String> = indices.iter().map(|i| i.to_string()).collect();
    format!("{{{}}}", inner.join(","))
}

fn format_vector(values: &[f64]) -> String {
    let inner: Vec<String> = values.iter().map(|v| format!("{v:.12}")).collect();
    format!("({})", inner.join(", "))
}

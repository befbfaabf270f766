//! Configuration, bundle I/O and the four commands behind the `conj` binary.

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use conjcodes::algebra::{Field, Matrix};
use conjcodes::codes::LinearCode;
use conjcodes::concat::{
    build_concatenated, dual_of_l, generator_of_l1, overall_rate, parity_check_of_l2, ConcatJson, ConcatenatedPair,
};
use conjcodes::ensemble::{
    sieve_good, standard_ensemble, verify_balanced, BalancedEnsemble, EnsembleJson, SieveReport,
};
use conjcodes::infotheory::{achievable_rate, exponent_sweep, ChannelModel};
use conjcodes::rs_outer::{hamming_pair, rs_pair, OuterPair};
use conjcodes::simulate::{monte_carlo, side_bounds, ConcatDecoder, SimRow, TrialConfig, SIM_CSV_HEADER};
use conjcodes::{Budget, Error};

pub const EXIT_VERIFY: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

/// An error with the process exit code it maps to.
#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    pub fn config(message: impl Into<String>) -> Self {
        CliError { code: EXIT_CONFIG, message: message.into() }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl std::error::Error for CliError {}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::BudgetExceeded { .. } => EXIT_BUDGET,
            Error::VerificationFailed(_) | Error::ContainmentViolated(_) => EXIT_VERIFY,
            _ => EXIT_CONFIG,
        };
        CliError { code, message: e.to_string() }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldParams {
    pub p: u32,
    #[serde(default = "one")]
    pub m: usize,
}

fn one() -> usize {
    1
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum OuterParams {
    Rs {
        #[serde(rename = "N")]
        n: usize,
        #[serde(rename = "K1")]
        k1: usize,
        #[serde(rename = "K2")]
        k2: usize,
    },
    /// Binary Hamming pair of length 2^r - 1 (needs k = 1).
    Hamming { r: usize },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Channels {
    pub w1: Vec<f64>,
    pub w2: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub field: FieldParams,
    pub n: usize,
    pub k1: usize,
    pub k2: usize,
    pub outer: OuterParams,
    #[serde(default = "default_epsilon")]
    pub epsilon: f64,
    #[serde(default)]
    pub channels: Option<Channels>,
    #[serde(default = "default_trials")]
    pub trials: u64,
    #[serde(default)]
    pub seed: u64,
    #[serde(default = "default_r_step")]
    pub r_step: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub out: Option<PathBuf>,
}

fn default_epsilon() -> f64 {
    0.05
}

fn default_trials() -> u64 {
    10_000
}

fn default_r_step() -> f64 {
    0.01
}

impl RunConfig {
    pub fn from_json(text: &str) -> CliResult<Self> {
        let cfg: RunConfig = serde_json::from_str(text).map_err(|e| CliError::config(format!("config: {e}")))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> CliResult<Self> {
        let text = fs::read_to_string(path)
            .map_err(|e| CliError::config(format!("cannot read config {}: {e}", path.display())))?;
        RunConfig::from_json(&text)
    }

    pub fn inner_field(&self) -> CliResult<Field> {
        Ok(Field::new(self.field.p, self.field.m)?)
    }

    pub fn outer_len(&self) -> usize {
        match self.outer {
            OuterParams::Rs { n, .. } => n,
            OuterParams::Hamming { r } => (1 << r) - 1,
        }
    }

    pub fn validate(&self) -> CliResult<()> {
        let bad = |m: String| Err(CliError::config(m));
        let f = self.inner_field()?;
        let (n, k1, k2) = (self.n, self.k1, self.k2);
        if n == 0 || k1 > n || k2 > n {
            return bad(format!("need 1 <= n and k1, k2 <= n (n = {n}, k1 = {k1}, k2 = {k2})"));
        }
        if k1 + k2 <= n {
            return bad(format!("k = k1 + k2 - n must be at least 1 (k1 = {k1}, k2 = {k2}, n = {n})"));
        }
        match self.outer {
            OuterParams::Rs { n: big_n, k1: a, k2: b } => {
                if big_n == 0 || a > big_n || b > big_n || a + b <= big_n {
                    return bad(format!(
                        "outer code needs K1, K2 <= N and K = K1 + K2 - N >= 1 (N = {big_n}, K1 = {a}, K2 = {b})"
                    ));
                }
            }
            OuterParams::Hamming { r } => {
                if !(2..=16).contains(&r) {
                    return bad(format!("Hamming outer code needs 2 <= r <= 16, got {r}"));
                }
                if f.order() != 2 || k1 + k2 - n != 1 {
                    return bad("Hamming outer code needs q = 2 and k = 1".into());
                }
            }
        }
        if !(self.epsilon >= 0.0 && self.epsilon.is_finite()) {
            return bad(format!("epsilon = {} must be finite and nonnegative", self.epsilon));
        }
        if self.trials == 0 {
            return bad("trials must be at least 1".into());
        }
        if !(self.r_step > 0.0 && self.r_step <= 1.0) {
            return bad(format!("r_step = {} must lie in (0, 1]", self.r_step));
        }
        if self.channels.is_some() {
            for (j, w) in self.channel_models()?.iter().enumerate() {
                if w.q != f.order() as usize {
                    return bad(format!("channel w{} has {} symbols, field has {}", j + 1, w.q, f.order()));
                }
            }
        }
        Ok(())
    }

    pub fn channel_models(&self) -> CliResult<[ChannelModel; 2]> {
        let ch = self.channels.as_ref().ok_or_else(|| CliError::config("config has no channels"))?;
        Ok([ChannelModel::new(ch.w1.clone())?, ChannelModel::new(ch.w2.clone())?])
    }

    /// sha256 of the canonical JSON, with the output path left out.
    pub fn hash(&self) -> String {
        let mut c = self.clone();
        c.out = None;
        let text = serde_json::to_string(&c).expect("config serializes");
        hex::encode(Sha256::digest(text.as_bytes()))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BundleJson {
    pub config_hash: String,
    pub length: usize,
    pub dimension: usize,
    pub rate: String,
    pub pair: ConcatJson,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
struct Stamped<T> {
    config_hash: String,
    #[serde(flatten)]
    body: T,
}

pub const BUNDLE_FILE: &str = "bundle.json";
pub const ENSEMBLE_FILE: &str = "ensemble.json";
pub const SIEVE_FILE: &str = "sieve_report.json";
pub const L1_FILE: &str = "L1.generator.txt";
pub const L2_FILE: &str = "L2.generator.txt";
pub const H2_FILE: &str = "L2.parity_check.txt";
pub const CONFIG_FILE: &str = "config.json";

fn write(dir: &Path, name: &str, contents: &str) -> CliResult<()> {
    fs::write(dir.join(name), contents)
        .map_err(|e| CliError::config(format!("cannot write {}: {e}", dir.join(name).display())))
}

fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn outer_pair(cfg: &RunConfig, inner: &Field) -> CliResult<OuterPair> {
    let big = inner.extend(cfg.k1 + cfg.k2 - cfg.n)?;
    Ok(match cfg.outer {
        OuterParams::Rs { n, k1, k2 } => rs_pair(&big, n, k1, k2)?,
        OuterParams::Hamming { r } => hamming_pair(&big, r)?,
    })
}

/// Everything `construct` produces, before it is written out.
pub struct Built {
    pub ensemble: BalancedEnsemble,
    pub sieve: SieveReport,
    pub pair: ConcatenatedPair,
}

/// Ensemble, sieve, and concatenation with the first N good members.
pub fn build(cfg: &RunConfig, budget: Budget) -> CliResult<Built> {
    let f = cfg.inner_field()?;
    let ensemble = standard_ensemble(&f, cfg.n, cfg.k1, cfg.k2)?;
    let sieve = sieve_good(&ensemble, cfg.epsilon, budget)?;
    let need = cfg.outer_len();
    if sieve.good_indices.len() < need {
        return Err(CliError::config(format!(
            "only {} good inner codes, the outer code needs {need}",
            sieve.good_indices.len()
        )));
    }
    let outer = outer_pair(cfg, &f)?;
    let pair = build_concatenated(&ensemble, &sieve.good_indices[..need], outer)?;
    Ok(Built { ensemble, sieve, pair })
}

/// Build and write the bundle; returns a one-line summary.
pub fn construct(cfg: &RunConfig, dir: &Path, budget: Budget) -> CliResult<String> {
    let built = build(cfg, budget)?;
    conjcodes::concat::verify_duality(&built.pair)?;
    let hash = cfg.hash();
    let cp = &built.pair;
    let rate = overall_rate(cp)?;
    fs::create_dir_all(dir).map_err(|e| CliError::config(format!("cannot create {}: {e}", dir.display())))?;
    let bundle = BundleJson {
        config_hash: hash.clone(),
        length: cp.n(),
        dimension: cp.pair().k(),
        rate: rate.to_string(),
        pair: cp.to_json(),
    };
    let mut canonical = cfg.clone();
    canonical.out = None;
    write(dir, CONFIG_FILE, &to_json(&canonical))?;
    write(dir, BUNDLE_FILE, &to_json(&bundle))?;
    write(dir, ENSEMBLE_FILE, &to_json(&Stamped { config_hash: hash.clone(), body: built.ensemble.to_json() }))?;
    write(dir, SIEVE_FILE, &to_json(&Stamped { config_hash: hash.clone(), body: built.sieve.clone() }))?;
    write(dir, L1_FILE, &generator_of_l1(cp)?.to_text())?;
    write(dir, L2_FILE, &cp.l(2).generator().to_text())?;
    write(dir, H2_FILE, &parity_check_of_l2(cp)?.to_text())?;
    Ok(format!("[[{}, {}]] rate {} written to {} (config {hash})", cp.n(), cp.pair().k(), rate, dir.display()))
}

/// A loaded bundle: the rebuilt pair and the stored artefacts to check
/// against it.
pub struct Bundle {
    pub meta: BundleJson,
    pub pair: ConcatenatedPair,
    pub ensemble: EnsembleJson,
    pub sieve: SieveReport,
    pub l1: Matrix,
    pub l2: Matrix,
    pub h2: Matrix,
}

fn read(dir: &Path, name: &str) -> CliResult<String> {
    let text = fs::read_to_string(dir.join(name))
        .map_err(|e| CliError::config(format!("corrupt bundle: cannot read {name}: {e}")))?;
    if text.trim().is_empty() {
        return Err(CliError::config(format!("corrupt bundle: {name} is empty")));
    }
    Ok(text)
}

fn parse<T: for<'de> Deserialize<'de>>(name: &str, text: &str) -> CliResult<T> {
    serde_json::from_str(text).map_err(|e| CliError::config(format!("corrupt bundle: {name}: {e}")))
}

pub fn load_bundle(dir: &Path) -> CliResult<Bundle> {
    let meta: BundleJson = parse(BUNDLE_FILE, &read(dir, BUNDLE_FILE)?)?;
    let ensemble: Stamped<EnsembleJson> = parse(ENSEMBLE_FILE, &read(dir, ENSEMBLE_FILE)?)?;
    let sieve: Stamped<SieveReport> = parse(SIEVE_FILE, &read(dir, SIEVE_FILE)?)?;
    for (name, h) in [(ENSEMBLE_FILE, &ensemble.config_hash), (SIEVE_FILE, &sieve.config_hash)] {
        if h != &meta.config_hash {
            return Err(CliError::config(format!("corrupt bundle: {name} has a different config hash")));
        }
    }
    let pair = ConcatenatedPair::from_json(&meta.pair)
        .map_err(|e| CliError { message: format!("bundle does not rebuild: {e}"), ..CliError::from(e) })?;
    let f = pair.field().clone();
    let matrix = |name: &str| -> CliResult<Matrix> {
        Matrix::from_text(&f, &read(dir, name)?).map_err(|e| CliError::config(format!("corrupt bundle: {name}: {e}")))
    };
    Ok(Bundle {
        l1: matrix(L1_FILE)?,
        l2: matrix(L2_FILE)?,
        h2: matrix(H2_FILE)?,
        meta,
        pair,
        ensemble: ensemble.body,
        sieve: sieve.body,
    })
}

/// Outcome of one verification suite.
#[derive(Clone, Debug, PartialEq)]
pub struct SuiteResult {
    pub name: &'static str,
    pub outcome: Result<(), String>,
}

impl fmt::Display for SuiteResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.outcome {
            Ok(()) => write!(f, "PASS {}", self.name),
            Err(m) => write!(f, "FAIL {}: {m}", self.name),
        }
    }
}

fn suite(name: &'static str, run: impl FnOnce() -> CliResult<Result<(), String>>) -> CliResult<SuiteResult> {
    match run() {
        Ok(outcome) => Ok(SuiteResult { name, outcome }),
        Err(e) if e.code == EXIT_BUDGET => Err(e),
        Err(e) => Ok(SuiteResult { name, outcome: Err(e.message) }),
    }
}

fn check(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn span(m: &Matrix, cols: usize, what: &str) -> CliResult<LinearCode> {
    if m.cols() != cols {
        return Err(CliError::config(format!("{what} has {} columns, expected {cols}", m.cols())));
    }
    Ok(LinearCode::from_generator(m))
}

/// Run every suite on a bundle. Budget errors abort; everything else is
/// reported per suite.
pub fn verify(b: &Bundle, budget: Budget) -> CliResult<Vec<SuiteResult>> {
    let cp = &b.pair;
    let n = cp.n();
    let mut out = Vec::new();

    out.push(suite("balancedness", || {
        let ens = BalancedEnsemble::from_json(&b.ensemble)?;
        if &ens.to_json() != cp.ensemble() {
            return Ok(Err("ensemble.json differs from the ensemble in bundle.json".into()));
        }
        for j in [1, 2] {
            match verify_balanced(&ens, j, budget) {
                Ok(_) => {}
                Err(e @ Error::BudgetExceeded { .. }) => return Err(e.into()),
                Err(e) => return Ok(Err(format!("family {j}: {e}"))),
            }
        }
        Ok(Ok(()))
    })?);

    out.push(suite("css", || {
        for m in cp.inner() {
            if !m.pair.c1().contains_code(&m.pair.c2().dual()) {
                return Ok(Err(format!("inner member {}: dual(C2) not inside C1", m.index)));
            }
        }
        let (l1, l2) = (span(&b.l1, n, L1_FILE)?, span(&b.l2, n, L2_FILE)?);
        Ok(check(l1.contains_code(&l2.dual()), || "dual(L2) not inside L1 for the stored generators".into()))
    })?);

    for (name, j, m, file) in [("duality-1", 2, &b.l2, L2_FILE), ("duality-2", 1, &b.l1, L1_FILE)] {
        out.push(suite(name, || {
            let stored = span(m, n, file)?;
            let dual = dual_of_l(cp, j)?;
            Ok(check(stored.dual() == dual, || {
                format!("dual(L{j}) from {file} differs from pi(D{j}-dual) + inner C{j} duals")
            })
            .and_then(|_| check(&stored == cp.l(j), || format!("{file} differs from the rebuilt L{j}"))))
        })?);
    }

    out.push(suite("parity-check", || {
        let h = span(&b.h2, n, H2_FILE)?;
        let l2 = span(&b.l2, n, L2_FILE)?;
        let zero = (0..l2.k()).all(|r| b.h2.mul_vec(l2.generator().row(r)).iter().all(|e| e.is_zero()));
        Ok(check(zero, || "H2 times a generator row of L2 is nonzero".into())
            .and_then(|_| check(h == l2.dual(), || "rows of H2 do not span dual(L2)".into())))
    })?);

    out.push(suite("sieve-consistency", || {
        let ens = BalancedEnsemble::from_json(&b.ensemble)?;
        let fresh = match sieve_good(&ens, b.sieve.epsilon, budget) {
            Ok(r) => r,
            Err(e @ Error::BudgetExceeded { .. }) => return Err(e.into()),
            Err(e) => return Ok(Err(e.to_string())),
        };
        if fresh != b.sieve {
            return Ok(Err("stored sieve report differs from a fresh sieve".into()));
        }
        let idx = &b.meta.pair.inner_indices;
        let mut sorted = idx.clone();
        sorted.sort();
        sorted.dedup();
        if sorted.len() != idx.len() {
            return Ok(Err("inner indices repeat".into()));
        }
        Ok(check(idx.iter().all(|i| fresh.good_indices.contains(i)), || "an inner index is not good".into()))
    })?);

    Ok(out)
}

pub const EXPONENT_CSV_HEADER: &str = "j,r,E_r,capacity_threshold,r_css,config_hash";

/// E_r sweeps for both channels. With `bits`, E_r is given in bits rather
/// than q-ary units.
pub fn exponent_csv(cfg: &RunConfig, bits: bool) -> CliResult<String> {
    let ws = cfg.channel_models()?;
    let scale = if bits { (ws[0].q as f64).log2() } else { 1.0 };
    let r_css = achievable_rate(&ws[0], &ws[1]);
    let hash = cfg.hash();
    let mut s = String::from(EXPONENT_CSV_HEADER);
    s.push('\n');
    for (j, w) in ws.iter().enumerate() {
        for (r, e) in exponent_sweep(w, cfg.r_step) {
            s.push_str(&format!("{},{r},{},{},{r_css},{hash}\n", j + 1, e * scale, w.capacity()));
        }
    }
    Ok(s)
}

/// Monte Carlo on both sides of a bundle, trials `offset..offset+trials`.
pub fn simulate_csv(cfg: &RunConfig, bundle: &Bundle, offset: u64, budget: Budget) -> CliResult<String> {
    let ws = cfg.channel_models()?;
    let cp = &bundle.pair;
    let hash = cfg.hash();
    let rate = overall_rate(cp)?.to_string();
    let mut s = String::from(SIM_CSV_HEADER);
    s.push('\n');
    for (j, w) in [1, 2].into_iter().zip(&ws) {
        let dec = ConcatDecoder::new(cp, j, budget)?;
        let est = monte_carlo(&dec, &TrialConfig { channel: w.clone(), trials: cfg.trials, seed: cfg.seed, offset })?;
        let bounds = side_bounds(cp, j, w, cfg.epsilon)?;
        let row = SimRow {
            n_outer: cp.n(),
            rate: rate.clone(),
            j,
            channel: w.label(),
            trials: est.trials,
            failures: est.failures,
            estimate: est.estimate,
            wilson_lo: est.wilson_lo,
            wilson_hi: est.wilson_hi,
            union_bound: bounds.union.exact,
            exponent_target: bounds.exponent_target,
            config_hash: hash.clone(),
        };
        s.push_str(&row.to_csv());
        s.push('\n');
    }
    Ok(s)
}

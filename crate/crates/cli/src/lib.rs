//! Verification harness: builds the posets for a chosen (W, k), computes the
//! Möbius number of the surgered multichain poset by up to three independent
//! routes, compares against the closed product formula, and reports.
//!
//! Routes:
//!   1. direct Möbius recursion on NC^(k)(W) \ mins ∪ {0̂}
//!   2. recursion on the dual presentation NC_(k)(W) \ maxs ∪ {1̂}
//!   3. the shelling route: falling-chain census of NC_(k)(W) ∪ {1̂} under
//!      the lex block labeling, plus the sum of Möbius values to the
//!      maximal elements (the maxs-deletion identity).

use std::collections::BTreeMap;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::{anyhow, bail, Context, Result};
use serde::{Deserialize, Serialize};

use ncp_core::catalan::positive_fuss_catalan;
use ncp_core::coxeter::{build_coxeter_system_with_gamma, CoxeterSystem, CoxeterType, Family};
use ncp_core::kdiv::{self, build_nc_lower, surgered_poset_lower, surgered_poset_upper};
use ncp_core::nc::{build_nc, find_el_reflection_order};
use ncp_core::shelling::{count_falling_maximal_chains, lex_block_labeling, sum_mobius_to_maxs};

pub const CODE_VERSION: &str = env!("CARGO_PKG_VERSION");

/// Which verification routes to run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    Recursion,
    Shelling,
    Both,
}

impl Method {
    pub fn parse(s: &str) -> Result<Method> {
        match s {
            "recursion" => Ok(Method::Recursion),
            "shelling" => Ok(Method::Shelling),
            "both" => Ok(Method::Both),
            _ => bail!("unknown method '{s}' (expected recursion|shelling|both)"),
        }
    }

    fn runs_recursion(self) -> bool {
        matches!(self, Method::Recursion | Method::Both)
    }

    fn runs_shelling(self) -> bool {
        matches!(self, Method::Shelling | Method::Both)
    }

    fn as_str(self) -> &'static str {
        match self {
            Method::Recursion => "recursion",
            Method::Shelling => "shelling",
            Method::Both => "both",
        }
    }
}

/// Deterministic part of a verification result; this is what the cache
/// stores and what must be byte-identical across runs.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct VerificationPayload {
    pub family: String,
    pub rank: usize,
    pub dihedral_order: u32,
    pub k: u64,
    pub gamma_perm: Vec<usize>,
    pub code_version: String,
    pub method: String,
    /// mu(NC^(k)(W) \ mins ∪ {0̂}) by direct recursion.
    pub lhs_mobius_upper: Option<i64>,
    /// mu(NC_(k)(W) \ maxs ∪ {1̂}) by recursion on the dual presentation.
    pub lhs_mobius_lower: Option<i64>,
    /// The shelling route: (-1)^(n+1) * falling census + sum to maxs.
    pub lhs_falling_chain: Option<i64>,
    /// (-1)^n (Cat+^(k) - Cat+^(k-1)).
    pub rhs_formula: i64,
    pub all_equal: bool,
    pub nc_elements: usize,
    pub upper_elements: Option<usize>,
    pub lower_elements: Option<usize>,
    /// mu(NC_(k)(W) ∪ {1̂}) by recursion, when the shelling route ran.
    pub mu_top_adjoined: Option<i64>,
    pub falling_chain_count: Option<u64>,
    /// Which sign convention mu(NC_(k)(W) ∪ {1̂}) = ±Cat+^(k-1) supports.
    pub sign_n_minus_1_supported: Option<bool>,
    pub sign_n_supported: Option<bool>,
}

/// Payload plus per-run metadata (timings are never cached).
#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    #[serde(flatten)]
    pub payload: VerificationPayload,
    pub timings_ms: BTreeMap<String, f64>,
    pub from_cache: bool,
}

/// Options for a single verification.
#[derive(Clone, Debug)]
pub struct VerifyOptions {
    pub ctype: CoxeterType,
    pub k: u64,
    pub method: Method,
    pub gamma_perm: Option<Vec<usize>>,
    pub max_elements: usize,
    pub cache: CacheConfig,
}

#[derive(Clone, Debug)]
pub struct CacheConfig {
    pub enabled: bool,
    pub dir: Option<PathBuf>,
}

impl CacheConfig {
    pub fn disabled() -> Self {
        CacheConfig {
            enabled: false,
            dir: None,
        }
    }

    pub fn resolve_dir(&self) -> PathBuf {
        if let Some(d) = &self.dir {
            return d.clone();
        }
        if let Ok(d) = std::env::var("NCP_CACHE_DIR") {
            if !d.is_empty() {
                return PathBuf::from(d);
            }
        }
        PathBuf::from(".ncp-cache")
    }
}

fn type_slug(ctype: &CoxeterType) -> String {
    match ctype.family {
        Family::I2 => format!("i2m{}", ctype.dihedral_order),
        _ => format!("{}{}", ctype.family, ctype.rank).to_lowercase(),
    }
}

fn cache_key(ctype: &CoxeterType, k: u64, gamma_perm: &[usize], method: Method) -> String {
    let perm: Vec<String> = gamma_perm.iter().map(|i| i.to_string()).collect();
    format!(
        "{}_k{}_g{}_m{}_v{}.json",
        type_slug(ctype),
        k,
        perm.join("-"),
        method.as_str(),
        CODE_VERSION
    )
}

fn load_cached(path: &Path, expect: &VerificationPayload) -> Option<VerificationPayload> {
    let bytes = std::fs::read(path).ok()?;
    let payload: VerificationPayload = match serde_json::from_slice(&bytes) {
        Ok(p) => p,
        Err(_) => {
            eprintln!("warning: discarding corrupt cache entry {}", path.display());
            return None;
        }
    };
    let keys_match = payload.family == expect.family
        && payload.rank == expect.rank
        && payload.dihedral_order == expect.dihedral_order
        && payload.k == expect.k
        && payload.gamma_perm == expect.gamma_perm
        && payload.code_version == expect.code_version
        && payload.method == expect.method;
    if !keys_match {
        eprintln!(
            "warning: discarding cache entry with mismatched key {}",
            path.display()
        );
        return None;
    }
    Some(payload)
}

fn store_cached(path: &Path, payload: &VerificationPayload) {
    let bytes = payload_bytes(payload);
    let write = || -> std::io::Result<()> {
        if let Some(parent) = path.parent() {
            std::fs::create_dir_all(parent)?;
        }
        std::fs::write(path, &bytes)
    };
    if let Err(e) = write() {
        eprintln!(
            "warning: cache entry {} not written ({e}); continuing without cache",
            path.display()
        );
    }
}

/// Canonical serialized form of a payload (the byte-identical cache
/// contract compares these).
pub fn payload_bytes(payload: &VerificationPayload) -> Vec<u8> {
    let mut v = serde_json::to_vec_pretty(payload).expect("payload serializes");
    v.push(b'\n');
    v
}

/// Runs one verification, consulting the cache when enabled.
pub fn cmd_verify(opts: &VerifyOptions) -> Result<VerificationReport> {
    let gamma_perm = opts
        .gamma_perm
        .clone()
        .unwrap_or_else(|| (0..opts.ctype.rank).collect());
    let skeleton = VerificationPayload {
        family: opts.ctype.family.to_string(),
        rank: opts.ctype.rank,
        dihedral_order: opts.ctype.dihedral_order,
        k: opts.k,
        gamma_perm: gamma_perm.clone(),
        code_version: CODE_VERSION.to_string(),
        method: opts.method.as_str().to_string(),
        lhs_mobius_upper: None,
        lhs_mobius_lower: None,
        lhs_falling_chain: None,
        rhs_formula: 0,
        all_equal: false,
        nc_elements: 0,
        upper_elements: None,
        lower_elements: None,
        mu_top_adjoined: None,
        falling_chain_count: None,
        sign_n_minus_1_supported: None,
        sign_n_supported: None,
    };

    let cache_path = opts.cache.enabled.then(|| {
        opts.cache
            .resolve_dir()
            .join(cache_key(&opts.ctype, opts.k, &gamma_perm, opts.method))
    });
    if let Some(path) = &cache_path {
        if let Some(payload) = load_cached(path, &skeleton) {
            return Ok(VerificationReport {
                payload,
                timings_ms: BTreeMap::new(),
                from_cache: true,
            });
        }
    }

    let (payload, timings) = compute_verification(opts, &gamma_perm, skeleton)?;
    if let Some(path) = &cache_path {
        store_cached(path, &payload);
    }
    Ok(VerificationReport {
        payload,
        timings_ms: timings,
        from_cache: false,
    })
}

fn compute_verification(
    opts: &VerifyOptions,
    gamma_perm: &[usize],
    mut payload: VerificationPayload,
) -> Result<(VerificationPayload, BTreeMap<String, f64>)> {
    if opts.k < 1 {
        bail!("k must be at least 1");
    }
    let mut timings = BTreeMap::new();
    let total_start = Instant::now();

    let t = Instant::now();
    let system = build_coxeter_system_with_gamma(&opts.ctype, gamma_perm)?;
    timings.insert("build_group".into(), elapsed_ms(t));

    let t = Instant::now();
    let nc = build_nc(&system);
    timings.insert("build_nc".into(), elapsed_ms(t));
    payload.nc_elements = nc.len();

    let n = system.rank() as u32;
    let sign_n = (-1i128).pow(n);
    let rhs = sign_n
        * (positive_fuss_catalan(&opts.ctype, opts.k)?
            - positive_fuss_catalan(&opts.ctype, opts.k - 1)?);
    payload.rhs_formula = i64::try_from(rhs).map_err(|_| anyhow!("formula value exceeds i64"))?;

    if opts.method.runs_recursion() {
        let t = Instant::now();
        let upper = surgered_poset_upper(&nc, opts.k as usize, opts.max_elements)?;
        payload.upper_elements = Some(upper.len());
        payload.lhs_mobius_upper = Some(upper.mobius_number()?);
        timings.insert("mobius_upper".into(), elapsed_ms(t));

        let t = Instant::now();
        let lower = surgered_poset_lower(&nc, opts.k as usize, opts.max_elements)?;
        payload.lhs_mobius_lower = Some(lower.mobius_number()?);
        timings.insert("mobius_lower".into(), elapsed_ms(t));
    }

    if opts.method.runs_shelling() {
        let t = Instant::now();
        let lower = build_nc_lower(&nc, opts.k as usize, opts.max_elements)?;
        payload.lower_elements = Some(lower.poset.len());
        let with_top = lower.poset.adjoin_top();
        let order = find_el_reflection_order(&nc)?;
        let labeling = lex_block_labeling(&system, &with_top, &lower.deltas, &order)?;
        let falling = count_falling_maximal_chains(&with_top, &labeling)?;
        payload.falling_chain_count = Some(falling);
        // rank(NC_(k) ∪ {1̂}) = n + 1.
        let mu_top_census = (-1i64).pow(n + 1) * falling as i64;
        let sum_maxs = sum_mobius_to_maxs(&lower.poset)?;
        payload.lhs_falling_chain = Some(mu_top_census + sum_maxs);

        // Sign bookkeeping for mu(NC_(k)(W) ∪ {1̂}).
        let mu_top = with_top.mobius_number()?;
        payload.mu_top_adjoined = Some(mu_top);
        let catplus_prev = positive_fuss_catalan(&opts.ctype, opts.k - 1)?;
        payload.sign_n_minus_1_supported = Some(mu_top as i128 == -sign_n * catplus_prev);
        payload.sign_n_supported = Some(mu_top as i128 == sign_n * catplus_prev);
        timings.insert("shelling".into(), elapsed_ms(t));
    }

    let lhs_values: Vec<i64> = [
        payload.lhs_mobius_upper,
        payload.lhs_mobius_lower,
        payload.lhs_falling_chain,
    ]
    .into_iter()
    .flatten()
    .collect();
    payload.all_equal =
        !lhs_values.is_empty() && lhs_values.iter().all(|&v| v == payload.rhs_formula);

    timings.insert("total".into(), elapsed_ms(total_start));
    Ok((payload, timings))
}

fn elapsed_ms(start: Instant) -> f64 {
    start.elapsed().as_secs_f64() * 1e3
}

/// Renders a report as human-readable text.
pub fn render_report_text(report: &VerificationReport) -> String {
    let p = &report.payload;
    let mut out = String::new();
    let type_name = match p.family.as_str() {
        "I2" => format!("I2({})", p.dihedral_order),
        "H3" | "F4" => p.family.clone(),
        f => format!("{}{}", f, p.rank),
    };
    out.push_str(&format!(
        "{} k={}  method={}{}\n",
        type_name,
        p.k,
        p.method,
        if report.from_cache { "  [cached]" } else { "" }
    ));
    if let Some(v) = p.lhs_mobius_upper {
        out.push_str(&format!("  mu(upper poset, recursion)   = {v}\n"));
    }
    if let Some(v) = p.lhs_mobius_lower {
        out.push_str(&format!("  mu(dual poset, recursion)    = {v}\n"));
    }
    if let Some(v) = p.lhs_falling_chain {
        out.push_str(&format!("  shelling route               = {v}\n"));
    }
    out.push_str(&format!(
        "  closed formula               = {}\n",
        p.rhs_formula
    ));
    if let (Some(mu), Some(s1), Some(s2)) = (
        p.mu_top_adjoined,
        p.sign_n_minus_1_supported,
        p.sign_n_supported,
    ) {
        out.push_str(&format!(
            "  mu(lower ∪ 1̂) = {mu}; sign (-1)^(n-1): {s1}, sign (-1)^n: {s2}\n"
        ));
    }
    out.push_str(&format!(
        "  result: {}\n",
        if p.all_equal { "PASS" } else { "MISMATCH" }
    ));
    if !report.timings_ms.is_empty() {
        let stages: Vec<String> = report
            .timings_ms
            .iter()
            .map(|(k, v)| format!("{k}={v:.1}ms"))
            .collect();
        out.push_str(&format!("  timings: {}\n", stages.join(" ")));
    }
    out
}

/// One cell of the verification grid.
#[derive(Clone, Debug, Serialize)]
pub struct TableCell {
    pub family: String,
    pub rank: usize,
    pub dihedral_order: u32,
    pub k: u64,
    pub lhs: Option<i64>,
    pub rhs: Option<i64>,
    pub pass: Option<bool>,
    pub skipped: Option<String>,
}

/// Runs the verification grid; cells that exceed scale caps or refuse to
/// build are marked skipped rather than failing the whole table.
pub fn cmd_table(
    families: &[Family],
    max_rank: usize,
    max_k: u64,
    cache: &CacheConfig,
    max_elements: usize,
) -> Vec<TableCell> {
    let mut types: Vec<CoxeterType> = Vec::new();
    for family in families {
        match family {
            Family::A => (1..=max_rank.min(7)).for_each(|r| types.push(CoxeterType::a(r))),
            Family::B => (2..=max_rank.min(6)).for_each(|r| types.push(CoxeterType::b(r))),
            Family::D => (4..=max_rank.min(6)).for_each(|r| types.push(CoxeterType::d(r))),
            Family::I2 => (3..=12).for_each(|m| types.push(CoxeterType::i2(m))),
            Family::H3 => types.push(CoxeterType::h3()),
            Family::F4 => types.push(CoxeterType::f4()),
        }
    }
    let mut cells = Vec::new();
    for ctype in types {
        for k in 1..=max_k {
            let opts = VerifyOptions {
                ctype: ctype.clone(),
                k,
                method: Method::Both,
                gamma_perm: None,
                max_elements,
                cache: cache.clone(),
            };
            match cmd_verify(&opts) {
                Ok(report) => cells.push(TableCell {
                    family: ctype.family.to_string(),
                    rank: ctype.rank,
                    dihedral_order: ctype.dihedral_order,
                    k,
                    lhs: report
                        .payload
                        .lhs_mobius_upper
                        .or(report.payload.lhs_falling_chain),
                    rhs: Some(report.payload.rhs_formula),
                    pass: Some(report.payload.all_equal),
                    skipped: None,
                }),
                Err(e) => cells.push(TableCell {
                    family: ctype.family.to_string(),
                    rank: ctype.rank,
                    dihedral_order: ctype.dihedral_order,
                    k,
                    lhs: None,
                    rhs: None,
                    pass: None,
                    skipped: Some(e.to_string()),
                }),
            }
        }
    }
    cells
}

pub fn render_table_csv(cells: &[TableCell]) -> String {
    let mut out = String::from("family,rank,k,lhs,rhs,pass,m,skipped\n");
    for c in cells {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{}\n",
            c.family,
            c.rank,
            c.k,
            c.lhs.map(|v| v.to_string()).unwrap_or_default(),
            c.rhs.map(|v| v.to_string()).unwrap_or_default(),
            c.pass.map(|v| v.to_string()).unwrap_or_default(),
            if c.dihedral_order > 0 {
                c.dihedral_order.to_string()
            } else {
                String::new()
            },
            c.skipped.clone().unwrap_or_default()
        ));
    }
    out
}

pub fn render_table_text(cells: &[TableCell]) -> String {
    let mut out = String::from("type        k   lhs      rhs      status\n");
    for c in cells {
        let type_name = match c.family.as_str() {
            "I2" => format!("I2({})", c.dihedral_order),
            "H3" | "F4" => c.family.clone(),
            _ => format!("{}{}", c.family, c.rank),
        };
        let status = match (&c.skipped, c.pass) {
            (Some(reason), _) => format!("skipped: {reason}"),
            (None, Some(true)) => "pass".into(),
            (None, Some(false)) => "MISMATCH".into(),
            (None, None) => "?".into(),
        };
        out.push_str(&format!(
            "{:<11} {:<3} {:<8} {:<8} {}\n",
            type_name,
            c.k,
            c.lhs.map(|v| v.to_string()).unwrap_or_default(),
            c.rhs.map(|v| v.to_string()).unwrap_or_default(),
            status
        ));
    }
    out
}

/// What to export.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExportObject {
    Group,
    Nc,
    Nck,
    Labeling,
}

impl ExportObject {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "group" => Ok(ExportObject::Group),
            "nc" => Ok(ExportObject::Nc),
            "nck" => Ok(ExportObject::Nck),
            "labeling" => Ok(ExportObject::Labeling),
            _ => bail!("unknown object '{s}' (expected group|nc|nck|labeling)"),
        }
    }
}

/// Builds the requested structure and renders it as JSON or DOT.
pub fn cmd_export(
    object: ExportObject,
    ctype: &CoxeterType,
    k: u64,
    format: &str,
    gamma_perm: Option<&[usize]>,
    max_elements: usize,
) -> Result<String> {
    let perm: Vec<usize> = gamma_perm
        .map(|p| p.to_vec())
        .unwrap_or_else(|| (0..ctype.rank).collect());
    let system = build_coxeter_system_with_gamma(ctype, &perm)?;
    match (object, format) {
        (ExportObject::Group, "json") => Ok(group_json(&system)),
        (ExportObject::Nc, "json") => {
            let nc = build_nc(&system);
            Ok(pretty(nc.poset().to_json()))
        }
        (ExportObject::Nc, "dot") => {
            let nc = build_nc(&system);
            let order = find_el_reflection_order(&nc)?;
            let labeling = nc.natural_labeling(&order);
            Ok(nc.poset().to_dot(
                &format!("NC_{}", type_slug(ctype)),
                Some(&|x, y| {
                    let pos = labeling.label_of(x, y).expect("total labeling");
                    format!("{} #{}", labeling.label_set().name(pos), pos + 1)
                }),
            ))
        }
        (ExportObject::Nck, "json") => {
            let nc = build_nc(&system);
            let lower = build_nc_lower(&nc, k as usize, max_elements)?;
            Ok(pretty(serde_json::json!({
                "poset": lower.poset.to_json(),
                "delta_sequences": kdiv::deltas_to_json(&system, &lower.deltas),
            })))
        }
        (ExportObject::Nck, "dot") => {
            let nc = build_nc(&system);
            let lower = build_nc_lower(&nc, k as usize, max_elements)?;
            Ok(lower
                .poset
                .to_dot(&format!("NC_{}_k{}", type_slug(ctype), k), None))
        }
        (ExportObject::Labeling, "json" | "dot") => {
            let nc = build_nc(&system);
            let lower = build_nc_lower(&nc, k as usize, max_elements)?;
            let with_top = lower.poset.adjoin_top();
            let order = find_el_reflection_order(&nc)?;
            let labeling = lex_block_labeling(&system, &with_top, &lower.deltas, &order)?;
            if format == "json" {
                Ok(pretty(labeling.to_json()))
            } else {
                Ok(with_top.to_dot(
                    &format!("NC_{}_k{}_labeled", type_slug(ctype), k),
                    Some(&|x, y| {
                        let pos = labeling.label_of(x, y).expect("total labeling");
                        labeling.label_set().name(pos).to_string()
                    }),
                ))
            }
        }
        (ExportObject::Group, other) => bail!("group export supports json, not '{other}'"),
        (_, other) => bail!("unknown format '{other}' (expected json|dot)"),
    }
}

fn group_json(system: &CoxeterSystem) -> String {
    let render_all = |ids: Vec<&ncp_core::coxeter::GroupElement>| -> Vec<String> {
        ids.into_iter().map(|w| system.render(w)).collect()
    };
    pretty(serde_json::json!({
        "type": system.ctype().to_string(),
        "rank": system.rank(),
        "order": system.group_order(),
        "num_reflections": system.num_reflections(),
        "elements": (0..system.group_order())
            .map(|i| system.render_id(i))
            .collect::<Vec<_>>(),
        "simple_generators": render_all(system.simple_generators()),
        "reflections": render_all(system.reflections()),
        "coxeter_element": system.render(system.coxeter_element()),
    }))
}

fn pretty(v: serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(&v).expect("json renders");
    s.push('\n');
    s
}

/// Writes output to a file or stdout.
pub fn write_output(out: Option<&Path>, content: &str) -> Result<()> {
    match out {
        Some(path) => {
            std::fs::write(path, content).with_context(|| format!("writing {}", path.display()))?;
        }
        None => {
            std::io::stdout().write_all(content.as_bytes())?;
        }
    }
    Ok(())
}

/// Parses "a,b,i2" style family lists.
pub fn parse_families(s: &str) -> Result<Vec<Family>> {
    s.split(',')
        .filter(|p| !p.is_empty())
        .map(|p| match p.trim().to_lowercase().as_str() {
            "a" => Ok(Family::A),
            "b" => Ok(Family::B),
            "d" => Ok(Family::D),
            "i2" => Ok(Family::I2),
            "h3" => Ok(Family::H3),
            "f4" => Ok(Family::F4),
            other => bail!("unknown family '{other}'"),
        })
        .collect()
}

/// Parses a Coxeter type from CLI pieces.
pub fn parse_ctype(family: &str, rank: Option<usize>, m: Option<u32>) -> Result<CoxeterType> {
    let ctype = match family.to_lowercase().as_str() {
        "a" => CoxeterType::a(rank.ok_or_else(|| anyhow!("--rank required for type A"))?),
        "b" => CoxeterType::b(rank.ok_or_else(|| anyhow!("--rank required for type B"))?),
        "d" => CoxeterType::d(rank.ok_or_else(|| anyhow!("--rank required for type D"))?),
        "i2" => CoxeterType::i2(m.ok_or_else(|| anyhow!("--m required for type I2"))?),
        "h3" => CoxeterType::h3(),
        "f4" => CoxeterType::f4(),
        other => bail!("unknown family '{other}' (expected a|b|d|i2|h3|f4)"),
    };
    ctype.validate()?;
    Ok(ctype)
}

/// Parses "--gamma-perm 1,0,2".
pub fn parse_gamma_perm(s: &str) -> Result<Vec<usize>> {
    s.split(',')
        .map(|p| {
            p.trim()
                .parse::<usize>()
                .map_err(|e| anyhow!("bad index '{p}': {e}"))
        })
        .collect()
}

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use anyhow::{bail, Context as _, Result};
use kempe_core::exactfield::FieldSpec;
use kempe_core::graphalg::{straighten, straighten_by_solve, GraphPolynomial, ValenceVector};
use kempe_core::invring::{graded_dimension_with, noncrossing_count, relation_kernel_with, KernelOptions, SymPower, SPANNING_CAP};
use kempe_core::relcat::{
    del_pezzo_quadrics, plucker_relation, segre_binomial_cubic, simple_quadric, skew_cubic, CatalogEntry, CatalogName,
};
use kempe_core::symrep::{character_table, module_character, sym_power_character, ClassFunction};
use serde_json::json;

use crate::cache::Cache;
use crate::config::{OutputFormat, RunConfig};

/// Weight vector from `--weights` or `--valence k` (uniform).
pub fn weight_vector(n: usize, valence: Option<usize>, weights: Option<&[usize]>) -> Result<ValenceVector> {
    match (valence, weights) {
        (Some(_), Some(_)) => bail!("give either --valence or --weights, not both"),
        (_, Some(w)) => {
            if w.len() != n {
                bail!("--weights has {} entries but n = {n}", w.len());
            }
            Ok(ValenceVector(w.to_vec()))
        }
        (k, None) => Ok(ValenceVector::uniform(n, k.unwrap_or(1))),
    }
}

pub fn cmd_dims(config: &RunConfig, w: &ValenceVector) -> Result<String> {
    let n = w.n();
    let v = w.scaled(config.degree.unwrap_or(1));
    let dim = graded_dimension_with(n, &v, config.field, config.mode.map(Into::into), config.seed, SPANNING_CAP)?;
    let nc = noncrossing_count(n, &v);
    Ok(match config.format {
        OutputFormat::Text => format!("{dim}\t(non-crossing graphs: {nc}; valence {v}; field {})\n", config.field),
        OutputFormat::Json => format!(
            "{}\n",
            json!({"n": n, "valence": v.0, "field": config.field.to_string(), "dimension": dim, "noncrossing": nc})
        ),
    })
}

pub fn cmd_straighten(config: &RunConfig, literal: Option<&str>, file: Option<&Path>, oracle: bool) -> Result<String> {
    let inputs: Vec<String> = match (literal, file) {
        (Some(l), None) => vec![l.to_string()],
        (None, Some(path)) => fs::read_to_string(path)
            .with_context(|| format!("reading {}", path.display()))?
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
            .map(String::from)
            .collect(),
        _ => bail!("give a graph literal or --file, not both"),
    };
    let mut out = String::new();
    for text in inputs {
        let p = GraphPolynomial::parse(&text, config.field).with_context(|| format!("in `{text}`"))?;
        let s = straighten(&p)?;
        let agreement = if oracle { Some(straighten_by_solve(&p)? == s) } else { None };
        match config.format {
            OutputFormat::Text => {
                writeln!(out, "{s}")?;
                if let Some(ok) = agreement {
                    writeln!(out, "oracle: {}", if ok { "agree" } else { "DISAGREE" })?;
                }
            }
            OutputFormat::Json => writeln!(
                out,
                "{}",
                json!({"input": text, "straightened": s.to_string(), "oracle_agrees": agreement})
            )?,
        }
        if agreement == Some(false) {
            bail!("straightening disagrees with the linear-solve oracle on `{text}`:\n{out}");
        }
    }
    Ok(out)
}

pub fn cmd_kernel(config: &RunConfig, w: &ValenceVector, d: usize, out: Option<&Path>) -> Result<String> {
    let n = w.n();
    let cache = Cache::new(config.cache_dir.clone());
    let key = Cache::key(
        "invring",
        "relation_kernel",
        &[
            ("n", n.to_string()),
            ("w", w.to_string()),
            ("d", d.to_string()),
            ("field", config.field.to_string()),
            ("cell_cap", config.caps.cell_cap.to_string()),
        ],
    );
    let opts = KernelOptions {
        cell_cap: config.caps.cell_cap,
        ..KernelOptions::default()
    };
    let lines: Vec<String> = cache.get_or_compute(&key, || -> Result<Vec<String>> {
        let k = relation_kernel_with(n, w, d, config.field, &opts)?;
        Ok(k.relations().iter().map(|r| r.to_string()).collect())
    })?;
    if let Some(path) = out {
        let mut text = lines.join("\n");
        text.push('\n');
        fs::write(path, text).with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(match config.format {
        OutputFormat::Text => format!("{}\n", lines.len()),
        OutputFormat::Json => format!(
            "{}\n",
            json!({"n": n, "weights": w.0, "degree": d, "field": config.field.to_string(), "dimension": lines.len()})
        ),
    })
}

/// The spaces `decompose` understands.
#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Space {
    /// Degree-one invariants.
    R1,
    /// Degree-two invariants.
    R2,
    /// Symmetric square of R1.
    Sym2,
    /// Symmetric cube of R1.
    Sym3,
    /// Quadric relations, Sym2 minus R2.
    Quadrics,
}

pub fn cmd_decompose(config: &RunConfig, n: usize, space: Space) -> Result<String> {
    if n % 2 == 1 {
        bail!("decompose works with unit weights on an even number of points");
    }
    let table = character_table(n)?;
    let unit = ValenceVector::uniform(n, 1);
    let r1 = || module_character(n, &unit);
    let r2 = || module_character(n, &ValenceVector::uniform(n, 2));
    let q = FieldSpec::Rationals;
    let (chi, independent): (ClassFunction, u128) = match space {
        Space::R1 => (r1()?, graded_dimension_with(n, &unit, q, None, config.seed, SPANNING_CAP)? as u128),
        Space::R2 => (
            r2()?,
            graded_dimension_with(n, &ValenceVector::uniform(n, 2), q, None, config.seed, SPANNING_CAP)? as u128,
        ),
        Space::Sym2 => (sym_power_character(&r1()?, 2)?, SymPower::new(n, &unit, 2).dim() as u128),
        Space::Sym3 => (sym_power_character(&r1()?, 3)?, SymPower::new(n, &unit, 3).dim() as u128),
        Space::Quadrics => (
            sym_power_character(&r1()?, 2)?.sub(&r2()?)?,
            relation_kernel_with(n, &unit, 2, q, &KernelOptions::default())?.dim() as u128,
        ),
    };
    let m = table.decompose(&chi)?;
    let consistent = m.dimension() == independent;
    Ok(match config.format {
        OutputFormat::Text => format!(
            "{m}\nindependent dimension {independent}: {}\nmultiplicity free: {}\nsign multiplicity: {}\n",
            if consistent { "consistent" } else { "INCONSISTENT" },
            m.is_multiplicity_free(),
            table.sign_multiplicity(&chi)?,
        ),
        OutputFormat::Json => format!(
            "{}\n",
            json!({
                "n": n,
                "space": format!("{space:?}").to_lowercase(),
                "summands": m.0.iter().map(|(p, k)| json!({"partition": p.to_string(), "multiplicity": k})).collect::<Vec<_>>(),
                "dimension": m.dimension().to_string(),
                "independent_dimension": independent.to_string(),
                "consistent": consistent,
            })
        ),
    })
}

/// The named relations, one per line as `name | n | degree | terms`.
pub fn catalog_entries() -> Result<Vec<CatalogEntry>> {
    let entry = |name, relation, note: &str| CatalogEntry {
        name,
        relation,
        note: note.to_string(),
    };
    let mut out = vec![
        entry(CatalogName::Plucker, plucker_relation(), "three-term relation on 4 points"),
        entry(CatalogName::SimpleQuadric, simple_quadric(), "binomial quadric on 8 points"),
        entry(CatalogName::SegreBinomialCubic, segre_binomial_cubic(), "binomial cubic on 6 points"),
    ];
    for (i, r) in del_pezzo_quadrics().into_iter().enumerate() {
        out.push(entry(CatalogName::DelPezzoQuadric, r, &format!("rotation {i}")));
    }
    let matching = kempe_core::graphalg::GraphMonomial::normalize(6, &[(1, 2), (3, 4), (5, 6)])?;
    out.push(entry(CatalogName::SkewCubic, skew_cubic(6, &matching)?, "alternating cubic on 6 points"));
    Ok(out)
}

pub fn cmd_catalog() -> Result<String> {
    let mut out = String::new();
    for e in catalog_entries()? {
        writeln!(out, "{e}")?;
    }
    Ok(out)
}

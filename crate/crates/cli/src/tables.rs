//! Stable-basis tables: parallel computation, JSON form and the on-disk cache.

use std::fs::{self, OpenOptions};
use std::io::{ErrorKind, Write};
use std::path::{Path, PathBuf};

use quantstab_core::parabolic::Parabolic;
use quantstab_core::stable::{minus_table, plus_row, Chamber, RestrictionTable, StableBasis};
use quantstab_core::symfield::{parse_ratfunc, Poly};
use rayon::prelude::*;
use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

use crate::config::{ChamberArg, JobConfig};
use crate::error::{CliError, Result};

/// Plus rows in parallel, then the minus table by duality.
pub fn compute(par: &Parabolic) -> Result<StableBasis> {
    let rows = (0..par.num_cosets())
        .into_par_iter()
        .map(|c| plus_row(par, c))
        .collect::<std::result::Result<Vec<_>, _>>()?;
    let plus = RestrictionTable::new(Chamber::Plus, rows)?;
    let minus = minus_table(par, &plus)?;
    Ok(StableBasis::from_tables(par, plus, minus)?)
}

fn table_json(par: &Parabolic, table: &RestrictionTable) -> Value {
    let n = par.num_cosets();
    let mut rows = Map::new();
    for class in 0..n {
        let mut row = Map::new();
        for point in 0..n {
            row.insert(
                par.coset_label(point),
                Value::String(table.get(class, point).to_string()),
            );
        }
        rows.insert(par.coset_label(class), Value::Object(row));
    }
    Value::Object(rows)
}

pub fn data_json(par: &Parabolic, basis: &StableBasis, chamber: ChamberArg) -> Value {
    let cosets: Vec<String> = (0..par.num_cosets()).map(|c| par.coset_label(c)).collect();
    let mut data = Map::new();
    data.insert("dim".into(), json!(par.dim()));
    data.insert("cosets".into(), json!(cosets));
    if chamber != ChamberArg::Minus {
        data.insert("plus".into(), table_json(par, basis.plus()));
    }
    if chamber != ChamberArg::Plus {
        data.insert("minus".into(), table_json(par, basis.minus()));
    }
    Value::Object(data)
}

fn bad(msg: impl Into<String>) -> CliError {
    CliError::Usage(format!("malformed table document: {}", msg.into()))
}

fn table_from_json(par: &Parabolic, chamber: Chamber, value: &Value) -> Result<RestrictionTable> {
    let rows = value
        .as_object()
        .ok_or_else(|| bad(format!("{} is not an object", chamber.name())))?;
    let n = par.num_cosets();
    if rows.len() != n {
        return Err(bad(format!(
            "{} has {} rows, expected {n}",
            chamber.name(),
            rows.len()
        )));
    }
    let mut entries = vec![Vec::with_capacity(n); n];
    for (label, row) in rows {
        let class = par.find_coset(label)?;
        let row = row.as_object().ok_or_else(|| bad(format!("row {label}")))?;
        if row.len() != n {
            return Err(bad(format!("row {label} has {} entries", row.len())));
        }
        let mut cells = vec![Poly::zero(); n];
        for (point, v) in row {
            let s = v
                .as_str()
                .ok_or_else(|| bad(format!("entry {label}/{point}")))?;
            cells[par.find_coset(point)?] = parse_ratfunc(s)?.into_poly()?;
        }
        entries[class] = cells;
    }
    Ok(RestrictionTable::new(chamber, entries)?)
}

/// Reads a document written by `stab` (header and data) back into tables.
/// The header must describe the same Cartan matrix and parabolic subset.
pub fn load_document(par: &Parabolic, doc: &Value) -> Result<StableBasis> {
    let header = doc.get("header").ok_or_else(|| bad("no header"))?;
    let rows: Vec<Vec<i32>> = serde_json::from_value(header["cartan"]["matrix"].clone())?;
    if rows != par.root_system().cartan().rows() {
        return Err(bad("Cartan matrix differs"));
    }
    let subset: Vec<usize> = serde_json::from_value(header["parabolic"].clone())?;
    let expect: Vec<usize> = par.subset().iter().map(|i| i + 1).collect();
    if subset != expect {
        return Err(bad("parabolic subset differs"));
    }
    let data = doc.get("data").ok_or_else(|| bad("no data"))?;
    let plus = table_from_json(par, Chamber::Plus, &data["plus"])?;
    let minus = table_from_json(par, Chamber::Minus, &data["minus"])?;
    Ok(StableBasis::from_tables(par, plus, minus)?)
}

/// Cache file for a configuration.
pub fn cache_path(dir: &Path, cfg: &JobConfig) -> PathBuf {
    let digest = Sha256::digest(cfg.canonical_key().as_bytes());
    let hex: String = digest.iter().map(|b| format!("{b:02x}")).collect();
    dir.join(format!("stab-{hex}.json"))
}

/// Header of a cache file: the configuration as `stab --chamber both` with
/// JSON output would echo it.
fn cache_header(cfg: &JobConfig) -> Value {
    let mut c = cfg.clone();
    c.command = "stab";
    c.format = crate::config::Format::Json;
    c.weight = None;
    c.degree = None;
    c.header()
}

/// Loads from the cache when possible, otherwise computes and stores.
///
/// Unreadable or mismatched cache files are ignored and rewritten. Writers
/// hold `<file>.lock`, created exclusively; when it already exists the
/// result is simply not stored.
pub fn load_or_compute(cfg: &JobConfig, par: &Parabolic) -> Result<StableBasis> {
    let Some(dir) = &cfg.cache_dir else {
        return compute(par);
    };
    let path = cache_path(dir, cfg);
    if let Ok(text) = fs::read_to_string(&path) {
        if let Ok(basis) = serde_json::from_str(&text)
            .map_err(CliError::from)
            .and_then(|doc: Value| load_document(par, &doc))
        {
            return Ok(basis);
        }
    }
    let basis = compute(par)?;
    let doc = json!({
        "header": cache_header(cfg),
        "data": data_json(par, &basis, ChamberArg::Both),
    });
    store(dir, &path, &doc)?;
    Ok(basis)
}

fn store(dir: &Path, path: &Path, doc: &Value) -> Result<()> {
    let file_err = |p: &Path| {
        let p = p.to_path_buf();
        move |source| CliError::File { path: p, source }
    };
    fs::create_dir_all(dir).map_err(file_err(dir))?;
    let lock = path.with_extension("json.lock");
    match OpenOptions::new().write(true).create_new(true).open(&lock) {
        Ok(_) => {}
        Err(e) if e.kind() == ErrorKind::AlreadyExists => return Ok(()),
        Err(e) => return Err(file_err(&lock)(e)),
    }
    let tmp = path.with_extension("json.tmp");
    let result = (|| {
        let mut f = fs::File::create(&tmp).map_err(file_err(&tmp))?;
        f.write_all(serde_json::to_string_pretty(doc)?.as_bytes())
            .and_then(|_| f.write_all(b"\n"))
            .map_err(file_err(&tmp))?;
        fs::rename(&tmp, path).map_err(file_err(path))
    })();
    let _ = fs::remove_file(&lock);
    result
}

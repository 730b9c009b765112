use quantstab_core::hecke::{apply_q_linear, bmo_operator, dl_word, pcon_operator};
use quantstab_core::parabolic::Parabolic;
use quantstab_core::quantum::{quantum_matrix, Matrix};
use quantstab_core::rootsys::parse_word;
use quantstab_core::symfield::{parse_ratfunc, RatFunc, Var, MAX_RANK};
use serde_json::json;

use crate::config::{ChamberArg, JobConfig, Part};
use crate::error::{CliError, Result};
use crate::render::{align, labelled_matrix, Report};
use crate::tables;

fn coset_labels(par: &Parabolic) -> Vec<String> {
    (0..par.num_cosets()).map(|c| par.coset_label(c)).collect()
}

pub fn roots(cfg: &JobConfig) -> Result<Report> {
    let rs = cfg.root_system()?;
    let mut list = Vec::new();
    let mut rows = vec![vec![
        "root".to_string(),
        "coroot".into(),
        "height".into(),
        "form".into(),
    ]];
    for (k, root) in rs.positive_roots().iter().enumerate() {
        list.push(json!({
            "root": root.coords(),
            "coroot": rs.coroot(k),
            "height": root.height(),
            "form": root.form().to_string(),
        }));
        rows.push(vec![
            format!("{:?}", root.coords()),
            format!("{:?}", rs.coroot(k)),
            root.height().to_string(),
            root.form().to_string(),
        ]);
    }
    Ok(Report {
        data: json!({
            "rank": rs.rank(),
            "count": rs.num_positive(),
            "positive_roots": list,
        }),
        text: align(&rows),
    })
}

pub fn weyl(cfg: &JobConfig) -> Result<Report> {
    if cfg.subset.is_some() {
        return cosets(cfg);
    }
    let rs = cfg.root_system()?;
    let g = rs.weyl();
    let mut list = Vec::new();
    let mut rows = vec![vec!["word".to_string(), "length".into()]];
    for w in g.ids() {
        let e = g.element(w);
        list.push(json!({ "word": e.word_string(), "length": e.length() }));
        rows.push(vec![e.word_string(), e.length().to_string()]);
    }
    Ok(Report {
        data: json!({
            "order": g.order(),
            "longest": g.element(g.longest()).word_string(),
            "elements": list,
        }),
        text: align(&rows),
    })
}

fn cosets(cfg: &JobConfig) -> Result<Report> {
    let par = cfg.parabolic()?;
    let g = par.root_system().weyl();
    let mut list = Vec::new();
    let mut rows = vec![vec!["representative".to_string(), "length".into()]];
    for c in 0..par.num_cosets() {
        let len = g.length(par.rep(c));
        list.push(json!({ "representative": par.coset_label(c), "length": len }));
        rows.push(vec![par.coset_label(c), len.to_string()]);
    }
    Ok(Report {
        data: json!({
            "order": g.order(),
            "wp_order": par.wp().len(),
            "dim": par.dim(),
            "cosets": list,
        }),
        text: align(&rows),
    })
}

pub fn stab(cfg: &JobConfig, chamber: ChamberArg) -> Result<Report> {
    let par = cfg.parabolic()?;
    let basis = tables::load_or_compute(cfg, &par)?;
    let labels = coset_labels(&par);
    let mut text = String::new();
    for (name, table, wanted) in [
        ("plus", basis.plus(), chamber != ChamberArg::Minus),
        ("minus", basis.minus(), chamber != ChamberArg::Plus),
    ] {
        if !wanted {
            continue;
        }
        let cells: Vec<Vec<String>> = table
            .rows()
            .iter()
            .map(|r| r.iter().map(|p| p.to_string()).collect())
            .collect();
        text.push_str(&format!("{name} (rows: classes, columns: fixed points)\n"));
        text.push_str(&labelled_matrix(&labels, &cells));
    }
    Ok(Report {
        data: tables::data_json(&par, &basis, chamber),
        text,
    })
}

fn matrix_cells(m: &Matrix) -> Vec<Vec<String>> {
    m.rows()
        .map(|r| r.iter().map(|e| e.to_string()).collect())
        .collect()
}

pub fn quantum(cfg: &JobConfig, part: Part) -> Result<Report> {
    let par = cfg.parabolic()?;
    let op = quantum_matrix(&par, cfg.weight()?)?;
    let m = match part {
        Part::Classical => op.classical(),
        Part::Quantum => op.purely_quantum(),
        Part::Total => op.total(),
    };
    let labels = coset_labels(&par);
    let cells = matrix_cells(m);
    Ok(Report {
        data: json!({
            "part": part,
            "basis": "stable, plus chamber",
            "cosets": labels,
            "matrix": cells,
        }),
        text: labelled_matrix(&labels, &cells),
    })
}

enum Operator {
    Word(Vec<usize>),
    Bmo,
    Pcon,
}

fn parse_operator(src: &str, rank: usize) -> Result<Operator> {
    match src.trim() {
        "bmo" => Ok(Operator::Bmo),
        "pcon" => Ok(Operator::Pcon),
        s => match s.strip_prefix("dl:") {
            Some(word) if !word.trim().is_empty() => Ok(Operator::Word(parse_word(word, rank)?)),
            _ => Err(CliError::Usage(format!(
                "unknown operator '{src}'; expected dl:<word>, bmo or pcon"
            ))),
        },
    }
}

pub fn hecke(cfg: &JobConfig, input: &str, operator: &str) -> Result<Report> {
    let par = cfg.parabolic()?;
    let rs = par.root_system();
    let op = parse_operator(operator, rs.rank())?;
    let f = parse_ratfunc(input)?;
    if let Some(i) = (rs.rank()..MAX_RANK).find(|&i| f.contains_var(Var::A(i))) {
        return Err(CliError::Usage(format!(
            "input uses a{} but the rank is {}",
            i + 1,
            rs.rank()
        )));
    }
    let out = match op {
        Operator::Word(word) => {
            apply_q_linear(&f, |p| Ok(RatFunc::from_poly(dl_word(rs, &word, p)?)))?
        }
        Operator::Bmo => {
            let lam = cfg.weight()?;
            apply_q_linear(&f, |p| bmo_operator(rs, lam, p))?
        }
        Operator::Pcon => {
            let lam = cfg.weight()?;
            apply_q_linear(&f, |p| pcon_operator(&par, lam, p))?
        }
    };
    let data = json!({
        "operator": operator.trim(),
        "input": f.to_string(),
        "output": out.to_string(),
    });
    let text = align(&[
        vec!["operator".into(), operator.trim().into()],
        vec!["input".into(), f.to_string()],
        vec!["output".into(), out.to_string()],
    ]);
    Ok(Report { data, text })
}

use serde_json::Value;

use crate::config::{Format, JobConfig};

/// What a subcommand produces: the JSON `data` member and its aligned-text
/// rendering.
pub struct Report {
    pub data: Value,
    pub text: String,
}

/// Left-aligned columns separated by two spaces, without trailing blanks.
pub fn align(rows: &[Vec<String>]) -> String {
    let cols = rows.iter().map(Vec::len).max().unwrap_or(0);
    let mut widths = vec![0; cols];
    for row in rows {
        for (j, cell) in row.iter().enumerate() {
            widths[j] = widths[j].max(cell.chars().count());
        }
    }
    let mut out = String::new();
    for row in rows {
        let mut line = String::new();
        for (j, cell) in row.iter().enumerate() {
            if j > 0 {
                line.push_str("  ");
            }
            line.push_str(cell);
            if j + 1 < row.len() {
                let pad = widths[j] - cell.chars().count();
                line.push_str(&" ".repeat(pad));
            }
        }
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out
}

/// A square matrix with coset labels on both axes.
pub fn labelled_matrix(labels: &[String], cells: &[Vec<String>]) -> String {
    let mut rows = Vec::with_capacity(labels.len() + 1);
    let mut head = vec![String::new()];
    head.extend(labels.iter().cloned());
    rows.push(head);
    for (label, row) in labels.iter().zip(cells) {
        let mut r = vec![label.clone()];
        r.extend(row.iter().cloned());
        rows.push(r);
    }
    align(&rows)
}

fn header_line(cfg: &JobConfig) -> String {
    let mut parts = vec![format!("# {}", cfg.command)];
    parts.push(match cfg.cartan.label() {
        Some(l) => format!("type={l}"),
        None => format!("cartan={:?}", cfg.cartan.rows()),
    });
    if let Some(s) = &cfg.subset {
        let s: Vec<String> = s.iter().map(|i| (i + 1).to_string()).collect();
        parts.push(format!(
            "parabolic={}",
            if s.is_empty() {
                "empty".to_string()
            } else {
                s.join(",")
            }
        ));
    }
    if let Some(w) = &cfg.weight {
        parts.push(format!("weight={w}"));
    }
    if let Some(d) = cfg.degree {
        parts.push(format!("degree={d}"));
    }
    parts.join(" ")
}

/// The final document, newline-terminated.
pub fn document(cfg: &JobConfig, report: &Report) -> serde_json::Result<String> {
    Ok(match cfg.format {
        Format::Json => {
            let doc = serde_json::json!({ "header": cfg.header(), "data": report.data });
            let mut s = serde_json::to_string_pretty(&doc)?;
            s.push('\n');
            s
        }
        Format::Table => format!("{}\n{}", header_line(cfg), report.text),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn align_pads_all_but_last_column() {
        let rows = vec![
            vec!["a".to_string(), "bb".to_string(), "c".to_string()],
            vec!["ddd".to_string(), "e".to_string(), "ffff".to_string()],
        ];
        assert_eq!(align(&rows), "a    bb  c\nddd  e   ffff\n");
    }

    #[test]
    fn align_empty() {
        assert_eq!(align(&[]), "");
    }
}

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::Error;

/// Cartan matrix with entries `c[i][j] = <α_i, α_j^∨>`.
///
/// With this convention `σ_j(α_i) = α_i - c[i][j] α_j`, and type B2 is
/// `[[2, -2], [-1, 2]]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CartanDatum {
    rank: usize,
    cartan: Vec<Vec<i32>>,
    label: Option<String>,
}

impl CartanDatum {
    pub fn new(cartan: Vec<Vec<i32>>, label: Option<String>) -> Result<CartanDatum, Error> {
        let rank = cartan.len();
        if rank == 0 {
            return Err(Error::InvalidCartan("rank must be positive".into()));
        }
        for (i, row) in cartan.iter().enumerate() {
            if row.len() != rank {
                return Err(Error::InvalidCartan(format!(
                    "row {} has {} entries, expected {rank}",
                    i + 1,
                    row.len()
                )));
            }
            for (j, &c) in row.iter().enumerate() {
                if i == j && c != 2 {
                    return Err(Error::InvalidCartan(format!(
                        "diagonal entry ({0},{0}) is {c}, expected 2",
                        i + 1
                    )));
                }
                if i != j && c > 0 {
                    return Err(Error::InvalidCartan(format!(
                        "off-diagonal entry ({},{}) is positive",
                        i + 1,
                        j + 1
                    )));
                }
                if i != j && (c == 0) != (cartan[j][i] == 0) {
                    return Err(Error::InvalidCartan(format!(
                        "entries ({0},{1}) and ({1},{0}) must vanish together",
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        Ok(CartanDatum {
            rank,
            cartan,
            label,
        })
    }

    /// Expands `A<n>`, `B<n>`, `C<n>`, `D<n>`, `G2` (case-insensitive).
    pub fn named(name: &str) -> Result<CartanDatum, Error> {
        let name = name.trim();
        let bad = || Error::InvalidCartan(format!("unknown type name '{name}'"));
        let mut chars = name.chars();
        let kind = chars.next().ok_or_else(bad)?.to_ascii_uppercase();
        let n: usize = chars.as_str().parse().map_err(|_| bad())?;
        let label = Some(format!("{kind}{n}"));
        let m = match (kind, n) {
            ('A', n) if n >= 1 => type_a(n),
            ('B', n) if n >= 2 => {
                let mut m = type_a(n);
                m[n - 2][n - 1] = -2;
                m
            }
            ('C', n) if n >= 2 => {
                let mut m = type_a(n);
                m[n - 1][n - 2] = -2;
                m
            }
            ('D', n) if n >= 3 => {
                let mut m = type_a(n);
                m[n - 2][n - 1] = 0;
                m[n - 1][n - 2] = 0;
                m[n - 3][n - 1] = -1;
                m[n - 1][n - 3] = -1;
                m
            }
            ('G', 2) => vec![vec![2, -1], vec![-3, 2]],
            _ => return Err(bad()),
        };
        CartanDatum::new(m, label)
    }

    /// Plain text: first line the rank, then `rank` rows of integers.
    pub fn parse_text(src: &str) -> Result<CartanDatum, Error> {
        let mut lines = src
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'));
        let rank: usize = lines
            .next()
            .ok_or_else(|| Error::Parse("empty Cartan matrix file".into()))?
            .parse()
            .map_err(|_| Error::Parse("first line must be the rank".into()))?;
        let mut rows = Vec::with_capacity(rank);
        for i in 0..rank {
            let line = lines
                .next()
                .ok_or_else(|| Error::Parse(format!("missing row {}", i + 1)))?;
            let row = line
                .split(|c: char| c.is_whitespace() || c == ',')
                .filter(|s| !s.is_empty())
                .map(|s| {
                    s.parse::<i32>()
                        .map_err(|_| Error::Parse(format!("bad integer '{s}' in row {}", i + 1)))
                })
                .collect::<Result<Vec<_>, _>>()?;
            rows.push(row);
        }
        if lines.next().is_some() {
            return Err(Error::Parse("trailing lines after the matrix".into()));
        }
        CartanDatum::new(rows, None)
    }

    pub fn to_text(&self) -> String {
        let mut out = self.rank.to_string();
        out.push('\n');
        for row in &self.cartan {
            let cells: Vec<String> = row.iter().map(|c| c.to_string()).collect();
            out.push_str(&cells.join(" "));
            out.push('\n');
        }
        out
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn entry(&self, i: usize, j: usize) -> i32 {
        self.cartan[i][j]
    }

    pub fn rows(&self) -> &[Vec<i32>] {
        &self.cartan
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }
}

impl fmt::Display for CartanDatum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(l) = &self.label {
            return f.write_str(l);
        }
        f.write_str("[")?;
        for (i, row) in self.cartan.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{row:?}")?;
        }
        f.write_str("]")
    }
}

fn type_a(n: usize) -> Vec<Vec<i32>> {
    let mut m = vec![vec![0; n]; n];
    for i in 0..n {
        m[i][i] = 2;
        if i + 1 < n {
            m[i][i + 1] = -1;
            m[i + 1][i] = -1;
        }
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn named_types() {
        assert_eq!(CartanDatum::named("A1").unwrap().rows(), &[vec![2]]);
        assert_eq!(
            CartanDatum::named("B2").unwrap().rows(),
            &[vec![2, -2], vec![-1, 2]]
        );
        assert_eq!(
            CartanDatum::named("c2").unwrap().rows(),
            &[vec![2, -1], vec![-2, 2]]
        );
        let d4 = CartanDatum::named("D4").unwrap();
        assert_eq!(d4.entry(1, 3), -1);
        assert_eq!(d4.entry(2, 3), 0);
        assert!(CartanDatum::named("E9").is_err());
        assert!(CartanDatum::named("A0").is_err());
    }

    #[test]
    fn rejects_bad_matrices() {
        assert!(CartanDatum::new(vec![vec![2, 1], vec![-1, 2]], None).is_err());
        assert!(CartanDatum::new(vec![vec![2, -1], vec![0, 2]], None).is_err());
        assert!(CartanDatum::new(vec![vec![1]], None).is_err());
        assert!(CartanDatum::new(vec![], None).is_err());
    }

    #[test]
    fn text_round_trip() {
        let c = CartanDatum::named("G2").unwrap();
        let parsed = CartanDatum::parse_text(&c.to_text()).unwrap();
        assert_eq!(parsed.rows(), c.rows());
        assert!(CartanDatum::parse_text("2\n2 -1\n").is_err());
        assert!(CartanDatum::parse_text("x").is_err());
    }
}

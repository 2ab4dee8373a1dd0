use super::{Graph, GraphError};

/// Parses the plain-text adjacency format:
///
/// ```text
/// # optional comment lines
/// 3
/// 0 1 1
/// 1 0 1
/// 1 1 0
/// ```
///
/// The first non-comment line is the vertex count `n`, followed by exactly `n`
/// rows of `n` space-separated `0`/`1` entries. Comment lines (starting with
/// `#`) may appear anywhere; nothing else may.
pub fn parse_adjacency(text: &str) -> Result<Graph, GraphError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(k, l)| (k + 1, l.strip_suffix('\r').unwrap_or(l)))
        .filter(|(_, l)| !l.starts_with('#'));

    let (line_no, header) = lines.next().ok_or(GraphError::Parse {
        line: 1,
        message: "missing vertex count".into(),
    })?;
    let n: usize = header.trim().parse().map_err(|_| GraphError::Parse {
        line: line_no,
        message: format!("expected a vertex count, found `{header}`"),
    })?;
    if n == 0 {
        return Err(GraphError::Parse {
            line: line_no,
            message: "vertex count must be positive".into(),
        });
    }

    let mut rows = Vec::with_capacity(n);
    for row_idx in 0..n {
        let (line_no, line) = lines.next().ok_or(GraphError::Parse {
            line: line_no + row_idx + 1,
            message: format!("expected {n} rows, found {row_idx}"),
        })?;
        let mut row = Vec::with_capacity(n);
        for token in line.split_ascii_whitespace() {
            match token {
                "0" => row.push(0),
                "1" => row.push(1),
                other => {
                    return Err(GraphError::Parse {
                        line: line_no,
                        message: format!("invalid entry `{other}` (expected 0 or 1)"),
                    })
                }
            }
        }
        if row.len() != n {
            return Err(GraphError::DimensionMismatch {
                line: line_no,
                expected: n,
                found: row.len(),
            });
        }
        rows.push(row);
    }

    if let Some((line_no, extra)) = lines.next() {
        return Err(GraphError::Parse {
            line: line_no,
            message: format!("unexpected content after matrix: `{extra}`"),
        });
    }
    Graph::from_matrix(&rows)
}

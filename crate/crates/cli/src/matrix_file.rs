//! Matrix files: a first line `rows cols`, then the entries in row-major
//! order separated by any whitespace.

use homaut::IntMatrix;

pub fn parse_matrix(text: &str) -> Result<IntMatrix, String> {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let header = lines.next().ok_or("empty matrix file")?;
    let dims: Vec<&str> = header.split_whitespace().collect();
    let [rows, cols] = dims[..] else {
        return Err(format!(
            "first line must be `rows cols`, got `{}`",
            header.trim()
        ));
    };
    let rows: usize = rows
        .parse()
        .map_err(|_| format!("bad row count `{rows}`"))?;
    let cols: usize = cols
        .parse()
        .map_err(|_| format!("bad column count `{cols}`"))?;
    let entries: Vec<i64> = lines
        .flat_map(str::split_whitespace)
        .map(|t| t.parse().map_err(|_| format!("bad matrix entry `{t}`")))
        .collect::<Result<_, _>>()?;
    if entries.len() != rows * cols {
        return Err(format!(
            "expected {} entries for a {rows}x{cols} matrix, found {}",
            rows * cols,
            entries.len()
        ));
    }
    IntMatrix::new(rows, cols, entries).map_err(|e| e.to_string())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_row_major() {
        let m = parse_matrix("2 3\n1 2 3\n4 5\n6\n").unwrap();
        assert_eq!(m, IntMatrix::from_rows(&[[1, 2, 3], [4, 5, 6]]));
    }

    #[test]
    fn rejects_malformed() {
        assert!(parse_matrix("").is_err());
        assert!(parse_matrix("2\n1 2").is_err());
        assert!(parse_matrix("1 2\n1")
            .unwrap_err()
            .contains("expected 2 entries"));
        assert!(parse_matrix("1 1\nx")
            .unwrap_err()
            .contains("bad matrix entry"));
    }
}

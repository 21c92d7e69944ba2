//! Serialization helpers shared by the subcommands: CSV with RFC-4180
//! quoting, compact JSON, and space-aligned text tables.

/// Quotes a single CSV field when it contains a comma, quote, or newline.
pub fn csv_field(raw: &str) -> String {
    if raw.contains(',') || raw.contains('"') || raw.contains('\n') || raw.contains('\r') {
        format!("\"{}\"", raw.replace('"', "\"\""))
    } else {
        raw.to_string()
    }
}

pub fn csv_row(fields: &[String]) -> String {
    fields.iter().map(|f| csv_field(f)).collect::<Vec<_>>().join(",")
}

/// Right-aligns every column to its widest entry, separating columns by
/// two spaces. Rows of differing widths are padded with empty fields.
pub fn aligned_rows(rows: &[Vec<String>]) -> Vec<String> {
    let columns = rows.iter().map(|r| r.len()).max().unwrap_or(0);
    let mut widths = vec![0usize; columns];
    for row in rows {
        for (i, field) in row.iter().enumerate() {
            widths[i] = widths[i].max(field.len());
        }
    }
    rows.iter()
        .map(|row| {
            (0..columns)
                .map(|i| {
                    let field = row.get(i).map(String::as_str).unwrap_or("");
                    format!("{field:>width$}", width = widths[i])
                })
                .collect::<Vec<_>>()
                .join("  ")
                .trim_end()
                .to_string()
        })
        .collect()
}

pub fn int_row(values: &[i64]) -> Vec<String> {
    values.iter().map(|v| v.to_string()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_quoting() {
        assert_eq!(csv_field("12"), "12");
        assert_eq!(csv_field("a,b"), "\"a,b\"");
        assert_eq!(csv_field("say \"hi\""), "\"say \"\"hi\"\"\"");
        assert_eq!(csv_row(&["1".into(), "x,y".into()]), "1,\"x,y\"");
    }

    #[test]
    fn alignment() {
        let rows = vec![
            vec!["5".to_string(), "123".to_string()],
            vec!["17".to_string(), "4".to_string()],
        ];
        assert_eq!(aligned_rows(&rows), vec![" 5  123", "17    4"]);
    }

    #[test]
    fn alignment_pads_short_rows() {
        let rows = vec![vec!["a".to_string()], vec!["bb".to_string(), "c".to_string()]];
        assert_eq!(aligned_rows(&rows), vec![" a", "bb  c"]);
    }
}

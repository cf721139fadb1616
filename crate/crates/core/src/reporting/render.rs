use std::fmt::Write;

use super::SummaryTable;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TableFormat {
    Markdown,
    Json,
}

/// Share of `count` in `total` as a percentage with two decimals, rounding
/// half to even. Non-zero shares below one basis point render as `<0.01%`.
pub fn format_percent(count: u64, total: u64) -> String {
    if total == 0 || count == 0 {
        return "0.00%".to_string();
    }
    let scaled = count as u128 * 10_000;
    let total = total as u128;
    if scaled < total {
        return "<0.01%".to_string();
    }
    let mut q = scaled / total;
    let r = scaled % total;
    if 2 * r > total || (2 * r == total && q % 2 == 1) {
        q += 1;
    }
    format!("{}.{:02}%", q / 100, q % 100)
}

pub fn render_table(table: &SummaryTable, format: TableFormat) -> String {
    match format {
        TableFormat::Json => {
            let mut s = serde_json::to_string_pretty(table).expect("summary serializes");
            s.push('\n');
            s
        }
        TableFormat::Markdown => render_markdown(table),
    }
}

fn render_markdown(table: &SummaryTable) -> String {
    let columns = table.columns();
    let mut out = String::new();
    out.push_str("| Ontology |");
    for c in &columns {
        let _ = write!(out, " {} |", c.column_label());
    }
    out.push_str(" Total |\n|:---|");
    for _ in &columns {
        out.push_str("---:|");
    }
    out.push_str("---:|\n");
    for row in &table.rows {
        let _ = write!(out, "| {} |", row.ontology);
        let mut sum = 0;
        for c in &columns {
            let n = row.counts.get(c).copied().unwrap_or(0);
            sum += n;
            let _ = write!(out, " {n} |");
        }
        let _ = writeln!(out, " {sum} |");
    }
    out.push_str("| **Total** |");
    for c in &columns {
        let _ = write!(out, " {} |", table.totals.get(c).copied().unwrap_or(0));
    }
    let _ = writeln!(out, " {} |", table.total);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reporting::aggregate;

    #[test]
    fn percent_table_conventions() {
        assert_eq!(format_percent(52122, 3908752), "1.33%");
        assert_eq!(format_percent(214, 3908752), "<0.01%");
        assert_eq!(format_percent(112, 3908752), "<0.01%");
        assert_eq!(format_percent(3856416, 3908752), "98.66%");
        assert_eq!(format_percent(3013315, 3908752), "77.09%");
        assert_eq!(format_percent(3908752, 3908752), "100.00%");
        assert_eq!(format_percent(0, 0), "0.00%");
    }

    #[test]
    fn half_even_rounding() {
        // 1/8 = 12.5% exactly; 1/16 = 6.25%; 1/32 = 3.125% -> 3.12%; 3/32 = 9.375% -> 9.38%
        assert_eq!(format_percent(1, 32), "3.12%");
        assert_eq!(format_percent(3, 32), "9.38%");
        assert_eq!(format_percent(1, 16), "6.25%");
    }

    #[test]
    fn empty_markdown_is_header_only() {
        let md = render_table(&aggregate(&[], false), TableFormat::Markdown);
        assert_eq!(md, "| Ontology | Total |\n|:---|---:|\n| **Total** | 0 |\n");
        let json = render_table(&aggregate(&[], false), TableFormat::Json);
        let back: SummaryTable = serde_json::from_str(&json).unwrap();
        assert_eq!(back, aggregate(&[], false));
    }
}

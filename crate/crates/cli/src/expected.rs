//! Embedded reference fixtures for the two convergence tables.

use mtfrac::{Error, Result};

/// One expected table row.
#[derive(Clone, Copy, Debug)]
pub struct ExpectedRow {
    pub tau_denom: u32,
    pub l2: f64,
    pub order_l2: Option<f64>,
    pub linf: f64,
    pub order_linf: Option<f64>,
}

/// One (α, β, γ) block of expected rows.
#[derive(Clone, Debug)]
pub struct ExpectedBlock {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
    pub rows: Vec<ExpectedRow>,
}

const TABLE1_CSV: &str = include_str!("../data/table1_expected.csv");
const TABLE2_CSV: &str = include_str!("../data/table2_expected.csv");

fn parse_opt(field: &str) -> Result<Option<f64>> {
    if field.trim().is_empty() {
        return Ok(None);
    }
    field
        .trim()
        .parse::<f64>()
        .map(Some)
        .map_err(|e| Error::Usage(format!("bad fixture number `{field}`: {e}")))
}

fn parse_table(csv: &str) -> Result<Vec<ExpectedBlock>> {
    let mut blocks: Vec<ExpectedBlock> = Vec::new();
    for line in csv.lines() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 8 {
            return Err(Error::Usage(format!(
                "fixture row has {} fields, expected 8: {line}",
                fields.len()
            )));
        }
        let parse = |f: &str| -> Result<f64> {
            f.trim()
                .parse::<f64>()
                .map_err(|e| Error::Usage(format!("bad fixture number `{f}`: {e}")))
        };
        let (alpha, beta, gamma) = (parse(fields[0])?, parse(fields[1])?, parse(fields[2])?);
        let row = ExpectedRow {
            tau_denom: fields[3]
                .trim()
                .parse()
                .map_err(|e| Error::Usage(format!("bad tau denominator: {e}")))?,
            l2: parse(fields[4])?,
            order_l2: parse_opt(fields[5])?,
            linf: parse(fields[6])?,
            order_linf: parse_opt(fields[7])?,
        };
        let same_block = blocks.last().map(|b: &ExpectedBlock| {
            b.alpha == alpha && b.beta == beta && b.gamma == gamma
        });
        if same_block == Some(true) {
            blocks.last_mut().unwrap().rows.push(row);
        } else {
            blocks.push(ExpectedBlock {
                alpha,
                beta,
                gamma,
                rows: vec![row],
            });
        }
    }
    Ok(blocks)
}

/// Expected Scheme I table (three blocks of five rows).
pub fn table1() -> Vec<ExpectedBlock> {
    parse_table(TABLE1_CSV).expect("embedded table1 fixture parses")
}

/// Expected Scheme II table.
pub fn table2() -> Vec<ExpectedBlock> {
    parse_table(TABLE2_CSV).expect("embedded table2 fixture parses")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_have_three_blocks_of_five_rows() {
        for table in [table1(), table2()] {
            assert_eq!(table.len(), 3);
            for block in &table {
                assert_eq!(block.rows.len(), 5);
                assert!(block.rows[0].order_l2.is_none());
                for row in &block.rows[1..] {
                    assert!(row.order_l2.is_some());
                    assert!(row.order_linf.is_some());
                }
                let denoms: Vec<u32> = block.rows.iter().map(|r| r.tau_denom).collect();
                assert_eq!(denoms, vec![40, 80, 160, 320, 640]);
            }
        }
    }

    #[test]
    fn fixture_spot_values() {
        let t1 = table1();
        assert_eq!(t1[0].rows[0].l2, 7.0478e-3);
        assert_eq!(t1[0].rows[0].linf, 9.9671e-3);
        let t2 = table2();
        assert_eq!(t2[2].rows[1].l2, 3.0948e-4);
        assert_eq!(t2[2].rows[1].order_l2, Some(1.51));
    }
}

//! The bundled text format for character tables and class fusions.
//!
//! A table file is line-oriented.  `#` starts a comment running to the end
//! of the line; blank lines are ignored.  The remaining lines must appear
//! in this order:
//!
//! ```text
//! GROUP <label>
//! ORDER <integer>
//! EXPONENT <integer>
//! NCLASSES <r>
//! SIZES <r integers>
//! ORDERS <r integers>
//! INVERSE <r integers, 1-based>
//! CHAR <r value tokens>        (exactly r such lines)
//! ```
//!
//! A value token is either a plain integer or `c(n:a0,a1,...)`, denoting
//! `sum_i a_i zeta_n^i` with exactly `phi(n)` coefficients on the power
//! basis of the `n`-th cyclotomic field.  Parsing is strict: any deviation
//! is reported with its line number, and a parsed table is verified in full
//! before it is returned, because bundled data is never trusted.
//!
//! A fusion file maps the classes of a subgroup to classes of an ambient
//! group: a `FUSION <sub-label> <ambient-label>` line followed by one
//! 1-based ambient class index per subgroup class, whitespace-separated
//! across any number of lines.

use std::path::Path;
use std::str::FromStr;

use algebra_core::CycInt;
use num_bigint::BigInt;

use crate::table::{CharacterTable, TableParts, TableSource};
use crate::ChartabError;

/// Parsed class-fusion data, 0-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FusionFile {
    /// Label of the subgroup whose classes are being mapped.
    pub sub_label: String,
    /// Label of the ambient group.
    pub ambient_label: String,
    /// For each subgroup class, the index of the ambient class containing it.
    pub map: Vec<usize>,
}

/// Renders a table in the text format; [`parse_ctx`] inverts this exactly.
pub fn write_ctx(table: &CharacterTable) -> String {
    let mut out = String::new();
    out.push_str(&format!("GROUP {}\n", table.label()));
    out.push_str(&format!("ORDER {}\n", table.order()));
    out.push_str(&format!("EXPONENT {}\n", table.exponent()));
    out.push_str(&format!("NCLASSES {}\n", table.num_classes()));
    out.push_str(&format!("SIZES {}\n", join(table.class_sizes())));
    out.push_str(&format!("ORDERS {}\n", join(table.class_orders())));
    let one_based: Vec<u64> = table.inverse_classes().iter().map(|&i| i as u64 + 1).collect();
    out.push_str(&format!("INVERSE {}\n", join(&one_based)));
    for row in table.rows() {
        let tokens: Vec<String> = row.iter().map(ToString::to_string).collect();
        out.push_str(&format!("CHAR {}\n", tokens.join(" ")));
    }
    out
}

fn join(values: &[u64]) -> String {
    values
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(" ")
}

/// Reads and verifies a table from a file.
pub fn read_ctx_file(path: &Path) -> Result<CharacterTable, ChartabError> {
    let text = std::fs::read_to_string(path).map_err(|source| ChartabError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_ctx(&text)
}

/// Parses and verifies a table from text.  The returned table carries the
/// `Ingested` source tag and has passed the full identity verification.
pub fn parse_ctx(text: &str) -> Result<CharacterTable, ChartabError> {
    let mut lines = logical_lines(text).into_iter();
    let mut next = |keyword: &str| -> Result<(usize, Vec<String>), ChartabError> {
        let (line, tokens) = lines
            .next()
            .ok_or_else(|| parse_error(0, format!("missing {keyword} line")))?;
        if tokens[0] != keyword {
            return Err(parse_error(
                line,
                format!("expected {keyword}, found {}", tokens[0]),
            ));
        }
        Ok((line, tokens))
    };

    let (line, tokens) = next("GROUP")?;
    let label = expect_args(line, "GROUP", &tokens, 1)?[0].clone();
    let (line, tokens) = next("ORDER")?;
    let order: u64 = parse_number(line, &expect_args(line, "ORDER", &tokens, 1)?[0])?;
    let (line, tokens) = next("EXPONENT")?;
    let exponent: u64 = parse_number(line, &expect_args(line, "EXPONENT", &tokens, 1)?[0])?;
    let (line, tokens) = next("NCLASSES")?;
    let r: usize = parse_number(line, &expect_args(line, "NCLASSES", &tokens, 1)?[0])? as usize;
    if r == 0 {
        return Err(parse_error(line, "NCLASSES must be positive".into()));
    }

    let (line, tokens) = next("SIZES")?;
    let class_sizes: Vec<u64> = expect_args(line, "SIZES", &tokens, r)?
        .iter()
        .map(|t| parse_number(line, t))
        .collect::<Result<_, _>>()?;
    let (line, tokens) = next("ORDERS")?;
    let class_orders: Vec<u64> = expect_args(line, "ORDERS", &tokens, r)?
        .iter()
        .map(|t| parse_number(line, t))
        .collect::<Result<_, _>>()?;
    let (line, tokens) = next("INVERSE")?;
    let inverse_classes: Vec<usize> = expect_args(line, "INVERSE", &tokens, r)?
        .iter()
        .map(|t| {
            let v = parse_number(line, t)? as usize;
            if v == 0 || v > r {
                return Err(parse_error(
                    line,
                    format!("INVERSE entry {v} outside 1..={r}"),
                ));
            }
            Ok(v - 1)
        })
        .collect::<Result<_, _>>()?;

    let mut rows = Vec::with_capacity(r);
    for _ in 0..r {
        let (line, tokens) = next("CHAR")?;
        let row: Vec<CycInt> = expect_args(line, "CHAR", &tokens, r)?
            .iter()
            .map(|t| parse_value(line, t))
            .collect::<Result<_, _>>()?;
        rows.push(row);
    }
    if let Some((line, tokens)) = lines.next() {
        return Err(parse_error(
            line,
            format!("unexpected trailing content: {}", tokens[0]),
        ));
    }

    CharacterTable::from_parts(
        TableParts {
            label,
            order,
            exponent,
            class_sizes,
            class_orders,
            inverse_classes,
            rows,
        },
        TableSource::Ingested,
    )
}

/// Parses fusion data from text.
pub fn parse_fusion(text: &str) -> Result<FusionFile, ChartabError> {
    let mut lines = logical_lines(text).into_iter();
    let (line, tokens) = lines
        .next()
        .ok_or_else(|| parse_error(0, "missing FUSION line".into()))?;
    if tokens[0] != "FUSION" {
        return Err(parse_error(
            line,
            format!("expected FUSION, found {}", tokens[0]),
        ));
    }
    let args = expect_args(line, "FUSION", &tokens, 2)?;
    let mut map = Vec::new();
    for (line, tokens) in lines {
        for token in tokens {
            let v = parse_number(line, &token)? as usize;
            if v == 0 {
                return Err(parse_error(line, "fusion entries are 1-based".into()));
            }
            map.push(v - 1);
        }
    }
    if map.is_empty() {
        return Err(parse_error(0, "fusion data has no entries".into()));
    }
    Ok(FusionFile {
        sub_label: args[0].clone(),
        ambient_label: args[1].clone(),
        map,
    })
}

/// Reads fusion data from a file.
pub fn read_fusion_file(path: &Path) -> Result<FusionFile, ChartabError> {
    let text = std::fs::read_to_string(path).map_err(|source| ChartabError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_fusion(&text)
}

/// Splits text into non-empty comment-stripped token lines, keeping
/// 1-based line numbers for error reporting.
fn logical_lines(text: &str) -> Vec<(usize, Vec<String>)> {
    text.lines()
        .enumerate()
        .filter_map(|(idx, raw)| {
            let body = raw.split('#').next().unwrap_or("");
            let tokens: Vec<String> = body.split_whitespace().map(String::from).collect();
            if tokens.is_empty() {
                None
            } else {
                Some((idx + 1, tokens))
            }
        })
        .collect()
}

fn parse_error(line: usize, message: String) -> ChartabError {
    ChartabError::CtxParse { line, message }
}

fn expect_args(
    line: usize,
    keyword: &str,
    tokens: &[String],
    count: usize,
) -> Result<Vec<String>, ChartabError> {
    if tokens.len() != count + 1 {
        return Err(parse_error(
            line,
            format!(
                "{keyword} expects {count} argument(s), found {}",
                tokens.len() - 1
            ),
        ));
    }
    Ok(tokens[1..].to_vec())
}

fn parse_number(line: usize, token: &str) -> Result<u64, ChartabError> {
    token
        .parse::<u64>()
        .map_err(|_| parse_error(line, format!("expected a non-negative integer, found {token}")))
}

/// Parses one value token: a plain integer or `c(n:a0,...,a_{phi(n)-1})`.
fn parse_value(line: usize, token: &str) -> Result<CycInt, ChartabError> {
    if let Some(body) = token.strip_prefix("c(").and_then(|s| s.strip_suffix(')')) {
        let (n_part, coeff_part) = body
            .split_once(':')
            .ok_or_else(|| parse_error(line, format!("malformed value token {token}")))?;
        let n: u64 = n_part
            .parse()
            .map_err(|_| parse_error(line, format!("bad conductor in {token}")))?;
        let coeffs: Vec<BigInt> = coeff_part
            .split(',')
            .map(|c| {
                BigInt::from_str(c)
                    .map_err(|_| parse_error(line, format!("bad coefficient {c} in {token}")))
            })
            .collect::<Result<_, _>>()?;
        CycInt::from_power_basis(n, &coeffs)
            .map_err(|e| parse_error(line, format!("invalid value token {token}: {e}")))
    } else {
        let v = BigInt::from_str(token)
            .map_err(|_| parse_error(line, format!("expected a value token, found {token}")))?;
        Ok(CycInt::from_bigint(v))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dixon::compute_table;
    use group_engine::{Family, GroupSpec};

    #[test]
    fn writing_and_parsing_round_trips_a_computed_table() {
        let table = compute_table(&GroupSpec::new(Family::SL, 2, 3).unwrap()).unwrap();
        let text = write_ctx(&table);
        let parsed = parse_ctx(&text).unwrap();
        assert_eq!(parsed.source(), TableSource::Ingested);
        assert_eq!(parsed.label(), table.label());
        assert_eq!(parsed.order(), table.order());
        assert_eq!(parsed.exponent(), table.exponent());
        assert_eq!(parsed.class_sizes(), table.class_sizes());
        assert_eq!(parsed.class_orders(), table.class_orders());
        assert_eq!(parsed.inverse_classes(), table.inverse_classes());
        assert_eq!(parsed.rows(), table.rows());
        // A second render is byte-identical.
        assert_eq!(write_ctx(&parsed), text);
    }

    #[test]
    fn comments_and_blank_lines_are_ignored() {
        let table = compute_table(&GroupSpec::new(Family::SL, 2, 3).unwrap()).unwrap();
        let text = write_ctx(&table);
        let decorated = format!("# heading\n\n{}\n# trailing note\n", text.replace("ORDER", "ORDER # inline"));
        // An inline comment after the keyword swallows the argument, so this
        // variant must fail; a comment after the full line is fine.
        assert!(parse_ctx(&decorated).is_err());
        let commented = format!("# heading\n\n{text}# trailing note\n");
        assert!(parse_ctx(&commented).is_ok());
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let table = compute_table(&GroupSpec::new(Family::SL, 2, 3).unwrap()).unwrap();
        let text = write_ctx(&table);

        // Wrong keyword on the first line.
        let err = parse_ctx(&text.replace("GROUP", "GRUOP")).unwrap_err();
        match err {
            ChartabError::CtxParse { line, .. } => assert_eq!(line, 1),
            other => panic!("expected a parse error, got {other}"),
        }

        // Too few entries on the SIZES line (line 5).
        let broken = text.replace("SIZES 1 ", "SIZES ");
        let err = parse_ctx(&broken).unwrap_err();
        match err {
            ChartabError::CtxParse { line, .. } => assert_eq!(line, 5),
            other => panic!("expected a parse error, got {other}"),
        }

        // A value token with the wrong number of coefficients.
        let broken = text.replace("CHAR 1 1 1 1 1 1 1", "CHAR 1 1 1 1 1 1 c(5:1,2)");
        let err = parse_ctx(&broken).unwrap_err();
        assert!(matches!(err, ChartabError::CtxParse { .. }));

        // An out-of-range INVERSE entry.
        let broken = text.replace("INVERSE 1 ", "INVERSE 9 ");
        assert!(matches!(
            parse_ctx(&broken).unwrap_err(),
            ChartabError::CtxParse { .. }
        ));
    }

    #[test]
    fn a_corrupted_value_fails_verification_with_the_pair_named() {
        let table = compute_table(&GroupSpec::new(Family::SL, 2, 3).unwrap()).unwrap();
        let text = write_ctx(&table);
        // Negate the degree-3 character's value on the central class: the
        // header data still parses, verification must object.
        let target = "CHAR 3 3";
        assert!(text.contains(target), "table text changed shape: {text}");
        let broken = text.replace(target, "CHAR 3 -3");
        let err = parse_ctx(&broken).unwrap_err();
        match err {
            ChartabError::Orthogonality { kind, first, second, .. } => {
                assert_eq!(kind, crate::OrthKind::Row);
                assert!(first == 6 || second == 6, "pair should involve the changed row");
            }
            ChartabError::TableIntegrity { .. } => {}
            other => panic!("expected a verification failure, got {other}"),
        }
    }

    #[test]
    fn fusion_files_parse_and_validate() {
        let fusion = parse_fusion("# map\nFUSION Q8 SL2(3)\n1 2 5\n5 5\n").unwrap();
        assert_eq!(fusion.sub_label, "Q8");
        assert_eq!(fusion.ambient_label, "SL2(3)");
        assert_eq!(fusion.map, vec![0, 1, 4, 4, 4]);

        assert!(parse_fusion("FUSION a b\n0 1\n").is_err());
        assert!(parse_fusion("FUSION a\n1\n").is_err());
        assert!(parse_fusion("1 2 3\n").is_err());
        assert!(parse_fusion("FUSION a b\n").is_err());
    }
}

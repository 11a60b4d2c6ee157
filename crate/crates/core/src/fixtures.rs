//! Transcribed reference data shipped with the crate: the order-2 and order-3 ternary quandle
//! tables in cycle notation, the distributive word lists, and sample columns of the
//! dimension-2 classification.

use crate::classify::parse_paper_table;
use crate::error::{Error, Result};
use crate::linear::dim2::Dim2Solution;
use crate::table::TernaryTable;
use crate::words::Word;

pub const ORDER2_TEXT: &str = include_str!("../fixtures/order2.txt");
pub const ORDER3_TEXT: &str = include_str!("../fixtures/order3.txt");
pub const WORDS_LEN3_TEXT: &str = include_str!("../fixtures/words_len3.txt");
pub const WORDS_LEN5_TEXT: &str = include_str!("../fixtures/words_len5.txt");
pub const WORDS_LEN7_TEXT: &str = include_str!("../fixtures/words_len7.txt");
pub const APPENDIX_A_TEXT: &str = include_str!("../fixtures/appendix_a.txt");

fn lines(text: &str) -> impl Iterator<Item = &str> {
    text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'))
}

/// `label: notation` lines.
pub fn parse_labeled_tables(text: &str) -> Result<Vec<(String, TernaryTable)>> {
    lines(text)
        .map(|l| {
            let (label, body) = l.split_once(':').ok_or_else(|| Error::Parse(format!("missing label in {l:?}")))?;
            Ok((label.trim().to_string(), parse_paper_table(body.trim())?))
        })
        .collect()
}

/// Cases `i` and `ii` of order 2.
pub fn order2_tables() -> Vec<(String, TernaryTable)> {
    parse_labeled_tables(ORDER2_TEXT).expect("shipped fixture parses")
}

/// `T0` through `T46`.
pub fn order3_tables() -> Vec<(String, TernaryTable)> {
    parse_labeled_tables(ORDER3_TEXT).expect("shipped fixture parses")
}

/// Both order-2 and all order-3 tables.
pub fn all_quandle_tables() -> Vec<(String, TernaryTable)> {
    let mut out = order2_tables();
    out.extend(order3_tables());
    out
}

pub fn parse_word_list(text: &str) -> Result<Vec<Word>> {
    lines(text).map(str::parse).collect()
}

/// The shipped list for length 3, 5 or 7.
pub fn word_list(length: usize) -> Option<Vec<Word>> {
    let text = match length {
        3 => WORDS_LEN3_TEXT,
        5 => WORDS_LEN5_TEXT,
        7 => WORDS_LEN7_TEXT,
        _ => return None,
    };
    Some(parse_word_list(text).expect("shipped fixture parses"))
}

pub fn parse_dim2_list(text: &str) -> Result<Vec<Dim2Solution>> {
    lines(text).map(str::parse).collect()
}

/// Transcribed columns of the dimension-2 classification.
pub fn appendix_a_columns() -> Vec<Dim2Solution> {
    parse_dim2_list(APPENDIX_A_TEXT).expect("shipped fixture parses")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::to_paper_notation;

    #[test]
    fn counts() {
        assert_eq!(order2_tables().len(), 2);
        assert_eq!(order3_tables().len(), 47);
        assert_eq!(word_list(3).unwrap().len(), 8);
        assert_eq!(word_list(5).unwrap().len(), 20);
        assert_eq!(word_list(7).unwrap().len(), 50);
        assert!(word_list(4).is_none());
        assert!(appendix_a_columns().len() >= 5);
    }

    #[test]
    fn tables_round_trip_through_notation() {
        for text in [ORDER2_TEXT, ORDER3_TEXT] {
            for line in lines(text) {
                let (_, body) = line.split_once(':').unwrap();
                let t = parse_paper_table(body.trim()).unwrap();
                assert_eq!(to_paper_notation(&t).unwrap().to_string(), body.trim());
            }
        }
    }

    #[test]
    fn words_and_columns_round_trip() {
        for text in [WORDS_LEN3_TEXT, WORDS_LEN5_TEXT, WORDS_LEN7_TEXT] {
            let printed: Vec<String> = parse_word_list(text).unwrap().iter().map(|w| w.to_string()).collect();
            assert_eq!(printed, lines(text).collect::<Vec<_>>());
        }
        let printed: Vec<String> = appendix_a_columns().iter().map(|s| s.to_string()).collect();
        assert_eq!(printed, lines(APPENDIX_A_TEXT).collect::<Vec<_>>());
    }

    #[test]
    fn labels_are_sequential() {
        for (i, (label, _)) in order3_tables().iter().enumerate() {
            assert_eq!(label, &format!("T{i}"));
        }
    }
}

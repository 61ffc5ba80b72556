//! Tables and matrices bundled with the crate.
//!
//! Decomposition matrices cover `n <= 10` for the primes used in the test
//! suites. Brauer tables of alternating groups are stored unlabelled, as
//! ingested, and labelled on demand.

use crate::aut::{parse_cycles, Perm};
use crate::brauer::DecompositionMatrix;
use crate::error::RelabelError;
use crate::io::{read_decomposition, read_matrix, read_table};
use crate::relabel::label_an_brauer_reference;
use crate::tables::CharTable;
use crate::AlgebraicValue;

const DECOMPOSITIONS: &[(u32, u32, &str)] = &[
    (1, 2, include_str!("../fixtures/decomp/d1p2.json")),
    (1, 3, include_str!("../fixtures/decomp/d1p3.json")),
    (1, 5, include_str!("../fixtures/decomp/d1p5.json")),
    (1, 7, include_str!("../fixtures/decomp/d1p7.json")),
    (2, 2, include_str!("../fixtures/decomp/d2p2.json")),
    (2, 3, include_str!("../fixtures/decomp/d2p3.json")),
    (2, 5, include_str!("../fixtures/decomp/d2p5.json")),
    (2, 7, include_str!("../fixtures/decomp/d2p7.json")),
    (3, 2, include_str!("../fixtures/decomp/d3p2.json")),
    (3, 3, include_str!("../fixtures/decomp/d3p3.json")),
    (3, 5, include_str!("../fixtures/decomp/d3p5.json")),
    (3, 7, include_str!("../fixtures/decomp/d3p7.json")),
    (4, 2, include_str!("../fixtures/decomp/d4p2.json")),
    (4, 3, include_str!("../fixtures/decomp/d4p3.json")),
    (4, 5, include_str!("../fixtures/decomp/d4p5.json")),
    (4, 7, include_str!("../fixtures/decomp/d4p7.json")),
    (5, 2, include_str!("../fixtures/decomp/d5p2.json")),
    (5, 3, include_str!("../fixtures/decomp/d5p3.json")),
    (5, 5, include_str!("../fixtures/decomp/d5p5.json")),
    (5, 7, include_str!("../fixtures/decomp/d5p7.json")),
    (6, 2, include_str!("../fixtures/decomp/d6p2.json")),
    (6, 3, include_str!("../fixtures/decomp/d6p3.json")),
    (6, 5, include_str!("../fixtures/decomp/d6p5.json")),
    (6, 7, include_str!("../fixtures/decomp/d6p7.json")),
    (7, 2, include_str!("../fixtures/decomp/d7p2.json")),
    (7, 3, include_str!("../fixtures/decomp/d7p3.json")),
    (7, 5, include_str!("../fixtures/decomp/d7p5.json")),
    (7, 7, include_str!("../fixtures/decomp/d7p7.json")),
    (8, 2, include_str!("../fixtures/decomp/d8p2.json")),
    (8, 3, include_str!("../fixtures/decomp/d8p3.json")),
    (8, 5, include_str!("../fixtures/decomp/d8p5.json")),
    (8, 7, include_str!("../fixtures/decomp/d8p7.json")),
    (9, 2, include_str!("../fixtures/decomp/d9p2.json")),
    (9, 3, include_str!("../fixtures/decomp/d9p3.json")),
    (10, 2, include_str!("../fixtures/decomp/d10p2.json")),
    (10, 3, include_str!("../fixtures/decomp/d10p3.json")),
];

const AN_BRAUER: &[(u32, u32, &str)] = &[
    (6, 3, include_str!("../fixtures/tables/a6_mod3.json")),
    (6, 5, include_str!("../fixtures/tables/a6_mod5.json")),
    (7, 3, include_str!("../fixtures/tables/a7_mod3.json")),
    (7, 5, include_str!("../fixtures/tables/a7_mod5.json")),
    (8, 3, include_str!("../fixtures/tables/a8_mod3.json")),
    (8, 5, include_str!("../fixtures/tables/a8_mod5.json")),
    (8, 7, include_str!("../fixtures/tables/a8_mod7.json")),
];

/// The character table of `S4` exactly as printed, in its printed row and
/// column order. It is not a character table as it stands: the rows
/// headed (3,1) and (2,1,1) are exchanged and the last row reads
/// `1 -1 1 1 -1` where the sign character is `1 -1 -1 1 1`.
pub const S4_PRINTED: &str = include_str!("../fixtures/printed/s4.json");
/// The printed character table of `A5`.
pub const A5_PRINTED: &str = include_str!("../fixtures/printed/a5.json");
/// The printed Brauer table of `S4` in characteristic 2.
pub const S4_MOD2_PRINTED: &str = include_str!("../fixtures/printed/s4_mod2.json");
/// A character table of `C2 x D8` together with generators of its row and
/// column automorphism groups.
pub const C2_D8: &str = include_str!("../fixtures/printed/c2xd8.json");

/// Pairs `(n, p)` with a bundled decomposition matrix.
pub fn decomposition_keys() -> impl Iterator<Item = (u32, u32)> {
    DECOMPOSITIONS.iter().map(|&(n, p, _)| (n, p))
}

/// Decomposition matrix of `S_n` in characteristic `p`. Primes above `n`
/// give the identity matrix whether bundled or not.
pub fn decomposition(n: u32, p: u32) -> Option<DecompositionMatrix> {
    if let Some(&(_, _, text)) = DECOMPOSITIONS.iter().find(|&&(m, q, _)| m == n && q == p) {
        return Some(read_decomposition(text).expect("bundled decomposition matrix is well formed"));
    }
    (p > n).then(|| DecompositionMatrix::semisimple(n, p).ok()).flatten()
}

/// Pairs `(n, p)` with a bundled Brauer table of `A_n`.
pub fn an_brauer_keys() -> impl Iterator<Item = (u32, u32)> {
    AN_BRAUER.iter().map(|&(n, p, _)| (n, p))
}

/// The bundled Brauer table of `A_n`, unlabelled.
pub fn an_brauer_table(n: u32, p: u32) -> Option<CharTable> {
    AN_BRAUER
        .iter()
        .find(|&&(m, q, _)| m == n && q == p)
        .map(|&(_, _, text)| read_table(text).expect("bundled table is well formed"))
}

/// The bundled Brauer table of `A_n` with labels attached.
pub fn an_brauer_reference(n: u32, p: u32) -> Option<Result<CharTable, RelabelError>> {
    let t = an_brauer_table(n, p)?;
    let d = decomposition(n, p)?;
    Some(label_an_brauer_reference(&t, &d))
}

/// Values of the `C2 x D8` table.
pub fn c2_d8_values() -> Vec<Vec<AlgebraicValue>> {
    read_matrix(C2_D8).expect("bundled matrix is well formed")
}

/// The printed generators of the row and column automorphism groups of the
/// `C2 x D8` table.
pub fn c2_d8_generators() -> (Vec<Perm>, Vec<Perm>) {
    let doc: serde_json::Value = serde_json::from_str(C2_D8).expect("bundled JSON");
    let gens = |key: &str| {
        doc[key]
            .as_array()
            .expect("generator list")
            .iter()
            .map(|g| parse_cycles(g.as_str().expect("cycle string"), 10).expect("valid cycles"))
            .collect()
    };
    (gens("rowAut"), gens("colAut"))
}

/// The outer automorphism of `S6` on partitions: characters and classes.
pub const S6_SIGMA: &[(&[u32], &[u32])] = &[
    (&[5, 1], &[2, 2, 2]),
    (&[2, 1, 1, 1, 1], &[3, 3]),
    (&[4, 1, 1], &[3, 1, 1, 1]),
];
pub const S6_TAU: &[(&[u32], &[u32])] = &[
    (&[6], &[3, 2, 1]),
    (&[3, 3], &[3, 1, 1, 1]),
    (&[2, 2, 2], &[2, 1, 1, 1, 1]),
];

#[cfg(test)]
mod tests {
    use super::*;
    use crate::brauer::validate_decomposition_matrix;

    #[test]
    fn every_bundled_decomposition_matrix_is_valid() {
        for (n, p) in decomposition_keys() {
            let d = decomposition(n, p).unwrap();
            let report = validate_decomposition_matrix(&d).unwrap();
            assert!(report.is_valid(), "d{n}p{p}: {report}");
        }
    }

    #[test]
    fn semisimple_fallback() {
        assert_eq!(decomposition(4, 11).unwrap().cols().len(), 5);
        assert!(decomposition(11, 3).is_none());
    }

    #[test]
    fn an_brauer_tables_label() {
        for (n, p) in an_brauer_keys() {
            let t = an_brauer_reference(n, p).unwrap().unwrap();
            let labels = t.row_labels().unwrap();
            assert_eq!(labels.len(), t.dim());
        }
    }

    #[test]
    fn c2_d8_generators_parse() {
        let (rows, cols) = c2_d8_generators();
        assert_eq!((rows.len(), cols.len()), (3, 3));
        assert_eq!(c2_d8_values().len(), 10);
    }
}

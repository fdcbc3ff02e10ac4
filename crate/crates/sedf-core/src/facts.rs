//! Known existence and nonexistence facts from the literature, consulted by
//! the classifier. Every entry carries its citation; the table is immutable
//! and versioned so cached classifications can be invalidated.

use serde::Serialize;

use crate::nt::{is_prime, perfect_sqrt};

pub const FACTS_VERSION: &str = "2017-11";

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum FactKind {
    SedfExists,
    PdsExists,
    PdsNotExists,
}

/// A matched table entry: what is known and where it comes from.
#[derive(Debug, Clone, Serialize)]
pub struct Fact {
    pub kind: FactKind,
    pub citation: String,
    /// Construction reference when this crate can build a witness.
    pub witness: Option<String>,
}

/// The shipped facts table. Pattern entries (parameter families) and point
/// entries (single parameter sets) are folded into the query methods.
#[derive(Debug, Default, Clone)]
pub struct KnownFactsTable;

impl KnownFactsTable {
    pub fn version(&self) -> &'static str {
        FACTS_VERSION
    }

    /// Existence of a Paley-type `(v, (v-1)/2, (v-5)/4, (v-1)/4)` PDS in some
    /// abelian group of order `v`; `None` when the table is silent.
    pub fn paley_pds_existence(&self, v: u64) -> Option<Fact> {
        if v < 5 || v % 4 != 1 {
            return None;
        }
        if is_prime(v) {
            return Some(Fact {
                kind: FactKind::PdsExists,
                citation: "quadratic residues modulo a prime v = 1 (mod 4) (Paley 1933)".into(),
                witness: Some(format!("construct paley --p {v}")),
            });
        }
        if matches!(v, 9 | 25 | 49) {
            return Some(Fact {
                kind: FactKind::PdsExists,
                citation:
                    "quadratic residues of GF(v) in the elementary abelian group, prime power v = 1 (mod 4) (Paley 1933)"
                        .into(),
                witness: None,
            });
        }
        if v == 45 {
            // the (45,22,10,11) PDS does not exist in any abelian group
            return Some(Fact {
                kind: FactKind::PdsNotExists,
                citation: "Ma 1994, Corollary 6.3".into(),
                witness: None,
            });
        }
        None
    }

    /// Known existence of a `(v, m, k, lambda)`-SEDF in some abelian group of
    /// order `v`.
    pub fn sedf_existence(&self, v: u64, m: u64, k: u64, lambda: u64) -> Option<Fact> {
        // (k^2+1, 2, k, 1) in the cyclic group
        if m == 2 && lambda == 1 && k >= 2 && v == k * k + 1 {
            return Some(Fact {
                kind: FactKind::SedfExists,
                citation: "Paterson and Stinson 2016, Example 2.2".into(),
                witness: Some(format!("construct k2plus1 --k {k}")),
            });
        }
        // (243, 11, 22, 20) via the projective point-orbit partition
        if (v, m, k, lambda) == (243, 11, 22, 20) {
            return Some(Fact {
                kind: FactKind::SedfExists,
                citation:
                    "partition of PG(4,3) into eleven point-orbits of (243,22,1,2) partial difference sets (Berlekamp, van Lint and Seidel 1973; Calderbank and Kantor 1986, Example RT6)"
                        .into(),
                witness: Some("construct m11".into()),
            });
        }
        // (v, 2, (v-1)/2, (v-1)/4) from a Paley-type PDS and its complement
        if m == 2 && v % 4 == 1 && k == (v - 1) / 2 && lambda == (v - 1) / 4 {
            if let Some(fact) = self.paley_pds_existence(v) {
                if fact.kind == FactKind::PdsExists {
                    return Some(Fact {
                        kind: FactKind::SedfExists,
                        citation: format!(
                            "complement pairing of a Paley-type PDS (Davis, Huczynska and Mullen 2017; Huczynska and Paterson 2018, Theorem 4.4); PDS: {}",
                            fact.citation
                        ),
                        witness: fact.witness.map(|w| format!("{w} | sedf-from-pds")),
                    });
                }
            }
        }
        // (p, 2, (p-1)/4, (p-1)/16) for prime p = 16 t^2 + 1
        if m == 2
            && v >= 17
            && (v - 1).is_multiple_of(16)
            && k == (v - 1) / 4
            && lambda == (v - 1) / 16
        {
            let t2 = (v - 1) / 16;
            if perfect_sqrt(t2 as u128).is_some() && is_prime(v) {
                return Some(Fact {
                    kind: FactKind::SedfExists,
                    citation: "Bao, Ji, Wei and Zhang 2017, Theorem 4.3 (p = 16t^2 + 1)".into(),
                    witness: None,
                });
            }
        }
        // (p, 2, (p-1)/6, (p-1)/36) for prime p = 108 t^2 + 1
        if m == 2
            && v >= 109
            && (v - 1).is_multiple_of(36)
            && k == (v - 1) / 6
            && lambda == (v - 1) / 36
        {
            let t2 = (v - 1) / 108;
            if (v - 1).is_multiple_of(108) && perfect_sqrt(t2 as u128).is_some() && is_prime(v) {
                return Some(Fact {
                    kind: FactKind::SedfExists,
                    citation: "Bao, Ji, Wei and Zhang 2017, Theorem 4.6 (p = 108t^2 + 1)".into(),
                    witness: None,
                });
            }
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn paley_entries() {
        assert!(matches!(
            KnownFactsTable.paley_pds_existence(13),
            Some(Fact {
                kind: FactKind::PdsExists,
                ..
            })
        ));
        for v in [9, 25, 49] {
            assert!(matches!(
                KnownFactsTable.paley_pds_existence(v),
                Some(Fact {
                    kind: FactKind::PdsExists,
                    ..
                })
            ));
        }
        assert!(matches!(
            KnownFactsTable.paley_pds_existence(45),
            Some(Fact {
                kind: FactKind::PdsNotExists,
                ..
            })
        ));
        assert!(KnownFactsTable.paley_pds_existence(21).is_none());
        assert!(KnownFactsTable.paley_pds_existence(33).is_none());
        assert!(KnownFactsTable.paley_pds_existence(7).is_none());
    }

    #[test]
    fn sedf_entries() {
        let t = KnownFactsTable;
        assert!(t.sedf_existence(26, 2, 5, 1).is_some()); // 26 = 5^2 + 1
        assert!(t.sedf_existence(243, 11, 22, 20).is_some());
        assert!(t.sedf_existence(13, 2, 6, 3).is_some()); // Paley
        assert!(t.sedf_existence(9, 2, 4, 2).is_some());
        assert!(t.sedf_existence(17, 2, 4, 1).is_some()); // both patterns apply
        assert!(t.sedf_existence(401, 2, 100, 25).is_some()); // 16*25+1 prime
        assert!(t.sedf_existence(109, 2, 18, 3).is_some()); // 108+1 prime
        assert!(t.sedf_existence(19, 2, 6, 2).is_none());
        assert!(t.sedf_existence(45, 2, 22, 11).is_none());
    }
}

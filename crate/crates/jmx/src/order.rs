//! Monomial orders: lex, weighted degree-reverse-lex, and elimination
//! block orders.
//!
//! All three are total, multiplicative, and have 1 as the minimal
//! monomial. The elimination order makes every monomial involving a
//! front-block variable larger than every monomial supported on the back
//! block only, which is what elimination of the front block relies on.

use std::cmp::Ordering;

use crate::ring::Monomial;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum MonomialOrder {
    /// Pure lexicographic, first variable largest.
    Lex,
    /// Weighted degree first, then reverse-lex tie-break: among equal
    /// weighted degrees the monomial with the smaller exponent in the
    /// last differing variable is larger. This is the engine's default
    /// and the order used for canonical reduced bases.
    GrevLex,
    /// Block order eliminating `front` (sorted variable indices): compare
    /// the front parts by weighted degree + reverse-lex, then the back
    /// parts the same way.
    Elimination { front: Box<[usize]> },
}

impl MonomialOrder {
    pub fn elimination(mut front: Vec<usize>) -> Self {
        front.sort_unstable();
        front.dedup();
        MonomialOrder::Elimination {
            front: front.into_boxed_slice(),
        }
    }

    /// Compare `a` and `b`; `weights` are the ring's variable weights.
    pub fn cmp(&self, weights: &[u64], a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            MonomialOrder::Lex => {
                for (ea, eb) in a.exps().iter().zip(b.exps()) {
                    match ea.cmp(eb) {
                        Ordering::Equal => continue,
                        ord => return ord,
                    }
                }
                Ordering::Equal
            }
            MonomialOrder::GrevLex => {
                match a.weighted_degree().cmp(&b.weighted_degree()) {
                    Ordering::Equal => {}
                    ord => return ord,
                }
                revlex_tiebreak(a.exps(), b.exps())
            }
            MonomialOrder::Elimination { front } => {
                let is_front = front_mask(front, a.exps().len());
                let part_deg = |m: &Monomial, front_part: bool| -> u64 {
                    m.exps()
                        .iter()
                        .zip(weights)
                        .enumerate()
                        .filter(|(i, _)| is_front[*i] == front_part)
                        .map(|(_, (&e, &w))| e as u64 * w)
                        .sum()
                };
                match part_deg(a, true).cmp(&part_deg(b, true)) {
                    Ordering::Equal => {}
                    ord => return ord,
                }
                match revlex_tiebreak_masked(a.exps(), b.exps(), &is_front, true) {
                    Ordering::Equal => {}
                    ord => return ord,
                }
                match part_deg(a, false).cmp(&part_deg(b, false)) {
                    Ordering::Equal => {}
                    ord => return ord,
                }
                revlex_tiebreak_masked(a.exps(), b.exps(), &is_front, false)
            }
        }
    }

    /// Short stable name used in cache keys and reports.
    pub fn label(&self) -> String {
        match self {
            MonomialOrder::Lex => "lex".into(),
            MonomialOrder::GrevLex => "grevlex".into(),
            MonomialOrder::Elimination { front } => {
                let idx: Vec<String> = front.iter().map(|i| i.to_string()).collect();
                format!("elim[{}]", idx.join(","))
            }
        }
    }
}

fn front_mask(front: &[usize], n: usize) -> Vec<bool> {
    let mut mask = vec![false; n];
    for &i in front {
        if i < n {
            mask[i] = true;
        }
    }
    mask
}

/// Reverse-lex: scan from the last variable; the first difference decides,
/// with the smaller exponent belonging to the larger monomial.
fn revlex_tiebreak(a: &[u16], b: &[u16]) -> Ordering {
    for (ea, eb) in a.iter().zip(b).rev() {
        match ea.cmp(eb) {
            Ordering::Equal => continue,
            Ordering::Less => return Ordering::Greater,
            Ordering::Greater => return Ordering::Less,
        }
    }
    Ordering::Equal
}

fn revlex_tiebreak_masked(a: &[u16], b: &[u16], is_front: &[bool], front_part: bool) -> Ordering {
    for i in (0..a.len()).rev() {
        if is_front[i] != front_part {
            continue;
        }
        match a[i].cmp(&b[i]) {
            Ordering::Equal => continue,
            Ordering::Less => return Ordering::Greater,
            Ordering::Greater => return Ordering::Less,
        }
    }
    Ordering::Equal
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;
    use crate::ring::GradedRing;

    fn ring3() -> GradedRing {
        GradedRing::standard(&["x", "y", "z"], PrimeField::default_field()).unwrap()
    }

    #[test]
    fn grevlex_degree_two() {
        // x^2 > xy > y^2 > xz > yz > z^2 under grevlex x > y > z
        let r = ring3();
        let w = r.weights();
        let ms = [
            r.monomial(&[2, 0, 0]),
            r.monomial(&[1, 1, 0]),
            r.monomial(&[0, 2, 0]),
            r.monomial(&[1, 0, 1]),
            r.monomial(&[0, 1, 1]),
            r.monomial(&[0, 0, 2]),
        ];
        for win in ms.windows(2) {
            assert_eq!(MonomialOrder::GrevLex.cmp(w, &win[0], &win[1]), Ordering::Greater);
        }
        // y^2 > xz is the classical grevlex-vs-lex distinction
        assert_eq!(
            MonomialOrder::GrevLex.cmp(w, &r.monomial(&[0, 2, 0]), &r.monomial(&[1, 0, 1])),
            Ordering::Greater
        );
    }

    #[test]
    fn lex_ignores_degree() {
        let r = ring3();
        let w = r.weights();
        assert_eq!(
            MonomialOrder::Lex.cmp(w, &r.monomial(&[1, 0, 0]), &r.monomial(&[0, 5, 5])),
            Ordering::Greater
        );
    }

    #[test]
    fn elimination_front_dominates() {
        // eliminate z (index 2): any monomial with z beats all z-free ones
        let r = ring3();
        let w = r.weights();
        let ord = MonomialOrder::elimination(vec![2]);
        assert_eq!(
            ord.cmp(w, &r.monomial(&[0, 0, 1]), &r.monomial(&[7, 7, 0])),
            Ordering::Greater
        );
        assert_eq!(
            ord.cmp(w, &r.monomial(&[1, 0, 0]), &r.monomial(&[0, 1, 0])),
            Ordering::Greater
        );
    }
}

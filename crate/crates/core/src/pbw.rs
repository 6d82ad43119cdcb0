//! Index-vector combinatorics for PBW monomials: the exponent sets M and
//! M_1, hat/prime reductions, length and weight, and the three orders
//! (lex pair order, principal order, and the induced total order on
//! quadruples).

use std::cmp::Ordering;
use std::fmt;

use crate::halfint::HalfInt;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PbwError {
    #[error("hat/prime reduction undefined on the zero vector")]
    ReductionUndefined,
}

/// A finitely-supported vector of naturals indexed by positions 1, 2, 3, ….
/// Stored sparsely as (position, exponent) pairs sorted by position, with
/// all stored exponents nonzero.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default, PartialOrd, Ord)]
pub struct IndexVector {
    entries: Vec<(u32, u32)>,
}

impl IndexVector {
    pub fn zero() -> Self {
        IndexVector::default()
    }

    /// Unit vector ε_p.
    pub fn unit(p: u32) -> Self {
        assert!(p >= 1);
        IndexVector {
            entries: vec![(p, 1)],
        }
    }

    pub fn from_pairs(pairs: &[(u32, u32)]) -> Self {
        let mut v = IndexVector::zero();
        for &(p, e) in pairs {
            for _ in 0..e {
                v.increment(p);
            }
        }
        v
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, p: u32) -> u32 {
        self.entries
            .iter()
            .find(|&&(q, _)| q == p)
            .map_or(0, |&(_, e)| e)
    }

    pub fn increment(&mut self, p: u32) {
        assert!(p >= 1, "positions start at 1");
        match self.entries.binary_search_by_key(&p, |&(q, _)| q) {
            Ok(idx) => self.entries[idx].1 += 1,
            Err(idx) => self.entries.insert(idx, (p, 1)),
        }
    }

    pub fn decrement(&mut self, p: u32) {
        match self.entries.binary_search_by_key(&p, |&(q, _)| q) {
            Ok(idx) => {
                if self.entries[idx].1 == 1 {
                    self.entries.remove(idx);
                } else {
                    self.entries[idx].1 -= 1;
                }
            }
            Err(_) => panic!("decrement at zero entry {p}"),
        }
    }

    /// (position, exponent) pairs in ascending position order.
    pub fn pairs(&self) -> &[(u32, u32)] {
        &self.entries
    }

    /// Sum of entries.
    pub fn length(&self) -> u32 {
        self.entries.iter().map(|&(_, e)| e).sum()
    }

    /// Σ entry_p · p.
    pub fn weighted_sum(&self) -> i64 {
        self.entries
            .iter()
            .map(|&(p, e)| p as i64 * e as i64)
            .sum()
    }

    pub fn smallest_position(&self) -> Option<u32> {
        self.entries.first().map(|&(p, _)| p)
    }

    pub fn largest_position(&self) -> Option<u32> {
        self.entries.last().map(|&(p, _)| p)
    }
}

/// Reductions of an index vector: hat (smallest nonzero position), the vector with one
/// copy of ε_hat removed, hathat (largest nonzero position), the vector with
/// one copy of ε_hathat removed, and the length.
#[derive(Debug)]
pub struct Reductions {
    pub hat: u32,
    pub primed: IndexVector,
    pub hathat: u32,
    pub double_primed: IndexVector,
    pub length: u32,
}

pub fn index_reductions(v: &IndexVector) -> Result<Reductions, PbwError> {
    let hat = v.smallest_position().ok_or(PbwError::ReductionUndefined)?;
    let hathat = v.largest_position().unwrap();
    let mut primed = v.clone();
    primed.decrement(hat);
    let mut double_primed = v.clone();
    double_primed.decrement(hathat);
    Ok(Reductions {
        hat,
        primed,
        hathat,
        double_primed,
        length: v.length(),
    })
}

/// A {0,1}-valued finitely-supported vector; stored as the sorted set of
/// positions with entry 1.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default, PartialOrd, Ord)]
pub struct ParityIndexVector {
    positions: Vec<u32>,
}

impl ParityIndexVector {
    pub fn zero() -> Self {
        ParityIndexVector::default()
    }

    pub fn unit(p: u32) -> Self {
        assert!(p >= 1);
        ParityIndexVector { positions: vec![p] }
    }

    pub fn from_positions(ps: &[u32]) -> Self {
        let mut v = ParityIndexVector::zero();
        for &p in ps {
            assert!(v.set(p), "duplicate position {p}");
        }
        v
    }

    pub fn is_zero(&self) -> bool {
        self.positions.is_empty()
    }

    pub fn get(&self, p: u32) -> u32 {
        u32::from(self.positions.binary_search(&p).is_ok())
    }

    /// Set entry p to 1; false if it was already set.
    pub fn set(&mut self, p: u32) -> bool {
        assert!(p >= 1, "positions start at 1");
        match self.positions.binary_search(&p) {
            Ok(_) => false,
            Err(idx) => {
                self.positions.insert(idx, p);
                true
            }
        }
    }

    pub fn clear(&mut self, p: u32) {
        match self.positions.binary_search(&p) {
            Ok(idx) => {
                self.positions.remove(idx);
            }
            Err(_) => panic!("clear at zero entry {p}"),
        }
    }

    /// Positions with entry 1, ascending.
    pub fn positions(&self) -> &[u32] {
        &self.positions
    }

    pub fn length(&self) -> u32 {
        self.positions.len() as u32
    }

    /// Σ entry_p · (p − 1/2), doubled: Σ (2p − 1).
    pub fn twice_weighted_sum(&self) -> i64 {
        self.positions.iter().map(|&p| 2 * p as i64 - 1).sum()
    }
}

/// Lex order on vectors: the highest differing position decides.
fn lex_cmp(a: &[(u32, u32)], b: &[(u32, u32)]) -> Ordering {
    let mut ia = a.iter().rev().peekable();
    let mut ib = b.iter().rev().peekable();
    loop {
        match (ia.peek(), ib.peek()) {
            (None, None) => return Ordering::Equal,
            (None, Some(_)) => return Ordering::Less,
            (Some(_), None) => return Ordering::Greater,
            (Some(&&(pa, ea)), Some(&&(pb, eb))) => match pa.cmp(&pb) {
                Ordering::Greater => return Ordering::Greater,
                Ordering::Less => return Ordering::Less,
                Ordering::Equal => match ea.cmp(&eb) {
                    Ordering::Equal => {
                        ia.next();
                        ib.next();
                    }
                    ord => return ord,
                },
            },
        }
    }
}

/// Reverse-lex order on vectors: the lowest differing
/// position decides.
fn revlex_cmp(a: &[(u32, u32)], b: &[(u32, u32)]) -> Ordering {
    let mut ia = a.iter().peekable();
    let mut ib = b.iter().peekable();
    loop {
        match (ia.peek(), ib.peek()) {
            (None, None) => return Ordering::Equal,
            (None, Some(_)) => return Ordering::Less,
            (Some(_), None) => return Ordering::Greater,
            (Some(&&(pa, ea)), Some(&&(pb, eb))) => match pa.cmp(&pb) {
                // lower position present in a only: a has the larger entry there
                Ordering::Less => return Ordering::Greater,
                Ordering::Greater => return Ordering::Less,
                Ordering::Equal => match ea.cmp(&eb) {
                    Ordering::Equal => {
                        ia.next();
                        ib.next();
                    }
                    ord => return ord,
                },
            },
        }
    }
}

fn parity_pairs(v: &ParityIndexVector) -> Vec<(u32, u32)> {
    v.positions.iter().map(|&p| (p, 1)).collect()
}

pub fn lex_cmp_index(a: &IndexVector, b: &IndexVector) -> Ordering {
    lex_cmp(&a.entries, &b.entries)
}

pub fn revlex_cmp_index(a: &IndexVector, b: &IndexVector) -> Ordering {
    revlex_cmp(&a.entries, &b.entries)
}

pub fn lex_cmp_parity(a: &ParityIndexVector, b: &ParityIndexVector) -> Ordering {
    lex_cmp(&parity_pairs(a), &parity_pairs(b))
}

pub fn revlex_cmp_parity(a: &ParityIndexVector, b: &ParityIndexVector) -> Ordering {
    revlex_cmp(&parity_pairs(a), &parity_pairs(b))
}

/// The pair order on (j, l): lex on j, ties broken by lex on l.
pub fn compare_lex(a: (&IndexVector, &ParityIndexVector), b: (&IndexVector, &ParityIndexVector)) -> Ordering {
    lex_cmp_index(a.0, b.0).then_with(|| lex_cmp_parity(a.1, b.1))
}

/// Weight of an (i, k) pair: Σ i_n n + Σ k_n (n − 1/2).
pub fn pair_weight(i: &IndexVector, k: &ParityIndexVector) -> HalfInt {
    HalfInt::from_twice(2 * i.weighted_sum() + k.twice_weighted_sum())
}

/// The principal order on (i, k): weight, then k reverse-lex,
/// then length of i, then i reverse-lex.
pub fn compare_principal(
    a: (&IndexVector, &ParityIndexVector),
    b: (&IndexVector, &ParityIndexVector),
) -> Ordering {
    pair_weight(a.0, a.1)
        .cmp(&pair_weight(b.0, b.1))
        .then_with(|| revlex_cmp_parity(a.1, b.1))
        .then_with(|| a.0.length().cmp(&b.0.length()))
        .then_with(|| revlex_cmp_index(a.0, b.0))
}

/// Exponent quadruple (i, j, k, l) of a PBW monomial L^i H^j G^k F^l.
/// Position p of i/j refers to the p-th lowering letter of the L/H family
/// under the ambient module's convention (L_{-p}/H_{-p} for a Verma module);
/// position p of k/l refers to the p-th odd letter (G_{1/2-p}/F_{1/2-p}).
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default, PartialOrd, Ord)]
pub struct PBWMonomial {
    pub i: IndexVector,
    pub j: IndexVector,
    pub k: ParityIndexVector,
    pub l: ParityIndexVector,
}

/// The four letter families in canonical written order.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Family {
    L,
    H,
    G,
    F,
}

impl Family {
    pub fn is_odd(self) -> bool {
        matches!(self, Family::G | Family::F)
    }
}

impl PBWMonomial {
    pub fn one() -> Self {
        PBWMonomial::default()
    }

    pub fn is_one(&self) -> bool {
        self.i.is_zero() && self.j.is_zero() && self.k.is_zero() && self.l.is_zero()
    }

    /// Total number of letters.
    pub fn letter_count(&self) -> u32 {
        self.i.length() + self.j.length() + self.k.length() + self.l.length()
    }

    /// The leftmost letter of the written monomial, if any: first family in
    /// L < H < G < F order, largest position within the family.
    pub fn leading_letter(&self) -> Option<(Family, u32)> {
        if let Some(p) = self.i.largest_position() {
            return Some((Family::L, p));
        }
        if let Some(p) = self.j.largest_position() {
            return Some((Family::H, p));
        }
        if let Some(&p) = self.k.positions().last() {
            return Some((Family::G, p));
        }
        self.l.positions().last().map(|&p| (Family::F, p))
    }

    /// Remove the leading letter, returning it and the remaining monomial.
    pub fn split_leading(&self) -> Option<((Family, u32), PBWMonomial)> {
        let (fam, p) = self.leading_letter()?;
        let mut rest = self.clone();
        match fam {
            Family::L => rest.i.decrement(p),
            Family::H => rest.j.decrement(p),
            Family::G => rest.k.clear(p),
            Family::F => rest.l.clear(p),
        }
        Some(((fam, p), rest))
    }

    /// Add one letter. For odd families the position must not already be
    /// occupied; returns false in that case (the caller resolves squares
    /// through the bracket).
    pub fn add_letter(&mut self, fam: Family, p: u32) -> bool {
        match fam {
            Family::L => {
                self.i.increment(p);
                true
            }
            Family::H => {
                self.j.increment(p);
                true
            }
            Family::G => self.k.set(p),
            Family::F => self.l.set(p),
        }
    }

    /// Letters of the written monomial, left to right.
    pub fn letters(&self) -> Vec<(Family, u32)> {
        let mut out = Vec::with_capacity(self.letter_count() as usize);
        for &(p, e) in self.i.pairs().iter().rev() {
            for _ in 0..e {
                out.push((Family::L, p));
            }
        }
        for &(p, e) in self.j.pairs().iter().rev() {
            for _ in 0..e {
                out.push((Family::H, p));
            }
        }
        for &p in self.k.positions().iter().rev() {
            out.push((Family::G, p));
        }
        for &p in self.l.positions().iter().rev() {
            out.push((Family::F, p));
        }
        out
    }
}

/// Weight of a quadruple: the summed degrees of its letters.
pub fn weight(m: &PBWMonomial) -> HalfInt {
    HalfInt::from_twice(
        2 * m.i.weighted_sum()
            + 2 * m.j.weighted_sum()
            + m.k.twice_weighted_sum()
            + m.l.twice_weighted_sum(),
    )
}

/// The principal total order on quadruples: weight, then k reverse-lex,
/// then i reverse-lex, then (j, l) under the pair order above.
pub fn compare_total(a: &PBWMonomial, b: &PBWMonomial) -> Ordering {
    weight(a)
        .cmp(&weight(b))
        .then_with(|| revlex_cmp_parity(&a.k, &b.k))
        .then_with(|| revlex_cmp_index(&a.i, &b.i))
        .then_with(|| compare_lex((&a.j, &a.l), (&b.j, &b.l)))
}

/// Default rendering with the Verma letter convention: position p of i/j is
/// L(-p)/H(-p), position p of k/l is G/F at 1/2 - p. Report output for other
/// constructions goes through the module's own convention.
impl fmt::Display for PBWMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        let mut sep = |f: &mut fmt::Formatter<'_>| -> fmt::Result {
            if first {
                first = false;
                Ok(())
            } else {
                write!(f, " ")
            }
        };
        for &(p, e) in self.i.pairs().iter().rev() {
            sep(f)?;
            write!(f, "L(-{p})^{e}")?;
        }
        for &(p, e) in self.j.pairs().iter().rev() {
            sep(f)?;
            write!(f, "H(-{p})^{e}")?;
        }
        for &p in self.k.positions().iter().rev() {
            sep(f)?;
            write!(f, "G({})", HalfInt::half_odd(-(p as i64)))?;
        }
        for &p in self.l.positions().iter().rev() {
            sep(f)?;
            write!(f, "F({})", HalfInt::half_odd(-(p as i64)))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn iv(pairs: &[(u32, u32)]) -> IndexVector {
        IndexVector::from_pairs(pairs)
    }
    fn pv(ps: &[u32]) -> ParityIndexVector {
        ParityIndexVector::from_positions(ps)
    }

    #[test]
    fn weight_examples() {
        // (i=e2, j=e1, k=e1, l=0) -> 7/2
        let m = PBWMonomial {
            i: iv(&[(2, 1)]),
            j: iv(&[(1, 1)]),
            k: pv(&[1]),
            l: pv(&[]),
        };
        assert_eq!(weight(&m), HalfInt::from_twice(7));
        assert_eq!(weight(&PBWMonomial::one()), HalfInt::ZERO);
        let m = PBWMonomial {
            i: iv(&[]),
            j: iv(&[]),
            k: pv(&[1]),
            l: pv(&[1]),
        };
        assert_eq!(weight(&m), HalfInt::from_int(1));
    }

    #[test]
    fn reductions() {
        // e3 + 2 e1
        let v = iv(&[(3, 1), (1, 2)]);
        let r = index_reductions(&v).unwrap();
        assert_eq!(r.hat, 1);
        assert_eq!(r.primed, iv(&[(3, 1), (1, 1)]));
        assert_eq!(r.hathat, 3);
        assert_eq!(r.double_primed, iv(&[(1, 2)]));
        assert_eq!(r.length, 3);

        let v = iv(&[(5, 1)]);
        let r = index_reductions(&v).unwrap();
        assert_eq!((r.hat, r.hathat), (5, 5));
        assert!(r.primed.is_zero() && r.double_primed.is_zero());
        assert_eq!(r.length, 1);

        assert_eq!(
            index_reductions(&IndexVector::zero()).unwrap_err(),
            PbwError::ReductionUndefined
        );
    }

    #[test]
    fn lex_examples() {
        // (2e1, 0) vs (e2, 0): position 2 decides, less
        assert_eq!(
            compare_lex((&iv(&[(1, 2)]), &pv(&[])), (&iv(&[(2, 1)]), &pv(&[]))),
            Ordering::Less
        );
        assert_eq!(
            compare_lex((&iv(&[(1, 1)]), &pv(&[])), (&iv(&[(1, 1)]), &pv(&[]))),
            Ordering::Equal
        );
        // tie on j, lex on l
        assert_eq!(
            compare_lex((&iv(&[(2, 1)]), &pv(&[1])), (&iv(&[(2, 1)]), &pv(&[2]))),
            Ordering::Less
        );
    }

    #[test]
    fn principal_examples() {
        // weights 1/2 < 1
        assert_eq!(
            compare_principal((&iv(&[]), &pv(&[1])), (&iv(&[(1, 1)]), &pv(&[]))),
            Ordering::Less
        );
        // equal weight 2, lengths 1 < 2
        assert_eq!(
            compare_principal((&iv(&[(2, 1)]), &pv(&[])), (&iv(&[(1, 2)]), &pv(&[]))),
            Ordering::Less
        );
        // equal weight 3, lengths 2 < 3
        assert_eq!(
            compare_principal(
                (&iv(&[(2, 1), (1, 1)]), &pv(&[])),
                (&iv(&[(1, 3)]), &pv(&[]))
            ),
            Ordering::Less
        );
    }

    #[test]
    fn total_examples() {
        let a = PBWMonomial {
            j: iv(&[(1, 1)]),
            ..PBWMonomial::one()
        };
        assert_eq!(compare_total(&a, &a), Ordering::Equal);

        // (0, e1, 0, 0) vs (0, 0, e1, e1): equal weight 1, k: 0 < e1
        let b = PBWMonomial {
            k: pv(&[1]),
            l: pv(&[1]),
            ..PBWMonomial::one()
        };
        assert_eq!(compare_total(&a, &b), Ordering::Less);

        // (e1, 0, 0, 0) vs (0, e1, 0, 0): equal weight, equal k, i decides
        let c = PBWMonomial {
            i: iv(&[(1, 1)]),
            ..PBWMonomial::one()
        };
        assert_eq!(compare_total(&c, &a), Ordering::Greater);
    }

    #[test]
    fn letters_and_display() {
        let m = PBWMonomial {
            i: iv(&[(2, 1)]),
            j: iv(&[(1, 2)]),
            k: pv(&[1]),
            l: pv(&[2]),
        };
        assert_eq!(format!("{m}"), "L(-2)^1 H(-1)^2 G(-1/2) F(-3/2)");
        assert_eq!(
            m.letters(),
            vec![
                (Family::L, 2),
                (Family::H, 1),
                (Family::H, 1),
                (Family::G, 1),
                (Family::F, 2)
            ]
        );
        let ((fam, p), rest) = m.split_leading().unwrap();
        assert_eq!((fam, p), (Family::L, 2));
        assert_eq!(rest.letter_count(), 4);
    }
}

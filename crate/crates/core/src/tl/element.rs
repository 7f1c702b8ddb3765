use std::collections::BTreeMap;
use std::fmt;

use super::matching::{match_mul_unchecked, Matching};
use crate::error::{Error, Result};
use crate::qcore::{Cyclo, VRational};

/// `δ^k` for the loop value `δ = -A^2 - A^-2 = Δ_1`.
pub(crate) fn delta_pow(k: usize) -> VRational {
    Cyclo::delta(1).pow(k as u32).to_vrational()
}

/// A linear combination of matchings on `2n` points with coefficients in
/// the cyclotomic rational functions.
#[derive(Clone, PartialEq, Eq)]
pub struct TLElement {
    n: usize,
    terms: BTreeMap<Matching, VRational>,
}

impl TLElement {
    pub fn zero(n: usize) -> Self {
        Self {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_matching(Matching::identity(n))
    }

    pub fn from_matching(m: Matching) -> Self {
        let n = m.n();
        let mut terms = BTreeMap::new();
        terms.insert(m, VRational::one());
        Self { n, terms }
    }

    /// The cup-cap generator `e_i` as an element.
    pub fn e(n: usize, i: usize) -> Result<Self> {
        Ok(Self::from_matching(Matching::e(n, i)?))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Matching, &VRational)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, m: Matching, c: VRational) {
        debug_assert_eq!(m.n(), self.n);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(slot) => {
                slot.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut slot) => {
                *slot.get_mut() += &c;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    /// The coefficient of `d`, zero when absent.
    pub fn coeff_of(&self, d: &Matching) -> Result<VRational> {
        if d.n() != self.n {
            return Err(Error::domain(format!(
                "matching on {} strands, element on {}",
                d.n(),
                self.n
            )));
        }
        Ok(self.terms.get(d).cloned().unwrap_or_default())
    }

    pub fn scale(&self, c: &VRational) -> Self {
        let mut out = Self::zero(self.n);
        if c.is_zero() {
            return out;
        }
        for (m, x) in &self.terms {
            out.add_term(m.clone(), x * c);
        }
        out
    }

    pub fn add(&self, rhs: &Self) -> Result<Self> {
        self.same_n(rhs)?;
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self> {
        self.add(&rhs.scale(&VRational::from(-1)))
    }

    /// `self · rhs`, with `rhs` stacked on top of `self`.
    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        self.same_n(rhs)?;
        // Group products by loop count so each δ power multiplies once.
        let mut by_loops: BTreeMap<usize, BTreeMap<Matching, VRational>> = BTreeMap::new();
        for (a, x) in &self.terms {
            for (b, y) in &rhs.terms {
                let (m, loops) = match_mul_unchecked(a, b);
                let c = x * y;
                let slot = by_loops.entry(loops).or_default();
                match slot.get_mut(&m) {
                    Some(acc) => *acc += &c,
                    None => {
                        slot.insert(m, c);
                    }
                }
            }
        }
        let mut out = Self::zero(self.n);
        for (loops, terms) in by_loops {
            let d = delta_pow(loops);
            for (m, c) in terms {
                out.add_term(m, &c * &d);
            }
        }
        Ok(out)
    }

    /// `self ⊗ 1`.
    pub fn tensor_id(&self) -> Self {
        let mut out = Self::zero(self.n + 1);
        for (m, c) in &self.terms {
            out.add_term(m.tensor_id(), c.clone());
        }
        out
    }

    /// `self ⊗ rhs`, with `rhs` on the right.
    pub fn tensor(&self, rhs: &Self) -> Self {
        let mut out = Self::zero(self.n + rhs.n);
        for (a, x) in &self.terms {
            for (b, y) in &rhs.terms {
                out.add_term(a.tensor(b), x * y);
            }
        }
        out
    }

    /// Closes the rightmost `k` strands around the right side, leaving an
    /// element on `n - k` strands.
    pub fn partial_trace(&self, k: usize) -> Result<Self> {
        if k > self.n {
            return Err(Error::domain(format!(
                "cannot close {k} of {} strands",
                self.n
            )));
        }
        let mut out = Self::zero(self.n - k);
        for (m, c) in &self.terms {
            let (reduced, loops) = close_right(m, k);
            out.add_term(reduced, c * &delta_pow(loops));
        }
        Ok(out)
    }

    /// Full trace closure; a scalar.
    pub fn trace(&self) -> VRational {
        let t = self.partial_trace(self.n).expect("k = n is in range");
        t.terms.values().next().cloned().unwrap_or_default()
    }

    fn same_n(&self, rhs: &Self) -> Result<()> {
        if self.n != rhs.n {
            return Err(Error::domain(format!(
                "strand counts differ: {} vs {}",
                self.n, rhs.n
            )));
        }
        Ok(())
    }
}

/// Joins top point `i` to bottom point `i` for the rightmost `k` positions.
fn close_right(m: &Matching, k: usize) -> (Matching, usize) {
    let n = m.n();
    let r = n - k;
    let closed = |p: usize| (p < n && p >= r) || (p >= n + r);
    let other_side = |p: usize| if p < n { p + n } else { p - n };
    let mut seen = vec![false; 2 * n];
    let mut partner = vec![0u8; 2 * r];
    let to_new = |p: usize| if p < n { p } else { p - n + r };
    for start in (0..r).chain(n..n + r) {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut p = m.partner(start);
        while closed(p) {
            seen[p] = true;
            let q = other_side(p);
            seen[q] = true;
            p = m.partner(q);
        }
        seen[p] = true;
        partner[to_new(start)] = to_new(p) as u8;
        partner[to_new(p)] = to_new(start) as u8;
    }
    let mut loops = 0;
    for start in (r..n).chain(n + r..2 * n) {
        if seen[start] {
            continue;
        }
        loops += 1;
        let mut p = start;
        loop {
            seen[p] = true;
            let q = m.partner(p);
            seen[q] = true;
            p = other_side(q);
            if p == start {
                break;
            }
        }
    }
    (Matching::from_partners_unchecked(partner), loops)
}

impl fmt::Debug for TLElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TLElement(n = {}", self.n)?;
        for (m, c) in &self.terms {
            write!(f, ", {m}: {c}")?;
        }
        write!(f, ")")
    }
}

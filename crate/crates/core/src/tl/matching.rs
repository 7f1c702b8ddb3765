use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

/// A crossingless matching of `2n` boundary points.
///
/// Points `0..n` lie on the top edge left to right and `n..2n` on the bottom
/// edge left to right. Walking the boundary as top left→right then bottom
/// right→left, each pair opens and closes once, so the matching is encoded
/// as a balanced-parenthesis word; that word fixes the total order.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matching {
    n: usize,
    word: u64,
    partner: Vec<u8>,
}

const MAX_POINTS: usize = 64;

impl Matching {
    /// Builds a matching from its partner table, checking that it is a
    /// fixed-point-free involution without interleaving pairs.
    pub fn from_partners(partner: Vec<usize>) -> Result<Self> {
        let len = partner.len();
        if len % 2 != 0 || len > MAX_POINTS {
            return Err(Error::domain(format!(
                "a matching needs an even number of at most {MAX_POINTS} points, got {len}"
            )));
        }
        for (i, &p) in partner.iter().enumerate() {
            if p >= len || p == i || partner[p] != i {
                return Err(Error::domain(format!("point {i} is not properly paired")));
            }
        }
        let n = len / 2;
        let partner: Vec<u8> = partner.into_iter().map(|p| p as u8).collect();
        let word = encode(n, &partner)
            .ok_or_else(|| Error::domain("pairs interleave: matching is not planar"))?;
        Ok(Self { n, word, partner })
    }

    /// Builds a matching from a list of pairs.
    pub fn from_pairs(n: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        let mut partner = vec![usize::MAX; 2 * n];
        for &(a, b) in pairs {
            if a >= 2 * n || b >= 2 * n || partner[a] != usize::MAX || partner[b] != usize::MAX {
                return Err(Error::domain(format!("bad pair ({a}, {b})")));
            }
            partner[a] = b;
            partner[b] = a;
        }
        Self::from_partners(partner)
    }

    pub(crate) fn from_partners_unchecked(partner: Vec<u8>) -> Self {
        let n = partner.len() / 2;
        let word = encode(n, &partner).expect("planar matching");
        Self { n, word, partner }
    }

    /// The identity: every top point joined to the bottom point below it.
    pub fn identity(n: usize) -> Self {
        let partner = (0..2 * n)
            .map(|i| if i < n { (i + n) as u8 } else { (i - n) as u8 })
            .collect();
        Self::from_partners_unchecked(partner)
    }

    /// The cup-cap generator `e_i` (`1 ≤ i < n`): points `i-1, i` joined on
    /// both edges, all other strands vertical.
    pub fn e(n: usize, i: usize) -> Result<Self> {
        if i == 0 || i >= n {
            return Err(Error::domain(format!("e_{i} needs 1 <= i < {n}")));
        }
        let mut partner: Vec<u8> = Self::identity(n).partner;
        let (a, b) = (i - 1, i);
        partner[a] = b as u8;
        partner[b] = a as u8;
        partner[n + a] = (n + b) as u8;
        partner[n + b] = (n + a) as u8;
        Ok(Self::from_partners_unchecked(partner))
    }

    /// `k` nested caps on the right end of the top and bottom edges, all
    /// other strands vertical. With `k = n/2` this is the fully nested
    /// turn-back diagram.
    pub fn nested_turnback(n: usize, k: usize) -> Result<Self> {
        if 2 * k > n {
            return Err(Error::domain(format!(
                "{k} nested caps do not fit on {n} strands"
            )));
        }
        let mut partner: Vec<u8> = Self::identity(n).partner;
        for s in 0..k {
            let (a, b) = (n - 2 * k + s, n - 1 - s);
            partner[a] = b as u8;
            partner[b] = a as u8;
            partner[n + a] = (n + b) as u8;
            partner[n + b] = (n + a) as u8;
        }
        Ok(Self::from_partners_unchecked(partner))
    }

    /// Every crossingless matching on `2n` points, in canonical order.
    pub fn enumerate(n: usize) -> Vec<Self> {
        let mut words = Vec::new();
        gen_words(2 * n, 0, 0, 0, &mut words);
        let mut out: Vec<Self> = words.into_iter().map(|w| decode(n, w)).collect();
        out.sort();
        out
    }

    /// Strand count.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn partner(&self, point: usize) -> usize {
        self.partner[point] as usize
    }

    pub fn partners(&self) -> &[u8] {
        &self.partner
    }

    /// Balanced-parenthesis word over the boundary cycle.
    pub fn word(&self) -> String {
        (0..2 * self.n)
            .map(|k| if self.word >> k & 1 == 1 { '(' } else { ')' })
            .collect()
    }

    pub fn is_identity(&self) -> bool {
        (0..self.n).all(|i| self.partner[i] as usize == i + self.n)
    }

    /// Number of strands joining top to bottom.
    pub fn through_strands(&self) -> usize {
        (0..self.n)
            .filter(|&i| self.partner[i] as usize >= self.n)
            .count()
    }

    /// `self ⊗ 1`: appends a vertical strand on the right.
    pub fn tensor_id(&self) -> Self {
        let n = self.n;
        let map = |p: usize| if p < n { p } else { p + 1 };
        let mut partner = vec![0u8; 2 * (n + 1)];
        for p in 0..2 * n {
            partner[map(p)] = map(self.partner[p] as usize) as u8;
        }
        partner[n] = (2 * n + 1) as u8;
        partner[2 * n + 1] = n as u8;
        Self::from_partners_unchecked(partner)
    }

    /// Places `rhs` to the right of `self`.
    pub fn tensor(&self, rhs: &Self) -> Self {
        let (a, b) = (self.n, rhs.n);
        let n = a + b;
        let left = |p: usize| if p < a { p } else { p - a + n };
        let right = |p: usize| if p < b { p + a } else { p - b + n + a };
        let mut partner = vec![0u8; 2 * n];
        for p in 0..2 * a {
            partner[left(p)] = left(self.partner[p] as usize) as u8;
        }
        for p in 0..2 * b {
            partner[right(p)] = right(rhs.partner[p] as usize) as u8;
        }
        Self::from_partners_unchecked(partner)
    }
}

/// Stacks `b` on top of `a` (the top of `a` glued to the bottom of `b`) and
/// returns the composite matching with the number of closed loops.
pub fn match_mul(a: &Matching, b: &Matching) -> Result<(Matching, usize)> {
    if a.n != b.n {
        return Err(Error::domain(format!(
            "strand counts differ: {} vs {}",
            a.n, b.n
        )));
    }
    Ok(match_mul_unchecked(a, b))
}

pub(crate) fn match_mul_unchecked(a: &Matching, b: &Matching) -> (Matching, usize) {
    let n = a.n;
    // Composite endpoints: top of b (0..n) and bottom of a (n..2n).
    // Middle points m in 0..n: top point m of a, bottom point n+m of b.
    let mut partner = vec![0u8; 2 * n];
    let mut seen = vec![false; n];
    // Exits a diagram at the far end of a strand starting from an outer point.
    let walk = |start_in_a: bool, start: usize, seen: &mut Vec<bool>| -> usize {
        let (mut in_a, mut p) = (start_in_a, start);
        loop {
            let q = if in_a {
                a.partner[p] as usize
            } else {
                b.partner[p] as usize
            };
            if in_a {
                if q >= n {
                    return q; // bottom of a
                }
                seen[q] = true;
                in_a = false;
                p = q + n;
            } else {
                if q < n {
                    return q; // top of b
                }
                seen[q - n] = true;
                in_a = true;
                p = q - n;
            }
        }
    };
    for t in 0..n {
        let end = walk(false, t, &mut seen);
        partner[t] = end as u8;
        partner[end] = t as u8;
    }
    for bpt in n..2 * n {
        let end = walk(true, bpt, &mut seen);
        partner[bpt] = end as u8;
        partner[end] = bpt as u8;
    }
    // Remaining middle points lie on closed loops.
    let mut loops = 0;
    for m in 0..n {
        if seen[m] {
            continue;
        }
        loops += 1;
        let mut p = m;
        loop {
            seen[p] = true;
            let q = b.partner[p + n] as usize - n; // through b back to the middle
            seen[q] = true;
            let r = a.partner[q] as usize; // through a back to the middle
            if r == m {
                break;
            }
            p = r;
        }
    }
    (Matching::from_partners_unchecked(partner), loops)
}

fn boundary_position(n: usize, point: usize) -> usize {
    if point < n {
        point
    } else {
        3 * n - 1 - point
    }
}

fn boundary_point(n: usize, pos: usize) -> usize {
    if pos < n {
        pos
    } else {
        3 * n - 1 - pos
    }
}

fn encode(n: usize, partner: &[u8]) -> Option<u64> {
    let mut word = 0u64;
    let mut stack: Vec<usize> = Vec::new();
    for pos in 0..2 * n {
        let p = boundary_point(n, pos);
        let other = boundary_position(n, partner[p] as usize);
        if other > pos {
            word |= 1 << pos;
            stack.push(pos);
        } else if stack.pop() != Some(other) {
            return None;
        }
    }
    Some(word)
}

fn decode(n: usize, word: u64) -> Matching {
    let mut partner = vec![0u8; 2 * n];
    let mut stack = Vec::new();
    for pos in 0..2 * n {
        if word >> pos & 1 == 1 {
            stack.push(pos);
        } else {
            let open = stack.pop().expect("balanced word");
            let (a, b) = (boundary_point(n, open), boundary_point(n, pos));
            partner[a] = b as u8;
            partner[b] = a as u8;
        }
    }
    Matching { n, word, partner }
}

fn gen_words(len: usize, pos: usize, open: usize, word: u64, out: &mut Vec<u64>) {
    if pos == len {
        if open == 0 {
            out.push(word);
        }
        return;
    }
    let remaining = len - pos;
    if open < remaining {
        gen_words(len, pos + 1, open + 1, word | 1 << pos, out);
    }
    if open > 0 {
        gen_words(len, pos + 1, open - 1, word, out);
    }
}

impl Ord for Matching {
    fn cmp(&self, other: &Self) -> Ordering {
        self.n
            .cmp(&other.n)
            .then_with(|| self.word.reverse_bits().cmp(&other.word.reverse_bits()))
    }
}

impl PartialOrd for Matching {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Matching {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matching({})", self.word())
    }
}

impl fmt::Display for Matching {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.word())
    }
}

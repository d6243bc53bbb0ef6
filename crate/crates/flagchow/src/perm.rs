//! Permutation combinatorics for Schubert calculus.
//!
//! Permutations are stored in one-line notation with trailing fixed points
//! trimmed, so the stable embedding `S_n ⊂ S_{n+1}` is the identity on
//! representations.  Transpositions act on the right by swapping positions,
//! matching the `wt` convention of Monk's formula.

use crate::{Error, Result};
use std::fmt;

/// A permutation of the positive integers fixing all but finitely many.
///
/// The window holds `w(1), ..., w(m)` and is a rearrangement of `1..=m`;
/// every value beyond the window is fixed.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Permutation {
    window: Vec<u32>,
}

impl Permutation {
    /// The identity (empty window).
    pub fn identity() -> Self {
        Permutation { window: Vec::new() }
    }

    /// Build from one-line notation; trailing fixed points are trimmed.
    pub fn from_window(vals: impl Into<Vec<u32>>) -> Result<Self> {
        let window: Vec<u32> = vals.into();
        let m = window.len();
        let mut seen = vec![false; m];
        for &v in &window {
            if v == 0 || v as usize > m || seen[v as usize - 1] {
                return Err(Error::InvalidPermutation(format!(
                    "window {:?} is not a rearrangement of 1..={}",
                    window, m
                )));
            }
            seen[v as usize - 1] = true;
        }
        let mut p = Permutation { window };
        p.trim();
        Ok(p)
    }

    fn trim(&mut self) {
        while let Some(&last) = self.window.last() {
            if last as usize == self.window.len() {
                self.window.pop();
            } else {
                break;
            }
        }
    }

    /// The unique permutation in `S^(m)` with Lehmer code `code` (padded by zeros).
    pub fn from_code(code: &[u32]) -> Self {
        let slots = code.len();
        let total: u32 = code.iter().sum();
        let size = slots + total as usize;
        let mut avail: Vec<u32> = (1..=size as u32).collect();
        let mut window = Vec::with_capacity(size);
        for &c in code {
            window.push(avail.remove(c as usize));
        }
        window.extend(avail);
        let mut p = Permutation { window };
        p.trim();
        p
    }

    /// `w(i)` with `i` 1-based; positions beyond the window are fixed.
    pub fn value(&self, i: usize) -> u32 {
        if i == 0 {
            panic!("engine fault: permutation positions are 1-based");
        }
        if i <= self.window.len() {
            self.window[i - 1]
        } else {
            i as u32
        }
    }

    pub fn window(&self) -> &[u32] {
        &self.window
    }

    /// Size of the trimmed window.
    pub fn window_size(&self) -> usize {
        self.window.len()
    }

    pub fn is_identity(&self) -> bool {
        self.window.is_empty()
    }

    /// Whether `w` lies in `S_n` under the stable embedding.
    pub fn in_s_n(&self, n: u32) -> bool {
        self.window.len() as u32 <= n
    }

    pub fn inverse(&self) -> Self {
        let m = self.window.len();
        let mut window = vec![0u32; m];
        for (i, &v) in self.window.iter().enumerate() {
            window[v as usize - 1] = i as u32 + 1;
        }
        let mut p = Permutation { window };
        p.trim();
        p
    }

    /// Composition `(self ∘ other)(i) = self(other(i))`.
    pub fn compose(&self, other: &Self) -> Self {
        let m = self.window.len().max(other.window.len());
        let window: Vec<u32> = (1..=m).map(|i| self.value(other.value(i) as usize)).collect();
        let mut p = Permutation { window };
        p.trim();
        p
    }

    /// Number of inversions.
    pub fn length(&self) -> usize {
        let w = &self.window;
        let mut l = 0;
        for i in 0..w.len() {
            for j in i + 1..w.len() {
                if w[i] > w[j] {
                    l += 1;
                }
            }
        }
        l
    }

    /// The longest element `[n, n-1, ..., 1]` of `S_n`.
    pub fn longest_element(n: u32) -> Self {
        let window: Vec<u32> = (1..=n).rev().collect();
        let mut p = Permutation { window };
        p.trim();
        p
    }

    /// The transposition `(i j)` as a permutation.
    pub fn transposition(i: u32, j: u32) -> Self {
        assert!(i != j && i > 0 && j > 0, "engine fault: bad transposition");
        let (i, j) = (i.min(j), i.max(j));
        let mut window: Vec<u32> = (1..=j).collect();
        window[i as usize - 1] = j;
        window[j as usize - 1] = i;
        Permutation { window }
    }

    /// Right action `w·(i j)`: swaps the entries at positions `i` and `j`.
    pub fn times_transposition(&self, i: u32, j: u32) -> Self {
        let (i, j) = (i.min(j) as usize, i.max(j) as usize);
        let m = self.window.len().max(j);
        let mut window: Vec<u32> = (1..=m).map(|p| self.value(p)).collect();
        window.swap(i - 1, j - 1);
        let mut p = Permutation { window };
        p.trim();
        p
    }

    /// The adjacent transposition `s_i`.
    pub fn s(i: u32) -> Self {
        Self::transposition(i, i + 1)
    }

    /// Lehmer code `c_i = #{j > i : w(j) < w(i)}`, one slot per window position.
    pub fn code(&self) -> Vec<u32> {
        let w = &self.window;
        (0..w.len())
            .map(|i| (i + 1..w.len()).filter(|&j| w[j] < w[i]).count() as u32)
            .collect()
    }

    /// A permutation is dominant when its code is weakly decreasing; its
    /// Schubert polynomial is then the single monomial `X^code`.
    pub fn is_dominant(&self) -> bool {
        let c = self.code();
        c.windows(2).all(|p| p[0] >= p[1])
    }

    /// Descent positions `i` with `w(i) > w(i+1)`.  All descents lie inside
    /// the trimmed window.
    pub fn descents(&self) -> Vec<usize> {
        let w = &self.window;
        (1..w.len()).filter(|&i| w[i - 1] > w[i]).collect()
    }

    /// Reduced word by the leftmost-descent greedy rule: the letters
    /// `i_1 ... i_l` satisfy `w = s_{i_1} ··· s_{i_l}`.
    pub fn reduced_word(&self) -> Vec<u32> {
        let mut w = self.clone();
        let mut rev = Vec::with_capacity(w.length());
        while let Some(&i) = w.descents().first() {
            rev.push(i as u32);
            w = w.times_transposition(i as u32, i as u32 + 1);
        }
        rev.reverse();
        rev
    }

    /// Parse comma-separated one-line notation, e.g. `"3,1,2"`.
    pub fn parse(s: &str) -> Result<Self> {
        let vals: Vec<u32> = s
            .split(',')
            .map(|t| t.trim().parse::<u32>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| Error::InvalidPermutation(format!("cannot parse {s:?}")))?;
        Self::from_window(vals)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.window.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.window.iter().map(|v| v.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// A flag type: strictly increasing ranks `r_1 < r_2 < ... < r_m = n`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct FlagType {
    ranks: Vec<u32>,
}

impl FlagType {
    pub fn new(ranks: Vec<u32>) -> Result<Self> {
        if ranks.len() < 2 {
            return Err(Error::InvalidFlagType(format!(
                "need at least two ranks, got {ranks:?}"
            )));
        }
        if ranks[0] == 0 || ranks.windows(2).any(|p| p[0] >= p[1]) {
            return Err(Error::InvalidFlagType(format!(
                "ranks must be strictly increasing and positive, got {ranks:?}"
            )));
        }
        Ok(FlagType { ranks })
    }

    /// The complete flag type `(1, 2, ..., n)`.
    pub fn complete(n: u32) -> Self {
        assert!(n >= 2, "complete flag type needs n >= 2");
        FlagType { ranks: (1..=n).collect() }
    }

    pub fn ranks(&self) -> &[u32] {
        &self.ranks
    }

    /// Ambient dimension `n = r_m`.
    pub fn n(&self) -> u32 {
        *self.ranks.last().unwrap()
    }

    pub fn num_blocks(&self) -> usize {
        self.ranks.len()
    }

    pub fn is_complete(&self) -> bool {
        self.ranks.len() as u32 == self.n()
    }

    /// Inclusive variable ranges `(r_{b-1}+1, r_b)` of each block.
    pub fn blocks(&self) -> Vec<(u32, u32)> {
        let mut out = Vec::with_capacity(self.ranks.len());
        let mut lo = 1;
        for &r in &self.ranks {
            out.push((lo, r));
            lo = r + 1;
        }
        out
    }

    /// 0-based block index of the variable `i` (1-based).
    pub fn block_of(&self, i: u32) -> usize {
        self.ranks.iter().position(|&r| i <= r).expect("variable beyond ambient")
    }

    /// Positions at which an `r`-permutation may have a descent.
    pub fn allowed_descents(&self) -> &[u32] {
        &self.ranks[..self.ranks.len() - 1]
    }

    /// Complex dimension of the flag variety `F(r)`.
    pub fn dim(&self) -> u32 {
        let blocks = self.blocks();
        let mut d = 0;
        for a in 0..blocks.len() {
            for b in a + 1..blocks.len() {
                d += (blocks[a].1 - blocks[a].0 + 1) * (blocks[b].1 - blocks[b].0 + 1);
            }
        }
        d
    }

    /// Pairs `(i, j)`, `i < j`, lying in different blocks.
    pub fn cross_pairs(&self) -> Vec<(u32, u32)> {
        let n = self.n();
        let mut out = Vec::new();
        for i in 1..=n {
            for j in i + 1..=n {
                if self.block_of(i) != self.block_of(j) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    pub fn parse(s: &str) -> Result<Self> {
        let ranks: Vec<u32> = s
            .split(',')
            .map(|t| t.trim().parse::<u32>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| Error::InvalidFlagType(format!("cannot parse {s:?}")))?;
        Self::new(ranks)
    }

    /// The longest `r`-permutation in `S_n`: earlier blocks take larger
    /// values, ascending inside each block.
    pub fn longest_r_permutation(&self) -> Permutation {
        let n = self.n();
        let mut window = Vec::with_capacity(n as usize);
        let mut hi = n;
        for (lo, r) in self.blocks() {
            let size = r - lo + 1;
            window.extend(hi - size + 1..=hi);
            hi -= size;
        }
        let mut p = Permutation { window };
        p.trim();
        p
    }
}

impl fmt::Display for FlagType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.ranks.iter().map(|v| v.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// Whether every descent of `w` sits at an allowed position of `r` (the
/// strict r-permutation condition).
pub fn is_r_permutation(w: &Permutation, r: &FlagType) -> bool {
    let allowed = r.allowed_descents();
    w.descents().iter().all(|&d| allowed.contains(&(d as u32)))
}

/// Whether the Schubert polynomial of `w` is symmetric in every variable
/// block of `r`: no descent at an internal position `< n`.  A descent at
/// position `n` itself is allowed; such `w` still index tilde classes.
pub fn is_tilde_eligible(w: &Permutation, r: &FlagType) -> bool {
    let n = r.n();
    let allowed = r.allowed_descents();
    w.descents()
        .iter()
        .all(|&d| d as u32 >= n || allowed.contains(&(d as u32)))
}

/// All of `S_n` in lexicographic window order.
pub fn symmetric_group(n: u32) -> Vec<Permutation> {
    let mut out = Vec::new();
    let mut window: Vec<u32> = (1..=n).collect();
    loop {
        out.push(Permutation::from_window(window.clone()).unwrap());
        // next lexicographic rearrangement
        let m = window.len();
        let mut i = m.wrapping_sub(1);
        while i > 0 && window[i - 1] >= window[i] {
            i -= 1;
        }
        if i == 0 {
            break;
        }
        let mut j = m - 1;
        while window[j] <= window[i - 1] {
            j -= 1;
        }
        window.swap(i - 1, j);
        window[i..].reverse();
    }
    out
}

/// Members of `S^(n)` of length exactly `d`, by Lehmer-code enumeration.
pub fn stable_permutations_of_length(n: u32, d: u32) -> Vec<Permutation> {
    let mut out = Vec::new();
    let mut code = vec![0u32; n as usize];
    fn rec(code: &mut Vec<u32>, slot: usize, rem: u32, out: &mut Vec<Permutation>) {
        if slot + 1 == code.len() {
            code[slot] = rem;
            out.push(Permutation::from_code(code));
            return;
        }
        for c in 0..=rem {
            code[slot] = c;
            rec(code, slot + 1, rem - c, out);
        }
        code[slot] = 0;
    }
    if n == 0 {
        if d == 0 {
            out.push(Permutation::identity());
        }
        return out;
    }
    rec(&mut code, 0, d, &mut out);
    out.sort();
    out.dedup();
    out
}

/// The partitioned index sets `S_n`, the members of `S^(n)` of
/// length at most the cap, and `T_n = S^(n) \ S_n` up to the cap.  With a
/// flag type, each list is filtered to r-permutations.
pub struct IndexSets {
    pub s_n: Vec<Permutation>,
    pub s_upper: Vec<Permutation>,
    pub t_n: Vec<Permutation>,
}

pub fn enumerate_index_sets(n: u32, degree_cap: u32, r: Option<&FlagType>) -> Result<IndexSets> {
    if let Some(ft) = r {
        if ft.n() != n {
            return Err(Error::InvalidFlagType(format!(
                "flag type {ft} does not end at ambient dimension {n}"
            )));
        }
    }
    let keep = |w: &Permutation| r.map_or(true, |ft| is_r_permutation(w, ft));
    let s_n: Vec<Permutation> = symmetric_group(n).into_iter().filter(|w| keep(w)).collect();
    let mut s_upper = Vec::new();
    let mut t_n = Vec::new();
    for d in 0..=degree_cap {
        for w in stable_permutations_of_length(n, d) {
            if !keep(&w) {
                continue;
            }
            if !w.in_s_n(n) {
                t_n.push(w.clone());
            }
            s_upper.push(w);
        }
    }
    Ok(IndexSets { s_n, s_upper, t_n })
}

/// Transpositions of the arithmetic Monk formula for `S_{s_k} · S_w` in `S_n`:
/// the classical covers `(i, j)` with `i <= k < j <= n` and `l(wt) = l(w)+1`,
/// and the boundary transpositions `(i, n+1)` with `i <= k` and
/// `w(i) > w(j)` for every `j` with `i < j <= n`.
pub fn monk_indices(
    w: &Permutation,
    k: u32,
    n: u32,
) -> Result<(Vec<(u32, u32)>, Vec<(u32, u32)>)> {
    if k == 0 || k >= n {
        return Err(Error::IndexRange(format!("k = {k} outside [1, {}]", n - 1)));
    }
    if !w.in_s_n(n) {
        return Err(Error::InvalidPermutation(format!("{w} is not in S_{n}")));
    }
    let base = w.length();
    let mut classical = Vec::new();
    for i in 1..=k {
        for j in k + 1..=n {
            if w.times_transposition(i, j).length() == base + 1 {
                classical.push((i, j));
            }
        }
    }
    let mut boundary = Vec::new();
    for i in 1..=k {
        if (i + 1..=n).all(|j| w.value(i as usize) > w.value(j as usize)) {
            boundary.push((i, n + 1));
        }
    }
    Ok((classical, boundary))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(vals: &[u32]) -> Permutation {
        Permutation::from_window(vals.to_vec()).unwrap()
    }

    /// Independent inversion count, used as the oracle for `length`.
    fn brute_inversions(w: &[u32]) -> usize {
        let mut c = 0;
        for i in 0..w.len() {
            for j in i + 1..w.len() {
                if w[i] > w[j] {
                    c += 1;
                }
            }
        }
        c
    }

    #[test]
    fn lengths() {
        assert_eq!(Permutation::identity().length(), 0);
        assert_eq!(p(&[3, 2, 1]).length(), 3);
        assert_eq!(p(&[3, 1, 2]).length(), brute_inversions(&[3, 1, 2]));
        assert_eq!(p(&[3, 1, 2]).length(), 2);
    }

    #[test]
    fn longest_elements() {
        assert_eq!(Permutation::longest_element(1), Permutation::identity());
        assert_eq!(Permutation::longest_element(3), p(&[3, 2, 1]));
        let w = Permutation::longest_element(4);
        assert_eq!(w, p(&[4, 3, 2, 1]));
        assert_eq!(w.length(), 6);
    }

    #[test]
    fn trimming_and_embedding() {
        assert_eq!(p(&[2, 1, 3, 4]), p(&[2, 1]));
        assert_eq!(p(&[1, 2, 3]), Permutation::identity());
        assert_eq!(p(&[3, 1, 2]).to_string(), "3,1,2");
    }

    #[test]
    fn inverse_and_compose() {
        let w = p(&[3, 1, 2]);
        assert_eq!(w.compose(&w.inverse()), Permutation::identity());
        assert_eq!(w.inverse().compose(&w), Permutation::identity());
        let u = p(&[2, 1]);
        let v = p(&[1, 3, 2]);
        // (uv)(i) = u(v(i))
        assert_eq!(u.compose(&v), p(&[2, 3, 1]));
    }

    #[test]
    fn length_inverse_symmetry_exhaustive() {
        for n in 1..=5 {
            for w in symmetric_group(n) {
                assert_eq!(w.length(), w.inverse().length());
            }
        }
    }

    #[test]
    fn codes_and_dominance() {
        assert_eq!(p(&[3, 2, 1]).code(), vec![2, 1, 0]);
        assert!(p(&[3, 2, 1]).is_dominant());
        assert_eq!(p(&[2, 1]).code(), vec![1, 0]);
        assert!(p(&[2, 1, 3]).is_dominant());
        assert_eq!(p(&[1, 3, 2]).code(), vec![0, 1, 0]);
        assert!(!p(&[1, 3, 2]).is_dominant());
    }

    #[test]
    fn code_sums_to_length() {
        for n in 1..=5 {
            for w in symmetric_group(n) {
                assert_eq!(w.code().iter().sum::<u32>() as usize, w.length());
            }
        }
    }

    #[test]
    fn code_round_trip() {
        for n in 1..=4 {
            for w in symmetric_group(n) {
                assert_eq!(Permutation::from_code(&w.code()), w);
            }
        }
        // and into S^(n): code (2,0) sits beyond S_2
        assert_eq!(Permutation::from_code(&[2, 0]), p(&[3, 1, 2]));
    }

    #[test]
    fn reduced_words() {
        assert_eq!(p(&[2, 3, 1]).reduced_word(), vec![1, 2]);
        for n in 1..=5u32 {
            for w in symmetric_group(n) {
                let word = w.reduced_word();
                assert_eq!(word.len(), w.length());
                let mut acc = Permutation::identity();
                for &i in &word {
                    acc = acc.compose(&Permutation::s(i));
                }
                assert_eq!(acc, w);
            }
        }
    }

    #[test]
    fn index_sets_small() {
        let sets = enumerate_index_sets(2, 2, None).unwrap();
        assert_eq!(sets.s_n.len(), 2);
        assert!(sets.t_n.contains(&p(&[3, 1, 2])));
        assert_eq!(p(&[3, 1, 2]).length(), 2);

        let sets = enumerate_index_sets(1, 0, None).unwrap();
        assert_eq!(sets.s_n, vec![Permutation::identity()]);
        assert!(sets.t_n.is_empty());

        let r = FlagType::new(vec![1, 3]).unwrap();
        let sets = enumerate_index_sets(3, 0, Some(&r)).unwrap();
        let expect = vec![Permutation::identity(), p(&[2, 1, 3]), p(&[3, 1, 2])];
        let mut got = sets.s_n.clone();
        got.sort();
        let mut want = expect.clone();
        want.sort();
        assert_eq!(got, want);
    }

    #[test]
    fn index_set_partition_no_duplicates() {
        for n in 1..=4u32 {
            let cap = 4;
            let sets = enumerate_index_sets(n, cap, None).unwrap();
            let from_sn: Vec<_> =
                sets.s_n.iter().filter(|w| w.length() <= cap as usize).cloned().collect();
            let mut union: Vec<_> = from_sn.iter().chain(sets.t_n.iter()).cloned().collect();
            let total = union.len();
            union.sort();
            union.dedup();
            assert_eq!(union.len(), total, "duplicate in the partition at n={n}");
            let mut upper = sets.s_upper.clone();
            upper.sort();
            assert_eq!(union, upper);
        }
    }

    #[test]
    fn monk_examples() {
        // w = s_1 in S_2: no classical cover, one boundary transposition
        let (c, b) = monk_indices(&p(&[2, 1]), 1, 2).unwrap();
        assert!(c.is_empty());
        assert_eq!(b, vec![(1, 3)]);

        // w = s_1 in S_3: classical (1,3), no boundary
        let (c, b) = monk_indices(&p(&[2, 1, 3]), 1, 3).unwrap();
        assert_eq!(c, vec![(1, 3)]);
        assert_eq!(p(&[2, 1]).times_transposition(1, 3), p(&[3, 1, 2]));
        assert!(b.is_empty());

        // w = id in S_3
        let (c, b) = monk_indices(&Permutation::identity(), 1, 3).unwrap();
        assert_eq!(c, vec![(1, 2)]);
        assert!(b.is_empty());

        assert!(monk_indices(&p(&[2, 1]), 2, 2).is_err());
    }

    #[test]
    fn monk_classical_raises_length_by_one() {
        for n in 2..=4u32 {
            for w in symmetric_group(n) {
                for k in 1..n {
                    let (c, b) = monk_indices(&w, k, n).unwrap();
                    for (i, j) in c {
                        assert_eq!(w.times_transposition(i, j).length(), w.length() + 1);
                    }
                    for (i, j) in b {
                        let wt = w.times_transposition(i, j);
                        assert_eq!(wt.length(), w.length() + 1);
                        assert!(!wt.in_s_n(n));
                    }
                }
            }
        }
    }

    #[test]
    fn flag_types() {
        let r = FlagType::new(vec![1, 2, 3]).unwrap();
        assert!(r.is_complete());
        assert_eq!(r.dim(), 3);
        assert_eq!(r.to_string(), "1,2,3");
        let r = FlagType::new(vec![2, 3]).unwrap();
        assert_eq!(r.dim(), 2);
        assert_eq!(r.blocks(), vec![(1, 2), (3, 3)]);
        assert_eq!(r.longest_r_permutation(), p(&[2, 3, 1]));
        assert_eq!(FlagType::new(vec![1, 3]).unwrap().longest_r_permutation(), p(&[3, 1, 2]));
        assert_eq!(FlagType::complete(3).longest_r_permutation(), p(&[3, 2, 1]));
        assert!(FlagType::new(vec![3, 2]).is_err());
        assert!(FlagType::new(vec![3]).is_err());
    }

    #[test]
    fn r_permutation_filters() {
        let r = FlagType::new(vec![2, 3]).unwrap();
        assert!(is_r_permutation(&p(&[1, 3, 2]), &r));
        assert!(!is_r_permutation(&p(&[2, 1, 3]), &r));
        // descent at n is tolerated for tilde eligibility only
        let w = p(&[1, 2, 4, 3]);
        assert!(!is_r_permutation(&w, &FlagType::complete(3)));
        assert!(is_tilde_eligible(&w, &FlagType::complete(3)));
    }
}

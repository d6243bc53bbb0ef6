//! Sparse multivariate polynomials over exact rationals, divided difference
//! operators, Schubert and dual Schubert polynomials, the scalar product
//! `<f,g> = ∂_{w0}(fg)`, Schubert-basis expansion and ideal decomposition.
//!
//! Exponent vectors always have exactly `nvars` slots; stored coefficients
//! are never zero.  All arithmetic is exact.

use crate::perm::{symmetric_group, Permutation};
use crate::{rat, Error, Rat, Result};
use num_traits::{One, Signed, Zero};
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Mutex, OnceLock};

/// Exact sparse polynomial in variables `X_1 ... X_nvars`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Vec<u16>, Rat>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Poly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: Rat) -> Self {
        let mut p = Poly::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(vec![0; nvars], c);
        }
        p
    }

    pub fn one(nvars: usize) -> Self {
        Poly::constant(nvars, Rat::one())
    }

    /// The variable `X_i` (1-based).
    pub fn var(i: usize, nvars: usize) -> Self {
        assert!(i >= 1 && i <= nvars, "variable index out of range");
        let mut exps = vec![0u16; nvars];
        exps[i - 1] = 1;
        Poly::monomial(exps, Rat::one())
    }

    pub fn monomial(exps: Vec<u16>, c: Rat) -> Self {
        let nvars = exps.len();
        let mut p = Poly::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(exps, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u16], &Rat)> {
        self.terms.iter().map(|(e, c)| (e.as_slice(), c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Pad with extra variables (no-op if already at least `m` wide).
    pub fn padded(&self, m: usize) -> Self {
        if m <= self.nvars {
            return self.clone();
        }
        let mut terms = BTreeMap::new();
        for (e, c) in &self.terms {
            let mut e2 = e.clone();
            e2.resize(m, 0);
            terms.insert(e2, c.clone());
        }
        Poly { nvars: m, terms }
    }

    /// Drop trailing unused variable slots.
    pub fn trimmed(&self) -> Self {
        let used = self
            .terms
            .keys()
            .map(|e| e.iter().rposition(|&x| x > 0).map_or(0, |p| p + 1))
            .max()
            .unwrap_or(0);
        if used == self.nvars {
            return self.clone();
        }
        let mut terms = BTreeMap::new();
        for (e, c) in &self.terms {
            terms.insert(e[..used].to_vec(), c.clone());
        }
        Poly { nvars: used, terms }
    }

    fn insert(&mut self, exps: Vec<u16>, c: Rat) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exps) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get() + &c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let m = self.nvars.max(other.nvars);
        let mut out = self.padded(m);
        for (e, c) in other.padded(m).terms {
            out.insert(e, c);
        }
        out
    }

    pub fn neg(&self) -> Self {
        let mut out = Poly::zero(self.nvars);
        for (e, c) in &self.terms {
            out.terms.insert(e.clone(), -c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Poly::zero(self.nvars);
        }
        let mut out = Poly::zero(self.nvars);
        for (e, k) in &self.terms {
            out.terms.insert(e.clone(), k * c);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let m = self.nvars.max(other.nvars);
        let a = self.padded(m);
        let b = other.padded(m);
        let mut out = Poly::zero(m);
        for (ea, ca) in &a.terms {
            for (eb, cb) in &b.terms {
                let e: Vec<u16> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                out.insert(e, ca * cb);
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = Poly::one(self.nvars);
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    pub fn constant_term(&self) -> Rat {
        self.terms
            .get(&vec![0u16; self.nvars])
            .cloned()
            .unwrap_or_else(Rat::zero)
    }

    pub fn coefficient(&self, exps: &[u16]) -> Rat {
        let mut key = exps.to_vec();
        key.resize(self.nvars.max(exps.len()), 0);
        if key.len() > self.nvars {
            if key[self.nvars..].iter().any(|&x| x > 0) {
                return Rat::zero();
            }
            key.truncate(self.nvars);
        }
        self.terms.get(&key).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|e| e.iter().map(|&x| x as u32).sum())
            .max()
            .unwrap_or(0)
    }

    /// Split into homogeneous components, keyed by total degree.
    pub fn homogeneous_components(&self) -> BTreeMap<u32, Poly> {
        let mut out: BTreeMap<u32, Poly> = BTreeMap::new();
        for (e, c) in &self.terms {
            let d: u32 = e.iter().map(|&x| x as u32).sum();
            out.entry(d)
                .or_insert_with(|| Poly::zero(self.nvars))
                .terms
                .insert(e.clone(), c.clone());
        }
        out
    }

    pub fn is_homogeneous(&self) -> bool {
        self.homogeneous_components().len() <= 1
    }

    /// Swap the variables `X_i` and `X_{i+1}`.
    pub fn swap_vars(&self, i: usize) -> Self {
        let f = self.padded(i + 1);
        let mut out = Poly::zero(f.nvars);
        for (e, c) in &f.terms {
            let mut e2 = e.clone();
            e2.swap(i - 1, i);
            out.terms.insert(e2, c.clone());
        }
        out
    }

    /// Substitute `X_i -> X_{w(i)}`.
    pub fn permute_vars(&self, w: &Permutation) -> Self {
        let m = self.nvars.max(w.window_size());
        let f = self.padded(m);
        let mut out = Poly::zero(m);
        for (e, c) in &f.terms {
            let mut e2 = vec![0u16; m];
            for (idx, &x) in e.iter().enumerate() {
                e2[w.value(idx + 1) as usize - 1] = x;
            }
            out.insert(e2, c.clone());
        }
        out
    }

    /// Substitute `X_i -> -X_i`.
    pub fn negate_vars(&self) -> Self {
        let mut out = Poly::zero(self.nvars);
        for (e, c) in &self.terms {
            let d: u32 = e.iter().map(|&x| x as u32).sum();
            let c2 = if d % 2 == 0 { c.clone() } else { -c.clone() };
            out.terms.insert(e.clone(), c2);
        }
        out
    }

    /// Whether `f` is symmetric under every adjacent swap of `X_1..X_m`.
    pub fn is_symmetric(&self) -> bool {
        (1..self.nvars).all(|i| self.swap_vars(i) == *self)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        // graded order, highest degree first, then lexicographically largest first
        let mut keys: Vec<&Vec<u16>> = self.terms.keys().collect();
        keys.sort_by(|a, b| {
            let da: u32 = a.iter().map(|&x| x as u32).sum();
            let db: u32 = b.iter().map(|&x| x as u32).sum();
            db.cmp(&da).then_with(|| b.cmp(a))
        });
        let mut first = true;
        for e in keys {
            let c = &self.terms[e];
            let neg = c.is_negative();
            let abs = c.abs();
            let mut mono = String::new();
            for (i, &x) in e.iter().enumerate() {
                if x == 0 {
                    continue;
                }
                if !mono.is_empty() {
                    mono.push('*');
                }
                mono.push_str(&format!("X{}", i + 1));
                if x > 1 {
                    mono.push_str(&format!("^{x}"));
                }
            }
            let coeff = if mono.is_empty() {
                format!("{abs}")
            } else if abs.is_one() {
                mono.clone()
            } else {
                format!("{abs}*{mono}")
            };
            if first {
                if neg {
                    write!(f, "-{coeff}")?;
                } else {
                    write!(f, "{coeff}")?;
                }
                first = false;
            } else if neg {
                write!(f, " - {coeff}")?;
            } else {
                write!(f, " + {coeff}")?;
            }
        }
        Ok(())
    }
}

/// Which family `symmetric_generator` produces.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SymmetricKind {
    Elementary,
    PowerSum,
}

/// `e_k(X_1..X_m)` or `p_k(X_1..X_m)`.  `e_k = 0` for `k > m`.
pub fn symmetric_generator(kind: SymmetricKind, k: u32, m: usize) -> Poly {
    assert!(k >= 1 && m >= 1);
    match kind {
        SymmetricKind::PowerSum => {
            let mut out = Poly::zero(m);
            for i in 0..m {
                let mut e = vec![0u16; m];
                e[i] = k as u16;
                out.terms.insert(e, Rat::one());
            }
            out
        }
        SymmetricKind::Elementary => {
            let mut out = Poly::zero(m);
            if k as usize > m {
                return out;
            }
            let mut idx: Vec<usize> = (0..k as usize).collect();
            loop {
                let mut e = vec![0u16; m];
                for &i in &idx {
                    e[i] = 1;
                }
                out.terms.insert(e, Rat::one());
                // next k-subset of 0..m
                let k = idx.len();
                let mut pos = k;
                while pos > 0 {
                    pos -= 1;
                    if idx[pos] < m - (k - pos) {
                        idx[pos] += 1;
                        for t in pos + 1..k {
                            idx[t] = idx[t - 1] + 1;
                        }
                        break;
                    }
                    if pos == 0 {
                        return out;
                    }
                }
            }
        }
    }
}

/// Divided difference `∂_i f = (f - s_i f)/(X_i - X_{i+1})`, computed
/// term-by-term with the exact telescoping formula (never by division).
pub fn divided_difference(i: usize, f: &Poly) -> Poly {
    assert!(i >= 1, "divided difference index is 1-based");
    let f = f.padded(i + 1);
    let mut out = Poly::zero(f.nvars);
    for (e, c) in &f.terms {
        let p = e[i - 1];
        let q = e[i];
        if p == q {
            continue;
        }
        let (lo, hi, coeff) = if p > q { (q, p, c.clone()) } else { (p, q, -c.clone()) };
        // (X^p Y^q - X^q Y^p)/(X - Y) = sum_{t=lo}^{hi-1} X^t Y^{p+q-1-t}
        for t in lo..hi {
            let mut e2 = e.clone();
            e2[i - 1] = t;
            e2[i] = p + q - 1 - t;
            out.insert(e2, coeff.clone());
        }
    }
    out
}

/// `∂_w` along the leftmost-descent reduced word for `w`.  Independence of
/// the chosen reduced word is covered by the property suite.
pub fn divided_difference_word(w: &Permutation, f: &Poly) -> Poly {
    let word = w.reduced_word();
    let mut g = f.clone();
    for &i in word.iter().rev() {
        if g.is_zero() {
            break;
        }
        g = divided_difference(i as usize, &g);
    }
    g
}

fn schubert_cache() -> &'static Mutex<HashMap<Permutation, Poly>> {
    static CACHE: OnceLock<Mutex<HashMap<Permutation, Poly>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// The Schubert polynomial `S_w = ∂_{w^{-1} w_0}(X_1^{m-1} X_2^{m-2} ··· X_{m-1})`
/// computed inside the window of `w`; stable under the `S_n ⊂ S_{n+1}`
/// embedding.  Dominant permutations short-circuit to the monomial `X^code`.
pub fn schubert(w: &Permutation) -> Poly {
    if let Some(p) = schubert_cache().lock().unwrap().get(w) {
        return p.clone();
    }
    let result = if w.is_identity() {
        Poly::one(1)
    } else if w.is_dominant() {
        let code = w.code();
        let exps: Vec<u16> = code.iter().map(|&c| c as u16).collect();
        Poly::monomial(exps, Rat::one()).trimmed()
    } else {
        let m = w.window_size() as u32;
        let w0 = Permutation::longest_element(m);
        let v = w.inverse().compose(&w0);
        debug_assert_eq!(v.length(), w0.length() - w.length());
        let staircase: Vec<u16> = (0..m).map(|i| (m - 1 - i) as u16).collect();
        let f = Poly::monomial(staircase, Rat::one());
        divided_difference_word(&v, &f).trimmed()
    };
    schubert_cache()
        .lock()
        .unwrap()
        .insert(w.clone(), result.clone());
    result
}

/// The dual basis element `S^w(X) = w_0 S_{w w_0}(-X)` for `w` in `S_n`.
pub fn dual_schubert(w: &Permutation, n: u32) -> Result<Poly> {
    if !w.in_s_n(n) {
        return Err(Error::InvalidPermutation(format!("{w} is not in S_{n}")));
    }
    let w0 = Permutation::longest_element(n);
    let f = schubert(&w.compose(&w0));
    Ok(f.negate_vars().permute_vars(&w0).padded(n as usize))
}

/// `<f,g> = ∂_{w_0}(fg)` over `S_n`; lands in the symmetric polynomials.
pub fn scalar_product(f: &Poly, g: &Poly, n: u32) -> Poly {
    let w0 = Permutation::longest_element(n);
    divided_difference_word(&w0, &f.padded(n as usize).mul(&g.padded(n as usize)))
}

/// Expansion of `f ∈ P_n` over the free basis `{S_w : w ∈ S^(n)}`.  The
/// coefficient of `S_w` in the degree-`l(w)` component is the constant term
/// of `∂_w f`; the remainder is verified to vanish.
pub fn schubert_expand(f: &Poly, n: u32) -> BTreeMap<Permutation, Rat> {
    assert!(
        f.trimmed().nvars() <= n as usize,
        "engine fault: polynomial has more than n variables"
    );
    let mut out = BTreeMap::new();
    for (d, mut comp) in f.homogeneous_components() {
        if d == 0 {
            let c = comp.constant_term();
            if !c.is_zero() {
                out.insert(Permutation::identity(), c);
            }
            continue;
        }
        for w in crate::perm::stable_permutations_of_length(n, d) {
            if comp.is_zero() {
                break;
            }
            let c = divided_difference_word(&w, &comp).constant_term();
            if !c.is_zero() {
                comp = comp.sub(&schubert(&w).padded(comp.nvars()).scale(&c));
                out.insert(w, c);
            }
        }
        assert!(
            comp.is_zero(),
            "engine fault: Schubert expansion left a nonzero remainder {comp}"
        );
    }
    out
}

/// Reassemble an expansion into a polynomial.
pub fn schubert_assemble(coeffs: &BTreeMap<Permutation, Rat>, nvars: usize) -> Poly {
    let mut out = Poly::zero(nvars);
    for (w, c) in coeffs {
        out = out.add(&schubert(w).padded(nvars).scale(c));
    }
    out
}

/// Decomposition of `h ∈ I_n` as `h = Σ_{w ∈ S_n} <h, S^w> S_w` together
/// with the derived split `h = Σ e_i f_i`.
pub struct IdealDecomposition {
    /// `w -> <h, S^w>`, each value a symmetric polynomial with zero constant term.
    pub lambda_coeffs: BTreeMap<Permutation, Poly>,
    /// The split `h = Σ e_i f_i`; pairs `(i, f_i)` with `f_i ∈ P_n`.
    pub e_split: Vec<(u32, Poly)>,
}

pub fn ideal_decompose(h: &Poly, n: u32) -> Result<IdealDecomposition> {
    let expansion = schubert_expand(h, n);
    if let Some((w, _)) = expansion.iter().find(|(w, _)| w.in_s_n(n)) {
        return Err(Error::NotInIdeal(w.to_string()));
    }
    let mut lambda_coeffs = BTreeMap::new();
    let mut e_split: BTreeMap<u32, Poly> = BTreeMap::new();
    for v in symmetric_group(n) {
        let g = scalar_product(h, &dual_schubert(&v, n)?, n);
        if g.is_zero() {
            continue;
        }
        assert!(
            g.constant_term().is_zero(),
            "engine fault: Lambda-coefficient of an ideal element has a constant term"
        );
        let in_e = decompose_elementary(&g.padded(n as usize))?;
        let sv = schubert(&v).padded(n as usize);
        for (mu, c) in in_e.terms() {
            let i = mu.iter().position(|&x| x > 0).expect("constant slipped through") as u32 + 1;
            let mut rest = mu.to_vec();
            rest[i as usize - 1] -= 1;
            let tail = expand_elementary(&Poly::monomial(rest, c.clone()), n as usize);
            let entry = e_split.entry(i).or_insert_with(|| Poly::zero(n as usize));
            *entry = entry.add(&tail.mul(&sv));
        }
        lambda_coeffs.insert(v, g);
    }
    Ok(IdealDecomposition {
        lambda_coeffs,
        e_split: e_split.into_iter().filter(|(_, f)| !f.is_zero()).collect(),
    })
}

/// Structure constants `c_uv^w` of `S_u · S_v = Σ c_uv^w S_w`, restricted to
/// `l(w) <= length_cap` (all of them live at `l(w) = l(u) + l(v)`).
pub fn structure_constants(
    u: &Permutation,
    v: &Permutation,
    length_cap: u32,
) -> BTreeMap<Permutation, Rat> {
    let prod = schubert(u).mul(&schubert(v));
    if prod.is_zero() {
        return BTreeMap::new();
    }
    let n = prod.trimmed().nvars().max(1) as u32;
    schubert_expand(&prod, n)
        .into_iter()
        .filter(|(w, _)| w.length() as u32 <= length_cap)
        .collect()
}

/// Carrier ring for Newton's identity: any commutative Q-algebra shape.
pub trait NewtonCarrier: Clone {
    fn nc_zero(&self) -> Self;
    fn nc_one(&self) -> Self;
    fn nc_add(&self, other: &Self) -> Self;
    fn nc_mul(&self, other: &Self) -> Self;
    fn nc_scale(&self, c: &Rat) -> Self;
}

impl NewtonCarrier for Poly {
    fn nc_zero(&self) -> Self {
        Poly::zero(self.nvars)
    }
    fn nc_one(&self) -> Self {
        Poly::one(self.nvars)
    }
    fn nc_add(&self, other: &Self) -> Self {
        self.add(other)
    }
    fn nc_mul(&self, other: &Self) -> Self {
        self.mul(other)
    }
    fn nc_scale(&self, c: &Rat) -> Self {
        self.scale(c)
    }
}

/// Solve `p_i - c_1 p_{i-1} + ... + (-1)^i i c_i = 0` for `c_1..c_k` given
/// `p_1..p_k`, dividing exactly by `i` at each step.
pub fn newton_chern<T: NewtonCarrier>(power_sums: &[T]) -> Vec<T> {
    let mut cs: Vec<T> = Vec::with_capacity(power_sums.len());
    for i in 1..=power_sums.len() {
        // i·c_i = Σ_{j=1}^{i} (-1)^{j-1} c_{i-j} p_j, with c_0 = 1
        let mut acc = power_sums[0].nc_zero();
        for j in 1..=i {
            let cf = if j == i { power_sums[0].nc_one() } else { cs[i - j - 1].clone() };
            let term = cf.nc_mul(&power_sums[j - 1]);
            let sign = if (j - 1) % 2 == 0 { rat(1) } else { rat(-1) };
            acc = acc.nc_add(&term.nc_scale(&sign));
        }
        cs.push(acc.nc_scale(&ratio_inv(i as i64)));
    }
    cs
}

fn ratio_inv(i: i64) -> Rat {
    crate::ratio(1, i)
}

/// Express a symmetric polynomial in the elementary generators: the result
/// lives in variables `e_1 ... e_m`.  Fails if `f` is not symmetric.
pub fn decompose_elementary(f: &Poly) -> Result<Poly> {
    let m = f.nvars();
    let mut g = f.clone();
    let mut out = Poly::zero(m);
    while !g.is_zero() {
        let (lead, c) = g
            .terms
            .iter()
            .max_by(|a, b| a.0.cmp(b.0))
            .map(|(e, c)| (e.clone(), c.clone()))
            .unwrap();
        if lead.windows(2).any(|p| p[0] < p[1]) {
            return Err(Error::NotSymmetric(format!(
                "leading exponent {lead:?} is not weakly decreasing"
            )));
        }
        let mut mu = vec![0u16; m];
        for j in 0..m {
            let next = if j + 1 < m { lead[j + 1] } else { 0 };
            mu[j] = lead[j] - next;
        }
        out.insert(mu.clone(), c.clone());
        let mut prod = Poly::one(m);
        for (j, &e) in mu.iter().enumerate() {
            if e > 0 {
                prod = prod.mul(
                    &symmetric_generator(SymmetricKind::Elementary, j as u32 + 1, m).pow(e as u32),
                );
            }
        }
        g = g.sub(&prod.scale(&c));
    }
    Ok(out)
}

/// Substitute `e_j -> e_j(X_1..X_m)` into a polynomial in the `e`-variables.
pub fn expand_elementary(f_in_e: &Poly, m: usize) -> Poly {
    let mut out = Poly::zero(m);
    for (mu, c) in f_in_e.terms() {
        let mut prod = Poly::one(m);
        for (j, &e) in mu.iter().enumerate() {
            if e > 0 {
                prod = prod.mul(
                    &symmetric_generator(SymmetricKind::Elementary, j as u32 + 1, m).pow(e as u32),
                );
            }
        }
        out = out.add(&prod.scale(c));
    }
    out
}

/// `e_k` written in the power sums `p_1..p_k` via Newton's identity.
fn elementary_in_power_sums(k: usize) -> Poly {
    // variables of the output are p_1 ... p_k
    let ps: Vec<Poly> = (1..=k).map(|j| Poly::var(j, k)).collect();
    newton_chern(&ps).pop().unwrap()
}

/// Express a symmetric polynomial in the power-sum basis: the output lives
/// in variables `p_1 ... p_d` where `d` is the total degree, and each
/// monomial encodes a partition (exponent of slot `i` = multiplicity of the
/// part `i`).
pub fn to_power_sums(f: &Poly) -> Result<Poly> {
    let in_e = decompose_elementary(f)?;
    let d = f.total_degree().max(1) as usize;
    let mut out = Poly::zero(d);
    for (mu, c) in in_e.terms() {
        let mut prod = Poly::one(d);
        for (j, &e) in mu.iter().enumerate() {
            if e > 0 {
                let ejp = elementary_in_power_sums(j + 1).padded(d);
                prod = prod.mul(&ejp.pow(e as u32));
            }
        }
        out = out.add(&prod.scale(c));
    }
    Ok(out)
}

/// Decompose a polynomial symmetric in each variable block into block
/// elementary symmetric monomials.  Blocks are inclusive 1-based ranges
/// covering `1..=n`; the output exponent vectors concatenate the
/// `e_1..e_{d_b}` exponents of each block in order.
pub fn block_e_decompose(f: &Poly, blocks: &[(u32, u32)]) -> Result<Vec<(Vec<u16>, Rat)>> {
    let n = blocks.last().map(|&(_, hi)| hi as usize).unwrap_or(0);
    let f = f.padded(n);
    fn rec(
        f: &Poly,
        blocks: &[(u32, u32)],
        idx: usize,
        prefix: &mut Vec<u16>,
        out: &mut Vec<(Vec<u16>, Rat)>,
    ) -> Result<()> {
        if f.is_zero() {
            return Ok(());
        }
        if idx == blocks.len() {
            let c = f.constant_term();
            if f.num_terms() != 1 || c.is_zero() {
                return Err(Error::NotSymmetric(
                    "nonconstant remainder after all blocks".into(),
                ));
            }
            out.push((prefix.clone(), c));
            return Ok(());
        }
        let (lo, hi) = blocks[idx];
        let d = (hi - lo + 1) as usize;
        let span = (lo as usize - 1)..(hi as usize);
        let mut g = f.clone();
        while !g.is_zero() {
            // leading exponent pattern inside this block
            let lead: Vec<u16> = g
                .terms
                .keys()
                .map(|e| e[span.clone()].to_vec())
                .max()
                .unwrap();
            if lead.windows(2).any(|p| p[0] < p[1]) {
                return Err(Error::NotSymmetric(format!(
                    "block {:?}: leading exponent {lead:?} is not weakly decreasing",
                    blocks[idx]
                )));
            }
            // coefficient polynomial: all terms matching the block pattern, block slots cleared
            let mut coeff = Poly::zero(g.nvars());
            for (e, c) in g.terms.iter() {
                if e[span.clone()] == lead[..] {
                    let mut e2 = e.clone();
                    for s in span.clone() {
                        e2[s] = 0;
                    }
                    coeff.insert(e2, c.clone());
                }
            }
            let mut mu = vec![0u16; d];
            for j in 0..d {
                let next = if j + 1 < d { lead[j + 1] } else { 0 };
                mu[j] = lead[j] - next;
            }
            // subtract coeff · prod_j e_j(block)^{mu_j}
            let mut prod = Poly::one(g.nvars());
            for (j, &e) in mu.iter().enumerate() {
                if e > 0 {
                    prod = prod.mul(&block_elementary(j as u32 + 1, lo, hi, g.nvars()).pow(e as u32));
                }
            }
            g = g.sub(&coeff.mul(&prod));
            let plen = prefix.len();
            prefix.extend_from_slice(&mu);
            rec(&coeff, blocks, idx + 1, prefix, out)?;
            prefix.truncate(plen);
        }
        Ok(())
    }
    let mut out = Vec::new();
    let mut prefix = Vec::new();
    rec(&f, blocks, 0, &mut prefix, &mut out)?;
    Ok(out)
}

/// `e_k` of the block variables `X_lo ... X_hi`, as a polynomial in `nvars`.
pub fn block_elementary(k: u32, lo: u32, hi: u32, nvars: usize) -> Poly {
    let m = (hi - lo + 1) as usize;
    let small = symmetric_generator(SymmetricKind::Elementary, k, m);
    let mut out = Poly::zero(nvars);
    for (e, c) in small.terms() {
        let mut e2 = vec![0u16; nvars];
        for (j, &x) in e.iter().enumerate() {
            e2[lo as usize - 1 + j] = x;
        }
        out.insert(e2, c.clone());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::FlagType;
    use crate::{rat, ratio};

    fn p(vals: &[u32]) -> Permutation {
        Permutation::from_window(vals.to_vec()).unwrap()
    }

    fn x(i: usize, m: usize) -> Poly {
        Poly::var(i, m)
    }

    #[test]
    fn symmetric_generators() {
        let e1 = symmetric_generator(SymmetricKind::Elementary, 1, 3);
        assert_eq!(e1, x(1, 3).add(&x(2, 3)).add(&x(3, 3)));
        assert!(symmetric_generator(SymmetricKind::Elementary, 4, 3).is_zero());
        let p2 = symmetric_generator(SymmetricKind::PowerSum, 2, 2);
        assert_eq!(p2, x(1, 2).pow(2).add(&x(2, 2).pow(2)));
    }

    #[test]
    fn divided_difference_basics() {
        assert_eq!(divided_difference(1, &x(1, 2)), Poly::one(2));
        assert!(divided_difference(1, &x(1, 2).mul(&x(2, 2))).is_zero());
        assert_eq!(divided_difference(1, &x(1, 2).pow(2)), x(1, 2).add(&x(2, 2)));
    }

    #[test]
    fn divided_difference_exactness_round_trip() {
        // ∂_i f · (X_i - X_{i+1}) = f - s_i f on an assortment of inputs
        let f = x(1, 3).pow(3).mul(&x(2, 3)).add(&x(3, 3).pow(2).scale(&ratio(5, 3)));
        for i in 1..=2 {
            let lhs = divided_difference(i, &f).mul(&x(i, 3).sub(&x(i + 1, 3)));
            assert_eq!(lhs, f.sub(&f.swap_vars(i)));
        }
    }

    #[test]
    fn divided_difference_words() {
        let f = x(1, 2).pow(2).add(&x(2, 2));
        assert_eq!(divided_difference_word(&Permutation::identity(), &f), f);
        assert_eq!(
            divided_difference_word(&p(&[2, 1]), &x(1, 2).pow(2)),
            x(1, 2).add(&x(2, 2))
        );
        let g = x(1, 3).pow(2).mul(&x(2, 3));
        assert_eq!(divided_difference_word(&p(&[3, 2, 1]), &g), Poly::one(3));
    }

    #[test]
    fn nilpotence_and_braid_on_samples() {
        // ∂_i ∂_i = 0 and ∂_i ∂_{i+1} ∂_i = ∂_{i+1} ∂_i ∂_{i+1}
        let samples = [
            x(1, 4).pow(5),
            x(1, 4).pow(2).mul(&x(3, 4)).add(&x(2, 4).pow(4)),
            x(1, 4).mul(&x(2, 4)).mul(&x(3, 4)).mul(&x(4, 4)).scale(&ratio(7, 2)),
            x(2, 4).pow(3).mul(&x(4, 4).pow(3)),
        ];
        for f in &samples {
            for i in 1..=3 {
                assert!(divided_difference(i, &divided_difference(i, f)).is_zero());
            }
            for i in 1..=2 {
                let a = divided_difference(i, &divided_difference(i + 1, &divided_difference(i, f)));
                let b = divided_difference(i + 1, &divided_difference(i, &divided_difference(i + 1, f)));
                assert_eq!(a, b);
            }
        }
    }

    #[test]
    fn schubert_values() {
        assert_eq!(schubert(&Permutation::identity()), Poly::one(1));
        assert_eq!(schubert(&p(&[3, 2, 1])), x(1, 2).pow(2).mul(&x(2, 2)));
        assert_eq!(schubert(&p(&[1, 3, 2])), x(1, 2).add(&x(2, 2)));
        assert_eq!(schubert(&p(&[2, 1])), x(1, 1));
        // dominant shortcut agrees with the divided-difference route
        let w = p(&[4, 2, 1, 3]);
        assert!(w.is_dominant());
        let via_code = Poly::monomial(vec![3, 1, 0], Rat::one());
        assert_eq!(schubert(&w).padded(3), via_code);
        // stability under the embedding: same window, larger ambient
        assert_eq!(schubert(&p(&[2, 1, 3, 4])), schubert(&p(&[2, 1])));
    }

    #[test]
    fn grassmannian_schubert_is_complete_homogeneous() {
        // S_{[1,4,2,3]} = h_2(X_1, X_2)
        let s = schubert(&p(&[1, 4, 2, 3]));
        let h2 = x(1, 2).pow(2).add(&x(1, 2).mul(&x(2, 2))).add(&x(2, 2).pow(2));
        assert_eq!(s.padded(2), h2);
    }

    #[test]
    fn dual_schubert_values() {
        let w0 = p(&[2, 1]);
        assert_eq!(dual_schubert(&w0, 2).unwrap(), Poly::one(2));
        assert_eq!(dual_schubert(&Permutation::identity(), 2).unwrap(), x(2, 2).neg());
    }

    #[test]
    fn duality_exhaustive_s3() {
        // ∂_{w_0}(S_u · S^v) = δ_{uv} over all 36 pairs
        for u in symmetric_group(3) {
            for v in symmetric_group(3) {
                let prod = scalar_product(&schubert(&u), &dual_schubert(&v, 3).unwrap(), 3);
                let expect = if u == v { Poly::one(3) } else { Poly::zero(3) };
                assert_eq!(prod.trimmed(), expect.trimmed(), "u={u} v={v}");
            }
        }
    }

    #[test]
    fn scalar_product_examples() {
        assert_eq!(scalar_product(&schubert(&p(&[2, 1])), &Poly::one(2), 2), Poly::one(2));
        assert!(scalar_product(&Poly::one(2), &Poly::one(2), 2).is_zero());
        assert_eq!(scalar_product(&x(1, 2).pow(2), &Poly::one(2), 2), x(1, 2).add(&x(2, 2)));
    }

    #[test]
    fn expansion_examples() {
        let m = schubert_expand(&x(1, 2), 2);
        assert_eq!(m.len(), 1);
        assert_eq!(m[&p(&[2, 1])], rat(1));

        let m = schubert_expand(&x(1, 2).pow(2), 2);
        assert_eq!(m.len(), 1);
        assert_eq!(m[&p(&[3, 1, 2])], rat(1));

        // frozen independent computation: X_1 X_2 + X_2^2 = h_2 - X_1^2
        let f = x(1, 2).mul(&x(2, 2)).add(&x(2, 2).pow(2));
        let m = schubert_expand(&f, 2);
        assert_eq!(m.len(), 2);
        assert_eq!(m[&p(&[1, 4, 2, 3])], rat(1));
        assert_eq!(m[&p(&[3, 1, 2])], rat(-1));
        assert_eq!(schubert_assemble(&m, 2), f);
    }

    #[test]
    fn staircase_monomials_expand_in_s_n_with_integer_coefficients() {
        // every monomial X^a with a_i <= n-i stays inside S_n
        for n in 2..=4usize {
            let caps: Vec<u16> = (0..n).map(|i| (n - i - 1) as u16).collect();
            let mut e = vec![0u16; n];
            loop {
                let f = Poly::monomial(e.clone(), Rat::one());
                for (w, c) in schubert_expand(&f, n as u32) {
                    assert!(w.in_s_n(n as u32), "n={n}: support left S_n at {w}");
                    assert!(c.is_integer());
                }
                // mixed-radix increment
                let mut i = 0;
                loop {
                    if i == n {
                        break;
                    }
                    if e[i] < caps[i] {
                        e[i] += 1;
                        break;
                    }
                    e[i] = 0;
                    i += 1;
                }
                if i == n {
                    break;
                }
            }
        }
    }

    #[test]
    fn ideal_decompose_examples() {
        // <e_1, S^id> = e_1 over S_2
        let e1 = symmetric_generator(SymmetricKind::Elementary, 1, 2);
        let d = ideal_decompose(&e1, 2).unwrap();
        assert_eq!(d.lambda_coeffs.len(), 1);
        assert_eq!(d.lambda_coeffs[&Permutation::identity()], e1);

        // h = 0 yields the empty decomposition
        let d = ideal_decompose(&Poly::zero(3), 3).unwrap();
        assert!(d.lambda_coeffs.is_empty());
        assert!(d.e_split.is_empty());

        // membership is enforced
        assert!(ideal_decompose(&x(1, 2), 2).is_err());

        // X_1^4 in I_3: reassembly of both decompositions is exact, and the
        // split comes out as X_1^4 = e_1 X_1^3 - e_2 X_1^2 + e_3 X_1
        let f = x(1, 3).pow(4);
        let d = ideal_decompose(&f, 3).unwrap();
        let mut sum = Poly::zero(3);
        for (w, g) in &d.lambda_coeffs {
            sum = sum.add(&g.mul(&schubert(w).padded(3)));
        }
        assert_eq!(sum, f);
        let mut esum = Poly::zero(3);
        for (i, fi) in &d.e_split {
            esum = esum.add(&symmetric_generator(SymmetricKind::Elementary, *i, 3).mul(fi));
        }
        assert_eq!(esum, f);
        let expect = vec![
            (1, x(1, 3).pow(3)),
            (2, x(1, 3).pow(2).neg()),
            (3, x(1, 3)),
        ];
        assert_eq!(d.e_split, expect);
    }

    #[test]
    fn lemma_reassembly_on_t_n() {
        // S_w for w in T_n decomposes exactly over S_n with Lambda coefficients
        for n in 2..=3u32 {
            for d in 1..=6u32 {
                for w in crate::perm::stable_permutations_of_length(n, d) {
                    if w.in_s_n(n) {
                        continue;
                    }
                    let sw = schubert(&w).padded(n as usize);
                    let dec = ideal_decompose(&sw, n).unwrap();
                    let mut sum = Poly::zero(n as usize);
                    for (v, g) in &dec.lambda_coeffs {
                        sum = sum.add(&g.mul(&schubert(v).padded(n as usize)));
                    }
                    assert_eq!(sum, sw, "n={n} w={w}");
                }
            }
        }
    }

    #[test]
    fn structure_constant_examples() {
        let s1 = p(&[2, 1]);
        let c = structure_constants(&s1, &s1, 10);
        assert_eq!(c.len(), 1);
        assert_eq!(c[&p(&[3, 1, 2])], rat(1));

        let s2 = p(&[1, 3, 2]);
        let c = structure_constants(&s1, &s2, 10);
        assert_eq!(c.len(), 2);
        assert_eq!(c[&p(&[2, 3, 1])], rat(1));
        assert_eq!(c[&p(&[3, 1, 2])], rat(1));

        let v = p(&[3, 2, 1]);
        let c = structure_constants(&Permutation::identity(), &v, 10);
        assert_eq!(c.len(), 1);
        assert_eq!(c[&v], rat(1));
    }

    #[test]
    fn structure_constants_symmetric_nonnegative_graded_s4() {
        for u in symmetric_group(4) {
            for v in symmetric_group(4) {
                let cap = (u.length() + v.length()) as u32;
                let cuv = structure_constants(&u, &v, cap);
                let cvu = structure_constants(&v, &u, cap);
                assert_eq!(cuv, cvu);
                for (w, c) in &cuv {
                    assert_eq!(w.length(), u.length() + v.length());
                    assert!(c.is_integer() && !c.is_negative(), "c_{{{u},{v}}}^{{{w}}} = {c}");
                }
            }
        }
    }

    #[test]
    fn newton_chern_examples() {
        // carrier P_2: p_i = X_1^i + X_2^i gives c_2 = X_1 X_2
        let ps: Vec<Poly> = (1..=2)
            .map(|k| symmetric_generator(SymmetricKind::PowerSum, k, 2))
            .collect();
        let cs = newton_chern(&ps);
        assert_eq!(cs[0], ps[0]);
        assert_eq!(cs[1], x(1, 2).mul(&x(2, 2)));
        // carrier P_3: c_3 = X_1 X_2 X_3
        let ps: Vec<Poly> = (1..=3)
            .map(|k| symmetric_generator(SymmetricKind::PowerSum, k, 3))
            .collect();
        let cs = newton_chern(&ps);
        assert_eq!(cs[2], x(1, 3).mul(&x(2, 3)).mul(&x(3, 3)));
        assert_eq!(cs[1], symmetric_generator(SymmetricKind::Elementary, 2, 3));
    }

    #[test]
    fn elementary_and_power_sum_decompositions() {
        let f = symmetric_generator(SymmetricKind::PowerSum, 3, 3);
        let in_e = decompose_elementary(&f).unwrap();
        assert_eq!(expand_elementary(&in_e, 3), f);
        // p_3 = e_1^3 - 3 e_1 e_2 + 3 e_3
        assert_eq!(in_e.coefficient(&[3, 0, 0]), rat(1));
        assert_eq!(in_e.coefficient(&[1, 1, 0]), rat(-3));
        assert_eq!(in_e.coefficient(&[0, 0, 1]), rat(3));
        assert!(decompose_elementary(&x(1, 2)).is_err());

        // e_2 = (p_1^2 - p_2)/2 in the power-sum variables
        let e2 = symmetric_generator(SymmetricKind::Elementary, 2, 3);
        let in_p = to_power_sums(&e2).unwrap();
        assert_eq!(in_p.coefficient(&[2]), ratio(1, 2));
        assert_eq!(in_p.coefficient(&[0, 1]), ratio(-1, 2));
    }

    #[test]
    fn block_decomposition() {
        let r = FlagType::new(vec![2, 3]).unwrap();
        // X1 X2 + X3^2 is symmetric per block {1,2},{3}
        let f = x(1, 3).mul(&x(2, 3)).add(&x(3, 3).pow(2));
        let dec = block_e_decompose(&f, &r.blocks()).unwrap();
        let mut back = Poly::zero(3);
        for (mu, c) in &dec {
            // slots: e1,e2 of block 1, then e1 of block 2
            let mut prod = Poly::constant(3, c.clone());
            if mu[0] > 0 {
                prod = prod.mul(&block_elementary(1, 1, 2, 3).pow(mu[0] as u32));
            }
            if mu[1] > 0 {
                prod = prod.mul(&block_elementary(2, 1, 2, 3).pow(mu[1] as u32));
            }
            if mu[2] > 0 {
                prod = prod.mul(&block_elementary(1, 3, 3, 3).pow(mu[2] as u32));
            }
            back = back.add(&prod);
        }
        assert_eq!(back, f);
        // non-block-symmetric input is rejected
        assert!(block_e_decompose(&x(1, 3), &r.blocks()).is_err());
    }

    #[test]
    fn rendering() {
        let f = x(1, 3).pow(2).mul(&x(2, 3)).sub(&x(3, 3).scale(&ratio(1, 2)));
        assert_eq!(f.to_string(), "X1^2*X2 - 1/2*X3");
        assert_eq!(Poly::zero(2).to_string(), "0");
        assert_eq!(Poly::one(2).sub(&x(1, 2)).to_string(), "-X1 + 1");
    }
}

//! The graded-commutative algebra of SU(n)-invariant forms on the flag
//! manifold, generated by scaled root-space one-forms.
//!
//! Generators come in pairs: `A_ij` (type (1,0)) and `B_ij` (type (0,1)) for
//! `1 <= i < j <= n`, pre-scaled so that `Omega_ij = A_ij ∧ B_ij` has
//! rational periods.  The scaling constant (a square root of `i/2π`) is never
//! represented; rationality of every public coefficient is structural.
//!
//! Words are bitmasks: bit `2t` is `A` and bit `2t+1` is `B` of the pair with
//! index `t`, listed in `(j,i)`-lexicographic order.  Bits 56..72 carry the
//! auxiliary Cartan-direction generators used only inside `ddc`; they must
//! cancel there and their survival is an engine fault.

use crate::perm::FlagType;
use crate::poly::Poly;
use crate::{check_ambient, rat, Error, Rat, Result};
use num_traits::{One, Signed, Zero};
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Mutex, OnceLock};

const H_BASE: u32 = 56;
const HBAR_BASE: u32 = 64;
const PAIR_MASK: u128 = (1u128 << H_BASE) - 1;

fn pair_index(i: u32, j: u32) -> u32 {
    debug_assert!(1 <= i && i < j && j <= 8);
    (j - 1) * (j - 2) / 2 + (i - 1)
}

fn pair_of_index(t: u32) -> (u32, u32) {
    let mut j = 2;
    while (j - 1) * (j - 2) / 2 + (j - 2) < t {
        j += 1;
    }
    let i = t - (j - 1) * (j - 2) / 2 + 1;
    (i, j)
}

fn a_bit(i: u32, j: u32) -> u32 {
    2 * pair_index(i, j)
}

fn b_bit(i: u32, j: u32) -> u32 {
    2 * pair_index(i, j) + 1
}

/// A single generator, decoded from a bit position.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Gen {
    A(u32, u32),
    B(u32, u32),
    H(u32),
    HBar(u32),
}

fn decode(bit: u32) -> Gen {
    if bit >= HBAR_BASE {
        Gen::HBar(bit - HBAR_BASE + 1)
    } else if bit >= H_BASE {
        Gen::H(bit - H_BASE + 1)
    } else {
        let (i, j) = pair_of_index(bit / 2);
        if bit % 2 == 0 {
            Gen::A(i, j)
        } else {
            Gen::B(i, j)
        }
    }
}

/// Wedge two words of odd generators; `None` when a generator repeats.
/// The boolean is the Koszul sign (true = negative).
fn wedge_words(a: u128, b: u128) -> Option<(u128, bool)> {
    if a & b != 0 {
        return None;
    }
    let mut neg = false;
    let mut bb = b;
    while bb != 0 {
        let p = bb.trailing_zeros();
        if (a >> (p + 1)).count_ones() % 2 == 1 {
            neg = !neg;
        }
        bb &= bb - 1;
    }
    Some((a | b, neg))
}

fn word_bidegree(w: u128) -> (u32, u32) {
    let pairs = w & PAIR_MASK;
    let a = (pairs & 0x5555_5555_5555_5555u128).count_ones();
    let b = (pairs & 0xAAAA_AAAA_AAAA_AAAAu128).count_ones();
    let h = ((w >> H_BASE) & 0xFF).count_ones();
    let hb = (w >> HBAR_BASE).count_ones();
    (a + h, b + hb)
}

fn has_auxiliary(w: u128) -> bool {
    w >> H_BASE != 0
}

/// An element of the invariant form algebra at ambient dimension `n`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Form {
    n: u32,
    terms: BTreeMap<u128, Rat>,
}

impl Form {
    pub fn zero(n: u32) -> Self {
        Form { n, terms: BTreeMap::new() }
    }

    pub fn constant(n: u32, c: Rat) -> Self {
        let mut f = Form::zero(n);
        if !c.is_zero() {
            f.terms.insert(0, c);
        }
        f
    }

    pub fn one(n: u32) -> Self {
        Form::constant(n, Rat::one())
    }

    /// The generator `A_ij` (scaled (1,0) root form).
    pub fn gen_a(i: u32, j: u32, n: u32) -> Result<Self> {
        check_ambient(n)?;
        if !(1 <= i && i < j && j <= n) {
            return Err(Error::IndexRange(format!("generator A_{i}{j} at n={n}")));
        }
        let mut f = Form::zero(n);
        f.terms.insert(1u128 << a_bit(i, j), Rat::one());
        Ok(f)
    }

    /// The generator `B_ij` (scaled (0,1) root form).
    pub fn gen_b(i: u32, j: u32, n: u32) -> Result<Self> {
        check_ambient(n)?;
        if !(1 <= i && i < j && j <= n) {
            return Err(Error::IndexRange(format!("generator B_{i}{j} at n={n}")));
        }
        let mut f = Form::zero(n);
        f.terms.insert(1u128 << b_bit(i, j), Rat::one());
        Ok(f)
    }

    /// `Omega_ij = A_ij ∧ B_ij`, the basic (1,1) block.
    pub fn omega(i: u32, j: u32, n: u32) -> Result<Self> {
        check_ambient(n)?;
        if !(1 <= i && i < j && j <= n) {
            return Err(Error::IndexRange(format!("Omega_{i}{j} at n={n}")));
        }
        let mut f = Form::zero(n);
        f.terms
            .insert((1u128 << a_bit(i, j)) | (1u128 << b_bit(i, j)), Rat::one());
        Ok(f)
    }

    pub fn ambient(&self) -> u32 {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (u128, &Rat)> {
        self.terms.iter().map(|(&w, c)| (w, c))
    }

    pub fn coefficient_of_word(&self, w: u128) -> Rat {
        self.terms.get(&w).cloned().unwrap_or_else(Rat::zero)
    }

    fn insert(&mut self, w: u128, c: Rat) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
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
        assert_eq!(self.n, other.n, "engine fault: mixed ambients in add");
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.insert(*w, c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        let mut out = Form::zero(self.n);
        for (w, c) in &self.terms {
            out.terms.insert(*w, -c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Form::zero(self.n);
        }
        let mut out = Form::zero(self.n);
        for (w, k) in &self.terms {
            out.terms.insert(*w, k * c);
        }
        out
    }

    /// Graded-commutative product with Koszul signs.
    pub fn wedge(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::AmbientMismatch(self.n, other.n));
        }
        Ok(self.wedge_unchecked(other))
    }

    pub(crate) fn wedge_unchecked(&self, other: &Self) -> Self {
        let mut out = Form::zero(self.n);
        for (wa, ca) in &self.terms {
            for (wb, cb) in &other.terms {
                if let Some((w, neg)) = wedge_words(*wa, *wb) {
                    let c = ca * cb;
                    out.insert(w, if neg { -c } else { c });
                }
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = Form::one(self.n);
        for _ in 0..k {
            out = out.wedge_unchecked(self);
        }
        out
    }

    /// The common bidegree of all terms, if homogeneous.
    pub fn homogeneous_bidegree(&self) -> Option<(u32, u32)> {
        let mut it = self.terms.keys();
        let first = word_bidegree(*it.next()?);
        for w in it {
            if word_bidegree(*w) != first {
                return None;
            }
        }
        Some(first)
    }

    /// Whether every term has even total degree.
    pub fn is_even(&self) -> bool {
        self.terms.keys().all(|w| w.count_ones() % 2 == 0)
    }

    /// Whether every term has balanced type `(p,p)` (each word its own `p`).
    pub fn is_balanced(&self) -> bool {
        self.terms.keys().all(|w| {
            let (p, q) = word_bidegree(*w);
            p == q
        })
    }

    /// Split into graded pieces keyed by `p` of the `(p,p)` bidegree.
    /// Panics on unbalanced terms.
    pub fn balanced_components(&self) -> BTreeMap<u32, Form> {
        let mut out: BTreeMap<u32, Form> = BTreeMap::new();
        for (w, c) in &self.terms {
            let (p, q) = word_bidegree(*w);
            assert_eq!(p, q, "engine fault: unbalanced term in balanced_components");
            out.entry(p)
                .or_insert_with(|| Form::zero(self.n))
                .terms
                .insert(*w, c.clone());
        }
        out
    }

    pub fn component(&self, p: u32, q: u32) -> Form {
        let mut out = Form::zero(self.n);
        for (w, c) in &self.terms {
            if word_bidegree(*w) == (p, q) {
                out.terms.insert(*w, c.clone());
            }
        }
        out
    }

    /// Render per the text convention: `w{i}{j}` for `A_ij`, `wb{i}{j}` for
    /// `B_ij`, generators joined by `^`; adjacent `A_ij^B_ij` contracts to
    /// `O{i}{j}` when requested.
    pub fn render(&self, contract_omega: bool) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut keys: Vec<&u128> = self.terms.keys().collect();
        keys.sort_by_key(|w| (w.count_ones(), **w));
        let mut out = String::new();
        for (idx, w) in keys.iter().enumerate() {
            let c = &self.terms[w];
            let neg = c.is_negative();
            let abs = c.abs();
            let mut gens: Vec<String> = Vec::new();
            let mut bits = **w;
            while bits != 0 {
                let b = bits.trailing_zeros();
                bits &= bits - 1;
                match decode(b) {
                    Gen::A(i, j) => {
                        if contract_omega && (bits & (1u128 << (b + 1))) != 0 {
                            bits &= !(1u128 << (b + 1));
                            gens.push(format!("O{i}{j}"));
                        } else {
                            gens.push(format!("w{i}{j}"));
                        }
                    }
                    Gen::B(i, j) => gens.push(format!("wb{i}{j}")),
                    Gen::H(k) => gens.push(format!("h{k}")),
                    Gen::HBar(k) => gens.push(format!("hb{k}")),
                }
            }
            let body = if gens.is_empty() {
                format!("{abs}")
            } else {
                format!("{abs} * {}", gens.join("^"))
            };
            if idx == 0 {
                if neg {
                    out.push_str("- ");
                }
            } else if neg {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            out.push_str(&body);
        }
        out
    }
}

impl fmt::Display for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render(true))
    }
}

impl crate::poly::NewtonCarrier for Form {
    fn nc_zero(&self) -> Self {
        Form::zero(self.n)
    }
    fn nc_one(&self) -> Self {
        Form::one(self.n)
    }
    fn nc_add(&self, other: &Self) -> Self {
        self.add(other)
    }
    fn nc_mul(&self, other: &Self) -> Self {
        self.wedge_unchecked(other)
    }
    fn nc_scale(&self, c: &Rat) -> Self {
        self.scale(c)
    }
}

/// A square matrix of invariant forms, indexed by a bundle frame.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FormMatrix {
    n: u32,
    entries: Vec<Vec<Form>>,
}

impl FormMatrix {
    pub fn zero(rank: usize, n: u32) -> Self {
        FormMatrix {
            n,
            entries: vec![vec![Form::zero(n); rank]; rank],
        }
    }

    pub fn from_entries(entries: Vec<Vec<Form>>, n: u32) -> Self {
        let rank = entries.len();
        assert!(entries.iter().all(|r| r.len() == rank), "non-square matrix");
        FormMatrix { n, entries }
    }

    pub fn rank(&self) -> usize {
        self.entries.len()
    }

    pub fn ambient(&self) -> u32 {
        self.n
    }

    pub fn get(&self, r: usize, c: usize) -> &Form {
        &self.entries[r][c]
    }

    pub fn set(&mut self, r: usize, c: usize, f: Form) {
        self.entries[r][c] = f;
    }

    pub fn trace(&self) -> Form {
        let mut t = Form::zero(self.n);
        for i in 0..self.rank() {
            t = t.add(&self.entries[i][i]);
        }
        t
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.rank(), other.rank());
        let mut out = FormMatrix::zero(self.rank(), self.n);
        for r in 0..self.rank() {
            for c in 0..self.rank() {
                out.entries[r][c] = self.entries[r][c].add(&other.entries[r][c]);
            }
        }
        out
    }

    pub fn scale(&self, c: &Rat) -> Self {
        let mut out = FormMatrix::zero(self.rank(), self.n);
        for r in 0..self.rank() {
            for col in 0..self.rank() {
                out.entries[r][col] = self.entries[r][col].scale(c);
            }
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&rat(-1)))
    }

    /// Matrix product; entries are even forms so the order inside each
    /// scalar product is immaterial.
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.rank(), other.rank());
        let mut out = FormMatrix::zero(self.rank(), self.n);
        for r in 0..self.rank() {
            for c in 0..self.rank() {
                let mut acc = Form::zero(self.n);
                for k in 0..self.rank() {
                    acc = acc.add(&self.entries[r][k].wedge_unchecked(&other.entries[k][c]));
                }
                out.entries[r][c] = acc;
            }
        }
        out
    }

    /// Power sum form `Tr(M^k)`.
    pub fn power_sum(&self, k: u32) -> Form {
        assert!(k >= 1);
        let mut m = self.clone();
        for _ in 1..k {
            m = m.mul(self);
        }
        m.trace()
    }
}

/// The scaled curvature matrix of the quotient bundle `Q_{lk} = E_l/E_k`
/// with its induced metric, rows and columns indexed by `k+1 ..= l`: entry
/// `(α,β)` is `Σ_{i<=k} A_{iα} ∧ B_{iβ}  -  Σ_{j>l} A_{αj} ∧ B_{βj}`.
pub fn curvature_quotient(k: u32, l: u32, n: u32) -> Result<FormMatrix> {
    check_ambient(n)?;
    if k >= l || l > n {
        return Err(Error::IndexRange(format!(
            "curvature of E_{l}/E_{k} needs 0 <= k < l <= n = {n}"
        )));
    }
    let rank = (l - k) as usize;
    let mut m = FormMatrix::zero(rank, n);
    for alpha in k + 1..=l {
        for beta in k + 1..=l {
            let mut entry = Form::zero(n);
            for i in 1..=k {
                entry = entry.add(&Form::gen_a(i, alpha, n)?.wedge(&Form::gen_b(i, beta, n)?)?);
            }
            for j in l + 1..=n {
                entry = entry.sub(&Form::gen_a(alpha, j, n)?.wedge(&Form::gen_b(beta, j, n)?)?);
            }
            m.set((alpha - k - 1) as usize, (beta - k - 1) as usize, entry);
        }
    }
    Ok(m)
}

/// The forms `x_k = -c_1(L_k)` of the complete flag, `k = 1..=n`.
pub fn x_forms(n: u32) -> Result<Vec<Form>> {
    check_ambient(n)?;
    (1..=n)
        .map(|k| Ok(curvature_quotient(k - 1, k, n)?.get(0, 0).neg()))
        .collect()
}

/// Chern forms of each quotient block of the flag type, via the curvature
/// matrices: entry `[b][j-1]` is `c_j` of the `b`-th quotient bundle.
pub fn quotient_chern_forms(r: &FlagType) -> Result<Vec<Vec<Form>>> {
    let n = r.n();
    r.blocks()
        .iter()
        .map(|&(lo, hi)| Ok(chern_forms(&curvature_quotient(lo - 1, hi, n)?)))
        .collect()
}

/// The Chern-root value sequence of a flag type: the
/// `x_k` for a complete flag; for a partial flag, the Chern forms of the
/// quotient bundles flattened block by block.
pub fn x_forms_for_flag(r: &FlagType) -> Result<Vec<Form>> {
    if r.is_complete() {
        x_forms(r.n())
    } else {
        Ok(quotient_chern_forms(r)?.into_iter().flatten().collect())
    }
}

/// Chern forms `c_1 .. c_rank` of a curvature matrix, as the coefficients of
/// `det(Id + t·M)` — computed by exact principal-minor sums (`c_0 = 1` is
/// implied and not returned).
pub fn chern_forms(m: &FormMatrix) -> Vec<Form> {
    let rank = m.rank();
    let mut out = Vec::with_capacity(rank);
    for k in 1..=rank {
        let mut acc = Form::zero(m.ambient());
        let mut subset: Vec<usize> = (0..k).collect();
        loop {
            acc = acc.add(&det_rec(m, &subset, &subset));
            // next k-subset of 0..rank
            let mut pos = k;
            let mut advanced = false;
            while pos > 0 {
                pos -= 1;
                if subset[pos] < rank - (k - pos) {
                    subset[pos] += 1;
                    for t in pos + 1..k {
                        subset[t] = subset[t - 1] + 1;
                    }
                    advanced = true;
                    break;
                }
            }
            if !advanced {
                break;
            }
        }
        out.push(acc);
    }
    out
}

fn det_rec(m: &FormMatrix, rows: &[usize], cols: &[usize]) -> Form {
    if rows.is_empty() {
        return Form::one(m.ambient());
    }
    let mut acc = Form::zero(m.ambient());
    let r = rows[0];
    for (idx, &c) in cols.iter().enumerate() {
        let minor_cols: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
        let sub = det_rec(m, &rows[1..], &minor_cols);
        let term = m.get(r, c).wedge_unchecked(&sub);
        acc = if idx % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
    }
    acc
}

/// Ring-homomorphic evaluation of a polynomial at even invariant forms.
pub fn substitute(f: &Poly, values: &[Form]) -> Result<Form> {
    let trimmed = f.trimmed();
    if trimmed.nvars() > values.len() {
        return Err(Error::Arity(format!(
            "polynomial uses {} variables, {} values supplied",
            trimmed.nvars(),
            values.len()
        )));
    }
    let n = values
        .first()
        .map(|v| v.ambient())
        .ok_or_else(|| Error::Arity("no substitution values supplied".into()))?;
    for v in values {
        if v.ambient() != n {
            return Err(Error::AmbientMismatch(n, v.ambient()));
        }
        if !v.is_even() {
            return Err(Error::OddType("substitution values must be even forms".into()));
        }
    }
    let f = trimmed;
    let mut powers: Vec<Vec<Form>> = values[..f.nvars()]
        .iter()
        .map(|v| vec![Form::one(n), v.clone()])
        .collect();
    let mut out = Form::zero(n);
    for (exps, c) in f.terms() {
        let mut term = Form::constant(n, c.clone());
        for (i, &e) in exps.iter().enumerate() {
            while powers[i].len() <= e as usize {
                let next = powers[i].last().unwrap().wedge_unchecked(&values[i]);
                powers[i].push(next);
            }
            term = term.wedge_unchecked(&powers[i][e as usize]);
        }
        out = out.add(&term);
    }
    Ok(out)
}

/// Evaluate a block-symmetric polynomial through the Chern roots of the
/// quotient bundles of `r`: `e_j` of block `b` maps to `(-1)^j c_j(Q_b)`.
/// For the complete flag this is exactly `substitute(f, x_forms)`.
pub fn evaluate_block_symmetric(f: &Poly, r: &FlagType) -> Result<Form> {
    let n = r.n();
    if r.is_complete() {
        return substitute(&f.padded(n as usize), &x_forms(n)?);
    }
    let chern = quotient_chern_forms(r)?;
    let blocks = r.blocks();
    let dec = crate::poly::block_e_decompose(&f.padded(n as usize), &blocks)?;
    let mut out = Form::zero(n);
    for (mu, c) in dec {
        let mut term = Form::constant(n, c);
        let mut slot = 0;
        for (b, &(lo, hi)) in blocks.iter().enumerate() {
            let d = (hi - lo + 1) as usize;
            for j in 1..=d {
                let e = mu[slot + j - 1];
                if e > 0 {
                    let base = if j % 2 == 0 {
                        chern[b][j - 1].clone()
                    } else {
                        chern[b][j - 1].neg()
                    };
                    term = term.wedge_unchecked(&base.pow(e as u32));
                }
            }
            slot += d;
        }
        out = out.add(&term);
    }
    Ok(out)
}

/// The top word of `F(r)`: all `A_ij` and `B_ij` over cross-block pairs.
fn top_word(r: &FlagType) -> u128 {
    let mut w = 0u128;
    for (i, j) in r.cross_pairs() {
        w |= (1u128 << a_bit(i, j)) | (1u128 << b_bit(i, j));
    }
    w
}

/// The volume form `Omega_r`: wedge of all cross-block `Omega_ij`.
pub fn volume_form(r: &FlagType) -> Result<Form> {
    check_ambient(r.n())?;
    let mut f = Form::zero(r.n());
    f.terms.insert(top_word(r), Rat::one());
    Ok(f)
}

fn calibration_cache() -> &'static Mutex<HashMap<FlagType, Rat>> {
    static CACHE: OnceLock<Mutex<HashMap<FlagType, Rat>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// `μ_r = ∫ Omega_r` over `F(r)`, calibrated so the point-class Schubert
/// polynomial integrates to 1.  For the complete flag this equals
/// `Π_{k=1}^{n-1} 1/k!`.
pub fn calibration_constant(r: &FlagType) -> Result<Rat> {
    if let Some(c) = calibration_cache().lock().unwrap().get(r) {
        return Ok(c.clone());
    }
    let point = r.longest_r_permutation();
    let pc = evaluate_block_symmetric(&crate::poly::schubert(&point), r)?;
    let coeff = pc.coefficient_of_word(top_word(r));
    assert!(
        !coeff.is_zero(),
        "engine fault: point-class calibration coefficient vanished for {r}"
    );
    assert_eq!(
        pc.num_terms(),
        1,
        "engine fault: point-class form is not a pure volume multiple for {r}"
    );
    let mu = Rat::one() / coeff;
    calibration_cache().lock().unwrap().insert(r.clone(), mu.clone());
    Ok(mu)
}

/// Integrate a top-degree invariant form over `F(r)`: writes `f = λ·Omega_r`
/// and returns `λ·μ_r`.
pub fn integral_top(f: &Form, r: &FlagType) -> Result<Rat> {
    if f.ambient() != r.n() {
        return Err(Error::AmbientMismatch(f.ambient(), r.n()));
    }
    let nr = r.dim();
    let top = top_word(r);
    let mut lambda = Rat::zero();
    for (w, c) in f.terms() {
        if word_bidegree(w) != (nr, nr) {
            return Err(Error::DegreeMismatch(format!(
                "term of bidegree {:?} in a top-degree integral for {r} (expected ({nr},{nr}))",
                word_bidegree(w)
            )));
        }
        if w != top {
            return Err(Error::DegreeMismatch(format!(
                "top-degree term uses generators outside F({r})"
            )));
        }
        lambda += c;
    }
    Ok(lambda * calibration_constant(r)?)
}

// ---------------------------------------------------------------------------
// the invariant exterior derivative and dd^c
// ---------------------------------------------------------------------------

/// `D(g)` for a single generator: the scaled invariant exterior derivative
/// from the Maurer-Cartan structure equations of the special linear Lie
/// algebra.  Auxiliary Cartan terms are carried explicitly; for weight-zero
/// (invariant) inputs they cancel in the Leibniz sum.
fn d_letter(bit: u32, n: u32) -> Vec<(u128, Rat)> {
    let mut out = Vec::new();
    let mut push2 = |x: u128, y: u128, sign: i64| {
        if let Some((w, neg)) = wedge_words(x, y) {
            out.push((w, if neg { rat(-sign) } else { rat(sign) }));
        }
    };
    match decode(bit) {
        Gen::A(i, j) => {
            for k in 1..=n {
                if k < i {
                    push2(1u128 << a_bit(k, j), 1u128 << b_bit(k, i), 1);
                } else if k > i && k < j {
                    push2(1u128 << a_bit(k, j), 1u128 << a_bit(i, k), -1);
                } else if k > j {
                    push2(1u128 << b_bit(j, k), 1u128 << a_bit(i, k), 1);
                }
            }
            for (k, s) in [(j, 1i64), (i, -1)] {
                push2(1u128 << bit, 1u128 << (H_BASE + k - 1), s);
                push2(1u128 << bit, 1u128 << (HBAR_BASE + k - 1), s);
            }
        }
        Gen::B(i, j) => {
            for k in 1..=n {
                if k < i {
                    push2(1u128 << a_bit(k, i), 1u128 << b_bit(k, j), -1);
                } else if k > i && k < j {
                    push2(1u128 << b_bit(i, k), 1u128 << b_bit(k, j), 1);
                } else if k > j {
                    push2(1u128 << b_bit(i, k), 1u128 << a_bit(j, k), -1);
                }
            }
            for (k, s) in [(i, 1i64), (j, -1)] {
                push2(1u128 << bit, 1u128 << (H_BASE + k - 1), s);
                push2(1u128 << bit, 1u128 << (HBAR_BASE + k - 1), s);
            }
        }
        Gen::H(_) | Gen::HBar(_) => {
            panic!("engine fault: derivative of an auxiliary Cartan generator requested");
        }
    }
    out
}

/// One application of the scaled invariant exterior derivative.
fn d_operator(f: &Form) -> Form {
    let n = f.ambient();
    let mut out = Form::zero(n);
    for (word, coeff) in f.terms() {
        let mut bits = word;
        let mut p = 0u32; // 1-based rank of the letter inside the word
        while bits != 0 {
            let b = bits.trailing_zeros();
            bits &= bits - 1;
            p += 1;
            let below = word & ((1u128 << b) - 1);
            let above = word & !((1u128 << (b + 1)) - 1);
            let leib_neg = (p - 1) % 2 == 1;
            for (dw, dc) in d_letter(b, n) {
                let Some((w1, n1)) = wedge_words(below, dw) else { continue };
                let Some((w2, n2)) = wedge_words(w1, above) else { continue };
                let mut c = coeff * &dc;
                if leib_neg ^ n1 ^ n2 {
                    c = -c;
                }
                out.insert(w2, c);
            }
        }
    }
    out
}

/// Whether the invariant exterior derivative of `f` vanishes.
pub fn is_closed(f: &Form) -> bool {
    let df = d_operator(f);
    assert_no_auxiliary(&df, "the exterior derivative in a closedness check");
    df.is_zero()
}

/// All weight-zero words with `na` generators of type A and `nb` of type B:
/// A-combinations are grouped by weight and matched with the B-combinations
/// of the opposite weight.
fn weight_zero_words(n: u32, na: u32, nb: u32) -> Vec<u128> {
    let mut pairs = Vec::new();
    for i in 1..=n {
        for j in i + 1..=n {
            pairs.push((i, j));
        }
    }
    fn rec(
        pairs: &[(u32, u32)],
        k: u32,
        start: usize,
        word: u128,
        wt: [i32; 9],
        a_side: bool,
        out: &mut Vec<(u128, [i32; 9])>,
    ) {
        if k == 0 {
            out.push((word, wt));
            return;
        }
        for t in start..pairs.len() {
            let (i, j) = pairs[t];
            let (bit, s) = if a_side { (a_bit(i, j), 1) } else { (b_bit(i, j), -1) };
            let mut wt2 = wt;
            wt2[j as usize] += s;
            wt2[i as usize] -= s;
            rec(pairs, k - 1, t + 1, word | (1u128 << bit), wt2, a_side, out);
        }
    }
    let mut a_combos = Vec::new();
    rec(&pairs, na, 0, 0, [0; 9], true, &mut a_combos);
    let mut b_raw = Vec::new();
    rec(&pairs, nb, 0, 0, [0; 9], false, &mut b_raw);
    let mut b_combos: HashMap<[i32; 9], Vec<u128>> = HashMap::new();
    for (word, wt) in b_raw {
        b_combos.entry(wt).or_default().push(word);
    }
    let mut out = Vec::new();
    for (wa, wta) in a_combos {
        let mut need = [0i32; 9];
        for (slot, x) in wta.iter().enumerate() {
            need[slot] = -x;
        }
        if let Some(bs) = b_combos.get(&need) {
            for &wb in bs {
                out.push(wa | wb);
            }
        }
    }
    out.sort_unstable();
    out
}

/// Decide membership of an invariant balanced form in `Im ∂ + Im ∂̄`.
///
/// Sources are the weight-zero words of bidegree `(p-1, p)` and `(p, p-1)`;
/// averaging over the compact group reduces general exactness to exactness
/// inside the invariant algebra, so the decision is complete.  Combined with
/// the vanishing of `CH^{p,p-1}` this certifies that the archimedean class
/// `a(f)` is zero.
pub fn is_exact_invariant(f: &Form) -> bool {
    if f.is_zero() {
        return true;
    }
    let n = f.ambient();
    for (p, comp) in f.balanced_components() {
        if p == 0 {
            return false; // nonzero constants are never exact
        }
        // sparse incremental row reduction over the image of D
        let mut pivots: BTreeMap<u128, BTreeMap<u128, Rat>> = BTreeMap::new();
        let reduce = |mut vec: BTreeMap<u128, Rat>,
                          pivots: &BTreeMap<u128, BTreeMap<u128, Rat>>|
         -> BTreeMap<u128, Rat> {
            loop {
                let Some((&lead, _)) = vec.iter().next() else { return vec };
                let Some(piv) = pivots.get(&lead) else { return vec };
                let factor = vec[&lead].clone();
                for (w, c) in piv {
                    let entry = vec.entry(*w).or_insert_with(Rat::zero);
                    *entry -= &factor * c;
                    if entry.is_zero() {
                        vec.remove(w);
                    }
                }
            }
        };
        let mut sources = weight_zero_words(n, p - 1, p);
        sources.extend(weight_zero_words(n, p, p - 1));
        for src in sources {
            let mut gen = Form::zero(n);
            gen.terms.insert(src, Rat::one());
            let image = d_operator(&gen).component(p, p);
            if image.is_zero() {
                continue;
            }
            let col: BTreeMap<u128, Rat> = image.terms;
            let col = reduce(col, &pivots);
            if let Some((&lead, _)) = col.iter().next() {
                let scale = Rat::one() / col[&lead].clone();
                let normalized: BTreeMap<u128, Rat> =
                    col.into_iter().map(|(w, c)| (w, c * &scale)).collect();
                pivots.insert(lead, normalized);
            }
        }
        let target = reduce(comp.terms.clone(), &pivots);
        if !target.is_empty() {
            return false;
        }
    }
    true
}

fn assert_no_auxiliary(f: &Form, stage: &str) {
    for (w, c) in f.terms() {
        assert!(
            !has_auxiliary(w),
            "engine fault: auxiliary Cartan generator survived {stage} with coefficient {c}"
        );
    }
}

/// `dd^c` of an invariant form with balanced `(p,p)` terms, computed as the
/// composite of the (0,1)- and (1,0)-raising pieces of the scaled invariant
/// exterior derivative.  The scaling constant pairs with each derivative so
/// the output is again rational; the Cartan directions introduced along the
/// way must cancel exactly.
pub fn ddc(f: &Form) -> Result<Form> {
    for (w, _) in f.terms() {
        if has_auxiliary(w) {
            return Err(Error::OddType("ddc input carries auxiliary generators".into()));
        }
        let (p, q) = word_bidegree(w);
        if p != q {
            return Err(Error::OddType(format!(
                "ddc input must be of type (p,p); found ({p},{q})"
            )));
        }
    }
    let df = d_operator(f);
    assert_no_auxiliary(&df, "the first exterior derivative");
    let mut dbar = Form::zero(f.ambient());
    for (w, c) in df.terms() {
        let (p, q) = word_bidegree(w);
        if q == p + 1 {
            dbar.terms.insert(w, c.clone());
        }
    }
    let d2 = d_operator(&dbar);
    assert_no_auxiliary(&d2, "the second exterior derivative");
    let mut out = Form::zero(f.ambient());
    for (w, c) in d2.terms() {
        let (p, q) = word_bidegree(w);
        if p == q {
            out.terms.insert(w, c.clone());
        } else {
            // the only other piece is dbar∘dbar, which must vanish identically
            panic!("engine fault: dbar^2 produced a nonzero ({p},{q}) term");
        }
    }
    Ok(out)
}

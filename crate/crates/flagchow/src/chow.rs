//! The invariant arithmetic Chow ring of a flag variety in its split model:
//! a class is a Schubert-coefficient table over the r-permutations of `S_n`
//! plus an invariant form.  Products follow the arithmetic Schubert
//! calculus: classical structure constants, with ideal-supported terms
//! converted to tilde forms; class-times-form through the form realization
//! of the classical part; form-times-form through `dd^c`.

use crate::bcform::{bc_symmetric_filtration, Filtration};
use crate::forms::{ddc, evaluate_block_symmetric, integral_top, Form};
use crate::perm::{is_r_permutation, is_tilde_eligible, monk_indices, FlagType, Permutation};
use crate::poly::{
    block_elementary, dual_schubert, scalar_product, schubert, schubert_assemble, schubert_expand,
    Poly,
};
use crate::{rat, ratio, Error, Rat, Result};
use num_traits::{One, Zero};
use std::collections::{BTreeMap, HashMap};
use std::sync::{Mutex, OnceLock};

/// An element of the invariant arithmetic Chow ring of `F(r)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ArithmeticClass {
    flag: FlagType,
    schubert: BTreeMap<Permutation, Rat>,
    form: Form,
}

impl ArithmeticClass {
    pub fn zero(r: &FlagType) -> Self {
        ArithmeticClass {
            flag: r.clone(),
            schubert: BTreeMap::new(),
            form: Form::zero(r.n()),
        }
    }

    pub fn unit(r: &FlagType) -> Self {
        let mut c = Self::zero(r);
        c.schubert.insert(Permutation::identity(), Rat::one());
        c
    }

    pub fn flag(&self) -> &FlagType {
        &self.flag
    }

    pub fn schubert_part(&self) -> &BTreeMap<Permutation, Rat> {
        &self.schubert
    }

    pub fn form_part(&self) -> &Form {
        &self.form
    }

    pub fn is_zero(&self) -> bool {
        self.schubert.is_empty() && self.form.is_zero()
    }

    /// Whether the class vanishes in the invariant arithmetic Chow ring:
    /// empty Schubert part and an archimedean part that is either zero on
    /// the nose or certified to lie in `Im ∂ + Im ∂̄`.
    pub fn is_zero_class(&self) -> bool {
        self.schubert.is_empty()
            && (self.form.is_zero() || crate::forms::is_exact_invariant(&self.form))
    }

    /// Degrees present in the class: `l(w)` for Schubert terms, `p + 1` for
    /// a form term of bidegree `(p,p)`.
    pub fn degrees(&self) -> Vec<u32> {
        let mut d: Vec<u32> = self.schubert.keys().map(|w| w.length() as u32).collect();
        for (p, _) in self.form.balanced_components() {
            d.push(p + 1);
        }
        d.sort_unstable();
        d.dedup();
        d
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.flag != other.flag {
            return Err(Error::InvalidFlagType(format!(
                "flag mismatch: {} vs {}",
                self.flag, other.flag
            )));
        }
        let mut out = self.clone();
        for (w, c) in &other.schubert {
            let e = out.schubert.entry(w.clone()).or_insert_with(Rat::zero);
            *e += c;
            if e.is_zero() {
                out.schubert.remove(w);
            }
        }
        out.form = out.form.add(&other.form);
        Ok(out)
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero(&self.flag);
        }
        let mut out = self.clone();
        for v in out.schubert.values_mut() {
            *v *= c;
        }
        out.form = out.form.scale(c);
        out
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&rat(-1)))
    }

    /// The classical part as a polynomial in `P_n`.
    pub fn classical_polynomial(&self) -> Poly {
        schubert_assemble(&self.schubert, self.flag.n() as usize)
    }

    /// JSON per the external interface: rationals as strings, form rendered
    /// in the contracted text convention.
    pub fn to_json(&self) -> serde_json::Value {
        let mut table = serde_json::Map::new();
        for (w, c) in &self.schubert {
            table.insert(w.to_string(), serde_json::Value::String(c.to_string()));
        }
        serde_json::json!({
            "schubert": serde_json::Value::Object(table),
            "form": self.form.render(true),
            "flag": self.flag.to_string(),
        })
    }
}

/// The ε-lift of a reduced classical class: Schubert support must stay in
/// the r-permutations of `S_n`, and the form part is zero.
pub fn lift(f: &Poly, r: &FlagType) -> Result<ArithmeticClass> {
    let n = r.n();
    let expansion = schubert_expand(&f.padded(n as usize), n);
    let mut out = ArithmeticClass::zero(r);
    for (w, c) in expansion {
        if !w.in_s_n(n) || !is_r_permutation(&w, r) {
            return Err(Error::NotReduced(format!(
                "Schubert support contains {w}, outside S_{{{n},{r}}}; reduce first"
            )));
        }
        out.schubert.insert(w, c);
    }
    Ok(out)
}

/// `a(η)`: the inclusion of an invariant form as a pure archimedean class.
pub fn include_form(eta: &Form, r: &FlagType) -> Result<ArithmeticClass> {
    if eta.ambient() != r.n() {
        return Err(Error::AmbientMismatch(eta.ambient(), r.n()));
    }
    if !eta.is_balanced() {
        return Err(Error::OddType(
            "form classes must have balanced (p,p) terms".into(),
        ));
    }
    let mut out = ArithmeticClass::zero(r);
    out.form = eta.clone();
    Ok(out)
}

fn tilde_cache() -> &'static Mutex<HashMap<(Permutation, FlagType), Form>> {
    static CACHE: OnceLock<Mutex<HashMap<(Permutation, FlagType), Form>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// The tilde class of `w ∈ T_{n,r}` as an invariant form:
/// `S̃_w = Σ_{v} (-1)^{l(v)+l(w)} <S_w, S^v>~ ∧ S_v(x)`.
pub fn tilde_schubert(w: &Permutation, r: &FlagType) -> Result<Form> {
    let n = r.n();
    if w.in_s_n(n) || !is_tilde_eligible(w, r) {
        return Err(Error::NotReduced(format!(
            "{w} does not index a tilde class for flag type {r}"
        )));
    }
    let key = (w.clone(), r.clone());
    if let Some(f) = tilde_cache().lock().unwrap().get(&key) {
        return Ok(f.clone());
    }
    let sw = schubert(w);
    assert!(
        sw.trimmed().nvars() <= n as usize,
        "engine fault: Schubert polynomial of a stable permutation left P_n"
    );
    // Bott-Chern data of the tautological filtration of type r
    let filt = Filtration {
        base: 0,
        cuts: r.ranks().to_vec(),
        n,
    };
    let lw = w.length();
    let mut acc = Form::zero(n);
    for v in crate::perm::symmetric_group(n) {
        if v.length() >= lw {
            continue; // the coefficient has degree l(w) - l(v) > 0
        }
        let g = scalar_product(&sw, &dual_schubert(&v, n)?, n);
        if g.is_zero() {
            continue;
        }
        assert!(
            is_r_permutation(&v, r),
            "engine fault: block-symmetric polynomial decomposed outside S_{{n,r}}"
        );
        let gt = bc_symmetric_filtration(&filt, &g)?;
        if gt.is_zero() {
            continue;
        }
        let sv = evaluate_block_symmetric(&schubert(&v), r)?;
        let signed = if (v.length() + lw) % 2 == 1 { gt.neg() } else { gt };
        acc = acc.add(&signed.wedge(&sv)?);
    }
    tilde_cache().lock().unwrap().insert(key, acc.clone());
    Ok(acc)
}

/// The class of an arbitrary polynomial: expand over `S^(n)`, keep the
/// `S_{n,r}` part classically, convert the ideal-supported residue to tilde
/// forms.
pub fn polynomial_class(f: &Poly, r: &FlagType) -> Result<ArithmeticClass> {
    let n = r.n();
    if f.trimmed().nvars() > n as usize {
        return Err(Error::Arity(format!(
            "polynomial in {} variables at ambient {n}",
            f.trimmed().nvars()
        )));
    }
    let expansion = schubert_expand(&f.padded(n as usize), n);
    let mut out = ArithmeticClass::zero(r);
    for (w, c) in expansion {
        if w.in_s_n(n) {
            if !is_r_permutation(&w, r) {
                return Err(Error::NotReduced(format!(
                    "{w} in the Schubert support is not an r-permutation for {r}"
                )));
            }
            out.schubert.insert(w, c);
        } else {
            out.form = out.form.add(&tilde_schubert(&w, r)?.scale(&c));
        }
    }
    Ok(out)
}

/// The single Schubert class of `w ∈ S_{n,r}`.
pub fn schubert_class(w: &Permutation, r: &FlagType) -> Result<ArithmeticClass> {
    if !w.in_s_n(r.n()) || !is_r_permutation(w, r) {
        return Err(Error::NotReduced(format!("{w} is not in S_{{n,{r}}}")));
    }
    let mut out = ArithmeticClass::zero(r);
    out.schubert.insert(w.clone(), Rat::one());
    Ok(out)
}

/// The forms map `ω`: classical part through the Chern-root realization,
/// form part through `dd^c`.
pub fn omega_map(c: &ArithmeticClass) -> Result<Form> {
    let classical = evaluate_block_symmetric(&c.classical_polynomial(), &c.flag)?;
    Ok(classical.add(&ddc(&c.form)?))
}

/// The product of the split model.
pub fn multiply(c1: &ArithmeticClass, c2: &ArithmeticClass) -> Result<ArithmeticClass> {
    if c1.flag != c2.flag {
        return Err(Error::InvalidFlagType(format!(
            "flag mismatch: {} vs {}",
            c1.flag, c2.flag
        )));
    }
    let r = &c1.flag;
    let f1 = c1.classical_polynomial();
    let f2 = c2.classical_polynomial();
    let mut out = polynomial_class(&f1.mul(&f2), r)?;
    if !c2.form.is_zero() && !f1.is_zero() {
        out.form = out
            .form
            .add(&evaluate_block_symmetric(&f1, r)?.wedge(&c2.form)?);
    }
    if !c1.form.is_zero() && !f2.is_zero() {
        out.form = out
            .form
            .add(&evaluate_block_symmetric(&f2, r)?.wedge(&c1.form)?);
    }
    if !c1.form.is_zero() && !c2.form.is_zero() {
        out.form = out.form.add(&ddc(&c1.form)?.wedge(&c2.form)?);
    }
    Ok(out)
}

/// The class `x̂_1^{k_1} ··· x̂_n^{k_n}` on the complete flag variety.
pub fn monomial_class(exponents: &[u16], r: &FlagType) -> Result<ArithmeticClass> {
    if !r.is_complete() {
        return Err(Error::Unsupported(
            "monomial classes are defined on the complete flag".into(),
        ));
    }
    if exponents.len() != r.n() as usize {
        return Err(Error::Arity(format!(
            "{} exponents at ambient {}",
            exponents.len(),
            r.n()
        )));
    }
    polynomial_class(&Poly::monomial(exponents.to_vec(), Rat::one()), r)
}

/// The arithmetic degree of a top-degree class: `deg a(η) = ½ ∫ η`.
pub fn arithmetic_degree(c: &ArithmeticClass) -> Result<Rat> {
    if !c.schubert.is_empty() {
        return Err(Error::DegreeMismatch(
            "nonzero Schubert part at top degree".into(),
        ));
    }
    if c.form.is_zero() {
        return Ok(Rat::zero());
    }
    Ok(integral_top(&c.form, &c.flag)? * ratio(1, 2))
}

/// All arithmetic Chern numbers `deg(x̂^k)` with `Σ k_i = dim F + 1`, keyed
/// by exponent tuple in descending lexicographic order.
pub fn degree_table(n: u32) -> Result<Vec<(Vec<u16>, Rat)>> {
    let r = FlagType::complete(n);
    let top = r.dim() + 1;
    let mut tuples: Vec<Vec<u16>> = Vec::new();
    let mut cur = vec![0u16; n as usize];
    fn rec(cur: &mut Vec<u16>, slot: usize, rem: u16, out: &mut Vec<Vec<u16>>) {
        if slot + 1 == cur.len() {
            cur[slot] = rem;
            out.push(cur.clone());
            return;
        }
        for c in 0..=rem {
            cur[slot] = c;
            rec(cur, slot + 1, rem - c, out);
        }
        cur[slot] = 0;
    }
    rec(&mut cur, 0, top as u16, &mut tuples);
    tuples.sort_by(|a, b| b.cmp(a));
    tuples
        .into_iter()
        .map(|t| {
            let d = arithmetic_degree(&monomial_class(&t, &r)?)?;
            Ok((t, d))
        })
        .collect()
}

/// The Faltings height of `F(r)` under the pluri-Pluecker embedding: the
/// arithmetic self-intersection of `Σ_i ĉ_1(det Q̄_i)`, which expands as
/// `Σ_{i<m} Ŝ_{s_{r_i}}`.
pub fn height_pluriplucker(r: &FlagType) -> Result<Rat> {
    let mut line = ArithmeticClass::zero(r);
    for &ri in &r.ranks()[..r.num_blocks() - 1] {
        let c = schubert_class(&Permutation::s(ri), r)?;
        line = line.add(&c)?;
    }
    let mut acc = ArithmeticClass::unit(r);
    for _ in 0..=r.dim() {
        acc = multiply(&acc, &line)?;
    }
    arithmetic_degree(&acc)
}

/// The right-hand side of the arithmetic Monk formula
/// `Ŝ_{s_k} · Ŝ_w = Σ_s Ŝ_{ws} + Σ_t S̃_{wt}` on the complete flag.
pub fn arithmetic_monk(k: u32, w: &Permutation, r: &FlagType) -> Result<ArithmeticClass> {
    if !r.is_complete() {
        return Err(Error::Unsupported(
            "the arithmetic Monk formula is stated on the complete flag".into(),
        ));
    }
    let n = r.n();
    let (classical, boundary) = monk_indices(w, k, n)?;
    let mut out = ArithmeticClass::zero(r);
    for (i, j) in classical {
        out.schubert.insert(w.times_transposition(i, j), Rat::one());
    }
    for (i, j) in boundary {
        let wt = w.times_transposition(i, j);
        out.form = out.form.add(&tilde_schubert(&wt, r)?);
    }
    Ok(out)
}

/// One factor `ĉ_m(Q̄_{b,a})^k` of a quotient-bundle Chern number.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct QuotientChernFactor {
    pub a: u32,
    pub b: u32,
    pub m: u32,
    pub k: u32,
}

/// The arithmetic Chern class `ĉ_m(Q̄_{b,a})` on the complete flag: the
/// filtration of `Q_{b,a}` by the line quotients gives
/// `ĉ_m = (-1)^m ε(e_m(X_{a+1..b})) - a(ẽ_m)`.
pub fn quotient_chern_class(a: u32, b: u32, m: u32, n: u32) -> Result<ArithmeticClass> {
    if a >= b || b > n || m == 0 {
        return Err(Error::IndexRange(format!(
            "c_{m} of the quotient bundle Q_{{{b},{a}}} at ambient {n}"
        )));
    }
    let r = FlagType::complete(n);
    if m > b - a {
        return Ok(ArithmeticClass::zero(&r));
    }
    let e_block = block_elementary(m, a + 1, b, n as usize);
    let sign = if m % 2 == 0 { rat(1) } else { rat(-1) };
    let classical = polynomial_class(&e_block, &r)?.scale(&sign);
    let e_small = crate::poly::symmetric_generator(
        crate::poly::SymmetricKind::Elementary,
        m,
        (b - a) as usize,
    );
    let correction = bc_symmetric_filtration(&Filtration::of_quotient(a, b, n), &e_small)?;
    classical.sub(&include_form(&correction, &r)?)
}

/// Arithmetic degree of a product `Π ĉ_{m_i}(Q̄_{b_i,a_i})^{k_i}` with total
/// degree `Σ k_i m_i = dim F + 1`.
pub fn quotient_chern_number(factors: &[QuotientChernFactor], n: u32) -> Result<Rat> {
    let r = FlagType::complete(n);
    let total: u32 = factors.iter().map(|f| f.k * f.m).sum();
    if total != r.dim() + 1 {
        return Err(Error::DegreeMismatch(format!(
            "factors have total degree {total}, expected dim F + 1 = {}",
            r.dim() + 1
        )));
    }
    let mut acc = ArithmeticClass::unit(&r);
    for f in factors {
        let cls = quotient_chern_class(f.a, f.b, f.m, n)?;
        for _ in 0..f.k {
            acc = multiply(&acc, &cls)?;
        }
    }
    arithmetic_degree(&acc)
}

/// Pull back a partial-flag class to the complete flag: each block Chern
/// monomial is rewritten through the `x̂` classes and the Bott-Chern
/// correction of its block filtration; the form part embeds as is.
pub fn pullback_to_complete(c: &ArithmeticClass) -> Result<ArithmeticClass> {
    let n = c.flag.n();
    let complete = FlagType::complete(n);
    if c.flag.is_complete() {
        return Ok(c.clone());
    }
    let blocks = c.flag.blocks();
    let mut out = include_form(&c.form, &complete)?;
    let dec = crate::poly::block_e_decompose(&c.classical_polynomial(), &blocks)?;
    for (mu, coeff) in dec {
        let mut term = ArithmeticClass::unit(&complete).scale(&coeff);
        let mut slot = 0;
        for &(lo, hi) in &blocks {
            let d = (hi - lo + 1) as usize;
            for j in 1..=d {
                let e = mu[slot + j - 1];
                for _ in 0..e {
                    // e_j(X-block) with hats = (-1)^j ĉ_j(Q̄-block)
                    let sign = if j % 2 == 0 { rat(1) } else { rat(-1) };
                    let factor = quotient_chern_class(lo - 1, hi, j as u32, n)?.scale(&sign);
                    term = multiply(&term, &factor)?;
                }
            }
            slot += d;
        }
        out = out.add(&term)?;
    }
    Ok(out)
}

//! Runnable property suites behind `flagchow verify`.
//!
//! Each check mirrors one invariant of the engine; a failed check carries a
//! counterexample in its detail string.  The reference-table check compares
//! against the values printed in the source table and reports the known
//! discrepancies explicitly rather than hiding them (see the README).

use crate::bcform::{bc_symmetric, bc_total_chern, FiltrationSpec};
use crate::chow::{
    arithmetic_degree, arithmetic_monk, degree_table, include_form, monomial_class, multiply,
    pullback_to_complete, schubert_class, tilde_schubert, ArithmeticClass,
};
use crate::forms::{
    calibration_constant, chern_forms, curvature_quotient, ddc, integral_top, is_exact_invariant,
    substitute, x_forms, Form,
};
use crate::perm::{
    enumerate_index_sets, is_r_permutation, is_tilde_eligible, monk_indices,
    stable_permutations_of_length, symmetric_group, FlagType, Permutation,
};
use crate::poly::{
    divided_difference, dual_schubert, scalar_product, schubert, schubert_expand,
    structure_constants, symmetric_generator, Poly, SymmetricKind,
};
use crate::{rat, ratio, Error, Rat, Result};
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// One verification result.
#[derive(Clone, Debug)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn pass(name: &str, detail: impl Into<String>) -> Self {
        Check { name: name.into(), passed: true, detail: detail.into() }
    }

    fn fail(name: &str, detail: impl Into<String>) -> Self {
        Check { name: name.into(), passed: false, detail: detail.into() }
    }

    fn from(name: &str, passed: bool, detail: impl Into<String>) -> Self {
        Check { name: name.into(), passed, detail: detail.into() }
    }
}

/// Run a named suite (`perm`, `poly`, `forms`, `bcform`, `chow`, or `all`).
pub fn run_suite(suite: &str, n_max: u32) -> Result<Vec<Check>> {
    match suite {
        "perm" => Ok(suite_perm(n_max)),
        "poly" => Ok(suite_poly(n_max)),
        "forms" => suite_forms(n_max),
        "bcform" => suite_bcform(n_max),
        "chow" => suite_chow(n_max),
        "all" => {
            let mut out = suite_perm(n_max);
            out.extend(suite_poly(n_max));
            out.extend(suite_forms(n_max)?);
            out.extend(suite_bcform(n_max)?);
            out.extend(suite_chow(n_max)?);
            Ok(out)
        }
        other => Err(Error::Unsupported(format!("unknown suite {other:?}"))),
    }
}

pub fn suite_perm(n_max: u32) -> Vec<Check> {
    let mut out = Vec::new();
    let cap = n_max.min(5).max(1);

    let mut bad = None;
    for n in 1..=cap {
        for w in symmetric_group(n) {
            if w.length() != w.inverse().length() {
                bad = Some(w);
            }
        }
    }
    out.push(Check::from(
        "perm/inverse-length",
        bad.is_none(),
        bad.map_or(format!("l(w) = l(w^-1) for all w in S_n, n <= {cap}"), |w| {
            format!("counterexample {w}")
        }),
    ));

    let mut bad = None;
    for n in 2..=cap.min(4) {
        for w in symmetric_group(n) {
            for k in 1..n {
                let (classical, boundary) = monk_indices(&w, k, n).unwrap();
                for (i, j) in classical.iter().chain(boundary.iter()) {
                    if w.times_transposition(*i, *j).length() != w.length() + 1 {
                        bad = Some((w.clone(), *i, *j));
                    }
                }
            }
        }
    }
    out.push(Check::from(
        "perm/monk-covers-raise-length",
        bad.is_none(),
        bad.map_or("every Monk transposition is a length-one cover".to_string(), |(w, i, j)| {
            format!("counterexample w={w}, t=({i},{j})")
        }),
    ));

    let mut ok = true;
    let mut detail = String::new();
    for n in 1..=cap.min(4) {
        let cap_len = 4;
        let sets = enumerate_index_sets(n, cap_len, None).unwrap();
        let mut union: Vec<Permutation> = sets
            .s_n
            .iter()
            .filter(|w| w.length() <= cap_len as usize)
            .chain(sets.t_n.iter())
            .cloned()
            .collect();
        let total = union.len();
        union.sort();
        union.dedup();
        let mut upper = sets.s_upper.clone();
        upper.sort();
        if union.len() != total || union != upper {
            ok = false;
            detail = format!("partition broken at n={n}");
        }
    }
    out.push(Check::from(
        "perm/index-set-partition",
        ok,
        if ok { "S^(n) = S_n ⊔ T_n with no duplicates".to_string() } else { detail },
    ));

    let mut bad = None;
    for n in 1..=cap {
        for w in symmetric_group(n) {
            if w.code().iter().sum::<u32>() as usize != w.length() {
                bad = Some(w);
            }
        }
    }
    out.push(Check::from(
        "perm/code-sums-to-length",
        bad.is_none(),
        bad.map_or("Lehmer code sums to the length".to_string(), |w| {
            format!("counterexample {w}")
        }),
    ));
    out
}

/// A reduced word by the rightmost-descent greedy rule, used only to test
/// independence of the chosen word.
fn rightmost_reduced_word(w: &Permutation) -> Vec<u32> {
    let mut w = w.clone();
    let mut rev = Vec::new();
    while let Some(&i) = w.descents().last() {
        rev.push(i as u32);
        w = w.times_transposition(i as u32, i as u32 + 1);
    }
    rev.reverse();
    rev
}

fn apply_word(word: &[u32], f: &Poly) -> Poly {
    let mut g = f.clone();
    for &i in word.iter().rev() {
        g = divided_difference(i as usize, &g);
    }
    g
}

pub fn suite_poly(n_max: u32) -> Vec<Check> {
    let mut out = Vec::new();
    let nv = n_max.clamp(2, 4) as usize;

    // nilpotence and braid relations on random polynomials of degree <= 6
    let mut rng = ChaCha8Rng::seed_from_u64(101);
    let mut ok = true;
    for _ in 0..12 {
        let mut f = Poly::zero(nv);
        for _ in 0..4 {
            let exps: Vec<u16> = (0..nv).map(|_| rng.gen_range(0..=2u16)).collect();
            f = f.add(&Poly::monomial(exps, rat(rng.gen_range(-4..=4))));
        }
        for i in 1..nv {
            if !divided_difference(i, &divided_difference(i, &f)).is_zero() {
                ok = false;
            }
        }
        for i in 1..nv.saturating_sub(1) {
            let a = divided_difference(i, &divided_difference(i + 1, &divided_difference(i, &f)));
            let b = divided_difference(i + 1, &divided_difference(i, &divided_difference(i + 1, &f)));
            if a != b {
                ok = false;
            }
        }
    }
    out.push(Check::from(
        "poly/nilpotence-and-braid",
        ok,
        "∂_i∂_i = 0 and ∂_i∂_{i+1}∂_i = ∂_{i+1}∂_i∂_{i+1} on random inputs",
    ));

    // reduced-word independence on a monomial basis up to degree 6
    let n = n_max.min(4);
    let mut ok = true;
    let mut detail = String::new();
    'outer: for w in symmetric_group(n) {
        let left = w.reduced_word();
        let right = rightmost_reduced_word(&w);
        if left == right {
            continue;
        }
        let mut exps = vec![0u16; n as usize];
        loop {
            if exps.iter().map(|&e| e as u32).sum::<u32>() <= 6 {
                let f = Poly::monomial(exps.clone(), Rat::one());
                if apply_word(&left, &f) != apply_word(&right, &f) {
                    ok = false;
                    detail = format!("w={w} disagrees on X^{exps:?}");
                    break 'outer;
                }
            }
            let mut t = 0;
            loop {
                if t == n as usize {
                    break;
                }
                if exps[t] < 3 {
                    exps[t] += 1;
                    break;
                }
                exps[t] = 0;
                t += 1;
            }
            if t == n as usize {
                break;
            }
        }
    }
    out.push(Check::from(
        "poly/reduced-word-independence",
        ok,
        if ok { format!("two distinct reduced words agree for all w in S_{n}") } else { detail },
    ));

    // staircase monomials expand inside S_n with integer coefficients
    let mut ok = true;
    let mut detail = String::new();
    for n in 2..=n_max.min(4) {
        let caps: Vec<u16> = (0..n).map(|i| (n - i - 1) as u16).collect();
        let mut e = vec![0u16; n as usize];
        loop {
            let f = Poly::monomial(e.clone(), Rat::one());
            for (w, c) in schubert_expand(&f, n) {
                if !w.in_s_n(n) || !c.is_integer() {
                    ok = false;
                    detail = format!("X^{e:?} at n={n} leaves S_n at {w}");
                }
            }
            let mut t = 0;
            loop {
                if t == n as usize {
                    break;
                }
                if e[t] < caps[t] {
                    e[t] += 1;
                    break;
                }
                e[t] = 0;
                t += 1;
            }
            if t == n as usize {
                break;
            }
        }
    }
    out.push(Check::from(
        "poly/staircase-basis",
        ok,
        if ok { "reduced monomials expand over S_n with integer coefficients".into() } else { detail },
    ));

    // Lemma 8.1 reassembly for T_n elements
    let mut ok = true;
    let mut detail = String::new();
    for n in 2..=n_max.min(3) {
        for d in 1..=6u32 {
            for w in stable_permutations_of_length(n, d) {
                if w.in_s_n(n) {
                    continue;
                }
                let sw = schubert(&w).padded(n as usize);
                let mut sum = Poly::zero(n as usize);
                for v in symmetric_group(n) {
                    let g = scalar_product(&sw, &dual_schubert(&v, n).unwrap(), n);
                    sum = sum.add(&g.mul(&schubert(&v).padded(n as usize)));
                }
                if sum != sw {
                    ok = false;
                    detail = format!("reassembly failed at n={n}, w={w}");
                }
            }
        }
    }
    out.push(Check::from(
        "poly/lemma-8.1-reassembly",
        ok,
        if ok { "S_w = Σ <S_w, S^v> S_v exactly on T_n up to length 6".into() } else { detail },
    ));

    if n_max >= 4 {
        let mut ok = true;
        let mut detail = String::new();
        for u in symmetric_group(4) {
            for v in symmetric_group(4) {
                let cap = (u.length() + v.length()) as u32;
                let cuv = structure_constants(&u, &v, cap);
                if cuv != structure_constants(&v, &u, cap) {
                    ok = false;
                    detail = format!("asymmetric at ({u},{v})");
                }
                for (w, c) in &cuv {
                    if w.length() != u.length() + v.length() || !c.is_integer() || c.is_negative()
                    {
                        ok = false;
                        detail = format!("bad constant c_{{{u},{v}}}^{{{w}}} = {c}");
                    }
                }
            }
        }
        out.push(Check::from(
            "poly/structure-constants-s4",
            ok,
            if ok { "symmetric, nonnegative, length-graded over all of S_4 x S_4".into() } else { detail },
        ));
    }
    out
}

pub fn suite_forms(n_max: u32) -> Result<Vec<Check>> {
    let mut out = Vec::new();

    // supercommutativity and bidegree additivity on random generator words
    let n = n_max.clamp(2, 5);
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut pairs = Vec::new();
    for i in 1..=n {
        for j in i + 1..=n {
            pairs.push((i, j));
        }
    }
    let mut ok = true;
    for _ in 0..100 {
        let make = |rng: &mut ChaCha8Rng| -> Result<Form> {
            let mut f = Form::one(n);
            for _ in 0..rng.gen_range(0..4) {
                let (i, j) = pairs[rng.gen_range(0..pairs.len())];
                let g = if rng.gen_bool(0.5) {
                    Form::gen_a(i, j, n)?
                } else {
                    Form::gen_b(i, j, n)?
                };
                f = f.wedge(&g)?;
            }
            Ok(f)
        };
        let f = make(&mut rng)?;
        let g = make(&mut rng)?;
        let fg = f.wedge(&g)?;
        let gf = g.wedge(&f)?;
        let df = f.homogeneous_bidegree().map_or(0, |d| d.0 + d.1);
        let dg = g.homogeneous_bidegree().map_or(0, |d| d.0 + d.1);
        let expect = if (df * dg) % 2 == 1 { gf.neg() } else { gf };
        if fg != expect {
            ok = false;
        }
        if !fg.is_zero() {
            if let (Some(a), Some(b), Some(c)) = (
                f.homogeneous_bidegree(),
                g.homogeneous_bidegree(),
                fg.homogeneous_bidegree(),
            ) {
                if c != (a.0 + b.0, a.1 + b.1) {
                    ok = false;
                }
            }
        }
    }
    out.push(Check::from(
        "forms/supercommutativity-bidegree",
        ok,
        "Koszul signs and bidegree additivity on random words",
    ));

    let mut ok = true;
    for n in 2..=n_max.min(6) {
        let x = x_forms(n)?;
        let mut sum = Form::zero(n);
        for f in &x {
            sum = sum.add(f);
        }
        if !sum.is_zero() {
            ok = false;
        }
    }
    out.push(Check::from("forms/x-telescoping", ok, "Σ_k x_k = 0 exactly"));

    let mut ok = true;
    for n in 2..=n_max.min(6) {
        let flat = curvature_quotient(0, n, n)?;
        if chern_forms(&flat).iter().any(|c| !c.is_zero()) {
            ok = false;
        }
    }
    out.push(Check::from("forms/flat-chern", ok, "Chern forms of the flat bundle vanish"));

    if n_max >= 3 {
        let n = 3;
        let r = FlagType::complete(n);
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let omegas = [
            Form::omega(1, 2, n)?,
            Form::omega(1, 3, n)?,
            Form::omega(2, 3, n)?,
        ];
        let mut ok = true;
        for _ in 0..25 {
            let mut f = Form::zero(n);
            for o in &omegas {
                f = f.add(&o.scale(&rat(rng.gen_range(-3..=3))));
            }
            let mut g = Form::zero(n);
            for o in &omegas {
                for o2 in &omegas {
                    if rng.gen_bool(0.4) {
                        g = g.add(&o.wedge(o2)?.scale(&rat(rng.gen_range(-2..=2))));
                    }
                }
            }
            let diff = ddc(&f)?.wedge(&g)?.sub(&f.wedge(&ddc(&g)?)?);
            if !diff.is_zero() && integral_top(&diff, &r)? != rat(0) {
                ok = false;
            }
        }
        out.push(Check::from(
            "forms/ddc-integration-by-parts",
            ok,
            "∫ ddc(f)∧g - f∧ddc(g) = 0 on random complementary pairs",
        ));
    }

    let mut ok = true;
    let mut detail = String::new();
    let mut fact = rat(1);
    for n in 2..=n_max.min(5) {
        fact *= rat((1..=(n as i64 - 1)).product::<i64>());
        let mu = calibration_constant(&FlagType::complete(n))?;
        if mu != Rat::one() / &fact {
            ok = false;
            detail = format!("μ_{n} = {mu}");
        }
    }
    out.push(Check::from(
        "forms/calibration",
        ok,
        if ok { "∫Ω = Π 1/k! at every ambient dimension".into() } else { detail },
    ));

    if n_max >= 3 {
        let n = 3;
        let r = FlagType::complete(n);
        let x = x_forms(n)?;
        let w0 = Permutation::longest_element(n);
        let mut ok = true;
        for u in symmetric_group(n) {
            for v in symmetric_group(n) {
                if u.length() + v.length() != 3 {
                    continue;
                }
                let fu = substitute(&schubert(&u), &x)?;
                let fv = substitute(&schubert(&v), &x)?;
                let val = integral_top(&fu.wedge(&fv)?, &r)?;
                let expect = if u == w0.compose(&v) { rat(1) } else { rat(0) };
                if val != expect {
                    ok = false;
                }
            }
        }
        out.push(Check::from(
            "forms/classical-schubert-duality",
            ok,
            "∫ S_u(x) ∧ S_v(x) = δ_{u, w0 v} at n = 3",
        ));
    }
    Ok(out)
}

pub fn suite_bcform(n_max: u32) -> Result<Vec<Check>> {
    let mut out = Vec::new();

    let mut ok = true;
    let mut detail = String::new();
    for n in 2..=n_max.min(3) {
        let sp = FiltrationSpec::new(FlagType::complete(n));
        let c1: Vec<Form> = x_forms(n)?.iter().map(|f| f.neg()).collect();
        let mut phis = vec![
            symmetric_generator(SymmetricKind::Elementary, 2, n as usize),
            symmetric_generator(SymmetricKind::Elementary, 3, n as usize),
            symmetric_generator(SymmetricKind::PowerSum, 2, n as usize),
            symmetric_generator(SymmetricKind::PowerSum, 3, n as usize),
        ];
        phis.retain(|p| !p.is_zero());
        for phi in phis {
            let lhs = ddc(&bc_symmetric(&sp, &phi)?)?;
            let rhs = substitute(&phi, &c1)?;
            if lhs != rhs {
                ok = false;
                detail = format!("failed for {phi} at n={n}");
            }
        }
    }
    out.push(Check::from(
        "bcform/ddc-identity",
        ok,
        if ok { "ddc φ̃(E) = φ(⊕L_i) - φ(E) for e_2, e_3, p_2, p_3".into() } else { detail },
    ));

    if n_max >= 3 {
        let n = 3;
        let sp = FiltrationSpec::new(FlagType::complete(n));
        let total = bc_total_chern(&sp)?;
        let mut ok = true;
        for k in 2..=3u32 {
            let ek = symmetric_generator(SymmetricKind::Elementary, k, n as usize);
            let a = total.component(k - 1, k - 1);
            let b = bc_symmetric(&sp, &ek)?;
            if ddc(&a)? != ddc(&b)? || !is_exact_invariant(&a.sub(&b)) {
                ok = false;
            }
        }
        out.push(Check::from(
            "bcform/route-independence",
            ok,
            "total-Chern and power-sum constructions differ by an exact form",
        ));
    }

    let mut ok = true;
    for n in 2..=n_max.min(4) {
        for j in 1..n {
            let cs = chern_forms(&curvature_quotient(0, j, n)?);
            let cq = chern_forms(&curvature_quotient(j, n, n)?);
            let integral = crate::bcform::bc_chern_ses(0, j, n, n, 4.min(n))?;
            for k in 2..=4.min(n) {
                let flat = crate::bcform::bc_flat_reference(j, n - j, k, &cs, &cq);
                if flat != integral[k as usize - 1] {
                    ok = false;
                }
            }
        }
    }
    out.push(Check::from(
        "bcform/flat-oracle",
        ok,
        "closed-form flat-case formula matches the integral route",
    ));
    Ok(out)
}

pub fn suite_chow(n_max: u32) -> Result<Vec<Check>> {
    let mut out = Vec::new();

    if n_max >= 3 {
        // the printed reference table: honest comparison, discrepancies listed
        let reference: &[(&[u16], i64)] = &[
            (&[4, 0, 0], 0),
            (&[3, 1, 0], 5),
            (&[3, 0, 1], -5),
            (&[2, 2, 0], -1),
            (&[2, 1, 1], -4),
            (&[1, 3, 0], -1),
            (&[0, 0, 4], 0),
            (&[0, 1, 3], 5),
            (&[1, 0, 3], -5),
            (&[0, 2, 2], -1),
            (&[1, 1, 2], -4),
            (&[0, 3, 1], -1),
            (&[0, 4, 0], 2),
            (&[1, 2, 1], 2),
            (&[2, 0, 2], 9),
        ];
        let table = degree_table(3)?;
        let mut diffs = Vec::new();
        for (exps, four_deg) in reference {
            let got = table
                .iter()
                .find(|(t, _)| t.as_slice() == *exps)
                .map(|(_, d)| d.clone() * rat(4))
                .unwrap();
            if got != rat(*four_deg) {
                diffs.push(format!("{exps:?}: printed {four_deg}, computed {got}"));
            }
        }
        if diffs.is_empty() {
            out.push(Check::pass("chow/reference-table", "all 15 printed entries reproduced"));
        } else {
            out.push(Check::fail(
                "chow/reference-table",
                format!(
                    "{} of 15 printed entries differ from the computed table ({}); \
                     the computed values are forced by the displayed Bott-Chern \
                     representatives through the contraction identities checked below",
                    diffs.len(),
                    diffs.join("; ")
                ),
            ));
        }

        // contraction identities pin the computed table from first principles
        let n = 3u32;
        let r = FlagType::complete(n);
        let sp = FiltrationSpec::new(r.clone());
        let x = x_forms(n)?;
        let mut ok = true;
        for i in 1..=3u32 {
            let ei = symmetric_generator(SymmetricKind::Elementary, i, n as usize);
            let ct = bc_symmetric(&sp, &ei)?;
            let deg_a = (4 - i) as u16;
            let mut exps = vec![0u16; n as usize];
            loop {
                if exps.iter().map(|&e| e as u32).sum::<u32>() == deg_a as u32 {
                    let m = Poly::monomial(exps.clone(), Rat::one());
                    let direct = if ct.is_zero() {
                        Rat::zero()
                    } else {
                        let sign = if i % 2 == 1 { rat(-1) } else { rat(1) };
                        integral_top(&ct.wedge(&substitute(&m, &x)?)?, &r)? * ratio(1, 2) * sign
                    };
                    let mut via_table = Rat::zero();
                    for (e2, c) in ei.mul(&m).terms() {
                        via_table += arithmetic_degree(&monomial_class(e2, &r)?)? * c;
                    }
                    if direct != via_table {
                        ok = false;
                    }
                }
                let mut t = 0;
                loop {
                    if t == n as usize {
                        break;
                    }
                    if exps[t] < deg_a {
                        exps[t] += 1;
                        break;
                    }
                    exps[t] = 0;
                    t += 1;
                }
                if t == n as usize {
                    break;
                }
            }
        }
        out.push(Check::from(
            "chow/table-contraction-identities",
            ok,
            "deg(e_i(x̂)·X^a) = ±½ ∫ c̃_i ∧ X^a(x) for every complementary monomial",
        ));

        // symmetry at n = 3 (top degree is even, so the involution preserves signs)
        let mut ok = true;
        for (e, d) in &table {
            let mut m = e.clone();
            m.reverse();
            let dm = table.iter().find(|(t, _)| *t == m).map(|(_, v)| v.clone()).unwrap();
            if *d != dm {
                ok = false;
            }
        }
        out.push(Check::from(
            "chow/symmetry-n3",
            ok,
            "deg(k1 k2 k3) = deg(k3 k2 k1) over all 15 top monomials",
        ));
    }

    if n_max >= 4 {
        // sampled contraction identities pin the n = 4 table as well
        let n = 4u32;
        let r4 = FlagType::complete(4);
        let sp = FiltrationSpec::new(r4.clone());
        let x = x_forms(n)?;
        let mut rng = ChaCha8Rng::seed_from_u64(404);
        let mut ok = true;
        for i in 2..=4u32 {
            let ei = symmetric_generator(SymmetricKind::Elementary, i, n as usize);
            let ct = bc_symmetric(&sp, &ei)?;
            let deg_a = (7 - i) as u16;
            for _ in 0..4 {
                let mut exps = vec![0u16; n as usize];
                for _ in 0..deg_a {
                    exps[rng.gen_range(0..n as usize)] += 1;
                }
                let m = Poly::monomial(exps.clone(), Rat::one());
                let direct = if ct.is_zero() {
                    Rat::zero()
                } else {
                    let sign = if i % 2 == 1 { rat(-1) } else { rat(1) };
                    integral_top(&ct.wedge(&substitute(&m, &x)?)?, &r4)? * ratio(1, 2) * sign
                };
                let mut via_table = Rat::zero();
                for (e2, c) in ei.mul(&m).terms() {
                    via_table += arithmetic_degree(&monomial_class(e2, &r4)?)? * c;
                }
                if direct != via_table {
                    ok = false;
                }
            }
        }
        out.push(Check::from(
            "chow/table-contraction-identities-n4",
            ok,
            "sampled deg(e_i(x̂)·X^a) identities hold at n = 4",
        ));

        // at n = 4 the top degree is odd and the involution law carries a sign
        let mut rng = ChaCha8Rng::seed_from_u64(20260809);
        let mut plain_fail = None;
        let mut signed_ok = true;
        for _ in 0..20 {
            let mut e = vec![0u16; 4];
            for _ in 0..7 {
                e[rng.gen_range(0..4)] += 1;
            }
            let mut m = e.clone();
            m.reverse();
            let a = arithmetic_degree(&monomial_class(&e, &r4)?)?;
            let b = arithmetic_degree(&monomial_class(&m, &r4)?)?;
            if a != b && plain_fail.is_none() {
                plain_fail = Some(format!("deg{e:?} = {a} but deg{m:?} = {b}"));
            }
            if a != -b.clone() {
                signed_ok = false;
            }
        }
        match plain_fail {
            None => out.push(Check::pass(
                "chow/symmetry-n4",
                "plain mirror symmetry on 20 sampled top monomials",
            )),
            Some(ce) => out.push(Check::fail(
                "chow/symmetry-n4",
                format!(
                    "plain mirror equality fails ({ce}); the dual-flag involution pulls \
                     x̂_i back to -x̂_(n+1-i), so the correct law at odd top degree is \
                     deg(k) = -deg(reverse k), verified below"
                ),
            )),
        }
        out.push(Check::from(
            "chow/involution-law-n4",
            signed_ok,
            "deg(k) = (-1)^Σk deg(reverse k) on 20 sampled top monomials",
        ));
    }

    // vanishing of the powers pulled back from projective space
    let mut ok = true;
    for n in 2..=n_max.min(4) {
        let r = FlagType::complete(n);
        let mut e1 = vec![0u16; n as usize];
        e1[0] = (n + 1) as u16;
        let mut e2 = vec![0u16; n as usize];
        e2[n as usize - 1] = (n + 1) as u16;
        for e in [e1, e2] {
            if !monomial_class(&e, &r)?.is_zero_class() {
                ok = false;
            }
        }
    }
    out.push(Check::from(
        "chow/vanishing",
        ok,
        "x̂_1^{n+1} and x̂_n^{n+1} vanish as classes (exactness certified)",
    ));

    if n_max >= 3 {
        let n = 3;
        let r = FlagType::complete(n);
        // product rule coherence: multiply against the arithmetic Monk formula
        let mut ok = true;
        for k in 1..=2u32 {
            let sk = schubert_class(&Permutation::s(k), &r)?;
            for w in symmetric_group(n) {
                let lhs = multiply(&sk, &schubert_class(&w, &r)?)?;
                let rhs = arithmetic_monk(k, &w, &r)?;
                if lhs != rhs {
                    ok = false;
                }
            }
        }
        out.push(Check::from(
            "chow/monk-coherence",
            ok,
            "multiply(S_{s_k}, S_w) equals the arithmetic Monk right-hand side exactly",
        ));

        // tilde-product remark at the degree level
        let mut tpairs = Vec::new();
        for d in 1..=2u32 {
            for w in stable_permutations_of_length(n, d) {
                if !w.in_s_n(n) && is_tilde_eligible(&w, &r) {
                    tpairs.push(w);
                }
            }
        }
        let mut ok = true;
        for u in &tpairs {
            for v in &tpairs {
                let total = u.length() + v.length();
                if total > 4 {
                    continue;
                }
                let lhs = ddc(&tilde_schubert(u, &r)?)?.wedge(&tilde_schubert(v, &r)?)?;
                let mut rhs = Form::zero(n);
                for (w, c) in structure_constants(u, v, 20) {
                    if !w.in_s_n(n) && is_tilde_eligible(&w, &r) {
                        rhs = rhs.add(&tilde_schubert(&w, &r)?.scale(&c));
                    }
                }
                if !degree_pairings_agree(&lhs, &rhs, (4 - total) as u16, &r)? {
                    ok = false;
                }
            }
        }
        out.push(Check::from(
            "chow/tilde-product-remark",
            ok,
            "ddc(S̃_u) ∧ S̃_v = Σ_{T_n} c_uv^w S̃_w against complementary classes",
        ));

        // associativity at the degree level on 30 seeded random triples
        let mut rng = ChaCha8Rng::seed_from_u64(303);
        let sn = symmetric_group(3);
        let mut ok = true;
        let mut done = 0;
        while done < 30 {
            let u = &sn[rng.gen_range(0..sn.len())];
            let v = &sn[rng.gen_range(0..sn.len())];
            let w = &sn[rng.gen_range(0..sn.len())];
            let total = u.length() + v.length() + w.length();
            if total > 4 {
                continue;
            }
            done += 1;
            let cu = schubert_class(u, &r)?;
            let cv = schubert_class(v, &r)?;
            let cw = schubert_class(w, &r)?;
            let left = multiply(&multiply(&cu, &cv)?, &cw)?;
            let right = multiply(&cu, &multiply(&cv, &cw)?)?;
            let want = (4 - total) as u16;
            let mut exps = vec![0u16; 3];
            loop {
                if exps.iter().map(|&e| e as u32).sum::<u32>() == want as u32 {
                    let g = monomial_class(&exps, &r)?;
                    let a = arithmetic_degree(&multiply(&left, &g)?)?;
                    let b = arithmetic_degree(&multiply(&right, &g)?)?;
                    if a != b {
                        ok = false;
                    }
                }
                let mut t = 0;
                loop {
                    if t == 3 {
                        break;
                    }
                    if exps[t] < want {
                        exps[t] += 1;
                        break;
                    }
                    exps[t] = 0;
                    t += 1;
                }
                if t == 3 {
                    break;
                }
            }
        }
        out.push(Check::from(
            "chow/associativity",
            ok,
            "(AB)C = A(BC) at the degree level on 30 random triples",
        ));

        // partial flags cohere with the complete flag under pullback
        let mut ok = true;
        for ranks in [vec![1u32, 3], vec![2, 3]] {
            let rp = FlagType::new(ranks)?;
            let members: Vec<Permutation> = symmetric_group(3)
                .into_iter()
                .filter(|w| is_r_permutation(w, &rp))
                .collect();
            for u in &members {
                for v in &members {
                    let total = u.length() + v.length();
                    if total > 4 {
                        continue;
                    }
                    let cu = schubert_class(u, &rp)?;
                    let cv = schubert_class(v, &rp)?;
                    let via_partial = pullback_to_complete(&multiply(&cu, &cv)?)?;
                    let via_complete =
                        multiply(&pullback_to_complete(&cu)?, &pullback_to_complete(&cv)?)?;
                    let want = (4 - total) as u16;
                    let mut exps = vec![0u16; 3];
                    loop {
                        if exps.iter().map(|&e| e as u32).sum::<u32>() == want as u32 {
                            let g = monomial_class(&exps, &r)?;
                            let a = arithmetic_degree(&multiply(&via_partial, &g)?)?;
                            let b = arithmetic_degree(&multiply(&via_complete, &g)?)?;
                            if a != b {
                                ok = false;
                            }
                        }
                        let mut t = 0;
                        loop {
                            if t == 3 {
                                break;
                            }
                            if exps[t] < want {
                                exps[t] += 1;
                                break;
                            }
                            exps[t] = 0;
                            t += 1;
                        }
                        if t == 3 {
                            break;
                        }
                    }
                }
            }
        }
        out.push(Check::from(
            "chow/partial-flag-coherence",
            ok,
            "partial-model products agree with the complete flag under pullback",
        ));
    }
    Ok(out)
}

fn degree_pairings_agree(a: &Form, b: &Form, deg: u16, r: &FlagType) -> Result<bool> {
    let n = r.n();
    let mut exps = vec![0u16; n as usize];
    loop {
        if exps.iter().map(|&e| e as u32).sum::<u32>() == deg as u32 {
            let g = monomial_class(&exps, r)?;
            let x = arithmetic_degree(&multiply(&include_form(a, r)?, &g)?)?;
            let y = arithmetic_degree(&multiply(&include_form(b, r)?, &g)?)?;
            if x != y {
                return Ok(false);
            }
        }
        let mut t = 0;
        loop {
            if t == n as usize {
                break;
            }
            if exps[t] < deg {
                exps[t] += 1;
                break;
            }
            exps[t] = 0;
            t += 1;
        }
        if t == n as usize {
            break;
        }
    }
    let _ = ArithmeticClass::unit(r);
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_suites_pass() {
        for suite in ["perm", "poly", "forms", "bcform"] {
            for check in run_suite(suite, 3).unwrap() {
                assert!(check.passed, "{}: {}", check.name, check.detail);
            }
        }
    }

    #[test]
    fn chow_suite_at_n3() {
        let checks = run_suite("chow", 3).unwrap();
        for check in &checks {
            if check.name == "chow/reference-table" {
                // the printed table disagrees with its own displayed
                // representatives on six entries; the suite reports this
                assert!(!check.passed);
                assert!(check.detail.contains("6 of 15"));
            } else {
                assert!(check.passed, "{}: {}", check.name, check.detail);
            }
        }
    }

    #[test]
    fn unknown_suite_is_rejected() {
        assert!(run_suite("nope", 2).is_err());
    }
}

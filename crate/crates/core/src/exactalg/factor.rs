//! Univariate factorization over ℚ.
//!
//! Squarefree decomposition (Yun), then per squarefree part a Zassenhaus
//! round: factor mod a small prime, Hensel-lift each modular factor to a
//! precision past the Mignotte bound, and recombine subsets.  Lifting is
//! capped at degree 13; larger rootless parts report an explicit
//! "factorization incomplete" error.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::cpoly::CPoly;
use super::Rat;
use crate::error::{CoreError, Result};
use crate::mono::Mono;

pub const ZASSENHAUS_DEGREE_CAP: usize = 13;

/// Dense integer polynomial, lowest coefficient first, trimmed.
type ZPoly = Vec<BigInt>;

fn trim(mut p: ZPoly) -> ZPoly {
    while p.last().map(|c| c.is_zero()).unwrap_or(false) {
        p.pop();
    }
    p
}

fn deg(p: &ZPoly) -> usize {
    p.len().saturating_sub(1)
}

fn zmul(a: &ZPoly, b: &ZPoly) -> ZPoly {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, ai) in a.iter().enumerate() {
        for (j, bj) in b.iter().enumerate() {
            out[i + j] += ai * bj;
        }
    }
    trim(out)
}

fn zcontent(p: &ZPoly) -> BigInt {
    let mut g = BigInt::zero();
    for c in p {
        g = g.gcd(c);
        if g.is_one() {
            break;
        }
    }
    g
}

fn zprimitive(p: ZPoly) -> ZPoly {
    let mut g = zcontent(&p);
    if g.is_zero() {
        return p;
    }
    if p.last().map(|c| c.is_negative()).unwrap_or(false) {
        g = -g;
    }
    if g.is_one() {
        return p;
    }
    p.into_iter().map(|c| c / &g).collect()
}

/// Exact division in ℤ[x]; `None` when not exact.
fn zdiv_exact(a: &ZPoly, b: &ZPoly) -> Option<ZPoly> {
    if b.is_empty() {
        return None;
    }
    if a.is_empty() {
        return Some(vec![]);
    }
    if a.len() < b.len() {
        return None;
    }
    let mut rem = a.clone();
    let mut quot = vec![BigInt::zero(); a.len() - b.len() + 1];
    let lb = b.last().unwrap();
    for i in (0..quot.len()).rev() {
        let c = &rem[i + b.len() - 1];
        if c.is_zero() {
            continue;
        }
        let (q, r) = c.div_rem(lb);
        if !r.is_zero() {
            return None;
        }
        quot[i] = q;
        for (j, bj) in b.iter().enumerate() {
            let sub = &quot[i] * bj;
            rem[i + j] -= sub;
        }
    }
    if rem.iter().any(|c| !c.is_zero()) {
        return None;
    }
    Some(trim(quot))
}

fn zderiv(p: &ZPoly) -> ZPoly {
    if p.len() <= 1 {
        return vec![];
    }
    trim(
        p.iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * BigInt::from(i))
            .collect(),
    )
}

/// Primitive gcd in ℤ[x] via monic Euclid over ℚ.
fn zgcd(a: &ZPoly, b: &ZPoly) -> ZPoly {
    if a.is_empty() {
        return zprimitive(b.clone());
    }
    if b.is_empty() {
        return zprimitive(a.clone());
    }
    let to_q = |p: &ZPoly| -> Vec<Rat> { p.iter().map(|c| Rat::from(c.clone())).collect() };
    let mut x = to_q(a);
    let mut y = to_q(b);
    let qtrim = |p: &mut Vec<Rat>| {
        while p.last().map(|c| c.is_zero()).unwrap_or(false) {
            p.pop();
        }
    };
    qtrim(&mut x);
    qtrim(&mut y);
    while !y.is_empty() {
        // x mod y
        let ly = y.last().unwrap().clone();
        while x.len() >= y.len() && !x.is_empty() {
            let c = x.last().unwrap() / &ly;
            let shift = x.len() - y.len();
            for (j, yj) in y.iter().enumerate() {
                let sub = &c * yj;
                x[shift + j] -= sub;
            }
            qtrim(&mut x);
        }
        std::mem::swap(&mut x, &mut y);
    }
    // clear denominators, primitive part
    let mut den = BigInt::one();
    for c in &x {
        den = den.lcm(c.denom());
    }
    let z: ZPoly = x
        .iter()
        .map(|c| (c * Rat::from(den.clone())).to_integer())
        .collect();
    zprimitive(trim(z))
}

/// Yun's squarefree decomposition of a primitive polynomial.
fn squarefree_parts(f: &ZPoly) -> Vec<(ZPoly, u32)> {
    let df = zderiv(f);
    let a0 = zgcd(f, &df);
    if deg(&a0) == 0 {
        return vec![(f.clone(), 1)];
    }
    let mut out = Vec::new();
    let mut b = zdiv_exact(f, &a0).expect("gcd divides");
    let mut c = zdiv_exact(&df, &a0).expect("gcd divides");
    let mut i = 1u32;
    loop {
        let db = zderiv(&b);
        let d = trim(
            (0..c.len().max(db.len()))
                .map(|k| {
                    let x = c.get(k).cloned().unwrap_or_else(BigInt::zero);
                    let y = db.get(k).cloned().unwrap_or_else(BigInt::zero);
                    x - y
                })
                .collect(),
        );
        let a = zgcd(&b, &d);
        if deg(&a) > 0 {
            out.push((zprimitive(a.clone()), i));
        }
        b = zdiv_exact(&b, &a).expect("squarefree step");
        c = zdiv_exact(&d, &a).expect("squarefree step");
        i += 1;
        if deg(&b) == 0 {
            break;
        }
    }
    out
}

// --- arithmetic mod p ------------------------------------------------------

fn pmod(c: &BigInt, p: &BigInt) -> BigInt {
    let r = c.mod_floor(p);
    r
}

fn ptrim(mut f: ZPoly, p: &BigInt) -> ZPoly {
    for c in f.iter_mut() {
        *c = pmod(c, p);
    }
    trim(f)
}

fn pinv(a: &BigInt, p: &BigInt) -> BigInt {
    // extended Euclid
    let (mut r0, mut r1) = (p.clone(), pmod(a, p));
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while !r1.is_zero() {
        let q = &r0 / &r1;
        let r = &r0 - &q * &r1;
        r0 = std::mem::replace(&mut r1, r);
        let t = &t0 - &q * &t1;
        t0 = std::mem::replace(&mut t1, t);
    }
    pmod(&t0, p)
}

fn pmul(a: &ZPoly, b: &ZPoly, p: &BigInt) -> ZPoly {
    ptrim(zmul(a, b), p)
}

fn psub(a: &ZPoly, b: &ZPoly, p: &BigInt) -> ZPoly {
    let n = a.len().max(b.len());
    ptrim(
        (0..n)
            .map(|k| {
                let x = a.get(k).cloned().unwrap_or_else(BigInt::zero);
                let y = b.get(k).cloned().unwrap_or_else(BigInt::zero);
                x - y
            })
            .collect(),
        p,
    )
}

fn padd(a: &ZPoly, b: &ZPoly, p: &BigInt) -> ZPoly {
    let n = a.len().max(b.len());
    ptrim(
        (0..n)
            .map(|k| {
                let x = a.get(k).cloned().unwrap_or_else(BigInt::zero);
                let y = b.get(k).cloned().unwrap_or_else(BigInt::zero);
                x + y
            })
            .collect(),
        p,
    )
}

/// Division with remainder mod p; divisor need not be monic.
fn pdivmod(a: &ZPoly, b: &ZPoly, p: &BigInt) -> (ZPoly, ZPoly) {
    let mut rem = ptrim(a.clone(), p);
    if b.is_empty() {
        panic!("division by zero poly");
    }
    let binv = pinv(b.last().unwrap(), p);
    let mut quot = vec![BigInt::zero(); rem.len().saturating_sub(b.len() - 1)];
    while rem.len() >= b.len() && !rem.is_empty() {
        let c = pmod(&(rem.last().unwrap() * &binv), p);
        let shift = rem.len() - b.len();
        quot[shift] = c.clone();
        for (j, bj) in b.iter().enumerate() {
            let sub = &c * bj;
            rem[shift + j] = pmod(&(&rem[shift + j] - sub), p);
        }
        rem = trim(rem);
    }
    (ptrim(quot, p), rem)
}

fn pgcd(a: &ZPoly, b: &ZPoly, p: &BigInt) -> ZPoly {
    let mut x = ptrim(a.clone(), p);
    let mut y = ptrim(b.clone(), p);
    while !y.is_empty() {
        let (_, r) = pdivmod(&x, &y, p);
        x = std::mem::replace(&mut y, r);
    }
    if x.is_empty() {
        return x;
    }
    // monicize
    let inv = pinv(x.last().unwrap(), p);
    ptrim(x.iter().map(|c| c * &inv).collect(), p)
}

/// Extended Euclid mod p: returns (s, t) with s·a + t·b ≡ 1.
fn pbezout(a: &ZPoly, b: &ZPoly, p: &BigInt) -> (ZPoly, ZPoly) {
    let (mut r0, mut r1) = (ptrim(a.clone(), p), ptrim(b.clone(), p));
    let (mut s0, mut s1) = (vec![BigInt::one()], vec![]);
    let (mut t0, mut t1) = (vec![], vec![BigInt::one()]);
    while !r1.is_empty() {
        let (q, r) = pdivmod(&r0, &r1, p);
        r0 = std::mem::replace(&mut r1, r);
        let ns = psub(&s0, &pmul(&q, &s1, p), p);
        s0 = std::mem::replace(&mut s1, ns);
        let nt = psub(&t0, &pmul(&q, &t1, p), p);
        t0 = std::mem::replace(&mut t1, nt);
    }
    // r0 is a unit (a, b coprime)
    let inv = pinv(&r0[0], p);
    let s = ptrim(s0.iter().map(|c| c * &inv).collect(), p);
    let t = ptrim(t0.iter().map(|c| c * &inv).collect(), p);
    (s, t)
}

fn ppowmod(base: &ZPoly, e: &BigUint, m: &ZPoly, p: &BigInt) -> ZPoly {
    let mut result = vec![BigInt::one()];
    let mut b = pdivmod(base, m, p).1;
    for bit in e.to_radix_le(2) {
        if bit == 1 {
            result = pdivmod(&pmul(&result, &b, p), m, p).1;
        }
        b = pdivmod(&pmul(&b, &b, p), m, p).1;
    }
    result
}

/// Monic squarefree factorization mod p into irreducibles.
fn factor_mod_p(f: &ZPoly, p: &BigInt) -> Vec<ZPoly> {
    // distinct degree
    let mut fstar = {
        let inv = pinv(f.last().unwrap(), p);
        ptrim(f.iter().map(|c| c * &inv).collect(), p)
    };
    let x = vec![BigInt::zero(), BigInt::one()];
    let mut h = x.clone();
    let mut dd: Vec<(ZPoly, usize)> = Vec::new();
    let mut i = 1usize;
    while deg(&fstar) >= 2 * i {
        h = ppowmod(&h, &p.to_biguint().unwrap(), &fstar, p);
        let g = pgcd(&psub(&h, &x, p), &fstar, p);
        if deg(&g) > 0 {
            dd.push((g.clone(), i));
            fstar = pdivmod(&fstar, &g, p).0;
            h = pdivmod(&h, &fstar, p).1;
        }
        i += 1;
    }
    if deg(&fstar) > 0 {
        let d = deg(&fstar);
        dd.push((fstar, d));
    }
    // equal degree (Cantor–Zassenhaus) with a deterministic trial sequence
    let mut out = Vec::new();
    for (g, d) in dd {
        split_equal_degree(&g, d, p, &mut out);
    }
    out.sort();
    out
}

fn split_equal_degree(g: &ZPoly, d: usize, p: &BigInt, out: &mut Vec<ZPoly>) {
    if deg(g) == d {
        out.push(g.clone());
        return;
    }
    let e = (p.to_biguint().unwrap().pow(d as u32) - BigUint::one()) / BigUint::from(2u32);
    let mut counter = BigInt::one();
    loop {
        // deterministic trial element: x + c, then low-degree polynomials
        let a: ZPoly = {
            let c = pmod(&counter, p);
            let mut a = vec![c, BigInt::one()];
            // mix in a quadratic term occasionally for stubborn splits
            if (&counter % BigInt::from(5)) == BigInt::from(4) {
                a.push(pmod(&(&counter / BigInt::from(5) + BigInt::one()), p));
            }
            trim(a)
        };
        counter += 1;
        if a.is_empty() {
            continue;
        }
        let b = psub(&ppowmod(&a, &e, g, p), &[BigInt::one()][..].to_vec(), p);
        let t = pgcd(&b, g, p);
        if deg(&t) > 0 && deg(&t) < deg(g) {
            let q = pdivmod(g, &t, p).0;
            split_equal_degree(&t, d, p, out);
            split_equal_degree(&q, d, p, out);
            return;
        }
        if counter > BigInt::from(10_000) {
            panic!("equal-degree split failed to converge");
        }
    }
}

/// Symmetric representative in (−m/2, m/2].
fn symm(c: &BigInt, m: &BigInt) -> BigInt {
    let r = c.mod_floor(m);
    if &r * 2 > *m {
        r - m
    } else {
        r
    }
}

/// Quadratic two-factor Hensel lifting: from f ≡ g·h (mod p), h monic,
/// lift until the modulus reaches `target`; returns (g, h, modulus).
fn hensel_pair(f: &ZPoly, g0: &ZPoly, h0: &ZPoly, p: &BigInt, target: &BigInt) -> (ZPoly, ZPoly, BigInt) {
    let (mut s, mut t) = pbezout(g0, h0, p);
    let mut g = g0.clone();
    let mut h = h0.clone();
    let mut m = p.clone();
    while &m < target {
        let m2 = &m * &m;
        let e = psub(f, &zmul(&g, &h), &m2);
        let (q, r) = pdivmod(&pmul(&s, &e, &m2), &h, &m2);
        g = padd(&g, &padd(&pmul(&t, &e, &m2), &pmul(&q, &g, &m2), &m2), &m2);
        h = padd(&h, &r, &m2);
        // lift the Bezout pair
        let e2 = psub(&padd(&pmul(&s, &g, &m2), &pmul(&t, &h, &m2), &m2), &[BigInt::one()][..].to_vec(), &m2);
        let (q2, r2) = pdivmod(&pmul(&s, &e2, &m2), &h, &m2);
        s = psub(&s, &r2, &m2);
        t = psub(&t, &padd(&pmul(&t, &e2, &m2), &pmul(&q2, &g, &m2), &m2), &m2);
        m = m2;
    }
    (g, h, m)
}

/// Zassenhaus factorization of a primitive squarefree polynomial of degree
/// ≥ 2 into primitive irreducible factors over ℤ.
fn zassenhaus(f: &ZPoly) -> Vec<ZPoly> {
    let n = deg(f);
    let b = f.last().unwrap().clone();
    // choose a prime: lc nonzero mod p and f squarefree mod p
    let primes: [u32; 15] = [3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53];
    let mut chosen = None;
    for q in primes {
        let p = BigInt::from(q);
        if pmod(&b, &p).is_zero() {
            continue;
        }
        let fp = ptrim(f.clone(), &p);
        if deg(&fp) != n {
            continue;
        }
        let d = pgcd(&fp, &zderiv(&fp), &p);
        if deg(&d) == 0 {
            chosen = Some(p);
            break;
        }
    }
    let p = chosen.expect("no suitable prime for Zassenhaus");
    let modfac = factor_mod_p(f, &p);
    if modfac.len() == 1 {
        return vec![zprimitive(f.clone())];
    }
    // Mignotte-style bound on coefficients of lc-adjusted factors
    let norm1: BigInt = f.iter().map(|c| c.abs()).sum();
    let bound = (BigInt::one() << (n + 2)) * norm1 * b.abs();
    let target = &bound * 2 + 1;
    // lift each modular factor individually against its cofactor
    let mut lifted: Vec<ZPoly> = Vec::new();
    let mut modulus = p.clone();
    for gi in &modfac {
        let mut cof = vec![pmod(&b, &p)];
        for gj in &modfac {
            if gj != gi {
                cof = pmul(&cof, gj, &p);
            }
        }
        let (_, h, m) = hensel_pair(f, &cof, gi, &p, &target);
        modulus = m;
        lifted.push(h);
    }
    // subset recombination
    let mut remaining: Vec<ZPoly> = lifted;
    let mut fcur = f.clone();
    let mut out: Vec<ZPoly> = Vec::new();
    let mut s = 1usize;
    'outer: while 2 * s <= remaining.len() {
        let idxs: Vec<usize> = (0..remaining.len()).collect();
        for combo in combinations(&idxs, s) {
            let bc = fcur.last().unwrap().clone();
            let mut prod = vec![bc.clone()];
            for &i in &combo {
                prod = zmul(&prod, &remaining[i]);
                for c in prod.iter_mut() {
                    *c = c.mod_floor(&modulus);
                }
            }
            let cand: ZPoly = trim(prod.iter().map(|c| symm(c, &modulus)).collect());
            let cand = zprimitive(cand);
            if cand.len() <= 1 {
                continue;
            }
            if let Some(q) = zdiv_exact(&fcur, &cand) {
                out.push(cand);
                fcur = zprimitive(q);
                let mut keep = Vec::new();
                for (i, g) in remaining.drain(..).enumerate() {
                    if !combo.contains(&i) {
                        keep.push(g);
                    }
                }
                remaining = keep;
                continue 'outer;
            }
        }
        s += 1;
    }
    if deg(&fcur) > 0 {
        out.push(zprimitive(fcur));
    }
    out.sort();
    out
}

fn combinations(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    let n = items.len();
    let mut out = Vec::new();
    if k == 0 || k > n {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.iter().map(|&i| items[i]).collect());
        let mut i = k as isize - 1;
        while i >= 0 && idx[i as usize] == n - k + i as usize {
            i -= 1;
        }
        if i < 0 {
            break;
        }
        let i = i as usize;
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
    out
}

/// Content-free irreducible factorization over ℚ.
///
/// Returns the rational content and the primitive irreducible factors with
/// multiplicities; content · Π factorᵉ = f.
pub fn factor_univariate(f: &CPoly) -> Result<(Rat, Vec<(CPoly, u32)>)> {
    if f.is_zero() {
        return Err(CoreError::InvalidArgument("factor of zero".into()));
    }
    if let Some(c) = f.constant_value() {
        if !c.is_zero() {
            return Ok((c, vec![]));
        }
    }
    let support = f.support();
    if support.len() != 1 {
        return Err(CoreError::InvalidArgument(
            "factor_univariate requires a univariate input".into(),
        ));
    }
    let slot = support[0];
    let vars = f.vars().clone();
    let name = vars.name(slot).to_string();
    let degree = f.degree_in(&name).unwrap() as usize;

    // dense primitive integer form
    let mut den = BigInt::one();
    for (_, c) in f.terms() {
        den = den.lcm(c.denom());
    }
    let mut dense: ZPoly = vec![BigInt::zero(); degree + 1];
    for (m, c) in f.terms() {
        dense[m.exp(slot) as usize] = (c * Rat::from(den.clone())).to_integer();
    }
    let prim = zprimitive(dense.clone());
    // content = f / prim as a scalar
    let content = {
        let c0 = zcontent(&dense);
        let sign = if dense.last().unwrap().is_negative() != prim.last().unwrap().is_negative() {
            -BigInt::one()
        } else {
            BigInt::one()
        };
        Rat::new(c0 * sign, den)
    };

    let mut factors: Vec<(ZPoly, u32)> = Vec::new();
    for (part, mult) in squarefree_parts(&prim) {
        let d = deg(&part);
        if d == 0 {
            continue;
        }
        if d == 1 {
            factors.push((part, mult));
            continue;
        }
        if d > ZASSENHAUS_DEGREE_CAP {
            return Err(CoreError::FactorIncomplete(d, ZASSENHAUS_DEGREE_CAP));
        }
        for irr in zassenhaus(&part) {
            factors.push((irr, mult));
        }
    }
    factors.sort();

    let to_cpoly = |z: &ZPoly| -> CPoly {
        let terms = z
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(e, c)| {
                let mut m = Mono::one(vars.len());
                m.set_exp(slot, e as u16);
                (m, Rat::from(c.clone()))
            })
            .collect();
        CPoly::from_terms(&vars, terms)
    };
    Ok((
        content,
        factors.into_iter().map(|(z, e)| (to_cpoly(&z), e)).collect(),
    ))
}

fn to_dense_in(f: &CPoly, name: &str) -> Result<(ZPoly, usize)> {
    let vars = f.vars();
    let slot = vars
        .index_of(name)
        .ok_or_else(|| CoreError::InvalidArgument(format!("unknown variable {name}")))?;
    let degree = f.degree_in(name).unwrap_or(0) as usize;
    let mut den = BigInt::one();
    for (_, c) in f.terms() {
        den = den.lcm(c.denom());
    }
    let mut dense: ZPoly = vec![BigInt::zero(); degree + 1];
    for (m, c) in f.terms() {
        for i in 0..m.arity() {
            if i != slot && m.exp(i) > 0 {
                return Err(CoreError::InvalidArgument(
                    "polynomial is not univariate".into(),
                ));
            }
        }
        dense[m.exp(slot) as usize] = (c * Rat::from(den.clone())).to_integer();
    }
    Ok((trim(dense), slot))
}

fn from_dense(z: &ZPoly, template: &CPoly, slot: usize) -> CPoly {
    let vars = template.vars();
    let terms = z
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(e, c)| {
            let mut m = Mono::one(vars.len());
            m.set_exp(slot, e as u16);
            (m, Rat::from(c.clone()))
        })
        .collect();
    CPoly::from_terms(vars, terms)
}

/// Primitive gcd of two univariate polynomials in the same variable.
pub fn univariate_gcd(a: &CPoly, b: &CPoly) -> Result<CPoly> {
    if a.is_zero() {
        return Ok(b.clone());
    }
    if b.is_zero() {
        return Ok(a.clone());
    }
    let name = {
        let sa = a.support();
        let sb = b.support();
        let slot = sa.first().or(sb.first()).copied();
        match slot {
            None => return Ok(CPoly::one(a.vars())),
            Some(s) => a.vars().name(s).to_string(),
        }
    };
    let (da, slot) = to_dense_in(a, &name)?;
    let (db, _) = to_dense_in(b, &name)?;
    Ok(from_dense(&zgcd(&da, &db), a, slot))
}

/// Least common multiple of two univariate polynomials, primitive form.
pub fn univariate_lcm(a: &CPoly, b: &CPoly) -> Result<CPoly> {
    if a.is_zero() || b.is_zero() {
        return Ok(CPoly::zero(a.vars()));
    }
    let g = univariate_gcd(a, b)?;
    let prod = a.mul_ref(b)?;
    prod.exact_div(&g)
        .ok_or_else(|| CoreError::ContractFailure("gcd does not divide the product".into()))
}

/// Integer roots of a univariate polynomial (from its linear factors).
pub fn integer_roots(f: &CPoly) -> Result<Vec<BigInt>> {
    let (_, factors) = factor_univariate(f)?;
    let mut roots = Vec::new();
    for (g, _) in factors {
        let support = g.support();
        if support.len() != 1 {
            continue;
        }
        let name = g.vars().name(support[0]).to_string();
        if g.degree_in(&name) == Some(1) {
            let coeffs = g.coeffs_in(&name)?;
            let c1 = coeffs.get(&1).and_then(|p| p.constant_value()).unwrap();
            let c0 = coeffs
                .get(&0)
                .and_then(|p| p.constant_value())
                .unwrap_or_else(Rat::zero);
            let root = -c0 / c1;
            if root.denom().is_one() {
                roots.push(root.to_integer());
            }
        }
    }
    roots.sort();
    roots.dedup();
    Ok(roots)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse_cpoly;
    use crate::vars::VarSet;

    fn poly(text: &str) -> CPoly {
        let vs = VarSet::commutative(&["s"]);
        parse_cpoly(&vs, text).unwrap()
    }

    fn refactor(content: &Rat, factors: &[(CPoly, u32)]) -> CPoly {
        let vs = factors
            .first()
            .map(|(f, _)| f.vars().clone())
            .unwrap_or_else(|| VarSet::commutative(&["s"]));
        let mut acc = CPoly::constant(&vs, content.clone());
        for (f, e) in factors {
            acc = acc.mul_ref(&f.pow(*e)).unwrap();
        }
        acc
    }

    #[test]
    fn irreducible_quadratic() {
        let f = poly("s^2-2");
        let (c, fs) = factor_univariate(&f).unwrap();
        assert_eq!(fs.len(), 1);
        assert_eq!(fs[0], (poly("s^2-2"), 1));
        assert_eq!(refactor(&c, &fs), f);
    }

    #[test]
    fn split_linear() {
        let f = poly("s^2+2*s");
        let (c, fs) = factor_univariate(&f).unwrap();
        assert_eq!(fs, vec![(poly("s"), 1), (poly("s+2"), 1)]);
        assert_eq!(refactor(&c, &fs), f);
    }

    #[test]
    fn non_monic_split() {
        let f = poly("6*s^2+19*s+10");
        let (c, mut fs) = factor_univariate(&f).unwrap();
        fs.sort_by_key(|(p, _)| p.to_string());
        assert_eq!(fs, vec![(poly("2*s+5"), 1), (poly("3*s+2"), 1)]);
        assert_eq!(refactor(&c, &fs), f);
    }

    #[test]
    fn quartic_two_quadratics() {
        let f = poly("(s^2+1)*(s^2+2)");
        let (c, mut fs) = factor_univariate(&f).unwrap();
        fs.sort_by_key(|(p, _)| p.to_string());
        assert_eq!(fs, vec![(poly("s^2+1"), 1), (poly("s^2+2"), 1)]);
        assert_eq!(refactor(&c, &fs), f);
    }

    #[test]
    fn multiplicities_and_content() {
        let f = poly("4/3*s^3*(s+1)^2*(s-3/2)");
        let (c, mut fs) = factor_univariate(&f).unwrap();
        fs.sort_by_key(|(p, _)| p.to_string());
        assert_eq!(
            fs,
            vec![
                (poly("2*s-3"), 1),
                (poly("s"), 3),
                (poly("s+1"), 2),
            ]
        );
        assert_eq!(refactor(&c, &fs), f);
    }

    #[test]
    fn bms_degree_13_shape() {
        // the degree-13 product arising from the variety fixture
        let f = poly("(s+1)^3*s^2*(2*s+1)^2*(3*s+2)^2*(3*s+1)^2*(6*s+5)*(6*s+1)");
        let (c, fs) = factor_univariate(&f).unwrap();
        let total: u32 = fs
            .iter()
            .map(|(g, e)| g.degree_in("s").unwrap() as u32 * e)
            .sum();
        assert_eq!(total, 13);
        assert_eq!(refactor(&c, &fs), f);
    }

    #[test]
    fn integer_roots_examples() {
        let r = integer_roots(&poly("s^3-3*s^2+2*s")).unwrap();
        assert_eq!(r, vec![BigInt::from(0), BigInt::from(1), BigInt::from(2)]);
        let r = integer_roots(&poly("2*s-1")).unwrap();
        assert!(r.is_empty());
    }

    #[test]
    fn degree_cap() {
        // rootless of degree 14: beyond the lifting cap
        let f = poly("s^14+s+7");
        assert!(matches!(
            factor_univariate(&f),
            Err(CoreError::FactorIncomplete(14, _))
        ));
    }

    #[test]
    fn univariate_gcd_lcm() {
        let a = poly("s^2-1");
        let b = poly("s^2+2*s+1");
        assert_eq!(univariate_gcd(&a, &b).unwrap(), poly("s+1"));
        assert_eq!(univariate_lcm(&a, &b).unwrap(), poly("(s-1)*(s+1)^2"));
    }
}

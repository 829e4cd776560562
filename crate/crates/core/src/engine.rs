//! Shared Groebner engine.
//!
//! Works over free modules D^r where D is a Weyl algebra with central
//! variables (the fully commutative case is r = 1 with no Weyl pairs).
//! Polynomials are kept as term lists sorted descending under the active
//! module order, with primitive integer coefficients; reductions are
//! fraction-free.  Orders with negative weights (V-orders) are handled by
//! Buchberger with one homogenization variable: the product rule picks up
//! h² per contraction, all elements stay degree-homogeneous upstairs, and
//! the result is dehomogenized at h = 1.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{CoreError, Result};
use crate::mono::Mono;
use crate::order::{ModOrd, OrdLayer};
use crate::trace::gb_trace;
use crate::vars::{CentralClass, Var, VarKind, VarSet};

/// Integer term list sorted descending under the active order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct EPoly {
    pub terms: Vec<(u32, Mono, BigInt)>,
}

/// Rational term list sorted descending under the active order.
#[derive(Clone, Debug, PartialEq)]
pub(crate) struct RPolyV {
    pub terms: Vec<(u32, Mono, BigRational)>,
}

/// Scalar rational operator, used for quotient and syzygy bookkeeping.
pub(crate) type RSc = std::collections::BTreeMap<Mono, BigRational>;

impl EPoly {
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    pub fn lead(&self) -> &(u32, Mono, BigInt) {
        &self.terms[0]
    }
}

impl RPolyV {
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

pub(crate) struct Engine {
    pub vars: Arc<VarSet>,
    pub ord: ModOrd,
    /// (coordinate slot, derivation slot) Weyl pairs.
    wpairs: Vec<(usize, usize)>,
    homog: Option<usize>,
    commutative: bool,
}

fn binom_times_fact(n: u16, m: u16, k: u16) -> BigInt {
    // C(n,k) * C(m,k) * k!
    let mut r = BigInt::one();
    for i in 0..k {
        r *= BigInt::from(n - i);
    }
    let mut c2 = BigInt::one();
    for i in 0..k {
        c2 *= BigInt::from(m - i);
        c2 /= BigInt::from(i + 1);
    }
    r * c2
}

impl Engine {
    pub fn new(vars: Arc<VarSet>, ord: ModOrd) -> Self {
        let wpairs = vars.weyl_pairs();
        let homog = vars.homog_slot();
        let commutative = wpairs.is_empty();
        Engine {
            vars,
            ord,
            wpairs,
            homog,
            commutative,
        }
    }

    fn cmp_terms(&self, a: (u32, &Mono), b: (u32, &Mono)) -> Ordering {
        self.ord.cmp(a, b)
    }

    /// Sort descending and combine equal keys; drops zeros.
    pub fn normalize_int(&self, mut terms: Vec<(u32, Mono, BigInt)>) -> EPoly {
        terms.sort_unstable_by(|a, b| self.cmp_terms((b.0, &b.1), (a.0, &a.1)));
        let mut out: Vec<(u32, Mono, BigInt)> = Vec::with_capacity(terms.len());
        for (c, m, a) in terms {
            if let Some(last) = out.last_mut() {
                if last.0 == c && last.1 == m {
                    last.2 += a;
                    if last.2.is_zero() {
                        out.pop();
                    }
                    continue;
                }
            }
            if !a.is_zero() {
                out.push((c, m, a));
            }
        }
        EPoly { terms: out }
    }

    pub fn normalize_rat(&self, mut terms: Vec<(u32, Mono, BigRational)>) -> RPolyV {
        terms.sort_unstable_by(|a, b| self.cmp_terms((b.0, &b.1), (a.0, &a.1)));
        let mut out: Vec<(u32, Mono, BigRational)> = Vec::with_capacity(terms.len());
        for (c, m, a) in terms {
            if let Some(last) = out.last_mut() {
                if last.0 == c && last.1 == m {
                    last.2 += a;
                    if last.2.is_zero() {
                        out.pop();
                    }
                    continue;
                }
            }
            if !a.is_zero() {
                out.push((c, m, a));
            }
        }
        RPolyV { terms: out }
    }

    /// Normal-ordered product of monomials, `left * right`.
    /// Derivations of `left` contract against coordinates of `right`;
    /// each contraction contributes h² when a homogenization slot exists.
    pub fn mono_mul(&self, left: &Mono, right: &Mono) -> Vec<(Mono, BigInt)> {
        let base = left.mul(right);
        if self.commutative {
            return vec![(base, BigInt::one())];
        }
        let mut acc: Vec<(Mono, BigInt)> = vec![(base, BigInt::one())];
        for &(ci, di) in &self.wpairs {
            let b = left.exp(di);
            let c = right.exp(ci);
            let kmax = b.min(c);
            if kmax == 0 {
                continue;
            }
            let mut next: Vec<(Mono, BigInt)> = Vec::with_capacity(acc.len() * (kmax as usize + 1));
            for (m, coef) in &acc {
                for k in 0..=kmax {
                    let f = binom_times_fact(b, c, k);
                    let mut mm = m.clone();
                    mm.set_exp(ci, mm.exp(ci) - k);
                    mm.set_exp(di, mm.exp(di) - k);
                    if let Some(h) = self.homog {
                        mm.set_exp(h, mm.exp(h) + 2 * k);
                    }
                    next.push((mm, coef * f));
                }
            }
            acc = next;
        }
        acc
    }

    /// `coef * mono * p` with scalar left multiplier.
    pub fn mul_term_int(&self, coef: &BigInt, mono: &Mono, p: &EPoly) -> EPoly {
        let mut terms = Vec::with_capacity(p.terms.len());
        for (c, m, a) in &p.terms {
            for (mm, f) in self.mono_mul(mono, m) {
                terms.push((*c, mm, coef * a * f));
            }
        }
        self.normalize_int(terms)
    }

    pub fn mul_term_rat(&self, coef: &BigRational, mono: &Mono, p: &RPolyV) -> RPolyV {
        let mut terms = Vec::with_capacity(p.terms.len());
        for (c, m, a) in &p.terms {
            for (mm, f) in self.mono_mul(mono, m) {
                terms.push((*c, mm, coef * a * BigRational::from(f)));
            }
        }
        self.normalize_rat(terms)
    }

    pub fn epoly_to_rat(&self, p: &EPoly) -> RPolyV {
        RPolyV {
            terms: p
                .terms
                .iter()
                .map(|(c, m, a)| (*c, m.clone(), BigRational::from(a.clone())))
                .collect(),
        }
    }

    /// Merge two sorted term lists as `a + scale * b`.
    fn add_scaled_int(&self, a: &EPoly, b: &EPoly, scale: &BigInt) -> EPoly {
        let mut out = Vec::with_capacity(a.terms.len() + b.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < a.terms.len() && j < b.terms.len() {
            let ta = &a.terms[i];
            let tb = &b.terms[j];
            match self.cmp_terms((ta.0, &ta.1), (tb.0, &tb.1)) {
                Ordering::Greater => {
                    out.push(ta.clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push((tb.0, tb.1.clone(), scale * &tb.2));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = &ta.2 + scale * &tb.2;
                    if !c.is_zero() {
                        out.push((ta.0, ta.1.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a.terms[i..]);
        for tb in &b.terms[j..] {
            out.push((tb.0, tb.1.clone(), scale * &tb.2));
        }
        EPoly { terms: out }
    }

    fn add_scaled_rat(&self, a: &RPolyV, b: &RPolyV, scale: &BigRational) -> RPolyV {
        let mut out = Vec::with_capacity(a.terms.len() + b.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < a.terms.len() && j < b.terms.len() {
            let ta = &a.terms[i];
            let tb = &b.terms[j];
            match self.cmp_terms((ta.0, &ta.1), (tb.0, &tb.1)) {
                Ordering::Greater => {
                    out.push(ta.clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push((tb.0, tb.1.clone(), scale * &tb.2));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = &ta.2 + scale * &tb.2;
                    if !c.is_zero() {
                        out.push((ta.0, ta.1.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a.terms[i..]);
        for tb in &b.terms[j..] {
            out.push((tb.0, tb.1.clone(), scale * &tb.2));
        }
        RPolyV { terms: out }
    }

    /// Strip integer content and make the leading coefficient positive.
    pub fn make_primitive(&self, p: &mut EPoly) -> BigRational {
        if p.terms.is_empty() {
            return BigRational::one();
        }
        let mut g = BigInt::zero();
        for (_, _, a) in &p.terms {
            g = g.gcd(a);
            if g.is_one() {
                break;
            }
        }
        if p.terms[0].2.is_negative() {
            g = -g;
        }
        if !g.is_one() {
            for t in &mut p.terms {
                t.2 = &t.2 / &g;
            }
        }
        BigRational::from(g)
    }

    fn weight_of(&self, c: u32, m: &Mono) -> i64 {
        match &self.ord.weight {
            Some((w, shifts)) => m.weighted_deg(w) + shifts.get(c as usize).copied().unwrap_or(0),
            None => 0,
        }
    }

    /// Fraction-free full reduction of `f` by `basis`.  With `stop` set,
    /// terms of shifted weight below the threshold are retired unreduced
    /// (partial division for non-well V-orders).
    pub fn reduce_int(&self, f: EPoly, basis: &[EPoly], stop: Option<i64>) -> EPoly {
        self.reduce_int_tracked(f, basis, stop, None).0
    }

    /// As [`reduce_int`], optionally maintaining an expression row: on
    /// return, `λ * f = Σ q_i basis_i + r` where the caller's row has been
    /// updated by the same scalings as `f`, and the per-basis quotients are
    /// accumulated into `quotients` (rational).
    pub fn reduce_int_tracked(
        &self,
        f: EPoly,
        basis: &[EPoly],
        stop: Option<i64>,
        mut quotients: Option<&mut Vec<RSc>>,
    ) -> (EPoly, BigRational) {
        self.reduce_int_capped(f, basis, stop, quotients.take(), None)
    }

    /// As [`reduce_int_tracked`] with an optional step budget; on budget
    /// exhaustion the rest of the work polynomial is retired unreduced.
    pub fn reduce_int_capped(
        &self,
        f: EPoly,
        basis: &[EPoly],
        stop: Option<i64>,
        mut quotients: Option<&mut Vec<RSc>>,
        cap: Option<usize>,
    ) -> (EPoly, BigRational) {
        let mut rem: Vec<(u32, Mono, BigInt)> = Vec::new();
        let mut work = f;
        // λ is the total scaling applied to the original input.
        let mut lambda = BigRational::one();
        let mut steps = 0usize;
        'outer: while !work.is_zero() {
            steps += 1;
            if let Some(c) = cap {
                if steps > c {
                    rem.extend(work.terms.drain(..));
                    break 'outer;
                }
            }
            if steps % 32 == 0 {
                // opportunistic content strip to cap coefficient growth
                let mut g = BigInt::zero();
                for (_, _, a) in work.terms.iter().chain(rem.iter()) {
                    g = g.gcd(a);
                    if g.is_one() {
                        break;
                    }
                }
                if !g.is_one() && !g.is_zero() {
                    for t in &mut work.terms {
                        t.2 = &t.2 / &g;
                    }
                    for t in &mut rem {
                        t.2 = &t.2 / &g;
                    }
                    let rg = BigRational::from(g);
                    if let Some(qt) = quotients.as_deref_mut() {
                        for q in qt.iter_mut() {
                            for v in q.values_mut() {
                                *v /= &rg;
                            }
                        }
                    }
                    lambda /= rg;
                }
            }
            let (c, m, a) = work.lead().clone();
            if let Some(s) = stop {
                if self.weight_of(c, &m) < s {
                    rem.extend(work.terms.drain(..));
                    break 'outer;
                }
            }
            // among the divisors prefer the one with the fewest terms
            let mut hit: Option<usize> = None;
            for (gi, g) in basis.iter().enumerate() {
                if g.is_zero() {
                    continue;
                }
                let (gc, gm, _) = g.lead();
                if *gc == c && gm.divides(&m) {
                    match hit {
                        None => hit = Some(gi),
                        Some(h) => {
                            if g.terms.len() < basis[h].terms.len() {
                                hit = Some(gi);
                            }
                        }
                    }
                }
            }
            match hit {
                None => {
                    let t = work.terms.remove(0);
                    rem.push(t);
                }
                Some(gi) => {
                    let g = &basis[gi];
                    let b = &g.lead().2;
                    let d = a.gcd(b);
                    let scale = b / &d;
                    let mult = &a / &d;
                    if !scale.is_one() {
                        for t in &mut work.terms {
                            t.2 = &t.2 * &scale;
                        }
                        for t in &mut rem {
                            t.2 = &t.2 * &scale;
                        }
                        let rs = BigRational::from(scale.clone());
                        if let Some(qt) = quotients.as_deref_mut() {
                            for q in qt.iter_mut() {
                                for v in q.values_mut() {
                                    *v *= &rs;
                                }
                            }
                        }
                        lambda *= rs;
                    }
                    let q = g.lead().1.div_into(&m);
                    if let Some(qt) = quotients.as_deref_mut() {
                        let qc = BigRational::from(mult.clone());
                        *qt[gi].entry(q.clone()).or_insert_with(BigRational::zero) += qc;
                        qt[gi].retain(|_, v| !v.is_zero());
                    }
                    let sub = self.mul_term_int(&mult, &q, g);
                    work = self.add_scaled_int(&work, &sub, &BigInt::from(-1));
                }
            }
        }
        (EPoly { terms: rem }, lambda)
    }

    /// Exact rational division with quotient tracking.
    /// Returns (quotients, remainder); `P = Σ Q_i basis_i + R`.
    pub fn divide_rat(
        &self,
        f: &RPolyV,
        basis: &[EPoly],
        stop: Option<i64>,
        max_steps: usize,
    ) -> Result<(Vec<RSc>, RPolyV)> {
        let mut quotients: Vec<RSc> = vec![RSc::new(); basis.len()];
        let mut rem: Vec<(u32, Mono, BigRational)> = Vec::new();
        let mut work = f.clone();
        let mut steps = 0usize;
        while !work.is_zero() {
            steps += 1;
            if steps > max_steps {
                return Err(CoreError::ContractFailure(
                    "division step budget exhausted (order is not a well-order?)".into(),
                ));
            }
            let (c, m, a) = work.terms[0].clone();
            if let Some(s) = stop {
                if self.weight_of(c, &m) < s {
                    rem.extend(work.terms.drain(..));
                    break;
                }
            }
            let mut hit = None;
            for (gi, g) in basis.iter().enumerate() {
                if g.is_zero() {
                    continue;
                }
                let (gc, gm, _) = g.lead();
                if *gc == c && gm.divides(&m) {
                    hit = Some(gi);
                    break;
                }
            }
            match hit {
                None => {
                    let t = work.terms.remove(0);
                    rem.push(t);
                }
                Some(gi) => {
                    let g = &basis[gi];
                    let q = g.lead().1.div_into(&m);
                    let qc = &a / BigRational::from(g.lead().2.clone());
                    *quotients[gi].entry(q.clone()).or_insert_with(BigRational::zero) += &qc;
                    let sub = self.mul_term_rat(&qc, &q, &self.epoly_to_rat(g));
                    work = self.add_scaled_rat(&work, &sub, &-BigRational::one());
                }
            }
        }
        for q in &mut quotients {
            q.retain(|_, v| !v.is_zero());
        }
        Ok((quotients, RPolyV { terms: rem }))
    }

    fn spair(&self, f: &EPoly, g: &EPoly) -> (EPoly, (Mono, BigInt), (Mono, BigInt)) {
        let (_, mf, cf) = f.lead();
        let (_, mg, cg) = g.lead();
        let l = mf.lcm(mg);
        let d = cf.gcd(cg);
        let qf = mf.div_into(&l);
        let qg = mg.div_into(&l);
        let af = cg / &d;
        let ag = cf / &d;
        let a = self.mul_term_int(&af, &qf, f);
        let b = self.mul_term_int(&ag, &qg, g);
        let s = self.add_scaled_int(&a, &b, &BigInt::from(-1));
        (s, (qf, af), (qg, ag))
    }

    /// Strip a common power of the homogenization variable; sound because
    /// the stripped element lies between the ideal and its h-saturation,
    /// which dehomogenize identically.
    fn strip_h(&self, p: &mut EPoly) {
        let h = match self.homog {
            Some(h) => h,
            None => return,
        };
        let k = p
            .terms
            .iter()
            .map(|(_, m, _)| m.exp(h))
            .min()
            .unwrap_or(0);
        if k == 0 {
            return;
        }
        for (_, m, _) in &mut p.terms {
            let e = m.exp(h);
            m.set_exp(h, e - k);
        }
    }

    /// Buchberger completion; the input generators are retained in the
    /// basis.  With `track`, expression rows (basis in terms of input
    /// generators) are maintained and h-stripping is disabled.
    pub fn buchberger_core(
        &self,
        gens: Vec<EPoly>,
        track: bool,
    ) -> (Vec<EPoly>, Option<Vec<Vec<RSc>>>) {
        let mut basis: Vec<EPoly> = Vec::new();
        let mut exprs: Vec<Vec<RSc>> = Vec::new();
        let ngens = gens.len();
        for (i, mut g) in gens.into_iter().enumerate() {
            let lam = self.make_primitive(&mut g);
            if track {
                let mut row = vec![RSc::new(); ngens];
                if !g.is_zero() {
                    row[i].insert(
                        Mono::one(self.vars.len()),
                        BigRational::one() / lam,
                    );
                }
                exprs.push(row);
            } else {
                self.strip_h(&mut g);
            }
            basis.push(g);
        }

        let mut pending: BTreeSet<(usize, usize)> = BTreeSet::new();
        let mut heap: std::collections::BinaryHeap<std::cmp::Reverse<(u64, usize, usize)>> =
            std::collections::BinaryHeap::new();

        // Gebauer–Möller update for a new basis element
        let gm_update = |basis: &[EPoly],
                         heap: &mut std::collections::BinaryHeap<
                            std::cmp::Reverse<(u64, usize, usize)>,
                         >,
                         pending: &mut BTreeSet<(usize, usize)>,
                         n: usize| {
            let gn = &basis[n];
            if gn.is_zero() {
                return;
            }
            let (cn, ln, _) = gn.lead();
            // prune old pairs whose lcm is properly covered by the new lead
            let stale: Vec<(usize, usize)> = pending
                .iter()
                .filter(|&&(i, j)| {
                    let gi = &basis[i];
                    let gj = &basis[j];
                    if gi.lead().0 != *cn {
                        return false;
                    }
                    let l = gi.lead().1.lcm(&gj.lead().1);
                    ln.divides(&l) && ln.lcm(&gi.lead().1) != l && ln.lcm(&gj.lead().1) != l
                })
                .copied()
                .collect();
            for p in stale {
                pending.remove(&p);
            }
            // candidate pairs with the new element
            let mut cand: Vec<(usize, Mono)> = (0..n)
                .filter(|&i| !basis[i].is_zero() && basis[i].lead().0 == *cn)
                .map(|i| (i, basis[i].lead().1.lcm(ln)))
                .collect();
            // M criterion: drop when another candidate's lcm properly divides
            let keep: Vec<bool> = cand
                .iter()
                .map(|(i, l)| {
                    !cand
                        .iter()
                        .any(|(k, lk)| k != i && lk.divides(l) && lk != l)
                })
                .collect();
            cand = cand
                .into_iter()
                .zip(keep)
                .filter_map(|(c, k)| k.then_some(c))
                .collect();
            // F criterion: one representative per lcm
            cand.sort_by(|a, b| a.1.cmp(&b.1).then(a.0.cmp(&b.0)));
            cand.dedup_by(|a, b| a.1 == b.1);
            for (i, l) in cand {
                // product criterion: commutative rank-1 only
                if self.commutative
                    && self.ord.pos_block.is_none()
                    && basis[i].lead().1.gcd_is_one(ln)
                {
                    continue;
                }
                heap.push(std::cmp::Reverse((l.total_deg(), i, n)));
                pending.insert((i, n));
            }
        };
        for i in 0..basis.len() {
            gm_update(&basis, &mut heap, &mut pending, i);
        }

        let mut processed = 0usize;
        while let Some(std::cmp::Reverse((_, i, j))) = heap.pop() {
            if !pending.remove(&(i, j)) {
                continue;
            }
            if basis[i].is_zero() || basis[j].is_zero() {
                continue;
            }
            let (li, lj) = (&basis[i].lead().1, &basis[j].lead().1);
            let l = li.lcm(lj);
            // chain criterion against pairs already handled
            let mut skip = false;
            for (k, gk) in basis.iter().enumerate() {
                if k == i || k == j || gk.is_zero() || gk.lead().0 != basis[i].lead().0 {
                    continue;
                }
                if gk.lead().1.divides(&l) {
                    let p1 = (i.min(k), i.max(k));
                    let p2 = (j.min(k), j.max(k));
                    if !pending.contains(&p1) && !pending.contains(&p2) {
                        skip = true;
                        break;
                    }
                }
            }
            if skip {
                continue;
            }
            processed += 1;
            let (s, (qi, ai), (qj, aj)) = self.spair(&basis[i], &basis[j]);
            let mut qrow: Option<Vec<RSc>> = track.then(|| vec![RSc::new(); basis.len()]);
            let (mut red, lam) = self.reduce_int_tracked(s, &basis, None, qrow.as_mut());
            let lam2 = self.make_primitive(&mut red);
            if !track {
                self.strip_h(&mut red);
            }
            if red.is_zero() {
                continue;
            }
            if track {
                // λ·s = Σ q_k g_k + r and red = r/λ2, with s = ai·qi·g_i − aj·qj·g_j,
                // so red = (λ/λ2)(ai·qi·g_i − aj·qj·g_j) − (1/λ2)·Σ q_k g_k.
                let s_scale = &lam / &lam2;
                let q_scale = BigRational::one() / &lam2;
                let mut row = vec![RSc::new(); ngens];
                let add_mono_times =
                    |row: &mut Vec<RSc>, coef: &BigRational, mono: &Mono, src: usize| {
                        // coef·mono ∘ exprs[src]
                        for (k, e) in exprs[src].iter().enumerate() {
                            for (em, ec) in e {
                                for (mm, f) in self.mono_mul(mono, em) {
                                    let c = coef * ec * BigRational::from(f);
                                    let ent =
                                        row[k].entry(mm).or_insert_with(BigRational::zero);
                                    *ent += c;
                                }
                            }
                        }
                    };
                add_mono_times(&mut row, &(&s_scale * BigRational::from(ai)), &qi, i);
                add_mono_times(&mut row, &(-&s_scale * BigRational::from(aj)), &qj, j);
                if let Some(qs) = &qrow {
                    for (k, q) in qs.iter().enumerate() {
                        for (qm, qc) in q {
                            add_mono_times(&mut row, &(-&q_scale * qc), qm, k);
                        }
                    }
                }
                for e in &mut row {
                    e.retain(|_, v| !v.is_zero());
                }
                exprs.push(row);
            }
            basis.push(red);
            let new = basis.len() - 1;
            gm_update(&basis, &mut heap, &mut pending, new);
            if processed % 50 == 0 {
                gb_trace!(
                    1,
                    "gb: {} pairs done, basis {} ({} pending)",
                    processed,
                    basis.len(),
                    pending.len()
                );
            }
        }
        gb_trace!(1, "gb: complete, basis {}, {} pairs reduced", basis.len(), processed);
        (basis, track.then_some(exprs))
    }

    /// Drop elements whose leading term is divisible by another's.
    pub fn minimalize(&self, mut basis: Vec<EPoly>) -> Vec<EPoly> {
        basis.retain(|g| !g.is_zero());
        let mut keep = vec![true; basis.len()];
        for i in 0..basis.len() {
            if !keep[i] {
                continue;
            }
            for j in 0..basis.len() {
                if i == j || !keep[j] {
                    continue;
                }
                let (ci, mi, _) = basis[i].lead();
                let (cj, mj, _) = basis[j].lead();
                if ci == cj && mj.divides(mi) && (mj != mi || j < i) {
                    keep[i] = false;
                    break;
                }
            }
        }
        basis
            .into_iter()
            .zip(keep)
            .filter_map(|(g, k)| k.then_some(g))
            .collect()
    }

    /// Drop elements with leading term divisible by another's, then fully
    /// tail-reduce each survivor against the others.
    pub fn autoreduce(&self, basis: Vec<EPoly>) -> Vec<EPoly> {
        let mut min = self.minimalize(basis);
        gb_trace!(1, "gb: autoreduce: {} minimal elements", min.len());
        // tail reduction
        for i in 0..min.len() {
            let f = min[i].clone();
            let others: Vec<EPoly> = min
                .iter()
                .enumerate()
                .filter_map(|(j, g)| (j != i).then(|| g.clone()))
                .collect();
            let (mut r, _) = self.reduce_int_tracked(f, &others, None, None);
            self.make_primitive(&mut r);
            min[i] = r;
        }
        min.retain(|g| !g.is_zero());
        min.sort_by(|a, b| {
            self.cmp_terms((a.lead().0, &a.lead().1), (b.lead().0, &b.lead().1))
        });
        gb_trace!(1, "gb: autoreduce done");
        min
    }

    /// Schreyer syzygies of a Groebner basis, in basis coordinates.
    /// All same-component pairs are used.
    pub fn schreyer_syzygies(&self, basis: &[EPoly]) -> Result<Vec<Vec<RSc>>> {
        let mut out = Vec::new();
        for i in 0..basis.len() {
            for j in (i + 1)..basis.len() {
                if basis[i].is_zero() || basis[j].is_zero() {
                    continue;
                }
                if basis[i].lead().0 != basis[j].lead().0 {
                    continue;
                }
                let (s, (qi, ai), (qj, aj)) = self.spair(&basis[i], &basis[j]);
                let srat = self.epoly_to_rat(&s);
                let (q, r) = self.divide_rat(&srat, basis, None, 2_000_000)?;
                if !r.is_zero() {
                    return Err(CoreError::ContractFailure(
                        "S-pair of a Groebner basis did not reduce to zero".into(),
                    ));
                }
                let mut row: Vec<RSc> = vec![RSc::new(); basis.len()];
                row[i].insert(qi.clone(), BigRational::from(ai.clone()));
                *row[j].entry(qj.clone()).or_insert_with(BigRational::zero) -=
                    BigRational::from(aj.clone());
                for (k, qk) in q.into_iter().enumerate() {
                    for (m, c) in qk {
                        *row[k].entry(m).or_insert_with(BigRational::zero) -= c;
                    }
                }
                for e in &mut row {
                    e.retain(|_, v| !v.is_zero());
                }
                if row.iter().any(|e| !e.is_empty()) {
                    out.push(row);
                }
            }
        }
        Ok(out)
    }
}

/// Result of a top-level Groebner run.
pub(crate) struct GbRun {
    #[allow(dead_code)]
    pub engine: Engine,
    pub basis: Vec<EPoly>,
    /// Syzygies of the input generators, when requested.
    pub syzygies: Option<Vec<Vec<RSc>>>,
}

/// Homogenize a vector: pad every term with h so total degrees agree.
fn homogenize(p: &EPoly, hslot: usize) -> EPoly {
    if p.terms.is_empty() {
        return p.clone();
    }
    let maxdeg = p.terms.iter().map(|(_, m, _)| m.total_deg()).max().unwrap();
    EPoly {
        terms: p
            .terms
            .iter()
            .map(|(c, m, a)| {
                let mut mm = m.widened(1);
                mm.set_exp(hslot, (maxdeg - m.total_deg()) as u16);
                (*c, mm, a.clone())
            })
            .collect(),
    }
}

fn dehomogenize_mono(m: &Mono, hslot: usize) -> Mono {
    let mut mm = m.clone();
    mm.set_exp(hslot, 0);
    Mono(mm.0[..hslot].iter().copied().chain(mm.0[hslot + 1..].iter().copied()).collect())
}

/// Run Buchberger for the given order, homogenizing when the order is not a
/// well-order.  `reduced` requests minimalization and tail reduction of the
/// final basis (applied downstairs).  With `want_syzygies` the returned
/// syzygies are expressed in input-generator coordinates.
pub(crate) fn groebner(
    vars: &Arc<VarSet>,
    ord: &ModOrd,
    gens: Vec<EPoly>,
    reduced: bool,
    want_syzygies: bool,
) -> Result<GbRun> {
    let engine = Engine::new(vars.clone(), ord.clone());
    if !ord.needs_homogenization() {
        let (basis, exprs) = engine.buchberger_core(gens, want_syzygies);
        let syz = if want_syzygies {
            let raw = engine.schreyer_syzygies(&basis)?;
            Some(convert_syzygies(&engine, raw, exprs.as_ref().unwrap()))
        } else {
            None
        };
        let basis = if reduced { engine.autoreduce(basis) } else { basis };
        return Ok(GbRun {
            engine,
            basis,
            syzygies: syz,
        });
    }

    // homogenized run
    let hvar = Var {
        name: "~h".into(),
        kind: VarKind::Central(CentralClass::Homog),
    };
    let hvars = vars.extended(std::slice::from_ref(&hvar))?;
    let hslot = hvars.len() - 1;
    let mut hord = ord.clone();
    if let Some((w, _)) = &mut hord.weight {
        w.push(0);
    }
    hord.mono.layers.push(OrdLayer::LexOn(vec![hslot]));
    let hgens: Vec<EPoly> = gens.iter().map(|g| homogenize(g, hslot)).collect();
    let hengine = Engine::new(hvars.clone(), hord);
    let (hbasis, hexprs) = hengine.buchberger_core(hgens, want_syzygies);
    let hsyz = if want_syzygies {
        let raw = hengine.schreyer_syzygies(&hbasis)?;
        Some(convert_syzygies(&hengine, raw, hexprs.as_ref().unwrap()))
    } else {
        None
    };
    let hbasis = hengine.minimalize(hbasis);

    // dehomogenize
    let engine2 = Engine::new(vars.clone(), ord.clone());
    let mut basis: Vec<EPoly> = hbasis
        .iter()
        .map(|g| {
            let terms = g
                .terms
                .iter()
                .map(|(c, m, a)| (*c, dehomogenize_mono(m, hslot), a.clone()))
                .collect();
            engine2.normalize_int(terms)
        })
        .collect();
    let syz = hsyz.map(|rows| {
        rows.into_iter()
            .map(|row| {
                row.into_iter()
                    .map(|e| {
                        let mut out = RSc::new();
                        for (m, c) in e {
                            let mm = dehomogenize_mono(&m, hslot);
                            *out.entry(mm).or_insert_with(BigRational::zero) += c;
                        }
                        out.retain(|_, v| !v.is_zero());
                        out
                    })
                    .collect()
            })
            .collect()
    });
    if reduced {
        basis = minimalize_downstairs(&engine2, basis);
    }
    Ok(GbRun {
        engine: engine2,
        basis,
        syzygies: syz,
    })
}

/// Convert Schreyer syzygies from basis coordinates to input-generator
/// coordinates through the tracked expression rows.
fn convert_syzygies(engine: &Engine, rows: Vec<Vec<RSc>>, exprs: &[Vec<RSc>]) -> Vec<Vec<RSc>> {
    let ngens = exprs.first().map(|r| r.len()).unwrap_or(0);
    rows.into_iter()
        .map(|row| {
            let mut out = vec![RSc::new(); ngens];
            for (l, sl) in row.iter().enumerate() {
                if sl.is_empty() {
                    continue;
                }
                for (k, t) in exprs[l].iter().enumerate() {
                    if t.is_empty() {
                        continue;
                    }
                    for (sm, sc) in sl {
                        for (tm, tc) in t {
                            for (mm, f) in engine.mono_mul(sm, tm) {
                                let c = sc * tc * BigRational::from(f);
                                *out[k].entry(mm).or_insert_with(BigRational::zero) += c;
                            }
                        }
                    }
                }
            }
            for e in &mut out {
                e.retain(|_, v| !v.is_zero());
            }
            out
        })
        .filter(|row| row.iter().any(|e| !e.is_empty()))
        .collect()
}

/// Downstairs post-processing after dehomogenization: drop leading-term
/// redundant elements, then tail-reduce with a step guard (full reduction
/// need not terminate under a non-well order; on budget exhaustion the
/// partially reduced element is kept).
fn minimalize_downstairs(engine: &Engine, basis: Vec<EPoly>) -> Vec<EPoly> {
    let mut basis: Vec<EPoly> = basis.into_iter().filter(|g| !g.is_zero()).collect();
    gb_trace!(1, "gb: downstairs input {}", basis.len());
    let mut keep = vec![true; basis.len()];
    for i in 0..basis.len() {
        if !keep[i] {
            continue;
        }
        for j in 0..basis.len() {
            if i == j || !keep[j] {
                continue;
            }
            let (ci, mi, _) = basis[i].lead();
            let (cj, mj, _) = basis[j].lead();
            if ci == cj && mj.divides(mi) && (mj != mi || j < i) {
                keep[i] = false;
                break;
            }
        }
    }
    let mut min: Vec<EPoly> = basis
        .drain(..)
        .zip(keep)
        .filter_map(|(g, k)| k.then_some(g))
        .collect();
    gb_trace!(1, "gb: downstairs minimal {}", min.len());
    // tail reduction is cosmetic (the minimal basis is already a GB);
    // for large bases the quadratic pass is skipped
    let tail_budget = if min.len() > 48 { 0 } else { 20_000 };
    for i in 0..min.len() {
        if i % 10 == 0 {
            gb_trace!(2, "gb: downstairs tail-reduce {i}");
        }
        let others: Vec<EPoly> = min
            .iter()
            .enumerate()
            .filter_map(|(j, g)| (j != i).then(|| g.clone()))
            .collect();
        if tail_budget == 0 {
            break;
        }
        let f = min[i].clone();
        let (mut r, _) = engine.reduce_int_capped(f, &others, None, None, Some(tail_budget));
        engine.make_primitive(&mut r);
        if !r.is_zero() {
            min[i] = r;
        }
    }
    min.retain(|g| !g.is_zero());
    min.sort_by(|a, b| engine.cmp_terms((a.lead().0, &a.lead().1), (b.lead().0, &b.lead().1)));
    min
}

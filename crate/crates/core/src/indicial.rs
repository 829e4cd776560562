//! Indicial polynomials and b-functions at prime ideals, the degree
//! stratification, Bernstein–Sato conversion, and the associated operator.

use std::sync::Arc;

use num_traits::{One, Zero};

use crate::engine::Engine;
use crate::error::{CoreError, Result};
use crate::exactalg::{
    colon_ideal, elim_ideal, factor_univariate, reduced_gb, CIdeal, CPoly, Rat,
};
use crate::order::{CTermOrder as Ord, ModOrd};
use crate::vars::{CentralClass, CoordClass, VarKind, VarSet};
use crate::weyl::{divide, VOrderSpec, WeylIdeal, WeylOp};

/// A prime ideal of K[x] (or K[x,y]) given by generators.  Primality is the
/// caller's assertion; only 1 ∉ 𝔭 is checked.
#[derive(Clone, Debug)]
pub struct PrimeSpec {
    ideal: CIdeal,
    pub declared_prime: bool,
}

impl PrimeSpec {
    pub fn new(vars: &Arc<VarSet>, gens: Vec<CPoly>) -> Result<Self> {
        let ideal = CIdeal::new(vars, gens);
        if ideal.is_ring() {
            return Err(CoreError::InvalidArgument(
                "prime spec contains 1".into(),
            ));
        }
        Ok(PrimeSpec {
            ideal,
            declared_prime: true,
        })
    }

    /// The maximal ideal of a rational point, given as (name, value) pairs.
    pub fn rational_point(vars: &Arc<VarSet>, point: &[(&str, Rat)]) -> Result<Self> {
        let mut gens = Vec::new();
        for (name, val) in point {
            let x = CPoly::var(vars, name)?;
            gens.push(&x - &CPoly::constant(vars, val.clone()));
        }
        PrimeSpec::new(vars, gens)
    }

    pub fn vars(&self) -> &Arc<VarSet> {
        &self.ideal.vars()
    }

    pub fn gens(&self) -> &[CPoly] {
        self.ideal.gens()
    }

    pub fn ideal(&self) -> &CIdeal {
        &self.ideal
    }

    /// Membership in 𝔭, for polynomials over any variable set that contains
    /// the prime's variables.
    pub fn contains(&self, f: &CPoly) -> bool {
        self.nf(f).is_zero()
    }

    /// Normal form modulo the reduced Groebner basis of 𝔭, computed in the
    /// variable set of `f` (the basis maps in by name; exponents of
    /// variables foreign to 𝔭, such as s, pass through).
    pub fn nf(&self, f: &CPoly) -> CPoly {
        if f.is_zero() {
            return f.clone();
        }
        let gb = self.ideal.gb(&Ord::Grevlex);
        if gb.is_empty() {
            return f.clone();
        }
        let vars = f.vars().clone();
        let ord = ModOrd::term_over_position(crate::order::MonoOrd::grevlex(vars.len()));
        let engine = Engine::new(vars.clone(), ord);
        let basis: Vec<_> = gb
            .iter()
            .map(|g| g.map_into(&vars).expect("prime vars embed").to_epoly(&engine))
            .collect();
        let frat = {
            let terms = f
                .terms()
                .map(|(m, c)| (0u32, m.clone(), c.clone()))
                .collect();
            engine.normalize_rat(terms)
        };
        let (_, rem) = engine
            .divide_rat(&frat, &basis, None, 2_000_000)
            .expect("commutative normal form");
        CPoly::from_terms(
            &vars,
            rem.terms
                .into_iter()
                .map(|(_, m, c)| (m, c))
                .collect(),
        )
    }
}

/// An element f/a of the localization with a ∉ 𝔭; the represented object is
/// monic in s after the formal division.
#[derive(Clone, Debug, PartialEq)]
pub struct LocalizedPoly {
    pub num: CPoly,
    pub den: CPoly,
}

impl LocalizedPoly {
    pub fn s_degree(&self) -> u16 {
        self.num.degree_in("s").unwrap_or(0)
    }
}

/// Numerator and denominator reduced modulo 𝔭 (the image in κ(𝔭)[s]).
#[derive(Clone, Debug, PartialEq)]
pub struct SpecializedPoly {
    pub num: CPoly,
    pub den: CPoly,
}

impl SpecializedPoly {
    /// The monic rational polynomial in s, when the image has rational
    /// coefficients (numerator free of x and y after reduction).
    pub fn as_rational_in_s(&self) -> Option<CPoly> {
        let den = self.den.constant_value()?;
        if den.is_zero() {
            return None;
        }
        if !self.num.is_univariate_in("s") && !self.num.is_constant() {
            return None;
        }
        let p = self.num.scale(&(Rat::one() / den));
        Some(monic_in_s(&p).ok()?)
    }

    /// Equality as elements of κ(𝔭)[s]: cross-multiplied congruence mod 𝔭.
    pub fn equivalent(&self, other: &SpecializedPoly, p: &PrimeSpec) -> bool {
        let lhs = &self.num * &other.den;
        let rhs = &other.num * &self.den;
        p.contains(&(&lhs - &rhs))
    }
}

/// One element of the s-block Groebner basis.
#[derive(Clone, Debug)]
pub struct SBlockElem {
    pub poly: CPoly,
    /// Leading coefficient with respect to s.
    pub lead_coef: CPoly,
    pub s_deg: u16,
}

/// The reduced Groebner basis of J under the order with the s-block
/// leading (x, y ≺ s), with per-element s-data.
#[derive(Clone, Debug)]
pub struct SBlockGb {
    pub vars: Arc<VarSet>,
    pub elements: Vec<SBlockElem>,
}

/// Reduced Groebner basis of J for the block order s ≻ (x, y).
pub fn s_block_gb(j: &CIdeal) -> Result<SBlockGb> {
    let vars = j.vars().clone();
    if vars.index_of("s").is_none() {
        return Err(CoreError::InvalidArgument("J must contain s".into()));
    }
    let ord = Ord::Block(vec!["s".into()]);
    let gb = reduced_gb(j, &ord);
    let mut elements = Vec::new();
    for g in gb {
        let s_deg = g.degree_in("s").unwrap_or(0);
        let coeffs = g.coeffs_in("s")?;
        let lead_coef = coeffs
            .get(&s_deg)
            .cloned()
            .unwrap_or_else(|| CPoly::zero(&vars));
        elements.push(SBlockElem {
            poly: g,
            lead_coef,
            s_deg,
        });
    }
    Ok(SBlockGb { vars, elements })
}

/// The stratification data: N and the increasing chain I_0 ⊆ … ⊆ I_N of
/// leading-coefficient ideals.  On V(I_{k−1}) ∖ V(I_k) the indicial
/// polynomial has degree k.
#[derive(Clone, Debug)]
pub struct Stratification {
    pub n_max: u16,
    /// I_k for k = 0, …, N.
    pub ideals: Vec<CIdeal>,
    pub vars: Arc<VarSet>,
}

pub fn stratify(gb: &SBlockGb) -> Stratification {
    let n_max = gb.elements.iter().map(|e| e.s_deg).max().unwrap_or(0);
    let xvars = x_varset(&gb.vars);
    let mut ideals = Vec::new();
    for k in 0..=n_max {
        let gens: Vec<CPoly> = gb
            .elements
            .iter()
            .filter(|e| e.s_deg <= k)
            .map(|e| e.lead_coef.project_into(&xvars).expect("s-free"))
            .collect();
        ideals.push(CIdeal::new(&xvars, gens));
    }
    Stratification {
        n_max,
        ideals,
        vars: xvars,
    }
}

/// The variable set of J with s removed.
pub fn x_varset(jvars: &VarSet) -> Arc<VarSet> {
    let vars: Vec<_> = jvars
        .vars()
        .iter()
        .filter(|v| v.kind != VarKind::Central(CentralClass::S))
        .cloned()
        .collect();
    VarSet::new(vars).expect("distinct")
}

fn ideal_outside_prime(ideal: &CIdeal, p: &PrimeSpec) -> bool {
    ideal.gens().iter().any(|g| !p.contains(g))
}

/// Algorithm step 3: the indicial polynomial at 𝔭 as f_i/a_i with
/// a_i ∉ 𝔭 and minimal s-degree, or None when I_N ⊆ 𝔭.
pub fn indicial_at_prime(gb: &SBlockGb, strat: &Stratification, p: &PrimeSpec) -> Option<LocalizedPoly> {
    let mut k0 = None;
    for (k, ik) in strat.ideals.iter().enumerate() {
        if ideal_outside_prime(ik, p) {
            k0 = Some(k as u16);
            break;
        }
    }
    let k0 = k0?;
    // any qualifying element works; pick fewest terms, then lowest in the
    // block order, for reproducible output
    let mut best: Option<&SBlockElem> = None;
    for e in gb.elements.iter() {
        if e.s_deg != k0 || p.contains(&e.lead_coef) {
            continue;
        }
        match best {
            None => best = Some(e),
            Some(b) => {
                if e.poly.num_terms() < b.poly.num_terms() {
                    best = Some(e);
                }
            }
        }
    }
    best.map(|e| LocalizedPoly {
        num: e.poly.clone(),
        den: e.lead_coef.clone(),
    })
}

/// Specialization to κ(𝔭): normal forms of numerator and denominator.
pub fn specialize(b: &LocalizedPoly, p: &PrimeSpec) -> Result<SpecializedPoly> {
    let num = p.nf(&b.num);
    let den = p.nf(&b.den);
    if den.is_zero() {
        return Err(CoreError::ContractFailure(
            "denominator lies in the prime ideal".into(),
        ));
    }
    Ok(SpecializedPoly { num, den })
}

/// The monic generator of J ∩ K[s], or None when the intersection is 0.
pub fn global_bfunction(j: &CIdeal) -> Result<Option<CPoly>> {
    let vars = j.vars();
    let drop: Vec<String> = vars
        .vars()
        .iter()
        .filter(|v| v.name != "s")
        .map(|v| v.name.clone())
        .collect();
    let dropr: Vec<&str> = drop.iter().map(|s| s.as_str()).collect();
    let e = elim_ideal(j, &dropr);
    if e.is_zero_ideal() {
        return Ok(None);
    }
    let gb = e.gb(&Ord::Grevlex);
    let g = gb
        .into_iter()
        .min_by_key(|g| g.degree_in("s").unwrap_or(0))
        .expect("nonzero elimination ideal");
    Ok(Some(monic_in_s(&g)?))
}

fn monic_in_s(f: &CPoly) -> Result<CPoly> {
    if f.is_zero() {
        return Ok(f.clone());
    }
    let d = f.degree_in("s").unwrap_or(0);
    let lc = f
        .coeffs_in("s")?
        .get(&d)
        .and_then(|c| c.constant_value())
        .ok_or_else(|| {
            CoreError::InvalidArgument("leading s-coefficient is not constant".into())
        })?;
    Ok(f.scale(&(Rat::one() / lc)))
}

/// Does b(s) lie in J_𝔭, i.e. is (J : b) ∩ K[x] ⊄ 𝔭?
fn lies_in_localized(j: &CIdeal, b: &CPoly, p: &PrimeSpec) -> Result<bool> {
    if b.is_zero() {
        return Ok(true);
    }
    let c = if b.is_constant() {
        j.clone()
    } else {
        colon_ideal(j, b)?
    };
    let e = elim_ideal(&c, &["s"]);
    Ok(e.gens().iter().any(|g| !p.contains(g)))
}

/// Result of a b-function computation.
#[derive(Clone, Debug)]
pub struct BFunction {
    pub poly: CPoly,
    /// Set when the value came from the constant-coefficient indicial
    /// shortcut rather than a verified colon-ideal search.
    pub via_indicial_shortcut: bool,
}

/// The b-function of u along Y at 𝔭: the monic generator of J_𝔭 ∩ K[s].
///
/// Candidates are the irreducible factors of the global b-function and of
/// the gcd of the univariate images of the basis modulo 𝔭; the minimal
/// verified product is returned.  When the search is empty but the indicial
/// polynomial specializes to a constant-coefficient polynomial, that
/// polynomial is returned with the shortcut flag set.
pub fn bfunction_at_prime(j: &CIdeal, p: &PrimeSpec, degree_cap: u32) -> Result<Option<BFunction>> {
    let gb = s_block_gb(j)?;
    let strat = stratify(&gb);
    let ind = match indicial_at_prime(&gb, &strat, p) {
        None => return Ok(None),
        Some(i) => i,
    };
    let global = global_bfunction(j)?;

    // candidate irreducible factors with exponent caps
    let mut factors: Vec<(CPoly, u32)> = Vec::new();
    let push = |q: &CPoly, e: u32, factors: &mut Vec<(CPoly, u32)>| {
        let qn = q.normalized();
        for (f, cap) in factors.iter_mut() {
            if *f == qn {
                *cap = (*cap).max(e);
                return;
            }
        }
        factors.push((qn, e));
    };
    if let Some(g) = &global {
        let (_, fs) = factor_univariate(g)?;
        for (q, e) in fs {
            push(&q, e, &mut factors);
        }
    }
    let mut image_gcd: Option<CPoly> = None;
    for e in &gb.elements {
        let img = p.nf(&e.poly);
        if img.is_zero() || !(img.is_univariate_in("s") || img.is_constant()) {
            continue;
        }
        image_gcd = Some(match image_gcd {
            None => img,
            Some(acc) => crate::exactalg::univariate_gcd(&acc, &img)?,
        });
    }
    if let Some(g) = &image_gcd {
        if !g.is_constant() {
            let (_, fs) = factor_univariate(g)?;
            for (q, _) in fs {
                let cap = degree_cap / (q.degree_in("s").unwrap_or(1).max(1) as u32);
                push(&q, cap.max(1), &mut factors);
            }
        }
    }

    // a verified starting candidate
    let verified_start: Option<Vec<u32>> = if let Some(g) = &global {
        // the global b-function always lies in J ⊆ J_𝔭
        let mut exps = vec![0u32; factors.len()];
        let (_, fs) = factor_univariate(g)?;
        for (q, e) in fs {
            let qn = q.normalized();
            for (i, (f, _)) in factors.iter().enumerate() {
                if *f == qn {
                    exps[i] = e;
                }
            }
        }
        Some(exps)
    } else {
        search_verified_candidate(j, p, &factors, degree_cap)?
    };

    if let Some(mut exps) = verified_start {
        // per-factor minimization: membership in the principal ideal
        // ⟨b_𝔭⟩ is componentwise in the factor exponents
        for i in 0..exps.len() {
            while exps[i] > 0 {
                let mut trial = exps.clone();
                trial[i] -= 1;
                let cand = assemble(&factors, &trial, j.vars())?;
                if lies_in_localized(j, &cand, p)? {
                    exps = trial;
                } else {
                    break;
                }
            }
        }
        // exponent zero everywhere still needs the degree-0 check
        let cand = assemble(&factors, &exps, j.vars())?;
        if exps.iter().all(|&e| e == 0) && !lies_in_localized(j, &cand, p)? {
            // fall through to the shortcut below
        } else {
            return Ok(Some(BFunction {
                poly: monic_in_s(&cand)?,
                via_indicial_shortcut: false,
            }));
        }
    }

    // Prop 8.2 shortcut: a constant-coefficient specialized indicial
    // polynomial is reported as the b-function
    let spec = specialize(&ind, p)?;
    if let Some(b) = spec.as_rational_in_s() {
        return Ok(Some(BFunction {
            poly: b,
            via_indicial_shortcut: true,
        }));
    }
    Ok(None)
}

fn assemble(factors: &[(CPoly, u32)], exps: &[u32], vars: &Arc<VarSet>) -> Result<CPoly> {
    let mut acc = CPoly::one(vars);
    for ((q, _), &e) in factors.iter().zip(exps) {
        acc = acc.mul_ref(&q.pow(e))?;
    }
    Ok(acc)
}

/// Exhaustive search for some verified candidate when no global b-function
/// exists: exponent vectors by increasing total degree up to the cap.
fn search_verified_candidate(
    j: &CIdeal,
    p: &PrimeSpec,
    factors: &[(CPoly, u32)],
    degree_cap: u32,
) -> Result<Option<Vec<u32>>> {
    let degs: Vec<u32> = factors
        .iter()
        .map(|(q, _)| q.degree_in("s").unwrap_or(0) as u32)
        .collect();
    let mut by_degree: Vec<(u32, Vec<u32>)> = Vec::new();
    let mut stack = vec![vec![]];
    for (i, (_, cap)) in factors.iter().enumerate() {
        let mut next = Vec::new();
        for partial in stack {
            for e in 0..=*cap {
                let mut v: Vec<u32> = partial.clone();
                v.push(e);
                let deg: u32 = v.iter().zip(&degs).map(|(a, b)| a * b).sum();
                if deg <= degree_cap {
                    next.push(v);
                }
            }
        }
        stack = next;
        let _ = i;
    }
    for v in stack {
        let deg: u32 = v.iter().zip(&degs).map(|(a, b)| a * b).sum();
        by_degree.push((deg, v));
    }
    by_degree.sort();
    let mut exceeded = false;
    for (deg, v) in by_degree {
        if deg > degree_cap {
            exceeded = true;
            continue;
        }
        let cand = assemble(factors, &v, j.vars())?;
        if lies_in_localized(j, &cand, p)? {
            return Ok(Some(v));
        }
    }
    if exceeded {
        return Err(CoreError::Undetermined(format!(
            "no b-function candidate within degree cap {degree_cap}"
        )));
    }
    Ok(None)
}

/// Substitute s ↦ s − d (the codimension shift of Theorem 1 / Theorem 3)
/// and re-monicize.
pub fn shift_codim(b: &CPoly, d: i64) -> Result<CPoly> {
    let vars = b.vars();
    let s = CPoly::var(vars, "s")?;
    let shifted = b.substitute("s", &(&s - &CPoly::int(vars, d)))?;
    monic_in_s(&shifted)
}

/// Monic normalization of b(−s): the Bernstein–Sato sign convention.
pub fn to_bms(b: &CPoly) -> Result<CPoly> {
    let vars = b.vars();
    let s = CPoly::var(vars, "s")?;
    let flipped = b.substitute("s", &s.neg_ref())?;
    monic_in_s(&flipped)
}

/// The operator certificate of §7.5: division of a·b(θ,x) against the
/// V-adapted basis, with a(x)b(θ,x) − R ∈ Ann(u) and R of order ≤ −1.
#[derive(Clone, Debug)]
pub struct AssociatedOperator {
    /// Numerator of P = −R/a.
    pub num: WeylOp,
    /// The localizing denominator a(x).
    pub den: CPoly,
    pub quotients: Vec<WeylOp>,
    pub remainder: WeylOp,
}

/// Build b(θ, x) from a polynomial in K[s, x, y] with θ = Σ t_i ∂_{t_i}.
pub fn theta_substitute(b: &CPoly, dvars: &Arc<VarSet>) -> Result<WeylOp> {
    let mut theta = WeylOp::zero(dvars);
    for v in dvars.vars() {
        if v.kind == VarKind::Coord(CoordClass::T) {
            let t = WeylOp::var(dvars, &v.name)?;
            let dt = WeylOp::var(dvars, &format!("d{}", v.name))?;
            theta = theta.add_ref(&t.wmul(&dt)?)?;
        }
    }
    let coeffs = b.coeffs_in("s")?;
    let xvars = x_varset(b.vars());
    let mut acc = WeylOp::zero(dvars);
    for (e, c) in coeffs {
        let cop = WeylOp::from_cpoly(&c.project_into(&xvars)?, dvars)?;
        acc = acc.add_ref(&cop.wmul(&theta.pow(e as u32)?)?)?;
    }
    Ok(acc)
}

pub fn associated_operator(ann: &WeylIdeal, b: &LocalizedPoly) -> Result<AssociatedOperator> {
    let dvars = ann.vars().clone();
    let bop = theta_substitute(&b.num, &dvars)?;
    let gb: Vec<WeylOp> = ann.v_gb()?.iter().map(|(v, _)| v[0].clone()).collect();
    let spec = VOrderSpec::ideal();
    let (quotients, remainder) = divide(&bop, &gb, &spec, Some(0))?;
    if remainder.ord_y().map(|o| o >= 0).unwrap_or(false) {
        return Err(CoreError::ContractFailure(
            "division remainder not inside V^{-1}: basis not V-adapted or b not in J".into(),
        ));
    }
    let den = {
        let xvars = x_varset(b.num.vars());
        b.den.project_into(&xvars)?
    };
    Ok(AssociatedOperator {
        num: remainder.neg_ref(),
        den,
        quotients,
        remainder,
    })
}

/// Degree of the indicial polynomial at sampled strata, used by the
/// stratification consistency checks.
pub fn indicial_degree_at(gb: &SBlockGb, strat: &Stratification, p: &PrimeSpec) -> Option<u16> {
    indicial_at_prime(gb, strat, p).map(|l| l.s_degree())
}

/// Check Proposition 3 on a finite list of sample primes: the global
/// b-function equals the least common multiple of the per-prime ones.
pub fn lcm_of_bfunctions(j: &CIdeal, primes: &[PrimeSpec], cap: u32) -> Result<Option<CPoly>> {
    let mut acc: Option<CPoly> = None;
    for p in primes {
        let b = match bfunction_at_prime(j, p, cap)? {
            None => continue,
            Some(b) => b.poly,
        };
        acc = Some(match acc {
            None => b,
            Some(a) => crate::exactalg::univariate_lcm(&a, &b)?,
        });
    }
    match acc {
        None => Ok(None),
        Some(a) => Ok(Some(monic_in_s(&a)?)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::CIdeal;
    use crate::expr::{parse_cpoly, parse_weyl};
    use crate::vars::VarSet;
    use crate::weyl::WeylIdeal;

    fn jvars2() -> Arc<VarSet> {
        // J-style layout: s first, then coordinates
        let mut vars = vec![crate::vars::Var {
            name: "s".into(),
            kind: VarKind::Central(CentralClass::S),
        }];
        for n in ["x1", "x2"] {
            vars.push(crate::vars::Var {
                name: n.into(),
                kind: VarKind::Coord(CoordClass::X),
            });
        }
        VarSet::new(vars).unwrap()
    }

    fn jvars_xy() -> Arc<VarSet> {
        let mut vars = vec![crate::vars::Var {
            name: "s".into(),
            kind: VarKind::Central(CentralClass::S),
        }];
        for n in ["x", "y"] {
            vars.push(crate::vars::Var {
                name: n.into(),
                kind: VarKind::Coord(CoordClass::X),
            });
        }
        VarSet::new(vars).unwrap()
    }

    #[test]
    fn s_block_gb_examples() {
        let jv = jvars2();
        let j = CIdeal::new(&jv, vec![parse_cpoly(&jv, "x1*s-x2").unwrap()]);
        let gb = s_block_gb(&j).unwrap();
        assert_eq!(gb.elements.len(), 1);
        assert_eq!(gb.elements[0].poly, parse_cpoly(&jv, "x1*s-x2").unwrap());
        assert_eq!(gb.elements[0].lead_coef, parse_cpoly(&jv, "x1").unwrap());
        assert_eq!(gb.elements[0].s_deg, 1);

        let j = CIdeal::new(&jv, vec![parse_cpoly(&jv, "s").unwrap()]);
        let gb = s_block_gb(&j).unwrap();
        assert_eq!(gb.elements[0].s_deg, 1);
        assert!(gb.elements[0].lead_coef.constant_value().is_some());
    }

    #[test]
    fn stratify_single_monic() {
        let jv = jvars_xy();
        let j = CIdeal::new(&jv, vec![parse_cpoly(&jv, "s-x").unwrap()]);
        let strat = stratify(&s_block_gb(&j).unwrap());
        assert_eq!(strat.n_max, 1);
        assert!(strat.ideals[0].is_zero_ideal());
        assert!(strat.ideals[1].is_ring());
    }

    #[test]
    fn stratification_chain_is_increasing() {
        let jv = jvars_xy();
        let j = CIdeal::new(
            &jv,
            vec![
                parse_cpoly(&jv, "x*s^2-y*s").unwrap(),
                parse_cpoly(&jv, "y^2*s-x").unwrap(),
            ],
        );
        let strat = stratify(&s_block_gb(&j).unwrap());
        for k in 0..strat.n_max as usize {
            for g in strat.ideals[k].gens() {
                assert!(crate::exactalg::membership(
                    g,
                    &strat.ideals[k + 1],
                    &Ord::Grevlex
                ));
            }
        }
    }

    #[test]
    fn indicial_at_prime_examples() {
        let jv = jvars2();
        let xv = x_varset(&jv);
        let j = CIdeal::new(&jv, vec![parse_cpoly(&jv, "x1*s-x2").unwrap()]);
        let gb = s_block_gb(&j).unwrap();
        let strat = stratify(&gb);

        let p = PrimeSpec::new(&xv, vec![parse_cpoly(&xv, "x2").unwrap()]).unwrap();
        let ind = indicial_at_prime(&gb, &strat, &p).unwrap();
        assert_eq!(ind.num, parse_cpoly(&jv, "x1*s-x2").unwrap());
        assert_eq!(ind.den, parse_cpoly(&jv, "x1").unwrap());

        let p = PrimeSpec::new(&xv, vec![parse_cpoly(&xv, "x1").unwrap()]).unwrap();
        assert!(indicial_at_prime(&gb, &strat, &p).is_none());
    }

    #[test]
    fn indicial_sqrt2() {
        let jv = VarSet::new(vec![
            crate::vars::Var {
                name: "s".into(),
                kind: VarKind::Central(CentralClass::S),
            },
            crate::vars::Var {
                name: "x".into(),
                kind: VarKind::Coord(CoordClass::X),
            },
        ])
        .unwrap();
        let xv = x_varset(&jv);
        let j = CIdeal::new(
            &jv,
            vec![
                parse_cpoly(&jv, "s-x").unwrap(),
                parse_cpoly(&jv, "x^2-2").unwrap(),
            ],
        );
        let gb = s_block_gb(&j).unwrap();
        let strat = stratify(&gb);
        let p = PrimeSpec::new(&xv, vec![parse_cpoly(&xv, "x^2-2").unwrap()]).unwrap();
        let ind = indicial_at_prime(&gb, &strat, &p).unwrap();
        assert_eq!(ind.num, parse_cpoly(&jv, "s-x").unwrap());
        assert!(ind.den.constant_value().is_some());
    }

    #[test]
    fn specialize_examples() {
        let jv = jvars_xy();
        let xv = x_varset(&jv);
        let b = LocalizedPoly {
            num: parse_cpoly(&jv, "s^2-(x+y+1)*s").unwrap(),
            den: CPoly::one(&jv),
        };
        let p = PrimeSpec::rational_point(
            &xv,
            &[("x", Rat::from(num_bigint::BigInt::from(2))), ("y", Rat::from(num_bigint::BigInt::from(3)))],
        )
        .unwrap();
        let sp = specialize(&b, &p).unwrap();
        assert_eq!(
            sp.as_rational_in_s().unwrap(),
            parse_cpoly(&jv, "s^2-6*s").unwrap()
        );
        // s stays s at any prime
        let b = LocalizedPoly {
            num: parse_cpoly(&jv, "s").unwrap(),
            den: CPoly::one(&jv),
        };
        let sp = specialize(&b, &p).unwrap();
        assert_eq!(sp.num, parse_cpoly(&jv, "s").unwrap());
    }

    #[test]
    fn global_bfunction_examples() {
        let jv = jvars_xy();
        let j = CIdeal::new(
            &jv,
            vec![
                parse_cpoly(&jv, "s-x").unwrap(),
                parse_cpoly(&jv, "x^2-2").unwrap(),
            ],
        );
        assert_eq!(
            global_bfunction(&j).unwrap().unwrap(),
            parse_cpoly(&jv, "s^2-2").unwrap()
        );
        let j = CIdeal::new(&jv, vec![parse_cpoly(&jv, "s^2-(x+y+1)*s").unwrap()]);
        assert!(global_bfunction(&j).unwrap().is_none());
        let j = CIdeal::new(&jv, vec![parse_cpoly(&jv, "s+1").unwrap()]);
        assert_eq!(
            global_bfunction(&j).unwrap().unwrap(),
            parse_cpoly(&jv, "s+1").unwrap()
        );
    }

    #[test]
    fn bfunction_sqrt2_at_the_prime() {
        let jv = jvars_xy();
        let xv = x_varset(&jv);
        let j = CIdeal::new(
            &jv,
            vec![
                parse_cpoly(&jv, "s-x").unwrap(),
                parse_cpoly(&jv, "x^2-2").unwrap(),
            ],
        );
        let p = PrimeSpec::new(&xv, vec![parse_cpoly(&xv, "x^2-2").unwrap()]).unwrap();
        let b = bfunction_at_prime(&j, &p, 16).unwrap().unwrap();
        assert_eq!(b.poly, parse_cpoly(&jv, "s^2-2").unwrap());
        assert!(!b.via_indicial_shortcut);
    }

    #[test]
    fn bfunction_constant_coefficient_shortcut() {
        let jv = jvars_xy();
        let xv = x_varset(&jv);
        let j = CIdeal::new(&jv, vec![parse_cpoly(&jv, "s^2-(x+y+1)*s").unwrap()]);
        // a + b = 1/2 is not a nonnegative integer
        let p = PrimeSpec::rational_point(
            &xv,
            &[("x", Rat::from(num_bigint::BigInt::from(1))), ("y", Rat::new(num_bigint::BigInt::from(-1), num_bigint::BigInt::from(2)))],
        )
        .unwrap();
        let b = bfunction_at_prime(&j, &p, 16).unwrap().unwrap();
        assert_eq!(b.poly, parse_cpoly(&jv, "s^2-3/2*s").unwrap());
        assert!(b.via_indicial_shortcut);
    }

    #[test]
    fn bfunction_genuine_search_beats_shortcut() {
        // J = ⟨s−y, y²⟩ at ⟨y⟩: the indicial specializes to s but the
        // b-function is s²
        let jv = jvars_xy();
        let xv = x_varset(&jv);
        let j = CIdeal::new(
            &jv,
            vec![
                parse_cpoly(&jv, "s-y").unwrap(),
                parse_cpoly(&jv, "y^2").unwrap(),
            ],
        );
        let p = PrimeSpec::new(&xv, vec![parse_cpoly(&xv, "y").unwrap()]).unwrap();
        let b = bfunction_at_prime(&j, &p, 16).unwrap().unwrap();
        assert_eq!(b.poly, parse_cpoly(&jv, "s^2").unwrap());
        assert!(!b.via_indicial_shortcut);
    }

    #[test]
    fn bfunction_pure_s_ideal() {
        let jv = jvars_xy();
        let xv = x_varset(&jv);
        let j = CIdeal::new(&jv, vec![parse_cpoly(&jv, "s*(s-1)").unwrap()]);
        let p = PrimeSpec::rational_point(
            &xv,
            &[("x", Rat::from(num_bigint::BigInt::from(0))), ("y", Rat::from(num_bigint::BigInt::from(0)))],
        )
        .unwrap();
        let b = bfunction_at_prime(&j, &p, 16).unwrap().unwrap();
        assert_eq!(b.poly, parse_cpoly(&jv, "s^2-s").unwrap());
    }

    #[test]
    fn divisor_property() {
        // specialize(indicial) divides the b-function when both exist
        let jv = jvars_xy();
        let xv = x_varset(&jv);
        let j = CIdeal::new(
            &jv,
            vec![
                parse_cpoly(&jv, "s-y").unwrap(),
                parse_cpoly(&jv, "y^2").unwrap(),
            ],
        );
        let gb = s_block_gb(&j).unwrap();
        let strat = stratify(&gb);
        let p = PrimeSpec::new(&xv, vec![parse_cpoly(&xv, "y").unwrap()]).unwrap();
        let ind = indicial_at_prime(&gb, &strat, &p).unwrap();
        let spec = specialize(&ind, &p).unwrap().as_rational_in_s().unwrap();
        let b = bfunction_at_prime(&j, &p, 16).unwrap().unwrap().poly;
        assert!(b.exact_div(&spec).is_some());
    }

    #[test]
    fn specialization_unique_across_tiebreaks() {
        // permuting the coordinate block must not change the specialization
        let jv = jvars_xy();
        let jv_perm = VarSet::new(vec![
            crate::vars::Var {
                name: "s".into(),
                kind: VarKind::Central(CentralClass::S),
            },
            crate::vars::Var {
                name: "y".into(),
                kind: VarKind::Coord(CoordClass::X),
            },
            crate::vars::Var {
                name: "x".into(),
                kind: VarKind::Coord(CoordClass::X),
            },
        ])
        .unwrap();
        let gens = ["x*s^2-y*s+x*y", "y*s^2-x*s", "x^2-y"];
        let j1 = CIdeal::new(
            &jv,
            gens.iter().map(|g| parse_cpoly(&jv, g).unwrap()).collect(),
        );
        let j2 = CIdeal::new(
            &jv_perm,
            gens.iter()
                .map(|g| parse_cpoly(&jv_perm, g).unwrap())
                .collect(),
        );
        let xv1 = x_varset(&jv);
        let xv2 = x_varset(&jv_perm);
        let pt = [("x", Rat::from(num_bigint::BigInt::from(1))), ("y", Rat::from(num_bigint::BigInt::from(1)))];
        let p1 = PrimeSpec::rational_point(&xv1, &pt).unwrap();
        let p2 = PrimeSpec::rational_point(&xv2, &pt).unwrap();
        let gb1 = s_block_gb(&j1).unwrap();
        let gb2 = s_block_gb(&j2).unwrap();
        let i1 = indicial_at_prime(&gb1, &stratify(&gb1), &p1);
        let i2 = indicial_at_prime(&gb2, &stratify(&gb2), &p2);
        match (i1, i2) {
            (None, None) => {}
            (Some(a), Some(b)) => {
                let sa = specialize(&a, &p1).unwrap().as_rational_in_s().unwrap();
                let sb = specialize(&b, &p2).unwrap().as_rational_in_s().unwrap();
                assert_eq!(sa.to_string(), sb.to_string());
            }
            _ => panic!("existence must not depend on the tiebreak"),
        }
    }

    #[test]
    fn shift_and_bms() {
        let jv = jvars_xy();
        let s = parse_cpoly(&jv, "s").unwrap();
        assert_eq!(shift_codim(&s, 1).unwrap(), parse_cpoly(&jv, "s-1").unwrap());
        assert_eq!(shift_codim(&s, 2).unwrap(), parse_cpoly(&jv, "s-2").unwrap());
        let b = parse_cpoly(&jv, "s^2-2").unwrap();
        assert_eq!(shift_codim(&b, 0).unwrap(), b);
        assert_eq!(
            to_bms(&parse_cpoly(&jv, "s-1").unwrap()).unwrap(),
            parse_cpoly(&jv, "s+1").unwrap()
        );
        let one = CPoly::one(&jv);
        assert_eq!(to_bms(&one).unwrap(), one);
    }

    #[test]
    fn associated_operator_vanishes_on_generators() {
        let vs = VarSet::weyl_with_t(&["x"], &["t"], &[]);
        let ann = WeylIdeal::new(
            &vs,
            vec![
                parse_weyl(&vs, "t*dt-x").unwrap(),
                parse_weyl(&vs, "x^2-2").unwrap(),
            ],
        );
        let jv = VarSet::new(vec![
            crate::vars::Var {
                name: "s".into(),
                kind: VarKind::Central(CentralClass::S),
            },
            crate::vars::Var {
                name: "x".into(),
                kind: VarKind::Coord(CoordClass::X),
            },
        ])
        .unwrap();
        let b = LocalizedPoly {
            num: parse_cpoly(&jv, "s-x").unwrap(),
            den: CPoly::one(&jv),
        };
        let out = associated_operator(&ann, &b).unwrap();
        assert!(out.num.is_zero(), "P = 0 since θ−x is a generator");
    }

    #[test]
    fn associated_operator_nonholonomic() {
        let vs = VarSet::weyl_with_t(&["x", "y"], &["t"], &[]);
        let ann = WeylIdeal::new(
            &vs,
            vec![
                parse_weyl(&vs, "(x^2-2)*(t*dt^2-(x+y)*dt)").unwrap(),
                parse_weyl(&vs, "2*x*(dx-dy)+1").unwrap(),
            ],
        );
        let jv = jvars_xy();
        let b = LocalizedPoly {
            num: parse_cpoly(&jv, "s^2-(x+y+1)*s").unwrap(),
            den: CPoly::one(&jv),
        };
        let out = associated_operator(&ann, &b).unwrap();
        assert!(out.num.is_zero(), "θ² − (x+y+1)θ = t·P₃ exactly");
    }
}

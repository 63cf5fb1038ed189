//! Standard bases for local degree orderings.
//!
//! Polynomials are kept with primitive integer coefficients and terms sorted
//! decreasingly for a local order graded by a positive integer weight vector
//! (negative weighted degree, reverse lexicographic ties). Reduction uses
//! Mora's normal form with ecart-minimal reducer selection.
//!
//! Once the leading ideal of the partial basis contains a pure power of every
//! variable, every monomial of weighted degree above the largest standard
//! monomial lies in the leading ideal and therefore in the ideal of the
//! localization. From then on such terms are dropped from all polynomials and
//! pairs whose lcm lies above that bound are skipped.

use std::cmp::Ordering;
use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::poly::{denominator_lcm, ExponentVector, Polynomial, Rational};

pub(crate) const MAX_VARS: usize = 8;

/// Upper bound on the box scanned for standard monomials.
const MAX_BOX: u64 = 4_000_000;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub(crate) struct Mono {
    e: [u16; MAX_VARS],
    w: u32,
}

impl Mono {
    fn one() -> Self {
        Self {
            e: [0; MAX_VARS],
            w: 0,
        }
    }

    fn is_one(&self) -> bool {
        self.e.iter().all(|&x| x == 0)
    }

    fn divides(&self, other: &Self) -> bool {
        self.w <= other.w && self.e.iter().zip(other.e.iter()).all(|(a, b)| a <= b)
    }

    fn mul(&self, other: &Self) -> Self {
        let mut e = self.e;
        for (x, y) in e.iter_mut().zip(other.e.iter()) {
            *x += y;
        }
        Self {
            e,
            w: self.w + other.w,
        }
    }

    fn div(&self, other: &Self) -> Self {
        let mut e = self.e;
        for (x, y) in e.iter_mut().zip(other.e.iter()) {
            *x -= y;
        }
        Self {
            e,
            w: self.w - other.w,
        }
    }

    fn coprime(&self, other: &Self) -> bool {
        self.e
            .iter()
            .zip(other.e.iter())
            .all(|(a, b)| *a == 0 || *b == 0)
    }

    fn pure_power(&self) -> Option<(usize, u16)> {
        let mut found = None;
        for (i, &x) in self.e.iter().enumerate() {
            if x > 0 {
                if found.is_some() {
                    return None;
                }
                found = Some((i, x));
            }
        }
        found
    }

    /// Local order: smaller weighted degree is larger.
    fn cmp_local(&self, other: &Self) -> Ordering {
        other.w.cmp(&self.w).then_with(|| {
            for (x, y) in self.e.iter().rev().zip(other.e.iter().rev()) {
                if x != y {
                    return y.cmp(x);
                }
            }
            Ordering::Equal
        })
    }
}

#[derive(Clone, Debug, Default)]
pub(crate) struct EPoly {
    /// Sorted decreasingly in the local order; coefficients are primitive
    /// with a positive leading coefficient.
    terms: Vec<(Mono, BigInt)>,
}

impl EPoly {
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn lead(&self) -> &Mono {
        &self.terms[0].0
    }

    fn lc(&self) -> &BigInt {
        &self.terms[0].1
    }

    fn ecart(&self) -> u32 {
        self.terms.last().map_or(0, |t| t.0.w) - self.lead().w
    }

    fn make_primitive(&mut self) -> BigInt {
        let mut g = BigInt::zero();
        for (_, c) in &self.terms {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        if g.is_zero() {
            return BigInt::one();
        }
        if self.terms[0].1.is_negative() {
            g = -g;
        }
        if !g.is_one() {
            for (_, c) in &mut self.terms {
                *c /= &g;
            }
        }
        g
    }

    fn truncate(&mut self, cutoff: Option<u32>) {
        if let Some(cut) = cutoff {
            // Terms are sorted by ascending weighted degree.
            let keep = self.terms.partition_point(|t| t.0.w <= cut);
            self.terms.truncate(keep);
        }
    }
}

/// Returns `a·p − b·m·q` truncated above `cutoff`.
fn sub_mul(p: &EPoly, a: &BigInt, b: &BigInt, m: &Mono, q: &EPoly, cutoff: Option<u32>) -> EPoly {
    let cut = cutoff.unwrap_or(u32::MAX);
    let mut out = Vec::with_capacity(p.terms.len() + q.terms.len());
    let (mut i, mut j) = (0, 0);
    let pt = &p.terms;
    let qt = &q.terms;
    let mut qm = qt.first().map(|t| t.0.mul(m));
    loop {
        let pm = pt.get(i).map(|t| t.0);
        let (mono, coef) = match (pm, qm) {
            (None, None) => break,
            (Some(x), None) => {
                i += 1;
                (x, a * &pt[i - 1].1)
            }
            (None, Some(y)) => {
                j += 1;
                let c = -(b * &qt[j - 1].1);
                qm = qt.get(j).map(|t| t.0.mul(m));
                (y, c)
            }
            (Some(x), Some(y)) => match x.cmp_local(&y) {
                Ordering::Greater => {
                    i += 1;
                    (x, a * &pt[i - 1].1)
                }
                Ordering::Less => {
                    j += 1;
                    let c = -(b * &qt[j - 1].1);
                    qm = qt.get(j).map(|t| t.0.mul(m));
                    (y, c)
                }
                Ordering::Equal => {
                    i += 1;
                    j += 1;
                    let c = a * &pt[i - 1].1 - b * &qt[j - 1].1;
                    qm = qt.get(j).map(|t| t.0.mul(m));
                    (x, c)
                }
            },
        };
        if mono.w > cut {
            // Everything further is of even higher weighted degree.
            break;
        }
        if !coef.is_zero() {
            out.push((mono, coef));
        }
    }
    EPoly { terms: out }
}

/// Cancels the leading term of `h` with `g`; the result is made primitive.
fn reduce_lead(h: &EPoly, g: &EPoly, cutoff: Option<u32>) -> EPoly {
    let m = h.lead().div(g.lead());
    let gcd = h.lc().gcd(g.lc());
    let a = g.lc() / &gcd;
    let b = h.lc() / &gcd;
    let mut out = sub_mul(h, &a, &b, &m, g, cutoff);
    if !out.is_zero() {
        out.make_primitive();
    }
    out
}

/// S-polynomial; `l` is the (weighted) lcm of the leading monomials.
fn spoly(f: &EPoly, g: &EPoly, l: &Mono, cutoff: Option<u32>) -> EPoly {
    let mf = l.div(f.lead());
    let mg = l.div(g.lead());
    let gcd = f.lc().gcd(g.lc());
    let a = g.lc() / &gcd;
    let b = f.lc() / &gcd;
    // a·mf·f − b·mg·g
    let scaled_f = EPoly {
        terms: f
            .terms
            .iter()
            .map(|(mo, c)| (mo.mul(&mf), c.clone()))
            .collect(),
    };
    let mut out = sub_mul(&scaled_f, &a, &b, &mg, g, cutoff);
    if !out.is_zero() {
        out.make_primitive();
    }
    out
}

/// Exponent-wise maximum; the weight is left at zero for the caller to fill.
fn lcm(a: &Mono, b: &Mono) -> Mono {
    let mut e = [0u16; MAX_VARS];
    for (x, (p, q)) in e.iter_mut().zip(a.e.iter().zip(&b.e)) {
        *x = *p.max(q);
    }
    Mono { e, w: 0 }
}

#[derive(Clone, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Mono,
}

/// Conversion between [`Polynomial`] and the internal representation.
#[derive(Clone, Debug)]
pub(crate) struct Ring {
    pub nvars: usize,
    pub weights: [u32; MAX_VARS],
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EngineLimit {
    #[error("at most {MAX_VARS} variables are supported, got {0}")]
    TooManyVariables(usize),
    #[error("exponent too large for the standard basis engine")]
    ExponentOverflow,
    #[error("quotient too large to enumerate its standard monomials")]
    QuotientTooLarge,
}

impl Ring {
    pub fn new(weights: &[u32]) -> Result<Self, EngineLimit> {
        if weights.len() > MAX_VARS {
            return Err(EngineLimit::TooManyVariables(weights.len()));
        }
        let mut w = [0u32; MAX_VARS];
        w[..weights.len()].copy_from_slice(weights);
        Ok(Self {
            nvars: weights.len(),
            weights: w,
        })
    }

    pub fn mono(&self, e: &ExponentVector) -> Result<Mono, EngineLimit> {
        let mut out = [0u16; MAX_VARS];
        let mut w: u64 = 0;
        for (k, &x) in e.as_slice().iter().enumerate() {
            out[k] = u16::try_from(x).map_err(|_| EngineLimit::ExponentOverflow)?;
            w += u64::from(x) * u64::from(self.weights[k]);
        }
        let w = u32::try_from(w).map_err(|_| EngineLimit::ExponentOverflow)?;
        Ok(Mono { e: out, w })
    }

    fn with_weight(&self, mut m: Mono) -> Mono {
        m.w = (0..self.nvars)
            .map(|k| u32::from(m.e[k]) * self.weights[k])
            .sum();
        m
    }

    pub fn exponent(&self, m: &Mono) -> ExponentVector {
        ExponentVector::new(m.e[..self.nvars].iter().map(|&x| u32::from(x)).collect())
    }

    pub fn encode(&self, p: &Polynomial) -> Result<EPoly, EngineLimit> {
        Ok(self.encode_scaled(p)?.0)
    }

    /// Returns `(e, s)` with `e = s·p` primitive.
    pub fn encode_scaled(&self, p: &Polynomial) -> Result<(EPoly, Rational), EngineLimit> {
        let l = denominator_lcm(p.terms().map(|(_, c)| c));
        let scale = Rational::from_integer(l);
        let mut terms = Vec::with_capacity(p.num_terms());
        for (e, c) in p.terms() {
            terms.push((self.mono(e)?, (c * &scale).to_integer()));
        }
        terms.sort_by(|a, b| b.0.cmp_local(&a.0));
        let mut out = EPoly { terms };
        let content = if out.is_zero() {
            BigInt::one()
        } else {
            out.make_primitive()
        };
        Ok((out, scale / Rational::from_integer(content)))
    }

    pub fn to_poly(&self, p: &EPoly) -> Polynomial {
        Polynomial::from_terms(
            self.nvars,
            p.terms
                .iter()
                .map(|(m, c)| (self.exponent(m), Rational::from_integer(c.clone()))),
        )
    }
}

/// A (partial or complete) local standard basis.
#[derive(Clone, Debug)]
pub(crate) struct Engine {
    pub ring: Ring,
    polys: Vec<EPoly>,
    active: Vec<bool>,
    pub unit: bool,
    /// Monomials of weighted degree above this lie in the ideal.
    pub cutoff: Option<u32>,
    /// Standard monomials, available once the leading ideal is zero-dimensional.
    pub standard: Option<Vec<Mono>>,
    pure: [Option<u16>; MAX_VARS],
}

impl Engine {
    /// Computes a standard basis of the ideal generated by `gens`.
    pub fn compute(ring: Ring, gens: Vec<EPoly>) -> Self {
        let mut eng = Engine {
            ring,
            polys: Vec::new(),
            active: Vec::new(),
            unit: false,
            cutoff: None,
            standard: None,
            pure: [None; MAX_VARS],
        };
        let mut gens: Vec<EPoly> = gens.into_iter().filter(|g| !g.is_zero()).collect();
        if gens.iter().any(|g| g.lead().is_one()) {
            eng.set_unit();
            return eng;
        }
        gens.sort_by(|a, b| b.lead().cmp_local(a.lead()));
        let mut pending_gens: std::collections::VecDeque<EPoly> = gens.into();
        let mut pairs: Vec<Pair> = Vec::new();
        loop {
            // Next item: the pair or generator of smallest weighted degree.
            let best_pair = pairs
                .iter()
                .enumerate()
                .min_by(|(_, p), (_, q)| {
                    p.lcm.w.cmp(&q.lcm.w).then_with(|| q.lcm.cmp_local(&p.lcm))
                })
                .map(|(k, p)| (k, p.lcm.w));
            let take_gen = match (pending_gens.front(), best_pair) {
                (None, None) => break,
                (Some(_), None) => true,
                (None, Some(_)) => false,
                (Some(g), Some((_, w))) => g.lead().w <= w,
            };
            let s = if take_gen {
                let mut g = pending_gens.pop_front().expect("nonempty");
                g.truncate(eng.cutoff);
                g
            } else {
                let (k, _) = best_pair.expect("nonempty");
                let p = pairs.swap_remove(k);
                if eng.cutoff.is_some_and(|c| p.lcm.w > c) {
                    continue;
                }
                spoly(&eng.polys[p.i], &eng.polys[p.j], &p.lcm, eng.cutoff)
            };
            if s.is_zero() {
                continue;
            }
            let h = eng.nf_mora(s);
            if h.is_zero() {
                continue;
            }
            if h.lead().is_one() {
                eng.set_unit();
                return eng;
            }
            eng.insert(h, &mut pairs);
        }
        eng.polys.iter_mut().zip(&eng.active).for_each(|(p, &a)| {
            if !a {
                p.terms.clear();
            }
        });
        eng
    }

    fn set_unit(&mut self) {
        self.unit = true;
        self.polys = vec![EPoly {
            terms: vec![(Mono::one(), BigInt::one())],
        }];
        self.active = vec![true];
        self.cutoff = Some(0);
        self.standard = Some(Vec::new());
    }

    /// Active basis elements.
    pub fn basis(&self) -> impl Iterator<Item = &EPoly> {
        self.polys
            .iter()
            .zip(&self.active)
            .filter(|(_, &a)| a)
            .map(|(p, _)| p)
    }

    pub fn leads(&self) -> Vec<Mono> {
        self.basis().map(|p| *p.lead()).collect()
    }

    pub fn is_zero_dimensional(&self) -> bool {
        self.unit || self.pure[..self.ring.nvars].iter().all(Option::is_some)
    }

    /// Gebauer–Möller update followed by bookkeeping of the truncation bound.
    fn insert(&mut self, h: EPoly, pairs: &mut Vec<Pair>) {
        let k = self.polys.len();
        let hl = *h.lead();
        let lcm_with = |m: &Mono| self.ring.with_weight(lcm(&hl, m));
        let candidates: Vec<(usize, Mono)> = (0..k)
            .filter(|&i| self.active[i])
            .map(|i| (i, lcm_with(self.polys[i].lead())))
            .collect();
        // Chain criterion among the new pairs.
        let mut kept: Vec<(usize, Mono)> = Vec::new();
        for (idx, &(i, l)) in candidates.iter().enumerate() {
            let coprime = hl.coprime(self.polys[i].lead());
            let dominated = candidates
                .iter()
                .enumerate()
                .any(|(jdx, &(_, l2))| jdx != idx && l2.divides(&l) && (l2 != l || jdx < idx));
            if coprime || !dominated {
                kept.push((i, l));
            }
        }
        // Old pairs made redundant by the new leading monomial.
        pairs.retain(|p| {
            let li = lcm_with(self.polys[p.i].lead());
            let lj = lcm_with(self.polys[p.j].lead());
            !(hl.divides(&p.lcm) && li != p.lcm && lj != p.lcm)
        });
        for (i, l) in kept {
            if !hl.coprime(self.polys[i].lead()) {
                pairs.push(Pair { i, j: k, lcm: l });
            }
        }
        for i in 0..k {
            if self.active[i] && hl.divides(self.polys[i].lead()) {
                self.active[i] = false;
            }
        }
        self.polys.push(h);
        self.active.push(true);
        self.update_bound(hl);
        if let Some(c) = self.cutoff {
            pairs.retain(|p| p.lcm.w <= c);
        }
    }

    fn update_bound(&mut self, lead: Mono) {
        if let Some((v, e)) = lead.pure_power() {
            if self.pure[v].is_none_or(|old| e < old) {
                self.pure[v] = Some(e);
            }
        }
        if let Some(std) = &mut self.standard {
            std.retain(|m| !lead.divides(m));
        } else if self.is_zero_dimensional() {
            let bounds: Vec<u16> = self.pure[..self.ring.nvars]
                .iter()
                .map(|p| p.expect("zero-dimensional"))
                .collect();
            let size: u64 = bounds.iter().map(|&b| u64::from(b)).product();
            if size > MAX_BOX {
                return;
            }
            let leads = self.leads();
            let mut out = Vec::new();
            let mut cur = Mono::one();
            enumerate_box(&self.ring, &bounds, 0, &mut cur, &leads, &mut out);
            self.standard = Some(out);
        } else {
            return;
        }
        let std = self.standard.as_ref().expect("set above");
        let new_cut = std.iter().map(|m| m.w).max().unwrap_or(0);
        if self.cutoff.is_none_or(|c| new_cut < c) {
            self.cutoff = Some(new_cut);
            for (p, a) in self.polys.iter_mut().zip(self.active.iter_mut()) {
                p.truncate(Some(new_cut));
                if p.is_zero() {
                    *a = false;
                } else {
                    p.make_primitive();
                }
            }
        }
    }

    /// Mora's weak normal form.
    pub fn nf_mora(&self, mut h: EPoly) -> EPoly {
        h.truncate(self.cutoff);
        let mut extra: Vec<EPoly> = Vec::new();
        loop {
            if h.is_zero() {
                return h;
            }
            let lm = *h.lead();
            let reducer = self
                .basis()
                .chain(extra.iter())
                .filter(|g| g.lead().divides(&lm))
                .min_by_key(|g| g.ecart());
            let Some(g) = reducer else {
                return h;
            };
            let next = reduce_lead(&h, g, self.cutoff);
            if g.ecart() > h.ecart() {
                extra.push(h);
            }
            h = next;
        }
    }

    /// Fully reduced normal form for a zero-dimensional basis; returns the
    /// coordinates on the standard monomials, exact over the rationals.
    pub fn coordinates(&self, h: EPoly, index: &HashMap<Mono, usize>) -> Option<Vec<Rational>> {
        let std = self.standard.as_ref()?;
        let mut h = h;
        h.truncate(self.cutoff);
        // original ≡ h / scale modulo the ideal
        let mut scale = Rational::one();
        let leads: Vec<&EPoly> = self.basis().collect();
        let mut idx = 0;
        while idx < h.terms.len() {
            let m = h.terms[idx].0;
            let Some(g) = leads.iter().find(|g| g.lead().divides(&m)) else {
                idx += 1;
                continue;
            };
            let mono = m.div(g.lead());
            let gcd = h.terms[idx].1.gcd(g.lc());
            let a = g.lc() / &gcd;
            let b = &h.terms[idx].1 / &gcd;
            // Only the tail from idx onwards changes.
            let head: Vec<(Mono, BigInt)> =
                h.terms[..idx].iter().map(|(mo, c)| (*mo, c * &a)).collect();
            let tail = EPoly {
                terms: h.terms[idx..].to_vec(),
            };
            let reduced = sub_mul(&tail, &a, &b, &mono, g, self.cutoff);
            let mut terms = head;
            terms.extend(reduced.terms);
            h = EPoly { terms };
            scale *= Rational::from_integer(a);
        }
        let mut coords = vec![Rational::zero(); std.len()];
        for (m, c) in h.terms {
            let pos = index[&m];
            coords[pos] = Rational::from_integer(c) / &scale;
        }
        Some(coords)
    }
}

fn enumerate_box(
    ring: &Ring,
    bounds: &[u16],
    k: usize,
    cur: &mut Mono,
    leads: &[Mono],
    out: &mut Vec<Mono>,
) {
    if k == bounds.len() {
        let m = ring.with_weight(*cur);
        if !leads.iter().any(|l| l.divides(&m)) {
            out.push(m);
        }
        return;
    }
    for e in 0..bounds[k] {
        cur.e[k] = e;
        enumerate_box(ring, bounds, k + 1, cur, leads, out);
    }
    cur.e[k] = 0;
}

/// Sorts monomials decreasingly in the local order (so `1` comes first).
pub(crate) fn sort_local(ms: &mut [Mono]) {
    ms.sort_by(|a, b| b.cmp_local(a));
}

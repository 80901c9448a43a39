//! Multiplicative sets generated by a pole set, truncated at a modulus:
//! G^{(m)}(Ω) = {μ₁⋯μ_m}, G(Ω) = odd-length products with conjugates,
//! G̃(Ω) = ∪_m G^{(m)}(Ω) ∪ -∪_m G^{(m)}(Ω).

use num_complex::Complex;
use num_traits::One;
use serde_json::{json, Value};

use crate::error::{JostError, Result};
use crate::io::{cnum, cnums, num, pole_set_to_json};
use crate::model::PoleSet;
use crate::scalar::{cabs, Scalar};

/// Relative distance under which two products are the same element.
pub const DEDUP_RTOL: f64 = 1e-9;

/// Default relative tolerance for matching a candidate point.
pub const MATCH_RTOL: f64 = 1e-6;

#[derive(Clone, Debug, PartialEq)]
pub struct Element<T> {
    pub z: Complex<T>,
    /// Number of generators in the product.
    pub depth: usize,
    /// The generators multiplied (first witness found), before any sign flip.
    pub factors: Vec<Complex<T>>,
    pub negated: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct GeneratedSet<T> {
    pub generators: Vec<Complex<T>>,
    pub cutoff: T,
    pub elements: Vec<Element<T>>,
}

/// Which generated set a containment refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Semigroup {
    /// G̃(Ω): all products and their negatives.
    Tilde,
    /// G(Ω): products of odd length (conjugates in the second half).
    Odd,
}

impl<T: Scalar> GeneratedSet<T> {
    pub fn locations(&self) -> Vec<Complex<T>> {
        self.elements.iter().map(|e| e.z).collect()
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Elements within relative distance `tol` of `z`.
    pub fn witnesses(&self, z: Complex<T>, tol: T) -> Vec<&Element<T>> {
        self.elements.iter().filter(|e| cabs(e.z - z) <= tol * cabs(z)).collect()
    }

    pub fn to_json(&self) -> Value {
        let elements: Vec<Value> = self
            .elements
            .iter()
            .map(|e| json!({"z": cnum(e.z), "depth": e.depth, "product_of": cnums(&e.factors), "negated": e.negated}))
            .collect();
        json!({"generators": cnums(&self.generators), "cutoff": num(self.cutoff), "elements": elements})
    }
}

/// Ω closed under conjugation, duplicates removed.
fn closed_generators<T: Scalar>(omega: &PoleSet<T>) -> Result<Vec<Complex<T>>> {
    if omega.is_empty() {
        return Err(JostError::Invalid("generated set: empty generator set".into()));
    }
    let mut g: Vec<Complex<T>> = Vec::new();
    for z in omega.locations().into_iter().flat_map(|z| [z, z.conj()]) {
        if !(cabs(z) > T::one()) {
            return Err(JostError::Invalid(format!(
                "generator {} must lie outside the closed unit disk",
                z.re.approx()
            )));
        }
        if !g.iter().any(|w| cabs(*w - z) <= T::of(DEDUP_RTOL) * cabs(z)) {
            g.push(z);
        }
    }
    g.sort_by(|a, b| cabs(*a).partial_cmp(&cabs(*b)).unwrap_or(std::cmp::Ordering::Equal));
    Ok(g)
}

fn insert<T: Scalar>(out: &mut Vec<Element<T>>, e: Element<T>) {
    if !out.iter().any(|w| cabs(w.z - e.z) <= T::of(DEDUP_RTOL) * cabs(e.z)) {
        out.push(e);
    }
}

fn sort_elements<T: Scalar>(els: &mut [Element<T>]) {
    els.sort_by(|a, b| {
        let (ma, mb) = (cabs(a.z).approx(), cabs(b.z).approx());
        let (ta, tb) = (a.z.im.approx().atan2(a.z.re.approx()), b.z.im.approx().atan2(b.z.re.approx()));
        ma.partial_cmp(&mb)
            .unwrap_or(std::cmp::Ordering::Equal)
            .then(ta.partial_cmp(&tb).unwrap_or(std::cmp::Ordering::Equal))
    });
}

/// Depth-first enumeration of nondecreasing index sequences of length m,
/// pruned once the modulus can only exceed the cutoff.
fn products<T: Scalar>(gens: &[Complex<T>], m: usize, cutoff: T, out: &mut Vec<Element<T>>) {
    fn rec<T: Scalar>(
        gens: &[Complex<T>],
        start: usize,
        left: usize,
        acc: Complex<T>,
        factors: &mut Vec<Complex<T>>,
        cutoff: T,
        out: &mut Vec<Element<T>>,
    ) {
        if left == 0 {
            insert(out, Element { z: acc, depth: factors.len(), factors: factors.clone(), negated: false });
            return;
        }
        for i in start..gens.len() {
            let g = gens[i];
            // generators are sorted by modulus, so later choices are no smaller
            let bound = cabs(acc) * cabs(g).powi(left as i32);
            if bound > cutoff {
                break;
            }
            factors.push(g);
            rec(gens, i, left - 1, acc * g, factors, cutoff, out);
            factors.pop();
        }
    }
    let mut factors = Vec::new();
    rec(gens, 0, m, Complex::one(), &mut factors, cutoff, out);
}

/// G^{(m)}(Ω) ∩ {|z| ≤ cutoff}.
pub fn g_m<T: Scalar>(omega: &PoleSet<T>, m: usize, cutoff: T) -> Result<GeneratedSet<T>> {
    if m == 0 {
        return Err(JostError::Invalid("g_m: m must be at least 1".into()));
    }
    let gens = closed_generators(omega)?;
    let mut elements = Vec::new();
    products(&gens, m, cutoff * T::of(1.0 + DEDUP_RTOL), &mut elements);
    sort_elements(&mut elements);
    Ok(GeneratedSet { generators: gens, cutoff, elements })
}

fn max_depth<T: Scalar>(gens: &[Complex<T>], cutoff: T) -> usize {
    let min = cabs(gens[0]).approx();
    ((cutoff.approx().ln() / min.ln()).floor() as usize).max(1)
}

/// G̃(Ω) ∩ {|z| ≤ cutoff}.
pub fn g_tilde<T: Scalar>(omega: &PoleSet<T>, cutoff: T) -> Result<GeneratedSet<T>> {
    let gens = closed_generators(omega)?;
    let c = cutoff * T::of(1.0 + DEDUP_RTOL);
    let mut elements = Vec::new();
    for m in 1..=max_depth(&gens, c) {
        products(&gens, m, c, &mut elements);
    }
    let negatives: Vec<Element<T>> = elements.iter().map(|e| Element { z: -e.z, negated: true, ..e.clone() }).collect();
    for e in negatives {
        insert(&mut elements, e);
    }
    sort_elements(&mut elements);
    Ok(GeneratedSet { generators: gens, cutoff, elements })
}

/// G(Ω) ∩ {|z| ≤ cutoff}: μ₁⋯μ_j·conj(μ_{j+1})⋯conj(μ_{2j-1}).
///
/// For a conjugation-closed Ω these are exactly the odd-length products.
pub fn g_odd<T: Scalar>(omega: &PoleSet<T>, cutoff: T) -> Result<GeneratedSet<T>> {
    let gens = closed_generators(omega)?;
    let c = cutoff * T::of(1.0 + DEDUP_RTOL);
    let mut elements = Vec::new();
    for m in (1..=max_depth(&gens, c)).step_by(2) {
        products(&gens, m, c, &mut elements);
    }
    sort_elements(&mut elements);
    Ok(GeneratedSet { generators: gens, cutoff, elements })
}

pub fn generate<T: Scalar>(omega: &PoleSet<T>, cutoff: T, kind: Semigroup) -> Result<GeneratedSet<T>> {
    match kind {
        Semigroup::Tilde => g_tilde(omega, cutoff),
        Semigroup::Odd => g_odd(omega, cutoff),
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Match<T> {
    pub point: Complex<T>,
    /// Every generated element within tolerance (more than one is a near-coincidence).
    pub witnesses: Vec<Element<T>>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ContainmentReport<T> {
    pub contained: bool,
    pub matches: Vec<Match<T>>,
    pub violations: Vec<Complex<T>>,
    /// Candidate points beyond the cutoff, not examined.
    pub skipped: Vec<Complex<T>>,
    pub generated: GeneratedSet<T>,
}

impl<T: Scalar> ContainmentReport<T> {
    pub fn to_json(&self) -> Value {
        let matches: Vec<Value> = self
            .matches
            .iter()
            .map(|m| {
                json!({
                    "point": cnum(m.point),
                    "product_of": cnums(&m.witnesses[0].factors),
                    "negated": m.witnesses[0].negated,
                    "alternatives": m.witnesses[1..].iter().map(|w| json!({"z": cnum(w.z), "product_of": cnums(&w.factors), "negated": w.negated})).collect::<Vec<_>>(),
                })
            })
            .collect();
        json!({
            "contained": self.contained,
            "matches": matches,
            "violations": cnums(&self.violations),
            "skipped": cnums(&self.skipped),
            "generated": self.generated.to_json(),
        })
    }
}

/// Per-point check of candidate ⊂ G̃(generators) (or G) within the cutoff.
/// An empty generator set generates the empty set.
pub fn check_containment<T: Scalar>(
    candidate: &PoleSet<T>,
    generators: &PoleSet<T>,
    cutoff: T,
    tol: T,
    kind: Semigroup,
) -> Result<ContainmentReport<T>> {
    let generated = if generators.is_empty() {
        GeneratedSet { generators: Vec::new(), cutoff, elements: Vec::new() }
    } else {
        generate(generators, cutoff * (T::one() + tol * T::of(2.0)), kind)?
    };
    let mut matches = Vec::new();
    let mut violations = Vec::new();
    let mut skipped = Vec::new();
    for z in candidate.locations() {
        if cabs(z) > cutoff * (T::one() + tol) {
            skipped.push(z);
            continue;
        }
        let w: Vec<Element<T>> = generated.witnesses(z, tol).into_iter().cloned().collect();
        if w.is_empty() {
            violations.push(z);
        } else {
            matches.push(Match { point: z, witnesses: w });
        }
    }
    Ok(ContainmentReport { contained: violations.is_empty(), matches, violations, skipped, generated })
}

/// Both directions P ⊂ G̃(T) and T ⊂ G̃(P) (or with G).
pub fn mutual_containment<T: Scalar>(
    p: &PoleSet<T>,
    t: &PoleSet<T>,
    cutoff: T,
    tol: T,
    kind: Semigroup,
) -> Result<(ContainmentReport<T>, ContainmentReport<T>)> {
    Ok((check_containment(p, t, cutoff, tol, kind)?, check_containment(t, p, cutoff, tol, kind)?))
}

pub fn mutual_to_json<T: Scalar>(
    p: &PoleSet<T>,
    t: &PoleSet<T>,
    reports: &(ContainmentReport<T>, ContainmentReport<T>),
) -> Value {
    json!({
        "P": pole_set_to_json(p),
        "T": pole_set_to_json(t),
        "P_in_G(T)": reports.0.to_json(),
        "T_in_G(P)": reports.1.to_json(),
        "contained": reports.0.contained && reports.1.contained,
    })
}

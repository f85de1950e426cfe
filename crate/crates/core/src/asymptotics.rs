//! Leading-exponent machinery: admissible projection walks, the kappa
//! invariant by three independent routes (trace valuation, minimum-weight
//! walk, subset minimization on the run cycle), and the classification of
//! words with leading order x^4.

use std::fmt;

use num_traits::Zero;
use rayon::prelude::*;
use serde::ser::{SerializeStruct, Serializer};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{format_rational, pow2, Rational};
use crate::family::{projections, Mat3};
use crate::words::{run_decomposition, word_count, word_trace, RunForm, Word};

/// Default cap on the number of run pairs for the 4^r walk enumeration.
pub const DEFAULT_WALK_RUN_CAP: u32 = 16;
/// Default cap on the number of run pairs for the 2^r subset minimization.
pub const DEFAULT_BRIDGE_RUN_CAP: u32 = 24;

/// Choice of projection for an A-run: the macroscopic sector P or the
/// small sector U.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SigmaChoice {
    P,
    U,
}

/// Choice of projection for a B-run: the small sector V or the
/// macroscopic sector Q.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum TauChoice {
    V,
    Q,
}

/// One admissible summand of the run-by-run expansion of a word trace:
/// the projection choices, their total weight, and the exact trace of the
/// cyclic product of the chosen projections.
#[derive(Clone, Debug, PartialEq)]
pub struct WalkAssignment {
    pub sigma: Vec<SigmaChoice>,
    pub tau: Vec<TauChoice>,
    pub weight: u32,
    pub trace_value: Rational,
}

impl WalkAssignment {
    pub fn sigma_string(&self) -> String {
        self.sigma
            .iter()
            .map(|c| if *c == SigmaChoice::P { 'P' } else { 'U' })
            .collect()
    }

    pub fn tau_string(&self) -> String {
        self.tau
            .iter()
            .map(|c| if *c == TauChoice::V { 'V' } else { 'Q' })
            .collect()
    }
}

impl fmt::Display for WalkAssignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "sigma={} tau={} weight={} trace={}",
            self.sigma_string(),
            self.tau_string(),
            self.weight,
            self.trace_value
        )
    }
}

impl Serialize for WalkAssignment {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("WalkAssignment", 4)?;
        st.serialize_field("sigma", &self.sigma_string())?;
        st.serialize_field("tau", &self.tau_string())?;
        st.serialize_field("weight", &self.weight)?;
        st.serialize_field("trace_value", &format_rational(&self.trace_value))?;
        st.end()
    }
}

/// A subset S of run indices (0-based) with its closed predecessor
/// neighborhood Gamma(S) = {i : i in S or i+1 in S (mod r)} and the cost
/// sum_{i not in S} a_i + sum_{i in Gamma(S)} b_i.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BridgeSubset {
    pub s: Vec<usize>,
    pub gamma: Vec<usize>,
    pub cost: u32,
}

impl fmt::Display for BridgeSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "S={:?} Gamma={:?} cost={}", self.s, self.gamma, self.cost)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum KappaMethod {
    Brute,
    Walks,
    Bridge,
}

impl fmt::Display for KappaMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            KappaMethod::Brute => "brute",
            KappaMethod::Walks => "walks",
            KappaMethod::Bridge => "bridge",
        };
        write!(f, "{s}")
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Minimizer {
    Walk(WalkAssignment),
    Bridge(BridgeSubset),
}

/// The leading exponent of a word trace with its provenance. The brute
/// route reads it off the exact trace polynomial; the walks route carries
/// the minimal-weight assignments; the bridge route carries the minimizing
/// subsets but no leading coefficient (the subset cost determines only the
/// exponent).
#[derive(Clone, Debug, PartialEq)]
pub struct KappaResult {
    pub word: Word,
    pub kappa: u32,
    pub leading_coefficient: Option<Rational>,
    pub method: KappaMethod,
    pub minimizers: Vec<Minimizer>,
}

impl Serialize for KappaResult {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("KappaResult", 5)?;
        st.serialize_field("word", &self.word)?;
        st.serialize_field("kappa", &self.kappa)?;
        st.serialize_field(
            "leading_coefficient",
            &self.leading_coefficient.as_ref().map(format_rational),
        )?;
        st.serialize_field("method", &self.method)?;
        st.serialize_field("minimizers", &self.minimizers)?;
        st.end()
    }
}

fn require_both_letters(w: &Word) -> Result<()> {
    if w.has_both_letters() {
        Ok(())
    } else {
        Err(Error::SingleLetterWord {
            word: w.to_string(),
        })
    }
}

/// kappa from the defining property: the valuation of the exact word
/// trace computed by plain matrix products.
pub fn kappa_brute(w: &Word) -> Result<KappaResult> {
    require_both_letters(w)?;
    let (kappa, coeff) = word_trace(w)
        .valuation()
        .expect("a mixed word has nonzero trace");
    Ok(KappaResult {
        word: *w,
        kappa,
        leading_coefficient: Some(coeff),
        method: KappaMethod::Brute,
        minimizers: Vec::new(),
    })
}

/// All admissible projection walks of the word's run form, in
/// lexicographic order of the choice sequence (P before U, V before Q).
///
/// The sum over the returned assignments of (2x)^weight * trace_value
/// equals the word trace exactly. Assignments are found by a depth-first
/// scan over the 4^r choices; a branch is abandoned as soon as its prefix
/// product is the zero matrix, since every completion of such a prefix has
/// zero trace.
pub fn walk_expansion(w: &Word) -> Result<Vec<WalkAssignment>> {
    walk_expansion_capped(w, DEFAULT_WALK_RUN_CAP)
}

pub fn walk_expansion_capped(w: &Word, max_runs: u32) -> Result<Vec<WalkAssignment>> {
    let rf = run_decomposition(w)?;
    if rf.r() as u32 > max_runs {
        return Err(Error::ComplexityGuard {
            what: "run pairs in walk expansion",
            limit: max_runs as u64,
            actual: rf.r() as u64,
        });
    }
    let set = projections();
    let r = rf.r();
    let mut out = Vec::new();
    let mut sigma = Vec::with_capacity(r);
    let mut tau = Vec::with_capacity(r);

    // Stack of prefix products; products[k] is the product of the first k
    // chosen projections.
    let mut products: Vec<Mat3<Rational>> = vec![Mat3::identity()];

    struct Dfs<'a> {
        rf: &'a RunForm,
        p: &'a Mat3<Rational>,
        u: &'a Mat3<Rational>,
        v: &'a Mat3<Rational>,
        q: &'a Mat3<Rational>,
    }

    impl Dfs<'_> {
        fn go(
            &self,
            slot: usize,
            products: &mut Vec<Mat3<Rational>>,
            sigma: &mut Vec<SigmaChoice>,
            tau: &mut Vec<TauChoice>,
            out: &mut Vec<WalkAssignment>,
        ) {
            let r = self.rf.r();
            if slot == 2 * r {
                let trace = products.last().unwrap().trace();
                if !trace.is_zero() {
                    let weight: u32 = sigma
                        .iter()
                        .zip(&self.rf.a)
                        .filter(|(c, _)| **c == SigmaChoice::U)
                        .map(|(_, a)| *a)
                        .chain(
                            tau.iter()
                                .zip(&self.rf.b)
                                .filter(|(c, _)| **c == TauChoice::V)
                                .map(|(_, b)| *b),
                        )
                        .sum();
                    out.push(WalkAssignment {
                        sigma: sigma.clone(),
                        tau: tau.clone(),
                        weight,
                        trace_value: trace,
                    });
                }
                return;
            }
            let is_sigma_slot = slot % 2 == 0;
            let choices: [(&Mat3<Rational>, usize); 2] = if is_sigma_slot {
                [(self.p, 0), (self.u, 1)]
            } else {
                [(self.v, 0), (self.q, 1)]
            };
            for (mat, which) in choices {
                let next = products.last().unwrap() * mat;
                if next.is_zero() {
                    continue;
                }
                if is_sigma_slot {
                    sigma.push(if which == 0 { SigmaChoice::P } else { SigmaChoice::U });
                } else {
                    tau.push(if which == 0 { TauChoice::V } else { TauChoice::Q });
                }
                products.push(next);
                self.go(slot + 1, products, sigma, tau, out);
                products.pop();
                if is_sigma_slot {
                    sigma.pop();
                } else {
                    tau.pop();
                }
            }
        }
    }

    Dfs {
        rf: &rf,
        p: &set.p,
        u: &set.u,
        v: &set.v,
        q: &set.q,
    }
    .go(0, &mut products, &mut sigma, &mut tau, &mut out);
    Ok(out)
}

/// kappa as the minimum weight over admissible walks; the leading
/// coefficient is 2^kappa times the sum of the minimal-weight traces.
pub fn kappa_walks(w: &Word) -> Result<KappaResult> {
    kappa_walks_capped(w, DEFAULT_WALK_RUN_CAP)
}

pub fn kappa_walks_capped(w: &Word, max_runs: u32) -> Result<KappaResult> {
    let assignments = walk_expansion_capped(w, max_runs)?;
    let kappa = assignments
        .iter()
        .map(|a| a.weight)
        .min()
        .expect("a mixed word has at least one admissible walk");
    let minimal: Vec<&WalkAssignment> =
        assignments.iter().filter(|a| a.weight == kappa).collect();
    let coeff = minimal
        .iter()
        .fold(Rational::zero(), |acc, a| acc + &a.trace_value)
        * pow2(kappa);
    Ok(KappaResult {
        word: *w,
        kappa,
        leading_coefficient: Some(coeff),
        method: KappaMethod::Walks,
        minimizers: minimal
            .into_iter()
            .map(|a| Minimizer::Walk(a.clone()))
            .collect(),
    })
}

/// Closed neighborhood Gamma(S) = {i : i in S or i+1 in S (mod r)} for a
/// subset given as a bitmask over 0..r.
fn gamma_mask(s_mask: u64, r: usize) -> u64 {
    let mut gamma = s_mask;
    for i in 0..r {
        if s_mask >> ((i + 1) % r) & 1 == 1 {
            gamma |= 1 << i;
        }
    }
    gamma
}

fn mask_to_indices(mask: u64, r: usize) -> Vec<usize> {
    (0..r).filter(|i| mask >> i & 1 == 1).collect()
}

/// kappa by subset minimization over the run cycle:
/// min over S of (sum of a_i outside S + sum of b_i on Gamma(S)).
/// Returns every minimizing subset (ascending bitmask order); this route
/// determines the exponent only, so the leading coefficient is None.
pub fn kappa_bridge(rf: &RunForm) -> Result<KappaResult> {
    kappa_bridge_capped(rf, DEFAULT_BRIDGE_RUN_CAP)
}

pub fn kappa_bridge_capped(rf: &RunForm, max_runs: u32) -> Result<KappaResult> {
    let r = rf.r();
    if r as u32 > max_runs {
        return Err(Error::ComplexityGuard {
            what: "run pairs in bridge minimization",
            limit: max_runs as u64,
            actual: r as u64,
        });
    }
    let mut best: Option<u32> = None;
    let mut minimizers: Vec<BridgeSubset> = Vec::new();
    for s_mask in 0..(1u64 << r) {
        let gamma = gamma_mask(s_mask, r);
        let mut cost = 0u32;
        for i in 0..r {
            if s_mask >> i & 1 == 0 {
                cost += rf.a[i];
            }
            if gamma >> i & 1 == 1 {
                cost += rf.b[i];
            }
        }
        if best.map_or(true, |b| cost < b) {
            best = Some(cost);
            minimizers.clear();
        }
        if best == Some(cost) {
            minimizers.push(BridgeSubset {
                s: mask_to_indices(s_mask, r),
                gamma: mask_to_indices(gamma, r),
                cost,
            });
        }
    }
    Ok(KappaResult {
        word: rf.original_word(),
        kappa: best.expect("at least the empty subset was scanned"),
        leading_coefficient: None,
        method: KappaMethod::Bridge,
        minimizers: minimizers.into_iter().map(Minimizer::Bridge).collect(),
    })
}

/// Outcome of the exhaustive order-x^4 sweep over one (n, m) class.
#[derive(Clone, Debug, Serialize)]
pub struct Classification {
    pub n: u32,
    pub m: u32,
    pub total_words: u64,
    /// Words with kappa exactly 4, in lexicographic order.
    pub order4: Vec<Word>,
    /// Smallest kappa over the whole class (>= 4 when n, m >= 5).
    pub min_kappa: u32,
}

/// Sweeps every word with n letters A and m letters B (n, m >= 5) and
/// returns the words of leading order x^4 together with the class-wide
/// minimum of kappa. The expected outcome is the n+m cyclic shifts of the
/// bridge pattern A^(n-2) B A B^(m-2) A B and nothing else.
pub fn classify_order4(n: u32, m: u32) -> Result<Classification> {
    if n < 5 || m < 5 {
        return Err(Error::RangeError { n, m, min: 5 });
    }
    let total = word_count(n, m);
    let per_word: Vec<(Word, u32)> = (0..total)
        .into_par_iter()
        .map(|r| {
            let w = crate::words::unrank(n, m, r);
            let kappa = kappa_brute(&w).expect("words in a mixed class have both letters");
            (w, kappa.kappa)
        })
        .collect();
    let min_kappa = per_word.iter().map(|(_, k)| *k).min().expect("class nonempty");
    let order4 = per_word
        .into_iter()
        .filter(|(_, k)| *k == 4)
        .map(|(w, _)| w)
        .collect();
    Ok(Classification {
        n,
        m,
        total_words: total,
        order4,
        min_kappa,
    })
}

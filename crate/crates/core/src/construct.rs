//! Witnesses `(u, β, u ⧢_β u)` of every length `n ≥ 3` over three letters.

use std::collections::{BTreeMap, HashMap};
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::{Arc, Mutex};

use serde::{Deserialize, Serialize};

use crate::catalog::{lift_witness, Catalog};
use crate::error::{Error, Result};
use crate::morphism::{
    certify_square_free_morphism, certify_square_free_substitution, search_uniform_square_free_morphism,
    substitution_test_length, Certificate, Morphism, MorphismSearch, Substitution,
};
use crate::shuffle::{ConductingSequence, ShuffleWitness};
use crate::word::{lex_least_square_free_prefix, Word};

/// Environment variable naming the witness cache directory.
pub const CACHE_DIR_ENV: &str = "SHUFFLECRAFT_CACHE_DIR";

/// A morphism together with the certificate that made it usable.
#[derive(Debug, Clone)]
pub struct CertifiedMorphism {
    morphism: Morphism,
    certificate: Certificate,
}

impl CertifiedMorphism {
    pub fn certify(morphism: Morphism, name: &str) -> Result<Self> {
        let certificate = certify_square_free_morphism(&morphism).named(name);
        if !certificate.is_certified() {
            return Err(Error::Uncertified(name.to_string()));
        }
        Ok(CertifiedMorphism {
            morphism,
            certificate,
        })
    }

    pub fn morphism(&self) -> &Morphism {
        &self.morphism
    }

    pub fn certificate(&self) -> &Certificate {
        &self.certificate
    }
}

#[derive(Debug, Clone)]
pub struct CertifiedSubstitution {
    substitution: Substitution,
    certificate: Certificate,
}

impl CertifiedSubstitution {
    pub fn certify(substitution: Substitution, name: &str) -> Result<Self> {
        let length = substitution_test_length(&substitution);
        let certificate = certify_square_free_substitution(&substitution, length).named(name);
        if !certificate.is_certified() {
            return Err(Error::Uncertified(name.to_string()));
        }
        Ok(CertifiedSubstitution {
            substitution,
            certificate,
        })
    }

    pub fn substitution(&self) -> &Substitution {
        &self.substitution
    }

    pub fn certificate(&self) -> &Certificate {
        &self.certificate
    }
}

/// `(u·3·4, 0^{n−1}1^{n−2}011, u3u434)` over five letters, with `u` the
/// least square-free ternary word of length `n − 2`.
pub fn sigma5_witness(n: usize) -> Result<ShuffleWitness> {
    if n < 3 {
        return Err(Error::BelowDomain {
            what: "witness length",
            min: 3,
            value: n,
        });
    }
    let mut letters = lex_least_square_free_prefix(3, n - 2)?.into_letters();
    letters.extend([3, 4]);
    let mut bits = vec![0u8; n - 1];
    bits.extend(std::iter::repeat_n(1, n - 2));
    bits.extend([0, 1, 1]);
    ShuffleWitness::new(Word::new(letters, 5)?, ConductingSequence::new(bits)?)
}

/// `(h(u), lifted β, h(w))`.
pub fn apply_morphism_to_witness(witness: &ShuffleWitness, h: &CertifiedMorphism) -> Result<ShuffleWitness> {
    lift_witness(witness, h.morphism())
}

/// The image of a witness under a substitution, with `choices[i]` picking
/// the image of `u[i]` in both copies of `u`.
pub fn apply_substitution_to_witness(
    witness: &ShuffleWitness,
    s: &CertifiedSubstitution,
    choices: &[usize],
) -> Result<ShuffleWitness> {
    let s = s.substitution();
    let beta = s.lift(&witness.beta, &witness.u, choices)?;
    let u = s.apply_with_choices(&witness.u, choices)?;
    ShuffleWitness::new(u, beta)
}

/// Takes the longest image at the leftmost positions until the total
/// length reaches `target`, the shortest image elsewhere.
pub fn substitution_interval_witness(
    base: &ShuffleWitness,
    target: usize,
    s: &CertifiedSubstitution,
) -> Result<ShuffleWitness> {
    let sub = s.substitution();
    let shortest = |a: u8| shortest_and_longest(sub.image_set(a)).0;
    let longest = |a: u8| shortest_and_longest(sub.image_set(a)).1;
    let letters = base.u.letters();
    let low: usize = letters.iter().map(|&a| sub.image_set(a)[shortest(a)].len()).sum();
    let high: usize = letters.iter().map(|&a| sub.image_set(a)[longest(a)].len()).sum();
    if target < low || target > high {
        return Err(Error::TargetOutOfRange { target, low, high });
    }
    let mut excess = target - low;
    let choices: Vec<usize> = letters
        .iter()
        .map(|&a| {
            let gain = sub.image_set(a)[longest(a)].len() - sub.image_set(a)[shortest(a)].len();
            if gain > 0 && gain <= excess {
                excess -= gain;
                longest(a)
            } else {
                shortest(a)
            }
        })
        .collect();
    if excess != 0 {
        return Err(Error::TargetOutOfRange { target, low, high });
    }
    apply_substitution_to_witness(base, s, &choices)
}

fn shortest_and_longest(set: &[Word]) -> (usize, usize) {
    let by_len = |i: &usize| set[*i].len();
    let short = (0..set.len()).min_by_key(by_len).expect("nonempty image set");
    let long = (0..set.len()).max_by_key(by_len).expect("nonempty image set");
    (short, long)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Strategy {
    Base,
    Composition,
    Sigma5Pipeline,
    Factorization,
    SubstitutionInterval,
    MorphicImage,
}

impl std::fmt::Display for Strategy {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Strategy::Base => "base",
            Strategy::Composition => "composition",
            Strategy::Sigma5Pipeline => "sigma5-pipeline",
            Strategy::Factorization => "factorization",
            Strategy::SubstitutionInterval => "substitution-interval",
            Strategy::MorphicImage => "morphic-image",
        })
    }
}

/// How a length is reached. Lengths inside a plan are themselves planned.
#[derive(Debug, Clone, PartialEq, Eq)]
enum Plan {
    Base(String),
    Composition,
    /// `h_k(sigma5_witness(m))`, then the substitution up to `n` if `n ≠ k·m`.
    Sigma5 { k: usize, m: usize },
    Factor { d: usize, m: usize },
    Interval { base: usize },
    Morphic { sigma: usize, permutation: Option<usize>, m: usize },
}

impl Plan {
    fn strategy(&self) -> Strategy {
        match self {
            Plan::Base(_) => Strategy::Base,
            Plan::Composition => Strategy::Composition,
            Plan::Sigma5 { .. } => Strategy::Sigma5Pipeline,
            Plan::Factor { .. } => Strategy::Factorization,
            Plan::Interval { .. } => Strategy::SubstitutionInterval,
            Plan::Morphic { .. } => Strategy::MorphicImage,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstructedWitness {
    pub n: usize,
    pub u: Word,
    pub beta: ConductingSequence,
    pub w: Word,
    pub strategy: Strategy,
    pub recipe: String,
}

impl ConstructedWitness {
    pub fn witness(&self) -> ShuffleWitness {
        ShuffleWitness {
            u: self.u.clone(),
            beta: self.beta.clone(),
            w: self.w.clone(),
        }
    }

    /// Full re-verification, including the length and the alphabet.
    pub fn verify(&self) -> Result<()> {
        if self.u.len() != self.n || self.u.alphabet() != 3 {
            return Err(Error::InvalidWitness(format!(
                "expected a ternary u of length {}, got length {} over {} letters",
                self.n,
                self.u.len(),
                self.u.alphabet()
            )));
        }
        self.witness().verify()
    }
}

/// Image lengths of the searched uniform morphisms `Σ₃ → Σ₃`.
pub const SEARCHED_UNIFORM_LENGTHS: std::ops::RangeInclusive<usize> = 11..=32;
/// Node budget for each uniform morphism search.
pub const UNIFORM_SEARCH_BUDGET: u64 = 50_000_000;
/// Image lengths of the five-letter morphisms used by the pipeline.
const QUINARY_LENGTHS: [usize; 5] = [18, 19, 22, 23, 24];

type Slot = Option<Arc<(String, CertifiedMorphism)>>;

/// Plans and builds witnesses, memoizing plans, morphisms and witnesses.
pub struct Constructor {
    catalog: &'static Catalog,
    cache_dir: Option<PathBuf>,
    substitution: CertifiedSubstitution,
    ternary: Mutex<BTreeMap<usize, Slot>>,
    quinary: Mutex<BTreeMap<usize, Slot>>,
    sigmas: Mutex<BTreeMap<usize, Arc<CertifiedMorphism>>>,
    plans: Mutex<HashMap<usize, Option<Plan>>>,
    witnesses: Mutex<HashMap<usize, Arc<ShuffleWitness>>>,
    parikh: Mutex<HashMap<usize, Vec<usize>>>,
}

impl Constructor {
    pub fn new() -> Result<Self> {
        let catalog = Catalog::embedded();
        let substitution = CertifiedSubstitution::certify(catalog.substitution("interval_subst")?.clone(), "interval_subst")?;
        let ternary = catalog
            .ternary_uniform_morphisms()
            .into_iter()
            .map(|(d, (name, h))| Ok((d, Some(Arc::new((name.clone(), CertifiedMorphism::certify(h, &name)?))))))
            .collect::<Result<_>>()?;
        Ok(Constructor {
            catalog,
            cache_dir: None,
            substitution,
            ternary: Mutex::new(ternary),
            quinary: Mutex::new(BTreeMap::new()),
            sigmas: Mutex::new(BTreeMap::new()),
            plans: Mutex::new(HashMap::new()),
            witnesses: Mutex::new(HashMap::new()),
            parikh: Mutex::new(HashMap::new()),
        })
    }

    /// Uses [`CACHE_DIR_ENV`] as the on-disk store when it is set.
    pub fn from_env() -> Result<Self> {
        let constructor = Constructor::new()?;
        Ok(match std::env::var_os(CACHE_DIR_ENV) {
            Some(dir) if !dir.is_empty() => constructor.with_cache_dir(dir),
            _ => constructor,
        })
    }

    pub fn with_cache_dir(mut self, dir: impl Into<PathBuf>) -> Self {
        self.cache_dir = Some(dir.into());
        self
    }

    pub fn cache_dir(&self) -> Option<&Path> {
        self.cache_dir.as_deref()
    }

    pub fn substitution(&self) -> &CertifiedSubstitution {
        &self.substitution
    }

    fn sigma(&self, i: usize) -> Result<Arc<CertifiedMorphism>> {
        if let Some(h) = self.sigmas.lock().unwrap().get(&i) {
            return Ok(h.clone());
        }
        let name = format!("sigma_{i}");
        let h = Arc::new(CertifiedMorphism::certify(self.catalog.sigma(i)?.clone(), &name)?);
        self.sigmas.lock().unwrap().insert(i, h.clone());
        Ok(h)
    }

    /// A certified `d`-uniform morphism `Σ₃ → Σ₃`, from the catalog or the
    /// search.
    pub fn ternary_uniform(&self, d: usize) -> Option<Arc<(String, CertifiedMorphism)>> {
        if let Some(slot) = self.ternary.lock().unwrap().get(&d) {
            return slot.clone();
        }
        let slot = if SEARCHED_UNIFORM_LENGTHS.contains(&d) {
            self.searched(3, d)
        } else {
            None
        };
        self.ternary.lock().unwrap().insert(d, slot.clone());
        slot
    }

    /// A certified `k`-uniform morphism `Σ₅ → Σ₃`.
    pub fn quinary_uniform(&self, k: usize) -> Option<Arc<(String, CertifiedMorphism)>> {
        if let Some(slot) = self.quinary.lock().unwrap().get(&k) {
            return slot.clone();
        }
        let name = format!("h{k}");
        let slot = match self.catalog.morphism(&name) {
            Ok(h) => CertifiedMorphism::certify(h.clone(), &name)
                .ok()
                .map(|c| Arc::new((name, c))),
            Err(_) => self.searched(5, k),
        };
        self.quinary.lock().unwrap().insert(k, slot.clone());
        slot
    }

    fn searched(&self, src: usize, d: usize) -> Slot {
        let name = format!("searched_{src}to3_{d}");
        let path = self
            .cache_dir
            .as_ref()
            .map(|dir| dir.join("morphisms").join(format!("{name}.json")));
        if let Some(h) = path.as_ref().and_then(|p| read_json::<Morphism>(p)) {
            if h.src_alphabet() == src && h.uniform_length() == Some(d) {
                if let Ok(c) = CertifiedMorphism::certify(h, &name) {
                    return Some(Arc::new((name, c)));
                }
            }
        }
        let h = match search_uniform_square_free_morphism(src, 3, d, UNIFORM_SEARCH_BUDGET) {
            MorphismSearch::Found(h) => h,
            _ => return None,
        };
        if let Some(p) = &path {
            // the cache is an optimization; a failed write is not an error
            let _ = write_json_atomic(p, &h);
        }
        CertifiedMorphism::certify(h, &name).ok().map(|c| Arc::new((name, c)))
    }

    /// The strategy that would build length `n`, or `None`.
    pub fn strategy_for(&self, n: usize) -> Option<Strategy> {
        self.plan(n).map(|p| p.strategy())
    }

    fn plan(&self, n: usize) -> Option<Plan> {
        if n < 3 {
            return None;
        }
        if let Some(plan) = self.plans.lock().unwrap().get(&n) {
            return plan.clone();
        }
        let plan = self.make_plan(n);
        self.plans.lock().unwrap().insert(n, plan.clone());
        plan
    }

    fn make_plan(&self, n: usize) -> Option<Plan> {
        if let Some(entry) = self.catalog.base_witnesses().get(&n) {
            return Some(Plan::Base(entry.name.clone()));
        }
        if self.catalog.compositions().contains_key(&n) {
            return Some(Plan::Composition);
        }
        self.plan_sigma5(n)
            .or_else(|| self.plan_factor(n))
            .or_else(|| self.plan_interval(n))
            .or_else(|| self.plan_morphic(n))
    }

    fn plan_sigma5(&self, n: usize) -> Option<Plan> {
        let exact = QUINARY_LENGTHS
            .iter()
            .find(|&&k| n.is_multiple_of(k) && n / k >= 3 && self.quinary_uniform(k).is_some())
            .map(|&k| Plan::Sigma5 { k, m: n / k });
        exact.or_else(|| {
            QUINARY_LENGTHS.iter().find_map(|&k| {
                let m = n.div_ceil(18 * k).max(3);
                (17 * k * m <= n && self.quinary_uniform(k).is_some()).then_some(Plan::Sigma5 { k, m })
            })
        })
    }

    fn plan_factor(&self, n: usize) -> Option<Plan> {
        let mut lengths: Vec<usize> = self.ternary.lock().unwrap().keys().copied().collect();
        lengths.extend(SEARCHED_UNIFORM_LENGTHS);
        lengths.sort_unstable();
        lengths.dedup();
        lengths.into_iter().rev().find_map(|d| {
            (n.is_multiple_of(d) && n / d >= 3 && self.plan(n / d).is_some() && self.ternary_uniform(d).is_some())
                .then_some(Plan::Factor { d, m: n / d })
        })
    }

    fn plan_interval(&self, n: usize) -> Option<Plan> {
        (n.div_ceil(18).max(3)..=n / 17)
            .find(|&base| self.plan(base).is_some())
            .map(|base| Plan::Interval { base })
    }

    /// `σ_i ∘ π` applied to a smaller base or composition witness, where
    /// `π` is one of the letter permutations `σ₁ … σ₅`.
    fn plan_morphic(&self, n: usize) -> Option<Plan> {
        let mut small: Vec<usize> = self.catalog.base_witnesses().keys().copied().collect();
        small.extend(self.catalog.compositions().keys().copied());
        small.sort_unstable();
        for m in small.into_iter().filter(|&m| m < n) {
            let parikh = self.parikh(m)?;
            for sigma in 6..=17 {
                let images = self.catalog.sigma(sigma).ok()?.images();
                for permutation in [None, Some(1), Some(2), Some(3), Some(4), Some(5)] {
                    let perm = match permutation {
                        Some(p) => self.catalog.sigma(p).ok()?.images().to_vec(),
                        None => (0..3).map(|a| Word::new(vec![a], 3).expect("ternary")).collect(),
                    };
                    let len: usize = (0..3)
                        .map(|a| parikh[a] * images[perm[a].letters()[0] as usize].len())
                        .sum();
                    if len == n {
                        return Some(Plan::Morphic { sigma, permutation, m });
                    }
                }
            }
        }
        None
    }

    fn parikh(&self, m: usize) -> Option<Vec<usize>> {
        if let Some(p) = self.parikh.lock().unwrap().get(&m) {
            return Some(p.clone());
        }
        let p = self.build(m).ok()?.u.parikh();
        self.parikh.lock().unwrap().insert(m, p.clone());
        Some(p)
    }

    fn build(&self, n: usize) -> Result<Arc<ShuffleWitness>> {
        if let Some(w) = self.witnesses.lock().unwrap().get(&n) {
            return Ok(w.clone());
        }
        let plan = self.plan(n).ok_or(Error::Unconstructed(n))?;
        let witness = match &plan {
            Plan::Base(name) => self.catalog.witness(name)?,
            Plan::Composition => self.catalog.apply_composition(self.catalog.compositions()[&n])?,
            Plan::Sigma5 { k, m } => {
                let h = self.quinary_uniform(*k).ok_or(Error::Unconstructed(n))?;
                let lifted = apply_morphism_to_witness(&sigma5_witness(*m)?, &h.1)?;
                if lifted.len() == n {
                    lifted
                } else {
                    substitution_interval_witness(&lifted, n, &self.substitution)?
                }
            }
            Plan::Factor { d, m } => {
                let h = self.ternary_uniform(*d).ok_or(Error::Unconstructed(n))?;
                apply_morphism_to_witness(&*self.build(*m)?, &h.1)?
            }
            Plan::Interval { base } => substitution_interval_witness(&*self.build(*base)?, n, &self.substitution)?,
            Plan::Morphic { sigma, permutation, m } => {
                let mut witness = (*self.build(*m)?).clone();
                if let Some(p) = permutation {
                    witness = apply_morphism_to_witness(&witness, &*self.sigma(*p)?)?;
                }
                apply_morphism_to_witness(&witness, &*self.sigma(*sigma)?)?
            }
        };
        let witness = Arc::new(witness);
        self.witnesses.lock().unwrap().insert(n, witness.clone());
        Ok(witness)
    }

    fn recipe(&self, n: usize) -> String {
        match self.plan(n) {
            None => String::new(),
            Some(Plan::Base(name)) => name,
            Some(Plan::Composition) => {
                let rule = self.catalog.compositions()[&n];
                let chain: Vec<String> = rule.chain.iter().map(|i| format!("sigma_{i}")).collect();
                format!("{}({})", chain.join(" o "), rule.base)
            }
            Some(Plan::Sigma5 { k, m }) => {
                let name = self.quinary_uniform(k).map(|h| h.0.clone()).unwrap_or_default();
                if k * m == n {
                    format!("{name}(sigma5 witness of length {m})")
                } else {
                    format!("interval_subst to {n} on {name}(sigma5 witness of length {m})")
                }
            }
            Some(Plan::Factor { d, m }) => {
                let name = self.ternary_uniform(d).map(|h| h.0.clone()).unwrap_or_default();
                format!("{name}[{}]", self.recipe(m))
            }
            Some(Plan::Interval { base }) => format!("interval_subst to {n} on [{}]", self.recipe(base)),
            Some(Plan::Morphic { sigma, permutation, m }) => match permutation {
                Some(p) => format!("sigma_{sigma} o sigma_{p}[{}]", self.recipe(m)),
                None => format!("sigma_{sigma}[{}]", self.recipe(m)),
            },
        }
    }

    /// A verified ternary witness of length `n`, read from or written to
    /// the cache directory when one is configured.
    pub fn construct_witness(&self, n: usize) -> Result<ConstructedWitness> {
        if n < 3 {
            return Err(Error::BelowDomain {
                what: "witness length",
                min: 3,
                value: n,
            });
        }
        let path = self.cache_dir.as_ref().map(|dir| dir.join("witnesses").join(format!("{n}.json")));
        if let Some(cached) = path.as_ref().and_then(|p| read_json::<ConstructedWitness>(p)) {
            if cached.n == n && cached.verify().is_ok() {
                return Ok(cached);
            }
        }
        let plan = self.plan(n).ok_or(Error::Unconstructed(n))?;
        let witness = self.build(n)?;
        let constructed = ConstructedWitness {
            n,
            u: witness.u.clone(),
            beta: witness.beta.clone(),
            w: witness.w.clone(),
            strategy: plan.strategy(),
            recipe: self.recipe(n),
        };
        constructed.verify()?;
        if let Some(p) = &path {
            let _ = write_json_atomic(p, &constructed);
        }
        Ok(constructed)
    }

    /// Runs the cascade for every length in `[3, n_max]`.
    pub fn coverage_report(&self, n_max: usize) -> Result<CoverageReport> {
        if n_max < 3 {
            return Err(Error::BelowDomain {
                what: "coverage bound",
                min: 3,
                value: n_max,
            });
        }
        let mut report = CoverageReport {
            low: 3,
            high: n_max,
            strategies: BTreeMap::new(),
            gaps: Vec::new(),
        };
        for n in 3..=n_max {
            match self.construct_witness(n) {
                Ok(c) => {
                    report.strategies.insert(n, c.strategy);
                }
                Err(_) => report.gaps.push(n),
            }
            // only lengths that can still serve as a source are kept
            if n % 256 == 0 {
                let keep = 1831.max(n_max / 11);
                self.witnesses.lock().unwrap().retain(|&m, _| m <= keep);
            }
        }
        Ok(report)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverageReport {
    pub low: usize,
    pub high: usize,
    /// Strategy of every attained length.
    pub strategies: BTreeMap<usize, Strategy>,
    pub gaps: Vec<usize>,
}

impl CoverageReport {
    pub fn attained(&self) -> impl Iterator<Item = usize> + '_ {
        self.strategies.keys().copied()
    }

    pub fn tally(&self) -> BTreeMap<Strategy, usize> {
        let mut out = BTreeMap::new();
        for s in self.strategies.values() {
            *out.entry(*s).or_insert(0) += 1;
        }
        out
    }
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Option<T> {
    serde_json::from_str(&fs::read_to_string(path).ok()?).ok()
}

/// Writes to a temporary sibling and renames it into place.
fn write_json_atomic<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let dir = path.parent().unwrap_or(Path::new("."));
    fs::create_dir_all(dir)?;
    let tmp = dir.join(format!(
        ".{}.{}.tmp",
        path.file_name().and_then(|s| s.to_str()).unwrap_or("entry"),
        std::process::id()
    ));
    fs::write(&tmp, serde_json::to_vec(value)?)?;
    fs::rename(&tmp, path)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sigma5_examples() {
        let w = sigma5_witness(3).unwrap();
        assert_eq!((w.u.to_string(), w.w.to_string()), ("034".into(), "030434".into()));
        let w = sigma5_witness(5).unwrap();
        assert_eq!((w.u.to_string(), w.w.to_string()), ("01034".into(), "0103010434".into()));
        assert!(w.verify().is_ok());
        assert!(sigma5_witness(2).is_err());
    }

    #[test]
    fn interval_reaches_every_length() {
        let constructor = Constructor::new().unwrap();
        let base = constructor.construct_witness(54).unwrap().witness();
        let s = constructor.substitution();
        for target in [918, 920, 972] {
            let w = substitution_interval_witness(&base, target, s).unwrap();
            assert_eq!(w.len(), target);
            w.verify().unwrap();
        }
        assert!(matches!(
            substitution_interval_witness(&base, 973, s),
            Err(Error::TargetOutOfRange { .. })
        ));
    }

    #[test]
    fn uniform_images_scale_lengths() {
        let constructor = Constructor::new().unwrap();
        let base = constructor.construct_witness(7).unwrap().witness();
        let h = constructor.ternary_uniform(19).unwrap();
        let image = apply_morphism_to_witness(&base, &h.1).unwrap();
        assert_eq!((image.u.len(), image.beta.len()), (7 * 19, 2 * 7 * 19));
    }

    #[test]
    fn small_lengths_come_from_the_table() {
        let constructor = Constructor::new().unwrap();
        let w3 = constructor.construct_witness(3).unwrap();
        assert_eq!((w3.u.to_string(), w3.beta.to_string(), w3.w.to_string()), ("012".into(), "001011".into(), "010212".into()));
        assert_eq!(constructor.construct_witness(18).unwrap().strategy, Strategy::Composition);
        assert!(constructor.construct_witness(2).is_err());
        let report = constructor.coverage_report(30).unwrap();
        assert!(report.gaps.is_empty());
        assert!(report.strategies.values().all(|s| matches!(s, Strategy::Base | Strategy::Composition)));
        assert!(constructor.coverage_report(2).is_err());
    }

    #[test]
    fn cache_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let first = Constructor::new().unwrap().with_cache_dir(dir.path());
        let built = first.construct_witness(100).unwrap();
        assert!(dir.path().join("witnesses/100.json").is_file());
        let second = Constructor::new().unwrap().with_cache_dir(dir.path());
        assert_eq!(second.construct_witness(100).unwrap(), built);

        // a tampered entry is rebuilt rather than trusted
        fs::write(dir.path().join("witnesses/100.json"), "{\"n\": 100}").unwrap();
        let third = Constructor::new().unwrap().with_cache_dir(dir.path());
        assert_eq!(third.construct_witness(100).unwrap(), built);
    }
}

//! Weight monoids, the modules they act on, and the natural order.
//!
//! An [`Instance`] fixes the pair (monoid `M`, `M`-module `S`). Programs weigh
//! with [`Weight`]s; weightings take [`ModuleValue`]s. All operations dispatch
//! on the instance, which is what lets the same transformer code run over
//! every algebra below:
//!
//! | instance    | monoid `(M, ⊙, 𝟙)`      | module `(S, ⊕, 𝟘)`        | `⊤`      |
//! |-------------|-------------------------|---------------------------|----------|
//! | `boolean`   | `({0,1}, ∧, 1)`         | `({0,1}, ∨, 0)`           | `1`      |
//! | `counting`  | `(ℕ∞, ·, 1)`            | `(ℕ∞, +, 0)`              | `∞`      |
//! | `tropical`  | `(ℕ∞, +, 0)`            | `(ℕ∞, min, ∞)`            | `0`      |
//! | `arctic`    | `(ℕ∞∪{−∞}, +, 0)`       | `(ℕ∞∪{−∞}, max, −∞)`      | `∞`      |
//! | `prob`      | `([0,1], ·, 1)`         | `(ℚ≥0∪{∞}, +, 0)`         | `∞`      |
//! | `lang:Σ`    | `(Σ*, concat, ε)`       | `(2^Σ* finite, ∪, ∅)`     | none     |
//! | `omegalang:Σ` | `(Σ*, concat, ε)`     | ω-potent languages        | `Σ^∞`    |

mod extnat;
mod words;

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

pub use extnat::{Arctic, ExtNat};
pub use words::{Alphabet, Language, Lasso, OmegaLanguage, Word};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("unknown instance `{0}` (expected boolean, counting, tropical, arctic, prob, lang:<letters> or omegalang:<letters>)")]
    UnknownInstance(String),
    #[error("invalid alphabet `{0}`: need distinct ASCII letters")]
    BadAlphabet(String),
    #[error("letter `{letter}` is not in the alphabet `{alphabet}`")]
    ForeignLetter { letter: char, alphabet: String },
    #[error("lasso period must be nonempty")]
    EmptyPeriod,
    #[error("value does not belong to instance {instance}: {value}")]
    Mismatch { instance: String, value: String },
    #[error("instance {0} has no top element")]
    NoTop(String),
    #[error("instance {0} has no integer embedding")]
    NotEmbeddable(String),
    #[error("cannot embed negative integer {value} into instance {instance}")]
    NegativeEmbedding { instance: String, value: i64 },
    #[error("invalid {what} literal `{text}` for instance {instance}")]
    BadLiteral {
        what: &'static str,
        text: String,
        instance: String,
    },
    #[error("probability weight {0} lies outside [0, 1]")]
    ProbabilityRange(String),
    #[error("arithmetic overflow in instance {0}")]
    Overflow(String),
}

pub type Result<T> = std::result::Result<T, AlgebraError>;

/// Extended nonnegative rationals, the probability module's carrier.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ExtRat {
    Fin(BigRational),
    Inf,
}

impl ExtRat {
    pub fn int(n: i64) -> Self {
        ExtRat::Fin(BigRational::from_integer(BigInt::from(n)))
    }

    fn le(&self, other: &ExtRat) -> bool {
        match (self, other) {
            (_, ExtRat::Inf) => true,
            (ExtRat::Inf, ExtRat::Fin(_)) => false,
            (ExtRat::Fin(a), ExtRat::Fin(b)) => a <= b,
        }
    }
}

impl fmt::Display for ExtRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtRat::Fin(r) => write!(f, "{r}"),
            ExtRat::Inf => f.write_str("inf"),
        }
    }
}

/// An element of an instance's weight monoid.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Weight {
    Bool(bool),
    Nat(ExtNat),
    Arctic(Arctic),
    Prob(BigRational),
    Word(Word),
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Weight::Bool(b) => write!(f, "{b}"),
            Weight::Nat(n) => write!(f, "{n}"),
            Weight::Arctic(a) => write!(f, "{a}"),
            Weight::Prob(p) => write!(f, "{p}"),
            Weight::Word(w) => write!(f, "{w}"),
        }
    }
}

/// An element of an instance's module.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ModuleValue {
    Bool(bool),
    Nat(ExtNat),
    Arctic(Arctic),
    Real(ExtRat),
    Lang(Language),
    Omega(OmegaLanguage),
}

impl ModuleValue {
    pub fn nat(n: u64) -> Self {
        ModuleValue::Nat(ExtNat::Fin(n))
    }

    pub fn as_nat(&self) -> Option<ExtNat> {
        match self {
            ModuleValue::Nat(n) => Some(*n),
            ModuleValue::Arctic(Arctic::Val(n)) => Some(*n),
            _ => None,
        }
    }
}

impl fmt::Display for ModuleValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModuleValue::Bool(b) => write!(f, "{b}"),
            ModuleValue::Nat(n) => write!(f, "{n}"),
            ModuleValue::Arctic(a) => write!(f, "{a}"),
            ModuleValue::Real(r) => write!(f, "{r}"),
            ModuleValue::Lang(l) => write!(f, "{l}"),
            ModuleValue::Omega(l) => write!(f, "{l}"),
        }
    }
}

/// Which algebra a program is interpreted over.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Instance {
    Boolean,
    Counting,
    Tropical,
    Arctic,
    Probability,
    Lang(Alphabet),
    OmegaLang(Alphabet),
}

impl std::str::FromStr for Instance {
    type Err = AlgebraError;

    fn from_str(name: &str) -> Result<Self> {
        let name = name.trim();
        Ok(match name {
            "boolean" => Instance::Boolean,
            "counting" => Instance::Counting,
            "tropical" => Instance::Tropical,
            "arctic" => Instance::Arctic,
            "prob" => Instance::Probability,
            _ => {
                if let Some(letters) = name.strip_prefix("lang:") {
                    Instance::Lang(Alphabet::new(letters)?)
                } else if let Some(letters) = name.strip_prefix("omegalang:") {
                    Instance::OmegaLang(Alphabet::new(letters)?)
                } else {
                    return Err(AlgebraError::UnknownInstance(name.to_string()));
                }
            }
        })
    }
}

impl fmt::Display for Instance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Instance::Boolean => f.write_str("boolean"),
            Instance::Counting => f.write_str("counting"),
            Instance::Tropical => f.write_str("tropical"),
            Instance::Arctic => f.write_str("arctic"),
            Instance::Probability => f.write_str("prob"),
            Instance::Lang(a) => write!(f, "lang:{a}"),
            Instance::OmegaLang(a) => write!(f, "omegalang:{a}"),
        }
    }
}

/// Result of summing a possibly truncated sequence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Approx {
    pub value: ModuleValue,
    pub exact: bool,
}

pub const DEFAULT_STABILIZATION_WINDOW: usize = 3;

impl Instance {
    pub fn alphabet(&self) -> Option<&Alphabet> {
        match self {
            Instance::Lang(a) | Instance::OmegaLang(a) => Some(a),
            _ => None,
        }
    }

    pub fn is_commutative(&self) -> bool {
        !matches!(self, Instance::Lang(_) | Instance::OmegaLang(_))
    }

    pub fn has_top(&self) -> bool {
        !matches!(self, Instance::Lang(_))
    }

    pub fn has_int_embedding(&self) -> bool {
        matches!(self, Instance::Counting | Instance::Tropical | Instance::Arctic)
    }

    pub fn is_word_monoid(&self) -> bool {
        self.alphabet().is_some()
    }

    fn mismatch<T: fmt::Display>(&self, value: &T) -> AlgebraError {
        AlgebraError::Mismatch {
            instance: self.to_string(),
            value: value.to_string(),
        }
    }

    // ---- monoid ----

    fn fit<T>(&self, v: Option<T>) -> Result<T> {
        v.ok_or_else(|| AlgebraError::Overflow(self.to_string()))
    }

    pub fn mon_one(&self) -> Weight {
        match self {
            Instance::Boolean => Weight::Bool(true),
            Instance::Counting => Weight::Nat(ExtNat::ONE),
            Instance::Tropical => Weight::Nat(ExtNat::ZERO),
            Instance::Arctic => Weight::Arctic(Arctic::Val(ExtNat::ZERO)),
            Instance::Probability => Weight::Prob(BigRational::one()),
            Instance::Lang(_) | Instance::OmegaLang(_) => Weight::Word(Word::empty()),
        }
    }

    pub fn mon_mul(&self, a: &Weight, b: &Weight) -> Result<Weight> {
        self.check_weight(a)?;
        self.check_weight(b)?;
        Ok(match (self, a, b) {
            (Instance::Boolean, Weight::Bool(x), Weight::Bool(y)) => Weight::Bool(*x && *y),
            (Instance::Counting, Weight::Nat(x), Weight::Nat(y)) => Weight::Nat(self.fit(x.checked_mul(*y))?),
            (Instance::Tropical, Weight::Nat(x), Weight::Nat(y)) => Weight::Nat(self.fit(x.checked_add(*y))?),
            (Instance::Arctic, Weight::Arctic(x), Weight::Arctic(y)) => Weight::Arctic(self.fit(x.checked_add(*y))?),
            (Instance::Probability, Weight::Prob(x), Weight::Prob(y)) => Weight::Prob(x * y),
            (_, Weight::Word(x), Weight::Word(y)) => Weight::Word(x.concat(y)),
            _ => unreachable!("checked above"),
        })
    }

    /// Rejects weights from another instance's carrier.
    pub fn check_weight(&self, a: &Weight) -> Result<()> {
        let ok = match (self, a) {
            (Instance::Boolean, Weight::Bool(_)) => true,
            (Instance::Counting | Instance::Tropical, Weight::Nat(_)) => true,
            (Instance::Arctic, Weight::Arctic(_)) => true,
            (Instance::Probability, Weight::Prob(p)) => {
                if p.is_negative() || *p > BigRational::one() {
                    return Err(AlgebraError::ProbabilityRange(p.to_string()));
                }
                true
            }
            (Instance::Lang(al) | Instance::OmegaLang(al), Weight::Word(w)) => {
                al.word(w.as_str())?;
                true
            }
            _ => false,
        };
        if ok {
            Ok(())
        } else {
            Err(self.mismatch(a))
        }
    }

    fn check_value(&self, u: &ModuleValue) -> Result<()> {
        let ok = matches!(
            (self, u),
            (Instance::Boolean, ModuleValue::Bool(_))
                | (Instance::Counting | Instance::Tropical, ModuleValue::Nat(_))
                | (Instance::Arctic, ModuleValue::Arctic(_))
                | (Instance::Probability, ModuleValue::Real(_))
                | (Instance::Lang(_), ModuleValue::Lang(_))
                | (Instance::OmegaLang(_), ModuleValue::Omega(_))
        );
        if ok {
            Ok(())
        } else {
            Err(self.mismatch(u))
        }
    }

    // ---- module ----

    pub fn mod_zero(&self) -> ModuleValue {
        match self {
            Instance::Boolean => ModuleValue::Bool(false),
            Instance::Counting => ModuleValue::Nat(ExtNat::ZERO),
            Instance::Tropical => ModuleValue::Nat(ExtNat::Inf),
            Instance::Arctic => ModuleValue::Arctic(Arctic::NegInf),
            Instance::Probability => ModuleValue::Real(ExtRat::int(0)),
            Instance::Lang(_) => ModuleValue::Lang(Language::empty()),
            Instance::OmegaLang(_) => ModuleValue::Omega(OmegaLanguage::empty()),
        }
    }

    /// `𝟙 ⊗ 𝟘`-free unit of the module: the image of the monoid's `𝟙`.
    pub fn mod_one(&self) -> ModuleValue {
        match self {
            Instance::Boolean => ModuleValue::Bool(true),
            Instance::Counting => ModuleValue::Nat(ExtNat::ONE),
            Instance::Tropical => ModuleValue::Nat(ExtNat::ZERO),
            Instance::Arctic => ModuleValue::Arctic(Arctic::Val(ExtNat::ZERO)),
            Instance::Probability => ModuleValue::Real(ExtRat::int(1)),
            Instance::Lang(_) => ModuleValue::Lang(Language::from_words([Word::empty()])),
            Instance::OmegaLang(a) => {
                ModuleValue::Omega(OmegaLanguage::from_parts([Word::empty()], [], [], a))
            }
        }
    }

    pub fn mod_add(&self, u: &ModuleValue, v: &ModuleValue) -> Result<ModuleValue> {
        self.check_value(u)?;
        self.check_value(v)?;
        Ok(match (self, u, v) {
            (Instance::Boolean, ModuleValue::Bool(x), ModuleValue::Bool(y)) => {
                ModuleValue::Bool(*x || *y)
            }
            (Instance::Counting, ModuleValue::Nat(x), ModuleValue::Nat(y)) => {
                ModuleValue::Nat(self.fit(x.checked_add(*y))?)
            }
            (Instance::Tropical, ModuleValue::Nat(x), ModuleValue::Nat(y)) => {
                ModuleValue::Nat(*x.min(y))
            }
            (Instance::Arctic, ModuleValue::Arctic(x), ModuleValue::Arctic(y)) => {
                ModuleValue::Arctic(*x.max(y))
            }
            (Instance::Probability, ModuleValue::Real(x), ModuleValue::Real(y)) => {
                ModuleValue::Real(match (x, y) {
                    (ExtRat::Fin(a), ExtRat::Fin(b)) => ExtRat::Fin(a + b),
                    _ => ExtRat::Inf,
                })
            }
            (Instance::Lang(_), ModuleValue::Lang(x), ModuleValue::Lang(y)) => {
                ModuleValue::Lang(x.union(y))
            }
            (Instance::OmegaLang(a), ModuleValue::Omega(x), ModuleValue::Omega(y)) => {
                ModuleValue::Omega(x.union(y, a))
            }
            _ => unreachable!("checked above"),
        })
    }

    pub fn scalar_mul(&self, a: &Weight, u: &ModuleValue) -> Result<ModuleValue> {
        self.check_weight(a)?;
        self.check_value(u)?;
        Ok(match (self, a, u) {
            (Instance::Boolean, Weight::Bool(x), ModuleValue::Bool(y)) => {
                ModuleValue::Bool(*x && *y)
            }
            (Instance::Counting, Weight::Nat(x), ModuleValue::Nat(y)) => {
                ModuleValue::Nat(self.fit(x.checked_mul(*y))?)
            }
            (Instance::Tropical, Weight::Nat(x), ModuleValue::Nat(y)) => {
                ModuleValue::Nat(self.fit(x.checked_add(*y))?)
            }
            (Instance::Arctic, Weight::Arctic(x), ModuleValue::Arctic(y)) => {
                ModuleValue::Arctic(self.fit(x.checked_add(*y))?)
            }
            (Instance::Probability, Weight::Prob(p), ModuleValue::Real(y)) => {
                ModuleValue::Real(match y {
                    _ if p.is_zero() => ExtRat::int(0),
                    ExtRat::Fin(r) => ExtRat::Fin(p * r),
                    ExtRat::Inf => ExtRat::Inf,
                })
            }
            (Instance::Lang(_), Weight::Word(w), ModuleValue::Lang(l)) => {
                ModuleValue::Lang(l.left_concat(w))
            }
            (Instance::OmegaLang(al), Weight::Word(w), ModuleValue::Omega(l)) => {
                ModuleValue::Omega(l.left_concat(w, al))
            }
            _ => unreachable!("checked above"),
        })
    }

    /// Decides `u ⊑ v`, i.e. whether some `c` has `u ⊕ c = v`.
    pub fn nat_leq(&self, u: &ModuleValue, v: &ModuleValue) -> Result<bool> {
        self.check_value(u)?;
        self.check_value(v)?;
        Ok(match (self, u, v) {
            (Instance::Boolean, ModuleValue::Bool(x), ModuleValue::Bool(y)) => !*x || *y,
            (Instance::Counting, ModuleValue::Nat(x), ModuleValue::Nat(y)) => x <= y,
            (Instance::Tropical, ModuleValue::Nat(x), ModuleValue::Nat(y)) => x >= y,
            (Instance::Arctic, ModuleValue::Arctic(x), ModuleValue::Arctic(y)) => x <= y,
            (Instance::Probability, ModuleValue::Real(x), ModuleValue::Real(y)) => x.le(y),
            (Instance::Lang(_), ModuleValue::Lang(x), ModuleValue::Lang(y)) => x.is_subset(y),
            (Instance::OmegaLang(a), ModuleValue::Omega(x), ModuleValue::Omega(y)) => {
                x.is_subset(y, a)
            }
            _ => unreachable!("checked above"),
        })
    }

    pub fn top(&self) -> Result<ModuleValue> {
        Ok(match self {
            Instance::Boolean => ModuleValue::Bool(true),
            Instance::Counting => ModuleValue::Nat(ExtNat::Inf),
            Instance::Tropical => ModuleValue::Nat(ExtNat::ZERO),
            Instance::Arctic => ModuleValue::Arctic(Arctic::Val(ExtNat::Inf)),
            Instance::Probability => ModuleValue::Real(ExtRat::Inf),
            Instance::Lang(_) => return Err(AlgebraError::NoTop(self.to_string())),
            Instance::OmegaLang(_) => ModuleValue::Omega(OmegaLanguage::full()),
        })
    }

    /// Sums `values`, reading at most `fuel` of them when given. A sum that hit
    /// the fuel limit is exact only if its last `window` partial sums agree.
    pub fn big_add<I>(&self, values: I, fuel: Option<usize>, window: usize) -> Result<Approx>
    where
        I: IntoIterator<Item = ModuleValue>,
    {
        let mut iter = values.into_iter();
        let mut acc = self.mod_zero();
        let mut taken = 0usize;
        let mut streak = 0usize;
        loop {
            if fuel.is_some_and(|f| taken >= f) {
                break;
            }
            let Some(v) = iter.next() else {
                return Ok(Approx {
                    value: acc,
                    exact: true,
                });
            };
            let next = self.mod_add(&acc, &v)?;
            streak = if next == acc { streak + 1 } else { 0 };
            acc = next;
            taken += 1;
        }
        if iter.next().is_none() {
            return Ok(Approx {
                value: acc,
                exact: true,
            });
        }
        Ok(Approx {
            value: acc,
            exact: window > 0 && streak >= window,
        })
    }

    // ---- integer embedding ----

    pub fn embed_int(&self, n: i64) -> Result<ModuleValue> {
        let nat = self.embed_nat(n)?;
        Ok(match self {
            Instance::Arctic => ModuleValue::Arctic(Arctic::Val(nat)),
            _ => ModuleValue::Nat(nat),
        })
    }

    pub fn embed_weight(&self, n: i64) -> Result<Weight> {
        let nat = self.embed_nat(n)?;
        Ok(match self {
            Instance::Arctic => Weight::Arctic(Arctic::Val(nat)),
            _ => Weight::Nat(nat),
        })
    }

    fn embed_nat(&self, n: i64) -> Result<ExtNat> {
        if !self.has_int_embedding() {
            return Err(AlgebraError::NotEmbeddable(self.to_string()));
        }
        if n < 0 {
            return Err(AlgebraError::NegativeEmbedding {
                instance: self.to_string(),
                value: n,
            });
        }
        Ok(ExtNat::Fin(n as u64))
    }

    // ---- literals ----

    /// Parses a weight literal: `true`/`false`, naturals and `inf`, `-inf`
    /// (arctic), rationals such as `1/3` or `0.25` (prob), words (`eps` is ε).
    pub fn parse_weight(&self, text: &str) -> Result<Weight> {
        let text = text.trim();
        let bad = || AlgebraError::BadLiteral {
            what: "weight",
            text: text.to_string(),
            instance: self.to_string(),
        };
        match self {
            Instance::Boolean => parse_bool(text).map(Weight::Bool).ok_or_else(bad),
            Instance::Counting | Instance::Tropical => {
                parse_extnat(text).map(Weight::Nat).ok_or_else(bad)
            }
            Instance::Arctic => parse_arctic(text).map(Weight::Arctic).ok_or_else(bad),
            Instance::Probability => {
                let p = parse_rational(text).ok_or_else(bad)?;
                let w = Weight::Prob(p);
                self.check_weight(&w)?;
                Ok(w)
            }
            Instance::Lang(a) | Instance::OmegaLang(a) => {
                if is_epsilon(text) {
                    Ok(Weight::Word(Word::empty()))
                } else {
                    Ok(Weight::Word(a.word(text)?))
                }
            }
        }
    }

    /// Parses a module literal. Languages are written `{a, ba, eps}`; ω-potent
    /// languages additionally accept lassos `p(q)^w` (or `^ω`), with `pc^w`
    /// short for `p(c)^w`, and cylinders `pΣ^∞`.
    pub fn parse_value(&self, text: &str) -> Result<ModuleValue> {
        let text = text.trim();
        let bad = || AlgebraError::BadLiteral {
            what: "value",
            text: text.to_string(),
            instance: self.to_string(),
        };
        match self {
            Instance::Boolean => parse_bool(text).map(ModuleValue::Bool).ok_or_else(bad),
            Instance::Counting | Instance::Tropical => {
                parse_extnat(text).map(ModuleValue::Nat).ok_or_else(bad)
            }
            Instance::Arctic => parse_arctic(text).map(ModuleValue::Arctic).ok_or_else(bad),
            Instance::Probability => {
                if text == "inf" {
                    return Ok(ModuleValue::Real(ExtRat::Inf));
                }
                match parse_rational(text) {
                    Some(r) if !r.is_negative() => Ok(ModuleValue::Real(ExtRat::Fin(r))),
                    _ => Err(bad()),
                }
            }
            Instance::Lang(a) => {
                let mut words = Vec::new();
                for item in set_items(text).ok_or_else(bad)? {
                    if item.contains('(') || item.contains('^') {
                        return Err(bad());
                    }
                    words.push(if is_epsilon(item) {
                        Word::empty()
                    } else {
                        a.word(item)?
                    });
                }
                Ok(ModuleValue::Lang(Language::from_words(words)))
            }
            Instance::OmegaLang(a) => {
                let mut words = Vec::new();
                let mut lassos = Vec::new();
                let mut cylinders = Vec::new();
                for item in set_items(text).ok_or_else(bad)? {
                    if let Some(p) = item
                        .strip_suffix("Σ^∞")
                        .or_else(|| item.strip_suffix("Sigma^inf"))
                    {
                        cylinders.push(if p.is_empty() { Word::empty() } else { a.word(p)? });
                        continue;
                    }
                    match parse_lasso(item, a)? {
                        Some(l) => lassos.push(l),
                        None if is_epsilon(item) => words.push(Word::empty()),
                        None => words.push(a.word(item)?),
                    }
                }
                Ok(ModuleValue::Omega(OmegaLanguage::from_parts(
                    words, lassos, cylinders, a,
                )))
            }
        }
    }
}

fn is_epsilon(s: &str) -> bool {
    matches!(s, "eps" | "ε")
}

fn parse_bool(s: &str) -> Option<bool> {
    match s {
        "true" | "1" => Some(true),
        "false" | "0" => Some(false),
        _ => None,
    }
}

fn parse_extnat(s: &str) -> Option<ExtNat> {
    if s == "inf" || s == "∞" {
        return Some(ExtNat::Inf);
    }
    s.parse::<u64>().ok().map(ExtNat::Fin)
}

fn parse_arctic(s: &str) -> Option<Arctic> {
    if s == "-inf" || s == "-∞" {
        return Some(Arctic::NegInf);
    }
    parse_extnat(s).map(Arctic::Val)
}

fn parse_rational(s: &str) -> Option<BigRational> {
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().ok()?;
        let d: BigInt = d.trim().parse().ok()?;
        if d.is_zero() {
            return None;
        }
        return Some(BigRational::new(n, d));
    }
    if let Some((int, frac)) = s.split_once('.') {
        if frac.is_empty() || !frac.chars().all(|c| c.is_ascii_digit()) {
            return None;
        }
        let int: BigInt = if int.is_empty() {
            BigInt::zero()
        } else {
            int.parse().ok()?
        };
        let scale = BigInt::from(10u32).pow(frac.len() as u32);
        let frac: BigInt = frac.parse().ok()?;
        let sign = if s.starts_with('-') { -1 } else { 1 };
        return Some(BigRational::new(
            int * &scale + frac * BigInt::from(sign),
            scale,
        ));
    }
    s.parse::<BigInt>().ok().map(BigRational::from_integer)
}

fn set_items(text: &str) -> Option<Vec<&str>> {
    let inner = text.strip_prefix('{')?.strip_suffix('}')?.trim();
    if inner.is_empty() {
        return Some(Vec::new());
    }
    Some(inner.split(',').map(str::trim).collect())
}

fn parse_lasso(item: &str, a: &Alphabet) -> Result<Option<Lasso>> {
    let Some(body) = item
        .strip_suffix("^w")
        .or_else(|| item.strip_suffix("^ω"))
        .or_else(|| item.strip_suffix("^omega"))
    else {
        return Ok(None);
    };
    let (prefix, period) = if let Some(body) = body.strip_suffix(')') {
        let open = body.rfind('(').ok_or_else(|| AlgebraError::BadLiteral {
            what: "lasso",
            text: item.to_string(),
            instance: format!("omegalang:{a}"),
        })?;
        (&body[..open], &body[open + 1..])
    } else {
        let split = body
            .char_indices()
            .last()
            .map(|(i, _)| i)
            .ok_or(AlgebraError::EmptyPeriod)?;
        (&body[..split], &body[split..])
    };
    let prefix = if is_epsilon(prefix) {
        Word::empty()
    } else {
        a.word(prefix)?
    };
    Ok(Some(Lasso::new(prefix, a.word(period)?)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn inst(s: &str) -> Instance {
        s.parse().unwrap()
    }

    fn val(i: &Instance, s: &str) -> ModuleValue {
        i.parse_value(s).unwrap()
    }

    fn wt(i: &Instance, s: &str) -> Weight {
        i.parse_weight(s).unwrap()
    }

    #[test]
    fn tropical_product_is_sum() {
        let t = inst("tropical");
        assert_eq!(t.mon_mul(&wt(&t, "1"), &wt(&t, "1")).unwrap(), wt(&t, "2"));
        assert_eq!(t.mod_add(&val(&t, "2"), &val(&t, "3")).unwrap(), val(&t, "2"));
    }

    #[test]
    fn word_concatenation() {
        let l = inst("lang:ab");
        assert_eq!(
            l.mon_mul(&wt(&l, "ab"), &wt(&l, "ba")).unwrap(),
            wt(&l, "abba")
        );
        assert_eq!(l.mon_mul(&wt(&l, "ab"), &l.mon_one()).unwrap(), wt(&l, "ab"));
    }

    #[test]
    fn omega_union_and_action() {
        let o = inst("omegalang:ab");
        let sum = o.mod_add(&val(&o, "{a}"), &val(&o, "{b^w}")).unwrap();
        assert_eq!(sum, val(&o, "{a, (b)^ω}"));
        let moved = o.scalar_mul(&wt(&o, "b"), &val(&o, "{b^w}")).unwrap();
        assert_eq!(moved, val(&o, "{b^w}"));
        assert_eq!(moved.to_string(), "{(b)^ω}");
        let full = val(&o, "{Σ^∞}");
        assert_eq!(full, o.top().unwrap());
        assert_eq!(val(&o, &full.to_string()), full);
    }

    #[test]
    fn counting_scalar_and_zero() {
        let c = inst("counting");
        assert_eq!(c.scalar_mul(&wt(&c, "2"), &val(&c, "3")).unwrap(), val(&c, "6"));
        assert_eq!(c.scalar_mul(&wt(&c, "5"), &c.mod_zero()).unwrap(), c.mod_zero());
    }

    #[test]
    fn natural_orders() {
        let t = inst("tropical");
        assert!(t.nat_leq(&val(&t, "5"), &val(&t, "2")).unwrap());
        assert!(!t.nat_leq(&val(&t, "2"), &val(&t, "5")).unwrap());
        let l = inst("lang:ab");
        assert!(l.nat_leq(&val(&l, "{a}"), &val(&l, "{a,b}")).unwrap());
        let a = inst("arctic");
        assert!(a.nat_leq(&a.mod_zero(), &val(&a, "0")).unwrap());
    }

    #[test]
    fn tops() {
        assert_eq!(inst("tropical").top().unwrap(), ModuleValue::nat(0));
        assert_eq!(inst("counting").top().unwrap(), ModuleValue::Nat(ExtNat::Inf));
        assert_eq!(inst("boolean").top().unwrap(), ModuleValue::Bool(true));
        assert!(matches!(inst("lang:ab").top(), Err(AlgebraError::NoTop(_))));
    }

    #[test]
    fn big_add_cases() {
        let t = inst("tropical");
        let s = t
            .big_add([5, 3, 7].map(ModuleValue::nat), None, 3)
            .unwrap();
        assert_eq!(s, Approx { value: ModuleValue::nat(3), exact: true });
        let c = inst("counting");
        let s = c.big_add(Vec::new(), None, 3).unwrap();
        assert_eq!(s, Approx { value: ModuleValue::nat(0), exact: true });
        let s = c
            .big_add(std::iter::repeat(ModuleValue::nat(1)), Some(100), 3)
            .unwrap();
        assert_eq!(s, Approx { value: ModuleValue::nat(100), exact: false });
        let s = t
            .big_add(std::iter::repeat(ModuleValue::nat(4)), Some(10), 3)
            .unwrap();
        assert_eq!(s, Approx { value: ModuleValue::nat(4), exact: true });
    }

    #[test]
    fn mismatches_are_reported() {
        let t = inst("tropical");
        let l = inst("lang:ab");
        assert!(matches!(
            t.mod_add(&l.mod_zero(), &t.mod_zero()),
            Err(AlgebraError::Mismatch { .. })
        ));
        assert!(matches!(
            l.parse_weight("c"),
            Err(AlgebraError::ForeignLetter { letter: 'c', .. })
        ));
        assert!(matches!(
            inst("prob").parse_weight("3/2"),
            Err(AlgebraError::ProbabilityRange(_))
        ));
        assert!("lang:aa".parse::<Instance>().is_err());
        assert!("semiring".parse::<Instance>().is_err());
    }

    #[test]
    fn embedding() {
        let t = inst("tropical");
        assert_eq!(t.embed_int(4).unwrap(), ModuleValue::nat(4));
        assert!(matches!(
            t.embed_int(-1),
            Err(AlgebraError::NegativeEmbedding { value: -1, .. })
        ));
        assert!(matches!(
            inst("prob").embed_int(1),
            Err(AlgebraError::NotEmbeddable(_))
        ));
    }

    #[test]
    fn rational_literals() {
        let p = inst("prob");
        assert_eq!(p.parse_weight("0.25").unwrap(), p.parse_weight("1/4").unwrap());
        assert_eq!(p.parse_value("3").unwrap(), ModuleValue::Real(ExtRat::int(3)));
        assert_eq!(p.parse_value("inf").unwrap(), p.top().unwrap());
    }
}

use super::interval::RatInterval;
use super::rat::{rat_to_f64, Rat};
use num_traits::{Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

/// Index of a declared irrational generator inside a [`GenRegistry`].
pub type GenId = usize;

type Encl = Box<dyn Fn(u32) -> RatInterval + Send + Sync>;

struct Generator {
    name: String,
    encl: Option<Encl>,
}

/// Registry of declared, Q-linearly-independent irrational generators.
///
/// A generator may carry a refinable interval enclosure (used for sign
/// queries and numeric output); purely formal generators are allowed and
/// support only exact linear arithmetic.
#[derive(Clone)]
pub struct GenRegistry {
    gens: Arc<Vec<Generator>>,
}

impl GenRegistry {
    pub fn new(gens: Vec<(String, Option<Encl>)>) -> Self {
        GenRegistry {
            gens: Arc::new(
                gens.into_iter()
                    .map(|(name, encl)| Generator { name, encl })
                    .collect(),
            ),
        }
    }

    pub fn empty() -> Self {
        GenRegistry::new(Vec::new())
    }

    /// Registry of purely formal irrationals with the given names.
    pub fn opaque(names: &[&str]) -> Self {
        GenRegistry::new(names.iter().map(|n| (n.to_string(), None)).collect())
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn name(&self, id: GenId) -> &str {
        &self.gens[id].name
    }

    pub fn enclosure(&self, id: GenId, prec: u32) -> Option<RatInterval> {
        self.gens[id].encl.as_ref().map(|f| f(prec))
    }

    fn same(&self, other: &GenRegistry) -> bool {
        Arc::ptr_eq(&self.gens, &other.gens)
    }

    /// The symbol `q0 + sum q_m tau_m` over this registry.
    pub fn number(&self, rat: Rat, coords: &[(GenId, Rat)]) -> Number {
        let mut terms = BTreeMap::new();
        for (id, c) in coords {
            assert!(*id < self.len(), "generator id out of range");
            if !c.is_zero() {
                terms.insert(*id, c.clone());
            }
        }
        Number {
            rat,
            terms,
            reg: if self.is_empty() { None } else { Some(self.clone()) },
        }
    }

    pub fn gen(&self, id: GenId) -> Number {
        self.number(Rat::zero(), &[(id, Rat::from_integer(1.into()))])
    }
}

impl fmt::Debug for GenRegistry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "GenRegistry[{}]",
            self.gens.iter().map(|g| g.name.as_str()).collect::<Vec<_>>().join(",")
        )
    }
}

/// Exact scalar `q0 + sum q_m tau_m` with rational coordinates over the
/// declared irrational basis `{1, tau_1, tau_2, ...}`.
///
/// Equality, rationality and integer membership are exact. Sign queries go
/// through the generators' interval enclosures and refine on demand.
#[derive(Clone)]
pub struct Number {
    rat: Rat,
    terms: BTreeMap<GenId, Rat>,
    reg: Option<GenRegistry>,
}

impl Number {
    pub fn from_rat(r: Rat) -> Self {
        Number {
            rat: r,
            terms: BTreeMap::new(),
            reg: None,
        }
    }

    pub fn from_int(n: i64) -> Self {
        Number::from_rat(Rat::from_integer(n.into()))
    }

    pub fn zero() -> Self {
        Number::from_int(0)
    }

    pub fn is_zero(&self) -> bool {
        self.rat.is_zero() && self.terms.is_empty()
    }

    pub fn is_rational(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn rational_part(&self) -> &Rat {
        &self.rat
    }

    pub fn coord(&self, id: GenId) -> Rat {
        self.terms.get(&id).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn coords(&self) -> impl Iterator<Item = (GenId, &Rat)> {
        self.terms.iter().map(|(k, v)| (*k, v))
    }

    pub fn registry(&self) -> Option<&GenRegistry> {
        self.reg.as_ref()
    }

    /// Exact rational value, when the number is rational.
    pub fn as_rat(&self) -> Option<&Rat> {
        if self.is_rational() {
            Some(&self.rat)
        } else {
            None
        }
    }

    fn merged_reg(&self, other: &Number) -> Option<GenRegistry> {
        match (&self.reg, &other.reg) {
            (None, None) => None,
            (Some(r), None) => Some(r.clone()),
            (None, Some(r)) => Some(r.clone()),
            (Some(a), Some(b)) => {
                assert!(a.same(b), "numbers from different generator registries");
                Some(a.clone())
            }
        }
    }

    pub fn add(&self, other: &Number) -> Number {
        let reg = self.merged_reg(other);
        let mut terms = self.terms.clone();
        for (id, c) in &other.terms {
            let e = terms.entry(*id).or_insert_with(Rat::zero);
            *e += c;
            if e.is_zero() {
                terms.remove(id);
            }
        }
        Number {
            rat: &self.rat + &other.rat,
            terms,
            reg,
        }
    }

    pub fn sub(&self, other: &Number) -> Number {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Number {
        Number {
            rat: -self.rat.clone(),
            terms: self.terms.iter().map(|(k, v)| (*k, -v.clone())).collect(),
            reg: self.reg.clone(),
        }
    }

    pub fn scale(&self, r: &Rat) -> Number {
        if r.is_zero() {
            return Number::zero();
        }
        Number {
            rat: &self.rat * r,
            terms: self.terms.iter().map(|(k, v)| (*k, v * r)).collect(),
            reg: self.reg.clone(),
        }
    }

    /// Exact product, defined only when at least one factor is rational.
    pub fn mul(&self, other: &Number) -> Option<Number> {
        if other.is_rational() {
            Some(self.scale(&other.rat))
        } else if self.is_rational() {
            Some(other.scale(&self.rat))
        } else {
            None
        }
    }

    pub fn eq_exact(&self, other: &Number) -> bool {
        self.rat == other.rat && self.terms == other.terms
    }

    /// Exact test for membership in `Z` (needs rationality).
    pub fn is_integer(&self) -> bool {
        self.is_rational() && self.rat.is_integer()
    }

    /// Refinable enclosure; `None` when some involved generator is opaque.
    pub fn enclosure(&self, prec: u32) -> Option<RatInterval> {
        let mut acc = RatInterval::point(self.rat.clone());
        if let Some(reg) = &self.reg {
            for (id, c) in &self.terms {
                let e = reg.enclosure(*id, prec)?;
                acc = acc.add(&e.scale(c));
            }
        } else if !self.terms.is_empty() {
            return None;
        }
        Some(acc)
    }

    /// Certified sign with refinement; exact zero detected structurally.
    pub fn sign(&self) -> Option<i32> {
        if self.is_zero() {
            return Some(0);
        }
        if self.is_rational() {
            return Some(if self.rat.is_positive() { 1 } else { -1 });
        }
        for prec in [64u32, 128, 256, 512] {
            if let Some(encl) = self.enclosure(prec) {
                match encl.sign() {
                    Some(0) | None => continue,
                    s => return s,
                }
            } else {
                return None;
            }
        }
        None
    }

    pub fn abs(&self) -> Option<Number> {
        match self.sign()? {
            -1 => Some(self.neg()),
            _ => Some(self.clone()),
        }
    }

    pub fn approx(&self) -> f64 {
        if self.is_rational() {
            rat_to_f64(&self.rat)
        } else {
            self.enclosure(64).map(|e| e.to_f64()).unwrap_or(f64::NAN)
        }
    }
}

impl PartialEq for Number {
    fn eq(&self, other: &Self) -> bool {
        self.eq_exact(other)
    }
}

impl fmt::Debug for Number {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for Number {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.rat)?;
        for (id, c) in &self.terms {
            let name = self
                .reg
                .as_ref()
                .map(|r| r.name(*id).to_string())
                .unwrap_or_else(|| format!("g{id}"));
            write!(f, "{}{}*{}", if c.is_negative() { "" } else { "+" }, c, name)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::elementary::pi;
    use crate::arith::rat::{rat, rat_i};

    #[test]
    fn number_linear_arithmetic() {
        let reg = GenRegistry::opaque(&["tau"]);
        let tau = reg.gen(0);
        let x = tau.scale(&rat_i(3)).add(&Number::from_rat(rat(1, 2)));
        let y = tau.scale(&rat_i(-3)).add(&Number::from_rat(rat(1, 2)));
        assert!(x.add(&y).is_rational());
        assert_eq!(x.add(&y).rational_part(), &rat_i(1));
        assert!(!x.is_zero());
        assert!(x.sub(&x).is_zero());
        assert_eq!(x.sign(), None); // opaque generator: sign unknown
    }

    #[test]
    fn number_sign_via_enclosure() {
        let reg = GenRegistry::new(vec![(
            "pi".to_string(),
            Some(Box::new(|p| pi(p)) as _),
        )]);
        let x = reg.gen(0).sub(&Number::from_rat(rat_i(3))); // pi - 3 > 0
        assert_eq!(x.sign(), Some(1));
        let y = reg.gen(0).sub(&Number::from_rat(rat(22, 7))); // pi - 22/7 < 0
        assert_eq!(y.sign(), Some(-1));
    }
}

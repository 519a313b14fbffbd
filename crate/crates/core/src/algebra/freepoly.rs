//! Sparse polynomials in the free associative algebra `k<x1..xμ>`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use super::ring::BaseField;
use super::scalar::Scalar;

/// A word over the letters `0..μ`, displayed as `x1*x2*...`.
///
/// Words are ordered by length first, then lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(pub Vec<usize>);

impl Word {
    pub fn empty() -> Word {
        Word(Vec::new())
    }

    pub fn letter(i: usize) -> Word {
        Word(vec![i])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[usize] {
        &self.0
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn reversed(&self) -> Word {
        Word(self.0.iter().rev().copied().collect())
    }

    /// All words of length exactly `len` over `alphabet` letters, in order.
    pub fn all_of_length(alphabet: usize, len: usize) -> Vec<Word> {
        let mut out = vec![Word::empty()];
        for _ in 0..len {
            out = out
                .into_iter()
                .flat_map(|w| {
                    (0..alphabet).map(move |x| {
                        let mut v = w.0.clone();
                        v.push(x);
                        Word(v)
                    })
                })
                .collect();
        }
        out
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len().cmp(&other.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "1");
        }
        for (k, x) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, "*")?;
            }
            write!(f, "x{}", x + 1)?;
        }
        Ok(())
    }
}

/// Element of `k<x1..xμ>`: a finite map from words to nonzero coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FreePoly {
    base: BaseField,
    num_vars: usize,
    terms: BTreeMap<Word, Scalar>,
}

impl FreePoly {
    pub fn zero(base: BaseField, num_vars: usize) -> FreePoly {
        FreePoly { base, num_vars, terms: BTreeMap::new() }
    }

    /// Builds a polynomial from terms, dropping zero coefficients and merging
    /// repeated words. Coefficients must live in the base field.
    pub fn from_terms(
        base: BaseField,
        num_vars: usize,
        terms: impl IntoIterator<Item = (Word, Scalar)>,
    ) -> FreePoly {
        let mut p = FreePoly::zero(base, num_vars);
        for (w, c) in terms {
            debug_assert!(w.0.iter().all(|&x| x < num_vars));
            debug_assert_eq!(c.ring(), base.ring());
            p.add_term(w, c);
        }
        p
    }

    pub fn constant(base: BaseField, num_vars: usize, c: Scalar) -> FreePoly {
        FreePoly::from_terms(base, num_vars, [(Word::empty(), c)])
    }

    pub fn monomial(base: BaseField, num_vars: usize, w: Word, c: Scalar) -> FreePoly {
        FreePoly::from_terms(base, num_vars, [(w, c)])
    }

    fn add_term(&mut self, w: Word, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&w) {
            Some(existing) => {
                let sum = &*existing + &c;
                if sum.is_zero() {
                    self.terms.remove(&w);
                } else {
                    *existing = sum;
                }
            }
            None => {
                self.terms.insert(w, c);
            }
        }
    }

    pub fn base(&self) -> BaseField {
        self.base
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Scalar)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, w: &Word) -> Scalar {
        self.terms.get(w).cloned().unwrap_or_else(|| Scalar::zero(self.base.ring()))
    }

    pub fn constant_term(&self) -> Scalar {
        self.coefficient(&Word::empty())
    }

    /// Highest word length, `None` for zero.
    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().map(Word::len).max()
    }

    pub fn add(&self, other: &FreePoly) -> FreePoly {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> FreePoly {
        FreePoly {
            base: self.base,
            num_vars: self.num_vars,
            terms: self.terms.iter().map(|(w, c)| (w.clone(), -c)).collect(),
        }
    }

    pub fn mul(&self, other: &FreePoly) -> FreePoly {
        let mut out = FreePoly::zero(self.base, self.num_vars);
        for (u, a) in &self.terms {
            for (v, b) in &other.terms {
                out.add_term(u.concat(v), a * b);
            }
        }
        out
    }

    pub fn scale(&self, c: &Scalar) -> FreePoly {
        FreePoly::from_terms(
            self.base,
            self.num_vars,
            self.terms.iter().map(|(w, a)| (w.clone(), c * a)),
        )
    }

    /// Word reversal; the involution on the free algebra.
    pub fn reversed(&self) -> FreePoly {
        FreePoly::from_terms(
            self.base,
            self.num_vars,
            self.terms.iter().map(|(w, a)| (w.reversed(), a.clone())),
        )
    }

    /// Drops every term of length greater than `max_len`.
    pub fn truncate(&self, max_len: usize) -> FreePoly {
        FreePoly {
            base: self.base,
            num_vars: self.num_vars,
            terms: self
                .terms
                .iter()
                .filter(|(w, _)| w.len() <= max_len)
                .map(|(w, c)| (w.clone(), c.clone()))
                .collect(),
        }
    }

    /// Product truncated at `max_len`, without forming the long terms.
    pub fn mul_truncated(&self, other: &FreePoly, max_len: usize) -> FreePoly {
        let mut out = FreePoly::zero(self.base, self.num_vars);
        for (u, a) in &self.terms {
            if u.len() > max_len {
                continue;
            }
            for (v, b) in &other.terms {
                if u.len() + v.len() <= max_len {
                    out.add_term(u.concat(v), a * b);
                }
            }
        }
        out
    }
}

impl fmt::Display for FreePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (w, c)) in self.terms.iter().enumerate() {
            let (negative, magnitude) = c.sign_split();
            if k == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else if negative {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if w.is_empty() {
                write!(f, "{magnitude}")?;
            } else if magnitude.is_one() {
                write!(f, "{w}")?;
            } else {
                write!(f, "{magnitude}*{w}")?;
            }
        }
        Ok(())
    }
}

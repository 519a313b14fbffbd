//! Rational noncommutative series as weighted automata.

use std::collections::BTreeMap;

use super::triple::{split_augmentation, CohnTriple};
use crate::algebra::{BaseField, FreePoly, Matrix, Ring, Scalar, Word};
use crate::error::{Error, Result};

/// `S(w) = initial · M_{w1} ⋯ M_{wk} · final` over the base field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearRepresentation {
    base: BaseField,
    alphabet: usize,
    initial: Matrix,
    letters: Vec<Matrix>,
    terminal: Matrix,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ZeroTest {
    pub is_zero: bool,
    /// Dimension of the reachable row space `span{initial · M_w}`.
    pub span_dim: usize,
    /// Closure rounds until the span stabilised (at most the state count).
    pub rounds: usize,
}

#[derive(Default)]
struct Builder {
    states: usize,
    prefixes: BTreeMap<(usize, Vec<usize>), usize>,
    // (letter, from, to) -> weight
    edges: BTreeMap<(usize, usize, usize), Scalar>,
}

impl Builder {
    fn fresh(&mut self) -> usize {
        self.states += 1;
        self.states - 1
    }

    fn edge(&mut self, letter: usize, from: usize, to: usize, w: Scalar) {
        let slot = self.edges.entry((letter, from, to)).or_insert_with(|| Scalar::zero(w.ring()));
        *slot = &*slot + &w;
    }

    /// Adds a path `from --word--> to` of weight `c`; intermediate states
    /// are shared between words with the same source and prefix.
    fn chain(&mut self, from: usize, word: &Word, to: usize, c: &Scalar) {
        let letters = word.letters();
        let mut cur = from;
        for k in 0..letters.len() - 1 {
            let key = (from, letters[..=k].to_vec());
            let next = match self.prefixes.get(&key) {
                Some(&s) => s,
                None => {
                    let s = self.fresh();
                    self.prefixes.insert(key, s);
                    self.edge(letters[k], cur, s, Scalar::one(c.ring()));
                    s
                }
            };
            cur = next;
        }
        self.edge(letters[letters.len() - 1], cur, to, c.clone());
    }
}

fn free_entry(m: &Matrix, i: usize, j: usize) -> &FreePoly {
    m.get(i, j).as_free().expect("free algebra entry")
}

impl LinearRepresentation {
    pub fn zero(base: BaseField, alphabet: usize) -> LinearRepresentation {
        let k = base.ring();
        LinearRepresentation {
            base,
            alphabet,
            initial: Matrix::zeros(k, 1, 0),
            letters: vec![Matrix::zeros(k, 0, 0); alphabet],
            terminal: Matrix::zeros(k, 0, 1),
        }
    }

    /// Writes `s = ε(s)(I − A)` so that `f s⁻¹ g = f (Σ Aᵐ) ε(s)⁻¹ g`, then
    /// realises the right-hand side as paths in an automaton.
    pub fn from_triple(t: &CohnTriple) -> Result<LinearRepresentation> {
        let Ring::FreeAlgebra { base, num_vars } = t.ring() else {
            return Err(Error::Unsupported(format!("linear representations over {}", t.ring())));
        };
        let n = t.size();
        if n == 0 {
            return Ok(LinearRepresentation::zero(base, num_vars));
        }
        let k = base.ring();
        let (einv, a) = split_augmentation(t.sigma(), t.s())?;
        let g = einv.mul(t.g())?;

        let mut b = Builder { states: n, ..Default::default() };
        let mut initial = vec![Scalar::zero(k); n];
        let mut terminal = vec![Scalar::zero(k); n];
        for i in 0..n {
            for j in 0..n {
                for (w, c) in free_entry(&a, i, j).terms() {
                    debug_assert!(!w.is_empty());
                    b.chain(i, w, j, c);
                }
            }
        }
        let mut start = None;
        for i in 0..n {
            for (w, c) in free_entry(t.f(), 0, i).terms() {
                if w.is_empty() {
                    initial[i] = c.clone();
                } else {
                    let s = *start.get_or_insert_with(|| b.fresh());
                    b.chain(s, w, i, c);
                }
            }
        }
        let mut end = None;
        for j in 0..n {
            for (w, c) in free_entry(&g, j, 0).terms() {
                if w.is_empty() {
                    terminal[j] = c.clone();
                } else {
                    let e = *end.get_or_insert_with(|| b.fresh());
                    b.chain(j, w, e, c);
                }
            }
        }

        let m = b.states;
        initial.resize(m, Scalar::zero(k));
        terminal.resize(m, Scalar::zero(k));
        if let Some(s) = start {
            initial[s] = Scalar::one(k);
        }
        if let Some(e) = end {
            terminal[e] = Scalar::one(k);
        }
        let mut letters = vec![Matrix::zeros(k, m, m); num_vars];
        for ((x, from, to), w) in b.edges {
            letters[x].set(from, to, w);
        }
        Ok(LinearRepresentation {
            base,
            alphabet: num_vars,
            initial: Matrix::from_rows(k, m, vec![initial])?,
            letters,
            terminal: Matrix::from_fn(k, m, 1, |i, _| terminal[i].clone()),
        })
    }

    pub fn base(&self) -> BaseField {
        self.base
    }

    pub fn alphabet(&self) -> usize {
        self.alphabet
    }

    pub fn dim(&self) -> usize {
        self.initial.cols()
    }

    pub fn initial(&self) -> &Matrix {
        &self.initial
    }

    pub fn letter_matrix(&self, x: usize) -> &Matrix {
        &self.letters[x]
    }

    pub fn terminal(&self) -> &Matrix {
        &self.terminal
    }

    pub fn coefficient(&self, w: &Word) -> Result<Scalar> {
        let mut row = self.initial.clone();
        for &x in w.letters() {
            let m = self.letters.get(x).ok_or_else(|| {
                Error::invalid("word", format!("letter x{} outside x1..x{}", x + 1, self.alphabet))
            })?;
            row = row.mul(m)?;
        }
        Ok(row.mul(&self.terminal)?.get(0, 0).clone())
    }

    /// Decides whether every coefficient vanishes by closing the reachable
    /// row space under the letter matrices.
    pub fn zero_test(&self) -> Result<ZeroTest> {
        let k = self.base.ring();
        let mut basis = RowBasis::default();
        let mut frontier = Vec::new();
        let start: Vec<Scalar> = self.initial.row(0).to_vec();
        if let Some(v) = basis.insert(start) {
            frontier.push(v);
        }
        let mut rounds = 0;
        while !frontier.is_empty() {
            rounds += 1;
            let mut next = Vec::new();
            for v in &frontier {
                let row = Matrix::from_rows(k, self.dim(), vec![v.clone()])?;
                for m in &self.letters {
                    let image = row.mul(m)?.row(0).to_vec();
                    if let Some(u) = basis.insert(image) {
                        next.push(u);
                    }
                }
            }
            frontier = next;
        }
        let is_zero = basis.rows.iter().all(|(_, r)| {
            let mut acc = Scalar::zero(k);
            for (x, y) in r.iter().zip(self.terminal.entries()) {
                acc = &acc + &(x * y);
            }
            acc.is_zero()
        });
        Ok(ZeroTest { is_zero, span_dim: basis.rows.len(), rounds })
    }
}

/// Incremental echelon basis over a field: rows are kept with distinct
/// leading positions and leading coefficient 1.
#[derive(Default)]
struct RowBasis {
    rows: Vec<(usize, Vec<Scalar>)>,
}

impl RowBasis {
    /// Reduces `v` against the basis; returns the original vector when it was
    /// independent (and records it).
    fn insert(&mut self, v: Vec<Scalar>) -> Option<Vec<Scalar>> {
        let mut r = v.clone();
        for (p, b) in &self.rows {
            if !r[*p].is_zero() {
                let c = r[*p].clone();
                for (x, y) in r.iter_mut().zip(b) {
                    *x = &*x - &(&c * y);
                }
            }
        }
        let p = r.iter().position(|x| !x.is_zero())?;
        let inv = r[p].inverse().expect("field element");
        let r: Vec<Scalar> = r.iter().map(|x| x * &inv).collect();
        for (_, b) in self.rows.iter_mut() {
            if !b[p].is_zero() {
                let c = b[p].clone();
                for (x, y) in b.iter_mut().zip(&r) {
                    *x = &*x - &(&c * y);
                }
            }
        }
        self.rows.push((p, r));
        Some(v)
    }
}

pub fn linrep_coefficient(rep: &LinearRepresentation, w: &Word) -> Result<Scalar> {
    rep.coefficient(w)
}

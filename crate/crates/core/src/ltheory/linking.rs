use std::collections::HashSet;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::qgroups::Epsilon;
use crate::algebra::{smith, IntMatrix, Lattice, Matrix, Ring, Scalar};
use crate::complexes::{tor1_order, ModulePresentation};
use crate::error::{Error, Result};
use crate::localize::{fractional_part, CohnTriple, SigmaSet};

/// Default bound on `|M|` for the metabolic search.
pub const WITT_BOUND: u64 = 10_000;

/// `M = coker(s)` for a square integer matrix with `det s ≠ 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TorsionPresentation {
    s: Matrix,
}

impl TorsionPresentation {
    pub fn new(s: Matrix) -> Result<TorsionPresentation> {
        if s.ring() != Ring::Integers {
            return Err(Error::Unsupported(format!("torsion presentations over {}", s.ring())));
        }
        if !s.is_square() {
            return Err(Error::Shape("torsion presentations need a square matrix".into()));
        }
        if IntMatrix::from_matrix(&s)?.det().is_zero() {
            return Err(Error::Singular(format!("{s} is not injective")));
        }
        Ok(TorsionPresentation { s })
    }

    pub fn matrix(&self) -> &Matrix {
        &self.s
    }

    pub fn size(&self) -> usize {
        self.s.rows()
    }

    pub fn order(&self) -> BigInt {
        IntMatrix::from_matrix(&self.s).expect("integer").det().abs()
    }

    /// Invariant factors greater than 1.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        smith(&IntMatrix::from_matrix(&self.s).expect("integer"))
            .invariant_factors()
            .into_iter()
            .filter(|d| !d.is_one())
            .collect()
    }

    pub fn as_module(&self) -> ModulePresentation {
        ModulePresentation::new(Ring::Integers, self.size(), self.s.clone()).expect("square")
    }
}

/// `M^ = Ext¹(M, Z)`, presented by `s*`.
pub fn torsion_dual(m: &TorsionPresentation) -> TorsionPresentation {
    TorsionPresentation { s: m.s.star_transpose() }
}

pub fn double_dual_check(m: &TorsionPresentation) -> bool {
    torsion_dual(&torsion_dual(m)).invariant_factors() == m.invariant_factors()
}

/// `f s⁻¹ g` reduced into `[0, 1)`.
pub fn linking_pairing(m: &TorsionPresentation, f: &Matrix, g: &Matrix) -> Result<BigRational> {
    let sigma = SigmaSet::nonzero(Ring::Integers)?;
    let t = CohnTriple::new(&sigma, f.clone(), m.s.clone(), g.clone())?;
    let value = t.eval_ore()?.to_rational().expect("rational value");
    Ok(fractional_part(&value))
}

/// An ε-symmetric pairing `λ(e_i, e_j) = pairing[i][j] mod Z` on the
/// generators of `coker(s)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinkingForm {
    module: TorsionPresentation,
    pairing: Vec<Vec<BigRational>>,
    eps: Epsilon,
}

fn is_integer(q: &BigRational) -> bool {
    q.is_integer()
}

fn rational_matrix(m: &Matrix) -> Vec<Vec<BigRational>> {
    (0..m.rows()).map(|i| (0..m.cols()).map(|j| m.get(i, j).to_rational().expect("rational")).collect()).collect()
}

fn product(a: &[Vec<BigRational>], b: &[Vec<BigRational>]) -> Vec<Vec<BigRational>> {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| (0..inner).fold(BigRational::zero(), |acc, k| acc + &row[k] * &b[k][j]))
                .collect()
        })
        .collect()
}

fn transpose(a: &[Vec<BigRational>]) -> Vec<Vec<BigRational>> {
    let cols = a.first().map_or(0, Vec::len);
    (0..cols).map(|j| a.iter().map(|r| r[j].clone()).collect()).collect()
}

impl LinkingForm {
    /// Checks that the pairing is well defined modulo the relations and
    /// ε-symmetric modulo Z.
    pub fn new(module: TorsionPresentation, pairing: Vec<Vec<BigRational>>, eps: Epsilon) -> Result<LinkingForm> {
        let n = module.size();
        if pairing.len() != n || pairing.iter().any(|r| r.len() != n) {
            return Err(Error::Shape(format!("pairing must be {n}x{n}")));
        }
        let s = rational_matrix(&module.s);
        let left = product(&transpose(&s), &pairing);
        let right = product(&pairing, &s);
        if left.iter().chain(&right).flatten().any(|q| !is_integer(q)) {
            return Err(Error::invalid("linking form", "pairing is not well defined on coker(s)"));
        }
        let e = BigRational::from_integer(eps.value().into());
        for i in 0..n {
            for j in 0..n {
                if !is_integer(&(&pairing[i][j] - &e * &pairing[j][i])) {
                    return Err(Error::invalid("linking form", format!("not {eps}-symmetric at ({i}, {j})")));
                }
            }
        }
        let pairing = pairing.iter().map(|r| r.iter().map(fractional_part).collect()).collect();
        Ok(LinkingForm { module, pairing, eps })
    }

    pub fn module(&self) -> &TorsionPresentation {
        &self.module
    }

    pub fn pairing(&self) -> &[Vec<BigRational>] {
        &self.pairing
    }

    pub fn eps(&self) -> Epsilon {
        self.eps
    }

    pub fn order(&self) -> BigInt {
        self.module.order()
    }

    /// The same form on Smith generators: `coker(s) ≅ ⊕ Z/d_i` through
    /// `x ↦ U x`, so generator `i` is column `i` of `U⁻¹`. Summands with
    /// `d_i = 1` are dropped.
    pub fn normalized(&self) -> NormalForm {
        let f = smith(&IntMatrix::from_matrix(&self.module.s).expect("integer"));
        let keep: Vec<usize> = (0..f.s.rows()).filter(|&i| !f.s[(i, i)].is_one()).collect();
        let gens: Vec<Vec<BigRational>> = keep
            .iter()
            .map(|&i| f.u_inv.column(i).into_iter().map(BigRational::from_integer).collect())
            .collect();
        let pairing = gens
            .iter()
            .map(|x| {
                gens.iter()
                    .map(|y| {
                        let mut acc = BigRational::zero();
                        for (a, row) in x.iter().zip(&self.pairing) {
                            for (b, l) in y.iter().zip(row) {
                                acc += a * l * b;
                            }
                        }
                        fractional_part(&acc)
                    })
                    .collect()
            })
            .collect();
        NormalForm { orders: keep.iter().map(|&i| f.s[(i, i)].abs()).collect(), pairing }
    }
}

/// `⊕ Z/orders[i]` with the pairing on the standard generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormalForm {
    pub orders: Vec<BigInt>,
    pub pairing: Vec<Vec<BigRational>>,
}

impl fmt::Display for LinkingForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let nf = self.normalized();
        let orders: Vec<String> = nf.orders.iter().map(|o| format!("Z/{o}")).collect();
        let rows: Vec<String> = nf
            .pairing
            .iter()
            .map(|r| format!("[{}]", r.iter().map(|q| q.to_string()).collect::<Vec<_>>().join(", ")))
            .collect();
        write!(f, "({}, [{}])", if orders.is_empty() { "0".into() } else { orders.join(" + ") }, rows.join(", "))
    }
}

/// The adjoint `M → M^` is an isomorphism. Its kernel is
/// `K / im s` with `K = { x : Λᵗx ∈ Zⁿ }`, so the form is nonsingular iff
/// `[Zⁿ : K] = |det s|`.
pub fn linking_nonsingular(l: &LinkingForm) -> bool {
    let n = l.module.size();
    if n == 0 {
        return true;
    }
    let lcm = l.pairing.iter().flatten().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    let scaled = IntMatrix::from_fn(n, n, |i, j| (&l.pairing[j][i] * BigRational::from_integer(lcm.clone())).to_integer());
    let target = Lattice::span(&IntMatrix::from_fn(n, n, |i, j| if i == j { lcm.clone() } else { BigInt::zero() }));
    let k = target.preimage(&scaled);
    k.index() == Some(l.order())
}

/// `∂(S) = (coker S, S⁻¹ mod Z)` for an ε-symmetric `S` with `det S ≠ 0`.
pub fn boundary_linking_form(s: &Matrix, eps: Epsilon) -> Result<LinkingForm> {
    if s.ring() != Ring::Integers || !s.is_square() {
        return Err(Error::Shape("boundary forms need a square integer matrix".into()));
    }
    let e = Scalar::from_i64(Ring::Integers, eps.value());
    if s.transpose() != s.scale(&e) {
        return Err(Error::invalid("form", format!("matrix is not {eps}-symmetric")));
    }
    if IntMatrix::from_matrix(s)?.det().is_zero() {
        return Err(Error::Singular("det S = 0: the form is not Poincaré over Q".into()));
    }
    let inv = crate::algebra::linalg::inverse(&s.to_fraction_field()?)?;
    LinkingForm::new(TorsionPresentation::new(s.clone())?, rational_matrix(&inv), eps)
}

/// Whether some subgroup `N` with `|N|² = |M|` has `λ(N, N) = 0`.
pub fn witt_metabolic_test(l: &LinkingForm, bound: u64) -> Result<bool> {
    let order = l.order();
    if order > BigInt::from(bound) {
        return Err(Error::BoundExceeded(format!("|M| = {order} exceeds {bound}")));
    }
    let order = order.to_u64().expect("bounded");
    let root = (order as f64).sqrt().round() as u64;
    if root * root != order {
        return Ok(false);
    }
    if order == 1 {
        return Ok(true);
    }
    let nf = l.normalized();
    let orders: Vec<u64> = nf.orders.iter().map(|o| o.to_u64().expect("bounded")).collect();
    let den = nf.pairing.iter().flatten().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    let den_i = den.to_i128().expect("bounded denominator");
    let a: Vec<Vec<i128>> = nf
        .pairing
        .iter()
        .map(|r| r.iter().map(|q| (q * BigRational::from_integer(den.clone())).to_integer().to_i128().expect("small")).collect())
        .collect();
    let group = FiniteGroup { orders };
    let size = order as usize;
    let pair = |x: usize, y: usize| -> bool {
        let (u, v) = (group.coords(x), group.coords(y));
        let mut acc: i128 = 0;
        for i in 0..u.len() {
            for j in 0..v.len() {
                acc = (acc + u[i] as i128 * a[i][j] % den_i * v[j] as i128) % den_i;
            }
        }
        acc.rem_euclid(den_i) == 0
    };
    let isotropic: Vec<usize> = (1..size).filter(|&x| pair(x, x)).collect();
    let mut seen = HashSet::new();
    let mut stack = vec![(vec![0usize], 0usize)];
    while let Some((members, last)) = stack.pop() {
        for &x in isotropic.iter().filter(|&&x| x > last) {
            if members.contains(&x) || !members.iter().all(|&y| pair(x, y)) {
                continue;
            }
            let next = group.span_with(&members, x);
            let n = next.len() as u64;
            if n * n > order {
                continue;
            }
            if n * n == order {
                return Ok(true);
            }
            if seen.insert(next.clone()) {
                stack.push((next, x));
            }
        }
    }
    Ok(false)
}

/// `⊕ Z/orders[i]`, elements indexed in mixed radix.
struct FiniteGroup {
    orders: Vec<u64>,
}

impl FiniteGroup {
    fn coords(&self, mut x: usize) -> Vec<u64> {
        self.orders
            .iter()
            .map(|&o| {
                let c = x as u64 % o;
                x /= o as usize;
                c
            })
            .collect()
    }

    fn index(&self, c: &[u64]) -> usize {
        let mut x = 0usize;
        for (i, &o) in self.orders.iter().enumerate().rev() {
            x = x * o as usize + c[i] as usize;
        }
        x
    }

    fn add(&self, x: usize, y: usize) -> usize {
        let (a, b) = (self.coords(x), self.coords(y));
        let c: Vec<u64> = a.iter().zip(&b).zip(&self.orders).map(|((p, q), o)| (p + q) % o).collect();
        self.index(&c)
    }

    /// The subgroup generated by `members` (a subgroup) and `x`, sorted.
    fn span_with(&self, members: &[usize], x: usize) -> Vec<usize> {
        let mut set: HashSet<usize> = members.iter().copied().collect();
        let mut multiple = x;
        while !members.contains(&multiple) {
            for &m in members {
                set.insert(self.add(m, multiple));
            }
            multiple = self.add(multiple, x);
        }
        let mut out: Vec<usize> = set.into_iter().collect();
        out.sort_unstable();
        out
    }
}

/// Certificate for [`extension_iv`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtensionCertificate {
    pub order_l: BigInt,
    pub order_n: BigInt,
    pub order_dual_m: BigInt,
    /// `|L| = |N|·|M^|^k`
    pub orders_match: bool,
    /// `N → L` is injective.
    pub injective: bool,
    /// Each `v_i` maps to zero in `M ⊗ L`.
    pub lifts_killed: Vec<bool>,
}

impl ExtensionCertificate {
    pub fn is_exact(&self) -> bool {
        self.orders_match && self.injective && self.lifts_killed.iter().all(|&b| b)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Extension {
    pub l: TorsionPresentation,
    pub certificate: ExtensionCertificate,
}

/// `L = coker(u)`, `u = [[s* ⊕ … ⊕ s*, 0], [v_1 … v_k, t]]`, fitting in
/// `0 → N → L → ⊕_k M^ → 0`. Each `v_i: P_0* → Q_0` is `rank t × rank s`.
pub fn extension_iv(m: &TorsionPresentation, n: &TorsionPresentation, vs: &[Matrix]) -> Result<Extension> {
    let (a, b, k) = (m.size(), n.size(), vs.len());
    for v in vs {
        if v.shape() != (b, a) || v.ring() != Ring::Integers {
            return Err(Error::Shape(format!("lifts must be {b}x{a} integer matrices")));
        }
    }
    let dual = torsion_dual(m);
    let z = Ring::Integers;
    let mut top = Matrix::zeros(z, 0, 0);
    for _ in 0..k {
        top = Matrix::block_diag(&top, dual.matrix())?;
    }
    let mut bottom_left = Matrix::zeros(z, b, 0);
    for v in vs {
        bottom_left = bottom_left.hstack(v)?;
    }
    let u = Matrix::block(&top, &Matrix::zeros(z, k * a, b), &bottom_left, n.matrix())?;
    let l = TorsionPresentation::new(u.clone())?;

    let order_l = l.order();
    let order_n = n.order();
    let order_dual_m = dual.order();
    let orders_match = order_l == &order_n * num_traits::pow(order_dual_m.clone(), k);

    let size = k * a + b;
    let ui = IntMatrix::from_matrix(&u)?;
    let inclusion = IntMatrix::from_fn(size, b, |r, c| if r == k * a + c { 1.into() } else { 0.into() });
    let pulled = Lattice::span(&ui).preimage(&inclusion);
    let injective = pulled.same_as(&Lattice::span(&IntMatrix::from_matrix(n.matrix())?));

    // M ⊗ L = coker([s ⊗ 1 | 1 ⊗ u]) on P_0 ⊗ U_0
    let s = IntMatrix::from_matrix(m.matrix())?.to_matrix();
    let rel = s
        .kronecker(&Matrix::identity(z, size))?
        .hstack(&Matrix::identity(z, a).kronecker(&u)?)?;
    let relations = Lattice::span(&IntMatrix::from_matrix(&rel)?);
    let lifts_killed = vs
        .iter()
        .map(|v| {
            let mut vec = vec![BigInt::zero(); a * size];
            for p in 0..a {
                for q in 0..b {
                    vec[p * size + k * a + q] = v.get(q, p).as_bigint().expect("integer").clone();
                }
            }
            relations.contains(&vec)
        })
        .collect();
    Ok(Extension {
        l,
        certificate: ExtensionCertificate { order_l, order_n, order_dual_m, orders_match, injective, lifts_killed },
    })
}

/// `|Hom(A, B)| = ∏ gcd(a_i, b_j)` for finite `A = ⊕ Z/a_i`, `B = ⊕ Z/b_j`.
pub fn hom_order(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().flat_map(|x| b.iter().map(move |y| x.gcd(y))).product()
}

/// `(|Hom(M^, N)|, |Tor_1(M, N)|)`.
pub fn hom_tor_orders(m: &TorsionPresentation, n: &TorsionPresentation) -> Result<(BigInt, BigInt)> {
    let hom = hom_order(&torsion_dual(m).invariant_factors(), &n.invariant_factors());
    let tor = tor1_order(&m.as_module(), &n.as_module())?.expect("finite modules have finite Tor");
    Ok((hom, tor))
}

//! The graded quotients `gr_c(M_n) = γ_c/γ_{c+1}`.
//!
//! `gr_c` is free abelian on the basic commutators `[x_{i_1}, …, x_{i_c}]` with
//! `i_1 > i_2 ≤ i_3 ≤ … ≤ i_c`. An element of `γ_c` is coordinatized by
//! matching the degree `c − 1` parts of its Fox derivatives (in `t_i = a_i − 1`)
//! against those of the basis.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rustc_hash::FxHashMap;
use serde::ser::{SerializeSeq, Serializer};
use serde::Serialize;

use crate::depth::Depth;
use crate::error::{Error, Result};
use crate::intmat::IntMatrix;
use crate::laurent::{binomial, ExpVec};
use crate::magnus::{GroupContext, MagnusElement};

/// A left-normed bracket `[x_{i_1}, …, x_{i_c}]` with `i_1 > i_2 ≤ i_3 ≤ … ≤ i_c`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct BasicCommutator(Vec<u8>);

impl BasicCommutator {
    pub fn new(indices: &[usize]) -> Result<Self> {
        if !is_basic(indices) {
            return Err(Error::InvalidParameters(format!(
                "{indices:?} is not a basic commutator"
            )));
        }
        Ok(BasicCommutator(indices.iter().map(|&i| i as u8).collect()))
    }

    fn from_u8(indices: Vec<u8>) -> Self {
        BasicCommutator(indices)
    }

    pub fn indices(&self) -> Vec<usize> {
        self.0.iter().map(|&i| i as usize).collect()
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn element(&self, ctx: GroupContext) -> Result<MagnusElement> {
        let gens = self
            .0
            .iter()
            .map(|&i| ctx.generator(i as usize))
            .collect::<Result<Vec<_>>>()?;
        MagnusElement::left_normed(&gens)
    }
}

impl fmt::Display for BasicCommutator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|i| format!("x{i}")).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

impl fmt::Debug for BasicCommutator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

fn is_basic(ix: &[usize]) -> bool {
    ix.len() >= 2 && ix[0] > ix[1] && ix[1..].windows(2).all(|w| w[0] <= w[1]) && ix[1] >= 1
}

/// All basic commutators of weight `c` in `n` generators, in lexicographic order.
pub fn basis(n: usize, c: usize) -> Vec<BasicCommutator> {
    assert!(n >= 2 && c >= 2);
    let mut out = Vec::new();
    let mut cur = vec![0u8; c];
    for i1 in 1..=n {
        for i2 in 1..i1 {
            cur[0] = i1 as u8;
            cur[1] = i2 as u8;
            fill_tail(&mut cur, 2, i2, n, &mut out);
        }
    }
    out
}

fn fill_tail(cur: &mut Vec<u8>, pos: usize, min: usize, n: usize, out: &mut Vec<BasicCommutator>) {
    if pos == cur.len() {
        out.push(BasicCommutator(cur.clone()));
        return;
    }
    for v in min..=n {
        cur[pos] = v as u8;
        fill_tail(cur, pos + 1, v, n, out);
    }
}

/// `(c − 1)·C(n + c − 2, n − 2)`, the rank of `gr_c(M_n)`.
pub fn rank_gr(n: usize, c: usize) -> u64 {
    assert!(n >= 2 && c >= 2);
    let b = binomial((n + c - 2) as u32, (n - 2) as u32);
    u64::try_from(b * BigInt::from(c - 1)).expect("rank fits in u64")
}

fn rational_to_string(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// An element of `gr_c(M_n) ⊗ Q` in basic-commutator coordinates.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GradedVector {
    rank: usize,
    degree: usize,
    coeffs: BTreeMap<BasicCommutator, BigRational>,
}

impl GradedVector {
    pub fn zero(rank: usize, degree: usize) -> Self {
        GradedVector {
            rank,
            degree,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn unit(rank: usize, b: BasicCommutator) -> Self {
        let mut v = Self::zero(rank, b.degree());
        v.coeffs.insert(b, BigRational::one());
        v
    }

    pub fn from_pairs(
        rank: usize,
        degree: usize,
        pairs: impl IntoIterator<Item = (BasicCommutator, BigRational)>,
    ) -> Self {
        let mut v = Self::zero(rank, degree);
        for (b, q) in pairs {
            v.add_term(b, q);
        }
        v
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn get(&self, b: &BasicCommutator) -> BigRational {
        self.coeffs.get(b).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&BasicCommutator, &BigRational)> {
        self.coeffs.iter()
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.values().all(|q| q.is_integer())
    }

    pub fn add_term(&mut self, b: BasicCommutator, q: BigRational) {
        debug_assert_eq!(b.degree(), self.degree);
        if q.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(b);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(q);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += q;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &GradedVector) -> GradedVector {
        assert_eq!(self.degree, other.degree, "degree mismatch");
        let mut r = self.clone();
        for (b, q) in &other.coeffs {
            r.add_term(b.clone(), q.clone());
        }
        r
    }

    pub fn neg(&self) -> GradedVector {
        GradedVector {
            rank: self.rank,
            degree: self.degree,
            coeffs: self.coeffs.iter().map(|(b, q)| (b.clone(), -q)).collect(),
        }
    }

    pub fn sub(&self, other: &GradedVector) -> GradedVector {
        self.add(&other.neg())
    }

    pub fn scale(&self, k: &BigRational) -> GradedVector {
        if k.is_zero() {
            return Self::zero(self.rank, self.degree);
        }
        GradedVector {
            rank: self.rank,
            degree: self.degree,
            coeffs: self.coeffs.iter().map(|(b, q)| (b.clone(), q * k)).collect(),
        }
    }

    /// The product `∏ b^{λ_b}` of basis elements, for integral vectors.
    pub fn realize(&self, ctx: GroupContext) -> Result<MagnusElement> {
        let mut acc = ctx.one();
        for (b, q) in &self.coeffs {
            if !q.is_integer() {
                return Err(Error::InvalidParameters("vector is not integral".into()));
            }
            let k =
                i64::try_from(q.to_integer()).map_err(|_| Error::InvalidParameters("coefficient too large".into()))?;
            acc = &acc * &b.element(ctx)?.pow(k);
        }
        Ok(acc)
    }
}

impl fmt::Display for GradedVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        for (k, (b, q)) in self.coeffs.iter().enumerate() {
            let neg = q.is_negative();
            let a = q.abs();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            if !a.is_one() {
                write!(f, "{}*", rational_to_string(&a))?;
            }
            write!(f, "{b}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for GradedVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GradedVector({self})")
    }
}

/// Ordered `(indices, coefficient)` pairs; coefficients are exact strings.
impl Serialize for GradedVector {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.coeffs.len()))?;
        for (b, q) in &self.coeffs {
            seq.serialize_element(&(b.indices(), rational_to_string(q)))?;
        }
        seq.end()
    }
}

/// An `n`-tuple of graded vectors of common degree: an element of `gr_c(M_n)^{⊕n}`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct GrTuple {
    slots: Vec<GradedVector>,
}

impl GrTuple {
    pub fn zero(n: usize, c: usize) -> Self {
        GrTuple {
            slots: vec![GradedVector::zero(n, c); n],
        }
    }

    pub fn new(slots: Vec<GradedVector>) -> Result<Self> {
        let n = slots.len();
        if n == 0 {
            return Err(Error::InvalidParameters("empty tuple".into()));
        }
        let c = slots[0].degree;
        if slots.iter().any(|v| v.degree != c || v.rank != n) {
            return Err(Error::InvalidParameters(
                "tuple slots must share degree and rank".into(),
            ));
        }
        Ok(GrTuple { slots })
    }

    pub fn rank(&self) -> usize {
        self.slots.len()
    }

    pub fn degree(&self) -> usize {
        self.slots[0].degree
    }

    /// Slot `i` (1-based).
    pub fn slot(&self, i: usize) -> &GradedVector {
        &self.slots[i - 1]
    }

    pub fn slots(&self) -> &[GradedVector] {
        &self.slots
    }

    pub fn is_zero(&self) -> bool {
        self.slots.iter().all(|v| v.is_zero())
    }

    pub fn add(&self, other: &GrTuple) -> GrTuple {
        GrTuple {
            slots: self.slots.iter().zip(&other.slots).map(|(a, b)| a.add(b)).collect(),
        }
    }

    pub fn sub(&self, other: &GrTuple) -> GrTuple {
        GrTuple {
            slots: self.slots.iter().zip(&other.slots).map(|(a, b)| a.sub(b)).collect(),
        }
    }

    pub fn neg(&self) -> GrTuple {
        GrTuple {
            slots: self.slots.iter().map(|a| a.neg()).collect(),
        }
    }

    /// Dense coordinates, slot-major, against `basis(n, c)`.
    pub fn to_dense(&self) -> Vec<BigRational> {
        let gb = graded_basis(self.rank(), self.degree());
        let r = gb.len();
        let mut out = vec![BigRational::zero(); r * self.rank()];
        for (k, v) in self.slots.iter().enumerate() {
            for (b, q) in v.iter() {
                out[k * r + gb.position(b)] = q.clone();
            }
        }
        out
    }

    pub fn from_dense(n: usize, c: usize, dense: &[BigRational]) -> GrTuple {
        let gb = graded_basis(n, c);
        let r = gb.len();
        assert_eq!(dense.len(), n * r);
        let slots = (0..n)
            .map(|k| {
                GradedVector::from_pairs(
                    n,
                    c,
                    gb.elements()
                        .iter()
                        .enumerate()
                        .map(|(p, b)| (b.clone(), dense[k * r + p].clone())),
                )
            })
            .collect();
        GrTuple { slots }
    }
}

impl fmt::Display for GrTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, v) in self.slots.iter().enumerate() {
            if k > 0 {
                write!(f, "; ")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for GrTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GrTuple{self}")
    }
}

/// The basis of `gr_c(M_n)` together with what is needed to solve for coordinates.
pub struct GradedBasis {
    n: usize,
    c: usize,
    elements: Vec<BasicCommutator>,
    position: FxHashMap<BasicCommutator, usize>,
    /// Column index of `(slot, t-monomial)` in the leading-form rows.
    columns: FxHashMap<(usize, ExpVec), usize>,
    /// Leading-form row of each basis element, sparse.
    rows: Vec<Vec<(usize, BigInt)>>,
    /// For each pivot column, the corresponding row of `denom · S⁻¹`, sparse.
    pivots: Vec<(usize, Vec<(usize, BigInt)>)>,
    denom: BigInt,
}

static BASIS_CACHE: OnceLock<Mutex<FxHashMap<(usize, usize), Arc<GradedBasis>>>> = OnceLock::new();

/// The cached basis data for `gr_c(M_n)`.
pub fn graded_basis(n: usize, c: usize) -> Arc<GradedBasis> {
    let cache = BASIS_CACHE.get_or_init(|| Mutex::new(FxHashMap::default()));
    if let Some(b) = cache.lock().unwrap().get(&(n, c)) {
        return b.clone();
    }
    let built = Arc::new(GradedBasis::build(n, c));
    cache.lock().unwrap().entry((n, c)).or_insert(built).clone()
}

/// Degree `d` parts of the Fox row of `w`, as `(slot, monomial, coefficient)`.
/// Requires every derivative to have valuation at least `d`.
fn fox_component(w: &MagnusElement, d: u32) -> Vec<(usize, ExpVec, BigInt)> {
    let mut out = Vec::new();
    for (j, p) in w.fox_row().iter().enumerate() {
        let lf = p.component_at(d).expect("valuation below requested degree");
        for (m, k) in lf.terms() {
            out.push((j, *m, k.clone()));
        }
    }
    out
}

impl GradedBasis {
    fn build(n: usize, c: usize) -> GradedBasis {
        let ctx = GroupContext::new(n).expect("supported rank");
        let elements = basis(n, c);
        let position = elements.iter().cloned().enumerate().map(|(i, b)| (b, i)).collect();
        let mut columns = FxHashMap::default();
        let mut rows = Vec::with_capacity(elements.len());
        for b in &elements {
            let w = b.element(ctx).unwrap();
            let mut row = Vec::new();
            for (j, m, k) in fox_component(&w, (c - 1) as u32) {
                let next = columns.len();
                let col = *columns.entry((j, m)).or_insert(next);
                row.push((col, k));
            }
            rows.push(row);
        }
        let (pivot_cols, inv, denom) = Self::invert_pivot_block(&rows, columns.len());
        let pivots = pivot_cols
            .into_iter()
            .zip(inv)
            .map(|(col, r)| (col, r.into_iter().enumerate().filter(|(_, x)| !x.is_zero()).collect()))
            .collect();
        GradedBasis {
            n,
            c,
            elements,
            position,
            columns,
            rows,
            pivots,
            denom,
        }
    }

    /// Chooses columns on which the rows are independent and inverts that square block.
    /// Returns the pivot columns, `denom · S⁻¹` row by row (rows indexed like the pivots),
    /// and `denom`.
    fn invert_pivot_block(rows: &[Vec<(usize, BigInt)>], ncols: usize) -> (Vec<usize>, Vec<Vec<BigInt>>, BigInt) {
        let r = rows.len();
        let mut dense: Vec<Vec<BigRational>> = rows
            .iter()
            .map(|row| {
                let mut v = vec![BigRational::zero(); ncols];
                for (col, k) in row {
                    v[*col] = BigRational::from_integer(k.clone());
                }
                v
            })
            .collect();
        let mut pivot_cols = Vec::new();
        let mut next_row = 0;
        for col in 0..ncols {
            if next_row == r {
                break;
            }
            let Some(p) = (next_row..r).find(|&i| !dense[i][col].is_zero()) else {
                continue;
            };
            dense.swap(next_row, p);
            let inv = dense[next_row][col].recip();
            for x in dense[next_row].iter_mut() {
                *x *= &inv;
            }
            for i in 0..r {
                if i != next_row && !dense[i][col].is_zero() {
                    let f = dense[i][col].clone();
                    for k in 0..ncols {
                        if !dense[next_row][k].is_zero() {
                            let v = &f * &dense[next_row][k];
                            dense[i][k] -= v;
                        }
                    }
                }
            }
            pivot_cols.push(col);
            next_row += 1;
        }
        assert_eq!(pivot_cols.len(), r, "leading forms of the basis are linearly dependent");

        // S[b][p] = entry of row b at pivot column p; solve λ·S = t, so λ = t·S⁻¹.
        let mut s: Vec<Vec<BigRational>> = vec![vec![BigRational::zero(); 2 * r]; r];
        for (b, row) in rows.iter().enumerate() {
            for (col, k) in row {
                if let Some(p) = pivot_cols.iter().position(|c| c == col) {
                    s[b][p] = BigRational::from_integer(k.clone());
                }
            }
            s[b][r + b] = BigRational::one();
        }
        for col in 0..r {
            let p = (col..r)
                .find(|&i| !s[i][col].is_zero())
                .expect("pivot block is invertible");
            s.swap(col, p);
            let inv = s[col][col].recip();
            for x in s[col].iter_mut() {
                *x *= &inv;
            }
            for i in 0..r {
                if i != col && !s[i][col].is_zero() {
                    let f = s[i][col].clone();
                    for k in 0..2 * r {
                        if !s[col][k].is_zero() {
                            let v = &f * &s[col][k];
                            s[i][k] -= v;
                        }
                    }
                }
            }
        }
        // s now holds [I | S⁻¹] with S⁻¹ indexed (pivot, basis)
        let mut denom = BigInt::one();
        for row in &s {
            for x in &row[r..] {
                denom = denom.lcm(x.denom());
            }
        }
        let inv = s
            .iter()
            .map(|row| {
                row[r..]
                    .iter()
                    .map(|x| (x * BigRational::from_integer(denom.clone())).to_integer())
                    .collect()
            })
            .collect();
        (pivot_cols, inv, denom)
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.c
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[BasicCommutator] {
        &self.elements
    }

    pub fn position(&self, b: &BasicCommutator) -> usize {
        self.position[b]
    }

    /// Leading-form row of basis element `k`, keyed by `(slot, t-monomial)` (slot 0-based).
    pub fn leading_row(&self, k: usize) -> Vec<(usize, ExpVec, BigInt)> {
        let mut by_col: FxHashMap<usize, (usize, ExpVec)> = FxHashMap::default();
        for (key, col) in &self.columns {
            by_col.insert(*col, *key);
        }
        self.rows[k]
            .iter()
            .map(|(col, v)| {
                let (j, m) = by_col[col];
                (j, m, v.clone())
            })
            .collect()
    }

    /// Integer coordinates of a target leading-form row, or an error if it is
    /// not in the integer row space of the basis.
    fn solve(&self, target: &[(usize, ExpVec, BigInt)]) -> Result<Vec<BigInt>> {
        let mut t: FxHashMap<usize, BigInt> = FxHashMap::default();
        for (j, m, k) in target {
            let col = *self.columns.get(&(*j, *m)).ok_or_else(|| {
                Error::Inconsistent(format!("monomial {m:?} in slot {} outside the basis span", j + 1))
            })?;
            *t.entry(col).or_default() += k;
        }
        t.retain(|_, v| !v.is_zero());
        let mut num = vec![BigInt::zero(); self.len()];
        for (col, inv_row) in &self.pivots {
            if let Some(tv) = t.get(col) {
                for (b, x) in inv_row {
                    num[*b] += tv * x;
                }
            }
        }
        let mut lambda = Vec::with_capacity(num.len());
        for x in num {
            let (q, r) = x.div_rem(&self.denom);
            if !r.is_zero() {
                return Err(Error::Inconsistent("non-integral coordinates".into()));
            }
            lambda.push(q);
        }
        let mut check: FxHashMap<usize, BigInt> = FxHashMap::default();
        for (b, l) in lambda.iter().enumerate() {
            if l.is_zero() {
                continue;
            }
            for (col, v) in &self.rows[b] {
                *check.entry(*col).or_default() += l * v;
            }
        }
        check.retain(|_, v| !v.is_zero());
        if check != t {
            return Err(Error::Inconsistent(
                "leading forms are not in the row space of the basis".into(),
            ));
        }
        Ok(lambda)
    }
}

/// The unique integer vector `λ` with `w ≡ ∏ b^{λ_b} (mod γ_{c+1})`.
pub fn coordinates(w: &MagnusElement, c: usize) -> Result<GradedVector> {
    let n = w.rank();
    if c < 2 {
        return Err(Error::InvalidParameters("graded coordinates start at weight 2".into()));
    }
    let depth = w.gamma_depth();
    if !depth.at_least(c as u32) {
        return Err(Error::DepthTooSmall {
            required: c as u32,
            actual: depth.to_string(),
        });
    }
    if depth > Depth::Finite(c as u32) {
        return Ok(GradedVector::zero(n, c));
    }
    let gb = graded_basis(n, c);
    let lambda = gb.solve(&fox_component(w, (c - 1) as u32))?;
    Ok(GradedVector::from_pairs(
        n,
        c,
        gb.elements
            .iter()
            .zip(lambda)
            .map(|(b, l)| (b.clone(), BigRational::from_integer(l))),
    ))
}

/// Normal form of the left-normed Lie bracket `[z_{j_1}, …, z_{j_c}]` in the free
/// metabelian Lie algebra, in the basic-commutator basis.
pub fn lie_normal_form(n: usize, indices: &[usize]) -> GradedVector {
    lie_normal_form_with(n, indices, &mut |cands: &[u8]| cands[0])
}

/// As [`lie_normal_form`], with `choose` picking which tail entry smaller than the
/// second entry is moved forward by the Jacobi identity.
pub fn lie_normal_form_with(n: usize, indices: &[usize], choose: &mut dyn FnMut(&[u8]) -> u8) -> GradedVector {
    assert!(indices.len() >= 2, "a bracket needs at least two entries");
    assert!(indices.iter().all(|&i| i >= 1 && i <= n), "index out of range");
    let mut acc: FxHashMap<Vec<u8>, i64> = FxHashMap::default();
    let seq: Vec<u8> = indices.iter().map(|&i| i as u8).collect();
    rewrite(seq, 1, &mut acc, choose);
    GradedVector::from_pairs(
        n,
        indices.len(),
        acc.into_iter()
            .filter(|(_, k)| *k != 0)
            .map(|(ix, k)| (BasicCommutator::from_u8(ix), BigRational::from_integer(k.into()))),
    )
}

fn rewrite(mut seq: Vec<u8>, coef: i64, acc: &mut FxHashMap<Vec<u8>, i64>, choose: &mut dyn FnMut(&[u8]) -> u8) {
    let mut coef = coef;
    if seq[0] == seq[1] {
        return;
    }
    if seq[0] < seq[1] {
        seq.swap(0, 1);
        coef = -coef;
    }
    let (a, b) = (seq[0], seq[1]);
    let mut cands: Vec<u8> = seq[2..].iter().copied().filter(|&t| t < b).collect();
    if cands.is_empty() {
        seq[2..].sort_unstable();
        *acc.entry(seq).or_insert(0) += coef;
        return;
    }
    cands.sort_unstable();
    cands.dedup();
    let t = choose(&cands);
    debug_assert!(cands.contains(&t));
    let mut rest = seq[2..].to_vec();
    let k = rest.iter().position(|&x| x == t).unwrap();
    rest.remove(k);
    // [a, b, t] = [a, t, b] − [b, t, a]; the tail commutes
    let mut first = vec![a, t, b];
    first.extend_from_slice(&rest);
    let mut second = vec![b, t, a];
    second.extend_from_slice(&rest);
    rewrite(first, coef, acc, choose);
    rewrite(second, -coef, acc, choose);
}

fn check_invertible(g: &IntMatrix) -> Result<()> {
    if g.det().is_zero() {
        return Err(Error::Singular);
    }
    Ok(())
}

/// The diagonal action of `GL_n` on `gr_c ⊗ Q`: `x̄_j ↦ Σ_i g_ij x̄_i` in every slot.
pub fn gl_act(g: &IntMatrix, v: &GradedVector) -> Result<GradedVector> {
    check_invertible(g)?;
    Ok(gl_act_unchecked(g, v))
}

pub(crate) fn gl_act_unchecked(g: &IntMatrix, v: &GradedVector) -> GradedVector {
    let n = v.rank;
    assert_eq!(g.dim(), n, "matrix dimension does not match rank");
    let columns: Vec<Vec<(usize, i64)>> = (0..n)
        .map(|j| {
            (0..n)
                .filter(|&i| g.get(i, j) != 0)
                .map(|i| (i + 1, g.get(i, j)))
                .collect()
        })
        .collect();
    let mut out = GradedVector::zero(n, v.degree);
    let mut cur = vec![0usize; v.degree];
    for (b, q) in &v.coeffs {
        let slots: Vec<&Vec<(usize, i64)>> = b.0.iter().map(|&j| &columns[j as usize - 1]).collect();
        expand(&slots, 0, 1, &mut cur, &mut |ix, k| {
            let nf = lie_normal_form(n, ix);
            let f = q * BigRational::from_integer(k.into());
            for (bb, qq) in nf.coeffs {
                out.add_term(bb, &f * qq);
            }
        });
    }
    out
}

fn expand(slots: &[&Vec<(usize, i64)>], pos: usize, k: i64, cur: &mut Vec<usize>, f: &mut impl FnMut(&[usize], i64)) {
    if pos == slots.len() {
        f(cur, k);
        return;
    }
    for &(i, x) in slots[pos] {
        cur[pos] = i;
        expand(slots, pos + 1, k * x, cur, f);
    }
}

/// `g • (u_1, …, u_n) = (g u_1, …, g u_n)·g⁻¹`.
pub fn bullet(g: &IntMatrix, t: &GrTuple) -> Result<GrTuple> {
    let ginv = g.inverse_rational()?;
    let n = t.rank();
    assert_eq!(g.dim(), n, "matrix dimension does not match rank");
    let moved: Vec<GradedVector> = t.slots.iter().map(|v| gl_act_unchecked(g, v)).collect();
    let slots = (0..n)
        .map(|j| {
            let mut acc = GradedVector::zero(n, t.degree());
            for (k, u) in moved.iter().enumerate() {
                if !ginv[k][j].is_zero() {
                    acc = acc.add(&u.scale(&ginv[k][j]));
                }
            }
            acc
        })
        .collect();
    Ok(GrTuple { slots })
}

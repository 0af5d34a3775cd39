//! Exact Laurent-polynomial arithmetic over prime fields and the integers,
//! dense polynomial matrices, Smith normal form over `F_p[t]`, and
//! fraction-free determinants over `Z[t]`.

#![allow(clippy::needless_range_loop)]

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

/// Coefficient domain of a [`LaurentPoly`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Ring {
    Fp(u32),
    Int,
}

/// A finitely supported map exponent → coefficient.
///
/// Over `Fp(p)` coefficients are stored as canonical residues `0..p`.
/// Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentPoly {
    ring: Ring,
    coeffs: BTreeMap<i64, i64>,
}

impl LaurentPoly {
    pub fn zero(ring: Ring) -> LaurentPoly {
        LaurentPoly { ring, coeffs: BTreeMap::new() }
    }

    pub fn constant(ring: Ring, c: i64) -> LaurentPoly {
        LaurentPoly::monomial(ring, 0, c)
    }

    pub fn one(ring: Ring) -> LaurentPoly {
        LaurentPoly::constant(ring, 1)
    }

    pub fn monomial(ring: Ring, exp: i64, coeff: i64) -> LaurentPoly {
        let mut p = LaurentPoly::zero(ring);
        p.add_coeff(exp, coeff);
        p
    }

    /// Builds `sum coeffs[i] * t^(min_exp + i)`.
    pub fn from_coeff_slice(ring: Ring, min_exp: i64, coeffs: &[i64]) -> LaurentPoly {
        let mut p = LaurentPoly::zero(ring);
        for (i, &c) in coeffs.iter().enumerate() {
            p.add_coeff(min_exp + i as i64, c);
        }
        p
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    fn reduce(&self, c: i64) -> i64 {
        match self.ring {
            Ring::Fp(p) => c.rem_euclid(p as i64),
            Ring::Int => c,
        }
    }

    pub fn add_coeff(&mut self, exp: i64, coeff: i64) {
        let coeff = self.reduce(coeff);
        if coeff == 0 {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.coeffs.entry(exp) {
            Entry::Occupied(mut e) => {
                let v = self.ring;
                let sum = match v {
                    Ring::Fp(p) => (*e.get() + coeff).rem_euclid(p as i64),
                    Ring::Int => *e.get() + coeff,
                };
                if sum == 0 {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
            Entry::Vacant(v) => {
                v.insert(coeff);
            }
        }
    }

    pub fn coeff(&self, exp: i64) -> i64 {
        self.coeffs.get(&exp).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, i64)> + '_ {
        self.coeffs.iter().map(|(&e, &c)| (e, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    /// Degree as max exponent minus min exponent; `None` stands for −∞.
    pub fn degree(&self) -> Option<i64> {
        Some(self.max_exp()? - self.min_exp()?)
    }

    fn assert_same_ring(&self, other: &LaurentPoly) {
        assert_eq!(self.ring, other.ring, "mixed coefficient rings");
    }

    pub fn add(&self, other: &LaurentPoly) -> LaurentPoly {
        self.assert_same_ring(other);
        let mut out = self.clone();
        for (e, c) in other.iter() {
            out.add_coeff(e, c);
        }
        out
    }

    pub fn sub(&self, other: &LaurentPoly) -> LaurentPoly {
        self.assert_same_ring(other);
        let mut out = self.clone();
        for (e, c) in other.iter() {
            out.add_coeff(e, -c);
        }
        out
    }

    pub fn neg(&self) -> LaurentPoly {
        LaurentPoly::zero(self.ring).sub(self)
    }

    pub fn mul(&self, other: &LaurentPoly) -> LaurentPoly {
        self.assert_same_ring(other);
        let mut out = LaurentPoly::zero(self.ring);
        for (e1, c1) in self.iter() {
            for (e2, c2) in other.iter() {
                out.add_coeff(e1 + e2, c1 * c2);
            }
        }
        out
    }

    pub fn scale(&self, c: i64) -> LaurentPoly {
        let mut out = LaurentPoly::zero(self.ring);
        for (e, v) in self.iter() {
            out.add_coeff(e, v * c);
        }
        out
    }

    /// Multiplication by the unit `t^k`.
    pub fn shift(&self, k: i64) -> LaurentPoly {
        LaurentPoly { ring: self.ring, coeffs: self.coeffs.iter().map(|(&e, &c)| (e + k, c)).collect() }
    }

    /// Substitutes `t ↦ t⁻¹`.
    pub fn reciprocal(&self) -> LaurentPoly {
        LaurentPoly { ring: self.ring, coeffs: self.coeffs.iter().map(|(&e, &c)| (-e, c)).collect() }
    }

    /// Canonical representative of the unit orbit.
    ///
    /// Zero stays zero. Otherwise exponents are shifted so the minimal one
    /// is 0; over `F_p` the lowest coefficient is scaled to 1, over the
    /// integers the sign is flipped so the top coefficient is positive.
    pub fn normalize(&self) -> LaurentPoly {
        let Some(min) = self.min_exp() else { return self.clone() };
        let shifted = self.shift(-min);
        match self.ring {
            Ring::Fp(p) => {
                let low = shifted.coeff(0);
                shifted.scale(mod_inverse(low, p as i64))
            }
            Ring::Int => {
                if shifted.coeff(shifted.max_exp().unwrap()) < 0 {
                    shifted.neg()
                } else {
                    shifted
                }
            }
        }
    }

    /// True when the canonical form has top coefficient 1.
    pub fn is_monic(&self) -> bool {
        let n = self.normalize();
        match n.max_exp() {
            Some(e) => n.coeff(e) == 1,
            None => false,
        }
    }

    /// Exact evaluation at an integer point (integer ring only).
    pub fn eval_int(&self, x: i64) -> i64 {
        assert_eq!(self.ring, Ring::Int);
        let min = self.min_exp().unwrap_or(0);
        assert!(min >= 0, "Laurent part in integer evaluation");
        let mut acc = 0i64;
        if let Some(max) = self.max_exp() {
            for e in (0..=max).rev() {
                acc = acc * x + self.coeff(e);
            }
        }
        acc
    }

    /// Serialized form used in reports.
    pub fn serialized(&self) -> PolySerial {
        match self.min_exp() {
            None => PolySerial { min_exp: 0, coeffs: vec![] },
            Some(min) => {
                let max = self.max_exp().unwrap();
                PolySerial {
                    min_exp: min,
                    coeffs: (min..=max).map(|e| self.coeff(e)).collect(),
                }
            }
        }
    }
}

/// Report-facing polynomial encoding: coefficients in ascending exponent
/// order starting at `min_exp`; the zero polynomial is `{0, []}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolySerial {
    pub min_exp: i64,
    pub coeffs: Vec<i64>,
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            match e {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}*t")?,
                _ => write!(f, "{c}*t^{e}")?,
            }
        }
        Ok(())
    }
}

fn mod_inverse(a: i64, p: i64) -> i64 {
    // p is prime and a != 0 mod p
    let mut result = 1i64;
    let mut base = a.rem_euclid(p);
    let mut exp = p - 2;
    while exp > 0 {
        if exp & 1 == 1 {
            result = result * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    result
}

/// Dense matrix of Laurent polynomials sharing one coefficient ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMatrix {
    pub rows: usize,
    pub cols: usize,
    ring: Ring,
    entries: Vec<LaurentPoly>,
}

impl PolyMatrix {
    pub fn zero(ring: Ring, rows: usize, cols: usize) -> PolyMatrix {
        PolyMatrix { rows, cols, ring, entries: vec![LaurentPoly::zero(ring); rows * cols] }
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn at(&self, r: usize, c: usize) -> &LaurentPoly {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, p: LaurentPoly) {
        assert_eq!(p.ring(), self.ring, "mixed coefficient rings");
        self.entries[r * self.cols + c] = p;
    }

    pub fn mul(&self, other: &PolyMatrix) -> PolyMatrix {
        assert_eq!(self.cols, other.rows);
        let mut out = PolyMatrix::zero(self.ring, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.at(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let cur = out.at(i, j).add(&a.mul(b));
                    out.set(i, j, cur);
                }
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    /// Drops the block of `width` columns starting at `col`.
    pub fn delete_columns(&self, col: usize, width: usize) -> PolyMatrix {
        let mut out = PolyMatrix::zero(self.ring, self.rows, self.cols - width);
        for r in 0..self.rows {
            let mut cc = 0;
            for c in 0..self.cols {
                if c >= col && c < col + width {
                    continue;
                }
                out.set(r, cc, self.at(r, c).clone());
                cc += 1;
            }
        }
        out
    }
}

/// Rank and divisibility chain of elementary divisors over `F_p[t]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SnfResult {
    pub rank: usize,
    pub divisors: Vec<LaurentPoly>,
    pub ring: Ring,
}

impl SnfResult {
    /// Product of the (nonzero) elementary divisors, normalized.
    pub fn divisor_product(&self) -> LaurentPoly {
        let mut acc = LaurentPoly::one(self.ring);
        for d in &self.divisors {
            acc = acc.mul(d);
        }
        acc.normalize()
    }
}

// Dense F_p[t] polynomials as coefficient vectors, used only inside the
// Smith reduction. Invariant: no trailing zeros.
type Dense = Vec<i64>;

fn dense_trim(v: &mut Dense) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn dense_deg(v: &Dense) -> Option<usize> {
    if v.is_empty() {
        None
    } else {
        Some(v.len() - 1)
    }
}

fn dense_add_scaled_shifted(target: &mut Dense, src: &Dense, c: i64, shift: usize, p: i64) {
    if c == 0 || src.is_empty() {
        return;
    }
    if target.len() < src.len() + shift {
        target.resize(src.len() + shift, 0);
    }
    for (i, &s) in src.iter().enumerate() {
        target[i + shift] = (target[i + shift] + c * s).rem_euclid(p);
    }
    dense_trim(target);
}

/// In-place `a -= q*b` where `q = a div b`; returns the quotient.
fn dense_reduce(a: &mut Dense, b: &Dense, p: i64) -> Dense {
    let db = dense_deg(b).expect("division by zero polynomial");
    let lead_inv = mod_inverse(b[db], p);
    let mut q: Dense = Vec::new();
    while let Some(da) = dense_deg(a) {
        if da < db {
            break;
        }
        let shift = da - db;
        let c = a[da] * lead_inv % p;
        if q.len() <= shift {
            q.resize(shift + 1, 0);
        }
        q[shift] = c;
        dense_add_scaled_shifted(a, b, -c, shift, p);
    }
    dense_trim(&mut q);
    q
}

fn dense_rem(a: &Dense, b: &Dense, p: i64) -> Dense {
    let mut r = a.clone();
    dense_reduce(&mut r, b, p);
    r
}

/// Divisibility `f | g` in `F_p[t^{±1}]` (units `c·t^k` quotiented out).
pub fn divides_laurent(f: &LaurentPoly, g: &LaurentPoly) -> bool {
    assert_eq!(f.ring(), g.ring(), "ring mismatch");
    let Ring::Fp(p) = f.ring() else { panic!("divides_laurent needs a prime field") };
    if g.is_zero() {
        return true;
    }
    if f.is_zero() {
        return false;
    }
    let fd = laurent_to_dense(&f.normalize(), 0);
    let gd = laurent_to_dense(&g.normalize(), 0);
    dense_deg(&dense_rem(&gd, &fd, p as i64)).is_none()
}

fn laurent_to_dense(l: &LaurentPoly, shift: i64) -> Dense {
    let mut v = Dense::new();
    for (e, c) in l.iter() {
        let idx = usize::try_from(e + shift).expect("column shift missed a Laurent exponent");
        if v.len() <= idx {
            v.resize(idx + 1, 0);
        }
        v[idx] = c;
    }
    v
}

fn dense_to_laurent(v: &Dense, p: u32) -> LaurentPoly {
    LaurentPoly::from_coeff_slice(Ring::Fp(p), 0, v)
}

/// Columnwise unit shift to land in F_p[t]; only negative exponents are
/// cleared so t-content inside F_p[t] is kept.
fn matrix_to_dense(m: &PolyMatrix) -> Vec<Vec<Dense>> {
    let mut col_shift = vec![0i64; m.cols];
    for c in 0..m.cols {
        let min = (0..m.rows).filter_map(|r| m.at(r, c).min_exp()).min().unwrap_or(0);
        col_shift[c] = (-min).max(0);
    }
    let mut a: Vec<Vec<Dense>> = Vec::with_capacity(m.rows);
    for r in 0..m.rows {
        let mut row = Vec::with_capacity(m.cols);
        for c in 0..m.cols {
            row.push(laurent_to_dense(m.at(r, c), col_shift[c]));
        }
        a.push(row);
    }
    a
}

/// Smith normal form over `F_p[t]`.
///
/// Laurent exponents are cleared columnwise first (`t^k` is a unit). Pivots
/// are chosen by minimal degree with leftmost tie-break; the result is the
/// monic divisibility chain `d_1 | d_2 | …` of length `rank`.
pub fn smith_normal_form(m: &PolyMatrix) -> SnfResult {
    let Ring::Fp(p) = m.ring() else { panic!("smith_normal_form needs a prime field") };
    let mut a = matrix_to_dense(m);
    let divisors: Vec<LaurentPoly> =
        snf_dense(&mut a, p as i64, None).iter().map(|d| dense_to_laurent(d, p)).collect();
    SnfResult { rank: divisors.len(), divisors, ring: m.ring() }
}

/// Smith elimination on a dense matrix, returning the monic diagonal chain.
///
/// With a modulus every entry is kept reduced modulo it throughout, which
/// bounds all intermediate degrees; the elimination then happens over the
/// principal ideal ring `F_p[t]/(modulus)` and the caller is responsible for
/// interpreting the diagonal there (see `determinantal_divisor`).
fn snf_dense(a: &mut [Vec<Dense>], pi: i64, modulus: Option<&Dense>) -> Vec<Dense> {
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    if let Some(md) = modulus {
        for row in a.iter_mut() {
            for e in row.iter_mut() {
                dense_reduce(e, md, pi);
            }
        }
    }
    let mut divisors: Vec<Dense> = Vec::new();
    let mut top = 0usize;
    'outer: while top < rows && top < cols {
        // pivot: minimal degree, leftmost column then topmost row
        let mut best: Option<(usize, usize, usize)> = None;
        for c in top..cols {
            for r in top..rows {
                if let Some(d) = dense_deg(&a[r][c]) {
                    if best.is_none_or(|(bd, _, _)| d < bd) {
                        best = Some((d, r, c));
                    }
                }
            }
        }
        let Some((_, pr, pc)) = best else { break };
        a.swap(top, pr);
        for row in a.iter_mut() {
            row.swap(top, pc);
        }

        loop {
            let mut moved = false;
            for r in top + 1..rows {
                if a[r][top].is_empty() {
                    continue;
                }
                let pivot = a[top][top].clone();
                let q = dense_reduce(&mut { a[r][top].clone() }, &pivot, pi);
                // apply the full row operation row_r -= q * row_top
                let q_owned = q;
                for c in top..cols {
                    let piv_row_entry = a[top][c].clone();
                    let target = &mut a[r][c];
                    for (shift, &qc) in q_owned.iter().enumerate() {
                        dense_add_scaled_shifted(target, &piv_row_entry, -qc, shift, pi);
                    }
                    if let Some(md) = modulus {
                        dense_reduce(target, md, pi);
                    }
                }
                if !a[r][top].is_empty() {
                    a.swap(top, r);
                    moved = true;
                }
            }
            for c in top + 1..cols {
                if a[top][c].is_empty() {
                    continue;
                }
                let pivot = a[top][top].clone();
                let q = dense_reduce(&mut { a[top][c].clone() }, &pivot, pi);
                for r in top..rows {
                    let piv_col_entry = a[r][top].clone();
                    let target = &mut a[r][c];
                    for (shift, &qc) in q.iter().enumerate() {
                        dense_add_scaled_shifted(target, &piv_col_entry, -qc, shift, pi);
                    }
                    if let Some(md) = modulus {
                        dense_reduce(target, md, pi);
                    }
                }
                if !a[top][c].is_empty() {
                    for row in a.iter_mut() {
                        row.swap(top, c);
                    }
                    moved = true;
                }
            }
            if !moved {
                break;
            }
        }

        // divisibility fixup: pivot must divide the rest of the submatrix
        for r in top + 1..rows {
            for c in top + 1..cols {
                if !a[r][c].is_empty() && !dense_rem(&a[r][c], &a[top][top], pi).is_empty() {
                    let row = a[r].clone();
                    for cc in top..cols {
                        let add = row[cc].clone();
                        dense_add_scaled_shifted(&mut a[top][cc], &add, 1, 0, pi);
                        if let Some(md) = modulus {
                            dense_reduce(&mut a[top][cc], md, pi);
                        }
                    }
                    continue 'outer;
                }
            }
        }

        // monic normalization
        let d = a[top][top].clone();
        let lead_inv = mod_inverse(*d.last().unwrap(), pi);
        let monic: Dense = d.iter().map(|&c| c * lead_inv % pi).collect();
        divisors.push(monic);
        top += 1;
    }
    divisors
}

fn dense_mul(a: &Dense, b: &Dense, p: i64) -> Dense {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0i64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    dense_trim(&mut out);
    out
}

fn dense_monic(mut v: Dense, p: i64) -> Dense {
    if let Some(d) = dense_deg(&v) {
        let inv = mod_inverse(v[d], p);
        for c in v.iter_mut() {
            *c = *c * inv % p;
        }
    }
    v
}

fn dense_gcd(a: &Dense, b: &Dense, p: i64) -> Dense {
    let (mut r0, mut r1) = (a.clone(), b.clone());
    while !r1.is_empty() {
        let r2 = dense_rem(&r0, &r1, p);
        r0 = r1;
        r1 = r2;
    }
    dense_monic(r0, p)
}

/// Returns `(g, u)` with `u·a ≡ g (mod b)` and `g = gcd(a, b)` up to a unit.
fn dense_ext_gcd(a: &Dense, b: &Dense, p: i64) -> (Dense, Dense) {
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut u0, mut u1): (Dense, Dense) = (vec![1], Vec::new());
    while !r1.is_empty() {
        let mut rem = r0.clone();
        let q = dense_reduce(&mut rem, &r1, p);
        let mut u2 = u0.clone();
        for (shift, &qc) in q.iter().enumerate() {
            dense_add_scaled_shifted(&mut u2, &u1, -qc, shift, p);
        }
        r0 = r1;
        r1 = rem;
        u0 = u1;
        u1 = u2;
    }
    (r0, u0)
}

fn dense_mulmod(a: &Dense, b: &Dense, f: &Dense, p: i64) -> Dense {
    let mut t = dense_mul(a, b, p);
    dense_reduce(&mut t, f, p);
    t
}

fn dense_powmod(base: &Dense, mut e: u64, f: &Dense, p: i64) -> Dense {
    let mut result = dense_rem(&vec![1], f, p);
    let mut b = dense_rem(base, f, p);
    while e > 0 {
        if e & 1 == 1 {
            result = dense_mulmod(&result, &b, f, p);
        }
        b = dense_mulmod(&b, &b, f, p);
        e >>= 1;
    }
    result
}

fn prime_divisors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

// f monic of degree k is irreducible iff x^(p^k) ≡ x (mod f) while
// x^(p^(k/q)) - x stays coprime to f for every prime q | k
fn dense_is_irreducible(f: &Dense, p: i64) -> bool {
    let k = match dense_deg(f) {
        Some(k) if k >= 1 => k,
        _ => return false,
    };
    let xm = dense_rem(&vec![0, 1], f, p);
    let mut frobs = vec![xm.clone()];
    for _ in 0..k {
        frobs.push(dense_powmod(frobs.last().unwrap(), p as u64, f, p));
    }
    if frobs[k] != xm {
        return false;
    }
    for q in prime_divisors(k) {
        let mut h = frobs[k / q].clone();
        dense_add_scaled_shifted(&mut h, &xm, -1, 0, p);
        if dense_deg(&dense_gcd(&h, f, p)) != Some(0) {
            return false;
        }
    }
    true
}

fn find_irreducible(p: i64, k: usize) -> Dense {
    let mut code = 0u64;
    loop {
        let mut f = vec![0i64; k + 1];
        f[k] = 1;
        let mut c = code;
        let mut i = 0;
        while c > 0 {
            f[i] = (c % p as u64) as i64;
            c /= p as u64;
            i += 1;
        }
        assert!(i <= k, "irreducible search exhausted");
        if dense_is_irreducible(&f, p) {
            return f;
        }
        code += 1;
    }
}

/// The field `F_{p^k}`, elements stored as dense residues mod an irreducible.
struct Gf {
    p: i64,
    modulus: Dense,
}

impl Gf {
    /// Smallest extension of `F_p` holding at least `n` elements.
    fn with_points(p: i64, n: u64) -> Gf {
        let mut k = 1usize;
        let mut size = p as u64;
        while size < n {
            k += 1;
            size = size.saturating_mul(p as u64);
        }
        Gf { p, modulus: find_irreducible(p, k) }
    }

    /// Element numbered by base-p digits; distinct codes below `p^k` give
    /// distinct elements, code 0 is zero.
    fn element(&self, code: u64) -> Dense {
        let mut v = Vec::new();
        let mut c = code;
        while c > 0 {
            v.push((c % self.p as u64) as i64);
            c /= self.p as u64;
        }
        v
    }

    fn add(&self, a: &Dense, b: &Dense) -> Dense {
        let mut out = a.clone();
        dense_add_scaled_shifted(&mut out, b, 1, 0, self.p);
        out
    }

    fn sub(&self, a: &Dense, b: &Dense) -> Dense {
        let mut out = a.clone();
        dense_add_scaled_shifted(&mut out, b, -1, 0, self.p);
        out
    }

    fn mul(&self, a: &Dense, b: &Dense) -> Dense {
        dense_mulmod(a, b, &self.modulus, self.p)
    }

    fn inv(&self, a: &Dense) -> Dense {
        let (g, u) = dense_ext_gcd(a, &self.modulus, self.p);
        let gd = dense_deg(&g).expect("inverse of zero field element");
        assert_eq!(gd, 0, "modulus is not irreducible");
        let scale = mod_inverse(g[0], self.p);
        let mut out: Dense = u.iter().map(|&c| c * scale % self.p).collect();
        dense_reduce(&mut out, &self.modulus, self.p);
        out
    }
}

fn gf_eval_dense(poly: &Dense, alpha: &Dense, gf: &Gf) -> Dense {
    let mut acc: Dense = Vec::new();
    for &c in poly.iter().rev() {
        acc = gf.mul(&acc, alpha);
        if c != 0 {
            if acc.is_empty() {
                acc.push(0);
            }
            acc[0] = (acc[0] + c).rem_euclid(gf.p);
            dense_trim(&mut acc);
        }
    }
    acc
}

fn gf_eval_matrix(a: &[Vec<Dense>], alpha: &Dense, gf: &Gf) -> Vec<Vec<Dense>> {
    a.iter().map(|row| row.iter().map(|e| gf_eval_dense(e, alpha, gf)).collect()).collect()
}

/// Row echelon over the field; returns the rank together with the pivot rows
/// and columns, which index a submatrix that is nonsingular at this point.
fn gf_rank_with_pivots(mut m: Vec<Vec<Dense>>, gf: &Gf) -> (usize, Vec<usize>, Vec<usize>) {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut pivot_rows = Vec::new();
    let mut pivot_cols = Vec::new();
    let mut used = vec![false; rows];
    for c in 0..cols {
        let Some(r) = (0..rows).find(|&r| !used[r] && !m[r][c].is_empty()) else { continue };
        used[r] = true;
        pivot_rows.push(r);
        pivot_cols.push(c);
        let inv = gf.inv(&m[r][c]);
        for rr in 0..rows {
            if used[rr] || m[rr][c].is_empty() {
                continue;
            }
            let f = gf.mul(&m[rr][c], &inv);
            for cc in c..cols {
                let t = gf.mul(&f, &m[r][cc]);
                m[rr][cc] = gf.sub(&m[rr][cc], &t);
            }
        }
    }
    (pivot_rows.len(), pivot_rows, pivot_cols)
}

fn gf_det(mut m: Vec<Vec<Dense>>, gf: &Gf) -> Dense {
    let n = m.len();
    let mut det: Dense = vec![1];
    let mut neg = false;
    for c in 0..n {
        let Some(r) = (c..n).find(|&r| !m[r][c].is_empty()) else { return Vec::new() };
        if r != c {
            m.swap(r, c);
            neg = !neg;
        }
        let inv = gf.inv(&m[c][c]);
        for rr in c + 1..n {
            if m[rr][c].is_empty() {
                continue;
            }
            let f = gf.mul(&m[rr][c], &inv);
            for cc in c..n {
                let t = gf.mul(&f, &m[c][cc]);
                m[rr][cc] = gf.sub(&m[rr][cc], &t);
            }
        }
        det = gf.mul(&det, &m[c][c]);
    }
    if neg {
        for c in det.iter_mut() {
            *c = (gf.p - *c) % gf.p;
        }
    }
    det
}

/// Lagrange interpolation through distinct points, coefficients in the field.
fn gf_lagrange(points: &[(Dense, Dense)], gf: &Gf) -> Vec<Dense> {
    let n = points.len();
    let mut big: Vec<Dense> = vec![vec![1]];
    for (x, _) in points {
        let mut next: Vec<Dense> = vec![Vec::new(); big.len() + 1];
        for (i, c) in big.iter().enumerate() {
            next[i + 1] = gf.add(&next[i + 1], c);
            let t = gf.mul(c, x);
            next[i] = gf.sub(&next[i], &t);
        }
        big = next;
    }
    let mut acc: Vec<Dense> = vec![Vec::new(); n];
    for (x, y) in points {
        // q = big / (X - x) by synthetic division, denom = q(x)
        let mut q: Vec<Dense> = vec![Vec::new(); n];
        let mut carry: Dense = Vec::new();
        for i in (0..n).rev() {
            carry = gf.add(&big[i + 1], &gf.mul(&carry, x));
            q[i] = carry.clone();
        }
        let mut denom: Dense = Vec::new();
        for c in q.iter().rev() {
            denom = gf.add(&gf.mul(&denom, x), c);
        }
        let scale = gf.mul(y, &gf.inv(&denom));
        for i in 0..n {
            let t = gf.mul(&scale, &q[i]);
            acc[i] = gf.add(&acc[i], &t);
        }
    }
    acc
}

/// Sum of the `k` largest per-row degree maxima: a bound on the degree of
/// any k×k minor.
fn minor_degree_bound(a: &[Vec<Dense>], k: usize) -> usize {
    let mut degs: Vec<usize> =
        a.iter().map(|row| row.iter().filter_map(dense_deg).max().unwrap_or(0)).collect();
    degs.sort_unstable_by(|x, y| y.cmp(x));
    degs.iter().take(k).sum()
}

/// Exact determinant of the selected square submatrix by evaluation at
/// enough field points and interpolation.
fn det_interpolated(a: &[Vec<Dense>], rows_sel: &[usize], cols_sel: &[usize], p: i64) -> Dense {
    let bound: usize = rows_sel
        .iter()
        .map(|&r| cols_sel.iter().filter_map(|&c| dense_deg(&a[r][c])).max().unwrap_or(0))
        .sum();
    let gf = Gf::with_points(p, bound as u64 + 2);
    let mut points = Vec::with_capacity(bound + 1);
    for code in 1..=(bound as u64 + 1) {
        let alpha = gf.element(code);
        let sub: Vec<Vec<Dense>> = rows_sel
            .iter()
            .map(|&r| cols_sel.iter().map(|&c| gf_eval_dense(&a[r][c], &alpha, &gf)).collect())
            .collect();
        let d = gf_det(sub, &gf);
        points.push((alpha, d));
    }
    let coeffs = gf_lagrange(&points, &gf);
    let mut out = Vec::with_capacity(coeffs.len());
    for c in &coeffs {
        assert!(c.len() <= 1, "interpolated determinant left the prime field");
        out.push(c.first().copied().unwrap_or(0));
    }
    dense_trim(&mut out);
    out
}

/// Exact rank over the fraction field of `F_p[t]`.
///
/// The rank is the maximum of the evaluated ranks over `D+1` distinct
/// nonzero points of a large enough extension field, where `D` bounds the
/// degree of any maximal minor: some minor of the true rank is a nonzero
/// polynomial with at most `D` roots. An a-priori `upper_bound` lets the
/// scan stop as soon as it is attained.
pub fn rank_laurent(m: &PolyMatrix, upper_bound: Option<usize>) -> usize {
    let Ring::Fp(p) = m.ring() else { panic!("rank_laurent needs a prime field") };
    let pi = p as i64;
    let ub = upper_bound.unwrap_or(usize::MAX).min(m.rows).min(m.cols);
    if ub == 0 {
        return 0;
    }
    let a = matrix_to_dense(m);
    let bound = minor_degree_bound(&a, ub);
    let gf = Gf::with_points(pi, bound as u64 + 2);
    let mut best = 0;
    for code in 1..=(bound as u64 + 1) {
        let alpha = gf.element(code);
        let (r, _, _) = gf_rank_with_pivots(gf_eval_matrix(&a, &alpha, &gf), &gf);
        debug_assert!(r <= ub, "rank exceeds the caller's bound");
        best = best.max(r);
        if best >= ub {
            return best;
        }
    }
    best
}

/// The `rank`-th determinantal divisor: gcd of all rank×rank minors, equal
/// to the product of the elementary divisors; normalized. `rank` must be
/// the exact rank of `m`.
///
/// A nonsingular maximal submatrix is located by evaluation and its
/// determinant `d` interpolated exactly; every elementary divisor divides
/// `d`, so the Smith elimination can run on the matrix modulo `d` over the
/// principal ideal ring `F_p[t]/(d)` with all degrees bounded by `deg d`.
/// The true divisors are `gcd(diagonal, d)`, and each diagonal slot lost to
/// reduction (a zero residue) stands for a divisor equal to `d` itself.
pub fn determinantal_divisor(m: &PolyMatrix, rank: usize) -> LaurentPoly {
    let Ring::Fp(p) = m.ring() else { panic!("determinantal_divisor needs a prime field") };
    let pi = p as i64;
    if rank == 0 {
        return LaurentPoly::one(m.ring());
    }
    assert!(rank <= m.rows.min(m.cols), "rank exceeds matrix dimensions");
    let a = matrix_to_dense(m);
    let bound = minor_degree_bound(&a, rank);
    let gf = Gf::with_points(pi, bound as u64 + 2);
    // a few distinct nonsingular submatrices: their det gcd is a tighter
    // multiple of the answer, which shrinks the modular elimination below
    let mut shapes: Vec<(Vec<usize>, Vec<usize>)> = Vec::new();
    let mut first_hit = None;
    for code in 1..=(bound as u64 + 1) {
        let alpha = gf.element(code);
        let (r, pr, pc) = gf_rank_with_pivots(gf_eval_matrix(&a, &alpha, &gf), &gf);
        if r == rank {
            first_hit.get_or_insert(code);
            let shape = (pr, pc);
            if !shapes.contains(&shape) {
                shapes.push(shape);
            }
        }
        if shapes.len() >= 3 || first_hit.is_some_and(|h| code >= h + 16) {
            break;
        }
    }
    assert!(!shapes.is_empty(), "rank is not attained by any evaluation");
    let mut d: Dense = Vec::new();
    for (pr, pc) in &shapes {
        let minor = det_interpolated(&a, pr, pc, pi);
        d = dense_gcd(&d, &minor, pi);
        if dense_deg(&d) == Some(0) {
            return LaurentPoly::one(m.ring());
        }
    }
    let mut residues = a;
    let diag = snf_dense(&mut residues, pi, Some(&d));
    let mut acc: Dense = vec![1];
    for dv in diag.iter().take(rank) {
        acc = dense_mul(&acc, &dense_gcd(dv, &d, pi), pi);
    }
    for _ in diag.len()..rank {
        acc = dense_mul(&acc, &d, pi);
    }
    dense_to_laurent(&acc, p).normalize()
}

/// Exact determinant over `Z[t^±1]` by fraction-free (Bareiss) elimination,
/// result normalized. Intermediate coefficients are carried in 128 bits.
pub fn det_int_poly(m: &PolyMatrix) -> LaurentPoly {
    assert_eq!(m.rows, m.cols, "determinant of a non-square matrix");
    assert_eq!(m.ring(), Ring::Int);
    let n = m.rows;
    if n == 0 {
        return LaurentPoly::one(Ring::Int);
    }
    // clear Laurent exponents columnwise; t^k factors are units dropped by
    // the final normalization
    let mut a: Vec<Vec<IPoly>> = Vec::with_capacity(n);
    for r in 0..n {
        let mut row = Vec::with_capacity(n);
        for c in 0..n {
            let min = (0..n).filter_map(|rr| m.at(rr, c).min_exp()).min().unwrap_or(0);
            row.push(ipoly_from(m.at(r, c), -min));
        }
        a.push(row);
    }
    let mut sign = 1i64;
    let mut prev: IPoly = vec![1];
    for k in 0..n - 1 {
        if a[k][k].is_empty() {
            let Some(swap) = (k + 1..n).find(|&r| !a[r][k].is_empty()) else {
                return LaurentPoly::zero(Ring::Int);
            };
            a.swap(k, swap);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t1 = ipoly_mul(&a[k][k], &a[i][j]);
                let t2 = ipoly_mul(&a[i][k], &a[k][j]);
                let num = ipoly_sub(&t1, &t2);
                a[i][j] = ipoly_div_exact(&num, &prev);
            }
        }
        for i in k + 1..n {
            a[i][k] = Vec::new();
        }
        prev = a[k][k].clone();
    }
    let det = &a[n - 1][n - 1];
    let mut out = LaurentPoly::zero(Ring::Int);
    for (e, &c) in det.iter().enumerate() {
        out.add_coeff(e as i64, i64::try_from(c * sign as i128).expect("determinant overflow"));
    }
    out.normalize()
}

type IPoly = Vec<i128>;

fn ipoly_from(l: &LaurentPoly, shift: i64) -> IPoly {
    let mut v: IPoly = Vec::new();
    for (e, c) in l.iter() {
        let idx = usize::try_from(e + shift).expect("negative exponent after column shift");
        if v.len() <= idx {
            v.resize(idx + 1, 0);
        }
        v[idx] = c as i128;
    }
    v
}

fn ipoly_trim(v: &mut IPoly) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn ipoly_mul(a: &IPoly, b: &IPoly) -> IPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0i128; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    ipoly_trim(&mut out);
    out
}

fn ipoly_sub(a: &IPoly, b: &IPoly) -> IPoly {
    let mut out = a.clone();
    if out.len() < b.len() {
        out.resize(b.len(), 0);
    }
    for (i, &y) in b.iter().enumerate() {
        out[i] -= y;
    }
    ipoly_trim(&mut out);
    out
}

// Exact division, panics on nonzero remainder (guaranteed by Bareiss).
fn ipoly_div_exact(num: &IPoly, den: &IPoly) -> IPoly {
    if num.is_empty() {
        return Vec::new();
    }
    let dd = den.len() - 1;
    let lead = den[dd];
    let mut rem = num.clone();
    let mut q = vec![0i128; num.len() - dd];
    for qi in (0..q.len()).rev() {
        let c = rem[qi + dd] / lead;
        debug_assert_eq!(rem[qi + dd] % lead, 0, "inexact Bareiss division");
        q[qi] = c;
        if c != 0 {
            for (j, &d) in den.iter().enumerate() {
                rem[qi + j] -= c * d;
            }
        }
    }
    ipoly_trim(&mut rem);
    assert!(rem.is_empty(), "inexact Bareiss division");
    ipoly_trim(&mut q);
    q
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn fp(p: u32, min: i64, coeffs: &[i64]) -> LaurentPoly {
        LaurentPoly::from_coeff_slice(Ring::Fp(p), min, coeffs)
    }

    fn zp(min: i64, coeffs: &[i64]) -> LaurentPoly {
        LaurentPoly::from_coeff_slice(Ring::Int, min, coeffs)
    }

    #[test]
    fn normalize_units_over_f7() {
        // 3t^-2 + 3t^-1 -> 1 + t
        let p = fp(7, -2, &[3, 3]);
        assert_eq!(p.normalize(), fp(7, 0, &[1, 1]));
        assert_eq!(LaurentPoly::zero(Ring::Fp(7)).normalize(), LaurentPoly::zero(Ring::Fp(7)));
    }

    #[test]
    fn normalize_sign_over_int() {
        // -t^3 + 3t^2 - t -> t^2 - 3t + 1
        let p = zp(1, &[-1, 3, -1]);
        assert_eq!(p.normalize(), zp(0, &[1, -3, 1]));
    }

    #[test]
    fn degree_is_exponent_spread() {
        assert_eq!(zp(0, &[1, -3, 1]).degree(), Some(2));
        assert_eq!(zp(5, &[4]).degree(), Some(0));
        assert_eq!(LaurentPoly::zero(Ring::Int).degree(), None);
    }

    #[test]
    fn snf_of_diagonal_is_identity_on_chains() {
        let mut m = PolyMatrix::zero(Ring::Fp(5), 2, 2);
        m.set(0, 0, fp(5, 0, &[-1, 1]));
        m.set(1, 1, fp(5, 0, &[-1, 0, 1]));
        let snf = smith_normal_form(&m);
        assert_eq!(snf.rank, 2);
        // d0 = t-1 monic, d1 = t^2-1 monic
        assert_eq!(snf.divisors[0], fp(5, 0, &[-1, 1]));
        assert_eq!(snf.divisors[1], fp(5, 0, &[-1, 0, 1]));
    }

    #[test]
    fn snf_mixes_unit_content() {
        // [[t,1],[0,t]] -> divisors (1, t^2)
        let mut m = PolyMatrix::zero(Ring::Fp(7), 2, 2);
        m.set(0, 0, fp(7, 1, &[1]));
        m.set(0, 1, fp(7, 0, &[1]));
        m.set(1, 1, fp(7, 1, &[1]));
        let snf = smith_normal_form(&m);
        assert_eq!(snf.rank, 2);
        assert_eq!(snf.divisors[0], fp(7, 0, &[1]));
        assert_eq!(snf.divisors[1], fp(7, 0, &[0, 0, 1]));
    }

    #[test]
    fn snf_zero_matrix() {
        let m = PolyMatrix::zero(Ring::Fp(3), 3, 2);
        let snf = smith_normal_form(&m);
        assert_eq!(snf.rank, 0);
        assert!(snf.divisors.is_empty());
    }

    #[test]
    fn det_small_cases() {
        let mut id = PolyMatrix::zero(Ring::Int, 3, 3);
        for i in 0..3 {
            id.set(i, i, LaurentPoly::one(Ring::Int));
        }
        assert_eq!(det_int_poly(&id), LaurentPoly::one(Ring::Int));

        let mut d = PolyMatrix::zero(Ring::Int, 2, 2);
        d.set(0, 0, zp(0, &[-1, 1]));
        d.set(1, 1, zp(0, &[1, 1]));
        assert_eq!(det_int_poly(&d), zp(0, &[-1, 0, 1]));
    }

    fn arb_fp_poly(p: u32, max_deg: i64) -> impl Strategy<Value = LaurentPoly> {
        prop::collection::vec(0..p as i64, 0..=(max_deg as usize + 1))
            .prop_map(move |cs| LaurentPoly::from_coeff_slice(Ring::Fp(p), 0, &cs))
    }

    fn arb_fp_matrix(p: u32, max_dim: usize) -> impl Strategy<Value = PolyMatrix> {
        (1..=max_dim, 1..=max_dim).prop_flat_map(move |(r, c)| {
            prop::collection::vec(arb_fp_poly(p, 4), r * c).prop_map(move |es| {
                let mut m = PolyMatrix::zero(Ring::Fp(p), r, c);
                for (i, e) in es.into_iter().enumerate() {
                    m.set(i / c, i % c, e);
                }
                m
            })
        })
    }

    // unimodular row/column scrambles: products of elementary operations
    fn scramble(m: &PolyMatrix, p: u32, seed: u64) -> PolyMatrix {
        let mut s = seed;
        let mut next = move || {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            (s >> 33) as usize
        };
        let mut out = m.clone();
        for _ in 0..6 {
            let r1 = next() % out.rows;
            let r2 = next() % out.rows;
            if r1 != r2 {
                let f = LaurentPoly::from_coeff_slice(Ring::Fp(p), 0, &[(next() % p as usize) as i64, 1]);
                for c in 0..out.cols {
                    let v = out.at(r2, c).add(&f.mul(out.at(r1, c)));
                    out.set(r2, c, v);
                }
            }
            let c1 = next() % out.cols;
            let c2 = next() % out.cols;
            if c1 != c2 {
                let f = LaurentPoly::from_coeff_slice(Ring::Fp(p), 0, &[(next() % p as usize) as i64]);
                for r in 0..out.rows {
                    let v = out.at(r, c2).add(&f.mul(out.at(r, c1)));
                    out.set(r, c2, v);
                }
            }
        }
        out
    }

    fn poly_divides(d: &LaurentPoly, n: &LaurentPoly, p: i64) -> bool {
        let dd = laurent_to_dense(&d.normalize(), 0);
        let nn = laurent_to_dense(&n.normalize(), 0);
        dense_rem(&nn, &dd, p).is_empty()
    }

    #[test]
    fn extension_field_arithmetic() {
        let gf = Gf::with_points(3, 9);
        assert_eq!(dense_deg(&gf.modulus), Some(2));
        for code in 1..9u64 {
            let a = gf.element(code);
            let inv = gf.inv(&a);
            assert_eq!(gf.mul(&a, &inv), vec![1]);
        }
        let (a, b, c) = (gf.element(4), gf.element(7), gf.element(5));
        assert_eq!(gf.mul(&a, &b), gf.mul(&b, &a));
        assert_eq!(gf.mul(&gf.mul(&a, &b), &c), gf.mul(&a, &gf.mul(&b, &c)));
    }

    #[test]
    fn distinct_codes_are_distinct_elements() {
        let gf = Gf::with_points(5, 30);
        let elems: Vec<Dense> = (0..30).map(|c| gf.element(c)).collect();
        for i in 0..elems.len() {
            for j in i + 1..elems.len() {
                assert_ne!(elems[i], elems[j]);
            }
        }
    }

    #[test]
    fn rank_and_divisor_on_unit_content_example() {
        // [[t,1],[0,t]]: rank 2, second determinantal divisor t^2, trivial
        // as a normalized Laurent polynomial
        let mut m = PolyMatrix::zero(Ring::Fp(7), 2, 2);
        m.set(0, 0, fp(7, 1, &[1]));
        m.set(0, 1, fp(7, 0, &[1]));
        m.set(1, 1, fp(7, 1, &[1]));
        assert_eq!(rank_laurent(&m, None), 2);
        assert_eq!(determinantal_divisor(&m, 2), LaurentPoly::one(Ring::Fp(7)));
    }

    #[test]
    fn rank_of_zero_matrix() {
        let m = PolyMatrix::zero(Ring::Fp(5), 4, 3);
        assert_eq!(rank_laurent(&m, None), 0);
        assert_eq!(determinantal_divisor(&m, 0), LaurentPoly::one(Ring::Fp(5)));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]

        #[test]
        fn rank_laurent_matches_snf(m in arb_fp_matrix(5, 5)) {
            let snf = smith_normal_form(&m);
            prop_assert_eq!(rank_laurent(&m, None), snf.rank);
        }

        #[test]
        fn determinantal_divisor_matches_divisor_product(m in arb_fp_matrix(5, 5)) {
            let snf = smith_normal_form(&m);
            let product = snf.divisor_product().normalize();
            prop_assert_eq!(determinantal_divisor(&m, snf.rank), product);
        }

        #[test]
        fn determinantal_divisor_survives_scrambling(m in arb_fp_matrix(3, 4), seed in any::<u64>()) {
            let snf = smith_normal_form(&m);
            let s = scramble(&m, 3, seed);
            prop_assert_eq!(rank_laurent(&s, None), snf.rank);
            prop_assert_eq!(determinantal_divisor(&s, snf.rank), snf.divisor_product().normalize());
        }

        #[test]
        fn snf_divisibility_chain(m in arb_fp_matrix(5, 5)) {
            let snf = smith_normal_form(&m);
            for w in snf.divisors.windows(2) {
                prop_assert!(poly_divides(&w[0], &w[1], 5));
            }
        }

        #[test]
        fn snf_unimodular_invariance(m in arb_fp_matrix(3, 4), seed in any::<u64>()) {
            let snf1 = smith_normal_form(&m);
            let snf2 = smith_normal_form(&scramble(&m, 3, seed));
            prop_assert_eq!(snf1, snf2);
        }

        #[test]
        fn snf_product_matches_det_for_full_rank(m in arb_fp_matrix(7, 4)) {
            prop_assume!(m.rows == m.cols);
            // determinant via integer lift of the same matrix mod 7
            let mut lift = PolyMatrix::zero(Ring::Int, m.rows, m.cols);
            for r in 0..m.rows {
                for c in 0..m.cols {
                    let mut e = LaurentPoly::zero(Ring::Int);
                    for (exp, co) in m.at(r, c).iter() {
                        e.add_coeff(exp, co);
                    }
                    lift.set(r, c, e);
                }
            }
            let det = det_int_poly(&lift);
            let mut det_p = LaurentPoly::zero(Ring::Fp(7));
            for (exp, co) in det.iter() {
                det_p.add_coeff(exp, co);
            }
            let snf = smith_normal_form(&m);
            if snf.rank == m.rows {
                prop_assert_eq!(snf.divisor_product(), det_p.normalize());
            } else {
                prop_assert!(det_p.is_zero());
            }
        }

        #[test]
        fn normalize_constant_on_unit_orbit(cs in prop::collection::vec(0i64..7, 1..6), shift in -5i64..5, unit in 1i64..7) {
            let f = LaurentPoly::from_coeff_slice(Ring::Fp(7), 0, &cs);
            prop_assume!(!f.is_zero());
            let g = f.shift(shift).scale(unit);
            prop_assert_eq!(f.normalize(), g.normalize());
            let n = f.normalize();
            prop_assert_eq!(n.normalize(), n);
        }

        #[test]
        fn det_matches_cofactor_oracle(n in 1usize..=4, cs in prop::collection::vec(prop::collection::vec(-3i64..=3, 1..4), 16)) {
            let mut m = PolyMatrix::zero(Ring::Int, n, n);
            for i in 0..n {
                for j in 0..n {
                    m.set(i, j, LaurentPoly::from_coeff_slice(Ring::Int, 0, &cs[i * 4 + j]));
                }
            }
            prop_assert_eq!(det_int_poly(&m), cofactor_det(&m).normalize());
        }
    }

    fn cofactor_det(m: &PolyMatrix) -> LaurentPoly {
        let n = m.rows;
        if n == 0 {
            return LaurentPoly::one(Ring::Int);
        }
        if n == 1 {
            return m.at(0, 0).clone();
        }
        let mut acc = LaurentPoly::zero(Ring::Int);
        for j in 0..n {
            let mut minor = PolyMatrix::zero(Ring::Int, n - 1, n - 1);
            for r in 1..n {
                let mut cc = 0;
                for c in 0..n {
                    if c == j {
                        continue;
                    }
                    minor.set(r - 1, cc, m.at(r, c).clone());
                    cc += 1;
                }
            }
            let term = m.at(0, j).mul(&cofactor_det(&minor));
            acc = if j % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
        }
        acc
    }
}

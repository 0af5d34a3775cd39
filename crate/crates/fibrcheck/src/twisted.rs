//! Twisted chain complexes of a presentation 2-complex and the order
//! polynomials `Δ_0, Δ_1, Δ_2`, plus the ordinary (untwisted) Alexander
//! polynomial.

use std::collections::HashMap;

use thiserror::Error;

use crate::groups::{GroupHom, Permutation, TargetGroup};
use crate::polymat::{
    det_int_poly, determinantal_divisor, rank_laurent, smith_normal_form, LaurentPoly, PolyMatrix,
    Ring,
};
use crate::words::{fox_derivative, FreeRingElement, Letter, Phi, Presentation, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum RepKind {
    Trivial,
    PermutationNatural,
    Regular,
}

impl RepKind {
    pub fn label(&self) -> &'static str {
        match self {
            RepKind::Trivial => "trivial",
            RepKind::PermutationNatural => "permutation",
            RepKind::Regular => "regular",
        }
    }
}

/// A linear representation of the target group over `F_p`, restricted to the
/// three kinds the degree criteria consume.
#[derive(Clone, Debug)]
pub struct Representation {
    pub kind: RepKind,
    pub dim: usize,
    pub prime: u32,
    /// gcd(p, |G|) = 1; callers gate the permutation criterion on this.
    pub coprime: bool,
    basis: Vec<Permutation>,
    basis_index: HashMap<Vec<usize>, usize>,
}

fn gcd_u64(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd_u64(b, a % b)
    }
}

impl Representation {
    pub fn trivial(prime: u32) -> Representation {
        Representation {
            kind: RepKind::Trivial,
            dim: 1,
            prime,
            coprime: true,
            basis: Vec::new(),
            basis_index: HashMap::new(),
        }
    }

    pub fn permutation_natural(prime: u32, target: TargetGroup) -> Representation {
        Representation {
            kind: RepKind::PermutationNatural,
            dim: target.k,
            prime,
            coprime: gcd_u64(prime as u64, target.order()) == 1,
            basis: Vec::new(),
            basis_index: HashMap::new(),
        }
    }

    pub fn regular(prime: u32, target: TargetGroup) -> Representation {
        let basis = target.elements();
        let basis_index = basis
            .iter()
            .enumerate()
            .map(|(i, g)| (g.images().to_vec(), i))
            .collect();
        Representation {
            kind: RepKind::Regular,
            dim: target.order() as usize,
            prime,
            coprime: gcd_u64(prime as u64, target.order()) == 1,
            basis,
            basis_index,
        }
    }
}

#[derive(Debug, Error)]
pub enum TwistedError {
    #[error("element degree does not match the representation")]
    DegreeMismatch,
    #[error("boundary maps do not compose to zero")]
    ChainConditionViolated,
    #[error("phi vanishes on every generator")]
    TrivialPhi,
    #[error("presentation does not have deficiency one")]
    NotDeficiencyOne,
}

/// Matrix of `(α⊗φ)(g)`: the representation matrix of `g` times
/// `t^{phi_weight}`. Columns index source basis vectors.
pub fn rep_of_element(
    rep: &Representation,
    g: &Permutation,
    phi_weight: i64,
) -> Result<PolyMatrix, TwistedError> {
    let ring = Ring::Fp(rep.prime);
    let t = LaurentPoly::monomial(ring, phi_weight, 1);
    let mut m = PolyMatrix::zero(ring, rep.dim, rep.dim);
    match rep.kind {
        RepKind::Trivial => {
            m.set(0, 0, t);
        }
        RepKind::PermutationNatural => {
            if g.degree() != rep.dim {
                return Err(TwistedError::DegreeMismatch);
            }
            for j in 0..rep.dim {
                m.set(g.apply(j), j, t.clone());
            }
        }
        RepKind::Regular => {
            for (j, b) in rep.basis.iter().enumerate() {
                let gb = g.compose(b);
                let i = *rep
                    .basis_index
                    .get(gb.images())
                    .ok_or(TwistedError::DegreeMismatch)?;
                m.set(i, j, t.clone());
            }
        }
    }
    Ok(m)
}

fn rep_of_word(
    rep: &Representation,
    hom: &GroupHom,
    phi: &Phi,
    w: &Word,
) -> Result<PolyMatrix, TwistedError> {
    let g = match rep.kind {
        RepKind::Trivial => Permutation::identity(hom.target.k),
        _ => hom.apply_word(w),
    };
    rep_of_element(rep, &g, phi.weight(w))
}

fn block_of_element(
    rep: &Representation,
    hom: &GroupHom,
    phi: &Phi,
    e: &FreeRingElement,
) -> Result<PolyMatrix, TwistedError> {
    let ring = Ring::Fp(rep.prime);
    let mut acc = PolyMatrix::zero(ring, rep.dim, rep.dim);
    for (w, c) in e.terms() {
        let m = rep_of_word(rep, hom, phi, w)?;
        for r in 0..rep.dim {
            for col in 0..rep.dim {
                let v = acc.at(r, col).add(&m.at(r, col).scale(c));
                acc.set(r, col, v);
            }
        }
    }
    Ok(acc)
}

/// Boundary maps of the presentation 2-complex with coefficients twisted by
/// the representation and `φ`. Row-vector convention: the composite
/// `C_2 → C_1 → C_0` is the product `d2 · d1`.
#[derive(Clone, Debug)]
pub struct TwistedComplex {
    /// `(n·dim) × dim`; the block of generator `x` is `(α⊗φ)(x) − I`.
    pub d1: PolyMatrix,
    /// `(m·dim) × (n·dim)`; block `(r, x)` is the image of `∂r/∂x`.
    pub d2: PolyMatrix,
    pub dim: usize,
    pub prime: u32,
}

pub fn build_complex(
    p: &Presentation,
    hom: &GroupHom,
    rep: &Representation,
    phi: &Phi,
) -> Result<TwistedComplex, TwistedError> {
    if phi.is_trivial() {
        return Err(TwistedError::TrivialPhi);
    }
    let ring = Ring::Fp(rep.prime);
    let dim = rep.dim;
    let n = p.generators.len();
    let m = p.relators.len();

    let mut d1 = PolyMatrix::zero(ring, n * dim, dim);
    for x in 0..n {
        let w = Word::from_letters([Letter { gen: x, sign: 1 }]);
        let blk = rep_of_word(rep, hom, phi, &w)?;
        for r in 0..dim {
            for c in 0..dim {
                let mut v = blk.at(r, c).clone();
                if r == c {
                    v = v.sub(&LaurentPoly::one(ring));
                }
                d1.set(x * dim + r, c, v);
            }
        }
    }

    let mut d2 = PolyMatrix::zero(ring, m * dim, n * dim);
    for (ri, rel) in p.relators.iter().enumerate() {
        for x in 0..n {
            let e = fox_derivative(rel, x);
            if e.is_zero() {
                continue;
            }
            let blk = block_of_element(rep, hom, phi, &e)?;
            for r in 0..dim {
                for c in 0..dim {
                    d2.set(ri * dim + r, x * dim + c, blk.at(r, c).clone());
                }
            }
        }
    }

    if !d2.mul(&d1).is_zero() {
        return Err(TwistedError::ChainConditionViolated);
    }
    Ok(TwistedComplex { d1, d2, dim, prime: rep.prime })
}

/// Order of the twisted `H_0`: the divisor product of `d1` when its cokernel
/// is torsion, zero otherwise.
pub fn delta0(c: &TwistedComplex) -> LaurentPoly {
    let snf = smith_normal_form(&c.d1);
    if snf.rank == c.dim {
        snf.divisor_product().normalize()
    } else {
        LaurentPoly::zero(Ring::Fp(c.prime))
    }
}

/// Order of the twisted `H_1`. Zero when `rank d1 + rank d2` falls short of
/// the middle dimension (positive-rank homology); otherwise `H_1` is the
/// torsion of `coker d2` and its order is the divisor product of `d2`.
pub fn delta1(c: &TwistedComplex) -> LaurentPoly {
    // direct Smith reduction of d2 suffers severe intermediate degree growth
    // already at Wirtinger scale, so go through evaluation and interpolation;
    // im d2 ⊆ ker d1 caps the rank scan
    let r1 = smith_normal_form(&c.d1).rank;
    let r2 = rank_laurent(&c.d2, Some(c.d2.cols - r1));
    if r1 + r2 < c.d2.cols {
        LaurentPoly::zero(Ring::Fp(c.prime))
    } else {
        determinantal_divisor(&c.d2, r2)
    }
}

/// Order of the twisted `H_2` via duality with `Δ_0`: the representations in
/// use are permutation-type, hence self-dual, and `Δ_2(t) ≐ Δ_0(t^{-1})`.
pub fn delta2(c: &TwistedComplex) -> LaurentPoly {
    delta0(c).reciprocal().normalize()
}

/// The three order polynomials with their degree spreads.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeltaSet {
    pub delta0: LaurentPoly,
    pub delta1: LaurentPoly,
    pub delta2: LaurentPoly,
    /// `(deg Δ_0, deg Δ_1, deg Δ_2)`; `None` encodes `deg 0 = −∞`.
    pub degrees: (Option<i64>, Option<i64>, Option<i64>),
}

pub fn delta_set(c: &TwistedComplex) -> DeltaSet {
    let d0 = delta0(c);
    let d1 = delta1(c);
    let d2 = delta2(c);
    let degrees = (d0.degree(), d1.degree(), d2.degree());
    debug_assert_eq!(degrees.0, degrees.2);
    DeltaSet { delta0: d0, delta1: d1, delta2: d2, degrees }
}

/// Ordinary Alexander polynomial of a deficiency-one presentation: untwisted
/// Fox matrix over `Z[t^{±1}]` with one generator column deleted.
pub fn ordinary_alexander(p: &Presentation) -> Result<LaurentPoly, TwistedError> {
    ordinary_alexander_dropping(p, 0)
}

/// Same, deleting the column of the given generator; the normalized result
/// does not depend on the choice.
pub fn ordinary_alexander_dropping(
    p: &Presentation,
    drop_col: usize,
) -> Result<LaurentPoly, TwistedError> {
    let n = p.generators.len();
    if drop_col >= n {
        return Err(TwistedError::NotDeficiencyOne);
    }
    let relators: &[Word] = match p.relators.len() {
        m if m + 1 == n => &p.relators,
        m if m == n => &p.relators[..n - 1],
        _ => return Err(TwistedError::NotDeficiencyOne),
    };
    let mut fox = PolyMatrix::zero(Ring::Int, n - 1, n);
    for (ri, rel) in relators.iter().enumerate() {
        for x in 0..n {
            let mut entry = LaurentPoly::zero(Ring::Int);
            for (w, c) in fox_derivative(rel, x).terms() {
                entry.add_coeff(w.exponent_sum(), c);
            }
            fox.set(ri, x, entry);
        }
    }
    let square = fox.delete_columns(drop_col, 1);
    Ok(det_int_poly(&square).normalize())
}

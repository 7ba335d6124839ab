use crate::error::{Error, Result};
use crate::f2::projection::greedy_projection;
use crate::f2::{BitVec, Subspace};

/// A codimension-1 subspace pair: sub ⊂ sup with dim(sup) − dim(sub) = 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairL2 {
    sub: Subspace,
    sup: Subspace,
}

impl PairL2 {
    pub fn new(sub: Subspace, sup: Subspace) -> Result<Self> {
        if !sub.is_subspace_of(&sup)? {
            return Err(Error::NotContained {
                sub: format!("{sub:?}"),
                sup: format!("{sup:?}"),
            });
        }
        if sup.dim() != sub.dim() + 1 {
            return Err(Error::NotCodimOne {
                sub_dim: sub.dim(),
                sup_dim: sup.dim(),
            });
        }
        Ok(PairL2 { sub, sup })
    }

    pub fn sub(&self) -> &Subspace {
        &self.sub
    }

    pub fn sup(&self) -> &Subspace {
        &self.sup
    }
}

/// A quadruple ((S,T),(U,V)) of codimension-1 pairs with T ∩ U = S and
/// T + U = V.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadL4 {
    lower: PairL2,
    upper: PairL2,
}

impl QuadL4 {
    pub fn new(lower: PairL2, upper: PairL2) -> Result<Self> {
        let (s, t) = (lower.sub(), lower.sup());
        let (u, v) = (upper.sub(), upper.sup());
        if t.intersect(u)? != *s || t.sum(u)? != *v {
            return Err(Error::InvalidQuad);
        }
        Ok(QuadL4 { lower, upper })
    }

    pub fn lower(&self) -> &PairL2 {
        &self.lower
    }

    pub fn upper(&self) -> &PairL2 {
        &self.upper
    }

    /// Orthogonal complementation: ((S,T),(U,V)) ↦ ((V^⊥,U^⊥),(T^⊥,S^⊥)).
    /// An involution that maps valid quadruples to valid quadruples.
    pub fn dual(&self) -> QuadL4 {
        let lower = PairL2 {
            sub: self.upper.sup().dual(),
            sup: self.upper.sub().dual(),
        };
        let upper = PairL2 {
            sub: self.lower.sup().dual(),
            sup: self.lower.sub().dual(),
        };
        QuadL4::new(lower, upper).expect("duality preserves the quadruple conditions")
    }
}

/// Given (S,T) codimension-1 and V ⊇ T, produces U ⊇ S with ((S,T),(U,V))
/// a valid quadruple and
///
///   min{|x| : x ∈ V \ U} ≥ min{|y| : y ∈ T \ S} / (dim(V) − dim(T) + 1).
///
/// U is the preimage of S under the greedy projection from V onto T, i.e.
/// S plus the span of the projection's extension basis.
pub fn lift_pair(s: &Subspace, t: &Subspace, v: &Subspace) -> Result<Subspace> {
    let lower = PairL2::new(s.clone(), t.clone())?;
    if !t.is_subspace_of(v)? {
        return Err(Error::NotContained {
            sub: format!("{t:?}"),
            sup: format!("{v:?}"),
        });
    }
    let rho = greedy_projection(t, v)?;
    let kernel = Subspace::span(v.ambient_dim(), rho.extension_basis())?;
    let u = s.sum(&kernel)?;
    // The quadruple conditions hold by construction; validate anyway so a
    // corrupted projection cannot leak out.
    QuadL4::new(lower, PairL2::new(u.clone(), v.clone())?)?;
    Ok(u)
}

/// Given (U,V) codimension-1 and S ⊆ U, produces T ⊆ V with ((S,T),(U,V))
/// a valid quadruple and
///
///   min{|x| : x ∈ S^⊥ \ T^⊥} ≥ min{|y| : y ∈ U^⊥ \ V^⊥} / (dim(U) − dim(S) + 1).
///
/// Composed through complementation: lift on the dual side from the pair
/// (V^⊥, U^⊥) inside S^⊥, then dualize the lifted space back.
pub fn descend_pair(s: &Subspace, u: &Subspace, v: &Subspace) -> Result<Subspace> {
    let upper = PairL2::new(u.clone(), v.clone())?;
    if !s.is_subspace_of(u)? {
        return Err(Error::NotContained {
            sub: format!("{s:?}"),
            sup: format!("{u:?}"),
        });
    }
    let u_lifted = lift_pair(&v.dual(), &u.dual(), &s.dual())?;
    let t = u_lifted.dual();
    QuadL4::new(PairL2::new(s.clone(), t.clone())?, upper)?;
    Ok(t)
}

/// Coset shift u = v ⊕ w needs the lexicographically smallest element of
/// T \ U at several call sites; shared here.
pub fn lex_min_difference(a: &Subspace, b: &Subspace) -> Result<BitVec> {
    a.elements()
        .filter(|x| !b.contains(x).unwrap())
        .min()
        .ok_or(Error::EmptyDifference)
}

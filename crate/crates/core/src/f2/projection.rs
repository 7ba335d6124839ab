use crate::error::{Error, Result};
use crate::f2::subspace::min_weight_in_difference;
use crate::f2::{BitVec, Subspace};

/// A linear projection ρ: V → U (identity on U) with a recorded extension
/// basis w_1,…,w_k spanning V over U.
///
/// Every v ∈ V decomposes uniquely as u ⊕ a_1·w_1 ⊕ … ⊕ a_k·w_k with
/// u ∈ U; the map sends v to u.
#[derive(Clone, Debug)]
pub struct ProjectionMap {
    source: Subspace,
    target: Subspace,
    extension: Vec<BitVec>,
    // Elimination rows with distinct, increasing pivots. The mask records
    // which extension vectors participate in each reduced row.
    solver: Vec<(BitVec, u64)>,
}

impl ProjectionMap {
    fn build(source: Subspace, target: Subspace, extension: Vec<BitVec>) -> Self {
        let mut solver: Vec<(BitVec, u64)> = Vec::new();
        let rows = target
            .basis()
            .iter()
            .map(|r| (r.clone(), 0u64))
            .chain(
                extension
                    .iter()
                    .enumerate()
                    .map(|(i, w)| (w.clone(), 1u64 << i)),
            );
        for (mut cur, mut mask) in rows {
            for (row, m) in &solver {
                let p = row.leading_one().unwrap();
                if cur.get(p) {
                    cur.xor_in_place(row);
                    mask ^= m;
                }
            }
            debug_assert!(!cur.is_zero(), "basis plus extension is independent");
            solver.push((cur, mask));
            solver.sort_by_key(|(row, _)| row.leading_one().unwrap());
        }
        ProjectionMap {
            source,
            target,
            extension,
            solver,
        }
    }

    pub fn source(&self) -> &Subspace {
        &self.source
    }

    pub fn target(&self) -> &Subspace {
        &self.target
    }

    /// The greedy basis w_1,…,w_k for V over U, in selection order.
    pub fn extension_basis(&self) -> &[BitVec] {
        &self.extension
    }

    pub fn codim(&self) -> usize {
        self.extension.len()
    }

    /// The stretch factor k+1 from the weight bound |ρ(v)| ≤ (k+1)|v|.
    pub fn stretch_factor(&self) -> usize {
        self.extension.len() + 1
    }

    /// Applies the projection. Errors if `v` lies outside the source space.
    pub fn apply(&self, v: &BitVec) -> Result<BitVec> {
        if v.dim() != self.source.ambient_dim() {
            return Err(Error::DimMismatch {
                left: self.source.ambient_dim(),
                right: v.dim(),
            });
        }
        let mut cur = v.clone();
        let mut mask = 0u64;
        for (row, m) in &self.solver {
            let p = row.leading_one().unwrap();
            if cur.get(p) {
                cur.xor_in_place(row);
                mask ^= m;
            }
        }
        if !cur.is_zero() {
            return Err(Error::NotContained {
                sub: format!("{v}"),
                sup: format!("{:?}", self.source),
            });
        }
        let mut out = v.clone();
        for (i, w) in self.extension.iter().enumerate() {
            if (mask >> i) & 1 == 1 {
                out.xor_in_place(w);
            }
        }
        Ok(out)
    }
}

/// Projection from V onto U ⊆ V whose extension basis is chosen greedily:
/// each w_i has minimal Hamming weight in V \ Span(U ∪ {w_1,…,w_{i−1}}),
/// ties broken by the lexicographically smallest vector. The result
/// satisfies |ρ(v)| ≤ (k+1)|v| for all v ∈ V, k the codimension.
pub fn greedy_projection(target: &Subspace, source: &Subspace) -> Result<ProjectionMap> {
    if !target.is_subspace_of(source)? {
        return Err(Error::NotContained {
            sub: format!("{target:?}"),
            sup: format!("{source:?}"),
        });
    }
    let mut current = target.clone();
    let mut extension = Vec::with_capacity(source.dim() - target.dim());
    while current.dim() < source.dim() {
        let (_, w) = min_weight_in_difference(source, &current, 1)?;
        current = current.sum(&Subspace::span(source.ambient_dim(), &[w.clone()])?)?;
        extension.push(w);
    }
    Ok(ProjectionMap::build(
        source.clone(),
        target.clone(),
        extension,
    ))
}

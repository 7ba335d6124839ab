//! Canonical AC0 formulas: trees of unbounded fan-in AND/OR gates over
//! literals and constants, with unordered, deduplicated child sets.
//!
//! Formulas are hash-consed in a global store (one entry per distinct
//! canonical tree per ambient dimension), so structural equality is
//! pointer equality and the child sets of the formal definition become
//! plain slice comparisons. Children are kept in a deterministic total
//! order derived from (depth, kind, structural hash), which also makes
//! serialization byte-stable.

mod action;
mod eval;
mod json;

pub use action::{
    act, is_invariant, is_semantically_invariant, orbit_stabilizer,
    semantic_invariance_sampled, OrbitDecomposition, ORBIT_DIM_CAP,
};
pub use eval::{
    computes_parity, evaluate, evaluate_on, evaluate_on_subspace, table_bit, truth_table,
    OnSet, TRUTH_TABLE_CAP,
};
pub use json::{formula_from_json_str, formula_to_json, formula_to_json_string, FORMULA_FORMAT};

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::{Error, Result};

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum GateOp {
    And,
    Or,
}

impl GateOp {
    pub fn name(self) -> &'static str {
        match self {
            GateOp::And => "and",
            GateOp::Or => "or",
        }
    }

    pub fn dual(self) -> GateOp {
        match self {
            GateOp::And => GateOp::Or,
            GateOp::Or => GateOp::And,
        }
    }
}

#[derive(Clone)]
enum Kind {
    Const(bool),
    Literal { var: u32, negated: bool },
    Gate { op: GateOp, children: Vec<Formula> },
}

struct Node {
    n: u32,
    kind: Kind,
    depth: u32,
    size: u64,
    leafsize: u64,
    hash: u64,
}

/// A canonical, interned formula. Cloning is cheap; equality is pointer
/// equality.
#[derive(Clone)]
pub struct Formula(Arc<Node>);

/// Borrowed view of the top node.
pub enum FormulaView<'a> {
    Const(bool),
    Literal { var: usize, negated: bool },
    Gate { op: GateOp, children: &'a [Formula] },
}

// ---------------------------------------------------------------------------
// Stable structural hash (must not vary across runs: child order and file
// output depend on it).
// ---------------------------------------------------------------------------

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

fn mix(h: u64, v: u64) -> u64 {
    splitmix64(h ^ v.wrapping_mul(0xD6E8_FEB8_6659_FD93))
}

// ---------------------------------------------------------------------------
// Interner
// ---------------------------------------------------------------------------

#[derive(PartialEq, Eq, Hash)]
enum NodeKey {
    Const { n: u32, value: bool },
    Literal { n: u32, var: u32, negated: bool },
    Gate { n: u32, op: GateOp, children: Vec<usize> },
}

fn store() -> &'static Mutex<HashMap<NodeKey, Formula>> {
    static STORE: OnceLock<Mutex<HashMap<NodeKey, Formula>>> = OnceLock::new();
    STORE.get_or_init(|| Mutex::new(HashMap::new()))
}

fn intern(key: NodeKey, build: impl FnOnce() -> Node) -> Formula {
    let mut map = store().lock().expect("formula store poisoned");
    if let Some(f) = map.get(&key) {
        return f.clone();
    }
    let f = Formula(Arc::new(build()));
    map.insert(key, f.clone());
    f
}

impl Formula {
    pub fn constant(n: usize, value: bool) -> Result<Formula> {
        if n == 0 {
            return Err(Error::ZeroDim);
        }
        let key = NodeKey::Const { n: n as u32, value };
        Ok(intern(key, || Node {
            n: n as u32,
            kind: Kind::Const(value),
            depth: 0,
            size: 0,
            leafsize: 1,
            hash: mix(mix(1, n as u64), value as u64),
        }))
    }

    /// Literal X_var (0-indexed) or its negation.
    pub fn literal(n: usize, var: usize, negated: bool) -> Result<Formula> {
        if n == 0 {
            return Err(Error::ZeroDim);
        }
        if var >= n {
            return Err(Error::VarOutOfRange { var, n });
        }
        let key = NodeKey::Literal {
            n: n as u32,
            var: var as u32,
            negated,
        };
        Ok(intern(key, || Node {
            n: n as u32,
            kind: Kind::Literal {
                var: var as u32,
                negated,
            },
            depth: 0,
            size: 0,
            leafsize: 1,
            hash: mix(mix(mix(2, n as u64), var as u64), negated as u64),
        }))
    }

    /// Canonical gate over a nonempty child set: children are sorted,
    /// deduplicated, and the node is interned. Idempotent on already
    /// canonical input.
    pub fn gate(op: GateOp, mut children: Vec<Formula>) -> Result<Formula> {
        if children.is_empty() {
            return Err(Error::EmptyGate);
        }
        let n = children[0].0.n;
        for c in &children {
            if c.0.n != n {
                return Err(Error::DimMismatch {
                    left: n as usize,
                    right: c.0.n as usize,
                });
            }
        }
        children.sort_by(structural_cmp);
        children.dedup_by(|a, b| a == b);
        let key = NodeKey::Gate {
            n,
            op,
            children: children.iter().map(|c| c.node_id()).collect(),
        };
        Ok(intern(key, || {
            let depth = 1 + children.iter().map(|c| c.0.depth).max().unwrap();
            let size = if depth == 1 {
                1
            } else {
                children.iter().map(|c| c.0.size).sum()
            };
            let leafsize = children.iter().map(|c| c.0.leafsize).sum();
            let mut h = mix(mix(3, n as u64), op as u64);
            for c in &children {
                h = mix(h, c.0.hash);
            }
            h = mix(h, children.len() as u64);
            Node {
                n,
                kind: Kind::Gate { op, children },
                depth,
                size,
                leafsize,
                hash: h,
            }
        }))
    }

    pub fn and(children: Vec<Formula>) -> Result<Formula> {
        Formula::gate(GateOp::And, children)
    }

    pub fn or(children: Vec<Formula>) -> Result<Formula> {
        Formula::gate(GateOp::Or, children)
    }

    pub fn ambient_dim(&self) -> usize {
        self.0.n as usize
    }

    /// Gate layers above the leaves: literals and constants have depth 0.
    pub fn depth(&self) -> usize {
        self.0.depth as usize
    }

    /// Number of depth-1 subformulas.
    pub fn size(&self) -> u64 {
        self.0.size
    }

    /// Number of leaves.
    pub fn leafsize(&self) -> u64 {
        self.0.leafsize
    }

    pub fn structural_hash(&self) -> u64 {
        self.0.hash
    }

    pub fn view(&self) -> FormulaView<'_> {
        match &self.0.kind {
            Kind::Const(v) => FormulaView::Const(*v),
            Kind::Literal { var, negated } => FormulaView::Literal {
                var: *var as usize,
                negated: *negated,
            },
            Kind::Gate { op, children } => FormulaView::Gate {
                op: *op,
                children,
            },
        }
    }

    /// Stable in-memory identity of the interned node.
    pub(crate) fn node_id(&self) -> usize {
        Arc::as_ptr(&self.0) as usize
    }
}

/// Total order used for canonical child placement: depth, then kind, then
/// the structural hash, with a full recursive comparison as tiebreak.
pub fn structural_cmp(a: &Formula, b: &Formula) -> Ordering {
    if Arc::ptr_eq(&a.0, &b.0) {
        return Ordering::Equal;
    }
    fn rank(k: &Kind) -> u8 {
        match k {
            Kind::Const(_) => 0,
            Kind::Literal { .. } => 1,
            Kind::Gate { .. } => 2,
        }
    }
    a.0.depth
        .cmp(&b.0.depth)
        .then_with(|| rank(&a.0.kind).cmp(&rank(&b.0.kind)))
        .then_with(|| match (&a.0.kind, &b.0.kind) {
            (Kind::Const(x), Kind::Const(y)) => x.cmp(y),
            (
                Kind::Literal { var: v1, negated: n1 },
                Kind::Literal { var: v2, negated: n2 },
            ) => (v1, n1).cmp(&(v2, n2)),
            (
                Kind::Gate { op: o1, children: c1 },
                Kind::Gate { op: o2, children: c2 },
            ) => o1
                .cmp(o2)
                .then_with(|| a.0.hash.cmp(&b.0.hash))
                .then_with(|| {
                    for (x, y) in c1.iter().zip(c2.iter()) {
                        match structural_cmp(x, y) {
                            Ordering::Equal => {}
                            ord => return ord,
                        }
                    }
                    c1.len().cmp(&c2.len())
                }),
            _ => unreachable!("ranks already distinguished the kinds"),
        })
}

impl PartialEq for Formula {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
    }
}

impl Eq for Formula {}

impl std::hash::Hash for Formula {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        state.write_u64(self.0.hash);
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.view() {
            FormulaView::Const(v) => write!(f, "{}", v as u8),
            FormulaView::Literal { var, negated } => {
                write!(f, "{}x{}", if negated { "~" } else { "" }, var + 1)
            }
            FormulaView::Gate { op, children } => {
                write!(f, "({}", op.name())?;
                for c in children {
                    write!(f, " {c}")?;
                }
                write!(f, ")")
            }
        }
    }
}

impl fmt::Debug for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Formula[n={}]({self})", self.0.n)
    }
}

#[cfg(test)]
pub(crate) fn random_formula(
    rng: &mut rand_chacha::ChaCha8Rng,
    n: usize,
    max_depth: usize,
) -> Formula {
    use rand::Rng;
    if max_depth == 0 || rng.gen_ratio(1, 5) {
        return match rng.gen_range(0..6) {
            0 => Formula::constant(n, rng.gen()).unwrap(),
            _ => Formula::literal(n, rng.gen_range(0..n), rng.gen()).unwrap(),
        };
    }
    let op = if rng.gen() { GateOp::And } else { GateOp::Or };
    let fanin = rng.gen_range(1..=3);
    let children = (0..fanin)
        .map(|_| random_formula(rng, n, max_depth - 1))
        .collect();
    Formula::gate(op, children).unwrap()
}

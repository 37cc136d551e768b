//! Uniform dispatch over the native simply-laced worlds and the folded
//! worlds realized in their ambient types.

use crate::cartan::{AffineType, Family, Weight};
use crate::crystal::{self, Node, Op};
use crate::error::{Error, Result};
use crate::kr::{self, FactorSpec};
use crate::paths::Path;
use crate::rc::Rc;
use crate::virt::{self, Folded};
use std::sync::Arc;

pub enum World {
    Native(AffineType),
    Folded(Folded),
}

impl World {
    pub fn new(typ: AffineType) -> Result<World> {
        if typ.is_simply_laced() {
            Ok(World::Native(typ))
        } else {
            Ok(World::Folded(Folded::new(typ)?))
        }
    }

    pub fn typ(&self) -> AffineType {
        match self {
            World::Native(t) => *t,
            World::Folded(f) => f.typ,
        }
    }

    /// Affine operators at the zero node exist natively for type A and for
    /// the folded families with ambient type A.
    pub fn has_zero_ops(&self) -> bool {
        match self {
            World::Native(t) => t.family == Family::A1,
            World::Folded(f) => f.ambient_typ().family == Family::A1,
        }
    }

    pub fn maximal(&self, spec: FactorSpec) -> Result<Node> {
        match self {
            World::Native(t) => Ok(kr::maximal(t.classical(), spec)),
            World::Folded(f) => f.maximal_block(spec),
        }
    }

    pub fn factor_elements(&self, spec: FactorSpec, budget: usize) -> Result<Arc<Vec<Node>>> {
        match self {
            World::Native(t) => crate::catalog::kr_elements(*t, spec, budget),
            World::Folded(f) => Ok(Arc::new(f.factor_elements(spec, budget)?)),
        }
    }

    /// Classical weight of a single factor element.
    pub fn elem_weight(&self, node: &Node) -> Weight {
        match self {
            World::Native(t) => crystal::weight(t.classical(), node),
            World::Folded(f) => f.weight(node),
        }
    }

    /// Highest weight of the classical component containing the element.
    pub fn component_weight(&self, node: &Node) -> Weight {
        match self {
            World::Native(t) => kr::component_weight(t.classical(), node),
            World::Folded(f) => {
                let mut cur = node.clone();
                'raise: loop {
                    for a in 1..=f.typ.rank {
                        if let Some(next) = f.apply(Op::E, a, &cur) {
                            cur = next;
                            continue 'raise;
                        }
                    }
                    break;
                }
                f.weight(&cur)
            }
        }
    }

    pub fn path_weight(&self, p: &Path) -> Weight {
        match self {
            World::Native(_) => p.weight(),
            World::Folded(f) => virt::path_weight(f, p),
        }
    }

    pub fn path_is_highest(&self, p: &Path) -> bool {
        match self {
            World::Native(_) => p.is_highest(),
            World::Folded(f) => virt::path_is_highest(f, p),
        }
    }

    pub fn path_apply(&self, p: &Path, op: Op, a: usize) -> Option<Path> {
        match self {
            World::Native(_) => p.apply(op, a),
            World::Folded(f) => virt::path_apply(f, p, op, a),
        }
    }

    pub fn path_raise(&self, p: &Path) -> (Path, Vec<usize>) {
        match self {
            World::Native(_) => p.raise(),
            World::Folded(f) => virt::path_raise(f, p),
        }
    }

    pub fn path_hwstar(&self, p: &Path) -> Path {
        match self {
            World::Native(_) => p.hwstar(),
            World::Folded(f) => virt::path_hwstar(f, p),
        }
    }

    /// e_0 / f_0 on the whole path; errors in ambient-D worlds.
    pub fn path_apply_zero(&self, p: &Path, op: Op) -> Result<Option<Path>> {
        match self {
            World::Native(t) => {
                if t.family != Family::A1 {
                    return Err(Error::AffineUnavailable);
                }
                let cl = t.classical();
                match kr::affine_apply_a(cl, op, &p.as_tensor()) {
                    Some(Node::Tensor(elems)) => {
                        Ok(Some(Path::new(*t, p.factors.clone(), elems)))
                    }
                    Some(single) => Ok(Some(Path::new(*t, p.factors.clone(), vec![single]))),
                    None => Ok(None),
                }
            }
            World::Folded(f) => virt::path_apply_zero(f, p, op),
        }
    }

    pub fn phi(&self, p: &Path) -> Result<Rc> {
        match self {
            World::Native(_) => crate::bijection::phi(p),
            World::Folded(_) => virt::phi_folded(p),
        }
    }

    pub fn phi_inv(&self, factors: &[FactorSpec], rc: &Rc) -> Result<Path> {
        match self {
            World::Native(t) => crate::bijection::phi_inv(*t, factors, rc),
            World::Folded(f) => virt::phi_folded_inv(f.typ, factors, rc),
        }
    }

    pub fn enumerate_highest(&self, factors: &[FactorSpec], budget: usize) -> Result<Vec<Path>> {
        match self {
            World::Native(t) => crate::catalog::enumerate_highest(*t, factors, budget),
            World::Folded(f) => virt::enumerate_highest_folded(f.typ, factors, budget),
        }
    }
}

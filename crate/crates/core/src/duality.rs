//! The vector-space duality `D = Hom_k(-, k)` between left modules over an
//! algebra and left modules over its opposite. It reverses arrows, swaps
//! kernels with cokernels, and turns resolutions into coresolutions.

use std::sync::Arc;

use crate::approx::Subcategory;
use crate::error::Result;
use crate::modcat::{Algebra, Module, Morphism, Sequence, ShortExactSeq};

/// `D` from modules over `primal` to modules over `dual`. Both algebras are
/// kept so that applying [`Duality::flip`] afterwards lands back on the very
/// same algebra handle.
#[derive(Clone, Debug)]
pub struct Duality {
    primal: Arc<Algebra>,
    dual: Arc<Algebra>,
}

impl Duality {
    pub fn new(alg: &Arc<Algebra>) -> Duality {
        Duality {
            primal: alg.clone(),
            dual: alg.opposite(),
        }
    }

    /// The inverse duality.
    pub fn flip(&self) -> Duality {
        Duality {
            primal: self.dual.clone(),
            dual: self.primal.clone(),
        }
    }

    pub fn primal(&self) -> &Arc<Algebra> {
        &self.primal
    }

    pub fn dual(&self) -> &Arc<Algebra> {
        &self.dual
    }

    pub fn module(&self, m: &Module) -> Module {
        debug_assert!(m.algebra() == &self.primal);
        let action = m.actions().iter().map(|a| a.transpose()).collect();
        Module::unchecked(&self.dual, m.dim(), action)
    }

    pub fn morphism(&self, f: &Morphism) -> Morphism {
        Morphism::unchecked(
            &self.module(f.target()),
            &self.module(f.source()),
            f.matrix().transpose(),
        )
    }

    /// `0 -> DC -> DB -> DA -> 0`.
    pub fn ses(&self, s: &ShortExactSeq) -> Result<ShortExactSeq> {
        ShortExactSeq::new(self.morphism(s.epi()), self.morphism(s.mono()))
    }

    pub fn sequence(&self, s: &Sequence) -> Sequence {
        let maps = s.maps().iter().rev().map(|f| self.morphism(f)).collect();
        Sequence::new(maps).expect("dual of a composable chain")
    }

    /// `add(DG_1, ..., DG_r)`.
    pub fn subcategory(&self, c: &Subcategory) -> Subcategory {
        let gens = c.generators().iter().map(|g| self.module(g)).collect();
        Subcategory::new(format!("D({})", c.name()), gens).expect("nonempty")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::approx::{ext1, is_hom_from_exact, is_hom_into_exact};
    use crate::fixtures::*;
    use crate::modcat::{hom_dim, kernel};

    #[test]
    fn double_dual_is_identity() {
        let d = Duality::new(&a2());
        let back = d.flip();
        for m in [sa(), sb(), pa()] {
            let dm = d.module(&m);
            dm.validate().unwrap();
            let ddm = back.module(&dm);
            assert_eq!(ddm, m);
            assert!(Arc::ptr_eq(ddm.algebra(), m.algebra()));
        }
        let f = a2_ses().mono().clone();
        assert_eq!(back.morphism(&d.morphism(&f)), f);
        d.morphism(&f).validate().unwrap();
    }

    #[test]
    fn dual_swaps_projectives_and_injectives() {
        let d = Duality::new(&a2());
        // D(SB) is the simple at the sink of the opposite quiver, injective
        // there; D(PA) is injective.
        let ses = d.ses(&a2_ses()).unwrap();
        assert!(!ses.is_split());
        assert_eq!(ses.left().dim(), 1);
        let (k, _) = kernel(&d.morphism(a2_ses().epi()));
        assert_eq!(k.dim(), 0);
        for (m, n) in [(sa(), sb()), (sb(), pa()), (pa(), sa()), (sa(), sa())] {
            assert_eq!(hom_dim(&m, &n), hom_dim(&d.module(&n), &d.module(&m)));
            assert_eq!(ext1(&m, &n), ext1(&d.module(&n), &d.module(&m)));
        }
    }

    #[test]
    fn hom_exactness_swaps_sides() {
        let c = Subcategory::new("C", vec![pa(), sb()]).unwrap();
        let d = Duality::new(&a2());
        let dc = d.subcategory(&c);
        let seq = a2_ses().as_sequence();
        let dseq = d.sequence(&seq);
        assert_eq!(
            is_hom_from_exact(&c, &seq).is_ok(),
            is_hom_into_exact(&dc, &dseq).is_ok()
        );
        assert_eq!(
            is_hom_into_exact(&c, &seq).is_ok(),
            is_hom_from_exact(&dc, &dseq).is_ok()
        );
    }
}

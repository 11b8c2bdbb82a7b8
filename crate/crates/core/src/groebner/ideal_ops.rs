use std::sync::Arc;

use super::buchberger::{buchberger, Ideal};
use super::{Deadline, GroebnerError};
use crate::exactnum::Field;
use crate::multipoly::{MonomialOrder, Poly, PolyRing, MAX_VARS};

/// Whether `f` vanishes on `V(ideal)` over the algebraic closure
/// (Rabinowitsch: `1 ∈ ideal + ⟨t·f - 1⟩`).
pub fn radical_membership<F: Field>(f: &Poly<F>, ideal: &Ideal<F>, deadline: &Deadline) -> Result<bool, GroebnerError> {
    let ring = ideal.ring();
    let n = ring.nvars();
    if n + 1 > MAX_VARS {
        return Err(crate::multipoly::PolyError::TooManyVariables(n + 1).into());
    }
    let mut names = ring.names().to_vec();
    names.push(fresh_name(ring));
    let big = PolyRing::with_names(ring.field().clone(), names, MonomialOrder::DegRevLex)?;
    let mut gens = ideal.gens().iter().map(|g| g.embed(&big)).collect::<Result<Vec<_>, _>>()?;
    let tf = &big.var(n) * &f.embed(&big)?;
    gens.push(&tf - &big.one());
    let gb = buchberger(&Ideal::new(&big, gens)?, MonomialOrder::DegRevLex, deadline)?;
    Ok(gb.is_unit())
}

fn fresh_name<F: Field>(ring: &Arc<PolyRing<F>>) -> String {
    let mut name = "t".to_string();
    while ring.var_index(&name).is_some() {
        name.push('_');
    }
    name
}

/// Generators of `ideal ∩ F[x_k, ..., x_{n-1}]`, computed with a block
/// order eliminating the first `first_k` variables.
pub fn eliminate<F: Field>(ideal: &Ideal<F>, first_k: usize, deadline: &Deadline) -> Result<Ideal<F>, GroebnerError> {
    let ring = ideal.ring();
    let gb = buchberger(ideal, MonomialOrder::Elimination(first_k), deadline)?;
    let kept = gb
        .basis()
        .iter()
        .filter(|g| g.terms().iter().all(|(m, _)| m.support().all(|v| v >= first_k)))
        .map(|g| g.reorder(ring))
        .collect::<Result<Vec<_>, _>>()?;
    Ideal::new(ring, kept)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::RationalField;

    fn ideal(r: &Arc<PolyRing<RationalField>>, gens: &[&str]) -> Ideal<RationalField> {
        Ideal::new(r, gens.iter().map(|g| r.parse(g).unwrap()).collect()).unwrap()
    }

    #[test]
    fn rabinowitsch() {
        let r = PolyRing::new(RationalField, &["x", "y"], MonomialOrder::DegRevLex).unwrap();
        let never = Deadline::never();
        assert!(radical_membership(&r.var(0), &ideal(&r, &["x^2"]), &never).unwrap());
        assert!(!radical_membership(&r.var(0), &ideal(&r, &["y"]), &never).unwrap());
        assert!(radical_membership(&r.parse("x + y").unwrap(), &ideal(&r, &["x^3", "y^2"]), &never).unwrap());
    }

    #[test]
    fn elimination() {
        let never = Deadline::never();
        let r = PolyRing::new(RationalField, &["t", "x", "y"], MonomialOrder::DegRevLex).unwrap();
        let e = eliminate(&ideal(&r, &["t*x - 1", "x"]), 1, &never).unwrap();
        assert_eq!(e.gens(), &[r.one()]);
        let e = eliminate(&ideal(&r, &["x - t"]), 1, &never).unwrap();
        assert!(e.gens().is_empty());
        let e = eliminate(&ideal(&r, &["x^2 - t", "y - t"]), 1, &never).unwrap();
        assert_eq!(e.gens(), &[r.parse("x^2 - y").unwrap()]);
    }
}

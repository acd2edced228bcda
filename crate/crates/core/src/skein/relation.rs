use super::{oriented_pairs, smooth, switch_at, SkeinError};
use crate::diagram::Diagram;
use crate::poly::LaurentPoly;

/// The three diagrams of an oriented skein relation at one crossing.
#[derive(Clone, Debug)]
pub struct SkeinTriple {
    pub plus: Diagram,
    pub minus: Diagram,
    pub zero: Diagram,
}

/// `(D+, D-, D0)` at crossing `site`.
pub fn skein_triple(d: &Diagram, site: usize) -> Result<SkeinTriple, SkeinError> {
    let c = *d.crossings().get(site).ok_or(SkeinError::BadSite(site))?;
    let zero = smooth(d, site, oriented_pairs(&c), true);
    let other = switch_at(d, site);
    let (plus, minus) = if c.sign > 0 {
        (d.clone(), other)
    } else {
        (other, d.clone())
    };
    Ok(SkeinTriple { plus, minus, zero })
}

/// Checks `t^{-1} V(L+) - t V(L-) + (t^{-1/2} - t^{1/2}) V(L0) = 0` for the
/// given Jones values.
pub fn jones_skein_holds(v_plus: &LaurentPoly, v_minus: &LaurentPoly, v_zero: &LaurentPoly) -> bool {
    let lhs = v_plus.shift(-4) - v_minus.shift(4)
        + v_zero * &(LaurentPoly::t_quarters(-2) - LaurentPoly::t_quarters(2));
    lhs.is_zero()
}

/// Computes the triple at `site` and checks the Jones skein relation with
/// `jones_fn` supplying the values.
pub fn verify_jones_skein<F, E>(d: &Diagram, site: usize, mut jones_fn: F) -> Result<bool, E>
where
    F: FnMut(&Diagram) -> Result<LaurentPoly, E>,
    E: From<SkeinError>,
{
    let t = skein_triple(d, site)?;
    let (p, m, z) = (jones_fn(&t.plus)?, jones_fn(&t.minus)?, jones_fn(&t.zero)?);
    Ok(jones_skein_holds(&p, &m, &z))
}

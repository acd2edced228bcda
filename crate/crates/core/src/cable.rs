//! Blackboard 2-cables with framing correction, and the cabling identities
//! relating them to the Kauffman and Jones polynomials of the companion.

use thiserror::Error;

use crate::diagram::{Crossing, Diagram, DiagramError};
use crate::poly::{king_a_image, king_z_image, two_var_substitute, LaurentPoly, PolyError, TwoVarPoly};
use crate::presentations::{double_crossing, left_copy, right_copy};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CableError {
    #[error("cable base must be a knot, got {0} components")]
    NotAKnot(usize),
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// A companion knot diagram and the intended `lk(K, K*)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CableSpec {
    pub base: Diagram,
    pub framing: i64,
}

/// Chains of `|n|` full twists carrying the strands `l`, `r` (left and right
/// copies, same direction). Returns the crossings and the outgoing labels.
fn full_twists(n: i64, l: u32, r: u32, fresh: &mut impl FnMut() -> u32) -> (Vec<Crossing>, u32, u32) {
    let mut out = Vec::new();
    let (mut l0, mut r0) = (l, r);
    for _ in 0..n.unsigned_abs() {
        let (l1, r1, l2, r2) = (fresh(), fresh(), fresh(), fresh());
        if n > 0 {
            out.push(Crossing { pd: [r0, l1, r1, l0], sign: 1 });
            out.push(Crossing { pd: [l1, r2, l2, r1], sign: 1 });
        } else {
            out.push(Crossing { pd: [l0, r0, l1, r1], sign: -1 });
            out.push(Crossing { pd: [r1, l1, r2, l2], sign: -1 });
        }
        l0 = l2;
        r0 = r2;
    }
    (out, l0, r0)
}

/// The blackboard parallel of a knot diagram, with `framing - writhe` full
/// twists inserted after the last crossing so that `lk(K, K*) = framing`.
///
/// Component 0 is the companion `K`, component 1 the parallel `K*`; both run
/// the same way.
pub fn cable2(spec: &CableSpec) -> Result<Diagram, CableError> {
    let d = &spec.base;
    let comps = d.component_count();
    if comps != 1 {
        return Err(CableError::NotAKnot(comps));
    }
    let twists = spec.framing - d.writhe();
    if d.crossing_count() == 0 {
        if twists == 0 {
            return Ok(Diagram::unlink(2));
        }
        let mut next = 2;
        let mut fresh = || {
            next += 1;
            next
        };
        let (mut cs, l_end, r_end) = full_twists(twists, 1, 2, &mut fresh);
        // close the chain back onto the first labels
        for c in cs.iter_mut() {
            for a in c.pd.iter_mut() {
                if *a == l_end {
                    *a = 1;
                } else if *a == r_end {
                    *a = 2;
                }
            }
        }
        return Ok(Diagram::new(cs, 0)?.compact_labels());
    }
    let mut next = 2 * d.max_label();
    let mut fresh = || {
        next += 1;
        next
    };
    let mut crossings = Vec::with_capacity(4 * d.crossing_count() + 2 * twists.unsigned_abs() as usize);
    for c in d.crossings() {
        crossings.extend(double_crossing(c, &mut fresh));
    }
    if twists != 0 {
        let arc = d.crossings().last().expect("nonempty").under_out();
        let (l, r) = (left_copy(arc), right_copy(arc));
        let (l_in, r_in) = (fresh(), fresh());
        // the heads of the two copies now receive the end of the twist chain
        for c in crossings.iter_mut() {
            for s in 0..4 {
                if c.slot_is_incoming(s) {
                    if c.pd[s] == l {
                        c.pd[s] = l_in;
                    } else if c.pd[s] == r {
                        c.pd[s] = r_in;
                    }
                }
            }
        }
        let (mut tw, l_end, r_end) = full_twists(twists, l, r, &mut fresh);
        for c in tw.iter_mut() {
            for a in c.pd.iter_mut() {
                if *a == l_end {
                    *a = l_in;
                } else if *a == r_end {
                    *a = r_in;
                }
            }
        }
        crossings.extend(tw);
    }
    Ok(Diagram::new(crossings, 0)?.compact_labels())
}

/// `K̂ = K ∪ (-K*)`.
pub fn make_hat(cable: &Diagram) -> Result<Diagram, CableError> {
    Ok(cable.reverse_component(1)?)
}

/// Both sides of the cabling identity
/// `t^f (1 + t + t^{-1}) F(i t^{-2}, i(t - t^{-1})) = -(t^{1/2} + t^{-1/2}) V(K̃) - t^{3f}`.
pub fn king_sides(f_poly: &TwoVarPoly, v_tilde: &LaurentPoly, f: i64) -> Result<(LaurentPoly, LaurentPoly), CableError> {
    let sub = two_var_substitute(f_poly, &king_a_image(), &king_z_image())?;
    let lhs = (LaurentPoly::t_quarters(4) + LaurentPoly::one() + LaurentPoly::t_quarters(-4)) * sub.shift(4 * f);
    let rhs = -(LaurentPoly::t_quarters(2) + LaurentPoly::t_quarters(-2)) * v_tilde.clone() - LaurentPoly::t_quarters(12 * f);
    Ok((lhs, rhs))
}

pub fn king_verify(f_poly: &TwoVarPoly, v_tilde: &LaurentPoly, f: i64) -> Result<bool, CableError> {
    let (l, r) = king_sides(f_poly, v_tilde, f)?;
    Ok(l == r)
}

/// `V(K̂) = t^{-3f} V(K̃)`.
pub fn hat_from_tilde(v_tilde: &LaurentPoly, f: i64) -> LaurentPoly {
    v_tilde.shift(-12 * f)
}

/// Jones polynomial of the diagram with the extra full twist, from the skein
/// relation at one of its crossings: `t^2 V(K̂) + t^{3/2} - t^{1/2}`.
pub fn full_twist_step(v_hat: &LaurentPoly) -> LaurentPoly {
    v_hat.shift(8) + LaurentPoly::t_quarters(6) - LaurentPoly::t_quarters(2)
}

/// `V(J') = t^2 + (t^{3/2} - t^{1/2}) V(full twist)`.
pub fn jprime_from_full_twist(v_full_twist: &LaurentPoly) -> LaurentPoly {
    LaurentPoly::t_quarters(8) + (LaurentPoly::t_quarters(6) - LaurentPoly::t_quarters(2)) * v_full_twist.clone()
}

/// `V(J') = t^3 - t^2 + t + (t^{7/2} - t^{5/2}) V(K̂)`.
pub fn jprime_chain(v_hat: &LaurentPoly) -> LaurentPoly {
    let affine = LaurentPoly::t_quarters(12) - LaurentPoly::t_quarters(8) + LaurentPoly::t_quarters(4);
    affine + (LaurentPoly::t_quarters(14) - LaurentPoly::t_quarters(10)) * v_hat.clone()
}
